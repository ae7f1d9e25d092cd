//! Finite Coxeter groups of types A, B, D and I2(m), fully enumerated.
//!
//! Elements are stored by canonical form and addressed by dense ids assigned
//! in breadth-first order from the identity under left multiplication, so id 0
//! is the identity and lengths are BFS depths. Generators are numbered from 0
//! internally and printed 1-based (`s1`, `s2`, …).
//!
//! Type A acts on one-line notation by swapping the *values* `i` and `i+1`, so
//! `s_i` is a left descent of `w` exactly when `i+1` appears before `i`, and a
//! right descent when `w(i) > w(i+1)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type ElementId = usize;

pub const DEFAULT_SIZE_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupModel {
    A(usize),
    B(usize),
    D(usize),
    I2(usize),
}

impl GroupModel {
    pub fn rank(&self) -> usize {
        match *self {
            GroupModel::A(n) | GroupModel::B(n) | GroupModel::D(n) => n,
            GroupModel::I2(_) => 2,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            GroupModel::A(_) => true,
            GroupModel::B(n) => n >= 2,
            GroupModel::D(n) => n >= 4,
            GroupModel::I2(m) => (3..=i16::MAX as usize).contains(&m),
        };
        if !ok {
            return Err(Error::Config(format!("unsupported group model {self}")));
        }
        if self.rank() > 63 {
            return Err(Error::Config(format!("rank of {self} exceeds 63")));
        }
        Ok(())
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut m = vec![vec![2; r]; r];
        let mut edge = |a: usize, b: usize, v: usize| {
            m[a][b] = v;
            m[b][a] = v;
        };
        match *self {
            GroupModel::A(n) => (1..n).for_each(|i| edge(i - 1, i, 3)),
            GroupModel::B(n) => {
                edge(0, 1, 4);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            GroupModel::D(n) => {
                edge(0, 2, 3);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            GroupModel::I2(k) => edge(0, 1, k),
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        m
    }

    fn identity(&self) -> Vec<i16> {
        match *self {
            GroupModel::A(n) => (1..=n as i16 + 1).collect(),
            GroupModel::B(n) | GroupModel::D(n) => (1..=n as i16).collect(),
            GroupModel::I2(_) => vec![0, 0],
        }
    }

    /// Canonical form of `s · w`.
    fn left_act(&self, s: usize, w: &[i16]) -> Vec<i16> {
        let swap_values = |w: &[i16], a: i16, b: i16| -> Vec<i16> {
            w.iter()
                .map(|&x| {
                    let (sign, v) = (x.signum(), x.abs());
                    if v == a {
                        sign * b
                    } else if v == b {
                        sign * a
                    } else {
                        x
                    }
                })
                .collect()
        };
        match *self {
            GroupModel::A(_) => swap_values(w, s as i16 + 1, s as i16 + 2),
            GroupModel::B(_) => {
                if s == 0 {
                    w.iter().map(|&x| if x.abs() == 1 { -x } else { x }).collect()
                } else {
                    swap_values(w, s as i16, s as i16 + 1)
                }
            }
            GroupModel::D(_) => {
                if s == 0 {
                    w.iter()
                        .map(|&x| match x {
                            1 => -2,
                            -1 => 2,
                            2 => -1,
                            -2 => 1,
                            _ => x,
                        })
                        .collect()
                } else {
                    swap_values(w, s as i16, s as i16 + 1)
                }
            }
            GroupModel::I2(m) => {
                let m = m as i32;
                let (k, e) = (w[0] as i32, w[1]);
                // s1: x ↦ −x, s2: x ↦ 1 − x; (a,1)·(k,e) = (a − k, 1 − e).
                let a = s as i32;
                vec![(a - k).rem_euclid(m) as i16, 1 - e]
            }
        }
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupModel::A(n) => write!(f, "A{n}"),
            GroupModel::B(n) => write!(f, "B{n}"),
            GroupModel::D(n) => write!(f, "D{n}"),
            GroupModel::I2(m) => write!(f, "I2:{m}"),
        }
    }
}

impl FromStr for GroupModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Config(format!("unknown group model {s:?}; expected e.g. A3, B4, D4, I2:7"));
        let model = if let Some(m) = t.strip_prefix("I2:").or_else(|| t.strip_prefix("I2(").and_then(|x| x.strip_suffix(')'))) {
            GroupModel::I2(m.parse().map_err(|_| bad())?)
        } else {
            let mut chars = t.chars();
            let kind = chars.next().ok_or_else(bad)?;
            let n: usize = chars.as_str().parse().map_err(|_| bad())?;
            match kind.to_ascii_uppercase() {
                'A' => GroupModel::A(n),
                'B' => GroupModel::B(n),
                'D' => GroupModel::D(n),
                _ => return Err(bad()),
            }
        };
        model.validate()?;
        Ok(model)
    }
}

/// A subset of the generators, as a bitset over 0-based indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(rank: usize) -> Self {
        if rank == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << rank) - 1)
        }
    }

    pub fn singleton(s: usize) -> Self {
        Subset(1 << s)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset(it.into_iter().fold(0, |acc, s| acc | 1 << s))
    }

    /// From 1-based generator numbers.
    pub fn from_one_based(v: &[usize]) -> Self {
        Self::from_indices(v.iter().map(|&s| s - 1))
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|s| s + 1).collect()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }
    pub fn with(&self, s: usize) -> Self {
        Subset(self.0 | 1 << s)
    }
    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn union(&self, other: &Subset) -> Self {
        Subset(self.0 | other.0)
    }
    pub fn intersection(&self, other: &Subset) -> Self {
        Subset(self.0 & other.0)
    }
    pub fn complement(&self, rank: usize) -> Self {
        Subset(!self.0 & Self::full(rank).0)
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |&s| self.contains(s))
    }

    /// All subsets of a rank-`rank` generating set, in bitmask order.
    pub fn all(rank: usize) -> impl Iterator<Item = Subset> {
        (0..1u64 << rank).map(Subset)
    }

    /// All `X` with `self ⊆ X ⊆ upper`.
    pub fn between(&self, upper: &Subset) -> Vec<Subset> {
        let free = upper.0 & !self.0;
        let mut out = Vec::new();
        let mut sub = free;
        loop {
            out.push(Subset(self.0 | sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        out.sort();
        out
    }

    /// Parses `"1,3"`, `"{1,3}"`, `"{}"` or `""` (1-based generators).
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = Subset::EMPTY;
        for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let part = part.trim_start_matches('s');
            let k: usize = part.parse().map_err(|_| Error::Parse(format!("bad generator {part:?} in {s:?}")))?;
            if k == 0 || k > rank {
                return Err(Error::Argument(format!("generator s{k} out of range for rank {rank}")));
            }
            out = out.with(k - 1);
        }
        Ok(out)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|s| (s + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A fully enumerated finite Coxeter group.
#[derive(Debug)]
pub struct GroupTable {
    model: GroupModel,
    rank: usize,
    coxeter: Vec<Vec<usize>>,
    canonical: Vec<Vec<i16>>,
    index: HashMap<Vec<i16>, ElementId>,
    /// `left[s * size + w] = s·w`
    left: Vec<u32>,
    /// `right[w * rank + s] = w·s`
    right: Vec<u32>,
    length: Vec<u32>,
    left_desc: Vec<Subset>,
    right_desc: Vec<Subset>,
    inverse: Vec<u32>,
    /// `w = s · parent` for every non-identity `w`.
    parent: Vec<(u32, u8)>,
    generators: Vec<ElementId>,
    w0: ElementId,
}

impl GroupTable {
    pub fn build(model: GroupModel) -> Result<Self> {
        Self::build_bounded(model, DEFAULT_SIZE_BOUND)
    }

    pub fn build_bounded(model: GroupModel, bound: usize) -> Result<Self> {
        model.validate()?;
        let rank = model.rank();
        let id = model.identity();
        let mut canonical = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut length = vec![0u32];
        let mut parent = vec![(0u32, 0u8)];
        let mut left_cols: Vec<Vec<u32>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            let mut row = Vec::with_capacity(rank);
            for s in 0..rank {
                let x = model.left_act(s, &canonical[w]);
                let xid = match index.get(&x) {
                    Some(&i) => i,
                    None => {
                        let i = canonical.len();
                        if i >= bound {
                            return Err(Error::Overflow { bound });
                        }
                        index.insert(x.clone(), i);
                        canonical.push(x);
                        length.push(length[w] + 1);
                        parent.push((w as u32, s as u8));
                        queue.push_back(i);
                        i
                    }
                };
                row.push(xid as u32);
            }
            left_cols.push(row);
        }
        let size = canonical.len();
        let mut left = vec![0u32; rank * size];
        for (w, row) in left_cols.iter().enumerate() {
            for (s, &x) in row.iter().enumerate() {
                left[s * size + w] = x;
            }
        }
        // w = s·p ⇒ w·t = s·(p·t); parents precede children in BFS order.
        let mut right = vec![0u32; size * rank];
        for t in 0..rank {
            right[t] = left[t * size];
        }
        for w in 1..size {
            let (p, s) = parent[w];
            for t in 0..rank {
                let pt = right[p as usize * rank + t] as usize;
                right[w * rank + t] = left[s as usize * size + pt];
            }
        }
        // w = s·p ⇒ w⁻¹ = p⁻¹·s.
        let mut inverse = vec![0u32; size];
        for w in 1..size {
            let (p, s) = parent[w];
            inverse[w] = right[inverse[p as usize] as usize * rank + s as usize];
        }
        let mut left_desc = vec![Subset::EMPTY; size];
        let mut right_desc = vec![Subset::EMPTY; size];
        for w in 0..size {
            for s in 0..rank {
                if length[left[s * size + w] as usize] < length[w] {
                    left_desc[w] = left_desc[w].with(s);
                }
                if length[right[w * rank + s] as usize] < length[w] {
                    right_desc[w] = right_desc[w].with(s);
                }
            }
        }
        let generators = (0..rank).map(|s| left[s * size] as usize).collect();
        let max_len = *length.iter().max().unwrap();
        let w0 = length.iter().position(|&l| l == max_len).unwrap();
        Ok(GroupTable {
            model,
            rank,
            coxeter: model.coxeter_matrix(),
            canonical,
            index,
            left,
            right,
            length,
            left_desc,
            right_desc,
            inverse,
            parent,
            generators,
            w0,
        })
    }

    pub fn model(&self) -> GroupModel {
        self.model
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn size(&self) -> usize {
        self.canonical.len()
    }
    pub fn coxeter_matrix(&self) -> &[Vec<usize>] {
        &self.coxeter
    }
    pub fn m(&self, s: usize, t: usize) -> usize {
        self.coxeter[s][t]
    }
    pub fn identity(&self) -> ElementId {
        0
    }
    pub fn full_set(&self) -> Subset {
        Subset::full(self.rank)
    }
    pub fn length(&self, w: ElementId) -> usize {
        self.length[w] as usize
    }
    pub fn canonical(&self, w: ElementId) -> &[i16] {
        &self.canonical[w]
    }
    pub fn find(&self, canonical: &[i16]) -> Option<ElementId> {
        self.index.get(canonical).copied()
    }
    pub fn generator(&self, s: usize) -> ElementId {
        self.generators[s]
    }
    /// Generator index of `w`, if `w` is a simple reflection.
    pub fn generator_index(&self, w: ElementId) -> Option<usize> {
        self.generators.iter().position(|&g| g == w)
    }

    /// `s · w`
    pub fn left_mul(&self, s: usize, w: ElementId) -> ElementId {
        self.left[s * self.size() + w] as usize
    }
    /// `w · s`
    pub fn right_mul(&self, w: ElementId, s: usize) -> ElementId {
        self.right[w * self.rank + s] as usize
    }

    pub fn multiply(&self, w: ElementId, x: ElementId) -> ElementId {
        self.word(x).into_iter().fold(w, |acc, s| self.right_mul(acc, s))
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverse[w] as usize
    }

    pub fn left_descents(&self, w: ElementId) -> Subset {
        self.left_desc[w]
    }
    pub fn right_descents(&self, w: ElementId) -> Subset {
        self.right_desc[w]
    }

    /// A reduced word `[s_1, …, s_k]` with `w = s_1 ⋯ s_k`.
    pub fn word(&self, mut w: ElementId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length(w));
        while w != 0 {
            let (p, s) = self.parent[w];
            out.push(s as usize);
            w = p as usize;
        }
        out
    }

    /// Product of generators, leftmost first.
    pub fn from_word(&self, word: &[usize]) -> Result<ElementId> {
        let mut w = 0;
        for &s in word.iter().rev() {
            if s >= self.rank {
                return Err(Error::Argument(format!("generator index {s} out of range")));
            }
            w = self.left_mul(s, w);
        }
        Ok(w)
    }

    pub fn w0(&self) -> ElementId {
        self.w0
    }

    /// Longest element of the parabolic subgroup `W_I`.
    pub fn longest_parabolic(&self, i: Subset) -> ElementId {
        let mut w = 0;
        'grow: loop {
            for s in i.iter() {
                if !self.left_desc[w].contains(s) {
                    w = self.left_mul(s, w);
                    continue 'grow;
                }
            }
            return w;
        }
    }

    /// Shortest element `u_I` of the descent class `D_I`.
    pub fn u(&self, i: Subset) -> ElementId {
        self.longest_parabolic(i)
    }

    /// Longest element `v_I = w_0 · w_0(S∖I)` of `D_I`.
    pub fn v(&self, i: Subset) -> ElementId {
        self.multiply(self.w0, self.longest_parabolic(i.complement(self.rank)))
    }

    pub fn descent_class_bounds(&self, i: Subset) -> (ElementId, ElementId) {
        (self.u(i), self.v(i))
    }

    /// `D_I`: elements with right descent set exactly `I`.
    pub fn descent_class(&self, i: Subset) -> Vec<ElementId> {
        (0..self.size()).filter(|&w| self.right_desc[w] == i).collect()
    }

    /// `D_I^J = { w : I ⊆ D_R(w) ⊆ J }`.
    pub fn descent_union(&self, i: Subset, j: Subset) -> Result<Vec<ElementId>> {
        if !i.is_subset_of(&j) {
            return Err(Error::Argument(format!("{i} is not a subset of {j}")));
        }
        Ok((0..self.size())
            .filter(|&w| i.is_subset_of(&self.right_desc[w]) && self.right_desc[w].is_subset_of(&j))
            .collect())
    }

    /// `w_0 w w_0`
    pub fn conj_w0(&self, w: ElementId) -> ElementId {
        self.multiply(self.multiply(self.w0, w), self.w0)
    }

    /// Index of the generator `w_0 s w_0`.
    pub fn conj_w0_gen(&self, s: usize) -> usize {
        self.generator_index(self.conj_w0(self.generator(s))).expect("w0 normalizes S")
    }

    pub fn conj_w0_set(&self, i: Subset) -> Subset {
        Subset::from_indices(i.iter().map(|s| self.conj_w0_gen(s)))
    }

    /// Human-readable element label: one-line notation for A, B and D
    /// (digits run together in type A when every value is a single digit),
    /// and `(k,f)` for I2(m).
    pub fn label(&self, w: ElementId) -> String {
        let c = &self.canonical[w];
        match self.model {
            GroupModel::A(n) if n < 9 => c.iter().map(|x| x.to_string()).collect(),
            GroupModel::A(_) | GroupModel::B(_) | GroupModel::D(_) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            GroupModel::I2(_) => format!("({},{})", c[0], c[1]),
        }
    }

    /// Parses an element label: `e`, a word such as `s1s2s1`, or a canonical
    /// form as printed by [`GroupTable::label`].
    pub fn parse_element(&self, s: &str) -> Result<ElementId> {
        let t = s.trim();
        let bad = || Error::Parse(format!("cannot parse element {s:?} of {}", self.model));
        if t == "e" {
            return Ok(0);
        }
        if let Some(rest) = t.strip_prefix('s') {
            let word: Vec<usize> = rest
                .split('s')
                .map(|k| k.parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            return self.from_word(&word);
        }
        let inner = t.trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let canon: Vec<i16> = if inner.contains(',') {
            inner.split(',').map(|x| x.trim().parse::<i16>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?
        } else if matches!(self.model, GroupModel::A(_)) {
            inner.chars().map(|ch| ch.to_digit(10).map(|d| d as i16)).collect::<Option<_>>().ok_or_else(bad)?
        } else {
            return Err(bad());
        };
        self.find(&canon).ok_or_else(bad)
    }

    /// Group dump: `{model, size, elements: [{id, word, length, dl, dr}]}`
    /// with 1-based generator numbers.
    pub fn to_json(&self) -> Value {
        let elements: Vec<Value> = (0..self.size())
            .map(|w| {
                json!({
                    "id": w,
                    "label": self.label(w),
                    "word": self.word(w).iter().map(|s| s + 1).collect::<Vec<_>>(),
                    "length": self.length(w),
                    "dl": self.left_desc[w].to_one_based(),
                    "dr": self.right_desc[w].to_one_based(),
                })
            })
            .collect();
        json!({ "model": self.model.to_string(), "size": self.size(), "elements": elements })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> GroupTable {
        GroupTable::build(GroupModel::A(3)).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(a3().size(), 24);
        assert_eq!(GroupTable::build(GroupModel::I2(5)).unwrap().size(), 10);
        assert_eq!(GroupTable::build(GroupModel::D(4)).unwrap().size(), 192);
        assert_eq!(GroupTable::build(GroupModel::A(0)).unwrap().size(), 1);
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(GroupTable::build_bounded(GroupModel::A(4), 100).unwrap_err(), Error::Overflow { bound: 100 });
        assert!("H3".parse::<GroupModel>().is_err());
        assert!("D3".parse::<GroupModel>().is_err());
        assert_eq!("I2:7".parse::<GroupModel>().unwrap(), GroupModel::I2(7));
    }

    #[test]
    fn descents_follow_value_convention() {
        let g = a3();
        let w = g.parse_element("1423").unwrap();
        assert_eq!(g.left_descents(w), Subset::singleton(2));
        let w = g.parse_element("4231").unwrap();
        assert_eq!(g.right_descents(w), Subset::from_one_based(&[1, 3]));
        assert_eq!(g.right_descents(0), Subset::EMPTY);
        let x = g.parse_element("1324").unwrap();
        assert_eq!(g.label(g.left_mul(2, x)), "1423");
    }

    #[test]
    fn parabolic_longest_and_bounds() {
        let g = a3();
        assert_eq!(g.label(g.longest_parabolic(Subset::from_one_based(&[1, 3]))), "2143");
        assert_eq!(g.label(g.w0()), "4321");
        assert_eq!(g.length(g.w0()), 6);
        let (u, v) = g.descent_class_bounds(Subset::from_one_based(&[1]));
        assert_eq!((g.label(u), g.label(v)), ("2134".to_string(), "4123".to_string()));
        let (_, v) = g.descent_class_bounds(Subset::from_one_based(&[1, 3]));
        assert_eq!(g.label(v), "4231");
        assert_eq!(g.conj_w0_set(Subset::from_one_based(&[1])), Subset::from_one_based(&[3]));
    }

    #[test]
    fn word_round_trip_and_inverse() {
        for model in [GroupModel::A(3), GroupModel::B(3), GroupModel::D(4), GroupModel::I2(7)] {
            let g = GroupTable::build(model).unwrap();
            for w in 0..g.size() {
                assert_eq!(g.from_word(&g.word(w)).unwrap(), w);
                assert_eq!(g.multiply(w, g.inverse(w)), 0);
                assert_eq!(g.length(g.inverse(w)), g.length(w));
                assert_eq!(g.parse_element(&g.label(w)).unwrap(), w);
            }
        }
    }

    #[test]
    fn subset_helpers() {
        let s = Subset::parse("{1,3}", 3).unwrap();
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.complement(3), Subset::singleton(1));
        assert_eq!(Subset::singleton(0).between(&Subset::full(3)).len(), 4);
        assert!(Subset::parse("4", 3).is_err());
    }
}
