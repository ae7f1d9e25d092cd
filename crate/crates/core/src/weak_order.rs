//! Left weak order: intervals, upper order ideals and Hasse diagram export.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coxeter::{ElementId, GroupTable};
use crate::error::{Error, Result};

/// `u ≤_L v` iff `ℓ(v) = ℓ(u) + ℓ(v u⁻¹)`.
pub fn leq_l(g: &GroupTable, u: ElementId, v: ElementId) -> bool {
    let lu = g.length(u);
    let lv = g.length(v);
    lu <= lv && lv == lu + g.length(g.multiply(v, g.inverse(u)))
}

/// Generators `s_1, …, s_k` (leftmost first) with `y = s_1 ⋯ s_k u` and
/// lengths adding, when `u ≤_L y`.
pub fn witness_word(g: &GroupTable, u: ElementId, y: ElementId) -> Option<Vec<usize>> {
    leq_l(g, u, y).then(|| g.word(g.multiply(y, g.inverse(u))))
}

/// An explicit interval `[lo, hi]_L`.
#[derive(Clone, Debug)]
pub struct WeakInterval {
    group: Arc<GroupTable>,
    lo: ElementId,
    hi: ElementId,
    members: Vec<ElementId>,
    position: HashMap<ElementId, usize>,
    /// `(w, s, s·w)` with `ℓ(s·w) = ℓ(w) + 1`, sorted.
    covers: Vec<(ElementId, usize, ElementId)>,
}

impl WeakInterval {
    pub fn new(group: &Arc<GroupTable>, lo: ElementId, hi: ElementId) -> Result<Self> {
        let g = group.as_ref();
        if lo >= g.size() || hi >= g.size() {
            return Err(Error::Argument("element id out of range".into()));
        }
        if !leq_l(g, lo, hi) {
            return Err(Error::Argument(format!("{} is not below {} in left weak order", g.label(lo), g.label(hi))));
        }
        let mut seen = HashMap::from([(lo, ())]);
        let mut members = vec![lo];
        let mut covers = Vec::new();
        let mut queue = VecDeque::from([lo]);
        while let Some(w) = queue.pop_front() {
            for s in 0..g.rank() {
                if g.left_descents(w).contains(s) {
                    continue;
                }
                let x = g.left_mul(s, w);
                if !leq_l(g, x, hi) {
                    continue;
                }
                covers.push((w, s, x));
                if seen.insert(x, ()).is_none() {
                    members.push(x);
                    queue.push_back(x);
                }
            }
        }
        members.sort_by_key(|&w| (g.length(w), w));
        let position: HashMap<ElementId, usize> = members.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        covers.sort_by_key(|&(w, s, _)| (position[&w], s));
        Ok(WeakInterval { group: group.clone(), lo, hi, members, position, covers })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }
    pub fn lo(&self) -> ElementId {
        self.lo
    }
    pub fn hi(&self) -> ElementId {
        self.hi
    }
    /// Members sorted by length, ties by id.
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn covers(&self) -> &[(ElementId, usize, ElementId)] {
        &self.covers
    }
    pub fn contains(&self, w: ElementId) -> bool {
        self.position.contains_key(&w)
    }
    pub fn position(&self, w: ElementId) -> Option<usize> {
        self.position.get(&w).copied()
    }
    pub fn rank_of(&self, w: ElementId) -> usize {
        self.group.length(w) - self.group.length(self.lo)
    }

    /// Checks the upward-closure condition for an arbitrary subset.
    pub fn is_upper_ideal(&self, y: &[ElementId]) -> Result<bool> {
        let mask = self.mask_of(y)?;
        Ok(self.mask_is_upper(&mask))
    }

    fn mask_of(&self, y: &[ElementId]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.len()];
        for &w in y {
            let p = self
                .position(w)
                .ok_or_else(|| Error::Argument(format!("{} is not in the interval", self.group.label(w))))?;
            mask[p] = true;
        }
        Ok(mask)
    }

    fn mask_is_upper(&self, mask: &[bool]) -> bool {
        self.covers.iter().all(|&(w, _, x)| !mask[self.position[&w]] || mask[self.position[&x]])
    }

    fn mask_is_lower(&self, mask: &[bool]) -> bool {
        self.covers.iter().all(|&(w, _, x)| !mask[self.position[&x]] || mask[self.position[&w]])
    }

    /// Whether the subset is closed downward within the interval.
    pub fn is_lower_set(&self, y: &[ElementId]) -> Result<bool> {
        let mask = self.mask_of(y)?;
        Ok(self.mask_is_lower(&mask))
    }

    /// Upward closure of the given members.
    pub fn up_closure(&self, seeds: &[ElementId]) -> Result<UpperIdeal> {
        let mut mask = self.mask_of(seeds)?;
        // Covers are sorted by the rank of their source, so one pass suffices.
        for &(w, _, x) in &self.covers {
            if mask[self.position[&w]] {
                mask[self.position[&x]] = true;
            }
        }
        Ok(UpperIdeal { lo: self.lo, hi: self.hi, mask })
    }

    /// `[lo, hi]_L ∖ [lo, w]_L`.
    pub fn complement_ideal(&self, w: ElementId) -> Result<UpperIdeal> {
        if !self.contains(w) {
            return Err(Error::Argument(format!("{} is not in the interval", self.group.label(w))));
        }
        let mask: Vec<bool> = self.members.iter().map(|&x| !leq_l(&self.group, x, w)).collect();
        let ideal = UpperIdeal { lo: self.lo, hi: self.hi, mask };
        if !self.mask_is_upper(&ideal.mask) {
            return Err(Error::NotUpperIdeal);
        }
        Ok(ideal)
    }

    pub fn ideal(&self, y: &[ElementId]) -> Result<UpperIdeal> {
        let mask = self.mask_of(y)?;
        if !self.mask_is_upper(&mask) {
            return Err(Error::NotUpperIdeal);
        }
        Ok(UpperIdeal { lo: self.lo, hi: self.hi, mask })
    }

    pub fn empty_ideal(&self) -> UpperIdeal {
        UpperIdeal { lo: self.lo, hi: self.hi, mask: vec![false; self.len()] }
    }

    pub fn full_ideal(&self) -> UpperIdeal {
        UpperIdeal { lo: self.lo, hi: self.hi, mask: vec![true; self.len()] }
    }

    /// Upward closure of a random antichain, deterministic per seed.
    pub fn random_upper_ideal(&self, seed: u64) -> UpperIdeal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..=self.len().min(4));
        let picks: Vec<ElementId> = self.members.choose_multiple(&mut rng, k).copied().collect();
        // Keep only minimal picks: that is the antichain whose closure we take.
        let antichain: Vec<ElementId> = picks
            .iter()
            .copied()
            .filter(|&x| !picks.iter().any(|&y| y != x && leq_l(&self.group, y, x)))
            .collect();
        self.up_closure(&antichain).expect("picks are members")
    }

    /// Graphviz rendering, drawn top to bottom from `lo`.
    pub fn to_dot(&self) -> String {
        let g = &self.group;
        let mut out = String::new();
        writeln!(out, "digraph interval {{").unwrap();
        writeln!(out, "  rankdir=TB;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        let mut rank = usize::MAX;
        for &w in &self.members {
            if self.rank_of(w) != rank {
                if rank != usize::MAX {
                    writeln!(out, " }}").unwrap();
                }
                rank = self.rank_of(w);
                write!(out, "  {{ rank=same;").unwrap();
            }
            write!(out, " \"{}\";", g.label(w)).unwrap();
        }
        if rank != usize::MAX {
            writeln!(out, " }}").unwrap();
        }
        for &(w, s, x) in &self.covers {
            writeln!(out, "  \"{}\" -> \"{}\" [label=\"pi_{}\"];", g.label(w), g.label(x), s + 1).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    /// `{lo, hi, members, covers: [[w, s, sw]]}` with ids and 1-based generators.
    pub fn to_json(&self) -> Value {
        json!({
            "lo": self.lo,
            "hi": self.hi,
            "members": self.members,
            "labels": self.members.iter().map(|&w| self.group.label(w)).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|&(w, s, x)| json!([w, s + 1, x])).collect::<Vec<_>>(),
        })
    }
}

/// An upward-closed subset of a weak interval, as a mask over its members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpperIdeal {
    lo: ElementId,
    hi: ElementId,
    mask: Vec<bool>,
}

impl UpperIdeal {
    pub fn bounds(&self) -> (ElementId, ElementId) {
        (self.lo, self.hi)
    }
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn contains(&self, interval: &WeakInterval, w: ElementId) -> bool {
        interval.position(w).is_some_and(|p| self.mask[p])
    }
    /// Members in interval order.
    pub fn members(&self, interval: &WeakInterval) -> Vec<ElementId> {
        interval.members().iter().zip(&self.mask).filter(|(_, &b)| b).map(|(&w, _)| w).collect()
    }
    /// Interval members outside the ideal, in interval order.
    pub fn complement(&self, interval: &WeakInterval) -> Vec<ElementId> {
        interval.members().iter().zip(&self.mask).filter(|(_, &b)| !b).map(|(&w, _)| w).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupModel;

    fn a3() -> Arc<GroupTable> {
        Arc::new(GroupTable::build(GroupModel::A(3)).unwrap())
    }

    #[test]
    fn three_element_interval() {
        let g = a3();
        let (u, v) = (g.parse_element("1324").unwrap(), g.parse_element("1432").unwrap());
        assert!(leq_l(&g, u, v));
        let iv = WeakInterval::new(&g, u, v).unwrap();
        let labels: Vec<String> = iv.members().iter().map(|&w| g.label(w)).collect();
        assert_eq!(labels, ["1324", "1423", "1432"]);
        assert_eq!(iv.covers().len(), 2);
        assert!(iv.to_dot().contains("\"1324\" -> \"1423\" [label=\"pi_3\"]"));
    }

    #[test]
    fn non_comparable_pair() {
        let g = a3();
        let (u, v) = (g.parse_element("2134").unwrap(), g.parse_element("1243").unwrap());
        assert!(!leq_l(&g, u, v));
        assert!(WeakInterval::new(&g, u, v).is_err());
    }

    #[test]
    fn complement_ideal_sizes() {
        let g = a3();
        let u = g.parse_element("2134").unwrap();
        let v = g.parse_element("4231").unwrap();
        let w = g.parse_element("4132").unwrap();
        let iv = WeakInterval::new(&g, u, v).unwrap();
        assert_eq!(iv.len(), 8);
        let small = WeakInterval::new(&g, u, w).unwrap();
        let y = iv.complement_ideal(w).unwrap();
        assert_eq!(y.len(), 8 - small.len());
        assert!(iv.complement_ideal(v).unwrap().is_empty());
        assert!(iv.is_upper_ideal(&[v]).unwrap());
    }

    #[test]
    fn random_ideals_are_upper_and_reproducible() {
        let g = a3();
        let iv = WeakInterval::new(&g, 0, g.w0()).unwrap();
        for seed in 0..20 {
            let y = iv.random_upper_ideal(seed);
            assert_eq!(y, iv.random_upper_ideal(seed));
            assert!(iv.is_upper_ideal(&y.members(&iv)).unwrap());
        }
    }
}
