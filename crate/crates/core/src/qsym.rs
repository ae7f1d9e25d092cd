//! Type A: compositions, standard immaculate and extended tableaux, reading
//! words, and the modules `V_α`, `X_α` (dual immaculate and extended Schur)
//! and `W_α`, `Z_α` (their row-strict versions).
//!
//! Some sources swap the names of the row-strict and the ordinary families;
//! here `V` is the dual immaculate module and `W` the row-strict one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::{ElementId, GroupModel, GroupTable, Subset};
use crate::error::{Error, Result};
use crate::homology::{injective_hull, projective_cover};
use crate::linalg::{Field, Matrix};
use crate::module::{HModule, Indecomposability, Multiplicities};
use crate::twist::{apply_twist, TwistTag};
use crate::weak_order::WeakInterval;

pub const DEFAULT_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Argument(format!("{parts:?} is not a composition")));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Partial sums `{α_1, α_1+α_2, …}` as a subset of `[n−1]`, stored as
    /// 0-based generator indices (`x ↦ s_x`).
    pub fn set(&self) -> Subset {
        let mut acc = 0;
        Subset::from_indices(self.parts[..self.parts.len() - 1].iter().map(|p| {
            acc += p;
            acc - 1
        }))
    }

    pub fn from_set(s: Subset, n: usize) -> Result<Self> {
        if n == 0 || s.iter().any(|x| x + 1 >= n) {
            return Err(Error::Argument(format!("{s} is not a subset of [{}]", n.saturating_sub(1))));
        }
        let mut parts = Vec::new();
        let mut last = 0;
        for x in s.iter() {
            parts.push(x + 1 - last);
            last = x + 1;
        }
        parts.push(n - last);
        Composition::new(parts)
    }

    pub fn reverse(&self) -> Self {
        Composition { parts: self.parts.iter().rev().copied().collect() }
    }

    /// All `2^{n−1}` compositions of `n`, in reverse lexicographic order of parts.
    pub fn all(n: usize) -> Vec<Composition> {
        if n == 0 {
            return Vec::new();
        }
        let mut out: Vec<Composition> = Subset::all(n - 1).map(|s| Composition::from_set(s, n).expect("valid subset")).collect();
        out.sort_by(|a, b| b.parts.cmp(&a.parts));
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("cannot parse composition {s:?}")))?;
        Composition::new(parts)
    }
}

/// A filling of the left-justified diagram of a composition, rows listed top
/// to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Self {
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Composition {
        Composition { parts: self.rows.iter().map(Vec::len).collect() }
    }

    /// 0-based row containing `x`.
    pub fn row_of(&self, x: usize) -> Option<usize> {
        self.rows.iter().position(|r| r.contains(&x))
    }

    fn is_filling(&self) -> bool {
        let mut seen: Vec<usize> = self.rows.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Rows increase, and the first column increases downward.
    pub fn is_sit(&self) -> bool {
        self.is_filling()
            && self.rows.iter().all(|r| !r.is_empty() && r.windows(2).all(|w| w[0] < w[1]))
            && self.rows.windows(2).all(|p| p[0][0] < p[1][0])
    }

    /// Immaculate, and every column increases downward.
    pub fn is_set(&self) -> bool {
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        self.is_sit()
            && (0..width).all(|c| {
                let col: Vec<usize> = self.rows.iter().filter_map(|r| r.get(c).copied()).collect();
                col.windows(2).all(|w| w[0] < w[1])
            })
    }

    /// Rows read right to left, from the top row down.
    pub fn rw(&self) -> Vec<usize> {
        self.rows.iter().flat_map(|r| r.iter().rev().copied()).collect()
    }

    /// Rows read left to right, from the bottom row up.
    pub fn rw_r(&self) -> Vec<usize> {
        self.rows.iter().rev().flat_map(|r| r.iter().copied()).collect()
    }

    /// Row-strict action of `π_i` (0-based `i` acts on the letters `i+1`,
    /// `i+2`): fix if `i+2` is strictly below `i+1`, kill if they share a row,
    /// swap them otherwise.
    pub fn row_strict_action(&self, i: usize) -> Option<Tableau> {
        let (a, b) = (i + 1, i + 2);
        let (ra, rb) = (self.row_of(a)?, self.row_of(b)?);
        match rb.cmp(&ra) {
            std::cmp::Ordering::Greater => Some(self.clone()),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => {
                let rows = self.rows.iter().map(|r| r.iter().map(|&x| if x == a { b } else if x == b { a } else { x }).collect()).collect();
                Some(Tableau { rows })
            }
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

fn check_bound(alpha: &Composition, max_n: usize) -> Result<()> {
    if alpha.n() > max_n {
        return Err(Error::Config(format!("composition size {} exceeds the bound {max_n}", alpha.n())));
    }
    Ok(())
}

fn enumerate(alpha: &Composition, max_n: usize, extended: bool) -> Result<Vec<Tableau>> {
    check_bound(alpha, max_n)?;
    let parts = alpha.parts();
    let n = alpha.n();
    let mut rows: Vec<Vec<usize>> = parts.iter().map(|&p| Vec::with_capacity(p)).collect();
    let mut out = Vec::new();
    fn place(x: usize, n: usize, parts: &[usize], rows: &mut Vec<Vec<usize>>, extended: bool, out: &mut Vec<Tableau>) {
        if x > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..parts.len() {
            let c = rows[r].len();
            if c == parts[r] {
                continue;
            }
            // First-column entries appear in order down the column.
            if c == 0 && r > 0 && rows[r - 1].is_empty() {
                continue;
            }
            if extended && (0..r).any(|q| parts[q] > c && rows[q].len() <= c) {
                continue;
            }
            rows[r].push(x);
            place(x + 1, n, parts, rows, extended, out);
            rows[r].pop();
        }
    }
    place(1, n, parts, &mut rows, extended, &mut out);
    out.sort_by(|a, b| a.rows.concat().cmp(&b.rows.concat()));
    Ok(out)
}

/// Standard immaculate tableaux, sorted by their row-by-row entry sequence.
pub fn enumerate_sit(alpha: &Composition, max_n: usize) -> Result<Vec<Tableau>> {
    enumerate(alpha, max_n, false)
}

/// Standard extended tableaux, sorted like [`enumerate_sit`].
pub fn enumerate_set(alpha: &Composition, max_n: usize) -> Result<Vec<Tableau>> {
    enumerate(alpha, max_n, true)
}

/// `(T_0, T_1, 𝒯_1)`: rows filled consecutively from the top; the first
/// column then the rest of the rows from the bottom up; columns filled from
/// the left.
pub fn special_tableaux(alpha: &Composition) -> (Tableau, Tableau, Tableau) {
    let parts = alpha.parts();
    let mut next = 1;
    let t0: Vec<Vec<usize>> = parts
        .iter()
        .map(|&p| {
            let r: Vec<usize> = (next..next + p).collect();
            next += p;
            r
        })
        .collect();
    let k = parts.len();
    let mut t1: Vec<Vec<usize>> = (1..=k).map(|x| vec![x]).collect();
    let mut next = k + 1;
    for r in (0..k).rev() {
        for _ in 1..parts[r] {
            t1[r].push(next);
            next += 1;
        }
    }
    let mut ct: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut next = 1;
    let width = parts.iter().copied().max().unwrap_or(0);
    for c in 0..width {
        for r in 0..k {
            if parts[r] > c {
                ct[r].push(next);
                next += 1;
            }
        }
    }
    (Tableau { rows: t0 }, Tableau { rows: t1 }, Tableau { rows: ct })
}

/// Every ascent pair (positions `i < j` with `v(i) < v(j)`) of `v` is one of `u`.
pub fn ascent_pair_leq(u: &[usize], v: &[usize]) -> bool {
    let n = v.len();
    u.len() == n && (0..n).all(|i| (i + 1..n).all(|j| v[i] > v[j] || u[i] < u[j]))
}

/// The symmetric group `S_n` as type `A_{n−1}`.
pub fn symmetric_group(n: usize) -> Result<Arc<GroupTable>> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    Ok(Arc::new(GroupTable::build(GroupModel::A(n - 1))?))
}

pub fn perm_id(g: &GroupTable, w: &[usize]) -> Result<ElementId> {
    let c: Vec<i16> = w.iter().map(|&x| x as i16).collect();
    g.find(&c).ok_or_else(|| Error::Argument(format!("{w:?} is not a permutation of size {}", g.rank() + 1)))
}

fn check_group(g: &GroupTable, alpha: &Composition) -> Result<()> {
    if g.model() != GroupModel::A(alpha.n() - 1) {
        return Err(Error::Argument(format!("{alpha} needs A{}, got {}", alpha.n() - 1, g.model())));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    V,
    X,
    W,
    Z,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "V" | "v" => Ok(Family::V),
            "X" | "x" => Ok(Family::X),
            "W" | "w" => Ok(Family::W),
            "Z" | "z" => Ok(Family::Z),
            _ => Err(Error::Argument(format!("unknown family {s:?}; expected V, X, W or Z"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Interval bounds of a family: `V = B(rw T_0, rw T_1)`, `X = B(rw T_0, rw 𝒯_1)`,
/// `W = B(rw_R T_1, rw_R T_0)`, `Z = B(rw_R 𝒯_1, rw_R T_0)`.
pub fn family_bounds(g: &GroupTable, family: Family, alpha: &Composition) -> Result<(ElementId, ElementId)> {
    check_group(g, alpha)?;
    let (t0, t1, ct) = special_tableaux(alpha);
    Ok(match family {
        Family::V => (perm_id(g, &t0.rw())?, perm_id(g, &t1.rw())?),
        Family::X => (perm_id(g, &t0.rw())?, perm_id(g, &ct.rw())?),
        Family::W => (perm_id(g, &t1.rw_r())?, perm_id(g, &t0.rw_r())?),
        Family::Z => (perm_id(g, &ct.rw_r())?, perm_id(g, &t0.rw_r())?),
    })
}

pub fn build_interval_family<F: Field>(g: &Arc<GroupTable>, field: &F, family: Family, alpha: &Composition) -> Result<HModule<F>> {
    let (u, v) = family_bounds(g, family, alpha)?;
    HModule::interval(g, field, u, v)
}

pub fn build_v<F: Field>(g: &Arc<GroupTable>, field: &F, alpha: &Composition) -> Result<HModule<F>> {
    build_interval_family(g, field, Family::V, alpha)
}

pub fn build_x<F: Field>(g: &Arc<GroupTable>, field: &F, alpha: &Composition) -> Result<HModule<F>> {
    build_interval_family(g, field, Family::X, alpha)
}

/// `W_α` on `SIT(α)` with the row-strict action.
pub fn build_w<F: Field>(g: &Arc<GroupTable>, field: &F, alpha: &Composition, max_n: usize) -> Result<HModule<F>> {
    check_group(g, alpha)?;
    tableau_module(g, field, &enumerate_sit(alpha, max_n)?)
}

/// `Z_α` on `SET(α)` with the row-strict action.
pub fn build_z<F: Field>(g: &Arc<GroupTable>, field: &F, alpha: &Composition, max_n: usize) -> Result<HModule<F>> {
    check_group(g, alpha)?;
    tableau_module(g, field, &enumerate_set(alpha, max_n)?)
}

pub fn build_family<F: Field>(g: &Arc<GroupTable>, field: &F, family: Family, alpha: &Composition, max_n: usize) -> Result<HModule<F>> {
    match family {
        Family::V | Family::X => build_interval_family(g, field, family, alpha),
        Family::W => build_w(g, field, alpha, max_n),
        Family::Z => build_z(g, field, alpha, max_n),
    }
}

fn tableau_module<F: Field>(g: &Arc<GroupTable>, field: &F, basis: &[Tableau]) -> Result<HModule<F>> {
    let pos: BTreeMap<&Tableau, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = basis.len();
    let mut action = Vec::with_capacity(g.rank());
    for s in 0..g.rank() {
        let mut a = Matrix::zeros(field, n, n);
        for (j, t) in basis.iter().enumerate() {
            if let Some(img) = t.row_strict_action(s) {
                let i = *pos.get(&img).ok_or_else(|| Error::Argument(format!("π_{} sends {t} outside the basis", s + 1)))?;
                a.set(i, j, field.one());
            }
        }
        action.push(a);
    }
    HModule::new(g, field, action, basis.iter().map(Tableau::to_string).collect())
}

/// Multiset of compositions `comp(S ∖ I)` over the composition factors `S_I`,
/// matching the descent-composition convention for the fundamental basis.
pub fn characteristic<F: Field>(m: &HModule<F>) -> Result<BTreeMap<Composition, usize>> {
    let n = m.rank() + 1;
    let mut out = BTreeMap::new();
    for (i, k) in m.composition_factors() {
        *out.entry(Composition::from_set(i.complement(m.rank()), n)?).or_default() += k;
    }
    Ok(out)
}

/// `⊕_{β ∈ classes} P_{set(β^r)}` against the computed projective cover of `W_α`.
#[derive(Clone, Debug)]
pub struct CoverW {
    pub predicted: Multiplicities,
    pub computed: Multiplicities,
}

impl CoverW {
    pub fn agrees(&self) -> bool {
        self.predicted == self.computed
    }
}

pub fn cover_w<F: Field>(g: &Arc<GroupTable>, field: &F, alpha: &Composition, classes: &[Composition], seed: u64, max_n: usize) -> Result<CoverW> {
    let mut predicted = Multiplicities::new();
    for b in classes {
        if b.n() != alpha.n() {
            return Err(Error::Argument(format!("{b} is not a composition of {}", alpha.n())));
        }
        *predicted.entry(b.reverse().set()).or_default() += 1;
    }
    let w = build_w(g, field, alpha, max_n)?;
    let computed = projective_cover(&w, seed)?.summands;
    Ok(CoverW { predicted, computed })
}

/// The compositions `β` whose `P_{set(β^r)}` make up the computed cover of `W_α`.
pub fn classes_from_cover<F: Field>(g: &Arc<GroupTable>, field: &F, alpha: &Composition, seed: u64, max_n: usize) -> Result<Vec<Composition>> {
    let w = build_w(g, field, alpha, max_n)?;
    let mut out = Vec::new();
    for (i, k) in projective_cover(&w, seed)?.summands {
        let beta = Composition::from_set(i, alpha.n())?.reverse();
        out.extend(std::iter::repeat_n(beta, k));
    }
    Ok(out)
}

/// One named assertion of a type-A report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section5Report {
    pub alpha: String,
    pub checks: Vec<Check>,
}

impl Section5Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        let detail = if passed { String::new() } else { detail.into() };
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
    fn result<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.check(name, false, e.to_string());
                None
            }
        }
    }
}

fn certified_all<F: Field>(mods: &[(String, HModule<F>)], seed: u64) -> (bool, String) {
    for (name, m) in mods {
        let r = m.is_indecomposable(seed);
        if r != Indecomposability::CertifiedYes {
            return (false, format!("{name}: {}", r.label()));
        }
    }
    (true, String::new())
}

/// Runs every type-A assertion on `α`, recording each as a named check.
pub fn verify_section5<F: Field>(g: &Arc<GroupTable>, field: &F, alpha: &Composition, seed: u64, max_n: usize) -> Result<Section5Report> {
    check_group(g, alpha)?;
    check_bound(alpha, max_n)?;
    let n = alpha.n();
    let r = g.rank();
    let mut rec = Recorder { checks: Vec::new() };
    let i_set = alpha.set().complement(r);
    let j_set = alpha.reverse().set();
    let w0 = g.w0();

    let reflected = Subset::from_indices(alpha.set().iter().map(|x| n - 2 - x));
    rec.check("set-reverse-reflects", j_set == reflected, format!("{j_set} vs {reflected}"));
    let flipped = g.conj_w0_set(i_set).complement(r);
    rec.check("conj-complement-is-set-reverse", flipped == j_set, format!("{flipped} vs {j_set}"));

    let sit = enumerate_sit(alpha, max_n)?;
    let set = enumerate_set(alpha, max_n)?;
    let (t0, t1, ct) = special_tableaux(alpha);
    rec.check("tableau-predicates", sit.iter().all(Tableau::is_sit) && set.iter().all(Tableau::is_set), "");
    rec.check("set-within-sit", set.iter().all(|t| sit.contains(t)), "");
    rec.check("special-tableaux", t0.is_set() && ct.is_set() && t1.is_sit(), format!("{t0} {t1} {ct}"));

    let rw0 = perm_id(g, &t0.rw())?;
    let rwr0 = perm_id(g, &t0.rw_r())?;
    rec.check("rw-T0-is-u", rw0 == g.u(i_set), g.label(rw0));
    rec.check("rwR-T0-is-v", rwr0 == g.v(j_set), g.label(rwr0));
    let mut reading_ok = true;
    let mut readings = Vec::with_capacity(sit.len());
    for t in &sit {
        let a = perm_id(g, &t.rw())?;
        let b = perm_id(g, &t.rw_r())?;
        reading_ok &= g.multiply(a, w0) == b;
        readings.push(b);
    }
    rec.check("rwR-is-rw-times-w0", reading_ok, "");

    let (wlo, whi) = family_bounds(g, Family::W, alpha)?;
    let wiv = WeakInterval::new(g, wlo, whi)?;
    let mut sorted = readings.clone();
    sorted.sort_unstable();
    let mut members = wiv.members().to_vec();
    members.sort_unstable();
    rec.check("sit-readings-form-interval", sorted == members, format!("{} readings, interval of {}", sorted.len(), members.len()));
    rec.check(
        "sit-readings-descents",
        readings.iter().all(|&w| g.right_descents(w) == j_set),
        "a reading word has the wrong right descent set",
    );

    let v = build_v(g, field, alpha)?;
    let x = build_x(g, field, alpha)?;
    let w_tab = build_w(g, field, alpha, max_n)?;
    let z_tab = build_z(g, field, alpha, max_n)?;
    rec.check("dimensions", v.dim() == sit.len() && w_tab.dim() == sit.len() && x.dim() == set.len() && z_tab.dim() == set.len(), "");
    rec.check("relations", [&v, &x, &w_tab, &z_tab].iter().all(|m| m.verify_relations()), "");

    // The tableau action and the interval action agree entry by entry under T ↦ rw_R(T).
    for (name, tabs, m) in [("W", &sit, &w_tab), ("Z", &set, &z_tab)] {
        let elems: Option<Vec<ElementId>> = tabs.iter().map(|t| perm_id(g, &t.rw_r()).ok()).collect();
        let fam = if name == "W" { Family::W } else { Family::Z };
        let (lo, hi) = family_bounds(g, fam, alpha)?;
        let iv = rec.result("interval", WeakInterval::new(g, lo, hi));
        let same = match (elems, iv) {
            (Some(e), Some(iv)) => {
                let mut a = e.clone();
                a.sort_unstable();
                let mut b = iv.members().to_vec();
                b.sort_unstable();
                a == b && HModule::from_elements(g, field, &e).actions() == m.actions()
            }
            _ => false,
        };
        rec.check(&format!("{name}-tableau-equals-interval"), same, "action matrices differ");
    }

    // V, X are quotients of P_I, and W, Z are submodules of P_J.
    let di = WeakInterval::new(g, g.u(i_set), g.v(i_set))?;
    let dj = WeakInterval::new(g, g.u(j_set), g.v(j_set))?;
    for fam in [Family::V, Family::X] {
        let (lo, hi) = family_bounds(g, fam, alpha)?;
        let ok = lo == di.lo() && di.contains(hi);
        rec.check(&format!("{fam}-quotient-of-P"), ok, format!("[{}, {}]", g.label(lo), g.label(hi)));
    }
    for fam in [Family::W, Family::Z] {
        let (lo, hi) = family_bounds(g, fam, alpha)?;
        let ok = hi == dj.hi() && dj.contains(lo);
        rec.check(&format!("{fam}-submodule-of-P"), ok, format!("[{}, {}]", g.label(lo), g.label(hi)));
    }

    let mut indec = vec![("V".to_string(), v.clone()), ("X".to_string(), x.clone()), ("W".to_string(), w_tab.clone()), ("Z".to_string(), z_tab.clone())];
    for (k, fam) in [Family::V, Family::X].into_iter().enumerate() {
        let (lo, hi) = family_bounds(g, fam, alpha)?;
        let iv = WeakInterval::new(g, lo, hi)?;
        let y = iv.random_upper_ideal(seed.wrapping_add(k as u64));
        if y.len() < iv.len() {
            indec.push((format!("{fam}/KY"), HModule::ideal_quotient(&iv, field, &y)?));
        }
    }
    for (k, fam) in [Family::W, Family::Z].into_iter().enumerate() {
        let (lo, hi) = family_bounds(g, fam, alpha)?;
        let iv = WeakInterval::new(g, lo, hi)?;
        let y = iv.random_upper_ideal(seed.wrapping_add(7 + k as u64));
        if !y.is_empty() {
            indec.push((format!("KY<{fam}"), HModule::ideal_submodule(&iv, field, &y)?));
        }
    }
    let (ok, why) = certified_all(&indec, seed);
    rec.check("indecomposable-certified", ok, why);

    let single = |i: Subset| Multiplicities::from([(i, 1)]);
    for (name, m) in [("V", &v), ("X", &x)] {
        if let Some(c) = rec.result("cover", projective_cover(m, seed)) {
            rec.check(&format!("cover-{name}"), c.certified() && c.summands == single(i_set), format!("{:?}", c.summands));
        }
    }
    for (name, m) in [("W", &w_tab), ("Z", &z_tab)] {
        if let Some(h) = rec.result("hull", injective_hull(m, seed)) {
            rec.check(&format!("hull-{name}"), h.certified() && h.summands == single(j_set), format!("{:?}", h.summands));
        }
    }

    for (name, a, b) in [("W-is-theta-hat-V", &w_tab, &v), ("Z-is-theta-hat-X", &z_tab, &x)] {
        let outcome = a.is_isomorphic(&apply_twist(TwistTag::ThetaHat, b), seed);
        rec.check(name, outcome.is_isomorphic(), outcome.describe());
    }

    let ch_v = characteristic(&v)?;
    let ch_w = characteristic(&w_tab)?;
    let flipped: BTreeMap<Composition, usize> =
        ch_v.iter().map(|(c, &k)| (Composition::from_set(c.set().complement(r), n).expect("valid"), k)).collect();
    rec.check("characteristic-flip", flipped == ch_w, "");

    Ok(Section5Report { alpha: alpha.to_string(), checks: rec.checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn composition_sets() {
        assert_eq!(c(&[1, 4, 3]).set().to_one_based(), vec![1, 5]);
        assert_eq!(c(&[1, 4, 3]).reverse(), c(&[3, 4, 1]));
        assert!(c(&[5]).set().is_empty());
        for n in 1..=6 {
            let all = Composition::all(n);
            assert_eq!(all.len(), 1 << (n - 1));
            for a in &all {
                assert_eq!(&Composition::from_set(a.set(), n).unwrap(), a);
            }
        }
        assert_eq!("2,2".parse::<Composition>().unwrap(), c(&[2, 2]));
    }

    #[test]
    fn tableaux_of_two_two() {
        let a = c(&[2, 2]);
        assert_eq!(enumerate_sit(&a, 8).unwrap().len(), 3);
        assert_eq!(enumerate_set(&a, 8).unwrap().len(), 2);
        let (t0, t1, ct) = special_tableaux(&a);
        assert_eq!(t0.rows(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(t1.rows(), &[vec![1, 4], vec![2, 3]]);
        assert_eq!(ct.rows(), &[vec![1, 3], vec![2, 4]]);
        assert_eq!(t0.rw_r(), vec![3, 4, 1, 2]);
        assert_eq!(t1.rw_r(), vec![2, 3, 1, 4]);
        assert_eq!(t0.rw(), vec![2, 1, 4, 3]);
        assert!(enumerate_sit(&c(&[5, 4]), 8).is_err());
    }

    #[test]
    fn single_row_and_column() {
        for a in [c(&[4]), c(&[1, 1, 1, 1])] {
            assert_eq!(enumerate_sit(&a, 8).unwrap().len(), 1);
            let (t0, t1, ct) = special_tableaux(&a);
            assert!(t0 == t1 && t1 == ct);
        }
    }

    #[test]
    fn w_two_two_matches_interval() {
        let g = symmetric_group(4).unwrap();
        let a = c(&[2, 2]);
        let w = build_w(&g, &Rationals, &a, 8).unwrap();
        let b = HModule::interval(&g, &Rationals, g.parse_element("2314").unwrap(), g.parse_element("3412").unwrap()).unwrap();
        assert_eq!(w.dim(), 3);
        assert!(w.is_isomorphic(&b, 0).is_isomorphic());
        let h = injective_hull(&w, 0).unwrap();
        assert_eq!(h.summands, Multiplicities::from([(Subset::from_one_based(&[2]), 1)]));
    }

    #[test]
    fn section5_for_four() {
        let g = symmetric_group(4).unwrap();
        let f = PrimeField::new(101).unwrap();
        for a in Composition::all(4) {
            let r = verify_section5(&g, &f, &a, 3, 8).unwrap();
            assert!(r.passed(), "{a}: {:?}", r.failures());
        }
    }

    #[test]
    fn cover_of_w_from_its_own_classes() {
        let g = symmetric_group(4).unwrap();
        let a = c(&[2, 2]);
        let classes = classes_from_cover(&g, &Rationals, &a, 0, 8).unwrap();
        assert!(cover_w(&g, &Rationals, &a, &classes, 0, 8).unwrap().agrees());
        let g1 = symmetric_group(3).unwrap();
        let r = cover_w(&g1, &Rationals, &c(&[3]), &[c(&[3])], 0, 8).unwrap();
        assert!(r.agrees());
        assert_eq!(r.predicted, Multiplicities::from([(Subset::EMPTY, 1)]));
    }
}
