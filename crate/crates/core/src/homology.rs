//! Projective covers and injective hulls.
//!
//! `H_W(0)` is self-injective and its indecomposable projectives are the
//! `P_I`, so both covers and hulls are direct sums of `P_I`. A cover is read
//! off the top of `M` and a hull off its socle; the witnessing maps are found
//! in the corresponding hom spaces and essentiality is certified by
//! `ker ⊆ rad` (covers) and `soc ⊆ im` (hulls).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::coxeter::{GroupTable, Subset};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::module::{find_injection, find_surjection, HModule, Multiplicities};
use crate::weak_order::{witness_word, UpperIdeal, WeakInterval};

/// `N ⊆ M` is superfluous iff `N ⊆ rad M`.
pub fn is_superfluous<F: Field>(m: &HModule<F>, n: &Subspace<F>) -> Result<bool> {
    if !m.is_invariant(n) {
        return Err(Error::NotInvariant);
    }
    Ok(n.is_subspace_of(&m.radical()))
}

/// `N ⊆ M` is essential iff `soc M ⊆ N`. `N = M` is rejected since only
/// proper submodules are considered.
pub fn is_essential<F: Field>(m: &HModule<F>, n: &Subspace<F>) -> Result<bool> {
    if !m.is_invariant(n) {
        return Err(Error::NotInvariant);
    }
    if n.dim() == m.dim() {
        return Err(Error::Precondition("N = M is not a proper submodule".into()));
    }
    Ok(m.dim() > 0 && m.socle().is_subspace_of(n))
}

fn summand_modules<F: Field>(g: &Arc<GroupTable>, field: &F, parts: &Multiplicities) -> Result<HModule<F>> {
    let mods: Vec<HModule<F>> = parts
        .iter()
        .flat_map(|(&i, &m)| std::iter::repeat_n(i, m))
        .map(|i| HModule::projective_indecomposable(g, field, i))
        .collect();
    HModule::direct_sum_all(&mods)
}

fn parts_json(parts: &Multiplicities) -> Value {
    Value::Array(parts.iter().map(|(i, m)| json!({"I": i.to_one_based(), "mult": m})).collect())
}

fn matrix_json<F: Field>(t: &Matrix<F>) -> Value {
    let f = t.field();
    Value::Array((0..t.rows()).map(|r| Value::Array(t.row(r).iter().map(|x| Value::String(f.to_text(x))).collect())).collect())
}

/// `⊕ m_I P_I ↠ M`.
#[derive(Clone, Debug)]
pub struct CoverCertificate<F: Field> {
    pub summands: Multiplicities,
    pub cover: HModule<F>,
    pub epi: Matrix<F>,
    pub kernel_in_radical: bool,
}

impl<F: Field> CoverCertificate<F> {
    pub fn certified(&self) -> bool {
        self.kernel_in_radical
    }
    pub fn to_json(&self) -> Value {
        json!({"cover": parts_json(&self.summands), "witness": matrix_json(&self.epi), "certified": self.certified()})
    }
}

/// `M ↪ ⊕ m P_I`.
#[derive(Clone, Debug)]
pub struct HullCertificate<F: Field> {
    pub summands: Multiplicities,
    pub hull: HModule<F>,
    pub mono: Matrix<F>,
    pub socle_contained: bool,
}

impl<F: Field> HullCertificate<F> {
    pub fn certified(&self) -> bool {
        self.socle_contained
    }
    pub fn to_json(&self) -> Value {
        json!({"hull": parts_json(&self.summands), "witness": matrix_json(&self.mono), "certified": self.certified()})
    }
}

/// Essentiality is decided on the tops: if `P → M → M/rad M` has rank
/// `dim P/rad P`, the induced map on tops is bijective, so the epimorphism is
/// onto (Nakayama) and its kernel lies in `rad P`.
pub fn projective_cover<F: Field>(m: &HModule<F>, seed: u64) -> Result<CoverCertificate<F>> {
    let summands = m.top();
    let cover = summand_modules(m.group(), m.field(), &summands)?;
    if m.dim() == 0 {
        let epi = Matrix::zeros(m.field(), 0, 0);
        return Ok(CoverCertificate { summands, cover, epi, kernel_in_radical: true });
    }
    let homs = cover.hom_space(m);
    let top = m.top_functionals();
    let epi = find_surjection(m.field(), &homs, &top, seed)
        .ok_or_else(|| Error::Undetermined(format!("no surjection found among {} homomorphisms", homs.len())))?;
    let kernel_in_radical = top.mul(&epi).rank() == top.rows() && cover.top_functionals().rows() == top.rows();
    Ok(CoverCertificate { summands, cover, epi, kernel_in_radical })
}

/// `J ↦ I` with `soc P_I ≅ S_J`.
pub fn socle_index<F: Field>(g: &Arc<GroupTable>, field: &F) -> BTreeMap<Subset, Subset> {
    Subset::all(g.rank())
        .map(|i| {
            let soc = HModule::projective_indecomposable(g, field, i).socle_multiplicities();
            debug_assert_eq!(soc.len(), 1);
            let (&j, _) = soc.iter().next().expect("P_I has a nonzero socle");
            (j, i)
        })
        .collect()
}

/// Essentiality is decided on the socles: a map injective on `soc M` is
/// injective, and sends `soc M` into the socle of the hull; equal socle
/// dimensions then give `soc(hull) ⊆ im`.
pub fn injective_hull<F: Field>(m: &HModule<F>, seed: u64) -> Result<HullCertificate<F>> {
    injective_hull_with(m, &socle_index(m.group(), m.field()), seed)
}

/// [`injective_hull`] with a precomputed [`socle_index`].
pub fn injective_hull_with<F: Field>(m: &HModule<F>, index: &BTreeMap<Subset, Subset>, seed: u64) -> Result<HullCertificate<F>> {
    let mut summands = Multiplicities::new();
    for (j, k) in m.socle_multiplicities() {
        let i = index.get(&j).ok_or_else(|| Error::Undetermined(format!("no projective has socle S{j}")))?;
        *summands.entry(*i).or_default() += k;
    }
    let hull = summand_modules(m.group(), m.field(), &summands)?;
    if m.dim() == 0 {
        let mono = Matrix::zeros(m.field(), 0, 0);
        return Ok(HullCertificate { summands, hull, mono, socle_contained: true });
    }
    let homs = m.hom_space(&hull);
    let soc = m.socle().basis_matrix();
    let mono = find_injection(m.field(), &homs, &soc, seed)
        .ok_or_else(|| Error::Undetermined(format!("no injection found among {} homomorphisms", homs.len())))?;
    let socle_contained = mono.mul(&soc).rank() == soc.cols() && hull.socle().dim() == soc.cols();
    Ok(HullCertificate { summands, hull, mono, socle_contained })
}

/// `P_I^J` on the interval `[u_I, v_J]`, with `K Y` as a subspace of it.
fn projective_and_ideal<F: Field>(iv: &WeakInterval, field: &F, y: &UpperIdeal) -> Result<(HModule<F>, Subspace<F>)> {
    let p = HModule::interval_of(iv, field);
    let vecs = y
        .members(iv)
        .iter()
        .map(|&w| {
            let mut e = vec![field.zero(); p.dim()];
            e[iv.position(w).expect("ideal inside the interval")] = field.one();
            e
        })
        .collect();
    let ky = Subspace::span(field, p.dim(), vecs);
    Ok((p, ky))
}

fn check_bounds(g: &GroupTable, iv: &WeakInterval, i: Subset, j: Subset) -> Result<()> {
    if !i.is_subset_of(&j) {
        return Err(Error::Precondition(format!("{i} is not contained in {j}")));
    }
    if iv.lo() != g.u(i) || iv.hi() != g.v(j) {
        return Err(Error::Precondition("interval is not [u_I, v_J]".into()));
    }
    Ok(())
}

/// For `Y` an upper ideal of `D_I^J = [u_I, v_J]` with `u_J ∉ Y`, the
/// canonical map `P_I^J → P_I^J / K Y` has superfluous kernel.
pub fn verify_cover_theorem<F: Field>(iv: &WeakInterval, field: &F, i: Subset, j: Subset, y: &UpperIdeal) -> Result<bool> {
    let g = iv.group();
    check_bounds(g, iv, i, j)?;
    if y.contains(iv, g.u(j)) {
        return Err(Error::Precondition("u_J lies in Y".into()));
    }
    let (p, ky) = projective_and_ideal(iv, field, y)?;
    let quotient = p.quotient(&ky)?;
    if !quotient.verify_relations() {
        return Ok(false);
    }
    is_superfluous(&p, &ky)
}

/// For `Y` an upper ideal of `D_I^J` with `v_I ∈ Y`, the inclusion
/// `K Y ⊆ P_I^J` is essential.
pub fn verify_hull_theorem<F: Field>(iv: &WeakInterval, field: &F, i: Subset, j: Subset, y: &UpperIdeal) -> Result<bool> {
    let g = iv.group();
    check_bounds(g, iv, i, j)?;
    if !y.contains(iv, g.v(i)) {
        return Err(Error::Precondition("v_I does not lie in Y".into()));
    }
    if y.len() == iv.len() {
        return Ok(true);
    }
    let (p, ky) = projective_and_ideal(iv, field, y)?;
    is_essential(&p, &ky)
}

/// For `y ∈ Y` with `u_J ∉ Y`, a reduced word from `u_I` up to `y` must use a
/// generator outside `J`. Returns the first offending `y`, if any.
pub fn lemma_outside_letter(iv: &WeakInterval, j: Subset, y: &UpperIdeal) -> Option<usize> {
    let g = iv.group();
    y.members(iv).into_iter().find(|&w| match witness_word(g, iv.lo(), w) {
        Some(word) => word.iter().all(|&s| j.contains(s)),
        None => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupModel;
    use crate::linalg::{PrimeField, Rationals};

    fn a3() -> Arc<GroupTable> {
        Arc::new(GroupTable::build(GroupModel::A(3)).unwrap())
    }

    #[test]
    fn trivial_submodules() {
        let g = a3();
        let p = HModule::projective_indecomposable(&g, &Rationals, Subset::from_one_based(&[2]));
        let zero = Subspace::zero(&Rationals, p.dim());
        assert!(is_superfluous(&p, &zero).unwrap());
        assert!(!is_essential(&p, &zero).unwrap());
        assert!(is_essential(&p, &Subspace::full(&Rationals, p.dim())).is_err());
    }

    #[test]
    fn cover_of_interval_example() {
        let g = a3();
        let m = HModule::interval(&g, &Rationals, g.parse_element("2134").unwrap(), g.parse_element("4132").unwrap()).unwrap();
        let c = projective_cover(&m, 0).unwrap();
        assert!(c.certified());
        let want = Multiplicities::from([(Subset::from_one_based(&[1]), 1), (Subset::from_one_based(&[1, 3]), 1)]);
        assert_eq!(c.summands, want);
    }

    #[test]
    fn projectives_cover_and_hull_themselves() {
        let g = a3();
        let f = PrimeField::new(101).unwrap();
        for i in Subset::all(3) {
            let p = HModule::projective_indecomposable(&g, &f, i);
            let c = projective_cover(&p, 1).unwrap();
            assert_eq!(c.summands, Multiplicities::from([(i, 1)]));
            assert!(c.certified() && c.epi.is_invertible());
            let h = injective_hull(&p, 1).unwrap();
            assert_eq!(h.summands, Multiplicities::from([(i, 1)]));
            assert!(h.certified());
            let s = HModule::simple(&g, &f, i);
            assert_eq!(projective_cover(&s, 2).unwrap().summands, Multiplicities::from([(i, 1)]));
        }
    }

    #[test]
    fn certificates_agree_with_direct_checks() {
        let g = a3();
        let f = PrimeField::new(101).unwrap();
        let m = HModule::interval(&g, &f, g.parse_element("2143").unwrap(), g.parse_element("4132").unwrap()).unwrap();
        let c = projective_cover(&m, 5).unwrap();
        assert!(c.certified());
        assert_eq!(c.epi.rank(), m.dim());
        assert!(c.epi.kernel_space().is_subspace_of(&c.cover.radical()));
        let h = injective_hull(&m, 5).unwrap();
        assert!(h.certified());
        assert_eq!(h.mono.rank(), m.dim());
        assert!(h.hull.socle().is_subspace_of(&h.mono.image()));
    }

    #[test]
    fn cover_theorem_example_ideal() {
        let g = a3();
        let (i, j) = (Subset::from_one_based(&[1]), Subset::from_one_based(&[1, 3]));
        let iv = WeakInterval::new(&g, g.u(i), g.v(j)).unwrap();
        let y = iv.complement_ideal(g.parse_element("4132").unwrap()).unwrap();
        assert!(verify_cover_theorem(&iv, &Rationals, i, j, &y).unwrap());
        assert_eq!(lemma_outside_letter(&iv, j, &y), None);
        assert!(verify_cover_theorem(&iv, &Rationals, i, j, &iv.empty_ideal()).unwrap());
        assert!(verify_hull_theorem(&iv, &Rationals, i, j, &iv.full_ideal()).unwrap());
    }
}
