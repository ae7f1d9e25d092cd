//! Top, socle, radical and composition factors.
//!
//! Every simple `H_W(0)`-module is one-dimensional, indexed by the set `I` of
//! generators acting as 1 (the rest act as 0). So homomorphisms to a simple
//! are linear functionals `f` with `f π_s = [s ∈ I] f`, and the `I`-part of
//! the socle is the joint eigenspace `π_s v = [s ∈ I] v`.

use std::collections::BTreeMap;

use super::HModule;
use crate::coxeter::Subset;
use crate::linalg::{normalize, Field, Matrix, SparseEchelon, SparseVec, Subspace};

/// Multiplicity of each simple, by index; zero entries are omitted.
pub type Multiplicities = BTreeMap<Subset, usize>;

impl<F: Field> HModule<F> {
    /// Functionals spanning `Hom(M, S_I)`.
    pub fn hom_to_simple(&self, i: Subset) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let n = self.dim();
        let mut ech = SparseEchelon::new(f, n);
        for s in 0..self.rank() {
            let a = self.action(s);
            for c in 0..n {
                if ech.is_full() {
                    break;
                }
                // (f·A_s)_c − [s ∈ I] f_c
                let mut row: SparseVec<F::Elem> = a.col_sparse(c);
                if i.contains(s) {
                    row.push((c, f.from_i64(-1)));
                }
                let row = normalize(f, row);
                if !row.is_empty() {
                    ech.insert(&row);
                }
            }
        }
        ech.kernel()
    }

    /// `I ↦ dim Hom(M, S_I)`.
    pub fn top(&self) -> Multiplicities {
        Subset::all(self.rank())
            .filter_map(|i| {
                let d = self.hom_to_simple(i).len();
                (d > 0).then_some((i, d))
            })
            .collect()
    }

    /// All maps to simples, as the rows of one matrix.
    pub fn top_functionals(&self) -> Matrix<F> {
        let functionals: Vec<Vec<F::Elem>> = Subset::all(self.rank()).flat_map(|i| self.hom_to_simple(i)).collect();
        Matrix::from_row_vecs(self.field(), self.dim(), &functionals)
    }

    /// Intersection of the kernels of all maps to simples.
    pub fn radical(&self) -> Subspace<F> {
        let top = self.top_functionals();
        if top.rows() == 0 {
            return Subspace::full(self.field(), self.dim());
        }
        top.kernel_space()
    }

    /// `{v : π_s v = [s ∈ I] v for all s}`.
    pub fn socle_component(&self, i: Subset) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let n = self.dim();
        let mut ech = SparseEchelon::new(f, n);
        for s in 0..self.rank() {
            let a = self.action(s);
            for r in 0..n {
                if ech.is_full() {
                    break;
                }
                let mut row: SparseVec<F::Elem> = a
                    .row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !f.is_zero(x))
                    .map(|(c, x)| (c, x.clone()))
                    .collect();
                if i.contains(s) {
                    row.push((r, f.from_i64(-1)));
                }
                let row = normalize(f, row);
                if !row.is_empty() {
                    ech.insert(&row);
                }
            }
        }
        ech.kernel()
    }

    pub fn socle(&self) -> Subspace<F> {
        let vecs = Subset::all(self.rank()).flat_map(|i| self.socle_component(i)).collect();
        Subspace::span(self.field(), self.dim(), vecs)
    }

    pub fn socle_multiplicities(&self) -> Multiplicities {
        Subset::all(self.rank())
            .filter_map(|i| {
                let d = self.socle_component(i).len();
                (d > 0).then_some((i, d))
            })
            .collect()
    }

    /// Composition factors, collected from the radical layers.
    pub fn composition_factors(&self) -> Multiplicities {
        let mut out = Multiplicities::new();
        let mut cur = self.clone();
        while cur.dim() > 0 {
            for (i, m) in cur.top() {
                *out.entry(i).or_default() += m;
            }
            let rad = cur.radical();
            cur = cur.submodule(&rad).expect("the radical is a submodule");
        }
        out
    }

    /// Radical series dimensions `dim M, dim rad M, dim rad² M, …, 0`.
    pub fn radical_series_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.dim()];
        let mut cur = self.clone();
        while cur.dim() > 0 {
            let rad = cur.radical();
            cur = cur.submodule(&rad).expect("the radical is a submodule");
            dims.push(cur.dim());
        }
        dims
    }
}

/// Total multiplicity.
pub fn total(m: &Multiplicities) -> usize {
    m.values().sum()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{GroupModel, GroupTable};
    use crate::linalg::Rationals;

    #[test]
    fn projective_indecomposables_have_simple_top_and_socle() {
        let g = Arc::new(GroupTable::build(GroupModel::A(3)).unwrap());
        for i in Subset::all(3) {
            let p = HModule::projective_indecomposable(&g, &Rationals, i);
            assert_eq!(p.top(), Multiplicities::from([(i, 1)]));
            assert_eq!(total(&p.socle_multiplicities()), 1);
            assert_eq!(p.radical().dim(), p.dim() - 1);
            assert_eq!(total(&p.composition_factors()), p.dim());
        }
    }

    #[test]
    fn simple_has_zero_radical() {
        let g = Arc::new(GroupTable::build(GroupModel::I2(5)).unwrap());
        let s = HModule::simple(&g, &Rationals, Subset::singleton(1));
        assert_eq!(s.radical().dim(), 0);
        assert_eq!(s.composition_factors(), Multiplicities::from([(Subset::singleton(1), 1)]));
    }
}
