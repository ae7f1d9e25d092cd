//! Subspaces of `K^n` held as reduced row echelon bases.

use super::field::Field;
use super::matrix::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let m = Matrix::identity(field, ambient);
        Subspace {
            field: field.clone(),
            ambient,
            rows: (0..ambient).map(|r| m.row(r).to_vec()).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_row_vecs(field, ambient, &vectors);
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { field: field.clone(), ambient, rows, pivots }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    /// Reduced echelon basis.
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; the standard vectors at these positions
    /// span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// `v` minus its projection along the basis onto the pivot coordinates.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Self::span(&self.field, self.ambient, v)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, self.ambient);
        }
        // Solve Σ a_i u_i − Σ b_j v_j = 0.
        let k = self.dim();
        let mut cols: Vec<Vec<F::Elem>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| r.iter().map(|x| f.neg(x)).collect()));
        let m = Matrix::from_col_vecs(f, self.ambient, &cols);
        let vecs = m
            .kernel()
            .into_iter()
            .map(|coef| {
                let mut v = vec![f.zero(); self.ambient];
                for (a, row) in coef[..k].iter().zip(&self.rows) {
                    if f.is_zero(a) {
                        continue;
                    }
                    for (x, r) in v.iter_mut().zip(row) {
                        f.add_mul_assign(x, a, r);
                    }
                }
                v
            })
            .collect();
        Self::span(f, self.ambient, vecs)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Invariant under every matrix (acting on column vectors).
    pub fn is_invariant(&self, mats: &[Matrix<F>]) -> bool {
        mats.iter().all(|m| self.rows.iter().all(|r| self.contains(&m.mul_vec(r))))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_col_vecs(&self.field, self.ambient, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Rational, Rationals};

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| Rational::from_int(a)).collect()
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(&Rationals, 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(&Rationals, 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn coords_round_trip() {
        let s = Subspace::span(&Rationals, 3, vec![v(&[1, 1, 0]), v(&[0, 2, 2])]);
        let x = v(&[3, 5, 2]);
        let c = s.coords(&x).unwrap();
        let mut back = vec![Rational::ZERO; 3];
        for (a, row) in c.iter().zip(s.basis()) {
            for (b, r) in back.iter_mut().zip(row) {
                *b = b.add(&a.mul(r));
            }
        }
        assert_eq!(back, x);
        assert!(s.coords(&v(&[1, 0, 0])).is_none());
        assert_eq!(s.non_pivots(), vec![2]);
    }
}
