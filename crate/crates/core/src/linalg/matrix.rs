//! Dense exact matrices.

use std::fmt;

use super::field::Field;
use super::poly::Poly;
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.to_text(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_row_vecs(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_col_vecs(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "ragged columns");
            for (r, x) in v.iter().enumerate() {
                m.data[r * m.cols + c] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Nonzero entries of column `c` as `(row, value)`.
    pub fn col_sparse(&self, c: usize) -> Vec<(usize, F::Elem)> {
        (0..self.rows)
            .filter_map(|r| {
                let x = self.get(r, c);
                (!self.field.is_zero(x)).then(|| (r, x.clone()))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Self) {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_shape(other);
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_shape(other);
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &Self, c: &F::Elem) -> Self {
        self.check_same_shape(other);
        let f = &self.field;
        if f.is_zero(c) {
            return self.clone();
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            f.add_mul_assign(a, b, c);
        }
        out
    }

    /// `self - λ·I`
    pub fn shift(&self, lambda: &F::Elem) -> Self {
        assert!(self.is_square());
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.rows {
            let k = i * self.cols + i;
            out.data[k] = f.sub(&out.data[k], lambda);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !f.is_zero(b) {
                        f.add_mul_assign(o, a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            if p != r {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, r * m.cols + k);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for k in c..m.cols {
                let i = r * m.cols + k;
                m.data[i] = f.mul(&m.data[i], &inv);
            }
            let prow: Vec<F::Elem> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for (k, pv) in prow.iter().enumerate() {
                    if f.is_zero(pv) {
                        continue;
                    }
                    let idx = i * m.cols + c + k;
                    m.data[idx] = f.sub(&m.data[idx], &f.mul(&factor, pv));
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self·x = 0}`, one vector per free column,
    /// so the basis is in reduced echelon form with respect to the free coordinates.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn kernel_space(&self) -> Subspace<F> {
        Subspace::span(&self.field, self.cols, self.kernel())
    }

    /// Column space.
    pub fn image(&self) -> Subspace<F> {
        let t = self.transpose();
        Subspace::span(&self.field, self.rows, (0..t.rows).map(|r| t.row(r).to_vec()).collect())
    }

    /// Some `x` with `self·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, f.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        let f = &self.field;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else { return f.zero() };
            if p != c {
                for k in 0..n {
                    m.data.swap(p * n + k, c * n + k);
                }
                det = f.neg(&det);
            }
            let pv = m.get(c, c).clone();
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for k in c..n {
                    let t = f.mul(&factor, m.get(c, k));
                    let idx = i * n + k;
                    m.data[idx] = f.sub(&m.data[idx], &t);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        let mut t = f.zero();
        for i in 0..self.rows.min(self.cols) {
            t = f.add(&t, self.get(i, i));
        }
        t
    }

    /// Minimal polynomial, as the lcm of the local minimal polynomials of a
    /// set of vectors whose cyclic subspaces span the whole space.
    pub fn min_poly(&self) -> Poly<F> {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut result = Poly::constant(f.clone(), 1);
        let mut covered = Subspace::zero(f, n);
        for i in 0..n {
            if covered.dim() == n {
                break;
            }
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            if covered.contains(&e) {
                continue;
            }
            let (p, krylov) = self.local_min_poly(e);
            covered = covered.sum(&Subspace::span(f, n, krylov));
            result = result.lcm(&p);
        }
        result
    }

    /// Minimal polynomial of `v` under `self`, and the Krylov vectors.
    fn local_min_poly(&self, v: Vec<F::Elem>) -> (Poly<F>, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let n = self.rows;
        // Echelon rows paired with their expression in the Krylov sequence.
        let mut ech: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
        let mut seq: Vec<Vec<F::Elem>> = Vec::new();
        let mut cur = v;
        loop {
            let k = seq.len();
            let mut w = cur.clone();
            let mut combo = vec![f.zero(); k + 1];
            combo[k] = f.one();
            for (p, row, rc) in &ech {
                let c = w[*p].clone();
                if f.is_zero(&c) {
                    continue;
                }
                for j in 0..n {
                    if !f.is_zero(&row[j]) {
                        w[j] = f.sub(&w[j], &f.mul(&c, &row[j]));
                    }
                }
                for (j, x) in rc.iter().enumerate() {
                    if !f.is_zero(x) {
                        combo[j] = f.sub(&combo[j], &f.mul(&c, x));
                    }
                }
            }
            match w.iter().position(|x| !f.is_zero(x)) {
                None => {
                    // combo · (v, φv, …, φ^k v) = 0 with combo[k] = 1.
                    return (Poly::new(f.clone(), combo), seq);
                }
                Some(p) => {
                    let inv = f.inv(&w[p]).unwrap();
                    let row: Vec<F::Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
                    let rc: Vec<F::Elem> = combo.iter().map(|x| f.mul(x, &inv)).collect();
                    ech.push((p, row, rc));
                    let next = self.mul_vec(&cur);
                    seq.push(cur);
                    cur = next;
                }
            }
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Fitting decomposition: `(ker M^N, im M^N)` for `N ≥ n`. The matrix is
    /// nilpotent on the first part and invertible on the second.
    pub fn fitting_split(&self) -> (Subspace<F>, Subspace<F>) {
        assert!(self.is_square());
        let mut p = self.clone();
        let mut e = 1usize;
        while e < self.rows.max(1) {
            p = p.mul(&p);
            e *= 2;
        }
        (p.kernel_space(), p.image())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rational, Rationals};

    fn q(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rationals> {
        Matrix::from_rows(&Rationals, rows, cols, v.iter().map(|&x| Rational::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Matrix::identity(&Rationals, 4).kernel().is_empty());
        assert_eq!(Matrix::zeros(&Rationals, 3, 5).rank(), 0);
    }

    #[test]
    fn solve_half() {
        let a = q(1, 1, &[2]);
        assert_eq!(a.solve(&[Rational::ONE]).unwrap(), Some(vec![Rational::new(1, 2)]));
        assert!(a.solve(&[Rational::ONE, Rational::ONE]).is_err());
        let sing = q(2, 2, &[1, 1, 1, 1]);
        assert_eq!(sing.solve(&[Rational::ONE, Rational::ZERO]).unwrap(), None);
    }

    #[test]
    fn rank_nullity() {
        let m = q(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1]);
        let ker = m.kernel();
        assert_eq!(ker.len() + m.rank(), 4);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let (r, _) = m.rref();
        assert_eq!(r.rref().0, r);
    }

    #[test]
    fn inverse_and_det() {
        let m = q(3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 1]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det(), Rational::from_int(5));
        assert!(q(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn fitting_cases() {
        let nil = q(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        let (k, i) = nil.fitting_split();
        assert_eq!((k.dim(), i.dim()), (3, 0));
        let inv = Matrix::identity(&Rationals, 3);
        let (k, i) = inv.fitting_split();
        assert_eq!((k.dim(), i.dim()), (0, 3));
        let d = q(2, 2, &[0, 0, 0, 1]);
        let (k, i) = d.fitting_split();
        assert_eq!((k.dim(), i.dim()), (1, 1));
    }

    #[test]
    fn min_poly_of_block_matrix() {
        let f = PrimeField::new(101).unwrap();
        // diag(J_2(3), 3, 5): minimal polynomial (x-3)^2 (x-5).
        let mut m = Matrix::zeros(&f, 4, 4);
        m.set(0, 0, 3);
        m.set(0, 1, 1);
        m.set(1, 1, 3);
        m.set(2, 2, 3);
        m.set(3, 3, 5);
        assert_eq!(m.min_poly(), Poly::from_roots(f, &[3, 3, 5]));
    }
}
