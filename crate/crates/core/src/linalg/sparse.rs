//! Sparse rows and an incremental echelon form for large, very sparse
//! homogeneous systems (the intertwiner equations of hom spaces).

use super::field::Field;

/// Sorted `(column, nonzero value)` pairs.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Sorts by column and merges duplicates, dropping zeros.
pub fn normalize<F: Field>(field: &F, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = field.add(lx, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

pub fn to_dense<F: Field>(field: &F, n: usize, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
    let mut d = vec![field.zero(); n];
    for (c, x) in v {
        d[*c] = x.clone();
    }
    d
}

pub fn to_sparse<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Rows kept in semi-echelon form: each stored row has leading entry 1 in a
/// distinct pivot column and no entries to the left of it.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<Option<usize>>,
    work: Vec<F::Elem>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        SparseEchelon {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            work: vec![field.zero(); ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Adds a row; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, row: &[(usize, F::Elem)]) -> bool {
        let f = self.field.clone();
        if row.is_empty() || self.is_full() {
            return false;
        }
        let mut lo = usize::MAX;
        for (c, x) in row {
            if !f.is_zero(x) {
                self.work[*c] = f.add(&self.work[*c], x);
                lo = lo.min(*c);
            }
        }
        if lo == usize::MAX {
            return false;
        }
        let mut result: SparseVec<F::Elem> = Vec::new();
        for c in lo..self.ncols {
            if f.is_zero(&self.work[c]) {
                continue;
            }
            if result.is_empty() {
                if let Some(r) = self.pivot_row[c] {
                    let factor = std::mem::replace(&mut self.work[c], f.zero());
                    for (k, x) in self.rows[r].iter().skip(1) {
                        let t = f.mul(&factor, x);
                        self.work[*k] = f.sub(&self.work[*k], &t);
                    }
                    continue;
                }
            }
            result.push((c, std::mem::replace(&mut self.work[c], f.zero())));
        }
        if result.is_empty() {
            return false;
        }
        let (p, lead) = result[0].clone();
        let inv = f.inv(&lead).unwrap();
        for (_, x) in result.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(result);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Basis of the null space of the inserted rows: one vector per free
    /// column, with 1 there and 0 at every other free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect();
        let mut pivots_desc: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect();
        pivots_desc.reverse();
        free.iter()
            .map(|&fc| {
                let mut x = vec![f.zero(); self.ncols];
                x[fc] = f.one();
                for &p in &pivots_desc {
                    // Only columns > p can be nonzero in x at this point.
                    if p > fc {
                        continue;
                    }
                    let row = &self.rows[self.pivot_row[p].unwrap()];
                    let mut acc = f.zero();
                    for (c, v) in row.iter().skip(1) {
                        f.add_mul_assign(&mut acc, v, &x[*c]);
                    }
                    x[p] = f.neg(&acc);
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, PrimeField};

    #[test]
    fn kernel_matches_dense() {
        let f = PrimeField::new(101).unwrap();
        let rows: Vec<Vec<u64>> = vec![vec![1, 2, 0, 0, 5], vec![0, 0, 1, 3, 0], vec![2, 4, 1, 3, 10], vec![0, 1, 0, 0, 1]];
        let mut e = SparseEchelon::new(&f, 5);
        let mut indep = 0;
        for r in &rows {
            if e.insert(&to_sparse(&f, r)) {
                indep += 1;
            }
        }
        assert_eq!(indep, 3);
        let dense = Matrix::from_row_vecs(&f, 5, &rows);
        let k = e.kernel();
        assert_eq!(k.len(), dense.kernel().len());
        for v in &k {
            assert!(dense.mul_vec(v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn normalize_merges() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(normalize(&f, vec![(3, 1), (1, 2), (3, 6), (0, 0)]), vec![(1, 2)]);
    }
}
