//! Direct-sum decomposition and indecomposability certificates, in the style
//! of the MeatAxe: look for endomorphisms with a nontrivial Fitting split, and
//! certify locality of `End(M)` through the radical of its trace form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hom::combine;
use super::HModule;
use crate::linalg::{Field, Matrix, Poly, Subspace};

const SPLIT_TRIALS: usize = 16;

/// Outcome of an indecomposability check. `ProbableYes` is never upgraded
/// silently: it means the search found no splitting but could not certify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    CertifiedYes,
    Decomposable { summand_dims: Vec<usize> },
    ProbableYes,
}

impl Indecomposability {
    pub fn is_certified(&self) -> bool {
        matches!(self, Indecomposability::CertifiedYes)
    }
    pub fn label(&self) -> &'static str {
        match self {
            Indecomposability::CertifiedYes => "certified-yes",
            Indecomposability::Decomposable { .. } => "decomposable",
            Indecomposability::ProbableYes => "probable-yes",
        }
    }
}

/// Summands of a module together with their spans in the original space.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub summands: Vec<HModule<F>>,
    pub subspaces: Vec<Subspace<F>>,
}

impl<F: Field> Decomposition<F> {
    /// Summand dimensions, sorted.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.summands.iter().map(HModule::dim).collect();
        d.sort_unstable();
        d
    }
}

fn flatten<F: Field>(m: &Matrix<F>) -> Vec<F::Elem> {
    m.data().to_vec()
}

impl<F: Field> HModule<F> {
    /// A pair of complementary nonzero submodules, if a splitting endomorphism is found.
    pub fn find_split(&self, seed: u64) -> Option<(Subspace<F>, Subspace<F>)> {
        let end = self.end_ring();
        self.split_with(&end, seed)
    }

    fn split_with(&self, end: &[Matrix<F>], seed: u64) -> Option<(Subspace<F>, Subspace<F>)> {
        let f = self.field();
        let n = self.dim();
        if end.len() <= 1 || n <= 1 {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let randoms = (0..SPLIT_TRIALS).map(|_| {
            let coef: Vec<F::Elem> = end.iter().map(|_| f.random_elem(&mut rng)).collect();
            combine(f, end, &coef)
        });
        for phi in end.iter().cloned().chain(randoms) {
            let p = phi.min_poly();
            if p.degree().unwrap_or(0) <= 1 {
                continue;
            }
            for lambda in f.roots(&p) {
                let (k, i) = phi.shift(&lambda).fitting_split();
                if k.dim() > 0 && k.dim() < n {
                    return Some((k, i));
                }
            }
        }
        None
    }

    /// Splits recursively until no splitting endomorphism is found.
    pub fn decompose(&self, seed: u64) -> Decomposition<F> {
        let f = self.field().clone();
        let n = self.dim();
        let mut done = Decomposition { summands: Vec::new(), subspaces: Vec::new() };
        // (module, basis of its span in the original coordinates as columns)
        let mut work = vec![(self.clone(), Matrix::identity(&f, n))];
        let mut round = 0u64;
        while let Some((m, embed)) = work.pop() {
            round += 1;
            match m.find_split(seed.wrapping_add(round)) {
                None => {
                    let cols: Vec<Vec<F::Elem>> = (0..embed.cols()).map(|c| embed.col(c)).collect();
                    done.subspaces.push(Subspace::span(&f, n, cols));
                    done.summands.push(m);
                }
                Some((a, b)) => {
                    for part in [a, b] {
                        let sub = m.submodule(&part).expect("Fitting parts are submodules");
                        let e = embed.mul(&part.basis_matrix());
                        work.push((sub, e));
                    }
                }
            }
        }
        done
    }

    pub fn is_indecomposable(&self, seed: u64) -> Indecomposability {
        let n = self.dim();
        if n == 0 {
            return Indecomposability::Decomposable { summand_dims: Vec::new() };
        }
        let end = self.end_ring();
        if end.len() == 1 {
            return Indecomposability::CertifiedYes;
        }
        let jac = self.jacobson_radical(&end);
        if let Some(j) = &jac {
            if end.len() - j.len() == 1 {
                return Indecomposability::CertifiedYes;
            }
        }
        if let Some((a, b)) = self.split_with(&end, seed) {
            let mut dims = vec![a.dim(), b.dim()];
            dims.sort_unstable();
            return Indecomposability::Decomposable { summand_dims: dims };
        }
        match jac {
            Some(j) if self.quotient_is_field(&end, &j, seed) => Indecomposability::CertifiedYes,
            _ => Indecomposability::ProbableYes,
        }
    }

    /// Basis of `J(End M)`, when it can be computed exactly: the radical of the
    /// trace form `(x, y) ↦ tr(xy)` always contains `J`, and equals it when
    /// the radical is a nil ideal (automatic in characteristic 0 or when
    /// `dim M` is below the characteristic; otherwise checked by powering).
    fn jacobson_radical(&self, end: &[Matrix<F>]) -> Option<Vec<Matrix<F>>> {
        let f = self.field();
        let r = end.len();
        let mut gram = Matrix::zeros(f, r, r);
        for i in 0..r {
            for j in i..r {
                let t = trace_of_product(f, &end[i], &end[j]);
                gram.set(i, j, t.clone());
                gram.set(j, i, t);
            }
        }
        let rad: Vec<Matrix<F>> = gram.kernel().iter().map(|c| combine(f, end, c)).collect();
        let p = f.characteristic();
        if p == 0 || (self.dim() as u64) < p || is_nilpotent_ideal(f, &rad, self.dim()) {
            Some(rad)
        } else {
            None
        }
    }

    /// Whether `E / J` is a field: commutative and generated by one element
    /// with irreducible minimal polynomial of degree `dim E/J`.
    fn quotient_is_field(&self, end: &[Matrix<F>], jac: &[Matrix<F>], seed: u64) -> bool {
        let f = self.field();
        let n = self.dim();
        let q = end.len() - jac.len();
        let jspan = Subspace::span(f, n * n, jac.iter().map(flatten).collect());
        let in_j = |m: &Matrix<F>| jspan.contains(&flatten(m));
        for a in end {
            for b in end {
                if !in_j(&a.mul(b).sub(&b.mul(a))) {
                    return false;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let randoms: Vec<Matrix<F>> = (0..SPLIT_TRIALS)
            .map(|_| {
                let coef: Vec<F::Elem> = end.iter().map(|_| f.random_elem(&mut rng)).collect();
                combine(f, end, &coef)
            })
            .collect();
        for x in end.iter().chain(&randoms) {
            if let Some(g) = min_poly_mod(f, x, &jspan, n, q) {
                if g.degree() == Some(q) && f.is_irreducible(&g) == Some(true) {
                    return true;
                }
            }
        }
        false
    }
}

fn trace_of_product<F: Field>(f: &F, a: &Matrix<F>, b: &Matrix<F>) -> F::Elem {
    let n = a.rows();
    let mut t = f.zero();
    for i in 0..n {
        for k in 0..n {
            let x = a.get(i, k);
            if !f.is_zero(x) {
                f.add_mul_assign(&mut t, x, b.get(k, i));
            }
        }
    }
    t
}

/// Whether the ideal spanned by `basis` is nilpotent.
fn is_nilpotent_ideal<F: Field>(f: &F, basis: &[Matrix<F>], n: usize) -> bool {
    if basis.is_empty() {
        return true;
    }
    let mut power: Vec<Matrix<F>> = basis.to_vec();
    let mut last_dim = usize::MAX;
    for _ in 0..=n {
        let prods: Vec<Vec<F::Elem>> = power.iter().flat_map(|a| basis.iter().map(move |b| flatten(&a.mul(b)))).collect();
        let span = Subspace::span(f, n * n, prods);
        if span.is_zero() {
            return true;
        }
        if span.dim() == last_dim {
            return false;
        }
        last_dim = span.dim();
        power = span.basis().iter().map(|v| Matrix::from_rows(f, n, n, v.clone()).unwrap()).collect();
    }
    false
}

/// Minimal polynomial of `x` in `E / J`, searching up to degree `max_deg`.
fn min_poly_mod<F: Field>(f: &F, x: &Matrix<F>, jspan: &Subspace<F>, n: usize, max_deg: usize) -> Option<Poly<F>> {
    let mut powers: Vec<Vec<F::Elem>> = vec![flatten(&Matrix::identity(f, n))];
    let mut cur = Matrix::identity(f, n);
    for d in 1..=max_deg {
        cur = cur.mul(x);
        let mut vecs = jspan.basis().to_vec();
        vecs.extend(powers.iter().cloned());
        let base = Subspace::span(f, n * n, vecs);
        let target = flatten(&cur);
        if base.contains(&target) {
            // Solve target = Σ c_k x^k + j with columns [J | powers].
            let mut cols: Vec<Vec<F::Elem>> = jspan.basis().to_vec();
            cols.extend(powers.iter().cloned());
            let a = Matrix::from_col_vecs(f, n * n, &cols);
            let sol = a.solve(&target).ok()??;
            let off = jspan.dim();
            let mut coeffs: Vec<F::Elem> = sol[off..].iter().map(|c| f.neg(c)).collect();
            coeffs.push(f.one());
            debug_assert_eq!(coeffs.len(), d + 1);
            return Some(Poly::new(f.clone(), coeffs));
        }
        powers.push(target);
    }
    None
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{GroupModel, GroupTable, Subset};
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn projective_splits_into_indecomposables() {
        let g = Arc::new(GroupTable::build(GroupModel::A(3)).unwrap());
        let p = HModule::projective(&g, &Rationals, Subset::from_one_based(&[1]), Subset::from_one_based(&[1, 3])).unwrap();
        let d = p.decompose(0);
        assert_eq!(d.dims(), vec![3, 5]);
        for s in &d.summands {
            assert!(s.verify_relations());
            assert_eq!(s.is_indecomposable(0), Indecomposability::CertifiedYes);
        }
        assert!(matches!(p.is_indecomposable(0), Indecomposability::Decomposable { .. }));
    }

    #[test]
    fn simples_are_certified() {
        let g = Arc::new(GroupTable::build(GroupModel::B(3)).unwrap());
        let f = PrimeField::new(101).unwrap();
        let s = HModule::simple(&g, &f, Subset::singleton(2));
        assert!(s.is_indecomposable(3).is_certified());
        let twice = s.direct_sum(&s);
        assert_eq!(twice.decompose(1).dims(), vec![1, 1]);
    }
}
