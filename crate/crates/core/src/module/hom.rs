//! Hom spaces by spinning, and isomorphism testing.
//!
//! A homomorphism out of `M` is determined by the images of a generating set.
//! Spinning the generators under the action produces a basis of `M` made of
//! words applied to generators, together with the linear relations
//! `π_s m_j = Σ c_l m_l` that the images must satisfy. The unknowns are the
//! images of the generators in `N`, so the linear system has
//! `#generators · dim N` unknowns rather than `dim M · dim N`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{apply_sparse, HModule};
use crate::linalg::{normalize, Field, Matrix, SparseEchelon, SparseVec};

/// Spinning data for a module: a basis of words in generators and the
/// relations among them.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    dim: usize,
    generators: Vec<Vec<F::Elem>>,
    /// Node `l`: generator index and, unless it is the generator itself,
    /// `(node, s)` with `m_l = π_s m_node`.
    nodes: Vec<(usize, Option<(usize, usize)>)>,
    /// `(j, s, [(l, c)])`: `π_s m_j = Σ c m_l`.
    relations: Vec<(usize, usize, SparseVec<F::Elem>)>,
    /// Standard basis vector `e_c` as a combination of nodes.
    std_coords: Vec<SparseVec<F::Elem>>,
}

/// Incremental echelon over dense vectors that records each row as a
/// combination of the inserted vectors.
struct TrackedEchelon<F: Field> {
    field: F,
    rows: Vec<(usize, Vec<F::Elem>, SparseVec<F::Elem>)>,
}

impl<F: Field> TrackedEchelon<F> {
    fn new(field: &F) -> Self {
        TrackedEchelon { field: field.clone(), rows: Vec::new() }
    }

    /// Reduces `v`; returns the residue and its combination, where `tag`
    /// names `v` itself.
    fn reduce(&self, v: &[F::Elem], tag: Option<usize>) -> (Vec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut w = v.to_vec();
        let mut combo: SparseVec<F::Elem> = tag.map(|t| vec![(t, f.one())]).unwrap_or_default();
        for (p, row, rc) in &self.rows {
            let c = w[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
            let nc = f.neg(&c);
            combo.extend(rc.iter().map(|(l, y)| (*l, f.mul(&nc, y))));
        }
        (w, normalize(f, combo))
    }

    fn push(&mut self, residue: Vec<F::Elem>, combo: SparseVec<F::Elem>) {
        let f = &self.field;
        let p = residue.iter().position(|x| !f.is_zero(x)).expect("nonzero residue");
        let inv = f.inv(&residue[p]).unwrap();
        let row = residue.iter().map(|x| f.mul(x, &inv)).collect();
        let rc = combo.into_iter().map(|(l, y)| (l, f.mul(&y, &inv))).collect();
        self.rows.push((p, row, rc));
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

impl<F: Field> Presentation<F> {
    pub fn of(m: &HModule<F>) -> Self {
        let gens = choose_generators(m);
        Self::with_generators(m, gens)
    }

    /// Spins the given generators, which must generate `m`; generators
    /// already in the span of the earlier ones are dropped.
    pub fn with_generators(m: &HModule<F>, candidates: Vec<Vec<F::Elem>>) -> Self {
        let f = m.field().clone();
        let n = m.dim();
        let mut ech = TrackedEchelon::new(&f);
        let mut vectors: Vec<Vec<F::Elem>> = Vec::new();
        let mut nodes = Vec::new();
        let mut relations = Vec::new();
        let mut generators = Vec::new();
        for g in candidates {
            let (res, combo) = ech.reduce(&g, Some(vectors.len()));
            if res.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            let gi = generators.len();
            generators.push(g.clone());
            nodes.push((gi, None));
            vectors.push(g.clone());
            ech.push(res, combo);
            let mut next = nodes.len() - 1;
            while next < nodes.len() {
                let j = next;
                next += 1;
                for s in 0..m.rank() {
                    let img = m.apply(s, &vectors[j]);
                    let (res, combo) = ech.reduce(&img, Some(vectors.len()));
                    if res.iter().all(|x| f.is_zero(x)) {
                        // img − Σ … = 0 with the tag coefficient 1 on the
                        // would-be new node; rewrite as π_s m_j = Σ c m_l.
                        let tag = vectors.len();
                        let rhs: SparseVec<F::Elem> =
                            combo.into_iter().filter(|(l, _)| *l != tag).map(|(l, c)| (l, f.neg(&c))).collect();
                        relations.push((j, s, rhs));
                    } else {
                        nodes.push((gi, Some((j, s))));
                        vectors.push(img);
                        ech.push(res, combo);
                    }
                }
            }
        }
        assert_eq!(ech.dim(), n, "generators do not span the module");
        // Back-substitute to express each e_c.
        let mut std_coords = vec![Vec::new(); n];
        let mut rows = ech.rows;
        rows.sort_by_key(|r| std::cmp::Reverse(r.0));
        let mut done: Vec<(usize, SparseVec<F::Elem>)> = Vec::new();
        for (p, row, rc) in rows {
            // Clear entries right of the pivot using rows already reduced.
            let mut combo = rc;
            for (q, qc) in &done {
                let c = row[*q].clone();
                if f.is_zero(&c) {
                    continue;
                }
                let nc = f.neg(&c);
                combo.extend(qc.iter().map(|(l, y)| (*l, f.mul(&nc, y))));
            }
            let combo = normalize(&f, combo);
            std_coords[p] = combo.clone();
            done.push((p, combo));
        }
        Presentation { dim: n, generators, nodes, relations, std_coords }
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<F::Elem>] {
        &self.generators
    }

    /// Basis of `Hom(M, N)` as `dim N × dim M` matrices.
    pub fn hom_to(&self, target: &HModule<F>) -> Vec<Matrix<F>> {
        let f = target.field().clone();
        let nd = target.dim();
        let k = self.generators.len();
        let cols = target.sparse_columns();
        // W_l = π_{word(l)} on N, as sparse columns.
        let mut words: Vec<Vec<SparseVec<F::Elem>>> = Vec::with_capacity(self.nodes.len());
        for &(_, from) in &self.nodes {
            let w = match from {
                None => (0..nd).map(|c| vec![(c, f.one())]).collect(),
                Some((j, s)) => words[j].iter().map(|col| apply_sparse(&f, &cols[s], col)).collect(),
            };
            words.push(w);
        }
        let mut ech = SparseEchelon::new(&f, k * nd);
        for (j, s, rhs) in &self.relations {
            if ech.is_full() {
                break;
            }
            let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); nd];
            let gj = self.nodes[*j].0;
            for (c, col) in words[*j].iter().enumerate() {
                let img = apply_sparse(&f, &cols[*s], col);
                for (r, x) in img {
                    rows[r].push((gj * nd + c, x));
                }
            }
            for (l, coef) in rhs {
                let gl = self.nodes[*l].0;
                let nc = f.neg(coef);
                for (c, col) in words[*l].iter().enumerate() {
                    for (r, x) in col {
                        rows[*r].push((gl * nd + c, f.mul(&nc, x)));
                    }
                }
            }
            for row in rows {
                let row = normalize(&f, row);
                if !row.is_empty() {
                    ech.insert(&row);
                }
            }
        }
        ech.kernel()
            .into_iter()
            .map(|y| {
                // Image of every node, then of every standard basis vector.
                let images: Vec<Vec<F::Elem>> = self
                    .nodes
                    .iter()
                    .enumerate()
                    .map(|(l, &(g, _))| {
                        let mut out = vec![f.zero(); nd];
                        for (c, col) in words[l].iter().enumerate() {
                            let yc = &y[g * nd + c];
                            if f.is_zero(yc) {
                                continue;
                            }
                            for (r, x) in col {
                                f.add_mul_assign(&mut out[*r], x, yc);
                            }
                        }
                        out
                    })
                    .collect();
                let mut t = Matrix::zeros(&f, nd, self.dim);
                for (c, combo) in self.std_coords.iter().enumerate() {
                    let mut col = vec![f.zero(); nd];
                    for (l, a) in combo {
                        for (r, x) in images[*l].iter().enumerate() {
                            f.add_mul_assign(&mut col[r], a, x);
                        }
                    }
                    for (r, x) in col.into_iter().enumerate() {
                        t.set(r, c, x);
                    }
                }
                t
            })
            .collect()
    }
}

/// Basis vectors whose images span `M / rad M`; by Nakayama they generate `M`.
fn choose_generators<F: Field>(m: &HModule<F>) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let n = m.dim();
    let rad = m.radical();
    let mut ech = TrackedEchelon::new(f);
    for b in rad.basis() {
        let (res, _) = ech.reduce(b, None);
        ech.push(res, Vec::new());
    }
    let mut gens = Vec::new();
    for j in 0..n {
        if ech.dim() == n {
            break;
        }
        let mut e = vec![f.zero(); n];
        e[j] = f.one();
        let (res, _) = ech.reduce(&e, None);
        if res.iter().any(|x| !f.is_zero(x)) {
            ech.push(res, Vec::new());
            gens.push(e);
        }
    }
    gens
}

/// Result of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoOutcome<F: Field> {
    /// An invertible intertwiner `M → N`.
    Isomorphic(Matrix<F>),
    NotIsomorphic(String),
    Undetermined(String),
}

impl<F: Field> IsoOutcome<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
    pub fn is_undetermined(&self) -> bool {
        matches!(self, IsoOutcome::Undetermined(_))
    }
    pub fn describe(&self) -> String {
        match self {
            IsoOutcome::Isomorphic(_) => "isomorphic".into(),
            IsoOutcome::NotIsomorphic(r) => format!("not isomorphic: {r}"),
            IsoOutcome::Undetermined(r) => format!("undetermined: {r}"),
        }
    }
}

const RANDOM_TRIALS: usize = 24;
const GRID_BUDGET: usize = 4096;

/// Searches the span of `maps` for coefficients whose combination is accepted
/// by `good`: each basis element, then seeded random combinations, then (when
/// small enough) every point of a grid that is large enough to witness a
/// nonzero polynomial of degree `degree` in each variable.
pub(crate) fn search_span<F: Field>(
    field: &F,
    maps: &[Matrix<F>],
    seed: u64,
    degree: usize,
    good: impl Fn(&Matrix<F>) -> bool,
) -> Option<Vec<F::Elem>> {
    let r = maps.len();
    if r == 0 {
        return None;
    }
    let unit = |k: usize| (0..r).map(|i| if i == k { field.one() } else { field.zero() }).collect::<Vec<_>>();
    for (k, t) in maps.iter().enumerate() {
        if good(t) {
            return Some(unit(k));
        }
    }
    if r == 1 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let coef: Vec<F::Elem> = maps.iter().map(|_| field.random_elem(&mut rng)).collect();
        if good(&combine(field, maps, &coef)) {
            return Some(coef);
        }
    }
    // Exhaustive grid {0..=degree}^r, feasible only for small hom spaces.
    let side = degree + 1;
    let points = side.checked_pow(r as u32)?;
    if points > GRID_BUDGET || (field.characteristic() != 0 && side as u64 > field.characteristic()) {
        return None;
    }
    for idx in 0..points {
        let mut k = idx;
        let coef: Vec<F::Elem> = (0..r)
            .map(|_| {
                let c = field.from_i64((k % side) as i64);
                k /= side;
                c
            })
            .collect();
        if good(&combine(field, maps, &coef)) {
            return Some(coef);
        }
    }
    None
}

pub(crate) fn combine<F: Field>(field: &F, maps: &[Matrix<F>], coef: &[F::Elem]) -> Matrix<F> {
    let mut acc = Matrix::zeros(field, maps[0].rows(), maps[0].cols());
    for (t, c) in maps.iter().zip(coef) {
        if !field.is_zero(c) {
            acc = acc.add_scaled(t, c);
        }
    }
    acc
}

impl<F: Field> HModule<F> {
    pub fn presentation(&self) -> Presentation<F> {
        Presentation::of(self)
    }

    /// Basis of `Hom(self, other)` as `other.dim × self.dim` matrices.
    pub fn hom_space(&self, other: &Self) -> Vec<Matrix<F>> {
        if self.dim() == 0 || other.dim() == 0 {
            return Vec::new();
        }
        self.presentation().hom_to(other)
    }

    pub fn end_ring(&self) -> Vec<Matrix<F>> {
        self.hom_space(self)
    }

    /// Whether `t` intertwines the actions of `self` and `other`.
    pub fn is_hom_to(&self, other: &Self, t: &Matrix<F>) -> bool {
        t.rows() == other.dim()
            && t.cols() == self.dim()
            && (0..self.rank()).all(|s| t.mul(self.action(s)) == other.action(s).mul(t))
    }

    pub fn is_isomorphic(&self, other: &Self, seed: u64) -> IsoOutcome<F> {
        if self.rank() != other.rank() {
            return IsoOutcome::NotIsomorphic("different groups".into());
        }
        if self.dim() != other.dim() {
            return IsoOutcome::NotIsomorphic(format!("dimensions {} and {}", self.dim(), other.dim()));
        }
        if self.dim() == 0 {
            return IsoOutcome::Isomorphic(Matrix::zeros(self.field(), 0, 0));
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return IsoOutcome::NotIsomorphic("tops differ".into());
        }
        let (sa, sb) = (self.socle_multiplicities(), other.socle_multiplicities());
        if sa != sb {
            return IsoOutcome::NotIsomorphic("socles differ".into());
        }
        let homs = self.hom_space(other);
        if homs.is_empty() {
            return IsoOutcome::NotIsomorphic("no nonzero homomorphisms".into());
        }
        let n = self.dim();
        if let Some(c) = search_span(self.field(), &homs, seed, n, |t| t.is_invertible()) {
            return IsoOutcome::Isomorphic(combine(self.field(), &homs, &c));
        }
        let (ca, cb) = (self.composition_factors(), other.composition_factors());
        if ca != cb {
            return IsoOutcome::NotIsomorphic("composition factors differ".into());
        }
        let back = other.hom_space(self);
        if back.len() != homs.len() {
            return IsoOutcome::NotIsomorphic("hom dimensions are not symmetric".into());
        }
        if homs.len() <= 6 && (n + 1).checked_pow(homs.len() as u32).is_some_and(|p| p <= GRID_BUDGET) {
            // The grid search above was exhaustive for a determinant of degree ≤ n.
            if self.field().characteristic() == 0 || (n as u64) < self.field().characteristic() {
                return IsoOutcome::NotIsomorphic("no invertible element in the hom space".into());
            }
        }
        IsoOutcome::Undetermined(format!("hom space of dimension {} has no invertible element found", homs.len()))
    }
}

/// Surjective element of `Hom(P, M)`, if the search finds one. `top` holds the
/// functionals cutting out `rad M`; by Nakayama a map is onto exactly when it
/// stays onto after them, which keeps the rank tests small.
pub(crate) fn find_surjection<F: Field>(field: &F, maps: &[Matrix<F>], top: &Matrix<F>, seed: u64) -> Option<Matrix<F>> {
    let small: Vec<Matrix<F>> = maps.iter().map(|t| top.mul(t)).collect();
    let t = top.rows();
    let c = search_span(field, &small, seed, t, |x| x.rank() == t)?;
    Some(combine(field, maps, &c))
}

/// Injective element of `Hom(M, N)`, if the search finds one. `socle` has a
/// basis of `soc M` as columns; a map is injective exactly when it is on the
/// socle, since every nonzero submodule meets it.
pub(crate) fn find_injection<F: Field>(field: &F, maps: &[Matrix<F>], socle: &Matrix<F>, seed: u64) -> Option<Matrix<F>> {
    let small: Vec<Matrix<F>> = maps.iter().map(|t| t.mul(socle)).collect();
    let s = socle.cols();
    let c = search_span(field, &small, seed, s, |x| x.rank() == s)?;
    Some(combine(field, maps, &c))
}
