//! Finite-dimensional modules over the 0-Hecke algebra `H_W(0)`, given by one
//! matrix per generator acting on column vectors: column `j` of `action[s]` is
//! `π_s` applied to basis vector `j`.

mod decompose;
mod hom;
mod structure;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Map, Value};

pub use decompose::{Decomposition, Indecomposability};
pub use hom::{IsoOutcome, Presentation};
pub(crate) use hom::{find_injection, find_surjection};
pub use structure::{total, Multiplicities};

use crate::coxeter::{ElementId, GroupModel, GroupTable, Subset};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldSpec, Matrix, SparseVec, Subspace};
use crate::weak_order::{UpperIdeal, WeakInterval};

#[derive(Clone, Debug)]
pub struct HModule<F: Field> {
    group: Arc<GroupTable>,
    field: F,
    dim: usize,
    action: Vec<Matrix<F>>,
    labels: Vec<String>,
    basis: Option<Vec<ElementId>>,
}

impl<F: Field> HModule<F> {
    pub fn new(group: &Arc<GroupTable>, field: &F, action: Vec<Matrix<F>>, labels: Vec<String>) -> Result<Self> {
        if action.len() != group.rank() {
            return Err(Error::Dimension(format!("{} action matrices for rank {}", action.len(), group.rank())));
        }
        let dim = labels.len();
        for (s, a) in action.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::Dimension(format!(
                    "action of s{} is {}x{}, expected {dim}x{dim}",
                    s + 1,
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(HModule { group: group.clone(), field: field.clone(), dim, action, labels, basis: None })
    }

    /// Module on a set of group elements where `π_s` fixes `w` if `s ∈ D_L(w)`,
    /// sends `w` to `sw` if `sw` is in the set, and kills `w` otherwise.
    /// This is a genuine module when the set is an interval, or a difference
    /// `X ∖ Z` of an interval by an upper ideal, or an upper ideal itself.
    pub fn from_elements(group: &Arc<GroupTable>, field: &F, elements: &[ElementId]) -> Self {
        let g = group.as_ref();
        let pos: std::collections::HashMap<ElementId, usize> = elements.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let n = elements.len();
        let action = (0..g.rank())
            .map(|s| {
                let mut a = Matrix::zeros(field, n, n);
                for (j, &w) in elements.iter().enumerate() {
                    if g.left_descents(w).contains(s) {
                        a.set(j, j, field.one());
                    } else if let Some(&k) = pos.get(&g.left_mul(s, w)) {
                        a.set(k, j, field.one());
                    }
                }
                a
            })
            .collect();
        HModule {
            group: group.clone(),
            field: field.clone(),
            dim: n,
            action,
            labels: elements.iter().map(|&w| g.label(w)).collect(),
            basis: Some(elements.to_vec()),
        }
    }

    /// The weak Bruhat interval module `B(u, v)`.
    pub fn interval(group: &Arc<GroupTable>, field: &F, u: ElementId, v: ElementId) -> Result<Self> {
        let iv = WeakInterval::new(group, u, v)?;
        Ok(Self::from_elements(group, field, iv.members()))
    }

    pub fn interval_of(iv: &WeakInterval, field: &F) -> Self {
        Self::from_elements(iv.group(), field, iv.members())
    }

    /// `P_I^J` on the basis `D_I^J` (ordered by length, then id), with
    /// `π_s w = s w` exactly when `s ∉ D_L(w)` and `D_R(s w) ⊆ J`.
    pub fn projective(group: &Arc<GroupTable>, field: &F, i: Subset, j: Subset) -> Result<Self> {
        let g = group.as_ref();
        let mut basis = g.descent_union(i, j)?;
        basis.sort_by_key(|&w| (g.length(w), w));
        let pos: std::collections::HashMap<ElementId, usize> = basis.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let n = basis.len();
        let action = (0..g.rank())
            .map(|s| {
                let mut a = Matrix::zeros(field, n, n);
                for (k, &w) in basis.iter().enumerate() {
                    if g.left_descents(w).contains(s) {
                        a.set(k, k, field.one());
                    } else {
                        let x = g.left_mul(s, w);
                        if g.right_descents(x).is_subset_of(&j) {
                            a.set(pos[&x], k, field.one());
                        }
                    }
                }
                a
            })
            .collect();
        Ok(HModule {
            group: group.clone(),
            field: field.clone(),
            dim: n,
            action,
            labels: basis.iter().map(|&w| g.label(w)).collect(),
            basis: Some(basis),
        })
    }

    /// The projective indecomposable `P_I = P_I^I`.
    pub fn projective_indecomposable(group: &Arc<GroupTable>, field: &F, i: Subset) -> Self {
        Self::projective(group, field, i, i).expect("I ⊆ I")
    }

    /// The one-dimensional module with `π_s = 1` for `s ∈ I` and `0` otherwise.
    pub fn simple(group: &Arc<GroupTable>, field: &F, i: Subset) -> Self {
        let action = (0..group.rank())
            .map(|s| {
                let mut a = Matrix::zeros(field, 1, 1);
                if i.contains(s) {
                    a.set(0, 0, field.one());
                }
                a
            })
            .collect();
        HModule { group: group.clone(), field: field.clone(), dim: 1, action, labels: vec![format!("S{i}")], basis: None }
    }

    /// `K Y ⊆ B(u, v)` for an upper ideal `Y`.
    pub fn ideal_submodule(iv: &WeakInterval, field: &F, y: &UpperIdeal) -> Result<Self> {
        check_ideal(iv, y)?;
        Ok(Self::from_elements(iv.group(), field, &y.members(iv)))
    }

    /// `B(u, v) / K Y`, on the complement of `Y`.
    pub fn ideal_quotient(iv: &WeakInterval, field: &F, y: &UpperIdeal) -> Result<Self> {
        check_ideal(iv, y)?;
        Ok(Self::from_elements(iv.group(), field, &y.complement(iv)))
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, s: usize) -> &Matrix<F> {
        &self.action[s]
    }
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    /// Group elements indexing the basis, for modules built on element sets.
    pub fn basis_elements(&self) -> Option<&[ElementId]> {
        self.basis.as_deref()
    }
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// Replaces the action and drops element labels.
    pub(crate) fn with_action(&self, action: Vec<Matrix<F>>) -> Self {
        HModule {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            action,
            labels: self.labels.clone(),
            basis: None,
        }
    }

    /// Nonzero entries of every column of every action matrix.
    pub fn sparse_columns(&self) -> Vec<Vec<SparseVec<F::Elem>>> {
        self.action.iter().map(|a| (0..self.dim).map(|c| a.col_sparse(c)).collect()).collect()
    }

    pub fn apply(&self, s: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.action[s].mul_vec(v)
    }

    /// Checks `π_s² = π_s` and the braid relations, reporting the first failure.
    pub fn check_relations(&self) -> std::result::Result<(), String> {
        let f = &self.field;
        let cols = self.sparse_columns();
        let apply = |s: usize, v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> { apply_sparse(f, &cols[s], v) };
        for s in 0..self.rank() {
            for j in 0..self.dim {
                let once = cols[s][j].clone();
                if apply(s, &once) != once {
                    return Err(format!("quadratic relation fails for s{} on basis vector {}", s + 1, self.labels[j]));
                }
            }
        }
        for s in 0..self.rank() {
            for t in s + 1..self.rank() {
                let m = self.group.m(s, t);
                for j in 0..self.dim {
                    let start: SparseVec<F::Elem> = vec![(j, f.one())];
                    let mut a = start.clone();
                    let mut b = start;
                    for k in 0..m {
                        // Rightmost factor acts first; both words have length m.
                        let (x, y) = if (m - 1 - k) % 2 == 0 { (s, t) } else { (t, s) };
                        a = apply(x, &a);
                        b = apply(y, &b);
                    }
                    if a != b {
                        return Err(format!(
                            "braid relation of length {m} fails for (s{}, s{}) on basis vector {}",
                            s + 1,
                            t + 1,
                            self.labels[j]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn verify_relations(&self) -> bool {
        self.check_relations().is_ok()
    }

    pub fn is_invariant(&self, sub: &Subspace<F>) -> bool {
        sub.is_invariant(&self.action)
    }

    /// The submodule spanned by `sub`, in its echelon basis.
    pub fn submodule(&self, sub: &Subspace<F>) -> Result<Self> {
        if sub.ambient() != self.dim {
            return Err(Error::Dimension("subspace lives in a different ambient space".into()));
        }
        let k = sub.dim();
        let mut action = Vec::with_capacity(self.rank());
        for a in &self.action {
            let mut m = Matrix::zeros(&self.field, k, k);
            for (j, b) in sub.basis().iter().enumerate() {
                let img = a.mul_vec(b);
                let c = sub.coords(&img).ok_or(Error::NotInvariant)?;
                for (i, x) in c.into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            action.push(m);
        }
        let labels = sub.basis().iter().map(|b| self.vector_label(b)).collect();
        HModule::new(&self.group, &self.field, action, labels)
    }

    /// `M / N`, on the standard basis vectors at the non-pivot positions of `N`.
    pub fn quotient(&self, sub: &Subspace<F>) -> Result<Self> {
        if sub.ambient() != self.dim {
            return Err(Error::Dimension("subspace lives in a different ambient space".into()));
        }
        if !self.is_invariant(sub) {
            return Err(Error::NotInvariant);
        }
        let keep = sub.non_pivots();
        let k = keep.len();
        let f = &self.field;
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(f, k, k);
                for (j, &c) in keep.iter().enumerate() {
                    let red = sub.reduce(&a.col(c));
                    for (i, &r) in keep.iter().enumerate() {
                        m.set(i, j, red[r].clone());
                    }
                }
                m
            })
            .collect();
        let labels = keep.iter().map(|&c| self.labels[c].clone()).collect();
        let mut q = HModule::new(&self.group, &self.field, action, labels)?;
        if let Some(b) = &self.basis {
            if sub.basis().iter().all(|row| row.iter().filter(|x| !f.is_zero(x)).count() == 1) {
                q.basis = Some(keep.iter().map(|&c| b[c]).collect());
            }
        }
        Ok(q)
    }

    fn vector_label(&self, v: &[F::Elem]) -> String {
        let f = &self.field;
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(i, x)| {
                if f.is_one(x) {
                    self.labels[i].clone()
                } else {
                    format!("({})*{}", f.to_text(x), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::direct_sum_all(&[self.clone(), other.clone()]).expect("same group")
    }

    pub fn direct_sum_all(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Argument("empty direct sum".into()))?;
        let n: usize = parts.iter().map(|m| m.dim).sum();
        let f = &first.field;
        let mut action: Vec<Matrix<F>> = (0..first.rank()).map(|_| Matrix::zeros(f, n, n)).collect();
        let mut labels = Vec::with_capacity(n);
        let mut off = 0;
        for (k, m) in parts.iter().enumerate() {
            if !Arc::ptr_eq(&m.group, &first.group) && m.group.model() != first.group.model() {
                return Err(Error::Argument("direct sum of modules over different groups".into()));
            }
            for (s, a) in m.action.iter().enumerate() {
                for r in 0..m.dim {
                    for c in 0..m.dim {
                        let x = a.get(r, c);
                        if !f.is_zero(x) {
                            action[s].set(off + r, off + c, x.clone());
                        }
                    }
                }
            }
            labels.extend(m.labels.iter().map(|l| if parts.len() > 1 { format!("{k}:{l}") } else { l.clone() }));
            off += m.dim;
        }
        HModule::new(&first.group, f, action, labels)
    }

    /// `{group, field, dim, labels, action: {"s1": [[entry, …], …]}}`, rows first.
    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let mut action = Map::new();
        for (s, a) in self.action.iter().enumerate() {
            let rows: Vec<Value> = (0..self.dim)
                .map(|r| Value::Array(a.row(r).iter().map(|x| Value::String(f.to_text(x))).collect()))
                .collect();
            action.insert(format!("s{}", s + 1), Value::Array(rows));
        }
        json!({
            "group": self.group.model().to_string(),
            "field": f.spec().to_string(),
            "dim": self.dim,
            "labels": self.labels,
            "action": action,
        })
    }

    pub fn from_json(v: &Value, group: &Arc<GroupTable>, field: &F) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("module JSON: {msg}"));
        let (model, _) = json_header(v)?;
        if model != group.model() {
            return Err(bad("group does not match"));
        }
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let labels: Vec<String> = match v.get("labels").and_then(Value::as_array) {
            Some(ls) => ls.iter().map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings"))).collect::<Result<_>>()?,
            None => (0..dim).map(|i| format!("b{i}")).collect(),
        };
        if labels.len() != dim {
            return Err(bad("label count differs from dim"));
        }
        let act = v.get("action").and_then(Value::as_object).ok_or_else(|| bad("missing action"))?;
        let mut action = Vec::with_capacity(group.rank());
        for s in 0..group.rank() {
            let rows = act
                .get(&format!("s{}", s + 1))
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing action of s{}", s + 1)))?;
            if rows.len() != dim {
                return Err(bad("wrong number of rows"));
            }
            let mut data = Vec::with_capacity(dim * dim);
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("rows must be arrays"))?;
                if row.len() != dim {
                    return Err(bad("wrong number of columns"));
                }
                for x in row {
                    let text = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(bad("entries must be strings or integers")),
                    };
                    data.push(field.parse_elem(&text)?);
                }
            }
            action.push(Matrix::from_rows(field, dim, dim, data)?);
        }
        HModule::new(group, field, action, labels)
    }

    /// Action digraph: an edge `w → π_s(w)` per generator, loops included,
    /// with images that vanish drawn into a shared `0` node.
    pub fn to_dot(&self) -> String {
        let f = &self.field;
        let mut out = String::new();
        writeln!(out, "digraph module {{").unwrap();
        writeln!(out, "  rankdir=TB;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for l in &self.labels {
            writeln!(out, "  \"{l}\";").unwrap();
        }
        let mut zero_used = false;
        let mut edges = Vec::new();
        for j in 0..self.dim {
            for (s, a) in self.action.iter().enumerate() {
                let col = a.col_sparse(j);
                if col.is_empty() {
                    zero_used = true;
                    edges.push(format!("  \"{}\" -> \"0\" [label=\"pi_{}\"];", self.labels[j], s + 1));
                }
                for (i, x) in col {
                    let label = if f.is_one(&x) { format!("pi_{}", s + 1) } else { format!("{} pi_{}", f.to_text(&x), s + 1) };
                    edges.push(format!("  \"{}\" -> \"{}\" [label=\"{label}\"];", self.labels[j], self.labels[i]));
                }
            }
        }
        if zero_used {
            writeln!(out, "  \"0\" [shape=circle];").unwrap();
        }
        for e in edges {
            writeln!(out, "{e}").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

/// Group model and field named in a module JSON document.
pub fn json_header(v: &Value) -> Result<(GroupModel, FieldSpec)> {
    let group = v
        .get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("module JSON: missing group".into()))?
        .parse()?;
    let field = match v.get("field").and_then(Value::as_str) {
        Some(s) => s.parse()?,
        None => FieldSpec::Rational,
    };
    Ok((group, field))
}

fn check_ideal(iv: &WeakInterval, y: &UpperIdeal) -> Result<()> {
    if y.bounds() != (iv.lo(), iv.hi()) || y.mask().len() != iv.len() {
        return Err(Error::Argument("ideal belongs to a different interval".into()));
    }
    if !iv.is_upper_ideal(&y.members(iv))? {
        return Err(Error::NotUpperIdeal);
    }
    Ok(())
}

/// `A v` for `A` given by sparse columns.
pub(crate) fn apply_sparse<F: Field>(f: &F, cols: &[SparseVec<F::Elem>], v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out: SparseVec<F::Elem> = Vec::new();
    for (c, x) in v {
        for (r, y) in &cols[*c] {
            out.push((*r, f.mul(x, y)));
        }
    }
    crate::linalg::normalize(f, out)
}

/// Sets of group elements are compared as sets; used by checks that an
/// element-labelled module has exactly a prescribed basis.
pub fn same_element_set(a: &[ElementId], b: &[ElementId]) -> bool {
    a.len() == b.len() && a.iter().collect::<HashSet<_>>() == b.iter().collect::<HashSet<_>>()
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
    fn three_element_interval_action() {
        let g = a3();
        let e = |s: &str| g.parse_element(s).unwrap();
        let m = HModule::interval(&g, &Rationals, e("1324"), e("1432")).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(m.verify_relations());
        // Basis order 1324, 1423, 1432.
        let a3 = m.action(2);
        assert!(a3.get(1, 0).is_one());
        let a1 = m.action(0);
        assert!(a1.col_sparse(2).is_empty());
        assert!(m.action(1).get(0, 0).is_one());
        assert!(m.action(1).get(2, 1).is_one());
    }

    #[test]
    fn corrupted_action_fails() {
        let g = a3();
        let m = HModule::interval(&g, &Rationals, 0, g.w0()).unwrap();
        let mut action = m.actions().to_vec();
        action[0].set(0, 0, crate::linalg::Rational::from_int(2));
        let bad = m.with_action(action);
        assert!(bad.check_relations().unwrap_err().contains("quadratic"));
    }

    #[test]
    fn projective_dims_and_json_round_trip() {
        let g = a3();
        let f = PrimeField::new(101).unwrap();
        let p = HModule::projective(&g, &f, Subset::from_one_based(&[1]), Subset::from_one_based(&[1, 3])).unwrap();
        assert_eq!(p.dim(), 8);
        assert!(p.verify_relations());
        let back = HModule::from_json(&p.to_json(), &g, &f).unwrap();
        assert_eq!(back.actions(), p.actions());
        assert_eq!(HModule::projective(&g, &f, Subset::EMPTY, Subset::EMPTY).unwrap().dim(), 1);
    }

    #[test]
    fn quotient_by_ideal_matches_interval_quotient() {
        let g = a3();
        let e = |s: &str| g.parse_element(s).unwrap();
        let iv = WeakInterval::new(&g, e("2134"), e("4231")).unwrap();
        let y = iv.complement_ideal(e("4132")).unwrap();
        let q = HModule::ideal_quotient(&iv, &Rationals, &y).unwrap();
        let direct = HModule::interval(&g, &Rationals, e("2134"), e("4132")).unwrap();
        assert_eq!(q.actions(), direct.actions());
        let m = HModule::interval_of(&iv, &Rationals);
        let pos: Vec<usize> = y.members(&iv).iter().map(|&w| iv.position(w).unwrap()).collect();
        let sub = Subspace::span(
            &Rationals,
            m.dim(),
            pos.iter()
                .map(|&p| {
                    let mut v = vec![crate::linalg::Rational::ZERO; m.dim()];
                    v[p] = crate::linalg::Rational::ONE;
                    v
                })
                .collect(),
        );
        let q2 = m.quotient(&sub).unwrap();
        assert_eq!(q2.actions(), direct.actions());
        assert_eq!(m.submodule(&sub).unwrap().dim(), y.len());
    }
}
