//! The involutions φ, θ, χ and the composites θ̂ = θ∘χ, ω̂ = φ∘θ∘χ, realized
//! on action matrices. Duals are taken in the dual basis, so the χ-based
//! twists transpose; basis vector `j` of the result is the functional `b_j*`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coxeter::{ElementId, GroupTable, Subset};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::module::{HModule, IsoOutcome};
use crate::weak_order::{UpperIdeal, WeakInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistTag {
    Phi,
    Theta,
    Chi,
    ThetaHat,
    OmegaHat,
}

impl TwistTag {
    pub const ALL: [TwistTag; 5] = [TwistTag::Phi, TwistTag::Theta, TwistTag::Chi, TwistTag::ThetaHat, TwistTag::OmegaHat];
    /// The tags with a closed-form prediction on interval quotients.
    pub const PREDICTED: [TwistTag; 3] = [TwistTag::Phi, TwistTag::ThetaHat, TwistTag::OmegaHat];

    pub fn name(&self) -> &'static str {
        match self {
            TwistTag::Phi => "phi",
            TwistTag::Theta => "theta",
            TwistTag::Chi => "chi",
            TwistTag::ThetaHat => "theta_hat",
            TwistTag::OmegaHat => "omega_hat",
        }
    }

    fn dualizes(&self) -> bool {
        matches!(self, TwistTag::Chi | TwistTag::ThetaHat | TwistTag::OmegaHat)
    }

    /// Index of the simple module `tag[S_I]`.
    pub fn simple_image(&self, g: &GroupTable, i: Subset) -> Subset {
        let r = g.rank();
        match self {
            TwistTag::Phi => g.conj_w0_set(i),
            TwistTag::Theta | TwistTag::ThetaHat => i.complement(r),
            TwistTag::Chi => i,
            TwistTag::OmegaHat => g.conj_w0_set(i).complement(r),
        }
    }
}

impl fmt::Display for TwistTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TwistTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TwistTag::ALL
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| Error::Argument(format!("unknown twist {s:?}; expected phi, theta, chi, theta_hat or omega_hat")))
    }
}

pub fn apply_twist<F: Field>(tag: TwistTag, m: &HModule<F>) -> HModule<F> {
    let g = m.group();
    let f = m.field();
    let id = Matrix::identity(f, m.dim());
    let action: Vec<Matrix<F>> = (0..m.rank())
        .map(|s| match tag {
            TwistTag::Phi => m.action(g.conj_w0_gen(s)).clone(),
            TwistTag::Theta => id.sub(m.action(s)),
            TwistTag::Chi => m.action(s).transpose(),
            TwistTag::ThetaHat => id.sub(m.action(s)).transpose(),
            TwistTag::OmegaHat => id.sub(m.action(g.conj_w0_gen(s))).transpose(),
        })
        .collect();
    let labels = if tag.dualizes() { m.labels().iter().map(|l| format!("{l}*")).collect() } else { m.labels().to_vec() };
    HModule::new(g, f, action, labels).expect("shapes are preserved")
}

/// The interval and removed set of the closed-form prediction for
/// `tag[B(u,v) / K Y]`. For φ the removed set is an upper ideal (a quotient);
/// for θ̂ and ω̂ it is a lower set, so what remains is a submodule.
fn predicted_parts(tag: TwistTag, iv: &WeakInterval, y: &UpperIdeal) -> Result<(WeakInterval, Vec<ElementId>)> {
    let g = iv.group();
    let (u, v) = (iv.lo(), iv.hi());
    let w0 = g.w0();
    let ys = y.members(iv);
    let (x, removed) = match tag {
        TwistTag::Phi => (WeakInterval::new(g, g.conj_w0(u), g.conj_w0(v))?, ys.iter().map(|&w| g.conj_w0(w)).collect()),
        TwistTag::ThetaHat => {
            (WeakInterval::new(g, g.multiply(v, w0), g.multiply(u, w0))?, ys.iter().map(|&w| g.multiply(w, w0)).collect())
        }
        TwistTag::OmegaHat => {
            (WeakInterval::new(g, g.multiply(w0, v), g.multiply(w0, u))?, ys.iter().map(|&w| g.multiply(w0, w)).collect())
        }
        _ => return Err(Error::Argument(format!("no interval prediction for {tag}"))),
    };
    Ok((x, removed))
}

/// The predicted module: φ ↦ `K([u^{w0}, v^{w0}] ∖ w0Yw0)`,
/// θ̂ ↦ `K([v w0, u w0] ∖ Y w0)`, ω̂ ↦ `K([w0 v, w0 u] ∖ w0 Y)`.
pub fn predicted_twist_of_quotient<F: Field>(tag: TwistTag, iv: &WeakInterval, y: &UpperIdeal, field: &F) -> Result<HModule<F>> {
    if !iv.is_upper_ideal(&y.members(iv))? {
        return Err(Error::NotUpperIdeal);
    }
    let (x, removed) = predicted_parts(tag, iv, y)?;
    let kept: Vec<ElementId> = x.members().iter().copied().filter(|w| !removed.contains(w)).collect();
    let ok = match tag {
        TwistTag::Phi => x.is_upper_ideal(&removed)?,
        _ => x.is_upper_ideal(&kept)?,
    };
    if !ok {
        return Err(Error::NotUpperIdeal);
    }
    Ok(HModule::from_elements(x.group(), field, &kept))
}

/// The explicit bijection on bases from the theorem, as a matrix from
/// `tag[B(u,v)/KY]` (basis: complement of `Y` in interval order) to the
/// predicted module: φ: `w ↦ w0 w w0`; θ̂: `w* ↦ (−1)^{ℓ(w)} w w0`;
/// ω̂: `w* ↦ (−1)^{ℓ(w w0 u⁻¹)} w0 w`.
pub fn explicit_witness<F: Field>(tag: TwistTag, iv: &WeakInterval, y: &UpperIdeal, predicted: &HModule<F>) -> Result<Matrix<F>> {
    let g = iv.group();
    let f = predicted.field();
    let w0 = g.w0();
    let source = y.complement(iv);
    let target = predicted.basis_elements().ok_or_else(|| Error::Argument("prediction lacks element labels".into()))?;
    let mut t = Matrix::zeros(f, target.len(), source.len());
    for (j, &w) in source.iter().enumerate() {
        let (img, sign) = match tag {
            TwistTag::Phi => (g.conj_w0(w), 0),
            TwistTag::ThetaHat => (g.multiply(w, w0), g.length(w)),
            TwistTag::OmegaHat => (g.multiply(w0, w), g.length(g.multiply(g.multiply(w, w0), g.inverse(iv.lo())))),
            _ => return Err(Error::Argument(format!("no explicit witness for {tag}"))),
        };
        let i = target
            .iter()
            .position(|&x| x == img)
            .ok_or_else(|| Error::Argument(format!("{} has no image in the prediction", g.label(w))))?;
        t.set(i, j, f.from_i64(if sign % 2 == 0 { 1 } else { -1 }));
    }
    Ok(t)
}

/// Result of checking one instance of the twist theorem.
#[derive(Clone, Debug)]
pub struct TwistCheck<F: Field> {
    pub outcome: IsoOutcome<F>,
    /// Whether the explicit bijection is an intertwiner.
    pub witness_ok: bool,
}

impl<F: Field> TwistCheck<F> {
    pub fn passed(&self) -> bool {
        self.outcome.is_isomorphic() && self.witness_ok
    }
}

pub fn verify_twist_theorem<F: Field>(tag: TwistTag, iv: &WeakInterval, y: &UpperIdeal, field: &F, seed: u64) -> Result<TwistCheck<F>> {
    let quotient = HModule::ideal_quotient(iv, field, y)?;
    let twisted = apply_twist(tag, &quotient);
    let predicted = predicted_twist_of_quotient(tag, iv, y, field)?;
    let outcome = twisted.is_isomorphic(&predicted, seed);
    let witness = explicit_witness(tag, iv, y, &predicted)?;
    let witness_ok = twisted.is_hom_to(&predicted, &witness) && witness.is_invertible();
    Ok(TwistCheck { outcome, witness_ok })
}

/// Closed-form index of `tag[P_I^J]` as `(I', J')`.
pub fn twisted_projective_index(g: &GroupTable, tag: TwistTag, i: Subset, j: Subset) -> Option<(Subset, Subset)> {
    let r = g.rank();
    match tag {
        TwistTag::Phi => Some((g.conj_w0_set(i), g.conj_w0_set(j))),
        TwistTag::ThetaHat => Some((g.conj_w0_set(j).complement(r), g.conj_w0_set(i).complement(r))),
        TwistTag::OmegaHat => Some((j.complement(r), i.complement(r))),
        _ => None,
    }
}

/// One arrow of the square relating `P_I` to its three twists.
#[derive(Clone, Debug)]
pub struct SquareEdge {
    pub tag: TwistTag,
    pub from: Subset,
    pub to: Subset,
    pub verified: bool,
}

/// The twists of `P_I` under φ, θ̂ and ω̂, each checked by isomorphism.
pub fn twist_square<F: Field>(g: &Arc<GroupTable>, field: &F, i: Subset, seed: u64) -> Vec<SquareEdge> {
    let p = HModule::projective_indecomposable(g, field, i);
    TwistTag::PREDICTED
        .iter()
        .map(|&tag| {
            let (to, _) = twisted_projective_index(g, tag, i, i).expect("predicted tag");
            let target = HModule::projective_indecomposable(g, field, to);
            let verified = apply_twist(tag, &p).is_isomorphic(&target, seed).is_isomorphic();
            SquareEdge { tag, from: i, to, verified }
        })
        .collect()
}

pub fn twist_square_dot(edges: &[SquareEdge]) -> String {
    let mut out = String::from("digraph twists {\n  node [shape=box];\n");
    for e in edges {
        out.push_str(&format!(
            "  \"P{}\" -> \"P{}\" [label=\"{}\"{}];\n",
            e.from,
            e.to,
            e.tag,
            if e.verified { "" } else { ", color=red" }
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::GroupModel;
    use crate::linalg::Rationals;

    #[test]
    fn twists_preserve_relations_and_square() {
        let g = Arc::new(GroupTable::build(GroupModel::A(3)).unwrap());
        let m = HModule::interval(&g, &Rationals, g.parse_element("2134").unwrap(), g.parse_element("4132").unwrap()).unwrap();
        for tag in TwistTag::ALL {
            let t = apply_twist(tag, &m);
            assert!(t.verify_relations(), "{tag}");
            assert!(apply_twist(tag, &t).is_isomorphic(&m, 0).is_isomorphic(), "{tag} is an involution");
        }
        let edges = twist_square(&g, &Rationals, Subset::from_one_based(&[1]), 0);
        assert!(edges.iter().all(|e| e.verified));
        assert_eq!(edges[0].to, Subset::from_one_based(&[3]));
    }

    #[test]
    fn theorem_on_random_ideal() {
        let g = Arc::new(GroupTable::build(GroupModel::A(3)).unwrap());
        let iv = WeakInterval::new(&g, g.parse_element("2134").unwrap(), g.parse_element("4231").unwrap()).unwrap();
        for seed in 0..5 {
            let y = iv.random_upper_ideal(seed);
            for tag in TwistTag::PREDICTED {
                let c = verify_twist_theorem(tag, &iv, &y, &Rationals, seed).unwrap();
                assert!(c.passed(), "{tag} seed {seed}: {}", c.outcome.describe());
            }
        }
    }
}
