//! Twisted group data `(φ, c, τ)`, on-site (anti)unitary representations,
//! covariance checks and group averaging of hopping models.

use crate::error::{arg, Error, Result};
use crate::linalg::{
    add, adjoint, conj, conjugate_by, cx, identity, kron, max_abs, max_abs_diff, mul, pauli, scale, trace,
    unitarity_defect, CMat, ONE,
};
use crate::models::HoppingModel;
use crate::patterns::PointGroupElement;
use faer::c64;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

pub const TOL: f64 = 1e-12;

/// `U K^φ` with a grading parity `c`.
#[derive(Clone, Debug)]
pub struct OnSiteOp {
    pub matrix: CMat,
    pub antilinear: bool,
    pub odd: bool,
}

impl OnSiteOp {
    pub fn unitary(matrix: CMat) -> Self {
        OnSiteOp { matrix, antilinear: false, odd: false }
    }

    pub fn antiunitary(matrix: CMat) -> Self {
        OnSiteOp { matrix, antilinear: true, odd: false }
    }

    pub fn identity(n: usize) -> Self {
        Self::unitary(identity(n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `(U_a K^{φa}) (U_b K^{φb}) = U_a Ū_b^{φa} K^{φa+φb}`.
    pub fn compose(&self, other: &OnSiteOp) -> OnSiteOp {
        let b = if self.antilinear { conj(&other.matrix) } else { other.matrix.clone() };
        OnSiteOp {
            matrix: mul(&self.matrix, &b),
            antilinear: self.antilinear ^ other.antilinear,
            odd: self.odd ^ other.odd,
        }
    }

    /// Adjoint action on an operator: `U m̃ U†`, with `m̃` conjugated when antilinear.
    pub fn conjugate(&self, m: &CMat) -> CMat {
        let mm = if self.antilinear { conj(m) } else { m.clone() };
        conjugate_by(&self.matrix, &mm)
    }

    /// `|λ|` and the phase `λ` if `self = λ · other` with the same flags.
    fn phase_relative_to(&self, other: &OnSiteOp) -> Option<c64> {
        if self.antilinear != other.antilinear || self.odd != other.odd {
            return None;
        }
        let n = self.dim() as f64;
        let lam = trace(&mul(&adjoint(&other.matrix), &self.matrix)) * cx(1.0 / n, 0.0);
        if (lam.norm() - 1.0).abs() > 1e-9 {
            return None;
        }
        let d = max_abs_diff(&self.matrix, &scale(&other.matrix, lam));
        (d < 1e-9).then_some(lam)
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryAction {
    pub name: String,
    pub spatial: PointGroupElement,
    pub op: OnSiteOp,
}

impl SymmetryAction {
    pub fn new(name: impl Into<String>, spatial: PointGroupElement, op: OnSiteOp) -> Result<Self> {
        if unitarity_defect(&op.matrix) > TOL {
            return arg("on-site operator is not unitary");
        }
        Ok(SymmetryAction { name: name.into(), spatial, op })
    }

    pub fn compose(&self, other: &SymmetryAction) -> SymmetryAction {
        SymmetryAction {
            name: format!("{}*{}", self.name, other.name),
            spatial: self.spatial.compose(&other.spatial),
            op: self.op.compose(&other.op),
        }
    }

    /// `(g·w)(Rδ) = (−1)^c U w̃(δ) U†`.
    pub fn act(&self, m: &HoppingModel) -> HoppingModel {
        let mut out = HoppingModel::new(m.name.clone(), m.dimension, m.internal_dim);
        let sign = if self.op.odd { -1.0 } else { 1.0 };
        for (d, w) in &m.hoppings {
            out.add(&self.spatial.apply(d), &scale(&self.op.conjugate(w), cx(sign, 0.0)));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CovarianceReport {
    pub action: String,
    pub per_delta: Vec<(Vec<i64>, f64)>,
    pub max_deviation: f64,
    pub pass: bool,
}

pub fn check_covariance(m: &HoppingModel, a: &SymmetryAction) -> Result<CovarianceReport> {
    if m.internal_dim != a.op.dim() {
        return arg(format!("model has internal dimension {}, action acts on {}", m.internal_dim, a.op.dim()));
    }
    if m.dimension != a.spatial.dimension() {
        return arg("model and spatial action dimensions differ");
    }
    let image = a.act(m);
    let keys: BTreeSet<Vec<i64>> = m.hoppings.keys().chain(image.hoppings.keys()).cloned().collect();
    let mut per_delta = Vec::new();
    let mut worst = 0.0f64;
    for d in keys {
        let dev = max_abs_diff(&image.hopping(&d), &m.hopping(&d));
        worst = worst.max(dev);
        per_delta.push((d, dev));
    }
    Ok(CovarianceReport { action: a.name.clone(), per_delta, max_deviation: worst, pass: worst <= TOL })
}

/// Closes the generated group; elements differing only by an overall phase are identified.
pub fn close_group(gens: &[SymmetryAction], cap: usize) -> Result<Vec<SymmetryAction>> {
    let first = gens.first().ok_or_else(|| Error::Argument("no symmetry actions given".into()))?;
    let d = first.spatial.dimension();
    let n = first.op.dim();
    let e = SymmetryAction { name: "e".into(), spatial: PointGroupElement::identity(d), op: OnSiteOp::identity(n) };
    let mut elems = vec![e];
    let mut frontier = 0;
    while frontier < elems.len() {
        let g = elems[frontier].clone();
        frontier += 1;
        for h in gens {
            let p = h.compose(&g);
            let seen = elems.iter().any(|x| x.spatial == p.spatial && p.op.phase_relative_to(&x.op).is_some());
            if !seen {
                if elems.len() >= cap {
                    return arg(format!("group generated by the actions exceeds {cap} elements"));
                }
                elems.push(p);
            }
        }
    }
    Ok(elems)
}

/// Group average of the model over the group generated by `actions`.
pub fn symmetrize(m: &HoppingModel, actions: &[SymmetryAction]) -> Result<HoppingModel> {
    for a in actions {
        if a.op.dim() != m.internal_dim || a.spatial.dimension() != m.dimension {
            return arg(format!("action '{}' does not match the model's dimensions", a.name));
        }
    }
    let group = close_group(actions, 1024)?;
    let mut out = HoppingModel::new(m.name.clone(), m.dimension, m.internal_dim);
    let s = cx(1.0 / group.len() as f64, 0.0);
    for g in &group {
        for (d, w) in g.act(m).hoppings {
            out.add(&d, &scale(&w, s));
        }
    }
    Ok(out.pruned(0.0))
}

/// Finite group with multiplication table and twist data; element 0 is the identity.
#[derive(Clone, Debug, Serialize)]
pub struct TwistedGroup {
    pub elements: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    pub phi: Vec<u8>,
    pub c: Vec<u8>,
    #[serde(serialize_with = "ser_table")]
    pub tau: Vec<Vec<c64>>,
}

fn ser_table<S: serde::Serializer>(t: &[Vec<c64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<[f64; 2]>> = t.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
    v.serialize(s)
}

impl TwistedGroup {
    pub fn trivial() -> Self {
        TwistedGroup { elements: vec!["e".into()], mult: vec![vec![0]], phi: vec![0], c: vec![0], tau: vec![vec![ONE]] }
    }

    /// `Z_n = ⟨g⟩` with `φ(g^a) = a·φ_g`, `c(g^a) = a·c_g` (mod 2) and
    /// `τ(g^a, g^b) = ω` when `a + b ≥ n`, else 1. Here `ω` is the scalar with
    /// `(U K^φ)^n = ω`.
    pub fn cyclic(name: &str, n: usize, phi_g: u8, c_g: u8, omega: c64) -> Result<Self> {
        if n == 0 || (n % 2 == 1 && (phi_g == 1 || c_g == 1)) {
            return arg("odd-order cyclic groups cannot carry nontrivial φ or c");
        }
        let elements = (0..n).map(|a| if a == 0 { "e".into() } else if a == 1 { name.to_string() } else { format!("{name}^{a}") }).collect();
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let phi = (0..n).map(|a| (a as u8 * phi_g) % 2).collect();
        let c = (0..n).map(|a| (a as u8 * c_g) % 2).collect();
        let tau = (0..n).map(|a| (0..n).map(|b| if a + b >= n { omega } else { ONE }).collect()).collect();
        Ok(TwistedGroup { elements, mult, phi, c, tau })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Clone, Debug)]
pub struct OnSiteRep {
    pub group: TwistedGroup,
    pub dimension: usize,
    pub operators: Vec<CMat>,
    pub grading: CMat,
}

impl OnSiteRep {
    /// Representation of a cyclic group generated by `op`: `U(g^a)` is the
    /// `a`-fold composite of `op`.
    pub fn cyclic(name: &str, op: &OnSiteOp, n: usize, omega: c64, grading: CMat) -> Result<Self> {
        let group = TwistedGroup::cyclic(name, n, u8::from(op.antilinear), u8::from(op.odd), omega)?;
        let mut ops = vec![identity(op.dim())];
        let mut cur = OnSiteOp::identity(op.dim());
        for _ in 1..n {
            cur = op.compose(&cur);
            ops.push(cur.matrix.clone());
        }
        Ok(OnSiteRep { group, dimension: op.dim(), operators: ops, grading })
    }

    pub fn op(&self, g: usize) -> OnSiteOp {
        OnSiteOp { matrix: self.operators[g].clone(), antilinear: self.group.phi[g] == 1, odd: self.group.c[g] == 1 }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mat = |m: &CMat| -> Vec<Vec<[f64; 2]>> {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
        };
        serde_json::json!({
            "group": self.group,
            "dimension": self.dimension,
            "operators": self.operators.iter().map(mat).collect::<Vec<_>>(),
            "grading": mat(&self.grading),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
}

impl RelationReport {
    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max)
    }
}

pub fn verify_projective_relations(rep: &OnSiteRep) -> Result<RelationReport> {
    let g = &rep.group;
    let n = g.order();
    if rep.operators.len() != n || g.mult.len() != n || g.tau.len() != n || g.phi.len() != n || g.c.len() != n {
        return arg("operator table does not match the group order");
    }
    if rep.operators.iter().chain([&rep.grading]).any(|m| m.nrows() != rep.dimension || m.ncols() != rep.dimension) {
        return arg("operator dimension mismatch");
    }
    let mut checks = Vec::new();
    let mut push = |relation: String, dev: f64| {
        checks.push(RelationCheck { relation, max_deviation: dev, pass: dev <= TOL });
    };
    let bit = |v: bool| if v { 1.0 } else { 0.0 };
    let mut hom = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let ab = g.mult[a][b];
            hom = hom.max(bit(g.phi[ab] != (g.phi[a] ^ g.phi[b])));
            hom = hom.max(bit(g.c[ab] != (g.c[a] ^ g.c[b])));
        }
    }
    push("phi and c are homomorphisms".into(), hom);
    let mut norm = 0.0f64;
    for a in 0..n {
        norm = norm.max((g.tau[0][a] - ONE).norm()).max((g.tau[a][0] - ONE).norm());
    }
    push("tau normalized".into(), norm);
    let mut cocycle = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = g.tau[a][b] * g.tau[g.mult[a][b]][c];
                let t = if g.phi[a] == 1 { g.tau[b][c].conj() } else { g.tau[b][c] };
                let rhs = t * g.tau[a][g.mult[b][c]];
                cocycle = cocycle.max((lhs - rhs).norm());
            }
        }
    }
    push("tau twisted cocycle identity".into(), cocycle);
    for a in 0..n {
        push(format!("U({}) unitary", g.elements[a]), unitarity_defect(&rep.operators[a]));
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = rep.op(a).compose(&rep.op(b)).matrix;
            let rhs = scale(&rep.operators[g.mult[a][b]], g.tau[a][b]);
            push(format!("U({})U({}) = tau U({})", g.elements[a], g.elements[b], g.elements[g.mult[a][b]]), max_abs_diff(&lhs, &rhs));
        }
    }
    let mut grad = 0.0f64;
    for a in 0..n {
        let s = if g.c[a] == 1 { -ONE } else { ONE };
        let lhs = mul(&rep.grading, &rep.operators[a]);
        let rhs = scale(&mul(&rep.operators[a], &rep.grading), s);
        grad = grad.max(max_abs_diff(&lhs, &rhs));
    }
    push("grading relation".into(), grad);
    let pass = checks.iter().all(|c| c.pass);
    Ok(RelationReport { checks, pass })
}

fn c4_onsite() -> CMat {
    // σ2 · e^{iπσ3/4}
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut e = CMat::zeros(2, 2);
    e[(0, 0)] = cx(r, r);
    e[(1, 1)] = cx(r, -r);
    kron(&identity(2), &mul(&pauli(2), &e))
}

pub const BUILTIN_ACTIONS: [&str; 7] =
    ["inversion", "C2T", "C4T", "chiral", "mirror-diagonal", "time-reversal", "time-reversal-2"];

/// Named actions matching the built-in models: inversion, time reversal
/// `(σ2⊗1)K` for ham1; C2T and `(1⊗σ2)K` for ham2/ham3; C4T for ham3;
/// chirality and the diagonal mirror for the chiral quarter models.
pub fn builtin_action(name: &str) -> Result<SymmetryAction> {
    let p3 = |m: Vec<Vec<i64>>| PointGroupElement::new(m).expect("valid point group matrix");
    Ok(match name {
        "inversion" => SymmetryAction {
            name: name.into(),
            spatial: PointGroupElement::inversion(3),
            op: OnSiteOp::unitary(kron(&identity(2), &pauli(3))),
        },
        "C2T" => SymmetryAction {
            name: name.into(),
            spatial: p3(vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]),
            op: OnSiteOp::antiunitary(kron(&identity(2), &pauli(1))),
        },
        "C4T" => SymmetryAction {
            name: name.into(),
            spatial: PointGroupElement::c4(3),
            op: OnSiteOp::antiunitary(c4_onsite()),
        },
        "chiral" => SymmetryAction {
            name: name.into(),
            spatial: PointGroupElement::identity(2),
            op: OnSiteOp { matrix: kron(&pauli(3), &identity(2)), antilinear: false, odd: true },
        },
        "mirror-diagonal" => SymmetryAction {
            name: name.into(),
            spatial: PointGroupElement::diagonal_mirror(2),
            op: OnSiteOp::unitary(kron(&identity(2), &pauli(3))),
        },
        "time-reversal" => SymmetryAction {
            name: name.into(),
            spatial: PointGroupElement::identity(3),
            op: OnSiteOp::antiunitary(kron(&pauli(2), &identity(2))),
        },
        "time-reversal-2" => SymmetryAction {
            name: name.into(),
            spatial: PointGroupElement::identity(3),
            op: OnSiteOp::antiunitary(kron(&identity(2), &pauli(2))),
        },
        _ => return Err(Error::Unknown(format!("symmetry action '{name}'"))),
    })
}

/// Declared representation of the cyclic group generated by a built-in action,
/// with the twist fixed in advance (not read off the matrices).
pub fn builtin_rep(name: &str) -> Result<OnSiteRep> {
    let a = builtin_action(name)?;
    let id = identity(a.op.dim());
    match name {
        "inversion" | "mirror-diagonal" | "C2T" => OnSiteRep::cyclic(name, &a.op, 2, ONE, id),
        "time-reversal" | "time-reversal-2" => OnSiteRep::cyclic(name, &a.op, 2, -ONE, id),
        "C4T" => OnSiteRep::cyclic(name, &a.op, 4, -ONE, id),
        "chiral" => OnSiteRep::cyclic(name, &a.op, 2, ONE, kron(&pauli(1), &identity(2))),
        _ => Err(Error::Unknown(format!("symmetry action '{name}'"))),
    }
}

/// The protecting symmetries of each built-in model.
pub fn default_actions(model: &str) -> Vec<&'static str> {
    match model {
        "ham1" => vec!["inversion"],
        "ham2" => vec!["C2T"],
        "ham3" => vec!["C4T"],
        "chiral-quarter-uC" | "chiral-quarter-uF" => vec!["chiral", "mirror-diagonal"],
        _ => vec![],
    }
}

/// `max |γ h γ + h|` over all hoppings: zero for chirally symmetric models.
pub fn chiral_defect(m: &HoppingModel, gamma: &CMat) -> f64 {
    m.hoppings
        .values()
        .map(|w| max_abs(&add(&conjugate_by(gamma, w), w)))
        .fold(0.0, f64::max)
}

/// Symmetry checks keyed by action name.
pub fn covariance_table(m: &HoppingModel, names: &[&str]) -> Result<BTreeMap<String, CovarianceReport>> {
    let mut out = BTreeMap::new();
    for n in names {
        out.insert(n.to_string(), check_covariance(m, &builtin_action(n)?)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{builtin_model, ham1, ham2, ham3};

    #[test]
    fn c4t_order_four_twist() {
        let rep = builtin_rep("C4T").unwrap();
        let r = verify_projective_relations(&rep).unwrap();
        assert!(r.pass, "{:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        let u = builtin_action("C4T").unwrap().op;
        let u4 = u.compose(&u).compose(&u).compose(&u);
        assert!(max_abs_diff(&u4.matrix, &scale(&identity(4), -ONE)) < 1e-14);
        assert!(!u4.antilinear);
    }

    #[test]
    fn t_squares_to_minus_one() {
        assert!(verify_projective_relations(&builtin_rep("time-reversal-2").unwrap()).unwrap().pass);
        let wrong = OnSiteRep::cyclic("T", &builtin_action("time-reversal-2").unwrap().op, 2, ONE, identity(4)).unwrap();
        assert!(!verify_projective_relations(&wrong).unwrap().pass);
    }

    #[test]
    fn trivial_rep() {
        let rep = OnSiteRep { group: TwistedGroup::trivial(), dimension: 3, operators: vec![identity(3)], grading: identity(3) };
        assert!(verify_projective_relations(&rep).unwrap().pass);
        let bad = OnSiteRep { operators: vec![identity(2)], ..rep };
        assert!(verify_projective_relations(&bad).is_err());
    }

    #[test]
    fn model_covariances() {
        let inv = builtin_action("inversion").unwrap();
        for g in [0.0, 0.5, 1.3] {
            assert!(check_covariance(&ham1(g), &inv).unwrap().pass);
        }
        assert!(check_covariance(&ham2(0.5), &builtin_action("C2T").unwrap()).unwrap().pass);
        assert!(check_covariance(&ham3(0.5), &builtin_action("C4T").unwrap()).unwrap().pass);
        let t = builtin_action("time-reversal").unwrap();
        assert!(check_covariance(&ham1(0.0), &t).unwrap().pass);
        assert!(check_covariance(&ham1(0.5), &t).unwrap().max_deviation > 0.1);
        for name in ["chiral", "mirror-diagonal"] {
            let a = builtin_action(name).unwrap();
            assert!(check_covariance(&builtin_model("chiral-quarter-uC", 0.0).unwrap(), &a).unwrap().pass, "{name}");
        }
    }

    #[test]
    fn symmetrize_projects() {
        let m = HoppingModel::random(3, 4, 1, 0.7, 3);
        let a = [builtin_action("C4T").unwrap()];
        let s1 = symmetrize(&m, &a).unwrap();
        assert!(check_covariance(&s1, &a[0]).unwrap().pass);
        let s2 = symmetrize(&s1, &a).unwrap();
        for (d, w) in &s1.hoppings {
            assert!(max_abs_diff(w, &s2.hopping(d)) < 1e-12);
        }
        let h = ham1(0.5);
        let s = symmetrize(&h, &[builtin_action("inversion").unwrap()]).unwrap();
        for (d, w) in &h.hoppings {
            assert!(max_abs_diff(w, &s.hopping(d)) < 1e-14);
        }
        assert_eq!(close_group(&a, 1024).unwrap().len(), 4);
    }

    #[test]
    fn chiral_symmetrization_is_off_diagonal() {
        let m = HoppingModel::random(2, 4, 1, 1.0, 9);
        let chi = builtin_action("chiral").unwrap();
        let s = symmetrize(&m, &[chi.clone()]).unwrap();
        assert!(chiral_defect(&s, &chi.op.matrix) < 1e-14);
        for w in s.hoppings.values() {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(w[(i, j)].norm() < 1e-14 && w[(i + 2, j + 2)].norm() < 1e-14);
                }
            }
        }
    }
}
