//! Polyhedral lattice patterns, their translate-limits, transversals,
//! codimension filtrations and point-group actions.

use crate::error::{Error, Result};
use crate::ktheory::snf::smith_normal_form;
use crate::ktheory::zmat::ZMat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub normal: Vec<i64>,
    pub bound: i64,
}

impl Constraint {
    pub fn new(normal: Vec<i64>, bound: i64) -> Self {
        Constraint { normal, bound }
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        dot(&self.normal, x) >= self.bound
    }

    /// Primitive normal with the bound rounded up accordingly.
    fn primitive(&self) -> Constraint {
        let g = self.normal.iter().fold(0i64, |a, &b| a.gcd(&b));
        Constraint {
            normal: self.normal.iter().map(|v| v / g).collect(),
            bound: Integer::div_ceil(&self.bound, &g),
        }
    }
}

/// Sites `x ∈ Z^d` with `⟨normal, x⟩ ≥ bound` for every constraint.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pattern {
    pub dimension: usize,
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.sorted_primitive() == other.sorted_primitive()
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn integer_rank(vs: &[Vec<i64>], d: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let m = ZMat::from_cols(d, &vs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>());
    smith_normal_form(&m).rank
}

impl Pattern {
    pub fn new(dimension: usize, constraints: Vec<Constraint>) -> Result<Self> {
        let p = Pattern { dimension, constraints, label: None };
        p.validate()?;
        Ok(p)
    }

    pub fn full(dimension: usize) -> Self {
        Pattern { dimension, constraints: vec![], label: None }
    }

    /// `{x_i ≥ 0 : i ∈ dirs}`; the quarter pattern is `orthant(d, &[0, 1])`.
    pub fn orthant(dimension: usize, dirs: &[usize]) -> Self {
        let constraints = dirs
            .iter()
            .map(|&i| {
                let mut n = vec![0; dimension];
                n[i] = 1;
                Constraint::new(n, 0)
            })
            .collect();
        Pattern { dimension, constraints, label: None }
    }

    /// Orthant with per-direction orientation: `signs[i] = +1` gives `x_i ≥ 0`,
    /// `-1` gives `x_i ≤ 0`, `0` leaves the direction free.
    pub fn signed_orthant(signs: &[i64]) -> Self {
        let d = signs.len();
        let constraints = signs
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, &s)| {
                let mut n = vec![0; d];
                n[i] = s.signum();
                Constraint::new(n, 0)
            })
            .collect();
        Pattern { dimension: d, constraints, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Argument("pattern dimension must be positive".into()));
        }
        for c in &self.constraints {
            if c.normal.len() != self.dimension {
                return Err(Error::Argument(format!(
                    "normal {:?} does not have dimension {}",
                    c.normal, self.dimension
                )));
            }
            if c.normal.iter().all(|&v| v == 0) {
                return Err(Error::Argument("zero normal".into()));
            }
        }
        let prim: Vec<Constraint> = self.constraints.iter().map(Constraint::primitive).collect();
        for i in 0..prim.len() {
            for j in i + 1..prim.len() {
                let a = &prim[i].normal;
                let b = &prim[j].normal;
                let neg: Vec<i64> = b.iter().map(|v| -v).collect();
                if a == b || *a == neg {
                    return Err(Error::Argument(format!("parallel normals {:?} and {:?}", a, b)));
                }
            }
        }
        if self.find_site(self.search_radius()).is_none() {
            return Err(Error::Argument("constraints define an empty pattern".into()));
        }
        Ok(())
    }

    fn search_radius(&self) -> i64 {
        let b = self.constraints.iter().map(|c| c.bound.abs()).max().unwrap_or(0);
        4 * (b + 1) + 2
    }

    /// Some site within sup-norm radius `r`, if any.
    pub fn find_site(&self, r: i64) -> Option<Vec<i64>> {
        let d = self.dimension;
        let mut x = vec![-r; d];
        loop {
            if self.contains(&x) {
                return Some(x);
            }
            let mut i = 0;
            loop {
                if i == d {
                    return None;
                }
                x[i] += 1;
                if x[i] <= r {
                    break;
                }
                x[i] = -r;
                i += 1;
            }
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }

    pub fn codimension(&self) -> usize {
        let ns: Vec<Vec<i64>> = self.constraints.iter().map(|c| c.normal.clone()).collect();
        integer_rank(&ns, self.dimension)
    }

    /// Directions along which the pattern is translation invariant (standard
    /// basis vectors orthogonal to every normal).
    pub fn free_directions(&self) -> Vec<usize> {
        (0..self.dimension)
            .filter(|&i| self.constraints.iter().all(|c| c.normal[i] == 0))
            .collect()
    }

    fn sorted_primitive(&self) -> Vec<Constraint> {
        let mut v: Vec<Constraint> = self.constraints.iter().map(Constraint::primitive).collect();
        v.sort();
        v
    }

    /// Limit of the translates `p - n·v` as `n → ∞`. Constraints with
    /// `⟨normal, v⟩ > 0` recede and are dropped; those orthogonal to `v` stay.
    /// Returns `None` when some constraint has `⟨normal, v⟩ < 0`, i.e. the
    /// translates leave every bounded window.
    pub fn translate_limit(&self, direction: &[i64]) -> Result<Option<Pattern>> {
        if direction.len() != self.dimension {
            return Err(Error::Argument("direction has wrong dimension".into()));
        }
        if direction.iter().all(|&v| v == 0) {
            return Err(Error::Argument("zero direction".into()));
        }
        let mut kept = Vec::new();
        for c in &self.constraints {
            let s = dot(&c.normal, direction);
            if s < 0 {
                return Ok(None);
            }
            if s == 0 {
                kept.push(c.clone());
            }
        }
        Ok(Some(Pattern { dimension: self.dimension, constraints: kept, label: None }))
    }

    /// Representative of the translate-equivalence class: primitive normals,
    /// sorted, with bounds reduced modulo the shifts achievable by lattice
    /// translations (all zero whenever a translation can make them so).
    pub fn canonical(&self) -> Pattern {
        let prim = self.sorted_primitive();
        let k = prim.len();
        if k == 0 {
            return Pattern::full(self.dimension);
        }
        let d = self.dimension;
        // translating by t shifts the bound vector by N t
        let n = ZMat::from_rows(&prim.iter().map(|c| c.normal.clone()).collect::<Vec<_>>());
        let s = smith_normal_form(&n);
        let b: Vec<BigInt> = prim.iter().map(|c| BigInt::from(c.bound)).collect();
        let ub = s.u.mul_vec(&b);
        let mut red = ub.clone();
        for (i, r) in red.iter_mut().enumerate().take(s.rank.min(d)) {
            *r = r.mod_floor(s.d.get(i, i));
        }
        let nb = s.u_inv.mul_vec(&red);
        let constraints = prim
            .iter()
            .zip(nb)
            .map(|(c, b)| Constraint::new(c.normal.clone(), i64::try_from(&b).expect("bound overflow")))
            .collect();
        Pattern { dimension: d, constraints, label: None }
    }

    fn key(&self) -> String {
        let c = self.canonical();
        c.constraints.iter().map(|c| format!("{:?}>={}", c.normal, c.bound)).collect::<Vec<_>>().join(";")
    }

    pub fn translate_equivalent(&self, other: &Pattern) -> bool {
        self.dimension == other.dimension && self.key() == other.key()
    }

    pub fn describe(&self) -> String {
        if self.constraints.is_empty() {
            return "Z^d".into();
        }
        let parts: Vec<String> = self
            .constraints
            .iter()
            .map(|c| {
                let nz: Vec<usize> = (0..self.dimension).filter(|&i| c.normal[i] != 0).collect();
                if nz.len() == 1 && c.normal[nz[0]].abs() == 1 {
                    let s = if c.normal[nz[0]] > 0 { "+" } else { "-" };
                    format!("{s}e{}", nz[0] + 1)
                } else {
                    format!("{:?}", c.normal)
                }
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// A translate-equivalence class of limit patterns.
#[derive(Clone, Debug, Serialize)]
pub struct TransversalClass {
    pub representative: Pattern,
    pub codimension: usize,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Transversal {
    pub dimension: usize,
    pub classes: Vec<TransversalClass>,
    /// Every pattern met during the closure, with the class it was identified with.
    pub identifications: Vec<(String, usize)>,
}

fn kind_label(codim: usize, d: usize) -> &'static str {
    match (d - codim, codim) {
        (_, 0) => "bulk",
        (0, _) => "corner",
        (1, 2) => "hinge",
        (1, _) => "edge",
        (_, 1) => "face",
        (_, 2) => "hinge",
        _ => "stratum",
    }
}

/// Lattice directions used to generate translate-limits: all nonzero
/// vectors of sup-norm at most 2.
fn probe_directions(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![-2i64; d];
    loop {
        if x.iter().any(|&v| v != 0) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            x[i] += 1;
            if x[i] <= 2 {
                break;
            }
            x[i] = -2;
            i += 1;
        }
    }
}

impl Transversal {
    pub fn class_of(&self, p: &Pattern) -> Option<usize> {
        self.classes.iter().position(|c| c.representative.translate_equivalent(p))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn codimension_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.codimension).or_insert(0) += 1;
        }
        m
    }
}

pub fn transversal_of(p: &Pattern) -> Result<Transversal> {
    global_transversal(std::slice::from_ref(p))
}

pub fn global_transversal(ps: &[Pattern]) -> Result<Transversal> {
    let d = match ps.first() {
        Some(p) => p.dimension,
        None => return Err(Error::Argument("no seed patterns".into())),
    };
    if ps.iter().any(|p| p.dimension != d) {
        return Err(Error::Argument("seed patterns have different dimensions".into()));
    }
    let dirs = probe_directions(d);
    let mut classes: Vec<TransversalClass> = Vec::new();
    let mut keys: Vec<String> = Vec::new();
    let mut idents = Vec::new();
    let mut queue: Vec<Pattern> = ps.to_vec();
    while let Some(p) = queue.pop() {
        p.validate()?;
        let key = p.key();
        let idx = match keys.iter().position(|k| *k == key) {
            Some(i) => {
                idents.push((p.describe(), i));
                continue;
            }
            None => {
                let codim = p.codimension();
                let rep = p.canonical();
                let label = format!("{}{}", kind_label(codim, d), rep.describe());
                classes.push(TransversalClass { representative: rep, codimension: codim, label });
                keys.push(key);
                classes.len() - 1
            }
        };
        idents.push((p.describe(), idx));
        for v in &dirs {
            if let Some(q) = p.translate_limit(v)? {
                queue.push(q);
            }
        }
    }
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| {
        (classes[a].codimension, &classes[a].label).cmp(&(classes[b].codimension, &classes[b].label))
    });
    let mut remap = vec![0; classes.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let classes = order.iter().map(|&i| classes[i].clone()).collect();
    let identifications = idents.into_iter().map(|(s, i)| (s, remap[i])).collect();
    Ok(Transversal { dimension: d, classes, identifications })
}

/// Chain `Ξ_0 ⊆ Ξ_1 ⊆ …`, each level a set of class indices.
#[derive(Clone, Debug, Serialize)]
pub struct Filtration {
    pub levels: Vec<BTreeSet<usize>>,
}

impl Filtration {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }
}

pub fn codimension_filtration(t: &Transversal) -> Filtration {
    let top = t.classes.iter().map(|c| c.codimension).max().unwrap_or(0);
    let levels = (0..=top)
        .map(|r| (0..t.classes.len()).filter(|&i| t.classes[i].codimension <= r).collect())
        .collect();
    Filtration { levels }
}

/// Restriction of a filtration to a sub-transversal given by class indices.
pub fn restrict_filtration(f: &Filtration, keep: &BTreeSet<usize>) -> Filtration {
    Filtration { levels: f.levels.iter().map(|l| l.intersection(keep).cloned().collect()).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointGroupElement {
    pub matrix: Vec<Vec<i64>>,
    pub order: usize,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub(crate) fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| dot(r, v)).collect()
}

fn is_identity(a: &[Vec<i64>]) -> bool {
    a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
}

impl PointGroupElement {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let d = matrix.len();
        if d == 0 || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::Argument("point-group matrix must be square and nonempty".into()));
        }
        if matrix.iter().flatten().any(|v| v.abs() > 1) {
            return Err(Error::Argument("point-group entries must lie in {-1,0,1}".into()));
        }
        let t: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| matrix[j][i]).collect()).collect();
        if !is_identity(&mat_mul(&t, &matrix)) {
            return Err(Error::Argument("point-group matrix is not orthogonal".into()));
        }
        let mut p = matrix.clone();
        let mut order = 1;
        while !is_identity(&p) {
            p = mat_mul(&p, &matrix);
            order += 1;
        }
        Ok(PointGroupElement { matrix, order })
    }

    pub fn identity(d: usize) -> Self {
        let m = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        PointGroupElement { matrix: m, order: 1 }
    }

    pub fn inversion(d: usize) -> Self {
        let m = (0..d).map(|i| (0..d).map(|j| -i64::from(i == j)).collect()).collect();
        PointGroupElement { matrix: m, order: if d == 0 { 1 } else { 2 } }
    }

    /// Rotation by +π/2 in the (x1, x2) plane: `(x1, x2, …) ↦ (−x2, x1, …)`.
    pub fn c4(d: usize) -> Self {
        let mut m: Vec<Vec<i64>> = Self::identity(d).matrix;
        m[0][0] = 0;
        m[1][1] = 0;
        m[0][1] = -1;
        m[1][0] = 1;
        PointGroupElement { matrix: m, order: 4 }
    }

    /// `(x1, x2, …) ↦ (−x1, −x2, …)`.
    pub fn c2(d: usize) -> Self {
        let mut m: Vec<Vec<i64>> = Self::identity(d).matrix;
        m[0][0] = -1;
        m[1][1] = -1;
        PointGroupElement { matrix: m, order: 2 }
    }

    /// Mirror along the diagonal: swaps x1 and x2.
    pub fn diagonal_mirror(d: usize) -> Self {
        let mut m: Vec<Vec<i64>> = Self::identity(d).matrix;
        m[0][0] = 0;
        m[1][1] = 0;
        m[0][1] = 1;
        m[1][0] = 1;
        PointGroupElement { matrix: m, order: 2 }
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, v)
    }

    pub fn compose(&self, other: &PointGroupElement) -> PointGroupElement {
        PointGroupElement::new(mat_mul(&self.matrix, &other.matrix)).expect("product of orthogonal matrices")
    }

    pub fn inverse(&self) -> PointGroupElement {
        let d = self.dimension();
        let t = (0..d).map(|i| (0..d).map(|j| self.matrix[j][i]).collect()).collect();
        PointGroupElement { matrix: t, order: self.order }
    }
}

/// Image `g·p = {g x : x ∈ p}`; normals transform by `g` since `g` is orthogonal.
pub fn act_on(g: &PointGroupElement, p: &Pattern) -> Result<Pattern> {
    if g.dimension() != p.dimension {
        return Err(Error::Argument("point group and pattern dimensions differ".into()));
    }
    let constraints = p.constraints.iter().map(|c| Constraint::new(g.apply(&c.normal), c.bound)).collect();
    Ok(Pattern { dimension: p.dimension, constraints, label: p.label.clone() })
}

/// Class permutation induced by `g`, or `None` if some class leaves the transversal.
pub fn class_permutation(g: &PointGroupElement, t: &Transversal) -> Result<Option<Vec<usize>>> {
    let mut perm = Vec::with_capacity(t.classes.len());
    for c in &t.classes {
        match t.class_of(&act_on(g, &c.representative)?) {
            Some(j) => perm.push(j),
            None => return Ok(None),
        }
    }
    Ok(Some(perm))
}

pub fn check_filtration_invariance(g: &PointGroupElement, t: &Transversal, f: &Filtration) -> Result<bool> {
    let Some(perm) = class_permutation(g, t)? else { return Ok(false) };
    Ok(f.levels.iter().all(|l| l.iter().map(|&i| perm[i]).collect::<BTreeSet<_>>() == *l))
}

/// The 2^d corner patterns of the d-cube (d = 2 gives the square).
pub fn box_corners(d: usize) -> Vec<Pattern> {
    (0..1usize << d)
        .map(|m| {
            let signs: Vec<i64> = (0..d).map(|i| if m >> i & 1 == 0 { 1 } else { -1 }).collect();
            Pattern::signed_orthant(&signs)
        })
        .collect()
}

/// The four corners of the square, numbered counter-clockwise starting
/// from the corner that occupies the positive quadrant.
pub fn square_corners() -> Vec<Pattern> {
    vec![
        Pattern::signed_orthant(&[1, 1]).with_label("corner-1"),
        Pattern::signed_orthant(&[-1, 1]).with_label("corner-2"),
        Pattern::signed_orthant(&[-1, -1]).with_label("corner-3"),
        Pattern::signed_orthant(&[1, -1]).with_label("corner-4"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_limits() {
        let q = Pattern::orthant(2, &[0, 1]);
        assert_eq!(q.translate_limit(&[1, 0]).unwrap().unwrap(), Pattern::orthant(2, &[1]));
        assert_eq!(q.translate_limit(&[1, 1]).unwrap().unwrap(), Pattern::full(2));
        assert!(q.translate_limit(&[-1, 0]).unwrap().is_none());
        assert!(q.translate_limit(&[0, 0]).is_err());
        assert_eq!(Pattern::full(3).translate_limit(&[0, 1, 0]).unwrap().unwrap(), Pattern::full(3));
    }

    #[test]
    fn transversal_counts() {
        let q = Pattern::orthant(3, &[0, 1]);
        assert_eq!(transversal_of(&q).unwrap().len(), 4);
        assert_eq!(transversal_of(&Pattern::orthant(3, &[0])).unwrap().len(), 2);
        assert_eq!(transversal_of(&Pattern::full(2)).unwrap().len(), 1);
        let sq = global_transversal(&box_corners(2)).unwrap();
        assert_eq!(sq.len(), 9);
        assert_eq!(codimension_filtration(&sq).sizes(), vec![1, 5, 9]);
        let cube = global_transversal(&box_corners(3)).unwrap();
        assert_eq!(cube.len(), 27);
        assert_eq!(codimension_filtration(&cube).sizes(), vec![1, 7, 19, 27]);
        assert_eq!(codimension_filtration(&transversal_of(&Pattern::full(3)).unwrap()).sizes(), vec![1]);
    }

    #[test]
    fn translated_seeds_identify() {
        let a = Pattern::new(2, vec![Constraint::new(vec![1, 0], 5)]).unwrap();
        let b = Pattern::orthant(2, &[0]);
        assert!(a.translate_equivalent(&b));
        let diag = Pattern::new(2, vec![Constraint::new(vec![1, 1], 1), Constraint::new(vec![1, -1], 0)]).unwrap();
        let diag0 = Pattern::new(2, vec![Constraint::new(vec![1, 1], 0), Constraint::new(vec![1, -1], 0)]).unwrap();
        // x1+x2 and x1-x2 always have equal parity, so the bounds cannot both be moved to 0
        assert!(!diag.translate_equivalent(&diag0));
    }

    #[test]
    fn invalid_patterns() {
        assert!(Pattern::new(2, vec![Constraint::new(vec![1, 0], 0), Constraint::new(vec![2, 0], 1)]).is_err());
        assert!(Pattern::new(2, vec![Constraint::new(vec![1, 0], 0), Constraint::new(vec![-1, 0], 0)]).is_err());
        assert!(Pattern::new(
            2,
            vec![
                Constraint::new(vec![1, 0], 0),
                Constraint::new(vec![0, 1], 0),
                Constraint::new(vec![-1, -1], 1)
            ]
        )
        .is_err());
    }

    #[test]
    fn point_group_actions() {
        let inv = PointGroupElement::inversion(2);
        let q = Pattern::orthant(2, &[0, 1]);
        assert_eq!(act_on(&inv, &q).unwrap(), Pattern::signed_orthant(&[-1, -1]));
        let sq = global_transversal(&square_corners()).unwrap();
        let f = codimension_filtration(&sq);
        let c4 = PointGroupElement::c4(2);
        assert_eq!(c4.order, 4);
        assert!(check_filtration_invariance(&c4, &sq, &f).unwrap());
        let perm = class_permutation(&c4, &sq).unwrap().unwrap();
        let corners: Vec<usize> = (0..sq.len()).filter(|&i| sq.classes[i].codimension == 2).collect();
        // a single 4-cycle on the corners
        let mut i = corners[0];
        let mut seen = BTreeSet::new();
        for _ in 0..4 {
            seen.insert(i);
            i = perm[i];
        }
        assert_eq!(i, corners[0]);
        assert_eq!(seen.len(), 4);
        let tq = transversal_of(&q).unwrap();
        let m = PointGroupElement::diagonal_mirror(2);
        let pm = class_permutation(&m, &tq).unwrap().unwrap();
        let faces: Vec<usize> = (0..tq.len()).filter(|&i| tq.classes[i].codimension == 1).collect();
        assert_eq!(pm[faces[0]], faces[1]);
        assert!(check_filtration_invariance(&m, &tq, &codimension_filtration(&tq)).unwrap());
        assert!(PointGroupElement::new(vec![vec![1, 1], vec![0, 1]]).is_err());
    }
}
