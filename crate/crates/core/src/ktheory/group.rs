//! Finitely generated abelian groups as presentations `Z^n / R` and the
//! homomorphisms between them.

use super::snf::{image, kernel, preimage, smith_normal_form, Lattice};
use super::zmat::ZMat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct FGAbelianGroup {
    /// Columns generate the relation subgroup of `Z^n`.
    pub relations: ZMat,
    pub labels: Vec<String>,
    rel: Lattice,
    /// Rows map generator coordinates to canonical coordinates.
    canon: ZMat,
    factors: Vec<BigInt>,
}

/// Invariant-factor description `Z^free ⊕ Z_{d1} ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub name: String,
}

impl FGAbelianGroup {
    pub fn new(ngens: usize, relations: ZMat, labels: Vec<String>) -> Self {
        assert_eq!(relations.rows(), ngens, "relations must live in Z^ngens");
        assert_eq!(labels.len(), ngens, "one label per generator");
        let s = smith_normal_form(&relations);
        let mut factors = Vec::with_capacity(ngens);
        for i in 0..ngens {
            if i < s.rank {
                factors.push(s.d.get(i, i).clone());
            } else {
                factors.push(BigInt::zero());
            }
        }
        let rel = Lattice::new(relations.clone());
        FGAbelianGroup { relations, labels, rel, canon: s.u, factors }
    }

    pub fn free(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self::new(n, ZMat::zeros(n, 0), labels)
    }

    pub fn free_n(n: usize, prefix: &str) -> Self {
        Self::free((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn trivial() -> Self {
        Self::new(0, ZMat::zeros(0, 0), vec![])
    }

    pub fn cyclic(order: i64, label: &str) -> Self {
        Self::new(1, ZMat::from_rows(&[vec![order]]), vec![label.to_string()])
    }

    pub fn ngens(&self) -> usize {
        self.labels.len()
    }

    pub fn relation_lattice(&self) -> &Lattice {
        &self.rel
    }

    pub fn canonical(&self) -> CanonicalForm {
        let free_rank = self.factors.iter().filter(|d| d.is_zero()).count();
        let torsion: Vec<String> = self
            .factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.to_string())
            .collect();
        let mut parts = Vec::new();
        match free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            f => parts.push(format!("Z^{f}")),
        }
        for t in &torsion {
            parts.push(format!("Z{t}"));
        }
        let name = if parts.is_empty() { "0".to_string() } else { parts.join("+") };
        CanonicalForm { free_rank, torsion, name }
    }

    pub fn name(&self) -> String {
        self.canonical().name
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|d| d.is_one())
    }

    /// Canonical coordinates: torsion components reduced, trivial ones dropped.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.canon.mul_vec(x);
        let mut out = Vec::new();
        for (yi, d) in y.iter().zip(&self.factors) {
            if d.is_one() {
                continue;
            }
            if d.is_zero() {
                out.push(yi.clone());
            } else {
                out.push(yi.mod_floor(d));
            }
        }
        out
    }

    pub fn is_zero_elem(&self, x: &[BigInt]) -> bool {
        self.rel.contains(x)
    }

    pub fn equal_elems(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_elem(&d)
    }

    /// Lattice in `Z^n` covering the subgroup generated by `gens` (relations included).
    pub fn subgroup_lattice(&self, gens: &ZMat) -> Lattice {
        Lattice::new(gens.hcat(&self.relations))
    }

    /// Human-readable name of an element as a combination of generator labels.
    pub fn describe(&self, x: &[BigInt]) -> String {
        combo(&self.labels, x)
    }
}

pub fn combo(labels: &[String], x: &[BigInt]) -> String {
    let mut s = String::new();
    for (l, c) in labels.iter().zip(x) {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigInt::zero();
        let mag = if neg { -c } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&format!("{mag}·"));
        }
        s.push_str(l);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

#[derive(Clone, Debug)]
pub struct GroupMap {
    pub source: FGAbelianGroup,
    pub target: FGAbelianGroup,
    /// `target.ngens × source.ngens`
    pub matrix: ZMat,
}

impl GroupMap {
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: ZMat) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Argument(format!(
                "map matrix is {}x{} but groups need {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let m = GroupMap { source, target, matrix };
        if !m.well_defined() {
            return Err(Error::Argument("map does not carry relations into relations".into()));
        }
        Ok(m)
    }

    pub fn zero(source: FGAbelianGroup, target: FGAbelianGroup) -> Self {
        let matrix = ZMat::zeros(target.ngens(), source.ngens());
        GroupMap { source, target, matrix }
    }

    pub fn identity(g: FGAbelianGroup) -> Self {
        let n = g.ngens();
        GroupMap { source: g.clone(), target: g, matrix: ZMat::identity(n) }
    }

    pub fn well_defined(&self) -> bool {
        let img = self.matrix.mul(&self.source.relations);
        img.columns().iter().all(|c| self.target.is_zero_elem(c))
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    pub fn compose(&self, first: &GroupMap) -> GroupMap {
        GroupMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    /// Kernel as a lattice in the source generator space (contains the source relations).
    pub fn kernel_lattice(&self) -> Lattice {
        preimage(&self.matrix, self.target.relation_lattice())
    }

    /// Image as a lattice in the target generator space (contains the target relations).
    pub fn image_lattice(&self) -> Lattice {
        image(&self.matrix, &Lattice::full(self.source.ngens())).sum(self.target.relation_lattice())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_elem(c))
    }

    pub fn image_group(&self) -> FGAbelianGroup {
        let full = self.target.relation_lattice().clone();
        Subquotient::new(&self.target, &self.image_lattice(), &full)
            .expect("relations lie in the image")
            .group
    }
}

/// `sub / quot` for lattices `rel ⊆ quot ⊆ sub ⊆ Z^n` of a group `Z^n / rel`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FGAbelianGroup,
    /// Columns: representatives in the parent generator space of the new generators.
    pub lift: ZMat,
    pub sub: Lattice,
    pub quot: Lattice,
}

impl Subquotient {
    pub fn new(parent: &FGAbelianGroup, sub: &Lattice, quot: &Lattice) -> Result<Self> {
        let sub = sub.sum(parent.relation_lattice());
        let quot = quot.sum(parent.relation_lattice());
        if !sub.contains_lattice(&quot) {
            return Err(Error::Containment("quotient lattice is not contained in the subgroup".into()));
        }
        let basis = sub.basis();
        let blat = Lattice::new(basis.clone());
        let mut rel_cols = Vec::new();
        for c in quot.generators().columns() {
            let x = blat
                .solve(&c)
                .ok_or_else(|| Error::Consistency("quotient generator outside subgroup basis".into()))?;
            rel_cols.push(x);
        }
        let k = basis.cols();
        let labels = (0..k).map(|j| parent.describe(&basis.col(j))).collect();
        let group = FGAbelianGroup::new(k, ZMat::from_cols(k, &rel_cols), labels);
        Ok(Subquotient { group, lift: basis, sub, quot })
    }

    /// Coordinates of a parent element of `sub` in the new generators.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        Lattice::new(self.lift.clone()).solve(x)
    }
}

/// Subquotient `im(sub)/im(quot_by)` of the common target, in canonical form.
pub fn subquotient(g: &FGAbelianGroup, sub: &GroupMap, quot_by: &GroupMap) -> Result<FGAbelianGroup> {
    let s = sub.image_lattice();
    let q = quot_by.image_lattice();
    if !s.contains_lattice(&q) {
        return Err(Error::Containment("image of quotBy is not contained in image of sub".into()));
    }
    Ok(Subquotient::new(g, &s, &q)?.group)
}

/// Induced map between subquotients, given compatible lattices.
pub fn induced(
    m: &ZMat,
    from: &Subquotient,
    to: &Subquotient,
) -> Result<ZMat> {
    let tl = Lattice::new(to.lift.hcat(&to.quot.generators().clone()));
    let nt = to.lift.cols();
    let mut cols = Vec::new();
    for j in 0..from.lift.cols() {
        let y = m.mul_vec(&from.lift.col(j));
        let x = tl
            .solve(&y)
            .ok_or_else(|| Error::Consistency("induced map leaves the target subgroup".into()))?;
        cols.push(x[..nt].to_vec());
    }
    Ok(ZMat::from_cols(nt, &cols))
}

pub fn kernel_basis(m: &ZMat) -> ZMat {
    kernel(m)
}
