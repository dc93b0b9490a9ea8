//! Cofiltration data for the square, cube and quarter geometries in the
//! Chern-number bases, with symmetry folded in by orbit reduction.
//!
//! A stratum is labeled by its set of outward normals: the bulk has none, a
//! face one, a hinge or square corner two. The K-groups of a stratum are free
//! on the classes dual to the Chern cocycles `Ch_{S,I}`, with `I` a subset of
//! the directions orthogonal to all normals and `|I| mod 2` the K-degree. The
//! boundary from `T` to `S = T ∪ {n'}` pairs with `Ch_{S,K}` as
//! `(−1)^{|J|} ⟨x, Ch_{T, e_K × n'}⟩`.

use super::complex::{FilteredComplex, Generator};
use super::snf::kernel;
use super::zmat::ZMat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Signed coordinate axis `sign · e_axis`, axes counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Normal {
    pub axis: usize,
    pub sign: i8,
}

impl Normal {
    pub const fn new(axis: usize, sign: i8) -> Self {
        Normal { axis, sign }
    }
}

impl std::fmt::Display for Normal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}e{}", if self.sign > 0 { "+" } else { "-" }, self.axis)
    }
}

/// Sign of the oriented tuple `(s_1 e_{a_1}, …)`: product of signs times the
/// parity of the sorting permutation; zero on a repeated axis.
pub fn tuple_sign(v: &[Normal]) -> i64 {
    let mut s: i64 = v.iter().map(|n| n.sign as i64).product();
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if v[i].axis == v[j].axis {
                return 0;
            }
            if v[i].axis > v[j].axis {
                s = -s;
            }
        }
    }
    s
}

#[derive(Clone, Debug)]
pub struct Stratum {
    pub name: String,
    pub level: usize,
    /// Sorted outward normals.
    pub normals: Vec<Normal>,
    /// Directions orthogonal to every normal.
    pub dirs: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ChernGenerator {
    pub stratum: usize,
    pub subset: Vec<usize>,
    pub label: String,
}

impl ChernGenerator {
    pub fn parity(&self) -> usize {
        self.subset.len() % 2
    }
}

fn subset_name(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn subsets(dirs: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..(1usize << dirs.len()))
        .map(|m| (0..dirs.len()).filter(|&i| m >> i & 1 == 1).map(|i| dirs[i]).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Point-group element acting on coordinates as a signed permutation,
/// possibly combined with complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    /// `R e_i = images[i-1]`.
    pub images: Vec<Normal>,
    pub antilinear: bool,
}

impl SignedPerm {
    pub fn identity(d: usize) -> Self {
        SignedPerm { images: (1..=d).map(|a| Normal::new(a, 1)).collect(), antilinear: false }
    }

    pub fn apply(&self, n: Normal) -> Normal {
        let r = self.images[n.axis - 1];
        Normal::new(r.axis, r.sign * n.sign)
    }

    pub fn compose(&self, first: &SignedPerm) -> SignedPerm {
        SignedPerm {
            images: first.images.iter().map(|&n| self.apply(n)).collect(),
            antilinear: self.antilinear ^ first.antilinear,
        }
    }

    /// Sign picked up by a degree-`n` Chern cocycle under conjugation.
    pub fn conjugation_sign(&self, n: usize) -> i64 {
        if self.antilinear && (n + 1) / 2 % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

/// Cyclic group generated by `g`.
pub fn cyclic_group(g: &SignedPerm) -> Vec<SignedPerm> {
    let id = SignedPerm::identity(g.images.len());
    let mut out = vec![id.clone()];
    let mut cur = g.clone();
    while cur != id {
        out.push(cur.clone());
        cur = g.compose(&cur);
        assert!(out.len() <= 48, "generator does not have finite order");
    }
    out
}

/// All strata of a polyhedral geometry with their Chern bases and the
/// non-equivariant boundary maps between adjacent levels.
#[derive(Clone, Debug)]
pub struct ChernComplex {
    pub dim: usize,
    pub strata: Vec<Stratum>,
    pub gens: Vec<ChernGenerator>,
    /// `boundary[(i, j)]`: coefficient of generator `i` in `∂(generator j)`.
    pub boundary: ZMat,
}

impl ChernComplex {
    pub fn new(dim: usize, strata: Vec<(String, Vec<Normal>)>) -> Result<Self> {
        let mut st = Vec::new();
        for (name, mut normals) in strata {
            normals.sort();
            let axes: BTreeSet<usize> = normals.iter().map(|n| n.axis).collect();
            if axes.len() != normals.len() || axes.iter().any(|&a| a == 0 || a > dim) {
                return Err(Error::Argument(format!("stratum {name} has invalid normals")));
            }
            let dirs = (1..=dim).filter(|a| !axes.contains(a)).collect();
            st.push(Stratum { name, level: normals.len(), normals, dirs });
        }
        let mut gens = Vec::new();
        for (si, s) in st.iter().enumerate() {
            for sub in subsets(&s.dirs) {
                let label = format!("Ch_{{{},{}}}-dual", s.name, subset_name(&sub));
                gens.push(ChernGenerator { stratum: si, subset: sub, label });
            }
        }
        let n = gens.len();
        let mut boundary = ZMat::zeros(n, n);
        for (j, gj) in gens.iter().enumerate() {
            let t = &st[gj.stratum];
            for (i, gi) in gens.iter().enumerate() {
                let s = &st[gi.stratum];
                if s.level != t.level + 1 || !t.normals.iter().all(|n| s.normals.contains(n)) {
                    continue;
                }
                let new: Vec<Normal> = s.normals.iter().copied().filter(|n| !t.normals.contains(n)).collect();
                let np = new[0];
                let mut k_axes: Vec<usize> = gi.subset.clone();
                k_axes.push(np.axis);
                k_axes.sort();
                if k_axes != gj.subset {
                    continue;
                }
                let mut tuple: Vec<Normal> = gi.subset.iter().map(|&a| Normal::new(a, 1)).collect();
                tuple.push(np);
                let sign = if gj.subset.len() % 2 == 0 { 1 } else { -1 };
                boundary.set(i, j, BigInt::from(sign * tuple_sign(&tuple)));
            }
        }
        Ok(ChernComplex { dim, strata: st, gens, boundary })
    }

    /// Square cross-section in `d ≥ 2` dimensions. Faces `F1..F4` have normals
    /// `−e2, +e1, +e2, −e1`; corner `Cλ` joins faces `λ−1` and `λ`.
    pub fn square(d: usize) -> Result<Self> {
        let n = [Normal::new(2, -1), Normal::new(1, 1), Normal::new(2, 1), Normal::new(1, -1)];
        let mut strata = vec![("B".to_string(), vec![])];
        for (l, &nl) in n.iter().enumerate() {
            strata.push((format!("F{}", l + 1), vec![nl]));
        }
        for l in 0..4 {
            strata.push((format!("C{}", l + 1), vec![n[(l + 3) % 4], n[l]]));
        }
        Self::new(d, strata)
    }

    /// Cube in three dimensions: 6 faces, 12 hinges, 8 corners.
    pub fn cube() -> Result<Self> {
        let all: Vec<Normal> = (1..=3).flat_map(|a| [Normal::new(a, -1), Normal::new(a, 1)]).collect();
        let mut strata = vec![("B".to_string(), vec![])];
        let name = |p: &str, v: &[Normal]| {
            let s: Vec<String> = v.iter().map(|n| n.to_string()).collect();
            format!("{p}[{}]", s.join(","))
        };
        for &a in &all {
            strata.push((name("F", &[a]), vec![a]));
        }
        for (i, &a) in all.iter().enumerate() {
            for &b in &all[i + 1..] {
                if a.axis != b.axis {
                    strata.push((name("H", &[a, b]), vec![a, b]));
                }
            }
        }
        for s1 in [-1i8, 1] {
            for s2 in [-1i8, 1] {
                for s3 in [-1i8, 1] {
                    let v = [Normal::new(1, s1), Normal::new(2, s2), Normal::new(3, s3)];
                    strata.push((name("C", &v), v.to_vec()));
                }
            }
        }
        Self::new(3, strata)
    }

    pub fn levels(&self) -> usize {
        self.strata.iter().map(|s| s.level).max().unwrap_or(0) + 1
    }

    pub fn stratum_index(&self, name: &str) -> Option<usize> {
        self.strata.iter().position(|s| s.name == name)
    }

    pub fn gen_index(&self, stratum: usize, subset: &[usize]) -> Option<usize> {
        self.gens.iter().position(|g| g.stratum == stratum && g.subset == subset)
    }

    fn stratum_image(&self, g: &SignedPerm, s: usize) -> Result<usize> {
        let mut img: Vec<Normal> = self.strata[s].normals.iter().map(|&n| g.apply(n)).collect();
        img.sort();
        self.strata
            .iter()
            .position(|t| t.normals == img)
            .ok_or_else(|| Error::Argument(format!("group element does not preserve the geometry at {}", self.strata[s].name)))
    }

    /// Action on generators: `g · x_{S,I} = sign(R e_I) · s_T(|I|) · x_{gS, I'}`.
    pub fn action(&self, g: &SignedPerm) -> Result<ZMat> {
        let n = self.gens.len();
        let mut m = ZMat::zeros(n, n);
        for (j, gj) in self.gens.iter().enumerate() {
            let t = self.stratum_image(g, gj.stratum)?;
            let img: Vec<Normal> = gj.subset.iter().map(|&a| g.apply(Normal::new(a, 1))).collect();
            let mut axes: Vec<usize> = img.iter().map(|n| n.axis).collect();
            axes.sort();
            let i = self
                .gen_index(t, &axes)
                .ok_or_else(|| Error::Consistency(format!("no image for {}", gj.label)))?;
            m.set(i, j, BigInt::from(tuple_sign(&img) * g.conjugation_sign(gj.subset.len())));
        }
        Ok(m)
    }

    /// Orbit-reduced filtered complex for the group `group` (acting freely on
    /// all strata except the bulk). Bulk generators are the invariant Chern
    /// classes; `extra` appends bulk classes with prescribed full-space
    /// boundary vectors. With antilinear elements present, even classes sit in
    /// K-degree 0 and odd ones in degree −1, and the differential out of
    /// degree −1 is dropped (quotient by the degrees ≤ −2).
    pub fn reduce(&self, name: &str, level_names: &[&str], group: &[SignedPerm], extra: &[ExtraClass]) -> Result<ReducedComplex> {
        let n = self.gens.len();
        let actions = group.iter().map(|g| self.action(g)).collect::<Result<Vec<_>>>()?;
        // Antilinear elements act on K-degrees with period four: the boundary
        // commutes with them out of even degree and anticommutes out of odd
        // degree. Only the window of degrees 0 and −1 is then kept.
        let window = group.iter().any(|g| g.antilinear);
        for (g, a) in group.iter().zip(&actions) {
            let lhs = a.mul(&self.boundary);
            let rhs = self.boundary.mul(a);
            for j in 0..n {
                let flip = g.antilinear && self.gens[j].parity() == 1;
                let expect: Vec<BigInt> = if flip { rhs.col(j).iter().map(|x| -x).collect() } else { rhs.col(j) };
                if lhs.col(j) != expect {
                    return Err(Error::Consistency(format!("boundary is not equivariant under {g:?} at {}", self.gens[j].label)));
                }
            }
        }
        // orbit representatives
        let mut reps = Vec::new();
        let mut seen = vec![false; self.strata.len()];
        for s in 0..self.strata.len() {
            if seen[s] {
                continue;
            }
            let orbit: BTreeSet<usize> = group.iter().map(|g| self.stratum_image(g, s)).collect::<Result<_>>()?;
            if self.strata[s].level > 0 && orbit.len() != group.len() {
                return Err(Error::Argument(format!("group does not act freely on {}", self.strata[s].name)));
            }
            for &o in &orbit {
                seen[o] = true;
            }
            reps.push(s);
        }
        let mut gens: Vec<Generator> = Vec::new();
        let mut vecs: Vec<Vec<BigInt>> = Vec::new();
        let unit = |i: usize| -> Vec<BigInt> { (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect() };
        // bulk: invariant sublattice, degree by degree
        let bulk: Vec<usize> = (0..n).filter(|&i| self.strata[self.gens[i].stratum].level == 0).collect();
        for k in 0..2 {
            let idx: Vec<usize> = bulk.iter().copied().filter(|&i| self.gens[i].parity() == k).collect();
            let mut stack = ZMat::zeros(0, idx.len());
            let mut rows = Vec::new();
            for a in &actions {
                let sub = a.select_rows(&idx).select_cols(&idx).add(&ZMat::identity(idx.len()).neg());
                rows.extend(sub.to_i64_rows());
            }
            if !rows.is_empty() {
                stack = ZMat::from_rows(&rows);
            }
            let ker = if stack.rows() == 0 { ZMat::identity(idx.len()) } else { kernel(&stack) };
            for col in ker.columns() {
                let mut v = vec![BigInt::zero(); n];
                for (c, &i) in col.iter().zip(&idx) {
                    v[i] = c.clone();
                }
                let labels: Vec<String> = self.gens.iter().map(|g| g.label.clone()).collect();
                gens.push(Generator { label: super::group::combo(&labels, &v), level: 0, parity: k });
                vecs.push(v);
            }
        }
        // free orbits: orbit sums of the representative generators, read off
        // through their coefficient at the representative
        let mut rep_gen: Vec<Option<usize>> = vec![None; n];
        for &s in &reps {
            if self.strata[s].level == 0 {
                continue;
            }
            for (i, g) in self.gens.iter().enumerate() {
                if g.stratum != s {
                    continue;
                }
                let mut v = vec![BigInt::zero(); n];
                for a in &actions {
                    for (vi, ai) in v.iter_mut().zip(a.mul_vec(&unit(i))) {
                        *vi += ai;
                    }
                }
                rep_gen[i] = Some(gens.len());
                gens.push(Generator { label: g.label.clone(), level: self.strata[s].level, parity: g.parity() });
                vecs.push(v);
            }
        }
        let to_reduced = |w: &[BigInt]| -> Result<Vec<BigInt>> {
            let m = gens.len() + extra.len();
            let mut c = vec![BigInt::zero(); m];
            for (i, r) in rep_gen.iter().enumerate() {
                if let Some(r) = r {
                    c[*r] = w[i].clone();
                }
            }
            // reconstruct and compare
            let mut back = vec![BigInt::zero(); n];
            for (r, cr) in c.iter().enumerate().take(gens.len()) {
                if cr.is_zero() {
                    continue;
                }
                for (b, v) in back.iter_mut().zip(&vecs[r]) {
                    *b += cr * v;
                }
            }
            if back != w {
                return Err(Error::Consistency("vector is not invariant under the group".into()));
            }
            Ok(c)
        };
        let m = gens.len() + extra.len();
        let mut d = ZMat::zeros(m, m);
        for (j, v) in vecs.iter().enumerate() {
            if window && gens[j].parity == 1 {
                continue;
            }
            let img = self.boundary.mul_vec(v);
            for (i, c) in to_reduced(&img)?.into_iter().enumerate() {
                d.set(i, j, c);
            }
        }
        let mut named = Vec::new();
        for (e, x) in extra.iter().enumerate() {
            let j = gens.len() + e;
            let mut w = vec![BigInt::zero(); n];
            for (label, c) in &x.boundary {
                let i = self
                    .gens
                    .iter()
                    .position(|g| &g.label == label)
                    .ok_or_else(|| Error::Unknown(label.clone()))?;
                w[i] += BigInt::from(*c);
            }
            let target = w
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .map(|(i, _)| self.gens[i].parity());
            if target.is_some_and(|t| t == x.parity) {
                return Err(Error::Argument(format!("boundary of {} must have the opposite degree", x.label)));
            }
            for (i, c) in to_reduced(&w)
                .map_err(|_| Error::SymmetryInconsistent(format!("hinge data of {} is not invariant", x.label)))?
                .into_iter()
                .enumerate()
            {
                d.set(i, j, c);
            }
            named.push(x.label.clone());
        }
        let mut all = gens;
        for x in extra {
            all.push(Generator { label: x.label.clone(), level: 0, parity: x.parity });
        }
        let complex = FilteredComplex::new(name, level_names.iter().map(|s| s.to_string()).collect(), all, d)?;
        Ok(ReducedComplex { complex, rep_strata: reps.iter().map(|&s| self.strata[s].name.clone()).collect(), named })
    }
}

/// A bulk class beyond the Chern-dual basis, given by its boundary on the
/// full (unreduced) generator set.
#[derive(Clone, Debug)]
pub struct ExtraClass {
    pub label: String,
    pub parity: usize,
    pub boundary: Vec<(String, i64)>,
}

#[derive(Clone, Debug)]
pub struct ReducedComplex {
    pub complex: FilteredComplex,
    pub rep_strata: Vec<String>,
    pub named: Vec<String>,
}

pub const PRESETS: [&str; 7] =
    ["square-plain-2", "square-plain-3", "square-inversion", "square-C2T", "square-C4T", "cube-plain", "quarter-mirror-chiral"];

/// Preset cofiltration input together with what the report should single out.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub complex: FilteredComplex,
    /// Only part of the equivariant bulk group is represented.
    pub partial: bool,
    /// Bulk classes whose images under the higher boundary maps are reported.
    pub named: Vec<String>,
    pub hinge_charges: Option<[i64; 4]>,
}

pub fn inversion() -> SignedPerm {
    SignedPerm { images: vec![Normal::new(1, -1), Normal::new(2, -1), Normal::new(3, -1)], antilinear: false }
}

pub fn c2t() -> SignedPerm {
    SignedPerm { images: vec![Normal::new(1, -1), Normal::new(2, -1), Normal::new(3, 1)], antilinear: true }
}

/// `(x1, x2, x3) ↦ (−x2, x1, x3)` with complex conjugation.
pub fn c4t() -> SignedPerm {
    SignedPerm { images: vec![Normal::new(2, 1), Normal::new(1, -1), Normal::new(3, 1)], antilinear: true }
}

/// Hinge charges measured on the bundled models, by corner `C1..C4`.
pub fn default_hinge_charges(preset: &str) -> Option<[i64; 4]> {
    match preset {
        "square-inversion" => Some([1, 0, -1, 0]),
        "square-C2T" => Some([0, -1, 0, 1]),
        "square-C4T" => Some([1, -1, 1, -1]),
        _ => None,
    }
}

fn hinge_class(label: &str, c: [i64; 4]) -> ExtraClass {
    ExtraClass {
        label: label.into(),
        parity: 0,
        boundary: (0..4).filter(|&l| c[l] != 0).map(|l| (format!("Ch_{{C{},{{3}}}}-dual", l + 1), c[l])).collect(),
    }
}

pub fn preset(name: &str, hinge: Option<[i64; 4]>) -> Result<Preset> {
    let square_levels = ["bulk", "faces", "corners"];
    let (complex, partial, named, hinge_charges) = match name {
        "square-plain-2" | "square-plain-3" => {
            let d = if name.ends_with('2') { 2 } else { 3 };
            let r = ChernComplex::square(d)?.reduce(name, &square_levels, &[SignedPerm::identity(d)], &[])?;
            (r.complex, false, vec![], None)
        }
        "cube-plain" => {
            let r = ChernComplex::cube()?.reduce(name, &["bulk", "faces", "hinges", "corners"], &[SignedPerm::identity(3)], &[])?;
            (r.complex, false, vec![], None)
        }
        "square-inversion" | "square-C2T" | "square-C4T" => {
            let (g, model) = match name {
                "square-inversion" => (inversion(), "x_Ham1"),
                "square-C2T" => (c2t(), "x_Ham2"),
                _ => (c4t(), "x_Ham3"),
            };
            let c = hinge.or_else(|| default_hinge_charges(name)).expect("preset has defaults");
            let r = ChernComplex::square(3)?.reduce(name, &square_levels, &cyclic_group(&g), &[hinge_class(model, c)])?;
            (r.complex, true, r.named, Some(c))
        }
        "quarter-mirror-chiral" => (quarter_mirror_chiral()?, false, vec!["u_F".into(), "u_C".into()], None),
        _ => return Err(Error::Unknown(format!("preset {name} (known: {})", PRESETS.join(", ")))),
    };
    if hinge.is_some() && hinge_charges.is_none() {
        return Err(Error::Argument(format!("preset {name} takes no hinge data")));
    }
    Ok(Preset { name: name.into(), complex, partial, named, hinge_charges })
}

/// Diagonal-mirror quarter plane with chiral symmetry: bulk `K^{Z2}` classes
/// `χ±⊗1`, `u_F`, `u_C`; face classes `χ+⊗(P1⊕P2)` and the face unitary `f`;
/// corner classes `χ±⊗E0`. `u_F` has face winding, `u_C` only reaches the
/// corner, and `f` maps to `−2 χ+⊗E0`.
pub fn quarter_mirror_chiral() -> Result<FilteredComplex> {
    let g = |label: &str, level, parity| Generator { label: label.into(), level, parity };
    let gens = vec![
        g("chi+ x 1", 0, 0),
        g("chi- x 1", 0, 0),
        g("u_F", 0, 1),
        g("u_C", 0, 1),
        g("chi+ x (P1+P2)", 1, 0),
        g("f", 1, 1),
        g("chi+ x E0", 2, 0),
        g("chi- x E0", 2, 0),
    ];
    let mut d = ZMat::zeros(8, 8);
    d.set(4, 2, BigInt::one());
    d.set(6, 5, BigInt::from(-2));
    d.set(6, 3, BigInt::one());
    FilteredComplex::new("quarter-mirror-chiral", vec!["bulk".into(), "faces".into(), "corner".into()], gens, d)
}

/// Nonzero Smith invariant factors of an integer matrix, as machine integers.
pub fn invariant_factors(m: &ZMat) -> Vec<i64> {
    let s = super::snf::smith_normal_form(m);
    s.diagonal().iter().filter(|x| !x.is_zero()).map(|x| x.abs().to_i64().unwrap_or(i64::MAX)).collect()
}
