//! Translation-covariant hopping models, their Bloch matrices, and real-space
//! instantiation on slabs, wires, quarters and boxes.

use crate::error::{arg, Error, Result};
use crate::linalg::{add, adjoint, cx, identity, kron, max_abs, max_abs_diff, pauli, scale, CMat, CsrMatrix, ONE, ZERO};
use crate::patterns::{Constraint, Pattern};
use faer::c64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// `h(k) = Σ_δ w(δ) e^{i k·δ}`; the generator `S_j` corresponds to `δ = +e_j`.
#[derive(Clone, Debug)]
pub struct HoppingModel {
    pub name: String,
    pub dimension: usize,
    pub internal_dim: usize,
    pub hoppings: BTreeMap<Vec<i64>, CMat>,
}

impl HoppingModel {
    pub fn new(name: impl Into<String>, dimension: usize, internal_dim: usize) -> Self {
        HoppingModel { name: name.into(), dimension, internal_dim, hoppings: BTreeMap::new() }
    }

    /// Accumulates `m` into `w(delta)`.
    pub fn add(&mut self, delta: &[i64], m: &CMat) {
        assert_eq!(delta.len(), self.dimension);
        assert_eq!((m.nrows(), m.ncols()), (self.internal_dim, self.internal_dim));
        let e = self.hoppings.entry(delta.to_vec()).or_insert_with(|| CMat::zeros(m.nrows(), m.ncols()));
        *e = add(e, m);
    }

    /// Adds `m` at `delta` and `m†` at `-delta`.
    pub fn add_pair(&mut self, delta: &[i64], m: &CMat) {
        self.add(delta, m);
        let neg: Vec<i64> = delta.iter().map(|v| -v).collect();
        self.add(&neg, &adjoint(m));
    }

    pub fn get(&self, delta: &[i64]) -> Option<&CMat> {
        self.hoppings.get(delta)
    }

    pub fn hopping(&self, delta: &[i64]) -> CMat {
        self.get(delta).cloned().unwrap_or_else(|| CMat::zeros(self.internal_dim, self.internal_dim))
    }

    /// Drops displacements whose matrix vanishes below `tol`.
    pub fn pruned(mut self, tol: f64) -> Self {
        self.hoppings.retain(|_, m| max_abs(m) > tol);
        self
    }

    pub fn range(&self) -> i64 {
        self.hoppings
            .iter()
            .filter(|(_, m)| max_abs(m) > 0.0)
            .map(|(d, _)| d.iter().map(|v| v.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// `max_δ |w(−δ) − w(δ)†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut m = 0.0f64;
        for (d, w) in &self.hoppings {
            let neg: Vec<i64> = d.iter().map(|v| -v).collect();
            m = m.max(max_abs_diff(&self.hopping(&neg), &adjoint(w)));
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 || self.internal_dim == 0 {
            return arg("model dimensions must be positive");
        }
        let defect = self.hermiticity_defect();
        if defect > 1e-12 {
            return arg(format!("model is not Hermitian: |w(-d) - w(d)^*| = {defect:e}"));
        }
        Ok(())
    }

    pub fn bloch(&self, k: &[f64]) -> CMat {
        assert_eq!(k.len(), self.dimension);
        let n = self.internal_dim;
        let mut h = CMat::zeros(n, n);
        for (d, w) in &self.hoppings {
            let ph: f64 = d.iter().zip(k).map(|(&a, &b)| a as f64 * b).sum();
            let z = cx(ph.cos(), ph.sin());
            for j in 0..n {
                for i in 0..n {
                    h[(i, j)] += w[(i, j)] * z;
                }
            }
        }
        h
    }

    pub fn direct_sum(&self, other: &HoppingModel) -> Result<HoppingModel> {
        if self.dimension != other.dimension {
            return arg("direct sum of models with different dimensions");
        }
        let (n1, n2) = (self.internal_dim, other.internal_dim);
        let mut out = HoppingModel::new(format!("{}+{}", self.name, other.name), self.dimension, n1 + n2);
        for (d, w) in &self.hoppings {
            out.add(d, &CMat::from_fn(n1 + n2, n1 + n2, |i, j| if i < n1 && j < n1 { w[(i, j)] } else { ZERO }));
        }
        for (d, w) in &other.hoppings {
            out.add(
                d,
                &CMat::from_fn(n1 + n2, n1 + n2, |i, j| {
                    if i >= n1 && j >= n1 {
                        w[(i - n1, j - n1)]
                    } else {
                        ZERO
                    }
                }),
            );
        }
        Ok(out)
    }

    /// Same model with every hopping conjugated by a fixed unitary.
    pub fn conjugated(&self, u: &CMat) -> HoppingModel {
        let mut out = self.clone();
        for w in out.hoppings.values_mut() {
            *w = crate::linalg::conjugate_by(u, w);
        }
        out
    }

    /// Random Hermitian model with entries uniform in the unit square,
    /// supported on `|δ|∞ ≤ range`; `density` is the chance each ±δ pair is kept.
    pub fn random(dimension: usize, internal_dim: usize, range: i64, density: f64, seed: u64) -> HoppingModel {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = HoppingModel::new(format!("random-{seed}"), dimension, internal_dim);
        let mut deltas = Vec::new();
        let mut x = vec![-range; dimension];
        'outer: loop {
            deltas.push(x.clone());
            let mut i = 0;
            loop {
                if i == dimension {
                    break 'outer;
                }
                x[i] += 1;
                if x[i] <= range {
                    break;
                }
                x[i] = -range;
                i += 1;
            }
        }
        for d in deltas {
            // one representative of each ±δ pair
            let first = d.iter().find(|&&v| v != 0);
            match first {
                Some(&v) if v < 0 => continue,
                None => {
                    let a = CMat::from_fn(internal_dim, internal_dim, |_, _| {
                        cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    });
                    m.add(&d, &scale(&add(&a, &adjoint(&a)), cx(0.5, 0.0)));
                }
                Some(_) => {
                    if rng.gen::<f64>() > density {
                        continue;
                    }
                    let a = CMat::from_fn(internal_dim, internal_dim, |_, _| {
                        cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    });
                    m.add_pair(&d, &a);
                }
            }
        }
        m
    }
}

fn e(d: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = s;
    v
}

fn k2(a: usize, b: usize) -> CMat {
    kron(&pauli(a), &pauli(b))
}

/// Shared form `(2 Γ0 + γ ΓB) + Σ_i [Γ_i (S_i − S_i*)/(2i) + Γ0 (S_i + S_i*)/2]`.
fn dirac_model(name: &str, gamma_i: [CMat; 3], g0: &CMat, onsite: &CMat) -> HoppingModel {
    let mut m = HoppingModel::new(name, 3, 4);
    m.add(&[0, 0, 0], &add(&scale(g0, cx(2.0, 0.0)), onsite));
    for (i, gi) in gamma_i.iter().enumerate() {
        // coefficient of S_i is Γ_i/(2i) + Γ0/2
        let w = add(&scale(gi, cx(0.0, -0.5)), &scale(g0, cx(0.5, 0.0)));
        m.add_pair(&e(3, i, 1), &w);
    }
    m
}

pub fn ham1(gamma: f64) -> HoppingModel {
    let g = [k2(3, 1), k2(0, 2), k2(2, 1)];
    let sum = add(&add(&pauli(1), &pauli(2)), &pauli(3));
    let gb = scale(&kron(&sum, &add(&identity(2), &pauli(3))), cx(0.5, 0.0));
    dirac_model("ham1", g, &k2(0, 3), &scale(&gb, cx(gamma, 0.0))).pruned(0.0)
}

pub fn ham2(gamma: f64) -> HoppingModel {
    let g = [k2(1, 1), k2(1, 2), k2(1, 3)];
    let gb = kron(&identity(2), &add(&pauli(1), &pauli(2)));
    dirac_model("ham2", g, &k2(3, 0), &scale(&gb, cx(gamma, 0.0))).pruned(0.0)
}

pub fn ham3(gamma: f64) -> HoppingModel {
    let g = [k2(1, 1), k2(1, 2), k2(1, 3)];
    let mut m = dirac_model("ham3", g, &k2(3, 0), &CMat::zeros(4, 4));
    let gb = scale(&k2(2, 0), cx(gamma / 2.0, 0.0));
    m.add_pair(&[1, 0, 0], &gb);
    m.add_pair(&[0, 1, 0], &scale(&gb, cx(-1.0, 0.0)));
    m.pruned(0.0)
}

/// `u_C = ½ [[−S1*−S2*, S1*−S2*], [S1−S2, S1+S2]]` as hopping data on `C^2`.
pub fn u_corner() -> HoppingModel {
    let mut u = HoppingModel::new("uC", 2, 2);
    let h = cx(0.5, 0.0);
    let m = |a: c64, b: c64, c: c64, d: c64| {
        let mut x = CMat::zeros(2, 2);
        x[(0, 0)] = a;
        x[(0, 1)] = b;
        x[(1, 0)] = c;
        x[(1, 1)] = d;
        x
    };
    u.add(&[1, 0], &m(ZERO, ZERO, h, h));
    u.add(&[0, 1], &m(ZERO, ZERO, -h, h));
    u.add(&[-1, 0], &m(-h, h, ZERO, ZERO));
    u.add(&[0, -1], &m(-h, -h, ZERO, ZERO));
    u
}

/// `u_F = χ+ ⊗ S1 S2 + χ− ⊗ 1`, written in the `(χ+, χ−)` basis.
pub fn u_face() -> HoppingModel {
    let mut u = HoppingModel::new("uF", 2, 2);
    let mut a = CMat::zeros(2, 2);
    a[(0, 0)] = ONE;
    u.add(&[1, 1], &a);
    let mut b = CMat::zeros(2, 2);
    b[(1, 1)] = ONE;
    u.add(&[0, 0], &b);
    u
}

/// Chiral Hamiltonian `[[0, w*], [w, 0]]` built from unitary hopping data `w`.
pub fn chiral_from_unitary(name: &str, w: &HoppingModel) -> HoppingModel {
    let n = w.internal_dim;
    let mut h = HoppingModel::new(name, w.dimension, 2 * n);
    for (d, m) in &w.hoppings {
        // lower-left block w(δ); the upper-right block is fixed by hermiticity
        let lower = CMat::from_fn(2 * n, 2 * n, |i, j| if i >= n && j < n { m[(i - n, j)] } else { ZERO });
        h.add(d, &lower);
        let neg: Vec<i64> = d.iter().map(|v| -v).collect();
        h.add(&neg, &adjoint(&lower));
    }
    h
}

/// Chirality operator `σ3 ⊗ 1_n` for the models of [`chiral_from_unitary`].
pub fn chirality(n: usize) -> CMat {
    kron(&pauli(3), &identity(n))
}

/// Mirror representation `M = diag(1, −1)` on the `C^2` factor of `u_C`, lifted to the chiral space.
pub fn mirror_onsite() -> CMat {
    kron(&identity(2), &pauli(3))
}

pub fn builtin_model(name: &str, gamma: f64) -> Result<HoppingModel> {
    Ok(match name {
        "ham1" => ham1(gamma),
        "ham2" => ham2(gamma),
        "ham3" => ham3(gamma),
        "chiral-quarter-uC" => chiral_from_unitary("chiral-quarter-uC", &u_corner()),
        "chiral-quarter-uF" => chiral_from_unitary("chiral-quarter-uF", &u_face()),
        "atomic" => {
            let mut m = HoppingModel::new("atomic", 3, 4);
            m.add(&[0, 0, 0], &k2(0, 3));
            m
        }
        _ => return Err(Error::Unknown(format!("model '{name}'"))),
    })
}

pub const BUILTIN_MODELS: [&str; 6] = ["ham1", "ham2", "ham3", "chiral-quarter-uC", "chiral-quarter-uF", "atomic"];

/// Finite geometry: a pattern cut to a box in its open directions, with
/// the remaining directions treated as Bloch momenta.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub pattern: Pattern,
    /// Extent per direction; ignored for periodic directions.
    pub extents: Vec<usize>,
    pub periodic: Vec<usize>,
    pub kgrid: Vec<usize>,
}

impl Geometry {
    pub fn new(pattern: Pattern, extents: Vec<usize>, periodic: Vec<usize>, kgrid: Vec<usize>) -> Result<Self> {
        let d = pattern.dimension;
        if extents.len() != d {
            return arg(format!("box has {} extents for dimension {d}", extents.len()));
        }
        if kgrid.len() != periodic.len() {
            return arg("kgrid must list one sample count per periodic direction");
        }
        let free = pattern.free_directions();
        for &p in &periodic {
            if p >= d {
                return arg(format!("periodic direction {p} out of range"));
            }
            if !free.contains(&p) {
                return arg(format!("periodic direction {p} is constrained by the pattern"));
            }
        }
        for i in 0..d {
            if !periodic.contains(&i) && extents[i] == 0 {
                return arg(format!("open direction {i} has zero extent"));
            }
        }
        Ok(Geometry { pattern, extents, periodic, kgrid })
    }

    pub fn bulk(d: usize, kgrid: usize) -> Self {
        Geometry { pattern: Pattern::full(d), extents: vec![1; d], periodic: (0..d).collect(), kgrid: vec![kgrid; d] }
    }

    /// `{x_dir ≥ 0}` of depth `depth`, periodic elsewhere.
    pub fn slab(d: usize, dir: usize, depth: usize, kgrid: usize) -> Self {
        let periodic: Vec<usize> = (0..d).filter(|&i| i != dir).collect();
        let mut extents = vec![1; d];
        extents[dir] = depth;
        Geometry { pattern: Pattern::orthant(d, &[dir]), extents, kgrid: vec![kgrid; periodic.len()], periodic }
    }

    /// Quarter `{x1 ≥ 0, x2 ≥ 0}` of cross-section `l × l`, periodic along x3.
    pub fn wire(l: usize, kgrid: usize) -> Self {
        Geometry { pattern: Pattern::orthant(3, &[0, 1]), extents: vec![l, l, 1], periodic: vec![2], kgrid: vec![kgrid] }
    }

    /// Open `l^d` box anchored at the corner of the positive orthant.
    pub fn cube(d: usize, l: usize) -> Self {
        Geometry {
            pattern: Pattern::orthant(d, &(0..d).collect::<Vec<_>>()),
            extents: vec![l; d],
            periodic: vec![],
            kgrid: vec![],
        }
    }

    pub fn quarter(l: usize) -> Self {
        Geometry { pattern: Pattern::orthant(2, &[0, 1]), extents: vec![l, l], periodic: vec![], kgrid: vec![] }
    }

    pub fn open_dirs(&self) -> Vec<usize> {
        (0..self.pattern.dimension).filter(|i| !self.periodic.contains(i)).collect()
    }

    /// Coordinate window `[lo, lo + L)` per open direction, aligned with the
    /// pattern's own boundary when it has one along that axis.
    fn window(&self, i: usize) -> (i64, i64) {
        let l = self.extents[i] as i64;
        for c in &self.pattern.constraints {
            let nz: Vec<usize> = (0..c.normal.len()).filter(|&j| c.normal[j] != 0).collect();
            if nz == [i] {
                if c.normal[i] > 0 {
                    let lo = c.bound.div_euclid(c.normal[i]) + i64::from(c.bound.rem_euclid(c.normal[i]) != 0);
                    return (lo, lo + l);
                } else {
                    let hi = (-c.bound).div_euclid(-c.normal[i]);
                    return (hi - l + 1, hi + 1);
                }
            }
        }
        (0, l)
    }

    /// Sites in lexicographic order over the open directions; periodic components are 0.
    pub fn sites(&self) -> Vec<Vec<i64>> {
        let d = self.pattern.dimension;
        let open = self.open_dirs();
        let wins: Vec<(i64, i64)> = open.iter().map(|&i| self.window(i)).collect();
        let mut out = Vec::new();
        if open.is_empty() {
            out.push(vec![0; d]);
            return out;
        }
        let mut cur: Vec<i64> = wins.iter().map(|w| w.0).collect();
        loop {
            let mut x = vec![0; d];
            for (j, &i) in open.iter().enumerate() {
                x[i] = cur[j];
            }
            if self.pattern.contains(&x) {
                out.push(x);
            }
            let mut j = open.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                cur[j] += 1;
                if cur[j] < wins[j].1 {
                    break;
                }
                cur[j] = wins[j].0;
            }
        }
    }

    /// Grid point `j` of `n` samples: `k_j = −π + 2π j / n` (contains `−π` and `0` for even `n`).
    pub fn grid_point(j: usize, n: usize) -> f64 {
        -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / n as f64
    }

    /// All momentum tuples of the grid, last direction fastest.
    pub fn momenta(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![]];
        for &n in &self.kgrid {
            let mut next = Vec::with_capacity(out.len() * n);
            for k in &out {
                for j in 0..n {
                    let mut k2 = k.clone();
                    k2.push(Self::grid_point(j, n));
                    next.push(k2);
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct RealSpaceHamiltonian {
    pub sites: Vec<Vec<i64>>,
    pub internal_dim: usize,
    pub matrix: CsrMatrix,
    pub momentum: Vec<f64>,
}

impl RealSpaceHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows
    }

    pub fn from_dense(m: &CMat, internal_dim: usize) -> Self {
        let ns = m.nrows() / internal_dim;
        RealSpaceHamiltonian {
            sites: (0..ns as i64).map(|i| vec![i]).collect(),
            internal_dim,
            matrix: CsrMatrix::from_dense(m),
            momentum: vec![],
        }
    }

    /// `1_sites ⊗ op` as a dense matrix.
    pub fn lift_onsite(&self, op: &CMat) -> CMat {
        kron(&identity(self.sites.len()), op)
    }
}

pub fn instantiate(m: &HoppingModel, g: &Geometry, k: &[f64]) -> Result<RealSpaceHamiltonian> {
    let d = m.dimension;
    if g.pattern.dimension != d {
        return arg(format!("model dimension {d} differs from geometry dimension {}", g.pattern.dimension));
    }
    if k.len() != g.periodic.len() {
        return arg(format!("expected {} momenta, got {}", g.periodic.len(), k.len()));
    }
    let r = m.range();
    for i in g.open_dirs() {
        if (g.extents[i] as i64) < 2 * r + 1 {
            return arg(format!("box extent {} in direction {i} is below 2*range+1 = {}", g.extents[i], 2 * r + 1));
        }
    }
    let sites = g.sites();
    let index: HashMap<&[i64], usize> = sites.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let n = m.internal_dim;
    let mut kfull = vec![0.0; d];
    for (j, &p) in g.periodic.iter().enumerate() {
        kfull[p] = k[j];
    }
    let open = g.open_dirs();
    let mut trip = Vec::new();
    for (si, x) in sites.iter().enumerate() {
        for (delta, w) in &m.hoppings {
            // H_{x,x'} = w(x − x')
            let mut xp = x.clone();
            for &i in &open {
                xp[i] = x[i] - delta[i];
            }
            let Some(&sj) = index.get(xp.as_slice()) else { continue };
            let ph: f64 = g.periodic.iter().map(|&p| kfull[p] * delta[p] as f64).sum();
            let z = cx(ph.cos(), ph.sin());
            for a in 0..n {
                for b in 0..n {
                    let v = w[(a, b)];
                    if v != ZERO {
                        trip.push((si * n + a, sj * n + b, v * z));
                    }
                }
            }
        }
    }
    let dim = sites.len() * n;
    Ok(RealSpaceHamiltonian {
        sites,
        internal_dim: n,
        matrix: CsrMatrix::from_triplets(dim, dim, trip),
        momentum: k.to_vec(),
    })
}

/// The face generator `(S1 P_2 + P_2^⊥) ⊕ (S2 P_1 + P_1^⊥)` on an `l × l`
/// quarter, with `P_2` the projection onto the row `x2 = 0` and `P_1` onto the
/// column `x1 = 0`, placed in the chiral form `[[0, w*], [w, 0]]` on `C^2 ⊗ C^2`.
pub fn face_generator_layer(l: usize) -> RealSpaceHamiltonian {
    let g = Geometry::quarter(l);
    let sites = g.sites();
    let index: HashMap<&[i64], usize> = sites.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let ns = sites.len();
    // w acts on (site, copy) with copy ∈ {0, 1}
    let mut w: Vec<(usize, usize, c64)> = Vec::new();
    for (i, x) in sites.iter().enumerate() {
        // copy 0: shift along x1 on the row x2 = 0, identity elsewhere
        if x[1] == 0 {
            let src = [x[0] - 1, x[1]];
            if let Some(&j) = index.get(src.as_slice()) {
                w.push((2 * i, 2 * j, ONE));
            }
        } else {
            w.push((2 * i, 2 * i, ONE));
        }
        if x[0] == 0 {
            let src = [x[0], x[1] - 1];
            if let Some(&j) = index.get(src.as_slice()) {
                w.push((2 * i + 1, 2 * j + 1, ONE));
            }
        } else {
            w.push((2 * i + 1, 2 * i + 1, ONE));
        }
    }
    // chiral layout per site: (upper copy 0, upper copy 1, lower copy 0, lower copy 1)
    let n = 4;
    let mut t = Vec::new();
    for (r, c, v) in w {
        let (si, a) = (r / 2, r % 2);
        let (sj, b) = (c / 2, c % 2);
        t.push((si * n + 2 + a, sj * n + b, v));
        t.push((sj * n + b, si * n + 2 + a, v.conj()));
    }
    RealSpaceHamiltonian {
        sites,
        internal_dim: n,
        matrix: CsrMatrix::from_triplets(ns * n, ns * n, t),
        momentum: vec![],
    }
}

// ---- JSON specs ----

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    pub fn value(&self) -> c64 {
        match *self {
            Entry::Real(r) => cx(r, 0.0),
            Entry::Complex([a, b]) => cx(a, b),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HoppingSpec {
    pub delta: Vec<i64>,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: String,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub hoppings: Option<Vec<HoppingSpec>>,
}

impl ModelSpec {
    pub fn build(&self) -> Result<HoppingModel> {
        if self.model != "custom" {
            return builtin_model(&self.model, self.gamma.unwrap_or(0.0));
        }
        let hs = self.hoppings.as_ref().ok_or_else(|| Error::Argument("custom model needs hoppings".into()))?;
        let first = hs.first().ok_or_else(|| Error::Argument("custom model has no hoppings".into()))?;
        let (d, n) = (first.delta.len(), first.matrix.len());
        let mut m = HoppingModel::new("custom", d, n);
        for h in hs {
            if h.delta.len() != d || h.matrix.len() != n || h.matrix.iter().any(|r| r.len() != n) {
                return arg(format!("hopping at {:?} has inconsistent shape", h.delta));
            }
            m.add(&h.delta, &CMat::from_fn(n, n, |i, j| h.matrix[i][j].value()));
        }
        m.validate()?;
        Ok(m)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub dimension: usize,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    #[serde(rename = "box")]
    pub extents: Vec<usize>,
    #[serde(default)]
    pub periodic: Vec<usize>,
    #[serde(default)]
    pub kgrid: Vec<usize>,
}

impl GeometrySpec {
    pub fn build(&self) -> Result<Geometry> {
        let p = Pattern::new(self.dimension, self.constraints.clone())?;
        Geometry::new(p, self.extents.clone(), self.periodic.clone(), self.kgrid.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh;
    use std::f64::consts::PI;

    #[test]
    fn ham1_bloch_values() {
        let m = ham1(0.0);
        assert_eq!(m.hoppings.len(), 7);
        let ev = eigvalsh(m.bloch(&[0.0, 0.0, 0.0]).as_ref()).unwrap();
        for (a, b) in ev.iter().zip([-5.0, -5.0, 5.0, 5.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let ev = eigvalsh(m.bloch(&[PI, PI, PI]).as_ref()).unwrap();
        for (a, b) in ev.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_builtins() {
        for name in BUILTIN_MODELS {
            let m = builtin_model(name, 0.5).unwrap();
            assert!(m.hermiticity_defect() < 1e-15, "{name}");
        }
        assert!(builtin_model("nope", 0.0).is_err());
    }

    #[test]
    fn ham3_gamma_term() {
        let a = ham3(0.5);
        let b = ham3(0.0);
        let diff = |d: &[i64]| max_abs_diff(&a.hopping(d), &b.hopping(d));
        assert!(diff(&[1, 0, 0]) > 0.2 && diff(&[0, -1, 0]) > 0.2);
        assert!(diff(&[0, 0, 1]) < 1e-15 && diff(&[0, 0, 0]) < 1e-15);
    }

    #[test]
    fn bulk_instantiation_is_bloch() {
        let m = ham2(0.5);
        let g = Geometry::bulk(3, 4);
        let k = [0.3, -1.1, 2.0];
        let h = instantiate(&m, &g, &k).unwrap();
        assert!(max_abs_diff(&h.matrix.to_dense(), &m.bloch(&k)) < 1e-14);
    }

    #[test]
    fn geometry_sites() {
        let g = Geometry::wire(5, 8);
        assert_eq!(g.sites().len(), 25);
        let flipped = Geometry::new(Pattern::signed_orthant(&[-1, 1]), vec![4, 3], vec![], vec![]).unwrap();
        let s = flipped.sites();
        assert_eq!(s.len(), 12);
        assert!(s.iter().all(|x| x[0] <= 0 && x[1] >= 0));
        assert!(instantiate(&ham1(0.0), &Geometry::slab(3, 0, 2, 4), &[0.0, 0.0]).is_err());
        assert!(Geometry::new(Pattern::orthant(3, &[0]), vec![5, 1, 1], vec![0, 1], vec![4, 4]).is_err());
    }

    #[test]
    fn u_corner_is_unitary() {
        let u = u_corner();
        for k in [[0.1, 0.7], [2.0, -1.3], [PI, 0.0]] {
            assert!(crate::linalg::unitarity_defect(&u.bloch(&k)) < 1e-14);
        }
    }

    #[test]
    fn custom_spec_roundtrip() {
        let s: ModelSpec = serde_json::from_str(
            r#"{"model":"custom","hoppings":[{"delta":[0],"matrix":[[1,0],[0,-1]]},
               {"delta":[1],"matrix":[[0,[0,0.5]],[0,0]]},{"delta":[-1],"matrix":[[0,0],[[0,-0.5],0]]}]}"#,
        )
        .unwrap();
        let m = s.build().unwrap();
        assert_eq!(m.internal_dim, 2);
        assert!(m.hermiticity_defect() < 1e-15);
    }
}
