//! Dense and folded near-zero eigensolvers, momentum-resolved band sweeps,
//! region weights and CSV output.

use crate::error::{arg, Error, Result};
use crate::linalg::{c64, cx, eigh, orthonormalize, CMat, CsrMatrix};
use crate::models::{instantiate, Geometry, HoppingModel, RealSpaceHamiltonian};
use faer::MatRef;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const DENSE_CAP: usize = 16384;
/// Below this dimension `bands` diagonalizes densely.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<CMat>,
    pub max_residual: f64,
    pub metadata: BTreeMap<String, String>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,energy\n");
        for (i, e) in self.eigenvalues.iter().enumerate() {
            let _ = writeln!(s, "{i},{e:.12e}");
        }
        s
    }

    /// Little-endian f64 pairs (re, im), column-major, plus a JSON descriptor.
    pub fn eigenvector_sidecar(&self) -> Option<(Vec<u8>, serde_json::Value)> {
        let v = self.eigenvectors.as_ref()?;
        let mut bytes = Vec::with_capacity(v.nrows() * v.ncols() * 16);
        for j in 0..v.ncols() {
            for i in 0..v.nrows() {
                bytes.extend_from_slice(&v[(i, j)].re.to_le_bytes());
                bytes.extend_from_slice(&v[(i, j)].im.to_le_bytes());
            }
        }
        let desc = serde_json::json!({
            "rows": v.nrows(), "cols": v.ncols(), "layout": "column-major",
            "dtype": "complex128 as little-endian float64 (re, im)",
        });
        Some((bytes, desc))
    }
}

fn residuals(h: &CsrMatrix, vals: &[f64], vecs: MatRef<'_, c64>) -> Vec<f64> {
    let hv = h.apply(vecs);
    (0..vecs.ncols())
        .map(|j| {
            let mut s = 0.0;
            for i in 0..vecs.nrows() {
                s += (hv[(i, j)] - vecs[(i, j)] * cx(vals[j], 0.0)).norm_sqr();
            }
            s.sqrt()
        })
        .collect()
}

/// Phase-fixes each vector (first significant entry real positive) and orders
/// exactly degenerate clusters by their leading coefficients.
fn canonicalize(vals: &mut [f64], vecs: &mut CMat) {
    let n = vecs.nrows();
    for j in 0..vecs.ncols() {
        if let Some(i) = (0..n).find(|&i| vecs[(i, j)].norm() > 1e-8) {
            let z = vecs[(i, j)];
            let ph = z.conj() * cx(1.0 / z.norm(), 0.0);
            for r in 0..n {
                vecs[(r, j)] *= ph;
            }
        }
    }
    let mut start = 0;
    while start < vals.len() {
        let mut end = start + 1;
        while end < vals.len() && (vals[end] - vals[start]).abs() < 1e-10 {
            end += 1;
        }
        if end - start > 1 {
            let key = |j: usize| -> Vec<f64> { (0..n.min(8)).map(|i| -vecs[(i, j)].norm()).collect() };
            let mut idx: Vec<usize> = (start..end).collect();
            idx.sort_by(|&a, &b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal));
            let cols: Vec<Vec<c64>> = idx.iter().map(|&j| (0..n).map(|i| vecs[(i, j)]).collect()).collect();
            for (off, c) in cols.into_iter().enumerate() {
                for i in 0..n {
                    vecs[(i, start + off)] = c[i];
                }
            }
        }
        start = end;
    }
}

pub fn dense_eigh_matrix(m: &CMat) -> Result<Spectrum> {
    if m.nrows() > DENSE_CAP {
        return Err(Error::DenseCap { dim: m.nrows(), cap: DENSE_CAP });
    }
    let (mut vals, mut vecs) = eigh(m.as_ref())?;
    canonicalize(&mut vals, &mut vecs);
    let csr = CsrMatrix::from_dense(m);
    let res = residuals(&csr, &vals, vecs.as_ref());
    Ok(Spectrum {
        eigenvalues: vals,
        eigenvectors: Some(vecs),
        max_residual: res.into_iter().fold(0.0, f64::max),
        metadata: BTreeMap::from([("solver".into(), "dense".into())]),
    })
}

pub fn dense_eigh(h: &RealSpaceHamiltonian) -> Result<Spectrum> {
    if h.dim() > DENSE_CAP {
        return Err(Error::DenseCap { dim: h.dim(), cap: DENSE_CAP });
    }
    let mut s = dense_eigh_matrix(&h.matrix.to_dense())?;
    if !h.momentum.is_empty() {
        s.metadata.insert("momentum".into(), format!("{:?}", h.momentum));
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct FoldedOptions {
    pub seed: u64,
    /// Extra block vectors beyond the requested count.
    pub guard: usize,
    /// Chebyshev degree per filter pass.
    pub degree: usize,
    pub max_passes: usize,
    /// Residual target relative to the row-norm estimate of `‖H‖`.
    pub tol: f64,
    /// Solve exactly when the block would cover the whole space.
    pub allow_dense: bool,
}

impl Default for FoldedOptions {
    fn default() -> Self {
        FoldedOptions { seed: 7, guard: 8, degree: 40, max_passes: 3000, tol: 1e-10, allow_dense: true }
    }
}

fn random_block(n: usize, b: usize, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(n, b, |_, _| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn lin2(a: &CMat, sa: f64, b: &CMat, sb: f64) -> CMat {
    CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * cx(sa, 0.0) + b[(i, j)] * cx(sb, 0.0))
}

fn select_smallest_abs(vals: &[f64], m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].abs().partial_cmp(&vals[b].abs()).unwrap().then(vals[a].partial_cmp(&vals[b]).unwrap()));
    idx.truncate(m);
    idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
    idx
}

fn finish(h: &CsrMatrix, vals: Vec<f64>, vecs: CMat, solver: &str, passes: usize, seed: u64) -> Spectrum {
    let mut vals = vals;
    let mut vecs = vecs;
    canonicalize(&mut vals, &mut vecs);
    let res = residuals(h, &vals, vecs.as_ref());
    Spectrum {
        eigenvalues: vals,
        eigenvectors: Some(vecs),
        max_residual: res.into_iter().fold(0.0, f64::max),
        metadata: BTreeMap::from([
            ("solver".into(), solver.into()),
            ("passes".into(), passes.to_string()),
            ("seed".into(), seed.to_string()),
        ]),
    }
}

/// The `m` eigenpairs of smallest `|λ|`, via Chebyshev-filtered subspace
/// iteration on `H²` followed by a Rayleigh–Ritz step with `H`.
pub fn folded_near_zero(h: &CsrMatrix, m: usize, opts: &FoldedOptions) -> Result<Spectrum> {
    folded_near_zero_warm(h, m, opts, None)
}

pub fn folded_near_zero_warm(h: &CsrMatrix, m: usize, opts: &FoldedOptions, start: Option<&CMat>) -> Result<Spectrum> {
    let n = h.nrows;
    if m == 0 || m > n {
        return arg(format!("requested {m} eigenpairs of a {n}-dimensional operator"));
    }
    if h.ncols != n {
        return arg("matrix is not square");
    }
    let herm = h.hermiticity_defect();
    if herm > 1e-10 * h.norm_bound().max(1.0) {
        return arg(format!("matrix is not Hermitian (defect {herm:e})"));
    }
    let norm_est = h.norm_lower().max(f64::MIN_POSITIVE);
    let target = opts.tol * norm_est;
    let mut b = (m + opts.guard.max(4)).min(n);
    if b >= n || n <= 2 * b {
        if !opts.allow_dense {
            b = b.min(n);
        } else {
            let d = h.to_dense();
            let (vals, vecs) = eigh(d.as_ref())?;
            let idx = select_smallest_abs(&vals, m);
            let v = CMat::from_fn(n, idx.len(), |i, j| vecs[(i, idx[j])]);
            let ev = idx.iter().map(|&i| vals[i]).collect();
            return Ok(finish(h, ev, v, "dense", 0, opts.seed));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut y = random_block(n, b, &mut rng);
    if let Some(s) = start {
        if s.nrows() == n {
            for j in 0..s.ncols().min(b) {
                for i in 0..n {
                    y[(i, j)] = s[(i, j)];
                }
            }
        }
    }
    if b >= n {
        y = crate::linalg::identity(n);
    }
    let mut y = orthonormalize(y.as_ref());
    let bmax = h.norm_bound().powi(2);
    let mut best = f64::INFINITY;
    for pass in 0..opts.max_passes {
        // Rayleigh–Ritz with H²
        let hy = h.apply(y.as_ref());
        let g = hy.adjoint() * &hy;
        let (theta, w) = eigh(g.as_ref())?;
        let yr = &y * &w;
        let hyr = &hy * &w;
        // cluster-complete prefix of the H² Ritz values
        let mut mp = m;
        while mp < b && theta[mp] <= theta[m - 1] * (1.0 + 1e-8) + 1e-14 * bmax {
            mp += 1;
        }
        if mp + 1 >= b && b < n {
            let extra = random_block(n, (b / 2).max(4).min(n - b), &mut rng);
            let mut cols: Vec<Vec<c64>> = (0..b).map(|j| (0..n).map(|i| yr[(i, j)]).collect()).collect();
            cols.extend((0..extra.ncols()).map(|j| (0..n).map(|i| extra[(i, j)]).collect()));
            b = cols.len();
            y = orthonormalize(CMat::from_fn(n, b, |i, j| cols[j][i]).as_ref());
            continue;
        }
        // Rayleigh–Ritz with H on the prefix
        let yp = yr.as_ref().subcols(0, mp).to_owned();
        let hyp = hyr.as_ref().subcols(0, mp).to_owned();
        let hs = yp.adjoint() * &hyp;
        let hs = CMat::from_fn(mp, mp, |i, j| (hs[(i, j)] + hs[(j, i)].conj()) * cx(0.5, 0.0));
        let (mu, v) = eigh(hs.as_ref())?;
        let idx = select_smallest_abs(&mu, m);
        let x = &yp * &v;
        let hx = &hyp * &v;
        let mut worst = 0.0f64;
        for &j in &idx {
            let mut s = 0.0;
            for i in 0..n {
                s += (hx[(i, j)] - x[(i, j)] * cx(mu[j], 0.0)).norm_sqr();
            }
            worst = worst.max(s.sqrt());
        }
        best = best.min(worst);
        if worst <= target || b >= n {
            let vecs = CMat::from_fn(n, idx.len(), |i, j| x[(i, idx[j])]);
            let vals = idx.iter().map(|&j| mu[j]).collect();
            return Ok(finish(h, vals, vecs, "folded-chebyshev", pass, opts.seed));
        }
        // Chebyshev filter damping [a, bmax] of H²
        let a = theta[b - 1].max(1e-300);
        if a >= bmax {
            return Err(Error::NoConvergence { iterations: pass, residual: best });
        }
        let e = (bmax - a) / 2.0;
        let c = (bmax + a) / 2.0;
        let sigma1 = -e / c;
        let apply_a = |z: &CMat| -> CMat { h.apply(h.apply(z.as_ref()).as_ref()) };
        let mut y0 = yr;
        let mut y1 = lin2(&apply_a(&y0), sigma1 / e, &y0, -c * sigma1 / e);
        let mut sigma = sigma1;
        for _ in 2..=opts.degree {
            let sn = 1.0 / (2.0 / sigma1 - sigma);
            let ay = apply_a(&y1);
            let t = lin2(&ay, 2.0 * sn / e, &y1, -2.0 * sn * c / e);
            let y2 = lin2(&t, 1.0, &y0, -sigma * sn);
            y0 = y1;
            y1 = y2;
            sigma = sn;
        }
        y = orthonormalize(y1.as_ref());
    }
    Err(Error::NoConvergence { iterations: opts.max_passes, residual: best })
}

/// Width of the largest open interval around `energy` free of eigenvalues.
pub fn gap_at(s: &Spectrum, energy: f64) -> f64 {
    gap_of(&s.eigenvalues, energy)
}

pub fn gap_of(vals: &[f64], energy: f64) -> f64 {
    if vals.iter().any(|v| (v - energy).abs() < 1e-10) {
        return 0.0;
    }
    let lo = vals.iter().filter(|&&v| v < energy).fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let hi = vals.iter().filter(|&&v| v > energy).fold(f64::INFINITY, |a, &b| a.min(b));
    hi - lo
}

/// Site → region assignment.
#[derive(Clone, Debug, Serialize)]
pub struct RegionPartition {
    pub names: Vec<String>,
    pub site_region: Vec<usize>,
}

impl RegionPartition {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weight of each column of `vecs` in each region.
    pub fn weights(&self, vecs: MatRef<'_, c64>, internal_dim: usize) -> Vec<Vec<f64>> {
        (0..vecs.ncols())
            .map(|j| {
                let mut w = vec![0.0; self.names.len()];
                for (s, &r) in self.site_region.iter().enumerate() {
                    for a in 0..internal_dim {
                        w[r] += vecs[(s * internal_dim + a, j)].norm_sqr();
                    }
                }
                w
            })
            .collect()
    }
}

/// Corner squares `h1..h4` of side `⌈L/4⌉` (counter-clockwise from low x1,
/// low x2), face shells `f1..f4` of depth 3 (bottom, right, top, left) and bulk,
/// for sites whose first two coordinates span an `L × L` square.
pub fn wire_regions(sites: &[Vec<i64>]) -> RegionPartition {
    let (x0, x1) = span(sites, 0);
    let (y0, y1) = span(sites, 1);
    let l = (x1 - x0 + 1).max(y1 - y0 + 1);
    let q = (l + 3) / 4;
    let depth = 3;
    let names: Vec<String> = ["h1", "h2", "h3", "h4", "f1", "f2", "f3", "f4", "bulk"].iter().map(|s| s.to_string()).collect();
    let site_region = sites
        .iter()
        .map(|s| {
            let (x, y) = (s[0] - x0, s[1] - y0);
            let lox = x < q;
            let hix = x >= l - q;
            let loy = y < q;
            let hiy = y >= l - q;
            match (lox, hix, loy, hiy) {
                (true, _, true, _) => 0,
                (_, true, true, _) => 1,
                (_, true, _, true) => 2,
                (true, _, _, true) => 3,
                _ if y < depth => 4,
                _ if x >= l - depth => 5,
                _ if y >= l - depth => 6,
                _ if x < depth => 7,
                _ => 8,
            }
        })
        .collect();
    RegionPartition { names, site_region }
}

/// The four hinge columns of a cube along x3 (corner squares of side `⌈L/4⌉`
/// in the x1–x2 plane, full height) and the rest.
pub fn cube_vertical_hinges(sites: &[Vec<i64>]) -> RegionPartition {
    let w = wire_regions(sites);
    let names: Vec<String> = ["h1", "h2", "h3", "h4", "rest"].iter().map(|s| s.to_string()).collect();
    let site_region = w.site_region.iter().map(|&r| r.min(4)).collect();
    RegionPartition { names, site_region }
}

/// Square `[0, r)^2` at the low corner versus everything else.
pub fn corner_region(sites: &[Vec<i64>], r: i64) -> RegionPartition {
    let (x0, _) = span(sites, 0);
    let (y0, _) = span(sites, 1);
    RegionPartition {
        names: vec!["corner".into(), "rest".into()],
        site_region: sites.iter().map(|s| usize::from(!(s[0] - x0 < r && s[1] - y0 < r))).collect(),
    }
}

fn span(sites: &[Vec<i64>], i: usize) -> (i64, i64) {
    let lo = sites.iter().map(|s| s[i]).min().unwrap_or(0);
    let hi = sites.iter().map(|s| s[i]).max().unwrap_or(0);
    (lo, hi)
}

#[derive(Clone, Debug)]
pub enum SolverChoice {
    /// Full dense spectrum (falls back to an error above the dense cap).
    Dense,
    /// `count` states nearest zero via the folded solver (dense below `DENSE_LIMIT`).
    NearZero { count: usize, options: FoldedOptions },
}

#[derive(Clone, Debug, Serialize)]
pub struct BandData {
    pub k_values: Vec<Vec<f64>>,
    pub bands: Vec<Vec<f64>>,
    pub region_names: Vec<String>,
    /// `weights[k][state][region]`.
    pub weights: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(skip)]
    pub vectors: Option<Vec<CMat>>,
}

impl BandData {
    pub fn min_abs(&self) -> f64 {
        self.bands.iter().flatten().fold(f64::INFINITY, |a, &b| a.min(b.abs()))
    }

    pub fn to_csv(&self) -> String {
        let nk = self.k_values.first().map_or(0, |k| k.len());
        let mut s = String::new();
        let mut head: Vec<String> = (1..=nk).map(|i| format!("k{i}")).collect();
        head.push("band".into());
        head.push("energy".into());
        head.extend(self.region_names.iter().map(|r| format!("{r}_weight")));
        s.push_str(&head.join(","));
        s.push('\n');
        for (ki, k) in self.k_values.iter().enumerate() {
            for (bi, e) in self.bands[ki].iter().enumerate() {
                let mut row: Vec<String> = k.iter().map(|v| format!("{v:.10}")).collect();
                row.push(bi.to_string());
                row.push(format!("{e:.12e}"));
                if let Some(w) = &self.weights {
                    row.extend(w[ki][bi].iter().map(|v| format!("{v:.8}")));
                }
                s.push_str(&row.join(","));
                s.push('\n');
            }
        }
        s
    }
}

fn solve_one(h: &RealSpaceHamiltonian, solver: &SolverChoice, warm: Option<&CMat>) -> Result<Spectrum> {
    match solver {
        SolverChoice::Dense => dense_eigh(h),
        SolverChoice::NearZero { count, options } => {
            if h.dim() <= DENSE_LIMIT.min(4 * count + 256) {
                let s = dense_eigh(h)?;
                let idx = select_smallest_abs(&s.eigenvalues, *count);
                let v = s.eigenvectors.as_ref().expect("dense vectors");
                Ok(Spectrum {
                    eigenvalues: idx.iter().map(|&i| s.eigenvalues[i]).collect(),
                    eigenvectors: Some(CMat::from_fn(v.nrows(), idx.len(), |r, j| v[(r, idx[j])])),
                    max_residual: s.max_residual,
                    metadata: s.metadata,
                })
            } else {
                folded_near_zero_warm(&h.matrix, *count, options, warm)
            }
        }
    }
}

/// Band sweep over explicit momenta, split across `workers` threads with a
/// deterministic merge by k index.
pub fn bands_at(
    m: &HoppingModel,
    g: &Geometry,
    momenta: &[Vec<f64>],
    regions: Option<&RegionPartition>,
    solver: &SolverChoice,
    workers: usize,
    keep_vectors: bool,
) -> Result<BandData> {
    if g.periodic.is_empty() {
        return arg("band sweep needs at least one periodic direction");
    }
    // a full dense sweep with nothing to weigh skips the eigenvectors
    let values_only = matches!(solver, SolverChoice::Dense) && regions.is_none() && !keep_vectors;
    let workers = workers.max(1).min(momenta.len().max(1));
    let chunk = momenta.len().div_ceil(workers);
    type Out = (Vec<f64>, Option<Vec<Vec<f64>>>, Option<CMat>);
    let results: Vec<Result<Vec<Out>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = momenta
            .chunks(chunk.max(1))
            .map(|ks| {
                scope.spawn(move || -> Result<Vec<Out>> {
                    let mut out = Vec::with_capacity(ks.len());
                    let mut warm: Option<CMat> = None;
                    for k in ks {
                        let h = instantiate(m, g, k)?;
                        if values_only {
                            if h.dim() > DENSE_CAP {
                                return Err(Error::DenseCap { dim: h.dim(), cap: DENSE_CAP });
                            }
                            let mut e = crate::linalg::eigvalsh(h.matrix.to_dense().as_ref())?;
                            e.sort_by(f64::total_cmp);
                            out.push((e, None, None));
                            continue;
                        }
                        let s = solve_one(&h, solver, warm.as_ref())?;
                        let vecs = s.eigenvectors.expect("solvers return vectors");
                        let w = regions.map(|r| r.weights(vecs.as_ref(), h.internal_dim));
                        warm = Some(vecs.clone());
                        out.push((s.eigenvalues, w, keep_vectors.then_some(vecs)));
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("band worker panicked")).collect()
    });
    let mut bands = Vec::new();
    let mut weights = Vec::new();
    let mut vectors = Vec::new();
    for r in results {
        for (e, w, v) in r? {
            bands.push(e);
            if let Some(w) = w {
                weights.push(w);
            }
            if let Some(v) = v {
                vectors.push(v);
            }
        }
    }
    Ok(BandData {
        k_values: momenta.to_vec(),
        bands,
        region_names: regions.map(|r| r.names.clone()).unwrap_or_default(),
        weights: regions.map(|_| weights),
        vectors: keep_vectors.then_some(vectors),
    })
}

pub fn bands(
    m: &HoppingModel,
    g: &Geometry,
    regions: Option<&RegionPartition>,
    solver: &SolverChoice,
    workers: usize,
) -> Result<BandData> {
    bands_at(m, g, &g.momenta(), regions, solver, workers, false)
}

/// Smallest `|E|` of the Bloch spectrum over a uniform `n^d` grid.
pub fn bulk_min_abs(m: &HoppingModel, n: usize) -> Result<(f64, Vec<f64>)> {
    let g = Geometry::bulk(m.dimension, n);
    let mut best = (f64::INFINITY, vec![]);
    for k in g.momenta() {
        for e in crate::linalg::eigvalsh(m.bloch(&k).as_ref())? {
            if e.abs() < best.0 {
                best = (e.abs(), k.clone());
            }
        }
    }
    Ok(best)
}

/// All Bloch eigenvalues over the uniform grid, flattened.
pub fn bulk_spectrum(m: &HoppingModel, n: usize) -> Result<Vec<f64>> {
    let g = Geometry::bulk(m.dimension, n);
    let mut out = Vec::new();
    for k in g.momenta() {
        out.extend(crate::linalg::eigvalsh(m.bloch(&k).as_ref())?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    #[test]
    fn sigma1_dense() {
        let s = dense_eigh_matrix(&pauli(1)).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14 && (s.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(s.max_residual < 1e-14);
        assert_eq!(gap_at(&s, 0.0), 2.0);
        assert_eq!(gap_of(&[-1.0, 0.0, 2.0], 0.0), 0.0);
    }

    #[test]
    fn diagonal_folded() {
        let mut d = CMat::zeros(3, 3);
        d[(0, 0)] = cx(-3.0, 0.0);
        d[(1, 1)] = cx(-1.0, 0.0);
        d[(2, 2)] = cx(2.0, 0.0);
        let s = folded_near_zero(&CsrMatrix::from_dense(&d), 1, &FoldedOptions::default()).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn wire_region_labels() {
        let g = Geometry::wire(8, 4);
        let r = wire_regions(&g.sites());
        let count = |k: usize| r.site_region.iter().filter(|&&x| x == k).count();
        assert_eq!(count(0), 4);
        assert_eq!(count(2), 4);
        assert_eq!(count(4), 16);
        assert_eq!(count(8), 4);
        assert_eq!(r.site_region.len(), 64);
    }
}
