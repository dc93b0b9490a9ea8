//! Chern and winding numbers, the chirality-graded corner index, hinge
//! spectral flow, TRIM parities and the mod-2 bulk-corner parities.

use crate::error::{arg, Error, Result};
use crate::linalg::{adjoint, cx, det, eigh, max_abs_diff, mul, unitarity_defect, CMat, ZERO};
use crate::models::{instantiate, Geometry, HoppingModel, RealSpaceHamiltonian};
use crate::patterns::PointGroupElement;
use crate::spectral::{dense_eigh, gap_of, BandData, RegionPartition};
use crate::symmetry::{check_covariance, OnSiteOp, SymmetryAction};
use faer::c64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize)]
pub struct ChernPairing {
    pub value: i64,
    pub raw_value: f64,
    pub directions: Vec<usize>,
    pub grid: usize,
}

fn round_checked(raw: f64, grid: usize) -> Result<i64> {
    let v = raw.round();
    if (raw - v).abs() >= 0.1 {
        return Err(Error::Unconverged { raw, grid });
    }
    Ok(v as i64)
}

/// Orthonormal frame of the range of a projection.
fn frame_of(p: &CMat) -> Result<CMat> {
    let n = p.nrows();
    let herm = max_abs_diff(p, &adjoint(p));
    let idem = max_abs_diff(&mul(p, p), p);
    if herm > 1e-10 || idem > 1e-10 {
        return arg(format!("not an orthogonal projection (hermiticity {herm:e}, idempotence {idem:e})"));
    }
    let (vals, vecs) = eigh(p.as_ref())?;
    let idx: Vec<usize> = (0..n).filter(|&i| vals[i] > 0.5).collect();
    Ok(CMat::from_fn(n, idx.len(), |i, j| vecs[(i, idx[j])]))
}

fn link(a: &CMat, b: &CMat) -> c64 {
    let o = a.adjoint() * b;
    if o.nrows() == 0 {
        return cx(1.0, 0.0);
    }
    det(&o)
}

/// Plaquette sum over an `n1 × n2` periodic grid of frames (index `[i][j]`).
/// The orientation is fixed so that `Ch = (i/2π)∫ Tr P[∂1P, ∂2P]`.
pub fn chern_from_frames(frames: &[Vec<CMat>]) -> Result<f64> {
    let n1 = frames.len();
    let n2 = frames.first().map_or(0, |r| r.len());
    let rank = frames[0][0].ncols();
    for row in frames {
        for f in row {
            if f.ncols() != rank {
                return Err(Error::GapClosing(format!("projection rank jumps from {rank} to {}", f.ncols())));
            }
        }
    }
    let mut total = 0.0;
    for i in 0..n1 {
        for j in 0..n2 {
            let (ip, jp) = ((i + 1) % n1, (j + 1) % n2);
            let u = link(&frames[i][j], &frames[ip][j])
                * link(&frames[ip][j], &frames[ip][jp])
                * link(&frames[ip][jp], &frames[i][jp])
                * link(&frames[i][jp], &frames[i][j]);
            if u.norm() < 1e-12 {
                return Err(Error::GapClosing(format!("degenerate link at grid point ({i}, {j})")));
            }
            total += u.arg();
        }
    }
    Ok(-total / (2.0 * PI))
}

/// Chern number of a grid of projections over a 2-torus slice.
pub fn chern_number_2d(projections: &[Vec<CMat>], directions: [usize; 2]) -> Result<ChernPairing> {
    let n1 = projections.len();
    let n2 = projections.first().map_or(0, |r| r.len());
    if n1 < 12 || n2 < 12 {
        return arg(format!("Chern grid {n1}x{n2} is below 12x12"));
    }
    let frames: Vec<Vec<CMat>> =
        projections.iter().map(|r| r.iter().map(frame_of).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let raw = chern_from_frames(&frames)?;
    Ok(ChernPairing { value: round_checked(raw, n1)?, raw_value: raw, directions: directions.to_vec(), grid: n1 })
}

/// Negative-energy frame of `h`, or a gap-closing error.
pub fn occupied_frame(h: &CMat) -> Result<CMat> {
    let (vals, vecs) = eigh(h.as_ref())?;
    if let Some(e) = vals.iter().find(|e| e.abs() < 1e-9) {
        return Err(Error::GapClosing(format!("eigenvalue {e:e} at the Fermi level")));
    }
    let occ: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] < 0.0).collect();
    Ok(CMat::from_fn(h.nrows(), occ.len(), |i, j| vecs[(i, occ[j])]))
}

/// Chern number of the occupied bands on the plane spanned by momenta
/// `dirs`, other momenta fixed at `base`, computed at `n` and `2n` and required
/// to agree.
pub fn model_plane_chern(m: &HoppingModel, dirs: [usize; 2], base: &[f64], n: usize) -> Result<ChernPairing> {
    let run = |n: usize| -> Result<f64> {
        let mut frames = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut k = base.to_vec();
                k[dirs[0]] = 2.0 * PI * i as f64 / n as f64;
                k[dirs[1]] = 2.0 * PI * j as f64 / n as f64;
                row.push(occupied_frame(&m.bloch(&k))?);
            }
            frames.push(row);
        }
        chern_from_frames(&frames)
    };
    let raw = run(n)?;
    let fine = run(2 * n)?;
    let v = round_checked(raw, n)?;
    if round_checked(fine, 2 * n)? != v {
        return Err(Error::Unconverged { raw, grid: n });
    }
    Ok(ChernPairing { value: v, raw_value: fine, directions: dirs.to_vec(), grid: 2 * n })
}

/// Phase winding of `det u` around a closed loop of unitaries.
pub fn winding_number(us: &[CMat]) -> Result<ChernPairing> {
    if us.len() < 3 {
        return arg("winding needs at least three samples");
    }
    let mut raw = 0.0;
    for (j, u) in us.iter().enumerate() {
        let d = unitarity_defect(u);
        if d > 1e-10 {
            return arg(format!("sample {j} is not unitary (defect {d:e})"));
        }
        let next = &us[(j + 1) % us.len()];
        raw += (det(next) / det(u)).arg();
    }
    raw /= 2.0 * PI;
    Ok(ChernPairing { value: round_checked(raw, us.len())?, raw_value: raw, directions: vec![], grid: us.len() })
}

/// Samples of `m.bloch` along the closed loop `k(t) = t·v`, `t ∈ [0, 2π)`.
pub fn loop_samples(m: &HoppingModel, v: &[f64], n: usize) -> Vec<CMat> {
    (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            m.bloch(&v.iter().map(|x| x * t).collect::<Vec<_>>())
        })
        .collect()
}

/// Windings of the blocks of `u` on the eigenspaces of the Hermitian `op`,
/// which must commute with every sample; eigenvalues ascending.
pub fn block_windings(us: &[CMat], op: &CMat) -> Result<Vec<(f64, i64)>> {
    let (vals, vecs) = eigh(op.as_ref())?;
    let mut out = Vec::new();
    let mut start = 0;
    while start < vals.len() {
        let mut end = start + 1;
        while end < vals.len() && (vals[end] - vals[start]).abs() < 1e-8 {
            end += 1;
        }
        let q = CMat::from_fn(op.nrows(), end - start, |i, j| vecs[(i, start + j)]);
        let blocks: Vec<CMat> = us.iter().map(|u| q.adjoint() * u * &q).collect();
        let w = winding_number(&blocks)?;
        out.push((vals[start], w.value));
        start = end;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerIndexReport {
    pub index: i64,
    /// `(energy, chirality, corner weight)` for each kernel state.
    pub kernel: Vec<(f64, f64, f64)>,
    pub max_kernel_energy: f64,
    pub min_corner_weight: f64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CornerIndexOptions {
    pub kernel_threshold: f64,
    pub warning_threshold: f64,
    pub edge_gap_threshold: f64,
    pub corner_size: i64,
}

impl Default for CornerIndexOptions {
    fn default() -> Self {
        CornerIndexOptions { kernel_threshold: 1e-6, warning_threshold: 1e-3, edge_gap_threshold: 0.05, corner_size: 4 }
    }
}

/// Smallest `|E|` of the half-space restrictions of a 2D model along both axes.
pub fn edge_gap(m: &HoppingModel, depth: usize, nk: usize) -> Result<f64> {
    let mut g = f64::INFINITY;
    for dir in 0..2 {
        let geo = Geometry::slab(2, dir, depth, nk);
        for k in geo.momenta() {
            let s = dense_eigh(&instantiate(m, &geo, &k)?)?;
            g = g.min(s.eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b.abs())));
        }
    }
    Ok(g)
}

/// Chirality-graded count of zero modes localized in the corner square
/// `[0, corner_size)^2` of a quarter geometry.
pub fn corner_index(
    h: &RealSpaceHamiltonian,
    chirality: &CMat,
    edge_gap: f64,
    opts: &CornerIndexOptions,
) -> Result<CornerIndexReport> {
    if edge_gap < opts.edge_gap_threshold {
        return Err(Error::EdgeGap { gap: edge_gap, threshold: opts.edge_gap_threshold });
    }
    if chirality.nrows() != h.internal_dim || chirality.ncols() != h.internal_dim {
        return Err(Error::Argument(format!(
            "chirality operator is {}x{}, internal dimension is {}",
            chirality.nrows(),
            chirality.ncols(),
            h.internal_dim
        )));
    }
    let dense = h.matrix.to_dense();
    let gam = h.lift_onsite(chirality);
    let anti = &gam * &dense * &gam;
    let defect = crate::linalg::max_abs(&crate::linalg::add(&anti, &dense));
    if defect > 1e-10 {
        return Err(Error::NotCovariant(format!("gamma H gamma != -H (defect {defect:e})")));
    }
    let s = dense_eigh(h)?;
    let vecs = s.eigenvectors.as_ref().expect("dense vectors");
    let mut warnings = Vec::new();
    let kidx: Vec<usize> = (0..s.len()).filter(|&i| s.eigenvalues[i].abs() < opts.kernel_threshold).collect();
    for &e in &s.eigenvalues {
        if e.abs() >= opts.kernel_threshold && e.abs() < opts.warning_threshold {
            warnings.push(format!("eigenvalue {e:e} inside the kernel warning band"));
        }
    }
    let n = h.dim();
    let v = CMat::from_fn(n, kidx.len(), |i, j| vecs[(i, kidx[j])]);
    // split the kernel by chirality, then localize each sector on the corner
    let g = v.adjoint() * &gam * &v;
    let (gvals, gvecs) = eigh(g.as_ref())?;
    let regions = crate::spectral::corner_region(&h.sites, opts.corner_size);
    let nd = h.internal_dim;
    let corner_proj = |x: &CMat| -> CMat {
        let mut y = x.clone();
        for (s, &r) in regions.site_region.iter().enumerate() {
            if r != 0 {
                for a in 0..nd {
                    for j in 0..y.ncols() {
                        y[(s * nd + a, j)] = ZERO;
                    }
                }
            }
        }
        y
    };
    let mut kernel = Vec::new();
    let mut index = 0i64;
    let mut min_w = f64::INFINITY;
    for sign in [1.0f64, -1.0] {
        let sel: Vec<usize> = (0..gvals.len()).filter(|&i| (gvals[i] - sign).abs() < 1e-6).collect();
        if sel.is_empty() {
            continue;
        }
        let q = &v * CMat::from_fn(gvecs.nrows(), sel.len(), |i, j| gvecs[(i, sel[j])]);
        let c = q.adjoint() * corner_proj(&q);
        let c = CMat::from_fn(c.nrows(), c.ncols(), |i, j| (c[(i, j)] + c[(j, i)].conj()) * cx(0.5, 0.0));
        let (w, wv) = eigh(c.as_ref())?;
        let x = &q * &wv;
        let hx = h.matrix.apply(x.as_ref());
        for (j, &wj) in w.iter().enumerate() {
            let mut e2 = 0.0;
            let mut nrm = 0.0;
            for i in 0..n {
                e2 += (x[(i, j)].conj() * hx[(i, j)]).re;
                nrm += x[(i, j)].norm_sqr();
            }
            let energy = e2 / nrm;
            if wj > 0.5 {
                index += sign as i64;
                min_w = min_w.min(wj);
                kernel.push((energy, sign, wj));
                if wj < 0.9 {
                    warnings.push(format!("kernel state with corner weight {wj:.3}"));
                }
            } else if wj > 0.1 {
                warnings.push(format!("kernel state with ambiguous corner weight {wj:.3}"));
            }
        }
    }
    if gvals.iter().any(|&x| (x.abs() - 1.0).abs() > 1e-6) {
        warnings.push("kernel is not spanned by chirality eigenvectors".into());
    }
    let max_e = kernel.iter().fold(0.0f64, |a, k| a.max(k.0.abs()));
    Ok(CornerIndexReport { index, kernel, max_kernel_energy: max_e, min_corner_weight: min_w, warnings })
}

#[derive(Clone, Debug, Serialize)]
pub struct Crossing {
    pub k_index: usize,
    pub hinge: usize,
    pub sign: i64,
    pub energies: (f64, f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct HingeReport {
    pub labels: Vec<String>,
    pub per_hinge: Vec<i64>,
    pub adjacency_parities: Vec<u8>,
    pub kirchhoff_sum: i64,
    pub crossings: Vec<Crossing>,
    pub min_hinge_weight: f64,
}

#[derive(Clone, Debug)]
pub struct FlowOptions {
    pub window: f64,
    pub weight_threshold: f64,
}

struct LocalState {
    energy: f64,
    vec: Vec<c64>,
    weights: Vec<f64>,
}

/// Rotates each degenerate cluster into eigenvectors of `Σ_λ λ P_λ` so the
/// states separate by hinge.
fn localize(vals: &[f64], vecs: &CMat, regions: &RegionPartition, hinges: &[usize], nd: usize) -> Result<Vec<LocalState>> {
    let n = vecs.nrows();
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
    let mut s = 0;
    while s < order.len() {
        let mut e = s + 1;
        while e < order.len() && (vals[order[e]] - vals[order[s]]).abs() < 1e-7 {
            e += 1;
        }
        let q = CMat::from_fn(n, e - s, |i, j| vecs[(i, order[s + j])]);
        let rotated = if e - s > 1 {
            let mut lq = CMat::zeros(n, e - s);
            for (site, &r) in regions.site_region.iter().enumerate() {
                if let Some(pos) = hinges.iter().position(|&h| h == r) {
                    let lam = cx((pos + 1) as f64, 0.0);
                    for a in 0..nd {
                        for j in 0..e - s {
                            lq[(site * nd + a, j)] = q[(site * nd + a, j)] * lam;
                        }
                    }
                }
            }
            let l = q.adjoint() * &lq;
            let l = CMat::from_fn(l.nrows(), l.ncols(), |i, j| (l[(i, j)] + l[(j, i)].conj()) * cx(0.5, 0.0));
            let (_, w) = eigh(l.as_ref())?;
            &q * &w
        } else {
            q
        };
        let weights = regions.weights(rotated.as_ref(), nd);
        for j in 0..rotated.ncols() {
            let e_j = {
                let idx: Vec<f64> = (s..e).map(|t| vals[order[t]]).collect();
                idx.iter().sum::<f64>() / idx.len() as f64
            };
            out.push(LocalState {
                energy: e_j,
                vec: (0..n).map(|i| rotated[(i, j)]).collect(),
                weights: hinges.iter().map(|&h| weights[j][h]).collect(),
            });
        }
        s = e;
    }
    Ok(out)
}

fn overlap(a: &[c64], b: &[c64]) -> f64 {
    let mut s = ZERO;
    for (x, y) in a.iter().zip(b) {
        s += x.conj() * y;
    }
    s.norm_sqr()
}

/// Signed E = 0 crossings per hinge along a closed k loop. `bd` must carry
/// eigenvectors; `hinges` names the four hinge regions in cyclic order.
pub fn hinge_spectral_flow(
    bd: &BandData,
    regions: &RegionPartition,
    hinges: [&str; 4],
    internal_dim: usize,
    opts: &FlowOptions,
) -> Result<HingeReport> {
    let vectors = bd.vectors.as_ref().ok_or_else(|| Error::Argument("band data carries no eigenvectors".into()))?;
    let hidx: Vec<usize> = hinges
        .iter()
        .map(|h| regions.index(h).ok_or_else(|| Error::Argument(format!("no region named {h}"))))
        .collect::<Result<_>>()?;
    let nk = bd.bands.len();
    if nk < 2 {
        return arg("spectral flow needs at least two momenta");
    }
    let mut states = Vec::with_capacity(nk);
    let mut min_w = f64::INFINITY;
    for (ki, (vals, vecs)) in bd.bands.iter().zip(vectors).enumerate() {
        let ls = localize(vals, vecs, regions, &hidx, internal_dim)?;
        let inwin: Vec<&LocalState> = ls.iter().filter(|s| s.energy.abs() < opts.window).collect();
        if inwin.len() == ls.len() && !ls.is_empty() {
            return arg(format!(
                "all {} computed states at k index {ki} lie inside the window; request more states",
                ls.len()
            ));
        }
        for s in inwin {
            let w = s.weights.iter().cloned().fold(0.0, f64::max);
            min_w = min_w.min(w);
            if w < opts.weight_threshold {
                return Err(Error::FacesNotGapped(format!(
                    "state at E = {:.4} (k index {ki}) has hinge weights {:?}",
                    s.energy, s.weights
                )));
            }
        }
        states.push(ls);
    }
    let mut c = [0i64; 4];
    let mut crossings = Vec::new();
    for ki in 0..nk {
        let a = &states[ki];
        let b = &states[(ki + 1) % nk];
        for (ia, sa) in a.iter().enumerate() {
            if sa.energy.abs() >= opts.window {
                continue;
            }
            let (ib, best) = b
                .iter()
                .enumerate()
                .map(|(i, sb)| (i, overlap(&sa.vec, &sb.vec)))
                .fold((usize::MAX, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= 0.5 {
                return Err(Error::Consistency(format!(
                    "state {ia} at k index {ki} (E = {:.4}) has no continuation (best overlap {best:.3})",
                    sa.energy
                )));
            }
            let sb = &b[ib];
            if sa.energy.signum() == sb.energy.signum() {
                continue;
            }
            let avg: Vec<f64> = sa.weights.iter().zip(&sb.weights).map(|(x, y)| 0.5 * (x + y)).collect();
            let Some(h) = (0..4).find(|&h| avg[h] > opts.weight_threshold) else {
                return Err(Error::AmbiguousHinge { k_index: ki, band: ia, weights: avg });
            };
            let sign = if sb.energy > sa.energy { 1 } else { -1 };
            c[h] += sign;
            crossings.push(Crossing { k_index: ki, hinge: h, sign, energies: (sa.energy, sb.energy) });
        }
    }
    let adjacency_parities = (0..4).map(|l| (c[l] + c[(l + 1) % 4]).rem_euclid(2) as u8).collect();
    Ok(HingeReport {
        labels: hinges.iter().map(|s| s.to_string()).collect(),
        per_hinge: c.to_vec(),
        adjacency_parities,
        kirchhoff_sum: c.iter().sum(),
        crossings,
        min_hinge_weight: min_w,
    })
}

/// `k_j = −π + 2π (j + ½)/n`, which avoids the time-reversal points.
pub fn offset_grid(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|j| vec![-PI + 2.0 * PI * (j as f64 + 0.5) / n as f64]).collect()
}

/// Three quarters of the smallest slab gap over both side orientations of a
/// wire in the x1–x2 plane.
pub fn face_window(m: &HoppingModel, depth: usize, nk: usize) -> Result<f64> {
    let mut g = f64::INFINITY;
    for dir in 0..2 {
        let geo = Geometry::slab(3, dir, depth, nk);
        for k in geo.momenta() {
            let s = dense_eigh(&instantiate(m, &geo, &k)?)?;
            g = g.min(s.eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b.abs())));
        }
    }
    Ok(0.75 * g)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrimReport {
    pub n_a: Vec<usize>,
    pub sum: usize,
    pub cs_parity: Option<u8>,
    pub weak_chern: Vec<i64>,
}

pub fn trim_points() -> Vec<[f64; 3]> {
    (0..8).map(|a| [PI * (a & 1) as f64, PI * ((a >> 1) & 1) as f64, PI * ((a >> 2) & 1) as f64]).collect()
}

pub fn trim_parities(m: &HoppingModel, inversion_u: &CMat) -> Result<TrimReport> {
    if m.dimension != 3 {
        return arg("TRIM parities need a 3D model");
    }
    let act = SymmetryAction::new("inversion", PointGroupElement::inversion(3), OnSiteOp::unitary(inversion_u.clone()))?;
    let cov = check_covariance(m, &act)?;
    if !cov.pass {
        return Err(Error::NotCovariant(format!("model is not inversion covariant (deviation {:e})", cov.max_deviation)));
    }
    let mut n_a = Vec::with_capacity(8);
    for xi in trim_points() {
        let q = occupied_frame(&m.bloch(&xi))?;
        let r = q.adjoint() * inversion_u * &q;
        let inv = unitarity_defect(&r);
        if inv > 1e-8 {
            return Err(Error::Consistency(format!("occupied space at {xi:?} is not inversion invariant")));
        }
        let rh = CMat::from_fn(r.nrows(), r.ncols(), |i, j| (r[(i, j)] + r[(j, i)].conj()) * cx(0.5, 0.0));
        let (ev, _) = eigh(rh.as_ref())?;
        if ev.iter().any(|e| (e.abs() - 1.0).abs() > 1e-8) {
            return Err(Error::Consistency(format!("inversion eigenvalues at {xi:?} are not ±1")));
        }
        n_a.push(ev.iter().filter(|&&e| e < 0.0).count());
    }
    let sum: usize = n_a.iter().sum();
    if sum % 4 != 0 && sum % 4 != 2 {
        return Err(Error::SymmetryInconsistent(format!("sum of n_a = {sum} is odd")));
    }
    let mut weak = Vec::new();
    for dirs in [[0, 1], [1, 2], [0, 2]] {
        weak.push(model_plane_chern(m, dirs, &[0.0, 0.0, 0.0], 16)?.value);
    }
    let cs_parity = weak.iter().all(|&c| c == 0).then_some(((sum % 4) / 2) as u8);
    Ok(TrimReport { n_a, sum, cs_parity, weak_chern: weak })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryClass {
    Inversion,
    C2T,
    C4T,
}

impl std::str::FromStr for SymmetryClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inversion" => Ok(Self::Inversion),
            "C2T" => Ok(Self::C2T),
            "C4T" => Ok(Self::C4T),
            _ => Err(Error::Unknown(format!("symmetry class '{s}'"))),
        }
    }
}

/// Class of the hinge data in `K / Im ∂^{FC} ≅ Z_2`.
pub fn bulk_corner_parity(c: &[i64], class: SymmetryClass) -> Result<u8> {
    if c.len() != 4 {
        return arg("expected four hinge values");
    }
    match class {
        SymmetryClass::Inversion | SymmetryClass::C2T => {
            if (0..4).any(|l| c[(l + 2) % 4] != -c[l]) {
                return Err(Error::SymmetryInconsistent(format!("{c:?} violates c(l+2) = -c(l)")));
            }
            Ok((c[0] + c[1]).rem_euclid(2) as u8)
        }
        SymmetryClass::C4T => {
            if (0..4).any(|l| c[(l + 1) % 4].abs() != c[l].abs() || c[(l + 2) % 4] != c[l]) {
                return Err(Error::SymmetryInconsistent(format!("{c:?} is not C4T-related")));
            }
            Ok(c[0].rem_euclid(2) as u8)
        }
    }
}

/// Hinge weight of a set of eigenvectors in a region, summed over the given regions.
pub fn region_weight(vecs: &CMat, regions: &RegionPartition, names: &[&str], nd: usize) -> Vec<f64> {
    let idx: Vec<usize> = names.iter().filter_map(|n| regions.index(n)).collect();
    regions.weights(vecs.as_ref(), nd).iter().map(|w| idx.iter().map(|&i| w[i]).sum()).collect()
}

pub fn bulk_gap(vals: &[f64]) -> f64 {
    gap_of(vals, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, pauli, identity, add, scale};
    use crate::models::{ham1, u_corner, u_face, builtin_model};

    fn two_band(k1: f64, k2: f64) -> CMat {
        add(
            &add(&scale(&pauli(1), cx(k1.sin(), 0.0)), &scale(&pauli(2), cx(k2.sin(), 0.0))),
            &scale(&pauli(3), cx(1.0 + k1.cos() + k2.cos(), 0.0)),
        )
    }

    #[test]
    fn two_band_chern() {
        let n = 24;
        let projs: Vec<Vec<CMat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let f = occupied_frame(&two_band(2.0 * PI * i as f64 / n as f64, 2.0 * PI * j as f64 / n as f64)).unwrap();
                        &f * f.adjoint()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(chern_number_2d(&projs, [0, 1]).unwrap().value, -1);
        let constant: Vec<Vec<CMat>> = (0..12).map(|_| (0..12).map(|_| kron(&pauli(0), &identity(1)).clone()).collect()).collect();
        assert_eq!(chern_number_2d(&constant, [0, 1]).unwrap().value, 0);
    }

    #[test]
    fn windings() {
        let us: Vec<CMat> = (0..16).map(|j| scale(&identity(1), cx((j as f64 * PI / 8.0).cos(), (j as f64 * PI / 8.0).sin()))).collect();
        assert_eq!(winding_number(&us).unwrap().value, 1);
        let uf = u_face();
        assert_eq!(winding_number(&loop_samples(&uf, &[1.0, 0.0], 32)).unwrap().value, 1);
        assert_eq!(winding_number(&loop_samples(&uf, &[0.0, 1.0], 32)).unwrap().value, 1);
        let m = crate::linalg::pauli(3);
        let b = block_windings(&loop_samples(&u_corner(), &[1.0, 1.0], 32), &m).unwrap();
        assert_eq!(b, vec![(-1.0, 1), (1.0, -1)]);
    }

    #[test]
    fn ham1_trim() {
        let r = trim_parities(&ham1(0.5), &kron(&identity(2), &pauli(3))).unwrap();
        assert_eq!(r.cs_parity, Some(1));
        let at = builtin_model("atomic", 0.0).unwrap();
        let r = trim_parities(&at, &kron(&identity(2), &pauli(3))).unwrap();
        assert_eq!(r.cs_parity, Some(0));
        let r = trim_parities(&at, &identity(4)).unwrap();
        assert_eq!(r.n_a, vec![0; 8]);
    }

    #[test]
    fn parities() {
        assert_eq!(bulk_corner_parity(&[1, 0, -1, 0], SymmetryClass::Inversion).unwrap(), 1);
        assert_eq!(bulk_corner_parity(&[0, 0, 0, 0], SymmetryClass::C4T).unwrap(), 0);
        assert_eq!(bulk_corner_parity(&[1, -1, 1, -1], SymmetryClass::C4T).unwrap(), 1);
        assert!(bulk_corner_parity(&[1, 0, 1, 0], SymmetryClass::C2T).is_err());
    }
}
