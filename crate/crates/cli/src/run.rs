//! Task execution, artifact writing and the run manifest.

use crate::config::{CornerSpec, ExperimentConfig, FlowSpec, Task};
use hoti_core::invariants::{
    corner_index, edge_gap, face_window, hinge_spectral_flow, model_plane_chern, offset_grid, trim_parities,
    CornerIndexOptions, CornerIndexReport, FlowOptions, HingeReport,
};
use hoti_core::ktheory::presets::preset;
use hoti_core::ktheory::report::{report, report_for, KssReport};
use hoti_core::models::{chirality, face_generator_layer, instantiate, Geometry, HoppingModel};
use hoti_core::patterns::{box_corners, codimension_filtration, global_transversal, square_corners, Pattern, Transversal};
use hoti_core::spectral::{
    bands, bands_at, corner_region, cube_vertical_hinges, dense_eigh, folded_near_zero, wire_regions, BandData,
    FoldedOptions, RegionPartition, SolverChoice, Spectrum,
};
use hoti_core::symmetry::{builtin_action, builtin_rep, check_covariance, default_actions, verify_projective_relations};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug)]
pub enum RunError {
    Config(Vec<crate::config::FieldError>),
    Solver(hoti_core::Error),
    Io(std::io::Error),
}

impl From<hoti_core::Error> for RunError {
    fn from(e: hoti_core::Error) -> Self {
        RunError::Solver(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            _ => 3,
        }
    }

    /// Machine-readable payload for solver and I/O failures.
    pub fn payload(&self) -> Value {
        match self {
            RunError::Config(errs) => json!({
                "error": "Config",
                "fields": errs.iter().map(|e| json!({"path": e.path, "message": e.message})).collect::<Vec<_>>(),
            }),
            RunError::Solver(e) => json!({"error": error_kind(e), "message": e.to_string()}),
            RunError::Io(e) => json!({"error": "Io", "message": e.to_string()}),
        }
    }
}

pub fn error_kind(e: &hoti_core::Error) -> &'static str {
    use hoti_core::Error::*;
    match e {
        Argument(_) => "Argument",
        Unknown(_) => "Unknown",
        DenseCap { .. } => "DenseCap",
        NoConvergence { .. } => "NoConvergence",
        Eigen(_) => "Eigen",
        GapClosing(_) => "GapClosing",
        Unconverged { .. } => "Unconverged",
        EdgeGap { .. } => "EdgeGap",
        FacesNotGapped(_) => "FacesNotGapped",
        AmbiguousHinge { .. } => "AmbiguousHinge",
        SymmetryInconsistent(_) => "SymmetryInconsistent",
        NotCovariant(_) => "NotCovariant",
        Containment(_) => "Containment",
        NotExact(_) => "NotExact",
        Consistency(_) => "Consistency",
    }
}

/// In-memory result of one task, kept for callers that check predicates.
#[derive(Clone, Debug, Serialize)]
pub struct TaskResult {
    pub name: String,
    pub kind: String,
    pub files: Vec<String>,
    pub summary: Value,
    #[serde(skip)]
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub core_version: String,
    pub config_hash: String,
    pub seed: u64,
    pub workers: usize,
    pub config: Value,
    pub tasks: Vec<ManifestTask>,
    /// SHA-256 of every artifact; wall times are not part of the determinism guarantee.
    pub artifacts: std::collections::BTreeMap<String, String>,
    pub total_wall_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestTask {
    pub name: String,
    pub kind: String,
    pub files: Vec<String>,
    pub wall_seconds: f64,
}

pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub results: Vec<TaskResult>,
    pub manifest: Manifest,
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Validates and runs every task, writing artifacts and `manifest.json` into
/// the output directory (`out` wins over the config's own setting).
pub fn run(cfg: &ExperimentConfig, out: Option<&Path>) -> Result<RunOutcome, RunError> {
    let errs = cfg.validate();
    if !errs.is_empty() {
        return Err(RunError::Config(errs));
    }
    let out_dir = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.output.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(format!("out/{}", if cfg.name.is_empty() { "run" } else { &cfg.name })));
    std::fs::create_dir_all(&out_dir)?;
    let workers = cfg.workers.unwrap_or_else(default_workers);
    let start = Instant::now();
    let mut ctx = Ctx { cfg, out_dir: &out_dir, workers, artifacts: Default::default() };
    let mut results = Vec::new();
    for (i, t) in cfg.tasks.iter().enumerate() {
        let t0 = Instant::now();
        let mut r = ctx.task(i, t)?;
        r.wall_seconds = t0.elapsed().as_secs_f64();
        results.push(r);
    }
    let resolved = serde_json::to_value(cfg).expect("config serializes");
    let manifest = Manifest {
        tool: "hoti-lab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        core_version: hoti_core::VERSION.into(),
        config_hash: cfg.hash(),
        seed: cfg.seed,
        workers,
        config: resolved,
        tasks: results
            .iter()
            .map(|r| ManifestTask { name: r.name.clone(), kind: r.kind.clone(), files: r.files.clone(), wall_seconds: r.wall_seconds })
            .collect(),
        artifacts: ctx.artifacts,
        total_wall_seconds: start.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(out_dir.join("manifest.json"), text + "\n")?;
    Ok(RunOutcome { out_dir, results, manifest })
}

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    out_dir: &'a Path,
    workers: usize,
    artifacts: std::collections::BTreeMap<String, String>,
}

impl Ctx<'_> {
    fn write(&mut self, file: &str, bytes: &[u8], files: &mut Vec<String>) -> Result<(), RunError> {
        std::fs::write(self.out_dir.join(file), bytes)?;
        self.artifacts.insert(file.to_string(), format!("{:x}", Sha256::digest(bytes)));
        files.push(file.to_string());
        Ok(())
    }

    fn write_json(&mut self, file: &str, v: &Value, files: &mut Vec<String>) -> Result<(), RunError> {
        let text = serde_json::to_string_pretty(v).expect("json serializes") + "\n";
        self.write(file, text.as_bytes(), files)
    }

    fn folded(&self) -> FoldedOptions {
        let s = &self.cfg.solver;
        FoldedOptions {
            seed: self.cfg.seed,
            guard: s.guard,
            degree: s.degree,
            max_passes: s.max_passes,
            tol: s.tol,
            allow_dense: true,
        }
    }

    fn model(&self, t: &Task) -> Result<HoppingModel, RunError> {
        Ok(self.cfg.model_for(t).expect("validated").build()?)
    }

    fn task(&mut self, i: usize, t: &Task) -> Result<TaskResult, RunError> {
        let stem = t.stem(i);
        let mut files = Vec::new();
        let summary = match t {
            Task::Spectrum { geometry, states, regions, eigenvectors, .. } => {
                let m = self.model(t)?;
                let g = geometry.build(self.cfg.solver.grid)?;
                let h = instantiate(&m, &g, &[])?;
                let s = match states {
                    Some(n) => folded_near_zero(&h.matrix, *n, &self.folded())?,
                    None => dense_eigh(&h)?,
                };
                let part = regions.as_deref().and_then(|r| partition(r, &h.sites));
                let w = match (&part, &s.eigenvectors) {
                    (Some(p), Some(v)) => Some(p.weights(v.as_ref(), h.internal_dim)),
                    _ => None,
                };
                self.write(&format!("{stem}.csv"), spectrum_csv(&s, part.as_ref(), w.as_deref()).as_bytes(), &mut files)?;
                if *eigenvectors {
                    if let Some((bytes, mut desc)) = s.eigenvector_sidecar() {
                        desc["sites"] = json!(h.sites);
                        desc["internal_dim"] = json!(h.internal_dim);
                        self.write(&format!("{stem}.eigenvectors.bin"), &bytes, &mut files)?;
                        self.write_json(&format!("{stem}.eigenvectors.json"), &desc, &mut files)?;
                    }
                }
                json!({
                    "dimension": h.dim(),
                    "states": s.len(),
                    "min_abs": s.eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b.abs())),
                    "max_residual": s.max_residual,
                    "regions": part.as_ref().map(|p| p.names.clone()),
                    "weights": w,
                    "eigenvalues": if states.is_some() { json!(s.eigenvalues) } else { Value::Null },
                })
            }
            Task::Bands { geometry, states, regions, .. } => {
                let m = self.model(t)?;
                let g = geometry.build(self.cfg.grid_for(t))?;
                let part = regions.as_deref().and_then(|r| partition(r, &g.sites()));
                let solver = match states {
                    Some(n) => SolverChoice::NearZero { count: *n, options: self.folded() },
                    None => SolverChoice::Dense,
                };
                let bd = bands(&m, &g, part.as_ref(), &solver, self.workers)?;
                self.write(&format!("{stem}.csv"), bd.to_csv().as_bytes(), &mut files)?;
                json!({"kpoints": bd.k_values.len(), "min_abs": bd.min_abs()})
            }
            Task::Invariants { chern, trim, hinges, corner, .. } => {
                let m = self.model(t)?;
                let mut v = serde_json::Map::new();
                if !chern.is_empty() {
                    let base = vec![0.0; m.dimension];
                    let mut list = Vec::new();
                    for dirs in chern {
                        list.push(serde_json::to_value(model_plane_chern(&m, *dirs, &base, self.cfg.solver.grid)?).unwrap());
                    }
                    v.insert("chern".into(), Value::Array(list));
                }
                if let Some(a) = trim {
                    let act = builtin_action(a)?;
                    v.insert("trim".into(), serde_json::to_value(trim_parities(&m, &act.op.matrix)?).unwrap());
                }
                if let Some(spec) = hinges {
                    let (bd, rep) = hinge_flow(&m, spec, &self.folded(), self.workers)?;
                    self.write(&format!("{stem}-wire.csv"), bd.to_csv().as_bytes(), &mut files)?;
                    v.insert("hinges".into(), hinge_json(&rep, &bd));
                }
                if let Some(c) = corner {
                    let (r, face) = corner_reports(&m, c)?;
                    let mut cv = serde_json::to_value(&r).unwrap();
                    if let Some(f) = face {
                        cv["face_layer"] = serde_json::to_value(&f).unwrap();
                    }
                    v.insert("corner".into(), cv);
                }
                let v = Value::Object(v);
                self.write_json(&format!("{stem}.json"), &v, &mut files)?;
                v
            }
            Task::Kss { preset: name, spec, hinge, .. } => {
                let rep = kss_report(name.as_deref(), spec.as_ref(), *hinge)?;
                let v = serde_json::to_value(&rep).unwrap();
                self.write_json(&format!("{stem}.json"), &v, &mut files)?;
                v
            }
            Task::Transversal { preset: name, patterns, .. } => {
                let seeds = match name.as_deref() {
                    Some(p) => transversal_preset(p).expect("validated"),
                    None => patterns.clone(),
                };
                let v = transversal_json(&global_transversal(&seeds)?);
                self.write_json(&format!("{stem}.json"), &v, &mut files)?;
                v
            }
            Task::SymmetryCheck { actions, .. } => {
                let m = self.model(t)?;
                let names: Vec<String> = if actions.is_empty() {
                    default_actions(&m.name).iter().map(|s| s.to_string()).collect()
                } else {
                    actions.clone()
                };
                let v = symmetry_json(&m, &names)?;
                self.write_json(&format!("{stem}.json"), &v, &mut files)?;
                v
            }
        };
        Ok(TaskResult { name: stem, kind: t.kind().into(), files, summary, wall_seconds: 0.0 })
    }
}

fn partition(kind: &str, sites: &[Vec<i64>]) -> Option<RegionPartition> {
    match kind {
        "wire" => Some(wire_regions(sites)),
        "cube-hinges" => Some(cube_vertical_hinges(sites)),
        "corner" => Some(corner_region(sites, 4)),
        _ => None,
    }
}

fn spectrum_csv(s: &Spectrum, part: Option<&RegionPartition>, w: Option<&[Vec<f64>]>) -> String {
    let (Some(p), Some(w)) = (part, w) else {
        return s.to_csv();
    };
    let mut out = String::from("index,energy");
    for n in &p.names {
        let _ = write!(out, ",{n}_weight");
    }
    out.push('\n');
    for (i, e) in s.eigenvalues.iter().enumerate() {
        let _ = write!(out, "{i},{e:.12e}");
        for x in &w[i] {
            let _ = write!(out, ",{x:.8}");
        }
        out.push('\n');
    }
    out
}

/// Below this the slab spectra count as gapless and no flow is defined.
pub const MIN_FACE_WINDOW: f64 = 0.02;

/// Wire band sweep on the offset grid and the per-hinge spectral flow.
pub fn hinge_flow(
    m: &HoppingModel,
    spec: &FlowSpec,
    opts: &FoldedOptions,
    workers: usize,
) -> hoti_core::Result<(BandData, HingeReport)> {
    let g = Geometry::wire(spec.size, spec.kpoints);
    let regions = wire_regions(&g.sites());
    let solver = SolverChoice::NearZero { count: spec.states, options: opts.clone() };
    let bd = bands_at(m, &g, &offset_grid(spec.kpoints), Some(&regions), &solver, workers, true)?;
    let window = face_window(m, 24, 24)?;
    if window < MIN_FACE_WINDOW {
        return Err(hoti_core::Error::FacesNotGapped(format!("slab gap window {window:.2e} is closed")));
    }
    let rep = hinge_spectral_flow(
        &bd,
        &regions,
        ["h1", "h2", "h3", "h4"],
        m.internal_dim,
        &FlowOptions { window, weight_threshold: spec.weight_threshold },
    )?;
    Ok((bd, rep))
}

fn hinge_json(rep: &HingeReport, bd: &BandData) -> Value {
    let mut v = serde_json::to_value(rep).unwrap();
    v["c"] = json!(rep.per_hinge);
    v["parities"] = json!(rep.adjacency_parities);
    v["min_abs"] = json!(bd.min_abs());
    v
}

/// Corner index on the quarter geometry, plus the face-generator layer when asked.
pub fn corner_reports(
    m: &HoppingModel,
    c: &CornerSpec,
) -> hoti_core::Result<(CornerIndexReport, Option<CornerIndexReport>)> {
    if m.dimension != 2 || m.internal_dim % 2 != 0 {
        return Err(hoti_core::Error::Argument("corner index needs a 2D model with even internal dimension".into()));
    }
    let gamma = chirality(m.internal_dim / 2);
    let gap = edge_gap(m, 16, 16)?;
    let h = instantiate(m, &Geometry::quarter(c.size), &[])?;
    let r = corner_index(&h, &gamma, gap, &CornerIndexOptions::default())?;
    let face = if c.face_layer {
        Some(corner_index(&face_generator_layer(c.size), &chirality(2), 1.0, &CornerIndexOptions::default())?)
    } else {
        None
    };
    Ok((r, face))
}

pub fn kss_report(
    name: Option<&str>,
    spec: Option<&hoti_core::ktheory::CofiltrationSpec>,
    hinge: Option<[i64; 4]>,
) -> hoti_core::Result<KssReport> {
    match (name, spec) {
        (Some(n), _) => report(&preset(n, hinge)?),
        (None, Some(s)) => {
            let mut r = report_for(&s.build()?, &[])?;
            r.preset = s.name.clone();
            Ok(r)
        }
        (None, None) => Err(hoti_core::Error::Argument("no preset or spec".into())),
    }
}

pub fn transversal_preset(name: &str) -> Option<Vec<Pattern>> {
    match name {
        "quarter" => Some(vec![Pattern::orthant(2, &[0, 1]).with_label("quarter")]),
        "square" => Some(square_corners()),
        "cube" => Some(box_corners(3)),
        _ => None,
    }
}

pub fn transversal_json(t: &Transversal) -> Value {
    let f = codimension_filtration(t);
    json!({
        "dimension": t.dimension,
        "classes": t.classes.iter().map(|c| json!({
            "label": c.label,
            "codimension": c.codimension,
            "representative": c.representative,
            "description": c.representative.describe(),
        })).collect::<Vec<_>>(),
        "codimension_counts": t.codimension_counts(),
        "filtration_sizes": f.sizes(),
    })
}

pub fn symmetry_json(m: &HoppingModel, names: &[String]) -> hoti_core::Result<Value> {
    let mut cov = serde_json::Map::new();
    let mut rel = serde_json::Map::new();
    let mut all = true;
    for n in names {
        let c = check_covariance(m, &builtin_action(n)?)?;
        all &= c.pass;
        cov.insert(n.clone(), json!({"pass": c.pass, "max_deviation": c.max_deviation}));
        let r = verify_projective_relations(&builtin_rep(n)?)?;
        all &= r.pass;
        rel.insert(n.clone(), json!({"pass": r.pass, "max_deviation": r.max_deviation(), "checks": r.checks}));
    }
    Ok(json!({"model": m.name, "pass": all, "covariance": cov, "relations": rel}))
}
