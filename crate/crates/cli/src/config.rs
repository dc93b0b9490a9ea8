//! Experiment configuration: parsing with field-path diagnostics, semantic
//! validation, command-line overrides and the config hash.

use hoti_core::ktheory::presets::PRESETS;
use hoti_core::ktheory::CofiltrationSpec;
use hoti_core::models::{Geometry, GeometrySpec, ModelSpec};
use hoti_core::patterns::Pattern;
use hoti_core::symmetry::BUILTIN_ACTIONS;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;

/// One validation failure, located by a JSON path such as `tasks[2].size`.
#[derive(Debug, Clone)]
pub struct FieldError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", if self.path.is_empty() { "<root>" } else { &self.path }, self.message)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    /// Default model for tasks that do not name their own.
    #[serde(default)]
    pub model: Option<ModelSpec>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub workers: Option<usize>,
    pub tasks: Vec<Task>,
}

fn default_seed() -> u64 {
    7
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Samples per periodic direction.
    #[serde(default = "default_grid")]
    pub grid: usize,
    /// Residual target of the folded solver, relative to `‖H‖`.
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default = "default_guard")]
    pub guard: usize,
    #[serde(default = "default_passes")]
    pub max_passes: usize,
}

fn default_grid() -> usize {
    101
}
fn default_tol() -> f64 {
    1e-10
}
fn default_degree() -> usize {
    40
}
fn default_guard() -> usize {
    8
}
fn default_passes() -> usize {
    3000
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid: default_grid(),
            tol: default_tol(),
            degree: default_degree(),
            guard: default_guard(),
            max_passes: default_passes(),
        }
    }
}

/// Either a named shape or an explicit pattern-cut box.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeometryChoice {
    Shape(ShapeSpec),
    Explicit(GeometrySpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    /// `bulk`, `slab`, `wire`, `cube` or `quarter`.
    pub shape: String,
    /// Slab depth, wire cross-section or cube side; `--size` overrides it.
    #[serde(default)]
    pub size: Option<usize>,
    /// Open direction of a slab (0-based).
    #[serde(default)]
    pub axis: Option<usize>,
    #[serde(default)]
    pub dimension: Option<usize>,
}

impl GeometryChoice {
    pub fn build(&self, grid: usize) -> hoti_core::Result<Geometry> {
        match self {
            GeometryChoice::Explicit(g) => g.build(),
            GeometryChoice::Shape(s) => {
                let size = s.size.unwrap_or(16);
                let d = s.dimension.unwrap_or(3);
                Ok(match s.shape.as_str() {
                    "bulk" => Geometry::bulk(d, grid),
                    "slab" => Geometry::slab(d, s.axis.unwrap_or(0), size, grid),
                    "wire" => Geometry::wire(size, grid),
                    "cube" => Geometry::cube(d, size),
                    "quarter" => Geometry::quarter(size),
                    other => return Err(hoti_core::Error::Unknown(format!("shape '{other}'"))),
                })
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    #[serde(default = "default_wire")]
    pub size: usize,
    #[serde(default = "default_kpoints")]
    pub kpoints: usize,
    #[serde(default = "default_states")]
    pub states: usize,
    /// Minimal hinge weight of an in-window state.
    #[serde(default = "default_weight")]
    pub weight_threshold: f64,
}

fn default_wire() -> usize {
    28
}
fn default_kpoints() -> usize {
    64
}
fn default_states() -> usize {
    16
}
fn default_weight() -> f64 {
    0.5
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CornerSpec {
    #[serde(default = "default_quarter")]
    pub size: usize,
    /// Also evaluate the face-generator boundary layer.
    #[serde(default)]
    pub face_layer: bool,
}

fn default_quarter() -> usize {
    24
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Spectrum {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        model: Option<ModelSpec>,
        geometry: GeometryChoice,
        /// States nearest zero; the full dense spectrum when absent.
        #[serde(default)]
        states: Option<usize>,
        #[serde(default)]
        regions: Option<String>,
        #[serde(default)]
        eigenvectors: bool,
    },
    Bands {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        model: Option<ModelSpec>,
        geometry: GeometryChoice,
        #[serde(default)]
        states: Option<usize>,
        #[serde(default)]
        regions: Option<String>,
        /// Samples per periodic direction for this sweep only.
        #[serde(default)]
        grid: Option<usize>,
    },
    Invariants {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        model: Option<ModelSpec>,
        /// Planes `[a, b]` of Bloch momenta for Chern numbers.
        #[serde(default)]
        chern: Vec<[usize; 2]>,
        /// On-site inversion action for the TRIM parities.
        #[serde(default)]
        trim: Option<String>,
        #[serde(default)]
        hinges: Option<FlowSpec>,
        #[serde(default)]
        corner: Option<CornerSpec>,
    },
    Kss {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        preset: Option<String>,
        #[serde(default)]
        spec: Option<CofiltrationSpec>,
        #[serde(default)]
        hinge: Option<[i64; 4]>,
    },
    Transversal {
        #[serde(default)]
        name: Option<String>,
        /// `quarter`, `square` or `cube`, or explicit seed patterns.
        #[serde(default)]
        preset: Option<String>,
        #[serde(default)]
        patterns: Vec<Pattern>,
    },
    SymmetryCheck {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        model: Option<ModelSpec>,
        #[serde(default)]
        actions: Vec<String>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Spectrum { .. } => "spectrum",
            Task::Bands { .. } => "bands",
            Task::Invariants { .. } => "invariants",
            Task::Kss { .. } => "kss",
            Task::Transversal { .. } => "transversal",
            Task::SymmetryCheck { .. } => "symmetry-check",
        }
    }

    pub fn given_name(&self) -> Option<&str> {
        match self {
            Task::Spectrum { name, .. }
            | Task::Bands { name, .. }
            | Task::Invariants { name, .. }
            | Task::Kss { name, .. }
            | Task::Transversal { name, .. }
            | Task::SymmetryCheck { name, .. } => name.as_deref(),
        }
    }

    /// Output file stem: the given name or `NN-kind`.
    pub fn stem(&self, index: usize) -> String {
        self.given_name().map(str::to_string).unwrap_or_else(|| format!("{index:02}-{}", self.kind()))
    }

    fn model(&self) -> Option<&ModelSpec> {
        match self {
            Task::Spectrum { model, .. }
            | Task::Bands { model, .. }
            | Task::Invariants { model, .. }
            | Task::SymmetryCheck { model, .. } => model.as_ref(),
            _ => None,
        }
    }

    fn geometry_mut(&mut self) -> Option<&mut GeometryChoice> {
        match self {
            Task::Spectrum { geometry, .. } | Task::Bands { geometry, .. } => Some(geometry),
            _ => None,
        }
    }
}

/// Command-line overrides applied after parsing.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub grid: Option<usize>,
    pub size: Option<usize>,
    pub workers: Option<usize>,
    pub out: Option<String>,
}

pub fn parse(text: &str) -> Result<ExperimentConfig, Vec<FieldError>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        vec![FieldError { path: if path == "." { String::new() } else { path }, message: e.inner().to_string() }]
    })
}

impl ExperimentConfig {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(g) = o.grid {
            self.solver.grid = g;
        }
        if let Some(w) = o.workers {
            self.workers = Some(w);
        }
        if let Some(out) = &o.out {
            self.output = Some(out.clone());
        }
        if let Some(l) = o.size {
            for t in &mut self.tasks {
                if let Some(GeometryChoice::Shape(s)) = t.geometry_mut() {
                    if s.shape != "bulk" {
                        s.size = Some(l);
                    }
                }
                match t {
                    Task::Invariants { hinges: Some(h), .. } => h.size = l,
                    Task::Invariants { corner: Some(c), .. } => c.size = l,
                    _ => {}
                }
            }
        }
    }

    /// Grid of a task: its own override or the solver default.
    pub fn grid_for(&self, t: &Task) -> usize {
        match t {
            Task::Bands { grid: Some(n), .. } => *n,
            _ => self.solver.grid,
        }
    }

    pub fn model_for<'a>(&'a self, t: &'a Task) -> Option<&'a ModelSpec> {
        t.model().or(self.model.as_ref())
    }

    pub fn validate(&self) -> Vec<FieldError> {
        let mut errs = Vec::new();
        let mut err = |path: String, message: String| errs.push(FieldError { path, message });
        if self.tasks.is_empty() {
            err("tasks".into(), "at least one task is required".into());
        }
        if self.solver.grid < 2 {
            err("solver.grid".into(), "must be at least 2".into());
        }
        if !(self.solver.tol > 0.0) {
            err("solver.tol".into(), "must be positive".into());
        }
        if self.solver.degree == 0 || self.solver.max_passes == 0 {
            err("solver".into(), "degree and max_passes must be positive".into());
        }
        if self.workers == Some(0) {
            err("workers".into(), "must be positive".into());
        }
        if let Some(m) = &self.model {
            if let Err(e) = m.build() {
                err("model".into(), e.to_string());
            }
        }
        let mut stems = std::collections::BTreeSet::new();
        for (i, t) in self.tasks.iter().enumerate() {
            let at = |f: &str| if f.is_empty() { format!("tasks[{i}]") } else { format!("tasks[{i}].{f}") };
            if !stems.insert(t.stem(i)) {
                err(at("name"), format!("duplicate output name '{}'", t.stem(i)));
            }
            if let Some(n) = t.given_name() {
                if n.is_empty() || n.contains(['/', '\\']) || n.starts_with('.') {
                    err(at("name"), "must be a plain file stem".into());
                }
            }
            let needs_model = matches!(t, Task::Spectrum { .. } | Task::Bands { .. } | Task::Invariants { .. } | Task::SymmetryCheck { .. });
            // an inherited model was already checked at the top level
            match self.model_for(t) {
                Some(_) if t.model().is_none() => {}
                Some(m) => {
                    if let Err(e) = m.build() {
                        err(at("model"), e.to_string());
                    }
                }
                None if needs_model => err(at("model"), "no model given here or at the top level".into()),
                None => {}
            }
            match t {
                Task::Spectrum { geometry, states, regions, .. } | Task::Bands { geometry, states, regions, .. } => {
                    if let GeometryChoice::Shape(s) = geometry {
                        if !["bulk", "slab", "wire", "cube", "quarter"].contains(&s.shape.as_str()) {
                            err(at("geometry.shape"), format!("unknown shape '{}'", s.shape));
                        }
                        if s.size == Some(0) {
                            err(at("geometry.size"), "must be positive".into());
                        }
                    }
                    match geometry.build(self.grid_for(t)) {
                        Ok(g) => {
                            let periodic = !g.periodic.is_empty();
                            if matches!(t, Task::Bands { .. }) && !periodic {
                                err(at("geometry"), "band sweep needs a periodic direction".into());
                            }
                            if matches!(t, Task::Spectrum { .. }) && periodic {
                                err(at("geometry"), "spectrum needs a fully open geometry; use bands".into());
                            }
                            if let Some(m) = self.model_for(t).and_then(|m| m.build().ok()) {
                                if m.dimension != g.pattern.dimension {
                                    err(at("geometry"), format!("dimension {} does not match the model's {}", g.pattern.dimension, m.dimension));
                                }
                            }
                        }
                        Err(e) => err(at("geometry"), e.to_string()),
                    }
                    if let Task::Bands { grid: Some(n), .. } = t {
                        if *n < 2 {
                            err(at("grid"), "must be at least 2".into());
                        }
                    }
                    if *states == Some(0) {
                        err(at("states"), "must be positive".into());
                    }
                    if let Some(r) = regions {
                        if !REGION_KINDS.contains(&r.as_str()) {
                            err(at("regions"), format!("unknown region partition '{r}' (expected one of {REGION_KINDS:?})"));
                        }
                    }
                }
                Task::Invariants { chern, trim, hinges, corner, .. } => {
                    let m = self.model_for(t).and_then(|m| m.build().ok());
                    for (j, p) in chern.iter().enumerate() {
                        if p[0] == p[1] || m.as_ref().is_some_and(|m| p[0].max(p[1]) >= m.dimension) {
                            err(at(&format!("chern[{j}]")), "needs two distinct momentum directions of the model".into());
                        }
                    }
                    if let Some(a) = trim {
                        if !BUILTIN_ACTIONS.contains(&a.as_str()) {
                            err(at("trim"), format!("unknown action '{a}'"));
                        }
                    }
                    if let Some(h) = hinges {
                        if h.size < 4 || h.kpoints < 2 || h.states == 0 {
                            err(at("hinges"), "size ≥ 4, kpoints ≥ 2 and states ≥ 1 required".into());
                        }
                        if !(h.weight_threshold > 0.0 && h.weight_threshold < 1.0) {
                            err(at("hinges.weight_threshold"), "must lie in (0, 1)".into());
                        }
                    }
                    if let Some(c) = corner {
                        if c.size < 8 {
                            err(at("corner.size"), "must be at least 8".into());
                        }
                    }
                    if chern.is_empty() && trim.is_none() && hinges.is_none() && corner.is_none() {
                        err(at(""), "requests no invariant".into());
                    }
                }
                Task::Kss { preset, spec, hinge, .. } => {
                    match (preset, spec) {
                        (Some(p), None) => {
                            if !PRESETS.contains(&p.as_str()) {
                                err(at("preset"), format!("unknown preset '{p}'"));
                            }
                        }
                        (None, Some(s)) => {
                            if let Err(e) = s.build() {
                                err(at("spec"), e.to_string());
                            }
                            if hinge.is_some() {
                                err(at("hinge"), "only applies to presets".into());
                            }
                        }
                        _ => err(at(""), "give exactly one of preset and spec".into()),
                    }
                }
                Task::Transversal { preset, patterns, .. } => match (preset, patterns.is_empty()) {
                    (Some(p), true) => {
                        if !["quarter", "square", "cube"].contains(&p.as_str()) {
                            err(at("preset"), format!("unknown transversal preset '{p}'"));
                        }
                    }
                    (None, false) => {
                        for (j, p) in patterns.iter().enumerate() {
                            if let Err(e) = p.validate() {
                                err(at(&format!("patterns[{j}]")), e.to_string());
                            }
                        }
                    }
                    _ => err(at(""), "give exactly one of preset and patterns".into()),
                },
                Task::SymmetryCheck { actions, .. } => {
                    let defaults = self.model_for(t).map_or(vec![], |m| hoti_core::symmetry::default_actions(&m.model));
                    if actions.is_empty() && defaults.is_empty() {
                        err(at("actions"), "model has no default actions; list them".into());
                    }
                    for (j, a) in actions.iter().enumerate() {
                        if !BUILTIN_ACTIONS.contains(&a.as_str()) {
                            err(at(&format!("actions[{j}]")), format!("unknown action '{a}'"));
                        }
                    }
                }
            }
        }
        errs
    }

    /// SHA-256 over the semantically meaningful fields (defaults filled in;
    /// name, output directory and worker count left out).
    pub fn hash(&self) -> String {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("name");
            o.remove("output");
            o.remove("workers");
        }
        let canonical = serde_json::to_string(&v).expect("value serializes");
        format!("{:x}", Sha256::digest(canonical.as_bytes()))
    }
}

pub const REGION_KINDS: [&str; 4] = ["wire", "cube-hinges", "corner", "none"];
