//! Scenario files: a versioned JSON document naming the medium, the flow,
//! one task, and its parameters. Parsing validates everything up front and
//! reports every problem with its field path, not just the first.

use serde::Deserialize;
use thiserror::Error;

use gordon::flow::{FlowDirection, FlowProfile};
use gordon::medium::{MediumModel, OscillatorMode};

/// The one schema version this build reads.
pub const SCHEMA_VERSION: u32 = 1;

pub const TASK_NAMES: &[&str] = &[
    "metric",
    "horizon",
    "geodesic",
    "wave",
    "dispersion",
    "spectrum",
];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("scenario is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("scenario invalid:\n{}", .0.join("\n"))]
    Invalid(Vec<String>),
}

// ---------------------------------------------------------------------
// raw (serde) layer
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub version: u32,
    pub task: String,
    pub medium: RawMedium,
    pub flow: Option<RawFlow>,
    #[serde(default = "default_length_scale")]
    pub length_scale_m: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_dir: Option<String>,
    #[serde(default)]
    pub params: serde_json::Value,
    #[serde(default)]
    pub sweep: Option<RawSweep>,
}

fn default_length_scale() -> f64 {
    1e-3
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMedium {
    pub epsilon: Option<f64>,
    pub modes: Option<Vec<RawMode>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMode {
    pub chi: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFlow {
    pub family: RawFamily,
    pub direction: String,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawFamily {
    PowerLaw {
        beta0: f64,
        r0: f64,
        exponent: f64,
    },
    TanhStep {
        beta_far: f64,
        beta_near: f64,
        r_center: f64,
        width: f64,
    },
    Tabulated {
        samples: Vec<(f64, f64)>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSweep {
    /// JSON-pointer-ish dotted path, e.g. "medium.epsilon" or "flow.family.beta0".
    pub parameter: String,
    pub values: Vec<f64>,
}

// ---------------------------------------------------------------------
// validated layer
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Metric,
    Horizon,
    Geodesic,
    Wave,
    Dispersion,
    Spectrum,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Metric => "metric",
            Task::Horizon => "horizon",
            Task::Geodesic => "geodesic",
            Task::Wave => "wave",
            Task::Dispersion => "dispersion",
            Task::Spectrum => "spectrum",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricParams {
    #[serde(default = "default_metric_samples")]
    pub n_samples: usize,
    /// Random (epsilon, beta) spot checks of the inverse/determinant
    /// identities, drawn from the scenario seed.
    #[serde(default)]
    pub identity_checks: usize,
}

fn default_metric_samples() -> usize {
    512
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicParams {
    pub launch_radii: Vec<f64>,
    #[serde(default = "default_branches")]
    pub branches: String,
    #[serde(default = "default_lambda_max")]
    pub lambda_max: f64,
    #[serde(default = "default_initial_step")]
    pub initial_step: f64,
}

fn default_branches() -> String {
    "both".into()
}

fn default_lambda_max() -> f64 {
    20.0
}

fn default_initial_step() -> f64 {
    1e-3
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveParams {
    #[serde(default = "default_n_cells")]
    pub n_cells: usize,
    /// Sponge width; default 10% of the domain per side.
    pub sponge_width: Option<f64>,
    pub packet: RawPacket,
    pub t_final: f64,
    #[serde(default)]
    pub probes: Vec<f64>,
    #[serde(default = "default_probe_stride")]
    pub probe_stride: usize,
    #[serde(default)]
    pub snapshot_stride: usize,
}

fn default_n_cells() -> usize {
    1024
}

fn default_probe_stride() -> usize {
    16
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPacket {
    pub center: f64,
    pub width: f64,
    #[serde(default)]
    pub wavenumber: f64,
    pub direction: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionParams {
    pub omega_min: f64,
    pub omega_max: f64,
    #[serde(default = "default_curve_points")]
    pub n_points: usize,
    /// Truncation orders to tabulate next to the closed form.
    #[serde(default)]
    pub orders: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumParams {
    pub omega_min: f64,
    pub omega_max: f64,
    #[serde(default = "default_curve_points")]
    pub n_points: usize,
    /// Explicit temperature override; otherwise derived from the horizon.
    #[serde(default)]
    pub temperature_k: Option<f64>,
}

fn default_curve_points() -> usize {
    200
}

#[derive(Debug, Clone)]
pub enum TaskParams {
    Metric(MetricParams),
    Horizon,
    Geodesic(GeodesicParams),
    Wave(WaveParams),
    Dispersion(DispersionParams),
    Spectrum(SpectrumParams),
}

/// A fully validated scenario, ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub task: Task,
    pub medium: MediumModel,
    /// Absent only for medium-only tasks (dispersion, or spectrum with an
    /// explicit temperature).
    pub flow: Option<FlowProfile>,
    pub length_scale_m: f64,
    pub seed: u64,
    pub output_dir: Option<String>,
    pub params: TaskParams,
    pub sweep: Option<RawSweep>,
    /// The raw JSON document, for sweep reparametrization.
    pub raw_json: serde_json::Value,
}

impl Scenario {
    pub fn epsilon(&self) -> f64 {
        self.medium.static_permittivity()
    }
}

/// Parse and validate a scenario document, reporting every violation.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let raw_json: serde_json::Value = serde_json::from_str(text)?;
    let raw: RawScenario = serde_json::from_value(raw_json.clone())?;

    let mut errors: Vec<String> = Vec::new();
    let mut fail = |path: &str, msg: String, errors: &mut Vec<String>| {
        errors.push(format!("{path}: {msg}"));
    };

    if raw.version != SCHEMA_VERSION {
        fail(
            "version",
            format!("unsupported schema version {} (expected {SCHEMA_VERSION})", raw.version),
            &mut errors,
        );
    }

    let task = match raw.task.as_str() {
        "metric" => Some(Task::Metric),
        "horizon" => Some(Task::Horizon),
        "geodesic" => Some(Task::Geodesic),
        "wave" => Some(Task::Wave),
        "dispersion" => Some(Task::Dispersion),
        "spectrum" => Some(Task::Spectrum),
        other => {
            fail(
                "task",
                format!("unknown task '{other}'; allowed: {}", TASK_NAMES.join(", ")),
                &mut errors,
            );
            None
        }
    };

    // medium
    let medium = match (&raw.medium.epsilon, &raw.medium.modes) {
        (Some(_), Some(_)) => {
            fail(
                "medium",
                "give either 'epsilon' or 'modes', not both".into(),
                &mut errors,
            );
            None
        }
        (None, None) => {
            fail("medium", "needs 'epsilon' or 'modes'".into(), &mut errors);
            None
        }
        (Some(eps), None) => match MediumModel::with_permittivity(*eps) {
            Ok(m) => Some(m),
            Err(e) => {
                fail("medium.epsilon", e.to_string(), &mut errors);
                None
            }
        },
        (None, Some(modes)) => {
            let mut out = Vec::with_capacity(modes.len());
            let mut ok = true;
            for (i, m) in modes.iter().enumerate() {
                match OscillatorMode::new(m.chi, m.omega) {
                    Ok(mode) => out.push(mode),
                    Err(e) => {
                        fail(&format!("medium.modes[{i}]"), e.to_string(), &mut errors);
                        ok = false;
                    }
                }
            }
            ok.then(|| MediumModel::from_modes(out))
        }
    };

    // flow
    let flow_required = matches!(
        task,
        Some(Task::Metric) | Some(Task::Horizon) | Some(Task::Geodesic) | Some(Task::Wave)
    );
    let flow = match &raw.flow {
        None => {
            if flow_required {
                fail("flow", "this task needs a flow block".into(), &mut errors);
            }
            None
        }
        Some(rf) => build_flow(rf, &mut errors),
    };

    if !(raw.length_scale_m > 0.0) {
        fail(
            "length_scale_m",
            format!("must be > 0, got {}", raw.length_scale_m),
            &mut errors,
        );
    }

    // task parameters
    let params = task.and_then(|t| build_params(t, &raw, flow.as_ref(), &mut errors));

    // sweep block
    if let Some(sweep) = &raw.sweep {
        if sweep.values.is_empty() {
            fail("sweep.values", "must not be empty".into(), &mut errors);
        }
        if lookup_path(&raw_json, &sweep.parameter).is_none() {
            fail(
                "sweep.parameter",
                format!("path '{}' not found in the scenario", sweep.parameter),
                &mut errors,
            );
        }
    }

    if !errors.is_empty() {
        return Err(ScenarioError::Invalid(errors));
    }
    Ok(Scenario {
        task: task.unwrap(),
        medium: medium.unwrap(),
        flow,
        length_scale_m: raw.length_scale_m,
        seed: raw.seed,
        output_dir: raw.output_dir,
        params: params.unwrap(),
        sweep: raw.sweep,
        raw_json,
    })
}

fn build_flow(rf: &RawFlow, errors: &mut Vec<String>) -> Option<FlowProfile> {
    let direction = match rf.direction.as_str() {
        "inward" => Some(FlowDirection::Inward),
        "outward" => Some(FlowDirection::Outward),
        other => {
            errors.push(format!("flow.direction: '{other}' is not 'inward' or 'outward'"));
            None
        }
    }?;
    let result = match &rf.family {
        RawFamily::PowerLaw { beta0, r0, exponent } => {
            let (Some(r_min), Some(r_max)) = (rf.r_min, rf.r_max) else {
                errors.push("flow: power_law needs r_min and r_max".into());
                return None;
            };
            FlowProfile::power_law(*beta0, *r0, *exponent, direction, r_min, r_max)
        }
        RawFamily::TanhStep { beta_far, beta_near, r_center, width } => {
            let (Some(r_min), Some(r_max)) = (rf.r_min, rf.r_max) else {
                errors.push("flow: tanh_step needs r_min and r_max".into());
                return None;
            };
            FlowProfile::tanh_step(
                *beta_far, *beta_near, *r_center, *width, direction, r_min, r_max,
            )
        }
        RawFamily::Tabulated { samples } => FlowProfile::tabulated(samples, direction),
    };
    match result {
        Ok(f) => Some(f),
        Err(e) => {
            errors.push(format!("flow: {e}"));
            None
        }
    }
}

fn build_params(
    task: Task,
    raw: &RawScenario,
    flow: Option<&FlowProfile>,
    errors: &mut Vec<String>,
) -> Option<TaskParams> {
    let parse = |errors: &mut Vec<String>| -> Option<serde_json::Value> {
        if raw.params.is_null() {
            Some(serde_json::json!({}))
        } else if raw.params.is_object() {
            Some(raw.params.clone())
        } else {
            errors.push("params: must be an object".into());
            None
        }
    };
    match task {
        Task::Metric => {
            let v = parse(errors)?;
            match serde_json::from_value::<MetricParams>(v) {
                Ok(p) => {
                    if p.n_samples < 2 {
                        errors.push("params.n_samples: need at least 2".into());
                        return None;
                    }
                    Some(TaskParams::Metric(p))
                }
                Err(e) => {
                    errors.push(format!("params: {e}"));
                    None
                }
            }
        }
        Task::Horizon => Some(TaskParams::Horizon),
        Task::Geodesic => {
            let v = parse(errors)?;
            match serde_json::from_value::<GeodesicParams>(v) {
                Ok(p) => {
                    let mut ok = true;
                    if p.launch_radii.is_empty() {
                        errors.push("params.launch_radii: must not be empty".into());
                        ok = false;
                    }
                    if let Some(f) = flow {
                        for (i, &r) in p.launch_radii.iter().enumerate() {
                            if !f.contains(r) {
                                errors.push(format!(
                                    "params.launch_radii[{i}]: {r} outside the flow domain [{}, {}]",
                                    f.r_min(),
                                    f.r_max()
                                ));
                                ok = false;
                            }
                        }
                    }
                    if !["both", "outward", "inward"].contains(&p.branches.as_str()) {
                        errors.push(format!(
                            "params.branches: '{}' is not 'both', 'outward' or 'inward'",
                            p.branches
                        ));
                        ok = false;
                    }
                    if !(p.lambda_max > 0.0) {
                        errors.push("params.lambda_max: must be > 0".into());
                        ok = false;
                    }
                    ok.then_some(TaskParams::Geodesic(p))
                }
                Err(e) => {
                    errors.push(format!("params: {e}"));
                    None
                }
            }
        }
        Task::Wave => {
            let v = parse(errors)?;
            match serde_json::from_value::<WaveParams>(v) {
                Ok(p) => {
                    let mut ok = true;
                    if p.n_cells < 16 {
                        errors.push("params.n_cells: need at least 16".into());
                        ok = false;
                    }
                    if !(p.t_final >= 0.0) {
                        errors.push("params.t_final: must be >= 0".into());
                        ok = false;
                    }
                    if !["outward", "inward"].contains(&p.packet.direction.as_str()) {
                        errors.push(format!(
                            "params.packet.direction: '{}' is not 'outward' or 'inward'",
                            p.packet.direction
                        ));
                        ok = false;
                    }
                    if let Some(f) = flow {
                        let sponge = p.sponge_width.unwrap_or(0.1 * (f.r_max() - f.r_min()));
                        let (lo, hi) = (f.r_min() + sponge, f.r_max() - sponge);
                        let (c, w) = (p.packet.center, p.packet.width);
                        if !(w > 0.0) {
                            errors.push("params.packet.width: must be > 0".into());
                            ok = false;
                        } else if c - 4.0 * w < lo || c + 4.0 * w > hi {
                            errors.push(format!(
                                "params.packet: support {c} ± 4·{w} overlaps a sponge layer \
                                 (clear region [{lo}, {hi}])"
                            ));
                            ok = false;
                        }
                        for (i, &r) in p.probes.iter().enumerate() {
                            if !f.contains(r) {
                                errors.push(format!(
                                    "params.probes[{i}]: {r} outside the flow domain"
                                ));
                                ok = false;
                            }
                        }
                    }
                    ok.then_some(TaskParams::Wave(p))
                }
                Err(e) => {
                    errors.push(format!("params: {e}"));
                    None
                }
            }
        }
        Task::Dispersion => {
            let v = parse(errors)?;
            match serde_json::from_value::<DispersionParams>(v) {
                Ok(p) => {
                    let mut ok = true;
                    if !(p.omega_min >= 0.0 && p.omega_max > p.omega_min) {
                        errors.push(format!(
                            "params: need 0 <= omega_min < omega_max, got [{}, {}]",
                            p.omega_min, p.omega_max
                        ));
                        ok = false;
                    }
                    if p.n_points < 2 {
                        errors.push("params.n_points: need at least 2".into());
                        ok = false;
                    }
                    ok.then_some(TaskParams::Dispersion(p))
                }
                Err(e) => {
                    errors.push(format!("params: {e}"));
                    None
                }
            }
        }
        Task::Spectrum => {
            let v = parse(errors)?;
            match serde_json::from_value::<SpectrumParams>(v) {
                Ok(p) => {
                    let mut ok = true;
                    if !(p.omega_min >= 0.0 && p.omega_max > p.omega_min) {
                        errors.push(format!(
                            "params: need 0 <= omega_min < omega_max, got [{}, {}]",
                            p.omega_min, p.omega_max
                        ));
                        ok = false;
                    }
                    if p.n_points < 2 {
                        errors.push("params.n_points: need at least 2".into());
                        ok = false;
                    }
                    if let Some(t) = p.temperature_k {
                        if !(t > 0.0) {
                            errors.push(format!("params.temperature_k: must be > 0, got {t}"));
                            ok = false;
                        }
                    } else if flow.is_none() {
                        errors.push(
                            "params.temperature_k: required when no flow block is given".into(),
                        );
                        ok = false;
                    }
                    ok.then_some(TaskParams::Spectrum(p))
                }
                Err(e) => {
                    errors.push(format!("params: {e}"));
                    None
                }
            }
        }
    }
}

/// Look up a dotted path in a JSON value.
pub fn lookup_path<'v>(value: &'v serde_json::Value, path: &str) -> Option<&'v serde_json::Value> {
    let mut cur = value;
    for part in path.split('.') {
        cur = cur.get(part)?;
    }
    Some(cur)
}

/// Replace the value at a dotted path, returning false if absent.
pub fn set_path(value: &mut serde_json::Value, path: &str, new: serde_json::Value) -> bool {
    let mut cur = value;
    let parts: Vec<&str> = path.split('.').collect();
    for part in &parts[..parts.len() - 1] {
        match cur.get_mut(part) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    match cur.get_mut(parts[parts.len() - 1]) {
        Some(slot) => {
            *slot = new;
            true
        }
        None => false,
    }
}
