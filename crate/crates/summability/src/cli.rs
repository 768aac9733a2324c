//! Experiment runner: flat-text config parsing, orchestration, and CSV/JSON
//! report emission.
//!
//! Configs are line-oriented `key = value` documents with at most one level
//! of sections (`[method]`, `[lip]`, `[quadrature]`). Parsing is strict:
//! unknown keys, unknown sections, and duplicate keys are errors, and every
//! accepted document round-trips through [`serialize_config`].

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fourier::{conjugate_function_pv, PrincipalValueSpec, Refinement};
use crate::lipnorms::LipClassSpec;
use crate::means::{ConjugateTransform, MethodSpec, Mode};
use crate::signals::{self, Signal};
use crate::verify::{
    corollary_suite, rate_experiment, RateConfig, RateReport, reference_conjugate,
};
use crate::weights::{classify_variation_with_k, sequence_from_expr, VariationClass};

/// What a run computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Conjugate,
    Means,
    Rates,
    Corollaries,
}

impl Command {
    fn as_str(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Conjugate => "conjugate",
            Command::Means => "means",
            Command::Rates => "rates",
            Command::Corollaries => "corollaries",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Quadrature settings shared by the conjugate integral and the modulus
/// integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    pub panels: usize,
    pub gl_order: usize,
    pub pv_cutoff: f64,
    pub pv_levels: usize,
    /// Sample count for coefficient quadrature (raised automatically to the
    /// anti-aliasing minimum 4K).
    pub grid_points: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            panels: 2048,
            gl_order: 8,
            pv_cutoff: 1e-6,
            pv_levels: 5,
            grid_points: 1024,
        }
    }
}

impl QuadratureConfig {
    /// Principal-value spec with these settings.
    pub fn pv_spec(&self) -> PrincipalValueSpec {
        PrincipalValueSpec {
            cutoff: self.pv_cutoff,
            panels: self.panels,
            gl_order: self.gl_order,
            refinement: Refinement::GeometricCutoffs {
                levels: self.pv_levels,
            },
        }
    }
}

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Signal registry expression; required by every command except classify.
    pub signal: Option<String>,
    /// Sequence expression for classify.
    pub sequence: Option<String>,
    /// Variation class for classify.
    pub class: Option<VariationClass>,
    pub k_candidate: f64,
    pub horizon: usize,
    pub tail_horizon: usize,
    pub n_values: Vec<usize>,
    /// Evaluation point for the means command.
    pub x: f64,
    /// Error-norm grid over x for rate experiments, and the sample grid for
    /// the conjugate command.
    pub x_grid: usize,
    /// Recorded in the summary for provenance; experiments are deterministic.
    pub seed: u64,
    pub slope_tolerance: f64,
    pub output: PathBuf,
    pub method_p: String,
    pub method_q: String,
    pub mode: Mode,
    pub lip_alpha: f64,
    pub lip_r: f64,
    pub quadrature: QuadratureConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Rates,
            signal: None,
            sequence: None,
            class: None,
            k_candidate: 1.0,
            horizon: 64,
            tail_horizon: 256,
            n_values: vec![16, 32, 64, 128, 256],
            x: std::f64::consts::FRAC_PI_4,
            x_grid: 128,
            seed: 0,
            slope_tolerance: 0.15,
            output: PathBuf::from("report.csv"),
            method_p: "ones".into(),
            method_q: "ones".into(),
            mode: Mode::Almost { shift: 0 },
            lip_alpha: 0.5,
            lip_r: 2.0,
            quadrature: QuadratureConfig::default(),
        }
    }
}

impl RunConfig {
    /// Resolve the method weights.
    pub fn method(&self) -> Result<MethodSpec> {
        let p = sequence_from_expr(&self.method_p)?;
        let q = sequence_from_expr(&self.method_q)?;
        Ok(MethodSpec::new(p, q, self.mode))
    }

    /// Resolve the signal, when present.
    pub fn resolve_signal(&self) -> Result<Signal> {
        let expr = self
            .signal
            .as_ref()
            .ok_or_else(|| Error::Config("this command requires a signal".into()))?;
        signals::from_name(expr)
    }

    fn lip_spec(&self) -> Result<LipClassSpec> {
        LipClassSpec::new(self.lip_alpha, self.lip_r)
    }

    fn rate_config(&self) -> RateConfig {
        RateConfig {
            x_grid: self.x_grid,
            slope_tolerance: self.slope_tolerance,
            coefficient_grid: self.quadrature.grid_points,
            pv: self.quadrature.pv_spec(),
            ..RateConfig::default()
        }
    }
}

// ---------------------------------------------------------------------------
// config text -> RunConfig
// ---------------------------------------------------------------------------

const TOP_KEYS: &[&str] = &[
    "command",
    "signal",
    "sequence",
    "class",
    "k_candidate",
    "horizon",
    "tail_horizon",
    "n_values",
    "x",
    "x_grid",
    "seed",
    "slope_tolerance",
    "output",
    "method",
];
const METHOD_KEYS: &[&str] = &["p", "q", "mode", "shift"];
const LIP_KEYS: &[&str] = &["alpha", "r"];
const QUAD_KEYS: &[&str] = &["panels", "gl_order", "pv_cutoff", "pv_levels", "grid_points"];

fn config_err(line_no: usize, msg: impl fmt::Display) -> Error {
    Error::Config(format!("line {line_no}: {msg}"))
}

/// Parse and validate a config document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut pairs: Vec<(String, String, String, usize)> = Vec::new(); // (section, key, value, line)
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim();
            match name {
                "method" | "lip" | "quadrature" => section = name.to_string(),
                other => return Err(config_err(line_no, format!("unknown section [{other}]"))),
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_err(line_no, format!("expected key = value, got: {line}")))?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        let allowed: &[&str] = match section.as_str() {
            "" => TOP_KEYS,
            "method" => METHOD_KEYS,
            "lip" => LIP_KEYS,
            "quadrature" => QUAD_KEYS,
            _ => unreachable!(),
        };
        if !allowed.contains(&key.as_str()) {
            let location = if section.is_empty() {
                "top level".to_string()
            } else {
                format!("section [{section}]")
            };
            return Err(config_err(line_no, format!("unknown key `{key}` at {location}")));
        }
        if pairs.iter().any(|(s, k, _, _)| s == &section && k == &key) {
            return Err(config_err(line_no, format!("duplicate key `{key}`")));
        }
        pairs.push((section.clone(), key, value, line_no));
    }

    let mut cfg = RunConfig::default();
    let mut command_seen = false;
    let mut horizon_line = None;
    let mut tail_seen = false;
    let mut method_shorthand: Option<(String, usize)> = None;
    let mut method_section_seen = false;
    let mut mode_raw: Option<(String, usize)> = None;
    let mut shift_raw: Option<(usize, usize)> = None;

    for (section, key, value, line_no) in &pairs {
        let value = value.as_str();
        let line_no = *line_no;
        match (section.as_str(), key.as_str()) {
            ("", "command") => {
                cfg.command = match value {
                    "classify" => Command::Classify,
                    "conjugate" => Command::Conjugate,
                    "means" => Command::Means,
                    "rates" => Command::Rates,
                    "corollaries" => Command::Corollaries,
                    other => {
                        return Err(config_err(line_no, format!("unknown command `{other}`")))
                    }
                };
                command_seen = true;
            }
            ("", "signal") => {
                signals::from_name(value)?; // resolve eagerly, keep the text
                cfg.signal = Some(value.to_string());
            }
            ("", "sequence") => {
                sequence_from_expr(value)?;
                cfg.sequence = Some(value.to_string());
            }
            ("", "class") => {
                cfg.class = Some(match value {
                    "hbvs" => VariationClass::Head,
                    "rbvs" => VariationClass::Rest,
                    other => {
                        return Err(config_err(
                            line_no,
                            format!("class must be hbvs or rbvs, got `{other}`"),
                        ))
                    }
                });
            }
            ("", "k_candidate") => cfg.k_candidate = parse_float(value, line_no)?,
            ("", "horizon") => {
                cfg.horizon = parse_int(value, line_no)?;
                horizon_line = Some(line_no);
            }
            ("", "tail_horizon") => {
                cfg.tail_horizon = parse_int(value, line_no)?;
                tail_seen = true;
            }
            ("", "n_values") => cfg.n_values = parse_int_list(value, line_no)?,
            ("", "x") => cfg.x = parse_float(value, line_no)?,
            ("", "x_grid") => cfg.x_grid = parse_int(value, line_no)?,
            ("", "seed") => {
                cfg.seed = value
                    .parse()
                    .map_err(|_| config_err(line_no, format!("malformed integer `{value}`")))?
            }
            ("", "slope_tolerance") => cfg.slope_tolerance = parse_float(value, line_no)?,
            ("", "output") => cfg.output = PathBuf::from(value),
            ("", "method") => method_shorthand = Some((value.to_string(), line_no)),
            ("method", "p") => {
                sequence_from_expr(value)?;
                cfg.method_p = value.to_string();
                method_section_seen = true;
            }
            ("method", "q") => {
                sequence_from_expr(value)?;
                cfg.method_q = value.to_string();
                method_section_seen = true;
            }
            ("method", "mode") => mode_raw = Some((value.to_string(), line_no)),
            ("method", "shift") => shift_raw = Some((parse_int(value, line_no)?, line_no)),
            ("lip", "alpha") => cfg.lip_alpha = parse_float(value, line_no)?,
            ("lip", "r") => cfg.lip_r = parse_float(value, line_no)?,
            ("quadrature", "panels") => cfg.quadrature.panels = parse_int(value, line_no)?,
            ("quadrature", "gl_order") => cfg.quadrature.gl_order = parse_int(value, line_no)?,
            ("quadrature", "pv_cutoff") => cfg.quadrature.pv_cutoff = parse_float(value, line_no)?,
            ("quadrature", "pv_levels") => cfg.quadrature.pv_levels = parse_int(value, line_no)?,
            ("quadrature", "grid_points") => {
                cfg.quadrature.grid_points = parse_int(value, line_no)?
            }
            _ => unreachable!(),
        }
    }

    if !command_seen {
        return Err(Error::Config("missing required key `command`".into()));
    }
    cfg.mode = match (&mode_raw, &shift_raw) {
        (Some((m, line_no)), shift) => match m.as_str() {
            "ordinary" => {
                if let Some((s, s_line)) = shift {
                    if *s != 0 {
                        return Err(config_err(*s_line, "shift requires mode = almost"));
                    }
                }
                Mode::Ordinary
            }
            "almost" => Mode::Almost {
                shift: shift.map(|(s, _)| s).unwrap_or(0),
            },
            other => {
                return Err(config_err(
                    *line_no,
                    format!("mode must be ordinary or almost, got `{other}`"),
                ))
            }
        },
        (None, Some((s, _))) => Mode::Almost { shift: *s },
        (None, None) => cfg.mode,
    };
    if let Some((expr, line_no)) = method_shorthand {
        if method_section_seen {
            return Err(config_err(
                line_no,
                "`method` shorthand conflicts with an explicit [method] section",
            ));
        }
        let (p, q) = parse_method_shorthand(&expr).map_err(|e| config_err(line_no, e))?;
        cfg.method_p = p;
        cfg.method_q = q;
    }
    if horizon_line.is_some() && !tail_seen {
        cfg.tail_horizon = 4 * cfg.horizon;
    }
    validate(&cfg)?;
    Ok(cfg)
}

fn parse_method_shorthand(expr: &str) -> std::result::Result<(String, String), String> {
    let s = expr.trim();
    if s == "harmonic" {
        return Ok(("harmonic".into(), "ones".into()));
    }
    if s.starts_with("cesaro(") && s.ends_with(')') {
        return Ok((s.to_string(), "ones".into()));
    }
    for (name, riesz) in [("norlund", false), ("riesz", true)] {
        if let Some(inner) = s
            .strip_prefix(name)
            .and_then(|r| r.trim_start().strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
        {
            let inner = inner.trim().to_string();
            sequence_from_expr(&inner).map_err(|e| e.to_string())?;
            return Ok(if riesz {
                ("ones".into(), inner)
            } else {
                (inner, "ones".into())
            });
        }
    }
    Err(format!(
        "unknown method `{s}` (expected cesaro(a), harmonic, norlund(seq), or riesz(seq))"
    ))
}

fn parse_float(value: &str, line_no: usize) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| config_err(line_no, format!("malformed numeric `{value}`")))
}

fn parse_int(value: &str, line_no: usize) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| config_err(line_no, format!("malformed integer `{value}`")))
}

fn parse_int_list(value: &str, line_no: usize) -> Result<Vec<usize>> {
    let inner = value
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(value);
    let mut out = Vec::new();
    for tok in inner.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        out.push(parse_int(tok, line_no)?);
    }
    if out.is_empty() {
        return Err(config_err(line_no, "n_values must not be empty"));
    }
    Ok(out)
}

fn validate(cfg: &RunConfig) -> Result<()> {
    if cfg.n_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!(
            "n_values must be strictly increasing, got {:?}",
            cfg.n_values
        )));
    }
    match cfg.command {
        Command::Classify => {
            if cfg.sequence.is_none() {
                return Err(Error::Config("classify requires `sequence`".into()));
            }
            if cfg.class.is_none() {
                return Err(Error::Config("classify requires `class`".into()));
            }
        }
        _ => {
            if cfg.signal.is_none() {
                return Err(Error::Config(format!(
                    "{} requires `signal`",
                    cfg.command
                )));
            }
        }
    }
    if cfg.horizon == 0 {
        return Err(Error::Config("horizon must be >= 1".into()));
    }
    if cfg.tail_horizon <= cfg.horizon {
        return Err(Error::Config("tail_horizon must exceed horizon".into()));
    }
    cfg.lip_spec()?;
    cfg.method()?;
    Ok(())
}

/// Serialize a config to the canonical document form. `parse_config` of the
/// result reproduces the config exactly.
pub fn serialize_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    let push = |out: &mut String, k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    push(&mut out, "command", cfg.command.to_string());
    if let Some(signal) = &cfg.signal {
        push(&mut out, "signal", signal.clone());
    }
    if let Some(sequence) = &cfg.sequence {
        push(&mut out, "sequence", sequence.clone());
    }
    if let Some(class) = cfg.class {
        let name = match class {
            VariationClass::Head => "hbvs",
            VariationClass::Rest => "rbvs",
        };
        push(&mut out, "class", name.to_string());
    }
    push(&mut out, "k_candidate", fmt_f64(cfg.k_candidate));
    push(&mut out, "horizon", cfg.horizon.to_string());
    push(&mut out, "tail_horizon", cfg.tail_horizon.to_string());
    let ns: Vec<String> = cfg.n_values.iter().map(|n| n.to_string()).collect();
    push(&mut out, "n_values", format!("[{}]", ns.join(", ")));
    push(&mut out, "x", fmt_f64(cfg.x));
    push(&mut out, "x_grid", cfg.x_grid.to_string());
    push(&mut out, "seed", cfg.seed.to_string());
    push(&mut out, "slope_tolerance", fmt_f64(cfg.slope_tolerance));
    push(&mut out, "output", cfg.output.display().to_string());
    out.push_str("\n[method]\n");
    push(&mut out, "p", cfg.method_p.clone());
    push(&mut out, "q", cfg.method_q.clone());
    match cfg.mode {
        Mode::Ordinary => push(&mut out, "mode", "ordinary".into()),
        Mode::Almost { shift } => {
            push(&mut out, "mode", "almost".into());
            push(&mut out, "shift", shift.to_string());
        }
    }
    out.push_str("\n[lip]\n");
    push(&mut out, "alpha", fmt_f64(cfg.lip_alpha));
    push(&mut out, "r", fmt_f64(cfg.lip_r));
    out.push_str("\n[quadrature]\n");
    push(&mut out, "panels", cfg.quadrature.panels.to_string());
    push(&mut out, "gl_order", cfg.quadrature.gl_order.to_string());
    push(&mut out, "pv_cutoff", fmt_f64(cfg.quadrature.pv_cutoff));
    push(&mut out, "pv_levels", cfg.quadrature.pv_levels.to_string());
    push(&mut out, "grid_points", cfg.quadrature.grid_points.to_string());
    out
}

fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

// ---------------------------------------------------------------------------
// run orchestration
// ---------------------------------------------------------------------------

/// Files and verdict produced by a run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub all_pass: bool,
    pub csv_path: PathBuf,
    pub summary_path: PathBuf,
}

struct RunArtifacts {
    csv: String,
    summary: String,
    table: String,
    all_pass: bool,
}

/// Execute a run: compute, write the CSV and the JSON summary next to it,
/// and print a human-readable table to stderr. The outcome's `all_pass` is
/// the process verdict (exit 0 on true, 1 on false).
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    let artifacts = match cfg.command {
        Command::Classify => run_classify(cfg)?,
        Command::Conjugate => run_conjugate(cfg)?,
        Command::Means => run_means(cfg)?,
        Command::Rates => run_rates(cfg)?,
        Command::Corollaries => run_corollaries(cfg)?,
    };
    let csv_path = cfg.output.clone();
    if let Some(parent) = csv_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let summary_path = summary_path_for(&csv_path);
    fs::write(&csv_path, artifacts.csv)?;
    fs::write(&summary_path, artifacts.summary)?;
    eprint!("{}", artifacts.table);
    Ok(RunOutcome {
        all_pass: artifacts.all_pass,
        csv_path,
        summary_path,
    })
}

/// Summary file sits next to the CSV with a `.summary.json` suffix.
pub fn summary_path_for(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("summary.json")
}

fn run_classify(cfg: &RunConfig) -> Result<RunArtifacts> {
    let sequence = sequence_from_expr(cfg.sequence.as_ref().unwrap())?;
    let class = cfg.class.unwrap();
    let report = classify_variation_with_k(
        &sequence,
        class,
        cfg.horizon,
        cfg.tail_horizon,
        cfg.k_candidate,
    )?;

    let mut csv = String::from("n,variation_ratio,bound_holds\n");
    for (i, ratio) in report.ratios.iter().enumerate() {
        let n = i + 1;
        let ok = *ratio <= report.k_candidate;
        csv.push_str(&format!("{n},{},{}\n", fmt_f64(*ratio), ok));
    }

    let mut j = JsonObject::new();
    j.string("command", "classify");
    j.string("sequence", cfg.sequence.as_ref().unwrap());
    j.string("class", &class.to_string());
    j.bool("holds", report.holds);
    j.number("k_candidate", report.k_candidate);
    j.opt_number("minimal_k", report.minimal_k);
    j.opt_usize("first_violation_index", report.first_violation_index);
    j.usize("horizon", report.horizon);
    j.usize("tail_horizon", report.tail_horizon);
    j.opt_number("truncation_residual", report.truncation_residual);
    j.bool("pass", report.holds);

    let mut table = String::new();
    table.push_str(&format!(
        "classify {} as {}: holds = {}, minimal K = {}\n",
        cfg.sequence.as_ref().unwrap(),
        class,
        report.holds,
        report
            .minimal_k
            .map(fmt_f64)
            .unwrap_or_else(|| "-".into()),
    ));
    if let Some(n) = report.first_violation_index {
        table.push_str(&format!(
            "  first violation at n = {n} (ratio {} > K = {})\n",
            fmt_f64(report.ratios[n - 1]),
            fmt_f64(report.k_candidate)
        ));
    }

    Ok(RunArtifacts {
        csv,
        summary: j.finish(),
        table,
        all_pass: report.holds,
    })
}

fn run_conjugate(cfg: &RunConfig) -> Result<RunArtifacts> {
    let signal = cfg.resolve_signal()?;
    let pv_spec = cfg.quadrature.pv_spec();
    let mut table = String::new();
    if signal.has_jumps() {
        // warn immediately: a later divergence error would otherwise swallow it
        eprintln!(
            "warning: {} has jump discontinuities; the principal-value integral \
             diverges where the evaluation point sits on a jump",
            signal.description()
        );
    }

    let has_reference = signal.degree().is_some();
    let mut csv = String::from(if has_reference {
        "x,pv_value,pv_error_estimate,coefficient_map,abs_difference\n"
    } else {
        "x,pv_value,pv_error_estimate\n"
    });
    let gp = cfg.x_grid.max(4);
    let step = std::f64::consts::TAU / gp as f64;
    let mut max_difference = 0.0_f64;
    let mut max_estimate = 0.0_f64;
    for j in 0..gp {
        let x = j as f64 * step;
        let est = conjugate_function_pv(&signal, x, &pv_spec)?;
        let err = est.error_estimate.unwrap_or(f64::NAN);
        max_estimate = max_estimate.max(est.error_estimate.unwrap_or(0.0));
        if let Some(reference) = signal.exact_conjugate(x) {
            let diff = (est.value - reference).abs();
            max_difference = max_difference.max(diff);
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f64(x),
                fmt_f64(est.value),
                fmt_f64(err),
                fmt_f64(reference),
                fmt_f64(diff)
            ));
        } else {
            csv.push_str(&format!(
                "{},{},{}\n",
                fmt_f64(x),
                fmt_f64(est.value),
                fmt_f64(err)
            ));
        }
    }

    let mut j = JsonObject::new();
    j.string("command", "conjugate");
    j.string("signal", signal.description());
    j.usize("grid", gp);
    j.number("pv_cutoff", cfg.quadrature.pv_cutoff);
    j.usize("panels", cfg.quadrature.panels);
    j.usize("pv_levels", cfg.quadrature.pv_levels);
    j.number("max_error_estimate", max_estimate);
    if has_reference {
        j.number("max_difference_vs_coefficient_map", max_difference);
    }
    j.bool("pass", true);

    table.push_str(&format!(
        "conjugate of {} on {} points: max pv error estimate {}\n",
        signal.description(),
        gp,
        fmt_f64(max_estimate)
    ));
    if has_reference {
        table.push_str(&format!(
            "  max |pv - coefficient map| = {}\n",
            fmt_f64(max_difference)
        ));
    }

    Ok(RunArtifacts {
        csv,
        summary: j.finish(),
        table,
        all_pass: true,
    })
}

fn run_means(cfg: &RunConfig) -> Result<RunArtifacts> {
    let signal = cfg.resolve_signal()?;
    let method = cfg.method()?;
    let max_n = *cfg.n_values.last().unwrap();
    let order = max_n + method.mode.shift();
    let grid = cfg.quadrature.grid_points.max(4 * order);
    let expansion = signal.expansion(order, grid)?;
    let transform = ConjugateTransform::new(&expansion, &method, max_n)?;
    let reference = reference_conjugate(&signal, cfg.x, &cfg.quadrature.pv_spec())?;
    let values = transform.evaluate_many(cfg.x, &cfg.n_values)?;

    let mut csv = String::from("n,R_n,P_n,Q_n,value,reference,abs_error\n");
    let table_vals = transform.table();
    for (i, &n) in cfg.n_values.iter().enumerate() {
        csv.push_str(&format!(
            "{n},{},{},{},{},{},{}\n",
            fmt_f64(table_vals.r[n]),
            fmt_f64(table_vals.p[n]),
            fmt_f64(table_vals.q[n]),
            fmt_f64(values[i]),
            fmt_f64(reference),
            fmt_f64((values[i] - reference).abs())
        ));
    }

    let mut j = JsonObject::new();
    j.string("command", "means");
    j.string("signal", signal.description());
    j.string("method", &method.name());
    j.number("x", cfg.x);
    j.number("reference", reference);
    j.number(
        "final_abs_error",
        (values[values.len() - 1] - reference).abs(),
    );
    j.bool("pass", true);

    let table = format!(
        "{} of conjugate series of {} at x = {}: value {} vs reference {}\n",
        method.name(),
        signal.description(),
        fmt_f64(cfg.x),
        fmt_f64(values[values.len() - 1]),
        fmt_f64(reference)
    );

    Ok(RunArtifacts {
        csv,
        summary: j.finish(),
        table,
        all_pass: true,
    })
}

fn rate_report_csv(csv: &mut String, report: &RateReport, preset: Option<&str>) {
    for (i, &n) in report.n_values.iter().enumerate() {
        if let Some(p) = preset {
            csv.push_str(&format!("{p},"));
        }
        csv.push_str(&format!(
            "{n},{},{},{},{},{}\n",
            fmt_f64(report.r_values[i]),
            fmt_f64(report.p_values[i]),
            fmt_f64(report.q_values[i]),
            fmt_f64(report.errors[i]),
            fmt_f64(report.errors[i].ln())
        ));
    }
    let label = preset.map(|p| format!("{p}: ")).unwrap_or_default();
    csv.push_str(&format!(
        "# {label}fitted_slope = {}, theoretical_slope = {}, pass = {}{}\n",
        report
            .fitted_slope
            .map(fmt_f64)
            .unwrap_or_else(|| "none".into()),
        fmt_f64(report.theoretical_slope),
        report.pass,
        if report.degenerate { ", degenerate" } else { "" }
    ));
}

fn rate_report_json(j: &mut JsonObject, report: &RateReport) {
    j.string("method", &report.method_name);
    j.opt_number("fitted_slope", report.fitted_slope);
    j.number("theoretical_slope", report.theoretical_slope);
    j.bool("degenerate", report.degenerate);
    j.bool("pass", report.pass);
}

fn rate_report_table(report: &RateReport, heading: &str) -> String {
    let mut t = format!(
        "{heading}: {} | n from {} to {}\n",
        report.method_name,
        report.n_values.first().unwrap(),
        report.n_values.last().unwrap()
    );
    t.push_str("      n        error\n");
    for (i, &n) in report.n_values.iter().enumerate() {
        t.push_str(&format!("{n:>7}  {:>12.5e}\n", report.errors[i]));
    }
    t.push_str(&format!(
        "  slope {} vs claimed {} => {}\n",
        report
            .fitted_slope
            .map(|s| format!("{s:.4}"))
            .unwrap_or_else(|| "-".into()),
        report.theoretical_slope,
        if report.pass { "pass" } else { "FAIL" }
    ));
    t
}

fn run_rates(cfg: &RunConfig) -> Result<RunArtifacts> {
    let signal = cfg.resolve_signal()?;
    let method = cfg.method()?;
    let lip = cfg.lip_spec()?;
    let report = rate_experiment(&signal, &method, &lip, &cfg.n_values, &cfg.rate_config())?;

    let mut csv = String::from("n,R_n,P_n,Q_n,error,log_error\n");
    rate_report_csv(&mut csv, &report, None);

    let mut j = JsonObject::new();
    j.string("command", "rates");
    j.string("signal", signal.description());
    j.number("lip_alpha", lip.alpha);
    j.number("lip_r", lip.r);
    j.raw("seed", &cfg.seed.to_string());
    rate_report_json(&mut j, &report);

    let table = rate_report_table(&report, "rate experiment");
    let all_pass = report.pass;
    Ok(RunArtifacts {
        csv,
        summary: j.finish(),
        table,
        all_pass,
    })
}

fn run_corollaries(cfg: &RunConfig) -> Result<RunArtifacts> {
    let signal = cfg.resolve_signal()?;
    let method = cfg.method()?;
    let lip = cfg.lip_spec()?;
    let reports = corollary_suite(&signal, &method, &lip, &cfg.n_values, &cfg.rate_config())?;
    let presets = ["sup_norm", "unit_q", "unit_p"];

    let mut csv = String::from("preset,n,R_n,P_n,Q_n,error,log_error\n");
    for (report, preset) in reports.iter().zip(presets) {
        rate_report_csv(&mut csv, report, Some(preset));
    }

    let mut j = JsonObject::new();
    j.string("command", "corollaries");
    j.string("signal", signal.description());
    j.number("lip_alpha", lip.alpha);
    j.number("lip_r", lip.r);
    let mut items = Vec::new();
    for (report, preset) in reports.iter().zip(presets) {
        let mut jj = JsonObject::new();
        jj.string("preset", preset);
        rate_report_json(&mut jj, report);
        items.push(jj.finish_inline());
    }
    j.raw("presets", &format!("[{}]", items.join(", ")));
    let all_pass = reports.iter().all(|r| r.pass);
    j.bool("pass", all_pass);

    let mut table = String::new();
    for (report, preset) in reports.iter().zip(presets) {
        table.push_str(&rate_report_table(report, preset));
    }

    Ok(RunArtifacts {
        csv,
        summary: j.finish(),
        table,
        all_pass,
    })
}

// ---------------------------------------------------------------------------
// minimal JSON emitter (stable key order, deterministic floats)
// ---------------------------------------------------------------------------

struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    fn new() -> Self {
        Self { fields: Vec::new() }
    }
    fn string(&mut self, key: &str, value: &str) {
        self.fields
            .push((key.into(), format!("\"{}\"", value.replace('"', "\\\""))));
    }
    fn number(&mut self, key: &str, value: f64) {
        let repr = if value.is_finite() {
            fmt_f64(value)
        } else {
            format!("\"{value:?}\"")
        };
        self.fields.push((key.into(), repr));
    }
    fn usize(&mut self, key: &str, value: usize) {
        self.fields.push((key.into(), value.to_string()));
    }
    fn bool(&mut self, key: &str, value: bool) {
        self.fields.push((key.into(), value.to_string()));
    }
    fn raw(&mut self, key: &str, value: &str) {
        self.fields.push((key.into(), value.into()));
    }
    fn opt_number(&mut self, key: &str, value: Option<f64>) {
        match value {
            Some(v) => self.number(key, v),
            None => self.fields.push((key.into(), "null".into())),
        }
    }
    fn opt_usize(&mut self, key: &str, value: Option<usize>) {
        match value {
            Some(v) => self.usize(key, v),
            None => self.fields.push((key.into(), "null".into())),
        }
    }
    fn finish(self) -> String {
        let body: Vec<String> = self
            .fields
            .into_iter()
            .map(|(k, v)| format!("  \"{k}\": {v}"))
            .collect();
        format!("{{\n{}\n}}\n", body.join(",\n"))
    }
    fn finish_inline(self) -> String {
        let body: Vec<String> = self
            .fields
            .into_iter()
            .map(|(k, v)| format!("\"{k}\": {v}"))
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}
