//! Executes a resolved experiment spec. Each subcommand writes one or
//! more tables into the output directory; csv is the default, json
//! mirrors the same tables as arrays of objects. Long scans flush
//! after every completed step so an aborted run keeps its partial
//! rows (without a manifest, marking it incomplete).

use std::path::Path;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use porous_core::diag::{
    check_lambda_identities, flux_correction_report, norm_bounds_report, pressure_lipschitz,
    run_hydro_compare, HydroCompareConfig,
};
use porous_core::lattice::{simulate_with_rng, Configuration, DynamicsParams};
use porous_core::measures::{
    initial_entropy_scan, sample_product, EpsRule, LatticeProfile, RegularizationSchedule,
};
use porous_core::pme::{
    barenblatt, barenblatt_profile, kernel_sup_constant, regularize_initial, solve_pme, FieldKind,
    GridProfile, SolverConfig,
};

use crate::emit::{Emitter, RESOLVED_SPEC};
use crate::spec::{parse_eps_rule, ExperimentSpec};
use crate::CliError;

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

/// Float cell; non-finite values degrade to null rather than panicking.
fn num(x: f64) -> Json {
    serde_json::Number::from_f64(x).map_or(Json::Null, Json::Number)
}

fn csv_cell(v: &Json) -> String {
    match v {
        Json::Null => String::new(),
        Json::Bool(b) => b.to_string(),
        Json::Number(n) => match n.as_i64() {
            Some(i) => i.to_string(),
            None => format!("{:.16e}", n.as_f64().expect("numeric cell")),
        },
        Json::String(s) => s.clone(),
        _ => unreachable!("tables hold scalar cells"),
    }
}

/// One output table; rendered as csv (floats in full-precision
/// scientific notation) or as a json array of objects.
struct Table {
    name: &'static str,
    columns: &'static [&'static str],
    rows: Vec<Vec<Json>>,
}

impl Table {
    fn new(name: &'static str, columns: &'static [&'static str]) -> Self {
        Table {
            name,
            columns,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Json>) {
        debug_assert_eq!(row.len(), self.columns.len(), "table {}", self.name);
        self.rows.push(row);
    }

    fn emit(&self, emitter: &mut Emitter, format: &str) -> Result<(), CliError> {
        let (file, body) = match format {
            "json" => (format!("{}.json", self.name), self.render_json()),
            _ => (format!("{}.csv", self.name), self.render_csv()),
        };
        emitter.write(&file, body.as_bytes())
    }

    fn render_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let object: serde_json::Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(&k, v)| (k.to_string(), v.clone()))
                    .collect();
                Json::Object(object)
            })
            .collect();
        let mut body = serde_json::to_string_pretty(&Json::Array(rows)).expect("scalar cells");
        body.push('\n');
        body
    }
}

/// Initial density on `cells` grid cells: either the self-similar
/// pulse (centred mid-torus) or a csv file whose last column is the
/// density, resampled periodically onto the requested grid.
fn initial_datum(
    spec: &ExperimentSpec,
    prefix: &str,
    cells: usize,
) -> Result<GridProfile, CliError> {
    let m = spec.get("m").as_u64() as usize;
    let init = spec.get(&format!("{prefix}.init")).as_text();
    if init == "barenblatt" {
        let c = spec.get(&format!("{prefix}.c")).as_f64();
        let t0 = spec.get(&format!("{prefix}.t0")).as_f64();
        barenblatt_profile(t0, m, c, 0.5, cells).map_err(|e| {
            invalid(format!(
                "keys `{prefix}.c` = {c} and `{prefix}.t0` = {t0} do not give \
                 an admissible pulse: {e}"
            ))
        })
    } else {
        let sampled = file_profile(init)?;
        GridProfile::from_fn(cells, FieldKind::Density, |u| sampled.value_at(u))
            .map_err(runtime)
    }
}

fn file_profile(init: &str) -> Result<GridProfile, CliError> {
    let path = init.strip_prefix("file:").expect("validated init");
    let values = read_density_column(Path::new(path))?;
    GridProfile::density(values).map_err(runtime)
}

fn read_density_column(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read initial profile {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let last = line.rsplit(',').next().expect("split is nonempty").trim();
        match last.parse::<f64>() {
            Ok(v) => values.push(v),
            // A non-numeric row is a header only before any data.
            Err(_) if values.is_empty() => continue,
            Err(_) => {
                return Err(CliError::Runtime(format!(
                    "{}:{}: expected a numeric density in the last column, got `{last}`",
                    path.display(),
                    lineno + 1
                )));
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::Runtime(format!(
            "{}: no density rows found",
            path.display()
        )));
    }
    Ok(values)
}

fn snapshot_times(t_end: f64, count: u64) -> Vec<f64> {
    (0..=count).map(|i| t_end * i as f64 / count as f64).collect()
}

fn eps_schedule(m: usize, rule_text: &str) -> Result<RegularizationSchedule, CliError> {
    match parse_eps_rule(rule_text).expect("validated rule") {
        None => RegularizationSchedule::default_for(m).map_err(invalid),
        Some(exponent) => Ok(RegularizationSchedule {
            m,
            rule: EpsRule::PowerLaw { exponent },
        }),
    }
}

pub fn execute(spec: &ExperimentSpec) -> Result<(), CliError> {
    let out = Path::new(spec.get("out").as_text());
    let overwrite = spec.get("overwrite").as_bool();
    let format = spec.get("format").as_text().to_string();

    let mut emitter = Emitter::prepare(out, overwrite)?;
    emitter.write(RESOLVED_SPEC, spec.render().as_bytes())?;

    match spec.subcommand.as_str() {
        "simulate" => run_simulate(spec, &mut emitter, &format)?,
        "solve" => run_solve(spec, &mut emitter, &format)?,
        "regularize" => run_regularize(spec, &mut emitter, &format)?,
        "hydro-compare" => run_hydro(spec, &mut emitter, &format)?,
        "entropy-scan" => run_entropy_scan(spec, &mut emitter, &format)?,
        "diagnostics" => run_diagnostics(spec, &mut emitter, &format)?,
        other => unreachable!("unknown subcommand `{other}` past validation"),
    }
    emitter.finish()
}

fn bits(cfg: &Configuration) -> String {
    (0..cfg.len())
        .map(|x| if cfg.occ(x as isize) == 1 { '1' } else { '0' })
        .collect()
}

/// Product-measure start, then the constrained dynamics on the ring;
/// the sampling and the jumps draw from one seeded stream.
fn run_simulate(
    spec: &ExperimentSpec,
    emitter: &mut Emitter,
    format: &str,
) -> Result<(), CliError> {
    let n = spec.get("n").as_u64() as usize;
    let m = spec.get("m").as_u64() as usize;
    let alpha = spec.get("simulate.alpha").as_f64();
    let t_end = spec.get("t").as_f64();
    let seed = spec.get("seed").as_u64();
    let count = spec.get("simulate.snapshots").as_u64();

    let params = DynamicsParams::new(n, m, alpha, seed).map_err(invalid)?;
    let profile = LatticeProfile::constant(n, alpha).map_err(invalid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let initial = sample_product(&profile, &mut rng);
    let record_at: Vec<f64> = (1..=count)
        .map(|i| t_end * i as f64 / count as f64)
        .collect();
    let record = simulate_with_rng(&initial, &params, t_end, &record_at, &mut rng);

    let mut trajectory = Table::new("trajectory", &["time", "configuration", "particles"]);
    trajectory.push(vec![
        num(0.0),
        json!(bits(&initial)),
        json!(initial.particle_count()),
    ]);
    for (time, cfg) in record.macro_times.iter().zip(&record.snapshots) {
        trajectory.push(vec![num(*time), json!(bits(cfg)), json!(cfg.particle_count())]);
    }
    trajectory.emit(emitter, format)?;

    let mut summary = Table::new("summary", &["jumps", "frozen"]);
    summary.push(vec![json!(record.jump_count), json!(record.frozen)]);
    summary.emit(emitter, format)
}

fn run_solve(spec: &ExperimentSpec, emitter: &mut Emitter, format: &str) -> Result<(), CliError> {
    let m = spec.get("m").as_u64() as usize;
    let cells = spec.get("grid").as_u64() as usize;
    let t_end = spec.get("t").as_f64();
    let count = spec.get("solve.snapshots").as_u64();

    let mut rho0 = initial_datum(spec, "solve", cells)?;
    if let Some(eps) = spec.maybe("eps") {
        rho0 = regularize_initial(&rho0, eps.as_f64(), m).map_err(runtime)?;
    }
    let config = SolverConfig {
        m,
        cfl_safety: spec.get("solve.cfl").as_f64(),
        t_end,
        snapshot_times: snapshot_times(t_end, count),
        dt_cap: None,
    };
    let field = solve_pme(&rho0, &config).map_err(runtime)?;

    let mut table = Table::new("field", &["time", "u", "rho"]);
    for (time, snapshot) in field.times().iter().zip(field.snapshots()) {
        for (j, &value) in snapshot.iter().enumerate() {
            let u = (j as f64 + 0.5) / cells as f64;
            table.push(vec![num(*time), num(u), num(value)]);
        }
    }
    table.emit(emitter, format)
}

fn run_regularize(
    spec: &ExperimentSpec,
    emitter: &mut Emitter,
    format: &str,
) -> Result<(), CliError> {
    let m = spec.get("m").as_u64() as usize;
    let cells = spec.get("grid").as_u64() as usize;
    let eps = match spec.maybe("eps") {
        Some(v) => v.as_f64(),
        None => {
            let schedule = eps_schedule(m, spec.get("eps-rule").as_text())?;
            let n = spec.get("n").as_u64() as usize;
            schedule.eps_checked(n).map_err(invalid)?
        }
    };

    let raw = initial_datum(spec, "regularize", cells)?;
    let smoothed = regularize_initial(&raw, eps, m).map_err(runtime)?;

    let mut profiles = Table::new("profiles", &["u", "raw", "regularized"]);
    for (j, (&a, &b)) in raw.values().iter().zip(smoothed.values()).enumerate() {
        profiles.push(vec![num((j as f64 + 0.5) / cells as f64), num(a), num(b)]);
    }
    profiles.emit(emitter, format)?;

    let sup_distance = raw
        .values()
        .iter()
        .zip(smoothed.values())
        .map(|(&a, &b)| (a - b).abs())
        .fold(0.0_f64, f64::max);
    let mut report = Table::new(
        "report",
        &["eps", "lip_raw", "lip_regularized", "sup_distance", "min", "max"],
    );
    report.push(vec![
        num(eps),
        num(raw.lipschitz()),
        num(smoothed.lipschitz()),
        num(sup_distance),
        num(smoothed.min()),
        num(smoothed.max()),
    ]);
    report.emit(emitter, format)
}

/// One row per ring size, flushed as soon as its ensemble finishes.
/// The seed is mixed per size inside the core, so the rows match a
/// single batched scan over the same sizes.
fn run_hydro(spec: &ExperimentSpec, emitter: &mut Emitter, format: &str) -> Result<(), CliError> {
    let m = spec.get("m").as_u64() as usize;
    let initial = hydro_initial(spec, "hydro")?;
    let mut table = Table::new(
        "rows",
        &["n", "replicas", "l1_error", "eq_occ_flat", "eq_occ_cos", "eq_h_flat", "eq_h_cos"],
    );
    for &n in spec.get("hydro.sizes").as_sizes() {
        let config = HydroCompareConfig {
            m,
            sizes: vec![n],
            t_end: spec.get("t").as_f64(),
            replicas: spec.get("replicas").as_u64() as usize,
            seed: spec.get("seed").as_u64(),
            block_radius: spec.get("hydro.ell").as_u64() as usize,
            solver_cells: spec.get("grid").as_u64() as usize,
            cfl_safety: 0.5,
            eps: spec.maybe("eps").map(|v| v.as_f64()),
            threads: spec.get("threads").as_u64() as usize,
        };
        for row in run_hydro_compare(&initial, &config).map_err(runtime)? {
            table.push(vec![
                json!(row.n),
                json!(row.replicas),
                num(row.l1_error),
                num(row.eq_occ_flat),
                num(row.eq_occ_cos),
                num(row.eq_h_flat),
                num(row.eq_h_cos),
            ]);
        }
        table.emit(emitter, format)?;
    }
    Ok(())
}

/// Macroscopic initial density as a closure over the unit torus. The
/// pulse parameters are checked once up front; the closure then
/// evaluates the verified pulse directly.
fn hydro_initial(
    spec: &ExperimentSpec,
    prefix: &str,
) -> Result<Box<dyn Fn(f64) -> f64>, CliError> {
    let m = spec.get("m").as_u64() as usize;
    let init = spec.get(&format!("{prefix}.init")).as_text();
    if init == "barenblatt" {
        let c = spec.get(&format!("{prefix}.c")).as_f64();
        let t0 = spec.get(&format!("{prefix}.t0")).as_f64();
        barenblatt(t0, 0.0, m, c).map_err(|e| {
            invalid(format!(
                "keys `{prefix}.c` = {c} and `{prefix}.t0` = {t0} do not give \
                 an admissible pulse: {e}"
            ))
        })?;
        Ok(Box::new(move |u| {
            barenblatt(t0, u - 0.5, m, c).expect("parameters verified above")
        }))
    } else {
        let sampled = file_profile(init)?;
        Ok(Box::new(move |u| sampled.value_at(u)))
    }
}

fn run_entropy_scan(
    spec: &ExperimentSpec,
    emitter: &mut Emitter,
    format: &str,
) -> Result<(), CliError> {
    let m = spec.get("m").as_u64() as usize;
    let schedule = eps_schedule(m, spec.get("eps-rule").as_text())?;
    let sizes = spec.get("entropy.sizes").as_sizes().to_vec();
    for &n in &sizes {
        schedule.eps_checked(n).map_err(|e| {
            invalid(format!("key `entropy.sizes` entry {n} is outside the rule's range: {e}"))
        })?;
    }
    let initial = hydro_initial(spec, "entropy")?;
    let rows = initial_entropy_scan(&initial, &schedule, &sizes).map_err(runtime)?;

    let mut table = Table::new("rows", &["n", "eps", "entropy", "normalized"]);
    for row in rows {
        table.push(vec![json!(row.n), num(row.eps), num(row.entropy), num(row.normalized)]);
    }
    table.emit(emitter, format)
}

/// Regularizes, solves, and reports the closed-form identity residuals,
/// the a priori norm bounds, and the flux-correction integrals on one
/// space-time field.
fn run_diagnostics(
    spec: &ExperimentSpec,
    emitter: &mut Emitter,
    format: &str,
) -> Result<(), CliError> {
    let m = spec.get("m").as_u64() as usize;
    let cells = spec.get("grid").as_u64() as usize;
    let t_end = spec.get("t").as_f64();
    let eps = spec.get("eps").as_f64();
    let alpha = spec.get("diag.alpha").as_f64();
    let count = spec.get("diag.snapshots").as_u64();

    let raw = initial_datum(spec, "diag", cells)?;
    let c_lip = pressure_lipschitz(&raw, m).map_err(runtime)?;
    let smoothed = regularize_initial(&raw, eps, m).map_err(runtime)?;
    let config = SolverConfig {
        m,
        cfl_safety: 0.5,
        t_end,
        snapshot_times: snapshot_times(t_end, count),
        dt_cap: None,
    };
    let field = solve_pme(&smoothed, &config).map_err(runtime)?;

    let residuals = check_lambda_identities(&field, alpha, m).map_err(runtime)?;
    let mut identities = Table::new("identities", &["residual", "value"]);
    identities.push(vec![json!("gradient"), num(residuals.gradient)]);
    identities.push(vec![json!("hessian"), num(residuals.hessian)]);
    identities.push(vec![json!("third"), num(residuals.third)]);
    identities.push(vec![json!("evolution"), num(residuals.evolution)]);
    identities.emit(emitter, format)?;

    let entries =
        norm_bounds_report(&field, eps, m, c_lip, kernel_sup_constant()).map_err(runtime)?;
    let mut bounds = Table::new(
        "bounds",
        &["name", "eps", "measured", "eps_power", "constant", "bound", "empirical_constant", "slack", "satisfied"],
    );
    for e in entries {
        bounds.push(vec![
            json!(e.name),
            num(e.eps),
            num(e.measured),
            json!(e.eps_power),
            e.constant.map_or(Json::Null, num),
            e.bound.map_or(Json::Null, num),
            num(e.empirical_constant),
            e.slack.map_or(Json::Null, num),
            e.satisfied.map_or(Json::Null, |b| json!(b)),
        ]);
    }
    bounds.emit(emitter, format)?;

    let integrals = flux_correction_report(&field, m).map_err(runtime)?;
    let mut flux = Table::new("flux", &["time", "integral"]);
    for (time, integral) in field.times().iter().zip(integrals) {
        flux.push(vec![num(*time), num(integral)]);
    }
    flux.emit(emitter, format)
}
