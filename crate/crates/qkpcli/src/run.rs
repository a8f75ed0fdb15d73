//! Subcommand implementations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use diffalg::{DiffPoly, DiffRing};
use dressing::{dress, flow_table_json, symbolic_l, velocity_tables, DressError, DressedPair, Flow};
use geomzero::{enumerate_s, lattice_from_pair, multiplier_map, torus_csv, torus_metadata, DivisorS, GeomError, Grid, LatticePair, SpectralDataG0};
use hslspec::{log_spectrum, min_f_alpha, numeric_spectrum, spectrum_json, HslData, HslError};
use nodal::{darboux_periodicity_check, BakerSource, Darboux, GenusZero, NodalError};
use qcore::par::{map_indexed, Exec};
use qcore::{Complex64, ConjRing, GaussRat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use taugrass::fixtures::{kp_base, quaternionic_fixture, random_gauss, random_quaternionic_frame, root_fixture, support_counterexample};
use taugrass::{frame_report, FiniteRankFrame, TauError};
use thiserror::Error;

use crate::cli::{Cli, Command, DarbouxArgs, DressArgs, Genus0Args, Genus0Mode, HslArgs, HslMode, TauArgs};
use crate::config::{dress_lo, RunConfig, DIVISOR_BOUND, DS2_ORDER, HSL_CUTOFF, MONODROMY_TOL, SPECTRUM_TOL};

/// Largest tau window; the support scan grows like `C(4W, 2W)`.
pub const MAX_TAU_WINDOW: i64 = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Argument(String),
    #[error("{0}")]
    Computation(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Argument(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Argument(_) => "argument",
            CliError::Computation(_) => "computation",
            CliError::Io { .. } => "io",
        };
        json!({"error": self.to_string(), "kind": kind})
    }
}

fn arg(msg: impl ToString) -> CliError {
    CliError::Argument(msg.to_string())
}

fn compute(msg: impl ToString) -> CliError {
    CliError::Computation(msg.to_string())
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::EpsilonOutOfRange(_) | GeomError::NotUnimodular(_) | GeomError::DegenerateLattice => arg(e),
            _ => compute(e),
        }
    }
}

impl From<NodalError> for CliError {
    fn from(e: NodalError) -> Self {
        match e {
            NodalError::KappaInside(_) | NodalError::KappaAtDivisor(_) => arg(e),
            NodalError::Geom(g) => g.into(),
            _ => compute(e),
        }
    }
}

impl From<HslError> for CliError {
    fn from(e: HslError) -> Self {
        match e {
            HslError::ZeroZeta => compute(e),
            _ => arg(e),
        }
    }
}

impl From<DressError> for CliError {
    fn from(e: DressError) -> Self {
        compute(e)
    }
}

impl From<TauError> for CliError {
    fn from(e: TauError) -> Self {
        compute(e)
    }
}

/// What a command produced.
///
/// The JSON document goes to `json_path`, or to standard output when that is
/// absent. CSV data always has a path.
pub struct Output {
    pub json: Value,
    pub json_path: Option<PathBuf>,
    pub csv: Option<(PathBuf, String)>,
    /// Print the JSON when it has no path.
    pub print_json: bool,
    /// Exit code when the command itself succeeded.
    pub code: i32,
}

impl Output {
    fn json(json: Value, out: Option<&Path>) -> Self {
        Output { json, json_path: out.map(Path::to_path_buf), csv: None, print_json: true, code: 0 }
    }

    /// CSV at `out`, metadata beside it at `out.json`.
    fn csv_with_metadata(csv: String, json: Value, out: &Path) -> Self {
        let mut meta = out.as_os_str().to_owned();
        meta.push(".json");
        Output { json, json_path: Some(PathBuf::from(meta)), csv: Some((out.to_path_buf(), csv)), print_json: false, code: 0 }
    }

    /// Write every file, then print the JSON if it has no path.
    pub fn emit(&self) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(&self.json).expect("JSON serializes") + "\n";
        if let Some((path, csv)) = &self.csv {
            write_file(path, csv)?;
        }
        match &self.json_path {
            Some(p) => write_file(p, &text),
            None if !self.print_json => Ok(()),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn require_out<'a>(out: Option<&'a Path>, what: &str) -> Result<&'a Path, CliError> {
    out.ok_or_else(|| arg(format!("{what} writes CSV and needs --out")))
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn with_config(config: &RunConfig, mut v: Value) -> Value {
    v["config"] = serde_json::to_value(config).expect("config serializes");
    v
}

/// Run the parsed command.
pub fn run(cli: &Cli, config: &RunConfig, exec: Exec) -> Result<Output, CliError> {
    let out = cli.out.as_deref();
    let mut res = match &cli.command {
        Command::Dress(a) => Output::json(dress_cmd(a, exec)?, out),
        Command::Ds2 => Output::json(ds2_cmd(exec)?, out),
        Command::Genus0(a) => genus0_cmd(a, cli.seed, out, exec)?,
        Command::Darboux(a) => darboux_cmd(a, out, exec)?,
        Command::Hsl(a) => hsl_cmd(a, out, exec)?,
        Command::Tau(a) => Output::json(tau_cmd(a, cli.seed, exec)?, out),
        Command::Selftest => selftest_cmd(out, exec),
    };
    res.json = with_config(config, res.json);
    Ok(res)
}


fn dressed(order: usize) -> Result<DressedPair<DiffPoly>, CliError> {
    if order == 0 {
        return Err(arg("--order must be at least 1"));
    }
    Ok(dress(&symbolic_l(dress_lo(order)), order)?)
}

fn flow_tables(d: &DressedPair<DiffPoly>, flows: &[Flow], exec: Exec) -> Result<Vec<Value>, CliError> {
    Ok(velocity_tables(d, flows, exec)?
        .into_iter()
        .map(|(_, p, v)| {
            let mut t = flow_table_json(&v);
            t["generator"] = p.to_json();
            t
        })
        .collect())
}

fn dress_cmd(a: &DressArgs, exec: Exec) -> Result<Value, CliError> {
    if a.flows.contains(&0) {
        return Err(arg("flow indices start at 1"));
    }
    let d = dressed(a.order)?;
    let r = d.residual();
    let residual = if r.is_zero() { "0".to_string() } else { r.to_string() };
    let u = d.dirac_potential()?;
    let flows: Vec<Flow> = a.flows.iter().flat_map(|&k| [Flow::s(k), Flow::t(k)]).collect();
    Ok(json!({
        "window": {"lo": dress_lo(a.order), "depth": a.order},
        "residual": residual,
        "residual_lo_valid": r.lo_valid(),
        "potential": {"a": u.a.render(), "b": u.b.render()},
        "K": d.k.to_json(),
        "flows": flow_tables(&d, &flows, exec)?,
    }))
}

fn ds2_cmd(exec: Exec) -> Result<Value, CliError> {
    let d = dressed(DS2_ORDER)?;
    let mut t = flow_tables(&d, &[Flow::t(2)], exec)?.remove(0);
    t["window"] = json!({"lo": dress_lo(DS2_ORDER), "depth": DS2_ORDER});
    Ok(t)
}

fn genus0_setup(epsilon: [f64; 2], q1: [f64; 2]) -> Result<(SpectralDataG0, LatticePair, DivisorS), CliError> {
    let d = SpectralDataG0::new(c(epsilon))?;
    let lp = lattice_from_pair(&d, c(q1))?;
    let s = enumerate_s(&lp, DIVISOR_BOUND);
    Ok((d, lp, s))
}

/// Nodes `z = (s/G)λ₁ + (t/G)λ₂` in the row order of the torus CSV.
fn domain_nodes(lp: &LatticePair, g: usize) -> Vec<Complex64> {
    (0..g * g)
        .map(|k| lp.gens[0] * ((k % g) as f64 / g as f64) + lp.gens[1] * ((k / g) as f64 / g as f64))
        .collect()
}

fn check_grid(g: usize) -> Result<(), CliError> {
    if g == 0 {
        return Err(arg("--grid must be positive"));
    }
    Ok(())
}

/// Largest `|ψ(z+λ_j, Q) − μ_j⁻¹ψ(z, Q)|` relative to `|ψ(z, Q)|`, per generator.
fn monodromy_defects(d: &SpectralDataG0, lp: &LatticePair, s: &DivisorS, zs: &[Complex64], exec: Exec) -> Result<[f64; 2], CliError> {
    let per = map_indexed(zs.len(), exec, |k| -> Result<[f64; 2], GeomError> {
        let z = zs[k];
        let mut w = [0.0f64; 2];
        for p in &s.points {
            let base = d.baker(z, p.eta)?;
            for (j, l) in lp.gens.iter().enumerate() {
                let shifted = d.baker(z + l, p.eta)?;
                let defect = shifted.sub(&base.map(|c| c / f64::from(lp.mu[j]))).norm() / base.norm();
                w[j] = w[j].max(defect);
            }
        }
        Ok(w)
    });
    let mut w = [0.0f64; 2];
    for r in per {
        let r = r?;
        w = [w[0].max(r[0]), w[1].max(r[1])];
    }
    Ok(w)
}

fn genus0_cmd(a: &Genus0Args, seed: u64, out: Option<&Path>, exec: Exec) -> Result<Output, CliError> {
    let (d, lp, s) = genus0_setup(a.epsilon, a.q1)?;
    let mut meta = torus_metadata(&d, &lp, &s);
    match a.mode {
        Genus0Mode::Torus { grid } => {
            check_grid(grid)?;
            let out = require_out(out, "genus0 torus")?;
            let csv = torus_csv(&d, &lp, &s, grid, exec)?;
            let defects = monodromy_defects(&d, &lp, &s, &domain_nodes(&lp, grid), exec)?;
            meta["mu"] = json!(lp.mu);
            meta["monodromy_defects"] = json!(defects);
            meta["monodromy_ok"] = json!(defects.iter().all(|&x| x < MONODROMY_TOL));
            meta["rows"] = json!(csv.lines().count() - 1);
            Ok(Output::csv_with_metadata(csv, meta, out))
        }
        Genus0Mode::Spectrum { samples, cutoff } => {
            if cutoff < 1 {
                return Err(arg("--cutoff must be at least 1"));
            }
            let h = HslData::new(lp.gens, lp.beta0)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let etas: Vec<Complex64> = (0..samples)
                .map(|_| Complex64::from_polar(rng.gen_range(0.2..5.0), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let rows = map_indexed(samples, exec, |k| -> Result<Value, GeomError> {
                let q = etas[k];
                let chi = [multiplier_map(&d, &lp, q, 0)?, multiplier_map(&d, &lp, q, 1)?];
                let (eta, xi) = log_spectrum(lp.gens, chi);
                let (f, (m, n)) = min_f_alpha(&h, eta, xi, cutoff);
                Ok(json!({
                    "eta_q": pair(q),
                    "chi": [pair(chi[0]), pair(chi[1])],
                    "eta": pair(eta),
                    "xi": pair(xi),
                    "min_f": f,
                    "alpha": [m, n],
                }))
            })
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
            let worst = rows.iter().filter_map(|r| r["min_f"].as_f64()).fold(0.0, f64::max);
            let mut divisor: f64 = 0.0;
            for p in &s.points {
                for j in 0..2 {
                    divisor = divisor.max((multiplier_map(&d, &lp, p.eta, j)? - 1.0).norm());
                }
            }
            meta["samples"] = json!(rows);
            meta["max_min_f"] = json!(worst);
            meta["divisor_max_chi_defect"] = json!(divisor);
            meta["on_spectrum"] = json!(worst < SPECTRUM_TOL);
            Ok(Output::json(meta, out))
        }
    }
}

fn darboux_cmd(a: &DarbouxArgs, out: Option<&Path>, exec: Exec) -> Result<Output, CliError> {
    check_grid(a.grid)?;
    let out = require_out(out, "darboux")?;
    let (d, lp, s) = genus0_setup(a.epsilon, a.q1)?;
    let g0 = GenusZero::new(&d);
    let kappa = c(a.kappa);
    let dt = Darboux::new(g0, kappa)?;
    let zs = domain_nodes(&lp, a.grid);
    let report = darboux_periodicity_check(&g0, &lp, &s, kappa, &zs)?;
    let zetas: Vec<Complex64> = s.points.iter().map(|p| d.epsilon * p.eta).collect();
    let nodes = map_indexed(zs.len(), exec, |k| -> Result<(f64, Option<Vec<String>>), NodalError> {
        let z = zs[k];
        let phi = g0.tail(z, kappa)?;
        let dphi = g0.tail_dz(z, kappa)?;
        let cond = dphi.norm().max(1.0) / phi.norm();
        let mut rows = Vec::with_capacity(zetas.len());
        for (m, &zeta) in zetas.iter().enumerate() {
            match dt.tail(z, zeta) {
                Ok(t) => {
                    let q = t.mul_complex_right(&(z * zeta).exp());
                    rows.push(format!("{},{},{},{},{},{},{}", z.re, z.im, m, q.a.re, q.a.im, q.b.re, q.b.im));
                }
                Err(NodalError::SingularTransform(_)) => return Ok((cond, None)),
                Err(e) => return Err(e),
            }
        }
        Ok((cond, Some(rows)))
    });
    let mut csv = String::from("x,y,m,re_a,im_a,re_b,im_b\n");
    let mut condition_number = Vec::with_capacity(zs.len());
    let mut singular_z = Vec::new();
    for (k, node) in nodes.into_iter().enumerate() {
        let (cond, rows) = node?;
        condition_number.push(cond);
        match rows {
            Some(rows) => {
                for r in rows {
                    csv.push_str(&r);
                    csv.push('\n');
                }
            }
            None => singular_z.push(pair(zs[k])),
        }
    }
    let mut meta = torus_metadata(&d, &lp, &s);
    meta["kappa"] = pair(kappa);
    meta["monodromy_defects"] = json!(report.defects);
    meta["monodromy_ok"] = json!(report.defects.iter().all(|&x| x < MONODROMY_TOL));
    meta["condition_number"] = json!(condition_number);
    meta["singular_z"] = json!(singular_z);
    Ok(Output::csv_with_metadata(csv, meta, out))
}

fn hsl_cmd(a: &HslArgs, out: Option<&Path>, exec: Exec) -> Result<Output, CliError> {
    let [p, q, r, t] = a.lattice;
    let h = HslData::new([Complex64::new(p, q), Complex64::new(r, t)], c(a.beta0))?;
    match a.mode {
        None => {
            let mut v = spectrum_json(&h, HSL_CUTOFF, "");
            v["cloud"] = Value::Null;
            Ok(Output::json(v, out))
        }
        Some(HslMode::Spectrum { grid, cutoff, extent, tol }) => {
            if grid < 2 {
                return Err(arg("--grid must be at least 2"));
            }
            if !(extent.is_finite() && extent > 0.0 && tol.is_finite() && tol > 0.0) {
                return Err(arg("--extent and --tol must be positive"));
            }
            let out = require_out(out, "hsl spectrum")?;
            let g = Grid { x0: -extent, y0: -extent, h: 2.0 * extent / (grid - 1) as f64, nx: grid, ny: grid };
            let scan = numeric_spectrum(&h, &g, cutoff, tol, exec)?;
            let cloud = out.with_extension("cloud.csv");
            let mut v = spectrum_json(&h, cutoff, &cloud.display().to_string());
            v["flagged"] = json!(scan.points.iter().filter(|p| p.flagged).count());
            v["scanned"] = json!(scan.points.len());
            Ok(Output {
                json: v,
                json_path: Some(out.to_path_buf()),
                csv: Some((cloud, scan.to_csv())),
                print_json: false,
                code: 0,
            })
        }
    }
}

fn tau_frame(a: &TauArgs, rng: &mut ChaCha8Rng) -> Result<FiniteRankFrame, CliError> {
    if a.window < 1 || a.window > MAX_TAU_WINDOW || a.window % 2 != 0 {
        return Err(arg(format!("--window must be even and between 2 and {MAX_TAU_WINDOW}")));
    }
    let w = match a.fixture.as_str() {
        "kp" => FiniteRankFrame::kp(&kp_base())?,
        "quaternionic" => quaternionic_fixture(),
        "counterexample" => support_counterexample(),
        "root" => root_fixture(&GaussRat::new(qcore::rat(1, 3), qcore::rat(-2, 1))),
        "random" => random_quaternionic_frame(rng, -a.window / 2, a.window / 2, 0.5),
        other => {
            return Err(arg(format!(
                "unknown fixture {other:?}; expected kp, quaternionic, counterexample, root or random"
            )))
        }
    };
    if -w.lo() > a.window || w.n() > a.window {
        return Err(TauError::OutsideWindow(format!(
            "fixture {} needs the window [{}, {}), wider than ±{}",
            a.fixture,
            w.lo(),
            w.n(),
            a.window
        ))
        .into());
    }
    Ok(w)
}

fn tau_cmd(a: &TauArgs, seed: u64, exec: Exec) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = tau_frame(a, &mut rng)?;
    let mut flows = vec![taugrass::Flow::Pair(vec![], vec![])];
    for _ in 0..a.samples {
        let mut t = || (0..2).map(|_| random_gauss(&mut rng, 2).mul(&GaussRat::from_ratio(1, 2))).collect::<Vec<_>>();
        let (t0, t1) = (t(), t());
        flows.push(taugrass::Flow::Pair(t0, t1));
    }
    Ok(frame_report(&w, &flows, exec)?)
}

fn selftest_cmd(out: Option<&Path>, exec: Exec) -> Output {
    let outcomes = acceptance::run_all(exec);
    for o in &outcomes {
        println!("{o}");
    }
    let v = acceptance::report_json(&outcomes);
    let code = if v["all_as_expected"] == true { 0 } else { 1 };
    Output { code, print_json: false, ..Output::json(v, out) }
}
