//! The run configuration echoed into every output.

use serde::Serialize;

use crate::cli::{Cli, Command, Genus0Mode, HslMode};

/// Divisor points are enumerated in this coefficient box.
pub const DIVISOR_BOUND: i64 = 64;
/// Monodromy defects above this are reported as failures.
pub const MONODROMY_TOL: f64 = 1e-10;
/// Coefficient box of the plain `hsl` component list.
pub const HSL_CUTOFF: i64 = 8;
/// Spectrum samples count as on the curve below this.
pub const SPECTRUM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Params {
    Dress { order: usize, lo: i32, flows: Vec<u32> },
    Ds2 { order: usize, lo: i32 },
    Genus0 { epsilon: [f64; 2], q1: [f64; 2], divisor_bound: i64, mode: Genus0Params },
    Darboux { epsilon: [f64; 2], kappa: [f64; 2], q1: [f64; 2], grid: usize, divisor_bound: i64, monodromy_tol: f64 },
    Hsl { beta0: [f64; 2], lattice: [f64; 4], mode: HslParams },
    Tau { window: i64, fixture: String, samples: usize },
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Genus0Params {
    Torus { grid: usize, monodromy_tol: f64 },
    Spectrum { samples: usize, cutoff: i64, tol: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum HslParams {
    Components { cutoff: i64 },
    Spectrum { grid: usize, cutoff: i64, extent: f64, tol: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub version: &'static str,
    pub threads: usize,
    pub seed: u64,
    pub out: Option<String>,
    #[serde(flatten)]
    pub params: Params,
}

/// The symbolic window used for a dressing of depth `order`.
pub fn dress_lo(order: usize) -> i32 {
    -(order as i32) - 2
}

/// Depth of the dressing behind `ds2`.
pub const DS2_ORDER: usize = 4;

impl RunConfig {
    pub fn from_cli(cli: &Cli, threads: usize) -> Self {
        let params = match &cli.command {
            Command::Dress(a) => Params::Dress { order: a.order, lo: dress_lo(a.order), flows: a.flows.clone() },
            Command::Ds2 => Params::Ds2 { order: DS2_ORDER, lo: dress_lo(DS2_ORDER) },
            Command::Genus0(a) => Params::Genus0 {
                epsilon: a.epsilon,
                q1: a.q1,
                divisor_bound: DIVISOR_BOUND,
                mode: match a.mode {
                    Genus0Mode::Torus { grid } => Genus0Params::Torus { grid, monodromy_tol: MONODROMY_TOL },
                    Genus0Mode::Spectrum { samples, cutoff } => {
                        Genus0Params::Spectrum { samples, cutoff, tol: SPECTRUM_TOL }
                    }
                },
            },
            Command::Darboux(a) => Params::Darboux {
                epsilon: a.epsilon,
                kappa: a.kappa,
                q1: a.q1,
                grid: a.grid,
                divisor_bound: DIVISOR_BOUND,
                monodromy_tol: MONODROMY_TOL,
            },
            Command::Hsl(a) => Params::Hsl {
                beta0: a.beta0,
                lattice: a.lattice,
                mode: match a.mode {
                    None => HslParams::Components { cutoff: HSL_CUTOFF },
                    Some(HslMode::Spectrum { grid, cutoff, extent, tol }) => {
                        HslParams::Spectrum { grid, cutoff, extent, tol }
                    }
                },
            },
            Command::Tau(a) => Params::Tau { window: a.window, fixture: a.fixture.clone(), samples: a.samples },
            Command::Selftest => Params::Selftest,
        };
        RunConfig {
            version: env!("CARGO_PKG_VERSION"),
            threads,
            seed: cli.seed,
            out: cli.out.as_ref().map(|p| p.display().to_string()),
            params,
        }
    }
}
