//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Parse `RE,IM`.
pub fn parse_complex(s: &str) -> Result<[f64; 2], String> {
    let v = parse_floats(s, 2)?;
    Ok([v[0], v[1]])
}

/// Parse `A,B,C,D`: the generators `A + iB` and `C + iD`.
pub fn parse_lattice(s: &str) -> Result<[f64; 4], String> {
    let v = parse_floats(s, 4)?;
    Ok([v[0], v[1], v[2], v[3]])
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("{p:?} is not a number")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(v)
}

#[derive(Debug, Parser)]
#[command(name = "qkp", version, about = "Quaternionic KP hierarchy toolkit")]
pub struct Cli {
    /// Worker threads; 0 or absent defers to QKP_NUM_THREADS, then all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; JSON goes to standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dress the symbolic operator and print K, the residual and flow tables.
    Dress(DressArgs),
    /// The t₂ velocity table.
    Ds2,
    /// Genus-zero spectral data: torus samples or spectrum samples.
    Genus0(Genus0Args),
    /// Darboux transform of the genus-zero Baker function.
    Darboux(DarbouxArgs),
    /// Components of the HSL multiplier spectrum.
    Hsl(HslArgs),
    /// Plücker coordinates and tau samples of a finite-rank frame.
    Tau(TauArgs),
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct DressArgs {
    /// Depth of the dressing operator K.
    #[arg(long)]
    pub order: usize,
    /// Flow indices k; each gives the flows s_k and t_k.
    #[arg(long, value_delimiter = ',')]
    pub flows: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct Genus0Args {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub epsilon: [f64; 2],
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub q1: [f64; 2],
    #[command(subcommand)]
    pub mode: Genus0Mode,
}

#[derive(Debug, Subcommand)]
pub enum Genus0Mode {
    /// CSV of the homogeneous coordinates on a G×G fundamental-domain grid.
    Torus {
        #[arg(long)]
        grid: usize,
    },
    /// Log-multiplier samples checked against the HSL spectrum.
    Spectrum {
        #[arg(long)]
        samples: usize,
        /// Coefficient box for the minimum over F_α.
        #[arg(long, default_value_t = 16)]
        cutoff: i64,
    },
}

#[derive(Debug, Args)]
pub struct DarbouxArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub epsilon: [f64; 2],
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub kappa: [f64; 2],
    /// The point Q₁ fixing the lattice.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "-1,0")]
    pub q1: [f64; 2],
    #[arg(long)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct HslArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta0: [f64; 2],
    #[arg(long, value_parser = parse_lattice, allow_hyphen_values = true)]
    pub lattice: [f64; 4],
    #[command(subcommand)]
    pub mode: Option<HslMode>,
}

#[derive(Debug, Subcommand)]
pub enum HslMode {
    /// Scan an η-grid and flag points on the spectrum.
    Spectrum {
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        cutoff: i64,
        /// Half-width of the square η-grid.
        #[arg(long, default_value_t = 3.0)]
        extent: f64,
        /// Relative determinant tolerance for flagging.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// Half-width of the Laurent window in interleaved exponents.
    #[arg(long, default_value_t = 6)]
    pub window: i64,
    /// One of kp, quaternionic, counterexample, root, random.
    #[arg(long)]
    pub fixture: String,
    /// Random flows sampled besides the identity.
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
}
