use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use multibrot_core::config::DEFAULT_PRECISION_BITS;
use multibrot_core::{Angle, Complex64, RotationNumber, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "multibrot",
    version,
    about = "Multibrot sets: rays, rotation sets, PCF parameters, primitive divisors and invariant curves",
    propagate_version = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Write the JSON artifact here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Target precision 2^-bits of floating evaluations.
    #[arg(long, global = true, env = "MULTIBROT_PRECISION", default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision: u32,
    /// Distance allowed between landing estimates and predicted points.
    #[arg(long, global = true)]
    pub landing_tol: Option<f64>,
    /// Convergence threshold of the landing extrapolation.
    #[arg(long, global = true)]
    pub extrapolation_tol: Option<f64>,
    /// Bound on root and fixed-point residuals.
    #[arg(long, global = true)]
    pub residual_tol: Option<f64>,
    /// Iteration cap for escape-time loops.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Smallest potential reached when tracing rays.
    #[arg(long, global = true)]
    pub ray_floor: Option<f64>,
    /// Newton substeps per halving of the potential.
    #[arg(long, global = true)]
    pub ray_steps: Option<u32>,
    /// Largest polynomial degree handed to the root finder.
    #[arg(long, global = true)]
    pub degree_cap: Option<u64>,
    /// Pollard rho iteration budget for factorizations.
    #[arg(long, global = true)]
    pub factor_budget: Option<u64>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Leave wall time out of the artifact so reruns are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Log progress to standard error (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

impl GlobalOpts {
    pub fn run_config(&self) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            precision_bits: self.precision,
            landing_tol: self.landing_tol.unwrap_or(d.landing_tol),
            extrapolation_tol: self.extrapolation_tol.unwrap_or(d.extrapolation_tol),
            residual_tol: self.residual_tol.unwrap_or(d.residual_tol),
            max_iter: self.max_iter.unwrap_or(d.max_iter),
            ray_floor: self.ray_floor.unwrap_or(d.ray_floor),
            ray_steps: self.ray_steps.unwrap_or(d.ray_steps),
            degree_cap: self.degree_cap.unwrap_or(d.degree_cap),
            factor_budget: self.factor_budget.unwrap_or(d.factor_budget),
            seed: self.seed,
            outputs: Vec::new(),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Escape-time raster of M_d as binary PGM, with optional SVG overlay.
    Render(RenderArgs),
    /// Trace one external ray in the parameter or dynamical plane.
    Ray(RayArgs),
    /// Check that two periodic rays land together.
    Land(LandArgs),
    /// Build, recognize or enumerate rotation sets.
    Rotset(RotsetArgs),
    /// Hyperbolic centers, Misiurewicz and parabolic parameters.
    Pcf(PcfArgs),
    /// Affine symmetries of M_d read off the inverse Boettcher series.
    Symmetry(SymmetryArgs),
    /// Exact Boettcher series and numeric evaluation.
    Boettcher(BoettcherArgs),
    /// Primitive prime divisors of a^m - 1 and Bang bounds.
    Bang(BangArgs),
    /// Replay the primitive-divisor contradiction for a range of k.
    Replay(ReplayArgs),
    /// Invariance of C_q under (r, conj r) and exceptional classification.
    Curve(CurveArgs),
    /// Run the acceptance suite.
    VerifyAll(VerifyArgs),
    /// Print the manual page (roff) to standard output.
    #[command(hide = true)]
    Man,
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

pub fn parse_px(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(w)?, n(h)?))
}

/// `A..B` and `A..=B` are both inclusive; a single number is a one-element range.
pub fn parse_k_range(s: &str) -> Result<(u64, u64), String> {
    let n = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((n(a)?, n(b.strip_prefix('=').unwrap_or(b))?)),
        None => n(s).map(|k| (k, k)),
    }
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(short, long, visible_alias = "d", default_value_t = 2)]
    pub degree: u32,
    /// Viewport center as RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "-0.75,0")]
    pub center: Complex64,
    /// Viewport width in parameter-plane units.
    #[arg(long, default_value_t = 3.0)]
    pub width: f64,
    /// Raster size as WxH.
    #[arg(long, value_parser = parse_px, default_value = "600x400")]
    pub px: (u32, u32),
    /// Output PGM path.
    #[arg(long)]
    pub out: PathBuf,
    /// JSON file with ray traces (a `ray` or `land` artifact, a trace, or a list of traces).
    #[arg(long)]
    pub overlay: Vec<PathBuf>,
    /// Also write the overlay picture as SVG.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Mark the boundary of the main hyperbolic component.
    #[arg(long)]
    pub main_component: bool,
    /// Mark the hyperbolic centers of this period.
    #[arg(long)]
    pub centers: Option<u32>,
}

#[derive(Args, Debug)]
pub struct RayArgs {
    #[arg(short, long)]
    pub d: u32,
    /// Angle as p/q.
    #[arg(long)]
    pub theta: Angle,
    /// Trace the dynamical ray of z^d + c instead of the parameter ray.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Option<Complex64>,
    /// Write the samples as CSV (potential, re, im).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["theta", "parabolic_pair"])))]
pub struct LandArgs {
    #[arg(short, long)]
    pub d: u32,
    #[arg(long, requires = "theta_prime")]
    pub theta: Option<Angle>,
    #[arg(long)]
    pub theta_prime: Option<Angle>,
    /// Check the pair 1/(d^n - 1), d/(d^n - 1) against the parabolic root of H_d.
    #[arg(long, value_name = "N")]
    pub parabolic_pair: Option<u32>,
    /// Also report whether this point lies in the wake of the pair.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub wake: Option<Complex64>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["rot", "recognize", "enumerate", "family"])))]
pub struct RotsetArgs {
    #[arg(short, long)]
    pub d: u32,
    /// Rotation number p/q; requires --deploy.
    #[arg(long, requires = "deploy")]
    pub rot: Option<RotationNumber>,
    /// Deployment sequence, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub deploy: Vec<usize>,
    /// Angles to recognize, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub recognize: Vec<Angle>,
    /// List every rotation set with rotation-number denominator q.
    #[arg(long, value_name = "Q")]
    pub enumerate: Option<u32>,
    /// The d - 1 sets with rotation number 1/n and deployment entries in {0, n}.
    #[arg(long, value_name = "N")]
    pub family: Option<u32>,
}

#[derive(Args, Debug)]
pub struct PcfArgs {
    #[arg(short, long)]
    pub d: u32,
    /// Period.
    #[arg(short, long)]
    pub n: u32,
    /// Misiurewicz parameters with this exact preperiod.
    #[arg(long, conflicts_with = "parabolic")]
    pub preperiod: Option<u32>,
    /// Parabolic parameters on the boundary of H_d with multiplier e^(2 pi i / n).
    #[arg(long)]
    pub parabolic: bool,
    /// Write the points as CSV (re, im).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SymmetryArgs {
    #[arg(short, long)]
    pub d: u32,
    /// Truncation order of the series.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BoettcherArgs {
    #[arg(short, long)]
    pub d: u32,
    #[arg(long)]
    pub order: Option<usize>,
    /// Series of the inverse map Psi instead of Phi.
    #[arg(long)]
    pub inverse: bool,
    /// Evaluate Phi at RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eval: Option<Complex64>,
    /// Compare |Phi(c)| with exp(G(c)) at this many seeded random points, 2 < |c| < 4.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["m", "bound"])))]
pub struct BangArgs {
    #[arg(short, long)]
    pub a: u64,
    #[arg(short, long)]
    pub m: Option<u64>,
    /// Largest m <= CAP with no primitive prime divisor of a^m - 1.
    #[arg(long, value_name = "CAP", num_args = 0..=1, default_missing_value = "64")]
    pub bound: Option<u64>,
    /// With --bound: only count primitive primes not dividing this number.
    #[arg(long, requires = "bound")]
    pub coprime_to: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    #[arg(short, long)]
    pub d: u64,
    /// Degree of the hypothetical polynomial.
    #[arg(long = "D", value_name = "D")]
    pub big_d: u64,
    /// Range of k, e.g. 5..5 or 0..=20 (inclusive).
    #[arg(long, value_parser = parse_k_range)]
    pub k: (u64, u64),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["q", "exceptional", "scan"])))]
pub struct CurveArgs {
    /// Coefficients of q, constant term first, e.g. "0, 1" for z.
    #[arg(long, requires = "r", allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Coefficients of r, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Classify this polynomial (coefficients, constant term first).
    #[arg(long, allow_hyphen_values = true)]
    pub exceptional: Option<String>,
    /// Run the small-coefficient consistency scan.
    #[arg(long)]
    pub scan: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these criteria (comma separated ids).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
}
