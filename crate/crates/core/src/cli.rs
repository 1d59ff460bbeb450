//! Command-line front end. Each subcommand runs one experiment and writes a
//! report; the exit status is 0 when every check in the run passes, 1 on a
//! hypothesis rejection or a failed check, and 2 on a usage error.
//!
//! Rows are computed in parallel (capped by `PSIF_THREADS`) but always come
//! out in the order of the sweep variable.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::{
    convolution_exchange_check, double_kernel_check, exchange_check, inversion_sweep, is_decreasing, make_kernel,
    EqualityReport, KernelVariant,
};
use crate::ap_integration::{integrate_fhat_g_finite, integrate_fhat_g_line, integrate_fhat_halfline_singular};
use crate::bv::{bv_builtin, BvFunction, BvTail, BV_CATALOG};
use crate::catalog::{builtin, catalog_listing, TestFunction};
use crate::constants::conjecture_scan;
use crate::error::Error;
use crate::psif::{check_identity, extremal_function, holder_ratio_max, psif, sample_points, GrowthConstant, Identity};
use crate::quadrature::{Integrator, QuadratureResult};
use crate::report::{emit_report, Cell, Format, Table};

/// Exponents used by multi-`p` commands when `--p` is absent; they sit on
/// both sides of `p = 2`.
pub const DEFAULT_P_LIST: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 5.0];

/// Default scales for `invert`: `1, 1/2, …, 1/16`.
pub const DEFAULT_A_LIST: [f64; 5] = [1.0, 0.5, 0.25, 0.125, 0.0625];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `start:stop:count[:linear|log]`. Invariants: `start < stop`, `count ≥ 2`,
/// and `start > 0` for log spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("grid {s:?} is not start:stop:count[:linear|log]"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?} in grid {s:?}"));
        let start = num(parts[0])?;
        let stop = num(parts[1])?;
        let count: usize = parts[2].trim().parse().map_err(|_| format!("bad count {:?} in grid {s:?}", parts[2]))?;
        let spacing = match parts.get(3).map(|t| t.trim()) {
            None | Some("linear") | Some("lin") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => return Err(format!("unknown spacing {other:?}; expected linear or log")),
        };
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(format!("grid {s:?} needs finite start < stop"));
        }
        if count < 2 {
            return Err(format!("grid {s:?} needs count >= 2"));
        }
        if spacing == Spacing::Log && !(start > 0.0) {
            return Err(format!("log grid {s:?} needs start > 0"));
        }
        Ok(GridSpec { start, stop, count, spacing })
    }
}

impl GridSpec {
    /// The points, with both endpoints exact.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count - 1;
        (0..=n)
            .map(|k| {
                if k == 0 {
                    return self.start;
                }
                if k == n {
                    return self.stop;
                }
                let u = k as f64 / n as f64;
                match self.spacing {
                    Spacing::Linear => self.start + u * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + u * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

/// A list of reals given on the command line.
#[derive(Debug, Clone, PartialEq)]
struct Values(Vec<f64>);

/// Comma-separated reals, or a grid spec.
fn parse_values(s: &str) -> Result<Values, String> {
    if s.contains(':') {
        return Ok(Values(s.parse::<GridSpec>()?.points()));
    }
    s.split(',')
        .map(|t| {
            let v: f64 = t.trim().parse().map_err(|_| format!("bad number {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("{t:?} is not finite"))
            }
        })
        .collect::<Result<_, _>>()
        .map(Values)
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    /// `∫(f∗g₁)^·g₂ = ∫f̂·ĝ₁·g₂`.
    #[value(alias = "conv")]
    Convolution,
    /// `∫f̂·(g₁∗g₂) = ∫f·ĝ₁·ĝ₂`.
    #[value(alias = "double")]
    DoubleKernel,
}

#[derive(Debug, Parser)]
#[command(name = "lpfourier", version, about = "Fourier transforms of L^p functions through their continuous primitive")]
struct Cli {
    /// Absolute tolerance (relative for constants and distances).
    #[arg(long, global = true, default_value = "1e-6", value_parser = parse_tol)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Report path; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PArg {
    /// Exponent p, or a comma-separated list.
    #[arg(long = "p", value_parser = parse_values)]
    p: Option<Values>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the test functions and bounded-variation functions.
    Catalog,
    /// Ψ_f on a grid of s, against its closed form and growth bound.
    Psif {
        #[arg(long, default_value = "indicator")]
        f: String,
        #[arg(long, default_value = "0:10:101")]
        sgrid: GridSpec,
        #[command(flatten)]
        p: PArg,
    },
    /// Largest Hölder quotient of Ψ_f over seeded (s, h) pairs.
    Holder {
        #[arg(long, default_value = "gaussian")]
        f: String,
        #[command(flatten)]
        p: PArg,
        /// Number of (s, h) pairs; a multiple of 10.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// C_q against B_q on a grid of q.
    Constants {
        #[arg(long, default_value = "1.2:10:12:log")]
        qgrid: GridSpec,
        /// Accept q below 1.05, where C_q is expensive.
        #[arg(long)]
        allow_near_one: bool,
    },
    /// ∫f̂·g through Ψ_f, against a direct oracle when f̂ has a closed form.
    Integrate {
        #[arg(long, default_value = "gaussian")]
        f: String,
        #[arg(long, default_value = "gaussian")]
        g: String,
        #[command(flatten)]
        p: PArg,
        /// Finite interval lo:hi; the whole line when absent.
        #[arg(long)]
        range: Option<String>,
    },
    /// ∫f̂·g against ∫f·ĝ.
    Exchange {
        #[arg(long, default_value = "gaussian")]
        f: String,
        #[arg(long, default_value = "gauss-weierstrass")]
        g: String,
        #[command(flatten)]
        p: PArg,
    },
    /// ‖f − I_a f‖_p over a list of kernel scales a.
    Invert {
        #[arg(long, default_value = "gaussian")]
        f: String,
        #[arg(long, default_value = "gauss-weierstrass")]
        kernel: String,
        #[command(flatten)]
        p: PArg,
        #[arg(long, value_parser = parse_values)]
        alist: Option<Values>,
    },
    /// Convolution identities. `--g` is the integrable factor, `--kernel` the
    /// bounded-variation one.
    ConvolutionCheck {
        #[arg(long, value_enum, default_value = "convolution")]
        thm: Theorem,
        #[arg(long, default_value = "gaussian")]
        f: String,
        #[arg(long, default_value = "gaussian")]
        g: String,
        #[arg(long)]
        kernel: Option<String>,
        #[command(flatten)]
        p: PArg,
    },
    /// Seeded property checks: growth bound, Hölder bound, transform
    /// identities and the extremal equality case.
    Properties {
        #[arg(long, default_value = "gaussian")]
        f: String,
        #[command(flatten)]
        p: PArg,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Comma-separated subset of the checks; all of them when absent.
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Growth,
    Holder,
    /// Translation, modulation, reflection and dilation identities.
    Identities,
    Extremal,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Psif { .. } => "psif",
            Command::Holder { .. } => "holder",
            Command::Constants { .. } => "constants",
            Command::Integrate { .. } => "integrate",
            Command::Exchange { .. } => "exchange",
            Command::Invert { .. } => "invert",
            Command::ConvolutionCheck { .. } => "convolution-check",
            Command::Properties { .. } => "properties",
        }
    }

    fn grid(&self) -> Option<GridSpec> {
        match self {
            Command::Psif { sgrid, .. } => Some(*sgrid),
            Command::Constants { qgrid, .. } => Some(*qgrid),
            _ => None,
        }
    }
}

/// Settings shared by every subcommand. Invariant: `tol > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: String,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub grid: Option<GridSpec>,
    pub seed: u64,
}

enum Failure {
    Usage(String),
    Rejected(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::UnknownFunction { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Rejected(e),
        }
    }
}

type Outcome = Result<(Table, bool), Failure>;

/// Runs the command line `argv` (program name first) and returns the exit
/// status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("PSIF_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => pool = pool.num_threads(n),
            _ => return usage(&format!("PSIF_THREADS must be a positive integer, got {v:?}")),
        }
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return 1;
        }
    };
    let config = RunConfig {
        subcommand: cli.command.name().to_string(),
        tol: cli.tol,
        format: match cli.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        out: cli.out.clone(),
        grid: cli.command.grid(),
        seed: cli.seed,
    };
    match pool.install(|| execute(&cli.command, &config)) {
        Ok((table, pass)) => {
            if let Err(e) = emit_report(&table, config.format, config.out.as_deref()) {
                eprintln!("error: {e}");
                return 1;
            }
            if pass {
                0
            } else {
                eprintln!("{}: at least one check failed", config.subcommand);
                1
            }
        }
        Err(Failure::Usage(m)) => usage(&m),
        Err(Failure::Rejected(Error::Hypothesis { hypothesis, reason })) => {
            eprintln!("rejected: {hypothesis}: {reason}");
            1
        }
        Err(Failure::Rejected(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn usage(message: &str) -> i32 {
    eprintln!("error: {message}\n\n{}", Cli::command().render_usage());
    2
}

fn execute(command: &Command, cfg: &RunConfig) -> Outcome {
    match command {
        Command::Catalog => catalog(),
        Command::Psif { f, sgrid, p } => psif_grid(&function(f)?, sgrid, p, cfg),
        Command::Holder { f, p, samples } => holder(&function(f)?, p, *samples, cfg),
        Command::Constants { qgrid, allow_near_one } => constants(qgrid, *allow_near_one, cfg),
        Command::Integrate { f, g, p, range } => integrate(&function(f)?, &bounded_variation(g)?, p, range.as_deref(), cfg),
        Command::Exchange { f, g, p } => exchange(&function(f)?, &bounded_variation(g)?, p, cfg),
        Command::Invert { f, kernel, p, alist } => invert(&function(f)?, kernel, p, alist.as_ref().map(|v| v.0.as_slice()), cfg),
        Command::ConvolutionCheck { thm, f, g, kernel, p } => convolution(*thm, &function(f)?, g, kernel.as_deref(), p, cfg),
        Command::Properties { f, p, samples, checks } => properties(&function(f)?, p, *samples, checks, cfg),
    }
}

/// Rewrites separators in the name part of `name[:param]`.
fn normalize(spec: &str, from: char, to: char) -> String {
    match spec.split_once(':') {
        Some((n, v)) => format!("{}:{v}", n.replace(from, &to.to_string())),
        None => spec.replace(from, &to.to_string()),
    }
}

fn function(spec: &str) -> Result<TestFunction, Failure> {
    Ok(builtin(&normalize(spec, '-', '_'))?)
}

/// A kernel name (`fejer`, `abel:0.5`, …) or a bounded-variation catalog entry.
fn bounded_variation(spec: &str) -> Result<BvFunction, Failure> {
    let (name, param) = match spec.split_once(':') {
        Some((n, v)) => (n, Some(v)),
        None => (spec, None),
    };
    if let Ok(variant) = name.parse::<KernelVariant>() {
        let a = match param {
            Some(v) => v.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad kernel scale in {spec:?}")))?,
            None => 1.0,
        };
        if !(a > 0.0 && a.is_finite()) {
            return Err(Failure::Usage(format!("kernel scale must be positive, got {a}")));
        }
        return Ok(make_kernel(variant, a)?.k);
    }
    Ok(bv_builtin(&normalize(spec, '_', '-'))?)
}

fn membership(f: &TestFunction, p: f64) -> Result<(), Failure> {
    if f.in_lp(p) {
        Ok(())
    } else {
        Err(Failure::Rejected(Error::Hypothesis {
            hypothesis: "L^p membership",
            reason: format!("{} is not in L^{p}; it lies in {}", f.id, f.lp_membership),
        }))
    }
}

/// Explicit exponents, each checked, or the default list cut down to the
/// exponents `f` belongs to. Sorted ascending.
fn p_list(arg: &PArg, f: &TestFunction) -> Result<Vec<f64>, Failure> {
    let mut ps = match arg.p.as_ref().map(|v| &v.0) {
        Some(ps) => {
            for &p in ps {
                membership(f, p)?;
            }
            ps.clone()
        }
        None => DEFAULT_P_LIST.iter().copied().filter(|&p| f.in_lp(p)).collect(),
    };
    if ps.is_empty() {
        return Err(Failure::Rejected(Error::Hypothesis {
            hypothesis: "L^p membership",
            reason: format!("{} is in none of the default exponents {DEFAULT_P_LIST:?}", f.id),
        }));
    }
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    Ok(ps)
}

/// The first exponent of [`p_list`].
fn single_p(arg: &PArg, f: &TestFunction) -> Result<f64, Failure> {
    match &arg.p {
        Some(Values(ps)) if ps.len() != 1 => Err(Failure::Usage("this subcommand takes a single --p".into())),
        _ => Ok(p_list(arg, f)?[0]),
    }
}

fn collect_rows<T: Send>(items: Vec<Result<T, Error>>) -> Result<Vec<T>, Failure> {
    items.into_iter().map(|r| r.map_err(Failure::from)).collect()
}

fn catalog() -> Outcome {
    let mut t = Table::new(["id", "kind", "lp_membership", "closed_form_psif", "closed_form_fhat", "known_norms"]);
    for e in catalog_listing() {
        t.push(vec![
            e.id.into(),
            "function".into(),
            e.lp_membership.into(),
            e.closed_form_psif.into(),
            e.closed_form_fhat.into(),
            e.known_norms.into(),
        ])?;
    }
    for name in BV_CATALOG {
        t.push(vec![(*name).into(), "bv".into(), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty])?;
    }
    Ok((t, true))
}

fn psif_grid(f: &TestFunction, grid: &GridSpec, p: &PArg, cfg: &RunConfig) -> Outcome {
    let p = single_p(p, f)?;
    let growth = GrowthConstant::new(f, p, cfg.tol.min(1e-8))?;
    let tol = cfg.tol;
    let rows = collect_rows(
        grid.points()
            .par_iter()
            .map(|&s| {
                let v = psif(f, s, tol / 10.0)?;
                let closed = f.closed_form_psif(s);
                let bound = growth.bound(s);
                let margin = bound - v.value.norm();
                let error = v.abs_error_estimate + bound * growth.rel_error;
                let diff = closed.map(|c| (c - v.value).norm());
                let pass = margin >= -10.0 * error && diff.map_or(true, |d| d <= tol);
                Ok((s, v, closed, diff, bound, margin, pass))
            })
            .collect(),
    )?;
    let mut t = Table::new([
        "s", "p", "psif_re", "psif_im", "error", "closed_re", "closed_im", "closed_diff", "bound", "margin", "pass",
    ]);
    let mut all = true;
    for (s, v, closed, diff, bound, margin, pass) in rows {
        all &= pass;
        t.push(vec![
            s.into(),
            p.into(),
            v.value.re.into(),
            v.value.im.into(),
            v.abs_error_estimate.into(),
            closed.map(|c| c.re).into(),
            closed.map(|c| c.im).into(),
            diff.into(),
            bound.into(),
            margin.into(),
            pass.into(),
        ])?;
    }
    Ok((t, all))
}

/// Seeded `s ∈ [−10, 10]` and log-uniform `h ∈ [10⁻³, 10]`.
fn holder_samples(seed: u64, pairs: usize) -> (Vec<f64>, Vec<f64>) {
    let nh = 10.min(pairs.max(1));
    let ns = pairs.div_ceil(nh).max(1);
    (sample_points(seed, ns, -10.0, 10.0, false), sample_points(seed.wrapping_add(1), nh, 1e-3, 10.0, true))
}

fn holder(f: &TestFunction, p: &PArg, samples: usize, cfg: &RunConfig) -> Outcome {
    if samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let (s, h) = holder_samples(cfg.seed, samples);
    let mut t = Table::new([
        "p", "pairs", "ratio_max", "ratio_error", "s_at", "h_at", "bound", "bound_error", "violations", "pass",
    ]);
    let mut all = true;
    for p in p_list(p, f)? {
        let r = holder_ratio_max(f, p, &s, &h, cfg.tol)?;
        all &= r.holds();
        t.push(vec![
            p.into(),
            r.pairs.into(),
            r.ratio_max.into(),
            r.ratio_error.into(),
            r.at.0.into(),
            r.at.1.into(),
            r.bound.into(),
            r.bound_error.into(),
            r.violations.into(),
            r.holds().into(),
        ])?;
    }
    Ok((t, all))
}

/// Conjectured sign of `C_q − B_q`.
fn conjectured_sign(q: f64) -> i8 {
    if q < 2.0 {
        1
    } else if q > 2.0 {
        -1
    } else {
        0
    }
}

fn constants(grid: &GridSpec, allow_near_one: bool, cfg: &RunConfig) -> Outcome {
    let rows = conjecture_scan(&grid.points(), cfg.tol, allow_near_one)?;
    let mut t = Table::new(["q", "c_q", "c_q_err", "b_q", "diff", "sign"]);
    let mut all = true;
    for r in rows {
        all &= r.sign == conjectured_sign(r.q);
        t.push(vec![r.q.into(), r.c_q.into(), r.c_q_error.into(), r.b_q.into(), r.diff.into(), r.sign.into()])?;
    }
    Ok((t, all))
}

fn parse_range(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Usage(format!("range {s:?} is not lo:hi with finite lo < hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok((lo, hi))
    } else {
        Err(bad())
    }
}

/// `∫_lo^hi f̂·g` straight from the closed form of `f̂`, when there is one and
/// the range, clipped to the support of `g`, is finite.
fn direct_oracle(f: &TestFunction, g: &BvFunction, lo: f64, hi: f64, tol: f64) -> Option<QuadratureResult> {
    f.closed_form_fhat(0.0)?;
    let lo = if matches!(g.left_tail, BvTail::Zero) { lo.max(g.core.0) } else { lo };
    let hi = if matches!(g.right_tail, BvTail::Zero) { hi.min(g.core.1) } else { hi };
    if !(lo.is_finite() && hi.is_finite()) {
        return None;
    }
    if lo >= hi {
        return Some(QuadratureResult::exact(Complex64::new(0.0, 0.0)));
    }
    let mut cuts = g.breakpoints.clone();
    cuts.extend(g.jumps.iter().map(|j| j.at));
    cuts.push(0.0);
    let integrand = |s: f64| f.closed_form_fhat(s).unwrap_or_default() * g.value(s);
    Some(Integrator::new().breakpoints(&cuts).integrate(integrand, lo, hi, tol))
}

fn integrate(f: &TestFunction, g: &BvFunction, p: &PArg, range: Option<&str>, cfg: &RunConfig) -> Outcome {
    let p = single_p(p, f)?;
    let tol = cfg.tol;
    let (lo, hi, value) = match range {
        None => (f64::NEG_INFINITY, f64::INFINITY, integrate_fhat_g_line(f, g, p, tol)?),
        Some(r) => {
            let (lo, hi) = parse_range(r)?;
            let v = if lo == 0.0 && g.origin_exponent.is_some() {
                integrate_fhat_halfline_singular(f, g, hi, p, tol)?
            } else {
                integrate_fhat_g_finite(f, g, lo, hi, tol)?
            };
            (lo, hi, v)
        }
    };
    let oracle = direct_oracle(f, g, lo, hi, tol / 10.0);
    let diff = oracle.map(|o| (o.value - value.value).norm());
    let pass = value.converged && diff.map_or(true, |d| d <= 10.0 * tol + value.abs_error_estimate);
    let mut t = Table::new([
        "f", "g", "p", "lo", "hi", "value_re", "value_im", "error", "oracle_re", "oracle_im", "diff", "pass",
    ]);
    t.push(vec![
        f.id.clone().into(),
        g.id.clone().into(),
        p.into(),
        lo.into(),
        hi.into(),
        value.value.re.into(),
        value.value.im.into(),
        value.abs_error_estimate.into(),
        oracle.map(|o| o.value.re).into(),
        oracle.map(|o| o.value.im).into(),
        diff.into(),
        pass.into(),
    ])?;
    Ok((t, pass))
}

const EQUALITY_COLUMNS: [&str; 10] =
    ["lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff", "budget", "bound", "bound_holds", "pass", "p"];

fn equality_cells(r: &EqualityReport, p: f64) -> Vec<Cell> {
    vec![
        r.lhs.re.into(),
        r.lhs.im.into(),
        r.rhs.re.into(),
        r.rhs.im.into(),
        r.abs_diff.into(),
        r.budget.into(),
        r.bound.into(),
        r.bound_holds().into(),
        r.pass.into(),
        p.into(),
    ]
}

fn exchange(f: &TestFunction, g: &BvFunction, p: &PArg, cfg: &RunConfig) -> Outcome {
    let mut t = Table::new(["f", "g"].into_iter().chain(EQUALITY_COLUMNS));
    let mut all = true;
    for p in p_list(p, f)? {
        let r = exchange_check(f, g, p, cfg.tol)?;
        all &= r.pass && r.bound_holds();
        let mut row: Vec<Cell> = vec![f.id.clone().into(), g.id.clone().into()];
        row.extend(equality_cells(&r, p));
        t.push(row)?;
    }
    Ok((t, all))
}

fn invert(f: &TestFunction, kernel: &str, p: &PArg, alist: Option<&[f64]>, cfg: &RunConfig) -> Outcome {
    let variant: KernelVariant = kernel.parse()?;
    let mut a_list = alist.map_or_else(|| DEFAULT_A_LIST.to_vec(), <[f64]>::to_vec);
    if let Some(a) = a_list.iter().find(|a| !(**a > 0.0)) {
        return Err(Failure::Usage(format!("kernel scales must be positive, got {a}")));
    }
    // Largest scale first, so the distances should fall down the column.
    a_list.sort_by(|x, y| y.total_cmp(x));
    a_list.dedup();
    let mut t = Table::new(["kernel", "p", "a", "distance", "decreasing"]);
    let mut all = true;
    for p in p_list(p, f)? {
        let points = inversion_sweep(f, variant, p, &a_list, cfg.tol)?;
        let decreasing = is_decreasing(&points, 10.0 * cfg.tol);
        all &= decreasing;
        for pt in points {
            t.push(vec![variant.name().into(), p.into(), pt.a.into(), pt.distance.into(), decreasing.into()])?;
        }
    }
    Ok((t, all))
}

fn convolution(thm: Theorem, f: &TestFunction, g: &str, kernel: Option<&str>, p: &PArg, cfg: &RunConfig) -> Outcome {
    let p = single_p(p, f)?;
    let g = function(g)?;
    let mut t = Table::new(
        ["identity", "f", "g", "kernel"]
            .into_iter()
            .chain(EQUALITY_COLUMNS)
            .chain(["variation", "variation_bound", "variation_holds"]),
    );
    let (name, k, report, variation) = match thm {
        Theorem::Convolution => {
            let k = bounded_variation(kernel.unwrap_or("gauss-weierstrass"))?;
            let r = convolution_exchange_check(f, &g, &k, p, cfg.tol)?;
            ("convolution", k, r, None)
        }
        Theorem::DoubleKernel => {
            let k = bounded_variation(kernel.unwrap_or("cesaro-fejer"))?;
            let r = double_kernel_check(f, &k, &g, p, cfg.tol)?;
            ("double-kernel", k, r.report, Some(r))
        }
    };
    let pass = report.pass && report.bound_holds() && variation.map_or(true, |v| v.variation_holds());
    let mut row: Vec<Cell> = vec![name.into(), f.id.clone().into(), g.id.clone().into(), k.id.clone().into()];
    row.extend(equality_cells(&report, p));
    row.extend([
        variation.map(|v| v.variation).into(),
        variation.map(|v| v.variation_bound).into(),
        variation.map_or(Cell::Empty, |v| v.variation_holds().into()),
    ]);
    t.push(row)?;
    Ok((t, pass))
}

struct PropertyRow {
    property: &'static str,
    p: Option<f64>,
    param: String,
    s: Option<f64>,
    value: f64,
    reference: f64,
    diff: f64,
    error: f64,
    pass: bool,
}

fn properties(f: &TestFunction, p: &PArg, samples: usize, checks: &[Check], cfg: &RunConfig) -> Outcome {
    if samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let tol = cfg.tol;
    let ps = p_list(p, f)?;
    let wanted = |c: Check| checks.is_empty() || checks.contains(&c);
    let mut rows = Vec::new();

    // Growth bound at seeded s; one row per p with the tightest margin.
    let s_samples = sample_points(cfg.seed, samples, -20.0, 20.0, false);
    for &p in ps.iter().filter(|_| wanted(Check::Growth)) {
        let g = GrowthConstant::new(f, p, tol.min(1e-8))?;
        let margins = collect_rows(
            s_samples
                .par_iter()
                .map(|&s| {
                    let v = psif(f, s, tol)?;
                    let bound = g.bound(s);
                    Ok((s, v.value.norm(), bound, v.abs_error_estimate + bound * g.rel_error))
                })
                .collect(),
        )?;
        let violations = margins.iter().filter(|m| m.2 - m.1 < -10.0 * m.3).count();
        let worst = margins.iter().copied().min_by(|x, y| (x.2 - x.1).total_cmp(&(y.2 - y.1))).expect("samples > 0");
        rows.push(PropertyRow {
            property: "growth",
            p: Some(p),
            param: format!("samples={samples}"),
            s: Some(worst.0),
            value: worst.1,
            reference: worst.2,
            diff: worst.2 - worst.1,
            error: worst.3,
            pass: violations == 0,
        });
    }

    let (hs, hh) = holder_samples(cfg.seed.wrapping_add(2), samples);
    for &p in ps.iter().filter(|_| wanted(Check::Holder)) {
        let r = holder_ratio_max(f, p, &hs, &hh, tol)?;
        rows.push(PropertyRow {
            property: "holder",
            p: Some(p),
            param: format!("h={}", r.at.1),
            s: Some(r.at.0),
            value: r.ratio_max,
            reference: r.bound,
            diff: r.bound - r.ratio_max,
            error: r.ratio_error + r.bound_error,
            pass: r.holds(),
        });
    }

    // Transform identities at seeded parameters.
    let u = sample_points(cfg.seed.wrapping_add(3), 4, 0.0, 1.0, false);
    let s = -5.0 + 10.0 * u[0];
    let shift = -2.0 + 4.0 * u[1];
    let scale = 0.5 + 1.5 * u[2];
    let offset = -1.0 + 2.0 * u[3];
    let identities = [
        (Identity::Translate(shift), format!("a={shift}")),
        (Identity::Modulate(shift), format!("a={shift}")),
        (Identity::Reflect, String::new()),
        (Identity::Dilate(scale, offset), format!("a={scale};b={offset}")),
    ];
    let identities = if wanted(Check::Identities) { &identities[..] } else { &[] };
    let results = collect_rows(identities.par_iter().map(|(id, _)| check_identity(f, *id, s, tol / 10.0)).collect())?;
    for ((id, param), c) in identities.iter().zip(results) {
        rows.push(PropertyRow {
            property: id.name(),
            p: None,
            param: param.clone(),
            s: Some(s),
            value: c.formula.re,
            reference: c.direct.re,
            diff: c.discrepancy,
            error: c.error,
            pass: c.discrepancy <= 10.0 * tol + c.error,
        });
    }

    // Equality case of the growth bound, independent of f.
    let s_ext = 0.5 + 2.5 * sample_points(cfg.seed.wrapping_add(4), 1, 0.0, 1.0, false)[0];
    for &p in ps.iter().filter(|&&p| p > 1.0 && wanted(Check::Extremal)) {
        let r = extremal_function(s_ext, p)?.equality(tol.min(1e-8))?;
        let slack = (r.lhs_error + r.rhs_error) / r.rhs;
        rows.push(PropertyRow {
            property: "extremal",
            p: Some(p),
            param: String::new(),
            s: Some(s_ext),
            value: r.lhs,
            reference: r.rhs,
            diff: r.ratio - 1.0,
            error: slack,
            pass: (r.ratio - 1.0).abs() <= 10.0 * tol + slack,
        });
    }

    let mut t = Table::new(["property", "p", "param", "s", "value", "reference", "diff", "error", "pass"]);
    let mut all = true;
    for r in rows {
        all &= r.pass;
        t.push(vec![
            r.property.into(),
            r.p.into(),
            r.param.into(),
            r.s.into(),
            r.value.into(),
            r.reference.into(),
            r.diff.into(),
            r.error.into(),
            r.pass.into(),
        ])?;
    }
    Ok((t, all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_specs() {
        let g: GridSpec = "0:10:101".parse().unwrap();
        let pts = g.points();
        assert_eq!((pts.len(), pts[0], pts[100]), (101, 0.0, 10.0));
        assert!((pts[37] - 3.7).abs() < 1e-14);
        let g: GridSpec = "1.2:10:12:log".parse().unwrap();
        let pts = g.points();
        assert_eq!((pts[0], pts[11]), (1.2, 10.0));
        assert!(pts.windows(2).all(|w| (w[1] / w[0] - pts[1] / pts[0]).abs() < 1e-12));
        for bad in ["1:0:5", "0:1:1", "0:1", "0:1:3:cubic", "0:1:3:log", "a:1:3"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("1, 0.5,0.25").unwrap().0, [1.0, 0.5, 0.25]);
        assert_eq!(parse_values("1:3:3").unwrap().0, [1.0, 2.0, 3.0]);
        assert!(parse_values("1,x").is_err());
        assert!(parse_tol("0").is_err() && parse_tol("-1e-3").is_err() && parse_tol("1e-9").is_ok());
    }

    #[test]
    fn name_lookup() {
        assert_eq!(normalize("power-tail:0.8", '-', '_'), "power_tail:0.8");
        assert_eq!(normalize("heat:-1", '-', '_'), "heat:-1");
        assert!(function("remark-piecewise:0.5").is_ok());
        assert_eq!(bounded_variation("power_tail:0.8").ok().unwrap().id, bv_builtin("power-tail:0.8").unwrap().id);
        assert!(bounded_variation("fejer:0.5").is_ok());
        assert!(matches!(bounded_variation("nope"), Err(Failure::Usage(_))));
    }

    #[test]
    fn default_exponents_follow_membership() {
        let arg = PArg { p: None };
        assert_eq!(p_list(&arg, &builtin("gaussian").unwrap()).ok().unwrap(), DEFAULT_P_LIST);
        let sinc = builtin("sinc").unwrap();
        assert!(!p_list(&arg, &sinc).ok().unwrap().contains(&1.0));
        assert!(matches!(p_list(&PArg { p: Some(Values(vec![1.0])) }, &sinc), Err(Failure::Rejected(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["lpfourier", "--bogus"]), 2);
        assert_eq!(run(["lpfourier", "frobnicate"]), 2);
        assert_eq!(run(["lpfourier", "psif", "--sgrid", "3:1:4"]), 2);
        assert_eq!(run(["lpfourier", "catalog", "--tol", "0"]), 2);
        assert_eq!(run(["lpfourier", "psif", "--f", "nope"]), 2);
        assert_eq!(run(["lpfourier", "exchange", "--f", "gaussian", "--g", "sinc"]), 1);
    }

    #[test]
    fn conjecture_direction() {
        assert_eq!((conjectured_sign(1.5), conjectured_sign(2.0), conjectured_sign(4.0)), (1, 0, -1));
    }
}
