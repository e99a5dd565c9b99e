//! The `hardsoft` command line.
//!
//! Every flag can also be set through an environment variable named
//! `HARDSOFT_<FLAG>` (upper case, dashes as underscores), e.g.
//! `HARDSOFT_PRECISION_BITS=512`. Every output starts with the full run
//! configuration so that a file can be reproduced from its own header.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::Serialize;

use crate::engine::{assemble_kernel_expansion, Format};
use crate::error::{Error, Result};
use crate::fredholm::{e2_hard, tracy_widom_F, transition_study};
use crate::kernels::{airy_parametrix, jump_residual, residual_scan, Grid, RaySide, RAYS};
use crate::specfun::{cmat_det, BigComplex, EvalContext};

#[derive(Debug, Parser, Serialize)]
#[command(name = "hardsoft", version, about = "Hard-to-soft edge transition: exact kernel expansion and numerical checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Working precision of the arbitrary-precision evaluations.
    #[arg(long, global = true, default_value_t = 256, env = "HARDSOFT_PRECISION_BITS")]
    pub precision_bits: u32,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum, env = "HARDSOFT_FORMAT")]
    pub format: Option<OutputFormat>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, env = "HARDSOFT_OUT")]
    pub out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0, env = "HARDSOFT_SEED")]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Latex,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Derive the correction kernels K_1..K_m exactly.
    Derive {
        #[arg(long, default_value_t = 2, env = "HARDSOFT_ORDER")]
        order: usize,
    },
    /// Check a theoretical claim; the exit code reports whether it held.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    #[command(name = "verify-kernel")]
    VerifyKernel(KernelArgs),
    #[command(name = "verify-parametrix")]
    VerifyParametrix(ParametrixArgs),
    /// Residual table of the kernel expansion without pass/fail gating.
    Scan(KernelArgs),
    /// Fredholm determinants.
    Fredholm {
        #[command(subcommand)]
        which: FredholmTarget,
    },
    /// |E₂^hard(φ_ν(t); ν) − F(t)| table without pass/fail gating.
    Transition(TransitionArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyTarget {
    /// Residual slopes of the kernel expansion in h.
    Kernel(KernelArgs),
    /// Decay rate of the determinant transition in h.
    Transition(TransitionArgs),
    /// Jumps and unimodularity of the Airy parametrix.
    Parametrix(ParametrixArgs),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum FredholmTarget {
    /// Tracy–Widom distribution F(t).
    #[command(name = "F")]
    F {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true, env = "HARDSOFT_T")]
        t: Vec<f64>,
    },
    /// Hard-edge gap probability E₂^hard(s; ν).
    #[command(name = "e2")]
    E2 {
        #[arg(long, value_delimiter = ',', required = true, env = "HARDSOFT_S")]
        s: Vec<f64>,
        #[arg(long, env = "HARDSOFT_NU")]
        nu: f64,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct KernelArgs {
    /// Highest order subtracted.
    #[arg(long, default_value_t = 2, env = "HARDSOFT_M")]
    pub m: usize,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400", env = "HARDSOFT_NU")]
    pub nu: Vec<f64>,
    /// Tensor grid `x0:x1:n,y0:y1:n`.
    #[arg(long, default_value = "-2:6:9,-2:6:9", allow_hyphen_values = true, env = "HARDSOFT_GRID")]
    pub grid: String,
}

#[derive(Debug, Args, Serialize)]
pub struct TransitionArgs {
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true, env = "HARDSOFT_T")]
    pub t: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400", env = "HARDSOFT_NU")]
    pub nu: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ParametrixArgs {
    /// Sampled points per ray.
    #[arg(long, default_value_t = 20, env = "HARDSOFT_POINTS")]
    pub points: usize,
    /// Radii are drawn uniformly from (0, r_max].
    #[arg(long, default_value_t = 8.0, env = "HARDSOFT_R_MAX")]
    pub r_max: f64,
}

/// Output of a subcommand and whether its checks held.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub passed: bool,
}

pub const SLOPE_BAND_KERNEL: f64 = 0.15;
pub const SLOPE_BAND_TRANSITION: f64 = 0.1;
pub const JUMP_TOL: f64 = 1e-10;
pub const DET_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct Header<'a> {
    program: &'static str,
    version: &'static str,
    #[serde(flatten)]
    cli: &'a Cli,
}

impl Cli {
    /// The run configuration as one line of JSON.
    pub fn config(&self) -> serde_json::Value {
        serde_json::to_value(Header { program: "hardsoft", version: env!("CARGO_PKG_VERSION"), cli: self })
            .expect("configuration serialises")
    }

    fn csv_header(&self) -> String {
        format!("# config: {}\n", self.config())
    }

    fn ctx(&self) -> Result<EvalContext> {
        EvalContext::new(self.precision_bits)
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }

    fn require_csv(&self) -> Result<()> {
        match self.format_or(OutputFormat::Csv) {
            OutputFormat::Csv => Ok(()),
            f => Err(Error::Parse(format!("this subcommand writes CSV only, not {f:?}"))),
        }
    }

    /// Runs the subcommand and returns its output.
    pub fn execute(&self) -> Result<Report> {
        match &self.command {
            Command::Derive { order } => self.derive(*order),
            Command::Verify { target: VerifyTarget::Kernel(a) } | Command::VerifyKernel(a) => self.kernel(a, true),
            Command::Scan(a) => self.kernel(a, false),
            Command::Verify { target: VerifyTarget::Transition(a) } => self.transition(a, true),
            Command::Transition(a) => self.transition(a, false),
            Command::Verify { target: VerifyTarget::Parametrix(a) } | Command::VerifyParametrix(a) => self.parametrix(a),
            Command::Fredholm { which } => self.fredholm(which),
        }
    }

    fn derive(&self, order: usize) -> Result<Report> {
        if order == 0 {
            return Err(Error::domain("derive needs --order ≥ 1"));
        }
        let format = match self.format_or(OutputFormat::Json) {
            OutputFormat::Json => Format::Json,
            OutputFormat::Latex => Format::Latex,
            OutputFormat::Csv => return Err(Error::Parse("derive writes json or latex".into())),
        };
        let k = assemble_kernel_expansion(order)?;
        k.check_invariants()?;
        let cfg = self.config();
        let text = match format {
            Format::Json => k.to_json(Some(&cfg)) + "\n",
            Format::Latex => k.to_latex(Some(&cfg)),
        };
        Ok(Report { text, passed: true })
    }

    fn kernel(&self, a: &KernelArgs, gated: bool) -> Result<Report> {
        self.require_csv()?;
        let grid = Grid::parse(&a.grid)?;
        let k = assemble_kernel_expansion(a.m.max(1))?;
        let res = residual_scan(&a.nu, &grid, a.m, &k, &self.ctx()?)?;
        let mut text = self.csv_header();
        text.push_str("nu,h,m,max_residual,slope\n");
        for r in &res.rows {
            let slope = res.slopes[r.m].1;
            writeln!(text, "{},{:e},{},{:e},{:.6}", r.nu, r.h, r.m, r.max_residual, slope).unwrap();
        }
        let passed = !gated
            || res.slopes.iter().all(|&(m, s)| (s - (m as f64 + 1.0)).abs() <= SLOPE_BAND_KERNEL);
        Ok(Report { text, passed })
    }

    fn transition(&self, a: &TransitionArgs, gated: bool) -> Result<Report> {
        self.require_csv()?;
        let mut text = self.csv_header();
        text.push_str("t,nu,h,E2,F,diff,slope\n");
        let mut passed = true;
        for &t in &a.t {
            let r = transition_study(t, &a.nu)?;
            let slope = r.slope.map(|s| format!("{s:.6}")).unwrap_or_default();
            for i in 0..r.nus.len() {
                writeln!(text, "{},{},{:e},{:.15},{:.15},{:e},{}", t, r.nus[i], r.h[i], r.e2[i], r.f, r.errors[i], slope).unwrap();
            }
            if gated {
                passed &= r.slope.is_some_and(|s| (s - 1.0).abs() <= SLOPE_BAND_TRANSITION);
            }
        }
        Ok(Report { text, passed })
    }

    fn parametrix(&self, a: &ParametrixArgs) -> Result<Report> {
        self.require_csv()?;
        if a.points == 0 || !(a.r_max > 0.0 && a.r_max <= 20.0) {
            return Err(Error::domain("need at least one point and 0 < r_max ≤ 20"));
        }
        let ctx = self.ctx()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut text = self.csv_header();
        text.push_str("ray,r,det_residual,jump_residual\n");
        let mut passed = true;
        let p = ctx.precision_bits;
        for (j, &k) in RAYS.iter().enumerate() {
            for _ in 0..a.points {
                let r: f64 = a.r_max * (1.0 - rng.random::<f64>());
                let theta = Float::with_val(p, BigComplex::pi(p) * k) / 4u32;
                let z = BigComplex::expi(&theta).scale(&Float::with_val(p, r));
                let det = [RaySide::Plus, RaySide::Minus]
                    .iter()
                    .map(|&side| airy_parametrix(&z, Some(side), &ctx).map(|m| (&cmat_det(&m) - &BigComplex::one(p)).abs().to_f64()))
                    .collect::<Result<Vec<f64>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                let jump = jump_residual(j + 1, r, &ctx)?;
                passed &= det < DET_TOL && jump < JUMP_TOL;
                writeln!(text, "{},{r:.17},{det:e},{jump:e}", j + 1).unwrap();
            }
        }
        Ok(Report { text, passed })
    }

    fn fredholm(&self, which: &FredholmTarget) -> Result<Report> {
        self.require_csv()?;
        let mut text = self.csv_header();
        text.push_str("kind,t,s,nu,value,n_nodes,a,b,est_error\n");
        let rows = match which {
            FredholmTarget::F { t } => t.iter().map(|&t| tracy_widom_F(t).map(|r| ("F", t.to_string(), String::new(), String::new(), r))).collect::<Result<Vec<_>>>()?,
            FredholmTarget::E2 { s, nu } => s.iter().map(|&s| e2_hard(s, *nu).map(|r| ("E2", String::new(), s.to_string(), nu.to_string(), r))).collect::<Result<Vec<_>>>()?,
        };
        for (kind, t, s, nu, r) in rows {
            writeln!(text, "{kind},{t},{s},{nu},{:.15},{},{},{},{:e}", r.value, r.n_nodes, r.truncation.0, r.truncation.1, r.est_error).unwrap();
        }
        Ok(Report { text, passed: true })
    }
}

/// Parses `args`, runs the subcommand, writes its output and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match cli.execute() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &report.text).map_err(Error::from),
        None => {
            print!("{}", report.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    if report.passed {
        0
    } else {
        eprintln!("check failed: see the table for the offending rows");
        2
    }
}
