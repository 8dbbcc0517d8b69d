use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use spinor_core::action::{TorusEndomorphism, TranslationSystem};
use spinor_core::clifford::{CliffordElement, Signature};
use spinor_core::dual::PicardMap;
use spinor_core::exact::Matrix;
use spinor_core::parse::{parse_and_eval, parse_bundle, parse_coordinates, parse_lattice, parse_signature};
use spinor_core::report::{emit_report, Format, VerificationReport};
use spinor_core::spinor::{RepresentationTable, CONSTRUCTION};
use spinor_core::suite::{run_suite, suite_names, SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use spinor_core::torus::{reduce, torsion_points, LatticeSpec, PolarizationData, TorusPoint, DEFAULT_CAP};

#[derive(Parser, Debug)]
#[command(name = "spinav", version, about = "Exact verification toolkit for spinor abelian varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Half the number of generators: a single value `2` or a range `1..3` [default: 1..3].
    #[arg(long, global = true)]
    k: Option<String>,

    /// Signature `p,q` of the quadratic form; defaults to `(2k,0)`.
    #[arg(long, global = true)]
    signature: Option<String>,

    /// JSON lattice file: rows of Gaussian-rational strings, columns are generators.
    #[arg(long, global = true)]
    lattice: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Maximum number of points an exhaustive enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,

    /// Random points and classes per suite.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,

    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Suite name or `all`; may be repeated.
    #[arg(long, global = true)]
    suite: Vec<String>,

    /// Treat a subring-index gap as a failure.
    #[arg(long, global = true)]
    strict: bool,

    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,

    /// Record per-suite wall time (reports are then no longer reproducible byte for byte).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the algebra, representation and polarization summary.
    Build {
        /// Also show rho of this element and check rho(u*) = rho(u)^+.
        #[arg(long)]
        element: Option<String>,
    },
    /// Run the verification suites.
    Verify,
    /// Enumerate n-torsion points.
    Torsion {
        #[arg(long, default_value_t = 2)]
        n: u64,
        /// Print at most this many points.
        #[arg(long, default_value_t = 32)]
        limit: usize,
    },
    /// Clifford multiplication of a point by an integral element.
    Act {
        #[arg(long)]
        element: String,
        #[arg(long)]
        point: String,
    },
    /// The map to Pic^0 and the induced dual action.
    Dual {
        #[arg(long)]
        element: Option<String>,
        #[arg(long, conflicts_with = "bundle")]
        point: Option<String>,
        #[arg(long)]
        bundle: Option<String>,
    },
    /// Re-emit a saved JSON report.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

fn parse_k(s: &str) -> Result<Vec<usize>> {
    let ks: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().context("k range start")?;
        let b = b.trim();
        let b: usize = match b.strip_prefix('=') {
            Some(rest) => rest.parse().context("k range end")?,
            None => b.parse().context("k range end")?,
        };
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().context("k value")).collect::<Result<_>>()?
    };
    if ks.is_empty() || ks.iter().any(|&k| k == 0 || k > 15) {
        bail!("k must lie in 1..15, got '{s}'");
    }
    Ok(ks)
}

struct Setup {
    sig: Signature,
    table: RepresentationTable,
    lattice: LatticeSpec,
}

impl Cli {
    fn signature(&self) -> Result<Option<Signature>> {
        self.signature.as_deref().map(parse_signature).transpose().map_err(Into::into)
    }

    fn lattice(&self) -> Result<Option<LatticeSpec>> {
        let Some(path) = &self.lattice else { return Ok(None) };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Some(parse_lattice(&text)?))
    }

    /// Requested k values; a signature or lattice pins k and must agree with `--k`.
    fn ks(&self, pinned: Option<usize>) -> Result<Vec<usize>> {
        let ks = parse_k(self.k.as_deref().unwrap_or("1..3"))?;
        match pinned {
            Some(k) if self.k.is_some() && ks != [k] => bail!(
                "--k {} conflicts with k = {k} implied by the signature or lattice",
                self.k.as_deref().unwrap_or_default()
            ),
            Some(k) => Ok(vec![k]),
            None => Ok(ks),
        }
    }

    /// Single-k setup for the one-off verbs; uses the first requested k.
    fn setup(&self) -> Result<Setup> {
        let lattice = self.lattice()?;
        let sig = match (self.signature()?, &lattice) {
            (Some(s), _) => s,
            (None, Some(l)) => Signature::euclidean(l.dim().trailing_zeros() as usize),
            (None, None) => Signature::euclidean(self.ks(None)?[0]),
        };
        self.ks(Some(sig.k()))?;
        let lattice = lattice.unwrap_or_else(|| LatticeSpec::standard(sig.k()));
        if lattice.dim() != 1 << sig.k() {
            bail!("lattice has rank {} but the signature needs {}", lattice.dim(), 1 << sig.k());
        }
        Ok(Setup { table: RepresentationTable::build(sig), sig, lattice })
    }

    fn config(&self) -> Result<SuiteConfig> {
        let signature = self.signature()?;
        let lattice = self.lattice()?;
        let pinned =
            signature.as_ref().map(Signature::k).or(lattice.as_ref().map(|l| l.dim().trailing_zeros() as usize));
        let cfg = SuiteConfig {
            ks: self.ks(pinned)?,
            signature,
            lattice,
            seed: self.seed,
            cap: self.cap,
            samples: self.samples,
            suites: self.suite.clone(),
            timings: self.timings,
            ..SuiteConfig::default()
        };
        cfg.validate().map_err(|e| anyhow::anyhow!("{e}; suites: {}", suite_names().collect::<Vec<_>>().join(", ")))?;
        Ok(cfg)
    }
}

fn point(src: &str, s: &Setup) -> Result<TorusPoint> {
    let v = parse_coordinates(src)?;
    if v.len() != s.lattice.dim() {
        bail!("point has {} coordinates, expected {}", v.len(), s.lattice.dim());
    }
    Ok(reduce(&v, &s.lattice)?)
}

/// Smallest `n ≤ 4` with `B^n = Id`.
fn endo_order(e: &TorusEndomorphism) -> Option<u32> {
    let id = Matrix::identity(e.lattice_matrix().rows());
    (1..=4).find(|&n| e.lattice_matrix().pow(n) == id)
}

fn write_report(cli: &Cli, report: &VerificationReport, out: &mut impl Write) -> Result<()> {
    out.write_all(&emit_report(report, cli.format.into()))?;
    if let Some(path) = &cli.json {
        fs::write(path, emit_report(report, Format::Json)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Verify => {
            let report = run_suite(&cli.config()?);
            write_report(cli, &report, &mut out)?;
            Ok(report.success(cli.strict))
        }
        Command::Report { input } => {
            let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let report: VerificationReport = serde_json::from_str(&text).context("parsing report")?;
            write_report(cli, &report, &mut out)?;
            Ok(report.success(cli.strict))
        }
        Command::Build { element } => {
            let s = cli.setup()?;
            if let Some(src) = element {
                let u = parse_and_eval(src, s.sig)?;
                let image = s.table.rho(&u)?;
                let star = s.table.rho(&u.star())?;
                writeln!(out, "element     {u}")?;
                writeln!(out, "rho(u) =\n{image}")?;
                writeln!(out, "rho(u*) =\n{star}")?;
                let ok = star == image.adjoint();
                writeln!(out, "rho(u*) = rho(u)^+: {ok}")?;
                return Ok(ok);
            }
            let iso = s.table.verify_algebra_iso();
            let unitary = s.table.verify_unitary();
            writeln!(out, "signature {}  k = {}  spinor dimension {}", s.sig, s.sig.k(), s.table.spinor_dim())?;
            writeln!(out, "construction: {CONSTRUCTION}")?;
            writeln!(out, "clifford relations: {}", s.table.satisfies_clifford_relations())?;
            writeln!(out, "blade images: rank {} of {}", iso.spanning_rank, s.sig.blade_count())?;
            writeln!(
                out,
                "unitary: {} ({} of {} adjoint checks failed)",
                unitary.adjoint_ok,
                unitary.failures.len(),
                unitary.checked
            )?;
            if s.table.spinor_dim() <= 4 {
                for a in 1..=s.sig.dim() {
                    writeln!(out, "rho(e{a}) =\n{}", s.table.gamma(a))?;
                }
            }
            let pol = PolarizationData::standard(&s.lattice);
            let riemann = pol.riemann_check(&s.lattice);
            writeln!(
                out,
                "riemann relations: integral {} compatible {} positive {}",
                riemann.integral, riemann.j_invariant_compat, riemann.positive
            )?;
            match pol.polarization_type() {
                Ok(t) => writeln!(
                    out,
                    "polarization type: ({})",
                    t.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                )?,
                Err(e) => writeln!(out, "polarization type: {e}")?,
            }
            Ok(true)
        }
        Command::Torsion { n, limit } => {
            let s = cli.setup()?;
            let pts = torsion_points(*n, s.lattice.dim(), cli.cap)?;
            writeln!(out, "{} points of order dividing {n}", pts.len_total())?;
            for p in pts.take(*limit) {
                writeln!(out, "{p}")?;
            }
            Ok(true)
        }
        Command::Act { element, point: src } => {
            let s = cli.setup()?;
            let h = parse_and_eval(element, s.sig)?;
            let p = point(src, &s)?;
            let endo = TorusEndomorphism::from_element(&h, &s.table, &s.lattice)?;
            writeln!(out, "element {h}")?;
            writeln!(out, "point   {p}")?;
            writeln!(out, "image   {}", endo.apply(&p))?;
            let Some(order) = endo_order(&endo) else {
                writeln!(out, "order   > 4 (no translation system)")?;
                return Ok(true);
            };
            let sys = TranslationSystem::compute(&endo, order, &p);
            let failures = sys.failures(&endo);
            writeln!(out, "order   {order}")?;
            writeln!(out, "M       {}", sys.m)?;
            writeln!(out, "N       {}", sys.n)?;
            writeln!(
                out,
                "system  {}",
                if failures.is_empty() { "holds".to_string() } else { format!("fails: {}", failures.join("; ")) }
            )?;
            if order >= 2 && p.order() <= 2.into() {
                let ok = sys.m.times(2).is_origin() && sys.n == sys.m;
                writeln!(out, "2-torsion: 2M = 0 and N = M: {ok}")?;
                if !ok {
                    return Ok(false);
                }
            }
            Ok(failures.is_empty())
        }
        Command::Dual { element, point: p_src, bundle } => {
            let s = cli.setup()?;
            let map = PicardMap::new(&PolarizationData::standard(&s.lattice))?;
            let l = match (p_src, bundle) {
                (Some(src), None) => {
                    let p = point(src, &s)?;
                    let l = map.phi_forward(&p)?;
                    writeln!(out, "point        {p}")?;
                    writeln!(out, "phi(point)   {l}")?;
                    l
                }
                (None, Some(src)) => {
                    let l = parse_bundle(src, s.sig.k())?;
                    writeln!(out, "bundle       {l}")?;
                    writeln!(out, "phi^-1       {}", map.phi_inverse(&l)?)?;
                    l
                }
                _ => bail!("give exactly one of --point or --bundle"),
            };
            writeln!(out, "order        {}", l.order())?;
            let Some(src) = element else { return Ok(true) };
            let h: CliffordElement = parse_and_eval(src, s.sig)?;
            let endo = TorusEndomorphism::from_element(&h, &s.table, &s.lattice)?;
            let base = map.phi_inverse(&l)?;
            let square_lhs = map.phi_forward(&endo.apply(&base))?;
            let square_rhs = map.induced_action(&endo, &l)?;
            writeln!(out, "rho*(L)      {square_rhs}")?;
            writeln!(out, "square       {}", if square_lhs == square_rhs { "commutes" } else { "FAILS" })?;
            let mut ok = square_lhs == square_rhs;
            if let Some(order) = endo_order(&endo) {
                let sys = map.clifford_bundle_system(&endo, order, &l)?;
                writeln!(out, "L_M          {}", sys.l_m)?;
                writeln!(out, "L_N          {}", sys.l_n)?;
                writeln!(
                    out,
                    "system       {}",
                    if sys.holds() { "holds".to_string() } else { format!("fails: {}", sys.failures.join("; ")) }
                )?;
                ok &= sys.holds();
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
