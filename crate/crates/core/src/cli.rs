//! Command-line front end: `construct`, `verify`, `scan`, `table`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::construct::{
    certificates_from_json, certificates_to_json, construct_binomial_power, construct_chebyshev, construct_cubic,
    construct_cyclotomic, construct_quadratic, construct_quartic_biquadratic, construct_quartic_cubic_linear,
    ConstructBudget, ConstructError, WitnessCertificate,
};
use crate::intpoly::IntPoly;
use crate::numtheory::FactorBudget;
use crate::scan::{scan, Theta};
use crate::specialpoly::{chebyshev_t, cyclotomic, psi};
use crate::verify::{verify, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_UNVERIFIABLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable overriding the rho iteration budget.
pub const BUDGET_ENV: &str = "FACTORIDIV_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "factoridiv",
    version,
    about = "Build and check certificates that P(n) divides n!",
    after_help = "EXAMPLES:\n\
                  \n  factoridiv construct --class quadratic --poly 1,0,1 --count 5\
                  \n  factoridiv construct --class binomial --m 2 --s 2 --out certs.json\
                  \n  factoridiv verify certs.json\
                  \n  factoridiv scan --poly 1,0,1 --from 2 --to 10000 --theta 14/25 --jobs 4\
                  \n  factoridiv table psi --max 12\n\
                  \nEXIT CODES:\n\
                  \n  0 success, 1 verification failure, 2 budget exhausted,\
                  \n  3 unverifiable within budget, 64 usage error"
)]
struct Cli {
    /// Seed for the factorizer's random choices
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct witness certificates for one polynomial family
    Construct(ConstructArgs),
    /// Check every certificate in a JSON file
    Verify {
        file: PathBuf,
        /// Print one JSON report per certificate instead of text
        #[arg(long)]
        json: bool,
    },
    /// List n where the largest prime factor of f(n) is below n^theta
    Scan {
        #[arg(long)]
        poly: IntPoly,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// j/k or a decimal
        #[arg(long)]
        theta: Theta,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print cyclotomic, psi, or Chebyshev polynomials
    Table {
        kind: TableKind,
        #[arg(long, default_value_t = 12)]
        max: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Class {
    Quadratic,
    Cubic,
    QuarticCl,
    QuarticQq,
    Binomial,
    Cyclotomic,
    Chebyshev,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    Phi,
    Psi,
    Chebyshev,
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    class: Class,
    /// Ascending coefficients "c0,c1,..."; quartic classes take two
    #[arg(long)]
    poly: Vec<IntPoly>,
    #[arg(long)]
    m: Option<u64>,
    /// Chebyshev indices, comma separated
    #[arg(long, value_delimiter = ',')]
    ms: Vec<u64>,
    /// Bases s, comma separated or repeated
    #[arg(long, value_delimiter = ',')]
    s: Vec<BigInt>,
    #[arg(long)]
    count: Option<usize>,
    /// Mertens ratio, j/k or a decimal
    #[arg(long, default_value = "1", value_parser = parse_ratio)]
    ratio: BigRational,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let bad = || format!("expected j/k or a decimal, got {s:?}");
    if let Some((j, k)) = s.split_once('/') {
        let j: BigInt = j.trim().parse().map_err(|_| bad())?;
        let k: BigInt = k.trim().parse().map_err(|_| bad())?;
        if k == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(j, k));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(BigRational::new(num, num_traits::pow(BigInt::from(10), frac.len())))
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        {
            let _ = writeln!($w, $($arg)*);
        }
    };
}

fn factor_budget(seed: u64) -> Result<FactorBudget, String> {
    let mut b = FactorBudget { seed, ..Default::default() };
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        b.rho_iterations = v
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))?;
    }
    Ok(b)
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(io.out, "{text}");
            } else {
                let _ = write!(io.err, "{text}");
            }
            return code;
        }
    };
    let budget = match factor_budget(cli.seed) {
        Ok(b) => b,
        Err(msg) => {
            say!(io.err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Construct(args) => cmd_construct(args, budget, &mut io),
        Command::Verify { file, json } => cmd_verify(&file, json, budget, &mut io),
        Command::Scan { poly, from, to, theta, jobs } => cmd_scan(&poly, from, to, theta, jobs, budget, &mut io),
        Command::Table { kind, max } => cmd_table(kind, max, &mut io),
    }
}

fn usage(io: &mut Io<'_>, msg: impl std::fmt::Display) -> i32 {
    say!(io.err, "error: {msg}");
    EXIT_USAGE
}

fn dispatch(args: &ConstructArgs, budget: &ConstructBudget) -> Result<Vec<WitnessCertificate>, ConstructError> {
    let invalid = |m: &str| ConstructError::InvalidInput(m.to_string());
    let one_poly = || match args.poly.as_slice() {
        [p] => Ok(p),
        _ => Err(invalid("this class takes exactly one --poly")),
    };
    let two_polys = || match args.poly.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(invalid("quartic classes take two --poly flags, one per factor")),
    };
    let s_values = if args.s.is_empty() { vec![BigInt::from(2)] } else { args.s.clone() };
    let m = || args.m.ok_or_else(|| invalid("this class needs --m"));
    let count = args.count.unwrap_or(1);
    let mut certs = match args.class {
        Class::Quadratic => construct_quadratic(one_poly()?, count, budget)?,
        Class::Cubic => construct_cubic(one_poly()?, count, budget)?,
        Class::QuarticCl => {
            let (a, b) = two_polys()?;
            let (cubic, linear) = if a.deg() == Some(3) { (a, b) } else { (b, a) };
            if cubic.deg() != Some(3) || linear.deg() != Some(1) {
                return Err(invalid("quartic-cl needs a cubic and a linear factor"));
            }
            construct_quartic_cubic_linear(cubic, linear, count, budget)?
        }
        Class::QuarticQq => {
            let (a, b) = two_polys()?;
            construct_quartic_biquadratic(a, b, count, budget)?
        }
        Class::Binomial => construct_binomial_power(m()?, &s_values, &args.ratio, budget)?,
        Class::Cyclotomic => construct_cyclotomic(m()?, &s_values, &args.ratio, budget)?,
        Class::Chebyshev => {
            let ms = if args.ms.is_empty() { vec![m()?] } else { args.ms.clone() };
            construct_chebyshev(&ms, &s_values, &args.ratio, budget)?
        }
    };
    if let Some(c) = args.count {
        certs.truncate(c);
    }
    Ok(certs)
}

fn write_certs(args: &ConstructArgs, certs: &[WitnessCertificate], io: &mut Io<'_>) -> Result<(), i32> {
    let text = certificates_to_json(certs);
    match &args.out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| {
            say!(io.err, "error: cannot write {}: {e}", path.display());
            EXIT_USAGE
        }),
        None => {
            say!(io.out, "{text}");
            Ok(())
        }
    }
}

/// Verifies freshly built certificates; returns the exit code they earn.
fn check_emitted(certs: &[WitnessCertificate], budget: &FactorBudget, io: &mut Io<'_>) -> i32 {
    let mut code = EXIT_OK;
    for (i, c) in certs.iter().enumerate() {
        let report = verify(c, budget);
        let digits = c.n.to_string().len();
        match &report.outcome {
            Outcome::Accepted { rule } => {
                let smooth = report.smoothness.as_ref().map(|s| s.exponent.to_string()).unwrap_or_default();
                say!(io.err, "#{} n ({} digits) accepted by {} rule, smoothness {}", i + 1, digits, rule, smooth);
            }
            Outcome::Rejected(reason) => {
                say!(io.err, "#{} rejected: {reason}", i + 1);
                code = EXIT_VERIFY_FAILED;
            }
            Outcome::Unverifiable { factor } => {
                say!(io.err, "#{} unverifiable: could not factor {factor}", i + 1);
                if code == EXIT_OK {
                    code = EXIT_UNVERIFIABLE;
                }
            }
        }
    }
    code
}

fn cmd_construct(args: ConstructArgs, factor: FactorBudget, io: &mut Io<'_>) -> i32 {
    let mut budget = ConstructBudget::default();
    budget.schur.factor = factor;
    match dispatch(&args, &budget) {
        Ok(certs) => {
            if let Err(code) = write_certs(&args, &certs, io) {
                return code;
            }
            if certs.is_empty() {
                say!(io.err, "no certificate satisfied the size conditions");
                return EXIT_BUDGET;
            }
            say!(io.err, "{} certificate(s) for {}", certs.len(), certs[0].poly);
            check_emitted(&certs, &factor, io)
        }
        Err(ConstructError::InvalidInput(msg)) => usage(io, msg),
        Err(ConstructError::Budget(report)) => {
            say!(io.err, "budget exhausted: {report}");
            for b in &report.pell_blocks {
                say!(io.err, "  Pell D = {} (kappa {}, l {}): {}", b.d, b.kappa, b.l, b.reason);
            }
            if let Err(code) = write_certs(&args, &report.partial, io) {
                return code;
            }
            let verified = check_emitted(&report.partial, &factor, io);
            if verified == EXIT_OK {
                EXIT_BUDGET
            } else {
                verified
            }
        }
        Err(e) => {
            say!(io.err, "construction failed: {e}");
            EXIT_BUDGET
        }
    }
}

fn cmd_verify(file: &PathBuf, json: bool, budget: FactorBudget, io: &mut Io<'_>) -> i32 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage(io, format!("cannot read {}: {e}", file.display())),
    };
    let certs = match certificates_from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            say!(io.err, "malformed certificate file: {e}");
            return EXIT_VERIFY_FAILED;
        }
    };
    let (mut rejected, mut unverifiable) = (0usize, 0usize);
    for (i, c) in certs.iter().enumerate() {
        let report = verify(c, &budget);
        match &report.outcome {
            Outcome::Accepted { .. } => {}
            Outcome::Rejected(_) => rejected += 1,
            Outcome::Unverifiable { .. } => unverifiable += 1,
        }
        if json {
            say!(io.out, "{}", serde_json::to_string(&report).expect("report serializes"));
            continue;
        }
        match &report.outcome {
            Outcome::Accepted { rule } => {
                let s = report.smoothness.as_ref().map(|s| s.exponent.to_string()).unwrap_or_default();
                say!(io.out, "#{} {} n={}: accepted ({}), smoothness {s}", i + 1, c.class, short(&c.n), rule);
            }
            Outcome::Rejected(reason) => say!(io.out, "#{} {} n={}: rejected, {reason}", i + 1, c.class, short(&c.n)),
            Outcome::Unverifiable { factor } => {
                say!(io.out, "#{} {} n={}: unverifiable, cannot factor {}", i + 1, c.class, short(&c.n), short(factor))
            }
        }
        for m in &report.margins {
            say!(io.out, "    p={} needs {} of {}", m.prime, m.needed, m.available);
        }
    }
    say!(io.err, "{} certificate(s): {} rejected, {} unverifiable", certs.len(), rejected, unverifiable);
    if rejected > 0 {
        EXIT_VERIFY_FAILED
    } else if unverifiable > 0 {
        EXIT_UNVERIFIABLE
    } else {
        EXIT_OK
    }
}

fn short(x: &BigInt) -> String {
    let s = x.to_string();
    if s.len() <= 40 {
        s
    } else {
        format!("{}...{} ({} digits)", &s[..12], &s[s.len() - 12..], s.len())
    }
}

fn cmd_scan(poly: &IntPoly, from: u64, to: u64, theta: Theta, jobs: usize, budget: FactorBudget, io: &mut Io<'_>) -> i32 {
    let result = match scan(poly, from, to, theta, &budget, jobs) {
        Ok(r) => r,
        Err(e) => return usage(io, e),
    };
    for rec in &result.hits {
        say!(io.out, "{}", rec.to_json_line());
    }
    let s = &result.summary;
    let min = s.min_exponent.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
    say!(
        io.err,
        "scanned {}, hits {}, min exponent {}, unresolved {}",
        s.scanned,
        s.hits,
        min,
        s.unresolved.len()
    );
    if s.unresolved.is_empty() {
        EXIT_OK
    } else {
        EXIT_UNVERIFIABLE
    }
}

fn cmd_table(kind: TableKind, max: u64, io: &mut Io<'_>) -> i32 {
    match kind {
        TableKind::Phi => {
            for n in 1..=max {
                say!(io.out, "Phi_{n} = {}", cyclotomic(n));
            }
        }
        TableKind::Psi => {
            for n in 3..=max {
                say!(io.out, "psi_{n} = {}", psi(n).expect("n >= 3"));
            }
        }
        TableKind::Chebyshev => {
            for n in 0..=max {
                say!(io.out, "T_{n} = {}", chebyshev_t(n));
            }
        }
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_forms() {
        assert_eq!(parse_ratio("9/8").unwrap(), BigRational::new(9.into(), 8.into()));
        assert_eq!(parse_ratio("1.125").unwrap(), BigRational::new(9.into(), 8.into()));
        assert_eq!(parse_ratio("2").unwrap(), BigRational::from_integer(2.into()));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
    }
}
