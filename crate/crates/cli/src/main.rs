use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zetalab::bbp::bbp_zeta3;
use zetalab::bench::{table1, Format};
use zetalab::identities::{ids, verify_all, verify_identity, ResidualReport, Verdict};
use zetalab::oracle::zeta3_reference;
use zetalab::series::{eval_method, MethodId, SeriesReport};
use zetalab::Error;

#[derive(Parser)]
#[command(name = "zetalab", version, about = "Series for zeta(3): evaluation, identity checks and the convergence table")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one method to a given outer order.
    Compute(ComputeArgs),
    /// Check identities and print their residuals.
    Verify(VerifyArgs),
    /// Reproduce the convergence table for orders 1 to 4.
    Table1 {
        #[arg(long, default_value_t = 256)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Md)]
        format: OutFormat,
    },
    /// Print zeta(3) to D significant digits.
    Reference {
        #[arg(long)]
        digits: usize,
    },
    /// List method or identity ids.
    List {
        #[arg(value_enum)]
        what: ListKind,
    },
}

#[derive(Args)]
struct ComputeArgs {
    /// Method id, or BBP.
    #[arg(long)]
    method: String,
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = 256)]
    prec_bits: u32,
    #[arg(long, value_enum, default_value_t = OutFormat::Md)]
    format: OutFormat,
    /// Include every summed term.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, e.g. LI3_HALF or FUNC_EQ:x=1/2.
    #[arg(conflicts_with_all = ["identity", "all"])]
    id: Option<String>,
    #[arg(long)]
    identity: Option<String>,
    #[arg(long, conflicts_with = "identity")]
    all: bool,
    #[arg(long, default_value_t = 256)]
    prec_bits: u32,
    #[arg(long, value_enum, default_value_t = OutFormat::Md)]
    format: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Md,
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Md => Format::Md,
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ListKind {
    Methods,
    Identities,
}

const USAGE: u8 = 2;
const FAILED: u8 = 1;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Unknown { .. } | Error::Parse(_) | Error::Precision(_) | Error::Domain(_) => USAGE,
                _ => FAILED,
            })
        }
    }
}

fn run(cli: Cli) -> zetalab::Result<u8> {
    match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Table1 { prec_bits, format } => {
            let rep = table1(prec_bits)?;
            print!("{}", rep.render(format.into()));
            for w in &rep.wall_times {
                eprintln!("n={} {}: {:.1} ms", w.n, w.method, w.millis);
            }
            Ok(0)
        }
        Command::Reference { digits } => {
            println!("{}", reference(digits)?);
            Ok(0)
        }
        Command::List { what } => {
            match what {
                ListKind::Methods => {
                    for m in MethodId::ALL {
                        println!("{:<12} {}", m.name(), m.description());
                    }
                    println!("{:<12} base-4096 BBP-type formula, order n sums k = 0..n-1", "BBP");
                }
                ListKind::Identities => ids().iter().for_each(|i| println!("{i}")),
            }
            Ok(0)
        }
    }
}

fn compute(a: ComputeArgs) -> zetalab::Result<u8> {
    let result = if a.method.eq_ignore_ascii_case("BBP") {
        if a.order == 0 {
            return Err(Error::Domain("BBP needs order >= 1".into()));
        }
        bbp_zeta3(a.order - 1, a.prec_bits)?
    } else {
        eval_method(MethodId::parse(&a.method)?, a.order, a.prec_bits)?
    };
    print!("{}", render_series(&result.report(a.trace), a.format));
    Ok(0)
}

fn render_series(r: &SeriesReport, format: OutFormat) -> String {
    match format {
        OutFormat::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        OutFormat::Csv => {
            let mut s = format!(
                "method,order,prec_bits,value,error_estimate,abs_error\n{},{},{},{},{},{}\n",
                r.method, r.order, r.prec_bits, r.value, r.error_estimate, r.abs_error
            );
            if let Some(terms) = &r.terms {
                s.push_str("\ncomponent,index,value\n");
                for t in terms {
                    s.push_str(&format!("\"{}\",{},{}\n", t.component, t.index, t.value));
                }
            }
            s
        }
        OutFormat::Md => {
            let mut s = format!(
                "method: {}\norder: {}\nprec_bits: {}\nvalue: {}\nerror_estimate: {}\nabs_error: {}\n",
                r.method, r.order, r.prec_bits, r.value, r.error_estimate, r.abs_error
            );
            if let Some(terms) = &r.terms {
                s.push_str("\n| component | index | term |\n|---|---|---|\n");
                for t in terms {
                    s.push_str(&format!("| {} | {} | {} |\n", t.component, t.index, t.value));
                }
            }
            s
        }
    }
}

fn verify(a: VerifyArgs) -> zetalab::Result<u8> {
    let reports = match (a.id.or(a.identity), a.all) {
        (Some(id), _) => vec![verify_identity(&id, a.prec_bits)?],
        (None, true) => verify_all(a.prec_bits)?,
        (None, false) => return Err(Error::Parse("give an identity id or --all".into())),
    };
    match a.format {
        OutFormat::Json => println!("{}", serde_json::to_string_pretty(&reports).expect("ledger serializes")),
        OutFormat::Csv => {
            println!("id,verdict,residual,printed_residual,explained");
            for r in &reports {
                println!("{},{},{},{},{}", r.id, verdict_name(r), r.residual_decimal, r.printed_residual, r.explained);
            }
        }
        OutFormat::Md => {
            for r in &reports {
                println!("{:<20} {:<10} residual {} (tolerance {})", r.id, verdict_name(r), r.residual_decimal, r.tolerance);
                if r.verdict != Verdict::Verified {
                    println!("    printed form residual {}", r.printed_residual);
                    println!("    {}", r.note);
                }
            }
        }
    }
    Ok(if reports.iter().any(ResidualReport::is_unexplained_failure) { FAILED } else { 0 })
}

fn verdict_name(r: &ResidualReport) -> &'static str {
    match r.verdict {
        Verdict::Verified => "pass",
        Verdict::Corrected => "corrected",
        Verdict::Failed if r.explained => "explained",
        Verdict::Failed => "FAIL",
    }
}

fn reference(digits: usize) -> zetalab::Result<String> {
    if digits == 0 {
        return Err(Error::Domain("digits must be at least 1".into()));
    }
    let bits = ((digits as f64) / std::f64::consts::LOG10_2).ceil() as u32 + 32;
    let z = zeta3_reference(bits.max(64))?;
    Ok(z.to_fixed(digits - 1, true))
}
