//! Command-line surface: generators, factorization, membership, certificates,
//! table reproduction, and the verification sweep.
//!
//! Exit codes are stable: 0 success, 1 negative answer (non-membership,
//! selected so scripts can tell "mathematically false" from "invocation
//! broken"), 2 usage or parse errors, 3 internal inconsistencies or failed
//! checks.

use clap::{Parser, Subcommand};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use qideal::cyclotomic::{factor_cyclotomic, ExponentVector};
use qideal::ideals::{principality_certificate, verify_certificate, BezoutCertificate};
use qideal::links::{membership, membership_deficits, ColorSpec, LinkClass};
use qideal::poly::LaurentPoly;
use qideal::verify::{run_all, CheckConfig};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qideal",
    version,
    about = "Exact ideal arithmetic in Z[q,q^-1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print expanded canonical polynomials instead of factored products.
    #[arg(long, global = true)]
    expand: bool,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Number of worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the principal generator of a link-class ideal.
    Gen {
        /// Link class: alg, rb, br, or br-cap-a.
        class: String,
        /// Colors l_1 ... l_n.
        #[arg(required = true)]
        colors: Vec<u32>,
    },
    /// Factor a polynomial into a unit, cyclotomic parts, and a residual.
    Factor {
        /// Polynomial, e.g. "q^5-1" or "-q^-2*(q-1)*(q+1)".
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Decide membership of a polynomial in a link-class ideal.
    Member {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Link class: alg, rb, br, or br-cap-a.
        class: String,
        #[arg(required = true)]
        colors: Vec<u32>,
    },
    /// Emit the principality certificate for level l.
    Witness {
        l: u32,
        /// Write the certificate document here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the verification sweeps.
    Check {
        /// Bound for the level sweeps.
        #[arg(long, default_value_t = 16, value_name = "L")]
        l_max: u32,
        /// Include the certificate construction suite (slow).
        #[arg(long)]
        certificates: bool,
        /// Verify a stored certificate document instead of sweeping.
        #[arg(long, value_name = "PATH")]
        certificate_file: Option<PathBuf>,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 0x0051_D347)]
        seed: u64,
    },
    /// Print the generator exponent table t(l, m).
    Table {
        /// Largest level (column); default 16.
        l_max: Option<u32>,
        /// Largest cyclotomic index (row); default 4.
        m_max: Option<u32>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Gen { class, colors } => cmd_gen(cli, class, colors),
        Command::Factor { poly } => cmd_factor(cli, poly),
        Command::Member {
            poly,
            class,
            colors,
        } => cmd_member(cli, poly, class, colors),
        Command::Witness { l, out } => cmd_witness(cli, *l, out.as_deref()),
        Command::Check {
            l_max,
            certificates,
            certificate_file,
            seed,
        } => cmd_check(
            cli,
            *l_max,
            *certificates,
            certificate_file.as_deref(),
            *seed,
        ),
        Command::Table { l_max, m_max } => cmd_table(cli, l_max.unwrap_or(16), m_max.unwrap_or(4)),
    }
}

fn phi_product(v: &ExponentVector) -> String {
    if v.is_empty() {
        return "1".into();
    }
    v.iter()
        .map(|(m, e)| {
            if e == 1 {
                format!("Phi({m})")
            } else {
                format!("Phi({m})^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn exponent_map(v: &ExponentVector) -> BTreeMap<String, u32> {
    v.iter().map(|(m, e)| (m.to_string(), e)).collect()
}

fn parse_spec(class: &str, colors: &[u32]) -> Result<ColorSpec, Failure> {
    let class = LinkClass::from_str(class).map_err(|e| usage(e.to_string()))?;
    ColorSpec::new(class, colors.to_vec()).map_err(|e| usage(e.to_string()))
}

fn parse_poly(text: &str) -> Result<LaurentPoly, Failure> {
    LaurentPoly::parse(text).map_err(|e| usage(e.to_string()))
}

fn cmd_gen(cli: &Cli, class: &str, colors: &[u32]) -> Result<u8, Failure> {
    let spec = parse_spec(class, colors)?;
    let exponents = spec
        .generator_exponents()
        .map_err(|e| internal(e.to_string()))?;
    if cli.json {
        let doc = json!({
            "class": spec.class().cli_name(),
            "colors": spec.colors(),
            "exponents": exponent_map(&exponents),
            "factored": phi_product(&exponents),
            "expanded": exponents.expand().to_string(),
        });
        println!("{doc}");
    } else if cli.expand {
        println!("{}", exponents.expand());
    } else {
        println!("{}", phi_product(&exponents));
    }
    Ok(0)
}

fn cmd_factor(cli: &Cli, poly: &str) -> Result<u8, Failure> {
    let input = parse_poly(poly)?;
    let factorization =
        factor_cyclotomic(&input).map_err(|_| usage("cannot factor the zero polynomial"))?;
    if cli.json {
        let doc = json!({
            "sign": factorization.sign,
            "q_power": factorization.q_power,
            "exponents": exponent_map(&factorization.exponents),
            "residual": factorization.residual.to_string(),
        });
        println!("{doc}");
    } else if cli.expand {
        println!("{}", factorization.reconstruct());
    } else {
        println!("{factorization}");
    }
    Ok(0)
}

fn cmd_member(cli: &Cli, poly: &str, class: &str, colors: &[u32]) -> Result<u8, Failure> {
    let p = parse_poly(poly)?;
    let spec = parse_spec(class, colors)?;
    let result = membership(&p, &spec).map_err(|e| internal(e.to_string()))?;
    match result {
        Some(cofactor) => {
            if cli.json {
                let doc = json!({"member": true, "cofactor": cofactor.to_string()});
                println!("{doc}");
            } else {
                println!("member: cofactor = {cofactor}");
            }
            Ok(0)
        }
        None => {
            let deficits = membership_deficits(&p, &spec).map_err(|e| internal(e.to_string()))?;
            if cli.json {
                let doc = json!({
                    "member": false,
                    "deficits": deficits.iter().map(|d| json!({
                        "m": d.m, "required": d.required, "present": d.present,
                    })).collect::<Vec<_>>(),
                });
                println!("{doc}");
            } else {
                println!("not a member");
                for d in &deficits {
                    println!(
                        "  Phi({}) requires exponent {}, found {} (deficit {})",
                        d.m,
                        d.required,
                        d.present,
                        d.amount()
                    );
                }
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_witness(cli: &Cli, l: u32, out: Option<&std::path::Path>) -> Result<u8, Failure> {
    let cert = principality_certificate(l).map_err(|e| internal(e.to_string()))?;
    let document = serde_json::to_string_pretty(&cert).map_err(|e| internal(e.to_string()))?;
    if !cli.json {
        let profile = qideal::ideals::t_exponents(l);
        println!("generator = {}", phi_product(&profile));
    }
    match out {
        Some(path) => {
            std::fs::write(path, &document)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            if cli.json {
                println!("{document}");
            }
        }
        None => println!("{document}"),
    }
    Ok(0)
}

fn cmd_check(
    cli: &Cli,
    l_max: u32,
    certificates: bool,
    certificate_file: Option<&std::path::Path>,
    seed: u64,
) -> Result<u8, Failure> {
    if let Some(path) = certificate_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let cert = BezoutCertificate::from_json(&text)
            .map_err(|e| usage(format!("malformed certificate document: {e}")))?;
        let ok = verify_certificate(&cert);
        if cli.json {
            println!("{}", json!({"l": cert.l, "valid": ok}));
        } else if ok {
            println!("certificate for l = {}: OK", cert.l);
        } else {
            println!("certificate for l = {}: FAIL", cert.l);
        }
        return Ok(if ok { 0 } else { EXIT_INTERNAL });
    }

    let cfg = CheckConfig {
        l_max,
        certificates,
        seed,
        ..CheckConfig::default()
    };
    let reports = run_all(&cfg);
    let all_passed = reports.iter().all(|r| r.passed());
    if cli.json {
        let doc = reports
            .iter()
            .map(|r| {
                json!({
                    "suite": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                })
            })
            .collect::<Vec<_>>();
        println!("{}", serde_json::Value::Array(doc));
    } else {
        for r in &reports {
            println!("{}", r.summary_line());
            for failure in &r.failures {
                println!("  - {failure}");
            }
        }
    }
    Ok(if all_passed { 0 } else { EXIT_INTERNAL })
}

fn cmd_table(cli: &Cli, l_max: u32, m_max: u32) -> Result<u8, Failure> {
    let rows: Vec<Vec<u32>> = (1..=m_max)
        .map(|m| {
            (0..=l_max)
                .map(|l| qideal::ideals::t_exponent(l, m))
                .collect()
        })
        .collect();
    if cli.json {
        let doc = json!({"l_max": l_max, "m_max": m_max, "rows": rows});
        println!("{doc}");
        return Ok(0);
    }
    let width = rows
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .chain((0..=l_max).map(|l| l.to_string().len()))
        .max()
        .unwrap_or(1);
    let header: Vec<String> = (0..=l_max).map(|l| format!("{l:>width$}")).collect();
    println!("m\\l  {}", header.join(" "));
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        println!("{:<3}  {}", i + 1, cells.join(" "));
    }
    Ok(0)
}
