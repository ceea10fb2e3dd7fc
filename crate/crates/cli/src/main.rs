use clap::{Parser, Subcommand, ValueEnum};
use gpgrowth::{
    closure_budget_from_env, cmd_conjgrowth, cmd_growth, cmd_rate, cmd_verify, load_graph,
    CliError, GrowthMode, VerifyRow, DEFAULT_DEGREE, DEFAULT_MAX_LENGTH, DEFAULT_WINDOW,
};

/// Growth and conjugacy growth series of graph products of groups.
#[derive(Parser)]
#[command(name = "gpgrowth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    Truncated,
}

#[derive(Subcommand)]
enum Command {
    /// Standard growth series of the graph product
    Growth {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        #[arg(long, value_enum, default_value = "rational")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Conjugacy growth series of the graph product
    Conjgrowth {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check formula coefficients against the brute-force oracle
    Verify {
        graph: String,
        #[arg(long = "max-length", default_value_t = DEFAULT_MAX_LENGTH)]
        max_length: usize,
        #[arg(long)]
        json: bool,
    },
    /// Growth rate estimates and radii of convergence
    Rate {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[arg(long)]
        json: bool,
    },
}

fn print_coefficients(coeffs: &[num_bigint::BigInt]) {
    println!("{:>6}  {}", "n", "coefficient");
    for (n, c) in coeffs.iter().enumerate() {
        println!("{:>6}  {}", n, c);
    }
}

fn print_verify_table(label: &str, rows: &[VerifyRow]) {
    println!("{}", label);
    println!("{:>6}  {:>16}  {:>16}  match", "length", "formula", "oracle");
    for r in rows {
        println!(
            "{:>6}  {:>16}  {:>16}  {}",
            r.length,
            r.formula,
            r.oracle,
            if r.matches { "yes" } else { "NO" }
        );
    }
}

fn run() -> Result<i32, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Growth { graph, degree, mode, json } => {
            let g = load_graph(&graph)?;
            let mode = match mode {
                ModeArg::Rational => GrowthMode::Rational,
                ModeArg::Truncated => GrowthMode::Truncated,
            };
            let out = cmd_growth(&g, degree, mode)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&out.report.to_json()).unwrap());
            } else {
                if out.mode_downgraded {
                    eprintln!("warning: custom truncated vertex series force truncated mode");
                }
                if let Some(cf) = &out.report.closed_form {
                    println!("sigma = {}", cf);
                }
                print_coefficients(&out.report.coefficients);
            }
            Ok(0)
        }
        Command::Conjgrowth { graph, degree, json } => {
            let g = load_graph(&graph)?;
            let out = cmd_conjgrowth(&g, degree)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&out.report.to_json()).unwrap());
            } else {
                for line in &out.decomposition {
                    println!("{}", line);
                }
                print_coefficients(&out.report.coefficients);
            }
            Ok(0)
        }
        Command::Verify { graph, max_length, json } => {
            let g = load_graph(&graph)?;
            let out = cmd_verify(&g, max_length, closure_budget_from_env())?;
            if json {
                let to_rows = |rows: &[VerifyRow]| {
                    rows.iter()
                        .map(|r| {
                            serde_json::json!({
                                "length": r.length,
                                "formula": r.formula.to_string(),
                                "oracle": r.oracle,
                                "match": r.matches,
                            })
                        })
                        .collect::<Vec<_>>()
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "sigma": to_rows(&out.sigma_rows),
                        "sigma_conj": to_rows(&out.conj_rows),
                        "all_match": out.all_match,
                    }))
                    .unwrap()
                );
            } else {
                print_verify_table("standard growth (sigma)", &out.sigma_rows);
                print_verify_table("conjugacy growth (sigma_conj)", &out.conj_rows);
                println!("result: {}", if out.all_match { "all match" } else { "MISMATCH" });
            }
            Ok(if out.all_match { 0 } else { 2 })
        }
        Command::Rate { graph, degree, window, json } => {
            let g = load_graph(&graph)?;
            let out = cmd_rate(&g, degree, window)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "sigma_rate_estimate": out.sigma_rate.value,
                        "sigma_conj_rate_estimate": out.conj_rate.value,
                        "difference": out.difference,
                        "rc_sigma_exact": out.rc_sigma_exact,
                        "rc_sigma_pivot": out.rc_sigma_pivot,
                        "polynomial": out.polynomial,
                    }))
                    .unwrap()
                );
            } else {
                if out.polynomial {
                    println!("polynomial series (finite group): growth rate 0");
                }
                println!("sigma rate estimate      = {:.6}", out.sigma_rate.value);
                println!("sigma_conj rate estimate = {:.6}", out.conj_rate.value);
                println!("difference               = {:.6}", out.difference);
                match out.rc_sigma_exact {
                    Some(rc) => println!("RC(sigma) exact          = {:.9}", rc),
                    None => println!("RC(sigma) exact          = none (polynomial)"),
                }
            }
            Ok(0)
        }
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {}", err);
            std::process::exit(err.exit_code());
        }
    }
}
