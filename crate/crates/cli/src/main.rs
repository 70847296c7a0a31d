use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use fqc_core::circuit::unitary_of;
use fqc_core::dsl::SourceFile;
use fqc_core::equivalence::{builtin_catalog, run_all};
use fqc_core::gates::catalog;
use fqc_core::matrix::{dist_up_to_phase, Complex64, ComplexMatrix, Tolerance};
use fqc_core::protocols::{
    apply, measure, outcome_bits, qss, sample, teleport, ProtocolResult, PureState, QssVariant,
    TeleportVariant,
};
use fqc_core::Circuit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fourier-based quantum circuit toolkit.
#[derive(Parser)]
#[command(name = "fqc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every built-in identity.
    Verify {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compare two circuit files up to global phase.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Simulate a circuit file on a basis state.
    Sim {
        file: PathBuf,
        /// Input basis state, `q0` is the rightmost character.
        #[arg(long)]
        state: Option<String>,
        /// Print the measurement branch table instead of the final state.
        #[arg(long)]
        branches: bool,
        /// Wires to measure for `--branches`/`--shots` (default: all).
        #[arg(long, value_delimiter = ',')]
        measure: Option<Vec<usize>>,
        /// Draw this many seeded samples from the branch table.
        #[arg(long)]
        shots: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the unitary of a circuit file.
    Matrix {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Teleport `α|0⟩ + β|1⟩` and print the branch table.
    Teleport {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "a", value_parser = ["a", "b", "c", "d"])]
        variant: String,
        #[arg(long)]
        json: bool,
    },
    /// Share `α|0⟩ + β|1⟩` over a GHZ resource and print the branch table.
    Qss {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        parties: u8,
        #[arg(long, default_value = "a", value_parser = ["a", "b", "c", "d", "e"])]
        variant: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        json: bool,
    },
    /// Print every named gate matrix.
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Bad argument values detected after clap parsing; exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// 15 significant digits, trailing zeros trimmed, tiny values shown as 0.
fn num(x: f64) -> String {
    if x.abs() < 1e-15 {
        return "0".into();
    }
    let digits = 14 - x.abs().log10().floor() as i32;
    let s = format!("{:.*}", digits.clamp(0, 30) as usize, x);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn complex(z: Complex64) -> String {
    let im = num(z.im);
    if im.starts_with('-') {
        format!("{}{}i", num(z.re), im)
    } else {
        format!("{}+{}i", num(z.re), im)
    }
}

fn tolerance(tol: f64) -> anyhow::Result<Tolerance> {
    Tolerance::new(tol).map_err(|e| usage(e.to_string()))
}

fn load(path: &Path) -> anyhow::Result<Circuit> {
    let src = SourceFile::load(path).with_context(|| format!("cannot read {}", path.display()))?;
    src.parse().map_err(|e| {
        anyhow::anyhow!(
            "{}:{}:{}: {} (at `{}`)",
            path.display(),
            e.line,
            e.col,
            e.message,
            e.token
        )
    })
}

fn parse_complex(s: &str) -> anyhow::Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    let [re, im] = parts[..] else {
        return Err(usage(format!("expected RE,IM, got `{s}`")));
    };
    let p = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("bad number `{t}`")))
    };
    Ok(Complex64::new(p(re)?, p(im)?))
}

/// Accepts amplitudes within 1e-6 of unit norm and renormalizes them.
fn input_state(alpha: &str, beta: &str) -> anyhow::Result<PureState> {
    let (a, b) = (parse_complex(alpha)?, parse_complex(beta)?);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-6 {
        return Err(usage(format!(
            "|α|² + |β|² must be 1, got norm {}",
            num(norm)
        )));
    }
    Ok(PureState::qubit(a / norm, b / norm)?)
}

fn basis_label(index: usize, n: usize) -> String {
    (0..n)
        .rev()
        .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn print_protocol(r: &ProtocolResult, json: bool) {
    if json {
        println!("{}", r.to_json());
        return;
    }
    println!("variant {}", r.variant);
    println!("outcome probability correction fidelity post_state");
    for b in &r.branches {
        let state: Vec<String> = b
            .post_state
            .amplitudes()
            .iter()
            .map(|&z| complex(z))
            .collect();
        println!(
            "{} {} {:?} {} [{}]",
            outcome_bits(&b.outcome),
            num(b.probability),
            b.correction,
            num(b.fidelity),
            state.join(", ")
        );
    }
}

fn print_matrix(m: &ComplexMatrix) {
    for r in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|c| complex(m.get(r, c))).collect();
        println!("  {}", row.join(" "));
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify { tol, json } => {
            let report = run_all(&builtin_catalog(), tolerance(tol)?);
            if let Some(path) = &json {
                if path.as_os_str() == "-" {
                    println!("{}", report.to_json());
                } else {
                    std::fs::write(path, report.to_json() + "\n")
                        .with_context(|| format!("cannot write {}", path.display()))?;
                }
            }
            if json.as_deref().is_none_or(|p| p.as_os_str() != "-") {
                for r in &report.results {
                    let status = if r.pass { "PASS" } else { "FAIL" };
                    println!(
                        "{status} {} distance={} phase={}",
                        r.id,
                        num(r.distance),
                        num(r.phase)
                    );
                }
                println!("{} passed, {} failed", report.passed(), report.failed());
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Equiv { a, b, tol } => {
            let tol = tolerance(tol)?;
            let (ca, cb) = (load(&a)?, load(&b)?);
            if ca.n_qubits() != cb.n_qubits() {
                bail!(
                    "width mismatch: {} vs {} qubits",
                    ca.n_qubits(),
                    cb.n_qubits()
                );
            }
            let pd = dist_up_to_phase(&unitary_of(&ca), &unitary_of(&cb))?;
            let equivalent = pd.distance < tol.eps();
            println!("distance {}", num(pd.distance));
            println!("phase {}", num(pd.phase));
            println!("equivalent {}", if equivalent { "yes" } else { "no" });
            Ok(if equivalent {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Sim {
            file,
            state,
            branches,
            measure: wires,
            shots,
            seed,
        } => {
            let c = load(&file)?;
            let n = c.n_qubits();
            let index = match state {
                None => 0,
                Some(bits) => {
                    if bits.len() != n || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                        return Err(usage(format!("--state must be {n} characters of 0/1")));
                    }
                    usize::from_str_radix(&bits, 2).expect("checked digits")
                }
            };
            let out = apply(&c, &PureState::basis(n, index))?;
            if !branches && shots.is_none() {
                for (i, &z) in out.amplitudes().iter().enumerate() {
                    println!("|{}> {}", basis_label(i, n), complex(z));
                }
                return Ok(ExitCode::SUCCESS);
            }
            let wires = wires.unwrap_or_else(|| (0..n).collect());
            let table = measure(&out, &wires).map_err(|e| usage(e.to_string()))?;
            if branches {
                println!("outcome probability post_state");
                for b in &table {
                    let s: Vec<String> = b
                        .post_state
                        .amplitudes()
                        .iter()
                        .map(|&z| complex(z))
                        .collect();
                    println!(
                        "{} {} [{}]",
                        outcome_bits(&b.outcome),
                        num(b.probability),
                        s.join(", ")
                    );
                }
            }
            if let Some(shots) = shots {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut counts = vec![0usize; table.len()];
                for _ in 0..shots {
                    let r: f64 = rng.gen();
                    let hit = sample(&table, r).expect("nonempty table");
                    let k = table
                        .iter()
                        .position(|b| b.outcome == hit.outcome)
                        .expect("from table");
                    counts[k] += 1;
                }
                println!("outcome count");
                for (b, k) in table.iter().zip(counts) {
                    println!("{} {k}", outcome_bits(&b.outcome));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { file, format } => {
            let m = unitary_of(&load(&file)?);
            match format {
                Format::Json => println!("{}", m.to_json()),
                Format::Csv => print!("{}", m.to_csv()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Teleport {
            alpha,
            beta,
            variant,
            json,
        } => {
            let input = input_state(&alpha, &beta)?;
            let v = TeleportVariant::parse(&variant).expect("clap restricts values");
            print_protocol(&teleport(&input, v)?, json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Qss {
            parties,
            variant,
            alpha,
            beta,
            json,
        } => {
            let input = input_state(&alpha, &beta)?;
            let v = QssVariant::parse(&variant).expect("clap restricts values");
            print_protocol(&qss(&input, parties as usize, v)?, json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog => {
            for def in catalog() {
                println!("{} arity={} {:?}", def.name, def.arity, def.provenance);
                print_matrix(&def.matrix);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
