use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use g2check::different::BaseType;
use g2check::global::data::embedded_table;
use g2check::global::selmer::{selmer_computation, SelmerComputation};
use g2check::global::{enumerate_kummer_fields, quad_field, KummerQuarticField};
use g2check::oracle::{verify_lemma_family, OracleReport};
use g2check::padic::PrecisionContext;
use g2check::verdict::{check_all, check_field, render_summary, Verdict};
use g2check::Error;

#[derive(Parser)]
#[command(name = "g2check", version, about = "Check non-existence of irreducible mod-2 representations unramified outside 2 and infinity")]
struct Cli {
    /// Write a JSON record to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Working p-adic precision, in uniformizer digits.
    #[arg(long, global = true, default_value_t = 32, value_name = "DIGITS")]
    precision: u32,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification for one field or all seven.
    Check {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "all", required_unless_present = "all")]
        field: Option<i64>,
        #[arg(long)]
        all: bool,
    },
    /// Brute-force the local different values over a base.
    VerifyLemmas {
        #[arg(long, value_enum)]
        base: BaseArg,
        /// Tame ramification index of the base (only 3, over the unramified base).
        #[arg(long, value_name = "E")]
        tame: Option<u32>,
        /// Restrict to extensions abelian over the quadratic base.
        #[arg(long)]
        abelian: bool,
    },
    /// Compute the 2-Selmer group and the quartic fields it defines.
    Selmer {
        #[arg(long, allow_hyphen_values = true)]
        field: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Ramified,
    Unramified,
}

#[derive(Serialize)]
struct SelmerRecord {
    selmer: SelmerComputation,
    quartic_fields: Vec<KummerQuarticField>,
}

/// Outcome of a command: whether everything checked out, plus what to write.
struct Outcome {
    passed: bool,
    text: String,
    json: String,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    if cli.precision == 0 {
        return Err(Error::InvalidPrecision("precision must be positive".into()));
    }
    let ctx = PrecisionContext::new(cli.precision);
    match &cli.command {
        Command::Check { field, all } => {
            let certs = if *all {
                check_all(ctx)?
            } else {
                vec![check_field(field.expect("clap enforces one of --field/--all"), ctx)?]
            };
            let passed = certs.iter().all(|c| c.verdict == Verdict::NonExistenceVerified);
            let text = certs.iter().map(render_summary).collect::<String>();
            let json = if *all {
                serde_json::to_string_pretty(&certs)
            } else {
                serde_json::to_string_pretty(&certs[0])
            };
            Ok(Outcome {
                passed,
                text,
                json: json.expect("serializable"),
            })
        }
        Command::VerifyLemmas { base, tame, abelian } => {
            let base_type = match base {
                BaseArg::Ramified => BaseType::RamifiedQuadratic,
                BaseArg::Unramified => BaseType::UnramifiedQuadratic,
            };
            let reports = verify_lemma_family(base_type, tame.unwrap_or(1), *abelian, ctx)?;
            Ok(Outcome {
                passed: reports.iter().all(OracleReport::passed),
                text: reports.iter().map(render_report).collect(),
                json: serde_json::to_string_pretty(&reports).expect("serializable"),
            })
        }
        Command::Selmer { field } => {
            let f = quad_field(*field)?;
            let selmer = selmer_computation(&f)?;
            let table = embedded_table()?;
            let quartic_fields = enumerate_kummer_fields(&f, &table.kummer, ctx)?;
            let record = SelmerRecord { selmer, quartic_fields };
            Ok(Outcome {
                passed: true,
                text: render_selmer(&record),
                json: serde_json::to_string_pretty(&record).expect("serializable"),
            })
        }
    }
}

fn render_report(r: &OracleReport) -> String {
    let mut s = format!(
        "{} ({}, e1 = {}): {} subgroups, {} mismatches, {} structural violations, max {}",
        r.base,
        if r.abelian_mode { "abelian" } else { "general" },
        r.e1,
        r.subgroups_checked,
        r.value_mismatch_count,
        r.structural_violation_count,
        r.max_value
    );
    if let Some(o) = &r.odd_action {
        s += &format!(", odd action failures {}", o.implication_failures);
    }
    s += if r.passed() { "  PASS\n" } else { "  FAIL\n" };
    for (m, vals) in &r.realized_values {
        let v: Vec<String> = vals.iter().map(|x| x.to_string()).collect();
        s += &format!("  m = {m}: {{{}}}\n", v.join(", "));
    }
    for mm in &r.value_mismatches {
        let e: Vec<String> = mm.expected.iter().map(|x| x.to_string()).collect();
        s += &format!(
            "  mismatch: sizes {:?} gives {}, expected one of {{{}}}\n",
            mm.sizes,
            mm.value,
            e.join(", ")
        );
    }
    s
}

fn render_selmer(r: &SelmerRecord) -> String {
    let mut s = format!("Q(sqrt({})): 2-Selmer dimension {}\n", r.selmer.d, r.selmer.basis.len());
    for c in &r.selmer.candidates {
        match c.collapsed_onto {
            None => s += &format!("  {}  basis element\n", c.candidate),
            Some(m) => s += &format!("  {}  collapses onto class mask {m:#b}\n", c.candidate),
        }
    }
    for k in &r.quartic_fields {
        let factors: Vec<String> = k.local_factors_at_2.iter().map(|l| format!("e={} f={}", l.e, l.f)).collect();
        s += &format!(
            "  {} (listed as {}): {:?} at 2, {}\n",
            k.label(),
            k.listed_as,
            k.behaviour_at_2,
            factors.join(", ")
        );
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("g2check: {e}");
            return match e {
                Error::ListMismatch { .. } | Error::PrecisionExhausted { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            };
        }
    };
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, outcome.json + "\n") {
            eprintln!("g2check: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if !cli.quiet {
        print!("{}", outcome.text);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
