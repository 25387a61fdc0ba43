//! `ghzlu`: classify three-qubit pure states, decide local-unitary
//! equivalence, and work with generalized Schmidt decompositions from the
//! command line.
//!
//! Exit codes are a stable contract: 0 success (or: the pair is
//! equivalent), 1 input error, 2 the state is not in the GHZ class, 3 the
//! pair is inequivalent.

mod report;
mod statefile;

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use ghzlu::classify::{canonical_asd, classify, decide_lu_equivalence};
use ghzlu::invariants::{compute_invariants, rho_iota_transform};
use ghzlu::oracle::{brute_force_lu_equivalent, sample_subfamily};
use ghzlu::qstate::{apply_local_unitaries, three_tangle};
use ghzlu::selftest::{run_criterion, CRITERION_COUNT};
use ghzlu::{AsdState64, FamilyLabel, LocalUnitaryTriple64, Tolerances64};

use report::{
    modality_str, subfamily_str, AsdRecord, AsdReport, ClassifyReport, CriterionRecord,
    EquivReport, InvariantsReport, SampleReport, SelftestReport, ToolInfo, TransformReport,
};
use statefile::{load, parse, render, Loaded, StateFile};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_NOT_GHZ: i32 = 2;
const EXIT_INEQUIVALENT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "ghzlu",
    version,
    about = "Three-qubit entanglement families under local unitaries",
    after_help = "State files are line-delimited text; see `ghzlu sample --family P4' --count 1` for the shape. Paths may be '-' for stdin."
)]
struct Cli {
    /// Scale every internal tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance: f64,

    /// Seed for sampling and the search oracle; falls back to $GHZLU_SEED,
    /// then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a state: family, subfamily, invariants, uniqueness.
    Classify {
        input: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two states are equivalent under local unitaries.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Cross-check the analytic decision with the brute-force search.
        #[arg(long)]
        oracle: bool,
        /// Restart budget for the search.
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// Apply the rho-iota transformation and print the partner ASD.
    Transform {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the generalized Schmidt decomposition and its witness.
    Asd {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the invariant record (gamma, J1, J4, rho, iota, measure).
    Invariants { input: PathBuf },
    /// Generate deterministic random members of one subfamily.
    Sample {
        /// Subfamily label: P1'..P4', R1', R2', C1'..C4', or the same with ''.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification suite.
    Selftest {
        /// Reduced sample counts (default).
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        /// Full acceptance-size runs.
        #[arg(long)]
        full: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(EXIT_INPUT);
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        return Err(format!("--tolerance must be a positive number, got {}", cli.tolerance));
    }
    let tol = Tolerances64::default().scaled(cli.tolerance);
    let input_tol = 1e-9 * cli.tolerance;
    let seed = cli.seed.or_else(env_seed).unwrap_or(0);
    let tool = ToolInfo::current(cli.tolerance);

    match cli.command {
        Command::Classify { input, out } => {
            cmd_classify(&input, out.as_deref(), &tol, input_tol, tool, cli.json)
        }
        Command::Equiv { a, b, oracle, budget } => {
            cmd_equiv(&a, &b, oracle, budget, seed, &tol, input_tol, tool, cli.json)
        }
        Command::Transform { input, out } => {
            cmd_transform(&input, out.as_deref(), &tol, input_tol, tool, cli.json)
        }
        Command::Asd { input, out } => {
            cmd_asd(&input, out.as_deref(), &tol, input_tol, tool, cli.json)
        }
        Command::Invariants { input } => {
            cmd_invariants(&input, &tol, input_tol, tool, cli.json)
        }
        Command::Sample { family, count, out } => {
            cmd_sample(&family, count, seed, out.as_deref(), &tol, tool, cli.json)
        }
        Command::Selftest { quick: _, full } => cmd_selftest(full, &tol, tool, cli.json),
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("GHZLU_SEED").ok()?.parse().ok()
}

fn read_source(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn read_state(path: &Path, input_tol: f64, tol: &Tolerances64) -> Result<Loaded, String> {
    let text = read_source(path)?;
    let parsed = parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    load(&parsed, input_tol, tol).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

fn format_complex(re: f64, im: f64) -> String {
    format!("{re}{im:+}i")
}

fn format_asd_line(a: &AsdRecord) -> String {
    let l = a.lambda;
    format!(
        "lambda ({}, {}, {}, {}, {})  phi {}",
        l[0], l[1], l[2], l[3], l[4], a.phi
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    input: &Path,
    out: Option<&Path>,
    tol: &Tolerances64,
    input_tol: f64,
    tool: ToolInfo,
    json: bool,
) -> Result<i32, String> {
    let loaded = read_state(input, input_tol, tol)?;
    let tangle = three_tangle(&loaded.state);

    if !loaded.asd.is_ghz_class(tol) {
        let rec = ClassifyReport::non_ghz(tool, &loaded.asd, loaded.asd.lbps_count(tol), tangle);
        let text = if json {
            to_json(&rec)
        } else {
            format!(
                "{}\nasd          {}\nlbps         {}\nthree-tangle {}\n",
                rec.note.as_deref().unwrap_or(""),
                format_asd_line(&rec.asd),
                rec.lbps,
                rec.three_tangle
            )
        };
        emit(&text, out)?;
        return Ok(EXIT_NOT_GHZ);
    }

    let report = classify(&loaded.asd, tol).map_err(|e| e.to_string())?;
    let canonical = canonical_asd(&loaded.asd, tol).map_err(|e| e.to_string())?;
    let rec = ClassifyReport::ghz(tool, &loaded.asd, &report, tangle, &canonical);

    let text = if json {
        to_json(&rec)
    } else {
        let inv = &report.invariants;
        format!(
            concat!(
                "label        {}\n",
                "family       {}\n",
                "subfamily    {}\n",
                "lbps         {}\n",
                "rho          {}\n",
                "|ln rho|     {}\n",
                "measure      {}\n",
                "gamma        {}\n",
                "iota         {}\n",
                "j1           {}\n",
                "j4           {}\n",
                "three-tangle {}\n",
                "unique-asd   {} ({})\n",
                "asd          {}\n",
                "canonical    {}\n",
            ),
            report.label,
            report.label.family,
            subfamily_str(report.label.subfamily),
            report.lbps,
            inv.rho,
            inv.ln_rho_abs,
            inv.measure,
            format_complex(inv.gamma.re, inv.gamma.im),
            format_complex(inv.iota.re, inv.iota.im),
            inv.j1,
            inv.j4,
            tangle,
            report.unique_asd,
            modality_str(report.uniqueness_modality),
            format_asd_line(&rec.asd),
            format_asd_line(rec.canonical_asd.as_ref().unwrap()),
        )
    };
    emit(&text, out)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_equiv(
    a_path: &Path,
    b_path: &Path,
    oracle: bool,
    budget: usize,
    seed: u64,
    tol: &Tolerances64,
    input_tol: f64,
    tool: ToolInfo,
    json: bool,
) -> Result<i32, String> {
    let a = read_state(a_path, input_tol, tol)?;
    let b = read_state(b_path, input_tol, tol)?;
    if !a.asd.is_ghz_class(tol) || !b.asd.is_ghz_class(tol) {
        let which = if a.asd.is_ghz_class(tol) { b_path } else { a_path };
        eprintln!(
            "{}: not GHZ class; equivalence within the family atlas is undefined",
            which.display()
        );
        return Ok(EXIT_NOT_GHZ);
    }

    let ra = classify(&a.asd, tol).map_err(|e| e.to_string())?;
    let rb = classify(&b.asd, tol).map_err(|e| e.to_string())?;
    let decision = decide_lu_equivalence(&a.asd, &b.asd, tol).map_err(|e| e.to_string())?;
    let verdict = if oracle {
        Some(brute_force_lu_equivalent(&a.state, &b.state, budget, seed, tol))
    } else {
        None
    };

    let rec = EquivReport {
        tool,
        equivalent: decision.equivalent,
        reason: decision.reason.clone(),
        labels: [ra.label.to_string(), rb.label.to_string()],
        ln_rho_abs: [ra.invariants.ln_rho_abs, rb.invariants.ln_rho_abs],
        witness_via_oracle: decision.witness_via_oracle,
        witness: decision.witness.as_ref().map(Into::into),
        oracle: verdict.as_ref().map(Into::into),
    };

    let text = if json {
        to_json(&rec)
    } else {
        let mut s = format!(
            "equivalent   {}\nreason       {}\nlabels       {} / {}\n|ln rho|     {} / {}\n",
            rec.equivalent, rec.reason, rec.labels[0], rec.labels[1], rec.ln_rho_abs[0], rec.ln_rho_abs[1]
        );
        if decision.witness.is_some() {
            s.push_str("witness      analytic (identity or diagonal phases)\n");
        } else if decision.witness_via_oracle {
            s.push_str("witness      constructible via the search oracle\n");
        }
        if let Some(v) = &verdict {
            s.push_str(&format!(
                "oracle       {} (best fidelity {}, {} restarts)\n",
                if v.equivalent { "equivalent" } else { "inequivalent" },
                v.best_fidelity,
                v.restarts_used
            ));
        }
        s
    };
    emit(&text, None)?;
    Ok(if decision.equivalent { EXIT_OK } else { EXIT_INEQUIVALENT })
}

fn cmd_transform(
    input: &Path,
    out: Option<&Path>,
    tol: &Tolerances64,
    input_tol: f64,
    tool: ToolInfo,
    json: bool,
) -> Result<i32, String> {
    let loaded = read_state(input, input_tol, tol)?;
    if !loaded.asd.is_ghz_class(tol) {
        eprintln!("{}: not GHZ class; the rho-iota transformation is undefined", input.display());
        return Ok(EXIT_NOT_GHZ);
    }
    let inv = compute_invariants(&loaded.asd, tol).map_err(|e| e.to_string())?;
    let partner = rho_iota_transform(&loaded.asd, tol).map_err(|e| e.to_string())?;

    let text = if json {
        to_json(&TransformReport {
            tool,
            input: (&loaded.asd).into(),
            transformed: (&partner).into(),
            rho: inv.rho,
        })
    } else {
        render(&StateFile::Asd {
            lambda: *partner.lambda(),
            phi: partner.phi(),
        })
    };
    emit(&text, out)?;
    Ok(EXIT_OK)
}

fn cmd_asd(
    input: &Path,
    out: Option<&Path>,
    tol: &Tolerances64,
    input_tol: f64,
    tool: ToolInfo,
    json: bool,
) -> Result<i32, String> {
    let loaded = read_state(input, input_tol, tol)?;
    let witness = loaded
        .witness
        .clone()
        .unwrap_or_else(LocalUnitaryTriple64::identity);
    let straightened = apply_local_unitaries(&loaded.state, &witness);
    let target = loaded.asd.reconstruct();
    let witness_error = (0..8)
        .map(|i| (straightened.amplitudes()[i] - target.amplitudes()[i]).norm())
        .fold(0.0, f64::max);

    let rec = AsdReport {
        tool,
        asd: (&loaded.asd).into(),
        witness: (&witness).into(),
        witness_error,
    };
    let text = if json {
        to_json(&rec)
    } else {
        let mut s = render(&StateFile::Asd {
            lambda: *loaded.asd.lambda(),
            phi: loaded.asd.phi(),
        });
        for (name, m) in [("A", &rec.witness.a), ("B", &rec.witness.b), ("C", &rec.witness.c)] {
            s.push_str(&format!(
                "# U^{} = [[{}, {}], [{}, {}]]\n",
                name,
                format_complex(m[0][0][0], m[0][0][1]),
                format_complex(m[0][1][0], m[0][1][1]),
                format_complex(m[1][0][0], m[1][0][1]),
                format_complex(m[1][1][0], m[1][1][1]),
            ));
        }
        s.push_str(&format!("# witness error {witness_error:.3e}\n"));
        s
    };
    emit(&text, out)?;
    Ok(EXIT_OK)
}

fn cmd_invariants(
    input: &Path,
    tol: &Tolerances64,
    input_tol: f64,
    tool: ToolInfo,
    json: bool,
) -> Result<i32, String> {
    let loaded = read_state(input, input_tol, tol)?;
    if !loaded.asd.is_ghz_class(tol) {
        eprintln!("{}: not GHZ class; the invariant record is undefined", input.display());
        return Ok(EXIT_NOT_GHZ);
    }
    let inv = compute_invariants(&loaded.asd, tol).map_err(|e| e.to_string())?;
    let rec = InvariantsReport {
        tool,
        asd: (&loaded.asd).into(),
        invariants: (&inv).into(),
    };
    let text = if json {
        to_json(&rec)
    } else {
        format!(
            "gamma     {}\nj1        {}\nj4        {}\nrho       {}\niota      {}\n|ln rho|  {}\nmeasure   {}\n",
            format_complex(inv.gamma.re, inv.gamma.im),
            inv.j1,
            inv.j4,
            inv.rho,
            format_complex(inv.iota.re, inv.iota.im),
            inv.ln_rho_abs,
            inv.measure
        )
    };
    emit(&text, None)?;
    Ok(EXIT_OK)
}

fn cmd_sample(
    family: &str,
    count: usize,
    seed: u64,
    out: Option<&Path>,
    tol: &Tolerances64,
    tool: ToolInfo,
    json: bool,
) -> Result<i32, String> {
    let label: FamilyLabel = family
        .parse()
        .map_err(|e: ghzlu::Error| e.to_string())?;
    let states: Vec<AsdState64> = (0..count)
        .map(|i| sample_subfamily(label, seed.wrapping_add(i as u64), tol))
        .collect();

    let text = if json {
        to_json(&SampleReport {
            tool,
            label: label.to_string(),
            base_seed: seed,
            states: states.iter().map(Into::into).collect(),
        })
    } else {
        let mut s = String::new();
        for (i, a) in states.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            s.push_str(&format!("# {} seed {}\n", label, seed.wrapping_add(i as u64)));
            s.push_str(&render(&StateFile::Asd {
                lambda: *a.lambda(),
                phi: a.phi(),
            }));
        }
        s
    };
    emit(&text, out)?;
    Ok(EXIT_OK)
}

fn cmd_selftest(full: bool, tol: &Tolerances64, tool: ToolInfo, json: bool) -> Result<i32, String> {
    let mut records = Vec::with_capacity(CRITERION_COUNT);
    let mut all_passed = true;
    for index in 1..=CRITERION_COUNT {
        let r = run_criterion(index, !full, tol);
        if !json {
            println!(
                "criterion {:2}/{} [{}]: {} ({:.3} s) - {}",
                r.index,
                CRITERION_COUNT,
                r.name,
                if r.passed { "PASS" } else { "FAIL" },
                r.seconds,
                r.detail
            );
        }
        all_passed &= r.passed;
        records.push(CriterionRecord {
            index: r.index,
            name: r.name.to_string(),
            passed: r.passed,
            detail: r.detail,
            seconds: r.seconds,
        });
    }
    if json {
        print!(
            "{}",
            to_json(&SelftestReport {
                tool,
                mode: if full { "full".into() } else { "quick".into() },
                passed: all_passed,
                criteria: records,
            })
        );
    } else if all_passed {
        println!("all {CRITERION_COUNT} criteria passed");
    } else {
        let failed: Vec<String> = records
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{} ({})", r.index, r.name))
            .collect();
        println!("FAILED: {}", failed.join(", "));
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_INPUT })
}
