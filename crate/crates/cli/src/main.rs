//! Command-line front end: counting, listing, classification, canonical
//! forms, oracle verification and benchmarking.
//!
//! stdout carries only the machine-readable result stream; timings and other
//! human-oriented extras go to stderr and can be silenced with `--quiet`.
//! Exit codes: 0 success, 1 usage or validation error, 2 verification
//! mismatch.

use clap::{Parser, Subcommand, ValueEnum};
use regmat::canonical::{self, canonical_form_with_budget, count_classes_with};
use regmat::codec::{format_matrix, parse_matrix, BinMatrix, MatrixStyle, RowTuple};
use regmat::oracle::{self, Grid, OracleBudget};
use regmat::semicanon::{self, EnumReport, RegularSpec};
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "regmat",
    version,
    about = "Generate and classify square binary matrices with fixed row and column sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Matrix output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::RowCodes)]
    format: Format,

    /// Worker threads for enumeration and classification.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Column budget for the canonical (m!) search.
    #[arg(long = "budget-m", global = true, default_value_t = canonical::DEFAULT_COLUMN_BUDGET)]
    budget_m: usize,

    /// Suppress the stderr summary lines.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count the semi-canonical members of the (n, k) family.
    SemiCount { n: usize, k: usize },
    /// List every semi-canonical member, ascending by row tuple.
    SemiList { n: usize, k: usize },
    /// Count equivalence classes and semi-canonical members.
    Classes {
        n: usize,
        k: usize,
        /// Also print one canonical representative per class.
        #[arg(long)]
        list_reps: bool,
    },
    /// Read one matrix from stdin (format auto-detected) and print its
    /// canonical form.
    CanonForm,
    /// Cross-check the fast pipeline against the brute-force oracle.
    Verify { n: usize, k: usize },
    /// Time the enumerator over a sweep of families, or a single (n, k).
    Bench {
        n: Option<usize>,
        k: Option<usize>,
        /// Include the long-running stretch families in the sweep.
        #[arg(long)]
        stretch: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    RowCodes,
    BitGrid,
    JsonLine,
}

impl From<Format> for MatrixStyle {
    fn from(f: Format) -> MatrixStyle {
        match f {
            Format::RowCodes => MatrixStyle::RowCodes,
            Format::BitGrid => MatrixStyle::BitGrid,
            Format::JsonLine => MatrixStyle::JsonLine,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut err = io::stderr().lock();
    let code = run(cli, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code)
}

fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> u8 {
    let result = match cli.command {
        Command::SemiCount { n, k } => semi_count(&cli, n, k, out, err),
        Command::SemiList { n, k } => semi_list(&cli, n, k, out, err),
        Command::Classes { n, k, list_reps } => classes(&cli, n, k, list_reps, out, err),
        Command::CanonForm => canon_form(&cli, out),
        Command::Verify { n, k } => verify(&cli, n, k, out, err),
        Command::Bench { n, k, stretch } => bench(&cli, n, k, stretch, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn summary(
    cli: &Cli,
    err: &mut impl Write,
    report: &EnumReport,
    started: Instant,
) -> io::Result<()> {
    if cli.quiet {
        return Ok(());
    }
    // Share of the raw candidate space that was actually checked in full;
    // the space routinely dwarfs u128, in which case the share is ~0.
    let fraction = match u128::try_from(&report.candidate_space) {
        Ok(cs) if cs > 0 => report.visited as f64 / cs as f64,
        _ => 0.0,
    };
    writeln!(
        err,
        "count={} visited={} pruned={} candidate_space={} visited_fraction={:.3e} elapsed_ms={}",
        report.count,
        report.visited,
        report.pruned,
        report.candidate_space,
        fraction,
        started.elapsed().as_millis()
    )
}

fn write_matrix(out: &mut impl Write, a: &BinMatrix, format: Format) -> io::Result<()> {
    writeln!(out, "{}", format_matrix(a, format.into()))?;
    if format == Format::BitGrid {
        writeln!(out)?; // blank separator between grid matrices
    }
    Ok(())
}

fn write_tuple(out: &mut impl Write, t: &RowTuple, format: Format) -> io::Result<()> {
    match format {
        // Fast path: a square row tuple prints as its codes.
        Format::RowCodes => {
            let mut first = true;
            for x in t.codes() {
                if !first {
                    write!(out, " ")?;
                }
                write!(out, "{x}")?;
                first = false;
            }
            writeln!(out)
        }
        _ => write_matrix(out, &t.to_matrix(), format),
    }
}

fn semi_count(
    cli: &Cli,
    n: usize,
    k: usize,
    out: &mut impl Write,
    err: &mut impl Write,
) -> regmat::Result<u8> {
    let spec = RegularSpec::new(n, k)?;
    let started = Instant::now();
    let report = semicanon::enumerate_semicanonical_parallel(&spec, cli.workers, |_| {});
    writeln!(out, "{}", report.count).ok();
    summary(cli, err, &report, started).ok();
    Ok(0)
}

fn semi_list(
    cli: &Cli,
    n: usize,
    k: usize,
    out: &mut impl Write,
    err: &mut impl Write,
) -> regmat::Result<u8> {
    let spec = RegularSpec::new(n, k)?;
    let started = Instant::now();
    let report = if cli.workers <= 1 {
        let mut failed = None;
        let report = semicanon::enumerate_semicanonical(&spec, |t| {
            if failed.is_none() {
                if let Err(e) = write_tuple(out, t, cli.format) {
                    failed = Some(e);
                }
            }
        });
        if let Some(e) = failed {
            return Err(regmat::Error::InvalidArgument(format!("write failed: {e}")));
        }
        report
    } else {
        let (tuples, report) = semicanon::semicanonical_tuples(&spec, cli.workers);
        for t in &tuples {
            write_tuple(out, t, cli.format)
                .map_err(|e| regmat::Error::InvalidArgument(format!("write failed: {e}")))?;
        }
        report
    };
    if cli.format == Format::RowCodes {
        writeln!(out, "# count: {}", report.count).ok();
    }
    summary(cli, err, &report, started).ok();
    Ok(0)
}

fn classes(
    cli: &Cli,
    n: usize,
    k: usize,
    list_reps: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> regmat::Result<u8> {
    let spec = RegularSpec::new(n, k)?;
    let started = Instant::now();
    let report = count_classes_with(&spec, cli.budget_m, list_reps, cli.workers)?;
    writeln!(out, "{} {}", report.classes, report.semi_canonical).ok();
    if let Some(reps) = &report.representatives {
        for t in reps {
            write_tuple(out, t, cli.format)
                .map_err(|e| regmat::Error::InvalidArgument(format!("write failed: {e}")))?;
        }
        if cli.format == Format::RowCodes {
            writeln!(out, "# representatives: {}", reps.len()).ok();
        }
    }
    if !cli.quiet {
        writeln!(
            err,
            "classes={} semi_canonical={} elapsed_ms={}",
            report.classes,
            report.semi_canonical,
            started.elapsed().as_millis()
        )
        .ok();
    }
    Ok(0)
}

/// Guess which of the three formats stdin holds. JSON opens with a brace,
/// comments only exist in the row-codes grammar, and a matrix whose lines
/// are pure 0/1 runs is a bit grid.
fn detect_style(text: &str) -> MatrixStyle {
    let mut bits_only = false;
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if t.starts_with('{') {
            return MatrixStyle::JsonLine;
        }
        if t.starts_with('#') {
            return MatrixStyle::RowCodes;
        }
        if t.chars().all(|c| c == '0' || c == '1') {
            bits_only = true;
            continue;
        }
        return MatrixStyle::RowCodes;
    }
    if bits_only {
        MatrixStyle::BitGrid
    } else {
        MatrixStyle::RowCodes
    }
}

fn canon_form(cli: &Cli, out: &mut impl Write) -> regmat::Result<u8> {
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| regmat::Error::InvalidArgument(format!("cannot read stdin: {e}")))?;
    let a = parse_matrix(&text, detect_style(&text))?;
    let canon = canonical_form_with_budget(&a, cli.budget_m)?;
    write_matrix(out, &canon, cli.format)
        .map_err(|e| regmat::Error::InvalidArgument(format!("write failed: {e}")))?;
    Ok(0)
}

fn verify(
    cli: &Cli,
    n: usize,
    k: usize,
    out: &mut impl Write,
    err: &mut impl Write,
) -> regmat::Result<u8> {
    let spec = RegularSpec::new(n, k)?;
    let budget = OracleBudget::default();
    if n > budget.max_enum_n {
        return Err(regmat::Error::OracleBudget {
            n,
            budget: budget.max_enum_n,
            task: "verification",
        });
    }
    let started = Instant::now();
    let mut failures = 0u32;
    let mut check = |out: &mut dyn Write, name: &str, ok: bool, detail: String| {
        if ok {
            writeln!(out, "PASS {name} n={n} k={k}").ok();
        } else {
            failures += 1;
            writeln!(out, "FAIL {name} n={n} k={k} {detail}").ok();
        }
    };

    // Fast enumeration against the oracle's filtered family.
    let mut fast: Vec<Vec<u64>> = Vec::new();
    semicanon::enumerate_semicanonical(&spec, |t| fast.push(t.codes().to_vec()));
    let mut slow: Vec<Vec<u64>> = Vec::new();
    let total = oracle::enumerate_regular(&spec, &budget, |g| {
        if g.is_semicanonical() {
            slow.push(g.row_codes());
        }
    })?;
    slow.sort();
    check(
        out,
        "semi-set",
        fast == slow,
        format!("fast {} members, oracle {}", fast.len(), slow.len()),
    );
    check(
        out,
        "semi-count",
        fast.len() == slow.len(),
        format!("expected={} got={}", slow.len(), fast.len()),
    );

    if n <= budget.max_orbit_n {
        let oracle_report = oracle::oracle_report(&spec, &budget)?;
        let fast_classes = count_classes_with(&spec, cli.budget_m, false, cli.workers)?;
        check(
            out,
            "class-count",
            fast_classes.classes == oracle_report.classes,
            format!(
                "expected={} got={}",
                oracle_report.classes, fast_classes.classes
            ),
        );

        // Canonical forms of the representatives against exhaustive minima.
        let mut canon_ok = true;
        for codes in &fast {
            let a = BinMatrix::from_rows(codes.clone(), n)?;
            let fast_min = canonical_form_with_budget(&a, cli.budget_m)?;
            let slow_min = oracle::orbit_row_min(&Grid::from_matrix(&a), &budget)?;
            if fast_min.codes() != slow_min {
                canon_ok = false;
            }
        }
        check(
            out,
            "canon-min",
            canon_ok,
            "divergence from exhaustive minimum".into(),
        );

        if !cli.quiet {
            writeln!(
                err,
                "family={} semi_canonical={} classes={} semi_share={}/{} elapsed_ms={}",
                oracle_report.total,
                oracle_report.semi_canonical,
                oracle_report.classes,
                oracle_report.ratio.0,
                oracle_report.ratio.1,
                started.elapsed().as_millis()
            )
            .ok();
        }
    } else {
        writeln!(
            out,
            "SKIP class-count n={n} k={k} (orbit budget is n<={})",
            budget.max_orbit_n
        )
        .ok();
        writeln!(
            out,
            "SKIP canon-min n={n} k={k} (orbit budget is n<={})",
            budget.max_orbit_n
        )
        .ok();
        if !cli.quiet {
            writeln!(
                err,
                "family={total} semi_canonical={} elapsed_ms={}",
                fast.len(),
                started.elapsed().as_millis()
            )
            .ok();
        }
    }

    Ok(if failures > 0 { 2 } else { 0 })
}

fn bench(
    cli: &Cli,
    n: Option<usize>,
    k: Option<usize>,
    stretch: bool,
    out: &mut impl Write,
) -> regmat::Result<u8> {
    let mut cells: Vec<(usize, usize)> = Vec::new();
    match (n, k) {
        (Some(n), Some(k)) => cells.push((n, k)),
        (None, None) => {
            cells.extend((2..=11).map(|n| (n, 2)));
            cells.extend((3..=8).map(|n| (n, 3)));
            cells.extend((4..=8).map(|n| (n, 4)));
            cells.extend((5..=8).map(|n| (n, 5)));
            if stretch {
                cells.extend([(12, 2), (13, 2), (9, 3), (9, 4), (9, 5)]);
            }
        }
        _ => {
            return Err(regmat::Error::InvalidArgument(
                "bench takes either both n and k or neither".into(),
            ))
        }
    }

    writeln!(out, "# n k count elapsed_ms").ok();
    for (n, k) in cells {
        let spec = RegularSpec::new(n, k)?;
        let started = Instant::now();
        let count = semicanon::semicanonical_count_parallel(&spec, cli.workers);
        writeln!(out, "{n} {k} {count} {}", started.elapsed().as_millis()).ok();
        out.flush().ok();
    }
    Ok(0)
}
