//! Command-line interface: exact series, census tables, and self-checks.
//!
//! Four subcommands, all with deterministic, byte-identical output for
//! identical arguments:
//!
//! * `series --class <id> --qmax <m> [--tmax <n>] [--format text|json|csv]`
//!   prints the half-perimeter/area generating function of one class.  The
//!   id may be a base family (`p`, `p0`, `ps`, `t`, `t0`, `ts`, `p1`, `d`,
//!   `c`, `y1`, `y2`, `ds`, `e1`, `e2`, `e3`, `e`, `a1`, `a2`, `a3`, `a`),
//!   a fixed-point class (`fr`, `fr2`, `fr2_even`, `fr2_odd`, `fv`, `fh`,
//!   `fhv`, `fd1`, `fd2`, `fd1d2`, `fd1d2_even`, `fd1d2_odd`), or an orbit
//!   series (`rotation`, `congruence`, `asym`).  Base families are computed
//!   in their natural variables, auxiliary markers are evaluated at 1, and
//!   width and height both map to `t`, so every class is reported in the
//!   common `(t, q)` presentation.  `--tmax` keeps only terms whose
//!   `t`-exponent is at most `n`; for `p0` and `t0`, which admit unboundedly
//!   many empty rows per area, `--tmax` is mandatory (it bounds the height,
//!   which provably drops nothing below the `t` filter).
//! * `table --by area|perimeter --max <n> [--source formula|oracle]` prints
//!   the ten-column symmetry census as CSV — one row per area `1..=n` or
//!   per even perimeter `4..=n` — either from the generating functions
//!   (`formula`) or from the brute-force enumerator (`oracle`).  The two
//!   sources agree byte for byte wherever the enumerator's size bounds
//!   allow.
//! * `verify [--level quick|full]` runs the dual-route identity suite and
//!   the formula-versus-enumeration cross-checks, printing one `ok`/`FAIL`
//!   line per check.  The first differing coefficient of a failed
//!   comparison is reported as `(series, monomial, expected, got)`.
//! * `version` prints the crate name and version.
//!
//! Exit codes: `0` on success, `1` when `verify` finds any failure, `2` on
//! usage errors (unknown class, missing `--tmax` for `p0`/`t0`, odd
//! perimeter, malformed arguments); usage messages go to the error stream.
//! Set `POLYSYM_THREADS` to cap the enumerator's parallelism.
//!
//! The `series` CSV format is defined here: the header is the series'
//! variables in canonical order followed by `coeff` (for the `(t, q)`
//! presentation: `t,q,coeff`), then one row per term in ascending canonical
//! order with decimal exponents and coefficient.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classes::ClassId;
use crate::oracle::{self, CensusBy, CensusRow};
use crate::qseries::fmt_impl::monomial_string;
use crate::qseries::Image;
use crate::qseries::Var::{self, S, T, U, V, W, X, Y, Z};
use crate::symmetry::{ParityBranch, SymClassId};
use crate::{classes, orbits, symmetry};
use crate::{Coeff, Error, Result, Series, TruncationSpec};

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

/// Exact convex-polyomino series, symmetry censuses, and self-verification.
#[derive(Parser, Debug)]
#[command(name = "polysym", version, about)]
pub struct Cli {
    /// The subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// One parsed subcommand.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a class's half-perimeter/area series.
    Series {
        /// Class id: a base family, a fixed-point class, or one of the
        /// orbit series `rotation`, `congruence`, `asym`.
        #[arg(long)]
        class: String,
        /// Keep only terms with `t`-exponent at most this (required for the
        /// empty-row families `p0` and `t0`).
        #[arg(long)]
        tmax: Option<u32>,
        /// Truncation order in the area variable `q` (at least 1).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        qmax: u32,
        /// Output format.
        #[arg(long, value_enum, default_value_t = SeriesFormat::Text)]
        format: SeriesFormat,
    },
    /// Print the ten-column symmetry census as CSV.
    Table {
        /// Group rows by area or by perimeter.
        #[arg(long, value_enum)]
        by: TableBy,
        /// Largest size to include: an area, or an (even) perimeter.
        #[arg(long)]
        max: u32,
        /// Compute rows from formulas or from the brute-force enumerator.
        #[arg(long, value_enum, default_value_t = TableSource::Formula)]
        source: TableSource,
    },
    /// Run the self-verification suite.
    Verify {
        /// Depth of the suite.
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
    },
    /// Print the crate name and version.
    Version,
}

/// Output format of the `series` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesFormat {
    /// Human-readable sum of monomials, ascending canonical order.
    Text,
    /// The canonical JSON form (round-trips through the series parser).
    Json,
    /// One `exponents…,coeff` row per term.
    Csv,
}

/// Size parameter of the `table` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableBy {
    /// One row per area `1..=max`.
    Area,
    /// One row per even perimeter `4..=max`.
    Perimeter,
}

/// Where `table` rows come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableSource {
    /// Generating functions: fixed-point series plus orbit averages.
    Formula,
    /// The brute-force enumerator with per-shape stabilizers.
    Oracle,
}

/// Depth of the `verify` suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    /// Dual-route identities at `qmax` 10; enumeration cross-checks to
    /// area 8.
    Quick,
    /// Dual-route identities at `qmax` 14 with extended index ranges;
    /// enumeration cross-checks to area 10 plus the perimeter-20 census.
    Full,
}

impl From<TableBy> for CensusBy {
    fn from(by: TableBy) -> CensusBy {
        match by {
            TableBy::Area => CensusBy::Area,
            TableBy::Perimeter => CensusBy::Perimeter,
        }
    }
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Parses the process arguments and runs; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Clap prints help/version to stdout with code 0 and usage
            // errors to stderr with code 2.
            let code = err.exit_code();
            let _ = err.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    run(cli.command, &mut stdout)
}

/// Runs one parsed subcommand, writing regular output to `out`; returns the
/// exit code (0 success, 1 verification failure, 2 usage error).
pub fn run(command: Command, out: &mut dyn Write) -> i32 {
    match command {
        Command::Series {
            class,
            tmax,
            qmax,
            format,
        } => as_usage_exit(series_command(&class, tmax, qmax, format, out)),
        Command::Table { by, max, source } => as_usage_exit(table_command(by, max, source, out)),
        Command::Verify { level } => verify_command(level, out),
        Command::Version => {
            let _ = writeln!(
                out,
                "{} {}",
                env!("CARGO_PKG_NAME"),
                env!("CARGO_PKG_VERSION")
            );
            0
        }
    }
}

/// Maps a command result to an exit code, reporting errors as usage errors.
fn as_usage_exit(res: Result<()>) -> i32 {
    match res {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn io_error(err: std::io::Error) -> Error {
    Error::Malformed(format!("writing output: {err}"))
}

// ---------------------------------------------------------------------------
// `series`
// ---------------------------------------------------------------------------

/// A class id accepted by `series --class`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AnyClass {
    Base(ClassId),
    Sym(SymClassId),
    Rotation,
    Congruence,
    Asym,
}

fn parse_class(text: &str) -> Result<AnyClass> {
    match text {
        "rotation" => return Ok(AnyClass::Rotation),
        "congruence" => return Ok(AnyClass::Congruence),
        "asym" => return Ok(AnyClass::Asym),
        _ => {}
    }
    if let Ok(id) = text.parse::<ClassId>() {
        return Ok(AnyClass::Base(id));
    }
    if let Ok(id) = text.parse::<SymClassId>() {
        return Ok(AnyClass::Sym(id));
    }
    Err(Error::UnknownClass(text.to_string()))
}

fn series_command(
    class: &str,
    tmax: Option<u32>,
    qmax: u32,
    format: SeriesFormat,
    out: &mut dyn Write,
) -> Result<()> {
    let class = parse_class(class)?;
    let series = tq_series(class, qmax, tmax)?;
    let series = match tmax {
        Some(n) => filter_t_degree(&series, n)?,
        None => series,
    };
    render_series(&series, format, out)
}

/// The `(t, q)` presentation of any class at truncation order `qmax`.
fn tq_series(class: AnyClass, qmax: u32, tmax: Option<u32>) -> Result<Series> {
    let tspec = TruncationSpec::new(qmax, &[T]);
    match class {
        AnyClass::Sym(id) => symmetry::series_sym(id, &tspec),
        AnyClass::Rotation => orbits::series_rotation_type(&tspec),
        AnyClass::Congruence => orbits::series_congruence_type(&tspec),
        AnyClass::Asym => orbits::series_asymmetric(&tspec),
        AnyClass::Base(id) => {
            let native = base_native_spec(id, qmax, tmax)?;
            let series = crate::series_for(id, &native)?;
            specialize_tq(&series, qmax)
        }
    }
}

/// The natural truncation spec of a base family: its marker variables over
/// `q`, with the height capped for the two families that admit empty rows.
fn base_native_spec(id: ClassId, qmax: u32, tmax: Option<u32>) -> Result<TruncationSpec> {
    use ClassId::*;
    Ok(match id {
        P0 | T0 => {
            let Some(cap) = tmax else {
                return Err(Error::Malformed(format!(
                    "class {id} has unboundedly many shapes per area (empty rows); \
                     pass --tmax to bound the height"
                )));
            };
            TruncationSpec::new(qmax, &[X, Y]).with_cap(Y, cap)
        }
        P1 | Ts => TruncationSpec::new(qmax, &[U, X, Y]),
        D => TruncationSpec::new(qmax, &[S, X, Y]),
        Y1 | Y2 | Ds => TruncationSpec::new(qmax, &[X, Y, Z]),
        E1 | E2 | E3 | Eall | A1 | A2 | A3 | Aall => TruncationSpec::new(qmax, &[X, Z, W]),
        P | Ps | T | C => TruncationSpec::new(qmax, &[X, Y]),
    })
}

/// Folds every auxiliary marker at 1, then maps both width and height to the
/// half-perimeter variable `t`.
fn specialize_tq(series: &Series, qmax: u32) -> Result<Series> {
    let mut cur = series.clone();
    for v in [S, U, V, Z, W] {
        if cur.spec().contains_var(v) {
            let reduced = cur.spec().without_var(v);
            cur = cur.eval_at_one(v)?.retrunc(&reduced)?;
        }
    }
    let mut images = Vec::new();
    for v in [X, Y] {
        if cur.spec().contains_var(v) {
            images.push(Image::map(v, &[(T, 1)]));
        }
    }
    cur.substitute(&images, &TruncationSpec::new(qmax, &[T]), false)
}

/// Drops terms whose `t`-exponent exceeds `n` — a pure output filter.
fn filter_t_degree(series: &Series, n: u32) -> Result<Series> {
    let kept = series
        .iter_terms()
        .filter(|(e, _)| e.get(T) <= n as i32)
        .map(|(e, c)| (*e, c.clone()));
    Series::from_terms(series.spec(), kept)
}

fn render_series(series: &Series, format: SeriesFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        SeriesFormat::Text => writeln!(out, "{series}").map_err(io_error),
        SeriesFormat::Json => writeln!(out, "{}", series.to_json()).map_err(io_error),
        SeriesFormat::Csv => {
            let vars: Vec<Var> = series.spec().vars().collect();
            let header: Vec<&str> = vars.iter().map(|v| v.name()).collect();
            writeln!(out, "{},coeff", header.join(",")).map_err(io_error)?;
            for (e, c) in series.sorted_terms() {
                let mut line = String::new();
                for v in &vars {
                    line.push_str(&e.get(*v).to_string());
                    line.push(',');
                }
                line.push_str(&c.to_string());
                writeln!(out, "{line}").map_err(io_error)?;
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// `table`
// ---------------------------------------------------------------------------

fn table_command(by: TableBy, max: u32, source: TableSource, out: &mut dyn Write) -> Result<()> {
    if by == TableBy::Perimeter && max % 2 != 0 {
        return Err(Error::Malformed(format!(
            "polyomino perimeters are even; got --max {max}"
        )));
    }
    let rows = match source {
        TableSource::Oracle => oracle::census(by.into(), max)?,
        TableSource::Formula => formula_census(by.into(), max)?,
    };
    write!(out, "{}", oracle::census_csv(&rows)).map_err(io_error)
}

/// The ten-column census computed from generating functions alone: fixed
/// counts from the fixed-point series, orbit counts from their averaged and
/// Möbius combinations.  Row layout identical to [`oracle::census`], so the
/// two routes render to byte-identical CSV when they agree.
pub fn formula_census(by: CensusBy, max: u32) -> Result<Vec<CensusRow>> {
    let spec = match by {
        CensusBy::Area => TruncationSpec::new(max, &[T]),
        CensusBy::Perimeter => {
            let mh = max / 2;
            if mh < 2 {
                return Ok(Vec::new());
            }
            // A shape of half-perimeter s has area at most floor(s/2)*ceil(s/2).
            TruncationSpec::new((mh / 2) * (mh - mh / 2), &[T]).with_cap(T, mh)
        }
    };
    let columns: [Series; 10] = [
        orbits::series_convex_tq(&spec)?,
        symmetry::series_sym(SymClassId::Fr, &spec)?,
        symmetry::series_sym(SymClassId::Fr2, &spec)?,
        orbits::series_rotation_type(&spec)?,
        symmetry::series_sym(SymClassId::Fv, &spec)?,
        symmetry::series_sym(SymClassId::Fd1, &spec)?,
        orbits::series_congruence_type(&spec)?,
        symmetry::series_sym(SymClassId::Fhv, &spec)?,
        symmetry::series_sym(SymClassId::Fd1d2, &spec)?,
        orbits::series_asymmetric(&spec)?,
    ];
    let sizes: Vec<u32> = match by {
        CensusBy::Area => (1..=max).collect(),
        CensusBy::Perimeter => (2..=max / 2).map(|h| 2 * h).collect(),
    };
    sizes
        .into_iter()
        .map(|size| {
            let mut cells = [0i64; 10];
            for (cell, series) in cells.iter_mut().zip(&columns) {
                let c = match by {
                    CensusBy::Area => series.coeff_sum_at_q(size),
                    CensusBy::Perimeter => {
                        coeff_total(&series.coeff_extract(T, (size / 2) as i32)?)
                    }
                };
                *cell = coeff_to_i64(&c)?;
            }
            Ok(CensusRow {
                size,
                total: cells[0],
                quarter_turn: cells[1],
                half_turn: cells[2],
                rotation_orbits: cells[3],
                axial: cells[4],
                diagonal: cells[5],
                congruence_orbits: cells[6],
                both_axial: cells[7],
                both_diagonal: cells[8],
                asymmetric: cells[9],
            })
        })
        .collect()
}

fn coeff_total(series: &Series) -> Coeff {
    series
        .iter_terms()
        .fold(Coeff::from(0), |acc, (_, c)| acc + c)
}

fn coeff_to_i64(c: &Coeff) -> Result<i64> {
    use num_traits::ToPrimitive;
    c.to_i64()
        .ok_or_else(|| Error::Malformed(format!("census cell {c} does not fit in 64 bits")))
}

// ---------------------------------------------------------------------------
// `verify`
// ---------------------------------------------------------------------------

/// The first differing coefficient of a failed comparison.
struct MismatchReport {
    series: String,
    monomial: String,
    expected: String,
    got: String,
}

/// Compares two series; on disagreement reports the canonically first
/// monomial where they differ, with `reference`'s value as `expected`.
fn first_diff(label: &str, reference: &Series, candidate: &Series) -> Option<MismatchReport> {
    let diff = reference - candidate;
    let (e, _) = diff.sorted_terms().into_iter().next()?;
    Some(MismatchReport {
        series: label.to_string(),
        monomial: monomial_string(&e),
        expected: reference.coeff_exp(&e).to_string(),
        got: candidate.coeff_exp(&e).to_string(),
    })
}

struct Reporter<'a> {
    out: &'a mut dyn Write,
    failures: u32,
}

impl Reporter<'_> {
    fn record(&mut self, name: &str, res: Result<Option<MismatchReport>>) {
        let line = match res {
            Ok(None) => format!("ok {name}"),
            Ok(Some(m)) => {
                self.failures += 1;
                format!(
                    "FAIL {name}: ({}, {}, {}, {})",
                    m.series, m.monomial, m.expected, m.got
                )
            }
            Err(err) => {
                self.failures += 1;
                format!("FAIL {name}: {err}")
            }
        };
        let _ = writeln!(self.out, "{line}");
    }
}

fn verify_command(level: VerifyLevel, out: &mut dyn Write) -> i32 {
    let full = level == VerifyLevel::Full;
    let qd = if full { 14 } else { 10 };
    let amax = if full { 10 } else { 8 };

    let mut r = Reporter { out, failures: 0 };
    r.record("stack-numerator-routes", check_vn(qd));
    r.record("bounded-height-stack-routes", check_t0n(qd));
    r.record("shifted-stack-routes", check_ts(qd));
    r.record("staircase-source-sum", check_y1(qd));
    r.record("wedge-stack-corner-routes", check_e1(qd));
    r.record("sharp-wedge-corner-routes", check_a1(qd));
    r.record("padded-partition-routes", check_dm(if full { 12 } else { 10 }));
    r.record(
        "quarter-turn-slice-routes",
        check_a2m(if full { 12 } else { 10 }),
    );
    r.record(
        "double-mirror-slice-routes",
        check_f(if full { 14 } else { 12 }),
    );
    r.record("quarter-turn-series-routes", check_fr(qd));
    r.record("base-families-vs-enumeration", check_base_families(amax));
    r.record("symmetry-classes-vs-enumeration", check_sym_classes(amax));
    r.record(
        "area-census-formula-vs-enumeration",
        check_census(CensusBy::Area, amax),
    );
    r.record("orbit-averages-vs-direct-counts", check_direct_orbits(amax));
    if full {
        r.record(
            "perimeter-census-formula-vs-enumeration",
            check_census(CensusBy::Perimeter, 20),
        );
    }
    let failures = r.failures;
    if failures == 0 {
        let _ = writeln!(out, "verify: all checks passed");
        0
    } else {
        let _ = writeln!(out, "verify: {failures} check(s) failed");
        1
    }
}

fn check_vn(qd: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(qd, &[X]);
    for n in 0..=10 {
        let rec = classes::poly_vn(n, &sp)?;
        let closed = classes::poly_vn_closed(n, &sp)?;
        if let Some(m) = first_diff(&format!("poly_vn({n})"), &rec, &closed) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn check_t0n(qd: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(qd, &[X]);
    for n in 0..=5 {
        let quotient = classes::series_t0n(n, &sp)?;
        let summed = classes::series_t0n_sum(n, &sp)?;
        if let Some(m) = first_diff(&format!("series_t0n({n})"), &quotient, &summed) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn check_ts(qd: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(qd, &[U, X, Y]);
    let iter = classes::series_ts_iter(&sp)?;
    let closed = classes::series_ts_closed(&sp)?;
    Ok(first_diff("series_ts", &iter, &closed))
}

fn check_y1(qd: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(qd, &[X, Y, Z]);
    let summed = symmetry::series_y1(&sp.with_var(V))?
        .eval_at_one(V)?
        .retrunc(&sp)?;
    let closed = symmetry::series_y1_closed(&sp)?;
    Ok(first_diff("series_y1 at v=1", &summed, &closed))
}

fn check_e1(qd: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(qd, &[X, Z, W]);
    let summed = symmetry::series_e1(&sp)?;
    let iterated = symmetry::series_e1_iter(&sp)?;
    Ok(first_diff("series_e1", &summed, &iterated))
}

fn check_a1(qd: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(qd, &[X, Z, W]);
    let summed = symmetry::series_a1(&sp)?;
    let iterated = symmetry::series_a1_iter(&sp)?;
    Ok(first_diff("series_a1", &summed, &iterated))
}

fn check_dm(mmax: u32) -> Result<Option<MismatchReport>> {
    // Degree of the m-th polynomial is floor(m^2/4); budget for them all.
    let sp = TruncationSpec::new(mmax * mmax / 4 + 1, &[]);
    for m in 0..=mmax {
        let closed = symmetry::ferrers_dm(m, &sp)?;
        for (tag, rec) in [
            ("a", symmetry::ferrers_dm_rec_a(m, &sp)?),
            ("b", symmetry::ferrers_dm_rec_b(m, &sp)?),
        ] {
            if let Some(mm) = first_diff(&format!("ferrers_dm({m}) rec ({tag})"), &closed, &rec) {
                return Ok(Some(mm));
            }
        }
    }
    Ok(None)
}

fn check_a2m(mmax: u32) -> Result<Option<MismatchReport>> {
    // The m-th polynomial tops out at q^{m^2} (the bare square).
    let sp = TruncationSpec::new(mmax * mmax + 1, &[]);
    for m in 0..=mmax {
        let closed = symmetry::poly_a2m(m, &sp)?;
        for (tag, rec) in [
            ("a", symmetry::poly_a2m_rec_a(m, &sp)?),
            ("b", symmetry::poly_a2m_rec_b(m, &sp)?),
        ] {
            if let Some(mm) = first_diff(&format!("poly_a2m({m}) rec ({tag})"), &closed, &rec) {
                return Ok(Some(mm));
            }
        }
    }
    Ok(None)
}

fn check_f(nmax: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(60, &[]);
    for n in 1..=nmax {
        for branch in [
            ParityBranch::Ee,
            ParityBranch::Eo,
            ParityBranch::Oe,
            ParityBranch::Oo,
        ] {
            let closed = symmetry::poly_f(branch, n, &sp)?;
            let rec = symmetry::poly_f_rec(branch, n, &sp)?;
            if let Some(m) = first_diff(&format!("poly_f({branch:?}, {n})"), &closed, &rec) {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

fn check_fr(qd: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(qd, &[T]);
    let kernel = symmetry::series_fr(&sp)?;
    let stacks = symmetry::series_fr_stacks(&sp)?;
    Ok(first_diff("series_fr", &kernel, &stacks))
}

fn check_base_families(amax: u32) -> Result<Option<MismatchReport>> {
    for id in ClassId::ALL {
        let sp = base_native_spec(id, amax, Some(amax))?;
        let enumerated = oracle::oracle_series(id, &sp)?;
        let formula = crate::series_for(id, &sp)?;
        if let Some(m) = first_diff(&id.to_string(), &enumerated, &formula) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn check_sym_classes(amax: u32) -> Result<Option<MismatchReport>> {
    let sp = TruncationSpec::new(amax, &[T]);
    for id in SymClassId::ALL {
        let enumerated = oracle::oracle_series(id, &sp)?;
        let formula = symmetry::series_sym(id, &sp)?;
        if let Some(m) = first_diff(id.name(), &enumerated, &formula) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn check_census(by: CensusBy, max: u32) -> Result<Option<MismatchReport>> {
    let by_oracle = oracle::census(by, max)?;
    let by_formula = formula_census(by, max)?;
    let colnames = [
        "id",
        "r",
        "r2",
        "rotation",
        "h_v",
        "d1_d2",
        "congruence",
        "hv",
        "d1d2",
        "asym",
    ];
    let kind = match by {
        CensusBy::Area => "area",
        CensusBy::Perimeter => "perimeter",
    };
    for (reference, candidate) in by_oracle.iter().zip(&by_formula) {
        debug_assert_eq!(reference.size, candidate.size);
        let (rc, cc) = (reference.columns(), candidate.columns());
        for k in 0..10 {
            if rc[k] != cc[k] {
                return Ok(Some(MismatchReport {
                    series: format!("{kind} census"),
                    monomial: format!("{kind}={},{}", reference.size, colnames[k]),
                    expected: rc[k].to_string(),
                    got: cc[k].to_string(),
                }));
            }
        }
    }
    Ok(None)
}

fn check_direct_orbits(amax: u32) -> Result<Option<MismatchReport>> {
    let rows = oracle::census(CensusBy::Area, amax)?;
    let direct = oracle::direct_orbit_counts(CensusBy::Area, amax)?;
    for (row, (size, rot, cong)) in rows.iter().zip(direct) {
        debug_assert_eq!(row.size, size);
        for (label, averaged, counted) in [
            ("rotation orbits", row.rotation_orbits, rot),
            ("congruence orbits", row.congruence_orbits, cong),
        ] {
            if averaged != counted {
                return Ok(Some(MismatchReport {
                    series: label.to_string(),
                    monomial: format!("area={size}"),
                    expected: counted.to_string(),
                    got: averaged.to_string(),
                }));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
