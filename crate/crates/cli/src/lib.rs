//! The `steinberg` command line front-end.
//!
//! Everything writes to caller-supplied sinks so the integration tests can run
//! commands in-process. Exit codes: 0 success, 1 usage, 2 verification
//! mismatch, 3 internal arithmetic inconsistency.

mod args;
mod record;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::error::ErrorKind;
use clap::Parser;
use num_bigint::BigUint;
use rayon::prelude::*;
use steinberg_core::asymptotics::{asymptotic_report, schedule_k, AsymptoticReport};
use steinberg_core::brauer::{torus_ring, RegularClass};
use steinberg_core::{
    conjugacy_class_audit, psi_delta, psi_st, regular_classes, CycInt, Error, OracleContext,
    PrimePower,
};

pub use args::{Cli, Command, Format, MethodArg};
pub use record::{compute_record, write_csv, write_json, Methods, OutputRecord, HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Mismatch(String),
    Internal(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Internal(_) | CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    let result = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                execute(&cli, &mut w, stderr).and_then(|()| w.flush().map_err(CliError::Io))
            }
            Err(e) => Err(CliError::Usage(format!("cannot create {}: {e}", path.display()))),
        },
        None => execute(&cli, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

fn prime_power(q: u64) -> CliResult<PrimePower> {
    PrimePower::from_q(q).map_err(|e| CliError::Usage(e.to_string()))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Dim {
            k,
            q,
            oracle,
            format,
        } => {
            let pp = prime_power(*q)?;
            let methods = Methods {
                general: true,
                closed: true,
                oracle: *oracle,
                inner_product: false,
            };
            let ctx = oracle.then(|| OracleContext::new(pp));
            let rec = compute_record(k, pp, methods, ctx.as_ref())?;
            write_records(out, std::slice::from_ref(&rec), *format, cli.timings)?;
            if !rec.agree {
                return Err(CliError::Mismatch(format!("methods disagree at k = {k}")));
            }
            Ok(())
        }
        Command::Table {
            sweep,
            oracle,
            format,
        } => {
            let pp = prime_power(sweep.q)?;
            let methods = Methods {
                general: true,
                closed: true,
                oracle: *oracle,
                inner_product: false,
            };
            let records = sweep_records(pp, sweep.kmax, methods, cli.jobs)?;
            write_records(out, &records, *format, cli.timings)?;
            match records.iter().find(|r| !r.agree) {
                Some(r) => Err(CliError::Mismatch(format!("methods disagree at k = {}", r.k))),
                None => Ok(()),
            }
        }
        Command::Verify { sweep, methods } => {
            let pp = prime_power(sweep.q)?;
            verify(out, pp, sweep.kmax, methods, cli.jobs)
        }
        Command::CharTable { q } => {
            let pp = prime_power(*q)?;
            write_char_table(out, pp)?;
            Ok(())
        }
        Command::Asymptotics { q, schedule } => {
            let pp = prime_power(*q)?;
            let ks = parse_schedule(pp, schedule)?;
            let reports = run_parallel(cli.jobs, &ks, |k| asymptotic_report(k, pp))?;
            write_asymptotics(out, &reports)?;
            let outside = reports.iter().filter(|r| !r.within_envelope()).count();
            if outside > 0 {
                return Err(CliError::Mismatch(format!("{outside} reports outside the envelope")));
            }
            Ok(())
        }
        Command::Classes { q } => {
            let pp = prime_power(*q)?;
            let audit = conjugacy_class_audit(&OracleContext::new(pp))?;
            write!(out, "{audit}")?;
            writeln!(
                out,
                "  unipotent representatives (c) * [[1, z], [0, 1]] cover their classes: {}",
                audit.literal_d_covers
            )?;
            if !audit.passed() {
                let _ = writeln!(err, "{} audit failures", audit.failures.len());
                return Err(CliError::Mismatch(format!("class audit failed for q = {q}")));
            }
            Ok(())
        }
    }
}

fn run_parallel<T, F>(jobs: u16, ks: &[BigUint], f: F) -> CliResult<Vec<T>>
where
    T: Send,
    F: Fn(&BigUint) -> steinberg_core::Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let results: Vec<_> = pool.install(|| ks.par_iter().map(&f).collect());
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

/// Records for `k = 0..=kmax`, in order of `k`.
pub fn sweep_records(
    pp: PrimePower,
    kmax: u64,
    methods: Methods,
    jobs: u16,
) -> CliResult<Vec<OutputRecord>> {
    let ctx = methods.oracle.then(|| OracleContext::new(pp));
    let ks: Vec<BigUint> = (0..=kmax).map(BigUint::from).collect();
    run_parallel(jobs, &ks, |k| compute_record(k, pp, methods, ctx.as_ref()))
}

fn write_records(
    out: &mut dyn Write,
    records: &[OutputRecord],
    format: Format,
    timings: bool,
) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(out, records, timings),
        Format::Json => write_json(out, records, timings),
    }
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::General => "general",
        MethodArg::Closed => "closed",
        MethodArg::Oracle => "oracle",
        MethodArg::InnerProduct => "inner-product",
    }
}

fn verify(
    out: &mut dyn Write,
    pp: PrimePower,
    kmax: u64,
    selected: &[MethodArg],
    jobs: u16,
) -> CliResult {
    let methods = Methods {
        general: selected.contains(&MethodArg::General),
        closed: selected.contains(&MethodArg::Closed),
        oracle: selected.contains(&MethodArg::Oracle),
        inner_product: selected.contains(&MethodArg::InnerProduct),
    };
    let records = sweep_records(pp, kmax, methods, jobs)?;
    let names: Vec<&str> = selected.iter().map(|&m| method_name(m)).collect();
    writeln!(out, "verify q={} k=0..={kmax} methods={}", pp.q(), names.join(","))?;
    let total = records.len();
    for &m in selected {
        let computed = records
            .iter()
            .filter(|r| match m {
                MethodArg::General => r.d_general.is_some(),
                MethodArg::Closed => r.d_closed.is_some(),
                MethodArg::Oracle => r.d_oracle.is_some(),
                MethodArg::InnerProduct => r.d_inner_product.is_some(),
            })
            .count();
        let reason = match m {
            MethodArg::Closed => "unsupported",
            MethodArg::Oracle => "guarded",
            _ => "skipped",
        };
        if computed == total {
            writeln!(out, "{}: {computed} computed", method_name(m))?;
        } else {
            writeln!(out, "{}: {computed} computed, {} {reason}", method_name(m), total - computed)?;
        }
    }
    let mismatches: Vec<&OutputRecord> = records.iter().filter(|r| !r.agree).collect();
    writeln!(out, "mismatches: {}", mismatches.len())?;
    let show = |v: &Option<BigUint>| v.as_ref().map_or("-".to_string(), ToString::to_string);
    for r in &mismatches {
        writeln!(
            out,
            "  k={} general={} closed={} oracle={} inner-product={}",
            r.k,
            show(&r.d_general),
            show(&r.d_closed),
            show(&r.d_oracle),
            show(&r.d_inner_product)
        )?;
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{} mismatches", mismatches.len())))
    }
}

/// One line of the character table.
#[derive(Clone, Debug, PartialEq)]
pub struct CharEntry {
    pub class: RegularClass,
    pub character: String,
    pub value: CycInt,
}

/// `psi_{Delta_i}` for `i = 1..q-1` and `psi_st` on every regular class.
pub fn char_table(pp: PrimePower) -> Vec<CharEntry> {
    let mut rows = Vec::new();
    for cls in regular_classes(pp) {
        for i in 1..pp.q() {
            rows.push(CharEntry {
                class: cls,
                character: format!("Delta_{i}"),
                value: psi_delta(i, &cls),
            });
        }
        let ring = torus_ring(cls.torus_order);
        rows.push(CharEntry {
            class: cls,
            character: "st".into(),
            value: CycInt::from_integer(&ring, psi_st(pp, &cls)),
        });
    }
    rows
}

fn fixed12(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

pub fn write_char_table(out: &mut dyn Write, pp: PrimePower) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| io::Error::other(e);
    w.write_record(["class", "kind", "size", "character", "exact", "numeric"])
        .map_err(io_err)?;
    for e in char_table(pp) {
        w.write_record([
            e.class.label(),
            e.class.kind.to_string(),
            e.class.size.to_string(),
            e.character,
            e.value.to_string(),
            fixed12(e.value.numeric_embed().re),
        ])
        .map_err(io_err)?;
    }
    w.flush()
}

/// `mass:M1,M2,..` or `k:K1,K2,..`.
pub fn parse_schedule(pp: PrimePower, spec: &str) -> CliResult<Vec<BigUint>> {
    let bad = || CliError::Usage(format!("bad schedule `{spec}`; expected mass:M,.. or k:K,.."));
    let (kind, list) = spec.split_once(':').ok_or_else(bad)?;
    let items = list.split(',').map(str::trim).filter(|s| !s.is_empty());
    match kind {
        "mass" => items
            .map(|s| s.parse::<u32>().map(|m| schedule_k(pp, m)).map_err(|_| bad()))
            .collect(),
        "k" => items.map(|s| s.parse::<BigUint>().map_err(|_| bad())).collect(),
        _ => Err(bad()),
    }
}

pub fn write_asymptotics(out: &mut dyn Write, reports: &[AsymptoticReport]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| io::Error::other(e);
    w.write_record([
        "k", "q", "M", "dim_Lk", "d", "ratio", "target", "deviation", "envelope", "within",
    ])
    .map_err(io_err)?;
    for r in reports {
        w.write_record([
            r.k.to_string(),
            r.q.to_string(),
            r.m.to_string(),
            r.dim.to_string(),
            r.d.to_string(),
            format!("{:e}", r.ratio),
            r.target.to_string(),
            format!("{:e}", r.deviation),
            format!("{:e}", r.envelope),
            r.within_envelope().to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush()
}
