//! `nilquad`: group arithmetic, Sq-calculus tables, homotopy tables, oracle
//! sweeps and bype files from the command line.
//!
//! Exit status: 0 success, 2 verification mismatch or negative check, 3 input
//! error.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilquad::abelian::{binary_functor, BinaryKind, CanonicalGroup};
use nilquad::bype::schema::{self, Document};
use nilquad::bype::{
    find_morphism_witness, fmodule_check_morphism, identity_hom, stabilize_bype, theta, theta_inverse, validate_bype,
    GradedHom, SearchConfig, Witness,
};
use nilquad::chaincx::{moore_complex, Degree};
use nilquad::doldkan::m_sharp_oracle;
use nilquad::expr::{format_group, parse_group_expr};
use nilquad::quadratic::{classical, ClassicalKind, QuadraticZModule};
use nilquad::sqcalc::{bype_functor, sq_nm, sq_nm_chain, BypeKind, SqTable, TableFormat};
use nilquad::tables::{pi_lambda2_sphere, pi_lie_p, pi_moore, pi_sphere, Category, HomotopyQuery};
use nilquad::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nilquad", version, about = "Quadratic functors and 2-nilpotent homotopy groups, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Abelian group expressions: `0`, `Z`, `Z/d`, `Z^r`, joined by `+`.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Classical, binary and bype functors.
    #[command(subcommand)]
    Functor(FunctorCmd),
    /// The groups `Sq_{n,m}(A, D)`.
    #[command(subcommand)]
    Sq(SqCmd),
    /// Homotopy tables. `(n, k)` means `π_{n+k+1}(S^{n+1})`, stems counted
    /// in the group-category convention.
    #[command(subcommand)]
    Pi(PiCmd),
    /// Oracle sweeps with a JSON report.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Bype, stable bype, F-module and graded-hom files.
    #[command(subcommand)]
    Bype(BypeCmd),
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Print the invariant-factor form.
    Normalize { expr: String },
}

#[derive(Subcommand)]
enum FunctorCmd {
    /// `--kind` is one of lambda2, gamma, sp2, tensor_square, tensor_z2,
    /// omega, r (one argument); hom, ext, tensor, tor, lambda_t, gamma_t,
    /// lsharp (two arguments).
    Eval {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum SqCmd {
    /// Evaluate one cell. The oracle is the Dold-Kan computation for `A = Z`
    /// and the chain-level pseudo-homology otherwise.
    Eval {
        #[arg(long)]
        n: Degree,
        #[arg(long)]
        m: Degree,
        #[arg(long, default_value = "Z")]
        a: String,
        #[arg(long)]
        d: String,
        #[arg(long, value_enum, default_value = "closed")]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Rows `m = 1..max-m`, columns `n = 1..max-n`; symbolic unless `--d` is
    /// given. `--printed` emits the three low-dimension blocks instead.
    Table {
        #[arg(long)]
        d: Option<String>,
        #[arg(long, default_value = "Z")]
        a: String,
        #[arg(long, default_value_t = 4)]
        max_m: Degree,
        #[arg(long, default_value_t = 7)]
        max_n: Degree,
        #[arg(long)]
        printed: bool,
        #[arg(long, default_value = "md")]
        format: String,
    },
}

#[derive(Args)]
struct Grid {
    /// A single value or an inclusive range `lo..hi`.
    #[arg(long)]
    n: String,
    #[arg(long)]
    k: String,
    #[arg(long, default_value = "md")]
    format: String,
}

#[derive(Subcommand)]
enum PiCmd {
    Sphere {
        #[arg(long, default_value = "nil2")]
        cat: String,
        #[command(flatten)]
        grid: Grid,
    },
    Moore {
        #[arg(long)]
        a: String,
        #[command(flatten)]
        grid: Grid,
    },
    /// `π_{n+q}` of `Λ²` applied to the `n`-sphere.
    Lambda2 {
        #[arg(long)]
        n: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Homotopy of the `p`-th Lie functor on `K(Z, n)`.
    Lie {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        grid: Grid,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// `sq_nm(Z, D, m+k, m)` against the oracle for `k = 0..m+1`.
    Thm10 {
        /// Comma-separated group expressions.
        #[arg(long, default_value = "0,Z,Z/2,Z/3,Z/4,Z/6,Z+Z/2")]
        coeffs: String,
        #[arg(long, default_value_t = 4)]
        max_m: Degree,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

#[derive(Subcommand)]
enum BypeCmd {
    /// Check a file of any kind; bypes get a per-degree report.
    Validate { file: String },
    /// Bype to stable bype.
    Stabilize { file: String },
    /// Stable bype (or bype, stabilized first) to F-module; `--inverse`
    /// reads an F-module back.
    Theta {
        file: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Whether `φ` (identity when omitted) underlies a morphism. Bypes are
    /// searched for a correction; F-modules are decided directly.
    Morphism {
        source: String,
        target: String,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, default_value_t = 1 << 16)]
        cap: u64,
    },
}

/// A run either prints and succeeds, or prints and reports a negative check.
enum Outcome {
    Ok(String),
    Mismatch(String),
}

type Run = Result<Outcome, Error>;

fn group(s: &str) -> Result<CanonicalGroup, Error> {
    parse_group_expr(s)
}

fn range(s: &str) -> Result<Vec<i64>, Error> {
    let bad = || Error::InvalidArgument(format!("expected an integer or lo..hi, got {s:?}"));
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(bad());
            }
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![parse(s)?]),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value")
}

fn functor_eval(kind: &str, a: &str, b: Option<&str>, as_json: bool) -> Run {
    let a = group(a)?;
    let need_b = || -> Result<CanonicalGroup, Error> {
        group(b.ok_or_else(|| Error::InvalidArgument(format!("functor '{kind}' needs --b")))?)
    };
    let (value, parts) = if let Ok(k) = kind.parse::<ClassicalKind>() {
        (classical(k, &a), None)
    } else if let Ok(k) = kind.parse::<BinaryKind>() {
        (binary_functor(k, &a, &need_b()?), None)
    } else {
        let k: BypeKind = kind.parse()?;
        let v = bype_functor(k, &a, &need_b()?);
        (v.group.clone(), Some((v.ext, v.hom)))
    };
    Ok(Outcome::Ok(match (as_json, parts) {
        (true, None) => pretty(&json!({ "kind": kind, "value": format_group(&value) })),
        (true, Some((e, h))) => {
            pretty(&json!({ "kind": kind, "value": format_group(&value), "ext": format_group(&e), "hom": format_group(&h) }))
        }
        (false, None) => format_group(&value),
        (false, Some((e, h))) => format!("{}\n  Ext part {}\n  Hom part {}", format_group(&value), format_group(&e), format_group(&h)),
    }))
}

fn oracle(a: &CanonicalGroup, d: &CanonicalGroup, n: Degree, m: Degree) -> Result<CanonicalGroup, Error> {
    if n < 0 {
        return Ok(CanonicalGroup::trivial());
    }
    if *a == CanonicalGroup::z() {
        m_sharp_oracle(&moore_complex(d, m), &QuadraticZModule::lambda(), n as usize)
    } else {
        Ok(sq_nm_chain(a, d, n, m)?.group().clone())
    }
}

fn sq_eval(n: Degree, m: Degree, a: &str, d: &str, mode: Mode, as_json: bool) -> Run {
    let (a, d) = (group(a)?, group(d)?);
    let closed = if mode != Mode::Oracle { Some(sq_nm(&a, &d, n, m)?) } else { None };
    let brute = if mode != Mode::Closed { Some(oracle(&a, &d, n, m)?) } else { None };
    let agree = match (&closed, &brute) {
        (Some(c), Some(o)) => Some(c.group == *o),
        _ => None,
    };
    let text = if as_json {
        let mut v = json!({ "n": n, "m": m, "a": format_group(&a), "d": format_group(&d) });
        if let Some(c) = &closed {
            v["closed"] = json!(format_group(&c.group));
            v["symbolic"] = json!(c.symbolic());
            v["summands"] = json!(c.summands.iter().map(|s| json!({ "label": s.label, "group": format_group(&s.group) })).collect::<Vec<_>>());
        }
        if let Some(o) = &brute {
            v["oracle"] = json!(format_group(o));
        }
        if let Some(x) = agree {
            v["verdict"] = json!(if x { "agree" } else { "mismatch" });
        }
        pretty(&v)
    } else {
        let mut s = String::new();
        if let Some(c) = &closed {
            writeln!(s, "closed  {}", format_group(&c.group)).unwrap();
            for t in &c.summands {
                writeln!(s, "  {} = {}", t.label, format_group(&t.group)).unwrap();
            }
        }
        if let Some(o) = &brute {
            writeln!(s, "oracle  {}", format_group(o)).unwrap();
        }
        if let Some(x) = agree {
            writeln!(s, "{}", if x { "agree" } else { "mismatch" }).unwrap();
        }
        s.trim_end().to_string()
    };
    Ok(if agree == Some(false) { Outcome::Mismatch(text) } else { Outcome::Ok(text) })
}

fn sq_table(d: Option<&str>, a: &str, max_m: Degree, max_n: Degree, printed: bool, format: &str) -> Run {
    let format: TableFormat = format.parse()?;
    let coeffs = match d {
        Some(d) => Some((group(a)?, group(d)?)),
        None => None,
    };
    let coeffs = coeffs.as_ref().map(|(a, d)| (a, d));
    let tables = if printed { SqTable::printed_blocks(coeffs)? } else { vec![SqTable::build(1..=max_n, 1..=max_m, coeffs)?] };
    if format == TableFormat::Json {
        let all: Vec<Value> = tables.iter().map(|t| serde_json::from_str(&t.render(format)?).map_err(Error::from)).collect::<Result<_, _>>()?;
        let v = if all.len() == 1 { all.into_iter().next().unwrap() } else { Value::Array(all) };
        return Ok(Outcome::Ok(pretty(&v)));
    }
    let parts: Vec<String> = tables.iter().map(|t| t.render(format)).collect::<Result<_, _>>()?;
    Ok(Outcome::Ok(parts.join("\n").trim_end().to_string()))
}

/// Renders `f(n, k)` over a rectangle; a single cell prints just the group.
fn grid(ns: &[i64], ks: &[i64], format: &str, what: (&str, &str), f: impl Fn(i64, i64) -> Result<CanonicalGroup, Error>) -> Run {
    let format: TableFormat = format.parse()?;
    if ns.len() == 1 && ks.len() == 1 && format != TableFormat::Json {
        return Ok(Outcome::Ok(format_group(&f(ns[0], ks[0])?)));
    }
    let mut cells = Vec::new();
    for &n in ns {
        for &k in ks {
            cells.push((n, k, f(n, k)?));
        }
    }
    let (rn, ck) = what;
    let get = |n, k| cells.iter().find(|c| c.0 == n && c.1 == k).map(|c| format_group(&c.2)).unwrap();
    Ok(Outcome::Ok(match format {
        TableFormat::Json => pretty(&Value::Array(
            cells.iter().map(|(n, k, g)| json!({ rn: n, ck: k, "group": format_group(g) })).collect(),
        )),
        TableFormat::Csv => {
            let mut s = format!("{rn},{ck},group\n");
            for (n, k, g) in &cells {
                writeln!(s, "{n},{k},{}", format_group(g)).unwrap();
            }
            s.trim_end().to_string()
        }
        TableFormat::Md => {
            let mut s = format!("| {rn}\\{ck} |");
            for k in ks {
                write!(s, " {k} |").unwrap();
            }
            s += "\n|---|";
            s += &"---|".repeat(ks.len());
            for &n in ns {
                write!(s, "\n| {n} |").unwrap();
                for &k in ks {
                    write!(s, " {} |", get(n, k)).unwrap();
                }
            }
            s
        }
    }))
}

fn pi(cmd: &PiCmd) -> Run {
    match cmd {
        PiCmd::Sphere { cat, grid: g } => {
            let category: Category = cat.parse()?;
            grid(&range(&g.n)?, &range(&g.k)?, &g.format, ("n", "k"), |n, k| pi_sphere(HomotopyQuery { category, n, k }))
        }
        PiCmd::Moore { a, grid: g } => {
            let a = group(a)?;
            grid(&range(&g.n)?, &range(&g.k)?, &g.format, ("n", "k"), |n, k| pi_moore(&a, n, k))
        }
        PiCmd::Lambda2 { n, q, format } => grid(&range(n)?, &range(q)?, format, ("n", "q"), pi_lambda2_sphere),
        PiCmd::Lie { p, grid: g } => grid(&range(&g.n)?, &range(&g.k)?, &g.format, ("n", "k"), |n, k| pi_lie_p(*p, n, k)),
    }
}

fn verify_thm10(coeffs: &str, max_m: Degree, workers: usize) -> Run {
    let ds: Vec<CanonicalGroup> = coeffs.split(',').map(|s| group(s.trim())).collect::<Result<_, _>>()?;
    if max_m < 1 {
        return Err(Error::InvalidArgument("--max-m must be ≥ 1".into()));
    }
    let mut cells = Vec::new();
    for d in &ds {
        for m in 1..=max_m {
            for k in 0..=m + 1 {
                cells.push((d.clone(), m, m + k));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let z = CanonicalGroup::z();
    let results: Vec<Result<Value, Error>> = pool.install(|| {
        cells
            .par_iter()
            .map(|(d, m, n)| {
                let t = Instant::now();
                let closed = sq_nm(&z, d, *n, *m)?.group;
                let brute = oracle(&z, d, *n, *m)?;
                Ok(json!({
                    "cell": { "a": "Z", "d": format_group(d), "m": m, "n": n },
                    "closed": format_group(&closed),
                    "oracle": format_group(&brute),
                    "agree": closed == brute,
                    "millis": t.elapsed().as_millis() as u64,
                }))
            })
            .collect()
    });
    let rows: Vec<Value> = results.into_iter().collect::<Result<_, _>>()?;
    let agree = rows.iter().all(|r| r["agree"] == json!(true));
    let report = pretty(&json!({ "sweep": "thm10", "cells": rows, "all_agree": agree }));
    Ok(if agree { Outcome::Ok(report) } else { Outcome::Mismatch(report) })
}

fn read(path: &str) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    schema::load(&text)
}

fn bype(cmd: &BypeCmd) -> Run {
    match cmd {
        BypeCmd::Validate { file } => match read(file)? {
            Document::Bype(x) => {
                let r = validate_bype(&x);
                let text = serde_json::to_string_pretty(&json!({ "valid": r.valid(), "report": r })).map_err(Error::from)?;
                Ok(if r.valid() { Outcome::Ok(text) } else { Outcome::Mismatch(text) })
            }
            doc => Ok(Outcome::Ok(pretty(&json!({ "valid": true, "schema": doc.kind() })))),
        },
        BypeCmd::Stabilize { file } => match read(file)? {
            Document::Bype(x) => Ok(Outcome::Ok(schema::stable_to_json(&stabilize_bype(&x)?))),
            doc => Err(Error::InvalidArgument(format!("stabilize takes a {} file, got {}", schema::BYPE, doc.kind()))),
        },
        BypeCmd::Theta { file, inverse } => match (read(file)?, inverse) {
            (Document::Bype(x), false) => Ok(Outcome::Ok(schema::fmodule_to_json(&theta(&stabilize_bype(&x)?)?))),
            (Document::Stable(s), false) => Ok(Outcome::Ok(schema::fmodule_to_json(&theta(&s)?))),
            (Document::FModule(f), true) => Ok(Outcome::Ok(schema::stable_to_json(&theta_inverse(&f)?))),
            (doc, _) => Err(Error::InvalidArgument(format!("theta{} cannot take a {} file", if *inverse { " --inverse" } else { "" }, doc.kind()))),
        },
        BypeCmd::Morphism { source, target, phi, cap } => morphism(source, target, phi.as_deref(), *cap),
    }
}

fn morphism(source: &str, target: &str, phi: Option<&str>, cap: u64) -> Run {
    let (x, y) = (read(source)?, read(target)?);
    let phi: Option<GradedHom> = match phi.map(read).transpose()? {
        None => None,
        Some(Document::Hom(h)) => Some(h),
        Some(doc) => return Err(Error::InvalidArgument(format!("--phi must be a {} file, got {}", schema::HOM, doc.kind()))),
    };
    let identity = |a: &nilquad::chaincx::GradedGroup, b: &nilquad::chaincx::GradedGroup| {
        if a != b {
            return Err(Error::InvalidArgument("source and target groups differ; pass --phi".into()));
        }
        Ok(identity_hom(a))
    };
    let verdict = |ok: bool, v: Value| Ok(if ok { Outcome::Ok(pretty(&v)) } else { Outcome::Mismatch(pretty(&v)) });
    match (x, y) {
        (Document::Bype(x), Document::Bype(y)) => {
            let phi = match phi {
                Some(p) => p,
                None => identity(&x.groups, &y.groups)?,
            };
            match find_morphism_witness(&x, &y, &phi, SearchConfig { cap })? {
                Witness::Found(c) => {
                    let corr: serde_json::Map<String, Value> = c
                        .iter()
                        .map(|(n, e)| (n.to_string(), json!(e.coords().iter().map(ToString::to_string).collect::<Vec<_>>())))
                        .collect();
                    verdict(true, json!({ "morphism": true, "correction": corr }))
                }
                Witness::Exhausted(k) => verdict(false, json!({ "morphism": false, "candidates_tried": k })),
            }
        }
        (Document::FModule(f), Document::FModule(g)) => {
            let phi = match phi {
                Some(p) => p,
                None => identity(&f.h, &g.h)?,
            };
            let ok = fmodule_check_morphism(&f, &g, &phi)?;
            verdict(ok, json!({ "morphism": ok }))
        }
        (a, b) => Err(Error::InvalidArgument(format!("morphism needs two bypes or two F-modules, got {} and {}", a.kind(), b.kind()))),
    }
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Group(GroupCmd::Normalize { expr }) => Ok(Outcome::Ok(format_group(&group(&expr)?))),
        Command::Functor(FunctorCmd::Eval { kind, a, b, json }) => functor_eval(&kind, &a, b.as_deref(), json),
        Command::Sq(SqCmd::Eval { n, m, a, d, mode, json }) => sq_eval(n, m, &a, &d, mode, json),
        Command::Sq(SqCmd::Table { d, a, max_m, max_n, printed, format }) => sq_table(d.as_deref(), &a, max_m, max_n, printed, &format),
        Command::Pi(cmd) => pi(&cmd),
        Command::Verify(VerifyCmd::Thm10 { coeffs, max_m, workers }) => verify_thm10(&coeffs, max_m, workers),
        Command::Bype(cmd) => bype(&cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok(s)) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Mismatch(s)) => {
            println!("{s}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(3)
        }
    }
}
