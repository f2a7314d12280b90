//! Command-line front end. Every subcommand prints one JSON report to
//! standard output (or to --out), wrapped in the provenance envelope;
//! human-oriented summaries go to standard error.
//!
//! Exit codes: 0 success, 1 configuration error, 2 window instability,
//! 3 internal invariant violation.

use annrel::config::{ConfigError, SessionConfig};
use annrel::liealg::{Algebra, AlgebraInfo};
use annrel::partitions::{self, ColoredPartition, Part, Window};
use annrel::pbw::{self, UElement};
use annrel::rankcheck::{self, RankError, ScanConfig};
use annrel::rat::{format_rat, parse_rat, rat, Rat};
use annrel::report::{emit, report, WindowCertificate};
use annrel::verma::{self, RbCache, VermaError, VermaSlice};
use annrel::voa::{self, VoaError};
use annrel::weyl;
use clap::{Args, Parser, Subcommand};
use num::{One, Signed, Zero};
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;

const EXIT_CONFIG: i32 = 1;
const EXIT_WINDOW: i32 = 2;
const EXIT_INVARIANT: i32 = 3;

#[derive(Parser)]
#[command(name = "annrel", version, about = "Exact leading-term calculus for annihilating fields of affine Lie algebra modules")]
struct Cli {
    /// Flat key=value config file loaded before flag overrides
    #[arg(long, global = true)]
    config: Option<String>,
    /// Worker threads (also: ANNREL_WORKERS)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the JSON report here instead of standard output
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOverrides {
    /// Algebra type, e.g. sl2 or sl3
    #[arg(long)]
    algebra: Option<String>,
    /// Level k (exact rational)
    #[arg(long, allow_hyphen_values = true)]
    level: Option<String>,
    /// Part-degree window dmin:dmax
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Module slice depth
    #[arg(long)]
    depth: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the finite-dimensional Lie algebra data
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Colored-partition enumeration and order diagnostics
    Partitions {
        #[command(subcommand)]
        cmd: PartitionsCmd,
    },
    /// Straightening and leading terms in the enveloping algebra
    Pbw {
        #[command(subcommand)]
        cmd: PbwCmd,
    },
    /// Vacuum module, relation space, and kernel cells
    Voa {
        #[command(subcommand)]
        cmd: VoaCmd,
    },
    /// Highest-weight slices and relations among relations
    Verma {
        #[command(subcommand)]
        cmd: VermaCmd,
    },
    /// Cell-by-cell rank comparisons
    Rankcheck {
        #[command(subcommand)]
        cmd: RankcheckCmd,
    },
    /// Weyl dimension formula
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Quick end-to-end sanity run
    Selftest,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Print basis labels, form matrix, maximal root and dual Coxeter number
    Info {
        #[arg(long = "type")]
        type_: String,
    },
}

#[derive(Subcommand)]
enum PartitionsCmd {
    /// Enumerate colored partitions of fixed length and degree
    Enum {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long)]
        length: usize,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// h-weight filter, comma-separated integers
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Run the order-axiom suite on a finite family
    OrderCheck {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        /// Factor-length bound for the multiplicativity triple loop
        #[arg(long, default_value_t = 2)]
        mult_length: usize,
    },
}

#[derive(Subcommand)]
enum PbwCmd {
    /// Straighten a word like "e(1) f(-1)" onto the monomial basis
    Straighten {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long)]
        word: String,
    },
    /// Leading term of a rational combination of words read from a file
    Lt {
        #[command(flatten)]
        common: CommonOverrides,
        /// Each line: a rational coefficient followed by parts, e.g.
        /// "1/2 E12(-1) E21(-2)"; blank lines and # comments are skipped
        #[arg(long)]
        expr_file: String,
    },
}

#[derive(Subcommand)]
enum VoaCmd {
    /// The singular vector and the relation space it generates
    Singular {
        #[command(flatten)]
        common: CommonOverrides,
    },
    /// Leading-term-indexed basis of the relation coefficients at one degree
    Relations {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Kernel of the contraction on one graded cell
    Kernel {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long)]
        filtration: usize,
        /// Conformal grade of the cell; sign is ignored
        #[arg(long, allow_hyphen_values = true)]
        grade: i64,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
}

#[derive(Subcommand)]
enum VermaCmd {
    /// Graded dimensions of a highest-weight slice
    Dims {
        #[command(flatten)]
        common: CommonOverrides,
        /// Highest weight on the Cartan generators: comma-separated
        /// rationals, or L0 for the all-zero weight
        #[arg(long, default_value = "L0", allow_hyphen_values = true)]
        hw: String,
        /// Bound on degree-zero lowering parts per monomial
        #[arg(long, default_value_t = 0)]
        zero_cap: usize,
    },
    /// Try to express the difference of two embedding operators in the
    /// span of higher ones
    Verify219 {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long, default_value = "L0", allow_hyphen_values = true)]
        hw: String,
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
        #[arg(long, allow_hyphen_values = true)]
        rho1: String,
        #[arg(long, allow_hyphen_values = true)]
        rho2: String,
    },
}

#[derive(Subcommand)]
enum RankcheckCmd {
    /// Compare embedding counts with kernel dimensions over a grade range
    Scan {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long, default_value_t = 3)]
        filtration: usize,
        /// Grade range "first:last", inclusive, e.g. -2:-8
        #[arg(long, default_value = "-2:-8", allow_hyphen_values = true)]
        grades: String,
        /// Refine every grade by h-weight
        #[arg(long)]
        weight_refined: bool,
        /// Skip the doubled-window recomputation
        #[arg(long)]
        no_certify: bool,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Dimension of the irreducible module with the given dominant weight
    Dim {
        #[arg(long, default_value = "sl2")]
        algebra: String,
        /// Fundamental-weight coordinates, comma-separated nonnegative ints
        #[arg(long)]
        weight: String,
    },
}

/// Error wrapper carrying the process exit code.
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn config(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: msg.into(),
        }
    }
    fn invariant(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVARIANT,
            message: msg.into(),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<VoaError> for CliError {
    fn from(e: VoaError) -> Self {
        CliError::invariant(e.to_string())
    }
}

impl From<VermaError> for CliError {
    fn from(e: VermaError) -> Self {
        match e {
            VermaError::DepthOverflow(_) | VermaError::NonEmbedding | VermaError::MissingLeadingTerm => {
                CliError::config(e.to_string())
            }
            VermaError::Voa(inner) => inner.into(),
        }
    }
}

impl From<RankError> for CliError {
    fn from(e: RankError) -> Self {
        match e {
            RankError::WindowInstability { .. } => CliError {
                code: EXIT_WINDOW,
                message: e.to_string(),
            },
            RankError::Invariant { .. } => CliError::invariant(e.to_string()),
            RankError::Voa(inner) => inner.into(),
            RankError::Verma(inner) => inner.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::config(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    });
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = SessionConfig::default();
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    if let Ok(w) = std::env::var("ANNREL_WORKERS") {
        let w: usize = w
            .parse()
            .map_err(|_| CliError::config(format!("bad ANNREL_WORKERS value {w:?}")))?;
        cfg.workers = Some(w);
    }
    if let Some(w) = cli.workers {
        cfg.workers = Some(w);
    }
    if let Some(o) = cli.out {
        cfg.out = Some(o);
    }
    if let Some(w) = cfg.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::config(e.to_string()))?;
    }

    match cli.command {
        Command::Algebra { cmd } => {
            let AlgebraCmd::Info { type_ } = cmd;
            cfg.algebra = type_;
            let alg = cfg.build_algebra()?;
            let info = AlgebraInfo::from(&alg);
            eprintln!("{}: dimension {}, rank {}", alg.name, alg.dim(), alg.rank);
            finish(&cfg, vec![], info)
        }
        Command::Partitions { cmd } => run_partitions(cfg, cmd),
        Command::Pbw { cmd } => run_pbw(cfg, cmd),
        Command::Voa { cmd } => run_voa(cfg, cmd),
        Command::Verma { cmd } => run_verma(cfg, cmd),
        Command::Rankcheck { cmd } => run_rankcheck(cfg, cmd),
        Command::Weyl { cmd } => {
            let WeylCmd::Dim { algebra, weight } = cmd;
            cfg.algebra = algebra.clone();
            let n = algebra
                .strip_prefix("sl")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| CliError::config(format!("unknown algebra {algebra:?}")))?;
            let coords: Vec<u64> = weight
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::config(format!("bad weight {weight:?}")))?;
            let dim = weyl::weyl_dim(n, &coords)
                .map_err(|e| CliError::config(e.to_string()))?;
            eprintln!("dim = {dim}");
            finish(
                &cfg,
                vec![],
                json!({"algebra": algebra, "weight": coords, "dim": dim.to_string()}),
            )
        }
        Command::Selftest => run_selftest(cfg),
    }
}

fn apply_overrides(cfg: &mut SessionConfig, common: &CommonOverrides) -> Result<(), CliError> {
    if let Some(a) = &common.algebra {
        cfg.apply("algebra", a)?;
    }
    if let Some(l) = &common.level {
        cfg.apply("level", l)?;
    }
    if let Some(w) = &common.window {
        cfg.apply("window", w)?;
    }
    if let Some(d) = common.depth {
        cfg.apply("depth", &d.to_string())?;
    }
    Ok(())
}

fn finish<T: Serialize>(
    cfg: &SessionConfig,
    certs: Vec<WindowCertificate>,
    data: T,
) -> Result<(), CliError> {
    let r = report(cfg, certs, data);
    emit(&r, cfg.out.as_deref())?;
    Ok(())
}

/// Positive integral level required by relation generation.
fn integral_level(level: &Rat) -> Result<u32, CliError> {
    if level.denom().is_one() && level.is_positive() {
        if let Ok(k) = u32::try_from(level.numer().clone()) {
            return Ok(k);
        }
    }
    Err(CliError::config(format!(
        "level {} is not a positive integer; relation generation needs one",
        format_rat(level)
    )))
}

fn parse_weight(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::config(format!("bad weight {s:?}")))
}

fn parse_hw(s: &str, rank: usize) -> Result<Vec<Rat>, CliError> {
    if s.eq_ignore_ascii_case("l0") || s.eq_ignore_ascii_case("lambda0") {
        return Ok(vec![Rat::zero(); rank]);
    }
    let v: Vec<Rat> = s
        .split(',')
        .map(|t| parse_rat(t).ok_or_else(|| CliError::config(format!("bad weight entry {t:?}"))))
        .collect::<Result<_, _>>()?;
    if v.len() != rank {
        return Err(CliError::config(format!(
            "highest weight needs {rank} coordinates, got {}",
            v.len()
        )));
    }
    Ok(v)
}

/// A token "label(degree)"; for rank one, e/f/h alias the matrix labels.
fn parse_part(alg: &Algebra, tok: &str) -> Result<Part, CliError> {
    let bad = || CliError::config(format!("bad part {tok:?}, expected label(degree)"));
    let open = tok.find('(').ok_or_else(bad)?;
    let label = &tok[..open];
    let degree: i64 = tok[open + 1..]
        .strip_suffix(')')
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    let canon = if alg.rank == 1 {
        match label {
            "e" => "E12",
            "f" => "E21",
            "h" => "h1",
            other => other,
        }
    } else {
        label
    };
    let color = alg
        .labels
        .iter()
        .position(|l| l == canon)
        .ok_or_else(|| CliError::config(format!("unknown basis label {label:?}")))?;
    Ok(Part::new(color as u32, degree))
}

fn parse_word(alg: &Algebra, s: &str) -> Result<Vec<Part>, CliError> {
    s.split_whitespace().map(|t| parse_part(alg, t)).collect()
}

fn parse_partition(alg: &Algebra, s: &str) -> Result<ColoredPartition, CliError> {
    Ok(ColoredPartition::from_parts(parse_word(alg, s)?))
}

fn term_map(alg: &Algebra, u: &UElement) -> BTreeMap<String, String> {
    u.iter()
        .map(|(pi, c)| (pi.display(alg), format_rat(c)))
        .collect()
}

fn run_partitions(mut cfg: SessionConfig, cmd: PartitionsCmd) -> Result<(), CliError> {
    match cmd {
        PartitionsCmd::Enum {
            common,
            length,
            degree,
            weight,
        } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let mu = weight.as_deref().map(parse_weight).transpose()?;
            let out = partitions::enumerate(&alg, length, degree, cfg.window, mu.as_deref());
            eprintln!("{} partitions", out.len());
            let data: Vec<_> = out
                .iter()
                .map(|pi| {
                    json!({
                        "partition": pi.display(&alg),
                        "length": pi.len(),
                        "degree": pi.degree(),
                        "weight": pi.weight(&alg),
                    })
                })
                .collect();
            finish(&cfg, vec![WindowCertificate::new(cfg.window, false)], data)
        }
        PartitionsCmd::OrderCheck {
            common,
            max_length,
            mult_length,
        } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let rep = partitions::check_order_axioms(&alg, max_length, cfg.window, mult_length)
                .map_err(CliError::invariant)?;
            eprintln!(
                "order axioms ok on {} partitions ({} comparisons)",
                rep.population, rep.pair_comparisons
            );
            finish(&cfg, vec![WindowCertificate::new(cfg.window, false)], rep)
        }
    }
}

fn run_pbw(mut cfg: SessionConfig, cmd: PbwCmd) -> Result<(), CliError> {
    match cmd {
        PbwCmd::Straighten { common, word } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let w = parse_word(&alg, &word)?;
            let u = pbw::straighten(&alg, &cfg.level, &w, Rat::one());
            eprintln!("{}", pbw::format_element(&alg, &u));
            finish(&cfg, vec![], json!({"terms": term_map(&alg, &u)}))
        }
        PbwCmd::Lt { common, expr_file } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let text = std::fs::read_to_string(&expr_file)?;
            let mut total = pbw::u_zero();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut toks = line.split_whitespace();
                let c = toks
                    .next()
                    .and_then(parse_rat)
                    .ok_or_else(|| {
                        CliError::config(format!("line {}: expected a leading rational", i + 1))
                    })?;
                let word: Vec<Part> = toks
                    .map(|t| parse_part(&alg, t))
                    .collect::<Result<_, _>>()?;
                pbw::u_add(&mut total, &pbw::straighten(&alg, &cfg.level, &word, c));
            }
            let lt = pbw::leading_term(&total).map(|pi| pi.display(&alg));
            eprintln!("lt = {}", lt.clone().unwrap_or_else(|| "0".to_string()));
            finish(
                &cfg,
                vec![],
                json!({"leading_term": lt, "terms": term_map(&alg, &total)}),
            )
        }
    }
}

fn run_voa(mut cfg: SessionConfig, cmd: VoaCmd) -> Result<(), CliError> {
    match cmd {
        VoaCmd::Singular { common } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let k = integral_level(&cfg.level)?;
            let rel = voa::generate_r(&alg, k)?;
            eprintln!("dim R = {}", rel.basis.len());
            let basis: Vec<BTreeMap<String, String>> =
                rel.basis.iter().map(|v| term_map(&alg, v)).collect();
            finish(
                &cfg,
                vec![],
                json!({
                    "singular_vector": term_map(&alg, &voa::singular_vector(&alg, k)),
                    "dim": rel.basis.len(),
                    "weights": rel.weights,
                    "basis": basis,
                }),
            )
        }
        VoaCmd::Relations { common, degree } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let k = integral_level(&cfg.level)?;
            let rel = voa::generate_r(&alg, k)?;
            let trunc = rankcheck::trunc_window(cfg.window);
            let rb = voa::relation_basis(&alg, &rel, degree, trunc)?;
            // stability: the leading terms must survive window doubling
            let wide = voa::relation_basis(&alg, &rel, degree, trunc.doubled())?;
            let lts: Vec<String> = rb.elems.iter().map(|(rho, _)| rho.display(&alg)).collect();
            let wide_lts: Vec<String> =
                wide.elems.iter().map(|(rho, _)| rho.display(&alg)).collect();
            if lts != wide_lts {
                return Err(CliError {
                    code: EXIT_WINDOW,
                    message: format!(
                        "leading terms at degree {degree} unstable under window doubling"
                    ),
                });
            }
            eprintln!("{} relation coefficients at degree {degree}", rb.elems.len());
            let elems: Vec<_> = rb
                .elems
                .iter()
                .map(|(rho, u)| json!({"leading_term": rho.display(&alg), "terms": term_map(&alg, u)}))
                .collect();
            finish(
                &cfg,
                vec![WindowCertificate::new(trunc, true)],
                json!({"degree": degree, "elements": elems}),
            )
        }
        VoaCmd::Kernel {
            common,
            filtration,
            grade,
            weight,
        } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let k = integral_level(&cfg.level)?;
            let rel = voa::generate_r(&alg, k)?;
            let mu = weight.as_deref().map(parse_weight).transpose()?;
            let kers = voa::kernel_q(&alg, &rel, filtration, grade.abs(), mu.as_deref())?;
            eprintln!("kernel dimension {}", kers.len());
            let vectors: Vec<_> = kers
                .iter()
                .map(|q| {
                    let terms: Vec<_> = q
                        .terms
                        .iter()
                        .map(|(s, m, kappa, c)| {
                            json!({
                                "relation": s,
                                "d_power": m,
                                "right": kappa.display(&alg),
                                "coeff": format_rat(c),
                            })
                        })
                        .collect();
                    json!({"weight": q.weight, "terms": terms})
                })
                .collect();
            finish(
                &cfg,
                vec![],
                json!({
                    "filtration": filtration,
                    "grade": grade.abs(),
                    "dim": kers.len(),
                    "vectors": vectors,
                }),
            )
        }
    }
}

fn run_verma(mut cfg: SessionConfig, cmd: VermaCmd) -> Result<(), CliError> {
    match cmd {
        VermaCmd::Dims {
            common,
            hw,
            zero_cap,
        } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let hw = parse_hw(&hw, alg.rank)?;
            let slice = VermaSlice::new(cfg.level.clone(), hw, cfg.depth);
            let mut dims = Vec::new();
            for n in (-cfg.depth..=0).rev() {
                dims.push(json!({
                    "degree": n,
                    "dim": slice.basis_at(&alg, n, None, zero_cap).len(),
                }));
            }
            eprintln!("slice depth {}, zero cap {zero_cap}", cfg.depth);
            finish(&cfg, vec![], json!({"zero_cap": zero_cap, "dims": dims}))
        }
        VermaCmd::Verify219 {
            common,
            hw,
            pi,
            rho1,
            rho2,
        } => {
            apply_overrides(&mut cfg, &common)?;
            let alg = cfg.build_algebra()?;
            let k = integral_level(&cfg.level)?;
            let rel = voa::generate_r(&alg, k)?;
            let hw = parse_hw(&hw, alg.rank)?;
            let slice = VermaSlice::new(cfg.level.clone(), hw, cfg.depth);
            let pi = parse_partition(&alg, &pi)?;
            let rho1 = parse_partition(&alg, &rho1)?;
            let rho2 = parse_partition(&alg, &rho2)?;
            let mut cache = RbCache::new();
            let verdict =
                verma::verify_2_19(&alg, &slice, &rel, &pi, &rho1, &rho2, cfg.window, &mut cache)?;
            eprintln!("verdict: {verdict:?}");
            finish(
                &cfg,
                vec![WindowCertificate::new(cfg.window, false)],
                json!({
                    "pi": pi.display(&alg),
                    "rho1": rho1.display(&alg),
                    "rho2": rho2.display(&alg),
                    "verdict": verdict,
                }),
            )
        }
    }
}

fn parse_grades(s: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::config(format!("bad grade range {s:?}, expected first:last"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok(if a <= b {
        (a..=b).collect()
    } else {
        (b..=a).rev().collect()
    })
}

fn run_rankcheck(mut cfg: SessionConfig, cmd: RankcheckCmd) -> Result<(), CliError> {
    let RankcheckCmd::Scan {
        common,
        filtration,
        grades,
        weight_refined,
        no_certify,
    } = cmd;
    apply_overrides(&mut cfg, &common)?;
    let alg = cfg.build_algebra()?;
    let k = integral_level(&cfg.level)?;
    let rel = voa::generate_r(&alg, k)?;
    let grades = parse_grades(&grades)?;
    let scan_cfg = ScanConfig {
        ell: filtration,
        grades,
        weight_refined,
        window: cfg.window,
        certify: !no_certify,
    };
    let cells = rankcheck::scan(&alg, &rel, &scan_cfg)?;
    let equal = cells
        .iter()
        .filter(|c| c.verdict == rankcheck::Verdict::Equality)
        .count();
    eprintln!(
        "{} cells scanned, {} equality, {} other",
        cells.len(),
        equal,
        cells.len() - equal
    );
    finish(
        &cfg,
        vec![WindowCertificate::new(cfg.window, !no_certify)],
        json!({"filtration": filtration, "cells": cells}),
    )
}

fn run_selftest(cfg: SessionConfig) -> Result<(), CliError> {
    let mut checks: Vec<serde_json::Value> = Vec::new();
    let mut check = |name: &str, ok: bool| {
        eprintln!("{} {name}", if ok { "ok  " } else { "FAIL" });
        checks.push(json!({"name": name, "ok": ok}));
        ok
    };

    let a2 = annrel::liealg::build_sl(2).map_err(|e| CliError::invariant(e.to_string()))?;
    let a3 = annrel::liealg::build_sl(3).map_err(|e| CliError::invariant(e.to_string()))?;
    let mut all = check("algebras build", true);

    let axioms = partitions::check_order_axioms(&a2, 3, Window::new(-3, -1), 2).is_ok();
    all &= check("order axioms", axioms);

    let level = rat(1);
    let w = pbw::straighten(
        &a2,
        &level,
        &[Part::new(a2.theta as u32, 1), Part::new(a2.theta as u32, -1)],
        Rat::one(),
    );
    // e(1)e(-1) = e(-1)e(1): commuting isotropic modes
    all &= check("straightening", w.len() == 1);

    let rel = voa::generate_r(&a2, 1).map_err(|e| CliError::invariant(e.to_string()))?;
    all &= check("relation space dimension", rel.basis.len() == 5);

    let cell = rankcheck::rank_check(&a2, &rel, 3, -4, None, Window::new(-4, -1), true)
        .map_err(CliError::from)?;
    all &= check(
        "rank cell certifies",
        cell.verdict == rankcheck::Verdict::Equality,
    );

    let dim = weyl::weyl_dim(3, &[1, 1]).map_err(|e| CliError::invariant(e.to_string()))?;
    all &= check("weyl dimension", dim == 8.into());
    drop(a3);

    if !all {
        return Err(CliError::invariant("selftest failed"));
    }
    finish(&cfg, vec![], json!({"checks": checks, "ok": true}))
}
