//! `steiner`: command-line access to the steiner-core computations.
//!
//! Exit status: 0 on success, 1 on a negative verdict (not isomorphic,
//! invalid cocycle, failed self-test, ...), 2 on malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use steiner_core::coho::{
    decompose, regular_count_formula, regular_pair_count, sr_count_formula, strongly_regular_pairs,
    validate_cocycle,
};
use steiner_core::f2::F2Vector;
use steiner_core::io::{
    parse_cocycle, parse_sts, parse_table, write_cochain, write_cocycle, write_sts, write_table,
};
use steiner_core::loops::{
    associator_subloop, automorphisms, build_extension, center, center_basis, find_isomorphism,
    free_nilpotent2, generating_set, nilpotency_class, quotient, steiner_violation, unique16,
    FiniteLoop, DEFAULT_AUT_MAX_ORDER,
};
use steiner_core::report::RunReport;
use steiner_core::selftest::{self, SelfTestConfig, DEFAULT_SELFTEST_SEED};
use steiner_core::sts::{loop_from_sts, sts_from_loop, validate_sts};
use steiner_core::sword::{is_sword, normalize, Word};
use steiner_core::Error;

#[derive(Parser, Debug)]
#[command(name = "steiner", version, about = "Steiner loops, F2 cocycles and central extensions")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SELFTEST_SEED)]
    seed: u64,
    /// Worker threads for searches and scans.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print the key=value report instead of the human one.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basis dimension d(n) by formula and by enumeration, n = 1..n_max.
    Dims {
        #[arg(default_value_t = 8)]
        n_max: u32,
    },
    /// Cayley table of the free class-two Steiner loop on n generators.
    Free {
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structure of a loop table.
    Analyze { table: PathBuf },
    /// Factor by a central subspace given as basis bit strings.
    Quotient {
        table: PathBuf,
        /// Comma-separated basis vectors in center coordinates, e.g. 110,011.
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism between two tables.
    Iso { first: PathBuf, second: PathBuf },
    /// Order and generators of the automorphism group.
    Aut {
        table: PathBuf,
        #[arg(long, default_value_t = DEFAULT_AUT_MAX_ORDER)]
        max_order: usize,
    },
    /// Build and verify the unique order-16 quotient; write its table, STS
    /// and report into a directory.
    Unique16 { out_dir: PathBuf },
    /// Steiner loop of a triple system.
    Sts2loop {
        sts: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triple system of a Steiner loop.
    Loop2sts {
        table: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the cocycle identities for a .cyc file.
    CocycleCheck { cocycle: PathBuf },
    /// Split a cocycle into a reduced part and a coboundary.
    CocycleDecompose {
        cocycle: PathBuf,
        #[arg(long)]
        reduced_out: Option<PathBuf>,
        #[arg(long)]
        shift_out: Option<PathBuf>,
    },
    /// Central extension defined by a cocycle.
    Extend {
        cocycle: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normal form of an S-word expression such as "((x1 x2) x2)".
    Word { expr: String },
    /// Run the acceptance checks.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
        /// Skip the optional larger cases.
        #[arg(long)]
        quick: bool,
    },
}

/// Failures split by exit status.
enum Failure {
    Verdict(anyhow::Error),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let verdict = matches!(
            e.downcast_ref::<Error>(),
            Some(
                Error::NotSteiner(_)
                    | Error::InvalidSts(_)
                    | Error::InvalidCocycle(_)
                    | Error::Verification(_)
                    | Error::NotNormal(_)
            )
        );
        if verdict {
            Failure::Verdict(e)
        } else {
            Failure::Input(e)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type CmdResult = Result<RunReport, Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_table(path: &Path) -> anyhow::Result<FiniteLoop> {
    parse_table(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn list(items: &[usize]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_dims(n_max: u32) -> CmdResult {
    if !(1..=8).contains(&n_max) {
        return Err(Failure::Input(anyhow!("n_max must be in 1..=8, got {n_max}")));
    }
    let mut r = RunReport::new("dims");
    r.input("n_max", n_max);
    let mut agree = true;
    for n in 1..=n_max {
        let formula = sr_count_formula(n);
        let enumerated = strongly_regular_pairs(n)?.len() as u128;
        let regular = regular_pair_count(n)? as u128;
        agree &= formula == enumerated && regular == regular_count_formula(n);
        r.result(
            format!("n.{n}"),
            format!("formula={formula} enumerated={enumerated} regular={regular}"),
        );
    }
    r.result("agree", agree);
    r.status = i32::from(!agree);
    Ok(r)
}

fn describe_loop(r: &mut RunReport, l: &FiniteLoop) {
    r.result("order", l.order());
    match steiner_violation(l) {
        None => r.result("steiner", true),
        Some(w) => r.result("steiner", false).result("steiner_witness", w),
    };
    match l.associativity_witness() {
        None => r.result("associative", true),
        Some((x, y, z)) => r
            .result("associative", false)
            .result("associativity_witness", format!("{x} {y} {z}")),
    };
    r.result("commutative", l.is_commutative());
    let z = center(l);
    r.result("center_order", z.len()).result("center", list(&z));
    r.result("associator_subloop_order", associator_subloop(l).len());
    r.result("nilpotency_class", nilpotency_class(l));
    r.result("generators", list(&generating_set(l)));
}

fn cmd_free(n: u32, out: Option<&Path>) -> CmdResult {
    let ext = free_nilpotent2(n)?;
    let l = ext.table().map_err(|_| {
        Failure::Input(anyhow!("n={n} gives order 2^{}, too large for a table", ext.order_log2()))
    })?;
    let mut r = RunReport::new("free");
    r.input("n", n);
    describe_loop(&mut r, l);
    if let Some(p) = out {
        write(p, &write_table(l))?;
        r.result("written", p.display());
    }
    Ok(r)
}

fn cmd_analyze(path: &Path) -> CmdResult {
    let l = load_table(path)?;
    let mut r = RunReport::new("analyze");
    r.input("table", path.display());
    describe_loop(&mut r, &l);
    Ok(r)
}

fn parse_subspace(text: &str) -> anyhow::Result<Vec<F2Vector>> {
    text.split(',')
        .map(|t| F2Vector::parse(t.trim()).map_err(|e| anyhow!("bad basis vector {t:?}: {e}")))
        .collect()
}

fn cmd_quotient(path: &Path, subspace: &str, out: Option<&Path>) -> CmdResult {
    let l = load_table(path)?;
    let vectors = parse_subspace(subspace).map_err(Failure::Input)?;
    let cb = center_basis(&l)?;
    let s = cb.subspace(&vectors).map_err(|e| Failure::Input(e.into()))?;
    let q = quotient(&l, &s.elements)?;
    let mut r = RunReport::new("quotient");
    r.input("table", path.display()).input("subspace", subspace);
    r.result("center_basis", list(&cb.basis));
    r.result("subloop", list(&s.elements));
    describe_loop(&mut r, &q.quotient);
    r.result("projection", list(&q.projection));
    if let Some(p) = out {
        write(p, &write_table(&q.quotient))?;
        r.result("written", p.display());
    }
    Ok(r)
}

fn cmd_iso(a: &Path, b: &Path) -> CmdResult {
    let (l1, l2) = (load_table(a)?, load_table(b)?);
    let mut r = RunReport::new("iso");
    r.input("first", a.display()).input("second", b.display());
    match find_isomorphism(&l1, &l2) {
        Some(map) => {
            r.result("isomorphic", true).result("map", list(&map));
        }
        None => {
            r.result("isomorphic", false);
            r.status = 1;
        }
    }
    Ok(r)
}

fn cmd_aut(path: &Path, max_order: usize) -> CmdResult {
    let l = load_table(path)?;
    let rep = automorphisms(&l, max_order)?;
    let mut r = RunReport::new("aut");
    r.input("table", path.display()).input("max_order", max_order);
    r.result("order", rep.order)
        .result("generator_count", rep.generators.len());
    for (k, g) in rep.generators.iter().enumerate() {
        r.result(format!("generator.{}", k + 1), list(g));
    }
    Ok(r)
}

fn cmd_unique16(out_dir: &Path) -> CmdResult {
    let (rep, s16) = unique16()?;
    let sts = sts_from_loop(&s16)?;
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;
    let mut r = RunReport::new("unique16");
    r.input("out_dir", out_dir.display());
    r.result("free_order", rep.free_order)
        .result("free_center_order", rep.center_order)
        .result("quotient_count", rep.quotient_count)
        .result("subspaces", rep.subspaces.join(" "))
        .result("quotient_orders", list(&rep.quotient_orders))
        .result("all_steiner", rep.all_steiner)
        .result("all_non_associative", rep.all_non_associative)
        .result(
            "classes",
            rep.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
        )
        .result("isomorphisms_verified", rep.isomorphisms_verified)
        .result("pairwise_isomorphic", rep.pairwise_isomorphic)
        .result("order", s16.order())
        .result("center_order", rep.s16_center_order)
        .result("associator_subloop_order", rep.s16_associator_subloop_order)
        .result("nilpotency_class", rep.s16_class)
        .result("sts_points", sts.points())
        .result("sts_blocks", sts.blocks().len());
    write(&out_dir.join("s16.tbl"), &write_table(&s16))?;
    write(&out_dir.join("s16.sts"), &write_sts(&sts))?;
    write(&out_dir.join("report.txt"), &r.machine())?;
    Ok(r)
}

fn cmd_sts2loop(path: &Path, out: Option<&Path>) -> CmdResult {
    let s = parse_sts(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let mut r = RunReport::new("sts2loop");
    r.input("sts", path.display());
    let violations = validate_sts(&s);
    if !violations.is_empty() {
        r.result("valid", false);
        for (k, v) in violations.iter().enumerate() {
            r.result(format!("violation.{}", k + 1), v);
        }
        r.status = 1;
        return Ok(r);
    }
    let l = loop_from_sts(&s)?;
    r.result("valid", true);
    describe_loop(&mut r, &l);
    if let Some(p) = out {
        write(p, &write_table(&l))?;
        r.result("written", p.display());
    }
    Ok(r)
}

fn cmd_loop2sts(path: &Path, out: Option<&Path>) -> CmdResult {
    let l = load_table(path)?;
    let s = sts_from_loop(&l)?;
    let mut r = RunReport::new("loop2sts");
    r.input("table", path.display());
    r.result("points", s.points()).result("blocks", s.blocks().len());
    if let Some(p) = out {
        write(p, &write_sts(&s))?;
        r.result("written", p.display());
    }
    Ok(r)
}

fn load_cocycle(path: &Path) -> anyhow::Result<steiner_core::coho::Cocycle> {
    parse_cocycle(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn cmd_cocycle_check(path: &Path) -> CmdResult {
    let f = load_cocycle(path)?;
    let mut r = RunReport::new("cocycle-check");
    r.input("cocycle", path.display());
    r.result("n", f.n()).result("m", f.m());
    let violations = validate_cocycle(&f);
    r.result("valid", violations.is_empty())
        .result("violations", violations.len());
    if let Some(v) = violations.first() {
        r.result("first_violation", v);
        r.status = 1;
    } else {
        r.result("reduced", f.is_reduced());
    }
    Ok(r)
}

fn cmd_cocycle_decompose(path: &Path, reduced_out: Option<&Path>, shift_out: Option<&Path>) -> CmdResult {
    let f = load_cocycle(path)?;
    let d = decompose(&f)?;
    let mut r = RunReport::new("cocycle-decompose");
    r.input("cocycle", path.display());
    r.result("coboundary", d.reduced.is_zero());
    let reduced = write_cocycle(&d.reduced)?;
    let shift = write_cochain(&d.shift);
    r.result("reduced", reduced.trim_end()).result("shift", shift.trim_end());
    if let Some(p) = reduced_out {
        write(p, &reduced)?;
    }
    if let Some(p) = shift_out {
        write(p, &shift)?;
    }
    Ok(r)
}

fn cmd_extend(path: &Path, out: Option<&Path>) -> CmdResult {
    let f = load_cocycle(path)?;
    let ext = build_extension(&f)?;
    let mut r = RunReport::new("extend");
    r.input("cocycle", path.display());
    r.result("order_log2", ext.order_log2());
    match ext.table() {
        Ok(l) => {
            describe_loop(&mut r, l);
            if let Some(p) = out {
                write(p, &write_table(l))?;
                r.result("written", p.display());
            }
        }
        Err(_) => {
            r.result("backing", "rule");
        }
    }
    Ok(r)
}

fn cmd_word(expr: &str) -> CmdResult {
    let w = Word::parse(expr).map_err(|e| Failure::Input(e.into()))?;
    let n = normalize(&w);
    let mut r = RunReport::new("word");
    r.input("expr", expr);
    r.result("input_is_sword", is_sword(&w))
        .result("normal_form", &n)
        .result("length", n.len());
    Ok(r)
}

fn cmd_selftest(seed: u64, only: &[u32], quick: bool) -> CmdResult {
    let cfg = SelfTestConfig {
        seed,
        extended: !quick,
    };
    let ids: Vec<u32> = if only.is_empty() {
        selftest::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        only.to_vec()
    };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=12).contains(&i)) {
        bail_input(format!("no criterion {bad}"))?;
    }
    let outcomes: Vec<_> = ids
        .iter()
        .map(|&id| {
            let o = selftest::run_criterion(id, &cfg);
            eprintln!("{}", o.line());
            o
        })
        .collect();
    Ok(selftest::report(&outcomes, &cfg))
}

fn bail_input(msg: String) -> Result<(), Failure> {
    Err(Failure::Input(anyhow!(msg)))
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Dims { n_max } => cmd_dims(*n_max),
        Command::Free { n, out } => cmd_free(*n, out.as_deref()),
        Command::Analyze { table } => cmd_analyze(table),
        Command::Quotient {
            table,
            subspace,
            out,
        } => cmd_quotient(table, subspace, out.as_deref()),
        Command::Iso { first, second } => cmd_iso(first, second),
        Command::Aut { table, max_order } => cmd_aut(table, *max_order),
        Command::Unique16 { out_dir } => cmd_unique16(out_dir),
        Command::Sts2loop { sts, out } => cmd_sts2loop(sts, out.as_deref()),
        Command::Loop2sts { table, out } => cmd_loop2sts(table, out.as_deref()),
        Command::CocycleCheck { cocycle } => cmd_cocycle_check(cocycle),
        Command::CocycleDecompose {
            cocycle,
            reduced_out,
            shift_out,
        } => cmd_cocycle_decompose(cocycle, reduced_out.as_deref(), shift_out.as_deref()),
        Command::Extend { cocycle, out } => cmd_extend(cocycle, out.as_deref()),
        Command::Word { expr } => cmd_word(expr),
        Command::Selftest { only, quick } => cmd_selftest(cli.seed, only, *quick),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
    {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(mut r) => {
            r.elapsed = start.elapsed();
            if cli.machine {
                print!("{}", r.machine());
            } else {
                print!("{}", r.human());
            }
            ExitCode::from(r.status.clamp(0, 255) as u8)
        }
        Err(Failure::Verdict(e)) => {
            eprintln!("negative: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
