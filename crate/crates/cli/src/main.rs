mod expr;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motcalc::chow_theory::{axiom_suite, duality_check, ChowInstance, CycleClass, HomMatrix, Report};
use motcalc::diagram_cat::{random_morphism, GeneratorTable, RigidCategory, Word};
use motcalc::exact_linalg::{format_scalar, int, pfaffian, schur_weyl_dim, RationalMatrix, Scalar};
use motcalc::exterior_model::SymplecticSpace;
use motcalc::karoubi_kimura::{
    antisymmetrizer, cayley_hamilton_check, ext_power, hom_space, hopf_axiom_check, in_radical, kimura_incl_excl_check,
    poscontr_identity_check, quotient_hom, radical_subspace, rank, sym_hopf, sym_power, FormalObject, QuotientSpec,
};
use motcalc::symdist::{
    canonical_lift, default_m_max, is_symmetrically_distinguished, perturbation_grid, theoretical_bound,
    uniqueness_probe, SpanSummary,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const SCHEMA: &str = "motcalc/1";

#[derive(Parser)]
#[command(
    name = "motcalc",
    version,
    about = "Exact diagram calculus and Chow models of abelian varieties"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension of a hom space of the free rigid category.
    Homdim {
        #[arg(long, default_value = "N:-2")]
        gens: String,
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[command(flatten)]
        common: Common,
    },
    /// Rank of a word or of one of its symmetric or exterior powers.
    Rank {
        #[arg(long, default_value = "N:-2")]
        gens: String,
        #[arg(long, default_value = "N")]
        word: String,
        #[arg(long, value_enum, default_value = "whole")]
        kind: PowerKind,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Radical of End(word) and the dimension of the semisimple quotient.
    Radical {
        #[arg(long, default_value = "N:-2")]
        gens: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension of the r-th tensor power of an n-dimensional space's commutant.
    SchurWeyl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Also compute End(N^r) modulo the antisymmetrizer ideal and compare.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Hopf algebra identities for Sym(N) with N of rank -2g.
    HopfCheck {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        deg: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Named identity families.
    Identities {
        #[arg(long, value_enum)]
        which: Identity,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        g: usize,
        /// Largest matrix size for the Pfaffian law.
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        mmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Chow theory axioms on random classes.
    ChowAxioms {
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 2)]
        mmax: usize,
        #[arg(long, default_value_t = 100)]
        tuples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Symmetric distinction of a class expression.
    Symdist {
        #[arg(value_enum)]
        action: SymdistAction,
        #[arg(long)]
        config: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        mmax: Option<usize>,
        /// Allow m_max above the default cap.
        #[arg(long)]
        full_bound: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PowerKind {
    Whole,
    Sym,
    Ext,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    InclExcl,
    Pfaffian,
    CayleyHamilton,
    Poscontr,
    Diagpull,
    Duality,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymdistAction {
    Test,
    Lift,
    Probe,
}

/// Outcome with its exit code.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Status {
    Pass,
    Negative,
    Inconsistent,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Negative => 1,
            Status::Inconsistent => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Model(String),
}

macro_rules! input {
    ($e:expr) => {
        $e.map_err(|e| CliError::Input(e.to_string()))?
    };
}

macro_rules! model {
    ($e:expr) => {
        $e.map_err(|e| CliError::Model(e.to_string()))?
    };
}

struct Output {
    status: Status,
    json: Value,
    text: Vec<String>,
}

impl Output {
    fn new(status: Status, json: Value, text: Vec<String>) -> Self {
        Output { status, json, text }
    }
}

fn checks_output(checks: &[(String, bool)], witnesses: &[String], extra: Value) -> Output {
    let pass = checks.iter().all(|(_, ok)| *ok);
    let width = checks.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    let mut text: Vec<String> = checks
        .iter()
        .map(|(n, ok)| format!("{n:<width$}  {}", if *ok { "pass" } else { "FAIL" }))
        .collect();
    text.extend(witnesses.iter().map(|w| format!("witness: {w}")));
    let mut json = json!({
        "pass": pass,
        "checks": checks.iter().map(|(n, ok)| json!({"name": n, "pass": ok})).collect::<Vec<_>>(),
        "witnesses": witnesses,
    });
    if let (Value::Object(a), Value::Object(b)) = (&mut json, extra) {
        a.extend(b);
    }
    Output::new(if pass { Status::Pass } else { Status::Inconsistent }, json, text)
}

fn report_output(rep: &Report, extra: Value) -> Output {
    checks_output(&rep.checks, &rep.witnesses, extra)
}

fn category(gens: &str) -> Result<(GeneratorTable, RigidCategory), CliError> {
    let table = input!(GeneratorTable::parse(gens));
    Ok((table.clone(), RigidCategory::new(table)))
}

fn load_instance(config: &str) -> Result<Arc<ChowInstance>, CliError> {
    let text = if config.trim_start().starts_with('{') {
        config.to_string()
    } else {
        input!(std::fs::read_to_string(config).map_err(|e| format!("{config}: {e}")))
    };
    Ok(input!(ChowInstance::parse_config(&text)))
}

fn show(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format_scalar(x)
    }
}

fn scalar_json(x: &Scalar) -> Value {
    Value::String(show(x))
}

fn homdim(gens: &str, src: &str, dst: &str) -> Result<Output, CliError> {
    let (table, cat) = category(gens)?;
    let (s, d) = (input!(table.parse_word(src)), input!(table.parse_word(dst)));
    let dim = cat.hom_basis(&s, &d).len();
    Ok(Output::new(
        Status::Pass,
        json!({"src": src, "dst": dst, "dim": dim}),
        vec![dim.to_string()],
    ))
}

fn power_object(cat: &RigidCategory, word: Word, kind: PowerKind, r: usize) -> Result<FormalObject, CliError> {
    let base = FormalObject::whole(word);
    Ok(match kind {
        PowerKind::Whole => base.power(r),
        PowerKind::Sym => model!(sym_power(cat, &base, r)),
        PowerKind::Ext => model!(ext_power(cat, &base, r)),
    })
}

fn rank_cmd(gens: &str, word: &str, kind: PowerKind, r: usize) -> Result<Output, CliError> {
    let (table, cat) = category(gens)?;
    let x = power_object(&cat, input!(table.parse_word(word)), kind, r)?;
    let value = model!(rank(&cat, &x));
    Ok(Output::new(
        Status::Pass,
        json!({"word": word, "r": r, "rank": scalar_json(&value)}),
        vec![show(&value)],
    ))
}

fn radical_cmd(gens: &str, word: &str) -> Result<Output, CliError> {
    let (table, cat) = category(gens)?;
    let x = FormalObject::whole(input!(table.parse_word(word)));
    let ambient = model!(hom_space(&cat, &x, &x)).len();
    let rad = model!(radical_subspace(&cat, &x, &x));
    let mut status = Status::Pass;
    for f in &rad {
        if !model!(in_radical(&cat, &x, &x, f)) {
            status = Status::Inconsistent;
        }
    }
    let json =
        json!({"word": word, "ambient_dim": ambient, "radical_dim": rad.len(), "quotient_dim": ambient - rad.len()});
    let text = vec![
        format!("ambient   {ambient}"),
        format!("radical   {}", rad.len()),
        format!("quotient  {}", ambient - rad.len()),
    ];
    Ok(Output::new(status, json, text))
}

fn schur_weyl(n: usize, r: usize, check: bool) -> Result<Output, CliError> {
    let dim = schur_weyl_dim(n, r);
    let mut json = json!({"n": n, "r": r, "dim": dim.to_string()});
    let mut text = vec![dim.to_string()];
    let mut status = Status::Pass;
    if check {
        let cat = RigidCategory::single(-((n + 1) as i64));
        let x = FormalObject::whole(Word::power(0, r));
        let spec = if r > n {
            QuotientSpec::Ideal(vec![antisymmetrizer(n + 1, &Word::power(0, 1))])
        } else {
            QuotientSpec::None
        };
        let q = model!(quotient_hom(&cat, &x, &x, &spec));
        let agree = num_bigint::BigInt::from(q.dim()) == dim;
        json["quotient_dim"] = json!(q.dim());
        text.push(format!(
            "quotient {} ({})",
            q.dim(),
            if agree { "agrees" } else { "DISAGREES" }
        ));
        if !agree {
            status = Status::Inconsistent;
        }
    }
    Ok(Output::new(status, json, text))
}

fn hopf_check(g: usize, deg: usize) -> Result<Output, CliError> {
    if g == 0 {
        return Err(CliError::Input("g must be positive".into()));
    }
    let h = model!(sym_hopf(g, deg));
    let rep = model!(hopf_axiom_check(&h, deg));
    Ok(checks_output(&rep.checks, &[], json!({"g": g, "deg": deg})))
}

fn random_skew<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = int(rng.gen_range(-3..=3));
            m.set(i, j, v.clone());
            m.set(j, i, -v);
        }
    }
    m
}

fn identities(which: Identity, n: usize, g: usize, size: usize, mmax: usize, seed: u64) -> Result<Output, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    match which {
        Identity::InclExcl => {
            for k in 1..=n {
                checks.push((format!("n={k}"), input!(kimura_incl_excl_check(k))));
            }
        }
        Identity::Pfaffian => {
            for k in (2..=size).step_by(2) {
                let mut ok = true;
                for _ in 0..3 {
                    let a = random_skew(&mut rng, k);
                    let pf = model!(pfaffian(&a));
                    if pf.clone() * pf != a.det() {
                        ok = false;
                        witnesses.push(format!("size {k}: {a:?}"));
                    }
                }
                checks.push((format!("pf^2 = det, size {k}"), ok));
            }
            for k in 1..=g {
                checks.push((
                    format!("pf(omega) = 1, g={k}"),
                    SymplecticSpace::new(k).pfaffian() == int(1),
                ));
            }
        }
        Identity::CayleyHamilton => {
            let table = GeneratorTable::single(-2);
            let cat = RigidCategory::new(table.clone());
            let n_obj = FormalObject::whole(Word::power(0, 1));
            let cases = [
                ("N,N*", FormalObject::whole(input!(table.parse_word("N,N*"))), 4),
                ("N,N", FormalObject::whole(Word::power(0, 2)), 4),
                ("ext2 N", model!(ext_power(&cat, &n_obj, 2)), 3),
                ("sym2 N", model!(sym_power(&cat, &n_obj, 2)), 1),
            ];
            for (name, x, m) in cases {
                let mut ok = true;
                for _ in 0..2 {
                    let f = random_morphism(&mut rng, &x.word, &x.word, 3);
                    let res = model!(cayley_hamilton_check(&cat, &x, &f, m));
                    ok &= model!(in_radical(&cat, &x, &x, &res));
                }
                checks.push((format!("{name}, degree {m}"), ok));
            }
        }
        Identity::Poscontr => {
            let cases = [
                ("L:-2,M:3", PowerKind::Sym, "M", "M,M"),
                ("L:2,M:-1", PowerKind::Whole, "M", "M"),
                ("L:-2,M:1", PowerKind::Ext, "M", "1"),
            ];
            for (gens, kind, np, nn) in cases {
                let (table, cat) = category(gens)?;
                let l = power_object(
                    &cat,
                    input!(table.parse_word("L")),
                    kind,
                    if matches!(kind, PowerKind::Whole) { 1 } else { 2 },
                )?;
                let src = input!(table.parse_word(np)).concat(&l.word);
                let dst = input!(table.parse_word(nn)).concat(&l.word);
                let d = model!(rank(&cat, &l));
                let mut ok = true;
                for _ in 0..2 {
                    let f = random_morphism(&mut rng, &src, &dst, 4);
                    ok &= model!(poscontr_identity_check(&cat, &l, &f));
                }
                checks.push((format!("{gens} rank {}", show(&d)), ok));
            }
        }
        Identity::Diagpull => {
            let inst = ChowInstance::numerical(g);
            let iota = model!(CycleClass::iota(&inst, 1));
            let diag = model!(CycleClass::diagonal(&inst, 1));
            for (r, s) in [(1i64, 0i64), (2, 1), (3, -1), (-2, 1), (2, 2)] {
                let f = HomMatrix::from_rows(1, &[vec![r], vec![s]]);
                let expect = iota.scale(&int(r - s).pow(2 * g as i32));
                checks.push((format!("({r},{s})"), model!(diag.pullback(&f)) == expect));
            }
            let back = model!(iota.pullback(&HomMatrix::zero(1, 0)));
            checks.push(("iota^* iota_* 1 = 0".into(), back.is_zero()));
        }
        Identity::Duality => {
            let inst = ChowInstance::numerical(g);
            for m in 1..=mmax {
                for (name, ok) in model!(duality_check(&inst, m)) {
                    checks.push((format!("m={m} {name}"), ok));
                }
            }
        }
    }
    Ok(checks_output(&checks, &witnesses, json!({})))
}

fn chow_axioms(config: &str, mmax: usize, tuples: usize, seed: u64) -> Result<Output, CliError> {
    let inst = load_instance(config)?;
    input!(inst.check_power(2 * mmax));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = model!(axiom_suite(&inst, mmax, tuples, &mut rng));
    Ok(report_output(&rep, json!({"mmax": mmax, "tuples": tuples})))
}

fn symdist(
    action: SymdistAction,
    config: &str,
    alpha: &str,
    mmax: Option<usize>,
    full: bool,
) -> Result<Output, CliError> {
    let inst = load_instance(config)?;
    let cap = default_m_max(inst.g);
    let mmax = mmax.unwrap_or(cap);
    if mmax > cap && !full {
        return Err(CliError::Input(format!(
            "--mmax {mmax} exceeds the default cap {cap}; pass --full-bound"
        )));
    }
    input!(inst.check_power(mmax));
    let bound = theoretical_bound(inst.g);
    match action {
        SymdistAction::Test => {
            let a = input!(expr::parse_class(alpha, &inst));
            let d = input!(is_symmetrically_distinguished(&a, mmax));
            let reports: Vec<SpanSummary> = d.reports.iter().map(SpanSummary::from).collect();
            let last = reports.last().expect("m = 0 is always tested");
            let json = json!({
                "alpha": a.to_text(),
                "m": last.m,
                "span_dim": last.span_dim,
                "image_dim": last.image_dim,
                "injective": d.passes,
                "fail_at_m": d.fail_at,
                "witness": last.witness,
                "m_max": mmax,
                "theoretical_bound": bound,
                "reports": reports,
            });
            let mut text: Vec<String> = reports
                .iter()
                .map(|r| {
                    format!(
                        "m={}  span {}  image {}  {}",
                        r.m,
                        r.span_dim,
                        r.image_dim,
                        if r.injective { "injective" } else { "NOT injective" }
                    )
                })
                .collect();
            if let Some(w) = &last.witness {
                text.push(format!("witness: {w}"));
            }
            text.push(format!(
                "{} up to m = {mmax} (theoretical bound {bound})",
                if d.passes { "distinguished" } else { "not distinguished" }
            ));
            Ok(Output::new(
                if d.passes { Status::Pass } else { Status::Negative },
                json,
                text,
            ))
        }
        SymdistAction::Lift => {
            let num = inst.numerical_quotient();
            let bar = input!(expr::parse_class(alpha, &num));
            let lift = model!(canonical_lift(&bar, &inst, mmax));
            let json =
                json!({"alpha": bar.to_text(), "lift": lift.to_text(), "m_max": mmax, "theoretical_bound": bound});
            Ok(Output::new(Status::Pass, json, vec![lift.to_text()]))
        }
        SymdistAction::Probe => {
            let num = inst.numerical_quotient();
            let bar = input!(expr::parse_class(alpha, &num));
            let grid = input!(perturbation_grid(&inst, bar.p));
            let results = input!(uniqueness_probe(&bar, &inst, &grid, mmax));
            let survivors = results.iter().filter(|r| r.fail_at.is_none()).count();
            let rows: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "perturbation": r.perturbation.to_text(),
                        "fail_at_m": r.fail_at,
                        "witness": r.witness.as_ref().map(CycleClass::to_text),
                    })
                })
                .collect();
            let mut text: Vec<String> = results
                .iter()
                .map(|r| match r.fail_at {
                    Some(m) => format!("{}  fails at m={m}", r.perturbation.to_text()),
                    None => format!("{}  SURVIVES", r.perturbation.to_text()),
                })
                .collect();
            text.push(format!("{survivors} survivors among {} perturbations", results.len()));
            let json = json!({"alpha": bar.to_text(), "m_max": mmax, "theoretical_bound": bound, "survivors": survivors, "results": rows});
            Ok(Output::new(
                if survivors == 0 {
                    Status::Pass
                } else {
                    Status::Inconsistent
                },
                json,
                text,
            ))
        }
    }
}

fn run(cmd: Cmd) -> (Common, &'static str, Result<Output, CliError>) {
    match cmd {
        Cmd::Homdim { gens, src, dst, common } => (common, "homdim", homdim(&gens, &src, &dst)),
        Cmd::Rank {
            gens,
            word,
            kind,
            r,
            common,
        } => (common, "rank", rank_cmd(&gens, &word, kind, r)),
        Cmd::Radical { gens, word, common } => (common, "radical", radical_cmd(&gens, &word)),
        Cmd::SchurWeyl { n, r, check, common } => (common, "schur-weyl", schur_weyl(n, r, check)),
        Cmd::HopfCheck { g, deg, common } => (common, "hopf-check", hopf_check(g, deg)),
        Cmd::Identities {
            which,
            n,
            g,
            size,
            mmax,
            common,
        } => {
            let seed = common.seed;
            (common, "identities", identities(which, n, g, size, mmax, seed))
        }
        Cmd::ChowAxioms {
            config,
            mmax,
            tuples,
            common,
        } => {
            let seed = common.seed;
            (common, "chow-axioms", chow_axioms(&config, mmax, tuples, seed))
        }
        Cmd::Symdist {
            action,
            config,
            alpha,
            mmax,
            full_bound,
            common,
        } => (common, "symdist", symdist(action, &config, &alpha, mmax, full_bound)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, name, result) = run(cli.cmd);
    match result {
        Ok(out) => {
            if common.json {
                let mut json = out.json;
                json["schema"] = json!(SCHEMA);
                json["command"] = json!(name);
                json["seed"] = json!(common.seed);
                json["status"] = json!(out.status.code());
                println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
            } else {
                for line in out.text {
                    println!("{line}");
                }
            }
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            let code = match e {
                CliError::Input(_) => 2,
                CliError::Model(_) => 3,
            };
            if common.json {
                let json = json!({"schema": SCHEMA, "command": name, "status": code, "error": e.to_string()});
                println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
            }
            eprintln!("motcalc {name}: {e}");
            ExitCode::from(code)
        }
    }
}
