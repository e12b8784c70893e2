//! Command-line front end. `run` maps a parsed configuration to an exit code
//! and the bytes written to stdout and stderr, so tests need no subprocess.
//!
//! Exit codes: 0 success, 1 bad input or guard exceeded, 2 invariant breach.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genlie::braid_hecke::{BraidMonoid, HeckeAlgebra};
use genlie::defining_char::{DefiningContext, DEFAULT_WEIGHT_LIMIT};
use genlie::degeneration::{build_isomorphism, dg_cohomology_check, AbelianLGroup, DEFAULT_GROUP_LIMIT};
use genlie::ell_local::{sylow_structure_gl, sylow_structure_in};
use genlie::fock_llt::llt::MAX_N;
use genlie::fock_llt::{llt_canonical_basis_with_limit, FockMatrix};
use genlie::generic_order::{generic_order, generic_order_gl, CycloFactorization};
use genlie::root_datum::RootDatum;
use genlie::weyl::{WeylGroup, DEFAULT_WEYL_LIMIT};
use genlie::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

pub const GUARD_ENV: &str = "GENLIE_GUARDS";

#[derive(Parser, Debug, Clone)]
#[command(name = "genlie", version, about = "Exact invariants of finite groups of Lie type")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Print what the subcommand computes and exit.
    #[arg(long, global = true)]
    pub paper_ref: bool,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Guard overrides `key=value,...` (keys: weyl, weights, group, llt);
    /// merged over the environment variable GENLIE_GUARDS.
    #[arg(long, global = true)]
    pub guards: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct TypeQ {
    /// Type label such as A2, 2A3, 3D4, A1xG2.
    pub type_label: String,
    #[arg(long)]
    pub q: u64,
    /// Accepted for compatibility; JSON is the default format.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cyclotomic factorization of the generic order; GLn and GUn accepted.
    Order {
        type_label: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        ell: Option<u64>,
    },
    #[command(subcommand)]
    Weyl(WeylCommand),
    /// Sylow l-structure for l not dividing q; GLn and GUn accepted.
    Sylow {
        type_label: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Simple modules in defining characteristic grouped by central character.
    Blocks(TypeQ),
    /// Alperin weight strata.
    Alperin(TypeQ),
    /// Alternating sum over chains of parabolic subgroups.
    KrSum(TypeQ),
    #[command(subcommand)]
    Braid(BraidCommand),
    #[command(subcommand)]
    Hecke(HeckeCommand),
    /// Canonical basis of the level-one Fock space, weight n.
    Llt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Entries as Laurent polynomials in v (default).
        #[arg(long, conflicts_with = "at_1")]
        v: bool,
        /// Entries evaluated at v = 1.
        #[arg(long = "at-1")]
        at_1: bool,
    },
    /// Certificate for F_l P = S(V)/(v^{l^r}) and the dg cohomology check.
    Degenerate {
        #[arg(long)]
        ell: u64,
        /// Comma-separated r:n pairs, e.g. 1:2,2:1.
        #[arg(long)]
        factors: String,
        /// JSON file holding a list of square integer matrices generating E.
        #[arg(long = "E")]
        e_file: Option<std::path::PathBuf>,
        /// Internal degree bound for the dg check; default 2 max l^r.
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum WeylCommand {
    /// Twisted conjugacy classes.
    Classes { type_label: String },
    /// A d-regular element, if any.
    Regular {
        type_label: String,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum BraidCommand {
    /// Check (w_d phi)^d = pi phi^d in Garside normal form.
    VerifyRegular {
        type_label: String,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum HeckeCommand {
    /// Poincare polynomial sum_w x^{l(w)}.
    Poincare { type_label: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guards {
    pub weyl: u128,
    pub weights: u128,
    pub group: u128,
    pub llt: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { weyl: DEFAULT_WEYL_LIMIT, weights: DEFAULT_WEIGHT_LIMIT, group: DEFAULT_GROUP_LIMIT, llt: MAX_N }
    }
}

impl Guards {
    /// Apply `key=value` pairs separated by commas.
    pub fn apply(&mut self, spec: &str) -> Result<(), String> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| format!("guard override `{item}` is not key=value"))?;
            let n: u128 = v.trim().parse().map_err(|_| format!("guard value `{v}` is not an integer"))?;
            match k.trim() {
                "weyl" => self.weyl = n,
                "weights" => self.weights = n,
                "group" => self.group = n,
                "llt" => self.llt = n as usize,
                other => return Err(format!("unknown guard `{other}`")),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<Rendered, Failure>;

enum Rendered {
    Json(Value),
    /// JSON, a header row and labelled cell rows for CSV and table output.
    Matrix(Value, Vec<String>, Vec<Vec<String>>),
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

pub fn paper_ref(c: &Command) -> &'static str {
    match c {
        Command::Order { .. } => "generic order of a finite reductive group as a product of cyclotomic polynomials",
        Command::Weyl(_) => "Weyl groups, twisted conjugacy classes and d-regular elements",
        Command::Sylow { .. } => "Sylow l-subgroups from Phi_d-tori and d-split Levi subgroups",
        Command::Blocks(_) => "simple modules and blocks in defining characteristic",
        Command::Alperin(_) => "Alperin weights in defining characteristic",
        Command::KrSum(_) => "Knorr-Robinson alternating sum over parabolic chains",
        Command::Braid(_) => "lifts of regular elements to the braid monoid",
        Command::Hecke(_) => "Iwahori-Hecke algebra and its specializations",
        Command::Llt { .. } => "Fock space canonical basis and decomposition matrices for GL_n",
        Command::Degenerate { .. } => "degeneration of group algebras of abelian l-groups",
    }
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    run_with_env(cfg, std::env::var(GUARD_ENV).ok().as_deref())
}

pub fn run_with_env(cfg: &RunConfig, env_guards: Option<&str>) -> RunOutput {
    if cfg.paper_ref {
        return RunOutput { code: 0, stdout: format!("{}\n", paper_ref(&cfg.command)), stderr: String::new() };
    }
    let mut guards = Guards::default();
    for spec in [env_guards, cfg.guards.as_deref()].into_iter().flatten() {
        if let Err(msg) = guards.apply(spec) {
            return usage_error(&msg);
        }
    }
    match dispatch(cfg, &guards) {
        Ok(r) => match render(r, cfg.format) {
            Ok(s) => RunOutput { code: 0, stdout: s, stderr: String::new() },
            Err(msg) => usage_error(&msg),
        },
        Err(Failure::Usage(msg)) => usage_error(&msg),
        Err(Failure::Lib(e)) => {
            let code = if e.is_invariant_breach() { 2 } else { 1 };
            let body = match &e {
                Error::InvariantBreach { module, invariant, detail } => {
                    json!({"error": "invariant_breach", "module": module, "invariant": invariant, "detail": detail})
                }
                Error::GuardExceeded { module, predicted, limit } => json!({
                    "error": "guard_exceeded", "module": module,
                    "predicted": predicted.to_string(), "limit": limit.to_string(),
                    "hint": format!("raise it with {GUARD_ENV} or --guards"),
                }),
                Error::BadInput { module, msg } => json!({"error": "bad_input", "module": module, "message": msg}),
                Error::UnsupportedType(_) | Error::NotFrobenius(_) => {
                    json!({"error": "bad_input", "module": "root_datum", "message": e.to_string()})
                }
            };
            RunOutput { code, stdout: String::new(), stderr: format!("{body}\n") }
        }
    }
}

fn usage_error(msg: &str) -> RunOutput {
    RunOutput { code: 1, stdout: String::new(), stderr: format!("{}\n", json!({"error": "bad_input", "module": "cli", "message": msg})) }
}

fn render(r: Rendered, f: Format) -> Result<String, String> {
    match (r, f) {
        (Rendered::Json(v) | Rendered::Matrix(v, ..), Format::Json) => Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap())),
        (Rendered::Matrix(_, head, rows), Format::Csv) => Ok(csv(&head, &rows)),
        (Rendered::Json(_), Format::Csv) => Err("csv output is only available for llt".into()),
        (Rendered::Matrix(_, head, rows), Format::Table) => Ok(grid(&head, &rows)),
        (Rendered::Json(v), Format::Table) => Ok(table(&v)),
    }
}

fn csv(head: &[String], rows: &[Vec<String>]) -> String {
    let quote = |c: &String| format!("\"{}\"", c.replace('"', "\"\""));
    let mut s = String::new();
    for r in std::iter::once(head).chain(rows.iter().map(Vec::as_slice)) {
        let _ = writeln!(s, "{}", r.iter().map(quote).collect::<Vec<_>>().join(","));
    }
    s
}

/// Right-aligned columns.
fn grid(head: &[String], rows: &[Vec<String>]) -> String {
    let all: Vec<&[String]> = std::iter::once(head).chain(rows.iter().map(Vec::as_slice)).collect();
    let widths: Vec<usize> = (0..head.len()).map(|j| all.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for r in all {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}

/// One `key  value` line per top-level field.
fn table(v: &Value) -> String {
    let mut s = String::new();
    match v {
        Value::Object(m) => {
            let w = m.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, x) in m {
                let shown = match x {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(s, "{k:<w$}  {shown}");
            }
        }
        other => {
            let _ = writeln!(s, "{other}");
        }
    }
    s
}

/// `GL<n>` / `GU<n>` labels.
fn gl_label(label: &str) -> Option<(usize, bool)> {
    let (rest, unitary) = if let Some(r) = label.strip_prefix("GL") {
        (r, false)
    } else {
        let r = label.strip_prefix("GU")?;
        (r, true)
    };
    rest.parse().ok().filter(|&n| n >= 1).map(|n| (n, unitary))
}

fn weyl(label: &str, g: &Guards) -> Result<WeylGroup, Failure> {
    Ok(WeylGroup::generate_with_limit(&RootDatum::build(label)?, g.weyl)?)
}

fn order_json(label: &str, f: &CycloFactorization, q: Option<u64>, ell: Option<u64>) -> Out {
    let mut out = json!({
        "type": label,
        "qpower": f.qpower,
        "exponents": f.exponents.iter().map(|(d, a)| (d.to_string(), json!(a))).collect::<serde_json::Map<_, _>>(),
    });
    if let Some(q) = q {
        out["value"] = json!(f.evaluate(q)?.to_string());
        if let Some(l) = ell {
            let (d, nu) = f.ell_part(q, l)?;
            out["d"] = json!(d);
            out["nu"] = json!(nu);
        }
    } else if ell.is_some() {
        return Err(Failure::Usage("--ell requires --q".into()));
    }
    Ok(Rendered::Json(out))
}

fn dispatch(cfg: &RunConfig, g: &Guards) -> Out {
    match &cfg.command {
        Command::Order { type_label, q, ell } => {
            let f = match gl_label(type_label) {
                Some((n, u)) => generic_order_gl(n, u)?,
                None => generic_order(&RootDatum::build(type_label)?)?,
            };
            order_json(type_label, &f, *q, *ell)
        }
        Command::Weyl(WeylCommand::Classes { type_label }) => {
            let w = weyl(type_label, g)?;
            let classes: Vec<Value> = w
                .f_conjugacy_classes()
                .iter()
                .map(|c| {
                    let r = w.element(c.representative());
                    json!({"representative": r.word, "length": r.length, "size": c.members.len()})
                })
                .collect();
            Ok(Rendered::Json(json!({
                "type": type_label,
                "order": w.order(),
                "datum": to_value(&w.datum.summary()),
                "classes": classes,
            })))
        }
        Command::Weyl(WeylCommand::Regular { type_label, d }) => {
            let w = weyl(type_label, g)?;
            Ok(Rendered::Json(match w.regular_elements(*d)? {
                Some(r) => json!({"type": type_label, "d": d, "regular": true, "report": to_value(&r)}),
                None => json!({"type": type_label, "d": d, "regular": false}),
            }))
        }
        Command::Sylow { type_label, q, ell } => {
            let r = match gl_label(type_label) {
                Some((n, u)) => sylow_structure_gl(n, u, *q, *ell)?,
                None => sylow_structure_in(&weyl(type_label, g)?, *q, *ell)?,
            };
            Ok(Rendered::Json(to_value(&r)))
        }
        Command::Blocks(a) => {
            let d = RootDatum::build(&a.type_label)?;
            let t = DefiningContext::with_limit(&d, a.q, g.weights)?.block_partition()?;
            let trivial = t.blocks.iter().filter(|b| b.zeta.is_trivial()).map(|b| b.weights.len()).sum::<usize>();
            let nontrivial = t.blocks.iter().filter(|b| !b.zeta.is_trivial()).map(|b| b.weights.len()).sum::<usize>();
            let mut v = json!({
                "type": a.type_label,
                "counts": {"trivial": trivial, "nontrivial": nontrivial, "defect_zero": t.defect_zero.len()},
            });
            v["table"] = to_value(&t);
            Ok(Rendered::Json(v))
        }
        Command::Alperin(a) => {
            let d = RootDatum::build(&a.type_label)?;
            Ok(Rendered::Json(to_value(&DefiningContext::with_limit(&d, a.q, g.weights)?.alperin_weights()?)))
        }
        Command::KrSum(a) => {
            let d = RootDatum::build(&a.type_label)?;
            Ok(Rendered::Json(to_value(&DefiningContext::with_limit(&d, a.q, g.weights)?.knorr_robinson_sum()?)))
        }
        Command::Braid(BraidCommand::VerifyRegular { type_label, d }) => {
            let m = BraidMonoid::from_weyl(weyl(type_label, g)?);
            let r = m.verify_regular_braid_identity(*d)?;
            if !r.holds {
                return Err(Failure::Lib(Error::InvariantBreach {
                    module: "braid_hecke",
                    invariant: "(w_d phi)^d = pi phi^d",
                    detail: format!("{type_label} d={d}"),
                }));
            }
            Ok(Rendered::Json(to_value(&r)))
        }
        Command::Hecke(HeckeCommand::Poincare { type_label }) => {
            let h = HeckeAlgebra::from_weyl(weyl(type_label, g)?);
            let p = h.poincare();
            if p.eval(1) != Some(h.weyl.order() as i64) {
                return Err(Failure::Lib(Error::InvariantBreach {
                    module: "braid_hecke",
                    invariant: "P(1) = |W|",
                    detail: type_label.clone(),
                }));
            }
            Ok(Rendered::Json(json!({"type": type_label, "order": h.weyl.order(), "poincare": to_value(&p)})))
        }
        Command::Llt { n, d, at_1, .. } => {
            let m = llt_canonical_basis_with_limit(*n, *d, g.llt)?;
            Ok(llt_output(&m, *at_1))
        }
        Command::Degenerate { ell, factors, e_file, bound } => degenerate(*ell, factors, e_file.as_deref(), *bound, cfg.seed, g),
    }
}

fn llt_output(m: &FockMatrix, at_1: bool) -> Rendered {
    let labels: Vec<String> = m.partitions.iter().map(|p| p.to_string()).collect();
    let cells: Vec<Vec<String>> = if at_1 {
        m.at_one().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    } else {
        m.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    };
    let matrix: Value = if at_1 {
        json!(m.at_one())
    } else {
        Value::Array(m.entries.iter().map(|r| Value::Array(r.iter().map(to_value).collect())).collect())
    };
    let head: Vec<String> = std::iter::once("lambda\\mu".to_string()).chain(labels.iter().cloned()).collect();
    let rows: Vec<Vec<String>> = labels
        .iter()
        .zip(&cells)
        .map(|(l, r)| std::iter::once(l.clone()).chain(r.iter().cloned()).collect())
        .collect();
    let v = json!({
        "n": m.n,
        "d": m.d,
        "entries": if at_1 { "v=1" } else { "laurent" },
        "partitions": labels,
        "matrix": matrix,
        "note": "entry [row][col] is the coefficient of |row> in G(col)",
    });
    Rendered::Matrix(v, head, rows)
}

fn parse_factors(s: &str) -> Result<Vec<(u32, usize)>, Failure> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|item| {
            let (r, n) = item.split_once(':').ok_or_else(|| Failure::Usage(format!("factor `{item}` is not r:n")))?;
            let r = r.trim().parse().map_err(|_| Failure::Usage(format!("bad exponent in `{item}`")))?;
            let n = n.trim().parse().map_err(|_| Failure::Usage(format!("bad multiplicity in `{item}`")))?;
            Ok((r, n))
        })
        .collect()
}

fn degenerate(ell: u64, factors: &str, e_file: Option<&std::path::Path>, bound: Option<usize>, seed: u64, g: &Guards) -> Out {
    let f = parse_factors(factors)?;
    let e: Vec<Vec<Vec<i64>>> = match e_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => Vec::new(),
    };
    let p = AbelianLGroup::with_limit(ell, f, e, g.group)?;
    let iso = build_isomorphism(&p)?;
    let b = bound.unwrap_or(2 * p.moduli().iter().copied().max().unwrap_or(0) as usize);
    let dg = dg_cohomology_check(&p, b)?;

    // seeded multiplicativity spot check on random pairs
    let mut rng = StdRng::seed_from_u64(seed);
    let dim = iso.algebra.dim();
    let sparse = |rng: &mut StdRng| -> Vec<u64> {
        let mut x = vec![0u64; dim];
        for _ in 0..3 {
            x[rng.random_range(0..dim)] = rng.random_range(1..ell.max(2)) % ell;
        }
        x
    };
    let mut spot = 0;
    for _ in 0..8 {
        let (a, b) = (sparse(&mut rng), sparse(&mut rng));
        let lhs = iso.apply(&iso.algebra.mul(&a, &b));
        let rhs = iso.group_algebra().mul(&iso.apply(&a), &iso.apply(&b));
        if lhs != rhs {
            return Err(Failure::Lib(Error::InvariantBreach {
                module: "degeneration",
                invariant: "phi(xy) = phi(x) phi(y)",
                detail: format!("seed {seed}"),
            }));
        }
        spot += 1;
    }
    let summary: BTreeMap<&str, Value> = BTreeMap::from([
        ("certificate", to_value(&iso.certificate)),
        ("dg", to_value(&dg)),
        ("multiplicative_spot_checks", json!(spot)),
        ("seed", json!(seed)),
    ]);
    Ok(Rendered::Json(to_value(&summary)))
}
