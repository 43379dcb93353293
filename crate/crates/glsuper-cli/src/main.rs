//! `glsuper` command line front end.
//!
//! Every subcommand produces a [`Report`]; `--json` wraps it in an envelope
//! with the convention string, the interval used and the truncation
//! parameters, `--tsv` prints tab separated rows (`j<TAB>value` for
//! sequences).

use clap::{Args, Parser, Subcommand, ValueEnum};
use glsuper::assoc_variety::{membership, s_of_simple, s_of_verma, RootSet, VarietyAnswer};
use glsuper::atlas::{block_fingerprint, flat_table, projective_self_multiplicity};
use glsuper::complexity::{c_n_simple, complexity_simple, complexity_verma, GrowthEstimate};
use glsuper::homology::{
    fin_dim_block, max_pd_injective_in_block, pd_injective, pd_typical, ModuleKind, PdValue, A_CONVENTION,
};
use glsuper::interval::{dominant_length, length_fn, minimal_interval};
use glsuper::par::Exec;
use glsuper::super_kl::{CONVENTION, DEFAULT_MAX_WEIGHTS, FORMAT_VERSION};
use glsuper::weights::{atypicality, bruhat_leq, bruhat_lower_covers, core, dominance_class, z_grade};
use glsuper::{Algebra, AlgebraKind, Engine, Error, Interval, LaurentPoly, Weight};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

mod selftest;

#[derive(Parser)]
#[command(
    name = "glsuper",
    version,
    about = "Kazhdan-Lusztig data and homological invariants for category O of gl(m|n)"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Algebra family.
    #[arg(long, value_enum, default_value_t = Family::Gl, global = true)]
    algebra: Family,
    /// Rank of the even part on the left; inferred from the first weight if omitted.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Rank of the even part on the right; inferred from the first weight if omitted.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Machine readable JSON output.
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Tab separated output.
    #[arg(long, global = true)]
    tsv: bool,
    /// Largest cohomological degree for sequences.
    #[arg(long, default_value_t = 10, global = true)]
    jmax: u32,
    /// Label interval `a:b` for table commands.
    #[arg(long, global = true, value_parser = parse_interval, allow_hyphen_values = true)]
    interval: Option<Interval>,
    /// Directory for the persistent table cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on the number of weights in one block table.
    #[arg(long, default_value_t = DEFAULT_MAX_WEIGHTS, global = true)]
    max_weights: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gl,
    Sl,
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    Interval::parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Properties of a single weight.
    Weight {
        #[command(subcommand)]
        op: WeightOp,
    },
    /// The Bruhat order.
    Bruhat {
        #[command(subcommand)]
        op: BruhatOp,
    },
    /// Length of a comparable pair `lo <= hi`.
    Length {
        #[arg(allow_hyphen_values = true)]
        hi: String,
        #[arg(allow_hyphen_values = true)]
        lo: String,
    },
    /// Kazhdan-Lusztig tables.
    Kl {
        #[command(subcommand)]
        op: KlOp,
    },
    /// Ext dimensions.
    Ext {
        #[command(subcommand)]
        op: ExtOp,
    },
    /// Projective dimensions.
    Pd {
        #[command(subcommand)]
        op: PdOp,
    },
    /// Finitistic dimension of the block of a weight.
    Findim {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Growth rates of minimal resolutions.
    Complexity {
        #[command(subcommand)]
        op: ComplexityOp,
    },
    /// Associated variety: sets of orthogonal odd roots.
    Assocvar {
        #[arg(allow_hyphen_values = true)]
        weight: String,
        /// Ask about the simple module instead of the Verma module.
        #[arg(long)]
        simple: bool,
        /// Decide membership of one set, e.g. `{e1-d1,e2-d2}`.
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
    },
    /// Labeled path fingerprint of the sl(3|1) block `p`.
    Blockgraph {
        p: i64,
        /// Nodes on each side of the exceptional range.
        #[arg(long)]
        window: Option<i64>,
        /// Recompute every label from the tables.
        #[arg(long)]
        verify: bool,
    },
    /// Reproduce the pinned fixtures; nonzero exit on any mismatch.
    Selftest,
}

#[derive(Subcommand)]
enum WeightOp {
    Info {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
}

#[derive(Subcommand)]
enum BruhatOp {
    /// Is `lo <= hi`?
    Leq {
        #[arg(allow_hyphen_values = true)]
        lo: String,
        #[arg(allow_hyphen_values = true)]
        hi: String,
    },
    /// Weights covered by `weight`.
    Covers {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
}

#[derive(Subcommand)]
enum KlOp {
    /// Nonzero entries of D and P on the block of `seed`.
    Table {
        #[arg(allow_hyphen_values = true)]
        seed: String,
    },
    /// `d_{mu,lambda}` and `p_{mu,lambda}` for one pair.
    Entry {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Subcommand)]
enum ExtOp {
    /// `dim Ext^j(M(lambda), L(nu))`.
    Verma {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        nu: String,
        /// Single degree; otherwise `0..=jmax`.
        #[arg(long)]
        j: Option<u32>,
    },
    /// `dim Ext^j(L(lambda), L(mu))`.
    Simple {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        j: Option<u32>,
    },
}

#[derive(Subcommand)]
enum PdOp {
    /// Projective dimension of the injective hull of `L(weight)`.
    Injective {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Projective dimension of a typical Verma or simple module.
    Typical {
        #[arg(allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Kind::Verma)]
        module: Kind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Verma,
    Simple,
}

#[derive(Subcommand)]
enum ComplexityOp {
    /// Growth of `sum_nu dim Ext^j(M(lambda), L(nu))`.
    Verma {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Growth of `sum_mu dim Ext^j(L(lambda), L(mu))`.
    Simple {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Growth of the n-cohomology count of `L(lambda)`.
    Nchom {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
}

/// Output of one subcommand in all three formats.
struct Report {
    text: String,
    tsv: String,
    json: Value,
    interval: Option<Interval>,
}

impl Report {
    fn scalar(text: impl ToString, json: Value) -> Self {
        let text = text.to_string();
        Report { tsv: text.clone(), text, json, interval: None }
    }

    fn with_interval(mut self, i: Interval) -> Self {
        self.interval = Some(i);
        self
    }
}

struct Ctx {
    global: Global,
    engine: Engine,
}

impl Ctx {
    fn algebra(&self, w: &Weight) -> glsuper::Result<Algebra> {
        let kind = match self.global.algebra {
            Family::Gl => AlgebraKind::Gl,
            Family::Sl => AlgebraKind::Sl,
        };
        let alg = Algebra::new(kind, self.global.m.unwrap_or(w.left.len()), self.global.n.unwrap_or(w.right.len()))?;
        alg.check(w)?;
        Ok(alg)
    }

    fn weight(&self, s: &str) -> glsuper::Result<(Algebra, Weight)> {
        let w: Weight = s.parse()?;
        Ok((self.algebra(&w)?, w))
    }

    fn pair(&self, a: &str, b: &str) -> glsuper::Result<(Algebra, Weight, Weight)> {
        let (alg, x) = self.weight(a)?;
        let y: Weight = b.parse()?;
        alg.check(&y)?;
        Ok((alg, x, y))
    }
}

fn sequence_report(label: &str, seq: &[i64], extra: Value, interval: Interval) -> Report {
    let rows: Vec<String> = seq.iter().enumerate().map(|(j, v)| format!("{j}\t{v}")).collect();
    let mut json = json!({ "sequence": seq });
    if let (Value::Object(a), Value::Object(b)) = (&mut json, extra) {
        a.extend(b);
    }
    let text = format!("{label}\n{}", rows.iter().map(|r| r.replace('\t', "  ")).collect::<Vec<_>>().join("\n"));
    Report { text, tsv: rows.join("\n"), json, interval: Some(interval) }
}

fn growth_report(label: &str, g: &GrowthEstimate, extra: Value) -> Report {
    let mut r = sequence_report(label, &g.sequence, json!({ "estimate": g }), g.interval);
    let exactness = if g.exact { "exact tail" } else { "estimate" };
    r.text.push_str(&format!("\nrate {} ({exactness}, j <= {})", g.rate, g.j_max));
    if let (Value::Object(a), Value::Object(b)) = (&mut r.json, extra) {
        a.extend(b);
    }
    r
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({ "display": p.to_string(), "terms": p.terms() })
}

fn run(ctx: &Ctx, cmd: &Command) -> glsuper::Result<Report> {
    let e = &ctx.engine;
    let jmax = ctx.global.jmax;
    Ok(match cmd {
        Command::Weight { op: WeightOp::Info { weight } } => {
            let (alg, w) = ctx.weight(weight)?;
            let k = atypicality(&w);
            let dom = dominance_class(&w);
            let (c, _) = core(&w);
            let class = serde_json::to_value(dom.class)?;
            let class = class.as_str().unwrap_or_default().replace('_', " ");
            let lines = [
                ("algebra", alg.to_string()),
                ("atypicality", k.to_string()),
                ("class", class.clone()),
                ("regularity", if dom.regular { "regular" } else { "singular" }.to_string()),
                ("core", c.to_string()),
                ("z_grade", z_grade(&w).to_string()),
                ("pd_injective", pd_injective(&w).to_string()),
            ];
            let text = lines.iter().map(|(a, b)| format!("{a}: {b}")).collect::<Vec<_>>().join("\n");
            let tsv = lines.iter().map(|(a, b)| format!("{a}\t{b}")).collect::<Vec<_>>().join("\n");
            let json = json!({
                "weight": w, "atypicality": k, "dominance": dom, "core": c,
                "z_grade": z_grade(&w), "pd_injective": pd_injective(&w),
            });
            Report { text, tsv, json, interval: None }
        }
        Command::Bruhat { op: BruhatOp::Leq { lo, hi } } => {
            let (_, lo, hi) = ctx.pair(lo, hi)?;
            let v = bruhat_leq(&lo, &hi)?;
            Report::scalar(v, json!({ "lo": lo, "hi": hi, "leq": v }))
        }
        Command::Bruhat { op: BruhatOp::Covers { weight } } => {
            let (_, w) = ctx.weight(weight)?;
            let covers = bruhat_lower_covers(&w);
            let text = covers.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
            Report { tsv: text.clone(), text, json: json!({ "weight": w, "lower_covers": covers }), interval: None }
        }
        Command::Length { hi, lo } => {
            let (_, hi, lo) = ctx.pair(hi, lo)?;
            let l = length_fn(&hi, &lo)?;
            let dl = dominant_length(&hi, &lo);
            let mut text = l.to_string();
            if let Some(d) = dl {
                // both numbers are shown; they are different statistics
                text.push_str(&format!("\ndominant chain length: {d}"));
            }
            let i = minimal_interval([&hi, &lo])?;
            Report {
                tsv: text.replace(": ", "\t"),
                text,
                json: json!({ "length": l, "dominant_chain_length": dl }),
                interval: Some(i),
            }
        }
        Command::Kl { op: KlOp::Table { seed } } => {
            let (alg, w) = ctx.weight(seed)?;
            let i = ctx.global.interval.unwrap_or(minimal_interval([&w])?.enlarged(2));
            let t = e.table(&alg, &w, &i)?;
            let ws = t.weights();
            let mut rows = Vec::new();
            for (a, mu) in ws.iter().enumerate() {
                let p_row: std::collections::BTreeMap<usize, &LaurentPoly> =
                    t.p_row(a).iter().map(|(b, p)| (*b, p)).collect();
                let d_row: std::collections::BTreeMap<usize, &LaurentPoly> =
                    t.d_row(a).iter().map(|(b, p)| (*b, p)).collect();
                let keys: std::collections::BTreeSet<usize> = p_row.keys().chain(d_row.keys()).copied().collect();
                for b in keys {
                    let show = |x: Option<&&LaurentPoly>| x.map(|p| p.to_string()).unwrap_or_else(|| "0".into());
                    rows.push((mu.to_string(), ws[b].to_string(), show(d_row.get(&b)), show(p_row.get(&b))));
                }
            }
            let head = format!("block of {w} in {}: {} weights", t.interval, ws.len());
            let text = std::iter::once(head)
                .chain(rows.iter().map(|r| format!("{}  {}  d={}  p={}", r.0, r.1, r.2, r.3)))
                .collect::<Vec<_>>()
                .join("\n");
            let tsv = std::iter::once("mu\tlambda\td\tp".to_string())
                .chain(rows.iter().map(|r| format!("{}\t{}\t{}\t{}", r.0, r.1, r.2, r.3)))
                .collect::<Vec<_>>()
                .join("\n");
            let json: Value = serde_json::from_str(&t.to_json()?)?;
            Report { text, tsv, json, interval: Some(t.interval) }
        }
        Command::Kl { op: KlOp::Entry { mu, lambda } } => {
            let (alg, mu, lam) = ctx.pair(mu, lambda)?;
            let d = e.d_poly(&alg, &mu, &lam)?;
            let p = e.p_poly(&alg, &mu, &lam)?;
            let text = format!("d = {}\np = {}", d.value, p.value);
            Report {
                tsv: format!("d\t{}\np\t{}", d.value, p.value),
                text,
                json: json!({ "mu": mu, "lambda": lam, "d": poly_json(&d.value), "p": poly_json(&p.value) }),
                interval: Some(d.interval.hull(&p.interval)),
            }
        }
        Command::Ext { op: ExtOp::Verma { lambda, nu, j } } => {
            let (alg, lam, nu) = ctx.pair(lambda, nu)?;
            let p = e.p_poly(&alg, &lam, &nu)?;
            match j {
                Some(j) => Report::scalar(
                    p.value.coeff(*j as i32).max(0),
                    json!({ "j": j, "dim": p.value.coeff(*j as i32).max(0) }),
                )
                .with_interval(p.interval),
                None => {
                    let seq: Vec<i64> = (0..=jmax as i32).map(|j| p.value.coeff(j)).collect();
                    sequence_report(&format!("Ext^j(M({lam}), L({nu}))"), &seq, json!({}), p.interval)
                }
            }
        }
        Command::Ext { op: ExtOp::Simple { lambda, mu, j } } => {
            let (alg, lam, mu) = ctx.pair(lambda, mu)?;
            let degrees: Vec<u32> = j.map(|j| vec![j]).unwrap_or_else(|| (0..=jmax).collect());
            let mut seq = Vec::new();
            let mut interval = None;
            for &j in &degrees {
                let x = e.ext_simple_simple(&alg, &lam, &mu, j)?;
                interval = Some(x.interval);
                seq.push(x.value as i64);
            }
            let interval = interval.unwrap_or(minimal_interval([&lam])?);
            match j {
                Some(j) => Report::scalar(seq[0], json!({ "j": j, "dim": seq[0] })).with_interval(interval),
                None => sequence_report(&format!("Ext^j(L({lam}), L({mu}))"), &seq, json!({}), interval),
            }
        }
        Command::Pd { op: PdOp::Injective { weight } } => {
            let (_, w) = ctx.weight(weight)?;
            let v = pd_injective(&w);
            Report::scalar(v, json!({ "weight": w, "pd_injective": v, "a_convention": A_CONVENTION }))
        }
        Command::Pd { op: PdOp::Typical { weight, module } } => {
            let (_, w) = ctx.weight(weight)?;
            let kind = match module {
                Kind::Verma => ModuleKind::Verma,
                Kind::Simple => ModuleKind::Simple,
            };
            let v = pd_typical(e, &w, kind)?;
            let text = match v {
                PdValue::Finite(x) => x.to_string(),
                PdValue::Infinite => "infinite".to_string(),
            };
            Report::scalar(text, json!({ "weight": w, "module": kind, "pd": v }))
        }
        Command::Findim { weight } => {
            let (_, w) = ctx.weight(weight)?;
            let v = fin_dim_block(&w)?;
            let cross = max_pd_injective_in_block(&w);
            if cross != v {
                return Err(Error::Invariant(format!("finitistic dimension {v} but max over injectives {cross}")));
            }
            Report::scalar(
                v,
                json!({ "weight": w, "findim": v, "max_pd_injective": cross, "a_convention": A_CONVENTION }),
            )
        }
        Command::Complexity { op } => match op {
            ComplexityOp::Verma { weight } => {
                let (alg, w) = ctx.weight(weight)?;
                let c = complexity_verma(e, &alg, &w, jmax)?;
                let mut r = growth_report(
                    &format!("sum_nu dim Ext^j(M({w}), L(nu))"),
                    &c.estimate,
                    json!({ "atypicality": c.atypicality, "regular": c.regular, "consistent": c.consistent }),
                );
                if !c.consistent {
                    r.text.push_str(&format!("\nwarning: rate disagrees with atypicality {}", c.atypicality));
                }
                r
            }
            ComplexityOp::Simple { weight } => {
                let (alg, w) = ctx.weight(weight)?;
                let c = complexity_simple(e, &alg, &w, jmax)?;
                let mut r = growth_report(
                    &format!("sum_mu dim Ext^j(L({w}), L(mu))"),
                    &c.estimate,
                    json!({ "conjectured": c.conjectured, "status": "conjectural comparison" }),
                );
                r.text.push_str(&format!("\nconjectural comparison: 2 x atypicality = {}", c.conjectured));
                r
            }
            ComplexityOp::Nchom { weight } => {
                let (alg, w) = ctx.weight(weight)?;
                let g = c_n_simple(e, &alg, &w, jmax)?;
                growth_report(&format!("sum_kappa dim Ext^j(M(kappa), L({w}))"), &g, json!({}))
            }
        },
        Command::Assocvar { weight, simple, set } => {
            let (_, w) = ctx.weight(weight)?;
            if let Some(s) = set {
                let s = RootSet::parse(s)?;
                if *simple {
                    return Err(Error::Parse("--set is only supported for Verma modules".into()));
                }
                let t = membership(&w, &s)?;
                let v = serde_json::to_value(t.value)?;
                let text = format!("{}  ({})", v.as_str().unwrap_or_default(), t.note);
                return Ok(Report::scalar(text, json!({ "weight": w, "set": s, "answer": t })));
            }
            let ans = if *simple { s_of_simple(&w) } else { s_of_verma(&w) };
            let text = match &ans {
                VarietyAnswer::Exact(sets) => sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n"),
                VarietyAnswer::Partial(rows) => rows
                    .iter()
                    .map(|(s, t)| {
                        format!("{s}  {}", serde_json::to_value(t.value).unwrap_or_default().as_str().unwrap_or(""))
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            let head = if ans.is_exact() { "exact" } else { "partial" };
            let text = format!("{head}\n{text}");
            Report { tsv: text.replace("  ", "\t"), text, json: json!({ "weight": w, "answer": ans }), interval: None }
        }
        Command::Blockgraph { p, window, verify } => {
            let window = window.unwrap_or(p + 2);
            let f = block_fingerprint(*p, window, verify.then_some(e))?;
            let mut extra = Vec::new();
            if *verify {
                for node in &f.nodes {
                    let (pl, free) = projective_self_multiplicity(e, &node.weight)?;
                    let t = flat_table(e, &node.weight)?;
                    extra.push(
                        json!({ "index": node.index, "p_to_l": pl, "multiplicity_free": free, "interval": t.interval }),
                    );
                }
            }
            Report {
                text: f.to_string(),
                tsv: f
                    .nodes
                    .iter()
                    .map(|n| format!("{}\t{}\t{}", n.index, n.weight, n.flat))
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: json!({ "fingerprint": f, "verified": extra }),
                interval: None,
            }
        }
        Command::Selftest => unreachable!("handled in main"),
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Weight { .. } => "weight info",
        Command::Bruhat { op: BruhatOp::Leq { .. } } => "bruhat leq",
        Command::Bruhat { op: BruhatOp::Covers { .. } } => "bruhat covers",
        Command::Length { .. } => "length",
        Command::Kl { op: KlOp::Table { .. } } => "kl table",
        Command::Kl { op: KlOp::Entry { .. } } => "kl entry",
        Command::Ext { op: ExtOp::Verma { .. } } => "ext verma",
        Command::Ext { op: ExtOp::Simple { .. } } => "ext simple",
        Command::Pd { op: PdOp::Injective { .. } } => "pd injective",
        Command::Pd { op: PdOp::Typical { .. } } => "pd typical",
        Command::Findim { .. } => "findim",
        Command::Complexity { op: ComplexityOp::Verma { .. } } => "complexity verma",
        Command::Complexity { op: ComplexityOp::Simple { .. } } => "complexity simple",
        Command::Complexity { op: ComplexityOp::Nchom { .. } } => "complexity nchom",
        Command::Assocvar { .. } => "assocvar",
        Command::Blockgraph { .. } => "blockgraph",
        Command::Selftest => "selftest",
    }
}

fn engine(g: &Global) -> glsuper::Result<Engine> {
    let exec = match g.threads {
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    };
    #[cfg(feature = "parallel")]
    if let Some(t) = g.threads.filter(|&t| t > 1) {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let mut e = Engine::new().with_exec(exec).with_max_weights(g.max_weights);
    if let Some(dir) = &g.cache_dir {
        e = e.with_cache_dir(dir)?;
    }
    Ok(e)
}

/// Writes to stdout, ignoring a closed pipe (`glsuper ... | head`).
pub(crate) fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if let Error::BudgetExceeded { partial, .. } = e {
        if !partial.is_empty() {
            eprintln!("partial sequence: {partial:?}");
        }
    }
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let engine = match engine(&cli.global) {
        Ok(e) => e,
        Err(e) => return fail(&e),
    };
    if let Command::Selftest = cli.command {
        return selftest::run(&engine, cli.global.json);
    }
    let name = command_name(&cli.command);
    let ctx = Ctx { global: cli.global, engine };
    let result = run(&ctx, &cli.command);
    for w in ctx.engine.take_warnings() {
        eprintln!("warning: {w}");
    }
    let report = match result {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let g = &ctx.global;
    if g.json {
        let envelope = json!({
            "command": name,
            "convention": CONVENTION,
            "format_version": FORMAT_VERSION,
            "interval": report.interval,
            "truncation": { "jmax": g.jmax, "max_weights": g.max_weights },
            "result": report.json,
        });
        emit(&serde_json::to_string_pretty(&envelope).expect("JSON values always serialize"));
    } else if g.tsv {
        emit(&report.tsv);
    } else {
        emit(&report.text);
    }
    ExitCode::SUCCESS
}
