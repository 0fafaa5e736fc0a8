//! One function per subcommand, each rendering text or JSON.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Subcommand, ValueEnum};
use mckay_core::action::{hdet_koszul, hdet_normal_recursion, hdet_table, is_hsl};
use mckay_core::algebra::{hilbert_dims, Family};
use mckay_core::beilinson::BeilinsonAlgebra;
use mckay_core::checks::{all_passed, run_checks};
use mckay_core::quiver::{
    covering_quiver, default_search_depth, make_canonical_quiver, predicted_decomposition,
    quiver_qs, quiver_qsg, reflection_search, replay_reflections,
};
use mckay_core::skew::{default_window, Verdict};
use mckay_core::{
    AlgebraSpec, CyclicGroupAction, Cyclotomic, GradedAutomorphism, Quiver, SkewGroupAlgebra,
    Vertex,
};
use serde_json::{json, Value};

use crate::config::{Format, Job};

/// Rendered command output and whether every requested check passed.
pub struct Output {
    pub body: String,
    pub ok: bool,
}

impl Output {
    fn text(body: String) -> Self {
        Self { body, ok: true }
    }

    fn json(v: Value) -> Self {
        let mut body = serde_json::to_string_pretty(&v).expect("json serializes");
        body.push('\n');
        Self { body, ok: true }
    }
}

fn render(job: &Job, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> Result<Output> {
    match job.format {
        Format::Text => Ok(Output::text(text())),
        Format::Json => Ok(Output::json(json())),
        Format::Dot => bail!("--format dot applies only to quiver output"),
    }
}

fn algebra_json(spec: &AlgebraSpec) -> Value {
    let (family, alpha) = match spec.family() {
        Family::Quantum(a) => ("quantum", Value::String(a.to_string())),
        Family::Jordan => ("jordan", Value::Null),
    };
    json!({
        "wx": spec.wx(),
        "wy": spec.wy(),
        "family": family,
        "alpha": alpha,
        "ell": spec.ell(),
    })
}

fn group_json(act: &CyclicGroupAction) -> Value {
    let (ex, ey) = act.exponents();
    json!({ "r": act.order(), "x_exp": ex, "y_exp": ey, "hsl": act.is_hsl() })
}

fn group_text(act: &CyclicGroupAction) -> String {
    let (ex, ey) = act.exponents();
    let r = act.order();
    format!(
        "group: r = {r}, g: x -> {} x, y -> {} y ({})",
        Cyclotomic::zeta_pow(r, i64::from(ex)),
        Cyclotomic::zeta_pow(r, i64::from(ey)),
        if act.is_hsl() { "in HSL" } else { "not in HSL" }
    )
}

pub fn info(job: &Job) -> Result<Output> {
    let spec = &job.spec;
    let d = job.max_degree.unwrap_or(10) as u32;
    let dims = hilbert_dims(spec, d);
    let nabla = BeilinsonAlgebra::new(spec.clone()).dim();
    render(
        job,
        || {
            let mut s = String::new();
            writeln!(s, "algebra: {spec}").unwrap();
            writeln!(s, "ell={}", spec.ell()).unwrap();
            writeln!(s, "hilbert dims 0..={d}: {dims:?}").unwrap();
            writeln!(s, "dim of Beilinson algebra: {nabla}").unwrap();
            s
        },
        || {
            json!({
                "command": "info",
                "algebra": algebra_json(spec),
                "max_degree": d,
                "hilbert_dims": dims,
                "beilinson_dim": nabla,
            })
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Identity,
    Linear,
    Diag,
    Antidiag,
    Triangular,
}

#[derive(Args, Debug, Clone)]
pub struct HdetArgs {
    /// Shape of the automorphism
    #[arg(long, value_enum, default_value = "diag")]
    pub map: MapKind,
    /// Coefficient of x in sigma(x)
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Coefficient of y in sigma(x)
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Coefficient of x (or x^deg y) in sigma(y)
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Coefficient of y in sigma(y); Jordan default a^q
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
}

fn scalar(flag: &str, v: &Option<String>, default: Cyclotomic) -> Result<Cyclotomic> {
    match v {
        None => Ok(default),
        Some(t) => t.parse().map_err(|e| anyhow!("--{flag} '{t}': {e}")),
    }
}

pub fn hdet(job: &Job, args: &HdetArgs) -> Result<Output> {
    let alg = job.algebra();
    let spec = alg.spec().clone();
    let a = scalar("a", &args.a, Cyclotomic::one())?;
    let b = scalar("b", &args.b, Cyclotomic::zero())?;
    let c = scalar("c", &args.c, Cyclotomic::zero())?;
    let d_default = if spec.is_jordan() {
        a.pow(i64::from(spec.wy()))?
    } else {
        Cyclotomic::one()
    };
    let d = scalar("d", &args.d, d_default)?;
    let sigma = match args.map {
        MapKind::Identity => GradedAutomorphism::identity(),
        MapKind::Linear => GradedAutomorphism::linear(&alg, a, b, c, d)?,
        MapKind::Diag => GradedAutomorphism::diagonal(&alg, a, d)?,
        MapKind::Antidiag => GradedAutomorphism::antidiagonal(&alg, b, c)?,
        MapKind::Triangular => GradedAutomorphism::triangular(&alg, a, c, d)?,
    };
    let (row, table) = hdet_table(&alg, &sigma)?;
    let recursion = hdet_normal_recursion(&sigma).ok();
    let koszul = hdet_koszul(&alg, &sigma).ok();
    let agree = [&recursion, &koszul]
        .iter()
        .all(|m| m.as_ref().is_none_or(|v| *v == table));
    let hsl = is_hsl(&alg, &sigma)?;
    let shown = |v: &Option<Cyclotomic>| v.as_ref().map_or("n/a".to_string(), ToString::to_string);
    render(
        job,
        || {
            let mut s = String::new();
            writeln!(s, "algebra: {spec}").unwrap();
            writeln!(s, "sigma: x -> {}, y -> {}", sigma.image_x(), sigma.image_y()).unwrap();
            writeln!(s, "table row: {row:?}").unwrap();
            writeln!(s, "table: {table}").unwrap();
            writeln!(s, "normal-element recursion: {}", shown(&recursion)).unwrap();
            writeln!(s, "Koszul dual: {}", shown(&koszul)).unwrap();
            writeln!(s, "methods agree: {}", if agree { "yes" } else { "no" }).unwrap();
            writeln!(s, "hdet = {table}, {}", if hsl { "in HSL" } else { "not in HSL" }).unwrap();
            s
        },
        || {
            json!({
                "command": "hdet",
                "algebra": algebra_json(&spec),
                "sigma": { "x": sigma.image_x().to_string(), "y": sigma.image_y().to_string() },
                "table_row": format!("{row:?}"),
                "methods": {
                    "table": table.to_string(),
                    "normal_recursion": recursion.as_ref().map(ToString::to_string),
                    "koszul": koszul.as_ref().map(ToString::to_string),
                },
                "agree": agree,
                "hdet": table.to_string(),
                "in_hsl": hsl,
            })
        },
    )
    .map(|mut o| {
        o.ok = agree;
        o
    })
}

#[derive(Args, Debug, Clone)]
pub struct ActionArgs {
    /// Exponent e with g(x) = zeta^e x, for actions outside HSL(S)
    #[arg(long, requires = "y_exp")]
    pub x_exp: Option<u32>,
    /// Exponent e with g(y) = zeta^e y, for actions outside HSL(S)
    #[arg(long, requires = "x_exp")]
    pub y_exp: Option<u32>,
}

impl ActionArgs {
    fn exponents(&self) -> Option<(u32, u32)> {
        self.x_exp.zip(self.y_exp)
    }
}

pub fn fixed(job: &Job, args: &ActionArgs) -> Result<Output> {
    let alg = job.algebra();
    let act = job.action(&alg, args.exponents())?;
    let sg = SkewGroupAlgebra::new(&alg, &act);
    let d = job.max_degree.unwrap_or(20) as u32;
    let bases: Vec<Vec<String>> = (0..=d)
        .map(|k| sg.fixed_ring_basis(k).iter().map(ToString::to_string).collect())
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let molien = sg.molien_check(d);
    let out = render(
        job,
        || {
            let mut s = String::new();
            writeln!(s, "algebra: {}", job.spec).unwrap();
            writeln!(s, "{}", group_text(&act)).unwrap();
            writeln!(s, "dims 0..={d}: {dims:?}").unwrap();
            for (k, b) in bases.iter().enumerate() {
                if !b.is_empty() {
                    writeln!(s, "  degree {k}: {}", b.join(", ")).unwrap();
                }
            }
            writeln!(s, "Molien average agrees: {}", if molien { "yes" } else { "no" }).unwrap();
            s
        },
        || {
            json!({
                "command": "fixed",
                "algebra": algebra_json(&job.spec),
                "group": group_json(&act),
                "max_degree": d,
                "dims": dims,
                "basis": bases,
                "molien_agrees": molien,
            })
        },
    )?;
    Ok(Output { ok: molien, ..out })
}

pub fn ample(job: &Job, args: &ActionArgs) -> Result<Output> {
    let alg = job.algebra();
    let act = job.action(&alg, args.exponents())?;
    let sg = SkewGroupAlgebra::new(&alg, &act);
    let d = job.max_degree.unwrap_or_else(|| default_window(&alg, &act));
    let report = sg.ampleness_report(d)?;
    render(
        job,
        || {
            let mut s = String::new();
            writeln!(s, "algebra: {}", job.spec).unwrap();
            writeln!(s, "{}", group_text(&act)).unwrap();
            writeln!(s, "dims of S*G/(e) in degrees 0..={d}: {:?}", report.dims).unwrap();
            writeln!(s, "zero tail: {}", report.zero_tail).unwrap();
            match report.vanishing_from {
                Some(v) => writeln!(s, "zero from degree: {v}").unwrap(),
                None => writeln!(s, "zero from degree: none in window").unwrap(),
            }
            writeln!(s, "verdict: {}", report.verdict).unwrap();
            s
        },
        || {
            let (total, nonzero) = match &report.verdict {
                Verdict::FiniteUpTo { total_dim, .. } => (Some(*total_dim), Vec::new()),
                Verdict::UndecidedNonzeroAt { nonzero_degrees, .. } => (None, nonzero_degrees.clone()),
                Verdict::Exploratory { .. } => (None, Vec::new()),
            };
            json!({
                "command": "ample",
                "algebra": algebra_json(&job.spec),
                "group": group_json(&act),
                "max_degree": d,
                "dims": report.dims,
                "zero_tail": report.zero_tail,
                "vanishing_from": report.vanishing_from,
                "verdict": report.verdict.to_string(),
                "total_dim": total,
                "nonzero_degrees": nonzero,
            })
        },
    )
}

#[derive(Subcommand, Debug, Clone)]
pub enum QuiverKind {
    /// Q_S
    Qs,
    /// Q_{S,G} for the group of order --r
    Qsg,
    /// The connected c-fold covering of Q_S (default c = lcm(l, r)/l)
    Covering {
        #[arg(long)]
        c: Option<u32>,
    },
    /// Q_(i,j): two directed paths of lengths i and j from a source to a sink
    Canonical {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

impl QuiverKind {
    fn build(&self, job: &Job) -> Result<(String, Quiver)> {
        let spec = &job.spec;
        Ok(match self {
            QuiverKind::Qs => ("Q_S".into(), quiver_qs(spec)),
            QuiverKind::Qsg => {
                job.action(&job.algebra(), None)?;
                (format!("Q_S,G with r = {}", job.r), quiver_qsg(spec, job.r)?)
            }
            QuiverKind::Covering { c } => {
                let c = c.unwrap_or_else(|| predicted_decomposition(spec, job.r).1);
                (format!("{c}-fold covering of Q_S"), covering_quiver(spec, c)?)
            }
            QuiverKind::Canonical { i, j } => (format!("Q_({i},{j})"), make_canonical_quiver(*i, *j)?),
        })
    }
}

fn quiver_text(title: &str, q: &Quiver) -> String {
    let mut s = String::new();
    writeln!(s, "{title}: {} vertices, {} arrows", q.vertex_count(), q.arrow_count()).unwrap();
    for (u, v, t) in q.labeled_arrows() {
        match t.label() {
            Some(l) => writeln!(s, "  {u} -> {v} [{l}]").unwrap(),
            None => writeln!(s, "  {u} -> {v}").unwrap(),
        }
    }
    let comps = q.components();
    writeln!(s, "components: {}", comps.len()).unwrap();
    for (k, comp) in comps.iter().enumerate() {
        let ty = match comp.canonical_type() {
            Ok((i, j)) => format!("canonical type ({i}, {j})"),
            Err(e) => e.to_string(),
        };
        writeln!(s, "  component {}: {} vertices, {ty}", k + 1, comp.vertex_count()).unwrap();
    }
    s
}

fn emit_quiver(job: &Job, title: &str, q: &Quiver) -> Output {
    match job.format {
        Format::Text => Output::text(quiver_text(title, q)),
        Format::Json => Output::json(q.to_json_value()),
        Format::Dot => Output::text(q.to_dot()),
    }
}

pub fn quiver(job: &Job, kind: &QuiverKind) -> Result<Output> {
    let (title, q) = kind.build(job)?;
    Ok(emit_quiver(job, &title, &q))
}

#[derive(Subcommand, Debug, Clone)]
pub enum ReflectCommand {
    /// Reflect a constructed quiver at the given vertices, in order
    At {
        #[command(subcommand)]
        quiver: QuiverKind,
        /// Vertex label such as v3 or v1_2; repeat for a sequence
        #[arg(long = "vertex", required = true)]
        vertices: Vec<String>,
    },
    /// Search for reflections from the c-fold covering of Q_S to Q_(i,j)
    Search {
        /// Covering degree (default lcm(l, r)/l)
        #[arg(long)]
        c: Option<u32>,
        /// Target pair i,j (default: the canonical type of the covering)
        #[arg(long, value_parser = parse_pair)]
        target: Option<(usize, usize)>,
        /// Depth bound (default 2|V|^2)
        #[arg(long)]
        max_depth: Option<usize>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = t.split_once(',').ok_or("expected i,j")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

pub fn reflect(job: &Job, cmd: &ReflectCommand) -> Result<Output> {
    match cmd {
        ReflectCommand::At { quiver, vertices } => {
            let (title, q) = quiver.build(job)?;
            let seq: Vec<Vertex> = vertices
                .iter()
                .map(|v| v.parse::<Vertex>())
                .collect::<std::result::Result<_, _>>()?;
            let r = replay_reflections(&q, &seq)?;
            let names: Vec<String> = seq.iter().map(ToString::to_string).collect();
            Ok(emit_quiver(job, &format!("{title} reflected at {}", names.join(", ")), &r))
        }
        ReflectCommand::Search { c, target, max_depth } => {
            let spec = &job.spec;
            let c = c.unwrap_or_else(|| predicted_decomposition(spec, job.r).1);
            let source = covering_quiver(spec, c)?;
            let (i, j) = match target {
                Some(t) => *t,
                None => source.canonical_type()?,
            };
            let goal = make_canonical_quiver(i, j)?;
            let depth = max_depth.unwrap_or_else(|| default_search_depth(&source));
            let found = reflection_search(&source, &goal, depth);
            let verified = match &found {
                Some(seq) => replay_reflections(&source, seq)?.is_isomorphic(&goal, false),
                None => false,
            };
            let names: Option<Vec<String>> =
                found.as_ref().map(|s| s.iter().map(ToString::to_string).collect());
            let out = render(
                job,
                || {
                    let mut s = String::new();
                    writeln!(s, "source: {c}-fold covering of Q_S for {spec}").unwrap();
                    writeln!(s, "target: Q_({i},{j})").unwrap();
                    match &names {
                        Some(n) => {
                            writeln!(s, "sequence ({} reflections): {}", n.len(), n.join(" ")).unwrap();
                            writeln!(s, "replay reaches target: {}", if verified { "yes" } else { "no" })
                                .unwrap();
                        }
                        None => writeln!(s, "no sequence within depth {depth}").unwrap(),
                    }
                    s
                },
                || {
                    json!({
                        "command": "reflect-search",
                        "algebra": algebra_json(spec),
                        "covering_degree": c,
                        "source": source.to_json_value(),
                        "target": [i, j],
                        "max_depth": depth,
                        "sequence": names,
                        "verified": verified,
                    })
                },
            )?;
            Ok(Output { ok: verified, ..out })
        }
    }
}

pub fn check(job: &Job) -> Result<Output> {
    let d = job.max_degree.unwrap_or(10) as u32;
    let results = run_checks(&job.spec, job.r, d)?;
    let ok = all_passed(&results);
    let out = render(
        job,
        || {
            let mut s = String::new();
            writeln!(s, "algebra: {}, r = {}", job.spec, job.r).unwrap();
            for c in &results {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(s, "[{mark}] {}", c.name).unwrap();
                } else {
                    writeln!(s, "[{mark}] {}: {}", c.name, c.detail).unwrap();
                }
            }
            let failed = results.iter().filter(|c| !c.passed).count();
            if failed == 0 {
                writeln!(s, "all {} checks passed", results.len()).unwrap();
            } else {
                writeln!(s, "{failed} of {} checks failed", results.len()).unwrap();
            }
            s
        },
        || {
            json!({
                "command": "check",
                "algebra": algebra_json(&job.spec),
                "r": job.r,
                "max_degree": d,
                "passed": ok,
                "checks": results,
            })
        },
    )?;
    Ok(Output { ok, ..out })
}
