//! The `ringlab` command line.
//!
//! Rings are given with `--ring`, either as `catalog:NAME:P[:N]` or as the
//! path of a JSON ring spec. Every subcommand renders as text, JSON or CSV.

pub mod claims;
pub mod report;
mod table;

use std::ffi::OsString;
use std::io::Write;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ringlab::catalog::{Params, CATALOG};
use ringlab::ideal::{all_right_ideals, is_principal, RightIdealSet};
use ringlab::orbit::{pair_orbits, submodule_orbits, ItemKind};
use ringlab::pair::{classify_all_pairs, is_free, ClassificationSummary};
use ringlab::spec::{build_ring, parse_ring_spec, to_json, to_structure_constants};
use ringlab::{AdmissibilityMode, Budget, FiniteRing, OrbitMode, Pair, PairSet};

use report::{emit_report, Format, Status};
use table::Table;

/// Members are written out in JSON for orbits up to this size.
pub const MEMBER_LIST_LIMIT: usize = 4096;

/// Rings of at most this order default to exact orbits.
pub const EXACT_ORDER_LIMIT: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about = "Pairs, ideals and GL2 orbits over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify every pair of R^2.
    Classify(ClassifyArgs),
    /// List the right ideals.
    Ideals(RingArgs),
    /// Orbits of pairs or free cyclic submodules under GL2(R).
    Orbits(OrbitArgs),
    /// List the catalog, or emit one entry as a structure-constants spec.
    Catalog(CatalogArgs),
    /// Replay the verification claims.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct RingArgs {
    /// `catalog:NAME:P[:N]` or a path to a JSON ring spec.
    #[arg(long)]
    ring: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// How admissibility is decided.
    #[arg(long, value_enum, default_value_t = Admissibility::Auto)]
    admissibility: Admissibility,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Admissibility {
    Auto,
    Search,
    Unimodular,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Bfs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Pairs,
    Submodules,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Exact uses all of GL2(R); bfs uses a generating set. Defaults to exact
    /// for rings of order at most 16.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Restrict to pairs generating free cyclic submodules.
    #[arg(long)]
    free_only: bool,
    /// Orbits of pairs or of submodules. Defaults to submodules with
    /// `--free-only` and to pairs otherwise.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Entry to emit as a structure-constants spec.
    #[arg(long, value_name = "NAME", requires = "p")]
    build: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Claim ids or id prefixes, comma separated. All claims by default.
    #[arg(long, value_delimiter = ',')]
    claims: Vec<String>,
    /// Wall-clock budget shared by all claims.
    #[arg(long, env = "RINGLAB_BUDGET_SECONDS", default_value_t = 120.0)]
    budget_seconds: f64,
    /// Exit 0 even if some claims were skipped for lack of budget.
    #[arg(long)]
    allow_skip: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Usage and input errors.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Runs the command line, writing to stdout and stderr. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
///
/// Exit codes: 0 success, 1 failed (or skipped without `--allow-skip`)
/// verification or a computation error, 2 usage or ring input error.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    let text = match command {
        Command::Classify(a) => {
            let ring = load_ring(&a.ring.ring)?;
            classify(&ring, &a.ring.ring, a.admissibility, a.ring.format)
        }
        Command::Ideals(a) => {
            let ring = load_ring(&a.ring)?;
            ideals(&ring, &a.ring, a.format)?
        }
        Command::Orbits(a) => {
            let ring = load_ring(&a.ring.ring)?;
            orbits(&ring, &a)?
        }
        Command::Catalog(a) => catalog(&a)?,
        Command::Verify(a) => return verify(&a, out),
    };
    out.write_all(text.as_bytes())?;
    Ok(0)
}

/// Loads `catalog:NAME:P[:N]` or a JSON spec file.
pub fn load_ring(arg: &str) -> anyhow::Result<FiniteRing> {
    if let Some(rest) = arg.strip_prefix("catalog:") {
        return claims::catalog_ring(rest).map_err(|e| usage(format!("ring {arg:?}: {e}")));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| usage(format!("reading {arg:?}: {e}")))?;
    let spec = parse_ring_spec(&text).map_err(|e| usage(format!("{arg}: {e}")))?;
    build_ring(&spec).map_err(|e| usage(format!("{arg}: {e}")))
}

fn labels(ring: &FiniteRing, ideal: &RightIdealSet) -> String {
    ideal.labels(ring).join(" ")
}

#[derive(Serialize)]
struct IdealRow {
    id: usize,
    size: usize,
    principal: bool,
    generator: Option<String>,
    members: Vec<String>,
}

fn ideal_rows(ring: &FiniteRing, ideals: &[RightIdealSet]) -> Vec<IdealRow> {
    ideals
        .iter()
        .enumerate()
        .map(|(id, i)| {
            let g = is_principal(ring, i);
            IdealRow {
                id,
                size: i.len(),
                principal: g.is_some(),
                generator: g.map(|g| ring.label(g).to_string()),
                members: i.labels(ring).into_iter().map(String::from).collect(),
            }
        })
        .collect()
}

pub const CLASSIFY_COLUMNS: [&str; 8] =
    ["a", "b", "unimodular", "admissible", "free", "torsion_witness", "outlier", "ideal"];

fn classify(ring: &FiniteRing, name: &str, mode: Admissibility, format: Format) -> String {
    let mode = match mode {
        Admissibility::Auto => AdmissibilityMode::Auto,
        Admissibility::Search => AdmissibilityMode::Search,
        Admissibility::Unimodular => AdmissibilityMode::FiniteShortcut,
    };
    let c = classify_all_pairs(ring, mode);
    let mut table = Table::new(&CLASSIFY_COLUMNS);
    for r in &c.rows {
        table.push(vec![
            ring.label(r.pair.a).to_string(),
            ring.label(r.pair.b).to_string(),
            r.unimodular.to_string(),
            r.admissible.to_string(),
            r.free.to_string(),
            r.torsion_witness.map(|w| ring.label(w).to_string()).unwrap_or_default(),
            r.outlier.to_string(),
            r.generated_ideal.to_string(),
        ]);
    }
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                ring: &'a str,
                order: usize,
                summary: &'a ClassificationSummary,
                columns: &'a [&'static str],
                rows: &'a [Vec<String>],
                ideals: Vec<IdealRow>,
            }
            json(&Doc {
                ring: name,
                order: ring.order(),
                summary: &c.summary,
                columns: &table.columns,
                rows: &table.rows,
                ideals: ideal_rows(ring, &c.ideals),
            })
        }
        Format::Text => {
            let s = &c.summary;
            let mut text = table.to_text();
            text.push_str(&format!(
                "\n{name}: {} pairs, {} unimodular, {} admissible, {} free, {} torsion\n\
                 outliers {}: {} free generating {} submodules, {} torsion\n",
                s.pairs,
                s.unimodular,
                s.admissible,
                s.free,
                s.torsion,
                s.outliers,
                s.free_outliers,
                s.free_outlier_submodules,
                s.torsion_outliers
            ));
            for (id, i) in c.ideals.iter().enumerate() {
                text.push_str(&format!("ideal {id}: {{{}}}\n", labels(ring, i)));
            }
            text
        }
    }
}

pub const IDEAL_COLUMNS: [&str; 5] = ["id", "size", "principal", "generator", "members"];

fn ideals(ring: &FiniteRing, name: &str, format: Format) -> anyhow::Result<String> {
    let ideals = all_right_ideals(ring)?;
    let rows = ideal_rows(ring, &ideals);
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                ring: &'a str,
                order: usize,
                ideals: Vec<IdealRow>,
            }
            json(&Doc { ring: name, order: ring.order(), ideals: rows })
        }
        _ => {
            let mut table = Table::new(&IDEAL_COLUMNS);
            for r in rows {
                table.push(vec![
                    r.id.to_string(),
                    r.size.to_string(),
                    r.principal.to_string(),
                    r.generator.unwrap_or_default(),
                    r.members.join(" "),
                ]);
            }
            if format == Format::Csv {
                table.to_csv()
            } else {
                table.to_text()
            }
        }
    })
}

pub const ORBIT_COLUMNS: [&str; 7] = ["orbit", "a", "b", "size", "ideal", "ideal_size", "mode"];

fn orbits(ring: &FiniteRing, a: &OrbitArgs) -> anyhow::Result<String> {
    let mode = match a.mode {
        Some(ModeArg::Exact) => OrbitMode::Exact,
        Some(ModeArg::Bfs) => OrbitMode::GeneratorBfs,
        None if ring.order() <= EXACT_ORDER_LIMIT => OrbitMode::Exact,
        None => OrbitMode::GeneratorBfs,
    };
    let kind = match (a.kind, a.free_only) {
        (Some(KindArg::Submodules), false) => {
            return Err(usage("submodule orbits need --free-only"));
        }
        (Some(KindArg::Pairs), _) | (None, false) => ItemKind::Pair,
        (Some(KindArg::Submodules), true) | (None, true) => ItemKind::Submodule,
    };
    let pairs = if a.free_only {
        PairSet::from_fn(ring, |p| is_free(ring, p))
    } else {
        PairSet::full(ring.order())
    };
    let table = match kind {
        ItemKind::Pair => pair_orbits(ring, &pairs, mode)?,
        ItemKind::Submodule => submodule_orbits(ring, &pairs, mode)?,
    };
    let show = |p: Pair| (ring.label(p.a).to_string(), ring.label(p.b).to_string());
    let mut t = Table::new(&ORBIT_COLUMNS);
    for (i, o) in table.orbits.iter().enumerate() {
        let (x, y) = show(o.representative);
        t.push(vec![
            i.to_string(),
            x,
            y,
            o.size.to_string(),
            o.ideal.to_string(),
            table.ideals[o.ideal].len().to_string(),
            mode.to_string(),
        ]);
    }
    Ok(match a.ring.format {
        Format::Csv => t.to_csv(),
        Format::Text => {
            let mut s = t.to_text();
            let what = if kind == ItemKind::Pair { "pair" } else { "submodule" };
            s.push_str(&format!("\n{} {what} orbits ({mode})\n", table.orbits.len()));
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct OrbitDoc {
                representative: (String, String),
                size: usize,
                ideal: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                members: Option<Vec<(String, String)>>,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                ring: &'a str,
                kind: ItemKind,
                mode: OrbitMode,
                orbits: Vec<OrbitDoc>,
                ideals: Vec<IdealRow>,
            }
            json(&Doc {
                ring: &a.ring.ring,
                kind,
                mode,
                orbits: table
                    .orbits
                    .iter()
                    .map(|o| OrbitDoc {
                        representative: show(o.representative),
                        size: o.size,
                        ideal: o.ideal,
                        members: (o.members.len() <= MEMBER_LIST_LIMIT)
                            .then(|| o.members.iter().map(|&p| show(p)).collect()),
                    })
                    .collect(),
                ideals: ideal_rows(ring, &table.ideals),
            })
        }
    })
}

pub const CATALOG_COLUMNS: [&str; 4] = ["name", "parameters", "order", "description"];

fn catalog(a: &CatalogArgs) -> anyhow::Result<String> {
    if let Some(name) = &a.build {
        let p = a.p.expect("clap enforces --p");
        let ring = ringlab::catalog::catalog_build(name, p, a.n).map_err(|e| usage(e.to_string()))?;
        let spec = to_structure_constants(&ring).context("converting to structure constants")?;
        let mut s = to_json(&spec);
        if !s.ends_with('\n') {
            s.push('\n');
        }
        return Ok(s);
    }
    let mut t = Table::new(&CATALOG_COLUMNS);
    for e in CATALOG {
        let (params, order) = match e.params {
            Params::Prime => (
                "p",
                match e.order_exponent {
                    Some(1) | None => "p".to_string(),
                    Some(k) => format!("p^{k}"),
                },
            ),
            Params::Modulus => ("n", "n".to_string()),
            Params::PrimeAndSize => ("p, n", "p^(n*n)".to_string()),
        };
        t.push(vec![e.name.into(), params.into(), order, e.description.into()]);
    }
    Ok(match a.format {
        Format::Csv => t.to_csv(),
        Format::Text => t.to_text(),
        Format::Json => {
            let rows: Vec<_> = t
                .rows
                .iter()
                .map(|r| t.columns.iter().copied().zip(r.iter().cloned()).collect::<std::collections::BTreeMap<_, _>>())
                .collect();
            json(&rows)
        }
    })
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if !a.budget_seconds.is_finite() || a.budget_seconds < 0.0 {
        return Err(usage("--budget-seconds must be a non-negative number"));
    }
    let selected = claims::select(&a.claims).map_err(usage)?;
    let budget = Budget::seconds(a.budget_seconds);
    let results: Vec<_> = selected.iter().map(|c| claims::run_claim(c, &budget)).collect();
    out.write_all(emit_report(&results, a.format).as_bytes())?;
    let failed = results.iter().any(|r| r.status == Status::Fail);
    let skipped = results.iter().any(|r| r.status == Status::Skipped);
    Ok(if failed || (skipped && !a.allow_skip) { 1 } else { 0 })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}
