//! Command-line front end: TOML workspace configs, command dispatch and reports.
//!
//! Exit codes: 0 success, 1 a claim or validation is false, 2 configuration error,
//! 3 search bound exceeded.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bimod::Bimodule;
use crate::context::{peirce_decompose, ContextRing, MoritaContext};
use crate::error::AlgebraError;
use crate::finalg::{ring_isos_bruteforce, AbGroup, Elem, FinRing, SearchOptions};
use crate::isoclasses::{enumerate_iso0, membership_test, realize, table_hash, RingMap};
use crate::theorems::{self, Verdict, CLAIMS};
use crate::validation::ValidationReport;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "morita", version, about = "Isomorphisms of generalized matrix rings over finite rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Workspace configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override the configured search bound.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Include full function tables in reports.
    #[arg(long, global = true)]
    pub full: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Add wall-clock timings (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate every named ring, bimodule and context.
    Validate,
    /// List a set of maps or elements for a pair or context.
    Enumerate {
        /// Pair name, or a context name for its self-pair.
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Check claims; `all` runs every configured check.
    Verify {
        #[arg(default_value = "all")]
        claim: String,
        /// Restrict to one pair, context or ring.
        #[arg(long)]
        subject: Option<String>,
    },
    /// Split a ring along an idempotent and rebuild it as a context ring.
    Peirce {
        #[arg(long)]
        ring: String,
        /// Element index, `e11`/`e22` for context rings, or comma-separated coordinates.
        #[arg(long)]
        element: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    Iso,
    Iso0,
    Graded,
    Semigraded,
    Idempotents,
    CentralIdempotents,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Bound(_) => EXIT_BOUND,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Bound(m) => m,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::SearchBoundExceeded { .. } => CliError::Bound(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

// ---------------------------------------------------------------------------
// configuration

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceConfig {
    pub search_bound: Option<usize>,
    #[serde(default)]
    pub rings: BTreeMap<String, RingDef>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleDef>,
    #[serde(default)]
    pub contexts: BTreeMap<String, ContextDef>,
    #[serde(default)]
    pub pairs: BTreeMap<String, PairDef>,
    #[serde(default)]
    pub verify: Vec<VerifyDef>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingDef {
    Cyclic { n: u32 },
    Product { factors: Vec<String> },
    Matrix { base: String },
    Triangular { base: String },
    /// Structure constants on the generators of `orders`.
    Table { orders: Vec<u32>, products: Vec<Elem>, one: Elem },
    ContextRing { context: String },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BimoduleDef {
    Zero { left: String, right: String },
    Regular { ring: String },
    /// `ring` as a module over itself on the left and over the cyclic ring `scalars`
    /// on the right.
    Integer { ring: String, scalars: String },
    /// Full action tables: `left_table[r * |M| + m]`, `right_table[m * |S| + s]`.
    Table {
        orders: Vec<u32>,
        left: String,
        right: String,
        left_table: Vec<Elem>,
        right_table: Vec<Elem>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PairingDef {
    /// `"zero"` or `"multiply"`.
    Keyword(String),
    Table(Vec<Elem>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDef {
    pub r: String,
    pub s: String,
    pub m: String,
    pub n: String,
    pub bracket: PairingDef,
    pub paren: PairingDef,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDef {
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDef {
    pub claim: String,
    pub subject: String,
    /// Characteristic of the scalar ring for `indecomposable-triangular`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

/// Everything a config names, built and validated.
pub struct Workspace {
    pub config: WorkspaceConfig,
    pub rings: BTreeMap<String, Arc<FinRing>>,
    pub bimodules: BTreeMap<String, Arc<Bimodule>>,
    pub contexts: BTreeMap<String, Arc<MoritaContext>>,
    pub context_rings: BTreeMap<String, Arc<ContextRing>>,
    /// `(kind, name, report)` for every object, in definition order by kind.
    pub reports: Vec<(&'static str, String, ValidationReport)>,
    pub hash: String,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str, by: &str) -> CliResult<&'a T> {
    map.get(name)
        .ok_or_else(|| config_err(format!("{by}: unknown {kind} `{name}`")))
}

impl Workspace {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let config: WorkspaceConfig = toml::from_str(text).map_err(|e| config_err(format!("parse error: {e}")))?;
        let hash = hex::encode(Sha256::digest(text.as_bytes()));
        let mut ws = Workspace {
            config,
            rings: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            contexts: BTreeMap::new(),
            context_rings: BTreeMap::new(),
            reports: Vec::new(),
            hash,
        };
        ws.build()?;
        Ok(ws)
    }

    fn build(&mut self) -> CliResult<()> {
        // Plain rings may refer to each other; resolve until nothing changes.
        let mut pending: Vec<String> = self
            .config
            .rings
            .iter()
            .filter(|(_, d)| !matches!(d, RingDef::ContextRing { .. }))
            .map(|(k, _)| k.clone())
            .collect();
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for name in pending {
                match self.build_ring(&name)? {
                    Some(ring) => {
                        self.reports.push(("ring", name.clone(), ring.validate()));
                        self.rings.insert(name, Arc::new(ring));
                    }
                    None => rest.push(name),
                }
            }
            if rest.len() == before {
                return Err(config_err(format!("ring `{}`: unresolved or cyclic reference", rest[0])));
            }
            pending = rest;
        }

        let names: Vec<String> = self.config.bimodules.keys().cloned().collect();
        for name in names {
            let module = self.build_bimodule(&name)?;
            self.reports.push(("bimodule", name.clone(), module.validate()));
            self.bimodules.insert(name, Arc::new(module));
        }

        let names: Vec<String> = self.config.contexts.keys().cloned().collect();
        for name in names {
            let ctx = self.build_context(&name)?;
            let report = ctx.validate();
            let ok = report.passed();
            self.reports.push(("context", name.clone(), report));
            let ctx = Arc::new(ctx);
            if ok && self.reports.iter().all(|r| r.0 == "context" || r.2.passed()) {
                let t = ContextRing::build(ctx.clone())?;
                self.context_rings.insert(name.clone(), t);
            }
            self.contexts.insert(name, ctx);
        }

        for (name, def) in &self.config.rings {
            if let RingDef::ContextRing { context } = def {
                lookup(&self.contexts, "context", context, &format!("ring `{name}`"))?;
                // An invalid context already carries its own failed report.
                let Some(t) = self.context_rings.get(context) else { continue };
                let ring = Arc::new(t.ring().as_ref().clone().with_label(name.clone()));
                self.reports.push(("ring", name.clone(), ring.validate()));
                self.rings.insert(name.clone(), ring);
            }
        }

        for (name, pair) in &self.config.pairs {
            for side in [&pair.source, &pair.target] {
                lookup(&self.contexts, "context", side, &format!("pair `{name}`"))?;
            }
        }
        for (i, v) in self.config.verify.iter().enumerate() {
            if theorems::canonical_claim(&v.claim).is_none() {
                return Err(config_err(format!("verify[{i}]: unknown claim `{}`", v.claim)));
            }
            let known = self.config.pairs.contains_key(&v.subject)
                || self.contexts.contains_key(&v.subject)
                || self.rings.contains_key(&v.subject);
            if !known {
                return Err(config_err(format!("verify[{i}]: unknown subject `{}`", v.subject)));
            }
        }
        Ok(())
    }

    fn build_ring(&self, name: &str) -> CliResult<Option<FinRing>> {
        let by = format!("ring `{name}`");
        let get = |n: &String| -> CliResult<Option<Arc<FinRing>>> {
            if !self.config.rings.contains_key(n) {
                return Err(config_err(format!("{by}: unknown ring `{n}`")));
            }
            Ok(self.rings.get(n).cloned())
        };
        let ring = match &self.config.rings[name] {
            RingDef::Cyclic { n } => FinRing::cyclic(*n)?,
            RingDef::Product { factors } => {
                if factors.is_empty() {
                    return Err(config_err(format!("{by}: empty product")));
                }
                let mut parts = Vec::new();
                for f in factors {
                    match get(f)? {
                        Some(r) => parts.push(r),
                        None => return Ok(None),
                    }
                }
                let mut acc = parts[0].as_ref().clone();
                for p in &parts[1..] {
                    acc = FinRing::direct_product(&acc, p)?;
                }
                acc
            }
            RingDef::Matrix { base } | RingDef::Triangular { base } => {
                let Some(b) = get(base)? else { return Ok(None) };
                if matches!(self.config.rings[name], RingDef::Matrix { .. }) {
                    FinRing::matrix_ring(&b)?
                } else {
                    FinRing::upper_triangular(&b)?
                }
            }
            RingDef::Table { orders, products, one } => {
                FinRing::from_parts_unchecked(name, AbGroup::new(orders.clone())?, products.clone(), *one)?
            }
            RingDef::ContextRing { .. } => unreachable!("context rings are built after contexts"),
        };
        Ok(Some(ring.with_label(name)))
    }

    fn ring(&self, name: &str, by: &str) -> CliResult<Arc<FinRing>> {
        if let Some(RingDef::ContextRing { .. }) = self.config.rings.get(name) {
            return Err(config_err(format!("{by}: context ring `{name}` cannot be used here")));
        }
        lookup(&self.rings, "ring", name, by).cloned()
    }

    fn build_bimodule(&self, name: &str) -> CliResult<Bimodule> {
        let by = format!("bimodule `{name}`");
        let module = match &self.config.bimodules[name] {
            BimoduleDef::Zero { left, right } => Bimodule::zero(self.ring(left, &by)?, self.ring(right, &by)?),
            BimoduleDef::Regular { ring } => Bimodule::regular(self.ring(ring, &by)?),
            BimoduleDef::Integer { ring, scalars } => {
                let r = self.ring(ring, &by)?;
                let s = self.ring(scalars, &by)?;
                let k = s.order();
                if s.group().rank() != 1 || s.one() != 1 {
                    return Err(config_err(format!("{by}: scalars `{scalars}` must be a cyclic ring")));
                }
                let n = r.order();
                let left = (0..n * n).map(|i| r.mul(i / n, i % n)).collect();
                let right = (0..n * k).map(|i| r.group().scale((i % k) as i64, i / k)).collect();
                Bimodule::from_tables_unchecked(name, r.group().clone(), r.clone(), s, left, right)?
            }
            BimoduleDef::Table {
                orders,
                left,
                right,
                left_table,
                right_table,
            } => Bimodule::from_tables_unchecked(
                name,
                AbGroup::new(orders.clone())?,
                self.ring(left, &by)?,
                self.ring(right, &by)?,
                left_table.clone(),
                right_table.clone(),
            )?,
        };
        Ok(module.with_label(name))
    }

    fn build_context(&self, name: &str) -> CliResult<MoritaContext> {
        let by = format!("context `{name}`");
        let def = &self.config.contexts[name];
        let r = self.ring(&def.r, &by)?;
        let s = self.ring(&def.s, &by)?;
        let m = lookup(&self.bimodules, "bimodule", &def.m, &by)?.clone();
        let n = lookup(&self.bimodules, "bimodule", &def.n, &by)?.clone();
        let size = m.order() * n.order();
        let pairing = |p: &PairingDef, target: &FinRing, left_order: usize, right_order: usize, what: &str| {
            match p {
                PairingDef::Table(t) => Ok(t.clone()),
                PairingDef::Keyword(k) if k == "zero" => Ok(vec![0; size]),
                PairingDef::Keyword(k) if k == "multiply" => {
                    if left_order != target.order() || right_order != target.order() {
                        return Err(config_err(format!(
                            "{by}: `multiply` {what} needs both modules on the carrier of the target ring"
                        )));
                    }
                    Ok((0..size).map(|i| target.mul(i / right_order, i % right_order)).collect())
                }
                PairingDef::Keyword(k) => Err(config_err(format!("{by}: unknown {what} keyword `{k}`"))),
            }
        };
        let bracket = pairing(&def.bracket, &r, m.order(), n.order(), "bracket")?;
        let paren = pairing(&def.paren, &s, n.order(), m.order(), "paren")?;
        Ok(MoritaContext::new_unchecked(name, r, s, m, n, bracket, paren)?)
    }

    /// Fails with a configuration error naming the first invalid object.
    pub fn ensure_valid(&self) -> CliResult<()> {
        match self.reports.iter().find(|r| !r.2.passed()) {
            Some((kind, name, report)) => Err(config_err(format!("{kind} `{name}` is invalid: {report}"))),
            None => Ok(()),
        }
    }

    /// `(source, target)` for a pair name or a context name.
    pub fn pair(&self, name: &str) -> CliResult<(Arc<ContextRing>, Arc<ContextRing>)> {
        let ctx_ring = |c: &str| lookup(&self.context_rings, "context", c, &format!("pair `{name}`")).cloned();
        match self.config.pairs.get(name) {
            Some(p) => Ok((ctx_ring(&p.source)?, ctx_ring(&p.target)?)),
            None => {
                let t = ctx_ring(name)?;
                Ok((t.clone(), t))
            }
        }
    }

    pub fn options(&self, bound: Option<usize>) -> SearchOptions {
        SearchOptions::with_bound(bound.or(self.config.search_bound).unwrap_or(crate::finalg::DEFAULT_SEARCH_BOUND))
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: Value,
    config_sha256: String,
    results: Value,
}

/// Output text and exit status of one invocation.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            output: match cli.format {
                Format::Text => format!("error: {}\n", e.message()),
                Format::Structured => {
                    let v = json!({
                        "schema_version": SCHEMA_VERSION,
                        "tool": "morita",
                        "version": env!("CARGO_PKG_VERSION"),
                        "error": e.message(),
                        "exit_code": e.exit_code(),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
            },
            code: e.exit_code(),
        },
    }
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| config_err("--config is required"))?;
    let ws = Workspace::load(path)?;
    let (echo, text, results, code) = match &cli.command {
        Command::Validate => cmd_validate(&ws),
        Command::Enumerate { pair, which } => {
            ws.ensure_valid()?;
            cmd_enumerate(&ws, cli, pair, *which)?
        }
        Command::Verify { claim, subject } => {
            ws.ensure_valid()?;
            cmd_verify(&ws, cli, claim, subject.as_deref())?
        }
        Command::Peirce { ring, element } => {
            ws.ensure_valid()?;
            cmd_peirce(&ws, cli, ring, element)?
        }
    };
    let output = match cli.format {
        Format::Text => text,
        Format::Structured => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                tool: "morita",
                version: env!("CARGO_PKG_VERSION"),
                command: echo,
                config_sha256: ws.hash.clone(),
                results,
            };
            format!("{}\n", serde_json::to_string_pretty(&report).expect("json"))
        }
    };
    Ok(Outcome { output, code })
}

type CmdOutput = (Value, String, Value, i32);

fn cmd_validate(ws: &Workspace) -> CmdOutput {
    let mut text = String::new();
    let mut items = Vec::new();
    for (kind, name, report) in &ws.reports {
        let status = if report.passed() { "ok" } else { "FAILED" };
        text.push_str(&format!("{kind:<9} {name:<20} {status}\n"));
        for c in report.failures() {
            text.push_str(&format!(
                "    {}: {}\n",
                c.name,
                c.witness.as_deref().unwrap_or("-")
            ));
        }
        items.push(json!({"kind": kind, "name": name, "passed": report.passed(), "checks": report.checks}));
    }
    let ok = ws.reports.iter().all(|r| r.2.passed());
    (
        json!({"command": "validate"}),
        text,
        json!({"objects": items, "all_passed": ok}),
        if ok { EXIT_OK } else { EXIT_FALSE },
    )
}

fn map_value(map: &RingMap, full: bool) -> CliResult<Value> {
    let membership = membership_test(map)?;
    let mut v = serde_json::to_value(map.record(full)).expect("json");
    v["membership"] = json!(membership.label());
    Ok(v)
}

fn cmd_enumerate(ws: &Workspace, cli: &Cli, pair: &str, which: Which) -> CliResult<CmdOutput> {
    let options = ws.options(cli.bound);
    let (t, t2) = ws.pair(pair)?;
    let echo = json!({"command": "enumerate", "pair": pair, "which": which});
    let mut text = format!("{} -> {}\n", t.label(), t2.label());
    let results = match which {
        Which::Iso | Which::Graded | Which::Semigraded => {
            let mut maps = Vec::new();
            for iso in ring_isos_bruteforce(t.ring(), t2.ring(), options)? {
                let m = RingMap::from_iso(t.clone(), t2.clone(), &iso)?;
                let g = m.grades();
                let keep = match which {
                    Which::Graded => g.graded || g.antigraded,
                    Which::Semigraded => g.semigraded || g.antisemigraded,
                    _ => true,
                };
                if keep {
                    maps.push(m);
                }
            }
            text.push_str(&format!("{} maps\n", maps.len()));
            let mut items = Vec::new();
            for m in &maps {
                let v = map_value(m, cli.full)?;
                text.push_str(&format!(
                    "  E11 -> {:<28} {:<8} {}\n",
                    v["image_of_e11"].as_str().unwrap_or(""),
                    v["membership"].as_str().unwrap_or(""),
                    &v["table_sha256"].as_str().unwrap_or("")[..16]
                ));
                items.push(v);
            }
            json!({"count": maps.len(), "maps": items})
        }
        Which::Iso0 => {
            let (c0, c1) = enumerate_iso0(&t, &t2, options)?;
            text.push_str(&format!("class0: {}, class1: {}\n", c0.len(), c1.len()));
            let mut classes = Vec::new();
            for list in [&c0, &c1] {
                let mut items = Vec::new();
                for tuple in list {
                    let m = realize(tuple)?;
                    let rec = tuple.record();
                    text.push_str(&format!(
                        "  {} m={} n={} -> {}\n",
                        tuple.kind(),
                        rec.m_entry,
                        rec.n_entry,
                        &table_hash(m.table())[..16]
                    ));
                    items.push(json!({"tuple": rec, "map": m.record(cli.full)}));
                }
                classes.push(items);
            }
            json!({"class0_count": c0.len(), "class1_count": c1.len(), "class0": classes[0], "class1": classes[1]})
        }
        Which::Idempotents => {
            let mut items = Vec::new();
            for e in t.ring().idempotents() {
                let kind = t.classify_idempotent(e)?;
                text.push_str(&format!("  {:<28} {kind}\n", t.format(e)));
                items.push(json!({"element": e, "matrix": t.format(e), "kind": kind}));
            }
            json!({"count": items.len(), "idempotents": items})
        }
        Which::CentralIdempotents => {
            let oracle = t.ring().central_idempotents();
            let lemma = t.central_idempotents_via_lemma();
            for &e in &oracle {
                text.push_str(&format!("  {}\n", t.format(e)));
            }
            text.push_str(&format!("agrees with base-data prediction: {}\n", oracle == lemma));
            json!({
                "count": oracle.len(),
                "central_idempotents": oracle.iter().map(|&e| t.format(e)).collect::<Vec<_>>(),
                "prediction_agrees": oracle == lemma,
            })
        }
    };
    Ok((echo, text, results, EXIT_OK))
}

fn run_spec(ws: &Workspace, spec: &VerifyDef, options: SearchOptions) -> CliResult<Verdict> {
    let claim = theorems::canonical_claim(&spec.claim)
        .ok_or_else(|| config_err(format!("unknown claim `{}`", spec.claim)))?;
    let subject = spec.subject.as_str();
    let ctx = || -> CliResult<Arc<ContextRing>> { Ok(ws.pair(subject)?.0) };
    let verdict = match claim {
        "strict-graded" => {
            let (a, b) = ws.pair(subject)?;
            theorems::verify_strict_implies_graded(&a, &b, options)?
        }
        "semigraded" => {
            let (a, b) = ws.pair(subject)?;
            theorems::verify_semigraded_theorem(&a, &b, options)?
        }
        "zero-maps" => {
            let (a, b) = ws.pair(subject)?;
            theorems::verify_zero_maps_theorem(&a, &b, options)?
        }
        "central-idempotents" => theorems::verify_central_idempotent_lemma(&ctx()?),
        "indecomposable-corners" => theorems::verify_indecomposable_corners(&ctx()?),
        "nonzero-maps-obstruction" => theorems::verify_nonzero_maps_obstruction(&ctx()?, options)?,
        "group-structure" => theorems::verify_group_structure(&ctx()?, options)?,
        "peirce-round-trip" => theorems::verify_peirce_round_trip(&ctx()?)?,
        "decomposable-swap" => theorems::verify_decomposable_swap(&ws.ring(subject, "verify")?)?,
        "indecomposable-triangular" => {
            let r = ws.ring(subject, "verify")?;
            let k = spec.k.unwrap_or(r.group().exponent() as u32);
            theorems::verify_indecomposable_triangular(&r, k)
        }
        other => return Err(config_err(format!("claim `{other}` has no runner"))),
    };
    Ok(verdict)
}

fn cmd_verify(ws: &Workspace, cli: &Cli, claim: &str, subject: Option<&str>) -> CliResult<CmdOutput> {
    let options = ws.options(cli.bound);
    if claim != "all" && theorems::canonical_claim(claim).is_none() {
        return Err(config_err(format!("unknown claim `{claim}`; known: all, {}", CLAIMS.join(", "))));
    }
    let specs: Vec<VerifyDef> = match subject {
        Some(s) => {
            if claim == "all" {
                return Err(config_err("--subject needs a specific claim"));
            }
            vec![VerifyDef {
                claim: claim.into(),
                subject: s.into(),
                k: None,
            }]
        }
        None => ws
            .config
            .verify
            .iter()
            .filter(|v| claim == "all" || v.claim == claim)
            .cloned()
            .collect(),
    };
    if specs.is_empty() {
        return Err(config_err(format!("no configured checks for `{claim}`")));
    }
    let mut verdicts = Vec::new();
    for spec in &specs {
        let start = Instant::now();
        let mut v = run_spec(ws, spec, options)?;
        if cli.timings {
            v.elapsed_ms = Some(start.elapsed().as_millis());
        }
        verdicts.push(v);
    }
    let mut text = String::new();
    for v in &verdicts {
        text.push_str(&format!("{v}\n"));
        if cli.timings {
            text.push_str(&format!("    {} ms\n", v.elapsed_ms.unwrap_or(0)));
        }
    }
    let count = |s: theorems::Status| verdicts.iter().filter(|v| v.status == s).count();
    let (holds, fails, na) = (
        count(theorems::Status::Holds),
        count(theorems::Status::False),
        count(theorems::Status::NotApplicable),
    );
    text.push_str(&format!("{holds} hold, {fails} false, {na} not applicable\n"));
    let echo = json!({"command": "verify", "claim": claim, "subject": subject});
    let results = json!({"verdicts": verdicts, "holds": holds, "false": fails, "not_applicable": na});
    Ok((echo, text, results, if fails > 0 { EXIT_FALSE } else { EXIT_OK }))
}

fn parse_element(ws: &Workspace, ring_name: &str, ring: &FinRing, spec: &str) -> CliResult<Elem> {
    let spec = spec.trim();
    if spec == "e11" || spec == "e22" {
        let ctx = match ws.config.rings.get(ring_name) {
            Some(RingDef::ContextRing { context }) => context.clone(),
            _ => ring_name.to_string(),
        };
        let t = lookup(&ws.context_rings, "context ring", &ctx, "peirce")?;
        return Ok(if spec == "e11" { t.e11() } else { t.e22() });
    }
    let value = if spec.contains(',') {
        let coords: Vec<i64> = spec
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| config_err(format!("element `{spec}`: {e}")))?;
        if coords.len() != ring.group().rank() {
            return Err(config_err(format!(
                "element `{spec}`: expected {} coordinates",
                ring.group().rank()
            )));
        }
        ring.group().encode(&coords)?
    } else {
        spec.parse::<Elem>().map_err(|e| config_err(format!("element `{spec}`: {e}")))?
    };
    if value >= ring.order() {
        return Err(config_err(format!("element `{spec}` out of range")));
    }
    Ok(value)
}

fn cmd_peirce(ws: &Workspace, cli: &Cli, ring_name: &str, element: &str) -> CliResult<CmdOutput> {
    let ring = match ws.context_rings.get(ring_name) {
        Some(t) if !ws.rings.contains_key(ring_name) => t.ring().clone(),
        _ => lookup(&ws.rings, "ring", ring_name, "peirce")?.clone(),
    };
    let e = parse_element(ws, ring_name, &ring, element)?;
    let d = peirce_decompose(&ring, e)?;
    let c = &d.context;
    let echo = json!({"command": "peirce", "ring": ring_name, "element": element});
    let orders = [c.r().order(), c.m().order(), c.n().order(), c.s().order()];
    let text = format!(
        "{} split at {}\n  |eAe|={} |eA(1-e)|={} |(1-e)Ae|={} |(1-e)A(1-e)|={}\n  strict: {}  zero pairings: {}\n  witness {}\n",
        ring.label(),
        ring.format(e),
        orders[0],
        orders[1],
        orders[2],
        orders[3],
        c.is_strict(),
        c.has_zero_maps(),
        table_hash(d.witness.table())
    );
    let mut results = json!({
        "idempotent": ring.format(e),
        "orders": {"r": orders[0], "m": orders[1], "n": orders[2], "s": orders[3]},
        "strict": c.is_strict(),
        "zero_pairings": c.has_zero_maps(),
        "bracket_sha256": table_hash(c.bracket_table()),
        "paren_sha256": table_hash(c.paren_table()),
        "witness_sha256": table_hash(d.witness.table()),
    });
    if cli.full {
        results["bracket"] = json!(c.bracket_table());
        results["paren"] = json!(c.paren_table());
        results["witness"] = json!(d.witness.table());
    }
    Ok((echo, text, results, EXIT_OK))
}
