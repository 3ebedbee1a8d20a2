//! Command-line front end and the named verification suites.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::fincat::FinCat;
use crate::gray::{check_graytenscolim, gray_colax, gray_lax, ColimCase, GrayProduct};
use crate::mates::{
    check_galois_oracle, check_mates, check_pasting, find_adjunctions, mate, nonposetal_bed, perturb_counit, pos_twocat,
    AdjunctionData, MateCheck, Square2,
};
use crate::phi::{check_nu_naturality, check_odot_pushout, check_phi_inner_cosegal, check_phi_outer_cosegal, check_phieq, nu, phi_obj};
use crate::poset::{ordinal_poset, posets_up_to_iso, MaxChain};
use crate::probes::{check_segal, default_probes, label_words, parse_probes};
use crate::theta2::Theta2Obj;
use crate::twocat::{
    cotensor, localize_2morphisms, realize, to_dot, ColimitReport, Corruption, Probe, SearchError, SearchOptions, TwoCat,
    VerifyError, DEFAULT_BUDGET, PROBE_SCOPE,
};

pub const DEFAULT_BOUND: usize = 6;
pub const BUDGET_ENV: &str = "GRAY2_BUDGET";

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Segal,
    Graytenscolim,
    Phieq,
    Odot,
    Mates,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Segal => "segal",
            Suite::Graytenscolim => "graytenscolim",
            Suite::Phieq => "phieq",
            Suite::Odot => "odot",
            Suite::Mates => "mates",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        <Suite as ValueEnum>::from_str(s, true).ok()
    }
}

#[derive(Debug, Parser)]
#[command(name = "gray2", version, about = "Finite strict 2-categories, Gray tensor products and mates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Upper bound on sizes accepted by the construction commands.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Search budget; falls back to the config file, then GRAY2_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Probe list: `default`, Θ₂ objects like `[2](1,0)`, or cotensors like `[1](1)^1`, separated by `;`.
    #[arg(long, global = true)]
    pub probes: Option<String>,
    /// Inject a fault so that checks must fail.
    #[arg(long, global = true, value_enum)]
    pub corrupt: Option<Corruption>,
    /// key = value settings file (budget, bound, probes, format).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The poset of (k,m)-shuffles.
    Shuffles { k: usize, m: usize },
    /// Gray tensor product of two Θ₂ objects.
    Gray {
        left: String,
        right: String,
        #[arg(long)]
        lax: bool,
    },
    /// Φ(I, [m]).
    Phi { obj: String, m: usize },
    /// The comparison gray(I, [m]) -> Φ(I, [m]).
    Nu { obj: String, m: usize },
    /// The cotensor realize(I)^[n].
    Cotensor { obj: String, n: usize },
    /// Invert all 2-cells of realize(I), or of gray(I, J) when J is given.
    Localize { obj: String, other: Option<String> },
    #[command(subcommand)]
    Mates(MatesCommand),
    /// Run a verification suite.
    Verify { suite: Suite },
}

#[derive(Debug, Subcommand)]
pub enum MatesCommand {
    /// All adjunctions in a 2-category given as JSON.
    Find { file: PathBuf },
    /// The mate of a square; input holds `ambient`, `square`, `top`, `bottom`.
    Mate { file: PathBuf },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    budget: Option<u64>,
    bound: Option<usize>,
    probes: Option<String>,
    format: Option<Format>,
}

/// Resolved settings for a run.
#[derive(Debug, Clone)]
pub struct Settings {
    pub budget: u64,
    pub bound: usize,
    pub probes: Vec<Probe>,
    pub corrupt: Option<Corruption>,
    pub format: Format,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { budget: DEFAULT_BUDGET, bound: DEFAULT_BOUND, probes: default_probes(), corrupt: None, format: Format::Text }
    }
}

impl Settings {
    pub fn search(&self) -> SearchOptions {
        SearchOptions { budget: self.budget, ..Default::default() }
    }

    /// Flags win over the config file; the environment is the last fallback for the budget.
    fn resolve(cli: &Cli) -> Result<Settings, String> {
        let file = match &cli.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                toml::from_str::<ConfigFile>(&text).map_err(|e| format!("bad config {}: {e}", p.display()))?
            }
            None => ConfigFile::default(),
        };
        let env_budget = match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(v.trim().parse::<u64>().map_err(|e| format!("bad {BUDGET_ENV}: {e}"))?),
            Err(_) => None,
        };
        let probes = match cli.probes.as_ref().or(file.probes.as_ref()) {
            Some(spec) => parse_probes(spec)?,
            None => default_probes(),
        };
        Ok(Settings {
            budget: cli.budget.or(file.budget).or(env_budget).unwrap_or(DEFAULT_BUDGET),
            bound: cli.bound.or(file.bound).unwrap_or(DEFAULT_BOUND),
            probes,
            corrupt: cli.corrupt,
            format: cli.format.or(file.format).unwrap_or(Format::Text),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub cardinalities: Value,
    pub witness: Option<String>,
}

impl CheckResult {
    fn from_bool(name: String, ok: bool, cardinalities: Value, witness: Option<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        CheckResult { name, status, cardinalities, witness: if ok { None } else { witness } }
    }
}

/// Outcome of `verify`; wall time goes to stderr so that this stays byte-stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub scope: &'static str,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: String, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.status == Status::Pass);
        RunReport { command, scope: PROBE_SCOPE, checks, passed }
    }

    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::BudgetExceeded) {
            EXIT_BUDGET
        } else if self.passed {
            0
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::BudgetExceeded => "BUDGET",
                Status::Error => "ERROR",
            };
            let _ = write!(s, "{tag} {}", c.name);
            if let Some(w) = &c.witness {
                let _ = write!(s, " -- {w}");
            }
            s.push('\n');
        }
        let n_pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let _ = writeln!(s, "{}: {n_pass}/{} checks passed ({})", self.command, self.checks.len(), self.scope);
        s
    }
}

fn colimit_check(name: String, r: Result<ColimitReport, VerifyError>) -> CheckResult {
    match r {
        Ok(rep) => {
            let card = json!(rep
                .probes
                .iter()
                .map(|p| json!({"probe": p.probe, "apex_maps": p.apex_maps, "limit": p.limit_size}))
                .collect::<Vec<_>>());
            let witness = rep
                .first_failure()
                .map(|p| p.witness.clone().unwrap_or_else(|| format!("probe {}: no bijection", p.probe)));
            CheckResult::from_bool(name, rep.passed(), card, witness)
        }
        Err(VerifyError::Search(SearchError::BudgetExceeded(b))) => CheckResult {
            name,
            status: Status::BudgetExceeded,
            cardinalities: Value::Null,
            witness: Some(format!("search budget {b} exceeded")),
        },
        Err(e) => CheckResult { name, status: Status::Error, cardinalities: Value::Null, witness: Some(e.to_string()) },
    }
}

fn mate_check(name: String, r: MateCheck) -> CheckResult {
    let card = json!({
        "adjunctions": r.adjunctions,
        "triangles": r.triangles_checked,
        "squares": r.squares_checked,
        "pastings": r.pastings_checked,
        "unit_counit_coherence": r.laxfunadj_checked,
    });
    CheckResult::from_bool(name, r.passed(), card, r.failures.first().cloned())
}

fn budget_check(name: String, e: SearchError) -> CheckResult {
    CheckResult { name, status: Status::BudgetExceeded, cardinalities: Value::Null, witness: Some(e.to_string()) }
}

fn suite_segal(s: &Settings) -> Vec<CheckResult> {
    label_words(3)
        .iter()
        .map(|w| {
            let names: Vec<String> = w.iter().map(|l| l.to_string()).collect();
            let name = format!("segal [{}]({})", w.len(), names.join(","));
            colimit_check(name, check_segal(w, &s.probes, &s.search(), s.corrupt))
        })
        .collect()
}

fn suite_graytenscolim(s: &Settings) -> Vec<CheckResult> {
    ColimCase::ALL
        .iter()
        .map(|&c| colimit_check(format!("graytenscolim {}", c.name()), check_graytenscolim(c, &s.probes, &s.search(), s.corrupt)))
        .collect()
}

fn suite_odot(s: &Settings) -> Vec<CheckResult> {
    [Theta2Obj::arrow(), Theta2Obj::two_cell()]
        .iter()
        .map(|o| colimit_check(format!("odot {o} x [1]"), check_odot_pushout(o, 1, &s.probes, &s.search(), s.corrupt)))
        .collect()
}

fn suite_phieq(s: &Settings) -> Vec<CheckResult> {
    let mut out = Vec::new();
    match check_phieq(s.budget, s.corrupt) {
        Ok(r) => {
            let card = json!({"eta_cases": r.eta_restricts.len()});
            out.push(CheckResult::from_bool("phieq generators and eta'".into(), r.passed(), card, r.witness.clone()));
        }
        Err(e) => out.push(budget_check("phieq generators and eta'".into(), e)),
    }
    let nat = check_nu_naturality(2, 2, 2);
    out.push(CheckResult::from_bool(
        "nu naturality k<=2 n<=2 m<=2".into(),
        nat.passed(),
        json!({"functors": nat.functors_validated, "squares": nat.squares_checked}),
        nat.failures.first().cloned(),
    ));
    for n in 1..=2 {
        for m in 0..=1 {
            out.push(colimit_check(format!("phi inner co-Segal n={n} m={m}"), check_phi_inner_cosegal(n, m, &s.probes, &s.search(), s.corrupt)));
        }
    }
    for obj in Theta2Obj::bounded(2, 1).into_iter().filter(|o| o.k() == 2) {
        for m in 0..=1 {
            out.push(colimit_check(
                format!("phi outer co-Segal {obj} m={m}"),
                check_phi_outer_cosegal(&obj, m, &s.probes, &s.search(), s.corrupt),
            ));
        }
    }
    out
}

fn suite_mates(s: &Settings) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let ps: Vec<_> = (1..=3).flat_map(posets_up_to_iso).collect();
    let bed = pos_twocat(&ps);
    match find_adjunctions(&bed, s.budget) {
        Ok(adjs) => {
            out.push(mate_check("mates Galois oracle, posets <= 3".into(), check_galois_oracle(&ps, &bed, &adjs)));
            out.push(mate_check("mates triangles and involution, posets <= 3".into(), check_mates(&bed, &adjs)));
        }
        Err(e) => out.push(budget_check("mates posets <= 3".into(), e)),
    }
    let chains = pos_twocat(&[ordinal_poset(0), ordinal_poset(1), ordinal_poset(2)]);
    match find_adjunctions(&chains, s.budget) {
        Ok(adjs) => out.push(mate_check("mates pasting, chains [0],[1],[2]".into(), check_pasting(&chains, &adjs))),
        Err(e) => out.push(budget_check("mates pasting".into(), e)),
    }
    let np = nonposetal_bed();
    match find_adjunctions(&np, s.budget) {
        Ok(adjs) => {
            let adjs: Vec<AdjunctionData> = match s.corrupt {
                Some(_) => adjs.iter().map(|a| perturb_counit(&np, a).unwrap_or(*a)).collect(),
                None => adjs,
            };
            out.push(mate_check("mates non-posetal bed".into(), check_mates(&np, &adjs)));
            out.push(mate_check("mates pasting, non-posetal bed".into(), check_pasting(&np, &adjs)));
        }
        Err(e) => out.push(budget_check("mates non-posetal bed".into(), e)),
    }
    out
}

/// Runs a named suite. `All` runs every suite in a fixed order.
pub fn run_suite(suite: Suite, s: &Settings) -> Vec<CheckResult> {
    match suite {
        Suite::Segal => suite_segal(s),
        Suite::Graytenscolim => suite_graytenscolim(s),
        Suite::Phieq => suite_phieq(s),
        Suite::Odot => suite_odot(s),
        Suite::Mates => suite_mates(s),
        Suite::All => [Suite::Segal, Suite::Graytenscolim, Suite::Phieq, Suite::Odot, Suite::Mates]
            .iter()
            .flat_map(|&x| run_suite(x, s))
            .collect(),
    }
}

pub fn verify(suite: Suite, s: &Settings) -> RunReport {
    let mut cmd = format!("verify {}", suite.name());
    if let Some(c) = s.corrupt {
        let _ = write!(cmd, " --corrupt {}", c.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default());
    }
    RunReport::new(cmd, run_suite(suite, s))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
}

fn parse_obj(s: &str, bound: usize) -> Result<Theta2Obj, CliError> {
    let o: Theta2Obj = s.parse().map_err(|e| CliError::Usage(format!("cannot parse {s:?}: {e}")))?;
    if o.k() > bound || o.ns().iter().any(|&n| n > bound) {
        return Err(CliError::Usage(format!("{o} exceeds the bound {bound}")));
    }
    Ok(o)
}

fn check_bound(v: usize, bound: usize, what: &str) -> Result<(), CliError> {
    if v > bound {
        return Err(CliError::Usage(format!("{what} = {v} exceeds the bound {bound}")));
    }
    Ok(())
}

fn twocat_text(c: &TwoCat) -> String {
    let mut s = String::new();
    let (o, one, two) = c.counts();
    let _ = writeln!(s, "objects: {}", c.objects().join(" "));
    let _ = writeln!(s, "counts: {o} objects, {one} 1-cells, {two} 2-cells");
    for x in 0..c.n_objects() {
        for y in 0..c.n_objects() {
            let h = c.hom(x, y);
            if h.n_objects() == 0 {
                continue;
            }
            let _ = writeln!(s, "hom({}, {}): {} 1-cells, {} 2-cells", c.object_label(x), c.object_label(y), h.n_objects(), h.n_morphisms());
            for f in c.one_cells_between(x, y) {
                let _ = writeln!(s, "  {}", c.one_cell_label(f));
            }
        }
    }
    s
}

fn emit_twocat(c: &TwoCat, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(c).expect("serializable") + "\n",
        Format::Dot => to_dot(c),
        Format::Text => twocat_text(c),
    }
}

fn fincat_dot(c: &FinCat) -> String {
    let mut s = String::from("digraph cat {\n");
    for (x, l) in c.objects().iter().enumerate() {
        let _ = writeln!(s, "  n{x} [label={l:?}];");
    }
    for (f, m) in c.morphisms().iter().enumerate() {
        if !c.is_identity(f) {
            let _ = writeln!(s, "  n{} -> n{} [label={:?}];", m.src, m.tgt, m.label);
        }
    }
    s.push_str("}\n");
    s
}

pub fn shuffles_out(k: usize, m: usize, format: Format) -> String {
    let mc = MaxChain::new(k, m);
    let names: Vec<String> = mc.paths.iter().map(|p| p.step_string()).collect();
    let name = |i: usize| if names[i].is_empty() { "()".to_string() } else { names[i].clone() };
    let covers = mc.poset.covers();
    match format {
        Format::Json => {
            let edges: Vec<[String; 2]> = covers.iter().map(|&(a, b)| [name(a), name(b)]).collect();
            let nodes: Vec<String> = (0..names.len()).map(name).collect();
            serde_json::to_string_pretty(&json!({"k": k, "m": m, "nodes": nodes, "edges": edges})).unwrap() + "\n"
        }
        Format::Dot => {
            let mut s = String::from("digraph shuffles {\n");
            for i in 0..names.len() {
                let _ = writeln!(s, "  n{i} [label={:?}];", name(i));
            }
            for (a, b) in covers {
                let _ = writeln!(s, "  n{a} -> n{b};");
            }
            s.push_str("}\n");
            s
        }
        Format::Text => {
            let mut s = format!("{} shuffles of ({k},{m})\n", names.len());
            for (a, b) in covers {
                let _ = writeln!(s, "{} < {}", name(a), name(b));
            }
            s
        }
    }
}

#[derive(Deserialize)]
struct MateInput {
    ambient: TwoCat,
    square: Square2,
    top: AdjunctionData,
    bottom: AdjunctionData,
}

fn read_file(p: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
}

fn execute(cmd: &Command, s: &Settings) -> Result<(String, i32), CliError> {
    let f = s.format;
    let out = match cmd {
        Command::Shuffles { k, m } => {
            check_bound(*k, s.bound, "k")?;
            check_bound(*m, s.bound, "m")?;
            shuffles_out(*k, *m, f)
        }
        Command::Gray { left, right, lax } => {
            let (a, b) = (parse_obj(left, s.bound)?, parse_obj(right, s.bound)?);
            let c = if *lax { gray_lax(&a, &b) } else { gray_colax(&a, &b) };
            emit_twocat(&c, f)
        }
        Command::Phi { obj, m } => {
            check_bound(*m, s.bound, "m")?;
            emit_twocat(&phi_obj(&parse_obj(obj, s.bound)?, *m), f)
        }
        Command::Nu { obj, m } => {
            check_bound(*m, s.bound, "m")?;
            let o = parse_obj(obj, s.bound)?;
            let (g, target, fun) = nu(&o, *m);
            nu_out(&g, &target, &fun.one, f)
        }
        Command::Cotensor { obj, n } => {
            check_bound(*n, s.bound, "n")?;
            emit_twocat(&cotensor(&realize(&parse_obj(obj, s.bound)?), *n), f)
        }
        Command::Localize { obj, other } => {
            let a = parse_obj(obj, s.bound)?;
            let c = match other {
                Some(b) => gray_colax(&a, &parse_obj(b, s.bound)?),
                None => realize(&a),
            };
            let l = localize_2morphisms(&c).map_err(|e| CliError::Usage(e.to_string()))?;
            match f {
                Format::Json => serde_json::to_string_pretty(&l).unwrap() + "\n",
                Format::Dot => fincat_dot(&l),
                Format::Text => format!("{} objects, {} morphisms\n", l.n_objects(), l.n_morphisms()),
            }
        }
        Command::Mates(MatesCommand::Find { file }) => {
            let x: TwoCat = serde_json::from_str(&read_file(file)?).map_err(|e| CliError::Usage(format!("bad 2-category: {e}")))?;
            let adjs = find_adjunctions(&x, s.budget).map_err(|e| CliError::Budget(e.to_string()))?;
            match f {
                Format::Text => adjs
                    .iter()
                    .map(|a| format!("{} -| {}\n", x.one_cell_label(a.l), x.one_cell_label(a.r)))
                    .collect(),
                _ => serde_json::to_string_pretty(&adjs).unwrap() + "\n",
            }
        }
        Command::Mates(MatesCommand::Mate { file }) => {
            let inp: MateInput =
                serde_json::from_str(&read_file(file)?).map_err(|e| CliError::Usage(format!("bad mate input: {e}")))?;
            let m = mate(&inp.ambient, &inp.square, &inp.top, &inp.bottom).map_err(|e| CliError::Usage(e.to_string()))?;
            match f {
                Format::Text => format!(
                    "{:?} square, filler {}\n",
                    m.direction,
                    inp.ambient.two_cell_label(m.filler)
                ),
                _ => serde_json::to_string_pretty(&m).unwrap() + "\n",
            }
        }
        Command::Verify { suite } => {
            let r = verify(*suite, s);
            let text = match f {
                Format::Json => serde_json::to_string_pretty(&r).unwrap() + "\n",
                _ => r.to_text(),
            };
            return Ok((text, r.exit_code()));
        }
    };
    Ok((out, 0))
}

fn nu_out(g: &GrayProduct, target: &TwoCat, one: &[usize], f: Format) -> String {
    let rows: Vec<(String, String, String)> = (0..g.cat.n_one_cells())
        .map(|c| {
            let k = g.cat.one_cell(c);
            let ends = format!("{} -> {}", g.cat.object_label(k.src), g.cat.object_label(k.tgt));
            (ends, g.cat.one_cell_label(c).to_string(), target.one_cell_label(one[c]).to_string())
        })
        .collect();
    match f {
        Format::Text | Format::Dot => rows.iter().map(|(e, a, b)| format!("{e}: {a} |-> {b}\n")).collect(),
        Format::Json => {
            let table: Vec<Value> = rows.iter().map(|(e, a, b)| json!({"ends": e, "cell": a, "image": b})).collect();
            serde_json::to_string_pretty(&json!({"table": table})).unwrap() + "\n"
        }
    }
}

/// Parses arguments, runs, and returns the exit code. Wall time goes to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let settings = match Settings::resolve(&cli) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let result = execute(&cli.command, &settings);
    let _ = writeln!(err, "wall time: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Budget(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_BUDGET
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut full = vec!["gray2"];
        full.extend_from_slice(args);
        let code = run(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn shuffles_json() {
        let (code, out, _) = call(&["shuffles", "1", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["nodes"], json!(["HV", "VH"]));
        assert_eq!(v["edges"].as_array().unwrap().len(), 1);
        let (_, out, _) = call(&["shuffles", "3", "2", "--format", "json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 10);
        let (_, out, _) = call(&["shuffles", "0", "5", "--format", "dot"]);
        assert_eq!(out.matches("label").count(), 1);
    }

    #[test]
    fn bound_and_parse_errors() {
        assert_eq!(call(&["shuffles", "7", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["shuffles", "7", "1", "--bound", "8"]).0, 0);
        assert_eq!(call(&["gray", "[1](x)", "[1](0)"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "nonsense"]).0, EXIT_USAGE);
    }

    #[test]
    fn gray_dumps() {
        let (code, out, err) = call(&["gray", "[1](0)", "[1](0)", "--format", "json"]);
        assert_eq!(code, 0);
        assert!(err.contains("wall time"));
        let c: TwoCat = serde_json::from_str(&out).unwrap();
        assert_eq!(c.counts().0, 4);
        let (_, out, _) = call(&["gray", "[1](1)", "[1](0)"]);
        assert!(out.contains("hom(00, 11): 4 1-cells"));
        assert!(out.contains("(path=HV, i=(0), j=(0))"));
        let (_, out, _) = call(&["gray", "[0]", "[2](1,0)", "--format", "dot"]);
        assert!(out.starts_with("digraph"));
    }

    #[test]
    fn other_dumps() {
        assert_eq!(call(&["phi", "[1](0)", "1"]).0, 0);
        let (_, out, _) = call(&["nu", "[1](0)", "1", "--format", "json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(!v["table"].as_array().unwrap().is_empty());
        assert_eq!(call(&["cotensor", "[1](1)", "1"]).0, 0);
        let (_, out, _) = call(&["localize", "[1](1)", "[1](0)"]);
        assert_eq!(out, "4 objects, 9 morphisms\n");
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = call(&["verify", "graytenscolim", "--probes", "[1](0);[1](1)"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3);
        let (code, out, _) = call(&["verify", "odot", "--probes", "[1](1)", "--corrupt", "collapse2-cells"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("FAIL") && out.contains("--"));
        let (code, _, _) = call(&["verify", "graytenscolim", "--budget", "1"]);
        assert_eq!(code, EXIT_BUDGET);
    }

    #[test]
    fn config_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("gray2.toml");
        std::fs::write(&p, "bound = 1\nformat = \"json\"\n").unwrap();
        let path = p.to_str().unwrap();
        assert_eq!(call(&["shuffles", "2", "1", "--config", path]).0, EXIT_USAGE);
        let (code, out, _) = call(&["shuffles", "1", "1", "--config", path]);
        assert_eq!(code, 0);
        assert!(out.trim_start().starts_with('{'));
        let (_, out, _) = call(&["shuffles", "1", "1", "--config", path, "--format", "text"]);
        assert!(out.starts_with("2 shuffles"));
        std::fs::write(&p, "colour = 1\n").unwrap();
        assert_eq!(call(&["shuffles", "1", "1", "--config", path]).0, EXIT_USAGE);
    }

    #[test]
    fn mates_commands() {
        let dir = tempfile::tempdir().unwrap();
        let x = pos_twocat(&[ordinal_poset(0), ordinal_poset(1)]);
        let p = dir.path().join("x.json");
        std::fs::write(&p, serde_json::to_string(&x).unwrap()).unwrap();
        let (code, out, _) = call(&["mates", "find", p.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code, 0);
        let adjs: Vec<AdjunctionData> = serde_json::from_str(&out).unwrap();
        assert_eq!(adjs, find_adjunctions(&x, DEFAULT_BUDGET).unwrap());
        let a = adjs.iter().find(|a| a.a != a.b).unwrap();
        let sq = crate::mates::colax_squares(&x, a, a)[0];
        let input = json!({"ambient": x, "square": sq, "top": a, "bottom": a});
        let q = dir.path().join("sq.json");
        std::fs::write(&q, input.to_string()).unwrap();
        let (code, out, _) = call(&["mates", "mate", q.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code, 0);
        let m: Square2 = serde_json::from_str(&out).unwrap();
        assert_eq!(mate(&x, &m, a, a).unwrap(), sq);
    }
}
