//! The `loopforge` command line: `search`, `check` and
//! `verify-reformulation`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use loopforge_core::catalog::{parse_cycles, Catalog};
use loopforge_core::folder::{normalize_transversal, verify_reformulation, ReformulationReport};
use loopforge_core::loopcore::LoopProperties;
use loopforge_core::search::{
    search_targets, summarize, DegreeSummary, Limits, Mode, SearchOptions, SearchReport, SearchTarget,
};
use loopforge_core::{LoopTable, PermGroup, Permutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "loopforge", version, about = "Search primitive groups for simple (right) automorphic loops")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search every catalog group of the given degrees.
    Search(SearchArgs),
    /// Print the properties of a loop given as a JSON table.
    Check(CheckArgs),
    /// Evaluate the six folder conditions for a group and a transversal.
    VerifyReformulation(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// A degree, a range `a-b`, or a comma-separated list of either.
    #[arg(long, short)]
    pub degree: String,
    /// `ra`, `aut` or `caut`.
    #[arg(long, short, default_value = "ra")]
    pub mode: Mode,
    /// JSON-lines group catalog; the built-in catalog when absent.
    #[arg(long, env = "LOOPFORGE_CATALOG")]
    pub catalog: Option<PathBuf>,
    /// Recompute the catalog's claimed tags before searching.
    #[arg(long)]
    pub strict_catalog: bool,
    /// Reduce the simple non-associative loops of each degree up to
    /// isomorphism.
    #[arg(long)]
    pub iso_filter: bool,
    /// Search every group, ignoring all pre-filters.
    #[arg(long)]
    pub force_search: bool,
    /// Drop catalog entries tagged known-not-mlt.
    #[arg(long)]
    pub use_known_exclusions: bool,
    #[arg(long, value_name = "BOOL")]
    pub skip_4transitive: Option<bool>,
    #[arg(long, value_name = "BOOL")]
    pub skip_solvable: Option<bool>,
    #[arg(long, value_name = "BOOL")]
    pub affine_prune: Option<bool>,
    #[arg(long, default_value_t = Limits::default().coset)]
    pub coset_limit: u64,
    #[arg(long, default_value_t = Limits::default().candidate_orbits)]
    pub orbit_limit: u64,
    #[arg(long, default_value_t = Limits::default().clique_nodes)]
    pub clique_limit: u64,
    #[arg(long, default_value_t = Limits::default().class_enumeration)]
    pub class_limit: u64,
    /// Compute centralizers by filtering all elements in groups up to this
    /// order.
    #[arg(long, default_value_t = Limits::default().enumerate_centralizer_below)]
    pub enumerate_below: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, short)]
    pub jobs: Option<usize>,
    /// Directory for the report, the loops and their index.
    #[arg(long, short, default_value = "loopforge-out")]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// `{"order": d, "table": [[...], ...]}` with entries 1..d.
    pub file: PathBuf,
    /// Also write the report here.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A catalog reference (`degree/index` or a unique name), `@file` with
    /// `{"degree": d, "generators": [...]}`, or `generated` for the group
    /// generated by the transversal.
    pub group: String,
    /// A JSON list of permutations in cycle notation, or a loop table whose
    /// right translations are taken.
    pub transversal: PathBuf,
    #[arg(long, env = "LOOPFORGE_CATALOG")]
    pub catalog: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Search(args) => cmd_search(&args),
        Command::Check(args) => cmd_check(&args),
        Command::VerifyReformulation(args) => cmd_verify_reformulation(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INVALID
        }
    }
}

/// Expands `15`, `60-81` and `15,27,60-64` against the catalog's degrees;
/// single degrees are kept even when the catalog has none of them.
pub fn parse_degrees(spec: &str, available: &BTreeSet<usize>) -> anyhow::Result<Vec<usize>> {
    let mut out = BTreeSet::new();
    for part in spec.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once('-') {
            let (a, b): (usize, usize) = (
                a.trim().parse().with_context(|| format!("bad degree {a:?}"))?,
                b.trim().parse().with_context(|| format!("bad degree {b:?}"))?,
            );
            if a < 2 || a > b {
                bail!("bad degree range {part:?}");
            }
            out.extend(available.range(a..=b));
        } else {
            let d: usize = part.parse().with_context(|| format!("bad degree {part:?}"))?;
            if d < 2 {
                bail!("degree must be at least 2, got {d}");
            }
            out.insert(d);
        }
    }
    if out.is_empty() {
        bail!("no catalog degrees in {spec:?}");
    }
    Ok(out.into_iter().collect())
}

fn load_catalog(path: Option<&Path>) -> anyhow::Result<Catalog> {
    match path {
        Some(p) => Catalog::load(p).with_context(|| format!("loading catalog {}", p.display())),
        None => Ok(Catalog::embedded()),
    }
}

impl SearchArgs {
    pub fn options(&self) -> anyhow::Result<SearchOptions> {
        let limits = Limits {
            coset: self.coset_limit,
            candidate_orbits: self.orbit_limit,
            clique_nodes: self.clique_limit,
            class_enumeration: self.class_limit,
            enumerate_centralizer_below: self.enumerate_below,
        };
        if [limits.coset, limits.candidate_orbits, limits.clique_nodes, limits.class_enumeration].contains(&0) {
            bail!("limits must be positive");
        }
        let defaults = SearchOptions::for_mode(self.mode);
        Ok(SearchOptions {
            mode: self.mode,
            skip_four_transitive: self.skip_4transitive.unwrap_or(defaults.skip_four_transitive),
            skip_solvable: self.skip_solvable.unwrap_or(defaults.skip_solvable),
            affine_prune: self.affine_prune.unwrap_or(defaults.affine_prune),
            force_search: self.force_search,
            limits,
        })
    }
}

/// The settings that determine the results; worker count and output path
/// are left out so that reports do not depend on them.
#[derive(Serialize)]
struct ReportConfig<'a> {
    degrees: &'a [usize],
    catalog: String,
    iso_filter: bool,
    use_known_exclusions: bool,
    options: &'a SearchOptions,
}

#[derive(Serialize)]
struct IndexEntry {
    file: String,
    degree: usize,
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<String>,
    associative: bool,
    commutative: bool,
    simple: bool,
    automorphic: bool,
}

fn write_json(path: &Path, value: &impl Serialize) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_search(args: &SearchArgs) -> anyhow::Result<i32> {
    let options = args.options()?;
    if args.jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    let catalog = load_catalog(args.catalog.as_deref())?;
    if args.strict_catalog {
        catalog.verify_strict()?;
    }
    let degrees = parse_degrees(&args.degree, &catalog.degrees())?;
    let mut warnings = Vec::new();
    let mut targets = Vec::new();
    for &d in &degrees {
        let entries = catalog.groups_of_degree(d, args.use_known_exclusions);
        if entries.is_empty() {
            warnings.push(format!("the catalog has no groups of degree {d}"));
        }
        for e in entries {
            targets.push(SearchTarget::from_entry(e, Some(catalog.reference_of(e)))?);
        }
    }

    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let start = Instant::now();
    let (reports, summaries) = pool.install(|| {
        let reports = search_targets(&targets, &options);
        let summaries: Vec<DegreeSummary> = degrees
            .iter()
            .map(|&d| summarize(d, options.mode, &reports, args.iso_filter))
            .collect();
        (reports, summaries)
    });
    let elapsed = start.elapsed();

    let out = &args.output;
    fs::create_dir_all(out.join("loops"))?;
    fs::create_dir_all(out.join("representatives"))?;
    let (groups, index) = write_loops(out, &reports)?;
    let mut degree_values = Vec::new();
    for s in &summaries {
        let mut files = Vec::new();
        for (k, table) in s.representatives.iter().enumerate() {
            let file = format!("representatives/{}-{}.json", s.degree, k + 1);
            write_json(&out.join(&file), table)?;
            files.push(file);
        }
        let mut v = serde_json::to_value(s)?;
        if args.iso_filter {
            v["representatives"] = json!(files);
        }
        degree_values.push(v);
    }
    let catalog_name = args
        .catalog
        .as_ref()
        .and_then(|p| p.file_name())
        .map_or("built-in".to_string(), |n| n.to_string_lossy().into_owned());
    let report = json!({
        "config": ReportConfig {
            degrees: &degrees,
            catalog: catalog_name,
            iso_filter: args.iso_filter,
            use_known_exclusions: args.use_known_exclusions,
            options: &options,
        },
        "warnings": warnings,
        "degrees": degree_values,
        "groups": groups,
    });
    write_json(&out.join("report.json"), &report)?;
    write_json(&out.join("loops/index.json"), &index)?;
    let timings: Vec<Value> = reports
        .iter()
        .map(|r| json!({"group": r.group_name, "degree": r.degree, "seconds": r.elapsed.as_secs_f64()}))
        .collect();
    write_json(
        &out.join("timings.json"),
        &json!({"jobs": jobs, "total_seconds": elapsed.as_secs_f64(), "groups": timings}),
    )?;

    for w in &warnings {
        eprintln!("warning: {w}");
    }
    print!("{}", format_table(&summaries, args.iso_filter));
    let resource = summaries.iter().map(DegreeSummary::resource_skips).sum::<usize>();
    if resource > 0 {
        eprintln!("{resource} group(s) skipped after exceeding a resource limit");
        return Ok(EXIT_RESOURCE);
    }
    Ok(EXIT_OK)
}

/// Writes each kept loop to its own file and returns the group reports
/// with tables replaced by file names, plus the loop index.
fn write_loops(out: &Path, reports: &[SearchReport]) -> anyhow::Result<(Vec<Value>, Vec<IndexEntry>)> {
    let mut groups = Vec::new();
    let mut index = Vec::new();
    for (g, r) in reports.iter().enumerate() {
        let mut v = serde_json::to_value(r)?;
        let stem = r
            .reference
            .as_ref()
            .map_or_else(|| format!("{}-{}", r.degree, g + 1), |s| s.replace('/', "-"));
        for (k, found) in r.loops.iter().enumerate() {
            let file = format!("loops/{stem}-{}.json", k + 1);
            write_json(&out.join(&file), &found.table)?;
            let entry = v["loops"][k].as_object_mut().expect("loop record");
            entry.remove("table");
            entry.insert("file".into(), json!(file));
            index.push(IndexEntry {
                file,
                degree: r.degree,
                group: r.group_name.clone(),
                reference: r.reference.clone(),
                associative: found.associative,
                commutative: found.commutative,
                simple: found.simple,
                automorphic: found.automorphic,
            });
        }
        groups.push(v);
    }
    Ok((groups, index))
}

/// Order against found loops, one row per degree.
pub fn format_table(summaries: &[DegreeSummary], iso_filter: bool) -> String {
    let mut s = String::from("order  groups  searched  skipped  loops  simple  non-assoc");
    if iso_filter {
        s.push_str("  found");
    }
    s.push('\n');
    for d in summaries {
        let skipped: usize = d.skipped.values().sum();
        s.push_str(&format!(
            "{:>5}  {:>6}  {:>8}  {:>7}  {:>5}  {:>6}  {:>9}",
            d.degree, d.groups, d.searched, skipped, d.kept_loops, d.simple, d.simple_non_associative
        ));
        if let Some(found) = d.found {
            s.push_str(&format!("  {found:>5}"));
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub order: usize,
    #[serde(flatten)]
    pub properties: LoopProperties,
    pub right_automorphic: bool,
    pub automorphic: bool,
    pub automorphic_via_conjugations: bool,
    pub conjugations_are_automorphisms: bool,
    pub simple_by_primitivity: bool,
    pub simple_by_normal_closure: bool,
    pub rmlt_order: String,
    pub mlt_order: String,
}

pub fn check_loop(table: &LoopTable) -> CheckReport {
    let (rmlt, mlt) = table.mult_groups();
    CheckReport {
        order: table.order(),
        properties: table.properties(),
        right_automorphic: table.is_right_automorphic(),
        automorphic: table.is_automorphic(),
        automorphic_via_conjugations: table.is_automorphic_via_conjugations(),
        conjugations_are_automorphisms: table.conjugations_are_automorphisms(),
        simple_by_primitivity: table.is_simple_by_primitivity(),
        simple_by_normal_closure: table.is_simple_by_normal_closure(),
        rmlt_order: rmlt.order().to_string(),
        mlt_order: mlt.order().to_string(),
    }
}

fn read_loop(path: &Path) -> anyhow::Result<LoopTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not a valid loop table", path.display()))
}

pub fn cmd_check(args: &CheckArgs) -> anyhow::Result<i32> {
    let table = read_loop(&args.file)?;
    let report = check_loop(&table);
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(path) = &args.output {
        write_json(path, &report)?;
    }
    Ok(EXIT_OK)
}

fn read_transversal(path: &Path, degree: Option<usize>) -> anyhow::Result<Vec<Permutation>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.is_object() {
        let table: LoopTable = serde_json::from_value(value).context("invalid loop table")?;
        return Ok(table.translations().0);
    }
    let cycles: Vec<String> = serde_json::from_value(value).context("expected a list of permutations")?;
    let d = degree.unwrap_or(cycles.len());
    let rights = cycles
        .iter()
        .map(|c| parse_cycles(c, d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rights)
}

#[derive(serde::Deserialize)]
struct InlineGroup {
    degree: usize,
    generators: Vec<String>,
}

fn resolve_group(spec: &str, catalog: &Catalog) -> anyhow::Result<Option<PermGroup>> {
    if spec == "generated" {
        return Ok(None);
    }
    if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let g: InlineGroup = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        let gens = g
            .generators
            .iter()
            .map(|s| parse_cycles(s, g.degree))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Some(PermGroup::new(g.degree, gens)?));
    }
    let entry = catalog
        .resolve(spec)
        .with_context(|| format!("no catalog group {spec:?}"))?;
    Ok(Some(entry.group()?))
}

pub fn cmd_verify_reformulation(args: &VerifyArgs) -> anyhow::Result<i32> {
    let catalog = load_catalog(args.catalog.as_deref())?;
    let group = resolve_group(&args.group, &catalog)?;
    let rights = read_transversal(&args.transversal, group.as_ref().map(PermGroup::degree))?;
    if rights.is_empty() {
        bail!("empty transversal");
    }
    let group = match group {
        Some(g) => g,
        None => PermGroup::new(rights[0].degree(), rights.clone())?,
    };
    // keep the given order when the images of 1 do not form a transversal
    let rights = normalize_transversal(rights.clone()).unwrap_or(rights);
    let report: ReformulationReport = verify_reformulation(&group, &rights)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({"conditions": report, "all_hold": report.all_hold()}))?
    );
    Ok(EXIT_OK)
}
