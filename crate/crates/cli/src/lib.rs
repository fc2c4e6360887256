//! Batch front end for `dcft-core`: parses arguments and an optional TOML
//! config, runs one computation, writes a JSON report and a text table, and
//! maps the outcome to an exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use dcft_core::abgroup::{AbHom, FgAbGroup};
use dcft_core::cft::{
    artin_pi0_check, catalog_pairs, curated_fields, kummer_cohomology, norm_transfer_report, poitou_tate_order_check,
    verify_main_theorem, CftError, Report, SubgroupPair, DEFAULT_LEVELS, REPORT_SCHEMA_VERSION,
};
use dcft_core::derivedab::{derived_abelianization, DerivedError};
use dcft_core::grouphomology::{abelianization, by_name, group_homology_range, FiniteGroup, GroupError};
use dcft_core::guard::{SizeGuard, DEFAULT_SIZE_GUARD};
use dcft_core::numberfield::{
    class_group, class_number_enumerated, fundamental_discriminants, ray_class_group, unit_group, units_congruent_to_one, Ideal,
    ImagQuadField, NumberFieldError,
};
use dcft_core::simplicial::{dold_thom_check, FiniteSimplicialSet, SimplicialError};
use dcft_core::suite::{run_full_suite, SuiteConfig};
use serde::{Deserialize, Serialize};

pub const ENV_SIZE_GUARD: &str = "DCFT_SIZE_GUARD";
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

const DEFAULT_OUTPUT_DIR: &str = "dcft-reports";
const DEFAULT_MAX_DEGREE: usize = 3;
const DEFAULT_PAIR_DEGREE: usize = 2;
const DEFAULT_PMAX: u64 = 10_000;
const DEFAULT_SYM_MAX: usize = 3;
const DEFAULT_DT_DEGREE: usize = 1;
const DEFAULT_MAX_ORDER: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "dcft", version, about = "Derived abelianization, class groups and their verification reports")]
pub struct Cli {
    /// TOML file with defaults; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for the JSON and table reports.
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Cap on cells per degree (also read from DCFT_SIZE_GUARD).
    #[arg(long, global = true)]
    pub size_guard: Option<usize>,
    /// Do not print the table to stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integral homology of a catalog group or a group JSON file.
    Homology {
        group: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Homotopy of the derived abelianization, cross-checked against homology.
    DerivedAb {
        group: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Homology of symmetric powers: circle, point, wedge, wedgeK or a JSON file.
    DoldThom {
        space: String,
        #[arg(long)]
        sym_max: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Class groups of one or more discriminants.
    ClassGroup {
        #[arg(allow_negative_numbers = true)]
        d: Vec<i64>,
        /// Every fundamental discriminant in `lo..hi`, both ends included.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Ray class group for a modulus `a,b,c` (Hermite basis a, b + c w) or `n`.
    RayClass {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        modulus: String,
    },
    /// Kummer cohomology of mu_n at each level, with the order checks.
    Kummer {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u64>>,
    },
    /// Verified and predicted blocks of the main identification.
    VerifyTheorem {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u64>>,
        #[arg(long)]
        pmax: Option<u64>,
    },
    /// Splitting law against a curated Hilbert class field polynomial.
    Artin {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        pmax: Option<u64>,
    },
    /// Inclusion and transfer squares. Pairs are `all`, `NAME` (every
    /// subgroup) or `NAME:e1,e2,...`.
    Functoriality {
        pairs: Vec<String>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// The full acceptance battery, run twice for the determinism check.
    Suite,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Homology { .. } => "homology",
            Command::DerivedAb { .. } => "derived-ab",
            Command::DoldThom { .. } => "dold-thom",
            Command::ClassGroup { .. } => "class-group",
            Command::RayClass { .. } => "ray-class",
            Command::Kummer { .. } => "kummer",
            Command::VerifyTheorem { .. } => "verify-theorem",
            Command::Artin { .. } => "artin",
            Command::Functoriality { .. } => "functoriality",
            Command::Suite => "suite",
        }
    }
}

/// Keys accepted in the TOML config.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub size_guard: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub max_degree: Option<usize>,
    pub levels: Option<Vec<u64>>,
    pub pmax: Option<u64>,
    pub sym_max: Option<usize>,
    pub degree: Option<usize>,
    pub max_order: Option<usize>,
    pub suite: Option<SuiteConfig>,
}

/// The configuration a run actually used; echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct EffectiveConfig {
    pub command: String,
    pub inputs: Vec<String>,
    pub size_guard: usize,
    pub size_guard_source: String,
    pub format: Format,
    pub max_degree: Option<usize>,
    pub levels: Option<Vec<u64>>,
    pub pmax: Option<u64>,
    pub sym_max: Option<usize>,
    pub degree: Option<usize>,
    pub max_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteConfig>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: &'a EffectiveConfig,
    pass: bool,
    report: &'a T,
}

#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    SizeGuard(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::SizeGuard(_) => EXIT_SIZE_GUARD,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Invalid(m) => write!(f, "invalid input: {m}"),
            Failure::SizeGuard(m) => write!(f, "size guard exceeded: {m}"),
        }
    }
}

fn group_guard(e: &GroupError) -> bool {
    matches!(e, GroupError::SizeGuard(_))
}

fn classify(guard: bool, e: impl std::fmt::Display) -> Failure {
    if guard {
        Failure::SizeGuard(e.to_string())
    } else {
        Failure::Invalid(e.to_string())
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        classify(group_guard(&e), e)
    }
}

impl From<DerivedError> for Failure {
    fn from(e: DerivedError) -> Self {
        let g = match &e {
            DerivedError::SizeGuard(_) => true,
            DerivedError::Group(g) => group_guard(g),
            _ => false,
        };
        classify(g, e)
    }
}

impl From<SimplicialError> for Failure {
    fn from(e: SimplicialError) -> Self {
        classify(matches!(e, SimplicialError::SizeGuard(_)), e)
    }
}

impl From<NumberFieldError> for Failure {
    fn from(e: NumberFieldError) -> Self {
        classify(matches!(e, NumberFieldError::SizeGuard(_)), e)
    }
}

impl From<CftError> for Failure {
    fn from(e: CftError) -> Self {
        let g = match &e {
            CftError::SizeGuard(_) | CftError::NumberField(NumberFieldError::SizeGuard(_)) => true,
            CftError::Group(g) => group_guard(g),
            CftError::Derived(DerivedError::SizeGuard(_)) => true,
            CftError::Derived(DerivedError::Group(g)) => group_guard(g),
            _ => false,
        };
        classify(g, e)
    }
}

/// What a command hands back for writing.
struct Outcome {
    stem: String,
    pass: bool,
    json: String,
    table: String,
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(pass) => {
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(f) => {
            eprintln!("dcft: {f}");
            f.code()
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, Failure> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?;
            toml::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
        }
    }
}

fn resolve_guard(flag: Option<usize>, file: Option<usize>) -> Result<(usize, &'static str), Failure> {
    if let Some(g) = flag {
        return Ok((g, "flag"));
    }
    if let Ok(v) = std::env::var(ENV_SIZE_GUARD) {
        let g = v
            .trim()
            .parse()
            .map_err(|_| Failure::Invalid(format!("{ENV_SIZE_GUARD}={v} is not a non-negative integer")))?;
        return Ok((g, "environment"));
    }
    Ok(match file {
        Some(g) => (g, "config file"),
        None => (DEFAULT_SIZE_GUARD, "default"),
    })
}

/// Runs the parsed command; `Ok(pass)` when it completed.
pub fn execute(cli: &Cli) -> Result<bool, Failure> {
    let file = load_config(&cli.config)?;
    let (size_guard, source) = resolve_guard(cli.size_guard, file.size_guard)?;
    let guard = SizeGuard(size_guard);
    let mut cfg = EffectiveConfig {
        command: cli.command.name().to_string(),
        inputs: Vec::new(),
        size_guard,
        size_guard_source: source.to_string(),
        format: cli.format.or(file.format).unwrap_or(Format::Both),
        max_degree: None,
        levels: None,
        pmax: None,
        sym_max: None,
        degree: None,
        max_order: None,
        suite: None,
    };
    let output_dir = cli
        .output_dir
        .clone()
        .or_else(|| file.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR));
    let levels = |flag: &Option<Vec<u64>>| -> Result<Vec<u64>, Failure> {
        let l = flag.clone().or_else(|| file.levels.clone()).unwrap_or_else(|| DEFAULT_LEVELS.to_vec());
        validate_levels(&l)?;
        Ok(l)
    };
    let out = match &cli.command {
        Command::Homology { group, max_degree } => {
            let m = max_degree.or(file.max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
            cfg.inputs = vec![group.clone()];
            cfg.max_degree = Some(m);
            let g = resolve_group(group)?;
            let r = homology_report(&g, m, guard)?;
            finish(&cfg, format!("homology_{}", g.name()), r)
        }
        Command::DerivedAb { group, max_degree } => {
            let m = max_degree.or(file.max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
            cfg.inputs = vec![group.clone()];
            cfg.max_degree = Some(m);
            let g = resolve_group(group)?;
            let r = derived_report(&g, m, guard)?;
            finish(&cfg, format!("derived-ab_{}", g.name()), r)
        }
        Command::DoldThom { space, sym_max, degree } => {
            let n = sym_max.or(file.sym_max).unwrap_or(DEFAULT_SYM_MAX);
            let k = degree.or(file.degree).unwrap_or(DEFAULT_DT_DEGREE);
            if n == 0 {
                return Err(Failure::Invalid("--sym-max must be at least 1".into()));
            }
            cfg.inputs = vec![space.clone()];
            cfg.sym_max = Some(n);
            cfg.degree = Some(k);
            let x = resolve_space(space, k + 1)?;
            let rep = dold_thom_check(&x, n, k, guard)?;
            let mut r = Report::new(format!("symmetric powers of {space} in degree {k}"), None);
            for (i, v) in rep.values.iter().enumerate() {
                r.value(format!("H_{k}(Sym^{} X)", i + 1), v, "sym_power_chains");
            }
            r.value(format!("reduced H_{k}(X)"), &rep.reduced_homology, "reduced_chains");
            r.check(
                "Sym^n X stabilizes at the reduced homology of X",
                rep.stable_value.as_ref().map_or("unstabilized".to_string(), ToString::to_string),
                &rep.reduced_homology,
                rep.matches_reduced_homology,
                "dold_thom_check",
            );
            finish(&cfg, format!("dold-thom_{}", sanitize(space)), r)
        }
        Command::ClassGroup { d, range } => {
            let mut ds = d.clone();
            if let Some(rg) = range {
                let (lo, hi) = parse_range(rg)?;
                ds.extend(fundamental_discriminants(lo, hi));
            }
            if ds.is_empty() {
                return Err(Failure::Invalid("give at least one discriminant or --range".into()));
            }
            cfg.inputs = ds.iter().map(ToString::to_string).collect();
            let reports = ds.iter().map(|&d| class_group_report(d)).collect::<Result<Vec<_>, _>>()?;
            let stem = if ds.len() == 1 { format!("class-group_{}", ds[0]) } else { "class-group".to_string() };
            finish(&cfg, stem, merge("class groups", reports))
        }
        Command::RayClass { d, modulus } => {
            cfg.inputs = vec![d.to_string(), modulus.clone()];
            let r = ray_class_report(*d, modulus, guard)?;
            finish(&cfg, format!("ray-class_{d}_{}", sanitize(modulus)), r)
        }
        Command::Kummer { d, levels: l } => {
            let l = levels(l)?;
            cfg.inputs = vec![d.to_string()];
            cfg.levels = Some(l.clone());
            let mut r = Report::new("Kummer cohomology", Some(*d));
            for &n in &l {
                let k = kummer_cohomology(*d, n)?;
                r.extend(k.to_report());
                r.extend(poitou_tate_order_check(*d, n)?);
            }
            finish(&cfg, format!("kummer_{d}"), r)
        }
        Command::VerifyTheorem { d, levels: l, pmax } => {
            let l = levels(l)?;
            let p = pmax.or(file.pmax).unwrap_or(DEFAULT_PMAX);
            cfg.inputs = vec![d.to_string()];
            cfg.levels = Some(l.clone());
            cfg.pmax = Some(p);
            let t = verify_main_theorem(*d, &l, p)?;
            let r = t.to_report();
            let mut o = finish(&cfg, format!("verify-theorem_{d}"), r);
            o.pass &= t.pass();
            o
        }
        Command::Artin { d, pmax } => {
            let p = pmax.or(file.pmax).unwrap_or(DEFAULT_PMAX);
            cfg.inputs = vec![d.to_string()];
            cfg.pmax = Some(p);
            let c = curated_fields()
                .iter()
                .find(|c| c.d == *d)
                .ok_or_else(|| Failure::Invalid(format!("no curated Hilbert class field for d = {d}")))?;
            let a = artin_pi0_check(*d, &c.poly, p)?;
            let mut r = a.to_report();
            r.note(format!("polynomial source: {}", c.source));
            finish(&cfg, format!("artin_{d}"), r)
        }
        Command::Functoriality { pairs, max_order, max_degree } => {
            let mo = max_order.or(file.max_order).unwrap_or(DEFAULT_MAX_ORDER);
            let md = max_degree.or(file.max_degree).unwrap_or(DEFAULT_PAIR_DEGREE);
            cfg.inputs = pairs.clone();
            cfg.max_order = Some(mo);
            cfg.max_degree = Some(md);
            let ps = resolve_pairs(pairs, mo)?;
            if ps.is_empty() {
                return Err(Failure::Invalid("no subgroup pairs selected".into()));
            }
            let r = norm_transfer_report(&ps, md, guard)?;
            finish(&cfg, "functoriality".to_string(), r)
        }
        Command::Suite => {
            let mut sc = file.suite.clone().unwrap_or_default();
            sc.size_guard = size_guard;
            cfg.suite = Some(sc.clone());
            let rep = run_full_suite(&sc);
            let mut table = rep.summary();
            for c in &rep.criteria {
                for f in c.report.failures() {
                    let _ = writeln!(table, "  criterion {} failed: {}: {} vs {}", c.id, f.name, f.lhs, f.rhs);
                }
            }
            let _ = writeln!(table, "{}", if rep.pass { "suite: PASS" } else { "suite: FAIL" });
            Outcome {
                stem: "suite".to_string(),
                pass: rep.pass,
                json: envelope(&cfg, rep.pass, &rep),
                table,
            }
        }
    };
    emit(&out, cfg.format, &output_dir, cli.quiet)?;
    Ok(out.pass)
}

fn envelope<T: Serialize>(cfg: &EffectiveConfig, pass: bool, report: &T) -> String {
    let e = Envelope {
        schema_version: REPORT_SCHEMA_VERSION,
        command: &cfg.command,
        config: cfg,
        pass,
        report,
    };
    let mut s = serde_json::to_string_pretty(&e).expect("reports serialize");
    s.push('\n');
    s
}

fn finish(cfg: &EffectiveConfig, stem: String, r: Report) -> Outcome {
    let pass = r.pass();
    Outcome {
        stem,
        pass,
        json: envelope(cfg, pass, &r),
        table: r.table(),
    }
}

fn emit(o: &Outcome, format: Format, dir: &Path, quiet: bool) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Invalid(format!("{}: {e}", dir.display())))?;
    let write = |ext: &str, body: &str| {
        let p = dir.join(format!("{}.{ext}", o.stem));
        fs::write(&p, body).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
    };
    if matches!(format, Format::Json | Format::Both) {
        write("json", &o.json)?;
    }
    if matches!(format, Format::Table | Format::Both) {
        write("txt", &o.table)?;
    }
    if !quiet {
        print!("{}", o.table);
    }
    Ok(())
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn validate_levels(l: &[u64]) -> Result<(), Failure> {
    if l.is_empty() {
        return Err(Failure::Invalid("no levels given".into()));
    }
    if let Some(n) = l.iter().find(|&&n| n < 2) {
        return Err(Failure::Invalid(format!("level {n} is below 2")));
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Invalid(format!("range {s:?} is not of the form lo..hi"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi || hi >= 0 {
        return Err(Failure::Invalid(format!("range {s:?} must satisfy lo <= hi < 0")));
    }
    Ok((lo, hi))
}

/// A catalog name or alias, `order,index`, or a path to a group JSON file.
fn resolve_group(s: &str) -> Result<FiniteGroup, Failure> {
    if let Some(g) = by_name(s) {
        return Ok(g.clone());
    }
    let p = Path::new(s);
    if p.is_file() {
        let text = fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{s}: {e}")))?;
        return Ok(FiniteGroup::from_json(&text)?);
    }
    Err(Failure::Invalid(format!("unknown group {s:?}: not in the catalog and not a file")))
}

fn resolve_space(s: &str, top: usize) -> Result<FiniteSimplicialSet, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "circle" | "s1" => return Ok(FiniteSimplicialSet::circle(top)),
        "point" => return Ok(FiniteSimplicialSet::point(top)),
        "wedge" => return Ok(FiniteSimplicialSet::wedge_of_circles(2, top)),
        w => {
            if let Some(k) = w.strip_prefix("wedge").and_then(|k| k.trim_start_matches(':').parse::<usize>().ok()) {
                return Ok(FiniteSimplicialSet::wedge_of_circles(k, top));
            }
        }
    }
    let p = Path::new(s);
    if p.is_file() {
        let text = fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{s}: {e}")))?;
        return Ok(FiniteSimplicialSet::from_json(&text)?);
    }
    Err(Failure::Invalid(format!("unknown space {s:?}")))
}

fn resolve_pairs(specs: &[String], max_order: usize) -> Result<Vec<SubgroupPair>, Failure> {
    if specs.is_empty() || specs.iter().any(|s| s == "all") {
        return Ok(catalog_pairs(max_order));
    }
    let mut out = Vec::new();
    for s in specs {
        let (name, elems) = match s.split_once(':') {
            Some((n, e)) => (n, Some(e)),
            None => (s.as_str(), None),
        };
        let g = resolve_group(name)?;
        match elems {
            None => {
                for (k, h) in g.subgroups().into_iter().enumerate() {
                    out.push(SubgroupPair {
                        label: format!("{} > H{} (order {})", g.name(), k, h.len()),
                        group: g.clone(),
                        subgroup: h,
                    });
                }
            }
            Some(e) => {
                let h: Vec<usize> = e
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::Invalid(format!("subgroup list in {s:?} is not a list of element indices")))?;
                if h.iter().any(|&x| x >= g.order()) || !g.is_subgroup(&h) {
                    return Err(Failure::Invalid(format!("{s:?} does not name a subgroup")));
                }
                out.push(SubgroupPair {
                    label: format!("{} > {{{e}}}", g.name()),
                    group: g,
                    subgroup: h,
                });
            }
        }
    }
    Ok(out)
}

fn merge(kind: &str, reports: Vec<Report>) -> Report {
    if reports.len() == 1 {
        return reports.into_iter().next().expect("one report");
    }
    let mut r = Report::new(kind, None);
    for mut x in reports {
        let tag = x.field.clone().unwrap_or_default();
        for v in &mut x.verified {
            v.name = format!("{tag}: {}", v.name);
        }
        for c in &mut x.checks {
            c.name = format!("{tag}: {}", c.name);
        }
        r.extend(x);
    }
    r
}

fn homology_report(g: &FiniteGroup, m: usize, guard: SizeGuard) -> Result<Report, Failure> {
    let hs = group_homology_range(g, m, guard)?;
    let mut r = Report::new(format!("integral homology of {} (order {})", g.name(), g.order()), None);
    for (i, h) in hs.iter().enumerate() {
        r.value(format!("H_{i}"), h, "group_homology: normalized bar complex");
    }
    r.check_eq("H_0 = Z", &hs[0], &FgAbGroup::free(1), "group_homology");
    if m >= 1 {
        r.check_eq("H_1 = G^ab", &hs[1], &abelianization(g), "group_homology, abelianization");
    }
    Ok(r)
}

fn derived_report(g: &FiniteGroup, m: usize, guard: SizeGuard) -> Result<Report, Failure> {
    let d = derived_abelianization(g, m, guard)?;
    let pis = d.pis();
    let hs = group_homology_range(g, pis.len(), guard)?;
    let mut r = Report::new(format!("derived abelianization of {} (order {})", g.name(), g.order()), None);
    for (i, p) in pis.iter().enumerate() {
        r.value(format!("pi_{i}"), p, "derived_abelianization: reduced bar model");
    }
    if let Some(p0) = pis.first() {
        r.check_eq("pi_0 = G^ab", p0, &abelianization(g), "derived_abelianization, abelianization");
    }
    for (i, p) in pis.iter().enumerate() {
        r.check_eq(format!("pi_{i} = H_{}", i + 1), p, &hs[i + 1], "derived_abelianization, group_homology");
    }
    if pis.len() <= m {
        r.note(format!("pi_{m} needs the model one degree higher; raise --max-degree to see it"));
    }
    Ok(r)
}

fn class_group_report(d: i64) -> Result<Report, Failure> {
    let cl = class_group(d)?;
    let units = unit_group(d)?;
    let mut r = Report::new("class group", Some(d));
    r.value("h", cl.class_number(), "class_group: reduced forms");
    r.value("Cl", &cl.group, "class_group: composition table");
    r.value("O^x", &units, "unit_group");
    let forms: Vec<String> = cl.forms.iter().map(ToString::to_string).collect();
    r.value("reduced forms", forms.join(" "), "reduced_forms");
    let gens: Vec<String> = cl.generators.iter().map(|&i| cl.forms[i].to_string()).collect();
    r.value("generators", gens.join(" "), "class_group");
    r.check_eq("h = brute-force count", &cl.class_number(), &class_number_enumerated(d), "class_group, class_number_enumerated");
    Ok(r)
}

fn parse_modulus(f: &ImagQuadField, s: &str) -> Result<Ideal, Failure> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Invalid(format!("modulus {s:?} is not `n` or `a,b,c`")))?;
    match parts[..] {
        [n] if n > 0 => Ok(Ideal::rational(n as u64)),
        [a, b, c] => Ok(Ideal::from_hnf(f, a, b, c)?),
        _ => Err(Failure::Invalid(format!("modulus {s:?} is not `n` or `a,b,c`"))),
    }
}

fn ray_class_report(d: i64, modulus: &str, guard: SizeGuard) -> Result<Report, Failure> {
    let f = ImagQuadField::new(d)?;
    let j = parse_modulus(&f, modulus)?;
    let ray = ray_class_group(&f, &j, guard)?;
    let pi1 = units_congruent_to_one(&f, &j);
    let mut r = Report::new(format!("ray class group modulo {}", j), Some(d));
    r.value("Cl_J", &ray.group, "ray_class_group");
    r.value("(O/J)^x", &ray.residue_units, "residue_units");
    r.value("image of O^x in (O/J)^x", &ray.unit_image_order, "ray_class_group");
    r.value("Cl", &ray.class_group, "class_group");
    r.value("units = 1 mod J", &pi1, "units_congruent_to_one");
    let ord = |g: &FgAbGroup| g.order().expect("finite");
    r.check_eq(
        "|Cl_J| |unit image| = |(O/J)^x| |Cl|",
        &(ord(&ray.group) * &ray.unit_image_order),
        &(ord(&ray.residue_units) * ord(&ray.class_group)),
        "ray_class_group",
    );
    r.check("Cl_J -> Cl is onto", ray.to_class_group.is_surjective(), true, ray.to_class_group.is_surjective(), "ray_class_group");
    let comp = ray.to_class_group.compose(&ray.from_residues).map(|h: AbHom| h.is_zero()).unwrap_or(false);
    r.check("(O/J)^x -> Cl_J -> Cl is zero", comp, true, comp, "ray_class_group");
    Ok(r)
}
