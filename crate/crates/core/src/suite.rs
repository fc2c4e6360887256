//! The acceptance battery: eleven criteria, each producing a report. Runs
//! are deterministic for a fixed configuration; the comparable payload
//! carries no timings.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abgroup::IntMatrix;
use crate::cft::{
    artin_pi0_check, catalog_pairs, curated_fields, kummer_cohomology, norm_transfer_report, poitou_tate_order_check,
    verify_main_theorem, Report, DEFAULT_LEVELS, REPORT_SCHEMA_VERSION,
};
use crate::chain::ChainComplex;
use crate::derivedab::derived_abelianization;
use crate::grouphomology::{abelianization, by_name, catalog, group_homology_range};
use crate::guard::SizeGuard;
use crate::numberfield::{class_group, class_number_enumerated, fundamental_discriminants};
use crate::simplicial::{dold_kan_round_trip, dold_thom_check, from_chains, FiniteSimplicialSet};

/// Discriminants used by the arithmetic criteria.
pub const ACCEPTANCE_DISCRIMINANTS: [i64; 10] = [-3, -4, -7, -8, -15, -20, -23, -31, -47, -84];
pub const KUMMER_LEVELS: [u64; 7] = [2, 3, 4, 5, 6, 8, 12];
pub const THEOREM_DISCRIMINANTS: [i64; 4] = [-4, -20, -23, -84];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub size_guard: usize,
    pub max_group_order: usize,
    pub discriminants: Vec<i64>,
    pub kummer_levels: Vec<u64>,
    pub theorem_discriminants: Vec<i64>,
    pub theorem_levels: Vec<u64>,
    pub artin_p_max: u64,
    pub random_complexes: usize,
    pub seed: u64,
    pub class_number_range: (i64, i64),
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            size_guard: crate::guard::DEFAULT_SIZE_GUARD,
            max_group_order: 16,
            discriminants: ACCEPTANCE_DISCRIMINANTS.to_vec(),
            kummer_levels: KUMMER_LEVELS.to_vec(),
            theorem_discriminants: THEOREM_DISCRIMINANTS.to_vec(),
            theorem_levels: DEFAULT_LEVELS.to_vec(),
            artin_p_max: 10_000,
            random_complexes: 200,
            seed: 20240601,
            class_number_range: (-500, -1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub config: SuiteConfig,
    pub criteria: Vec<Criterion>,
    pub pass: bool,
}

impl SuiteReport {
    /// Stable JSON of everything except wall-clock data, which is never
    /// recorded.
    pub fn payload(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite reports serialize")
    }

    pub fn summary(&self) -> String {
        self.criteria
            .iter()
            .map(|c| {
                let failed = c.report.failures().count();
                format!(
                    "{} criterion {:2}: {} ({} checks, {} failed)\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.title,
                    c.report.checks.len(),
                    failed
                )
            })
            .collect()
    }
}

fn criterion(id: u32, title: &str, report: Report) -> Criterion {
    Criterion {
        id,
        title: title.to_string(),
        pass: !report.checks.is_empty() && report.pass(),
        report,
    }
}

fn errored(id: u32, title: &str, e: impl std::fmt::Display) -> Criterion {
    let mut r = Report::new(title, None);
    r.check("ran to completion", e.to_string(), "ok", false, "suite");
    criterion(id, title, r)
}

/// Criterion 1: `pi_0` of the derived abelianization is the abelianization,
/// and `pi_i = H_{i+1}` for `i <= 2` along both code paths.
pub fn criterion_derived_vs_homology(cfg: &SuiteConfig) -> Criterion {
    let title = "derived abelianization against group homology";
    let guard = SizeGuard(cfg.size_guard);
    let entries: Vec<_> = catalog().iter().filter(|e| e.group.order() <= cfg.max_group_order).collect();
    let results: Vec<_> = entries
        .par_iter()
        .map(|e| {
            let d = derived_abelianization(&e.group, 3, guard)?;
            let pis = d.pis();
            let hs = group_homology_range(&e.group, 3, guard)?;
            Ok::<_, crate::derivedab::DerivedError>((e.name, pis, hs, abelianization(&e.group)))
        })
        .collect();
    let mut r = Report::new(title, None);
    for res in results {
        match res {
            Ok((name, pis, hs, ab)) => {
                r.check_eq(format!("{name}: pi_0 = G^ab"), &pis[0], &ab, "derived_abelianization, abelianization");
                for i in 0..=2 {
                    r.check_eq(format!("{name}: pi_{i} = H_{}", i + 1), &pis[i], &hs[i + 1], "derived_abelianization, group_homology");
                }
            }
            Err(e) => return errored(1, title, e),
        }
    }
    criterion(1, title, r)
}

/// Checked-in homology values.
pub fn homology_table() -> Vec<(&'static str, usize, &'static str)> {
    let mut t = Vec::new();
    for (name, n) in [("C2", "2"), ("C3", "3"), ("C4", "4"), ("C5", "5"), ("C6", "6")] {
        let zn: &'static str = match n {
            "2" => "Z/2",
            "3" => "Z/3",
            "4" => "Z/4",
            "5" => "Z/5",
            _ => "Z/6",
        };
        t.push((name, 0, "Z"));
        t.push((name, 1, zn));
        t.push((name, 2, "0"));
        t.push((name, 3, zn));
        t.push((name, 4, "0"));
    }
    t.push(("C2xC2", 2, "Z/2"));
    t.push(("S3", 1, "Z/2"));
    t.push(("S3", 2, "0"));
    t.push(("S3", 3, "Z/6"));
    t.push(("Q8", 1, "Z/2 + Z/2"));
    t.push(("Q8", 2, "0"));
    t
}

pub fn criterion_homology_table(cfg: &SuiteConfig) -> Criterion {
    let title = "homology regression table";
    let guard = SizeGuard(cfg.size_guard);
    let mut r = Report::new(title, None);
    for (name, i, want) in homology_table() {
        let g = by_name(name).expect("catalog group");
        match group_homology_range(g, i, guard) {
            Ok(h) => {
                r.check_eq(format!("H_{i}({name})"), &h[i].to_string(), &want.to_string(), "group_homology");
            }
            Err(e) => return errored(2, title, e),
        }
    }
    criterion(2, title, r)
}

/// A random complex with `top_degree <= 4` and entries bounded by
/// `max_entry`: elementary pieces `Z -k-> Z` and `Z`, conjugated by random
/// unimodular changes of basis.
pub fn random_complex(rng: &mut impl Rng, max_entry: i64) -> ChainComplex {
    loop {
        let top = rng.gen_range(0..=4usize);
        let pairs: Vec<usize> = (0..=top + 1).map(|n| if n == 0 || n > top { 0 } else { rng.gen_range(0..=1) }).collect();
        let scalars: Vec<i64> = (0..=top).map(|_| rng.gen_range(0..=5)).collect();
        let free: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=1)).collect();
        let ranks: Vec<usize> = (0..=top).map(|n| free[n] + pairs[n] + pairs[n + 1]).collect();
        let bases: Vec<(IntMatrix, IntMatrix)> = ranks.iter().map(|&r| random_unimodular(rng, r)).collect();
        let diffs: Vec<IntMatrix> = (1..=top)
            .map(|n| {
                let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
                if pairs[n] == 1 {
                    d[(free[n - 1] + pairs[n - 1], free[n])] = BigInt::from(scalars[n]);
                }
                bases[n - 1].0.mul(&d).mul(&bases[n].1)
            })
            .collect();
        if diffs.iter().all(|d| d.max_abs() <= BigInt::from(max_entry)) {
            return ChainComplex::new(ranks, diffs, false).expect("conjugated elementary complexes are complexes");
        }
    }
}

/// A unimodular matrix with its inverse, as a short product of elementary
/// operations.
fn random_unimodular(rng: &mut impl Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);
    if n < 2 {
        return (u, v);
    }
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(s);
        let mut einv = IntMatrix::identity(n);
        einv[(i, j)] = BigInt::from(-s);
        u = u.mul(&e);
        v = einv.mul(&v);
    }
    (u, v)
}

pub fn criterion_dold_kan(cfg: &SuiteConfig) -> Criterion {
    let title = "Dold-Kan round trip on random complexes";
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let complexes: Vec<ChainComplex> = (0..cfg.random_complexes).map(|_| random_complex(&mut rng, 10)).collect();
    let mut r = Report::new(title, None);
    let outcomes: Vec<(bool, bool)> = complexes
        .par_iter()
        .map(|c| {
            let top = c.top_degree();
            let round = dold_kan_round_trip(c, top).is_ok();
            let homotopy = from_chains(c, top + 1).is_ok_and(|s| (0..=top).all(|i| s.homotopy_group(i).ok() == c.homology(i).ok()));
            (round, homotopy)
        })
        .collect();
    for (k, (round, homotopy)) in outcomes.into_iter().enumerate() {
        r.check(format!("complex {k}: N(Gamma C) = C"), round, true, round, "dold_kan_round_trip");
        r.check(format!("complex {k}: pi_* Gamma C = H_* C"), homotopy, true, homotopy, "from_chains, homotopy_group");
    }
    criterion(3, title, r)
}

pub fn criterion_dold_thom(cfg: &SuiteConfig) -> Criterion {
    let title = "Dold-Thom desk check";
    let guard = SizeGuard(cfg.size_guard);
    let mut r = Report::new(title, None);
    let circle = FiniteSimplicialSet::circle(3);
    match dold_thom_check(&circle, 3, 1, guard) {
        Ok(rep) => {
            for (n, v) in rep.values.iter().enumerate() {
                r.check_eq(format!("H_1(Sym^{} S^1)", n + 1), &v.to_string(), &"Z".to_string(), "sym_power_chains");
            }
            r.check("Sym^n S^1 matches reduced homology", rep.matches_reduced_homology, true, rep.matches_reduced_homology, "dold_thom_check");
        }
        Err(e) => return errored(4, title, e),
    }
    let wedge = FiniteSimplicialSet::wedge_of_circles(2, 3);
    match dold_thom_check(&wedge, 3, 1, guard) {
        Ok(rep) => {
            let stable = rep.stable_value.as_ref().map_or("unstabilized".to_string(), ToString::to_string);
            r.check_eq("H_1(Sym^n (S^1 v S^1)) stabilizes", &stable, &"Z^2".to_string(), "dold_thom_check");
            r.check("wedge matches reduced homology", rep.matches_reduced_homology, true, rep.matches_reduced_homology, "dold_thom_check");
        }
        Err(e) => return errored(4, title, e),
    }
    criterion(4, title, r)
}

pub fn criterion_class_numbers(cfg: &SuiteConfig) -> Criterion {
    let title = "class numbers against an independent enumerator";
    let (lo, hi) = cfg.class_number_range;
    let mut r = Report::new(title, None);
    let ds = fundamental_discriminants(lo, hi);
    let rows: Vec<(i64, Result<usize, String>, usize)> = ds
        .par_iter()
        .map(|&d| (d, class_group(d).map(|c| c.class_number()).map_err(|e| e.to_string()), class_number_enumerated(d)))
        .collect();
    for (d, h, h2) in rows {
        match h {
            Ok(h) => {
                r.check_eq(format!("h({d})"), &h, &h2, "class_group, class_number_enumerated");
            }
            Err(e) => return errored(5, title, e),
        }
    }
    for (d, want) in [(-4, 1usize), (-20, 2), (-23, 3), (-47, 5)] {
        let h = class_group(d).map(|c| c.class_number()).unwrap_or(0);
        r.check_eq(format!("spot h({d})"), &h, &want, "class_group");
    }
    criterion(5, title, r)
}

fn kummer_grid(cfg: &SuiteConfig) -> Vec<(i64, u64)> {
    cfg.discriminants.iter().flat_map(|&d| cfg.kummer_levels.iter().map(move |&n| (d, n))).collect()
}

pub fn criterion_kummer(cfg: &SuiteConfig) -> Criterion {
    let title = "Kummer exactness";
    let mut r = Report::new(title, None);
    for (d, n) in kummer_grid(cfg) {
        match kummer_cohomology(d, n) {
            Ok(k) => {
                let ord = |g: &crate::abgroup::FgAbGroup| g.order().expect("finite");
                r.check_eq(
                    format!("d = {d}, n = {n}: |H^1| = |O^x/n| |Cl[n]|"),
                    &ord(&k.h1),
                    &(ord(&k.units_mod_n) * ord(&k.class_torsion)),
                    "kummer_cohomology",
                );
                let cl = class_group(d).expect("fundamental").group;
                r.check_eq(
                    format!("d = {d}, n = {n}: |H^2| = |Cl/n|"),
                    &ord(&k.h2),
                    &ord(&cl.quotient_by_n(&BigInt::from(n))),
                    "kummer_cohomology, FgAbGroup::quotient_by_n",
                );
            }
            Err(e) => return errored(6, title, e),
        }
    }
    criterion(6, title, r)
}

pub fn criterion_poitou_tate(cfg: &SuiteConfig) -> Criterion {
    let title = "Poitou-Tate order check";
    let mut r = Report::new(title, None);
    for (d, n) in kummer_grid(cfg) {
        match poitou_tate_order_check(d, n) {
            Ok(p) => {
                for mut c in p.checks {
                    c.name = format!("d = {d}, n = {n}: {}", c.name);
                    r.checks.push(c);
                }
            }
            Err(e) => return errored(7, title, e),
        }
    }
    criterion(7, title, r)
}

pub fn criterion_theorem(cfg: &SuiteConfig) -> Criterion {
    let title = "theorem verification reports";
    let mut r = Report::new(title, None);
    for &d in &cfg.theorem_discriminants {
        match verify_main_theorem(d, &cfg.theorem_levels, cfg.artin_p_max) {
            Ok(t) => {
                let v = &t.verified;
                r.check("d = {d}: pi_0 paths agree".replace("{d}", &d.to_string()), &v.pi0_class_group, opt(&v.pi0_system.limit), v.pi0_agree, "verify_main_theorem");
                r.check(format!("d = {d}: pi_1 paths agree"), &v.pi1_units, opt(&v.pi1_system.limit), v.pi1_agree, "verify_main_theorem");
                let flagged = !t.predicted.is_empty() && t.predicted.iter().all(|p| !p.verified);
                r.check(format!("d = {d}: predicted block present and unverified"), flagged, true, flagged, "verify_main_theorem");
            }
            Err(e) => return errored(8, title, e),
        }
    }
    criterion(8, title, r)
}

fn opt(g: &Option<crate::abgroup::FgAbGroup>) -> String {
    g.as_ref().map_or_else(|| "unstabilized".to_string(), ToString::to_string)
}

pub fn criterion_artin(cfg: &SuiteConfig) -> Criterion {
    let title = "splitting law for curated Hilbert class fields";
    let mut r = Report::new(title, None);
    for c in curated_fields() {
        match artin_pi0_check(c.d, &c.poly, cfg.artin_p_max) {
            Ok(a) => {
                r.check(
                    format!("d = {}: agreement below {}", c.d, cfg.artin_p_max),
                    format!("{}/{}", a.agreements, a.tested),
                    "100%",
                    a.pass() && a.tested > 0,
                    "artin_pi0_check",
                );
            }
            Err(e) => return errored(9, title, e),
        }
    }
    criterion(9, title, r)
}

pub fn criterion_functoriality(cfg: &SuiteConfig) -> Criterion {
    let title = "functoriality squares for every catalog subgroup pair";
    match norm_transfer_report(&catalog_pairs(cfg.max_group_order), 2, SizeGuard(cfg.size_guard)) {
        Ok(r) => criterion(10, title, r),
        Err(e) => errored(10, title, e),
    }
}

/// Criteria 1 to 10.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let criteria = vec![
        criterion_derived_vs_homology(cfg),
        criterion_homology_table(cfg),
        criterion_dold_kan(cfg),
        criterion_dold_thom(cfg),
        criterion_class_numbers(cfg),
        criterion_kummer(cfg),
        criterion_poitou_tate(cfg),
        criterion_theorem(cfg),
        criterion_artin(cfg),
        criterion_functoriality(cfg),
    ];
    let pass = criteria.iter().all(|c| c.pass);
    SuiteReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config: cfg.clone(),
        criteria,
        pass,
    }
}

/// Criterion 11 from two independent runs.
pub fn determinism_criterion(first: &SuiteReport, second: &SuiteReport) -> Criterion {
    let title = "determinism of the comparable payload";
    let (a, b) = (first.payload(), second.payload());
    let same = a == b;
    let mut r = Report::new(title, None);
    r.check("payload bytes identical across two runs", a.len(), b.len(), same, "run_suite");
    criterion(11, title, r)
}

/// Runs the battery twice and appends the determinism criterion.
pub fn run_full_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut first = run_suite(cfg);
    let second = run_suite(cfg);
    let c11 = determinism_criterion(&first, &second);
    first.pass &= c11.pass;
    first.criteria.push(c11);
    first
}
