//! Verification suites that cross-check every table, bijection and series
//! against independent oracles.
//!
//! A run first builds its artifacts (simplices, the `B'_3` grid, the series
//! `G`, `F` and the rational series), optionally corrupts one cell through a
//! [`Fault`], and then runs each selected suite against those artifacts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    b3_closed, b3_prime, b3_prime_boundary, ballot, bp_closed, catalan, fuss_catalan, StatIndex,
};
use crate::lattice::{
    cycle_word_profile, distribution_with_limit, enumerate_paths_with_limit,
    enumerate_trees_with_limit, good_shift_fraction, periodic_cycle_word, random_cycle_word,
    steps_to_string, tree_distribution, LatticePath, PAryTree, Step, DEFAULT_ENUM_LIMIT,
};
use crate::series::{
    build_f, cubic_residual, f_equation_residual, g_equation_residual, rational_b3prime, solve_g,
    TruncatedSeries,
};
use crate::simplex::{build_prime_grid, build_simplex, FCSimplex, PrimeGrid};

pub const CATALAN_TRIANGLE: &[&[i64]] = &[
    &[1],
    &[1, 1],
    &[1, 2, 2],
    &[1, 3, 5, 5],
    &[1, 4, 9, 14, 14],
    &[1, 5, 14, 28, 42, 42],
];

/// Sections `n = 1..=5` of the `p = 3` simplex, row `k`, column `l`.
pub const TETRAHEDRON_SECTIONS: &[&[&[i64]]] = &[
    &[&[1]],
    &[&[1, 1], &[1]],
    &[&[1, 2, 2], &[2, 3], &[2]],
    &[&[1, 3, 5, 5], &[3, 8, 10], &[5, 10], &[5]],
    &[
        &[1, 4, 9, 14, 14],
        &[4, 15, 30, 35],
        &[9, 30, 45],
        &[14, 35],
        &[14],
    ],
];

/// `B'_3(3, k, l)` for `k, l <= 4`.
pub const PRIME_SECTION_N3: &[&[i64]] = &[
    &[1, 2, 2, 0, -5],
    &[2, 3, 0, -10, -30],
    &[2, 0, -12, -40, -90],
    &[0, -10, -40, -100, -200],
    &[-5, -30, -90, -200, -375],
];

/// Verification suites, declared in name order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    ClosedVsRecurrence,
    CycleLemma,
    Enumeration,
    Gf,
    Involution,
    Prime,
    Sums,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::ClosedVsRecurrence,
        Suite::CycleLemma,
        Suite::Enumeration,
        Suite::Gf,
        Suite::Involution,
        Suite::Prime,
        Suite::Sums,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedVsRecurrence => "closed-vs-recurrence",
            Suite::CycleLemma => "cycle-lemma",
            Suite::Enumeration => "enumeration",
            Suite::Gf => "gf",
            Suite::Involution => "involution",
            Suite::Prime => "prime",
            Suite::Sums => "sums",
        }
    }

    /// `"all"` or a single suite name.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// User-facing bounds. `p` restricts the arity-dependent checks to one
/// arity; `n_max` replaces the layer bound of every table and enumeration
/// check. The cycle-lemma grid and series caps are not affected by `n_max`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bounds {
    pub quick: bool,
    pub p: Option<u32>,
    pub n_max: Option<u64>,
    /// Path-count limit for enumeration checks.
    pub enum_limit: Option<u64>,
}

/// Concrete bounds for one run.
#[derive(Debug, Clone)]
struct Plan {
    ps: Vec<u32>,
    n_max: u64,
    triangle_n: Option<u64>,
    b3_closed_n: Option<u64>,
    b3_sum_n: Option<u64>,
    enumeration: Vec<(u32, u64)>,
    trees: Vec<(u32, u64)>,
    p3_n: Option<u64>,
    cycle_grid: (u64, u64, u64),
    cycle_words: usize,
    periodic_words: usize,
    prime_box: Option<u64>,
    gf_order: Option<usize>,
    enum_limit: u64,
}

impl Plan {
    fn new(b: &Bounds) -> Result<Plan> {
        if let Some(p) = b.p {
            if p < 2 {
                return Err(Error::InvalidArity(p));
            }
        }
        if b.n_max == Some(0) {
            return Err(Error::ZeroLayer);
        }
        let wants = |p: u32| b.p.is_none_or(|q| q == p);
        let n = |default: u64| b.n_max.unwrap_or(default);
        let ps: Vec<u32> = match b.p {
            Some(p) => vec![p],
            None => (2..=6).collect(),
        };
        let enum_defaults: &[(u32, u64)] = if b.quick {
            &[(2, 6), (3, 6), (4, 6)]
        } else {
            &[(2, 10), (3, 8), (4, 6)]
        };
        let enumeration = match b.p {
            None => enum_defaults.iter().map(|&(p, m)| (p, n(m))).collect(),
            Some(p) => vec![(
                p,
                n(enum_defaults.iter().find(|e| e.0 == p).map_or(4, |e| e.1)),
            )],
        };
        let trees = ps
            .iter()
            .filter(|&&p| p <= 4 || b.p.is_some())
            .map(|&p| (p, n(6)))
            .collect();
        let plan = Plan {
            ps,
            n_max: n(12),
            triangle_n: wants(2).then(|| n(if b.quick { 25 } else { 30 })),
            b3_closed_n: wants(3).then(|| n(25)),
            b3_sum_n: wants(3).then(|| n(20)),
            enumeration,
            trees,
            p3_n: wants(3).then(|| n(6)),
            cycle_grid: (8, 3, 3),
            cycle_words: if b.quick { 100 } else { 1000 },
            periodic_words: if b.quick { 20 } else { 100 },
            prime_box: wants(3).then(|| n(12)),
            gf_order: wants(3).then_some(8),
            enum_limit: b.enum_limit.unwrap_or(DEFAULT_ENUM_LIMIT),
        };
        Ok(plan)
    }

    /// Refuses bounds whose exhaustive checks would exceed the path limit.
    fn check_enumeration_sizes(&self, suites: &[Suite]) -> Result<()> {
        let mut sizes: Vec<(u32, u64)> = Vec::new();
        if suites.contains(&Suite::Enumeration) {
            sizes.extend(&self.enumeration);
            sizes.extend(self.p3_n.map(|n| (3, n)));
        }
        if suites.contains(&Suite::Involution) {
            sizes.extend(&self.trees);
            sizes.extend(self.p3_n.map(|n| (3, n)));
        }
        for (p, n) in sizes {
            let count = fuss_catalan(p, n);
            if count > BigInt::from(self.enum_limit) {
                return Err(Error::TooLarge {
                    requested: u128::try_from(&count).unwrap_or(u128::MAX),
                    limit: self.enum_limit as u128,
                });
            }
        }
        Ok(())
    }

    /// Largest layer each selected suite reads from the simplex of arity `p`.
    fn simplex_sizes(&self, suites: &[Suite]) -> BTreeMap<u32, u64> {
        let mut sizes: BTreeMap<u32, u64> = BTreeMap::new();
        let mut need = |p: u32, n: u64| {
            let e = sizes.entry(p).or_insert(0);
            *e = (*e).max(n);
        };
        for s in suites {
            match s {
                Suite::ClosedVsRecurrence | Suite::Sums => {
                    for &p in &self.ps {
                        need(p, self.n_max);
                    }
                    if let Some(n) = self.triangle_n {
                        need(2, n);
                    }
                    if let Some(n) = self.b3_closed_n.filter(|_| *s == Suite::ClosedVsRecurrence) {
                        need(3, n);
                    }
                    if let Some(n) = self.b3_sum_n.filter(|_| *s == Suite::Sums) {
                        need(3, n);
                    }
                }
                Suite::Enumeration => {
                    for &(p, n) in &self.enumeration {
                        need(p, n);
                    }
                }
                Suite::Involution => {
                    if let Some(n) = self.p3_n {
                        need(3, n);
                    }
                }
                Suite::Prime => {
                    if let Some(n) = self.prime_box {
                        need(3, n);
                    }
                }
                Suite::CycleLemma | Suite::Gf => {}
            }
        }
        sizes
    }
}

/// A single corrupted value: one is added to the addressed cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fault {
    Simplex {
        p: u32,
        n: u64,
        ks: Vec<u64>,
    },
    Prime {
        n: u64,
        k: u64,
        l: u64,
    },
    Series {
        which: SeriesName,
        at: (usize, usize, usize),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesName {
    F,
    G,
    Rational,
}

/// Accepted forms: `simplex:P:N:K1,K2,..`, `prime:N:K:L`, `F:I:J:K`,
/// `G:I:J:K` and `rational:I:J:K`.
impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadFault(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        match parts.as_slice() {
            ["simplex", p, n, ks] => {
                let ks = if ks.is_empty() {
                    Vec::new()
                } else {
                    ks.split(',').map(num).collect::<Result<Vec<u64>>>()?
                };
                Ok(Fault::Simplex {
                    p: num(p)? as u32,
                    n: num(n)?,
                    ks,
                })
            }
            ["prime", n, k, l] => Ok(Fault::Prime {
                n: num(n)?,
                k: num(k)?,
                l: num(l)?,
            }),
            [name, i, j, k] => {
                let which = match *name {
                    "F" => SeriesName::F,
                    "G" => SeriesName::G,
                    "rational" => SeriesName::Rational,
                    _ => return Err(bad()),
                };
                Ok(Fault::Series {
                    which,
                    at: (num(i)? as usize, num(j)? as usize, num(k)? as usize),
                })
            }
            _ => Err(bad()),
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub bound: String,
    pub pass: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Accumulates comparisons; keeps the first mismatch only.
struct Check {
    suite: Suite,
    name: String,
    bound: String,
    checked: u64,
    failure: Option<String>,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, bound: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            bound: bound.into(),
            checked: 0,
            failure: None,
        }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, got: &T, want: &T, at: impl FnOnce() -> String) {
        self.checked += 1;
        if self.failure.is_none() && got != want {
            self.failure = Some(format!("{}: got {got}, expected {want}", at()));
        }
    }

    fn holds(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.checked += 1;
        if self.failure.is_none() && !ok {
            self.failure = Some(at());
        }
    }

    fn error(&mut self, e: Error) {
        if self.failure.is_none() {
            self.failure = Some(e.to_string());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            suite: self.suite.name().to_string(),
            name: self.name,
            bound: self.bound,
            pass: self.failure.is_none(),
            checked: self.checked,
            counterexample: self.failure,
        }
    }
}

/// Everything the suites read. Suites only compare these against oracles,
/// so a corrupted artifact always surfaces as a failing check.
pub struct Artifacts {
    simplices: BTreeMap<u32, FCSimplex>,
    prime: Option<PrimeGrid>,
    g: Option<TruncatedSeries>,
    f: Option<TruncatedSeries>,
    rational: Option<TruncatedSeries>,
}

impl Artifacts {
    fn build(plan: &Plan, suites: &[Suite]) -> Result<Artifacts> {
        let simplices = plan
            .simplex_sizes(suites)
            .into_iter()
            .map(|(p, n)| build_simplex(p, n).map(|s| (p, s)))
            .collect::<Result<_>>()?;
        let prime = match (suites.contains(&Suite::Prime), plan.prime_box) {
            (true, Some(m)) => Some(build_prime_grid(m, m, m)?),
            _ => None,
        };
        let (g, f, rational) = match (suites.contains(&Suite::Gf), plan.gf_order) {
            (true, Some(d)) => {
                let caps = (d, d, d);
                let g = solve_g(caps)?;
                let f = build_f(&g)?;
                (Some(g), Some(f), Some(rational_b3prime(caps)?))
            }
            _ => (None, None, None),
        };
        Ok(Artifacts {
            simplices,
            prime,
            g,
            f,
            rational,
        })
    }

    fn inject(&mut self, fault: &Fault) -> Result<()> {
        let cell = match fault {
            Fault::Simplex { p, n, ks } => {
                let s = self
                    .simplices
                    .get_mut(p)
                    .ok_or_else(|| Error::FaultTarget(format!("simplex p={p}")))?;
                s.entry_mut(&StatIndex::new(*p, *n, ks.clone())?)?
            }
            Fault::Prime { n, k, l } => self
                .prime
                .as_mut()
                .ok_or_else(|| Error::FaultTarget("prime grid".into()))?
                .value_mut(*n, *k, *l)?,
            Fault::Series { which, at } => {
                let (slot, label) = match which {
                    SeriesName::F => (&mut self.f, "F"),
                    SeriesName::G => (&mut self.g, "G"),
                    SeriesName::Rational => (&mut self.rational, "rational series"),
                };
                slot.as_mut()
                    .ok_or_else(|| Error::FaultTarget(label.into()))?
                    .coefficient_mut(at.0, at.1, at.2)?
            }
        };
        *cell += 1;
        Ok(())
    }
}

/// Runs `suites` (deduplicated and sorted by name) within `bounds`.
///
/// Errors are reserved for unusable bounds or fault targets; mismatches are
/// reported through the returned [`Report`].
pub fn run(suites: &[Suite], bounds: &Bounds, fault: Option<&Fault>) -> Result<Report> {
    let suites: Vec<Suite> = suites
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let plan = Plan::new(bounds)?;
    plan.check_enumeration_sizes(&suites)?;
    let mut art = Artifacts::build(&plan, &suites)?;
    if let Some(fault) = fault {
        art.inject(fault)?;
    }
    let mut checks = Vec::new();
    for suite in suites {
        let mut out = match suite {
            Suite::ClosedVsRecurrence => closed_vs_recurrence(&plan, &art),
            Suite::CycleLemma => cycle_lemma(&plan),
            Suite::Enumeration => enumeration(&plan, &art),
            Suite::Gf => gf(&art),
            Suite::Involution => involution(&plan, &art),
            Suite::Prime => prime(&plan, &art),
            Suite::Sums => sums(&plan, &art),
        };
        checks.extend(out.drain(..).map(Check::finish));
    }
    Ok(Report {
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn simplex(art: &Artifacts, p: u32) -> &FCSimplex {
    &art.simplices[&p]
}

fn layer_values(s: &FCSimplex, n: u64) -> Vec<(Vec<u64>, BigInt)> {
    s.layer(n)
        .expect("layer within the built range")
        .into_iter()
        .map(|(ks, v)| (ks, v.clone()))
        .collect()
}

fn closed_vs_recurrence(plan: &Plan, art: &Artifacts) -> Vec<Check> {
    let suite = Suite::ClosedVsRecurrence;
    let mut out = Vec::new();
    if let (Some(top), Some(s)) = (plan.triangle_n, art.simplices.get(&2)) {
        let mut c = Check::new(suite, "golden-catalan-triangle", "n <= 6");
        for (i, row) in CATALAN_TRIANGLE.iter().enumerate().take(s.n_max() as usize) {
            let n = i as u64 + 1;
            let got: Vec<BigInt> = layer_values(s, n).into_iter().map(|(_, v)| v).collect();
            for (k, want) in row.iter().enumerate() {
                c.eq(&got[k], &big(*want), || format!("n={n} k={k}"));
            }
        }
        out.push(c);
        let mut c = Check::new(suite, "ballot-closed-form", format!("n <= {top}"));
        for n in 1..=top {
            for (ks, v) in layer_values(s, n) {
                c.eq(&v, &ballot(n as i64, ks[0] as i64), || {
                    format!("n={n} k={}", ks[0])
                });
            }
        }
        out.push(c);
    }
    if let Some(top) = plan.b3_closed_n {
        let s = simplex(art, 3);
        let mut c = Check::new(suite, "golden-tetrahedron-sections", "n <= 5");
        for (i, sec) in TETRAHEDRON_SECTIONS
            .iter()
            .enumerate()
            .take(s.n_max() as usize)
        {
            let n = i as u64 + 1;
            let got = s.section(n).expect("built");
            for (k, row) in sec.iter().enumerate() {
                for (l, want) in row.iter().enumerate() {
                    c.eq(&got[k][l], &big(*want), || format!("n={n} k={k} l={l}"));
                }
            }
        }
        out.push(c);
        let mut c = Check::new(suite, "b3-closed-form", format!("n <= {top}"));
        for n in 1..=top {
            for (ks, v) in layer_values(s, n) {
                c.eq(&v, &b3_closed(n as i64, ks[0] as i64, ks[1] as i64), || {
                    format!("n={n} k={} l={}", ks[0], ks[1])
                });
            }
        }
        out.push(c);
    }
    // every built cell of every simplex against the product formula
    for (&p, s) in &art.simplices {
        let mut c = Check::new(
            suite,
            format!("product-formula-p{p}"),
            format!("n <= {}", s.n_max()),
        );
        for n in 1..=s.n_max() {
            for (ks, v) in layer_values(s, n) {
                let idx = StatIndex::new(p, n, ks.clone()).expect("valid index");
                c.eq(&v, &bp_closed(&idx), || format!("p={p} n={n} ks={ks:?}"));
            }
        }
        out.push(c);
    }
    out
}

fn sums(plan: &Plan, art: &Artifacts) -> Vec<Check> {
    let suite = Suite::Sums;
    let mut out = Vec::new();
    if let Some(top) = plan.triangle_n {
        let s = simplex(art, 2);
        let mut c = Check::new(suite, "catalan-row-sums", format!("n <= {top}"));
        for n in 1..=top {
            c.eq(&s.layer_sum(n).expect("built"), &catalan(n), || {
                format!("n={n}")
            });
        }
        out.push(c);
    }
    if let Some(top) = plan.b3_sum_n {
        let s = simplex(art, 3);
        let mut c = Check::new(suite, "ternary-layer-sums", format!("n <= {top}"));
        for (n, want) in [1, 3, 12, 55, 273].into_iter().enumerate() {
            c.eq(&fuss_catalan(3, n as u64 + 1), &big(want), || {
                format!("C3({})", n + 1)
            });
        }
        for n in 1..=top {
            c.eq(&s.layer_sum(n).expect("built"), &fuss_catalan(3, n), || {
                format!("n={n}")
            });
        }
        out.push(c);
    }
    let mut c = Check::new(
        suite,
        "fuss-catalan-layer-sums",
        format!("p in {:?}, n <= {}", plan.ps, plan.n_max),
    );
    for &p in &plan.ps {
        let s = simplex(art, p);
        for n in 1..=plan.n_max {
            c.eq(&s.layer_sum(n).expect("built"), &fuss_catalan(p, n), || {
                format!("p={p} n={n}")
            });
        }
    }
    out.push(c);
    out
}

fn enumeration(plan: &Plan, art: &Artifacts) -> Vec<Check> {
    let suite = Suite::Enumeration;
    let mut out = Vec::new();
    for &(p, top) in &plan.enumeration {
        let s = simplex(art, p);
        let mut c = Check::new(
            suite,
            format!("path-distribution-p{p}"),
            format!("n <= {top}"),
        );
        for n in 1..=top {
            match distribution_with_limit(p, n, plan.enum_limit) {
                Ok(dist) => {
                    let total: BigInt = dist.values().sum();
                    c.eq(&total, &fuss_catalan(p, n), || {
                        format!("p={p} n={n} path count")
                    });
                    for (ks, v) in layer_values(s, n) {
                        let got = dist.get(&ks).cloned().unwrap_or_default();
                        c.eq(&got, &v, || format!("p={p} n={n} ks={ks:?}"));
                    }
                }
                Err(e) => c.error(e),
            }
        }
        out.push(c);
    }
    if let Some(top) = plan.p3_n {
        let mut c = Check::new(suite, "truncation-bijection-p3", format!("2 <= n <= {top}"));
        for n in 2..=top {
            if let Err(e) = truncation_check(&mut c, 3, n, plan.enum_limit) {
                c.error(e);
            }
        }
        out.push(c);
    }
    out
}

/// Cutting the last node maps the class `ks` at size `n` bijectively onto
/// the paths of size `n - 1` whose statistics are dominated by `ks`.
fn truncation_check(c: &mut Check, p: u32, n: u64, limit: u64) -> Result<()> {
    let mut by_class: BTreeMap<Vec<u64>, Vec<LatticePath>> = BTreeMap::new();
    for x in enumerate_paths_with_limit(p, n, limit)? {
        by_class.entry(x.stats()?.ks).or_default().push(x);
    }
    let smaller = enumerate_paths_with_limit(p, n - 1, limit)?;
    let smaller_stats: Vec<Vec<u64>> = smaller
        .iter()
        .map(|y| y.stats().map(|s| s.ks))
        .collect::<Result<_>>()?;
    for (ks, members) in by_class {
        let images: BTreeSet<LatticePath> = members
            .iter()
            .map(LatticePath::truncate_last_node)
            .collect::<Result<_>>()?;
        c.eq(&images.len(), &members.len(), || {
            format!("n={n} ks={ks:?} injectivity")
        });
        let expected: BTreeSet<LatticePath> = smaller
            .iter()
            .zip(&smaller_stats)
            .filter(|(_, st)| st.iter().zip(&ks).all(|(i, k)| i <= k))
            .map(|(y, _)| y.clone())
            .collect();
        c.holds(images == expected, || format!("n={n} ks={ks:?} image"));
    }
    Ok(())
}

fn involution(plan: &Plan, art: &Artifacts) -> Vec<Check> {
    let suite = Suite::Involution;
    let mut out = Vec::new();
    for &(p, top) in &plan.trees {
        let mut c = Check::new(
            suite,
            format!("tree-path-bijection-p{p}"),
            format!("n <= {top}"),
        );
        for n in 1..=top {
            if let Err(e) = bijection_check(&mut c, p, n, plan.enum_limit) {
                c.error(e);
            }
        }
        out.push(c);
    }
    if let Some(top) = plan.p3_n {
        let s = simplex(art, 3);
        let mut stats = Check::new(suite, "tree-statistics-p3", format!("n <= {top}"));
        let mut inv = Check::new(suite, "last-right-string-involution", format!("n <= {top}"));
        for n in 1..=top {
            let trees = match enumerate_trees_with_limit(3, n, plan.enum_limit) {
                Ok(t) => t,
                Err(e) => {
                    stats.error(e.clone());
                    inv.error(e);
                    continue;
                }
            };
            let dist = tree_distribution(&trees);
            for (ks, v) in layer_values(s, n) {
                let got = dist.get(&ks).cloned().unwrap_or_default();
                stats.eq(&got, &v, || format!("n={n} ks={ks:?}"));
            }
            let mut image_classes: BTreeMap<Vec<u64>, BigInt> = BTreeMap::new();
            for t in &trees {
                match t.last_right_string_involution() {
                    Ok(u) => {
                        let back = u.last_right_string_involution();
                        inv.holds(back.as_ref() == Ok(t), || {
                            format!("n={n} tree {t} not fixed by the square")
                        });
                        let (a, b) = (t.stats().ks, u.stats().ks);
                        inv.holds(a[0] == b[1] && a[1] == b[0], || {
                            format!("n={n} tree {t}: class {a:?} maps to {b:?}")
                        });
                        *image_classes.entry(b).or_default() += 1;
                    }
                    Err(e) => inv.error(e),
                }
            }
            for (ks, size) in &dist {
                let swapped = vec![ks[1], ks[0]];
                let got = image_classes.get(&swapped).cloned().unwrap_or_default();
                inv.eq(&got, size, || format!("n={n} class {ks:?} image size"));
            }
            // class sizes of the table itself are symmetric
            for (ks, v) in layer_values(s, n) {
                let mirror = s
                    .entry(&StatIndex::new(3, n, vec![ks[1], ks[0]]).expect("valid"))
                    .expect("built");
                inv.eq(&v, &mirror, || format!("n={n} ks={ks:?} vs mirror"));
            }
        }
        out.push(stats);
        out.push(inv);
    }
    out
}

fn bijection_check(c: &mut Check, p: u32, n: u64, limit: u64) -> Result<()> {
    let trees = enumerate_trees_with_limit(p, n, limit)?;
    c.eq(&BigInt::from(trees.len()), &fuss_catalan(p, n), || {
        format!("p={p} n={n} tree count")
    });
    let mut images = BTreeSet::new();
    for t in &trees {
        let path = t.to_path();
        let back = PAryTree::from_path(&path)?;
        c.holds(&back == t, || format!("p={p} n={n} tree {t} round trip"));
        images.insert(path);
    }
    let paths: BTreeSet<LatticePath> = enumerate_paths_with_limit(p, n, limit)?
        .into_iter()
        .collect();
    c.eq(&images.len(), &trees.len(), || {
        format!("p={p} n={n} injectivity")
    });
    c.holds(images == paths, || {
        format!("p={p} n={n} image differs from the path set")
    });
    Ok(())
}

fn cycle_lemma(plan: &Plan) -> Vec<Check> {
    let suite = Suite::CycleLemma;
    let (nm, km, lm) = plan.cycle_grid;
    let bound = format!("n <= {nm}, k <= {km}, l <= {lm}, k + l < n");
    let mut rnd = Check::new(
        suite,
        "good-shift-fraction",
        format!("{bound}, {} words each", plan.cycle_words),
    );
    let mut per = Check::new(
        suite,
        "good-shift-fraction-periodic",
        format!("{bound}, repeats 2..=4"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let probe = |c: &mut Check, word: &[Step], n: u64, k: u64, l: u64| match (
        cycle_word_profile(word),
        good_shift_fraction(word),
    ) {
        (Ok(prof), Ok(frac)) => {
            let at = || format!("word {}", steps_to_string(word));
            c.holds(prof.n == n && prof.k == k && prof.l == l, at);
            c.eq(&frac, &prof.predicted_fraction(), || {
                format!("(n,k,l)=({n},{k},{l}) word {}", steps_to_string(word))
            });
        }
        (Err(e), _) | (_, Err(e)) => c.error(e),
    };
    for n in 1..=nm {
        for k in 0..=km {
            for l in 0..=lm {
                if k + l >= n {
                    continue;
                }
                for _ in 0..plan.cycle_words {
                    let w = random_cycle_word(&mut rng, n, k, l);
                    probe(&mut rnd, &w, n, k, l);
                }
                for r in 2..=4 {
                    for _ in 0..plan.periodic_words {
                        match periodic_cycle_word(&mut rng, n, k, l, r) {
                            Some(w) => probe(&mut per, &w, n, k, l),
                            None => break,
                        }
                    }
                }
            }
        }
    }
    vec![rnd, per]
}

fn prime(plan: &Plan, art: &Artifacts) -> Vec<Check> {
    let suite = Suite::Prime;
    let (Some(m), Some(grid)) = (plan.prime_box, art.prime.as_ref()) else {
        return Vec::new();
    };
    let mut golden = Check::new(suite, "golden-prime-section", "n = 3, k, l <= 4");
    if m >= 4 {
        let got = grid.slice(3).expect("built");
        for (k, row) in PRIME_SECTION_N3.iter().enumerate() {
            for (l, want) in row.iter().enumerate() {
                golden.eq(&got[k][l], &big(*want), || format!("k={k} l={l}"));
            }
        }
    }
    let mut closed = Check::new(suite, "prime-closed-form", format!("n, k, l <= {m}"));
    for n in 0..=m {
        for k in 0..=m {
            for l in 0..=m {
                let got = grid.value(n, k, l).expect("built");
                let (n, k, l) = (n as i64, k as i64, l as i64);
                let want = if n == 0 {
                    b3_prime_boundary(k, l)
                } else {
                    b3_prime(n, k, l)
                };
                closed.eq(got, &want, || format!("n={n} k={k} l={l}"));
            }
        }
    }
    let mut agree = Check::new(suite, "prime-matches-simplex", format!("k + l < n <= {m}"));
    let s = simplex(art, 3);
    for n in 1..=m.min(s.n_max()) {
        for (ks, v) in layer_values(s, n) {
            let got = grid.value(n, ks[0], ks[1]).expect("built");
            agree.eq(got, &v, || format!("n={n} k={} l={}", ks[0], ks[1]));
        }
    }
    vec![golden, closed, agree]
}

fn zero_series(c: &mut Check, r: Result<TruncatedSeries>) {
    match r {
        Ok(s) => {
            let first = s.terms().next().map(|((i, j, k), v)| (i, j, k, v.clone()));
            c.holds(first.is_none(), || {
                let (i, j, k, v) = first.unwrap();
                format!("t^{i} x^{j} y^{k}: residual {v}")
            });
        }
        Err(e) => c.error(e),
    }
}

/// Checks each coefficient of `s` inside its caps against `want`.
fn coefficients(c: &mut Check, s: &TruncatedSeries, want: impl Fn(i64, i64, i64) -> BigInt) {
    for (i, j, k, v) in s.table() {
        c.eq(&v, &want(i as i64, j as i64, k as i64), || {
            format!("t^{i} x^{j} y^{k}")
        });
    }
}

/// Value of the generating function `F` at `t^n x^k y^l`.
pub fn f_oracle(n: i64, k: i64, l: i64) -> BigInt {
    if n == 0 {
        BigInt::from(u8::from(k == 0 && l == 0))
    } else {
        b3_closed(n, k, l)
    }
}

/// Value of `G` at `t^i x^j y^k`: zero unless `j + k = i`, otherwise the
/// number of paths of size `i` with `k` odd-ending down steps.
pub fn g_oracle(i: i64, j: i64, k: i64) -> BigInt {
    if j + k != i {
        BigInt::zero()
    } else if i == 0 {
        BigInt::one()
    } else {
        (0..i - k).map(|kk| b3_closed(i, kk, k)).sum()
    }
}

/// Value of the rational series at `t^i x^j y^k`.
pub fn rational_oracle(i: i64, j: i64, k: i64) -> BigInt {
    if i == 0 {
        b3_prime_boundary(j, k)
    } else {
        b3_prime(i, j, k)
    }
}

fn gf(art: &Artifacts) -> Vec<Check> {
    let suite = Suite::Gf;
    let (Some(g), Some(f), Some(r)) = (&art.g, &art.f, &art.rational) else {
        return Vec::new();
    };
    let caps = format!("caps {:?}", g.caps());
    let mut out = Vec::new();
    let mut c = Check::new(suite, "g-cubic-residual", caps.clone());
    zero_series(&mut c, cubic_residual(g));
    out.push(c);
    let mut c = Check::new(suite, "g-functional-equation", caps.clone());
    zero_series(&mut c, g_equation_residual(g));
    out.push(c);
    let mut c = Check::new(suite, "g-coefficients", caps.clone());
    coefficients(&mut c, g, g_oracle);
    out.push(c);
    let mut c = Check::new(suite, "f-functional-equation", caps.clone());
    zero_series(&mut c, f_equation_residual(f, g));
    out.push(c);
    let mut c = Check::new(suite, "f-coefficients", caps.clone());
    coefficients(&mut c, f, f_oracle);
    out.push(c);
    let mut c = Check::new(suite, "prime-rational-coefficients", caps);
    coefficients(&mut c, r, rational_oracle);
    out.push(c);
    out
}

/// Which series identities `gf_checks` covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfCheck {
    F,
    GCubic,
    PrimeRational,
    All,
}

impl FromStr for GfCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(GfCheck::F),
            "G-cubic" => Ok(GfCheck::GCubic),
            "prime-rational" => Ok(GfCheck::PrimeRational),
            "all" => Ok(GfCheck::All),
            _ => Err(Error::UnknownSuite(s.to_string())),
        }
    }
}

/// Series checks at caps `(order, order, order)`: `F` against the `B_3`
/// table, the cubic satisfied by `G`, and the rational series against
/// `B'_3`. Each check reports the residual as its counterexample.
pub fn gf_checks(order: usize, which: GfCheck) -> Result<Report> {
    if order == 0 {
        return Err(Error::ZeroLayer);
    }
    let caps = (order, order, order);
    let g = solve_g(caps)?;
    let mut checks = Vec::new();
    let bound = format!("caps {caps:?}");
    if matches!(which, GfCheck::F | GfCheck::All) {
        let f = build_f(&g)?;
        let diff = f.sub(&TruncatedSeries::from_fn(caps, |i, j, k| {
            f_oracle(i as i64, j as i64, k as i64)
        }))?;
        let mut c = Check::new(Suite::Gf, "F", bound.clone());
        zero_series(&mut c, Ok(diff));
        checks.push(c.finish());
    }
    if matches!(which, GfCheck::GCubic | GfCheck::All) {
        let mut c = Check::new(Suite::Gf, "G-cubic", bound.clone());
        zero_series(&mut c, cubic_residual(&g));
        checks.push(c.finish());
    }
    if matches!(which, GfCheck::PrimeRational | GfCheck::All) {
        let r = rational_b3prime(caps)?;
        let diff = r.sub(&TruncatedSeries::from_fn(caps, |i, j, k| {
            rational_oracle(i as i64, j as i64, k as i64)
        }))?;
        let mut c = Check::new(Suite::Gf, "prime-rational", bound);
        zero_series(&mut c, Ok(diff));
        checks.push(c.finish());
    }
    Ok(Report {
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}
