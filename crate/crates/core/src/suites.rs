//! Named verification suites over the corpus. Each suite checks one
//! structural law exactly and reports a verdict per case.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::corpus::{bundled, random_subgroups, CorpusEntry};
use crate::error::{Error, Result};
use crate::fitting::{
    brute_force_oracle, fitting_subgroup, fstar, fstar_centralizer_check, generalized_fitting, is_fstar_group, layer,
    lower_r_series, lower_r_series_by_definition, p_residual_hall_check, restricted_series_check,
};
use crate::group::FiniteGroup;
use crate::hom::{quotient_or_self, CosetSpace};
use crate::lattice::{conjugating_element, hall_subgroup, hall_subgroup_seeded, minimal_normal_subgroups, normal_subgroups};
use crate::primes::{p_part, prime_factors};
use crate::report::{SubgroupSummary, SCHEMA};
use crate::supernatural::{Exponent, SupernaturalNumber};
use crate::sylow::{sylow_subgroup, sylow_subgroup_seeded};
use crate::tower::{build_degenerate_tower, Tower, TowerElement};

pub const SUITES: [&str; 11] = [
    "theoremB",
    "oracleFstar",
    "centralProduct",
    "prop34",
    "minimalNormal",
    "sylowHall",
    "tate",
    "cor213",
    "supernatural",
    "towerDegeneracy",
    "theoremD",
];

/// Random corpus entries are redrawn above this order.
pub const RANDOM_ORDER_LIMIT: u128 = 2000;
/// The quotient-side checks of the normal-subgroup suite run over all
/// pairs `(M, N)` only when the lattice is at most this large.
const QUOTIENT_CHECK_LATTICE: usize = 64;
const SUPERNATURAL_CASES: usize = 1000;
const INDEX_PAIRS: usize = 20;

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub max_order: Option<u128>,
    pub seed: u64,
    /// `(count, max_degree)` of extra random subgroups of `Sym(max_degree)`.
    pub random: Option<(usize, usize)>,
    pub caps: Caps,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_order: None, seed: 1, random: None, caps: Caps::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    CapExceeded,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseVerdict {
    pub case: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// The two subgroups whose comparison failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compared: Option<[SubgroupSummary; 2]>,
}

impl CaseVerdict {
    fn check(case: impl Into<String>, ok: bool, detail: impl Into<String>) -> CaseVerdict {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        CaseVerdict { case: case.into(), outcome, detail: detail.into(), compared: None }
    }

    /// Passes iff `a = b`; on failure both subgroups are reported.
    fn equal(case: impl Into<String>, a: &FiniteGroup, b: &FiniteGroup) -> CaseVerdict {
        CaseVerdict::contained(case, a, b, a == b)
    }

    fn contained(case: impl Into<String>, a: &FiniteGroup, b: &FiniteGroup, ok: bool) -> CaseVerdict {
        let compared = (!ok).then(|| [SubgroupSummary::of(a), SubgroupSummary::of(b)]);
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        CaseVerdict { case: case.into(), outcome, detail: String::new(), compared }
    }

    fn error(case: impl Into<String>, e: &Error) -> CaseVerdict {
        let outcome = if matches!(e, Error::CapExceeded { .. }) { Outcome::CapExceeded } else { Outcome::Error };
        CaseVerdict { case: case.into(), outcome, detail: e.to_string(), compared: None }
    }

    fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseVerdict>,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, cases: Vec<CaseVerdict>, wall_clock: Duration) -> SuiteReport {
        let count = |o: &[Outcome]| cases.iter().filter(|c| o.contains(&c.outcome)).count();
        SuiteReport {
            schema: SCHEMA,
            suite: suite.to_string(),
            seed,
            passed: count(&[Outcome::Pass]),
            failed: count(&[Outcome::Fail]),
            errors: count(&[Outcome::CapExceeded, Outcome::Error]),
            cases,
            wall_clock,
        }
    }

    pub fn all_passed(&self) -> bool {
        !self.cases.is_empty() && self.passed == self.cases.len()
    }

    pub fn hit_cap(&self) -> bool {
        self.cases.iter().any(|c| c.outcome == Outcome::CapExceeded)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseVerdict> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite reports serialize")
    }

    /// One line per case; wall-clock time only when `timing` is set so that
    /// the default output is byte-identical across runs.
    pub fn to_text(&self, timing: bool) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::CapExceeded => "CAP ",
                Outcome::Error => "ERR ",
            };
            let _ = write!(out, "{tag}  {}", c.case);
            if !c.detail.is_empty() {
                let _ = write!(out, "  [{}]", c.detail);
            }
            out.push('\n');
            if let Some([a, b]) = &c.compared {
                let _ = writeln!(out, "      left:  {a}\n      right: {b}");
            }
        }
        let _ = write!(
            out,
            "{}: {} cases, {} passed, {} failed, {} errors (seed {})",
            self.suite,
            self.cases.len(),
            self.passed,
            self.failed,
            self.errors,
            self.seed
        );
        if timing {
            let _ = write!(out, ", {:.2} s", self.wall_clock.as_secs_f64());
        }
        out.push('\n');
        out
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = match name {
        "theoremB" => centralizer_suite(opts),
        "oracleFstar" => oracle_suite(opts),
        "centralProduct" => central_product_suite(opts),
        "prop34" => normal_subgroup_suite(opts),
        "minimalNormal" => minimal_normal_suite(opts),
        "sylowHall" => sylow_hall_suite(opts),
        "tate" => restricted_series_suite(opts),
        "cor213" => p_residual_suite(opts),
        "supernatural" => supernatural_suite(opts),
        "towerDegeneracy" => tower_degeneracy_suite(opts),
        "theoremD" => witness_suite(opts),
        _ => {
            return Err(Error::InvalidInput(format!("unknown suite {name:?}; known suites: {}", SUITES.join(", "))));
        }
    };
    Ok(SuiteReport::new(name, opts.seed, cases, start.elapsed()))
}

/// Bundled groups up to the order bound, then any random extras.
fn groups(opts: &SuiteOptions, default_max: Option<u128>, default_random: Option<(usize, usize)>) -> Vec<CorpusEntry> {
    let max = opts.max_order.or(default_max).unwrap_or(u128::MAX);
    let mut out: Vec<CorpusEntry> = bundled().iter().filter(|e| e.group.order() <= max).cloned().collect();
    if let Some((count, degree)) = opts.random.or(default_random) {
        let limit = max.min(RANDOM_ORDER_LIMIT);
        out.extend(random_subgroups(count, degree, opts.seed, limit));
    }
    out
}

/// Runs `f` on every entry, sharded across threads when the `parallel`
/// feature is on; results keep corpus order.
fn per_group<F>(entries: &[CorpusEntry], f: F) -> Vec<CaseVerdict>
where
    F: Fn(&CorpusEntry) -> Result<Vec<CaseVerdict>> + Sync + Send,
{
    let run = |e: &CorpusEntry| f(e).unwrap_or_else(|err| vec![CaseVerdict::error(e.name.clone(), &err)]);
    #[cfg(feature = "parallel")]
    let nested: Vec<Vec<CaseVerdict>> = {
        use rayon::prelude::*;
        entries.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let nested: Vec<Vec<CaseVerdict>> = entries.iter().map(run).collect();
    nested.into_iter().flatten().collect()
}

fn primes_of(g: &FiniteGroup) -> Vec<u64> {
    prime_factors(g.order()).into_iter().map(|(p, _)| p).collect()
}

/// All nonempty subsets of `primes`, smallest first.
fn prime_subsets(primes: &[u64]) -> Vec<Vec<u64>> {
    let mut subsets: Vec<Vec<u64>> = (1..1u32 << primes.len())
        .map(|mask| primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    subsets
}

fn pi_part(n: u128, pi: &[u64]) -> u128 {
    pi.iter().map(|&p| p_part(n, p)).product()
}

fn centralizer_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    per_group(&groups(opts, None, Some((50, 8))), |e| {
        let c = fstar_centralizer_check(&e.group, &opts.caps)?;
        Ok(vec![CaseVerdict::equal(format!("{}: C_G(F*) = Z(F)", e.name), &c.lhs, &c.rhs)])
    })
}

fn oracle_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let max = opts.max_order.unwrap_or(opts.caps.oracle).min(opts.caps.oracle);
    let entries = groups(&SuiteOptions { max_order: Some(max), ..opts.clone() }, None, None);
    per_group(&entries, |e| {
        let r = generalized_fitting(&e.group, &opts.caps)?;
        let o = brute_force_oracle(&e.group, &opts.caps)?;
        Ok(vec![
            CaseVerdict::equal(format!("{}: F against subnormal nilpotent join", e.name), &r.fitting, &o.fitting),
            CaseVerdict::equal(format!("{}: E against subnormal quasisimple join", e.name), &r.layer, &o.layer),
            CaseVerdict::equal(format!("{}: F* against oracle", e.name), &r.fstar, &o.fstar),
        ])
    })
}

fn central_product_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    per_group(&groups(opts, None, None), |e| {
        let r = generalized_fitting(&e.group, &opts.caps)?;
        let mut cases = Vec::new();
        for (a, qa) in r.components.iter().enumerate() {
            for (b, qb) in r.components.iter().enumerate().skip(a + 1) {
                let c = FiniteGroup::commutator_subgroup(qa, qb);
                cases.push(CaseVerdict::contained(
                    format!("{}: [Q{}, Q{}] = 1", e.name, a + 1, b + 1),
                    qa,
                    qb,
                    c.is_trivial(),
                ));
            }
            let c = FiniteGroup::commutator_subgroup(qa, &r.fitting);
            cases.push(CaseVerdict::contained(format!("{}: [Q{}, F] = 1", e.name, a + 1), qa, &r.fitting, c.is_trivial()));
        }
        if cases.is_empty() {
            cases.push(CaseVerdict::check(format!("{}: no components", e.name), r.layer.is_trivial(), ""));
        }
        Ok(cases)
    })
}

fn minimal_normal_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let entries: Vec<CorpusEntry> = groups(opts, None, None).into_iter().filter(|e| !e.group.is_trivial()).collect();
    per_group(&entries, |e| {
        let g = &e.group;
        let e_g = layer(g, &opts.caps)?;
        let mut cases = Vec::new();
        for (i, n) in minimal_normal_subgroups(g, &opts.caps)?.iter().enumerate() {
            let name = format!("{}: minimal normal #{} (order {})", e.name, i + 1, n.order());
            let abelian = n.is_abelian();
            cases.push(CaseVerdict::contained(
                format!("{name} abelian or in E(G)"),
                n,
                &e_g,
                abelian || n.is_subgroup_of(&e_g),
            ));
            // Characteristically simple: elementary abelian, or generated by
            // the G-conjugates of one of its own minimal normal subgroups.
            let char_simple = if abelian {
                prime_factors(n.exponent() as u128).len() == 1 && primes_of(n).len() == 1
            } else {
                let m = &minimal_normal_subgroups(n, &opts.caps)?[0];
                g.normal_closure(m.generators())? == *n
            };
            cases.push(CaseVerdict::check(format!("{name} characteristically simple"), char_simple, ""));
        }
        Ok(cases)
    })
}

fn normal_subgroup_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    per_group(&groups(opts, None, None), |e| {
        let g = &e.group;
        let caps = &opts.caps;
        let lattice = normal_subgroups(g, caps)?;
        let r = generalized_fitting(g, caps)?;
        let mut cases = Vec::new();
        let mut fstar_flags = Vec::new();
        for (i, m) in lattice.members.iter().enumerate() {
            let name = format!("{}: M{} (order {})", e.name, i, m.order());
            let is_fstar = is_fstar_group(m, caps)?;
            fstar_flags.push(is_fstar);
            cases.push(CaseVerdict::contained(
                format!("{name} is an F*-group iff M <= F*(G)"),
                m,
                &r.fstar,
                is_fstar == m.is_subgroup_of(&r.fstar),
            ));
            let e_m = layer(m, caps)?;
            // Literal form of the law; it fails when M meets E(G) in a
            // central subgroup that lies in no component (Z(SL(2,5))).
            cases.push(CaseVerdict::equal(format!("{name} E(M) = E(G) meet M"), &e_m, &r.layer.intersection(m)));
            let inside = FiniteGroup::join_all(g.degree(), r.components.iter().filter(|q| q.is_subgroup_of(m)));
            cases.push(CaseVerdict::equal(format!("{name} E(M) = join of components of G inside M"), &e_m, &inside));
            cases.push(CaseVerdict::equal(
                format!("{name} F(M) = F(G) meet M"),
                &fitting_subgroup(m)?,
                &r.fitting.intersection(m),
            ));
        }
        if lattice.members.len() <= QUOTIENT_CHECK_LATTICE {
            let mut in_every_quotient = vec![true; lattice.members.len()];
            let mut fstar_in_every_quotient = vec![true; lattice.members.len()];
            let mut fitting_maps_in = true;
            for n in &lattice.members {
                let (q, pi) = quotient_or_self(g, n)?;
                let fq = fstar(&q, caps)?;
                fitting_maps_in &= pi.image_of(&r.fitting)?.is_subgroup_of(&fitting_subgroup(&q)?);
                for (k, m) in lattice.members.iter().enumerate() {
                    let image = pi.image_of(m)?;
                    in_every_quotient[k] &= image.is_subgroup_of(&fq);
                    fstar_in_every_quotient[k] &= is_fstar_group(&image, caps)?;
                }
            }
            let agree = (0..lattice.members.len())
                .all(|k| fstar_flags[k] == in_every_quotient[k] && fstar_flags[k] == fstar_in_every_quotient[k]);
            cases.push(CaseVerdict::check(
                format!("{}: F*-group iff MN/N <= F*(G/N) iff MN/N is an F*-group, all N", e.name),
                agree,
                format!("{} normal subgroups", lattice.members.len()),
            ));
            cases.push(CaseVerdict::check(format!("{}: image of F(G) lies in F(G/N), all N", e.name), fitting_maps_in, ""));
        }
        Ok(cases)
    })
}

fn sylow_hall_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let entries: Vec<CorpusEntry> = groups(opts, None, None).into_iter().filter(|e| !e.group.is_trivial()).collect();
    per_group(&entries, |e| {
        let g = &e.group;
        let mut cases = Vec::new();
        let primes = primes_of(g);
        for &p in &primes {
            let s = sylow_subgroup(g, p)?;
            let a = sylow_subgroup_seeded(g, p, opts.seed)?;
            let b = sylow_subgroup_seeded(g, p, opts.seed.wrapping_add(1))?;
            let orders_ok = [&s, &a, &b].iter().all(|x| x.order() == p_part(g.order(), p) && x.is_subgroup_of(g));
            cases.push(CaseVerdict::check(format!("{}: Sylow {p} has order {}", e.name, p_part(g.order(), p)), orders_ok, ""));
            cases.push(CaseVerdict::contained(
                format!("{}: seeded Sylow {p}-subgroups are conjugate", e.name),
                &a,
                &b,
                conjugating_element(g, &a, &b).is_some(),
            ));
        }
        if g.is_soluble() {
            for pi in prime_subsets(&primes) {
                let name = format!("{}: Hall {pi:?}", e.name);
                let first = hall_subgroup(g, &pi, &opts.caps)?;
                let second = hall_subgroup_seeded(g, &pi, &opts.caps, opts.seed)?;
                match (first, second) {
                    (Some(h), Some(k)) => {
                        let ok = h.order() == pi_part(g.order(), &pi) && k.order() == h.order();
                        cases.push(CaseVerdict::check(format!("{name} exists with order {}", pi_part(g.order(), &pi)), ok, ""));
                        cases.push(CaseVerdict::contained(
                            format!("{name} seeded copies are conjugate"),
                            &h,
                            &k,
                            conjugating_element(g, &h, &k).is_some(),
                        ));
                    }
                    _ => cases.push(CaseVerdict::check(format!("{name} exists"), false, "no Hall subgroup found")),
                }
            }
        }
        Ok(cases)
    })
}

/// `(name, G, H, r)` with `H` a proper Sylow or Hall subgroup and `r` the
/// product of its primes.
fn sylow_hall_pairs(e: &CorpusEntry, caps: &Caps) -> Result<Vec<(String, FiniteGroup, u64)>> {
    let g = &e.group;
    let primes = primes_of(g);
    let mut out = Vec::new();
    for pi in prime_subsets(&primes) {
        if pi.len() == primes.len() {
            continue;
        }
        let h = if pi.len() == 1 {
            Some(sylow_subgroup(g, pi[0])?)
        } else if g.is_soluble() {
            hall_subgroup(g, &pi, caps)?
        } else {
            None
        };
        if let Some(h) = h {
            out.push((format!("{pi:?}"), h, pi.iter().product()));
        }
    }
    Ok(out)
}

fn restricted_series_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let entries = groups(opts, None, None);
    let mut cases = per_group(&entries, |e| {
        let g = &e.group;
        let mut cases = Vec::new();
        for &p in &primes_of(g) {
            let fast = lower_r_series(g, p)?;
            let slow = lower_r_series_by_definition(g, p)?;
            let bound = 2 + (g.order() as f64).log2().floor() as usize;
            cases.push(CaseVerdict::check(
                format!("{}: lower {p}-series shortcut agrees with definition", e.name),
                fast.terms == slow.terms && fast.stable == slow.stable && fast.terms.len() <= bound,
                format!("{} terms", fast.terms.len()),
            ));
        }
        for (label, h, r) in sylow_hall_pairs(e, &opts.caps)? {
            let check = restricted_series_check(g, &h, r)?;
            if check.hypothesis_holds {
                cases.push(CaseVerdict::check(
                    format!("{}: H = {label}-Hall, r = {r}: hypothesis holds, series restrict to H", e.name),
                    check.conclusion_holds,
                    "",
                ));
            }
        }
        Ok(cases)
    });
    let applied: Vec<&CaseVerdict> = cases.iter().filter(|c| c.case.contains("hypothesis holds")).collect();
    let has_s3 = applied.iter().any(|c| c.case.starts_with("s3: H = [2]-Hall, r = 2"));
    let count = applied.len();
    cases.push(CaseVerdict::check("at least 10 pairs satisfy the hypothesis", count >= 10, format!("{count} pairs")));
    cases.push(CaseVerdict::check("pair (Sym(3), C2, 2) satisfies the hypothesis", has_s3, ""));
    cases
}

fn p_residual_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let entries: Vec<CorpusEntry> = groups(opts, None, None).into_iter().filter(|e| !e.group.is_trivial()).collect();
    let mut cases = per_group(&entries, |e| {
        let g = &e.group;
        let mut cases = Vec::new();
        let lattice = normal_subgroups(g, &opts.caps)?;
        for &p in &primes_of(g) {
            for (i, n) in lattice.members.iter().enumerate() {
                let check = p_residual_hall_check(g, n, p)?;
                if check.hypothesis_holds {
                    cases.push(CaseVerdict::check(
                        format!("{}: N = M{i} (order {}), p = {p}: hypothesis holds, stable term is a normal p'-Hall", e.name, n.order()),
                        check.conclusion_holds,
                        "",
                    ));
                }
            }
        }
        Ok(cases)
    });
    let has_s3 = cases.iter().any(|c| c.case.starts_with("s3: N = M1 (order 3), p = 2"));
    cases.push(CaseVerdict::check("instance (Sym(3), Alt(3), 2) satisfies the hypothesis", has_s3, ""));
    cases
}

fn random_supernatural(rng: &mut ChaCha8Rng) -> SupernaturalNumber {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    (0..rng.gen_range(0..5)).fold(SupernaturalNumber::one(), |acc, _| {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let e = if rng.gen_bool(0.2) { Exponent::Infinite } else { Exponent::Finite(rng.gen_range(0..6)) };
        acc.multiply(&SupernaturalNumber::prime_power(p, e).expect("listed values are prime"))
    })
}

fn supernatural_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = [0usize; 5];
    for _ in 0..SUPERNATURAL_CASES {
        let (a, b, c) = (random_supernatural(&mut rng), random_supernatural(&mut rng), random_supernatural(&mut rng));
        let finite = SupernaturalNumber::from_natural(rng.gen_range(1..100_000)).expect("positive");
        let checks = [
            a.multiply(&b).multiply(&c) == a.multiply(&b.multiply(&c)),
            a.multiply(&b) == b.multiply(&a),
            a.multiply(&SupernaturalNumber::one()) == a,
            a.lcm(&a) == a && a.lcm(&b) == b.lcm(&a) && a.lcm(&b).lcm(&c) == a.lcm(&b.lcm(&c)),
            a.multiply(&finite).divide_exact(&finite).ok().as_ref() == Some(&a),
        ];
        for (f, ok) in failures.iter_mut().zip(checks) {
            *f += usize::from(!ok);
        }
    }
    let laws = ["multiplication associative", "multiplication commutative", "1 is the identity", "lcm idempotent, commutative, associative", "exact division round-trips"];
    let mut cases: Vec<CaseVerdict> = laws
        .iter()
        .zip(failures)
        .map(|(law, f)| CaseVerdict::check(format!("{law} ({SUPERNATURAL_CASES} random cases)"), f == 0, format!("{f} failures")))
        .collect();

    let mut pairs = Vec::new();
    'outer: for e in bundled().iter().filter(|e| !e.group.is_trivial()) {
        let g = &e.group;
        let mut subs: Vec<(String, FiniteGroup)> = vec![("G'".into(), g.derived_subgroup()), ("Z(G)".into(), g.center())];
        for &p in &primes_of(g) {
            if let Ok(s) = sylow_subgroup(g, p) {
                subs.push((format!("Sylow {p}"), s));
            }
        }
        for (label, h) in subs {
            if h.order() < g.order() {
                pairs.push((e.name.clone(), label, g.clone(), h));
                if pairs.len() == INDEX_PAIRS {
                    break 'outer;
                }
            }
        }
    }
    for (name, label, g, h) in pairs {
        let index = CosetSpace::new(&g, &h).len() as u128;
        let sn = |n: u128| SupernaturalNumber::from_natural(n).expect("positive");
        cases.push(CaseVerdict::check(
            format!("{name}: |G| = |G:H|.|H| for H = {label}"),
            sn(g.order()) == sn(index).multiply(&sn(h.order())),
            format!("{} = {index} * {}", sn(g.order()), h.order()),
        ));
    }
    cases
}

fn tower_degeneracy_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let caps = &opts.caps;
    let mut cases = Vec::new();
    let attempt = |cases: &mut Vec<CaseVerdict>, name: &str, f: &dyn Fn(&mut Vec<CaseVerdict>) -> Result<()>| {
        if let Err(e) = f(cases) {
            cases.push(CaseVerdict::error(name, &e));
        }
    };
    attempt(&mut cases, "tower (2,3,2,3)", &|cases| {
        let primes = [2, 3, 2, 3];
        let t = build_degenerate_tower(&primes, 4, caps)?;
        for (i, &p) in primes.iter().enumerate() {
            let g = t.level(i + 1)?;
            let f = fitting_subgroup(g)?;
            cases.push(CaseVerdict::check(
                format!("(2,3,2,3) level {}: F(G) is a nontrivial {p}-group", i + 1),
                !f.is_trivial() && f.is_p_group(p),
                format!("|G| = {}, |F(G)| = {}", g.order(), f.order()),
            ));
        }
        let cert = t.fd_certificate(4, caps)?;
        for l in &cert.per_level {
            cases.push(CaseVerdict::contained(
                format!("(2,3,2,3) depth 4: stable F* image at level {} is trivial", l.level),
                &l.stable_image,
                &t.level(l.level)?.trivial_subgroup(),
                l.trivial,
            ));
        }
        cases.push(CaseVerdict::check("(2,3,2,3): projections carry F and F* into F and F*", t.functoriality_holds(caps)?, ""));
        let back = Tower::from_json(&t.to_json())?;
        cases.push(CaseVerdict::check("(2,3,2,3): tower file round-trips", back.to_json() == t.to_json(), ""));
        Ok(())
    });
    attempt(&mut cases, "tower (2,3,5)", &|cases| {
        let t = build_degenerate_tower(&[2, 3, 5], 3, caps)?;
        for (i, g) in t.levels().iter().enumerate() {
            for &p in &primes_of(g) {
                let s = sylow_subgroup(g, p)?;
                cases.push(CaseVerdict::check(
                    format!("(2,3,5) level {}: Sylow {p}-subgroup is elementary abelian", i + 1),
                    s.is_abelian() && s.exponent() == p,
                    format!("order {}", s.order()),
                ));
            }
        }
        cases.push(CaseVerdict::check("(2,3,5) depth 3: certificate valid", t.fd_certificate(3, caps)?.valid, ""));
        Ok(())
    });
    cases
}

fn witness_suite(opts: &SuiteOptions) -> Vec<CaseVerdict> {
    let caps = &opts.caps;
    let mut cases = Vec::new();
    match build_degenerate_tower(&[2, 3, 2, 3], 4, caps) {
        Ok(t) => {
            for level in 1..=2 {
                let elements: Vec<_> = t.levels()[level - 1].sorted_elements().into_iter().filter(|x| !x.is_identity()).collect();
                #[cfg(feature = "parallel")]
                let found: Vec<CaseVerdict> = {
                    use rayon::prelude::*;
                    elements.par_iter().map(|x| witness_case(&t, level, x, caps)).collect()
                };
                #[cfg(not(feature = "parallel"))]
                let found: Vec<CaseVerdict> = elements.iter().map(|x| witness_case(&t, level, x, caps)).collect();
                cases.extend(found);
            }
        }
        Err(e) => cases.push(CaseVerdict::error("tower (2,3,2,3)", &e)),
    }
    let s4 = FiniteGroup::symmetric(4);
    let outcome = Tower::constant(&s4, 3).and_then(|t| {
        let v4 = fstar(&s4, caps)?;
        v4.sorted_elements()
            .into_iter()
            .filter(|x| !x.is_identity())
            .map(|x| {
                let name = format!("constant Sym(4) tower: {x} in V4 has no witness at depth 3");
                let w = t.primitive_witness(&TowerElement { level: 1, element: x }, 3, caps)?;
                Ok(CaseVerdict::check(name, w.is_none(), w.map_or(String::new(), |w| format!("witness at level {}", w.level))))
            })
            .collect::<Result<Vec<_>>>()
    });
    match outcome {
        Ok(c) => cases.extend(c),
        Err(e) => cases.push(CaseVerdict::error("constant Sym(4) tower", &e)),
    }
    cases
}

fn witness_case(t: &Tower, level: usize, x: &crate::perm::Perm, caps: &Caps) -> CaseVerdict {
    let name = format!("(2,3,2,3) level {level}: {x} has a primitive-quotient witness by depth 4");
    let element = TowerElement { level, element: x.clone() };
    match t.primitive_witness(&element, 4, caps) {
        Ok(Some(w)) => CaseVerdict::check(name, true, format!("level {}, |G/K| = {}", w.level, w.quotient_order)),
        Ok(None) => CaseVerdict::check(name, false, "no witness"),
        Err(e) => CaseVerdict::error(name, &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nosuch", &SuiteOptions::default()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn small_suites_pass() {
        let opts = SuiteOptions { max_order: Some(60), ..SuiteOptions::default() };
        for name in ["theoremB", "centralProduct", "minimalNormal", "supernatural"] {
            let r = run_suite(name, &opts).unwrap();
            assert!(r.all_passed(), "{}", r.to_text(false));
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = SuiteOptions { max_order: Some(24), random: Some((5, 6)), seed: 9, ..SuiteOptions::default() };
        let a = run_suite("theoremB", &opts).unwrap();
        let b = run_suite("theoremB", &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(false), b.to_text(false));
        assert!(!a.to_json().contains("wall"));
    }
}
