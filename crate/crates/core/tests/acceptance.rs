//! Acceptance run: one PASS/FAIL line per criterion. All comparisons are
//! exact subgroup equalities; the only tolerances are the time budgets.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fitkit::corpus::bundled;
use fitkit::suites::{run_suite, SuiteOptions, SuiteReport};

const TOTAL_BUDGET: Duration = Duration::from_secs(600);
const RANDOM_GROUPS: usize = 50;
const ORACLE_MAX_ORDER: u128 = 300;

struct Criterion {
    number: u32,
    title: &'static str,
    suite: &'static str,
    budget: Option<Duration>,
    opts: SuiteOptions,
    extra: fn(&SuiteReport) -> Result<(), String>,
    /// A criterion whose stated law is false. It must fail, and only on
    /// the listed cases.
    known_false: Option<(&'static [&'static str], &'static str)>,
}

fn none(_: &SuiteReport) -> Result<(), String> {
    Ok(())
}

fn opts() -> SuiteOptions {
    SuiteOptions::default()
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            number: 1,
            title: "C_G(F*(G)) = Z(F(G)) on the corpus and 50 random subgroups of Sym(<=8)",
            suite: "theoremB",
            budget: Some(Duration::from_secs(60)),
            opts: SuiteOptions { random: Some((RANDOM_GROUPS, 8)), ..opts() },
            extra: |r| {
                let want = bundled().len() + RANDOM_GROUPS;
                (r.cases.len() == want).then_some(()).ok_or(format!("{} cases, expected {want}", r.cases.len()))
            },
            known_false: None,
        },
        Criterion {
            number: 2,
            title: "F, E, F* agree with the brute-force oracle for |G| <= 300",
            suite: "oracleFstar",
            budget: Some(Duration::from_secs(120)),
            opts: SuiteOptions { max_order: Some(ORACLE_MAX_ORDER), ..opts() },
            extra: |r| {
                let want = 3 * bundled().iter().filter(|e| e.group.order() <= ORACLE_MAX_ORDER).count();
                (r.cases.len() == want).then_some(()).ok_or(format!("{} cases, expected {want}", r.cases.len()))
            },
            known_false: None,
        },
        Criterion {
            number: 3,
            title: "components commute with each other and with F(G)",
            suite: "centralProduct",
            budget: None,
            opts: opts(),
            extra: none,
            known_false: None,
        },
        Criterion {
            number: 4,
            title: "minimal normal subgroups are abelian or inside E(G)",
            suite: "minimalNormal",
            budget: None,
            opts: opts(),
            extra: none,
            known_false: None,
        },
        Criterion {
            number: 5,
            title: "M is an F*-group iff M <= F*(G); E(M) = E(G) meet M; F(M) = F(G) meet M",
            suite: "prop34",
            budget: None,
            opts: opts(),
            extra: none,
            known_false: Some((
                &["sl2_5: M1 (order 2) E(M) = E(G) meet M"],
                "E(Z(SL(2,5))) = 1 but E(G) meet Z = Z; the correct law E(M) = join of the components inside M passes everywhere",
            )),
        },
        Criterion {
            number: 6,
            title: "Sylow orders, conjugacy of seeded Sylow and Hall subgroups, Hall existence for soluble groups",
            suite: "sylowHall",
            budget: None,
            opts: opts(),
            extra: none,
            known_false: None,
        },
        Criterion {
            number: 7,
            title: "lower r-series restrict to Sylow/Hall subgroups when the hypothesis holds",
            suite: "tate",
            budget: None,
            opts: opts(),
            extra: none,
            known_false: None,
        },
        Criterion {
            number: 8,
            title: "stable lower p-series term is a normal p'-Hall subgroup when S meet N <= Phi(S)",
            suite: "cor213",
            budget: None,
            opts: opts(),
            extra: none,
            known_false: None,
        },
        Criterion {
            number: 9,
            title: "degenerate towers (2,3,2,3) and (2,3,5): Fitting subgroups, certificates, Sylow structure",
            suite: "towerDegeneracy",
            budget: Some(Duration::from_secs(180)),
            opts: opts(),
            extra: none,
            known_false: None,
        },
        Criterion {
            number: 10,
            title: "primitive-quotient witnesses for G_1 and G_2; none for V4 in the constant Sym(4) tower",
            suite: "theoremD",
            budget: None,
            opts: opts(),
            extra: |r| {
                let want = 1 + 17 + 3;
                (r.cases.len() == want).then_some(()).ok_or(format!("{} cases, expected {want}", r.cases.len()))
            },
            known_false: None,
        },
        Criterion {
            number: 11,
            title: "supernatural arithmetic laws (1000 cases) and |G| = |G:H||H| on 20 pairs",
            suite: "supernatural",
            budget: None,
            opts: opts(),
            extra: |r| {
                let pairs = r.cases.iter().filter(|c| c.case.contains("|G| = |G:H|.|H|")).count();
                (pairs == 20).then_some(()).ok_or(format!("{pairs} index pairs, expected 20"))
            },
            known_false: None,
        },
    ];

    let start = Instant::now();
    let mut unexpected = 0;
    for c in &criteria {
        let t = Instant::now();
        let report = run_suite(c.suite, &c.opts).expect("registered suite");
        let elapsed = t.elapsed();
        let mut problems: Vec<String> = report.failures().map(|f| format!("{} [{}]", f.case, f.detail)).collect();
        if let Err(e) = (c.extra)(&report) {
            problems.push(e);
        }
        if let Some(b) = c.budget.filter(|b| elapsed > *b) {
            problems.push(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), b.as_secs()));
        }
        let summary = format!("{} cases, {:.1} s", report.cases.len(), elapsed.as_secs_f64());
        match (problems.is_empty(), c.known_false) {
            (true, None) => println!("PASS  {:>2}. {}  ({summary})", c.number, c.title),
            (false, Some((expected, reason))) => {
                let failing: Vec<&str> = report.failures().map(|f| f.case.as_str()).collect();
                let as_documented = failing == expected && problems.len() == expected.len();
                println!("FAIL  {:>2}. {}  ({summary})", c.number, c.title);
                println!("        stated law is false: {reason}");
                for p in &problems {
                    println!("        {p}");
                }
                if !as_documented {
                    println!("        unexpected failures beyond the documented counterexample");
                    unexpected += 1;
                }
            }
            (true, Some(_)) => {
                println!("PASS  {:>2}. {}  ({summary}) -- documented counterexample no longer fails", c.number, c.title);
                unexpected += 1;
            }
            (false, None) => {
                println!("FAIL  {:>2}. {}  ({summary})", c.number, c.title);
                for p in &problems {
                    println!("        {p}");
                }
                unexpected += 1;
            }
        }
    }
    let total = start.elapsed();
    if total > TOTAL_BUDGET {
        println!("FAIL  total time {:.1} s exceeds {} s", total.as_secs_f64(), TOTAL_BUDGET.as_secs());
        unexpected += 1;
    } else {
        println!("total {:.1} s (budget {} s)", total.as_secs_f64(), TOTAL_BUDGET.as_secs());
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
