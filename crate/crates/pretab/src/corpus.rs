//! Built-in regression corpus: worked examples plus seeded random suites.
//!
//! Every case is deterministic; the report carries no timings so two runs
//! can be compared byte for byte.

use crate::gen::{FormulaGen, Shape};
use pretab_core::decision::{member_with, MemberOptions, Verdict};
use pretab_core::finitary::{
    all_cluster_defining_formulas, build_char_model, complete_set_with, factor_through,
    unifiability_transfer_check, CharModel, FinitaryCaps,
};
use pretab_core::kripke::{make_frame, truth_set, valid_on_frame, SearchLimits};
use pretab_core::logic::axioms;
use pretab_core::projective::{projective_unifier, split_unifier};
use pretab_core::unify::{first_ground_unifier, ground_unifiers_with, more_general, Budget};
use pretab_core::{parse, Formula, Logic};
use std::fmt::Write as _;
use std::str::FromStr;

/// Formulas with no unifier in any of the five logics.
pub const NON_UNIFIABLE: [&str; 20] = [
    "x & ~x",
    "~x & x & y",
    "[]x & ~x",
    "x & []~x",
    "<>x & []~x",
    "(x -> y) & x & ~y",
    "false",
    "~true",
    "[](x & ~x)",
    "<>(x & ~x)",
    "~(x | ~x)",
    "x <-> ~x",
    "[]x & <>~x",
    "[]x & ~[]x",
    "(x | y) & ~x & ~y",
    "[](x -> y) & x & <>~y",
    "<>[]x & []<>~x",
    "~(x -> x)",
    "(x <-> y) & (x <-> ~y)",
    "[](x | y) & []~x & <>~y",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Theorems,
    Separation,
    Ground,
    Negative,
    Projective,
    Finitary,
    Charmodel,
    Transfer,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Theorems,
        Suite::Separation,
        Suite::Ground,
        Suite::Negative,
        Suite::Projective,
        Suite::Finitary,
        Suite::Charmodel,
        Suite::Transfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Theorems => "theorems",
            Suite::Separation => "separation",
            Suite::Ground => "ground",
            Suite::Negative => "negative",
            Suite::Projective => "projective",
            Suite::Finitary => "finitary",
            Suite::Charmodel => "charmodel",
            Suite::Transfer => "transfer",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!(
                    "unknown suite `{s}`; expected all or one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub suite: Suite,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusReport {
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl CorpusReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }

    /// The fixed-width table printed by the CLI.
    pub fn render(&self) -> String {
        let mut out = format!("corpus seed {}\n", self.seed);
        for c in &self.cases {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:<11} {:<44} {status}  {}",
                c.suite.name(),
                c.case,
                c.detail
            );
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed",
            self.cases.len() - self.failures(),
            self.failures()
        );
        out
    }
}

pub const DEFAULT_SEED: u64 = 2024;

pub fn run(suites: &[Suite], seed: u64) -> CorpusReport {
    let mut cases = Vec::new();
    for &suite in suites {
        let mut push = |case: String, outcome: Result<String, String>| {
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            cases.push(CaseResult {
                suite,
                case,
                passed,
                detail,
            });
        };
        match suite {
            Suite::Axioms => {
                for logic in Logic::ALL {
                    push(
                        format!("{logic} axioms on frames m<=6"),
                        axioms_case(logic, 6),
                    );
                }
            }
            Suite::Theorems => {
                for (logic, src) in THEOREMS {
                    push(format!("{logic} |- {src}"), theorem_case(logic, src));
                }
            }
            Suite::Separation => {
                for (logic, src, size) in SEPARATIONS {
                    push(
                        format!("{logic} |/- {src}"),
                        separation_case(logic, src, size),
                    );
                }
            }
            Suite::Ground => {
                push(
                    "PM2 []x | []~x".into(),
                    ground_example(Logic::Pm2, "[]x | []~x", "{x := false}"),
                );
                push(
                    "PM3 Lemmon".into(),
                    ground_example(
                        Logic::Pm3,
                        &axioms::lemmon("x1", "x2").to_string(),
                        "{x1 := true, x2 := true}",
                    ),
                );
                push("non-unifiable corpus".into(), non_unifiable_case());
            }
            Suite::Negative => {
                push(
                    "PM2 []x | []~x not projective".into(),
                    negative_case(Logic::Pm2, "[]x | []~x"),
                );
                push(
                    "PM3 Lemmon not projective".into(),
                    negative_case(Logic::Pm3, &axioms::lemmon("x1", "x2").to_string()),
                );
            }
            Suite::Projective => {
                for (k, logic) in [Logic::Pm1, Logic::Pm4, Logic::Pm5].into_iter().enumerate() {
                    push(
                        format!("{logic} random unifiable formulas"),
                        projective_suite(logic, seed.wrapping_add(k as u64), 10),
                    );
                }
            }
            Suite::Finitary => {
                push("PM2 []x | []~x".into(), two_incomparable_case());
                push("PM2 x & ~x".into(), empty_case());
                push(
                    "PM3 Lemmon covers ground unifiers".into(),
                    lemmon_cover_case(),
                );
            }
            Suite::Charmodel => {
                for (n, layers) in [(1, 2), (2, 2), (1, 3)] {
                    push(
                        format!("T_{n}^{layers} defining formulas"),
                        defining_case(n, layers),
                    );
                }
                push(
                    "PM2 vs T_2^2".into(),
                    char_cross_case(Logic::Pm2, 2, 2, seed, 10),
                );
                push(
                    "PM3 vs T_1^3".into(),
                    char_cross_case(Logic::Pm3, 1, 3, seed, 10),
                );
            }
            Suite::Transfer => {
                for logic in [Logic::Pm2, Logic::Pm3] {
                    push(
                        format!("{logic} rnf transfer"),
                        transfer_case(logic, seed, 20),
                    );
                }
            }
        }
    }
    CorpusReport { seed, cases }
}

const THEOREMS: [(Logic, &str); 6] = [
    (Logic::Pm4, "[]([]x1 -> x2) | []([]x2 -> x1)"),
    (Logic::Pm1, "[]([]x1 -> x2) | []([]x2 -> x1)"),
    (Logic::Pm1, "[]<>p -> <>[]p"),
    (Logic::Pm4, "[]<>p -> <>[]p"),
    (Logic::Pm3, "[]<>p <-> <>[]p"),
    (Logic::Pm5, "p -> []<>p"),
];

const SEPARATIONS: [(Logic, &str, usize); 3] = [
    (Logic::Pm2, "[]x | []~x", 1),
    (Logic::Pm3, "[]([]x1 -> x2) | []([]x2 -> x1)", 2),
    (Logic::Pm5, "[]([](p -> []p) -> p) -> p", 2),
];

fn formula(src: &str) -> Result<Formula, String> {
    parse(src).map_err(|e| format!("parse error: {e}"))
}

fn axioms_case(logic: Logic, max_m: usize) -> Result<String, String> {
    let axioms = logic.axioms();
    for m in 1..=max_m {
        let frame = make_frame(logic, m).map_err(|e| e.to_string())?;
        for ax in &axioms {
            let v =
                valid_on_frame(&frame, ax, SearchLimits::default()).map_err(|e| e.to_string())?;
            if !v.is_valid() {
                return Err(format!("{ax} fails on m={m}"));
            }
        }
    }
    Ok(format!("{} axioms x {max_m} frames", axioms.len()))
}

fn theorem_case(logic: Logic, src: &str) -> Result<String, String> {
    let v = member_with(logic, &formula(src)?, &MemberOptions::default());
    match v.verdict {
        Verdict::Valid => Ok(format!("valid, frames m<={}", v.checked_up_to)),
        other => Err(format!("{other:?}")),
    }
}

fn separation_case(logic: Logic, src: &str, size: usize) -> Result<String, String> {
    match member_with(logic, &formula(src)?, &MemberOptions::default()).verdict {
        Verdict::Refuted { size: s, witness } if s == size => {
            Ok(format!("refuted on m={s} at world {}", witness.world))
        }
        other => Err(format!("expected refutation on m={size}, got {other:?}")),
    }
}

fn ground_example(logic: Logic, src: &str, expected: &str) -> Result<String, String> {
    let gus = ground_unifiers_with(logic, &formula(src)?, &MemberOptions::default())
        .map_err(|e| e.to_string())?;
    let shown: Vec<String> = gus.iter().map(ToString::to_string).collect();
    if shown.iter().any(|s| s == expected) {
        Ok(format!(
            "{} ground unifier(s): {}",
            gus.len(),
            shown.join("; ")
        ))
    } else {
        Err(format!("{expected} missing from {}", shown.join("; ")))
    }
}

fn non_unifiable_case() -> Result<String, String> {
    for src in NON_UNIFIABLE {
        let phi = formula(src)?;
        for logic in Logic::ALL {
            let gu = first_ground_unifier(logic, &phi, &MemberOptions::default())
                .map_err(|e| e.to_string())?;
            if let Some(gu) = gu {
                return Err(format!("{logic}: {src} unified by {gu}"));
            }
        }
    }
    Ok(format!("{} formulas x 5 logics", NON_UNIFIABLE.len()))
}

fn negative_case(logic: Logic, src: &str) -> Result<String, String> {
    let r = split_unifier(logic, &formula(src)?, &MemberOptions::default())
        .map_err(|e| e.to_string())?;
    if r.certified {
        Err(format!("certified by {}", r.construction))
    } else {
        Ok(format!("no candidate certified (unifies: {})", r.unifies))
    }
}

/// Random unifiable formulas whose constructed unifier certifies and covers
/// every ground unifier.
pub fn projective_suite(logic: Logic, seed: u64, count: usize) -> Result<String, String> {
    let opts = MemberOptions::default();
    let mut gen = FormulaGen::new(
        seed,
        Shape {
            vars: 3,
            max_depth: 2,
            max_ops: 6,
        },
    );
    let corpus = gen.take_where(count, |f| {
        matches!(first_ground_unifier(logic, f, &opts), Ok(Some(_)))
    });
    if corpus.len() < count {
        return Err(format!("only {} unifiable formulas drawn", corpus.len()));
    }
    for phi in &corpus {
        let r = projective_unifier(logic, phi, &opts).map_err(|e| format!("{phi}: {e}"))?;
        if !r.certified {
            return Err(format!("{phi}: not certified ({})", r.construction));
        }
        let gus = ground_unifiers_with(logic, phi, &opts).map_err(|e| e.to_string())?;
        for gu in gus {
            let v = more_general(
                logic,
                &r.unifier,
                &gu.to_substitution(),
                phi,
                &Budget::constants_only(),
            );
            if !v.is_more_general() {
                return Err(format!("{phi}: {gu} does not factor"));
            }
        }
    }
    Ok(format!("{count}/{count} certified, ground unifiers factor"))
}

fn two_incomparable_case() -> Result<String, String> {
    let phi = formula("[]x | []~x")?;
    let cs =
        complete_set_with(&phi, Logic::Pm2, &FinitaryCaps::default()).map_err(|e| e.to_string())?;
    if cs.unifiers.len() < 2 {
        return Err(format!("{} unifier(s)", cs.unifiers.len()));
    }
    let budget = Budget::default();
    for (i, a) in cs.unifiers.iter().enumerate() {
        for (j, b) in cs.unifiers.iter().enumerate() {
            if i != j && more_general(Logic::Pm2, a, b, &phi, &budget).is_more_general() {
                return Err(format!("unifier {i} is more general than {j}"));
            }
        }
    }
    Ok(format!(
        "{} pairwise incomparable unifiers",
        cs.unifiers.len()
    ))
}

fn empty_case() -> Result<String, String> {
    let cs = complete_set_with(&formula("x & ~x")?, Logic::Pm2, &FinitaryCaps::default())
        .map_err(|e| e.to_string())?;
    if cs.unifiers.is_empty() {
        Ok("empty".into())
    } else {
        Err(format!("{} unifier(s)", cs.unifiers.len()))
    }
}

fn lemmon_cover_case() -> Result<String, String> {
    let phi = axioms::lemmon("x1", "x2");
    let cs =
        complete_set_with(&phi, Logic::Pm3, &FinitaryCaps::default()).map_err(|e| e.to_string())?;
    let gus = ground_unifiers_with(Logic::Pm3, &phi, &MemberOptions::default())
        .map_err(|e| e.to_string())?;
    for gu in &gus {
        if factor_through(
            Logic::Pm3,
            &cs.unifiers,
            &gu.to_substitution(),
            &phi,
            &Budget::constants_only(),
        )
        .is_none()
        {
            return Err(format!("{gu} does not factor"));
        }
    }
    Ok(format!(
        "{} unifier(s) cover {} ground unifiers",
        cs.unifiers.len(),
        gus.len()
    ))
}

fn char_model(n: usize, layers: usize) -> Result<CharModel, String> {
    build_char_model(n, layers).map_err(|e| e.to_string())
}

fn defining_case(n: usize, layers: usize) -> Result<String, String> {
    let m = char_model(n, layers)?;
    let model = m.model();
    for (id, f) in all_cluster_defining_formulas(&m).iter().enumerate() {
        let truth: Vec<usize> = truth_set(&model, f).iter().collect();
        if truth != [id] {
            return Err(format!("cluster {id} formula holds at {truth:?}"));
        }
    }
    Ok(format!("{} clusters", m.clusters().len()))
}

/// Membership against validity in the characteristic model, over random
/// formulas in `x1..xn`.
pub fn char_cross_case(
    logic: Logic,
    n: usize,
    layers: usize,
    seed: u64,
    count: usize,
) -> Result<String, String> {
    let m = char_model(n, layers)?;
    let mut gen = FormulaGen::new(
        seed,
        Shape {
            vars: n,
            max_depth: 2,
            max_ops: 7,
        },
    );
    let mut valid = 0;
    for _ in 0..count {
        let phi = gen.next_formula();
        let member = member_with(logic, &phi, &MemberOptions::default())
            .decided()
            .ok_or_else(|| format!("{phi}: budget exceeded"))?;
        let char_valid = m.validates(&phi).map_err(|e| e.to_string())?;
        if member != char_valid {
            return Err(format!(
                "{phi}: member {member}, characteristic model {char_valid}"
            ));
        }
        valid += usize::from(member);
    }
    Ok(format!("{count} formulas agree ({valid} valid)"))
}

pub fn transfer_case(logic: Logic, seed: u64, count: usize) -> Result<String, String> {
    let mut gen = FormulaGen::new(
        seed,
        Shape {
            vars: 2,
            max_depth: 2,
            max_ops: 6,
        },
    );
    for _ in 0..count {
        let phi = gen.next_formula();
        match unifiability_transfer_check(logic, &phi) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{phi}: unifiability differs from its rnf")),
            Err(e) => return Err(format!("{phi}: {e}")),
        }
    }
    Ok(format!("{count} formulas agree"))
}
