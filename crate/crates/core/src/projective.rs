//! Projective unifiers for PM1, PM4 and PM5, and the projectivity check for
//! any logic.
//!
//! A unifier `s` of `phi` is projective when `[]phi -> (p <-> s(p))` is a
//! theorem for every variable `p`; such a unifier is an mgu. Every result
//! here is certified by the decision procedure before it is reported as
//! projective.

use crate::decision::{is_theorem, BudgetExceeded, MemberOptions};
use crate::formula::{simplify, Formula, Substitution};
use crate::logic::Logic;
use crate::unify::{constant_assignments, ground_unifiers_with, GroundUnifier};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// How a unifier was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Supplied by the caller.
    Given,
    /// `(□φ ∧ p) ∨ (◇¬φ ∧ gu(p))`; `canonical` marks the least ground
    /// unifier.
    GroundUnifierSplit { gu: GroundUnifier, canonical: bool },
    /// The S5 shape `□φ → p` / `□φ ∧ p` chosen by a ground unifier.
    S5 { gu: GroundUnifier },
    /// Composition of the splits over all constant assignments, repeated.
    Iterated { rounds: usize },
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Given => write!(f, "given"),
            Construction::GroundUnifierSplit {
                gu,
                canonical: true,
            } => {
                write!(f, "split on canonical ground unifier {gu}")
            }
            Construction::GroundUnifierSplit {
                gu,
                canonical: false,
            } => {
                write!(f, "split on ground unifier {gu}")
            }
            Construction::S5 { gu } => write!(f, "S5 mgu from ground unifier {gu}"),
            Construction::Iterated { rounds } => {
                write!(f, "iterated splits over all valuations, {rounds} round(s)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveResult {
    /// Padded to every variable of the formula.
    pub unifier: Substitution,
    /// Condition 1: the unifier turns the formula into a theorem.
    pub unifies: bool,
    /// Condition 2 per variable: `□φ → (p ↔ σ(p))` is a theorem.
    pub per_variable_checks: Vec<(String, bool)>,
    pub certified: bool,
    pub construction: Construction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveError {
    NotUnifiable,
    /// `var` is `None` when the unifier check itself ran out.
    Budget {
        var: Option<String>,
        cause: BudgetExceeded,
    },
}

impl fmt::Display for ProjectiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveError::NotUnifiable => write!(f, "formula is not unifiable"),
            ProjectiveError::Budget {
                var: Some(v),
                cause,
            } => {
                write!(f, "checking variable {v}: {cause}")
            }
            ProjectiveError::Budget { var: None, cause } => {
                write!(f, "checking the unifier: {cause}")
            }
        }
    }
}

impl core::error::Error for ProjectiveError {}

/// Checks both projectivity conditions for `sigma`.
pub fn projective_check(
    logic: Logic,
    sigma: &Substitution,
    phi: &Formula,
) -> Result<ProjectiveResult, ProjectiveError> {
    projective_check_with(logic, sigma, phi, &MemberOptions::default())
}

pub fn projective_check_with(
    logic: Logic,
    sigma: &Substitution,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<ProjectiveResult, ProjectiveError> {
    check(logic, sigma, phi, opts, Construction::Given)
}

fn check(
    logic: Logic,
    sigma: &Substitution,
    phi: &Formula,
    opts: &MemberOptions,
    construction: Construction,
) -> Result<ProjectiveResult, ProjectiveError> {
    let vars = phi.vars();
    let unifier = sigma.padded(&vars).restricted(&vars);
    let unifies = is_theorem(logic, &unifier.apply(phi), opts)
        .map_err(|cause| ProjectiveError::Budget { var: None, cause })?;
    let boxed = Formula::boxed(phi.clone());
    let mut per_variable_checks = Vec::new();
    for v in &vars {
        let claim = Formula::implies(
            boxed.clone(),
            Formula::iff(Formula::var(v.clone()), unifier.image(v)),
        );
        let ok = is_theorem(logic, &claim, opts).map_err(|cause| ProjectiveError::Budget {
            var: Some(v.clone()),
            cause,
        })?;
        per_variable_checks.push((v.clone(), ok));
    }
    let certified = unifies && per_variable_checks.iter().all(|(_, ok)| *ok);
    Ok(ProjectiveResult {
        unifier,
        unifies,
        per_variable_checks,
        certified,
        construction,
    })
}

/// `p ↦ (□φ ∧ p) ∨ (◇¬φ ∧ v(p))` for every variable of `phi`.
pub fn split_substitution(phi: &Formula, v: &GroundUnifier) -> Substitution {
    let boxed = Formula::boxed(phi.clone());
    let doubt = Formula::diamond(Formula::not(phi.clone()));
    phi.vars()
        .into_iter()
        .map(|p| {
            let value = Formula::constant(v.get(&p).unwrap_or(false));
            let image = Formula::or(
                Formula::and(boxed.clone(), Formula::var(p.clone())),
                Formula::and(doubt.clone(), value),
            );
            (p, image)
        })
        .collect()
}

/// Rounds of the iterated construction tried before giving up.
pub const MAX_ROUNDS: usize = 3;

/// The split on the canonical ground unifier, then the other ground
/// unifiers, then iterated splits. The first certified candidate is
/// returned; if none certifies, the canonical split is returned
/// uncertified.
pub fn split_unifier(
    logic: Logic,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<ProjectiveResult, ProjectiveError> {
    let gus = ground_unifiers_with(logic, phi, opts)
        .map_err(|cause| ProjectiveError::Budget { var: None, cause })?;
    let Some(first) = gus.first() else {
        return Err(ProjectiveError::NotUnifiable);
    };
    let canonical = check(
        logic,
        &split_substitution(phi, first),
        phi,
        opts,
        Construction::GroundUnifierSplit {
            gu: first.clone(),
            canonical: true,
        },
    )?;
    if canonical.certified {
        return Ok(canonical);
    }
    for gu in &gus[1..] {
        let r = check(
            logic,
            &split_substitution(phi, gu),
            phi,
            opts,
            Construction::GroundUnifierSplit {
                gu: gu.clone(),
                canonical: false,
            },
        )?;
        if r.certified {
            return Ok(r);
        }
    }
    let vars: Vec<String> = phi.vars().into_iter().collect();
    let mut sigma = Substitution::identity_on(&vars);
    for rounds in 1..=MAX_ROUNDS {
        for v in constant_assignments(&vars) {
            let theta = split_substitution(phi, &v);
            sigma = sigma
                .then(&theta)
                .iter()
                .map(|(p, f)| (p.clone(), simplify(f)))
                .collect();
        }
        let r = check(logic, &sigma, phi, opts, Construction::Iterated { rounds })?;
        if r.certified {
            return Ok(r);
        }
    }
    Ok(canonical)
}

/// The projective unifier of a PM4-unifiable formula.
pub fn pm4_projective_unifier(phi: &Formula) -> Result<ProjectiveResult, ProjectiveError> {
    split_unifier(Logic::Pm4, phi, &MemberOptions::default())
}

/// A projective candidate for PM1, certified against chains.
pub fn pm1_projective_unifier(phi: &Formula) -> Result<ProjectiveResult, ProjectiveError> {
    split_unifier(Logic::Pm1, phi, &MemberOptions::default())
}

/// The S5 mgu: `x ↦ □φ → x` where the canonical ground unifier sends `x`
/// to true, and `x ↦ □φ ∧ x` where it sends `x` to false.
pub fn pm5_mgu(phi: &Formula) -> Result<ProjectiveResult, ProjectiveError> {
    pm5_mgu_with(phi, &MemberOptions::default())
}

pub fn pm5_mgu_with(
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<ProjectiveResult, ProjectiveError> {
    let gus = ground_unifiers_with(Logic::Pm5, phi, opts)
        .map_err(|cause| ProjectiveError::Budget { var: None, cause })?;
    let gu = gus
        .into_iter()
        .next()
        .ok_or(ProjectiveError::NotUnifiable)?;
    let boxed = Formula::boxed(phi.clone());
    let sigma: Substitution = gu
        .iter()
        .map(|(x, value)| {
            let var = Formula::var(x.clone());
            let image = if value {
                Formula::implies(boxed.clone(), var)
            } else {
                Formula::and(boxed.clone(), var)
            };
            (x.clone(), image)
        })
        .collect();
    check(Logic::Pm5, &sigma, phi, opts, Construction::S5 { gu })
}

/// The mgu construction for a unitary logic.
pub fn projective_unifier(
    logic: Logic,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<ProjectiveResult, ProjectiveError> {
    match logic {
        Logic::Pm5 => pm5_mgu_with(phi, opts),
        _ => split_unifier(logic, phi, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::logic::axioms;
    use crate::unify::{ground_unifiers, more_general, Budget};
    use alloc::string::ToString;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn subst(pairs: &[(&str, &str)]) -> Substitution {
        pairs.iter().map(|(v, f)| (v.to_string(), p(f))).collect()
    }

    #[test]
    fn identity_is_not_a_pm2_unifier() {
        let r = projective_check(Logic::Pm2, &subst(&[("x", "x")]), &p("[]x | []~x")).unwrap();
        assert!(!r.unifies);
        assert_eq!(r.per_variable_checks, [("x".to_string(), true)]);
        assert!(!r.certified);
    }

    #[test]
    fn vacuous_on_top() {
        let r = projective_check(Logic::Pm3, &Substitution::new(), &Formula::Top).unwrap();
        assert!(r.certified && r.per_variable_checks.is_empty());
    }

    #[test]
    fn pm4_examples() {
        let r = pm4_projective_unifier(&p("p")).unwrap();
        assert!(r.certified);
        assert_eq!(r.unifier.image("p"), p("([]p & p) | (<>~p & true)"));
        assert!(pm4_projective_unifier(&p("[]p")).unwrap().certified);
        assert_eq!(
            pm4_projective_unifier(&p("x & ~x")),
            Err(ProjectiveError::NotUnifiable)
        );
    }

    #[test]
    fn canonical_split_can_fail_in_pm4() {
        // Least ground unifier sends p to false, and the split is not a
        // unifier on a Y frame whose cluster refutes p while the top
        // satisfies it. The fallback still certifies.
        let phi = p("<>p -> p");
        let first = ground_unifiers(Logic::Pm4, &phi).unwrap()[0].clone();
        let r = check(
            Logic::Pm4,
            &split_substitution(&phi, &first),
            &phi,
            &MemberOptions::default(),
            Construction::Given,
        )
        .unwrap();
        assert!(!r.certified);
        let fixed = pm4_projective_unifier(&phi).unwrap();
        assert!(fixed.certified);
        assert_ne!(
            fixed.construction,
            Construction::GroundUnifierSplit {
                gu: first,
                canonical: true
            }
        );
    }

    #[test]
    fn pm5_examples() {
        let r = pm5_mgu(&p("x")).unwrap();
        assert_eq!(r.unifier.image("x"), p("[]x -> x"));
        assert!(r.certified);
        let r = pm5_mgu(&p("~x")).unwrap();
        assert_eq!(r.unifier.image("x"), p("[]~x & x"));
        assert!(r.certified);
        assert!(pm5_mgu(&p("x | ~x")).unwrap().certified);
    }

    #[test]
    fn pm1_examples() {
        assert!(pm1_projective_unifier(&p("p")).unwrap().certified);
        assert!(pm1_projective_unifier(&p("[]p | []~p")).unwrap().certified);
        assert_eq!(
            pm1_projective_unifier(&p("x & ~x")),
            Err(ProjectiveError::NotUnifiable)
        );
    }

    #[test]
    fn negative_controls_never_certify() {
        let phi = p("[]x | []~x");
        for gu in ground_unifiers(Logic::Pm2, &phi).unwrap() {
            let sigma = split_substitution(&phi, &gu);
            assert!(
                !projective_check(Logic::Pm2, &sigma, &phi)
                    .unwrap()
                    .certified
            );
        }
        let l = axioms::lemmon("x1", "x2");
        let r = split_unifier(Logic::Pm3, &l, &MemberOptions::default()).unwrap();
        assert!(!r.certified);
    }

    #[test]
    fn certified_unifiers_cover_ground_unifiers() {
        for (logic, src) in [
            (Logic::Pm4, "<>p -> p"),
            (Logic::Pm5, "[]p | []~p"),
            (Logic::Pm1, "[](p -> []q) | [](q -> []p)"),
        ] {
            let phi = p(src);
            let r = projective_unifier(logic, &phi, &MemberOptions::default()).unwrap();
            assert!(r.certified, "{logic} {src}");
            for gu in ground_unifiers(logic, &phi).unwrap() {
                let v = more_general(
                    logic,
                    &r.unifier,
                    &gu.to_substitution(),
                    &phi,
                    &Budget::constants_only(),
                );
                assert!(v.is_more_general(), "{logic} {src} {gu}");
            }
        }
    }
}
