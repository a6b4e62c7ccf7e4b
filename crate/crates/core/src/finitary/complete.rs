//! Candidate unifiers from disjunct models, and complete sets.
//!
//! For an admissible model `M` let `G` be `gamma(M)` with fresh variables
//! replaced by their subformulas. `G` implies the formula, so a unifier
//! that is also projective for `G` (`[]G -> (x <-> s(x))` a theorem) unifies
//! the formula, and every unifier making `G` a theorem factors through it.

use super::models::{gamma, maximal_disjunct_models, DisjunctModel, ModelLimits};
use super::rnf::{to_rnf_with, DEFAULT_MAX_DISJUNCTS};
use super::{finitary_logic, FinitaryError};
use crate::decision::{member_with, Fingerprinter, MemberOptions, Verdict, DEFAULT_MAX_BITS};
use crate::formula::{simplify, Formula, Substitution};
use crate::kripke::CounterModel;
use crate::logic::Logic;
use crate::projective::{split_unifier, Construction};
use crate::unify::{
    enumerate_classes, first_ground_unifier, minimize_set, more_general, Budget, Class,
};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateConstruction {
    /// `x ↦ G ∧ ⋁{φ_j : x ∈ Θ1(φ_j)}`.
    Literal,
    /// A projective unifier of `G`.
    Projective(Construction),
}

impl fmt::Display for CandidateConstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateConstruction::Literal => write!(f, "literal valuation"),
            CandidateConstruction::Projective(c) => write!(f, "projective for gamma: {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// No candidate unified the formula; the witness refutes the last one.
    NotAUnifier(Option<CounterModel>),
    /// `G` has no ground unifier.
    GammaNotUnifiable,
    Budget,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotAUnifier(Some(cm)) => write!(
                f,
                "no candidate unifies the formula (refuted at world {} of a {}-world frame)",
                cm.world,
                cm.model.frame().size()
            ),
            Rejection::NotAUnifier(None) => write!(f, "no candidate unifies the formula"),
            Rejection::GammaNotUnifiable => write!(f, "gamma has no ground unifier"),
            Rejection::Budget => write!(f, "membership budget exceeded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub unifier: Substitution,
    pub construction: CandidateConstruction,
}

/// `gamma(M)` over the original variables.
pub fn expanded_gamma(model: &DisjunctModel) -> Result<Formula, FinitaryError> {
    Ok(model.rnf().expansion().apply(&gamma(model)?))
}

/// The literal valuation restricted, for each `x`, to the members where
/// `x` holds.
pub fn literal_candidate(model: &DisjunctModel) -> Result<Substitution, FinitaryError> {
    let g = expanded_gamma(model)?;
    let rnf = model.rnf();
    let eps = rnf.expansion();
    let vars = rnf.var_formulas();
    Ok(rnf
        .original_vars()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let holds = model
                .members()
                .filter(|d| d.theta1() >> i & 1 == 1)
                .map(|d| eps.apply(&d.to_formula(&vars)));
            (x.clone(), Formula::and(g.clone(), Formula::disj(holds)))
        })
        .collect())
}

fn decided(
    logic: Logic,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<Result<(), Option<CounterModel>>, Rejection> {
    match member_with(logic, phi, opts).verdict {
        Verdict::Valid => Ok(Ok(())),
        Verdict::Refuted { witness, .. } => Ok(Err(Some(witness))),
        Verdict::BudgetExceeded { .. } => Err(Rejection::Budget),
    }
}

/// Whether `sigma` unifies `phi` and is projective for `g`.
fn certify(
    logic: Logic,
    sigma: &Substitution,
    phi: &Formula,
    g: &Formula,
    opts: &MemberOptions,
) -> Result<Result<(), Option<CounterModel>>, Rejection> {
    if let Err(w) = decided(logic, &sigma.apply(phi), opts)? {
        return Ok(Err(w));
    }
    let boxed = Formula::boxed(g.clone());
    for x in phi.vars() {
        let claim = Formula::implies(
            boxed.clone(),
            Formula::iff(Formula::var(x.clone()), sigma.image(&x)),
        );
        if let Err(w) = decided(logic, &claim, opts)? {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

/// The first certified candidate for `model`: the literal valuation, then
/// projective unifiers of `G`.
pub fn candidate_unifier(
    model: &DisjunctModel,
    phi: &Formula,
    logic: Logic,
    opts: &MemberOptions,
) -> Result<Result<Candidate, Rejection>, FinitaryError> {
    finitary_logic(logic)?;
    let vars = phi.vars();
    let g = expanded_gamma(model)?;
    let literal = literal_candidate(model)?.padded(&vars);
    let mut last_witness = match certify(logic, &literal, phi, &g, opts) {
        Ok(Ok(())) => {
            return Ok(Ok(Candidate {
                unifier: literal,
                construction: CandidateConstruction::Literal,
            }))
        }
        Ok(Err(w)) => w,
        Err(r) => return Ok(Err(r)),
    };
    let projective = match split_unifier(logic, &g, opts) {
        Ok(r) => r,
        Err(crate::projective::ProjectiveError::NotUnifiable) => {
            return Ok(Err(Rejection::GammaNotUnifiable))
        }
        Err(_) => return Ok(Err(Rejection::Budget)),
    };
    if projective.certified {
        let sigma = projective.unifier.padded(&vars).restricted(&vars);
        match certify(logic, &sigma, phi, &g, opts) {
            Ok(Ok(())) => {
                return Ok(Ok(Candidate {
                    unifier: sigma,
                    construction: CandidateConstruction::Projective(projective.construction),
                }))
            }
            Ok(Err(w)) => last_witness = w,
            Err(r) => return Ok(Err(r)),
        }
    }
    Ok(Err(Rejection::NotAUnifier(last_witness)))
}

/// Caps for `complete_set`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinitaryCaps {
    pub max_disjuncts: usize,
    pub models: ModelLimits,
    pub member: MemberOptions,
    /// Budget for dropping redundant members.
    pub minimize: Budget,
}

impl Default for FinitaryCaps {
    fn default() -> Self {
        FinitaryCaps {
            max_disjuncts: DEFAULT_MAX_DISJUNCTS,
            models: ModelLimits::default(),
            member: MemberOptions::default(),
            minimize: Budget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateLog {
    pub carrier: Vec<usize>,
    pub outcome: Result<CandidateConstruction, Rejection>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteSet {
    pub unifiers: Vec<Substitution>,
    pub rnf_disjuncts: usize,
    /// One entry per maximal disjunct model.
    pub log: Vec<CandidateLog>,
}

/// A finite complete set of unifiers of `phi`, empty iff `phi` is not
/// unifiable.
pub fn complete_set(phi: &Formula, logic: Logic) -> Result<CompleteSet, FinitaryError> {
    complete_set_with(phi, logic, &FinitaryCaps::default())
}

pub fn complete_set_with(
    phi: &Formula,
    logic: Logic,
    caps: &FinitaryCaps,
) -> Result<CompleteSet, FinitaryError> {
    finitary_logic(logic)?;
    if first_ground_unifier(logic, phi, &caps.member)?.is_none() {
        return Ok(CompleteSet {
            unifiers: Vec::new(),
            rnf_disjuncts: 0,
            log: Vec::new(),
        });
    }
    let rnf = to_rnf_with(phi, caps.max_disjuncts)?;
    let models = maximal_disjunct_models(&rnf, &caps.models)?;
    let compactor = Compactor::new(logic, phi);
    let mut log = Vec::new();
    let mut found: Vec<Substitution> = Vec::new();
    for m in &models {
        let outcome = match candidate_unifier(m, phi, logic, &caps.member)? {
            Ok(c) => {
                let sigma = compactor.compact(&c.unifier);
                if !found.contains(&sigma) {
                    found.push(sigma);
                }
                Ok(c.construction)
            }
            Err(r) => Err(r),
        };
        log.push(CandidateLog {
            carrier: m.carrier().to_vec(),
            outcome,
        });
    }
    if found.is_empty() {
        return Err(FinitaryError::NoCertifiedCandidate);
    }
    let unifiers = minimize_set(logic, &found, phi, &caps.minimize);
    Ok(CompleteSet {
        unifiers,
        rnf_disjuncts: rnf.disjuncts().len(),
        log,
    })
}

/// Rewrites substitution images to small equivalent formulas when the
/// fingerprint search finds one.
struct Compactor {
    fp: Option<Fingerprinter>,
    smallest: BTreeMap<crate::decision::Fingerprint, Formula>,
}

/// Fingerprints over more variables than this are not built for compaction.
const COMPACT_MAX_VARS: usize = 3;

impl Compactor {
    fn new(logic: Logic, phi: &Formula) -> Compactor {
        let vars: Vec<String> = phi.vars().into_iter().collect();
        if vars.len() > COMPACT_MAX_VARS {
            return Compactor {
                fp: None,
                smallest: BTreeMap::new(),
            };
        }
        let fp = Fingerprinter::new(logic, &vars, DEFAULT_MAX_BITS);
        if !fp.is_exact() {
            return Compactor {
                fp: None,
                smallest: BTreeMap::new(),
            };
        }
        let classes = enumerate_classes(&fp, 2, 9, 20_000, 2_000_000);
        let mut smallest = BTreeMap::new();
        for Class { formula, print, .. } in classes.reps {
            smallest.entry(print).or_insert(formula);
        }
        Compactor {
            fp: Some(fp),
            smallest,
        }
    }

    fn compact(&self, sigma: &Substitution) -> Substitution {
        sigma
            .iter()
            .map(|(x, f)| {
                let simple = simplify(f);
                let small = self
                    .fp
                    .as_ref()
                    .and_then(|fp| fp.eval(&simple))
                    .and_then(|print| self.smallest.get(&print))
                    .filter(|g| g.node_count() < simple.node_count())
                    .cloned();
                (x.clone(), small.unwrap_or(simple))
            })
            .collect()
    }
}

/// The first member of `set` that `sigma` factors through, with the
/// witness.
pub fn factor_through(
    logic: Logic,
    set: &[Substitution],
    sigma: &Substitution,
    phi: &Formula,
    budget: &Budget,
) -> Option<(usize, Substitution)> {
    set.iter().enumerate().find_map(|(i, general)| {
        more_general(logic, general, sigma, phi, budget)
            .witness()
            .map(|w| (i, w.clone()))
    })
}

/// Whether `phi` and its rnf agree on unifiability.
pub fn unifiability_transfer_check(logic: Logic, phi: &Formula) -> Result<bool, FinitaryError> {
    finitary_logic(logic)?;
    let opts = MemberOptions::default();
    let rnf = to_rnf_with(phi, DEFAULT_MAX_DISJUNCTS)?;
    let lhs = first_ground_unifier(logic, phi, &opts)?.is_some();
    let rhs = first_ground_unifier(logic, &rnf.to_formula(), &opts)?.is_some();
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::logic::axioms;
    use crate::unify::{ground_unifiers, is_unifier};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn box_or_box_not_in_pm2_has_two_incomparable_unifiers() {
        let phi = p("[]x | []~x");
        let cs = complete_set(&phi, Logic::Pm2).unwrap();
        assert_eq!(cs.unifiers.len(), 2, "{:?}", cs.unifiers);
        let b = Budget::default();
        for (i, a) in cs.unifiers.iter().enumerate() {
            assert_eq!(is_unifier(Logic::Pm2, a, &phi), Ok(true));
            for (j, c) in cs.unifiers.iter().enumerate() {
                if i != j {
                    assert!(!more_general(Logic::Pm2, a, c, &phi, &b).is_more_general());
                }
            }
        }
    }

    #[test]
    fn contradiction_gives_empty_set() {
        assert!(complete_set(&p("x & ~x"), Logic::Pm2)
            .unwrap()
            .unifiers
            .is_empty());
    }

    #[test]
    fn lemmon_in_pm3_covers_ground_unifiers() {
        let phi = axioms::lemmon("x1", "x2");
        let cs = complete_set(&phi, Logic::Pm3).unwrap();
        assert!(!cs.unifiers.is_empty());
        for gu in ground_unifiers(Logic::Pm3, &phi).unwrap() {
            let hit = factor_through(
                Logic::Pm3,
                &cs.unifiers,
                &gu.to_substitution(),
                &phi,
                &Budget::constants_only(),
            );
            assert!(hit.is_some(), "{gu}");
        }
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(
            unifiability_transfer_check(Logic::Pm2, &p("[]x | []~x")),
            Ok(true)
        );
        assert_eq!(
            unifiability_transfer_check(Logic::Pm2, &p("x & ~x")),
            Ok(true)
        );
        assert_eq!(
            unifiability_transfer_check(Logic::Pm3, &axioms::lemmon("x1", "x2")),
            Ok(true)
        );
    }

    #[test]
    fn only_finitary_logics() {
        assert_eq!(
            complete_set(&p("x"), Logic::Pm4),
            Err(FinitaryError::Logic(Logic::Pm4))
        );
    }
}
