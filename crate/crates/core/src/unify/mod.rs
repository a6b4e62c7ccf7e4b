//! Unifiers: ground sweeps, verification and the generality preorder.

mod enumerate;
mod generality;

pub use enumerate::{enumerate_classes, Class, Classes};
pub use generality::{minimize_set, more_general, separating_formula, Budget, GeneralityVerdict};

use crate::decision::{is_theorem, BudgetExceeded, MemberOptions};
use crate::formula::{Formula, Substitution};
use crate::logic::Logic;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A unifier whose range is `{true, false}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundUnifier {
    bindings: BTreeMap<String, bool>,
}

impl GroundUnifier {
    pub fn get(&self, var: &str) -> Option<bool> {
        self.bindings.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, bool)> {
        self.bindings.iter().map(|(v, b)| (v, *b))
    }

    pub fn to_substitution(&self) -> Substitution {
        self.bindings
            .iter()
            .map(|(v, &b)| (v.clone(), Formula::constant(b)))
            .collect()
    }
}

impl FromIterator<(String, bool)> for GroundUnifier {
    fn from_iter<T: IntoIterator<Item = (String, bool)>>(iter: T) -> Self {
        GroundUnifier {
            bindings: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for GroundUnifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_substitution().fmt(f)
    }
}

/// All `2^s` constant assignments to the sorted variables, in lexicographic
/// order with `false < true`.
pub fn constant_assignments(vars: &[String]) -> impl Iterator<Item = GroundUnifier> + '_ {
    let s = vars.len();
    assert!(s < 64, "too many variables for a ground sweep");
    (0..1u64 << s).map(move |i| {
        vars.iter()
            .enumerate()
            .map(|(j, v)| (v.clone(), i >> (s - 1 - j) & 1 == 1))
            .collect()
    })
}

/// The ground unifiers of `phi`, in canonical order. Empty iff `phi` is not
/// unifiable.
pub fn ground_unifiers(logic: Logic, phi: &Formula) -> Result<Vec<GroundUnifier>, BudgetExceeded> {
    ground_unifiers_with(logic, phi, &MemberOptions::default())
}

pub fn ground_unifiers_with(
    logic: Logic,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<Vec<GroundUnifier>, BudgetExceeded> {
    let vars: Vec<String> = phi.vars().into_iter().collect();
    let mut out = Vec::new();
    for gu in constant_assignments(&vars) {
        if is_theorem(logic, &gu.to_substitution().apply(phi), opts)? {
            out.push(gu);
        }
    }
    Ok(out)
}

/// The canonical (least) ground unifier, if any.
pub fn first_ground_unifier(
    logic: Logic,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<Option<GroundUnifier>, BudgetExceeded> {
    let vars: Vec<String> = phi.vars().into_iter().collect();
    for gu in constant_assignments(&vars) {
        if is_theorem(logic, &gu.to_substitution().apply(phi), opts)? {
            return Ok(Some(gu));
        }
    }
    Ok(None)
}

/// Whether `sigma(phi)` is a theorem; unbound variables are left fixed.
pub fn is_unifier(
    logic: Logic,
    sigma: &Substitution,
    phi: &Formula,
) -> Result<bool, BudgetExceeded> {
    is_unifier_with(logic, sigma, phi, &MemberOptions::default())
}

pub fn is_unifier_with(
    logic: Logic,
    sigma: &Substitution,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<bool, BudgetExceeded> {
    is_theorem(logic, &sigma.apply(phi), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::logic::axioms;
    use alloc::string::ToString;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn gu(pairs: &[(&str, bool)]) -> GroundUnifier {
        pairs.iter().map(|(v, b)| (v.to_string(), *b)).collect()
    }

    #[test]
    fn box_or_box_not_in_pm2() {
        let gus = ground_unifiers(Logic::Pm2, &p("[]x | []~x")).unwrap();
        assert_eq!(gus, alloc::vec![gu(&[("x", false)]), gu(&[("x", true)])]);
    }

    #[test]
    fn lemmon_in_pm3_has_all_true() {
        let gus = ground_unifiers(Logic::Pm3, &axioms::lemmon("x1", "x2")).unwrap();
        assert!(gus.contains(&gu(&[("x1", true), ("x2", true)])));
    }

    #[test]
    fn contradiction_has_none() {
        for l in Logic::ALL {
            assert!(ground_unifiers(l, &p("x & ~x")).unwrap().is_empty());
        }
    }

    #[test]
    fn canonical_order() {
        let vars = ["a".to_string(), "b".to_string()];
        let all: Vec<_> = constant_assignments(&vars).collect();
        assert_eq!(all[0], gu(&[("a", false), ("b", false)]));
        assert_eq!(all[1], gu(&[("a", false), ("b", true)]));
        assert_eq!(all[3], gu(&[("a", true), ("b", true)]));
    }

    #[test]
    fn unifier_checks() {
        let phi = p("[]x | []~x");
        let bot: Substitution = [("x".to_string(), Formula::Bot)].into_iter().collect();
        let id: Substitution = [("x".to_string(), p("x"))].into_iter().collect();
        assert_eq!(is_unifier(Logic::Pm2, &bot, &phi), Ok(true));
        assert_eq!(is_unifier(Logic::Pm2, &id, &phi), Ok(false));
        let t: Substitution = [("x".to_string(), p("[]x -> x"))].into_iter().collect();
        assert_eq!(is_unifier(Logic::Pm5, &t, &p("x")), Ok(true));
    }
}
