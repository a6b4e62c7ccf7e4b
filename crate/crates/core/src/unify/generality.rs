//! The preorder `specific ⪯ general`: some `s2` with
//! `specific(p) ≡ s2(general(p))` for every variable `p` of the formula.
//!
//! The witness search first tries a few obvious candidates, then walks
//! class representatives of small formulas, assigning one to each variable
//! of `general`'s range and pruning with fingerprints as soon as a target
//! is fully determined. Every witness returned has been re-checked with the
//! decision procedure.

use super::constant_assignments;
use super::enumerate::{enumerate_classes, Class};
use crate::decision::{
    equivalent_with, is_theorem, Fingerprint, Fingerprinter, MemberOptions, DEFAULT_MAX_BITS,
};
use crate::formula::{Formula, Substitution};
use crate::logic::Logic;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Bounds for the witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Modal depth of witness range formulas.
    pub max_depth: usize,
    /// Node count of witness range formulas; 0 restricts the search to the
    /// seed candidates (restriction of `specific`, identity, constants).
    pub max_nodes: usize,
    /// Cap on enumerated equivalence classes.
    pub max_classes: usize,
    /// Cap on enumeration steps plus fingerprint comparisons.
    pub max_checks: u64,
    pub member: MemberOptions,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_depth: 2,
            max_nodes: 15,
            max_classes: 4096,
            max_checks: 2_000_000,
            member: MemberOptions::default(),
        }
    }
}

impl Budget {
    /// Seeds only: enough to factor any unifier through itself or a ground
    /// unifier through a unifier it instantiates.
    pub fn constants_only() -> Self {
        Budget {
            max_nodes: 0,
            ..Self::default()
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_nodes == 0 {
            write!(f, "constant witnesses only")
        } else {
            write!(
                f,
                "modal depth <= {}, nodes <= {}, classes <= {}, checks <= {}",
                self.max_depth, self.max_nodes, self.max_classes, self.max_checks
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneralityVerdict {
    MoreGeneral(Substitution),
    NotWithinBudget(Budget),
}

impl GeneralityVerdict {
    pub fn is_more_general(&self) -> bool {
        matches!(self, GeneralityVerdict::MoreGeneral(_))
    }

    pub fn witness(&self) -> Option<&Substitution> {
        match self {
            GeneralityVerdict::MoreGeneral(s) => Some(s),
            GeneralityVerdict::NotWithinBudget(_) => None,
        }
    }
}

/// Fingerprint tables grow as `2^(n·2^n)`; beyond this many variables the
/// enumeration phase is skipped.
const MAX_POOL_VARS: usize = 4;
/// Constant seeds are tried only up to this many domain variables.
const MAX_CONSTANT_SEED_VARS: usize = 10;

/// Searches for `s2` with `specific(p) ≡ s2(general(p))` for all `p` in
/// `Var(phi)`. Both substitutions are padded with identity bindings.
pub fn more_general(
    logic: Logic,
    general: &Substitution,
    specific: &Substitution,
    phi: &Formula,
    budget: &Budget,
) -> GeneralityVerdict {
    let vars: Vec<String> = phi.vars().into_iter().collect();
    let general = general.padded(&vars);
    let specific = specific.padded(&vars);
    let domain: Vec<String> = general.range_vars(&vars).into_iter().collect();
    let targets: Vec<(Formula, Formula)> = vars
        .iter()
        .map(|v| (general.image(v), specific.image(v)))
        .collect();
    let mut pool: BTreeSet<String> = domain.iter().cloned().collect();
    pool.extend(specific.range_vars(&vars));
    let pool: Vec<String> = pool.into_iter().collect();
    let fp =
        (pool.len() <= MAX_POOL_VARS).then(|| Fingerprinter::new(logic, &pool, DEFAULT_MAX_BITS));
    let exact = fp.as_ref().filter(|fp| fp.is_exact());
    let wanted: Option<Vec<Fingerprint>> =
        exact.and_then(|fp| targets.iter().map(|(_, s)| fp.eval(s)).collect());
    // Exact fingerprints reject mismatches cheaply; every accepted witness
    // is still confirmed by the decision procedure.
    let verify = |s2: &Substitution| {
        if let (Some(fp), Some(wanted)) = (exact, &wanted) {
            let env: Option<BTreeMap<String, Fingerprint>> = s2
                .iter()
                .map(|(v, f)| Some((v.clone(), fp.eval(f)?)))
                .collect();
            let matches = env.is_some_and(|env| {
                targets
                    .iter()
                    .zip(wanted)
                    .all(|((g, _), want)| fp.eval_with(g, &env).as_ref() == Some(want))
            });
            if !matches {
                return false;
            }
        }
        targets
            .iter()
            .all(|(g, s)| equivalent_with(logic, s, &s2.apply(g), &budget.member) == Ok(true))
    };

    let mut tried: BTreeSet<Substitution> = BTreeSet::new();
    let mut seeds = alloc::vec![
        specific.padded(&domain).restricted(&domain),
        Substitution::identity_on(&domain),
    ];
    if domain.len() <= MAX_CONSTANT_SEED_VARS {
        seeds.extend(constant_assignments(&domain).map(|g| g.to_substitution()));
    }
    for seed in seeds {
        if tried.insert(seed.clone()) && verify(&seed) {
            return GeneralityVerdict::MoreGeneral(seed);
        }
    }

    if budget.max_nodes == 0 || domain.is_empty() {
        return GeneralityVerdict::NotWithinBudget(*budget);
    }
    let Some(fp) = fp.as_ref() else {
        return GeneralityVerdict::NotWithinBudget(*budget);
    };
    if separator(logic, fp, &vars, &general, &specific, budget).is_some() {
        return GeneralityVerdict::NotWithinBudget(*budget);
    }
    let classes = enumerate_classes(
        fp,
        budget.max_depth,
        budget.max_nodes,
        budget.max_classes,
        budget.max_checks,
    );
    let mut spent = classes.reps.len() as u64;

    // One candidate per fingerprint suffices when fingerprints decide
    // equivalence; otherwise keep every representative.
    let mut seen = BTreeSet::new();
    let candidates: Vec<&Class> = classes
        .reps
        .iter()
        .filter(|c| !fp.is_exact() || seen.insert(c.print.clone()))
        .collect();

    // Each target becomes checkable once the last domain variable it
    // mentions has been assigned.
    let position: BTreeMap<&String, usize> =
        domain.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut ready: Vec<Vec<(Formula, Fingerprint)>> = alloc::vec![Vec::new(); domain.len()];
    for (g, s) in &targets {
        let want = fp.eval(s).expect("pool covers specific's range");
        match g.vars().iter().map(|v| position[v]).max() {
            Some(level) => ready[level].push((g.clone(), want)),
            None => {
                if fp.eval(g).as_ref() != Some(&want) {
                    return GeneralityVerdict::NotWithinBudget(*budget);
                }
            }
        }
    }

    let mut search = Search {
        fp,
        domain: &domain,
        candidates: &candidates,
        ready: &ready,
        spent: &mut spent,
        limit: budget.max_checks,
        chosen: Vec::with_capacity(domain.len()),
        env: BTreeMap::new(),
    };
    let mut accept = |s2: &Substitution| tried.insert(s2.clone()) && verify(s2);
    match search.run(0, &mut accept) {
        Some(s2) => GeneralityVerdict::MoreGeneral(s2),
        None => GeneralityVerdict::NotWithinBudget(*budget),
    }
}

/// Node limit for separating formulas.
const SEPARATOR_NODES: usize = 7;
const SEPARATOR_CLASSES: usize = 4096;

/// A formula over `Var(phi)` that `general` turns into a theorem and
/// `specific` does not. Its existence rules out a witness of any size,
/// since `s2` applied to a theorem is a theorem.
pub fn separating_formula(
    logic: Logic,
    general: &Substitution,
    specific: &Substitution,
    phi: &Formula,
    budget: &Budget,
) -> Option<Formula> {
    let vars: Vec<String> = phi.vars().into_iter().collect();
    let general = general.padded(&vars);
    let specific = specific.padded(&vars);
    let mut pool = general.range_vars(&vars);
    pool.extend(specific.range_vars(&vars));
    if pool.len() > MAX_POOL_VARS || vars.len() > MAX_POOL_VARS {
        return None;
    }
    let pool: Vec<String> = pool.into_iter().collect();
    let fp = Fingerprinter::new(logic, &pool, DEFAULT_MAX_BITS);
    separator(logic, &fp, &vars, &general, &specific, budget)
}

fn separator(
    logic: Logic,
    fp: &Fingerprinter,
    vars: &[String],
    general: &Substitution,
    specific: &Substitution,
    budget: &Budget,
) -> Option<Formula> {
    let env = |sigma: &Substitution| -> Option<BTreeMap<String, Fingerprint>> {
        vars.iter()
            .map(|v| Some((v.clone(), fp.eval(&sigma.image(v))?)))
            .collect()
    };
    let (env_g, env_s) = (env(general)?, env(specific)?);
    let over_phi = Fingerprinter::new(logic, vars, DEFAULT_MAX_BITS);
    let classes = enumerate_classes(
        &over_phi,
        budget.max_depth,
        SEPARATOR_NODES.min(budget.max_nodes),
        SEPARATOR_CLASSES,
        budget.max_checks,
    );
    classes.reps.into_iter().map(|c| c.formula).find(|psi| {
        let (Some(g), Some(s)) = (fp.eval_with(psi, &env_g), fp.eval_with(psi, &env_s)) else {
            return false;
        };
        // A failing sampled fingerprint is a genuine countermodel; a valid
        // one is only trusted when the fingerprints are exact.
        fp.is_valid(&g)
            && !fp.is_valid(&s)
            && (fp.is_exact() || is_theorem(logic, &general.apply(psi), &budget.member) == Ok(true))
    })
}

struct Search<'a> {
    fp: &'a Fingerprinter,
    domain: &'a [String],
    candidates: &'a [&'a Class],
    ready: &'a [Vec<(Formula, Fingerprint)>],
    spent: &'a mut u64,
    limit: u64,
    chosen: Vec<usize>,
    env: BTreeMap<String, Fingerprint>,
}

impl Search<'_> {
    fn run(
        &mut self,
        level: usize,
        accept: &mut dyn FnMut(&Substitution) -> bool,
    ) -> Option<Substitution> {
        if level == self.domain.len() {
            let s2: Substitution = self
                .domain
                .iter()
                .zip(&self.chosen)
                .map(|(v, &i)| (v.clone(), self.candidates[i].formula.clone()))
                .collect();
            return accept(&s2).then_some(s2);
        }
        let var = &self.domain[level];
        for (i, cand) in self.candidates.iter().enumerate() {
            if *self.spent >= self.limit {
                return None;
            }
            self.env.insert(var.clone(), cand.print.clone());
            *self.spent += self.ready[level].len() as u64;
            let fits = self.ready[level]
                .iter()
                .all(|(g, want)| self.fp.eval_with(g, &self.env).as_ref() == Some(want));
            if fits {
                self.chosen.push(i);
                let found = self.run(level + 1, accept);
                self.chosen.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        self.env.remove(var);
        None
    }
}

/// Drops every unifier that another list member is more general than
/// within the budget. Among mutually general members the earliest is kept;
/// the order of survivors is preserved.
pub fn minimize_set(
    logic: Logic,
    unifiers: &[Substitution],
    phi: &Formula,
    budget: &Budget,
) -> Vec<Substitution> {
    let n = unifiers.len();
    let mut memo: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut geq = |i: usize, j: usize| -> bool {
        *memo.entry((i, j)).or_insert_with(|| {
            more_general(logic, &unifiers[i], &unifiers[j], phi, budget).is_more_general()
        })
    };
    let mut dropped = alloc::vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || dropped[j] {
                continue;
            }
            if geq(j, i) && (j < i || !geq(i, j)) {
                dropped[i] = true;
                break;
            }
        }
    }
    unifiers
        .iter()
        .zip(dropped)
        .filter(|(_, d)| !d)
        .map(|(u, _)| u.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use alloc::string::ToString;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn subst(pairs: &[(&str, &str)]) -> Substitution {
        pairs.iter().map(|(v, f)| (v.to_string(), p(f))).collect()
    }

    fn check_witness(
        logic: Logic,
        g: &Substitution,
        s: &Substitution,
        phi: &Formula,
        w: &Substitution,
    ) {
        for v in phi.vars() {
            let lhs = s.padded([&v]).image(&v);
            let rhs = w.apply(&g.padded([&v]).image(&v));
            assert_eq!(
                equivalent_with(logic, &lhs, &rhs, &MemberOptions::default()),
                Ok(true)
            );
        }
    }

    #[test]
    fn reflexive() {
        let phi = p("[]x | []~x");
        let s = subst(&[("x", "[]x")]);
        let v = more_general(Logic::Pm2, &s, &s, &phi, &Budget::default());
        assert!(v.is_more_general());
    }

    #[test]
    fn opposite_constants_are_incomparable() {
        let phi = p("[]x | []~x");
        let top = subst(&[("x", "true")]);
        let bot = subst(&[("x", "false")]);
        let v = more_general(Logic::Pm2, &top, &bot, &phi, &Budget::default());
        assert!(!v.is_more_general());
    }

    #[test]
    fn separators_refute_generality() {
        let phi = p("[]x | []~x");
        let top = subst(&[("x", "true")]);
        let bot = subst(&[("x", "false")]);
        let psi = separating_formula(Logic::Pm2, &top, &bot, &phi, &Budget::default()).unwrap();
        assert!(is_theorem(Logic::Pm2, &top.apply(&psi), &MemberOptions::default()).unwrap());
        assert!(!is_theorem(Logic::Pm2, &bot.apply(&psi), &MemberOptions::default()).unwrap());
        // No separator when a witness exists.
        let g = subst(&[("x", "[]x")]);
        assert_eq!(
            separating_formula(Logic::Pm2, &g, &top, &phi, &Budget::default()),
            None
        );
    }

    #[test]
    fn mgu_shape_covers_ground_unifiers() {
        let phi = p("x");
        let mgu = subst(&[("x", "[]x -> x")]);
        let gu = subst(&[("x", "true")]);
        let v = more_general(Logic::Pm5, &mgu, &gu, &phi, &Budget::constants_only());
        let w = v.witness().expect("constant witness");
        check_witness(Logic::Pm5, &mgu, &gu, &phi, w);
    }

    #[test]
    fn enumeration_finds_nonconstant_witnesses() {
        // x := []y is more general than x := []<>y via y := <>y.
        let phi = p("x -> x");
        let g = subst(&[("x", "[]y")]);
        let s = subst(&[("x", "[]<>y & []y")]);
        let v = more_general(Logic::Pm2, &g, &s, &phi, &Budget::default());
        let w = v.witness().expect("found");
        check_witness(Logic::Pm2, &g, &s, &phi, w);
    }

    #[test]
    fn witness_composition_is_transitive() {
        let phi = p("x -> x");
        let a = subst(&[("x", "y")]);
        let b = subst(&[("x", "[]y")]);
        let c = subst(&[("x", "[][]y | false")]);
        let budget = Budget::default();
        let ab = more_general(Logic::Pm3, &a, &b, &phi, &budget);
        let bc = more_general(Logic::Pm3, &b, &c, &phi, &budget);
        let (w1, w2) = (ab.witness().unwrap(), bc.witness().unwrap());
        // c ≡ w2(b) ≡ w2(w1(a)).
        check_witness(Logic::Pm3, &a, &c, &phi, &w1.then(w2));
    }

    #[test]
    fn minimize_examples() {
        let phi = p("[]x | []~x");
        let top = subst(&[("x", "true")]);
        let bot = subst(&[("x", "false")]);
        let b = Budget::default();
        assert_eq!(
            minimize_set(Logic::Pm2, &[top.clone(), top.clone()], &phi, &b),
            core::slice::from_ref(&top)
        );
        assert_eq!(
            minimize_set(Logic::Pm2, &[top.clone(), bot.clone()], &phi, &b),
            [top.clone(), bot]
        );
        assert_eq!(
            minimize_set(Logic::Pm2, core::slice::from_ref(&top), &phi, &b),
            [top]
        );
    }

    #[test]
    fn minimize_drops_instances() {
        let phi = p("[]x | []~x");
        let mgu = subst(&[("x", "[]([]x | []~x) -> x")]);
        let gu = subst(&[("x", "true")]);
        let kept = minimize_set(
            Logic::Pm5,
            &[gu, mgu.clone()],
            &phi,
            &Budget::constants_only(),
        );
        assert_eq!(kept, [mgu]);
    }
}
