//! Models whose points are rnf disjuncts.
//!
//! A disjunct `j` is read as a point where exactly `Θ1(j)` is true, and
//! `i` sees `j` when `Θ2(j) ⊆ Θ2(i)`. A carrier is admissible when
//!
//! 1. `Θ1(j) ⊆ Θ2(j)` for every member,
//! 2. every member satisfies its own `<>` literals in the carrier, and
//! 3. for every subset `D` some member `e` has
//!    `Θ2(e) = Θ1(e) ∪ ⋃_{d ∈ D} Θ2(d)`.
//!
//! Negative `<>` literals hold automatically (a point making `x` true has
//! `x` in its `Θ2`), so condition 2 is monotone in the carrier and has a
//! greatest admissible subset. Condition 3 depends on `D` only through the
//! union of the `Θ2` sets.

use super::rnf::{RnfDisjunct, RnfFormula};
use super::FinitaryError;
use crate::formula::Formula;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjunctModel {
    rnf: Arc<RnfFormula>,
    carrier: Vec<usize>,
}

impl DisjunctModel {
    /// Disjunct indices, ascending.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn rnf(&self) -> &RnfFormula {
        &self.rnf
    }

    pub fn members(&self) -> impl Iterator<Item = &RnfDisjunct> {
        self.carrier.iter().map(|&j| &self.rnf.disjuncts()[j])
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Whether the `a`-th member sees the `b`-th (positions in the carrier).
    pub fn related(&self, a: usize, b: usize) -> bool {
        let d = self.rnf.disjuncts();
        let (x, y) = (d[self.carrier[a]], d[self.carrier[b]]);
        y.theta2() & !x.theta2() == 0
    }
}

/// Limits for disjunct-model searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelLimits {
    /// Largest carrier listed by `enumerate_disjunct_models`.
    pub max_size: usize,
    /// Carriers examined before giving up.
    pub max_subsets: u64,
}

impl Default for ModelLimits {
    fn default() -> Self {
        ModelLimits {
            max_size: 12,
            max_subsets: 1 << 20,
        }
    }
}

fn disjunct(rnf: &RnfFormula, j: usize) -> RnfDisjunct {
    rnf.disjuncts()[j]
}

fn sees(x: RnfDisjunct, y: RnfDisjunct) -> bool {
    y.theta2() & !x.theta2() == 0
}

/// Condition 2 for member `j` of `set`.
fn self_satisfied(rnf: &RnfFormula, set: &[usize], j: usize) -> bool {
    let x = disjunct(rnf, j);
    let mut witnessed = 0u64;
    for &k in set {
        let y = disjunct(rnf, k);
        if sees(x, y) {
            witnessed |= y.theta1();
        }
    }
    witnessed == x.theta2()
}

/// Largest subset of `set` satisfying conditions 1 and 2.
pub fn supported_core(rnf: &RnfFormula, set: &[usize]) -> Vec<usize> {
    let mut cur: Vec<usize> = set
        .iter()
        .copied()
        .filter(|&j| {
            let d = disjunct(rnf, j);
            d.theta1() & !d.theta2() == 0
        })
        .collect();
    loop {
        let next: Vec<usize> = cur
            .iter()
            .copied()
            .filter(|&j| self_satisfied(rnf, &cur, j))
            .collect();
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}

/// A smallest `D ⊆ set` for which condition 3 fails, if any.
pub fn cocover_violation(rnf: &RnfFormula, set: &[usize]) -> Option<Vec<usize>> {
    // Unions of Θ2 reachable from subsets, each with a smallest generator,
    // discovered in order of generator size.
    let mut unions: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    unions.insert(0, Vec::new());
    let mut frontier: Vec<u64> = alloc::vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in frontier {
            for &j in set {
                let w = u | disjunct(rnf, j).theta2();
                if !unions.contains_key(&w) {
                    let mut d = unions[&u].clone();
                    d.push(j);
                    unions.insert(w, d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut by_size: Vec<(&u64, &Vec<usize>)> = unions.iter().collect();
    by_size.sort_by_key(|(u, d)| (d.len(), **u));
    by_size.into_iter().find_map(|(&u, d)| {
        let covered = set.iter().any(|&e| {
            let x = disjunct(rnf, e);
            x.theta2() == x.theta1() | u
        });
        (!covered).then(|| d.clone())
    })
}

/// Conditions 1-3 for a carrier.
pub fn is_admissible(rnf: &RnfFormula, set: &[usize]) -> bool {
    !set.is_empty()
        && supported_core(rnf, set).len() == set.len()
        && cocover_violation(rnf, set).is_none()
}

/// Admissible carriers up to `limits.max_size`, by size and then
/// lexicographically. Only subsets of the greatest set satisfying
/// conditions 1 and 2 are considered, which loses nothing.
pub fn enumerate_disjunct_models(
    rnf: &RnfFormula,
    logic: crate::logic::Logic,
    limits: &ModelLimits,
) -> Result<Vec<DisjunctModel>, FinitaryError> {
    super::finitary_logic(logic)?;
    let shared = Arc::new(rnf.clone());
    let all: Vec<usize> = (0..rnf.disjuncts().len()).collect();
    let core = supported_core(rnf, &all);
    let mut out = Vec::new();
    let mut visited = 0u64;
    for size in 1..=limits.max_size.min(core.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            visited += 1;
            if visited > limits.max_subsets {
                return Err(FinitaryError::SubsetCap {
                    limit: limits.max_subsets,
                });
            }
            let set: Vec<usize> = idx.iter().map(|&i| core[i]).collect();
            if is_admissible(rnf, &set) {
                out.push(DisjunctModel {
                    rnf: shared.clone(),
                    carrier: set,
                });
            }
            if !next_combination(&mut idx, core.len()) {
                break;
            }
        }
    }
    Ok(out)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The inclusion-maximal admissible carriers, in lexicographic order.
///
/// Starting from the greatest set satisfying conditions 1 and 2, a carrier
/// failing condition 3 on some `D` cannot contain all of `D` in any
/// admissible subset, so the search branches on which member of `D` to
/// drop.
pub fn maximal_disjunct_models(
    rnf: &RnfFormula,
    limits: &ModelLimits,
) -> Result<Vec<DisjunctModel>, FinitaryError> {
    let all: Vec<usize> = (0..rnf.disjuncts().len()).collect();
    let mut seen = BTreeSet::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut visited = 0u64;
    let mut stack = alloc::vec![all];
    while let Some(set) = stack.pop() {
        let set = supported_core(rnf, &set);
        if set.is_empty() || !seen.insert(set.clone()) {
            continue;
        }
        visited += 1;
        if visited > limits.max_subsets {
            return Err(FinitaryError::SubsetCap {
                limit: limits.max_subsets,
            });
        }
        if found.iter().any(|m| is_subset(&set, m)) {
            continue;
        }
        match cocover_violation(rnf, &set) {
            None => {
                found.retain(|m| !is_subset(m, &set));
                found.push(set);
            }
            Some(d) => {
                for drop in d.iter().rev() {
                    stack.push(set.iter().copied().filter(|j| j != drop).collect());
                }
            }
        }
    }
    found.sort();
    let shared = Arc::new(rnf.clone());
    Ok(found
        .into_iter()
        .map(|carrier| DisjunctModel {
            rnf: shared.clone(),
            carrier,
        })
        .collect())
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// `⋁_j (φ_j ∧ □⋁_{j R k} φ_k)` over the carrier, in rnf variables.
pub fn gamma(model: &DisjunctModel) -> Result<Formula, FinitaryError> {
    if model.is_empty() {
        return Err(FinitaryError::EmptyCarrier);
    }
    let vars = model.rnf.var_formulas();
    let conj: Vec<Formula> = model.members().map(|d| d.to_formula(&vars)).collect();
    let n = model.len();
    Ok(Formula::disj((0..n).map(|a| {
        let succ = Formula::disj(
            (0..n)
                .filter(|&b| model.related(a, b))
                .map(|b| conj[b].clone()),
        );
        Formula::and(conj[a].clone(), Formula::boxed(succ))
    })))
}
