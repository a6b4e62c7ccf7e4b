//! Formulas over a variable set, one representative per equivalence class,
//! in size-then-lexicographic order.

use crate::decision::{Fingerprint, Fingerprinter};
use crate::formula::Formula;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct Class {
    pub formula: Formula,
    pub print: Fingerprint,
    pub depth: usize,
    pub size: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Classes {
    pub reps: Vec<Class>,
    /// Whether a cap stopped the enumeration before `max_nodes`.
    pub truncated: bool,
}

#[derive(Clone, Copy)]
enum Op {
    Not,
    Box,
    Diamond,
    And,
    Or,
    Implies,
    Iff,
}

/// Enumerates by node count up to `max_nodes`. A formula is kept when no
/// earlier one has the same fingerprint at modal depth `<=` its own, so
/// every class appears at its shallowest depth. `max_ops` bounds the
/// number of candidates built.
pub fn enumerate_classes(
    fp: &Fingerprinter,
    max_depth: usize,
    max_nodes: usize,
    max_classes: usize,
    max_ops: u64,
) -> Classes {
    let mut out = Classes::default();
    let mut best_depth: BTreeMap<Fingerprint, usize> = BTreeMap::new();
    let mut by_size: Vec<Vec<usize>> = alloc::vec![Vec::new(); max_nodes + 1];
    let mut ops = 0u64;

    for size in 1..=max_nodes {
        let mut cands: Vec<(Formula, Fingerprint, usize)> = Vec::new();
        let mut push = |f: Formula, p: Fingerprint, d: usize, ops: &mut u64| -> bool {
            *ops += 1;
            cands.push((f, p, d));
            *ops <= max_ops
        };
        let mut room = true;
        if size == 1 {
            for v in fp.vars() {
                let p = fp.var(v).expect("own variable").clone();
                room &= push(Formula::var(v.clone()), p, 0, &mut ops);
            }
            room &= push(Formula::Top, fp.top(), 0, &mut ops);
            room &= push(Formula::Bot, fp.bot(), 0, &mut ops);
        } else {
            'unary: for &i in &by_size[size - 1] {
                let c = &out.reps[i];
                for op in [Op::Not, Op::Box, Op::Diamond] {
                    if !matches!(op, Op::Not) && c.depth >= max_depth {
                        continue;
                    }
                    let (f, p, d) = unary(fp, op, c);
                    if !push(f, p, d, &mut ops) {
                        room = false;
                        break 'unary;
                    }
                }
            }
            'binary: for left in 1..size - 1 {
                let right = size - 1 - left;
                for &i in &by_size[left] {
                    for &j in &by_size[right] {
                        if !room {
                            break 'binary;
                        }
                        let (a, b) = (&out.reps[i], &out.reps[j]);
                        for op in [Op::And, Op::Or, Op::Implies, Op::Iff] {
                            let (f, p, d) = binary(fp, op, a, b);
                            if !push(f, p, d, &mut ops) {
                                room = false;
                                break;
                            }
                        }
                    }
                }
            }
        }
        cands.sort_by(|x, y| x.0.cmp(&y.0));
        for (formula, print, depth) in cands {
            if best_depth.get(&print).is_some_and(|&d| d <= depth) {
                continue;
            }
            if out.reps.len() >= max_classes {
                out.truncated = true;
                return out;
            }
            best_depth.insert(print.clone(), depth);
            by_size[size].push(out.reps.len());
            out.reps.push(Class {
                formula,
                print,
                depth,
                size,
            });
        }
        if !room {
            out.truncated = true;
            return out;
        }
    }
    out
}

fn unary(fp: &Fingerprinter, op: Op, c: &Class) -> (Formula, Fingerprint, usize) {
    let a = c.formula.clone();
    match op {
        Op::Not => (Formula::not(a), fp.not(&c.print), c.depth),
        Op::Box => (Formula::boxed(a), fp.boxed(&c.print), c.depth + 1),
        _ => (Formula::diamond(a), fp.diamond(&c.print), c.depth + 1),
    }
}

fn binary(fp: &Fingerprinter, op: Op, l: &Class, r: &Class) -> (Formula, Fingerprint, usize) {
    let (a, b) = (l.formula.clone(), r.formula.clone());
    let d = l.depth.max(r.depth);
    match op {
        Op::And => (Formula::and(a, b), fp.and(&l.print, &r.print), d),
        Op::Or => (Formula::or(a, b), fp.or(&l.print, &r.print), d),
        Op::Implies => (Formula::implies(a, b), fp.implies(&l.print, &r.print), d),
        _ => (Formula::iff(a, b), fp.iff(&l.print, &r.print), d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::{equivalent, DEFAULT_MAX_BITS};
    use crate::logic::Logic;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;

    #[test]
    fn classical_one_variable_has_four_classes_at_depth_zero() {
        let vars = ["p".to_string()];
        let fp = Fingerprinter::new(Logic::Pm5, &vars, DEFAULT_MAX_BITS);
        let cs = enumerate_classes(&fp, 0, 6, 1000, 1 << 20);
        assert!(!cs.truncated);
        assert_eq!(cs.reps.len(), 4);
        assert_eq!(cs.reps[0].formula, Formula::var("p"));
    }

    #[test]
    fn representatives_are_pairwise_inequivalent_at_equal_depth() {
        let vars = ["p".to_string()];
        let fp = Fingerprinter::new(Logic::Pm2, &vars, DEFAULT_MAX_BITS);
        let cs = enumerate_classes(&fp, 1, 4, 200, 1 << 20);
        let mut seen = BTreeSet::new();
        for c in &cs.reps {
            assert!(seen.insert((c.print.clone(), c.depth)));
            assert_eq!(c.formula.modal_depth(), c.depth);
            assert_eq!(c.formula.node_count() as usize, c.size);
        }
        // Spot-check against the decision procedure.
        for a in cs.reps.iter().take(12) {
            for b in cs.reps.iter().take(12) {
                let same = a.print == b.print;
                assert_eq!(
                    same,
                    equivalent(Logic::Pm2, &a.formula, &b.formula).unwrap()
                );
            }
        }
    }

    #[test]
    fn caps_truncate() {
        let vars = ["p".to_string(), "q".to_string()];
        let fp = Fingerprinter::new(Logic::Pm4, &vars, DEFAULT_MAX_BITS);
        assert!(enumerate_classes(&fp, 2, 15, 10, 1 << 20).truncated);
        assert!(enumerate_classes(&fp, 2, 15, 10_000, 50).truncated);
    }
}
