//! PM1 membership: breadth-first search over the modal facts at the bottom
//! of finite chains.

use super::{MembershipVerdict, Verdict};
use crate::kripke::{counter_model, make_frame, Compiled, Evaluator, Node, Refutation};
use crate::logic::Logic;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Truth values of the modal subformulas at one world, packed.
type State = Vec<u64>;

struct Stepper<'c> {
    c: &'c Compiled,
    slot: Vec<Option<usize>>,
    words: usize,
    vals: Vec<bool>,
}

impl<'c> Stepper<'c> {
    fn new(c: &'c Compiled) -> Self {
        let mut slot = alloc::vec![None; c.len()];
        let mut k = 0;
        for (i, node) in c.nodes().iter().enumerate() {
            if matches!(node, Node::Box(_) | Node::Diamond(_)) {
                slot[i] = Some(k);
                k += 1;
            }
        }
        Stepper {
            c,
            slot,
            words: k.div_ceil(64),
            vals: alloc::vec![false; c.len()],
        }
    }

    /// State and root truth at a world with valuation `code` whose strict
    /// successors start with a world in state `next`.
    fn step(&mut self, code: u64, next: Option<&State>) -> (State, bool) {
        let mut state = alloc::vec![0u64; self.words];
        let above = |s: usize| next.map(|st| st[s / 64] >> (s % 64) & 1 == 1);
        for (i, node) in self.c.nodes().iter().enumerate() {
            let v = &self.vals;
            let value = match *node {
                Node::Var(x) => code >> x & 1 == 1,
                Node::Top => true,
                Node::Bot => false,
                Node::Not(a) => !v[a],
                Node::And(a, b) => v[a] && v[b],
                Node::Or(a, b) => v[a] || v[b],
                Node::Implies(a, b) => !v[a] || v[b],
                Node::Iff(a, b) => v[a] == v[b],
                Node::Box(a) => v[a] && above(self.slot[i].unwrap()).unwrap_or(true),
                Node::Diamond(a) => v[a] || above(self.slot[i].unwrap()).unwrap_or(false),
            };
            self.vals[i] = value;
            if value {
                if let Some(s) = self.slot[i] {
                    state[s / 64] |= 1 << (s % 64);
                }
            }
        }
        (state, self.vals[self.c.root()])
    }
}

struct Seen {
    code: u64,
    parent: Option<State>,
}

pub(super) fn member_pm1(c: &Compiled, bound: usize, max_steps: u64) -> MembershipVerdict {
    let n = c.vars().len();
    let finish = |verdict, checked| MembershipVerdict {
        verdict,
        bound_used: bound,
        checked_up_to: checked,
    };
    if n >= 63 {
        return finish(Verdict::BudgetExceeded { size: 1 }, 0);
    }
    let ncodes = 1u64 << n;
    let mut stepper = Stepper::new(c);
    let mut seen: BTreeMap<State, Seen> = BTreeMap::new();
    let mut frontier: Vec<State> = Vec::new();
    let mut steps = 0u64;

    let mut depth = 0;
    while depth < bound {
        let length = depth + 1;
        let mut next_frontier = Vec::new();
        let parents: Vec<Option<&State>> = if depth == 0 {
            alloc::vec![None]
        } else {
            frontier.iter().map(Some).collect()
        };
        for parent in parents {
            for code in 0..ncodes {
                if steps >= max_steps {
                    return finish(Verdict::BudgetExceeded { size: length }, length);
                }
                steps += 1;
                let (state, root) = stepper.step(code, parent);
                if !root {
                    let witness = witness(c, &seen, code, parent.cloned(), length);
                    return finish(
                        Verdict::Refuted {
                            size: length,
                            witness,
                        },
                        length,
                    );
                }
                if !seen.contains_key(&state) {
                    seen.insert(
                        state.clone(),
                        Seen {
                            code,
                            parent: parent.cloned(),
                        },
                    );
                    next_frontier.push(state);
                }
            }
        }
        depth = length;
        if next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    finish(Verdict::Valid, depth)
}

fn witness(
    c: &Compiled,
    seen: &BTreeMap<State, Seen>,
    bottom: u64,
    mut above: Option<State>,
    length: usize,
) -> crate::kripke::CounterModel {
    let mut codes = alloc::vec![bottom];
    while let Some(s) = above {
        let entry = &seen[&s];
        codes.push(entry.code);
        above = entry.parent.clone();
    }
    debug_assert_eq!(codes.len(), length);
    let frame = make_frame(Logic::Pm1, length).expect("length >= 1");
    let mut truth = Evaluator::new(&frame).truth_set_codes(c, &codes);
    truth.complement();
    let world = truth.first().expect("bottom world fails");
    counter_model(&frame, c, &Refutation { world, codes })
}

#[cfg(test)]
mod tests {
    use crate::decision::{member, Verdict};
    use crate::formula::{parse, Formula};
    use crate::kripke::{eval, make_frame, valid_on_frame, SearchLimits};
    use crate::logic::Logic;

    #[test]
    fn chain_search_matches_frame_scan() {
        let corpus = [
            "[]([](p -> []p) -> p) -> p",
            "[]x | []~x",
            "<>[]p -> []p",
            "<>p -> []<>p",
            "p -> [](q -> <>p)",
            "[]<>p <-> <>[]p",
            "<>(p & <>(~p & <>p)) -> q",
            "<>(p & <>(~p & <>(p & <>~p)))  -> q",
            "~(<>(p & <>(~p & <>(p & <>(~p & <>p)))))",
        ];
        for src in corpus {
            let phi: Formula = parse(src).unwrap();
            let v = member(Logic::Pm1, &phi, None);
            let mut least = None;
            for m in 1..=7 {
                let z = make_frame(Logic::Pm1, m).unwrap();
                if !valid_on_frame(&z, &phi, SearchLimits::default())
                    .unwrap()
                    .is_valid()
                {
                    least = Some(m);
                    break;
                }
            }
            match (&v.verdict, least) {
                (Verdict::Valid, None) => {}
                (Verdict::Refuted { size, witness }, Some(m)) => {
                    assert_eq!(*size, m, "{src}");
                    assert_eq!(eval(&witness.model, witness.world, &phi), Ok(false));
                }
                (got, want) => panic!("{src}: {got:?} vs {want:?}"),
            }
        }
    }

    #[test]
    fn long_alternation_needs_a_long_chain() {
        let phi = parse("~(<>(p & <>(~p & <>(p & <>(~p & <>p)))))").unwrap();
        match member(Logic::Pm1, &phi, None).verdict {
            Verdict::Refuted { size, .. } => assert_eq!(size, 5),
            other => panic!("{other:?}"),
        }
    }
}
