//! Syntactic clean-up: constant folding, double negation and idempotence.
//!
//! Only rewrites valid in every Kripke model are used (classical laws plus
//! `[]true = true` and `<>false = false`), so the result is equivalent in
//! any normal modal logic. It never grows the tree.

use super::Formula;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;

pub fn simplify(phi: &Formula) -> Formula {
    let mut memo = BTreeMap::new();
    simp(phi, &mut memo)
}

type Memo = BTreeMap<*const Formula, Formula>;

fn simp_child(a: &Arc<Formula>, memo: &mut Memo) -> Formula {
    let key = Arc::as_ptr(a);
    if let Some(done) = memo.get(&key) {
        return done.clone();
    }
    let out = simp(a, memo);
    memo.insert(key, out.clone());
    out
}

fn simp(f: &Formula, memo: &mut Memo) -> Formula {
    match f {
        Formula::Var(_) | Formula::Top | Formula::Bot => f.clone(),
        Formula::Not(a) => mk_not(simp_child(a, memo)),
        Formula::Box(a) => match simp_child(a, memo) {
            Formula::Top => Formula::Top,
            a => Formula::boxed(a),
        },
        Formula::Diamond(a) => match simp_child(a, memo) {
            Formula::Bot => Formula::Bot,
            a => Formula::diamond(a),
        },
        Formula::And(a, b) => mk_and(simp_child(a, memo), simp_child(b, memo)),
        Formula::Or(a, b) => mk_or(simp_child(a, memo), simp_child(b, memo)),
        Formula::Implies(a, b) => mk_implies(simp_child(a, memo), simp_child(b, memo)),
        Formula::Iff(a, b) => mk_iff(simp_child(a, memo), simp_child(b, memo)),
    }
}

fn mk_not(a: Formula) -> Formula {
    match a {
        Formula::Top => Formula::Bot,
        Formula::Bot => Formula::Top,
        Formula::Not(inner) => (*inner).clone(),
        a => Formula::not(a),
    }
}

fn mk_and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::Bot, _) | (_, Formula::Bot) => Formula::Bot,
        (Formula::Top, x) | (x, Formula::Top) => x,
        (a, b) if a == b => a,
        (a, b) => Formula::and(a, b),
    }
}

fn mk_or(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::Top, _) | (_, Formula::Top) => Formula::Top,
        (Formula::Bot, x) | (x, Formula::Bot) => x,
        (a, b) if a == b => a,
        (a, b) => Formula::or(a, b),
    }
}

fn mk_implies(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::Bot, _) | (_, Formula::Top) => Formula::Top,
        (Formula::Top, x) => x,
        (x, Formula::Bot) => mk_not(x),
        (a, b) if a == b => Formula::Top,
        (a, b) => Formula::implies(a, b),
    }
}

fn mk_iff(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::Top, x) | (x, Formula::Top) => x,
        (Formula::Bot, x) | (x, Formula::Bot) => mk_not(x),
        (a, b) if a == b => Formula::Top,
        (a, b) => Formula::iff(a, b),
    }
}
