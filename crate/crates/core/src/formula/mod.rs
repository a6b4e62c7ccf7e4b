//! Modal propositional formulas.
//!
//! Children are reference counted so that substitution results share
//! structure with their inputs. Equality and ordering are structural.

mod parse;
mod print;
mod simplify;
mod subst;

pub use parse::{parse, ParseError};
pub use simplify::simplify;
pub use subst::Substitution;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Top,
    Bot,
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Diamond(Arc<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn constant(value: bool) -> Formula {
        if value {
            Formula::Top
        } else {
            Formula::Bot
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    pub fn diamond(a: Formula) -> Formula {
        Formula::Diamond(Arc::new(a))
    }

    /// Left-nested conjunction; `Top` when empty.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bot` when empty.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::Top | Formula::Bot)
    }

    pub fn is_modal(&self) -> bool {
        matches!(self, Formula::Box(_) | Formula::Diamond(_))
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Children<'_> {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => Children::Zero,
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => Children::One(a),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => Children::Two(a, b),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        collect_vars(self, &mut out, &mut seen);
        out
    }

    /// Maximum nesting of `Box`/`Diamond`.
    pub fn modal_depth(&self) -> usize {
        let mut memo = BTreeMap::new();
        depth_memo(self, &mut memo)
    }

    /// Number of nodes of the formula read as a tree (saturating).
    pub fn node_count(&self) -> u64 {
        let mut memo = BTreeMap::new();
        count_memo(self, &mut memo)
    }

    /// The set of subformulas, including `self`.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut stack = Vec::from([self]);
        while let Some(f) = stack.pop() {
            if out.insert(f.clone()) {
                match f.children() {
                    Children::Zero => {}
                    Children::One(a) => stack.push(a),
                    Children::Two(a, b) => {
                        stack.push(a);
                        stack.push(b);
                    }
                }
            }
        }
        out
    }

    /// Canonical ASCII rendering; see the `Display` impl.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

pub enum Children<'a> {
    Zero,
    One(&'a Formula),
    Two(&'a Formula, &'a Formula),
}

fn collect_vars(f: &Formula, out: &mut BTreeSet<String>, seen: &mut BTreeSet<*const Formula>) {
    if !seen.insert(f as *const Formula) {
        return;
    }
    match f.children() {
        Children::Zero => {
            if let Formula::Var(name) = f {
                if !out.contains(name) {
                    out.insert(name.clone());
                }
            }
        }
        Children::One(a) => collect_vars(a, out, seen),
        Children::Two(a, b) => {
            collect_vars(a, out, seen);
            collect_vars(b, out, seen);
        }
    }
}

fn depth_memo(f: &Formula, memo: &mut BTreeMap<*const Formula, usize>) -> usize {
    if let Some(&d) = memo.get(&(f as *const Formula)) {
        return d;
    }
    let d = match f.children() {
        Children::Zero => 0,
        Children::One(a) => depth_memo(a, memo) + usize::from(f.is_modal()),
        Children::Two(a, b) => depth_memo(a, memo).max(depth_memo(b, memo)),
    };
    memo.insert(f as *const Formula, d);
    d
}

fn count_memo(f: &Formula, memo: &mut BTreeMap<*const Formula, u64>) -> u64 {
    if let Some(&c) = memo.get(&(f as *const Formula)) {
        return c;
    }
    let c = match f.children() {
        Children::Zero => 1,
        Children::One(a) => count_memo(a, memo).saturating_add(1),
        Children::Two(a, b) => count_memo(a, memo)
            .saturating_add(count_memo(b, memo))
            .saturating_add(1),
    };
    memo.insert(f as *const Formula, c);
    c
}

impl From<&str> for Formula {
    fn from(name: &str) -> Self {
        Formula::var(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn subformulas_of_examples() {
        let bx = p("[]x");
        let subs: Vec<_> = bx.subformulas().into_iter().collect();
        assert_eq!(subs.len(), 2);
        assert!(subs.contains(&Formula::var("x")));

        let contra = p("x & ~x");
        let subs = contra.subformulas();
        assert_eq!(subs.len(), 3);
        assert!(subs.contains(&p("~x")));

        // []x | []~x : the disjunction, []x, []~x, ~x, x
        assert_eq!(p("[]x | []~x").subformulas().len(), 5);
    }

    #[test]
    fn depth_vars_and_size() {
        let lemmon = p("[]([]x1 -> x2) | []([]x2 -> x1)");
        assert_eq!(lemmon.modal_depth(), 2);
        assert_eq!(
            lemmon.vars().into_iter().collect::<Vec<_>>(),
            alloc::vec!["x1".to_string(), "x2".to_string()]
        );
        assert_eq!(lemmon.node_count(), 11);
        assert_eq!(Formula::conj([]), Formula::Top);
        assert_eq!(Formula::disj([]), Formula::Bot);
    }
}
