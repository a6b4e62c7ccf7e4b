//! Reduced normal form: a disjunction of complete sign patterns over the
//! literals `x` and `<>x`.
//!
//! Every modal argument that is not already a variable gets a fresh
//! variable standing for it (`[]a` is read as `~<>~a`). A pattern fixes the
//! truth of every variable and every `<>x`; it is kept when it respects
//! reflexivity (`x` implies `<>x`), agrees with the fresh variables'
//! definitions, and makes the formula true. A model validates the rnf iff
//! it validates the formula once fresh variables are read as their
//! definitions.

use crate::formula::{Children, Formula, Substitution};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One disjunct: bit `i` of `pos` says `x_i` is true, bit `i`
/// of `dia` says `<>x_i` is true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RnfDisjunct {
    pub pos: u64,
    pub dia: u64,
}

impl RnfDisjunct {
    /// `(t(j,i,0), t(j,i,1))` for variable `i`; 0 means the positive literal.
    pub fn signs(&self, i: usize) -> (u8, u8) {
        (
            u8::from(self.pos >> i & 1 == 0),
            u8::from(self.dia >> i & 1 == 0),
        )
    }

    /// Variables occurring positively outside `<>`.
    pub fn theta1(&self) -> u64 {
        self.pos
    }

    /// Variables occurring positively under `<>`.
    pub fn theta2(&self) -> u64 {
        self.dia
    }

    /// The conjunction `x_i^t ∧ (<>x_i)^t` over `vars`.
    pub fn to_formula(&self, vars: &[Formula]) -> Formula {
        Formula::conj(vars.iter().enumerate().flat_map(|(i, x)| {
            let lit = |on: bool, f: Formula| if on { f } else { Formula::not(f) };
            [
                lit(self.pos >> i & 1 == 1, x.clone()),
                lit(self.dia >> i & 1 == 1, Formula::diamond(x.clone())),
            ]
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnfFormula {
    /// Original variables (sorted) followed by fresh ones.
    vars: Vec<String>,
    originals: usize,
    /// Fresh variable and the original subformula it stands for.
    definitions: Vec<(String, Formula)>,
    disjuncts: Vec<RnfDisjunct>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RnfError {
    /// More variables than the enumeration can handle.
    TooManyVariables {
        vars: usize,
        limit: usize,
    },
    TooManyDisjuncts {
        limit: usize,
    },
}

impl fmt::Display for RnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RnfError::TooManyVariables { vars, limit } => write!(
                f,
                "rnf needs {vars} variables (original plus fresh), more than the limit of {limit}"
            ),
            RnfError::TooManyDisjuncts { limit } => {
                write!(f, "rnf has more than {limit} disjuncts")
            }
        }
    }
}

impl core::error::Error for RnfError {}

/// Default cap on the number of disjuncts.
pub const DEFAULT_MAX_DISJUNCTS: usize = 4096;
/// Patterns enumerated are `2^(originals + all variables)`.
const MAX_PATTERN_BITS: usize = 24;

impl RnfFormula {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn original_vars(&self) -> &[String] {
        &self.vars[..self.originals]
    }

    /// Fresh variables with the subformulas they replace.
    pub fn fresh_var_map(&self) -> &[(String, Formula)] {
        &self.definitions
    }

    pub fn disjuncts(&self) -> &[RnfDisjunct] {
        &self.disjuncts
    }

    pub fn var_formulas(&self) -> Vec<Formula> {
        self.vars.iter().map(|v| Formula::var(v.clone())).collect()
    }

    /// The disjunction of all disjuncts.
    pub fn to_formula(&self) -> Formula {
        let vars = self.var_formulas();
        Formula::disj(self.disjuncts.iter().map(|d| d.to_formula(&vars)))
    }

    /// Replaces each fresh variable by the subformula it stands for.
    pub fn expansion(&self) -> Substitution {
        self.definitions.iter().cloned().collect()
    }

    /// Sets of variable indices as names.
    pub fn names(&self, mask: u64) -> BTreeSet<&str> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.as_str())
            .collect()
    }
}

impl fmt::Display for RnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disjuncts.is_empty() {
            return write!(f, "false");
        }
        let vars = self.var_formulas();
        for (j, d) in self.disjuncts.iter().enumerate() {
            if j > 0 {
                write!(f, "\n| ")?;
            }
            write!(f, "({})", d.to_formula(&vars))?;
        }
        Ok(())
    }
}

/// Structure of the formula with modal subformulas reduced to `<>` of a
/// variable index.
enum Shape {
    Var(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Dia(usize),
}

struct Builder {
    vars: Vec<String>,
    index: BTreeMap<String, usize>,
    definitions: Vec<(String, Formula)>,
    /// Shape node of each fresh variable's definition, by variable index.
    defining: BTreeMap<usize, usize>,
    fresh_of: BTreeMap<Formula, usize>,
    nodes: Vec<Shape>,
    memo: BTreeMap<*const Formula, usize>,
    prefix: String,
    counter: usize,
}

impl Builder {
    fn push(&mut self, s: Shape) -> usize {
        self.nodes.push(s);
        self.nodes.len() - 1
    }

    fn shape(&mut self, f: &Formula) -> usize {
        let key = f as *const Formula;
        if let Some(&n) = self.memo.get(&key) {
            return n;
        }
        let n = match f {
            Formula::Var(v) => {
                let i = self.index[v];
                self.push(Shape::Var(i))
            }
            Formula::Top => self.push(Shape::Const(true)),
            Formula::Bot => self.push(Shape::Const(false)),
            Formula::Diamond(a) => {
                let v = self.argument(a, false);
                self.push(Shape::Dia(v))
            }
            Formula::Box(a) => {
                let v = self.argument(a, true);
                let d = self.push(Shape::Dia(v));
                self.push(Shape::Not(d))
            }
            _ => match f.children() {
                Children::One(a) => {
                    let a = self.shape(a);
                    self.push(Shape::Not(a))
                }
                Children::Two(a, b) => {
                    let (a, b) = (self.shape(a), self.shape(b));
                    self.push(match f {
                        Formula::And(..) => Shape::And(a, b),
                        Formula::Or(..) => Shape::Or(a, b),
                        Formula::Implies(..) => Shape::Implies(a, b),
                        _ => Shape::Iff(a, b),
                    })
                }
                Children::Zero => unreachable!(),
            },
        };
        self.memo.insert(key, n);
        n
    }

    /// Variable index standing for the modal argument `a`, or `~a` when
    /// `negated`.
    fn argument(&mut self, a: &Formula, negated: bool) -> usize {
        match (a, negated) {
            (Formula::Var(v), false) => return self.index[v],
            (Formula::Not(b), true) => return self.argument(b, false),
            _ => {}
        }
        let arg = if negated {
            Formula::not(a.clone())
        } else {
            a.clone()
        };
        if let Some(&i) = self.fresh_of.get(&arg) {
            return i;
        }
        let body = self.shape(a);
        let body = if negated {
            self.push(Shape::Not(body))
        } else {
            body
        };
        self.counter += 1;
        let name = format!("{}{}", self.prefix, self.counter);
        let i = self.vars.len();
        self.vars.push(name.clone());
        self.index.insert(name.clone(), i);
        self.definitions.push((name, arg.clone()));
        self.defining.insert(i, body);
        self.fresh_of.insert(arg, i);
        i
    }
}

/// A prefix no original variable starts with, so fresh names never clash.
fn fresh_prefix(vars: &BTreeSet<String>) -> String {
    let mut prefix = String::from("r");
    while vars.iter().any(|v| v.starts_with(&prefix)) {
        prefix.push('r');
    }
    prefix
}

pub fn to_rnf(phi: &Formula) -> Result<RnfFormula, RnfError> {
    to_rnf_with(phi, DEFAULT_MAX_DISJUNCTS)
}

pub fn to_rnf_with(phi: &Formula, max_disjuncts: usize) -> Result<RnfFormula, RnfError> {
    let originals = phi.vars();
    let mut b = Builder {
        vars: originals.iter().cloned().collect(),
        index: originals
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect(),
        definitions: Vec::new(),
        defining: BTreeMap::new(),
        fresh_of: BTreeMap::new(),
        nodes: Vec::new(),
        memo: BTreeMap::new(),
        prefix: fresh_prefix(&originals),
        counter: 0,
    };
    let root = b.shape(phi);
    let n = originals.len();
    let total = b.vars.len();
    if n + total > MAX_PATTERN_BITS {
        return Err(RnfError::TooManyVariables {
            vars: total,
            limit: MAX_PATTERN_BITS - n,
        });
    }

    let mut disjuncts = Vec::new();
    let mut values = alloc::vec![false; b.nodes.len()];
    for dia in 0..1u64 << total {
        for xs in 0..1u64 << n {
            // Node values given the originals and every <> literal; fresh
            // variables are filled in from their definitions, which only
            // mention originals and <> literals.
            for (k, s) in b.nodes.iter().enumerate() {
                values[k] = match *s {
                    Shape::Var(i) => xs >> i & 1 == 1,
                    Shape::Const(c) => c,
                    Shape::Not(a) => !values[a],
                    Shape::And(a, c) => values[a] && values[c],
                    Shape::Or(a, c) => values[a] || values[c],
                    Shape::Implies(a, c) => !values[a] || values[c],
                    Shape::Iff(a, c) => values[a] == values[c],
                    Shape::Dia(v) => dia >> v & 1 == 1,
                };
            }
            if !values[root] {
                continue;
            }
            let mut pos = xs;
            for (&i, &body) in &b.defining {
                if values[body] {
                    pos |= 1 << i;
                }
            }
            if pos & !dia != 0 {
                continue;
            }
            if disjuncts.len() == max_disjuncts {
                return Err(RnfError::TooManyDisjuncts {
                    limit: max_disjuncts,
                });
            }
            disjuncts.push(RnfDisjunct { pos, dia });
        }
    }
    disjuncts.sort();
    Ok(RnfFormula {
        vars: b.vars,
        originals: n,
        definitions: b.definitions,
        disjuncts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn atom() {
        let r = to_rnf(&p("x")).unwrap();
        assert!(r.fresh_var_map().is_empty());
        assert_eq!(r.disjuncts(), [RnfDisjunct { pos: 1, dia: 1 }]);
        assert_eq!(r.disjuncts()[0].signs(0), (0, 0));
        assert_eq!(r.to_formula(), p("x & <>x"));
    }

    #[test]
    fn top_keeps_every_reflexive_pattern() {
        let r = to_rnf(&p("true | x")).unwrap();
        // (x, <>x) in {(0,0), (0,1), (1,1)}
        assert_eq!(r.disjuncts().len(), 3);
    }

    #[test]
    fn box_gets_a_fresh_variable() {
        let r = to_rnf(&p("[]x")).unwrap();
        assert_eq!(r.fresh_var_map(), [("r1".into(), p("~x"))]);
        // r1 = ~x, and []x means ~<>r1.
        for d in r.disjuncts() {
            assert_eq!(d.dia & 0b10, 0);
            assert_eq!(d.pos, 0b01);
        }
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let r = to_rnf(&p("[]r1 | rr")).unwrap();
        assert!(r.fresh_var_map().iter().all(|(v, _)| v.starts_with("rrr")));
    }

    #[test]
    fn contradiction_is_empty() {
        let r = to_rnf(&p("x & ~x")).unwrap();
        assert!(r.disjuncts().is_empty());
        assert_eq!(r.to_formula(), Formula::Bot);
    }

    #[test]
    fn box_or_box_not_has_two_patterns() {
        let r = to_rnf(&p("[]x | []~x")).unwrap();
        assert_eq!(r.disjuncts().len(), 2);
        let all_positive = r
            .disjuncts()
            .iter()
            .any(|d| d.pos & 1 == 1 && d.dia & 1 == 1);
        assert!(all_positive);
    }

    #[test]
    fn caps() {
        assert_eq!(
            to_rnf_with(&p("true | x"), 2),
            Err(RnfError::TooManyDisjuncts { limit: 2 })
        );
    }
}
