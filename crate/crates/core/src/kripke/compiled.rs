//! Formulas flattened into a hash-consed DAG for repeated evaluation.

use super::Frame;
use crate::formula::{Children, Formula};
use crate::worldset::WorldSet;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Node {
    Var(usize),
    Top,
    Bot,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Box(usize),
    Diamond(usize),
}

/// A formula as a topologically ordered node list; children precede parents.
#[derive(Clone, Debug)]
pub struct Compiled {
    nodes: Vec<Node>,
    root: usize,
    vars: Vec<String>,
}

impl Compiled {
    /// Compiles `phi` with its variables in sorted order.
    pub fn new(phi: &Formula) -> Compiled {
        let vars: Vec<String> = phi.vars().into_iter().collect();
        Self::with_vars(phi, &vars)
    }

    /// Compiles `phi` against a fixed variable order. Variables of `phi`
    /// missing from `vars` are appended.
    pub fn with_vars(phi: &Formula, vars: &[String]) -> Compiled {
        let mut b = Builder {
            nodes: Vec::new(),
            interned: BTreeMap::new(),
            by_ptr: BTreeMap::new(),
            var_index: vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), i))
                .collect(),
            vars: vars.to_vec(),
        };
        let root = b.add(phi);
        Compiled {
            nodes: b.nodes,
            root,
            vars: b.vars,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Number of distinct subformulas.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub(crate) fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub(crate) fn root(&self) -> usize {
        self.root
    }
}

struct Builder {
    nodes: Vec<Node>,
    interned: BTreeMap<Node, usize>,
    by_ptr: BTreeMap<*const Formula, usize>,
    var_index: BTreeMap<String, usize>,
    vars: Vec<String>,
}

impl Builder {
    fn intern(&mut self, node: Node) -> usize {
        if let Some(&i) = self.interned.get(&node) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(node);
        self.interned.insert(node, i);
        i
    }

    fn add(&mut self, f: &Formula) -> usize {
        let key = f as *const Formula;
        if let Some(&i) = self.by_ptr.get(&key) {
            return i;
        }
        let node = match f {
            Formula::Var(name) => {
                let idx = match self.var_index.get(name) {
                    Some(&i) => i,
                    None => {
                        let i = self.vars.len();
                        self.vars.push(name.clone());
                        self.var_index.insert(name.clone(), i);
                        i
                    }
                };
                Node::Var(idx)
            }
            Formula::Top => Node::Top,
            Formula::Bot => Node::Bot,
            _ => match f.children() {
                Children::One(a) => {
                    let a = self.add(a);
                    match f {
                        Formula::Not(_) => Node::Not(a),
                        Formula::Box(_) => Node::Box(a),
                        _ => Node::Diamond(a),
                    }
                }
                Children::Two(a, b) => {
                    let (a, b) = (self.add(a), self.add(b));
                    match f {
                        Formula::And(..) => Node::And(a, b),
                        Formula::Or(..) => Node::Or(a, b),
                        Formula::Implies(..) => Node::Implies(a, b),
                        _ => Node::Iff(a, b),
                    }
                }
                Children::Zero => unreachable!("atoms handled above"),
            },
        };
        let i = self.intern(node);
        self.by_ptr.insert(key, i);
        i
    }
}

/// Bit-parallel evaluator of compiled formulas on one frame.
pub struct Evaluator<'f> {
    frame: &'f Frame,
    words: usize,
    full: Vec<u64>,
    buf: Vec<u64>,
}

impl<'f> Evaluator<'f> {
    pub fn new(frame: &'f Frame) -> Self {
        let full = WorldSet::full(frame.size());
        Evaluator {
            frame,
            words: full.words().len(),
            full: full.words().to_vec(),
            buf: Vec::new(),
        }
    }

    pub fn frame(&self) -> &'f Frame {
        self.frame
    }

    /// Truth set of the root under `sets[i]` for variable `i`; missing
    /// variables are false everywhere.
    pub fn truth_set(&mut self, c: &Compiled, sets: &[WorldSet]) -> WorldSet {
        self.run(c, |var, out| {
            if let Some(s) = sets.get(var) {
                out.copy_from_slice(s.words());
            } else {
                out.fill(0);
            }
        });
        self.root_set(c)
    }

    /// Truth set of the root when world `w` makes exactly the variables
    /// in bit mask `codes[w]` true.
    pub fn truth_set_codes(&mut self, c: &Compiled, codes: &[u64]) -> WorldSet {
        self.run(c, |var, out| {
            out.fill(0);
            for (w, &code) in codes.iter().enumerate() {
                if code >> var & 1 == 1 {
                    out[w / 64] |= 1 << (w % 64);
                }
            }
        });
        self.root_set(c)
    }

    /// True when the root holds at every world.
    pub fn holds_everywhere_codes(&mut self, c: &Compiled, codes: &[u64]) -> bool {
        self.truth_set_codes(c, codes).is_full()
    }

    fn root_set(&self, c: &Compiled) -> WorldSet {
        let mut out = WorldSet::empty(self.frame.size());
        let k = self.words;
        out.words_mut()
            .copy_from_slice(&self.buf[c.root * k..(c.root + 1) * k]);
        out
    }

    fn run(&mut self, c: &Compiled, mut set_var: impl FnMut(usize, &mut [u64])) {
        let k = self.words;
        self.buf.clear();
        self.buf.resize(c.nodes.len() * k, 0);
        for (i, node) in c.nodes.iter().enumerate() {
            let (done, rest) = self.buf.split_at_mut(i * k);
            let out = &mut rest[..k];
            let get = |j: usize| &done[j * k..(j + 1) * k];
            match *node {
                Node::Var(v) => set_var(v, out),
                Node::Top => out.copy_from_slice(&self.full),
                Node::Bot => out.fill(0),
                Node::Not(a) => {
                    for (o, (x, m)) in out.iter_mut().zip(get(a).iter().zip(&self.full)) {
                        *o = !x & m;
                    }
                }
                Node::And(a, b) => zip2(out, get(a), get(b), |x, y| x & y),
                Node::Or(a, b) => zip2(out, get(a), get(b), |x, y| x | y),
                Node::Implies(a, b) => {
                    zip2(out, get(a), get(b), |x, y| !x | y);
                    mask(out, &self.full);
                }
                Node::Iff(a, b) => {
                    zip2(out, get(a), get(b), |x, y| !(x ^ y));
                    mask(out, &self.full);
                }
                Node::Box(a) => {
                    let s = get(a);
                    out.fill(0);
                    for w in 0..self.frame.size() {
                        let row = self.frame.successors(w).words();
                        if row.iter().zip(s).all(|(r, x)| r & !x == 0) {
                            out[w / 64] |= 1 << (w % 64);
                        }
                    }
                }
                Node::Diamond(a) => {
                    let s = get(a);
                    out.fill(0);
                    for w in 0..self.frame.size() {
                        let row = self.frame.successors(w).words();
                        if row.iter().zip(s).any(|(r, x)| r & x != 0) {
                            out[w / 64] |= 1 << (w % 64);
                        }
                    }
                }
            }
        }
    }
}

#[inline]
fn zip2(out: &mut [u64], a: &[u64], b: &[u64], f: impl Fn(u64, u64) -> u64) {
    for (o, (x, y)) in out.iter_mut().zip(a.iter().zip(b)) {
        *o = f(*x, *y);
    }
}

#[inline]
fn mask(out: &mut [u64], full: &[u64]) {
    for (o, m) in out.iter_mut().zip(full) {
        *o &= m;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::make_frame;
    use crate::logic::Logic;
    use alloc::sync::Arc;

    #[test]
    fn shared_dag_compiles_linearly() {
        let mut f = Formula::var("x");
        for _ in 0..50 {
            let a = Arc::new(f);
            f = Formula::Or(a.clone(), Arc::new(Formula::Box(a)));
        }
        let c = Compiled::new(&f);
        assert_eq!(c.len(), 1 + 2 * 50);
    }

    #[test]
    fn structurally_equal_subterms_are_merged() {
        let c = Compiled::new(&parse("[]x | []x").unwrap());
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn codes_and_sets_agree() {
        let f = make_frame(Logic::Pm4, 70).unwrap();
        let c = Compiled::new(&parse("<>[]p -> q").unwrap());
        let codes: Vec<u64> = (0..f.size() as u64).map(|w| w % 4).collect();
        let mut ev = Evaluator::new(&f);
        let by_codes = ev.truth_set_codes(&c, &codes);
        let p = WorldSet::from_worlds(f.size(), (0..f.size()).filter(|w| (w % 4) & 1 == 1));
        let q = WorldSet::from_worlds(f.size(), (0..f.size()).filter(|w| (w % 4) & 2 == 2));
        assert_eq!(ev.truth_set(&c, &[p, q]), by_codes);
        // p is false at the top (code 2), which every world sees, so <>[]p fails everywhere.
        assert!(by_codes.is_full());
    }
}
