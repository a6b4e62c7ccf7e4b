use super::Formula;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

/// A finite map from variable names to formulas, applied simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution {
    bindings: BTreeMap<String, Formula>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity_on<'a, I: IntoIterator<Item = &'a String>>(vars: I) -> Self {
        vars.into_iter()
            .map(|v| (v.clone(), Formula::Var(v.clone())))
            .collect()
    }

    pub fn insert(&mut self, var: impl Into<String>, value: Formula) -> Option<Formula> {
        self.bindings.insert(var.into(), value)
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.bindings.get(var)
    }

    /// Image of `var`; variables outside the domain are fixed.
    pub fn image(&self, var: &str) -> Formula {
        self.bindings
            .get(var)
            .cloned()
            .unwrap_or_else(|| Formula::var(var))
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.bindings.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
        self.bindings.iter()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Adds identity bindings for every variable of `vars` not yet bound.
    pub fn padded<'a, I: IntoIterator<Item = &'a String>>(&self, vars: I) -> Self {
        let mut out = self.clone();
        for v in vars {
            out.bindings
                .entry(v.clone())
                .or_insert_with(|| Formula::Var(v.clone()));
        }
        out
    }

    /// Keeps only the bindings for `vars`, padding identities where missing.
    pub fn restricted<'a, I: IntoIterator<Item = &'a String>>(&self, vars: I) -> Self {
        vars.into_iter()
            .map(|v| (v.clone(), self.image(v)))
            .collect()
    }

    /// Variables occurring in the images of `vars`.
    pub fn range_vars<'a, I: IntoIterator<Item = &'a String>>(&self, vars: I) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for v in vars {
            out.extend(self.image(v).vars());
        }
        out
    }

    /// Simultaneous replacement of every bound variable.
    pub fn apply(&self, phi: &Formula) -> Formula {
        let mut memo = BTreeMap::new();
        apply_node(self, phi, &mut memo)
    }

    /// `outer ∘ self`: first `self`, then `outer`.
    pub fn then(&self, outer: &Substitution) -> Substitution {
        let mut out: Substitution = self
            .bindings
            .iter()
            .map(|(v, f)| (v.clone(), outer.apply(f)))
            .collect();
        for (v, f) in &outer.bindings {
            out.bindings.entry(v.clone()).or_insert_with(|| f.clone());
        }
        out
    }

    /// True when every binding maps to a constant.
    pub fn is_ground(&self) -> bool {
        self.bindings
            .values()
            .all(|f| matches!(f, Formula::Top | Formula::Bot))
    }
}

type Memo = BTreeMap<*const Formula, Arc<Formula>>;

fn apply_child(s: &Substitution, child: &Arc<Formula>, memo: &mut Memo) -> Arc<Formula> {
    let key = Arc::as_ptr(child);
    if let Some(done) = memo.get(&key) {
        return done.clone();
    }
    let out = Arc::new(apply_node(s, child, memo));
    memo.insert(key, out.clone());
    out
}

fn apply_node(s: &Substitution, f: &Formula, memo: &mut Memo) -> Formula {
    match f {
        Formula::Var(name) => s.image(name),
        Formula::Top | Formula::Bot => f.clone(),
        Formula::Not(a) => Formula::Not(apply_child(s, a, memo)),
        Formula::Box(a) => Formula::Box(apply_child(s, a, memo)),
        Formula::Diamond(a) => Formula::Diamond(apply_child(s, a, memo)),
        Formula::And(a, b) => Formula::And(apply_child(s, a, memo), apply_child(s, b, memo)),
        Formula::Or(a, b) => Formula::Or(apply_child(s, a, memo), apply_child(s, b, memo)),
        Formula::Implies(a, b) => {
            Formula::Implies(apply_child(s, a, memo), apply_child(s, b, memo))
        }
        Formula::Iff(a, b) => Formula::Iff(apply_child(s, a, memo), apply_child(s, b, memo)),
    }
}

impl FromIterator<(String, Formula)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (String, Formula)>>(iter: T) -> Self {
        Substitution {
            bindings: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, img)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} := {img}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use alloc::string::ToString;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn ground_instance_of_box_or_box_not() {
        let s: Substitution = [("x".to_string(), Formula::Bot)].into_iter().collect();
        assert_eq!(s.apply(&p("[]x | []~x")).to_string(), "[]false | []~false");
    }

    #[test]
    fn empty_substitution_is_identity() {
        let phi = p("[]([]x1 -> x2) | []([]x2 -> x1)");
        assert_eq!(Substitution::new().apply(&phi), phi);
    }

    #[test]
    fn replacement_is_simultaneous() {
        let s: Substitution = [
            ("p".to_string(), Formula::var("q")),
            ("q".to_string(), Formula::var("p")),
        ]
        .into_iter()
        .collect();
        assert_eq!(s.apply(&p("p & q")), p("q & p"));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let inner: Substitution = [("x".to_string(), p("[]y -> x"))].into_iter().collect();
        let outer: Substitution = [("x".to_string(), p("~z")), ("y".to_string(), p("<>x"))]
            .into_iter()
            .collect();
        let phi = p("x & []y");
        assert_eq!(
            inner.then(&outer).apply(&phi),
            outer.apply(&inner.apply(&phi))
        );
    }

    #[test]
    fn shared_subterms_stay_shared() {
        // 2^40 tree nodes, built with sharing; apply must not unfold it.
        let mut f = Formula::var("x");
        for _ in 0..40 {
            let a = Arc::new(f);
            f = Formula::And(a.clone(), a);
        }
        let s: Substitution = [("x".to_string(), Formula::Top)].into_iter().collect();
        let g = s.apply(&f);
        assert_eq!(g.node_count(), (1u64 << 41) - 1);
        assert!(g.vars().is_empty());
    }
}
