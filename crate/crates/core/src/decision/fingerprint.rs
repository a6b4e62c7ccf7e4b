//! Truth tables of formulas over a fixed variable set, evaluated on many
//! family models at once.
//!
//! For PM2..PM5 the models are every frame `m <= 2^n` of the family with
//! every canonical valuation, exactly the models `member` inspects, so two
//! formulas over the variables get equal fingerprints iff they are
//! equivalent in the logic. PM1 chains are only sampled (chains without
//! two adjacent equal valuations, up to the size cap), which makes its
//! fingerprints a necessary condition only.

use crate::formula::{Children, Formula};
use crate::kripke::{make_frame, Frame, ValuationCursor};
use crate::logic::Logic;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Truth values at every world of every test model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint(Vec<u64>);

struct Component {
    frame: Frame,
    offset: usize,
    stride: usize,
}

impl Component {
    fn world(&self, w: usize) -> core::ops::Range<usize> {
        let start = self.offset + w * self.stride;
        start..start + self.stride
    }
}

pub struct Fingerprinter {
    vars: Vec<String>,
    components: Vec<Component>,
    mask: Vec<u64>,
    var_prints: Vec<Fingerprint>,
    exact: bool,
}

/// Default cap on fingerprint length in bits.
pub const DEFAULT_MAX_BITS: usize = 1 << 18;

impl Fingerprinter {
    pub fn new(logic: Logic, vars: &[String], max_bits: usize) -> Fingerprinter {
        let n = vars.len();
        assert!(n < 32, "fingerprints need fewer than 32 variables");
        let mut models: Vec<(Frame, Vec<Vec<u64>>)> = Vec::new();
        let mut bits = 0usize;
        let mut exact = true;
        match logic {
            Logic::Pm1 => {
                let codes = 1u64 << n;
                let mut m = 1;
                loop {
                    let frame = make_frame(logic, m).expect("m >= 1");
                    let vals = alternating_chains(m, codes);
                    if vals.is_empty() {
                        break;
                    }
                    let cost = words_for(vals.len()) * 64 * m;
                    if bits + cost > max_bits {
                        exact = false;
                        break;
                    }
                    bits += cost;
                    models.push((frame, vals));
                    m += 1;
                }
                if n > 0 {
                    exact = false;
                }
            }
            _ => {
                for m in 1..=(1usize << n) {
                    let frame = make_frame(logic, m).expect("m >= 1");
                    let mut vals = Vec::new();
                    if let Some(mut cur) = ValuationCursor::new(&frame, n, true, true) {
                        loop {
                            vals.push(cur.codes().to_vec());
                            if !cur.advance() {
                                break;
                            }
                        }
                    }
                    let cost = words_for(vals.len()) * 64 * frame.size();
                    if bits + cost > max_bits {
                        exact = false;
                        break;
                    }
                    bits += cost;
                    models.push((frame, vals));
                }
            }
        }

        let mut components = Vec::new();
        let mut offset = 0;
        let mut mask = Vec::new();
        let mut var_prints = alloc::vec![Vec::new(); n];
        for (frame, vals) in models {
            let stride = words_for(vals.len());
            for w in frame.worlds() {
                let mut m = alloc::vec![0u64; stride];
                for j in 0..vals.len() {
                    m[j / 64] |= 1 << (j % 64);
                }
                mask.extend_from_slice(&m);
                for (var, print) in var_prints.iter_mut().enumerate() {
                    let mut words = alloc::vec![0u64; stride];
                    for (j, codes) in vals.iter().enumerate() {
                        if codes[w] >> var & 1 == 1 {
                            words[j / 64] |= 1 << (j % 64);
                        }
                    }
                    print.extend_from_slice(&words);
                }
            }
            let size = frame.size();
            components.push(Component {
                frame,
                offset,
                stride,
            });
            offset += stride * size;
        }
        Fingerprinter {
            vars: vars.to_vec(),
            components,
            mask,
            var_prints: var_prints.into_iter().map(Fingerprint).collect(),
            exact,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Whether equal fingerprints imply equivalence.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn top(&self) -> Fingerprint {
        Fingerprint(self.mask.clone())
    }

    pub fn bot(&self) -> Fingerprint {
        Fingerprint(alloc::vec![0; self.mask.len()])
    }

    pub fn var(&self, name: &str) -> Option<&Fingerprint> {
        let i = self.vars.iter().position(|v| v == name)?;
        Some(&self.var_prints[i])
    }

    pub fn is_valid(&self, f: &Fingerprint) -> bool {
        f.0 == self.mask
    }

    pub fn not(&self, a: &Fingerprint) -> Fingerprint {
        Fingerprint(a.0.iter().zip(&self.mask).map(|(x, m)| !x & m).collect())
    }

    fn zip(&self, a: &Fingerprint, b: &Fingerprint, f: impl Fn(u64, u64) -> u64) -> Fingerprint {
        Fingerprint(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.mask)
                .map(|((x, y), m)| f(*x, *y) & m)
                .collect(),
        )
    }

    pub fn and(&self, a: &Fingerprint, b: &Fingerprint) -> Fingerprint {
        self.zip(a, b, |x, y| x & y)
    }

    pub fn or(&self, a: &Fingerprint, b: &Fingerprint) -> Fingerprint {
        self.zip(a, b, |x, y| x | y)
    }

    pub fn implies(&self, a: &Fingerprint, b: &Fingerprint) -> Fingerprint {
        self.zip(a, b, |x, y| !x | y)
    }

    pub fn iff(&self, a: &Fingerprint, b: &Fingerprint) -> Fingerprint {
        self.zip(a, b, |x, y| !(x ^ y))
    }

    pub fn boxed(&self, a: &Fingerprint) -> Fingerprint {
        self.modal(a, true)
    }

    pub fn diamond(&self, a: &Fingerprint) -> Fingerprint {
        self.modal(a, false)
    }

    fn modal(&self, a: &Fingerprint, universal: bool) -> Fingerprint {
        let mut out = alloc::vec![0u64; a.0.len()];
        for comp in &self.components {
            for w in comp.frame.worlds() {
                let dst = comp.world(w);
                let mut acc: Vec<u64> = if universal {
                    self.mask[dst.clone()].to_vec()
                } else {
                    alloc::vec![0; comp.stride]
                };
                for v in comp.frame.successors(w).iter() {
                    for (x, y) in acc.iter_mut().zip(&a.0[comp.world(v)]) {
                        if universal {
                            *x &= y;
                        } else {
                            *x |= y;
                        }
                    }
                }
                out[dst].copy_from_slice(&acc);
            }
        }
        Fingerprint(out)
    }

    /// Fingerprint of `phi`, reading variables first from `env`, then from
    /// the fingerprinter's own variables. `None` if a variable is unknown.
    pub fn eval_with(
        &self,
        phi: &Formula,
        env: &BTreeMap<String, Fingerprint>,
    ) -> Option<Fingerprint> {
        let mut memo = BTreeMap::new();
        self.eval_node(phi, env, &mut memo)
    }

    pub fn eval(&self, phi: &Formula) -> Option<Fingerprint> {
        self.eval_with(phi, &BTreeMap::new())
    }

    fn eval_node(
        &self,
        f: &Formula,
        env: &BTreeMap<String, Fingerprint>,
        memo: &mut BTreeMap<*const Formula, Fingerprint>,
    ) -> Option<Fingerprint> {
        let key = f as *const Formula;
        if let Some(done) = memo.get(&key) {
            return Some(done.clone());
        }
        let out = match f {
            Formula::Var(name) => env.get(name).or_else(|| self.var(name))?.clone(),
            Formula::Top => self.top(),
            Formula::Bot => self.bot(),
            _ => match f.children() {
                Children::One(a) => {
                    let a = self.eval_node(a, env, memo)?;
                    match f {
                        Formula::Not(_) => self.not(&a),
                        Formula::Box(_) => self.boxed(&a),
                        _ => self.diamond(&a),
                    }
                }
                Children::Two(a, b) => {
                    let a = self.eval_node(a, env, memo)?;
                    let b = self.eval_node(b, env, memo)?;
                    match f {
                        Formula::And(..) => self.and(&a, &b),
                        Formula::Or(..) => self.or(&a, &b),
                        Formula::Implies(..) => self.implies(&a, &b),
                        _ => self.iff(&a, &b),
                    }
                }
                Children::Zero => unreachable!(),
            },
        };
        memo.insert(key, out.clone());
        Some(out)
    }
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64).max(1)
}

/// Code sequences of length `m` with no two adjacent codes equal.
fn alternating_chains(m: usize, codes: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = (0..codes).map(|c| alloc::vec![c]).collect();
    for _ in 1..m {
        let mut next = Vec::new();
        for seq in &out {
            let last = *seq.last().unwrap();
            for c in (0..codes).filter(|&c| c != last) {
                let mut s = seq.clone();
                s.push(c);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::equivalent;
    use crate::formula::parse;
    use alloc::string::ToString;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn exact_fingerprints_agree_with_membership() {
        let vars = ["p".to_string(), "q".to_string()];
        let formulas = [
            "[]<>p",
            "<>[]p",
            "<>p",
            "[]p",
            "p",
            "[](p -> q)",
            "[]p -> []q",
            "<>(p & []q)",
            "[]<>p & <>[]q",
            "~[]~p",
        ];
        for logic in [Logic::Pm2, Logic::Pm3, Logic::Pm4, Logic::Pm5] {
            let fp = Fingerprinter::new(logic, &vars, DEFAULT_MAX_BITS);
            assert!(fp.is_exact());
            for a in formulas {
                for b in formulas {
                    let same = fp.eval(&p(a)) == fp.eval(&p(b));
                    assert_eq!(
                        same,
                        equivalent(logic, &p(a), &p(b)).unwrap(),
                        "{logic}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn validity_is_the_full_print() {
        let vars = ["p".to_string()];
        let fp = Fingerprinter::new(Logic::Pm5, &vars, DEFAULT_MAX_BITS);
        assert!(fp.is_valid(&fp.eval(&p("p -> []<>p")).unwrap()));
        assert!(!fp.is_valid(&fp.eval(&p("[]<>p -> <>[]p")).unwrap()));
        assert!(fp.eval(&p("q")).is_none());
    }

    #[test]
    fn environment_overrides_variables() {
        let vars = ["p".to_string()];
        let fp = Fingerprinter::new(Logic::Pm2, &vars, DEFAULT_MAX_BITS);
        let mut env = BTreeMap::new();
        env.insert("x".to_string(), fp.eval(&p("[]p")).unwrap());
        assert_eq!(fp.eval_with(&p("<>x"), &env), fp.eval(&p("<>[]p")));
    }

    #[test]
    fn pm1_sample_is_sound_for_refutation() {
        let vars = ["p".to_string()];
        let fp = Fingerprinter::new(Logic::Pm1, &vars, DEFAULT_MAX_BITS);
        assert!(!fp.is_exact());
        assert!(fp.is_valid(&fp.eval(&crate::logic::axioms::grz()).unwrap()));
        assert!(!fp.is_valid(&fp.eval(&p("<>p -> p")).unwrap()));
    }
}
