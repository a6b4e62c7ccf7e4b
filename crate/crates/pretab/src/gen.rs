//! Seeded random formulas for corpora.

use pretab_core::Formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub vars: usize,
    pub max_depth: usize,
    /// Connective budget; the tree has at most this many inner nodes.
    pub max_ops: usize,
}

pub struct FormulaGen {
    rng: ChaCha8Rng,
    names: Vec<String>,
    shape: Shape,
}

impl FormulaGen {
    /// Variables are `x1..xn`.
    pub fn new(seed: u64, shape: Shape) -> FormulaGen {
        FormulaGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            names: (1..=shape.vars).map(|i| format!("x{i}")).collect(),
            shape,
        }
    }

    pub fn next_formula(&mut self) -> Formula {
        let ops = self.rng.random_range(1..=self.shape.max_ops.max(1));
        self.build(ops, self.shape.max_depth)
    }

    fn leaf(&mut self) -> Formula {
        if self.names.is_empty() || self.rng.random_ratio(1, 8) {
            Formula::constant(self.rng.random())
        } else {
            let i = self.rng.random_range(0..self.names.len());
            Formula::var(self.names[i].clone())
        }
    }

    fn build(&mut self, ops: usize, depth: usize) -> Formula {
        if ops == 0 {
            return self.leaf();
        }
        let pick = self.rng.random_range(0..if depth > 0 { 8 } else { 5 });
        let unary = |g: &mut Self| g.build(ops - 1, depth);
        match pick {
            0 => Formula::not(unary(self)),
            1..=4 => {
                let left = self.rng.random_range(0..ops);
                let a = self.build(left, depth);
                let b = self.build(ops - 1 - left, depth);
                match pick {
                    1 => Formula::and(a, b),
                    2 => Formula::or(a, b),
                    3 => Formula::implies(a, b),
                    _ => Formula::iff(a, b),
                }
            }
            5 | 6 => Formula::boxed(self.build(ops - 1, depth - 1)),
            _ => Formula::diamond(self.build(ops - 1, depth - 1)),
        }
    }

    /// The next `count` formulas satisfying `keep`, giving up after
    /// `count * 200` draws.
    pub fn take_where(
        &mut self,
        count: usize,
        mut keep: impl FnMut(&Formula) -> bool,
    ) -> Vec<Formula> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count * 200 {
            if out.len() == count {
                break;
            }
            let f = self.next_formula();
            if keep(&f) {
                out.push(f);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_within_shape() {
        let shape = Shape {
            vars: 2,
            max_depth: 2,
            max_ops: 7,
        };
        let a: Vec<Formula> = (0..50)
            .map({
                let mut g = FormulaGen::new(7, shape);
                move |_| g.next_formula()
            })
            .collect();
        let mut g = FormulaGen::new(7, shape);
        for f in &a {
            assert_eq!(&g.next_formula(), f);
            assert!(f.modal_depth() <= 2);
            assert!(f.vars().iter().all(|v| v == "x1" || v == "x2"));
        }
        let mut other = FormulaGen::new(8, shape);
        let b: Vec<Formula> = (0..50).map(|_| other.next_formula()).collect();
        assert_ne!(a, b);
    }
}
