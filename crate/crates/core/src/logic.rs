//! The five pretabular extensions of S4 and their axioms.

use crate::formula::{parse, Formula};
use crate::kripke::{make_frame, Frame, KripkeError};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Logic {
    Pm1,
    Pm2,
    Pm3,
    Pm4,
    Pm5,
}

impl Logic {
    pub const ALL: [Logic; 5] = [Logic::Pm1, Logic::Pm2, Logic::Pm3, Logic::Pm4, Logic::Pm5];

    pub fn name(self) -> &'static str {
        match self {
            Logic::Pm1 => "PM1",
            Logic::Pm2 => "PM2",
            Logic::Pm3 => "PM3",
            Logic::Pm4 => "PM4",
            Logic::Pm5 => "PM5",
        }
    }

    /// The S4 base (K, T, 4) followed by the logic's own axioms.
    pub fn axioms(self) -> Vec<Formula> {
        let mut out = alloc::vec![axioms::k(), axioms::t(), axioms::four()];
        match self {
            Logic::Pm1 => out.extend([axioms::lemmon("p", "q"), axioms::grz()]),
            Logic::Pm2 => out.extend([axioms::grz(), axioms::sigma2()]),
            Logic::Pm3 => out.extend([axioms::grz(), axioms::pm3_depth(), axioms::mckinsey()]),
            Logic::Pm4 => out.extend([axioms::sigma2(), axioms::mckinsey()]),
            Logic::Pm5 => out.push(axioms::five()),
        }
        out
    }

    /// The `m`-th frame of the characteristic family.
    pub fn frame(self, m: usize) -> Result<Frame, KripkeError> {
        make_frame(self, m)
    }

    /// Logics whose unifiable formulas have a single most general unifier.
    pub fn is_unitary(self) -> bool {
        matches!(self, Logic::Pm1 | Logic::Pm4 | Logic::Pm5)
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownLogic;

impl fmt::Display for UnknownLogic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of pm1, pm2, pm3, pm4, pm5")
    }
}

impl core::error::Error for UnknownLogic {}

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Logic::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s.trim()))
            .ok_or(UnknownLogic)
    }
}

/// Named axiom schemes, instantiated with fixed variables.
pub mod axioms {
    use super::*;

    fn p(src: &str) -> Formula {
        parse(src).expect("built-in axiom parses")
    }

    pub fn k() -> Formula {
        p("[](p -> q) -> []p -> []q")
    }

    pub fn t() -> Formula {
        p("[]p -> p")
    }

    pub fn four() -> Formula {
        p("[]p -> [][]p")
    }

    pub fn five() -> Formula {
        p("p -> []<>p")
    }

    pub fn grz() -> Formula {
        p("[]([](p -> []p) -> p) -> p")
    }

    /// `[]([]a -> b) | []([]b -> a)`, the S4.3 axiom.
    pub fn lemmon(a: &str, b: &str) -> Formula {
        let side = |x: &str, y: &str| {
            Formula::boxed(Formula::implies(
                Formula::boxed(Formula::var(x)),
                Formula::var(y),
            ))
        };
        Formula::or(side(a, b), side(b, a))
    }

    pub fn mckinsey() -> Formula {
        p("[]<>p <-> <>[]p")
    }

    pub fn sigma2() -> Formula {
        p("[]p | []([]p -> []q | []<>~q)")
    }

    /// `[]r | []([]r -> sigma2)`, bounding chains to three points.
    pub fn pm3_depth() -> Formula {
        Formula::or(
            p("[]r"),
            Formula::boxed(Formula::implies(p("[]r"), sigma2())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn names_roundtrip() {
        for l in Logic::ALL {
            assert_eq!(l.to_string().parse::<Logic>(), Ok(l));
            assert_eq!(l.name().to_lowercase().parse::<Logic>(), Ok(l));
        }
        assert_eq!("pm6".parse::<Logic>(), Err(UnknownLogic));
    }

    #[test]
    fn axiom_shapes() {
        assert_eq!(
            axioms::lemmon("x1", "x2").to_string(),
            "[]([]x1 -> x2) | []([]x2 -> x1)"
        );
        assert_eq!(
            axioms::pm3_depth().to_string(),
            "[]r | []([]r -> []p | []([]p -> []q | []<>~q))"
        );
        assert_eq!(Logic::Pm3.axioms().len(), 6);
    }
}
