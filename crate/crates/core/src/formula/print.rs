use super::Formula;
use core::fmt;

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const PREFIX: u8 = 5;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => PREFIX,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Var(name) => out.write_str(name),
        Formula::Top => out.write_str("true"),
        Formula::Bot => out.write_str("false"),
        Formula::Not(a) => {
            out.write_str("~")?;
            write_at(a, PREFIX, out)
        }
        Formula::Box(a) => {
            out.write_str("[]")?;
            write_at(a, PREFIX, out)
        }
        Formula::Diamond(a) => {
            out.write_str("<>")?;
            write_at(a, PREFIX, out)
        }
        // & and | associate to the left, -> and <-> to the right.
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            out.write_str(" & ")?;
            write_at(b, AND + 1, out)
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" | ")?;
            write_at(b, OR + 1, out)
        }
        Formula::Implies(a, b) => {
            write_at(a, IMP + 1, out)?;
            out.write_str(" -> ")?;
            write_at(b, IMP, out)
        }
        Formula::Iff(a, b) => {
            write_at(a, IFF + 1, out)?;
            out.write_str(" <-> ")?;
            write_at(b, IFF, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::parse;
    use alloc::string::ToString;

    #[test]
    fn minimal_parentheses() {
        for (src, expect) in [
            ("[]x | []~x", "[]x | []~x"),
            ("(a & b) & c", "a & b & c"),
            ("a & (b & c)", "a & (b & c)"),
            ("(a -> b) -> c", "(a -> b) -> c"),
            ("a -> (b -> c)", "a -> b -> c"),
            ("~(p & q)", "~(p & q)"),
            ("[](([]p -> q))", "[]([]p -> q)"),
            ("(a | b) & c", "(a | b) & c"),
            ("a <-> (b <-> c)", "a <-> b <-> c"),
            ("(a <-> b) <-> c", "(a <-> b) <-> c"),
            ("~~true", "~~true"),
        ] {
            assert_eq!(parse(src).unwrap().to_string(), expect, "{src}");
        }
    }
}
