//! Group expressions such as `S4`, `Z2xZ2`, `ZM(5,4,2)` or
//! `perm(4):(1,2),(1,2,3,4)`.
//!
//! ```text
//! expr  := atom ("x" atom)*
//! atom  := "Z" int | "D" int | "S" int | "A" int
//!        | "ZM(" int "," int "," int ")"
//!        | "perm(" int "):" gen ("," gen)*
//! gen   := cycle+            cycle := "(" int ([ ,] int)* ")" | "()"
//! ```
//!
//! `D` is named by group order, so `D8` has eight elements. Whitespace is
//! ignored outside cycles.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{
    direct_product, from_generators, make_alternating, make_cyclic, make_dihedral, make_symmetric, GroupTable,
    MAX_PERM_DEGREE,
};
use crate::perm::Perm;
use crate::zm::{build_zm, validate_zm, ZmParams};

/// Largest degree accepted in `perm(d):...`.
pub const MAX_EXPR_PERM_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::Cyclic => 'Z',
            Family::Dihedral => 'D',
            Family::Symmetric => 'S',
            Family::Alternating => 'A',
        }
    }

    fn check(self, n: u64) -> std::result::Result<(), String> {
        let ok = match self {
            Family::Cyclic => n >= 1,
            Family::Dihedral => n >= 4 && n.is_multiple_of(2),
            Family::Symmetric => (1..=MAX_PERM_DEGREE as u64).contains(&n),
            Family::Alternating => (2..=MAX_PERM_DEGREE as u64).contains(&n),
        };
        if ok {
            return Ok(());
        }
        Err(match self {
            Family::Cyclic => "cyclic order must be at least 1".into(),
            Family::Dihedral => {
                format!("dihedral order must be even and at least 4 (D{n} is invalid; D8 has 8 elements)")
            }
            Family::Symmetric => format!("symmetric degree must be in 1..={MAX_PERM_DEGREE}"),
            Family::Alternating => format!("alternating degree must be in 2..={MAX_PERM_DEGREE}"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Named(Family, usize),
    Zm(ZmParams),
    Perm {
        degree: usize,
        generators: Vec<Perm>,
    },
    /// At least two factors, none of them a product.
    Product(Vec<GroupExpr>),
}

impl GroupExpr {
    /// The order, when it is known without building the group.
    pub fn order_hint(&self) -> Option<u128> {
        match self {
            GroupExpr::Named(f, n) => {
                let n = *n as u128;
                Some(match f {
                    Family::Cyclic | Family::Dihedral => n,
                    Family::Symmetric => (1..=n).product(),
                    Family::Alternating => (1..=n).product::<u128>() / 2,
                })
            }
            GroupExpr::Zm(p) => Some(p.order() as u128),
            GroupExpr::Perm { .. } => None,
            GroupExpr::Product(fs) => fs.iter().map(GroupExpr::order_hint).product(),
        }
    }

    /// Builds the table; the result is labelled with the canonical rendering
    /// of `self`.
    pub fn build(&self, max_order: usize) -> Result<GroupTable> {
        if let Some(o) = self.order_hint() {
            if o > max_order as u128 {
                return Err(Error::OrderCap { order: o.min(usize::MAX as u128) as usize, cap: max_order });
            }
        }
        let mut g = match self {
            GroupExpr::Named(Family::Cyclic, n) => make_cyclic(*n)?,
            GroupExpr::Named(Family::Dihedral, n) => make_dihedral(*n)?,
            GroupExpr::Named(Family::Symmetric, n) => make_symmetric(*n)?,
            GroupExpr::Named(Family::Alternating, n) => make_alternating(*n)?,
            GroupExpr::Zm(p) => build_zm(p, max_order)?,
            GroupExpr::Perm { degree, generators } => from_generators(*degree, generators, max_order)?,
            GroupExpr::Product(fs) => {
                let built: Vec<GroupTable> = fs.iter().map(|f| f.build(max_order)).collect::<Result<_>>()?;
                let refs: Vec<&GroupTable> = built.iter().collect();
                direct_product(&refs, max_order)?
            }
        };
        g.set_label(self.to_string());
        Ok(g)
    }

    /// Factors of a product, or `self` alone.
    pub fn factors(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::Product(fs) => fs.iter().collect(),
            e => vec![e],
        }
    }

    pub fn parse(text: &str) -> Result<GroupExpr> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err(format!("unexpected {:?}", p.chars[p.pos])));
        }
        Ok(e)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Named(fam, n) => write!(f, "{}{n}", fam.letter()),
            GroupExpr::Zm(p) => write!(f, "{p}"),
            GroupExpr::Perm { degree, generators } => {
                write!(f, "perm({degree}):")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            GroupExpr::Product(fs) => {
                for (i, e) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupExpr> {
        GroupExpr::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos + 1, msg: msg.into() }
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { pos: pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.err(format!("expected {c:?}, found {d:?}"))),
            None => Err(self.err(format!("expected {c:?}, found end of input"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(kw.chars()) {
            self.pos = end;
            return true;
        }
        false
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            if s.is_empty() || s == "-" {
                self.err("expected an integer")
            } else {
                self.err(format!("integer {s} out of range"))
            }
        })
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let at = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| self.err_at(at, "expected a nonnegative integer"))
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = Vec::new();
        loop {
            match self.atom()? {
                GroupExpr::Product(fs) => factors.extend(fs),
                a => factors.push(a),
            }
            if self.peek() == Some('x') || self.peek() == Some('×') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { GroupExpr::Product(factors) })
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.keyword("ZM") {
            self.expect('(')?;
            let at = self.pos;
            let m = self.int()?;
            self.expect(',')?;
            let n = self.int()?;
            self.expect(',')?;
            let r = self.int()?;
            self.expect(')')?;
            return validate_zm(m, n, r).map(GroupExpr::Zm).map_err(|e| self.err_at(at, e.to_string()));
        }
        if self.keyword("perm") {
            self.expect('(')?;
            let at = self.pos;
            let d = self.uint()? as usize;
            if !(1..=MAX_EXPR_PERM_DEGREE).contains(&d) {
                return Err(self.err_at(at, format!("permutation degree must be in 1..={MAX_EXPR_PERM_DEGREE}")));
            }
            self.expect(')')?;
            self.expect(':')?;
            let mut generators = vec![self.generator(d)?];
            while self.peek() == Some(',') {
                self.pos += 1;
                generators.push(self.generator(d)?);
            }
            return Ok(GroupExpr::Perm { degree: d, generators });
        }
        let fam = match self.peek() {
            Some('Z') => Family::Cyclic,
            Some('D') => Family::Dihedral,
            Some('S') => Family::Symmetric,
            Some('A') => Family::Alternating,
            Some(c) => {
                return Err(
                    self.err(format!("unknown group family {c:?}; expected Z, D, S, A, ZM(m,n,r) or perm(d):..."))
                )
            }
            None => return Err(self.err("expected a group, found end of input")),
        };
        self.pos += 1;
        let at = self.pos;
        let n = self.uint()?;
        fam.check(n).map_err(|m| self.err_at(at, m))?;
        if n > usize::MAX as u64 {
            return Err(self.err_at(start, "parameter too large"));
        }
        Ok(GroupExpr::Named(fam, n as usize))
    }

    /// One generator: a run of cycles, composed left to right.
    fn generator(&mut self, degree: usize) -> Result<Perm> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() != Some('(') {
            return Err(self.err("expected a cycle"));
        }
        while self.peek() == Some('(') {
            match self.chars[self.pos..].iter().position(|&c| c == ')') {
                Some(k) => self.pos += k + 1,
                None => return Err(self.err("unclosed cycle")),
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Perm::parse_word(degree, &text).map_err(|e| self.err_at(start, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GroupExpr {
        GroupExpr::parse(s).unwrap()
    }

    #[test]
    fn atoms() {
        assert_eq!(p("S4"), GroupExpr::Named(Family::Symmetric, 4));
        assert_eq!(
            p(" Z2 x Z2 "),
            GroupExpr::Product(vec![GroupExpr::Named(Family::Cyclic, 2), GroupExpr::Named(Family::Cyclic, 2)])
        );
        assert!(matches!(p("ZM(5,4,2)"), GroupExpr::Zm(z) if z.order() == 20));
        assert_eq!(p("Z2xZ3xS3").factors().len(), 3);
        assert_eq!(p("perm(4):(1 2)(3 4),(1,3)(2,4)").to_string(), "perm(4):(1,2)(3,4),(1,3)(2,4)");
    }

    #[test]
    fn errors_are_positioned() {
        let pos = |s: &str| match GroupExpr::parse(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("Q8"), 1);
        assert_eq!(pos("S7"), 2);
        assert_eq!(pos("Z2xD5"), 5);
        assert_eq!(pos("ZM(4,2,3)"), 4);
        assert_eq!(pos("perm(3):(1 4)"), 9);
        assert_eq!(pos("S3 S3"), 4);
        assert_eq!(pos("Z"), 2);
        assert!(GroupExpr::parse("ZM(4,2,3)").unwrap_err().to_string().contains("gcd(m, r-1)"));
    }

    #[test]
    fn building() {
        let g = p("S3xZ5").build(720).unwrap();
        assert_eq!((g.order(), g.label()), (30, "S3xZ5"));
        assert_eq!(p("perm(4):(1,2),(1,2,3,4)").build(720).unwrap().order(), 24);
        assert!(matches!(p("S6xZ2").build(720), Err(Error::OrderCap { order: 1440, .. })));
        assert!(matches!(p("perm(6):(1,2),(1,2,3,4,5,6)").build(100), Err(Error::OrderCap { .. })));
        assert_eq!(p("ZM(3,2,2)").build(720).unwrap().label(), "ZM(3,2,2)");
    }
}
