//! Permutations of `{1..n}` in one-line form, with cycle notation I/O.
//!
//! Products compose left to right: `p.then(q)` maps `i` to `q(p(i))`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u8).collect())
    }

    /// Zero-based images. Fails unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u8>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn then(&self, q: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), q.degree());
        Perm(self.0.iter().map(|&i| q.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.0[i] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Parses cycle notation with one-based points, e.g. `(1 2)(3,4)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
        if degree > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {degree} too large")));
        }
        let bad = |msg: String| Error::InvalidPermutation(msg);
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut rest = text.trim();
        let mut used = vec![false; degree];
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad(format!("expected '(' in {text:?}")));
            }
            let close = rest.find(')').ok_or_else(|| bad(format!("unclosed cycle in {text:?}")))?;
            let body = &rest[1..close];
            let mut pts = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| bad(format!("bad point {tok:?}")))?;
                if p == 0 || p > degree {
                    return Err(bad(format!("point {p} outside 1..={degree}")));
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(bad(format!("point {p} repeated in {text:?}")));
                }
                pts.push(p - 1);
            }
            for (k, &p) in pts.iter().enumerate() {
                images[p] = pts[(k + 1) % pts.len()] as u8;
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    /// Parses a product of cycle groups where disjointness is not required:
    /// `(1 2)(2 3)` is composed left to right.
    pub fn parse_word(degree: usize, text: &str) -> Result<Perm> {
        let mut acc = Perm::identity(degree);
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        while !rest.is_empty() {
            let close =
                rest.find(')').ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {text:?}")))?;
            let cyc = Perm::parse_cycles(degree, &rest[..=close])?;
            acc = acc.then(&cyc);
            rest = rest[close + 1..].trim_start();
        }
        Ok(acc)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order of one-line notation.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![Perm(cur.clone())];
    // next_permutation
    while let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm(cur.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Perm::parse_cycles(4, "(1 2)(3,4)").unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(1,2)(3,4)");
        assert_eq!(Perm::parse_cycles(4, &p.to_string()).unwrap(), p);
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles(3, "(1 2)").unwrap();
        let b = Perm::parse_cycles(3, "(1 3)").unwrap();
        // 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
        assert_eq!(a.then(&b).to_string(), "(1,2,3)");
        assert_eq!(Perm::parse_word(3, "(1 2)(1 3)").unwrap(), a.then(&b));
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
        assert!(Perm::parse_cycles(3, "(1 1)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2").is_err());
        assert!(Perm::parse_cycles(3, "1 2").is_err());
    }

    #[test]
    fn lex_enumeration() {
        let ps = all_perms(3);
        assert_eq!(ps.len(), 6);
        assert!(ps[0].is_identity());
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ps.iter().filter(|p| p.is_even()).count(), 3);
    }
}
