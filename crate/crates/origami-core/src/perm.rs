//! Permutations of `{0, .., n-1}` with cycle-notation parsing and printing.
//!
//! The text format is 1-based to match the usual way square-tiled surfaces
//! are written down: `(1,4,2)(3,5)` on 6 symbols fixes 6. Fixed points may be
//! omitted; the empty cycle list `()` is the identity.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// A permutation stored by its image table (`images[i]` is the image of `i`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n {
                return Err(Error::NonBijection(alloc::format!(
                    "symbol {} out of range 1..{}",
                    j + 1,
                    n
                )));
            }
            if seen[j] {
                return Err(Error::NonBijection(alloc::format!(
                    "symbol {} appears twice as an image",
                    j + 1
                )));
            }
            seen[j] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation on `{0..n-1}` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, Error> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(Error::NonBijection(alloc::format!(
                        "symbol {} out of range 1..{}",
                        a.max(b) + 1,
                        n
                    )));
                }
                if moved[a] {
                    return Err(Error::NonBijection(alloc::format!(
                        "symbol {} appears in two cycles",
                        a + 1
                    )));
                }
                moved[a] = true;
                images[a] = b;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Function composition `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    /// Conjugate `self` by `g`, i.e. `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle decomposition; every cycle starts at its smallest element and
    /// cycles are sorted by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// True when the group generated by `perms` acts transitively on `{0..n-1}`.
    pub fn transitive(n: usize, perms: &[&Permutation]) -> bool {
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for p in perms {
                for j in [p.apply(i), p.inverse().apply(i)] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        stack.push(j);
                    }
                }
            }
        }
        count == n
    }

    /// Parses 1-based cycle notation, e.g. `(1,4,2)(3,5)`. `()` is the identity.
    /// Symbols must stay within `1..=n`.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, Error> {
        let trimmed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = trimmed.as_str();
        if rest.is_empty() {
            return Err(Error::Syntax(String::from(
                "expected cycle notation like (1,2)(3,4) or ()",
            )));
        }
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Syntax(alloc::format!("expected '(' at \"{rest}\"")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Syntax(String::from("unbalanced parenthesis")))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue; // bare () is the identity
            }
            let mut cycle = Vec::new();
            for part in body.split(',') {
                let sym: usize = part.parse().map_err(|_| {
                    Error::Syntax(alloc::format!("not a positive integer: \"{part}\""))
                })?;
                if sym == 0 {
                    return Err(Error::Syntax(String::from("symbols are 1-based")));
                }
                if sym > n {
                    return Err(Error::NonBijection(alloc::format!(
                        "symbol {sym} exceeds the square count {n}"
                    )));
                }
                cycle.push(sym - 1);
            }
            if cycle.len() >= 2 {
                cycles.push(cycle);
            }
        }
        Permutation::from_cycles(n, &cycles)
    }

    /// Largest 1-based symbol mentioned in a cycle expression, 0 if none.
    pub fn max_symbol(text: &str) -> Result<usize, Error> {
        let mut max = 0usize;
        for tok in text.split(|c: char| !c.is_ascii_digit()) {
            if tok.is_empty() {
                continue;
            }
            let sym: usize = tok
                .parse()
                .map_err(|_| Error::Syntax(alloc::format!("bad symbol \"{tok}\"")))?;
            max = max.max(sym);
        }
        Ok(max)
    }
}

impl fmt::Display for Permutation {
    /// Canonical cycle notation: fixed points omitted, cycles sorted by least
    /// element, 1-based symbols. The identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() >= 2).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, s) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", s + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let p = Permutation::parse_cycles("(1,4,2)(3,5)", 6).unwrap();
        assert_eq!(p.apply(0), 3);
        assert_eq!(p.apply(3), 1);
        assert_eq!(p.apply(5), 5);
        assert_eq!(alloc::format!("{p}"), "(1,4,2)(3,5)");
        let id = Permutation::parse_cycles("()", 3).unwrap();
        assert!(id.is_identity());
        assert_eq!(alloc::format!("{id}"), "()");
    }

    #[test]
    fn rejects_repeated_symbol() {
        let err = Permutation::parse_cycles("(1,2)(2,3)", 3).unwrap_err();
        assert!(matches!(err, Error::NonBijection(_)));
    }

    #[test]
    fn compose_is_right_to_left() {
        let a = Permutation::parse_cycles("(1,2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2,3)", 3).unwrap();
        // (a ∘ b)(2) = a(b(2)) = a(3) = 3  [1-based]
        assert_eq!(a.compose(&b).apply(1), 2);
    }

    #[test]
    fn transitivity() {
        let h = Permutation::parse_cycles("(1,2)", 3).unwrap();
        let v = Permutation::parse_cycles("(1,3)", 3).unwrap();
        assert!(Permutation::transitive(3, &[&h, &v]));
        let v2 = Permutation::identity(3);
        assert!(!Permutation::transitive(3, &[&h, &v2]));
    }
}
