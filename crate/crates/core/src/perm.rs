//! Permutations of `{0, .., n-1}` with a fixed "left factor acts first"
//! composition convention and 1-based cycle notation for I/O.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree-1}`.
///
/// Points are 0-based internally; cycle notation (parsing and `Display`) is
/// 1-based. The product `a * b` applies `a` first, then `b`, so
/// `x^(ab) = (x^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Parse { line: None, msg: format!("not a bijection on {n} points") });
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_boxed_slice() })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images: images.into_boxed_slice() }
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::Parse {
                        line: None,
                        msg: format!("point {} exceeds degree {degree}", x + 1),
                    });
                }
                if used[x] {
                    return Err(Error::Parse { line: None, msg: format!("repeated point {}", x + 1) });
                }
                used[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm { images: images.into_boxed_slice() })
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)` or `()`.
    ///
    /// Commas are accepted as separators inside a cycle.
    pub fn parse(degree: usize, text: &str) -> Result<Perm> {
        let cycles = parse_cycles(text)?;
        Perm::from_cycles(degree, &cycles)
    }

    /// Parses cycle notation, taking the degree from the largest point.
    pub fn parse_auto(text: &str) -> Result<Perm> {
        let cycles = parse_cycles(text)?;
        let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(1);
        Perm::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv.into_boxed_slice() }
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Perm {
        let order = self.order() as i64;
        let e = e.rem_euclid(order.max(1));
        // Walk each cycle e steps; linear in the degree.
        let n = self.degree();
        let mut images = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            let len = cycle.len();
            let shift = (e as usize) % len;
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + shift) % len] as u32;
            }
        }
        Perm { images: images.into_boxed_slice() }
    }

    /// `g^-1 * self * g`, i.e. `self` conjugated by `g`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        // x^(g^-1 s g): relabel the cycles of self through g.
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.apply(i)] = g.images[x as usize];
        }
        Perm { images: images.into_boxed_slice() }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| other.images[x as usize] == self.images[other.images[i] as usize])
    }

    /// Cycle lengths of all cycles, including fixed points.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            out.push(len);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }

    /// Extends the permutation to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Perm {
        debug_assert!(degree >= self.degree());
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u32..degree as u32);
        Perm { images: images.into_boxed_slice() }
    }

    /// Places `self` on points `offset..offset+self.degree()` of a larger set.
    pub fn shift(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u32;
        }
        Perm { images: images.into_boxed_slice() }
    }
}

impl Ord for Perm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for Perm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

impl std::ops::Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

/// Parses 1-based cycle notation into 0-based cycles.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let err = |msg: String| Error::Parse { line: None, msg };
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(err("empty permutation".into()));
    }
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(err(format!("expected '(' at {rest:?}")));
        };
        let Some(close) = stripped.find(')') else {
            return Err(err("unbalanced parenthesis".into()));
        };
        let body = &stripped[..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let x: usize = tok.parse().map_err(|_| err(format!("non-numeric token {tok:?}")))?;
            if x == 0 {
                return Err(err("points are numbered from 1".into()));
            }
            if cycle.contains(&(x - 1)) {
                return Err(err(format!("repeated point {x}")));
            }
            cycle.push(x - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = stripped[close + 1..].trim_start();
    }
    Ok(cycles)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}
