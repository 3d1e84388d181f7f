//! Permutations of `{1..n}` in cycle notation.
//!
//! Points are 1-based in text and in the public constructors, 0-based in
//! storage. Composition is left-to-right with points acted on the right:
//! `(p * q)(i) = q(p(i))`. Under that convention the conjugate is
//! `g^h = h⁻¹gh` and the commutator is `[g, h] = g⁻¹h⁻¹gh`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: point `i` goes to `images[i-1]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n {
                return Err(Error::Parse {
                    token: im.to_string(),
                    message: format!("image outside 1..{n}"),
                });
            }
            if std::mem::replace(&mut seen[im - 1], true) {
                return Err(Error::Parse {
                    token: im.to_string(),
                    message: format!("repeated image {im}"),
                });
            }
            out.push((im - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// 0-based images; caller guarantees a bijection.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    /// Parses whitespace-separated disjoint cycles such as `(1 2 3)(4 5)`,
    /// or `()` for the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse {
                token: String::new(),
                message: "empty permutation text".into(),
            });
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse {
                    token: rest.chars().take(12).collect(),
                    message: "expected `(`".into(),
                });
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse {
                    token: rest.to_string(),
                    message: "unclosed cycle".into(),
                });
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::Parse {
                    token: inner.to_string(),
                    message: "nested `(`".into(),
                });
            }
            let mut cycle = Vec::new();
            for tok in inner.split_whitespace() {
                let point: usize = tok.parse().map_err(|_| Error::Parse {
                    token: tok.to_string(),
                    message: "not a positive integer".into(),
                })?;
                if point == 0 || point > degree {
                    return Err(Error::Parse {
                        token: tok.to_string(),
                        message: format!("point {point} outside 1..{degree}"),
                    });
                }
                if std::mem::replace(&mut used[point - 1], true) {
                    return Err(Error::Parse {
                        token: tok.to_string(),
                        message: format!("repeated point {point}"),
                    });
                }
                cycle.push(point - 1);
            }
            for (i, &a) in cycle.iter().enumerate() {
                images[a] = cycle[(i + 1) % cycle.len()] as u32;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image table.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// 1-based points not fixed, ascending.
    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Permutation { images: out }
    }

    /// `self^h = h⁻¹ · self · h`.
    pub fn conjugate(&self, h: &Permutation) -> Result<Permutation> {
        h.inverse().compose(self)?.compose(h)
    }

    /// `[self, h] = self⁻¹ · h⁻¹ · self · h`.
    pub fn commutator(&self, h: &Permutation) -> Result<Permutation> {
        self.inverse()
            .compose(&h.inverse())?
            .compose(self)?
            .compose(h)
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs() % self.order();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycles of length ≥ 2, each starting at its least point, ordered by
    /// that point. Points are 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Least `m ≥ 1` with `self^m = 1`.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Largest power of the prime `p` dividing the order.
    pub fn p_part(&self, p: u64) -> u64 {
        p_part(self.order(), p)
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    assert!(p >= 2, "p_part needs a prime");
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&x| (x as usize) < images.len() && !std::mem::replace(&mut seen[x as usize], true))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Panics on degree mismatch; use [`Permutation::compose`] for a checked product.
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn parses_cycles() {
        let g = p("(1 2 3)(4 5)", 5);
        assert_eq!(g.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(g.apply(1), 2);
        assert!(p("()", 4).is_identity());
        assert_eq!(p("()", 4).degree(), 4);
        assert_eq!(p(" (1 2)  (3 4) ", 4).to_string(), "(1 2)(3 4)");
    }

    #[test]
    fn rejects_bad_text() {
        let err = Permutation::parse("(1 2 2)", 3).unwrap_err();
        assert!(err.to_string().contains("repeated point 2"), "{err}");
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("1 2", 3).is_err());
        assert!(Permutation::parse("(1 x)", 3).is_err());
        assert!(Permutation::parse("(0 1)", 3).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse("", 3).is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(p("(3 1 2)", 3).to_string(), "(1 2 3)");
        assert_eq!(p("(4 5)(2 1)", 5).to_string(), "(1 2)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p("(1)", 2).to_string(), "()");
    }

    #[test]
    fn composition_convention() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(1), 3);
        assert!((&a * &a).is_identity());
        assert!(a.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn commutator_of_three_cycle_and_transposition() {
        // [(1 2 3), (1 2)] computed by hand: g⁻¹ = (1 3 2), h⁻¹ = (1 2),
        // product (1 3 2)(1 2)(1 2 3)(1 2) sends 1→3→3→1→2, 2→1→2→3→3, 3→2→1→2→1.
        let c = p("(1 2 3)", 3).commutator(&p("(1 2)", 3)).unwrap();
        assert_eq!(c, p("(1 2 3)", 3));
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn self_conjugation() {
        let g = p("(1 4 2)(3 5)", 5);
        assert_eq!(g.conjugate(&g).unwrap(), g);
    }

    #[test]
    fn orders_and_two_parts() {
        let g = p("(1 2)(3 4 5)", 5);
        assert_eq!(g.order(), 6);
        assert_eq!(g.p_part(2), 2);
        let e = Permutation::identity(5);
        assert_eq!(e.order(), 1);
        assert_eq!(e.p_part(2), 1);
        let c = p("(1 2 3 4)", 4);
        assert_eq!(c.order(), 4);
        assert_eq!(c.p_part(2), 4);
        assert_eq!(c.p_part(3), 1);
    }

    #[test]
    fn powers() {
        let c = p("(1 2 3 4 5)", 5);
        assert_eq!(c.pow(5), Permutation::identity(5));
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(7), c.pow(2));
        assert_eq!(c.pow(0), Permutation::identity(5));
    }

    #[test]
    fn from_images_validates() {
        assert_eq!(Permutation::from_images(&[2, 3, 1]).unwrap(), p("(1 2 3)", 3));
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
    }
}
