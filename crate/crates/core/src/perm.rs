//! Permutations of `{1..n}` stored as image tables.
//!
//! Points are 1-indexed at the public surface (cycle notation, `image`,
//! `from_images`) and 0-indexed internally. Products act left to right:
//! `a.then(b)` maps `i` to `b(a(i))`. Conjugation is `h^g = g⁻¹hg` and the
//! commutator is `[a,b] = a⁻¹b⁻¹ab`.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{Order, PrimeSet};

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

    /// Builds a permutation from 1-indexed images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; n];
        let mut table = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::PointOutOfRange {
                    point: img,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::NotABijection(n));
            }
            table.push((img - 1) as u32);
        }
        Ok(Permutation { images: table })
    }

    /// 0-indexed image table; the caller guarantees it is a bijection.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-indexed point `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 0-indexed image table.
    pub fn raw(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub(crate) fn at(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i)
    }

    /// Parses cycle notation such as `"(1 2)(3 4 5)"`; `"()"` or empty is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut chars = text.trim().chars().peekable();
        let mut saw_any = false;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::MalformedCycles(format!("unexpected '{c}'")));
            }
            chars.next();
            saw_any = true;
            let mut body = String::new();
            let mut closed = false;
            for c in chars.by_ref() {
                if c == ')' {
                    closed = true;
                    break;
                }
                if c == '(' {
                    return Err(Error::MalformedCycles("nested '('".into()));
                }
                body.push(c);
            }
            if !closed {
                return Err(Error::MalformedCycles("missing ')'".into()));
            }
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok
                    .parse()
                    .map_err(|_| Error::MalformedCycles(format!("bad point '{tok}'")))?;
                if point == 0 || point > degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if std::mem::replace(&mut used[point - 1], true) {
                    return Err(Error::RepeatedPoint(point));
                }
                cycle.push((point - 1) as u32);
            }
            if cycle.is_empty() {
                // "()" is only legal as the whole identity
                continue;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        if !saw_any && !text.trim().is_empty() {
            return Err(Error::MalformedCycles(text.to_string()));
        }
        Ok(Permutation { images })
    }

    /// Canonical cycle notation: nontrivial cycles only, each starting at its
    /// least point, sorted by least point; identity prints `"()"`.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for c in cycles {
            out.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            out.push_str(&pts.join(" "));
            out.push(')');
        }
        out
    }

    /// Nontrivial cycles (0-indexed points), each starting at its least point,
    /// sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut p = self.images[start];
            while p as usize != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// `self · other`, acting left to right.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// `self · other` without a degree check.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^e` by square-and-multiply; negative exponents invert first.
    pub fn power(&self, e: i64) -> Permutation {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.then(&base);
            }
        }
        acc
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> Order {
        let mut lens: Vec<u64> = self.cycles().iter().map(|c| c.len() as u64).collect();
        lens.sort_unstable();
        lens.dedup();
        lens.into_iter()
            .fold(Order::one(), |acc, l| acc.lcm(&Order::from_u64(l)))
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g⁻¹ h g)(g(i)) = g(h(i))
        let mut out = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            out[g.images[i] as usize] = g.images[self.images[i] as usize];
        }
        Permutation { images: out }
    }

    /// `[self, other] = self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Least 0-indexed point moved, if any.
    pub fn least_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &v)| *i as u32 != v)
            .map(|(i, _)| i as u32)
    }

    /// The π-part of this element: the unique π-element `u ∈ ⟨self⟩` such that
    /// `self = u·v = v·u` with `v` a π′-element.
    ///
    /// Computed cycle by cycle: on a cycle of length `L = L_π · L_π′` the
    /// π-part is the cycle raised to the CRT exponent `e ≡ 1 (mod L_π)`,
    /// `e ≡ 0 (mod L_π′)`.
    pub fn pi_part(&self, primes: &PrimeSet) -> Permutation {
        let mut out: Vec<u32> = (0..self.degree() as u32).collect();
        for cycle in self.cycles() {
            let len = cycle.len() as u64;
            let ord = Order::from_u64(len);
            let l_pi = ord.part(primes).to_u64().unwrap();
            let l_co = len / l_pi;
            // inverse of l_co modulo l_pi
            let shift = if l_pi == 1 {
                0
            } else {
                let inv = mod_inverse(l_co % l_pi, l_pi);
                (l_co * inv) % len
            };
            for (k, &p) in cycle.iter().enumerate() {
                out[p as usize] = cycle[(k + shift as usize) % cycle.len()];
            }
        }
        Permutation { images: out }
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn embed(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), degree));
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Ok(Permutation { images })
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i64) as u64
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.format_cycles(), self.degree())
    }
}
