//! Prime sets and exactly factored positive integers.
//!
//! Group orders in `S_n` quickly overflow machine words (|S_40| > 2^128), but
//! every prime divisor of such an order is at most `n`. Orders are therefore
//! kept as prime-exponent maps, which makes divisibility, prime sets and
//! π-parts cheap and exact.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;

pub type Prime = u32;

/// A finite set of primes, ascending.
pub type PrimeSet = BTreeSet<Prime>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization; `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> BTreeMap<Prime, u32> {
    assert!(n > 0, "cannot factorize zero");
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(d as Prime).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n as Prime).or_insert(0) += 1;
    }
    out
}

pub fn format_prime_set(set: &PrimeSet) -> String {
    let inner: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A positive integer stored by its prime factorization.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Order {
    factors: BTreeMap<Prime, u32>,
}

impl Order {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u64(n: u64) -> Self {
        Order {
            factors: factorize(n),
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Prime, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (p, e) in factors {
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        Order { factors: map }
    }

    pub fn factors(&self) -> &BTreeMap<Prime, u32> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, p: Prime) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    /// Number of prime factors counted with multiplicity.
    pub fn exponent_sum(&self) -> u32 {
        self.factors.values().sum()
    }

    /// π(n): the set of prime divisors.
    pub fn primes(&self) -> PrimeSet {
        self.factors.keys().copied().collect()
    }

    pub fn mul(&self, other: &Order) -> Order {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            *out.factors.entry(p).or_insert(0) += e;
        }
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Order) -> Option<Order> {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            let have = out.factors.get_mut(&p)?;
            if *have < e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                out.factors.remove(&p);
            }
        }
        Some(out)
    }

    pub fn divides(&self, other: &Order) -> bool {
        self.factors.iter().all(|(&p, &e)| other.exponent(p) >= e)
    }

    pub fn lcm(&self, other: &Order) -> Order {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            let slot = out.factors.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        out
    }

    /// The π-part: the largest divisor whose primes all lie in `primes`.
    pub fn part(&self, primes: &PrimeSet) -> Order {
        Order {
            factors: self
                .factors
                .iter()
                .filter(|(p, _)| primes.contains(p))
                .map(|(&p, &e)| (p, e))
                .collect(),
        }
    }

    pub fn p_part(&self, p: Prime) -> Order {
        Order::from_factors([(p, self.exponent(p))])
    }

    pub fn is_pi_number(&self, primes: &PrimeSet) -> bool {
        self.factors.keys().all(|p| primes.contains(p))
    }

    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (&p, &e) in &self.factors {
            for _ in 0..e {
                acc = acc.checked_mul(p as u64)?;
            }
        }
        Some(acc)
    }

    /// Saturating conversion used for comparisons against caps.
    pub fn to_u64_saturating(&self) -> u64 {
        self.to_u64().unwrap_or(u64::MAX)
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for (&p, &e) in &self.factors {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }

    /// Residue of this integer modulo `m`.
    pub fn rem_u64(&self, m: u64) -> u64 {
        if m == 1 {
            return 0;
        }
        let mut acc: u128 = 1;
        for (&p, &e) in &self.factors {
            for _ in 0..e {
                acc = acc * p as u128 % m as u128;
            }
        }
        acc as u64
    }
}

impl From<u64> for Order {
    fn from(n: u64) -> Self {
        Order::from_u64(n)
    }
}

impl PartialEq<u64> for Order {
    fn eq(&self, other: &u64) -> bool {
        self.to_u64() == Some(*other)
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.to_u64(), other.to_u64()) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.to_biguint().cmp(&other.to_biguint()),
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_u64() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}", self.to_biguint()),
        }
    }
}

impl fmt::Debug for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Order({self})")
    }
}
