//! Partitions of finite prime sets and the decomposition of elements into
//! commuting block components.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::order::{format_prime_set, is_prime, Prime, PrimeSet};
use crate::perm::Permutation;
use crate::stab_chain::PermGroup;

/// A partition of a finite set of primes, kept in canonical form: primes
/// ascending inside each block, blocks ordered by their least prime.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<PrimeSet>,
}

impl Partition {
    /// The unique partition of the empty set.
    pub fn empty() -> Self {
        Partition { blocks: Vec::new() }
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = PrimeSet>) -> Result<Self> {
        let mut seen = PrimeSet::new();
        let mut out = Vec::new();
        for b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &p in &b {
                if !is_prime(p as u64) {
                    return Err(Error::InvalidPartition(format!("{p} is not prime")));
                }
                if !seen.insert(p) {
                    return Err(Error::InvalidPartition(format!("prime {p} listed twice")));
                }
            }
            out.push(b);
        }
        out.sort_by_key(|b| *b.first().unwrap());
        Ok(Partition { blocks: out })
    }

    /// Every prime in its own block.
    pub fn singletons(ground: &PrimeSet) -> Self {
        Partition {
            blocks: ground.iter().map(|&p| PrimeSet::from([p])).collect(),
        }
    }

    /// A single block (the empty partition over an empty ground).
    pub fn whole(ground: &PrimeSet) -> Self {
        if ground.is_empty() {
            return Self::empty();
        }
        Partition {
            blocks: vec![ground.clone()],
        }
    }

    /// Parses `2,3|5` against the set of primes it must cover. `{}` and the
    /// empty string denote the empty partition.
    pub fn parse(text: &str, ground: &PrimeSet) -> Result<Self> {
        let part: Partition = text.parse()?;
        let found = part.ground();
        if &found != ground {
            if let Some(p) = ground.difference(&found).next() {
                return Err(Error::InvalidPartition(format!("prime {p} is not covered")));
            }
            let p = found.difference(ground).next().unwrap();
            return Err(Error::InvalidPartition(format!(
                "prime {p} is outside {}",
                format_prime_set(ground)
            )));
        }
        Ok(part)
    }

    pub fn blocks(&self) -> &[PrimeSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> PrimeSet {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Index of the block holding `p`.
    pub fn block_index(&self, p: Prime) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&p))
    }

    pub fn block_of(&self, p: Prime) -> Option<&PrimeSet> {
        self.block_index(p).map(|i| &self.blocks[i])
    }

    fn check_same_ground(&self, other: &Partition) -> Result<()> {
        let (a, b) = (self.ground(), other.ground());
        if a != b {
            return Err(Error::GroundMismatch {
                expected: format_prime_set(&a),
                found: format_prime_set(&b),
            });
        }
        Ok(())
    }

    /// The coarsest common refinement: all nonempty block intersections.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_same_ground(other)?;
        let blocks = self.blocks.iter().flat_map(|a| {
            other
                .blocks
                .iter()
                .map(move |b| a.intersection(b).copied().collect::<PrimeSet>())
        });
        Ok(Partition::from_blocks(blocks.filter(|b| !b.is_empty())).unwrap())
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool> {
        self.check_same_ground(other)?;
        Ok(self
            .blocks
            .iter()
            .all(|a| other.blocks.iter().any(|b| a.is_subset(b))))
    }

    /// `{σ_i ∩ primes}` with empty intersections dropped.
    pub fn restrict(&self, primes: &PrimeSet) -> Result<Partition> {
        if let Some(p) = primes.difference(&self.ground()).next() {
            return Err(Error::PrimeOutsideGround(*p));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.intersection(primes).copied().collect::<PrimeSet>())
            .filter(|b| !b.is_empty());
        Ok(Partition::from_blocks(blocks).unwrap())
    }

    /// Adds each prime of `primes` outside the ground as its own block.
    pub fn with_singletons(&self, primes: &PrimeSet) -> Partition {
        let ground = self.ground();
        let extra = primes.difference(&ground).map(|&p| PrimeSet::from([p]));
        Partition::from_blocks(self.blocks.iter().cloned().chain(extra)).unwrap()
    }

    /// Blocks that meet `primes`.
    pub fn blocks_meeting<'a>(
        &'a self,
        primes: &'a PrimeSet,
    ) -> impl Iterator<Item = &'a PrimeSet> {
        self.blocks.iter().filter(move |b| !b.is_disjoint(primes))
    }

    /// `σ(π)`: the union of blocks meeting `primes`.
    pub fn closure_of(&self, primes: &PrimeSet) -> PrimeSet {
        self.blocks_meeting(primes).flatten().copied().collect()
    }

    /// Every partition of `ground`, in restricted-growth order.
    pub fn all(ground: &PrimeSet) -> Vec<Partition> {
        let primes: Vec<Prime> = ground.iter().copied().collect();
        if primes.is_empty() {
            return vec![Partition::empty()];
        }
        let mut out = Vec::new();
        let mut labels = vec![0usize; primes.len()];
        fn rec(
            i: usize,
            max: usize,
            labels: &mut [usize],
            primes: &[Prime],
            out: &mut Vec<Partition>,
        ) {
            if i == primes.len() {
                let mut blocks = vec![PrimeSet::new(); max + 1];
                for (p, &l) in primes.iter().zip(labels.iter()) {
                    blocks[l].insert(*p);
                }
                out.push(Partition::from_blocks(blocks).unwrap());
                return;
            }
            for l in 0..=max + 1 {
                labels[i] = l;
                rec(i + 1, max.max(l), labels, primes, out);
            }
        }
        rec(1, 0, &mut labels, &primes, &mut out);
        out
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses without a prescribed ground; the ground is whatever is listed.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "{}" {
            return Ok(Partition::empty());
        }
        let mut blocks = Vec::new();
        for block in text.split('|') {
            let mut set = PrimeSet::new();
            for tok in block.split(',') {
                let tok = tok.trim();
                let p: Prime = tok
                    .parse()
                    .map_err(|_| Error::InvalidPartition(format!("bad token {tok:?}")))?;
                if !set.insert(p) {
                    return Err(Error::InvalidPartition(format!("prime {p} listed twice")));
                }
            }
            blocks.push(set);
        }
        Partition::from_blocks(blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Components `s_b` of `s`, one per block of `sigma`, aligned with
/// `sigma.blocks()`. Each component is a power of `s`, they commute, and
/// their product is `s`.
pub fn decompose_element(s: &Permutation, sigma: &Partition) -> Result<Vec<Permutation>> {
    let ground = sigma.ground();
    if let Some(p) = s.order().primes().difference(&ground).next() {
        return Err(Error::PrimeOutsideGround(*p));
    }
    Ok(sigma.blocks().iter().map(|b| s.pi_part(b)).collect())
}

/// Generators split by block, plus a bucket for primes outside the partition.
#[derive(Clone, Debug)]
pub struct SigmaGenerators {
    pub partition: Partition,
    /// Aligned with `partition.blocks()`.
    pub blocks: Vec<Vec<Permutation>>,
    pub extra_primes: PrimeSet,
    pub extra: Vec<Permutation>,
}

impl SigmaGenerators {
    pub fn total(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum::<usize>() + self.extra.len()
    }

    pub fn all(&self) -> impl Iterator<Item = &Permutation> {
        self.blocks.iter().flatten().chain(&self.extra)
    }
}

pub fn decompose_generators(
    g: &PermGroup,
    sigma: &Partition,
    extra: &PrimeSet,
) -> Result<SigmaGenerators> {
    let ground = sigma.ground();
    if let Some(p) = ground.intersection(extra).next() {
        return Err(Error::InvalidPartition(format!(
            "prime {p} is both in the partition and in the extra set"
        )));
    }
    let covered: PrimeSet = ground.union(extra).copied().collect();
    if let Some(p) = g.order().primes().difference(&covered).next() {
        return Err(Error::PrimeOutsideGround(*p));
    }
    let mut blocks = vec![Vec::new(); sigma.len()];
    let mut extra_list = Vec::new();
    for s in g.generators() {
        for (slot, b) in blocks.iter_mut().zip(sigma.blocks()) {
            let c = s.pi_part(b);
            if !c.is_identity() {
                slot.push(c);
            }
        }
        let c = s.pi_part(extra);
        if !c.is_identity() {
            extra_list.push(c);
        }
    }
    for list in &mut blocks {
        dedup_keep_order(list);
    }
    dedup_keep_order(&mut extra_list);
    let out = SigmaGenerators {
        partition: sigma.clone(),
        blocks,
        extra_primes: extra.clone(),
        extra: extra_list,
    };
    let n = g.degree();
    if out.total() > n * n * n {
        return Err(Error::Invariant(format!(
            "{} decomposed generators exceed n^3 = {}",
            out.total(),
            n * n * n
        )));
    }
    Ok(out)
}

fn dedup_keep_order(list: &mut Vec<Permutation>) {
    let mut seen = BTreeSet::new();
    list.retain(|x| seen.insert(x.clone()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn ps(xs: &[Prime]) -> PrimeSet {
        xs.iter().copied().collect()
    }

    fn part(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let p = Partition::parse("2,3|5", &ps(&[2, 3, 5])).unwrap();
        assert_eq!(p.blocks(), &[ps(&[2, 3]), ps(&[5])]);
        assert_eq!(Partition::parse("2|3", &ps(&[2, 3])).unwrap().len(), 2);
        assert!(Partition::parse("2|3", &ps(&[2, 3, 5])).is_err());
        assert!(Partition::parse("2|4", &ps(&[2])).is_err());
        assert!(Partition::parse("2|2", &ps(&[2])).is_err());
        assert!(Partition::parse("2,3|7", &ps(&[2, 3])).is_err());
        assert!(Partition::parse("x", &ps(&[2])).is_err());
        assert_eq!(
            Partition::parse("{}", &PrimeSet::new()).unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(part("5|3,2").to_string(), "2,3|5");
        assert_eq!(part("7|2 , 5|3").to_string(), "2,5|3|7");
        assert_eq!(Partition::empty().to_string(), "{}");
        assert_eq!(part("5|3,2"), part("2,3|5"));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(part("2,3|5").meet(&part("2|3,5")).unwrap(), part("2|3|5"));
        let s = part("2,3|5");
        assert_eq!(s.meet(&s).unwrap(), s);
        assert_eq!(s.meet(&part("2,3,5")).unwrap(), s);
        assert!(matches!(
            s.meet(&part("2|3")),
            Err(Error::GroundMismatch { .. })
        ));
    }

    #[test]
    fn leq_examples() {
        assert!(part("2|3|5").leq(&part("2,3|5")).unwrap());
        assert!(part("2,3|5").leq(&part("2,3|5")).unwrap());
        assert!(!part("2,3|5").leq(&part("2|3,5")).unwrap());
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(part("2,3|5").restrict(&ps(&[2, 5])).unwrap(), part("2|5"));
        let s = part("2,3|5");
        assert_eq!(s.restrict(&s.ground()).unwrap(), s);
        assert_eq!(
            part("2|3").restrict(&PrimeSet::new()).unwrap(),
            Partition::empty()
        );
        assert!(part("2|3").restrict(&ps(&[7])).is_err());
    }

    #[test]
    fn enumeration_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52];
        let primes = [2, 3, 5, 7, 11];
        for k in 0..=5 {
            let all = Partition::all(&ps(&primes[..k]));
            assert_eq!(all.len(), bell[k]);
            let distinct: BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), bell[k]);
        }
    }

    #[test]
    fn meet_is_greatest_lower_bound() {
        let all = Partition::all(&ps(&[2, 3, 5, 7]));
        for a in &all {
            for b in &all {
                let m = a.meet(b).unwrap();
                assert!(m.leq(a).unwrap() && m.leq(b).unwrap());
                for c in &all {
                    if c.leq(a).unwrap() && c.leq(b).unwrap() {
                        assert!(c.leq(&m).unwrap(), "{c} below {a} and {b} but not {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_element_examples() {
        let s = Permutation::parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        // s^3 and s^2 evaluated directly
        let c = decompose_element(&s, &part("2|3")).unwrap();
        assert_eq!(c[0], s.power(3));
        assert_eq!(c[1], s.power(4));
        assert_eq!(c[0].format_cycles(), "(1 2)");
        assert_eq!(c[1].format_cycles(), "(3 4 5)");
        let id = Permutation::identity(5);
        assert!(decompose_element(&id, &part("2|3"))
            .unwrap()
            .iter()
            .all(Permutation::is_identity));
        assert_eq!(
            decompose_element(&s, &part("2,3")).unwrap(),
            vec![s.clone()]
        );
        assert!(matches!(
            decompose_element(&s, &part("2|5")),
            Err(Error::PrimeOutsideGround(3))
        ));
    }

    #[test]
    fn decompose_generators_examples() {
        let s3 = PermGroup::symmetric(3);
        let d = decompose_generators(&s3, &part("2|3"), &PrimeSet::new()).unwrap();
        assert!(d.blocks[0].iter().all(|x| x.order() == 2));
        assert!(d.blocks[1].iter().all(|x| x.order() == 3));
        let t = PermGroup::trivial(4);
        let d = decompose_generators(&t, &part("2|3"), &PrimeSet::new()).unwrap();
        assert_eq!(d.total(), 0);
        let c6 = PermGroup::from_cycles(5, &["(1 2)(3 4 5)"]).unwrap();
        let d = decompose_generators(&c6, &part("2|3"), &PrimeSet::new()).unwrap();
        assert_eq!(
            d.blocks[0],
            vec![Permutation::parse_cycles("(1 2)", 5).unwrap()]
        );
        assert_eq!(
            d.blocks[1],
            vec![Permutation::parse_cycles("(3 4 5)", 5).unwrap()]
        );
        assert!(decompose_generators(&c6, &part("2"), &PrimeSet::new()).is_err());
        let d = decompose_generators(&c6, &part("2"), &ps(&[3])).unwrap();
        assert_eq!(d.extra.len(), 1);
    }

    fn corpus() -> Vec<PermGroup> {
        vec![
            PermGroup::symmetric(4),
            PermGroup::symmetric(5),
            PermGroup::alternating(5),
            PermGroup::cyclic(30),
            PermGroup::dihedral(6),
            PermGroup::from_cycles(6, &["(1 2 3 4 5 6)", "(1 2)"]).unwrap(),
            PermGroup::from_cycles(7, &["(1 2)(3 4 5)", "(6 7)"]).unwrap(),
        ]
    }

    #[test]
    fn decomposition_regenerates_group() {
        for g in corpus() {
            let primes = g.order().primes();
            for sigma in Partition::all(&primes) {
                let d = decompose_generators(&g, &sigma, &PrimeSet::new()).unwrap();
                let h = PermGroup::new(g.degree(), d.all().cloned().collect()).unwrap();
                assert!(h.equals(&g).unwrap(), "{sigma}");
            }
        }
    }

    #[test]
    fn decomposed_components_of_random_elements() {
        let mut rng = crate::Config::default().rng();
        let groups = corpus();
        for _ in 0..500 {
            let g = &groups[rng.gen_range(0..groups.len())];
            let all = Partition::all(&g.order().primes());
            let sigma = &all[rng.gen_range(0..all.len())];
            let s = g.random_element(&mut rng);
            let comps = decompose_element(&s, sigma).unwrap();
            let prod = comps
                .iter()
                .fold(Permutation::identity(g.degree()), |acc, c| acc.then(c));
            assert_eq!(prod, s);
            let rev = comps
                .iter()
                .rev()
                .fold(Permutation::identity(g.degree()), |acc, c| acc.then(c));
            assert_eq!(rev, s);
            for (c, b) in comps.iter().zip(sigma.blocks()) {
                assert!(c.order().is_pi_number(b));
                assert!(comps.iter().all(|d| c.commutes_with(d)));
            }
        }
    }

    proptest! {
        #[test]
        fn restrict_then_meet_commute(a in 0usize..52, b in 0usize..52, mask in 0u8..32) {
            let ground = ps(&[2, 3, 5, 7, 11]);
            let all = Partition::all(&ground);
            let sub: PrimeSet = ground.iter().enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p).collect();
            let (a, b) = (&all[a], &all[b]);
            let lhs = a.meet(b).unwrap().restrict(&sub).unwrap();
            let rhs = a.restrict(&sub).unwrap().meet(&b.restrict(&sub).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parse_roundtrip(i in 0usize..52) {
            let ground = ps(&[2, 3, 5, 7, 11]);
            let p = &Partition::all(&ground)[i];
            prop_assert_eq!(&Partition::parse(&p.to_string(), &ground).unwrap(), p);
        }
    }
}
