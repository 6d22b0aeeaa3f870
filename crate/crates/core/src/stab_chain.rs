//! Stabilizer chains (bases and strong generating sets) and the
//! [`PermGroup`] handle built on them.
//!
//! The chain is built by deterministic incremental Schreier–Sims: every
//! Schreier generator of every level is sifted before the build returns.
//! New base points are the least point moved by the residue that forced
//! them, so chains are reproducible.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::order::Order;
use crate::perm::Permutation;

const ABSENT: u32 = u32::MAX;

/// Longest chain of subgroups of `S_n` (number of members), `2n − 3` for `n ≥ 2`.
pub fn subgroup_chain_bound(degree: usize) -> usize {
    if degree < 2 {
        1
    } else {
        2 * degree - 3
    }
}

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    // orbit slot of each point; left empty while the orbit is just the base point
    slot: Vec<u32>,
    transversal: Vec<Permutation>,
    transversal_inv: Vec<Permutation>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            slot: Vec::new(),
            transversal: vec![Permutation::identity(degree)],
            transversal_inv: vec![Permutation::identity(degree)],
        }
    }

    #[inline]
    fn lookup(&self, point: u32) -> Option<usize> {
        if self.slot.is_empty() {
            (point == self.base_point).then_some(0)
        } else {
            match self.slot[point as usize] {
                ABSENT => None,
                s => Some(s as usize),
            }
        }
    }

    fn try_extend(&mut self, at: usize, gen: usize) {
        let point = self.orbit[at];
        let img = self.gens[gen].at(point);
        if self.lookup(img).is_some() {
            return;
        }
        if self.slot.is_empty() {
            let degree = self.transversal[0].degree();
            self.slot = vec![ABSENT; degree];
            self.slot[self.base_point as usize] = 0;
        }
        let u = self.transversal[at].then(&self.gens[gen]);
        self.slot[img as usize] = self.orbit.len() as u32;
        self.orbit.push(img);
        self.transversal_inv.push(u.inverse());
        self.transversal.push(u);
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let new = self.gens.len() - 1;
        let old_len = self.orbit.len();
        for at in 0..old_len {
            self.try_extend(at, new);
        }
        let mut at = old_len;
        while at < self.orbit.len() {
            for gen in 0..self.gens.len() {
                self.try_extend(at, gen);
            }
            at += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn trivial(degree: usize) -> Self {
        StabilizerChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// An empty chain whose base begins with `prefix` (0-indexed points).
    /// Levels for prefix points are kept even when their orbits are trivial,
    /// so the pointwise stabilizer of the prefix is a suffix of the chain.
    pub fn with_base_prefix(degree: usize, prefix: &[u32]) -> Self {
        StabilizerChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        }
    }

    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabilizerChain::trivial(degree);
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 0-indexed.
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn level_generators(&self, level: usize) -> &[Permutation] {
        &self.levels[level].gens
    }

    /// All strong generators (the generators of the top level).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| &l.gens[..]).unwrap_or(&[])
    }

    /// Strong generators of the stabilizer at `level` (that is, of `G^(level)`).
    pub fn stabilizer_generators(&self, level: usize) -> Vec<Permutation> {
        self.levels
            .get(level)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// Product of basic orbit lengths.
    pub fn order(&self) -> Order {
        self.levels.iter().fold(Order::one(), |acc, l| {
            acc.mul(&Order::from_u64(l.orbit.len() as u64))
        })
    }

    /// Sifts `h` from `from`; returns the residue and the level where sifting stopped
    /// (`depth()` when it passed every level).
    pub fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let img = h.at(level.base_point);
            match level.lookup(img) {
                None => return (h, l),
                Some(0) => {}
                Some(s) => h = h.then(&level.transversal_inv[s]),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let (res, level) = self.sift_from(p.clone(), 0);
        level == self.levels.len() && res.is_identity()
    }

    /// Adds `g` to the group; returns false if it was already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        let (res, drop) = self.sift_from(g.clone(), 0);
        if drop == self.levels.len() && res.is_identity() {
            return false;
        }
        self.insert_residue(res, drop, 0);
        self.complete_from(drop);
        true
    }

    /// Sifts `g` and records its residue without Schreier–Sims completion.
    /// The chain stays a valid chain of some subgroup of the group its
    /// elements generate, so `order()` becomes a lower bound for that group.
    pub(crate) fn sift_insert(&mut self, g: &Permutation) -> bool {
        let (res, drop) = self.sift_from(g.clone(), 0);
        if drop == self.levels.len() && res.is_identity() {
            return false;
        }
        self.insert_residue(res, drop, 0);
        true
    }

    fn insert_residue(&mut self, res: Permutation, drop: usize, from: usize) {
        if drop == self.levels.len() {
            let b = res
                .least_moved_point()
                .expect("nonidentity residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=drop {
            self.levels[l].add_gen(res.clone());
        }
    }

    /// Schreier–Sims completion: on return, every Schreier generator of
    /// every level sifts to the identity through the levels below it.
    fn complete_from(&mut self, start: usize) {
        let mut i = start.min(self.levels.len().saturating_sub(1));
        if self.levels.is_empty() {
            return;
        }
        loop {
            let mut changed = None;
            'scan: for a in 0..self.levels[i].orbit.len() {
                for s in 0..self.levels[i].gens.len() {
                    let level = &self.levels[i];
                    let beta = level.orbit[a];
                    let gen = &level.gens[s];
                    let img = gen.at(beta);
                    let b = level.lookup(img).expect("orbit is closed");
                    let sch = level.transversal[a]
                        .then(gen)
                        .then(&level.transversal_inv[b]);
                    if sch.is_identity() {
                        continue;
                    }
                    let (res, drop) = self.sift_from(sch, i + 1);
                    if drop < self.levels.len() || !res.is_identity() {
                        self.insert_residue(res, drop, i + 1);
                        changed = Some(drop);
                        break 'scan;
                    }
                }
            }
            match changed {
                Some(j) => i = j,
                None if i == 0 => break,
                None => i -= 1,
            }
        }
    }

    /// Checks that all Schreier generators sift to the identity.
    pub fn verify(&self) -> bool {
        for i in 0..self.levels.len() {
            let level = &self.levels[i];
            for a in 0..level.orbit.len() {
                for gen in &level.gens {
                    let b = match level.lookup(gen.at(level.orbit[a])) {
                        Some(b) => b,
                        None => return false,
                    };
                    let sch = level.transversal[a]
                        .then(gen)
                        .then(&level.transversal_inv[b]);
                    let (res, drop) = self.sift_from(sch, i + 1);
                    if drop != self.levels.len() || !res.is_identity() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.transversal.len());
            if k != 0 {
                g = g.then(&level.transversal[k]);
            }
        }
        g
    }

    /// Every element exactly once, as products of transversal elements.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order.to_u64_saturating() > cap {
            return Err(Error::CapExceeded {
                what: "group order for enumeration",
                limit: cap,
            });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            if level.transversal.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * level.transversal.len());
            for g in &out {
                for u in &level.transversal {
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Canonical representative of the right coset `H·x`, where `H` is this
    /// chain's group: the coset element with lexicographically least images
    /// of the base points. Distinct cosets give distinct representatives.
    pub fn canonical_coset_rep(&self, x: &Permutation) -> Permutation {
        let mut rep = x.clone();
        for level in &self.levels {
            let mut best = 0usize;
            let mut best_img = rep.at(level.orbit[0]);
            for (k, &gamma) in level.orbit.iter().enumerate().skip(1) {
                let img = rep.at(gamma);
                if img < best_img {
                    best = k;
                    best_img = img;
                }
            }
            if best != 0 {
                rep = level.transversal[best].then(&rep);
            }
        }
        rep
    }
}

/// A permutation group given by generators, with a lazily built, cached
/// stabilizer chain.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            chain,
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.format_cycles()).collect();
        write!(f, "PermGroup[{}]⟨{}⟩", self.degree, gens.join(", "))
    }
}

impl PermGroup {
    /// Generators are deduplicated and identity-stripped; lists longer than
    /// `n²` are reduced to a non-redundant generating set.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = HashSet::new();
        let mut clean = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if !g.is_identity() && seen.insert(g.clone()) {
                clean.push(g);
            }
        }
        if clean.len() > degree * degree {
            let mut chain = StabilizerChain::trivial(degree);
            let mut kept = Vec::new();
            for g in clean {
                if chain.extend(&g) {
                    kept.push(g);
                }
            }
            return Ok(PermGroup::with_chain(degree, kept, chain));
        }
        Ok(PermGroup {
            degree,
            gens: clean,
            chain: OnceLock::new(),
        })
    }

    pub(crate) fn with_chain(
        degree: usize,
        gens: Vec<Permutation>,
        chain: StabilizerChain,
    ) -> Self {
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        PermGroup {
            degree,
            gens,
            chain: lock,
        }
    }

    /// A group whose generators are the strong generators of `chain`.
    pub fn from_chain(chain: StabilizerChain) -> Self {
        let degree = chain.degree();
        let gens = chain.strong_generators().to_vec();
        PermGroup::with_chain(degree, gens, chain)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::with_chain(degree, Vec::new(), StabilizerChain::trivial(degree))
    }

    /// Parses one cycle-notation string per generator.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, perms)
    }

    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return PermGroup::trivial(n.max(1));
        }
        let cycle: Vec<u32> = (1..n as u32).chain([0]).collect();
        let mut swap: Vec<u32> = (0..n as u32).collect();
        swap.swap(0, 1);
        PermGroup::new(
            n,
            vec![Permutation::from_raw(swap), Permutation::from_raw(cycle)],
        )
        .unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        if n < 3 {
            return PermGroup::trivial(n.max(1));
        }
        let gens = (2..n as u32)
            .map(|k| {
                let mut img: Vec<u32> = (0..n as u32).collect();
                // (1 2 k+1)
                img[0] = 1;
                img[1] = k;
                img[k as usize] = 0;
                Permutation::from_raw(img)
            })
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let cycle: Vec<u32> = (1..n as u32).chain([0]).collect();
        PermGroup::new(n, vec![Permutation::from_raw(cycle)]).unwrap()
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let cycle: Vec<u32> = (1..n as u32).chain([0]).collect();
        let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        PermGroup::new(
            n,
            vec![
                Permutation::from_raw(cycle),
                Permutation::from_raw(reflection),
            ],
        )
        .unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.gens))
    }

    pub fn order(&self) -> Order {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    fn check_degree(&self, other: usize) -> Result<()> {
        if self.degree != other {
            return Err(Error::DegreeMismatch(self.degree, other));
        }
        Ok(())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p.degree())?;
        Ok(self.chain().contains(p))
    }

    /// True iff every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        self.check_degree(other.degree)?;
        let chain = other.chain();
        Ok(self.gens.iter().all(|g| chain.contains(g)))
    }

    /// Mutual inclusion, short-circuited by comparing orders.
    pub fn equals(&self, other: &PermGroup) -> Result<bool> {
        self.check_degree(other.degree)?;
        if self.order() != other.order() {
            return Ok(false);
        }
        self.is_subgroup_of(other)
    }

    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        self.chain().elements(cap)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }
}
