//! Brute-force certifiers for tiny groups.
//!
//! Everything here works straight from the definitions on an explicit
//! multiplication table of `G/K`, whose elements are the cosets of `K`
//! labelled by canonical representatives. Nothing in this module calls the
//! subgroup toolbox, the checks or the least-partition solvers, so the test
//! suites can compare those against it.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::order::{format_prime_set, Order, PrimeSet};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::stab_chain::PermGroup;

/// Default bound for oracles that enumerate the subgroup lattice.
pub const LATTICE_CAP: u64 = 200;
/// Default bound for oracles that only enumerate elements.
pub const ENUM_CAP: u64 = 2000;

/// A set of quotient elements, indexed as in the owning [`QuotientModel`].
pub type ElemSet = FixedBitSet;

/// `G/K` as a multiplication table.
pub struct QuotientModel {
    degree: usize,
    k: PermGroup,
    reps: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl QuotientModel {
    /// Builds the table of `big/small`, which must have at most `cap`
    /// elements. `small` must be normal in `big`; this is not re-checked.
    pub fn new(big: &PermGroup, small: &PermGroup, cap: u64) -> Result<Self> {
        let index_order = big
            .order()
            .checked_div(&small.order())
            .ok_or(Error::NotSubgroup("K is not contained in G"))?;
        if index_order.to_u64_saturating() > cap {
            return Err(Error::CapExceeded {
                what: "quotient order for brute-force search",
                limit: cap,
            });
        }
        let chain = small.chain();
        let canon = |x: &Permutation| chain.canonical_coset_rep(x);
        let id = canon(&Permutation::identity(big.degree()));
        let mut reps = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut at = 0;
        while at < reps.len() {
            for g in big.generators() {
                let next = canon(&reps[at].then(g));
                if !index.contains_key(&next) {
                    index.insert(next.clone(), reps.len() as u32);
                    reps.push(next);
                }
            }
            at += 1;
        }
        let n = reps.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&canon(&reps[i].then(&reps[j]))];
            }
        }
        let inv = (0..n)
            .map(|i| (0..n).find(|&j| table[i * n + j] == 0).unwrap() as u32)
            .collect();
        Ok(QuotientModel {
            degree: big.degree(),
            k: small.clone(),
            reps,
            index,
            table,
            inv,
        })
    }

    pub fn of_group(g: &PermGroup, cap: u64) -> Result<Self> {
        Self::new(g, &PermGroup::trivial(g.degree()), cap)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> Order {
        Order::from_u64(self.len() as u64)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `x⁻¹ a x`.
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn elem_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn index_of(&self, x: &Permutation) -> u32 {
        self.index[&self.k.chain().canonical_coset_rep(x)]
    }

    pub fn representative(&self, a: u32) -> &Permutation {
        &self.reps[a as usize]
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// The subgroup generated by `seeds`.
    pub fn closure(&self, seeds: impl IntoIterator<Item = u32>) -> ElemSet {
        let seeds: Vec<u32> = seeds.into_iter().filter(|&x| x != 0).collect();
        let mut set = self.empty_set();
        set.insert(0);
        let mut members = vec![0u32];
        let mut at = 0;
        while at < members.len() {
            for &s in &seeds {
                let y = self.mul(members[at], s);
                if !set.put(y as usize) {
                    members.push(y);
                }
            }
            at += 1;
        }
        set
    }

    /// The subgroup generated by a set of elements.
    pub fn closure_of_set(&self, set: &ElemSet) -> ElemSet {
        self.closure(set.ones().map(|x| x as u32))
    }

    /// Image of `H ≥ K` in `G/K`.
    pub fn image(&self, h: &PermGroup) -> ElemSet {
        self.closure(h.generators().iter().map(|x| self.index_of(x)))
    }

    /// The smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: impl IntoIterator<Item = u32>) -> ElemSet {
        let mut conjugates = Vec::new();
        for s in seeds {
            for x in 0..self.len() as u32 {
                conjugates.push(self.conj(s, x));
            }
        }
        self.closure(conjugates)
    }

    pub fn is_normal_in(&self, a: &ElemSet, b: &ElemSet) -> bool {
        a.ones().all(|x| {
            b.ones()
                .all(|y| a.contains(self.conj(x as u32, y as u32) as usize))
        })
    }

    /// `A^x = x⁻¹ A x`.
    pub fn conjugate_set(&self, a: &ElemSet, x: u32) -> ElemSet {
        let mut out = self.empty_set();
        for y in a.ones() {
            out.insert(self.conj(y as u32, x) as usize);
        }
        out
    }

    /// `A_B`: the intersection of all conjugates of `A` by elements of `B`.
    pub fn core_in(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = a.clone();
        for x in b.ones() {
            out.intersect_with(&self.conjugate_set(a, x as u32));
        }
        out
    }

    /// The element set `{ab : a ∈ A, b ∈ B}`.
    pub fn product_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in a.ones() {
            for y in b.ones() {
                out.insert(self.mul(x as u32, y as u32) as usize);
            }
        }
        out
    }

    /// A small generating set of a subgroup, chosen greedily.
    pub fn generators_of(&self, set: &ElemSet) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = self.closure([]);
        for x in set.ones() {
            if !span.contains(x) {
                gens.push(x as u32);
                span = self.closure(gens.iter().copied());
            }
        }
        gens
    }

    /// The preimage in `G` of a subgroup of `G/K`.
    pub fn preimage(&self, set: &ElemSet) -> PermGroup {
        let mut gens: Vec<Permutation> = self
            .generators_of(set)
            .into_iter()
            .map(|x| self.reps[x as usize].clone())
            .collect();
        gens.extend(self.k.generators().iter().cloned());
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// Elements whose order is a π-number.
    pub fn pi_elements(&self, pi: &PrimeSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in 0..self.len() as u32 {
            if Order::from_u64(self.elem_order(x)).is_pi_number(pi) {
                out.insert(x as usize);
            }
        }
        out
    }

    /// All normal subgroups: joins of normal closures of single elements.
    pub fn normal_subgroups(&self) -> Vec<ElemSet> {
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut atoms = Vec::new();
        for x in 0..self.len() as u32 {
            let n = self.normal_closure([x]);
            if seen.insert(n.clone()) {
                atoms.push(n);
            }
        }
        let mut all: Vec<ElemSet> = atoms.clone();
        let mut frontier = atoms.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &atoms {
                    let mut u = a.clone();
                    u.union_with(b);
                    let j = self.closure_of_set(&u);
                    if seen.insert(j.clone()) {
                        all.push(j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        all
    }
}

fn set_order(s: &ElemSet) -> Order {
    Order::from_u64(s.count_ones(..) as u64)
}

/// Every subgroup of a small group with inclusion and normality relations.
pub struct SubgroupLattice {
    pub model: QuotientModel,
    /// Sorted by size, then by elements.
    pub subgroups: Vec<ElemSet>,
    /// `includes[i][j]`: subgroup `i` contains subgroup `j`.
    pub includes: Vec<Vec<bool>>,
    /// `normal[i][j]`: subgroup `j` is normal in subgroup `i`.
    pub normal: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    /// The lattice of `G/K`. Every subgroup is a join of cyclic subgroups,
    /// so joining cyclic subgroups onto known ones until nothing new
    /// appears finds them all.
    pub fn of_model(model: QuotientModel) -> Self {
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut cyclic = Vec::new();
        for x in 0..model.len() as u32 {
            let c = model.closure([x]);
            if seen.insert(c.clone()) {
                cyclic.push(c);
            }
        }
        let mut all = cyclic.clone();
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for c in &cyclic {
                    if c.is_subset(a) {
                        continue;
                    }
                    let mut u = a.clone();
                    u.union_with(c);
                    let j = model.closure_of_set(&u);
                    if seen.insert(j.clone()) {
                        all.push(j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        let n = all.len();
        let mut includes = vec![vec![false; n]; n];
        let mut normal = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if all[j].is_subset(&all[i]) {
                    includes[i][j] = true;
                    normal[i][j] = model.is_normal_in(&all[j], &all[i]);
                }
            }
        }
        SubgroupLattice {
            model,
            subgroups: all,
            includes,
            normal,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn position(&self, set: &ElemSet) -> Option<usize> {
        self.subgroups.iter().position(|s| s == set)
    }

    /// Subgroup `i` as a permutation group (its preimage when `K ≠ 1`).
    pub fn group(&self, i: usize) -> PermGroup {
        self.model.preimage(&self.subgroups[i])
    }
}

pub fn subgroup_lattice(g: &PermGroup, cap: u64) -> Result<SubgroupLattice> {
    Ok(SubgroupLattice::of_model(QuotientModel::of_group(g, cap)?))
}

/// Depth-first search over π-subgroups, returning those of order `|Q|_π`.
fn hall_search(model: &QuotientModel, pi: &PrimeSet, first_only: bool) -> Vec<ElemSet> {
    let target = model.order().part(pi).to_u64().unwrap() as usize;
    let candidates: Vec<u32> = model.pi_elements(pi).ones().map(|x| x as u32).collect();
    let mut visited: HashSet<ElemSet> = HashSet::new();
    let mut found = Vec::new();
    let mut stack = vec![model.closure([])];
    while let Some(a) = stack.pop() {
        if a.count_ones(..) == target {
            found.push(a);
            if first_only {
                break;
            }
            continue;
        }
        for &x in &candidates {
            if a.contains(x as usize) {
                continue;
            }
            let b = model.closure(a.ones().map(|y| y as u32).chain([x]));
            if set_order(&b).is_pi_number(pi) && visited.insert(b.clone()) {
                stack.push(b);
            }
        }
    }
    found
}

/// All Hall `block`-subgroups of `g`.
pub fn hall_subgroups(g: &PermGroup, block: &PrimeSet, cap: u64) -> Result<Vec<PermGroup>> {
    let model = QuotientModel::of_group(g, cap)?;
    Ok(hall_search(&model, block, false)
        .iter()
        .map(|s| model.preimage(s))
        .collect())
}

/// True iff `AB = BA` as element sets.
pub fn set_product_permutes(a: &PermGroup, b: &PermGroup, cap: u64) -> Result<bool> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    let size = a.order().mul(&b.order());
    if size.to_u64_saturating() > cap {
        return Err(Error::CapExceeded {
            what: "set product size",
            limit: cap,
        });
    }
    let xs = a.elements(cap)?;
    let ys = b.elements(cap)?;
    let ab: HashSet<Permutation> = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| x.then(y)))
        .collect();
    let ba: HashSet<Permutation> = ys
        .iter()
        .flat_map(|y| xs.iter().map(move |x| y.then(x)))
        .collect();
    Ok(ab == ba)
}

fn fit(sigma: &Partition, model: &QuotientModel) -> Result<Partition> {
    let q = model.order().primes();
    let ground = sigma.ground();
    if !q.is_subset(&ground) {
        return Err(Error::GroundMismatch {
            expected: format_prime_set(&q),
            found: format_prime_set(&ground),
        });
    }
    sigma.restrict(&q)
}

/// σ-nilpotency of a quotient: for every block its elements must form a
/// subgroup of full block order, which is then the normal Hall subgroup.
pub fn nilpotent_in_model(model: &QuotientModel, sigma: &Partition) -> Result<bool> {
    let sig = fit(sigma, model)?;
    let order = model.order();
    Ok(sig.blocks().iter().all(|b| {
        let elems = model.pi_elements(b);
        set_order(&elems) == order.part(b) && model.closure_of_set(&elems) == elems
    }))
}

pub fn sigma_nilpotent_oracle(
    big: &PermGroup,
    small: &PermGroup,
    sigma: &Partition,
    cap: u64,
) -> Result<bool> {
    nilpotent_in_model(&QuotientModel::new(big, small, cap)?, sigma)
}

/// Prime sets of a chief series, built from the list of all normal subgroups.
pub fn chief_factor_primes(model: &QuotientModel) -> Vec<PrimeSet> {
    let normals = model.normal_subgroups();
    let mut current = model.closure([]);
    let mut out = Vec::new();
    while current.count_ones(..) < model.len() {
        let next = normals
            .iter()
            .filter(|n| current.is_subset(n) && **n != current)
            .find(|n| {
                !normals
                    .iter()
                    .any(|m| current.is_subset(m) && m != &current && m.is_subset(n) && m != *n)
            })
            .expect("G/K itself lies above")
            .clone();
        let factor = set_order(&next).checked_div(&set_order(&current)).unwrap();
        out.push(factor.primes());
        current = next;
    }
    out
}

pub fn soluble_in_model(model: &QuotientModel, sigma: &Partition) -> Result<bool> {
    let sig = fit(sigma, model)?;
    Ok(chief_factor_primes(model)
        .iter()
        .all(|f| sig.blocks().iter().any(|b| f.is_subset(b))))
}

pub fn sigma_soluble_oracle(
    big: &PermGroup,
    small: &PermGroup,
    sigma: &Partition,
    cap: u64,
) -> Result<bool> {
    soluble_in_model(&QuotientModel::new(big, small, cap)?, sigma)
}

/// σ-subnormality of subgroup `h` (a lattice index) by dynamic programming
/// from the top of the lattice: `A` reaches the top if some `B > A` does
/// and either `A ⊴ B` or `B/A_B` is a block-group.
pub fn subnormal_in_lattice(lat: &SubgroupLattice, h: usize, sigma: &Partition) -> Result<bool> {
    let sig = fit(sigma, &lat.model)?;
    let n = lat.len();
    let mut reach = vec![false; n];
    reach[n - 1] = true;
    for a in (0..n - 1).rev() {
        reach[a] = (a + 1..n).any(|b| {
            reach[b]
                && lat.includes[b][a]
                && lat.subgroups[b] != lat.subgroups[a]
                && (lat.normal[b][a] || {
                    let core = lat.model.core_in(&lat.subgroups[a], &lat.subgroups[b]);
                    let q = set_order(&lat.subgroups[b])
                        .checked_div(&set_order(&core))
                        .unwrap();
                    sig.blocks().iter().any(|blk| q.is_pi_number(blk))
                })
        });
    }
    Ok(reach[h])
}

pub fn sigma_subnormal_oracle(
    g: &PermGroup,
    h: &PermGroup,
    sigma: &Partition,
    cap: u64,
) -> Result<bool> {
    let lat = subgroup_lattice(g, cap)?;
    let image = lat.model.image(h);
    let i = lat
        .position(&image)
        .ok_or(Error::NotSubgroup("H is not contained in G"))?;
    subnormal_in_lattice(&lat, i, sigma)
}

/// σ-permutability of `h` (an element set of the model) in a σ-soluble
/// quotient: one Hall subgroup per block, tested against every conjugate.
pub fn permutable_in_model(model: &QuotientModel, h: &ElemSet, sigma: &Partition) -> Result<bool> {
    if !soluble_in_model(model, sigma)? {
        return Err(Error::NotSigmaSoluble(sigma.to_string()));
    }
    let sig = fit(sigma, model)?;
    for b in sig.blocks() {
        let hall = hall_search(model, b, true)
            .pop()
            .ok_or_else(|| Error::Invariant(format!("no Hall {}-subgroup", format_prime_set(b))))?;
        let mut tried = HashSet::new();
        for x in 0..model.len() as u32 {
            let conj = model.conjugate_set(&hall, x);
            if tried.insert(conj.clone())
                && model.product_set(h, &conj) != model.product_set(&conj, h)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn sigma_permutable_oracle(
    g: &PermGroup,
    h: &PermGroup,
    sigma: &Partition,
    cap: u64,
) -> Result<bool> {
    let model = QuotientModel::of_group(g, cap)?;
    let image = model.image(h);
    permutable_in_model(&model, &image, sigma)
}

/// The meet of all partitions of `primes` satisfying `holds`, after
/// confirming that the single block satisfies it and the meet does too.
pub fn least_partition_oracle(
    primes: &PrimeSet,
    mut holds: impl FnMut(&Partition) -> Result<bool>,
) -> Result<Partition> {
    if primes.len() > 4 {
        return Err(Error::CapExceeded {
            what: "number of primes for exhaustive partition search",
            limit: 4,
        });
    }
    let top = Partition::whole(primes);
    if !holds(&top)? {
        return Err(Error::Invariant(format!(
            "property fails at the single block {top}"
        )));
    }
    let mut meet = top;
    for p in Partition::all(primes) {
        if holds(&p)? {
            meet = meet.meet(&p)?;
        }
    }
    if !holds(&meet)? {
        return Err(Error::Invariant(format!(
            "property holds at partitions whose meet {meet} fails"
        )));
    }
    Ok(meet)
}
