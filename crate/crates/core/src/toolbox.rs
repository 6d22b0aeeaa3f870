//! Subgroup constructions on top of stabilizer chains: joins, normal
//! closures, commutator subgroups, intersections with normal subgroups,
//! cores, Sylow subgroups, `O^π(G)`, and chief series through a normal
//! subgroup.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::order::{Order, Prime, PrimeSet};
use crate::perm::Permutation;
use crate::stab_chain::{subgroup_chain_bound, PermGroup, StabilizerChain};

/// A section `G/K` with `K ⊴ G`, kept as the pair of groups.
#[derive(Clone, Debug)]
pub struct Section {
    big: PermGroup,
    small: PermGroup,
}

impl Section {
    pub fn new(big: PermGroup, small: PermGroup) -> Result<Self> {
        if big.degree() != small.degree() {
            return Err(Error::DegreeMismatch(big.degree(), small.degree()));
        }
        if !small.is_subgroup_of(&big)? {
            return Err(Error::NotSubgroup("K is not contained in G"));
        }
        if !is_normal_in(&small, &big)? {
            return Err(Error::NotNormal("K is not normal in G"));
        }
        Ok(Section { big, small })
    }

    /// `G/1`.
    pub fn over_trivial(big: PermGroup) -> Self {
        let small = PermGroup::trivial(big.degree());
        Section { big, small }
    }

    pub fn big(&self) -> &PermGroup {
        &self.big
    }

    pub fn small(&self) -> &PermGroup {
        &self.small
    }

    pub fn degree(&self) -> usize {
        self.big.degree()
    }

    /// `|G/K|`.
    pub fn order(&self) -> Order {
        self.big
            .order()
            .checked_div(&self.small.order())
            .expect("|K| divides |G|")
    }

    /// `π(G/K)`.
    pub fn primes(&self) -> PrimeSet {
        self.order().primes()
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }
}

pub fn section_order(s: &Section) -> Order {
    s.order()
}

pub fn section_primes(s: &Section) -> PrimeSet {
    s.primes()
}

fn same_degree(a: &PermGroup, b: &PermGroup) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(())
}

/// `⟨H, K⟩`.
pub fn join(h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    same_degree(h, k)?;
    let mut chain = h.chain().clone();
    let mut gens = h.generators().to_vec();
    for x in k.generators() {
        if chain.extend(x) {
            gens.push(x.clone());
        }
    }
    Ok(PermGroup::with_chain(h.degree(), gens, chain))
}

/// Closure of `start` (whose generators `start_gens` must already be
/// invariant under conjugation by `ambient`) together with `extra`, under
/// conjugation by the generators of `ambient`. Stops early once the order
/// reaches `stop_at`.
pub(crate) fn closure_under_conjugation(
    ambient: &[Permutation],
    start: &StabilizerChain,
    start_gens: &[Permutation],
    extra: impl IntoIterator<Item = Permutation>,
    stop_at: Option<&Order>,
) -> PermGroup {
    let mut chain = start.clone();
    let mut gens = start_gens.to_vec();
    let mut queue = VecDeque::new();
    for x in extra {
        if chain.extend(&x) {
            gens.push(x.clone());
            queue.push_back(x);
        }
    }
    'outer: while let Some(t) = queue.pop_front() {
        if let Some(target) = stop_at {
            if &chain.order() == target {
                break 'outer;
            }
        }
        for g in ambient {
            let c = t.conjugate_by(g);
            if chain.extend(&c) {
                gens.push(c.clone());
                queue.push_back(c);
                if let Some(target) = stop_at {
                    if &chain.order() == target {
                        break 'outer;
                    }
                }
            }
        }
    }
    PermGroup::with_chain(start.degree(), gens, chain)
}

/// `⟨T⟩^G`, the smallest normal subgroup of `G` containing `T`.
pub fn normal_closure(g: &PermGroup, t: &PermGroup) -> Result<PermGroup> {
    same_degree(g, t)?;
    if !t.is_subgroup_of(g)? {
        return Err(Error::NotSubgroup("T is not contained in G"));
    }
    Ok(normal_closure_of(g, t.generators().iter().cloned()))
}

pub(crate) fn normal_closure_of(
    g: &PermGroup,
    elems: impl IntoIterator<Item = Permutation>,
) -> PermGroup {
    closure_under_conjugation(
        g.generators(),
        &StabilizerChain::trivial(g.degree()),
        &[],
        elems,
        None,
    )
}

/// `[H, K]`: the normal closure in `⟨H, K⟩` of the generator commutators.
pub fn commutator_subgroup(h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
    let hk = join(h, k)?;
    let comms: Vec<Permutation> = h
        .generators()
        .iter()
        .flat_map(|a| k.generators().iter().map(move |b| a.commutator(b)))
        .collect();
    Ok(normal_closure_of(&hk, comms))
}

/// True iff every generator of `G` conjugates every generator of `H` into `H`.
pub fn is_normal_in(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    same_degree(h, g)?;
    if !h.is_subgroup_of(g)? {
        return Err(Error::NotSubgroup("H is not contained in G"));
    }
    Ok(normalizes(g.generators(), h))
}

/// True iff conjugation by each of `elems` maps `h` into itself.
pub(crate) fn normalizes(elems: &[Permutation], h: &PermGroup) -> bool {
    let chain = h.chain();
    elems.iter().all(|x| {
        h.generators()
            .iter()
            .all(|t| chain.contains(&t.conjugate_by(x)))
    })
}

/// `H ∩ K` for `H, K ≤ G` with `K ⊴ G`.
///
/// Uses the product action on two copies of the points: the group generated
/// by `(h, h)` and `(1, k)` is `{(h, hk)}`, and its pointwise stabilizer of
/// the second copy is `{(x, 1) : x ∈ H ∩ K}`.
pub fn intersect_with_normal(h: &PermGroup, k: &PermGroup, g: &PermGroup) -> Result<PermGroup> {
    same_degree(h, g)?;
    same_degree(k, g)?;
    if !h.is_subgroup_of(g)? || !k.is_subgroup_of(g)? {
        return Err(Error::NotSubgroup("H and K must lie in G"));
    }
    if !normalizes(g.generators(), k) {
        return Err(Error::NotNormal("K is not normal in G"));
    }
    Ok(intersect_normal_unchecked(h, k))
}

pub(crate) fn intersect_normal_unchecked(h: &PermGroup, k: &PermGroup) -> PermGroup {
    let n = h.degree();
    if h.is_trivial() || k.is_trivial() {
        return PermGroup::trivial(n);
    }
    if h.is_subgroup_of(k).unwrap() {
        return h.clone();
    }
    if k.is_subgroup_of(h).unwrap() {
        return k.clone();
    }
    let second: Vec<u32> = (n as u32..2 * n as u32).collect();
    let mut chain = StabilizerChain::with_base_prefix(2 * n, &second);
    for x in h.generators() {
        let mut img = x.raw().to_vec();
        img.extend(x.raw().iter().map(|&v| v + n as u32));
        chain.extend(&Permutation::from_raw(img));
    }
    for x in k.generators() {
        let mut img: Vec<u32> = (0..n as u32).collect();
        img.extend(x.raw().iter().map(|&v| v + n as u32));
        chain.extend(&Permutation::from_raw(img));
    }
    let gens: Vec<Permutation> = chain
        .stabilizer_generators(n)
        .into_iter()
        .map(|x| Permutation::from_raw(x.raw()[..n].to_vec()))
        .collect();
    PermGroup::new(n, gens).unwrap()
}

/// Canonical right-coset representatives of `N` in `M`, by breadth-first
/// search under right multiplication by the generators of `M`.
pub fn coset_representatives(m: &PermGroup, n: &PermGroup, cap: u64) -> Result<Vec<Permutation>> {
    let chain = n.chain();
    let start = chain.canonical_coset_rep(&Permutation::identity(m.degree()));
    let mut seen = HashSet::from([start.clone()]);
    let mut reps = vec![start];
    let mut at = 0;
    while at < reps.len() {
        for g in m.generators() {
            let next = chain.canonical_coset_rep(&reps[at].then(g));
            if seen.insert(next.clone()) {
                reps.push(next);
                if reps.len() as u64 > cap {
                    return Err(Error::CapExceeded {
                        what: "number of cosets",
                        limit: cap,
                    });
                }
            }
        }
        at += 1;
    }
    Ok(reps)
}

/// `H_G`, the largest normal subgroup of `G` inside `H`: the kernel of the
/// action of `G` on the right cosets of `H`.
pub fn core(g: &PermGroup, h: &PermGroup, cfg: &Config) -> Result<PermGroup> {
    same_degree(g, h)?;
    if !h.is_subgroup_of(g)? {
        return Err(Error::NotSubgroup("H is not contained in G"));
    }
    if normalizes(g.generators(), h) {
        return Ok(h.clone());
    }
    let index = g.order().checked_div(&h.order()).expect("Lagrange");
    if index.to_u64_saturating() > cfg.index_cap {
        return Err(Error::CapExceeded {
            what: "index |G:H| for the coset action",
            limit: cfg.index_cap,
        });
    }
    let reps = coset_representatives(g, h, cfg.index_cap)?;
    let slot: HashMap<&Permutation, u32> = reps
        .iter()
        .enumerate()
        .map(|(i, r)| (r, i as u32))
        .collect();
    let n = g.degree();
    let m = reps.len();
    let chain_h = h.chain();
    // G acts on Ω ⊔ cosets; the kernel is the pointwise stabilizer of the cosets.
    let coset_points: Vec<u32> = (n as u32..(n + m) as u32).collect();
    let mut chain = StabilizerChain::with_base_prefix(n + m, &coset_points);
    for x in g.generators() {
        let mut img = x.raw().to_vec();
        for r in &reps {
            let target = chain_h.canonical_coset_rep(&r.then(x));
            img.push(n as u32 + slot[&target]);
        }
        chain.extend(&Permutation::from_raw(img));
    }
    debug_assert_eq!(chain.order(), g.order());
    let gens: Vec<Permutation> = chain
        .stabilizer_generators(m)
        .into_iter()
        .map(|x| Permutation::from_raw(x.raw()[..n].to_vec()))
        .collect();
    PermGroup::new(n, gens)
}

/// A Sylow p-subgroup of `G` (trivial when `p ∤ |G|`).
///
/// Grows a p-subgroup `P` by p-elements that normalize it. Up to
/// `enum_cap` elements the search scans the whole group, which always
/// succeeds because `N_G(P)/P` has order divisible by `p` while `P` is not
/// Sylow; above that it draws random elements and errors after
/// `sylow_retries` failed attempts.
pub fn sylow(g: &PermGroup, p: Prime, cfg: &Config) -> Result<PermGroup> {
    let target = g.order().p_part(p);
    let n = g.degree();
    if target.is_one() {
        return Ok(PermGroup::trivial(n));
    }
    let only_p = PrimeSet::from([p]);
    let mut chain = StabilizerChain::trivial(n);
    let mut gens: Vec<Permutation> = Vec::new();

    let normalizes_p = |gens: &[Permutation], chain: &StabilizerChain, y: &Permutation| {
        gens.iter().all(|t| chain.contains(&t.conjugate_by(y)))
    };

    if g.order().to_u64_saturating() <= cfg.enum_cap {
        let elements = g.elements(cfg.enum_cap)?;
        while chain.order() != target {
            let found = elements.iter().find_map(|x| {
                let y = x.pi_part(&only_p);
                (!chain.contains(&y) && normalizes_p(&gens, &chain, &y)).then_some(y)
            });
            match found {
                Some(y) => {
                    chain.extend(&y);
                    gens.push(y);
                }
                None => {
                    return Err(Error::Invariant(format!(
                        "no p-element normalizes a non-Sylow {p}-subgroup"
                    )))
                }
            }
        }
    } else {
        let mut rng = cfg.rng();
        let mut failures = 0usize;
        while chain.order() != target {
            if failures >= cfg.sylow_retries {
                return Err(Error::SylowSearchExhausted(p));
            }
            let y = g.random_element(&mut rng).pi_part(&only_p);
            if y.is_identity() || chain.contains(&y) {
                failures += 1;
                continue;
            }
            if normalizes_p(&gens, &chain, &y) {
                chain.extend(&y);
                gens.push(y);
                continue;
            }
            let mut trial = chain.clone();
            trial.extend(&y);
            if trial.order().is_pi_number(&only_p) {
                chain = trial;
                gens.push(y);
            } else {
                failures += 1;
            }
        }
    }
    Ok(PermGroup::with_chain(n, gens, chain))
}

/// `O^{p'}(G)`, the subgroup generated by all p-elements of `G`.
///
/// Grows the normal closure of p-parts of the generators and of random
/// elements until `p` no longer divides the index. The stopping test is
/// exact: the closure is generated by p-elements, so it lies in `O^{p'}(G)`,
/// and it has p'-index, so it contains `O^{p'}(G)`.
pub fn p_element_closure(g: &PermGroup, p: Prime, cfg: &Config) -> Result<PermGroup> {
    let only_p = PrimeSet::from([p]);
    let order = g.order();
    let mut l = normal_closure_of(g, g.generators().iter().map(|x| x.pi_part(&only_p)));
    let mut rng = cfg.rng();
    let mut failures = 0usize;
    while order.checked_div(&l.order()).unwrap().exponent(p) > 0 {
        if failures >= cfg.sylow_retries {
            return Err(Error::SylowSearchExhausted(p));
        }
        let y = g.random_element(&mut rng).pi_part(&only_p);
        if l.chain().contains(&y) {
            failures += 1;
            continue;
        }
        l = closure_under_conjugation(g.generators(), l.chain(), l.generators(), [y], None);
    }
    Ok(l)
}

/// `O^π(G)`, the smallest normal subgroup of π-index: the product of
/// `O^{p'}(G)` over `p ∈ π(G) ∖ π`.
pub fn o_upper_pi(g: &PermGroup, pi: &PrimeSet, cfg: &Config) -> Result<PermGroup> {
    UpperPiCache::new(g, cfg).get(pi)
}

/// `O^π(G)` for several π over one `G`, sharing the per-prime pieces
/// `O^{p'}(G)`.
pub struct UpperPiCache<'a> {
    g: &'a PermGroup,
    cfg: &'a Config,
    pieces: HashMap<Prime, PermGroup>,
    closures: HashMap<PrimeSet, PermGroup>,
}

impl<'a> UpperPiCache<'a> {
    pub fn new(g: &'a PermGroup, cfg: &'a Config) -> Self {
        UpperPiCache {
            g,
            cfg,
            pieces: HashMap::new(),
            closures: HashMap::new(),
        }
    }

    pub fn group(&self) -> &PermGroup {
        self.g
    }

    /// `O^{p'}(G)`.
    pub fn piece(&mut self, p: Prime) -> Result<&PermGroup> {
        if !self.pieces.contains_key(&p) {
            let s = p_element_closure(self.g, p, self.cfg)?;
            self.pieces.insert(p, s);
        }
        Ok(&self.pieces[&p])
    }

    /// `O^π(G)`; only `π ∩ π(G)` matters.
    pub fn get(&mut self, pi: &PrimeSet) -> Result<PermGroup> {
        let primes = self.g.order().primes();
        let key: PrimeSet = pi.intersection(&primes).copied().collect();
        if let Some(o) = self.closures.get(&key) {
            return Ok(o.clone());
        }
        let mut o = PermGroup::trivial(self.g.degree());
        for p in primes.difference(&key) {
            let piece = self.piece(*p)?.clone();
            o = join(&o, &piece)?;
        }
        self.closures.insert(key, o.clone());
        Ok(o)
    }

    /// `O^{π'}(G)`: the subgroup generated by the π-elements.
    pub fn get_complement(&mut self, pi: &PrimeSet) -> Result<PermGroup> {
        let rest: PrimeSet = self.g.order().primes().difference(pi).copied().collect();
        self.get(&rest)
    }
}

/// An ascending chief series `K = G_0 < G_1 < … < G_k = G` of `G` through `K`.
#[derive(Clone, Debug)]
pub struct ChiefSeries {
    pub groups: Vec<PermGroup>,
    pub factor_orders: Vec<Order>,
    pub factor_primes: Vec<PrimeSet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiefFactorSummary {
    pub order: String,
    pub primes: Vec<Prime>,
}

impl ChiefSeries {
    pub fn len(&self) -> usize {
        self.factor_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factor_orders.is_empty()
    }

    pub fn summary(&self) -> Vec<ChiefFactorSummary> {
        self.factor_orders
            .iter()
            .zip(&self.factor_primes)
            .map(|(o, p)| ChiefFactorSummary {
                order: o.to_string(),
                primes: p.iter().copied().collect(),
            })
            .collect()
    }
}

pub fn chief_series(s: &Section, cfg: &Config) -> Result<ChiefSeries> {
    let g = s.big();
    let mut groups = vec![s.small().clone()];
    let target = g.order();
    while groups.last().unwrap().order() != target {
        let next = minimal_normal_over(g, groups.last().unwrap(), cfg)?;
        groups.push(next);
    }
    assert!(
        groups.len() <= subgroup_chain_bound(g.degree()).max(1),
        "chief series longer than the subgroup chain bound"
    );
    let factor_orders: Vec<Order> = groups
        .windows(2)
        .map(|w| w[1].order().checked_div(&w[0].order()).unwrap())
        .collect();
    let factor_primes = factor_orders.iter().map(|o| o.primes()).collect();
    Ok(ChiefSeries {
        groups,
        factor_orders,
        factor_primes,
    })
}

/// A power of `y` whose coset `yN` has prime order, or `None` for `y ∈ N`.
fn prime_order_power(y: &Permutation, n_chain: &StabilizerChain) -> Option<Permutation> {
    if n_chain.contains(y) {
        return None;
    }
    let pow = |mut z: Permutation, factors: &[(Prime, u32)]| {
        for &(p, e) in factors {
            for _ in 0..e {
                z = z.power(p as i64);
            }
        }
        z
    };
    // shrink the exponent to the order of yN
    let mut factors: Vec<(Prime, u32)> =
        y.order().factors().iter().map(|(p, e)| (*p, *e)).collect();
    for i in 0..factors.len() {
        while factors[i].1 > 0 {
            factors[i].1 -= 1;
            if !n_chain.contains(&pow(y.clone(), &factors)) {
                factors[i].1 += 1;
                break;
            }
        }
    }
    let i = factors.iter().position(|f| f.1 > 0)?;
    factors[i].1 -= 1;
    Some(pow(y.clone(), &factors))
}

/// Random walk in `⟨y⟩^G N` by conjugates of `y` under uniform elements of
/// `G`, sifted into a partial chain. Returns true once the chain proves the
/// order has reached `target`; false is inconclusive.
fn closure_reaches(
    g: &PermGroup,
    n_chain: &StabilizerChain,
    y: &Permutation,
    target: &Order,
    rng: &mut impl rand::Rng,
) -> bool {
    const STALL: usize = 24;
    let mut chain = n_chain.clone();
    let mut walk = Permutation::identity(g.degree());
    let mut stalled = 0;
    while stalled < STALL {
        walk = walk.then(&y.conjugate_by(&g.random_element(rng)));
        if chain.sift_insert(&walk) {
            stalled = 0;
            if &chain.order() == target {
                return true;
            }
        } else {
            stalled += 1;
        }
    }
    false
}

/// A normal subgroup `M` of `G` with `M/N` minimal normal in `G/N`.
///
/// Starts from `⟨x⟩^G N` for a power `x` of a generator with `xN` of prime
/// order, then descends: through `[M, M]N` when that lies strictly between,
/// and whenever some `y ∈ M ∖ N` has `⟨y⟩^G N < M`, through that closure.
/// Only elements of prime order modulo `N` need testing, since every
/// minimal normal subgroup contains one. When `|M/N|` is within `enum_cap`
/// every coset is examined, so the result is exact; otherwise random
/// elements of `M` are examined.
fn minimal_normal_over(g: &PermGroup, n: &PermGroup, cfg: &Config) -> Result<PermGroup> {
    let n_chain = n.chain();
    let n_order = n.order();
    let closure_over = |y: &Permutation, stop: Option<&Order>| {
        closure_under_conjugation(g.generators(), n_chain, n.generators(), [y.clone()], stop)
    };
    let x = g
        .generators()
        .iter()
        .find_map(|x| prime_order_power(x, n_chain))
        .ok_or(Error::ChiefSeriesNotFound("G equals the current term"))?;
    let mut m = closure_over(&x, None);
    let mut rng = cfg.rng();
    // is there y ∈ M ∖ N whose closure is smaller than M?
    let smaller = |m: &PermGroup, y: &Permutation, rng: &mut rand_chacha::ChaCha8Rng| {
        let y = prime_order_power(y, n_chain)?;
        let m_order = m.order();
        if closure_reaches(g, n_chain, &y, &m_order, rng) {
            return None;
        }
        let c = closure_over(&y, Some(&m_order));
        (c.order() < m_order).then_some(c)
    };
    'descend: loop {
        let m_order = m.order();
        let quotient = m_order.checked_div(&n_order).unwrap();
        if quotient.exponent_sum() == 1 {
            return Ok(m);
        }
        let derived = join(&commutator_subgroup(&m, &m)?, n)?;
        let d_order = derived.order();
        if d_order != n_order && d_order < m_order {
            m = derived;
            continue 'descend;
        }
        if quotient.to_u64_saturating() <= cfg.enum_cap {
            let reps = coset_representatives(&m, n, cfg.enum_cap)?;
            let mut settled: HashSet<Permutation> = HashSet::new();
            for y in reps.iter().skip(1) {
                if settled.contains(y) {
                    continue;
                }
                if let Some(c) = smaller(&m, y, &mut rng) {
                    m = c;
                    continue 'descend;
                }
                // every G-conjugate and generator of ⟨yN⟩ has the same closure
                mark_equivalent(g, n_chain, y, &mut settled);
            }
            return Ok(m);
        }
        let mut tried = 0usize;
        let mut draws = 0usize;
        while tried < cfg.sample_count + cfg.recheck_count {
            draws += 1;
            if draws > 20 * (cfg.sample_count + cfg.recheck_count) {
                return Err(Error::ChiefSeriesNotFound("sampling exhausted"));
            }
            let y = m.random_element(&mut rng);
            if n_chain.contains(&y) {
                continue;
            }
            tried += 1;
            if let Some(c) = smaller(&m, &y, &mut rng) {
                m = c;
                continue 'descend;
            }
        }
        return Ok(m);
    }
}

fn mark_equivalent(
    g: &PermGroup,
    n_chain: &StabilizerChain,
    y: &Permutation,
    settled: &mut HashSet<Permutation>,
) {
    let ord = y.order().to_u64();
    let mut frontier = vec![n_chain.canonical_coset_rep(y)];
    settled.insert(frontier[0].clone());
    while let Some(z) = frontier.pop() {
        let mut related: Vec<Permutation> =
            g.generators().iter().map(|x| z.conjugate_by(x)).collect();
        if let Some(ord) = ord {
            if ord <= 64 {
                related.extend(
                    (2..ord)
                        .filter(|k| gcd(*k, ord) == 1)
                        .map(|k| z.power(k as i64)),
                );
            }
        }
        for r in related {
            let key = n_chain.canonical_coset_rep(&r);
            if settled.insert(key.clone()) {
                frontier.push(key);
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn join_examples() {
        let a3 = g(3, &["(1 2 3)"]);
        let t = g(3, &["(1 2)"]);
        assert_eq!(join(&a3, &t).unwrap().order(), 6);
        assert!(join(&a3, &PermGroup::trivial(3))
            .unwrap()
            .equals(&a3)
            .unwrap());
        assert!(join(&a3, &a3).unwrap().equals(&a3).unwrap());
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(normal_closure(&s3, &g(3, &["(1 2)"])).unwrap().order(), 6);
        assert_eq!(normal_closure(&s3, &g(3, &["(1 2 3)"])).unwrap().order(), 3);
        assert!(normal_closure(&s3, &PermGroup::trivial(3))
            .unwrap()
            .is_trivial());
        let a3 = g(3, &["(1 2 3)"]);
        assert!(matches!(
            normal_closure(&a3, &g(3, &["(1 2)"])),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn commutator_examples() {
        let s3 = PermGroup::symmetric(3);
        let d = commutator_subgroup(&s3, &s3).unwrap();
        assert!(d.equals(&g(3, &["(1 2 3)"])).unwrap());
        assert!(commutator_subgroup(&s3, &PermGroup::trivial(3))
            .unwrap()
            .is_trivial());
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(commutator_subgroup(&v4, &v4).unwrap().order(), 1);
    }

    #[test]
    fn intersection_examples() {
        let s3 = PermGroup::symmetric(3);
        let a3 = g(3, &["(1 2 3)"]);
        let t = g(3, &["(1 2)"]);
        assert!(intersect_with_normal(&t, &a3, &s3).unwrap().is_trivial());
        assert!(intersect_with_normal(&t, &s3, &s3)
            .unwrap()
            .equals(&t)
            .unwrap());
        let s4 = PermGroup::symmetric(4);
        let d8 = g(4, &["(1 2 3 4)", "(1 3)"]);
        let a4 = PermGroup::alternating(4);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let i = intersect_with_normal(&d8, &a4, &s4).unwrap();
        assert!(i.equals(&v4).unwrap());
        assert!(matches!(
            intersect_with_normal(&a4, &d8, &s4),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn core_examples() {
        let c = cfg();
        let s4 = PermGroup::symmetric(4);
        let d8 = g(4, &["(1 2 3 4)", "(1 3)"]);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(core(&s4, &d8, &c).unwrap().equals(&v4).unwrap());
        let a4 = PermGroup::alternating(4);
        assert!(core(&s4, &a4, &c).unwrap().equals(&a4).unwrap());
        let s3 = PermGroup::symmetric(3);
        assert!(core(&s3, &g(3, &["(1 2)"]), &c).unwrap().is_trivial());
        let small = Config {
            index_cap: 2,
            ..Config::default()
        };
        assert!(matches!(
            core(&s4, &d8, &small),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sylow_examples() {
        let c = cfg();
        let s4 = PermGroup::symmetric(4);
        let p2 = sylow(&s4, 2, &c).unwrap();
        assert_eq!(p2.order(), 8);
        assert!(p2.is_subgroup_of(&s4).unwrap());
        assert_eq!(sylow(&PermGroup::alternating(5), 5, &c).unwrap().order(), 5);
        assert!(sylow(&PermGroup::symmetric(3), 5, &c).unwrap().is_trivial());
    }

    #[test]
    fn sylow_random_path() {
        let c = Config {
            enum_cap: 10,
            ..Config::default()
        };
        let s6 = PermGroup::symmetric(6);
        for p in [2, 3, 5] {
            let s = sylow(&s6, p, &c).unwrap();
            assert_eq!(s.order(), s6.order().p_part(p));
            assert!(s.is_subgroup_of(&s6).unwrap());
        }
    }

    #[test]
    fn o_upper_pi_examples() {
        let c = cfg();
        let s4 = PermGroup::symmetric(4);
        let o = o_upper_pi(&s4, &PrimeSet::from([2]), &c).unwrap();
        assert!(o.equals(&PermGroup::alternating(4)).unwrap());
        assert!(o_upper_pi(&s4, &PrimeSet::from([2, 3]), &c)
            .unwrap()
            .is_trivial());
        assert!(o_upper_pi(&s4, &PrimeSet::new(), &c)
            .unwrap()
            .equals(&s4)
            .unwrap());
    }

    #[test]
    fn chief_series_examples() {
        let c = cfg();
        let s4 = Section::over_trivial(PermGroup::symmetric(4));
        let cs = chief_series(&s4, &c).unwrap();
        let orders: Vec<u64> = cs
            .factor_orders
            .iter()
            .map(|o| o.to_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![4, 3, 2]);
        let a5 = Section::over_trivial(PermGroup::alternating(5));
        let cs = chief_series(&a5, &c).unwrap();
        assert_eq!(cs.factor_orders, vec![Order::from_u64(60)]);
        let s3 = PermGroup::symmetric(3);
        let same = Section::new(s3.clone(), s3).unwrap();
        assert!(chief_series(&same, &c).unwrap().is_empty());
    }

    #[test]
    fn chief_series_by_sampling() {
        let c = Config {
            enum_cap: 2,
            sample_count: 200,
            recheck_count: 20,
            ..Config::default()
        };
        let s4 = Section::over_trivial(PermGroup::symmetric(4));
        let cs = chief_series(&s4, &c).unwrap();
        let orders: Vec<u64> = cs
            .factor_orders
            .iter()
            .map(|o| o.to_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![4, 3, 2]);
    }

    #[test]
    fn section_arithmetic() {
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::alternating(4);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(Section::new(s4.clone(), a4).unwrap().order(), 2);
        assert_eq!(Section::new(s4.clone(), s4.clone()).unwrap().order(), 1);
        let sv = Section::new(s4.clone(), v4).unwrap();
        assert_eq!(sv.order(), 6);
        assert_eq!(sv.primes(), PrimeSet::from([2, 3]));
        assert!(Section::new(s4.clone(), s4.clone())
            .unwrap()
            .primes()
            .is_empty());
        let a5 = Section::over_trivial(PermGroup::alternating(5));
        assert_eq!(a5.primes(), PrimeSet::from([2, 3, 5]));
        let d8 = g(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(matches!(Section::new(s4, d8), Err(Error::NotNormal(_))));
    }

    #[test]
    fn normality_examples() {
        let s3 = PermGroup::symmetric(3);
        assert!(is_normal_in(&g(3, &["(1 2 3)"]), &s3).unwrap());
        assert!(!is_normal_in(&g(3, &["(1 2)"]), &s3).unwrap());
        assert!(is_normal_in(&s3, &s3).unwrap());
        assert!(is_normal_in(&s3, &g(3, &["(1 2 3)"])).is_err());
    }
}
