//! Least partitions for σ-nilpotency, σ-solubility and σ-p-permutability.
//!
//! Each solver starts from a partition known to refine the answer and
//! repeatedly merges blocks that provably share a block of the answer,
//! stopping once a round adds no merges.

use crate::checks::{
    commutator_outside, is_sigma_nilpotent, is_sigma_p_permutable, is_sigma_soluble,
    quotient_primes, subgroup_section,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::order::PrimeSet;
use crate::partition::{decompose_generators, Partition};
use crate::perm::Permutation;
use crate::stab_chain::PermGroup;
use crate::toolbox::{
    chief_series, core, join, normal_closure_of, normalizes, Section, UpperPiCache,
};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns true when `a` and `b` were in different sets.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Component index for each element, numbered by first appearance.
    fn components(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let of = (0..n)
            .map(|i| {
                let r = self.find(i);
                if label[r] == usize::MAX {
                    label[r] = count;
                    count += 1;
                }
                label[r]
            })
            .collect();
        (count, of)
    }
}

/// Merges blocks (and their payloads) along the components of `uf`.
fn merge<T>(
    blocks: Vec<PrimeSet>,
    payload: Vec<Vec<T>>,
    uf: &mut UnionFind,
) -> (Vec<PrimeSet>, Vec<Vec<T>>) {
    let (count, of) = uf.components();
    let mut new_blocks = vec![PrimeSet::new(); count];
    let mut new_payload: Vec<Vec<T>> = (0..count).map(|_| Vec::new()).collect();
    for (i, (b, p)) in blocks.into_iter().zip(payload).enumerate() {
        new_blocks[of[i]].extend(b);
        new_payload[of[i]].extend(p);
    }
    (new_blocks, new_payload)
}

fn assert_sound(holds: bool, what: &str, sigma: &Partition) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "least {what} partition {sigma} fails its own check"
        )))
    }
}

/// The least partition σ of `π(G/K)` with `G/K` σ-nilpotent.
pub fn least_sigma_nilpotent(s: &Section) -> Result<Partition> {
    let (sigma, _) = least_nilpotent_rounds(s)?;
    assert_sound(
        is_sigma_nilpotent(s, &sigma)?.verdict,
        "σ-nilpotent",
        &sigma,
    )?;
    Ok(sigma)
}

/// Also reports the number of merge rounds.
pub fn least_nilpotent_rounds(s: &Section) -> Result<(Partition, usize)> {
    let q = s.primes();
    if q.is_empty() {
        return Ok((Partition::empty(), 0));
    }
    let g = s.big();
    let k = s.small();
    let extra: PrimeSet = g.order().primes().difference(&q).copied().collect();
    let dec = decompose_generators(g, &Partition::singletons(&q), &extra)?;
    let mut blocks: Vec<PrimeSet> = dec.partition.blocks().to_vec();
    let mut gens: Vec<Vec<Permutation>> = dec.blocks;
    let mut rounds = 0;
    loop {
        let labels: Vec<PrimeSet> = gens.iter().map(|list| quotient_primes(list, k)).collect();
        let mut uf = UnionFind::new(blocks.len());
        let mut merged = false;
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let edge = !labels[i].is_disjoint(&blocks[j])
                    || !labels[j].is_disjoint(&blocks[i])
                    || commutator_outside(&gens[i], &gens[j], k).is_some();
                if edge {
                    merged |= uf.union(i, j);
                }
            }
        }
        if !merged {
            break;
        }
        rounds += 1;
        assert!(rounds <= q.len(), "more merge rounds than primes");
        (blocks, gens) = merge(blocks, gens, &mut uf);
    }
    Ok((Partition::from_blocks(blocks)?, rounds))
}

/// The least partition σ of `π(G/K)` with `G/K` σ-soluble: primes that
/// share a chief factor must share a block.
pub fn least_sigma_soluble(s: &Section, cfg: &Config) -> Result<Partition> {
    let q: Vec<_> = s.primes().into_iter().collect();
    let series = chief_series(s, cfg)?;
    let mut uf = UnionFind::new(q.len());
    for primes in &series.factor_primes {
        let idx: Vec<usize> = primes.iter().map(|p| q.binary_search(p).unwrap()).collect();
        for w in idx.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let singles = q.iter().map(|&p| vec![p]).collect::<Vec<_>>();
    let (blocks, _) = merge(
        q.iter().map(|&p| PrimeSet::from([p])).collect(),
        singles,
        &mut uf,
    );
    let sigma = Partition::from_blocks(blocks)?;
    assert_sound(
        is_sigma_soluble(s, &sigma, cfg)?.verdict,
        "σ-soluble",
        &sigma,
    )?;
    Ok(sigma)
}

/// The least partition σ of `π(G/K)` with `H/K` σ-p-permutable in `G/K`.
pub fn least_sigma_p_permutable(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    cfg: &Config,
) -> Result<Partition> {
    let (sigma, _) = least_p_permutable_rounds(g, h, k, cfg)?;
    assert_sound(
        is_sigma_p_permutable(g, h, k, &sigma, cfg)?.verdict,
        "σ-p-permutable",
        &sigma,
    )?;
    Ok(sigma)
}

/// Also reports the number of merge rounds after the nilpotent start.
pub fn least_p_permutable_rounds(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    cfg: &Config,
) -> Result<(Partition, usize)> {
    let s = subgroup_section(g, h, k)?;
    let h_core = core(g, h, cfg)?;
    let h_closure = normal_closure_of(g, h.generators().iter().cloned());
    let outer = Section::new(h_closure, h_core.clone())?;
    let over_core = Section::new(g.clone(), h_core.clone())?.primes();

    // H^G/H_G is σ-nilpotent for the answer, so its least partition refines it.
    let start = least_sigma_nilpotent(&outer)?.with_singletons(&over_core);
    let mut blocks: Vec<PrimeSet> = start.blocks().to_vec();
    let h_primes = h.order().primes();
    let mut cache = UpperPiCache::new(g, cfg);
    // O^{b'}(G) for each block b; for a union of blocks it is the product.
    let mut uppers: Vec<PermGroup> = blocks
        .iter()
        .map(|b| cache.get_complement(b))
        .collect::<Result<_>>()?;
    let inside: PrimeSet = h_primes.intersection(&over_core).copied().collect();
    let extra: PrimeSet = h_primes.difference(&over_core).copied().collect();
    let mut rounds = 0;
    while blocks.len() > 1 {
        let current = Partition::from_blocks(blocks.clone())?.restrict(&inside)?;
        let dec = decompose_generators(h, &current, &extra)?;
        let mut pieces = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let gens = b
                .iter()
                .find_map(|p| dec.partition.block_index(*p))
                .map(|i| dec.blocks[i].clone())
                .unwrap_or_default();
            pieces.push(join(&PermGroup::new(g.degree(), gens)?, &h_core)?);
        }
        let mut uf = UnionFind::new(blocks.len());
        let mut merged = false;
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let edge = !normalizes(uppers[b].generators(), &pieces[a])
                    || !normalizes(uppers[a].generators(), &pieces[b]);
                if edge {
                    merged |= uf.union(a, b);
                }
            }
        }
        if !merged {
            break;
        }
        rounds += 1;
        assert!(rounds <= over_core.len(), "more merge rounds than primes");
        let grouped;
        (blocks, grouped) = merge(
            blocks,
            uppers.into_iter().map(|u| vec![u]).collect(),
            &mut uf,
        );
        uppers = grouped
            .into_iter()
            .map(|list| {
                list[1..]
                    .iter()
                    .try_fold(list[0].clone(), |acc, o| join(&acc, o))
            })
            .collect::<Result<_>>()?;
    }
    let sigma = Partition::from_blocks(blocks)?.with_singletons(&s.primes());
    Ok((sigma, rounds))
}

/// True iff `result` satisfies `holds` and equals the meet of every
/// partition of its ground that does. Only for grounds of at most 4 primes.
pub fn verify_least(
    result: &Partition,
    mut holds: impl FnMut(&Partition) -> Result<bool>,
) -> Result<bool> {
    let ground = result.ground();
    if ground.len() > 4 {
        return Err(Error::CapExceeded {
            what: "number of primes for exhaustive partition search",
            limit: 4,
        });
    }
    let mut meet = Partition::whole(&ground);
    for p in Partition::all(&ground) {
        if holds(&p)? {
            meet = meet.meet(&p)?;
        }
    }
    Ok(holds(result)? && &meet == result)
}
