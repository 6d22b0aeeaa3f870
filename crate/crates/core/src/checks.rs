//! Decision procedures for σ-nilpotency, σ-solubility, σ-subnormality and
//! σ-p-permutability of sections `G/K` and subgroups `H/K`.
//!
//! Every check accepts a partition over any prime set that covers the
//! primes of the quotient `G/K`. Primes dividing only `|K|` never influence
//! a verdict, so they are dropped or given singleton blocks as convenient.

use std::fmt;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::order::{format_prime_set, Prime, PrimeSet};
use crate::partition::{decompose_generators, Partition};
use crate::perm::Permutation;
use crate::stab_chain::{subgroup_chain_bound, PermGroup};
use crate::toolbox::{
    chief_series, core, join, normal_closure_of, normalizes, Section, UpperPiCache,
};

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The block generators produce quotient primes outside their block.
    BlockNotPure {
        block: String,
        quotient_primes: Vec<Prime>,
    },
    /// Two block components whose commutator is not in `K`.
    CommutatorOutside {
        block_a: String,
        block_b: String,
        left: String,
        right: String,
    },
    /// A chief factor whose primes are split across blocks.
    ChiefFactor {
        position: usize,
        order: String,
        primes: Vec<Prime>,
    },
    /// No proper normal or σ-cofinite subgroup of the ambient contains `H`.
    SubnormalStuck {
        ambient_order: String,
        subgroup_order: String,
        depth: usize,
    },
    /// `H^G / H_G` is not σ-nilpotent.
    ClosureNotNilpotent {
        closure_order: String,
        core_order: String,
        reason: Box<Witness>,
    },
    /// The block piece of `H` is not normalized by `O^{block}(G)`.
    PieceNotNormalized { block: String, piece_order: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::BlockNotPure {
                block,
                quotient_primes,
            } => write!(
                f,
                "components for block {{{block}}} generate a quotient with primes {quotient_primes:?}"
            ),
            Witness::CommutatorOutside {
                block_a,
                block_b,
                left,
                right,
            } => write!(
                f,
                "[{left}, {right}] is not in K (blocks {{{block_a}}} and {{{block_b}}})"
            ),
            Witness::ChiefFactor {
                position,
                order,
                primes,
            } => write!(
                f,
                "chief factor {position} of order {order} has primes {primes:?} in no single block"
            ),
            Witness::SubnormalStuck {
                ambient_order,
                subgroup_order,
                depth,
            } => write!(
                f,
                "descent stopped at depth {depth}: no proper subgroup of the ambient group (order {ambient_order}) containing H (order {subgroup_order}) is normal or has block-primary index"
            ),
            Witness::ClosureNotNilpotent {
                closure_order,
                core_order,
                reason,
            } => write!(
                f,
                "H^G/H_G (orders {closure_order}/{core_order}) is not sigma-nilpotent: {reason}"
            ),
            Witness::PieceNotNormalized { block, piece_order } => write!(
                f,
                "the {{{block}}}-piece of H (order {piece_order}) is not normalized by O^{{{block}}}(G)"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn holds() -> Self {
        CheckReport {
            verdict: true,
            witness: None,
        }
    }

    pub fn fails(w: Witness) -> Self {
        CheckReport {
            verdict: false,
            witness: Some(w),
        }
    }
}

fn block_name(b: &PrimeSet) -> String {
    b.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Restricts `sigma` to `primes`, which it must cover.
pub(crate) fn fit_to(sigma: &Partition, primes: &PrimeSet) -> Result<Partition> {
    let ground = sigma.ground();
    if !primes.is_subset(&ground) {
        return Err(Error::GroundMismatch {
            expected: format_prime_set(primes),
            found: format_prime_set(&ground),
        });
    }
    sigma.restrict(primes)
}

/// A partition of `π(G)` that agrees with `sigma` on `π(G/K)`.
pub(crate) fn fit_ambient(sigma: &Partition, s: &Section) -> Result<Partition> {
    let q = fit_to(sigma, &s.primes())?;
    Ok(q.with_singletons(&s.big().order().primes()))
}

/// `π(⟨gens⟩K / K)`.
pub(crate) fn quotient_primes(gens: &[Permutation], k: &PermGroup) -> PrimeSet {
    if gens.is_empty() {
        return PrimeSet::new();
    }
    let mut chain = k.chain().clone();
    for x in gens {
        chain.extend(x);
    }
    chain
        .order()
        .checked_div(&k.order())
        .expect("K lies in the closure")
        .primes()
}

/// First pair `(a, b)` with `[a, b] ∉ K`.
pub(crate) fn commutator_outside(
    left: &[Permutation],
    right: &[Permutation],
    k: &PermGroup,
) -> Option<(Permutation, Permutation)> {
    let chain = k.chain();
    left.iter()
        .flat_map(|a| right.iter().map(move |b| (a, b)))
        .find(|(a, b)| !chain.contains(&a.commutator(b)))
        .map(|(a, b)| (a.clone(), b.clone()))
}

/// Is `G/K` σ-nilpotent? Splits the generators of `G` into block
/// components; the quotient is σ-nilpotent iff components from distinct
/// blocks commute modulo `K` and each block's components generate a
/// block-group modulo `K`. The commutator test is cheap, so it runs first.
pub fn is_sigma_nilpotent(s: &Section, sigma: &Partition) -> Result<CheckReport> {
    let q = s.primes();
    let sig = fit_to(sigma, &q)?;
    if s.is_trivial() {
        return Ok(CheckReport::holds());
    }
    let g = s.big();
    let k = s.small();
    let extra: PrimeSet = g.order().primes().difference(&q).copied().collect();
    let dec = decompose_generators(g, &sig, &extra)?;
    let blocks = sig.blocks();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if let Some((a, b)) = commutator_outside(&dec.blocks[i], &dec.blocks[j], k) {
                return Ok(CheckReport::fails(Witness::CommutatorOutside {
                    block_a: block_name(&blocks[i]),
                    block_b: block_name(&blocks[j]),
                    left: a.format_cycles(),
                    right: b.format_cycles(),
                }));
            }
        }
    }
    for (gens, block) in dec.blocks.iter().zip(blocks) {
        let label = quotient_primes(gens, k);
        if !label.is_subset(block) {
            return Ok(CheckReport::fails(Witness::BlockNotPure {
                block: block_name(block),
                quotient_primes: label.into_iter().collect(),
            }));
        }
    }
    Ok(CheckReport::holds())
}

/// Is `G/K` σ-soluble? Each chief factor through `K` must be a block-group.
pub fn is_sigma_soluble(s: &Section, sigma: &Partition, cfg: &Config) -> Result<CheckReport> {
    let sig = fit_to(sigma, &s.primes())?;
    if s.is_trivial() {
        return Ok(CheckReport::holds());
    }
    let series = chief_series(s, cfg)?;
    for (i, (order, primes)) in series
        .factor_orders
        .iter()
        .zip(&series.factor_primes)
        .enumerate()
    {
        if !sig.blocks().iter().any(|b| primes.is_subset(b)) {
            return Ok(CheckReport::fails(Witness::ChiefFactor {
                position: i + 1,
                order: order.to_string(),
                primes: primes.iter().copied().collect(),
            }));
        }
    }
    Ok(CheckReport::holds())
}

/// Validates `K ≤ H ≤ G`, `K ⊴ G` and returns the section `G/K`.
pub(crate) fn subgroup_section(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<Section> {
    let s = Section::new(g.clone(), k.clone())?;
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch(g.degree(), h.degree()));
    }
    if !h.is_subgroup_of(g)? {
        return Err(Error::NotSubgroup("H is not contained in G"));
    }
    if !k.is_subgroup_of(h)? {
        return Err(Error::NotSubgroup("K is not contained in H"));
    }
    Ok(s)
}

/// Is `H/K` σ-subnormal in `G/K`? Equivalent to `H` being σ-subnormal in
/// `G`, decided by descending through `H^A` or `H·O^{σ_i}(A)` until the
/// ambient group `A` equals `H` or no step applies.
pub fn is_sigma_subnormal(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    sigma: &Partition,
    cfg: &Config,
) -> Result<CheckReport> {
    let s = subgroup_section(g, h, k)?;
    let sig = fit_ambient(sigma, &s)?;
    let bound = subgroup_chain_bound(g.degree()).max(1);
    let h_order = h.order();
    let mut ambient = g.clone();
    let mut depth = 0;
    loop {
        if ambient.order() == h_order {
            return Ok(CheckReport::holds());
        }
        depth += 1;
        assert!(
            depth <= bound,
            "subnormality descent exceeded the chain bound"
        );
        let closure = normal_closure_of(&ambient, h.generators().iter().cloned());
        if closure.order() < ambient.order() {
            ambient = closure;
            continue;
        }
        let index_primes = ambient.order().checked_div(&h_order).unwrap().primes();
        let mut cache = UpperPiCache::new(&ambient, cfg);
        let mut next = None;
        for b in sig.blocks_meeting(&index_primes) {
            let m = join(h, &cache.get(b)?)?;
            if m.order() < ambient.order() {
                next = Some(m);
                break;
            }
        }
        match next {
            Some(m) => ambient = m,
            None => {
                return Ok(CheckReport::fails(Witness::SubnormalStuck {
                    ambient_order: ambient.order().to_string(),
                    subgroup_order: h_order.to_string(),
                    depth: depth - 1,
                }))
            }
        }
    }
}

/// Is `H/K` σ-p-permutable in `G/K`? Equivalent to `H` being σ-p-permutable
/// in `G`: `H^G/H_G` must be σ-nilpotent and, for each block `b` meeting
/// `π(H/H_G)`, the preimage of the Hall `b`-piece of `H/H_G` must be
/// normalized by `O^b(G)`.
pub fn is_sigma_p_permutable(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    sigma: &Partition,
    cfg: &Config,
) -> Result<CheckReport> {
    let s = subgroup_section(g, h, k)?;
    let sig = fit_ambient(sigma, &s)?;
    let h_core = core(g, h, cfg)?;
    let h_closure = normal_closure_of(g, h.generators().iter().cloned());
    let outer = Section::new(h_closure.clone(), h_core.clone())?;
    let nil = is_sigma_nilpotent(&outer, &sig)?;
    if let Some(reason) = nil.witness {
        return Ok(CheckReport::fails(Witness::ClosureNotNilpotent {
            closure_order: h_closure.order().to_string(),
            core_order: h_core.order().to_string(),
            reason: Box::new(reason),
        }));
    }
    let piece_primes = h.order().checked_div(&h_core.order()).unwrap().primes();
    let h_primes = h.order().primes();
    let dec = decompose_generators(h, &sig.restrict(&h_primes)?, &PrimeSet::new())?;
    let mut cache = UpperPiCache::new(g, cfg);
    for (gens, hb) in dec.blocks.iter().zip(dec.partition.blocks()) {
        if hb.is_disjoint(&piece_primes) {
            continue;
        }
        let full = sig.block_of(*hb.first().unwrap()).unwrap().clone();
        let piece = join(&PermGroup::new(g.degree(), gens.clone())?, &h_core)?;
        let upper = cache.get(&full)?;
        if !normalizes(upper.generators(), &piece) {
            return Ok(CheckReport::fails(Witness::PieceNotNormalized {
                block: block_name(&full),
                piece_order: piece.order().to_string(),
            }));
        }
    }
    Ok(CheckReport::holds())
}

/// σ-permutability of `H/K` in a σ-soluble `G/K`, where it coincides with
/// σ-p-permutability. Errors when `G/K` is not σ-soluble.
pub fn is_sigma_permutable_soluble(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    sigma: &Partition,
    cfg: &Config,
) -> Result<CheckReport> {
    let s = subgroup_section(g, h, k)?;
    if !is_sigma_soluble(&s, sigma, cfg)?.verdict {
        return Err(Error::NotSigmaSoluble(sigma.to_string()));
    }
    is_sigma_p_permutable(g, h, k, sigma, cfg)
}
