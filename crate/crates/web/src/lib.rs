//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Groups are passed as a degree plus generators in cycle notation, one per
//! line. Every binding returns a JSON string; the `*_json` functions behind
//! them are plain Rust so that they can be tested natively.

use serde::Serialize;
use sigma_core::checks::{
    is_sigma_nilpotent, is_sigma_p_permutable, is_sigma_permutable_soluble, is_sigma_soluble,
    is_sigma_subnormal,
};
use sigma_core::corpus::corpus;
use sigma_core::least::{least_sigma_nilpotent, least_sigma_p_permutable, least_sigma_soluble};
use sigma_core::toolbox::chief_series;
use sigma_core::{CheckReport, Config, Partition, PermGroup, Permutation, Section};
use wasm_bindgen::prelude::*;

/// Largest prime set whose partition lattice is drawn (Bell(5) = 52 nodes).
const LATTICE_PRIMES: usize = 5;

type Out = Result<String, String>;

fn to_json<T: Serialize>(value: &T) -> Out {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn parse_group(degree: usize, gens: &str) -> Result<PermGroup, String> {
    let perms = gens
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            Permutation::parse_cycles(l, degree).map_err(|e| format!("generator {}: {e}", i + 1))
        })
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::new(degree, perms).map_err(|e| e.to_string())
}

struct Inputs {
    g: PermGroup,
    k: PermGroup,
    h: PermGroup,
    section: Section,
    cfg: Config,
}

fn inputs(degree: usize, group: &str, normal: &str, subgroup: &str) -> Result<Inputs, String> {
    let g = parse_group(degree, group)?;
    let k = parse_group(degree, normal)?;
    let h = if subgroup.trim().is_empty() {
        g.clone()
    } else {
        parse_group(degree, subgroup)?
    };
    let section = Section::new(g.clone(), k.clone()).map_err(|e| e.to_string())?;
    Ok(Inputs {
        g,
        k,
        h,
        section,
        cfg: Config::default(),
    })
}

#[derive(Serialize)]
struct Preset {
    name: &'static str,
    degree: usize,
    group: Vec<String>,
    normal_name: Option<&'static str>,
    normal: Vec<String>,
}

fn cycles(g: &PermGroup) -> Vec<String> {
    g.generators()
        .iter()
        .map(Permutation::format_cycles)
        .collect()
}

pub fn presets_json() -> Out {
    let list: Vec<Preset> = corpus()
        .into_iter()
        .map(|e| Preset {
            name: e.name,
            degree: e.group.degree(),
            group: cycles(&e.group),
            normal_name: e.normal.as_ref().map(|(n, _)| *n),
            normal: e
                .normal
                .as_ref()
                .map(|(_, k)| cycles(k))
                .unwrap_or_default(),
        })
        .collect();
    to_json(&list)
}

#[derive(Serialize)]
struct Summary {
    order: String,
    primes: Vec<u32>,
    quotient_order: String,
    quotient_primes: Vec<u32>,
    chief_factors: Vec<sigma_core::toolbox::ChiefFactorSummary>,
    least_nilpotent: String,
    least_soluble: String,
}

pub fn summary_json(degree: usize, group: &str, normal: &str) -> Out {
    let inp = inputs(degree, group, normal, "")?;
    let s = &inp.section;
    let err = |e: sigma_core::Error| e.to_string();
    to_json(&Summary {
        order: inp.g.order().to_string(),
        primes: inp.g.order().primes().into_iter().collect(),
        quotient_order: s.order().to_string(),
        quotient_primes: s.primes().into_iter().collect(),
        chief_factors: chief_series(s, &inp.cfg).map_err(err)?.summary(),
        least_nilpotent: least_sigma_nilpotent(s).map_err(err)?.to_string(),
        least_soluble: least_sigma_soluble(s, &inp.cfg).map_err(err)?.to_string(),
    })
}

fn decide(inp: &Inputs, property: &str, sigma: &Partition) -> Result<CheckReport, String> {
    let (g, h, k, cfg) = (&inp.g, &inp.h, &inp.k, &inp.cfg);
    match property {
        "nilpotent" => is_sigma_nilpotent(&inp.section, sigma),
        "soluble" => is_sigma_soluble(&inp.section, sigma, cfg),
        "subnormal" => is_sigma_subnormal(g, h, k, sigma, cfg),
        "ppermutable" => is_sigma_p_permutable(g, h, k, sigma, cfg),
        "permutable" => is_sigma_permutable_soluble(g, h, k, sigma, cfg),
        other => return Err(format!("unknown property {other:?}")),
    }
    .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Verdict {
    sigma: String,
    verdict: bool,
    witness: Option<String>,
}

pub fn check_json(
    degree: usize,
    group: &str,
    normal: &str,
    subgroup: &str,
    property: &str,
    sigma: &str,
) -> Out {
    let inp = inputs(degree, group, normal, subgroup)?;
    let sigma = Partition::parse(sigma, &inp.section.primes()).map_err(|e| e.to_string())?;
    let report = decide(&inp, property, &sigma)?;
    to_json(&Verdict {
        sigma: sigma.to_string(),
        verdict: report.verdict,
        witness: report.witness.map(|w| w.to_string()),
    })
}

#[derive(Serialize)]
struct Node {
    partition: String,
    blocks: usize,
    verdict: bool,
}

#[derive(Serialize)]
struct Lattice {
    primes: Vec<u32>,
    nodes: Vec<Node>,
    /// `(finer, coarser)` index pairs of the covering relation.
    edges: Vec<(usize, usize)>,
    least: String,
}

/// Every partition of `π(G/K)` with its verdict, the Hasse diagram and the
/// least partition at which the property holds.
pub fn lattice_json(
    degree: usize,
    group: &str,
    normal: &str,
    subgroup: &str,
    property: &str,
) -> Out {
    let inp = inputs(degree, group, normal, subgroup)?;
    let primes = inp.section.primes();
    if primes.len() > LATTICE_PRIMES {
        return Err(format!(
            "{} primes give too many partitions to draw (limit {LATTICE_PRIMES})",
            primes.len()
        ));
    }
    let all = Partition::all(&primes);
    let verdicts = all
        .iter()
        .map(|p| decide(&inp, property, p).map(|r| r.verdict))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if a.len() == b.len() + 1 && a.leq(b).map_err(|e| e.to_string())? {
                edges.push((i, j));
            }
        }
    }
    let err = |e: sigma_core::Error| e.to_string();
    let least = match property {
        "nilpotent" => least_sigma_nilpotent(&inp.section).map_err(err)?,
        "soluble" => least_sigma_soluble(&inp.section, &inp.cfg).map_err(err)?,
        "ppermutable" => least_sigma_p_permutable(&inp.g, &inp.h, &inp.k, &inp.cfg).map_err(err)?,
        // no dedicated solver: true partitions are closed under meets
        _ => all
            .iter()
            .zip(&verdicts)
            .filter(|(_, v)| **v)
            .try_fold(Partition::whole(&primes), |m, (p, _)| m.meet(p))
            .map_err(err)?,
    };
    let nodes = all
        .iter()
        .zip(verdicts)
        .map(|(p, verdict)| Node {
            partition: p.to_string(),
            blocks: p.len(),
            verdict,
        })
        .collect();
    to_json(&Lattice {
        primes: primes.into_iter().collect(),
        nodes,
        edges,
        least: least.to_string(),
    })
}

fn js(out: Out) -> Result<String, JsError> {
    out.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn presets() -> Result<String, JsError> {
    js(presets_json())
}

#[wasm_bindgen]
pub fn summary(degree: usize, group: &str, normal: &str) -> Result<String, JsError> {
    js(summary_json(degree, group, normal))
}

#[wasm_bindgen]
pub fn check(
    degree: usize,
    group: &str,
    normal: &str,
    subgroup: &str,
    property: &str,
    sigma: &str,
) -> Result<String, JsError> {
    js(check_json(degree, group, normal, subgroup, property, sigma))
}

#[wasm_bindgen]
pub fn lattice(
    degree: usize,
    group: &str,
    normal: &str,
    subgroup: &str,
    property: &str,
) -> Result<String, JsError> {
    js(lattice_json(degree, group, normal, subgroup, property))
}
