//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use sigma_cli::group_file::GroupFile;
use sigma_core::checks::{
    is_sigma_nilpotent, is_sigma_p_permutable, is_sigma_soluble, is_sigma_subnormal,
};
use sigma_core::corpus::corpus;
use sigma_core::least::{least_sigma_nilpotent, least_sigma_p_permutable, least_sigma_soluble};
use sigma_core::oracle::{
    least_partition_oracle, nilpotent_in_model, permutable_in_model, soluble_in_model,
    subnormal_in_lattice, QuotientModel, SubgroupLattice, LATTICE_CAP,
};
use sigma_core::partition::decompose_generators;
use sigma_core::stab_chain::subgroup_chain_bound;
use sigma_core::toolbox::{chief_series, core, o_upper_pi};
use sigma_core::{Config, Partition, PermGroup, PrimeSet, Section};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);
type NamedCheck<'a> = (String, Box<dyn Fn(&Partition) -> bool + 'a>);

/// A corpus group with one choice of normal subgroup and its subgroup lattice.
struct Cell {
    label: String,
    section: Section,
    lattice: SubgroupLattice,
    partitions: Vec<Partition>,
    soluble: bool,
}

impl Cell {
    fn g(&self) -> &PermGroup {
        self.section.big()
    }

    fn k(&self) -> &PermGroup {
        self.section.small()
    }
}

fn cells() -> Vec<Cell> {
    let mut out = Vec::new();
    for e in corpus() {
        let mut ks = vec![("1".to_string(), PermGroup::trivial(e.group.degree()))];
        if let Some((n, k)) = e.normal {
            ks.push((n.to_string(), k));
        }
        for (kname, k) in ks {
            let section = Section::new(e.group.clone(), k.clone()).unwrap();
            let model = QuotientModel::new(&e.group, &k, LATTICE_CAP).unwrap();
            let soluble =
                soluble_in_model(&model, &Partition::singletons(&section.primes())).unwrap();
            out.push(Cell {
                label: format!("{}/{kname}", e.name),
                partitions: Partition::all(&section.primes()),
                lattice: SubgroupLattice::of_model(model),
                section,
                soluble,
            });
        }
    }
    out
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        if self.failures.is_empty() {
            Ok(summary)
        } else {
            let n = self.failures.len();
            let shown: Vec<String> = self.failures.into_iter().take(5).collect();
            Err(format!(
                "{n} of {} checks failed, e.g. {}",
                self.checked,
                shown.join("; ")
            ))
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let cfg = Config::default();
    let mut t = Tally::new();
    let (mut nil_cells, mut sub_cells, mut perm_cells) = (0, 0, 0);
    for c in cells() {
        let model = &c.lattice.model;
        for sigma in &c.partitions {
            let n = is_sigma_nilpotent(&c.section, sigma).unwrap().verdict;
            t.expect(n == nilpotent_in_model(model, sigma).unwrap(), || {
                format!("{} nilpotent [{sigma}]", c.label)
            });
            let s = is_sigma_soluble(&c.section, sigma, &cfg).unwrap().verdict;
            let oracle_soluble = soluble_in_model(model, sigma).unwrap();
            t.expect(s == oracle_soluble, || {
                format!("{} soluble [{sigma}]", c.label)
            });
            nil_cells += 1;
            if c.g().order().to_u64().is_some_and(|o| o <= 200) {
                for i in 0..c.lattice.len() {
                    let h = c.lattice.group(i);
                    let v = is_sigma_subnormal(c.g(), &h, c.k(), sigma, &cfg)
                        .unwrap()
                        .verdict;
                    t.expect(
                        v == subnormal_in_lattice(&c.lattice, i, sigma).unwrap(),
                        || format!("{} subnormal H{i} [{sigma}]", c.label),
                    );
                    sub_cells += 1;
                }
            }
            if oracle_soluble {
                for i in 0..c.lattice.len() {
                    let h = c.lattice.group(i);
                    let v = is_sigma_p_permutable(c.g(), &h, c.k(), sigma, &cfg)
                        .unwrap()
                        .verdict;
                    let o = permutable_in_model(model, &c.lattice.subgroups[i], sigma).unwrap();
                    t.expect(v == o, || {
                        format!("{} p-permutable H{i} [{sigma}]", c.label)
                    });
                    perm_cells += 1;
                }
            }
        }
    }
    t.finish(format!(
        "{nil_cells} nilpotent/soluble cells, {sub_cells} subnormal cells, \
         {perm_cells} p-permutable cells agree with the oracles"
    ))
}

/// Partitions obtained from `p` by splitting one block in two.
fn one_block_splits(p: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for (i, block) in p.blocks().iter().enumerate() {
        let primes: Vec<u32> = block.iter().copied().collect();
        // subsets containing the first prime, excluding the whole block
        for mask in 0..(1u32 << (primes.len() - 1)) - 1 {
            let left: PrimeSet = std::iter::once(primes[0])
                .chain(
                    (1..primes.len())
                        .filter(|j| mask >> (j - 1) & 1 == 1)
                        .map(|j| primes[j]),
                )
                .collect();
            let right: PrimeSet = block.difference(&left).copied().collect();
            let mut blocks: Vec<PrimeSet> = p.blocks().to_vec();
            blocks[i] = left;
            blocks.push(right);
            out.push(Partition::from_blocks(blocks).unwrap());
        }
    }
    out
}

fn check_least(
    t: &mut Tally,
    what: &str,
    got: &Partition,
    expected: &Partition,
    mut holds: impl FnMut(&Partition) -> bool,
) {
    t.expect(got == expected, || {
        format!("{what}: {got} vs oracle {expected}")
    });
    t.expect(holds(got), || format!("{what}: {got} fails its own check"));
    for finer in one_block_splits(got) {
        t.expect(!holds(&finer), || {
            format!("{what}: finer {finer} still holds")
        });
    }
}

fn least_partitions() -> Outcome {
    let cfg = Config::default();
    let mut t = Tally::new();
    let (mut instances, mut by_checker) = (0, 0);
    for c in cells() {
        let model = &c.lattice.model;
        let primes = c.section.primes();
        let nil_oracle = least_partition_oracle(&primes, |p| nilpotent_in_model(model, p)).unwrap();
        check_least(
            &mut t,
            &format!("{} nilpotent", c.label),
            &least_sigma_nilpotent(&c.section).unwrap(),
            &nil_oracle,
            |p| is_sigma_nilpotent(&c.section, p).unwrap().verdict,
        );
        let sol_oracle = least_partition_oracle(&primes, |p| soluble_in_model(model, p)).unwrap();
        check_least(
            &mut t,
            &format!("{} soluble", c.label),
            &least_sigma_soluble(&c.section, &cfg).unwrap(),
            &sol_oracle,
            |p| is_sigma_soluble(&c.section, p, &cfg).unwrap().verdict,
        );
        instances += 2;
        for i in 0..c.lattice.len() {
            let h = c.lattice.group(i);
            let holds = |p: &Partition| {
                is_sigma_p_permutable(c.g(), &h, c.k(), p, &cfg)
                    .unwrap()
                    .verdict
            };
            // the set-product oracle needs Hall subgroups, which soluble quotients have
            let expected = if c.soluble {
                least_partition_oracle(&primes, |p| {
                    permutable_in_model(model, &c.lattice.subgroups[i], p)
                })
                .unwrap()
            } else {
                by_checker += 1;
                least_partition_oracle(&primes, |p| Ok(holds(p))).unwrap()
            };
            check_least(
                &mut t,
                &format!("{} p-permutable H{i}", c.label),
                &least_sigma_p_permutable(c.g(), &h, c.k(), &cfg).unwrap(),
                &expected,
                holds,
            );
            instances += 1;
        }
    }
    t.finish(format!(
        "{instances} least partitions equal the oracle meet, pass their check and are \
         minimal under one-block splits ({by_checker} p-permutable instances in insoluble \
         quotients compared against the checker meet)"
    ))
}

fn meet_closure() -> Outcome {
    let cfg = Config::default();
    let mut t = Tally::new();
    let mut pairs = 0;
    for c in cells() {
        let whole = Partition::whole(&c.section.primes());
        let mut checks: Vec<NamedCheck> = vec![
            (
                "nilpotent".into(),
                Box::new(|p| is_sigma_nilpotent(&c.section, p).unwrap().verdict),
            ),
            (
                "soluble".into(),
                Box::new(|p| is_sigma_soluble(&c.section, p, &cfg).unwrap().verdict),
            ),
        ];
        for i in 0..c.lattice.len() {
            let h = c.lattice.group(i);
            let h2 = h.clone();
            let (g, k, cfg) = (c.g(), c.k(), &cfg);
            checks.push((
                format!("subnormal H{i}"),
                Box::new(move |p| is_sigma_subnormal(g, &h, k, p, cfg).unwrap().verdict),
            ));
            checks.push((
                format!("p-permutable H{i}"),
                Box::new(move |p| is_sigma_p_permutable(g, &h2, k, p, cfg).unwrap().verdict),
            ));
        }
        for (name, check) in &checks {
            t.expect(check(&whole), || {
                format!("{} {name}: single block fails", c.label)
            });
            let holding: Vec<&Partition> = c.partitions.iter().filter(|p| check(p)).collect();
            for (x, a) in holding.iter().enumerate() {
                for b in &holding[x + 1..] {
                    let m = a.meet(b).unwrap();
                    pairs += 1;
                    t.expect(check(&m), || {
                        format!("{} {name}: [{a}] and [{b}] but not [{m}]", c.label)
                    });
                }
            }
        }
    }
    t.finish(format!(
        "{pairs} pairs of true partitions have a true meet; single block always true"
    ))
}

fn grp(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::from_cycles(degree, gens).unwrap()
}

fn part(text: &str) -> Partition {
    text.parse().unwrap()
}

fn anchors() -> Outcome {
    let cfg = Config::default();
    let mut t = Tally::new();
    let s4 = PermGroup::symmetric(4);
    let model = QuotientModel::of_group(&s4, LATTICE_CAP).unwrap();

    let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
    let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    let c = core(&s4, &d8, &cfg).unwrap();
    t.expect(
        model.core_in(&model.image(&d8), &model.full_set()) == model.image(&v4),
        || "oracle core of D8 in S4 is not V4".into(),
    );
    t.expect(c.equals(&v4).unwrap(), || {
        format!("core(S4, D8) has order {}", c.order())
    });

    let a4 = PermGroup::alternating(4);
    let o2 = o_upper_pi(&s4, &[2].into(), &cfg).unwrap();
    let two: PrimeSet = [2].into();
    let oracle_o2 = model
        .normal_subgroups()
        .into_iter()
        .filter(|n| {
            sigma_core::Order::from_u64((model.len() / n.count_ones(..)) as u64).is_pi_number(&two)
        })
        .reduce(|a, b| {
            let mut i = a.clone();
            i.intersect_with(&b);
            i
        })
        .unwrap();
    t.expect(oracle_o2 == model.image(&a4), || {
        "oracle O^{2}(S4) is not A4".into()
    });
    t.expect(o2.equals(&a4).unwrap(), || {
        format!("O^{{2}}(S4) has order {}", o2.order())
    });

    let named: Vec<(&str, Partition, Partition, Partition)> = {
        let s3 = Section::over_trivial(PermGroup::symmetric(3));
        let c6 = Section::over_trivial(grp(5, &["(1 2)(3 4 5)"]));
        let a5 = Section::over_trivial(PermGroup::alternating(5));
        let m = |s: &Section| QuotientModel::new(s.big(), s.small(), LATTICE_CAP).unwrap();
        let (m3, m6, m5) = (m(&s3), m(&c6), m(&a5));
        let s3g = PermGroup::symmetric(3);
        let t12 = grp(3, &["(1 2)"]);
        let lat3 = SubgroupLattice::of_model(QuotientModel::of_group(&s3g, LATTICE_CAP).unwrap());
        let t12_set = lat3.model.image(&t12);
        vec![
            (
                "least nilpotent S3",
                least_sigma_nilpotent(&s3).unwrap(),
                least_partition_oracle(&s3.primes(), |p| nilpotent_in_model(&m3, p)).unwrap(),
                part("2,3"),
            ),
            (
                "least nilpotent C6",
                least_sigma_nilpotent(&c6).unwrap(),
                least_partition_oracle(&c6.primes(), |p| nilpotent_in_model(&m6, p)).unwrap(),
                part("2|3"),
            ),
            (
                "least soluble A5",
                least_sigma_soluble(&a5, &cfg).unwrap(),
                least_partition_oracle(&a5.primes(), |p| soluble_in_model(&m5, p)).unwrap(),
                part("2,3,5"),
            ),
            (
                "least p-permutable <(1 2)> in S3",
                least_sigma_p_permutable(&s3g, &t12, &PermGroup::trivial(3), &cfg).unwrap(),
                least_partition_oracle(&s3.primes(), |p| {
                    permutable_in_model(&lat3.model, &t12_set, p)
                })
                .unwrap(),
                part("2,3"),
            ),
        ]
    };
    for (name, got, oracle, frozen) in &named {
        t.expect(oracle == frozen, || {
            format!("{name}: oracle gives {oracle}, frozen {frozen}")
        });
        t.expect(got == frozen, || {
            format!("{name}: got {got}, expected {frozen}")
        });
    }
    t.finish(format!(
        "{} named values confirmed by oracle and implementation",
        2 + named.len()
    ))
}

fn time_cli_check(dir: &Path, name: &str, g: &PermGroup) -> Result<Duration, String> {
    let path = dir.join(format!("{name}.grp"));
    std::fs::write(&path, GroupFile::from_group(g, Some(name)).to_text()).unwrap();
    let sigma = Partition::singletons(&g.order().primes()).to_string();
    let args = [
        "sigma",
        "check",
        "nilpotent",
        "--group",
        path.to_str().unwrap(),
        "--sigma",
        &sigma,
    ];
    let mut best = Duration::MAX;
    for _ in 0..3 {
        let start = Instant::now();
        let out = sigma_cli::run(args);
        let elapsed = start.elapsed();
        if out.code != 0 {
            return Err(format!("{name}: exit {} {}", out.code, out.stderr.trim()));
        }
        best = best.min(elapsed);
        if elapsed > Duration::from_secs(5) {
            break;
        }
    }
    Ok(best)
}

/// Least-squares slope of log(time) against log(size).
fn log_log_slope(points: &[(usize, Duration)]) -> f64 {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|(m, d)| ((*m as f64).ln(), d.as_secs_f64().max(1e-6).ln()))
        .collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xy.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn scaling() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let families: Vec<(&str, Vec<(usize, PermGroup)>)> = vec![
        (
            "dihedral",
            [100, 200, 400, 800, 1600]
                .into_iter()
                .map(|m| (m, PermGroup::dihedral(m)))
                .collect(),
        ),
        (
            "symmetric",
            [10, 20, 40]
                .into_iter()
                .map(|m| (m, PermGroup::symmetric(m)))
                .collect(),
        ),
    ];
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for (family, groups) in families {
        let mut points = Vec::new();
        for (m, g) in groups {
            points.push((m, time_cli_check(dir.path(), &format!("{family}{m}"), &g)?));
        }
        let slope = log_log_slope(&points);
        let (m, largest) = *points.last().unwrap();
        parts.push(format!(
            "{family}: slope {slope:.2}, degree {m} in {:.3}s",
            largest.as_secs_f64()
        ));
        if slope > 5.0 {
            failures.push(format!("{family} slope {slope:.2} > 5"));
        }
        if largest >= Duration::from_secs(60) {
            failures.push(format!(
                "{family} degree {m} took {:.1}s",
                largest.as_secs_f64()
            ));
        }
    }
    if failures.is_empty() {
        Ok(parts.join("; "))
    } else {
        Err(format!("{} ({})", failures.join(", "), parts.join("; ")))
    }
}

fn structural_guards() -> Outcome {
    let cfg = Config::default();
    let mut t = Tally::new();
    let mut calls = 0;
    let mut guard = |what: String, f: &mut dyn FnMut() -> bool| {
        let fired = catch_unwind(AssertUnwindSafe(&mut *f));
        t.expect(matches!(fired, Ok(true)), || what);
    };
    for c in cells() {
        let n = c.g().degree();
        let bound = subgroup_chain_bound(n);
        guard(format!("{} chief series", c.label), &mut || {
            chief_series(&c.section, &cfg).unwrap().groups.len() <= bound
        });
        for sigma in &c.partitions {
            let extra: PrimeSet = c
                .g()
                .order()
                .primes()
                .difference(&c.section.primes())
                .copied()
                .collect();
            guard(format!("{} generators [{sigma}]", c.label), &mut || {
                calls += 1;
                decompose_generators(c.g(), sigma, &extra).unwrap().total() <= n * n * n
            });
            for i in 0..c.lattice.len() {
                let h = c.lattice.group(i);
                guard(format!("{} subnormal H{i} [{sigma}]", c.label), &mut || {
                    is_sigma_subnormal(c.g(), &h, c.k(), sigma, &cfg).is_ok()
                });
            }
        }
    }
    let mut scaled: Vec<(String, PermGroup, PermGroup)> = Vec::new();
    for m in [100, 200, 400, 800, 1600] {
        let g = PermGroup::dihedral(m);
        let rotation = PermGroup::new(m, vec![g.generators()[0].clone()]).unwrap();
        scaled.push((format!("dihedral degree {m}"), g, rotation));
    }
    for m in [10, 20, 40] {
        let g = PermGroup::symmetric(m);
        let t = grp(m, &["(1 2)"]);
        scaled.push((format!("S{m}"), g, t));
    }
    for (name, g, h) in &scaled {
        let n = g.degree();
        let singles = Partition::singletons(&g.order().primes());
        guard(format!("{name} generators"), &mut || {
            calls += 1;
            decompose_generators(g, &singles, &PrimeSet::new())
                .unwrap()
                .total()
                <= n * n * n
        });
        guard(format!("{name} subnormal"), &mut || {
            is_sigma_subnormal(g, h, &PermGroup::trivial(n), &singles, &cfg).is_ok()
        });
        guard(format!("{name} chief series"), &mut || {
            let s = Section::over_trivial(g.clone());
            chief_series(&s, &cfg).unwrap().groups.len() <= subgroup_chain_bound(n)
        });
    }
    let checked = t.checked;
    t.finish(format!(
        "{checked} guarded computations within the 2n-3 depth bound, {calls} generator \
         decompositions within n^3"
    ))
}

fn main() {
    let criteria: [Criterion; 6] = [
        (1, "oracle equivalence", oracle_equivalence),
        (2, "least partitions", least_partitions),
        (3, "meet closure", meet_closure),
        (4, "named anchors", anchors),
        (5, "scaling smoke test", scaling),
        (6, "structural guards", structural_guards),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {n} ({name}): PASS [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{secs:.1}s] {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
