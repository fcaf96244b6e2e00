//! The thirteen acceptance criteria, each run at its stated scale and
//! tolerance. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any failed. Runs without the libtest harness so the lines always show.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};

use ideal_growth::bounds::{
    audit_upper_bound, build_family_spec, dp_max, exhaustive_max, family_census, tail_ones_max,
    DpTable, DEFAULT_CENSUS_GUARD,
};
use ideal_growth::group::{enumerate_normal_subgroups, group_sandwich_check, DEFAULT_GROUP_GUARD};
use ideal_growth::initial::{
    check_generator_growth, initial_ideal, param_profile, realize_profile,
};
use ideal_growth::quotient::{
    count_ideals, count_ideals_in, enumerate_ideal_levels, enumerate_ideals,
};
use ideal_growth::reports::{audit_all, to_csv, to_json, Scale};
use ideal_growth::sl2::{congruence_index, enumerate_lie_ideals, lie_sandwich_check};
use ideal_growth::staircase::enumerate_staircases;
use ideal_growth::subspace::DEFAULT_SUBSPACE_GUARD;
use ideal_growth::{
    CongruenceGroup, Error, IdealSubspace, QuotientAlgebra, RingElement, Sl2Algebra, SubspaceFp,
    TermOrder,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Harness {
    failures: Vec<u32>,
}

impl Harness {
    fn run(&mut self, id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match &result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(why) => println!("criterion {id:>2} FAIL  {name}: {why} [{elapsed:.2?}]"),
        }
        if result.is_err() {
            self.failures.push(id);
        }
    }
}

fn raw_form(a: &QuotientAlgebra, ideal: &IdealSubspace, c: u32) -> common::RawIdeal {
    let rows: Vec<BTreeMap<Vec<u32>, u32>> = ideal
        .space()
        .rows()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|&(_, &x)| x != 0)
                .map(|(i, &x)| (a.basis()[i].exps().to_vec(), x))
                .collect()
        })
        .collect();
    common::canonical(a.p(), a.num_vars(), c, &rows)
}

fn oracle_equivalence() -> Outcome {
    let mut total = 0;
    for p in [2u32, 3] {
        for n in 1..=3usize {
            let a = ok(QuotientAlgebra::truncated(p as u64, 2, n as u32))?;
            let ours: HashSet<_> = ok(enumerate_ideals(&a, n, DEFAULT_SUBSPACE_GUARD))?
                .iter()
                .map(|i| raw_form(&a, i, n as u32))
                .collect();
            let raw = common::raw_ideals(p, 2, n as u32, n);
            ensure!(
                ours == raw,
                "p = {p}, n = {n}: BFS {} vs raw {}",
                ours.len(),
                raw.len()
            );
            total += raw.len();
        }
    }
    Ok(format!(
        "{total} ideals identical across p in {{2,3}}, n <= 3"
    ))
}

fn truncation_soundness() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=5usize {
        let shallow = ok(count_ideals(2, 2, n))?;
        let deep = ok(count_ideals_in(2, 2, n, n as u32 + 1))?;
        ensure!(
            shallow == deep,
            "n = {n}: {} vs {}",
            shallow.exact(),
            deep.exact()
        );
        counts.push(shallow.exact().to_string());
    }
    Ok(format!("counts {}", counts.join(", ")))
}

fn monomial_counts() -> Outcome {
    let expected = [1u64, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    let oracle = common::partition_numbers(12);
    for (i, &e) in expected.iter().enumerate() {
        let n = i as u64 + 1;
        let got = ok(enumerate_staircases(2, n))?.len() as u64;
        ensure!(
            got == e && oracle[n as usize] == e,
            "n = {n}: got {got}, expected {e}"
        );
    }
    Ok("1..=12 match the partition numbers".into())
}

fn generator_bound() -> Outcome {
    let c2 = 2.0 * 2f64.sqrt();
    let c3 = 3.0 * 6f64.powf(1.0 / 6.0) * c2;
    let mut checked = 0usize;
    let mut worst = 0f64;
    for (d, max_n, c) in [(2usize, 30u64, c2), (3, 15, c3)] {
        for n in 1..=max_n {
            let bound = c * (n as f64).powf((d as f64 - 1.0) / d as f64);
            for st in ok(enumerate_staircases(d, n))? {
                let g = ok(st.minimal_generators())?.len() as f64;
                ensure!(
                    g.total_cmp(&bound).is_le(),
                    "d = {d}, n = {n}: {} has {g} generators > {bound}",
                    st.label()
                );
                worst = worst.max(g / bound);
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} staircases, largest generators/bound = {worst:.3}"
    ))
}

/// Every ideal of colength `1..=5` in `F_p[[x, y]]`, seen in `R/m^6`.
fn small_ideals(p: u64) -> Result<(QuotientAlgebra, Vec<Vec<IdealSubspace>>), String> {
    let a = ok(QuotientAlgebra::truncated(p, 2, 6))?;
    let levels = ok(enumerate_ideal_levels(&a, 5, DEFAULT_SUBSPACE_GUARD))?;
    Ok((a, levels))
}

fn initial_consistency() -> Outcome {
    let order = TermOrder::degree_lex(2);
    let mut checked = 0;
    for p in [2u64, 3] {
        let (a, levels) = small_ideals(p)?;
        for (n, level) in levels.iter().enumerate().skip(1) {
            for ideal in level {
                let g = ok(initial_ideal(&a, ideal, &order))?;
                ensure!(
                    g.initial.colength() == Some(n as u64),
                    "p = {p}: colength mismatch at n = {n}"
                );
                let std = ok(g.initial.standard_monomials(&order))?;
                let units = std.iter().map(|e| {
                    let mut v = vec![0u32; a.dim()];
                    v[a.index_of(e).expect("standard monomial in basis")] = 1;
                    v
                });
                let joined = SubspaceFp::span(
                    a.field(),
                    a.dim(),
                    ideal.space().to_rows().into_iter().chain(units),
                );
                ensure!(
                    std.len() == n && joined.dim() == a.dim(),
                    "p = {p}: standard monomials are not a basis of A/I at n = {n}"
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} ideals"))
}

fn generator_growth() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3] {
        let (a, levels) = small_ideals(p)?;
        for ideal in levels.iter().skip(1).flatten() {
            ensure!(ok(check_generator_growth(&a, ideal))?, "p = {p}: violation");
            checked += 1;
        }
    }
    Ok(format!("{checked} ideals"))
}

fn upper_bound() -> Outcome {
    let checks = ok(audit_upper_bound(2, 2, 5, DEFAULT_SUBSPACE_GUARD))?;
    for c in &checks {
        ensure!(
            c.holds && c.bucket.exact() <= c.bound.exact(),
            "profile {:?}: bucket {} > bound {}",
            c.profile.key(),
            c.bucket.exact(),
            c.bound.exact()
        );
    }
    Ok(format!(
        "{} profiles, every bucket within its bound",
        checks.len()
    ))
}

fn profile_realization() -> Outcome {
    let a = ok(QuotientAlgebra::truncated_with_guard(2, 2, 10, 128))?;
    let mut checked = 0;
    for total in 1..=8u64 {
        for r in common::admissible_sequences(total) {
            let at = |n: usize| r.get(n).copied().unwrap_or(0);
            let d_seq: Vec<u64> = (0..=r.len()).map(|n| n as u64 + 1 - at(n)).collect();
            let st = ok(realize_profile(&d_seq))?;
            ensure!(
                st.colength() == Some(total),
                "{d_seq:?}: colength {:?}",
                st.colength()
            );
            let prof = ok(param_profile(&a, &IdealSubspace::from_staircase(&a, &st)))?;
            ensure!(
                prof.d_seq == d_seq,
                "{d_seq:?}: re-extracted {:?}",
                prof.d_seq
            );
            let first = d_seq
                .iter()
                .position(|&x| x > 0)
                .expect("last layer is full");
            let e: Vec<u64> = (0..d_seq.len())
                .map(|n| match n.cmp(&first) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => d_seq[n],
                    std::cmp::Ordering::Greater => d_seq[n] - d_seq[n - 1] - 1,
                })
                .collect();
            ensure!(
                prof.e_seq == e,
                "{d_seq:?}: e {:?}, expected {e:?}",
                prof.e_seq
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} sequences round-trip"))
}

fn lower_bound_family() -> Outcome {
    let mut parts = Vec::new();
    for p in [2u64, 3] {
        let spec = ok(build_family_spec(6, 2, p))?;
        let r = ok(family_census(&spec, DEFAULT_CENSUS_GUARD))?;
        ensure!(r.visited == p.pow(4), "p = {p}: visited {}", r.visited);
        ensure!(
            r.injective,
            "p = {p}: two valid assignments give the same ideal"
        );
        ensure!(r.index_ok, "p = {p}: a valid ideal has the wrong index");
        parts.push(format!(
            "p = {p}: valid fraction {}/{} = {:.3}",
            r.valid, r.visited, r.valid_fraction
        ));
    }
    Ok(parts.join("; "))
}

fn sequence_optimization() -> Outcome {
    for total in 1..=20u64 {
        let dp = ok(dp_max(total))?;
        ensure!(
            dp == ok(exhaustive_max(total))?,
            "N = {total}: dp differs from exhaustive"
        );
        for r in common::admissible_sequences(total) {
            let s = ok(ideal_growth::bounds::SequenceProfile::new(r))?;
            ensure!(
                s.objective() == s.abel_objective(),
                "Abel identity fails for {:?}",
                s.r()
            );
        }
    }
    let table = ok(DpTable::new(10_000))?;
    for total in 1..=10_000u64 {
        let (_, tail) = ok(tail_ones_max(total))?;
        ensure!(
            ok(table.max(total))? >= tail,
            "N = {total}: dp below tail-of-ones"
        );
    }
    ensure!(
        ok(table.max(5))? == 1 && ok(table.max(6))? == 2,
        "dp_max(5), dp_max(6) wrong"
    );
    let scale = 4000f64.powf(1.5);
    let dp = ok(table.max(4000))? as f64;
    let ratio = dp / ((2.0f64 / 3.0).powf(1.5) * scale);
    let other = dp / (2f64.powf(1.5) / 3f64.powf(2.5) * scale);
    ensure!(
        (0.85..=1.05).contains(&ratio),
        "ratio {ratio:.4} outside [0.85, 1.05]"
    );
    Ok(format!(
        "ratio to (2/3)^(3/2) = {ratio:.4}; ratio to 2^(3/2)/3^(5/2) = {other:.4} (reported only)"
    ))
}

fn lie_and_group() -> Outcome {
    let l = ok(Sl2Algebra::truncated(3, 1, 2))?;
    let lie: Vec<usize> = ok(enumerate_lie_ideals(&l, 3, DEFAULT_SUBSPACE_GUARD))?
        .iter()
        .map(Vec::len)
        .collect();
    ensure!(lie == [1, 13, 13, 1], "Lie ideals by codim {lie:?}");

    let g = ok(CongruenceGroup::truncated(3, 1, 2))?;
    let table = ok(g.table(DEFAULT_GROUP_GUARD))?;
    ensure!(table.len() == 27, "order {}", table.len());
    let normal = ok(enumerate_normal_subgroups(
        &g,
        u64::MAX,
        DEFAULT_GROUP_GUARD,
    ))?;
    let normal_total: usize = normal.iter().map(Vec::len).sum();
    ensure!(normal_total == 28, "{normal_total} normal subgroups");
    for n in normal.iter().flatten() {
        let members = table.members(n);
        let pass = ok(group_sandwich_check(&g, &members, |x| {
            table.index_of(x).is_some_and(|i| n.contains(i))
        }))?;
        ensure!(pass, "group sandwich fails at c = 2");
    }

    for c in 2..=3u32 {
        let g = ok(CongruenceGroup::truncated(3, 1, c))?;
        let a = g.base().clone();
        let elements = ok(g.elements(DEFAULT_GROUP_GUARD))?;
        for k in 1..=c {
            let ideal = a.power_of_maximal(k);
            let inside = elements
                .iter()
                .filter(|x| g.in_congruence(x, &ideal))
                .count() as u64;
            let index = ok(congruence_index(&a, &ideal))?;
            ensure!(
                index.to_u64() == Some(elements.len() as u64 / inside),
                "c = {c}, (t^{k}): index {} vs {}/{inside}",
                index.exact(),
                elements.len()
            );
        }
    }

    let l4 = ok(Sl2Algebra::truncated(3, 1, 4))?;
    let mut lie_checked = 0;
    for j in ok(enumerate_lie_ideals(&l4, 3, DEFAULT_SUBSPACE_GUARD))?
        .iter()
        .flatten()
    {
        ensure!(
            ok(lie_sandwich_check(&l4, j))?,
            "Lie sandwich fails at codim {}",
            j.codim()
        );
        lie_checked += 1;
    }

    let big = ok(CongruenceGroup::truncated(3, 1, 4))?;
    let a = big.base().clone();
    let m = a.maximal_ideal().basis_elements();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut random_m = || -> RingElement {
        m.iter().fold(a.zero(), |acc, f| {
            a.add(&acc, &a.scale(f, rng.gen_range(0..3)))
        })
    };
    for _ in 0..20 {
        let (x, y, z) = (random_m(), random_m(), random_m());
        let n = big.normal_closure(&[big.from_params(&x, &y, &z)]);
        let members: Vec<_> = n.iter().cloned().collect();
        ensure!(
            ok(group_sandwich_check(&big, &members, |e| n.contains(e)))?,
            "group sandwich fails for a seeded closure at c = 4"
        );
    }
    Ok(format!(
        "28 Lie ideals, 28 normal subgroups of order-27 group, indices match, {lie_checked} Lie ideals and 20 closures sandwiched"
    ))
}

fn rejects_two() -> Outcome {
    let base = ok(QuotientAlgebra::truncated(2, 1, 3))?;
    let results = [
        Sl2Algebra::truncated(2, 1, 3).err(),
        Sl2Algebra::new(base.clone()).err(),
        CongruenceGroup::truncated(2, 2, 2).err(),
        CongruenceGroup::new(base).err(),
    ];
    for (i, r) in results.iter().enumerate() {
        ensure!(
            matches!(r, Some(Error::CharacteristicTwo)),
            "constructor {i} accepted p = 2"
        );
    }
    Ok("all four constructors refuse".into())
}

fn determinism() -> Outcome {
    let first = ok(audit_all(Scale::Small, 42))?;
    let second = ok(audit_all(Scale::Small, 42))?;
    let (j1, j2) = (ok(to_json(&first))?, ok(to_json(&second))?);
    let (c1, c2) = (ok(to_csv(&first.reports))?, ok(to_csv(&second.reports))?);
    ensure!(j1 == j2 && c1 == c2, "outputs differ");
    Ok(format!("{} bytes of JSON identical", j1.len()))
}

fn main() {
    let secs = Duration::from_secs;
    let mut h = Harness {
        failures: Vec::new(),
    };
    h.run(
        1,
        "BFS equals raw subspace filter",
        Some(secs(10)),
        oracle_equivalence,
    );
    h.run(
        2,
        "truncation soundness",
        Some(secs(120)),
        truncation_soundness,
    );
    h.run(3, "monomial counts", Some(secs(1)), monomial_counts);
    h.run(4, "generator bound", Some(secs(300)), generator_bound);
    h.run(5, "initial-ideal consistency", None, initial_consistency);
    h.run(6, "generator growth", None, generator_growth);
    h.run(7, "stratum upper bound", None, upper_bound);
    h.run(8, "profile realization", None, profile_realization);
    h.run(
        9,
        "lower-bound family census",
        Some(secs(60)),
        lower_bound_family,
    );
    h.run(
        10,
        "sequence optimization",
        Some(secs(60)),
        sequence_optimization,
    );
    h.run(11, "Lie and group layer", Some(secs(300)), lie_and_group);
    h.run(12, "p = 2 rejection", None, rejects_two);
    h.run(13, "determinism", None, determinism);
    if !h.failures.is_empty() {
        eprintln!("failed criteria: {:?}", h.failures);
        std::process::exit(1);
    }
}
