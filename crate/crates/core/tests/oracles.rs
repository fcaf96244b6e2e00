mod common;

use std::collections::{BTreeMap, HashSet};

use ideal_growth::bounds::{audit_upper_bound, dp_max, exhaustive_max, SequenceProfile};
use ideal_growth::initial::{param_profile, realize_profile};
use ideal_growth::quotient::enumerate_ideals;
use ideal_growth::sl2::enumerate_lie_ideals;
use ideal_growth::staircase::enumerate_staircases;
use ideal_growth::subspace::{enumerate_subspaces, gaussian_binomial, DEFAULT_SUBSPACE_GUARD};
use ideal_growth::{IdealSubspace, PrimeField, QuotientAlgebra, Sl2Algebra, Staircase};

use common::*;

fn library_raw(a: &QuotientAlgebra, ideal: &IdealSubspace, d: usize, c: u32) -> RawIdeal {
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
    canonical(a.p(), d, c, &rows)
}

#[test]
fn bfs_matches_raw_subspace_filter() {
    for p in [2u32, 3] {
        for n in 1..=3usize {
            let c = n as u32;
            let a = QuotientAlgebra::truncated(p as u64, 2, c).unwrap();
            let ours: HashSet<RawIdeal> = enumerate_ideals(&a, n, DEFAULT_SUBSPACE_GUARD)
                .unwrap()
                .iter()
                .map(|i| library_raw(&a, i, 2, c))
                .collect();
            let raw = raw_ideals(p, 2, c, n);
            assert_eq!(ours, raw, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn bfs_matches_raw_filter_three_variables() {
    let a = QuotientAlgebra::truncated(2, 3, 2).unwrap();
    let ours: HashSet<RawIdeal> = enumerate_ideals(&a, 2, DEFAULT_SUBSPACE_GUARD)
        .unwrap()
        .iter()
        .map(|i| library_raw(&a, i, 3, 2))
        .collect();
    assert_eq!(ours, raw_ideals(2, 3, 2, 2));
}

#[test]
fn staircases_match_partition_numbers() {
    let parts = partition_numbers(12);
    for n in 1..=12u64 {
        assert_eq!(
            enumerate_staircases(2, n).unwrap().len() as u64,
            parts[n as usize]
        );
    }
    let plane = plane_partition_numbers(8);
    for n in 1..=8u64 {
        assert_eq!(
            enumerate_staircases(3, n).unwrap().len() as u64,
            plane[n as usize]
        );
    }
}

#[test]
fn subspace_counts_match_gaussian_product() {
    for p in [2u32, 3, 5] {
        let field = PrimeField::new(p as u64).unwrap();
        for n in 0..=4usize {
            for k in 0..=n {
                let listed = enumerate_subspaces(field, n, k, DEFAULT_SUBSPACE_GUARD)
                    .unwrap()
                    .count() as u128;
                let g = gaussian_binomial(n as i64, k as i64, p).unwrap();
                assert_eq!(listed, gaussian(n as u64, k as u64, p as u64));
                assert_eq!(g.to_u64().map(u128::from), Some(listed));
            }
        }
    }
}

#[test]
fn sequence_max_matches_brute_force() {
    for total in 1..=16u64 {
        let oracle = sequence_max(total);
        assert_eq!(exhaustive_max(total).unwrap(), oracle, "N = {total}");
        assert_eq!(dp_max(total).unwrap(), oracle, "N = {total}");
    }
}

#[test]
fn sequence_objective_matches_definition() {
    for total in 1..=14u64 {
        for r in admissible_sequences(total) {
            let s = SequenceProfile::new(r.clone()).unwrap();
            assert_eq!(s.objective(), sequence_objective(&r), "{r:?}");
        }
    }
}

#[test]
fn monomial_profiles_match_layer_count() {
    let a = QuotientAlgebra::truncated(2, 2, 9).unwrap();
    for n in 1..=8u64 {
        for st in enumerate_staircases(2, n).unwrap() {
            let gens: Vec<(u32, u32)> = st
                .generators()
                .iter()
                .map(|e| (e.get(0), e.get(1)))
                .collect();
            let ideal = IdealSubspace::from_staircase(&a, &st);
            let prof = param_profile(&a, &ideal).unwrap();
            let top = prof.len() as u32 - 1;
            let (d, e) = monomial_layers(&gens, top);
            assert_eq!(prof.d_seq, d, "{}", st.label());
            assert_eq!(prof.e_seq, e, "{}", st.label());
        }
    }
}

#[test]
fn realized_profiles_have_the_requested_layers() {
    let d_seq = [0u64, 1, 3, 4, 5];
    let st: Staircase = realize_profile(&d_seq).unwrap();
    let gens: Vec<(u32, u32)> = st
        .generators()
        .iter()
        .map(|e| (e.get(0), e.get(1)))
        .collect();
    let (d, _) = monomial_layers(&gens, 4);
    assert_eq!(d, d_seq);
}

#[test]
fn upper_bound_matches_independent_formula() {
    for check in audit_upper_bound(2, 2, 5, DEFAULT_SUBSPACE_GUARD).unwrap() {
        let pr = &check.profile;
        let mut bound = 1u128;
        let mut exponent = 0u64;
        for n in 0..pr.len() {
            let (l, d, e) = (pr.layer_dims[n], pr.d_seq[n], pr.e_seq[n]);
            bound *= gaussian(l - d + e, e, 2);
            let above: u64 = (n + 1..pr.len())
                .map(|m| pr.layer_dims[m] - pr.d_seq[m])
                .sum();
            exponent += e * above;
        }
        bound *= 1u128 << exponent;
        assert_eq!(check.bound.to_u64().map(u128::from), Some(bound));
        assert!(check.bucket.to_u64().unwrap() as u128 <= bound);
    }
}

#[test]
fn abelian_lie_ideals_are_all_subspaces() {
    let l = Sl2Algebra::truncated(3, 1, 2).unwrap();
    let found: usize = enumerate_lie_ideals(&l, 3, DEFAULT_SUBSPACE_GUARD)
        .unwrap()
        .iter()
        .map(Vec::len)
        .sum();
    assert_eq!(found, all_subspaces(3, 3).len());
    assert_eq!(found, 28);
}
