//! Upper bound on the number of ideals sharing a layer profile.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::count::CountValue;
use crate::error::{Error, Result};
use crate::initial::{stratify_by_profile, ParamProfile};
use crate::monomial::layer_dim;
use crate::quotient::{enumerate_ideal_levels, QuotientAlgebra};
use crate::subspace::gaussian_binomial;

/// `prod_n [L_n - d_n + e_n, e_n]_p * p^(sum_n e_n * sum_{m>n} (L_m - d_m))`
/// with `L_n` the dimension of the degree-`n` layer.
///
/// The Gaussian factor counts the choices of `V_n/W_n` inside the layer
/// modulo `W_n`; the power of `p` counts the free tail coefficients of each
/// new generator.
pub fn upper_bound_value(profile: &ParamProfile, p: u32) -> Result<CountValue> {
    check_profile(profile)?;
    let free: Vec<u64> = profile
        .layer_dims
        .iter()
        .zip(&profile.d_seq)
        .map(|(l, d)| l - d)
        .collect();
    let mut bound = CountValue::one(p);
    let mut exponent = 0u64;
    for (n, &e) in profile.e_seq.iter().enumerate() {
        let top = free[n] as i64 + e as i64;
        bound = bound.mul(&gaussian_binomial(top, e as i64, p)?);
        exponent += e * free[n + 1..].iter().sum::<u64>();
    }
    Ok(bound.mul(&CountValue::p_power(p, exponent)))
}

fn check_profile(profile: &ParamProfile) -> Result<()> {
    let len = profile.d_seq.len();
    if profile.e_seq.len() != len || profile.w_dims.len() != len || profile.layer_dims.len() != len
    {
        return Err(Error::ProfileInconsistent("sequence lengths differ".into()));
    }
    for n in 0..len {
        let l = layer_dim(profile.d, n as u32);
        let (d, e, w) = (profile.d_seq[n], profile.e_seq[n], profile.w_dims[n]);
        if profile.layer_dims[n] != l {
            return Err(Error::ProfileInconsistent(format!(
                "layer {n} has dimension {l}"
            )));
        }
        if d > l || w > d || d - w != e {
            return Err(Error::ProfileInconsistent(format!(
                "layer {n}: d = {d}, e = {e}, dim W = {w}, layer {l}"
            )));
        }
    }
    Ok(())
}

/// One observed profile with its measured bucket size and the bound.
#[derive(Debug, Clone, Serialize)]
pub struct BucketCheck {
    pub profile: ParamProfile,
    pub bucket: CountValue,
    pub bound: CountValue,
    pub holds: bool,
}

/// Enumerates every ideal of colength `1..=max_n` (in `R/m^(max_n+1)`, so
/// each one contains a pure power of every variable), buckets
/// them by profile and compares each bucket with [`upper_bound_value`].
pub fn audit_upper_bound(p: u64, d: usize, max_n: usize, guard: u64) -> Result<Vec<BucketCheck>> {
    let a = QuotientAlgebra::truncated(p, d, max_n as u32 + 1)?;
    let levels = enumerate_ideal_levels(&a, max_n, guard)?;
    let mut buckets: BTreeMap<ParamProfile, CountValue> = BTreeMap::new();
    for level in levels.iter().skip(1) {
        buckets.extend(stratify_by_profile(&a, level)?);
    }
    buckets
        .into_iter()
        .map(|(profile, bucket)| {
            let bound = upper_bound_value(&profile, a.p())?;
            let holds = bucket.exact() <= bound.exact();
            Ok(BucketCheck {
                profile,
                bucket,
                bound,
                holds,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::param_profile;
    use crate::subspace::DEFAULT_SUBSPACE_GUARD;

    #[test]
    fn square_of_maximal_ideal_has_bound_one() {
        let a = QuotientAlgebra::truncated(3, 2, 3).unwrap();
        let prof = param_profile(&a, &a.power_of_maximal(2)).unwrap();
        assert_eq!(prof.e_seq, vec![0, 0, 3]);
        assert_eq!(upper_bound_value(&prof, 3).unwrap().to_u64(), Some(1));
    }

    #[test]
    fn maximal_ideal_bound_at_least_one() {
        let a = QuotientAlgebra::truncated(2, 2, 2).unwrap();
        let prof = param_profile(&a, &a.maximal_ideal()).unwrap();
        assert!(upper_bound_value(&prof, 2).unwrap().to_u64().unwrap() >= 1);
    }

    #[test]
    fn inconsistent_profile_rejected() {
        let a = QuotientAlgebra::truncated(2, 2, 2).unwrap();
        let mut prof = param_profile(&a, &a.maximal_ideal()).unwrap();
        prof.e_seq[1] += 1;
        assert!(matches!(
            upper_bound_value(&prof, 2),
            Err(Error::ProfileInconsistent(_))
        ));
    }

    #[test]
    fn bound_dominates_small_buckets() {
        let checks = audit_upper_bound(2, 2, 4, DEFAULT_SUBSPACE_GUARD).unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c.holds));
    }
}
