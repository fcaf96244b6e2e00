//! The perturbed-monomial family `I_phi` behind the lower bound.
//!
//! With `m` the largest integer satisfying `3 m^d <= 2n`, the baseline ideal
//! is generated by every degree-`m` monomial other than `x_1^m`, together
//! with `x_1^ñ`. Each assignment `phi` adds a polynomial in `x_1` supported
//! in degrees `m+1..ñ` to every such monomial. Whether `I_phi` still has
//! colength `n` and initial ideal equal to the baseline is measured here,
//! not assumed.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::count::CountValue;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::initial::initial_ideal;
use crate::monomial::{binomial, monomials_of_degree, ExponentVector, TermOrder};
use crate::quotient::{ideal_closure, IdealSubspace, QuotientAlgebra, RingElement};
use crate::staircase::Staircase;
use crate::subspace::SubspaceFp;

/// Default cap on the number of assignments visited exhaustively.
pub const DEFAULT_CENSUS_GUARD: u64 = 1_000_000;
/// Cap on `dim R/m^(n+1)` for the ambient algebra of the family.
pub const FAMILY_ALGEBRA_GUARD: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiFamilySpec {
    pub n: u64,
    pub d: usize,
    pub p: u32,
    pub m: u32,
    /// Degree-`m` monomials other than `x_1^m`.
    pub x: Vec<ExponentVector>,
    /// Cutoff making the baseline colength exactly `n`.
    pub n_tilde: u32,
    /// The cutoff as printed, `n - binom(m+d, d) + m`; may be negative.
    pub n_tilde_printed: i64,
    pub baseline: Staircase,
}

fn largest_m(n: u64, d: usize) -> u32 {
    let mut m = 0u32;
    while 3 * (m as u64 + 1).pow(d as u32) <= 2 * n {
        m += 1;
    }
    m
}

fn cutoff(n: u64, d: usize) -> Result<(u32, u64)> {
    if d == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let m = largest_m(n, d);
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} too small: m = {m} < 2"
        )));
    }
    let below = binomial(m as u64 + d as u64 - 1, d as u64);
    let n_tilde = (n + m as u64)
        .checked_sub(below)
        .filter(|&t| t > m as u64 + 1)
        .ok_or_else(|| {
            Error::InvalidArgument(format!("n = {n} too small: cutoff not above m + 1"))
        })?;
    Ok((m, n_tilde))
}

/// `log_p` of the family size, `(ñ - m - 1)|X|`, without building the
/// baseline staircase; usable for very large `n`.
pub fn family_exponent(n: u64, d: usize) -> Result<u64> {
    let (m, n_tilde) = cutoff(n, d)?;
    let x_len = binomial(m as u64 + d as u64 - 1, d as u64 - 1) - 1;
    Ok((n_tilde - m as u64 - 1) * x_len)
}

pub fn build_family_spec(n: u64, d: usize, p: u64) -> Result<PhiFamilySpec> {
    let field = PrimeField::new(p)?;
    let (m, n_tilde) = cutoff(n, d)?;
    let n_tilde_printed = n as i64 - binomial(m as u64 + d as u64, d as u64) as i64 + m as i64;
    let x: Vec<ExponentVector> = monomials_of_degree(d, m)
        .into_iter()
        .filter(|e| e.get(0) != m)
        .collect();
    let baseline = Staircase::from_generators(
        d,
        x.iter()
            .cloned()
            .chain([ExponentVector::pure_power(d, 0, n_tilde as u32)]),
    )?;
    debug_assert_eq!(baseline.colength(), Some(n));
    Ok(PhiFamilySpec {
        n,
        d,
        p: field.p(),
        m,
        x,
        n_tilde: n_tilde as u32,
        n_tilde_printed,
        baseline,
    })
}

impl PhiFamilySpec {
    /// Number of free coefficients per element of `X`.
    pub fn window(&self) -> usize {
        (self.n_tilde - self.m - 1) as usize
    }

    pub fn free_coefficients(&self) -> u64 {
        (self.window() * self.x.len()) as u64
    }

    /// `p^((ñ - m - 1)|X|)`, the number of assignments.
    pub fn claimed(&self) -> CountValue {
        CountValue::p_power(self.p, self.free_coefficients())
    }

    /// `R/m^(n+1)`, deep enough that colength `n` is decided exactly.
    pub fn algebra(&self) -> Result<QuotientAlgebra> {
        QuotientAlgebra::truncated_with_guard(
            self.p as u64,
            self.d,
            self.n as u32 + 1,
            FAMILY_ALGEBRA_GUARD,
        )
    }

    /// The assignment with index `code` in base-`p` little-endian order.
    pub fn assignment(&self, mut code: u64) -> PhiAssignment {
        let p = self.p as u64;
        let coeffs = (0..self.x.len())
            .map(|_| {
                (0..self.window())
                    .map(|_| {
                        let c = (code % p) as u32;
                        code /= p;
                        c
                    })
                    .collect()
            })
            .collect();
        PhiAssignment { coeffs }
    }
}

/// For each element of `X`, the coefficients of `x_1^(m+1) .. x_1^(ñ-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PhiAssignment {
    pub coeffs: Vec<Vec<u32>>,
}

impl PhiAssignment {
    pub fn zero(spec: &PhiFamilySpec) -> Self {
        Self {
            coeffs: vec![vec![0; spec.window()]; spec.x.len()],
        }
    }

    fn check(&self, spec: &PhiFamilySpec) -> Result<()> {
        if self.coeffs.len() != spec.x.len() {
            return Err(Error::DimensionMismatch {
                expected: spec.x.len(),
                got: self.coeffs.len(),
            });
        }
        for c in &self.coeffs {
            if c.len() != spec.window() {
                return Err(Error::DimensionMismatch {
                    expected: spec.window(),
                    got: c.len(),
                });
            }
        }
        Ok(())
    }
}

/// `I_phi` inside `R/m^(n+1)` with its measured validity.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub ideal: IdealSubspace,
    pub colength: usize,
    /// Colength `n` and initial ideal equal to the baseline.
    pub valid: bool,
}

/// The ideal generated by `x^e + phi(e)` for `e` in `X`.
///
/// Only the perturbed monomials are used as generators. When the closure in
/// `R/m^(n+1)` has colength `n` it contains `m^n`, so by Nakayama the
/// ideal in the power series ring has the same colength.
pub fn instantiate_ideal(
    spec: &PhiFamilySpec,
    a: &QuotientAlgebra,
    order: &TermOrder,
    phi: &PhiAssignment,
) -> Result<FamilyMember> {
    phi.check(spec)?;
    let gens = spec.x.iter().zip(&phi.coeffs).map(|(e, cs)| {
        let mut g = a.monomial(e).into_coeffs();
        for (k, &c) in cs.iter().enumerate() {
            let pow = ExponentVector::pure_power(spec.d, 0, spec.m + 1 + k as u32);
            let idx = a.index_of(&pow).expect("window lies below the truncation");
            g[idx] = a.field().add(g[idx], c);
        }
        RingElement::from_coeffs(g)
    });
    let ideal = ideal_closure(a, gens);
    let colength = ideal.colength();
    let valid =
        colength as u64 == spec.n && initial_ideal(a, &ideal, order)?.initial == spec.baseline;
    Ok(FamilyMember {
        ideal,
        colength,
        valid,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub claimed: CountValue,
    /// Assignments visited.
    pub visited: u64,
    /// Valid assignments among those visited.
    pub valid: CountValue,
    pub valid_fraction: f64,
    /// Distinct valid assignments give distinct ideals.
    pub injective: bool,
    /// Every valid ideal has index `p^n` and contains `m^n`.
    pub index_ok: bool,
    pub sampled: bool,
    pub seed: Option<u64>,
}

struct Outcome {
    index_ok: bool,
    space: Option<SubspaceFp>,
}

fn evaluate(
    spec: &PhiFamilySpec,
    a: &QuotientAlgebra,
    order: &TermOrder,
    m_n: &IdealSubspace,
    code: u64,
) -> Result<Outcome> {
    let member = instantiate_ideal(spec, a, order, &spec.assignment(code))?;
    if !member.valid {
        return Ok(Outcome {
            index_ok: true,
            space: None,
        });
    }
    let index_ok = member.colength as u64 == spec.n && m_n.is_subideal_of(a, &member.ideal);
    Ok(Outcome {
        index_ok,
        space: Some(member.ideal.space().clone()),
    })
}

fn summarize(
    spec: &PhiFamilySpec,
    codes: &[u64],
    outcomes: Vec<Outcome>,
    sampled: bool,
    seed: Option<u64>,
) -> CensusReport {
    // Sampled draws may repeat; injectivity is judged on distinct codes.
    let mut valid = 0u64;
    let mut valid_codes = HashSet::new();
    let mut spaces = HashSet::new();
    let mut index_ok = true;
    for (code, o) in codes.iter().zip(outcomes) {
        index_ok &= o.index_ok;
        if let Some(s) = o.space {
            valid += 1;
            if valid_codes.insert(*code) {
                spaces.insert(s);
            }
        }
    }
    let visited = codes.len() as u64;
    CensusReport {
        claimed: spec.claimed(),
        visited,
        valid: CountValue::from_u64(valid, spec.p),
        valid_fraction: if visited == 0 {
            0.0
        } else {
            valid as f64 / visited as f64
        },
        injective: spaces.len() == valid_codes.len(),
        index_ok,
        sampled,
        seed,
    }
}

fn assignment_count(spec: &PhiFamilySpec, limit: u64) -> Result<u64> {
    (spec.p as u64)
        .checked_pow(spec.free_coefficients() as u32)
        .filter(|&t| t <= limit)
        .ok_or_else(|| Error::GuardExceeded {
            what: "lower-bound family census",
            needed: spec.claimed().to_string(),
            limit,
        })
}

/// Visits every assignment; errors when there are more than `guard`.
pub fn family_census(spec: &PhiFamilySpec, guard: u64) -> Result<CensusReport> {
    let total = assignment_count(spec, guard)?;
    run(spec, (0..total).collect(), false, None)
}

/// Visits `samples` assignments drawn uniformly with a seeded ChaCha8 stream.
pub fn sampled_census(spec: &PhiFamilySpec, samples: usize, seed: u64) -> Result<CensusReport> {
    let total = assignment_count(spec, u64::MAX)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codes: Vec<u64> = (0..samples).map(|_| rng.gen_range(0..total)).collect();
    run(spec, codes, true, Some(seed))
}

fn run(
    spec: &PhiFamilySpec,
    codes: Vec<u64>,
    sampled: bool,
    seed: Option<u64>,
) -> Result<CensusReport> {
    let a = spec.algebra()?;
    let order = TermOrder::degree_lex(spec.d);
    let m_n = a.power_of_maximal(spec.n as u32);
    let outcomes = codes
        .par_iter()
        .map(|&c| evaluate(spec, &a, &order, &m_n, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(spec, &codes, outcomes, sampled, seed))
}
