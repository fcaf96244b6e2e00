//! Exponent vectors and local (degree-first) term orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of N^d, i.e. the monomial `x_1^{e_1} ... x_d^{e_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct ExponentVector {
    exps: Vec<u32>,
    degree: u32,
}

impl From<Vec<u32>> for ExponentVector {
    fn from(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { exps, degree }
    }
}

impl From<ExponentVector> for Vec<u32> {
    fn from(e: ExponentVector) -> Self {
        e.exps
    }
}

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        exps.into()
    }

    pub fn zero(d: usize) -> Self {
        vec![0; d].into()
    }

    /// `x_i^k` in `d` variables.
    pub fn pure_power(d: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; d];
        e[i] = k;
        e.into()
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect::<Vec<_>>()
            .into()
    }

    pub fn bump(&self, i: usize) -> ExponentVector {
        let mut e = self.exps.clone();
        e[i] += 1;
        ExponentVector {
            exps: e,
            degree: self.degree + 1,
        }
    }

    /// Componentwise `self <= other`, i.e. `self` divides `other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// The axis `i` if this is `x_i^k` with `k > 0`.
    pub fn pure_axis(&self) -> Option<usize> {
        let mut nz = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        let first = nz.next()?;
        nz.next().is_none().then_some(first.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

/// Degree-refined local order: lower total degree is smaller (and leads).
///
/// Ties are broken by `tie_break`, a permutation of the variables listed from
/// smallest to largest: the monomial with the larger exponent in the first
/// listed variable where they differ is the smaller one. With the identity
/// permutation in two variables this gives `x^2 < xy < y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    tie_break: Vec<usize>,
}

impl TermOrder {
    pub fn degree_lex(d: usize) -> Self {
        Self {
            tie_break: (0..d).collect(),
        }
    }

    pub fn with_tie_break(tie_break: Vec<usize>) -> Result<Self> {
        let mut sorted = tie_break.clone();
        sorted.sort_unstable();
        if sorted != (0..tie_break.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!(
                "tie-break {tie_break:?} is not a permutation"
            )));
        }
        Ok(Self { tie_break })
    }

    pub fn dim(&self) -> usize {
        self.tie_break.len()
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        for v in [a, b] {
            if v.dim() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: v.dim(),
                });
            }
        }
        Ok(self.cmp_unchecked(a, b))
    }

    pub(crate) fn cmp_unchecked(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        a.degree.cmp(&b.degree).then_with(|| {
            for &i in &self.tie_break {
                match a.exps[i].cmp(&b.exps[i]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

/// All exponent vectors of total degree `deg` in `d` variables, in
/// lexicographically decreasing order of the exponents (x_1^deg first).
pub fn monomials_of_degree(d: usize, deg: u32) -> Vec<ExponentVector> {
    fn rec(d: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if prefix.len() + 1 == d {
            prefix.push(left);
            out.push(prefix.clone().into());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(d, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    rec(d, deg, &mut Vec::with_capacity(d), &mut out);
    out
}

/// `binom(n, k)` as u64; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of monomials of degree `n` in `d` variables: `binom(n+d-1, d-1)`.
pub fn layer_dim(d: usize, n: u32) -> u64 {
    binomial(n as u64 + d as u64 - 1, d as u64 - 1)
}
