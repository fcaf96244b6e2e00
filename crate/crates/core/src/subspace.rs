//! Canonical subspaces of F_p^n and subspace counting.
//!
//! A subspace is stored as its reduced row echelon basis with rows sorted by
//! pivot column. That form is unique, so derived `Eq`/`Hash` decide equality
//! of subspaces and every enumeration deduplicates through a hash set.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use crate::count::CountValue;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Default ceiling on the number of subspaces an enumeration may touch.
pub const DEFAULT_SUBSPACE_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceFp {
    ambient: usize,
    pivots: Vec<usize>,
    data: Vec<u32>,
}

/// Incrementally maintained reduced echelon basis.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    ambient: usize,
    rows: BTreeMap<usize, Vec<u32>>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_subspace(field: PrimeField, s: &SubspaceFp) -> Self {
        let mut b = Self::new(field, s.ambient);
        for (i, &piv) in s.pivots.iter().enumerate() {
            b.rows.insert(piv, s.row(i).to_vec());
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place against the basis.
    pub fn reduce(&self, v: &mut [u32]) {
        for (&piv, row) in &self.rows {
            let c = v[piv];
            if c != 0 {
                self.field.axpy(v, self.field.neg(c), row);
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[piv]);
        self.field.scale(&mut v, inv);
        for row in self.rows.values_mut() {
            let c = row[piv];
            if c != 0 {
                self.field.axpy(row, self.field.neg(c), &v);
            }
        }
        self.rows.insert(piv, v);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn into_subspace(self) -> SubspaceFp {
        let mut pivots = Vec::with_capacity(self.rows.len());
        let mut data = Vec::with_capacity(self.rows.len() * self.ambient);
        for (piv, row) in self.rows {
            pivots.push(piv);
            data.extend(row);
        }
        SubspaceFp {
            ambient: self.ambient,
            pivots,
            data,
        }
    }
}

impl SubspaceFp {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            pivots: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut data = vec![0; ambient * ambient];
        for i in 0..ambient {
            data[i * ambient + i] = 1;
        }
        Self {
            ambient,
            pivots: (0..ambient).collect(),
            data,
        }
    }

    /// Span of arbitrary vectors, in canonical form.
    pub fn span<I>(field: &PrimeField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut b = EchelonBasis::new(*field, ambient);
        for v in vectors {
            b.insert(v);
        }
        b.into_subspace()
    }

    /// Span of the coordinate vectors `e_i` for `i` in `coords`.
    pub fn coordinate(ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = coords.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let mut data = vec![0; idx.len() * ambient];
        for (r, &c) in idx.iter().enumerate() {
            data[r * ambient + c] = 1;
        }
        Self {
            ambient,
            pivots: idx,
            data,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.data.chunks(self.ambient.max(1)).take(self.dim())
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    pub fn contains(&self, field: &PrimeField, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Reduces `v` modulo the subspace, leaving zeros in every pivot column.
    pub fn reduce(&self, field: &PrimeField, v: &mut [u32]) {
        for (i, &piv) in self.pivots.iter().enumerate() {
            let c = v[piv];
            if c != 0 {
                field.axpy(v, field.neg(c), self.row(i));
            }
        }
    }

    pub fn is_subspace_of(&self, field: &PrimeField, other: &SubspaceFp) -> bool {
        self.dim() <= other.dim() && self.rows().all(|r| other.contains(field, r))
    }

    pub fn join(&self, field: &PrimeField, other: &SubspaceFp) -> SubspaceFp {
        let mut b = EchelonBasis::from_subspace(*field, self);
        for r in other.rows() {
            b.insert(r.to_vec());
        }
        b.into_subspace()
    }
}

/// Number of `k`-dimensional subspaces of F_p^n.
pub fn gaussian_binomial(n: i64, k: i64, p: u32) -> Result<CountValue> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "gaussian binomial needs 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    let k = k.min(n - k) as u32;
    let n = n as u32;
    let pb = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pb.pow(n - i) - 1u32;
        den *= pb.pow(i + 1) - 1u32;
    }
    Ok(CountValue::new(num / den, p))
}

/// Streams every `dim`-dimensional subspace of F_p^ambient exactly once.
///
/// Subspaces are produced by choosing pivot columns and then filling the free
/// entries of the reduced echelon form, so every output is already canonical.
pub fn enumerate_subspaces(
    field: PrimeField,
    ambient: usize,
    dim: usize,
    guard: u64,
) -> Result<impl Iterator<Item = SubspaceFp>> {
    if dim > ambient {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {dim} exceeds ambient dimension {ambient}"
        )));
    }
    let p = field.p() as u64;
    let bound = (dim * (ambient - dim)) as u32;
    let work = p.checked_pow(bound);
    if work.is_none_or(|w| w > guard) {
        return Err(Error::GuardExceeded {
            what: "subspace enumeration",
            needed: format!("{p}^{bound}"),
            limit: guard,
        });
    }
    Ok((0..ambient).combinations(dim).flat_map(move |pivots| {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..ambient)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = p.pow(free.len() as u32);
        (0..total).map(move |mut code| {
            let mut data = vec![0u32; dim * ambient];
            for (r, &pc) in pivots.iter().enumerate() {
                data[r * ambient + pc] = 1;
            }
            for &(r, c) in &free {
                data[r * ambient + c] = (code % p) as u32;
                code /= p;
            }
            SubspaceFp {
                ambient,
                pivots: pivots.clone(),
                data,
            }
        })
    }))
}

/// Every subspace `H` with `small <= H <= big` and `dim H = dim big - 1`.
///
/// `small` must be contained in `big`.
pub fn hyperplanes_between(
    field: PrimeField,
    big: &SubspaceFp,
    small: &SubspaceFp,
) -> Vec<SubspaceFp> {
    let mut quotient = EchelonBasis::from_subspace(field, small);
    let mut reps = Vec::new();
    for r in big.rows() {
        let mut w = r.to_vec();
        quotient.reduce(&mut w);
        if w.iter().any(|&c| c != 0) {
            quotient.insert(w.clone());
            reps.push(w);
        }
    }
    let k = reps.len();
    if k == 0 {
        return Vec::new();
    }
    enumerate_subspaces(field, k, k - 1, u64::MAX)
        .expect("hyperplanes always enumerable")
        .map(|h| {
            let mut b = EchelonBasis::from_subspace(field, small);
            for coeffs in h.rows() {
                let mut v = vec![0u32; big.ambient()];
                for (c, rep) in coeffs.iter().zip(&reps) {
                    field.axpy(&mut v, *c, rep);
                }
                b.insert(v);
            }
            b.into_subspace()
        })
        .collect()
}
