//! Cofinite monomial ideals of N^d ("staircases"), their enumeration by
//! colength, and the explicit generator-count bound.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, TermOrder};

/// A monomial ideal of N^d, stored by its antichain of minimal generators
/// (sorted lexicographically).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Staircase {
    d: usize,
    generators: Vec<ExponentVector>,
    colength: Option<u64>,
}

impl Staircase {
    /// Builds the ideal generated by `gens`, discarding non-minimal ones.
    pub fn from_generators(
        d: usize,
        gens: impl IntoIterator<Item = ExponentVector>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        let mut all: Vec<ExponentVector> = gens.into_iter().collect();
        if let Some(bad) = all.iter().find(|g| g.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: bad.dim(),
            });
        }
        all.sort();
        all.dedup();
        let minimal: Vec<ExponentVector> = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        let colength = count_outside(d, &minimal);
        Ok(Self {
            d,
            generators: minimal,
            colength,
        })
    }

    /// The monomial ideal whose complement is the finite down-set `outside`.
    ///
    /// `outside` must be closed under taking divisors.
    pub fn from_complement(d: usize, outside: &[ExponentVector]) -> Result<Self> {
        let set: HashSet<&ExponentVector> = outside.iter().collect();
        if outside.is_empty() {
            return Self::from_generators(d, [ExponentVector::zero(d)]);
        }
        let mut gens = Vec::new();
        for u in outside {
            for i in 0..d {
                let v = u.bump(i);
                if set.contains(&v) {
                    continue;
                }
                let all_below = (0..d).all(|j| {
                    v.get(j) == 0 || {
                        let mut w = v.exps().to_vec();
                        w[j] -= 1;
                        set.contains(&ExponentVector::new(w))
                    }
                });
                if all_below {
                    gens.push(v);
                }
            }
        }
        let s = Self::from_generators(d, gens)?;
        debug_assert_eq!(s.colength, Some(outside.len() as u64));
        Ok(s)
    }

    /// `m^c`: all monomials of degree `c`.
    pub fn maximal_power(d: usize, c: u32) -> Self {
        Self::from_generators(d, crate::monomial::monomials_of_degree(d, c))
            .expect("valid dimension")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(v))
    }

    /// Number of lattice points outside the ideal; `None` when infinite.
    pub fn colength(&self) -> Option<u64> {
        self.colength
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.degree() == 0)
    }

    /// Minimal generators of a cofinite staircase, checked against the
    /// explicit bound `#gens <= C_d * colength^((d-1)/d)`.
    pub fn minimal_generators(&self) -> Result<&[ExponentVector]> {
        let n = self.colength.ok_or(Error::InfiniteColength)?;
        if n > 0 && !generator_bound_holds(self.d, self.generators.len() as u64, n) {
            return Err(Error::InvalidArgument(format!(
                "{} generators exceed the bound for d={}, colength {}",
                self.generators.len(),
                self.d,
                n
            )));
        }
        Ok(&self.generators)
    }

    /// The monomials outside the ideal, sorted by `order`.
    pub fn standard_monomials(&self, order: &TermOrder) -> Result<Vec<ExponentVector>> {
        self.colength.ok_or(Error::InfiniteColength)?;
        let mut out = Vec::new();
        if !self.is_unit() {
            let bounds = self.box_bounds().expect("finite colength");
            for_each_in_box(&bounds, |v| {
                if !self.contains(&v) {
                    out.push(v);
                }
            });
        }
        out.sort_by(|a, b| order.cmp_unchecked(a, b));
        Ok(out)
    }

    /// For each axis the smallest pure power in the ideal.
    fn box_bounds(&self) -> Option<Vec<u32>> {
        pure_power_bounds(self.d, &self.generators)
    }

    /// Generator tuples in lexicographic order, the JSON form.
    pub fn to_tuples(&self) -> Vec<Vec<u32>> {
        self.generators.iter().map(|g| g.exps().to_vec()).collect()
    }

    pub fn from_tuples(tuples: Vec<Vec<u32>>) -> Result<Self> {
        let d = tuples.first().map(Vec::len).ok_or_else(|| {
            Error::InvalidArgument("staircase needs at least one generator".into())
        })?;
        Self::from_generators(d, tuples.into_iter().map(ExponentVector::new))
    }

    /// Short textual id, e.g. `x1^2,x1*x2,x2^3`.
    pub fn label(&self) -> String {
        self.generators
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Serialize for Staircase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_tuples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Staircase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let tuples = Vec::<Vec<u32>>::deserialize(d)?;
        Staircase::from_tuples(tuples).map_err(serde::de::Error::custom)
    }
}

fn pure_power_bounds(d: usize, gens: &[ExponentVector]) -> Option<Vec<u32>> {
    let mut bounds = vec![None; d];
    for g in gens {
        if let Some(i) = g.pure_axis() {
            let k = g.get(i);
            bounds[i] = Some(bounds[i].map_or(k, |b: u32| b.min(k)));
        }
    }
    bounds.into_iter().collect()
}

fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(ExponentVector)) {
    if bounds.contains(&0) {
        return;
    }
    let mut cur = vec![0u32; bounds.len()];
    loop {
        f(ExponentVector::new(cur.clone()));
        let mut i = 0;
        loop {
            if i == cur.len() {
                return;
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn count_outside(d: usize, gens: &[ExponentVector]) -> Option<u64> {
    if gens.iter().any(|g| g.degree() == 0) {
        return Some(0);
    }
    let bounds = pure_power_bounds(d, gens)?;
    let mut n = 0u64;
    for_each_in_box(&bounds, |v| {
        if !gens.iter().any(|g| g.divides(&v)) {
            n += 1;
        }
    });
    Some(n)
}

/// Largest colength accepted by [`enumerate_staircases`] for each dimension.
pub fn default_staircase_limit(d: usize) -> Option<u64> {
    match d {
        1 => Some(u64::MAX),
        2 => Some(60),
        3 => Some(24),
        _ => None,
    }
}

/// Every monomial ideal of N^d with colength exactly `n`, each once, sorted.
///
/// The complement is built slice by slice along the last axis: a down-set of
/// N^d is a nested chain `D_0 ⊇ D_1 ⊇ ...` of down-sets of N^(d-1). In d=2
/// these chains are column heights, i.e. partitions of `n`.
pub fn enumerate_staircases(d: usize, n: u64) -> Result<Vec<Staircase>> {
    let limit = default_staircase_limit(d).ok_or(Error::GuardExceeded {
        what: "staircase dimension",
        needed: d.to_string(),
        limit: 3,
    })?;
    if n > limit {
        return Err(Error::GuardExceeded {
            what: "staircase colength",
            needed: n.to_string(),
            limit,
        });
    }
    let mut memo = HashMap::new();
    let mut out: Vec<Staircase> = downsets(d, n as usize, &mut memo)
        .iter()
        .map(|pts| {
            let evs: Vec<ExponentVector> = pts.iter().cloned().map(ExponentVector::new).collect();
            Staircase::from_complement(d, &evs)
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

type Downset = Vec<Vec<u32>>;

fn downsets(k: usize, n: usize, memo: &mut HashMap<(usize, usize), Vec<Downset>>) -> Vec<Downset> {
    if let Some(v) = memo.get(&(k, n)) {
        return v.clone();
    }
    let result = if n == 0 {
        vec![Vec::new()]
    } else if k == 1 {
        vec![(0..n as u32).map(|i| vec![i]).collect()]
    } else {
        let mut layers: Vec<Vec<Downset>> = Vec::with_capacity(n + 1);
        for s in 0..=n {
            layers.push(if s == 0 {
                Vec::new()
            } else {
                downsets(k - 1, s, memo)
            });
        }
        let mut out = Vec::new();
        let mut chain: Vec<&Downset> = Vec::new();
        extend_chain(&layers, n, None, &mut chain, &mut out);
        out
    };
    memo.insert((k, n), result.clone());
    result
}

fn extend_chain<'a>(
    layers: &'a [Vec<Downset>],
    remaining: usize,
    parent: Option<&HashSet<&'a Vec<u32>>>,
    chain: &mut Vec<&'a Downset>,
    out: &mut Vec<Downset>,
) {
    if remaining == 0 {
        let mut pts = Vec::new();
        for (nu, slice) in chain.iter().enumerate() {
            for u in slice.iter() {
                let mut v = u.clone();
                v.push(nu as u32);
                pts.push(v);
            }
        }
        out.push(pts);
        return;
    }
    let cap = parent.map_or(remaining, |p| p.len().min(remaining));
    for s in 1..=cap {
        for cand in &layers[s] {
            if let Some(p) = parent {
                if !cand.iter().all(|u| p.contains(u)) {
                    continue;
                }
            }
            let set: HashSet<&Vec<u32>> = cand.iter().collect();
            chain.push(cand);
            extend_chain(layers, remaining - s, Some(&set), chain, out);
            chain.pop();
        }
    }
}

/// The constants `C_d` of the generator bound: `C_1 = 1`,
/// `C_d = d * (d!)^(1/(d(d-1))) * C_{d-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants<F> {
    pub d: usize,
    pub c_d: F,
}

impl<F: Float> BoundConstants<F> {
    pub fn new(d: usize) -> Self {
        let mut c = F::one();
        let mut fact = F::one();
        for k in 2..=d {
            let kf = F::from(k).expect("small integer");
            fact = fact * kf;
            let e = F::one() / F::from(k * (k - 1)).expect("small integer");
            c = c * kf * fact.powf(e);
        }
        Self { d, c_d: c }
    }

    /// `C_d * n^((d-1)/d)`.
    pub fn bound(&self, colength: u64) -> F {
        let d = F::from(self.d).expect("small integer");
        let n = F::from(colength).expect("finite");
        self.c_d * n.powf((d - F::one()) / d)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact test of `gens <= C_d * n^((d-1)/d)`, done by raising both sides to
/// a power `D` that clears every root in `C_d` and in the exponent.
pub fn generator_bound_holds(d: usize, gens: u64, colength: u64) -> bool {
    let mut big_d = d as u64;
    for k in 2..=d as u64 {
        let m = k * (k - 1);
        big_d = big_d / gcd(big_d, m) * m;
    }
    let mut c_pow = BigUint::from(1u32);
    let mut fact = BigUint::from(1u32);
    for k in 2..=d as u64 {
        fact *= k;
        c_pow *= BigUint::from(k).pow(big_d as u32);
        c_pow *= fact.pow((big_d / (k * (k - 1))) as u32);
    }
    let rhs = c_pow * BigUint::from(colength).pow(((d as u64 - 1) * big_d / d as u64) as u32);
    BigUint::from(gens).pow(big_d as u32) <= rhs
}

/// Both sides of the slice-wise Hölder step in the generator bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoelderReport<F> {
    /// Total degree of the chosen minimal-degree generator.
    pub t: u32,
    /// Colengths `|N^(d-1) \ I_nu|` of the slices below that generator.
    pub slice_colengths: Vec<u64>,
    /// `sum_nu c_nu^((d-2)/(d-1))`.
    pub lhs: F,
    /// `(#slices)^(1/(d-1)) * (sum c_nu)^((d-2)/(d-1))`, Hölder proper.
    pub hoelder: F,
    /// Same with `#slices` replaced by `t`.
    pub rhs: F,
    /// `(d! * colength)^(1/(d(d-1))) * colength^((d-2)/(d-1))`.
    pub final_bound: F,
    pub holds: bool,
}

pub fn hoelder_audit<F: Float>(s: &Staircase) -> Result<HoelderReport<F>> {
    let d = s.dim();
    if d < 2 {
        return Err(Error::InvalidArgument("Hölder audit needs d >= 2".into()));
    }
    let colength = s.colength().ok_or(Error::InfiniteColength)?;
    let order = TermOrder::degree_lex(d);
    let lead = s
        .generators()
        .iter()
        .min_by(|a, b| order.cmp_unchecked(a, b))
        .expect("nonempty");
    let t = lead.degree();
    let slices = lead.get(d - 1);
    let mut slice_colengths = vec![0u64; slices as usize];
    for v in s.standard_monomials(&order)? {
        let nu = v.get(d - 1);
        if nu < slices {
            slice_colengths[nu as usize] += 1;
        }
    }
    let f = |x: u64| F::from(x).expect("finite");
    let df = f(d as u64);
    let a = (df - f(2)) / (df - F::one());
    let inv = F::one() / (df - F::one());
    let total: u64 = slice_colengths.iter().sum();
    let lhs = slice_colengths
        .iter()
        .fold(F::zero(), |acc, &c| acc + f(c).powf(a));
    let hoelder = f(slices as u64).powf(inv) * f(total).powf(a);
    let rhs = f(t as u64).powf(inv) * f(total).powf(a);
    let fact = (1..=d as u64).product::<u64>();
    let final_bound =
        (f(fact) * f(colength)).powf(F::one() / f((d * (d - 1)) as u64)) * f(colength).powf(a);
    let tol = F::from(1e-9)
        .unwrap_or_else(F::epsilon)
        .max(F::epsilon() * f(64));
    let le = |x: F, y: F| x <= y + tol * y.abs().max(F::one());
    let holds = le(lhs, hoelder) && le(hoelder, rhs) && le(rhs, final_bound);
    Ok(HoelderReport {
        t,
        slice_colengths,
        lhs,
        hoelder,
        rhs,
        final_bound,
        holds,
    })
}
