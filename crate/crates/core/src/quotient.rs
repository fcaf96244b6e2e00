//! Finite local algebras `A = F_p[x_1..x_d]/M` with `M` a cofinite monomial
//! ideal, ideals of `A` as multiplication-closed subspaces, and the
//! breadth-first enumeration of all ideals of a given colength.
//!
//! Every ideal of colength `n` in `F_p[[x_1..x_d]]` contains `m^n`, so the
//! ideals of colength `n` of the power series ring are exactly those of
//! `R/m^c` for any `c >= n`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::count::CountValue;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{ExponentVector, TermOrder};
use crate::staircase::Staircase;
use crate::subspace::{hyperplanes_between, EchelonBasis, SubspaceFp, DEFAULT_SUBSPACE_GUARD};

/// Largest algebra dimension accepted by [`QuotientAlgebra::new`].
pub const DEFAULT_ALGEBRA_GUARD: usize = 64;

#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    field: PrimeField,
    d: usize,
    modulus: Staircase,
    order: TermOrder,
    basis: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    var_mul: Vec<Vec<Option<usize>>>,
    mono_mul: Vec<Option<usize>>,
}

/// An element of a [`QuotientAlgebra`], as coefficients on its standard
/// monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coeffs: Vec<u32>,
}

impl RingElement {
    pub fn from_coeffs(coeffs: Vec<u32>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl QuotientAlgebra {
    pub fn new(p: u64, d: usize, modulus: Staircase) -> Result<Self> {
        Self::with_order(
            PrimeField::new(p)?,
            modulus,
            TermOrder::degree_lex(d),
            DEFAULT_ALGEBRA_GUARD,
        )
        .and_then(|a| {
            if a.d != d {
                Err(Error::DimensionMismatch {
                    expected: d,
                    got: a.d,
                })
            } else {
                Ok(a)
            }
        })
    }

    /// `F_p[x_1..x_d]/m^c`.
    pub fn truncated(p: u64, d: usize, c: u32) -> Result<Self> {
        Self::new(p, d, Staircase::maximal_power(d, c))
    }

    pub fn truncated_with_guard(p: u64, d: usize, c: u32, guard: usize) -> Result<Self> {
        Self::with_order(
            PrimeField::new(p)?,
            Staircase::maximal_power(d, c),
            TermOrder::degree_lex(d),
            guard,
        )
    }

    pub fn with_order(
        field: PrimeField,
        modulus: Staircase,
        order: TermOrder,
        guard: usize,
    ) -> Result<Self> {
        let d = modulus.dim();
        if order.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: order.dim(),
            });
        }
        let dim = modulus.colength().ok_or(Error::InfiniteColength)?;
        if dim > guard as u64 {
            return Err(Error::GuardExceeded {
                what: "algebra dimension",
                needed: dim.to_string(),
                limit: guard as u64,
            });
        }
        let basis = modulus.standard_monomials(&order)?;
        let index: HashMap<ExponentVector, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let var_mul = (0..d)
            .map(|v| {
                basis
                    .iter()
                    .map(|e| index.get(&e.bump(v)).copied())
                    .collect()
            })
            .collect();
        let n = basis.len();
        let mut mono_mul = Vec::with_capacity(n * n);
        for a in &basis {
            for b in &basis {
                mono_mul.push(index.get(&a.add(b)).copied());
            }
        }
        Ok(Self {
            field,
            d,
            modulus,
            order,
            basis,
            index,
            var_mul,
            mono_mul,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn num_vars(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn modulus(&self) -> &Staircase {
        &self.modulus
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Standard monomials, sorted by the algebra's term order.
    pub fn basis(&self) -> &[ExponentVector] {
        &self.basis
    }

    pub fn index_of(&self, e: &ExponentVector) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Image of standard monomial `j` under multiplication by `x_v`.
    pub fn var_image(&self, v: usize, j: usize) -> Option<usize> {
        self.var_mul[v][j]
    }

    /// Largest degree of a standard monomial plus one (the `c` of `m^c`).
    pub fn top_degree(&self) -> u32 {
        self.basis
            .iter()
            .map(ExponentVector::degree)
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn zero(&self) -> RingElement {
        RingElement::from_coeffs(vec![0; self.dim()])
    }

    pub fn one(&self) -> RingElement {
        let mut e = self.zero();
        if let Some(i) = self.index_of(&ExponentVector::zero(self.d)) {
            e.coeffs[i] = 1;
        }
        e
    }

    /// The monomial `x^e`, zero if it lies in the modulus.
    pub fn monomial(&self, e: &ExponentVector) -> RingElement {
        let mut r = self.zero();
        if let Some(i) = self.index_of(e) {
            r.coeffs[i] = 1;
        }
        r
    }

    /// Builds `sum c * x^e` from (exponents, coefficient) pairs.
    pub fn element(&self, terms: &[(Vec<u32>, i64)]) -> RingElement {
        let mut r = self.zero();
        for (e, c) in terms {
            if let Some(i) = self.index_of(&ExponentVector::new(e.clone())) {
                r.coeffs[i] = self.field.add(r.coeffs[i], self.field.from_i64(*c));
            }
        }
        r
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = &self.field;
        RingElement::from_coeffs(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.add(x, y))
                .collect(),
        )
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = &self.field;
        RingElement::from_coeffs(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.sub(x, y))
                .collect(),
        )
    }

    pub fn scale(&self, a: &RingElement, c: u32) -> RingElement {
        RingElement::from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let n = self.dim();
        let mut out = vec![0u32; n];
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                if let Some(k) = self.mono_mul[i * n + j] {
                    out[k] = self.field.add(out[k], self.field.mul(ca, cb));
                }
            }
        }
        RingElement::from_coeffs(out)
    }

    /// `x_v * a` on raw coefficient vectors.
    pub fn mul_var_coeffs(&self, v: usize, a: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for (j, &c) in a.iter().enumerate() {
            if c != 0 {
                if let Some(k) = self.var_mul[v][j] {
                    out[k] = c;
                }
            }
        }
        out
    }

    pub fn mul_var(&self, v: usize, a: &RingElement) -> RingElement {
        RingElement::from_coeffs(self.mul_var_coeffs(v, &a.coeffs))
    }

    /// Inverse of a unit (constant term nonzero); `None` for non-units.
    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        let c0 = self
            .index_of(&ExponentVector::zero(self.d))
            .map(|i| a.coeffs[i])?;
        if c0 == 0 {
            return None;
        }
        // a = c0 (1 + n) with n nilpotent; 1/(1+n) = sum (-n)^k.
        let c0_inv = self.field.inv(c0);
        let normalized = self.scale(a, c0_inv);
        let n = self.sub(&normalized, &self.one());
        let neg_n = self.scale(&n, self.field.neg(1));
        let mut term = self.one();
        let mut acc = self.one();
        loop {
            term = self.mul(&term, &neg_n);
            if term.is_zero() {
                break;
            }
            acc = self.add(&acc, &term);
        }
        Some(self.scale(&acc, c0_inv))
    }

    /// The maximal ideal: span of the non-constant standard monomials.
    pub fn maximal_ideal(&self) -> IdealSubspace {
        self.power_of_maximal(1)
    }

    /// `m^k` as an ideal of the algebra.
    pub fn power_of_maximal(&self, k: u32) -> IdealSubspace {
        IdealSubspace::new_unchecked(SubspaceFp::coordinate(
            self.dim(),
            (0..self.dim()).filter(|&i| self.basis[i].degree() >= k),
        ))
    }

    pub fn whole(&self) -> IdealSubspace {
        IdealSubspace::new_unchecked(SubspaceFp::full(self.dim()))
    }

    /// Whether `s` is closed under multiplication by every variable.
    pub fn is_ideal(&self, s: &SubspaceFp) -> bool {
        s.rows()
            .all(|r| (0..self.d).all(|v| s.contains(&self.field, &self.mul_var_coeffs(v, r))))
    }
}

/// An ideal of a [`QuotientAlgebra`], kept as its canonical subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealSubspace {
    space: SubspaceFp,
}

impl IdealSubspace {
    /// Wraps `space`, checking closure under the variables.
    pub fn new(a: &QuotientAlgebra, space: SubspaceFp) -> Result<Self> {
        if space.ambient() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: space.ambient(),
            });
        }
        if !a.is_ideal(&space) {
            return Err(Error::InvalidArgument(
                "subspace is not closed under multiplication".into(),
            ));
        }
        Ok(Self { space })
    }

    pub(crate) fn new_unchecked(space: SubspaceFp) -> Self {
        Self { space }
    }

    pub fn space(&self) -> &SubspaceFp {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `dim A/I`.
    pub fn colength(&self) -> usize {
        self.space.codim()
    }

    pub fn contains(&self, a: &QuotientAlgebra, f: &RingElement) -> bool {
        self.space.contains(a.field(), f.coeffs())
    }

    pub fn is_subideal_of(&self, a: &QuotientAlgebra, other: &IdealSubspace) -> bool {
        self.space.is_subspace_of(a.field(), &other.space)
    }

    pub fn basis_elements(&self) -> Vec<RingElement> {
        self.space
            .rows()
            .map(|r| RingElement::from_coeffs(r.to_vec()))
            .collect()
    }

    /// Whether the ideal is spanned by standard monomials.
    pub fn is_monomial(&self) -> bool {
        self.space
            .rows()
            .all(|r| r.iter().filter(|&&c| c != 0).count() == 1)
    }

    /// For a monomial ideal, the staircase of its preimage in the polynomial
    /// ring (modulus generators included).
    pub fn as_staircase(&self, a: &QuotientAlgebra) -> Option<Staircase> {
        if !self.is_monomial() {
            return None;
        }
        let gens = self
            .space
            .pivots()
            .iter()
            .map(|&i| a.basis()[i].clone())
            .chain(a.modulus().generators().iter().cloned());
        Staircase::from_generators(a.num_vars(), gens).ok()
    }

    /// The monomial ideal spanned by the standard monomials inside `s`.
    pub fn from_staircase(a: &QuotientAlgebra, s: &Staircase) -> Self {
        Self::new_unchecked(SubspaceFp::coordinate(
            a.dim(),
            (0..a.dim()).filter(|&i| s.contains(&a.basis()[i])),
        ))
    }

    /// `m * I`, spanned by `x_v * b` over basis vectors `b`.
    pub fn times_maximal(&self, a: &QuotientAlgebra) -> IdealSubspace {
        let mut b = EchelonBasis::new(*a.field(), a.dim());
        for r in self.space.rows() {
            for v in 0..a.num_vars() {
                b.insert(a.mul_var_coeffs(v, r));
            }
        }
        IdealSubspace::new_unchecked(b.into_subspace())
    }

    /// The product ideal `I * K`.
    pub fn product(&self, a: &QuotientAlgebra, other: &IdealSubspace) -> IdealSubspace {
        let lhs = self.basis_elements();
        let rhs = other.basis_elements();
        let gens = lhs
            .iter()
            .flat_map(|x| rhs.iter().map(move |y| a.mul(x, y)));
        ideal_closure(a, gens)
    }

    /// The sum `I + K`.
    pub fn sum(&self, a: &QuotientAlgebra, other: &IdealSubspace) -> IdealSubspace {
        IdealSubspace::new_unchecked(self.space.join(a.field(), &other.space))
    }
}

/// Smallest ideal containing `gens`.
pub fn ideal_closure<I>(a: &QuotientAlgebra, gens: I) -> IdealSubspace
where
    I: IntoIterator<Item = RingElement>,
{
    let mut basis = EchelonBasis::new(*a.field(), a.dim());
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        let mut v = g.into_coeffs();
        basis.reduce(&mut v);
        if basis.insert(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for var in 0..a.num_vars() {
            let mut w = a.mul_var_coeffs(var, &v);
            basis.reduce(&mut w);
            if w.iter().any(|&c| c != 0) && basis.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    IdealSubspace::new_unchecked(basis.into_subspace())
}

/// The ideals of colength one more than `ideal` that it contains: the
/// hyperplanes of `I/mI` pulled back to `I`.
pub fn child_ideals(a: &QuotientAlgebra, ideal: &IdealSubspace) -> Vec<IdealSubspace> {
    let m_i = ideal.times_maximal(a);
    hyperplanes_between(*a.field(), ideal.space(), m_i.space())
        .into_iter()
        .map(IdealSubspace::new_unchecked)
        .collect()
}

/// Number of minimal generators `dim I/mI`.
pub fn num_generators(a: &QuotientAlgebra, ideal: &IdealSubspace) -> usize {
    ideal.dim() - ideal.times_maximal(a).dim()
}

/// All ideals of colength `0..=max_colength`, level by level, each level
/// sorted by canonical form.
pub fn enumerate_ideal_levels(
    a: &QuotientAlgebra,
    max_colength: usize,
    guard: u64,
) -> Result<Vec<Vec<IdealSubspace>>> {
    let p = a.p() as u64;
    let mut levels = vec![vec![a.whole()]];
    let mut touched = 1u64;
    for _ in 0..max_colength {
        let current = levels.last().expect("nonempty");
        let work: u64 = current
            .iter()
            .map(|i| {
                let k = num_generators(a, i) as u32;
                (p.saturating_pow(k) - 1) / (p - 1)
            })
            .fold(0u64, u64::saturating_add);
        touched = touched.saturating_add(work);
        if touched > guard {
            return Err(Error::GuardExceeded {
                what: "ideal enumeration",
                needed: touched.to_string(),
                limit: guard,
            });
        }
        let next: HashSet<IdealSubspace> = current
            .par_iter()
            .flat_map_iter(|i| child_ideals(a, i))
            .collect();
        let mut next: Vec<IdealSubspace> = next.into_iter().collect();
        next.sort();
        levels.push(next);
    }
    Ok(levels)
}

/// All ideals of `a` with `dim A/I = n`, each once, sorted.
pub fn enumerate_ideals(a: &QuotientAlgebra, n: usize, guard: u64) -> Result<Vec<IdealSubspace>> {
    Ok(enumerate_ideal_levels(a, n, guard)?
        .pop()
        .expect("nonempty"))
}

/// Number of ideals of colength `n` in `F_p[[x_1..x_d]]`, computed in `R/m^n`.
pub fn count_ideals(p: u64, d: usize, n: usize) -> Result<CountValue> {
    count_ideals_in(p, d, n, n as u32)
}

/// Same count computed in `R/m^c`; requires `c >= n`.
pub fn count_ideals_in(p: u64, d: usize, n: usize, c: u32) -> Result<CountValue> {
    if (c as usize) < n {
        return Err(Error::InvalidArgument(format!(
            "truncation R/m^{c} cannot see all ideals of colength {n}"
        )));
    }
    let a = QuotientAlgebra::truncated(p, d, c)?;
    let ideals = enumerate_ideals(&a, n, DEFAULT_SUBSPACE_GUARD)?;
    Ok(CountValue::from_u64(ideals.len() as u64, a.p()))
}

/// JSON form of an ideal: the modulus and the echelon basis rows.
#[derive(Debug, Clone, Serialize)]
pub struct IdealRecord {
    pub p: u32,
    pub modulus: Staircase,
    pub basis_monomials: Vec<Vec<u32>>,
    pub rows: Vec<Vec<u32>>,
}

impl IdealRecord {
    pub fn new(a: &QuotientAlgebra, ideal: &IdealSubspace) -> Self {
        Self {
            p: a.p(),
            modulus: a.modulus().clone(),
            basis_monomials: a.basis().iter().map(|e| e.exps().to_vec()).collect(),
            rows: ideal.space().to_rows(),
        }
    }
}
