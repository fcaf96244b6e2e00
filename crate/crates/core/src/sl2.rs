//! The Lie algebra `sl_2(m)` over a finite local algebra and its ideals.
//!
//! An element `[[a, b], [c, -a]]` with `a, b, c` in the maximal ideal is
//! stored as the concatenation of the coordinates of `a`, `b`, `c` on the
//! non-constant standard monomials, so `sl_2(m)` is `F_p^(3k)` with
//! `k = dim m`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::count::CountValue;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::quotient::{ideal_closure, IdealSubspace, QuotientAlgebra, RingElement};
use crate::subspace::{hyperplanes_between, EchelonBasis, SubspaceFp};

/// Rejects characteristic 2.
pub(crate) fn odd_characteristic(a: &QuotientAlgebra) -> Result<()> {
    if a.p() == 2 {
        Err(Error::CharacteristicTwo)
    } else {
        Ok(())
    }
}

/// A traceless matrix `[[a, b], [c, -a]]` over the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2Element {
    pub a: RingElement,
    pub b: RingElement,
    pub c: RingElement,
}

#[derive(Debug, Clone)]
pub struct Sl2Algebra {
    base: QuotientAlgebra,
    /// Algebra indices of the non-constant standard monomials.
    m_index: Vec<usize>,
}

impl Sl2Algebra {
    pub fn new(base: QuotientAlgebra) -> Result<Self> {
        odd_characteristic(&base)?;
        let m_index = (0..base.dim())
            .filter(|&i| base.basis()[i].degree() > 0)
            .collect();
        Ok(Self { base, m_index })
    }

    /// `sl_2(m)` over `F_p[x_1..x_d]/m^c`.
    pub fn truncated(p: u64, d: usize, c: u32) -> Result<Self> {
        Self::new(QuotientAlgebra::truncated(p, d, c)?)
    }

    pub fn base(&self) -> &QuotientAlgebra {
        &self.base
    }

    pub fn field(&self) -> &PrimeField {
        self.base.field()
    }

    /// `dim m`.
    pub fn k(&self) -> usize {
        self.m_index.len()
    }

    /// `dim sl_2(m) = 3 dim m`.
    pub fn dim(&self) -> usize {
        3 * self.k()
    }

    fn project(&self, f: &RingElement) -> Result<Vec<u32>> {
        let one = self
            .base
            .index_of(&crate::monomial::ExponentVector::zero(self.base.num_vars()));
        if one.is_some_and(|i| f.coeffs()[i] != 0) {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(self.m_index.iter().map(|&i| f.coeffs()[i]).collect())
    }

    fn lift(&self, v: &[u32]) -> RingElement {
        let mut coeffs = vec![0u32; self.base.dim()];
        for (&i, &c) in self.m_index.iter().zip(v) {
            coeffs[i] = c;
        }
        RingElement::from_coeffs(coeffs)
    }

    pub fn to_coords(&self, x: &Sl2Element) -> Result<Vec<u32>> {
        let mut v = self.project(&x.a)?;
        v.extend(self.project(&x.b)?);
        v.extend(self.project(&x.c)?);
        Ok(v)
    }

    pub fn from_coords(&self, v: &[u32]) -> Sl2Element {
        let k = self.k();
        Sl2Element {
            a: self.lift(&v[..k]),
            b: self.lift(&v[k..2 * k]),
            c: self.lift(&v[2 * k..]),
        }
    }

    /// `[X, Y] = (b c' - c b', 2(a b' - b a'), 2(c a' - a c'))`.
    pub fn bracket(&self, x: &Sl2Element, y: &Sl2Element) -> Sl2Element {
        let r = &self.base;
        let two = |f: RingElement| r.add(&f, &f);
        Sl2Element {
            a: r.sub(&r.mul(&x.b, &y.c), &r.mul(&x.c, &y.b)),
            b: two(r.sub(&r.mul(&x.a, &y.b), &r.mul(&x.b, &y.a))),
            c: two(r.sub(&r.mul(&x.c, &y.a), &r.mul(&x.a, &y.c))),
        }
    }

    pub fn bracket_coords(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let z = self.bracket(&self.from_coords(x), &self.from_coords(y));
        self.to_coords(&z).expect("brackets stay in sl_2(m)")
    }

    /// The coordinate basis of `sl_2(m)`.
    pub fn spanning_set(&self) -> Vec<Vec<u32>> {
        (0..self.dim())
            .map(|i| {
                let mut v = vec![0u32; self.dim()];
                v[i] = 1;
                v
            })
            .collect()
    }

    /// `sl_2(I)` for an ideal `I` contained in `m`.
    pub fn sl2_of(&self, ideal: &IdealSubspace) -> Result<SubspaceFp> {
        let k = self.k();
        let mut b = EchelonBasis::new(*self.field(), self.dim());
        for f in ideal.basis_elements() {
            let v = self.project(&f)?;
            for slot in 0..3 {
                let mut w = vec![0u32; self.dim()];
                w[slot * k..(slot + 1) * k].copy_from_slice(&v);
                b.insert(w);
            }
        }
        Ok(b.into_subspace())
    }

    /// `[L, S]` for a subspace `S`.
    pub fn commutator_with_all(&self, s: &SubspaceFp) -> SubspaceFp {
        let span = self.spanning_set();
        let mut b = EchelonBasis::new(*self.field(), self.dim());
        for r in s.rows() {
            for g in &span {
                b.insert(self.bracket_coords(g, r));
            }
        }
        b.into_subspace()
    }

    pub fn is_lie_ideal(&self, s: &SubspaceFp) -> bool {
        self.commutator_with_all(s).is_subspace_of(self.field(), s)
    }

    /// The ideal of the base algebra generated by all entries of the given
    /// matrices.
    pub fn entry_ideal<'a>(
        &self,
        elems: impl IntoIterator<Item = &'a Sl2Element>,
    ) -> IdealSubspace {
        let gens: Vec<RingElement> = elems
            .into_iter()
            .flat_map(|x| [x.a.clone(), x.b.clone(), x.c.clone()])
            .collect();
        ideal_closure(&self.base, gens)
    }
}

/// A Lie ideal of `sl_2(m)`, as a canonical subspace of the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieIdeal {
    space: SubspaceFp,
}

impl LieIdeal {
    /// Checks closure under bracket with all of `sl_2(m)`.
    pub fn new(l: &Sl2Algebra, space: SubspaceFp) -> Result<Self> {
        if space.ambient() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                got: space.ambient(),
            });
        }
        if !l.is_lie_ideal(&space) {
            return Err(Error::InvalidArgument(
                "subspace is not bracket-closed".into(),
            ));
        }
        Ok(Self { space })
    }

    pub fn space(&self) -> &SubspaceFp {
        &self.space
    }

    pub fn codim(&self) -> usize {
        self.space.codim()
    }

    pub fn elements(&self, l: &Sl2Algebra) -> Vec<Sl2Element> {
        self.space.rows().map(|r| l.from_coords(r)).collect()
    }

    pub fn entry_ideal(&self, l: &Sl2Algebra) -> IdealSubspace {
        l.entry_ideal(&self.elements(l))
    }
}

/// All Lie ideals of codimension `0..=max_codim`, level by level.
///
/// The codimension-one ideals inside an ideal `J` are exactly the hyperplanes
/// of `J` containing `[L, J]`: `L` is nilpotent, so it acts trivially on any
/// one-dimensional quotient `J/H`.
pub fn enumerate_lie_ideals(
    l: &Sl2Algebra,
    max_codim: usize,
    guard: u64,
) -> Result<Vec<Vec<LieIdeal>>> {
    let p = l.field().p() as u64;
    let mut levels = vec![vec![LieIdeal {
        space: SubspaceFp::full(l.dim()),
    }]];
    let mut touched = 1u64;
    for _ in 0..max_codim.min(l.dim()) {
        let current = levels.last().expect("nonempty");
        let quotients: Vec<(SubspaceFp, usize)> = current
            .par_iter()
            .map(|j| {
                let lower = l.commutator_with_all(&j.space);
                let k = j.space.dim() - lower.dim();
                (lower, k)
            })
            .collect();
        let work = quotients
            .iter()
            .map(|(_, k)| (p.saturating_pow(*k as u32) - 1) / (p - 1))
            .fold(0u64, u64::saturating_add);
        touched = touched.saturating_add(work);
        if touched > guard {
            return Err(Error::GuardExceeded {
                what: "Lie ideal enumeration",
                needed: touched.to_string(),
                limit: guard,
            });
        }
        let field = *l.field();
        let next: HashSet<LieIdeal> = current
            .par_iter()
            .zip(quotients.par_iter())
            .flat_map_iter(|(j, (lower, _))| {
                hyperplanes_between(field, &j.space, lower)
                    .into_iter()
                    .map(|space| LieIdeal { space })
            })
            .collect();
        let mut next: Vec<LieIdeal> = next.into_iter().collect();
        next.sort();
        levels.push(next);
    }
    Ok(levels)
}

/// Checks `sl_2(J) >= ideal >= sl_2(m^3 J)` for the entry ideal `J`.
pub fn lie_sandwich_check(l: &Sl2Algebra, ideal: &LieIdeal) -> Result<bool> {
    odd_characteristic(l.base())?;
    let a = l.base();
    let j = ideal.entry_ideal(l);
    let upper = l.sl2_of(&j)?;
    let lower = l.sl2_of(&a.power_of_maximal(3).product(a, &j))?;
    Ok(ideal.space.is_subspace_of(l.field(), &upper)
        && lower.is_subspace_of(l.field(), &ideal.space))
}

/// `[sl_2(m) : sl_2(I)] = p^(3 dim m/I)`, which is also the index of
/// `SL_2^1(I)` in `SL_2^1(m)`.
pub fn congruence_index(a: &QuotientAlgebra, ideal: &IdealSubspace) -> Result<CountValue> {
    let m = a.maximal_ideal();
    if !ideal.is_subideal_of(a, &m) {
        return Err(Error::NotInMaximalIdeal);
    }
    Ok(CountValue::p_power(
        a.p(),
        3 * (m.dim() - ideal.dim()) as u64,
    ))
}
