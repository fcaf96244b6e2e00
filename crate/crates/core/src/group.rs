//! The congruence group `SL_2^1(m)` over a finite local algebra.
//!
//! Elements are `2x2` matrices `[[1+a, b], [c, 1+d]]` with entries of
//! `g - 1` in the maximal ideal and determinant one. Small groups (order at
//! most [`DEFAULT_GROUP_GUARD`]) can be tabulated, after which subgroups are
//! bitsets over the element list.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::count::CountValue;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::quotient::{ideal_closure, IdealSubspace, QuotientAlgebra, RingElement};
use crate::sl2::odd_characteristic;
use crate::subspace::{enumerate_subspaces, SubspaceFp};

/// Largest group order that [`CongruenceGroup::table`] will build.
pub const DEFAULT_GROUP_GUARD: u64 = 729;

/// Entries `[g11, g12, g21, g22]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub entries: [RingElement; 4],
}

#[derive(Debug, Clone)]
pub struct CongruenceGroup {
    base: QuotientAlgebra,
}

impl CongruenceGroup {
    pub fn new(base: QuotientAlgebra) -> Result<Self> {
        odd_characteristic(&base)?;
        Ok(Self { base })
    }

    /// `SL_2^1(m)` over `F_p[x_1..x_d]/m^c`.
    pub fn truncated(p: u64, d: usize, c: u32) -> Result<Self> {
        Self::new(QuotientAlgebra::truncated(p, d, c)?)
    }

    pub fn base(&self) -> &QuotientAlgebra {
        &self.base
    }

    /// `|m|^3`.
    pub fn order(&self) -> CountValue {
        CountValue::p_power(self.base.p(), 3 * self.base.maximal_ideal().dim() as u64)
    }

    pub fn identity(&self) -> GroupElement {
        let (one, zero) = (self.base.one(), self.base.zero());
        GroupElement {
            entries: [one.clone(), zero.clone(), zero, one],
        }
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let r = &self.base;
        let [a, b, c, d] = &x.entries;
        let [e, f, g, h] = &y.entries;
        GroupElement {
            entries: [
                r.add(&r.mul(a, e), &r.mul(b, g)),
                r.add(&r.mul(a, f), &r.mul(b, h)),
                r.add(&r.mul(c, e), &r.mul(d, g)),
                r.add(&r.mul(c, f), &r.mul(d, h)),
            ],
        }
    }

    /// Adjugate; equals the inverse because the determinant is one.
    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        let r = &self.base;
        let neg = |f: &RingElement| r.scale(f, r.field().neg(1));
        let [a, b, c, d] = &x.entries;
        GroupElement {
            entries: [d.clone(), neg(b), neg(c), a.clone()],
        }
    }

    /// `x^-1 g x`.
    pub fn conjugate(&self, g: &GroupElement, x: &GroupElement) -> GroupElement {
        self.mul(&self.inverse(x), &self.mul(g, x))
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.mul(
            &self.mul(&self.inverse(x), &self.inverse(y)),
            &self.mul(x, y),
        )
    }

    pub fn pow(&self, x: &GroupElement, mut e: u64) -> GroupElement {
        let (mut acc, mut base) = (self.identity(), x.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Entries of `g - 1`.
    pub fn deviation(&self, g: &GroupElement) -> [RingElement; 4] {
        let r = &self.base;
        let one = r.one();
        let [a, b, c, d] = &g.entries;
        [r.sub(a, &one), b.clone(), c.clone(), r.sub(d, &one)]
    }

    /// Determinant one and `g = 1` modulo `m`.
    pub fn is_member(&self, g: &GroupElement) -> bool {
        let r = &self.base;
        let m = r.maximal_ideal();
        let [a, b, c, d] = &g.entries;
        let det = r.sub(&r.mul(a, d), &r.mul(b, c));
        det == r.one() && self.deviation(g).iter().all(|f| m.contains(r, f))
    }

    /// `[[1+a, b], [c, (1+bc)/(1+a)]]` for `a, b, c` in `m`.
    pub fn from_params(&self, a: &RingElement, b: &RingElement, c: &RingElement) -> GroupElement {
        let r = &self.base;
        let one = r.one();
        let top = r.add(&one, a);
        let inv = r.inverse(&top).expect("1 + m consists of units");
        let bottom = r.mul(&inv, &r.add(&one, &r.mul(b, c)));
        GroupElement {
            entries: [top, b.clone(), c.clone(), bottom],
        }
    }

    pub fn upper(&self, f: &RingElement) -> GroupElement {
        let z = self.base.zero();
        self.from_params(&z, f, &z)
    }

    pub fn lower(&self, f: &RingElement) -> GroupElement {
        let z = self.base.zero();
        self.from_params(&z, &z, f)
    }

    /// `diag(1+f, (1+f)^-1)`.
    pub fn diagonal(&self, f: &RingElement) -> GroupElement {
        let z = self.base.zero();
        self.from_params(f, &z, &z)
    }

    /// Generators of `SL_2^1(I)` for an ideal `I` inside `m`.
    ///
    /// Every element factors as lower * diagonal * upper with entries in `I`.
    /// The canonical basis of `I` has pairwise distinct lowest monomials, so
    /// its elements with lowest degree at least `k` span `I ∩ m^k` modulo
    /// `m^(k+1)`; hence `1 + f` over that basis generates `1 + I`.
    pub fn congruence_generators(&self, ideal: &IdealSubspace) -> Result<Vec<GroupElement>> {
        let r = &self.base;
        if !ideal.is_subideal_of(r, &r.maximal_ideal()) {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(ideal
            .basis_elements()
            .iter()
            .flat_map(|f| [self.upper(f), self.lower(f), self.diagonal(f)])
            .collect())
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.congruence_generators(&self.base.maximal_ideal())
            .expect("m lies in m")
    }

    /// Ideal generated by the entries of `g - 1` over the given elements.
    pub fn entry_ideal<'a>(
        &self,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> IdealSubspace {
        let gens: Vec<RingElement> = elems.into_iter().flat_map(|g| self.deviation(g)).collect();
        ideal_closure(&self.base, gens)
    }

    /// Whether `g = 1` modulo the ideal.
    pub fn in_congruence(&self, g: &GroupElement, ideal: &IdealSubspace) -> bool {
        self.deviation(g)
            .iter()
            .all(|f| ideal.contains(&self.base, f))
    }

    /// Every element, in parameter order.
    pub fn elements(&self, guard: u64) -> Result<Vec<GroupElement>> {
        let r = &self.base;
        let m = r.maximal_ideal();
        let k = m.dim();
        let p = r.p() as u64;
        let order = p
            .checked_pow(3 * k as u32)
            .filter(|&o| o <= guard)
            .ok_or_else(|| Error::GuardExceeded {
                what: "group enumeration",
                needed: self.order().to_string(),
                limit: guard,
            })?;
        let m_rows: Vec<RingElement> = m.basis_elements();
        let combine = |code: u64| -> RingElement {
            let mut code = code;
            let mut acc = r.zero();
            for row in &m_rows {
                acc = r.add(&acc, &r.scale(row, (code % p) as u32));
                code /= p;
            }
            acc
        };
        let side = p.pow(k as u32);
        Ok((0..order)
            .into_par_iter()
            .map(|code| {
                let (a, b, c) = (code % side, (code / side) % side, code / (side * side));
                self.from_params(&combine(a), &combine(b), &combine(c))
            })
            .collect())
    }

    /// Subgroup generated by the conjugates of `seeds` under the whole group.
    pub fn normal_closure(&self, seeds: &[GroupElement]) -> HashSet<GroupElement> {
        let gens = self.generators();
        let mut orbit: HashSet<GroupElement> = seeds.iter().cloned().collect();
        let mut queue: VecDeque<GroupElement> = orbit.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = self.conjugate(&x, g);
                if orbit.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let orbit: Vec<GroupElement> = orbit.into_iter().collect();
        let mut set: HashSet<GroupElement> = HashSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for s in &orbit {
                let y = self.mul(&x, s);
                if set.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn table(&self, guard: u64) -> Result<GroupTable> {
        GroupTable::new(self, guard)
    }
}

/// A fixed-size bitset over the elements of a [`GroupTable`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    bits: Vec<u64>,
}

impl Subgroup {
    fn empty(n: usize) -> Self {
        Self {
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.bits[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn order(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.bits.len() * 64).filter(|&i| self.contains(i))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Multiplication table of a small congruence group.
#[derive(Debug, Clone)]
pub struct GroupTable {
    p: u32,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    /// Indices of the standard generators.
    generators: Vec<usize>,
}

impl GroupTable {
    fn new(g: &CongruenceGroup, guard: u64) -> Result<Self> {
        let mut elements = g.elements(guard)?;
        elements.sort();
        let index: HashMap<GroupElement, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let n = elements.len();
        let mul: Vec<u32> = (0..n * n)
            .into_par_iter()
            .map(|ij| index[&g.mul(&elements[ij / n], &elements[ij % n])] as u32)
            .collect();
        let inv = elements
            .iter()
            .map(|e| index[&g.inverse(e)] as u32)
            .collect();
        let identity = index[&g.identity()];
        let generators = g.generators().iter().map(|e| index[e]).collect();
        Ok(Self {
            p: g.base().p(),
            elements,
            index,
            mul,
            inv,
            identity,
            generators,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.len() + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    fn pow(&self, i: usize, e: u32) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, i))
    }

    pub fn whole(&self) -> Subgroup {
        let mut s = Subgroup::empty(self.len());
        for i in 0..self.len() {
            s.insert(i);
        }
        s
    }

    /// `K <x_1, ..., x_r>` for a subgroup `K` normalised by the `x_i`.
    fn extend(&self, base: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut s = base.clone();
        let mut queue: Vec<usize> = s.iter().collect();
        if queue.is_empty() {
            s.insert(self.identity);
            queue.push(self.identity);
        }
        while let Some(x) = queue.pop() {
            for &e in extra {
                let y = self.mul(x, e);
                if s.insert(y) {
                    queue.push(y);
                }
            }
        }
        s
    }

    /// Normal closure of a set of elements.
    pub fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        let mut orbit = Subgroup::empty(self.len());
        let mut queue = Vec::new();
        for &s in seeds {
            if orbit.insert(s) {
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            for &g in &self.generators {
                let y = self.mul(self.inv(g), self.mul(x, g));
                if orbit.insert(y) {
                    queue.push(y);
                }
            }
        }
        let orbit: Vec<usize> = orbit.iter().collect();
        self.extend(&Subgroup::empty(self.len()), &orbit)
    }

    /// A small generating set, chosen greedily.
    pub fn generating_set(&self, s: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.extend(&Subgroup::empty(self.len()), &[]);
        for x in s.iter() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.extend(&cur, &gens);
            }
        }
        gens
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        s.iter().all(|x| {
            self.generators
                .iter()
                .all(|&g| s.contains(self.mul(self.inv(g), self.mul(x, g))))
        })
    }

    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        s.contains(self.identity)
            && s.iter()
                .all(|x| s.iter().all(|y| s.contains(self.mul(x, y))))
    }

    /// The normal subgroups of `n` with index `p` in `n`.
    ///
    /// They all contain `K = [N, G] N^p`, and conversely every subgroup
    /// between `K` and `N` is normal; `N/K` is elementary abelian, so these
    /// are the hyperplanes of `N/K`.
    pub fn maximal_normal_subgroups(&self, n: &Subgroup) -> Vec<Subgroup> {
        let gens = self.generating_set(n);
        let mut seeds = Vec::new();
        for &x in &gens {
            seeds.push(self.pow(x, self.p));
            for &g in &self.generators {
                seeds.push(self.mul(self.mul(self.inv(x), self.inv(g)), self.mul(x, g)));
            }
        }
        let k = self.normal_closure(&seeds);
        let mut reps = Vec::new();
        let mut cur = k.clone();
        for &x in &gens {
            if !cur.contains(x) {
                reps.push(x);
                cur = self.extend(&cur, &reps);
            }
        }
        let r = reps.len();
        if r == 0 {
            return Vec::new();
        }
        let field = PrimeField::new(self.p as u64).expect("group built over a prime field");
        enumerate_subspaces(field, r, r - 1, u64::MAX)
            .expect("hyperplanes always enumerable")
            .map(|h: SubspaceFp| {
                let words: Vec<usize> = h
                    .rows()
                    .map(|row| {
                        row.iter()
                            .zip(&reps)
                            .fold(self.identity, |acc, (&c, &x)| self.mul(acc, self.pow(x, c)))
                    })
                    .collect();
                self.extend(&k, &words)
            })
            .collect()
    }

    /// Normal subgroups of index `p^0 .. p^max_level`, level by level.
    pub fn normal_subgroup_levels(&self, max_level: usize) -> Vec<Vec<Subgroup>> {
        let mut levels = vec![vec![self.whole()]];
        for _ in 0..max_level {
            let current = levels.last().expect("nonempty");
            let next: HashSet<Subgroup> = current
                .par_iter()
                .flat_map_iter(|n| self.maximal_normal_subgroups(n))
                .collect();
            if next.is_empty() {
                break;
            }
            let mut next: Vec<Subgroup> = next.into_iter().collect();
            next.sort();
            levels.push(next);
        }
        levels
    }

    pub fn members(&self, s: &Subgroup) -> Vec<GroupElement> {
        s.iter().map(|i| self.elements[i].clone()).collect()
    }
}

/// All normal subgroups of index at most `max_index`, grouped by index.
pub fn enumerate_normal_subgroups(
    g: &CongruenceGroup,
    max_index: u64,
    guard: u64,
) -> Result<Vec<Vec<Subgroup>>> {
    let table = g.table(guard)?;
    let p = g.base().p() as u64;
    let mut level = 0usize;
    while p
        .checked_pow(level as u32 + 1)
        .is_some_and(|q| q <= max_index)
    {
        level += 1;
    }
    Ok(table.normal_subgroup_levels(level))
}

/// Checks `SL_2^1(J) >= N >= SL_2^1(m^3 J)` with `J` the entry ideal of the
/// given elements of `N`, using generators for the lower containment.
pub fn group_sandwich_check(
    g: &CongruenceGroup,
    members: &[GroupElement],
    contains: impl Fn(&GroupElement) -> bool,
) -> Result<bool> {
    odd_characteristic(g.base())?;
    let a = g.base();
    let j = g.entry_ideal(members);
    let upper = members.iter().all(|x| g.in_congruence(x, &j));
    let lower_ideal = a.power_of_maximal(3).product(a, &j);
    let lower = g.congruence_generators(&lower_ideal)?.iter().all(&contains);
    Ok(upper && lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two() {
        assert_eq!(
            CongruenceGroup::truncated(2, 1, 2).unwrap_err(),
            Error::CharacteristicTwo
        );
    }

    #[test]
    fn smallest_group_is_elementary_abelian() {
        let g = CongruenceGroup::truncated(3, 1, 2).unwrap();
        let t = g.table(DEFAULT_GROUP_GUARD).unwrap();
        assert_eq!(t.len(), 27);
        for i in 0..27 {
            assert_eq!(t.pow(i, 3), t.identity);
            for j in 0..27 {
                assert_eq!(t.mul(i, j), t.mul(j, i));
            }
        }
        let levels = enumerate_normal_subgroups(&g, 27, DEFAULT_GROUP_GUARD).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 13, 13, 1]);
    }

    #[test]
    fn elements_are_members_and_closed() {
        let g = CongruenceGroup::truncated(3, 1, 3).unwrap();
        let els = g.elements(DEFAULT_GROUP_GUARD).unwrap();
        assert_eq!(els.len(), 729);
        for (x, y) in els.iter().zip(els.iter().rev()).step_by(37) {
            assert!(g.is_member(x));
            assert!(g.is_member(&g.mul(x, y)));
            assert_eq!(g.mul(x, &g.inverse(x)), g.identity());
        }
    }

    #[test]
    fn guard_blocks_large_groups() {
        let g = CongruenceGroup::truncated(3, 1, 4).unwrap();
        assert!(g.table(DEFAULT_GROUP_GUARD).unwrap_err().is_guard());
    }

    #[test]
    fn normal_closure_of_congruence_generators() {
        let g = CongruenceGroup::truncated(3, 1, 3).unwrap();
        let a = g.base().clone();
        let i = a.power_of_maximal(2);
        let gens = g.congruence_generators(&i).unwrap();
        let n = g.normal_closure(&gens);
        assert_eq!(n.len(), 27);
        let members: Vec<GroupElement> = n.iter().cloned().collect();
        assert_eq!(g.entry_ideal(&members), i);
        assert!(group_sandwich_check(&g, &members, |x| n.contains(x)).unwrap());
    }
}
