//! Leading monomials under the local order, initial ideals, and the layer
//! profile `(d_n, e_n)` of an ideal.
//!
//! `V_n` is the image of `I ∩ R_n` in the homogeneous layer `R_n/R_{n+1}`,
//! `W_{n+1}` is the span of `x_i V_n`, `d_n = dim V_n` and
//! `e_n = dim V_n/W_n`. All ideals handled here contain a power of the
//! maximal ideal, so initial ideals are read off a reduced echelon form over
//! the ordered monomial basis; no standard-basis algorithm is needed.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::count::CountValue;
use crate::error::{Error, Result};
use crate::monomial::{layer_dim, monomials_of_degree, ExponentVector, TermOrder};
use crate::quotient::{IdealSubspace, QuotientAlgebra, RingElement};
use crate::staircase::Staircase;
use crate::subspace::{EchelonBasis, SubspaceFp};

/// Smallest monomial in the support of `f` under `order`.
pub fn leading_monomial(
    a: &QuotientAlgebra,
    f: &RingElement,
    order: &TermOrder,
) -> Result<ExponentVector> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| &a.basis()[i])
        .min_by(|x, y| order.cmp_unchecked(x, y))
        .cloned()
        .ok_or(Error::ZeroElement)
}

#[derive(Debug, Clone)]
pub struct GroebnerData {
    pub ideal: IdealSubspace,
    pub order: TermOrder,
    /// Echelon basis of the ideal over the ordered monomials; each element is
    /// paired with its leading monomial, and the leading monomials are
    /// pairwise distinct.
    pub reduced_basis: Vec<(ExponentVector, RingElement)>,
    pub initial: Staircase,
}

fn check_truncation(d: usize, leads: &[ExponentVector]) -> Result<()> {
    if leads.iter().any(|e| e.degree() == 0) {
        return Ok(());
    }
    for axis in 0..d {
        if !leads.iter().any(|e| e.pure_axis() == Some(axis)) {
            return Err(Error::TruncationTooShallow { axis: axis + 1 });
        }
    }
    Ok(())
}

pub fn initial_ideal(
    a: &QuotientAlgebra,
    ideal: &IdealSubspace,
    order: &TermOrder,
) -> Result<GroebnerData> {
    let n = a.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&i, &j| order.cmp_unchecked(&a.basis()[i], &a.basis()[j]));
    let field = *a.field();
    let mut echelon = EchelonBasis::new(field, n);
    for row in ideal.space().rows() {
        echelon.insert(perm.iter().map(|&j| row[j]).collect());
    }
    let permuted = echelon.into_subspace();
    let mut reduced_basis = Vec::with_capacity(permuted.dim());
    for (k, &piv) in permuted.pivots().iter().enumerate() {
        let mut coeffs = vec![0u32; n];
        for (pos, &c) in permuted.row(k).iter().enumerate() {
            coeffs[perm[pos]] = c;
        }
        reduced_basis.push((
            a.basis()[perm[piv]].clone(),
            RingElement::from_coeffs(coeffs),
        ));
    }
    let leads: Vec<ExponentVector> = reduced_basis.iter().map(|(e, _)| e.clone()).collect();
    check_truncation(a.num_vars(), &leads)?;
    let initial = Staircase::from_generators(
        a.num_vars(),
        leads
            .into_iter()
            .chain(a.modulus().generators().iter().cloned()),
    )?;
    Ok(GroebnerData {
        ideal: ideal.clone(),
        order: order.clone(),
        reduced_basis,
        initial,
    })
}

/// The sequences `d_n = dim V_n`, `e_n = dim V_n/W_n` and `dim W_n`.
///
/// Sequences start at `n = 0` and stop at the first layer with `V_n` equal
/// to the whole layer; every later layer is full with `e_n = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParamProfile {
    pub d: usize,
    pub d_seq: Vec<u64>,
    pub e_seq: Vec<u64>,
    pub w_dims: Vec<u64>,
    pub layer_dims: Vec<u64>,
}

impl ParamProfile {
    pub fn colength(&self) -> u64 {
        self.layer_dims
            .iter()
            .zip(&self.d_seq)
            .map(|(l, d)| l - d)
            .sum()
    }

    pub fn generator_sum(&self) -> u64 {
        self.e_seq.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.d_seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d_seq.is_empty()
    }

    /// `(d_n, e_n)` only, the key the counting bound depends on.
    pub fn key(&self) -> (Vec<u64>, Vec<u64>) {
        (self.d_seq.clone(), self.e_seq.clone())
    }
}

/// Per-layer data behind a [`ParamProfile`].
#[derive(Debug, Clone)]
pub struct LayerAnalysis {
    pub profile: ParamProfile,
    /// `V_n` in the coordinates of `monomials_of_degree(d, n)`.
    pub v: Vec<SubspaceFp>,
    /// `W_n`, same coordinates.
    pub w: Vec<SubspaceFp>,
    /// Whether each `x_i : V_n -> V_{n+1}` is injective for every `n`.
    pub phi_injective: bool,
}

struct Layer {
    monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
}

impl Layer {
    fn new(d: usize, n: u32) -> Self {
        let monomials = monomials_of_degree(d, n);
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Self { monomials, index }
    }

    fn shift(&self, next: &Layer, var: usize, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; next.monomials.len()];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                out[next.index[&self.monomials[j].bump(var)]] = c;
            }
        }
        out
    }
}

pub fn layer_analysis(a: &QuotientAlgebra, ideal: &IdealSubspace) -> Result<LayerAnalysis> {
    let d = a.num_vars();
    let field = *a.field();
    let leads: Vec<ExponentVector> = ideal
        .space()
        .pivots()
        .iter()
        .map(|&i| a.basis()[i].clone())
        .collect();
    check_truncation(d, &leads)?;
    // Degree-first ordering of the basis makes pivots of degree n exactly the
    // rows lying in R_n with a nonzero degree-n part.
    debug_assert!(a.basis().windows(2).all(|w| w[0].degree() <= w[1].degree()));

    let top = a.top_degree();
    let mut layers: Vec<Layer> = Vec::new();
    let mut v_spaces: Vec<SubspaceFp> = Vec::new();
    let mut w_spaces: Vec<SubspaceFp> = Vec::new();
    let mut phi_injective = true;
    let mut n = 0u32;
    loop {
        let layer = Layer::new(d, n);
        let ldim = layer.monomials.len();
        let v = if n >= top {
            SubspaceFp::full(ldim)
        } else {
            let mut b = EchelonBasis::new(field, ldim);
            for (k, &piv) in ideal.space().pivots().iter().enumerate() {
                if a.basis()[piv].degree() != n {
                    continue;
                }
                let row = ideal.space().row(k);
                let mut proj = vec![0u32; ldim];
                for (j, &c) in row.iter().enumerate() {
                    if c != 0 && a.basis()[j].degree() == n {
                        proj[layer.index[&a.basis()[j]]] = c;
                    }
                }
                b.insert(proj);
            }
            for (j, e) in layer.monomials.iter().enumerate() {
                if a.index_of(e).is_none() {
                    let mut unit = vec![0u32; ldim];
                    unit[j] = 1;
                    b.insert(unit);
                }
            }
            b.into_subspace()
        };
        let w = match (layers.last(), v_spaces.last()) {
            (Some(prev), Some(prev_v)) => {
                let mut b = EchelonBasis::new(field, ldim);
                for var in 0..d {
                    let mut img = EchelonBasis::new(field, ldim);
                    for r in prev_v.rows() {
                        let s = prev.shift(&layer, var, r);
                        img.insert(s.clone());
                        b.insert(s);
                    }
                    phi_injective &= img.dim() == prev_v.dim();
                }
                b.into_subspace()
            }
            _ => SubspaceFp::zero(ldim),
        };
        if !w.is_subspace_of(&field, &v) {
            return Err(Error::ProfileInconsistent(format!(
                "W_{n} is not inside V_{n}"
            )));
        }
        let full = v.dim() == ldim;
        layers.push(layer);
        v_spaces.push(v);
        w_spaces.push(w);
        if full {
            break;
        }
        n += 1;
    }
    let profile = ParamProfile {
        d,
        d_seq: v_spaces.iter().map(|s| s.dim() as u64).collect(),
        e_seq: v_spaces
            .iter()
            .zip(&w_spaces)
            .map(|(v, w)| (v.dim() - w.dim()) as u64)
            .collect(),
        w_dims: w_spaces.iter().map(|s| s.dim() as u64).collect(),
        layer_dims: (0..v_spaces.len() as u32)
            .map(|k| layer_dim(d, k))
            .collect(),
    };
    Ok(LayerAnalysis {
        profile,
        v: v_spaces,
        w: w_spaces,
        phi_injective,
    })
}

pub fn param_profile(a: &QuotientAlgebra, ideal: &IdealSubspace) -> Result<ParamProfile> {
    Ok(layer_analysis(a, ideal)?.profile)
}

/// In two variables: `dim W_{n+1} > dim V_n` whenever `V_n != 0`.
pub fn check_generator_growth(a: &QuotientAlgebra, ideal: &IdealSubspace) -> Result<bool> {
    if a.num_vars() != 2 {
        return Err(Error::InvalidArgument(
            "generator growth is a two-variable statement".into(),
        ));
    }
    let prof = param_profile(a, ideal)?;
    let last = prof.len() - 1;
    // Past the last stored layer V_n and W_{n+1} are full layers (n+1 < n+2).
    Ok((0..last).all(|n| prof.d_seq[n] == 0 || prof.w_dims[n + 1] > prof.d_seq[n]))
}

/// Checks that `d_seq` is an admissible two-variable layer sequence in the
/// trimmed form: `d_n <= n+1`, `d_{n+1} >= d_n + 1` once `d_n > 0`, and the
/// last entry is a full layer.
pub fn check_admissible(d_seq: &[u64]) -> Result<()> {
    let Some(&last) = d_seq.last() else {
        return Err(Error::InadmissibleSequence("empty sequence".into()));
    };
    if last != d_seq.len() as u64 {
        return Err(Error::InadmissibleSequence(
            "last layer must be full".into(),
        ));
    }
    for (n, &dn) in d_seq.iter().enumerate() {
        if dn > n as u64 + 1 {
            return Err(Error::InadmissibleSequence(format!(
                "d_{n} = {dn} exceeds {}",
                n + 1
            )));
        }
        if n + 1 < d_seq.len() && dn > 0 && d_seq[n + 1] < dn + 1 {
            return Err(Error::InadmissibleSequence(format!(
                "d_{} < d_{n} + 1",
                n + 1
            )));
        }
    }
    Ok(())
}

/// The monomial ideal spanned in degree `n` by `x^a y^(n-a)` for
/// `a < d_n`; in two variables it realises the sequence with
/// `e_n = d_n - d_{n-1} - 1` after the first nonzero layer.
pub fn realize_profile(d_seq: &[u64]) -> Result<Staircase> {
    check_admissible(d_seq)?;
    let gens = d_seq.iter().enumerate().flat_map(|(n, &dn)| {
        (0..dn as u32).map(move |a| ExponentVector::new(vec![a, n as u32 - a]))
    });
    Staircase::from_generators(2, gens)
}

/// Buckets ideals by their initial staircase.
pub fn stratify(
    a: &QuotientAlgebra,
    ideals: &[IdealSubspace],
    order: &TermOrder,
) -> Result<BTreeMap<Staircase, CountValue>> {
    let stairs: Vec<Staircase> = ideals
        .par_iter()
        .map(|i| initial_ideal(a, i, order).map(|g| g.initial))
        .collect::<Result<_>>()?;
    Ok(tally(stairs, a.p()))
}

/// Buckets ideals by their `(d_n, e_n)` profile.
pub fn stratify_by_profile(
    a: &QuotientAlgebra,
    ideals: &[IdealSubspace],
) -> Result<BTreeMap<ParamProfile, CountValue>> {
    let profiles: Vec<ParamProfile> = ideals
        .par_iter()
        .map(|i| param_profile(a, i))
        .collect::<Result<_>>()?;
    Ok(tally(profiles, a.p()))
}

fn tally<K: Ord>(keys: Vec<K>, p: u32) -> BTreeMap<K, CountValue> {
    let mut raw: BTreeMap<K, u64> = BTreeMap::new();
    for k in keys {
        *raw.entry(k).or_default() += 1;
    }
    raw.into_iter()
        .map(|(k, c)| (k, CountValue::from_u64(c, p)))
        .collect()
}
