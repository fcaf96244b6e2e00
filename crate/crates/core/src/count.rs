//! Exact counts paired with their base-p logarithm.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// An exact non-negative count together with `log_p` of it.
///
/// `log_p` of zero is `-inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountValue {
    exact: BigUint,
    log_p: f64,
    p: u32,
}

/// Natural logarithm of a big unsigned integer, accurate to f64 precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl CountValue {
    pub fn new(exact: BigUint, p: u32) -> Self {
        let log_p = ln_biguint(&exact) / (p as f64).ln();
        Self { exact, log_p, p }
    }

    pub fn from_u64(n: u64, p: u32) -> Self {
        Self::new(BigUint::from(n), p)
    }

    pub fn one(p: u32) -> Self {
        Self::new(BigUint::one(), p)
    }

    pub fn zero(p: u32) -> Self {
        Self::new(BigUint::zero(), p)
    }

    /// `p^e`.
    pub fn p_power(p: u32, e: u64) -> Self {
        let exact = BigUint::from(p).pow(e as u32);
        Self {
            exact,
            log_p: e as f64,
            p,
        }
    }

    pub fn exact(&self) -> &BigUint {
        &self.exact
    }

    pub fn log_p(&self) -> f64 {
        self.log_p
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact.to_u64()
    }

    /// Product; the logarithms add.
    pub fn mul(&self, other: &CountValue) -> CountValue {
        debug_assert_eq!(self.p, other.p);
        CountValue {
            exact: &self.exact * &other.exact,
            log_p: self.log_p + other.log_p,
            p: self.p,
        }
    }

    /// Sum; the logarithm is recomputed from the exact value.
    pub fn add(&self, other: &CountValue) -> CountValue {
        debug_assert_eq!(self.p, other.p);
        CountValue::new(&self.exact + &other.exact, self.p)
    }

    /// Checks the stored logarithm against the exact value.
    pub fn log_consistent(&self) -> bool {
        let reference = ln_biguint(&self.exact) / (self.p as f64).ln();
        if reference.is_infinite() {
            return self.log_p == reference;
        }
        (self.log_p - reference).abs() <= 1e-9 * reference.abs().max(1.0)
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact)
    }
}

impl Serialize for CountValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CountValue", 2)?;
        st.serialize_field("exact", &self.exact.to_string())?;
        st.serialize_field("log_p", &self.log_p)?;
        st.end()
    }
}
