//! Counting finite-colength ideals of `F_p[[x_1, ..., x_d]]`, Lie ideals of
//! `sl_2(m)` and normal subgroups of `SL_2^1(m)`, together with the
//! combinatorial bounds that control their growth.
//!
//! Exact work happens over F_p with `u32` residues and `BigUint` counts; the
//! few real-valued quantities (bound constants, Hölder checks, exponent
//! fits) are generic over [`num_traits::Float`] with `f64` aliases below.

pub mod bounds;
pub mod count;
pub mod error;
pub mod field;
pub mod group;
pub mod initial;
pub mod monomial;
pub mod quotient;
pub mod reports;
pub mod sl2;
pub mod staircase;
pub mod subspace;

pub use count::CountValue;
pub use error::{Error, Result};
pub use field::{MatrixFp, PrimeField};
pub use group::{CongruenceGroup, GroupElement, GroupTable, Subgroup};
pub use initial::{GroebnerData, ParamProfile};
pub use monomial::{ExponentVector, TermOrder};
pub use quotient::{count_ideals, IdealSubspace, QuotientAlgebra, RingElement};
pub use reports::{DiscrepancyReport, Verdict};
pub use sl2::{LieIdeal, Sl2Algebra, Sl2Element};
pub use staircase::Staircase;
pub use subspace::SubspaceFp;

pub type BoundConstants64 = staircase::BoundConstants<f64>;
pub type HoelderReport64 = staircase::HoelderReport<f64>;
pub type FitResult64 = reports::FitResult<f64>;
