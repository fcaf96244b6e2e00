//! Lower-bound family, profile upper bound and the two-variable sequence
//! maximisation.

pub mod family;
pub mod sequence;
pub mod upper;

pub use family::{
    build_family_spec, family_census, family_exponent, instantiate_ideal, sampled_census,
    CensusReport, FamilyMember, PhiAssignment, PhiFamilySpec, DEFAULT_CENSUS_GUARD,
};
pub use sequence::{
    all_profiles, dp_max, exhaustive_max, printed_tail_ones_value, tail_ones_max, tail_ones_value,
    DpTable, SequenceProfile,
};
pub use upper::{audit_upper_bound, upper_bound_value, BucketCheck};
