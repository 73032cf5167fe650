//! Function fields of conics `a x² + b y² = 1` over ℚ: splitting, points,
//! isomorphism, orderings and Witt-inequivalence certificates.

mod certificate;
mod field;
mod points;
mod witness;

pub use certificate::{
    verify_certificate, witt_distinguish, Certificate, CertificateInputs, Evidence,
    ObstructionRule, ObstructionWitness,
};
pub use field::{
    conic_isomorphic, orderings_extending, quaternion_splits_over_conic, splits, BaseField,
    ConicField, QuadElement,
};
pub use points::{
    find_rational_point, holzer_bound, parametrize, Coeffs, Parametrization, RationalPoint,
    MAX_SEARCH_PAIRS,
};
pub use witness::{weak_approx, witness_set, ApproxCondition, WitnessSet, WEAK_APPROX_SCAN};
