//! Square classes, Hilbert symbols and quaternion ramification over ℚ and
//! its completions, plus the concrete quadratic hyperfields built from them.

mod finite_field;
mod gauss;
mod hilbert;
mod squares;
mod tables;

pub use finite_field::FiniteField;
pub use gauss::{gauss_valuation, gauss_valuation_ratio, local_level, PolyOverQ, Valuation};
pub use hilbert::{
    brute_force_represents, candidate_places, hilbert_symbol, hilbert_symbol_classes,
    hilbert_symbol_int, local_symbols, quaternion_ramification, ramification_of_classes,
    reciprocity_check, represents, represents_classes, RamificationSet, Scope,
};
pub use squares::{
    canonical_reps, least_nonresidue, padic_square_class, square_class, PadicSquareClass, Place,
    SquareClassQ,
};
pub use tables::{
    finite_field_hyperfield, finite_field_quadratic_hyperfield,
    finite_field_quadratic_hyperfield_with_bound, local_square_class_hyperfield, residue_embedding,
    LocalQuadraticHyperfield, RationalQuadraticHyperfield, ResidueEmbedding, DEFAULT_FIELD_BOUND,
};
