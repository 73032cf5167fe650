//! Witt-equivalence invariants of function fields of conics over ℚ.
//!
//! The crate is organised bottom-up:
//!
//! * [`hyperfield`]: tabled multivalued-addition algebras, quotients, prime
//!   addition, morphisms, rigidity.
//! * [`localglobal`]: square classes, Hilbert symbols, quaternion
//!   ramification and the quadratic hyperfields of 𝔽_q, ℝ, ℚ_p and ℚ.
//! * [`conics`]: splitting, rational points, isomorphism of conic function
//!   fields and certificates of Witt inequivalence.
//! * [`quadfields`]: genus theory of quadratic fields.
//!
//! All arithmetic is exact.

pub mod arith;
pub mod conics;
pub mod error;
pub mod hyperfield;
pub mod localglobal;
pub mod quadfields;

pub use arith::{parse_rational, Rational};
pub use error::{Result, WittError};
pub use hyperfield::{FiniteHyperfield, Hyperfield, MorphismTable, SubgroupSelection};
pub use localglobal::{Place, RamificationSet, SquareClassQ};
