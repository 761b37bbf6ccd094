//! Exponents of primitive Boolean matrices, viewed through the digraphs
//! they are adjacency matrices of: girth, cycle lengths, walks that meet
//! every cycle length, closed-form exponent bounds, the chord families that
//! attain them, and a harness that checks the bounds against computation.

pub mod arithmetic;
pub mod error;
pub mod exponent;
pub mod families;
pub mod graph;
pub mod iso;
pub mod matrix;
pub mod verify;

pub use arithmetic::{frobenius, frobenius_of, gcd, GeneratorSet};
pub use error::{Error, Result};
pub use exponent::{c_walk_distances, exponent, walk_exists, CWalkResult, ExponentResult};
pub use families::FamilySpec;
pub use graph::{Cycle, CycleProfile, Digraph, LengthSet};
pub use iso::{are_isomorphic, canonical_form, CanonicalForm, Permutation};
pub use matrix::BoolMatrix;
