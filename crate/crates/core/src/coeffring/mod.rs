//! Exact coefficient arithmetic: the scalar tower ℚ(i, √2) ⊂ ScalarExpr and
//! the nilpotent algebra D_n(ι) built on top of it.

mod dual;
mod field;
mod scalar;
mod signature;

pub use dual::{DualElement, Mask, MAX_GENERATORS};
pub use field::{rat, Qi2, Rational};
pub use scalar::{Mono, ScalarExpr, V_DEGREE_CAP};
pub use signature::{specialize_dual, specialize_q, Deformation, JSignature, Slot};
