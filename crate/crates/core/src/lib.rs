//! Exact computations for dimension-2 AS-regular algebras S = k⟨x,y⟩/(f)
//! under finite cyclic group actions: homological determinants, invariant
//! rings, skew group algebras and their ampleness quotient, Beilinson
//! algebras, and the quivers that present them.

pub mod action;
pub mod algebra;
pub mod beilinson;
pub mod checks;
pub mod error;
pub mod linalg;
pub mod quiver;
pub mod scalar;
pub mod skew;

pub use action::{CyclicGroupAction, GradedAutomorphism, TableRow};
pub use algebra::{AlgebraElement, AlgebraSpec, Family, Monomial, NcAlgebra};
pub use beilinson::{BeilinsonAlgebra, SkewBeilinson};
pub use error::{Error, Result};
pub use quiver::{Quiver, Tag, Vertex};
pub use scalar::{Cyclotomic, Rational};
pub use skew::{SkewElement, SkewGroupAlgebra};
