//! Exact symbolic kernel for rational Cherednik algebras.
//!
//! The crate builds complex reflection groups (dihedral and wreath-product
//! families) with exact cyclotomic matrix entries, realizes the deformed
//! skew product algebra attached to such a group in PBW normal form over
//! a field of rational functions in the deformation parameters, and offers
//! the higher-level constructions on top of it:
//!
//! * the invariant subalgebras generated by quadratic `x.y` elements, in
//!   both their general-linear and orthogonal flavours, with presentation
//!   checks and normal forms,
//! * centres of the group algebra and of the invariant subalgebras,
//!   computed by exact linear algebra on filtration slices,
//! * a faithful polynomial representation through divided-difference
//!   operators, used as an independent cross-check on the product,
//! * quantum Hamiltonian reduction of the general-linear invariant
//!   subalgebra at a central character, with graded dimension counts
//!   matched against commutative models.
//!
//! All computation is exact: scalars are quotients of polynomials in the
//! deformation parameters with cyclotomic number coefficients. Nothing is
//! floating point, and every advertised identity is checked to be exactly
//! zero.
//!
//! The `rca` binary exposes the main entry points as subcommands that emit
//! JSON reports; the `examples/` directory demonstrates each capability as
//! a library call.

pub mod centre;
pub mod cyclotomic;
pub mod dunkl;
pub mod error;
pub mod group;
pub mod group_algebra;
pub mod linalg;
pub mod pbw;
pub mod scalar;
pub mod subalgebra;

pub use error::{Error, Result};
