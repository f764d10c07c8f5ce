//! Exact computation of radical and socle rank invariants for modules over
//! truncated polynomial algebras `k[x_1,...,x_n]/(x_i^p)` restricted to
//! rank-`r` shifted subalgebras parametrized by the Grassmannian.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`], [`mat`] — exact arithmetic over `F_{p^m}` and dense linear
//!   algebra (rank, rref, nullspace, intersections).
//! * [`grass`], [`plucker`] — plane enumeration over finite fields, canonical
//!   forms, Plücker coordinates, and the straightening normal form in the
//!   homogeneous coordinate ring of the Grassmannian.
//! * [`modrep`] — modules over `kE`: restriction along planes, radical and
//!   socle filtrations, Jordan types, duals, tensor products, Heller shifts.
//! * [`zoo`], [`coh`] — constructors for the module families under study
//!   (truncated subquotients, quantum complete intersections, syzygies
//!   `Ω^m(k)`, Carlson modules `L_ζ`) and cohomology classes.
//! * [`support`] — exhaustive and sampled value sweeps over Grassmannian
//!   points, rank varieties, constancy evidence, ideal matching.
//! * [`bundle`] — the global degree-one operator over the Plücker ring,
//!   kernel generator search, and specialization rank sweeps.

pub mod bundle;
pub mod coh;
pub mod field;
pub mod fixtures;
pub mod grass;
pub mod mat;
pub mod modrep;
pub mod plucker;
pub mod support;
pub mod zoo;

pub use field::{FqElem, FqField};
pub use mat::Mat;
