//! Finitely presented functors on finitely presented abelian groups.
//!
//! A functor is stored as a presentation morphism `alpha: A -> B`; it is the
//! cokernel of `Hom(B, -) -> Hom(A, -)`. On top of exact integer linear
//! algebra the crate computes defects, Grothendieck-group classes, Hilbert
//! functions and the vanishing locus of a functor in the Ziegler spectrum of
//! the integers.

pub mod arith;
pub mod linalg;
pub mod fpmod;
pub mod functor;
pub mod invariants;
pub mod ziegler;
pub mod cli;

pub use arith::{factorize, gcd, Integer, Prime};
pub use fpmod::{hom_module, induced_hom, pushout, FpModule, HomModule, ModuleMorphism, StructureInvariants};
pub use functor::{FpFunctor, FunctorJson, NatTrans, QuotientFunctor};
pub use invariants::{hilbert_direct, hilbert_polynomial, hilbert_value, lmc, rank, rmc, HilbertData, HilbertPolynomial, K0Class};
pub use linalg::{IntMatrix, SmithDecomposition};
pub use ziegler::{serre_member, vanishing_locus, ClosedSet, FDefault, NSet, PrimeSet, VanishingLocus, ZieglerPoint};
