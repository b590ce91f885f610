//! Exact computational machinery for finite-group representation categories.
//!
//! Everything here is integer or rational arithmetic — no floating point
//! anywhere. The main pipeline:
//!
//! * [`cyclo`] — the cyclotomic field Q(zeta_e) in the power basis, plus
//!   exact matrices over it and modular helpers for the character-table
//!   algorithm.
//! * [`group`] — finite groups as multiplication tables, conjugacy classes,
//!   automorphisms, and group extensions with their factor sets.
//! * [`repcat`] — character tables (class-sum eigenvector analysis modulo a
//!   suitable prime, lifted exactly), matrix models of the irreducibles,
//!   tensor/dual/pullback operations, and intertwiner computations.
//! * [`descent`] — cocycle data for gluing representation categories over an
//!   index set: verification of the coherence identities, dual-space orbit
//!   structure, twist scalars, and the group-algebra-side comparison.
//! * [`affine`] — a finite commutative ring demo: hom enumeration, base
//!   change of presented modules, and the two-point algebra example.

pub mod affine;
pub mod cyclo;
pub mod descent;
pub mod group;
pub mod matrix;
pub mod modular;
pub mod rational;
pub mod repcat;

pub use affine::{
    base_change, modules_isomorphic, reconstruct_hom, ring_homs, two_point_example,
    FiniteCommRing, FunctorDatum, PresentedModule, RingHom, TwoPointReport,
};
pub use cyclo::CycloElement;
pub use descent::{
    compute_twist, dual_space, extension_cocycle, induce_plain, verify_gerbe_side,
    verify_twist_cocycle, CocycleDatum, DescentReport, DescentStatus, DualSpace,
    RefinedCocycleDatum, TwistClass,
};
pub use group::{Automorphism, ConjugacyClasses, FiniteGroup, GroupExtension};
pub use matrix::ExactMatrix;
pub use modular::ModularScalar;
pub use rational::Rational;
pub use repcat::{character_table, CharacterTable, MultiplicityVector, Representation};
