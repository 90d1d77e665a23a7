//! Exact classification of finite-fold coverings of solenoids.
//!
//! A solenoid of type `ϖ = (w₁, w₂, …)` is the inverse limit of circles under
//! `x ↦ x^{wₙ}`. This crate works entirely with finite, exact data:
//!
//! * [`typealg`] describes `ϖ` (eventually periodic, or known to a horizon),
//!   its supernatural number, and whether an integer is coprime to its tail.
//! * [`monodromy`] classifies an `r`-fold covering from its sheet
//!   permutation: components, their degrees, and the stage at which the
//!   decomposition settles.
//! * [`rationals`] computes the direct limit `Z →w₁ Z →w₂ ⋯` inside ℚ and
//!   exhibits that it is not finitely generated over `Z`, while its rational
//!   counterpart has rank one.
//! * [`oracle`] recounts components by brute force on the finite odometer
//!   model so every classifier answer can be cross-checked.

pub mod arith;
pub mod error;
pub mod monodromy;
pub mod oracle;
pub mod rationals;
pub mod typealg;

pub use arith::Factored;
pub use error::{Error, Result};
pub use monodromy::{
    classify, classify_from, connected_covering_exists, power, power_map_bijective, sigma_at_stage,
    sigma_from, stabilization_stage, Component, CoveringReport, Existence, Permutation, Stabilization,
};
pub use oracle::{
    component_limit, component_limit_from, conjugacy_orbit_check, orbit_count, tower_power_bijective,
    ComponentLimit, CountMethod, ProductSystem, StageGroup, ENUMERATION_BUDGET,
};
pub use rationals::{
    contains, first_stage_of, inject, limit_rank_over_q, non_fg_witness, span, Fraction, LimitElement,
    RationalCyclicSubgroup,
};
pub use typealg::{
    parse_type, supernatural_of, tail_coprime, types_equivalent, Exponent, SolenoidType, SupernaturalNumber,
    Verdict,
};
