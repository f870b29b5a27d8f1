//! Exact computation of the multiplicity of the Steinberg module in the
//! irreducible `SL2(F_q)`-modules `L_k`.
//!
//! Three independent routes are provided:
//!
//! * [`brauer::dkq_general`] evaluates Brauer characters of `L_k` on the
//!   semisimple classes in exact cyclotomic arithmetic and averages them over
//!   the two tori.
//! * [`closed_forms::dkq_closed`] evaluates the explicit formulas known for
//!   `q` in `{2, 3, 4, 5, 7, 11}`.
//! * [`oracle::hom_dim_oracle`] builds the representations over an explicit
//!   `F_q` and solves the equivariance system by Gaussian elimination.
//!
//! [`asymptotics`] checks the contraction bounds behind the limit
//! `d_{k,q} / dim L_k -> gcd(2, q^2 - 1) / (q^2 - 1)`.

pub mod asymptotics;
pub mod brauer;
pub mod closed_forms;
pub mod cyclotomic;
pub mod digits;
mod error;
pub mod oracle;

pub use brauer::{
    dkq_general, psi_delta, psi_lk, psi_st, regular_classes, ClassKind, DimResult, Method,
    RegularClass,
};

pub use closed_forms::{dkq_closed, lucas_number};
pub use cyclotomic::{CycInt, CycRing};
pub use digits::{build_profile, dim_lk, expand_base, DigitProfile, PrimePower};
pub use error::{Error, Result};

pub use oracle::{brauer_char_oracle, conjugacy_class_audit, hom_dim_oracle, GuardConfig, OracleContext};
pub use asymptotics::{
    chebyshev_bound_check, contraction_constant, convergence_sweep, ratio_bound_check,
    AsymptoticReport, Contraction,
};
