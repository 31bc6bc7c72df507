//! Presheaves on finite categories: limits, colimits, exponentials, the
//! adjoint string to sets, and the internal constructions built from them.

pub mod cohesion;
pub mod euler;
pub mod exponential;
pub mod family;
pub mod fixtures;
pub mod forcing;
pub mod hom;
pub mod monoid;
pub mod presheaf;
pub mod site;
pub mod units;

use thiserror::Error;

pub use cohesion::{check_precohesive_site, components, gate_counterexample, AdjointString, Components, Hyperconnection, SiteVerdict};
pub use euler::{euler_reals_presheaf, lie_kernel, prop1_check, prop1_converse, t_discrete_check, EulerReals, LieKernel, PointedPresheaf, Prop1Converse, Prop1Report};
pub use exponential::Exponential;
pub use forcing::{prop2_internal, InternalProp2Report};
pub use hom::{count_homs, find_iso, for_each_hom, homs, Budget};
pub use monoid::InternalMonoid;
pub use presheaf::{coequalizer, coproduct, equalizer, product, pullback, quotient_by, Coproduct, NatTrans, Presheaf, Product, Pullback, Quotient, Subpresheaf};
pub use site::{Arrow, FinCat};
pub use units::{units_and_bidirectional, UnitsReport};

/// Bound on enumeration steps unless configured otherwise.
pub const DEFAULT_MAX_ENUMERATION: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ToposError {
    #[error("enumeration exceeded the bound of {limit} steps")]
    SizeLimit { limit: u64 },
    #[error("invalid site: {0}")]
    InvalidSite(String),
    #[error("not functorial: {0}")]
    NotFunctorial(String),
    #[error("not natural: {0}")]
    NotNatural(String),
    #[error("not a sub-presheaf: {0}")]
    NotSubpresheaf(String),
    #[error("site is not pre-cohesive: {0}")]
    NotPreCohesiveSite(String),
    #[error("not a monoid: {0}")]
    NotMonoid(String),
    #[error("the site has no terminal object")]
    NoTerminal,
    #[error("presheaves live on different sites")]
    SiteMismatch,
}
