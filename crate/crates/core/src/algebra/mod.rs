//! Exact polynomial arithmetic over ℚ and finitely presented commutative algebras.

mod error;
mod fp;
mod groebner;
mod iso;
pub mod linalg;
mod parse;
mod poly;
mod structure;
pub mod univariate;

pub use error::AlgebraError;
pub use fp::{
    direct_product, finite_dim_basis, hom_check, tensor_coproduct, tensor_with_names, AlgMorphism, Coproduct,
    DirectProduct, FiniteBasis, FpAlgebra, Ideal, Staircase,
};
pub use groebner::{groebner_basis, Division, GroebnerBasis};
pub use iso::{eliminate_linear_generators, try_inverse, Simplified};
pub use parse::{parse_polynomial, poly, PolyParseError};
pub use poly::{format_rational, rat, ratio, same_vars, vars, Monomial, MonomialOrder, Polynomial, Rational, Vars};
pub use structure::{
    bounded_idempotents, hom_scheme, homs, idempotents, is_weil, points, standard_monomials_up_to, weil_point,
    HomScheme, IdempotentCertificate, PointSet,
};
pub use univariate::{FactorError, UniPoly};

/// `f ∈ I`, decided by normal form.
pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> bool {
    ideal.contains(f)
}
