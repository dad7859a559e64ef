//! Exact multivariate polynomials and ideals over `F_p`, `Q` and `Z`.

pub mod coeff;
pub mod ideal;
pub mod lift;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use coeff::{fmt_rational, Coeff, Domain, FieldCoeff, Fp, Prime};
pub use ideal::{Ideal, MultiIdeal};
pub use monomial::Monomial;
pub use poly::Polynomial;

pub type FpPoly = Polynomial<Fp>;
pub type QPoly = Polynomial<num_rational::BigRational>;
pub type ZPoly = Polynomial<num_bigint::BigInt>;

/// `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}
