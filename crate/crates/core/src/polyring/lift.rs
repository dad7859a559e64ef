//! Reduction modulo p and canonical coefficient-wise lifting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coeff::{fmt_rational, Coeff, FieldCoeff, Fp, Prime};
use super::ideal::Ideal;
use super::poly::Polynomial;
use crate::error::{Error, Result};

pub fn reduce_mod_p(f: &Polynomial<BigInt>, p: u64) -> Result<Polynomial<Fp>> {
    let prime = Prime::new(p)?;
    Ok(f.map_coeffs(&prime, |c| Fp::from_bigint(&prime, c)))
}

/// Reduces a polynomial with p-integral rational coefficients.
pub fn reduce_rational_mod_p(f: &Polynomial<BigRational>, p: u64) -> Result<Polynomial<Fp>> {
    let prime = Prime::new(p)?;
    if let Some((_, c)) = f.terms().iter().find(|(_, c)| Fp::from_bigint(&prime, c.denom()).is_zero()) {
        return Err(Error::NotPIntegral(fmt_rational(c)));
    }
    Ok(f.map_coeffs(&prime, |c| Fp::from_rational(&prime, c).expect("p-integral")))
}

/// Lifts each residue `a` in `0..p` to the integer `a`; the support is unchanged.
pub fn lift_coefficientwise(f: &Polynomial<Fp>) -> Polynomial<BigInt> {
    f.map_coeffs(&(), |c| BigInt::from(c.residue()))
}

pub fn to_rational(f: &Polynomial<BigInt>) -> Polynomial<BigRational> {
    f.map_coeffs(&(), |c| BigRational::from_integer(c.clone()))
}

/// Canonical lift viewed over `Q`.
pub fn lift_to_rational(f: &Polynomial<Fp>) -> Polynomial<BigRational> {
    to_rational(&lift_coefficientwise(f))
}

/// Integer value of a residue under the canonical lift.
pub fn lift_scalar(c: &Fp) -> BigRational {
    BigRational::from_integer(BigInt::from(c.residue()))
}

/// Generator-wise canonical lift.
pub fn lift_ideal(a: &Ideal<Fp>) -> Result<Ideal<BigInt>> {
    a.map_gens(&(), lift_coefficientwise)
}

pub fn lift_ideal_to_rational(a: &Ideal<Fp>) -> Result<Ideal<BigRational>> {
    a.map_gens(&(), lift_to_rational)
}

pub fn ideal_to_rational(a: &Ideal<BigInt>) -> Result<Ideal<BigRational>> {
    a.map_gens(&(), to_rational)
}

pub fn reduce_ideal_mod_p(a: &Ideal<BigInt>, p: u64) -> Result<Ideal<Fp>> {
    let prime = Prime::new(p)?;
    let gens = a.gens().iter().map(|g| reduce_mod_p(g, p)).collect::<Result<Vec<_>>>()?;
    Ideal::new(&prime, a.nvars(), gens)
}

/// Whether the rational `q` is p-integral.
pub fn is_p_integral(q: &BigRational, p: u64) -> bool {
    !Zero::is_zero(&(q.denom() % BigInt::from(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse::parse_poly;

    fn zpoly(s: &str, n: usize) -> Polynomial<BigInt> {
        let q = parse_poly(s, &crate::polyring::default_names(n)).unwrap();
        q.map_coeffs(&(), |c| {
            assert!(c.is_integer());
            c.to_integer()
        })
    }

    #[test]
    fn reduction_examples() {
        let f = zpoly("x1^2 + 5*x1 + 7", 1);
        assert_eq!(reduce_mod_p(&f, 5).unwrap().to_string(), "x1^2 + 2");
        let z = Polynomial::<BigInt>::zero(&(), 1);
        assert!(reduce_mod_p(&z, 5).unwrap().is_zero());
        assert!(reduce_mod_p(&zpoly("5*x1 + 10", 1), 5).unwrap().is_zero());
        assert_eq!(reduce_mod_p(&f, 6), Err(Error::NonPrimeModulus(6)));
    }

    #[test]
    fn lift_examples() {
        let p = Prime::new(5).unwrap();
        let f = Polynomial::var(&p, 1, 0).scale(&Fp::new(&p, 2)).add(&Polynomial::constant(&p, 1, Fp::new(&p, 3)));
        let g = lift_coefficientwise(&f);
        assert_eq!(g.to_string(), "2*x1 + 3");
        assert_eq!(reduce_mod_p(&g, 5).unwrap(), f);
        let a = Ideal::new(&p, 2, vec![Polynomial::var(&p, 2, 0).pow(2).sub(&Polynomial::var(&p, 2, 1))]).unwrap();
        let la = lift_ideal(&a).unwrap();
        assert_eq!(la.gens()[0].to_string(), "x1^2 + 4*x2");
    }

    #[test]
    fn rational_reduction_requires_p_integrality() {
        let f = parse_poly("x1/5 + 1", &crate::polyring::default_names(1)).unwrap();
        assert!(matches!(reduce_rational_mod_p(&f, 5), Err(Error::NotPIntegral(_))));
        let g = parse_poly("x1/2 + 1", &crate::polyring::default_names(1)).unwrap();
        assert_eq!(reduce_rational_mod_p(&g, 5).unwrap().to_string(), "3*x1 + 1");
        assert!(is_p_integral(&BigRational::new(1.into(), 2.into()), 5));
        assert!(!is_p_integral(&BigRational::new(1.into(), 10.into()), 5));
    }
}
