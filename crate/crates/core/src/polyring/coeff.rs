//! Coefficient domains: prime fields, the rationals and the integers.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for `F_p`; keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Runtime description of a coefficient domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    PrimeField(u64),
    Rationals,
    Integers,
}

impl Domain {
    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

impl Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::PrimeField(p) => write!(f, "F_{p}"),
            Domain::Rationals => f.write_str("Q"),
            Domain::Integers => f.write_str("Z"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p <= MAX_PRIME && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Exact coefficient ring. `Ctx` carries whatever runtime data the ring needs
/// (the modulus for `F_p`, nothing for `Q` and `Z`).
pub trait Coeff: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_bigint(ctx: &Self::Ctx, v: &BigInt) -> Self;
    fn domain(ctx: &Self::Ctx) -> Domain;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(v))
    }

    fn is_one(&self) -> bool;
}

/// Coefficient rings that are fields.
pub trait FieldCoeff: Coeff {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    /// Converts a rational literal; `None` when the denominator is not invertible.
    fn from_rational(ctx: &Self::Ctx, v: &BigRational) -> Option<Self>;

    /// Deterministic enumeration of candidate field elements for point searches:
    /// `0..p` over a prime field, `0, 1, -1, 2, -2, ...` up to `|c| <= bound` over `Q`.
    fn search_values(ctx: &Self::Ctx, bound: u64) -> Vec<Self>;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// Element of `F_p`, stored as its residue in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(ctx: &Prime, value: u64) -> Self {
        Fp { value: value % ctx.0, p: ctx.0 }
    }

    pub fn residue(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        Prime(self.p)
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self.value;
        let mut acc = 1u64 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Fp { value: acc, p: self.p }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Coeff for Fp {
    type Ctx = Prime;

    fn zero(ctx: &Prime) -> Self {
        Fp { value: 0, p: ctx.0 }
    }
    fn one(ctx: &Prime) -> Self {
        Fp { value: 1, p: ctx.0 }
    }
    fn from_bigint(ctx: &Prime, v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(ctx.0));
        Fp { value: r.to_u64().expect("residue fits"), p: ctx.0 }
    }
    fn domain(ctx: &Prime) -> Domain {
        Domain::PrimeField(ctx.0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let s = self.value + o.value;
        Fp { value: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let v = if self.value >= o.value { self.value - o.value } else { self.value + self.p - o.value };
        Fp { value: v, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Fp { value: self.value * o.value % self.p, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
}

impl FieldCoeff for Fp {
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_{}", self.p);
        self.pow(self.p - 2)
    }

    fn from_rational(ctx: &Prime, v: &BigRational) -> Option<Self> {
        let den = Fp::from_bigint(ctx, v.denom());
        if den.is_zero() {
            return None;
        }
        Some(Fp::from_bigint(ctx, v.numer()).mul(&den.inv()))
    }

    fn search_values(ctx: &Prime, _bound: u64) -> Vec<Self> {
        (0..ctx.0).map(|v| Fp { value: v, p: ctx.0 }).collect()
    }
}

impl Coeff for BigRational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigRational as One>::one()
    }
    fn from_bigint(_: &(), v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn domain(_: &()) -> Domain {
        Domain::Rationals
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero in Q");
        self.recip()
    }

    fn from_rational(_: &(), v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }

    fn search_values(_: &(), bound: u64) -> Vec<Self> {
        let mut out = vec![<BigRational as Zero>::zero()];
        for c in 1..=bound as i64 {
            out.push(BigRational::from_integer(c.into()));
            out.push(BigRational::from_integer((-c).into()));
        }
        out
    }
}

impl Coeff for BigInt {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        <BigInt as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigInt as One>::one()
    }
    fn from_bigint(_: &(), v: &BigInt) -> Self {
        v.clone()
    }
    fn domain(_: &()) -> Domain {
        Domain::Integers
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn fmt_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// p-adic valuation of a nonzero integer.
pub fn padic_val_int(n: &BigInt, p: u64) -> u32 {
    assert!(!Zero::is_zero(n));
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !Zero::is_zero(&r) {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn padic_val(q: &BigRational, p: u64) -> i64 {
    padic_val_int(q.numer(), p) as i64 - padic_val_int(q.denom(), p) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(101).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NonPrimeModulus(1)));
        assert_eq!(Prime::new(91), Err(Error::NonPrimeModulus(91)));
        assert!(Prime::new(MAX_PRIME).is_ok());
    }

    #[test]
    fn fp_field_axioms_small() {
        let p = Prime::new(7).unwrap();
        for a in 1..7 {
            let x = Fp::new(&p, a);
            assert!(x.mul(&x.inv()).is_one());
            assert!(x.add(&x.neg()).is_zero());
        }
        let half = Fp::from_rational(&p, &BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.residue(), 4);
        assert!(Fp::from_rational(&p, &BigRational::new(1.into(), 14.into())).is_none());
        assert_eq!(Fp::from_i64(&p, -1).residue(), 6);
    }

    #[test]
    fn padic_valuations() {
        let q = BigRational::new(50.into(), 3.into());
        assert_eq!(padic_val(&q, 5), 2);
        assert_eq!(padic_val(&q, 3), -1);
        assert_eq!(padic_val(&q, 7), 0);
    }

    #[test]
    fn rational_search_order() {
        let vals: Vec<String> = BigRational::search_values(&(), 2).iter().map(fmt_rational).collect();
        assert_eq!(vals, ["0/1", "1/1", "-1/1", "2/1", "-2/1"]);
    }
}
