use num_rational::BigRational;
use num_traits::Signed;

use super::coeff::Coeff;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// A finitely generated ideal, stored as its (nonzero) generator list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ideal<C: Coeff> {
    ctx: C::Ctx,
    nvars: usize,
    gens: Vec<Polynomial<C>>,
}

impl<C: Coeff> Ideal<C> {
    /// Zero generators are dropped; an ideal with no nonzero generator is rejected.
    pub fn new(ctx: &C::Ctx, nvars: usize, gens: Vec<Polynomial<C>>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars || g.ctx() != ctx {
                return Err(Error::RingMismatch(format!("generator {g} is not in the ideal's ring")));
            }
        }
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(Ideal { ctx: ctx.clone(), nvars, gens })
    }

    /// Convenience constructor taking the ring from the first generator.
    pub fn from_gens(gens: Vec<Polynomial<C>>) -> Result<Self> {
        let first = gens.first().ok_or(Error::ZeroIdeal)?;
        let (ctx, n) = (first.ctx().clone(), first.nvars());
        Self::new(&ctx, n, gens)
    }

    /// `(x_1, ..., x_N)`.
    pub fn maximal(ctx: &C::Ctx, nvars: usize) -> Self {
        let gens = (0..nvars).map(|i| Polynomial::var(ctx, nvars, i)).collect();
        Ideal { ctx: ctx.clone(), nvars, gens }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_term())
    }

    /// Every generator vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term().is_zero())
    }

    /// Generators of the product ideal.
    pub fn product(&self, other: &Self) -> Self {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g));
            }
        }
        Ideal { ctx: self.ctx.clone(), nvars: self.nvars, gens }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Ideal { ctx: self.ctx.clone(), nvars: self.nvars, gens: vec![Polynomial::one(&self.ctx, self.nvars)] };
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    pub fn map_gens<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&Polynomial<C>) -> Polynomial<D>) -> Result<Ideal<D>> {
        Ideal::new(ctx, self.nvars, self.gens.iter().map(f).collect())
    }

    /// Same generators in a ring with `extra` more variables.
    pub fn extend_vars(&self, extra: usize) -> Self {
        let gens = self.gens.iter().map(|g| g.extend_vars(extra)).collect();
        Ideal { ctx: self.ctx.clone(), nvars: self.nvars + extra, gens }
    }
}

/// Formal product `a_1^{e_1} ... a_r^{e_r}` with positive rational exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiIdeal<C: Coeff> {
    ctx: C::Ctx,
    nvars: usize,
    factors: Vec<(Ideal<C>, BigRational)>,
}

impl<C: Coeff> MultiIdeal<C> {
    pub fn new(ctx: &C::Ctx, nvars: usize, factors: Vec<(Ideal<C>, BigRational)>) -> Result<Self> {
        for (a, e) in &factors {
            if a.nvars != nvars || &a.ctx != ctx {
                return Err(Error::RingMismatch("multi-ideal factors live in different rings".into()));
            }
            if !e.is_positive() {
                return Err(Error::Unsupported(format!("exponent {e} is not positive")));
            }
        }
        Ok(MultiIdeal { ctx: ctx.clone(), nvars, factors })
    }

    /// A single factor with exponent 1.
    pub fn single(a: Ideal<C>) -> Self {
        Self::with_exponent(a, BigRational::from_integer(1.into()))
    }

    pub fn with_exponent(a: Ideal<C>, e: BigRational) -> Self {
        assert!(e.is_positive(), "exponent must be positive");
        MultiIdeal { ctx: a.ctx.clone(), nvars: a.nvars, factors: vec![(a, e)] }
    }

    /// The empty product.
    pub fn trivial(ctx: &C::Ctx, nvars: usize) -> Self {
        MultiIdeal { ctx: ctx.clone(), nvars, factors: Vec::new() }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn factors(&self) -> &[(Ideal<C>, BigRational)] {
        &self.factors
    }

    pub fn ideals(&self) -> impl Iterator<Item = &Ideal<C>> {
        self.factors.iter().map(|(a, _)| a)
    }

    pub fn exponents(&self) -> Vec<BigRational> {
        self.factors.iter().map(|(_, e)| e.clone()).collect()
    }

    /// Same ideals, new exponents.
    pub fn with_exponents(&self, exps: &[BigRational]) -> Result<Self> {
        if exps.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), got: exps.len() });
        }
        let factors = self.factors.iter().zip(exps).map(|((a, _), e)| (a.clone(), e.clone())).collect();
        Self::new(&self.ctx, self.nvars, factors)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff::{Fp, Prime};

    #[test]
    fn zero_generators_are_rejected() {
        let p = Prime::new(5).unwrap();
        let z = Polynomial::<Fp>::zero(&p, 2);
        assert_eq!(Ideal::new(&p, 2, vec![z.clone()]), Err(Error::ZeroIdeal));
        assert_eq!(Ideal::<Fp>::new(&p, 2, vec![]), Err(Error::ZeroIdeal));
        let a = Ideal::new(&p, 2, vec![z, Polynomial::var(&p, 2, 0)]).unwrap();
        assert_eq!(a.gens().len(), 1);
    }

    #[test]
    fn products_and_powers() {
        let m = Ideal::<BigRational>::maximal(&(), 2);
        assert_eq!(m.pow(2).gens().len(), 4);
        assert!(m.is_monomial());
        assert!(m.vanishes_at_origin());
        assert_eq!(m.pow(0).gens()[0], Polynomial::one(&(), 2));
    }

    #[test]
    fn multi_ideal_exponents_must_be_positive() {
        let m = Ideal::<BigRational>::maximal(&(), 2);
        let bad = MultiIdeal::new(&(), 2, vec![(m.clone(), BigRational::from_integer(0.into()))]);
        assert!(matches!(bad, Err(Error::Unsupported(_))));
        let ok = MultiIdeal::single(m);
        assert!(matches!(
            ok.with_exponents(&[]),
            Err(Error::DimensionMismatch { expected: 1, got: 0 })
        ));
    }
}
