use std::collections::HashMap;
use std::fmt;

use super::coeff::{Coeff, FieldCoeff};
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial in canonical form: terms sorted by strictly
/// decreasing monomial (grevlex), no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C: Coeff> {
    ctx: C::Ctx,
    nvars: usize,
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ctx: &C::Ctx, nvars: usize) -> Self {
        Polynomial { ctx: ctx.clone(), nvars, terms: Vec::new() }
    }

    pub fn one(ctx: &C::Ctx, nvars: usize) -> Self {
        Self::constant(ctx, nvars, C::one(ctx))
    }

    pub fn constant(ctx: &C::Ctx, nvars: usize, c: C) -> Self {
        Self::term(ctx, Monomial::one(nvars), c)
    }

    pub fn var(ctx: &C::Ctx, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::term(ctx, Monomial::var(nvars, i), C::one(ctx))
    }

    pub fn term(ctx: &C::Ctx, m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ctx: ctx.clone(), nvars, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ctx: &C::Ctx, nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ctx, nvars, acc)
    }

    fn from_map(ctx: &C::Ctx, nvars: usize, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ctx: ctx.clone(), nvars, terms }
    }

    /// Terms must already be strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted(ctx: &C::Ctx, nvars: usize, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ctx: ctx.clone(), nvars, terms }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, C)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms[0].1.is_one()
    }

    /// True when the polynomial is a single term.
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(&self.ctx),
        }
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.iter().map(|(m, _)| m.clone()).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Smallest total degree of a term; the order at the origin.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    /// Whether variable `i` occurs in some term.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.mul(c)))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        // Multiplying by a monomial preserves the order of terms.
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), a.mul(c)))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let conv = |c: &C| if negate_other { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    /// `self - c * m * g`, the basic reduction step.
    pub fn sub_mul_term(&self, c: &C, m: &Monomial, g: &Self) -> Self {
        self.sub(&g.mul_term(m, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        if other.is_term() {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.is_term() {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ctx, self.nvars, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ctx, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Composition: replaces variable `i` by `images[i]`. The result lives in the
    /// ring of the images.
    pub fn substitute(&self, images: &[Polynomial<C>]) -> Polynomial<C> {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target_n = images.first().map(|p| p.nvars).expect("at least one variable");
        let mut powers: Vec<Vec<Polynomial<C>>> =
            images.iter().map(|g| vec![Polynomial::one(&self.ctx, target_n), g.clone()]).collect();
        let mut acc = Polynomial::zero(&self.ctx, target_n);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.ctx, target_n, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point has wrong arity");
        let mut acc = C::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// `f(x + q)`.
    pub fn translate(&self, q: &[C]) -> Self {
        assert_eq!(q.len(), self.nvars, "point has wrong arity");
        if q.iter().all(|c| c.is_zero()) {
            return self.clone();
        }
        let images: Vec<Self> = (0..self.nvars)
            .map(|i| Self::var(&self.ctx, self.nvars, i).add(&Self::constant(&self.ctx, self.nvars, q[i].clone())))
            .collect();
        self.substitute(&images)
    }

    /// Order of vanishing at `q`: the lowest degree in the Taylor expansion at `q`.
    pub fn order_at_point(&self, q: &[C]) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.translate(q).min_degree().expect("nonzero"))
    }

    /// Largest `k` with `x_i^k` dividing the polynomial (0 for the zero polynomial).
    pub fn var_power_divisor(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    /// Exact division by `x_i^k`. Panics if `x_i^k` does not divide.
    pub fn divide_by_var_power(&self, i: usize, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert!(m.exp(i) >= k, "x{} ^ {k} does not divide", i + 1);
                (m.with_exp(i, m.exp(i) - k), c.clone())
            })
            .collect();
        // Dividing every term by the same monomial keeps the order.
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    /// Groups terms by the exponent of `x_i`: returns `(j, g_j)` with
    /// `f = sum_j x_i^j g_j`, `g_j` free of `x_i`, ascending in `j`.
    pub fn split_by_var(&self, i: usize) -> Vec<(u32, Self)> {
        let mut groups: std::collections::BTreeMap<u32, Vec<(Monomial, C)>> = Default::default();
        for (m, c) in &self.terms {
            groups.entry(m.exp(i)).or_default().push((m.with_exp(i, 0), c.clone()));
        }
        groups
            .into_iter()
            .map(|(j, ts)| (j, Self::from_terms(&self.ctx, self.nvars, ts)))
            .collect()
    }

    /// The same polynomial in a ring with `extra` more variables (appended last).
    pub fn extend_vars(&self, extra: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())).collect();
        Polynomial { ctx: self.ctx.clone(), nvars: self.nvars + extra, terms }
    }

    /// Renames variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; nvars];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::from_exps(exps), c.clone())
        });
        Self::from_terms(&self.ctx, nvars, terms)
    }

    /// Applies `f` to every coefficient, landing in another coefficient ring.
    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial { ctx: ctx.clone(), nvars: self.nvars, terms }
    }

    /// Renders with custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, C> {
        PolyDisplay { poly: self, names: Some(names) }
    }
}

impl<C: FieldCoeff> Polynomial<C> {
    /// Scales so the leading coefficient is 1. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }
}

pub struct PolyDisplay<'a, C: Coeff> {
    poly: &'a Polynomial<C>,
    names: Option<&'a [String]>,
}

impl<C: Coeff> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in p.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if m.is_one() || mag != "1" {
                factors.push(mag);
            }
            for i in m.support() {
                let name = match self.names {
                    Some(n) => n[i].clone(),
                    None => format!("x{}", i + 1),
                };
                let e = m.exp(i);
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, names: None }.fmt(f)
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff::{Fp, Prime};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qx(n: usize, i: usize) -> Polynomial<BigRational> {
        Polynomial::var(&(), n, i)
    }

    fn qc(n: usize, c: i64) -> Polynomial<BigRational> {
        Polynomial::constant(&(), n, q(c))
    }

    #[test]
    fn arithmetic_is_canonical() {
        let x = qx(2, 0);
        let y = qx(2, 1);
        let a = x.add(&y).mul(&x.sub(&y));
        let b = x.pow(2).sub(&y.pow(2));
        assert_eq!(a, b);
        assert!(a.sub(&b).is_zero());
        assert_eq!(a.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn order_at_points() {
        let x = qx(2, 0);
        let y = qx(2, 1);
        let f = x.pow(2).mul(&y).add(&x.pow(3));
        assert_eq!(f.order_at_point(&[q(0), q(0)]), Ok(3));
        assert_eq!(qc(2, 5).order_at_point(&[q(0), q(0)]), Ok(0));
        let g = x.pow(2).add(&y.pow(3));
        assert_eq!(g.order_at_point(&[q(1), q(0)]), Ok(0));
        assert_eq!(g.order_at_point(&[q(0), q(0)]), Ok(2));
        assert_eq!(Polynomial::<BigRational>::zero(&(), 2).order_at_point(&[q(0), q(0)]), Err(Error::ZeroPolynomial));
        // x^2 + y^3 - 1 vanishes at (1,0) to order 1
        assert_eq!(g.sub(&qc(2, 1)).order_at_point(&[q(1), q(0)]), Ok(1));
    }

    #[test]
    fn substitution_blowup_chart() {
        // x = u, y = u v: x^2 + y^3 -> u^2 (1 + u v^3)
        let u = qx(2, 0);
        let v = qx(2, 1);
        let f = u.pow(2).add(&v.pow(3));
        let g = f.substitute(&[u.clone(), u.mul(&v)]);
        assert_eq!(g.var_power_divisor(0), 2);
        let h = g.divide_by_var_power(0, 2);
        assert_eq!(h, qc(2, 1).add(&u.mul(&v.pow(3))));
    }

    #[test]
    fn fp_display_and_eval() {
        let p = Prime::new(5).unwrap();
        let x = Polynomial::<Fp>::var(&p, 2, 0);
        let c = Polynomial::constant(&p, 2, Fp::new(&p, 7));
        let f = x.pow(2).add(&c);
        assert_eq!(f.to_string(), "x1^2 + 2");
        assert_eq!(f.eval(&[Fp::new(&p, 1), Fp::new(&p, 0)]).residue(), 3);
    }

    #[test]
    fn split_and_remap() {
        let x = qx(2, 0);
        let y = qx(2, 1);
        let f = x.pow(2).mul(&y).add(&y).add(&qc(2, 3));
        let parts = f.split_by_var(1);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (0, qc(2, 3)));
        assert_eq!(parts[1], (1, x.pow(2).add(&qc(2, 1))));
        let g = f.remap_vars(3, &[2, 0]);
        assert_eq!(g.to_string(), "x1*x3^2 + x1 + 3");
        let z: Polynomial<BigInt> = Polynomial::var(&(), 2, 1);
        assert_eq!(z.extend_vars(1).nvars(), 3);
    }
}
