use super::{ChartId, DivisorId, Tower};
use crate::error::{Error, Result};
use crate::polyring::{FieldCoeff, Ideal, Polynomial};

/// Weak transform of an ideal in one chart, with the exceptional exponent
/// removed at each step along the chart's path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakTransform<C: FieldCoeff> {
    pub chart: ChartId,
    pub gens: Vec<Polynomial<C>>,
    /// `(divisor, exponent)` in path order.
    pub removed: Vec<(DivisorId, u32)>,
}

impl<C: FieldCoeff> WeakTransform<C> {
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant())
    }
}

impl<C: FieldCoeff> Tower<C> {
    fn check_ring(&self, f: &Polynomial<C>) -> Result<()> {
        if f.nvars() != self.n || f.ctx() != &self.ctx {
            return Err(Error::RingMismatch(format!("{f} is not in the base ring of the tower")));
        }
        Ok(())
    }

    /// Pullback of a base polynomial to chart `c`.
    pub fn total_transform(&self, f: &Polynomial<C>, c: ChartId) -> Result<Polynomial<C>> {
        self.check_ring(f)?;
        self.chart(c)?;
        Ok(f.substitute(&self.total_map(c)))
    }

    /// `v_E(f)`: exponent of `E`'s coordinate in the total transform of `f` in
    /// `E`'s home chart.
    pub fn valuation_poly(&self, e: DivisorId, f: &Polynomial<C>) -> Result<u32> {
        let d = self.divisor(e)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.total_transform(f, d.home_chart)?;
        Ok(g.var_power_divisor(d.pivot))
    }

    /// `v_E(a)`: minimum over generators.
    pub fn valuation(&self, e: DivisorId, a: &Ideal<C>) -> Result<u32> {
        self.divisor(e)?;
        let mut best = u32::MAX;
        for g in a.gens() {
            best = best.min(self.valuation_poly(e, g)?);
        }
        Ok(best)
    }

    /// Local equation of (the proper transform of) `E` in chart `c`; the unit
    /// polynomial when `E` does not meet the chart.
    pub fn local_equation(&self, e: DivisorId, c: ChartId) -> Polynomial<C> {
        let step = e - 1;
        let path = self.path(c);
        let start = path
            .iter()
            .position(|&x| self.charts[x].link.as_ref().is_some_and(|l| l.step == step));
        let Some(start) = start else {
            return Polynomial::one(&self.ctx, self.n);
        };
        let pivot = self.charts[path[start]].link.as_ref().unwrap().pivot;
        let mut g = Polynomial::var(&self.ctx, self.n, pivot);
        for &y in &path[start + 1..] {
            let h = self.hop_map(y).expect("non-root");
            let l = self.charts[y].link.as_ref().unwrap().pivot;
            g = g.substitute(&h);
            let m = g.var_power_divisor(l);
            g = g.divide_by_var_power(l, m);
        }
        g
    }

    /// Weak transform of `a` into chart `c`: pull back one step at a time and
    /// divide by the largest power of the new exceptional coordinate dividing
    /// every generator.
    pub fn weak_transform(&self, a: &Ideal<C>, c: ChartId) -> Result<WeakTransform<C>> {
        for g in a.gens() {
            self.check_ring(g)?;
        }
        self.chart(c)?;
        let mut gens: Vec<Polynomial<C>> = a.gens().to_vec();
        let mut removed = Vec::new();
        for &y in self.path(c).iter().skip(1) {
            let h = self.hop_map(y).expect("non-root");
            let link = self.charts[y].link.as_ref().unwrap();
            gens = gens.iter().map(|g| g.substitute(&h)).collect();
            let m = gens.iter().map(|g| g.var_power_divisor(link.pivot)).min().unwrap_or(0);
            gens = gens.iter().map(|g| g.divide_by_var_power(link.pivot, m)).collect();
            removed.push((link.step + 1, m));
        }
        Ok(WeakTransform { chart: c, gens, removed })
    }
}

#[cfg(test)]
mod tests {
    use super::super::CenterSpec;
    use super::*;
    use crate::polyring::parse::parse_poly_in;
    use crate::polyring::{default_names, Fp, Prime};

    fn poly(p: &Prime, s: &str) -> Polynomial<Fp> {
        parse_poly_in(s, &default_names(2), p).unwrap()
    }

    fn ideal(p: &Prime, gens: &[&str]) -> Ideal<Fp> {
        Ideal::new(p, 2, gens.iter().map(|s| poly(p, s)).collect()).unwrap()
    }

    fn origin_tower(p: &Prime) -> Tower<Fp> {
        Tower::new(2, p).unwrap().blow_up(CenterSpec::origin(p, 0, 2)).unwrap().0
    }

    #[test]
    fn valuations_after_one_blowup() {
        let p = Prime::new(5).unwrap();
        let t = origin_tower(&p);
        assert_eq!(t.valuation(1, &ideal(&p, &["x1", "x2"])), Ok(1));
        assert_eq!(t.valuation(1, &ideal(&p, &["x1^2 + x2^3"])), Ok(2));
        assert_eq!(t.valuation(2, &ideal(&p, &["x1"])), Err(Error::UnknownDivisor(2)));
        assert_eq!(t.valuation_poly(1, &Polynomial::zero(&p, 2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn valuations_after_two_blowups() {
        let p = Prime::new(5).unwrap();
        let (t, e2) = origin_tower(&p).blow_up(CenterSpec::origin(&p, 1, 2)).unwrap();
        assert_eq!(t.valuation_poly(e2, &poly(&p, "x2")), Ok(2));
        assert_eq!(t.valuation_poly(e2, &poly(&p, "x1")), Ok(1));
        assert_eq!(t.valuation_poly(e2, &poly(&p, "x1^2 + x2^3")), Ok(2));
        let home = t.divisor(e2).unwrap().home_chart;
        assert_eq!(t.total_map(home), vec![poly(&p, "x1"), poly(&p, "x1^2*x2")]);
    }

    #[test]
    fn weak_transforms_in_first_chart() {
        let p = Prime::new(5).unwrap();
        let t = origin_tower(&p);
        let w = t.weak_transform(&ideal(&p, &["x1", "x2"]), 1).unwrap();
        assert_eq!(w.gens, vec![poly(&p, "1"), poly(&p, "x2")]);
        assert!(w.is_unit());
        assert_eq!(w.removed, vec![(1, 1)]);
        let w = t.weak_transform(&ideal(&p, &["x1^2", "x2^3"]), 1).unwrap();
        assert_eq!(w.gens, vec![poly(&p, "1"), poly(&p, "x1*x2^3")]);
        let w = t.weak_transform(&ideal(&p, &["x2"]), 1).unwrap();
        assert_eq!(w.gens, vec![poly(&p, "x2")]);
    }

    #[test]
    fn local_equations_follow_proper_transforms() {
        let p = Prime::new(5).unwrap();
        let (t, _) = origin_tower(&p).blow_up(CenterSpec::origin(&p, 1, 2)).unwrap();
        // charts 3 (pivot u1) and 4 (pivot u2) come from blowing up the origin of chart 1
        assert_eq!(t.local_equation(1, 1), poly(&p, "x1"));
        assert_eq!(t.local_equation(1, 3), poly(&p, "1"));
        assert_eq!(t.local_equation(1, 4), poly(&p, "x1"));
        assert_eq!(t.local_equation(2, 3), poly(&p, "x1"));
        assert_eq!(t.local_equation(2, 4), poly(&p, "x2"));
        assert_eq!(t.local_equation(2, 2), poly(&p, "1"));
    }
}
