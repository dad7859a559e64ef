use super::{CenterSpec, DivisorId, Tower};
use crate::error::{Error, Result};
use crate::polyring::{FieldCoeff, Ideal, Polynomial};

/// Over `Q`, candidate coordinates range over `0, 1, -1, ..., ±16`.
pub const DEFAULT_RATIONAL_SEARCH_BOUND: u64 = 16;

impl<C: FieldCoeff> Tower<C> {
    /// Weak transforms of base ideals in the home chart of `e`.
    pub fn weak_transform_loci(&self, e: DivisorId, ideals: &[Ideal<C>]) -> Result<Vec<Vec<Polynomial<C>>>> {
        let home = self.divisor(e)?.home_chart;
        ideals.iter().map(|a| Ok(self.weak_transform(a, home)?.gens)).collect()
    }

    /// First point of `E` in its home chart (pivot coordinate 0, the others
    /// enumerated lexicographically over the field's search values) that lies
    /// off every divisor in `avoid_divisors`, off every locus in `avoid_loci`
    /// (generator lists in home-chart coordinates) and in the live part of the
    /// chart.
    pub fn point_on_divisor_avoiding(
        &self,
        e: DivisorId,
        avoid_divisors: &[DivisorId],
        avoid_loci: &[Vec<Polynomial<C>>],
        bound: u64,
    ) -> Result<CenterSpec<C>> {
        let d = self.divisor(e)?.clone();
        for &a in avoid_divisors {
            self.divisor(a)?;
        }
        let eqs: Vec<Polynomial<C>> = avoid_divisors.iter().map(|&a| self.local_equation(a, d.home_chart)).collect();
        let values = C::search_values(&self.ctx, bound);
        let free: Vec<usize> = (0..self.n).filter(|&j| j != d.pivot).collect();
        let mut idx = vec![0usize; free.len()];
        let mut tried = 0usize;
        loop {
            let mut coords = vec![C::zero(&self.ctx); self.n];
            for (k, &j) in free.iter().enumerate() {
                coords[j] = values[idx[k]].clone();
            }
            tried += 1;
            let off_divisors = eqs.iter().all(|g| !g.eval(&coords).is_zero());
            let off_loci = avoid_loci.iter().all(|gens| gens.iter().any(|g| !g.eval(&coords).is_zero()));
            if off_divisors && off_loci {
                let z = CenterSpec::point(d.home_chart, coords);
                match self.check_center(&z) {
                    Ok(()) => return Ok(z),
                    Err(Error::StaleChart { .. }) => {}
                    Err(err) => return Err(err),
                }
            }
            // next tuple, last coordinate fastest
            let mut k = free.len();
            loop {
                if k == 0 {
                    return Err(Error::GeneralPointNotFound { divisor: e, tried });
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse::parse_poly_in;
    use crate::polyring::{default_names, Fp, Prime};

    fn poly(p: &Prime, s: &str) -> Polynomial<Fp> {
        parse_poly_in(s, &default_names(2), p).unwrap()
    }

    fn origin(p: &Prime) -> Tower<Fp> {
        Tower::new(2, p).unwrap().blow_up(CenterSpec::origin(p, 0, 2)).unwrap().0
    }

    #[test]
    fn unit_locus_excludes_nothing() {
        let p = Prime::new(5).unwrap();
        let t = origin(&p);
        let m = Ideal::maximal(&p, 2);
        let loci = t.weak_transform_loci(1, &[m]).unwrap();
        let z = t.point_on_divisor_avoiding(1, &[], &loci, 0).unwrap();
        assert_eq!(z, CenterSpec::origin(&p, 1, 2));
    }

    #[test]
    fn avoids_earlier_divisor() {
        let p = Prime::new(5).unwrap();
        let (t, e2) = origin(&p).blow_up(CenterSpec::origin(&p, 2, 2)).unwrap();
        // home chart of E2 is chart 3 (pivot u1); E1 is {u2 = 0} there
        assert_eq!(t.local_equation(1, 3), poly(&p, "x2"));
        let z = t.point_on_divisor_avoiding(e2, &[1], &[], 0).unwrap();
        assert_eq!(z, CenterSpec::point(3, vec![Fp::new(&p, 0), Fp::new(&p, 1)]));
    }

    #[test]
    fn exhaustion_over_f2() {
        let p = Prime::new(2).unwrap();
        let t = origin(&p);
        let a = Ideal::new(&p, 2, vec![poly(&p, "x2")]).unwrap();
        let b = Ideal::new(&p, 2, vec![poly(&p, "x1 + x2")]).unwrap();
        let loci = t.weak_transform_loci(1, &[a, b]).unwrap();
        assert_eq!(
            t.point_on_divisor_avoiding(1, &[], &loci, 0),
            Err(Error::GeneralPointNotFound { divisor: 1, tried: 2 })
        );
    }
}
