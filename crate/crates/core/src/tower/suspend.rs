use super::{CenterSpec, ChartId, Tower};
use crate::error::Result;
use crate::polyring::{FieldCoeff, Ideal};

impl<C: FieldCoeff> Tower<C> {
    /// Replays every center inside the hyperplane `x_{N+1} = 0` of `A^{N+1}`.
    /// Returns the new tower and the chart renumbering (old id -> new id).
    pub fn suspend_tower(&self) -> Result<(Tower<C>, Vec<ChartId>)> {
        let n = self.n;
        let mut t = Tower::<C>::new(n + 1, &self.ctx)?.with_budget(self.budget);
        let mut map: Vec<ChartId> = vec![0];
        for s in &self.steps {
            let mut constraints = s.center.constraints.clone();
            constraints.push((n, C::zero(&self.ctx)));
            t.push_blow_up(CenterSpec { chart: map[s.center.chart], constraints })?;
            let new_charts = &t.steps.last().unwrap().charts;
            // Pivots keep their order and the new coordinate comes last.
            map.extend(new_charts.iter().take(s.charts.len()));
        }
        Ok((t, map))
    }

    /// Suspension of a tower together with an ideal `a[x_{N+1}]`.
    pub fn suspend(&self, a: &Ideal<C>) -> Result<(Tower<C>, Ideal<C>)> {
        Ok((self.suspend_tower()?.0, a.extend_vars(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Fp, Prime};

    #[test]
    fn suspension_shifts_k_not_v() {
        let p = Prime::new(5).unwrap();
        let t = Tower::<Fp>::new(2, &p).unwrap().blow_up(CenterSpec::origin(&p, 0, 2)).unwrap().0;
        let m = Ideal::maximal(&p, 2);
        let (s, sm) = t.suspend(&m).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.divisor(1).unwrap().k, 2);
        assert_eq!(t.divisor(1).unwrap().k, 1);
        assert_eq!(s.valuation(1, &sm), Ok(1));
        assert_eq!(t.valuation(1, &m), Ok(1));

        let empty = Tower::<Fp>::new(2, &p).unwrap();
        let (se, map) = empty.suspend_tower().unwrap();
        assert!(se.is_empty());
        assert_eq!(map, vec![0]);
    }

    #[test]
    fn chart_map_tracks_pivots() {
        let p = Prime::new(5).unwrap();
        let t = Tower::<Fp>::new(2, &p).unwrap().blow_up(CenterSpec::origin(&p, 0, 2)).unwrap().0;
        let (t, _) = t.blow_up(CenterSpec::origin(&p, 2, 2)).unwrap();
        let (s, map) = t.suspend_tower().unwrap();
        // step 1 creates charts 1,2,3 (pivots x1, x2, x3); step 2 is centered in chart 2
        assert_eq!(map, vec![0, 1, 2, 4, 5]);
        assert_eq!(s.steps()[1].center.chart, 2);
    }
}
