//! Which charts may host a new center.
//!
//! A chart created at step `s` is an open piece of the model after step `s`.
//! Later blow-ups replace the parts of it lying over their centers, so a new
//! center named in that chart must stay away from those centers. The check
//! walks the chart and its ancestors; for each later step that could touch the
//! chart it expresses the older center in the new center's coordinates and
//! tests that the two are disjoint (unit ideal after saturation).

use super::{CenterSpec, ChartId, Tower};
use crate::error::{Error, Result};
use crate::gb::{groebner_basis, is_unit_basis};
use crate::polyring::{FieldCoeff, Polynomial};

/// Polynomial system in the free coordinates of the new center's chart plus
/// auxiliary coordinates introduced by rational chart transitions.
struct System<C: FieldCoeff> {
    ctx: C::Ctx,
    cap: usize,
    next: usize,
    eqs: Vec<Polynomial<C>>,
    sat: Polynomial<C>,
}

impl<C: FieldCoeff> System<C> {
    fn new(ctx: &C::Ctx, n: usize, cap: usize) -> Self {
        System { ctx: ctx.clone(), cap, next: n, eqs: Vec::new(), sat: Polynomial::one(ctx, cap) }
    }

    fn var(&self, i: usize) -> Polynomial<C> {
        Polynomial::var(&self.ctx, self.cap, i)
    }

    fn constant(&self, c: &C) -> Polynomial<C> {
        Polynomial::constant(&self.ctx, self.cap, c.clone())
    }

    fn fresh(&mut self) -> Polynomial<C> {
        let v = self.var(self.next);
        self.next += 1;
        v
    }

    /// True when the system has no solution with `sat != 0`.
    fn has_no_solution(mut self, budget: usize) -> Result<bool> {
        if !self.sat.is_constant() {
            let t = self.fresh();
            let one = Polynomial::one(&self.ctx, self.cap);
            self.eqs.push(t.mul(&self.sat).sub(&one));
        }
        let eqs: Vec<Polynomial<C>> = self.eqs.into_iter().filter(|e| !e.is_zero()).collect();
        if eqs.iter().any(|e| e.is_constant()) {
            return Ok(true);
        }
        if eqs.is_empty() {
            return Ok(false);
        }
        let used: Vec<usize> = (0..self.cap).filter(|&i| eqs.iter().any(|e| e.uses_var(i))).collect();
        let mut map = vec![0usize; self.cap];
        for (k, &i) in used.iter().enumerate() {
            map[i] = k;
        }
        let compact: Vec<Polynomial<C>> = eqs.iter().map(|e| e.remap_vars(used.len(), &map)).collect();
        Ok(is_unit_basis(&groebner_basis(&compact, budget)?))
    }
}

impl<C: FieldCoeff> Tower<C> {
    /// Fails with `StaleChart` when `z` meets a center blown up after its chart
    /// (or one of the chart's ancestors) was created.
    pub fn check_center(&self, z: &CenterSpec<C>) -> Result<()> {
        self.chart(z.chart)?;
        let mut cur = z.chart;
        let mut hi = self.steps.len() as isize - 1;
        loop {
            let link = self.charts[cur].link.clone();
            let lo = link.as_ref().map_or(0, |l| l.step as isize + 1);
            for t in lo..=hi {
                if !self.disjoint_from_step(z, cur, t as usize)? {
                    return Err(Error::StaleChart { chart: z.chart, step: t as usize + 1 });
                }
            }
            match link {
                Some(l) => {
                    hi = l.step as isize - 1;
                    cur = l.parent;
                }
                None => return Ok(()),
            }
        }
    }

    fn parent(&self, c: ChartId) -> ChartId {
        self.charts[c].link.as_ref().expect("non-root").parent
    }

    /// Child of `anc` on the path down to `c` (`anc` a strict ancestor of `c`).
    fn child_towards(&self, anc: ChartId, c: ChartId) -> ChartId {
        let mut x = c;
        while self.parent(x) != anc {
            x = self.parent(x);
        }
        x
    }

    fn lca(&self, a: ChartId, b: ChartId) -> ChartId {
        let pa = self.path(a);
        let mut x = b;
        loop {
            if pa.contains(&x) {
                return x;
            }
            x = self.parent(x);
        }
    }

    /// Coordinates of the parent of chart `x`, given coordinates `cur` of `x`.
    fn descend(&self, x: ChartId, cur: &[Polynomial<C>]) -> Vec<Polynomial<C>> {
        self.hop_map(x).expect("non-root").iter().map(|h| h.substitute(cur)).collect()
    }

    /// Coordinates of child chart `y`, given coordinates `cur` of its parent.
    fn ascend(&self, sys: &mut System<C>, y: ChartId, cur: &[Polynomial<C>]) -> Vec<Polynomial<C>> {
        let link = self.charts[y].link.as_ref().expect("non-root");
        let center = &self.steps[link.step].center;
        let l = link.pivot;
        let ql = cur[l].sub(&sys.constant(center.constant(l).unwrap()));
        let mut out = cur.to_vec();
        for (j, c) in &center.constraints {
            if *j == l {
                continue;
            }
            let g = sys.fresh();
            sys.eqs.push(cur[*j].sub(&sys.constant(c)).sub(&ql.mul(&g)));
            out[*j] = g;
        }
        sys.sat = sys.sat.mul(&ql);
        out[l] = ql;
        out
    }

    /// Coordinates in the sibling chart `b`, given coordinates `cur` of chart `a`.
    fn sibling(&self, sys: &mut System<C>, a: ChartId, b: ChartId, cur: &[Polynomial<C>]) -> Vec<Polynomial<C>> {
        let la = self.charts[a].link.as_ref().unwrap();
        let lb = self.charts[b].link.as_ref().unwrap();
        let center = &self.steps[la.step].center;
        let (pa, pb) = (la.pivot, lb.pivot);
        let ub = cur[pb].clone();
        let mut out = cur.to_vec();
        out[pb] = cur[pa].mul(&ub);
        for j in center.vars() {
            if j == pb {
                continue;
            }
            let g = sys.fresh();
            let num = if j == pa { Polynomial::one(&sys.ctx, sys.cap) } else { cur[j].clone() };
            sys.eqs.push(g.mul(&ub).sub(&num));
            out[j] = g;
        }
        sys.sat = sys.sat.mul(&ub);
        out
    }

    /// Whether `z` (in its chart) avoids the image in chart `a` of the center of
    /// step `t`; `a` is `z.chart` or one of its ancestors.
    fn disjoint_from_step(&self, z: &CenterSpec<C>, a: ChartId, t: usize) -> Result<bool> {
        let zt = &self.steps[t].center;
        let d = zt.chart;
        if d != a && self.is_ancestor_or_self(a, d) {
            // Already covered by the step that created the branch below `a`.
            return Ok(true);
        }
        let n = self.n;
        let cap = n + n * (2 * self.charts.len() + 2) + 1;
        let mut sys = System::new(&self.ctx, n, cap);
        let mut cur: Vec<Polynomial<C>> = (0..n)
            .map(|j| match z.constant(j) {
                Some(c) => sys.constant(c),
                None => sys.var(j),
            })
            .collect();
        let mut x = z.chart;
        while x != a {
            cur = self.descend(x, &cur);
            x = self.parent(x);
        }
        if self.is_ancestor_or_self(d, a) {
            while x != d {
                cur = self.descend(x, &cur);
                x = self.parent(x);
            }
        } else {
            let l = self.lca(a, d);
            let a1 = self.child_towards(l, a);
            let d1 = self.child_towards(l, d);
            while x != a1 {
                cur = self.descend(x, &cur);
                x = self.parent(x);
            }
            let (sa, sd) = (self.charts[a1].link.as_ref().unwrap().step, self.charts[d1].link.as_ref().unwrap().step);
            if sa == sd {
                cur = self.sibling(&mut sys, a1, d1, &cur);
            } else {
                // Points on the exceptional divisor of `a1` lie over a center
                // that the later branch had to avoid.
                let pivot = self.charts[a1].link.as_ref().unwrap().pivot;
                sys.sat = sys.sat.mul(&cur[pivot]);
                cur = self.descend(a1, &cur);
                cur = self.ascend(&mut sys, d1, &cur);
            }
            let path = self.path(d);
            let from = path.iter().position(|&y| y == d1).unwrap();
            for &y in &path[from + 1..] {
                cur = self.ascend(&mut sys, y, &cur);
            }
        }
        for (j, c) in &zt.constraints {
            let e = cur[*j].sub(&sys.constant(c));
            sys.eqs.push(e);
        }
        sys.has_no_solution(self.budget)
    }

    /// The same center described in a sibling chart of the same step, when it
    /// is visible there as a coordinate subspace (requires the sibling's pivot
    /// coordinate to be fixed to a nonzero constant).
    pub fn sibling_center(&self, z: &CenterSpec<C>, target: ChartId) -> Option<CenterSpec<C>> {
        let la = self.charts.get(z.chart)?.link.as_ref()?;
        let lb = self.charts.get(target)?.link.as_ref()?;
        if la.step != lb.step || z.chart == target {
            return None;
        }
        let s = &self.steps[la.step].center;
        let (pa, pb) = (la.pivot, lb.pivot);
        let cb = z.constant(pb)?;
        if cb.is_zero() {
            return None;
        }
        let inv = cb.inv();
        let mut constraints = Vec::new();
        for (j, c) in &z.constraints {
            let mapped = if *j == pb {
                (pa, inv.clone())
            } else if *j == pa {
                (pb, c.mul(cb))
            } else if s.constant(*j).is_some() {
                (*j, c.mul(&inv))
            } else {
                (*j, c.clone())
            };
            constraints.push(mapped);
        }
        CenterSpec::new(target, constraints).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Fp, Prime};

    fn pt(p: &Prime, chart: ChartId, c: &[u64]) -> CenterSpec<Fp> {
        CenterSpec::point(chart, c.iter().map(|&v| Fp::new(p, v)).collect())
    }

    fn origin(p: &Prime) -> Tower<Fp> {
        Tower::new(2, p).unwrap().blow_up(CenterSpec::origin(p, 0, 2)).unwrap().0
    }

    #[test]
    fn base_chart_goes_stale_at_the_origin() {
        let p = Prime::new(5).unwrap();
        let t = origin(&p);
        assert_eq!(t.blow_up(pt(&p, 0, &[0, 0])).err(), Some(Error::StaleChart { chart: 0, step: 1 }));
        let (t, _) = t.blow_up(pt(&p, 0, &[1, 1])).unwrap();
        // (1,1) of chart 1 maps to (1,1) of the base
        assert_eq!(t.blow_up(pt(&p, 1, &[1, 1])).err(), Some(Error::StaleChart { chart: 1, step: 2 }));
        assert!(t.blow_up(pt(&p, 1, &[1, 2])).is_ok());
        // chart 3 point (4, 1) sits over the origin of the base
        assert_eq!(t.blow_up(pt(&p, 3, &[4, 1])).err(), Some(Error::StaleChart { chart: 3, step: 1 }));
    }

    #[test]
    fn sibling_charts_share_points() {
        let p = Prime::new(5).unwrap();
        let (t, _) = origin(&p).blow_up(pt(&p, 1, &[0, 1])).unwrap();
        // (0,1) in chart 1 is (1,0) in chart 2
        assert_eq!(t.blow_up(pt(&p, 2, &[1, 0])).err(), Some(Error::StaleChart { chart: 2, step: 2 }));
        assert!(t.blow_up(pt(&p, 2, &[2, 0])).is_ok());
        // the origin of chart 2 is not visible in chart 1
        assert!(t.blow_up(pt(&p, 2, &[0, 0])).is_ok());
    }

    #[test]
    fn subspace_centers_are_checked_too() {
        let p = Prime::new(5).unwrap();
        let t3 = Tower::<Fp>::new(3, &p).unwrap();
        let (t3, _) = t3.blow_up(CenterSpec::origin(&p, 0, 3)).unwrap();
        // the x3-axis of the base passes through the blown-up origin
        let axis = CenterSpec::new(0, vec![(0, Fp::new(&p, 0)), (1, Fp::new(&p, 0))]).unwrap();
        assert_eq!(t3.blow_up(axis).err(), Some(Error::StaleChart { chart: 0, step: 1 }));
        // the line {x1 = 1, x2 = 0} misses it
        let line = CenterSpec::new(0, vec![(0, Fp::new(&p, 1)), (1, Fp::new(&p, 0))]).unwrap();
        assert!(t3.blow_up(line).is_ok());
    }

    #[test]
    fn sibling_center_transport() {
        let p = Prime::new(5).unwrap();
        let t = origin(&p);
        let z = pt(&p, 1, &[0, 2]);
        let w = t.sibling_center(&z, 2).unwrap();
        // w2 = u1 u2 = 0, w1 = 1/u2 = 3
        assert_eq!(w, pt(&p, 2, &[3, 0]));
        assert!(t.sibling_center(&pt(&p, 1, &[0, 0]), 2).is_none());
        let (ta, ea) = t.blow_up(z).unwrap();
        let (tb, eb) = t.blow_up(w).unwrap();
        assert_eq!(ta.divisor(ea).unwrap().k, tb.divisor(eb).unwrap().k);
    }
}
