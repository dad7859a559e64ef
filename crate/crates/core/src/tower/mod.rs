//! Towers of blow-ups of affine space along coordinate-subspace centers.
//!
//! Every chart is a copy of `A^N` with coordinates `u_1..u_N`. Chart 0 is the
//! base. Blowing up the center `{v_j = c_j, j in S}` of chart `P` creates one
//! chart per pivot `l in S`, in increasing order of `l`, with
//!
//! ```text
//! v_l = c_l + u_l,   v_j = c_j + u_l u_j  (j in S, j != l),   v_j = u_j  (j not in S)
//! ```
//!
//! and the new exceptional divisor is `{u_l = 0}` there. Divisor `E_i` is the
//! one created by step `i` (1-based); its home chart is its first pivot chart.

mod search;
mod suspend;
mod transform;
mod validity;

use std::fmt;

use crate::error::{Error, Result};
use crate::gb::DEFAULT_BUDGET;
use crate::polyring::{FieldCoeff, Polynomial};

pub use search::DEFAULT_RATIONAL_SEARCH_BOUND;

pub type ChartId = usize;
/// 1-based: `E_i` is created by step `i`.
pub type DivisorId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartLink {
    pub parent: ChartId,
    /// 0-based index of the step that created the chart.
    pub step: usize,
    pub pivot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub id: ChartId,
    pub link: Option<ChartLink>,
}

/// Center `{u_j = c_j : j in S}` inside one chart of the previous stage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CenterSpec<C> {
    pub chart: ChartId,
    /// Sorted by variable index, no repeats.
    pub constraints: Vec<(usize, C)>,
}

impl<C: FieldCoeff> CenterSpec<C> {
    pub fn new(chart: ChartId, mut constraints: Vec<(usize, C)>) -> Result<Self> {
        constraints.sort_by_key(|(j, _)| *j);
        if constraints.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Unsupported("a coordinate is constrained twice".into()));
        }
        Ok(CenterSpec { chart, constraints })
    }

    /// The point with the given coordinates.
    pub fn point(chart: ChartId, coords: Vec<C>) -> Self {
        CenterSpec { chart, constraints: coords.into_iter().enumerate().collect() }
    }

    /// The origin of a chart in `n` variables.
    pub fn origin(ctx: &C::Ctx, chart: ChartId, n: usize) -> Self {
        Self::point(chart, vec![C::zero(ctx); n])
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.constraints.iter().map(|(j, _)| *j)
    }

    pub fn constant(&self, j: usize) -> Option<&C> {
        self.constraints.iter().find(|(i, _)| *i == j).map(|(_, c)| c)
    }

    pub fn codim(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_point(&self, n: usize) -> bool {
        self.constraints.len() == n
    }

    /// Local equations `u_j - c_j`.
    pub fn equations(&self, ctx: &C::Ctx, n: usize) -> Vec<Polynomial<C>> {
        self.constraints
            .iter()
            .map(|(j, c)| Polynomial::var(ctx, n, *j).sub(&Polynomial::constant(ctx, n, c.clone())))
            .collect()
    }
}

/// An exceptional divisor of a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorRecord {
    pub id: DivisorId,
    /// 0-based step index (`id - 1`).
    pub step: usize,
    /// Discrepancy `k_E`.
    pub k: u64,
    pub home_chart: ChartId,
    /// Coordinate of the home chart cutting out the divisor.
    pub pivot: usize,
    /// Earlier divisors containing the center, with the multiplicity of the
    /// divisor along the center.
    pub contained_in: Vec<(DivisorId, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step<C> {
    pub center: CenterSpec<C>,
    /// Charts created by the step, in pivot order.
    pub charts: Vec<ChartId>,
    pub divisor: DivisorRecord,
}

/// A validated sequence of blow-ups over `A^N`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tower<C: FieldCoeff> {
    n: usize,
    ctx: C::Ctx,
    charts: Vec<Chart>,
    steps: Vec<Step<C>>,
    budget: usize,
}

impl<C: FieldCoeff> Tower<C> {
    pub fn new(n: usize, ctx: &C::Ctx) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadDimension(n));
        }
        Ok(Tower { n, ctx: ctx.clone(), charts: vec![Chart { id: 0, link: None }], steps: Vec::new(), budget: DEFAULT_BUDGET })
    }

    /// Gröbner budget used by chart-validity checks.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn steps(&self) -> &[Step<C>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn divisors(&self) -> impl Iterator<Item = &DivisorRecord> {
        self.steps.iter().map(|s| &s.divisor)
    }

    pub fn divisor(&self, e: DivisorId) -> Result<&DivisorRecord> {
        if e == 0 || e > self.steps.len() {
            return Err(Error::UnknownDivisor(e));
        }
        Ok(&self.steps[e - 1].divisor)
    }

    pub fn last_divisor(&self) -> Option<&DivisorRecord> {
        self.steps.last().map(|s| &s.divisor)
    }

    pub fn chart(&self, c: ChartId) -> Result<&Chart> {
        self.charts.get(c).ok_or(Error::UnknownChart(c))
    }

    /// Whether the first step blows up the origin of the base chart.
    pub fn first_step_at_origin(&self) -> bool {
        match self.steps.first() {
            Some(s) => s.center.chart == 0 && s.center.is_point(self.n) && s.center.constraints.iter().all(|(_, c)| c.is_zero()),
            None => false,
        }
    }

    /// Charts from the base down to `c`, both included.
    pub fn path(&self, c: ChartId) -> Vec<ChartId> {
        let mut out = vec![c];
        let mut cur = c;
        while let Some(link) = &self.charts[cur].link {
            cur = link.parent;
            out.push(cur);
        }
        out.reverse();
        out
    }

    pub(crate) fn is_ancestor_or_self(&self, a: ChartId, c: ChartId) -> bool {
        let mut cur = c;
        loop {
            if cur == a {
                return true;
            }
            match &self.charts[cur].link {
                Some(link) => cur = link.parent,
                None => return false,
            }
        }
    }

    /// Images of the parent coordinates in the coordinates of chart `c`.
    pub fn hop_map(&self, c: ChartId) -> Option<Vec<Polynomial<C>>> {
        let link = self.charts[c].link.as_ref()?;
        let center = &self.steps[link.step].center;
        Some(blowup_map(&self.ctx, self.n, center, link.pivot))
    }

    /// Images of the base coordinates in the coordinates of chart `c`.
    pub fn total_map(&self, c: ChartId) -> Vec<Polynomial<C>> {
        let mut images: Vec<Polynomial<C>> = (0..self.n).map(|i| Polynomial::var(&self.ctx, self.n, i)).collect();
        for &x in self.path(c).iter() {
            if let Some(h) = self.hop_map(x) {
                images = images.iter().map(|g| g.substitute(&h)).collect();
            }
        }
        images
    }

    /// Blows up `center`, returning the extended tower and the new divisor.
    pub fn blow_up(&self, center: CenterSpec<C>) -> Result<(Tower<C>, DivisorId)> {
        let mut t = self.clone();
        let e = t.push_blow_up(center)?;
        Ok((t, e))
    }

    pub(crate) fn push_blow_up(&mut self, center: CenterSpec<C>) -> Result<DivisorId> {
        self.chart(center.chart)?;
        if let Some((j, _)) = center.constraints.iter().find(|(j, _)| *j >= self.n) {
            return Err(Error::Unsupported(format!("coordinate index {} out of range", j + 1)));
        }
        if center.constraints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Unsupported("center constraints must be sorted and distinct".into()));
        }
        if center.codim() < 2 {
            return Err(Error::Codim1Center(center.codim()));
        }
        self.check_center(&center)?;

        let step = self.steps.len();
        let mut contained_in = Vec::new();
        let mut k = (center.codim() - 1) as u64;
        for d in self.divisors() {
            let g = self.local_equation(d.id, center.chart);
            let mult = order_along(&g, &center);
            if mult > 0 {
                k += mult as u64 * d.k;
                contained_in.push((d.id, mult));
            }
        }
        let mut charts = Vec::with_capacity(center.codim());
        for (pivot, _) in &center.constraints {
            let id = self.charts.len();
            self.charts.push(Chart { id, link: Some(ChartLink { parent: center.chart, step, pivot: *pivot }) });
            charts.push(id);
        }
        let divisor = DivisorRecord {
            id: step + 1,
            step,
            k,
            home_chart: charts[0],
            pivot: center.constraints[0].0,
            contained_in,
        };
        self.steps.push(Step { center, charts, divisor });
        Ok(step + 1)
    }

    /// Replays the tower with constants mapped into another field.
    pub fn map_constants<D: FieldCoeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> Result<Tower<D>> {
        let mut t = Tower::<D>::new(self.n, ctx)?.with_budget(self.budget);
        for s in &self.steps {
            let constraints = s.center.constraints.iter().map(|(j, c)| (*j, f(c))).collect();
            t.push_blow_up(CenterSpec { chart: s.center.chart, constraints })?;
        }
        Ok(t)
    }

    /// The same sequence of centers with some constants replaced (used when
    /// repairing lifts); `step` is 0-based.
    pub fn replace_center(&self, step: usize, center: CenterSpec<C>) -> Result<Tower<C>> {
        let mut t = Tower::<C>::new(self.n, &self.ctx)?.with_budget(self.budget);
        for (i, s) in self.steps.iter().enumerate() {
            t.push_blow_up(if i == step { center.clone() } else { s.center.clone() })?;
        }
        Ok(t)
    }
}

/// Parent coordinates in terms of the chart with the given pivot.
pub(crate) fn blowup_map<C: FieldCoeff>(ctx: &C::Ctx, n: usize, center: &CenterSpec<C>, pivot: usize) -> Vec<Polynomial<C>> {
    let u = |j: usize| Polynomial::var(ctx, n, j);
    (0..n)
        .map(|j| match center.constant(j) {
            None => u(j),
            Some(c) => {
                let c = Polynomial::constant(ctx, n, c.clone());
                if j == pivot {
                    c.add(&u(pivot))
                } else {
                    c.add(&u(pivot).mul(&u(j)))
                }
            }
        })
        .collect()
}

/// Order of `g` along the center: lowest degree in the constrained variables of
/// the expansion of `g` around the center's constants.
pub fn order_along<C: FieldCoeff>(g: &Polynomial<C>, center: &CenterSpec<C>) -> u32 {
    if g.is_zero() {
        return u32::MAX;
    }
    let n = g.nvars();
    let mut shift = vec![C::zero(g.ctx()); n];
    for (j, c) in &center.constraints {
        shift[*j] = c.clone();
    }
    let h = g.translate(&shift);
    h.terms()
        .iter()
        .map(|(m, _)| center.vars().map(|j| m.exp(j)).sum::<u32>())
        .min()
        .expect("nonzero")
}

impl<C: FieldCoeff> fmt::Debug for Tower<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tower over A^{} ({})", self.n, C::domain(&self.ctx))?;
        for s in &self.steps {
            let set: Vec<String> = s.center.constraints.iter().map(|(j, c)| format!("u{}={}", j + 1, c)).collect();
            writeln!(
                f,
                "  E{}: chart {} {{{}}} -> charts {:?}, k={}, contained_in={:?}",
                s.divisor.id,
                s.center.chart,
                set.join(","),
                s.charts,
                s.divisor.k,
                s.divisor.contained_in
            )?;
        }
        Ok(())
    }
}
