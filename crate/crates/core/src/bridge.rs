//! Lifting towers and ideals from `F_p` to `Q`, the two extra general-point
//! blow-ups that make the discrepancy shift exact, and the checks of the
//! resulting identities.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::invariants::log_discrepancy;
use crate::jets::contact_codim_at_origin;
use crate::polyring::coeff::padic_val;
use crate::polyring::lift::{lift_scalar, lift_to_rational, reduce_rational_mod_p};
use crate::polyring::{Coeff, FieldCoeff, Fp, Ideal, Monomial, MultiIdeal, Polynomial, Prime, QPoly};
use crate::tower::{CenterSpec, DivisorId, Tower, DEFAULT_RATIONAL_SEARCH_BOUND};

/// Offsets tried, in order, when a canonical constant lift breaks containment.
const REPAIR_OFFSETS: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLift {
    pub tower: Tower<BigRational>,
    /// 1-based steps whose constants had to move off the canonical lift.
    pub repaired: Vec<usize>,
}

fn lift_center(c: &CenterSpec<Fp>) -> CenterSpec<BigRational> {
    CenterSpec { chart: c.chart, constraints: c.constraints.iter().map(|(j, v)| (*j, lift_scalar(v))).collect() }
}

/// Candidate lifts of a center: canonical first, then nonzero constants moved
/// by multiples of `p`.
fn center_candidates(c: &CenterSpec<Fp>, p: u64) -> Vec<CenterSpec<BigRational>> {
    let base = lift_center(c);
    let movable: Vec<usize> = (0..c.constraints.len()).filter(|&i| !c.constraints[i].1.is_zero()).collect();
    let mut out = vec![base.clone()];
    if movable.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; movable.len()];
    loop {
        let mut k = movable.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < REPAIR_OFFSETS.len() {
                break;
            }
            idx[k] = 0;
        }
        let mut cand = base.clone();
        for (slot, &i) in movable.iter().enumerate() {
            cand.constraints[i].1 += q(REPAIR_OFFSETS[idx[slot]] * p as i64);
        }
        out.push(cand);
    }
}

/// Replays `t` over `Q` with canonical integer constants, checking at each
/// step that the lifted center lies on exactly the same earlier divisors
/// (with the same multiplicities) and so has the same discrepancy.
pub fn lift_tower(t: &Tower<Fp>) -> Result<TowerLift> {
    let p = t.ctx().get();
    let mut lifted = Tower::<BigRational>::new(t.n(), &())?.with_budget(t.budget());
    let mut repaired = Vec::new();
    for (i, s) in t.steps().iter().enumerate() {
        let mut found = None;
        for (attempt, cand) in center_candidates(&s.center, p).into_iter().enumerate() {
            match lifted.blow_up(cand) {
                Ok((next, e)) => {
                    let d = next.divisor(e)?;
                    if d.contained_in == s.divisor.contained_in && d.k == s.divisor.k {
                        found = Some((next, attempt > 0));
                        break;
                    }
                }
                Err(Error::StaleChart { .. }) => continue,
                Err(err) => return Err(err),
            }
        }
        let Some((next, moved)) = found else {
            return Err(Error::ContainmentBroken(i + 1));
        };
        if moved {
            repaired.push(i + 1);
        }
        lifted = next;
    }
    Ok(TowerLift { tower: lifted, repaired })
}

/// Reinterprets the constants of a `Q`-tower modulo `p`.
pub fn reduce_tower(t: &Tower<BigRational>, p: &Prime) -> Result<Tower<Fp>> {
    for s in t.steps() {
        for (_, c) in &s.center.constraints {
            if !Zero::is_zero(c) && padic_val(c, p.get()) < 0 {
                return Err(Error::NotPIntegral(crate::polyring::fmt_rational(c)));
            }
        }
    }
    t.map_constants(p, |c| Fp::from_rational(p, c).expect("p-integral"))
}

/// Solves `a x = b` over `Z_(p)` by full pivoting on the smallest p-adic
/// valuation; `None` if no p-integral solution exists.
pub fn solve_p_integral(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, p: u64) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut t: Vec<Vec<BigRational>> =
        (0..cols).map(|i| (0..cols).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut piv: Option<(usize, usize, i64)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, v) in row.iter().enumerate().skip(rank) {
                if !Zero::is_zero(v) {
                    let val = padic_val(v, p);
                    if piv.is_none_or(|(_, _, best)| val < best) {
                        piv = Some((i, j, val));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = piv else { break };
        a.swap(rank, pi);
        b.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        for row in t.iter_mut() {
            row.swap(rank, pj);
        }
        let pivot = a[rank][rank].clone();
        for i in rank + 1..rows {
            if Zero::is_zero(&a[i][rank]) {
                continue;
            }
            let f = &a[i][rank] / &pivot;
            for j in rank..cols {
                let d = &f * &a[rank][j];
                a[i][j] -= d;
            }
            let d = &f * &b[rank];
            b[i] -= d;
        }
        for j in rank + 1..cols {
            if Zero::is_zero(&a[rank][j]) {
                continue;
            }
            let g = &a[rank][j] / &pivot;
            a[rank][j] = q(0);
            for row in t.iter_mut() {
                let d = &g * &row[rank];
                row[j] -= d;
            }
        }
        rank += 1;
    }
    if b[rank..].iter().any(|v| !Zero::is_zero(v)) {
        return None;
    }
    let mut y = vec![q(0); cols];
    for k in 0..rank {
        let v = &b[k] / &a[k][k];
        if !Zero::is_zero(&v) && padic_val(&v, p) < 0 {
            return None;
        }
        y[k] = v;
    }
    Some(
        t.iter()
            .map(|row| row.iter().zip(&y).fold(q(0), |acc, (a, b)| acc + a * b))
            .collect(),
    )
}

fn monomials_below(n: usize, m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if e.iter().sum::<u32>() < m {
            out.push(Monomial::from_exps(e.clone()));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            e[k] += 1;
            if e[k] < m {
                break;
            }
            e[k] = 0;
        }
    }
}

/// Finds `g` with p-integral coefficients and degree `< m` such that
/// `v_F(f + p g) >= m` on the lifted tower.
pub fn correct_lift(t: &Tower<BigRational>, f_div: DivisorId, f: &QPoly, m: u32, p: u64) -> Result<Option<QPoly>> {
    let d = t.divisor(f_div)?;
    let (home, pivot, n) = (d.home_chart, d.pivot, t.n());
    let low = |g: &QPoly| -> Vec<(Monomial, BigRational)> {
        g.terms().iter().filter(|(mon, _)| mon.exp(pivot) < m).cloned().collect()
    };
    let target = low(&t.total_transform(f, home)?);
    let unknowns = monomials_below(n, m);
    let images: Vec<Vec<(Monomial, BigRational)>> = unknowns
        .iter()
        .map(|mon| Ok(low(&t.total_transform(&Polynomial::term(&(), mon.clone(), q(1)), home)?)))
        .collect::<Result<_>>()?;
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (mon, _) in target.iter().chain(images.iter().flatten()) {
        let next = rows.len();
        rows.entry(mon.clone()).or_insert(next);
    }
    let mut a = vec![vec![q(0); unknowns.len()]; rows.len()];
    let mut b = vec![q(0); rows.len()];
    for (col, img) in images.iter().enumerate() {
        for (mon, c) in img {
            a[rows[mon]][col] = c.clone();
        }
    }
    let pq = q(p as i64);
    for (mon, c) in &target {
        b[rows[mon]] = -(c / &pq);
    }
    let Some(x) = solve_p_integral(a, b, p) else {
        return Ok(None);
    };
    let g = Polynomial::from_terms(&(), n, unknowns.into_iter().zip(x).map(|(mon, c)| (mon, c * &pq)));
    Ok(Some(f.add(&g)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationRow {
    pub v_e: u32,
    pub v_f1: u32,
    pub v_f2: u32,
    /// Valuation of the lifted ideal along the lifted divisor.
    pub v_lift: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedCheck {
    pub exponents: Vec<BigRational>,
    pub a_p: BigRational,
    pub a_q: BigRational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeReport {
    pub n: usize,
    pub p: u64,
    pub divisor: DivisorId,
    pub k_e: u64,
    pub p1: CenterSpec<Fp>,
    pub p2: CenterSpec<Fp>,
    pub f1: DivisorId,
    pub k_f1: u64,
    pub f: DivisorId,
    /// `k` of the last divisor over `F_p` and of its lift over `Q`.
    pub k_f_p: u64,
    pub k_f: u64,
    /// The input tower extended by the two extra blow-ups.
    pub tower: Tower<Fp>,
    pub lift: TowerLift,
    pub ideals: Vec<Ideal<Fp>>,
    pub lifted_ideals: Vec<Ideal<BigRational>>,
    /// `(ideal, generator)` pairs whose canonical lift needed a correction.
    pub corrected: Vec<(usize, usize)>,
    pub valuations: Vec<ValuationRow>,
    pub shift_ok: bool,
    pub v_ok: bool,
    pub shifted: Vec<ShiftedCheck>,
}

impl BridgeReport {
    /// Re-derives the identity flags from the raw `k` and `v` values.
    pub fn self_consistent(&self) -> bool {
        let shift = 2 * (self.n as u64 - 1);
        let shift_ok = self.k_f == shift + self.k_e
            && self.k_f_p == self.k_f
            && self.k_f1 == (self.n as u64 - 1) + self.k_e;
        let v_ok = self.valuations.iter().all(|r| r.v_e == r.v_f1 && r.v_e == r.v_f2 && r.v_e == r.v_lift);
        let sh = self.shifted.iter().all(|s| s.ok == (s.a_q == &s.a_p + q(shift as i64)));
        shift_ok == self.shift_ok && v_ok == self.v_ok && sh
    }

    pub fn lifted_tower(&self) -> &Tower<BigRational> {
        &self.lift.tower
    }
}

fn fail(msg: String) -> Error {
    Error::BridgeIdentityFailed(msg)
}

/// Appends two general-point blow-ups over the last divisor `E` of `t`, lifts
/// everything to `Q` and verifies `k_F = 2(N - 1) + k_E` and
/// `v_E(a_i) = v_F(lift of a_i)` for every supplied ideal.
pub fn bridge_construct(t: &Tower<Fp>, ideals: &[Ideal<Fp>]) -> Result<BridgeReport> {
    let n = t.n();
    let p = t.ctx().get();
    let e = t.last_divisor().ok_or(Error::FirstStepNotOrigin)?.id;
    if !t.first_step_at_origin() {
        return Err(Error::FirstStepNotOrigin);
    }
    for a in ideals {
        if a.nvars() != n || a.ctx() != t.ctx() {
            return Err(Error::RingMismatch("ideal is not in the base ring of the tower".into()));
        }
    }
    if t.valuation(e, &Ideal::maximal(t.ctx(), n))? == 0 {
        return Err(Error::DivisorNotOverOrigin(e));
    }
    let k_e = t.divisor(e)?.k;

    let earlier: Vec<DivisorId> = (1..e).collect();
    let loci = t.weak_transform_loci(e, ideals)?;
    let p1 = t.point_on_divisor_avoiding(e, &earlier, &loci, DEFAULT_RATIONAL_SEARCH_BOUND)?;
    let (t1, f1) = t.blow_up(p1.clone())?;
    let loci = t1.weak_transform_loci(f1, ideals)?;
    let p2 = t1.point_on_divisor_avoiding(f1, &[e], &loci, DEFAULT_RATIONAL_SEARCH_BOUND)?;
    let (t2, f2) = t1.blow_up(p2.clone())?;
    let k_f1 = t1.divisor(f1)?.k;
    let k_f_p = t2.divisor(f2)?.k;

    let lift = lift_tower(&t2)?;
    let tq = &lift.tower;
    let k_f = tq.divisor(f2)?.k;

    let mut lifted_ideals = Vec::with_capacity(ideals.len());
    let mut corrected = Vec::new();
    let mut valuations = Vec::with_capacity(ideals.len());
    for (i, a) in ideals.iter().enumerate() {
        let v_e = t.valuation(e, a)?;
        let v_f1 = t1.valuation(f1, a)?;
        let v_f2 = t2.valuation(f2, a)?;
        let mut gens = Vec::with_capacity(a.gens().len());
        for (gi, g) in a.gens().iter().enumerate() {
            let canon = lift_to_rational(g);
            if tq.valuation_poly(f2, &canon)? >= v_f2 {
                gens.push(canon);
                continue;
            }
            match correct_lift(tq, f2, &canon, v_f2, p)? {
                Some(fixed) => {
                    corrected.push((i, gi));
                    gens.push(fixed);
                }
                None => {
                    return Err(fail(format!(
                        "ideal {}: generator {} has no lift with valuation {v_f2} along F",
                        i + 1,
                        gi + 1
                    )))
                }
            }
        }
        let lifted = Ideal::new(&(), n, gens)?;
        let v_lift = tq.valuation(f2, &lifted)?;
        valuations.push(ValuationRow { v_e, v_f1, v_f2, v_lift });
        lifted_ideals.push(lifted);
    }

    let shift_ok = k_f1 == (n as u64 - 1) + k_e && k_f_p == k_f && k_f == 2 * (n as u64 - 1) + k_e;
    let v_ok = valuations.iter().all(|r| r.v_e == r.v_f1 && r.v_e == r.v_f2 && r.v_e == r.v_lift);
    let report = BridgeReport {
        n,
        p,
        divisor: e,
        k_e,
        p1,
        p2,
        f1,
        k_f1,
        f: f2,
        k_f_p,
        k_f,
        tower: t2,
        lift,
        ideals: ideals.to_vec(),
        lifted_ideals,
        corrected,
        valuations,
        shift_ok,
        v_ok,
        shifted: Vec::new(),
    };
    if !shift_ok {
        return Err(fail(format!("k_E={k_e} k_F1={k_f1} k_F={k_f} (F_p: {k_f_p}) for N={n}")));
    }
    if !v_ok {
        return Err(fail(format!("valuations {:?}", report.valuations)));
    }
    verify_with_lift(&report, &report.lifted_ideals)?;
    Ok(report)
}

/// Checks a candidate lift of the report's ideals: generator-wise reduction
/// back to the originals and equality of valuations along the lifted divisor.
pub fn verify_with_lift(report: &BridgeReport, lifted: &[Ideal<BigRational>]) -> Result<Vec<u32>> {
    if lifted.len() != report.ideals.len() {
        return Err(Error::DimensionMismatch { expected: report.ideals.len(), got: lifted.len() });
    }
    let tq = report.lifted_tower();
    let mut out = Vec::with_capacity(lifted.len());
    for (i, (a, la)) in report.ideals.iter().zip(lifted).enumerate() {
        if a.gens().len() != la.gens().len() {
            return Err(fail(format!("ideal {}: generator count differs from the F_p ideal", i + 1)));
        }
        for (g, lg) in a.gens().iter().zip(la.gens()) {
            let red = reduce_rational_mod_p(lg, report.p).map_err(|err| fail(format!("ideal {}: {err}", i + 1)))?;
            if &red != g {
                return Err(fail(format!("ideal {}: {lg} does not reduce to {g} mod {}", i + 1, report.p)));
            }
        }
        let v = tq.valuation(report.f, la)?;
        let v_e = report.valuations[i].v_e;
        if v != v_e {
            return Err(fail(format!("ideal {}: v_E = {v_e} but v_F of the lift is {v}", i + 1)));
        }
        out.push(v);
    }
    Ok(out)
}

fn multi<C: Coeff>(ctx: &C::Ctx, n: usize, ideals: &[Ideal<C>], e: &[BigRational]) -> Result<MultiIdeal<C>> {
    MultiIdeal::new(ctx, n, ideals.iter().cloned().zip(e.iter().cloned()).collect())
}

/// For each exponent vector, evaluates `a(E; a^e)` over `F_p` and
/// `a(F; lift^e)` over `Q` independently and checks the `2(N - 1)` shift.
pub fn shifted_log_discrepancy_check(report: &BridgeReport, exponents: &[Vec<BigRational>]) -> Result<BridgeReport> {
    let mut out = report.clone();
    let shift = q(2 * (report.n as i64 - 1));
    for e in exponents {
        if e.len() != report.ideals.len() {
            return Err(Error::DimensionMismatch { expected: report.ideals.len(), got: e.len() });
        }
        let prime = *report.tower.ctx();
        let ma_p = multi(&prime, report.n, &report.ideals, e)?;
        let ma_q = multi(&(), report.n, &report.lifted_ideals, e)?;
        let a_p = log_discrepancy(&report.tower, report.divisor, &ma_p)?.a;
        let a_q = log_discrepancy(report.lifted_tower(), report.f, &ma_q)?.a;
        let ok = a_q == &a_p + &shift;
        out.shifted.push(ShiftedCheck { exponents: e.clone(), a_p: a_p.clone(), a_q: a_q.clone(), ok });
        if !ok {
            return Err(fail(format!("a_p = {a_p}, a_Q = {a_q}, expected shift {shift}")));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellValue {
    Codim(usize),
    /// The contact locus is empty (infinite codimension).
    Empty,
    BudgetExceeded,
}

impl CellValue {
    fn of(r: Result<usize>) -> Result<CellValue> {
        match r {
            Ok(c) => Ok(CellValue::Codim(c)),
            Err(Error::UnitIdeal) => Ok(CellValue::Empty),
            Err(Error::BudgetExceeded(_)) => Ok(CellValue::BudgetExceeded),
            Err(e) => Err(e),
        }
    }

    /// `self <= other` with `Empty` as infinity; `None` if either side is unknown.
    fn le(&self, other: &CellValue) -> Option<bool> {
        match (self, other) {
            (CellValue::BudgetExceeded, _) | (_, CellValue::BudgetExceeded) => None,
            (_, CellValue::Empty) => Some(true),
            (CellValue::Empty, CellValue::Codim(_)) => Some(false),
            (CellValue::Codim(a), CellValue::Codim(b)) => Some(a <= b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCell {
    pub levels: Vec<u32>,
    pub codim_p: CellValue,
    pub codim_q: CellValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCharReport {
    pub p: u64,
    pub cells: Vec<CrossCell>,
    /// Levels where `codim_p <= codim_Q` fails.
    pub violations: Vec<Vec<u32>>,
    /// Truncated mld estimates over the cells known on both sides.
    pub mld_p: Option<BigRational>,
    pub mld_q: Option<BigRational>,
    /// Truncated lct estimates (single ideal only).
    pub lct_p: Option<BigRational>,
    pub lct_q: Option<BigRational>,
}

impl CrossCharReport {
    pub fn budget_cells(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.codim_p == CellValue::BudgetExceeded || c.codim_q == CellValue::BudgetExceeded)
            .count()
    }

    pub fn estimates_ordered(&self) -> bool {
        let ord = |a: &Option<BigRational>, b: &Option<BigRational>| match (a, b) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        };
        ord(&self.mld_p, &self.mld_q) && ord(&self.lct_p, &self.lct_q)
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.estimates_ordered()
    }
}

/// Compares contact-locus codimensions of `ma` over `F_p` with those of its
/// canonical lift at every level vector in `prod {0..caps_i}`.
pub fn cross_characteristic_suite(ma: &MultiIdeal<Fp>, caps: &[u32], budget: usize) -> Result<CrossCharReport> {
    if caps.len() != ma.len() {
        return Err(Error::DimensionMismatch { expected: ma.len(), got: caps.len() });
    }
    let n = ma.nvars();
    let p = ma.ctx().get();
    let lifted: Vec<Ideal<BigRational>> =
        ma.ideals().map(|a| a.map_gens(&(), lift_to_rational)).collect::<Result<_>>()?;
    let exps = ma.exponents();
    let mut cells = Vec::new();
    let mut violations = Vec::new();
    let (mut mld_p, mut mld_q): (Option<BigRational>, Option<BigRational>) = (None, None);
    let (mut lct_p, mut lct_q): (Option<BigRational>, Option<BigRational>) = (None, None);
    let keep_min = |slot: &mut Option<BigRational>, v: BigRational| {
        if slot.as_ref().is_none_or(|s| v < *s) {
            *slot = Some(v);
        }
    };
    let mut m = vec![0u32; caps.len()];
    loop {
        let fp: Vec<(&Ideal<Fp>, u32)> = ma.ideals().zip(m.iter().copied()).collect();
        let fq: Vec<(&Ideal<BigRational>, u32)> = lifted.iter().zip(m.iter().copied()).collect();
        let codim_p = CellValue::of(contact_codim_at_origin(n, &fp, budget))?;
        let codim_q = CellValue::of(contact_codim_at_origin(n, &fq, budget))?;
        if codim_p.le(&codim_q) == Some(false) {
            violations.push(m.clone());
        }
        if let (CellValue::Codim(cp), CellValue::Codim(cq)) = (&codim_p, &codim_q) {
            let mut shift = q(0);
            for (e, &mi) in exps.iter().zip(&m) {
                shift += e * q(mi as i64);
            }
            keep_min(&mut mld_p, q(*cp as i64) - &shift);
            keep_min(&mut mld_q, q(*cq as i64) - &shift);
            if m.len() == 1 && m[0] > 0 {
                keep_min(&mut lct_p, BigRational::new((*cp as i64).into(), (m[0] as i64).into()));
                keep_min(&mut lct_q, BigRational::new((*cq as i64).into(), (m[0] as i64).into()));
            }
        }
        cells.push(CrossCell { levels: m.clone(), codim_p, codim_q });
        let mut k = m.len();
        loop {
            if k == 0 {
                return Ok(CrossCharReport { p, cells, violations, mld_p, mld_q, lct_p, lct_q });
            }
            k -= 1;
            m[k] += 1;
            if m[k] <= caps[k] {
                break;
            }
            m[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::DEFAULT_BUDGET;
    use crate::polyring::parse::parse_poly_in;
    use crate::polyring::default_names;

    fn fideal(p: &Prime, n: usize, gens: &[&str]) -> Ideal<Fp> {
        Ideal::new(p, n, gens.iter().map(|s| parse_poly_in(s, &default_names(n), p).unwrap()).collect()).unwrap()
    }

    fn qideal(n: usize, gens: &[&str]) -> Ideal<BigRational> {
        Ideal::new(&(), n, gens.iter().map(|s| parse_poly_in(s, &default_names(n), &()).unwrap()).collect()).unwrap()
    }

    fn fp(p: &Prime, v: u64) -> Fp {
        Fp::new(p, v)
    }

    fn origin(p: &Prime, n: usize) -> Tower<Fp> {
        Tower::new(n, p).unwrap().blow_up(CenterSpec::origin(p, 0, n)).unwrap().0
    }

    #[test]
    fn bridge_on_first_divisor() {
        let p = Prime::new(5).unwrap();
        let r = bridge_construct(&origin(&p, 2), &[fideal(&p, 2, &["x1", "x2"])]).unwrap();
        assert_eq!((r.k_e, r.k_f1, r.k_f), (1, 2, 3));
        assert_eq!(r.valuations, vec![ValuationRow { v_e: 1, v_f1: 1, v_f2: 1, v_lift: 1 }]);
        assert!(r.shift_ok && r.v_ok && r.self_consistent());

        let r = bridge_construct(&origin(&p, 3), &[fideal(&p, 3, &["x1", "x2", "x3"])]).unwrap();
        assert_eq!((r.k_e, r.k_f, r.valuations[0].v_lift), (2, 6, 1));
    }

    #[test]
    fn bridge_on_second_divisor() {
        let p = Prime::new(5).unwrap();
        let (t, _) = origin(&p, 2).blow_up(CenterSpec::origin(&p, 1, 2)).unwrap();
        let r = bridge_construct(&t, &[fideal(&p, 2, &["x1^2 + x2^3"])]).unwrap();
        assert_eq!((r.k_e, r.k_f), (2, 4));
        assert_eq!(r.valuations[0].v_e, 2);
        assert_eq!(r.valuations[0].v_lift, 2);
    }

    #[test]
    fn bridge_preconditions() {
        let p = Prime::new(5).unwrap();
        let off = Tower::new(2, &p).unwrap().blow_up(CenterSpec::point(0, vec![fp(&p, 1), fp(&p, 0)])).unwrap().0;
        assert_eq!(bridge_construct(&off, &[]).unwrap_err(), Error::FirstStepNotOrigin);
        // second center at u1 = 1 in chart 1 lies away from the exceptional divisor
        let (t, _) = origin(&p, 2).blow_up(CenterSpec::point(1, vec![fp(&p, 1), fp(&p, 0)])).unwrap();
        assert_eq!(bridge_construct(&t, &[]).unwrap_err(), Error::DivisorNotOverOrigin(2));
    }

    #[test]
    fn lift_tower_keeps_constants_and_reduces_back() {
        let p = Prime::new(5).unwrap();
        let (t, _) = origin(&p, 2).blow_up(CenterSpec::origin(&p, 1, 2)).unwrap();
        let (t, _) = t.blow_up(CenterSpec::point(3, vec![fp(&p, 1), fp(&p, 0)])).unwrap();
        let l = lift_tower(&t).unwrap();
        assert!(l.repaired.is_empty());
        let consts: Vec<Vec<BigRational>> = l
            .tower
            .steps()
            .iter()
            .map(|s| s.center.constraints.iter().map(|(_, c)| c.clone()).collect())
            .collect();
        assert_eq!(consts, vec![vec![q(0), q(0)], vec![q(0), q(0)], vec![q(1), q(0)]]);
        for (a, b) in t.divisors().zip(l.tower.divisors()) {
            assert_eq!((a.k, &a.contained_in), (b.k, &b.contained_in));
        }
        assert_eq!(reduce_tower(&l.tower, &p).unwrap(), t);
    }

    #[test]
    fn lift_tower_repairs_accidental_containment() {
        let p = Prime::new(5).unwrap();
        // E1 becomes 1 + v1*v2 in the second chart of a blow-up at (1, 0);
        // (1, 4) lies on it only modulo 5
        let (t, _) = origin(&p, 2).blow_up(CenterSpec::point(1, vec![fp(&p, 1), fp(&p, 0)])).unwrap();
        let chart = t.steps()[1].charts[1];
        let (t, e3) = t.blow_up(CenterSpec::point(chart, vec![fp(&p, 1), fp(&p, 4)])).unwrap();
        assert_eq!(t.divisor(e3).unwrap().contained_in, vec![(1, 1)]);
        let l = lift_tower(&t).unwrap();
        assert_eq!(l.repaired, vec![3]);
        assert_eq!(l.tower.steps()[2].center.constraints, vec![(0, q(1)), (1, q(-1))]);
        assert_eq!(l.tower.divisor(e3).unwrap().k, t.divisor(e3).unwrap().k);
        assert_eq!(reduce_tower(&l.tower, &p).unwrap(), t);
    }

    #[test]
    fn lift_correction_restores_valuation() {
        let p = Prime::new(5).unwrap();
        let (t, _) = origin(&p, 2).blow_up(CenterSpec::point(1, vec![fp(&p, 0), fp(&p, 1)])).unwrap();
        let a = fideal(&p, 2, &["x2 + 4*x1"]);
        let r = bridge_construct(&t, &[a]).unwrap();
        assert_eq!(r.corrected, vec![(0, 0)]);
        assert_eq!(r.valuations[0].v_e, 2);
        assert_eq!(r.valuations[0].v_lift, 2);
        // the canonical lift drops to valuation 1
        let canonical = qideal(2, &["x2 + 4*x1"]);
        assert_eq!(r.lifted_tower().valuation(r.f, &canonical), Ok(1));
        assert!(matches!(verify_with_lift(&r, &[canonical]), Err(Error::BridgeIdentityFailed(_))));
        let mut perturbed = r.lifted_ideals[0].gens()[0].clone();
        perturbed = perturbed.add(&parse_poly_in("x1^3", &default_names(2), &()).unwrap());
        let bad = Ideal::new(&(), 2, vec![perturbed]).unwrap();
        assert!(matches!(verify_with_lift(&r, &[bad]), Err(Error::BridgeIdentityFailed(_))));
        assert_eq!(verify_with_lift(&r, &r.lifted_ideals), Ok(vec![2]));
    }

    #[test]
    fn shifted_checks() {
        let p = Prime::new(5).unwrap();
        let ideals = [fideal(&p, 2, &["x1", "x2"]), fideal(&p, 2, &["x1"])];
        let r = bridge_construct(&origin(&p, 2), &ideals[..1]).unwrap();
        let r2 = shifted_log_discrepancy_check(&r, &[vec![q(1)], vec![BigRational::new(1.into(), 2.into())]]).unwrap();
        assert_eq!((r2.shifted[0].a_p.clone(), r2.shifted[0].a_q.clone()), (q(1), q(3)));
        assert_eq!(r2.shifted[1].a_p, BigRational::new(3.into(), 2.into()));
        assert_eq!(r2.shifted[1].a_q, BigRational::new(7.into(), 2.into()));
        assert!(r2.self_consistent());
        assert_eq!(
            shifted_log_discrepancy_check(&r, &[vec![q(1), q(1)]]).unwrap_err(),
            Error::DimensionMismatch { expected: 1, got: 2 }
        );
        let r = bridge_construct(&origin(&p, 2), &ideals).unwrap();
        let r = shifted_log_discrepancy_check(&r, &[vec![q(1), q(2)]]).unwrap();
        // 1 - 1 - 2 + 1 over F_p, shifted by 2 over Q
        assert_eq!((r.shifted[0].a_p.clone(), r.shifted[0].a_q.clone()), (q(-1), q(1)));
    }

    #[test]
    fn p_integral_solver() {
        let five = q(5);
        assert_eq!(solve_p_integral(vec![vec![five.clone()]], vec![q(1)], 5), None);
        assert_eq!(solve_p_integral(vec![vec![five.clone()]], vec![q(10)], 5), Some(vec![q(2)]));
        let sol = solve_p_integral(vec![vec![q(1), q(1)], vec![q(1), q(6)]], vec![q(2), q(7)], 5).unwrap();
        assert_eq!(sol, vec![q(1), q(1)]);
        assert_eq!(solve_p_integral(vec![vec![q(0)], vec![q(0)]], vec![q(0), q(1)], 5), None);
    }

    #[test]
    fn cross_characteristic_examples() {
        let p = Prime::new(5).unwrap();
        let r = cross_characteristic_suite(&MultiIdeal::single(fideal(&p, 2, &["x1", "x2"])), &[3], DEFAULT_BUDGET)
            .unwrap();
        assert!(r.cells.iter().all(|c| c.codim_p == c.codim_q));
        assert!(r.holds());
        let r = cross_characteristic_suite(&MultiIdeal::single(fideal(&p, 2, &["x1^5 + x2^2"])), &[4], DEFAULT_BUDGET)
            .unwrap();
        assert!(r.holds(), "{r:?}");
        let p7 = Prime::new(7).unwrap();
        let r = cross_characteristic_suite(&MultiIdeal::single(fideal(&p7, 2, &["x1^2 + x2^3"])), &[6], DEFAULT_BUDGET)
            .unwrap();
        assert!(r.holds());
        assert!(r.lct_p <= r.lct_q);
    }
}
