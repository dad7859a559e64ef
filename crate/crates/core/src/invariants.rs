//! Log discrepancies, lct witnesses from divisors, a toric weight search over
//! monomial ideals, and jets-based non-log-canonicity certificates.

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::jets::{mld_term, monomial_exponents};
use crate::polyring::{FieldCoeff, Ideal, MultiIdeal};
use crate::tower::{CenterSpec, DivisorId, Tower};

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDiscrepancyReport {
    pub divisor: DivisorId,
    pub k: u64,
    /// `(factor index, v_E(a_i))`.
    pub valuations: Vec<(usize, u32)>,
    pub exponents: Vec<BigRational>,
    pub a: BigRational,
}

impl LogDiscrepancyReport {
    /// `k - sum e_i v_i + 1` from the stored raw values.
    pub fn recompute(&self) -> BigRational {
        let mut a = rat(self.k + 1);
        for ((_, v), e) in self.valuations.iter().zip(&self.exponents) {
            a -= e * rat(*v as u64);
        }
        a
    }
}

pub fn log_discrepancy<C: FieldCoeff>(t: &Tower<C>, e: DivisorId, ma: &MultiIdeal<C>) -> Result<LogDiscrepancyReport> {
    let k = t.divisor(e)?.k;
    if ma.nvars() != t.n() || ma.ctx() != t.ctx() {
        return Err(Error::RingMismatch("multi-ideal is not in the base ring of the tower".into()));
    }
    let valuations = ma.ideals().enumerate().map(|(i, a)| Ok((i, t.valuation(e, a)?))).collect::<Result<Vec<_>>>()?;
    let mut r = LogDiscrepancyReport { divisor: e, k, valuations, exponents: ma.exponents(), a: rat(0) };
    r.a = r.recompute();
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSource {
    Divisor(DivisorId),
    Weights(Vec<u32>),
}

/// `z = (k + 1) / v`, an upper bound for the lct at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LctWitness {
    pub source: WitnessSource,
    pub k: u64,
    pub v: u32,
    pub z: BigRational,
}

pub fn lct_witness<C: FieldCoeff>(t: &Tower<C>, e: DivisorId, a: &Ideal<C>) -> Result<LctWitness> {
    let k = t.divisor(e)?.k;
    let v = t.valuation(e, a)?;
    if v == 0 {
        return Err(Error::DivisorMissesIdeal(e));
    }
    Ok(LctWitness { source: WitnessSource::Divisor(e), k, v, z: BigRational::new((k + 1).into(), v.into()) })
}

/// Tower of coordinate blow-ups whose last divisor is the monomial valuation
/// with primitive weights `w`: blow up the coordinate subspace of the
/// positively weighted coordinates, move to the chart of the smallest weight
/// and subtract it from the others.
pub fn toric_tower<C: FieldCoeff>(ctx: &C::Ctx, w: &[u32]) -> Result<(Tower<C>, DivisorId)> {
    if w.contains(&0) || w.iter().fold(0u32, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::Unsupported(format!("weights {w:?} are not positive and primitive")));
    }
    let mut t = Tower::new(w.len(), ctx)?;
    let mut cur = w.to_vec();
    let mut chart = 0;
    let mut last = None;
    loop {
        let s: Vec<usize> = (0..cur.len()).filter(|&j| cur[j] > 0).collect();
        if s.len() < 2 {
            break;
        }
        let pivot = *s.iter().min_by_key(|&&j| (cur[j], j)).unwrap();
        let center = CenterSpec::new(chart, s.iter().map(|&j| (j, C::zero(ctx))).collect())?;
        let (next, e) = t.blow_up(center)?;
        t = next;
        let step = t.steps().last().unwrap();
        chart = step.charts[s.iter().position(|&j| j == pivot).unwrap()];
        for &j in &s {
            if j != pivot {
                cur[j] -= cur[pivot];
            }
        }
        last = Some(e);
    }
    Ok((t, last.expect("at least two positive weights")))
}

fn weighted_order(w: &[u32], exps: &[Vec<u32>]) -> u32 {
    exps.iter().map(|e| e.iter().zip(w).map(|(a, b)| a * b).sum()).min().unwrap()
}

/// Minimizes `sum w / min <w, e>` over `w in {1..bound}^N` for a monomial
/// ideal in two or three variables. Every primitive weight vector is realized
/// as a tower and its `k` and valuation are checked against the closed forms.
pub fn toric_weight_search<C: FieldCoeff>(a: &Ideal<C>, bound: u32) -> Result<LctWitness> {
    let n = a.nvars();
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("toric search needs 2 or 3 variables, got {n}")));
    }
    let exps = monomial_exponents(a).ok_or(Error::NonMonomialIdeal)?;
    if !a.vanishes_at_origin() {
        return Err(Error::IdealNotAtOrigin);
    }
    if bound == 0 {
        return Err(Error::Unsupported("weight bound must be at least 1".into()));
    }
    let mut w = vec![1u32; n];
    let mut best: Option<LctWitness> = None;
    loop {
        // scaling w leaves the ratio unchanged, so only primitive vectors matter
        if w.iter().fold(0u32, |g, &x| g.gcd(&x)) == 1 {
            let k = w.iter().sum::<u32>() as u64 - 1;
            let v = weighted_order(&w, &exps);
            let (t, e) = toric_tower::<C>(a.ctx(), &w)?;
            let (tk, tv) = (t.divisor(e)?.k, t.valuation(e, a)?);
            if (tk, tv) != (k, v) {
                return Err(Error::OracleMismatch(format!(
                    "weights {w:?}: tower gives k={tk} v={tv}, closed form k={k} v={v}"
                )));
            }
            let z = BigRational::new((k + 1).into(), v.into());
            if best.as_ref().is_none_or(|b| z < b.z) {
                best = Some(LctWitness { source: WitnessSource::Weights(w.clone()), k, v, z });
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(best.unwrap());
            }
            i -= 1;
            w[i] += 1;
            if w[i] <= bound {
                break;
            }
            w[i] = 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Levels `m` with `codim - sum e_i m_i < 0`, so the mld is `-infinity`.
    NotLogCanonical { levels: Vec<u32>, value: BigRational },
    Unknown,
}

/// Lexicographically first level vector in `{0..cap}^r` with a negative
/// jets estimate.
pub fn certify_not_log_canonical<C: FieldCoeff>(ma: &MultiIdeal<C>, cap: u32, budget: usize) -> Result<Certificate> {
    let r = ma.len();
    let mut m = vec![0u32; r];
    let zero = rat(0);
    loop {
        if let Some(v) = mld_term(ma, &m, budget)? {
            if v < zero {
                return Ok(Certificate::NotLogCanonical { levels: m, value: v });
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(Certificate::Unknown);
            }
            i -= 1;
            m[i] += 1;
            if m[i] <= cap {
                break;
            }
            m[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::DEFAULT_BUDGET;
    use crate::polyring::parse::parse_poly_in;
    use crate::polyring::{default_names, Fp, Prime};

    fn qideal(n: usize, gens: &[&str]) -> Ideal<BigRational> {
        Ideal::new(&(), n, gens.iter().map(|s| parse_poly_in(s, &default_names(n), &()).unwrap()).collect()).unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn e1() -> Tower<BigRational> {
        Tower::new(2, &()).unwrap().blow_up(CenterSpec::origin(&(), 0, 2)).unwrap().0
    }

    #[test]
    fn log_discrepancy_examples() {
        let t = e1();
        let m = qideal(2, &["x1", "x2"]);
        let rep = log_discrepancy(&t, 1, &MultiIdeal::single(m.clone())).unwrap();
        assert_eq!((rep.k, rep.valuations.clone(), rep.a.clone()), (1, vec![(0, 1)], r(1, 1)));
        assert_eq!(log_discrepancy(&t, 1, &MultiIdeal::trivial(&(), 2)).unwrap().a, r(2, 1));
        let rep = log_discrepancy(&t, 1, &MultiIdeal::with_exponent(m, r(3, 1))).unwrap();
        assert_eq!(rep.a, r(-1, 1));
        assert_eq!(rep.recompute(), rep.a);
    }

    #[test]
    fn lct_witness_examples() {
        let t = e1();
        assert_eq!(lct_witness(&t, 1, &qideal(2, &["x1", "x2"])).unwrap().z, r(2, 1));
        assert_eq!(lct_witness(&t, 1, &qideal(2, &["x1^2"])).unwrap().z, r(1, 1));
        let (t3, e) = toric_tower::<BigRational>(&(), &[3, 2]).unwrap();
        assert_eq!(t3.len(), 3);
        let w = lct_witness(&t3, e, &qideal(2, &["x1^2", "x2^3"])).unwrap();
        assert_eq!((w.k, w.v, w.z), (4, 6, r(5, 6)));
        assert_eq!(lct_witness(&t, 1, &qideal(2, &["x1 + 1"])), Err(Error::DivisorMissesIdeal(1)));
    }

    #[test]
    fn toric_towers_match_closed_forms() {
        for w in [[1u32, 1, 1], [2, 3, 5], [4, 1, 2], [1, 6, 6]] {
            let (t, e) = toric_tower::<BigRational>(&(), &w).unwrap();
            assert_eq!(t.divisor(e).unwrap().k, w.iter().sum::<u32>() as u64 - 1, "{w:?}");
        }
        assert!(toric_tower::<BigRational>(&(), &[2, 4]).is_err());
    }

    #[test]
    fn toric_search_examples() {
        let w = toric_weight_search(&qideal(2, &["x1", "x2"]), 4).unwrap();
        assert_eq!((w.z, w.source), (r(2, 1), WitnessSource::Weights(vec![1, 1])));
        let w = toric_weight_search(&qideal(2, &["x1^2", "x2^3"]), 6).unwrap();
        assert_eq!((w.z, w.source), (r(5, 6), WitnessSource::Weights(vec![3, 2])));
        // (a + 1) / (2a + 1) keeps decreasing along w = (a, 1)
        let w = toric_weight_search(&qideal(2, &["x1^2*x2"]), 4).unwrap();
        assert_eq!((w.z, w.source), (r(5, 9), WitnessSource::Weights(vec![4, 1])));
        assert_eq!(toric_weight_search(&qideal(2, &["x1 + x2"]), 4), Err(Error::NonMonomialIdeal));
        let p = Prime::new(5).unwrap();
        let a: Ideal<Fp> = Ideal::maximal(&p, 3);
        assert_eq!(toric_weight_search(&a, 3).unwrap().z, r(3, 1));
    }

    #[test]
    fn certificates() {
        let m = qideal(2, &["x1", "x2"]);
        let cube = MultiIdeal::with_exponent(m.clone(), r(3, 1));
        assert_eq!(
            certify_not_log_canonical(&cube, 3, DEFAULT_BUDGET).unwrap(),
            Certificate::NotLogCanonical { levels: vec![1], value: r(-1, 1) }
        );
        assert_eq!(certify_not_log_canonical(&MultiIdeal::single(m), 5, DEFAULT_BUDGET).unwrap(), Certificate::Unknown);
        let x2 = MultiIdeal::with_exponent(qideal(2, &["x1"]), r(2, 1));
        assert_eq!(
            certify_not_log_canonical(&x2, 4, DEFAULT_BUDGET).unwrap(),
            Certificate::NotLogCanonical { levels: vec![2], value: r(-1, 1) }
        );
    }
}
