//! Truncated jets, contact loci over the origin, and the jet-theoretic
//! estimators for mld and lct.
//!
//! Level-`m` jet coordinates `x_l^(q)` (`0 <= q <= m`) are numbered
//! `l * (m + 1) + q` and printed as `x{l}_{q}` with 1-based `l`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gb::{ideal_dimension, ideal_height};
use crate::polyring::lift::reduce_rational_mod_p;
use crate::polyring::{Coeff, FieldCoeff, Fp, Ideal, MultiIdeal, Polynomial};

pub fn jet_var(l: usize, q: usize, m: usize) -> usize {
    l * (m + 1) + q
}

pub fn jet_var_names(n: usize, m: usize) -> Vec<String> {
    (0..n).flat_map(|l| (0..=m).map(move |q| format!("x{}_{}", l + 1, q))).collect()
}

/// Coefficients `F_i^(j)` of `f_i(sum_q x^(q) t^q)` up to `t^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSystem<C: Coeff> {
    pub n: usize,
    pub m: usize,
    /// `gens[i][j] = F_i^(j)`.
    pub gens: Vec<Vec<Polynomial<C>>>,
}

impl<C: Coeff> JetSystem<C> {
    pub fn total_vars(&self) -> usize {
        self.n * (self.m + 1)
    }

    pub fn names(&self) -> Vec<String> {
        jet_var_names(self.n, self.m)
    }
}

type Series<C> = Vec<Polynomial<C>>;

fn series_mul<C: Coeff>(a: &Series<C>, b: &Series<C>) -> Series<C> {
    let m = a.len();
    let ctx = a[0].ctx().clone();
    let nv = a[0].nvars();
    (0..m)
        .map(|k| {
            let mut acc = Polynomial::zero(&ctx, nv);
            for i in 0..=k {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                acc = acc.add(&a[i].mul(&b[k - i]));
            }
            acc
        })
        .collect()
}

/// Expands one polynomial along the generic jet of level `m`.
pub fn jet_expand<C: Coeff>(f: &Polynomial<C>, m: usize) -> Series<C> {
    let n = f.nvars();
    let nv = n * (m + 1);
    let ctx = f.ctx();
    let x: Vec<Series<C>> =
        (0..n).map(|l| (0..=m).map(|q| Polynomial::var(ctx, nv, jet_var(l, q, m))).collect()).collect();
    let one: Series<C> =
        (0..=m).map(|q| if q == 0 { Polynomial::one(ctx, nv) } else { Polynomial::zero(ctx, nv) }).collect();
    let mut powers: Vec<Vec<Series<C>>> = x.iter().map(|s| vec![one.clone(), s.clone()]).collect();
    let mut acc: Series<C> = vec![Polynomial::zero(ctx, nv); m + 1];
    for (mon, c) in f.terms() {
        let mut t: Series<C> = one.iter().map(|p| p.scale(c)).collect();
        for (l, &e) in mon.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[l].len() <= e as usize {
                let next = series_mul(powers[l].last().unwrap(), &x[l]);
                powers[l].push(next);
            }
            t = series_mul(&t, &powers[l][e as usize]);
        }
        for (a, b) in acc.iter_mut().zip(&t) {
            *a = a.add(b);
        }
    }
    acc
}

pub fn jet_equations<C: Coeff>(a: &Ideal<C>, m: usize) -> Result<JetSystem<C>> {
    let gens = a.gens().iter().map(|f| jet_expand(f, m)).collect();
    Ok(JetSystem { n: a.nvars(), m, gens })
}

/// Generators of `Cont^{>= m_i}(a_i) ∩ pi^{-1}(0)` at level `M - 1`,
/// `M = max m_i`, after substituting `x_l^(0) = 0`. Variables are
/// `x_l^(q)` for `1 <= q <= M - 1`, numbered `l * (M - 1) + q - 1`.
pub fn contact_generators<C: Coeff>(n: usize, factors: &[(&Ideal<C>, u32)]) -> Vec<Polynomial<C>> {
    let big_m = factors.iter().map(|(_, m)| *m).max().unwrap_or(0) as usize;
    if big_m == 0 {
        return Vec::new();
    }
    let level = big_m - 1;
    let reduced = n * level;
    let mut out = Vec::new();
    for (a, mi) in factors {
        if *mi == 0 {
            continue;
        }
        let ctx = a.ctx();
        let images: Vec<Polynomial<C>> = (0..n)
            .flat_map(|l| {
                (0..=level).map(move |q| {
                    if q == 0 {
                        Polynomial::zero(ctx, reduced)
                    } else {
                        Polynomial::var(ctx, reduced, l * level + q - 1)
                    }
                })
            })
            .collect();
        for f in a.gens() {
            let series = jet_expand(f, level);
            for fj in series.iter().take(*mi as usize) {
                let g = if reduced == 0 {
                    // no variables left: F^(0) at the origin is the constant f(0)
                    Polynomial::constant(ctx, 0, fj.constant_term())
                } else {
                    fj.substitute(&images)
                };
                if !g.is_zero() {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn check_factors<C: Coeff>(n: usize, factors: &[(&Ideal<C>, u32)]) -> Result<()> {
    for (a, _) in factors {
        if a.nvars() != n {
            return Err(Error::RingMismatch(format!("ideal in {} variables, expected {n}", a.nvars())));
        }
    }
    Ok(())
}

/// Codimension of `∩ Cont^{>= m_i}(a_i) ∩ pi^{-1}(0)` in the arc space,
/// computed with Buchberger. `UnitIdeal` means the locus is empty.
pub fn contact_codim_groebner<C: FieldCoeff>(n: usize, factors: &[(&Ideal<C>, u32)], budget: usize) -> Result<usize> {
    check_factors(n, factors)?;
    let big_m = factors.iter().map(|(_, m)| *m).max().unwrap_or(0) as usize;
    if big_m == 0 {
        return Ok(n);
    }
    let gens = contact_generators(n, factors);
    let reduced = n * (big_m - 1);
    if gens.iter().any(|g| g.is_constant()) {
        return Err(Error::UnitIdeal);
    }
    let dim = if gens.is_empty() { reduced } else { ideal_dimension(reduced, &gens, budget)? };
    Ok(n * big_m - dim)
}

/// Same codimension for monomial ideals, by enumerating order vectors:
/// arcs with `ord x_l = o_l` (`o_l = M` meaning at least `M`) form a stratum
/// of codimension `sum o_l`, and lie in the locus iff every generator `x^e` of
/// factor `i` has `<e, o> >= m_i`.
pub fn contact_codim_monomial(n: usize, factors: &[(Vec<Vec<u32>>, u32)]) -> Result<usize> {
    let big_m = factors.iter().map(|(_, m)| *m).max().unwrap_or(0);
    if big_m == 0 {
        return Ok(n);
    }
    for (gens, mi) in factors {
        if *mi > 0 && gens.iter().any(|e| e.iter().all(|&v| v == 0)) {
            return Err(Error::UnitIdeal);
        }
    }
    let mut o = vec![1u32; n];
    let mut best: Option<u32> = None;
    loop {
        let feasible = factors.iter().all(|(gens, mi)| {
            gens.iter().all(|e| e.iter().zip(&o).map(|(a, b)| a * b).sum::<u32>() >= *mi)
        });
        if feasible {
            let s: u32 = o.iter().sum();
            best = Some(best.map_or(s, |b| b.min(s)));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(best.expect("o = (M, ..., M) is always feasible") as usize);
            }
            k -= 1;
            o[k] += 1;
            if o[k] <= big_m {
                break;
            }
            o[k] = 1;
        }
    }
}

/// Exponent vectors of a monomial ideal, or `None` if some generator is not a term.
pub fn monomial_exponents<C: Coeff>(a: &Ideal<C>) -> Option<Vec<Vec<u32>>> {
    a.gens().iter().map(|g| if g.is_term() { Some(g.terms()[0].0.exps().to_vec()) } else { None }).collect()
}

/// Contact codimension; monomial inputs take the combinatorial route.
pub fn contact_codim_at_origin<C: FieldCoeff>(n: usize, factors: &[(&Ideal<C>, u32)], budget: usize) -> Result<usize> {
    check_factors(n, factors)?;
    let mono: Option<Vec<(Vec<Vec<u32>>, u32)>> =
        factors.iter().map(|(a, m)| monomial_exponents(a).map(|e| (e, *m))).collect();
    match mono {
        Some(f) => contact_codim_monomial(n, &f),
        None => contact_codim_groebner(n, factors, budget),
    }
}

/// Result of a truncated estimator: the value and the level vector attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub value: BigRational,
    pub levels: Vec<u32>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Value of the mld estimator at one level vector; `None` if the locus is empty.
pub fn mld_term<C: FieldCoeff>(ma: &MultiIdeal<C>, levels: &[u32], budget: usize) -> Result<Option<BigRational>> {
    let factors: Vec<(&Ideal<C>, u32)> = ma.ideals().zip(levels.iter().copied()).collect();
    match contact_codim_at_origin(ma.nvars(), &factors, budget) {
        Ok(c) => {
            let mut v = rat(c as i64);
            for ((_, e), &m) in ma.factors().iter().zip(levels) {
                v -= e * rat(m as i64);
            }
            Ok(Some(v))
        }
        Err(Error::UnitIdeal) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `min_{m in {0..cap}^r} codim(m) - sum e_i m_i`, ties broken by the
/// lexicographically smallest `m`. An upper bound for the mld at the origin.
pub fn mld_estimate<C: FieldCoeff>(ma: &MultiIdeal<C>, cap: u32, budget: usize) -> Result<Estimate> {
    let r = ma.len();
    let mut m = vec![0u32; r];
    let mut best: Option<Estimate> = None;
    loop {
        if let Some(v) = mld_term(ma, &m, budget)? {
            if best.as_ref().is_none_or(|b| v < b.value) {
                best = Some(Estimate { value: v, levels: m.clone() });
            }
        }
        let mut k = r;
        loop {
            if k == 0 {
                return Ok(best.expect("m = 0 always contributes N"));
            }
            k -= 1;
            m[k] += 1;
            if m[k] <= cap {
                break;
            }
            m[k] = 0;
        }
    }
}

/// `min_{1 <= m <= cap} codim(Cont^{>=m}(a) ∩ pi^{-1}(0)) / m`.
pub fn lct_estimate_at_origin<C: FieldCoeff>(a: &Ideal<C>, cap: u32, budget: usize) -> Result<Estimate> {
    if !a.vanishes_at_origin() {
        return Err(Error::IdealNotAtOrigin);
    }
    if cap == 0 {
        return Err(Error::Unsupported("lct cap must be at least 1".into()));
    }
    let mut best: Option<Estimate> = None;
    for m in 1..=cap {
        let c = contact_codim_at_origin(a.nvars(), &[(a, m)], budget)?;
        let v = BigRational::new((c as i64).into(), (m as i64).into());
        if best.as_ref().is_none_or(|b| v < b.value) {
            best = Some(Estimate { value: v, levels: vec![m] });
        }
    }
    Ok(best.unwrap())
}

/// `ht a = n - dim`.
pub fn height_of_ideal<C: FieldCoeff>(a: &Ideal<C>, budget: usize) -> Result<usize> {
    ideal_height(a.nvars(), a.gens(), budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightComparison {
    pub height_p: usize,
    /// `None` when the lift generates the unit ideal (infinite height).
    pub height_q: Option<usize>,
}

impl HeightComparison {
    pub fn holds(&self) -> bool {
        self.height_q.is_none_or(|q| self.height_p <= q)
    }
}

/// Heights of `a` over `F_p` and of a lift `lifted` over `Q`; `lifted` must be
/// p-integral and reduce generator-wise to `a`.
pub fn compare_heights(a: &Ideal<Fp>, lifted: &Ideal<BigRational>, budget: usize) -> Result<HeightComparison> {
    let p = a.ctx().get();
    if lifted.gens().len() != a.gens().len() {
        return Err(Error::DimensionMismatch { expected: a.gens().len(), got: lifted.gens().len() });
    }
    for (f, g) in a.gens().iter().zip(lifted.gens()) {
        if &reduce_rational_mod_p(g, p)? != f {
            return Err(Error::Unsupported(format!("{g} does not reduce to {f} mod {p}")));
        }
    }
    let height_p = height_of_ideal(a, budget)?;
    let height_q = match height_of_ideal(lifted, budget) {
        Ok(h) => Some(h),
        Err(Error::UnitIdeal) => None,
        Err(e) => return Err(e),
    };
    Ok(HeightComparison { height_p, height_q })
}
