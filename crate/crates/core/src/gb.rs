//! Buchberger's algorithm in grevlex order, with a critical-pair budget, plus
//! the combinatorial dimension of a monomial ideal.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::polyring::{FieldCoeff, Monomial, Polynomial};

/// Default cap on the number of critical pairs reduced.
pub const DEFAULT_BUDGET: usize = 100_000;

/// Full normal form of `f` modulo `basis` (any generating list with nonzero members).
pub fn normal_form<C: FieldCoeff>(f: &Polynomial<C>, basis: &[Polynomial<C>]) -> Polynomial<C> {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, C)> = Vec::new();
    while let Some((m, c)) = p.leading_term().cloned() {
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero");
                let q = lm.quotient_of(&m).expect("divides");
                p = p.sub_mul_term(&c.div(lc), &q, g);
            }
            None => {
                p.pop_leading();
                rem.push((m, c));
            }
        }
    }
    Polynomial::from_sorted(f.ctx(), f.nvars(), rem)
}

/// The S-polynomial of `f` and `g`.
pub fn s_polynomial<C: FieldCoeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l).unwrap(), &cf.inv());
    let b = g.mul_term(&mg.quotient_of(&l).unwrap(), &cg.inv());
    a.sub(&b)
}

/// Reduced Gröbner basis, monic and sorted by increasing leading monomial.
/// The unit ideal yields `[1]`; the zero ideal yields an empty basis.
///
/// `budget` bounds the number of critical pairs whose S-polynomial is reduced.
pub fn groebner_basis<C: FieldCoeff>(gens: &[Polynomial<C>], budget: usize) -> Result<Vec<Polynomial<C>>> {
    let mut g: Vec<Polynomial<C>> = Vec::new();
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |p: Polynomial<C>,
                   g: &mut Vec<Polynomial<C>>,
                   pairs: &mut BTreeSet<(Monomial, usize, usize)>,
                   pending: &mut HashSet<(usize, usize)>| {
        let p = p.monic();
        let k = g.len();
        let lk = p.leading_monomial().unwrap().clone();
        for (i, gi) in g.iter().enumerate() {
            let li = gi.leading_monomial().unwrap();
            pairs.insert((li.lcm(&lk), i, k));
            pending.insert((i, k));
        }
        g.push(p);
    };

    for f in gens {
        let r = normal_form(f, &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(f.ctx(), f.nvars())]);
        }
        add(r, &mut g, &mut pairs, &mut pending);
    }

    let mut processed = 0usize;
    while let Some((lcm, i, j)) = pairs.pop_first() {
        pending.remove(&(i, j));
        let li = g[i].leading_monomial().unwrap();
        let lj = g[j].leading_monomial().unwrap();
        if li.is_coprime(lj) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let r = normal_form(&s_polynomial(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(r.ctx(), r.nvars())]);
        }
        add(r, &mut g, &mut pairs, &mut pending);
    }

    Ok(reduce_basis(g))
}

fn reduce_basis<C: FieldCoeff>(mut g: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    g.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial<C>> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<C>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let (lm, lc) = minimal[i].leading_term().unwrap().clone();
        let mut tail = minimal[i].clone();
        tail.pop_leading();
        let tail = normal_form(&tail, &others);
        let head = Polynomial::term(minimal[i].ctx(), lm, lc);
        out.push(head.add(&tail).monic());
    }
    out
}

/// Checks the Buchberger criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<C: FieldCoeff>(basis: &[Polynomial<C>]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !normal_form(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Checks that `basis` is a Gröbner basis and that every generator reduces to zero.
pub fn verify_basis<C: FieldCoeff>(gens: &[Polynomial<C>], basis: &[Polynomial<C>]) -> bool {
    is_groebner_basis(basis) && gens.iter().all(|f| normal_form(f, basis).is_zero())
}

pub fn is_unit_basis<C: FieldCoeff>(basis: &[Polynomial<C>]) -> bool {
    basis.iter().any(|p| p.is_constant())
}

/// Krull dimension of `k[x_1..x_n] / (gens)`.
pub fn ideal_dimension<C: FieldCoeff>(nvars: usize, gens: &[Polynomial<C>], budget: usize) -> Result<usize> {
    let basis = groebner_basis(gens, budget)?;
    if is_unit_basis(&basis) {
        return Err(Error::UnitIdeal);
    }
    let lms: Vec<Monomial> = basis.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
    Ok(monomial_dimension(nvars, &lms))
}

/// `nvars - dimension`.
pub fn ideal_height<C: FieldCoeff>(nvars: usize, gens: &[Polynomial<C>], budget: usize) -> Result<usize> {
    Ok(nvars - ideal_dimension(nvars, gens, budget)?)
}

/// Dimension of the monomial ideal generated by `gens`: the largest set of
/// variables containing the support of no generator. Panics on the unit monomial.
pub fn monomial_dimension(nvars: usize, gens: &[Monomial]) -> usize {
    let supports: Vec<u64> = gens.iter().map(support_mask).collect();
    assert!(supports.iter().all(|&s| s != 0), "unit monomial ideal has no dimension");
    nvars - min_hitting_set(&supports, nvars)
}

fn support_mask(m: &Monomial) -> u64 {
    assert!(m.nvars() <= 64, "at most 64 variables supported");
    m.support().fold(0u64, |acc, i| acc | (1 << i))
}

/// Size of the smallest variable set meeting every support.
fn min_hitting_set(supports: &[u64], nvars: usize) -> usize {
    let mut sets: Vec<u64> = supports.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    let mut best = nvars;
    search(&sets, 0, 0, &mut best);
    best
}

fn search(sets: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // Branch on the smallest support that is not hit yet.
    match sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones()) {
        None => *best = size,
        Some(&s) => {
            if size + 1 >= *best {
                return;
            }
            let mut bits = s;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                search(sets, chosen | b, size + 1, best);
                bits &= bits - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse::parse_poly_in;
    use crate::polyring::{default_names, Fp, Prime};
    use num_rational::BigRational;

    fn qp(s: &str, n: usize) -> Polynomial<BigRational> {
        parse_poly_in(s, &default_names(n), &()).unwrap()
    }

    #[test]
    fn monomial_input_is_its_own_basis() {
        let b = groebner_basis(&[qp("x1", 2), qp("x2", 2)], DEFAULT_BUDGET).unwrap();
        assert_eq!(b, vec![qp("x2", 2), qp("x1", 2)]);
    }

    #[test]
    fn basis_of_x2_xy_y2() {
        let gens = [qp("x1^2", 2), qp("x1*x2 + x2^2", 2)];
        let b = groebner_basis(&gens, DEFAULT_BUDGET).unwrap();
        assert!(verify_basis(&gens, &b));
        // y^3 = (y - x)(xy + y^2) + x^2 y
        assert!(normal_form(&qp("x2^3", 2), &b).is_zero());
        assert!(b.contains(&qp("x2^3", 2)));
        assert!(!normal_form(&qp("x2^2", 2), &b).is_zero());
    }

    #[test]
    fn reduced_basis_of_linear_input() {
        let b = groebner_basis(&[qp("x1 - x2", 2), qp("x2", 2)], DEFAULT_BUDGET).unwrap();
        assert_eq!(b, vec![qp("x2", 2), qp("x1", 2)]);
    }

    #[test]
    fn unit_ideal_detected() {
        let b = groebner_basis(&[qp("x1*x2 - 1", 2), qp("x1", 2)], DEFAULT_BUDGET).unwrap();
        assert!(is_unit_basis(&b));
        assert_eq!(ideal_dimension(2, &[qp("x1*x2 - 1", 2), qp("x1", 2)], 100), Err(Error::UnitIdeal));
    }

    #[test]
    fn dimensions() {
        assert_eq!(ideal_dimension(2, &[qp("x1", 2)], DEFAULT_BUDGET), Ok(1));
        assert_eq!(ideal_dimension(3, &[qp("x1*x2", 3), qp("x1*x3", 3)], DEFAULT_BUDGET), Ok(2));
        assert_eq!(ideal_dimension(2, &[qp("x1", 2), qp("x2", 2)], DEFAULT_BUDGET), Ok(0));
        assert_eq!(ideal_dimension::<BigRational>(3, &[], DEFAULT_BUDGET), Ok(3));
        // twisted cubic: dimension 1
        let tc = [qp("x1^2 - x2", 3), qp("x1^3 - x3", 3)];
        assert_eq!(ideal_dimension(3, &tc, DEFAULT_BUDGET), Ok(1));
    }

    #[test]
    fn frobenius_in_char_p() {
        let p = Prime::new(5).unwrap();
        let f: Polynomial<Fp> = parse_poly_in("(x1 + x2)^5 - x1^5 - x2^5", &default_names(2), &p).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn budget_is_enforced() {
        let gens = [qp("x1^3 - x2*x3", 3), qp("x2^2 - x1*x3", 3), qp("x3^2 - x1^2*x2", 3)];
        assert_eq!(groebner_basis(&gens, 0), Err(Error::BudgetExceeded(0)));
        let b = groebner_basis(&gens, DEFAULT_BUDGET).unwrap();
        assert!(verify_basis(&gens, &b));
    }
}
