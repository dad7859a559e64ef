use divlift::gb::{groebner_basis, ideal_dimension, is_groebner_basis, monomial_dimension, verify_basis};
use divlift::invariants::log_discrepancy;
use divlift::jets::{contact_codim_groebner, contact_codim_monomial, jet_expand, lct_estimate_at_origin};
use divlift::polyring::lift::{lift_coefficientwise, lift_to_rational, reduce_mod_p};
use divlift::polyring::{Fp, Ideal, Monomial, MultiIdeal, Polynomial, Prime, ZPoly};
use divlift::tower::{CenterSpec, Tower};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const BUDGET: usize = 100_000;

fn terms(n: usize, max_deg: u32) -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 0u64..1000), 1..5)
}

fn fp_poly(p: &Prime, n: usize, ts: &[(Vec<u32>, u64)]) -> Polynomial<Fp> {
    Polynomial::from_terms(p, n, ts.iter().map(|(e, c)| (Monomial::from_exps(e.clone()), Fp::new(p, *c))))
}

fn z_poly(n: usize, ts: &[(Vec<u32>, i64)]) -> ZPoly {
    Polynomial::from_terms(&(), n, ts.iter().map(|(e, c)| (Monomial::from_exps(e.clone()), BigInt::from(*c))))
}

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7, 101]).prop_map(|p| Prime::new(p).unwrap())
}

/// Origin blow-up followed by the origin of chart 1, in A^2.
fn small_tower(p: &Prime) -> (Tower<Fp>, usize) {
    let (t, _) = Tower::new(2, p).unwrap().blow_up(CenterSpec::origin(p, 0, 2)).unwrap();
    let (t, e) = t.blow_up(CenterSpec::origin(p, 1, 2)).unwrap();
    (t, e)
}

fn monomial_ideal() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1usize..=3).prop_flat_map(|n| {
        let gen = prop::collection::vec(0u32..=3, n).prop_filter("nonconstant", |e| e.iter().any(|&x| x > 0));
        (Just(n), prop::collection::vec(gen, 1..=3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_inverts_lift(p in prime(), ts in terms(3, 4)) {
        let f = fp_poly(&p, 3, &ts);
        let lifted = lift_coefficientwise(&f);
        prop_assert_eq!(reduce_mod_p(&lifted, p.get()).unwrap(), f.clone());
        prop_assert_eq!(lifted.support(), f.support());
    }

    #[test]
    fn reduction_is_a_ring_map(
        p in prime(),
        a in prop::collection::vec((prop::collection::vec(0u32..=3, 2), -50i64..50), 1..4),
        b in prop::collection::vec((prop::collection::vec(0u32..=3, 2), -50i64..50), 1..4),
    ) {
        let (f, g) = (z_poly(2, &a), z_poly(2, &b));
        let (fp, gp) = (reduce_mod_p(&f, p.get()).unwrap(), reduce_mod_p(&g, p.get()).unwrap());
        prop_assert_eq!(reduce_mod_p(&f.mul(&g), p.get()).unwrap(), fp.mul(&gp));
        prop_assert_eq!(reduce_mod_p(&f.add(&g), p.get()).unwrap(), fp.add(&gp));
    }

    #[test]
    fn order_at_point_is_additive(p in prime(), a in terms(2, 3), b in terms(2, 3), q in prop::collection::vec(0u64..7, 2)) {
        let (f, g) = (fp_poly(&p, 2, &a), fp_poly(&p, 2, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let pt: Vec<Fp> = q.iter().map(|&c| Fp::new(&p, c)).collect();
        let of = f.order_at_point(&pt).unwrap();
        let og = g.order_at_point(&pt).unwrap();
        prop_assert_eq!(f.mul(&g).order_at_point(&pt).unwrap(), of + og);
    }

    #[test]
    fn lifting_preserves_order_at_origin(p in prime(), ts in terms(3, 4)) {
        let f = fp_poly(&p, 3, &ts);
        prop_assume!(!f.is_zero());
        let q0 = vec![BigRational::from_integer(0.into()); 3];
        prop_assert_eq!(f.order_at_point(&[Fp::new(&p, 0); 3]).unwrap(), lift_to_rational(&f).order_at_point(&q0).unwrap());
    }

    #[test]
    fn valuation_is_additive_and_ultrametric(p in prime(), a in terms(2, 3), b in terms(2, 3)) {
        let (t, e) = small_tower(&p);
        let (f, g) = (fp_poly(&p, 2, &a), fp_poly(&p, 2, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (vf, vg) = (t.valuation_poly(e, &f).unwrap(), t.valuation_poly(e, &g).unwrap());
        prop_assert_eq!(t.valuation_poly(e, &f.mul(&g)).unwrap(), vf + vg);
        let s = f.add(&g);
        if !s.is_zero() {
            prop_assert!(t.valuation_poly(e, &s).unwrap() >= vf.min(vg));
        }
    }

    #[test]
    fn ideal_valuation_of_products(p in prime(), a in terms(2, 3), b in terms(2, 3), c in terms(2, 3)) {
        let (t, e) = small_tower(&p);
        let (f, g, h) = (fp_poly(&p, 2, &a), fp_poly(&p, 2, &b), fp_poly(&p, 2, &c));
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let ia = Ideal::new(&p, 2, vec![f, g]).unwrap();
        let ib = Ideal::new(&p, 2, vec![h]).unwrap();
        let sum = t.valuation(e, &ia).unwrap() + t.valuation(e, &ib).unwrap();
        prop_assert_eq!(t.valuation(e, &ia.product(&ib)).unwrap(), sum);
        for d in t.divisors() {
            prop_assert!(t.valuation(d.id, &Ideal::maximal(&p, 2)).unwrap() >= 1);
        }
    }

    #[test]
    fn log_discrepancy_scales_linearly(p in prime(), ts in terms(2, 3), num in 1i64..6, den in 1i64..6) {
        let (t, e) = small_tower(&p);
        let f = fp_poly(&p, 2, &ts);
        prop_assume!(!f.is_zero());
        let lambda = BigRational::new(num.into(), den.into());
        let a = Ideal::new(&p, 2, vec![f]).unwrap();
        let r = log_discrepancy(&t, e, &MultiIdeal::with_exponent(a.clone(), lambda.clone())).unwrap();
        let v = t.valuation(e, &a).unwrap();
        let k = t.divisor(e).unwrap().k;
        let expected = BigRational::from_integer((k + 1).into()) - lambda * BigRational::from_integer(v.into());
        prop_assert_eq!(r.a.clone(), expected);
        prop_assert_eq!(r.recompute(), r.a);
    }

    #[test]
    fn jet_expansion_is_multiplicative(a in terms(2, 2), b in terms(2, 2), m in 1usize..=3) {
        let p = Prime::new(7).unwrap();
        let (f, g) = (fp_poly(&p, 2, &a), fp_poly(&p, 2, &b));
        let (sf, sg) = (jet_expand(&f, m), jet_expand(&g, m));
        let sfg = jet_expand(&f.mul(&g), m);
        for j in 0..=m {
            let mut c = Polynomial::zero(&p, sfg[j].nvars());
            for i in 0..=j {
                c = c.add(&sf[i].mul(&sg[j - i]));
            }
            prop_assert_eq!(&sfg[j], &c);
        }
    }

    #[test]
    fn monomial_dimension_matches_groebner((n, gens) in monomial_ideal()) {
        let p = Prime::new(5).unwrap();
        let polys: Vec<Polynomial<Fp>> =
            gens.iter().map(|e| Polynomial::term(&p, Monomial::from_exps(e.clone()), Fp::new(&p, 1))).collect();
        let mons: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exps(e.clone())).collect();
        prop_assert_eq!(monomial_dimension(n, &mons), ideal_dimension(n, &polys, BUDGET).unwrap());
    }

    #[test]
    fn contact_codim_routes_agree_and_grow((n, gens) in monomial_ideal(), m in 1u32..=3) {
        prop_assume!(n <= 2);
        let p = Prime::new(5).unwrap();
        let polys: Vec<Polynomial<Fp>> =
            gens.iter().map(|e| Polynomial::term(&p, Monomial::from_exps(e.clone()), Fp::new(&p, 1))).collect();
        let a = Ideal::new(&p, n, polys).unwrap();
        let by_gb = contact_codim_groebner(n, &[(&a, m)], BUDGET).unwrap();
        let by_mono = contact_codim_monomial(n, &[(gens.clone(), m)]).unwrap();
        prop_assert_eq!(by_gb, by_mono);
        prop_assert!(contact_codim_monomial(n, &[(gens, m + 1)]).unwrap() >= by_mono);
    }

    #[test]
    fn groebner_bases_verify(p in prime(), a in terms(2, 3), b in terms(2, 3)) {
        let gens = vec![fp_poly(&p, 2, &a), fp_poly(&p, 2, &b)];
        let basis = groebner_basis(&gens, BUDGET).unwrap();
        prop_assert!(is_groebner_basis(&basis));
        prop_assert!(verify_basis(&gens, &basis));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lct_estimate_decreases_with_cap((n, gens) in monomial_ideal()) {
        let p = Prime::new(5).unwrap();
        let polys: Vec<Polynomial<Fp>> =
            gens.iter().map(|e| Polynomial::term(&p, Monomial::from_exps(e.clone()), Fp::new(&p, 1))).collect();
        let a = Ideal::new(&p, n, polys).unwrap();
        let mut prev = None;
        for cap in 1..=4 {
            let v = lct_estimate_at_origin(&a, cap, BUDGET).unwrap().value;
            if let Some(prev) = prev {
                prop_assert!(v <= prev);
            }
            prev = Some(v);
        }
    }
}
