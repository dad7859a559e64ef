//! The acceptance suite: seven criteria, each returning a pass/fail result
//! with a one-line detail. Shared by `selftest` and the `acceptance` test.

use std::time::{Duration, Instant};

use divlift::bridge::{bridge_construct, cross_characteristic_suite, shifted_log_discrepancy_check, verify_with_lift, BridgeReport};
use divlift::gb::{groebner_basis, ideal_dimension, is_groebner_basis, verify_basis};
use divlift::invariants::{toric_weight_search, WitnessSource};
use divlift::jets::{compare_heights, contact_generators, lct_estimate_at_origin, mld_estimate};
use divlift::polyring::lift::{lift_coefficientwise, lift_ideal_to_rational, lift_to_rational, reduce_mod_p, reduce_rational_mod_p};
use divlift::polyring::parse::parse_poly_in;
use divlift::polyring::{default_names, FieldCoeff, Fp, Ideal, Monomial, MultiIdeal, Polynomial, Prime};
use divlift::tower::{CenterSpec, Tower};
use divlift::{Error, ErrorKind};
use num_rational::BigRational;
use rand::Rng;

use crate::corpus::{random_poly, rng, BridgeCase, CaseStream, CORPUS_SEED};
use crate::run::{kind_code, Options};

pub const CORPUS_SIZE: usize = 24;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {} ({}): {} [{:.2}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn timed(id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> CriterionResult {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded time limit of {}s", limit.as_secs());
        }
    }
    CriterionResult { id, name: name.to_string(), passed, detail, elapsed }
}

fn ideal_of<C: FieldCoeff>(ctx: &C::Ctx, n: usize, gens: &[&str]) -> Ideal<C> {
    let names = default_names(n);
    Ideal::new(ctx, n, gens.iter().map(|s| parse_poly_in(s, &names, ctx).expect("valid literal")).collect())
        .expect("nonzero literal ideal")
}

/// Bridge runs over the generated corpus.
pub struct Corpus {
    pub cases: Vec<BridgeCase>,
    pub reports: Vec<BridgeReport>,
    /// Cases dropped because the small field had no admissible point.
    pub no_point: Vec<String>,
    pub failures: Vec<String>,
}

/// Draws cases until `size` bridge runs succeed; `GeneralPointNotFound` cases
/// are set aside, any other error is a failure.
pub fn build_corpus(size: usize) -> Corpus {
    let mut c = Corpus { cases: Vec::new(), reports: Vec::new(), no_point: Vec::new(), failures: Vec::new() };
    for case in CaseStream::new(CORPUS_SEED) {
        if c.reports.len() >= size || c.cases.len() + c.no_point.len() >= 4 * size {
            break;
        }
        match bridge_construct(&case.tower, &case.ideals) {
            Ok(r) => {
                c.reports.push(r);
                c.cases.push(case);
            }
            Err(Error::GeneralPointNotFound { .. }) => c.no_point.push(case.label),
            Err(e) => {
                c.failures.push(format!("{}: {}: {e}", case.label, e.code()));
                c.cases.push(case);
            }
        }
    }
    c
}

pub fn criterion_1(corpus: &Corpus, build_time: Duration) -> CriterionResult {
    let start = Instant::now();
    let mut r = timed(1, "bridge identities", None, || {
        if !corpus.failures.is_empty() {
            return Err(format!("bridge failures: {}", corpus.failures.join("; ")));
        }
        if corpus.reports.len() < 20 {
            return Err(format!("only {} successful cases", corpus.reports.len()));
        }
        let mut checked = 0;
        for (case, rep) in corpus.cases.iter().zip(&corpus.reports) {
            let shift = 2 * (rep.n as u64 - 1);
            if rep.k_f != shift + rep.k_e {
                return Err(format!("{}: k_F={} but 2(N-1)+k_E={}", case.label, rep.k_f, shift + rep.k_e));
            }
            // recompute valuations from scratch on both sides
            for (a, la) in rep.ideals.iter().zip(&rep.lifted_ideals) {
                let ve = case.tower.valuation(rep.divisor, a).map_err(|e| e.to_string())?;
                let vf = rep.lifted_tower().valuation(rep.f, la).map_err(|e| e.to_string())?;
                if ve != vf {
                    return Err(format!("{}: v_E={ve} v_F={vf}", case.label));
                }
                checked += 1;
            }
            if !rep.self_consistent() {
                return Err(format!("{}: report not self-consistent", case.label));
            }
        }
        let n3 = corpus.reports.iter().filter(|r| r.n == 3).count();
        let corrected: usize = corpus.reports.iter().map(|r| r.corrected.len()).sum();
        let repaired = corpus.reports.iter().filter(|r| !r.lift.repaired.is_empty()).count();
        Ok(format!(
            "{} cases ({} with N=3), {checked} valuation identities, {corrected} corrected lift generators, {repaired} repaired towers, {} cases without an admissible point over F_5 set aside",
            corpus.reports.len(),
            n3,
            corpus.no_point.len()
        ))
    });
    r.elapsed = build_time + start.elapsed();
    if r.elapsed > Duration::from_secs(60) {
        r.passed = false;
        r.detail.push_str("; exceeded time limit of 60s");
    }
    r
}

pub fn criterion_2(corpus: &Corpus) -> CriterionResult {
    timed(2, "shifted log discrepancy", None, || {
        let vectors = [vec![q(1), q(1)], vec![half(), half()], vec![q(1), q(2)]];
        let mut checked = 0;
        for rep in &corpus.reports {
            let out = shifted_log_discrepancy_check(rep, &vectors).map_err(|e| format!("{}: {e}", e.code()))?;
            let shift = q(2 * (rep.n as i64 - 1));
            for s in &out.shifted {
                if s.a_q != &s.a_p + &shift {
                    return Err(format!("a_Q={} a_p={} for e={:?}", s.a_q, s.a_p, s.exponents));
                }
                checked += 1;
            }
        }
        if checked == 0 {
            return Err("no reports".into());
        }
        Ok(format!("{checked} exponent vectors over {} cases", corpus.reports.len()))
    })
}

pub fn criterion_3(opts: &Options) -> CriterionResult {
    timed(3, "jets golden values", Some(Duration::from_secs(10)), || {
        let budget = opts.gb_budget;
        let p5 = Prime::new(5).unwrap();
        let mut out = Vec::new();
        for n in [2usize, 3] {
            let vp = lct_estimate_at_origin(&Ideal::<Fp>::maximal(&p5, n), 4, budget).map_err(|e| e.to_string())?;
            let vq = lct_estimate_at_origin(&Ideal::<BigRational>::maximal(&(), n), 4, budget).map_err(|e| e.to_string())?;
            if vp.value != q(n as i64) || vq.value != q(n as i64) {
                return Err(format!("lct(m in A^{n}) = {} over F_5, {} over Q", vp.value, vq.value));
            }
            out.push(format!("lct(m_{n})={n}"));
        }
        let cusp_q: Ideal<BigRational> = ideal_of(&(), 2, &["x1^2", "x2^3"]);
        let cusp_p: Ideal<Fp> = ideal_of(&p5, 2, &["x1^2", "x2^3"]);
        let five_sixths = BigRational::new(5.into(), 6.into());
        for est in [
            lct_estimate_at_origin(&cusp_q, 6, budget).map_err(|e| e.to_string())?,
            lct_estimate_at_origin(&cusp_p, 6, budget).map_err(|e| e.to_string())?,
        ] {
            if est.value != five_sixths {
                return Err(format!("lct(x^2,y^3) = {}", est.value));
            }
        }
        let mld = mld_estimate(&MultiIdeal::single(Ideal::<BigRational>::maximal(&(), 2)), 3, budget)
            .map_err(|e| e.to_string())?;
        if mld.value != q(1) {
            return Err(format!("mld((x,y)) = {}", mld.value));
        }
        let toric = toric_weight_search(&cusp_q, 6).map_err(|e| e.to_string())?;
        if toric.z != five_sixths || toric.source != WitnessSource::Weights(vec![3, 2]) {
            return Err(format!("toric search gave {} at {:?}", toric.z, toric.source));
        }
        Ok(format!("{}, lct(x^2,y^3)=5/6 on both routes, mld((x,y))=1, toric 5/6 at (3,2)", out.join(", ")))
    })
}

/// Ideals for the cross-characteristic comparison, with their primes.
pub fn crosschar_inputs() -> Vec<(u64, usize, Vec<&'static str>)> {
    vec![
        (5, 2, vec!["x1", "x2"]),
        (5, 2, vec!["x1^5 + x2^2"]),
        (7, 2, vec!["x1^2 + x2^3"]),
        (3, 2, vec!["x1^3 + x2^3"]),
        (2, 2, vec!["x1^2 + x2^2"]),
        (5, 2, vec!["x1*x2 + x1^3"]),
        (5, 2, vec!["x1^2", "x2^3"]),
        (5, 2, vec!["x1^2*x2 + x2^4"]),
        (7, 2, vec!["x1^7 + x2^3"]),
        (2, 2, vec!["x1^3 + x1*x2 + x2^2"]),
        (3, 3, vec!["x1*x2", "x2*x3"]),
        (2, 3, vec!["x1^2 + x2*x3"]),
    ]
}

pub fn criterion_4(opts: &Options) -> CriterionResult {
    timed(4, "cross-characteristic inequality", Some(Duration::from_secs(300)), || {
        let mut budget_cells = 0;
        let mut strict = 0;
        let mut cells = 0;
        let inputs = crosschar_inputs();
        for (p, n, gens) in &inputs {
            let prime = Prime::new(*p).unwrap();
            let a: Ideal<Fp> = ideal_of(&prime, *n, gens);
            let r = cross_characteristic_suite(&MultiIdeal::single(a), &[4], opts.gb_budget).map_err(|e| e.to_string())?;
            if !r.violations.is_empty() {
                return Err(format!("{gens:?} over F_{p}: codim_p > codim_Q at {:?}", r.violations));
            }
            if !r.estimates_ordered() {
                return Err(format!("{gens:?} over F_{p}: estimates out of order"));
            }
            budget_cells += r.budget_cells();
            cells += r.cells.len();
            strict += r.cells.iter().filter(|c| c.codim_p != c.codim_q).count();
        }
        Ok(format!(
            "{} ideals, {cells} cells, {strict} strict (char-p drops), {budget_cells} budget-limited",
            inputs.len()
        ))
    })
}

/// Dimension of a monomial ideal by brute force over variable subsets.
pub fn brute_force_dimension(n: usize, gens: &[Vec<u32>]) -> usize {
    (0u32..1 << n)
        .filter(|&s| gens.iter().all(|g| g.iter().enumerate().any(|(j, &e)| e > 0 && s & (1 << j) == 0)))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

fn check_basis<C: FieldCoeff>(gens: &[Polynomial<C>], budget: usize) -> Result<(), String> {
    let basis = groebner_basis(gens, budget).map_err(|e| e.to_string())?;
    if !is_groebner_basis(&basis) || !verify_basis(gens, &basis) {
        return Err(format!("basis of {} generators failed verification", gens.len()));
    }
    Ok(())
}

pub fn criterion_5(corpus: &Corpus, opts: &Options) -> CriterionResult {
    timed(5, "oracle equivalences", None, || {
        let mut r = rng(CORPUS_SEED ^ 5);
        let p = Prime::new(5).unwrap();
        for trial in 0..100 {
            let n = r.gen_range(1..=8);
            let k = r.gen_range(1..=6);
            let gens: Vec<Vec<u32>> = (0..k)
                .map(|_| loop {
                    let e: Vec<u32> = (0..n).map(|_| if r.gen_bool(0.3) { r.gen_range(1..=3) } else { 0 }).collect();
                    if e.iter().any(|&x| x > 0) {
                        break e;
                    }
                })
                .collect();
            let polys: Vec<Polynomial<Fp>> =
                gens.iter().map(|e| Polynomial::term(&p, Monomial::from_exps(e.clone()), Fp::new(&p, 1))).collect();
            let d = ideal_dimension(n, &polys, opts.gb_budget).map_err(|e| e.to_string())?;
            let b = brute_force_dimension(n, &gens);
            if d != b {
                return Err(format!("trial {trial}: dimension {d} vs brute force {b} for {gens:?}"));
            }
        }
        let mut bases = 0;
        for rep in &corpus.reports {
            for (a, la) in rep.ideals.iter().zip(&rep.lifted_ideals) {
                check_basis(a.gens(), opts.gb_budget)?;
                check_basis(la.gens(), opts.gb_budget)?;
                bases += 2;
            }
        }
        for (pp, n, gens) in crosschar_inputs() {
            let prime = Prime::new(pp).unwrap();
            let a: Ideal<Fp> = ideal_of(&prime, n, &gens);
            let la = lift_ideal_to_rational(&a).map_err(|e| e.to_string())?;
            for m in 2..=3 {
                check_basis(&contact_generators(n, &[(&a, m)]), opts.gb_budget)?;
                check_basis(&contact_generators(n, &[(&la, m)]), opts.gb_budget)?;
                bases += 2;
            }
        }
        for i in 0..1000 {
            let prime = Prime::new(if i % 2 == 0 { 5 } else { 101 }).unwrap();
            let n = r.gen_range(1..=4);
            let f = random_poly(&mut r, &prime, n, 6, 0, 5);
            let via_q = reduce_rational_mod_p(&lift_to_rational(&f), prime.get()).map_err(|e| e.to_string())?;
            let via_z = reduce_mod_p(&lift_coefficientwise(&f), prime.get()).map_err(|e| e.to_string())?;
            if via_q != f || via_z != f {
                return Err(format!("reduce(lift({f})) differs"));
            }
        }
        Ok(format!("100 monomial dimensions, {bases} verified bases, 1000 reduce-lift round trips"))
    })
}

fn sibling_targets(t: &Tower<Fp>, chart: usize) -> Vec<usize> {
    match t.charts()[chart].link.as_ref() {
        None => Vec::new(),
        Some(l) => t.steps()[l.step].charts.iter().copied().filter(|&c| c != chart).collect(),
    }
}

fn prefix(t: &Tower<Fp>, len: usize) -> Result<Tower<Fp>, Error> {
    let mut out = Tower::new(t.n(), t.ctx())?.with_budget(t.budget());
    for s in &t.steps()[..len] {
        out = out.blow_up(s.center.clone())?.0;
    }
    Ok(out)
}

pub fn criterion_6(corpus: &Corpus, opts: &Options) -> CriterionResult {
    timed(6, "structural invariants", None, || {
        let mut r = rng(CORPUS_SEED ^ 6);
        let mut pairs = 0;
        for (case, rep) in corpus.cases.iter().zip(&corpus.reports) {
            let t = &case.tower;
            let e = rep.divisor;
            let p = *t.ctx();
            for _ in 0..200 {
                let f = random_poly(&mut r, &p, t.n(), 3, 0, 3);
                let g = random_poly(&mut r, &p, t.n(), 3, 0, 3);
                let (vf, vg) = (t.valuation_poly(e, &f).unwrap(), t.valuation_poly(e, &g).unwrap());
                let vfg = t.valuation_poly(e, &f.mul(&g)).unwrap();
                if vfg != vf + vg {
                    return Err(format!("{}: v({f} * {g}) = {vfg}, expected {vf} + {vg}", case.label));
                }
                pairs += 1;
            }
        }

        let mut visible = 0;
        for (case, rep) in corpus.cases.iter().zip(&corpus.reports) {
            for t in [&case.tower, &rep.tower] {
                for (i, step) in t.steps().iter().enumerate() {
                    let base = prefix(t, i).map_err(|e| e.to_string())?;
                    for target in sibling_targets(&base, step.center.chart) {
                        let Some(other) = base.sibling_center(&step.center, target) else { continue };
                        let (t1, e1) = base.blow_up(step.center.clone()).map_err(|e| e.to_string())?;
                        let (t2, e2) = base
                            .blow_up(other.clone())
                            .map_err(|e| format!("{}: sibling center rejected: {e}", case.label))?;
                        if t1.divisor(e1).unwrap().k != t2.divisor(e2).unwrap().k {
                            return Err(format!("{}: k differs between charts at step {}", case.label, i + 1));
                        }
                        let mut test_ideals = rep.ideals.clone();
                        test_ideals.push(Ideal::maximal(t.ctx(), t.n()));
                        for a in &test_ideals {
                            if t1.valuation(e1, a).unwrap() != t2.valuation(e2, a).unwrap() {
                                return Err(format!("{}: v differs between charts at step {}", case.label, i + 1));
                            }
                        }
                        visible += 1;
                    }
                }
            }
        }
        if visible == 0 {
            return Err("no center of the corpus is visible in two charts".into());
        }

        let mut suspended = 0;
        for (case, rep) in corpus.cases.iter().zip(&corpus.reports) {
            for a in &rep.ideals {
                let (st, sa) = case.tower.suspend(a).map_err(|e| e.to_string())?;
                for d in case.tower.divisors() {
                    let (v, vs) = (case.tower.valuation(d.id, a).unwrap(), st.valuation(d.id, &sa).unwrap());
                    if v != vs {
                        return Err(format!("{}: suspension changes v_E{} from {v} to {vs}", case.label, d.id));
                    }
                    suspended += 1;
                }
            }
        }

        let mut heights = 0;
        for i in 0..50 {
            let prime = Prime::new([2, 3, 5][i % 3]).unwrap();
            let n = 2 + (i / 3) % 2;
            let k = r.gen_range(1..=3);
            let mut gens: Vec<Polynomial<Fp>> = (0..k).map(|_| random_poly(&mut r, &prime, n, 3, 1, 3)).collect();
            if i % 5 == 0 {
                // a p-th power binomial, where characteristic p can lower the height
                let pp = prime.get() as u32;
                gens.push(Polynomial::var(&prime, n, 0).pow(pp).add(&Polynomial::var(&prime, n, 1).pow(pp)));
            }
            let a = Ideal::new(&prime, n, gens).map_err(|e| e.to_string())?;
            let la = lift_ideal_to_rational(&a).map_err(|e| e.to_string())?;
            match compare_heights(&a, &la, opts.gb_budget) {
                Ok(h) if h.holds() => heights += 1,
                Ok(h) => return Err(format!("ht over F_{} = {} > ht of lift {:?}", prime.get(), h.height_p, h.height_q)),
                // the unit ideal over F_p has no height to compare
                Err(Error::UnitIdeal) => heights += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
        Ok(format!(
            "{pairs} additivity pairs, {visible} two-chart centers, {suspended} suspended valuations, {heights} height comparisons"
        ))
    })
}

/// Perturbed lifts of the first ideal of a report; each must be rejected.
pub fn perturbations(rep: &BridgeReport) -> Vec<(String, Ideal<BigRational>)> {
    let n = rep.n;
    let la = &rep.lifted_ideals[0];
    let mut out = Vec::new();
    let mut gens = la.gens().to_vec();
    let extra = Polynomial::term(&(), Monomial::var_pow(n, 0, 5).with_exp(n - 1, 1), q(1));
    gens[0] = gens[0].add(&extra);
    out.push(("added term".to_string(), Ideal::new(&(), n, gens).unwrap()));

    let g0 = &la.gens()[0];
    let dropped = Polynomial::from_terms(&(), n, g0.terms()[1..].iter().cloned());
    let mut gens = la.gens().to_vec();
    if dropped.is_zero() {
        gens.remove(0);
    } else {
        gens[0] = dropped;
    }
    if !gens.is_empty() {
        out.push(("dropped term".to_string(), Ideal::new(&(), n, gens).unwrap()));
    }

    // p times the coordinate of least valuation along F, when that valuation
    // is below v_E of the ideal
    let tq = rep.lifted_tower();
    let v = rep.valuations[0].v_e;
    let best = (0..n)
        .map(|j| (tq.valuation_poly(rep.f, &Polynomial::var(&(), n, j)).unwrap(), j))
        .min()
        .unwrap();
    if best.0 < v {
        let mut gens = la.gens().to_vec();
        gens[0] = gens[0].add(&Polynomial::var(&(), n, best.1).scale(&q(rep.p as i64)));
        out.push(("p-multiple of a low-valuation term".to_string(), Ideal::new(&(), n, gens).unwrap()));
    }
    out
}

/// Over `F_2`, every point of `E_1` in its home chart lies on the weak
/// transform of `(x1 x2 + x2^2)`, so no admissible point exists.
pub fn saturating_case() -> (Tower<Fp>, Ideal<Fp>) {
    let p2 = Prime::new(2).unwrap();
    let t = Tower::new(2, &p2).unwrap().blow_up(CenterSpec::origin(&p2, 0, 2)).unwrap().0;
    (t, ideal_of(&p2, 2, &["x1*x2 + x2^2"]))
}

pub fn criterion_7(corpus: &Corpus) -> CriterionResult {
    timed(7, "failure behavior", None, || {
        let (t, a) = saturating_case();
        match bridge_construct(&t, &[a]) {
            Err(e @ Error::GeneralPointNotFound { .. }) if kind_code(e.kind()) == 3 => {}
            Err(e) => return Err(format!("F_2 case gave {}: {e}", e.code())),
            Ok(_) => return Err("F_2 case produced a report".into()),
        }
        let mut rejected = 0;
        for rep in &corpus.reports {
            for (what, bad) in perturbations(rep) {
                let mut lifts = rep.lifted_ideals.clone();
                lifts[0] = bad;
                match verify_with_lift(rep, &lifts) {
                    Err(e @ Error::BridgeIdentityFailed(_)) if e.kind() == ErrorKind::Check && kind_code(e.kind()) == 1 => {
                        rejected += 1
                    }
                    Err(e) => return Err(format!("{what}: unexpected {}: {e}", e.code())),
                    Ok(_) => return Err(format!("{what}: perturbed lift accepted")),
                }
            }
        }
        Ok(format!("GeneralPointNotFound over F_2, {rejected} perturbed lifts rejected"))
    })
}

/// Runs every criterion in order.
pub fn run_all(opts: &Options) -> Vec<CriterionResult> {
    let start = Instant::now();
    let corpus = build_corpus(CORPUS_SIZE);
    let build = start.elapsed();
    vec![
        criterion_1(&corpus, build),
        criterion_2(&corpus),
        criterion_3(opts),
        criterion_4(opts),
        criterion_5(&corpus, opts),
        criterion_6(&corpus, opts),
        criterion_7(&corpus),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_dimension_examples() {
        assert_eq!(brute_force_dimension(2, &[vec![1, 0], vec![0, 1]]), 0);
        assert_eq!(brute_force_dimension(3, &[vec![1, 1, 0]]), 2);
        assert_eq!(brute_force_dimension(3, &[vec![1, 0, 0], vec![0, 1, 1]]), 1);
    }
}
