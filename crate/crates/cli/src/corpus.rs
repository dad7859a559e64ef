//! Seeded random towers and ideals for the acceptance suite.

use divlift::polyring::{Fp, Ideal, Monomial, Polynomial, Prime};
use divlift::tower::{CenterSpec, Tower};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone)]
pub struct BridgeCase {
    pub label: String,
    pub tower: Tower<Fp>,
    /// Two factors: the maximal or a monomial ideal, then a sparse one.
    pub ideals: Vec<Ideal<Fp>>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_exps(rng: &mut ChaCha8Rng, n: usize, min_deg: u32, max_deg: u32) -> Vec<u32> {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    e
}

fn unit(rng: &mut ChaCha8Rng, p: &Prime) -> Fp {
    Fp::new(p, rng.gen_range(1..p.get()))
}

/// A polynomial with up to `terms` terms of degree `min_deg..=max_deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, p: &Prime, n: usize, terms: usize, min_deg: u32, max_deg: u32) -> Polynomial<Fp> {
    loop {
        let k = rng.gen_range(1..=terms);
        let ts: Vec<(Monomial, Fp)> =
            (0..k).map(|_| (Monomial::from_exps(random_exps(rng, n, min_deg, max_deg)), unit(rng, p))).collect();
        let f = Polynomial::from_terms(p, n, ts);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_monomial_ideal(rng: &mut ChaCha8Rng, p: &Prime, n: usize) -> Ideal<Fp> {
    let k = rng.gen_range(1..=3);
    let gens = (0..k)
        .map(|_| Polynomial::term(p, Monomial::from_exps(random_exps(rng, n, 1, 4)), Fp::new(p, 1)))
        .collect();
    Ideal::new(p, n, gens).expect("nonzero generators")
}

pub fn random_sparse_ideal(rng: &mut ChaCha8Rng, p: &Prime, n: usize) -> Ideal<Fp> {
    let k = rng.gen_range(1..=2);
    let gens = (0..k).map(|_| random_poly(rng, p, n, 4, 1, 4)).collect();
    Ideal::new(p, n, gens).expect("nonzero generators")
}

fn random_center(rng: &mut ChaCha8Rng, t: &Tower<Fp>) -> CenterSpec<Fp> {
    let p = t.ctx();
    let n = t.n();
    let last = t.steps().last().expect("first step is in place");
    let chart = if rng.gen_bool(0.8) { *last.charts.choose(rng).unwrap() } else { rng.gen_range(0..t.charts().len()) };
    let pivot = t.charts()[chart].link.as_ref().map(|l| l.pivot);
    let coords: Vec<usize> = if rng.gen_bool(0.5) || n == 2 {
        (0..n).collect()
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(rng);
        let mut s = all[..rng.gen_range(2..n)].to_vec();
        // keep the exceptional coordinate in play most of the time
        if let Some(pv) = pivot {
            if !s.contains(&pv) && rng.gen_bool(0.7) {
                s[0] = pv;
            }
        }
        s.sort_unstable();
        s
    };
    let constraints = coords
        .into_iter()
        .map(|j| {
            let zero = Some(j) == pivot || rng.gen_bool(0.5);
            (j, if zero { Fp::new(p, 0) } else { unit(rng, p) })
        })
        .collect();
    CenterSpec::new(chart, constraints).expect("distinct coordinates")
}

/// A tower of depth `1..=4` starting at the origin whose last divisor lies
/// over the origin.
pub fn random_tower(rng: &mut ChaCha8Rng, p: &Prime, n: usize) -> Tower<Fp> {
    loop {
        let mut t = Tower::new(n, p).unwrap().blow_up(CenterSpec::origin(p, 0, n)).unwrap().0;
        let depth = rng.gen_range(1..=4);
        let mut ok = true;
        while t.len() < depth {
            let mut placed = false;
            for _ in 0..20 {
                if let Ok((next, _)) = t.blow_up(random_center(rng, &t)) {
                    t = next;
                    placed = true;
                    break;
                }
            }
            if !placed {
                ok = false;
                break;
            }
        }
        let e = t.last_divisor().unwrap().id;
        if ok && t.valuation(e, &Ideal::maximal(p, n)).is_ok_and(|v| v >= 1) {
            return t;
        }
    }
}

/// Endless deterministic stream of bridge cases alternating `N` in `{2, 3}`
/// and `p` in `{5, 101}`.
pub struct CaseStream {
    rng: ChaCha8Rng,
    count: usize,
}

impl CaseStream {
    pub fn new(seed: u64) -> Self {
        CaseStream { rng: rng(seed), count: 0 }
    }
}

impl Iterator for CaseStream {
    type Item = BridgeCase;

    fn next(&mut self) -> Option<BridgeCase> {
        let i = self.count;
        self.count += 1;
        let n = if i.is_multiple_of(2) { 2 } else { 3 };
        let p = Prime::new(if (i / 2).is_multiple_of(2) { 5 } else { 101 }).unwrap();
        let tower = random_tower(&mut self.rng, &p, n);
        let first = if self.rng.gen_bool(0.35) { Ideal::maximal(&p, n) } else { random_monomial_ideal(&mut self.rng, &p, n) };
        let second = random_sparse_ideal(&mut self.rng, &p, n);
        let label = format!("case{} N={n} p={} depth={}", i + 1, p.get(), tower.len());
        Some(BridgeCase { label, tower, ideals: vec![first, second] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_deterministic() {
        let a: Vec<String> = CaseStream::new(7).take(6).map(|c| format!("{} {:?}", c.label, c.ideals)).collect();
        let b: Vec<String> = CaseStream::new(7).take(6).map(|c| format!("{} {:?}", c.label, c.ideals)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn towers_start_at_the_origin_and_end_over_it() {
        for c in CaseStream::new(CORPUS_SEED).take(8) {
            assert!(c.tower.first_step_at_origin());
            assert!((1..=4).contains(&c.tower.len()));
            let e = c.tower.last_divisor().unwrap().id;
            assert!(c.tower.valuation(e, &Ideal::maximal(c.tower.ctx(), c.tower.n())).unwrap() >= 1);
        }
    }
}
