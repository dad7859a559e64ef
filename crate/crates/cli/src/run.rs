//! Executes a parsed script statement by statement.

use std::collections::BTreeMap;

use divlift::bridge::{bridge_construct, cross_characteristic_suite, shifted_log_discrepancy_check, verify_with_lift, CellValue};
use divlift::invariants::{certify_not_log_canonical, lct_witness, log_discrepancy, toric_weight_search, Certificate};
use divlift::jets::{compare_heights, height_of_ideal, jet_equations, jet_var_names, lct_estimate_at_origin, mld_estimate};
use divlift::polyring::{fmt_rational, FieldCoeff, Fp, Ideal, MultiIdeal, Polynomial, Prime, QPoly};
use divlift::tower::{CenterSpec, DivisorId, Tower};
use divlift::{Error, ErrorKind};
use num_rational::BigRational;
use thiserror::Error as ThisError;

use crate::output::{Block, Val};
use crate::script::{Command, Factor, Field, Script, ScriptError, StepDecl, Stmt};
use crate::suite;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub cap: u32,
    pub gb_budget: usize,
    pub weight_bound: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: 4, gb_budget: divlift::gb::DEFAULT_BUDGET, weight_bound: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum RunError {
    #[error("{0}")]
    Script(#[from] ScriptError),
    #[error("line {line}: declaration of {name}: {}: {source}", source.code())]
    Declaration { line: usize, name: String, source: Error },
    #[error("[{index}] {command}: {}: {source}", source.code())]
    Command { index: usize, command: String, source: Error },
    #[error("[{index}] {command}: CheckFailed: {message}")]
    Check { index: usize, command: String, message: String },
}

impl RunError {
    /// 0 success, 1 failed check, 2 input, 3 resource.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Script(_) => 2,
            RunError::Check { .. } => 1,
            RunError::Declaration { source, .. } | RunError::Command { source, .. } => kind_code(source.kind()),
        }
    }
}

pub fn kind_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Check => 1,
        ErrorKind::Input => 2,
        ErrorKind::Resource => 3,
    }
}

enum Fail {
    Lib(Error),
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type CResult<T> = std::result::Result<T, Fail>;

pub fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn rat_tuple(xs: &[BigRational]) -> String {
    format!("({})", xs.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
}

fn center_text<C: FieldCoeff>(c: &CenterSpec<C>) -> String {
    let parts: Vec<String> = c.constraints.iter().map(|(j, v)| format!("x{}={v}", j + 1)).collect();
    format!("({})", parts.join(","))
}

fn poly_list<C: FieldCoeff>(gens: &[Polynomial<C>]) -> String {
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

/// Field-specific commands.
trait Backend: FieldCoeff {
    fn special(s: &Session<Self>, cmd: &Command, block: &mut Block) -> CResult<()>;
}

struct Session<C: FieldCoeff> {
    ctx: C::Ctx,
    n: usize,
    opts: Options,
    ideals: BTreeMap<String, Ideal<C>>,
    towers: BTreeMap<String, Tower<C>>,
}

impl<C: FieldCoeff> Session<C> {
    fn convert(&self, f: &QPoly) -> Polynomial<C> {
        f.map_coeffs(&self.ctx, |c| C::from_rational(&self.ctx, c).expect("constants checked while parsing"))
    }

    fn ideal(&self, name: &str) -> &Ideal<C> {
        &self.ideals[name]
    }

    fn tower(&self, name: &str) -> &Tower<C> {
        &self.towers[name]
    }

    fn build_tower(&self, steps: &[StepDecl]) -> Result<Tower<C>, Error> {
        let mut t = Tower::new(self.n, &self.ctx)?.with_budget(self.opts.gb_budget);
        for s in steps {
            let cs = s
                .constraints
                .iter()
                .map(|(j, c)| (*j, C::from_rational(&self.ctx, c).expect("constants checked while parsing")))
                .collect();
            t = t.blow_up(CenterSpec::new(s.chart, cs)?)?.0;
        }
        Ok(t)
    }

    fn divisor(&self, t: &Tower<C>, d: Option<usize>) -> CResult<DivisorId> {
        match d {
            Some(d) => Ok(t.divisor(d)?.id),
            None => match t.last_divisor() {
                Some(d) => Ok(d.id),
                None => Err(Fail::Lib(Error::Unsupported("tower has no exceptional divisor".into()))),
            },
        }
    }

    fn multi(&self, factors: &[Factor]) -> CResult<MultiIdeal<C>> {
        let fs = factors.iter().map(|f| (self.ideal(&f.ideal).clone(), f.exponent.clone())).collect();
        Ok(MultiIdeal::new(&self.ctx, self.n, fs)?)
    }

    fn common(&self, cmd: &Command, block: &mut Block) -> CResult<bool>
    where
        C: Backend,
    {
        let budget = self.opts.gb_budget;
        match cmd {
            Command::Keval { tower, divisor } => {
                let t = self.tower(tower);
                let e = self.divisor(t, *divisor)?;
                block.line(vec![("divisor", format!("E{e}").into()), ("k", t.divisor(e)?.k.into())]);
            }
            Command::Veval { tower, divisor, ideal } => {
                let t = self.tower(tower);
                let e = self.divisor(t, *divisor)?;
                let v = t.valuation(e, self.ideal(ideal))?;
                block.line(vec![("divisor", format!("E{e}").into()), ("ideal", ideal.as_str().into()), ("v", v.into())]);
            }
            Command::Logdisc { tower, divisor, factors } => {
                let t = self.tower(tower);
                let e = self.divisor(t, *divisor)?;
                let ma = if factors.is_empty() { MultiIdeal::trivial(&self.ctx, self.n) } else { self.multi(factors)? };
                let r = log_discrepancy(t, e, &ma)?;
                block.line(vec![("divisor", format!("E{e}").into()), ("k", r.k.into())]);
                for ((_, v), f) in r.valuations.iter().zip(factors) {
                    block.line(vec![("ideal", f.ideal.as_str().into()), ("e", (&f.exponent).into()), ("v", (*v).into())]);
                }
                block.line(vec![("log_discrepancy", r.a.into())]);
            }
            Command::Zeval { tower, divisor, ideal } => {
                let t = self.tower(tower);
                let e = self.divisor(t, *divisor)?;
                let w = lct_witness(t, e, self.ideal(ideal))?;
                block.line(vec![
                    ("divisor", format!("E{e}").into()),
                    ("k", w.k.into()),
                    ("v", w.v.into()),
                    ("z", w.z.into()),
                ]);
            }
            Command::Lct { ideal, cap, toric } => {
                let a = self.ideal(ideal);
                let est = lct_estimate_at_origin(a, cap.unwrap_or(self.opts.cap), budget)?;
                block.line(vec![("lct_estimate", (&est.value).into()), ("m", est.levels[0].into())]);
                if *toric {
                    let w = toric_weight_search(a, self.opts.weight_bound)?;
                    let weights = match &w.source {
                        divlift::invariants::WitnessSource::Weights(w) => tuple(w),
                        divlift::invariants::WitnessSource::Divisor(d) => format!("E{d}"),
                    };
                    block.line(vec![
                        ("toric_z", (&w.z).into()),
                        ("weights", weights.into()),
                        ("agree", (w.z == est.value).into()),
                    ]);
                }
            }
            Command::Mld { factors, cap } => {
                let est = mld_estimate(&self.multi(factors)?, cap.unwrap_or(self.opts.cap), budget)?;
                block.line(vec![("mld_estimate", est.value.into()), ("m", tuple(&est.levels).into())]);
            }
            Command::Notlc { factors, cap } => {
                let cap = cap.unwrap_or(self.opts.cap);
                match certify_not_log_canonical(&self.multi(factors)?, cap, budget)? {
                    Certificate::NotLogCanonical { levels, value } => block.line(vec![
                        ("certificate", "found".into()),
                        ("m", tuple(&levels).into()),
                        ("value", value.into()),
                    ]),
                    Certificate::Unknown => block.line(vec![("certificate", "unknown".into()), ("cap", cap.into())]),
                }
            }
            Command::Jets { ideal, m } => {
                let js = jet_equations(self.ideal(ideal), *m)?;
                let names = jet_var_names(self.n, *m);
                for (i, fs) in js.gens.iter().enumerate() {
                    for (j, f) in fs.iter().enumerate() {
                        block.line(vec![(&format!("F{}_{}", i + 1, j), f.display_with(&names).to_string().into())]);
                    }
                }
            }
            Command::Suspend { tower, ideal } => {
                let t = self.tower(tower);
                let e = self.divisor(t, None)?;
                let a = self.ideal(ideal);
                let (st, sa) = t.suspend(a)?;
                let (k, v) = (t.divisor(e)?.k, t.valuation(e, a)?);
                let (ks, vs) = (st.divisor(e)?.k, st.valuation(e, &sa)?);
                block.line(vec![
                    ("divisor", format!("E{e}").into()),
                    ("k", k.into()),
                    ("k_suspended", ks.into()),
                    ("v", v.into()),
                    ("v_suspended", vs.into()),
                    ("invariant", (v == vs).into()),
                ]);
                if v != vs {
                    return Err(Fail::Check(format!("valuation {v} changed to {vs} under suspension")));
                }
            }
            Command::Selftest => {
                let results = suite::run_all(&self.opts);
                let failed = results.iter().filter(|r| !r.passed).count();
                for r in &results {
                    block.line(vec![
                        ("criterion", r.id.into()),
                        ("name", r.name.as_str().into()),
                        ("passed", r.passed.into()),
                        ("detail", r.detail.as_str().into()),
                    ]);
                }
                block.line(vec![("passed", (results.len() - failed).into()), ("failed", failed.into())]);
                if failed > 0 {
                    return Err(Fail::Check(format!("{failed} acceptance criteria failed")));
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }
}

impl Backend for BigRational {
    fn special(s: &Session<Self>, cmd: &Command, block: &mut Block) -> CResult<()> {
        match cmd {
            Command::Heights { ideal } => {
                block.line(vec![("height", height_of_ideal(s.ideal(ideal), s.opts.gb_budget)?.into())]);
                Ok(())
            }
            _ => Err(Fail::Lib(Error::Unsupported("this command needs a ring over F_p".into()))),
        }
    }
}

impl Backend for Fp {
    fn special(s: &Session<Self>, cmd: &Command, block: &mut Block) -> CResult<()> {
        let budget = s.opts.gb_budget;
        match cmd {
            Command::Heights { ideal } => {
                let a = s.ideal(ideal);
                let lifted = divlift::polyring::lift::lift_ideal_to_rational(a)?;
                let h = compare_heights(a, &lifted, budget)?;
                let hq = h.height_q.map_or("inf".to_string(), |q| q.to_string());
                block.line(vec![("height_p", h.height_p.into()), ("height_Q", hq.into()), ("holds", h.holds().into())]);
                if !h.holds() {
                    return Err(Fail::Check("height over F_p exceeds the height of the lift".into()));
                }
            }
            Command::Bridge { tower, ideals, exponents } => {
                let t = s.tower(tower);
                let ids: Vec<Ideal<Fp>> = ideals.iter().map(|n| s.ideal(n).clone()).collect();
                let r = bridge_construct(t, &ids)?;
                let exps = if exponents.is_empty() && !ids.is_empty() {
                    vec![vec![BigRational::from_integer(1.into()); ids.len()]]
                } else {
                    exponents.clone()
                };
                let r = shifted_log_discrepancy_check(&r, &exps)?;
                block.line(vec![
                    ("divisor", format!("E{}", r.divisor).into()),
                    ("N", r.n.into()),
                    ("p", r.p.into()),
                ]);
                block.line(vec![
                    ("k_E", r.k_e.into()),
                    ("k_F", r.k_f.into()),
                    ("shift_ok", r.shift_ok.into()),
                    ("v_ok", r.v_ok.into()),
                ]);
                block.line(vec![
                    ("point1", center_text(&r.p1).into()),
                    ("chart1", r.p1.chart.into()),
                    ("F1", format!("E{}", r.f1).into()),
                    ("k_F1", r.k_f1.into()),
                ]);
                block.line(vec![
                    ("point2", center_text(&r.p2).into()),
                    ("chart2", r.p2.chart.into()),
                    ("F", format!("E{}", r.f).into()),
                ]);
                for (i, name) in ideals.iter().enumerate() {
                    let row = &r.valuations[i];
                    let corrected = r.corrected.iter().filter(|(k, _)| *k == i).count();
                    block.line(vec![
                        ("ideal", name.as_str().into()),
                        ("v_E", row.v_e.into()),
                        ("v_F1", row.v_f1.into()),
                        ("v_F2", row.v_f2.into()),
                        ("v_F", row.v_lift.into()),
                        ("corrected", corrected.into()),
                    ]);
                    block.line(vec![("lift", poly_list(r.lifted_ideals[i].gens()).into())]);
                }
                for (i, step) in r.lifted_tower().steps().iter().enumerate() {
                    block.line(vec![
                        ("lifted_step", (i + 1).into()),
                        ("chart", step.center.chart.into()),
                        ("center", center_text(&step.center).into()),
                        ("k", step.divisor.k.into()),
                    ]);
                }
                if !r.lift.repaired.is_empty() {
                    block.line(vec![("repaired_steps", tuple(&r.lift.repaired).into())]);
                }
                for sc in &r.shifted {
                    block.line(vec![
                        ("e", rat_tuple(&sc.exponents).into()),
                        ("a_p", (&sc.a_p).into()),
                        ("a_Q", (&sc.a_q).into()),
                        ("ok", sc.ok.into()),
                    ]);
                }
                if !r.self_consistent() {
                    return Err(Fail::Check("bridge report is not self-consistent".into()));
                }
            }
            Command::VerifyLift { tower, ideal, lift } => {
                let t = s.tower(tower);
                let r = bridge_construct(t, &[s.ideal(ideal).clone()])?;
                let la = Ideal::new(&(), s.n, lift.clone())?;
                let v = verify_with_lift(&r, &[la])?;
                block.line(vec![("verified", true.into()), ("v_E", r.valuations[0].v_e.into()), ("v_F", v[0].into())]);
            }
            Command::Crosschar { factors, cap } => {
                let ma = s.multi(factors)?;
                let cap = cap.unwrap_or(s.opts.cap);
                let r = cross_characteristic_suite(&ma, &vec![cap; ma.len()], budget)?;
                let cell = |c: &CellValue| -> Val {
                    match c {
                        CellValue::Codim(v) => (*v).into(),
                        CellValue::Empty => "inf".into(),
                        CellValue::BudgetExceeded => "budget".into(),
                    }
                };
                for c in &r.cells {
                    block.line(vec![
                        ("m", tuple(&c.levels).into()),
                        ("codim_p", cell(&c.codim_p)),
                        ("codim_Q", cell(&c.codim_q)),
                    ]);
                }
                let opt = |q: &Option<BigRational>| -> Val { q.as_ref().map_or("none".into(), |q| q.into()) };
                let mut summary = vec![
                    ("violations", r.violations.len().into()),
                    ("budget_cells", r.budget_cells().into()),
                    ("mld_p", opt(&r.mld_p)),
                    ("mld_Q", opt(&r.mld_q)),
                ];
                if ma.len() == 1 {
                    summary.push(("lct_p", opt(&r.lct_p)));
                    summary.push(("lct_Q", opt(&r.lct_q)));
                }
                summary.push(("holds", r.holds().into()));
                block.line(summary);
                if !r.holds() {
                    return Err(Fail::Check(format!("codim_p <= codim_Q fails at {:?}", r.violations)));
                }
            }
            _ => unreachable!("handled by the common dispatcher"),
        }
        Ok(())
    }
}

fn execute<C: Backend>(script: &Script, ctx: C::Ctx, opts: &Options) -> (Vec<Block>, Option<RunError>) {
    let mut s: Session<C> =
        Session { ctx, n: script.ring.n, opts: opts.clone(), ideals: BTreeMap::new(), towers: BTreeMap::new() };
    let mut blocks = Vec::new();
    let mut index = 0;
    for (line, stmt) in &script.stmts {
        match stmt {
            Stmt::Ideal { name, gens } => {
                let gens = gens.iter().map(|g| s.convert(g)).collect();
                match Ideal::new(&s.ctx, s.n, gens) {
                    Ok(a) => {
                        s.ideals.insert(name.clone(), a);
                    }
                    Err(e) => {
                        return (blocks, Some(RunError::Declaration { line: *line, name: name.clone(), source: e }))
                    }
                }
            }
            Stmt::Tower { name, steps } => match s.build_tower(steps) {
                Ok(t) => {
                    s.towers.insert(name.clone(), t);
                }
                Err(e) => return (blocks, Some(RunError::Declaration { line: *line, name: name.clone(), source: e })),
            },
            Stmt::Command { text, command } => {
                index += 1;
                let mut block = Block::new(index, text);
                let res = match s.common(command, &mut block) {
                    Ok(true) => Ok(()),
                    Ok(false) => C::special(&s, command, &mut block),
                    Err(f) => Err(f),
                };
                blocks.push(block);
                if let Err(f) = res {
                    let err = match f {
                        Fail::Lib(source) => RunError::Command { index, command: text.clone(), source },
                        Fail::Check(message) => RunError::Check { index, command: text.clone(), message },
                    };
                    return (blocks, Some(err));
                }
            }
        }
    }
    (blocks, None)
}

/// Runs every statement; on failure the blocks produced so far are returned
/// together with the error.
pub fn run(script: &Script, opts: &Options) -> (Vec<Block>, Option<RunError>) {
    match script.ring.field {
        Field::Prime(p) => execute::<Fp>(script, Prime::new(p).expect("checked while parsing"), opts),
        Field::Rationals => execute::<BigRational>(script, (), opts),
    }
}

/// Parses and runs a script text.
pub fn run_text(text: &str, opts: &Options) -> (Vec<Block>, Option<RunError>) {
    match crate::script::parse_script(text) {
        Ok(s) => run(&s, opts),
        Err(e) => (Vec::new(), Some(RunError::Script(e))),
    }
}

