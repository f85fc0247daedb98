//! Reference interpreter over concrete strings, and random programs for
//! checking the analyzer against it.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::analyzer::{analyze_program, Options};
use super::ast::{Cond, Expr, Method, Program, Stmt, StmtKind};
use crate::object::Ctx;
use crate::ops::{concrete, Rel};
use crate::oracle::{random_morphism, random_word, CheckOutcome};
use crate::word::{show, Alphabet, Word};

pub type Env = BTreeMap<String, Word>;

#[derive(Clone, Debug, Default)]
pub struct ConcreteRun {
    /// Environment after every executed simple statement, in order.
    pub trace: Vec<(usize, Env)>,
    pub returned: Option<Word>,
    /// Final environment when the program falls off its end.
    pub exit: Option<Env>,
}

enum Val {
    Str(Word),
    Int(i64),
}

enum Flow {
    Next(Env),
    Return(Word),
}

struct Machine<'a> {
    unknown: &'a mut dyn FnMut() -> Word,
    fuel: usize,
    trace: Vec<(usize, Env)>,
}

impl Machine<'_> {
    fn eval(&mut self, e: &Expr, env: &Env) -> Val {
        match e {
            Expr::Str(w) => Val::Str(w.clone()),
            Expr::Int(n) => Val::Int(*n),
            Expr::Var(x) => Val::Str(env[x].clone()),
            Expr::Unknown => Val::Str((self.unknown)()),
            Expr::Concat(a, b) => {
                let a = self.eval_str(a, env);
                Val::Str(concrete::concat(&a, &self.eval_str(b, env)))
            }
            Expr::Ternary(c, a, b) => {
                if self.test(c, env) {
                    self.eval(a, env)
                } else {
                    self.eval(b, env)
                }
            }
            Expr::Call(recv, m, args) => {
                let w = self.eval_str(recv, env);
                match m {
                    Method::CharAt => {
                        let n = self.eval_int(&args[0], env);
                        Val::Str(concrete::char_at(&w, n))
                    }
                    Method::Substring => {
                        let n = self.eval_int(&args[0], env);
                        Val::Str(concrete::substring(&w, n))
                    }
                    Method::IndexOf => Val::Int(concrete::index_of(&w, &self.eval_str(&args[0], env))),
                    Method::Replace => {
                        let pat = self.eval_str(&args[0], env);
                        let with = self.eval_str(&args[1], env);
                        Val::Str(concrete::replace(&w, &pat, &with))
                    }
                }
            }
        }
    }

    fn eval_str(&mut self, e: &Expr, env: &Env) -> Word {
        match self.eval(e, env) {
            Val::Str(w) => w,
            Val::Int(_) => unreachable!("parser rejects integers in string position"),
        }
    }

    fn eval_int(&mut self, e: &Expr, env: &Env) -> i64 {
        match self.eval(e, env) {
            Val::Int(n) => n,
            Val::Str(_) => unreachable!("parser rejects strings in integer position"),
        }
    }

    fn test(&mut self, c: &Cond, env: &Env) -> bool {
        match c {
            Cond::Truthy(e) => !self.eval_str(e, env).is_empty(),
            Cond::Not(c) => !self.test(c, env),
            Cond::Cmp { hay, needle, rel, k } => {
                let h = self.eval_str(hay, env);
                rel.holds(concrete::index_of(&h, &self.eval_str(needle, env)), *k)
            }
        }
    }

    fn block(&mut self, body: &[Stmt], env: Env) -> Option<Flow> {
        let scope: Vec<String> = env.keys().cloned().collect();
        let mut env = env;
        for st in body {
            match self.stmt(st, env)? {
                Flow::Next(e) => env = e,
                ret => return Some(ret),
            }
        }
        env.retain(|k, _| scope.contains(k));
        Some(Flow::Next(env))
    }

    fn stmt(&mut self, st: &Stmt, mut env: Env) -> Option<Flow> {
        self.fuel = self.fuel.checked_sub(1)?;
        match &st.kind {
            StmtKind::Let(x, e) | StmtKind::Assign(x, e) => {
                let w = self.eval_str(e, &env);
                env.insert(x.clone(), w);
                self.trace.push((st.line, env.clone()));
                Some(Flow::Next(env))
            }
            StmtKind::Return(e) => {
                self.trace.push((st.line, env.clone()));
                Some(Flow::Return(self.eval_str(e, &env)))
            }
            StmtKind::Block(b) => self.block(b, env),
            StmtKind::If(c, t, e) => {
                if self.test(c, &env) {
                    self.block(t, env)
                } else if let Some(e) = e {
                    self.block(e, env)
                } else {
                    Some(Flow::Next(env))
                }
            }
            StmtKind::While(c, body) => loop {
                if !self.test(c, &env) {
                    return Some(Flow::Next(env));
                }
                match self.block(body, env)? {
                    Flow::Next(e) => env = e,
                    ret => return Some(ret),
                }
                self.fuel = self.fuel.checked_sub(1)?;
            },
        }
    }
}

/// Runs `p` drawing `unknown()` results from `unknown`; `None` once `fuel`
/// statement executions are used up.
pub fn run_concrete(p: &Program, unknown: &mut dyn FnMut() -> Word, fuel: usize) -> Option<ConcreteRun> {
    let mut m = Machine { unknown, fuel, trace: Vec::new() };
    let mut env = Env::new();
    for st in &p.body {
        match m.stmt(st, env)? {
            Flow::Next(e) => env = e,
            Flow::Return(w) => return Some(ConcreteRun { trace: m.trace, returned: Some(w), exit: None }),
        }
    }
    Some(ConcreteRun { trace: m.trace, returned: None, exit: Some(env) })
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    letters: &'a [char],
    vars: Vec<String>,
    line: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn word(&mut self, max: usize) -> Word {
        random_word(self.rng, self.letters, 0, max)
    }

    fn expr(&mut self, depth: usize) -> Expr {
        let pick = if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..9) };
        match pick {
            0 => Expr::Str(self.word(3)),
            1 if !self.vars.is_empty() => Expr::Var(self.vars.choose(self.rng).unwrap().clone()),
            1 | 2 => Expr::Unknown,
            3 | 4 => Expr::Concat(Box::new(self.expr(depth - 1)), Box::new(self.expr(depth - 1))),
            5 => Expr::Ternary(Box::new(self.cond(depth - 1)), Box::new(self.expr(depth - 1)), Box::new(self.expr(depth - 1))),
            6 => Expr::Call(Box::new(self.expr(depth - 1)), Method::CharAt, vec![Expr::Int(self.rng.gen_range(0..4))]),
            7 => Expr::Call(Box::new(self.expr(depth - 1)), Method::Substring, vec![Expr::Int(self.rng.gen_range(0..4))]),
            _ => {
                let pat = Expr::Str(random_word(self.rng, self.letters, 1, 2));
                Expr::Call(Box::new(self.expr(depth - 1)), Method::Replace, vec![pat, self.expr(depth - 1)])
            }
        }
    }

    fn cond(&mut self, depth: usize) -> Cond {
        match self.rng.gen_range(0..4) {
            0 => Cond::Truthy(self.expr(depth)),
            1 => Cond::Not(Box::new(self.cond(depth))),
            _ => {
                let needle = if self.rng.gen_bool(0.7) {
                    Expr::Str(random_word(self.rng, self.letters, 1, 2))
                } else {
                    self.expr(depth)
                };
                let rel = *[Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge].choose(self.rng).unwrap();
                Cond::Cmp { hay: self.expr(depth), needle, rel, k: self.rng.gen_range(-1..3) }
            }
        }
    }

    fn stmt(&mut self, nesting: usize) -> Stmt {
        let line = self.next_line();
        let kind = match self.rng.gen_range(0..10) {
            0..=5 => StmtKind::Assign(self.vars.choose(self.rng).unwrap().clone(), self.expr(2)),
            6..=8 if nesting > 0 => {
                let c = self.cond(1);
                let t = self.stmts(nesting - 1);
                let e = if self.rng.gen_bool(0.5) { Some(self.stmts(nesting - 1)) } else { None };
                StmtKind::If(c, t, e)
            }
            _ => StmtKind::Return(self.expr(1)),
        };
        Stmt { line, end_line: self.line, kind }
    }

    fn stmts(&mut self, nesting: usize) -> Vec<Stmt> {
        let n = self.rng.gen_range(1..=3);
        (0..n).map(|_| self.stmt(nesting)).collect()
    }

    fn next_line(&mut self) -> usize {
        self.line += 1;
        self.line
    }
}

/// A loop-free program over `letters` with one statement per line.
pub fn random_program(rng: &mut impl Rng, letters: &[char]) -> Program {
    let vars: Vec<String> = (0..rng.gen_range(1..=3)).map(|i| format!("v{i}")).collect();
    let mut g = Gen { rng, letters, vars: Vec::new(), line: 0 };
    let mut body = Vec::new();
    for v in &vars {
        let e = g.expr(1);
        g.vars.push(v.clone());
        let line = g.next_line();
        body.push(Stmt { line, end_line: line, kind: StmtKind::Let(v.clone(), e) });
    }
    let n = g.rng.gen_range(1..=4);
    for _ in 0..n {
        body.push(g.stmt(2));
    }
    Program { body }
}

fn show_env(env: &Env) -> String {
    env.iter().map(|(k, w)| format!("{k}={:?}", show(w))).collect::<Vec<_>>().join(", ")
}

/// Runs `p` concretely `runs` times and reports the first concrete state
/// the analysis does not cover.
pub fn analyzer_violation(p: &Program, ctx: &Ctx, runs: usize, max_len: usize, rng: &mut impl Rng) -> Option<String> {
    let report = match analyze_program(p, ctx, &Options::default()) {
        Ok(r) => r,
        Err(e) => return Some(e.to_string()),
    };
    let letters: Vec<char> = ctx.sigma.letters().collect();
    for _ in 0..runs {
        let mut unknown = || random_word(rng, &letters, 0, max_len);
        let run = run_concrete(p, &mut unknown, 10_000)?;
        for (line, env) in &run.trace {
            let Some(state) = report.lines.get(line) else {
                return Some(format!("line {line} has no snapshot"));
            };
            for (x, w) in env {
                if !state.env.get(x).is_some_and(|o| o.contains(w, ctx)) {
                    return Some(format!("line {line}: {x}={:?} not covered (env {})", show(w), show_env(env)));
                }
            }
        }
        if let Some(w) = &run.returned {
            if !report.returned.as_ref().is_some_and(|o| o.contains(w, ctx)) {
                return Some(format!("returned {:?} not covered", show(w)));
            }
        }
        if let Some(env) = &run.exit {
            let exit = report.exit.as_ref().expect("analysis records an exit state");
            for (x, w) in env {
                if !exit.env.get(x).is_some_and(|o| o.contains(w, ctx)) {
                    return Some(format!("exit: {x}={:?} not covered", show(w)));
                }
            }
        }
    }
    None
}

/// Analyzer soundness on random loop-free programs over at most three
/// letters, with `unknown()` drawn up to `max_len` letters.
pub fn check_analyzer(trials: usize, seed: u64, max_len: usize) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let n = rng.gen_range(2..=3);
        let letters: Vec<char> = "abc".chars().take(n).collect();
        let p = random_program(&mut rng, &letters);
        let sigma = Alphabet::new(letters.iter().copied());
        let props = if rng.gen_bool(0.5) { vec![random_morphism(&mut rng, &sigma)] } else { Vec::new() };
        let ctx = Ctx::new(sigma, props);
        if let Some(msg) = analyzer_violation(&p, &ctx, 20, max_len, &mut rng) {
            failures += 1;
            counterexample.get_or_insert_with(|| format!("{p:?}: {msg}"));
        }
    }
    CheckOutcome { name: "analyzer soundness".to_string(), trials, failures, counterexample }
}


#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;

    proptest! {
        #[test]
        fn analysis_covers_concrete_runs(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_program(&mut rng, &['a', 'b']);
            let ctx = Ctx::new(Alphabet::from_str("ab"), Vec::new());
            let bad = analyzer_violation(&p, &ctx, 10, 4, &mut rng);
            prop_assert!(bad.is_none(), "{:?}", bad);
        }
    }
}
