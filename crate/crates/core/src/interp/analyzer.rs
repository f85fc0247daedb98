//! Forward abstract interpretation over string objects.

use std::collections::BTreeMap;

use thiserror::Error;

use super::ast::{Cond, Expr, Method, Program, Stmt, StmtKind};
use crate::object::{Ctx, StringObject};
use crate::ops::{self, IntAbstract};

pub const DEFAULT_WIDEN_DELAY: usize = 3;
pub const MAX_LOOP_ITERATIONS: usize = 1000;

#[derive(Clone, Debug)]
pub struct Options {
    pub widen_delay: usize,
    pub max_iterations: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { widen_delay: DEFAULT_WIDEN_DELAY, max_iterations: MAX_LOOP_ITERATIONS }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("loop at line {line} did not stabilize within {iterations} iterations")]
    NoFixpoint { line: usize, iterations: usize },
}

/// Variable environment; an unreachable state has no bindings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractState {
    pub reachable: bool,
    pub env: BTreeMap<String, StringObject>,
}

impl AbstractState {
    pub fn entry() -> Self {
        AbstractState { reachable: true, env: BTreeMap::new() }
    }

    pub fn unreachable() -> Self {
        AbstractState { reachable: false, env: BTreeMap::new() }
    }

    fn join(&self, other: &Self, ctx: &Ctx) -> Self {
        match (self.reachable, other.reachable) {
            (false, _) => other.clone(),
            (_, false) => self.clone(),
            _ => AbstractState {
                reachable: true,
                env: self
                    .env
                    .iter()
                    .filter_map(|(k, v)| other.env.get(k).map(|w| (k.clone(), v.join(w, ctx))))
                    .collect(),
            },
        }
    }

    fn widen(&self, next: &Self, exhausted: bool, ctx: &Ctx) -> Self {
        if !self.reachable || !next.reachable {
            return self.join(next, ctx);
        }
        AbstractState {
            reachable: true,
            env: self
                .env
                .iter()
                .filter_map(|(k, v)| next.env.get(k).map(|w| (k.clone(), v.widen(w, exhausted, ctx))))
                .collect(),
        }
    }

    fn leq(&self, other: &Self, ctx: &Ctx) -> bool {
        if !self.reachable {
            return true;
        }
        other.reachable
            && other.env.iter().all(|(k, w)| self.env.get(k).is_some_and(|v| v.leq(w, ctx)))
    }

    /// Collapses to unreachable when any variable is ⊥.
    fn normalize(self) -> Self {
        if !self.reachable || self.env.values().any(|o| o.is_bottom) {
            Self::unreachable()
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    UnreachableLine(usize),
    ProvenNonEmpty(String, usize),
    LoopExitUnreachable(usize),
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisReport {
    /// State after the last simple statement on each line.
    pub lines: BTreeMap<usize, AbstractState>,
    pub verdicts: Vec<Verdict>,
    /// Joined value of every `return`.
    pub returned: Option<StringObject>,
    pub exit: Option<AbstractState>,
}

impl AnalysisReport {
    pub fn var_at(&self, line: usize, name: &str) -> Option<&StringObject> {
        self.lines.get(&line).and_then(|s| s.env.get(name))
    }

    pub fn is_unreachable(&self, line: usize) -> bool {
        self.verdicts.contains(&Verdict::UnreachableLine(line))
    }
}

enum Value {
    Str(StringObject),
    Int(IntAbstract),
}

struct Analyzer<'a> {
    ctx: &'a Ctx,
    opts: &'a Options,
    report: AnalysisReport,
    reached: BTreeMap<usize, bool>,
    nonempty: BTreeMap<usize, Option<String>>,
    loop_exit: BTreeMap<usize, bool>,
}

impl<'a> Analyzer<'a> {
    fn eval(&self, e: &Expr, s: &AbstractState) -> Value {
        let ctx = self.ctx;
        match e {
            Expr::Str(w) => Value::Str(StringObject::atom(w, ctx)),
            Expr::Int(n) => Value::Int(IntAbstract::exact(*n)),
            Expr::Var(x) => Value::Str(s.env.get(x).cloned().unwrap_or_else(StringObject::bottom)),
            Expr::Unknown => Value::Str(StringObject::top()),
            Expr::Concat(a, b) => Value::Str(ops::abs_concat(&self.eval_str(a, s), &self.eval_str(b, s), ctx)),
            Expr::Ternary(c, a, b) => {
                let mut out = StringObject::bottom();
                if self.assume(c, true, s).reachable {
                    out = out.join(&self.eval_str(a, s), ctx);
                }
                if self.assume(c, false, s).reachable {
                    out = out.join(&self.eval_str(b, s), ctx);
                }
                Value::Str(out)
            }
            Expr::Call(recv, m, args) => {
                let o = self.eval_str(recv, s);
                Value::Str(match m {
                    Method::IndexOf => return Value::Int(ops::abs_index_of(&o, &self.eval_str(&args[0], s), ctx)),
                    Method::CharAt => ops::abs_char_at(&o, &self.eval_int(&args[0], s), ctx),
                    Method::Substring => ops::abs_substring(&o, &self.eval_int(&args[0], s), ctx),
                    Method::Replace => {
                        ops::abs_replace(&o, &self.eval_str(&args[0], s), &self.eval_str(&args[1], s), ctx)
                    }
                })
            }
        }
    }

    fn eval_str(&self, e: &Expr, s: &AbstractState) -> StringObject {
        match self.eval(e, s) {
            Value::Str(o) => o,
            Value::Int(_) => unreachable!("parser rejects integers in string position"),
        }
    }

    fn eval_int(&self, e: &Expr, s: &AbstractState) -> IntAbstract {
        match self.eval(e, s) {
            Value::Int(n) => n,
            Value::Str(_) => unreachable!("parser rejects strings in integer position"),
        }
    }

    /// State refined by `c` evaluating to `positive`.
    fn assume(&self, c: &Cond, positive: bool, s: &AbstractState) -> AbstractState {
        if !s.reachable {
            return AbstractState::unreachable();
        }
        let ctx = self.ctx;
        let mut out = s.clone();
        match c {
            Cond::Not(inner) => return self.assume(inner, !positive, s),
            Cond::Truthy(e) => {
                let o = self.eval_str(e, s);
                let r = if positive { ops::assume_truthy(&o, ctx) } else { ops::assume_falsy(&o, ctx) };
                if let Expr::Var(x) = e {
                    out.env.insert(x.clone(), r.clone());
                }
                if r.is_bottom {
                    return AbstractState::unreachable();
                }
            }
            Cond::Cmp { hay, needle, rel, k } => {
                let rel = if positive { *rel } else { rel.negate() };
                let (o1, o2) = (self.eval_str(hay, s), self.eval_str(needle, s));
                let (r1, r2) = ops::assume_index_cmp(&o1, &o2, rel, *k, ctx);
                if r1.is_bottom || r2.is_bottom {
                    return AbstractState::unreachable();
                }
                if let Expr::Var(x) = needle {
                    out.env.insert(x.clone(), r2);
                }
                if let Expr::Var(x) = hay {
                    out.env.insert(x.clone(), r1);
                }
            }
        }
        out.normalize()
    }

    fn record(&mut self, line: usize, s: &AbstractState) {
        self.report.lines.insert(line, s.clone());
    }

    fn block(&mut self, body: &[Stmt], s: AbstractState) -> Result<AbstractState, AnalysisError> {
        let scope: Vec<String> = s.env.keys().cloned().collect();
        let mut cur = s;
        for st in body {
            cur = self.stmt(st, cur)?;
        }
        if cur.reachable {
            cur.env.retain(|k, _| scope.contains(k));
        }
        Ok(cur)
    }

    fn stmt(&mut self, st: &Stmt, s: AbstractState) -> Result<AbstractState, AnalysisError> {
        let line_reached = self.reached.entry(st.line).or_insert(false);
        *line_reached = s.reachable;
        if !s.reachable {
            self.nonempty.insert(st.line, None);
            self.loop_exit.remove(&st.line);
            self.record(st.line, &s);
            if let StmtKind::If(_, t, e) = &st.kind {
                self.block(t, AbstractState::unreachable())?;
                if let Some(e) = e {
                    self.block(e, AbstractState::unreachable())?;
                }
            } else if let StmtKind::While(_, b) | StmtKind::Block(b) = &st.kind {
                self.block(b, AbstractState::unreachable())?;
            }
            return Ok(s);
        }
        let ctx = self.ctx;
        let out = match &st.kind {
            StmtKind::Let(x, e) | StmtKind::Assign(x, e) => {
                let mut out = s.clone();
                let v = self.eval_str(e, &s);
                out.env.insert(x.clone(), v);
                let out = out.normalize();
                self.record(st.line, &out);
                out
            }
            StmtKind::Return(e) => {
                let v = self.eval_str(e, &s);
                let proven = match e {
                    Expr::Var(x) if !v.is_bottom && !v.eps() => Some(x.clone()),
                    _ => None,
                };
                self.nonempty.insert(st.line, proven);
                let joined = match &self.report.returned {
                    Some(r) => r.join(&v, ctx),
                    None => v,
                };
                self.report.returned = Some(joined);
                self.record(st.line, &s);
                AbstractState::unreachable()
            }
            StmtKind::Block(b) => self.block(b, s)?,
            StmtKind::If(c, t, e) => {
                let a = self.block(t, self.assume(c, true, &s))?;
                let els = self.assume(c, false, &s);
                let b = match e {
                    Some(e) => self.block(e, els)?,
                    None => els,
                };
                a.join(&b, ctx)
            }
            StmtKind::While(c, body) => {
                let mut head = s.clone();
                let mut iter = 0;
                loop {
                    let after = self.block(body, self.assume(c, true, &head))?;
                    let next = s.join(&after, ctx);
                    if next.leq(&head, ctx) {
                        break;
                    }
                    iter += 1;
                    if iter > self.opts.max_iterations {
                        return Err(AnalysisError::NoFixpoint { line: st.line, iterations: iter - 1 });
                    }
                    head = head.widen(&next, iter > self.opts.widen_delay, ctx);
                }
                let exit = self.assume(c, false, &head);
                self.loop_exit.insert(st.line, exit.reachable);
                exit
            }
        };
        Ok(out)
    }
}

pub fn analyze_program(p: &Program, ctx: &Ctx, opts: &Options) -> Result<AnalysisReport, AnalysisError> {
    let mut a = Analyzer {
        ctx,
        opts,
        report: AnalysisReport::default(),
        reached: BTreeMap::new(),
        nonempty: BTreeMap::new(),
        loop_exit: BTreeMap::new(),
    };
    let mut state = AbstractState::entry();
    for st in &p.body {
        state = a.stmt(st, state)?;
    }
    let mut verdicts: Vec<Verdict> =
        a.reached.iter().filter(|(_, &r)| !r).map(|(&l, _)| Verdict::UnreachableLine(l)).collect();
    verdicts.extend(a.loop_exit.iter().filter(|(_, &r)| !r).map(|(&l, _)| Verdict::LoopExitUnreachable(l)));
    verdicts.extend(a.nonempty.into_iter().filter_map(|(l, x)| x.map(|x| Verdict::ProvenNonEmpty(x, l))));
    a.report.verdicts = verdicts;
    a.report.exit = Some(state);
    Ok(a.report)
}
