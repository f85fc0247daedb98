//! Brute-force ground truth at desk scale: bounded concretization, best
//! abstraction of finite sets, unavoidability search, and a seeded
//! randomized check harness with shrinking.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::morphism::StandardMorphism;
use crate::object::{Ctx, StringObject};
use crate::ops::{self, concrete, IntAbstract, Rel};
use crate::property::alpha_nonempty;
use crate::property::{LowerBound, PropValue, UnaryInterval};
use crate::word::{is_factor, is_prefix, show, Alphabet, Word};

pub const MAX_ENUM_LEN: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration length {0} exceeds the limit of {MAX_ENUM_LEN}")]
    TooLong(usize),
}

/// Words over `letters` of length at most `max_len` accepted by `keep`;
/// `viable` prunes partial words none of whose extensions can be kept.
fn enumerate<K, V>(letters: &[char], max_len: usize, keep: K, viable: V) -> BTreeSet<Word>
where
    K: Fn(&[char]) -> bool,
    V: Fn(&[char]) -> bool,
{
    let mut out = BTreeSet::new();
    let mut stack: Vec<Word> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if keep(&w) {
            out.insert(w.clone());
        }
        if w.len() == max_len {
            continue;
        }
        for &c in letters {
            let mut next = w.clone();
            next.push(c);
            if viable(&next) {
                stack.push(next);
            }
        }
    }
    out
}

fn compatible(p: Option<&Word>, w: &[char]) -> bool {
    p.map_or(true, |p| is_prefix(w, p) || is_prefix(p, w))
}

/// Members of `γ(o)` of length at most `max_len` over the session alphabet.
pub fn enumerate_gamma(o: &StringObject, ctx: &Ctx, max_len: usize) -> Result<BTreeSet<Word>, OracleError> {
    if max_len > MAX_ENUM_LEN {
        return Err(OracleError::TooLong(max_len));
    }
    if o.is_bottom {
        return Ok(BTreeSet::new());
    }
    let letters: Vec<char> = ctx.sigma.letters().collect();
    let prefix = o.bound().prefix.as_ref();
    let cap = o.length.greatest().flatten().map_or(max_len, |m| m.min(max_len));
    Ok(enumerate(&letters, cap, |w| o.contains(w, ctx), |w| compatible(prefix, w)))
}

/// Members of `γ(v)` of length at most `max_len` over `letters`.
pub fn enumerate_prop(v: &PropValue, letters: &[char], max_len: usize) -> Result<BTreeSet<Word>, OracleError> {
    if max_len > MAX_ENUM_LEN {
        return Err(OracleError::TooLong(max_len));
    }
    let prefix = v.bound().and_then(|b| b.prefix.as_ref());
    Ok(enumerate(letters, max_len, |w| v.contains(w), |w| compatible(prefix, w)))
}

fn alpha_value(s: &BTreeSet<Word>, unary: bool) -> PropValue {
    let eps = s.contains(&Vec::new());
    let rest: Vec<Word> = s.iter().filter(|w| !w.is_empty()).cloned().collect();
    if unary {
        let mut u = if eps { UnaryInterval::EPS } else { UnaryInterval::BOTTOM };
        for w in &rest {
            u = u.join(&UnaryInterval::exact(w.len()));
        }
        return PropValue::Unary(u);
    }
    if rest.is_empty() {
        return PropValue::NonUnary { eps, bound: LowerBound::bottom() };
    }
    PropValue::NonUnary { eps, bound: alpha_nonempty(&rest).0 }
}

/// Best abstraction of a finite set of words.
pub fn alpha_of_set(s: &BTreeSet<Word>, ctx: &Ctx) -> StringObject {
    if s.is_empty() {
        return StringObject::bottom();
    }
    let PropValue::Unary(length) = alpha_value(s, true) else { unreachable!() };
    let mut o = StringObject { is_bottom: false, value: alpha_value(s, false), length, customs: Default::default() };
    for m in &ctx.props {
        let images: BTreeSet<Word> = s.iter().map(|w| m.apply(w)).collect();
        o.customs.insert(m.clone(), alpha_value(&images, m.is_unary(&ctx.sigma)));
    }
    o.normalized(ctx)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Unavoidability {
    Unavoidable,
    Witness(String),
    Inconclusive,
}

/// Length up to which a counterexample built from delimiters between the
/// bound's words must appear.
pub fn delimiter_bound(b: &LowerBound) -> usize {
    let total: usize = b.factors.iter().map(|f| f.len()).sum::<usize>()
        + b.prefix.as_ref().map_or(0, |w| w.len())
        + b.suffix.as_ref().map_or(0, |w| w.len());
    let p = total + 1;
    total + (b.factors.len() + 2) * (p + 1)
}

/// Searches the non-empty members of `b` for the shortest one avoiding
/// `candidate`.
pub fn brute_unavoidable(b: &LowerBound, candidate: &[char], alphabet: &Alphabet, max_len: usize) -> Unavoidability {
    let max_len = max_len.min(MAX_ENUM_LEN);
    let letters: Vec<char> = alphabet.letters().collect();
    let prefix = b.prefix.as_ref();
    for len in 1..=max_len {
        let found = enumerate(
            &letters,
            len,
            |w| w.len() == len && b.contains(w),
            |w| compatible(prefix, w) && !is_factor(candidate, w),
        );
        if let Some(w) = found.into_iter().next() {
            return Unavoidability::Witness(show(&w));
        }
    }
    if b.is_bottom || max_len >= delimiter_bound(b).min(MAX_ENUM_LEN) {
        Unavoidability::Unavoidable
    } else {
        Unavoidability::Inconclusive
    }
}

pub fn random_word(rng: &mut impl Rng, letters: &[char], min: usize, max: usize) -> Word {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| *letters.choose(rng).unwrap()).collect()
}

/// Random standard morphism over `sigma`: each letter is erased or put in
/// one of up to three classes.
pub fn random_morphism(rng: &mut impl Rng, sigma: &Alphabet) -> StandardMorphism {
    let mut classes = vec![String::new(); 3];
    let mut erase = String::new();
    for c in sigma.letters() {
        match rng.gen_range(0..4) {
            3 => erase.push(c),
            k => classes[k].push(c),
        }
    }
    StandardMorphism::from_classes(classes, &erase).unwrap()
}

/// Recipe for a random object: the abstraction of a word set, optionally
/// opened up to an infinite language by forgetting the upper length bound
/// and the constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjSpec {
    pub words: Vec<Word>,
    pub open: bool,
}

impl ObjSpec {
    pub fn random(rng: &mut impl Rng, letters: &[char]) -> Self {
        let n = rng.gen_range(1..=3);
        ObjSpec {
            words: (0..n).map(|_| random_word(rng, letters, 0, 4)).collect(),
            open: rng.gen_bool(0.5),
        }
    }

    pub fn build(&self, ctx: &Ctx) -> StringObject {
        let set: BTreeSet<Word> = self.words.iter().cloned().collect();
        let mut o = alpha_of_set(&set, ctx);
        if self.open && !o.is_bottom {
            o.length = open_interval(&o.length);
            if let PropValue::NonUnary { bound, .. } = &mut o.value {
                bound.constant = None;
            }
            for v in o.customs.values_mut() {
                match v {
                    PropValue::Unary(u) => *u = open_interval(u),
                    PropValue::NonUnary { bound, .. } => bound.constant = None,
                }
            }
        }
        o.reduce(ctx)
    }
}

fn open_interval(u: &UnaryInterval) -> UnaryInterval {
    match u.range {
        Some((lo, _)) => UnaryInterval { eps: u.eps, range: Some((lo, None)) },
        None => *u,
    }
}

impl fmt::Display for ObjSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.words.iter().map(|w| format!("{:?}", show(w))).collect();
        write!(f, "α{{{}}}{}", ws.join(","), if self.open { "+open" } else { "" })
    }
}

/// One randomized trial input.
#[derive(Clone, Debug)]
pub struct Instance {
    pub sigma: Alphabet,
    pub props: Vec<StandardMorphism>,
    pub objs: Vec<ObjSpec>,
    pub ints: Vec<IntAbstract>,
    pub rel: Rel,
    pub k: i64,
}

impl Instance {
    pub fn random(rng: &mut impl Rng, n_objs: usize) -> Self {
        let sigma = Alphabet::from_str(if rng.gen_bool(0.5) { "ab" } else { "abc" });
        let letters: Vec<char> = sigma.letters().collect();
        let props = (0..rng.gen_range(0..=2)).map(|_| random_morphism(rng, &sigma)).collect();
        let objs = (0..n_objs).map(|_| ObjSpec::random(rng, &letters)).collect();
        let ints = (0..2).map(|_| random_index(rng)).collect();
        let rel = *[Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge].choose(rng).unwrap();
        Instance { sigma, props, objs, ints, rel, k: rng.gen_range(-1..=2) }
    }

    pub fn ctx(&self) -> Ctx {
        Ctx::new(self.sigma.clone(), self.props.clone())
    }

    /// Strictly smaller variants: shorter words, fewer words, closed
    /// languages, then a smaller alphabet.
    fn shrinks(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for (i, spec) in self.objs.iter().enumerate() {
            for (j, w) in spec.words.iter().enumerate() {
                if !w.is_empty() {
                    for cut in [&w[1..], &w[..w.len() - 1]] {
                        let mut next = self.clone();
                        next.objs[i].words[j] = cut.to_vec();
                        out.push(next);
                    }
                }
            }
            if spec.words.len() > 1 {
                for j in 0..spec.words.len() {
                    let mut next = self.clone();
                    next.objs[i].words.remove(j);
                    out.push(next);
                }
            }
            if spec.open {
                let mut next = self.clone();
                next.objs[i].open = false;
                out.push(next);
            }
        }
        let letters: Vec<char> = self.sigma.letters().collect();
        if letters.len() > 2 {
            let (gone, keep) = (letters[letters.len() - 1], letters[0]);
            let mut next = self.clone();
            next.sigma = Alphabet::new(letters[..letters.len() - 1].iter().copied());
            for spec in &mut next.objs {
                for w in &mut spec.words {
                    for c in w.iter_mut() {
                        if *c == gone {
                            *c = keep;
                        }
                    }
                }
            }
            next.props = self
                .props
                .iter()
                .map(|m| {
                    let (classes, erase) = m.partition(&next.sigma);
                    let classes: Vec<String> = classes.iter().map(|c| c.iter().collect()).collect();
                    let erase: String = erase.iter().collect();
                    StandardMorphism::from_classes(classes, &erase).unwrap()
                })
                .collect();
            out.push(next);
        }
        out
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ={} props=[", self.sigma)?;
        for (i, m) in self.props.iter().enumerate() {
            let (classes, erase) = m.partition(&self.sigma);
            let cs: Vec<String> = classes.iter().map(|c| c.iter().collect()).collect();
            let e: String = erase.iter().collect();
            write!(f, "{}{{{}|ε:{}}}", if i > 0 { "," } else { "" }, cs.join(","), e)?;
        }
        write!(f, "] objs=[")?;
        for (i, o) in self.objs.iter().enumerate() {
            write!(f, "{}{}", if i > 0 { "," } else { "" }, o)?;
        }
        write!(f, "] ints=[{}, {}] rel={} {}", self.ints[0], self.ints[1], self.rel.symbol(), self.k)
    }
}

fn random_index(rng: &mut impl Rng) -> IntAbstract {
    match rng.gen_range(0..4) {
        0 => IntAbstract::exact(rng.gen_range(0..5)),
        1 => {
            let lo = rng.gen_range(0..3);
            IntAbstract::range(lo, Some(lo + rng.gen_range(1..4)))
        }
        2 => IntAbstract::range(rng.gen_range(0..3), None),
        _ => IntAbstract { neg_one: true, nonneg: Some((0, Some(rng.gen_range(1..4)))) },
    }
}

/// Summary of one randomized suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{status} {} ({} trials, {} failures)", self.name, self.trials, self.failures)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Runs `prop` on `trials` random instances; the first failure is shrunk
/// and reported. `prop` returns a description of the violation.
pub fn run_check<G, P>(name: &str, trials: usize, seed: u64, generate: G, prop: P) -> CheckOutcome
where
    G: Fn(&mut ChaCha8Rng) -> Instance,
    P: Fn(&Instance) -> Option<String>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let inst = generate(&mut rng);
        if let Some(msg) = prop(&inst) {
            failures += 1;
            if counterexample.is_none() {
                let (small, msg) = shrink(inst, msg, &prop);
                counterexample = Some(format!("{small}: {msg}"));
            }
        }
    }
    CheckOutcome { name: name.to_string(), trials, failures, counterexample }
}

fn shrink<P>(mut inst: Instance, mut msg: String, prop: &P) -> (Instance, String)
where
    P: Fn(&Instance) -> Option<String>,
{
    'outer: for _ in 0..200 {
        for next in inst.shrinks() {
            if let Some(m) = prop(&next) {
                inst = next;
                msg = m;
                continue 'outer;
            }
        }
        break;
    }
    (inst, msg)
}

/// Operations covered by the soundness suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoundOp {
    Concat,
    Substring,
    IndexOf,
    Replace,
    CharAt,
    Truthy,
    Falsy,
    IndexCmp,
}

impl SoundOp {
    pub const ALL: [SoundOp; 8] = [
        SoundOp::Concat,
        SoundOp::Substring,
        SoundOp::IndexOf,
        SoundOp::Replace,
        SoundOp::CharAt,
        SoundOp::Truthy,
        SoundOp::Falsy,
        SoundOp::IndexCmp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SoundOp::Concat => "concat",
            SoundOp::Substring => "substring",
            SoundOp::IndexOf => "indexOf",
            SoundOp::Replace => "replace",
            SoundOp::CharAt => "charAt",
            SoundOp::Truthy => "assume truthy",
            SoundOp::Falsy => "assume falsy",
            SoundOp::IndexCmp => "assume indexOf comparison",
        }
    }

    fn arity(self) -> usize {
        match self {
            SoundOp::Concat | SoundOp::IndexOf | SoundOp::IndexCmp => 2,
            SoundOp::Replace => 3,
            _ => 1,
        }
    }
}

const MAX_TUPLES: usize = 20_000;

/// Bounded members of each object, subsampled so that their product stays
/// below a fixed number of tuples.
fn sample_members(objs: &[StringObject], ctx: &Ctx, max_len: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Word>> {
    let mut sets: Vec<Vec<Word>> = objs
        .iter()
        .map(|o| enumerate_gamma(o, ctx, max_len).unwrap().into_iter().collect())
        .collect();
    let per = (MAX_TUPLES as f64).powf(1.0 / sets.len() as f64) as usize;
    for s in &mut sets {
        if s.len() > per {
            s.shuffle(rng);
            s.truncate(per.max(1));
        }
    }
    sets
}

fn tuples(sets: &[Vec<Word>]) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = vec![Vec::new()];
    for s in sets {
        out = out
            .into_iter()
            .flat_map(|t| {
                s.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn members_of_index(n: &IntAbstract) -> Vec<i64> {
    let mut out = Vec::new();
    if n.neg_one {
        out.push(-1);
    }
    if let Some((lo, hi)) = n.nonneg {
        out.extend((lo..hi.unwrap_or(lo + 10).min(lo + 10)).map(|k| k as i64));
    }
    out
}

/// Checks bounded-γ inclusion of the concrete results in the abstract one.
pub fn soundness_violation(op: SoundOp, inst: &Instance, max_len: usize) -> Option<String> {
    let ctx = inst.ctx();
    let objs: Vec<StringObject> = inst.objs[..op.arity()].iter().map(|s| s.build(&ctx)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let sets = sample_members(&objs, &ctx, max_len, &mut rng);
    let n = inst.ints[0];
    let ns = members_of_index(&n);
    let missing = |w: &[char], r: &StringObject, args: &[Word], extra: &str| -> Option<String> {
        (!r.contains(w, &ctx)).then(|| {
            let args: Vec<String> = args.iter().map(|a| format!("{:?}", show(a))).collect();
            format!("{}({}{extra}) = {:?} not in {r}", op.name(), args.join(","), show(w))
        })
    };
    match op {
        SoundOp::Concat | SoundOp::Replace => {
            let r = if op == SoundOp::Concat {
                ops::abs_concat(&objs[0], &objs[1], &ctx)
            } else {
                ops::abs_replace(&objs[0], &objs[1], &objs[2], &ctx)
            };
            for t in tuples(&sets) {
                let w = if op == SoundOp::Concat {
                    concrete::concat(&t[0], &t[1])
                } else {
                    concrete::replace(&t[0], &t[1], &t[2])
                };
                if let Some(e) = missing(&w, &r, &t, "") {
                    return Some(e);
                }
            }
        }
        SoundOp::Substring | SoundOp::CharAt => {
            let r = if op == SoundOp::Substring {
                let n = IntAbstract { neg_one: false, ..n };
                if n.is_bottom() {
                    return None;
                }
                ops::abs_substring(&objs[0], &n, &ctx)
            } else {
                ops::abs_char_at(&objs[0], &n, &ctx)
            };
            for w in &sets[0] {
                for &k in &ns {
                    if op == SoundOp::Substring && k < 0 {
                        continue;
                    }
                    let out = if op == SoundOp::Substring {
                        concrete::substring(w, k)
                    } else {
                        concrete::char_at(w, k)
                    };
                    if let Some(e) = missing(&out, &r, &[w.clone()], &format!(",{k}")) {
                        return Some(e);
                    }
                }
            }
        }
        SoundOp::IndexOf => {
            let r = ops::abs_index_of(&objs[0], &objs[1], &ctx);
            for t in tuples(&sets) {
                let k = concrete::index_of(&t[0], &t[1]);
                if !r.contains(k) {
                    return Some(format!("indexOf({:?},{:?}) = {k} not in {r}", show(&t[0]), show(&t[1])));
                }
            }
        }
        SoundOp::Truthy | SoundOp::Falsy => {
            let r = if op == SoundOp::Truthy {
                ops::assume_truthy(&objs[0], &ctx)
            } else {
                ops::assume_falsy(&objs[0], &ctx)
            };
            for w in &sets[0] {
                if w.is_empty() != (op == SoundOp::Falsy) {
                    continue;
                }
                if let Some(e) = missing(w, &r, &[w.clone()], "") {
                    return Some(e);
                }
            }
        }
        SoundOp::IndexCmp => {
            let (r1, r2) = ops::assume_index_cmp(&objs[0], &objs[1], inst.rel, inst.k, &ctx);
            for t in tuples(&sets) {
                if !inst.rel.holds(concrete::index_of(&t[0], &t[1]), inst.k) {
                    continue;
                }
                for (w, r) in [(&t[0], &r1), (&t[1], &r2)] {
                    if !r.contains(w, &ctx) {
                        return Some(format!(
                            "indexOf({:?},{:?}) {} {} but {:?} not in {r}",
                            show(&t[0]),
                            show(&t[1]),
                            inst.rel.symbol(),
                            inst.k,
                            show(w)
                        ));
                    }
                }
            }
        }
    }
    None
}

pub fn check_soundness(op: SoundOp, trials: usize, seed: u64, max_len: usize) -> CheckOutcome {
    run_check(
        &format!("soundness of {}", op.name()),
        trials,
        seed,
        |rng| Instance::random(rng, 3),
        |inst| soundness_violation(op, inst, max_len),
    )
}

/// Join and meet used by the lattice-law suite; replaceable so that the
/// harness can be checked against a broken operation.
pub struct LatticeOps {
    pub join: fn(&StringObject, &StringObject, &Ctx) -> StringObject,
    pub meet: fn(&StringObject, &StringObject, &Ctx) -> StringObject,
}

pub const OBJECT_OPS: LatticeOps = LatticeOps { join: StringObject::join, meet: StringObject::meet };

pub fn lattice_violation(ops: &LatticeOps, inst: &Instance) -> Option<String> {
    let ctx = inst.ctx();
    let o: Vec<StringObject> = inst.objs.iter().map(|s| s.build(&ctx)).collect();
    let (a, b, c) = (&o[0], &o[1], &o[2]);
    let j = |x: &StringObject, y: &StringObject| (ops.join)(x, y, &ctx);
    let m = |x: &StringObject, y: &StringObject| (ops.meet)(x, y, &ctx);
    let laws: [(&str, StringObject, StringObject); 8] = [
        ("join commutes", j(a, b), j(b, a)),
        ("meet commutes", m(a, b), m(b, a)),
        ("join associates", j(&j(a, b), c), j(a, &j(b, c))),
        ("meet associates", m(&m(a, b), c), m(a, &m(b, c))),
        ("join absorbs meet", j(a, &m(a, b)), a.clone()),
        ("meet absorbs join", m(a, &j(a, b)), a.clone()),
        ("join of reduced is reduced", j(a, b), j(a, b).reduce(&ctx)),
        ("join is an upper bound", j(a, b).meet(a, &ctx), a.clone()),
    ];
    for (name, l, r) in laws {
        if !l.equiv(&r, &ctx) {
            return Some(format!("{name}: {l} vs {r}"));
        }
    }
    None
}

pub fn check_lattice_laws(trials: usize, seed: u64) -> CheckOutcome {
    check_lattice_with(&OBJECT_OPS, "lattice laws", trials, seed)
}

pub fn check_lattice_with(ops: &LatticeOps, name: &str, trials: usize, seed: u64) -> CheckOutcome {
    run_check(name, trials, seed, |rng| Instance::random(rng, 3), |inst| lattice_violation(ops, inst))
}

/// `s ⊆ γ(α(s))`, `α(γ_bounded(o)) ⪯ o`, and exact atoms.
pub fn galois_violation(inst: &Instance, max_len: usize) -> Option<String> {
    let ctx = inst.ctx();
    let s: BTreeSet<Word> = inst.objs[0].words.iter().cloned().collect();
    let a = alpha_of_set(&s, &ctx);
    if let Some(w) = s.iter().find(|w| !a.contains(w, &ctx)) {
        return Some(format!("{:?} not in α(s) = {a}", show(w)));
    }
    let o = inst.objs[1].build(&ctx);
    let g = enumerate_gamma(&o, &ctx, max_len).unwrap();
    let back = alpha_of_set(&g, &ctx);
    if !back.leq(&o, &ctx) {
        return Some(format!("α(γ(o)) = {back} not below o = {o}"));
    }
    let w = &inst.objs[2].words[0];
    let atom = alpha_of_set(&[w.clone()].into_iter().collect(), &ctx);
    let g = enumerate_gamma(&atom, &ctx, max_len).unwrap();
    if g.len() != 1 || !g.contains(w) {
        return Some(format!("γ(α({{{:?}}})) has {} members", show(w), g.len()));
    }
    None
}

pub fn check_galois(trials: usize, seed: u64, max_len: usize) -> CheckOutcome {
    run_check(
        "galois connection and atoms",
        trials,
        seed,
        |rng| Instance::random(rng, 3),
        |inst| galois_violation(inst, max_len),
    )
}
