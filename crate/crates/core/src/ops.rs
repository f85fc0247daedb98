//! Concrete string operations and their abstract transformers over
//! [`StringObject`], plus guard refinements.

use std::collections::BTreeSet;
use std::fmt;

use crate::morphism::StandardMorphism;
use crate::object::{Ctx, StringObject};
use crate::property::{LowerBound, PropValue, UnaryInterval};
use crate::word::{is_factor, is_prefix, Word};

/// Concrete semantics of the five operations.
pub mod concrete {
    use crate::word::{find, Word};

    pub fn concat(a: &[char], b: &[char]) -> Word {
        [a, b].concat()
    }

    /// Drops the first `n` letters; `n ≤ 0` is the identity.
    pub fn substring(w: &[char], n: i64) -> Word {
        if n <= 0 {
            w.to_vec()
        } else if n as usize >= w.len() {
            Vec::new()
        } else {
            w[n as usize..].to_vec()
        }
    }

    /// Index of the first occurrence, or −1.
    pub fn index_of(w: &[char], pat: &[char]) -> i64 {
        find(w, pat, 0).map_or(-1, |i| i as i64)
    }

    /// Replaces the first occurrence; an empty pattern prepends.
    pub fn replace(w: &[char], pat: &[char], with: &[char]) -> Word {
        match find(w, pat, 0) {
            Some(i) => [&w[..i], with, &w[i + pat.len()..]].concat(),
            None => w.to_vec(),
        }
    }

    pub fn char_at(w: &[char], n: i64) -> Word {
        if n < 0 || n as usize >= w.len() {
            Vec::new()
        } else {
            vec![w[n as usize]]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Concat,
    Substring,
    IndexOf,
    Replace,
    CharAt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Concrete {
    Word(Word),
    Int(i64),
}

/// Evaluates `op` on concrete arguments; `None` when the arity or argument
/// kinds do not match.
pub fn concrete_eval(op: OpKind, args: &[Concrete]) -> Option<Concrete> {
    use Concrete::{Int, Word as W};
    Some(match (op, args) {
        (OpKind::Concat, [W(a), W(b)]) => W(concrete::concat(a, b)),
        (OpKind::Substring, [W(a), Int(n)]) => W(concrete::substring(a, *n)),
        (OpKind::IndexOf, [W(a), W(b)]) => Int(concrete::index_of(a, b)),
        (OpKind::Replace, [W(a), W(b), W(c)]) => W(concrete::replace(a, b, c)),
        (OpKind::CharAt, [W(a), Int(n)]) => W(concrete::char_at(a, *n)),
        _ => return None,
    })
}

/// Abstract integer: optionally −1, plus a half-open interval of naturals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntAbstract {
    pub neg_one: bool,
    pub nonneg: Option<(usize, Option<usize>)>,
}

impl IntAbstract {
    pub const BOTTOM: IntAbstract = IntAbstract { neg_one: false, nonneg: None };
    pub const TOP: IntAbstract = IntAbstract { neg_one: true, nonneg: Some((0, None)) };

    /// `{n}`; integers below −1 clamp to −1.
    pub fn exact(n: i64) -> Self {
        if n < 0 {
            IntAbstract { neg_one: true, nonneg: None }
        } else {
            Self::range(n as usize, Some(n as usize + 1))
        }
    }

    pub fn range(lo: usize, hi: Option<usize>) -> Self {
        let nonneg = match hi {
            Some(h) if h <= lo => None,
            _ => Some((lo, hi)),
        };
        IntAbstract { neg_one: false, nonneg }
    }

    pub fn is_bottom(&self) -> bool {
        !self.neg_one && self.nonneg.is_none()
    }

    pub fn contains(&self, n: i64) -> bool {
        if n == -1 {
            return self.neg_one;
        }
        n >= 0
            && self
                .nonneg
                .is_some_and(|(lo, hi)| lo <= n as usize && hi.map_or(true, |h| (n as usize) < h))
    }

    /// The single member, if there is exactly one.
    pub fn as_exact(&self) -> Option<i64> {
        match (self.neg_one, self.nonneg) {
            (true, None) => Some(-1),
            (false, Some((lo, Some(hi)))) if hi == lo + 1 => Some(lo as i64),
            _ => None,
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        let nonneg = match (self.nonneg, other.nonneg) {
            (None, r) | (r, None) => r,
            (Some((l1, h1)), Some((l2, h2))) => {
                let hi = match (h1, h2) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
                Some((l1.min(l2), hi))
            }
        };
        IntAbstract { neg_one: self.neg_one || other.neg_one, nonneg }
    }

    /// Members `n` with `n rel k`.
    pub fn filter(&self, rel: Rel, k: i64) -> Self {
        let neg_one = self.neg_one && rel.holds(-1, k);
        let Some((lo, hi)) = self.nonneg else {
            return IntAbstract { neg_one, nonneg: None };
        };
        let (mut a, mut b): (i64, Option<i64>) = (lo as i64, hi.map(|h| h as i64));
        let cap = |b: Option<i64>, v: i64| Some(b.map_or(v, |x| x.min(v)));
        match rel {
            Rel::Eq => {
                a = a.max(k);
                b = cap(b, k + 1);
            }
            Rel::Ne => {
                if a == k {
                    a += 1;
                } else if b == Some(k + 1) {
                    b = Some(k);
                }
            }
            Rel::Lt => b = cap(b, k),
            Rel::Le => b = cap(b, k + 1),
            Rel::Gt => a = a.max(k + 1),
            Rel::Ge => a = a.max(k),
        }
        let nonneg = if b.is_some_and(|b| b <= a) || a < 0 && b.is_some_and(|b| b <= 0) {
            None
        } else {
            Some((a.max(0) as usize, b.map(|b| b as usize)))
        };
        IntAbstract { neg_one, nonneg }
    }

    /// Largest member, `None` when unbounded.
    fn max(&self) -> Option<i64> {
        match self.nonneg {
            Some((_, Some(h))) => Some(h as i64 - 1),
            Some((_, None)) => None,
            None => Some(-1),
        }
    }
}

impl fmt::Display for IntAbstract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return write!(f, "⊥");
        }
        let mut parts = Vec::new();
        if self.neg_one {
            parts.push("{-1}".to_string());
        }
        match self.nonneg {
            Some((lo, Some(h))) if h == lo + 1 => parts.push(format!("{{{lo}}}")),
            Some((lo, Some(h))) => parts.push(format!("[{lo};{h})")),
            Some((lo, None)) => parts.push(format!("[{lo};+inf)")),
            None => {}
        }
        write!(f, "{}", parts.join("u"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Rel {
    pub fn holds(self, a: i64, b: i64) -> bool {
        match self {
            Rel::Eq => a == b,
            Rel::Ne => a != b,
            Rel::Lt => a < b,
            Rel::Le => a <= b,
            Rel::Gt => a > b,
            Rel::Ge => a >= b,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Lt => Rel::Ge,
            Rel::Le => Rel::Gt,
            Rel::Gt => Rel::Le,
            Rel::Ge => Rel::Lt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "==",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }
}

fn concat_bounds(b1: &LowerBound, b2: &LowerBound) -> LowerBound {
    if b1.is_bottom || b2.is_bottom {
        return LowerBound::bottom();
    }
    if let (Some(c1), Some(c2)) = (&b1.constant, &b2.constant) {
        return LowerBound::of_constant(&[c1.as_slice(), c2].concat());
    }
    let prefix = match &b1.constant {
        Some(c) => Some([c.as_slice(), b2.prefix.as_deref().unwrap_or(&[])].concat()),
        None => b1.prefix.clone(),
    };
    let suffix = match &b2.constant {
        Some(c) => Some([b1.suffix.as_deref().unwrap_or(&[]), c.as_slice()].concat()),
        None => b2.suffix.clone(),
    };
    let mut factors = b1.factors.clone();
    factors.extend(b2.factors.iter().cloned());
    if let (Some(s), Some(p)) = (&b1.suffix, &b2.prefix) {
        factors.insert([s.as_slice(), p].concat());
    }
    LowerBound { is_bottom: false, constant: None, prefix, suffix, factors }.basic_reduce()
}

/// Image concatenation for one property value.
pub fn concat_values(v1: &PropValue, v2: &PropValue) -> PropValue {
    match (v1, v2) {
        (PropValue::Unary(u1), PropValue::Unary(u2)) => PropValue::Unary(u1.add(u2)),
        (PropValue::NonUnary { eps: e1, bound: b1 }, PropValue::NonUnary { eps: e2, bound: b2 }) => {
            let mut b = concat_bounds(b1, b2);
            if *e2 {
                b = b.join(b1);
            }
            if *e1 {
                b = b.join(b2);
            }
            PropValue::NonUnary { eps: *e1 && *e2, bound: b }
        }
        _ => panic!("property kinds differ"),
    }
}

pub fn abs_concat(o1: &StringObject, o2: &StringObject, ctx: &Ctx) -> StringObject {
    if o1.is_bottom || o2.is_bottom {
        return StringObject::bottom();
    }
    let mut ms = o1.morphisms(ctx);
    ms.extend(o2.morphisms(ctx));
    let mut out = StringObject {
        is_bottom: false,
        value: concat_values(&o1.value, &o2.value),
        length: o1.length.add(&o2.length),
        customs: Default::default(),
    };
    for m in ms {
        let v = concat_values(&o1.component(&m, ctx), &o2.component(&m, ctx));
        out.customs.insert(m, v);
    }
    out.light_reduce(ctx)
}

/// Shortest non-empty length of the object.
fn min_nonempty(o: &StringObject) -> usize {
    o.bound().min_len().max(o.length.lo().unwrap_or(0))
}

/// Range of the number of `m`-surviving letters among the first `N` letters,
/// for `N` in `[nlo, nmax]`.
fn surviving_range(
    o: &StringObject,
    m: &StandardMorphism,
    nlo: usize,
    nmax: Option<usize>,
    ctx: &Ctx,
) -> (usize, Option<usize>) {
    if !m.is_erasing(&ctx.sigma) {
        return (nlo, nmax);
    }
    let count = |w: &[char]| w.iter().filter(|&&c| m.image(c).is_some()).count();
    match (nmax, &o.bound().prefix) {
        (Some(n), Some(p)) if p.len() >= n => (count(&p[..nlo]), Some(count(&p[..n]))),
        _ => (0, nmax),
    }
}

/// Drops the first `k ∈ [kmin, kmax]` letters from every member.
fn strip_value(v: &PropValue, kmin: usize, kmax: Option<usize>, minlen: usize) -> PropValue {
    match v {
        PropValue::Unary(u) => {
            let Some((lo, hi)) = u.range else {
                return v.clone();
            };
            let eps = u.eps || kmax.map_or(true, |k| k >= lo);
            let lo2 = kmax.map_or(1, |k| lo.saturating_sub(k));
            PropValue::Unary(UnaryInterval::new(eps, lo2, hi.map(|h| h.saturating_sub(kmin))))
        }
        PropValue::NonUnary { eps, bound } => {
            if bound.is_bottom {
                return v.clone();
            }
            let eps2 = *eps || kmax.map_or(true, |k| k >= minlen);
            let exact = kmax.filter(|&k| k == kmin);
            if let (Some(c), Some(k)) = (&bound.constant, exact) {
                return if k < c.len() {
                    PropValue::NonUnary { eps: *eps, bound: LowerBound::of_constant(&c[k..]) }
                } else {
                    PropValue::eps_only(false)
                };
            }
            let prefix = match (exact, &bound.prefix) {
                (Some(k), Some(p)) if p.len() > k => Some(p[k..].to_vec()),
                _ => None,
            };
            let keep = kmax.map_or(0, |k| minlen.saturating_sub(k));
            let suffix = bound
                .suffix
                .as_ref()
                .filter(|_| keep > 0)
                .map(|s| s[s.len().saturating_sub(keep)..].to_vec());
            let b = LowerBound { prefix, suffix, ..LowerBound::top() }.basic_reduce();
            PropValue::NonUnary { eps: eps2, bound: b }
        }
    }
}

fn nonneg_part(n: &IntAbstract) -> Option<(usize, Option<usize>)> {
    match (n.neg_one, n.nonneg) {
        (false, r) => r,
        (true, None) => Some((0, Some(1))),
        (true, Some((_, hi))) => Some((0, hi)),
    }
}

/// Substring from an abstract start index; −1 is treated as 0, like every
/// non-positive index.
pub fn abs_substring(o: &StringObject, n: &IntAbstract, ctx: &Ctx) -> StringObject {
    if o.is_bottom {
        return StringObject::bottom();
    }
    let Some((nlo, nhi)) = nonneg_part(n) else {
        return StringObject::bottom();
    };
    let nmax = nhi.map(|h| h - 1);
    if nmax == Some(0) {
        return o.clone();
    }
    if let Some(c) = o.constant() {
        let top = nmax.unwrap_or(c.len()).min(c.len());
        return (nlo.min(c.len())..=top)
            .map(|k| StringObject::atom(&concrete::substring(&c, k as i64), ctx))
            .fold(StringObject::bottom(), |acc, x| acc.raw_join(&x, ctx))
            .normalized(ctx);
    }
    let minlen = min_nonempty(o);
    let mut out = StringObject {
        is_bottom: false,
        value: strip_value(&o.value, nlo, nmax, minlen),
        length: *strip_value(&PropValue::Unary(o.length), nlo, nmax, 0).interval().unwrap(),
        customs: Default::default(),
    };
    for m in o.morphisms(ctx) {
        let c = o.component(&m, ctx);
        let (kmin, kmax) = surviving_range(o, &m, nlo, nmax, ctx);
        let mlen = c.bound().map_or(0, |b| b.min_len());
        out.customs.insert(m, strip_value(&c, kmin, kmax, mlen));
    }
    out.normalized(ctx)
}

pub fn abs_char_at(o: &StringObject, n: &IntAbstract, ctx: &Ctx) -> StringObject {
    if o.is_bottom || n.is_bottom() {
        return StringObject::bottom();
    }
    let Some((nlo, nhi)) = n.nonneg else {
        return StringObject::eps_only();
    };
    if let Some(c) = o.constant() {
        let top = nhi.map_or(c.len(), |h| h - 1).min(c.len());
        let mut acc = StringObject::bottom();
        if n.neg_one {
            acc = StringObject::eps_only();
        }
        for k in nlo.min(c.len())..=top {
            acc = acc.raw_join(&StringObject::atom(&concrete::char_at(&c, k as i64), ctx), ctx);
        }
        return acc.normalized(ctx);
    }
    let nmax = nhi.map(|h| h - 1);
    let lo = o.length.lo();
    let longest = o.length.greatest();
    let in_range = lo.is_some() && longest.map_or(false, |m| m.map_or(true, |m| m > nlo));
    let out_range = n.neg_one || o.eps() || lo.is_none() || nmax.map_or(true, |k| k >= lo.unwrap());
    let letter = match (nmax, &o.bound().prefix) {
        (Some(k), Some(p)) if k == nlo && k < p.len() => Some(p[k]),
        _ => None,
    };
    let mut acc = if out_range { StringObject::eps_only() } else { StringObject::bottom() };
    if in_range {
        let hit = match letter {
            Some(x) => StringObject::atom(&[x], ctx),
            None => StringObject::from_value(false, LowerBound::top(), UnaryInterval::exact(1)),
        };
        acc = acc.raw_join(&hit, ctx);
    }
    acc.light_reduce(ctx)
}

/// Whether `w` is guaranteed to occur in every member of `o`.
fn guaranteed_factor(o: &StringObject, w: &[char]) -> bool {
    if w.is_empty() {
        return true;
    }
    !o.eps() && o.bound().words().any(|f| is_factor(w, f))
}

pub fn abs_index_of(o1: &StringObject, o2: &StringObject, ctx: &Ctx) -> IntAbstract {
    if o1.is_bottom || o2.is_bottom {
        return IntAbstract::BOTTOM;
    }
    if let (Some(a), Some(b)) = (o1.constant(), o2.constant()) {
        return IntAbstract::exact(concrete::index_of(&a, &b));
    }
    let hi = match (o1.length.greatest(), o2.length.least()) {
        (Some(Some(m1)), Some(m2)) if m1 >= m2 => Some(m1 - m2 + 1),
        (Some(Some(_)), Some(_)) => Some(0),
        _ => None,
    };
    let mut out = IntAbstract { neg_one: true, nonneg: Some((0, hi)) };
    if hi == Some(0) {
        out.nonneg = None;
    }
    if let Some(w) = o2.constant() {
        if w.is_empty() {
            return IntAbstract::exact(0);
        }
        if guaranteed_factor(o1, &w) {
            out.neg_one = false;
            if o1.bound().prefix.as_ref().is_some_and(|p| is_prefix(&w, p)) {
                return IntAbstract::exact(0);
            }
        }
    }
    let mut ms: BTreeSet<StandardMorphism> = o1.morphisms(ctx);
    ms.extend(o2.morphisms(ctx));
    ms.insert(StandardMorphism::identity());
    let refuted = ms.iter().any(|m| prefix_mismatch(&o1.component(m, ctx), &o2.component(m, ctx)));
    if refuted {
        out = out.filter(Rel::Ne, 0);
    }
    if out.nonneg.is_none() && !out.neg_one {
        return IntAbstract::BOTTOM;
    }
    out
}

/// Whether no image of `v1` can start with an image of `v2`.
fn prefix_mismatch(v1: &PropValue, v2: &PropValue) -> bool {
    let (PropValue::NonUnary { bound: b1, .. }, PropValue::NonUnary { eps: e2, bound: b2 }) = (v1, v2)
    else {
        return false;
    };
    if *e2 || b1.is_bottom || b2.is_bottom {
        return false;
    }
    let (Some(p1), Some(p2)) = (&b1.prefix, &b2.prefix) else {
        return false;
    };
    !is_prefix(p1, p2) && !is_prefix(p2, p1)
}

/// Whether `w` placed at some offset can overlap `f` consistently.
fn may_overlap(w: &[char], f: &[char]) -> bool {
    let (lw, lf) = (w.len() as isize, f.len() as isize);
    (1 - lw..lf).any(|d| {
        (0..lw).all(|i| {
            let j = d + i;
            j < 0 || j >= lf || f[j as usize] == w[i as usize]
        })
    })
}

fn replace_occurrence(o: &StringObject, w2: &[char], w3: &[char], ctx: &Ctx) -> StringObject {
    let length = o.length.raise_lo(w2.len());
    if length.is_bottom() {
        return StringObject::bottom();
    }
    let b = o.bound();
    let p = b.prefix.clone().unwrap_or_default();
    let fits = |j: usize| (0..w2.len()).all(|i| j + i >= p.len() || p[j + i] == w2[i]);
    let j0 = (0..=p.len()).find(|&j| fits(j)).unwrap();
    let placed = j0 + w2.len() <= p.len();
    let prefix = if placed {
        [&p[..j0], w3, &p[j0 + w2.len()..]].concat()
    } else {
        p[..j0].to_vec()
    };
    let lo = length.lo().unwrap_or(0);
    let mut factors: BTreeSet<Word> = b
        .factors
        .iter()
        .filter(|f| Some(*f) != b.prefix.as_ref() && !may_overlap(w2, f))
        .cloned()
        .collect();
    let suffix = b.suffix.clone().filter(|s| {
        !may_overlap(w2, s) || placed && lo >= j0 + w2.len() + s.len()
    });
    if !w3.is_empty() {
        factors.insert(w3.to_vec());
    }
    let bound = LowerBound { prefix: Some(prefix), suffix, factors, ..LowerBound::top() }.basic_reduce();
    let delta = w3.len() as isize - w2.len() as isize;
    let eps = w3.is_empty() && length.contains(w2.len());
    let mut out = StringObject::from_value(eps, bound, length.shift(delta));
    for m in o.morphisms(ctx) {
        if let PropValue::Unary(u) = o.component(&m, ctx) {
            let (i2, i3) = (m.apply(w2).len(), m.apply(w3).len());
            let u = u.raise_lo(i2).shift(i3 as isize - i2 as isize);
            out.customs.insert(m, PropValue::Unary(u));
        }
    }
    out
}

pub fn abs_replace(o1: &StringObject, o2: &StringObject, o3: &StringObject, ctx: &Ctx) -> StringObject {
    if o1.is_bottom || o2.is_bottom || o3.is_bottom {
        return StringObject::bottom();
    }
    let (Some(w2), Some(w3)) = (o2.constant(), o3.constant()) else {
        return replace_hull(o1, o2, o3);
    };
    if let Some(w1) = o1.constant() {
        return StringObject::atom(&concrete::replace(&w1, &w2, &w3), ctx);
    }
    if w2.is_empty() {
        return abs_concat(&StringObject::atom(&w3, ctx), o1, ctx);
    }
    let idx = abs_index_of(o1, o2, ctx);
    let mut acc = StringObject::bottom();
    if idx.neg_one {
        acc = o1.clone();
    }
    if idx.nonneg.is_some() {
        acc = acc.raw_join(&replace_occurrence(o1, &w2, &w3, ctx), ctx);
    }
    acc.light_reduce(ctx)
}

fn replace_hull(o1: &StringObject, o2: &StringObject, o3: &StringObject) -> StringObject {
    let (Some(min1), Some(min2), Some(min3)) = (o1.length.least(), o2.length.least(), o3.length.least())
    else {
        return StringObject::bottom();
    };
    let (max1, max2, max3) = (
        o1.length.greatest().unwrap(),
        o2.length.greatest().unwrap(),
        o3.length.greatest().unwrap(),
    );
    let lo = match max2 {
        Some(m2) => min1.min(min1.saturating_sub(m2) + min3),
        None => min1.min(min3),
    };
    let hi = match (max1, max3) {
        (Some(a), Some(c)) => Some(a.max(a.saturating_sub(min2) + c) + 1),
        _ => None,
    };
    StringObject::from_value(true, LowerBound::top(), UnaryInterval::span(lo, hi))
}

fn nonempty_object() -> StringObject {
    StringObject::from_value(false, LowerBound::top(), UnaryInterval::NONEMPTY)
}

pub fn assume_truthy(o: &StringObject, ctx: &Ctx) -> StringObject {
    o.meet(&nonempty_object(), ctx)
}

pub fn assume_falsy(o: &StringObject, ctx: &Ctx) -> StringObject {
    o.meet(&StringObject::eps_only(), ctx)
}

/// Refines `o1` and `o2` under `o1.indexOf(o2) rel k`; both are ⊥ when the
/// comparison cannot hold.
pub fn assume_index_cmp(
    o1: &StringObject,
    o2: &StringObject,
    rel: Rel,
    k: i64,
    ctx: &Ctx,
) -> (StringObject, StringObject) {
    let r = abs_index_of(o1, o2, ctx).filter(rel, k);
    if r.is_bottom() {
        return (StringObject::bottom(), StringObject::bottom());
    }
    let mut o1 = o1.clone();
    if let Some(w) = o2.constant().filter(|w| !w.is_empty()) {
        let refine = if r.as_exact() == Some(0) {
            Some(LowerBound::of_prefix(&w))
        } else if !r.neg_one {
            Some(LowerBound::of_factors([w.clone()]))
        } else {
            None
        };
        if let Some(b) = refine {
            let len = UnaryInterval::new(false, w.len(), None);
            o1 = o1.meet(&StringObject::from_value(false, b, len), ctx);
        }
    }
    if r.as_exact() == Some(-1) && o2.constant().is_some_and(|w| w.is_empty()) {
        return (StringObject::bottom(), StringObject::bottom());
    }
    if o1.is_bottom {
        return (StringObject::bottom(), StringObject::bottom());
    }
    (o1, o2.clone())
}

/// Largest member of an abstract index, used by callers that need a bound.
pub fn index_max(n: &IntAbstract) -> Option<i64> {
    n.max()
}
