//! String objects: a value, a length and morphism-indexed custom
//! properties, kept mutually reduced.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::morphism::StandardMorphism;
use crate::property::{
    cross_reduction_threshold, perfect_reduce_budgeted, standalone_reduce, LowerBound, PropValue,
    UnaryInterval, DEFAULT_BUDGET,
};
use crate::transfer::transfer;
use crate::word::{reversed, Alphabet, Word};

const MAX_ROUNDS: usize = 32;

/// Session parameters shared by every operation on objects.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub sigma: Alphabet,
    pub props: Vec<StandardMorphism>,
    pub budget: u64,
}

impl Ctx {
    /// A one-letter alphabet gains a second letter so that the value is
    /// never a unary property.
    pub fn new(sigma: Alphabet, props: Vec<StandardMorphism>) -> Self {
        let sigma = if sigma.len() < 2 {
            let used: BTreeSet<char> = sigma.letters().collect();
            let extra = ('a'..='z').chain('0'..='9').find(|c| !used.contains(c)).unwrap();
            sigma.with([extra])
        } else {
            sigma
        };
        let mut seen = BTreeSet::new();
        let props = props
            .into_iter()
            .filter(|m| !m.is_identity() && !m.is_length(&sigma) && !m.is_trivial(&sigma))
            .filter(|m| seen.insert(m.clone()))
            .collect();
        Ctx { sigma, props, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn length(&self) -> StandardMorphism {
        StandardMorphism::length(&self.sigma)
    }

    fn storable(&self, m: &StandardMorphism) -> bool {
        !m.is_identity() && !m.is_length(&self.sigma) && !m.is_trivial(&self.sigma)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringObject {
    pub is_bottom: bool,
    pub value: PropValue,
    pub length: UnaryInterval,
    pub customs: BTreeMap<StandardMorphism, PropValue>,
}

type Props = Vec<(StandardMorphism, PropValue)>;

impl StringObject {
    pub fn bottom() -> Self {
        StringObject {
            is_bottom: true,
            value: PropValue::bottom(false),
            length: UnaryInterval::BOTTOM,
            customs: BTreeMap::new(),
        }
    }

    pub fn top() -> Self {
        StringObject {
            is_bottom: false,
            value: PropValue::top(false),
            length: UnaryInterval::TOP,
            customs: BTreeMap::new(),
        }
    }

    /// The object whose only member is ε.
    pub fn eps_only() -> Self {
        StringObject {
            is_bottom: false,
            value: PropValue::eps_only(false),
            length: UnaryInterval::EPS,
            customs: BTreeMap::new(),
        }
    }

    /// Exact abstraction of the single word `w`.
    pub fn atom(w: &[char], ctx: &Ctx) -> Self {
        let mut o = StringObject {
            is_bottom: false,
            value: PropValue::atom(w, false),
            length: UnaryInterval::exact(w.len()),
            customs: BTreeMap::new(),
        };
        for m in &ctx.props {
            o.customs.insert(m.clone(), PropValue::atom(&m.apply(w), m.is_unary(&ctx.sigma)));
        }
        o.prune(ctx)
    }

    /// Object with the given value and length and no custom information.
    pub fn from_value(eps: bool, bound: LowerBound, length: UnaryInterval) -> Self {
        StringObject {
            is_bottom: false,
            value: PropValue::nonunary(eps, bound),
            length,
            customs: BTreeMap::new(),
        }
    }

    pub fn eps(&self) -> bool {
        !self.is_bottom && self.value.eps() && self.length.eps
    }

    pub fn bound(&self) -> &LowerBound {
        self.value.bound().expect("value is never unary")
    }

    pub fn bound_mut(&mut self) -> &mut LowerBound {
        match &mut self.value {
            PropValue::NonUnary { bound, .. } => bound,
            PropValue::Unary(_) => unreachable!("value is never unary"),
        }
    }

    /// The single word of the object, when it is known exactly.
    pub fn constant(&self) -> Option<Word> {
        if self.is_bottom {
            return None;
        }
        let b = self.bound();
        match (self.value.eps(), b.is_bottom, &b.constant) {
            (true, true, _) => Some(Vec::new()),
            (false, false, Some(c)) => Some(c.clone()),
            _ => None,
        }
    }

    fn props(&self, ctx: &Ctx) -> Props {
        let mut out: Props = vec![
            (StandardMorphism::identity(), self.value.clone()),
            (ctx.length(), PropValue::Unary(self.length)),
        ];
        out.extend(self.customs.iter().map(|(m, v)| (m.clone(), v.clone())));
        out
    }

    fn from_props(props: Props) -> Self {
        let mut it = props.into_iter();
        let (_, value) = it.next().unwrap();
        let (_, length) = it.next().unwrap();
        let length = *length.interval().unwrap();
        let customs = it.collect();
        let o = StringObject { is_bottom: false, value, length, customs };
        if o.value.is_bottom() || o.length.is_bottom() || o.customs.values().any(|v| v.is_bottom()) {
            Self::bottom()
        } else {
            o
        }
    }

    /// Value of the property indexed by `m`: stored, or derived from every
    /// stored property.
    pub fn component(&self, m: &StandardMorphism, ctx: &Ctx) -> PropValue {
        let unary = m.is_unary(&ctx.sigma);
        if self.is_bottom {
            return PropValue::bottom(unary);
        }
        if m.is_identity() {
            return self.value.clone();
        }
        if m.is_length(&ctx.sigma) {
            return PropValue::Unary(self.length);
        }
        if let Some(v) = self.customs.get(m) {
            return v.clone();
        }
        let mut acc = PropValue::top(unary);
        for (src, v) in self.props(ctx) {
            acc = acc.meet(&transfer(&src, m, &v, &ctx.sigma));
        }
        if let PropValue::NonUnary { bound, .. } = &mut acc {
            let letters = m.image_alphabet(&ctx.sigma);
            if letters.len() == 2 && !bound.is_bottom {
                *bound = standalone_reduce(bound, &letters);
            }
        }
        acc
    }

    /// Membership of a concrete word.
    pub fn contains(&self, w: &[char], _ctx: &Ctx) -> bool {
        !self.is_bottom
            && self.value.contains(w)
            && self.length.contains(w.len())
            && self.customs.iter().all(|(m, v)| v.contains(&m.apply(w)))
    }

    /// Full cross-reduction followed by pruning of redundant customs.
    pub fn reduce(&self, ctx: &Ctx) -> Self {
        if self.is_bottom {
            return Self::bottom();
        }
        let mut props = self.props(ctx);
        for m in join_closure(self.morphisms(ctx), ctx) {
            if !self.customs.contains_key(&m) {
                let v = self.component(&m, ctx);
                props.push((m, v));
            }
        }
        for _ in 0..MAX_ROUNDS {
            let before = props.clone();
            if reduce_round(&mut props, ctx).is_err() {
                return Self::bottom();
            }
            if props == before {
                break;
            }
        }
        Self::from_props(props).prune(ctx)
    }

    /// Drops customs that are ⊤ or implied by the other properties.
    pub fn prune(mut self, ctx: &Ctx) -> Self {
        if self.is_bottom {
            return Self::bottom();
        }
        self.customs.retain(|m, v| ctx.storable(m) && !v.is_top());
        let original = self.customs.clone();
        for (m, v) in &original {
            self.customs.remove(m);
            let implied = original.iter().all(|(k, w)| self.component(k, ctx).leq(w));
            if !implied {
                self.customs.insert(m.clone(), v.clone());
            }
        }
        self
    }

    /// Configured and stored custom morphisms.
    pub fn morphisms(&self, ctx: &Ctx) -> BTreeSet<StandardMorphism> {
        let mut out: BTreeSet<StandardMorphism> = ctx.props.iter().cloned().collect();
        out.extend(self.customs.keys().cloned());
        out
    }

    /// Standalone and unary-bound reduction only, for operations whose
    /// results need no cross-propagation.
    pub fn light_reduce(self, ctx: &Ctx) -> Self {
        if self.is_bottom {
            return Self::bottom();
        }
        let mut props = self.props(ctx);
        let ok = (|| {
            check(&props)?;
            standalone_all(&mut props, ctx);
            unary_bounds_reduce(&mut props, ctx);
            sync_eps(&mut props, &ctx.sigma);
            check(&props)
        })();
        if ok.is_err() {
            return Self::bottom();
        }
        Self::from_props(props).prune(ctx)
    }

    /// Bottom check and pruning without any reduction.
    pub fn normalized(self, ctx: &Ctx) -> Self {
        if self.is_bottom {
            return Self::bottom();
        }
        Self::from_props(self.props(ctx)).prune(ctx)
    }

    /// Morphisms over which a binary operation is computed.
    pub fn combined_morphisms(&self, other: &Self, ctx: &Ctx) -> BTreeSet<StandardMorphism> {
        let base = |o: &Self| -> Vec<StandardMorphism> {
            let mut v = vec![StandardMorphism::identity()];
            v.extend(ctx.props.iter().cloned());
            v.extend(o.customs.keys().cloned());
            v
        };
        let (b1, b2) = (base(self), base(other));
        let mut out = BTreeSet::new();
        for m1 in &b1 {
            for m2 in &b2 {
                let j = m1.join(m2);
                if ctx.storable(&j) {
                    out.insert(j);
                }
            }
        }
        out
    }

    fn componentwise<F>(&self, other: &Self, ctx: &Ctx, op: F) -> Self
    where
        F: Fn(&PropValue, &PropValue) -> PropValue,
    {
        let mut out = StringObject {
            is_bottom: false,
            value: op(&self.value, &other.value),
            length: match op(&PropValue::Unary(self.length), &PropValue::Unary(other.length)) {
                PropValue::Unary(u) => u,
                PropValue::NonUnary { .. } => unreachable!(),
            },
            customs: BTreeMap::new(),
        };
        for m in self.combined_morphisms(other, ctx) {
            let v = op(&self.component(&m, ctx), &other.component(&m, ctx));
            out.customs.insert(m, v);
        }
        out
    }

    /// Componentwise join without reduction.
    pub fn raw_join(&self, other: &Self, ctx: &Ctx) -> Self {
        if self.is_bottom {
            return other.clone();
        }
        if other.is_bottom {
            return self.clone();
        }
        self.componentwise(other, ctx, PropValue::join)
    }

    /// Componentwise meet without reduction.
    pub fn raw_meet(&self, other: &Self, ctx: &Ctx) -> Self {
        if self.is_bottom || other.is_bottom {
            return Self::bottom();
        }
        let o = self.componentwise(other, ctx, PropValue::meet);
        Self::from_props(o.props(ctx))
    }

    pub fn join(&self, other: &Self, ctx: &Ctx) -> Self {
        self.raw_join(other, ctx).reduce(ctx)
    }

    pub fn meet(&self, other: &Self, ctx: &Ctx) -> Self {
        self.raw_meet(other, ctx).reduce(ctx)
    }

    /// Join that, once the delay is exhausted, sends every growing unary
    /// upper bound to +∞.
    pub fn widen(&self, next: &Self, delay_exhausted: bool, ctx: &Ctx) -> Self {
        let mut out = self.join(next, ctx);
        if !delay_exhausted || self.is_bottom || out.is_bottom {
            return out;
        }
        let widen_unary = |prev: &UnaryInterval, cur: &UnaryInterval| -> UnaryInterval {
            match (prev.hi(), cur.range) {
                (Some(Some(h0)), Some((lo, Some(h)))) if h > h0 => UnaryInterval::new(cur.eps, lo, None),
                (None, Some((lo, Some(_)))) => UnaryInterval::new(cur.eps, lo, None),
                _ => *cur,
            }
        };
        out.length = widen_unary(&self.length, &out.length);
        let keys: Vec<StandardMorphism> = out.customs.keys().cloned().collect();
        for m in keys {
            if let (PropValue::Unary(prev), Some(PropValue::Unary(cur))) =
                (self.component(&m, ctx), out.customs.get(&m))
            {
                let w = widen_unary(&prev, cur);
                out.customs.insert(m, PropValue::Unary(w));
            }
        }
        out
    }

    /// `self ⪯ other`: every property of `other` is implied by `self`.
    pub fn leq(&self, other: &Self, ctx: &Ctx) -> bool {
        if self.is_bottom {
            return true;
        }
        if other.is_bottom {
            return false;
        }
        self.value.leq(&other.value)
            && self.length.leq(&other.length)
            && ctx
                .props
                .iter()
                .chain(other.customs.keys())
                .all(|m| self.component(m, ctx).leq(&other.component(m, ctx)))
    }

    /// Mutual order.
    pub fn equiv(&self, other: &Self, ctx: &Ctx) -> bool {
        self.leq(other, ctx) && other.leq(self, ctx)
    }
}

/// Smallest superset of `ms` closed under pairwise join, keeping only
/// storable morphisms.
fn join_closure(ms: BTreeSet<StandardMorphism>, ctx: &Ctx) -> BTreeSet<StandardMorphism> {
    let mut out = ms;
    loop {
        let mut next = out.clone();
        for a in &out {
            for b in &out {
                let j = a.join(b);
                if ctx.storable(&j) {
                    next.insert(j);
                }
            }
        }
        if next.len() == out.len() {
            return out;
        }
        out = next;
    }
}

struct Contradiction;

fn reduce_round(props: &mut Props, ctx: &Ctx) -> Result<(), Contradiction> {
    let sigma = &ctx.sigma;
    check(props)?;
    standalone_all(props, ctx);
    resolve_letter_constraints(props, ctx)?;
    check(props)?;
    propagate(props, ctx);
    check(props)?;
    unary_bounds_reduce(props, ctx);
    sync_eps(props, sigma);
    check(props)?;
    perfect_value(props, ctx);
    check(props)
}

fn standalone_all(props: &mut Props, ctx: &Ctx) {
    for (m, v) in props.iter_mut() {
        if let PropValue::NonUnary { bound, .. } = v {
            let letters = m.image_alphabet(&ctx.sigma);
            if letters.len() == 2 && !bound.is_bottom {
                *bound = standalone_reduce(bound, &letters);
            }
        }
    }
}

fn check(props: &Props) -> Result<(), Contradiction> {
    if props.iter().any(|(_, v)| v.is_bottom()) {
        Err(Contradiction)
    } else {
        Ok(())
    }
}

/// Meets every property with its image from every other property.
fn propagate(props: &mut Props, ctx: &Ctx) {
    for i in 0..props.len() {
        let mut acc = props[i].1.clone();
        for j in 0..props.len() {
            if i != j {
                acc = acc.meet(&transfer(&props[j].0, &props[i].0, &props[j].1, &ctx.sigma));
            }
        }
        props[i].1 = acc;
    }
}

/// A property that excludes ε rules out ε in every property erasing no
/// more letters.
fn sync_eps(props: &mut Props, sigma: &Alphabet) {
    let erase: Vec<BTreeSet<char>> = props.iter().map(|(m, _)| m.erase_set(sigma)).collect();
    for j in 0..props.len() {
        if props[j].1.eps() {
            continue;
        }
        for i in 0..props.len() {
            if erase[i].is_subset(&erase[j]) {
                props[i].1.set_eps(false);
            }
        }
    }
}

/// Length-style lower and upper bounds for unary properties from every
/// compatible property.
fn unary_bounds_reduce(props: &mut Props, ctx: &Ctx) {
    let sigma = &ctx.sigma;
    let erase: Vec<BTreeSet<char>> = props.iter().map(|(m, _)| m.erase_set(sigma)).collect();
    for i in 0..props.len() {
        let PropValue::Unary(mut u) = props[i].1 else { continue };
        for j in 0..props.len() {
            if i == j {
                continue;
            }
            let other = &props[j].1;
            let lower_ok = erase[i].is_subset(&erase[j]) && (!other.eps() || erase[i] == erase[j]);
            if lower_ok {
                let lo = match other {
                    PropValue::NonUnary { bound, .. } if !bound.is_bottom => bound.min_len(),
                    PropValue::Unary(w) => w.lo().unwrap_or(0),
                    _ => 0,
                };
                if lo > 1 {
                    u = u.meet(&UnaryInterval { eps: u.eps, range: Some((lo, None)) });
                }
            }
            if let PropValue::Unary(w) = other {
                if erase[j].is_subset(&erase[i]) {
                    u = match w.range {
                        None => UnaryInterval { eps: u.eps, range: None },
                        Some((_, hi)) => u.meet(&UnaryInterval { eps: u.eps, range: Some((1, hi)) }),
                    };
                }
            }
        }
        props[i].1 = PropValue::Unary(u);
    }
}

/// Candidate letters at successive positions from every ε-free prefix;
/// returns the longest forced word, or a contradiction.
fn forced_prefix(cons: &[(StandardMorphism, Word)], sigma: &Alphabet) -> Result<Word, Contradiction> {
    let mut ptr = vec![0usize; cons.len()];
    let erase: Vec<BTreeSet<char>> = cons.iter().map(|(m, _)| m.erase_set(sigma)).collect();
    let mut out = Vec::new();
    loop {
        let mut cand: BTreeSet<char> = sigma.letters().collect();
        let mut active = false;
        for (k, (m, p)) in cons.iter().enumerate() {
            if ptr[k] < p.len() {
                active = true;
                let mut allowed = m.class(p[ptr[k]], sigma);
                allowed.extend(erase[k].iter().copied());
                cand = cand.intersection(&allowed).copied().collect();
            }
        }
        if !active {
            return Ok(out);
        }
        if cand.is_empty() {
            return Err(Contradiction);
        }
        if cand.len() > 1 {
            return Ok(out);
        }
        let c = *cand.iter().next().unwrap();
        out.push(c);
        for (k, (m, p)) in cons.iter().enumerate() {
            if ptr[k] < p.len() && m.image(c).is_some() {
                ptr[k] += 1;
            }
        }
    }
}

/// Resolves prefix (then suffix) equations of all properties position by
/// position and adds the forced letters to the value.
fn resolve_letter_constraints(props: &mut Props, ctx: &Ctx) -> Result<(), Contradiction> {
    let sigma = &ctx.sigma;
    let mut pre = Vec::new();
    let mut suf = Vec::new();
    for (m, v) in props.iter() {
        if let PropValue::NonUnary { eps: false, bound } = v {
            if let Some(p) = bound.prefix.as_ref().or(bound.constant.as_ref()) {
                pre.push((m.clone(), p.clone()));
            }
            if let Some(s) = bound.suffix.as_ref().or(bound.constant.as_ref()) {
                suf.push((m.clone(), reversed(s)));
            }
        }
    }
    if pre.len() < 2 && suf.len() < 2 {
        return Ok(());
    }
    let p = forced_prefix(&pre, sigma)?;
    let s = reversed(&forced_prefix(&suf, sigma)?);
    if let PropValue::NonUnary { bound, .. } = &mut props[0].1 {
        let mut extra = LowerBound::top();
        if !p.is_empty() {
            extra = extra.meet(&LowerBound::of_prefix(&p));
        }
        if !s.is_empty() {
            extra = extra.meet(&LowerBound::of_suffix(&s));
        }
        *bound = bound.meet(&extra);
    }
    Ok(())
}

/// Exact value and length by enumeration when the length is bounded and
/// below the threshold past which both are already reduced. The threshold
/// needs a letter the value does not mention.
fn perfect_value(props: &mut Props, ctx: &Ctx) {
    let (PropValue::NonUnary { eps, bound }, PropValue::Unary(len)) = (&props[0].1, &props[1].1) else {
        return;
    };
    let Some((lo, Some(_))) = len.range else { return };
    if bound.is_bottom || bound.constant.is_some() {
        return;
    }
    let used = bound.letters();
    let has_delimiter = ctx.sigma.letters().any(|c| !used.contains(&c));
    if has_delimiter && lo >= cross_reduction_threshold(bound) {
        return;
    }
    let (b, l) = perfect_reduce_budgeted(*eps, bound, len, &ctx.sigma, ctx.budget);
    let eps = *eps;
    props[0].1 = PropValue::nonunary(eps, b);
    props[1].1 = PropValue::Unary(l);
}

impl fmt::Display for StringObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom {
            return write!(f, "⊥");
        }
        write!(f, "val: {}; len: {}", self.value, self.length)?;
        for (m, v) in &self.customs {
            write!(f, "; {m}: {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn m(classes: &[&str], erase: &str) -> StandardMorphism {
        StandardMorphism::from_classes(classes.iter().copied(), erase).unwrap()
    }

    fn fac(ws: &[&str]) -> LowerBound {
        LowerBound::of_factors(ws.iter().map(|s| word(s)))
    }

    #[test]
    fn superstring_lengths() {
        let ctx = Ctx::new(Alphabet::from_str("ab"), vec![]);
        let o = StringObject::from_value(false, fac(&["abbab", "abab"]), UnaryInterval::new(false, 6, Some(8)));
        let r = o.reduce(&ctx);
        assert_eq!(r.bound().prefix, Some(word("ab")));
        assert_eq!(r.bound().suffix, Some(word("bab")));
        assert_eq!(r.length, UnaryInterval::new(false, 7, Some(8)));
    }

    #[test]
    fn short_length_gives_constant() {
        let ctx = Ctx::new(Alphabet::from_str("abc"), vec![]);
        let b = LowerBound { prefix: Some(word("a")), factors: [word("ba")].into(), ..LowerBound::default() }
            .basic_reduce();
        let r = StringObject::from_value(false, b, UnaryInterval::new(false, 3, Some(4))).reduce(&ctx);
        assert_eq!(r.bound().constant, Some(word("aba")));
    }

    #[test]
    fn bottom_value_collapses() {
        let ctx = Ctx::new(Alphabet::from_str("ab"), vec![]);
        let o = StringObject::from_value(false, LowerBound::bottom(), UnaryInterval::TOP);
        assert!(o.reduce(&ctx).is_bottom);
    }

    #[test]
    fn prefix_and_suffix_bound_length() {
        let ctx = Ctx::new(Alphabet::from_str("ab_"), vec![]);
        let b = LowerBound { prefix: Some(word("aa")), suffix: Some(word("ab")), ..LowerBound::default() }
            .basic_reduce();
        let r = StringObject::from_value(true, b, UnaryInterval::TOP).reduce(&ctx);
        assert_eq!(r.length, UnaryInterval::new(true, 3, None));
    }

    #[test]
    fn letter_constraints_resolve() {
        let sigma = Alphabet::from_str("abcd");
        let t1 = m(&["ab"], "c");
        let t2 = m(&["ac", "bd"], "");
        let ctx = Ctx::new(sigma, vec![t1.clone(), t2.clone()]);
        let mut o = StringObject::top();
        o.value.set_eps(false);
        o.length.eps = false;
        o.customs.insert(t1, PropValue::nonunary(false, LowerBound::of_prefix(&word("ad"))));
        o.customs.insert(t2, PropValue::nonunary(false, LowerBound::of_prefix(&word("ba"))));
        let r = o.reduce(&ctx);
        assert_eq!(r.bound().prefix, Some(word("bc")));
    }

    #[test]
    fn join_keeps_merged_factor() {
        let sigma = Alphabet::from_str("abcd");
        let s1 = m(&["ab", "cd"], "");
        let t1 = m(&[], "bd");
        let ctx = Ctx::new(sigma, vec![]);
        let mut o1 = StringObject::top();
        o1.customs.insert(s1.clone(), PropValue::nonunary(true, LowerBound::of_prefix(&word("a"))));
        let mut o2 = StringObject::from_value(true, fac(&["a", "d"]), UnaryInterval::TOP);
        o2.customs.insert(t1.clone(), PropValue::nonunary(true, LowerBound::of_prefix(&word("aaa"))));
        let (o1, o2) = (o1.reduce(&ctx), o2.reduce(&ctx));
        let j = o1.join(&o2, &ctx);
        assert!(j.bound().is_top());
        assert!(!j.customs.contains_key(&t1));
        assert!(!j.customs.contains_key(&s1.join(&t1)));
        assert_eq!(j.customs.get(&s1).and_then(|v| v.bound()).map(|b| b.factors.clone()), Some(fac(&["a"]).factors));
    }

    #[test]
    fn meet_adds_first_letter() {
        let sigma = Alphabet::from_str("abcd");
        let s1 = m(&["ac", "bd"], "");
        let t1 = m(&[], "bd");
        let ctx = Ctx::new(sigma, vec![]);
        let mut o1 = StringObject::top();
        o1.customs.insert(s1.clone(), PropValue::nonunary(false, LowerBound::of_prefix(&word("a"))));
        let mut o2 = StringObject::from_value(false, fac(&["a", "d"]), UnaryInterval::NONEMPTY);
        o2.customs.insert(t1.clone(), PropValue::nonunary(false, LowerBound::of_prefix(&word("aaa"))));
        let r = o1.reduce(&ctx).meet(&o2.reduce(&ctx), &ctx);
        assert_eq!(r.bound().prefix, Some(word("a")));
        assert!(r.bound().factors.contains(&word("d")));
        assert!(!r.customs.contains_key(&s1));
    }

    #[test]
    fn widening_sends_growth_to_infinity() {
        let ctx = Ctx::new(Alphabet::from_str("ab"), vec![]);
        let a = StringObject::from_value(false, LowerBound::top(), UnaryInterval::new(false, 1, Some(4)));
        let b = StringObject::from_value(false, LowerBound::top(), UnaryInterval::new(false, 1, Some(6)));
        assert_eq!(a.widen(&b, true, &ctx).length, UnaryInterval::new(false, 1, None));
        assert_eq!(a.widen(&b, false, &ctx).length, UnaryInterval::new(false, 1, Some(6)));
        assert!(a.widen(&a, true, &ctx).equiv(&a.reduce(&ctx), &ctx));
    }
}
