//! Single-property lattices: lower bounds built from constant, prefix,
//! suffix and factor equations, ε flags, and unary intervals.

mod perfect;
mod standalone;
mod unary;

use std::collections::BTreeSet;
use std::fmt;

use crate::word::{
    antichain_insert, common_maximal_factors, common_prefix, common_suffix, covered, is_factor,
    is_prefix, is_suffix, show, FactorCode, Word,
};

pub use perfect::{cross_reduction_threshold, perfect_reduce_budgeted, DEFAULT_BUDGET};
pub(crate) use perfect::alpha_nonempty;
pub use standalone::{avoiding_member, standalone_reduce, unavoidable_candidates};
pub use unary::UnaryInterval;

/// A reduced system of word equations bounding a set of non-empty words
/// from below. Absent components are ⊤.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LowerBound {
    pub is_bottom: bool,
    pub constant: Option<Word>,
    pub prefix: Option<Word>,
    pub suffix: Option<Word>,
    pub factors: FactorCode,
}

/// Longest common prefix; an empty result means no constraint.
pub fn prefix_join(p1: &[char], p2: &[char]) -> Option<Word> {
    Some(common_prefix(p1, p2)).filter(|w| !w.is_empty())
}

/// The longer prefix when one extends the other; `Err(())` on a mismatch.
pub fn prefix_meet(p1: Option<&[char]>, p2: Option<&[char]>) -> Result<Option<Word>, ()> {
    match (p1, p2) {
        (None, p) | (p, None) => Ok(p.map(|w| w.to_vec())),
        (Some(a), Some(b)) => {
            if is_prefix(a, b) {
                Ok(Some(b.to_vec()))
            } else if is_prefix(b, a) {
                Ok(Some(a.to_vec()))
            } else {
                Err(())
            }
        }
    }
}

pub fn suffix_join(s1: &[char], s2: &[char]) -> Option<Word> {
    Some(common_suffix(s1, s2)).filter(|w| !w.is_empty())
}

pub fn suffix_meet(s1: Option<&[char]>, s2: Option<&[char]>) -> Result<Option<Word>, ()> {
    match (s1, s2) {
        (None, s) | (s, None) => Ok(s.map(|w| w.to_vec())),
        (Some(a), Some(b)) => {
            if is_suffix(a, b) {
                Ok(Some(b.to_vec()))
            } else if is_suffix(b, a) {
                Ok(Some(a.to_vec()))
            } else {
                Err(())
            }
        }
    }
}

impl LowerBound {
    pub fn top() -> Self {
        Self::default()
    }

    pub fn bottom() -> Self {
        LowerBound { is_bottom: true, ..Self::default() }
    }

    pub fn of_constant(w: &[char]) -> Self {
        LowerBound { constant: Some(w.to_vec()), ..Self::default() }.basic_reduce()
    }

    pub fn of_prefix(w: &[char]) -> Self {
        LowerBound { prefix: Some(w.to_vec()), ..Self::default() }.basic_reduce()
    }

    pub fn of_suffix(w: &[char]) -> Self {
        LowerBound { suffix: Some(w.to_vec()), ..Self::default() }.basic_reduce()
    }

    pub fn of_factors<I: IntoIterator<Item = Word>>(ws: I) -> Self {
        LowerBound { factors: ws.into_iter().collect(), ..Self::default() }.basic_reduce()
    }

    pub fn is_top(&self) -> bool {
        !self.is_bottom
            && self.constant.is_none()
            && self.prefix.is_none()
            && self.suffix.is_none()
            && self.factors.is_empty()
    }

    /// Normalizes the equation system: contradictions collapse to ⊥, a
    /// constant fixes the other components, prefix and suffix join the
    /// factor code.
    pub fn basic_reduce(mut self) -> Self {
        if self.is_bottom {
            return Self::bottom();
        }
        if self.prefix.as_ref().is_some_and(|p| p.is_empty()) {
            self.prefix = None;
        }
        if self.suffix.as_ref().is_some_and(|s| s.is_empty()) {
            self.suffix = None;
        }
        let raw: Vec<Word> = std::mem::take(&mut self.factors).into_iter().collect();
        for f in raw {
            if !f.is_empty() {
                antichain_insert(&mut self.factors, f);
            }
        }
        if let Some(c) = self.constant.clone() {
            let ok = !c.is_empty()
                && self.prefix.as_ref().map_or(true, |p| is_prefix(p, &c))
                && self.suffix.as_ref().map_or(true, |s| is_suffix(s, &c))
                && self.factors.iter().all(|f| is_factor(f, &c));
            if !ok {
                return Self::bottom();
            }
            self.prefix = Some(c.clone());
            self.suffix = Some(c.clone());
            self.factors = [c].into_iter().collect();
            return self;
        }
        if let Some(p) = self.prefix.clone() {
            antichain_insert(&mut self.factors, p);
        }
        if let Some(s) = self.suffix.clone() {
            antichain_insert(&mut self.factors, s);
        }
        self
    }

    pub fn join(&self, other: &Self) -> Self {
        if self.is_bottom {
            return other.clone();
        }
        if other.is_bottom {
            return self.clone();
        }
        let constant = match (&self.constant, &other.constant) {
            (Some(a), Some(b)) if a == b => Some(a.clone()),
            _ => None,
        };
        let prefix = match (&self.prefix, &other.prefix) {
            (Some(a), Some(b)) => prefix_join(a, b),
            _ => None,
        };
        let suffix = match (&self.suffix, &other.suffix) {
            (Some(a), Some(b)) => suffix_join(a, b),
            _ => None,
        };
        let factors = common_maximal_factors(&self.factors, &other.factors);
        LowerBound { is_bottom: false, constant, prefix, suffix, factors }.basic_reduce()
    }

    pub fn meet(&self, other: &Self) -> Self {
        if self.is_bottom || other.is_bottom {
            return Self::bottom();
        }
        let constant = match (&self.constant, &other.constant) {
            (Some(a), Some(b)) if a != b => return Self::bottom(),
            (Some(a), _) | (_, Some(a)) => Some(a.clone()),
            _ => None,
        };
        let Ok(prefix) = prefix_meet(self.prefix.as_deref(), other.prefix.as_deref()) else {
            return Self::bottom();
        };
        let Ok(suffix) = suffix_meet(self.suffix.as_deref(), other.suffix.as_deref()) else {
            return Self::bottom();
        };
        let mut factors = self.factors.clone();
        for f in &other.factors {
            antichain_insert(&mut factors, f.clone());
        }
        LowerBound { is_bottom: false, constant, prefix, suffix, factors }.basic_reduce()
    }

    /// Syntactic order: every equation of `other` is implied by `self`.
    pub fn leq(&self, other: &Self) -> bool {
        if self.is_bottom {
            return true;
        }
        if other.is_bottom {
            return false;
        }
        if let Some(c) = &other.constant {
            return self.constant.as_ref() == Some(c);
        }
        let pre = other
            .prefix
            .as_ref()
            .map_or(true, |p| self.prefix.as_ref().is_some_and(|q| is_prefix(p, q)));
        let suf = other
            .suffix
            .as_ref()
            .map_or(true, |s| self.suffix.as_ref().is_some_and(|q| is_suffix(s, q)));
        pre && suf && other.factors.iter().all(|f| covered(&self.factors, f))
    }

    /// Membership of a non-empty word.
    pub fn contains(&self, w: &[char]) -> bool {
        if self.is_bottom || w.is_empty() {
            return false;
        }
        if let Some(c) = &self.constant {
            return c == w;
        }
        self.prefix.as_ref().map_or(true, |p| is_prefix(p, w))
            && self.suffix.as_ref().map_or(true, |s| is_suffix(s, w))
            && self.factors.iter().all(|f| is_factor(f, w))
    }

    /// Every word mentioned by an equation.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.constant
            .iter()
            .chain(self.prefix.iter())
            .chain(self.suffix.iter())
            .chain(self.factors.iter())
    }

    pub fn letters(&self) -> BTreeSet<char> {
        self.words().flatten().copied().collect()
    }

    /// Lower bound on the length of any member.
    pub fn min_len(&self) -> usize {
        if let Some(c) = &self.constant {
            return c.len();
        }
        let mut n = self.factors.iter().map(|f| f.len()).max().unwrap_or(0);
        if let (Some(p), Some(s)) = (&self.prefix, &self.suffix) {
            n = n.max(shortest_with_ends(p, s));
        }
        n.max(self.letters().len())
    }
}

/// Length of the shortest word starting with `p` and ending with `s`.
fn shortest_with_ends(p: &[char], s: &[char]) -> usize {
    if is_suffix(s, p) {
        return p.len();
    }
    if is_prefix(p, s) {
        return s.len();
    }
    p.len() + s.len() - crate::word::longest_overlap(p, s)
}

impl fmt::Display for LowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom {
            return write!(f, "⊥");
        }
        if let Some(c) = &self.constant {
            return write!(f, "Z={}", show(c));
        }
        let mut parts = Vec::new();
        if let Some(p) = &self.prefix {
            parts.push(format!("Z={}Y", show(p)));
        }
        if let Some(s) = &self.suffix {
            parts.push(format!("Z=X{}", show(s)));
        }
        for w in &self.factors {
            if Some(w) != self.prefix.as_ref() && Some(w) != self.suffix.as_ref() {
                parts.push(format!("Z=X{}Y", show(w)));
            }
        }
        if parts.is_empty() {
            write!(f, "⊤")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}

/// Value of one string property: an ε flag with a lower bound, or a unary
/// interval when the indexing morphism has a one-letter image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropValue {
    NonUnary { eps: bool, bound: LowerBound },
    Unary(UnaryInterval),
}

impl PropValue {
    pub fn top(unary: bool) -> Self {
        if unary {
            PropValue::Unary(UnaryInterval::TOP)
        } else {
            PropValue::NonUnary { eps: true, bound: LowerBound::top() }
        }
    }

    pub fn bottom(unary: bool) -> Self {
        if unary {
            PropValue::Unary(UnaryInterval::BOTTOM)
        } else {
            PropValue::NonUnary { eps: false, bound: LowerBound::bottom() }
        }
    }

    /// The set `{ε}`.
    pub fn eps_only(unary: bool) -> Self {
        if unary {
            PropValue::Unary(UnaryInterval::EPS)
        } else {
            PropValue::NonUnary { eps: true, bound: LowerBound::bottom() }
        }
    }

    /// The singleton `{w}`; for unary properties only the length counts.
    pub fn atom(w: &[char], unary: bool) -> Self {
        if unary {
            PropValue::Unary(UnaryInterval::exact(w.len()))
        } else if w.is_empty() {
            Self::eps_only(false)
        } else {
            PropValue::NonUnary { eps: false, bound: LowerBound::of_constant(w) }
        }
    }

    pub fn nonunary(eps: bool, bound: LowerBound) -> Self {
        PropValue::NonUnary { eps, bound }
    }

    #[inline]
    pub fn is_unary(&self) -> bool {
        matches!(self, PropValue::Unary(_))
    }

    pub fn eps(&self) -> bool {
        match self {
            PropValue::NonUnary { eps, .. } => *eps,
            PropValue::Unary(u) => u.eps,
        }
    }

    pub fn set_eps(&mut self, value: bool) {
        match self {
            PropValue::NonUnary { eps, .. } => *eps = value,
            PropValue::Unary(u) => u.eps = value,
        }
    }

    pub fn is_bottom(&self) -> bool {
        match self {
            PropValue::NonUnary { eps, bound } => !eps && bound.is_bottom,
            PropValue::Unary(u) => u.is_bottom(),
        }
    }

    pub fn is_top(&self) -> bool {
        match self {
            PropValue::NonUnary { eps, bound } => *eps && bound.is_top(),
            PropValue::Unary(u) => *u == UnaryInterval::TOP,
        }
    }

    pub fn bound(&self) -> Option<&LowerBound> {
        match self {
            PropValue::NonUnary { bound, .. } => Some(bound),
            PropValue::Unary(_) => None,
        }
    }

    pub fn interval(&self) -> Option<&UnaryInterval> {
        match self {
            PropValue::Unary(u) => Some(u),
            PropValue::NonUnary { .. } => None,
        }
    }

    fn normalized(self) -> Self {
        match self {
            PropValue::NonUnary { eps, bound } => PropValue::NonUnary { eps, bound: bound.basic_reduce() },
            u => u,
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        match (self, other) {
            (PropValue::NonUnary { eps: e1, bound: b1 }, PropValue::NonUnary { eps: e2, bound: b2 }) => {
                PropValue::NonUnary { eps: *e1 || *e2, bound: b1.join(b2) }
            }
            (PropValue::Unary(a), PropValue::Unary(b)) => PropValue::Unary(a.join(b)),
            _ => panic!("join of properties of different kinds"),
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (PropValue::NonUnary { eps: e1, bound: b1 }, PropValue::NonUnary { eps: e2, bound: b2 }) => {
                PropValue::NonUnary { eps: *e1 && *e2, bound: b1.meet(b2) }
            }
            (PropValue::Unary(a), PropValue::Unary(b)) => PropValue::Unary(a.meet(b)),
            _ => panic!("meet of properties of different kinds"),
        }
        .normalized()
    }

    pub fn leq(&self, other: &Self) -> bool {
        match (self, other) {
            (PropValue::NonUnary { eps: e1, bound: b1 }, PropValue::NonUnary { eps: e2, bound: b2 }) => {
                (!e1 || *e2) && b1.leq(b2)
            }
            (PropValue::Unary(a), PropValue::Unary(b)) => a.leq(b),
            _ => false,
        }
    }

    /// Membership of an image word.
    pub fn contains(&self, w: &[char]) -> bool {
        match self {
            PropValue::NonUnary { eps, bound } => {
                if w.is_empty() {
                    *eps
                } else {
                    bound.contains(w)
                }
            }
            PropValue::Unary(u) => u.contains(w.len()),
        }
    }
}

impl fmt::Display for PropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropValue::NonUnary { eps, bound } => {
                if *eps {
                    write!(f, "ε|{bound}")
                } else {
                    write!(f, "{bound}")
                }
            }
            PropValue::Unary(u) => write!(f, "{u}"),
        }
    }
}

/// Componentwise join of two lower bounds followed by basic reduction.
pub fn bound_join(b1: &LowerBound, b2: &LowerBound) -> LowerBound {
    b1.join(b2)
}

/// Componentwise meet of two lower bounds followed by basic reduction.
pub fn bound_meet(b1: &LowerBound, b2: &LowerBound) -> LowerBound {
    b1.meet(b2)
}

pub fn basic_reduce(b: LowerBound) -> LowerBound {
    b.basic_reduce()
}

pub fn unary_join(u1: &UnaryInterval, u2: &UnaryInterval) -> UnaryInterval {
    u1.join(u2)
}

pub fn unary_meet(u1: &UnaryInterval, u2: &UnaryInterval) -> UnaryInterval {
    u1.meet(u2)
}
