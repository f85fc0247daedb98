//! Moving property values between morphisms. `transfer(src, tgt, v)` bounds
//! the set `{tgt(ω) : src(ω) ∈ γ(v)}`; applying a morphism to a value is the
//! special case `src = id`.

use std::collections::BTreeSet;

use crate::morphism::StandardMorphism;
use crate::property::{LowerBound, PropValue, UnaryInterval};
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sep {
    /// Zero or more copies of one letter.
    Opt(char),
    Break,
}

/// One equation rewritten as target-side pieces of known letters split by
/// separators of unknown content.
#[derive(Debug)]
struct Decomp {
    pieces: Vec<Word>,
    seps: Vec<Sep>,
    fixed: usize,
    optional: usize,
    closed: bool,
}

impl Decomp {
    fn new(closed: bool) -> Self {
        Decomp { pieces: vec![Vec::new()], seps: Vec::new(), fixed: 0, optional: 0, closed }
    }

    fn push_sep(&mut self, s: Sep) {
        let cur_empty = self.pieces.last().is_some_and(|p| p.is_empty());
        if cur_empty && self.pieces.len() > 1 {
            let prev = self.seps.last_mut().unwrap();
            if *prev != s {
                *prev = Sep::Break;
            }
            return;
        }
        self.seps.push(s);
        self.pieces.push(Vec::new());
    }

    fn push_letter(&mut self, c: char) {
        self.pieces.last_mut().unwrap().push(c);
    }

    fn has_letters(&self) -> bool {
        self.pieces.iter().any(|p| !p.is_empty())
    }

    /// Pieces widened by the letters an adjacent one-letter separator is
    /// forced to contribute.
    fn extended(&self) -> Vec<Word> {
        let n = self.pieces.len();
        (0..n)
            .map(|i| {
                let mut w = Vec::new();
                if i > 0 {
                    if let Sep::Opt(g) = self.seps[i - 1] {
                        if self.pieces[i - 1].last() == Some(&g) {
                            w.push(g);
                        }
                    }
                }
                w.extend_from_slice(&self.pieces[i]);
                if i + 1 < n {
                    if let Sep::Opt(g) = self.seps[i] {
                        if self.pieces[i + 1].first() == Some(&g) {
                            w.push(g);
                        }
                    }
                }
                w
            })
            .collect()
    }

    fn to_bound(&self) -> LowerBound {
        if self.seps.is_empty() {
            let c = &self.pieces[0];
            return if c.is_empty() { LowerBound::bottom() } else { LowerBound::of_constant(c) };
        }
        let ext = self.extended();
        let last = ext.len() - 1;
        let prefix = if !self.pieces[0].is_empty() {
            Some(ext[0].clone())
        } else if let Sep::Opt(g) = self.seps[0] {
            let run = ext[1].iter().take_while(|&&c| c == g).count();
            Some(vec![g; run])
        } else {
            None
        };
        let suffix = if !self.pieces[last].is_empty() {
            Some(ext[last].clone())
        } else if let Sep::Opt(g) = self.seps[last - 1] {
            let run = ext[last - 1].iter().rev().take_while(|&&c| c == g).count();
            Some(vec![g; run])
        } else {
            None
        };
        let factors = ext.into_iter().filter(|w| !w.is_empty()).collect();
        LowerBound { is_bottom: false, constant: None, prefix, suffix, factors }.basic_reduce()
    }
}

/// How each source-side letter and each source-erased gap looks on the
/// target side.
struct Images<'a> {
    src: &'a StandardMorphism,
    tgt: &'a StandardMorphism,
    sigma: &'a Alphabet,
    gap: BTreeSet<char>,
    survive_all: bool,
    any_survive: bool,
}

impl<'a> Images<'a> {
    fn new(src: &'a StandardMorphism, tgt: &'a StandardMorphism, sigma: &'a Alphabet) -> Self {
        let gap = src.erase_set(sigma).into_iter().filter_map(|c| tgt.image(c)).collect();
        let survive_all = sigma
            .letters()
            .all(|c| src.image(c).is_none() || tgt.image(c).is_some());
        let any_survive = sigma.letters().any(|c| tgt.image(c).is_some());
        Images { src, tgt, sigma, gap, survive_all, any_survive }
    }

    fn gap_sep(&self) -> Option<Sep> {
        match self.gap.len() {
            0 => None,
            1 => Some(Sep::Opt(*self.gap.iter().next().unwrap())),
            _ => Some(Sep::Break),
        }
    }

    fn letter_images(&self, x: char) -> BTreeSet<Option<char>> {
        self.sigma
            .letters()
            .filter(|&c| self.src.image(c) == Some(x))
            .map(|c| self.tgt.image(c))
            .collect()
    }

    fn decompose(&self, w: &[char], open_start: bool, open_end: bool) -> Decomp {
        let mut d = Decomp::new(!open_start && !open_end);
        let gap = self.gap_sep();
        if open_start {
            d.push_sep(Sep::Break);
        } else if let Some(g) = gap {
            d.push_sep(g);
        }
        for (i, &x) in w.iter().enumerate() {
            if i > 0 {
                if let Some(g) = gap {
                    d.push_sep(g);
                }
            }
            let s = self.letter_images(x);
            let has_none = s.contains(&None);
            let letters: Vec<char> = s.iter().flatten().copied().collect();
            match (letters.as_slice(), has_none) {
                ([], _) if s.is_empty() => d.push_sep(Sep::Break),
                ([], _) => {}
                ([l], false) => {
                    d.fixed += 1;
                    d.push_letter(*l);
                }
                ([l], true) => {
                    d.optional += 1;
                    d.push_sep(Sep::Opt(*l));
                }
                (_, none) => {
                    if none {
                        d.optional += 1;
                    } else {
                        d.fixed += 1;
                    }
                    d.push_sep(Sep::Break);
                }
            }
        }
        if open_end {
            d.push_sep(Sep::Break);
        } else if let Some(g) = gap {
            d.push_sep(g);
        }
        d
    }

    fn equations(&self, b: &LowerBound) -> Vec<Decomp> {
        let mut out = Vec::new();
        if let Some(c) = &b.constant {
            out.push(self.decompose(c, false, false));
            return out;
        }
        if let Some(p) = &b.prefix {
            out.push(self.decompose(p, false, true));
        }
        if let Some(s) = &b.suffix {
            out.push(self.decompose(s, true, false));
        }
        for f in &b.factors {
            out.push(self.decompose(f, true, true));
        }
        out
    }

    /// `max_src_len` caps the source word length when it is known.
    fn image(&self, eps: bool, b: &LowerBound, max_src_len: Option<usize>) -> PropValue {
        let unary = self.tgt.is_unary(self.sigma);
        let gap_open = !self.gap.is_empty();
        if b.is_bottom {
            return match (eps, gap_open) {
                (false, _) => PropValue::bottom(unary),
                (true, false) => PropValue::eps_only(unary),
                (true, true) => PropValue::top(unary),
            };
        }
        let decomps = self.equations(b);
        let can_vanish = !(self.survive_all || decomps.iter().any(|d| d.has_letters() || d.fixed > 0));
        let out_eps = eps || can_vanish;
        if !unary {
            let mut bound = LowerBound::top();
            for d in &decomps {
                bound = bound.meet(&d.to_bound());
            }
            if eps && gap_open {
                bound = LowerBound::top();
            }
            return PropValue::nonunary(out_eps, bound);
        }
        let mut lo = decomps.iter().map(|d| d.fixed).max().unwrap_or(0);
        if self.survive_all {
            lo = lo.max(b.min_len());
        }
        let mut max_len: Option<usize> = None;
        if !gap_open {
            for d in decomps.iter().filter(|d| d.closed) {
                let m = d.fixed + d.optional;
                max_len = Some(max_len.map_or(m, |x: usize| x.min(m)));
            }
            if let Some(n) = max_src_len {
                max_len = Some(max_len.map_or(n, |x| x.min(n)));
            }
        }
        let mut out = if !self.any_survive || max_len == Some(0) {
            UnaryInterval { eps: out_eps, range: None }
        } else {
            UnaryInterval::new(out_eps, lo, max_len.map(|m| m + 1))
        };
        if out.range.is_none() && !out.eps {
            out = UnaryInterval::BOTTOM;
        }
        if eps && gap_open {
            out = out.join(&UnaryInterval::TOP);
        }
        PropValue::Unary(out)
    }
}

/// Sound image under `tgt` of the words whose `src`-image lies in `v`.
/// The result is unary exactly when `tgt` has a unary image over `sigma`.
pub fn transfer(
    src: &StandardMorphism,
    tgt: &StandardMorphism,
    v: &PropValue,
    sigma: &Alphabet,
) -> PropValue {
    let images = Images::new(src, tgt, sigma);
    match v {
        PropValue::NonUnary { eps, bound } => images.image(*eps, bound, None),
        PropValue::Unary(u) => {
            let letter = src.image_alphabet(sigma).into_iter().next();
            let bound = match (letter, u.range) {
                (None, _) | (_, None) => LowerBound::bottom(),
                (Some(l), Some((lo, Some(hi)))) if hi == lo + 1 => LowerBound::of_constant(&vec![l; lo]),
                (Some(l), Some((lo, _))) => LowerBound {
                    prefix: Some(vec![l; lo]),
                    suffix: Some(vec![l; lo]),
                    ..LowerBound::default()
                }
                .basic_reduce(),
            };
            let cap = u.range.and_then(|(_, hi)| hi).map(|h| h - 1);
            images.image(u.eps, &bound, cap)
        }
    }
}

/// Image of the value `⟨eps, b⟩` under `m`.
pub fn apply_to_bound(m: &StandardMorphism, eps: bool, b: &LowerBound, sigma: &Alphabet) -> PropValue {
    transfer(&StandardMorphism::identity(), m, &PropValue::nonunary(eps, b.clone()), sigma)
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
    fn length_of_prefix() {
        let sigma = Alphabet::from_str("<>agt");
        let v = apply_to_bound(
            &StandardMorphism::length(&sigma),
            false,
            &LowerBound::of_prefix(&word("<tag>")),
            &sigma,
        );
        assert_eq!(v, PropValue::Unary(UnaryInterval::new(false, 5, None)));
    }

    #[test]
    fn erasure_of_ends() {
        let sigma = Alphabet::from_str("abcd");
        let b = LowerBound {
            prefix: Some(word("ab")),
            suffix: Some(word("ab")),
            ..LowerBound::default()
        }
        .basic_reduce();
        let v = apply_to_bound(&m(&[], "bd"), false, &b, &sigma);
        let expect = LowerBound {
            prefix: Some(word("a")),
            suffix: Some(word("a")),
            ..LowerBound::default()
        }
        .basic_reduce();
        assert_eq!(v, PropValue::nonunary(false, expect));
    }

    #[test]
    fn erased_letter_splits_factor() {
        let sigma = Alphabet::from_str("abcd");
        let v = apply_to_bound(&m(&[], "b"), false, &fac(&["c", "aab"]), &sigma);
        assert_eq!(v.bound().unwrap().factors, fac(&["c", "aa"]).factors);
    }

    #[test]
    fn gap_letters_absorbed() {
        let sigma = Alphabet::from_str("abcd");
        let v = PropValue::nonunary(false, fac(&["cac"]));
        let out = transfer(&m(&[], "b"), &m(&["bc"], ""), &v, &sigma);
        assert!(out.bound().unwrap().factors.contains(&word("bab")));
    }

    #[test]
    fn erased_constant_is_empty_word() {
        let sigma = Alphabet::from_str("abc");
        let v = apply_to_bound(&m(&[], "b"), false, &LowerBound::of_constant(&word("bb")), &sigma);
        assert_eq!(v, PropValue::eps_only(false));
        let sigma = Alphabet::from_str("ab");
        let v = apply_to_bound(&m(&[], "b"), false, &LowerBound::of_constant(&word("bb")), &sigma);
        assert_eq!(v, PropValue::eps_only(true));
    }

    #[test]
    fn length_forbids_empty_value() {
        let sigma = Alphabet::from_str("ab");
        let len = PropValue::Unary(UnaryInterval::new(false, 3, None));
        let out = transfer(&StandardMorphism::length(&sigma), &StandardMorphism::identity(), &len, &sigma);
        assert_eq!(out, PropValue::nonunary(false, LowerBound::top()));
    }
}
