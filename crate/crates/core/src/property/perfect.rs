use std::collections::BTreeSet;

use super::{LowerBound, UnaryInterval};
use crate::word::{
    antichain_of, common_prefix, common_suffix, factors_of, is_factor, is_prefix, is_suffix,
    Alphabet, Word,
};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Length from which a value and its length interval are already mutually
/// reduced. Constants and ⊥ give 0.
pub fn cross_reduction_threshold(b: &LowerBound) -> usize {
    if b.is_bottom || b.constant.is_some() {
        return 0;
    }
    let p = b.prefix.as_ref().map_or(0, |w| w.len());
    let s = b.suffix.as_ref().map_or(0, |w| w.len());
    let internal: Vec<&Word> = b
        .factors
        .iter()
        .filter(|f| {
            !b.prefix.as_ref().is_some_and(|w| is_factor(f, w))
                && !b.suffix.as_ref().is_some_and(|w| is_factor(f, w))
        })
        .collect();
    let total: usize = internal.iter().map(|f| f.len()).sum();
    let blocks = internal.len() + p.min(1) + s.min(1);
    // A lone block has no delimiter to absorb, so its own length still
    // pins the word.
    let shared = if blocks == 1 { 0 } else { 1 };
    (total + p + s + blocks).saturating_sub(shared)
}

fn count_words(n: u64, hi: usize, budget: u64) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..hi {
        total = total.checked_add(pow)?;
        if total > budget {
            return None;
        }
        pow = pow.checked_mul(n)?;
    }
    Some(total)
}

/// Exact abstraction of the members of `b` whose length lies in `len`,
/// when the length is bounded and enumeration fits in `budget` words.
/// Unused letters are represented by at most two fresh ones, which keeps
/// prefix, suffix and factor results exact.
pub fn perfect_reduce_budgeted(
    eps: bool,
    b: &LowerBound,
    len: &UnaryInterval,
    sigma: &Alphabet,
    budget: u64,
) -> (LowerBound, UnaryInterval) {
    let _ = eps;
    let Some((lo, Some(hi))) = len.range else {
        return (b.clone(), *len);
    };
    if b.is_bottom {
        return (LowerBound::bottom(), UnaryInterval { eps: len.eps, range: None });
    }
    let used: BTreeSet<char> = b.letters().into_iter().filter(|&c| sigma.contains(c)).collect();
    let mut letters: Vec<char> = used.iter().copied().collect();
    letters.extend(sigma.letters().filter(|c| !used.contains(c)).take(2));
    if count_words(letters.len() as u64, hi, budget).is_none() {
        return (b.clone(), *len);
    }
    let mut members: Vec<Word> = Vec::new();
    let mut buf: Vec<usize> = Vec::new();
    for l in lo..hi {
        buf.clear();
        buf.resize(l, 0);
        loop {
            let w: Word = buf.iter().map(|&i| letters[i]).collect();
            if b.contains(&w) {
                members.push(w);
            }
            let mut pos = l;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                buf[pos] += 1;
                if buf[pos] < letters.len() {
                    break;
                }
                buf[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || l == 0 {
                break;
            }
        }
    }
    if members.is_empty() {
        return (LowerBound::bottom(), UnaryInterval { eps: len.eps, range: None });
    }
    let (bound, exact) = alpha_nonempty(&members);
    let out_len = UnaryInterval { eps: len.eps, range: exact.range };
    debug_assert!(bound.leq(b));
    (bound, out_len)
}

/// Best lower bound and exact length hull of a finite set of non-empty words.
pub(crate) fn alpha_nonempty(members: &[Word]) -> (LowerBound, UnaryInterval) {
    debug_assert!(!members.is_empty() && members.iter().all(|w| !w.is_empty()));
    let first = &members[0];
    let mut prefix = first.clone();
    let mut suffix = first.clone();
    for w in &members[1..] {
        prefix = common_prefix(&prefix, w);
        suffix = common_suffix(&suffix, w);
    }
    let shortest = members.iter().min_by_key(|w| w.len()).unwrap();
    let common = factors_of(shortest)
        .into_iter()
        .filter(|f| members.iter().all(|w| is_factor(f, w)));
    let factors = antichain_of(common);
    let distinct: BTreeSet<&Word> = members.iter().collect();
    let constant = (distinct.len() == 1).then(|| first.clone());
    debug_assert!(members.iter().all(|w| is_prefix(&prefix, w) && is_suffix(&suffix, w)));
    let bound = LowerBound {
        is_bottom: false,
        constant,
        prefix: Some(prefix),
        suffix: Some(suffix),
        factors,
    }
    .basic_reduce();
    let min = members.iter().map(|w| w.len()).min().unwrap();
    let max = members.iter().map(|w| w.len()).max().unwrap();
    (bound, UnaryInterval::new(false, min, Some(max + 1)))
}
