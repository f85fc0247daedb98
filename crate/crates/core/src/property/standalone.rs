use std::collections::{BTreeSet, HashMap, VecDeque};

use super::LowerBound;
use crate::word::{antichain_insert, covered, is_factor, Word};

/// Shortest non-empty member of the bound, over `letters`, that does not
/// contain `avoid` as a factor. Exhaustive search over (window, found-set)
/// states, so `None` means no such member exists.
pub fn avoiding_member(b: &LowerBound, avoid: &[char], letters: &[char]) -> Option<Word> {
    if b.is_bottom || avoid.is_empty() {
        return None;
    }
    if let Some(c) = &b.constant {
        return (!is_factor(avoid, c)).then(|| c.clone());
    }
    let required: Vec<&Word> = b.factors.iter().collect();
    if required.len() > 128 {
        return None;
    }
    let full: u128 = if required.len() == 128 { u128::MAX } else { (1u128 << required.len()) - 1 };
    let suffix: &[char] = b.suffix.as_deref().unwrap_or(&[]);
    let width = required
        .iter()
        .map(|f| f.len())
        .chain([avoid.len(), suffix.len(), 1])
        .max()
        .unwrap_or(1);

    let start: Word = b.prefix.clone().unwrap_or_default();
    if is_factor(avoid, &start) {
        return None;
    }
    let mut mask = 0u128;
    for (i, f) in required.iter().enumerate() {
        if is_factor(f, &start) {
            mask |= 1 << i;
        }
    }
    let tail = |w: &[char]| -> Word { w[w.len().saturating_sub(width)..].to_vec() };

    type State = (Word, u128, bool);
    let accepts = |s: &State| s.2 && s.1 == full && s.0.ends_with(suffix);
    let init: State = (tail(&start), mask, !start.is_empty());
    let mut nodes: Vec<(State, Option<usize>, char)> = vec![(init.clone(), None, '\0')];
    let mut seen: HashMap<State, usize> = HashMap::new();
    seen.insert(init, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let state = nodes[i].0.clone();
        if accepts(&state) {
            let mut letters_rev = Vec::new();
            let mut cur = i;
            while let Some(parent) = nodes[cur].1 {
                letters_rev.push(nodes[cur].2);
                cur = parent;
            }
            let mut out = start.clone();
            out.extend(letters_rev.into_iter().rev());
            return Some(out);
        }
        for &c in letters {
            let mut next = state.0.clone();
            next.push(c);
            if next.ends_with(avoid) {
                continue;
            }
            let mut m = state.1;
            for (j, f) in required.iter().enumerate() {
                if next.ends_with(f) {
                    m |= 1 << j;
                }
            }
            let ns: State = (tail(&next), m, true);
            if !seen.contains_key(&ns) {
                seen.insert(ns.clone(), nodes.len());
                nodes.push((ns, Some(i), c));
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    None
}

/// Words of the forms xᵏy, xyᵏ, yᵏx, yxᵏ (k up to the longest equation
/// word) not already covered by the factor code.
pub fn unavoidable_candidates(b: &LowerBound, x: char, y: char) -> Vec<Word> {
    let kmax = b.words().map(|w| w.len()).max().unwrap_or(0);
    let mut out = BTreeSet::new();
    for k in 1..=kmax {
        let run = |c: char| std::iter::repeat(c).take(k);
        out.insert(run(x).chain([y]).collect::<Word>());
        out.insert([x].into_iter().chain(run(y)).collect::<Word>());
        out.insert(run(y).chain([x]).collect::<Word>());
        out.insert([y].into_iter().chain(run(x)).collect::<Word>());
    }
    out.into_iter().filter(|w| !covered(&b.factors, w)).collect()
}

/// Adds the unavoidable words that a binary alphabet forces beyond the
/// factor code. Other alphabet sizes leave the bound unchanged.
pub fn standalone_reduce(b: &LowerBound, letters: &BTreeSet<char>) -> LowerBound {
    let mut all = letters.clone();
    all.extend(b.letters());
    if all.len() != 2 || b.is_bottom || b.constant.is_some() {
        return b.clone();
    }
    let pair: Vec<char> = all.into_iter().collect();
    let mut cur = b.clone();
    loop {
        let mut next = cur.clone();
        for cand in unavoidable_candidates(&cur, pair[0], pair[1]) {
            if !covered(&next.factors, &cand) && avoiding_member(&cur, &cand, &pair).is_none() {
                antichain_insert(&mut next.factors, cand);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn fac(ws: &[&str]) -> LowerBound {
        LowerBound::of_factors(ws.iter().map(|s| word(s)))
    }

    fn ab() -> BTreeSet<char> {
        ['a', 'b'].into_iter().collect()
    }

    #[test]
    fn binary_gains_forced_word() {
        let r = standalone_reduce(&fac(&["abaa", "bbaa"]), &ab());
        assert_eq!(r, fac(&["abaa", "bbaa", "aab"]));
    }

    #[test]
    fn binary_without_forced_word() {
        let b = fac(&["aaabb", "aabbb"]);
        assert_eq!(standalone_reduce(&b, &ab()), b);
        assert!(covered(&b.factors, &word("aab")));
        assert!(!b.contains(&word("bbbaaa")));
        let w = avoiding_member(&b, &word("abab"), &['a', 'b']).unwrap();
        assert!(b.contains(&w) && !is_factor(&word("abab"), &w));
    }

    #[test]
    fn larger_alphabet_is_untouched() {
        let b = fac(&["ab"]);
        let abc: BTreeSet<char> = "abc".chars().collect();
        assert_eq!(standalone_reduce(&b, &abc), b);
    }

    #[test]
    fn prefix_forces_run_then_letter() {
        let b = LowerBound {
            prefix: Some(word("baa")),
            factors: [word("b")].into_iter().collect(),
            suffix: Some(word("b")),
            ..LowerBound::default()
        }
        .basic_reduce();
        let r = standalone_reduce(&b, &ab());
        assert!(covered(&r.factors, &word("aab")));
    }
}
