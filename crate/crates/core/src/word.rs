//! Words, alphabets and factor codes.

use std::collections::BTreeSet;
use std::fmt;

/// A word is a finite sequence of letters; the empty vector is ε.
pub type Word = Vec<char>;

/// Antichain of non-empty words under the factor order.
pub type FactorCode = BTreeSet<Word>;

/// Builds a word from a string literal.
pub fn word(s: &str) -> Word {
    s.chars().collect()
}

pub fn show(w: &[char]) -> String {
    w.iter().collect()
}

/// The letters available to a session, ordered by code point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    letters: BTreeSet<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Self {
        let letters: BTreeSet<char> = letters.into_iter().collect();
        assert!(!letters.is_empty(), "alphabet must not be empty");
        Alphabet { letters }
    }

    pub fn from_str(s: &str) -> Self {
        Self::new(s.chars())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    #[inline]
    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.letters.iter().copied()
    }

    pub fn with<I: IntoIterator<Item = char>>(&self, extra: I) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(extra);
        Alphabet { letters }
    }

    /// Smallest letter of the alphabet not in `used`.
    pub fn fresh_letter(&self, used: &BTreeSet<char>) -> Option<char> {
        self.letters.iter().copied().find(|c| !used.contains(c))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// True iff `needle` occurs contiguously in `hay`.
pub fn is_factor(needle: &[char], hay: &[char]) -> bool {
    find(hay, needle, 0).is_some()
}

/// Position of the first occurrence of `needle` in `hay` at or after `from`.
pub fn find(hay: &[char], needle: &[char], from: usize) -> Option<usize> {
    if needle.is_empty() {
        return (from <= hay.len()).then_some(from);
    }
    if needle.len() > hay.len() {
        return None;
    }
    // Knuth-Morris-Pratt.
    let fail = failure(needle);
    let mut k = 0;
    for (i, &c) in hay.iter().enumerate().skip(from) {
        while k > 0 && needle[k] != c {
            k = fail[k - 1];
        }
        if needle[k] == c {
            k += 1;
        }
        if k == needle.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

fn failure(p: &[char]) -> Vec<usize> {
    let mut fail = vec![0; p.len()];
    let mut k = 0;
    for i in 1..p.len() {
        while k > 0 && p[i] != p[k] {
            k = fail[k - 1];
        }
        if p[i] == p[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

#[inline]
pub fn is_prefix(p: &[char], w: &[char]) -> bool {
    w.starts_with(p)
}

#[inline]
pub fn is_suffix(s: &[char], w: &[char]) -> bool {
    w.ends_with(s)
}

/// Length of the longest suffix of `u` that is a prefix of `v`.
pub fn longest_overlap(u: &[char], v: &[char]) -> usize {
    let m = u.len().min(v.len());
    (0..=m)
        .rev()
        .find(|&l| u[u.len() - l..] == v[..l])
        .unwrap_or(0)
}

pub fn common_prefix(a: &[char], b: &[char]) -> Word {
    a.iter()
        .zip(b)
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| *x)
        .collect()
}

pub fn common_suffix(a: &[char], b: &[char]) -> Word {
    let mut out: Word = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| *x)
        .collect();
    out.reverse();
    out
}

pub fn reversed(w: &[char]) -> Word {
    w.iter().rev().copied().collect()
}

/// Inserts `w` keeping the antichain invariant.
pub fn antichain_insert(code: &mut FactorCode, w: Word) {
    debug_assert!(!w.is_empty());
    if code.iter().any(|m| is_factor(&w, m)) {
        return;
    }
    code.retain(|m| !is_factor(m, &w));
    code.insert(w);
}

pub fn antichain_of<I: IntoIterator<Item = Word>>(words: I) -> FactorCode {
    let mut code = FactorCode::new();
    for w in words {
        if !w.is_empty() {
            antichain_insert(&mut code, w);
        }
    }
    code
}

/// True iff `w` is a factor of some member of `code`.
pub fn covered(code: &FactorCode, w: &[char]) -> bool {
    code.iter().any(|m| is_factor(w, m))
}

/// All distinct non-empty factors of `w`.
pub fn factors_of(w: &[char]) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            out.insert(w[i..j].to_vec());
        }
    }
    out
}

/// Maximal words that are factors of a member of `a` and of a member of `b`.
pub fn common_maximal_factors(a: &FactorCode, b: &FactorCode) -> FactorCode {
    let mut common = Vec::new();
    for x in a {
        for f in factors_of(x) {
            if covered(b, &f) {
                common.push(f);
            }
        }
    }
    antichain_of(common)
}

pub fn letters_of<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> BTreeSet<char> {
    words.into_iter().flatten().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(ws: &[&str]) -> FactorCode {
        ws.iter().map(|s| word(s)).collect()
    }

    #[test]
    fn factor_search() {
        assert!(is_factor(&word("ab"), &word("abaa")));
        assert!(!is_factor(&word("aab"), &word("abaa")));
        assert!(is_factor(&word(""), &word("x")));
        assert_eq!(find(&word("aaab"), &word("ab"), 0), Some(2));
    }

    #[test]
    fn overlaps() {
        assert_eq!(longest_overlap(&word("ab"), &word("ba")), 1);
        assert_eq!(longest_overlap(&word("aba"), &word("aba")), 3);
        assert_eq!(longest_overlap(&word("aa"), &word("bb")), 0);
    }

    #[test]
    fn antichain() {
        let mut c = code(&["aba"]);
        antichain_insert(&mut c, word("ab"));
        assert_eq!(c, code(&["aba"]));
        let mut c = code(&["ab"]);
        antichain_insert(&mut c, word("aba"));
        assert_eq!(c, code(&["aba"]));
        let mut c = code(&["ab"]);
        antichain_insert(&mut c, word("ba"));
        assert_eq!(c, code(&["ab", "ba"]));
    }

    #[test]
    fn maximal_common() {
        assert_eq!(
            common_maximal_factors(&code(&["ab"]), &code(&["ba"])),
            code(&["a", "b"])
        );
        assert_eq!(
            common_maximal_factors(&code(&["aba"]), &code(&["aba"])),
            code(&["aba"])
        );
        assert_eq!(
            common_maximal_factors(&code(&["abbab"]), &code(&["abab"])),
            code(&["bab"])
        );
    }
}
