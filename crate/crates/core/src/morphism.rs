//! Standard morphisms: alphabet partitions whose classes map to their
//! minimal letter or to ε.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::word::{Alphabet, Word};

/// Image letter used by the length morphism. It precedes every real letter.
pub const LEN_LETTER: char = '\0';

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("letter {src:?} maps to {img:?}, which is greater in code order")]
    Increasing { src: char, img: char },
    #[error("letter {0:?} is assigned twice")]
    Duplicate(char),
}

/// A standard morphism. Only letters that do not map to themselves are
/// stored; `None` is the erasing image.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardMorphism {
    map: BTreeMap<char, Option<char>>,
}

impl StandardMorphism {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Every letter of `sigma` maps to the single length letter.
    pub fn length(sigma: &Alphabet) -> Self {
        StandardMorphism {
            map: sigma.letters().map(|c| (c, Some(LEN_LETTER))).collect(),
        }
    }

    /// Every letter of `sigma` maps to ε.
    pub fn trivial(sigma: &Alphabet) -> Self {
        StandardMorphism {
            map: sigma.letters().map(|c| (c, None)).collect(),
        }
    }

    /// Iterates `raw` to its fixpoint and canonicalizes class images.
    pub fn normalize(raw: &BTreeMap<char, Option<char>>) -> Result<Self, MorphismError> {
        for (&src, img) in raw {
            if let Some(img) = *img {
                if img > src {
                    return Err(MorphismError::Increasing { src, img });
                }
            }
        }
        let mut map = BTreeMap::new();
        for &src in raw.keys() {
            let mut cur = Some(src);
            while let Some(c) = cur {
                match raw.get(&c) {
                    Some(&next) if next != Some(c) => cur = next,
                    _ => break,
                }
            }
            if cur != Some(src) {
                map.insert(src, cur);
            }
        }
        Ok(StandardMorphism { map })
    }

    /// Builds a morphism from explicit classes and erased letters.
    pub fn from_classes<I, S>(classes: I, erase: &str) -> Result<Self, MorphismError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut raw = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for class in classes {
            let letters: BTreeSet<char> = class.as_ref().chars().collect();
            let Some(&rep) = letters.iter().next() else {
                continue;
            };
            for c in letters {
                if !seen.insert(c) {
                    return Err(MorphismError::Duplicate(c));
                }
                raw.insert(c, Some(rep));
            }
        }
        for c in erase.chars() {
            if !seen.insert(c) {
                return Err(MorphismError::Duplicate(c));
            }
            raw.insert(c, None);
        }
        Self::normalize(&raw)
    }

    #[inline]
    pub fn image(&self, c: char) -> Option<char> {
        match self.map.get(&c) {
            Some(img) => *img,
            None => Some(c),
        }
    }

    pub fn apply(&self, w: &[char]) -> Word {
        w.iter().filter_map(|&c| self.image(c)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_length(&self, sigma: &Alphabet) -> bool {
        sigma.letters().all(|c| self.image(c) == Some(LEN_LETTER))
    }

    pub fn is_trivial(&self, sigma: &Alphabet) -> bool {
        sigma.letters().all(|c| self.image(c).is_none())
    }

    pub fn erase_set(&self, sigma: &Alphabet) -> BTreeSet<char> {
        sigma.letters().filter(|&c| self.image(c).is_none()).collect()
    }

    pub fn is_erasing(&self, sigma: &Alphabet) -> bool {
        sigma.letters().any(|c| self.image(c).is_none())
    }

    /// Letters of `sigma` whose image is `x`.
    pub fn class(&self, x: char, sigma: &Alphabet) -> BTreeSet<char> {
        sigma.letters().filter(|&c| self.image(c) == Some(x)).collect()
    }

    pub fn image_alphabet(&self, sigma: &Alphabet) -> BTreeSet<char> {
        sigma.letters().filter_map(|c| self.image(c)).collect()
    }

    /// Properties indexed by this morphism are unary iff its image has at
    /// most one letter.
    pub fn is_unary(&self, sigma: &Alphabet) -> bool {
        self.image_alphabet(sigma).len() <= 1
    }

    fn support(&self) -> BTreeSet<char> {
        let mut s: BTreeSet<char> = self.map.keys().copied().collect();
        s.extend(self.map.values().flatten().copied());
        s
    }

    /// `self ⪯ other` iff `other ∘ self = other`.
    pub fn leq(&self, other: &Self) -> bool {
        let mut letters = self.support();
        letters.extend(other.support());
        letters.into_iter().all(|c| {
            let through = self.image(c).and_then(|d| other.image(d));
            through == other.image(c)
        })
    }

    /// Least standard morphism above both: the finest common coarsening of
    /// the two partitions.
    pub fn join(&self, other: &Self) -> Self {
        let mut letters = self.support();
        letters.extend(other.support());
        let letters: Vec<char> = letters.into_iter().collect();
        let index: BTreeMap<char, usize> =
            letters.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut parent: Vec<usize> = (0..letters.len()).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut erased = vec![false; letters.len()];
        for m in [self, other] {
            for (&c, &img) in &m.map {
                let i = index[&c];
                match img {
                    Some(d) => {
                        let (a, b) = (root(&mut parent, i), root(&mut parent, index[&d]));
                        parent[a] = b;
                    }
                    None => erased[i] = true,
                }
            }
        }
        let mut class_min: BTreeMap<usize, char> = BTreeMap::new();
        let mut class_erased: BTreeMap<usize, bool> = BTreeMap::new();
        for (i, &c) in letters.iter().enumerate() {
            let r = root(&mut parent, i);
            let e = class_min.entry(r).or_insert(c);
            if c < *e {
                *e = c;
            }
            *class_erased.entry(r).or_insert(false) |= erased[i];
        }
        let mut map = BTreeMap::new();
        for (i, &c) in letters.iter().enumerate() {
            let r = root(&mut parent, i);
            let img = if class_erased[&r] {
                None
            } else {
                Some(class_min[&r])
            };
            if img != Some(c) {
                map.insert(c, img);
            }
        }
        StandardMorphism { map }
    }

    /// Classes with more than one member, and the erased letters, over `sigma`.
    pub fn partition(&self, sigma: &Alphabet) -> (Vec<BTreeSet<char>>, BTreeSet<char>) {
        let mut classes: BTreeMap<char, BTreeSet<char>> = BTreeMap::new();
        for c in sigma.letters() {
            if let Some(img) = self.image(c) {
                classes.entry(img).or_default().insert(c);
            }
        }
        let multi = classes
            .into_iter()
            .filter(|(img, members)| members.len() > 1 || !members.contains(img))
            .map(|(_, m)| m)
            .collect();
        (multi, self.erase_set(sigma))
    }
}

/// `m2` preserves `w` with respect to `m1`: both fix `w` and the preimages
/// agree (or agree on single letters when `|w| = 1`).
pub fn preserves(w: &[char], m2: &StandardMorphism, m1: &StandardMorphism, sigma: &Alphabet) -> bool {
    if m1.apply(w) != w || m2.apply(w) != w {
        return false;
    }
    let same_classes = w.iter().all(|&x| m1.class(x, sigma) == m2.class(x, sigma));
    same_classes && (w.len() == 1 || m1.erase_set(sigma) == m2.erase_set(sigma))
}

impl fmt::Display for StandardMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return write!(f, "id");
        }
        let mut groups: BTreeMap<Option<char>, Vec<char>> = BTreeMap::new();
        for (&c, &img) in &self.map {
            groups.entry(img).or_default().push(c);
        }
        let parts: Vec<String> = groups
            .into_iter()
            .map(|(img, cs)| {
                let lhs: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                let rhs = match img {
                    Some(LEN_LETTER) => "#".to_string(),
                    Some(c) => c.to_string(),
                    None => "ε".to_string(),
                };
                format!("{}->{}", lhs.join(","), rhs)
            })
            .collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn m(classes: &[&str], erase: &str) -> StandardMorphism {
        StandardMorphism::from_classes(classes.iter().copied(), erase).unwrap()
    }

    #[test]
    fn apply_examples() {
        let sigma = Alphabet::from_str("abc");
        assert_eq!(StandardMorphism::length(&sigma).apply(&word("abc")).len(), 3);
        assert_eq!(m(&[], "bd").apply(&word("adb")), word("a"));
        assert_eq!(m(&["bc"], "").apply(&word("cab")), word("bab"));
    }

    #[test]
    fn normalize_iterates_to_fixpoint() {
        let raw: BTreeMap<char, Option<char>> =
            [('b', Some('a')), ('c', Some('b'))].into_iter().collect();
        let n = StandardMorphism::normalize(&raw).unwrap();
        assert_eq!(n, m(&["abc"], ""));
        assert!(StandardMorphism::normalize(&BTreeMap::new()).unwrap().is_identity());
        let raw: BTreeMap<char, Option<char>> = [('a', Some('b'))].into_iter().collect();
        assert!(StandardMorphism::normalize(&raw).is_err());
    }

    #[test]
    fn order_examples() {
        let sigma = Alphabet::from_str("abcd");
        let len = StandardMorphism::length(&sigma);
        assert!(StandardMorphism::identity().leq(&len));
        assert!(!len.leq(&m(&[], "b")));
        assert!(m(&["bc"], "").leq(&len));
    }

    #[test]
    fn join_examples() {
        let sigma = Alphabet::from_str("abcd");
        let j = m(&["ab", "cd"], "").join(&m(&[], "bd"));
        assert!(j.is_trivial(&sigma));
        let s = m(&["ab", "cd"], "");
        assert_eq!(s.join(&s), s);
        let j = m(&["ab"], "").join(&m(&["cd"], ""));
        assert_eq!(j, s);
    }

    #[test]
    fn preservation_examples() {
        let sigma = Alphabet::from_str("abcd");
        let id = StandardMorphism::identity();
        assert!(preserves(&word("a"), &m(&[], "b"), &id, &sigma));
        assert!(preserves(&word("aa"), &m(&["bc"], ""), &id, &sigma));
        assert!(!preserves(&word("b"), &m(&["bc"], ""), &id, &sigma));
    }
}
