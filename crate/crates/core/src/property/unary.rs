use std::fmt;

/// ε flag plus an optional half-open interval `[lo, hi)` with `lo ≥ 1`;
/// `hi = None` is +∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnaryInterval {
    pub eps: bool,
    pub range: Option<(usize, Option<usize>)>,
}

impl UnaryInterval {
    pub const BOTTOM: UnaryInterval = UnaryInterval { eps: false, range: None };
    pub const TOP: UnaryInterval = UnaryInterval { eps: true, range: Some((1, None)) };
    pub const EPS: UnaryInterval = UnaryInterval { eps: true, range: None };
    pub const NONEMPTY: UnaryInterval = UnaryInterval { eps: false, range: Some((1, None)) };

    /// Builds and normalizes; `lo` is clamped to 1 and an empty range dropped.
    pub fn new(eps: bool, lo: usize, hi: Option<usize>) -> Self {
        let lo = lo.max(1);
        let range = match hi {
            Some(h) if h <= lo => None,
            _ => Some((lo, hi)),
        };
        UnaryInterval { eps, range }
    }

    /// The set `{n}` for a single natural `n` (0 means ε only).
    pub fn exact(n: usize) -> Self {
        if n == 0 {
            Self::EPS
        } else {
            Self::new(false, n, Some(n + 1))
        }
    }

    /// All naturals in `[lo, hi)`, including 0 when `lo = 0`.
    pub fn span(lo: usize, hi: Option<usize>) -> Self {
        let eps = lo == 0 && hi.map_or(true, |h| h > 0);
        Self::new(eps, lo, hi)
    }

    #[inline]
    pub fn is_bottom(&self) -> bool {
        !self.eps && self.range.is_none()
    }

    #[inline]
    pub fn lo(&self) -> Option<usize> {
        self.range.map(|r| r.0)
    }

    #[inline]
    pub fn hi(&self) -> Option<Option<usize>> {
        self.range.map(|r| r.1)
    }

    /// Smallest member, if any.
    pub fn least(&self) -> Option<usize> {
        if self.eps {
            Some(0)
        } else {
            self.lo()
        }
    }

    /// Largest member; `Some(None)` when unbounded.
    pub fn greatest(&self) -> Option<Option<usize>> {
        match self.range {
            Some((_, hi)) => Some(hi.map(|h| h - 1)),
            None if self.eps => Some(Some(0)),
            None => None,
        }
    }

    pub fn contains(&self, n: usize) -> bool {
        if n == 0 {
            return self.eps;
        }
        match self.range {
            Some((lo, hi)) => lo <= n && hi.map_or(true, |h| n < h),
            None => false,
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        let range = match (self.range, other.range) {
            (None, r) | (r, None) => r,
            (Some((l1, h1)), Some((l2, h2))) => {
                let hi = match (h1, h2) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
                Some((l1.min(l2), hi))
            }
        };
        UnaryInterval { eps: self.eps || other.eps, range }
    }

    pub fn meet(&self, other: &Self) -> Self {
        let eps = self.eps && other.eps;
        match (self.range, other.range) {
            (Some((l1, h1)), Some((l2, h2))) => {
                let hi = match (h1, h2) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, None) | (None, a) => a,
                };
                Self::new(eps, l1.max(l2), hi)
            }
            _ => UnaryInterval { eps, range: None },
        }
    }

    pub fn leq(&self, other: &Self) -> bool {
        if self.eps && !other.eps {
            return false;
        }
        match (self.range, other.range) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((l1, h1)), Some((l2, h2))) => {
                l1 >= l2
                    && match (h1, h2) {
                        (_, None) => true,
                        (None, Some(_)) => false,
                        (Some(a), Some(b)) => a <= b,
                    }
            }
        }
    }

    /// Raises the lower bound; a lower bound of at least 1 also rules out ε.
    pub fn raise_lo(&self, n: usize) -> Self {
        if n == 0 {
            return *self;
        }
        let mut out = self.meet(&UnaryInterval::new(false, n, None));
        out.eps = false;
        out
    }

    /// Lowers the exclusive upper bound of the set of naturals to `n`.
    pub fn cap_hi(&self, n: usize) -> Self {
        self.meet(&UnaryInterval::span(0, Some(n)))
    }

    /// Pointwise sum of two sets of naturals.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = UnaryInterval::BOTTOM;
        if self.eps && other.eps {
            out.eps = true;
        }
        if self.eps {
            out = out.join(&UnaryInterval { eps: false, range: other.range });
        }
        if other.eps {
            out = out.join(&UnaryInterval { eps: false, range: self.range });
        }
        if let (Some((l1, h1)), Some((l2, h2))) = (self.range, other.range) {
            let hi = match (h1, h2) {
                (Some(a), Some(b)) => Some(a + b - 1),
                _ => None,
            };
            out = out.join(&UnaryInterval::new(false, l1 + l2, hi));
        }
        out
    }

    /// Shifts every member by `delta`, clamping negative results to 0.
    pub fn shift(&self, delta: isize) -> Self {
        let mv = |n: usize| -> usize { (n as isize + delta).max(0) as usize };
        let mut out = UnaryInterval::BOTTOM;
        if self.eps {
            out = out.join(&UnaryInterval::exact(mv(0)));
        }
        if let Some((lo, hi)) = self.range {
            let lo2 = mv(lo);
            let hi2 = hi.map(|h| mv(h - 1) + 1);
            out = out.join(&UnaryInterval::span(lo2, hi2));
        }
        out
    }
}

impl fmt::Display for UnaryInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return write!(f, "⊥");
        }
        let mut parts = Vec::new();
        if self.eps {
            parts.push("[0]".to_string());
        }
        if let Some((lo, hi)) = self.range {
            match hi {
                Some(h) if h == lo + 1 => parts.push(format!("[{lo}]")),
                Some(h) => parts.push(format!("[{lo};{h})")),
                None => parts.push(format!("[{lo};+inf)")),
            }
        }
        write!(f, "{}", parts.join("u"))
    }
}
