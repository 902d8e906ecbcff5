use std::fmt;

/// A subset of a ground set `{0, .., n-1}` with `n <= 16`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(e: usize) -> Subset {
        Subset(1 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        Subset(elements.into_iter().fold(0, |acc, e| acc | (1 << e)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | 1 << e)
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1 << e))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// Re-labels the elements of `self` that lie in `within` to `0..|within|`,
    /// preserving their relative order.
    pub fn compress(self, within: Subset) -> Subset {
        let mut out = 0;
        for (i, e) in within.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: maps label `i` to the `i`-th element of `within`.
    pub fn expand(self, within: Subset) -> Subset {
        let mut out = 0;
        for (i, e) in within.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << e;
            }
        }
        Subset(out)
    }

    /// Image of `self` under the relabeling `e -> perm[e]`.
    pub fn permute(self, perm: &[usize]) -> Subset {
        Subset::from_elements(self.iter().map(|e| perm[e]))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct SubsetIter(u32);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl std::str::FromStr for Subset {
    type Err = String;

    /// Parses the `{0,2,5}` form written by `Display`.
    fn from_str(s: &str) -> Result<Subset, String> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| format!("expected {{..}}, got {s:?}"))?;
        let mut out = Subset::EMPTY;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let e: usize = part.parse().map_err(|_| format!("bad element {part:?}"))?;
            if e >= 32 {
                return Err(format!("element {e} out of range"));
            }
            out = out.with(e);
        }
        Ok(out)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `k`-subsets of `{0, .., n-1}` in increasing bitmask order, which is the
/// reverse-lexicographic order on sorted tuples.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    let limit: u64 = 1 << n;
    let start: u64 = if k > n { limit } else { (1u64 << k) - 1 };
    std::iter::successors(Some(start), move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        Some((((r ^ x) >> 2) / c) | r)
    })
    .take_while(move |&x| x < limit)
    .map(|x| Subset(x as u32))
    .take(if k == 0 { 1 } else { usize::MAX })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
