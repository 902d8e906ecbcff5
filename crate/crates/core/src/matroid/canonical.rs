//! Canonical forms: the lexicographically least basis indicator over relabelings.
//!
//! The indicator of a rank-`r` matroid on `n` elements lists the `r`-subsets in
//! reverse-lexicographic order (equivalently, increasing bitmask) with a `1` for
//! each basis. Reverse-lexicographic order puts every subset of `{0..k}` before
//! any subset containing `k + 1`, so once labels `0..=k` are assigned the
//! corresponding prefix of the indicator is fixed. The search assigns labels in
//! increasing order and prunes any branch whose prefix exceeds the best found.
//!
//! Two things keep the search small:
//! * a first pass restricted to labelings that respect a partition into cells of
//!   isomorphism-invariant data (basis degree, parallel-class size, loop status)
//!   finds a near-optimal indicator quickly, which bounds the unrestricted pass;
//! * elements whose transposition is an automorphism ("twins") are interchangeable,
//!   so only the smallest unused twin is ever tried.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{binomial, k_subsets, Matroid, Subset};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: u8,
    rank: u8,
    indicator: Vec<bool>,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn indicator(&self) -> &[bool] {
        &self.indicator
    }

    /// The indicator as a revlex code (`*` for a basis, `0` otherwise).
    pub fn code(&self) -> String {
        self.indicator
            .iter()
            .map(|&b| if b { '*' } else { '0' })
            .collect()
    }

    /// The canonical representative.
    pub fn to_matroid(&self) -> Matroid {
        let bases = k_subsets(self.n(), self.rank())
            .zip(&self.indicator)
            .filter(|(_, &b)| b)
            .map(|(s, _)| s)
            .collect();
        Matroid::from_bases_unchecked(self.n(), bases)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.n, self.rank, self.code())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.splitn(3, ':');
        let (Some(n), Some(r), Some(code)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("malformed canonical key {s:?}")));
        };
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad size in key {s:?}")))?;
        let r: usize = r
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in key {s:?}")))?;
        let m = crate::catalog::parse_revlex(n, r, code)?;
        let key = canonical_key(&m);
        if key.code() != code {
            return Err(Error::Parse(format!("{s:?} is not in canonical form")));
        }
        Ok(key)
    }
}

impl serde::Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn canonical_key(m: &Matroid) -> CanonicalKey {
    canonical_labeling(m).0
}

/// A complete isomorphism invariant that is cheaper than [`canonical_key`]: the
/// least indicator among labelings that list elements in invariant-cell order.
/// It is not the global minimum, so it is only meant for in-process deduplication.
pub(crate) fn cell_form(m: &Matroid) -> (usize, usize, Vec<bool>) {
    let n = m.n();
    let r = m.rank();
    if r == 0 || r == n {
        return (n, r, vec![true]);
    }
    let mut search = Search::new(m, cells(m));
    search.descend(0, true);
    (
        n,
        r,
        search.best.expect("search visits at least one leaf").0,
    )
}

/// The canonical key together with a labeling `perm` (`perm[new] = old`) attaining it.
pub fn canonical_labeling(m: &Matroid) -> (CanonicalKey, Vec<usize>) {
    let n = m.n();
    let r = m.rank();
    if r == 0 || r == n {
        let key = CanonicalKey {
            n: n as u8,
            rank: r as u8,
            indicator: vec![true],
        };
        return (key, (0..n).collect());
    }
    // a search confined to invariant cells gives a tight bound for the full search
    let mut seeded = Search::new(m, cells(m));
    seeded.descend(0, true);
    let mut search = Search::new(m, vec![m.ground_set(); n]);
    search.best = seeded.best;
    search.descend(0, false);
    let (indicator, perm) = search.best.expect("search visits at least one leaf");
    debug_assert_eq!(indicator.len(), binomial(n, r));
    let key = CanonicalKey {
        n: n as u8,
        rank: r as u8,
        indicator,
    };
    (key, perm)
}

struct Search<'a> {
    m: &'a Matroid,
    /// `blocks[k]`: the `r`-subsets (in new labels) whose largest element is `k`,
    /// stored without `k`, in order.
    blocks: Vec<Vec<u32>>,
    /// Start of each block in the indicator.
    offsets: Vec<usize>,
    /// Basis indicator over all `2^n` old-label bitmasks.
    is_basis: Vec<bool>,
    /// Candidate old elements for each new label position.
    cell_at: Vec<Subset>,
    /// Smaller twins that must be placed before each element.
    twins_below: Vec<Subset>,
    perm: Vec<usize>,
    /// `image[s]`: old-label image of a new-label set `s ⊆ {0..depth}`.
    image: Vec<u32>,
    used: Subset,
    prefix: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(m: &'a Matroid, cell_at: Vec<Subset>) -> Self {
        let n = m.n();
        let r = m.rank();
        let mut blocks = vec![Vec::new(); n];
        for s in k_subsets(n, r) {
            let k = s.max().expect("rank >= 1");
            blocks[k].push(s.without(k).bits());
        }
        let mut offsets = Vec::with_capacity(n);
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.len();
        }
        let mut is_basis = vec![false; 1 << n];
        for b in m.bases() {
            is_basis[b.bits() as usize] = true;
        }
        Search {
            m,
            blocks,
            offsets,
            is_basis,
            cell_at,
            twins_below: twins(m),
            perm: Vec::with_capacity(n),
            image: vec![0; 1 << n],
            used: Subset::EMPTY,
            prefix: Vec::with_capacity(total),
            best: None,
        }
    }

    /// `less`: the current prefix is already strictly below the best indicator.
    /// Returns whether a new best was recorded below this node.
    fn descend(&mut self, depth: usize, mut less: bool) -> bool {
        if depth == self.m.n() {
            if less {
                self.best = Some((self.prefix.clone(), self.perm.clone()));
            }
            return less;
        }
        let mut improved = false;
        let candidates = self.cell_at[depth].difference(self.used);
        for e in candidates.iter() {
            if !self.twins_below[e].is_subset(self.used) {
                continue;
            }
            self.perm.push(e);
            self.used = self.used.with(e);
            let half = 1usize << depth;
            for s in 0..half {
                self.image[half + s] = self.image[s] | 1 << e;
            }
            let mark = self.prefix.len();
            for &rest in &self.blocks[depth] {
                let bit = self.is_basis[self.image[rest as usize] as usize | 1 << e];
                self.prefix.push(bit);
            }
            let order = match (&self.best, less) {
                (None, _) | (_, true) => Ordering::Less,
                (Some((best, _)), false) => {
                    let lo = self.offsets[depth];
                    self.prefix[lo..].cmp(&best[lo..lo + self.prefix.len() - lo])
                }
            };
            if order != Ordering::Greater && self.descend(depth + 1, order == Ordering::Less) {
                // the new best shares this node's prefix
                improved = true;
                less = false;
            }
            self.prefix.truncate(mark);
            self.used = self.used.without(e);
            self.perm.pop();
        }
        improved
    }
}

/// Old elements allowed at each new label position.
fn cells(m: &Matroid) -> Vec<Subset> {
    let n = m.n();
    let loops = m.loops();
    let invariant = |e: usize| {
        let degree = m.bases().iter().filter(|b| b.contains(e)).count();
        let parallel = m.closure(Subset::singleton(e)).len();
        (!loops.contains(e), degree, parallel)
    };
    let mut keyed: Vec<_> = (0..n).map(|e| (invariant(e), e)).collect();
    keyed.sort();
    let mut at = vec![Subset::EMPTY; n];
    let mut start = 0;
    while start < n {
        let end = (start..n)
            .find(|&i| keyed[i].0 != keyed[start].0)
            .unwrap_or(n);
        let cell = Subset::from_elements(keyed[start..end].iter().map(|&(_, e)| e));
        for slot in &mut at[start..end] {
            *slot = cell;
        }
        start = end;
    }
    at
}

/// For each element, the smaller elements it is interchangeable with.
fn twins(m: &Matroid) -> Vec<Subset> {
    let n = m.n();
    let mut below = vec![Subset::EMPTY; n];
    for e in 0..n {
        #[allow(clippy::needless_range_loop)]
        for f in e + 1..n {
            let swap = |b: Subset| match (b.contains(e), b.contains(f)) {
                (true, false) => b.without(e).with(f),
                (false, true) => b.without(f).with(e),
                _ => b,
            };
            if m.bases().iter().all(|&b| m.is_basis(swap(b))) {
                below[f] = below[f].with(e);
            }
        }
    }
    below
}
