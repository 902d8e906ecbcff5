//! Matroids on small ground sets, given by their bases.
//!
//! A [`Matroid`] is immutable once built. Construction precomputes a full rank
//! table (`2^n` bytes), so rank and closure queries are table lookups.

mod build;
mod canonical;
mod subset;

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

pub use build::{matroid_from_graph, matroid_from_matrix, uniform};
pub(crate) use canonical::cell_form;
pub use canonical::{canonical_key, canonical_labeling, CanonicalKey};
pub use subset::{binomial, k_subsets, Subset, SubsetIter};

pub const MAX_ELEMENTS: usize = 16;

#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
    rank_table: Vec<u8>,
}

impl Matroid {
    /// Validates `bases` (nonempty, equicardinal, basis exchange) and builds the matroid.
    pub fn from_bases<I: IntoIterator<Item = Subset>>(n: usize, bases: I) -> Result<Matroid> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        let ground = Subset::full(n);
        let mut list: Vec<Subset> = bases.into_iter().collect();
        if let Some(&bad) = list.iter().find(|b| !b.is_subset(ground)) {
            return Err(Error::ElementOutOfRange { n, subset: bad });
        }
        list.sort_unstable();
        list.dedup();
        let first = *list.first().ok_or(Error::EmptyBases)?;
        if let Some(&other) = list.iter().find(|b| b.len() != first.len()) {
            return Err(Error::UnequalBasisSizes {
                first,
                second: other,
            });
        }
        check_exchange(&list)?;
        Ok(Matroid::from_bases_unchecked(n, list))
    }

    /// Builds a matroid from a basis family already known to be valid.
    pub(crate) fn from_bases_unchecked(n: usize, mut bases: Vec<Subset>) -> Matroid {
        debug_assert!(n <= MAX_ELEMENTS && !bases.is_empty());
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].len();
        let rank_table = rank_table(n, &bases);
        Matroid {
            n,
            rank,
            bases,
            rank_table,
        }
    }

    /// The matroid on zero elements.
    pub fn empty() -> Matroid {
        Matroid::from_bases_unchecked(0, vec![Subset::EMPTY])
    }

    /// The Boolean (free) matroid `B_d`.
    pub fn boolean(d: usize) -> Result<Matroid> {
        if d > MAX_ELEMENTS {
            return Err(Error::TooManyElements(d));
        }
        Ok(Matroid::from_bases_unchecked(d, vec![Subset::full(d)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total rank, the size of every basis.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        s.len() == self.rank && self.rank_of(s) == self.rank
    }

    pub fn rank_of(&self, s: Subset) -> usize {
        debug_assert!(s.is_subset(self.ground_set()));
        self.rank_table[s.bits() as usize] as usize
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        (0..self.n)
            .filter(|&e| s.contains(e) || self.rank_of(s.with(e)) == r)
            .fold(Subset::EMPTY, Subset::with)
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    pub fn loops(&self) -> Subset {
        self.closure(Subset::EMPTY)
    }

    pub fn has_loops(&self) -> bool {
        !self.loops().is_empty()
    }

    /// Elements contained in every basis.
    pub fn coloops(&self) -> Subset {
        self.bases
            .iter()
            .fold(self.ground_set(), |acc, &b| acc.intersection(b))
    }

    /// Errors with [`Error::HasLoops`] unless the matroid is loopless.
    pub fn require_loopless(&self) -> Result<()> {
        match self.loops() {
            l if l.is_empty() => Ok(()),
            l => Err(Error::HasLoops(l)),
        }
    }

    /// `true` iff every element is a coloop, i.e. the matroid is `B_n`.
    pub fn is_boolean(&self) -> bool {
        self.rank == self.n
    }

    /// Loopless and without parallel pairs.
    pub fn is_simple(&self) -> bool {
        !self.has_loops()
            && (0..self.n)
                .all(|e| (e + 1..self.n).all(|f| self.rank_of(Subset::from_elements([e, f])) == 2))
    }

    fn check_subset(&self, s: Subset) -> Result<()> {
        if s.is_subset(self.ground_set()) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                n: self.n,
                subset: s,
            })
        }
    }

    fn check_flat(&self, f: Subset) -> Result<()> {
        self.check_subset(f)?;
        if self.is_flat(f) {
            Ok(())
        } else {
            Err(Error::NotAFlat(f))
        }
    }

    /// Restriction to `s`, relabeled to `0..|s|` in order.
    pub fn restriction(&self, s: Subset) -> Result<Matroid> {
        self.check_subset(s)?;
        let r = self.rank_of(s);
        let bases = self
            .bases
            .iter()
            .map(|b| b.intersection(s))
            .filter(|b| b.len() == r)
            .map(|b| b.compress(s))
            .collect();
        Ok(Matroid::from_bases_unchecked(s.len(), bases))
    }

    /// The localization `M^F`: restriction to the flat `F`.
    pub fn localization(&self, f: Subset) -> Result<Matroid> {
        self.check_flat(f)?;
        self.restriction(f)
    }

    /// The contraction `M_F` of the flat `F`, on `E \ F` relabeled in order.
    pub fn contraction(&self, f: Subset) -> Result<Matroid> {
        self.check_flat(f)?;
        Ok(self.contract_unchecked(f))
    }

    fn contract_unchecked(&self, f: Subset) -> Matroid {
        let rf = self.rank_of(f);
        let rest = self.ground_set().difference(f);
        let bases = self
            .bases
            .iter()
            .filter(|b| b.intersection(f).len() == rf)
            .map(|b| b.difference(f).compress(rest))
            .collect();
        Matroid::from_bases_unchecked(rest.len(), bases)
    }

    /// The minor `M^upper_lower` for flats `lower ⊆ upper`, on `upper \ lower`.
    pub fn minor(&self, lower: Subset, upper: Subset) -> Result<Matroid> {
        if !lower.is_subset(upper) {
            return Err(Error::NotComparable(lower, upper));
        }
        self.check_flat(lower)?;
        let local = self.localization(upper)?;
        Ok(local.contract_unchecked(lower.compress(upper)))
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        let shift = self.n;
        let bases = self
            .bases
            .iter()
            .flat_map(|&b1| {
                other
                    .bases
                    .iter()
                    .map(move |&b2| Subset(b1.bits() | b2.bits() << shift))
            })
            .collect();
        Ok(Matroid::from_bases_unchecked(n, bases))
    }

    /// Deletes loops and keeps the smallest element of each parallel class.
    pub fn simplify(&self) -> Matroid {
        let loops = self.loops();
        let mut keep = Subset::EMPTY;
        let mut covered = loops;
        for e in 0..self.n {
            if covered.contains(e) {
                continue;
            }
            keep = keep.with(e);
            covered = covered.union(self.closure(Subset::singleton(e)));
        }
        self.restriction(keep)
            .expect("kept elements lie in the ground set")
    }

    /// Connected components as restrictions, ordered by smallest element.
    pub fn connected_components(&self) -> Result<Vec<Matroid>> {
        self.require_loopless()?;
        self.component_sets()
            .into_iter()
            .map(|s| self.restriction(s))
            .collect()
    }

    /// Element sets of the connected components, ordered by smallest element.
    ///
    /// `e ~ f` whenever `B - e + f` is a basis for some basis `B`; the classes of the
    /// transitive closure are the components of a loopless matroid.
    pub fn component_sets(&self) -> Vec<Subset> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for &b in &self.bases {
            for e in b.iter() {
                for f in self.ground_set().difference(b).iter() {
                    if self.is_basis(b.without(e).with(f)) {
                        let (a, c) = (find(&mut parent, e), find(&mut parent, f));
                        if a != c {
                            parent[a.max(c)] = a.min(c);
                        }
                    }
                }
            }
        }
        let mut classes: Vec<Subset> = Vec::new();
        let mut root_of = vec![usize::MAX; self.n];
        for e in 0..self.n {
            let r = find(&mut parent, e);
            if root_of[r] == usize::MAX {
                root_of[r] = classes.len();
                classes.push(Subset::EMPTY);
            }
            let idx = root_of[r];
            classes[idx] = classes[idx].with(e);
        }
        classes
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() == 1
    }

    /// The image of `self` under `e -> perm[e]`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.n);
        let bases = self.bases.iter().map(|b| b.permute(perm)).collect();
        Matroid::from_bases_unchecked(self.n, bases)
    }
}

/// Rank of every subset: mark all independent sets (subsets of bases), then
/// `rank(S) = max_{e in S} rank(S - e)` for dependent `S`.
fn rank_table(n: usize, bases: &[Subset]) -> Vec<u8> {
    let size = 1usize << n;
    let mut table = vec![u8::MAX; size];
    for b in bases {
        let full = b.bits();
        let mut sub = full;
        loop {
            table[sub as usize] = sub.count_ones() as u8;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
    }
    for s in 1..size {
        if table[s] == u8::MAX {
            let mut best = 0;
            let mut rest = s;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                best = best.max(table[s & !low]);
                rest &= rest - 1;
            }
            table[s] = best;
        }
    }
    table
}

fn check_exchange(bases: &[Subset]) -> Result<()> {
    let set: HashSet<Subset> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            let only2 = b2.difference(b1);
            for e in b1.difference(b2).iter() {
                let base = b1.without(e);
                if !only2.iter().any(|f| set.contains(&base.with(f))) {
                    return Err(Error::ExchangeAxiomViolated { b1, b2, element: e });
                }
            }
        }
    }
    Ok(())
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Hash for Matroid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bases.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field("bases", &self.bases)
            .finish()
    }
}
