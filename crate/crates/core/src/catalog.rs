//! Named matroid families, isomorph-free enumeration and revlex ingestion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::{
    binomial, canonical_key, cell_form, k_subsets, matroid_from_graph, uniform, CanonicalKey,
    Matroid, Subset,
};

/// Largest ground set handled by [`enumerate_matroids`].
pub const MAX_ENUMERATION: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Simple,
    Graphic,
    Uniform,
    #[serde(rename = "realizable-over-C")]
    RealizableOverC,
    NonRealizable,
    Connected,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::Simple => "simple",
            Tag::Graphic => "graphic",
            Tag::Uniform => "uniform",
            Tag::RealizableOverC => "realizable-over-C",
            Tag::NonRealizable => "non-realizable",
            Tag::Connected => "connected",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub matroid: Matroid,
    pub tags: BTreeSet<Tag>,
}

impl CatalogEntry {
    /// Attaches family tags and the computable `simple`/`connected` tags.
    pub fn new(name: impl Into<String>, matroid: Matroid, family: &[Tag]) -> CatalogEntry {
        let mut tags: BTreeSet<Tag> = family.iter().copied().collect();
        if matroid.is_simple() {
            tags.insert(Tag::Simple);
        }
        if !matroid.has_loops() && matroid.is_connected() {
            tags.insert(Tag::Connected);
        }
        CatalogEntry {
            name: name.into(),
            matroid,
            tags,
        }
    }
}

/// The JSON catalog form: the matroid schema plus `name` and `tags`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub name: String,
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
    pub tags: BTreeSet<Tag>,
}

impl From<&CatalogEntry> for CatalogJson {
    fn from(e: &CatalogEntry) -> Self {
        let m = crate::input::MatroidJson::from(&e.matroid);
        CatalogJson {
            name: e.name.clone(),
            n: m.n,
            bases: m.bases,
            tags: e.tags.clone(),
        }
    }
}

/// Names resolved by [`builtin`] and swept by the `builtins` catalog scope.
pub const BUILTIN_NAMES: &[&str] = &[
    "boolean(1)",
    "boolean(2)",
    "boolean(3)",
    "boolean(4)",
    "uniform(1,2)",
    "uniform(1,3)",
    "uniform(2,3)",
    "uniform(2,4)",
    "uniform(3,4)",
    "uniform(2,5)",
    "uniform(3,5)",
    "uniform(3,6)",
    "uniform(4,7)",
    "graphic(K4)",
    "graphic(K5)",
    "graphic(K33)",
    "graphic(prism)",
    "graphic(W4)",
    "fano",
    "nonfano",
    "vamos",
];

const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

/// Resolves `boolean(d)`, `uniform(r,n)`, `graphic(K4|K5|K33|prism|Wk|Kk)`,
/// `fano`, `nonfano`, `vamos`.
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownName(name.to_string());
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let args = |prefix: &str| -> Option<&str> {
        compact
            .strip_prefix(prefix)?
            .strip_prefix('(')?
            .strip_suffix(')')
    };
    let realizable = [Tag::RealizableOverC];
    if let Some(d) = args("boolean") {
        let d: usize = d.parse().map_err(|_| unknown())?;
        let m = Matroid::boolean(d)?;
        return Ok(CatalogEntry::new(
            compact.clone(),
            m,
            &[Tag::Uniform, Tag::Graphic, Tag::RealizableOverC],
        ));
    }
    if let Some(rn) = args("uniform") {
        let (r, n) = rn.split_once(',').ok_or_else(unknown)?;
        let r: usize = r.parse().map_err(|_| unknown())?;
        let n: usize = n.parse().map_err(|_| unknown())?;
        return Ok(CatalogEntry::new(
            compact.clone(),
            uniform(r, n)?,
            &[Tag::Uniform, Tag::RealizableOverC],
        ));
    }
    if let Some(g) = args("graphic") {
        let (vertices, edges) = named_graph(g).ok_or_else(unknown)?;
        let m = matroid_from_graph(vertices, &edges)?;
        return Ok(CatalogEntry::new(
            compact.clone(),
            m,
            &[Tag::Graphic, Tag::RealizableOverC],
        ));
    }
    match compact.as_str() {
        "fano" => {
            let lines: Vec<Subset> = FANO_LINES
                .iter()
                .map(|l| Subset::from_elements(*l))
                .collect();
            let bases = k_subsets(7, 3).filter(|s| !lines.contains(s));
            // realizable only in characteristic 2
            Ok(CatalogEntry::new(
                "fano",
                Matroid::from_bases(7, bases)?,
                &[Tag::NonRealizable],
            ))
        }
        "nonfano" => {
            let lines: Vec<Subset> = FANO_LINES[..6]
                .iter()
                .map(|l| Subset::from_elements(*l))
                .collect();
            let bases = k_subsets(7, 3).filter(|s| !lines.contains(s));
            Ok(CatalogEntry::new(
                "nonfano",
                Matroid::from_bases(7, bases)?,
                &realizable,
            ))
        }
        "vamos" => {
            let pairs = [[0, 1], [2, 3], [4, 5], [6, 7]];
            let planes: Vec<Subset> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
                .iter()
                .map(|&(a, b)| Subset::from_elements(pairs[a].into_iter().chain(pairs[b])))
                .collect();
            let bases = k_subsets(8, 4).filter(|s| !planes.contains(s));
            Ok(CatalogEntry::new(
                "vamos",
                Matroid::from_bases(8, bases)?,
                &[Tag::NonRealizable],
            ))
        }
        _ => Err(unknown()),
    }
}

fn named_graph(name: &str) -> Option<(usize, Vec<(usize, usize)>)> {
    let complete = |k: usize| -> Vec<(usize, usize)> {
        (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .collect()
    };
    match name {
        "K33" => Some((
            6,
            (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect(),
        )),
        "prism" => Some((
            6,
            vec![
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )),
        _ => {
            if let Some(k) = name.strip_prefix('K') {
                let k: usize = k.parse().ok()?;
                return Some((k, complete(k)));
            }
            if let Some(k) = name.strip_prefix('W') {
                // wheel: rim 0..k, hub k
                let k: usize = k.parse().ok()?;
                if k < 3 {
                    return None;
                }
                let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
                edges.extend((0..k).map(|i| (i, k)));
                return Some((k + 1, edges));
            }
            None
        }
    }
}

/// Decodes a basis indicator over the `r`-subsets in revlex order (`*` = basis).
pub fn parse_revlex(n: usize, r: usize, code: &str) -> Result<Matroid> {
    if n > crate::matroid::MAX_ELEMENTS {
        return Err(Error::TooManyElements(n));
    }
    if r > n {
        return Err(Error::InvalidRank { r, n });
    }
    let expected = binomial(n, r);
    let chars: Vec<char> = code.trim().chars().collect();
    if chars.len() != expected {
        return Err(Error::BadLength {
            got: chars.len(),
            expected,
        });
    }
    let mut bases = Vec::new();
    for (s, c) in k_subsets(n, r).zip(chars) {
        match c {
            '*' => bases.push(s),
            '0' => {}
            other => return Err(Error::BadChar(other)),
        }
    }
    Matroid::from_bases(n, bases)
}

/// Revlex indicator of a matroid as labeled.
pub fn to_revlex(m: &Matroid) -> String {
    k_subsets(m.n(), m.rank())
        .map(|s| if m.is_basis(s) { '*' } else { '0' })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub loopless_only: bool,
    pub simple_only: bool,
    pub max_rank: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            loopless_only: true,
            simple_only: false,
            max_rank: None,
        }
    }
}

/// One representative per isomorphism class of matroids on exactly `n` elements,
/// ordered by canonical key. Representatives are in canonical labeling.
pub fn enumerate_matroids(n: usize, opts: EnumerateOptions) -> Result<std::vec::IntoIter<Matroid>> {
    if n > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    let levels = loopless_levels(n);
    let mut found: BTreeMap<CanonicalKey, Matroid> = BTreeMap::new();
    let loop_counts = if opts.loopless_only { 0..=0 } else { 0..=n };
    for loops in loop_counts {
        let padding = Matroid::from_bases_unchecked(loops, vec![Subset::EMPTY]);
        for m in &levels[n - loops] {
            let m = if loops == 0 {
                m.clone()
            } else {
                m.direct_sum(&padding)?
            };
            if opts.simple_only && !m.is_simple() {
                continue;
            }
            if opts.max_rank.is_some_and(|r| m.rank() > r) {
                continue;
            }
            let key = canonical_key(&m);
            let rep = key.to_matroid();
            found.entry(key).or_insert(rep);
        }
    }
    Ok(found.into_values().collect::<Vec<_>>().into_iter())
}

/// One matroid per loopless class on `0..=n` elements. Level `k` is built from level
/// `k - 1` by adding a coloop or a single-element extension for every linear
/// subclass of hyperplanes other than the full set (which would add a loop).
/// Duplicates are dropped by the cheaper cell form; keys are computed afterwards.
fn loopless_levels(n: usize) -> Vec<Vec<Matroid>> {
    let mut levels = vec![vec![Matroid::empty()]];
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for parent in levels.last().expect("level 0 exists") {
            for child in extensions(parent) {
                next.entry(cell_form(&child)).or_insert(child);
            }
        }
        levels.push(next.into_values().collect());
    }
    levels
}

/// All loopless single-element extensions of a loopless matroid, new element last.
fn extensions(parent: &Matroid) -> Vec<Matroid> {
    let n = parent.n();
    let e = n;
    let coloop = Matroid::from_bases_unchecked(1, vec![Subset::singleton(0)]);
    let mut out = vec![parent
        .direct_sum(&coloop)
        .expect("enumeration stays below 16 elements")];
    let r = parent.rank();
    if r == 0 {
        return out;
    }
    let lattice = FlatLattice::build(parent).expect("levels are loopless");
    let hyperplanes: Vec<usize> = (0..lattice.len())
        .filter(|&i| lattice.rank_at(i) == r - 1)
        .collect();
    let hyper_index = |f: Subset| hyperplanes.iter().position(|&h| lattice.flat(h) == f);
    // each coline (rank r-2 flat) as the mask of hyperplanes above it
    let colines: Vec<u128> = (0..lattice.len())
        .filter(|&i| r >= 2 && lattice.rank_at(i) == r - 2)
        .map(|c| {
            hyperplanes
                .iter()
                .enumerate()
                .filter(|&(_, &h)| lattice.leq(c, h))
                .fold(0u128, |mask, (j, _)| mask | 1 << j)
        })
        .collect();
    assert!(
        hyperplanes.len() <= 128,
        "too many hyperplanes for extension search"
    );
    let all: u128 = if hyperplanes.len() == 128 {
        u128::MAX
    } else {
        (1u128 << hyperplanes.len()) - 1
    };
    let mut subclasses = Vec::new();
    linear_subclasses(&colines, hyperplanes.len(), 0, 0, 0, &mut subclasses);
    // (r-1)-independent sets grouped by the hyperplane they span
    let spanning: Vec<(Subset, usize)> = k_subsets(n, r - 1)
        .filter(|&s| parent.is_independent(s))
        .map(|s| {
            (
                s,
                hyper_index(parent.closure(s)).expect("closure of an (r-1)-set is a hyperplane"),
            )
        })
        .collect();
    for class in subclasses {
        if class == all {
            continue;
        }
        let mut bases: Vec<Subset> = parent.bases().to_vec();
        bases.extend(
            spanning
                .iter()
                .filter(|&&(_, h)| class >> h & 1 == 0)
                .map(|&(s, _)| s.with(e)),
        );
        out.push(Matroid::from_bases_unchecked(n + 1, bases));
    }
    out
}

/// Sets of hyperplanes meeting every coline's hyperplane set in 0, 1 or all members.
fn linear_subclasses(
    colines: &[u128],
    count: usize,
    next: usize,
    chosen: u128,
    excluded: u128,
    out: &mut Vec<u128>,
) {
    let mut chosen = chosen;
    loop {
        let mut changed = false;
        for &c in colines {
            let hit = chosen & c;
            if hit.count_ones() >= 2 && hit != c {
                if excluded & c != 0 {
                    return;
                }
                chosen |= c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let Some(h) = (next..count).find(|&h| (chosen | excluded) >> h & 1 == 0) else {
        out.push(chosen);
        return;
    };
    linear_subclasses(colines, count, h + 1, chosen | 1 << h, excluded, out);
    linear_subclasses(colines, count, h + 1, chosen, excluded | 1 << h, out);
}
