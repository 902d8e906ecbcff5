//! The lattice of flats and the invariants read off from it: Möbius values,
//! characteristic polynomials, beta invariants and flags of flats.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matroid::{Matroid, Subset};
use crate::poly::IntPoly;

#[derive(Clone, Debug)]
pub struct FlatLattice {
    n: usize,
    rank: usize,
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    index: HashMap<Subset, usize>,
    mobius_bottom: Vec<BigInt>,
    covers_up: Vec<Vec<usize>>,
}

impl FlatLattice {
    /// Enumerates flats rank by rank, closing `F + e` for every flat `F` and `e ∉ F`.
    pub fn build(m: &Matroid) -> Result<FlatLattice> {
        m.require_loopless()?;
        let ground = m.ground_set();
        let mut levels: Vec<Vec<Subset>> = vec![vec![Subset::EMPTY]];
        let mut cover_pairs: Vec<(Subset, Subset)> = Vec::new();
        while levels.last().is_some_and(|l| l[0] != ground) {
            let mut next: HashSet<Subset> = HashSet::new();
            for &f in levels.last().expect("nonempty") {
                let mut rest = ground.difference(f);
                while let Some(e) = rest.min() {
                    let g = m.closure(f.with(e));
                    rest = rest.difference(g);
                    next.insert(g);
                    cover_pairs.push((f, g));
                }
            }
            let mut level: Vec<Subset> = next.into_iter().collect();
            level.sort_unstable();
            levels.push(level);
        }
        let flats: Vec<Subset> = levels.iter().flatten().copied().collect();
        let ranks: Vec<usize> = levels
            .iter()
            .enumerate()
            .flat_map(|(r, l)| std::iter::repeat_n(r, l.len()))
            .collect();
        let index: HashMap<Subset, usize> =
            flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut covers_up = vec![Vec::new(); flats.len()];
        for (f, g) in cover_pairs {
            covers_up[index[&f]].push(index[&g]);
        }
        for c in &mut covers_up {
            c.sort_unstable();
        }
        let mut lattice = FlatLattice {
            n: m.n(),
            rank: m.rank(),
            flats,
            ranks,
            index,
            mobius_bottom: Vec::new(),
            covers_up,
        };
        lattice.mobius_bottom = lattice
            .mobius_row(0)
            .into_iter()
            .map(|v| v.expect("every flat lies above the bottom"))
            .collect();
        Ok(lattice)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Flats sorted by `(rank, bitmask)`.
    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> Subset {
        self.flats[i]
    }

    pub fn rank_at(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn position(&self, f: Subset) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn covers_up(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    pub fn mobius_bottom(&self) -> &[BigInt] {
        &self.mobius_bottom
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.flats[i].is_subset(self.flats[j])
    }

    fn require_flat(&self, f: Subset) -> Result<usize> {
        self.position(f).ok_or(Error::NotAFlat(f))
    }

    /// `μ(flat i, ·)` for every flat; `None` off the upper interval.
    pub fn mobius_row(&self, i: usize) -> Vec<Option<BigInt>> {
        let mut row: Vec<Option<BigInt>> = vec![None; self.len()];
        row[i] = Some(BigInt::one());
        for j in i + 1..self.len() {
            if !self.leq(i, j) {
                continue;
            }
            let below: BigInt = (i..j)
                .filter(|&k| self.leq(k, j))
                .filter_map(|k| row[k].as_ref())
                .sum();
            row[j] = Some(-below);
        }
        row
    }

    /// Möbius value `μ(F, G)` of the interval `[F, G]`.
    pub fn mobius(&self, f: Subset, g: Subset) -> Result<BigInt> {
        let (i, j) = (self.require_flat(f)?, self.require_flat(g)?);
        if !self.leq(i, j) {
            return Err(Error::NotComparable(f, g));
        }
        if i == 0 {
            return Ok(self.mobius_bottom[j].clone());
        }
        Ok(self.mobius_row(i)[j].clone().expect("j lies above i"))
    }

    /// Characteristic polynomial of the minor whose lattice is `[lo, hi]`.
    pub fn interval_char_poly(&self, lo: usize, hi: usize) -> IntPoly {
        let row = self.row_from(lo);
        self.char_poly_from_row(&row, lo, hi)
    }

    fn row_from(&self, lo: usize) -> Vec<Option<BigInt>> {
        if lo == 0 {
            self.mobius_bottom.iter().cloned().map(Some).collect()
        } else {
            self.mobius_row(lo)
        }
    }

    pub(crate) fn char_poly_from_row(
        &self,
        row: &[Option<BigInt>],
        lo: usize,
        hi: usize,
    ) -> IntPoly {
        let top = self.ranks[hi];
        let mut coeffs = vec![BigInt::zero(); top - self.ranks[lo] + 1];
        for k in lo..=hi {
            if let (Some(mu), true) = (&row[k], self.leq(k, hi)) {
                coeffs[top - self.ranks[k]] += mu;
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn char_poly(&self) -> IntPoly {
        self.interval_char_poly(0, self.top())
    }

    /// Beta invariant of the minor with lattice `[lo, hi]`:
    /// `(-1)^k Σ_{H} μ(lo, H) (rk H - rk lo)` with `k = rk hi - rk lo >= 1`.
    pub fn interval_beta(&self, lo: usize, hi: usize) -> Result<BigInt> {
        let k = self.ranks[hi] - self.ranks[lo];
        if k == 0 {
            return Err(Error::EmptyMatroid);
        }
        let row = self.row_from(lo);
        let sum: BigInt = (lo..=hi)
            .filter(|&h| self.leq(h, hi))
            .filter_map(|h| {
                row[h]
                    .as_ref()
                    .map(|mu| mu * BigInt::from(self.ranks[h] - self.ranks[lo]))
            })
            .sum();
        Ok(if k.is_multiple_of(2) { sum } else { -sum })
    }

    pub fn beta(&self) -> Result<BigInt> {
        if self.n == 0 {
            return Err(Error::EmptyMatroid);
        }
        self.interval_beta(0, self.top())
    }

    /// Lattice positions of the flag members; checks they form a chain of
    /// nonempty proper flats.
    pub fn flag_positions(&self, flag: &FlagOfFlats) -> Result<Vec<usize>> {
        let mut positions = Vec::with_capacity(flag.chain.len());
        for &f in &flag.chain {
            let i = self.require_flat(f)?;
            if i == 0 || i == self.top() {
                return Err(Error::NotAFlat(f));
            }
            if let Some(&prev) = positions.last() {
                if prev == i || !self.leq(prev, i) {
                    return Err(Error::NotComparable(self.flats[prev], f));
                }
            }
            positions.push(i);
        }
        Ok(positions)
    }

    /// `β(M)[F] = Π β(M^{F_{i+1}}_{F_i})` over consecutive members of `∅ ⊂ F_1 ⊂ … ⊂ F_k ⊂ E`.
    pub fn flag_beta_product(&self, flag: &FlagOfFlats) -> Result<BigInt> {
        if self.n == 0 {
            return Err(Error::EmptyMatroid);
        }
        let positions = self.flag_positions(flag)?;
        let mut product = BigInt::one();
        let mut lo = 0;
        for hi in positions.into_iter().chain(std::iter::once(self.top())) {
            product *= self.interval_beta(lo, hi)?;
            if product.is_zero() {
                break;
            }
            lo = hi;
        }
        Ok(product)
    }

    /// Descending flags: chains of nonempty proper flats with
    /// `min F_1 > min F_2 > … > min F_l > 0`, including the empty flag.
    /// Ordered by length, then lexicographically by lattice position.
    pub fn descending_flags(&self) -> Vec<FlagOfFlats> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        let mut chain = Vec::new();
        self.extend_chains(&mut chain, &mut out, &|lattice, prev, next| {
            let next_min = lattice.flats[next].min().expect("nonempty flat");
            next_min > 0
                && prev.is_none_or(|p| next_min < lattice.flats[p].min().expect("nonempty flat"))
        });
        self.sorted_flags(out)
    }

    /// All chains of exactly `k` nonempty proper flats.
    pub fn flags_of_length(&self, k: usize) -> Vec<FlagOfFlats> {
        let mut out: Vec<Vec<usize>> = if k == 0 { vec![Vec::new()] } else { Vec::new() };
        let mut chain = Vec::new();
        self.extend_chains(&mut chain, &mut out, &|_, _, _| true);
        out.retain(|c| c.len() == k);
        self.sorted_flags(out)
    }

    fn extend_chains(
        &self,
        chain: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        admissible: &dyn Fn(&FlatLattice, Option<usize>, usize) -> bool,
    ) {
        let top = self.top();
        let start = chain.last().map_or(1, |&p| p + 1);
        for next in start..top {
            if let Some(&p) = chain.last() {
                if !self.leq(p, next) {
                    continue;
                }
            }
            if !admissible(self, chain.last().copied(), next) {
                continue;
            }
            chain.push(next);
            out.push(chain.clone());
            self.extend_chains(chain, out, admissible);
            chain.pop();
        }
    }

    fn sorted_flags(&self, mut chains: Vec<Vec<usize>>) -> Vec<FlagOfFlats> {
        chains.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        chains
            .into_iter()
            .map(|c| FlagOfFlats {
                chain: c.into_iter().map(|i| self.flats[i]).collect(),
            })
            .collect()
    }
}

/// A strictly increasing chain `F_1 ⊂ … ⊂ F_k` of nonempty proper flats; `∅` and `E`
/// are the implicit endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagOfFlats {
    pub chain: Vec<Subset>,
}

impl FlagOfFlats {
    pub fn new(chain: Vec<Subset>) -> FlagOfFlats {
        FlagOfFlats { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

pub fn build_lattice(m: &Matroid) -> Result<FlatLattice> {
    FlatLattice::build(m)
}

/// `χ_M(t) = Σ_F μ(∅, F) t^{rk M - rk F}`.
pub fn char_poly(m: &Matroid) -> Result<IntPoly> {
    Ok(FlatLattice::build(m)?.char_poly())
}

/// `χ_M(t) / (t - 1)`, for rank at least one.
pub fn reduced_char_poly(m: &Matroid) -> Result<IntPoly> {
    let chi = char_poly(m)?;
    if m.rank() == 0 {
        return Err(Error::EmptyMatroid);
    }
    chi.div_by_t_minus_one().ok_or(Error::NonzeroRemainder)
}

pub fn beta(m: &Matroid) -> Result<BigInt> {
    FlatLattice::build(m)?.beta()
}

pub fn descending_flags(m: &Matroid) -> Result<Vec<FlagOfFlats>> {
    if m.rank() == 0 {
        m.require_loopless()?;
        return Err(Error::EmptyMatroid);
    }
    Ok(FlatLattice::build(m)?.descending_flags())
}

pub fn flag_beta_product(m: &Matroid, flag: &FlagOfFlats) -> Result<BigInt> {
    FlatLattice::build(m)?.flag_beta_product(flag)
}
