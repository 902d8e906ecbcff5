//! Independent oracles built straight from the rank function, sharing no code
//! with the lattice, KL or canonicalization modules of the library.

#![allow(dead_code)]

use std::collections::HashMap;

use matroid_cc::{EnumerateOptions, Matroid, Subset};

/// `max |B ∩ S|` over bases.
pub fn rank(m: &Matroid, s: u32) -> usize {
    m.bases()
        .iter()
        .map(|b| (b.bits() & s).count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn subsets_of(s: u32) -> impl Iterator<Item = u32> {
    // all submasks, including 0 and s
    let mut next = Some(s);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & s) };
        Some(cur)
    })
}

/// Flats by brute force: subsets where adding any element raises the rank.
pub fn flats(m: &Matroid) -> Vec<u32> {
    let full = m.ground_set().bits();
    subsets_of(full)
        .filter(|&s| {
            let r = rank(m, s);
            (0..m.n()).all(|e| s >> e & 1 == 1 || rank(m, s | 1 << e) > r)
        })
        .collect()
}

/// Polynomials as ascending `i128` coefficient vectors.
pub type Poly = Vec<i128>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// Characteristic polynomial of the minor between flats `lo ⊆ hi`, by the
/// subset expansion `Σ_S (-1)^{|S|} t^{r - rk S}`.
pub fn chi(m: &Matroid, lo: u32, hi: u32) -> Poly {
    let base = rank(m, lo);
    let r = rank(m, hi) - base;
    let mut p = vec![0i128; r + 1];
    for s in subsets_of(hi & !lo) {
        let rk = rank(m, s | lo) - base;
        let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
        p[r - rk] += sign;
    }
    trim(p)
}

pub fn eval(p: &Poly, t: i128) -> i128 {
    p.iter().rev().fold(0, |acc, c| acc * t + c)
}

/// `Σ_S (-1)^{|S|} 2^{rk S}` over subsets of a flat `F`, which is `2^{rk F} χ_{M^F}(1/2)`.
pub fn scaled_chi_half(m: &Matroid, f: u32) -> i128 {
    subsets_of(f)
        .map(|s| {
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            sign * (1i128 << rank(m, s))
        })
        .sum()
}

/// KL polynomial of the interval `[lo, hi]` of the lattice of flats.
pub struct KlOracle<'a> {
    m: &'a Matroid,
    flats: Vec<u32>,
    memo: HashMap<(u32, u32), Poly>,
}

impl<'a> KlOracle<'a> {
    pub fn new(m: &'a Matroid) -> Self {
        KlOracle {
            m,
            flats: flats(m),
            memo: HashMap::new(),
        }
    }

    pub fn interval(&mut self, lo: u32, hi: u32) -> Poly {
        if let Some(p) = self.memo.get(&(lo, hi)) {
            return p.clone();
        }
        let r = rank(self.m, hi) - rank(self.m, lo);
        let p = if r == 0 {
            vec![1]
        } else {
            let above: Vec<u32> = self
                .flats
                .iter()
                .copied()
                .filter(|&g| g != lo && g & lo == lo && g & hi == g)
                .collect();
            let mut rest: Poly = vec![];
            for g in above {
                let term = mul(&chi(self.m, lo, g), &self.interval(g, hi));
                rest = add(&rest, &term);
            }
            let p: Poly = (0..r.div_ceil(2))
                .map(|i| rest.get(r - i).copied().unwrap_or(0))
                .collect();
            trim(p)
        };
        self.memo.insert((lo, hi), p.clone());
        p
    }

    pub fn full(&mut self) -> Poly {
        let top = self.m.ground_set().bits();
        self.interval(0, top)
    }
}

pub fn eu(m: &Matroid) -> i128 {
    eval(&chi(m, 0, m.ground_set().bits()), 2)
}

pub fn c(m: &Matroid) -> i128 {
    -scaled_chi_half(m, m.ground_set().bits())
}

/// `(-1)^d Σ_F 2^{rk F} χ_{M^F}(1/2) P_{M_F}(1)`.
pub fn m_value(m: &Matroid) -> i128 {
    let mut kl = KlOracle::new(m);
    let top = m.ground_set().bits();
    let total: i128 = flats(m)
        .into_iter()
        .map(|f| {
            let p1: i128 = kl.interval(f, top).iter().sum();
            scaled_chi_half(m, f) * p1
        })
        .sum();
    if m.rank().is_multiple_of(2) {
        total
    } else {
        -total
    }
}

/// Smallest basis indicator over all relabelings, by exhaustive permutation.
pub fn brute_key(m: &Matroid) -> (usize, usize, Vec<bool>) {
    let n = m.n();
    let r = m.rank();
    let subsets: Vec<u32> = (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == r)
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        // indicator of the relabeled matroid: S is a basis iff perm^{-1}(S) is
        let code: Vec<bool> = subsets
            .iter()
            .map(|&s| {
                let pre = (0..n)
                    .filter(|&e| s >> perm[e] & 1 == 1)
                    .fold(0u32, |a, e| a | 1 << e);
                m.is_basis(Subset(pre))
            })
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (n, r, best.unwrap_or_default())
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Every basis family on `n` elements satisfying the exchange axiom.
pub fn all_matroids_brute(n: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    for r in 0..=n {
        let subsets: Vec<Subset> = (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == r)
            .map(Subset)
            .collect();
        let k = subsets.len();
        for mask in 1u64..1 << k {
            let bases = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| subsets[i]);
            if let Ok(m) = Matroid::from_bases(n, bases) {
                out.push(m);
            }
        }
    }
    out
}

pub fn loopless(n: usize) -> Vec<Matroid> {
    matroid_cc::enumerate_matroids(n, EnumerateOptions::default())
        .unwrap()
        .collect()
}

pub fn loopless_up_to(n: usize) -> Vec<Matroid> {
    (1..=n).flat_map(loopless).collect()
}

pub fn to_i128(v: &num_bigint::BigInt) -> i128 {
    i128::try_from(v).expect("value fits in i128")
}

pub fn poly_i128(p: &matroid_cc::IntPoly) -> Poly {
    p.coeffs().iter().map(to_i128).collect()
}
