//! Euler obstructions, the constants `c_M`, microlocal multiplicities,
//! Chern–Mather coefficients and CSM flag weights.
//!
//! Each scalar invariant has at least two independent routes:
//!
//! | invariant | closed form | other routes |
//! |-----------|-------------|--------------|
//! | `c_M` | [`c_closed`]: `-2^d χ_M(1/2)` | [`c_flag_sum`] over descending flags, [`Engine::c_recursive`] |
//! | `Eu_M` | [`eu_closed`]: `χ_M(2)` | [`Engine::eu_recursive`]: `Σ_{F≠∅} c_{M^F} Eu_{M_F}` |
//! | `m_M` | [`Engine::m_closed`] | [`Engine::m_linear_system`], triangular solve over the lattice |

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{char_poly, reduced_char_poly, FlagOfFlats, FlatLattice};
use crate::matroid::{canonical_key, Matroid, Subset};
use crate::memo::Engine;
use crate::poly::IntPoly;

/// Integer values indexed by the flats of a matroid, in lattice order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FlatFunction {
    entries: Vec<(Subset, BigInt)>,
}

/// `F ↦ Eu_M(F) = Eu_{M_F}`.
pub type EulerObstructionFunction = FlatFunction;
/// `F ↦ m_M(F) = m_{M_F}`.
pub type MultiplicityFunction = FlatFunction;
/// `F ↦` coefficient of `y_F` in the Chern–Mather class.
pub type CMCoefficients = FlatFunction;

impl FlatFunction {
    pub fn new(entries: Vec<(Subset, BigInt)>) -> FlatFunction {
        FlatFunction { entries }
    }

    pub fn get(&self, f: Subset) -> Option<&BigInt> {
        self.entries.iter().find(|(g, _)| *g == f).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(Subset, BigInt)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Subset, BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Debug for FlatFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

/// Weights of the `k`-dimensional CSM cycle on the cones of `k`-step flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSMWeightTable {
    pub k: usize,
    pub weights: Vec<(FlagOfFlats, BigInt)>,
}

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

fn signed(value: BigInt, exponent: usize) -> BigInt {
    if exponent.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn to_integer(q: BigRational) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NonIntegerResult(q.to_string()))
    }
}

fn require_nonempty(m: &Matroid) -> Result<()> {
    m.require_loopless()?;
    if m.n() == 0 {
        return Err(Error::EmptyMatroid);
    }
    Ok(())
}

/// `c_M = -2^{rk M} χ_M(1/2)`, evaluated in exact rationals.
pub fn c_closed(m: &Matroid) -> Result<BigInt> {
    let chi = char_poly(m)?;
    let scaled = chi.eval_rational(&half()) * BigRational::from_integer(pow2(m.rank()));
    to_integer(-scaled)
}

/// `c_M = (-1)^{d-1} Σ_F β(M)[F]` over descending flags.
pub fn c_flag_sum(m: &Matroid) -> Result<BigInt> {
    let lattice = FlatLattice::build(m)?;
    if m.rank() == 0 {
        return Err(Error::EmptyMatroid);
    }
    let mut sum = BigInt::zero();
    for flag in lattice.descending_flags() {
        sum += lattice.flag_beta_product(&flag)?;
    }
    Ok(signed(sum, m.rank() - 1))
}

/// `Eu_M = χ_M(2)`.
pub fn eu_closed(m: &Matroid) -> Result<BigInt> {
    Ok(char_poly(m)?.eval(&BigInt::from(2)))
}

/// `F ↦ Eu_{M_F}`, evaluated on the contraction of each flat.
pub fn eu_function(m: &Matroid) -> Result<EulerObstructionFunction> {
    let lattice = FlatLattice::build(m)?;
    let entries = lattice
        .flats()
        .iter()
        .map(|&f| Ok((f, eu_closed(&m.contraction(f)?)?)))
        .collect::<Result<_>>()?;
    Ok(FlatFunction::new(entries))
}

/// `F ↦ 2^{cork F}`, after checking `Σ_{G ⊇ F} Eu_{M_G} = 2^{cork F}` for every flat.
pub fn chern_mather_coeffs(m: &Matroid) -> Result<CMCoefficients> {
    let eu = eu_function(m)?;
    let d = m.rank();
    let mut entries = Vec::with_capacity(eu.len());
    for &(f, _) in eu.iter() {
        let expected = pow2(d - m.rank_of(f));
        let got: BigInt = eu
            .iter()
            .filter(|(g, _)| f.is_subset(*g))
            .map(|(_, v)| v)
            .sum();
        if got != expected {
            return Err(Error::ProofIdentityViolated {
                flat: f,
                got: got.to_string(),
                expected: expected.to_string(),
            });
        }
        entries.push((f, expected));
    }
    Ok(FlatFunction::new(entries))
}

/// `w(σ_F) = (-1)^{d-1-k} β(M)[F]` for every `k`-step flag of nonempty proper flats.
pub fn csm_weights(m: &Matroid, k: usize) -> Result<CSMWeightTable> {
    let lattice = FlatLattice::build(m)?;
    let d = m.rank();
    if k >= d {
        return Err(Error::KOutOfRange { k, rank: d });
    }
    let weights = lattice
        .flags_of_length(k)
        .into_iter()
        .map(|flag| {
            let w = signed(lattice.flag_beta_product(&flag)?, d - 1 - k);
            Ok((flag, w))
        })
        .collect::<Result<_>>()?;
    Ok(CSMWeightTable { k, weights })
}

/// `χ̄_M(t) = Σ_{0 ∉ F} χ_{M^F}(t) (-t)^{rk M_F - 1} β(M_F)`, checked as a polynomial identity.
pub fn check_identity_a(m: &Matroid) -> Result<bool> {
    require_nonempty(m)?;
    let lhs = reduced_char_poly(m)?;
    let lattice = FlatLattice::build(m)?;
    let d = m.rank();
    let mut rhs = IntPoly::zero();
    for (i, &f) in lattice.flats().iter().enumerate() {
        if f.contains(0) {
            continue;
        }
        // E contains 0, so every contraction here has rank >= 1
        assert_ne!(i, lattice.top(), "top flat avoids element 0");
        let k = d - lattice.rank_at(i) - 1;
        let beta = crate::lattice::beta(&m.contraction(f)?)?;
        let term = char_poly(&m.localization(f)?)?
            .shift(k)
            .scale(&signed(beta, k));
        rhs = &rhs + &term;
    }
    Ok(lhs == rhs)
}

/// `Σ_F t^{rk F} χ_{M^F}(1/t) χ_{M_F}(t) = 0`, checked as a polynomial identity.
pub fn check_identity_b(m: &Matroid) -> Result<bool> {
    require_nonempty(m)?;
    let lattice = FlatLattice::build(m)?;
    let mut total = IntPoly::zero();
    for (i, &f) in lattice.flats().iter().enumerate() {
        let local = char_poly(&m.localization(f)?)?.reversed(lattice.rank_at(i));
        let quotient = char_poly(&m.contraction(f)?)?;
        total = &total + &(&local * &quotient);
    }
    Ok(total.is_zero())
}

/// Every value of the Euler obstruction function is positive.
pub fn eu_everywhere_positive(m: &Matroid) -> Result<bool> {
    Ok(eu_function(m)?.iter().all(|(_, v)| v.is_positive()))
}

/// Loopless with a single basis equal to the ground set.
pub fn is_boolean(m: &Matroid) -> Result<bool> {
    m.require_loopless()?;
    Ok(m.is_boolean())
}

impl Engine {
    /// `c_M = (-1)^{d-1} β(M) + Σ_{0 ∉ F ≠ ∅} (-1)^{cork F} c_{M^F} β(M_F)`, `c_∅ = -1`.
    pub fn c_recursive(&self, m: &Matroid) -> Result<BigInt> {
        m.require_loopless()?;
        if m.n() == 0 {
            return Ok(BigInt::from(-1));
        }
        let key = canonical_key(m);
        if let Some(c) = self.c.get(&key) {
            return Ok(c);
        }
        let lattice = FlatLattice::build(m)?;
        let d = m.rank();
        let top = lattice.top();
        let mut c = signed(lattice.interval_beta(0, top)?, d - 1);
        for i in 1..top {
            let f = lattice.flat(i);
            if f.contains(0) {
                continue;
            }
            let beta = lattice.interval_beta(i, top)?;
            if beta.is_zero() {
                continue;
            }
            let local = self.c_recursive(&m.localization(f)?)?;
            c += signed(local * beta, d - lattice.rank_at(i));
        }
        Ok(self.c.insert(key, c))
    }

    /// `Eu_M = Σ_{F ≠ ∅} c_{M^F} Eu_{M_F}` with `Eu_∅ = 1` and `c` from [`c_closed`].
    pub fn eu_recursive(&self, m: &Matroid) -> Result<BigInt> {
        m.require_loopless()?;
        if m.n() == 0 {
            return Ok(BigInt::one());
        }
        let key = canonical_key(m);
        if let Some(eu) = self.eu.get(&key) {
            return Ok(eu);
        }
        let lattice = FlatLattice::build(m)?;
        let mut eu = BigInt::zero();
        for &f in &lattice.flats()[1..] {
            let c = c_closed(&m.localization(f)?)?;
            eu += c * self.eu_recursive(&m.contraction(f)?)?;
        }
        Ok(self.eu.insert(key, eu))
    }

    /// `m_M = (-1)^d Σ_F 2^{rk F} χ_{M^F}(1/2) P_{M_F}(1)`.
    pub fn m_closed(&self, m: &Matroid) -> Result<BigInt> {
        let lattice = FlatLattice::build(m)?;
        let mut sum = BigRational::zero();
        for (i, &f) in lattice.flats().iter().enumerate() {
            let chi = char_poly(&m.localization(f)?)?;
            let weight =
                chi.eval_rational(&half()) * BigRational::from_integer(pow2(lattice.rank_at(i)));
            let p = self.kl_at_one(&m.contraction(f)?)?;
            sum += weight * BigRational::from_integer(p);
        }
        Ok(signed(to_integer(sum)?, m.rank()))
    }

    /// Solves `(-1)^{rk M} P_{M_G}(1) = Σ_{F ⊇ G} m_M(F) (-1)^{rk F} Eu_{M^F_G}` for
    /// every flat `G`, from the top flat down. The diagonal coefficient is `(-1)^{rk G}`.
    pub fn m_linear_system(&self, m: &Matroid) -> Result<MultiplicityFunction> {
        let lattice = FlatLattice::build(m)?;
        let d = m.rank();
        let len = lattice.len();
        let mut values: Vec<BigInt> = vec![BigInt::zero(); len];
        for g in (0..len).rev() {
            let row = lattice.mobius_row(g);
            let mut rest = BigInt::zero();
            for f in g + 1..len {
                if row[f].is_none() {
                    continue;
                }
                let eu = lattice
                    .char_poly_from_row(&row, g, f)
                    .eval(&BigInt::from(2));
                rest += signed(&values[f] * eu, lattice.rank_at(f));
            }
            let p = self.kl_at_one(&m.contraction(lattice.flat(g))?)?;
            values[g] = signed(signed(p, d) - rest, lattice.rank_at(g));
        }
        Ok(FlatFunction::new(
            lattice.flats().iter().copied().zip(values).collect(),
        ))
    }

    /// `(-1)^{rk M} P_{M_G}(1) - Σ_{F ⊇ G} m(F) (-1)^{rk F} Eu_{M^F_G}` for every flat `G`,
    /// with `Eu` evaluated on explicit minors.
    pub fn m_system_residuals(
        &self,
        m: &Matroid,
        mf: &MultiplicityFunction,
    ) -> Result<Vec<BigInt>> {
        let lattice = FlatLattice::build(m)?;
        let d = m.rank();
        let mut residuals = Vec::with_capacity(lattice.len());
        for &g in lattice.flats() {
            let mut value = signed(self.kl_at_one(&m.contraction(g)?)?, d);
            for &(f, ref mv) in mf.iter() {
                if g.is_subset(f) {
                    let eu = eu_closed(&m.minor(g, f)?)?;
                    value -= signed(mv * eu, m.rank_of(f));
                }
            }
            residuals.push(value);
        }
        Ok(residuals)
    }

    /// The characteristic cycle is irreducible: `m_M(F) = 0` for every flat `F ≠ E`.
    pub fn cc_irreducible(&self, m: &Matroid) -> Result<bool> {
        let mf = self.m_linear_system(m)?;
        let top = m.ground_set();
        let irreducible = mf.iter().all(|(f, v)| *f == top || v.is_zero());
        Ok(irreducible)
    }
}
