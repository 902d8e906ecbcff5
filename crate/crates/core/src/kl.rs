//! Kazhdan–Lusztig polynomials of matroids.
//!
//! `P_∅ = 1`, and for `rk M = r >= 1`, `deg P_M < r / 2` together with
//! `t^r P_M(1/t) = Σ_{F ∈ L(M)} χ_{M^F}(t) P_{M_F}(t)`.
//! Moving the `F = ∅` term to the left gives `t^r P_M(1/t) - P_M(t) = R(t)` with
//! `R = Σ_{F ≠ ∅} χ_{M^F} P_{M_F}`. The two sides of that difference occupy
//! disjoint degree ranges, so `p_i = [t^{r-i}] R` for `i < r/2`, and the low half
//! of `R` must equal `-P_M` (with a vanishing middle coefficient when `r` is even).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::{canonical_key, Matroid};
use crate::memo::Engine;
use crate::poly::IntPoly;

impl Engine {
    pub fn kl_poly(&self, m: &Matroid) -> Result<IntPoly> {
        m.require_loopless()?;
        if m.rank() == 0 {
            return Ok(IntPoly::one());
        }
        let key = canonical_key(m);
        if let Some(p) = self.kl.get(&key) {
            return Ok(p);
        }
        let p = self.solve_kl(m)?;
        Ok(self.kl.insert(key, p))
    }

    fn solve_kl(&self, m: &Matroid) -> Result<IntPoly> {
        let lattice = FlatLattice::build(m)?;
        let r = m.rank();
        let mut rest = IntPoly::zero();
        for i in 1..lattice.len() {
            let chi = lattice.interval_char_poly(0, i);
            let p = self.kl_poly(&m.contraction(lattice.flat(i))?)?;
            rest = &rest + &(&chi * &p);
        }
        let count = r.div_ceil(2);
        let p = IntPoly::new((0..count).map(|i| rest.coeff(r - i)).collect());
        for i in 0..count {
            if rest.coeff(i) != -p.coeff(i) {
                return Err(Error::RecursionInconsistent { degree: i });
            }
        }
        if r.is_multiple_of(2) && !rest.coeff(r / 2).is_zero() {
            return Err(Error::RecursionInconsistent { degree: r / 2 });
        }
        Ok(p)
    }

    pub fn kl_at_one(&self, m: &Matroid) -> Result<BigInt> {
        Ok(self.kl_poly(m)?.eval(&BigInt::from(1)))
    }

    /// `t^r P_M(1/t) - Σ_F χ_{M^F}(t) P_{M_F}(t)`; zero for a correct `P`.
    pub fn kl_functional_residual(&self, m: &Matroid) -> Result<IntPoly> {
        let lattice = FlatLattice::build(m)?;
        let p = self.kl_poly(m)?;
        let mut residual = p.reversed(m.rank());
        for i in 0..lattice.len() {
            let chi = lattice.interval_char_poly(0, i);
            let pf = self.kl_poly(&m.contraction(lattice.flat(i))?)?;
            residual = &residual - &(&chi * &pf);
        }
        Ok(residual)
    }
}

/// `P_M(t)`, computed with a private memo store.
pub fn kl_poly(m: &Matroid) -> Result<IntPoly> {
    Engine::new().kl_poly(m)
}

/// `P_M(1)`.
pub fn kl_at_one(m: &Matroid) -> Result<BigInt> {
    Engine::new().kl_at_one(m)
}
