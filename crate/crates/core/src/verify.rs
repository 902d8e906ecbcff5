//! Cross-checks between independent routes and exact polynomial identities.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{canonical_key, uniform, CanonicalKey, Matroid, Subset};
use crate::memo::Engine;
use crate::microlocal::{c_closed, c_flag_sum, check_identity_a, check_identity_b, eu_closed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Check {
    IdentityA,
    IdentityB,
    Routes,
    Multiplicativity,
    FunctionalEq,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::IdentityA,
        Check::IdentityB,
        Check::Routes,
        Check::Multiplicativity,
        Check::FunctionalEq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::IdentityA => "identityA",
            Check::IdentityB => "identityB",
            Check::Routes => "routes",
            Check::Multiplicativity => "multiplicativity",
            Check::FunctionalEq => "functionalEq",
        }
    }
}

/// Parses `all` or a comma list of check names.
pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            return Ok(Check::ALL.into_iter().collect());
        }
        out.insert(Check::from_str(part)?);
    }
    if out.is_empty() {
        return Err(Error::Parse("empty check list".into()));
    }
    Ok(out)
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// One disagreement: which check, what was compared, and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub key: CanonicalKey,
    pub check: Check,
    pub what: String,
    pub left: String,
    pub right: String,
}

struct Collector<'a> {
    key: &'a CanonicalKey,
    check: Check,
    failures: Vec<CheckFailure>,
}

impl Collector<'_> {
    fn expect_eq<T: PartialEq + ToString>(&mut self, what: &str, left: T, right: T) {
        if left != right {
            self.failures.push(CheckFailure {
                key: self.key.clone(),
                check: self.check,
                what: what.to_string(),
                left: left.to_string(),
                right: right.to_string(),
            });
        }
    }
}

/// Runs the requested checks on one loopless matroid. `Ok(vec![])` means all passed;
/// precondition errors (loops) are returned as `Err`.
pub fn verify_matroid(
    engine: &Engine,
    m: &Matroid,
    checks: &BTreeSet<Check>,
) -> Result<Vec<CheckFailure>> {
    m.require_loopless()?;
    let key = canonical_key(m);
    let mut failures = Vec::new();
    for &check in checks {
        let mut col = Collector {
            key: &key,
            check,
            failures: Vec::new(),
        };
        match check {
            Check::IdentityA if m.n() > 0 => {
                col.expect_eq("identity holds", check_identity_a(m)?, true)
            }
            Check::IdentityB if m.n() > 0 => {
                col.expect_eq("identity holds", check_identity_b(m)?, true)
            }
            Check::IdentityA | Check::IdentityB => {}
            Check::Routes => routes(engine, m, &mut col)?,
            Check::Multiplicativity => multiplicativity(engine, m, &mut col)?,
            Check::FunctionalEq => functional_eq(engine, m, &mut col)?,
        }
        failures.extend(col.failures);
    }
    Ok(failures)
}

fn routes(engine: &Engine, m: &Matroid, col: &mut Collector<'_>) -> Result<()> {
    let c = c_closed(m)?;
    col.expect_eq("c closed vs recursive", c.clone(), engine.c_recursive(m)?);
    if m.rank() > 0 {
        col.expect_eq("c closed vs flag sum", c, c_flag_sum(m)?);
    }
    col.expect_eq(
        "Eu closed vs recursive",
        eu_closed(m)?,
        engine.eu_recursive(m)?,
    );
    let mf = engine.m_linear_system(m)?;
    let solved = mf.get(Subset::EMPTY).cloned().unwrap_or_default();
    col.expect_eq("m closed vs linear system", engine.m_closed(m)?, solved);
    let residuals = engine.m_system_residuals(m, &mf)?;
    col.expect_eq(
        "linear system residuals vanish",
        residuals.iter().all(Zero::is_zero),
        true,
    );
    Ok(())
}

#[derive(Clone)]
struct Triple {
    c: BigInt,
    eu: BigInt,
    m: BigInt,
}

fn triple(engine: &Engine, m: &Matroid) -> Result<Triple> {
    Ok(Triple {
        c: c_closed(m)?,
        eu: eu_closed(m)?,
        m: engine.m_closed(m)?,
    })
}

fn compare_product(col: &mut Collector<'_>, label: &str, whole: &Triple, parts: &[Triple]) {
    let mut c = -BigInt::one();
    let mut eu = BigInt::one();
    let mut mm = BigInt::one();
    for p in parts {
        c = -(c * &p.c);
        eu *= &p.eu;
        mm *= &p.m;
    }
    // with k parts, c of the sum is (-1)^{k-1} times the product of the parts
    col.expect_eq(&format!("c over {label}"), whole.c.clone(), c);
    col.expect_eq(&format!("Eu over {label}"), whole.eu.clone(), eu);
    col.expect_eq(&format!("m over {label}"), whole.m.clone(), mm);
}

fn multiplicativity(engine: &Engine, m: &Matroid, col: &mut Collector<'_>) -> Result<()> {
    let base = triple(engine, m)?;
    let partners = [uniform(1, 1)?, uniform(1, 2)?, uniform(2, 3)?];
    for partner in &partners {
        if m.n() + partner.n() > crate::matroid::MAX_ELEMENTS {
            continue;
        }
        let sum = m.direct_sum(partner)?;
        let label = format!("sum with {}", canonical_key(partner));
        compare_product(
            col,
            &label,
            &triple(engine, &sum)?,
            &[base.clone(), triple(engine, partner)?],
        );
    }
    let components = m.connected_components()?;
    if components.len() > 1 {
        let parts = components
            .iter()
            .map(|p| triple(engine, p))
            .collect::<Result<Vec<_>>>()?;
        compare_product(col, "connected components", &base, &parts);
    }
    Ok(())
}

fn functional_eq(engine: &Engine, m: &Matroid, col: &mut Collector<'_>) -> Result<()> {
    let residual = engine.kl_functional_residual(m)?;
    col.expect_eq(
        "functional equation residual",
        residual.to_string(),
        "0".to_string(),
    );
    let p = engine.kl_poly(m)?;
    col.expect_eq("coefficients nonnegative", p.all_nonnegative(), true);
    if m.rank() > 0 {
        let degree = p.degree().unwrap_or(0);
        col.expect_eq("2 deg P < rank", 2 * degree < m.rank(), true);
    }
    Ok(())
}
