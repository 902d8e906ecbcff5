//! Serializable per-matroid invariant records.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::input::MatroidJson;
use crate::lattice::char_poly;
use crate::matroid::{canonical_key, CanonicalKey, Matroid, Subset};
use crate::memo::Engine;
use crate::microlocal::{chern_mather_coeffs, csm_weights, eu_closed, eu_function, FlatFunction};
use crate::poly::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    CharPoly,
    Beta,
    Kl,
    Eu,
    C,
    M,
    Cm,
    Csm,
}

impl Invariant {
    pub const ALL: [Invariant; 8] = [
        Invariant::CharPoly,
        Invariant::Beta,
        Invariant::Kl,
        Invariant::Eu,
        Invariant::C,
        Invariant::M,
        Invariant::Cm,
        Invariant::Csm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::CharPoly => "charpoly",
            Invariant::Beta => "beta",
            Invariant::Kl => "kl",
            Invariant::Eu => "eu",
            Invariant::C => "c",
            Invariant::M => "m",
            Invariant::Cm => "cm",
            Invariant::Csm => "csm",
        }
    }
}

/// A subset of the invariants, parsed from `all` or a comma list such as `m,kl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet(BTreeSet<Invariant>);

impl InvariantSet {
    pub fn all() -> InvariantSet {
        InvariantSet(Invariant::ALL.into_iter().collect())
    }

    pub fn only(items: &[Invariant]) -> InvariantSet {
        InvariantSet(items.iter().copied().collect())
    }

    pub fn insert(&mut self, i: Invariant) {
        self.0.insert(i);
    }

    pub fn contains(&self, i: Invariant) -> bool {
        self.0.contains(&i)
    }
}

impl FromStr for InvariantSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<InvariantSet> {
        let mut set = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                return Ok(InvariantSet::all());
            }
            let found = Invariant::ALL
                .into_iter()
                .find(|i| i.name().eq_ignore_ascii_case(part))
                .ok_or_else(|| Error::Parse(format!("unknown invariant {part:?}")))?;
            set.insert(found);
        }
        if set.is_empty() {
            return Err(Error::Parse("empty invariant list".into()));
        }
        Ok(InvariantSet(set))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecordFlags {
    pub eu_everywhere_positive: bool,
    pub cc_irreducible: bool,
    pub has_coloop: bool,
    pub simplification_has_coloop: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsmFlagWeight {
    pub flag: Vec<Vec<usize>>,
    #[serde(with = "decimal")]
    pub weight: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsmLevel {
    pub k: usize,
    pub weights: Vec<CsmFlagWeight>,
}

/// Everything computed for one matroid. Absent fields were not requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantRecord {
    pub key: CanonicalKey,
    pub n: usize,
    pub rank: usize,
    pub matroid: MatroidJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "decimal_opt")]
    pub beta: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kl_poly: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "decimal_opt")]
    pub eu: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eu_function: Option<FlatFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "decimal_opt")]
    pub c: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_function: Option<FlatFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "decimal_opt")]
    pub m: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm_coeffs: Option<FlatFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csm_weights: Option<Vec<CsmLevel>>,
    pub flags: RecordFlags,
}

impl InvariantRecord {
    /// Computes the requested invariants. Flags are always filled in.
    pub fn compute(engine: &Engine, m: &Matroid, which: &InvariantSet) -> Result<InvariantRecord> {
        m.require_loopless()?;
        let want = |i| which.contains(i);
        let m_function = engine.m_linear_system(m)?;
        let eu_fn = eu_function(m)?;
        let top = m.ground_set();
        let flags = RecordFlags {
            eu_everywhere_positive: eu_fn.iter().all(|(_, v)| *v > BigInt::from(0)),
            cc_irreducible: m_function
                .iter()
                .all(|(f, v)| *f == top || *v == BigInt::from(0)),
            has_coloop: !m.coloops().is_empty(),
            simplification_has_coloop: !m.simplify().coloops().is_empty(),
        };
        let beta = if want(Invariant::Beta) && m.n() > 0 {
            Some(crate::lattice::beta(m)?)
        } else {
            None
        };
        let csm = if want(Invariant::Csm) {
            let levels = (0..m.rank())
                .map(|k| {
                    let table = csm_weights(m, k)?;
                    Ok(CsmLevel {
                        k,
                        weights: table
                            .weights
                            .into_iter()
                            .map(|(flag, weight)| CsmFlagWeight {
                                flag: flag.chain.iter().map(|f| f.to_vec()).collect(),
                                weight,
                            })
                            .collect(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Some(levels)
        } else {
            None
        };
        Ok(InvariantRecord {
            key: canonical_key(m),
            n: m.n(),
            rank: m.rank(),
            matroid: MatroidJson::from(m),
            char_poly: if want(Invariant::CharPoly) {
                Some(char_poly(m)?)
            } else {
                None
            },
            beta,
            kl_poly: if want(Invariant::Kl) {
                Some(engine.kl_poly(m)?)
            } else {
                None
            },
            eu: if want(Invariant::Eu) {
                Some(eu_closed(m)?)
            } else {
                None
            },
            eu_function: want(Invariant::Eu).then_some(eu_fn),
            c: if want(Invariant::C) {
                Some(engine.c_recursive(m)?)
            } else {
                None
            },
            m: if want(Invariant::M) {
                m_function.get(Subset::EMPTY).cloned()
            } else {
                None
            },
            m_function: want(Invariant::M).then_some(m_function),
            cm_coeffs: if want(Invariant::Cm) {
                Some(chern_mather_coeffs(m)?)
            } else {
                None
            },
            csm_weights: csm,
            flags,
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub const CSV_HEADER: &'static str =
        "key,n,rank,charPoly,beta,klPoly,eu,c,m,euEverywherePositive,ccIrreducible,hasColoop,simplificationHasColoop";

    /// Scalar columns only; polynomials as space-separated ascending coefficients.
    pub fn to_csv_row(&self) -> String {
        let poly = |p: &Option<IntPoly>| {
            p.as_ref()
                .map(|p| {
                    p.coeffs()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default()
        };
        let int = |v: &Option<BigInt>| v.as_ref().map(ToString::to_string).unwrap_or_default();
        let f = &self.flags;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.key,
            self.n,
            self.rank,
            poly(&self.char_poly),
            int(&self.beta),
            poly(&self.kl_poly),
            int(&self.eu),
            int(&self.c),
            int(&self.m),
            f.eu_everywhere_positive,
            f.cc_irreducible,
            f.has_coloop,
            f.simplification_has_coloop
        )
    }
}

/// Flat functions serialize as an object from `"{0,1}"` to a decimal string, in lattice order.
impl Serialize for FlatFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.len()))?;
        for (f, v) in self.iter() {
            map.serialize_entry(&f.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for FlatFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct FlatVisitor;

        impl<'de> Visitor<'de> for FlatVisitor {
            type Value = FlatFunction;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from flats to decimal integers")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<FlatFunction, A::Error> {
                use serde::de::Error as _;
                let mut entries = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let flat = k.parse::<Subset>().map_err(A::Error::custom)?;
                    let value = v.parse::<BigInt>().map_err(A::Error::custom)?;
                    entries.push((flat, value));
                }
                Ok(FlatFunction::new(entries))
            }
        }

        deserializer.deserialize_map(FlatVisitor)
    }
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

mod decimal_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}
