//! Dimension profiles over the Bockstein basis.
//!
//! A profile assigns a value in ℕ ∪ {∞} to Q and to each of Z_(p), Z/p and
//! Z/p^∞. Treating a profile as the dimension function of a Bockstein space,
//! the dimension with respect to G is the supremum of the profile over σ(G).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{sigma_abelian, AbelianGroup};
use crate::basis::{BocksteinBasis, BocksteinGroup};
use crate::error::Error;
use crate::nilpotent::{sigma_nilpotent, NilpotentGroupDesc};
use crate::primes::{Prime, PrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn succ(self) -> ExtNat {
        match self {
            ExtNat::Fin(n) => ExtNat::Fin(n + 1),
            ExtNat::Inf => ExtNat::Inf,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Fin(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(n) => s.serialize_u64(*n),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Word(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(ExtNat::Fin(n)),
            Repr::Word(w) if w == "inf" => Ok(ExtNat::Inf),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a natural number or \"inf\", got {w:?}"
            ))),
        }
    }
}

/// A prime-indexed family of values: `default` everywhere except `overrides`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub default: ExtNat,
    #[serde(default)]
    pub overrides: BTreeMap<Prime, ExtNat>,
}

impl Default for ExtNat {
    fn default() -> Self {
        ExtNat::ZERO
    }
}

impl Family {
    pub fn constant(value: ExtNat) -> Family {
        Family { default: value, overrides: BTreeMap::new() }
    }

    pub fn with(mut self, p: Prime, value: ExtNat) -> Family {
        self.overrides.insert(p, value);
        self
    }

    pub fn at(&self, p: Prime) -> ExtNat {
        self.overrides.get(&p).copied().unwrap_or(self.default)
    }

    /// Supremum over a prime set; `None` for the empty set.
    pub fn sup_over(&self, s: &PrimeSet) -> Option<ExtNat> {
        let inside = self.overrides.iter().filter(|(p, _)| s.contains(**p)).map(|(_, v)| *v);
        match s {
            PrimeSet::Finite(ps) => ps.iter().map(|&p| self.at(p)).max(),
            // a cofinite set always contains primes without an override
            PrimeSet::Cofinite(_) => Some(inside.fold(self.default, ExtNat::max)),
        }
    }

    fn values(&self) -> impl Iterator<Item = ExtNat> + '_ {
        std::iter::once(self.default).chain(self.overrides.values().copied())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionProfile {
    pub q: ExtNat,
    pub zp: Family,
    pub zpinf: Family,
    pub loc: Family,
}

impl DimensionProfile {
    pub fn at(&self, h: BocksteinGroup) -> ExtNat {
        match h {
            BocksteinGroup::Q => self.q,
            BocksteinGroup::Cyclic(p) => self.zp.at(p),
            BocksteinGroup::Pruefer(p) => self.zpinf.at(p),
            BocksteinGroup::Localized(p) => self.loc.at(p),
        }
    }

    /// Primes carrying an override in some family.
    pub fn mentioned_primes(&self) -> BTreeSet<Prime> {
        [&self.zp, &self.zpinf, &self.loc]
            .iter()
            .flat_map(|f| f.overrides.keys().copied())
            .collect()
    }

    fn values(&self) -> impl Iterator<Item = ExtNat> + '_ {
        std::iter::once(self.q)
            .chain(self.zp.values())
            .chain(self.zpinf.values())
            .chain(self.loc.values())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R0,
    R1,
    R2,
    R3,
    R4,
}

/// The rule set checked by [`validate_profile`], with the inequality each
/// rule enforces (D is the profile, p any prime).
pub const RULES: &[(Rule, &str)] = &[
    (Rule::R0, "either every value is 0 or every value is >= 1"),
    (Rule::R1, "D(Z/p^inf) <= D(Z/p) <= D(Z/p^inf) + 1"),
    (Rule::R2, "max(D(Q), D(Z/p)) <= D(Z_(p))"),
    (Rule::R3, "D(Z_(p)) <= max(D(Q), D(Z/p^inf) + 1)"),
    (Rule::R4, "if D(Z/p^inf) > D(Q) then D(Z_(p)) = D(Z/p^inf) + 1"),
];

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Where a per-prime rule failed: an overridden prime, or every prime that
/// only sees the family defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Site {
    Global,
    Prime(Prime),
    Default,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub site: Site,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.site {
            Site::Global => write!(f, "{}: {}", self.rule, self.message),
            Site::Prime(p) => write!(f, "{} at p={p}: {}", self.rule, self.message),
            Site::Default => write!(f, "{} at default primes: {}", self.rule, self.message),
        }
    }
}

/// Check rules R0 to R4. Only overridden primes and one generic prime need
/// checking, since every other prime sees the same values as the generic one.
pub fn validate_profile(d: &DimensionProfile) -> Vec<Violation> {
    let mut out = Vec::new();
    let zero = d.values().any(|v| v == ExtNat::ZERO);
    let positive = d.values().any(|v| v > ExtNat::ZERO);
    if zero && positive {
        out.push(Violation {
            rule: Rule::R0,
            site: Site::Global,
            message: "profile mixes 0 with positive values".into(),
        });
    }
    let mentioned = d.mentioned_primes();
    let generic = Prime::first_outside(&mentioned);
    let sites = mentioned
        .iter()
        .map(|&p| (p, Site::Prime(p)))
        .chain(std::iter::once((generic, Site::Default)));
    for (p, site) in sites {
        let (q, zp, zpinf, loc) = (d.q, d.zp.at(p), d.zpinf.at(p), d.loc.at(p));
        let mut flag = |rule: Rule, message: String| out.push(Violation { rule, site, message });
        if !(zpinf <= zp && zp <= zpinf.succ()) {
            flag(Rule::R1, format!("expected zpinf <= zp <= zpinf+1, got zp={zp}, zpinf={zpinf}"));
        }
        if q.max(zp) > loc {
            flag(Rule::R2, format!("expected loc >= {}, got loc={loc}", q.max(zp)));
        }
        let cap = q.max(zpinf.succ());
        if loc > cap {
            flag(Rule::R3, format!("expected loc <= {cap}, got loc={loc}"));
        }
        if zpinf > q && loc != zpinf.succ() {
            flag(Rule::R4, format!("expected loc={}", zpinf.succ()));
        }
    }
    out
}

/// Supremum of the profile over a basis; 0 for the empty basis.
pub fn sup_over_basis(d: &DimensionProfile, b: &BocksteinBasis) -> ExtNat {
    let q = b.has_q.then_some(d.q);
    [q, d.loc.sup_over(&b.loc), d.zp.sup_over(&b.zp), d.zpinf.sup_over(&b.zpinf)]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(ExtNat::ZERO)
}

pub fn dim_abelian(d: &DimensionProfile, g: &AbelianGroup) -> ExtNat {
    sup_over_basis(d, &sigma_abelian(g))
}

pub fn dim_nilpotent_le1(d: &DimensionProfile, g: &NilpotentGroupDesc) -> Result<bool, Error> {
    Ok(sup_over_basis(d, &sigma_nilpotent(g)?) <= ExtNat::Fin(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianAtom;
    use crate::catalog;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn n(v: u64) -> ExtNat {
        ExtNat::Fin(v)
    }

    fn constant(q: u64, zp: u64, zpinf: u64, loc: u64) -> DimensionProfile {
        DimensionProfile {
            q: n(q),
            zp: Family::constant(n(zp)),
            zpinf: Family::constant(n(zpinf)),
            loc: Family::constant(n(loc)),
        }
    }

    fn r4_example() -> DimensionProfile {
        let mut d = constant(1, 1, 1, 1);
        d.zpinf = d.zpinf.with(p(2), n(2));
        d.zp = d.zp.with(p(2), n(2));
        d.loc = d.loc.with(p(2), n(2));
        d
    }

    #[test]
    fn ext_nat_order_and_format() {
        assert!(n(1_000_000) < ExtNat::Inf);
        assert_eq!(ExtNat::Inf.succ(), ExtNat::Inf);
        assert_eq!(n(2).succ(), n(3));
        assert_eq!(ExtNat::Inf.to_string(), "inf");
        assert_eq!(serde_json::to_string(&ExtNat::Inf).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<ExtNat>("4").unwrap(), n(4));
        assert!(serde_json::from_str::<ExtNat>("\"infinity\"").is_err());
    }

    #[test]
    fn profile_json_round_trip() {
        let text = r#"{"q":1,"zp":{"default":1,"overrides":{"2":2}},"zpinf":{"default":1,"overrides":{"2":2}},"loc":{"default":1,"overrides":{"2":3}}}"#;
        let d: DimensionProfile = serde_json::from_str(text).unwrap();
        assert_eq!(d.loc.at(p(2)), n(3));
        assert_eq!(d.loc.at(p(3)), n(1));
        assert_eq!(serde_json::to_string(&d).unwrap(), text);
        assert!(validate_profile(&d).is_empty());
        assert!(serde_json::from_str::<DimensionProfile>(
            r#"{"q":1,"zp":{"default":1,"overrides":{"4":2}},"zpinf":{"default":1},"loc":{"default":1}}"#
        )
        .is_err());
    }

    #[test]
    fn validation_examples() {
        assert!(validate_profile(&constant(0, 0, 0, 0)).is_empty());
        assert!(validate_profile(&constant(1, 1, 1, 1)).is_empty());

        let v = validate_profile(&r4_example());
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "R4 at p=2: expected loc=3");

        let mut d = constant(0, 0, 0, 0);
        d.zp = d.zp.with(p(2), n(1));
        assert!(validate_profile(&d).iter().any(|v| v.rule == Rule::R0));

        let mut d = constant(1, 1, 1, 1);
        d.zp = d.zp.with(p(3), n(3));
        assert!(validate_profile(&d).iter().any(|v| v.rule == Rule::R1 && v.site == Site::Prime(p(3))));

        let d = constant(1, 1, 1, 3);
        let v = validate_profile(&d);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "R3 at default primes: expected loc <= 2, got loc=3");
    }

    #[test]
    fn infinite_values() {
        let d = constant(1, 1, 1, 1);
        let mut inf = d.clone();
        inf.zpinf = inf.zpinf.with(p(5), ExtNat::Inf);
        inf.zp = inf.zp.with(p(5), ExtNat::Inf);
        inf.loc = inf.loc.with(p(5), ExtNat::Inf);
        assert!(validate_profile(&inf).is_empty());
        let z = AbelianGroup::atom(AbelianAtom::Z).unwrap();
        assert_eq!(dim_abelian(&inf, &z), ExtNat::Inf);
        assert_eq!(dim_abelian(&inf, &AbelianGroup::cyclic(6).unwrap()), n(1));
    }

    #[test]
    fn dim_examples() {
        let mut d = constant(1, 1, 1, 1);
        d.zpinf = d.zpinf.with(p(3), n(2));
        d.zp = d.zp.with(p(3), n(2));
        d.loc = d.loc.with(p(3), n(3));
        assert!(validate_profile(&d).is_empty());
        let pr3 = AbelianGroup::atom(AbelianAtom::Pruefer(p(3))).unwrap();
        assert_eq!(dim_abelian(&d, &pr3), n(2));
        assert_eq!(dim_abelian(&d, &AbelianGroup::trivial()), n(0));
        let z = AbelianGroup::atom(AbelianAtom::Z).unwrap();
        assert_eq!(dim_abelian(&d, &z), n(3));
        assert_eq!(dim_abelian(&d, &AbelianGroup::cyclic(12).unwrap()), n(2));
        assert_eq!(dim_abelian(&d, &AbelianGroup::cyclic(4).unwrap()), n(1));
    }

    #[test]
    fn le1_examples() {
        let ones = constant(1, 1, 1, 1);
        let ut3z = catalog::build("heisenberg_ring(Z)").unwrap().value;
        assert!(dim_nilpotent_le1(&ones, &ut3z).unwrap());

        let mut two = constant(1, 1, 1, 1);
        two.zp = two.zp.with(p(2), n(2));
        let ut3_2 = catalog::build("ut3_mod(2,1)").unwrap().value;
        assert!(!dim_nilpotent_le1(&two, &ut3_2).unwrap());

        let trivial = NilpotentGroupDesc::Abelian(AbelianGroup::trivial());
        assert!(dim_nilpotent_le1(&two, &trivial).unwrap());
    }

    #[test]
    fn cofinite_sup_skips_excluded_overrides() {
        let f = Family::constant(n(1)).with(p(2), n(5)).with(p(3), n(2));
        assert_eq!(f.sup_over(&PrimeSet::all_except([p(2)])), Some(n(2)));
        assert_eq!(f.sup_over(&PrimeSet::all()), Some(n(5)));
        assert_eq!(f.sup_over(&PrimeSet::finite([p(7)])), Some(n(1)));
        assert_eq!(f.sup_over(&PrimeSet::empty()), None);
    }
}
