//! Primes and the Boolean algebra of finite and cofinite sets of primes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A prime number, checked by trial division at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(value: u64) -> Result<Prime, Error> {
        if is_prime(value) {
            Ok(Prime(value))
        } else {
            Err(Error::NotPrime(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// The smallest prime not contained in `avoid`.
    pub fn first_outside(avoid: &BTreeSet<Prime>) -> Prime {
        primes().find(|p| !avoid.contains(p)).expect("infinitely many primes")
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u64::deserialize(d)?;
        Prime::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Iterator over all primes in increasing order.
pub fn primes() -> impl Iterator<Item = Prime> {
    (2u64..).filter(|&n| is_prime(n)).map(Prime)
}

/// All primes `<= bound`.
pub fn primes_up_to(bound: u64) -> Vec<Prime> {
    (2..=bound).filter(|&n| is_prime(n)).map(Prime).collect()
}

/// Prime factorization as `(p, exponent)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(Prime, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((Prime(d), e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((Prime(n), 1));
    }
    out
}

/// A set of primes that is either finite or cofinite.
///
/// The representation is unique: a finite set never equals a cofinite one, so
/// structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeSet {
    Finite(BTreeSet<Prime>),
    /// All primes except the listed ones.
    Cofinite(BTreeSet<Prime>),
}

impl Default for PrimeSet {
    fn default() -> Self {
        PrimeSet::empty()
    }
}

impl PrimeSet {
    pub fn empty() -> PrimeSet {
        PrimeSet::Finite(BTreeSet::new())
    }

    pub fn all() -> PrimeSet {
        PrimeSet::Cofinite(BTreeSet::new())
    }

    pub fn singleton(p: Prime) -> PrimeSet {
        PrimeSet::Finite(BTreeSet::from([p]))
    }

    pub fn finite<I: IntoIterator<Item = Prime>>(primes: I) -> PrimeSet {
        PrimeSet::Finite(primes.into_iter().collect())
    }

    pub fn all_except<I: IntoIterator<Item = Prime>>(primes: I) -> PrimeSet {
        PrimeSet::Cofinite(primes.into_iter().collect())
    }

    pub fn contains(&self, p: Prime) -> bool {
        match self {
            PrimeSet::Finite(s) => s.contains(&p),
            PrimeSet::Cofinite(ex) => !ex.contains(&p),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(s) if s.is_empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::Cofinite(s) if s.is_empty())
    }

    pub fn is_singleton(&self) -> Option<Prime> {
        match self {
            PrimeSet::Finite(s) if s.len() == 1 => s.iter().next().copied(),
            _ => None,
        }
    }

    pub fn complement(&self) -> PrimeSet {
        match self {
            PrimeSet::Finite(s) => PrimeSet::Cofinite(s.clone()),
            PrimeSet::Cofinite(s) => PrimeSet::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(b - a),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
        }
    }

    pub fn intersect(&self, other: &PrimeSet) -> PrimeSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.difference(other).is_empty()
    }

    /// The set `{p : pred(p)}` for a predicate that is constant on primes outside
    /// `mentioned`. Evaluates `pred` on `mentioned` and on one prime outside it.
    pub fn lift<F: Fn(Prime) -> bool>(mentioned: &BTreeSet<Prime>, pred: F) -> PrimeSet {
        let generic = Prime::first_outside(mentioned);
        if pred(generic) {
            PrimeSet::Cofinite(mentioned.iter().copied().filter(|&p| !pred(p)).collect())
        } else {
            PrimeSet::Finite(mentioned.iter().copied().filter(|&p| pred(p)).collect())
        }
    }

    /// Members of a finite set, or the excluded primes of a cofinite one.
    pub fn listed(&self) -> &BTreeSet<Prime> {
        match self {
            PrimeSet::Finite(s) | PrimeSet::Cofinite(s) => s,
        }
    }
}

impl FromIterator<Prime> for PrimeSet {
    fn from_iter<I: IntoIterator<Item = Prime>>(iter: I) -> Self {
        PrimeSet::finite(iter)
    }
}

fn fmt_braced(f: &mut fmt::Formatter<'_>, s: &BTreeSet<Prime>) -> fmt::Result {
    f.write_str("{")?;
    for (i, p) in s.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str("}")
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::Finite(s) => fmt_braced(f, s),
            PrimeSet::Cofinite(s) if s.is_empty() => f.write_str("all primes"),
            PrimeSet::Cofinite(s) => {
                f.write_str("all primes except ")?;
                fmt_braced(f, s)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum PrimeSetRepr {
    Finite {
        #[serde(default)]
        primes: Vec<Prime>,
    },
    Cofinite {
        #[serde(default)]
        excluded: Vec<Prime>,
    },
}

impl Serialize for PrimeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            PrimeSet::Finite(p) => PrimeSetRepr::Finite { primes: p.iter().copied().collect() },
            PrimeSet::Cofinite(p) => PrimeSetRepr::Cofinite { excluded: p.iter().copied().collect() },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PrimeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match PrimeSetRepr::deserialize(d)? {
            PrimeSetRepr::Finite { primes } => PrimeSet::finite(primes),
            PrimeSetRepr::Cofinite { excluded } => PrimeSet::all_except(excluded),
        })
    }
}
