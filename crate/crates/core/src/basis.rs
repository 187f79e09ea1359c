//! Bockstein bases: subsets of {Q} ∪ {Z/p, Z/p^∞, Z_(p) : p prime}.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::primes::{Prime, PrimeSet};

/// One Bockstein group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "snake_case")]
pub enum BocksteinGroup {
    Q,
    /// Z/p
    Cyclic(Prime),
    /// Z/p^∞
    Pruefer(Prime),
    /// Z_(p)
    Localized(Prime),
}

impl fmt::Display for BocksteinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BocksteinGroup::Q => f.write_str("Q"),
            BocksteinGroup::Cyclic(p) => write!(f, "Z/{p}"),
            BocksteinGroup::Pruefer(p) => write!(f, "Z/{p}^inf"),
            BocksteinGroup::Localized(p) => write!(f, "Z_({p})"),
        }
    }
}

/// The value of σ(G). Maximal convention: `loc ⊆ zp ⊆ zpinf`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BocksteinBasis {
    pub has_q: bool,
    /// primes p with Z_(p) ∈ σ
    pub loc: PrimeSet,
    /// primes p with Z/p ∈ σ
    pub zp: PrimeSet,
    /// primes p with Z/p^∞ ∈ σ
    pub zpinf: PrimeSet,
}

impl BocksteinBasis {
    pub fn empty() -> BocksteinBasis {
        BocksteinBasis::default()
    }

    /// σ(Z): every Bockstein group.
    pub fn everything() -> BocksteinBasis {
        BocksteinBasis { has_q: true, loc: PrimeSet::all(), zp: PrimeSet::all(), zpinf: PrimeSet::all() }
    }

    pub fn is_empty(&self) -> bool {
        !self.has_q && self.loc.is_empty() && self.zp.is_empty() && self.zpinf.is_empty()
    }

    pub fn chain_holds(&self) -> bool {
        self.loc.is_subset(&self.zp) && self.zp.is_subset(&self.zpinf)
    }

    pub fn contains(&self, h: BocksteinGroup) -> bool {
        match h {
            BocksteinGroup::Q => self.has_q,
            BocksteinGroup::Cyclic(p) => self.zp.contains(p),
            BocksteinGroup::Pruefer(p) => self.zpinf.contains(p),
            BocksteinGroup::Localized(p) => self.loc.contains(p),
        }
    }

    pub fn union(&self, other: &BocksteinBasis) -> BocksteinBasis {
        BocksteinBasis {
            has_q: self.has_q || other.has_q,
            loc: self.loc.union(&other.loc),
            zp: self.zp.union(&other.zp),
            zpinf: self.zpinf.union(&other.zpinf),
        }
    }

    pub fn is_subset(&self, other: &BocksteinBasis) -> bool {
        (!self.has_q || other.has_q)
            && self.loc.is_subset(&other.loc)
            && self.zp.is_subset(&other.zp)
            && self.zpinf.is_subset(&other.zpinf)
    }

    /// σ_NTD, encoded as a basis whose Z/p^∞ family is the one implied by Z/p.
    pub fn ntd(&self) -> BocksteinBasis {
        BocksteinBasis { has_q: self.has_q, loc: self.loc.clone(), zp: self.zp.clone(), zpinf: self.zp.clone() }
    }

    /// σ_TD: the Z/p^∞ members only.
    pub fn td(&self) -> BocksteinBasis {
        BocksteinBasis { zpinf: self.zpinf.clone(), ..BocksteinBasis::empty() }
    }

    pub fn split_td(&self) -> SigmaSplit {
        SigmaSplit { td: self.td(), ntd: self.ntd() }
    }
}

impl fmt::Display for BocksteinBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q: {} | Z_(p): {} | Z/p: {} | Z/p^inf: {}",
            if self.has_q { "yes" } else { "no" },
            self.loc,
            self.zp,
            self.zpinf
        )
    }
}

/// σ split into its torsion-divisible part and the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaSplit {
    pub td: BocksteinBasis,
    pub ntd: BocksteinBasis,
}

impl SigmaSplit {
    pub fn reconstitute(&self) -> BocksteinBasis {
        self.td.union(&self.ntd)
    }
}

pub fn sigma_split_td(b: &BocksteinBasis) -> SigmaSplit {
    b.split_td()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn split_of_z_mod_4_shape() {
        // σ(Z/4) = {Z/2, Z/2^∞}
        let b = BocksteinBasis {
            has_q: false,
            loc: PrimeSet::empty(),
            zp: PrimeSet::singleton(p(2)),
            zpinf: PrimeSet::singleton(p(2)),
        };
        let s = b.split_td();
        assert!(s.td.contains(BocksteinGroup::Pruefer(p(2))));
        assert!(!s.td.contains(BocksteinGroup::Cyclic(p(2))));
        assert!(s.ntd.contains(BocksteinGroup::Cyclic(p(2))));
        assert_eq!(s.reconstitute(), b);
    }

    #[test]
    fn split_of_everything() {
        let s = BocksteinBasis::everything().split_td();
        assert_eq!(s.td.zpinf, PrimeSet::all());
        assert!(!s.td.has_q && s.td.zp.is_empty());
        assert!(s.ntd.has_q && s.ntd.loc.is_all() && s.ntd.zp.is_all());
        assert_eq!(s.reconstitute(), BocksteinBasis::everything());
    }

    #[test]
    fn display_matches_cli_grammar() {
        let b = BocksteinBasis {
            has_q: false,
            loc: PrimeSet::empty(),
            zp: PrimeSet::singleton(p(2)),
            zpinf: PrimeSet::singleton(p(2)),
        };
        assert_eq!(b.to_string(), "Q: no | Z_(p): {} | Z/p: {2} | Z/p^inf: {2}");
    }
}
