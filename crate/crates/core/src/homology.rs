//! Low-degree homology checks for the characterizations of σ-membership.
//!
//! H₁(G; A) = Ab(G) ⊗ A by universal coefficients. For finite G,
//! H₁(G; Z/p^∞) and H₂(G; Z) ⊗ Z/p^∞ vanish (finite ⊗ divisible), so
//! H₁ = H₂ = 0 with Z/p^∞ coefficients reduces to Tor(Ab(G), Z/p^∞) =
//! Tor_p(Ab(G)) = 0.

use serde::Serialize;

use crate::abelian::{decompose, tensor_with, AbelianGroup};
use crate::basis::BocksteinGroup;
use crate::error::Error;
use crate::finite::FiniteGroup;
use crate::nilpotent::{abelianization, sigma_nilpotent, NilpotentGroupDesc};
use crate::primes::Prime;

pub fn h1(g: &NilpotentGroupDesc, c: BocksteinGroup) -> Result<AbelianGroup, Error> {
    tensor_with(&abelianization(g), c)
}

pub fn zpinf_h12_vanishes_finite(g: &FiniteGroup, p: Prime) -> bool {
    decompose(&g.abelianization().1).tor_p(p).is_trivial()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    fn of(lhs: bool, rhs: bool) -> Verdict {
        if lhs == rhs {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub q: bool,
    pub zp: bool,
    pub zpinf: bool,
    pub loc: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// Q ∉ σ(G) ⇔ H₁(G; Q) = 0
    pub rational: Verdict,
    /// Z/p ∉ σ(G) ⇔ H₁(G; Z/p) = 0
    pub mod_p: Verdict,
    /// Z/p^∞ ∉ σ(G) ⇔ H₁ = H₂ = 0 with Z/p^∞ coefficients (finite groups)
    pub pruefer: Verdict,
    /// Z_(p) ∉ σ(G) ⇔ H₁ = H₂ = 0 for F(G) with Z/p^∞ coefficients
    pub localized: Verdict,
}

impl Verdicts {
    pub fn any_failed(&self) -> bool {
        [self.rational, self.mod_p, self.pruefer, self.localized].contains(&Verdict::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub group: String,
    pub prime: Prime,
    pub sigma_membership: Membership,
    pub h1_q_zero: Option<bool>,
    pub h1_zp_zero: Option<bool>,
    pub zpinf_h12_zero: Option<bool>,
    /// H₁, H₂ of F(G) with Z/p^∞ coefficients vanish
    pub free_zpinf_h12_zero: Option<bool>,
    pub verdicts: Verdicts,
}

/// Evaluate each applicable biconditional. Inapplicable ones are `Skipped`:
/// non-finitely-generated abelianizations skip the H₁ checks, the Z/p^∞ check
/// runs on finite tables only, and the F(G) check needs F(G) modeled (Abelian
/// or finite input).
pub fn corollary_report(g: &NilpotentGroupDesc, p: Prime) -> Result<CorollaryReport, Error> {
    let sigma = sigma_nilpotent(g)?;
    let membership = Membership {
        q: sigma.contains(BocksteinGroup::Q),
        zp: sigma.contains(BocksteinGroup::Cyclic(p)),
        zpinf: sigma.contains(BocksteinGroup::Pruefer(p)),
        loc: sigma.contains(BocksteinGroup::Localized(p)),
    };
    let ab = abelianization(g);
    let (h1_q_zero, h1_zp_zero) = if ab.is_finitely_generated() {
        (
            Some(tensor_with(&ab, BocksteinGroup::Q)?.is_trivial()),
            Some(tensor_with(&ab, BocksteinGroup::Cyclic(p))?.is_trivial()),
        )
    } else {
        (None, None)
    };
    let zpinf_h12_zero = match g {
        NilpotentGroupDesc::Finite(c) => Some(zpinf_h12_vanishes_finite(&c.group, p)),
        _ => None,
    };
    // F(G) is free Abelian of finite rank for finitely generated Abelian G,
    // trivial for finite G; H₂(Zʳ; Z/p^∞) vanishes once H₁ = (Z/p^∞)ʳ does.
    let free_zpinf_h12_zero = match g {
        NilpotentGroupDesc::Abelian(a) if a.is_finitely_generated() => {
            Some(tensor_with(&decompose(a).free_part, BocksteinGroup::Pruefer(p))?.is_trivial())
        }
        NilpotentGroupDesc::Finite(_) => Some(true),
        _ => None,
    };
    let verdict = |member: bool, vanishes: Option<bool>| match vanishes {
        Some(v) => Verdict::of(!member, v),
        None => Verdict::Skipped,
    };
    Ok(CorollaryReport {
        group: g.to_string(),
        prime: p,
        sigma_membership: membership,
        h1_q_zero,
        h1_zp_zero,
        zpinf_h12_zero,
        free_zpinf_h12_zero,
        verdicts: Verdicts {
            rational: verdict(membership.q, h1_q_zero),
            mod_p: verdict(membership.zp, h1_zp_zero),
            pruefer: verdict(membership.zpinf, zpinf_h12_zero),
            localized: verdict(membership.loc, free_zpinf_h12_zero),
        },
    })
}
