//! Abelian groups as finite direct sums of atoms.
//!
//! Every predicate here is decided by a per-atom table and extended over
//! direct sums, so nothing depends on multiplicities.

use std::collections::BTreeSet;
use std::fmt;

use crate::basis::{BocksteinBasis, BocksteinGroup};
use crate::error::Error;
use crate::primes::{Prime, PrimeSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AbelianAtom {
    Z,
    Q,
    /// Z/p^k with k >= 1
    Cyclic { p: Prime, k: u32 },
    /// Z/p^∞
    Pruefer(Prime),
    /// Z_(p): rationals whose denominators are prime to p
    Localized(Prime),
    /// Z_l: rationals whose denominators avoid every prime of l
    LocalizedAway(PrimeSet),
    /// Ẑ_l: the l-adic integers, l nonempty
    Adic(PrimeSet),
}

impl AbelianAtom {
    pub fn cyclic(p: Prime, k: u32) -> AbelianAtom {
        AbelianAtom::Cyclic { p, k }
    }

    /// Normal form of a single atom.
    pub fn canonical(self) -> Result<AbelianAtom, Error> {
        Ok(match self {
            AbelianAtom::Cyclic { p, k: 0 } => return Err(Error::CyclicExponent { p: p.get(), k: 0 }),
            AbelianAtom::LocalizedAway(l) if l.is_empty() => AbelianAtom::Q,
            AbelianAtom::LocalizedAway(l) if l.is_all() => AbelianAtom::Z,
            AbelianAtom::LocalizedAway(l) => match l.is_singleton() {
                Some(p) => AbelianAtom::Localized(p),
                None => AbelianAtom::LocalizedAway(l),
            },
            AbelianAtom::Adic(l) if l.is_empty() => return Err(Error::EmptyAdic),
            other => other,
        })
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, AbelianAtom::Cyclic { .. } | AbelianAtom::Pruefer(_))
    }

    pub fn is_finitely_generated(&self) -> bool {
        matches!(self, AbelianAtom::Z | AbelianAtom::Cyclic { .. })
    }

    /// The prime of a torsion atom.
    pub fn torsion_prime(&self) -> Option<Prime> {
        match self {
            AbelianAtom::Cyclic { p, .. } | AbelianAtom::Pruefer(p) => Some(*p),
            _ => None,
        }
    }

    /// Primes outside of which every per-prime predicate of the atom is constant.
    pub fn mentioned_primes(&self) -> BTreeSet<Prime> {
        match self {
            AbelianAtom::Z | AbelianAtom::Q => BTreeSet::new(),
            AbelianAtom::Cyclic { p, .. } | AbelianAtom::Pruefer(p) | AbelianAtom::Localized(p) => {
                BTreeSet::from([*p])
            }
            AbelianAtom::LocalizedAway(l) | AbelianAtom::Adic(l) => l.listed().clone(),
        }
    }

    fn order(&self) -> Option<u64> {
        match self {
            AbelianAtom::Cyclic { p, k } => p.get().checked_pow(*k),
            _ => None,
        }
    }
}

impl From<BocksteinGroup> for AbelianAtom {
    fn from(h: BocksteinGroup) -> AbelianAtom {
        match h {
            BocksteinGroup::Q => AbelianAtom::Q,
            BocksteinGroup::Cyclic(p) => AbelianAtom::Cyclic { p, k: 1 },
            BocksteinGroup::Pruefer(p) => AbelianAtom::Pruefer(p),
            BocksteinGroup::Localized(p) => AbelianAtom::Localized(p),
        }
    }
}

impl fmt::Display for AbelianAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianAtom::Z => f.write_str("Z"),
            AbelianAtom::Q => f.write_str("Q"),
            AbelianAtom::Cyclic { p, k: 1 } => write!(f, "Z/{p}"),
            AbelianAtom::Cyclic { p, k } => write!(f, "Z/{p}^{k}"),
            AbelianAtom::Pruefer(p) => write!(f, "Z/{p}^inf"),
            AbelianAtom::Localized(p) => write!(f, "Z_({p})"),
            AbelianAtom::LocalizedAway(l) => write!(f, "Z_[{l}]"),
            AbelianAtom::Adic(l) => write!(f, "Zhat_[{l}]"),
        }
    }
}

/// A finite direct sum of atoms with positive multiplicities, kept canonical:
/// atoms sorted, like atoms merged. The empty sum is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    atoms: Vec<(AbelianAtom, u64)>,
}

/// Bring an atom list into canonical form. Zero multiplicities are dropped.
pub fn canonicalize<I>(atoms: I) -> Result<AbelianGroup, Error>
where
    I: IntoIterator<Item = (AbelianAtom, u64)>,
{
    let mut out: Vec<(AbelianAtom, u64)> = Vec::new();
    for (atom, mult) in atoms {
        let atom = atom.canonical()?;
        if mult > 0 {
            out.push((atom, mult));
        }
    }
    out.sort();
    let mut merged: Vec<(AbelianAtom, u64)> = Vec::with_capacity(out.len());
    for (atom, mult) in out {
        match merged.last_mut() {
            Some((last, m)) if *last == atom => *m += mult,
            _ => merged.push((atom, mult)),
        }
    }
    Ok(AbelianGroup { atoms: merged })
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup::default()
    }

    pub fn new<I>(atoms: I) -> Result<AbelianGroup, Error>
    where
        I: IntoIterator<Item = (AbelianAtom, u64)>,
    {
        canonicalize(atoms)
    }

    pub fn atom(atom: AbelianAtom) -> Result<AbelianGroup, Error> {
        canonicalize([(atom, 1)])
    }

    pub fn power(atom: AbelianAtom, mult: u64) -> Result<AbelianGroup, Error> {
        canonicalize([(atom, mult)])
    }

    /// Finite Abelian group from prime-power cyclic orders.
    pub fn from_prime_powers<I: IntoIterator<Item = (Prime, u32)>>(parts: I) -> Result<AbelianGroup, Error> {
        canonicalize(parts.into_iter().map(|(p, k)| (AbelianAtom::Cyclic { p, k }, 1)))
    }

    /// Z/n for n >= 1, split into primary parts.
    pub fn cyclic(n: u64) -> Result<AbelianGroup, Error> {
        AbelianGroup::from_prime_powers(crate::primes::factorize(n))
    }

    pub fn atoms(&self) -> &[(AbelianAtom, u64)] {
        &self.atoms
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        canonicalize(self.atoms.iter().chain(other.atoms.iter()).cloned()).expect("canonical inputs")
    }

    pub fn scale_multiplicities(&self, factor: u64) -> AbelianGroup {
        canonicalize(self.atoms.iter().map(|(a, m)| (a.clone(), m * factor))).expect("canonical inputs")
    }

    fn filtered<F: Fn(&AbelianAtom) -> bool>(&self, keep: F) -> AbelianGroup {
        AbelianGroup { atoms: self.atoms.iter().filter(|(a, _)| keep(a)).cloned().collect() }
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.atoms.iter().all(|(a, _)| a.is_finitely_generated())
    }

    /// Order of a finite group; `None` when infinite or too large for u64.
    pub fn order(&self) -> Option<u64> {
        self.atoms.iter().try_fold(1u64, |acc, (a, m)| {
            let o = a.order()?.checked_pow(u32::try_from(*m).ok()?)?;
            acc.checked_mul(o)
        })
    }

    pub fn mentioned_primes(&self) -> BTreeSet<Prime> {
        self.atoms.iter().flat_map(|(a, _)| a.mentioned_primes()).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, m)) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (a, m) {
                (_, 1) => write!(f, "{a}")?,
                (AbelianAtom::Z | AbelianAtom::Q, _) => write!(f, "{a}^{m}")?,
                _ => write!(f, "({a})^{m}")?,
            }
        }
        Ok(())
    }
}

/// Torsion subgroup and torsion-free quotient of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub is_torsion: bool,
    /// Tor(G)
    pub tor: AbelianGroup,
    /// F(G) = G/Tor(G)
    pub free_part: AbelianGroup,
    whole: AbelianGroup,
}

impl Decomposition {
    /// Tor_p(G): elements of p-power order.
    pub fn tor_p(&self, p: Prime) -> AbelianGroup {
        self.tor.filtered(|a| a.torsion_prime() == Some(p))
    }

    /// F_p(G) = G/Tor_p(G).
    pub fn f_p(&self, p: Prime) -> AbelianGroup {
        self.whole.filtered(|a| a.torsion_prime() != Some(p))
    }
}

pub fn decompose(g: &AbelianGroup) -> Decomposition {
    let tor = g.filtered(AbelianAtom::is_torsion);
    let free_part = g.filtered(|a| !a.is_torsion());
    Decomposition { is_torsion: free_part.is_trivial(), tor, free_part, whole: g.clone() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub p_divisible: bool,
    pub uniquely_p_divisible: bool,
}

/// Per-atom divisibility table.
pub fn atom_divisibility(atom: &AbelianAtom, p: Prime) -> Divisibility {
    let (div, uniq) = match atom {
        AbelianAtom::Z => (false, false),
        AbelianAtom::Q => (true, true),
        AbelianAtom::Cyclic { p: q, .. } => (*q != p, *q != p),
        AbelianAtom::Pruefer(q) => (true, *q != p),
        AbelianAtom::Localized(q) => (*q != p, *q != p),
        AbelianAtom::LocalizedAway(l) | AbelianAtom::Adic(l) => (!l.contains(p), !l.contains(p)),
    };
    Divisibility { p_divisible: div, uniquely_p_divisible: uniq }
}

pub fn divisibility(g: &AbelianGroup, p: Prime) -> Divisibility {
    g.atoms.iter().fold(Divisibility { p_divisible: true, uniquely_p_divisible: true }, |acc, (a, _)| {
        let d = atom_divisibility(a, p);
        Divisibility {
            p_divisible: acc.p_divisible && d.p_divisible,
            uniquely_p_divisible: acc.uniquely_p_divisible && d.uniquely_p_divisible,
        }
    })
}

/// Primes p at which a torsion-free atom fails to be p-divisible.
fn torsion_free_obstruction(atom: &AbelianAtom) -> PrimeSet {
    match atom {
        AbelianAtom::Z => PrimeSet::all(),
        AbelianAtom::Q => PrimeSet::empty(),
        AbelianAtom::Localized(q) => PrimeSet::singleton(*q),
        AbelianAtom::LocalizedAway(l) => l.clone(),
        AbelianAtom::Adic(l) => l.clone(),
        AbelianAtom::Cyclic { .. } | AbelianAtom::Pruefer(_) => unreachable!("torsion atom"),
    }
}

/// σ(G) for an Abelian group, clause by clause from Tor_p(G) and F(G).
pub fn sigma_abelian(g: &AbelianGroup) -> BocksteinBasis {
    let mut has_q = false;
    // p with F(G) not p-divisible
    let mut f_not_div = PrimeSet::empty();
    // p with Tor_p(G) nontrivial
    let mut tor_nontrivial = PrimeSet::empty();
    // p with Tor_p(G) not p-divisible
    let mut tor_not_div = PrimeSet::empty();
    for (atom, _) in g.atoms() {
        match atom {
            AbelianAtom::Cyclic { p, .. } => {
                tor_nontrivial = tor_nontrivial.union(&PrimeSet::singleton(*p));
                tor_not_div = tor_not_div.union(&PrimeSet::singleton(*p));
            }
            AbelianAtom::Pruefer(p) => {
                tor_nontrivial = tor_nontrivial.union(&PrimeSet::singleton(*p));
            }
            free => {
                has_q = true;
                f_not_div = f_not_div.union(&torsion_free_obstruction(free));
            }
        }
    }
    BocksteinBasis {
        has_q,
        loc: f_not_div.clone(),
        zp: tor_not_div.union(&f_not_div),
        zpinf: tor_nontrivial.union(&f_not_div),
    }
}

fn require_finitely_generated(g: &AbelianGroup) -> Result<(), Error> {
    if g.is_finitely_generated() {
        Ok(())
    } else {
        Err(Error::NotFinitelyGenerated(g.to_string()))
    }
}

/// G ⊗ C for finitely generated G.
pub fn tensor_with(g: &AbelianGroup, c: BocksteinGroup) -> Result<AbelianGroup, Error> {
    require_finitely_generated(g)?;
    let mut out = Vec::new();
    for (atom, mult) in g.atoms() {
        let term = match (atom, c) {
            (AbelianAtom::Z, c) => Some(AbelianAtom::from(c)),
            (AbelianAtom::Cyclic { .. }, BocksteinGroup::Q) => None,
            (AbelianAtom::Cyclic { p, .. }, BocksteinGroup::Cyclic(q)) => {
                (*p == q).then_some(AbelianAtom::Cyclic { p: *p, k: 1 })
            }
            (AbelianAtom::Cyclic { .. }, BocksteinGroup::Pruefer(_)) => None,
            (AbelianAtom::Cyclic { p, k }, BocksteinGroup::Localized(q)) => {
                (*p == q).then_some(AbelianAtom::Cyclic { p: *p, k: *k })
            }
            _ => unreachable!("finitely generated"),
        };
        out.extend(term.map(|t| (t, *mult)));
    }
    canonicalize(out)
}

/// Tor(G, C) for finitely generated G.
pub fn tor_with(g: &AbelianGroup, c: BocksteinGroup) -> Result<AbelianGroup, Error> {
    require_finitely_generated(g)?;
    let mut out = Vec::new();
    for (atom, mult) in g.atoms() {
        let term = match (atom, c) {
            (AbelianAtom::Z, _) => None,
            (AbelianAtom::Cyclic { p, k }, BocksteinGroup::Pruefer(q)) => {
                (*p == q).then_some(AbelianAtom::Cyclic { p: *p, k: *k })
            }
            (AbelianAtom::Cyclic { p, .. }, BocksteinGroup::Cyclic(q)) => {
                (*p == q).then_some(AbelianAtom::Cyclic { p: *p, k: 1 })
            }
            (AbelianAtom::Cyclic { .. }, BocksteinGroup::Q | BocksteinGroup::Localized(_)) => None,
            _ => unreachable!("finitely generated"),
        };
        out.extend(term.map(|t| (t, *mult)));
    }
    canonicalize(out)
}
