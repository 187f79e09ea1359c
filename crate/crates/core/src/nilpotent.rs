//! Nilpotent groups as Abelian groups, towers of central extensions, or
//! finite multiplication tables.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::abelian::{decompose, divisibility, sigma_abelian, AbelianGroup};
use crate::basis::BocksteinBasis;
use crate::error::Error;
use crate::finite::FiniteGroup;
use crate::primes::{Prime, PrimeSet};

/// A tower of central extensions.
///
/// `layers[0]` is the central kernel of the outermost extension and the rest
/// of the list is the tower of the quotient; the last layer is the Abelian
/// base. For the lower central series this reads `[Γ_c, Γ_{c-1}/Γ_c, …, Γ_1/Γ_2]`.
/// `witnessed[i]` asserts that the extension with kernel `layers[i]` admits an
/// epimorphism from a tensor power of the abelianization onto that kernel; the
/// base flag is ignored since the base stage is Abelian.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    layers: Vec<AbelianGroup>,
    ab: AbelianGroup,
    witnessed: Vec<bool>,
}

impl Tower {
    pub fn new(layers: Vec<AbelianGroup>, ab: AbelianGroup, witnessed: Vec<bool>) -> Result<Tower, Error> {
        if layers.len() < 2 {
            return Err(Error::InvalidTower(format!("needs at least two layers, got {}", layers.len())));
        }
        if let Some(i) = layers.iter().position(AbelianGroup::is_trivial) {
            return Err(Error::InvalidTower(format!("layer {i} is trivial")));
        }
        if witnessed.len() != layers.len() {
            return Err(Error::InvalidTower(format!(
                "{} witness flags for {} layers",
                witnessed.len(),
                layers.len()
            )));
        }
        if ab.is_trivial() {
            return Err(Error::InvalidTower("a nontrivial nilpotent group has nontrivial abelianization".into()));
        }
        Ok(Tower { layers, ab, witnessed })
    }

    /// A tower with every stage witnessed.
    pub fn witnessed(layers: Vec<AbelianGroup>, ab: AbelianGroup) -> Result<Tower, Error> {
        let n = layers.len();
        Tower::new(layers, ab, vec![true; n])
    }

    pub fn layers(&self) -> &[AbelianGroup] {
        &self.layers
    }

    /// Supplied abelianization.
    pub fn ab(&self) -> &AbelianGroup {
        &self.ab
    }

    pub fn witness_flags(&self) -> &[bool] {
        &self.witnessed
    }

    pub fn class(&self) -> usize {
        self.layers.len()
    }

    /// First non-base stage lacking a witness.
    pub fn first_unwitnessed(&self) -> Option<usize> {
        self.witnessed[..self.layers.len() - 1].iter().position(|w| !w)
    }

    pub fn is_fully_witnessed(&self) -> bool {
        self.first_unwitnessed().is_none()
    }

    /// The outermost extension K → G → I. The quotient keeps the supplied
    /// abelianization, which is right whenever K ⊆ [G, G] (as for Γ_c, c >= 2).
    pub fn split(&self) -> (AbelianGroup, NilpotentGroupDesc) {
        let kernel = self.layers[0].clone();
        let rest = &self.layers[1..];
        let quotient = if rest.len() == 1 {
            NilpotentGroupDesc::Abelian(rest[0].clone())
        } else {
            NilpotentGroupDesc::Tower(Tower {
                layers: rest.to_vec(),
                ab: self.ab.clone(),
                witnessed: self.witnessed[1..].to_vec(),
            })
        };
        (kernel, quotient)
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("tower[")?;
        for (i, l) in self.layers.iter().enumerate() {
            if i > 0 {
                f.write_str(" <- ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "; ab {}]", self.ab)
    }
}

/// A finite table group together with the name it is known by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCase {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotentGroupDesc {
    Abelian(AbelianGroup),
    Tower(Tower),
    Finite(FiniteCase),
}

impl NilpotentGroupDesc {
    pub fn finite(name: impl Into<String>, group: FiniteGroup) -> NilpotentGroupDesc {
        NilpotentGroupDesc::Finite(FiniteCase { name: name.into(), group: Arc::new(group) })
    }
}

impl fmt::Display for NilpotentGroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotentGroupDesc::Abelian(g) => write!(f, "{g}"),
            NilpotentGroupDesc::Tower(t) => write!(f, "{t}"),
            NilpotentGroupDesc::Finite(c) => write!(f, "{}", c.name),
        }
    }
}

/// Three-valued answer for predicates that a layer rule may fail to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Indeterminate,
}

impl From<bool> for Truth {
    fn from(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

impl Truth {
    pub fn known(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Indeterminate => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotentPredicates {
    pub torsion: Truth,
    pub p_divisible: Truth,
    pub uniquely_p_divisible: Truth,
}

pub fn nilpotency_class(g: &NilpotentGroupDesc) -> Result<usize, Error> {
    match g {
        NilpotentGroupDesc::Abelian(a) => Ok(usize::from(!a.is_trivial())),
        NilpotentGroupDesc::Tower(t) => Ok(t.class()),
        NilpotentGroupDesc::Finite(c) => c.group.nilpotency_class(),
    }
}

/// Torsion, p-divisibility and unique p-divisibility.
///
/// Towers use the layer rules: a central extension of p-divisible groups is
/// p-divisible, and the converse needs the nilpotent-central witness. Without
/// it, a failing layer leaves the answer `Indeterminate`. Torsion passes
/// through any extension in both directions.
pub fn predicates_nilpotent(g: &NilpotentGroupDesc, p: Prime) -> Result<NilpotentPredicates, Error> {
    match g {
        NilpotentGroupDesc::Abelian(a) => {
            let d = divisibility(a, p);
            Ok(NilpotentPredicates {
                torsion: decompose(a).is_torsion.into(),
                p_divisible: d.p_divisible.into(),
                uniquely_p_divisible: d.uniquely_p_divisible.into(),
            })
        }
        NilpotentGroupDesc::Tower(t) => {
            let layer_rule = |holds: bool| {
                if holds {
                    Truth::True
                } else if t.is_fully_witnessed() {
                    Truth::False
                } else {
                    Truth::Indeterminate
                }
            };
            let divs: Vec<_> = t.layers().iter().map(|l| divisibility(l, p)).collect();
            Ok(NilpotentPredicates {
                torsion: t.layers().iter().all(|l| decompose(l).is_torsion).into(),
                p_divisible: layer_rule(divs.iter().all(|d| d.p_divisible)),
                uniquely_p_divisible: layer_rule(divs.iter().all(|d| d.uniquely_p_divisible)),
            })
        }
        NilpotentGroupDesc::Finite(c) => {
            c.group.lower_central_series()?;
            let pm = c.group.power_map(p);
            Ok(NilpotentPredicates {
                torsion: Truth::True,
                p_divisible: pm.surjective.into(),
                uniquely_p_divisible: pm.bijective().into(),
            })
        }
    }
}

/// σ of an Abelian group read off the nilpotent-group clauses: Q unless
/// torsion, Z/p^∞ unless uniquely p-divisible, Z/p unless p-divisible, Z_(p)
/// unless F(G) is p-divisible.
fn sigma_by_predicates(a: &AbelianGroup) -> BocksteinBasis {
    let d = decompose(a);
    let mentioned = a.mentioned_primes();
    BocksteinBasis {
        has_q: !d.is_torsion,
        loc: PrimeSet::lift(&mentioned, |p| !divisibility(&d.free_part, p).p_divisible),
        zp: PrimeSet::lift(&mentioned, |p| !divisibility(a, p).p_divisible),
        zpinf: PrimeSet::lift(&mentioned, |p| !divisibility(a, p).uniquely_p_divisible),
    }
}

pub fn sigma_nilpotent(g: &NilpotentGroupDesc) -> Result<BocksteinBasis, Error> {
    match g {
        NilpotentGroupDesc::Abelian(a) => Ok(sigma_by_predicates(a)),
        NilpotentGroupDesc::Tower(t) => {
            if let Some(stage) = t.first_unwitnessed() {
                return Err(Error::UnwitnessedTower { stage });
            }
            Ok(t.layers().iter().fold(BocksteinBasis::empty(), |acc, l| acc.union(&sigma_abelian(l))))
        }
        NilpotentGroupDesc::Finite(c) => c.group.sigma_finite(),
    }
}

/// Ab(G): the group itself, the tower's supplied metadata, or the oracle's.
pub fn abelianization(g: &NilpotentGroupDesc) -> AbelianGroup {
    match g {
        NilpotentGroupDesc::Abelian(a) => a.clone(),
        NilpotentGroupDesc::Tower(t) => t.ab().clone(),
        NilpotentGroupDesc::Finite(c) => c.group.abelianization().1,
    }
}

/// The lower-central-series tower of a finite nilpotent group of class >= 2,
/// with oracle abelianization. `None` for class <= 1.
pub fn gamma_tower(g: &FiniteGroup) -> Result<Option<Tower>, Error> {
    let series = g.lower_central_series()?;
    if series.class < 2 {
        return Ok(None);
    }
    let mut layers = Vec::with_capacity(series.class);
    for i in (0..series.class).rev() {
        let (upper, embedding) = g.subgroup_as_group(&series.terms[i]);
        let lower: Vec<usize> = series.terms[i + 1]
            .elements()
            .iter()
            .map(|x| embedding.binary_search(x).expect("Γ_{i+1} ⊆ Γ_i"))
            .collect();
        let lower = upper.generate(&lower);
        let factor = upper.quotient(&lower)?.group;
        layers.push(factor.abelian_invariants()?);
    }
    Tower::witnessed(layers, g.abelianization().1).map(Some)
}
