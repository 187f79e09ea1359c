//! JSON file formats for groups and dimension profiles.
//!
//! ```text
//! {"type":"abelian","atoms":[{"kind":"Z","mult":1},{"kind":"cyclic","p":2,"k":3},
//!   {"kind":"pruefer","p":3},{"kind":"localized","p":5},
//!   {"kind":"localized_away","l":{"kind":"finite","primes":[2,3]}},
//!   {"kind":"adic","l":{"kind":"cofinite","excluded":[7]}}]}
//! {"type":"tower","layers":[<abelian>...],"ab":<abelian>,"witnessed":true}
//! {"type":"tower","name":"heisenberg_ring(Z)"}
//! {"type":"finite","name":"Q8"}
//! {"type":"finite","table":[[0,1],[1,0]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianAtom, AbelianGroup};
use crate::catalog;
use crate::dimension::DimensionProfile;
use crate::error::Error;
use crate::finite::FiniteGroup;
use crate::nilpotent::{NilpotentGroupDesc, Tower};
use crate::primes::{Prime, PrimeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRecord {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<Prime>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<PrimeSet>,
    #[serde(default = "one")]
    mult: u64,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AbelianRecord {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    atoms: Vec<AtomRecord>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Witness {
    All(bool),
    PerLayer(Vec<bool>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum GroupRecord {
    Abelian {
        atoms: Vec<AtomRecord>,
    },
    Tower {
        name: Option<String>,
        layers: Option<Vec<AbelianRecord>>,
        ab: Option<AbelianRecord>,
        witnessed: Option<Witness>,
    },
    Finite {
        name: Option<String>,
        table: Option<Vec<Vec<usize>>>,
    },
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn atom_from_record(r: &AtomRecord) -> Result<(AbelianAtom, u64), Error> {
    let need_p = || r.p.ok_or_else(|| Error::Parse(format!("atom `{}` needs a prime `p`", r.kind)));
    let need_l = || r.l.clone().ok_or_else(|| Error::Parse(format!("atom `{}` needs a prime set `l`", r.kind)));
    let unexpected = |field: &str| Error::Parse(format!("atom `{}` takes no `{field}`", r.kind));
    if r.k.is_some() && r.kind != "cyclic" {
        return Err(unexpected("k"));
    }
    if r.p.is_some() && matches!(r.kind.as_str(), "Z" | "Q" | "localized_away" | "adic") {
        return Err(unexpected("p"));
    }
    if r.l.is_some() && !matches!(r.kind.as_str(), "localized_away" | "adic") {
        return Err(unexpected("l"));
    }
    let atom = match r.kind.as_str() {
        "Z" => AbelianAtom::Z,
        "Q" => AbelianAtom::Q,
        "cyclic" => AbelianAtom::Cyclic { p: need_p()?, k: r.k.unwrap_or(1) },
        "pruefer" => AbelianAtom::Pruefer(need_p()?),
        "localized" => AbelianAtom::Localized(need_p()?),
        "localized_away" => AbelianAtom::LocalizedAway(need_l()?),
        "adic" => AbelianAtom::Adic(need_l()?),
        other => return Err(Error::Parse(format!("unknown atom kind `{other}`"))),
    };
    Ok((atom, r.mult))
}

fn atom_to_record(atom: &AbelianAtom, mult: u64) -> AtomRecord {
    let (kind, p, k, l) = match atom {
        AbelianAtom::Z => ("Z", None, None, None),
        AbelianAtom::Q => ("Q", None, None, None),
        AbelianAtom::Cyclic { p, k } => ("cyclic", Some(*p), Some(*k), None),
        AbelianAtom::Pruefer(p) => ("pruefer", Some(*p), None, None),
        AbelianAtom::Localized(p) => ("localized", Some(*p), None, None),
        AbelianAtom::LocalizedAway(l) => ("localized_away", None, None, Some(l.clone())),
        AbelianAtom::Adic(l) => ("adic", None, None, Some(l.clone())),
    };
    AtomRecord { kind: kind.to_string(), p, k, l, mult }
}

fn abelian_from_atoms(atoms: &[AtomRecord]) -> Result<AbelianGroup, Error> {
    let atoms = atoms.iter().map(atom_from_record).collect::<Result<Vec<_>, _>>()?;
    AbelianGroup::new(atoms)
}

fn abelian_from_record(r: &AbelianRecord) -> Result<AbelianGroup, Error> {
    match r.kind.as_deref() {
        None | Some("abelian") => abelian_from_atoms(&r.atoms),
        Some(other) => Err(Error::Parse(format!("expected an Abelian group, got type `{other}`"))),
    }
}

/// The JSON record for an Abelian group.
pub fn abelian_to_json(g: &AbelianGroup) -> serde_json::Value {
    let record = AbelianRecord {
        kind: Some("abelian".into()),
        atoms: g.atoms().iter().map(|(a, m)| atom_to_record(a, *m)).collect(),
    };
    serde_json::to_value(record).expect("records serialize")
}

pub fn tower_to_json(t: &Tower) -> serde_json::Value {
    serde_json::json!({
        "type": "tower",
        "layers": t.layers().iter().map(abelian_to_json).collect::<Vec<_>>(),
        "ab": abelian_to_json(t.ab()),
        "witnessed": t.witness_flags(),
    })
}

pub fn parse_abelian(text: &str) -> Result<AbelianGroup, Error> {
    match parse_group(text)? {
        NilpotentGroupDesc::Abelian(g) => Ok(g),
        other => Err(Error::Parse(format!("expected an Abelian group, got {other}"))),
    }
}

pub fn parse_group(text: &str) -> Result<NilpotentGroupDesc, Error> {
    let record: GroupRecord = serde_json::from_str(text).map_err(parse_err)?;
    match record {
        GroupRecord::Abelian { atoms } => abelian_from_atoms(&atoms).map(NilpotentGroupDesc::Abelian),
        GroupRecord::Tower { name: Some(name), layers: None, ab: None, witnessed: None } => {
            let entry = catalog::build(&name)?;
            match entry.tower() {
                Some(t) => Ok(NilpotentGroupDesc::Tower(t.clone())),
                None => Err(Error::Parse(format!("catalog entry `{name}` is not a tower"))),
            }
        }
        GroupRecord::Tower { name: None, layers: Some(layers), ab: Some(ab), witnessed } => {
            let layers = layers.iter().map(abelian_from_record).collect::<Result<Vec<_>, _>>()?;
            let ab = abelian_from_record(&ab)?;
            let flags = match witnessed {
                None | Some(Witness::All(true)) => vec![true; layers.len()],
                Some(Witness::All(false)) => vec![false; layers.len()],
                Some(Witness::PerLayer(flags)) => flags,
            };
            Tower::new(layers, ab, flags).map(NilpotentGroupDesc::Tower)
        }
        GroupRecord::Tower { .. } => {
            Err(Error::Parse("a tower needs either `name` alone or both `layers` and `ab`".into()))
        }
        GroupRecord::Finite { name: Some(name), table: None } => {
            let entry = catalog::build(&name)?;
            if entry.finite_group().is_none() {
                return Err(Error::Parse(format!("catalog entry `{name}` is not a finite table")));
            }
            Ok(entry.value)
        }
        GroupRecord::Finite { name: None, table: Some(rows) } => {
            let group = FiniteGroup::from_table(rows)?;
            let name = format!("table({})", group.order());
            Ok(NilpotentGroupDesc::finite(name, group))
        }
        GroupRecord::Finite { .. } => Err(Error::Parse("a finite group needs exactly one of `name` or `table`".into())),
    }
}

pub fn parse_profile(text: &str) -> Result<DimensionProfile, Error> {
    serde_json::from_str(text).map_err(parse_err)
}
