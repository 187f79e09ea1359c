//! Named example groups: finite tables and unitriangular towers over rings.
//!
//! Entries are addressed by expressions such as `quaternion8`, `ut3_mod(3,1)`,
//! `direct_product(quaternion8,cyclic(3))` or `heisenberg_ring(localized(5))`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::abelian::{AbelianAtom, AbelianGroup};
use crate::basis::BocksteinBasis;
use crate::error::Error;
use crate::finite::FiniteGroup;
use crate::nilpotent::{NilpotentGroupDesc, Tower};
use crate::primes::{Prime, PrimeSet};

/// Largest table the catalog will build.
pub const MAX_CATALOG_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metadata {
    /// `None` for infinite groups
    pub order: Option<u64>,
    /// `None` when not nilpotent
    pub class: Option<usize>,
    pub ab: AbelianGroup,
    pub expected_sigma: Option<BocksteinBasis>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<i64>,
    pub value: NilpotentGroupDesc,
    pub metadata: Metadata,
}

impl CatalogEntry {
    pub fn finite_group(&self) -> Option<&FiniteGroup> {
        match &self.value {
            NilpotentGroupDesc::Finite(c) => Some(&c.group),
            _ => None,
        }
    }

    pub fn tower(&self) -> Option<&Tower> {
        match &self.value {
            NilpotentGroupDesc::Tower(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.metadata.class.is_some()
    }
}

// ---------------------------------------------------------------------------
// finite constructors

pub fn cyclic(n: usize) -> Result<FiniteGroup, Error> {
    check_order(n)?;
    Ok(FiniteGroup::cyclic(n)?)
}

/// Z/n₁ ⊕ … ⊕ Z/n_k
pub fn abelian(orders: &[u64]) -> Result<FiniteGroup, Error> {
    let n: u64 = orders.iter().product();
    check_order(n as usize)?;
    let mut g = FiniteGroup::trivial();
    for &m in orders {
        g = FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(m as usize)?)?;
    }
    Ok(g)
}

pub fn quaternion8() -> FiniteGroup {
    type H = [i8; 4];
    fn qmul(x: &H, y: &H) -> H {
        let [a1, b1, c1, d1] = *x;
        let [a2, b2, c2, d2] = *y;
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    }
    let mut elems = Vec::new();
    for axis in 0..4 {
        for sign in [1i8, -1] {
            let mut e = [0i8; 4];
            e[axis] = sign;
            elems.push(e);
        }
    }
    FiniteGroup::from_elements(&elems, qmul).expect("quaternion group")
}

/// Symmetries of the square, as pairs (rotation, flip).
pub fn dihedral8() -> FiniteGroup {
    let elems: Vec<(u8, u8)> = (0..2).flat_map(|s| (0..4).map(move |r| (r, s))).collect();
    FiniteGroup::from_elements(&elems, |&(r1, s1), &(r2, s2)| {
        let r2 = if s1 == 1 { (4 - r2) % 4 } else { r2 };
        ((r1 + r2) % 4, (s1 + s2) % 2)
    })
    .expect("dihedral group")
}

/// S₃, the smallest non-nilpotent group.
pub fn symmetric3() -> FiniteGroup {
    let mut elems = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                if a != b && b != c && a != c {
                    elems.push([a, b, c]);
                }
            }
        }
    }
    FiniteGroup::from_elements(&elems, |x, y| [x[y[0] as usize], x[y[1] as usize], x[y[2] as usize]])
        .expect("symmetric group")
}

/// Upper unitriangular `dim × dim` matrices over Z/modulus.
pub fn unitriangular(dim: usize, modulus: u64) -> Result<FiniteGroup, Error> {
    let free = dim * (dim - 1) / 2;
    let order = modulus
        .checked_pow(free as u32)
        .filter(|&o| o <= MAX_CATALOG_ORDER as u64)
        .ok_or_else(|| Error::CatalogParam(format!("UT({dim}, Z/{modulus}) exceeds order {MAX_CATALOG_ORDER}")))?;
    let positions: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    let elems: Vec<Vec<u64>> = (0..order)
        .map(|mut code| {
            (0..free)
                .map(|_| {
                    let v = code % modulus;
                    code /= modulus;
                    v
                })
                .collect()
        })
        .collect();
    let entry = |m: &[u64], i: usize, j: usize| -> u64 {
        if i == j {
            1
        } else if i > j {
            0
        } else {
            m[positions.iter().position(|&q| q == (i, j)).expect("upper entry")]
        }
    };
    let mul = |x: &Vec<u64>, y: &Vec<u64>| -> Vec<u64> {
        positions
            .iter()
            .map(|&(i, j)| (i..=j).map(|k| entry(x, i, k) * entry(y, k, j)).sum::<u64>() % modulus)
            .collect()
    };
    Ok(FiniteGroup::from_elements(&elems, mul)?)
}

/// UT(3, Z/p^k), the Heisenberg group mod p^k.
pub fn ut3_mod(p: u64, k: u32) -> Result<FiniteGroup, Error> {
    let p = Prime::new(p)?;
    if k == 0 {
        return Err(Error::CatalogParam("ut3_mod needs k >= 1".into()));
    }
    unitriangular(3, p.get().pow(k))
}

/// UT(4, Z/2), order 64 and class 3.
pub fn ut4_mod2() -> FiniteGroup {
    unitriangular(4, 2).expect("order 64")
}

fn check_order(n: usize) -> Result<(), Error> {
    if n == 0 || n > MAX_CATALOG_ORDER {
        Err(Error::CatalogParam(format!("order {n} outside 1..={MAX_CATALOG_ORDER}")))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// towers

/// Γ-tower of UT(dim, R) for a ring atom R: layers R, R², …, R^{dim-1}
/// (innermost first) with abelianization R^{dim-1}.
pub fn unitriangular_ring_tower(dim: usize, ring: &AbelianAtom) -> Result<Tower, Error> {
    match ring {
        AbelianAtom::Pruefer(_) => return Err(Error::CatalogParam("Z/p^inf is not a ring".into())),
        _ if dim < 3 => return Err(Error::CatalogParam("need dimension >= 3".into())),
        _ => {}
    }
    let layers = (1..dim as u64).map(|m| AbelianGroup::power(ring.clone(), m)).collect::<Result<Vec<_>, _>>()?;
    let ab = AbelianGroup::power(ring.clone(), dim as u64 - 1)?;
    Tower::witnessed(layers, ab)
}

// ---------------------------------------------------------------------------
// name expressions

#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Int(i64),
    Call(String, Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Call(name, args) if args.is_empty() => f.write_str(name),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let start = {
            self.skip_ws();
            self.pos
        };
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if word.is_empty() {
            return Err(Error::Parse(format!("expected a name at offset {start}")));
        }
        if let Ok(n) = word.parse::<i64>() {
            return Ok(Expr::Int(n));
        }
        let mut args = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() != Some(b')') {
                loop {
                    args.push(self.expr()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => break,
                        _ => return Err(Error::Parse(format!("expected `,` or `)` at offset {}", self.pos))),
                    }
                }
            }
            self.pos += 1;
        }
        Ok(Expr::Call(word.to_string(), args))
    }
}

fn parse_expr(src: &str) -> Result<Expr, Error> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(e)
}

fn ints(name: &str, args: &[Expr]) -> Result<Vec<i64>, Error> {
    args.iter()
        .map(|a| match a {
            Expr::Int(n) => Ok(*n),
            other => Err(Error::CatalogParam(format!("{name}: expected an integer, got `{other}`"))),
        })
        .collect()
}

fn positive(name: &str, v: i64) -> Result<u64, Error> {
    u64::try_from(v).ok().filter(|&v| v > 0).ok_or_else(|| Error::CatalogParam(format!("{name}: {v} is not positive")))
}

fn prime_arg(name: &str, v: i64) -> Result<Prime, Error> {
    Prime::new(positive(name, v)?)
}

fn ring_atom(e: &Expr) -> Result<AbelianAtom, Error> {
    let Expr::Call(name, args) = e else {
        return Err(Error::CatalogParam(format!("expected a ring, got `{e}`")));
    };
    let nums = ints(name, args)?;
    let atom = match (name.as_str(), nums.as_slice()) {
        ("Z", []) => AbelianAtom::Z,
        ("Q", []) => AbelianAtom::Q,
        ("localized", [p]) => AbelianAtom::Localized(prime_arg(name, *p)?),
        ("cyclic", [p, k]) => AbelianAtom::Cyclic { p: prime_arg(name, *p)?, k: positive(name, *k)? as u32 },
        ("localized_away", ps) => {
            AbelianAtom::LocalizedAway(ps.iter().map(|&p| prime_arg(name, p)).collect::<Result<PrimeSet, _>>()?)
        }
        ("adic", ps) => AbelianAtom::Adic(ps.iter().map(|&p| prime_arg(name, p)).collect::<Result<PrimeSet, _>>()?),
        _ => return Err(Error::CatalogParam(format!("unknown ring `{e}`"))),
    };
    atom.canonical()
}

fn build_finite(e: &Expr) -> Result<(FiniteGroup, Vec<i64>), Error> {
    let Expr::Call(name, args) = e else {
        return Err(Error::UnknownCatalog(e.to_string()));
    };
    let g = match name.as_str() {
        "trivial" => FiniteGroup::trivial(),
        "cyclic" => match ints(name, args)?.as_slice() {
            [n] => cyclic(positive(name, *n)? as usize)?,
            _ => return Err(Error::CatalogParam("cyclic takes one order".into())),
        },
        "abelian" => {
            let orders = ints(name, args)?.into_iter().map(|v| positive(name, v)).collect::<Result<Vec<_>, _>>()?;
            abelian(&orders)?
        }
        "dihedral8" | "D8" => dihedral8(),
        "quaternion8" | "Q8" => quaternion8(),
        "symmetric3" | "S3" => symmetric3(),
        "ut4_mod2" => ut4_mod2(),
        "ut3_mod" => match ints(name, args)?.as_slice() {
            [p, k] => ut3_mod(positive(name, *p)?, positive(name, *k)? as u32)?,
            _ => return Err(Error::CatalogParam("ut3_mod takes (p, k)".into())),
        },
        "direct_product" => {
            let mut g = FiniteGroup::trivial();
            for a in args {
                let (h, _) = build_finite(a)?;
                check_order(g.order() * h.order())?;
                g = FiniteGroup::direct_product(&g, &h)?;
            }
            g
        }
        _ => return Err(Error::UnknownCatalog(e.to_string())),
    };
    let params = match name.as_str() {
        "direct_product" => Vec::new(),
        _ => ints(name, args)?,
    };
    Ok((g, params))
}

fn build_tower(e: &Expr) -> Result<Option<Tower>, Error> {
    let Expr::Call(name, args) = e else { return Ok(None) };
    let dim = match name.as_str() {
        "heisenberg_ring" => 3,
        "ut4_ring" => 4,
        _ => return Ok(None),
    };
    match args.as_slice() {
        [ring] => unitriangular_ring_tower(dim, &ring_atom(ring)?).map(Some),
        _ => Err(Error::CatalogParam(format!("{name} takes one ring"))),
    }
}

/// Build a catalog entry from its name expression. Finite entries carry
/// oracle-computed metadata.
pub fn build(name: &str) -> Result<CatalogEntry, Error> {
    let expr = parse_expr(name)?;
    let name = canonical(&expr).to_string();
    if let Some(tower) = build_tower(&expr)? {
        let metadata = Metadata {
            order: None,
            class: Some(tower.class()),
            ab: tower.ab().clone(),
            expected_sigma: None,
        };
        return Ok(CatalogEntry { name, params: Vec::new(), value: NilpotentGroupDesc::Tower(tower), metadata });
    }
    let (group, params) = build_finite(&expr)?;
    let class = group.nilpotency_class().ok();
    let (_, ab) = group.abelianization();
    let expected_sigma = group.sigma_finite().ok();
    let metadata = Metadata { order: Some(group.order() as u64), class, ab, expected_sigma };
    let value = NilpotentGroupDesc::finite(name.clone(), group);
    Ok(CatalogEntry { name, params, value, metadata })
}

/// Expand aliases so that equal groups print under one name.
fn canonical(e: &Expr) -> Expr {
    match e {
        Expr::Call(name, args) => {
            let name = match name.as_str() {
                "D8" => "dihedral8",
                "Q8" => "quaternion8",
                "S3" => "symmetric3",
                other => other,
            };
            Expr::Call(name.to_string(), args.iter().map(canonical).collect())
        }
        other => other.clone(),
    }
}

/// Names of the standard entries used by the verification suites.
pub const STANDARD_NAMES: &[&str] = &[
    "trivial",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(6)",
    "cyclic(12)",
    "cyclic(30)",
    "abelian(2,2)",
    "abelian(2,4)",
    "abelian(3,9)",
    "abelian(2,6)",
    "abelian(5,5)",
    "dihedral8",
    "quaternion8",
    "symmetric3",
    "ut3_mod(2,1)",
    "ut3_mod(3,1)",
    "ut3_mod(5,1)",
    "ut3_mod(7,1)",
    "ut3_mod(2,2)",
    "ut3_mod(2,3)",
    "ut4_mod2",
    "direct_product(quaternion8,cyclic(3))",
    "direct_product(dihedral8,cyclic(5))",
    "direct_product(ut3_mod(3,1),cyclic(2))",
    "direct_product(quaternion8,dihedral8)",
    "direct_product(dihedral8,ut3_mod(3,1))",
    "direct_product(ut3_mod(5,1),cyclic(4))",
    "heisenberg_ring(Z)",
    "heisenberg_ring(Q)",
    "heisenberg_ring(localized(2))",
    "heisenberg_ring(localized(5))",
    "heisenberg_ring(cyclic(3,1))",
    "heisenberg_ring(cyclic(2,2))",
    "heisenberg_ring(localized_away(2,3))",
    "heisenberg_ring(adic(3,7))",
    "ut4_ring(Z)",
    "ut4_ring(Q)",
    "ut4_ring(cyclic(2,1))",
];

/// Parameterized families, for listings.
pub const TEMPLATES: &[&str] = &[
    "cyclic(n)",
    "abelian(n1,...,nk)",
    "ut3_mod(p,k)",
    "direct_product(entry,...)",
    "heisenberg_ring(R)",
    "ut4_ring(R)",
];

/// The standard entries, built once.
pub fn standard() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| STANDARD_NAMES.iter().map(|n| build(n).expect("standard entry builds")).collect())
}

/// Standard finite nilpotent entries.
pub fn finite_nilpotent() -> impl Iterator<Item = &'static CatalogEntry> {
    standard().iter().filter(|e| e.finite_group().is_some() && e.is_nilpotent())
}

/// Standard tower entries.
pub fn towers() -> impl Iterator<Item = &'static CatalogEntry> {
    standard().iter().filter(|e| e.tower().is_some())
}

/// Primes dividing some standard finite order; kept to {2, 3, 5, 7}.
pub fn standard_primes() -> BTreeSet<u64> {
    finite_nilpotent()
        .flat_map(|e| crate::primes::factorize(e.metadata.order.unwrap_or(1)))
        .map(|(p, _)| p.get())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::abelianization;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn entry_examples() {
        let e = build("cyclic(6)").unwrap();
        assert_eq!((e.metadata.order, e.metadata.class), (Some(6), Some(1)));
        assert_eq!(e.metadata.ab, AbelianGroup::cyclic(6).unwrap());

        let e = build("quaternion8").unwrap();
        assert_eq!((e.metadata.order, e.metadata.class), (Some(8), Some(2)));
        assert_eq!(e.metadata.ab, AbelianGroup::from_prime_powers([(p(2), 1), (p(2), 1)]).unwrap());
        assert_eq!(build("Q8").unwrap().name, "quaternion8");

        let e = build("ut3_mod(3,1)").unwrap();
        assert_eq!((e.metadata.order, e.metadata.class), (Some(27), Some(2)));
        assert_eq!(e.metadata.ab, AbelianGroup::from_prime_powers([(p(3), 1), (p(3), 1)]).unwrap());

        let e = build("heisenberg_ring(Z)").unwrap();
        let t = e.tower().unwrap();
        assert_eq!(t.layers()[0], AbelianGroup::power(AbelianAtom::Z, 1).unwrap());
        assert_eq!(t.layers()[1], AbelianGroup::power(AbelianAtom::Z, 2).unwrap());
        assert_eq!(e.metadata.ab, AbelianGroup::power(AbelianAtom::Z, 2).unwrap());
        assert_eq!(e.metadata.class, Some(2));
    }

    #[test]
    fn unitriangular_commutator_formula() {
        // [x, y] in UT(3) is the corner entry a·b' - a'·b: check against the table.
        let g = ut3_mod(5, 1).unwrap();
        assert_eq!(g.center().order(), 5);
        assert_eq!(g.derived_subgroup(), g.center());
        assert!(g.elements().all(|x| g.element_order(x) <= 5));
    }

    #[test]
    fn errors() {
        assert!(matches!(build("nosuch"), Err(Error::UnknownCatalog(_))));
        assert!(matches!(build("ut3_mod(3,2)"), Err(Error::CatalogParam(_))));
        assert!(matches!(build("ut3_mod(4,1)"), Err(Error::NotPrime(4))));
        assert!(matches!(build("cyclic(1000)"), Err(Error::CatalogParam(_))));
        assert!(build("direct_product(ut3_mod(7,1),quaternion8)").is_err());
        assert!(build("cyclic(").is_err());
        assert!(build("heisenberg_ring(adic)").is_err());
    }

    #[test]
    fn standard_entries_match_oracle() {
        for e in standard() {
            if let Some(g) = e.finite_group() {
                assert!(g.order() <= MAX_CATALOG_ORDER);
                assert_eq!(e.metadata.order, Some(g.order() as u64));
                assert_eq!(e.metadata.class, g.nilpotency_class().ok(), "{}", e.name);
                assert_eq!(e.metadata.ab, abelianization(&e.value));
            }
        }
        assert_eq!(standard_primes(), BTreeSet::from([2, 3, 5, 7]));
    }

    #[test]
    fn ut3_is_central_extension_of_elementary_abelian() {
        for q in [2u64, 3, 5, 7] {
            let g = ut3_mod(q, 1).unwrap();
            let k = g.lower_central_series().unwrap().terms[1].clone();
            assert_eq!(k.order() as u64, q);
            assert!(g.is_central(&k));
            let quotient = g.quotient(&k).unwrap().group;
            assert_eq!(quotient.abelian_invariants().unwrap(), AbelianGroup::from_prime_powers([(p(q), 1); 2]).unwrap());
        }
    }

    #[test]
    fn canonical_names() {
        assert_eq!(build("direct_product( Q8 , cyclic(3) )").unwrap().name, "direct_product(quaternion8,cyclic(3))");
    }
}
