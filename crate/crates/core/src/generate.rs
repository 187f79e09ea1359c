//! Seeded instance generators for the verification suites.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian::{AbelianAtom, AbelianGroup};
use crate::catalog::{self, CatalogEntry};
use crate::dimension::{DimensionProfile, ExtNat, Family};
use crate::nilpotent::Tower;
use crate::primes::{Prime, PrimeSet};

pub const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Primes a generated prime set may mention.
const SET_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn prime(n: u64) -> Prime {
    Prime::new(n).expect("table of primes")
}

pub fn small_prime<R: Rng>(rng: &mut R) -> Prime {
    prime(*SMALL_PRIMES.choose(rng).expect("nonempty"))
}

/// A nonempty finite set, or a cofinite set, over a few small primes.
pub fn prime_set<R: Rng>(rng: &mut R, cofinite: bool) -> PrimeSet {
    let mut listed: Vec<Prime> = SET_PRIMES.iter().filter(|_| rng.gen_bool(0.4)).map(|&p| prime(p)).collect();
    if cofinite {
        PrimeSet::all_except(listed)
    } else {
        if listed.is_empty() {
            listed.push(prime(*SET_PRIMES.choose(rng).expect("nonempty")));
        }
        PrimeSet::finite(listed)
    }
}

pub fn atom<R: Rng>(rng: &mut R) -> AbelianAtom {
    let p = small_prime(rng);
    let cofinite = rng.gen_bool(0.5);
    let raw = match rng.gen_range(0..7) {
        0 => AbelianAtom::Z,
        1 => AbelianAtom::Q,
        2 => AbelianAtom::Cyclic { p, k: rng.gen_range(1..=3) },
        3 => AbelianAtom::Pruefer(p),
        4 => AbelianAtom::Localized(p),
        5 => AbelianAtom::LocalizedAway(prime_set(rng, cofinite)),
        _ => AbelianAtom::Adic(prime_set(rng, cofinite)),
    };
    raw.canonical().expect("generated atoms are well formed")
}

/// One to six atoms with multiplicities up to 3.
pub fn abelian<R: Rng>(rng: &mut R) -> AbelianGroup {
    let n = rng.gen_range(1..=6);
    let atoms: Vec<_> = (0..n).map(|_| (atom(rng), rng.gen_range(1..=3))).collect();
    AbelianGroup::new(atoms).expect("canonical atoms")
}

/// A finitely generated Abelian group Z^r + finite part, possibly trivial.
pub fn fg_abelian<R: Rng>(rng: &mut R) -> AbelianGroup {
    let mut atoms = Vec::new();
    let rank = rng.gen_range(0..=2);
    if rank > 0 {
        atoms.push((AbelianAtom::Z, rank));
    }
    for _ in 0..rng.gen_range(0..=3) {
        atoms.push((AbelianAtom::Cyclic { p: small_prime(rng), k: rng.gen_range(1..=3) }, 1));
    }
    AbelianGroup::new(atoms).expect("canonical atoms")
}

/// A ring usable as matrix coefficients: anything but a Prüfer group.
pub fn ring<R: Rng>(rng: &mut R) -> AbelianAtom {
    loop {
        let a = atom(rng);
        if !matches!(a, AbelianAtom::Pruefer(_)) {
            return a;
        }
    }
}

/// The Γ-tower of UT(3, R) or UT(4, R) for a random ring R.
pub fn ring_tower<R: Rng>(rng: &mut R) -> (AbelianAtom, Tower) {
    let r = ring(rng);
    let dim = if rng.gen_bool(0.7) { 3 } else { 4 };
    let t = catalog::unitriangular_ring_tower(dim, &r).expect("rings give towers");
    (r, t)
}

/// Extra finite products beyond the standard catalog.
const EXTRA_FINITE: &[&str] = &[
    "direct_product(quaternion8,cyclic(4))",
    "direct_product(dihedral8,cyclic(9))",
    "direct_product(ut3_mod(3,1),cyclic(3))",
    "direct_product(quaternion8,cyclic(7))",
    "direct_product(ut3_mod(2,2),cyclic(3))",
    "direct_product(dihedral8,dihedral8)",
];

/// Standard finite nilpotent entries plus a few extra products.
pub fn finite_pool() -> &'static [CatalogEntry] {
    static POOL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool: Vec<CatalogEntry> = catalog::finite_nilpotent().cloned().collect();
        pool.extend(EXTRA_FINITE.iter().map(|n| catalog::build(n).expect("pool entry builds")));
        pool
    })
}

pub fn finite_entry<R: Rng>(rng: &mut R) -> &'static CatalogEntry {
    finite_pool().choose(rng).expect("nonempty pool")
}

/// A pool entry of class at least 2.
pub fn nonabelian_entry<R: Rng>(rng: &mut R) -> &'static CatalogEntry {
    loop {
        let e = finite_entry(rng);
        if e.metadata.class.is_some_and(|c| c >= 2) {
            return e;
        }
    }
}

fn ext<R: Rng>(rng: &mut R, lo: ExtNat, hi: ExtNat) -> ExtNat {
    match (lo, hi) {
        (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(rng.gen_range(a..=b)),
        _ if rng.gen_bool(0.5) => lo,
        _ => hi,
    }
}

/// Values (zp, zpinf, loc) at one prime satisfying every per-prime rule for
/// the given D(Q).
fn prime_values<R: Rng>(rng: &mut R, q: ExtNat) -> (ExtNat, ExtNat, ExtNat) {
    let zpinf = if rng.gen_bool(0.05) { ExtNat::Inf } else { ExtNat::Fin(rng.gen_range(1..=4)) };
    let zp = ext(rng, zpinf, zpinf.succ());
    let loc = if zpinf > q { zpinf.succ() } else { ext(rng, q.max(zp), q.max(zpinf.succ())) };
    (zp, zpinf, loc)
}

/// A profile passing every rule, with overrides at some of the small primes.
pub fn valid_profile<R: Rng>(rng: &mut R) -> DimensionProfile {
    let q = if rng.gen_bool(0.05) { ExtNat::Inf } else { ExtNat::Fin(rng.gen_range(1..=3)) };
    let (zp, zpinf, loc) = prime_values(rng, q);
    let mut d = DimensionProfile { q, zp: Family::constant(zp), zpinf: Family::constant(zpinf), loc: Family::constant(loc) };
    for p in SMALL_PRIMES.iter().map(|&p| prime(p)) {
        if rng.gen_bool(0.5) {
            let (zp, zpinf, loc) = prime_values(rng, q);
            d.zp.overrides.insert(p, zp);
            d.zpinf.overrides.insert(p, zpinf);
            d.loc.overrides.insert(p, loc);
        }
    }
    d
}
