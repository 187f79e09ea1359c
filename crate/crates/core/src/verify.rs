//! Named, seeded verification suites.
//!
//! Each suite runs exactly `trials` instances: its fixed catalog instances
//! first, then seed-generated ones. Every suite draws from its own ChaCha8
//! stream, so results depend only on (suite, trials, seed).

use std::fmt::{self, Display};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{atom_divisibility, sigma_abelian, AbelianAtom, AbelianGroup};
use crate::basis::BocksteinBasis;
use crate::catalog::{self, CatalogEntry};
use crate::dimension::{dim_abelian, sup_over_basis, validate_profile, DimensionProfile, ExtNat, Family};
use crate::error::Error;
use crate::finite::{FiniteGroup, Subgroup};
use crate::generate;
use crate::homology::corollary_report;
use crate::nilpotent::{abelianization, gamma_tower, predicates_nilpotent, sigma_nilpotent, NilpotentGroupDesc, Tower, Truth};
use crate::primes::{primes_up_to, Prime, PrimeSet};

pub const SUITES: &[&str] = &[
    "sigma-union",
    "sigma-subset-central",
    "ntd-epi",
    "ab-sigma",
    "pdiv-extension",
    "def-consistency",
    "homology-corollaries",
    "zl-zhat",
    "profile-rules",
];

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub seed: u64,
    pub elapsed_ms: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Display for SuiteResult {
    /// Stable text form; leaves out the elapsed time.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let ok = self.instances - self.failures.len();
        writeln!(f, "{status} {ok}/{} {} seed={}", self.instances, self.suite, self.seed)?;
        for x in &self.failures {
            writeln!(f, "  {}: expected {}, actual {}", x.instance, x.expected, x.actual)?;
        }
        Ok(())
    }
}

/// The outcome of one instance: what was expected, what was found.
struct Check {
    expected: String,
    actual: String,
    ok: bool,
}

impl Check {
    fn eq<T: PartialEq + Display>(expected: &T, actual: &T) -> Check {
        Check { expected: expected.to_string(), actual: actual.to_string(), ok: expected == actual }
    }

    fn holds(what: &str, ok: bool, detail: impl Display) -> Check {
        Check { expected: what.to_string(), actual: detail.to_string(), ok }
    }

    fn all(checks: Vec<Check>) -> Check {
        match checks.into_iter().find(|c| !c.ok) {
            Some(bad) => bad,
            None => Check { expected: String::new(), actual: String::new(), ok: true },
        }
    }
}

type Instance<'a> = Box<dyn FnOnce() -> Result<Check, Error> + 'a>;

struct Runner {
    instances: usize,
    failures: Vec<Failure>,
}

impl Runner {
    fn run(&mut self, name: String, f: impl FnOnce() -> Result<Check, Error>) {
        self.instances += 1;
        match f() {
            Ok(c) if c.ok => {}
            Ok(c) => self.failures.push(Failure { instance: name, expected: c.expected, actual: c.actual }),
            Err(e) => self.failures.push(Failure { instance: name, expected: "no error".into(), actual: e.to_string() }),
        }
    }
}

/// Run one suite by name.
pub fn run_suite(suite: &str, trials: usize, seed: u64) -> Result<SuiteResult, Error> {
    let index = SUITES.iter().position(|s| *s == suite).ok_or_else(|| Error::UnknownSuite(suite.to_string()))?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let fixed: Vec<(String, Instance)> = match suite {
        "sigma-union" => sigma_union_fixed(),
        "ab-sigma" => ab_sigma_fixed(),
        "pdiv-extension" => pdiv_fixed(),
        "homology-corollaries" => homology_fixed(),
        "profile-rules" => profile_fixed(),
        _ => Vec::new(),
    };
    let mut runner = Runner { instances: 0, failures: Vec::new() };
    let fixed_count = fixed.len().min(trials);
    for (name, f) in fixed.into_iter().take(trials) {
        runner.run(name, f);
    }
    for i in fixed_count..trials {
        let (name, f) = random_instance(suite, i, &mut rng);
        runner.run(name, f);
    }
    runner.failures.sort();
    Ok(SuiteResult {
        suite: suite.to_string(),
        instances: runner.instances,
        failures: runner.failures,
        seed,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn run_all(trials: usize, seed: u64) -> Vec<SuiteResult> {
    SUITES.iter().map(|s| run_suite(s, trials, seed).expect("listed suite")).collect()
}

fn random_instance<'a>(suite: &str, i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    match suite {
        "sigma-union" => sigma_union_random(i, rng),
        "sigma-subset-central" => subset_central_random(i, rng),
        "ntd-epi" => ntd_epi_random(i, rng),
        "ab-sigma" => ab_sigma_random(i, rng),
        "pdiv-extension" => pdiv_random(i, rng),
        "def-consistency" => def_consistency_random(i, rng),
        "homology-corollaries" => homology_random(i, rng),
        "zl-zhat" => zl_zhat_random(i, rng),
        "profile-rules" => profile_random(i, rng),
        _ => unreachable!("suite names are checked"),
    }
}

// ---------------------------------------------------------------------------
// shared pieces

fn subgroup_sigma(g: &FiniteGroup, h: &Subgroup) -> Result<BocksteinBasis, Error> {
    g.subgroup_as_group(h).0.sigma_finite()
}

fn quotient_sigma(g: &FiniteGroup, n: &Subgroup) -> Result<BocksteinBasis, Error> {
    g.quotient(n)?.group.sigma_finite()
}

/// σ(G) against σ(Γ_c) ∪ σ(G/Γ_c), and against the union over the Γ-tower.
fn gamma_split_check(g: &FiniteGroup) -> Result<Check, Error> {
    let sigma = g.sigma_finite()?;
    let k = g.lower_central_series()?.last_nontrivial().clone();
    let union = subgroup_sigma(g, &k)?.union(&quotient_sigma(g, &k)?);
    let mut checks = vec![Check::eq(&sigma, &union)];
    if let Some(t) = gamma_tower(g)? {
        checks.push(Check::eq(&sigma, &sigma_nilpotent(&NilpotentGroupDesc::Tower(t))?));
    }
    Ok(Check::all(checks))
}

fn tower_split_check(t: &Tower) -> Result<Check, Error> {
    let sigma = sigma_nilpotent(&NilpotentGroupDesc::Tower(t.clone()))?;
    let (k, rest) = t.split();
    let union = sigma_abelian(&k).union(&sigma_nilpotent(&rest)?);
    Ok(Check::eq(&sigma, &union))
}

/// σ_NTD(G) = σ_NTD(Ab(G)) and σ(Ab(G)) ⊆ σ(G).
fn ab_check(g: &NilpotentGroupDesc) -> Result<Check, Error> {
    let sigma = sigma_nilpotent(g)?;
    let ab = sigma_abelian(&abelianization(g));
    Ok(Check::all(vec![
        Check::eq(&sigma.ntd(), &ab.ntd()),
        Check::holds("σ(Ab) ⊆ σ(G)", ab.is_subset(&sigma), format!("σ(Ab) = {ab}, σ(G) = {sigma}")),
    ]))
}

fn truth_check(what: &str, layer: Truth, definition: bool) -> Check {
    Check {
        expected: format!("{what} {definition}"),
        actual: format!("{what} {layer:?}"),
        ok: layer == Truth::from(definition),
    }
}

/// The layer rule on a witnessed tower against definition-level predicates,
/// plus the upward-only behavior of the same layers without witnesses.
fn pdiv_check(t: &Tower, p: Prime, torsion: bool, p_div: bool, unique: bool) -> Result<Check, Error> {
    let witnessed = predicates_nilpotent(&NilpotentGroupDesc::Tower(t.clone()), p)?;
    let bare = Tower::new(t.layers().to_vec(), t.ab().clone(), vec![false; t.class()])?;
    let bare = predicates_nilpotent(&NilpotentGroupDesc::Tower(bare), p)?;
    let upward = |t: Truth, def: bool| if def { t == Truth::True } else { t == Truth::Indeterminate };
    Ok(Check::all(vec![
        truth_check("torsion", witnessed.torsion, torsion),
        truth_check("p-divisible", witnessed.p_divisible, p_div),
        truth_check("uniquely p-divisible", witnessed.uniquely_p_divisible, unique),
        Check::holds(
            "unwitnessed layers decide only upward",
            upward(bare.p_divisible, p_div) && upward(bare.uniquely_p_divisible, unique),
            format!("{:?}, {:?}", bare.p_divisible, bare.uniquely_p_divisible),
        ),
    ]))
}

fn finite_pdiv_check(g: &FiniteGroup, p: Prime) -> Result<Check, Error> {
    let t = gamma_tower(g)?.ok_or(Error::InvalidTower("class below 2".into()))?;
    let pm = g.power_map(p);
    pdiv_check(&t, p, true, pm.surjective, pm.bijective())
}

/// UT(n, R) inherits torsion and (unique) p-divisibility from the ring R.
fn ring_pdiv_check(r: &AbelianAtom, t: &Tower, p: Prime) -> Result<Check, Error> {
    let d = atom_divisibility(r, p);
    pdiv_check(t, p, r.is_torsion(), d.p_divisible, d.uniquely_p_divisible)
}

fn corollary_check(g: &NilpotentGroupDesc, p: Prime) -> Result<Check, Error> {
    let r = corollary_report(g, p)?;
    Ok(Check::holds("no failed corollary", !r.verdicts.any_failed(), format!("{:?}", r.verdicts)))
}

fn entry_desc(e: &CatalogEntry) -> String {
    e.name.clone()
}

// ---------------------------------------------------------------------------
// sigma-union

fn sigma_union_fixed<'a>() -> Vec<(String, Instance<'a>)> {
    let mut out: Vec<(String, Instance)> = Vec::new();
    for e in catalog::finite_nilpotent().filter(|e| e.metadata.class >= Some(2)) {
        let g = e.finite_group().expect("finite entry");
        out.push((entry_desc(e), Box::new(move || gamma_split_check(g))));
    }
    for e in catalog::towers() {
        let t = e.tower().expect("tower entry");
        out.push((entry_desc(e), Box::new(move || tower_split_check(t))));
    }
    out
}

fn sigma_union_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    if rng.gen_bool(0.5) {
        let e = generate::nonabelian_entry(rng);
        let g = e.finite_group().expect("finite entry");
        (format!("#{i} {}", e.name), Box::new(move || gamma_split_check(g)))
    } else {
        let (r, t) = generate::ring_tower(rng);
        (format!("#{i} UT({}, {r})", t.class() + 1), Box::new(move || tower_split_check(&t)))
    }
}

// ---------------------------------------------------------------------------
// sigma-subset-central

fn subset_central_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    let e = generate::finite_entry(rng);
    let g = e.finite_group().expect("finite entry");
    let center = g.center();
    let z = center.elements()[rng.gen_range(0..center.order())];
    let k = if rng.gen_bool(0.2) { center } else { g.generate(&[z]) };
    let name = format!("#{i} {} / <central, order {}>", e.name, k.order());
    (
        name,
        Box::new(move || {
            let sigma = g.sigma_finite()?;
            let union = subgroup_sigma(g, &k)?.union(&quotient_sigma(g, &k)?);
            Ok(Check::holds("σ(G) ⊆ σ(K) ∪ σ(G/K)", sigma.is_subset(&union), format!("{sigma} vs {union}")))
        }),
    )
}

// ---------------------------------------------------------------------------
// ntd-epi

/// A random epimorphic image of an atom; `None` is the zero quotient.
fn atom_image<R: Rng>(a: &AbelianAtom, rng: &mut R) -> Option<AbelianAtom> {
    let cyclic = |p: Prime, rng: &mut R| Some(AbelianAtom::Cyclic { p, k: rng.gen_range(1..=3) });
    let member = |l: &PrimeSet, rng: &mut R| {
        let inside: Vec<Prime> = match l {
            PrimeSet::Finite(s) => s.iter().copied().collect(),
            PrimeSet::Cofinite(_) => generate::SMALL_PRIMES.iter().map(|&p| Prime::new(p).expect("prime")).filter(|&p| l.contains(p)).collect(),
        };
        inside.choose(rng).copied()
    };
    if rng.gen_bool(0.15) {
        return None;
    }
    match a {
        AbelianAtom::Z => match rng.gen_range(0..2) {
            0 => Some(AbelianAtom::Z),
            _ => cyclic(generate::small_prime(rng), rng),
        },
        // Q / Z_(p) is Z/p^∞
        AbelianAtom::Q => match rng.gen_range(0..2) {
            0 => Some(AbelianAtom::Q),
            _ => Some(AbelianAtom::Pruefer(generate::small_prime(rng))),
        },
        AbelianAtom::Cyclic { p, k } => Some(AbelianAtom::Cyclic { p: *p, k: rng.gen_range(1..=*k) }),
        AbelianAtom::Pruefer(p) => Some(AbelianAtom::Pruefer(*p)),
        AbelianAtom::Localized(p) => match rng.gen_range(0..2) {
            0 => Some(a.clone()),
            _ => cyclic(*p, rng),
        },
        AbelianAtom::LocalizedAway(l) => match member(l, rng) {
            Some(p) if rng.gen_bool(0.7) => cyclic(p, rng),
            _ => Some(a.clone()),
        },
        // Ẑ_l projects onto each factor Ẑ_p and onto Z/p^k
        AbelianAtom::Adic(l) => match (member(l, rng), rng.gen_range(0..3)) {
            (Some(p), 0) => Some(AbelianAtom::Adic(PrimeSet::singleton(p))),
            (Some(p), 1) => cyclic(p, rng),
            _ => Some(a.clone()),
        },
    }
}

fn ntd_epi_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    if rng.gen_bool(0.5) {
        let e = generate::finite_entry(rng);
        let g = e.finite_group().expect("finite entry");
        let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..g.order())).collect();
        let n = g.normal_closure(&gens);
        let name = format!("#{i} {} / normal subgroup of order {}", e.name, n.order());
        (
            name,
            Box::new(move || {
                let sigma = g.sigma_finite()?.ntd();
                let image = quotient_sigma(g, &n)?.ntd();
                Ok(Check::holds("σ_NTD(G/N) ⊆ σ_NTD(G)", image.is_subset(&sigma), format!("{image} vs {sigma}")))
            }),
        )
    } else {
        let g = generate::abelian(rng);
        let images: Vec<(AbelianAtom, u64)> =
            g.atoms().iter().filter_map(|(a, m)| atom_image(a, rng).map(|b| (b, *m))).collect();
        let h = AbelianGroup::new(images).expect("canonical images");
        (
            format!("#{i} {g} ->> {h}"),
            Box::new(move || {
                let sigma = sigma_abelian(&g).ntd();
                let image = sigma_abelian(&h).ntd();
                Ok(Check::holds("σ_NTD(I) ⊆ σ_NTD(G)", image.is_subset(&sigma), format!("{image} vs {sigma}")))
            }),
        )
    }
}

// ---------------------------------------------------------------------------
// ab-sigma

fn ab_sigma_fixed<'a>() -> Vec<(String, Instance<'a>)> {
    catalog::finite_nilpotent()
        .chain(catalog::towers())
        .map(|e| (entry_desc(e), Box::new(move || ab_check(&e.value)) as Instance))
        .collect()
}

fn ab_sigma_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    match rng.gen_range(0..3) {
        0 => {
            let e = generate::finite_entry(rng);
            (format!("#{i} {}", e.name), Box::new(move || ab_check(&e.value)))
        }
        1 => {
            let (r, t) = generate::ring_tower(rng);
            let name = format!("#{i} UT({}, {r})", t.class() + 1);
            (name, Box::new(move || ab_check(&NilpotentGroupDesc::Tower(t))))
        }
        _ => {
            let g = generate::abelian(rng);
            (format!("#{i} {g}"), Box::new(move || ab_check(&NilpotentGroupDesc::Abelian(g))))
        }
    }
}

// ---------------------------------------------------------------------------
// pdiv-extension

fn pdiv_fixed<'a>() -> Vec<(String, Instance<'a>)> {
    let mut out: Vec<(String, Instance)> = Vec::new();
    for e in catalog::finite_nilpotent().filter(|e| e.metadata.class >= Some(2)) {
        let g = e.finite_group().expect("finite entry");
        for &p in &generate::SMALL_PRIMES {
            let p = Prime::new(p).expect("prime");
            out.push((format!("{} p={p}", e.name), Box::new(move || finite_pdiv_check(g, p))));
        }
    }
    out
}

fn pdiv_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    let p = generate::small_prime(rng);
    if rng.gen_bool(0.5) {
        let e = generate::nonabelian_entry(rng);
        let g = e.finite_group().expect("finite entry");
        (format!("#{i} {} p={p}", e.name), Box::new(move || finite_pdiv_check(g, p)))
    } else {
        let (r, t) = generate::ring_tower(rng);
        let name = format!("#{i} UT({}, {r}) p={p}", t.class() + 1);
        (name, Box::new(move || ring_pdiv_check(&r, &t, p)))
    }
}

// ---------------------------------------------------------------------------
// def-consistency

fn def_consistency_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    let g = generate::abelian(rng);
    (
        format!("#{i} {g}"),
        Box::new(move || {
            let by_atoms = sigma_abelian(&g);
            let by_predicates = sigma_nilpotent(&NilpotentGroupDesc::Abelian(g))?;
            Ok(Check::all(vec![
                Check::eq(&by_atoms, &by_predicates),
                Check::holds("loc ⊆ zp ⊆ zpinf", by_atoms.chain_holds(), &by_atoms),
            ]))
        }),
    )
}

// ---------------------------------------------------------------------------
// homology-corollaries

fn homology_fixed<'a>() -> Vec<(String, Instance<'a>)> {
    let mut out: Vec<(String, Instance)> = Vec::new();
    for e in catalog::standard().iter().filter(|e| e.is_nilpotent()) {
        for &p in &generate::SMALL_PRIMES {
            let p = Prime::new(p).expect("prime");
            out.push((format!("{} p={p}", e.name), Box::new(move || corollary_check(&e.value, p))));
        }
    }
    out
}

fn homology_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    let p = generate::small_prime(rng);
    let g = if rng.gen_bool(0.5) {
        generate::finite_entry(rng).value.clone()
    } else {
        NilpotentGroupDesc::Abelian(generate::fg_abelian(rng))
    };
    (format!("#{i} {g} p={p}"), Box::new(move || corollary_check(&g, p)))
}

// ---------------------------------------------------------------------------
// zl-zhat

fn zl_zhat_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    let l = generate::prime_set(rng, i % 2 == 1);
    let d = generate::valid_profile(rng);
    (
        format!("#{i} l = {l}"),
        Box::new(move || {
            let zl = AbelianGroup::atom(AbelianAtom::LocalizedAway(l.clone()))?;
            let zhat = AbelianGroup::atom(AbelianAtom::Adic(l))?;
            Ok(Check::all(vec![
                Check::eq(&sigma_abelian(&zl), &sigma_abelian(&zhat)),
                Check::eq(&dim_abelian(&d, &zl), &dim_abelian(&d, &zhat)),
            ]))
        }),
    )
}

// ---------------------------------------------------------------------------
// profile-rules

fn constant_profile(q: u64, zp: u64, zpinf: u64, loc: u64) -> DimensionProfile {
    DimensionProfile {
        q: ExtNat::Fin(q),
        zp: Family::constant(ExtNat::Fin(zp)),
        zpinf: Family::constant(ExtNat::Fin(zpinf)),
        loc: Family::constant(ExtNat::Fin(loc)),
    }
}

/// D(Q) = 1 and D(Z/2^∞) = D(Z/2) = 2, with D(Z_(2)) given.
pub fn forced_equality_profile(loc2: u64) -> DimensionProfile {
    let two = Prime::new(2).expect("prime");
    let mut d = constant_profile(1, 1, 1, 1);
    d.zp = d.zp.with(two, ExtNat::Fin(2));
    d.zpinf = d.zpinf.with(two, ExtNat::Fin(2));
    d.loc = d.loc.with(two, ExtNat::Fin(loc2));
    d
}

fn violations_text(d: &DimensionProfile) -> String {
    let v: Vec<String> = validate_profile(d).iter().map(ToString::to_string).collect();
    if v.is_empty() {
        "valid".into()
    } else {
        v.join("; ")
    }
}

fn profile_fixed<'a>() -> Vec<(String, Instance<'a>)> {
    let expect = |d: DimensionProfile, want: &'static str| -> Instance<'a> {
        Box::new(move || Ok(Check::eq(&want.to_string(), &violations_text(&d))))
    };
    vec![
        ("all-zero profile".into(), expect(constant_profile(0, 0, 0, 0), "valid")),
        ("forced equality violated".into(), expect(forced_equality_profile(2), "R4 at p=2: expected loc=3")),
        ("forced equality met".into(), expect(forced_equality_profile(3), "valid")),
    ]
}

/// Brute-force supremum over σ: primes up to 100 read one by one, with the
/// family default standing in for the primes beyond.
fn brute_sup(d: &DimensionProfile, b: &BocksteinBasis) -> ExtNat {
    let small = primes_up_to(100);
    let mut best = if b.has_q { d.q } else { ExtNat::ZERO };
    for (family, set) in [(&d.loc, &b.loc), (&d.zp, &b.zp), (&d.zpinf, &b.zpinf)] {
        for &p in small.iter().filter(|&&p| set.contains(p)) {
            best = best.max(family.at(p));
        }
        if matches!(set, PrimeSet::Cofinite(_)) {
            best = best.max(family.default);
        }
    }
    best
}

fn profile_random<'a>(i: usize, rng: &mut ChaCha8Rng) -> (String, Instance<'a>) {
    let d = generate::valid_profile(rng);
    let g = generate::abelian(rng);
    let h = generate::abelian(rng);
    let nilpotent = if rng.gen_bool(0.5) {
        generate::finite_entry(rng).value.clone()
    } else {
        NilpotentGroupDesc::Tower(generate::ring_tower(rng).1)
    };
    (
        format!("#{i} profile on {g} and {h}"),
        Box::new(move || {
            let z = sigma_abelian(&AbelianGroup::atom(AbelianAtom::Z)?);
            let mut checks = vec![
                Check::eq(&"valid".to_string(), &violations_text(&d)),
                Check::eq(&brute_sup(&d, &z), &sup_over_basis(&d, &z)),
                Check::eq(&brute_sup(&d, &sigma_abelian(&g)), &dim_abelian(&d, &g)),
                Check::eq(&dim_abelian(&d, &g).max(dim_abelian(&d, &h)), &dim_abelian(&d, &g.direct_sum(&h))),
            ];
            let over_ab = sup_over_basis(&d, &sigma_abelian(&abelianization(&nilpotent)));
            let over_g = sup_over_basis(&d, &sigma_nilpotent(&nilpotent)?);
            checks.push(Check::holds("dim over σ(Ab) <= dim over σ(G)", over_ab <= over_g, format!("{over_ab} vs {over_g}")));
            for p in d.mentioned_primes() {
                let n = d.zpinf.at(p);
                if d.q <= ExtNat::Fin(1) && n >= ExtNat::Fin(2) {
                    checks.push(Check::eq(&n.succ(), &d.loc.at(p)));
                }
            }
            Ok(Check::all(checks))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert_eq!(run_suite("nosuch", 1, 0).unwrap_err(), Error::UnknownSuite("nosuch".into()));
    }

    #[test]
    fn trials_fix_the_instance_count() {
        for suite in SUITES {
            let r = run_suite(suite, 7, 3).unwrap();
            assert_eq!(r.instances, 7, "{suite}");
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn text_is_deterministic() {
        let a = run_suite("ntd-epi", 40, 11).unwrap().to_string();
        let b = run_suite("ntd-epi", 40, 11).unwrap().to_string();
        assert_eq!(a, b);
        assert_eq!(a, "PASS 40/40 ntd-epi seed=11\n");
    }

    #[test]
    fn failures_are_reported() {
        let r = SuiteResult {
            suite: "demo".into(),
            instances: 2,
            failures: vec![Failure { instance: "x".into(), expected: "1".into(), actual: "2".into() }],
            seed: 0,
            elapsed_ms: 0,
        };
        assert_eq!(r.to_string(), "FAIL 1/2 demo seed=0\n  x: expected 1, actual 2\n");
    }

    #[test]
    fn brute_sup_sees_overrides() {
        let d = forced_equality_profile(3);
        let z = sigma_abelian(&AbelianGroup::atom(AbelianAtom::Z).unwrap());
        assert_eq!(brute_sup(&d, &z), ExtNat::Fin(3));
        assert_eq!(brute_sup(&d, &BocksteinBasis::empty()), ExtNat::ZERO);
    }
}
