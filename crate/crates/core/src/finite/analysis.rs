use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteGroup, Subgroup};
use crate::abelian::AbelianGroup;
use crate::basis::BocksteinBasis;
use crate::error::Error;
use crate::primes::{factorize, primes_up_to, Prime, PrimeSet};

/// G/N with the projection G → G/N.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// projection[x] is the coset of x
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.elements().iter().map(|&x| self.projection[x]).collect();
        self.group.generate(&gens)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerMap {
    pub surjective: bool,
    pub injective: bool,
}

impl PowerMap {
    pub fn bijective(self) -> bool {
        self.surjective && self.injective
    }
}

impl FiniteGroup {
    /// Coset table of G/N for normal N.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, Error> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in self.elements() {
            if projection[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &m in n.elements() {
                projection[self.mul(x, m)] = id;
            }
        }
        let rows = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::from_table(rows)?;
        Ok(Quotient { group, projection })
    }

    /// H as a group in its own right, with the embedding into G.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let embedding = h.elements().to_vec();
        let rows = embedding
            .iter()
            .map(|&a| {
                embedding
                    .iter()
                    .map(|&b| embedding.binary_search(&self.mul(a, b)).expect("subgroup is closed"))
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_table(rows).expect("subgroup of a valid group");
        (group, embedding)
    }

    /// G/[G,G] together with its primary cyclic decomposition.
    pub fn abelianization(&self) -> (FiniteGroup, AbelianGroup) {
        let quotient = self.quotient(&self.derived_subgroup()).expect("derived subgroup is normal");
        let ab = quotient.group.abelian_invariants().expect("abelianization is Abelian");
        (quotient.group, ab)
    }

    /// Primary cyclic decomposition of a finite Abelian group: split into
    /// p-parts, then peel off a cyclic factor of maximal order at a time.
    pub fn abelian_invariants(&self) -> Result<AbelianGroup, Error> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let mut parts = Vec::new();
        for (p, _) in factorize(self.order() as u64) {
            let sylow: Vec<usize> = self.elements().filter(|&x| is_power_of(self.element_order(x), p)).collect();
            let mut peeled = self.trivial_subgroup();
            let mut gens = Vec::new();
            while peeled.order() < sylow.len() {
                // order of x modulo the peeled subgroup
                let rel_order = |x: usize| {
                    let mut y = x;
                    let mut k = 1usize;
                    while !peeled.contains(y) {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                };
                let (best, order) = sylow.iter().map(|&x| (x, rel_order(x))).max_by_key(|&(_, o)| o).expect("nonempty");
                parts.push((p, exponent_of(order, p)));
                gens.push(best);
                peeled = self.generate(&gens);
            }
        }
        AbelianGroup::from_prime_powers(parts)
    }

    /// x ↦ x^p over all elements.
    pub fn power_map(&self, p: Prime) -> PowerMap {
        let mut preimages = vec![0u32; self.order()];
        for x in self.elements() {
            preimages[self.pow(x, p.get())] += 1;
        }
        PowerMap {
            surjective: preimages.iter().all(|&c| c >= 1),
            injective: preimages.iter().all(|&c| c <= 1),
        }
    }

    /// σ(G) for a finite nilpotent group, evaluated on power maps: no Q, no
    /// Z_(p), and Z/p, Z/p^∞ exactly where x ↦ x^p fails to be onto / bijective.
    ///
    /// Primes above |G| cannot divide the exponent, so only primes up to |G| are scanned.
    pub fn sigma_finite(&self) -> Result<BocksteinBasis, Error> {
        self.lower_central_series()?;
        let mut zp = Vec::new();
        let mut zpinf = Vec::new();
        for p in primes_up_to(self.order() as u64) {
            let pm = self.power_map(p);
            if !pm.surjective {
                zp.push(p);
            }
            if !pm.bijective() {
                zpinf.push(p);
            }
        }
        Ok(BocksteinBasis {
            has_q: false,
            loc: PrimeSet::empty(),
            zp: PrimeSet::finite(zp),
            zpinf: PrimeSet::finite(zpinf),
        })
    }

    /// Elements of q-power order, for each prime q dividing |G|.
    pub fn primary_decomposition(&self) -> Result<Vec<(Prime, Subgroup)>, Error> {
        let mut parts = Vec::new();
        for (q, e) in factorize(self.order() as u64) {
            let elems: Vec<usize> = self.elements().filter(|&x| is_power_of(self.element_order(x), q)).collect();
            if !self.is_closed(&elems) {
                return Err(Error::PrimaryPartNotSubgroup(q.get()));
            }
            if elems.len() != q.get().pow(e) as usize {
                return Err(Error::PrimaryPartNotSubgroup(q.get()));
            }
            parts.push((q, self.generate(&elems)));
        }
        let product: usize = parts.iter().map(|(_, h)| h.order()).product();
        debug_assert_eq!(product, self.order());
        Ok(parts)
    }

    /// Reproducible cyclic subgroups of the center, followed by Γ_c when G is nilpotent.
    pub fn central_subgroup_samples(&self, seed: u64, count: usize) -> Vec<Subgroup> {
        let center = self.center();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<Subgroup> = (0..count)
            .map(|_| {
                let z = center.elements()[rng.gen_range(0..center.order())];
                self.generate(&[z])
            })
            .collect();
        if let Ok(series) = self.lower_central_series() {
            out.push(series.last_nontrivial().clone());
        }
        out
    }
}

fn is_power_of(mut n: usize, p: Prime) -> bool {
    let p = p.get() as usize;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// e with n = p^e, for n a power of p.
fn exponent_of(mut n: usize, p: Prime) -> u32 {
    let mut e = 0;
    while n > 1 {
        n /= p.get() as usize;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianAtom;
    use crate::catalog;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    /// Invariants of a finite Abelian p-group from the counts |A[p^j]| = p^{Σ min(e_i, j)}.
    fn invariants_by_counting(g: &FiniteGroup, q: Prime) -> Vec<u32> {
        let qq = q.get();
        let count = |j: u32| g.elements().filter(|&x| g.pow(x, qq.pow(j)) == g.identity()).count() as u64;
        let log = |n: u64| (n as f64).log(qq as f64).round() as i64;
        // r_j = number of invariants >= j
        let mut rs = Vec::new();
        for j in 1..=12 {
            let r = log(count(j)) - log(count(j - 1));
            if r == 0 {
                break;
            }
            rs.push(r);
        }
        let mut exps = Vec::new();
        for (j, &r) in rs.iter().enumerate() {
            let next = rs.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                exps.push(j as u32 + 1);
            }
        }
        exps.sort_unstable();
        exps
    }

    #[test]
    fn peeling_agrees_with_counting() {
        let cases = [
            FiniteGroup::cyclic(12).unwrap(),
            catalog::abelian(&[2, 4, 8]).unwrap(),
            catalog::abelian(&[3, 9, 6]).unwrap(),
            catalog::abelian(&[2, 2, 2, 4]).unwrap(),
            catalog::abelian(&[5, 25]).unwrap(),
        ];
        for g in &cases {
            let ab = g.abelian_invariants().unwrap();
            for (q, _) in factorize(g.order() as u64) {
                let mut from_peeling: Vec<u32> = ab
                    .atoms()
                    .iter()
                    .filter_map(|(a, m)| match a {
                        AbelianAtom::Cyclic { p, k } if *p == q => Some(std::iter::repeat_n(*k, *m as usize)),
                        _ => None,
                    })
                    .flatten()
                    .collect();
                from_peeling.sort_unstable();
                assert_eq!(from_peeling, invariants_by_counting(g, q), "{ab}");
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.quotient(&g.whole()).unwrap().group.order(), 1);
        let three = g.generate(&[2]);
        let q = g.quotient(&three).unwrap();
        assert_eq!(q.group.order(), 2);

        let q8 = catalog::quaternion8();
        let q = q8.quotient(&q8.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.elements().all(|x| q.group.element_order(x) <= 2));
        assert_eq!(q.group.abelian_invariants().unwrap(), catalog::abelian(&[2, 2]).unwrap().abelian_invariants().unwrap());
    }

    #[test]
    fn non_normal_quotient_rejected() {
        let s3 = catalog::symmetric3();
        let transposition = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.generate(&[transposition]);
        assert_eq!(s3.quotient(&h).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn abelianization_examples() {
        let two_two = AbelianGroup::from_prime_powers([(p(2), 1), (p(2), 1)]).unwrap();
        assert_eq!(catalog::quaternion8().abelianization().1, two_two);
        let z12 = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(z12.abelianization().1, AbelianGroup::cyclic(12).unwrap());
        let three_three = AbelianGroup::from_prime_powers([(p(3), 1), (p(3), 1)]).unwrap();
        assert_eq!(catalog::ut3_mod(3, 1).unwrap().abelianization().1, three_three);
    }

    #[test]
    fn power_map_examples() {
        assert_eq!(FiniteGroup::cyclic(3).unwrap().power_map(p(2)), PowerMap { surjective: true, injective: true });
        assert_eq!(catalog::quaternion8().power_map(p(2)), PowerMap { surjective: false, injective: false });
        assert_eq!(FiniteGroup::cyclic(2).unwrap().power_map(p(3)), PowerMap { surjective: true, injective: true });
    }

    #[test]
    fn sigma_finite_examples() {
        let s = catalog::quaternion8().sigma_finite().unwrap();
        assert_eq!(s.zp, PrimeSet::singleton(p(2)));
        assert_eq!(s.zpinf, PrimeSet::singleton(p(2)));
        assert!(s.loc.is_empty() && !s.has_q);
        let s = FiniteGroup::cyclic(6).unwrap().sigma_finite().unwrap();
        assert_eq!(s.zp, PrimeSet::finite([p(2), p(3)]));
        assert!(FiniteGroup::trivial().sigma_finite().unwrap().is_empty());
        assert!(catalog::symmetric3().sigma_finite().is_err());
    }

    #[test]
    fn primary_decomposition_examples() {
        let orders = |g: &FiniteGroup| {
            g.primary_decomposition().unwrap().iter().map(|(q, h)| (q.get(), h.order())).collect::<Vec<_>>()
        };
        assert_eq!(orders(&FiniteGroup::cyclic(30).unwrap()), vec![(2, 2), (3, 3), (5, 5)]);
        assert_eq!(orders(&catalog::quaternion8()), vec![(2, 8)]);
        assert_eq!(orders(&catalog::abelian(&[6, 2]).unwrap()), vec![(2, 4), (3, 3)]);
        assert!(matches!(catalog::symmetric3().primary_decomposition(), Err(Error::PrimaryPartNotSubgroup(2))));
    }

    #[test]
    fn central_samples() {
        let q8 = catalog::quaternion8();
        let center = q8.center();
        assert_eq!(center.order(), 2);
        let samples = q8.central_subgroup_samples(1, 2);
        assert_eq!(samples.len(), 3);
        assert!(samples.iter().all(|h| h.is_subset(&center)));
        assert_eq!(samples, q8.central_subgroup_samples(1, 2));

        let g = catalog::ut3_mod(3, 1).unwrap();
        for seed in 0..5 {
            assert!(g.central_subgroup_samples(seed, 3).iter().any(|h| *h == g.derived_subgroup()));
        }

        let a = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(a.center().order(), 12);
        for h in a.central_subgroup_samples(9, 5) {
            assert!(a.elements().any(|x| a.generate(&[x]) == h));
        }
    }
}
