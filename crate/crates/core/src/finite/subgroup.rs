use super::FiniteGroup;
use crate::error::Error;

/// A subgroup, as a sorted set of element indices of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    fn from_mask(mask: &[bool]) -> Subgroup {
        Subgroup { elements: mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect() }
    }
}

/// Γ₁ = G, Γ_{n+1} = [Γ_n, G], down to the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    pub terms: Vec<Subgroup>,
    pub class: usize,
}

impl LowerCentralSeries {
    /// Γ_c, the last nontrivial term; the trivial subgroup for the trivial group.
    pub fn last_nontrivial(&self) -> &Subgroup {
        &self.terms[self.class.saturating_sub(1)]
    }
}

impl FiniteGroup {
    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity()] }
    }

    /// Subgroup generated by `gens`, by closure under right multiplication.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = gens.iter().copied().filter(|&g| g != self.identity()).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut mask = vec![false; self.order()];
        mask[self.identity()] = true;
        let mut stack = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        Subgroup::from_mask(&mask)
    }

    /// Whether an element set is closed under products (hence a subgroup, being finite and nonempty).
    pub fn is_closed(&self, elements: &[usize]) -> bool {
        let mut mask = vec![false; self.order()];
        for &x in elements {
            mask[x] = true;
        }
        !elements.is_empty() && elements.iter().all(|&a| elements.iter().all(|&b| mask[self.mul(a, b)]))
    }

    /// [A, B]: generated by all commutators [a, b], a ∈ A, b ∈ B.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.order()];
        for &x in a.elements() {
            for &y in b.elements() {
                mask[self.commutator(x, y)] = true;
            }
        }
        let gens: Vec<usize> = (0..self.order()).filter(|&i| mask[i]).collect();
        self.generate(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    pub fn center(&self) -> Subgroup {
        let elements = self
            .elements()
            .filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup { elements }
    }

    pub fn is_central(&self, h: &Subgroup) -> bool {
        h.elements().iter().all(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z)))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements()
            .all(|g| h.elements().iter().all(|&x| h.contains(self.mul(self.mul(self.inv(g), x), g))))
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Subgroup {
        let mut conj: Vec<usize> = Vec::new();
        for &x in gens {
            for g in self.elements() {
                conj.push(self.mul(self.mul(self.inv(g), x), g));
            }
        }
        self.generate(&conj)
    }

    pub fn lower_central_series(&self) -> Result<LowerCentralSeries, Error> {
        let g = self.whole();
        let mut terms = vec![g.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, &g);
            if next.order() == last.order() {
                return Err(Error::NotNilpotent { stable_order: next.order() });
            }
            terms.push(next);
        }
        let class = terms.len() - 1;
        Ok(LowerCentralSeries { terms, class })
    }

    pub fn nilpotency_class(&self) -> Result<usize, Error> {
        self.lower_central_series().map(|s| s.class)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().is_ok()
    }
}
