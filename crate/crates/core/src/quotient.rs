//! Factor groups as permutation groups on right cosets.

use crate::error::{Error, Result};
use crate::group::{close_group, GroupHandle};
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// `G → G/N` realized as the action of `G` on the right cosets `Ng`.
///
/// Cosets are numbered by their least element under the canonical element
/// order, which is also the coset representative.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: GroupHandle,
    kernel: Subgroup,
    image: GroupHandle,
    /// source element index -> coset number
    coset_of: Vec<u32>,
    /// coset number -> least source element index in the coset
    section: Vec<u32>,
    /// image element index -> coset number
    coset_of_image: Vec<u32>,
}

impl QuotientMap {
    pub fn new(kernel: &Subgroup, element_cap: usize) -> Result<QuotientMap> {
        if !kernel.is_normal() {
            return Err(Error::NotNormal(format!(
                "kernel of order {} is not normal",
                kernel.order()
            )));
        }
        let source = kernel.parent().clone();
        let n = source.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut section = Vec::with_capacity(kernel.index());
        let kernel_elems = kernel.indices();
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let c = section.len() as u32;
            section.push(g);
            for &k in &kernel_elems {
                coset_of[source.mul(k, g) as usize] = c;
            }
        }
        let action = |g: u32| -> Permutation {
            Permutation::from_raw(
                section
                    .iter()
                    .map(|&r| coset_of[source.mul(r, g) as usize])
                    .collect(),
            )
        };
        let gens: Vec<Permutation> = source.generator_indices().iter().map(|&g| action(g)).collect();
        let image = close_group(&gens, element_cap)?;
        debug_assert_eq!(image.order(), section.len());
        let mut coset_of_image = vec![0u32; image.order()];
        for (c, &r) in section.iter().enumerate() {
            let i = image.index_of(&action(r)).expect("image of a source element");
            coset_of_image[i as usize] = c as u32;
        }
        Ok(QuotientMap {
            source,
            kernel: kernel.clone(),
            image,
            coset_of,
            section,
            coset_of_image,
        })
    }

    pub fn source(&self) -> &GroupHandle {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn image(&self) -> &GroupHandle {
        &self.image
    }

    /// Least element of each coset, in coset order.
    pub fn section(&self) -> Vec<Permutation> {
        self.section.iter().map(|&i| self.source.element(i).clone()).collect()
    }

    /// Image index of a source element index.
    pub fn image_index(&self, g: u32) -> u32 {
        let perm = Permutation::from_raw(
            self.section
                .iter()
                .map(|&r| self.coset_of[self.source.mul(r, g) as usize])
                .collect(),
        );
        self.image.index_of(&perm).expect("coset action lands in the image")
    }

    pub fn image_of(&self, g: &Permutation) -> Result<Permutation> {
        let i = self
            .source
            .index_of(g)
            .ok_or_else(|| Error::NotMember(g.to_string()))?;
        Ok(self.image.element(self.image_index(i)).clone())
    }

    /// Coset representative of an image element index.
    pub fn lift_index(&self, q: u32) -> u32 {
        self.section[self.coset_of_image[q as usize] as usize]
    }

    /// Image of a subgroup of the source.
    pub fn image_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = h.generator_indices().iter().map(|&g| self.image_index(g)).collect();
        Subgroup::generated(&self.image, &gens)
    }

    /// `⟨N ∪ lifts of the generators of sub⟩`.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let lifts: Vec<u32> = sub.generator_indices().iter().map(|&q| self.lift_index(q)).collect();
        self.kernel.extended_by(&lifts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn s4() -> GroupHandle {
        let gens = [Permutation::parse("(1 2)", 4).unwrap(), Permutation::parse("(1 2 3 4)", 4).unwrap()];
        close_group(&gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn s4_mod_v4_is_s3() {
        let g = s4();
        let v4 = g.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        let q = QuotientMap::new(&v4, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(q.image().order(), 6);
        assert_eq!(q.image().degree(), 6);
        assert!(!q.image().is_abelian());
        assert!(q.preimage(&q.image().whole()).is_whole());
        // kernel of the action is exactly V4
        let kernel: Vec<u32> = (0..24).filter(|&i| q.image_index(i) == 0).collect();
        assert_eq!(kernel, v4.indices());
    }

    #[test]
    fn trivial_kernel_gives_regular_image() {
        let g = s4();
        let q = QuotientMap::new(&g.trivial_subgroup(), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(q.image().degree(), 24);
        assert_eq!(q.image().order(), 24);
    }

    #[test]
    fn rejects_non_normal_kernel() {
        let g = s4();
        let t = g.subgroup_from_cycles(&["(1 2)"]).unwrap();
        assert!(matches!(QuotientMap::new(&t, DEFAULT_ELEMENT_CAP), Err(Error::NotNormal(_))));
    }

    #[test]
    fn forward_map_is_a_homomorphism() {
        let g = s4();
        let a4 = g.subgroup_from_cycles(&["(1 2 3)", "(2 3 4)"]).unwrap();
        let q = QuotientMap::new(&a4, DEFAULT_ELEMENT_CAP).unwrap();
        for a in 0..24 {
            for b in 0..24 {
                let lhs = q.image_index(g.mul(a, b));
                let rhs = q.image().mul(q.image_index(a), q.image_index(b));
                assert_eq!(lhs, rhs);
            }
        }
        let sub = q.image().trivial_subgroup();
        assert!(q.preimage(&sub).same_members(&a4));
        assert!(q.image_subgroup(&q.preimage(&q.image().whole())).is_whole());
    }
}
