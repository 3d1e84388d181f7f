//! The lattice of normal subgroups.
//!
//! Every normal subgroup `N` is the join of the normal closures `⟨g⟩^G` of its
//! elements, and each such closure depends only on the conjugacy class of
//! `g`. Closing the set of class-representative closures under joins
//! therefore produces every normal subgroup exactly once.

use std::sync::Arc;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::subgroup::{extend, Subgroup, SubgroupData};

pub const DEFAULT_LATTICE_COUNT_CAP: usize = 50_000;

#[derive(Debug, Clone)]
pub struct NormalLattice {
    parent: GroupHandle,
    /// Sorted by (order, ascending member indices).
    members: Vec<Subgroup>,
}

impl NormalLattice {
    pub fn parent(&self) -> &GroupHandle {
        &self.parent
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `a ≤ b` for member positions.
    pub fn includes(&self, a: usize, b: usize) -> bool {
        self.members[a].is_subgroup_of(&self.members[b])
    }

    pub fn minimal_members(&self) -> Vec<Subgroup> {
        let nontrivial: Vec<&Subgroup> = self.members.iter().filter(|m| !m.is_trivial()).collect();
        nontrivial
            .iter()
            .filter(|m| {
                !nontrivial
                    .iter()
                    .any(|o| o.order() < m.order() && o.is_subgroup_of(m))
            })
            .map(|m| (*m).clone())
            .collect()
    }

    /// Proper members not contained in another proper member.
    pub fn maximal_members(&self) -> Vec<Subgroup> {
        let proper: Vec<&Subgroup> = self.members.iter().filter(|m| !m.is_whole()).collect();
        proper
            .iter()
            .filter(|m| {
                !proper
                    .iter()
                    .any(|o| o.order() > m.order() && m.is_subgroup_of(o))
            })
            .map(|m| (*m).clone())
            .collect()
    }

    /// Join of all members satisfying `pred`, together with a check that it
    /// is the largest such member (so that `pred` is join-closed here).
    pub fn largest_with(&self, mut pred: impl FnMut(&Subgroup) -> bool) -> Subgroup {
        let mut acc = self.parent.trivial_subgroup();
        for m in &self.members {
            if pred(m) {
                acc = acc.join(m).expect("same parent");
            }
        }
        acc
    }
}

fn sort_key(s: &SubgroupData) -> (usize, Vec<usize>) {
    (s.members.count_ones(..), s.members.ones().collect())
}

impl GroupHandle {
    /// All normal subgroups; fails if more than `count_cap` are found.
    pub fn normal_subgroups(&self, count_cap: usize) -> Result<NormalLattice> {
        let data = self
            .memo()
            .normal_lattice
            .get_or_try_init(|| self.compute_normal_lattice(count_cap).map(Arc::new))?
            .clone();
        if data.len() > count_cap {
            return Err(Error::resource("normal subgroup lattice", count_cap, data.len()));
        }
        Ok(NormalLattice {
            parent: self.clone(),
            members: data
                .iter()
                .map(|d| Subgroup::from_data(self.clone(), d.clone()))
                .collect(),
        })
    }

    fn compute_normal_lattice(&self, count_cap: usize) -> Result<Vec<SubgroupData>> {
        let classes = self.conjugacy_classes();
        let mut bases: Vec<Subgroup> = Vec::new();
        for &r in classes.representative_indices() {
            if r == 0 {
                continue;
            }
            let closure = Subgroup::generated(self, &[r]).normal_closure();
            if !bases.iter().any(|b| b.same_members(&closure)) {
                bases.push(closure);
            }
        }
        let trivial = self.trivial_subgroup().data().clone();
        let mut seen: FxHashSet<fixedbitset::FixedBitSet> = FxHashSet::default();
        seen.insert(trivial.members.clone());
        let mut members = vec![trivial];
        for b in &bases {
            if seen.insert(b.members().clone()) {
                members.push(b.data().clone());
            }
        }
        let mut i = 1;
        while i < members.len() {
            for b in &bases {
                if b.members().is_subset(&members[i].members) {
                    continue;
                }
                let joined = extend(self, &members[i], b.generator_indices());
                if seen.insert(joined.members.clone()) {
                    members.push(joined);
                    if members.len() > count_cap {
                        return Err(Error::resource(
                            "normal subgroup lattice",
                            count_cap,
                            members.len(),
                        ));
                    }
                }
            }
            i += 1;
        }
        members.sort_by_cached_key(sort_key);
        Ok(members)
    }

    pub fn minimal_normal_subgroups(&self, count_cap: usize) -> Result<Vec<Subgroup>> {
        Ok(self.normal_subgroups(count_cap)?.minimal_members())
    }

    /// Join of the minimal normal subgroups (trivial for the trivial group).
    pub fn socle(&self, count_cap: usize) -> Result<Subgroup> {
        let mut acc = self.trivial_subgroup();
        for m in self.minimal_normal_subgroups(count_cap)? {
            acc = acc.join(&m)?;
        }
        Ok(acc)
    }

    pub fn is_simple(&self, count_cap: usize) -> Result<bool> {
        Ok(self.order() > 1 && self.normal_subgroups(count_cap)?.len() == 2)
    }

    /// Perfect with `G/Z(G)` simple. The quotient is read off the lattice:
    /// normal subgroups of `G/Z` are the members containing `Z`.
    pub fn is_quasisimple(&self, count_cap: usize) -> Result<bool> {
        if self.order() == 1 || !self.is_perfect() {
            return Ok(false);
        }
        let z = self.center();
        if z.is_whole() {
            return Ok(false);
        }
        let lattice = self.normal_subgroups(count_cap)?;
        let above = lattice
            .members()
            .iter()
            .filter(|m| z.is_subgroup_of(m))
            .count();
        Ok(above == 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, DEFAULT_ELEMENT_CAP};
    use crate::perm::Permutation;

    fn group(list: &[&str], n: usize) -> GroupHandle {
        let gens: Vec<_> = list.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        close_group(&gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn s4_lattice() {
        let g = group(&["(1 2)", "(1 2 3 4)"], 4);
        let l = g.normal_subgroups(DEFAULT_LATTICE_COUNT_CAP).unwrap();
        let orders: Vec<usize> = l.members().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert!(l.members().iter().all(Subgroup::is_normal));
        assert_eq!(g.socle(DEFAULT_LATTICE_COUNT_CAP).unwrap().order(), 4);
        assert!(!g.is_simple(DEFAULT_LATTICE_COUNT_CAP).unwrap());
        assert_eq!(l.maximal_members().len(), 1);
    }

    #[test]
    fn a5_is_simple() {
        let g = group(&["(1 2 3 4 5)", "(3 4 5)"], 5);
        assert!(g.is_simple(DEFAULT_LATTICE_COUNT_CAP).unwrap());
        assert!(g.is_quasisimple(DEFAULT_LATTICE_COUNT_CAP).unwrap());
    }

    #[test]
    fn count_cap_is_enforced() {
        // C2 x C2 x C2 has 16 normal subgroups
        let g = group(&["(1 2)", "(3 4)", "(5 6)"], 6);
        assert!(g.normal_subgroups(3).unwrap_err().is_resource());
        assert_eq!(g.normal_subgroups(100).unwrap().len(), 16);
    }

    #[test]
    fn abelian_groups_are_not_quasisimple() {
        let g = group(&["(1 2 3 4 5)"], 5);
        assert!(!g.is_quasisimple(DEFAULT_LATTICE_COUNT_CAP).unwrap());
        assert!(g.is_simple(DEFAULT_LATTICE_COUNT_CAP).unwrap());
    }
}
