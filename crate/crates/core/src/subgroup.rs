//! Subgroups of a materialized parent, stored as bitsets over the parent's
//! element indices.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::group::{Fingerprint, GroupHandle};
use crate::perm::Permutation;
use crate::series::{SeriesKind, SeriesRecord};

/// Parent-free subgroup payload: member bitset plus a generating set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct SubgroupData {
    pub members: FixedBitSet,
    pub gens: Vec<u32>,
}

impl SubgroupData {
    pub fn new(members: FixedBitSet, gens: Vec<u32>) -> Self {
        SubgroupData { members, gens }
    }

    fn order(&self) -> usize {
        self.members.count_ones(..)
    }
}

struct SubgroupInner {
    parent: GroupHandle,
    data: SubgroupData,
    order: usize,
    standalone: OnceCell<GroupHandle>,
}

/// A subgroup of `parent`. Cheap to clone.
#[derive(Clone)]
pub struct Subgroup(Arc<SubgroupInner>);

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

/// Adds `new` generators to the group described by `data` (Dimino's method:
/// the result is grown one right coset of the previous group at a time).
pub(crate) fn extend(parent: &GroupHandle, data: &SubgroupData, new: &[u32]) -> SubgroupData {
    let mut members = data.members.clone();
    let mut gens = data.gens.clone();
    for &g in new {
        if members.contains(g as usize) {
            continue;
        }
        let previous: Vec<u32> = members.ones().map(|i| i as u32).collect();
        gens.push(g);
        let mut reps = vec![g];
        for &c in &previous {
            members.insert(parent.mul(c, g) as usize);
        }
        let mut r = 0;
        while r < reps.len() {
            let rep = reps[r];
            r += 1;
            for &s in &gens {
                let y = parent.mul(rep, s);
                if !members.contains(y as usize) {
                    reps.push(y);
                    for &c in &previous {
                        members.insert(parent.mul(c, y) as usize);
                    }
                }
            }
        }
    }
    SubgroupData { members, gens }
}

fn trivial_data(parent: &GroupHandle) -> SubgroupData {
    let mut bits = FixedBitSet::with_capacity(parent.order());
    bits.insert(0);
    SubgroupData::new(bits, Vec::new())
}

impl Subgroup {
    pub(crate) fn from_data(parent: GroupHandle, data: SubgroupData) -> Self {
        let order = data.order();
        Subgroup(Arc::new(SubgroupInner {
            parent,
            data,
            order,
            standalone: OnceCell::new(),
        }))
    }

    pub(crate) fn data(&self) -> &SubgroupData {
        &self.0.data
    }

    /// `⟨elements⟩` for element indices of `parent`.
    pub fn generated(parent: &GroupHandle, elements: &[u32]) -> Subgroup {
        let data = extend(parent, &trivial_data(parent), elements);
        Subgroup::from_data(parent.clone(), data)
    }

    /// Wraps a member set already known to be a subgroup; a generating set is
    /// recovered by scanning members in ascending order.
    pub(crate) fn from_members(parent: &GroupHandle, members: FixedBitSet) -> Subgroup {
        let mut data = trivial_data(parent);
        for i in members.ones() {
            if !data.members.contains(i) {
                data = extend(parent, &data, &[i as u32]);
            }
        }
        debug_assert_eq!(data.members, members);
        Subgroup::from_data(parent.clone(), data)
    }

    pub fn parent(&self) -> &GroupHandle {
        &self.0.parent
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn index(&self) -> usize {
        self.parent().order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent().order()
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.0.data.members
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.0.data.gens
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.0
            .data
            .gens
            .iter()
            .map(|&i| self.parent().element(i).clone())
            .collect()
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> Vec<u32> {
        self.members().ones().map(|i| i as u32).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.members().ones().map(|i| self.parent().element(i as u32))
    }

    pub fn contains_index(&self, i: u32) -> bool {
        self.members().contains(i as usize)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.parent()
            .index_of(g)
            .is_some_and(|i| self.contains_index(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members().is_subset(other.members())
    }

    pub fn same_members(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.members() == other.members()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint::of(self.parent().degree(), self.elements())
    }

    /// The subgroup as a group in its own right. Element indices of the
    /// result are the ranks of the member indices, so the two numberings
    /// correspond in ascending order.
    pub fn to_group(&self) -> GroupHandle {
        self.0
            .standalone
            .get_or_init(|| {
                let elements: Vec<Permutation> = self.elements().cloned().collect();
                let gens = if self.is_trivial() {
                    vec![self.parent().identity()]
                } else {
                    self.generators()
                };
                GroupHandle::from_sorted(self.parent().degree(), gens, elements)
            })
            .clone()
    }

    /// Carries a subgroup of `self.to_group()` (or of any handle with the same
    /// element list) back into the parent.
    pub fn lift(&self, inner: &Subgroup) -> Subgroup {
        let map = self.indices();
        let mut bits = FixedBitSet::with_capacity(self.parent().order());
        for i in inner.members().ones() {
            bits.insert(map[i] as usize);
        }
        let gens = inner.generator_indices().iter().map(|&g| map[g as usize]).collect();
        Subgroup::from_data(self.parent().clone(), SubgroupData::new(bits, gens))
    }

    /// Restricts a subgroup of the parent that lies inside `self` to a
    /// subgroup of `standalone` (a handle with `self`'s element list).
    pub fn restrict(&self, standalone: &GroupHandle, sub: &Subgroup) -> Subgroup {
        debug_assert!(sub.is_subgroup_of(self));
        let rank: rustc_hash::FxHashMap<u32, u32> = self
            .indices()
            .into_iter()
            .enumerate()
            .map(|(r, i)| (i, r as u32))
            .collect();
        let mut bits = FixedBitSet::with_capacity(standalone.order());
        for i in sub.members().ones() {
            bits.insert(rank[&(i as u32)] as usize);
        }
        let gens = sub.generator_indices().iter().map(|g| rank[g]).collect();
        Subgroup::from_data(standalone.clone(), SubgroupData::new(bits, gens))
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent().same_handle(other.parent())
            || self.parent().fingerprint() == other.parent().fingerprint()
        {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Adds generators given as parent element indices.
    pub fn extended_by(&self, elements: &[u32]) -> Subgroup {
        Subgroup::from_data(self.parent().clone(), extend(self.parent(), self.data(), elements))
    }

    /// `⟨self ∪ other⟩`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        if other.is_subgroup_of(self) {
            return Ok(self.clone());
        }
        if self.is_subgroup_of(other) {
            return Ok(other.clone());
        }
        Ok(self.extended_by(other.generator_indices()))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut bits = self.members().clone();
        bits.intersect_with(other.members());
        Ok(Subgroup::from_members(self.parent(), bits))
    }

    /// `⟨self^within⟩`: the smallest subgroup normalized by `within`
    /// containing `self`. `self` must lie in `within`.
    pub fn normal_closure_in(&self, within: &Subgroup) -> Result<Subgroup> {
        self.check_parent(within)?;
        if !self.is_subgroup_of(within) {
            return Err(Error::Precondition("subgroup not contained in the closing group".into()));
        }
        let parent = self.parent();
        let mut data = self.data().clone();
        let mut i = 0;
        while i < data.gens.len() {
            let n = data.gens[i];
            for &t in within.generator_indices() {
                let c = parent.conj(n, t);
                if !data.members.contains(c as usize) {
                    data = extend(parent, &data, &[c]);
                }
            }
            i += 1;
        }
        Ok(Subgroup::from_data(parent.clone(), data))
    }

    /// Normal closure in the whole parent.
    pub fn normal_closure(&self) -> Subgroup {
        self.normal_closure_in(&self.parent().whole())
            .expect("every subgroup lies in its parent")
    }

    /// True if every generator of `within` normalizes `self`.
    pub fn is_normal_in(&self, within: &Subgroup) -> bool {
        if !self.is_subgroup_of(within) {
            return false;
        }
        let parent = self.parent();
        within.generator_indices().iter().all(|&t| {
            self.generator_indices()
                .iter()
                .all(|&h| self.contains_index(parent.conj(h, t)))
        })
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal_in(&self.parent().whole())
    }

    /// `self^t = t⁻¹ self t` for a parent element index `t`.
    pub fn conjugate_by(&self, t: u32) -> Subgroup {
        let parent = self.parent();
        let mut bits = FixedBitSet::with_capacity(parent.order());
        for i in self.members().ones() {
            bits.insert(parent.conj(i as u32, t) as usize);
        }
        let gens = self.generator_indices().iter().map(|&g| parent.conj(g, t)).collect();
        Subgroup::from_data(parent.clone(), SubgroupData::new(bits, gens))
    }

    /// Elements of `self` commuting with every element of `set` (indices).
    pub fn centralizer_of_indices(&self, set: &[u32]) -> Subgroup {
        let parent = self.parent();
        let mut bits = FixedBitSet::with_capacity(parent.order());
        for i in self.members().ones() {
            let g = i as u32;
            if set.iter().all(|&s| parent.mul(g, s) == parent.mul(s, g)) {
                bits.insert(i);
            }
        }
        Subgroup::from_members(parent, bits)
    }

    /// `C_self(S)`; every element of `S` must lie in the parent.
    pub fn centralizer(&self, set: &[Permutation]) -> Result<Subgroup> {
        let idx = set
            .iter()
            .map(|g| {
                self.parent()
                    .index_of(g)
                    .ok_or_else(|| Error::NotMember(g.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.centralizer_of_indices(&idx))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_indices(self.generator_indices())
    }

    /// Largest subgroup of `self` normalized by `within`.
    pub fn core_in(&self, within: &Subgroup) -> Subgroup {
        let parent = self.parent();
        let mut core = self.members().clone();
        loop {
            let mut next = core.clone();
            for &t in within.generator_indices() {
                let mut conj = FixedBitSet::with_capacity(parent.order());
                for i in core.ones() {
                    conj.insert(parent.conj(i as u32, t) as usize);
                }
                next.intersect_with(&conj);
            }
            if next == core {
                break;
            }
            core = next;
        }
        Subgroup::from_members(parent, core)
    }

    /// `[self, other] = ⟨[h, k]⟩`, closed under conjugation by `⟨self, other⟩`.
    pub fn commutator(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let parent = self.parent();
        let mut comms = Vec::new();
        for &h in self.generator_indices() {
            for &k in other.generator_indices() {
                comms.push(parent.comm(h, k));
            }
        }
        let c = Subgroup::generated(parent, &comms);
        let ambient = self.join(other)?;
        c.normal_closure_in(&ambient)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.commutator(self).expect("same parent")
    }

    /// `self ▷ [self,self] ▷ …` to the stable term.
    pub fn derived_series(&self) -> SeriesRecord {
        let mut terms = vec![self.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = last.derived_subgroup();
            if next.same_members(last) {
                break;
            }
            terms.push(next);
        }
        SeriesRecord::new(SeriesKind::Derived, terms)
    }

    /// `γ₁ = self`, `γ_{i+1} = [γ_i, self]` to the stable term.
    pub fn lower_central_series(&self) -> SeriesRecord {
        let mut terms = vec![self.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = last.commutator(self).expect("same parent");
            if next.same_members(last) {
                break;
            }
            terms.push(next);
        }
        SeriesRecord::new(SeriesKind::LowerCentral, terms)
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().is_some_and(Subgroup::is_trivial)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subgroup::is_trivial)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().same_members(self)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        let parent = self.parent();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| parent.mul(a, b) == parent.mul(b, a)))
    }

    /// Decides subnormality of `self` in `within` by normal-closure descent:
    /// `N₀ = within`, `N_{i+1} = ⟨self^{N_i}⟩`. Subnormal iff the stable term
    /// is `self`; the descent is returned as the witness either way.
    pub fn subnormality(&self, within: &Subgroup) -> Result<(bool, SeriesRecord)> {
        let mut terms = vec![within.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = self.normal_closure_in(last)?;
            if next.same_members(last) {
                break;
            }
            terms.push(next);
        }
        let subnormal = terms.last().unwrap().same_members(self);
        Ok((subnormal, SeriesRecord::new(SeriesKind::NormalClosureDescent, terms)))
    }

    pub fn is_subnormal_in(&self, within: &Subgroup) -> Result<bool> {
        Ok(self.subnormality(within)?.0)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent().fingerprint() == other.parent().fingerprint() && self.same_members(other)
    }
}

impl Eq for Subgroup {}

impl GroupHandle {
    pub fn center(&self) -> Subgroup {
        let data = self
            .memo()
            .center
            .get_or_init(|| self.whole().center().data().clone())
            .clone();
        Subgroup::from_data(self.clone(), data)
    }

    pub fn derived_series(&self) -> SeriesRecord {
        self.whole().derived_series()
    }

    pub fn is_soluble(&self) -> bool {
        *self.memo().soluble.get_or_init(|| self.whole().is_soluble())
    }

    pub fn is_nilpotent(&self) -> bool {
        *self.memo().nilpotent.get_or_init(|| self.whole().is_nilpotent())
    }

    pub fn is_perfect(&self) -> bool {
        self.whole().is_perfect()
    }

    pub fn is_abelian(&self) -> bool {
        self.whole().is_abelian()
    }

    /// Normal-closure-descent subnormality test of `sub` in the whole group.
    pub fn is_subnormal(&self, sub: &Subgroup) -> Result<(bool, SeriesRecord)> {
        sub.subnormality(&self.whole())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, DEFAULT_ELEMENT_CAP};

    fn group(list: &[&str], n: usize) -> GroupHandle {
        let gens: Vec<_> = list.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        close_group(&gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn s3() -> GroupHandle {
        group(&["(1 2)", "(1 2 3)"], 3)
    }

    fn s4() -> GroupHandle {
        group(&["(1 2)", "(1 2 3 4)"], 4)
    }

    #[test]
    fn normal_closures_in_s3() {
        let g = s3();
        let t = g.subgroup_from_cycles(&["(1 2)"]).unwrap();
        assert_eq!(t.normal_closure().order(), 6);
        let c = g.subgroup_from_cycles(&["(1 2 3)"]).unwrap();
        let n = c.normal_closure();
        assert_eq!(n.order(), 3);
        assert!(n.same_members(&c));
        assert!(n.join(&n).unwrap().same_members(&n));
    }

    #[test]
    fn centers_and_cores() {
        let d4 = group(&["(1 2 3 4)", "(1 3)"], 4);
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().order(), 2);
        let g = s4();
        assert!(g.center().is_trivial());
        let d = g.subgroup_from_cycles(&["(1 2 3 4)", "(1 3)"]).unwrap();
        let core = d.core_in(&g.whole());
        let v4 = g.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        assert!(core.same_members(&v4));
    }

    #[test]
    fn derived_series_of_s4() {
        let ds = s4().derived_series();
        assert_eq!(ds.orders(), vec![24, 12, 4, 1]);
        assert_eq!(ds.length, 3);
        assert!(ds.is_monotone());
        assert!(s4().is_soluble());
        let a5 = group(&["(1 2 3 4 5)", "(3 4 5)"], 5);
        assert!(a5.is_perfect());
        assert!(!a5.is_soluble());
        assert!(!s3().is_nilpotent());
        let c12 = group(&["(1 2 3 4 5 6 7 8 9 10 11 12)"], 12);
        assert!(c12.is_nilpotent());
    }

    #[test]
    fn subnormality_by_descent() {
        let g = s4();
        let a = g.subgroup_from_cycles(&["(1 2)(3 4)"]).unwrap();
        let (ok, chain) = g.is_subnormal(&a).unwrap();
        assert!(ok);
        assert_eq!(chain.orders(), vec![24, 4, 2]);
        let t = g.subgroup_from_cycles(&["(1 2)"]).unwrap();
        assert!(!g.is_subnormal(&t).unwrap().0);
        let (ok, chain) = g.is_subnormal(&g.whole()).unwrap();
        assert!(ok);
        assert_eq!(chain.length, 0);
    }

    #[test]
    fn intersections_and_parents() {
        let g = s4();
        let a = g.subgroup_from_cycles(&["(1 2 3)"]).unwrap();
        let b = g.subgroup_from_cycles(&["(1 2)", "(1 3)"]).unwrap();
        assert_eq!(a.intersection(&b).unwrap().order(), 3);
        let other = s3().whole();
        assert!(matches!(a.join(&other), Err(Error::ParentMismatch)));
    }

    #[test]
    fn lift_and_restrict_roundtrip() {
        let g = s4();
        let a4 = g.subgroup_from_cycles(&["(1 2 3)", "(2 3 4)"]).unwrap();
        let standalone = a4.to_group();
        assert_eq!(standalone.order(), 12);
        let v4 = g.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        let inner = a4.restrict(&standalone, &v4);
        assert_eq!(inner.order(), 4);
        assert!(inner.is_normal());
        assert!(a4.lift(&inner).same_members(&v4));
    }
}
