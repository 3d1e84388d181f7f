//! Finite permutation groups with a frozen, sorted element list.
//!
//! Every [`GroupHandle`] is fully materialized: the element list is sorted
//! under the canonical permutation order (lexicographic image arrays), so the
//! identity always has index 0 and subgroup element lists taken in ascending
//! index order are already sorted. Subgroup algebra in [`crate::subgroup`]
//! works on element indices of a parent handle.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use once_cell::sync::OnceCell;
use rustc_hash::FxHashMap;
use sha2::{Digest, Sha256};

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::subgroup::{SubgroupData, Subgroup};

/// Default cap on the number of elements a closure may materialize.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Groups up to this order get a full multiplication table on first use.
const TABLE_MAX_ORDER: usize = 1500;

/// Digest of the sorted element list; equal iff the element sets are equal
/// (up to hash collision).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint([u8; 16]);

impl Fingerprint {
    pub(crate) fn of<'a>(degree: usize, elements: impl Iterator<Item = &'a Permutation>) -> Self {
        let mut h = Sha256::new();
        h.update((degree as u64).to_le_bytes());
        for e in elements {
            for &x in e.images() {
                h.update(x.to_le_bytes());
            }
        }
        let digest = h.finalize();
        let mut out = [0u8; 16];
        out.copy_from_slice(&digest[..16]);
        Fingerprint(out)
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fingerprint({self})")
    }
}

/// Conjugacy classes with lexicographically least representatives.
#[derive(Debug, Clone)]
pub struct ConjugacyClassTable {
    pub representatives: Vec<Permutation>,
    pub class_sizes: Vec<usize>,
    /// element index -> class number
    pub(crate) class_of: Vec<u32>,
    pub(crate) rep_indices: Vec<u32>,
}

impl ConjugacyClassTable {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representative_indices(&self) -> &[u32] {
        &self.rep_indices
    }

    pub fn class_of_index(&self, i: u32) -> usize {
        self.class_of[i as usize] as usize
    }
}

/// Lazily computed per-group facts. Values never reference the owning
/// handle, so there are no reference cycles.
#[derive(Default)]
pub(crate) struct Memo {
    pub classes: OnceCell<Arc<ConjugacyClassTable>>,
    pub normal_lattice: OnceCell<Arc<Vec<SubgroupData>>>,
    pub center: OnceCell<SubgroupData>,
    pub soluble: OnceCell<bool>,
    pub nilpotent: OnceCell<bool>,
    pub fitting: OnceCell<SubgroupData>,
    pub layer: OnceCell<SubgroupData>,
    pub gen_fitting: OnceCell<SubgroupData>,
    pub soluble_radical: OnceCell<SubgroupData>,
    pub gen_fitting_height: OnceCell<usize>,
    pub insoluble_length: OnceCell<usize>,
}

pub(crate) struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
    fingerprint: Fingerprint,
    generator_indices: Vec<u32>,
    inverses: OnceCell<Vec<u32>>,
    table: OnceCell<Option<Vec<u32>>>,
    chain: OnceCell<StabilizerChain>,
    pub(crate) memo: Memo,
}

/// A finite permutation group. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct GroupHandle(Arc<GroupInner>);

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.0.generators)
            .finish()
    }
}

impl PartialEq for GroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint() == other.fingerprint()
    }
}

impl Eq for GroupHandle {}

/// Breadth-first closure of `generators`, materializing at most `cap` elements.
pub fn close_group(generators: &[Permutation], cap: usize) -> Result<GroupHandle> {
    let Some(first) = generators.first() else {
        return Err(Error::Precondition("empty generator list".into()));
    };
    let degree = first.degree();
    if degree == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: FxHashMap<Permutation, ()> = FxHashMap::default();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), ());
    queue.push_back(id);
    let mut elements = Vec::new();
    while let Some(e) = queue.pop_front() {
        for s in generators {
            let n = e.compose_unchecked(s);
            if !seen.contains_key(&n) {
                if seen.len() >= cap {
                    return Err(Error::resource("group closure", cap, seen.len() + 1));
                }
                seen.insert(n.clone(), ());
                queue.push_back(n);
            }
        }
        elements.push(e);
    }
    if elements.len() > cap {
        return Err(Error::resource("group closure", cap, elements.len()));
    }
    elements.sort_unstable();
    Ok(GroupHandle::from_sorted(degree, generators.to_vec(), elements))
}

impl GroupHandle {
    /// `elements` must be sorted, closed under multiplication and contain
    /// every generator.
    pub(crate) fn from_sorted(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let index: FxHashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let fingerprint = Fingerprint::of(degree, elements.iter());
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        GroupHandle(Arc::new(GroupInner {
            degree,
            generators,
            elements,
            index,
            fingerprint,
            generator_indices,
            inverses: OnceCell::new(),
            table: OnceCell::new(),
            chain: OnceCell::new(),
            memo: Memo::default(),
        }))
    }

    pub(crate) fn memo(&self) -> &Memo {
        &self.0.memo
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.0.generator_indices
    }

    /// Sorted element list.
    pub fn elements(&self) -> &[Permutation] {
        &self.0.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.0.elements[i as usize]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.0.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.0.index.contains_key(g)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.0.fingerprint
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn same_handle(&self, other: &GroupHandle) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn table(&self) -> Option<&Vec<u32>> {
        self.0
            .table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_MAX_ORDER {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                for (i, a) in self.0.elements.iter().enumerate() {
                    for (j, b) in self.0.elements.iter().enumerate() {
                        t[i * n + j] = self.0.index[&a.compose_unchecked(b)];
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    /// Index of the product of the elements with indices `a` and `b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self.table() {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => {
                let p = self.element(a).compose_unchecked(self.element(b));
                self.0.index[&p]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.0.inverses.get_or_init(|| {
            self.0
                .elements
                .iter()
                .map(|e| self.0.index[&e.inverse()])
                .collect()
        })[a as usize]
    }

    /// `a^t = t⁻¹ a t` on indices.
    #[inline]
    pub fn conj(&self, a: u32, t: u32) -> u32 {
        self.mul(self.mul(self.inv(t), a), t)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b` on indices.
    #[inline]
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.element(a).order()
    }

    /// Stabilizer chain built independently of the element list.
    pub fn chain(&self) -> &StabilizerChain {
        self.0
            .chain
            .get_or_init(|| StabilizerChain::new(self.degree(), &self.0.generators))
    }

    pub fn chain_contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn conjugacy_classes(&self) -> Arc<ConjugacyClassTable> {
        self.0
            .memo
            .classes
            .get_or_init(|| Arc::new(self.compute_classes()))
            .clone()
    }

    fn compute_classes(&self) -> ConjugacyClassTable {
        let n = self.order();
        let gens = self.generator_indices();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            class_of[start as usize] = c;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for &s in gens {
                    let y = self.conj(x, s);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = c;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            reps.push(start);
            sizes.push(orbit.len());
        }
        ConjugacyClassTable {
            representatives: reps.iter().map(|&i| self.element(i).clone()).collect(),
            class_sizes: sizes,
            class_of,
            rep_indices: reps,
        }
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert_range(..);
        Subgroup::from_data(
            self.clone(),
            SubgroupData::new(bits, self.generator_indices().to_vec()),
        )
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        Subgroup::from_data(self.clone(), SubgroupData::new(bits, Vec::new()))
    }

    /// Subgroup generated by the given elements, which must lie in the group.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g).ok_or_else(|| Error::NotMember(g.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::generated(self, &idx))
    }

    /// Parses each generator in cycle notation at this group's degree.
    pub fn subgroup_from_cycles(&self, gens: &[&str]) -> Result<Subgroup> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse(s, self.degree()))
            .collect::<Result<Vec<_>>>()?;
        self.subgroup(&perms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(list: &[&str], n: usize) -> Vec<Permutation> {
        list.iter().map(|s| Permutation::parse(s, n).unwrap()).collect()
    }

    #[test]
    fn closes_standard_groups() {
        let s4 = close_group(&gens(&["(1 2)", "(1 2 3 4)"], 4), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s4.order(), 24);
        let a5 = close_group(&gens(&["(1 2 3 4 5)", "(3 4 5)"], 5), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.elements()[0].is_identity());
    }

    #[test]
    fn cap_is_a_resource_error() {
        let err = close_group(&gens(&["(1 2)"], 2), 1).unwrap_err();
        assert!(err.is_resource(), "{err}");
    }

    #[test]
    fn chain_agrees_with_closure() {
        for (g, n) in [
            (vec!["(1 2)", "(1 2 3 4)"], 4),
            (vec!["(1 2 3 4 5)", "(3 4 5)"], 5),
            (vec!["(1 2)(3 4)", "(5 6 7)"], 7),
            (vec!["()"], 3),
            (vec!["(1 2 3 4 5 6)", "(1 2)"], 6),
        ] {
            let grp = close_group(&gens(&g, n), DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(grp.chain().order(), grp.order() as u128);
            for e in grp.elements() {
                assert!(grp.chain_contains(e));
            }
        }
        let a4 = close_group(&gens(&["(1 2 3)", "(2 3 4)"], 4), DEFAULT_ELEMENT_CAP).unwrap();
        assert!(!a4.chain_contains(&Permutation::parse("(1 2)", 4).unwrap()));
        assert_eq!(a4.chain().base(), vec![0, 1]);
    }

    #[test]
    fn class_tables() {
        let s3 = close_group(&gens(&["(1 2)", "(1 2 3)"], 3), DEFAULT_ELEMENT_CAP).unwrap();
        let mut sizes = s3.conjugacy_classes().class_sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let c4 = close_group(&gens(&["(1 2 3 4)"], 4), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(c4.conjugacy_classes().len(), 4);
        let s4 = close_group(&gens(&["(1 2)", "(1 2 3 4)"], 4), DEFAULT_ELEMENT_CAP).unwrap();
        let t = s4.conjugacy_classes();
        assert_eq!(t.len(), 5);
        assert_eq!(t.class_sizes.iter().sum::<usize>(), 24);
        // least representative of the transposition class
        assert!(t.representatives.contains(&Permutation::parse("(3 4)", 4).unwrap()));
    }

    #[test]
    fn fingerprints_identify_element_sets() {
        let a = close_group(&gens(&["(1 2)", "(1 2 3)"], 3), DEFAULT_ELEMENT_CAP).unwrap();
        let b = close_group(&gens(&["(2 3)", "(1 3)"], 3), DEFAULT_ELEMENT_CAP).unwrap();
        let c = close_group(&gens(&["(1 2 3)"], 3), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn index_arithmetic_matches_permutations() {
        let s4 = close_group(&gens(&["(1 2)", "(1 2 3 4)"], 4), DEFAULT_ELEMENT_CAP).unwrap();
        for a in 0..24u32 {
            for b in 0..24u32 {
                let p = s4.element(a) * s4.element(b);
                assert_eq!(s4.element(s4.mul(a, b)), &p);
                let c = s4.element(a).commutator(s4.element(b)).unwrap();
                assert_eq!(s4.element(s4.comm(a, b)), &c);
            }
        }
    }
}
