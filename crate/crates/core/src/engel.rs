//! Engel sets `E_{G,k}(x) = {[g, x, …, x] : g ∈ G}` (left-normed, `k`
//! copies of the actor) for inner elements and automorphisms, the subgroups
//! they generate, the `[G, actor]` descent, and the involution set `J_G(α)`.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::{close_group, GroupHandle};
use crate::perm::{p_part, Permutation};
use crate::series::{SeriesKind, SeriesRecord};
use crate::subgroup::Subgroup;

/// Groups larger than this are refused by [`holomorph_extension`].
pub const DEFAULT_EXTENSION_CAP: usize = 5_000;

/// An automorphism stored as a full element table.
#[derive(Clone)]
pub struct AutomorphismMap {
    group: GroupHandle,
    images: Vec<Permutation>,
    map: Arc<Vec<u32>>,
    order: u64,
}

impl std::fmt::Debug for AutomorphismMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutomorphismMap")
            .field("images", &self.images)
            .field("order", &self.order)
            .finish()
    }
}

impl AutomorphismMap {
    /// Extends generator images to the whole group by walking the Cayley
    /// graph. Two paths to the same element with different images expose a
    /// relation that the images violate.
    pub fn new(group: &GroupHandle, images: Vec<Permutation>) -> Result<Self> {
        let gens = group.generator_indices();
        if images.len() != gens.len() {
            return Err(Error::InvalidAutomorphism(format!(
                "{} images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let mut image_idx = Vec::with_capacity(images.len());
        for (i, im) in images.iter().enumerate() {
            let idx = group.index_of(im).ok_or_else(|| {
                Error::InvalidAutomorphism(format!(
                    "image {im} of generator {} lies outside the group",
                    group.generators()[i]
                ))
            })?;
            image_idx.push(idx);
        }
        let n = group.order();
        let mut map = vec![u32::MAX; n];
        map[0] = 0;
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for (s, &t) in gens.iter().zip(&image_idx) {
                let target = group.mul(e, *s);
                let value = group.mul(map[e as usize], t);
                match map[target as usize] {
                    u32::MAX => {
                        map[target as usize] = value;
                        queue.push(target);
                    }
                    v if v != value => {
                        return Err(Error::InvalidAutomorphism(format!(
                            "not a homomorphism: images disagree at {} * {}",
                            group.element(e),
                            group.element(*s)
                        )));
                    }
                    _ => {}
                }
            }
        }
        let mut hit = FixedBitSet::with_capacity(n);
        for &v in &map {
            if hit.put(v as usize) {
                return Err(Error::InvalidAutomorphism(format!(
                    "not injective: {} has two preimages",
                    group.element(v)
                )));
            }
        }
        let mut order = 1u64;
        let mut power = map.clone();
        while power.iter().enumerate().any(|(i, &v)| i as u32 != v) {
            power = power.iter().map(|&v| map[v as usize]).collect();
            order += 1;
        }
        Ok(AutomorphismMap {
            group: group.clone(),
            images,
            map: Arc::new(map),
            order,
        })
    }

    /// Conjugation `g ↦ t⁻¹gt` by a permutation normalizing the group.
    pub fn inner(group: &GroupHandle, t: &Permutation) -> Result<Self> {
        let images = group
            .generators()
            .iter()
            .map(|g| g.conjugate(t))
            .collect::<Result<Vec<_>>>()?;
        AutomorphismMap::new(group, images)
    }

    /// `g ↦ g⁻¹`; an automorphism only for abelian groups.
    pub fn inversion(group: &GroupHandle) -> Result<Self> {
        let images = group.generators().iter().map(Permutation::inverse).collect();
        AutomorphismMap::new(group, images)
    }

    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn is_involution(&self) -> bool {
        self.order == 2
    }

    #[inline]
    pub fn apply_index(&self, g: u32) -> u32 {
        self.map[g as usize]
    }

    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        let i = self
            .group
            .index_of(g)
            .ok_or_else(|| Error::NotMember(g.to_string()))?;
        Ok(self.group.element(self.apply_index(i)).clone())
    }

    /// `C_G(α) = {g : α(g) = g}`.
    pub fn fixed_subgroup(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.group.order());
        for (i, &v) in self.map.iter().enumerate() {
            if i as u32 == v {
                bits.insert(i);
            }
        }
        Subgroup::from_members(&self.group, bits)
    }
}

/// What the Engel commutators are taken with.
#[derive(Debug, Clone)]
pub enum Actor {
    /// An element of the group, by index.
    Element(u32),
    Automorphism(AutomorphismMap),
}

impl Actor {
    pub fn element(group: &GroupHandle, x: &Permutation) -> Result<Actor> {
        group
            .index_of(x)
            .map(Actor::Element)
            .ok_or_else(|| Error::NotMember(x.to_string()))
    }

    /// `[g, actor]`: `g⁻¹x⁻¹gx` for an element, `g⁻¹·α(g)` for an automorphism.
    #[inline]
    pub fn bracket(&self, group: &GroupHandle, g: u32) -> u32 {
        match self {
            Actor::Element(x) => group.comm(g, *x),
            Actor::Automorphism(a) => group.mul(group.inv(g), a.apply_index(g)),
        }
    }

    /// Image of `g` under conjugation by the actor.
    pub fn act(&self, group: &GroupHandle, g: u32) -> u32 {
        match self {
            Actor::Element(x) => group.conj(g, *x),
            Actor::Automorphism(a) => a.apply_index(g),
        }
    }

    pub fn describe(&self, group: &GroupHandle) -> String {
        match self {
            Actor::Element(x) => group.element(*x).to_string(),
            Actor::Automorphism(a) => format!("aut{:?}", a.generator_images()),
        }
    }
}

/// `[g, actor]` for a permutation `g` of the group.
pub fn commutator_with_actor(group: &GroupHandle, g: &Permutation, actor: &Actor) -> Result<Permutation> {
    let i = group.index_of(g).ok_or_else(|| Error::NotMember(g.to_string()))?;
    Ok(group.element(actor.bracket(group, i)).clone())
}

/// The eventually periodic sequence `E_0 = G`, `E_{k+1} = {[e, actor] : e ∈ E_k}`
/// together with the generated subgroups and the `[·, actor]` descent.
#[derive(Debug, Clone)]
pub struct EngelChain {
    group: GroupHandle,
    actor: Actor,
    /// `sets[k] = E_k` for `k < sets.len()`; `sets[cycle_start..]` repeats.
    sets: Vec<FixedBitSet>,
    cycle_start: usize,
    generated: Vec<Subgroup>,
    descent: SeriesRecord,
}

impl EngelChain {
    /// `k_cap` bounds the number of set iterations before a repeat must be seen.
    pub fn compute(group: &GroupHandle, actor: Actor, k_cap: usize) -> Result<EngelChain> {
        let (sets, cycle_start) = engel_sets(group, &actor, k_cap)?;
        let mut generated: Vec<Subgroup> = Vec::with_capacity(sets.len());
        for set in &sets {
            let mut sub = group.trivial_subgroup();
            for e in set.ones() {
                if !sub.contains_index(e as u32) {
                    sub = sub.extended_by(&[e as u32]);
                }
            }
            generated.push(sub);
        }
        let descent = bracket_descent(group, &actor);
        Ok(EngelChain {
            group: group.clone(),
            actor,
            sets,
            cycle_start,
            generated,
            descent,
        })
    }

    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn actor(&self) -> &Actor {
        &self.actor
    }

    /// Number of distinct sets computed (`E_0 … E_{len-1}`).
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn cycle_start(&self) -> usize {
        self.cycle_start
    }

    pub fn period(&self) -> usize {
        self.sets.len() - self.cycle_start
    }

    fn position(&self, k: usize) -> usize {
        if k < self.sets.len() {
            k
        } else {
            self.cycle_start + (k - self.cycle_start) % self.period()
        }
    }

    /// `E_{G,k}` for any `k ≥ 0`, using periodicity beyond the computed range.
    pub fn set(&self, k: usize) -> &FixedBitSet {
        &self.sets[self.position(k)]
    }

    pub fn set_elements(&self, k: usize) -> Vec<Permutation> {
        self.set(k).ones().map(|i| self.group.element(i as u32).clone()).collect()
    }

    /// `⟨E_{G,k}⟩` for any `k ≥ 0`.
    pub fn generated(&self, k: usize) -> &Subgroup {
        &self.generated[self.position(k)]
    }

    /// Generated subgroups for `k = 0 … len-1`; later terms repeat these.
    pub fn generated_chain(&self) -> &[Subgroup] {
        &self.generated
    }

    /// Stable term `K` of the generated chain.
    pub fn stable_generated(&self) -> &Subgroup {
        &self.generated[self.cycle_start]
    }

    /// `G ≥ [G, actor] ≥ [[G, actor], actor] ≥ …`.
    pub fn descent(&self) -> &SeriesRecord {
        &self.descent
    }

    /// Stable term `H` of the descent.
    pub fn stable_descent(&self) -> &Subgroup {
        self.descent.last().expect("descent starts at G")
    }

    /// Some `E_k` is `{1}` (equivalently the cycle is the fixed point `{1}`).
    pub fn reaches_identity(&self) -> bool {
        let last = self.set(self.cycle_start);
        self.period() == 1 && last.count_ones(..) == 1 && last.contains(0)
    }
}

/// `E_0 … E_{len-1}` (pairwise distinct) and the index the sequence returns to.
pub fn engel_sets(group: &GroupHandle, actor: &Actor, k_cap: usize) -> Result<(Vec<FixedBitSet>, usize)> {
    let n = group.order();
    let image: Vec<u32> = (0..n as u32).map(|g| actor.bracket(group, g)).collect();
    let mut whole = FixedBitSet::with_capacity(n);
    whole.insert_range(..);
    let mut seen: FxHashMap<FixedBitSet, usize> = FxHashMap::default();
    seen.insert(whole.clone(), 0);
    let mut sets = vec![whole];
    loop {
        if sets.len() > k_cap {
            return Err(Error::resource("Engel set iteration", k_cap, sets.len()));
        }
        let mut next = FixedBitSet::with_capacity(n);
        for e in sets.last().unwrap().ones() {
            next.insert(image[e] as usize);
        }
        if let Some(&k) = seen.get(&next) {
            return Ok((sets, k));
        }
        seen.insert(next.clone(), sets.len());
        sets.push(next);
    }
}

/// Least `k ≥ 1` with `E_{G,k}(x) = {1}`, if any.
pub fn engel_identity_index(group: &GroupHandle, actor: &Actor, k_cap: usize) -> Result<Option<usize>> {
    let (sets, _) = engel_sets(group, actor, k_cap)?;
    let is_one = |s: &FixedBitSet| s.count_ones(..) == 1 && s.contains(0);
    Ok(sets.iter().position(is_one).map(|k| k.max(1)))
}

/// `[H, actor] = ⟨[h, actor] : h ∈ H⟩` iterated from `G` to its stable term.
pub fn bracket_descent(group: &GroupHandle, actor: &Actor) -> SeriesRecord {
    let mut terms = vec![group.whole()];
    loop {
        let last = terms.last().unwrap();
        let mut next = group.trivial_subgroup();
        for h in last.members().ones() {
            let c = actor.bracket(group, h as u32);
            if !next.contains_index(c) {
                next = next.extended_by(&[c]);
            }
        }
        if next.same_members(last) {
            break;
        }
        terms.push(next);
    }
    SeriesRecord::new(SeriesKind::EngelChain, terms)
}

pub fn make_automorphism(group: &GroupHandle, images: Vec<Permutation>) -> Result<AutomorphismMap> {
    AutomorphismMap::new(group, images)
}

pub fn engel_chain(group: &GroupHandle, actor: Actor, k_cap: Option<usize>) -> Result<EngelChain> {
    EngelChain::compute(group, actor, k_cap.unwrap_or(group.order().max(1)))
}

/// Baer: `x ∈ F(G)` iff `E_{G,k}(x) = {1}` for some `k`.
pub fn baer_membership(group: &GroupHandle, x: &Permutation) -> Result<bool> {
    let actor = Actor::element(group, x)?;
    Ok(engel_identity_index(group, &actor, group.order().max(1))?.is_some())
}

#[derive(Debug, Clone)]
pub struct InvolutionReport {
    pub alpha: AutomorphismMap,
    /// Odd-order elements inverted by `alpha`, ascending by element index.
    pub j_set: Vec<u32>,
    /// Largest 2-part of the order of any element inverted by `alpha`.
    pub two_part: u64,
    pub generated_j: Subgroup,
    pub fixed_points: Subgroup,
}

impl InvolutionReport {
    pub fn j_len(&self) -> usize {
        self.j_set.len()
    }

    /// `k` with `2^k = two_part`.
    pub fn k(&self) -> usize {
        self.two_part.trailing_zeros() as usize
    }

    pub fn j_bits(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.alpha.group().order());
        for &j in &self.j_set {
            b.insert(j as usize);
        }
        b
    }

    pub fn j_elements(&self) -> Vec<Permutation> {
        self.j_set.iter().map(|&j| self.alpha.group().element(j).clone()).collect()
    }
}

/// `J_G(α)` and related data for an involutory automorphism.
pub fn j_set(alpha: &AutomorphismMap) -> Result<InvolutionReport> {
    let g = alpha.group();
    if !(alpha.is_involution() || g.is_trivial()) {
        return Err(Error::Precondition(format!(
            "automorphism has order {}, not 2",
            alpha.order()
        )));
    }
    let mut j = Vec::new();
    let mut two_part = 1;
    for i in 0..g.order() as u32 {
        if alpha.apply_index(i) != g.inv(i) {
            continue;
        }
        let ord = g.element_order(i);
        two_part = two_part.max(p_part(ord, 2));
        if ord % 2 == 1 {
            j.push(i);
        }
    }
    let generated_j = Subgroup::generated(g, &j);
    Ok(InvolutionReport {
        alpha: alpha.clone(),
        j_set: j,
        two_part,
        generated_j,
        fixed_points: alpha.fixed_subgroup(),
    })
}

#[derive(Debug, Clone)]
pub struct CentralizerIntersection {
    /// `∩_{j ∈ J} C_G(α)^j`.
    pub intersection: Subgroup,
    /// `Z(G) ∩ C_G(α)`, the centralizer of `⟨G, α⟩` in `G`.
    pub expected: Subgroup,
    pub holds: bool,
}

/// Compares the intersection of the `J`-conjugates of `C_G(α)` with
/// `Z(G) ∩ C_G(α)`. Requires an involution with `[G, α] = G`.
pub fn centralizer_intersection_check(alpha: &AutomorphismMap) -> Result<CentralizerIntersection> {
    let g = alpha.group();
    let descent = bracket_descent(g, &Actor::Automorphism(alpha.clone()));
    if descent.terms.len() > 1 {
        return Err(Error::Precondition("[G, α] is a proper subgroup".into()));
    }
    let report = j_set(alpha)?;
    let fixed = &report.fixed_points;
    let mut bits = fixed.members().clone();
    for &j in &report.j_set {
        bits.intersect_with(fixed.conjugate_by(j).members());
    }
    let intersection = Subgroup::from_members(g, bits);
    let expected = g.center().intersection(fixed)?;
    let holds = intersection.same_members(&expected) && expected.is_subgroup_of(&g.center());
    Ok(CentralizerIntersection {
        intersection,
        expected,
        holds,
    })
}

/// `⟨G, α⟩` as a permutation group on the elements of `G`: right
/// translations by the generators together with `α` itself.
pub fn holomorph_extension(alpha: &AutomorphismMap, cap: usize, element_cap: usize) -> Result<GroupHandle> {
    let g = alpha.group();
    let n = g.order();
    if n > cap {
        return Err(Error::resource("holomorph extension degree", cap, n));
    }
    let mut gens: Vec<Permutation> = g
        .generator_indices()
        .iter()
        .map(|&s| Permutation::from_raw((0..n as u32).map(|x| g.mul(x, s)).collect()))
        .collect();
    gens.push(Permutation::from_raw(
        (0..n as u32).map(|x| alpha.apply_index(x)).collect(),
    ));
    close_group(&gens, element_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn group(list: &[&str], n: usize) -> GroupHandle {
        let gens: Vec<_> = list.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        close_group(&gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn inversion_on_c5() {
        let c5 = group(&["(1 2 3 4 5)"], 5);
        let inv = AutomorphismMap::inversion(&c5).unwrap();
        assert_eq!(inv.order(), 2);
        let r = j_set(&inv).unwrap();
        assert_eq!(r.j_len(), 5);
        assert!(r.generated_j.is_whole());
        assert_eq!(r.two_part, 1);
        assert!(r.fixed_points.is_trivial());
    }

    #[test]
    fn inner_transposition_on_a5() {
        let a5 = group(&["(1 2 3 4 5)", "(3 4 5)"], 5);
        let alpha = AutomorphismMap::inner(&a5, &p("(1 2)", 5)).unwrap();
        assert!(alpha.is_involution());
        assert_eq!(alpha.fixed_subgroup().order(), 6);
        let r = j_set(&alpha).unwrap();
        assert_eq!(r.j_len(), 7);
        assert_eq!(r.two_part, 2);
        let chain = engel_chain(&a5, Actor::Automorphism(alpha.clone()), None).unwrap();
        for j in 2..10 {
            assert_eq!(chain.set(j), &r.j_bits(), "j = {j}");
        }
        let c = centralizer_intersection_check(&alpha).unwrap();
        assert!(c.holds);
        assert!(c.intersection.is_trivial());
    }

    #[test]
    fn rejects_bad_images() {
        let a4 = group(&["(1 2 3)", "(2 3 4)"], 4);
        let err = AutomorphismMap::new(&a4, vec![p("(1 2)", 4), p("(2 3 4)", 4)]).unwrap_err();
        assert!(matches!(err, Error::InvalidAutomorphism(_)));
        // (ab)^2 = 1 in A4 but the images have a product of order 3
        let err = AutomorphismMap::new(&a4, vec![p("(1 2 3)", 4), p("(1 2 3)", 4)]).unwrap_err();
        assert!(err.to_string().contains("homomorphism"), "{err}");
        // trivial map is a homomorphism but not injective
        let err = AutomorphismMap::new(&a4, vec![p("()", 4), p("()", 4)]).unwrap_err();
        assert!(err.to_string().contains("injective"), "{err}");
    }

    #[test]
    fn engel_sets_in_s3() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let c = engel_chain(&s3, Actor::element(&s3, &p("(1 2 3)", 3)).unwrap(), None).unwrap();
        // [t, x] = x^2 for every transposition t, so E_1 = {1, x^2}
        assert_eq!(c.set(1).count_ones(..), 2);
        assert!(c.generated(1).order() == 3);
        assert_eq!(c.set(2).count_ones(..), 1);
        assert!(c.reaches_identity());
        let t = engel_chain(&s3, Actor::element(&s3, &p("(1 2)", 3)).unwrap(), None).unwrap();
        for k in 1..8 {
            assert_eq!(t.generated(k).order(), 3);
        }
        assert!(!t.reaches_identity());
        assert_eq!(t.stable_generated().order(), 3);
        assert_eq!(t.stable_descent().order(), 3);
    }

    #[test]
    fn abelian_engel_sets_vanish() {
        let c6 = group(&["(1 2 3 4 5 6)"], 6);
        let c = engel_chain(&c6, Actor::element(&c6, &p("(1 3 5)(2 4 6)", 6)).unwrap(), None).unwrap();
        assert_eq!(c.set(1).count_ones(..), 1);
        assert!(c.stable_generated().is_trivial());
        assert!(c.stable_descent().is_trivial());
    }

    #[test]
    fn k_cap_exhaustion() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let actor = Actor::element(&s3, &p("(1 2)", 3)).unwrap();
        assert!(engel_chain(&s3, actor, Some(1)).unwrap_err().is_resource());
    }

    #[test]
    fn holomorph_orders() {
        let c3 = group(&["(1 2 3)"], 3);
        let x = holomorph_extension(&AutomorphismMap::inversion(&c3).unwrap(), 5000, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(x.order(), 6);
        assert!(!x.is_abelian());
        let c5 = group(&["(1 2 3 4 5)"], 5);
        let x = holomorph_extension(&AutomorphismMap::inversion(&c5).unwrap(), 5000, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(x.order(), 10);
        assert!(holomorph_extension(&AutomorphismMap::inversion(&c5).unwrap(), 4, DEFAULT_ELEMENT_CAP).is_err());
        // right translations commute with the left translation hidden in an
        // inner automorphism, so the extension is A4 x C3 rather than A4
        let a4 = group(&["(1 2 3)", "(2 3 4)"], 4);
        let inner = AutomorphismMap::inner(&a4, &p("(1 2 3)", 4)).unwrap();
        let x = holomorph_extension(&inner, 5000, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(x.order(), 36);
    }

    #[test]
    fn identity_automorphism_brackets_vanish() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let id = AutomorphismMap::new(&s3, s3.generators().to_vec()).unwrap();
        assert!(id.is_identity());
        for g in s3.elements() {
            assert!(commutator_with_actor(&s3, g, &Actor::Automorphism(id.clone())).unwrap().is_identity());
        }
        assert!(j_set(&id).is_err());
    }
}
