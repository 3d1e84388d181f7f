//! Brute-force oracles on plain image vectors. Nothing here calls into the
//! engine except to read a group's generators, so agreement is meaningful.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use engel_fit::GroupHandle;

pub type P = Vec<usize>;
pub type Set = BTreeSet<P>;

pub fn id(n: usize) -> P {
    (0..n).collect()
}

/// `i^(pq) = (i^p)^q`
pub fn mul(p: &P, q: &P) -> P {
    p.iter().map(|&i| q[i]).collect()
}

pub fn inv(p: &P) -> P {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn comm(a: &P, b: &P) -> P {
    mul(&mul(&inv(a), &inv(b)), &mul(a, b))
}

pub fn conj(a: &P, t: &P) -> P {
    mul(&mul(&inv(t), a), t)
}

pub fn order(p: &P) -> usize {
    let n = p.len();
    let (mut q, mut k) = (p.clone(), 1);
    while q != id(n) {
        q = mul(&q, p);
        k += 1;
    }
    k
}

pub fn gens_of(g: &GroupHandle) -> Vec<P> {
    g.generators()
        .iter()
        .map(|p| p.images().iter().map(|&i| i as usize).collect())
        .collect()
}

pub fn elements_of(g: &GroupHandle) -> Set {
    g.elements()
        .iter()
        .map(|p| p.images().iter().map(|&i| i as usize).collect())
        .collect()
}

/// Breadth-first closure under right multiplication by generators.
pub fn closure(gens: &[P], n: usize) -> Set {
    let mut seen = Set::new();
    seen.insert(id(n));
    let mut queue = VecDeque::from([id(n)]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let next = mul(&e, g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

pub fn degree(s: &Set) -> usize {
    s.iter().next().map_or(0, Vec::len)
}

pub fn generated(elems: &Set, n: usize) -> Set {
    closure(&elems.iter().cloned().collect::<Vec<_>>(), n)
}

pub fn normal_closure(sub: &Set, g: &Set) -> Set {
    let n = degree(g);
    let conjugates: Set = sub.iter().flat_map(|a| g.iter().map(move |t| conj(a, t))).collect();
    generated(&conjugates, n)
}

pub fn is_normal(sub: &Set, g: &Set) -> bool {
    g.iter().all(|t| sub.iter().all(|a| sub.contains(&conj(a, t))))
}

pub fn commutator_subgroup(a: &Set, b: &Set) -> Set {
    let n = degree(a);
    let c: Set = a.iter().flat_map(|x| b.iter().map(move |y| comm(x, y))).collect();
    generated(&c, n)
}

pub fn is_nilpotent(h: &Set) -> bool {
    let mut term = h.clone();
    loop {
        let next = commutator_subgroup(&term, h);
        if next.len() == 1 {
            return true;
        }
        if next.len() == term.len() {
            return false;
        }
        term = next;
    }
}

pub fn is_soluble(h: &Set) -> bool {
    let mut term = h.clone();
    while term.len() > 1 {
        let next = commutator_subgroup(&term, &term);
        if next.len() == term.len() {
            return false;
        }
        term = next;
    }
    true
}

/// `x ∈ F(G)` iff the normal closure of `x` is nilpotent.
pub fn fitting(g: &Set) -> Set {
    g.iter()
        .filter(|x| is_nilpotent(&normal_closure(&[(*x).clone()].into(), g)))
        .cloned()
        .collect()
}

pub fn center(g: &Set) -> Set {
    g.iter()
        .filter(|z| g.iter().all(|h| mul(z, h) == mul(h, z)))
        .cloned()
        .collect()
}

pub fn centralizer(g: &Set, of: &Set) -> Set {
    g.iter()
        .filter(|z| of.iter().all(|h| mul(z, h) == mul(h, z)))
        .cloned()
        .collect()
}

/// Engel sets `E_0 = G, E_{k+1} = {[e, x] : e ∈ E_k}` until the first repeat.
pub fn engel_sets(g: &Set, x: &P) -> Vec<Set> {
    let mut sets = vec![g.clone()];
    loop {
        let next: Set = sets.last().unwrap().iter().map(|e| comm(e, x)).collect();
        if sets.contains(&next) {
            return sets;
        }
        sets.push(next);
    }
}

pub fn engel_sets_auto(g: &Set, alpha: &dyn Fn(&P) -> P) -> Vec<Set> {
    let mut sets = vec![g.clone()];
    loop {
        let next: Set = sets
            .last()
            .unwrap()
            .iter()
            .map(|e| mul(&inv(e), &alpha(e)))
            .collect();
        if sets.contains(&next) {
            return sets;
        }
        sets.push(next);
    }
}

pub fn baer(g: &Set, x: &P) -> bool {
    let n = degree(g);
    engel_sets(g, x).iter().skip(1).any(|s| s.len() == 1 && s.contains(&id(n)))
}

/// Odd order elements inverted by `alpha`.
pub fn j_set(g: &Set, alpha: &dyn Fn(&P) -> P) -> Set {
    g.iter()
        .filter(|e| order(e) % 2 == 1 && alpha(e) == inv(e))
        .cloned()
        .collect()
}

pub fn conjugacy_class_count(g: &Set) -> usize {
    let mut seen = Set::new();
    let mut count = 0;
    for x in g {
        if seen.contains(x) {
            continue;
        }
        count += 1;
        for t in g {
            seen.insert(conj(x, t));
        }
    }
    count
}

/// All subgroups generated by at most two elements. For the small groups
/// used in tests (symmetric, dihedral, cyclic, A_4, A_5) this is every subgroup.
pub fn two_generated_subgroups(g: &Set) -> Vec<Set> {
    let n = degree(g);
    let elems: Vec<&P> = g.iter().collect();
    let mut out: BTreeSet<Set> = BTreeSet::new();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i..] {
            out.insert(closure(&[(*a).clone(), (*b).clone()], n));
        }
    }
    let mut v: Vec<Set> = out.into_iter().collect();
    v.sort_by_key(Set::len);
    v
}

/// Subnormal by searching for a chain `A ⊴ A_1 ⊴ … ⊴ B` among `subs`.
pub fn subnormal_by_chains(subs: &[Set], a: usize, b: usize) -> bool {
    let mut reached = vec![false; subs.len()];
    reached[a] = true;
    let mut stack = vec![a];
    while let Some(i) = stack.pop() {
        if i == b {
            return true;
        }
        for j in 0..subs.len() {
            if !reached[j] && subs[i].is_subset(&subs[j]) && subs[j].is_subset(&subs[b]) && is_normal(&subs[i], &subs[j]) {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    false
}

pub fn to_engine(p: &P) -> engel_fit::Permutation {
    let one_based: Vec<usize> = p.iter().map(|&i| i + 1).collect();
    engel_fit::Permutation::from_images(&one_based).expect("valid images")
}

pub fn from_engine(p: &engel_fit::Permutation) -> P {
    p.images().iter().map(|&i| i as usize).collect()
}
