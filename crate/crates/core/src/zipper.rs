//! Full subgroup lattices of small groups, normal-closure descending series
//! and the `Y_G(A)` / unique-maximal-subgroup dichotomy.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::series::SeriesRecord;
use crate::subgroup::{extend, Subgroup};

pub const DEFAULT_LATTICE_MAX_ORDER: usize = 360;
pub const DEFAULT_SUBGROUP_COUNT_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy)]
pub struct LatticeCaps {
    pub max_order: usize,
    pub max_members: usize,
}

impl Default for LatticeCaps {
    fn default() -> Self {
        LatticeCaps {
            max_order: DEFAULT_LATTICE_MAX_ORDER,
            max_members: DEFAULT_SUBGROUP_COUNT_CAP,
        }
    }
}

/// Every subgroup of a group, sorted by `(order, fingerprint)`.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    parent: GroupHandle,
    members: Vec<Subgroup>,
    position: FxHashMap<FixedBitSet, usize>,
    maximal: Vec<usize>,
}

/// Cyclic subgroups closed under joins with cyclic subgroups. Every subgroup
/// is generated by its cyclic subgroups, so this reaches all of them.
pub fn all_subgroups(group: &GroupHandle, caps: LatticeCaps) -> Result<SubgroupLattice> {
    if group.order() > caps.max_order {
        return Err(Error::resource("subgroup lattice order", caps.max_order, group.order()));
    }
    let mut seen: FxHashMap<FixedBitSet, ()> = FxHashMap::default();
    let mut cyclic = Vec::new();
    for g in 0..group.order() as u32 {
        let c = Subgroup::generated(group, &[g]);
        if seen.insert(c.members().clone(), ()).is_none() {
            cyclic.push(c);
        }
    }
    let mut data: Vec<_> = cyclic.iter().map(|c| c.data().clone()).collect();
    let mut i = 0;
    while i < data.len() {
        for c in &cyclic {
            if c.members().is_subset(&data[i].members) {
                continue;
            }
            let joined = extend(group, &data[i], c.generator_indices());
            if seen.insert(joined.members.clone(), ()).is_none() {
                data.push(joined);
                if data.len() > caps.max_members {
                    return Err(Error::resource("subgroup lattice members", caps.max_members, data.len()));
                }
            }
        }
        i += 1;
    }
    let mut members: Vec<Subgroup> = data
        .into_iter()
        .map(|d| Subgroup::from_data(group.clone(), d))
        .collect();
    members.sort_by_cached_key(|s| (s.order(), s.fingerprint()));
    let position = members
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members().clone(), i))
        .collect();
    let top = members.len() - 1;
    let maximal = (0..top)
        .filter(|&i| {
            !(0..top).any(|j| members[j].order() > members[i].order() && members[i].is_subgroup_of(&members[j]))
        })
        .collect();
    Ok(SubgroupLattice {
        parent: group.clone(),
        members,
        position,
        maximal,
    })
}

impl SubgroupLattice {
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

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.members[i]
    }

    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.position.get(s.members()).copied()
    }

    /// Positions of the maximal subgroups.
    pub fn maximal(&self) -> &[usize] {
        &self.maximal
    }

    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        self.maximal.iter().map(|&i| self.members[i].clone()).collect()
    }

    /// `M(A)`: maximal subgroups containing `a`.
    pub fn maximal_over(&self, a: &Subgroup) -> Vec<usize> {
        self.maximal
            .iter()
            .copied()
            .filter(|&m| a.is_subgroup_of(&self.members[m]))
            .collect()
    }

    /// Positions of members containing `a`, ascending.
    pub fn overgroups(&self, a: &Subgroup) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i].order() >= a.order() && a.is_subgroup_of(&self.members[i]))
            .collect()
    }
}

/// `H₀ = H`, `H_{i+1} = ⟨A^{H_i}⟩` down to its stable term `F(A, H)`.
pub fn normal_closure_descent(a: &Subgroup, h: &Subgroup) -> Result<SeriesRecord> {
    if !a.is_subgroup_of(h) {
        return Err(Error::Precondition("A is not contained in H".into()));
    }
    Ok(a.subnormality(h)?.1)
}

/// Structural checks on a descent for `a` in `h`: successive normality,
/// subnormality of each term in `h`, and `⟨A^F⟩ = F` for the stable term.
pub fn descent_violations(a: &Subgroup, h: &Subgroup, series: &SeriesRecord) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, pair) in series.terms.windows(2).enumerate() {
        if !pair[1].is_normal_in(&pair[0]) {
            out.push(format!("H_{} is not normal in H_{}", i + 1, i));
        }
    }
    for (j, term) in series.terms.iter().enumerate() {
        if !term.is_subnormal_in(h)? {
            out.push(format!("H_{j} is not subnormal in H"));
        }
    }
    let stable = series.last().expect("descent starts at H");
    if !a.normal_closure_in(stable)?.same_members(stable) {
        out.push("stable term is not the normal closure of A in itself".into());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    YEqualsG,
    UniqueMaximal,
}

#[derive(Debug, Clone)]
pub struct ZipperCase {
    pub a: usize,
    /// Proper members `H ≥ A` with `⟨A^H⟩ = H`.
    pub omega: Vec<usize>,
    pub y: Subgroup,
    pub maximal_over_a: Vec<usize>,
    /// `None` when neither branch holds.
    pub branch: Option<Branch>,
    /// Both branches hold at once.
    pub both: bool,
    pub unique_max_element: bool,
    pub violations: Vec<String>,
}

/// Evaluates the dichotomy for the member at `a_pos`, together with the
/// descent checks on every maximal overgroup.
pub fn zipper_case(lattice: &SubgroupLattice, a_pos: usize) -> Result<ZipperCase> {
    let g = lattice.parent();
    let a = lattice.get(a_pos);
    if !a.normal_closure().is_whole() {
        return Err(Error::Precondition("normal closure of A is not G".into()));
    }
    if a.is_whole() {
        return Err(Error::Precondition("A must be a proper subgroup".into()));
    }
    let mut omega = Vec::new();
    let mut y = g.trivial_subgroup();
    for h in lattice.overgroups(a) {
        let hs = lattice.get(h);
        if hs.is_whole() {
            continue;
        }
        if a.normal_closure_in(hs)?.same_members(hs) {
            omega.push(h);
            y = y.join(hs)?;
        }
    }
    let maximal_over_a = lattice.maximal_over(a);
    let y_is_g = y.is_whole();
    let unique = maximal_over_a.len() == 1;
    let branch = match (y_is_g, unique) {
        (true, _) => Some(Branch::YEqualsG),
        (false, true) => Some(Branch::UniqueMaximal),
        (false, false) => None,
    };
    let mut violations = Vec::new();
    if branch.is_none() {
        violations.push(format!(
            "Y has order {} < |G| and A lies in {} maximal subgroups",
            y.order(),
            maximal_over_a.len()
        ));
    }
    let mut stables = Vec::new();
    for &m in &maximal_over_a {
        let h = lattice.get(m);
        let series = normal_closure_descent(a, h)?;
        for v in descent_violations(a, h, &series)? {
            violations.push(format!("descent in maximal #{m}: {v}"));
        }
        let stable = series.last().unwrap().clone();
        for &l in &omega {
            let ls = lattice.get(l);
            if ls.is_subgroup_of(h) && !ls.is_subgroup_of(&stable) {
                violations.push(format!(
                    "member #{l} with <A^L> = L lies in maximal #{m} but not in F(A, H)"
                ));
            }
        }
        stables.push(stable);
    }
    if !y_is_g && unique && !y.same_members(&stables[0]) {
        violations.push("Y differs from F(A, M) for the unique maximal M".into());
    }
    Ok(ZipperCase {
        a: a_pos,
        omega,
        y,
        maximal_over_a,
        branch,
        both: y_is_g && unique,
        unique_max_element: has_unique_max(&stables),
        violations,
    })
}

fn has_unique_max(set: &[Subgroup]) -> bool {
    let maxima = set
        .iter()
        .enumerate()
        .filter(|(i, s)| {
            !set
                .iter()
                .enumerate()
                .any(|(j, t)| j != *i && s.is_subgroup_of(t) && !s.same_members(t))
        })
        .map(|(_, s)| s)
        .collect::<Vec<_>>();
    maxima.windows(2).all(|w| w[0].same_members(w[1])) && !maxima.is_empty()
}

/// Whether `{F(A, H) : H ∈ M(A)}` has a unique maximal element.
pub fn unique_max_element_check(lattice: &SubgroupLattice, a: &Subgroup) -> Result<bool> {
    let over = lattice.maximal_over(a);
    if over.is_empty() {
        return Err(Error::Precondition("A lies in no maximal subgroup".into()));
    }
    let stables = over
        .iter()
        .map(|&m| Ok(normal_closure_descent(a, lattice.get(m))?.last().unwrap().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(has_unique_max(&stables))
}

/// If `A` is subnormal in every maximal overgroup except possibly one, then
/// `F(A, L) = A` for each of those overgroups `L`. Returns the violations.
pub fn subnormal_overgroup_violations(lattice: &SubgroupLattice, a_pos: usize) -> Result<Vec<String>> {
    let a = lattice.get(a_pos);
    let over = lattice.maximal_over(a);
    let mut out = Vec::new();
    if over.len() < 2 {
        return Ok(out);
    }
    let flags = over
        .iter()
        .map(|&m| a.subnormality(lattice.get(m)))
        .collect::<Result<Vec<_>>>()?;
    if flags.iter().filter(|(s, _)| !s).count() > 1 {
        return Ok(out);
    }
    for (&m, (subnormal, series)) in over.iter().zip(&flags) {
        if *subnormal && !series.last().unwrap().same_members(a) {
            out.push(format!("A subnormal in maximal #{m} but F(A, L) != A"));
        }
    }
    Ok(out)
}
