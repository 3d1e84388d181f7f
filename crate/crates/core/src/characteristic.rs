//! Characteristic subgroups and the length invariants built on them:
//! `F(G)`, `O_p(G)`, `O(G)`, the soluble radical, the layer `E(G)`,
//! `F*(G)`, the (generalized) Fitting series and insoluble length.
//!
//! Radicals are read off the normal-subgroup lattice as the join of the
//! members with the relevant property. Results are memoized on the group
//! handle; [`Analyzer`] interns handles by fingerprint so that structurally
//! equal groups reached along different routes share one memo.

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::group::{Fingerprint, GroupHandle, DEFAULT_ELEMENT_CAP};
use crate::lattice::{NormalLattice, DEFAULT_LATTICE_COUNT_CAP};
use crate::quotient::QuotientMap;
use crate::series::{SeriesKind, SeriesRecord};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: usize,
    pub lattice_count_cap: usize,
    /// Recompute `F*(G)` through the socle route and fail on disagreement.
    pub crosscheck: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
            lattice_count_cap: DEFAULT_LATTICE_COUNT_CAP,
            crosscheck: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharacteristicProfile {
    pub fitting: Subgroup,
    pub layer: Subgroup,
    pub gen_fitting: Subgroup,
    pub soluble_radical: Subgroup,
    pub odd_core: Subgroup,
    /// Only defined for soluble groups.
    pub fitting_height: Option<usize>,
    pub gen_fitting_height: usize,
    pub insoluble_length: usize,
}

/// Shared computation context: limits plus a fingerprint-keyed interner.
#[derive(Default)]
pub struct Analyzer {
    limits: Limits,
    interned: DashMap<Fingerprint, GroupHandle>,
}

impl Analyzer {
    pub fn new(limits: Limits) -> Self {
        Analyzer {
            limits,
            interned: DashMap::new(),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Canonical handle for the element set of `g`.
    pub fn intern(&self, g: &GroupHandle) -> GroupHandle {
        self.interned
            .entry(g.fingerprint())
            .or_insert_with(|| g.clone())
            .clone()
    }

    /// `sub` as a standalone (interned) group. Element numbering matches
    /// [`Subgroup::lift`] / [`Subgroup::restrict`].
    pub fn standalone(&self, sub: &Subgroup) -> GroupHandle {
        if sub.is_whole() {
            return self.intern(sub.parent());
        }
        self.intern(&sub.to_group())
    }

    fn own(&self, g: &GroupHandle, data: crate::subgroup::SubgroupData) -> Subgroup {
        Subgroup::from_data(g.clone(), data)
    }

    pub fn normal_lattice(&self, g: &GroupHandle) -> Result<NormalLattice> {
        g.normal_subgroups(self.limits.lattice_count_cap)
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientMap> {
        QuotientMap::new(n, self.limits.element_cap)
    }

    pub fn socle(&self, g: &GroupHandle) -> Result<Subgroup> {
        g.socle(self.limits.lattice_count_cap)
    }

    pub fn is_quasisimple(&self, g: &GroupHandle) -> Result<bool> {
        g.is_quasisimple(self.limits.lattice_count_cap)
    }

    /// Largest nilpotent normal subgroup.
    pub fn fitting_subgroup(&self, g: &GroupHandle) -> Result<Subgroup> {
        let data = g
            .memo()
            .fitting
            .get_or_try_init(|| -> Result<_> {
                if g.is_nilpotent() {
                    return Ok(g.whole().data().clone());
                }
                let f = self.normal_lattice(g)?.largest_with(Subgroup::is_nilpotent);
                if !f.is_nilpotent() {
                    return Err(Error::Consistency {
                        what: "Fitting subgroup".into(),
                        left: "join of nilpotent normal subgroups".into(),
                        right: "not nilpotent".into(),
                    });
                }
                Ok(f.data().clone())
            })?
            .clone();
        Ok(self.own(g, data))
    }

    /// Largest normal `p`-subgroup.
    pub fn o_p_core(&self, g: &GroupHandle, p: usize) -> Result<Subgroup> {
        Ok(self
            .normal_lattice(g)?
            .largest_with(|m| is_power_of(m.order(), p)))
    }

    /// Largest normal subgroup of odd order.
    pub fn odd_core(&self, g: &GroupHandle) -> Result<Subgroup> {
        Ok(self.normal_lattice(g)?.largest_with(|m| m.order() % 2 == 1))
    }

    pub fn soluble_radical(&self, g: &GroupHandle) -> Result<Subgroup> {
        let data = g
            .memo()
            .soluble_radical
            .get_or_try_init(|| -> Result<_> {
                if g.is_soluble() {
                    return Ok(g.whole().data().clone());
                }
                Ok(self
                    .normal_lattice(g)?
                    .largest_with(Subgroup::is_soluble)
                    .data()
                    .clone())
            })?
            .clone();
        Ok(self.own(g, data))
    }

    /// The layer: subgroup generated by the quasisimple subnormal subgroups.
    ///
    /// A component of a group that is not itself quasisimple lies in a
    /// maximal proper normal subgroup and is a component there, so the layer
    /// is the join of the layers of the maximal normal subgroups.
    pub fn layer(&self, g: &GroupHandle) -> Result<Subgroup> {
        let data = g
            .memo()
            .layer
            .get_or_try_init(|| -> Result<_> {
                if g.is_soluble() {
                    return Ok(g.trivial_subgroup().data().clone());
                }
                if self.is_quasisimple(g)? {
                    return Ok(g.whole().data().clone());
                }
                let mut acc = g.trivial_subgroup();
                for n in self.normal_lattice(g)?.maximal_members() {
                    let inner = self.standalone(&n);
                    let e = self.layer(&inner)?;
                    acc = acc.join(&n.lift(&e))?;
                }
                Ok(acc.data().clone())
            })?
            .clone();
        Ok(self.own(g, data))
    }

    /// `F*(G) = F(G)E(G)`. With `crosscheck` on, the socle route must agree.
    pub fn generalized_fitting(&self, g: &GroupHandle) -> Result<Subgroup> {
        let data = g
            .memo()
            .gen_fitting
            .get_or_try_init(|| -> Result<_> {
                let f = self.fitting_subgroup(g)?;
                let e = self.layer(g)?;
                let fstar = f.join(&e)?;
                if self.limits.crosscheck {
                    let other = self.generalized_fitting_via_socle(g)?;
                    if !other.same_members(&fstar) {
                        return Err(Error::Consistency {
                            what: "generalized Fitting subgroup".into(),
                            left: format!("F(G)E(G) of order {}", fstar.order()),
                            right: format!("socle route of order {}", other.order()),
                        });
                    }
                }
                Ok(fstar.data().clone())
            })?
            .clone();
        Ok(self.own(g, data))
    }

    /// Independent route to `F*(G)`: the preimage of the socle of
    /// `C_G(F(G))F(G)/F(G)`.
    pub fn generalized_fitting_via_socle(&self, g: &GroupHandle) -> Result<Subgroup> {
        let f = self.fitting_subgroup(g)?;
        if f.is_trivial() {
            return self.socle(g);
        }
        let cf = g.whole().centralizer_of_indices(f.generator_indices()).join(&f)?;
        let q = self.quotient(&f)?;
        let image = q.image_subgroup(&cf);
        let inner = self.standalone(&image);
        let soc = self.socle(&inner)?;
        Ok(q.preimage(&image.lift(&soc)))
    }

    fn ascending_series(
        &self,
        g: &GroupHandle,
        kind: SeriesKind,
        step: impl Fn(&Self, &GroupHandle) -> Result<Subgroup>,
    ) -> Result<SeriesRecord> {
        let mut terms: Vec<Subgroup> = Vec::new();
        if g.is_trivial() {
            return Ok(SeriesRecord::new(kind, terms));
        }
        let mut current = step(self, g)?;
        loop {
            if current.is_trivial() {
                return Err(Error::Consistency {
                    what: format!("{kind} series"),
                    left: "nontrivial group".into(),
                    right: "trivial term".into(),
                });
            }
            terms.push(current.clone());
            if current.is_whole() {
                break;
            }
            let q = self.quotient(&current)?;
            let image = self.intern(q.image());
            let next = q.preimage(&step(self, &image)?);
            if next.same_members(&current) {
                return Err(Error::Consistency {
                    what: format!("{kind} series"),
                    left: "strict ascent".into(),
                    right: format!("stalled at order {}", current.order()),
                });
            }
            current = next;
        }
        Ok(SeriesRecord::new(kind, terms))
    }

    /// `F*_1 = F*(G)`, `F*_i` the preimage of `F*(G/F*_{i-1})`, up to `G`.
    pub fn gen_fitting_series(&self, g: &GroupHandle) -> Result<SeriesRecord> {
        self.ascending_series(g, SeriesKind::GeneralizedFitting, |a, h| a.generalized_fitting(h))
    }

    pub fn gen_fitting_height(&self, g: &GroupHandle) -> Result<usize> {
        g.memo()
            .gen_fitting_height
            .get_or_try_init(|| Ok(self.gen_fitting_series(g)?.length))
            .copied()
    }

    /// Fitting series of a soluble group.
    pub fn fitting_series(&self, g: &GroupHandle) -> Result<SeriesRecord> {
        if !g.is_soluble() {
            return Err(Error::Precondition("Fitting series needs a soluble group".into()));
        }
        self.ascending_series(g, SeriesKind::Fitting, |a, h| a.fitting_subgroup(h))
    }

    pub fn fitting_height(&self, g: &GroupHandle) -> Result<usize> {
        Ok(self.fitting_series(g)?.length)
    }

    /// Insoluble length: 0 for soluble groups, otherwise one more than the
    /// length of `G/T`, where `T/R₀(G)` is the socle of `G/R₀(G)`.
    pub fn insoluble_length(&self, g: &GroupHandle) -> Result<usize> {
        g.memo()
            .insoluble_length
            .get_or_try_init(|| -> Result<usize> {
                if g.is_soluble() {
                    return Ok(0);
                }
                let r0 = self.soluble_radical(g)?;
                let t = if r0.is_trivial() {
                    self.socle(g)?
                } else {
                    let q = self.quotient(&r0)?;
                    let image = self.intern(q.image());
                    q.preimage(&self.socle(&image)?)
                };
                if t.is_whole() {
                    return Ok(1);
                }
                let q = self.quotient(&t)?;
                Ok(1 + self.insoluble_length(&self.intern(q.image()))?)
            })
            .copied()
    }

    /// `R_h(G)`: the join of the normal subgroups of insoluble length ≤ h.
    pub fn insoluble_radical(&self, g: &GroupHandle, h: usize) -> Result<Subgroup> {
        if h == 0 {
            return self.soluble_radical(g);
        }
        let lattice = self.normal_lattice(g)?;
        let mut acc = g.trivial_subgroup();
        for m in lattice.members() {
            if m.is_subgroup_of(&acc) {
                continue;
            }
            if self.insoluble_length(&self.standalone(m))? <= h {
                acc = acc.join(m)?;
            }
        }
        Ok(acc)
    }

    /// `R_0 ≤ R_1 ≤ … ≤ R_{h_max}`, trimmed once a term reaches `G`.
    pub fn upper_insoluble_series(&self, g: &GroupHandle, h_max: usize) -> Result<SeriesRecord> {
        let mut terms = Vec::new();
        for h in 0..=h_max {
            let r = self.insoluble_radical(g, h)?;
            let done = r.is_whole();
            terms.push(r);
            if done {
                break;
            }
        }
        Ok(SeriesRecord::new(SeriesKind::InsolubleUpper, terms))
    }

    pub fn profile(&self, g: &GroupHandle) -> Result<CharacteristicProfile> {
        let g = self.intern(g);
        Ok(CharacteristicProfile {
            fitting: self.fitting_subgroup(&g)?,
            layer: self.layer(&g)?,
            gen_fitting: self.generalized_fitting(&g)?,
            soluble_radical: self.soluble_radical(&g)?,
            odd_core: self.odd_core(&g)?,
            fitting_height: if g.is_soluble() {
                Some(self.fitting_height(&g)?)
            } else {
                None
            },
            gen_fitting_height: self.gen_fitting_height(&g)?,
            insoluble_length: self.insoluble_length(&g)?,
        })
    }

    /// Number of interned groups (diagnostics).
    pub fn interned_count(&self) -> usize {
        self.interned.len()
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::close_group;
    use crate::perm::Permutation;

    fn group(list: &[&str], n: usize) -> GroupHandle {
        let gens: Vec<_> = list.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        close_group(&gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn checked() -> Analyzer {
        Analyzer::new(Limits {
            crosscheck: true,
            ..Limits::default()
        })
    }

    #[test]
    fn s4_invariants() {
        let a = checked();
        let g = group(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(a.fitting_subgroup(&g).unwrap().order(), 4);
        assert_eq!(a.o_p_core(&g, 2).unwrap().order(), 4);
        assert!(a.o_p_core(&g, 3).unwrap().is_trivial());
        assert!(a.layer(&g).unwrap().is_trivial());
        assert_eq!(a.generalized_fitting(&g).unwrap().order(), 4);
        let s = a.gen_fitting_series(&g).unwrap();
        assert_eq!(s.orders(), vec![4, 12, 24]);
        assert_eq!(s.length, 3);
        assert_eq!(a.fitting_height(&g).unwrap(), 3);
        assert_eq!(a.insoluble_length(&g).unwrap(), 0);
        assert!(a.soluble_radical(&g).unwrap().is_whole());
    }

    #[test]
    fn s5_invariants() {
        let a = checked();
        let g = group(&["(1 2)", "(1 2 3 4 5)"], 5);
        assert!(a.fitting_subgroup(&g).unwrap().is_trivial());
        assert_eq!(a.layer(&g).unwrap().order(), 60);
        assert_eq!(a.generalized_fitting(&g).unwrap().order(), 60);
        assert_eq!(a.gen_fitting_series(&g).unwrap().orders(), vec![60, 120]);
        assert_eq!(a.insoluble_length(&g).unwrap(), 1);
        assert!(a.soluble_radical(&g).unwrap().is_trivial());
        let r = a.upper_insoluble_series(&g, 3).unwrap();
        assert_eq!(r.orders(), vec![1, 120]);
        assert!(a.fitting_series(&g).is_err());
    }

    #[test]
    fn s3_odd_core() {
        let a = checked();
        let g = group(&["(1 2)", "(1 2 3)"], 3);
        assert_eq!(a.odd_core(&g).unwrap().order(), 3);
    }

    #[test]
    fn trivial_group_heights() {
        let a = checked();
        let g = group(&["()"], 1);
        assert_eq!(a.gen_fitting_height(&g).unwrap(), 0);
        assert!(a.gen_fitting_series(&g).unwrap().terms.is_empty());
        assert_eq!(a.insoluble_length(&g).unwrap(), 0);
    }
}
