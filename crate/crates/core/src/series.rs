use std::fmt;

use serde::{Deserialize, Serialize};

use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Fitting,
    GeneralizedFitting,
    InsolubleUpper,
    Derived,
    LowerCentral,
    EngelChain,
    NormalClosureDescent,
}

impl SeriesKind {
    /// Ascending series list their terms bottom-up and do not include the
    /// trivial starting term; descending ones start at the ambient group.
    pub fn is_ascending(self) -> bool {
        matches!(
            self,
            SeriesKind::Fitting | SeriesKind::GeneralizedFitting | SeriesKind::InsolubleUpper
        )
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesKind::Fitting => "fitting",
            SeriesKind::GeneralizedFitting => "generalized_fitting",
            SeriesKind::InsolubleUpper => "insoluble_upper",
            SeriesKind::Derived => "derived",
            SeriesKind::LowerCentral => "lower_central",
            SeriesKind::EngelChain => "engel_chain",
            SeriesKind::NormalClosureDescent => "normal_closure_descent",
        };
        f.write_str(s)
    }
}

/// A chain of subgroups of one parent group, with the trailing repetition
/// trimmed.
///
/// `length` counts the factors of the chain: for the Fitting-type series it
/// is the number of terms (the height), for `InsolubleUpper` it is the index
/// of the last term, and for descending series it is the number of steps.
#[derive(Debug, Clone)]
pub struct SeriesRecord {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    pub length: usize,
}

impl SeriesRecord {
    pub(crate) fn new(kind: SeriesKind, mut terms: Vec<Subgroup>) -> Self {
        terms.dedup_by(|a, b| a.same_members(b));
        let length = match kind {
            SeriesKind::Fitting | SeriesKind::GeneralizedFitting => terms.len(),
            _ => terms.len().saturating_sub(1),
        };
        SeriesRecord {
            kind,
            terms,
            length,
        }
    }

    pub fn last(&self) -> Option<&Subgroup> {
        self.terms.last()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }

    /// Terms are monotone in the direction fixed by the kind.
    pub fn is_monotone(&self) -> bool {
        self.terms.windows(2).all(|w| {
            if self.kind.is_ascending() {
                w[0].is_subgroup_of(&w[1]) && !w[0].same_members(&w[1])
            } else {
                w[1].is_subgroup_of(&w[0]) && !w[0].same_members(&w[1])
            }
        })
    }
}
