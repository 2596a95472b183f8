use std::fmt;

use serde::Serialize;

use crate::bitset::{ObjSet, ObjectId};
use crate::error::{Error, Result};
use crate::presentation::ModulePresentation;
use crate::thick::ThickSubmodule;

/// Families above this size are rejected: the directed-union check
/// enumerates every subfamily.
pub const MAX_FAMILY_SIZE: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum FamilyViolation {
    /// The full module is not a member.
    MissingFull,
    /// The meet of two members is not a member.
    NotIntersectionClosed {
        left: ObjSet,
        right: ObjSet,
    },
    /// A directed subfamily whose union is not a member.
    NotDirectedUnionClosed {
        subfamily: Vec<ObjSet>,
    },
    TooLarge {
        size: usize,
    },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::MissingFull => write!(f, "the full module is not in the family"),
            FamilyViolation::NotIntersectionClosed { left, right } => {
                write!(f, "{left:?} ∩ {right:?} is not in the family")
            }
            FamilyViolation::NotDirectedUnionClosed { subfamily } => {
                write!(
                    f,
                    "union of directed subfamily {subfamily:?} is not in the family"
                )
            }
            FamilyViolation::TooLarge { size } => write!(
                f,
                "family has {size} members; directed-union check is limited to {MAX_FAMILY_SIZE}"
            ),
        }
    }
}

/// A family of thick submodules containing `M`, closed under meets and
/// directed unions.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    members: Vec<ThickSubmodule>,
    /// Meet of the members containing each object.
    meets: Vec<ObjSet>,
}

impl FamilySpec {
    pub fn new(p: &ModulePresentation, members: Vec<ThickSubmodule>) -> Result<Self> {
        if members.iter().any(|m| !m.belongs_to(p)) {
            return Err(Error::PresentationMismatch);
        }
        let mut members = members;
        members.sort_by_key(|s| (s.len(), s.members().bits()));
        members.dedup();
        if let Some(v) = Self::check(p, &members) {
            return Err(Error::Family(v));
        }
        let meets = p
            .module_objects()
            .iter()
            .map(|m| {
                members
                    .iter()
                    .filter(|f| f.contains(m))
                    .fold(p.module_objects(), |acc, f| acc.intersection(f.members()))
            })
            .collect();
        Ok(FamilySpec { members, meets })
    }

    /// First violated family condition, if any.
    pub fn check(p: &ModulePresentation, members: &[ThickSubmodule]) -> Option<FamilyViolation> {
        let sets: Vec<ObjSet> = members.iter().map(ThickSubmodule::members).collect();
        if !sets.contains(&p.module_objects()) {
            return Some(FamilyViolation::MissingFull);
        }
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if !sets.contains(&a.intersection(b)) {
                    return Some(FamilyViolation::NotIntersectionClosed { left: a, right: b });
                }
            }
        }
        directed_union_gap(&sets)
    }

    pub fn members(&self) -> &[ThickSubmodule] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, n: &ThickSubmodule) -> bool {
        self.members.contains(n)
    }

    pub(crate) fn belongs_to(&self, p: &ModulePresentation) -> bool {
        self.members.iter().all(|m| m.belongs_to(p))
    }

    /// Meet of the members containing `m`.
    pub fn meet_containing(&self, m: ObjectId) -> ObjSet {
        self.meets[m.index()]
    }
}

/// Searches every nonempty subfamily; a subfamily is directed when each
/// pair of its members has an upper bound inside it.
fn directed_union_gap(sets: &[ObjSet]) -> Option<FamilyViolation> {
    let k = sets.len();
    if k > MAX_FAMILY_SIZE {
        return Some(FamilyViolation::TooLarge { size: k });
    }
    // bounds[i][j]: indices of members containing both i and j
    let bounds: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let both = sets[i].union(sets[j]);
                    (0..k)
                        .filter(|&l| both.is_subset(sets[l]))
                        .fold(0u32, |acc, l| acc | (1 << l))
                })
                .collect()
        })
        .collect();
    for sub in 1u32..(1u32 << k) {
        let idx: Vec<usize> = (0..k).filter(|&i| sub & (1 << i) != 0).collect();
        let directed = idx
            .iter()
            .all(|&i| idx.iter().all(|&j| bounds[i][j] & sub != 0));
        if !directed {
            continue;
        }
        let union = idx.iter().fold(ObjSet::EMPTY, |acc, &i| acc.union(sets[i]));
        if !sets.contains(&union) {
            return Some(FamilyViolation::NotDirectedUnionClosed {
                subfamily: idx.iter().map(|&i| sets[i]).collect(),
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::support_model;
    use crate::thick::all_submodules;

    #[test]
    fn family_needs_the_full_module() {
        let p = support_model(2).unwrap();
        let pts = all_submodules(&p);
        // pts = [{z}, {z,a}, {z,b}, full]
        let err = FamilySpec::new(&p, vec![pts[1], pts[2]]).unwrap_err();
        assert!(matches!(err, Error::Family(FamilyViolation::MissingFull)));
    }

    #[test]
    fn family_needs_meets() {
        let p = support_model(2).unwrap();
        let pts = all_submodules(&p);
        let err = FamilySpec::new(&p, vec![pts[1], pts[2], pts[3]]).unwrap_err();
        assert!(matches!(
            err,
            Error::Family(FamilyViolation::NotIntersectionClosed { .. })
        ));
    }

    #[test]
    fn meets_of_principal_family() {
        let p = support_model(2).unwrap();
        let pts = all_submodules(&p);
        let fam = FamilySpec::new(&p, vec![pts[0], pts[3]]).unwrap();
        assert_eq!(fam.meet_containing(p.zero()), pts[0].members());
        assert_eq!(fam.meet_containing(ObjectId(1)), pts[3].members());
    }

    #[test]
    fn directed_union_check_accepts_chains() {
        let sets = [0b1u64, 0b11, 0b111].map(ObjSet::from_bits);
        assert_eq!(directed_union_gap(&sets), None);
        // {1} and {2} have no upper bound inside, so {1},{2} is not directed
        let sets = [0b01u64, 0b10].map(ObjSet::from_bits);
        assert_eq!(directed_union_gap(&sets), None);
    }

    #[test]
    fn directed_union_check_rejects_oversized_families() {
        let sets: Vec<ObjSet> = (0..17).map(|i| ObjSet::from_bits(1 << i)).collect();
        assert_eq!(
            directed_union_gap(&sets),
            Some(FamilyViolation::TooLarge { size: 17 })
        );
    }
}
