//! Thick `K`-submodules: membership, the bar/delta generation steps, the
//! generation fixpoint with provenance certificates, finite witness
//! extraction, principal submodules and the join `N + N'`.

use serde::Serialize;

use crate::bitset::{ObjSet, ObjectId};
use crate::error::{Error, Result};
use crate::presentation::{ModulePresentation, Triangle};

/// A set of module objects satisfying the three closure conditions and
/// containing zero. Tied to the presentation it was checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThickSubmodule {
    members: ObjSet,
    fingerprint: u64,
}

impl ThickSubmodule {
    /// Checks `members` and wraps it, or reports the first violation.
    pub fn new(p: &ModulePresentation, members: ObjSet) -> Result<Self> {
        match is_thick(p, members)? {
            Thickness::Thick => Ok(Self::trusted(p, members)),
            Thickness::Violated(v) => Err(Error::NotThick(v.to_string())),
        }
    }

    pub(crate) fn trusted(p: &ModulePresentation, members: ObjSet) -> Self {
        debug_assert!(matches!(is_thick(p, members), Ok(Thickness::Thick)));
        ThickSubmodule {
            members,
            fingerprint: p.fingerprint(),
        }
    }

    pub fn zero(p: &ModulePresentation) -> Self {
        Self::trusted(p, ObjSet::singleton(p.zero()))
    }

    /// `M` itself.
    pub fn full(p: &ModulePresentation) -> Self {
        Self::trusted(p, p.module_objects())
    }

    pub fn members(&self) -> ObjSet {
        self.members
    }

    pub fn contains(&self, m: ObjectId) -> bool {
        self.members.contains(m)
    }

    pub fn is_subset(&self, other: &ThickSubmodule) -> bool {
        self.members.is_subset(other.members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn belongs_to(&self, p: &ModulePresentation) -> bool {
        self.fingerprint == p.fingerprint()
    }

    pub fn names(&self, p: &ModulePresentation) -> Vec<String> {
        p.names_of(self.members)
    }

    /// `{z, a, b}` style label.
    pub fn label(&self, p: &ModulePresentation) -> String {
        format!("{{{}}}", self.names(p).join(","))
    }
}

/// First failed condition of the thickness test, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum ThickViolation {
    MissingZero,
    /// `scalar * member` falls outside the set.
    ActionEscape {
        scalar: ObjectId,
        member: ObjectId,
        product: ObjectId,
    },
    /// Two entries of a stored triangle lie in the set, the third does not.
    TwoOutOfThree {
        triangle: Triangle,
        outside: ObjectId,
    },
    /// Both summands lie in the set but their sum does not.
    SumEscape {
        left: ObjectId,
        right: ObjectId,
        sum: ObjectId,
    },
    /// The sum lies in the set but a summand does not.
    SummandEscape {
        left: ObjectId,
        right: ObjectId,
        sum: ObjectId,
    },
}

impl std::fmt::Display for ThickViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThickViolation::MissingZero => write!(f, "zero object missing"),
            ThickViolation::ActionEscape {
                scalar,
                member,
                product,
            } => write!(f, "{scalar} * {member} = {product} escapes"),
            ThickViolation::TwoOutOfThree { triangle, outside } => {
                let [a, b, c] = triangle.entries();
                write!(f, "triangle ({a}, {b}, {c}) leaves out {outside}")
            }
            ThickViolation::SumEscape { left, right, sum } => {
                write!(f, "{left} (+) {right} = {sum} escapes")
            }
            ThickViolation::SummandEscape { left, right, sum } => {
                write!(f, "{sum} = {left} (+) {right} has a summand outside")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Thickness {
    Thick,
    Violated(ThickViolation),
}

impl Thickness {
    pub fn holds(&self) -> bool {
        matches!(self, Thickness::Thick)
    }
}

/// Decides thickness of `s`. Conditions are tried in the order zero,
/// action, two-out-of-three, summands; the first failure is returned.
pub fn is_thick(p: &ModulePresentation, s: ObjSet) -> Result<Thickness> {
    p.check_set(s)?;
    Ok(match first_violation(p, s) {
        None => Thickness::Thick,
        Some(v) => Thickness::Violated(v),
    })
}

pub(crate) fn first_violation(p: &ModulePresentation, s: ObjSet) -> Option<ThickViolation> {
    if !s.contains(p.zero()) {
        return Some(ThickViolation::MissingZero);
    }
    for member in s.iter() {
        for scalar in p.category_objects().iter() {
            let product = p.act(scalar, member);
            if !s.contains(product) {
                return Some(ThickViolation::ActionEscape {
                    scalar,
                    member,
                    product,
                });
            }
        }
    }
    for &triangle in p.triangles() {
        let inside = triangle.entries().map(|x| s.contains(x));
        if inside.iter().filter(|&&b| b).count() == 2 {
            let pos = inside.iter().position(|&b| !b).unwrap();
            return Some(ThickViolation::TwoOutOfThree {
                triangle,
                outside: triangle.entries()[pos],
            });
        }
    }
    let all = p.module_objects();
    for left in all.iter() {
        for right in all.iter() {
            let sum = p.sum(left, right);
            let parts = s.contains(left) && s.contains(right);
            match (parts, s.contains(sum)) {
                (true, false) => return Some(ThickViolation::SumEscape { left, right, sum }),
                (false, true) => return Some(ThickViolation::SummandEscape { left, right, sum }),
                _ => {}
            }
        }
    }
    None
}

/// `{ n | n (+) n' = a * m for some m in X, a in K, n' in M }`.
pub fn bar(p: &ModulePresentation, x: ObjSet) -> Result<ObjSet> {
    p.check_set(x)?;
    Ok(bar_unchecked(p, x))
}

fn bar_unchecked(p: &ModulePresentation, x: ObjSet) -> ObjSet {
    let mut out = ObjSet::EMPTY;
    for m in x.iter() {
        for a in p.category_objects().iter() {
            out = out.union(p.summands_of(p.act(a, m)));
        }
    }
    out
}

/// Objects that complete a stored triangle whose other two entries lie in `X`.
pub fn delta(p: &ModulePresentation, x: ObjSet) -> Result<ObjSet> {
    p.check_set(x)?;
    Ok(delta_unchecked(p, x))
}

fn delta_unchecked(p: &ModulePresentation, x: ObjSet) -> ObjSet {
    let mut out = ObjSet::EMPTY;
    for t in p.triangles() {
        let [u, v, w] = t.entries();
        let (iu, iv, iw) = (x.contains(u), x.contains(v), x.contains(w));
        if iv && iw {
            out.insert(u);
        }
        if iu && iw {
            out.insert(v);
        }
        if iu && iv {
            out.insert(w);
        }
    }
    out
}

/// How a predecessor of a triangle step was obtained from the previous stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "via", rename_all = "kebab-case")]
pub enum BarLink {
    /// Already a member of the previous stage.
    Member { object: ObjectId },
    /// `object (+) cofactor = scalar * source` with `source` in the previous stage.
    Summand {
        object: ObjectId,
        scalar: ObjectId,
        source: ObjectId,
        cofactor: ObjectId,
    },
}

impl BarLink {
    fn source(self) -> ObjectId {
        match self {
            BarLink::Member { object } => object,
            BarLink::Summand { source, .. } => source,
        }
    }
}

/// Why an object entered the generated set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Provenance {
    /// Stage-0 object: a seed or the zero object.
    Seed,
    /// A summand of `scalar * source` with `source` in the previous stage.
    Summand {
        scalar: ObjectId,
        source: ObjectId,
        cofactor: ObjectId,
    },
    /// Completes `triangle` at `position`; the other two entries come from
    /// the bar of the previous stage via `links`.
    Triangle {
        triangle: Triangle,
        position: usize,
        links: [BarLink; 2],
    },
}

impl Provenance {
    /// Objects of the previous stage this step was derived from.
    pub fn predecessors(&self) -> Vec<ObjectId> {
        match *self {
            Provenance::Seed => vec![],
            Provenance::Summand { source, .. } => vec![source],
            Provenance::Triangle { links, .. } => links.iter().map(|l| l.source()).collect(),
        }
    }
}

/// Stage and provenance of every member of a generated submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationCertificate {
    seeds: ObjSet,
    stages: Vec<Option<usize>>,
    provenance: Vec<Option<Provenance>>,
    chain: Vec<ObjSet>,
}

impl GenerationCertificate {
    pub fn seeds(&self) -> ObjSet {
        self.seeds
    }

    pub fn stage(&self, m: ObjectId) -> Option<usize> {
        self.stages.get(m.index()).copied().flatten()
    }

    pub fn provenance(&self, m: ObjectId) -> Option<&Provenance> {
        self.provenance.get(m.index()).and_then(Option::as_ref)
    }

    /// `X_0 ⊆ X_1 ⊆ ...` up to and including the stable stage.
    pub fn chain(&self) -> &[ObjSet] {
        &self.chain
    }

    pub fn members(&self) -> ObjSet {
        *self.chain.last().expect("chain has at least X_0")
    }

    /// Seeds reached by walking the provenance of `m` back to stage 0.
    ///
    /// The returned set is a subset of the seeds and generates a submodule
    /// containing `m`. It is minimal along the recorded derivation only.
    pub fn witnesses(&self, m: ObjectId) -> Result<ObjSet> {
        if self.stage(m).is_none() {
            return Err(Error::NotGenerated(m.index()));
        }
        let mut found = ObjSet::EMPTY;
        let mut visited = ObjSet::EMPTY;
        let mut stack = vec![m];
        while let Some(x) = stack.pop() {
            if !visited.insert(x) {
                continue;
            }
            match self.provenance(x) {
                Some(Provenance::Seed) | None => {
                    if self.seeds.contains(x) {
                        found.insert(x);
                    }
                }
                Some(prov) => stack.extend(prov.predecessors()),
            }
        }
        Ok(found)
    }
}

/// Smallest thick submodule containing `X`, by iterating
/// `X_0 = X ∪ {0}`, `X_{i+1} = delta(bar(X_i))` to stability.
pub fn generate(
    p: &ModulePresentation,
    x: ObjSet,
) -> Result<(ThickSubmodule, GenerationCertificate)> {
    p.check_set(x)?;
    let n = p.module_len();
    let mut stages = vec![None; n];
    let mut provenance = vec![None; n];
    let mut current = x.with(p.zero());
    for m in current.iter() {
        stages[m.index()] = Some(0);
        provenance[m.index()] = Some(Provenance::Seed);
    }
    let mut chain = vec![current];
    loop {
        let barred = bar_unchecked(p, current);
        let next = delta_unchecked(p, barred);
        debug_assert!(current.is_subset(next));
        if next == current {
            break;
        }
        let stage = chain.len();
        for m in next.difference(current).iter() {
            stages[m.index()] = Some(stage);
            provenance[m.index()] = Some(if barred.contains(m) {
                summand_step(p, current, m)
            } else {
                triangle_step(p, current, barred, m)
            });
        }
        current = next;
        chain.push(current);
    }
    let cert = GenerationCertificate {
        seeds: x,
        stages,
        provenance,
        chain,
    };
    Ok((ThickSubmodule::trusted(p, current), cert))
}

fn summand_derivation(
    p: &ModulePresentation,
    prev: ObjSet,
    n: ObjectId,
) -> Option<(ObjectId, ObjectId, ObjectId)> {
    for source in prev.iter() {
        for scalar in p.category_objects().iter() {
            let product = p.act(scalar, source);
            if let Some(cofactor) = p.module_objects().iter().find(|&c| p.sum(n, c) == product) {
                return Some((scalar, source, cofactor));
            }
        }
    }
    None
}

fn summand_step(p: &ModulePresentation, prev: ObjSet, n: ObjectId) -> Provenance {
    let (scalar, source, cofactor) =
        summand_derivation(p, prev, n).expect("member of bar has a summand derivation");
    Provenance::Summand {
        scalar,
        source,
        cofactor,
    }
}

fn bar_link(p: &ModulePresentation, prev: ObjSet, object: ObjectId) -> BarLink {
    if prev.contains(object) {
        return BarLink::Member { object };
    }
    let (scalar, source, cofactor) =
        summand_derivation(p, prev, object).expect("member of bar has a summand derivation");
    BarLink::Summand {
        object,
        scalar,
        source,
        cofactor,
    }
}

fn triangle_step(p: &ModulePresentation, prev: ObjSet, barred: ObjSet, m: ObjectId) -> Provenance {
    for &triangle in p.triangles() {
        let e = triangle.entries();
        for position in 0..3 {
            if e[position] != m {
                continue;
            }
            let others = [e[(position + 1) % 3], e[(position + 2) % 3]];
            if others.iter().all(|&o| barred.contains(o)) {
                return Provenance::Triangle {
                    triangle,
                    position,
                    links: others.map(|o| bar_link(p, prev, o)),
                };
            }
        }
    }
    unreachable!("member of delta completes some stored triangle")
}

/// `K(m)`, the smallest thick submodule containing `m`.
pub fn principal(p: &ModulePresentation, m: ObjectId) -> Result<ThickSubmodule> {
    p.check_object(m)?;
    generate(p, ObjSet::singleton(m)).map(|(s, _)| s)
}

/// `N + N'`, the smallest thick submodule containing both.
pub fn add(
    p: &ModulePresentation,
    a: &ThickSubmodule,
    b: &ThickSubmodule,
) -> Result<ThickSubmodule> {
    if !a.belongs_to(p) || !b.belongs_to(p) {
        return Err(Error::PresentationMismatch);
    }
    generate(p, a.members.union(b.members)).map(|(s, _)| s)
}

/// Every thick submodule of `p`, as the deduplicated principals `K(m)`,
/// ordered by size and then by member bits.
///
/// Complete because every thick submodule `N` of a finite presentation
/// equals `K(sum of N)`.
pub fn all_submodules(p: &ModulePresentation) -> Vec<ThickSubmodule> {
    let mut out: Vec<ThickSubmodule> = p
        .module_objects()
        .iter()
        .map(|m| principal(p, m).expect("object in range"))
        .collect();
    out.sort_by_key(|s| (s.len(), s.members().bits()));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{chain_model, support_model};

    fn set(p: &ModulePresentation, names: &[&str]) -> ObjSet {
        names.iter().map(|n| p.object(n).unwrap()).collect()
    }

    #[test]
    fn thickness_examples() {
        let p = support_model(2).unwrap();
        assert!(is_thick(&p, set(&p, &["z", "a"])).unwrap().holds());
        assert!(is_thick(&p, set(&p, &["z"])).unwrap().holds());
        match is_thick(&p, set(&p, &["z", "a", "b"])).unwrap() {
            Thickness::Violated(ThickViolation::TwoOutOfThree { triangle, outside }) => {
                assert_eq!(outside, p.object("t").unwrap());
                assert_eq!(
                    triangle,
                    Triangle::new(ObjectId(1), ObjectId(3), ObjectId(2)),
                    "first offending triangle is (a, t, b)"
                );
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            is_thick(&p, set(&p, &["a"])).unwrap(),
            Thickness::Violated(ThickViolation::MissingZero)
        ));
        assert!(matches!(
            is_thick(&p, ObjSet::from_bits(1 << 9)),
            Err(Error::UnknownObject(9))
        ));
    }

    #[test]
    fn action_escape_is_caught_first() {
        let p = chain_model(3).unwrap();
        // {z, q}: p = q (x) p escapes
        assert!(matches!(
            is_thick(&p, set(&p, &["z", "q"])).unwrap(),
            Thickness::Violated(ThickViolation::ActionEscape { .. })
        ));
    }

    #[test]
    fn bar_examples() {
        let p = support_model(2).unwrap();
        assert_eq!(bar(&p, set(&p, &["t"])).unwrap(), p.module_objects());
        assert_eq!(bar(&p, set(&p, &["z"])).unwrap(), set(&p, &["z"]));
        assert_eq!(bar(&p, set(&p, &["a"])).unwrap(), set(&p, &["z", "a"]));
        assert_eq!(bar(&p, ObjSet::EMPTY).unwrap(), ObjSet::EMPTY);
        for bits in 1u64..16 {
            let x = ObjSet::from_bits(bits);
            let b = bar(&p, x).unwrap();
            assert!(x.is_subset(b));
            assert!(b.contains(p.zero()));
            assert_eq!(bar(&p, b).unwrap(), b);
        }
    }

    #[test]
    fn delta_examples() {
        let p = support_model(2).unwrap();
        assert!(delta(&p, set(&p, &["z", "a", "b"]))
            .unwrap()
            .contains(p.object("t").unwrap()));
        assert_eq!(delta(&p, set(&p, &["z"])).unwrap(), set(&p, &["z"]));
        assert_eq!(
            delta(&p, set(&p, &["z", "a"])).unwrap(),
            set(&p, &["z", "a"])
        );
    }

    #[test]
    fn generate_examples() {
        let p = support_model(2).unwrap();
        let (full, cert) = generate(&p, set(&p, &["a", "b"])).unwrap();
        assert_eq!(full.members(), p.module_objects());
        let t = p.object("t").unwrap();
        assert_eq!(cert.stage(t), Some(1));
        match cert.provenance(t).unwrap() {
            Provenance::Triangle {
                triangle, position, ..
            } => {
                assert_eq!(
                    *triangle,
                    Triangle::new(ObjectId(1), ObjectId(3), ObjectId(2))
                );
                assert_eq!(*position, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let (zero, _) = generate(&p, ObjSet::EMPTY).unwrap();
        assert_eq!(zero, ThickSubmodule::zero(&p));

        let c = chain_model(3).unwrap();
        let (s, _) = generate(&c, set(&c, &["p"])).unwrap();
        assert_eq!(s.members(), set(&c, &["z", "p"]));
    }

    #[test]
    fn principal_examples() {
        let p = support_model(2).unwrap();
        assert_eq!(
            principal(&p, p.object("t").unwrap()).unwrap(),
            ThickSubmodule::full(&p)
        );
        assert_eq!(principal(&p, p.zero()).unwrap(), ThickSubmodule::zero(&p));
        assert_eq!(
            principal(&p, p.object("a").unwrap()).unwrap().members(),
            set(&p, &["z", "a"])
        );
        assert!(principal(&p, ObjectId(4)).is_err());
    }

    #[test]
    fn witness_examples() {
        let p = support_model(2).unwrap();
        let t = p.object("t").unwrap();
        let (_, cert) = generate(&p, set(&p, &["a", "b"])).unwrap();
        assert_eq!(cert.witnesses(t).unwrap(), set(&p, &["a", "b"]));
        assert_eq!(
            cert.witnesses(p.object("a").unwrap()).unwrap(),
            set(&p, &["a"])
        );
        let (_, cert) = generate(&p, set(&p, &["a", "b", "t"])).unwrap();
        assert_eq!(cert.witnesses(t).unwrap(), set(&p, &["t"]));
        let (_, cert) = generate(&p, set(&p, &["a"])).unwrap();
        assert!(matches!(cert.witnesses(t), Err(Error::NotGenerated(3))));
    }

    #[test]
    fn provenance_predecessors_have_earlier_stages() {
        let p = support_model(3).unwrap();
        for bits in 0u64..256 {
            let (_, cert) = generate(&p, ObjSet::from_bits(bits)).unwrap();
            for m in cert.members().iter() {
                let stage = cert.stage(m).unwrap();
                for pred in cert.provenance(m).unwrap().predecessors() {
                    assert!(cert.stage(pred).unwrap() < stage);
                }
            }
        }
    }

    #[test]
    fn add_examples() {
        let p = support_model(2).unwrap();
        let a = principal(&p, p.object("a").unwrap()).unwrap();
        let b = principal(&p, p.object("b").unwrap()).unwrap();
        assert_eq!(add(&p, &a, &b).unwrap(), ThickSubmodule::full(&p));
        assert_eq!(add(&p, &a, &ThickSubmodule::zero(&p)).unwrap(), a);
        assert_eq!(add(&p, &a, &a).unwrap(), a);

        let c = chain_model(3).unwrap();
        let zp = principal(&c, c.object("p").unwrap()).unwrap();
        let zq = principal(&c, c.object("q").unwrap()).unwrap();
        assert_eq!(add(&c, &zp, &zq).unwrap(), zq);
        assert!(matches!(add(&c, &zp, &a), Err(Error::PresentationMismatch)));
    }
}
