use serde::Serialize;

use crate::bitset::{PointId, PointSet, CAPACITY};
use crate::error::{Error, Result};
use crate::exec::Exec;

const SPECTRAL_JUSTIFICATION: &str = "finite space: every open set is quasi-compact, every \
irreducible closed set is the closure of one of its points, and a finite T0 space with an \
intersection-closed basis of quasi-compact opens is spectral";

/// A topology on the points `0..len`, given by a family of basic opens.
///
/// The opens are the unions of finite intersections of basis sets together
/// with the whole space, so every point has a least open neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    len: usize,
    basis: Vec<PointSet>,
}

impl FiniteTopology {
    pub fn from_parts(len: usize, basis: Vec<PointSet>) -> Result<Self> {
        if len > CAPACITY {
            return Err(Error::TooLarge {
                what: "space".into(),
                count: len,
                limit: CAPACITY,
            });
        }
        let all = PointSet::full(len);
        if let Some(i) = basis.iter().position(|b| !b.is_subset(all)) {
            return Err(Error::Usage(format!(
                "basis set {i} mentions points outside 0..{len}"
            )));
        }
        Ok(FiniteTopology { len, basis })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.len)
    }

    pub fn basis(&self) -> &[PointSet] {
        &self.basis
    }

    /// Indices of the basis sets containing `x`.
    pub fn profile(&self, x: PointId) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].contains(x))
            .collect()
    }

    /// Least open set containing `x`.
    pub fn neighbourhood(&self, x: PointId) -> PointSet {
        self.basis
            .iter()
            .filter(|b| b.contains(x))
            .fold(self.points(), |acc, &b| acc.intersection(b))
    }

    /// `cl{x}`: the points whose least neighbourhood contains `x`.
    pub fn closure(&self, x: PointId) -> PointSet {
        self.points()
            .iter()
            .filter(|&y| self.neighbourhood(y).contains(x))
            .collect()
    }

    pub fn is_open(&self, u: PointSet) -> bool {
        u.is_subset(self.points()) && u.iter().all(|x| self.neighbourhood(x).is_subset(u))
    }

    pub fn is_closed(&self, f: PointSet) -> bool {
        f.is_subset(self.points()) && self.is_open(self.points().difference(f))
    }

    /// `x <= y` iff `x` lies in the closure of `y`; entry `x` holds every
    /// such `y`.
    pub fn specialization(&self) -> Vec<PointSet> {
        self.points()
            .iter()
            .map(|x| self.neighbourhood(x))
            .collect()
    }

    /// Nonempty, and any two nonempty opens meeting `f` meet inside `f`.
    /// Opens meeting `f` at `x` contain the least neighbourhood of `x`, so
    /// the pairs of least neighbourhoods decide it.
    pub fn is_irreducible(&self, f: PointSet) -> bool {
        !f.is_empty()
            && f.iter().all(|x| {
                let ux = self.neighbourhood(x).intersection(f);
                f.iter()
                    .all(|y| !ux.intersection(self.neighbourhood(y)).is_empty())
            })
    }

    /// Points `g` of `f` with `cl{g} = f`.
    pub fn generic_points(&self, f: PointSet) -> PointSet {
        f.iter().filter(|&g| self.closure(g) == f).collect()
    }

    pub fn spectral_report(&self) -> SpectralReport {
        self.spectral_report_with(Exec::default())
    }

    pub fn spectral_report_with(&self, exec: Exec) -> SpectralReport {
        let n = self.len;
        let profiles: Vec<Vec<usize>> = exec.map(n, |i| self.profile(PointId(i)));
        let t0_witness = exec.find_first(n * n, |ij| {
            let (i, j) = (ij / n, ij % n);
            (i < j && profiles[i] == profiles[j]).then_some([PointId(i), PointId(j)])
        });

        // Irreducible closed sets of a finite space are point closures.
        let sober_witness = exec.find_first(n, |i| {
            let f = self.closure(PointId(i));
            let irreducible = self.is_irreducible(f) && self.is_closed(f);
            let generic = self.generic_points(f);
            (!irreducible || generic.len() != 1).then_some(SoberViolation {
                closure_of: PointId(i),
                closed_set: f,
                generic_points: generic,
            })
        });

        let k = self.basis.len();
        let intersection_witness = exec.find_first(k * k, |ij| {
            let (i, j) = (ij / k, ij % k);
            let meet = self.basis[i].intersection(self.basis[j]);
            (i <= j && !self.basis.contains(&meet)).then_some([i, j])
        });

        let t0 = t0_witness.is_none();
        let sober = sober_witness.is_none();
        let basis_intersection_closed = intersection_witness.is_none();
        let basis_quasi_compact = true;
        SpectralReport {
            points: n,
            t0,
            t0_witness,
            sober,
            sober_witness,
            basis_quasi_compact,
            basis_intersection_closed,
            intersection_witness,
            spectral: t0 && sober && basis_quasi_compact && basis_intersection_closed,
            justification: SPECTRAL_JUSTIFICATION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoberViolation {
    pub closure_of: PointId,
    pub closed_set: PointSet,
    pub generic_points: PointSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub points: usize,
    pub t0: bool,
    /// Two distinct points lying in exactly the same basis sets.
    pub t0_witness: Option<[PointId; 2]>,
    pub sober: bool,
    pub sober_witness: Option<SoberViolation>,
    pub basis_quasi_compact: bool,
    pub basis_intersection_closed: bool,
    /// Basis indices whose intersection is not itself a basis set.
    pub intersection_witness: Option<[usize; 2]>,
    pub spectral: bool,
    pub justification: &'static str,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(bits: u64) -> PointSet {
        PointSet::from_bits(bits)
    }

    /// Sierpinski space: `{1}` open, `{0}` closed.
    fn sierpinski() -> FiniteTopology {
        FiniteTopology::from_parts(2, vec![ps(0b11), ps(0b10)]).unwrap()
    }

    #[test]
    fn sierpinski_is_spectral() {
        let s = sierpinski();
        assert_eq!(s.neighbourhood(PointId(0)), ps(0b11));
        assert_eq!(s.closure(PointId(1)), ps(0b11));
        assert_eq!(s.closure(PointId(0)), ps(0b01));
        let r = s.spectral_report();
        assert!(r.spectral, "{r:?}");
    }

    #[test]
    fn indistinguishable_points_break_t0_and_sobriety() {
        let s = FiniteTopology::from_parts(2, vec![ps(0b11)]).unwrap();
        let r = s.spectral_report_with(Exec::Sequential);
        assert!(!r.t0);
        assert_eq!(r.t0_witness, Some([PointId(0), PointId(1)]));
        assert!(!r.sober);
        assert_eq!(r.sober_witness.unwrap().generic_points, ps(0b11));
        assert!(!r.spectral);
    }

    #[test]
    fn basis_not_closed_under_meets() {
        let s = FiniteTopology::from_parts(3, vec![ps(0b011), ps(0b110)]).unwrap();
        let r = s.spectral_report();
        assert_eq!(r.intersection_witness, Some([0, 1]));
        assert!(!r.spectral);
    }

    #[test]
    fn open_and_closed_sets() {
        let s = sierpinski();
        assert!(s.is_open(ps(0b10)));
        assert!(!s.is_open(ps(0b01)));
        assert!(s.is_closed(ps(0b01)));
        assert!(s.is_irreducible(ps(0b11)));
        assert!(!s.is_irreducible(PointSet::EMPTY));
    }

    #[test]
    fn discrete_two_points_are_reducible_together() {
        let s = FiniteTopology::from_parts(2, vec![ps(0b01), ps(0b10), ps(0b11), ps(0)]).unwrap();
        assert!(!s.is_irreducible(ps(0b11)));
        assert!(s.spectral_report().spectral);
    }

    #[test]
    fn rejects_out_of_range_basis() {
        assert!(FiniteTopology::from_parts(2, vec![ps(0b100)]).is_err());
    }
}
