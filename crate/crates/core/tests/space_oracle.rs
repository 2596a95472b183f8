mod common;

use std::sync::Arc;

use common::{operator_cases, small_models, BruteSpace, Raw};
use proptest::prelude::*;
use ttg_core::presentation::{chain_model, support_model};
use ttg_core::space::{
    basis_properties, enumerate_smod, enumerate_smod_with, fixed_points, ultrafilter_check,
    ultrafilter_check_with, FiniteTopology,
};
use ttg_core::{Exec, ObjectId, PointId, PointSet};

fn topology() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1usize..=7).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        (Just(n), proptest::collection::vec(0..=full, 0..6))
    })
}

proptest! {
    #[test]
    fn finite_topology_matches_materialised_opens((n, basis) in topology()) {
        let t = FiniteTopology::from_parts(n, basis.iter().map(|&b| PointSet::from_bits(b)).collect())
            .unwrap();
        let brute = BruteSpace::new(n, &basis);
        for u in 0..(1u64 << n) {
            prop_assert_eq!(t.is_open(PointSet::from_bits(u)), brute.is_open(u));
        }
        for x in 0..n {
            prop_assert_eq!(t.neighbourhood(PointId(x)).bits(), brute.neighbourhood(x));
            prop_assert_eq!(t.closure(PointId(x)).bits(), brute.closure(x));
        }
        let r = t.spectral_report_with(Exec::Sequential);
        prop_assert_eq!(r.t0, brute.t0());
        prop_assert_eq!(r.sober, brute.sober());
        prop_assert_eq!(r, t.spectral_report_with(Exec::Parallel));
    }

    #[test]
    fn specialization_is_a_preorder((n, basis) in topology()) {
        let t = FiniteTopology::from_parts(n, basis.iter().map(|&b| PointSet::from_bits(b)).collect())
            .unwrap();
        let up = t.specialization();
        for x in 0..n {
            prop_assert!(up[x].contains(PointId(x)));
            for y in up[x].iter() {
                prop_assert!(up[y.index()].is_subset(up[x]));
                prop_assert!(t.closure(y).contains(PointId(x)));
            }
        }
    }
}

#[test]
fn out_of_range_basis_is_rejected() {
    assert!(FiniteTopology::from_parts(2, vec![PointSet::from_bits(0b100)]).is_err());
    assert!(FiniteTopology::from_parts(65, vec![]).is_err());
}

#[test]
fn smod_spaces_agree_with_the_oracle() {
    for (name, p) in small_models() {
        let p = Arc::new(p);
        let raw = Raw::new(&p);
        let thick = raw.all_thick();
        let space = enumerate_smod(&p);
        assert_eq!(
            enumerate_smod_with(&p, Exec::Sequential).points(),
            space.points()
        );
        let pts: Vec<u64> = space.points().iter().map(|s| s.members().bits()).collect();
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, thick, "{name}");
        for m in 0..raw.m {
            let want = (0..pts.len())
                .filter(|&i| Raw::has(pts[i], m))
                .fold(0u64, |acc, i| acc | 1 << i);
            assert_eq!(space.basic_open(ObjectId(m)).bits(), want, "{name}");
        }
        // Specialization on SMod is inclusion of submodules.
        let up = space.specialization();
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                assert_eq!(up[i].contains(PointId(j)), pts[i] & !pts[j] == 0, "{name}");
            }
        }
        for (a, b) in space.hasse_edges() {
            let (x, y) = (pts[a.index()], pts[b.index()]);
            assert!(x & !y == 0 && x != y);
            assert!(!pts
                .iter()
                .any(|&z| z != x && z != y && x & !z == 0 && z & !y == 0));
        }
        assert!(space.spectral_report().spectral, "{name}");
        assert!(basis_properties(&p, &space).unwrap().holds(), "{name}");
    }
}

#[test]
fn fixed_point_spaces_and_limits() {
    for (name, p) in [
        ("support_model(3)", support_model(3).unwrap()),
        ("chain_model(3)", chain_model(3).unwrap()),
        ("chain_model(5)", chain_model(5).unwrap()),
    ] {
        let p = Arc::new(p);
        let all = enumerate_smod(&p);
        for case in operator_cases(name, &p) {
            let space = fixed_points(&all, &case.op).unwrap();
            let mut got: Vec<u64> = space.points().iter().map(|s| s.members().bits()).collect();
            got.sort_unstable();
            assert_eq!(got, case.fixed(), "{}", case.label);
            let report = space.spectral_report();
            assert!(report.spectral, "{}: {report:?}", case.label);
            let u = ultrafilter_check(&space, &case.op).unwrap();
            assert!(u.passed, "{}", case.label);
            assert_eq!(
                u,
                ultrafilter_check_with(&space, &case.op, Exec::Sequential).unwrap()
            );
            for e in &u.entries {
                assert_eq!(e.limit, space.point(e.point).members());
            }
        }
    }
}

#[test]
fn limits_outside_the_fixed_points_are_reported() {
    let p = Arc::new(chain_model(3).unwrap());
    let cases = operator_cases("chain_model(3)", &p);
    let promote = cases.iter().find(|c| c.label.ends_with("promote")).unwrap();
    let id = &cases[0].op;
    // Every point of SMod is fixed by the identity; promote moves some.
    let all = enumerate_smod(&p);
    let u = ultrafilter_check(&all, &promote.op).unwrap();
    assert!(!u.passed);
    assert!(u.entries.iter().any(|e| e.thick && !e.fixed));
    assert!(ultrafilter_check(&all, id).unwrap().passed);
}
