mod common;

use std::sync::{Arc, OnceLock};

use common::{operator_cases, sub, table_image, Raw};
use proptest::prelude::*;
use ttg_core::operators::{c_infinity, classify, classify_with, table_operator, OperatorSpec};
use ttg_core::presentation::{chain_model, restriction_model, support_model, ModulePresentation};
use ttg_core::{Error, Exec, ObjSet};

struct Fixture {
    p: Arc<ModulePresentation>,
    raw: Raw,
    thick: Vec<u64>,
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        [
            support_model(3).unwrap(),
            chain_model(5).unwrap(),
            restriction_model(3, 2).unwrap(),
        ]
        .into_iter()
        .map(|p| {
            let raw = Raw::new(&p);
            let thick = raw.all_thick();
            Fixture {
                p: Arc::new(p),
                raw,
                thick,
            }
        })
        .collect()
    })
}

/// The four properties decided over every pair of thick sets.
fn oracle_flags(raw: &Raw, thick: &[u64], c: &dyn Fn(u64) -> u64) -> [bool; 4] {
    let sub_of = |a: u64, b: u64| a & !b == 0;
    let extensive = thick.iter().all(|&n| sub_of(n, c(n)));
    let monotone = thick
        .iter()
        .all(|&a| thick.iter().all(|&b| !sub_of(a, b) || sub_of(c(a), c(b))));
    let idempotent = thick.iter().all(|&n| c(c(n)) == c(n));
    let principal: Vec<u64> = (0..raw.m).map(|m| c(raw.principal(thick, m))).collect();
    let finite = thick.iter().all(|&n| table_image(&principal, n) == c(n));
    [extensive, monotone, idempotent, finite]
}

fn flags(c: &OperatorSpec, exec: Exec) -> [bool; 4] {
    let k = classify_with(c, exec);
    [
        k.extensive.holds,
        k.order_preserving.holds,
        k.idempotent.holds,
        k.finite_type.holds,
    ]
}

/// A fixture and one thick row per object, each containing its object.
fn table_strategy() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (0..fixtures().len()).prop_flat_map(|i| {
        let f = &fixtures()[i];
        let rows: Vec<_> = (0..f.raw.m)
            .map(|m| {
                let options: Vec<u64> = f
                    .thick
                    .iter()
                    .copied()
                    .filter(|&s| Raw::has(s, m))
                    .collect();
                proptest::sample::select(options)
            })
            .collect();
        (Just(i), rows)
    })
}

proptest! {
    #[test]
    fn table_operators_match_the_oracle((i, rows) in table_strategy()) {
        let f = &fixtures()[i];
        let table: Vec<ObjSet> = rows.iter().map(|&b| ObjSet::from_bits(b)).collect();
        let c = table_operator(&f.p, "t", &table).unwrap();
        let eval = |n: u64| f.raw.generate(&f.thick, table_image(&rows, n));
        for &n in &f.thick {
            let got = c.evaluate_traced(&sub(&f.p, n)).unwrap();
            prop_assert_eq!(got.image.members().bits(), eval(n));
            prop_assert_eq!(got.repaired, !f.raw.is_thick(table_image(&rows, n)));
        }
        let want = oracle_flags(&f.raw, &f.thick, &eval);
        prop_assert_eq!(flags(&c, Exec::Sequential), want);
        prop_assert_eq!(flags(&c, Exec::Parallel), want);

        match c_infinity(&c) {
            Ok(inf) => {
                prop_assert!(want[0] && want[1] && want[3]);
                for &n in &f.thick {
                    let image = inf.evaluate(&sub(&f.p, n)).unwrap().members().bits();
                    prop_assert_eq!(image, common::complete(&f.raw, &f.thick, &eval, n));
                }
                prop_assert!(classify(&inf).is_closure_of_finite_type());
            }
            Err(Error::GateFailed(_)) => prop_assert!(!(want[0] && want[1] && want[3])),
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }
}

#[test]
fn named_operators_match_the_oracle() {
    for (name, p) in [
        ("support_model(2)", support_model(2).unwrap()),
        ("support_model(3)", support_model(3).unwrap()),
        ("chain_model(3)", chain_model(3).unwrap()),
        ("chain_model(4)", chain_model(4).unwrap()),
    ] {
        for case in operator_cases(name, &Arc::new(p)) {
            let p = case.op.presentation();
            for &n in &case.thick {
                let rule = case.rule.as_ref()(n);
                let got = case.op.evaluate(&sub(p, n)).unwrap().members().bits();
                assert_eq!(got, case.eval(n), "{}", case.label);
                if case.label.ends_with("promote") {
                    continue;
                }
                assert!(
                    case.raw.is_thick(rule),
                    "{}: raw image not thick",
                    case.label
                );
            }
            let want = oracle_flags(&case.raw, &case.thick, &|n| case.eval(n));
            assert_eq!(flags(&case.op, Exec::default()), want, "{}", case.label);
            let closure = !case.label.ends_with("promote");
            assert_eq!(want, [true, true, closure, true], "{}", case.label);
        }
    }
}

#[test]
fn division_needs_a_nonempty_multiplicative_set() {
    let p = Arc::new(support_model(2).unwrap());
    let a = p.category_object("a").unwrap();
    let b = p.category_object("b").unwrap();
    let s: ObjSet = [a, b].into_iter().collect();
    assert!(matches!(
        ttg_core::operators::division(&p, s),
        Err(Error::NotMultiplicativelyClosed(..))
    ));
    assert!(matches!(
        ttg_core::operators::division(&p, ObjSet::EMPTY),
        Err(Error::EmptyMultiplicativeSet)
    ));
}
