//! Reference model families.
//!
//! All of them are lattices of subsets with `(+) = union`, `(x) =
//! intersection`, identity translation, and triangles generated by
//! `(x, x (+) y, y)` over all pairs, closed under rotation.

use super::{
    close_under_rotation, CategoryTables, ModulePresentation, ModuleTables, PresentationTables,
    Triangle,
};
use crate::bitset::{ObjectId, CAPACITY};
use crate::error::{Error, Result};

/// Default bound on the atom count of [`support_model`] (32 objects).
pub const DEFAULT_SUPPORT_BOUND: usize = 5;
/// Default bound on the chain length of [`chain_model`] (16 objects).
pub const DEFAULT_CHAIN_BOUND: usize = 15;

const ATOM_LETTERS: &[u8] = b"abcdefghijklmnopqrs";
const CHAIN_LETTERS: &[u8] = b"pqrstuvwxy";

/// Subsets of an `n`-element atom set, `K` acting on itself.
///
/// Objects are indexed by bitmask. The empty set is `z`, the full set `t`,
/// and the rest are named by their atoms (`a`, `b`, `ab`, ...).
pub fn support_model(n: usize) -> Result<ModulePresentation> {
    support_model_bounded(n, DEFAULT_SUPPORT_BOUND)
}

pub fn support_model_bounded(n: usize, bound: usize) -> Result<ModulePresentation> {
    check_param("support_model", n, bound.min(6))?;
    let count = 1usize << n;
    let names = (0..count).map(|mask| subset_name(mask, n)).collect();
    let category = lattice_category(names, |x, y| x | y, |x, y| x & y, count - 1);
    finish(PresentationTables::regular(category))
}

/// Down-sets of an `n`-chain: the linearly ordered model `z < p < q < ...`
/// with `n + 1` objects, `K` acting on itself.
pub fn chain_model(n: usize) -> Result<ModulePresentation> {
    chain_model_bounded(n, DEFAULT_CHAIN_BOUND)
}

pub fn chain_model_bounded(n: usize, bound: usize) -> Result<ModulePresentation> {
    check_param("chain_model", n, bound.min(CAPACITY - 1))?;
    let names = (0..=n).map(chain_name).collect();
    let category = lattice_category(names, usize::max, usize::min, n);
    finish(PresentationTables::regular(category))
}

/// `K = support_model(n)` acting on the subsets of its first `k` atoms by
/// intersection. A genuine module (`M != K`) for `k < n`.
pub fn restriction_model(n: usize, k: usize) -> Result<ModulePresentation> {
    check_param("restriction_model", n, DEFAULT_SUPPORT_BOUND)?;
    if k == 0 || k > n {
        return Err(Error::Usage(format!(
            "restriction_model needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let nk = 1usize << n;
    let nm = 1usize << k;
    let kmask = nm - 1;
    let category = lattice_category(
        (0..nk).map(|mask| subset_name(mask, n)).collect(),
        |x, y| x | y,
        |x, y| x & y,
        nk - 1,
    );
    let sum: Vec<Vec<ObjectId>> = (0..nm)
        .map(|x| (0..nm).map(|y| ObjectId(x | y)).collect())
        .collect();
    let translate: Vec<ObjectId> = (0..nm).map(ObjectId).collect();
    let module = ModuleTables {
        names: (0..nm).map(|mask| subset_name(mask, k)).collect(),
        zero: ObjectId(0),
        triangles: pair_triangles(nm, |x, y| x | y, &translate),
        sum,
        translate,
        action: (0..nk)
            .map(|a| (0..nm).map(|m| ObjectId(a & kmask & m)).collect())
            .collect(),
    };
    finish(PresentationTables {
        category,
        module,
        self_action: false,
    })
}

fn check_param(what: &str, n: usize, bound: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Usage(format!("{what} needs a positive size")));
    }
    if n > bound {
        return Err(Error::Resource(format!(
            "{what}({n}) exceeds the configured bound {bound}"
        )));
    }
    Ok(())
}

fn finish(tables: PresentationTables) -> Result<ModulePresentation> {
    ModulePresentation::with_limit(tables, CAPACITY)
}

fn lattice_category(
    names: Vec<String>,
    join: impl Fn(usize, usize) -> usize,
    meet: impl Fn(usize, usize) -> usize,
    top: usize,
) -> CategoryTables {
    let n = names.len();
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<ObjectId>> {
        (0..n)
            .map(|x| (0..n).map(|y| ObjectId(f(x, y))).collect())
            .collect()
    };
    let translate: Vec<ObjectId> = (0..n).map(ObjectId).collect();
    CategoryTables {
        zero: ObjectId(0),
        unit: ObjectId(top),
        sum: table(&join),
        tensor: table(&meet),
        triangles: pair_triangles(n, &join, &translate),
        translate,
        names,
    }
}

fn pair_triangles(
    n: usize,
    join: impl Fn(usize, usize) -> usize,
    translate: &[ObjectId],
) -> Vec<Triangle> {
    let raw: Vec<Triangle> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| Triangle::new(ObjectId(x), ObjectId(join(x, y)), ObjectId(y)))
        .collect();
    close_under_rotation(&raw, translate)
}

fn subset_name(mask: usize, atoms: usize) -> String {
    let full = (1usize << atoms) - 1;
    if mask == 0 {
        "z".to_string()
    } else if mask == full {
        "t".to_string()
    } else {
        (0..atoms)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ATOM_LETTERS[i] as char)
            .collect()
    }
}

fn chain_name(k: usize) -> String {
    match k {
        0 => "z".to_string(),
        k if k <= CHAIN_LETTERS.len() => (CHAIN_LETTERS[k - 1] as char).to_string(),
        k => format!("c{k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_model_shapes() {
        let p = support_model(2).unwrap();
        assert_eq!(p.module().names, ["z", "a", "b", "t"]);
        assert_eq!(p.category().unit, ObjectId(3));
        let p1 = support_model(1).unwrap();
        assert_eq!(p1.module().names, ["z", "t"]);
        assert_eq!(p1.category().unit, ObjectId(1));
        assert_eq!(support_model(3).unwrap().module_len(), 8);
    }

    #[test]
    fn support_model_bound() {
        assert!(support_model(5).is_ok());
        assert!(matches!(support_model(6), Err(Error::Resource(_))));
        assert!(matches!(support_model(0), Err(Error::Usage(_))));
    }

    #[test]
    fn chain_model_shapes() {
        let p = chain_model(3).unwrap();
        assert_eq!(p.module().names, ["z", "p", "q", "r"]);
        assert_eq!(p.category().unit, ObjectId(3));
        assert!(matches!(chain_model(16), Err(Error::Resource(_))));
        assert_eq!(chain_model(15).unwrap().module_len(), 16);
    }

    #[test]
    fn chain_one_is_support_one_up_to_renaming() {
        let chain = chain_model(1).unwrap().into_tables();
        let support = support_model(1).unwrap().into_tables();
        let strip = |mut t: PresentationTables| {
            t.category.names.clear();
            t.module.names.clear();
            t
        };
        assert_eq!(strip(chain), strip(support));
    }

    #[test]
    fn triangles_contain_the_pair_triples() {
        let p = support_model(2).unwrap();
        let t = p.triangles();
        // (a, t, b) is generated from the pair (a, b)
        assert!(t.contains(&Triangle::new(ObjectId(1), ObjectId(3), ObjectId(2))));
        for x in 0..4 {
            assert!(t.contains(&Triangle::new(ObjectId(x), ObjectId(x), ObjectId(0))));
        }
    }
}
