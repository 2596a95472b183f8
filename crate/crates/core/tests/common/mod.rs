//! Brute-force reference computations over the raw tables.
//!
//! Nothing here calls into the library's algorithms: sets are plain `u64`
//! masks, thickness is decided by scanning the definition, and every
//! closure is found by filtering all subsets. Only usable for presentations
//! small enough to enumerate `2^n` subsets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use ttg_core::operators::{
    division, from_family, identity, radical, table_operator, FamilySpec, OperatorSpec,
};
use ttg_core::presentation::{chain_model, restriction_model, support_model, ModulePresentation};
use ttg_core::thick::ThickSubmodule;
use ttg_core::{ObjSet, ObjectId};

pub fn model_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .join(file)
}

/// Every generated presentation with at most 8 module objects.
pub fn small_models() -> Vec<(String, ModulePresentation)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("support_model({n})"), support_model(n).unwrap()));
    }
    for n in 1..=7 {
        out.push((format!("chain_model({n})"), chain_model(n).unwrap()));
    }
    for (n, k) in [(2, 1), (3, 1), (3, 2), (3, 3)] {
        out.push((
            format!("restriction_model({n}, {k})"),
            restriction_model(n, k).unwrap(),
        ));
    }
    out
}

/// The tables of a presentation as bare indices.
#[derive(Clone, Debug)]
pub struct Raw {
    pub k: usize,
    pub m: usize,
    pub zero: usize,
    pub sum: Vec<Vec<usize>>,
    pub tensor: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
    pub translate: Vec<usize>,
    pub triangles: Vec<[usize; 3]>,
}

fn idx(rows: &[Vec<ObjectId>]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.index()).collect())
        .collect()
}

impl Raw {
    pub fn new(p: &ModulePresentation) -> Self {
        let t = p.tables();
        Raw {
            k: t.category.names.len(),
            m: t.module.names.len(),
            zero: t.module.zero.index(),
            sum: idx(&t.module.sum),
            tensor: idx(&t.category.tensor),
            act: idx(&t.module.action),
            translate: t.module.translate.iter().map(|x| x.index()).collect(),
            triangles: t
                .module
                .triangles
                .iter()
                .map(|tr| tr.entries().map(|x| x.index()))
                .collect(),
        }
    }

    pub fn full(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    pub fn has(s: u64, x: usize) -> bool {
        s >> x & 1 == 1
    }

    /// The definition, scanned literally: zero, the action, both directions
    /// of the sum condition, and two-out-of-three in every triangle.
    pub fn is_thick(&self, s: u64) -> bool {
        if !Self::has(s, self.zero) {
            return false;
        }
        for x in 0..self.m {
            if !Self::has(s, x) {
                continue;
            }
            for a in 0..self.k {
                if !Self::has(s, self.act[a][x]) {
                    return false;
                }
            }
        }
        for x in 0..self.m {
            for y in 0..self.m {
                let both = Self::has(s, x) && Self::has(s, y);
                if both != Self::has(s, self.sum[x][y]) {
                    return false;
                }
            }
        }
        self.triangles.iter().all(|t| {
            let inside = t.iter().filter(|&&x| Self::has(s, x)).count();
            inside != 2
        })
    }

    /// All thick subsets, ascending by bits.
    pub fn all_thick(&self) -> Vec<u64> {
        assert!(self.m <= 16, "oracle enumeration is exponential");
        (0..=self.full()).filter(|&s| self.is_thick(s)).collect()
    }

    /// Intersection of every thick superset of `x`.
    pub fn generate(&self, thick: &[u64], x: u64) -> u64 {
        thick
            .iter()
            .filter(|&&s| s & x == x)
            .fold(self.full(), |acc, &s| acc & s)
    }

    pub fn principal(&self, thick: &[u64], m: usize) -> u64 {
        self.generate(thick, 1 << m)
    }

    /// Objects `a` with some tensor power `a^n`, `n >= 1`, in `i`.
    pub fn radical(&self, i: u64) -> u64 {
        let mut out = 0;
        for a in 0..self.k {
            let mut power = a;
            for _ in 0..=self.k {
                if Self::has(i, power) {
                    out |= 1 << a;
                    break;
                }
                power = self.tensor[power][a];
            }
        }
        out
    }

    /// Objects `a` with `a (x) s` in `n` for some `s` in `s_set`.
    pub fn division(&self, s_set: u64, n: u64) -> u64 {
        let mut out = 0;
        for a in 0..self.m {
            if (0..self.k).any(|s| Self::has(s_set, s) && Self::has(n, self.tensor[a][s])) {
                out |= 1 << a;
            }
        }
        out
    }

    /// Nonempty multiplicatively closed subsets of `K`.
    pub fn multiplicative_sets(&self) -> Vec<u64> {
        let full_k = (1u64 << self.k) - 1;
        (1..=full_k)
            .filter(|&s| {
                (0..self.k).all(|x| {
                    (0..self.k).all(|y| {
                        !(Self::has(s, x) && Self::has(s, y)) || Self::has(s, self.tensor[x][y])
                    })
                })
            })
            .collect()
    }
}

/// Union over `n` in `x` of the meet of the family members containing `n`.
pub fn family_image(raw: &Raw, family: &[u64], x: u64) -> u64 {
    let mut out = 0;
    for n in 0..raw.m {
        if Raw::has(x, n) {
            out |= family
                .iter()
                .filter(|&&f| Raw::has(f, n))
                .fold(raw.full(), |acc, &f| acc & f);
        }
    }
    out
}

/// Nonempty, and every pair has an upper bound inside the subfamily.
fn directed(sub: &[u64]) -> bool {
    !sub.is_empty()
        && sub
            .iter()
            .all(|&a| sub.iter().all(|&b| sub.iter().any(|&c| (a | b) & !c == 0)))
}

/// Every family of thick subsets containing the full module that is closed
/// under pairwise meets and under unions of directed subfamilies.
pub fn all_families(raw: &Raw, thick: &[u64]) -> Vec<Vec<u64>> {
    let full = raw.full();
    let rest: Vec<u64> = thick.iter().copied().filter(|&s| s != full).collect();
    assert!(rest.len() <= 12);
    let mut out = Vec::new();
    for choice in 0u32..(1 << rest.len()) {
        let mut fam: Vec<u64> = (0..rest.len())
            .filter(|i| choice >> i & 1 == 1)
            .map(|i| rest[i])
            .collect();
        fam.push(full);
        let meets = fam
            .iter()
            .all(|&a| fam.iter().all(|&b| fam.contains(&(a & b))));
        let unions = (1u32..(1 << fam.len())).all(|sel| {
            let sub: Vec<u64> = (0..fam.len())
                .filter(|i| sel >> i & 1 == 1)
                .map(|i| fam[i])
                .collect();
            !directed(&sub) || fam.contains(&sub.iter().fold(0, |acc, &s| acc | s))
        });
        if meets && unions {
            fam.sort_unstable();
            out.push(fam);
        }
    }
    out
}

/// The smallest fixed point of an extensive, order-preserving `c` above
/// `x`, by iterating `c` composed with thick generation.
pub fn complete(raw: &Raw, thick: &[u64], c: &dyn Fn(u64) -> u64, x: u64) -> u64 {
    let mut cur = raw.generate(thick, x);
    loop {
        let next = raw.generate(thick, c(cur) | cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// A finite topology generated by a subbasis, checked from first
/// principles: every open set is materialised.
pub struct BruteSpace {
    pub points: usize,
    pub opens: Vec<u64>,
}

impl BruteSpace {
    /// Opens are the unions of finite intersections of subbasis sets,
    /// together with the empty set and the whole space.
    pub fn new(points: usize, subbasis: &[u64]) -> Self {
        assert!(points <= 16);
        let all = (1u64 << points) - 1;
        let mut meets = vec![all];
        for &b in subbasis {
            let extra: Vec<u64> = meets.iter().map(|&m| m & b).collect();
            meets.extend(extra);
            meets.sort_unstable();
            meets.dedup();
        }
        let mut opens = vec![0u64];
        for &b in &meets {
            let extra: Vec<u64> = opens.iter().map(|&o| o | b).collect();
            opens.extend(extra);
            opens.sort_unstable();
            opens.dedup();
        }
        BruteSpace { points, opens }
    }

    fn all(&self) -> u64 {
        (1u64 << self.points) - 1
    }

    pub fn is_open(&self, u: u64) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    pub fn closed_sets(&self) -> Vec<u64> {
        self.opens.iter().map(|&o| self.all() & !o).collect()
    }

    pub fn closure(&self, x: usize) -> u64 {
        self.closed_sets()
            .into_iter()
            .filter(|&f| Raw::has(f, x))
            .fold(self.all(), |acc, f| acc & f)
    }

    pub fn t0(&self) -> bool {
        (0..self.points).all(|x| {
            (x + 1..self.points)
                .all(|y| self.opens.iter().any(|&o| Raw::has(o, x) != Raw::has(o, y)))
        })
    }

    /// Every irreducible closed set has exactly one generic point.
    pub fn sober(&self) -> bool {
        let closed = self.closed_sets();
        closed.iter().all(|&f| {
            let irreducible = f != 0
                && closed.iter().all(|&a| {
                    closed
                        .iter()
                        .all(|&b| a | b != f || a & f == f || b & f == f)
                });
            if !irreducible {
                return true;
            }
            (0..self.points)
                .filter(|&x| Raw::has(f, x) && self.closure(x) == f)
                .count()
                == 1
        })
    }

    /// Smallest open containing `x`.
    pub fn neighbourhood(&self, x: usize) -> u64 {
        self.opens
            .iter()
            .filter(|&&o| Raw::has(o, x))
            .fold(self.all(), |acc, &o| acc & o)
    }
}

/// An operator together with an independent rule for its raw image.
pub struct Case {
    pub label: String,
    pub op: OperatorSpec,
    pub raw: Raw,
    pub thick: Vec<u64>,
    pub rule: Box<dyn Fn(u64) -> u64>,
}

impl Case {
    /// The oracle's value of the operator: the rule, generated up to a
    /// thick set.
    pub fn eval(&self, x: u64) -> u64 {
        self.raw.generate(&self.thick, self.rule.as_ref()(x))
    }

    pub fn fixed(&self) -> Vec<u64> {
        self.thick
            .iter()
            .copied()
            .filter(|&n| self.eval(n) == n)
            .collect()
    }

    pub fn complete(&self, x: u64) -> u64 {
        complete(&self.raw, &self.thick, &|n| self.eval(n), x)
    }
}

pub fn sub(p: &ModulePresentation, bits: u64) -> ThickSubmodule {
    ThickSubmodule::new(p, ObjSet::from_bits(bits)).unwrap()
}

/// The promotion table on `chain_model(3)`: `p` jumps to `q`, `q` and `r`
/// jump to the top.
pub const PROMOTE: [u64; 4] = [0b0001, 0b0111, 0b1111, 0b1111];

/// identity, radical, division by every multiplicative set, every valid
/// family, and `promote` when the presentation is `chain_model(3)`.
pub fn operator_cases(name: &str, p: &Arc<ModulePresentation>) -> Vec<Case> {
    let raw = Raw::new(p);
    let thick = raw.all_thick();
    let mut out = Vec::new();
    let mut push = |label: String, op: OperatorSpec, rule: Box<dyn Fn(u64) -> u64>| {
        out.push(Case {
            label: format!("{name} {label}"),
            op,
            raw: raw.clone(),
            thick: thick.clone(),
            rule,
        })
    };
    push("identity".into(), identity(p).unwrap(), Box::new(|x| x));
    let r = raw.clone();
    push(
        "radical".into(),
        radical(p).unwrap(),
        Box::new(move |x| r.radical(x)),
    );
    for s in raw.multiplicative_sets() {
        let r = raw.clone();
        push(
            format!("division{s:#b}"),
            division(p, ObjSet::from_bits(s)).unwrap(),
            Box::new(move |x| r.division(s, x)),
        );
    }
    for fam in all_families(&raw, &thick) {
        let spec = FamilySpec::new(p, fam.iter().map(|&f| sub(p, f)).collect()).unwrap();
        let r = raw.clone();
        push(
            format!("family{fam:?}"),
            from_family(p, spec).unwrap(),
            Box::new(move |x| family_image(&r, &fam, x)),
        );
    }
    if name == "chain_model(3)" {
        let rows: Vec<ObjSet> = PROMOTE.iter().map(|&b| ObjSet::from_bits(b)).collect();
        push(
            "promote".into(),
            table_operator(p, "promote", &rows).unwrap(),
            Box::new(|x| table_image(&PROMOTE, x)),
        );
    }
    out
}

/// Union of the rows selected by `x`.
pub fn table_image(rows: &[u64], x: u64) -> u64 {
    (0..rows.len())
        .filter(|&i| Raw::has(x, i))
        .fold(0, |acc, i| acc | rows[i])
}
