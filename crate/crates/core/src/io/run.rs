use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

use super::document::PresentationDocument;
use super::dot::{hasse_dot, monoid_dot};
use super::model::{digest, load_with_limit, read, Model, IDENTITY};
use super::report::Report;
use crate::bitset::{ObjSet, ObjectId, PointId, PointSet, CAPACITY};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::monoid::Monoid;
use crate::operators::{c_infinity, classify_with, FamilySpec, OperatorSpec, PropertyCheck};
use crate::presentation::{validate, ModulePresentation, DEFAULT_MAX_OBJECTS};
use crate::space::{
    basis_properties, enumerate_smod_with, fixed_points, ultrafilter_check_with, BasisCheck,
    SModSpace, UltrafilterEntry,
};
use crate::thick::{generate, is_thick, BarLink, Provenance};

/// A named per-point condition of the ultrafilter check.
type EntryCheck = (&'static str, fn(&UltrafilterEntry) -> bool);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Validate,
    Generate,
    Witness,
    Smod,
    Operators,
    Spectral,
    Ultrafilter,
    Monoid,
    Report,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Validate,
        Command::Generate,
        Command::Witness,
        Command::Smod,
        Command::Operators,
        Command::Spectral,
        Command::Ultrafilter,
        Command::Monoid,
        Command::Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Generate => "generate",
            Command::Witness => "witness",
            Command::Smod => "smod",
            Command::Operators => "operators",
            Command::Spectral => "spectral",
            Command::Ultrafilter => "ultrafilter",
            Command::Monoid => "monoid",
            Command::Report => "report",
        }
    }

    fn writes_dot(self) -> bool {
        matches!(
            self,
            Command::Smod
                | Command::Spectral
                | Command::Ultrafilter
                | Command::Monoid
                | Command::Report
        )
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown command '{s}'")))
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub model: PathBuf,
    pub operator: Option<String>,
    pub out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub max_objects: usize,
    pub seed: Option<Vec<String>>,
    pub target: Option<String>,
    pub timing: bool,
    pub exec: Exec,
}

impl Options {
    pub fn new(model: impl Into<PathBuf>) -> Self {
        Options {
            model: model.into(),
            operator: None,
            out: None,
            dot: None,
            max_objects: DEFAULT_MAX_OBJECTS,
            seed: None,
            target: None,
            timing: false,
            exec: Exec::default(),
        }
    }

    fn operator_name(&self) -> &str {
        self.operator.as_deref().unwrap_or(IDENTITY)
    }
}

/// Runs one command, writing `--out` and `--dot` files if requested.
pub fn run(command: Command, opts: &Options) -> Result<Report> {
    if opts.max_objects > CAPACITY {
        return Err(Error::Usage(format!(
            "--max-objects {} exceeds the supported maximum of {CAPACITY}",
            opts.max_objects
        )));
    }
    if opts.dot.is_some() && !command.writes_dot() {
        return Err(Error::Usage(format!(
            "--dot is not supported by '{command}'"
        )));
    }
    let start = Instant::now();
    let (mut report, dot) = match command {
        Command::Validate => (validate_cmd(opts)?, None),
        Command::Generate => (generate_cmd(&load(opts)?, opts)?, None),
        Command::Witness => (witness_cmd(&load(opts)?, opts)?, None),
        Command::Smod => smod_cmd(&load(opts)?, opts)?,
        Command::Operators => (operators_cmd(&load(opts)?, opts)?, None),
        Command::Spectral => spectral_cmd(&load(opts)?, opts)?,
        Command::Ultrafilter => ultrafilter_cmd(&load(opts)?, opts)?,
        Command::Monoid => monoid_cmd(&load(opts)?, opts)?,
        Command::Report => report_cmd(&load(opts)?, opts)?,
    };
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if let Some(path) = &opts.out {
        write(path, &report.to_json())?;
    }
    if let (Some(path), Some(text)) = (&opts.dot, dot) {
        write(path, &text)?;
    }
    Ok(report)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load(opts: &Options) -> Result<Model> {
    load_with_limit(&opts.model, opts.max_objects)
}

fn label(p: &ModulePresentation, s: ObjSet) -> String {
    format!("{{{}}}", p.names_of(s).join(","))
}

fn point_labels(space: &SModSpace) -> Vec<String> {
    let p = space.presentation();
    space.points().iter().map(|n| n.label(p)).collect()
}

fn point_list(space: &SModSpace, s: PointSet) -> Vec<String> {
    let labels = point_labels(space);
    s.iter().map(|x| labels[x.index()].clone()).collect()
}

fn resolve_objects(p: &ModulePresentation, names: &[String], flag: &str) -> Result<ObjSet> {
    names
        .iter()
        .filter(|n| !n.is_empty())
        .map(|n| {
            p.object(n).ok_or_else(|| Error::Resolve {
                token: n.clone(),
                context: format!("{flag} (module objects: {})", p.module().names.join(", ")),
            })
        })
        .collect()
}

fn validate_cmd(opts: &Options) -> Result<Report> {
    let doc = PresentationDocument::parse(&read(&opts.model)?)?;
    let norm = doc.normalized()?;
    let tables = norm.tables()?;
    let mut r = Report::new("validate", digest(&norm));
    let (kn, mn) = (tables.category.names.len(), tables.module.names.len());
    let within = kn <= opts.max_objects && mn <= opts.max_objects;
    r.check(
        "object-limit",
        within,
        (!within).then(|| {
            format!(
                "{kn} category / {mn} module objects, limit {}",
                opts.max_objects
            )
        }),
    );
    let v = validate(&tables)?;
    let shown: Vec<String> = v.violations.iter().take(8).map(|x| x.to_string()).collect();
    r.check(
        "axioms",
        v.is_empty(),
        (!v.is_empty()).then(|| {
            let more = v.violations.len().saturating_sub(shown.len());
            let tail = if more > 0 {
                format!("; and {more} more")
            } else {
                String::new()
            };
            format!("{}{tail}", shown.join("; "))
        }),
    );
    if v.is_empty() && within {
        let n = doc.operators.len();
        match Model::from_document(doc, opts.max_objects) {
            Ok(_) => r.check("operators", true, Some(format!("{n} defined"))),
            Err(e) => r.check("operators", false, Some(e.to_string())),
        }
    }
    r.line(format!(
        "{kn} category objects, {mn} module objects, {} / {} triangles after rotation closure",
        tables.category.triangles.len(),
        tables.module.triangles.len()
    ));
    for note in &v.unchecked {
        r.line(format!("unchecked: {note}"));
    }
    r.results = json!({
        "category_objects": tables.category.names,
        "module_objects": tables.module.names,
        "self_action": tables.self_action,
        "triangles": {
            "category": tables.category.triangles.len(),
            "module": tables.module.triangles.len(),
        },
        "violations": v.violations,
        "unchecked": v.unchecked,
    });
    Ok(r)
}

fn describe(p: &ModulePresentation, m: ObjectId, prov: &Provenance, seeds: ObjSet) -> String {
    let n = |x: ObjectId| p.name(x).to_string();
    let link = |l: &BarLink| match *l {
        BarLink::Member { object } => n(object),
        BarLink::Summand {
            object,
            scalar,
            source,
            ..
        } => format!(
            "{} (summand of {}*{})",
            n(object),
            p.category_name(scalar),
            n(source)
        ),
    };
    match prov {
        Provenance::Seed if seeds.contains(m) => "seed".into(),
        Provenance::Seed => "zero object".into(),
        Provenance::Summand {
            scalar,
            source,
            cofactor,
        } => format!(
            "summand of {}*{} = {} (+) {}",
            p.category_name(*scalar),
            n(*source),
            n(m),
            n(*cofactor)
        ),
        Provenance::Triangle {
            triangle, links, ..
        } => {
            let [a, b, c] = triangle.entries();
            format!(
                "triangle ({}, {}, {}) from {} and {}",
                n(a),
                n(b),
                n(c),
                link(&links[0]),
                link(&links[1])
            )
        }
    }
}

fn seed(model: &Model, opts: &Options) -> Result<ObjSet> {
    let names = opts
        .seed
        .as_ref()
        .ok_or_else(|| Error::Usage("--seed is required".into()))?;
    resolve_objects(model.presentation(), names, "--seed")
}

fn generate_cmd(model: &Model, opts: &Options) -> Result<Report> {
    let p = model.presentation().as_ref();
    let x = seed(model, opts)?;
    let (sub, cert) = generate(p, x)?;
    let mut r = Report::new("generate", model.digest());
    let mut stages = Vec::new();
    r.line(format!("seed {}  members {}", label(p, x), sub.label(p)));
    for m in sub.members().iter() {
        let stage = cert.stage(m).expect("member has a stage");
        let via = describe(p, m, cert.provenance(m).expect("member has provenance"), x);
        r.line(format!("{}  stage {stage}  {via}", p.name(m)));
        stages.push(json!({"object": p.name(m), "stage": stage, "via": via}));
    }
    let thick = is_thick(p, sub.members())?.holds();
    r.check("thick", thick, None);
    r.check("contains-seed", x.is_subset(sub.members()), None);
    r.check(
        "stabilized",
        cert.chain().len() <= p.module_len() + 1,
        Some(format!("{} stages", cert.chain().len())),
    );
    r.results = json!({
        "seed": p.names_of(x),
        "members": sub.names(p),
        "stages": stages,
        "chain": cert.chain().iter().map(|s| p.names_of(*s)).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn witness_cmd(model: &Model, opts: &Options) -> Result<Report> {
    let p = model.presentation().as_ref();
    let x = seed(model, opts)?;
    let target_name = opts
        .target
        .as_ref()
        .ok_or_else(|| Error::Usage("--target is required".into()))?;
    let target = resolve_objects(p, std::slice::from_ref(target_name), "--target")?
        .first()
        .ok_or_else(|| Error::Usage("--target is empty".into()))?;
    let (sub, cert) = generate(p, x)?;
    let w = cert.witnesses(target)?;
    let (regen, _) = generate(p, w)?;
    let mut r = Report::new("witness", model.digest());
    r.line(format!(
        "{} in {} is generated by {}",
        p.name(target),
        sub.label(p),
        label(p, w)
    ));
    r.check("witnesses-within-seed", w.is_subset(x), None);
    r.check("target-regenerated", regen.contains(target), None);
    r.results = json!({
        "seed": p.names_of(x),
        "target": p.name(target),
        "stage": cert.stage(target),
        "witnesses": p.names_of(w),
        "regenerated": regen.names(p),
    });
    Ok(r)
}

fn basis_verdicts(
    r: &mut Report,
    prefix: &str,
    p: &ModulePresentation,
    space: &SModSpace,
) -> Result<Value> {
    let b = basis_properties(p, space)?;
    let detail = |c: &BasisCheck| {
        c.witness.as_ref().map(|w| {
            let names: Vec<&str> = w.iter().map(|&x| p.name(x)).collect();
            format!("fails at ({})", names.join(", "))
        })
    };
    for (name, c) in [
        ("zero", &b.zero),
        ("triangles", &b.triangles),
        ("sums", &b.sums),
        ("action", &b.action),
        ("translation", &b.translation),
    ] {
        let d = detail(c).or_else(|| Some(format!("{} cases", c.checked)));
        r.check(format!("{prefix}basis-{name}"), c.holds, d);
    }
    Ok(serde_json::to_value(&b).expect("serializes"))
}

fn smod_section(r: &mut Report, prefix: &str, space: &SModSpace) -> Result<Value> {
    let p = space.presentation().as_ref();
    let labels = point_labels(space);
    let thick = space
        .points()
        .iter()
        .all(|n| matches!(is_thick(p, n.members()), Ok(t) if t.holds()));
    r.check(
        format!("{prefix}points-thick"),
        thick,
        Some(format!("{} points", space.len())),
    );
    let basis_value = basis_verdicts(r, prefix, p, space)?;
    let basis: Vec<Value> = p
        .module_objects()
        .iter()
        .map(|m| json!({"object": p.name(m), "points": point_list(space, space.basic_open(m))}))
        .collect();
    let edges: Vec<[String; 2]> = space
        .hasse_edges()
        .into_iter()
        .map(|(x, y)| [labels[x.index()].clone(), labels[y.index()].clone()])
        .collect();
    Ok(json!({
        "points": labels,
        "basis": basis,
        "covers": edges,
        "basis_properties": basis_value,
    }))
}

fn smod_cmd(model: &Model, opts: &Options) -> Result<(Report, Option<String>)> {
    let space = enumerate_smod_with(model.presentation(), opts.exec);
    let mut r = Report::new("smod", model.digest());
    r.line(format!(
        "{} thick submodules: {}",
        space.len(),
        point_labels(&space).join(" ")
    ));
    r.results = smod_section(&mut r, "", &space)?;
    Ok((r, Some(hasse_dot(&space, "smod"))))
}

fn property_value(p: &ModulePresentation, c: &PropertyCheck) -> Value {
    let w: Vec<String> = c.witness.iter().map(|s| label(p, *s)).collect();
    json!({"holds": c.holds, "witness": w})
}

fn classify_section(
    r: &mut Report,
    prefix: &str,
    c: &OperatorSpec,
    exec: Exec,
    gate_is_verdict: bool,
) -> (Value, bool) {
    let p = c.presentation().as_ref();
    let cl = classify_with(c, exec);
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.line(format!(
        "{} ({}): extensive {}, order-preserving {}, idempotent {}, finite-type {}",
        c.name(),
        c.kind().label(),
        yes(cl.extensive.holds),
        yes(cl.order_preserving.holds),
        yes(cl.idempotent.holds),
        yes(cl.finite_type.holds)
    ));
    if gate_is_verdict {
        r.check(
            format!("{prefix}gate"),
            cl.passes_gate(),
            cl.gate().err().map(|e| e.to_string()),
        );
    }
    let repairs: Vec<String> = c.repairs().iter().map(|n| n.label(p)).collect();
    let value = json!({
        "kind": c.kind().label(),
        "extensive": property_value(p, &cl.extensive),
        "order_preserving": property_value(p, &cl.order_preserving),
        "idempotent": property_value(p, &cl.idempotent),
        "finite_type": property_value(p, &cl.finite_type),
        "closure_of_finite_type": cl.is_closure_of_finite_type(),
        "repairs": repairs,
        "principal_images": p.module_objects().iter().map(|m| {
            json!({"object": p.name(m), "image": c.principal_table()[m.index()].label(p)})
        }).collect::<Vec<_>>(),
    });
    (value, cl.passes_gate())
}

fn operators_cmd(model: &Model, opts: &Options) -> Result<Report> {
    let names = match &opts.operator {
        Some(n) => vec![n.clone()],
        None => model.operator_names(),
    };
    let mut r = Report::new("operators", model.digest());
    r.operator = opts.operator.clone();
    let mut out = Vec::new();
    for name in names {
        let c = model.operator(&name)?;
        let (v, _) = classify_section(&mut r, &format!("{name}/"), &c, opts.exec, true);
        out.push(json!({"name": name, "classification": v}));
    }
    r.results = json!({ "operators": out });
    Ok(r)
}

fn spectral_section(r: &mut Report, prefix: &str, space: &SModSpace, exec: Exec) -> Value {
    let s = space.spectral_report_with(exec);
    let labels = point_labels(space);
    let t0_detail = s.t0_witness.map(|[a, b]| {
        format!(
            "{} and {} are indistinguishable",
            labels[a.index()],
            labels[b.index()]
        )
    });
    let sober_detail = s.sober_witness.as_ref().map(|w| {
        format!(
            "closure of {} has generic points {:?}",
            labels[w.closure_of.index()],
            point_list(space, w.generic_points)
        )
    });
    r.check(format!("{prefix}t0"), s.t0, t0_detail);
    r.check(format!("{prefix}sober"), s.sober, sober_detail);
    r.check(
        format!("{prefix}basis-quasi-compact"),
        s.basis_quasi_compact,
        None,
    );
    let p = space.presentation();
    r.check(
        format!("{prefix}basis-intersection-closed"),
        s.basis_intersection_closed,
        s.intersection_witness.map(|[i, j]| {
            format!(
                "U({}) ∩ U({}) is not basic",
                p.name(ObjectId(i)),
                p.name(ObjectId(j))
            )
        }),
    );
    r.check(format!("{prefix}spectral"), s.spectral, None);
    json!({
        "points": labels,
        "report": s,
    })
}

fn fixed_space(model: &Model, c: &OperatorSpec, exec: Exec) -> Result<SModSpace> {
    fixed_points(&enumerate_smod_with(model.presentation(), exec), c)
}

fn spectral_cmd(model: &Model, opts: &Options) -> Result<(Report, Option<String>)> {
    let c = model.operator(opts.operator_name())?;
    let space = fixed_space(model, &c, opts.exec)?;
    let mut r = Report::new("spectral", model.digest());
    r.operator = Some(c.name().to_string());
    r.line(format!(
        "{} fixed points: {}",
        space.len(),
        point_labels(&space).join(" ")
    ));
    r.results = spectral_section(&mut r, "", &space, opts.exec);
    Ok((
        r,
        Some(hasse_dot(&space, &format!("fixed points of {}", c.name()))),
    ))
}

fn ultrafilter_section(
    r: &mut Report,
    prefix: &str,
    space: &SModSpace,
    c: &OperatorSpec,
    exec: Exec,
) -> Result<Value> {
    let p = space.presentation().as_ref();
    let u = ultrafilter_check_with(space, c, exec)?;
    let labels = point_labels(space);
    let checks: [EntryCheck; 4] = [
        ("limit-thick", |e| e.thick),
        ("limit-fixed", |e| e.fixed),
        ("limit-equals-point", |e| e.equals_point),
        ("biconditional", |e| e.biconditional),
    ];
    for (name, holds) in checks {
        let bad: Vec<&str> = u
            .entries
            .iter()
            .filter(|e| !holds(e))
            .map(|e| labels[e.point.index()].as_str())
            .collect();
        let detail = (!bad.is_empty()).then(|| format!("fails at {}", bad.join(" ")));
        r.check(format!("{prefix}{name}"), bad.is_empty(), detail);
    }
    let entries: Vec<Value> = u
        .entries
        .iter()
        .map(|e| {
            json!({
                "point": labels[e.point.index()],
                "limit": label(p, e.limit),
                "thick": e.thick,
                "fixed": e.fixed,
                "equals_point": e.equals_point,
                "biconditional": e.biconditional,
                "biconditional_witness": e.biconditional_witness.map(|m| p.name(m)),
            })
        })
        .collect();
    Ok(json!({"entries": entries, "note": u.note}))
}

fn ultrafilter_cmd(model: &Model, opts: &Options) -> Result<(Report, Option<String>)> {
    let c = model.operator(opts.operator_name())?;
    let space = fixed_space(model, &c, opts.exec)?;
    let mut r = Report::new("ultrafilter", model.digest());
    r.operator = Some(c.name().to_string());
    r.line(format!("{} principal ultrafilters", space.len()));
    r.results = ultrafilter_section(&mut r, "", &space, &c, opts.exec)?;
    Ok((
        r,
        Some(hasse_dot(&space, &format!("fixed points of {}", c.name()))),
    ))
}

fn monoid_section(r: &mut Report, prefix: &str, m: &Monoid, exec: Exec) -> (Value, String) {
    let space = m.space();
    let p = space.presentation().as_ref();
    let rep = m.report_with(exec);
    let labels = point_labels(space);
    let pts = |w: &[PointId]| -> Option<String> {
        (!w.is_empty()).then(|| {
            w.iter()
                .map(|x| labels[x.index()].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        })
    };
    r.check(
        format!("{prefix}closure"),
        rep.closure.holds,
        pts(&rep.closure.witness),
    );
    r.check(
        format!("{prefix}commutativity"),
        rep.commutativity.holds,
        pts(&rep.commutativity.witness),
    );
    r.check(
        format!("{prefix}associativity"),
        rep.associativity.holds,
        pts(&rep.associativity.witness),
    );
    r.check(
        format!("{prefix}neutrality"),
        rep.neutrality.holds,
        pts(&rep.neutrality.witness),
    );
    let bad: Vec<String> = rep
        .continuity
        .iter()
        .flat_map(|c| {
            c.entries.iter().filter(|e| !e.holds).map(|e| {
                let at = c.point.map_or("?", |x| labels[x.index()].as_str());
                format!("{at} at {}", p.name(e.object))
            })
        })
        .collect();
    r.check(
        format!("{prefix}continuity"),
        rep.continuous,
        (!bad.is_empty()).then(|| bad.join("; ")),
    );
    let table: Vec<Vec<Option<&str>>> = rep
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.map(|k| labels[k.index()].as_str()))
                .collect()
        })
        .collect();
    let continuity: Vec<Value> = rep
        .continuity
        .iter()
        .map(|c| {
            let failing: Vec<&str> = c
                .entries
                .iter()
                .filter(|e| !e.holds)
                .map(|e| p.name(e.object))
                .collect();
            json!({
                "point": c.point.map(|x| labels[x.index()].clone()),
                "holds": c.holds,
                "failing_objects": failing,
            })
        })
        .collect();
    let value = json!({
        "points": labels,
        "identity": rep.identity.map(|e| labels[e.index()].clone()),
        "table": table,
        "idempotent": rep.idempotence.holds,
        "continuity": continuity,
        "passed": rep.passed,
    });
    let dot = monoid_dot(
        &labels,
        &rep.table,
        &format!("monoid of {}", m.operator().name()),
    );
    (value, dot)
}

fn monoid_cmd(model: &Model, opts: &Options) -> Result<(Report, Option<String>)> {
    let c = model.operator(opts.operator_name())?;
    let m = Monoid::with_exec(&c, opts.exec)?;
    let mut r = Report::new("monoid", model.digest());
    r.operator = Some(c.name().to_string());
    r.line(format!(
        "{}-point monoid on {}",
        m.space().len(),
        point_labels(m.space()).join(" ")
    ));
    let (value, dot) = monoid_section(&mut r, "", &m, opts.exec);
    r.results = value;
    Ok((r, Some(dot)))
}

/// `c^inf(N)` is fixed by `c`, and `c^inf(N)` is the union of
/// `c^inf(K(n))` over the members `n` of `N`.
fn completion_section(
    r: &mut Report,
    prefix: &str,
    c: &OperatorSpec,
    space: &SModSpace,
) -> Result<()> {
    let p = space.presentation().as_ref();
    let inf = c_infinity(c)?;
    let mut not_fixed = None;
    let mut not_finite = None;
    for n in space.points() {
        let image = inf.evaluate(n)?;
        if not_fixed.is_none() && !c.is_fixed(&image) {
            not_fixed = Some(n.label(p));
        }
        let union = n.members().iter().try_fold(ObjSet::EMPTY, |acc, m| {
            inf.principal_image(m).map(|s| acc.union(s.members()))
        })?;
        if not_finite.is_none() && union != image.members() {
            not_finite = Some(n.label(p));
        }
    }
    r.check(
        format!("{prefix}completion-fixed"),
        not_fixed.is_none(),
        not_fixed.map(|n| format!("c-infinity of {n} is not fixed")),
    );
    r.check(
        format!("{prefix}completion-finite-type"),
        not_finite.is_none(),
        not_finite.map(|n| format!("union over principals differs at {n}")),
    );
    Ok(())
}

fn report_cmd(model: &Model, opts: &Options) -> Result<(Report, Option<String>)> {
    let p = model.presentation().as_ref();
    let space = enumerate_smod_with(model.presentation(), opts.exec);
    let mut r = Report::new("report", model.digest());
    r.check(
        "presentation-valid",
        true,
        Some(format!(
            "{} category objects, {} module objects",
            p.category_len(),
            p.module_len()
        )),
    );
    r.line(format!(
        "{} thick submodules: {}",
        space.len(),
        point_labels(&space).join(" ")
    ));
    let smod = smod_section(&mut r, "smod/", &space)?;
    let mut ops = Vec::new();
    for name in model.operator_names() {
        let c = model.operator(&name)?;
        let prefix = format!("{name}/");
        let (classification, gated) = classify_section(&mut r, &prefix, &c, opts.exec, false);
        let mut entry = json!({"name": name, "classification": classification});
        if gated {
            let fixed = fixed_points(&space, &c)?;
            let family = FamilySpec::check(p, fixed.points());
            r.check(
                format!("{prefix}fixed-points-form-family"),
                family.is_none(),
                family.map(|v| v.to_string()),
            );
            completion_section(&mut r, &prefix, &c, &space)?;
            entry["spectral"] = spectral_section(&mut r, &prefix, &fixed, opts.exec);
            entry["ultrafilter"] = ultrafilter_section(&mut r, &prefix, &fixed, &c, opts.exec)?;
            let m = Monoid::with_exec(&c, opts.exec)?;
            entry["monoid"] = monoid_section(&mut r, &prefix, &m, opts.exec).0;
        } else {
            let reason = classify_with(&c, opts.exec)
                .gate()
                .err()
                .map(|e| e.to_string());
            r.line(format!(
                "{name}: spectral and monoid checks skipped ({})",
                reason.as_deref().unwrap_or("")
            ));
            entry["skipped"] = json!(reason);
        }
        ops.push(entry);
    }
    r.results = json!({
        "objects": p.module().names,
        "smod": smod,
        "operators": ops,
    });
    Ok((r, Some(hasse_dot(&space, "smod"))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!(matches!("nope".parse::<Command>(), Err(Error::Usage(_))));
    }

    #[test]
    fn dot_is_rejected_where_unsupported() {
        let mut o = Options::new("missing.json");
        o.dot = Some("x.dot".into());
        assert!(matches!(run(Command::Generate, &o), Err(Error::Usage(_))));
    }

    #[test]
    fn missing_model_is_an_io_error() {
        let err = run(Command::Smod, &Options::new("/nonexistent/model.json")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
