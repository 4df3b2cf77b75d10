//! Subcommand implementations. Each returns the verdict after writing the
//! report.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use phl_core::algebra::Algebra;
use phl_core::corpus;
use phl_core::cylinder::{by_name, verify_ehd, Cylinder, EhdSamples, ProductCylinder};
use phl_core::document::{
    family_to_json, map_to_json, object_to_json, read_document, square_to_json, Document,
};
use phl_core::equivalence::{alternative_we_check, is_t_weak_equivalence, NamedAlgebra};
use phl_core::homotopy::{find_homotopy, homotopy_classes, HomClasses};
use phl_core::lifting::{
    default_generators, generate_anodyne, is_naively_fibrant_upto, solve_lift, AnodyneFamily, LiftingProblem,
};
use phl_core::monads::FreeMonad;
use phl_core::report::RunReport;
use phl_core::shape::Shape;
use phl_core::simplicial::{self, horn_filler, nerve, tau0_classes};
use phl_core::witnesses::{m2_retract_set, m2_tower_graph, tags_valid, SaturationStep};
use phl_core::{Error, Obj, Presheaf, PresheafMap, Result};

use crate::{suites, Cli, Command, Global};

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<bool> {
    let start = Instant::now();
    let g = &cli.global;
    let mut report = RunReport::new(argv);
    report.param("cap", g.cap as u64).param("guard", g.guard().limit());
    match &cli.command {
        Command::Classes { x, a } => classes(g, &mut report, x, a)?,
        Command::Homotopy { f, g: other } => homotopy(g, &mut report, f, other)?,
        Command::Lift { square } => lift(g, &mut report, square)?,
        Command::Fibrant { x, family } => fibrant(g, &mut report, x, family.as_deref())?,
        Command::Anodyne { seeds, generators } => anodyne(g, &mut report, seeds.as_deref(), generators.as_deref())?,
        Command::Tweq { f, algebras } => tweq(g, &mut report, f, algebras)?,
        Command::WitnessM2 { x } => witness_m2(g, &mut report, x)?,
        Command::CheckEhd => check_ehd(g, &mut report)?,
        Command::HornFill { x, n, k, inner } => horn_fill(g, &mut report, x, *n, *k, *inner)?,
        Command::Nerve { category } => nerve_cmd(g, &mut report, category)?,
        Command::Tau0 { x, a } => tau0(g, &mut report, x, a)?,
        Command::Verify { suite } => suites::verify(g, &mut report, suite)?,
        Command::Fixtures => fixtures(g, &mut report)?,
    }
    if g.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = report.to_text();
    match (&g.out, &cli.command) {
        (Some(path), c) if !matches!(c, Command::Fixtures) => std::fs::write(path, &text)?,
        _ => {}
    }
    print!("{text}");
    Ok(report.verdict)
}

fn default_instance(shape: Shape) -> &'static str {
    match shape {
        Shape::Set => "set2",
        Shape::Graph => "graphI",
        Shape::ReflexiveGraph => "rgraphI",
        Shape::Simplicial { .. } => "sset-jinf",
    }
}

fn shape_of_instance(name: &str) -> Result<Shape> {
    match name {
        "set2" => Ok(Shape::Set),
        "graphI" => Ok(Shape::Graph),
        "rgraphI" => Ok(Shape::ReflexiveGraph),
        "sset-delta1" | "sset-jinf" => Ok(Shape::Simplicial { cap: 0 }),
        other => Err(Error::invalid(format!("unknown instance `{other}`"))),
    }
}

/// The instance for objects of `shape`: the named one if given, else the default.
fn instance(g: &Global, report: &mut RunReport, shape: Shape) -> Result<ProductCylinder> {
    let name = g.instance.clone().unwrap_or_else(|| default_instance(shape).to_string());
    let cap = match shape {
        Shape::Simplicial { cap } => cap,
        _ => g.cap,
    };
    report.param("instance", name.clone());
    by_name(&name, cap)
}

/// Reads an object argument. Algebra documents stand for their carrier in
/// `shape` (or their nerve when `shape` is simplicial).
fn load_object(path: &Path, shape: Option<Shape>, g: &Global) -> Result<Obj> {
    let doc = read_document(path)?;
    let category = |c: phl_core::algebra::Category| -> Result<Obj> {
        match shape {
            Some(Shape::Simplicial { .. }) | None => nerve(&c, g.cap, g.guard()),
            Some(s) => c.carrier(s),
        }
    };
    match doc {
        Document::Object(x) => Ok(x),
        Document::Monoid(m) => match shape {
            Some(Shape::Set) => Ok(m.carrier()),
            _ => category(m.as_category()),
        },
        Document::Category(c) => category(c),
        other => Err(Error::invalid(format!("{}: expected an object, found a {}", path.display(), other.kind()))),
    }
}

/// Shape requested by `--instance`, if any.
fn requested_shape(g: &Global) -> Result<Option<Shape>> {
    match &g.instance {
        None => Ok(None),
        Some(name) => {
            let s = shape_of_instance(name)?;
            Ok(Some(match s {
                Shape::Simplicial { .. } => Shape::simplicial(g.cap),
                other => other,
            }))
        }
    }
}

fn load_map(path: &Path) -> Result<PresheafMap> {
    match read_document(path)? {
        Document::Map(m) => Ok(m),
        other => Err(Error::invalid(format!("{}: expected a map, found a {}", path.display(), other.kind()))),
    }
}

fn load_maps(path: &Path) -> Result<Vec<PresheafMap>> {
    match read_document(path)? {
        Document::Maps(ms) => Ok(ms),
        Document::Map(m) => Ok(vec![m]),
        other => Err(Error::invalid(format!("{}: expected maps, found a {}", path.display(), other.kind()))),
    }
}

fn classes_json(hc: &HomClasses) -> Value {
    json!({
        "classes": hc.classes,
        "homs": hc.homs.iter().map(map_to_json).collect::<Vec<_>>(),
    })
}

fn classes(g: &Global, report: &mut RunReport, x: &Path, a: &Path) -> Result<()> {
    let hint = requested_shape(g)?;
    let xo = load_object(x, hint, g)?;
    let ao = load_object(a, Some(hint.unwrap_or(xo.shape())), g)?;
    let inst = instance(g, report, xo.shape())?;
    let hc = homotopy_classes(&inst, &xo, &ao, g.guard())?;
    report.note("homs", hc.homs.len() as u64).note("classes", hc.class_count() as u64);
    report.witness = Some(classes_json(&hc));
    Ok(())
}

fn homotopy(g: &Global, report: &mut RunReport, f: &Path, other: &Path) -> Result<()> {
    let (f, h) = (load_map(f)?, load_map(other)?);
    let inst = instance(g, report, f.dom().shape())?;
    match find_homotopy(&inst, &f, &h, g.guard())? {
        Some(theta) => report.witness = Some(map_to_json(&theta.theta)),
        None => report.verdict = false,
    }
    Ok(())
}

fn lift(g: &Global, report: &mut RunReport, square: &Path) -> Result<()> {
    let problem = match read_document(square)? {
        Document::Square(p) => p,
        other => return Err(Error::invalid(format!("expected a square, found a {}", other.kind()))),
    };
    match solve_lift(&problem, g.guard())? {
        Some(d) => report.witness = Some(map_to_json(&d)),
        None => {
            report.verdict = false;
            report.counterexample = Some(square_to_json(&problem));
        }
    }
    Ok(())
}

fn generated_family(g: &Global, report: &mut RunReport, shape: Shape) -> Result<AnodyneFamily> {
    let inst = instance(g, report, shape)?;
    let gens = default_generators(inst.shape())?;
    generate_anodyne(&inst, &gens, &gens, g.depth, g.guard())
}

fn fibrant(g: &Global, report: &mut RunReport, x: &Path, family: Option<&Path>) -> Result<()> {
    let family = match family {
        Some(path) => match read_document(path)? {
            Document::Family(f) => {
                report.param("instance", f.instance.clone());
                f.truncate(g.depth.min(f.depth))
            }
            other => return Err(Error::invalid(format!("expected a family, found a {}", other.kind()))),
        },
        None => {
            let shape = match requested_shape(g)? {
                Some(s) => s,
                None => load_object(x, None, g)?.shape(),
            };
            generated_family(g, report, shape)?
        }
    };
    let shape = family.entries.first().map(|e| e.map.dom().shape()).unwrap_or(Shape::Set);
    let xo = load_object(x, Some(shape), g)?;
    report.param("depth", family.depth as u64);
    let v = is_naively_fibrant_upto(&xo, &family, g.guard())?;
    report.verdict = v.holds();
    report
        .note("entries_checked", v.rlp.entries_checked as u64)
        .note("squares_checked", v.rlp.squares_checked)
        .note("caveat", v.caveat());
    if let Some(c) = &v.rlp.counterexample {
        report.note("failing_entry", c.entry as u64);
        report.counterexample = Some(square_to_json(&c.problem));
    }
    Ok(())
}

fn anodyne(g: &Global, report: &mut RunReport, seeds: Option<&Path>, generators: Option<&Path>) -> Result<()> {
    let seeds = seeds.map(load_maps).transpose()?;
    let gens = generators.map(load_maps).transpose()?;
    let shape = match (&seeds, &gens, requested_shape(g)?) {
        (_, _, Some(s)) => s,
        (Some(s), _, _) if !s.is_empty() => s[0].dom().shape(),
        (_, Some(s), _) if !s.is_empty() => s[0].dom().shape(),
        _ => return Err(Error::invalid("pass --instance, --seeds or --generators")),
    };
    let inst = instance(g, report, shape)?;
    let defaults = default_generators(inst.shape())?;
    let seeds = seeds.unwrap_or_else(|| defaults.clone());
    let gens = gens.unwrap_or(defaults);
    report.param("depth", g.depth as u64);
    let family = generate_anodyne(&inst, &seeds, &gens, g.depth, g.guard())?;
    report
        .note("raw_counts", family.raw_counts.clone())
        .note(
            "entries_per_depth",
            (0..=family.depth).map(|d| family.count_at(d) as u64).collect::<Vec<_>>(),
        )
        .note("all_mono", family.entries.iter().all(|e| e.map.is_mono()));
    report.verdict = family.entries.iter().all(|e| e.map.is_mono());
    report.witness = Some(family_to_json(&family));
    Ok(())
}

fn tweq(g: &Global, report: &mut RunReport, f: &Path, algebras: &[std::path::PathBuf]) -> Result<()> {
    let f = load_map(f)?;
    let shape = f.dom().shape();
    let inst = instance(g, report, shape)?;
    let family: Vec<NamedAlgebra> = if algebras.is_empty() {
        match shape {
            Shape::Set => corpus::monoid_family(),
            _ => corpus::category_family(),
        }
    } else {
        algebras
            .iter()
            .map(|p| {
                let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                match read_document(p)? {
                    Document::Monoid(m) => Ok(NamedAlgebra::new(name, Algebra::Monoid(m))),
                    Document::Category(c) => Ok(NamedAlgebra::new(name, Algebra::Category(c))),
                    other => Err(Error::invalid(format!("expected an algebra, found a {}", other.kind()))),
                }
            })
            .collect::<Result<_>>()?
    };
    report.param("algebras", family.iter().map(|a| a.name.clone()).collect::<Vec<_>>());
    let verdict = is_t_weak_equivalence(&f, &family, &inst, g.guard())?;
    report.verdict = verdict.holds;
    report.note("caveat", verdict.caveat());
    let per: serde_json::Map<String, Value> = verdict
        .per_algebra
        .iter()
        .map(|(n, v)| {
            (
                n.clone(),
                json!({"bijective": v.bijective(), "source_classes": v.source.class_count(), "target_classes": v.target.class_count()}),
            )
        })
        .collect();
    report.note("per_algebra", Value::Object(per));
    let monad = match shape {
        Shape::Set => FreeMonad::monoid(g.cap),
        other => FreeMonad::category(other, g.cap)?,
    }
    .with_guard(g.guard());
    let alt = alternative_we_check(&f, &monad, &inst, g.guard())?;
    report
        .note("alternative_found", alt.found())
        .note("alternative_candidates", alt.candidates as u64);
    if let Some(w) = &alt.witness {
        report.witness = Some(map_to_json(w));
    }
    if let Some((name, v)) = verdict.per_algebra.iter().find(|(_, v)| !v.bijective()) {
        report.counterexample = Some(json!({
            "algebra": name,
            "well_defined": v.well_defined,
            "injective": v.injective,
            "surjective": v.surjective,
        }));
    }
    Ok(())
}

fn steps_json(steps: &[SaturationStep]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| json!({"rule": s.rule.name(), "produces": s.produces, "inputs": s.inputs, "verified": s.verified}))
            .collect(),
    )
}

fn witness_m2(g: &Global, report: &mut RunReport, x: &Path) -> Result<()> {
    let xo = load_object(x, requested_shape(g)?, g)?;
    let steps = match xo.shape() {
        Shape::Set => {
            let w = m2_retract_set(&xo, g.cap)?;
            report.note("pairs", w.pairs.len() as u64).note("words", w.tx.len() as u64);
            report.witness = Some(json!({
                "steps": steps_json(&w.steps),
                "s": map_to_json(&w.s),
                "r": map_to_json(&w.r),
                "u": map_to_json(&w.u),
                "v": map_to_json(&w.v),
            }));
            w.steps
        }
        Shape::Graph | Shape::ReflexiveGraph => {
            let w = m2_tower_graph(&xo, g.cap, g.cap)?;
            report
                .note("stages", w.stages.len() as u64)
                .note("section_length", w.n as u64)
                .note("unreached", w.unreached as u64);
            report.witness = Some(json!({
                "steps": steps_json(&w.steps),
                "stages": w.stages.iter().map(|s| object_to_json(s)).collect::<Vec<_>>(),
                "s": map_to_json(&w.s),
            }));
            w.steps
        }
        other => return Err(Error::invalid(format!("no saturation witness for {other}"))),
    };
    report.verdict = tags_valid(&steps) && steps.iter().all(|s| s.verified);
    Ok(())
}

/// Samples for simplicial instances: simplices, boundary and horn inclusions,
/// and the pushouts gluing two copies of a simplex along its boundary.
fn simplicial_samples(cap: usize) -> Result<EhdSamples> {
    let mut samples = EhdSamples::default();
    for n in 0..=cap {
        samples.objects.push(simplicial::standard_simplex(n, cap)?);
        let b = simplicial::boundary(n, cap)?;
        samples.monos.push(b.clone());
        samples.spans.push((b.clone(), b));
        for k in 0..=n {
            samples.monos.push(simplicial::horn(n, k, cap)?);
        }
    }
    Ok(samples)
}

fn check_ehd(g: &Global, report: &mut RunReport) -> Result<()> {
    let name = g.instance.clone().unwrap_or_else(|| "set2".into());
    let inst = by_name(&name, g.cap)?;
    report.param("instance", name);
    let samples = match inst.shape() {
        Shape::Simplicial { cap } => simplicial_samples(cap)?,
        shape => corpus::ehd_samples(shape, 3, 3, 2)?,
    };
    let r = verify_ehd(&inst, &samples)?;
    report
        .note("objects", samples.objects.len() as u64)
        .note("monos", samples.monos.len() as u64)
        .note("pushouts", samples.spans.len() as u64)
        .note("checks", r.checks.len() as u64)
        .note("failures", r.failures().count() as u64);
    report.verdict = r.all_passed();
    if let Some(c) = r.failures().next() {
        report.counterexample = Some(json!({"axiom": c.axiom, "subject": c.subject}));
    }
    Ok(())
}

fn simplicial_object(path: &Path, g: &Global) -> Result<Obj> {
    let x = load_object(path, Some(Shape::simplicial(g.cap)), g)?;
    match x.shape() {
        Shape::Simplicial { .. } => Ok(x),
        other => Err(Error::invalid(format!("expected a simplicial set, found {other}"))),
    }
}

fn horn_fill(g: &Global, report: &mut RunReport, x: &Path, n: Option<usize>, k: Option<usize>, inner: bool) -> Result<()> {
    let xo = simplicial_object(x, g)?;
    let Shape::Simplicial { cap } = xo.shape() else { unreachable!() };
    let dims: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (1..=cap.min(3)).collect(),
    };
    let mut rows = Vec::new();
    report.verdict = true;
    for n in dims {
        let faces: Vec<usize> = match k {
            Some(k) => vec![k],
            None => (0..=n).filter(|&k| !inner || (0 < k && k < n)).collect(),
        };
        for k in faces {
            let r = horn_filler(&xo, n, k, g.guard())?;
            rows.push(json!({"n": n, "k": k, "horns": r.horns, "filled": r.filled}));
            if let (Some(h), true) = (&r.unfilled, report.verdict) {
                report.verdict = false;
                let t: Obj = Arc::new(Presheaf::terminal(xo.shape()));
                let i = simplicial::horn(n, k, cap)?;
                let problem = LiftingProblem::new(
                    i.clone(),
                    PresheafMap::to_terminal(&xo, &t),
                    h.clone(),
                    PresheafMap::to_terminal(i.cod(), &t),
                )?;
                report.counterexample = Some(square_to_json(&problem));
            }
        }
    }
    report.note("horns", Value::Array(rows));
    Ok(())
}

fn nerve_cmd(g: &Global, report: &mut RunReport, category: &Path) -> Result<()> {
    let x = simplicial_object(category, g)?;
    let Shape::Simplicial { cap } = x.shape() else { unreachable!() };
    report.note("cells", (0..=cap).map(|k| x.len(k) as u64).collect::<Vec<_>>());
    report.witness = Some(object_to_json(&x));
    Ok(())
}

fn tau0(g: &Global, report: &mut RunReport, x: &Path, a: &Path) -> Result<()> {
    let (xo, ao) = (simplicial_object(x, g)?, simplicial_object(a, g)?);
    report.param("instance", "sset-jinf");
    let hc = tau0_classes(&xo, &ao, g.guard())?;
    report.note("homs", hc.homs.len() as u64).note("classes", hc.class_count() as u64);
    report.witness = Some(classes_json(&hc));
    Ok(())
}

fn fixtures(g: &Global, report: &mut RunReport) -> Result<()> {
    let dir = g.out.clone().unwrap_or_else(|| "fixtures".into());
    let paths = corpus::emit(&dir)?;
    report.param("out", dir.display().to_string());
    report.note(
        "files",
        paths
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect::<Vec<_>>(),
    );
    Ok(())
}
