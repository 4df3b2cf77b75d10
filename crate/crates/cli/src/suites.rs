//! Built-in invariant suites run by `phl verify`.

use serde_json::{Map, Value};

use phl_core::corpus;
use phl_core::cylinder::{verify_ehd, ProductCylinder};
use phl_core::document::{canonical, parse_document};
use phl_core::homotopy::check_equivalence_relation;
use phl_core::monads::{check_monad_laws, FreeMonad};
use phl_core::report::RunReport;
use phl_core::shape::Shape;
use phl_core::simplicial::{horn_filler, nerve};
use phl_core::witnesses::{m2_retract_set, m2_tower_graph, tags_valid};
use phl_core::{Error, Result};

use crate::Global;

pub const SUITES: [&str; 5] = ["core", "monads", "witnesses", "simplicial", "all"];

type Checks = Vec<(String, bool)>;

pub fn verify(g: &Global, report: &mut RunReport, suite: &str) -> Result<()> {
    let mut checks: Checks = Vec::new();
    match suite {
        "core" => core(g, &mut checks)?,
        "monads" => monads(&mut checks)?,
        "witnesses" => witnesses(&mut checks)?,
        "simplicial" => simplicial(g, &mut checks)?,
        "all" => {
            core(g, &mut checks)?;
            monads(&mut checks)?;
            witnesses(&mut checks)?;
            simplicial(g, &mut checks)?;
        }
        other => {
            return Err(Error::invalid(format!(
                "unknown suite `{other}` (expected one of {})",
                SUITES.join(", ")
            )))
        }
    }
    report.param("suite", suite);
    let table: Map<String, Value> = checks.iter().map(|(n, ok)| (n.clone(), Value::Bool(*ok))).collect();
    report.verdict = checks.iter().all(|(_, ok)| *ok);
    report.note("checks", Value::Object(table));
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        report.counterexample = Some(Value::String(name.clone()));
    }
    Ok(())
}

fn core(g: &Global, checks: &mut Checks) -> Result<()> {
    let instances = [
        ProductCylinder::set2(),
        ProductCylinder::graph_interval(),
        ProductCylinder::reflexive_graph_interval(),
    ];
    for inst in &instances {
        let shape = phl_core::cylinder::Cylinder::shape(inst);
        let report = verify_ehd(inst, &corpus::ehd_samples(shape, 2, 2, 1)?)?;
        checks.push((format!("cylinder axioms ({})", report.instance), report.all_passed()));
    }
    let sets = corpus::nonempty_sets(3);
    let mut relation = true;
    for (_, x) in &sets {
        for (_, a) in &sets {
            relation &= check_equivalence_relation(&instances[0], x, a, g.guard())?.is_equivalence();
        }
    }
    checks.push(("homotopy is an equivalence on sets".into(), relation));
    let mut round_trip = true;
    for f in corpus::fixtures()? {
        let text = canonical(&f.document.to_json());
        round_trip &= canonical(&parse_document(&text)?.to_json()) == text;
    }
    checks.push(("corpus documents round-trip".into(), round_trip));
    Ok(())
}

fn monads(checks: &mut Checks) -> Result<()> {
    let monoid = FreeMonad::monoid(3);
    let mut ok = true;
    for (_, x) in corpus::nonempty_sets(2) {
        ok &= check_monad_laws(&monoid, &x)?.passed();
    }
    checks.push(("free monoid laws".into(), ok));
    for shape in [Shape::Graph, Shape::ReflexiveGraph] {
        let monad = FreeMonad::category(shape, 2)?;
        let mut ok = true;
        for (_, x) in corpus::objects_upto(shape, 1) {
            ok &= check_monad_laws(&monad, &x)?.passed();
        }
        checks.push((format!("free category laws ({shape})"), ok));
    }
    Ok(())
}

fn witnesses(checks: &mut Checks) -> Result<()> {
    let mut ok = true;
    for (_, x) in corpus::sets().into_iter().take(3) {
        let w = m2_retract_set(&x, 2)?;
        ok &= tags_valid(&w.steps) && w.steps.iter().all(|s| s.verified);
    }
    checks.push(("set retract witnesses".into(), ok));
    let mut ok = true;
    for (_, x) in corpus::objects_upto(Shape::Graph, 1) {
        let w = m2_tower_graph(&x, 2, 2)?;
        ok &= tags_valid(&w.steps) && w.steps.iter().all(|s| s.verified);
    }
    checks.push(("graph tower witnesses".into(), ok));
    Ok(())
}

fn simplicial(g: &Global, checks: &mut Checks) -> Result<()> {
    for (name, c) in corpus::categories() {
        let x = nerve(&c, 3, g.guard())?;
        let mut ok = true;
        for n in 2..=3 {
            for k in 1..n {
                ok &= horn_filler(&x, n, k, g.guard())?.all_filled();
            }
        }
        checks.push((format!("inner horns fill in the nerve of {name}"), ok));
    }
    Ok(())
}
