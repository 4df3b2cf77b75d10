//! The fixture corpus: small sets, graphs, algebras, seeds and families
//! shared by the CLI, the test suites and `phl fixtures`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use itertools::Itertools;

use crate::algebra::{Algebra, Category, Monoid};
use crate::cylinder::{by_name, Cylinder, EhdSamples};
use crate::document::{canonical, Document};
use crate::error::Result;
use crate::equivalence::NamedAlgebra;
use crate::lifting::{default_generators, generate_anodyne};
use crate::monads::{cardinal, linear_chain};
use crate::object::{Obj, Presheaf};
use crate::search::{enumerate_homs, enumerate_isos, Guard, HomSearch};
use crate::shape::Shape;

/// A named corpus document.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub document: Document,
}

/// Sets with 0 to 4 elements.
pub fn sets() -> Vec<(String, Obj)> {
    (0..=4).map(|n| (format!("set-{n}"), cardinal(n))).collect()
}

/// Nonempty sets with at most `max` elements.
pub fn nonempty_sets(max: usize) -> Vec<(String, Obj)> {
    (1..=max).map(|n| (format!("set-{n}"), cardinal(n))).collect()
}

/// Every graph with at most `max_vertices` vertices and `max_edges` edges,
/// one per isomorphism class. `reflexive` adds designated identities, in
/// which case the listed edges are the proper ones.
pub fn small_graphs(max_vertices: usize, max_edges: usize, reflexive: bool) -> Vec<(String, Obj)> {
    const NAMES: [&str; 3] = ["a", "b", "c"];
    let mut out: Vec<(String, Obj)> = Vec::new();
    for v in 0..=max_vertices.min(NAMES.len()) {
        let vertices = &NAMES[..v];
        let kinds: Vec<(usize, usize)> = (0..v).cartesian_product(0..v).collect();
        for e in 0..=max_edges {
            let mut found: Vec<Obj> = Vec::new();
            for pick in kinds.iter().combinations_with_replacement(e) {
                let edges: Vec<(String, String, String)> = pick
                    .iter()
                    .enumerate()
                    .map(|(k, &&(s, t))| (format!("e{}", k + 1), NAMES[s].to_string(), NAMES[t].to_string()))
                    .collect();
                let x = if reflexive {
                    Presheaf::reflexive_graph(&to_strings(vertices), &edges)
                } else {
                    Presheaf::graph(&to_strings(vertices), &edges)
                };
                let x = Arc::new(x.expect("well-formed by construction"));
                let known = found
                    .iter()
                    .any(|y| !enumerate_isos(y, &x, Guard::default()).expect("tiny search").is_empty());
                if !known {
                    found.push(x);
                }
            }
            let prefix = if reflexive { "rgraph" } else { "graph" };
            for (k, x) in found.into_iter().enumerate() {
                out.push((format!("{prefix}-v{v}-e{e}-{k}"), x));
            }
            if v == 0 {
                break;
            }
        }
    }
    out
}

fn to_strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Named graphs beyond the exhaustive list: linear chains `[0]..[3]`, the
/// 3-cycle, a span and a cospan.
pub fn named_graphs() -> Vec<(String, Obj)> {
    let mut out: Vec<(String, Obj)> = (0..=3)
        .map(|n| (format!("linear-chain-{n}"), linear_chain(n, Shape::Graph).expect("valid chain")))
        .collect();
    let g = |vs: &[&str], es: &[(&str, &str, &str)]| Arc::new(Presheaf::graph(vs, es).expect("valid graph"));
    out.push((
        "cycle-3".into(),
        g(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")]),
    ));
    out.push(("span".into(), g(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "a", "c")])));
    out.push(("cospan".into(), g(&["a", "b", "c"], &[("e1", "a", "c"), ("e2", "b", "c")])));
    out
}

pub fn monoids() -> Vec<(String, Monoid)> {
    vec![
        ("monoid-trivial".into(), Monoid::trivial()),
        ("monoid-z2".into(), Monoid::z2()),
        ("monoid-idempotent".into(), Monoid::idempotent()),
    ]
}

pub fn categories() -> Vec<(String, Category)> {
    vec![
        ("category-terminal".into(), Category::terminal()),
        ("category-chain2".into(), Category::chain(2)),
        ("category-groupoid-interval".into(), Category::groupoid_interval()),
        ("category-parallel-arrows".into(), Category::parallel_arrows()),
    ]
}

/// The monoid family, as algebras for the free-monoid monad.
pub fn monoid_family() -> Vec<NamedAlgebra> {
    monoids()
        .into_iter()
        .map(|(n, m)| NamedAlgebra::new(n, Algebra::Monoid(m)))
        .collect()
}

/// The category family, as algebras for the free-category monad.
pub fn category_family() -> Vec<NamedAlgebra> {
    categories()
        .into_iter()
        .map(|(n, c)| NamedAlgebra::new(n, Algebra::Category(c)))
        .collect()
}

/// Corpus families are generated to this depth.
pub const FAMILY_DEPTH: usize = 1;

/// The full corpus as documents, in a fixed order.
pub fn fixtures() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    let mut push = |name: String, document: Document| out.push(Fixture { name, document });
    for (n, x) in sets() {
        push(n, Document::Object(x));
    }
    for (n, x) in small_graphs(3, 3, false).into_iter().chain(named_graphs()) {
        push(n, Document::Object(x));
    }
    for (n, x) in small_graphs(2, 2, true) {
        push(n, Document::Object(x));
    }
    for (n, m) in monoids() {
        push(n, Document::Monoid(m));
    }
    for (n, c) in categories() {
        push(n, Document::Category(c));
    }
    for name in ["set2", "graphI", "rgraphI"] {
        let inst = by_name(name, 0)?;
        let seeds = default_generators(inst.shape())?;
        push(format!("seeds-{name}"), Document::Maps(seeds.clone()));
        let family = generate_anodyne(&inst, &seeds, &seeds, FAMILY_DEPTH, Guard::default())?;
        push(format!("family-{name}"), Document::Family(family));
    }
    Ok(out)
}

/// Writes every fixture as `<name>.json` into `dir` and returns the paths.
pub fn emit(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    fixtures()?
        .into_iter()
        .map(|f| {
            let path = dir.join(format!("{}.json", f.name));
            std::fs::write(&path, canonical(&f.document.to_json()))?;
            Ok(path)
        })
        .collect()
}

/// Objects of a base category with at most `max` cells per sort (sets and
/// graphs; `max ≤ 3`).
pub fn objects_upto(shape: Shape, max: usize) -> Vec<(String, Obj)> {
    match shape {
        Shape::Set => (0..=max).map(|n| (format!("set-{n}"), cardinal(n))).collect(),
        Shape::Graph => small_graphs(max, max, false),
        Shape::ReflexiveGraph => small_graphs(max, max, true),
        Shape::Simplicial { .. } => Vec::new(),
    }
}

/// Samples for the cylinder axioms: objects with at most `object_cells`
/// cells per sort, every mono between objects with at most `mono_cells`,
/// and every span `B <-f- A -g-> C` with `f` mono among objects with at
/// most `span_cells`.
pub fn ehd_samples(shape: Shape, object_cells: usize, mono_cells: usize, span_cells: usize) -> Result<EhdSamples> {
    let guard = Guard::default();
    let objects: Vec<Obj> = objects_upto(shape, object_cells).into_iter().map(|(_, x)| x).collect();
    let small: Vec<Obj> = objects_upto(shape, mono_cells).into_iter().map(|(_, x)| x).collect();
    let mut monos = Vec::new();
    for k in &small {
        for l in &small {
            let mut search = HomSearch::new(k, l, guard)?;
            search.injective();
            monos.extend(search.collect(k, l)?);
        }
    }
    let tiny: Vec<Obj> = objects_upto(shape, span_cells).into_iter().map(|(_, x)| x).collect();
    let mut spans = Vec::new();
    for a in &tiny {
        for b in &tiny {
            let mut search = HomSearch::new(a, b, guard)?;
            search.injective();
            let fs = search.collect(a, b)?;
            if fs.is_empty() {
                continue;
            }
            for c in &tiny {
                for g in enumerate_homs(a, c, guard)? {
                    for f in &fs {
                        spans.push((f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    Ok(EhdSamples { objects, monos, spans })
}
