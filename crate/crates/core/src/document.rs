//! JSON documents for objects, maps, algebras, lifting squares and anodyne
//! families. Parsing reports the JSON path of the offending field;
//! serialization is canonical (sorted keys, fixed layout).

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{Category, Monoid};
use crate::error::{Error, Result};
use crate::lifting::{AnodyneEntry, AnodyneFamily, LiftingProblem, Provenance};
use crate::map::PresheafMap;
use crate::object::{Obj, Presheaf};
use crate::shape::{Shape, EDGE, MAX_SIMPLICIAL_CAP, VERTEX};

/// A parsed document of any kind.
#[derive(Clone, Debug)]
pub enum Document {
    Object(Obj),
    Map(PresheafMap),
    Monoid(Monoid),
    Category(Category),
    Square(LiftingProblem),
    Family(AnodyneFamily),
    Maps(Vec<PresheafMap>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Object(_) => "object",
            Document::Map(_) => "map",
            Document::Monoid(_) => "monoid",
            Document::Category(_) => "category",
            Document::Square(_) => "square",
            Document::Family(_) => "family",
            Document::Maps(_) => "maps",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Object(x) => object_to_json(x),
            Document::Map(m) => map_to_json(m),
            Document::Monoid(m) => monoid_to_json(m),
            Document::Category(c) => category_to_json(c),
            Document::Square(p) => square_to_json(p),
            Document::Family(f) => family_to_json(f),
            Document::Maps(ms) => maps_to_json(ms),
        }
    }
}

/// Canonical text: pretty-printed, keys sorted, trailing newline.
pub fn canonical(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text)?;
    document_from_json(&value, "$")
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)?;
    parse_document(&text).map_err(|e| match e {
        Error::Document { location, message } => Error::Document {
            location: format!("{}: {location}", path.display()),
            message,
        },
        Error::Json(j) => Error::document(path.display().to_string(), j.to_string()),
        other => other,
    })
}

fn at(path: &str, err: Error) -> Error {
    match err {
        Error::Document { .. } => err,
        other => Error::document(path, other.to_string()),
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::document(path, format!("missing field `{key}`")))
}

fn string(v: &Value, path: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::document(path, "expected a string"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::document(path, "expected an array"))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::document(path, "expected an object"))
}

fn strings(v: &Value, path: &str) -> Result<Vec<String>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("{path}[{i}]")))
        .collect()
}

fn triples(v: &Value, path: &str) -> Result<Vec<(String, String, String)>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let p = format!("{path}[{i}]");
            let parts = strings(x, &p)?;
            match parts.as_slice() {
                [a, b, c] => Ok((a.clone(), b.clone(), c.clone())),
                _ => Err(Error::document(p, "expected [label, source, target]")),
            }
        })
        .collect()
}

fn string_map(v: &Value, path: &str) -> Result<HashMap<String, String>> {
    object(v, path)?
        .iter()
        .map(|(k, x)| Ok((k.clone(), string(x, &format!("{path}.{k}"))?)))
        .collect()
}

fn usize_field(v: &Value, path: &str, key: &str) -> Result<usize> {
    field(v, path, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::document(format!("{path}.{key}"), "expected a non-negative integer"))
}

pub fn document_from_json(v: &Value, path: &str) -> Result<Document> {
    let kind = string(field(v, path, "kind")?, &format!("{path}.kind"))?;
    match kind.as_str() {
        "set" | "graph" | "reflexive-graph" | "sset" => Ok(Document::Object(object_from_json(v, path)?)),
        "map" => Ok(Document::Map(map_from_json(v, path)?)),
        "monoid" => Ok(Document::Monoid(monoid_from_json(v, path)?)),
        "category" => Ok(Document::Category(category_from_json(v, path)?)),
        "square" => Ok(Document::Square(square_from_json(v, path)?)),
        "family" => Ok(Document::Family(family_from_json(v, path)?)),
        "maps" => Ok(Document::Maps(maps_from_json(v, path)?)),
        other => Err(Error::document(format!("{path}.kind"), format!("unknown document kind `{other}`"))),
    }
}

pub fn object_from_json(v: &Value, path: &str) -> Result<Obj> {
    let kind = string(field(v, path, "kind")?, &format!("{path}.kind"))?;
    let obj = match kind.as_str() {
        "set" => {
            let els = strings(field(v, path, "elements")?, &format!("{path}.elements"))?;
            Presheaf::set(&els).map_err(|e| at(path, e))?
        }
        "graph" => {
            let vs = strings(field(v, path, "vertices")?, &format!("{path}.vertices"))?;
            let es = triples(field(v, path, "edges")?, &format!("{path}.edges"))?;
            Presheaf::graph(&vs, &es).map_err(|e| at(path, e))?
        }
        "reflexive-graph" => {
            let vs = strings(field(v, path, "vertices")?, &format!("{path}.vertices"))?;
            let es = triples(field(v, path, "edges")?, &format!("{path}.edges"))?;
            let ids = match v.get("identities") {
                None => vs.iter().map(|x| format!("1_{x}")).collect(),
                Some(ids) => {
                    let p = format!("{path}.identities");
                    let m = string_map(ids, &p)?;
                    vs.iter()
                        .map(|x| {
                            m.get(x)
                                .cloned()
                                .ok_or_else(|| Error::document(&p, format!("no identity for vertex `{x}`")))
                        })
                        .collect::<Result<Vec<_>>>()?
                }
            };
            Presheaf::reflexive_graph_with_identities(&vs, &es, &ids).map_err(|e| at(path, e))?
        }
        "sset" => sset_from_json(v, path)?,
        other => return Err(Error::document(format!("{path}.kind"), format!("`{other}` is not an object kind"))),
    };
    Ok(Arc::new(obj))
}

fn sset_from_json(v: &Value, path: &str) -> Result<Presheaf> {
    let cap = usize_field(v, path, "cap")?;
    if cap > MAX_SIMPLICIAL_CAP {
        return Err(Error::document(format!("{path}.cap"), format!("cap exceeds {MAX_SIMPLICIAL_CAP}")));
    }
    let shape = Shape::simplicial(cap);
    let cp = format!("{path}.cells");
    let cells_v = array(field(v, path, "cells")?, &cp)?;
    if cells_v.len() != cap + 1 {
        return Err(Error::document(&cp, format!("expected {} dimensions", cap + 1)));
    }
    let cells: Vec<Vec<String>> = cells_v
        .iter()
        .enumerate()
        .map(|(k, c)| strings(c, &format!("{cp}[{k}]")))
        .collect::<Result<_>>()?;
    let index: Vec<HashMap<&str, usize>> = cells
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
        .collect();
    let op_path = format!("{path}.ops");
    let ops_v = object(field(v, path, "ops")?, &op_path)?;
    let mut ops = Vec::new();
    for op in shape.operators() {
        let p = format!("{op_path}.{}", op.name);
        let table = string_map(
            ops_v.get(&op.name).ok_or_else(|| Error::document(&op_path, format!("missing operator `{}`", op.name)))?,
            &p,
        )?;
        let mut t = Vec::with_capacity(cells[op.from].len());
        for label in &cells[op.from] {
            let img = table
                .get(label)
                .ok_or_else(|| Error::document(&p, format!("no image for `{label}`")))?;
            t.push(
                *index[op.to]
                    .get(img.as_str())
                    .ok_or_else(|| Error::document(&p, format!("unknown cell `{img}` in dimension {}", op.to)))?,
            );
        }
        ops.push(t);
    }
    Presheaf::assemble(shape, cells, ops).map(|(x, _)| x).map_err(|e| at(path, e))
}

pub fn object_to_json(x: &Presheaf) -> Value {
    match x.shape() {
        Shape::Set => json!({"kind": "set", "elements": x.labels(0)}),
        Shape::Graph => json!({
            "kind": "graph",
            "vertices": x.labels(VERTEX),
            "edges": (0..x.len(EDGE)).map(|e| edge_json(x, e)).collect::<Vec<_>>(),
        }),
        Shape::ReflexiveGraph => {
            let ids: Map<String, Value> = (0..x.len(VERTEX))
                .map(|v| (x.label(VERTEX, v).to_string(), json!(x.label(EDGE, x.identity_loop(v)))))
                .collect();
            json!({
                "kind": "reflexive-graph",
                "vertices": x.labels(VERTEX),
                "edges": x.proper_edges().into_iter().map(|e| edge_json(x, e)).collect::<Vec<_>>(),
                "identities": ids,
            })
        }
        Shape::Simplicial { cap } => {
            let ops: Map<String, Value> = x
                .shape()
                .operators()
                .iter()
                .enumerate()
                .map(|(k, op)| {
                    let t: Map<String, Value> = (0..x.len(op.from))
                        .map(|c| (x.label(op.from, c).to_string(), json!(x.label(op.to, x.op(k, c)))))
                        .collect();
                    (op.name.clone(), Value::Object(t))
                })
                .collect();
            json!({
                "kind": "sset",
                "cap": cap,
                "cells": (0..=cap).map(|k| x.labels(k).to_vec()).collect::<Vec<_>>(),
                "ops": ops,
            })
        }
    }
}

fn edge_json(x: &Presheaf, e: usize) -> Value {
    json!([x.label(EDGE, e), x.label(VERTEX, x.source(e)), x.label(VERTEX, x.target(e))])
}

pub fn map_from_json(v: &Value, path: &str) -> Result<PresheafMap> {
    let dom = object_from_json(field(v, path, "domain")?, &format!("{path}.domain"))?;
    let cod = object_from_json(field(v, path, "codomain")?, &format!("{path}.codomain"))?;
    if dom.shape() != cod.shape() {
        return Err(Error::document(path, "domain and codomain have different kinds"));
    }
    let op = format!("{path}.on");
    let on: HashMap<String, HashMap<String, String>> = object(field(v, path, "on")?, &op)?
        .iter()
        .map(|(sort, t)| Ok((sort.clone(), string_map(t, &format!("{op}.{sort}"))?)))
        .collect::<Result<_>>()?;
    PresheafMap::from_labels(dom, cod, &on).map_err(|e| at(&op, e))
}

pub fn map_to_json(m: &PresheafMap) -> Value {
    let dom = m.dom();
    let shape = dom.shape();
    let on: Map<String, Value> = (0..shape.sort_count())
        .map(|s| {
            let t: Map<String, Value> = (0..dom.len(s))
                .map(|c| (dom.label(s, c).to_string(), json!(m.cod().label(s, m.apply(s, c)))))
                .collect();
            (shape.sort_name(s), Value::Object(t))
        })
        .collect();
    json!({
        "kind": "map",
        "domain": object_to_json(dom),
        "codomain": object_to_json(m.cod()),
        "on": on,
    })
}

pub fn maps_from_json(v: &Value, path: &str) -> Result<Vec<PresheafMap>> {
    let p = format!("{path}.maps");
    array(field(v, path, "maps")?, &p)?
        .iter()
        .enumerate()
        .map(|(i, m)| map_from_json(m, &format!("{p}[{i}]")))
        .collect()
}

pub fn maps_to_json(ms: &[PresheafMap]) -> Value {
    json!({"kind": "maps", "maps": ms.iter().map(map_to_json).collect::<Vec<_>>()})
}

pub fn monoid_from_json(v: &Value, path: &str) -> Result<Monoid> {
    let els = strings(field(v, path, "elements")?, &format!("{path}.elements"))?;
    let unit = string(field(v, path, "unit")?, &format!("{path}.unit"))?;
    let tp = format!("{path}.table");
    let mut table = HashMap::new();
    for (a, row) in object(field(v, path, "table")?, &tp)? {
        for (b, c) in string_map(row, &format!("{tp}.{a}"))? {
            table.insert((a.clone(), b), c);
        }
    }
    Monoid::new(&els, &unit, &table).map_err(|e| at(path, e))
}

/// Tables are nested `{a: {b: a·b}}`.
pub fn monoid_to_json(m: &Monoid) -> Value {
    let els = m.elements();
    let table: Map<String, Value> = (0..els.len())
        .map(|a| {
            let row: Map<String, Value> = (0..els.len()).map(|b| (els[b].clone(), json!(els[m.mul(a, b)]))).collect();
            (els[a].clone(), Value::Object(row))
        })
        .collect();
    json!({"kind": "monoid", "elements": els, "unit": els[m.unit()], "table": table})
}

pub fn category_from_json(v: &Value, path: &str) -> Result<Category> {
    let objs = strings(field(v, path, "objects")?, &format!("{path}.objects"))?;
    let mors = triples(field(v, path, "morphisms")?, &format!("{path}.morphisms"))?;
    let ids = string_map(field(v, path, "identities")?, &format!("{path}.identities"))?;
    let cp = format!("{path}.compose");
    let mut compose = HashMap::new();
    if let Some(c) = v.get("compose") {
        for (g, row) in object(c, &cp)? {
            for (f, h) in string_map(row, &format!("{cp}.{g}"))? {
                compose.insert((g.clone(), f), h);
            }
        }
    }
    Category::new(&objs, &mors, &ids, &compose).map_err(|e| at(path, e))
}

/// Composites are nested `{g: {f: g∘f}}`; identity composites are omitted.
pub fn category_to_json(c: &Category) -> Value {
    let n = c.morphisms().len();
    let mors: Vec<Value> = (0..n)
        .filter(|&m| !c.is_identity(m))
        .map(|m| json!([c.morphisms()[m], c.objects()[c.source(m)], c.objects()[c.target(m)]]))
        .collect();
    let ids: Map<String, Value> = (0..c.objects().len())
        .map(|o| (c.objects()[o].clone(), json!(c.morphisms()[c.identity(o)])))
        .collect();
    let mut compose = Map::new();
    for g in (0..n).filter(|&g| !c.is_identity(g)) {
        let row: Map<String, Value> = (0..n)
            .filter(|&f| !c.is_identity(f))
            .filter_map(|f| c.compose(g, f).map(|h| (c.morphisms()[f].clone(), json!(c.morphisms()[h]))))
            .collect();
        if !row.is_empty() {
            compose.insert(c.morphisms()[g].clone(), Value::Object(row));
        }
    }
    json!({"kind": "category", "objects": c.objects(), "morphisms": mors, "identities": ids, "compose": compose})
}

pub fn square_from_json(v: &Value, path: &str) -> Result<LiftingProblem> {
    let get = |k: &str| map_from_json(field(v, path, k)?, &format!("{path}.{k}"));
    LiftingProblem::new(get("i")?, get("p")?, get("u")?, get("v")?).map_err(|e| at(path, e))
}

pub fn square_to_json(p: &LiftingProblem) -> Value {
    json!({
        "kind": "square",
        "i": map_to_json(&p.i),
        "p": map_to_json(&p.p),
        "u": map_to_json(&p.u),
        "v": map_to_json(&p.v),
    })
}

fn provenance_to_json(p: &Provenance) -> Value {
    match p {
        Provenance::Seed(k) => json!({"seed": k}),
        Provenance::EndpointCorner { generator, endpoint } => {
            json!({"endpoint_corner": {"generator": generator, "endpoint": endpoint}})
        }
        Provenance::Corner { parent } => json!({"corner": {"parent": parent}}),
    }
}

fn provenance_from_json(v: &Value, path: &str) -> Result<Provenance> {
    if let Some(k) = v.get("seed") {
        return k
            .as_u64()
            .map(|k| Provenance::Seed(k as usize))
            .ok_or_else(|| Error::document(format!("{path}.seed"), "expected an index"));
    }
    if let Some(c) = v.get("endpoint_corner") {
        let p = format!("{path}.endpoint_corner");
        return Ok(Provenance::EndpointCorner {
            generator: usize_field(c, &p, "generator")?,
            endpoint: usize_field(c, &p, "endpoint")?,
        });
    }
    if let Some(c) = v.get("corner") {
        return Ok(Provenance::Corner {
            parent: usize_field(c, &format!("{path}.corner"), "parent")?,
        });
    }
    Err(Error::document(path, "unknown provenance"))
}

pub fn family_from_json(v: &Value, path: &str) -> Result<AnodyneFamily> {
    let instance = string(field(v, path, "instance")?, &format!("{path}.instance"))?;
    let depth = usize_field(v, path, "depth")?;
    let list = |k: &str| -> Result<Vec<PresheafMap>> {
        let p = format!("{path}.{k}");
        array(field(v, path, k)?, &p)?
            .iter()
            .enumerate()
            .map(|(i, m)| map_from_json(m, &format!("{p}[{i}]")))
            .collect()
    };
    let ep = format!("{path}.entries");
    let entries = array(field(v, path, "entries")?, &ep)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = format!("{ep}[{i}]");
            Ok(AnodyneEntry {
                map: map_from_json(field(e, &p, "map")?, &format!("{p}.map"))?,
                depth: usize_field(e, &p, "depth")?,
                provenance: provenance_from_json(field(e, &p, "provenance")?, &format!("{p}.provenance"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rp = format!("{path}.raw_counts");
    let raw_counts = array(field(v, path, "raw_counts")?, &rp)?
        .iter()
        .map(|n| n.as_u64().map(|n| n as usize).ok_or_else(|| Error::document(&rp, "expected integers")))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnodyneFamily {
        instance,
        depth,
        seeds: list("seeds")?,
        generators: list("generators")?,
        entries,
        raw_counts,
    })
}

pub fn family_to_json(f: &AnodyneFamily) -> Value {
    json!({
        "kind": "family",
        "instance": f.instance,
        "depth": f.depth,
        "seeds": f.seeds.iter().map(map_to_json).collect::<Vec<_>>(),
        "generators": f.generators.iter().map(map_to_json).collect::<Vec<_>>(),
        "entries": f.entries.iter().map(|e| json!({
            "map": map_to_json(&e.map),
            "depth": e.depth,
            "provenance": provenance_to_json(&e.provenance),
        })).collect::<Vec<_>>(),
        "raw_counts": f.raw_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph_and_set() {
        let Document::Object(g) = parse_document(r#"{"kind":"graph","vertices":["a"],"edges":[]}"#).unwrap() else {
            panic!("expected an object")
        };
        assert_eq!((g.len(VERTEX), g.len(EDGE)), (1, 0));
        let Document::Object(s) = parse_document(r#"{"kind":"set","elements":["x","y"]}"#).unwrap() else {
            panic!("expected an object")
        };
        assert_eq!(s.len(0), 2);
    }

    #[test]
    fn dangling_endpoint_is_located() {
        let err = parse_document(r#"{"kind":"graph","vertices":["a"],"edges":[["e","a","b"]]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("dangling endpoint `b`"), "{msg}");
        assert!(msg.starts_with("$"), "{msg}");
    }

    #[test]
    fn non_associative_monoid_names_the_triple() {
        let doc = r#"{"kind":"monoid","elements":["e","a","b"],"unit":"e",
            "table":{"a":{"a":"b","b":"a"},"b":{"a":"a","b":"a"}}}"#;
        let msg = parse_document(doc).unwrap_err().to_string();
        assert!(msg.contains("not associative"), "{msg}");
    }

    #[test]
    fn map_with_missing_cell_names_it() {
        let doc = r#"{"kind":"map","domain":{"kind":"set","elements":["x","y"]},
            "codomain":{"kind":"set","elements":["p"]},"on":{"element":{"x":"p"}}}"#;
        let msg = parse_document(doc).unwrap_err().to_string();
        assert!(msg.contains("`y`"), "{msg}");
        assert!(msg.contains("$.on"), "{msg}");
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let msg = parse_document("{\n \"kind\": }").unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn round_trips_are_canonical() {
        let objects = [
            object_to_json(&Presheaf::graph(&["a", "b"], &[("f", "a", "b"), ("g", "b", "b")]).unwrap()),
            object_to_json(&Presheaf::reflexive_graph(&["a"], &[("l", "a", "a")]).unwrap()),
            object_to_json(&crate::simplicial::standard_simplex(1, 2).unwrap()),
            monoid_to_json(&Monoid::z2()),
            category_to_json(&Category::chain(2)),
            category_to_json(&Category::groupoid_interval()),
        ];
        for v in objects {
            let text = canonical(&v);
            let back = parse_document(&text).unwrap();
            assert_eq!(canonical(&back.to_json()), text);
        }
    }
}
