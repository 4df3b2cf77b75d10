//! Finite monoids and finite categories given by explicit tables; these are
//! the algebras of the free-monoid and free-category monads.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::object::{Obj, Presheaf};
use crate::shape::Shape;

/// A finite monoid with elements in sorted label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    elements: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl Monoid {
    /// Validates totality, the unit laws and associativity; a failure names
    /// the offending elements.
    pub fn new(elements: &[String], unit: &str, table: &HashMap<(String, String), String>) -> Result<Monoid> {
        let mut elements = elements.to_vec();
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel {
                sort: "element".into(),
                label: w[0].clone(),
            });
        }
        let index: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let find = |l: &str| {
            index.get(l).copied().ok_or_else(|| Error::UnknownCell {
                sort: "element".into(),
                label: l.to_string(),
            })
        };
        let unit = find(unit)?;
        let n = elements.len();
        let mut t = vec![vec![usize::MAX; n]; n];
        for ((a, b), c) in table {
            t[find(a)?][find(b)?] = find(c)?;
        }
        for a in 0..n {
            for b in 0..n {
                if t[a][b] == usize::MAX {
                    if a == unit {
                        t[a][b] = b;
                    } else if b == unit {
                        t[a][b] = a;
                    } else {
                        return Err(Error::invalid(format!(
                            "product {}·{} is missing",
                            elements[a], elements[b]
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if t[unit][a] != a || t[a][unit] != a {
                return Err(Error::invalid(format!("unit law fails at `{}`", elements[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return Err(Error::invalid(format!(
                            "not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})",
                            a = elements[a],
                            b = elements[b],
                            c = elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Monoid { elements, unit, table: t })
    }

    /// Convenience constructor from string slices.
    pub fn from_rows(elements: &[&str], unit: &str, products: &[(&str, &str, &str)]) -> Result<Monoid> {
        let els: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let table = products
            .iter()
            .map(|(a, b, c)| ((a.to_string(), b.to_string()), c.to_string()))
            .collect();
        Monoid::new(&els, unit, &table)
    }

    pub fn trivial() -> Monoid {
        Monoid::from_rows(&["e"], "e", &[]).expect("valid monoid")
    }

    /// `ℤ/2` on elements `0, 1`.
    pub fn z2() -> Monoid {
        Monoid::from_rows(&["0", "1"], "0", &[("1", "1", "0")]).expect("valid monoid")
    }

    /// `{e, x}` with `x·x = x`.
    pub fn idempotent() -> Monoid {
        Monoid::from_rows(&["e", "x"], "e", &[("x", "x", "x")]).expect("valid monoid")
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The underlying set.
    pub fn carrier(&self) -> Obj {
        Arc::new(Presheaf::set(&self.elements).expect("distinct elements"))
    }

    /// The one-object category with this monoid as endomorphisms.
    pub fn as_category(&self) -> Category {
        let morphisms: Vec<(String, String, String)> =
            self.elements.iter().map(|m| (m.clone(), "*".into(), "*".into())).collect();
        let identities = HashMap::from([("*".to_string(), self.elements[self.unit].clone())]);
        let mut compose = HashMap::new();
        for a in 0..self.elements.len() {
            for b in 0..self.elements.len() {
                // g∘f with f = b applied first: the monoid product b·a read left to right
                compose.insert(
                    (self.elements[a].clone(), self.elements[b].clone()),
                    self.elements[self.table[b][a]].clone(),
                );
            }
        }
        Category::new(&["*".to_string()], &morphisms, &identities, &compose).expect("monoids are categories")
    }
}

/// A finite category with objects and morphisms in sorted label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category {
    objects: Vec<String>,
    morphisms: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    /// `compose[g][f] = g∘f` when `target(f) = source(g)`.
    compose: Vec<Vec<Option<usize>>>,
}

impl Category {
    /// Validates the table. Identity composites may be omitted; every other
    /// composable pair must be listed and no other pair may be.
    pub fn new(
        objects: &[String],
        morphisms: &[(String, String, String)],
        identities: &HashMap<String, String>,
        compose: &HashMap<(String, String), String>,
    ) -> Result<Category> {
        let mut objects = objects.to_vec();
        objects.sort();
        if let Some(w) = objects.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel {
                sort: "object".into(),
                label: w[0].clone(),
            });
        }
        let obj_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let find_obj = |l: &str| {
            obj_index.get(l).copied().ok_or_else(|| Error::UnknownCell {
                sort: "object".into(),
                label: l.to_string(),
            })
        };
        let mut all: Vec<(String, usize, usize)> = Vec::new();
        for (m, s, t) in morphisms {
            all.push((m.clone(), find_obj(s)?, find_obj(t)?));
        }
        for (o, m) in identities {
            let oi = find_obj(o)?;
            match all.iter().find(|(n, _, _)| n == m) {
                Some(&(_, s, t)) if s != oi || t != oi => {
                    return Err(Error::invalid(format!("identity `{m}` is not an endomorphism of `{o}`")))
                }
                Some(_) => {}
                None => all.push((m.clone(), oi, oi)),
            }
        }
        all.sort();
        if let Some(w) = all.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateLabel {
                sort: "morphism".into(),
                label: w[0].0.clone(),
            });
        }
        for (m, _, _) in &all {
            if obj_index.contains_key(m.as_str()) {
                return Err(Error::DuplicateLabel {
                    sort: "object/morphism".into(),
                    label: m.clone(),
                });
            }
        }
        let morphisms: Vec<String> = all.iter().map(|(m, _, _)| m.clone()).collect();
        let source: Vec<usize> = all.iter().map(|&(_, s, _)| s).collect();
        let target: Vec<usize> = all.iter().map(|&(_, _, t)| t).collect();
        let mor_index: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.as_str(), i)).collect();
        let find_mor = |l: &str| {
            mor_index.get(l).copied().ok_or_else(|| Error::UnknownCell {
                sort: "morphism".into(),
                label: l.to_string(),
            })
        };
        let mut identity = vec![usize::MAX; objects.len()];
        for (o, m) in identities {
            identity[find_obj(o)?] = find_mor(m)?;
        }
        if let Some(o) = identity.iter().position(|&m| m == usize::MAX) {
            return Err(Error::invalid(format!("object `{}` has no identity", objects[o])));
        }
        let n = morphisms.len();
        let mut table = vec![vec![None; n]; n];
        for ((g, f), h) in compose {
            let (gi, fi, hi) = (find_mor(g)?, find_mor(f)?, find_mor(h)?);
            if target[fi] != source[gi] {
                return Err(Error::invalid(format!("composite {g}∘{f} is listed but not composable")));
            }
            if source[hi] != source[fi] || target[hi] != target[gi] {
                return Err(Error::invalid(format!("composite {g}∘{f} = {h} has the wrong endpoints")));
            }
            table[gi][fi] = Some(hi);
        }
        for f in 0..n {
            let (s, t) = (source[f], target[f]);
            for (id, other, expected) in [(identity[t], f, f), (f, identity[s], f)] {
                match table[id][other] {
                    None => table[id][other] = Some(expected),
                    Some(h) if h != expected => {
                        return Err(Error::invalid(format!(
                            "identity law fails: {}∘{} = {}",
                            morphisms[id], morphisms[other], morphisms[h]
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        for g in 0..n {
            for f in 0..n {
                if target[f] == source[g] && table[g][f].is_none() {
                    return Err(Error::invalid(format!(
                        "composite {}∘{} is missing",
                        morphisms[g], morphisms[f]
                    )));
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                for f in 0..n {
                    if target[f] != source[g] || target[g] != source[h] {
                        continue;
                    }
                    let left = table[table[h][g].expect("checked")][f];
                    let right = table[h][table[g][f].expect("checked")];
                    if left != right {
                        return Err(Error::invalid(format!(
                            "not associative: ({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})",
                            h = morphisms[h],
                            g = morphisms[g],
                            f = morphisms[f]
                        )));
                    }
                }
            }
        }
        Ok(Category {
            objects,
            morphisms,
            source,
            target,
            identity,
            compose: table,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_rows(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[(&str, &str)],
        compose: &[(&str, &str, &str)],
    ) -> Result<Category> {
        let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let mors: Vec<(String, String, String)> = morphisms
            .iter()
            .map(|(m, s, t)| (m.to_string(), s.to_string(), t.to_string()))
            .collect();
        let ids = identities.iter().map(|(o, m)| (o.to_string(), m.to_string())).collect();
        let comp = compose
            .iter()
            .map(|(g, f, h)| ((g.to_string(), f.to_string()), h.to_string()))
            .collect();
        Category::new(&objs, &mors, &ids, &comp)
    }

    /// One object, one morphism.
    pub fn terminal() -> Category {
        Category::from_rows(&["*"], &[], &[("*", "1_*")], &[]).expect("valid category")
    }

    /// The poset `0 < 1 < … < n`; the morphism `i → j` is labeled `i-j`.
    pub fn chain(n: usize) -> Category {
        let objs: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut mors = Vec::new();
        let mut comp = HashMap::new();
        for i in 0..=n {
            for j in i + 1..=n {
                mors.push((format!("{i}-{j}"), i.to_string(), j.to_string()));
                for k in j + 1..=n {
                    comp.insert((format!("{j}-{k}"), format!("{i}-{j}")), format!("{i}-{k}"));
                }
            }
        }
        let ids = (0..=n).map(|i| (i.to_string(), format!("1_{i}"))).collect();
        Category::new(&objs, &mors, &ids, &comp).expect("valid category")
    }

    /// Two objects `0, 1` with inverse arrows `u: 0 → 1` and `d: 1 → 0`.
    pub fn groupoid_interval() -> Category {
        Category::from_rows(
            &["0", "1"],
            &[("d", "1", "0"), ("u", "0", "1")],
            &[("0", "1_0"), ("1", "1_1")],
            &[("d", "u", "1_0"), ("u", "d", "1_1")],
        )
        .expect("valid category")
    }

    /// Two objects with two parallel arrows `f, g: 0 → 1`.
    pub fn parallel_arrows() -> Category {
        Category::from_rows(
            &["0", "1"],
            &[("f", "0", "1"), ("g", "0", "1")],
            &[("0", "1_0"), ("1", "1_1")],
            &[],
        )
        .expect("valid category")
    }

    /// `n` objects and only identities.
    pub fn discrete(n: usize) -> Category {
        let objs: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let ids = (0..n).map(|i| (i.to_string(), format!("1_{i}"))).collect();
        Category::new(&objs, &[], &ids, &HashMap::new()).expect("valid category")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[String] {
        &self.morphisms
    }

    pub fn source(&self, m: usize) -> usize {
        self.source[m]
    }

    pub fn target(&self, m: usize) -> usize {
        self.target[m]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.source[m]] == m
    }

    /// `g∘f`, defined when `target(f) = source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn find_object(&self, label: &str) -> Option<usize> {
        self.objects.binary_search_by(|o| o.as_str().cmp(label)).ok()
    }

    pub fn find_morphism(&self, label: &str) -> Option<usize> {
        self.morphisms.binary_search_by(|m| m.as_str().cmp(label)).ok()
    }

    /// Whether every hom-set `C(a, b)` is inhabited exactly when `C(b, a)` is.
    pub fn has_symmetric_homs(&self) -> bool {
        let n = self.objects.len();
        let mut inhabited = vec![vec![false; n]; n];
        for m in 0..self.morphisms.len() {
            inhabited[self.source[m]][self.target[m]] = true;
        }
        (0..n).all(|a| (0..n).all(|b| inhabited[a][b] == inhabited[b][a]))
    }

    /// Underlying graph: vertices are objects, edges are all morphisms. In the
    /// reflexive shape the identity morphisms are the designated loops.
    pub fn carrier(&self, shape: Shape) -> Result<Obj> {
        let edges: Vec<(&str, &str, &str)> = (0..self.morphisms.len())
            .filter(|&m| shape != Shape::ReflexiveGraph || !self.is_identity(m))
            .map(|m| {
                (
                    self.morphisms[m].as_str(),
                    self.objects[self.source[m]].as_str(),
                    self.objects[self.target[m]].as_str(),
                )
            })
            .collect();
        let objs: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        let g = match shape {
            Shape::Graph => Presheaf::graph(&objs, &edges)?,
            Shape::ReflexiveGraph => {
                let ids: Vec<&str> = self.identity.iter().map(|&m| self.morphisms[m].as_str()).collect();
                Presheaf::reflexive_graph_with_identities(&objs, &edges, &ids)?
            }
            other => {
                return Err(Error::ShapeMismatch {
                    left: "graph".into(),
                    right: other.to_string(),
                })
            }
        };
        Ok(Arc::new(g))
    }
}

/// An algebra for one of the free monads, given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Monoid(Monoid),
    Category(Category),
}

impl Algebra {
    /// The carrier in the given base category (sets for monoids, graphs or
    /// reflexive graphs for categories).
    pub fn carrier(&self, shape: Shape) -> Result<Obj> {
        match (self, shape) {
            (Algebra::Monoid(m), Shape::Set) => Ok(m.carrier()),
            (Algebra::Category(c), Shape::Graph | Shape::ReflexiveGraph) => c.carrier(shape),
            (Algebra::Monoid(_), other) | (Algebra::Category(_), other) => Err(Error::ShapeMismatch {
                left: self.kind().into(),
                right: other.to_string(),
            }),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Algebra::Monoid(_) => "monoid",
            Algebra::Category(_) => "category",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{EDGE, VERTEX};

    #[test]
    fn non_associative_table_names_the_triple() {
        // a·a = b, b·a = a, a·b = a, b·b = b with unit e
        let err = Monoid::from_rows(
            &["e", "a", "b"],
            "e",
            &[("a", "a", "b"), ("a", "b", "a"), ("b", "a", "a"), ("b", "b", "a")],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not associative"), "{msg}");
        assert!(msg.contains("(a·a)·b"), "{msg}");
    }

    #[test]
    fn corpus_monoids_validate() {
        assert_eq!(Monoid::trivial().elements().len(), 1);
        let z2 = Monoid::z2();
        assert_eq!(z2.mul(1, 1), 0);
        assert_eq!(Monoid::idempotent().mul(1, 1), 1);
    }

    #[test]
    fn chain_has_expected_morphisms() {
        let c = Category::chain(2);
        assert_eq!(c.morphisms(), ["0-1", "0-2", "1-2", "1_0", "1_1", "1_2"]);
        let f = c.find_morphism("0-1").unwrap();
        let g = c.find_morphism("1-2").unwrap();
        assert_eq!(c.compose(g, f), c.find_morphism("0-2"));
        assert!(!c.has_symmetric_homs());
    }

    #[test]
    fn groupoid_interval_is_symmetric() {
        let c = Category::groupoid_interval();
        assert!(c.has_symmetric_homs());
        let g = c.carrier(Shape::Graph).unwrap();
        assert_eq!((g.len(VERTEX), g.len(EDGE)), (2, 4));
        let r = c.carrier(Shape::ReflexiveGraph).unwrap();
        assert_eq!(r.proper_edge_count(), 2);
    }

    #[test]
    fn missing_composite_is_rejected() {
        let err = Category::from_rows(
            &["0", "1"],
            &[("d", "1", "0"), ("u", "0", "1")],
            &[("0", "1_0"), ("1", "1_1")],
            &[("d", "u", "1_0")],
        )
        .unwrap_err();
        assert!(err.to_string().contains("u∘d is missing"));
    }

    #[test]
    fn monoid_as_category_composes_like_the_monoid() {
        let z2 = Monoid::z2();
        let c = z2.as_category();
        let one = c.find_morphism("1").unwrap();
        assert_eq!(c.compose(one, one), c.find_morphism("0"));
        assert!(c.is_identity(c.find_morphism("0").unwrap()));
    }
}
