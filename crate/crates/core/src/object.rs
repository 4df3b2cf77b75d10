//! Finite presheaf objects: labeled cells per sort plus operator tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::shape::{Shape, EDGE, IDENTITY, SOURCE, TARGET, VERTEX};

/// A finite presheaf over one of the supported base categories.
///
/// Cells of every sort are kept in sorted label order, and cell indices follow
/// that order; every enumeration in the crate relies on it.
#[derive(Clone)]
pub struct Presheaf {
    shape: Shape,
    cells: Vec<Vec<String>>,
    ops: Vec<Vec<usize>>,
    index: Vec<HashMap<String, usize>>,
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.cells == other.cells && self.ops == other.ops
    }
}

impl Eq for Presheaf {}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Presheaf");
        s.field("shape", &self.shape);
        for sort in 0..self.shape.sort_count() {
            s.field(&self.shape.sort_name(sort), &self.cells[sort]);
        }
        s.finish()
    }
}

/// Old-to-new index permutation per sort, returned by [`Presheaf::assemble`].
pub type Relabeling = Vec<Vec<usize>>;

impl Presheaf {
    /// Builds an object from cells in arbitrary order.
    ///
    /// `ops[o][x]` is the image of cell `x` (in input order) under operator
    /// `o`. Cells are re-sorted by label; the returned permutation maps input
    /// indices to final indices.
    pub fn assemble(
        shape: Shape,
        cells: Vec<Vec<String>>,
        ops: Vec<Vec<usize>>,
    ) -> Result<(Presheaf, Relabeling)> {
        let operators = shape.operators();
        if cells.len() != shape.sort_count() {
            return Err(Error::invalid(format!(
                "{shape} expects {} sorts, got {}",
                shape.sort_count(),
                cells.len()
            )));
        }
        if ops.len() != operators.len() {
            return Err(Error::invalid(format!(
                "{shape} expects {} operator tables, got {}",
                operators.len(),
                ops.len()
            )));
        }

        let mut perm = Vec::with_capacity(cells.len());
        let mut sorted_cells = Vec::with_capacity(cells.len());
        let mut index = Vec::with_capacity(cells.len());
        for (sort, labels) in cells.into_iter().enumerate() {
            let mut order: Vec<usize> = (0..labels.len()).collect();
            order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
            let mut p = vec![0; labels.len()];
            for (new, &old) in order.iter().enumerate() {
                p[old] = new;
            }
            let mut sorted: Vec<String> = Vec::with_capacity(labels.len());
            let mut idx = HashMap::with_capacity(labels.len());
            for &old in &order {
                let label = labels[old].clone();
                if idx.insert(label.clone(), sorted.len()).is_some() {
                    return Err(Error::DuplicateLabel {
                        sort: shape.sort_name(sort),
                        label,
                    });
                }
                sorted.push(label);
            }
            perm.push(p);
            sorted_cells.push(sorted);
            index.push(idx);
        }

        let mut new_ops = Vec::with_capacity(ops.len());
        for (o, table) in ops.into_iter().enumerate() {
            let op = &operators[o];
            let n_from = sorted_cells[op.from].len();
            let n_to = sorted_cells[op.to].len();
            if table.len() != n_from {
                return Err(Error::invalid(format!(
                    "operator `{}` table has {} entries for {} cells",
                    op.name,
                    table.len(),
                    n_from
                )));
            }
            let mut t = vec![0; n_from];
            for (old, &img) in table.iter().enumerate() {
                if img >= n_to {
                    return Err(Error::invalid(format!(
                        "operator `{}` sends a cell out of range",
                        op.name
                    )));
                }
                t[perm[op.from][old]] = perm[op.to][img];
            }
            new_ops.push(t);
        }

        let object = Presheaf {
            shape,
            cells: sorted_cells,
            ops: new_ops,
            index,
        };
        object.check_relations()?;
        Ok((object, perm))
    }

    /// A finite set.
    pub fn set<S: AsRef<str>>(elements: &[S]) -> Result<Presheaf> {
        let cells = vec![elements.iter().map(|e| e.as_ref().to_string()).collect()];
        Ok(Presheaf::assemble(Shape::Set, cells, Vec::new())?.0)
    }

    /// A directed multigraph from vertex labels and `(edge, source, target)` triples.
    pub fn graph<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Presheaf> {
        let (vs, es, src, tgt) = graph_parts(vertices, edges)?;
        Ok(Presheaf::assemble(Shape::Graph, vec![vs, es], vec![src, tgt])?.0)
    }

    /// A reflexive graph; each vertex `v` receives an identity loop labeled `1_v`.
    pub fn reflexive_graph<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Presheaf> {
        let identities: Vec<String> = vertices.iter().map(|v| format!("1_{}", v.as_ref())).collect();
        Presheaf::reflexive_graph_with_identities(vertices, edges, &identities)
    }

    /// A reflexive graph with explicitly named identity loops (`identities[i]`
    /// belongs to `vertices[i]`); `edges` lists only the non-identity edges.
    pub fn reflexive_graph_with_identities<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S, S)],
        identities: &[T],
    ) -> Result<Presheaf> {
        let (vs, mut es, mut src, mut tgt) = graph_parts(vertices, edges)?;
        if identities.len() != vs.len() {
            return Err(Error::invalid("one identity label per vertex required"));
        }
        let mut refl = Vec::with_capacity(vs.len());
        for (v, id) in identities.iter().enumerate() {
            refl.push(es.len());
            es.push(id.as_ref().to_string());
            src.push(v);
            tgt.push(v);
        }
        check_cross_sort_labels(&vs, &es)?;
        Ok(Presheaf::assemble(Shape::ReflexiveGraph, vec![vs, es], vec![src, tgt, refl])?.0)
    }

    /// The object with no cells.
    pub fn empty(shape: Shape) -> Presheaf {
        let cells = vec![Vec::new(); shape.sort_count()];
        let ops = vec![Vec::new(); shape.operators().len()];
        Presheaf::assemble(shape, cells, ops).expect("empty object is valid").0
    }

    /// The terminal object: one cell per sort.
    pub fn terminal(shape: Shape) -> Presheaf {
        let cells: Vec<Vec<String>> = match shape {
            Shape::Set => vec![vec!["*".into()]],
            Shape::Graph => vec![vec!["*".into()], vec!["loop".into()]],
            Shape::ReflexiveGraph => vec![vec!["*".into()], vec!["1_*".into()]],
            Shape::Simplicial { cap } => (0..=cap).map(|n| vec!["0".repeat(n + 1)]).collect(),
        };
        let ops = vec![vec![0]; shape.operators().len()];
        Presheaf::assemble(shape, cells, ops).expect("terminal object is valid").0
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn sort_count(&self) -> usize {
        self.cells.len()
    }

    pub fn len(&self, sort: usize) -> usize {
        self.cells[sort].len()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_cells() == 0
    }

    pub fn labels(&self, sort: usize) -> &[String] {
        &self.cells[sort]
    }

    pub fn label(&self, sort: usize, cell: usize) -> &str {
        &self.cells[sort][cell]
    }

    pub fn find(&self, sort: usize, label: &str) -> Option<usize> {
        self.index[sort].get(label).copied()
    }

    pub fn require(&self, sort: usize, label: &str) -> Result<usize> {
        self.find(sort, label).ok_or_else(|| Error::UnknownCell {
            sort: self.shape.sort_name(sort),
            label: label.to_string(),
        })
    }

    /// Image of `cell` under operator `op`.
    pub fn op(&self, op: usize, cell: usize) -> usize {
        self.ops[op][cell]
    }

    pub fn op_table(&self, op: usize) -> &[usize] {
        &self.ops[op]
    }

    /// Source vertex of an edge (graph-like shapes).
    pub fn source(&self, edge: usize) -> usize {
        self.ops[SOURCE][edge]
    }

    /// Target vertex of an edge (graph-like shapes).
    pub fn target(&self, edge: usize) -> usize {
        self.ops[TARGET][edge]
    }

    /// Designated identity loop at a vertex (reflexive graphs only).
    pub fn identity_loop(&self, vertex: usize) -> usize {
        self.ops[IDENTITY][vertex]
    }

    /// Whether `edge` is a designated identity loop.
    pub fn is_identity_edge(&self, edge: usize) -> bool {
        self.shape == Shape::ReflexiveGraph && self.identity_loop(self.source(edge)) == edge
    }

    /// Indices of the edges that are not designated identities.
    pub fn proper_edges(&self) -> Vec<usize> {
        (0..self.len(EDGE)).filter(|&e| !self.is_identity_edge(e)).collect()
    }

    /// Vertex count (graph-like shapes).
    pub fn vertex_count(&self) -> usize {
        self.len(VERTEX)
    }

    /// Number of edges that are not designated identities.
    pub fn proper_edge_count(&self) -> usize {
        self.proper_edges().len()
    }

    /// Copy of the object with every label rewritten; fails on collisions.
    pub fn relabel(&self, mut rename: impl FnMut(usize, usize, &str) -> String) -> Result<(Presheaf, Relabeling)> {
        let cells = (0..self.sort_count())
            .map(|s| (0..self.len(s)).map(|c| rename(s, c, self.label(s, c))).collect())
            .collect();
        Presheaf::assemble(self.shape, cells, self.ops.clone())
    }

    fn check_relations(&self) -> Result<()> {
        match self.shape {
            Shape::Set | Shape::Graph => Ok(()),
            Shape::ReflexiveGraph => {
                for v in 0..self.len(VERTEX) {
                    let id = self.identity_loop(v);
                    if self.source(id) != v || self.target(id) != v {
                        return Err(Error::invalid(format!(
                            "identity `{}` is not a loop at `{}`",
                            self.label(EDGE, id),
                            self.label(VERTEX, v)
                        )));
                    }
                }
                Ok(())
            }
            Shape::Simplicial { cap } => self.check_simplicial_identities(cap),
        }
    }

    fn check_simplicial_identities(&self, cap: usize) -> Result<()> {
        let sh = self.shape;
        let d = |n: usize, i: usize, x: usize| self.op(sh.face(n, i), x);
        let s = |n: usize, i: usize, x: usize| self.op(sh.degeneracy(n, i), x);
        let fail = |rel: String, n: usize, x: usize| {
            Err(Error::invalid(format!(
                "simplicial identity {rel} fails on {n}-cell `{}`",
                self.label(n, x)
            )))
        };
        for n in 2..=cap {
            for x in 0..self.len(n) {
                for j in 1..=n {
                    for i in 0..j {
                        if d(n - 1, i, d(n, j, x)) != d(n - 1, j - 1, d(n, i, x)) {
                            return fail(format!("d{i}d{j}=d{}d{i}", j - 1), n, x);
                        }
                    }
                }
            }
        }
        for n in 0..cap {
            for x in 0..self.len(n) {
                for j in 0..=n {
                    let y = s(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = d(n + 1, i, y);
                        let ok = if i == j || i == j + 1 {
                            lhs == x
                        } else if i < j {
                            lhs == s(n - 1, j - 1, d(n, i, x))
                        } else {
                            lhs == s(n - 1, j, d(n, i - 1, x))
                        };
                        if !ok {
                            return fail(format!("d{i}s{j}"), n, x);
                        }
                    }
                    if n + 1 < cap {
                        for i in 0..=j {
                            if s(n + 1, i, s(n, j, x)) != s(n + 1, j + 1, s(n, i, x)) {
                                return fail(format!("s{i}s{j}=s{}s{i}", j + 1), n, x);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Vertex labels, edge labels, sources and targets.
type GraphParts = (Vec<String>, Vec<String>, Vec<usize>, Vec<usize>);

fn graph_parts<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<GraphParts> {
    let vs: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    let mut pos = HashMap::new();
    for (i, v) in vs.iter().enumerate() {
        if pos.insert(v.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel {
                sort: "vertex".into(),
                label: v.clone(),
            });
        }
    }
    let mut es = Vec::with_capacity(edges.len());
    let mut src = Vec::with_capacity(edges.len());
    let mut tgt = Vec::with_capacity(edges.len());
    for (e, s, t) in edges {
        let endpoint = |v: &S| {
            pos.get(v.as_ref()).copied().ok_or_else(|| Error::DanglingEndpoint {
                edge: e.as_ref().to_string(),
                vertex: v.as_ref().to_string(),
            })
        };
        src.push(endpoint(s)?);
        tgt.push(endpoint(t)?);
        es.push(e.as_ref().to_string());
    }
    check_cross_sort_labels(&vs, &es)?;
    Ok((vs, es, src, tgt))
}

fn check_cross_sort_labels(vertices: &[String], edges: &[String]) -> Result<()> {
    for e in edges {
        if vertices.contains(e) {
            return Err(Error::DuplicateLabel {
                sort: "vertex/edge".into(),
                label: e.clone(),
            });
        }
    }
    Ok(())
}

/// Shared handle; maps and constructions pass objects around by `Arc`.
pub type Obj = Arc<Presheaf>;

impl Presheaf {
    pub fn into_obj(self) -> Obj {
        Arc::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_graph() {
        let g = Presheaf::graph::<&str>(&["a"], &[]).unwrap();
        assert_eq!(g.len(VERTEX), 1);
        assert_eq!(g.len(EDGE), 0);
    }

    #[test]
    fn two_element_set_is_sorted() {
        let x = Presheaf::set(&["y", "x"]).unwrap();
        assert_eq!(x.labels(0), ["x", "y"]);
    }

    #[test]
    fn dangling_endpoint_is_rejected() {
        let err = Presheaf::graph(&["a"], &[("e", "a", "b")]).unwrap_err();
        assert!(matches!(err, Error::DanglingEndpoint { ref vertex, .. } if vertex == "b"));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        assert!(matches!(
            Presheaf::set(&["x", "x"]),
            Err(Error::DuplicateLabel { .. })
        ));
        assert!(matches!(
            Presheaf::graph(&["a"], &[("a", "a", "a")]),
            Err(Error::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn parallel_edges_and_loops_are_allowed() {
        let g = Presheaf::graph(&["a", "b"], &[("f", "a", "b"), ("g", "a", "b"), ("l", "a", "a")]).unwrap();
        assert_eq!(g.len(EDGE), 3);
        let l = g.find(EDGE, "l").unwrap();
        assert_eq!(g.source(l), g.target(l));
    }

    #[test]
    fn operator_tables_follow_sorted_order() {
        let g = Presheaf::graph(&["b", "a"], &[("e", "b", "a")]).unwrap();
        let e = g.find(EDGE, "e").unwrap();
        assert_eq!(g.label(VERTEX, g.source(e)), "b");
        assert_eq!(g.label(VERTEX, g.target(e)), "a");
    }

    #[test]
    fn reflexive_graph_has_identities() {
        let g = Presheaf::reflexive_graph(&["a", "b"], &[("f", "a", "b")]).unwrap();
        assert_eq!(g.len(EDGE), 3);
        assert_eq!(g.proper_edges().len(), 1);
        let a = g.find(VERTEX, "a").unwrap();
        assert_eq!(g.label(EDGE, g.identity_loop(a)), "1_a");
    }

    #[test]
    fn terminal_objects_validate() {
        for shape in [Shape::Set, Shape::Graph, Shape::ReflexiveGraph, Shape::simplicial(3)] {
            let t = Presheaf::terminal(shape);
            assert!((0..shape.sort_count()).all(|s| t.len(s) == 1));
        }
    }

    #[test]
    fn broken_simplicial_identity_is_rejected() {
        // two 1-cells on one vertex, but the degeneracy claims a face elsewhere
        let shape = Shape::simplicial(1);
        let cells = vec![vec!["a".to_string(), "b".to_string()], vec!["aa".to_string(), "bb".to_string()]];
        // d0@1, d1@1, s0@0
        let ops = vec![vec![0, 1], vec![0, 1], vec![1, 0]];
        assert!(Presheaf::assemble(shape, cells, ops).is_err());
    }
}
