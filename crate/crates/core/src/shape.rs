//! Base categories: the finite index categories whose presheaves we handle.
//!
//! Every base category is described by a list of sorts (the objects of the
//! index category) and a list of structure operators (generating arrows,
//! acting contravariantly as functions between cell sets). Relations among
//! operators are checked when objects are assembled.

use std::fmt;

/// Sort index of vertices in graph-like shapes.
pub const VERTEX: usize = 0;
/// Sort index of edges in graph-like shapes.
pub const EDGE: usize = 1;
/// Operator index of the edge source map.
pub const SOURCE: usize = 0;
/// Operator index of the edge target map.
pub const TARGET: usize = 1;
/// Operator index of the designated identity loop in reflexive graphs.
pub const IDENTITY: usize = 2;

/// Largest simplicial truncation supported (cell labels are digit strings).
pub const MAX_SIMPLICIAL_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// Plain finite sets.
    Set,
    /// Directed multigraphs: parallel edges and loops allowed.
    Graph,
    /// Graphs with a designated identity loop at every vertex.
    ReflexiveGraph,
    /// Simplicial sets truncated above dimension `cap`.
    Simplicial { cap: usize },
}

/// A generating structure map `from -> to` between cell sorts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

impl Shape {
    pub fn simplicial(cap: usize) -> Shape {
        Shape::Simplicial { cap }
    }

    /// Short tag used in documents and reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Shape::Set => "set",
            Shape::Graph => "graph",
            Shape::ReflexiveGraph => "rgraph",
            Shape::Simplicial { .. } => "sset",
        }
    }

    pub fn is_graph_like(&self) -> bool {
        matches!(self, Shape::Graph | Shape::ReflexiveGraph)
    }

    pub fn sort_count(&self) -> usize {
        match self {
            Shape::Set => 1,
            Shape::Graph | Shape::ReflexiveGraph => 2,
            Shape::Simplicial { cap } => cap + 1,
        }
    }

    pub fn sort_name(&self, sort: usize) -> String {
        match self {
            Shape::Set => "element".to_string(),
            Shape::Graph | Shape::ReflexiveGraph => {
                if sort == VERTEX { "vertex" } else { "edge" }.to_string()
            }
            Shape::Simplicial { .. } => sort.to_string(),
        }
    }

    pub fn sort_index(&self, name: &str) -> Option<usize> {
        (0..self.sort_count()).find(|&s| self.sort_name(s) == name)
    }

    /// Generating operators in a fixed order; operator tables of objects are
    /// indexed by position in this list.
    pub fn operators(&self) -> Vec<Operator> {
        let op = |name: String, from, to| Operator { name, from, to };
        match self {
            Shape::Set => Vec::new(),
            Shape::Graph => vec![
                op("source".into(), EDGE, VERTEX),
                op("target".into(), EDGE, VERTEX),
            ],
            Shape::ReflexiveGraph => vec![
                op("source".into(), EDGE, VERTEX),
                op("target".into(), EDGE, VERTEX),
                op("identity".into(), VERTEX, EDGE),
            ],
            Shape::Simplicial { cap } => {
                let mut ops = Vec::new();
                for n in 1..=*cap {
                    for i in 0..=n {
                        ops.push(op(format!("d{i}@{n}"), n, n - 1));
                    }
                }
                for n in 0..*cap {
                    for i in 0..=n {
                        ops.push(op(format!("s{i}@{n}"), n, n + 1));
                    }
                }
                ops
            }
        }
    }

    /// Operator index of the face map `d_i` on `n`-cells.
    pub fn face(&self, n: usize, i: usize) -> usize {
        let Shape::Simplicial { cap } = self else {
            panic!("face maps exist only in simplicial shapes");
        };
        assert!(1 <= n && n <= *cap && i <= n, "face d{i} on {n}-cells out of range");
        // faces on dimensions 1..n-1 occupy 2 + 3 + ... + n slots
        (2..=n).sum::<usize>() + i
    }

    /// Operator index of the degeneracy `s_i` on `n`-cells.
    pub fn degeneracy(&self, n: usize, i: usize) -> usize {
        let Shape::Simplicial { cap } = self else {
            panic!("degeneracies exist only in simplicial shapes");
        };
        assert!(n < *cap && i <= n, "degeneracy s{i} on {n}-cells out of range");
        let faces: usize = (2..=*cap + 1).sum();
        faces + (1..=n).sum::<usize>() + i
    }

    /// Sorts in the order used for enumeration and lexicographic comparison.
    pub fn sort_order(&self) -> Vec<usize> {
        (0..self.sort_count()).collect()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Simplicial { cap } => write!(f, "sset(cap {cap})"),
            other => f.write_str(other.tag()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_operator_indices_match_listing() {
        for cap in 0..=4 {
            let shape = Shape::simplicial(cap);
            let ops = shape.operators();
            for n in 1..=cap {
                for i in 0..=n {
                    assert_eq!(ops[shape.face(n, i)].name, format!("d{i}@{n}"));
                }
            }
            for n in 0..cap {
                for i in 0..=n {
                    assert_eq!(ops[shape.degeneracy(n, i)].name, format!("s{i}@{n}"));
                }
            }
        }
    }

    #[test]
    fn sort_names_round_trip() {
        for shape in [Shape::Set, Shape::Graph, Shape::ReflexiveGraph, Shape::simplicial(3)] {
            for s in 0..shape.sort_count() {
                assert_eq!(shape.sort_index(&shape.sort_name(s)), Some(s));
            }
        }
    }
}
