//! The free-monoid monad on sets and the free-category monad on graphs and
//! reflexive graphs, truncated at a maximal word/path length.
//!
//! `T(X)` at cap `L` is a genuine finite object. Multiplication is partial:
//! flattening a word of words is defined only when the result has length at
//! most `L`. Law checks quantify over in-cap elements and count the rest.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::map::PresheafMap;
use crate::object::{Obj, Presheaf};
use crate::search::Guard;
use crate::shape::{Shape, EDGE, VERTEX};

/// The free monoid (on `Set`) or free category (on `Graph` or
/// `ReflexiveGraph`) monad at a fixed cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeMonad {
    shape: Shape,
    cap: usize,
    guard: Guard,
}

impl FreeMonad {
    pub fn new(shape: Shape, cap: usize) -> Result<FreeMonad> {
        match shape {
            Shape::Set | Shape::Graph | Shape::ReflexiveGraph => Ok(FreeMonad {
                shape,
                cap,
                guard: Guard::default(),
            }),
            Shape::Simplicial { .. } => Err(Error::ShapeMismatch {
                left: "free monad base".into(),
                right: shape.to_string(),
            }),
        }
    }

    pub fn monoid(cap: usize) -> FreeMonad {
        FreeMonad::new(Shape::Set, cap).expect("sets carry the free-monoid monad")
    }

    pub fn category(shape: Shape, cap: usize) -> Result<FreeMonad> {
        if !shape.is_graph_like() {
            return Err(Error::ShapeMismatch {
                left: "graph".into(),
                right: shape.to_string(),
            });
        }
        FreeMonad::new(shape, cap)
    }

    /// Bounds the number of cells a single `T(X)` may have.
    pub fn with_guard(mut self, guard: Guard) -> FreeMonad {
        self.guard = guard;
        self
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn name(&self) -> &'static str {
        match self.shape {
            Shape::Set => "free-monoid",
            _ => "free-category",
        }
    }

    /// `T(X)`: words (or composable paths) of length at most the cap.
    pub fn apply(&self, x: &Obj) -> Result<FreeObject> {
        if x.shape() != self.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape.to_string(),
                right: x.shape().to_string(),
            });
        }
        FreeObject::build(x, self.cap, self.guard)
    }

    /// `η_X: X → T(X)`, sending a letter to the one-letter word.
    pub fn unit(&self, tx: &FreeObject) -> Result<PresheafMap> {
        if self.cap == 0 {
            return Err(Error::CapExceeded("the unit needs cap ≥ 1".into()));
        }
        tx.unit()
    }

    /// `T(f)`, applying `f` letterwise. In the reflexive case letters sent to
    /// identities are dropped.
    pub fn map(&self, f: &PresheafMap, tx: &FreeObject, ty: &FreeObject) -> Result<PresheafMap> {
        if **f.dom() != *tx.base || **f.cod() != *ty.base {
            return Err(Error::invalid("T(f) needs T of the domain and codomain of f"));
        }
        let shape = self.shape;
        let ls = tx.letter_sort();
        let mut on = vec![Vec::new(); shape.sort_count()];
        if shape.is_graph_like() {
            on[VERTEX] = f.table()[VERTEX].clone();
        }
        let mut words = Vec::with_capacity(tx.len());
        for w in 0..tx.len() {
            let start = if shape.is_graph_like() { f.apply(VERTEX, tx.start(w)) } else { 0 };
            let image: Vec<usize> = tx
                .word(w)
                .iter()
                .map(|&l| f.apply(ls, l))
                .filter(|&l| !(shape == Shape::ReflexiveGraph && ty.base.is_identity_edge(l)))
                .collect();
            words.push(ty.lookup(start, &image).ok_or_else(|| Error::invalid("T(f) leaves the cap"))?);
        }
        on[ls] = words;
        PresheafMap::new(tx.object.clone(), ty.object.clone(), on)
    }

    /// The generating family `𝔊`: units of the cardinals `0..=k` (sets) or
    /// of the linear chains `[0]..=[k]` (graphs).
    pub fn generators(&self, k: usize) -> Result<Vec<PresheafMap>> {
        (0..=k)
            .map(|n| {
                let g = match self.shape {
                    Shape::Set => cardinal(n),
                    shape => linear_chain(n, shape)?,
                };
                self.unit(&self.apply(&g)?)
            })
            .collect()
    }
}

/// The set `{0, …, n-1}`.
pub fn cardinal(n: usize) -> Obj {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Arc::new(Presheaf::set(&labels).expect("distinct labels"))
}

/// The chain graph `0 → 1 → … → n` with edges `e1, …, en` (`ei: i-1 → i`).
pub fn linear_chain(n: usize, shape: Shape) -> Result<Obj> {
    let vs: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let es: Vec<(String, String, String)> =
        (1..=n).map(|i| (format!("e{i}"), (i - 1).to_string(), i.to_string())).collect();
    let g = match shape {
        Shape::Graph => Presheaf::graph(&vs, &es)?,
        Shape::ReflexiveGraph => Presheaf::reflexive_graph(&vs, &es)?,
        other => {
            return Err(Error::ShapeMismatch {
                left: "graph".into(),
                right: other.to_string(),
            })
        }
    };
    Ok(Arc::new(g))
}

/// `T(X)` together with the word (path) behind every cell.
#[derive(Clone, Debug)]
pub struct FreeObject {
    base: Obj,
    object: Obj,
    cap: usize,
    /// Per cell of the letter sort: the letters, as cells of `base`.
    words: Vec<Vec<usize>>,
    /// Per cell of the letter sort: the starting vertex (0 for sets).
    starts: Vec<usize>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl FreeObject {
    fn build(x: &Obj, cap: usize, guard: Guard) -> Result<FreeObject> {
        let shape = x.shape();
        let graph = shape.is_graph_like();
        let letters: Vec<usize> = match shape {
            Shape::Set => (0..x.len(0)).collect(),
            Shape::Graph => (0..x.len(EDGE)).collect(),
            _ => x.proper_edges(),
        };
        let roots: Vec<usize> = if graph { (0..x.len(VERTEX)).collect() } else { vec![0] };
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut starts: Vec<usize> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        for &v in &roots {
            frontier.push(words.len());
            words.push(Vec::new());
            starts.push(v);
        }
        for _ in 0..cap {
            let mut next = Vec::new();
            for &w in &frontier {
                let end = if graph { end_vertex(x, starts[w], &words[w]) } else { 0 };
                for &l in &letters {
                    if graph && x.source(l) != end {
                        continue;
                    }
                    if words.len() as u64 >= guard.limit() {
                        return Err(Error::GuardExceeded { limit: guard.limit() });
                    }
                    let mut word = words[w].clone();
                    word.push(l);
                    next.push(words.len());
                    words.push(word);
                    starts.push(starts[w]);
                }
            }
            frontier = next;
        }
        let ls = if graph { EDGE } else { 0 };
        let labels: Vec<String> = words
            .iter()
            .zip(&starts)
            .map(|(w, &s)| {
                if w.is_empty() && graph {
                    format!("()@{}", x.label(VERTEX, s))
                } else {
                    format!("({})", w.iter().map(|&l| x.label(ls, l)).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        let (cells, ops) = if graph {
            let src = starts.clone();
            let tgt: Vec<usize> = words.iter().zip(&starts).map(|(w, &s)| end_vertex(x, s, w)).collect();
            let mut ops = vec![src, tgt];
            if shape == Shape::ReflexiveGraph {
                // the empty paths were pushed first, one per vertex in order
                ops.push((0..x.len(VERTEX)).collect());
            }
            (vec![x.labels(VERTEX).to_vec(), labels], ops)
        } else {
            (vec![labels], Vec::new())
        };
        let (object, perm) = Presheaf::assemble(shape, cells, ops)?;
        let n = words.len();
        let mut sorted_words = vec![Vec::new(); n];
        let mut sorted_starts = vec![0; n];
        let mut index = HashMap::with_capacity(n);
        for (old, (w, s)) in words.into_iter().zip(starts).enumerate() {
            let new = perm[ls][old];
            index.insert((s, w.clone()), new);
            sorted_words[new] = w;
            sorted_starts[new] = s;
        }
        Ok(FreeObject {
            base: x.clone(),
            object: Arc::new(object),
            cap,
            words: sorted_words,
            starts: sorted_starts,
            index,
        })
    }

    fn unit(&self) -> Result<PresheafMap> {
        let x = &self.base;
        let shape = x.shape();
        let ls = self.letter_sort();
        let mut on = vec![Vec::new(); shape.sort_count()];
        if shape.is_graph_like() {
            on[VERTEX] = (0..x.len(VERTEX)).collect();
        }
        on[ls] = (0..x.len(ls))
            .map(|l| {
                let start = if shape.is_graph_like() { x.source(l) } else { 0 };
                let word = if shape == Shape::ReflexiveGraph && x.is_identity_edge(l) { vec![] } else { vec![l] };
                self.lookup(start, &word).expect("cap ≥ 1")
            })
            .collect();
        PresheafMap::new(x.clone(), self.object.clone(), on)
    }

    /// The object `X` this was built from.
    pub fn base(&self) -> &Obj {
        &self.base
    }

    /// `T(X)` itself.
    pub fn object(&self) -> &Obj {
        &self.object
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Sort holding the words: elements for sets, edges for graphs.
    pub fn letter_sort(&self) -> usize {
        if self.base.shape().is_graph_like() {
            EDGE
        } else {
            0
        }
    }

    /// Number of words (paths).
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Letters of the word in cell `w`.
    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    /// Starting vertex of the path in cell `w` (0 for sets).
    pub fn start(&self, w: usize) -> usize {
        self.starts[w]
    }

    /// End vertex of the path in cell `w` (0 for sets).
    pub fn end(&self, w: usize) -> usize {
        if self.base.shape().is_graph_like() {
            end_vertex(&self.base, self.starts[w], &self.words[w])
        } else {
            0
        }
    }

    /// The cell holding a given word, if it is within the cap.
    pub fn lookup(&self, start: usize, word: &[usize]) -> Option<usize> {
        self.index.get(&(start, word.to_vec())).copied()
    }

    /// The empty word (at `start` for graphs).
    pub fn empty_word(&self, start: usize) -> usize {
        self.lookup(start, &[]).expect("empty words always exist")
    }

    /// `μ` on a word of cells of this object: concatenation, defined when
    /// the pieces compose and the result fits the cap.
    pub fn mu(&self, start: usize, pieces: &[usize]) -> Option<usize> {
        let mut at = start;
        let mut word = Vec::new();
        for &p in pieces {
            if self.starts[p] != at {
                return None;
            }
            word.extend_from_slice(&self.words[p]);
            at = self.end(p);
        }
        self.lookup(start, &word)
    }
}

fn end_vertex(x: &Presheaf, start: usize, word: &[usize]) -> usize {
    word.last().map_or(start, |&l| x.target(l))
}

/// Outcome of checking the unit and associativity laws on in-cap elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub left_unit_checked: usize,
    pub right_unit_checked: usize,
    pub associativity_checked: usize,
    /// Elements of `TTX` whose flattening exceeds the cap.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A candidate multiplication: `(T(X), start, pieces) ↦ flattened cell`.
pub type Multiplication<'a> = dyn Fn(&FreeObject, usize, &[usize]) -> Option<usize> + 'a;

/// Checks `μ∘η_T = id`, `μ∘Tη = id` and `μ∘μT = μ∘Tμ` on every element
/// whose expansion stays within the cap.
pub fn check_monad_laws(monad: &FreeMonad, x: &Obj) -> Result<LawReport> {
    check_monad_laws_with(monad, x, &|t: &FreeObject, s: usize, p: &[usize]| t.mu(s, p))
}

/// As [`check_monad_laws`] with a caller-supplied multiplication.
pub fn check_monad_laws_with(monad: &FreeMonad, x: &Obj, mu: &Multiplication<'_>) -> Result<LawReport> {
    let tx = monad.apply(x)?;
    let cap = monad.cap();
    let mut report = LawReport::default();
    let label = |w: usize| tx.object.label(tx.letter_sort(), w).to_string();

    for w in 0..tx.len() {
        report.left_unit_checked += 1;
        if mu(&tx, tx.start(w), &[w]) != Some(w) {
            report.failures.push(format!("μ∘η_T fails at {}", label(w)));
        }
    }
    if cap >= 1 {
        for w in 0..tx.len() {
            let mut at = tx.start(w);
            let mut pieces = Vec::new();
            for &l in tx.word(w) {
                pieces.push(tx.lookup(at, &[l]).expect("letters fit a positive cap"));
                at = if tx.base.shape().is_graph_like() { tx.base.target(l) } else { 0 };
            }
            report.right_unit_checked += 1;
            if mu(&tx, tx.start(w), &pieces) != Some(w) {
                report.failures.push(format!("μ∘Tη fails at {}", label(w)));
            }
        }
    }

    // words W of cells of TX with |W| ≤ cap, then every split into ≤ cap pieces
    let roots: Vec<usize> = if x.shape().is_graph_like() { (0..x.len(VERTEX)).collect() } else { vec![0] };
    let mut stack: Vec<(usize, Vec<usize>)> = roots.iter().map(|&v| (v, Vec::new())).collect();
    while let Some((start, outer)) = stack.pop() {
        let end = outer.last().map_or(start, |&c| tx.end(c));
        if outer.len() < cap {
            for c in 0..tx.len() {
                if tx.start(c) == end {
                    let mut next = outer.clone();
                    next.push(c);
                    stack.push((start, next));
                }
            }
        }
        let flat: usize = outer.iter().map(|&c| tx.word(c).len()).sum();
        if flat > cap {
            report.skipped += 1;
            continue;
        }
        let whole = mu(&tx, start, &outer);
        for pieces in 1..=cap.max(1) {
            for cuts in splits(outer.len(), pieces) {
                let mut inner = Vec::with_capacity(pieces);
                let mut at = start;
                let mut ok = true;
                for win in cuts.windows(2) {
                    let part = &outer[win[0]..win[1]];
                    match mu(&tx, at, part) {
                        Some(c) => {
                            inner.push(c);
                            at = tx.end(c);
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                report.associativity_checked += 1;
                if !ok || mu(&tx, start, &inner) != whole || whole.is_none() {
                    let shown: Vec<String> = outer.iter().map(|&c| label(c)).collect();
                    report.failures.push(format!(
                        "μ∘μT ≠ μ∘Tμ at [{}] split at {:?}",
                        shown.join(" "),
                        &cuts[1..cuts.len() - 1]
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Cut positions `0 = c0 ≤ c1 ≤ … ≤ c_k = n` for `k` pieces.
fn splits(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let from = *cur.last().expect("starts at 0");
        for c in from..=n {
            cur.push(c);
            go(n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut vec![0], &mut out);
    out
}

/// The algebra homomorphism `f′: T(X) → A` with `f′∘η_X = f`: a word goes to
/// the product (or composite) of the images of its letters.
pub fn algebra_extend(algebra: &Algebra, f: &PresheafMap, tx: &FreeObject) -> Result<PresheafMap> {
    let x = &tx.base;
    if **f.dom() != **x {
        return Err(Error::invalid("algebra_extend needs T of the domain of f"));
    }
    let carrier = f.cod().clone();
    let expected = algebra.carrier(x.shape())?;
    if *carrier != *expected {
        return Err(Error::invalid("f does not land in the algebra carrier"));
    }
    let ls = tx.letter_sort();
    let mut on = vec![Vec::new(); x.sort_count()];
    match algebra {
        Algebra::Monoid(m) => {
            on[0] = (0..tx.len())
                .map(|w| tx.word(w).iter().fold(m.unit(), |acc, &l| m.mul(acc, f.apply(0, l))))
                .collect();
        }
        Algebra::Category(c) => {
            on[VERTEX] = f.table()[VERTEX].clone();
            let mut edges = Vec::with_capacity(tx.len());
            for w in 0..tx.len() {
                let mut acc = c.identity(f.apply(VERTEX, tx.start(w)));
                for &l in tx.word(w) {
                    let m = f.apply(ls, l);
                    acc = c
                        .compose(m, acc)
                        .ok_or_else(|| Error::NotComposable(format!("image of {}", tx.object.label(ls, w))))?;
                }
                edges.push(acc);
            }
            on[EDGE] = edges;
        }
    }
    PresheafMap::new(tx.object.clone(), carrier, on)
}

/// Whether `g: T(X) → A` is an algebra homomorphism on the truncated part:
/// it sends empty words to units and concatenations to products.
pub fn is_algebra_hom(algebra: &Algebra, g: &PresheafMap, tx: &FreeObject) -> bool {
    let ls = tx.letter_sort();
    for w in 0..tx.len() {
        let empty = tx.word(w).is_empty();
        let unit = match algebra {
            Algebra::Monoid(m) => m.unit(),
            Algebra::Category(c) => c.identity(g.apply(VERTEX, tx.start(w))),
        };
        if empty && g.apply(ls, w) != unit {
            return false;
        }
    }
    for a in 0..tx.len() {
        for b in 0..tx.len() {
            let Some(ab) = tx.mu(tx.start(a), &[a, b]) else { continue };
            let (ga, gb, gab) = (g.apply(ls, a), g.apply(ls, b), g.apply(ls, ab));
            let product = match algebra {
                Algebra::Monoid(m) => Some(m.mul(ga, gb)),
                Algebra::Category(c) => c.compose(gb, ga),
            };
            if product != Some(gab) {
                return false;
            }
        }
    }
    true
}

/// The free-algebra homomorphism `T(Y) → T(X)` determined by `φ: Y → T(X)`,
/// if every extended word stays within the cap of `T(X)`.
pub fn extend_into_free(phi: &PresheafMap, ty: &FreeObject, tx: &FreeObject) -> Result<Option<PresheafMap>> {
    if **phi.dom() != *ty.base || **phi.cod() != *tx.object {
        return Err(Error::invalid("φ must go from Y to T(X)"));
    }
    let graph = ty.base.shape().is_graph_like();
    let ls = ty.letter_sort();
    let mut on = vec![Vec::new(); ty.base.sort_count()];
    if graph {
        on[VERTEX] = phi.table()[VERTEX].clone();
    }
    let mut edges = Vec::with_capacity(ty.len());
    for w in 0..ty.len() {
        let start = if graph { phi.apply(VERTEX, ty.start(w)) } else { 0 };
        let pieces: Vec<usize> = ty.word(w).iter().map(|&l| phi.apply(ls, l)).collect();
        match tx.mu(start, &pieces) {
            Some(c) => edges.push(c),
            None => return Ok(None),
        }
    }
    on[ls] = edges;
    Ok(Some(PresheafMap::new(ty.object.clone(), tx.object.clone(), on)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Category, Monoid};

    fn set(xs: &[&str]) -> Obj {
        Arc::new(Presheaf::set(xs).unwrap())
    }

    #[test]
    fn free_monoid_word_counts() {
        let t = FreeMonad::monoid(3).apply(&set(&["a"])).unwrap();
        assert_eq!(t.object().labels(0), ["()", "(a)", "(a,a)", "(a,a,a)"]);
        assert_eq!(FreeMonad::monoid(5).apply(&set(&[])).unwrap().len(), 1);
        // 1 + 2 + 4
        assert_eq!(FreeMonad::monoid(2).apply(&set(&["x", "y"])).unwrap().len(), 7);
    }

    #[test]
    fn free_category_path_counts() {
        let chain = linear_chain(1, Shape::Graph).unwrap();
        let t = FreeMonad::category(Shape::Graph, 2).unwrap().apply(&chain).unwrap();
        assert_eq!(t.len(), 3);
        let lp = Arc::new(Presheaf::graph(&["v"], &[("l", "v", "v")]).unwrap());
        let t = FreeMonad::category(Shape::Graph, 3).unwrap().apply(&lp).unwrap();
        assert_eq!(t.object().labels(EDGE), ["()@v", "(l)", "(l,l)", "(l,l,l)"]);
        let par = Arc::new(Presheaf::graph(&["a", "b"], &[("f", "a", "b"), ("g", "a", "b")]).unwrap());
        assert_eq!(FreeMonad::category(Shape::Graph, 1).unwrap().apply(&par).unwrap().len(), 4);
    }

    #[test]
    fn reflexive_free_category_designates_empty_paths() {
        let chain = linear_chain(2, Shape::ReflexiveGraph).unwrap();
        let t = FreeMonad::category(Shape::ReflexiveGraph, 2).unwrap().apply(&chain).unwrap();
        let obj = t.object();
        for v in 0..obj.len(VERTEX) {
            assert!(t.word(obj.identity_loop(v)).is_empty());
        }
        assert_eq!(obj.proper_edge_count(), 3);
        let eta = FreeMonad::category(Shape::ReflexiveGraph, 2).unwrap().unit(&t).unwrap();
        assert!(eta.is_mono());
    }

    #[test]
    fn unit_needs_positive_cap() {
        let m = FreeMonad::monoid(0);
        let t = m.apply(&set(&["a"])).unwrap();
        assert!(matches!(m.unit(&t), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn multiplication_concatenates() {
        let t = FreeMonad::monoid(2).apply(&set(&["a", "b"])).unwrap();
        let a = t.lookup(0, &[0]).unwrap();
        let b = t.lookup(0, &[1]).unwrap();
        assert_eq!(t.object().label(0, t.mu(0, &[a, b]).unwrap()), "(a,b)");
        assert_eq!(t.mu(0, &[a, b, a]), None);
    }

    #[test]
    fn laws_hold_and_a_corrupted_multiplication_is_caught() {
        let m = FreeMonad::monoid(4);
        let r = check_monad_laws(&m, &set(&["a"])).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.associativity_checked > 0 && r.skipped > 0);
        assert!(check_monad_laws(&m, &set(&[])).unwrap().passed());
        let reversed = |t: &FreeObject, s: usize, p: &[usize]| {
            let mut w: Vec<usize> = p.iter().flat_map(|&c| t.word(c).to_vec()).collect();
            w.reverse();
            t.lookup(s, &w)
        };
        let r = check_monad_laws_with(&FreeMonad::monoid(2), &set(&["a", "b"]), &reversed).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn graph_laws_hold() {
        let g = Arc::new(Presheaf::graph(&["a", "b"], &[("f", "a", "b"), ("l", "b", "b")]).unwrap());
        let r = check_monad_laws(&FreeMonad::category(Shape::Graph, 3).unwrap(), &g).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn extension_folds_over_the_table() {
        let z2 = Algebra::Monoid(Monoid::z2());
        let x = set(&["x"]);
        let carrier = z2.carrier(Shape::Set).unwrap();
        let f = PresheafMap::new(x.clone(), carrier, vec![vec![1]]).unwrap();
        let tx = FreeMonad::monoid(3).apply(&x).unwrap();
        let ext = algebra_extend(&z2, &f, &tx).unwrap();
        assert_eq!(ext.apply_label(0, "(x,x)"), Some("0"));
        assert_eq!(ext.apply_label(0, "(x,x,x)"), Some("1"));
        assert_eq!(ext.apply_label(0, "()"), Some("0"));
        assert!(is_algebra_hom(&z2, &ext, &tx));
    }

    #[test]
    fn category_extension_sends_empty_paths_to_identities() {
        let c = Category::chain(2);
        let alg = Algebra::Category(c.clone());
        let carrier = alg.carrier(Shape::Graph).unwrap();
        let g = linear_chain(2, Shape::Graph).unwrap();
        let f = PresheafMap::from_labels(
            g.clone(),
            carrier,
            &HashMap::from([
                ("vertex".to_string(), HashMap::from([("0", "0"), ("1", "1"), ("2", "2")].map(|(a, b)| (a.into(), b.into())))),
                ("edge".to_string(), HashMap::from([("e1", "0-1"), ("e2", "1-2")].map(|(a, b)| (a.into(), b.into())))),
            ]),
        )
        .unwrap();
        let tx = FreeMonad::category(Shape::Graph, 2).unwrap().apply(&g).unwrap();
        let ext = algebra_extend(&alg, &f, &tx).unwrap();
        assert_eq!(ext.apply_label(EDGE, "(e1,e2)"), Some("0-2"));
        assert_eq!(ext.apply_label(EDGE, "()@1"), Some("1_1"));
    }
}
