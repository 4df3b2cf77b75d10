//! Exhaustive search for structure-preserving maps.
//!
//! Every hom-set enumeration, lifting problem and homotopy search in the crate
//! goes through [`HomSearch`]: a backtracking solver over cell assignments with
//! forward checking along operator constraints. Variables are visited
//! sort-major in label order and values are tried in increasing label order,
//! so solutions arrive in lexicographic order of their assignment tables.

use crate::error::{Error, Result};
use crate::map::PresheafMap;
use crate::object::{Obj, Presheaf};

/// Upper bound on search candidates tried by a single search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard(pub u64);

impl Guard {
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    pub fn limit(self) -> u64 {
        self.0
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard(Self::DEFAULT_LIMIT)
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(n: usize) -> Bits {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        Bits(words)
    }

    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    #[cfg(test)]
    fn single(n: usize, x: usize) -> Bits {
        let mut b = Bits::empty(n);
        b.set(x);
        b
    }

    fn set(&mut self, x: usize) {
        self.0[x / 64] |= 1 << (x % 64);
    }

    fn contains(&self, x: usize) -> bool {
        self.0[x / 64] >> (x % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Intersects in place; returns whether anything changed.
    fn intersect(&mut self, other: &Bits) -> bool {
        let mut changed = false;
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            let next = *a & b;
            changed |= next != *a;
            *a = next;
        }
        changed
    }

    fn only(&mut self, x: usize) -> bool {
        let keep = self.contains(x);
        let mut changed = false;
        for (i, w) in self.0.iter_mut().enumerate() {
            let next = if keep && i == x / 64 { 1 << (x % 64) } else { 0 };
            changed |= next != *w;
            *w = next;
        }
        changed
    }

    fn singleton(&self) -> Option<usize> {
        let mut found = None;
        for (i, &w) in self.0.iter().enumerate() {
            if w == 0 {
                continue;
            }
            if found.is_some() || w.count_ones() != 1 {
                return None;
            }
            found = Some(i * 64 + w.trailing_zeros() as usize);
        }
        found
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

#[derive(Clone, Copy)]
enum Arc {
    /// neighbour = op(self): assigning self forces the neighbour
    Forward { neighbour: usize, op: usize },
    /// self = op(neighbour): assigning self restricts the neighbour to a fibre
    Backward { neighbour: usize, op: usize },
}

/// Configurable search for maps `dom -> cod`.
pub struct HomSearch<'a> {
    dom: &'a Presheaf,
    cod: &'a Presheaf,
    domains: Vec<Bits>,
    injective: bool,
    guard: Guard,
}

/// Outcome counters of a completed (or stopped) search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub candidates: u64,
    pub solutions: u64,
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a Presheaf, cod: &'a Presheaf, guard: Guard) -> Result<Self> {
        if dom.shape() != cod.shape() {
            return Err(Error::ShapeMismatch {
                left: dom.shape().to_string(),
                right: cod.shape().to_string(),
            });
        }
        let mut domains = Vec::new();
        for s in 0..dom.sort_count() {
            for _ in 0..dom.len(s) {
                domains.push(Bits::full(cod.len(s)));
            }
        }
        Ok(HomSearch {
            dom,
            cod,
            domains,
            injective: false,
            guard,
        })
    }

    fn var(&self, sort: usize, cell: usize) -> usize {
        (0..sort).map(|s| self.dom.len(s)).sum::<usize>() + cell
    }

    /// Requires `cell ↦ image`. Conflicting requirements leave an empty domain.
    pub fn fix(&mut self, sort: usize, cell: usize, image: usize) -> &mut Self {
        let v = self.var(sort, cell);
        self.domains[v].only(image);
        self
    }

    /// Restricts the admissible images of one cell.
    pub fn restrict(&mut self, sort: usize, cell: usize, allowed: impl Fn(usize) -> bool) -> &mut Self {
        let v = self.var(sort, cell);
        let n = self.cod.len(sort);
        let mut mask = Bits::empty(n);
        for y in (0..n).filter(|&y| allowed(y)) {
            mask.set(y);
        }
        self.domains[v].intersect(&mask);
        self
    }

    /// Only cell-wise injective maps.
    pub fn injective(&mut self) -> &mut Self {
        self.injective = true;
        self
    }

    /// Runs the search, calling `visit` on each solution in lexicographic
    /// order until it returns `false`.
    pub fn run(&self, mut visit: impl FnMut(&[Vec<usize>]) -> bool) -> Result<SearchStats> {
        let shape = self.dom.shape();
        let operators = shape.operators();
        let sorts = shape.sort_count();
        let mut var_sort = Vec::new();
        let mut var_cell = Vec::new();
        for s in 0..sorts {
            for c in 0..self.dom.len(s) {
                var_sort.push(s);
                var_cell.push(c);
            }
        }
        let nvars = var_sort.len();

        let mut arcs: Vec<Vec<Arc>> = vec![Vec::new(); nvars];
        for (o, op) in operators.iter().enumerate() {
            for x in 0..self.dom.len(op.from) {
                let vx = self.var(op.from, x);
                let vy = self.var(op.to, self.dom.op(o, x));
                arcs[vx].push(Arc::Forward { neighbour: vy, op: o });
                arcs[vy].push(Arc::Backward { neighbour: vx, op: o });
            }
        }
        // fibre masks: preimage[o][w] = { v : cod.op(o, v) = w }
        let preimage: Vec<Vec<Bits>> = operators
            .iter()
            .enumerate()
            .map(|(o, op)| {
                let mut fib = vec![Bits::empty(self.cod.len(op.from)); self.cod.len(op.to)];
                for v in 0..self.cod.len(op.from) {
                    fib[self.cod.op(o, v)].set(v);
                }
                fib
            })
            .collect();

        let mut state = State {
            domains: self.domains.clone(),
            trail: Vec::new(),
            assignment: (0..sorts).map(|s| vec![0; self.dom.len(s)]).collect(),
            used: (0..sorts).map(|s| vec![false; self.cod.len(s)]).collect(),
            stats: SearchStats::default(),
        };

        if !initial_propagation(&mut state.domains, &arcs, &preimage, self.cod) {
            return Ok(state.stats);
        }

        let ctx = Ctx {
            cod: self.cod,
            arcs: &arcs,
            preimage: &preimage,
            var_sort: &var_sort,
            var_cell: &var_cell,
            injective: self.injective,
            guard: self.guard,
        };
        ctx.descend(0, &mut state, &mut visit)?;
        Ok(state.stats)
    }

    /// All solutions as maps, in lexicographic order.
    pub fn collect(&self, dom: &Obj, cod: &Obj) -> Result<Vec<PresheafMap>> {
        let mut out = Vec::new();
        self.run(|table| {
            out.push(PresheafMap::new_unchecked(dom.clone(), cod.clone(), table.to_vec()));
            true
        })?;
        Ok(out)
    }

    /// The lexicographically least solution.
    pub fn first(&self, dom: &Obj, cod: &Obj) -> Result<Option<PresheafMap>> {
        let mut out = None;
        self.run(|table| {
            out = Some(PresheafMap::new_unchecked(dom.clone(), cod.clone(), table.to_vec()));
            false
        })?;
        Ok(out)
    }

    pub fn count(&self) -> Result<u64> {
        Ok(self.run(|_| true)?.solutions)
    }
}

struct State {
    domains: Vec<Bits>,
    trail: Vec<(usize, Bits)>,
    assignment: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    stats: SearchStats,
}

struct Ctx<'c> {
    cod: &'c Presheaf,
    arcs: &'c [Vec<Arc>],
    preimage: &'c [Vec<Bits>],
    var_sort: &'c [usize],
    var_cell: &'c [usize],
    injective: bool,
    guard: Guard,
}

impl Ctx<'_> {
    /// Returns `Ok(false)` once the visitor asked to stop.
    fn descend(
        &self,
        var: usize,
        st: &mut State,
        visit: &mut impl FnMut(&[Vec<usize>]) -> bool,
    ) -> Result<bool> {
        if var == self.var_sort.len() {
            st.stats.solutions += 1;
            return Ok(visit(&st.assignment));
        }
        let sort = self.var_sort[var];
        let candidates: Vec<usize> = st.domains[var].iter().collect();
        for value in candidates {
            if self.injective && st.used[sort][value] {
                continue;
            }
            st.stats.candidates += 1;
            if st.stats.candidates > self.guard.0 {
                return Err(Error::GuardExceeded { limit: self.guard.0 });
            }
            let mark = st.trail.len();
            if self.forward_check(var, value, st) {
                st.assignment[sort][self.var_cell[var]] = value;
                st.used[sort][value] = true;
                let go_on = self.descend(var + 1, st, visit)?;
                st.used[sort][value] = false;
                if !go_on {
                    return Ok(false);
                }
            }
            while st.trail.len() > mark {
                let (v, old) = st.trail.pop().expect("trail entry");
                st.domains[v] = old;
            }
        }
        Ok(true)
    }

    fn forward_check(&self, var: usize, value: usize, st: &mut State) -> bool {
        for arc in &self.arcs[var] {
            let (n, changed_ok) = match *arc {
                Arc::Forward { neighbour, op } => {
                    if neighbour <= var {
                        continue;
                    }
                    let forced = self.cod.op(op, value);
                    let before = st.domains[neighbour].clone();
                    if st.domains[neighbour].only(forced) {
                        st.trail.push((neighbour, before));
                    }
                    (neighbour, true)
                }
                Arc::Backward { neighbour, op } => {
                    if neighbour <= var {
                        continue;
                    }
                    let before = st.domains[neighbour].clone();
                    if st.domains[neighbour].intersect(&self.preimage[op][value]) {
                        st.trail.push((neighbour, before));
                    }
                    (neighbour, true)
                }
            };
            if changed_ok && st.domains[n].is_empty() {
                return false;
            }
        }
        true
    }
}

/// Propagates singleton domains to a fixpoint; false if some domain empties.
fn initial_propagation(domains: &mut [Bits], arcs: &[Vec<Arc>], preimage: &[Vec<Bits>], cod: &Presheaf) -> bool {
    let mut done = vec![false; domains.len()];
    loop {
        let mut progress = false;
        for v in 0..domains.len() {
            if domains[v].is_empty() {
                return false;
            }
            if done[v] {
                continue;
            }
            let Some(value) = domains[v].singleton() else { continue };
            done[v] = true;
            progress = true;
            for arc in &arcs[v] {
                match *arc {
                    Arc::Forward { neighbour, op } => {
                        domains[neighbour].only(cod.op(op, value));
                    }
                    Arc::Backward { neighbour, op } => {
                        domains[neighbour].intersect(&preimage[op][value]);
                    }
                }
            }
        }
        if !progress {
            return domains.iter().all(|d| !d.is_empty());
        }
    }
}

/// All maps `x -> y` in lexicographic order.
pub fn enumerate_homs(x: &Obj, y: &Obj, guard: Guard) -> Result<Vec<PresheafMap>> {
    HomSearch::new(x, y, guard)?.collect(x, y)
}

/// Number of maps `x -> y`.
pub fn count_homs(x: &Obj, y: &Obj, guard: Guard) -> Result<u64> {
    HomSearch::new(x, y, guard)?.count()
}

/// All isomorphisms `x -> y` in lexicographic order.
pub fn enumerate_isos(x: &Obj, y: &Obj, guard: Guard) -> Result<Vec<PresheafMap>> {
    if (0..x.sort_count()).any(|s| x.len(s) != y.len(s)) || x.shape() != y.shape() {
        return Ok(Vec::new());
    }
    let mut search = HomSearch::new(x, y, guard)?;
    search.injective();
    search.collect(x, y)
}
