//! Explicit constructions for the free-monoid and free-category monads: the
//! retract and tower witnesses exhibiting units as saturated maps, and the
//! explicit diagonals for endpoint corners into monoids and categories.

use std::collections::HashMap;

use itertools::Itertools;

use crate::algebra::Category;
use crate::cylinder::{CornerKind, CornerMap, CylinderData};
use crate::error::{Error, Result};
use crate::limits::{coproduct_all, pushout};
use crate::map::{maps_equal, PresheafMap};
use crate::monads::{cardinal, linear_chain, FreeMonad, FreeObject};
use crate::object::{Obj, Presheaf};
use crate::shape::{Shape, EDGE, VERTEX};

/// Closure rules of a saturated class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SaturationRule {
    Coproduct,
    Pushout,
    Composite,
    Retract,
}

impl SaturationRule {
    pub fn name(self) -> &'static str {
        match self {
            SaturationRule::Coproduct => "coproduct",
            SaturationRule::Pushout => "pushout",
            SaturationRule::Composite => "composite",
            SaturationRule::Retract => "retract",
        }
    }

    pub fn parse(name: &str) -> Option<SaturationRule> {
        [
            SaturationRule::Coproduct,
            SaturationRule::Pushout,
            SaturationRule::Composite,
            SaturationRule::Retract,
        ]
        .into_iter()
        .find(|r| r.name() == name)
    }
}

/// One step of a saturation certificate: a map obtained by `rule` from the
/// generators (`"G"`) or from earlier steps, named by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationStep {
    pub rule: SaturationRule,
    pub produces: String,
    pub inputs: Vec<String>,
    /// Whether the defining equations were checked on the constructed maps.
    pub verified: bool,
}

/// Accepts a certificate when every step is verified and only uses the
/// generators or earlier steps.
pub fn tags_valid(steps: &[SaturationStep]) -> bool {
    let mut known: Vec<&str> = vec!["G"];
    for step in steps {
        if !step.verified || !step.inputs.iter().all(|i| known.contains(&i.as_str())) {
            return false;
        }
        known.push(&step.produces);
    }
    !steps.is_empty()
}

fn step(rule: SaturationRule, produces: &str, inputs: &[&str], verified: bool) -> SaturationStep {
    SaturationStep {
        rule,
        produces: produces.to_string(),
        inputs: inputs.iter().map(|s| s.to_string()).collect(),
        verified,
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("witness check failed: {what}")))
    }
}

/// `η_X` as a retract of `c = ∐ η_{|S|}` over pairs `(S, σ)`:
///
/// ```text
/// X  --s-->  ∐|S|   --r-->  X
/// |η           |c           |η
/// TX --u--> ∐T|S|  --v-->  TX
/// ```
#[derive(Clone, Debug)]
pub struct RetractWitness {
    pub x: Obj,
    pub tx: FreeObject,
    /// `(S, σ)` with `σ[i]` the element of `X` at position `i`; `S` is the
    /// sorted set of entries of `σ`.
    pub pairs: Vec<Vec<usize>>,
    pub middle: PresheafMap,
    pub eta: PresheafMap,
    pub s: PresheafMap,
    pub r: PresheafMap,
    pub u: PresheafMap,
    pub v: PresheafMap,
    pub steps: Vec<SaturationStep>,
}

/// Largest set accepted by [`m2_retract_set`]; the pair set grows like `Σ k!·C(n,k)`.
pub const MAX_RETRACT_SET: usize = 4;

/// Builds and verifies the retract witness for a finite set `X`.
pub fn m2_retract_set(x: &Obj, cap: usize) -> Result<RetractWitness> {
    if x.shape() != Shape::Set {
        return Err(Error::ShapeMismatch {
            left: "set".into(),
            right: x.shape().to_string(),
        });
    }
    if x.len(0) > MAX_RETRACT_SET {
        return Err(Error::GuardExceeded {
            limit: MAX_RETRACT_SET as u64,
        });
    }
    let monad = FreeMonad::monoid(cap);
    let tx = monad.apply(x)?;
    let eta = monad.unit(&tx)?;
    let n = x.len(0);

    let pairs: Vec<Vec<usize>> = (0..=n)
        .flat_map(|k| (0..n).combinations(k))
        .flat_map(|subset| {
            let k = subset.len();
            subset.into_iter().permutations(k)
        })
        .collect();
    let smalls: Vec<Obj> = pairs.iter().map(|p| cardinal(p.len())).collect();
    let frees: Vec<FreeObject> = smalls.iter().map(|c| monad.apply(c)).collect::<Result<_>>()?;
    let p_sum = coproduct_all(&smalls, Shape::Set)?;
    let q_sum = coproduct_all(&frees.iter().map(|f| f.object().clone()).collect::<Vec<_>>(), Shape::Set)?;

    let units: Vec<PresheafMap> = frees.iter().map(|f| monad.unit(f)).collect::<Result<_>>()?;
    let legs: Vec<PresheafMap> = units
        .iter()
        .zip(&q_sum.injections)
        .map(|(eta_k, inj)| eta_k.then(inj))
        .collect::<Result<_>>()?;
    let middle = p_sum.copair(&legs, &q_sum.object)?;

    let pair_index: HashMap<&[usize], usize> = pairs.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let s_table = (0..n).map(|xe| p_sum.injections[pair_index[&[xe][..]]].apply(0, 0)).collect();
    let s = PresheafMap::new(x.clone(), p_sum.object.clone(), vec![s_table])?;

    let sigma_maps: Vec<PresheafMap> = pairs
        .iter()
        .zip(&smalls)
        .map(|(p, c)| PresheafMap::new(c.clone(), x.clone(), vec![p.clone()]))
        .collect::<Result<_>>()?;
    let r = p_sum.copair(&sigma_maps, x)?;

    let v_legs: Vec<PresheafMap> = sigma_maps
        .iter()
        .zip(&frees)
        .map(|(sigma, f)| monad.map(sigma, f, &tx))
        .collect::<Result<_>>()?;
    let v = q_sum.copair(&v_legs, tx.object())?;

    // u(w): S = letters of w, σ the order-induced bijection, letters sent to σ⁻¹
    let mut u_table = Vec::with_capacity(tx.len());
    for w in 0..tx.len() {
        let word = tx.word(w);
        let support: Vec<usize> = word.iter().copied().sorted().dedup().collect();
        let k = pair_index[support.as_slice()];
        let inverse: Vec<usize> = word
            .iter()
            .map(|l| support.binary_search(l).expect("letter in support"))
            .collect();
        let cell = frees[k].lookup(0, &inverse).expect("same length as w");
        u_table.push(q_sum.injections[k].apply(0, cell));
    }
    let u = PresheafMap::new(tx.object().clone(), q_sum.object.clone(), vec![u_table])?;

    require(maps_equal(&s.then(&r)?, &PresheafMap::identity(x)), "r∘s = id")?;
    require(maps_equal(&u.then(&v)?, &PresheafMap::identity(tx.object())), "v∘u = id")?;
    require(maps_equal(&s.then(&middle)?, &eta.then(&u)?), "c∘s = u∘η")?;
    require(maps_equal(&r.then(&eta)?, &middle.then(&v)?), "η∘r = v∘c")?;
    let summands_ok = p_sum
        .injections
        .iter()
        .zip(&legs)
        .all(|(inj, leg)| inj.then(&middle).map(|m| maps_equal(&m, leg)).unwrap_or(false));

    let steps = vec![
        step(SaturationRule::Coproduct, "c", &["G"], summands_ok),
        step(SaturationRule::Retract, "eta_X", &["c"], true),
    ];
    Ok(RetractWitness {
        x: x.clone(),
        tx,
        pairs,
        middle,
        eta,
        s,
        r,
        u,
        v,
        steps,
    })
}

/// The tower `G → G̃(0) → … → G̃(n)` with comparison maps into `T(G)` and a
/// section of the last one on paths of length at most `n`.
///
/// Stage `m` glues a copy of `T[m]` along every path of length `m` in `G`
/// (transported along the earlier stages). This is a pushout of a coproduct
/// of generators, so every stage is a saturation step.
#[derive(Clone, Debug)]
pub struct TowerWitness {
    pub graph: Obj,
    pub tg: FreeObject,
    pub stages: Vec<Obj>,
    /// `h_0: G → G̃(0)` and `h_m: G̃(m-1) → G̃(m)`.
    pub h: Vec<PresheafMap>,
    /// `k_m: G̃(m) → T(G)`.
    pub k: Vec<PresheafMap>,
    /// `G → G̃(n)`.
    pub h_total: PresheafMap,
    /// Domain of the section: `T(G)` truncated at `n`.
    pub section_domain: FreeObject,
    pub s: PresheafMap,
    pub n: usize,
    /// Paths of `T(G)` longer than `n`, outside the section's domain.
    pub unreached: usize,
    pub steps: Vec<SaturationStep>,
}

/// Paths of `G` of length `m` as (start vertex, letters).
fn paths_of_length(tg: &FreeObject, m: usize) -> Vec<(usize, Vec<usize>)> {
    (0..tg.len())
        .filter(|&w| tg.word(w).len() == m)
        .map(|w| (tg.start(w), tg.word(w).to_vec()))
        .collect()
}

/// The map `[m] → G` tracing a path.
fn chain_map(chain: &Obj, g: &Obj, start: usize, word: &[usize]) -> Result<PresheafMap> {
    let mut verts = vec![start];
    verts.extend(word.iter().map(|&e| g.target(e)));
    // chain vertices are labeled 0..=m, chain edges e1..em; label order is not numeric
    let vertex_on = (0..chain.len(VERTEX))
        .map(|c| verts[chain.label(VERTEX, c).parse::<usize>().expect("numeric vertex")])
        .collect();
    let edge_on = (0..chain.len(EDGE))
        .map(|c| {
            if chain.is_identity_edge(c) {
                let v = verts[chain.label(VERTEX, chain.source(c)).parse::<usize>().expect("numeric vertex")];
                g.identity_loop(v)
            } else {
                let i: usize = chain.label(EDGE, c)[1..].parse().expect("edge e<i>");
                word[i - 1]
            }
        })
        .collect();
    PresheafMap::new(chain.clone(), g.clone(), vec![vertex_on, edge_on])
}

/// Builds and verifies the tower for a graph (plain or reflexive).
pub fn m2_tower_graph(g: &Obj, n_max: usize, cap: usize) -> Result<TowerWitness> {
    let shape = g.shape();
    let monad = FreeMonad::category(shape, cap)?;
    let n = n_max.min(cap);
    let tg = monad.apply(g)?;
    let eta_g = monad.unit(&tg)?;

    let mut stages = Vec::new();
    let mut hs: Vec<PresheafMap> = Vec::new();
    let mut ks: Vec<PresheafMap> = Vec::new();
    let mut acc = PresheafMap::identity(g);
    let mut k_prev = eta_g.clone();
    let mut steps = Vec::new();
    // composite cell created for each path, at the stage that created it
    let mut composites: Vec<((usize, Vec<usize>), usize, usize)> = Vec::new();

    for m in 0..=n {
        let chain = linear_chain(m, shape)?;
        let tchain = monad.apply(&chain)?;
        let eta_chain = monad.unit(&tchain)?;
        let paths = paths_of_length(&tg, m);
        let current = acc.cod().clone();
        let p_hats: Vec<PresheafMap> = paths
            .iter()
            .map(|(s, w)| chain_map(&chain, g, *s, w))
            .collect::<Result<_>>()?;
        let a_sum = coproduct_all(&vec![chain.clone(); paths.len()], shape)?;
        let b_sum = coproduct_all(&vec![tchain.object().clone(); paths.len()], shape)?;
        let top_legs: Vec<PresheafMap> = p_hats.iter().map(|p| p.then(&acc)).collect::<Result<_>>()?;
        let top = a_sum.copair(&top_legs, &current)?;
        let unit_legs: Vec<PresheafMap> = b_sum
            .injections
            .iter()
            .map(|inj| eta_chain.then(inj))
            .collect::<Result<_>>()?;
        let glue = a_sum.copair(&unit_legs, &b_sum.object)?;
        let po = pushout(&top, &glue)?;
        let t_legs: Vec<PresheafMap> = p_hats
            .iter()
            .map(|p| monad.map(p, &tchain, &tg))
            .collect::<Result<_>>()?;
        let k_m = po.mediate(&k_prev, &b_sum.copair(&t_legs, tg.object())?)?;

        // the full path of [m] is the composite of the glued copy
        let chain_vertex0 = chain.require(VERTEX, "0")?;
        let full: Vec<usize> = (1..=m).map(|i| chain.require(EDGE, &format!("e{i}"))).collect::<Result<_>>()?;
        let full_cell = tchain.lookup(chain_vertex0, &full).expect("m ≤ cap");
        for (p, inj) in paths.iter().zip(&b_sum.injections) {
            composites.push((p.clone(), m, po.right.apply(EDGE, inj.apply(EDGE, full_cell))));
        }

        let name = format!("h{m}");
        steps.push(step(SaturationRule::Coproduct, &format!("c{m}"), &["G"], true));
        steps.push(step(SaturationRule::Pushout, &name, &[&format!("c{m}")], true));
        require(maps_equal(&po.left.then(&k_m)?, &k_prev), &format!("k∘h compatibility at stage {m}"))?;
        acc = acc.then(&po.left)?;
        k_prev = k_m.clone();
        stages.push(po.object.clone());
        hs.push(po.left.clone());
        ks.push(k_m);
    }

    let last = acc.cod().clone();
    // push every composite to the last stage
    let mut forward: Vec<PresheafMap> = vec![PresheafMap::identity(&last)];
    for h in hs.iter().skip(1).rev() {
        let next = h.then(forward.last().expect("nonempty"))?;
        forward.push(next);
    }
    forward.reverse();

    let small = monad_at(shape, n)?.apply(g)?;
    let lookup: HashMap<(usize, Vec<usize>), usize> = composites
        .into_iter()
        .map(|(key, m, cell)| (key, forward[m].apply(EDGE, cell)))
        .collect();
    let vertex_on: Vec<usize> = (0..g.len(VERTEX)).map(|v| acc.apply(VERTEX, v)).collect();
    let edge_on: Vec<usize> = (0..small.len())
        .map(|w| lookup[&(small.start(w), small.word(w).to_vec())])
        .collect();
    let s = PresheafMap::new(small.object().clone(), last.clone(), vec![vertex_on, edge_on])?;

    let inclusion = PresheafMap::new(
        small.object().clone(),
        tg.object().clone(),
        vec![
            (0..g.len(VERTEX)).collect(),
            (0..small.len())
                .map(|w| tg.lookup(small.start(w), small.word(w)).expect("shorter paths fit"))
                .collect(),
        ],
    )?;
    let k_last = ks.last().expect("at least stage 0");
    require(maps_equal(&s.then(k_last)?, &inclusion), "k∘s = id")?;
    require(maps_equal(&acc.then(k_last)?, &eta_g), "k∘h = η_G")?;
    if n >= 1 {
        let eta_small = FreeMonad::category(shape, n)?.unit(&small)?;
        require(maps_equal(&eta_small.then(&s)?, &acc), "s∘η_G = h")?;
    }
    let h_inputs: Vec<String> = (0..=n).map(|m| format!("h{m}")).collect();
    let h_refs: Vec<&str> = h_inputs.iter().map(String::as_str).collect();
    steps.push(step(SaturationRule::Composite, "h", &h_refs, true));
    steps.push(step(SaturationRule::Retract, "eta_G", &["h"], true));

    Ok(TowerWitness {
        graph: g.clone(),
        unreached: tg.len() - small.len(),
        tg,
        stages,
        h: hs,
        k: ks,
        h_total: acc,
        section_domain: small,
        s,
        n,
        steps,
    })
}

fn monad_at(shape: Shape, cap: usize) -> Result<FreeMonad> {
    FreeMonad::category(shape, cap)
}

fn endpoint_corner(corner: &CornerMap, shape_ok: impl Fn(Shape) -> bool) -> Result<usize> {
    let CornerKind::Endpoint(e) = corner.kind else {
        return Err(Error::invalid("explicit lifts need an endpoint corner"));
    };
    let shape = corner.map.cod().shape();
    if !shape_ok(shape) {
        return Err(Error::ShapeMismatch {
            left: "corner base".into(),
            right: shape.to_string(),
        });
    }
    if corner.target_cylinder.level.is_none() {
        return Err(Error::invalid("explicit lifts need a product cylinder"));
    }
    Ok(e)
}

fn check_top(corner: &CornerMap, f: &PresheafMap) -> Result<()> {
    if **f.dom() != **corner.map.dom() {
        return Err(Error::NotComposable("top map must start at the corner's domain".into()));
    }
    Ok(())
}

fn finish_lift(corner: &CornerMap, f: &PresheafMap, on: Vec<Vec<usize>>) -> Result<PresheafMap> {
    let d = PresheafMap::new(corner.map.cod().clone(), f.cod().clone(), on)?;
    require(maps_equal(&corner.map.then(&d)?, f), "diagonal restricts to the top map")?;
    Ok(d)
}

/// The diagonal `L×2 → A` of an endpoint corner into any set: cells outside
/// the corner take the value at the chosen end. No structure on `A` is used.
pub fn explicit_lift_monoid(corner: &CornerMap, f: &PresheafMap) -> Result<PresheafMap> {
    let e = endpoint_corner(corner, |s| s == Shape::Set)?;
    check_top(corner, f)?;
    let lc = &corner.target_cylinder;
    let section = corner.map.section_table();
    let on = (0..lc.object.len(0))
        .map(|c| {
            let from = section[0][c].unwrap_or_else(|| {
                let x = lc.sigma.apply(0, c);
                section[0][lc.endpoint(e).apply(0, x)].expect("the chosen end lies in the corner")
            });
            f.apply(0, from)
        })
        .collect();
    finish_lift(corner, f, vec![on])
}

/// Kinds of interval edges relative to the chosen end `t0` (other end `t1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    Stay0,
    Stay1,
    Up,
    Down,
}

struct CategoryLift<'a> {
    corner: &'a CornerMap,
    f: &'a PresheafMap,
    c: &'a Category,
    lc: &'a CylinderData,
    l: &'a Presheaf,
    section: Vec<Vec<Option<usize>>>,
    in_k: Vec<bool>,
    e: usize,
    /// interval edge per move
    moves: HashMap<usize, Move>,
    interval_edges: [usize; 4],
}

impl CategoryLift<'_> {
    fn f_at(&self, sort: usize, x: usize, t: usize) -> Result<usize> {
        let cell = self.lc.pair(sort, x, t).expect("product cylinder");
        let from = self.section[sort][cell]
            .ok_or_else(|| Error::invalid(format!("cell {} is outside the corner", self.lc.object.label(sort, cell))))?;
        Ok(self.f.apply(sort, from))
    }

    fn end_vertex(&self, which: Move) -> usize {
        let e = if which == Move::Stay0 { self.e } else { 1 - self.e };
        self.lc.level.as_ref().expect("product").cod().require(VERTEX, &e.to_string()).expect("interval ends")
    }

    /// `f(e′, t0)`
    fn along(&self, edge: usize) -> Result<usize> {
        self.f_at(EDGE, edge, self.interval_edges[0])
    }

    /// An edge `(a, t1) → (a, t0)` or `(a, t0) → (a, t1)` inside `K⊗I`.
    fn vertical(&self, a: usize, mv: Move) -> Result<usize> {
        let j = self.interval_edges[if mv == Move::Up { 2 } else { 3 }];
        let stay = if self.l.shape() == Shape::ReflexiveGraph {
            Some(self.l.identity_loop(a))
        } else {
            (0..self.l.len(EDGE)).find(|&x| {
                self.l.source(x) == a && self.l.target(x) == a && self.section[EDGE][self.lc.pair(EDGE, x, j).expect("product")].is_some()
            })
        };
        let stay = stay.ok_or_else(|| {
            Error::Inapplicable(format!(
                "vertex `{}` of K carries no loop, so K⊗I has no vertical edge there",
                self.l.label(VERTEX, a)
            ))
        })?;
        self.f_at(EDGE, stay, j)
    }

    fn compose(&self, g: usize, f: usize) -> Result<usize> {
        self.c.compose(g, f).ok_or_else(|| {
            Error::NotComposable(format!(
                "{}∘{} is undefined in the category",
                self.c.morphisms()[g],
                self.c.morphisms()[f]
            ))
        })
    }

    fn vertex(&self, x: usize, t: usize) -> Result<usize> {
        if self.in_k[x] {
            self.f_at(VERTEX, x, t)
        } else {
            self.f_at(VERTEX, x, self.end_vertex(Move::Stay0))
        }
    }

    fn edge(&self, cell: usize, x: usize, j: usize) -> Result<usize> {
        if let Some(from) = self.section[EDGE][cell] {
            return Ok(self.f.apply(EDGE, from));
        }
        let (a, b) = (self.l.source(x), self.l.target(x));
        let mv = self.moves[&j];
        let (ka, kb) = (self.in_k[a], self.in_k[b]);
        if !ka && !kb && self.l.shape() == Shape::ReflexiveGraph && self.l.is_identity_edge(x) {
            let obj = self.vertex(a, self.end_vertex(Move::Stay0))?;
            return Ok(self.c.identity(obj));
        }
        let base = self.along(x)?;
        match (ka, kb, mv) {
            (_, _, Move::Stay0) => Ok(base),
            (false, false, _) => Ok(base),
            (true, false, Move::Stay1 | Move::Down) => self.compose(base, self.vertical(a, Move::Down)?),
            (true, false, Move::Up) => Ok(base),
            (false, true, Move::Stay1 | Move::Up) => self.compose(self.vertical(b, Move::Up)?, base),
            (false, true, Move::Down) => Ok(base),
            (true, true, Move::Stay1) => {
                let inner = self.compose(base, self.vertical(a, Move::Down)?)?;
                self.compose(self.vertical(b, Move::Up)?, inner)
            }
            (true, true, Move::Down) => self.compose(base, self.vertical(a, Move::Down)?),
            (true, true, Move::Up) => self.compose(self.vertical(b, Move::Up)?, base),
        }
    }
}

/// The diagonal `L⊗I → C` of an endpoint corner into (the underlying graph
/// of) a category, by case analysis on whether the ends of each edge lie in
/// `K`. For the mirrored end the roles of `u` and `d` are exchanged.
///
/// On plain graphs the vertical edges `(a, d)` exist only over loops, so the
/// construction needs a loop in `K` at each vertex where it is consulted and
/// reports [`Error::Inapplicable`] otherwise.
pub fn explicit_lift_category(corner: &CornerMap, f: &PresheafMap, c: &Category) -> Result<PresheafMap> {
    let e = endpoint_corner(corner, |s| s.is_graph_like())?;
    check_top(corner, f)?;
    let shape = corner.map.cod().shape();
    if **f.cod() != *c.carrier(shape)? {
        return Err(Error::invalid("top map must land in the category's underlying graph"));
    }
    let lc = &corner.target_cylinder;
    let level = lc.level.as_ref().expect("checked");
    let interval = level.cod();
    let t0 = e.to_string();
    let t1 = (1 - e).to_string();
    let stay_label = |t: &str| {
        if shape == Shape::ReflexiveGraph {
            interval.identity_loop(interval.require(VERTEX, t).expect("interval ends"))
        } else {
            interval.require(EDGE, &format!("l{t}")).expect("interval loops")
        }
    };
    let (up, down) = if e == 0 { ("u", "d") } else { ("d", "u") };
    let interval_edges = [stay_label(&t0), stay_label(&t1), interval.require(EDGE, up)?, interval.require(EDGE, down)?];
    let moves = HashMap::from([
        (interval_edges[0], Move::Stay0),
        (interval_edges[1], Move::Stay1),
        (interval_edges[2], Move::Up),
        (interval_edges[3], Move::Down),
    ]);
    let lift = CategoryLift {
        corner,
        f,
        c,
        lc,
        l: corner.seed.cod(),
        section: corner.map.section_table(),
        in_k: corner.seed.image_mask()[VERTEX].clone(),
        e,
        moves,
        interval_edges,
    };
    let obj = &lc.object;
    let vertex_on = (0..obj.len(VERTEX))
        .map(|v| lift.vertex(lc.sigma.apply(VERTEX, v), level.apply(VERTEX, v)))
        .collect::<Result<Vec<_>>>()?;
    let edge_on = (0..obj.len(EDGE))
        .map(|x| lift.edge(x, lc.sigma.apply(EDGE, x), level.apply(EDGE, x)))
        .collect::<Result<Vec<_>>>()?;
    finish_lift(lift.corner, f, vec![vertex_on, edge_on])
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cylinder::{corner_endpoint, ProductCylinder};
    use crate::search::{enumerate_homs, Guard};

    fn set(xs: &[&str]) -> Obj {
        Arc::new(Presheaf::set(xs).unwrap())
    }

    #[test]
    fn singleton_section_hits_the_singleton_pair() {
        let w = m2_retract_set(&set(&["x"]), 3).unwrap();
        let p = w.s.apply(0, 0);
        assert_eq!(w.s.cod().label(0, p), "1:0");
        assert_eq!(w.pairs[1], vec![0]);
        assert!(tags_valid(&w.steps));
    }

    #[test]
    fn retract_round_trips_words() {
        let w = m2_retract_set(&set(&["x", "y"]), 2).unwrap();
        let xy = w.tx.object().require(0, "(x,y)").unwrap();
        assert_eq!(w.v.apply(0, w.u.apply(0, xy)), xy);
        // pairs: ∅, {x}, {y}, and two orderings of {x, y}
        assert_eq!(w.pairs.len(), 5);
    }

    #[test]
    fn oversized_sets_are_refused() {
        let x = set(&["a", "b", "c", "d", "e"]);
        assert!(matches!(m2_retract_set(&x, 1), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn tower_on_a_point_and_a_loop() {
        let pt = Arc::new(Presheaf::graph::<&str>(&["a"], &[]).unwrap());
        let w = m2_tower_graph(&pt, 2, 2).unwrap();
        assert_eq!(w.section_domain.len(), 1);
        assert!(tags_valid(&w.steps));
        let lp = Arc::new(Presheaf::graph(&["v"], &[("l", "v", "v")]).unwrap());
        let w = m2_tower_graph(&lp, 2, 3).unwrap();
        assert_eq!(w.n, 2);
        assert_eq!(w.unreached, 1);
        // s(ℓℓ) is created at stage 2 and is not an image of stage 1
        let ll = w.section_domain.object().require(EDGE, "(l,l)").unwrap();
        let cell = w.s.apply(EDGE, ll);
        assert!(!w.h[2].image_mask()[EDGE][cell]);
    }

    #[test]
    fn tower_on_an_edge() {
        let g = Arc::new(Presheaf::graph(&["0", "1"], &[("f", "0", "1")]).unwrap());
        let w = m2_tower_graph(&g, 1, 1).unwrap();
        let f = w.section_domain.object().require(EDGE, "(f)").unwrap();
        assert_eq!(w.s.apply(EDGE, f), w.h_total.apply(EDGE, 0));
    }

    #[test]
    fn monoid_lift_copies_the_chosen_end() {
        let inst = ProductCylinder::set2();
        let k = set(&["a"]);
        let l = set(&["a", "b"]);
        let j = PresheafMap::new(k, l, vec![vec![0]]).unwrap();
        let corner = corner_endpoint(&inst, &j, 1).unwrap();
        let a = set(&["p", "q"]);
        for f in enumerate_homs(corner.map.dom(), &a, Guard::default()).unwrap() {
            let d = explicit_lift_monoid(&corner, &f).unwrap();
            let b0 = corner.target_cylinder.pair(0, 1, 0).unwrap();
            let b1 = corner.target_cylinder.pair(0, 1, 1).unwrap();
            assert_eq!(d.apply(0, b0), d.apply(0, b1));
        }
    }

    fn edge_seed(shape: Shape) -> PresheafMap {
        let (k, l) = match shape {
            Shape::ReflexiveGraph => (
                Presheaf::reflexive_graph::<&str>(&["a", "b"], &[]).unwrap(),
                Presheaf::reflexive_graph(&["a", "b"], &[("e", "a", "b")]).unwrap(),
            ),
            _ => (
                Presheaf::graph(&["a", "b"], &[("la", "a", "a"), ("lb", "b", "b")]).unwrap(),
                Presheaf::graph(&["a", "b"], &[("e", "a", "b"), ("la", "a", "a"), ("lb", "b", "b")]).unwrap(),
            ),
        };
        let (k, l) = (Arc::new(k), Arc::new(l));
        let mut search = crate::search::HomSearch::new(&k, &l, Guard::default()).unwrap();
        search.injective();
        search.first(&k, &l).unwrap().unwrap()
    }

    #[test]
    fn category_lift_uses_the_three_fold_composite() {
        let inst = ProductCylinder::reflexive_graph_interval();
        let c = Category::groupoid_interval();
        let carrier = c.carrier(Shape::ReflexiveGraph).unwrap();
        for e in 0..2 {
            let corner = corner_endpoint(&inst, &edge_seed(Shape::ReflexiveGraph), e).unwrap();
            let homs = enumerate_homs(corner.map.dom(), &carrier, Guard::default()).unwrap();
            assert!(!homs.is_empty());
            for f in homs {
                let d = explicit_lift_category(&corner, &f, &c).unwrap();
                assert!(maps_equal(&corner.map.then(&d).unwrap(), &f));
            }
        }
    }

    #[test]
    fn category_lift_on_plain_graphs_needs_loops() {
        let inst = ProductCylinder::graph_interval();
        let c = Category::groupoid_interval();
        let carrier = c.carrier(Shape::Graph).unwrap();
        let corner = corner_endpoint(&inst, &edge_seed(Shape::Graph), 0).unwrap();
        let f = enumerate_homs(corner.map.dom(), &carrier, Guard::default()).unwrap().remove(0);
        assert!(explicit_lift_category(&corner, &f, &c).is_ok());

        let bare = Arc::new(Presheaf::graph::<&str>(&["a", "b"], &[]).unwrap());
        let l = Arc::new(Presheaf::graph(&["a", "b"], &[("e", "a", "b")]).unwrap());
        let j = PresheafMap::new(bare, l, vec![vec![0, 1], vec![]]).unwrap();
        let corner = corner_endpoint(&inst, &j, 0).unwrap();
        let homs = enumerate_homs(corner.map.dom(), &carrier, Guard::default()).unwrap();
        let err = explicit_lift_category(&corner, &homs[0], &c).unwrap_err();
        assert!(matches!(err, Error::Inapplicable(_)));
    }
}
