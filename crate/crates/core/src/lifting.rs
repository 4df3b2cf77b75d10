//! Lifting problems, right lifting property checks, and depth-bounded
//! generation of anodyne families from seeds and generating monos.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cylinder::{corner_endpoint, corner_full, Cylinder};
use crate::error::{Error, Result};
use crate::map::{same_object, PresheafMap};
use crate::object::{Obj, Presheaf};
use crate::search::{enumerate_homs, Guard, HomSearch};
use crate::shape::Shape;
use crate::simplicial;

/// A commuting square
///
/// ```text
/// A --u--> X
/// |        |
/// i        p
/// v        v
/// B --v--> Y
/// ```
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: PresheafMap,
    pub p: PresheafMap,
    pub u: PresheafMap,
    pub v: PresheafMap,
}

impl LiftingProblem {
    /// Validates shapes and commutativity.
    pub fn new(i: PresheafMap, p: PresheafMap, u: PresheafMap, v: PresheafMap) -> Result<LiftingProblem> {
        let fits = same_object(u.dom(), i.dom())
            && same_object(u.cod(), p.dom())
            && same_object(v.dom(), i.cod())
            && same_object(v.cod(), p.cod());
        if !fits {
            return Err(Error::NotComposable("square sides do not fit together".into()));
        }
        if u.then(&p)?.table() != i.then(&v)?.table() {
            return Err(Error::invalid("square does not commute"));
        }
        Ok(LiftingProblem { i, p, u, v })
    }

    /// Whether `d: B -> X` solves the problem: `d∘i = u` and `p∘d = v`.
    pub fn is_diagonal(&self, d: &PresheafMap) -> bool {
        same_object(d.dom(), self.i.cod())
            && same_object(d.cod(), self.p.dom())
            && self.i.then(d).map(|m| m.table() == self.u.table()).unwrap_or(false)
            && d.then(&self.p).map(|m| m.table() == self.v.table()).unwrap_or(false)
    }
}

/// The lexicographically least diagonal, found exhaustively.
pub fn solve_lift(problem: &LiftingProblem, guard: Guard) -> Result<Option<PresheafMap>> {
    let b = problem.i.cod();
    let x = problem.p.dom();
    let mut search = HomSearch::new(b, x, guard)?;
    for s in 0..b.sort_count() {
        for cell in 0..b.len(s) {
            let over = problem.v.apply(s, cell);
            search.restrict(s, cell, |c| problem.p.apply(s, c) == over);
        }
        for a in 0..problem.i.dom().len(s) {
            search.fix(s, problem.i.apply(s, a), problem.u.apply(s, a));
        }
    }
    search.first(b, x)
}

/// How an anodyne family entry arose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The seed with this index.
    Seed(usize),
    /// `corner_endpoint(generator, endpoint)`.
    EndpointCorner { generator: usize, endpoint: usize },
    /// `corner_full` of the entry with this index.
    Corner { parent: usize },
}

#[derive(Clone, Debug)]
pub struct AnodyneEntry {
    pub map: PresheafMap,
    pub depth: usize,
    pub provenance: Provenance,
}

/// A depth-stratified finite family approximating the anodyne class.
#[derive(Clone, Debug)]
pub struct AnodyneFamily {
    pub instance: String,
    pub depth: usize,
    pub seeds: Vec<PresheafMap>,
    pub generators: Vec<PresheafMap>,
    pub entries: Vec<AnodyneEntry>,
    /// Number of maps produced at each depth before deduplication.
    pub raw_counts: Vec<usize>,
}

impl AnodyneFamily {
    /// Entries of depth at most `n`.
    pub fn truncate(&self, n: usize) -> AnodyneFamily {
        AnodyneFamily {
            instance: self.instance.clone(),
            depth: n.min(self.depth),
            seeds: self.seeds.clone(),
            generators: self.generators.clone(),
            entries: self.entries.iter().filter(|e| e.depth <= n).cloned().collect(),
            raw_counts: self.raw_counts.iter().take(n + 1).copied().collect(),
        }
    }

    pub fn count_at(&self, depth: usize) -> usize {
        self.entries.iter().filter(|e| e.depth == depth).count()
    }
}

/// Whether two monos are isomorphic as arrows: some iso `β: B -> B'` carries
/// the image of `i` exactly onto the image of `j`.
pub fn arrows_isomorphic(i: &PresheafMap, j: &PresheafMap, guard: Guard) -> Result<bool> {
    let (b, b2) = (i.cod(), j.cod());
    let (a, a2) = (i.dom(), j.dom());
    if b.shape() != b2.shape() {
        return Ok(false);
    }
    let counts = |x: &Presheaf| (0..x.sort_count()).map(|s| x.len(s)).collect::<Vec<_>>();
    if counts(a) != counts(a2) || counts(b) != counts(b2) {
        return Ok(false);
    }
    let mi = i.image_mask();
    let mj = j.image_mask();
    let mut search = HomSearch::new(b, b2, guard)?;
    search.injective();
    for s in 0..b.sort_count() {
        for cell in 0..b.len(s) {
            let inside = mi[s][cell];
            let mask = &mj[s];
            search.restrict(s, cell, |c| mask[c] == inside);
        }
    }
    Ok(search.first(b, b2)?.is_some())
}

fn require_monos(maps: &[PresheafMap], what: &str) -> Result<()> {
    for (k, m) in maps.iter().enumerate() {
        if !m.is_mono() {
            return Err(Error::NotMono(format!("{what} {k} is not injective")));
        }
    }
    Ok(())
}

/// Generates the family: depth 0 is the seeds plus both endpoint corners of
/// every generator, depth `n+1` the full corners of the depth-`n` entries.
/// Entries isomorphic (as arrows) to an earlier entry are dropped.
pub fn generate_anodyne(
    inst: &dyn Cylinder,
    seeds: &[PresheafMap],
    generators: &[PresheafMap],
    depth: usize,
    guard: Guard,
) -> Result<AnodyneFamily> {
    require_monos(seeds, "seed")?;
    require_monos(generators, "generator")?;
    let mut raw: Vec<(PresheafMap, Provenance)> = seeds
        .iter()
        .enumerate()
        .map(|(k, s)| (s.clone(), Provenance::Seed(k)))
        .collect();
    for (k, m) in generators.iter().enumerate() {
        for e in 0..2 {
            raw.push((
                corner_endpoint(inst, m, e)?.map,
                Provenance::EndpointCorner { generator: k, endpoint: e },
            ));
        }
    }
    let mut entries: Vec<AnodyneEntry> = Vec::new();
    let mut raw_counts = Vec::new();
    for n in 0..=depth {
        if n > 0 {
            let parents: Vec<usize> = (0..entries.len()).filter(|&k| entries[k].depth == n - 1).collect();
            raw = parents
                .par_iter()
                .map(|&k| Ok((corner_full(inst, &entries[k].map)?.map, Provenance::Corner { parent: k })))
                .collect::<Result<_>>()?;
        }
        raw_counts.push(raw.len());
        for (map, provenance) in std::mem::take(&mut raw) {
            if !map.is_mono() {
                return Err(Error::NotMono("generated entry is not injective".into()));
            }
            let mut duplicate = false;
            for e in &entries {
                if arrows_isomorphic(&e.map, &map, guard)? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                entries.push(AnodyneEntry {
                    map,
                    depth: n,
                    provenance,
                });
            }
        }
    }
    Ok(AnodyneFamily {
        instance: inst.name().to_string(),
        depth,
        seeds: seeds.to_vec(),
        generators: generators.to_vec(),
        entries,
        raw_counts,
    })
}

/// Standard cellular generating monos for a base category.
///
/// Sets: `∅ ↪ 1`. Graphs: `∅ ↪ •`, `• + • ↪ (• → •)` and `• ↪ loop`.
/// Reflexive graphs: `∅ ↪ •` and `• + • ↪ (• → •)`. Simplicial sets:
/// `∂Δ[n] ↪ Δ[n]` for `n ≤ cap`.
pub fn default_generators(shape: Shape) -> Result<Vec<PresheafMap>> {
    let inclusion = |k: Presheaf, l: Presheaf| -> Result<PresheafMap> {
        let (k, l) = (Arc::new(k), Arc::new(l));
        let mut search = HomSearch::new(&k, &l, Guard::default())?;
        search.injective();
        search.first(&k, &l)?.ok_or_else(|| Error::invalid("generator has no inclusion"))
    };
    match shape {
        Shape::Set => Ok(vec![inclusion(Presheaf::empty(shape), Presheaf::set(&["a"])?)?]),
        Shape::Graph => Ok(vec![
            inclusion(Presheaf::empty(shape), Presheaf::graph::<&str>(&["a"], &[])?)?,
            inclusion(
                Presheaf::graph::<&str>(&["a", "b"], &[])?,
                Presheaf::graph(&["a", "b"], &[("e", "a", "b")])?,
            )?,
            inclusion(
                Presheaf::graph::<&str>(&["a"], &[])?,
                Presheaf::graph(&["a"], &[("l", "a", "a")])?,
            )?,
        ]),
        Shape::ReflexiveGraph => Ok(vec![
            inclusion(Presheaf::empty(shape), Presheaf::reflexive_graph::<&str>(&["a"], &[])?)?,
            inclusion(
                Presheaf::reflexive_graph::<&str>(&["a", "b"], &[])?,
                Presheaf::reflexive_graph(&["a", "b"], &[("e", "a", "b")])?,
            )?,
        ]),
        Shape::Simplicial { cap } => (0..=cap).map(|n| simplicial::boundary(n, cap)).collect(),
    }
}

/// A commuting square over a family entry that admits no diagonal.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub entry: usize,
    pub problem: LiftingProblem,
}

#[derive(Clone, Debug)]
pub struct RlpVerdict {
    pub holds: bool,
    pub entries_checked: usize,
    pub squares_checked: u64,
    /// The least failing square in (entry, bottom, top) enumeration order.
    pub counterexample: Option<Counterexample>,
}

fn rlp_against(i: &PresheafMap, p: &PresheafMap, guard: Guard) -> Result<(u64, Option<LiftingProblem>)> {
    let mut squares = 0;
    let (a, b, x) = (i.dom(), i.cod(), p.dom());
    for v in enumerate_homs(b, p.cod(), guard)? {
        let vi = i.then(&v)?;
        let mut search = HomSearch::new(a, x, guard)?;
        for s in 0..a.sort_count() {
            for cell in 0..a.len(s) {
                let over = vi.apply(s, cell);
                search.restrict(s, cell, |c| p.apply(s, c) == over);
            }
        }
        let mut failure = None;
        let mut error = None;
        search.run(|table| {
            squares += 1;
            let u = PresheafMap::new_unchecked(a.clone(), x.clone(), table.to_vec());
            let problem = LiftingProblem {
                i: i.clone(),
                p: p.clone(),
                u,
                v: v.clone(),
            };
            match solve_lift(&problem, guard) {
                Ok(Some(_)) => true,
                Ok(None) => {
                    failure = Some(problem);
                    false
                }
                Err(e) => {
                    error = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = error {
            return Err(e);
        }
        if failure.is_some() {
            return Ok((squares, failure));
        }
    }
    Ok((squares, None))
}

/// Whether `p` has the right lifting property against every entry of the family.
pub fn has_rlp(p: &PresheafMap, family: &AnodyneFamily, guard: Guard) -> Result<RlpVerdict> {
    let results: Vec<(u64, Option<LiftingProblem>)> = family
        .entries
        .par_iter()
        .map(|e| rlp_against(&e.map, p, guard))
        .collect::<Result<_>>()?;
    let mut squares_checked = 0;
    let mut counterexample = None;
    let mut entries_checked = 0;
    for (k, (squares, failure)) in results.into_iter().enumerate() {
        squares_checked += squares;
        entries_checked += 1;
        if let Some(problem) = failure {
            counterexample = Some(Counterexample { entry: k, problem });
            break;
        }
    }
    Ok(RlpVerdict {
        holds: counterexample.is_none(),
        entries_checked,
        squares_checked,
        counterexample,
    })
}

/// Fibrancy of `A` relative to a depth-bounded family: a necessary condition only.
#[derive(Clone, Debug)]
pub struct FibrancyVerdict {
    pub rlp: RlpVerdict,
    pub depth: usize,
}

impl FibrancyVerdict {
    pub fn holds(&self) -> bool {
        self.rlp.holds
    }

    pub fn caveat(&self) -> String {
        format!("necessary condition at depth {}", self.depth)
    }
}

/// `has_rlp(A -> 1, family)`.
pub fn is_naively_fibrant_upto(a: &Obj, family: &AnodyneFamily, guard: Guard) -> Result<FibrancyVerdict> {
    let one = Arc::new(Presheaf::terminal(a.shape()));
    let p = PresheafMap::to_terminal(a, &one);
    Ok(FibrancyVerdict {
        rlp: has_rlp(&p, family, guard)?,
        depth: family.depth,
    })
}
