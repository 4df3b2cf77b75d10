//! Truncated simplicial sets: standard simplices, boundaries, horns, nerves,
//! horn filling and τ0 classes.
//!
//! Simplices of `Δ[n]` are monotone maps `[k] -> [n]`, written as digit
//! strings (`"012"`, `"001"`); `d_i` deletes position `i` and `s_i` repeats it.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Category;
use crate::cylinder::ProductCylinder;
use crate::error::{Error, Result};
use crate::homotopy::{homotopy_classes, HomClasses};
use crate::limits::subobject;
use crate::map::PresheafMap;
use crate::object::{Obj, Presheaf};
use crate::search::{enumerate_homs, Guard, HomSearch};
use crate::shape::{Shape, MAX_SIMPLICIAL_CAP};

fn check_cap(cap: usize) -> Result<()> {
    if cap > MAX_SIMPLICIAL_CAP {
        return Err(Error::CapExceeded(format!(
            "simplicial cap {cap} exceeds the supported maximum {MAX_SIMPLICIAL_CAP}"
        )));
    }
    Ok(())
}

fn digits(seq: &[u8]) -> String {
    seq.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Simplicial set whose `k`-cells are sequences of length `k+1` over
/// `0..vertices`, all of them or only the non-decreasing ones.
fn sequence_object(vertices: usize, cap: usize, monotone: bool) -> Result<Obj> {
    check_cap(cap)?;
    if vertices > 10 {
        return Err(Error::invalid("sequence objects support at most 10 vertices"));
    }
    let shape = Shape::simplicial(cap);
    let mut seqs: Vec<Vec<Vec<u8>>> = Vec::with_capacity(cap + 1);
    let mut level: Vec<Vec<u8>> = (0..vertices as u8).map(|v| vec![v]).collect();
    for _ in 0..=cap {
        let next = level
            .iter()
            .flat_map(|s| {
                let lo = if monotone { *s.last().expect("nonempty") } else { 0 };
                (lo..vertices as u8).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
        seqs.push(std::mem::replace(&mut level, next));
    }
    let index: Vec<HashMap<&[u8], usize>> = seqs
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
        .collect();
    let mut ops = Vec::new();
    for n in 1..=cap {
        for i in 0..=n {
            ops.push(
                seqs[n]
                    .iter()
                    .map(|s| {
                        let mut t = s.clone();
                        t.remove(i);
                        index[n - 1][t.as_slice()]
                    })
                    .collect(),
            );
        }
    }
    for n in 0..cap {
        for i in 0..=n {
            ops.push(
                seqs[n]
                    .iter()
                    .map(|s| {
                        let mut t = s.clone();
                        t.insert(i, s[i]);
                        index[n + 1][t.as_slice()]
                    })
                    .collect(),
            );
        }
    }
    let cells = seqs.iter().map(|l| l.iter().map(|s| digits(s)).collect()).collect();
    Ok(Arc::new(Presheaf::assemble(shape, cells, ops)?.0))
}

/// `Δ[n]` truncated at `cap`.
pub fn standard_simplex(n: usize, cap: usize) -> Result<Obj> {
    if n > 9 {
        return Err(Error::invalid("standard simplices are limited to n ≤ 9"));
    }
    sequence_object(n + 1, cap, true)
}

/// The chaotic simplicial set on `vertices` points: every sequence is a
/// simplex. On two points this is the nerve of the groupoid interval.
pub fn chaotic(vertices: usize, cap: usize) -> Result<Obj> {
    sequence_object(vertices, cap, false)
}

fn vertex_set(label: &str) -> u16 {
    label.bytes().fold(0, |m, b| m | 1 << (b - b'0'))
}

fn simplex_subobject(n: usize, cap: usize, keep: impl Fn(u16) -> bool) -> Result<PresheafMap> {
    if n > cap {
        return Err(Error::CapExceeded(format!("dimension {n} exceeds cap {cap}")));
    }
    let simplex = standard_simplex(n, cap)?;
    let mask = (0..=cap)
        .map(|k| simplex.labels(k).iter().map(|l| keep(vertex_set(l))).collect())
        .collect::<Vec<Vec<bool>>>();
    subobject(&simplex, &mask)
}

/// `∂Δ[n] ↪ Δ[n]`: simplices missing at least one vertex.
pub fn boundary(n: usize, cap: usize) -> Result<PresheafMap> {
    let full: u16 = (1 << (n + 1)) - 1;
    simplex_subobject(n, cap, |vs| vs != full)
}

/// `Λ^k[n] ↪ Δ[n]`: simplices missing some vertex other than `k`.
pub fn horn(n: usize, k: usize, cap: usize) -> Result<PresheafMap> {
    if k > n {
        return Err(Error::invalid(format!("horn index {k} exceeds dimension {n}")));
    }
    let full: u16 = (1 << (n + 1)) - 1;
    simplex_subobject(n, cap, |vs| (vs | 1 << k) != full)
}

/// The nerve of a category truncated at `cap`: `n`-cells are composable
/// chains `m1|m2|…|mn` (first arrow first), `0`-cells are objects.
pub fn nerve(c: &Category, cap: usize, guard: Guard) -> Result<Obj> {
    check_cap(cap)?;
    let shape = Shape::simplicial(cap);
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..c.objects().len()).map(|o| vec![o]).collect()];
    // level 0 stores objects; higher levels store morphism chains
    let mut total = chains[0].len() as u64;
    for n in 1..=cap {
        let mut level = Vec::new();
        if n == 1 {
            level.extend((0..c.morphisms().len()).map(|m| vec![m]));
        } else {
            for ch in &chains[n - 1] {
                let end = c.target(*ch.last().expect("nonempty chain"));
                for m in 0..c.morphisms().len() {
                    if c.source(m) == end {
                        let mut next = ch.clone();
                        next.push(m);
                        level.push(next);
                    }
                }
            }
        }
        total += level.len() as u64;
        if total > guard.limit() {
            return Err(Error::GuardExceeded { limit: guard.limit() });
        }
        chains.push(level);
    }
    let index: Vec<HashMap<&[usize], usize>> = chains
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
        .collect();
    let vertex = |n: usize, ch: &[usize], i: usize| -> usize {
        if n == 0 {
            ch[0]
        } else if i == 0 {
            c.source(ch[0])
        } else {
            c.target(ch[i - 1])
        }
    };
    let mut ops = vec![Vec::new(); shape.operators().len()];
    for n in 1..=cap {
        for i in 0..=n {
            ops[shape.face(n, i)] = chains[n]
                .iter()
                .map(|ch| {
                    let face: Vec<usize> = if n == 1 {
                        vec![vertex(1, ch, 1 - i)]
                    } else if i == 0 {
                        ch[1..].to_vec()
                    } else if i == n {
                        ch[..n - 1].to_vec()
                    } else {
                        let mut f = ch[..i - 1].to_vec();
                        f.push(c.compose(ch[i], ch[i - 1]).expect("chains compose"));
                        f.extend_from_slice(&ch[i + 1..]);
                        f
                    };
                    index[n - 1][face.as_slice()]
                })
                .collect();
        }
    }
    for n in 0..cap {
        for i in 0..=n {
            ops[shape.degeneracy(n, i)] = chains[n]
                .iter()
                .map(|ch| {
                    let id = c.identity(vertex(n, ch, i));
                    let deg: Vec<usize> = if n == 0 {
                        vec![id]
                    } else {
                        let mut d = ch[..i].to_vec();
                        d.push(id);
                        d.extend_from_slice(&ch[i..]);
                        d
                    };
                    index[n + 1][deg.as_slice()]
                })
                .collect();
        }
    }
    let cells = chains
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter()
                .map(|ch| {
                    if n == 0 {
                        c.objects()[ch[0]].clone()
                    } else {
                        ch.iter().map(|&m| c.morphisms()[m].as_str()).collect::<Vec<_>>().join("|")
                    }
                })
                .collect()
        })
        .collect();
    Ok(Arc::new(Presheaf::assemble(shape, cells, ops)?.0))
}

/// `X` with cells above dimension `cap` dropped.
pub fn truncate(x: &Presheaf, cap: usize) -> Result<Obj> {
    let Shape::Simplicial { cap: old } = x.shape() else {
        return Err(Error::ShapeMismatch {
            left: "simplicial set".into(),
            right: x.shape().to_string(),
        });
    };
    if cap > old {
        return Err(Error::CapExceeded(format!("cannot raise cap {old} to {cap}")));
    }
    let shape = Shape::simplicial(cap);
    let old_shape = x.shape();
    let cells = (0..=cap).map(|k| x.labels(k).to_vec()).collect();
    let mut ops = vec![Vec::new(); shape.operators().len()];
    for n in 1..=cap {
        for i in 0..=n {
            ops[shape.face(n, i)] = x.op_table(old_shape.face(n, i)).to_vec();
        }
    }
    for n in 0..cap {
        for i in 0..=n {
            ops[shape.degeneracy(n, i)] = x.op_table(old_shape.degeneracy(n, i)).to_vec();
        }
    }
    Ok(Arc::new(Presheaf::assemble(shape, cells, ops)?.0))
}

/// Filling record for all horns `Λ^k[n] → X`.
#[derive(Clone, Debug)]
pub struct HornReport {
    pub n: usize,
    pub k: usize,
    pub horns: usize,
    pub filled: usize,
    /// The first horn, in enumeration order, with no filler.
    pub unfilled: Option<PresheafMap>,
}

impl HornReport {
    pub fn all_filled(&self) -> bool {
        self.unfilled.is_none()
    }
}

/// Enumerates every `Λ^k[n] → X` and searches an extension to `Δ[n]`.
pub fn horn_filler(x: &Obj, n: usize, k: usize, guard: Guard) -> Result<HornReport> {
    let Shape::Simplicial { cap } = x.shape() else {
        return Err(Error::ShapeMismatch {
            left: "simplicial set".into(),
            right: x.shape().to_string(),
        });
    };
    let inc = horn(n, k, cap)?;
    let horns = enumerate_homs(inc.dom(), x, guard)?;
    let fills = horns
        .par_iter()
        .map(|h| {
            let mut search = HomSearch::new(inc.cod(), x, guard)?;
            for s in 0..=cap {
                for c in 0..inc.dom().len(s) {
                    search.fix(s, inc.apply(s, c), h.apply(s, c));
                }
            }
            Ok(search.first(inc.cod(), x)?.is_some())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(HornReport {
        n,
        k,
        horns: horns.len(),
        filled: fills.iter().filter(|&&f| f).count(),
        unfilled: fills.iter().position(|&f| !f).map(|i| horns[i].clone()),
    })
}

/// `τ0(X, A)` at the cap of `X`: `Hom(X, A)` modulo homotopies through the
/// truncated `X × J^∞`.
pub fn tau0_classes(x: &Obj, a: &Obj, guard: Guard) -> Result<HomClasses> {
    let Shape::Simplicial { cap } = x.shape() else {
        return Err(Error::ShapeMismatch {
            left: "simplicial set".into(),
            right: x.shape().to_string(),
        });
    };
    let inst = ProductCylinder::simplicial_jinf(cap)?;
    homotopy_classes(&inst, x, a, guard)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nondegenerate(x: &Presheaf, k: usize) -> usize {
        x.labels(k).iter().filter(|l| l.as_bytes().windows(2).all(|w| w[0] != w[1])).count()
    }

    #[test]
    fn delta_zero_is_a_point() {
        let p = standard_simplex(0, 3).unwrap();
        assert!((0..=3).all(|k| p.len(k) == 1));
        assert_eq!(*p, Presheaf::terminal(Shape::simplicial(3)));
    }

    #[test]
    fn boundary_of_interval_is_two_points() {
        let b = boundary(1, 2).unwrap();
        assert_eq!(b.dom().len(0), 2);
        assert_eq!(nondegenerate(b.dom(), 1), 0);
        assert!(b.is_mono());
    }

    #[test]
    fn inner_horn_of_triangle() {
        let h = horn(2, 1, 2).unwrap();
        assert_eq!(h.dom().len(0), 3);
        assert_eq!(nondegenerate(h.dom(), 1), 2);
        assert_eq!(nondegenerate(h.dom(), 2), 0);
        assert!(h.is_mono());
    }

    #[test]
    fn simplex_cell_counts_are_binomial() {
        // oracle: monotone maps [k] -> [n] number C(n+k+1, k+1)
        let binom = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
        let d = standard_simplex(2, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(d.len(k), binom(2 + k + 1, k + 1));
        }
    }

    #[test]
    fn chaotic_interval_has_all_sequences() {
        let j = chaotic(2, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(j.len(k), 1 << (k + 1));
        }
        assert_eq!(nondegenerate(&j, 1), 2);
    }

    #[test]
    fn nerve_of_terminal_is_a_point() {
        let n = nerve(&Category::terminal(), 3, Guard::default()).unwrap();
        assert!((0..=3).all(|k| n.len(k) == 1));
    }

    #[test]
    fn nerve_of_groupoid_interval_is_chaotic() {
        let n = nerve(&Category::groupoid_interval(), 2, Guard::default()).unwrap();
        let j = chaotic(2, 2).unwrap();
        assert_eq!(n.labels(1), ["1_0", "1_1", "d", "u"]);
        assert!(!crate::search::enumerate_isos(&n, &j, Guard::default()).unwrap().is_empty());
    }

    #[test]
    fn two_chain_nerve_has_one_nondegenerate_triangle() {
        let n = nerve(&Category::chain(2), 3, Guard::default()).unwrap();
        let nondeg = n.labels(2).iter().filter(|l| !l.split('|').any(|m| m.starts_with("1_"))).count();
        assert_eq!(nondeg, 1);
    }

    #[test]
    fn horns_in_the_two_chain() {
        let n = nerve(&Category::chain(2), 2, Guard::default()).unwrap();
        assert!(horn_filler(&n, 2, 1, Guard::default()).unwrap().all_filled());
        let outer = horn_filler(&n, 2, 0, Guard::default()).unwrap();
        assert!(!outer.all_filled());
        assert!(outer.filled < outer.horns);
    }

    #[test]
    fn tau0_counts() {
        let pt = standard_simplex(0, 2).unwrap();
        let g = nerve(&Category::groupoid_interval(), 2, Guard::default()).unwrap();
        assert_eq!(tau0_classes(&pt, &g, Guard::default()).unwrap().class_count(), 1);
        let d = nerve(&Category::discrete(2), 2, Guard::default()).unwrap();
        assert_eq!(tau0_classes(&pt, &d, Guard::default()).unwrap().class_count(), 2);
    }

    #[test]
    fn truncation_drops_top_cells() {
        let d = standard_simplex(1, 3).unwrap();
        assert_eq!(*truncate(&d, 1).unwrap(), *standard_simplex(1, 1).unwrap());
    }

    #[test]
    fn cap_overflow_is_refused() {
        assert!(matches!(standard_simplex(1, 9), Err(Error::CapExceeded(_))));
        assert!(matches!(horn(3, 1, 2), Err(Error::CapExceeded(_))));
    }
}
