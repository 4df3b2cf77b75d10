//! Finite products, coproducts, pushouts and chain colimits, computed sort-wise.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::{same_object, PresheafMap};
use crate::object::{Obj, Presheaf};
use crate::union_find::UnionFind;

fn same_shape(x: &Presheaf, y: &Presheaf) -> Result<()> {
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch {
            left: x.shape().to_string(),
            right: y.shape().to_string(),
        });
    }
    Ok(())
}

/// Binary coproduct with its injections; cells are prefixed `l:` and `r:`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Obj,
    pub left: PresheafMap,
    pub right: PresheafMap,
}

impl Coproduct {
    /// The map `[f, g]: X + Y -> Z`.
    pub fn copair(&self, f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
        if !same_object(f.dom(), self.left.dom()) || !same_object(g.dom(), self.right.dom()) {
            return Err(Error::NotComposable("copair legs do not start at the summands".into()));
        }
        if !same_object(f.cod(), g.cod()) {
            return Err(Error::NotComposable("copair legs have different codomains".into()));
        }
        let sorts = self.object.sort_count();
        let mut on: Vec<Vec<usize>> = (0..sorts).map(|s| vec![0; self.object.len(s)]).collect();
        for s in 0..sorts {
            for (x, &c) in self.left.table()[s].iter().enumerate() {
                on[s][c] = f.apply(s, x);
            }
            for (y, &c) in self.right.table()[s].iter().enumerate() {
                on[s][c] = g.apply(s, y);
            }
        }
        Ok(PresheafMap::new_unchecked(self.object.clone(), f.cod().clone(), on))
    }
}

pub fn coproduct(x: &Obj, y: &Obj) -> Result<Coproduct> {
    same_shape(x, y)?;
    let family = coproduct_with_prefixes(&[x.clone(), y.clone()], &["l".to_string(), "r".to_string()], x.shape())?;
    let mut inj = family.injections.into_iter();
    Ok(Coproduct {
        object: family.object,
        left: inj.next().expect("left injection"),
        right: inj.next().expect("right injection"),
    })
}

/// Coproduct of a list of objects; summand `k` is prefixed with its zero-padded index.
#[derive(Clone, Debug)]
pub struct CoproductFamily {
    pub object: Obj,
    pub injections: Vec<PresheafMap>,
}

impl CoproductFamily {
    /// The map out of the coproduct determined by one leg per summand.
    pub fn copair(&self, legs: &[PresheafMap], cod: &Obj) -> Result<PresheafMap> {
        if legs.len() != self.injections.len() {
            return Err(Error::invalid("one leg per summand required"));
        }
        let sorts = self.object.sort_count();
        let mut on: Vec<Vec<usize>> = (0..sorts).map(|s| vec![0; self.object.len(s)]).collect();
        for (inj, leg) in self.injections.iter().zip(legs) {
            if !same_object(leg.dom(), inj.dom()) || !same_object(leg.cod(), cod) {
                return Err(Error::NotComposable("copair leg does not match its summand".into()));
            }
            for (s, table) in on.iter_mut().enumerate() {
                for (x, &c) in inj.table()[s].iter().enumerate() {
                    table[c] = leg.apply(s, x);
                }
            }
        }
        Ok(PresheafMap::new_unchecked(self.object.clone(), cod.clone(), on))
    }
}

pub fn coproduct_all(objects: &[Obj], shape: crate::shape::Shape) -> Result<CoproductFamily> {
    let width = objects.len().saturating_sub(1).to_string().len();
    let prefixes: Vec<String> = (0..objects.len()).map(|k| format!("{k:0width$}")).collect();
    coproduct_with_prefixes(objects, &prefixes, shape)
}

fn coproduct_with_prefixes(objects: &[Obj], prefixes: &[String], shape: crate::shape::Shape) -> Result<CoproductFamily> {
    for o in objects {
        if o.shape() != shape {
            return Err(Error::ShapeMismatch {
                left: shape.to_string(),
                right: o.shape().to_string(),
            });
        }
    }
    let operators = shape.operators();
    let sorts = shape.sort_count();
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); sorts];
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(objects.len());
    for (o, prefix) in objects.iter().zip(prefixes) {
        let mut off = Vec::with_capacity(sorts);
        for s in 0..sorts {
            off.push(cells[s].len());
            cells[s].extend(o.labels(s).iter().map(|l| format!("{prefix}:{l}")));
        }
        offsets.push(off);
    }
    let mut ops: Vec<Vec<usize>> = Vec::with_capacity(operators.len());
    for (k, op) in operators.iter().enumerate() {
        let mut t = Vec::with_capacity(cells[op.from].len());
        for (o, off) in objects.iter().zip(&offsets) {
            t.extend(o.op_table(k).iter().map(|&y| y + off[op.to]));
        }
        ops.push(t);
    }
    let (object, perm) = Presheaf::assemble(shape, cells, ops)?;
    let object = Arc::new(object);
    let injections = objects
        .iter()
        .zip(&offsets)
        .map(|(o, off)| {
            let on = (0..sorts)
                .map(|s| (0..o.len(s)).map(|c| perm[s][off[s] + c]).collect())
                .collect();
            PresheafMap::new_unchecked(o.clone(), object.clone(), on)
        })
        .collect();
    Ok(CoproductFamily { object, injections })
}

/// `f + g: X + Y -> X' + Y'` between given coproducts.
pub fn coproduct_map(f: &PresheafMap, g: &PresheafMap, source: &Coproduct, target: &Coproduct) -> Result<PresheafMap> {
    let left = f.then(&target.left)?;
    let right = g.then(&target.right)?;
    source.copair(&left, &right)
}

/// Binary product with projections; cells are labeled `(x,y)`.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Obj,
    pub left: PresheafMap,
    pub right: PresheafMap,
    pairs: Vec<Vec<usize>>,
    right_len: Vec<usize>,
}

impl Product {
    /// Cell of the product over the pair `(x, y)` in `sort`.
    pub fn pair(&self, sort: usize, x: usize, y: usize) -> usize {
        self.pairs[sort][x * self.right_len[sort] + y]
    }

    /// The map `<f, g>: Z -> X × Y`.
    pub fn tuple(&self, f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
        if !same_object(f.dom(), g.dom()) {
            return Err(Error::NotComposable("tuple legs have different domains".into()));
        }
        if !same_object(f.cod(), self.left.cod()) || !same_object(g.cod(), self.right.cod()) {
            return Err(Error::NotComposable("tuple legs do not land in the factors".into()));
        }
        let on = (0..self.object.sort_count())
            .map(|s| (0..f.dom().len(s)).map(|z| self.pair(s, f.apply(s, z), g.apply(s, z))).collect())
            .collect();
        Ok(PresheafMap::new_unchecked(f.dom().clone(), self.object.clone(), on))
    }
}

pub fn product(x: &Obj, y: &Obj) -> Result<Product> {
    same_shape(x, y)?;
    let shape = x.shape();
    let sorts = shape.sort_count();
    let mut cells = Vec::with_capacity(sorts);
    for s in 0..sorts {
        let mut c = Vec::with_capacity(x.len(s) * y.len(s));
        for a in x.labels(s) {
            for b in y.labels(s) {
                c.push(format!("({a},{b})"));
            }
        }
        cells.push(c);
    }
    let ops = shape
        .operators()
        .iter()
        .enumerate()
        .map(|(k, op)| {
            let ny_to = y.len(op.to);
            let mut t = Vec::with_capacity(x.len(op.from) * y.len(op.from));
            for a in 0..x.len(op.from) {
                for b in 0..y.len(op.from) {
                    t.push(x.op(k, a) * ny_to + y.op(k, b));
                }
            }
            t
        })
        .collect();
    let (object, perm) = Presheaf::assemble(shape, cells, ops)?;
    let object = Arc::new(object);
    let right_len: Vec<usize> = (0..sorts).map(|s| y.len(s)).collect();
    let pairs = perm;
    let mut left = Vec::with_capacity(sorts);
    let mut right = Vec::with_capacity(sorts);
    for s in 0..sorts {
        let mut l = vec![0; object.len(s)];
        let mut r = vec![0; object.len(s)];
        for a in 0..x.len(s) {
            for b in 0..y.len(s) {
                let c = pairs[s][a * right_len[s] + b];
                l[c] = a;
                r[c] = b;
            }
        }
        left.push(l);
        right.push(r);
    }
    Ok(Product {
        left: PresheafMap::new_unchecked(object.clone(), x.clone(), left),
        right: PresheafMap::new_unchecked(object.clone(), y.clone(), right),
        object,
        pairs,
        right_len,
    })
}

/// `f × g: X × Y -> X' × Y'` between given products.
pub fn product_map(f: &PresheafMap, g: &PresheafMap, source: &Product, target: &Product) -> Result<PresheafMap> {
    let a = source.left.then(f)?;
    let b = source.right.then(g)?;
    target.tuple(&a, &b)
}

/// Pushout of a span `B <-f- A -g-> C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Obj,
    /// `B -> P`
    pub left: PresheafMap,
    /// `C -> P`
    pub right: PresheafMap,
    pub f: PresheafMap,
    pub g: PresheafMap,
}

impl Pushout {
    /// The mediating map `P -> Z` for a cocone `x: B -> Z`, `y: C -> Z`.
    ///
    /// Fails if the cocone does not commute. Since the injections are jointly
    /// surjective the result is unique.
    pub fn mediate(&self, x: &PresheafMap, y: &PresheafMap) -> Result<PresheafMap> {
        if !same_object(x.dom(), self.left.dom()) || !same_object(y.dom(), self.right.dom()) {
            return Err(Error::NotComposable("cocone legs do not start at the span feet".into()));
        }
        if !same_object(x.cod(), y.cod()) {
            return Err(Error::NotComposable("cocone legs have different codomains".into()));
        }
        let sorts = self.object.sort_count();
        let mut on: Vec<Vec<Option<usize>>> = (0..sorts).map(|s| vec![None; self.object.len(s)]).collect();
        for (inj, leg) in [(&self.left, x), (&self.right, y)] {
            for s in 0..sorts {
                for (c, &p) in inj.table()[s].iter().enumerate() {
                    let img = leg.apply(s, c);
                    match on[s][p] {
                        None => on[s][p] = Some(img),
                        Some(prev) if prev == img => {}
                        Some(_) => {
                            return Err(Error::NotComposable(format!(
                                "cocone does not commute at `{}`",
                                self.object.label(s, p)
                            )))
                        }
                    }
                }
            }
        }
        let on = on
            .into_iter()
            .map(|t| t.into_iter().map(|c| c.expect("injections are jointly surjective")).collect())
            .collect();
        PresheafMap::new(self.object.clone(), x.cod().clone(), on)
    }
}

/// Pushout `(B + C)/~` with `~` generated by `f(a) ~ g(a)`; every class is
/// labeled by its lexicographically least member.
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<Pushout> {
    if !same_object(f.dom(), g.dom()) {
        return Err(Error::NotComposable("span legs have different domains".into()));
    }
    same_shape(f.cod(), g.cod())?;
    let shape = f.dom().shape();
    let sum = coproduct(f.cod(), g.cod())?;
    let sorts = shape.sort_count();
    let operators = shape.operators();

    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(sorts);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(sorts);
    for s in 0..sorts {
        let mut uf = UnionFind::new(sum.object.len(s));
        for a in 0..f.dom().len(s) {
            uf.union(sum.left.apply(s, f.apply(s, a)), sum.right.apply(s, g.apply(s, a)));
        }
        // classes come ordered by least member; sum cells are label-sorted,
        // so the least member is the least label
        let classes = uf.classes();
        let mut cls = vec![0; sum.object.len(s)];
        let mut rep = Vec::with_capacity(classes.len());
        for (k, members) in classes.iter().enumerate() {
            for &m in members {
                cls[m] = k;
            }
            rep.push(members[0]);
        }
        class_of.push(cls);
        reps.push(rep);
    }
    let cells: Vec<Vec<String>> = (0..sorts)
        .map(|s| reps[s].iter().map(|&r| sum.object.label(s, r).to_string()).collect())
        .collect();
    let mut ops = Vec::with_capacity(operators.len());
    for (k, op) in operators.iter().enumerate() {
        let t: Vec<usize> = reps[op.from]
            .iter()
            .map(|&r| class_of[op.to][sum.object.op(k, r)])
            .collect();
        ops.push(t);
    }
    let (object, perm) = Presheaf::assemble(shape, cells, ops)?;
    let object = Arc::new(object);
    let quotient = |inj: &PresheafMap| -> PresheafMap {
        let on = (0..sorts)
            .map(|s| inj.table()[s].iter().map(|&c| perm[s][class_of[s][c]]).collect())
            .collect();
        PresheafMap::new_unchecked(inj.dom().clone(), object.clone(), on)
    };
    Ok(Pushout {
        left: quotient(&sum.left),
        right: quotient(&sum.right),
        object,
        f: f.clone(),
        g: g.clone(),
    })
}

/// Colimit of a finite composable chain `X0 -> X1 -> ... -> Xn`.
#[derive(Clone, Debug)]
pub struct ChainColimit {
    pub object: Obj,
    /// `Xi -> Xn` for every stage, ending with the identity.
    pub cocone: Vec<PresheafMap>,
}

pub fn chain_colimit(chain: &[PresheafMap]) -> Result<ChainColimit> {
    let Some(last) = chain.last() else {
        return Err(Error::invalid("empty chain"));
    };
    for w in chain.windows(2) {
        if !same_object(w[0].cod(), w[1].dom()) {
            return Err(Error::NotComposable("chain stages do not compose".into()));
        }
    }
    let object = last.cod().clone();
    let mut cocone = vec![PresheafMap::identity(&object)];
    for step in chain.iter().rev() {
        let next = step.then(cocone.last().expect("nonempty"))?;
        cocone.push(next);
    }
    cocone.reverse();
    Ok(ChainColimit { object, cocone })
}

/// The subobject of `x` spanned by the cells marked in `keep`, with its inclusion.
///
/// Fails unless the marked cells are closed under every operator.
pub fn subobject(x: &Obj, keep: &[Vec<bool>]) -> Result<PresheafMap> {
    let shape = x.shape();
    let sorts = shape.sort_count();
    let kept: Vec<Vec<usize>> = (0..sorts).map(|s| (0..x.len(s)).filter(|&c| keep[s][c]).collect()).collect();
    let mut position: Vec<Vec<usize>> = (0..sorts).map(|s| vec![usize::MAX; x.len(s)]).collect();
    for s in 0..sorts {
        for (i, &c) in kept[s].iter().enumerate() {
            position[s][c] = i;
        }
    }
    let mut ops = Vec::new();
    for (k, op) in shape.operators().iter().enumerate() {
        let mut t = Vec::with_capacity(kept[op.from].len());
        for &c in &kept[op.from] {
            let img = x.op(k, c);
            if !keep[op.to][img] {
                return Err(Error::invalid(format!(
                    "cell `{}` is kept but its `{}` image `{}` is not",
                    x.label(op.from, c),
                    op.name,
                    x.label(op.to, img)
                )));
            }
            t.push(position[op.to][img]);
        }
        ops.push(t);
    }
    let cells = (0..sorts).map(|s| kept[s].iter().map(|&c| x.label(s, c).to_string()).collect()).collect();
    // kept cells are already in label order, so no permutation is needed
    let (sub, _) = Presheaf::assemble(shape, cells, ops)?;
    Ok(PresheafMap::new_unchecked(Arc::new(sub), x.clone(), kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{Shape, EDGE, VERTEX};

    fn obj(p: Presheaf) -> Obj {
        Arc::new(p)
    }

    fn point_set() -> Obj {
        obj(Presheaf::set(&["p"]).unwrap())
    }

    #[test]
    fn coproduct_of_points() {
        let c = coproduct(&point_set(), &point_set()).unwrap();
        assert_eq!(c.object.len(0), 2);
        assert_eq!(c.object.labels(0), ["l:p", "r:p"]);
    }

    #[test]
    fn coproduct_with_empty_is_relabeling() {
        let x = obj(Presheaf::set(&["a", "b"]).unwrap());
        let e = obj(Presheaf::empty(Shape::Set));
        let c = coproduct(&x, &e).unwrap();
        assert!(c.left.is_iso());
    }

    #[test]
    fn coproduct_of_graphs() {
        let a = obj(Presheaf::graph(&["a"], &[("l", "a", "a")]).unwrap());
        let b = obj(Presheaf::graph::<&str>(&["b"], &[]).unwrap());
        let c = coproduct(&a, &b).unwrap();
        assert_eq!((c.object.len(VERTEX), c.object.len(EDGE)), (2, 1));
    }

    #[test]
    fn mixed_shapes_are_rejected() {
        let a = obj(Presheaf::graph::<&str>(&["a"], &[]).unwrap());
        assert!(matches!(coproduct(&a, &point_set()), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(product(&a, &point_set()), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn product_with_terminal_graph() {
        let g = obj(Presheaf::graph(&["a", "b"], &[("e", "a", "b"), ("f", "b", "b")]).unwrap());
        let one = obj(Presheaf::terminal(Shape::Graph));
        let p = product(&g, &one).unwrap();
        assert!(p.left.is_iso());
    }

    #[test]
    fn product_of_two_point_sets() {
        let x = obj(Presheaf::set(&["a", "b"]).unwrap());
        assert_eq!(product(&x, &x).unwrap().object.len(0), 4);
    }

    #[test]
    fn vertex_times_interval_has_no_edges() {
        let v = obj(Presheaf::graph::<&str>(&["a"], &[]).unwrap());
        let i = obj(
            Presheaf::graph(
                &["0", "1"],
                &[("d", "1", "0"), ("l0", "0", "0"), ("l1", "1", "1"), ("u", "0", "1")],
            )
            .unwrap(),
        );
        let p = product(&v, &i).unwrap();
        assert_eq!((p.object.len(VERTEX), p.object.len(EDGE)), (2, 0));
    }

    #[test]
    fn pushout_absorbs_identities() {
        let g = obj(Presheaf::graph(&["a", "b"], &[("e", "a", "b")]).unwrap());
        let id = PresheafMap::identity(&g);
        let po = pushout(&id, &id).unwrap();
        assert!(po.left.is_iso() && po.right.is_iso());
    }

    #[test]
    fn wedge_of_two_edges() {
        let v = obj(Presheaf::graph::<&str>(&["x"], &[]).unwrap());
        let e1 = obj(Presheaf::graph(&["a", "b"], &[("e", "a", "b")]).unwrap());
        let e2 = obj(Presheaf::graph(&["c", "d"], &[("f", "c", "d")]).unwrap());
        let f = PresheafMap::new(v.clone(), e1, vec![vec![0], vec![]]).unwrap();
        let g = PresheafMap::new(v, e2, vec![vec![0], vec![]]).unwrap();
        let po = pushout(&f, &g).unwrap();
        // oracle: 4 vertices with a identified to c
        assert_eq!((po.object.len(VERTEX), po.object.len(EDGE)), (3, 2));
        assert_eq!(po.object.labels(VERTEX), ["l:a", "l:b", "r:d"]);
    }

    #[test]
    fn glued_interval_is_a_two_edge_chain() {
        let v = obj(Presheaf::graph::<&str>(&["x"], &[]).unwrap());
        let chain = obj(Presheaf::graph(&["0", "1"], &[("e", "0", "1")]).unwrap());
        let end = PresheafMap::new(v.clone(), chain.clone(), vec![vec![1], vec![]]).unwrap();
        let start = PresheafMap::new(v, chain, vec![vec![0], vec![]]).unwrap();
        let po = pushout(&end, &start).unwrap();
        assert_eq!((po.object.len(VERTEX), po.object.len(EDGE)), (3, 2));
        let p = &po.object;
        let e1 = po.left.apply(EDGE, 0);
        let e2 = po.right.apply(EDGE, 0);
        assert_eq!(p.target(e1), p.source(e2));
    }

    #[test]
    fn mediator_rejects_non_commuting_cocone() {
        let v = obj(Presheaf::set(&["x"]).unwrap());
        let b = obj(Presheaf::set(&["b"]).unwrap());
        let z = obj(Presheaf::set(&["p", "q"]).unwrap());
        let f = PresheafMap::new(v.clone(), b.clone(), vec![vec![0]]).unwrap();
        let po = pushout(&f, &f).unwrap();
        let x = PresheafMap::new(b.clone(), z.clone(), vec![vec![0]]).unwrap();
        let y = PresheafMap::new(b, z, vec![vec![1]]).unwrap();
        assert!(po.mediate(&x, &y).is_err());
        assert!(po.mediate(&x, &x).is_ok());
    }

    #[test]
    fn chain_colimit_of_single_map() {
        let x = point_set();
        let y = obj(Presheaf::set(&["a", "b"]).unwrap());
        let f = PresheafMap::new(x, y.clone(), vec![vec![1]]).unwrap();
        let c = chain_colimit(std::slice::from_ref(&f)).unwrap();
        assert_eq!(c.cocone.len(), 2);
        assert_eq!(c.cocone[0], f);
        assert_eq!(c.cocone[1], PresheafMap::identity(&y));
    }

    #[test]
    fn chain_colimit_of_identities() {
        let x = obj(Presheaf::set(&["a", "b"]).unwrap());
        let id = PresheafMap::identity(&x);
        let c = chain_colimit(&[id.clone(), id.clone(), id.clone()]).unwrap();
        assert!(c.cocone.iter().all(|m| *m == id));
    }

    #[test]
    fn non_composable_chain_is_rejected() {
        let x = point_set();
        let y = obj(Presheaf::set(&["a", "b"]).unwrap());
        let f = PresheafMap::new(x.clone(), y.clone(), vec![vec![1]]).unwrap();
        assert!(chain_colimit(&[f.clone(), f]).is_err());
    }
}
