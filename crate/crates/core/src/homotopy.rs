//! The one-step homotopy relation, its generated equivalence, classes `[X, Y]`
//! and the maps induced on classes by precomposition.

use rayon::prelude::*;

use crate::cylinder::{Cylinder, CylinderData};
use crate::error::{Error, Result};
use crate::map::{same_object, PresheafMap};
use crate::object::Obj;
use crate::search::{enumerate_homs, Guard, HomSearch};
use crate::union_find::UnionFind;

/// `θ: X⊗I -> Y` with `θ∘∂0 = f` and `θ∘∂1 = g`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub theta: PresheafMap,
    pub f: PresheafMap,
    pub g: PresheafMap,
}

impl Homotopy {
    /// Re-checks both endpoint equations.
    pub fn verify(&self, cyl: &CylinderData) -> Result<bool> {
        Ok(cyl.d0.then(&self.theta)? == self.f && cyl.d1.then(&self.theta)? == self.g)
    }
}

/// Homotopy search between maps `X -> Y` with the cylinder on `X` built once.
pub struct HomotopySearch {
    cyl: CylinderData,
    y: Obj,
    guard: Guard,
}

impl HomotopySearch {
    pub fn new(inst: &dyn Cylinder, x: &Obj, y: &Obj, guard: Guard) -> Result<HomotopySearch> {
        Ok(HomotopySearch {
            cyl: inst.cylinder(x)?,
            y: y.clone(),
            guard,
        })
    }

    pub fn cylinder(&self) -> &CylinderData {
        &self.cyl
    }

    fn check(&self, f: &PresheafMap, g: &PresheafMap) -> Result<()> {
        for m in [f, g] {
            if !same_object(m.dom(), &self.cyl.base) || !same_object(m.cod(), &self.y) {
                return Err(Error::NotComposable("homotopy endpoints must share domain and codomain".into()));
            }
        }
        Ok(())
    }

    /// The lexicographically least homotopy from `f` to `g`, if any.
    pub fn find(&self, f: &PresheafMap, g: &PresheafMap) -> Result<Option<Homotopy>> {
        self.check(f, g)?;
        let obj = &self.cyl.object;
        let mut search = HomSearch::new(obj, &self.y, self.guard)?;
        for s in 0..obj.sort_count() {
            for x in 0..self.cyl.base.len(s) {
                search.fix(s, self.cyl.d0.apply(s, x), f.apply(s, x));
                search.fix(s, self.cyl.d1.apply(s, x), g.apply(s, x));
            }
        }
        Ok(search.first(obj, &self.y)?.map(|theta| Homotopy {
            theta,
            f: f.clone(),
            g: g.clone(),
        }))
    }
}

/// The lexicographically least homotopy `f ≃ g`, searched exhaustively over `Hom(X⊗I, Y)`.
pub fn find_homotopy(inst: &dyn Cylinder, f: &PresheafMap, g: &PresheafMap, guard: Guard) -> Result<Option<Homotopy>> {
    if !same_object(f.dom(), g.dom()) || !same_object(f.cod(), g.cod()) {
        return Err(Error::NotComposable("homotopy endpoints must share domain and codomain".into()));
    }
    HomotopySearch::new(inst, f.dom(), f.cod(), guard)?.find(f, g)
}

/// `Hom(X, Y)` with the one-step relation and its generated equivalence.
#[derive(Clone, Debug)]
pub struct HomClasses {
    /// All maps in lexicographic order.
    pub homs: Vec<PresheafMap>,
    /// `relation[i][j]` iff `homs[i] ≃ homs[j]` in one step.
    pub relation: Vec<Vec<bool>>,
    /// Class members (indices into `homs`), ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl HomClasses {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Lexicographically least member of every class.
    pub fn representatives(&self) -> Vec<&PresheafMap> {
        self.classes.iter().map(|c| &self.homs[c[0]]).collect()
    }

    /// Index of a map in `homs`.
    pub fn index_of(&self, m: &PresheafMap) -> Option<usize> {
        self.homs.binary_search_by(|h| h.lex_cmp(m)).ok()
    }

    pub fn class_of_map(&self, m: &PresheafMap) -> Option<usize> {
        self.index_of(m).map(|i| self.class_of[i])
    }
}

/// `[X, Y]`: the quotient of `Hom(X, Y)` by the closure of one-step homotopy.
///
/// The pairwise relation is computed in parallel; rows are collected in
/// order so the result matches the sequential computation.
pub fn homotopy_classes(inst: &dyn Cylinder, x: &Obj, y: &Obj, guard: Guard) -> Result<HomClasses> {
    let homs = enumerate_homs(x, y, guard)?;
    let search = HomotopySearch::new(inst, x, y, guard)?;
    let relation: Vec<Vec<bool>> = homs
        .par_iter()
        .map(|f| {
            homs.iter()
                .map(|g| Ok(f == g || search.find(f, g)?.is_some()))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    let mut uf = UnionFind::new(homs.len());
    for (i, row) in relation.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                uf.union(i, j);
            }
        }
    }
    let classes = uf.classes();
    let mut class_of = vec![0; homs.len()];
    for (k, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = k;
        }
    }
    Ok(HomClasses {
        homs,
        relation,
        classes,
        class_of,
    })
}

/// Outcome of precomposition `[Y, A] -> [X, A]`.
#[derive(Clone, Debug)]
pub struct ClassMapVerdict {
    pub source: HomClasses,
    pub target: HomClasses,
    /// Image class in `[X, A]` of every class of `[Y, A]`.
    pub mapping: Vec<usize>,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl ClassMapVerdict {
    pub fn bijective(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

/// The map `[Y, A] -> [X, A]`, `[h] ↦ [h∘f]`, with well-definedness,
/// injectivity and surjectivity recorded separately.
pub fn induced_class_map(inst: &dyn Cylinder, f: &PresheafMap, a: &Obj, guard: Guard) -> Result<ClassMapVerdict> {
    let ya = homotopy_classes(inst, f.cod(), a, guard)?;
    let xa = homotopy_classes(inst, f.dom(), a, guard)?;
    let mut well_defined = true;
    let mut mapping = Vec::with_capacity(ya.class_count());
    for members in &ya.classes {
        let mut image = None;
        for &m in members {
            let pre = f.then(&ya.homs[m])?;
            let c = xa.class_of_map(&pre).expect("precomposite is a hom");
            match image {
                None => image = Some(c),
                Some(prev) if prev != c => well_defined = false,
                Some(_) => {}
            }
        }
        mapping.push(image.expect("classes are nonempty"));
    }
    let mut hit = vec![false; xa.class_count()];
    let mut injective = true;
    for &c in &mapping {
        injective &= !std::mem::replace(&mut hit[c], true);
    }
    let surjective = hit.into_iter().all(|h| h);
    Ok(ClassMapVerdict {
        source: ya,
        target: xa,
        mapping,
        well_defined,
        injective,
        surjective,
    })
}

/// Whether one-step homotopy on `Hom(X, A)` is an equivalence relation, with
/// the first counterexample (in index order) for each failing property.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub classes: HomClasses,
    pub reflexive: Option<usize>,
    pub symmetric: Option<(usize, usize)>,
    pub transitive: Option<(usize, usize, usize)>,
}

impl RelationReport {
    pub fn is_equivalence(&self) -> bool {
        self.reflexive.is_none() && self.symmetric.is_none() && self.transitive.is_none()
    }
}

pub fn check_equivalence_relation(inst: &dyn Cylinder, x: &Obj, a: &Obj, guard: Guard) -> Result<RelationReport> {
    let hc = homotopy_classes(inst, x, a, guard)?;
    let n = hc.homs.len();
    let search = HomotopySearch::new(inst, x, a, guard)?;
    // the class computation short-cuts the diagonal, so reflexivity is searched
    let mut reflexive = None;
    for (i, f) in hc.homs.iter().enumerate() {
        if search.find(f, f)?.is_none() {
            reflexive = Some(i);
            break;
        }
    }
    let r = &hc.relation;
    let symmetric = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| r[i][j] && !r[j][i]);
    let transitive = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| r[i][j] && r[j][k] && !r[i][k]);
    Ok(RelationReport {
        classes: hc,
        reflexive,
        symmetric,
        transitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::ProductCylinder;
    use crate::object::Presheaf;
    use crate::simplicial;
    use std::sync::Arc;

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Obj {
        Arc::new(Presheaf::graph(vs, es).unwrap())
    }

    fn set(xs: &[&str]) -> Obj {
        Arc::new(Presheaf::set(xs).unwrap())
    }

    fn constant(x: &Obj, y: &Obj, vertex: usize) -> PresheafMap {
        let mut s = HomSearch::new(x, y, Guard::default()).unwrap();
        for v in 0..x.len(0) {
            s.fix(0, v, vertex);
        }
        s.first(x, y).unwrap().unwrap()
    }

    #[test]
    fn constant_homotopy_exists() {
        let inst = ProductCylinder::graph_interval();
        let x = graph(&["a"], &[("l", "a", "a")]);
        let y = graph(&["p", "q"], &[("m", "p", "q"), ("n", "q", "q")]);
        let f = constant(&x, &y, 1);
        let h = find_homotopy(&inst, &f, &f, Guard::default()).unwrap().unwrap();
        let c = inst.cylinder(&x).unwrap();
        assert!(h.verify(&c).unwrap());
        assert_eq!(h.theta, c.sigma.then(&f).unwrap());
    }

    #[test]
    fn sets_are_always_homotopic() {
        let inst = ProductCylinder::set2();
        let x = set(&["a", "b"]);
        let y = set(&["p", "q", "r"]);
        let homs = enumerate_homs(&x, &y, Guard::default()).unwrap();
        for f in &homs {
            for g in &homs {
                assert!(find_homotopy(&inst, f, g, Guard::default()).unwrap().is_some());
            }
        }
        assert_eq!(homotopy_classes(&inst, &x, &y, Guard::default()).unwrap().class_count(), 1);
    }

    #[test]
    fn loops_without_connecting_edges_are_not_homotopic() {
        let inst = ProductCylinder::graph_interval();
        let x = graph(&["a"], &[("l", "a", "a")]);
        let y = graph(&["p", "q"], &[("lp", "p", "p"), ("lq", "q", "q")]);
        let f = constant(&x, &y, 0);
        let g = constant(&x, &y, 1);
        assert!(find_homotopy(&inst, &f, &g, Guard::default()).unwrap().is_none());
        assert_eq!(homotopy_classes(&inst, &x, &y, Guard::default()).unwrap().class_count(), 2);
    }

    #[test]
    fn vertex_into_interval_is_one_class() {
        let inst = ProductCylinder::graph_interval();
        let x = graph(&["a"], &[]);
        let classes = homotopy_classes(&inst, &x, inst.interval(), Guard::default()).unwrap();
        assert_eq!(classes.homs.len(), 2);
        assert_eq!(classes.class_count(), 1);
    }

    #[test]
    fn identity_induces_a_bijection() {
        let inst = ProductCylinder::graph_interval();
        let x = graph(&["a", "b"], &[("e", "a", "b")]);
        let a = graph(&["p", "q"], &[("lp", "p", "p"), ("lq", "q", "q"), ("m", "p", "q")]);
        let v = induced_class_map(&inst, &PresheafMap::identity(&x), &a, Guard::default()).unwrap();
        assert!(v.bijective());
        assert_eq!(v.mapping, (0..v.source.class_count()).collect::<Vec<_>>());
    }

    #[test]
    fn transitivity_fails_on_a_zigzag() {
        // p ⇄ q ⇄ r with loops, but no edges between p and r
        let inst = ProductCylinder::graph_interval();
        let x = graph(&["a"], &[("l", "a", "a")]);
        let a = graph(
            &["p", "q", "r"],
            &[
                ("lp", "p", "p"),
                ("lq", "q", "q"),
                ("lr", "r", "r"),
                ("pq", "p", "q"),
                ("qp", "q", "p"),
                ("qr", "q", "r"),
                ("rq", "r", "q"),
            ],
        );
        let rep = check_equivalence_relation(&inst, &x, &a, Guard::default()).unwrap();
        assert!(rep.reflexive.is_none());
        assert!(rep.symmetric.is_none());
        assert_eq!(rep.transitive, Some((0, 1, 2)));
        assert_eq!(rep.classes.class_count(), 1);
    }

    #[test]
    fn symmetry_fails_for_the_directed_interval() {
        let inst = ProductCylinder::simplicial_delta1(2).unwrap();
        let x = simplicial::standard_simplex(0, 2).unwrap();
        let a = simplicial::standard_simplex(1, 2).unwrap();
        let rep = check_equivalence_relation(&inst, &x, &a, Guard::default()).unwrap();
        assert_eq!(rep.symmetric, Some((0, 1)));
    }
}
