//! Property tests over randomly generated small sets and graphs.

use std::sync::Arc;

use proptest::prelude::*;

use phl_core::algebra::Category;
use phl_core::cylinder::{corner_endpoint, corner_full, Cylinder, ProductCylinder};
use phl_core::document::{canonical, object_to_json, parse_document, Document};
use phl_core::homotopy::{check_equivalence_relation, find_homotopy};
use phl_core::limits::{coproduct, pushout};
use phl_core::monads::{cardinal, check_monad_laws, linear_chain, FreeMonad};
use phl_core::search::{count_homs, enumerate_homs, HomSearch};
use phl_core::shape::{Shape, EDGE, VERTEX};
use phl_core::simplicial::{chaotic, horn_filler, nerve};
use phl_core::witnesses::explicit_lift_category;
use phl_core::{Guard, Obj, Presheaf, PresheafMap};

const NAMES: [&str; 3] = ["a", "b", "c"];

fn build_graph(v: usize, edges: &[(usize, usize)], reflexive: bool) -> Obj {
    let vs: Vec<String> = NAMES[..v].iter().map(|s| s.to_string()).collect();
    let es: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| (format!("e{k}"), vs[s % v].clone(), vs[t % v].clone()))
        .collect();
    let x = if reflexive {
        Presheaf::reflexive_graph(&vs, &es)
    } else {
        Presheaf::graph(&vs, &es)
    };
    Arc::new(x.expect("generated graph is valid"))
}

/// Graphs with 1 to 3 vertices and at most `max_edges` edges.
fn graph(max_edges: usize, reflexive: bool) -> impl Strategy<Value = Obj> {
    (1usize..=3, prop::collection::vec((0usize..3, 0usize..3), 0..=max_edges))
        .prop_map(move |(v, es)| build_graph(v, &es, reflexive))
}

fn set(max: usize) -> impl Strategy<Value = Obj> {
    (0..=max).prop_map(cardinal)
}

fn some_hom(x: &Obj, y: &Obj, pick: usize) -> Option<PresheafMap> {
    let homs = enumerate_homs(x, y, Guard::default()).ok()?;
    (!homs.is_empty()).then(|| homs[pick % homs.len()].clone())
}

fn agree(a: &PresheafMap, b: &PresheafMap) -> bool {
    (0..a.dom().sort_count()).all(|s| (0..a.dom().len(s)).all(|c| a.apply(s, c) == b.apply(s, c)))
}

fn is_identity(m: &PresheafMap) -> bool {
    (0..m.dom().sort_count()).all(|s| (0..m.dom().len(s)).all(|c| m.apply(s, c) == c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn set_hom_count_is_a_power(m in 0usize..=4, n in 0usize..=4) {
        let count = count_homs(&cardinal(m), &cardinal(n), Guard::default()).unwrap();
        prop_assert_eq!(count, (n as u64).pow(m as u32));
    }

    #[test]
    fn free_monoid_has_geometric_size(n in 0usize..=3, cap in 0usize..=3) {
        let t = FreeMonad::monoid(cap).apply(&cardinal(n)).unwrap();
        let expected: usize = (0..=cap).map(|k| n.pow(k as u32)).sum();
        prop_assert_eq!(t.len(), expected);
    }

    #[test]
    fn paths_in_a_linear_chain(n in 0usize..=4, cap in 0usize..=4) {
        let chain = linear_chain(n, Shape::Graph).unwrap();
        let t = FreeMonad::category(Shape::Graph, cap).unwrap().apply(&chain).unwrap();
        // paths of length k in 0→1→…→n: n+1-k of them
        let expected: usize = (0..=cap.min(n)).map(|k| n + 1 - k).sum();
        prop_assert_eq!(t.object().len(EDGE), expected);
    }

    #[test]
    fn cylinder_sections_and_sizes(x in graph(3, false)) {
        let inst = ProductCylinder::graph_interval();
        let c = inst.cylinder(&x).unwrap();
        prop_assert!(is_identity(&c.d0.then(&c.sigma).unwrap()));
        prop_assert!(is_identity(&c.d1.then(&c.sigma).unwrap()));
        prop_assert!(c.boundary().unwrap().1.is_mono());
        let i = inst.interval();
        prop_assert_eq!(c.object.len(VERTEX), x.len(VERTEX) * i.len(VERTEX));
        prop_assert_eq!(c.object.len(EDGE), x.len(EDGE) * i.len(EDGE));
    }

    #[test]
    fn pushout_square_commutes(a in graph(1, false), b in graph(2, false), c in graph(2, false), p in 0usize..64, q in 0usize..64) {
        let (Some(f), Some(g)) = (some_hom(&a, &b, p), some_hom(&a, &c, q)) else { return Ok(()) };
        let po = pushout(&f, &g).unwrap();
        prop_assert!(agree(&f.then(&po.left).unwrap(), &g.then(&po.right).unwrap()));
        let sum = coproduct(&b, &c).unwrap();
        prop_assert!(sum.left.is_mono() && sum.right.is_mono());
        for s in 0..2 {
            prop_assert!(po.object.len(s) <= b.len(s) + c.len(s));
        }
    }

    #[test]
    fn homotopy_is_an_equivalence_into_groupoids(x in graph(2, true)) {
        let inst = ProductCylinder::reflexive_graph_interval();
        let a = Category::groupoid_interval().carrier(Shape::ReflexiveGraph).unwrap();
        let r = check_equivalence_relation(&inst, &x, &a, Guard::default()).unwrap();
        prop_assert!(r.is_equivalence());
    }

    #[test]
    fn endpoint_homotopy_connects_the_ends(x in graph(2, true)) {
        let inst = ProductCylinder::reflexive_graph_interval();
        let c = inst.cylinder(&x).unwrap();
        let id = PresheafMap::identity(&c.object);
        let lo = c.sigma.then(&c.d0).unwrap();
        // the contraction (x, t) ↦ (x, 0) is homotopic to the identity
        prop_assert!(find_homotopy(&inst, &lo, &id, Guard::default()).unwrap().is_some());
    }

    #[test]
    fn corners_are_monos(k in graph(1, true), l in graph(2, true), e in 0usize..2) {
        let inst = ProductCylinder::reflexive_graph_interval();
        let mut search = HomSearch::new(&k, &l, Guard::default()).unwrap();
        search.injective();
        if let Some(j) = search.first(&k, &l).unwrap() {
            prop_assert!(corner_endpoint(&inst, &j, e).unwrap().map.is_mono());
            prop_assert!(corner_full(&inst, &j).unwrap().map.is_mono());
        }
    }

    #[test]
    fn explicit_category_lifts_restrict(k in graph(1, true), l in graph(2, true), e in 0usize..2, pick in 0usize..256) {
        let inst = ProductCylinder::reflexive_graph_interval();
        let mut search = HomSearch::new(&k, &l, Guard::default()).unwrap();
        search.injective();
        let Some(j) = search.first(&k, &l).unwrap() else { return Ok(()) };
        let corner = corner_endpoint(&inst, &j, e).unwrap();
        for c in [Category::chain(2), Category::groupoid_interval(), Category::parallel_arrows()] {
            let a = c.carrier(Shape::ReflexiveGraph).unwrap();
            if let Some(f) = some_hom(corner.map.dom(), &a, pick) {
                let d = explicit_lift_category(&corner, &f, &c).unwrap();
                prop_assert!(agree(&corner.map.then(&d).unwrap(), &f));
            }
        }
    }

    #[test]
    fn free_category_laws(x in graph(2, false)) {
        let monad = FreeMonad::category(Shape::Graph, 2).unwrap();
        prop_assert!(check_monad_laws(&monad, &x).unwrap().passed());
    }

    #[test]
    fn unit_is_natural(x in set(3), y in set(3), pick in 0usize..64) {
        let Some(f) = some_hom(&x, &y, pick) else { return Ok(()) };
        let monad = FreeMonad::monoid(2);
        let (tx, ty) = (monad.apply(&x).unwrap(), monad.apply(&y).unwrap());
        let tf = monad.map(&f, &tx, &ty).unwrap();
        let (ex, ey) = (monad.unit(&tx).unwrap(), monad.unit(&ty).unwrap());
        prop_assert!(ex.is_mono());
        prop_assert!(agree(&ex.then(&tf).unwrap(), &f.then(&ey).unwrap()));
    }

    #[test]
    fn graph_documents_round_trip(x in graph(3, false), r in graph(2, true)) {
        for obj in [x, r] {
            let text = canonical(&object_to_json(&obj));
            let Document::Object(back) = parse_document(&text).unwrap() else { panic!("expected an object") };
            prop_assert_eq!(&*back, &*obj);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn chaotic_complexes_are_kan(v in 1usize..=3) {
        let x = chaotic(v, 2).unwrap();
        for n in 1..=2 {
            for k in 0..=n {
                prop_assert!(horn_filler(&x, n, k, Guard::default()).unwrap().all_filled());
            }
        }
    }

    #[test]
    fn nerves_of_chains_fill_inner_horns(n in 0usize..=3) {
        let x = nerve(&Category::chain(n), 3, Guard::default()).unwrap();
        for dim in 2..=3 {
            for k in 1..dim {
                prop_assert!(horn_filler(&x, dim, k, Guard::default()).unwrap().all_filled());
            }
        }
    }
}
