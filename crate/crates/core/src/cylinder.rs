//! Cylinder instances `X ↦ X⊗I` with endpoints and projection, corner maps,
//! and the checker for the elementary homotopy data axioms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::{coproduct, coproduct_map, product, pushout, Coproduct, Product};
use crate::map::{maps_equal, same_object, PresheafMap};
use crate::object::{Obj, Presheaf};
use crate::search::{Guard, HomSearch};
use crate::shape::Shape;
use crate::simplicial;

/// The cylinder on one object: `X⊗I` with `∂0, ∂1: X -> X⊗I` and `σ: X⊗I -> X`.
#[derive(Clone, Debug)]
pub struct CylinderData {
    pub base: Obj,
    pub object: Obj,
    pub d0: PresheafMap,
    pub d1: PresheafMap,
    pub sigma: PresheafMap,
    /// Projection `X⊗I -> I` when the cylinder is a product.
    pub level: Option<PresheafMap>,
    product: Option<Product>,
}

impl CylinderData {
    pub fn endpoint(&self, e: usize) -> &PresheafMap {
        if e == 0 {
            &self.d0
        } else {
            &self.d1
        }
    }

    /// The cell `(x, t)` of a product cylinder.
    pub fn pair(&self, sort: usize, x: usize, t: usize) -> Option<usize> {
        self.product.as_ref().map(|p| p.pair(sort, x, t))
    }

    /// `[∂0, ∂1]: X + X -> X⊗I` together with the coproduct it starts from.
    pub fn boundary(&self) -> Result<(Coproduct, PresheafMap)> {
        let sum = coproduct(&self.base, &self.base)?;
        let map = sum.copair(&self.d0, &self.d1)?;
        Ok((sum, map))
    }
}

/// A functorial cylinder on one base category.
pub trait Cylinder: Send + Sync {
    fn name(&self) -> &str;
    fn shape(&self) -> Shape;
    /// The interval object `I` (the cylinder on the terminal object).
    fn interval(&self) -> &Obj;
    fn cylinder(&self, x: &Obj) -> Result<CylinderData>;
    /// `f⊗I` between two previously built cylinders.
    fn cylinder_map(&self, f: &PresheafMap, src: &CylinderData, tgt: &CylinderData) -> Result<PresheafMap>;
    /// The automorphism of `X⊗I` exchanging the two ends, if the instance has one.
    fn swap(&self, _cyl: &CylinderData) -> Option<PresheafMap> {
        None
    }
}

/// `X⊗I = X × I` for a fixed interval object with two endpoint vertices.
#[derive(Clone, Debug)]
pub struct ProductCylinder {
    name: String,
    interval: Obj,
    terminal: Obj,
    endpoints: [PresheafMap; 2],
    swap: Option<PresheafMap>,
}

/// Names accepted by [`by_name`].
pub const INSTANCE_NAMES: [&str; 5] = ["set2", "graphI", "rgraphI", "sset-delta1", "sset-jinf"];

impl ProductCylinder {
    /// Builds an instance from an interval whose vertices (sort 0) include `0` and `1`.
    pub fn new(name: &str, interval: Obj) -> Result<ProductCylinder> {
        let shape = interval.shape();
        let terminal = Arc::new(Presheaf::terminal(shape));
        let endpoint = |label: &str| -> Result<PresheafMap> {
            let v = interval.require(0, label)?;
            let mut search = HomSearch::new(&terminal, &interval, Guard::default())?;
            search.fix(0, 0, v);
            search
                .first(&terminal, &interval)?
                .ok_or_else(|| Error::invalid(format!("no endpoint at `{label}` in the interval")))
        };
        let endpoints = [endpoint("0")?, endpoint("1")?];
        // the swap automorphism of I, when some automorphism exchanges 0 and 1
        let mut search = HomSearch::new(&interval, &interval, Guard::default())?;
        search
            .injective()
            .fix(0, endpoints[0].apply(0, 0), endpoints[1].apply(0, 0))
            .fix(0, endpoints[1].apply(0, 0), endpoints[0].apply(0, 0));
        let swap = search.first(&interval, &interval)?;
        Ok(ProductCylinder {
            name: name.to_string(),
            interval,
            terminal,
            endpoints,
            swap,
        })
    }

    /// Sets with `I = {0, 1}`.
    pub fn set2() -> ProductCylinder {
        let i = Arc::new(Presheaf::set(&["0", "1"]).expect("valid set"));
        ProductCylinder::new("set2", i).expect("valid instance")
    }

    /// Graphs with `I`: vertices `0, 1`, edges `u: 0→1`, `d: 1→0` and loops `l0`, `l1`.
    pub fn graph_interval() -> ProductCylinder {
        let i = Presheaf::graph(
            &["0", "1"],
            &[("d", "1", "0"), ("l0", "0", "0"), ("l1", "1", "1"), ("u", "0", "1")],
        )
        .expect("valid graph");
        ProductCylinder::new("graphI", Arc::new(i)).expect("valid instance")
    }

    /// Reflexive graphs with `I`: vertices `0, 1`, edges `u: 0→1`, `d: 1→0` and identities.
    pub fn reflexive_graph_interval() -> ProductCylinder {
        let i = Presheaf::reflexive_graph(&["0", "1"], &[("d", "1", "0"), ("u", "0", "1")]).expect("valid graph");
        ProductCylinder::new("rgraphI", Arc::new(i)).expect("valid instance")
    }

    /// Simplicial sets truncated at `cap` with `I = Δ[1]`.
    pub fn simplicial_delta1(cap: usize) -> Result<ProductCylinder> {
        ProductCylinder::new("sset-delta1", simplicial::standard_simplex(1, cap)?)
    }

    /// Simplicial sets truncated at `cap` with `I` the nerve of the groupoid interval.
    pub fn simplicial_jinf(cap: usize) -> Result<ProductCylinder> {
        ProductCylinder::new("sset-jinf", simplicial::chaotic(2, cap)?)
    }

    /// The endpoint `e: 1 -> I`.
    pub fn endpoint(&self, e: usize) -> &PresheafMap {
        &self.endpoints[e]
    }

    pub fn terminal(&self) -> &Obj {
        &self.terminal
    }

    fn check_base(&self, x: &Obj) -> Result<()> {
        if x.shape() != self.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape().to_string(),
                right: x.shape().to_string(),
            });
        }
        Ok(())
    }
}

/// Looks up an instance by its CLI name; `cap` is used by simplicial instances.
pub fn by_name(name: &str, cap: usize) -> Result<ProductCylinder> {
    match name {
        "set2" => Ok(ProductCylinder::set2()),
        "graphI" => Ok(ProductCylinder::graph_interval()),
        "rgraphI" => Ok(ProductCylinder::reflexive_graph_interval()),
        "sset-delta1" => ProductCylinder::simplicial_delta1(cap),
        "sset-jinf" => ProductCylinder::simplicial_jinf(cap),
        other => Err(Error::invalid(format!(
            "unknown instance `{other}` (expected one of {})",
            INSTANCE_NAMES.join(", ")
        ))),
    }
}

impl Cylinder for ProductCylinder {
    fn name(&self) -> &str {
        &self.name
    }

    fn shape(&self) -> Shape {
        self.interval.shape()
    }

    fn interval(&self) -> &Obj {
        &self.interval
    }

    fn cylinder(&self, x: &Obj) -> Result<CylinderData> {
        self.check_base(x)?;
        let p = product(x, &self.interval)?;
        let bang = PresheafMap::to_terminal(x, &self.terminal);
        let id = PresheafMap::identity(x);
        let d0 = p.tuple(&id, &bang.then(&self.endpoints[0])?)?;
        let d1 = p.tuple(&id, &bang.then(&self.endpoints[1])?)?;
        Ok(CylinderData {
            base: x.clone(),
            object: p.object.clone(),
            d0,
            d1,
            sigma: p.left.clone(),
            level: Some(p.right.clone()),
            product: Some(p),
        })
    }

    fn cylinder_map(&self, f: &PresheafMap, src: &CylinderData, tgt: &CylinderData) -> Result<PresheafMap> {
        if !same_object(f.dom(), &src.base) || !same_object(f.cod(), &tgt.base) {
            return Err(Error::NotComposable("map does not match the given cylinders".into()));
        }
        let tp = tgt.product.as_ref().ok_or_else(|| Error::invalid("target cylinder is not a product"))?;
        let level = src.level.as_ref().ok_or_else(|| Error::invalid("source cylinder is not a product"))?;
        tp.tuple(&src.sigma.then(f)?, level)
    }

    fn swap(&self, cyl: &CylinderData) -> Option<PresheafMap> {
        let s = self.swap.as_ref()?;
        let p = cyl.product.as_ref()?;
        let level = cyl.level.as_ref()?.then(s).ok()?;
        p.tuple(&cyl.sigma, &level).ok()
    }
}

/// Which corner construction produced a [`CornerMap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerKind {
    /// `K⊗I ∪ L⊗∂I -> L⊗I`
    Full,
    /// `K⊗I ∪ L⊗{e} -> L⊗I`
    Endpoint(usize),
}

/// A corner map with its provenance.
#[derive(Clone, Debug)]
pub struct CornerMap {
    pub instance: String,
    pub kind: CornerKind,
    /// The seed mono `j: K -> L`.
    pub seed: PresheafMap,
    /// The inclusion of the union into `L⊗I`.
    pub map: PresheafMap,
    /// `K⊗I -> union`
    pub from_source: PresheafMap,
    pub source_cylinder: CylinderData,
    pub target_cylinder: CylinderData,
}

fn require_mono(j: &PresheafMap) -> Result<()> {
    if !j.is_mono() {
        return Err(Error::NotMono("corner seed is not injective".into()));
    }
    Ok(())
}

/// `K⊗I ∪ L⊗∂I -> L⊗I` for a mono `j: K -> L`.
pub fn corner_full(inst: &dyn Cylinder, j: &PresheafMap) -> Result<CornerMap> {
    require_mono(j)?;
    let kc = inst.cylinder(j.dom())?;
    let lc = inst.cylinder(j.cod())?;
    let jc = inst.cylinder_map(j, &kc, &lc)?;
    let (ksum, kb) = kc.boundary()?;
    let (lsum, lb) = lc.boundary()?;
    let jj = coproduct_map(j, j, &ksum, &lsum)?;
    let po = pushout(&kb, &jj)?;
    let map = po.mediate(&jc, &lb)?;
    finish_corner(inst, CornerKind::Full, j, map, po.left, kc, lc)
}

/// `K⊗I ∪ L⊗{e} -> L⊗I` for a mono `j: K -> L`.
pub fn corner_endpoint(inst: &dyn Cylinder, j: &PresheafMap, e: usize) -> Result<CornerMap> {
    require_mono(j)?;
    if e > 1 {
        return Err(Error::invalid(format!("endpoint must be 0 or 1, got {e}")));
    }
    let kc = inst.cylinder(j.dom())?;
    let lc = inst.cylinder(j.cod())?;
    let jc = inst.cylinder_map(j, &kc, &lc)?;
    let po = pushout(kc.endpoint(e), j)?;
    let map = po.mediate(&jc, lc.endpoint(e))?;
    finish_corner(inst, CornerKind::Endpoint(e), j, map, po.left, kc, lc)
}

fn finish_corner(
    inst: &dyn Cylinder,
    kind: CornerKind,
    j: &PresheafMap,
    map: PresheafMap,
    from_source: PresheafMap,
    kc: CylinderData,
    lc: CylinderData,
) -> Result<CornerMap> {
    if !map.is_mono() {
        return Err(Error::NotMono(format!("{kind:?} corner in `{}` is not injective", inst.name())));
    }
    Ok(CornerMap {
        instance: inst.name().to_string(),
        kind,
        seed: j.clone(),
        map,
        from_source,
        source_cylinder: kc,
        target_cylinder: lc,
    })
}

/// One line of an axiom report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub axiom: String,
    pub subject: String,
    pub passed: bool,
}

/// Samples for [`verify_ehd`].
#[derive(Clone, Debug, Default)]
pub struct EhdSamples {
    pub objects: Vec<Obj>,
    pub monos: Vec<PresheafMap>,
    /// Spans `B <-f- A -g-> C`.
    pub spans: Vec<(PresheafMap, PresheafMap)>,
}

#[derive(Clone, Debug)]
pub struct EhdReport {
    pub instance: String,
    pub checks: Vec<Check>,
}

impl EhdReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Short human-readable description of an object (used in reports).
pub fn describe(x: &Presheaf) -> String {
    let shape = x.shape();
    let parts: Vec<String> = (0..shape.sort_count())
        .map(|s| format!("{}:[{}]", shape.sort_name(s), x.labels(s).join(",")))
        .collect();
    format!("{}{{{}}}", shape.tag(), parts.join(" "))
}

/// Checks the elementary homotopy data axioms on the given samples: the
/// cylinder identities, monos preserved, endpoint squares over monos are
/// pullbacks, naturality, and preservation of the sample pushouts.
pub fn verify_ehd(inst: &dyn Cylinder, samples: &EhdSamples) -> Result<EhdReport> {
    let mut checks = Vec::new();
    let mut push = |axiom: &str, subject: String, passed: bool| {
        checks.push(Check {
            axiom: axiom.to_string(),
            subject,
            passed,
        })
    };

    for x in &samples.objects {
        let c = inst.cylinder(x)?;
        let id = PresheafMap::identity(x);
        let subject = describe(x);
        push("sigma∘∂0 = id", subject.clone(), maps_equal(&c.d0.then(&c.sigma)?, &id));
        push("sigma∘∂1 = id", subject.clone(), maps_equal(&c.d1.then(&c.sigma)?, &id));
        push("[∂0,∂1] mono", subject, c.boundary()?.1.is_mono());
    }

    for j in &samples.monos {
        let subject = format!("{} ↪ {}", describe(j.dom()), describe(j.cod()));
        let kc = inst.cylinder(j.dom())?;
        let lc = inst.cylinder(j.cod())?;
        let jc = inst.cylinder_map(j, &kc, &lc)?;
        push("j⊗I mono", subject.clone(), jc.is_mono());
        push(
            "sigma natural",
            subject.clone(),
            maps_equal(&jc.then(&lc.sigma)?, &kc.sigma.then(j)?),
        );
        for e in 0..2 {
            let natural = maps_equal(&kc.endpoint(e).then(&jc)?, &j.then(lc.endpoint(e))?);
            push(&format!("∂{e} natural"), subject.clone(), natural);
            push(
                &format!("∂{e}-square is a pullback"),
                subject.clone(),
                natural && is_pullback(kc.endpoint(e), j, &jc, lc.endpoint(e)),
            );
        }
    }

    for (f, g) in &samples.spans {
        let subject = format!("{} <- {} -> {}", describe(f.cod()), describe(f.dom()), describe(g.cod()));
        push("preserves pushout", subject, preserves_pushout(inst, f, g)?);
    }

    Ok(EhdReport {
        instance: inst.name().to_string(),
        checks,
    })
}

/// Whether the commuting square `top: A -> B`, `left: A -> C`, `right: B -> D`,
/// `bottom: C -> D` is a pullback, by comparing `A` with the fibre product
/// `{(c, b) : bottom(c) = right(b)}` sort by sort.
pub fn is_pullback(top: &PresheafMap, left: &PresheafMap, right: &PresheafMap, bottom: &PresheafMap) -> bool {
    let a = top.dom();
    (0..a.sort_count()).all(|s| {
        let mut fibre = Vec::new();
        for c in 0..left.cod().len(s) {
            for b in 0..top.cod().len(s) {
                if bottom.apply(s, c) == right.apply(s, b) {
                    fibre.push((c, b));
                }
            }
        }
        let mut images: Vec<(usize, usize)> = (0..a.len(s)).map(|x| (left.apply(s, x), top.apply(s, x))).collect();
        images.sort_unstable();
        let distinct = images.windows(2).all(|w| w[0] != w[1]);
        distinct && images.len() == fibre.len()
    })
}

/// Whether `(-⊗I)` sends the pushout of `f, g` to a pushout: the canonical
/// comparison from the pushout of `f⊗I, g⊗I` to `(B ⊔_A C)⊗I` is an iso.
pub fn preserves_pushout(inst: &dyn Cylinder, f: &PresheafMap, g: &PresheafMap) -> Result<bool> {
    let po = pushout(f, g)?;
    let ac = inst.cylinder(f.dom())?;
    let bc = inst.cylinder(f.cod())?;
    let cc = inst.cylinder(g.cod())?;
    let pc = inst.cylinder(&po.object)?;
    let fi = inst.cylinder_map(f, &ac, &bc)?;
    let gi = inst.cylinder_map(g, &ac, &cc)?;
    let qo = pushout(&fi, &gi)?;
    let li = inst.cylinder_map(&po.left, &bc, &pc)?;
    let ri = inst.cylinder_map(&po.right, &cc, &pc)?;
    Ok(qo.mediate(&li, &ri)?.is_iso())
}

/// The cell of `X⊗I` over `(x, t)` where `t` names a cell of the interval.
pub fn cylinder_cell(c: &CylinderData, interval: &Presheaf, sort: usize, x: usize, t: &str) -> Option<usize> {
    let ti = interval.find(sort, t)?;
    c.pair(sort, x, ti)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{EDGE, VERTEX};

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Obj {
        Arc::new(Presheaf::graph(vs, es).unwrap())
    }

    fn set(xs: &[&str]) -> Obj {
        Arc::new(Presheaf::set(xs).unwrap())
    }

    fn inclusion(k: &Obj, l: &Obj) -> PresheafMap {
        let mut s = HomSearch::new(k, l, Guard::default()).unwrap();
        s.injective();
        s.first(k, l).unwrap().unwrap()
    }

    #[test]
    fn set_cylinder_on_two_points() {
        let inst = ProductCylinder::set2();
        let x = set(&["x", "y"]);
        let c = inst.cylinder(&x).unwrap();
        assert_eq!(c.object.len(0), 4);
        assert_eq!(c.d0.apply_label(0, "x"), Some("(x,0)"));
    }

    #[test]
    fn graph_cylinder_on_a_loop() {
        let inst = ProductCylinder::graph_interval();
        let c = inst.cylinder(&graph(&["a"], &[("l", "a", "a")])).unwrap();
        assert_eq!(c.object.len(VERTEX), 2);
        // oracle: one loop times four interval edges
        assert_eq!(c.object.labels(EDGE), ["(l,d)", "(l,l0)", "(l,l1)", "(l,u)"]);
    }

    #[test]
    fn endpoints_are_sections() {
        for inst in [
            ProductCylinder::set2(),
            ProductCylinder::graph_interval(),
            ProductCylinder::reflexive_graph_interval(),
            ProductCylinder::simplicial_delta1(2).unwrap(),
            ProductCylinder::simplicial_jinf(2).unwrap(),
        ] {
            let x = inst.interval().clone();
            let c = inst.cylinder(&x).unwrap();
            let id = PresheafMap::identity(&x);
            assert!(maps_equal(&c.d1.then(&c.sigma).unwrap(), &id), "{}", inst.name());
            assert!(maps_equal(&c.d0.then(&c.sigma).unwrap(), &id), "{}", inst.name());
            assert!(c.boundary().unwrap().1.is_mono());
        }
    }

    #[test]
    fn swap_exists_except_for_delta1() {
        assert!(ProductCylinder::set2().swap.is_some());
        assert!(ProductCylinder::graph_interval().swap.is_some());
        assert!(ProductCylinder::simplicial_jinf(2).unwrap().swap.is_some());
        assert!(ProductCylinder::simplicial_delta1(2).unwrap().swap.is_none());
    }

    #[test]
    fn corner_of_identity_is_an_iso() {
        let inst = ProductCylinder::graph_interval();
        let l = graph(&["a", "b"], &[("e", "a", "b")]);
        let c = corner_full(&inst, &PresheafMap::identity(&l)).unwrap();
        assert!(c.map.is_iso());
        let c1 = corner_endpoint(&inst, &PresheafMap::identity(&l), 1).unwrap();
        assert!(c1.map.is_iso());
    }

    #[test]
    fn corner_of_empty_seed_is_boundary_inclusion() {
        let inst = ProductCylinder::graph_interval();
        let l = graph(&["a", "b"], &[("e", "a", "b")]);
        let j = PresheafMap::from_empty(&Arc::new(Presheaf::empty(Shape::Graph)), &l).unwrap();
        let c = corner_full(&inst, &j).unwrap();
        assert_eq!(c.map.dom().len(VERTEX), 4);
        assert_eq!(c.map.dom().len(EDGE), 2);
        let (_, boundary) = c.target_cylinder.boundary().unwrap();
        assert_eq!(c.map.image_mask(), boundary.image_mask());
    }

    #[test]
    fn corner_of_empty_into_point_is_iso() {
        let inst = ProductCylinder::set2();
        let j = PresheafMap::from_empty(&set(&[]), &set(&["pt"])).unwrap();
        let c = corner_full(&inst, &j).unwrap();
        assert!(c.map.is_iso());
        let c0 = corner_endpoint(&inst, &j, 0).unwrap();
        assert_eq!((c0.map.dom().len(0), c0.map.cod().len(0)), (1, 2));
    }

    #[test]
    fn corner_of_vertex_into_edge_has_four_vertices() {
        let inst = ProductCylinder::graph_interval();
        let j = inclusion(&graph(&["a"], &[]), &graph(&["a", "b"], &[("e", "a", "b")]));
        let c = corner_full(&inst, &j).unwrap();
        // oracle: {a}×I contributes both a-vertices, L⊗∂I all four vertices
        assert_eq!(c.map.dom().len(VERTEX), 4);
        assert_eq!(c.map.dom().len(EDGE), 2);
    }

    #[test]
    fn endpoint_corner_of_discrete_pair_into_edge() {
        let inst = ProductCylinder::graph_interval();
        let j = inclusion(&graph(&["a", "b"], &[]), &graph(&["a", "b"], &[("e", "a", "b")]));
        let c = corner_endpoint(&inst, &j, 0).unwrap();
        // oracle: four vertices (a,t), (b,t) and the single level-0 edge (e,l0)
        assert_eq!(c.map.dom().len(VERTEX), 4);
        assert_eq!(c.map.dom().len(EDGE), 1);
        let img = c.map.apply(EDGE, 0);
        assert_eq!(c.map.cod().label(EDGE, img), "(e,l0)");
    }

    #[test]
    fn corner_rejects_non_mono() {
        let inst = ProductCylinder::set2();
        let f = PresheafMap::to_terminal(&set(&["a", "b"]), &set(&["*"]));
        assert!(matches!(corner_full(&inst, &f), Err(Error::NotMono(_))));
    }

    #[test]
    fn ehd_on_small_sets() {
        let inst = ProductCylinder::set2();
        let e = set(&[]);
        let p = set(&["p"]);
        let two = set(&["p", "q"]);
        let samples = EhdSamples {
            objects: vec![e.clone(), p.clone(), two.clone()],
            monos: vec![PresheafMap::from_empty(&e, &p).unwrap(), inclusion(&p, &two)],
            spans: vec![(inclusion(&p, &two), inclusion(&p, &two))],
        };
        assert!(verify_ehd(&inst, &samples).unwrap().all_passed());
    }

    struct Corrupted(ProductCylinder);

    impl Cylinder for Corrupted {
        fn name(&self) -> &str {
            "corrupted"
        }
        fn shape(&self) -> Shape {
            self.0.shape()
        }
        fn interval(&self) -> &Obj {
            self.0.interval()
        }
        fn cylinder(&self, x: &Obj) -> Result<CylinderData> {
            let mut c = self.0.cylinder(x)?;
            // precompose ∂0 with a cyclic shift of the elements
            let n = x.len(0);
            let shift = PresheafMap::new(x.clone(), x.clone(), vec![(0..n).map(|i| (i + 1) % n).collect()])?;
            c.d0 = shift.then(&c.d0)?;
            Ok(c)
        }
        fn cylinder_map(&self, f: &PresheafMap, s: &CylinderData, t: &CylinderData) -> Result<PresheafMap> {
            self.0.cylinder_map(f, s, t)
        }
    }

    #[test]
    fn corrupted_instance_is_reported() {
        let inst = Corrupted(ProductCylinder::set2());
        let samples = EhdSamples {
            objects: vec![set(&["p", "q"])],
            ..Default::default()
        };
        let report = verify_ehd(&inst, &samples).unwrap();
        let failed: Vec<_> = report.failures().map(|c| c.axiom.as_str()).collect();
        assert_eq!(failed, ["sigma∘∂0 = id"]);
    }
}
