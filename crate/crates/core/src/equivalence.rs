//! T-weak equivalences relative to a declared algebra family, the
//! homotopy-inverse characterization through free algebras, and the
//! consistency suites built on them.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::homotopy::{find_homotopy, induced_class_map, ClassMapVerdict};
use crate::lifting::{is_naively_fibrant_upto, solve_lift, AnodyneFamily, FibrancyVerdict, LiftingProblem};
use crate::map::{maps_equal, PresheafMap};
use crate::monads::{extend_into_free, FreeMonad};
use crate::object::Presheaf;
use crate::search::{enumerate_homs, Guard};

/// An algebra with the name it is reported under.
#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub name: String,
    pub algebra: Algebra,
}

impl NamedAlgebra {
    pub fn new(name: impl Into<String>, algebra: Algebra) -> NamedAlgebra {
        NamedAlgebra {
            name: name.into(),
            algebra,
        }
    }
}

/// Verdict of `[f, A]` bijectivity over a family of algebras.
#[derive(Clone, Debug)]
pub struct WeVerdict {
    pub per_algebra: Vec<(String, ClassMapVerdict)>,
    pub holds: bool,
}

impl WeVerdict {
    pub fn caveat(&self) -> &'static str {
        "relative to supplied family and caps"
    }
}

/// Whether `[f, A]: [Y, A] → [X, A]` is a bijection for every algebra `A` of
/// the family, with classes taken in the instance's cylinder.
pub fn is_t_weak_equivalence(
    f: &PresheafMap,
    algebras: &[NamedAlgebra],
    inst: &dyn Cylinder,
    guard: Guard,
) -> Result<WeVerdict> {
    let per_algebra = algebras
        .par_iter()
        .map(|a| {
            let carrier = a.algebra.carrier(inst.shape())?;
            Ok((a.name.clone(), induced_class_map(inst, f, &carrier, guard)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = per_algebra.iter().all(|(_, v)| v.bijective());
    Ok(WeVerdict { per_algebra, holds })
}

/// Outcome of searching an algebra homomorphism `f̄: T(Y) → T(X)` that is a
/// homotopy inverse of `T(f)` at the monad's cap.
#[derive(Clone, Debug)]
pub struct InverseReport {
    pub t_f: PresheafMap,
    /// A candidate with `T(f)∘f̄ ≃ id` and `f̄∘T(f) ≃ id`: the first strict
    /// inverse if there is one, else the first in enumeration order of
    /// `φ = f̄∘η_Y`.
    pub witness: Option<PresheafMap>,
    /// Maps `Y → T(X)` whose extension fits the cap.
    pub candidates: usize,
    pub cap: usize,
}

impl InverseReport {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn caveat(&self) -> String {
        format!("relative to cap {}", self.cap)
    }
}

/// Searches truncated algebra homomorphisms `f̄: T(Y) → T(X)` for a one-step
/// homotopy inverse of `T(f)`.
pub fn alternative_we_check(
    f: &PresheafMap,
    monad: &FreeMonad,
    inst: &dyn Cylinder,
    guard: Guard,
) -> Result<InverseReport> {
    let tx = monad.apply(f.dom())?;
    let ty = monad.apply(f.cod())?;
    let t_f = monad.map(f, &tx, &ty)?;
    let id_tx = PresheafMap::identity(tx.object());
    let id_ty = PresheafMap::identity(ty.object());
    let mut candidates = Vec::new();
    for phi in enumerate_homs(f.cod(), tx.object(), guard)? {
        if let Some(bar) = extend_into_free(&phi, &ty, &tx)? {
            candidates.push(bar);
        }
    }
    // 0: strict inverse, 1: inverse up to homotopy, 2: neither
    let verdicts = candidates
        .par_iter()
        .map(|bar| {
            let there = bar.then(&t_f)?;
            let back = t_f.then(bar)?;
            if maps_equal(&there, &id_ty) && maps_equal(&back, &id_tx) {
                return Ok(0u8);
            }
            if find_homotopy(inst, &there, &id_ty, guard)?.is_none() {
                return Ok(2);
            }
            Ok(if find_homotopy(inst, &back, &id_tx, guard)?.is_some() { 1 } else { 2 })
        })
        .collect::<Result<Vec<u8>>>()?;
    let best = verdicts.iter().enumerate().filter(|(_, &v)| v < 2).min_by_key(|(i, &v)| (v, *i));
    let witness = best.map(|(i, _)| candidates[i].clone());
    Ok(InverseReport {
        t_f,
        witness,
        candidates: candidates.len(),
        cap: monad.cap(),
    })
}

/// Naive fibrancy of each algebra carrier against a family.
#[derive(Clone, Debug)]
pub struct M3Report {
    pub per_algebra: Vec<(String, FibrancyVerdict)>,
}

impl M3Report {
    pub fn all_hold(&self) -> bool {
        self.per_algebra.iter().all(|(_, v)| v.holds())
    }
}

pub fn check_m3_sample(algebras: &[NamedAlgebra], family: &AnodyneFamily, guard: Guard) -> Result<M3Report> {
    let shape = family
        .generators
        .first()
        .or(family.seeds.first())
        .map(|m| m.dom().shape())
        .ok_or_else(|| Error::invalid("empty anodyne family"))?;
    let per_algebra = algebras
        .iter()
        .map(|a| {
            let carrier = a.algebra.carrier(shape)?;
            Ok((a.name.clone(), is_naively_fibrant_upto(&carrier, family, guard)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(M3Report { per_algebra })
}

/// A retraction `α: T(A) → A` of `η_A`, found by solving the lifting
/// problem of `η_A` against `A → 1` with top map `id_A`.
pub fn find_retraction(algebra: &Algebra, monad: &FreeMonad, guard: Guard) -> Result<Option<PresheafMap>> {
    let a = algebra.carrier(monad.shape())?;
    let ta = monad.apply(&a)?;
    let eta = monad.unit(&ta)?;
    let one = Arc::new(Presheaf::terminal(monad.shape()));
    let problem = LiftingProblem::new(
        eta,
        PresheafMap::to_terminal(&a, &one),
        PresheafMap::identity(&a),
        PresheafMap::to_terminal(ta.object(), &one),
    )?;
    solve_lift(&problem, guard)
}

/// Three-for-two on a composable pair: if two of `f`, `g`, `g∘f` are
/// T-weak equivalences, so is the third.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeForTwo {
    /// Verdicts for `f`, `g` and `g∘f`.
    pub verdicts: [bool; 3],
}

impl ThreeForTwo {
    pub fn consistent(&self) -> bool {
        self.verdicts.iter().filter(|&&v| v).count() != 2
    }
}

pub fn three_for_two(
    f: &PresheafMap,
    g: &PresheafMap,
    algebras: &[NamedAlgebra],
    inst: &dyn Cylinder,
    guard: Guard,
) -> Result<ThreeForTwo> {
    let gf = f.then(g)?;
    let mut verdicts = [false; 3];
    for (slot, m) in verdicts.iter_mut().zip([f, g, &gf]) {
        *slot = is_t_weak_equivalence(m, algebras, inst, guard)?.holds;
    }
    Ok(ThreeForTwo { verdicts })
}

/// The checkable content around a map `f`: unit naturality, the
/// factorization through a homotopy inverse of `T(f)`, and three-for-two on
/// an optional second map.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    /// `η_Y∘f = T(f)∘η_X`.
    pub naturality: bool,
    pub weak_equivalence: bool,
    /// When `f` is a T-weak equivalence: whether a homotopy inverse of
    /// `T(f)` was found.
    pub factorization: Option<bool>,
    pub three_for_two: Option<ThreeForTwo>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.naturality
            && self.factorization.unwrap_or(true)
            && self.three_for_two.as_ref().is_none_or(ThreeForTwo::consistent)
    }
}

pub fn naturality_and_minimality_suite(
    f: &PresheafMap,
    then: Option<&PresheafMap>,
    monad: &FreeMonad,
    inst: &dyn Cylinder,
    algebras: &[NamedAlgebra],
    guard: Guard,
) -> Result<SuiteReport> {
    let tx = monad.apply(f.dom())?;
    let ty = monad.apply(f.cod())?;
    let eta_x = monad.unit(&tx)?;
    let eta_y = monad.unit(&ty)?;
    let t_f = monad.map(f, &tx, &ty)?;
    let naturality = maps_equal(&f.then(&eta_y)?, &eta_x.then(&t_f)?);
    let weak_equivalence = is_t_weak_equivalence(f, algebras, inst, guard)?.holds;
    let factorization = if weak_equivalence {
        Some(alternative_we_check(f, monad, inst, guard)?.found())
    } else {
        None
    };
    let three_for_two = then.map(|g| three_for_two(f, g, algebras, inst, guard)).transpose()?;
    Ok(SuiteReport {
        naturality,
        weak_equivalence,
        factorization,
        three_for_two,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Category, Monoid};
    use crate::cylinder::ProductCylinder;
    use crate::object::Obj;
    use crate::shape::Shape;

    fn monoids() -> Vec<NamedAlgebra> {
        vec![
            NamedAlgebra::new("trivial", Algebra::Monoid(Monoid::trivial())),
            NamedAlgebra::new("z2", Algebra::Monoid(Monoid::z2())),
            NamedAlgebra::new("idempotent", Algebra::Monoid(Monoid::idempotent())),
        ]
    }

    fn set(xs: &[&str]) -> Obj {
        Arc::new(Presheaf::set(xs).unwrap())
    }

    #[test]
    fn set_maps_are_weak_equivalences() {
        let inst = ProductCylinder::set2();
        let f = PresheafMap::new(set(&["a", "b"]), set(&["p"]), vec![vec![0, 0]]).unwrap();
        let v = is_t_weak_equivalence(&f, &monoids(), &inst, Guard::default()).unwrap();
        assert!(v.holds);
        assert_eq!(v.caveat(), "relative to supplied family and caps");
        let alt = alternative_we_check(&f, &FreeMonad::monoid(2), &inst, Guard::default()).unwrap();
        assert!(alt.found());
    }

    #[test]
    fn identity_has_identity_inverse() {
        let inst = ProductCylinder::set2();
        let x = set(&["a"]);
        let alt = alternative_we_check(&PresheafMap::identity(&x), &FreeMonad::monoid(2), &inst, Guard::default()).unwrap();
        let w = alt.witness.unwrap();
        assert!(w.is_iso());
    }

    #[test]
    fn endpoint_inclusion_is_a_weak_equivalence_for_categories() {
        let inst = ProductCylinder::reflexive_graph_interval();
        let point = Arc::new(Presheaf::reflexive_graph::<&str>(&["0"], &[]).unwrap());
        let i = inst.interval().clone();
        let d0 = PresheafMap::new(point, i, vec![vec![0], vec![i_identity(&inst)]]).unwrap();
        let cats = vec![
            NamedAlgebra::new("terminal", Algebra::Category(Category::terminal())),
            NamedAlgebra::new("groupoid", Algebra::Category(Category::groupoid_interval())),
            NamedAlgebra::new("discrete2", Algebra::Category(Category::discrete(2))),
        ];
        assert!(is_t_weak_equivalence(&d0, &cats, &inst, Guard::default()).unwrap().holds);
    }

    fn i_identity(inst: &ProductCylinder) -> usize {
        inst.interval().identity_loop(0)
    }

    #[test]
    fn algebras_have_retractions() {
        let m = FreeMonad::monoid(2);
        for a in monoids() {
            let alpha = find_retraction(&a.algebra, &m, Guard::default()).unwrap();
            assert!(alpha.is_some(), "{}", a.name);
        }
        let c = FreeMonad::category(Shape::ReflexiveGraph, 2).unwrap();
        assert!(find_retraction(&Algebra::Category(Category::chain(2)), &c, Guard::default()).unwrap().is_some());
    }

    #[test]
    fn suite_on_identity() {
        let inst = ProductCylinder::set2();
        let x = set(&["a", "b"]);
        let id = PresheafMap::identity(&x);
        let r = naturality_and_minimality_suite(&id, Some(&id), &FreeMonad::monoid(2), &inst, &monoids(), Guard::default())
            .unwrap();
        assert!(r.passed());
        assert_eq!(r.factorization, Some(true));
    }
}
