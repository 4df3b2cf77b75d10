//! Structure-preserving maps between finite presheaves.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::object::{Obj, Presheaf};

/// A cell-wise assignment `dom -> cod` commuting with every operator.
#[derive(Clone, PartialEq, Eq)]
pub struct PresheafMap {
    dom: Obj,
    cod: Obj,
    on: Vec<Vec<usize>>,
}

impl fmt::Debug for PresheafMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self.dom.shape();
        let mut m = f.debug_map();
        for s in 0..shape.sort_count() {
            for (c, &img) in self.on[s].iter().enumerate() {
                m.entry(
                    &format!("{}:{}", shape.sort_name(s), self.dom.label(s, c)),
                    &self.cod.label(s, img),
                );
            }
        }
        m.finish()
    }
}

impl PresheafMap {
    /// Validated constructor: totality, range and structure compatibility.
    pub fn new(dom: Obj, cod: Obj, on: Vec<Vec<usize>>) -> Result<PresheafMap> {
        if dom.shape() != cod.shape() {
            return Err(Error::ShapeMismatch {
                left: dom.shape().to_string(),
                right: cod.shape().to_string(),
            });
        }
        let shape = dom.shape();
        if on.len() != shape.sort_count() {
            return Err(Error::invalid("map has the wrong number of sorts"));
        }
        for s in 0..shape.sort_count() {
            if on[s].len() != dom.len(s) {
                return Err(Error::invalid(format!(
                    "map assigns {} of {} cells in sort `{}`",
                    on[s].len(),
                    dom.len(s),
                    shape.sort_name(s)
                )));
            }
            if on[s].iter().any(|&y| y >= cod.len(s)) {
                return Err(Error::invalid("map image out of range"));
            }
        }
        let map = PresheafMap { dom, cod, on };
        map.check_structure()?;
        Ok(map)
    }

    /// Constructor for internally generated maps known to be valid; checked in debug builds.
    pub(crate) fn new_unchecked(dom: Obj, cod: Obj, on: Vec<Vec<usize>>) -> PresheafMap {
        let map = PresheafMap { dom, cod, on };
        debug_assert!(map.check_structure().is_ok(), "internal map breaks structure: {map:?}");
        map
    }

    /// Builds a map from label assignments, one table per sort name.
    pub fn from_labels(dom: Obj, cod: Obj, on: &HashMap<String, HashMap<String, String>>) -> Result<PresheafMap> {
        let shape = dom.shape();
        for sort in on.keys() {
            if shape.sort_index(sort).is_none() {
                return Err(Error::UnknownSort(sort.clone()));
            }
        }
        let mut table = Vec::with_capacity(shape.sort_count());
        for s in 0..shape.sort_count() {
            let name = shape.sort_name(s);
            let assignment = on.get(&name);
            let mut images = Vec::with_capacity(dom.len(s));
            for label in dom.labels(s) {
                let target = assignment.and_then(|a| a.get(label)).ok_or_else(|| Error::MissingCell {
                    sort: name.clone(),
                    label: label.clone(),
                })?;
                images.push(cod.require(s, target)?);
            }
            if let Some(a) = assignment {
                for label in a.keys() {
                    dom.require(s, label)?;
                }
            }
            table.push(images);
        }
        PresheafMap::new(dom, cod, table)
    }

    pub fn identity(obj: &Obj) -> PresheafMap {
        let on = (0..obj.sort_count()).map(|s| (0..obj.len(s)).collect()).collect();
        PresheafMap {
            dom: obj.clone(),
            cod: obj.clone(),
            on,
        }
    }

    /// The unique map out of the empty object.
    pub fn from_empty(empty: &Obj, cod: &Obj) -> Result<PresheafMap> {
        if !empty.is_empty() {
            return Err(Error::invalid("domain is not empty"));
        }
        PresheafMap::new(empty.clone(), cod.clone(), vec![Vec::new(); cod.sort_count()])
    }

    /// The unique map into a terminal object.
    pub fn to_terminal(dom: &Obj, terminal: &Obj) -> PresheafMap {
        debug_assert!((0..terminal.sort_count()).all(|s| terminal.len(s) == 1));
        let on = (0..dom.sort_count()).map(|s| vec![0; dom.len(s)]).collect();
        PresheafMap::new_unchecked(dom.clone(), terminal.clone(), on)
    }

    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.on
    }

    pub fn apply(&self, sort: usize, cell: usize) -> usize {
        self.on[sort][cell]
    }

    /// Image label of the cell labeled `label`.
    pub fn apply_label(&self, sort: usize, label: &str) -> Option<&str> {
        let c = self.dom.find(sort, label)?;
        Some(self.cod.label(sort, self.on[sort][c]))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PresheafMap) -> Result<PresheafMap> {
        if !same_object(&self.cod, &next.dom) {
            return Err(Error::NotComposable(format!(
                "codomain {:?} differs from domain {:?}",
                self.cod, next.dom
            )));
        }
        let on = self
            .on
            .iter()
            .enumerate()
            .map(|(s, t)| t.iter().map(|&x| next.on[s][x]).collect())
            .collect();
        Ok(PresheafMap {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            on,
        })
    }

    /// Cell-wise injectivity on every sort (monomorphism in presheaf categories).
    pub fn is_mono(&self) -> bool {
        (0..self.on.len()).all(|s| {
            let mut seen = vec![false; self.cod.len(s)];
            self.on[s].iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        (0..self.on.len()).all(|s| {
            let mut seen = vec![false; self.cod.len(s)];
            for &y in &self.on[s] {
                seen[y] = true;
            }
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn inverse(&self) -> Option<PresheafMap> {
        if !self.is_iso() {
            return None;
        }
        let on = self
            .on
            .iter()
            .map(|t| {
                let mut inv = vec![0; t.len()];
                for (x, &y) in t.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Some(PresheafMap::new_unchecked(self.cod.clone(), self.dom.clone(), on))
    }

    /// Whether `cell` of `sort` in the codomain is hit.
    pub fn hits(&self, sort: usize, cell: usize) -> bool {
        self.on[sort].contains(&cell)
    }

    /// Per-sort membership mask of the image.
    pub fn image_mask(&self) -> Vec<Vec<bool>> {
        (0..self.on.len())
            .map(|s| {
                let mut mask = vec![false; self.cod.len(s)];
                for &y in &self.on[s] {
                    mask[y] = true;
                }
                mask
            })
            .collect()
    }

    /// Some preimage of every hit cell (the least one).
    pub fn section_table(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.on.len())
            .map(|s| {
                let mut pre = vec![None; self.cod.len(s)];
                for (x, &y) in self.on[s].iter().enumerate() {
                    pre[y].get_or_insert(x);
                }
                pre
            })
            .collect()
    }

    /// Same assignment, with domain and codomain replaced by equal objects.
    pub fn retarget(&self, dom: &Obj, cod: &Obj) -> Result<PresheafMap> {
        if !same_object(dom, &self.dom) || !same_object(cod, &self.cod) {
            return Err(Error::invalid("retarget requires equal objects"));
        }
        Ok(PresheafMap {
            dom: dom.clone(),
            cod: cod.clone(),
            on: self.on.clone(),
        })
    }

    /// Lexicographic comparison of assignments (sort-major, cells in label order).
    pub fn lex_cmp(&self, other: &PresheafMap) -> Ordering {
        self.on.cmp(&other.on)
    }

    fn check_structure(&self) -> Result<()> {
        let shape = self.dom.shape();
        for (o, op) in shape.operators().iter().enumerate() {
            for x in 0..self.dom.len(op.from) {
                let lhs = self.on[op.to][self.dom.op(o, x)];
                let rhs = self.cod.op(o, self.on[op.from][x]);
                if lhs != rhs {
                    return Err(Error::NotStructurePreserving(format!(
                        "operator `{}` on {} `{}`",
                        op.name,
                        shape.sort_name(op.from),
                        self.dom.label(op.from, x)
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn same_object(a: &Obj, b: &Obj) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Checks `lhs == rhs` as maps (same domain, codomain and assignment).
pub fn maps_equal(lhs: &PresheafMap, rhs: &PresheafMap) -> bool {
    lhs.on == rhs.on && same_object(&lhs.dom, &rhs.dom) && same_object(&lhs.cod, &rhs.cod)
}

/// Convenience: `g ∘ f`.
pub fn compose(g: &PresheafMap, f: &PresheafMap) -> Result<PresheafMap> {
    f.then(g)
}

impl Presheaf {
    /// Identity map on a shared handle.
    pub fn identity_map(self: &Arc<Self>) -> PresheafMap {
        PresheafMap::identity(self)
    }
}
