//! Finite presheaf homotopy laboratory: cylinders, homotopy classes, lifting
//! oracles, anodyne families, free monads and their witnesses, checked by
//! exhaustive search on desk-scale objects.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod corpus;
pub mod cylinder;
pub mod document;
pub mod equivalence;
pub mod error;
pub mod homotopy;
pub mod lifting;
pub mod limits;
pub mod map;
pub mod monads;
pub mod object;
pub mod report;
pub mod search;
pub mod shape;
pub mod simplicial;
pub mod union_find;
pub mod witnesses;

pub use error::{Error, Result};
pub use map::PresheafMap;
pub use object::{Obj, Presheaf};
pub use search::Guard;
pub use shape::Shape;
