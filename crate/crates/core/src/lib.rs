//! Combinatorics of finite Weyl groups: Bruhat order, Kazhdan–Lusztig
//! polynomials, the Hecke algebra, cells and the homological invariants of the
//! principal block of category O that they determine.

pub mod cells;
pub mod coxeter;
pub mod hecke;
pub mod homology;
pub mod klpoly;
pub mod poly;
pub mod poset;
pub mod rsk;
pub mod verify;
pub mod workbench;

pub use cells::{CellDecomposition, CellError, CellSide};
pub use coxeter::{CartanType, CoxeterError, CoxeterSystem, Element, Side};
pub use hecke::{HeckeAlgebra, HeckeElement};
pub use homology::{ExtFamily, GradedExtEntry, Homology, HomologyError, HomologyTable, Status};
pub use klpoly::{BarInvarianceOracle, KlError, KlTable};
pub use poly::{IntPolynomial, LaurentPolynomial};
pub use workbench::{BuildOptions, Workbench, WorkbenchError};
