//! Finite-precision arithmetic in 2-adic fields of degree at most 12.

pub mod element;
pub mod ring;
pub mod squares;
pub mod tower;

pub use element::{teichmuller, teichmuller_3_torsion, PadicElement};
pub use ring::{Residue, W};
pub use squares::{class_representative, is_square, sqrt, square_class_coords, SquareClassData, SquareClassGen};
pub use tower::{make_tower, LocalFieldTower, PrecisionContext, Step};
