//! Arithmetic of the quadratic base fields and of the quartic fields `K'`.

pub mod data;
pub mod field;
pub mod kummer;
pub mod quadratic;
pub mod selmer;

pub use field::{quad_field, QuadraticFieldData, TwoSplitting};
pub use kummer::{
    enumerate_kummer_fields, is_totally_positive, odd_abelian_obstruction, unit_torsion_at_2, KElt,
    KummerQuarticField, Witness,
};
pub use quadratic::{parse_quad, QuadElt};
pub use selmer::{selmer_basis, SelmerClass};
