//! Vector- and matrix-valued differential forms with polynomial coefficients
//! and the pointwise operations of exterior algebra under the Euclidean
//! metric: wedge, interior product, musical maps, Hodge star.

mod field;
mod form;
mod gauge;
mod index_set;
mod matrix;
mod ops;

pub use field::PolyVectorField;
pub use form::Form;
pub(crate) use form::basis_name;
pub use gauge::GaugeElement;
pub use index_set::IndexSet;
pub use matrix::{Connection, MatrixForm};
pub use ops::{eta, flat, hodge_star, interior, sharp, star_inverse, wedge};

use crate::error::Result;

/// `A ∧ φ` for a matrix connection acting on a vector-valued form.
pub fn conn_wedge(a: &Connection, phi: &Form) -> Result<Form> {
    a.act(phi)
}

/// `A^♯ ⌟ φ`, the dual action of a connection.
pub fn conn_interior(a: &Connection, phi: &Form) -> Result<Form> {
    a.interior_act(phi)
}
