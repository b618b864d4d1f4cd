//! Exact local inversion of the covariant exterior derivative
//! `d∇ = d + A∧_` on polynomial data.
//!
//! Forms carry truncated multivariate power series over the rationals as
//! coefficients. The linear homotopy operator `H` turns the equation
//! `dφ + A∧φ = J` into a series that terminates at the truncation order, so
//! every result is the exact Taylor data of the true solution up to that
//! order.
//!
//! ```
//! use covinv::prelude::*;
//!
//! // dφ + dy ∧ φ = 0 with dH φ = dx on the plane
//! let a = Connection::scalar(Form::dx(2, 6, 1));
//! let c = Form::dx(2, 6, 0);
//! let report = solve_homogeneous(&a, &c, &Center::origin(2)).unwrap();
//! assert!(report.residual_min_degree >= 6);
//! ```

pub mod cli;
pub mod coeff;
pub mod error;
pub mod forms;
pub mod homotopy;
pub mod identities;
pub mod linsys;
pub mod solvers;

pub use error::{Error, Result};

/// The types and entry points most programs need.
pub mod prelude {
    pub use crate::coeff::{int, rat, MultiIndex, Rational, Series};
    pub use crate::error::{Error, Result};
    pub use crate::forms::{
        conn_interior, conn_wedge, eta, hodge_star, interior, sharp, star_inverse, wedge,
        Connection, Form, GaugeElement, IndexSet, MatrixForm, PolyVectorField,
    };
    pub use crate::homotopy::{
        codecompose, codiff, cohomotopy_h, decompose, ext_d, homotopy_h, point_part, Center,
        Decomposition,
    };
    pub use crate::solvers::*;
}
