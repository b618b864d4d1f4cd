use crate::error::Result;
use crate::forms::{Connection, Form, GaugeElement};
use crate::homotopy::ext_d;

/// Gauge-transformed connection `A' = g⁻¹ A g + g⁻¹ dg`.
pub fn gauge_transform(a: &Connection, g: &GaugeElement) -> Result<Connection> {
    let (gm, gi) = (g.matrix(), g.inverse_matrix());
    let conj = gi.wedge(a)?.wedge(&gm)?;
    let pure = gi.wedge(&gm.map(ext_d))?;
    conj.checked_add(&pure)
}

/// Transformed field `g⁻¹ φ`, which solves the transformed equation when
/// `φ` solves the original one.
pub fn gauge_push(phi: &Form, g: &GaugeElement) -> Result<Form> {
    g.inverse_matrix().act(phi)
}
