//! Operator identities checked on seeded pseudo-random polynomial forms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{rat, MultiIndex, Rational, Series};
use crate::error::Result;
use crate::forms::{
    hodge_star, interior, sharp, wedge, Connection, Form, IndexSet, MatrixForm, PolyVectorField,
};
use crate::homotopy::{
    codiff, cohomotopy_h, dual_point_part, ext_d, homotopy_h, point_part, Center,
};
use crate::solvers::curvature;

/// Tally of one identity over a batch of random inputs.
#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub name: &'static str,
    pub dim: usize,
    pub fiber: usize,
    pub trials: usize,
    pub failures: usize,
    /// Description of the first failing input.
    pub first_failure: Option<String>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A checker returns `None` when the identity holds on the sampled input.
type Check = fn(&mut ChaCha8Rng, &Shape) -> Result<Option<String>>;

/// Dimension, fiber dimension and truncation of the sampled forms.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub dim: usize,
    pub fiber: usize,
    pub trunc: u32,
}

/// Identities in the order they are reported.
pub const IDENTITIES: &[(&str, Check)] = &[
    ("H^2 = 0", h_squared),
    ("dHd = d", dhd),
    ("HdH = H", hdh),
    ("dH + Hd + s* = I", homotopy_formula),
    ("(dH)^2 = dH", dh_projector),
    ("h^2 = 0", co_h_squared),
    ("h delta h = h", co_hdh),
    ("delta h delta = delta", co_dhd),
    ("h delta + delta h + S = I", co_homotopy_formula),
    ("alpha# _| *phi = *(phi ^ alpha)", star_interior),
    ("(delta + A#_|)*phi = (-1)^(k+1) *(d + _^A)phi", dual_sign_stated),
    ("(delta + A#_|)*phi = (-1)^(k+1) *(d - A^_)phi", dual_sign_corrected),
    ("curvature recursion for H(A^d alpha)", curvature_recursion),
    ("phi + H(A^phi) = 0 only for phi = 0", no_zero_divisor),
    ("P_i P_j = P_j P_i", projectors_commute),
    ("P_i(alpha ^ beta) = P_i alpha ^ P_i beta", projector_multiplicative),
];

/// Runs every identity on `samples` random inputs for fiber dimensions 1
/// and 2. Scalar-only identities are skipped for fiber 2.
pub fn run_suite(dim: usize, trunc: u32, seed: u64, samples: usize) -> Result<Vec<IdentityResult>> {
    let mut out = Vec::new();
    for fiber in [1, 2] {
        let shape = Shape { dim, fiber, trunc };
        for (i, (name, check)) in IDENTITIES.iter().enumerate() {
            if fiber > 1 && scalar_only(name) {
                continue;
            }
            let stream = seed ^ ((dim as u64) << 40) ^ ((fiber as u64) << 32) ^ i as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            let mut failures = 0;
            let mut first_failure = None;
            for _ in 0..samples {
                if let Some(msg) = check(&mut rng, &shape)? {
                    failures += 1;
                    first_failure.get_or_insert(msg);
                }
            }
            out.push(IdentityResult {
                name,
                dim,
                fiber,
                trials: samples,
                failures,
                first_failure,
            });
        }
    }
    Ok(out)
}

fn scalar_only(name: &str) -> bool {
    name.starts_with("(delta + A#") || name.starts_with("P_i")
}

/// Random nonzero rational with small numerator and denominator.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let num = *[-5i64, -4, -3, -2, -1, 1, 2, 3, 4, 5].choose(rng).expect("nonempty");
    rat(num, rng.gen_range(1..=4))
}

/// Sparse random polynomial with up to `terms` monomials of degree at most
/// `max_degree`.
pub fn random_series(
    rng: &mut impl Rng,
    dim: usize,
    trunc: u32,
    max_degree: u32,
    terms: usize,
) -> Series {
    let monos = MultiIndex::all_up_to(dim, max_degree.min(trunc));
    let count = rng.gen_range(1..=terms);
    let picked = (0..count)
        .map(|_| (*monos.choose(rng).expect("nonempty"), random_rational(rng)))
        .collect::<Vec<_>>();
    Series::from_terms(dim, trunc, picked)
}

/// Sparse nonzero random `m`-vector `k`-form with coefficient degree at most
/// `max_degree`.
pub fn random_form(
    rng: &mut impl Rng,
    shape: &Shape,
    k: usize,
    max_degree: u32,
) -> Form {
    let slots = IndexSet::all_of_size(shape.dim, k);
    loop {
        let mut out = Form::zero(shape.dim, shape.fiber, k, shape.trunc);
        for _ in 0..rng.gen_range(1..=3) {
            let idx = *slots.choose(rng).expect("nonempty");
            let a = rng.gen_range(0..shape.fiber);
            out.add_term(idx, a, random_series(rng, shape.dim, shape.trunc, max_degree, 3));
        }
        if !out.is_zero() {
            return out;
        }
    }
}

/// Random `m × m` connection with low-degree polynomial one-form entries,
/// roughly half of them zero.
pub fn random_connection(rng: &mut impl Rng, shape: &Shape, max_degree: u32) -> Connection {
    let scalar = Shape { fiber: 1, ..*shape };
    let mut a = MatrixForm::zero(shape.dim, shape.fiber, 1, shape.trunc);
    loop {
        for r in 0..shape.fiber {
            for c in 0..shape.fiber {
                let e = if rng.gen_bool(0.5) {
                    random_form(rng, &scalar, 1, max_degree)
                } else {
                    Form::zero(shape.dim, 1, 1, shape.trunc)
                };
                a.set(r, c, e).expect("scalar one-form");
            }
        }
        if !a.is_zero() {
            return a;
        }
    }
}

fn any_form(rng: &mut impl Rng, shape: &Shape, max_degree: u32) -> Form {
    let k = rng.gen_range(0..=shape.dim);
    random_form(rng, shape, k, max_degree)
}

fn origin(shape: &Shape) -> Center {
    Center::origin(shape.dim)
}

fn verdict(lhs: &Form, rhs: &Form, input: &Form) -> Option<String> {
    (lhs != rhs).then(|| format!("input {input}: {lhs} != {rhs}"))
}

fn h_squared(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let o = origin(s);
    let hh = homotopy_h(&homotopy_h(&phi, &o), &o);
    Ok((!hh.is_zero()).then(|| format!("input {phi}: H^2 = {hh}")))
}

fn dhd(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let d = ext_d(&phi);
    Ok(verdict(&ext_d(&homotopy_h(&d, &origin(s))), &d, &phi))
}

fn hdh(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let o = origin(s);
    let h = homotopy_h(&phi, &o);
    Ok(verdict(&homotopy_h(&ext_d(&h), &o), &h, &phi))
}

/// Needs coefficient degree `≤ N - 1`: `H` of a degree-`N` term would
/// exceed the truncation, so `dH` cannot return it.
fn homotopy_formula(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc - 1);
    let o = origin(s);
    let sum = ext_d(&homotopy_h(&phi, &o))
        .checked_add(&homotopy_h(&ext_d(&phi), &o))?
        .checked_add(&point_part(&phi, &o)?)?;
    Ok(verdict(&sum, &phi, &phi))
}

fn dh_projector(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let o = origin(s);
    let dh = |f: &Form| ext_d(&homotopy_h(f, &o));
    let once = dh(&phi);
    Ok(verdict(&dh(&once), &once, &phi))
}

fn co_h_squared(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let o = origin(s);
    let hh = cohomotopy_h(&cohomotopy_h(&phi, &o), &o);
    Ok((!hh.is_zero()).then(|| format!("input {phi}: h^2 = {hh}")))
}

fn co_hdh(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let o = origin(s);
    let h = cohomotopy_h(&phi, &o);
    Ok(verdict(&cohomotopy_h(&codiff(&h), &o), &h, &phi))
}

fn co_dhd(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let d = codiff(&phi);
    Ok(verdict(&codiff(&cohomotopy_h(&d, &origin(s))), &d, &phi))
}

fn co_homotopy_formula(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc - 1);
    let o = origin(s);
    let sum = codiff(&cohomotopy_h(&phi, &o))
        .checked_add(&cohomotopy_h(&codiff(&phi), &o))?
        .checked_add(&dual_point_part(&phi, &o)?)?;
    Ok(verdict(&sum, &phi, &phi))
}

fn random_one_form(rng: &mut ChaCha8Rng, s: &Shape) -> Form {
    random_form(rng, &Shape { fiber: 1, ..*s }, 1, 2)
}

fn star_interior(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let alpha = random_one_form(rng, s);
    let lhs = interior(&sharp(&alpha)?, &hodge_star(&phi))?;
    let rhs = hodge_star(&wedge(&phi, &alpha)?);
    Ok(verdict(&lhs, &rhs, &phi))
}

fn dual_side(a: &Form, phi: &Form) -> Result<Form> {
    let star = hodge_star(phi);
    codiff(&star).checked_add(&interior(&sharp(a)?, &star)?)
}

fn parity_sign(k: usize) -> Rational {
    if k % 2 == 1 { rat(1, 1) } else { rat(-1, 1) }
}

fn dual_sign_stated(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let a = random_one_form(rng, s);
    let lhs = dual_side(&a, &phi)?;
    let inner = ext_d(&phi).checked_add(&wedge(&phi, &a)?)?;
    let rhs = hodge_star(&inner).scale(&parity_sign(phi.degree()));
    Ok(verdict(&lhs, &rhs, &phi).map(|m| format!("k = {}, A = {a}, {m}", phi.degree())))
}

fn dual_sign_corrected(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let a = random_one_form(rng, s);
    let lhs = dual_side(&a, &phi)?;
    let inner = ext_d(&phi).checked_sub(&wedge(&a, &phi)?)?;
    let rhs = hodge_star(&inner).scale(&parity_sign(phi.degree()));
    Ok(verdict(&lhs, &rhs, &phi).map(|m| format!("k = {}, A = {a}, {m}", phi.degree())))
}

/// `H(A∧dα) = dH(A∧α) + H(F∧α) - H(A∧A∧α) - A∧α`, compared below the
/// truncation order.
fn curvature_recursion(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let k = rng.gen_range(0..s.dim);
    let alpha = random_form(rng, s, k, s.trunc);
    let a = random_connection(rng, s, 2);
    let o = origin(s);
    let lhs = homotopy_h(&a.act(&ext_d(&alpha))?, &o);
    let a_alpha = a.act(&alpha)?;
    let rhs = ext_d(&homotopy_h(&a_alpha, &o))
        .checked_add(&homotopy_h(&curvature(&a)?.act(&alpha)?, &o))?
        .checked_sub(&homotopy_h(&a.act(&a_alpha)?, &o))?
        .checked_sub(&a_alpha)?;
    let diff = lhs.checked_sub(&rhs)?.below_degree(s.trunc);
    Ok((!diff.is_zero()).then(|| format!("input {alpha}, A = {a}: difference {diff}")))
}

fn no_zero_divisor(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let k = rng.gen_range(0..s.dim);
    let phi = random_form(rng, s, k, s.trunc);
    let a = random_connection(rng, s, 2);
    let image = phi.checked_add(&homotopy_h(&a.act(&phi)?, &origin(s)))?;
    Ok(image.is_zero().then(|| format!("input {phi} maps to zero")))
}

fn coordinate_projector(s: &Shape, i: usize, phi: &Form) -> Result<Form> {
    let x = PolyVectorField::coordinate(s.dim, s.trunc, i);
    let contracted = interior(&x, phi)?;
    phi.checked_sub(&wedge(&Form::dx(s.dim, s.trunc, i), &contracted)?)
}

fn projectors_commute(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let phi = any_form(rng, s, s.trunc);
    let i = rng.gen_range(0..s.dim);
    let j = rng.gen_range(0..s.dim);
    let ij = coordinate_projector(s, i, &coordinate_projector(s, j, &phi)?)?;
    let ji = coordinate_projector(s, j, &coordinate_projector(s, i, &phi)?)?;
    Ok(verdict(&ij, &ji, &phi))
}

fn projector_multiplicative(rng: &mut ChaCha8Rng, s: &Shape) -> Result<Option<String>> {
    let ka = rng.gen_range(0..=s.dim);
    let kb = rng.gen_range(0..=s.dim - ka);
    let alpha = random_form(rng, s, ka, s.trunc);
    let beta = random_form(rng, s, kb, s.trunc);
    let i = rng.gen_range(0..s.dim);
    let lhs = coordinate_projector(s, i, &wedge(&alpha, &beta)?)?;
    let rhs = wedge(
        &coordinate_projector(s, i, &alpha)?,
        &coordinate_projector(s, i, &beta)?,
    )?;
    Ok(verdict(&lhs, &rhs, &alpha))
}
