//! Line-oriented problem files.
//!
//! ```text
//! # dφ + dy∧φ = 0 with dHφ = dx
//! dim=2
//! trunc=12
//! A[1][1]=dy
//! equation=homogeneous
//! c=dx
//! ```
//!
//! Several `key=value` pairs may share a line. Indices in keys are 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::coeff::{fmt_rational, parse_rational, Rational, Series};
use crate::error::{Error, Result};
use crate::forms::{sharp, Connection, Form, MatrixForm, PolyVectorField};

use super::expr::{parse_expr, ExprError};

/// Which solver a problem asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    Homogeneous,
    InhomExact,
    General,
    Curvature,
    Dual,
    Pipeline,
}

impl Equation {
    pub const ALL: [Equation; 6] = [
        Equation::Homogeneous,
        Equation::InhomExact,
        Equation::General,
        Equation::Curvature,
        Equation::Dual,
        Equation::Pipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Equation::Homogeneous => "homogeneous",
            Equation::InhomExact => "inhom-exact",
            Equation::General => "general",
            Equation::Curvature => "curvature",
            Equation::Dual => "dual",
            Equation::Pipeline => "pipeline",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Latex,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Latex => "latex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "text" => Some(OutputFormat::Text),
            "json" => Some(OutputFormat::Json),
            "latex" => Some(OutputFormat::Latex),
            _ => None,
        }
    }
}

/// A first-order factor of a pipeline: `d` for `d + A∧_`, `delta` for
/// `δ + A♯⌟_`, each with a power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageSpec {
    pub dual: bool,
    pub power: usize,
}

/// A fully parsed and validated problem.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub dim: usize,
    pub trunc: u32,
    pub fiber: usize,
    pub center: Vec<Rational>,
    pub connection: Connection,
    pub equation: Equation,
    /// `c`, or `c[1]`, `c[2]`, … in the order the first-order steps are
    /// solved.
    pub initial: Vec<Form>,
    pub rhs: Option<Form>,
    pub stages: Vec<StageSpec>,
    /// Degree of the unknown, needed only when every given form is zero.
    pub degree: Option<usize>,
    pub frame: Option<(Vec<Form>, Vec<PolyVectorField>)>,
    pub gauge: Option<Vec<Series>>,
    pub output: OutputFormat,
}

/// Overrides supplied on the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub center: Option<Vec<Rational>>,
    pub trunc: Option<u32>,
    pub output: Option<OutputFormat>,
}

struct Entry {
    value: String,
    line: usize,
    column: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(key, value, key column, value column)` pairs.
fn split_pairs(line: &str) -> Vec<(String, String, usize, usize)> {
    let chars: Vec<char> = line.chars().collect();
    // a key starts at line start or after whitespace and runs to '='
    let mut starts = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if (i == 0 || chars[i - 1].is_whitespace()) && chars[i].is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || "[]_".contains(chars[j])) {
                j += 1;
            }
            if j < chars.len() && chars[j] == '=' {
                starts.push((i, j));
                i = j + 1;
                continue;
            }
        }
        i += 1;
    }
    let mut out = Vec::new();
    for (n, &(k0, eq)) in starts.iter().enumerate() {
        let end = starts.get(n + 1).map_or(chars.len(), |s| s.0);
        let key: String = chars[k0..eq].iter().collect();
        let raw: String = chars[eq + 1..end].iter().collect();
        let lead = raw.len() - raw.trim_start().len();
        out.push((key, raw.trim().to_string(), k0 + 1, eq + 2 + lead));
    }
    out
}

/// Parses `name`, `name[i]` or `name[i][j]`.
fn key_parts(key: &str) -> Option<(&str, Vec<usize>)> {
    let base_end = key.find('[').unwrap_or(key.len());
    let (base, mut rest) = key.split_at(base_end);
    let mut idx = Vec::new();
    while !rest.is_empty() {
        let close = rest.find(']')?;
        idx.push(rest.get(1..close)?.parse().ok()?);
        rest = &rest[close + 1..];
    }
    Some((base, idx))
}

/// Parses a problem document.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    parse_problem_with(text, &Overrides::default())
}

/// Parses a problem document, applying command-line overrides.
pub fn parse_problem_with(text: &str, overrides: &Overrides) -> Result<ProblemSpec> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    for (ln, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let pairs = split_pairs(line);
        if pairs.is_empty() {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(parse_err(ln + 1, col, "expected key=value"));
        }
        let first = pairs[0].2;
        let prefix: String = line.chars().take(first - 1).collect();
        if !prefix.trim().is_empty() {
            return Err(parse_err(ln + 1, 1, "expected key=value"));
        }
        for (key, value, kcol, vcol) in pairs {
            let Some((base, idx)) = key_parts(&key) else {
                return Err(parse_err(ln + 1, kcol, format!("malformed key '{key}'")));
            };
            let arity = match base {
                "dim" | "trunc" | "fiber" | "center" | "equation" | "J" | "output" | "stages"
                | "degree" => 0..=0,
                "c" => 0..=1,
                "omega" | "X" => 1..=1,
                "A" | "g" => 2..=2,
                _ => return Err(parse_err(ln + 1, kcol, format!("unknown key '{base}'"))),
            };
            if !arity.contains(&idx.len()) || idx.contains(&0) {
                return Err(parse_err(ln + 1, kcol, format!("bad indices in key '{key}'")));
            }
            if entries.contains_key(&key) {
                return Err(parse_err(ln + 1, kcol, format!("duplicate key '{key}'")));
            }
            entries.insert(
                key,
                Entry {
                    value,
                    line: ln + 1,
                    column: vcol,
                },
            );
        }
    }
    Builder { entries, overrides }.build()
}

struct Builder<'a> {
    entries: BTreeMap<String, Entry>,
    overrides: &'a Overrides,
}

impl Builder<'_> {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    fn uint(&self, key: &str) -> Result<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse()
                .map(Some)
                .map_err(|_| parse_err(e.line, e.column, format!("{key} must be a nonnegative integer"))),
        }
    }

    fn indexed(&self, base: &str) -> Vec<(Vec<usize>, &Entry)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .filter_map(|(k, e)| {
                let (b, idx) = key_parts(k)?;
                (b == base && !idx.is_empty()).then_some((idx, e))
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn expr(&self, e: &Entry, dim: usize, trunc: u32, fiber: usize, degree: Option<usize>) -> Result<Form> {
        let parsed = parse_expr(&e.value, dim, trunc).map_err(|ExprError { column, message }| {
            parse_err(e.line, e.column + column - 1, message)
        })?;
        parsed
            .into_form(fiber, degree)
            .map_err(|m| Error::Validation(format!("line {}: {m}", e.line)))
    }

    fn build(self) -> Result<ProblemSpec> {
        let dim = self
            .uint("dim")?
            .ok_or_else(|| Error::Validation("missing key 'dim'".into()))?;
        if dim == 0 || dim > crate::coeff::MAX_DIM {
            return Err(Error::Validation(format!("dim must be between 1 and {}", crate::coeff::MAX_DIM)));
        }
        let trunc = match self.overrides.trunc {
            Some(n) => n,
            None => self
                .uint("trunc")?
                .ok_or_else(|| Error::Validation("missing key 'trunc'".into()))? as u32,
        };
        if trunc == 0 {
            return Err(Error::Validation("trunc must be positive".into()));
        }
        let fiber = self.uint("fiber")?.unwrap_or(1);
        if fiber == 0 {
            return Err(Error::Validation("fiber must be positive".into()));
        }

        let center = match (&self.overrides.center, self.get("center")) {
            (Some(c), _) => c.clone(),
            (None, Some(e)) => parse_center(&e.value).ok_or_else(|| {
                parse_err(e.line, e.column, "center must be comma-separated rationals such as 1/2,0")
            })?,
            (None, None) => vec![Rational::zero(); dim],
        };
        if center.len() != dim {
            return Err(Error::Validation(format!(
                "center has {} coordinates in dimension {dim}",
                center.len()
            )));
        }

        let equation = {
            let e = self
                .get("equation")
                .ok_or_else(|| Error::Validation("missing key 'equation'".into()))?;
            *Equation::ALL
                .iter()
                .find(|q| q.name() == e.value)
                .ok_or_else(|| {
                    let names: Vec<_> = Equation::ALL.iter().map(|q| q.name()).collect();
                    parse_err(e.line, e.column, format!("unknown equation; expected one of {}", names.join(", ")))
                })?
        };

        let output = match (self.overrides.output, self.get("output")) {
            (Some(o), _) => o,
            (None, Some(e)) => OutputFormat::parse(&e.value)
                .ok_or_else(|| parse_err(e.line, e.column, "output must be text, json or latex"))?,
            (None, None) => OutputFormat::Text,
        };

        let mut connection = MatrixForm::zero(dim, fiber, 1, trunc);
        for (idx, e) in self.indexed("A") {
            let (r, c) = (idx[0], idx[1]);
            if r > fiber || c > fiber {
                return Err(Error::Validation(format!("A[{r}][{c}] outside a {fiber}x{fiber} connection")));
            }
            let f = self.expr(e, dim, trunc, 1, Some(1))?;
            connection.set(r - 1, c - 1, f)?;
        }

        let stages = match self.get("stages") {
            None => Vec::new(),
            Some(e) => parse_stages(&e.value)
                .ok_or_else(|| parse_err(e.line, e.column, "stages must look like delta,d^2"))?,
        };
        if equation == Equation::Pipeline && stages.is_empty() {
            return Err(Error::Validation("pipeline problems need a 'stages' key".into()));
        }

        let degree = self.uint("degree")?;
        let steps = match equation {
            Equation::Curvature => 2,
            Equation::Pipeline => stages.iter().map(|s| s.power).sum(),
            _ => 1,
        };
        let shifts = step_shifts(equation, &stages);
        // degree of the unknown at each step, when it can be inferred
        let mut unknown = degree;
        let rhs_entry = self.get("J");
        let rhs_probe = rhs_entry.map(|e| self.expr(e, dim, trunc, fiber, None).ok());
        if unknown.is_none() {
            if let Some(Some(j)) = &rhs_probe {
                let total: isize = shifts.iter().sum();
                unknown = usize::try_from(j.degree() as isize - total).ok();
            }
        }
        let c_entries = self.initial_entries(steps)?;
        if unknown.is_none() {
            for (s, e) in c_entries.iter().enumerate() {
                if let Some(e) = e {
                    if let Ok(f) = self.expr(e, dim, trunc, fiber, None) {
                        // the unknown of step s sits `shifts[s+1..]` above the final unknown
                        let above: isize = shifts[s + 1..].iter().sum();
                        unknown = usize::try_from(f.degree() as isize - above).ok();
                        break;
                    }
                }
            }
        }
        let k = unknown.ok_or_else(|| {
            Error::Validation("cannot infer the form degree; add a 'degree' key".into())
        })?;
        let total: isize = shifts.iter().sum();
        let j_degree = usize::try_from(k as isize + total)
            .ok()
            .filter(|d| *d <= dim)
            .ok_or_else(|| Error::Validation(format!("no right-hand side degree for a {k}-form unknown")))?;

        let rhs = match rhs_entry {
            Some(e) => Some(self.expr(e, dim, trunc, fiber, Some(j_degree))?),
            None if equation == Equation::Homogeneous => None,
            None => Some(Form::zero(dim, fiber, j_degree, trunc)),
        };
        if equation == Equation::Homogeneous && rhs.as_ref().is_some_and(|j| !j.is_zero()) {
            return Err(Error::Validation("homogeneous problems take no right-hand side".into()));
        }

        let mut initial = Vec::new();
        for (s, e) in c_entries.iter().enumerate() {
            let above: isize = shifts[s + 1..].iter().sum();
            let deg = usize::try_from(k as isize + above)
                .ok()
                .filter(|d| *d <= dim)
                .ok_or_else(|| Error::Validation(format!("step {} has no valid degree", s + 1)))?;
            initial.push(match e {
                Some(e) => self.expr(e, dim, trunc, fiber, Some(deg))?,
                None => Form::zero(dim, fiber, deg, trunc),
            });
        }
        if equation == Equation::Homogeneous && initial[0].is_zero() && c_entries[0].is_none() {
            return Err(Error::Validation("homogeneous problems need initial data 'c'".into()));
        }

        let frame = self.frame(dim, trunc)?;
        let gauge = self.gauge(dim, trunc, fiber)?;

        Ok(ProblemSpec {
            dim,
            trunc,
            fiber,
            center,
            connection,
            equation,
            initial,
            rhs,
            stages,
            degree,
            frame,
            gauge,
            output,
        })
    }

    /// Initial-data entries per step: `c` for single-step problems,
    /// `c[s]` otherwise (`c` alone addresses step 1).
    fn initial_entries(&self, steps: usize) -> Result<Vec<Option<&Entry>>> {
        let mut out = vec![None; steps];
        if let Some(e) = self.get("c") {
            out[0] = Some(e);
        }
        for (idx, e) in self.indexed("c") {
            let s = idx[0];
            if s > steps {
                return Err(Error::Validation(format!("c[{s}] but the problem has {steps} steps")));
            }
            if out[s - 1].is_some() {
                return Err(Error::Validation(format!("initial data for step {s} given twice")));
            }
            out[s - 1] = Some(e);
        }
        Ok(out)
    }

    fn frame(&self, dim: usize, trunc: u32) -> Result<Option<(Vec<Form>, Vec<PolyVectorField>)>> {
        let omegas = self.indexed("omega");
        let fields = self.indexed("X");
        if omegas.is_empty() && fields.is_empty() {
            return Ok(None);
        }
        if omegas.len() != fields.len() {
            return Err(Error::Validation("frame needs as many omega[i] as X[i]".into()));
        }
        let mut ws = Vec::new();
        let mut xs = Vec::new();
        for (i, ((wi, w), (xi, x))) in omegas.iter().zip(&fields).enumerate() {
            if wi[0] != i + 1 || xi[0] != i + 1 {
                return Err(Error::Validation("frame indices must run 1, 2, …".into()));
            }
            ws.push(self.expr(w, dim, trunc, 1, Some(1))?);
            xs.push(sharp(&self.expr(x, dim, trunc, 1, Some(1))?)?);
        }
        Ok(Some((ws, xs)))
    }

    fn gauge(&self, dim: usize, trunc: u32, fiber: usize) -> Result<Option<Vec<Series>>> {
        let entries = self.indexed("g");
        if entries.is_empty() {
            return Ok(None);
        }
        let mut out = vec![Series::zero(dim, trunc); fiber * fiber];
        for (idx, e) in entries {
            let (r, c) = (idx[0], idx[1]);
            if r > fiber || c > fiber {
                return Err(Error::Validation(format!("g[{r}][{c}] outside a {fiber}x{fiber} gauge")));
            }
            let f = self.expr(e, dim, trunc, 1, Some(0))?;
            out[(r - 1) * fiber + c - 1] = f.coeff(crate::forms::IndexSet::EMPTY, 0);
        }
        Ok(Some(out))
    }
}

/// Degree change of each first-order step, in solve order (outermost
/// first): the unknown of step `s` has degree `k + Σ_{t > s} shift_t`.
fn step_shifts(equation: Equation, stages: &[StageSpec]) -> Vec<isize> {
    match equation {
        Equation::Dual => vec![-1],
        Equation::Curvature => vec![1, 1],
        Equation::Pipeline => stages
            .iter()
            .flat_map(|s| std::iter::repeat_n(if s.dual { -1 } else { 1 }, s.power))
            .collect(),
        _ => vec![1],
    }
}

fn parse_center(s: &str) -> Option<Vec<Rational>> {
    s.split(',').map(|p| parse_rational(p.trim())).collect()
}

/// Parses `--center`-style coordinate lists.
pub fn parse_coordinates(s: &str) -> Option<Vec<Rational>> {
    parse_center(s)
}

fn parse_stages(s: &str) -> Option<Vec<StageSpec>> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let (name, power) = match part.split_once('^') {
                Some((n, p)) => (n.trim(), p.trim().parse().ok()?),
                None => (part, 1),
            };
            let dual = match name {
                "d" => false,
                "delta" => true,
                _ => return None,
            };
            (power > 0).then_some(StageSpec { dual, power })
        })
        .collect()
}

/// Renders a spec back into problem-file syntax.
pub fn render_problem(spec: &ProblemSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim={}", spec.dim);
    let _ = writeln!(out, "trunc={}", spec.trunc);
    let _ = writeln!(out, "fiber={}", spec.fiber);
    if spec.center.iter().any(|c| *c != Rational::zero()) {
        let c: Vec<String> = spec.center.iter().map(fmt_rational).collect();
        let _ = writeln!(out, "center={}", c.join(","));
    }
    let _ = writeln!(out, "equation={}", spec.equation.name());
    if !spec.stages.is_empty() {
        let parts: Vec<String> = spec
            .stages
            .iter()
            .map(|s| {
                let n = if s.dual { "delta" } else { "d" };
                if s.power == 1 { n.to_string() } else { format!("{n}^{}", s.power) }
            })
            .collect();
        let _ = writeln!(out, "stages={}", parts.join(","));
    }
    if let Some(k) = spec.degree {
        let _ = writeln!(out, "degree={k}");
    }
    for a in 0..spec.fiber {
        for b in 0..spec.fiber {
            let e = spec.connection.entry(a, b);
            if !e.is_zero() {
                let _ = writeln!(out, "A[{}][{}]={}", a + 1, b + 1, e.to_expr());
            }
        }
    }
    if spec.initial.len() == 1 {
        let _ = writeln!(out, "c={}", spec.initial[0].to_expr());
    } else {
        for (s, c) in spec.initial.iter().enumerate() {
            if !c.is_zero() {
                let _ = writeln!(out, "c[{}]={}", s + 1, c.to_expr());
            }
        }
    }
    if let Some(j) = &spec.rhs {
        let _ = writeln!(out, "J={}", j.to_expr());
    }
    if let Some((ws, xs)) = &spec.frame {
        for (i, (w, x)) in ws.iter().zip(xs).enumerate() {
            let _ = writeln!(out, "omega[{}]={}", i + 1, w.to_expr());
            let _ = writeln!(out, "X[{}]={}", i + 1, crate::forms::flat(x).to_expr());
        }
    }
    if let Some(g) = &spec.gauge {
        for (i, f) in g.iter().enumerate() {
            if !f.is_zero() {
                let _ = writeln!(out, "g[{}][{}]={f}", i / spec.fiber + 1, i % spec.fiber + 1);
            }
        }
    }
    if spec.output != OutputFormat::Text {
        let _ = writeln!(out, "output={}", spec.output.name());
    }
    out
}
