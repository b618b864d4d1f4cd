use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::{parse_rational, variable_names, Rational};

use super::problem::OutputFormat;
use super::report::{FormData, Report, StatusData};

pub fn emit(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => emit_text(report),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Latex => emit_latex(report),
    }
}

/// Parses the JSON form of a report.
pub fn parse_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

fn dim_of(report: &Report) -> usize {
    report
        .problem
        .lines()
        .find_map(|l| l.strip_prefix("dim=")?.parse().ok())
        .unwrap_or(0)
}

fn status_line(s: &StatusData) -> String {
    let mut out = s.status.clone();
    if let Some(stage) = s.stage {
        let _ = write!(out, " (step {stage})");
    }
    if let Some(d) = &s.detail {
        let _ = write!(out, ": {d}");
    }
    out
}

fn monomial_text(exps: &[u32], names: &[String]) -> String {
    exps.iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn basis_text(idx: &[usize], names: &[String]) -> String {
    if idx.is_empty() {
        return "1".into();
    }
    idx.iter()
        .map(|i| format!("d{}", names[i - 1]))
        .collect::<Vec<_>>()
        .join("^")
}

/// Polynomial coefficient of each `(basis, fiber)` slot in problem-file
/// syntax.
fn slots(f: &FormData, names: &[String]) -> Vec<(String, usize, String)> {
    let mut grouped: BTreeMap<(Vec<usize>, usize), Vec<(String, Rational)>> = BTreeMap::new();
    for t in &f.terms {
        let v = parse_rational(&t.value).unwrap_or_default();
        grouped
            .entry((t.index_set.clone(), t.fiber))
            .or_default()
            .push((monomial_text(&t.monomial, names), v));
    }
    grouped
        .into_iter()
        .map(|((idx, fiber), terms)| {
            let mut s = String::new();
            for (i, (mono, v)) in terms.iter().enumerate() {
                let neg = v.is_negative();
                let abs = v.abs();
                if i == 0 {
                    if neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                let num = crate::coeff::fmt_rational(&abs);
                match (mono.is_empty(), abs.is_one()) {
                    (true, _) => s.push_str(&num),
                    (false, true) => s.push_str(mono),
                    (false, false) => {
                        let _ = write!(s, "{num}*{mono}");
                    }
                }
            }
            (basis_text(&idx, names), fiber, s)
        })
        .collect()
}

fn form_table(out: &mut String, f: &FormData, names: &[String]) {
    let rows = slots(f, names);
    if rows.is_empty() {
        out.push_str("  0\n");
        return;
    }
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("basis".len());
    let _ = writeln!(out, "  {:<width$}  fiber  coefficient", "basis");
    for (basis, fiber, coeff) in rows {
        let _ = writeln!(out, "  {basis:<width$}  {fiber:<5}  {coeff}");
    }
}

const SHOWN_MODES: usize = 4;

fn emit_text(r: &Report) -> String {
    let names = variable_names(dim_of(r));
    let mut rows: Vec<(&str, String)> = Vec::new();
    let summary: Vec<&str> = r.problem.lines().collect();
    rows.push(("problem", summary.join("  ")));
    rows.push(("status", status_line(&r.constraint_status)));
    if let Some(d) = r.residual_min_degree {
        rows.push(("residual", format!("min degree {d}, {} terms", r.residual_terms)));
    }
    if let Some(v) = r.verified {
        rows.push(("verified", if v { "yes" } else { "NO" }.into()));
    }
    rows.push(("iterations", r.iterations.to_string()));
    rows.push((
        "radius",
        r.radius.map_or_else(|| "-".into(), |x| format!("{x}")),
    ));
    rows.push(("gauge modes", r.gauge_modes.len().to_string()));
    rows.push(("time", format!("{} us", r.timing_us)));
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    if let Some(s) = &r.solution {
        let _ = writeln!(out, "\nsolution ({}-form)", s.degree);
        form_table(&mut out, s, &names);
    }
    if r.steps.len() > 1 {
        let _ = writeln!(out, "\nstep  op     residual  iterations  verified  status");
        for s in &r.steps {
            let _ = writeln!(
                out,
                "{:<4}  {:<5}  {:<8}  {:<10}  {:<8}  {}",
                s.step,
                s.operator,
                s.residual_min_degree,
                s.iterations,
                if s.verified { "yes" } else { "NO" },
                status_line(&s.constraint_status)
            );
        }
    }
    if !r.checks.is_empty() {
        out.push_str("\nchecks\n");
        for c in &r.checks {
            let _ = writeln!(out, "  {:<4}  {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
    }
    if let Some(h) = &r.horizontal {
        let _ = writeln!(
            out,
            "\nhorizontal part (horizontal: {}, residual min degree {}, covariantly constant: {})",
            h.horizontal, h.residual_min_degree, h.covariantly_constant
        );
        form_table(&mut out, &h.delta, &names);
    }
    if let Some(g) = &r.gauge {
        let _ = writeln!(out, "\ngauge-transformed solution (residual min degree {})", g.residual_min_degree);
        form_table(&mut out, &g.solution, &names);
    }
    for (i, m) in r.gauge_modes.iter().take(SHOWN_MODES).enumerate() {
        let _ = writeln!(out, "\ngauge mode {}", i + 1);
        form_table(&mut out, m, &names);
    }
    if r.gauge_modes.len() > SHOWN_MODES {
        let _ = writeln!(
            out,
            "\n({} more gauge modes; use --output json for all)",
            r.gauge_modes.len() - SHOWN_MODES
        );
    }
    out
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_monomial(exps: &[u32], names: &[String]) -> String {
    exps.iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{{{e}}}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn latex_basis(idx: &[usize], names: &[String]) -> String {
    idx.iter()
        .map(|i| format!("d{}", names[i - 1]))
        .collect::<Vec<_>>()
        .join(" \\wedge ")
}

/// Positive content of a list of rationals: gcd of numerators over lcm of
/// denominators.
fn content(values: &[Rational]) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

/// One fiber component as a wedge expression, with the positive rational
/// content factored out when there are several terms.
fn latex_component(terms: &[(Vec<usize>, Vec<u32>, Rational)], names: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let values: Vec<Rational> = terms.iter().map(|t| t.2.clone()).collect();
    let k = if terms.len() > 1 { content(&values) } else { Rational::one() };
    let mut body = String::new();
    for (i, (idx, exps, v)) in terms.iter().enumerate() {
        let scaled = v / &k;
        let neg = scaled.is_negative();
        if i == 0 {
            if neg {
                body.push('-');
            }
        } else {
            body.push_str(if neg { " - " } else { " + " });
        }
        let abs = scaled.abs();
        let mono = latex_monomial(exps, names);
        let basis = latex_basis(idx, names);
        let mut factors = Vec::new();
        if !abs.is_one() || (mono.is_empty() && basis.is_empty()) {
            factors.push(latex_rational(&abs));
        }
        if !mono.is_empty() {
            factors.push(mono);
        }
        let mut s = factors.join(" ");
        if !basis.is_empty() {
            if !s.is_empty() {
                s.push_str("\\,");
            }
            s.push_str(&basis);
        }
        body.push_str(&s);
    }
    if k.is_one() {
        body
    } else {
        format!("{}\\left({body}\\right)", latex_rational(&k))
    }
}

/// A form as a wedge expression; vector-valued forms become a column.
pub fn latex_form(f: &FormData, dim: usize, fiber: usize) -> String {
    let names = variable_names(dim);
    let mut comps: Vec<Vec<(Vec<usize>, Vec<u32>, Rational)>> = vec![Vec::new(); fiber.max(1)];
    for t in &f.terms {
        let v = parse_rational(&t.value).unwrap_or_default();
        if let Some(c) = comps.get_mut(t.fiber - 1) {
            c.push((t.index_set.clone(), t.monomial.clone(), v));
        }
    }
    if comps.len() == 1 {
        return latex_component(&comps[0], &names);
    }
    let rows: Vec<String> = comps.iter().map(|c| latex_component(c, &names)).collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

fn emit_latex(r: &Report) -> String {
    let dim = dim_of(r);
    let fiber = r
        .problem
        .lines()
        .find_map(|l| l.strip_prefix("fiber=")?.parse().ok())
        .unwrap_or(1);
    let mut out = String::new();
    for line in r.problem.lines() {
        let _ = writeln!(out, "% {line}");
    }
    let _ = writeln!(out, "% status: {}", status_line(&r.constraint_status));
    if let Some(d) = r.residual_min_degree {
        let _ = writeln!(out, "% residual min degree: {d}");
    }
    match &r.solution {
        Some(s) => {
            let _ = writeln!(out, "\\varphi = {}", latex_form(s, dim, fiber));
        }
        None => out.push_str("% no solution\n"),
    }
    if let Some(h) = &r.horizontal {
        let _ = writeln!(out, "\\Delta\\varphi = {}", latex_form(&h.delta, dim, fiber));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, MultiIndex, Series};
    use crate::forms::{Form, IndexSet};

    fn gamma1() -> Form {
        let mut f = Form::zero(2, 1, 1, 6);
        f.add_term(IndexSet::single(0), 0, Series::monomial(2, 6, MultiIndex::new(&[0, 1]), rat(1, 2)));
        f.add_term(IndexSet::single(1), 0, Series::monomial(2, 6, MultiIndex::new(&[1, 0]), rat(-1, 2)));
        f
    }

    #[test]
    fn latex_factors_content() {
        let s = latex_form(&FormData::from_form(&gamma1()), 2, 1);
        assert_eq!(s, "\\frac{1}{2}\\left(y\\,dx - x\\,dy\\right)");
    }

    #[test]
    fn zero_form_renders_as_zero() {
        let z = FormData::from_form(&Form::zero(2, 1, 1, 6));
        assert_eq!(latex_form(&z, 2, 1), "0");
        let mut out = String::new();
        form_table(&mut out, &z, &variable_names(2));
        assert_eq!(out.trim(), "0");
    }

    #[test]
    fn wedge_and_powers() {
        let mut f = Form::zero(3, 1, 2, 6);
        let idx = IndexSet::new(&[0, 2]).unwrap();
        f.add_term(idx, 0, Series::monomial(3, 6, MultiIndex::new(&[0, 3, 0]), rat(-3, 1)));
        assert_eq!(latex_form(&FormData::from_form(&f), 3, 1), "-3 y^{3}\\,dx \\wedge dz");
    }
}
