//! Form expressions such as `1/2*x*dy - 1/2*y*dx` or `x^2*dx^dy[2]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{variable_names, MultiIndex, Rational, Series};
use crate::forms::{Form, IndexSet};

/// A position-tagged parse failure; the column is 1-based within the
/// expression text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

type Slots = BTreeMap<(IndexSet, usize), Series>;

/// A parsed expression: coefficients per basis slot, possibly of mixed
/// degree until it is typed with [`Parsed::into_form`].
#[derive(Clone, Debug)]
pub struct Parsed {
    dim: usize,
    trunc: u32,
    slots: Slots,
}

impl Parsed {
    /// Degrees of the basis slots that carry a nonzero coefficient.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.slots.keys().map(|(i, _)| i.len()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Types the expression as an `m`-vector form. A zero expression takes
    /// `fallback` as its degree.
    pub fn into_form(self, fiber: usize, fallback: Option<usize>) -> Result<Form, String> {
        let degrees = self.degrees();
        let degree = match degrees.as_slice() {
            [] => fallback.ok_or("cannot infer the degree of a zero expression")?,
            [k] => *k,
            _ => return Err(format!("expression mixes form degrees {degrees:?}")),
        };
        if let Some(f) = fallback {
            if !self.slots.is_empty() && f != degree {
                return Err(format!("expected a {f}-form, found a {degree}-form"));
            }
        }
        let mut out = Form::zero(self.dim, fiber, degree, self.trunc);
        for ((idx, a), f) in self.slots {
            if a >= fiber {
                return Err(format!("fiber component [{}] exceeds fiber dimension {fiber}", a + 1));
            }
            out.add_term(idx, a, f);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(ExprError {
                    column: col,
                    message: "decimal literals are not allowed; write a fraction such as 3/2".into(),
                });
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()[]".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ExprError {
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// Parses an expression over `dim` variables truncated at `trunc`.
pub fn parse_expr(text: &str, dim: usize, trunc: u32) -> Result<Parsed, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        dim,
        trunc,
        names: variable_names(dim),
        end: text.chars().count() + 1,
    };
    let slots = p.expr()?;
    if let Some((t, col)) = p.toks.get(p.pos) {
        return Err(ExprError {
            column: *col,
            message: format!("unexpected {}", describe(t)),
        });
    }
    Ok(Parsed { dim, trunc, slots })
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("symbol '{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    dim: usize,
    trunc: u32,
    names: Vec<String>,
    end: usize,
}

enum Atom {
    Value(Slots),
    Basis(IndexSet),
    Var(usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<BigInt, ExprError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ExprError> {
        let col = self.column();
        let n = self.expect_int(what)?;
        u32::try_from(n).map_err(|_| ExprError {
            column: col,
            message: format!("{what} out of range"),
        })
    }

    fn expr(&mut self) -> Result<Slots, ExprError> {
        let mut acc = Slots::new();
        let mut negate = self.eat('-');
        if !negate {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, t, negate);
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Slots, ExprError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let col = self.column();
            let rhs = self.factor()?;
            acc = multiply(&acc, &rhs).ok_or(ExprError {
                column: col,
                message: "product of two fiber-valued terms".into(),
            })?;
        }
        if self.eat('[') {
            let col = self.column();
            let a = self.small_int("fiber index")?;
            if a == 0 {
                return Err(ExprError {
                    column: col,
                    message: "fiber indices start at 1".into(),
                });
            }
            if !self.eat(']') {
                return self.err("expected ']'");
            }
            acc = acc
                .into_iter()
                .map(|((i, _), f)| ((i, a as usize - 1), f))
                .collect();
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Slots, ExprError> {
        let atom = self.atom()?;
        match atom {
            Atom::Basis(mut idx) => {
                while self.eat('^') {
                    let col = self.column();
                    match self.atom()? {
                        Atom::Basis(next) => {
                            let (joined, sign) = idx.wedge(&next).ok_or(ExprError {
                                column: col,
                                message: "repeated differential in wedge product".into(),
                            })?;
                            if sign < 0 {
                                return Err(ExprError {
                                    column: col,
                                    message: "write wedge factors in increasing order".into(),
                                });
                            }
                            idx = joined;
                        }
                        _ => {
                            return Err(ExprError {
                                column: col,
                                message: "expected a differential such as dy after '^'".into(),
                            })
                        }
                    }
                }
                Ok(self.slot(idx, Series::one(self.dim, self.trunc)))
            }
            Atom::Var(i) => {
                let mut e = 1;
                if self.eat('^') {
                    e = self.small_int("exponent")?;
                }
                let mono = MultiIndex::zero(self.dim).with_exponent(i, e);
                let f = Series::monomial(self.dim, self.trunc, mono, Rational::one());
                Ok(self.slot(IndexSet::EMPTY, f))
            }
            Atom::Value(v) => {
                if self.eat('^') {
                    let col = self.column();
                    let e = self.small_int("exponent")?;
                    if v.keys().any(|(i, _)| !i.is_empty()) {
                        return Err(ExprError {
                            column: col,
                            message: "powers apply to functions only".into(),
                        });
                    }
                    let mut acc = self.slot(IndexSet::EMPTY, Series::one(self.dim, self.trunc));
                    for _ in 0..e {
                        acc = multiply(&acc, &v).expect("scalar powers");
                    }
                    return Ok(acc);
                }
                Ok(v)
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ExprError> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut q = Rational::from_integer(n);
                if self.eat('/') {
                    let dcol = self.column();
                    let d = self.expect_int("denominator")?;
                    if d.is_zero() {
                        return Err(ExprError {
                            column: dcol,
                            message: "zero denominator".into(),
                        });
                    }
                    q /= Rational::from_integer(d);
                }
                Ok(Atom::Value(self.slot(
                    IndexSet::EMPTY,
                    Series::constant(self.dim, self.trunc, q),
                )))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                if let Some(i) = self.names.iter().position(|n| *n == s) {
                    return Ok(Atom::Var(i));
                }
                if let Some(rest) = s.strip_prefix('d') {
                    if let Some(i) = self.names.iter().position(|n| n == rest) {
                        return Ok(Atom::Basis(IndexSet::single(i)));
                    }
                    return Err(ExprError {
                        column: col,
                        message: format!(
                            "unknown basis symbol '{s}'; expected one of {}",
                            self.names.iter().map(|n| format!("d{n}")).collect::<Vec<_>>().join(", ")
                        ),
                    });
                }
                Err(ExprError {
                    column: col,
                    message: format!("unknown variable '{s}'; expected one of {}", self.names.join(", ")),
                })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(Atom::Value(v))
            }
            Some(t) => self.err(format!("expected a number, variable or differential, found {}", describe(&t))),
            None => self.err("unexpected end of expression"),
        }
    }

    fn slot(&self, idx: IndexSet, f: Series) -> Slots {
        let mut s = Slots::new();
        if !f.is_zero() {
            s.insert((idx, 0), f);
        }
        s
    }
}

fn add_into(acc: &mut Slots, t: Slots, negate: bool) {
    for (k, f) in t {
        let f = if negate { -&f } else { f };
        let sum = match acc.remove(&k) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            acc.insert(k, sum);
        }
    }
}

fn multiply(a: &Slots, b: &Slots) -> Option<Slots> {
    let mut out = Slots::new();
    for ((i, fa), f) in a {
        for ((j, fb), g) in b {
            if *fa != 0 && *fb != 0 {
                return None;
            }
            let Some((k, sign)) = i.wedge(j) else {
                continue;
            };
            let p = f * g;
            let mut t = Slots::new();
            if !p.is_zero() {
                t.insert((k, fa + fb), p);
            }
            add_into(&mut out, t, sign < 0);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn form(text: &str, dim: usize) -> Form {
        parse_expr(text, dim, 6).unwrap().into_form(1, None).unwrap()
    }

    #[test]
    fn parses_the_negative_example_rhs() {
        let f = form("1/2*x*dy - 1/2*y*dx", 2);
        assert_eq!(f.to_expr(), "-1/2*y*dx + 1/2*x*dy");
        assert_eq!(form(&f.to_expr(), 2), f);
    }

    #[test]
    fn wedges_and_powers() {
        let f = form("x^2*dx^dy", 2);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.coeff(IndexSet::full(2), 0).coeff(&MultiIndex::new(&[2, 0])), rat(1, 1));
        let g = form("(x + y)^2", 2);
        assert_eq!(g.coeff(IndexSet::EMPTY, 0).coeff(&MultiIndex::new(&[1, 1])), rat(2, 1));
    }

    #[test]
    fn rejects_bad_input() {
        let e = parse_expr("dz", 2, 6).unwrap_err();
        assert_eq!(e.column, 1);
        assert!(e.message.contains("unknown basis symbol"));
        assert!(parse_expr("1.5*dx", 2, 6).unwrap_err().message.contains("decimal"));
        assert!(parse_expr("dx +", 2, 6).is_err());
        assert!(parse_expr("dy^dx", 2, 6).is_err());
        let mixed = parse_expr("dx + x", 2, 6).unwrap().into_form(1, None);
        assert!(mixed.is_err());
    }

    #[test]
    fn fiber_suffix_and_zero() {
        let f = parse_expr("dx[2] + y*dy[1]", 2, 6).unwrap().into_form(2, None).unwrap();
        assert_eq!(f.component(1), form("dx", 2));
        assert_eq!(f.to_expr(), "dx[2] + y*dy[1]");
        let z = parse_expr("0", 2, 6).unwrap().into_form(1, Some(2)).unwrap();
        assert!(z.is_zero() && z.degree() == 2);
    }
}
