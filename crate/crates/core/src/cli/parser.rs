//! Germ specification language.
//!
//! Expressions use rational literals (`3`, `1/2`), `i`, `tau`, the
//! variables `x y z t x1 x2 x3`, `+ - * / ^` and parentheses. A number
//! directly followed by a variable, constant or `(` multiplies it. Vector
//! fields are sums of `<term> d/d<var>`; maps are tuples `(e1, e2, ...)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::germs::VectorFieldGerm;
use crate::scalars::{GaussianRational, TauScalar};
use crate::series::{DiffeoGerm, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    I,
    Tau,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermSpec {
    Scalar(Expr),
    /// Components keyed by the variable of their `d/d<var>`.
    Field(Vec<(String, Expr)>),
    Map(Vec<Expr>),
}

pub const VARIABLES: [&str; 7] = ["x", "y", "z", "t", "x1", "x2", "x3"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Deriv(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    /// No whitespace between this token and the previous one.
    glued: bool,
}

fn syntax(line: usize, column: usize, expected: &str) -> Error {
    Error::Syntax {
        line,
        column,
        expected: expected.to_string(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut glued = false;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            glued = false;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            glued = false;
            continue;
        }
        let (start_line, start_col) = (line, col);
        let take_digits = |mut j: usize| {
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok = if c.is_ascii_digit() {
            let j = take_digits(i);
            let num: BigInt = chars[i..j].iter().collect::<String>().parse().unwrap();
            if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                let k = take_digits(j + 1);
                let den: BigInt = chars[j + 1..k].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(syntax(line, col + (j + 1 - i), "nonzero denominator"));
                }
                col += k - i;
                i = k;
                Tok::Num(BigRational::new(num, den))
            } else {
                col += j - i;
                i = j;
                Tok::Num(BigRational::from_integer(num))
            }
        } else if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            if word == "d" && j < chars.len() && chars[j] == '/' {
                // d/d<var>
                let mut k = j + 1;
                if k < chars.len() && chars[k] == 'd' {
                    k += 1;
                    let s = k;
                    while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                        k += 1;
                    }
                    let var: String = chars[s..k].iter().collect();
                    if var.is_empty() {
                        return Err(syntax(line, col + (s - i), "variable after d/d"));
                    }
                    col += k - i;
                    i = k;
                    out.push(Token {
                        tok: Tok::Deriv(var),
                        line: start_line,
                        column: start_col,
                        glued,
                    });
                    glued = true;
                    continue;
                }
                return Err(syntax(line, col + (k - i), "d/d<variable>"));
            }
            col += j - i;
            i = j;
            Tok::Ident(word)
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => return Err(syntax(line, col, "expression")),
            };
            i += 1;
            col += 1;
            t
        };
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
            glued,
        });
        glued = true;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
        glued: false,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self, expected: &str) -> Error {
        let t = &self.toks[self.pos];
        syntax(t.line, t.column, expected)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.here(what))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    e = Expr::Div(Box::new(e), Box::new(self.unary()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                self.bump();
                r.to_integer()
            }
            _ => return Err(self.here("integer exponent")),
        };
        let n: i64 = n
            .try_into()
            .map_err(|_| self.here("exponent of moderate size"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                let lit = Expr::Num(r);
                // implicit product after a literal: 3y, 2(x + y)
                let glued = self.toks[self.pos].glued;
                match self.peek() {
                    Tok::Ident(_) | Tok::LParen if glued => {
                        let rhs = self.power()?;
                        Ok(Expr::Mul(Box::new(lit), Box::new(rhs)))
                    }
                    _ => Ok(lit),
                }
            }
            Tok::Ident(w) => {
                self.bump();
                match w.as_str() {
                    "i" => Ok(Expr::I),
                    "tau" => Ok(Expr::Tau),
                    v if VARIABLES.contains(&v) => Ok(Expr::Var(w)),
                    _ => Err(Error::UnknownVariable(w)),
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.here("number, variable or `(`")),
        }
    }

    /// Signed terms, each optionally followed by `d/d<var>`.
    fn top(&mut self) -> Result<GermSpec> {
        let mut terms: Vec<(bool, Expr, Option<String>)> = Vec::new();
        loop {
            let first = terms.is_empty();
            let neg = match self.peek() {
                Tok::Plus if !first => {
                    self.bump();
                    false
                }
                Tok::Minus if !first => {
                    self.bump();
                    true
                }
                Tok::End if !first => break,
                _ if first => false,
                _ => return Err(self.here("`+`, `-` or end of input")),
            };
            let t = self.term()?;
            let d = if let Tok::Deriv(v) = self.peek().clone() {
                if !VARIABLES.contains(&v.as_str()) {
                    return Err(Error::UnknownVariable(v));
                }
                self.bump();
                Some(v)
            } else {
                None
            };
            if let Some((_, _, d0)) = terms.first() {
                if d0.is_some() != d.is_some() {
                    return Err(self.here(if d0.is_some() {
                        "d/d<variable>"
                    } else {
                        "`+`, `-` or end of input"
                    }));
                }
            }
            terms.push((neg, t, d));
        }
        let join = |acc: Option<Expr>, neg: bool, t: Expr| match (acc, neg) {
            (None, false) => t,
            (None, true) => Expr::Neg(Box::new(t)),
            (Some(a), false) => Expr::Add(Box::new(a), Box::new(t)),
            (Some(a), true) => Expr::Sub(Box::new(a), Box::new(t)),
        };
        if terms[0].2.is_none() {
            let mut acc = None;
            for (neg, t, _) in terms {
                acc = Some(join(acc, neg, t));
            }
            return Ok(GermSpec::Scalar(acc.unwrap()));
        }
        let mut comps: Vec<(String, Option<Expr>)> = Vec::new();
        for (neg, t, d) in terms {
            let v = d.unwrap();
            let k = match comps.iter().position(|(w, _)| *w == v) {
                Some(k) => k,
                None => {
                    comps.push((v, None));
                    comps.len() - 1
                }
            };
            let acc = comps[k].1.take();
            comps[k].1 = Some(join(acc, neg, t));
        }
        Ok(GermSpec::Field(
            comps.into_iter().map(|(v, e)| (v, e.unwrap())).collect(),
        ))
    }
}

/// Parses a scalar expression, a vector field or a map tuple.
pub fn parse_germ(text: &str) -> Result<GermSpec> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(p.here("expression"));
    }
    if is_tuple(&p.toks) {
        p.bump();
        let mut items = vec![p.sum()?];
        while *p.peek() == Tok::Comma {
            p.bump();
            items.push(p.sum()?);
        }
        p.expect(Tok::RParen, "`,` or `)`")?;
        if *p.peek() != Tok::End {
            return Err(p.here("end of input"));
        }
        return Ok(GermSpec::Map(items));
    }
    p.top()
}

/// `(` … `)` spanning the whole input with a comma at depth one.
fn is_tuple(toks: &[Token]) -> bool {
    if toks.first().map(|t| &t.tok) != Some(&Tok::LParen) {
        return false;
    }
    let mut depth = 0i32;
    let mut comma = false;
    for (k, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => {
                depth -= 1;
                if depth == 0 {
                    return comma && toks[k + 1].tok == Tok::End;
                }
            }
            Tok::Comma if depth == 1 => comma = true,
            _ => {}
        }
    }
    comma
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(r) if !r.is_integer() => 2,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::I => write!(f, "i"),
            Expr::Tau => write!(f, "tau"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "-{}", wrap(e, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 1)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Div(a, b) => match **b {
                Expr::Num(_) => write!(f, "{}/({})", wrap(a, 2), b),
                _ => write!(f, "{}/{}", wrap(a, 2), wrap(b, 3)),
            },
            Expr::Pow(a, n) => write!(f, "{}^{}", wrap(a, 5), n),
        }
    }
}

impl fmt::Display for GermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermSpec::Scalar(e) => write!(f, "{e}"),
            GermSpec::Field(c) => {
                let parts: Vec<String> = c.iter().map(|(v, e)| format!("({e}) d/d{v}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
            GermSpec::Map(items) => {
                let parts: Vec<String> = items.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

fn collect_vars(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Var(v) => {
            out.insert(v.clone());
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_vars(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        _ => {}
    }
}

/// Syntactic bound on the polynomial degree.
fn degree_bound(e: &Expr) -> u32 {
    match e {
        Expr::Var(_) => 1,
        Expr::Neg(a) => degree_bound(a),
        Expr::Add(a, b) | Expr::Sub(a, b) => degree_bound(a).max(degree_bound(b)),
        Expr::Mul(a, b) => degree_bound(a) + degree_bound(b),
        Expr::Div(a, _) => degree_bound(a),
        Expr::Pow(a, n) => degree_bound(a).saturating_mul((*n).max(0) as u32),
        _ => 0,
    }
}

impl GermSpec {
    pub fn exprs(&self) -> Vec<&Expr> {
        match self {
            GermSpec::Scalar(e) => vec![e],
            GermSpec::Field(c) => c.iter().map(|(_, e)| e).collect(),
            GermSpec::Map(m) => m.iter().collect(),
        }
    }

    pub fn degree_bound(&self) -> u32 {
        self.exprs().into_iter().map(degree_bound).max().unwrap_or(0)
    }

    /// Coordinate names: `x1, x2[, x3]`, `x, y[, z]` or `t, x[, z]`.
    pub fn coordinates(&self) -> Result<Vec<&'static str>> {
        let mut used = BTreeSet::new();
        for e in self.exprs() {
            collect_vars(e, &mut used);
        }
        if let GermSpec::Field(c) = self {
            used.extend(c.iter().map(|(v, _)| v.clone()));
        }
        let indexed = used.iter().any(|v| v.starts_with("x") && v.len() == 2);
        if indexed && used.iter().any(|v| v.len() == 1) {
            return Err(Error::InvalidArgument(
                "mixed coordinate names: use either x1, x2, x3 or letters".into(),
            ));
        }
        if used.contains("t") && used.contains("y") {
            return Err(Error::InvalidArgument("`t` and `y` cannot be combined".into()));
        }
        let by_len = match self {
            GermSpec::Map(m) => Some(m.len()),
            GermSpec::Field(c) => Some(c.len()),
            GermSpec::Scalar(_) => None,
        };
        let third = used.contains("z") || used.contains("x3");
        let dim = match by_len {
            Some(n) if n >= 3 => 3,
            _ if third => 3,
            _ => 2,
        };
        let names: [&'static str; 3] = if indexed {
            ["x1", "x2", "x3"]
        } else if used.contains("t") {
            ["t", "x", "z"]
        } else {
            ["x", "y", "z"]
        };
        let names = names[..dim].to_vec();
        for v in &used {
            if !names.contains(&v.as_str()) {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        Ok(names)
    }
}

fn const_of(s: &TruncatedSeries) -> Option<TauScalar> {
    s.terms().all(|(m, _)| m.total() == 0).then(|| s.constant_term())
}

/// Evaluates `e` in the coordinates `names` at truncation `order`.
pub fn eval_expr(e: &Expr, names: &[&str], order: u32) -> Result<TruncatedSeries> {
    let dim = names.len();
    let c = |t: TauScalar| TruncatedSeries::constant(dim, order, t);
    Ok(match e {
        Expr::Num(r) => c(TauScalar::from(GaussianRational::from_rational(r.clone()))),
        Expr::I => c(TauScalar::i()),
        Expr::Tau => c(TauScalar::tau()),
        Expr::Var(v) => {
            let k = names
                .iter()
                .position(|n| n == v)
                .ok_or_else(|| Error::UnknownVariable(v.clone()))?;
            TruncatedSeries::var(dim, order, k)
        }
        Expr::Neg(a) => eval_expr(a, names, order)?.neg(),
        Expr::Add(a, b) => eval_expr(a, names, order)?.add(&eval_expr(b, names, order)?)?,
        Expr::Sub(a, b) => eval_expr(a, names, order)?.sub(&eval_expr(b, names, order)?)?,
        Expr::Mul(a, b) => eval_expr(a, names, order)?.mul(&eval_expr(b, names, order)?)?,
        Expr::Div(a, b) => {
            let den = const_of(&eval_expr(b, names, order)?)
                .ok_or_else(|| Error::InvalidArgument(format!("division by non-constant `{b}`")))?;
            let num = eval_expr(a, names, order)?;
            let inv = TauScalar::one().divide(&den)?;
            num.scale(&inv)
        }
        Expr::Pow(a, n) => {
            let base = eval_expr(a, names, order)?;
            if *n >= 0 {
                base.pow(*n as u32)
            } else {
                let k = const_of(&base).ok_or_else(|| {
                    Error::InvalidArgument(format!("negative power of non-constant `{a}`"))
                })?;
                c(TauScalar::one().divide(&k.pow(n.unsigned_abs() as u32))?)
            }
        }
    })
}

/// Evaluation order: at least `order`, and high enough that every stored
/// term of the input survives.
fn working_order(spec: &GermSpec, order: u32) -> u32 {
    order.max(spec.degree_bound())
}

pub fn to_series(spec: &GermSpec, order: u32) -> Result<(TruncatedSeries, Vec<&'static str>)> {
    let GermSpec::Scalar(e) = spec else {
        return Err(Error::InvalidArgument("expected a scalar expression".into()));
    };
    let names = spec.coordinates()?;
    Ok((eval_expr(e, &names, working_order(spec, order))?, names))
}

pub fn to_field(spec: &GermSpec, order: u32) -> Result<(VectorFieldGerm, Vec<&'static str>)> {
    let GermSpec::Field(comps) = spec else {
        return Err(Error::InvalidArgument("expected a vector field `<expr> d/dx + ...`".into()));
    };
    let names = spec.coordinates()?;
    let order = working_order(spec, order);
    let mut out = vec![TruncatedSeries::zero(names.len(), order); names.len()];
    for (v, e) in comps {
        let k = names.iter().position(|n| n == v).expect("checked by coordinates");
        out[k] = eval_expr(e, &names, order)?;
    }
    Ok((VectorFieldGerm::new(out)?, names))
}

pub fn to_map(spec: &GermSpec, order: u32) -> Result<(DiffeoGerm, Vec<&'static str>)> {
    let GermSpec::Map(items) = spec else {
        return Err(Error::InvalidArgument("expected a map `(e1, e2)`".into()));
    };
    let names = spec.coordinates()?;
    if items.len() != names.len() {
        return Err(Error::DimensionMismatch {
            expected: names.len(),
            found: items.len(),
        });
    }
    let order = working_order(spec, order);
    let comps = items
        .iter()
        .map(|e| eval_expr(e, &names, order))
        .collect::<Result<Vec<_>>>()?;
    Ok((DiffeoGerm::new(comps)?, names))
}

/// Parses a point `a,b[,c]` of Gaussian rationals (`1/2`, `-3`, `i`,
/// `1/2+i`).
pub fn parse_point(text: &str) -> Result<Vec<GaussianRational>> {
    text.split(',')
        .map(|part| {
            let spec = parse_germ(part.trim())?;
            let GermSpec::Scalar(e) = &spec else {
                return Err(Error::InvalidArgument(format!("bad coordinate `{part}`")));
            };
            let s = eval_expr(e, &["x"], 0)?;
            s.constant_term()
                .as_gaussian()
                .filter(|_| s.terms().all(|(m, _)| m.total() == 0))
                .ok_or_else(|| Error::InvalidArgument(format!("coordinate `{part}` is not a number")))
        })
        .collect()
}

/// Parses a nonnegative rational such as `1` or `3/2`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let p = parse_point(text)?;
    match p.as_slice() {
        [g] if g.is_real() && !g.re().is_negative() => Ok(g.re().clone()),
        _ => Err(Error::InvalidArgument(format!("expected a nonnegative rational, got `{text}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_main_field() {
        let s = parse_germ("-(x - (1/tau)*y^2*z^2) d/dx - 3*y d/dy + z d/dz").unwrap();
        let (x, names) = to_field(&s, 6).unwrap();
        assert_eq!(names, vec!["x", "y", "z"]);
        assert_eq!(
            x.to_string(),
            "(-x + tau^-1*y^2*z^2) d/dx + (-3*y) d/dy + (z) d/dz"
        );
    }

    #[test]
    fn parses_map_and_literals() {
        let (g, _) = to_map(&parse_germ("(x + y^2, y)").unwrap(), 4).unwrap();
        assert_eq!(g.to_string(), "(x + y^2, y)");
        let (f, _) = to_series(&parse_germ("1/2x + 3(y - tau^-2*i*x)").unwrap(), 3).unwrap();
        assert_eq!(f.to_string(), "(-3i*tau^-2 + 1/2)*x + 3*y");
    }

    #[test]
    fn syntax_errors() {
        match parse_germ("x + * y") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_germ("x + w"), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_germ("x d/dx + y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_germ("(x, y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_germ("x^y"), Err(Error::Syntax { .. })));
        match parse_germ("x +\n  )") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coordinate_schemes() {
        let s = parse_germ("-(x1 + x2^2*x3^2) d/dx1 - 3*x2 d/dx2 + x3 d/dx3").unwrap();
        assert_eq!(s.coordinates().unwrap(), vec!["x1", "x2", "x3"]);
        let s = parse_germ("(t/(1), x + t^2*x^2)").unwrap();
        assert_eq!(s.coordinates().unwrap(), vec!["t", "x"]);
        assert!(parse_germ("x1 + y").unwrap().coordinates().is_err());
    }

    #[test]
    fn points() {
        let p = parse_point("0,1/3").unwrap();
        assert_eq!(p, vec![GaussianRational::from_int(0), GaussianRational::from_ratio(1, 3)]);
        assert_eq!(parse_point("1/2+i").unwrap()[0], GaussianRational::from_parts((1, 2), (1, 1)));
        assert_eq!(parse_rational("3/2").unwrap(), BigRational::new(3.into(), 2.into()));
    }
}
