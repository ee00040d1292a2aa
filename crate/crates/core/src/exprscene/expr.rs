//! Scalar expression AST, parser, printer and jet-generic evaluator.
//!
//! Grammar, loosest to tightest binding:
//!
//! ```text
//! expr   := term { ("+" | "-") term }
//! term   := factor { ("*" | "/") factor }
//! factor := "-" factor | power            // unary minus binds below ^
//! power  := atom [ "^" factor ]           // right-associative
//! atom   := number | "s" | "t" | func "(" expr ")" | "(" expr ")"
//! ```
//!
//! so `-s^2` parses as `-(s^2)` and `s^2^3` as `s^(2^3)`.

use crate::error::{Error, Result};
use crate::jets::JetValue;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    S,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Exp,
    Ln,
    Sqrt,
}

impl UnaryFn {
    pub fn name(self) -> &'static str {
        match self {
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Tan => "tan",
            UnaryFn::Sinh => "sinh",
            UnaryFn::Cosh => "cosh",
            UnaryFn::Exp => "exp",
            UnaryFn::Ln => "ln",
            UnaryFn::Sqrt => "sqrt",
        }
    }

    fn from_name(name: &str) -> Option<UnaryFn> {
        Some(match name {
            "sin" => UnaryFn::Sin,
            "cos" => UnaryFn::Cos,
            "tan" => UnaryFn::Tan,
            "sinh" => UnaryFn::Sinh,
            "cosh" => UnaryFn::Cosh,
            "exp" => UnaryFn::Exp,
            "ln" => UnaryFn::Ln,
            "sqrt" => UnaryFn::Sqrt,
            _ => None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Fun(UnaryFn, Box<Expr>),
}

impl Expr {
    pub fn uses_var(&self, v: Var) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(w) => *w == v,
            Expr::Neg(x) => x.uses_var(v),
            Expr::Bin(_, a, b) => a.uses_var(v) || b.uses_var(v),
            Expr::Fun(_, x) => x.uses_var(v),
        }
    }

    /// Constant value of a literal, possibly under unary minus.
    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Num(c) => Some(*c),
            Expr::Neg(x) => x.as_const().map(|c| -c),
            _ => None,
        }
    }

    fn as_const_int(&self) -> Option<i64> {
        let c = self.as_const()?;
        if c.fract() == 0.0 && c.abs() <= 1e9 {
            Some(c as i64)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Derivatives `[f, f', f'', f''']` of a unary function at `u`, with the
/// domain checks the IEEE semantics do not provide.
pub fn unary_family(f: UnaryFn, u: f64) -> Result<[f64; 4]> {
    Ok(match f {
        UnaryFn::Sin => [u.sin(), u.cos(), -u.sin(), -u.cos()],
        UnaryFn::Cos => [u.cos(), -u.sin(), -u.cos(), u.sin()],
        UnaryFn::Tan => {
            let w = u.tan();
            let d = 1.0 + w * w;
            [w, d, 2.0 * w * d, d * (2.0 + 6.0 * w * w)]
        }
        UnaryFn::Sinh => [u.sinh(), u.cosh(), u.sinh(), u.cosh()],
        UnaryFn::Cosh => [u.cosh(), u.sinh(), u.cosh(), u.sinh()],
        UnaryFn::Exp => {
            let e = u.exp();
            [e, e, e, e]
        }
        UnaryFn::Ln => {
            if u <= 0.0 {
                return Err(Error::domain(format!("ln of nonpositive value {u}")));
            }
            let r = 1.0 / u;
            [u.ln(), r, -r * r, 2.0 * r * r * r]
        }
        UnaryFn::Sqrt => {
            if u < 0.0 {
                return Err(Error::domain(format!("sqrt of negative value {u}")));
            }
            let r = u.sqrt();
            [r, 0.5 / r, -0.25 / (r * u), 0.375 / (r * u * u)]
        }
    })
}

fn pow_const_family(u: f64, c: f64) -> Result<[f64; 4]> {
    if u <= 0.0 {
        return Err(Error::domain(format!(
            "non-integer power {c} of nonpositive base {u}"
        )));
    }
    Ok([
        u.powf(c),
        c * u.powf(c - 1.0),
        c * (c - 1.0) * u.powf(c - 2.0),
        c * (c - 1.0) * (c - 2.0) * u.powf(c - 3.0),
    ])
}

/// Evaluates an expression over any jet scalar; `s` and `t` are the seeded
/// values of the two variables.
pub fn eval_jet<T: JetValue>(e: &Expr, s: T, t: T) -> Result<T> {
    Ok(match e {
        Expr::Num(c) => T::constant(*c),
        Expr::Var(Var::S) => s,
        Expr::Var(Var::T) => t,
        Expr::Neg(x) => -eval_jet(x, s, t)?,
        Expr::Fun(f, x) => {
            let g = eval_jet(x, s, t)?;
            g.compose(unary_family(*f, g.value())?)
        }
        Expr::Bin(op, a, b) => {
            let lhs = eval_jet(a, s, t)?;
            match op {
                BinOp::Add => lhs + eval_jet(b, s, t)?,
                BinOp::Sub => lhs - eval_jet(b, s, t)?,
                BinOp::Mul => lhs * eval_jet(b, s, t)?,
                // division follows IEEE semantics: /0 yields inf/NaN which
                // propagates to the caller's finiteness checks
                BinOp::Div => lhs / eval_jet(b, s, t)?,
                BinOp::Pow => {
                    if let Some(n) = b.as_const_int() {
                        lhs.powi(n)
                    } else if let Some(c) = b.as_const() {
                        lhs.compose(pow_const_family(lhs.value(), c)?)
                    } else {
                        let expo = eval_jet(b, s, t)?;
                        let base = lhs.value();
                        if base <= 0.0 {
                            return Err(Error::domain(format!(
                                "variable power of nonpositive base {base}"
                            )));
                        }
                        let ln = lhs.compose(unary_family(UnaryFn::Ln, base)?);
                        let prod = expo * ln;
                        prod.compose(unary_family(UnaryFn::Exp, prod.value())?)
                    }
                }
            }
        }
    })
}

/// Plain IEEE-double evaluation at `(s, t)`.
pub fn eval_expr(e: &Expr, s: f64, t: f64) -> Result<f64> {
    eval_jet::<f64>(e, s, t).map_err(|err| err.at_param2(s, t))
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lit = &text[start..i];
                let val: f64 = lit.parse().map_err(|_| Error::Parse {
                    offset: start,
                    message: format!("invalid number literal `{lit}`"),
                })?;
                toks.push((Tok::Num(val), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    allow_t: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn error(&self, expected: &str) -> Error {
        let found = match self.peek() {
            Some(t) => t.describe(),
            None => "end of input".into(),
        };
        Error::Parse {
            offset: self.offset(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let expo = self.factor()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(expo)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::Ident(name)) => {
                if name == "s" {
                    return Ok(Expr::Var(Var::S));
                }
                if name == "t" {
                    if !self.allow_t {
                        return Err(Error::Parse {
                            offset,
                            message: "variable `t` is not allowed here (curve expressions use `s` only)"
                                .into(),
                        });
                    }
                    return Ok(Expr::Var(Var::T));
                }
                if let Some(f) = UnaryFn::from_name(&name) {
                    self.expect(Tok::LParen, "`(` after function name")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)` closing the function argument")?;
                    return Ok(Expr::Fun(f, Box::new(arg)));
                }
                Err(Error::Parse {
                    offset,
                    message: format!(
                        "unknown identifier `{name}` (expected s, t, or one of sin cos tan sinh cosh exp ln sqrt)"
                    ),
                })
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("a number, variable, function or `(`"))
            }
        }
    }
}

fn parse_with(text: &str, allow_t: bool) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), allow_t };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("end of expression"));
    }
    Ok(e)
}

/// Parses an expression over the variables `s` and `t`.
pub fn parse_expr(text: &str) -> Result<Expr> {
    parse_with(text, true)
}

/// Parses a curve expression; mentioning `t` is a parse-time error.
pub fn parse_expr_curve(text: &str) -> Result<Expr> {
    parse_with(text, false)
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Num(_) | Expr::Var(_) | Expr::Fun(..) => 5,
        Expr::Bin(BinOp::Pow, ..) => 4,
        Expr::Neg(_) => 3,
        Expr::Bin(BinOp::Mul, ..) | Expr::Bin(BinOp::Div, ..) => 2,
        Expr::Bin(BinOp::Add, ..) | Expr::Bin(BinOp::Sub, ..) => 1,
    }
}

fn fmt_child(e: &Expr, f: &mut fmt::Formatter<'_>, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// Prints a form that parses back to the identical AST: parentheses are
    /// inserted conservatively so associativity is never renormalized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(Var::S) => write!(f, "s"),
            Expr::Var(Var::T) => write!(f, "t"),
            Expr::Fun(g, x) => write!(f, "{}({x})", g.name()),
            Expr::Neg(x) => {
                write!(f, "-")?;
                fmt_child(x, f, prec(x) < 3)
            }
            Expr::Bin(op, a, b) => {
                let (sym, p) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                    BinOp::Pow => ("^", 4),
                };
                let wrap_l = if *op == BinOp::Pow { prec(a) < 5 } else { prec(a) < p };
                let wrap_r = if *op == BinOp::Pow { prec(b) < 3 } else { prec(b) <= p };
                fmt_child(a, f, wrap_l)?;
                write!(f, "{sym}")?;
                fmt_child(b, f, wrap_r)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("2+3*s").unwrap();
        assert_eq!(eval_expr(&e, 4.0, 0.0).unwrap(), 14.0);
    }

    #[test]
    fn unary_minus_binds_below_pow() {
        let e = parse_expr("-s^2").unwrap();
        assert_eq!(eval_expr(&e, 3.0, 0.0).unwrap(), -9.0);
    }

    #[test]
    fn parse_error_offset() {
        let err = parse_expr("2+*3").unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert_eq!(offset, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_expr(&parse_expr("cos(0)").unwrap(), 0.0, 0.0).unwrap(), 1.0);
        assert_eq!(eval_expr(&parse_expr("sinh(0)").unwrap(), 0.0, 0.0).unwrap(), 0.0);
        assert!(matches!(
            eval_expr(&parse_expr("sqrt(s)").unwrap(), -1.0, 0.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn pow_is_right_associative() {
        // s^2^3 = s^8
        let e = parse_expr("s^2^3").unwrap();
        assert_eq!(eval_expr(&e, 2.0, 0.0).unwrap(), 256.0);
    }

    #[test]
    fn t_rejected_in_curve_exprs() {
        assert!(parse_expr_curve("cos(s)").is_ok());
        let err = parse_expr_curve("cos(t)").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 4, .. }), "{err:?}");
    }

    #[test]
    fn print_parse_is_identity_on_ast() {
        for src in [
            "2+3*s",
            "-s^2",
            "s^-2",
            "(s+t)^2",
            "s-(t-1)",
            "s/t/2",
            "sin(cos(s))*exp(-t)",
            "2^s^2",
            "-(s+1)",
            "sqrt(s^2+1)",
            "1e-3*s+2.5",
        ] {
            let ast = parse_expr(src).unwrap();
            let printed = ast.to_string();
            let reparsed = parse_expr(&printed).unwrap();
            assert_eq!(ast, reparsed, "round trip failed: {src} -> {printed}");
        }
    }

    #[test]
    fn garbage_never_panics() {
        for junk in ["", "((((", "s t", "sin", "sin(", "1..2", "2e", "^2", "s^", "foo(3)", "1+"] {
            let _ = parse_expr(junk);
        }
    }
}
