//! Expression parser for element literals and polynomials.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*            products are explicit and
//! unary := '-' unary | atom              left-associative
//! atom  := '(' tuple | expr ')' | 'x' ('^' INT)? | scalar basis-label?
//!          | basis-label
//! tuple := scalar (',' scalar)*          exactly dim entries
//! ```
//!
//! Scalars are integers, fractions `p/q`, or decimals (`0.5`); integers and
//! fractions load as exact rationals. A scalar immediately followed by a
//! basis label (`2i`, `3/2j`) is one literal. Exponents are allowed on the
//! bare variable `x` only. Basis labels come from the algebra spec; labels
//! that collide with the variable name or look like numbers (other than a
//! unit labeled "1") are rejected as ambiguous.

use crate::algebra::{AlgebraSpec, Element};
use crate::poly::{NcPolynomial, PolyError};
use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Var,
    Scalar(Scalar),
    /// Fused scalar·basis literal like `2i`.
    ScaledBasis(Scalar, usize),
    Basis(usize),
    Int(u32),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

const SPECIAL: &str = "+-*/^(),. \t\r\n";

/// Reject label sets the tokenizer cannot disambiguate.
fn check_labels(algebra: &AlgebraSpec) -> Result<(), ParseError> {
    let labels = algebra.basis_labels();
    for (idx, label) in labels.iter().enumerate() {
        if label.is_empty() {
            return Err(err(1, 1, format!("basis label {idx} is empty")));
        }
        if label == "x" {
            return Err(err(
                1,
                1,
                format!("ambiguous basis label 'x' at index {idx} collides with the variable"),
            ));
        }
        if label.chars().any(|c| SPECIAL.contains(c)) {
            return Err(err(
                1,
                1,
                format!("basis label '{label}' contains reserved characters"),
            ));
        }
        let numeric_like = label.chars().all(|c| c.is_ascii_digit());
        if numeric_like && !(label == "1" && algebra.unit_index() == Some(idx)) {
            return Err(err(
                1,
                1,
                format!("ambiguous numeric basis label '{label}' at index {idx}"),
            ));
        }
        if labels[..idx].contains(label) {
            return Err(err(1, 1, format!("duplicate basis label '{label}'")));
        }
    }
    Ok(())
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    algebra: &'a AlgebraSpec,
}

impl<'a> Lexer<'a> {
    fn new(input: &str, algebra: &'a AlgebraSpec) -> Lexer<'a> {
        Lexer {
            chars: input.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            algebra,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    /// Longest basis label starting at the current position; labels "1"
    /// etc. are excluded up front by `check_labels`, digits go through the
    /// number path.
    fn match_label(&self) -> Option<(usize, usize)> {
        let rest: String = self.chars[self.pos..].iter().collect();
        let mut best: Option<(usize, usize)> = None;
        for (idx, label) in self.algebra.basis_labels().iter().enumerate() {
            if label.chars().all(|c| c.is_ascii_digit()) {
                continue;
            }
            if rest.starts_with(label.as_str())
                && best.is_none_or(|(_, len)| label.len() > len)
            {
                best = Some((idx, label.len()));
            }
        }
        best
    }

    fn lex_number(&mut self) -> Result<Scalar, ParseError> {
        let (line, col) = (self.line, self.col);
        let mut text = String::new();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            text.push(self.bump().expect("digit"));
        }
        if self.peek() == Some('.') {
            text.push(self.bump().expect("dot"));
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(err(line, col, "expected digits after decimal point"));
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                text.push(self.bump().expect("digit"));
            }
        } else if self.peek() == Some('/') {
            text.push(self.bump().expect("slash"));
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(err(line, col, "expected digits after '/' in fraction"));
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                text.push(self.bump().expect("digit"));
            }
        }
        Scalar::parse(&text).map_err(|m| err(line, col, m))
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            let tok = match c {
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '^' => {
                    self.bump();
                    Tok::Caret
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                d if d.is_ascii_digit() => {
                    let scalar = self.lex_number()?;
                    // A label glued right after a number scales that basis
                    // vector: 2i, 3/2j, 0.5k.
                    if let Some((idx, len)) = self.match_label() {
                        for _ in 0..len {
                            self.bump();
                        }
                        Tok::ScaledBasis(scalar, idx)
                    } else {
                        Tok::Scalar(scalar)
                    }
                }
                _ => {
                    if c == 'x'
                        && self
                            .match_label()
                            .is_none_or(|(idx, len)| {
                                // Prefer the variable unless a longer label
                                // starts with 'x'.
                                len <= 1 && self.algebra.basis_labels()[idx] != "x"
                            })
                    {
                        self.bump();
                        Tok::Var
                    } else if let Some((idx, len)) = self.match_label() {
                        for _ in 0..len {
                            self.bump();
                        }
                        Tok::Basis(idx)
                    } else {
                        return Err(err(line, col, format!("unexpected character '{c}'")));
                    }
                }
            };
            out.push(Spanned { tok, line, col });
        }
        // Rewrite integer scalars that follow '^' as exponents.
        let mut rewritten = Vec::with_capacity(out.len());
        let mut iter = out.into_iter().peekable();
        while let Some(t) = iter.next() {
            let is_caret = t.tok == Tok::Caret;
            rewritten.push(t);
            if is_caret {
                if let Some(next) = iter.peek() {
                    if let Tok::Scalar(s) = &next.tok {
                        if let Some(r) = s.as_rational() {
                            use num_traits::ToPrimitive;
                            if r.is_integer() {
                                if let Some(v) = r.numer().to_u32() {
                                    let spanned = Spanned {
                                        tok: Tok::Int(v),
                                        line: next.line,
                                        col: next.col,
                                    };
                                    iter.next();
                                    rewritten.push(spanned);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(rewritten)
    }
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    algebra: &'a Arc<AlgebraSpec>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.col))
            .or_else(|| self.tokens.last().map(|t| (t.line, t.col + 1)))
            .unwrap_or((1, 1))
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        let (line, col) = self.here();
        match self.bump() {
            Some(t) if t.tok == *tok => Ok(()),
            _ => Err(err(line, col, format!("expected {what}"))),
        }
    }

    fn lift(&self, r: Result<NcPolynomial, PolyError>) -> Result<NcPolynomial, ParseError> {
        let (line, col) = self.here();
        r.map_err(|e| err(line, col, e.to_string()))
    }

    fn scalar_element(&self, s: Scalar) -> Result<Element, ParseError> {
        let (line, col) = self.here();
        Element::from_scalar(self.algebra, s)
            .map_err(|_| err(line, col, "scalar literal needs a unital algebra"))
    }

    fn parse_expr(&mut self) -> Result<NcPolynomial, ParseError> {
        let mut acc = self.parse_term()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = self.lift(acc.add(&rhs))?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = self.lift(acc.sub(&rhs))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<NcPolynomial, ParseError> {
        let mut acc = self.parse_unary()?;
        while self.peek().is_some_and(|t| t.tok == Tok::Star) {
            self.bump();
            let rhs = self.parse_unary()?;
            acc = self.lift(acc.mul(&rhs))?;
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<NcPolynomial, ParseError> {
        if self.peek().is_some_and(|t| t.tok == Tok::Minus) {
            self.bump();
            let inner = self.parse_unary()?;
            return Ok(inner.neg());
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<NcPolynomial, ParseError> {
        let (line, col) = self.here();
        let Some(t) = self.bump() else {
            return Err(err(line, col, "unexpected end of input"));
        };
        match t.tok {
            Tok::Var => {
                let base = self.lift(NcPolynomial::variable(self.algebra))?;
                if self.peek().is_some_and(|t| t.tok == Tok::Caret) {
                    self.bump();
                    let (eline, ecol) = self.here();
                    let Some(Spanned {
                        tok: Tok::Int(n), ..
                    }) = self.bump()
                    else {
                        return Err(err(eline, ecol, "expected a nonnegative integer exponent"));
                    };
                    let one = Element::unit(self.algebra)
                        .map_err(|_| err(eline, ecol, "x^0 needs a unital algebra"))?;
                    let mut acc = NcPolynomial::constant(one);
                    for _ in 0..n {
                        acc = self.lift(acc.mul(&base))?;
                    }
                    return Ok(acc);
                }
                Ok(base)
            }
            Tok::Scalar(s) => Ok(NcPolynomial::constant(self.scalar_element(s)?)),
            Tok::ScaledBasis(s, idx) => {
                let e = Element::basis(self.algebra, idx)
                    .map_err(|e| err(line, col, e.to_string()))?;
                Ok(NcPolynomial::constant(e.scale(&s)))
            }
            Tok::Basis(idx) => {
                let e = Element::basis(self.algebra, idx)
                    .map_err(|e| err(line, col, e.to_string()))?;
                Ok(NcPolynomial::constant(e))
            }
            Tok::LParen => {
                if self.tuple_ahead() {
                    let e = self.parse_tuple(line, col)?;
                    return Ok(NcPolynomial::constant(e));
                }
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen, "closing ')'")?;
                if self.peek().is_some_and(|t| t.tok == Tok::Caret) {
                    let (eline, ecol) = self.here();
                    return Err(err(
                        eline,
                        ecol,
                        "exponent is allowed on the bare variable x only",
                    ));
                }
                Ok(inner)
            }
            Tok::Caret => Err(err(
                line,
                col,
                "exponent is allowed on the bare variable x only",
            )),
            other => Err(err(line, col, format!("unexpected token {other:?}"))),
        }
    }

    /// True when the parenthesized group that just opened is a coordinate
    /// tuple: scalars and signs separated by at least one top-level comma.
    fn tuple_ahead(&self) -> bool {
        let mut idx = self.pos;
        while let Some(t) = self.tokens.get(idx) {
            match t.tok {
                Tok::Comma => return true,
                Tok::Scalar(_) | Tok::Minus | Tok::Plus => idx += 1,
                _ => return false,
            }
        }
        false
    }

    fn parse_tuple(&mut self, line: usize, col: usize) -> Result<Element, ParseError> {
        let dim = self.algebra.dim();
        let mut coords = Vec::new();
        loop {
            let mut negate = false;
            while let Some(t) = self.peek() {
                match t.tok {
                    Tok::Minus => {
                        negate = !negate;
                        self.bump();
                    }
                    Tok::Plus => {
                        self.bump();
                    }
                    _ => break,
                }
            }
            let (sline, scol) = self.here();
            let Some(Spanned {
                tok: Tok::Scalar(s),
                ..
            }) = self.bump()
            else {
                return Err(err(sline, scol, "expected a scalar in coordinate tuple"));
            };
            coords.push(if negate { s.neg() } else { s });
            match self.bump() {
                Some(Spanned {
                    tok: Tok::Comma, ..
                }) => continue,
                Some(Spanned {
                    tok: Tok::RParen, ..
                }) => break,
                _ => {
                    let (l, c) = self.here();
                    return Err(err(l, c, "expected ',' or ')' in coordinate tuple"));
                }
            }
        }
        if coords.len() != dim {
            return Err(err(
                line,
                col,
                format!("coordinate tuple has {} entries, algebra needs {dim}", coords.len()),
            ));
        }
        Element::new(self.algebra, coords).map_err(|e| err(line, col, e.to_string()))
    }
}

/// Parse a polynomial expression over the given algebra.
pub fn parse_polynomial(
    input: &str,
    algebra: &Arc<AlgebraSpec>,
) -> Result<NcPolynomial, ParseError> {
    check_labels(algebra)?;
    let tokens = Lexer::new(input, algebra).tokens()?;
    if tokens.is_empty() {
        return Err(err(1, 1, "empty expression"));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        algebra,
    };
    let poly = parser.parse_expr()?;
    if let Some(t) = parser.peek() {
        return Err(err(t.line, t.col, format!("unexpected trailing token {:?}", t.tok)));
    }
    Ok(poly)
}

/// Parse an element literal: a constant expression (basis word, coordinate
/// tuple, or any variable-free arithmetic over them).
pub fn parse_element(input: &str, algebra: &Arc<AlgebraSpec>) -> Result<Element, ParseError> {
    let poly = parse_polynomial(input, algebra)?;
    let mut acc = Element::zero(algebra);
    for m in poly.monomials() {
        if m.degree() > 0 {
            return Err(err(1, 1, "expected a constant element, found the variable x"));
        }
        acc = &acc + &m.coeffs()[0];
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;

    fn h() -> Arc<AlgebraSpec> {
        AlgebraSpec::quaternion()
    }

    #[test]
    fn basis_words() {
        let h = h();
        let e = parse_element("1+2i-3k", &h).unwrap();
        assert_eq!(e, Element::from_ints(&h, &[1, 2, 0, -3]).unwrap());
        let e = parse_element("-i", &h).unwrap();
        assert_eq!(e, Element::from_ints(&h, &[0, -1, 0, 0]).unwrap());
        let e = parse_element("3/2j", &h).unwrap();
        assert_eq!(
            e.coords()[2],
            Scalar::from_ratio(3, 2)
        );
    }

    #[test]
    fn coordinate_tuples() {
        let h = h();
        let e = parse_element("(1,0,2,-1)", &h).unwrap();
        assert_eq!(e, Element::from_ints(&h, &[1, 0, 2, -1]).unwrap());
        let e = parse_element("(1/2, 0, 0.5, -3)", &h).unwrap();
        assert_eq!(e.coords()[0], Scalar::from_ratio(1, 2));
        assert_eq!(e.coords()[2], Scalar::from_f64(0.5));
        assert!(parse_element("(1,2)", &h).is_err());
    }

    #[test]
    fn polynomial_expressions() {
        let h = h();
        let i = Element::basis(&h, 1).unwrap();
        let j = Element::basis(&h, 2).unwrap();

        let p = parse_polynomial("(x-i)*(x-j)", &h).unwrap();
        let q = NcPolynomial::x_minus(&i)
            .unwrap()
            .mul(&NcPolynomial::x_minus(&j).unwrap())
            .unwrap();
        assert!(p.canonical_eq(&q).unwrap());

        // x^2 desugars to x*x.
        let p = parse_polynomial("x^2 + 1", &h).unwrap();
        let x = NcPolynomial::variable(&h).unwrap();
        let expected = x
            .mul(&x)
            .unwrap()
            .add(&NcPolynomial::constant(Element::unit(&h).unwrap()))
            .unwrap();
        assert!(p.canonical_eq(&expected).unwrap());

        // Products are noncommutative and left-associative.
        let p = parse_polynomial("j*x - x*j - 1", &h).unwrap();
        assert_eq!(
            p.eval(&i).unwrap(),
            Element::from_ints(&h, &[-1, 0, 0, -2]).unwrap()
        );

        // Tuples interleave with the variable.
        let p = parse_polynomial("(0,1,0,0)*x*(0,0,1,0)", &h).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.eval(&Element::unit(&h).unwrap()).unwrap(), i.mul(&j).unwrap());
    }

    #[test]
    fn parse_errors_carry_position() {
        let h = h();
        let e = parse_polynomial("x + $", &h).unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        let e = parse_polynomial("(x+1)^2", &h).unwrap_err();
        assert!(e.msg.contains("bare variable"));
        let e = parse_polynomial("x^i", &h).unwrap_err();
        assert!(e.msg.contains("integer exponent"));
        let e = parse_polynomial("", &h).unwrap_err();
        assert!(e.msg.contains("empty"));
    }

    #[test]
    fn ambiguous_labels_rejected() {
        let q = AlgebraSpec::quaternion();
        let spec = AlgebraSpec::new(
            "bad".into(),
            4,
            vec!["1".into(), "x".into(), "j".into(), "k".into()],
            Some(0),
            false,
            (0..64)
                .map(|idx| q.constant(idx / 16, (idx / 4) % 4, idx % 4).clone())
                .collect(),
        )
        .unwrap();
        let e = parse_element("1", &spec).unwrap_err();
        assert!(e.msg.contains("ambiguous"), "{e}");
    }

    #[test]
    fn scientific_notation_is_a_label_clash_not_supported() {
        // '2e1' in an algebra with labels e0..e3 means 2·e1, not 20.
        let q = AlgebraSpec::quaternion();
        let spec = AlgebraSpec::new(
            "e-labels".into(),
            4,
            vec!["e0".into(), "e1".into(), "e2".into(), "e3".into()],
            Some(0),
            false,
            (0..64)
                .map(|idx| q.constant(idx / 16, (idx / 4) % 4, idx % 4).clone())
                .collect(),
        )
        .unwrap();
        let e = parse_element("2e1", &spec).unwrap();
        assert_eq!(e, Element::from_ints(&spec, &[0, 2, 0, 0]).unwrap());
    }
}
