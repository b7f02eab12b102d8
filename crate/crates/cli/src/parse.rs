//! Text grammar for scalars, polynomials, and points.
//!
//! The grammar is whitespace-insensitive and built so that the canonical
//! `Display` form of every core value parses back to an equal value:
//!
//! * scalars are arithmetic expressions in `t` over the rationals with
//!   `+ - * / ^ ( )`, e.g. `-5/3`, `2 + t`, `(2 + t)/(1 - t^2)`;
//! * polynomials are sums of terms `coefficient * monomial`, with variables
//!   `X0`..`X9` and parenthesized scalar expressions as coefficients, e.g.
//!   `X1^3 - X0*X1*X2` or `((2 + t)/(1 - t))*X0^2 + 3*X1^2`;
//! * points are type-I tuples `(1 : 2+t : 4)`, polydiscs
//!   `disc(center=(0, 0); rho=(0, 0))`, or the keyword `gauss` (whose
//!   coordinate count comes from context);
//! * residue coordinate lists are comma-separated signed rationals, `2,4` or
//!   `-12/5,3`.
//!
//! Parse errors carry the line, the column, and the set of token shapes that
//! would have been accepted at that position.

use berkstat_core::berkovich::BerkPoint;
use berkstat_core::{Poly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Largest exponent the grammar accepts; guards against memory blowups from
/// inputs like `t^99999999`.
const MAX_EXPONENT: u32 = 1_000_000;

/// What went wrong at the error position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// The token at the position does not fit the grammar.
    Unexpected {
        found: String,
        expected: Vec<&'static str>,
    },
    /// The text is grammatical but does not denote a value (for example a
    /// division by zero or a variable index out of range).
    Invalid(String),
}

/// A parse failure with its source position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn unexpected(pos: Pos, found: String, expected: Vec<&'static str>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            kind: ParseErrorKind::Unexpected { found, expected },
        }
    }

    fn invalid(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            kind: ParseErrorKind::Invalid(message.into()),
        }
    }

    /// The token shapes that would have been accepted, when known.
    pub fn expected(&self) -> &[&'static str] {
        match &self.kind {
            ParseErrorKind::Unexpected { expected, .. } => expected,
            ParseErrorKind::Invalid(_) => &[],
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "found {}", found)?;
                if !expected.is_empty() {
                    write!(f, ", expected {}", expected.join(" | "))?;
                }
                Ok(())
            }
            ParseErrorKind::Invalid(msg) => write!(f, "{}", msg),
        }
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

/// A parsed point expression. The `gauss` keyword does not carry a
/// coordinate count in the text, so it stays symbolic until the caller
/// resolves it against context (usually the companion polynomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedPoint {
    /// The Gauss point; the coordinate count comes from context.
    Gauss,
    /// A fully determined point.
    Concrete(BerkPoint),
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {}", n),
            Tok::Ident(s) => format!("'{}'", s),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Colon => "':'".into(),
            Tok::Semi => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::Eq => "'='".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> PResult<Vec<(Tok, Pos)>> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let n = digits.parse::<BigInt>().expect("digit string is an integer");
                toks.push((Tok::Int(n), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        word.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(word), pos));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    other => {
                        return Err(ParseError::invalid(
                            pos,
                            format!("unrecognized character {:?}", other),
                        ))
                    }
                };
                chars.next();
                col += 1;
                toks.push((tok, pos));
            }
        }
    }
    toks.push((Tok::Eof, Pos { line, col }));
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: Vec<&'static str>) -> PResult<T> {
        Err(ParseError::unexpected(
            self.pos(),
            self.peek().describe(),
            expected,
        ))
    }

    fn expect(&mut self, tok: Tok, label: &'static str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(vec![label])
        }
    }

    fn expect_end(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail(vec!["end of input"])
        }
    }

    fn expect_keyword(&mut self, word: &'static str) -> PResult<()> {
        if matches!(self.peek(), Tok::Ident(w) if w == word) {
            self.bump();
            Ok(())
        } else {
            self.fail(vec![word])
        }
    }

    /// A nonnegative exponent after `^`, bounded by [`MAX_EXPONENT`].
    fn exponent(&mut self) -> PResult<u32> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => match n.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(e),
                _ => Err(ParseError::invalid(
                    pos,
                    format!("exponent {} exceeds the limit {}", n, MAX_EXPONENT),
                )),
            },
            other => Err(ParseError::unexpected(
                pos,
                other.describe(),
                vec!["integer"],
            )),
        }
    }

    /// A signed 64-bit integer (used by polydisc radii and relation vectors).
    fn signed_int(&mut self) -> PResult<i64> {
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let n = if negative { -n } else { n };
                n.to_i64()
                    .ok_or_else(|| ParseError::invalid(pos, format!("integer {} is out of range", n)))
            }
            other => Err(ParseError::unexpected(
                pos,
                other.describe(),
                vec!["integer"],
            )),
        }
    }

    // -- scalar expressions -------------------------------------------------

    /// expr := term (('+' | '-') term)*
    fn scalar_expr(&mut self) -> PResult<Scalar> {
        let mut acc = self.scalar_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.scalar_term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.scalar_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    /// term := factor (('*' | '/') factor)*
    fn scalar_term(&mut self) -> PResult<Scalar> {
        let mut acc = self.scalar_factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.scalar_factor()?);
                }
                Tok::Slash => {
                    let pos = self.pos();
                    self.bump();
                    let d = self.scalar_factor()?;
                    acc = acc
                        .div(&d)
                        .map_err(|_| ParseError::invalid(pos, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// factor := ('+' | '-')* base ; base := atom ['^' INT]
    fn scalar_factor(&mut self) -> PResult<Scalar> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.scalar_factor()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.scalar_factor()
            }
            _ => {
                let base = self.scalar_atom()?;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let e = self.exponent()?;
                    Ok(base
                        .pow(i64::from(e))
                        .expect("nonnegative power of a scalar"))
                } else {
                    Ok(base)
                }
            }
        }
    }

    /// atom := INT | 't' | '(' expr ')'
    fn scalar_atom(&mut self) -> PResult<Scalar> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Scalar::from_rat(BigRational::from_integer(n)))
            }
            Tok::Ident(w) if w == "t" => {
                self.bump();
                Ok(Scalar::t())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.scalar_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => self.fail(vec!["integer", "'t'", "'('"]),
        }
    }

    // -- polynomials --------------------------------------------------------

    /// poly := polyterm (('+' | '-') polyterm)*
    ///
    /// Terms are collected as (monomial, coefficient) pairs over sparse
    /// variable indices; the arity of the result is one past the largest
    /// index that occurs.
    fn poly(&mut self) -> PResult<Poly> {
        let mut terms: Vec<(BTreeMap<usize, u32>, Scalar)> = Vec::new();
        let mut negate = false;
        loop {
            let (mono, coeff) = self.poly_term()?;
            terms.push((mono, if negate { coeff.neg() } else { coeff }));
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    negate = false;
                }
                Tok::Minus => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        let nvars = terms
            .iter()
            .flat_map(|(m, _)| m.keys().copied())
            .max()
            .map_or(0, |i| i + 1);
        let full = terms.into_iter().map(|(mono, c)| {
            let mut exps = vec![0u32; nvars];
            for (i, e) in mono {
                exps[i] = e;
            }
            (exps, c)
        });
        Ok(Poly::from_terms(nvars, full).expect("exponent rows match the arity"))
    }

    /// polyterm := ('+' | '-')* factor (('*' | '/') factor)*
    ///
    /// A factor is either a scalar atom (folded into the coefficient) or
    /// `X<digit> ['^' INT]` (folded into the monomial). Division is only
    /// defined by scalar factors.
    fn poly_term(&mut self) -> PResult<(BTreeMap<usize, u32>, Scalar)> {
        let mut coeff = Scalar::one();
        let mut mono: BTreeMap<usize, u32> = BTreeMap::new();
        loop {
            match self.peek() {
                Tok::Minus => {
                    self.bump();
                    coeff = coeff.neg();
                }
                Tok::Plus => {
                    self.bump();
                }
                _ => break,
            }
        }
        self.poly_factor(&mut coeff, &mut mono)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    self.poly_factor(&mut coeff, &mut mono)?;
                }
                Tok::Slash => {
                    let pos = self.pos();
                    self.bump();
                    if matches!(self.peek(), Tok::Ident(w) if is_var_name(w)) {
                        return Err(ParseError::invalid(pos, "cannot divide by a variable"));
                    }
                    let d = self.scalar_factor()?;
                    coeff = coeff
                        .div(&d)
                        .map_err(|_| ParseError::invalid(pos, "division by zero"))?;
                }
                _ => break,
            }
        }
        Ok((mono, coeff))
    }

    fn poly_factor(
        &mut self,
        coeff: &mut Scalar,
        mono: &mut BTreeMap<usize, u32>,
    ) -> PResult<()> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(w) if is_var_name(&w) => {
                self.bump();
                let idx = (w.as_bytes()[1] - b'0') as usize;
                let e = if *self.peek() == Tok::Caret {
                    self.bump();
                    self.exponent()?
                } else {
                    1
                };
                let slot = mono.entry(idx).or_insert(0);
                *slot = slot.checked_add(e).ok_or_else(|| {
                    ParseError::invalid(pos, "monomial exponent overflows")
                })?;
                Ok(())
            }
            Tok::Ident(w) if w.starts_with('X') => Err(ParseError::invalid(
                pos,
                format!("unknown variable '{}' (variables are X0..X9)", w),
            )),
            _ => {
                let s = self.scalar_factor().map_err(|mut e| {
                    // A variable would also have been accepted here.
                    if let ParseErrorKind::Unexpected { expected, .. } = &mut e.kind {
                        if (e.line, e.col) == (pos.line, pos.col) {
                            expected.push("variable X0..X9");
                        }
                    }
                    e
                })?;
                *coeff = coeff.mul(&s);
                Ok(())
            }
        }
    }

    // -- points -------------------------------------------------------------

    /// point := 'gauss' | disc | '(' scalar (':' scalar)+ ')'
    fn point(&mut self) -> PResult<ParsedPoint> {
        match self.peek().clone() {
            Tok::Ident(w) if w == "gauss" => {
                self.bump();
                Ok(ParsedPoint::Gauss)
            }
            Tok::Ident(w) if w == "disc" => {
                self.bump();
                self.polydisc().map(ParsedPoint::Concrete)
            }
            Tok::LParen => {
                self.bump();
                let mut coords = vec![self.scalar_expr()?];
                if *self.peek() != Tok::Colon {
                    return self.fail(vec!["':'"]);
                }
                while *self.peek() == Tok::Colon {
                    self.bump();
                    coords.push(self.scalar_expr()?);
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(ParsedPoint::Concrete(BerkPoint::type_i(coords)))
            }
            _ => self.fail(vec!["'('", "gauss", "disc"]),
        }
    }

    /// disc := 'disc' '(' 'center' '=' '(' scalar (',' scalar)* ')' ';'
    ///         'rho' '=' '(' INT (',' INT)* ')' ')'
    fn polydisc(&mut self) -> PResult<BerkPoint> {
        let head = self.pos();
        self.expect(Tok::LParen, "'('")?;
        self.expect_keyword("center")?;
        self.expect(Tok::Eq, "'='")?;
        self.expect(Tok::LParen, "'('")?;
        let mut center = vec![self.scalar_expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            center.push(self.scalar_expr()?);
        }
        self.expect(Tok::RParen, "')'")?;
        self.expect(Tok::Semi, "';'")?;
        self.expect_keyword("rho")?;
        self.expect(Tok::Eq, "'='")?;
        self.expect(Tok::LParen, "'('")?;
        let mut rho = vec![self.signed_int()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            rho.push(self.signed_int()?);
        }
        self.expect(Tok::RParen, "')'")?;
        self.expect(Tok::RParen, "')'")?;
        BerkPoint::polydisc(center, rho)
            .map_err(|_| ParseError::invalid(head, "center and rho must have equal length"))
    }
}

fn is_var_name(w: &str) -> bool {
    w.len() == 2 && w.starts_with('X') && w.as_bytes()[1].is_ascii_digit()
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Parses a scalar: an arithmetic expression in `t` over the rationals.
pub fn parse_scalar(text: &str) -> PResult<Scalar> {
    let mut p = Parser::new(text)?;
    let s = p.scalar_expr()?;
    p.expect_end()?;
    Ok(s)
}

/// Parses a rational number (a scalar expression with no `t` in its value).
pub fn parse_rational(text: &str) -> PResult<BigRational> {
    let mut p = Parser::new(text)?;
    let pos = p.pos();
    let s = p.scalar_expr()?;
    p.expect_end()?;
    s.as_rat()
        .cloned()
        .ok_or_else(|| ParseError::invalid(pos, "expected a rational number, found a function of t"))
}

/// Parses a polynomial in `X0`..`X9` with scalar coefficients.
pub fn parse_poly(text: &str) -> PResult<Poly> {
    let mut p = Parser::new(text)?;
    let f = p.poly()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses a point: a type-I tuple, a polydisc, or the `gauss` keyword.
pub fn parse_point(text: &str) -> PResult<ParsedPoint> {
    let mut p = Parser::new(text)?;
    let z = p.point()?;
    p.expect_end()?;
    Ok(z)
}

/// Parses a comma-separated list of signed rationals (residue coordinates).
pub fn parse_rational_list(text: &str) -> PResult<Vec<BigRational>> {
    let mut p = Parser::new(text)?;
    let mut out = vec![p.rational_item()?];
    while *p.peek() == Tok::Comma {
        p.bump();
        out.push(p.rational_item()?);
    }
    p.expect_end()?;
    Ok(out)
}

/// Parses a comma-separated list of signed integers (a relation vector).
pub fn parse_int_list(text: &str) -> PResult<Vec<i64>> {
    let mut p = Parser::new(text)?;
    let mut out = vec![p.signed_int()?];
    while *p.peek() == Tok::Comma {
        p.bump();
        out.push(p.signed_int()?);
    }
    p.expect_end()?;
    Ok(out)
}

impl Parser {
    /// srat := ('+' | '-')* INT ['/' INT]
    fn rational_item(&mut self) -> PResult<BigRational> {
        let mut negative = false;
        loop {
            match self.peek() {
                Tok::Minus => {
                    self.bump();
                    negative = !negative;
                }
                Tok::Plus => {
                    self.bump();
                }
                _ => break,
            }
        }
        let pos = self.pos();
        let numer = match self.bump() {
            Tok::Int(n) => n,
            other => {
                return Err(ParseError::unexpected(
                    pos,
                    other.describe(),
                    vec!["integer"],
                ))
            }
        };
        let denom = if *self.peek() == Tok::Slash {
            let pos = self.pos();
            self.bump();
            let dpos = self.pos();
            match self.bump() {
                Tok::Int(d) if d.is_zero() => {
                    return Err(ParseError::invalid(pos, "division by zero"))
                }
                Tok::Int(d) => d,
                other => {
                    return Err(ParseError::unexpected(
                        dpos,
                        other.describe(),
                        vec!["integer"],
                    ))
                }
            }
        } else {
            BigInt::one()
        };
        let q = BigRational::new(numer, denom);
        Ok(if negative { -q } else { q })
    }
}

/// Formats a rational with an explicit denominator, e.g. `1/1`, `-3/4`.
pub fn rational_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use berkstat_core::FieldSpec;

    fn sc(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn scalar_rationals() {
        assert_eq!(sc("5"), Scalar::from_int(5));
        assert_eq!(sc("-12/5"), Scalar::from_rat(BigRational::new((-12).into(), 5.into())));
        assert_eq!(sc(" 1 / 2 "), Scalar::from_rat(BigRational::new(1.into(), 2.into())));
        assert_eq!(sc("2^10"), Scalar::from_int(1024));
        assert_eq!(sc("--3"), Scalar::from_int(3));
    }

    #[test]
    fn scalar_functions_of_t() {
        let spec = FieldSpec::t_adic();
        let s = sc("(2+t)/(1-t^2)");
        assert_eq!(spec.valuation(&s).unwrap().finite(), 0);
        assert_eq!(s.to_string(), "(2 + t)/(1 - t^2)");
        assert_eq!(sc("t*(1+t) - t - t^2"), Scalar::zero());
        assert_eq!(sc("1/2*t^3"), sc("t^3/2"));
    }

    #[test]
    fn scalar_division_by_zero_is_reported_at_the_operator() {
        let err = parse_scalar("1/(t - t)").unwrap_err();
        assert_eq!((err.line, err.col), (1, 2));
        assert_eq!(err.kind, ParseErrorKind::Invalid("division by zero".into()));
    }

    #[test]
    fn scalar_error_positions_and_expectations() {
        let err = parse_scalar("2 + ").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        assert_eq!(err.expected(), ["integer", "'t'", "'('"]);

        let err = parse_scalar("(1 + 2").unwrap_err();
        assert_eq!((err.line, err.col), (1, 7));
        assert_eq!(err.expected(), ["')'"]);

        let err = parse_scalar("1 +\n* 2").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
    }

    #[test]
    fn poly_examples() {
        let f = parse_poly("X1^3 - X0*X1*X2").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert!(f.is_homogeneous());
        assert_eq!(f.to_string(), "X1^3 - X0*X1*X2");

        let g = parse_poly("((2+t)/(1-t))*X0^2 + 3*X1^2").unwrap();
        assert_eq!(g.num_vars(), 2);
        assert_eq!(g.to_string(), "((2 + t)/(1 - t))*X0^2 + 3*X1^2");
    }

    #[test]
    fn poly_accepts_fractional_and_repeated_factors() {
        assert_eq!(parse_poly("1/2*X0").unwrap().to_string(), "1/2*X0");
        assert_eq!(parse_poly("X0*X0").unwrap(), parse_poly("X0^2").unwrap());
        assert_eq!(parse_poly("X0 - X0").unwrap(), Poly::zero(1));
        assert_eq!(parse_poly("0").unwrap(), Poly::zero(0));
        assert_eq!(parse_poly("2*X1*3").unwrap().to_string(), "6*X1");
    }

    #[test]
    fn poly_rejects_out_of_range_variables_and_variable_division() {
        let err = parse_poly("X10 + 1").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Invalid(ref m) if m.contains("X10")));
        let err = parse_poly("X0/X1").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Invalid(ref m) if m.contains("variable")));
    }

    #[test]
    fn point_forms() {
        let p = parse_point("(1 : 2+t : 4)").unwrap();
        let ParsedPoint::Concrete(BerkPoint::TypeI(coords)) = &p else {
            panic!("expected a type-I point");
        };
        assert_eq!(coords.len(), 3);
        assert_eq!(coords[1], sc("2 + t"));

        assert_eq!(parse_point("gauss").unwrap(), ParsedPoint::Gauss);

        let d = parse_point("disc(center=(0, 1); rho=(2, -1))").unwrap();
        let ParsedPoint::Concrete(BerkPoint::Polydisc { center, rho }) = &d else {
            panic!("expected a polydisc");
        };
        assert_eq!(center.len(), 2);
        assert_eq!(rho, &vec![2, -1]);
    }

    #[test]
    fn point_errors() {
        let err = parse_point("(1, 2)").unwrap_err();
        assert_eq!(err.expected(), ["':'"]);
        let err = parse_point("disc(center=(0); rho=(0, 0))").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Invalid(ref m) if m.contains("equal length")));
        let err = parse_point("5").unwrap_err();
        assert_eq!(err.expected(), ["'('", "gauss", "disc"]);
    }

    #[test]
    fn rational_lists() {
        let v = parse_rational_list("-12/5, 3").unwrap();
        assert_eq!(v, vec![BigRational::new((-12).into(), 5.into()), BigRational::from_integer(3.into())]);
        assert!(parse_rational_list("2,").is_err());
        assert!(parse_rational_list("1/0").is_err());
        assert_eq!(parse_int_list("2,-1").unwrap(), vec![2, -1]);
    }

    #[test]
    fn display_round_trips_of_handwritten_values() {
        for text in [
            "-5/3",
            "2 + t",
            "(2 + t)/(1 - t^2)",
            "t/(1 - t)",
            "1/2*t^3",
        ] {
            let s = sc(text);
            assert_eq!(sc(&s.to_string()), s, "round trip of {}", text);
        }
        for text in ["X1^3 - X0*X1*X2", "2*X0 - X1", "-X0 - 1/2*X1"] {
            let f = parse_poly(text).unwrap();
            assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }
        for text in ["(1 : 2 + t : 4)", "disc(center=(0, 1); rho=(2, -1))"] {
            let z = parse_point(text).unwrap();
            let ParsedPoint::Concrete(point) = &z else {
                panic!()
            };
            assert_eq!(parse_point(&point.to_string()).unwrap(), z);
        }
    }
}
