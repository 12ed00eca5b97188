//! Tiny expression grammar for specifying test functions on the command
//! line.  A spec denotes `(1-z)^gamma * p(z)` with `gamma` real and `p` a
//! polynomial with real coefficients:
//!
//! ```text
//! spec    := sum
//! sum     := ['-'] product { ('+' | '-') product }     (terms must be polynomials)
//! product := factor { '*' factor }
//! factor  := atom [ '^' exponent ]
//! atom    := '(' sum ')' | 'z' | number
//! ```
//!
//! Exponents are real numbers; a non-integer exponent is only allowed on the
//! exact base `(1-z)` (or on an already-pure power of it), which is what
//! introduces the fractional factor.  Polynomial bases take nonnegative
//! integer exponents.  Examples: `1`, `0`, `z^2`, `(1-z)^0.1`,
//! `2*z + 1`, `(1+z)*(1-z)^1.3`.

use hb_core::series::binomial_series;
use hb_core::CoeffSeries;
use std::fmt;

/// A parsed function specification `(1-z)^gamma * p(z)`.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    gamma: f64,
    poly: Vec<f64>,
    source: String,
}

/// Parse failure with a byte position and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid function spec at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

const MAX_POLY_DEGREE: usize = 512;
const MAX_INT_EXPONENT: f64 = 64.0;

impl FunctionSpec {
    /// Parses a spec string.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut p = Parser {
            chars: input.char_indices().peekable(),
            len: input.len(),
        };
        let value = p.sum()?;
        p.skip_ws();
        if let Some(&(pos, c)) = p.chars.peek() {
            return Err(err(pos, format!("unexpected character '{c}'")));
        }
        if !value.gamma.is_finite() || value.poly.iter().any(|c| !c.is_finite()) {
            return Err(err(0, "coefficients overflow".to_string()));
        }
        Ok(FunctionSpec {
            gamma: value.gamma,
            poly: value.poly,
            source: input.to_string(),
        })
    }

    /// The exponent on the `(1-z)` factor.
    #[cfg(test)]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The polynomial factor's coefficients.
    #[cfg(test)]
    pub fn poly(&self) -> &[f64] {
        &self.poly
    }

    /// The original spec string.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Whether the spec denotes the zero function.
    #[cfg(test)]
    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(|&c| c == 0.0)
    }

    /// The first `m` Taylor coefficients of the function.
    pub fn window(&self, m: usize) -> CoeffSeries {
        let poly = CoeffSeries::from_real(&self.poly).expect("finite coefficients");
        if self.gamma == 0.0 {
            poly.truncate(m)
        } else {
            binomial_series(self.gamma, m).cauchy_product(&poly, m)
        }
    }
}

/// Intermediate value `(1-z)^gamma * poly`.
#[derive(Debug, Clone)]
struct Val {
    gamma: f64,
    poly: Vec<f64>,
}

impl Val {
    fn constant(c: f64) -> Self {
        Val { gamma: 0.0, poly: vec![c] }
    }

    fn is_polynomial(&self) -> bool {
        self.gamma == 0.0
    }

    /// Exactly the polynomial 1 - z with no power factor.
    fn is_one_minus_z(&self) -> bool {
        self.gamma == 0.0 && self.poly == [1.0, -1.0]
    }

    /// A pure (possibly trivial) power of (1-z): polynomial factor 1.
    fn is_pure_power(&self) -> bool {
        self.poly == [1.0]
    }
}

fn err(position: usize, message: String) -> ParseError {
    ParseError { position, message }
}

fn trim(mut poly: Vec<f64>) -> Vec<f64> {
    while poly.len() > 1 && *poly.last().unwrap() == 0.0 {
        poly.pop();
    }
    poly
}

fn poly_mul(a: &[f64], b: &[f64], pos: usize) -> Result<Vec<f64>, ParseError> {
    let deg = (a.len() - 1) + (b.len() - 1);
    if deg > MAX_POLY_DEGREE {
        return Err(err(pos, format!("polynomial degree exceeds {MAX_POLY_DEGREE}")));
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Ok(trim(out))
}

fn poly_add(a: &[f64], b: &[f64], sign: f64) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += sign * y;
    }
    trim(out)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    len: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn pos(&mut self) -> usize {
        self.chars.peek().map_or(self.len, |&(i, _)| i)
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if matches!(self.chars.peek(), Some(&(_, c)) if c == want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Val, ParseError> {
        self.skip_ws();
        let negate = self.eat('-');
        let mut acc = self.product()?;
        if negate {
            acc.poly.iter_mut().for_each(|c| *c = -*c);
        }
        loop {
            self.skip_ws();
            let sign = match self.chars.peek() {
                Some(&(_, '+')) => 1.0,
                Some(&(_, '-')) => -1.0,
                _ => break,
            };
            let op_pos = self.pos();
            self.chars.next();
            let rhs = self.product()?;
            if !acc.is_polynomial() || !rhs.is_polynomial() {
                return Err(err(
                    op_pos,
                    "sums are only supported between polynomial terms; \
                     keep (1-z) powers as top-level product factors"
                        .to_string(),
                ));
            }
            acc.poly = poly_add(&acc.poly, &rhs.poly, sign);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let pos = self.pos();
            let rhs = self.factor()?;
            acc.gamma += rhs.gamma;
            acc.poly = poly_mul(&acc.poly, &rhs.poly, pos)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let exp_pos = self.pos();
        let negative = self.eat('-');
        let mut e = self.number()?;
        if negative {
            e = -e;
        }
        if base.is_one_minus_z() {
            return Ok(Val { gamma: e, poly: vec![1.0] });
        }
        if base.is_pure_power() {
            return Ok(Val { gamma: base.gamma * e, poly: vec![1.0] });
        }
        if e.fract() != 0.0 {
            return Err(err(
                exp_pos,
                "non-integer exponents are only allowed on the base (1-z)".to_string(),
            ));
        }
        if e < 0.0 {
            return Err(err(
                exp_pos,
                "negative exponents are only allowed on the base (1-z)".to_string(),
            ));
        }
        if e > MAX_INT_EXPONENT {
            return Err(err(exp_pos, format!("integer exponent exceeds {MAX_INT_EXPONENT}")));
        }
        let k = e as usize;
        let mut poly = vec![1.0];
        for _ in 0..k {
            poly = poly_mul(&poly, &base.poly, exp_pos)?;
        }
        Ok(Val { gamma: base.gamma * e, poly })
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        self.skip_ws();
        let pos = self.pos();
        match self.chars.peek() {
            Some(&(_, '(')) => {
                self.chars.next();
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected ')'".to_string()));
                }
                Ok(inner)
            }
            Some(&(_, 'z')) => {
                self.chars.next();
                Ok(Val { gamma: 0.0, poly: vec![0.0, 1.0] })
            }
            Some(&(_, c)) if c.is_ascii_digit() => Ok(Val::constant(self.number()?)),
            Some(&(_, c)) => Err(err(pos, format!("unexpected character '{c}'"))),
            None => Err(err(pos, "unexpected end of input".to_string())),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos();
        let mut text = String::new();
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_ascii_digit()) {
            text.push(self.chars.next().unwrap().1);
        }
        if text.is_empty() {
            return Err(err(start, "expected a number".to_string()));
        }
        if matches!(self.chars.peek(), Some(&(_, '.'))) {
            text.push(self.chars.next().unwrap().1);
            while matches!(self.chars.peek(), Some(&(_, c)) if c.is_ascii_digit()) {
                text.push(self.chars.next().unwrap().1);
            }
        }
        if matches!(self.chars.peek(), Some(&(_, 'e' | 'E'))) {
            text.push(self.chars.next().unwrap().1);
            if matches!(self.chars.peek(), Some(&(_, '+' | '-'))) {
                text.push(self.chars.next().unwrap().1);
            }
            let mut digits = false;
            while matches!(self.chars.peek(), Some(&(_, c)) if c.is_ascii_digit()) {
                text.push(self.chars.next().unwrap().1);
                digits = true;
            }
            if !digits {
                return Err(err(self.pos(), "expected exponent digits".to_string()));
            }
        }
        text.parse::<f64>()
            .map_err(|e| err(start, format!("bad number '{text}': {e}")))
    }
}
