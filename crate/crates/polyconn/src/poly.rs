//! Exact sparse multivariate polynomial arithmetic over the rationals.
//!
//! A [`MultiPoly`] is a map from exponent vectors to nonzero
//! arbitrary-precision rational coefficients. The canonical term order is
//! graded lexicographic with `x1 > x2 > ...`: higher total degree first,
//! ties broken by comparing exponents left to right. Printing emits terms
//! in descending canonical order and parsing accepts the same grammar, so
//! `parse(print(p)) == p` exactly.
//!
//! Everything here is exact; floating-point evaluation is provided for
//! convenience but the heavy numeric loops use the compiled forms in
//! [`crate::compiled`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::Result;

/// Exponent vector of one term, ordered graded-lexicographically
/// (total degree first, then exponents compared with `x1` heaviest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// Total degree: sum of exponents.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no stored coefficient is zero, every exponent vector has
/// length `nvars`, and the zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: BigRational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !value.is_zero() {
            p.terms.insert(Monomial::constant(nvars), value);
        }
        p
    }

    pub fn constant_i64(nvars: usize, value: i64) -> Self {
        MultiPoly::constant(nvars, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, BigRational::one())
    }

    /// The variable `x{index}` (1-based, matching the text grammar).
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index == 0 || index > nvars {
            return Err(Error::VarOutOfRange { index, nvars });
        }
        let mut exps = vec![0u32; nvars];
        exps[index - 1] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(Monomial::new(exps), BigRational::one());
        Ok(p)
    }

    /// Single-term polynomial `coeff * x1^e1 * ... * xn^en`.
    pub fn from_term(nvars: usize, exps: Vec<u32>, coeff: BigRational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = MultiPoly::zero(nvars);
        p.insert_term(Monomial::new(exps), coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    /// The constant value if `self` is constant, else `None`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Total degree; `-1` for the zero polynomial by convention.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Degree in variable `x{index}` (1-based); `-1` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> i64 {
        assert!(index >= 1 && index <= self.nvars, "variable index");
        self.terms
            .keys()
            .map(|m| m.exps()[index - 1] as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Largest absolute value among the coefficients (zero for the zero polynomial).
    pub fn max_coeff_abs(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    fn insert_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.exps().len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_dims(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self).expect("same nvars");
        }
        out
    }

    /// Formal partial derivative with respect to `x{index}` (1-based).
    pub fn partial(&self, index: usize) -> Result<MultiPoly> {
        if index == 0 || index > self.nvars {
            return Err(Error::VarOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[index - 1];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[index - 1] = e - 1;
            out.insert_term(
                Monomial::new(exps),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &RationalPoint) -> Result<BigRational> {
        if x.coords.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: x.coords.len(),
            });
        }
        // Per-variable power tables up to the largest exponent in use.
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (v, &e) in m.exps().iter().enumerate() {
                max_exp[v] = max_exp[v].max(e);
            }
        }
        let pows: Vec<Vec<BigRational>> = (0..self.nvars)
            .map(|v| {
                let mut t = Vec::with_capacity(max_exp[v] as usize + 1);
                t.push(BigRational::one());
                for e in 1..=max_exp[v] as usize {
                    let next = &t[e - 1] * &x.coords[v];
                    t.push(next);
                }
                t
            })
            .collect();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term *= &pows[v][e as usize];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Floating-point evaluation (term sum with per-variable power tables).
    ///
    /// Hot loops should prefer [`crate::compiled::CompiledPoly`]; this is the
    /// reference implementation used for spot checks and one-off values.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars, "dimension mismatch");
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (v, &e) in m.exps().iter().enumerate() {
                max_exp[v] = max_exp[v].max(e);
            }
        }
        let pows: Vec<Vec<f64>> = (0..self.nvars)
            .map(|v| {
                let mut t = Vec::with_capacity(max_exp[v] as usize + 1);
                t.push(1.0);
                for e in 1..=max_exp[v] as usize {
                    let next = t[e - 1] * x[v];
                    t.push(next);
                }
                t
            })
            .collect();
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term *= pows[v][e as usize];
                }
            }
            acc += term;
        }
        acc
    }

    /// 1-based indices of the variables that actually occur.
    pub fn active_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    seen[v] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(v, &s)| if s { Some(v + 1) } else { None })
            .collect()
    }

    /// Squarefreeness check; see [`SquarefreeStatus`] for the three outcomes.
    ///
    /// `Verified` means the joint gcd of `p` with all of its partial
    /// derivatives is constant, which characterizes squarefreeness in
    /// characteristic zero. When the polynomial effectively involves three
    /// or more variables, the exact multivariate gcd is not attempted and
    /// the result is advisory (`Unverified`).
    pub fn squarefree_check(&self) -> SquarefreeStatus {
        if self.total_degree() <= 0 {
            return SquarefreeStatus::Verified;
        }
        if self.active_vars().len() > 2 {
            return SquarefreeStatus::Unverified;
        }
        let mut polys = vec![self.clone()];
        for i in 1..=self.nvars {
            let d = self.partial(i).expect("index in range");
            if !d.is_zero() {
                polys.push(d);
            }
        }
        match crate::gcd::joint_gcd(&polys) {
            Some(g) => {
                if g.is_constant() {
                    SquarefreeStatus::Verified
                } else {
                    SquarefreeStatus::Failed { factor: g }
                }
            }
            None => SquarefreeStatus::Unverified,
        }
    }
}

/// Outcome of [`MultiPoly::squarefree_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquarefreeStatus {
    /// Proven squarefree (joint gcd with all partials is constant).
    Verified,
    /// Not decided (the exact gcd was not attempted); callers proceed at
    /// their own risk, squarefreeness being an input precondition.
    Unverified,
    /// A repeated factor was exhibited.
    Failed { factor: MultiPoly },
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        // Descending graded-lex: leading term first.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(out, "-")?;
                }
                first = false;
            } else if neg {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let is_const = m.degree() == 0;
            let unit = mag.is_one();
            if is_const || !unit {
                write!(out, "{}", mag)?;
            }
            let mut wrote_var = false;
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_var || !unit {
                    write!(out, "*")?;
                }
                wrote_var = true;
                if e == 1 {
                    write!(out, "x{}", v + 1)?;
                } else {
                    write!(out, "x{}^{}", v + 1, e)?;
                }
            }
            Ok(())?;
        }
        Ok(())
    }
}

/// Point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    pub coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalPoint {
            coords: coords
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Parse `"19/5,-1/2"`. Decimal literals are rejected, not rationalized.
    pub fn parse(text: &str) -> Result<Self> {
        let mut coords = Vec::new();
        for piece in text.split(',') {
            let piece = piece.trim();
            coords.push(parse_rational(piece).map_err(|msg| Error::BadPointLiteral {
                text: text.to_string(),
                msg,
            })?);
        }
        if coords.is_empty() {
            return Err(Error::BadPointLiteral {
                text: text.to_string(),
                msg: "empty point".into(),
            });
        }
        Ok(RationalPoint { coords })
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(out, "{}", parts.join(","))
    }
}

fn parse_rational(text: &str) -> std::result::Result<BigRational, String> {
    if text.is_empty() {
        return Err("empty coordinate".into());
    }
    if text.contains('.') {
        return Err("decimal input rejected; use exact rationals like 19/5".into());
    }
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num_text
        .parse()
        .map_err(|_| format!("invalid integer `{}`", num_text))?;
    let den: BigInt = match den_text {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid denominator `{}`", d))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' => {
                toks.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Token::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Token::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Token::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Token::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return Err(Error::Parse {
                        pos: i,
                        msg: "decimal literals are not supported; use rationals like 3/2".into(),
                    });
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                toks.push((start, Token::Num(n)));
            }
            b'x' | b'X' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "variable must be x followed by an index, like x1".into(),
                    });
                }
                let idx: usize = text[digits_start..i].parse().map_err(|_| Error::Parse {
                    pos: digits_start,
                    msg: "variable index too large".into(),
                })?;
                toks.push((start, Token::Var(idx)));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", &text[i..].chars().next().unwrap()),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Token)],
    pos: usize,
    nvars: usize,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.text_len)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs)?;
                }
                Some(Token::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let k = rhs.as_constant().ok_or_else(|| Error::Parse {
                        pos: at,
                        msg: "division is only supported by nonzero constants".into(),
                    })?;
                    if k.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    acc = acc.scale(&k.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            let at = self.here();
            self.pos += 1;
            match self.bump() {
                Some(Token::Num(n)) => {
                    let e = n.to_u32().ok_or_else(|| Error::Parse {
                        pos: at,
                        msg: "exponent out of range".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse {
                    pos: at,
                    msg: "exponent must be a nonnegative integer".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let at = self.here();
        match self.bump().cloned() {
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse {
                        pos: at,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some(Token::Var(idx)) => MultiPoly::var(self.nvars, idx),
            Some(Token::Num(n)) => Ok(MultiPoly::constant(
                self.nvars,
                BigRational::from_integer(n),
            )),
            Some(other) => Err(Error::Parse {
                pos: at,
                msg: format!("unexpected token {:?}", other),
            }),
            None => Err(Error::Parse {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse an arithmetic expression in `x1..x{nvars}` with integer or
/// rational coefficients and operators `+ - * / ^` plus parentheses.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly> {
    if nvars == 0 {
        return Err(Error::InvalidInput("nvars must be positive".into()));
    }
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        nvars,
        text_len: text.len(),
    };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse {
            pos: p.here(),
            msg: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}

/// Largest variable index mentioned in the text (for CLI convenience when
/// `nvars` is not given explicitly).
pub fn infer_nvars(text: &str) -> Result<usize> {
    let toks = tokenize(text)?;
    let max = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Token::Var(i) => Some(*i),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    if max == 0 {
        return Err(Error::InvalidInput(
            "no variables found in polynomial text".into(),
        ));
    }
    Ok(max)
}
