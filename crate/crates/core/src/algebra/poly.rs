use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// A bivariate polynomial over 𝔽₂, stored as its support: the set of
/// exponent pairs `(i, j)` of the monomials `x^i y^j` with coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    monomials: BTreeSet<(u32, u32)>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(i: u32, j: u32) -> Self {
        BivarPoly {
            monomials: BTreeSet::from([(i, j)]),
        }
    }

    /// Builds a polynomial, cancelling repeated monomials in pairs.
    pub fn from_monomials(ms: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut p = BivarPoly::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    /// A univariate polynomial in `x` from its exponents.
    pub fn from_x_exponents(es: impl IntoIterator<Item = u32>) -> Self {
        Self::from_monomials(es.into_iter().map(|i| (i, 0)))
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.monomials.iter().copied()
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        self.monomials.contains(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m.1).max()
    }

    fn toggle(&mut self, m: (u32, u32)) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    /// The coefficient of `y^j` as a set of `x` exponents.
    pub fn y_coefficient(&self, j: u32) -> BTreeSet<u32> {
        self.monomials
            .iter()
            .filter(|m| m.1 == j)
            .map(|m| m.0)
            .collect()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = BivarPoly::zero();
        for &(i1, j1) in &self.monomials {
            for &(i2, j2) in &other.monomials {
                let i = i1.checked_add(i2).ok_or(Error::ExponentOverflow)?;
                let j = j1.checked_add(j2).ok_or(Error::ExponentOverflow)?;
                out.toggle((i, j));
            }
        }
        Ok(out)
    }

    /// Squaring is the Frobenius map in characteristic 2: exponents double.
    pub fn checked_square(&self) -> Result<Self> {
        let monomials = self
            .monomials
            .iter()
            .map(|&(i, j)| {
                Ok((
                    i.checked_mul(2).ok_or(Error::ExponentOverflow)?,
                    j.checked_mul(2).ok_or(Error::ExponentOverflow)?,
                ))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(BivarPoly { monomials })
    }

    pub fn checked_pow(&self, mut e: u64) -> Result<Self> {
        let mut result = BivarPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_square()?;
            }
        }
        Ok(result)
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly {
            monomials: self
                .monomials
                .symmetric_difference(&rhs.monomials)
                .copied()
                .collect(),
        }
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: BivarPoly) -> BivarPoly {
        &self + &rhs
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    /// Panics on exponent overflow; use [`BivarPoly::checked_mul`] for
    /// untrusted input.
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        self.checked_mul(rhs).expect("exponent overflow")
    }
}

/// Canonical form: monomials sorted by descending `y` then descending `x`
/// degree, each written `x^i*y^j`, joined by ` + `.
impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ms: Vec<_> = self.monomials.iter().copied().collect();
        ms.sort_by_key(|&(i, j)| std::cmp::Reverse((j, i)));
        let terms: Vec<String> = ms
            .into_iter()
            .map(|(i, j)| {
                let mut factors = Vec::new();
                match i {
                    0 => {}
                    1 => factors.push("x".to_string()),
                    _ => factors.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => factors.push("y".to_string()),
                    _ => factors.push(format!("y^{j}")),
                }
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl std::str::FromStr for BivarPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Parses and expands a polynomial over 𝔽₂.
///
/// Grammar (whitespace ignored):
///
/// ```text
/// expr   := term ('+' term)*
/// term   := factor ('*'? factor)*
/// factor := base ('^' uint)?
/// base   := 'x' | 'y' | '0' | '1' | '(' expr ')'
/// ```
pub fn parse_poly(text: &str) -> Result<BivarPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = &acc + &self.term()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                Some(b'x' | b'y' | b'0' | b'1' | b'(') => {
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BivarPoly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            return base.checked_pow(e);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<BivarPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BivarPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BivarPoly::y())
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(BivarPoly::zero())
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(BivarPoly::one())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let e: u64 = digits.parse().map_err(|_| Error::ExponentOverflow)?;
        if e > u32::MAX as u64 {
            return Err(Error::ExponentOverflow);
        }
        Ok(e)
    }
}
