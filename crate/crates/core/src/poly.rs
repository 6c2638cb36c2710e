//! Monic real polynomials and their index/gcd profile.
//!
//! A polynomial is stored highest-degree first, `p(t) = t^n + a_1 t^(n-1) + ... + a_n`.
//! The profile works in the nonnegative-form convention
//! `p(t) = t^n - c_1 t^(n-1) - ... - c_n`, so `c_k = -a_k`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest exponent accepted by the text parser.
const MAX_PARSED_DEGREE: usize = 4096;

/// A monic real polynomial of degree at least one.
#[derive(Debug, Clone)]
pub struct Polynomial {
    coeffs: Vec<f64>,
    normalized_from: Option<f64>,
}

impl PartialEq for Polynomial {
    /// Equality is on the monic coefficients only; normalization metadata is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Polynomial {
    /// Builds a polynomial from coefficients, highest degree first.
    ///
    /// A leading coefficient other than 1 is divided through and remembered,
    /// see [`Polynomial::normalized_from`].
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        let lead = coeffs[0];
        if lead == 0.0 {
            return Err(Error::ZeroLeading);
        }
        if coeffs.len() == 1 {
            return Err(Error::ZeroDegree);
        }
        if lead == 1.0 {
            return Ok(Self { coeffs, normalized_from: None });
        }
        let coeffs: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
        if let Some(&bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(Self { coeffs, normalized_from: Some(lead) })
    }

    /// `t^n + tail[0] t^(n-1) + ... + tail[n-1]`.
    pub fn monic(tail: &[f64]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(1.0);
        coeffs.extend_from_slice(tail);
        Self::from_coeffs(coeffs)
    }

    /// `t^n - c[0] t^(n-1) - ... - c[n-1]`, the nonnegative-form convention.
    pub fn from_c_values(c: &[f64]) -> Result<Self> {
        let tail: Vec<f64> = c.iter().map(|&x| if x == 0.0 { 0.0 } else { -x }).collect();
        Self::monic(&tail)
    }

    /// `t^n`.
    pub fn monomial(n: usize) -> Result<Self> {
        Self::monic(&vec![0.0; n])
    }

    /// Monic polynomial with the given real roots.
    pub fn from_real_roots(roots: &[f64]) -> Result<Self> {
        let mut coeffs = vec![1.0];
        for &r in roots {
            let mut next = coeffs.clone();
            next.push(0.0);
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] -= r * c;
            }
            coeffs = next;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All `n + 1` coefficients, highest degree first; `coeffs()[0] == 1`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `a_1, ..., a_n`.
    pub fn tail(&self) -> &[f64] {
        &self.coeffs[1..]
    }

    /// The original leading coefficient if the input was not monic.
    pub fn normalized_from(&self) -> Option<f64> {
        self.normalized_from
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        for &c in &self.coeffs {
            deriv = deriv * z + value;
            value = value * z + c;
        }
        (value, deriv)
    }

    /// Snaps tail coefficients with `|a_k| < eps` to exactly zero.
    pub fn snap_zeros(&self, eps: f64) -> Self {
        if eps <= 0.0 {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(1) {
            if c.abs() < eps {
                *c = 0.0;
            }
        }
        Self { coeffs, normalized_from: self.normalized_from }
    }

    /// Number of exact trailing zero coefficients, i.e. the multiplicity of the root 0.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|&&c| c == 0.0).count()
    }

    /// `p(t) / t^m` with `m` the zero-root multiplicity; `None` when `p = t^n`.
    pub fn without_zero_roots(&self) -> Option<Self> {
        let m = self.zero_root_multiplicity();
        if m == self.degree() {
            return None;
        }
        Some(Self {
            coeffs: self.coeffs[..self.coeffs.len() - m].to_vec(),
            normalized_from: None,
        })
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form, e.g. `t^3 - 2 t^2 - t + 2`. Round-trips exactly through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "{}", monomial_text(n))?;
        for (k, &a) in self.tail().iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let power = n - k - 1;
            let sign = if a < 0.0 { '-' } else { '+' };
            let mag = a.abs();
            if power == 0 {
                write!(f, " {sign} {mag}")?;
            } else if mag == 1.0 {
                write!(f, " {sign} {}", monomial_text(power))?;
            } else {
                write!(f, " {sign} {mag} {}", monomial_text(power))?;
            }
        }
        Ok(())
    }
}

fn monomial_text(power: usize) -> String {
    match power {
        0 => "1".to_string(),
        1 => "t".to_string(),
        _ => format!("t^{power}"),
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Parses either an expression such as `t^3 - 2t^2 - t + 2` or a
/// comma-separated coefficient list (highest degree first).
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    if text.contains(',') {
        parse_coefficient_list(text)
    } else {
        parse_expression(text)
    }
}

fn parse_coefficient_list(text: &str) -> Result<Polynomial> {
    let coeffs = text
        .split(',')
        .map(|piece| {
            let piece = piece.trim();
            piece
                .parse::<f64>()
                .map_err(|_| Error::Malformed(format!("bad coefficient {piece:?}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    Polynomial::from_coeffs(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token {
    Number(f64),
    Var(char),
    Caret,
    Plus,
    Minus,
    Star,
    LBrace,
    RBrace,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '{' => {
                tokens.push(Token::LBrace);
                i += 1;
            }
            '}' => {
                tokens.push(Token::RBrace);
                i += 1;
            }
            _ if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // exponent part only when digits follow, so `2e^2` still reads `e` as the variable
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let literal: String = chars[start..i].iter().collect();
                let value = literal
                    .parse::<f64>()
                    .map_err(|_| Error::Malformed(format!("bad number {literal:?}")))?;
                if !value.is_finite() {
                    return Err(Error::NonFinite(value));
                }
                tokens.push(Token::Number(value));
            }
            _ if c.is_alphabetic() => {
                tokens.push(Token::Var(c));
                i += 1;
            }
            _ => return Err(Error::Malformed(format!("unexpected character {c:?}"))),
        }
    }
    Ok(tokens)
}

fn parse_expression(text: &str) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let mut variable: Option<char> = None;
    let mut by_power: Vec<f64> = Vec::new();
    let mut first = true;

    while pos < tokens.len() {
        let mut sign = 1.0;
        match tokens[pos] {
            Token::Plus => pos += 1,
            Token::Minus => {
                sign = -1.0;
                pos += 1;
            }
            _ if first => {}
            other => return Err(Error::Malformed(format!("expected + or -, found {other:?}"))),
        }
        first = false;

        let mut coef = None;
        if let Some(Token::Number(v)) = tokens.get(pos) {
            coef = Some(*v);
            pos += 1;
        }
        let mut star = false;
        if coef.is_some() && tokens.get(pos) == Some(&Token::Star) {
            star = true;
            pos += 1;
        }
        let mut power = 0usize;
        if let Some(Token::Var(v)) = tokens.get(pos) {
            match variable {
                None => variable = Some(*v),
                Some(existing) if existing != *v => {
                    return Err(Error::Malformed(format!(
                        "mixed variables {existing:?} and {v:?}"
                    )))
                }
                _ => {}
            }
            pos += 1;
            power = 1;
            if tokens.get(pos) == Some(&Token::Caret) {
                pos += 1;
                power = parse_exponent(&tokens, &mut pos)?;
            }
        } else if star || coef.is_none() {
            return Err(Error::Malformed("expected a term".into()));
        }
        if power > MAX_PARSED_DEGREE {
            return Err(Error::Malformed(format!("exponent {power} too large")));
        }
        if by_power.len() <= power {
            by_power.resize(power + 1, 0.0);
        }
        by_power[power] += sign * coef.unwrap_or(1.0);
    }

    let degree = match by_power.iter().rposition(|&c| c != 0.0) {
        Some(0) | None => return Err(Error::ZeroDegree),
        Some(d) => d,
    };
    let coeffs: Vec<f64> = by_power[..=degree].iter().rev().copied().collect();
    Polynomial::from_coeffs(coeffs)
}

fn parse_exponent(tokens: &[Token], pos: &mut usize) -> Result<usize> {
    let braced = tokens.get(*pos) == Some(&Token::LBrace);
    if braced {
        *pos += 1;
    }
    let power = match tokens.get(*pos) {
        Some(Token::Number(v)) if v.fract() == 0.0 && *v >= 0.0 => *v as usize,
        other => return Err(Error::Malformed(format!("bad exponent {other:?}"))),
    };
    *pos += 1;
    if braced {
        if tokens.get(*pos) != Some(&Token::RBrace) {
            return Err(Error::Malformed("unclosed exponent brace".into()));
        }
        *pos += 1;
    }
    Ok(power)
}

/// Greatest common divisor with `gcd(0, x) = x`.
pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The index/gcd profile of a polynomial in the `c_k = -a_k` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexProfile {
    /// `c_1, ..., c_n`.
    pub c_values: Vec<f64>,
    /// Every `c_k >= 0`.
    pub nonneg_form: bool,
    /// Sorted indices `k` (1-based) with `c_k != 0`.
    pub index_set: Vec<usize>,
    /// gcd of the index set, 0 when it is empty.
    pub d: usize,
    /// Largest `k` with `c_k != 0`, or 0.
    pub ell: usize,
}

pub fn index_profile(p: &Polynomial) -> IndexProfile {
    let c_values: Vec<f64> = p.tail().iter().map(|&a| if a == 0.0 { 0.0 } else { -a }).collect();
    let index_set: Vec<usize> = c_values
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0.0)
        .map(|(k, _)| k + 1)
        .collect();
    let d = index_set.iter().fold(0, |acc, &k| gcd(acc, k));
    let ell = index_set.last().copied().unwrap_or(0);
    let nonneg_form = c_values.iter().all(|&c| c >= 0.0);
    IndexProfile { c_values, nonneg_form, index_set, d, ell }
}

/// `q(t) = s^(-n) p(s t)`; the roots of `q` are those of `p` divided by `s`.
pub fn scale_substitution(p: &Polynomial, s: f64) -> Result<Polynomial> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::NonPositiveScale(s));
    }
    let tail: Vec<f64> = p
        .tail()
        .iter()
        .enumerate()
        .map(|(k, &a)| a / s.powi(k as i32 + 1))
        .collect();
    Polynomial::monic(&tail)
}
