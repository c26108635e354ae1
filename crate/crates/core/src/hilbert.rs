//! Integer-valued univariate polynomials in `t`, finite differences and
//! Gotzmann decompositions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Power-basis coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
}

/// Exact binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        HilbertPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_rationals(vec![BigRational::from_integer(c.into())])
    }

    /// `t`
    pub fn t() -> Self {
        Self::from_integers(&[0, 1])
    }

    /// Coefficients lowest degree first.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_rationals(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_rationals(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// `C(t + shift, k)` as a polynomial in `t`.
    pub fn binomial_in_t(shift: i64, k: u32) -> Self {
        let mut acc = Self::constant(1);
        let mut denom = BigInt::one();
        for i in 0..k as i64 {
            acc = &acc * &Self::from_integers(&[shift - i, 1]);
            denom *= BigInt::from(i + 1);
        }
        acc.scale(&BigRational::from_integer(denom).recip())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_rationals(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(t.into());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    /// The value at `t` when it is an integer.
    pub fn eval_integer(&self, t: i64) -> Option<BigInt> {
        let v = self.eval(t);
        v.is_integer().then(|| v.to_integer())
    }

    /// `p(t + s)`
    pub fn shift(&self, s: i64) -> Self {
        let step = Self::from_integers(&[s, 1]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &step) + &Self::from_rationals(vec![c.clone()])
        })
    }

    /// `Δ^m p`, with `Δp(t) = p(t) - p(t-1)`.
    pub fn delta(&self, m: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..m {
            if p.is_zero() {
                break;
            }
            p = &p - &p.shift(-1);
        }
        p
    }

    /// True when the values at `0..=deg+1` are integers, which forces all
    /// integer values.
    pub fn is_integer_valued(&self) -> bool {
        (0..=self.degree() + 1).all(|t| self.eval(t).is_integer())
    }

    /// The exponents `a_1 >= ... >= a_r` of the decomposition
    /// `p(t) = sum_i C(t + a_i - i + 1, a_i)`.
    pub fn gotzmann_decomposition(&self) -> Result<Vec<u32>> {
        let fail = || Error::NotAdmissible(self.to_string());
        let mut rest = self.clone();
        let mut a = Vec::new();
        while !rest.is_zero() {
            let d = rest.degree();
            let lc = rest.leading_coefficient();
            if !lc.is_positive() {
                return Err(fail());
            }
            if d == 0 {
                if !lc.is_integer() {
                    return Err(fail());
                }
                let count = lc.to_integer().to_usize().ok_or_else(fail)?;
                a.resize(a.len() + count, 0);
                break;
            }
            let i = a.len() as i64 + 1;
            rest = &rest - &Self::binomial_in_t(d - i + 1, d as u32);
            a.push(d as u32);
        }
        Ok(a)
    }

    pub fn gotzmann_number(&self) -> Result<u32> {
        Ok(self.gotzmann_decomposition()?.len() as u32)
    }

    /// `q(t) = C(n + t, n) - p(t)`.
    pub fn complement(&self, n: usize, t: u32) -> Result<BigInt> {
        let p = self
            .eval_integer(t as i64)
            .ok_or_else(|| Error::NotAdmissible(self.to_string()))?;
        Ok(binomial(n as u64 + t as u64, n as u64) - p)
    }

    /// Recovers `p` from `values[j] = Δ^j p(r)` (Newton backward form).
    pub fn from_backward_differences(r: i64, values: &[BigInt]) -> Self {
        values.iter().enumerate().fold(Self::zero(), |acc, (j, v)| {
            let term = Self::binomial_in_t(j as i64 - 1 - r, j as u32).scale(&BigRational::from_integer(v.clone()));
            &acc + &term
        })
    }
}

impl Add for &HilbertPolynomial {
    type Output = HilbertPolynomial;

    fn add(self, rhs: Self) -> HilbertPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        HilbertPolynomial::from_rationals(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &HilbertPolynomial {
    type Output = HilbertPolynomial;

    fn neg(self) -> HilbertPolynomial {
        HilbertPolynomial::from_rationals(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &HilbertPolynomial {
    type Output = HilbertPolynomial;

    fn sub(self, rhs: Self) -> HilbertPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &HilbertPolynomial {
    type Output = HilbertPolynomial;

    fn mul(self, rhs: Self) -> HilbertPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return HilbertPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HilbertPolynomial::from_rationals(out)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let abs = c.abs();
            let shown = if abs.is_integer() {
                abs.to_integer().to_string()
            } else {
                format!("({abs})")
            };
            match k {
                0 => write!(f, "{shown}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{shown}")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Integer coefficients only: `6t-5`, `8`, `t^2+3t+1`, `-t + 4`.
impl FromStr for HilbertPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("polynomial {s:?}: {why}"));
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut coeffs: Vec<i64> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1i64, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coeff, power) = match body.find('t') {
                None => (body, 0usize),
                Some(pos) => {
                    let power = match &body[pos + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| bad("bad exponent"))?,
                    };
                    (body[..pos].trim_end_matches('*'), power)
                }
            };
            let value: i64 = if coeff.is_empty() && power > 0 {
                1
            } else {
                coeff.parse().map_err(|_| bad("bad coefficient"))?
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] += sign * value;
        }
        Ok(HilbertPolynomial::from_integers(&coeffs))
    }
}
