//! Exponent-vector monomials and the elementary Borel moves.
//!
//! Index 0 is the smallest variable `x0`; the variables are ordered
//! `x_n > ... > x_0`. With this layout the Borel comparison of two monomials
//! reduces to suffix sums of the exponent difference.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A monomial `x_n^a_n ... x_0^a_0` in `n + 1` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "a monomial needs at least one variable");
        let degree = exponents.iter().sum();
        Monomial {
            exps: exponents.into_boxed_slice(),
            degree,
        }
    }

    /// The constant monomial `1` in `num_vars` variables.
    pub fn one(num_vars: usize) -> Self {
        Monomial::new(vec![0; num_vars])
    }

    /// `x_index^power` in `num_vars` variables.
    pub fn var_power(num_vars: usize, index: usize, power: u32) -> Self {
        let mut exps = vec![0; num_vars];
        exps[index] = power;
        Monomial::new(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    /// Index of the largest variable, i.e. the ambient dimension `n`.
    pub fn top_index(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Smallest index `j` with `x_j` dividing the monomial. `None` for `1`.
    pub fn min_index(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    /// Largest index `j` with `x_j` dividing the monomial. `None` for `1`.
    pub fn max_index(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Elementary decreasing move `e^-_i`: one unit of `x_i` becomes `x_{i-1}`.
    pub fn move_down(&self, i: usize) -> Result<Monomial> {
        self.try_move_down(i).ok_or_else(|| Error::InadmissibleMove {
            monomial: self.to_string(),
            index: i,
        })
    }

    /// Elementary increasing move `e^+_j`: one unit of `x_j` becomes `x_{j+1}`.
    pub fn move_up(&self, j: usize) -> Result<Monomial> {
        self.try_move_up(j).ok_or_else(|| Error::InadmissibleMove {
            monomial: self.to_string(),
            index: j,
        })
    }

    pub fn try_move_down(&self, i: usize) -> Option<Monomial> {
        if i == 0 || i >= self.exps.len() || self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        exps[i - 1] += 1;
        Some(Monomial {
            exps,
            degree: self.degree,
        })
    }

    pub fn try_move_up(&self, j: usize) -> Option<Monomial> {
        if j + 1 >= self.exps.len() || self.exps[j] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        exps[j + 1] += 1;
        Some(Monomial {
            exps,
            degree: self.degree,
        })
    }

    /// All admissible decreasing moves, as `(index, image)` pairs.
    pub fn lower_covers(&self) -> impl Iterator<Item = (usize, Monomial)> + '_ {
        (1..self.exps.len()).filter_map(move |i| self.try_move_down(i).map(|m| (i, m)))
    }

    /// All admissible increasing moves, as `(index, image)` pairs.
    pub fn upper_covers(&self) -> impl Iterator<Item = (usize, Monomial)> + '_ {
        (0..self.exps.len()).filter_map(move |j| self.try_move_up(j).map(|m| (j, m)))
    }

    /// `true` iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self * x_i`.
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial {
            exps,
            degree: self.degree + 1,
        }
    }

    /// Sets `x_0 = 1`.
    pub fn dehomogenize(&self) -> Monomial {
        let mut exps = self.exps.clone();
        exps[0] = 0;
        Monomial::new(exps.into_vec())
    }

    /// Multiplies by `x_0^k` so that the result has the given degree.
    pub fn homogenize_to(&self, degree: u32) -> Option<Monomial> {
        if degree < self.degree {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[0] += degree - self.degree;
        Some(Monomial { exps, degree })
    }

    /// Returns whether `b >=_B a`: every suffix sum of `b - a` is non-negative.
    pub fn borel_leq(a: &Monomial, b: &Monomial) -> Result<bool> {
        if a.degree != b.degree || a.num_vars() != b.num_vars() {
            return Err(Error::DegreeMismatch {
                left: a.to_string(),
                left_degree: a.degree,
                right: b.to_string(),
                right_degree: b.degree,
            });
        }
        Ok(borel_leq_unchecked(a, b))
    }

    /// Parses `x3^2*x0^6`. `*` and `^1` are optional, `1` is the unit.
    pub fn parse(text: &str, num_vars: usize) -> Result<Monomial> {
        let mut exps = vec![0u32; num_vars];
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        if compact == "1" {
            return Ok(Monomial::new(exps));
        }
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let read_number = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            compact[start..*pos].parse().ok()
        };
        while pos < bytes.len() {
            if bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            if bytes[pos] != b'x' {
                return Err(Error::Parse(format!(
                    "unexpected character {:?} in monomial {text:?}",
                    bytes[pos] as char
                )));
            }
            pos += 1;
            let index = read_number(&mut pos)
                .ok_or_else(|| Error::Parse(format!("missing variable index in {text:?}")))?
                as usize;
            if index >= num_vars {
                return Err(Error::Parse(format!(
                    "variable x{index} out of range for {num_vars} variables"
                )));
            }
            let mut power = 1u64;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                power = read_number(&mut pos).ok_or_else(|| Error::Parse(format!("missing exponent in {text:?}")))?;
            }
            let power = u32::try_from(power).map_err(|_| Error::Parse(format!("exponent too large in {text:?}")))?;
            exps[index] += power;
        }
        Ok(Monomial::new(exps))
    }
}

pub(crate) fn borel_leq_unchecked(a: &Monomial, b: &Monomial) -> bool {
    let mut sigma: i64 = 0;
    for (ea, eb) in a.exps.iter().zip(b.exps.iter()).rev() {
        sigma += *eb as i64 - *ea as i64;
        if sigma < 0 {
            return false;
        }
    }
    true
}

/// Degree first, then lexicographic from the largest variable down.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.len().cmp(&other.exps.len()))
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate().rev() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All monomials of degree `degree` in `num_vars` variables, ascending in the
/// degree-lexicographic order.
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(remaining);
            // prefix is stored from the top variable down
            let exps: Vec<u32> = prefix.iter().rev().copied().collect();
            out.push(Monomial::new(exps));
            prefix.pop();
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            fill(prefix, remaining - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(num_vars), degree, num_vars, &mut out);
    out.sort();
    out
}
