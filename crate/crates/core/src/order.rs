//! Graded term orders refining the Borel partial order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Weights `w_0 < w_1 < ... < w_n`, all positive, indexed like exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weights(Vec<u64>);

impl Weights {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if weights[0] == 0 {
            return Err(Error::InvalidWeights("w_0 must be positive".into()));
        }
        if let Some(i) = weights.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWeights(format!(
                "weights must strictly increase with the variable index (w_{} = {} >= w_{} = {})",
                i,
                weights[i],
                i + 1,
                weights[i + 1]
            )));
        }
        Ok(Weights(weights))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, m: &Monomial) -> u128 {
        self.0
            .iter()
            .zip(m.exponents())
            .map(|(&w, &e)| w as u128 * e as u128)
            .sum()
    }

    /// The ordering matrix, columns `x_n ... x_0`: the all-ones row, the weight
    /// row, then unit rows selecting `x_{n-1}, ..., x_1`.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let cols = self.0.len();
        let mut rows = vec![vec![1; cols], self.0.iter().rev().copied().collect()];
        for c in 1..cols.saturating_sub(1) {
            let mut row = vec![0; cols];
            row[c] = 1;
            rows.push(row);
        }
        rows
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    DegLex,
    DegRevLex,
    /// Matrix order: degree, then the weight row, then the unit tie-break rows.
    WeightMatrix(Weights),
}

impl TermOrder {
    pub fn weights(weights: Vec<u64>) -> Result<Self> {
        Weights::new(weights).map(TermOrder::WeightMatrix)
    }

    /// Total comparison; `Equal` only for equal monomials.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            TermOrder::DegLex => ea.iter().rev().cmp(eb.iter().rev()),
            // the smaller power of the smallest variable wins
            TermOrder::DegRevLex => eb.iter().cmp(ea.iter()),
            TermOrder::WeightMatrix(w) => {
                let top = ea.len().saturating_sub(1);
                w.dot(a)
                    .cmp(&w.dot(b))
                    .then_with(|| {
                        // unit rows x_{n-1}, ..., x_1
                        (1..top)
                            .rev()
                            .map(|i| ea[i].cmp(&eb[i]))
                            .find(|o| *o != Ordering::Equal)
                            .unwrap_or(Ordering::Equal)
                    })
                    // the square matrix is invertible, so this only separates
                    // monomials of different degree or length
                    .then_with(|| ea.iter().rev().cmp(eb.iter().rev()))
            }
        }
    }

    pub fn max<'a>(&self, items: impl IntoIterator<Item = &'a Monomial>) -> Option<&'a Monomial> {
        items.into_iter().max_by(|a, b| self.compare(a, b))
    }

    pub fn min<'a>(&self, items: impl IntoIterator<Item = &'a Monomial>) -> Option<&'a Monomial> {
        items.into_iter().min_by(|a, b| self.compare(a, b))
    }

    /// Checks that the order can be used on monomials in `num_vars` variables.
    pub fn check_num_vars(&self, num_vars: usize) -> Result<()> {
        match self {
            TermOrder::WeightMatrix(w) if w.len() != num_vars => Err(Error::InvalidWeights(format!(
                "{} weights given for {} variables",
                w.len(),
                num_vars
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::DegLex => write!(f, "deglex"),
            TermOrder::DegRevLex => write!(f, "degrevlex"),
            TermOrder::WeightMatrix(w) => write!(f, "weights={w}"),
        }
    }
}

/// `deglex | degrevlex | weights=w0,w1,...,wn`
impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "deglex" => return Ok(TermOrder::DegLex),
            "degrevlex" | "revlex" => return Ok(TermOrder::DegRevLex),
            _ => {}
        }
        let list = s
            .strip_prefix("weights=")
            .ok_or_else(|| Error::Parse(format!("unknown term order {s:?}")))?;
        let weights = list
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad weight {w:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TermOrder::weights(weights)
    }
}
