//! Borel sets in `P(n, r)` and the Borel-fixed ideals they generate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::HilbertPolynomial;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::TermOrder;

/// A degree-`r` set of monomials in `x_0..x_n` closed under increasing moves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BorelSet {
    n: usize,
    r: u32,
    members: BTreeSet<Monomial>,
}

/// One stratum: members and non-members whose smallest variable is `>= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub j: usize,
    pub members: Vec<Monomial>,
    pub complement: Vec<Monomial>,
}

fn min_index_at_least(m: &Monomial, j: usize) -> bool {
    m.exponents()[..j].iter().all(|&e| e == 0)
}

fn min_index_is(m: &Monomial, j: usize) -> bool {
    min_index_at_least(m, j) && m.exponent(j) > 0
}

impl BorelSet {
    /// Validates degrees, variable count and closure under increasing moves.
    pub fn new(n: usize, r: u32, members: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let members: BTreeSet<Monomial> = members.into_iter().collect();
        for m in &members {
            if m.num_vars() != n + 1 || m.degree() != r {
                return Err(Error::NotBorel(format!(
                    "{m} is not a monomial of degree {r} in x0..x{n}"
                )));
            }
        }
        let set = BorelSet { n, r, members };
        set.check_closed()?;
        Ok(set)
    }

    /// Degree-`r` part of the ideal generated by `generators`.
    pub fn from_generators(n: usize, r: u32, generators: &[Monomial]) -> Result<Self> {
        for g in generators {
            if g.num_vars() != n + 1 {
                return Err(Error::InvalidArgument(format!(
                    "generator {g} does not live in x0..x{n}"
                )));
            }
            if g.degree() > r {
                return Err(Error::InvalidArgument(format!(
                    "generator {g} has degree {} above the truncation degree {r}",
                    g.degree()
                )));
            }
        }
        let members = monomials_of_degree(n + 1, r)
            .into_iter()
            .filter(|m| generators.iter().any(|g| g.divides(m)));
        BorelSet::new(n, r, members)
    }

    /// The `count` greatest degree-`r` monomials for `order`, if they form a
    /// Borel set.
    pub fn top_segment(n: usize, r: u32, order: &TermOrder, count: usize) -> Result<Self> {
        order.check_num_vars(n + 1)?;
        let mut all = monomials_of_degree(n + 1, r);
        if count > all.len() {
            return Err(Error::InvalidArgument(format!(
                "only {} monomials of degree {r} in {} variables",
                all.len(),
                n + 1
            )));
        }
        all.sort_by(|a, b| order.compare(b, a));
        all.truncate(count);
        BorelSet::new(n, r, all)
    }

    fn check_closed(&self) -> Result<()> {
        for m in &self.members {
            for (j, up) in m.upper_covers() {
                if !self.members.contains(&up) {
                    return Err(Error::NotBorel(format!(
                        "{m} is a member but its increasing move at index {j}, {up}, is not"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn num_vars(&self) -> usize {
        self.n + 1
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }

    /// Members, greatest first in the degree-lexicographic order.
    pub fn members(&self) -> impl DoubleEndedIterator<Item = &Monomial> + '_ {
        self.members.iter().rev()
    }

    pub(crate) fn member_set(&self) -> &BTreeSet<Monomial> {
        &self.members
    }

    /// Non-members of degree `r`, greatest first.
    pub fn complement(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = monomials_of_degree(self.num_vars(), self.r)
            .into_iter()
            .filter(|m| !self.members.contains(m))
            .collect();
        out.reverse();
        out
    }

    /// `(B_j, N_j)` for `j = 0..n-1`.
    pub fn strata(&self) -> Vec<Stratum> {
        let complement = self.complement();
        (0..self.n)
            .map(|j| Stratum {
                j,
                members: self.members().filter(|m| min_index_at_least(m, j)).cloned().collect(),
                complement: complement
                    .iter()
                    .filter(|m| min_index_at_least(m, j))
                    .cloned()
                    .collect(),
            })
            .collect()
    }

    /// `|B_j|` for `j = 0..n-1`.
    pub fn stratum_sizes(&self) -> Vec<usize> {
        (0..self.n)
            .map(|j| self.members.iter().filter(|m| min_index_at_least(m, j)).count())
            .collect()
    }

    /// `|N_j|` for `j = 0..n-1`.
    pub fn complement_stratum_sizes(&self) -> Vec<usize> {
        let complement = self.complement();
        (0..self.n)
            .map(|j| complement.iter().filter(|m| min_index_at_least(m, j)).count())
            .collect()
    }

    /// Members with smallest variable `x_j` whose every decreasing move at an
    /// index above `j` leaves the set. Greatest first.
    pub fn minimal_elements(&self, j: usize) -> Vec<Monomial> {
        self.members()
            .filter(|m| min_index_is(m, j))
            .filter(|m| {
                m.lower_covers()
                    .filter(|(i, _)| *i > j)
                    .all(|(_, down)| !self.members.contains(&down))
            })
            .cloned()
            .collect()
    }

    /// Non-members with smallest variable `x_j` whose every increasing move
    /// at an index `>= j` enters the set. Greatest first.
    pub fn maximal_elements(&self, j: usize) -> Vec<Monomial> {
        self.complement()
            .into_iter()
            .filter(|m| min_index_is(m, j))
            .filter(|m| {
                m.upper_covers()
                    .filter(|(i, _)| *i >= j)
                    .all(|(_, up)| self.members.contains(&up))
            })
            .collect()
    }

    /// Members all of whose decreasing moves leave the set.
    pub fn global_minimal_elements(&self) -> Vec<Monomial> {
        self.members()
            .filter(|m| m.lower_covers().all(|(_, down)| !self.members.contains(&down)))
            .cloned()
            .collect()
    }

    /// Non-members all of whose increasing moves enter the set.
    pub fn global_maximal_elements(&self) -> Vec<Monomial> {
        self.complement()
            .into_iter()
            .filter(|m| m.upper_covers().all(|(_, up)| self.members.contains(&up)))
            .collect()
    }

    /// The polynomial `p` with `Δ^j p(r) = |N_j|` for `j < n`.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial> {
        let sizes: Vec<BigInt> = self.complement_stratum_sizes().into_iter().map(BigInt::from).collect();
        let p = HilbertPolynomial::from_backward_differences(self.r as i64, &sizes);
        for (j, size) in sizes.iter().enumerate() {
            if p.delta(j as u32).eval(self.r as i64) != size.clone().into() {
                return Err(Error::InconsistentStrata(self.n));
            }
        }
        Ok(p)
    }

    pub fn saturate(&self) -> BorelIdeal {
        let top = self.r;
        let in_saturation = |m: &Monomial| m.homogenize_to(top).is_some_and(|h| self.members.contains(&h));
        let mut generators: Vec<Monomial> = self
            .members
            .iter()
            .map(Monomial::dehomogenize)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|m| {
                (1..=self.n).all(|i| {
                    m.exponent(i) == 0 || {
                        let mut exps = m.exponents().to_vec();
                        exps[i] -= 1;
                        !in_saturation(&Monomial::new(exps))
                    }
                })
            })
            .collect();
        sort_generators(&mut generators);
        let regularity = generators.iter().map(Monomial::degree).max().unwrap_or(0);
        BorelIdeal {
            stratum: self.clone(),
            generators,
            regularity,
        }
    }

    /// Deterministic order: compares member lists greatest first, the set
    /// holding the greater monomial sorts first.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.r.cmp(&other.r))
            .then_with(|| other.members().cmp(self.members()))
    }
}

impl fmt::Debug for BorelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.saturate())
    }
}

impl fmt::Display for BorelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.saturate())
    }
}

/// Ascending degree, greatest first within a degree.
pub fn sort_generators(generators: &mut [Monomial]) {
    generators.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
}

/// A Borel-fixed ideal given by its degree-`r` stratum, with the minimal
/// generators of its saturation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BorelIdeal {
    stratum: BorelSet,
    generators: Vec<Monomial>,
    regularity: u32,
}

impl BorelIdeal {
    /// Builds `(generators)_{>= r}`. Without `r` the truncation degree is the
    /// Gotzmann number of the Hilbert polynomial.
    pub fn from_generators(n: usize, generators: &[Monomial], r: Option<u32>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("no generators given".into()));
        }
        let top_degree = generators.iter().map(Monomial::degree).max().unwrap_or(0);
        let r = match r {
            Some(r) => r,
            None => {
                let mut saturated: Vec<Monomial> = generators.iter().map(Monomial::dehomogenize).collect();
                saturated.sort();
                saturated.dedup();
                let d = saturated.iter().map(Monomial::degree).max().unwrap_or(0).max(1);
                let p = BorelSet::from_generators(n, d, &saturated)?.hilbert_polynomial()?;
                let r = p.gotzmann_number()?;
                if r < top_degree {
                    return Err(Error::InvalidArgument(format!(
                        "Gotzmann number {r} of {p} is below the generator degree {top_degree}"
                    )));
                }
                r
            }
        };
        Ok(BorelSet::from_generators(n, r, generators)?.saturate())
    }

    pub fn stratum(&self) -> &BorelSet {
        &self.stratum
    }

    pub fn into_stratum(self) -> BorelSet {
        self.stratum
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn regularity(&self) -> u32 {
        self.regularity
    }

    pub fn n(&self) -> usize {
        self.stratum.n
    }

    pub fn r(&self) -> u32 {
        self.stratum.r
    }

    /// `x3^2, x3*x2 @ 10`, accepted back by [`parse_ideal`].
    pub fn input_form(&self) -> String {
        format!("{} @ {}", self.generator_list(), self.r())
    }

    fn generator_list(&self) -> String {
        self.generators
            .iter()
            .map(Monomial::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn record(&self) -> Result<IdealRecord> {
        Ok(IdealRecord {
            n: self.n(),
            r: self.r(),
            generators: self.generators.iter().map(Monomial::to_string).collect(),
            hilbert_polynomial: self.stratum.hilbert_polynomial()?.to_string(),
        })
    }
}

/// `(x3^2, x3*x2)_{>=10}`
impl fmt::Display for BorelIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})_{{>={}}}", self.generator_list(), self.r())
    }
}

impl fmt::Debug for BorelIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealRecord {
    pub n: usize,
    pub r: u32,
    pub generators: Vec<String>,
    pub hilbert_polynomial: String,
}

/// Parsed ideal text before the Borel check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealText {
    pub n: usize,
    pub generators: Vec<Monomial>,
    pub r: Option<u32>,
}

/// Accepts `x3^2, x3*x2 @ 10`, `(x3^2, x3*x2)_{>=10}`, `(x3^2, x3*x2)_{≥10}`
/// and the same lists without a truncation degree. Without `n` the ambient
/// dimension is the largest variable index that occurs.
pub fn parse_ideal(text: &str, n: Option<usize>) -> Result<IdealText> {
    let text = text.trim();
    let (body, r) = if let Some((body, r)) = text.split_once('@') {
        (body.trim(), Some(r.trim()))
    } else if let Some(pos) = text.rfind(")_") {
        let suffix = text[pos + 2..].trim();
        let degree = suffix
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim_start_matches(">=")
            .trim_start_matches('≥')
            .trim_start_matches("\\geqslant")
            .trim_start_matches("\\geq");
        (&text[..pos + 1], Some(degree.trim()))
    } else {
        (text, None)
    };
    let r = r
        .map(|r| {
            r.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad truncation degree {r:?}")))
        })
        .transpose()?;
    let body = body.trim();
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
    let pieces: Vec<&str> = body.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if pieces.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    let n = match n {
        Some(n) => n,
        None => pieces
            .iter()
            .map(|p| max_variable_index(p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0),
    };
    let generators = pieces
        .iter()
        .map(|p| Monomial::parse(p, n + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealText { n, generators, r })
}

fn max_variable_index(text: &str) -> Result<usize> {
    let mut best = 0;
    let mut rest = text;
    while let Some(pos) = rest.find('x') {
        rest = &rest[pos + 1..];
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        let index = digits
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("missing variable index in {text:?}")))?;
        best = best.max(index);
    }
    Ok(best)
}

impl BorelIdeal {
    /// Parses and validates, see [`parse_ideal`].
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let parsed = parse_ideal(text, n)?;
        BorelIdeal::from_generators(parsed.n, &parsed.generators, parsed.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(text: &str, n: usize) -> Monomial {
        Monomial::parse(text, n + 1).unwrap()
    }

    fn monos(text: &str, n: usize) -> Vec<Monomial> {
        text.split(',').map(|t| mono(t, n)).collect()
    }

    fn three_t_plus_five() -> BorelSet {
        let gens = monos("x3^2, x3*x2^2, x3*x2*x1, x2^4, x2^3*x1, x2^2*x1^2", 3);
        BorelSet::from_generators(3, 8, &gens).unwrap()
    }

    #[test]
    fn small_strata() {
        // x > y > z is x2 > x1 > x0
        let b = BorelSet::new(
            2,
            4,
            monos("x2^4, x2^3*x1, x2^2*x1^2, x2*x1^3, x2^3*x0, x2^2*x1*x0, x2^2*x0^2", 2),
        )
        .unwrap();
        let strata = b.strata();
        assert_eq!(strata[0].complement.len(), 8);
        assert_eq!(strata[1].complement, vec![mono("x1^4", 2)]);
        assert_eq!(b.hilbert_polynomial().unwrap(), "t+4".parse().unwrap());
    }

    #[test]
    fn full_set_has_empty_complement() {
        let all = BorelSet::new(3, 4, monomials_of_degree(4, 4)).unwrap();
        assert!(all.complement_stratum_sizes().iter().all(|&s| s == 0));
        assert!(all.hilbert_polynomial().unwrap().is_zero());
        assert_eq!(all.minimal_elements(0), vec![mono("x0^4", 3)]);
    }

    #[test]
    fn twisted_strata_and_extremes() {
        let b = three_t_plus_five();
        assert_eq!(b.complement_stratum_sizes(), vec![29, 3, 0]);
        assert_eq!(b.hilbert_polynomial().unwrap(), "3t+5".parse().unwrap());
        assert_eq!(
            b.minimal_elements(0),
            monos("x3^2*x0^6, x3*x2*x1*x0^5, x2^2*x1^2*x0^4", 3)
        );
        assert_eq!(b.minimal_elements(1), monos("x2^2*x1^6", 3));
        assert_eq!(b.minimal_elements(2), monos("x2^8", 3));
        assert_eq!(b.maximal_elements(0), monos("x3*x2*x0^6, x2^3*x0^5", 3));
        assert_eq!(b.maximal_elements(1), monos("x3*x1^7", 3));
        assert!(b.maximal_elements(2).is_empty());
    }

    #[test]
    fn rejects_non_borel() {
        let err = BorelSet::new(2, 2, monos("x1^2", 2)).unwrap_err();
        assert!(matches!(err, Error::NotBorel(_)));
        assert!(BorelSet::new(2, 2, monos("x1", 2)).is_err());
    }

    #[test]
    fn saturation_examples() {
        let b = BorelSet::from_generators(2, 5, &monos("x2^2, x2*x1^2, x1^3", 2)).unwrap();
        let sat = b.saturate();
        assert_eq!(sat.generators(), monos("x2^2, x2*x1^2, x1^3", 2).as_slice());
        assert_eq!(sat.regularity(), 3);

        let b = BorelSet::from_generators(2, 5, &monos("x2, x1^5", 2)).unwrap();
        assert_eq!(b.saturate().generators(), monos("x2, x1^5", 2).as_slice());
        assert_eq!(b.saturate().regularity(), 5);

        // lexsegment of d points
        let lex = BorelSet::from_generators(3, 6, &monos("x3, x2, x1^6", 3)).unwrap();
        assert_eq!(lex.saturate().regularity(), 6);
        assert_eq!(lex.hilbert_polynomial().unwrap(), HilbertPolynomial::constant(6));
    }

    #[test]
    fn saturation_regenerates_stratum() {
        let b = three_t_plus_five();
        let sat = b.saturate();
        assert!(sat.generators().iter().all(|g| g.exponent(0) == 0));
        assert_eq!(BorelSet::from_generators(3, 8, sat.generators()).unwrap(), b);
    }

    #[test]
    fn ideal_text_forms() {
        let a = BorelIdeal::parse("x3^2, x3*x2^2, x3*x2*x1, x2^4, x2^3*x1, x2^2*x1^2 @ 8", None).unwrap();
        let b = BorelIdeal::parse("(x3^2, x3x2^2, x3x2x1, x2^4, x2^3x1, x2^2x1^2)_{≥8}", None).unwrap();
        let c = BorelIdeal::parse("(x3^2,x3*x2^2,x3*x2*x1,x2^4,x2^3*x1,x2^2*x1^2)_{>=8}", Some(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.stratum(), &three_t_plus_five());
        assert_eq!(BorelIdeal::parse(&a.to_string(), None).unwrap(), a);
        assert_eq!(BorelIdeal::parse(&a.input_form(), None).unwrap(), a);
        assert_eq!(
            a.to_string(),
            "(x3^2, x3*x2^2, x3*x2*x1, x2^4, x2^3*x1, x2^2*x1^2)_{>=8}"
        );
    }

    #[test]
    fn default_truncation_is_gotzmann() {
        let a = BorelIdeal::parse("x3^2, x3*x2^2, x3*x2*x1, x2^4, x2^3*x1, x2^2*x1^2", None).unwrap();
        assert_eq!(a.r(), 8);
        let lex = BorelIdeal::parse("x3, x2^7, x2^6*x1^4", None).unwrap();
        assert_eq!(lex.r(), 10);
        assert_eq!(lex.stratum().hilbert_polynomial().unwrap(), "6t-5".parse().unwrap());
        assert!(BorelIdeal::parse("x2^5 @ 3", None).is_err());
        assert!(BorelIdeal::parse("x1^2 @ 3", Some(2)).is_err());
    }

    #[test]
    fn top_revlex_segment_is_points() {
        let b = BorelSet::top_segment(3, 10, &TermOrder::DegRevLex, 231).unwrap();
        assert_eq!(b.hilbert_polynomial().unwrap(), HilbertPolynomial::constant(55));
    }
}
