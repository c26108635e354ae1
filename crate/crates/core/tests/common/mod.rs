#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use num::BigInt;

use borel_core::{BorelIdeal, BorelSet, HilbertPolynomial, Monomial};

pub fn hp(text: &str) -> HilbertPolynomial {
    text.parse().unwrap()
}

pub fn set(text: &str) -> BorelSet {
    BorelIdeal::parse(text, None).unwrap().into_stratum()
}

pub fn set_in(text: &str, n: usize) -> BorelSet {
    BorelIdeal::parse(text, Some(n)).unwrap().into_stratum()
}

pub fn mono(text: &str, num_vars: usize) -> Monomial {
    Monomial::parse(text, num_vars).unwrap()
}

/// Position of the ideal with the given generators among `sets`.
pub fn position(sets: &[BorelSet], text: &str) -> usize {
    let n = sets[0].n();
    let target = BorelIdeal::parse(text, Some(n)).unwrap().into_stratum();
    sets.iter()
        .position(|b| *b == target)
        .unwrap_or_else(|| panic!("{text} is not among the enumerated ideals"))
}

/// Maps reference labels (1-based) to enumeration positions.
pub fn labelled(sets: &[BorelSet], reference: &[&str]) -> Vec<usize> {
    reference.iter().map(|text| position(sets, text)).collect()
}

pub const SCHEME_6T_5: [&str; 11] = [
    "x3, x2^7, x2^6*x1^4 @ 10",
    "x3, x2^8, x2^7*x1, x2^6*x1^3 @ 10",
    "x3^2, x3*x2, x3*x1, x2^7, x2^6*x1^3 @ 10",
    "x3^2, x3*x2, x3*x1, x2^8, x2^7*x1, x2^6*x1^2 @ 10",
    "x3^2, x3*x2, x3*x1^2, x2^7, x2^6*x1^2 @ 10",
    "x3^2, x3*x2, x3*x1^3, x2^7, x2^6*x1 @ 10",
    "x3^2, x3*x2^2, x3*x2*x1, x3*x1^2, x2^7, x2^6*x1 @ 10",
    "x3^2, x3*x2, x3*x1^4, x2^6 @ 10",
    "x3^2, x3*x2^2, x3*x2*x1, x3*x1^3, x2^6 @ 10",
    "x3^3, x3^2*x2, x3*x2^2, x3^2*x1, x3*x2*x1, x3*x1^2, x2^6 @ 10",
    "x3^2, x3*x2, x2^5 @ 10",
];

pub const SCHEME_8: [&str; 12] = [
    "x3, x2, x1^8 @ 8",
    "x3, x2^2, x2*x1, x1^7 @ 8",
    "x3, x2^2, x2*x1^2, x1^6 @ 8",
    "x3^2, x3*x2, x2^2, x3*x1, x2*x1, x1^6 @ 8",
    "x3, x2^2, x2*x1^3, x1^5 @ 8",
    "x3, x2^3, x2^2*x1, x2*x1^2, x1^5 @ 8",
    "x3^2, x3*x2, x2^2, x3*x1, x2*x1^2, x1^5 @ 8",
    "x3, x2^3, x2^2*x1, x2*x1^3, x1^4 @ 8",
    "x3^2, x3*x2, x2^2, x3*x1, x2*x1^3, x1^4 @ 8",
    "x3^2, x3*x2, x3*x1, x2^3, x2^2*x1, x2*x1^2, x1^4 @ 8",
    "x3^2, x3*x2, x2^2, x3*x1^2, x2*x1^2, x1^4 @ 8",
    "x3^2, x3*x2, x2^3, x2^2*x1, x3*x1^2, x2*x1^2, x1^3 @ 8",
];

pub const SCHEME_4T_1: [&str; 12] = [
    "x4, x3, x2^5, x2^4*x1^3 @ 7",
    "x4, x3, x2^6, x2^5*x1, x2^4*x1^2 @ 7",
    "x4, x3^2, x3*x2, x3*x1, x2^5, x2^4*x1^2 @ 7",
    "x4, x3^2, x3*x2, x3*x1^2, x2^5, x2^4*x1 @ 7",
    "x4^2, x4*x3, x3^2, x4*x2, x3*x2, x4*x1, x3*x1, x2^5, x2^4*x1 @ 7",
    "x4, x3^2, x3*x2, x2^4, x3*x1^3 @ 7",
    "x4, x3^2, x3*x2^2, x3*x2*x1, x3*x1^2, x2^4 @ 7",
    "x4^2, x4*x3, x3^2, x4*x2, x3*x2, x4*x1, x3*x1^2, x2^4 @ 7",
    "x4, x3^2, x3*x2, x2^4, x2^3*x1 @ 7",
    "x4, x3^2, x3*x2^2, x2^3, x3*x2*x1 @ 7",
    "x4^2, x4*x3, x3^2, x4*x2, x3*x2, x4*x1, x2^3 @ 7",
    "x4^2, x4*x3, x3^2, x4*x2, x3*x2, x2^2 @ 7",
];

pub const FIVE_SWAPS: &str = "x3^2, x3*x2^2, x3*x2*x1, x2^4, x2^3*x1, x2^2*x1^2 @ 8";

/// Exponent vectors of degree `d` in `num_vars` variables.
pub fn exponent_vectors(num_vars: usize, d: u32) -> Vec<Vec<u32>> {
    if num_vars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponent_vectors(num_vars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Raw decreasing moves `x_i -> x_{i-1}` on exponent vectors.
fn decreasing_moves(e: &[u32]) -> Vec<Vec<u32>> {
    (1..e.len())
        .filter(|&i| e[i] > 0)
        .map(|i| {
            let mut f = e.to_vec();
            f[i] -= 1;
            f[i - 1] += 1;
            f
        })
        .collect()
}

fn increasing_moves(e: &[u32]) -> Vec<Vec<u32>> {
    (0..e.len() - 1)
        .filter(|&i| e[i] > 0)
        .map(|i| {
            let mut f = e.to_vec();
            f[i] -= 1;
            f[i + 1] += 1;
            f
        })
        .collect()
}

/// Pairs `(hi, lo)` such that `lo` is reached from `hi` by decreasing moves.
pub fn decreasing_closure(monomials: &[Vec<u32>]) -> HashSet<(usize, usize)> {
    let index: HashMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = HashSet::new();
    for (start, m) in monomials.iter().enumerate() {
        let mut stack = vec![m.clone()];
        let mut seen = HashSet::from([m.clone()]);
        while let Some(e) = stack.pop() {
            out.insert((start, index[&e]));
            for f in decreasing_moves(&e) {
                if seen.insert(f.clone()) {
                    stack.push(f);
                }
            }
        }
    }
    out
}

/// Number of degree `t` monomials not divisible by any monomial of `members`.
pub fn quotient_dimension(members: &[Vec<u32>], num_vars: usize, t: u32) -> usize {
    exponent_vectors(num_vars, t)
        .iter()
        .filter(|m| !members.iter().any(|g| g.iter().zip(m.iter()).all(|(a, b)| a <= b)))
        .count()
}

pub fn member_vectors(b: &BorelSet) -> BTreeSet<Vec<u32>> {
    b.members().map(|m| m.exponents().to_vec()).collect()
}

/// All Borel subsets of `P(n, r)` by exhaustive bitmask filter whose
/// quotient has dimension `p(r)` and `p(r + 1)` in degrees `r` and `r + 1`.
pub fn borel_subsets_by_bitmask(n: usize, r: u32, p: &HilbertPolynomial) -> BTreeSet<BTreeSet<Vec<u32>>> {
    let num_vars = n + 1;
    let monomials = exponent_vectors(num_vars, r);
    assert!(monomials.len() <= 24, "bitmask search is limited to small posets");
    let index: HashMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let up: Vec<u32> = monomials
        .iter()
        .map(|m| increasing_moves(m).iter().fold(0u32, |acc, f| acc | 1 << index[f]))
        .collect();
    let want_r = p.eval_integer(r as i64).unwrap();
    let want_next = p.eval_integer(r as i64 + 1).unwrap();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << monomials.len()) {
        let closed = (0..monomials.len()).all(|i| mask >> i & 1 == 0 || mask & up[i] == up[i]);
        if !closed {
            continue;
        }
        let members: Vec<Vec<u32>> = (0..monomials.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| monomials[i].clone())
            .collect();
        if BigInt::from(quotient_dimension(&members, num_vars, r)) == want_r
            && BigInt::from(quotient_dimension(&members, num_vars, r + 1)) == want_next
        {
            out.insert(members.into_iter().collect());
        }
    }
    out
}

/// All Borel sets in `P(n, r)` whose complement has `size` elements, by
/// growing complements one downward-closed step at a time.
pub fn borel_subsets_by_complement(n: usize, r: u32, size: usize) -> BTreeSet<BTreeSet<Vec<u32>>> {
    let num_vars = n + 1;
    let monomials = exponent_vectors(num_vars, r);
    let mut level: HashSet<BTreeSet<Vec<u32>>> = HashSet::from([BTreeSet::new()]);
    for _ in 0..size {
        let mut next = HashSet::new();
        for complement in &level {
            for m in &monomials {
                if complement.contains(m) {
                    continue;
                }
                if decreasing_moves(m).iter().all(|f| complement.contains(f)) {
                    let mut grown = complement.clone();
                    grown.insert(m.clone());
                    next.insert(grown);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|complement| monomials.iter().filter(|m| !complement.contains(*m)).cloned().collect())
        .collect()
}

/// Admissible polynomials of degree below `n` with Gotzmann number at most `max_r`.
pub fn small_polynomials(n: usize, max_r: u32) -> Vec<HilbertPolynomial> {
    let mut out = Vec::new();
    for lead in 0..=max_r as i64 {
        for constant in -20..=20i64 {
            let coeffs: Vec<i64> = if n >= 2 && lead > 0 {
                vec![constant, lead]
            } else {
                vec![constant]
            };
            if lead > 0 && coeffs.len() == 1 {
                continue;
            }
            let p = HilbertPolynomial::from_integers(&coeffs);
            if p.gotzmann_number().is_ok_and(|r| r >= 1 && r <= max_r) && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}
