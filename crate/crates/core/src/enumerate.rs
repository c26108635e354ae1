//! All Borel sets with a given Hilbert polynomial.
//!
//! The complement `N` is built one stratum at a time, from `j = n-1` down to
//! `0`. The new part of `N_j` lives in the monomials whose smallest variable
//! is exactly `x_j`; it has to be a down-set for the moves at indices above
//! `j`, contain the images of `N_{j+1}` under the move at `j+1`, and have the
//! size prescribed by the differences of `p` at `r`.

use std::collections::{BTreeSet, HashMap, HashSet};

use num::{BigInt, ToPrimitive};
use rayon::prelude::*;

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::hilbert::HilbertPolynomial;
use crate::monomial::{monomials_of_degree, Monomial};

type Bits = Vec<u64>;

fn bit(set: &Bits, i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut Bits, i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

/// Monomials with smallest variable `x_j`, and for each the positions of its
/// decreasing moves at indices above `j`.
struct Layer {
    items: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
    lower: Vec<Vec<usize>>,
}

impl Layer {
    fn new(num_vars: usize, r: u32, j: usize) -> Self {
        let items: Vec<Monomial> = monomials_of_degree(num_vars, r)
            .into_iter()
            .filter(|m| m.min_index() == Some(j))
            .collect();
        let position: HashMap<Monomial, usize> = items.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let lower = items
            .iter()
            .map(|m| {
                m.lower_covers()
                    .filter(|(i, _)| *i > j)
                    .map(|(_, down)| position[&down])
                    .collect()
            })
            .collect();
        Layer { items, position, lower }
    }

    fn words(&self) -> usize {
        self.items.len().div_ceil(64).max(1)
    }

    fn close(&self, seeds: impl IntoIterator<Item = usize>) -> Bits {
        let mut set = vec![0; self.words()];
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(i) = stack.pop() {
            if bit(&set, i) {
                continue;
            }
            set_bit(&mut set, i);
            stack.extend(self.lower[i].iter().copied());
        }
        set
    }

    /// All down-sets of the given size containing `base`.
    fn down_sets_over(&self, base: Bits, size: usize) -> Vec<Bits> {
        let base_size: usize = base.iter().map(|w| w.count_ones() as usize).sum();
        if base_size > size {
            return Vec::new();
        }
        let mut level: HashSet<Bits> = HashSet::from([base]);
        for _ in base_size..size {
            let mut next = HashSet::new();
            for set in &level {
                for e in 0..self.items.len() {
                    if !bit(set, e) && self.lower[e].iter().all(|&d| bit(set, d)) {
                        let mut grown = set.clone();
                        set_bit(&mut grown, e);
                        next.insert(grown);
                    }
                }
            }
            level = next;
        }
        level.into_iter().collect()
    }
}

/// Every Borel set `B` in `P(n, r)`, `r` the Gotzmann number of `p`, with
/// `|N_j| = Δ^j p(r)`. The lexsegment comes first.
pub fn enumerate_ideals(n: usize, p: &HilbertPolynomial) -> Result<Vec<BorelSet>> {
    if p.degree() >= n as i64 {
        return Err(Error::DegreeTooLarge {
            poly: p.to_string(),
            degree: p.degree(),
            n,
        });
    }
    let r = p.gotzmann_number()?;
    let diffs: Vec<BigInt> = (0..=n).map(|j| p.delta(j as u32).eval(r as i64).to_integer()).collect();
    let mut sizes = Vec::with_capacity(n);
    for j in 0..n {
        match (&diffs[j] - &diffs[j + 1]).to_usize() {
            Some(s) => sizes.push(s),
            None => return Ok(Vec::new()),
        }
    }

    let num_vars = n + 1;
    // partial complements N_{j+1}, as monomial lists
    let mut partial: Vec<Vec<Monomial>> = vec![Vec::new()];
    for j in (0..n).rev() {
        let layer = Layer::new(num_vars, r, j);
        partial = partial
            .par_iter()
            .map(|upper| {
                let seeds = upper
                    .iter()
                    .filter(|m| m.min_index() == Some(j + 1))
                    .map(|m| layer.position[&m.try_move_down(j + 1).expect("x_{j+1} divides m")]);
                let required = layer.close(seeds);
                layer
                    .down_sets_over(required, sizes[j])
                    .into_iter()
                    .map(|chosen| {
                        let mut grown = upper.clone();
                        grown.extend(
                            (0..layer.items.len())
                                .filter(|&i| bit(&chosen, i))
                                .map(|i| layer.items[i].clone()),
                        );
                        grown
                    })
                    .collect::<Vec<_>>()
            })
            .flatten()
            .collect();
        if partial.is_empty() {
            return Ok(Vec::new());
        }
    }

    let all = monomials_of_degree(num_vars, r);
    let mut out = partial
        .into_par_iter()
        .map(|complement| {
            let complement: HashSet<Monomial> = complement.into_iter().collect();
            let members: BTreeSet<Monomial> = all.iter().filter(|m| !complement.contains(*m)).cloned().collect();
            BorelSet::new(n, r, members)
                .map_err(|e| Error::Invariant(format!("enumeration produced a non-Borel set: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}
