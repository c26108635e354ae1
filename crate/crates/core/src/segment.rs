//! Segment certificates: integer weights whose matrix order puts every member
//! of a Borel set above every non-member.

use std::cmp::Ordering;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::order::{TermOrder, Weights};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentCertificate {
    /// `w_0 < w_1 < ... < w_n`
    pub weights: Vec<u64>,
    pub verified: bool,
}

impl SegmentCertificate {
    pub fn order(&self) -> Result<TermOrder> {
        TermOrder::weights(self.weights.clone())
    }
}

/// Solves `w_0 >= 1`, `w_{i+1} - w_i >= 1`, `w.(alpha - beta) >= 1` over the
/// minimal members `alpha` and maximal non-members `beta`, minimizing the sum
/// of the weights. `None` when the system is infeasible.
pub fn find_segment_order(b: &BorelSet) -> Result<Option<SegmentCertificate>> {
    let cols = b.num_vars();
    let int = |v: i64| BigRational::from_integer(v.into());
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut unit = vec![int(0); cols];
    unit[0] = int(1);
    rows.push(unit);
    for i in 0..cols - 1 {
        let mut row = vec![int(0); cols];
        row[i] = int(-1);
        row[i + 1] = int(1);
        rows.push(row);
    }
    let maximal = b.global_maximal_elements();
    for alpha in b.global_minimal_elements() {
        for beta in &maximal {
            rows.push(
                alpha
                    .exponents()
                    .iter()
                    .zip(beta.exponents())
                    .map(|(&a, &c)| int(a as i64 - c as i64))
                    .collect(),
            );
        }
    }
    let rhs = vec![int(1); rows.len()];
    let cost = vec![int(1); cols];
    let Some(solution) = simplex::minimize(&cost, &rows, &rhs) else {
        return Ok(None);
    };

    let lcm = solution.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = solution
        .iter()
        .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let weights = scaled
        .iter()
        .map(|v| {
            (v / &gcd)
                .to_u64()
                .ok_or_else(|| Error::InvalidWeights(format!("weight {v} does not fit in 64 bits")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cert = SegmentCertificate {
        weights,
        verified: false,
    };
    cert.verified = verify_certificate(b, &cert);
    if !cert.verified {
        return Err(Error::Invariant(format!(
            "weights {:?} solve the reduced system but do not separate the set",
            cert.weights
        )));
    }
    Ok(Some(cert))
}

/// Every member is greater than every non-member in the matrix order of the
/// weights. Invalid weights are rejected.
pub fn verify_certificate(b: &BorelSet, cert: &SegmentCertificate) -> bool {
    let Ok(weights) = Weights::new(cert.weights.clone()) else {
        return false;
    };
    if weights.len() != b.num_vars() {
        return false;
    }
    let order = TermOrder::WeightMatrix(weights);
    let complement = b.complement();
    b.members()
        .all(|a| complement.iter().all(|c| order.compare(a, c) == Ordering::Greater))
}

mod simplex {
    //! Dense two-phase simplex over the rationals with Bland's rule.

    use super::*;

    struct Tableau {
        /// `rows x (vars + 1)`, last column is the right-hand side
        t: Vec<Vec<BigRational>>,
        basis: Vec<usize>,
        vars: usize,
    }

    impl Tableau {
        fn rhs(&self, i: usize) -> &BigRational {
            &self.t[i][self.vars]
        }

        fn reduced_costs(&self, cost: &[BigRational]) -> Vec<BigRational> {
            (0..self.vars)
                .map(|j| {
                    let mut d = cost[j].clone();
                    for (i, &bi) in self.basis.iter().enumerate() {
                        if !cost[bi].is_zero() {
                            d -= &cost[bi] * &self.t[i][j];
                        }
                    }
                    d
                })
                .collect()
        }

        fn pivot(&mut self, row: usize, col: usize) {
            let p = self.t[row][col].clone();
            for x in self.t[row].iter_mut() {
                *x /= &p;
            }
            let pivot_row = self.t[row].clone();
            for (i, r) in self.t.iter_mut().enumerate() {
                if i == row || r[col].is_zero() {
                    continue;
                }
                let f = r[col].clone();
                for (x, pv) in r.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *x -= &f * pv;
                    }
                }
            }
            self.basis[row] = col;
        }

        /// Runs to optimality over the allowed columns. `false` if unbounded.
        fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
            loop {
                let d = self.reduced_costs(cost);
                let Some(col) = (0..allowed).find(|&j| d[j].is_negative()) else {
                    return true;
                };
                let mut best: Option<(BigRational, usize)> = None;
                for i in 0..self.t.len() {
                    if !self.t[i][col].is_positive() {
                        continue;
                    }
                    let ratio = self.rhs(i) / &self.t[i][col];
                    let better = match &best {
                        None => true,
                        Some((r, bi)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
                let Some((_, row)) = best else {
                    return false;
                };
                self.pivot(row, col);
            }
        }
    }

    /// Minimizes `cost . x` subject to `a x >= b`, `x >= 0`, with `b >= 0`.
    pub(super) fn minimize(
        cost: &[BigRational],
        a: &[Vec<BigRational>],
        b: &[BigRational],
    ) -> Option<Vec<BigRational>> {
        let m = a.len();
        let nx = cost.len();
        // columns: x, surplus, artificial
        let vars = nx + 2 * m;
        let mut t = Vec::with_capacity(m);
        for (i, row) in a.iter().enumerate() {
            let mut r = vec![BigRational::zero(); vars + 1];
            r[..nx].clone_from_slice(row);
            r[nx + i] = -BigRational::one();
            r[nx + m + i] = BigRational::one();
            r[vars] = b[i].clone();
            t.push(r);
        }
        let mut tab = Tableau {
            t,
            basis: (nx + m..nx + 2 * m).collect(),
            vars,
        };

        let mut phase1 = vec![BigRational::zero(); vars];
        for c in phase1.iter_mut().skip(nx + m) {
            *c = BigRational::one();
        }
        tab.optimize(&phase1, vars);
        let infeasibility: BigRational = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &bi)| bi >= nx + m)
            .map(|(i, _)| tab.rhs(i).clone())
            .sum();
        if infeasibility.is_positive() {
            return None;
        }

        // drive remaining artificial variables out of the basis
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= nx + m {
                match (0..nx + m).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }

        let mut phase2 = vec![BigRational::zero(); vars];
        phase2[..nx].clone_from_slice(cost);
        if !tab.optimize(&phase2, nx + m) {
            return None;
        }
        let mut x = vec![BigRational::zero(); nx];
        for (i, &bi) in tab.basis.iter().enumerate() {
            if bi < nx {
                x[bi] = tab.rhs(i).clone();
            }
        }
        Some(x)
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::BorelIdeal;
    use crate::hilbert::HilbertPolynomial;

    fn set(text: &str) -> BorelSet {
        BorelIdeal::parse(text, None).unwrap().into_stratum()
    }

    #[test]
    fn known_certificates_verify() {
        let i5 = set("x3^2, x3*x2, x3*x1^2, x2^7, x2^6*x1^2 @ 10");
        let cert = SegmentCertificate {
            weights: vec![1, 2, 5, 25],
            verified: false,
        };
        assert!(verify_certificate(&i5, &cert));
        let found = find_segment_order(&i5).unwrap().unwrap();
        assert!(found.verified);
        assert!(verify_certificate(&i5, &found));

        let j7 = set("x3^2, x3*x2, x2^2, x3*x1, x2*x1^2, x1^5 @ 8");
        assert!(verify_certificate(
            &j7,
            &SegmentCertificate {
                weights: vec![1, 2, 4, 5],
                verified: false
            }
        ));
        assert!(find_segment_order(&j7).unwrap().unwrap().verified);
    }

    #[test]
    fn rejects_bad_weights() {
        let i5 = set("x3^2, x3*x2, x3*x1^2, x2^7, x2^6*x1^2 @ 10");
        for w in [vec![25, 5, 2, 1], vec![1, 1, 2, 3], vec![0, 1, 2, 3], vec![1, 2, 5]] {
            assert!(!verify_certificate(
                &i5,
                &SegmentCertificate {
                    weights: w,
                    verified: false
                }
            ));
        }
    }

    #[test]
    fn lexsegment_is_segment() {
        for (text, n) in [("x3, x2^7, x2^6*x1^4 @ 10", 3), ("x3, x2, x1^8 @ 8", 3)] {
            let b = set(text);
            let cert = find_segment_order(&b).unwrap().unwrap();
            assert_eq!(cert.weights.len(), n + 1);
            let r = b.r() as u64 + 1;
            let deglex: Vec<u64> = (0..=n as u32).map(|i| r.pow(i)).collect();
            assert!(verify_certificate(
                &b,
                &SegmentCertificate {
                    weights: deglex,
                    verified: false
                }
            ));
        }
    }

    #[test]
    fn segments_among_vertices() {
        let sets = crate::enumerate::enumerate_ideals(3, &"6t-5".parse::<HilbertPolynomial>().unwrap()).unwrap();
        let found: Vec<Option<SegmentCertificate>> = sets.iter().map(|b| find_segment_order(b).unwrap()).collect();
        assert!(found[0].is_some());
        assert!(found.iter().any(Option::is_none));
        for (b, cert) in sets.iter().zip(&found) {
            if let Some(cert) = cert {
                assert!(verify_certificate(b, cert));
            }
        }
    }
}
