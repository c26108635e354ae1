//! Rational deformations between Borel sets.
//!
//! A deformation swaps the images `F(alpha)` of a minimal monomial under a
//! family of decreasing-move compositions with the images `F(beta)` of a
//! maximal non-member. Several compatible swaps can be performed at once.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num::{BigInt, BigRational, One};
use serde::Serialize;

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{borel_leq_unchecked, Monomial};
use crate::order::TermOrder;

/// `(e^-_{l_s})^{λ_s} ... (e^-_{l_1})^{λ_1}` stored as multiplicities
/// indexed by the move index; entry 0 is always 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    lambda: Vec<u32>,
}

impl Composition {
    pub fn identity(num_vars: usize) -> Self {
        Composition {
            lambda: vec![0; num_vars],
        }
    }

    /// From `(index, multiplicity)` pairs; indices must lie in `1..num_vars`.
    pub fn from_moves(num_vars: usize, moves: &[(usize, u32)]) -> Result<Self> {
        let mut lambda = vec![0; num_vars];
        for &(l, k) in moves {
            if l == 0 || l >= num_vars {
                return Err(Error::InvalidArgument(format!(
                    "no decreasing move at index {l} in {num_vars} variables"
                )));
            }
            lambda[l] += k;
        }
        Ok(Composition { lambda })
    }

    pub fn is_identity(&self) -> bool {
        self.lambda.iter().all(|&k| k == 0)
    }

    pub fn multiplicity(&self, index: usize) -> u32 {
        self.lambda.get(index).copied().unwrap_or(0)
    }

    pub fn total_moves(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// `index -> multiplicity` for the moves actually used.
    pub fn moves(&self) -> BTreeMap<usize, u32> {
        self.lambda
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(l, &k)| (l, k))
            .collect()
    }

    /// Applies the moves from the largest index down; `None` when some step
    /// is not admissible.
    pub fn apply(&self, m: &Monomial) -> Option<Monomial> {
        if m.num_vars() != self.lambda.len() {
            return None;
        }
        let exps = m.exponents();
        let top = exps.len() - 1;
        let mut out = Vec::with_capacity(exps.len());
        for (l, &e) in exps.iter().enumerate() {
            let gained = if l < top { self.lambda[l + 1] } else { 0 };
            let value = e as i64 + gained as i64 - self.lambda[l] as i64;
            if value < 0 {
                return None;
            }
            out.push(value as u32);
        }
        Some(Monomial::new(out))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        // written as an operator product, the first applied move rightmost
        let parts: Vec<String> = self
            .moves()
            .into_iter()
            .map(|(l, k)| if k == 1 { format!("e{l}") } else { format!("e{l}^{k}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Composition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.moves().serialize(serializer)
    }
}

/// The admissible decreasing-move compositions of a minimal monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DecMoveFamily {
    pub pivot_stratum: usize,
    /// Identity first, then by number of moves.
    pub compositions: Vec<Composition>,
}

impl DecMoveFamily {
    pub fn images(&self, m: &Monomial) -> Option<Vec<Monomial>> {
        self.compositions.iter().map(|f| f.apply(m)).collect()
    }

    pub fn len(&self) -> usize {
        self.compositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.compositions.is_empty()
    }
}

/// Every composition of moves at indices `1..=j` sending `alpha` into `b`,
/// plus the identity.
pub fn decreasing_family(b: &BorelSet, alpha: &Monomial, j: usize) -> Result<DecMoveFamily> {
    if j >= b.n() || !b.minimal_elements(j).contains(alpha) {
        return Err(Error::PivotNotMinimal {
            monomial: alpha.to_string(),
            stratum: j,
        });
    }
    let num_vars = b.num_vars();
    let mut found = Vec::new();
    let mut lambda = vec![0u32; num_vars];
    collect_compositions(b, alpha, j, 0, &mut lambda, &mut found);
    found.sort_by(|a: &Composition, c| a.total_moves().cmp(&c.total_moves()).then_with(|| a.cmp(c)));
    Ok(DecMoveFamily {
        pivot_stratum: j,
        compositions: found,
    })
}

fn collect_compositions(
    b: &BorelSet,
    alpha: &Monomial,
    l: usize,
    incoming: u32,
    lambda: &mut Vec<u32>,
    found: &mut Vec<Composition>,
) {
    if l == 0 {
        let f = Composition { lambda: lambda.clone() };
        if f.apply(alpha).is_some_and(|image| b.contains(&image)) {
            found.push(f);
        }
        return;
    }
    let available = alpha.exponent(l) + incoming;
    for k in 0..=available {
        lambda[l] = k;
        collect_compositions(b, alpha, l - 1, k, lambda, found);
    }
    lambda[l] = 0;
}

/// Every composition is admissible on `beta`, and every increasing move at
/// an index `>= j` of an image of `beta` lands in `b`.
pub fn is_borel_consistent(b: &BorelSet, family: &DecMoveFamily, beta: &Monomial) -> bool {
    let j = family.pivot_stratum;
    family.compositions.iter().all(|f| match f.apply(beta) {
        None => false,
        Some(image) => image
            .upper_covers()
            .filter(|(i, _)| *i >= j)
            .all(|(_, up)| b.contains(&up)),
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Deformation {
    pub source: BorelSet,
    pub target: BorelSet,
    pub stratum: usize,
    pub alpha: Monomial,
    pub beta: Monomial,
    pub family: DecMoveFamily,
}

impl Deformation {
    /// Builds the swap, checking that the family is consistent.
    pub fn new(source: &BorelSet, alpha: &Monomial, beta: &Monomial, stratum: usize) -> Result<Self> {
        let family = decreasing_family(source, alpha, stratum)?;
        if !source.maximal_elements(stratum).contains(beta) {
            return Err(Error::InvalidArgument(format!(
                "{beta} is not a maximal non-member with smallest variable x{stratum}"
            )));
        }
        if !is_borel_consistent(source, &family, beta) {
            return Err(Error::InvalidArgument(format!(
                "the family of {alpha} is not consistent with {beta}"
            )));
        }
        Self::from_parts(source, alpha.clone(), beta.clone(), family)
    }

    fn from_parts(source: &BorelSet, alpha: Monomial, beta: Monomial, family: DecMoveFamily) -> Result<Self> {
        let removed = family
            .images(&alpha)
            .ok_or_else(|| Error::Invariant(format!("family of {alpha} is not admissible on it")))?;
        let added = family
            .images(&beta)
            .ok_or_else(|| Error::Invariant(format!("family of {alpha} is not admissible on {beta}")))?;
        let target = swap(source, &[(&removed, &added)])?;
        Ok(Deformation {
            source: source.clone(),
            target,
            stratum: family.pivot_stratum,
            alpha,
            beta,
            family,
        })
    }

    /// `F(alpha)` for every composition `F`.
    pub fn removed(&self) -> Vec<Monomial> {
        self.family.images(&self.alpha).expect("checked at construction")
    }

    /// `F(beta)` for every composition `F`.
    pub fn added(&self) -> Vec<Monomial> {
        self.family.images(&self.beta).expect("checked at construction")
    }

    pub fn record(&self) -> DeformationRecord {
        DeformationRecord {
            source: self
                .source
                .saturate()
                .generators()
                .iter()
                .map(Monomial::to_string)
                .collect(),
            target: self
                .target
                .saturate()
                .generators()
                .iter()
                .map(Monomial::to_string)
                .collect(),
            r: self.source.r(),
            stratum: self.stratum,
            alpha: self.alpha.to_string(),
            beta: self.beta.to_string(),
            family: self.family.compositions.iter().map(Composition::moves).collect(),
            removed: self.removed().iter().map(Monomial::to_string).collect(),
            added: self.added().iter().map(Monomial::to_string).collect(),
            flat: None,
        }
    }
}

/// Serializable summary of a deformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationRecord {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub r: u32,
    pub stratum: usize,
    pub alpha: String,
    pub beta: String,
    pub family: Vec<BTreeMap<usize, u32>>,
    pub removed: Vec<String>,
    pub added: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat: Option<bool>,
}

fn swap(source: &BorelSet, sides: &[(&[Monomial], &[Monomial])]) -> Result<BorelSet> {
    let mut members: BTreeSet<Monomial> = source.member_set().clone();
    for (removed, _) in sides {
        for m in removed.iter() {
            members.remove(m);
        }
    }
    for (_, added) in sides {
        members.extend(added.iter().cloned());
    }
    BorelSet::new(source.n(), source.r(), members)
        .map_err(|e| Error::Invariant(format!("swap did not produce a Borel set: {e}")))
}

fn single_move_apart(alpha: &Monomial, beta: &Monomial, above: usize) -> bool {
    alpha.lower_covers().any(|(k, down)| k > above && &down == beta)
}

/// Every target reachable from `b` by one swap, first witness kept.
pub fn all_deformations(b: &BorelSet) -> Result<Vec<Deformation>> {
    let mut out: Vec<Deformation> = Vec::new();
    let mut seen: HashSet<BorelSet> = HashSet::new();
    for i in 0..b.n() {
        let maximal = b.maximal_elements(i);
        if maximal.is_empty() {
            continue;
        }
        for alpha in b.minimal_elements(i) {
            let family = decreasing_family(b, &alpha, i)?;
            for beta in &maximal {
                if single_move_apart(&alpha, beta, i) || !is_borel_consistent(b, &family, beta) {
                    continue;
                }
                let d = Deformation::from_parts(b, alpha.clone(), beta.clone(), family.clone())?;
                if seen.insert(d.target.clone()) {
                    out.push(d);
                }
            }
        }
    }
    Ok(out)
}

/// The first stratum where the smallest minimal element is below the largest
/// maximal non-member and the swap is consistent. `None` marks an endpoint.
pub fn to_deformation(b: &BorelSet, order: &TermOrder) -> Result<Option<Deformation>> {
    order.check_num_vars(b.num_vars())?;
    for i in 0..b.n() {
        let minimal = b.minimal_elements(i);
        let maximal = b.maximal_elements(i);
        let (Some(alpha), Some(beta)) = (order.min(&minimal), order.max(&maximal)) else {
            continue;
        };
        if order.compare(alpha, beta) != std::cmp::Ordering::Less {
            continue;
        }
        let family = decreasing_family(b, alpha, i)?;
        if is_borel_consistent(b, &family, beta) {
            return Deformation::from_parts(b, alpha.clone(), beta.clone(), family).map(Some);
        }
    }
    Ok(None)
}

/// Whether the swaps can be performed simultaneously.
pub fn compatible(defs: &[Deformation]) -> Result<bool> {
    let Some(first) = defs.first() else {
        return Ok(true);
    };
    if defs.iter().any(|d| d.source != first.source) {
        return Err(Error::MismatchedSource);
    }
    let removed: Vec<Vec<Monomial>> = defs.iter().map(Deformation::removed).collect();
    let added: Vec<Vec<Monomial>> = defs.iter().map(Deformation::added).collect();
    for (a, da) in defs.iter().enumerate() {
        for (b, db) in defs.iter().enumerate() {
            if a == b {
                continue;
            }
            // a monomial entering must not sit below one leaving
            if borel_leq_unchecked(&db.beta, &da.alpha) {
                return Ok(false);
            }
            let (min_a, min_b) = (da.alpha.min_index(), db.alpha.min_index());
            if min_a > min_b {
                let threshold = min_a.unwrap_or(0);
                let blocked = db
                    .alpha
                    .lower_covers()
                    .filter(|(l, _)| *l >= threshold)
                    .any(|(_, down)| borel_leq_unchecked(&down, &da.beta));
                if blocked {
                    return Ok(false);
                }
            }
            if a < b {
                let overlaps = |x: &[Monomial], y: &[Monomial]| x.iter().any(|m| y.contains(m));
                if overlaps(&removed[a], &removed[b]) || overlaps(&added[a], &added[b]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Performs the swaps whose choice is `true` (the `beta` side).
pub fn compose(defs: &[Deformation], choices: &[bool]) -> Result<BorelSet> {
    let Some(first) = defs.first() else {
        return Err(Error::InvalidArgument("no deformations to compose".into()));
    };
    if choices.len() != defs.len() {
        return Err(Error::InvalidArgument(format!(
            "{} choices for {} deformations",
            choices.len(),
            defs.len()
        )));
    }
    if !compatible(defs)? {
        return Err(Error::Incompatible);
    }
    let sides: Vec<(Vec<Monomial>, Vec<Monomial>)> = defs
        .iter()
        .zip(choices)
        .filter(|(_, &c)| c)
        .map(|(d, _)| (d.removed(), d.added()))
        .collect();
    let borrowed: Vec<(&[Monomial], &[Monomial])> = sides.iter().map(|(r, a)| (r.as_slice(), a.as_slice())).collect();
    swap(&first.source, &borrowed)
}

/// Dimensions in degree `r + 1` of the fibers of the pencil.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    #[serde(serialize_with = "as_text")]
    pub expected: BigInt,
    #[serde(serialize_with = "as_text")]
    pub source: BigInt,
    #[serde(serialize_with = "as_text")]
    pub target: BigInt,
    #[serde(serialize_with = "as_text")]
    pub mixed: BigInt,
}

fn as_text<S: serde::Serializer>(value: &BigInt, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

impl FlatnessReport {
    pub fn is_flat(&self) -> bool {
        self.source == self.expected && self.target == self.expected && self.mixed == self.expected
    }
}

fn span_of_products(generators: impl IntoIterator<Item = Monomial>, num_vars: usize) -> HashSet<Monomial> {
    generators
        .into_iter()
        .flat_map(|m| (0..num_vars).map(move |k| m.mul_var(k)))
        .collect()
}

/// Degree `r + 1` dimensions of both monomial fibers and of the fiber
/// spanned by the unchanged monomials and `F(alpha) + c F(beta)`.
pub fn flatness_report(d: &Deformation, c: &BigRational) -> Result<FlatnessReport> {
    let num_vars = d.source.num_vars();
    let n = d.source.n();
    let p = d.source.hilbert_polynomial()?;
    let expected = d.source.r().checked_add(1).map_or_else(
        || Err(Error::InvalidArgument("degree overflow".into())),
        |t| p.complement(n, t),
    )?;

    let source = BigInt::from(span_of_products(d.source.members().cloned(), num_vars).len());
    let target = BigInt::from(span_of_products(d.target.members().cloned(), num_vars).len());

    let removed = d.removed();
    let added = d.added();
    let unchanged = d.source.members().filter(|m| !removed.contains(m)).cloned();
    let covered = span_of_products(unchanged, num_vars);

    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, BigRational)>> = Vec::new();
    for (a, b) in removed.iter().zip(&added) {
        for k in 0..num_vars {
            let mut row = Vec::new();
            for (m, coeff) in [(a.mul_var(k), BigRational::one()), (b.mul_var(k), c.clone())] {
                if covered.contains(&m) {
                    continue;
                }
                let next = columns.len();
                let col = *columns.entry(m).or_insert(next);
                row.push((col, coeff));
            }
            rows.push(row);
        }
    }
    let dense: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|row| {
            let mut v = vec![BigRational::default(); columns.len()];
            for (col, coeff) in row {
                v[col] += coeff;
            }
            v
        })
        .collect();
    let mixed = BigInt::from(covered.len() + linalg::rank(dense));
    Ok(FlatnessReport {
        expected,
        source,
        target,
        mixed,
    })
}

/// The fiber at `[1:1]` and both monomial fibers have dimension `q(r+1)`.
pub fn verify_flat(d: &Deformation) -> Result<bool> {
    Ok(flatness_report(d, &BigRational::one())?.is_flat())
}
