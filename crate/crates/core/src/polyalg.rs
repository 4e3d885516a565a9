//! Exact sparse polynomial arithmetic in the invariants `(I₂, I₃, I₄)`.
//!
//! Coefficients are arbitrary-precision rationals and every operation is
//! exact: the determinant and rank certificates downstream are decided with
//! zero tolerance. Monomials are ordered graded-lexicographically with
//! `I₂ > I₃ > I₄`, which fixes the deterministic basis orderings used for
//! complement selection and serialized output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact rational scalar used throughout the algebraic layer.
pub type Rat = BigRational;

/// `Rat` from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `Rat` from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion of a finite `f64` (every finite float is dyadic).
pub fn rat_from_f64(x: f64) -> Result<Rat, PolyError> {
    Rat::from_float(x).ok_or(PolyError::NonFiniteFloat(x))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"` or a plain integer string.
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    Rat::from_str(s.trim()).map_err(|_| PolyError::ParseRational(s.to_string()))
}

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("the zero polynomial has no degree or leading term")]
    ZeroPolynomial,
    #[error("monomial {0} lies outside the target space")]
    OutsideSpace(Mono),
    #[error("cannot parse rational from '{0}'")]
    ParseRational(String),
    #[error("non-finite float {0} has no rational value")]
    NonFiniteFloat(f64),
    #[error("sharp/flat monomial bases require degree >= 1")]
    FlavorNeedsPositiveDegree,
    #[error("malformed polynomial serialization: {0}")]
    Serialization(String),
}

/// Exponent triple `(k₂, k₃, k₄)` for `I₂^k₂ I₃^k₃ I₄^k₄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub const ONE: Mono = Mono([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic with `I₂ > I₃ > I₄`: lower total degree first, then
/// exponent-wise descending (so `I₂²` precedes `I₂I₃` precedes `I₃²`).
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let names = ["I2", "I3", "I4"];
        let mut first = true;
        for (name, &k) in names.iter().zip(self.0.iter()) {
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Sparse exact-rational polynomial in `(I₂, I₃, I₄)`.
///
/// Canonical form: zero coefficients are never stored, so structural equality
/// is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly3 {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::ONE, c);
        p
    }

    /// The variable `I₂`, `I₃` or `I₄` for `axis` 0, 1, 2.
    pub fn var(axis: usize) -> Self {
        let mut exps = [0u32; 3];
        exps[axis] = 1;
        Self::monomial(Mono(exps), Rat::one())
    }

    pub fn i2() -> Self {
        Self::var(0)
    }
    pub fn i3() -> Self {
        Self::var(1)
    }
    pub fn i4() -> Self {
        Self::var(2)
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly3 {
        if c.is_zero() {
            return Poly3::zero();
        }
        Poly3 {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly3 {
        let mut acc = Poly3::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `I₂`, `I₃` or `I₄` (`axis` 0, 1, 2).
    pub fn partial(&self, axis: usize) -> Poly3 {
        let mut out = Poly3::zero();
        for (m, c) in &self.terms {
            let k = m.0[axis];
            if k == 0 {
                continue;
            }
            let mut exps = m.0;
            exps[axis] -= 1;
            out.add_term(Mono(exps), c * rat(k as i64));
        }
        out
    }

    /// Minimal total degree among stored terms (the filtration degree).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree and leading term: the minimal total degree `k` and the
    /// homogeneous degree-`k` part. Errors on the zero polynomial.
    pub fn degree_and_leading(&self) -> Result<(u32, Poly3), PolyError> {
        let k = self.min_degree().ok_or(PolyError::ZeroPolynomial)?;
        Ok((k, self.project_homogeneous(k)))
    }

    /// The homogeneous part of total degree exactly `k` (may be zero).
    pub fn project_homogeneous(&self, k: u32) -> Poly3 {
        Poly3 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree greater than `n`.
    pub fn truncate(&self, n: u32) -> Poly3 {
        Poly3 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn eval_f64(&self, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                rat_to_f64(c)
                    * x[0].powi(m.0[0] as i32)
                    * x[1].powi(m.0[1] as i32)
                    * x[2].powi(m.0[2] as i32)
            })
            .sum()
    }

    pub fn eval_rat(&self, x: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (axis, &k) in m.0.iter().enumerate() {
                for _ in 0..k {
                    term *= &x[axis];
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact linear substitution `xᵢ ← Σⱼ m[i][j]·yⱼ`.
    pub fn substitute_linear(&self, m: &[[Rat; 3]; 3]) -> Poly3 {
        let images: Vec<Poly3> = (0..3)
            .map(|i| {
                let mut p = Poly3::zero();
                for j in 0..3 {
                    p = &p + &Poly3::var(j).scale(&m[i][j]);
                }
                p
            })
            .collect();
        let max_exp = self.terms.keys().map(|mo| mo.0.iter().max().copied().unwrap_or(0)).max();
        let max_exp = max_exp.unwrap_or(0);
        // cache powers of each image
        let mut powers: Vec<Vec<Poly3>> = Vec::with_capacity(3);
        for img in &images {
            let mut pows = vec![Poly3::one()];
            for k in 1..=max_exp {
                let next = &pows[(k - 1) as usize] * img;
                pows.push(next);
            }
            powers.push(pows);
        }
        let mut out = Poly3::zero();
        for (mono, c) in &self.terms {
            let mut term = Poly3::constant(c.clone());
            for axis in 0..3 {
                term = &term * &powers[axis][mono.0[axis] as usize];
            }
            out = &out + &term;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "exp": [m.0[0], m.0[1], m.0[2]],
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly3, PolyError> {
        let bad = |msg: &str| PolyError::Serialization(msg.to_string());
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing 'terms' array"))?;
        let mut p = Poly3::zero();
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(|e| e.as_array())
                .ok_or_else(|| bad("missing 'exp'"))?;
            if exp.len() != 3 {
                return Err(bad("'exp' must have three entries"));
            }
            let mut exps = [0u32; 3];
            for (i, e) in exp.iter().enumerate() {
                exps[i] = e
                    .as_u64()
                    .ok_or_else(|| bad("exponents must be non-negative integers"))?
                    as u32;
            }
            let num = t.get("num").and_then(|x| x.as_str()).ok_or_else(|| bad("missing 'num'"))?;
            let den = t.get("den").and_then(|x| x.as_str()).ok_or_else(|| bad("missing 'den'"))?;
            let num = BigInt::from_str(num).map_err(|_| bad("bad numerator"))?;
            let den = BigInt::from_str(den).map_err(|_| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            p.add_term(Mono(exps), Rat::new(num, den));
        }
        Ok(p)
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || m.degree() == 0;
            if show_coeff {
                write!(f, "{mag}")?;
                if m.degree() > 0 {
                    write!(f, "*")?;
                }
            }
            if m.degree() > 0 {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: Self) -> Poly3 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: Self) -> Poly3 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: Self) -> Poly3 {
        let mut out = Poly3::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Which slice of the degree-`k` monomials a basis covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFlavor {
    /// All `(k+1)(k+2)/2` monomials of total degree `k`.
    Full,
    /// The pure powers `{I₂ᵏ, I₃ᵏ, I₄ᵏ}`.
    Sharp,
    /// Everything of degree `k` except the pure powers.
    Flat,
}

#[derive(Debug, Clone)]
pub struct HomogeneousBasis {
    pub degree: u32,
    pub flavor: BasisFlavor,
    pub monomials: Vec<Mono>,
}

/// All monomials of total degree `k` in the canonical graded-lex order.
fn full_degree_monomials(k: u32) -> Vec<Mono> {
    let mut out = Vec::with_capacity(((k + 1) * (k + 2) / 2) as usize);
    for k2 in (0..=k).rev() {
        for k3 in (0..=k - k2).rev() {
            out.push(Mono([k2, k3, k - k2 - k3]));
        }
    }
    out
}

pub fn monomial_basis(k: u32, flavor: BasisFlavor) -> Result<HomogeneousBasis, PolyError> {
    if k == 0 && !matches!(flavor, BasisFlavor::Full) {
        return Err(PolyError::FlavorNeedsPositiveDegree);
    }
    let all = full_degree_monomials(k);
    let is_sharp = |m: &Mono| m.0.iter().filter(|&&e| e > 0).count() <= 1;
    let monomials = match flavor {
        BasisFlavor::Full => all,
        BasisFlavor::Sharp => all.into_iter().filter(is_sharp).collect(),
        BasisFlavor::Flat => all.into_iter().filter(|m| !is_sharp(m)).collect(),
    };
    Ok(HomogeneousBasis { degree: k, flavor, monomials })
}

/// Monomial basis of the jet space `J_N` (total degrees 1..=N), canonical order.
pub fn jet_basis(n: u32) -> Vec<Mono> {
    let mut out = Vec::with_capacity(jet_dim(n));
    for k in 1..=n {
        out.extend(full_degree_monomials(k));
    }
    out
}

pub fn jet_dim(n: u32) -> usize {
    (1..=n).map(|k| ((k + 1) * (k + 2) / 2) as usize).sum()
}

type SparseRow = Vec<(usize, Rat)>;

/// Incremental exact row-echelon basis over an ordered monomial space.
///
/// Rows are kept normalized with leading coefficient one; pivots are the
/// leading columns. Because the column order is graded, the number of pivots
/// of degree <= k equals the rank of the degree-<=k truncations of everything
/// inserted so far, which is what the per-degree codimension bookkeeping
/// needs.
#[derive(Clone)]
pub struct JetSpan {
    basis: Vec<Mono>,
    index: BTreeMap<Mono, usize>,
    rows: BTreeMap<usize, SparseRow>,
}

impl JetSpan {
    pub fn new(basis: &[Mono]) -> Self {
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        JetSpan { basis: basis.to_vec(), index, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn to_row(&self, p: &Poly3) -> Result<SparseRow, PolyError> {
        let mut row: SparseRow = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            match self.index.get(m) {
                Some(&col) => row.push((col, c.clone())),
                None => return Err(PolyError::OutsideSpace(*m)),
            }
        }
        row.sort_by_key(|(c, _)| *c);
        Ok(row)
    }

    fn axpy(row: &SparseRow, factor: &Rat, other: &SparseRow) -> SparseRow {
        // row - factor * other, both sorted by column
        let mut out = Vec::with_capacity(row.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < other.len() {
            match (row.get(i), other.get(j)) {
                (Some((ci, vi)), Some((cj, vj))) => {
                    if ci < cj {
                        out.push((*ci, vi.clone()));
                        i += 1;
                    } else if cj < ci {
                        out.push((*cj, -(factor * vj)));
                        j += 1;
                    } else {
                        let v = vi - &(factor * vj);
                        if !v.is_zero() {
                            out.push((*ci, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                (Some((ci, vi)), None) => {
                    out.push((*ci, vi.clone()));
                    i += 1;
                }
                (None, Some((cj, vj))) => {
                    out.push((*cj, -(factor * vj)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some(&(lead, _)) = row.first() else { return row };
            let Some(pivot_row) = self.rows.get(&lead) else { return row };
            let factor = row[0].1.clone();
            row = Self::axpy(&row, &factor, pivot_row);
        }
    }

    /// Inserts a polynomial; returns whether the rank grew.
    pub fn insert(&mut self, p: &Poly3) -> Result<bool, PolyError> {
        let row = self.reduce(self.to_row(p)?);
        let Some((lead, lead_coeff)) = row.first().cloned() else {
            return Ok(false);
        };
        let inv = Rat::one() / lead_coeff;
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.rows.insert(lead, row);
        Ok(true)
    }

    /// Whether the polynomial already lies in the span.
    pub fn contains(&self, p: &Poly3) -> Result<bool, PolyError> {
        Ok(self.reduce(self.to_row(p)?).is_empty())
    }

    pub fn pivot_monomials(&self) -> Vec<Mono> {
        self.rows.keys().map(|&c| self.basis[c]).collect()
    }

    /// Basis monomials without a pivot: together with the span they give the
    /// whole space (greedy complement in the basis order).
    pub fn complement(&self) -> Vec<Mono> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.rows.contains_key(i))
            .map(|(_, m)| *m)
            .collect()
    }

    /// Rank of the degree-<=k truncations of the inserted family, for each
    /// k in 1..=n.
    pub fn ranks_by_degree(&self, n: u32) -> Vec<usize> {
        let mut counts = vec![0usize; n as usize + 1];
        for &col in self.rows.keys() {
            let d = self.basis[col].degree() as usize;
            if d <= n as usize {
                counts[d] += 1;
            }
        }
        let mut out = Vec::with_capacity(n as usize);
        let mut acc = 0;
        for k in 1..=n as usize {
            acc += counts[k];
            out.push(acc);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct RankResult {
    pub rank: usize,
    pub complement: Vec<Mono>,
}

/// Exact rank of `vectors` inside the space spanned by `space`, together with
/// the monomials completing the span to the full space.
pub fn rank_and_complement(vectors: &[Poly3], space: &[Mono]) -> Result<RankResult, PolyError> {
    let mut span = JetSpan::new(space);
    for v in vectors {
        span.insert(v)?;
    }
    Ok(RankResult { rank: span.rank(), complement: span.complement() })
}
