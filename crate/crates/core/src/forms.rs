//! Integral binary forms of arbitrary degree, ternary quadratic forms in
//! half-integral matrix form, the resolvent cubic of a pair, and the ternary
//! sextic index form of a quartic pair.
//!
//! All coefficient arithmetic is exact (`BigInt` / `BigRational`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::det_bigint;
use crate::error::{Error, Result};

/// A binary form F(x, y) = Σ a_i x^(n−i) y^i of degree n ≥ 1 with integer
/// coefficients (a_0, …, a_n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Build from coefficients (a_0, …, a_n); the degree is `len − 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.len() >= 2, "a binary form needs degree ≥ 1");
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact evaluation at integer arguments.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let n = self.degree();
        let mut total = BigInt::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            total += a * x.pow((n - i) as u32) * y.pow(i as u32);
        }
        total
    }

    /// F(x, 1) as a dense univariate coefficient vector, highest degree first.
    pub fn dehomogenize(&self) -> Vec<BigInt> {
        self.coeffs.clone()
    }

    /// The reversed form F(y, x).
    pub fn reversed(&self) -> BinaryForm {
        let mut c = self.coeffs.clone();
        c.reverse();
        BinaryForm::new(c)
    }

    /// Content gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        g
    }

    /// Standard discriminant.
    ///
    /// For a_0 ≠ 0 this is (−1)^(n(n−1)/2) Res(f, f′)/a_0 with f = F(x, 1);
    /// for a_0 = 0 the homogeneous route (−1)^(n(n−1)/2) Res(F_x, F_y)/n^(n−2)
    /// is used. The two agree whenever both apply.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall(n, 2));
        }
        if self.coeffs[0].is_zero() {
            self.discriminant_homogeneous()
        } else {
            self.discriminant_univariate()
        }
    }

    /// Resultant route through F(x, 1) and its derivative. Needs a_0 ≠ 0.
    pub fn discriminant_univariate(&self) -> Result<BigInt> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall(n, 2));
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let f = self.coeffs.clone();
        let fp: Vec<BigInt> = (0..n)
            .map(|i| BigInt::from((n - i) as u64) * &f[i])
            .collect();
        let res = resultant(&f, n, &fp, n - 1);
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let (q, r) = num_integer::div_rem(res, self.coeffs[0].clone());
        if !r.is_zero() {
            return Err(Error::NonIntegral("Res(f, f') not divisible by a_0".into()));
        }
        Ok(if sign < 0 { -q } else { q })
    }

    /// Homogeneous route through the two partial derivatives.
    pub fn discriminant_homogeneous(&self) -> Result<BigInt> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall(n, 2));
        }
        // F_x has coefficients (n−i)·a_i for i = 0..n−1; F_y has i·a_i for i = 1..n.
        let fx: Vec<BigInt> = (0..n)
            .map(|i| BigInt::from((n - i) as u64) * &self.coeffs[i])
            .collect();
        let fy: Vec<BigInt> = (1..=n)
            .map(|i| BigInt::from(i as u64) * &self.coeffs[i])
            .collect();
        let res = resultant(&fx, n - 1, &fy, n - 1);
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let denom = BigInt::from(n as u64).pow((n as u32).saturating_sub(2));
        let (q, r) = num_integer::div_rem(res, denom);
        if !r.is_zero() {
            return Err(Error::NonIntegral(
                "Res(F_x, F_y) not divisible by n^(n−2)".into(),
            ));
        }
        Ok(if sign < 0 { -q } else { q })
    }

    /// Right action of a unimodular 2×2 integer matrix: F ↦ F((x, y)·g).
    pub fn gl2_act(&self, g: &[[i64; 2]; 2]) -> Result<BinaryForm> {
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if det != 1 && det != -1 {
            return Err(Error::NonUnimodular(det.to_string()));
        }
        Ok(self.substitute(
            &BigInt::from(g[0][0]),
            &BigInt::from(g[1][0]),
            &BigInt::from(g[0][1]),
            &BigInt::from(g[1][1]),
        ))
    }

    /// F(p x + q y, r x + s y), expanded exactly.
    pub fn substitute(&self, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> BinaryForm {
        let n = self.degree();
        // new_coeffs[k] multiplies x^(n−k) y^k
        let mut out = vec![BigInt::zero(); n + 1];
        // (p x + q y)^(n−i) (r x + s y)^i, accumulated per monomial.
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let left = binomial_expand(p, q, n - i);
            let right = binomial_expand(r, s, i);
            for (j, lc) in left.iter().enumerate() {
                for (k, rc) in right.iter().enumerate() {
                    out[j + k] += a * lc * rc;
                }
            }
        }
        BinaryForm::new(out)
    }

    /// Scale every coefficient.
    pub fn scale(&self, c: &BigInt) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Coefficient-wise negation; same invariant order, opposite orientation.
    pub fn neg(&self) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|a| -a).collect())
    }

    /// Cube of the form as a form of triple degree.
    pub fn pow3(&self) -> BinaryForm {
        let sq = self.mul(self);
        sq.mul(self)
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let n = self.degree();
        let m = other.degree();
        let mut out = vec![BigInt::zero(); n + m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }
}

/// (p x + q y)^m as a coefficient vector in y-degree order.
fn binomial_expand(p: &BigInt, q: &BigInt, m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m + 1];
    let mut binom = BigInt::one();
    for k in 0..=m {
        out[k] = &binom * p.pow((m - k) as u32) * q.pow(k as u32);
        if k < m {
            binom = binom * BigInt::from((m - k) as u64) / BigInt::from((k + 1) as u64);
        }
    }
    out
}

/// Sylvester resultant of two univariate polynomials given by coefficient
/// vectors (highest degree first) of formal degrees `n` and `m`.
pub fn resultant(f: &[BigInt], n: usize, g: &[BigInt], m: usize) -> BigInt {
    assert_eq!(f.len(), n + 1);
    assert_eq!(g.len(), m + 1);
    if n == 0 {
        return f[0].pow(m as u32);
    }
    if m == 0 {
        return g[0].pow(n as u32);
    }
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (j, c) in f.iter().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in g.iter().enumerate() {
            mat[m + row][row + j] = c.clone();
        }
    }
    det_bigint(&mat)
}

impl fmt::Display for BinaryForm {
    /// Canonical text serialization: `deg:a_0,a_1,…,a_n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.degree())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (deg, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in binary form {s:?}")))?;
        let deg: usize = deg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
        let coeffs: Vec<BigInt> = rest
            .split(',')
            .map(|t| {
                BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<_>>()?;
        if coeffs.len() != deg + 1 {
            return Err(Error::Parse(format!(
                "degree {deg} needs {} coefficients, got {}",
                deg + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryForm::new(coeffs))
    }
}

/// A ternary quadratic form q(x₁,x₂,x₃) = Σ_{i≤j} c_ij x_i x_j stored by its
/// six integer coefficients. The matrix view is half-integral symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryQuadraticForm {
    pub c11: BigInt,
    pub c22: BigInt,
    pub c33: BigInt,
    pub c12: BigInt,
    pub c13: BigInt,
    pub c23: BigInt,
}

impl TernaryQuadraticForm {
    pub fn new(c11: i64, c22: i64, c33: i64, c12: i64, c13: i64, c23: i64) -> Self {
        TernaryQuadraticForm {
            c11: c11.into(),
            c22: c22.into(),
            c33: c33.into(),
            c12: c12.into(),
            c13: c13.into(),
            c23: c23.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0, 0, 0, 0)
    }

    /// Exact evaluation.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
        &self.c11 * x * x
            + &self.c22 * y * y
            + &self.c33 * z * z
            + &self.c12 * x * y
            + &self.c13 * x * z
            + &self.c23 * y * z
    }

    /// Symmetric 3×3 matrix view with half-integral off-diagonal entries.
    pub fn matrix(&self) -> [[BigRational; 3]; 3] {
        let half = |c: &BigInt| BigRational::new(c.clone(), BigInt::from(2));
        let whole = |c: &BigInt| BigRational::from_integer(c.clone());
        [
            [whole(&self.c11), half(&self.c12), half(&self.c13)],
            [half(&self.c12), whole(&self.c22), half(&self.c23)],
            [half(&self.c13), half(&self.c23), whole(&self.c33)],
        ]
    }

    /// 4·det of the matrix view, an integer for integral coefficients… not in
    /// general; returned exactly as a rational times four.
    pub fn four_det(&self) -> BigRational {
        let m = self.matrix();
        det3(&m) * BigRational::from_integer(BigInt::from(4))
    }

    /// Apply g ∈ GL₃(Z): q(v) ↦ q(v·gᵀ)… concretely M ↦ g M gᵀ on the matrix.
    pub fn transform(&self, g: &[[i64; 3]; 3]) -> TernaryQuadraticForm {
        let m = self.matrix();
        let gr: Vec<Vec<BigRational>> = g
            .iter()
            .map(|row| row.iter().map(|&e| BigRational::from_integer(e.into())).collect())
            .collect();
        let mut gm = [[BigRational::zero(), BigRational::zero(), BigRational::zero()],
            [BigRational::zero(), BigRational::zero(), BigRational::zero()],
            [BigRational::zero(), BigRational::zero(), BigRational::zero()]];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = BigRational::zero();
                for k in 0..3 {
                    s += &gr[i][k] * &m[k][j];
                }
                gm[i][j] = s;
            }
        }
        let mut out = [[BigRational::zero(), BigRational::zero(), BigRational::zero()],
            [BigRational::zero(), BigRational::zero(), BigRational::zero()],
            [BigRational::zero(), BigRational::zero(), BigRational::zero()]];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = BigRational::zero();
                for k in 0..3 {
                    s += &gm[i][k] * &gr[j][k];
                }
                out[i][j] = s;
            }
        }
        let as_int = |r: &BigRational| -> BigInt {
            debug_assert!(r.is_integer());
            r.to_integer()
        };
        let two = BigRational::from_integer(BigInt::from(2));
        TernaryQuadraticForm {
            c11: as_int(&out[0][0]),
            c22: as_int(&out[1][1]),
            c33: as_int(&out[2][2]),
            c12: as_int(&(&out[0][1] * &two)),
            c13: as_int(&(&out[0][2] * &two)),
            c23: as_int(&(&out[1][2] * &two)),
        }
    }
}

fn det3(m: &[[BigRational; 3]; 3]) -> BigRational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

impl fmt::Display for TernaryQuadraticForm {
    /// Canonical text serialization: `c11,c22,c33,c12,c13,c23`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.c11, self.c22, self.c33, self.c12, self.c13, self.c23
        )
    }
}

impl FromStr for TernaryQuadraticForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<BigInt> = s
            .split(',')
            .map(|t| {
                BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<_>>()?;
        if parts.len() != 6 {
            return Err(Error::Parse(format!("a ternary quadratic form needs 6 coefficients, got {}", parts.len())));
        }
        let mut it = parts.into_iter();
        Ok(TernaryQuadraticForm {
            c11: it.next().unwrap(),
            c22: it.next().unwrap(),
            c33: it.next().unwrap(),
            c12: it.next().unwrap(),
            c13: it.next().unwrap(),
            c23: it.next().unwrap(),
        })
    }
}

/// A pair (A, B) of ternary quadratic forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TqfPair {
    pub a: TernaryQuadraticForm,
    pub b: TernaryQuadraticForm,
}

impl TqfPair {
    pub fn new(a: TernaryQuadraticForm, b: TernaryQuadraticForm) -> Self {
        TqfPair { a, b }
    }

    /// True iff 4·det(A x − B y) vanishes identically.
    pub fn has_degenerate_resolvent(&self) -> bool {
        self.resolvent_form()
            .map(|f| f.is_zero())
            .unwrap_or(false)
    }

    /// The binary cubic 4·det(A x − B y), expanded in exact rational
    /// arithmetic; all four coefficients are asserted integral.
    pub fn resolvent_form(&self) -> Result<BinaryForm> {
        let ma = self.a.matrix();
        let mb = self.b.matrix();
        // det(A x − B y) is a cubic in (x, y): interpolate by expanding the
        // 3×3 determinant whose entries are linear forms.
        // Entry (i, j) = ma[i][j]·x − mb[i][j]·y; expand symbolically.
        let mut coeffs = vec![BigRational::zero(); 4]; // x³, x²y, xy², y³
        // permutations of S₃ with signs
        const PERMS: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ];
        for (perm, sgn) in PERMS {
            // product over rows i of (ma[i][perm[i]] x − mb[i][perm[i]] y)
            let mut poly = vec![BigRational::from_integer(BigInt::from(sgn))];
            for (i, &j) in perm.iter().enumerate() {
                let a = &ma[i][j];
                let b = &mb[i][j];
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k] += c * a;
                    next[k + 1] += c * -b;
                }
                poly = next;
            }
            for (k, c) in poly.into_iter().enumerate() {
                coeffs[k] += c;
            }
        }
        let four = BigRational::from_integer(BigInt::from(4));
        let mut out = Vec::with_capacity(4);
        for c in &coeffs {
            let v = c * &four;
            if !v.is_integer() {
                return Err(Error::NonIntegral(format!(
                    "resolvent coefficient {v} is not an integer"
                )));
            }
            out.push(v.to_integer());
        }
        Ok(BinaryForm::new(out))
    }

    /// The ternary sextic index form f_R(q_B(x,y,z), −q_A(x,y,z)).
    pub fn quartic_index_form(&self) -> Result<TernarySexticForm> {
        let cubic = self.resolvent_form()?;
        let qa = TernaryQuadratic::from_form(&self.a);
        let qb = TernaryQuadratic::from_form(&self.b);
        let neg_qa = qa.neg();
        // Σ r_i · q_B^(3−i) · (−q_A)^i
        let mut total = TernaryPoly::zero();
        for (i, r) in cubic.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mut term = TernaryPoly::constant(r.clone());
            for _ in 0..(3 - i) {
                term = term.mul(&qb.poly);
            }
            for _ in 0..i {
                term = term.mul(&neg_qa.poly);
            }
            total = total.add(&term);
        }
        TernarySexticForm::from_poly(total)
    }
}

/// Internal sparse polynomial in three variables with integer coefficients.
#[derive(Debug, Clone)]
struct TernaryPoly {
    terms: BTreeMap<(u8, u8, u8), BigInt>,
}

impl TernaryPoly {
    fn zero() -> Self {
        TernaryPoly { terms: BTreeMap::new() }
    }

    fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0, 0), c);
        }
        TernaryPoly { terms }
    }

    fn add(&self, other: &TernaryPoly) -> TernaryPoly {
        let mut out = self.terms.clone();
        for (k, v) in &other.terms {
            let e = out.entry(*k).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                out.remove(k);
            }
        }
        TernaryPoly { terms: out }
    }

    fn mul(&self, other: &TernaryPoly) -> TernaryPoly {
        let mut out: BTreeMap<(u8, u8, u8), BigInt> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key = (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2);
                let e = out.entry(key).or_insert_with(BigInt::zero);
                *e += va * vb;
            }
        }
        out.retain(|_, v| !v.is_zero());
        TernaryPoly { terms: out }
    }
}

/// A ternary quadratic as a sparse polynomial (for sextic expansion).
struct TernaryQuadratic {
    poly: TernaryPoly,
}

impl TernaryQuadratic {
    fn from_form(q: &TernaryQuadraticForm) -> Self {
        let mut terms = BTreeMap::new();
        let mut put = |k: (u8, u8, u8), v: &BigInt| {
            if !v.is_zero() {
                terms.insert(k, v.clone());
            }
        };
        put((2, 0, 0), &q.c11);
        put((0, 2, 0), &q.c22);
        put((0, 0, 2), &q.c33);
        put((1, 1, 0), &q.c12);
        put((1, 0, 1), &q.c13);
        put((0, 1, 1), &q.c23);
        TernaryQuadratic { poly: TernaryPoly { terms } }
    }

    fn neg(&self) -> TernaryQuadratic {
        TernaryQuadratic {
            poly: TernaryPoly {
                terms: self
                    .poly
                    .terms
                    .iter()
                    .map(|(k, v)| (*k, -v))
                    .collect(),
            },
        }
    }
}

/// A homogeneous sextic in three variables: a map from the 28 degree-6
/// monomials to integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernarySexticForm {
    terms: BTreeMap<(u8, u8, u8), BigInt>,
}

impl TernarySexticForm {
    fn from_poly(p: TernaryPoly) -> Result<TernarySexticForm> {
        for k in p.terms.keys() {
            if k.0 + k.1 + k.2 != 6 {
                return Err(Error::NonIntegral(format!(
                    "sextic has a term of total degree {}",
                    k.0 + k.1 + k.2
                )));
            }
        }
        Ok(TernarySexticForm { terms: p.terms })
    }

    pub fn coefficient(&self, i: u8, j: u8, k: u8) -> BigInt {
        assert_eq!(i + j + k, 6);
        self.terms.get(&(i, j, k)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u8, u8, u8), &BigInt)> {
        self.terms.iter()
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (&(i, j, k), c) in &self.terms {
            total += c * x.pow(i as u32) * y.pow(j as u32) * z.pow(k as u32);
        }
        total
    }

    /// Specialize at (x², xy, y²): a binary form of degree 12.
    pub fn specialize_veronese(&self) -> BinaryForm {
        let mut out = vec![BigInt::zero(); 13];
        for (&(_i, j, k), c) in &self.terms {
            // x^(2i) (xy)^j (y²)^k  →  x^(2i+j) y^(j+2k)
            let ydeg = (j + 2 * k) as usize;
            out[ydeg] += c;
        }
        BinaryForm::new(out)
    }
}

impl fmt::Display for TernarySexticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(i, j, k), c) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{i}{j}{k}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::pair_from_binary_quartic;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bf(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c)
    }

    /// Independent discriminant oracles for low degree, straight from the
    /// classical closed formulas.
    fn disc_quadratic(a: i64, b: i64, c: i64) -> i64 {
        b * b - 4 * a * c
    }

    fn disc_cubic(a: i64, b: i64, c: i64, d: i64) -> i64 {
        18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c
            - 27 * a * a * d * d
    }

    fn disc_quartic(a: i64, b: i64, c: i64, d: i64, e: i64) -> i64 {
        256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e - 128 * a * a * c * c * e * e
            + 144 * a * a * c * d * d * e
            - 27 * a * a * d * d * d * d
            + 144 * a * b * b * c * e * e
            - 6 * a * b * b * d * d * e
            - 80 * a * b * c * c * d * e
            + 18 * a * b * c * d * d * d
            + 16 * a * c * c * c * c * e
            - 4 * a * c * c * c * d * d
            - 27 * b * b * b * b * e * e
            + 18 * b * b * b * c * d * e
            - 4 * b * b * b * d * d * d
            - 4 * b * b * c * c * c * e
            + b * b * c * c * d * d
    }

    #[test]
    fn evaluate_examples() {
        let f = bf(&[1, 0, 0, 0, 1]); // x⁴ + y⁴
        assert_eq!(f.evaluate(&1.into(), &1.into()), BigInt::from(2));
        let g = bf(&[1, 0, -4, 0]); // x³ − 4xy²
        assert_eq!(g.evaluate(&2.into(), &1.into()), BigInt::zero());
        for c in [&f, &g] {
            assert_eq!(c.evaluate(&1.into(), &0.into()), c.coeff(0).clone());
        }
    }

    #[test]
    fn homogeneity_by_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let deg = rng.gen_range(1..=5usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
            let f = bf(&coeffs);
            let x = BigInt::from(rng.gen_range(-9i64..=9));
            let y = BigInt::from(rng.gen_range(-9i64..=9));
            let lam = BigInt::from(rng.gen_range(-5i64..=5));
            assert_eq!(
                f.evaluate(&(&lam * &x), &(&lam * &y)),
                lam.pow(deg as u32) * f.evaluate(&x, &y)
            );
        }
    }

    #[test]
    fn discriminant_pinned_examples() {
        assert_eq!(bf(&[1, 0, 1]).discriminant().unwrap(), BigInt::from(-4));
        assert_eq!(bf(&[1, 1, 6]).discriminant().unwrap(), BigInt::from(-23));
        // homogenizations of x⁴+2x+2 and x⁴+4x+2
        assert_eq!(
            bf(&[1, 0, 0, 2, 2]).discriminant().unwrap(),
            BigInt::from(1616)
        );
        assert_eq!(
            bf(&[1, 0, 0, 4, 2]).discriminant().unwrap(),
            BigInt::from(-4864)
        );
        assert_eq!(
            bf(&[1, 0, 4, 4, 2]).discriminant().unwrap(),
            BigInt::from(9472)
        );
    }

    #[test]
    fn discriminant_matches_closed_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let a = rng.gen_range(-8i64..=8);
            let b = rng.gen_range(-8i64..=8);
            let c = rng.gen_range(-8i64..=8);
            if a != 0 {
                assert_eq!(
                    bf(&[a, b, c]).discriminant().unwrap(),
                    BigInt::from(disc_quadratic(a, b, c))
                );
            }
            let d = rng.gen_range(-8i64..=8);
            if a != 0 {
                assert_eq!(
                    bf(&[a, b, c, d]).discriminant().unwrap(),
                    BigInt::from(disc_cubic(a, b, c, d))
                );
            }
            let e = rng.gen_range(-8i64..=8);
            if a != 0 {
                assert_eq!(
                    bf(&[a, b, c, d, e]).discriminant().unwrap(),
                    BigInt::from(disc_quartic(a, b, c, d, e))
                );
            }
        }
    }

    #[test]
    fn discriminant_two_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let deg = rng.gen_range(2..=4usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10..=10)).collect();
            if coeffs[0] == 0 || coeffs[deg] == 0 {
                continue;
            }
            let f = bf(&coeffs);
            assert_eq!(
                f.discriminant_univariate().unwrap(),
                f.discriminant_homogeneous().unwrap(),
                "form {f}"
            );
            // reversed-form route: Disc(F(y,x)) = ± Disc(F); for binary forms
            // the swap is unimodular of determinant −1 so Disc is unchanged.
            assert_eq!(
                f.discriminant().unwrap(),
                f.reversed().discriminant().unwrap()
            );
        }
    }

    #[test]
    fn discriminant_degree_error() {
        assert!(matches!(
            bf(&[1, 1]).discriminant(),
            Err(Error::DegreeTooSmall(1, 2))
        ));
    }

    #[test]
    fn gl2_action_examples() {
        let f = bf(&[1, 0, -4, 0]); // x³ − 4xy²
        let id = [[1, 0], [0, 1]];
        assert_eq!(f.gl2_act(&id).unwrap(), f);
        let swap = [[0, 1], [1, 0]];
        assert_eq!(f.gl2_act(&swap).unwrap(), bf(&[0, -4, 0, 1]));
        let shear = [[1, 0], [1, 1]]; // x → x + y at the level of (x,y)·g
        let g = bf(&[1, 0, 0]).gl2_act(&shear).unwrap();
        assert_eq!(g, bf(&[1, 2, 1]));
        assert_eq!(g.discriminant().unwrap(), BigInt::zero());
        let bad = [[2, 0], [0, 1]];
        assert!(matches!(f.gl2_act(&bad), Err(Error::NonUnimodular(_))));
    }

    #[test]
    fn gl2_invariance_of_discriminant() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut done = 0;
        while done < 1000 {
            let deg = rng.gen_range(2..=4usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
            let f = bf(&coeffs);
            let g = random_unimodular(&mut rng);
            let Ok(d0) = f.discriminant() else { continue };
            let tf = f.gl2_act(&g).unwrap();
            let d1 = tf.discriminant().unwrap();
            assert_eq!(d0, d1, "form {f}, matrix {g:?}");
            done += 1;
        }
    }

    pub(crate) fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
        // product of random elementary matrices keeps entries modest
        let mut m = [[1i64, 0], [0, 1]];
        for _ in 0..4 {
            let k = rng.gen_range(-2i64..=2);
            let which = rng.gen_range(0..3);
            m = match which {
                0 => mat_mul(m, [[1, k], [0, 1]]),
                1 => mat_mul(m, [[1, 0], [k, 1]]),
                _ => mat_mul(m, [[0, 1], [-1, 0]]),
            };
        }
        m
    }

    fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ]
    }

    #[test]
    fn resolvent_of_seed_pair() {
        let pair = pair_from_binary_quartic(&bf(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(pair.resolvent_form().unwrap(), bf(&[1, 0, -4, 0]));
    }

    #[test]
    fn resolvent_of_b_zero_is_det_a_cubed() {
        let a = TernaryQuadraticForm::new(2, -1, 3, 1, 0, 5);
        let pair = TqfPair::new(a.clone(), TernaryQuadraticForm::zero());
        let r = pair.resolvent_form().unwrap();
        let four_det = a.four_det();
        assert!(four_det.is_integer());
        assert_eq!(r.coeff(0), &four_det.to_integer());
        assert!(r.coeff(1).is_zero() && r.coeff(2).is_zero() && r.coeff(3).is_zero());
    }

    #[test]
    fn degenerate_pairs_are_flagged_not_rejected() {
        let zero = TqfPair::new(TernaryQuadraticForm::zero(), TernaryQuadraticForm::zero());
        assert!(zero.has_degenerate_resolvent());
        assert!(zero.resolvent_form().unwrap().is_zero());
        let seed = pair_from_binary_quartic(&bf(&[1, 0, 0, 0, 1])).unwrap();
        assert!(!seed.has_degenerate_resolvent());
    }

    #[test]
    fn resolvent_integral_for_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..1000 {
            let mut c = || rng.gen_range(-10i64..=10);
            let a = TernaryQuadraticForm::new(c(), c(), c(), c(), c(), c());
            let b = TernaryQuadraticForm::new(c(), c(), c(), c(), c(), c());
            let pair = TqfPair::new(a, b);
            pair.resolvent_form().expect("integral resolvent");
        }
    }

    #[test]
    fn resolvent_discriminant_equals_quartic_discriminant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let coeffs: Vec<i64> = (0..5).map(|_| rng.gen_range(-15..=15)).collect();
            let f = bf(&coeffs);
            let pair = pair_from_binary_quartic(&f).unwrap();
            let r = pair.resolvent_form().unwrap();
            assert_eq!(
                r.discriminant().unwrap(),
                f.discriminant().unwrap(),
                "form {f}"
            );
        }
    }

    #[test]
    fn veronese_specialization_is_cube() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let coeffs: Vec<i64> = (0..5).map(|_| rng.gen_range(-15..=15)).collect();
            let f = bf(&coeffs);
            let pair = pair_from_binary_quartic(&f).unwrap();
            // sub-checks from the construction
            let qa_special = veronese_specialize_quadratic(&pair.a);
            assert!(qa_special.is_zero(), "q_A1 at (x²,xy,y²) must vanish");
            let qb_special = veronese_specialize_quadratic(&pair.b);
            assert_eq!(qb_special, f, "q_BF at (x²,xy,y²) must equal F");
            let sextic = pair.quartic_index_form().unwrap();
            assert_eq!(sextic.specialize_veronese(), f.pow3(), "form {f}");
        }
    }

    /// q(x², xy, y²) as a binary quartic.
    fn veronese_specialize_quadratic(q: &TernaryQuadraticForm) -> BinaryForm {
        let mut out = vec![BigInt::zero(); 5];
        // x₁ = x², x₂ = xy, x₃ = y²
        out[0] += &q.c11;
        out[1] += &q.c12;
        out[2] += &q.c22;
        out[2] += &q.c13;
        out[3] += &q.c23;
        out[4] += &q.c33;
        BinaryForm::new(out)
    }

    #[test]
    fn square_value_gives_unit_representation() {
        // If F(a, b) = c² ≠ 0 then the sextic takes value c⁶·… scaled by
        // z = c: over Q, f_Q(c⁻¹(a², ab, b²)) = 1. Check the integral identity
        // f_Q(a², ab, b²) = F(a,b)³ = c⁶.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut found = 0;
        while found < 50 {
            let coeffs: Vec<i64> = (0..5).map(|_| rng.gen_range(-6..=6)).collect();
            let f = bf(&coeffs);
            let a = BigInt::from(rng.gen_range(-6i64..=6));
            let b = BigInt::from(rng.gen_range(-6i64..=6));
            let v = f.evaluate(&a, &b);
            if v.is_zero() {
                continue;
            }
            let Some(c) = crate::arith::perfect_sqrt(i64::try_from(&v).unwrap_or(-1)) else {
                continue;
            };
            let pair = pair_from_binary_quartic(&f).unwrap();
            let sextic = pair.quartic_index_form().unwrap();
            let val = sextic.evaluate(&(&a * &a), &(&a * &b), &(&b * &b));
            assert_eq!(val, v.pow(3));
            assert_eq!(val, BigInt::from(c).pow(6));
            found += 1;
        }
    }

    #[test]
    fn serialization_round_trip() {
        let f = bf(&[4, -3, 0, 17]);
        let s = f.to_string();
        assert_eq!(s, "3:4,-3,0,17");
        assert_eq!(s.parse::<BinaryForm>().unwrap(), f);
        let q = TernaryQuadraticForm::new(1, -1, 0, 3, 0, -7);
        let qs = q.to_string();
        assert_eq!(qs.parse::<TernaryQuadraticForm>().unwrap(), q);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn binary_form_text_round_trips(coeffs in proptest::collection::vec(-1000i64..1000, 2..8)) {
                let f = BinaryForm::from_i64(&coeffs);
                prop_assert_eq!(f.to_string().parse::<BinaryForm>().unwrap(), f);
            }

            #[test]
            fn tqf_text_round_trips(c in proptest::collection::vec(-1000i64..1000, 6)) {
                let q = TernaryQuadraticForm::new(c[0], c[1], c[2], c[3], c[4], c[5]);
                prop_assert_eq!(q.to_string().parse::<TernaryQuadraticForm>().unwrap(), q);
            }

            #[test]
            fn evaluation_is_homogeneous(
                coeffs in proptest::collection::vec(-50i64..50, 3..6),
                x in -20i64..20, y in -20i64..20, lam in -6i64..6,
            ) {
                let f = BinaryForm::from_i64(&coeffs);
                let n = f.degree() as u32;
                let (x, y, lam) = (BigInt::from(x), BigInt::from(y), BigInt::from(lam));
                prop_assert_eq!(
                    f.evaluate(&(&lam * &x), &(&lam * &y)),
                    lam.pow(n) * f.evaluate(&x, &y)
                );
            }
        }
    }

    #[test]
    fn tqf_matrix_view_is_exact() {
        let q = TernaryQuadraticForm::new(2, 3, 5, 1, 7, -1);
        // q(e_i) = c_ii
        assert_eq!(q.evaluate(&1.into(), &0.into(), &0.into()), BigInt::from(2));
        assert_eq!(q.evaluate(&0.into(), &1.into(), &0.into()), BigInt::from(3));
        assert_eq!(q.evaluate(&0.into(), &0.into(), &1.into()), BigInt::from(5));
        // vᵀMv = q(v) exactly in rational arithmetic
        let m = q.matrix();
        let v = [BigInt::from(2), BigInt::from(-3), BigInt::from(4)];
        let mut quad = BigRational::zero();
        for i in 0..3 {
            for j in 0..3 {
                quad += &m[i][j]
                    * BigRational::from_integer(v[i].clone())
                    * BigRational::from_integer(v[j].clone());
            }
        }
        assert_eq!(
            quad,
            BigRational::from_integer(q.evaluate(&v[0], &v[1], &v[2]))
        );
    }
}
