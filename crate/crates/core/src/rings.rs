//! Rings attached to binary forms: the invariant order R_F with its explicit
//! Z-basis and structure constants, cubic index forms, p-maximality of binary
//! cubics, and bounded unit searches in cubic orders.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::det_bigint;
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, TernaryQuadraticForm, TqfPair};
use crate::realroots::{isolate_real_roots, QPoly};

/// The invariant order R_F of a binary form F of rank n, with the basis
/// (1, a₀θ, a₀θ² + a₁θ, …) and integral structure constants, oriented by the
/// canonical generator of the top exterior power (stored as the sign +1 on
/// the ascending basis wedge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryRing {
    rank: usize,
    defining_form: BinaryForm,
    /// table[i][j] = coordinates of basis_i · basis_j in the basis
    table: Vec<Vec<Vec<BigInt>>>,
    orientation: i8,
}

impl BinaryRing {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn defining_form(&self) -> &BinaryForm {
        &self.defining_form
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// Structure constant c_{ijk}: coefficient of basis_k in basis_i·basis_j.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.table[i][j][k]
    }

    /// Product of two coordinate vectors in the ring.
    pub fn multiply(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let n = self.rank;
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for k in 0..n {
                    out[k] += &uv * &self.table[i][j][k];
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `u` on the basis (columns are u·basis_j).
    fn mult_matrix(&self, u: &[BigInt]) -> Vec<Vec<BigInt>> {
        let n = self.rank;
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let col = self.multiply(u, &e);
            for (k, row) in m.iter_mut().enumerate() {
                row[j] = col[k].clone();
            }
        }
        m
    }

    /// Trace of the multiplication-by-u endomorphism.
    pub fn trace(&self, u: &[BigInt]) -> BigInt {
        let m = self.mult_matrix(u);
        let mut t = BigInt::zero();
        for (i, row) in m.iter().enumerate() {
            t += &row[i];
        }
        t
    }

    /// Norm of u: determinant of multiplication by u.
    pub fn norm(&self, u: &[BigInt]) -> BigInt {
        det_bigint(&self.mult_matrix(u))
    }

    /// Discriminant via the determinant of the trace pairing Tr(bᵢbⱼ).
    pub fn discriminant(&self) -> BigInt {
        let n = self.rank;
        let mut gram = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut ei = vec![BigInt::zero(); n];
                ei[i] = BigInt::one();
                let mut ej = vec![BigInt::zero(); n];
                ej[j] = BigInt::one();
                let prod = self.multiply(&ei, &ej);
                gram[i][j] = self.trace(&prod);
            }
        }
        det_bigint(&gram)
    }

    /// Verify commutativity, associativity and unitality of the table by a
    /// finite check over all basis triples.
    pub fn verify_table(&self) -> bool {
        let n = self.rank;
        let basis: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                e
            })
            .collect();
        // identity
        for j in 0..n {
            if self.multiply(&basis[0], &basis[j]) != basis[j] {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.multiply(&basis[i], &basis[j]) != self.multiply(&basis[j], &basis[i]) {
                    return false;
                }
                for k in 0..n {
                    let left = self.multiply(&self.multiply(&basis[i], &basis[j]), &basis[k]);
                    let right = self.multiply(&basis[i], &self.multiply(&basis[j], &basis[k]));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Serialize as a header line `rank n; form deg:a_0,…` followed by the
    /// n³ structure constants in row-major order.
    pub fn serialize(&self) -> String {
        let mut s = format!("rank {}; form {}\n", self.rank, self.defining_form);
        let mut first = true;
        for i in 0..self.rank {
            for j in 0..self.rank {
                for k in 0..self.rank {
                    if !first {
                        s.push(' ');
                    }
                    s.push_str(&self.table[i][j][k].to_string());
                    first = false;
                }
            }
        }
        s
    }
}

impl fmt::Display for BinaryRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Element of Q[θ]/(F(θ,1)) as rational coordinates on the power basis.
fn poly_mul_mod(
    u: &[BigRational],
    v: &[BigRational],
    minpoly_monic: &[BigRational], // coefficients of θⁿ = Σ m_i θ^i, lowest first, length n
) -> Vec<BigRational> {
    let n = minpoly_monic.len();
    let mut prod = vec![BigRational::zero(); 2 * n - 1];
    for (i, a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in v.iter().enumerate() {
            let idx = i + j;
            let t = a * b;
            prod[idx] += t;
        }
    }
    // reduce degrees ≥ n using θⁿ = Σ m_i θ^i
    for d in (n..2 * n - 1).rev() {
        if prod[d].is_zero() {
            continue;
        }
        let c = prod[d].clone();
        prod[d] = BigRational::zero();
        for i in 0..n {
            let v = &prod[d - n + i] + &c * &minpoly_monic[i];
            prod[d - n + i] = v;
        }
    }
    prod.truncate(n);
    prod
}

/// Construct the invariant order R_F of a binary form of degree 3 or 4.
///
/// Requires a₀ ≠ 0 and nonzero discriminant. The products of the basis
/// elements are computed inside Q[θ]/(F(θ,1)) and re-expressed in the basis;
/// every coordinate must come out integral.
pub fn binary_ring(form: &BinaryForm) -> Result<BinaryRing> {
    let n = form.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall(n, 2));
    }
    if form.coeff(0).is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    if form.discriminant()?.is_zero() {
        return Err(Error::NotSeparable);
    }
    let a: Vec<BigRational> = form
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    // θⁿ = −(a₁θ^{n−1} + … + a_n)/a₀  →  m_i coefficient of θ^i
    let mut minpoly = vec![BigRational::zero(); n];
    for i in 0..n {
        // coefficient of θ^i is −a_{n−i}/a₀
        minpoly[i] = -&a[n - i] / &a[0];
    }
    // basis on the power basis: ω₀ = 1; ω_i = Σ_{j=0}^{i−1} a_j θ^{i−j}
    let mut basis = vec![vec![BigRational::zero(); n]; n];
    basis[0][0] = BigRational::one();
    for i in 1..n {
        for j in 0..i {
            let v = &basis[i][i - j] + &a[j];
            basis[i][i - j] = v;
        }
    }
    // change of basis: solve for coordinates of arbitrary power-basis vectors
    let bmat: Vec<Vec<BigRational>> = (0..n)
        .map(|r| (0..n).map(|c| basis[c][r].clone()).collect())
        .collect();
    let mut table = vec![vec![vec![BigInt::zero(); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = poly_mul_mod(&basis[i], &basis[j], &minpoly);
            let coords = crate::arith::solve_rational(&bmat, &prod)?;
            let mut int_coords = Vec::with_capacity(n);
            for c in &coords {
                if !c.is_integer() {
                    return Err(Error::NonIntegral(format!(
                        "structure constant {c} for basis product ({i},{j})"
                    )));
                }
                int_coords.push(c.to_integer());
            }
            table[i][j] = int_coords.clone();
            table[j][i] = int_coords;
        }
    }
    Ok(BinaryRing {
        rank: n,
        defining_form: form.clone(),
        table,
        orientation: 1,
    })
}

/// Unimodular change of variable making the leading coefficient nonzero.
/// Returns the matrix and the shifted form.
pub fn move_root_off_infinity(form: &BinaryForm) -> Result<([[i64; 2]; 2], BinaryForm)> {
    if !form.coeff(0).is_zero() {
        return Ok(([[1, 0], [0, 1]], form.clone()));
    }
    if form.is_zero() {
        return Err(Error::NotSeparable);
    }
    // leading coefficient of F((x,y)g) is F(g₁₁, g₁₂); search small coprime
    // (u, v) with F(u, v) ≠ 0 and complete to a unimodular matrix.
    for height in 1i64..=8 {
        for u in -height..=height {
            for v in -height..=height {
                if num_integer::gcd(u, v) != 1 {
                    continue;
                }
                if form.evaluate(&u.into(), &v.into()).is_zero() {
                    continue;
                }
                let (_, s, t) = crate::arith::ext_gcd(u, v);
                // rows (u, v) and (−t, s) have determinant u·s + v·t = ±1
                let g = [[u, v], [-t, s]];
                let shifted = form.gl2_act(&g)?;
                if !shifted.coeff(0).is_zero() {
                    return Ok((g, shifted));
                }
            }
        }
    }
    Err(Error::NotSeparable)
}

/// The seed pair (A₁, B_F) of a binary quartic F = a x⁴ + b x³y + c x²y² +
/// d xy³ + e y⁴: A₁ has c₁₃ = 1, c₂₂ = −1; B_F carries the coefficients of F.
pub fn pair_from_binary_quartic(form: &BinaryForm) -> Result<TqfPair> {
    if form.degree() != 4 {
        return Err(Error::DegreeTooSmall(form.degree(), 4));
    }
    let mut a1 = TernaryQuadraticForm::zero();
    a1.c13 = BigInt::one();
    a1.c22 = -BigInt::one();
    let b = TernaryQuadraticForm {
        c11: form.coeff(0).clone(),
        c12: form.coeff(1).clone(),
        c22: form.coeff(2).clone(),
        c23: form.coeff(3).clone(),
        c33: form.coeff(4).clone(),
        c13: BigInt::zero(),
    };
    Ok(TqfPair::new(a1, b))
}

/// A cubic ring with a chosen basis together with its index form.
#[derive(Debug, Clone)]
pub struct CubicRingWithBasis {
    pub ring: BinaryRing,
    pub index_form: BinaryForm,
}

impl CubicRingWithBasis {
    pub fn from_ring(ring: BinaryRing) -> Result<Self> {
        let index_form = cubic_index_form(&ring)?;
        Ok(CubicRingWithBasis { ring, index_form })
    }
}

/// Index form of a rank-3 ring with basis (1, ω, θ): the binary cubic f with
/// 1 ∧ (xω + yθ) ∧ (xω + yθ)² = f(x, y) · (1 ∧ ω ∧ θ).
pub fn cubic_index_form(ring: &BinaryRing) -> Result<BinaryForm> {
    if ring.rank() != 3 {
        return Err(Error::DegreeTooSmall(ring.rank(), 3));
    }
    let e1 = [BigInt::zero(), BigInt::one(), BigInt::zero()];
    let e2 = [BigInt::zero(), BigInt::zero(), BigInt::one()];
    // α = xω + yθ; α² = x²ω² + 2xy ωθ + y²θ², all expressed on (1, ω, θ).
    let w2 = ring.multiply(&e1, &e1);
    let wt = ring.multiply(&e1, &e2);
    let t2 = ring.multiply(&e2, &e2);
    // f(x, y) = α_ω · (α²)_θ − α_θ · (α²)_ω  with
    //   α_ω = x, α_θ = y,
    //   (α²)_ω = x² w2[1] + 2xy wt[1] + y² t2[1]
    //   (α²)_θ = x² w2[2] + 2xy wt[2] + y² t2[2]
    let two = BigInt::from(2);
    // coefficients of x³, x²y, xy², y³
    let c0 = w2[2].clone();
    let c1 = &two * &wt[2] - &w2[1];
    let c2 = &t2[2] - &two * &wt[1];
    let c3 = -t2[1].clone();
    Ok(BinaryForm::new(vec![c0, c1, c2, c3]))
}

/// p-maximality of the cubic ring R_f: non-maximal at p iff p divides every
/// coefficient, or some repeated root of f mod p, moved to (1:0), exposes
/// p² | a₀ and p | a₁.
pub fn maximality_test_cubic(form: &BinaryForm, p: u64) -> Result<bool> {
    if form.degree() != 3 {
        return Err(Error::DegreeTooSmall(form.degree(), 3));
    }
    let disc = form.discriminant()?;
    if disc.is_zero() {
        return Err(Error::NotSeparable);
    }
    let pb = BigInt::from(p);
    if form.coeffs().iter().all(|c| (c % &pb).is_zero()) {
        return Ok(false);
    }
    // index² divides the discriminant, so only p with p² | disc can obstruct
    if !(&disc % (&pb * &pb)).is_zero() {
        return Ok(true);
    }
    for (r, s) in projective_double_roots(form, p) {
        // move (r : s) to (1 : 0): first row (r, s), completed unimodularly
        let (_, u, v) = crate::arith::ext_gcd(r as i64, s as i64);
        let g = [[r as i64, s as i64], [-v, u]];
        let shifted = form.gl2_act(&g)?;
        let a0 = shifted.coeff(0);
        let a1 = shifted.coeff(1);
        if (a0 % (&pb * &pb)).is_zero() && (a1 % &pb).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projective roots of f mod p of multiplicity ≥ 2, as coprime pairs (r, s).
fn projective_double_roots(form: &BinaryForm, p: u64) -> Vec<(u64, u64)> {
    let n = form.degree();
    let reduce = |c: &BigInt| -> u64 {
        let m = c % BigInt::from(p);
        let m = if m.sign() == num_bigint::Sign::Minus {
            m + BigInt::from(p)
        } else {
            m
        };
        u64::try_from(m).unwrap()
    };
    let coeffs: Vec<u64> = form.coeffs().iter().map(reduce).collect();
    let eval = |r: u64, s: u64| -> u64 {
        let mut total = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            let mut term = c % p;
            for _ in 0..(n - i) {
                term = term * (r % p) % p;
            }
            for _ in 0..i {
                term = term * (s % p) % p;
            }
            total = (total + term) % p;
        }
        total
    };
    // derivative in the direction transverse to the root tests multiplicity:
    // (r:s) has multiplicity ≥ 2 iff both partials vanish there.
    let eval_partial = |r: u64, s: u64, wrt_x: bool| -> u64 {
        let mut total = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            let (dx, dy) = (n - i, i);
            let (mult, ex, ey) = if wrt_x {
                if dx == 0 {
                    continue;
                }
                (dx as u64, dx - 1, dy)
            } else {
                if dy == 0 {
                    continue;
                }
                (dy as u64, dx, dy - 1)
            };
            let mut term = c * (mult % p) % p;
            for _ in 0..ex {
                term = term * (r % p) % p;
            }
            for _ in 0..ey {
                term = term * (s % p) % p;
            }
            total = (total + term) % p;
        }
        total
    };
    let mut out = Vec::new();
    let mut pts: Vec<(u64, u64)> = (0..p).map(|r| (r, 1)).collect();
    pts.push((1, 0));
    for (r, s) in pts {
        if eval(r, s) == 0 && eval_partial(r, s, true) == 0 && eval_partial(r, s, false) == 0 {
            out.push((r, s));
        }
    }
    out
}

/// A unit of a cubic order: coordinates, norm, and the signs of the real
/// embeddings (empty when the field has one real embedding).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicOrderUnit {
    pub coords: [i64; 3],
    pub norm: i8,
    pub signature: Vec<i8>,
}

/// All units of |coordinates| ≤ height in the order, found by brute force.
/// Norms are exact; signatures come from exact sign evaluation at the
/// isolated real roots. Results are sorted lexicographically by coordinates.
pub fn unit_search(ring: &CubicRingWithBasis, height: i64) -> Result<Vec<CubicOrderUnit>> {
    let form = ring.ring.defining_form().clone();
    if is_reducible_cubic(&form) {
        return Err(Error::ReducibleForm);
    }
    let roots = isolate_real_roots(form.coeffs());
    let totally_real = roots.len() == 3;
    // basis elements as polynomials in θ for signature evaluation:
    // ω₁ = a₀θ, ω₂ = a₀θ² + a₁θ
    let a0 = form.coeff(0).clone();
    let a1 = form.coeff(1).clone();
    let mut out = Vec::new();
    for u0 in -height..=height {
        for u1 in -height..=height {
            for u2 in -height..=height {
                let u = [BigInt::from(u0), BigInt::from(u1), BigInt::from(u2)];
                let norm = ring.ring.norm(&u);
                let is_unit = norm == BigInt::one() || norm == -BigInt::one();
                if !is_unit {
                    continue;
                }
                let norm_sign = if norm == BigInt::one() { 1i8 } else { -1 };
                let signature = if totally_real {
                    // u(θ) = u0 + u1·a0·θ + u2·(a0θ² + a1θ)
                    let poly = QPoly::from_int_desc(&[
                        &u[2] * &a0,
                        &u[1] * &a0 + &u[2] * &a1,
                        u[0].clone(),
                    ]);
                    let mut signs = Vec::with_capacity(3);
                    for r in &roots {
                        let mut r = r.clone();
                        let s = r.sign_of(&poly);
                        debug_assert!(s != 0, "unit cannot vanish at a root");
                        signs.push(s as i8);
                    }
                    signs
                } else {
                    Vec::new()
                };
                out.push(CubicOrderUnit {
                    coords: [u0, u1, u2],
                    norm: norm_sign,
                    signature,
                });
            }
        }
    }
    out.sort_by_key(|u| u.coords);
    Ok(out)
}

/// Reducibility over Q of a binary cubic: a rational root of f(x,1) or a
/// vanishing leading coefficient.
pub fn is_reducible_cubic(form: &BinaryForm) -> bool {
    debug_assert_eq!(form.degree(), 3);
    if form.coeff(0).is_zero() || form.coeff(3).is_zero() {
        return true;
    }
    // rational root p/q needs p | a₃·sign and q | a₀
    let a0 = form.coeff(0);
    let a3 = form.coeff(3);
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let nn = u64::try_from(&n).unwrap_or(u64::MAX);
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= nn {
            if nn % d == 0 {
                out.push(BigInt::from(d));
                out.push(BigInt::from(nn / d));
            }
            d += 1;
        }
        out
    };
    for p in divisors(a3) {
        for q in divisors(a0) {
            for sgn in [1i64, -1] {
                let num = &p * BigInt::from(sgn);
                // f(num, q) = 0 ⇔ num/q is a root
                if form.evaluate(&num, &q).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Heuristic count of the nonzero norm-one square classes of units seen up to
/// the given height: signatures separate classes in the totally real case;
/// in the complex case any non-trivial norm-one unit witnesses the single
/// class. Used in examples only.
pub fn norm_one_square_class_count(ring: &CubicRingWithBasis, height: i64) -> Result<usize> {
    let units = unit_search(ring, height)?;
    let disc = ring.ring.defining_form().discriminant()?;
    if disc > BigInt::zero() {
        let mut signatures: Vec<Vec<i8>> = units
            .iter()
            .filter(|u| u.norm == 1)
            .map(|u| u.signature.clone())
            .collect();
        signatures.sort();
        signatures.dedup();
        Ok(signatures.len().saturating_sub(1))
    } else {
        let nontrivial = units.iter().any(|u| {
            u.norm == 1 && !(u.coords == [1, 0, 0] || u.coords == [-1, 0, 0])
        });
        Ok(usize::from(nontrivial))
    }
}

/// Find h ∈ GL₃(Z) with h·A·hᵀ the seed matrix A₁, for a ternary quadratic A
/// with 4·det(A) = 1. Constructive: find an isotropic vector, a hyperbolic
/// complement and the orthogonal axis vector.
pub fn rebase_to_seed(a: &TernaryQuadraticForm) -> Option<[[i64; 3]; 3]> {
    let four_det = a.four_det();
    if four_det != BigRational::from_integer(BigInt::one()) {
        return None;
    }
    let q = |v: [i64; 3]| -> BigInt {
        a.evaluate(&v[0].into(), &v[1].into(), &v[2].into())
    };
    // doubled bilinear form: b2(u, v) = q(u+v) − q(u) − q(v)
    let b2 = |u: [i64; 3], v: [i64; 3]| -> BigInt {
        q([u[0] + v[0], u[1] + v[1], u[2] + v[2]]) - q(u) - q(v)
    };
    let primitive = |v: [i64; 3]| -> bool {
        let g = num_integer::gcd(num_integer::gcd(v[0], v[1]), v[2]);
        g == 1
    };
    for bound in 1i64..=12 {
        let range = -bound..=bound;
        for x in range.clone() {
            for y in range.clone() {
                for z in range.clone() {
                    let v1 = [x, y, z];
                    if v1 == [0, 0, 0] || !primitive(v1) || !q(v1).is_zero() {
                        continue;
                    }
                    // hyperbolic partner: b2(v1, w) = 1
                    'partner: for wx in -bound..=bound {
                        for wy in -bound..=bound {
                            for wz in -bound..=bound {
                                let w = [wx, wy, wz];
                                if b2(v1, w) != BigInt::one() {
                                    continue;
                                }
                                // make w isotropic: q(w + λv1) = q(w) + λ·b2(v1,w) = q(w) + λ
                                let lam = -q(w);
                                let lam: i64 = match i64::try_from(&lam) {
                                    Ok(l) => l,
                                    Err(_) => continue,
                                };
                                let v3 = [w[0] + lam * x, w[1] + lam * y, w[2] + lam * z];
                                // orthogonal axis: integral kernel vector of
                                // the two linear forms b2(v1,·), b2(v3,·)
                                let Some(v2) = orthogonal_axis(&b2, v1, v3) else {
                                    continue 'partner;
                                };
                                if q(v2) != -BigInt::one() {
                                    continue;
                                }
                                let h = [v1, v2, v3];
                                if mat3_det(&h).abs() == 1 {
                                    // rows (v1, v2, v3): h A hᵀ should be A₁
                                    let transformed = a.transform(&h);
                                    let seed = seed_matrix();
                                    if transformed == seed {
                                        return Some(h);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn seed_matrix() -> TernaryQuadraticForm {
    let mut a1 = TernaryQuadraticForm::zero();
    a1.c13 = BigInt::one();
    a1.c22 = -BigInt::one();
    a1
}

fn orthogonal_axis(
    b2: &dyn Fn([i64; 3], [i64; 3]) -> BigInt,
    v1: [i64; 3],
    v3: [i64; 3],
) -> Option<[i64; 3]> {
    // coefficients of the two linear forms on e₁,e₂,e₃
    let row = |v: [i64; 3]| -> [i64; 3] {
        let e = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut r = [0i64; 3];
        for (i, ei) in e.iter().enumerate() {
            r[i] = i64::try_from(&b2(v, *ei)).ok().unwrap_or(i64::MAX);
        }
        r
    };
    let r1 = row(v1);
    let r3 = row(v3);
    // kernel direction = cross product, made primitive
    let cross = [
        r1[1] * r3[2] - r1[2] * r3[1],
        r1[2] * r3[0] - r1[0] * r3[2],
        r1[0] * r3[1] - r1[1] * r3[0],
    ];
    if cross == [0, 0, 0] {
        return None;
    }
    let g = num_integer::gcd(num_integer::gcd(cross[0], cross[1]), cross[2]).abs();
    Some([cross[0] / g, cross[1] / g, cross[2] / g])
}

fn mat3_det(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Search the GL₂(Z) orbit (twisted action, signs included) for a matrix of
/// entries bounded by `height` carrying `f` to `g`. Ties are broken by
/// lexicographic order on the matrix entries.
pub fn gl2_equivalent(f: &BinaryForm, g: &BinaryForm, height: i64) -> Option<[[i64; 2]; 2]> {
    if f.degree() != g.degree() {
        return None;
    }
    let mut candidates = Vec::new();
    for a in -height..=height {
        for b in -height..=height {
            for c in -height..=height {
                for d in -height..=height {
                    let det = a * d - b * c;
                    if det != 1 && det != -1 {
                        continue;
                    }
                    candidates.push([[a, b], [c, d]]);
                }
            }
        }
    }
    candidates.sort();
    for m in candidates {
        let tf = f.gl2_act(&m).ok()?;
        // twisted action divides by det; for odd degree this flips the sign
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let twisted = if det == -1 { tf.neg() } else { tf.clone() };
        if &twisted == g || &tf == g {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bf(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c)
    }

    #[test]
    fn monic_cubic_is_power_basis() {
        // f = x³ − xy² − y³, basis (1, θ, θ²)
        let r = binary_ring(&bf(&[1, 0, -1, -1])).unwrap();
        assert!(r.verify_table());
        // θ·θ = θ²: structure constant of basis₁·basis₁ is e₂
        assert_eq!(r.structure_constant(1, 1, 2), &BigInt::one());
        assert!(r.structure_constant(1, 1, 0).is_zero());
        assert!(r.structure_constant(1, 1, 1).is_zero());
        // θ·θ² = θ³ = θ + 1
        assert_eq!(r.structure_constant(1, 2, 0), &BigInt::one());
        assert_eq!(r.structure_constant(1, 2, 1), &BigInt::one());
        assert!(r.structure_constant(1, 2, 2).is_zero());
    }

    #[test]
    fn discriminant_of_ring_matches_form() {
        let f = bf(&[1, 0, 0, 2, 2]);
        let r = binary_ring(&f).unwrap();
        assert_eq!(r.discriminant(), BigInt::from(1616));
        let g = bf(&[2, 3, 4, 5]);
        let rg = binary_ring(&g).unwrap();
        assert_eq!(rg.discriminant(), g.discriminant().unwrap());
    }

    #[test]
    fn random_rings_are_rings_with_matching_discriminant() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut done = 0;
        while done < 500 {
            let deg = if rng.gen_bool(0.5) { 3 } else { 4 };
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-15i64..=15)).collect();
            if coeffs[0] == 0 {
                continue;
            }
            let f = bf(&coeffs);
            let d = f.discriminant().unwrap();
            if d.is_zero() {
                continue;
            }
            let r = binary_ring(&f).unwrap();
            assert!(r.verify_table(), "table axioms for {f}");
            assert_eq!(r.discriminant(), d, "disc for {f}");
            done += 1;
        }
    }

    #[test]
    fn seed_pair_shape() {
        let pair = pair_from_binary_quartic(&bf(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(pair.a.four_det(), BigRational::from_integer(BigInt::one()));
        assert_eq!(pair.b.c11, BigInt::one());
        assert_eq!(pair.b.c33, BigInt::one());
        assert!(pair.b.c12.is_zero() && pair.b.c22.is_zero() && pair.b.c23.is_zero());
    }

    #[test]
    fn index_form_of_monic_cubic_recovers_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut done = 0;
        while done < 100 {
            let coeffs = vec![
                1i64,
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
            ];
            let f = bf(&coeffs);
            if f.discriminant().unwrap().is_zero() {
                continue;
            }
            let r = binary_ring(&f).unwrap();
            let idx = cubic_index_form(&r).unwrap();
            assert!(
                gl2_equivalent(&idx, &f, 3).is_some() || gl2_equivalent(&idx.neg(), &f, 3).is_some(),
                "index form {idx} not equivalent to {f}"
            );
            done += 1;
        }
    }

    #[test]
    fn index_form_of_split_algebra() {
        // Z³ with basis 1 = (1,1,1), ω = (1,0,0), θ = (0,0,1):
        // ω² = ω, θ² = θ, ωθ = 0. Build the table by hand.
        let mut table = vec![vec![vec![BigInt::zero(); 3]; 3]; 3];
        let set = |t: &mut Vec<Vec<Vec<BigInt>>>, i: usize, j: usize, coords: [i64; 3]| {
            t[i][j] = coords.iter().map(|&c| BigInt::from(c)).collect();
            t[j][i] = t[i][j].clone();
        };
        set(&mut table, 0, 0, [1, 0, 0]);
        set(&mut table, 0, 1, [0, 1, 0]);
        set(&mut table, 0, 2, [0, 0, 1]);
        set(&mut table, 1, 1, [0, 1, 0]);
        set(&mut table, 1, 2, [0, 0, 0]);
        set(&mut table, 2, 2, [0, 0, 1]);
        let ring = BinaryRing {
            rank: 3,
            defining_form: bf(&[1, 0, 0, 0]), // placeholder; not used below
            table,
            orientation: 1,
        };
        assert!(ring.verify_table());
        let idx = cubic_index_form(&ring).unwrap();
        // direct wedge computation gives xy² − x²y = −xy(x − y) ~ xy(x+y)
        let target = bf(&[0, 1, 1, 0]); // x²y + xy²  = xy(x+y)
        assert!(
            gl2_equivalent(&idx, &target, 2).is_some()
                || gl2_equivalent(&idx.neg(), &target, 2).is_some()
        );
    }

    #[test]
    fn seed_resolvent_has_unit_index_value() {
        // f_R(1,0) = 4·det(A₁) = 1 for every seed pair
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let coeffs: Vec<i64> = (0..5).map(|_| rng.gen_range(-10..=10)).collect();
            let pair = pair_from_binary_quartic(&bf(&coeffs)).unwrap();
            let r = pair.resolvent_form().unwrap();
            assert_eq!(r.evaluate(&1.into(), &0.into()), BigInt::one());
        }
    }

    #[test]
    fn maximality_examples() {
        // squarefree discriminant ⇒ maximal at every p
        let f = bf(&[1, 0, -1, -1]); // disc −23
        for p in [2u64, 3, 5, 7, 23] {
            assert!(maximality_test_cubic(&f, p).unwrap());
        }
        // p²x³ + pxy² + y³ is non-maximal at p
        for p in [2u64, 3, 5] {
            let g = bf(&[(p * p) as i64, 0, p as i64, 1]);
            assert!(!maximality_test_cubic(&g, p).unwrap());
        }
    }

    #[test]
    fn unit_search_finds_obvious_units() {
        let f = bf(&[1, 0, -1, -1]); // disc −23, θ a unit
        let ring = CubicRingWithBasis::from_ring(binary_ring(&f).unwrap()).unwrap();
        let units = unit_search(&ring, 2).unwrap();
        let coords: Vec<[i64; 3]> = units.iter().map(|u| u.coords).collect();
        assert!(coords.contains(&[1, 0, 0]));
        assert!(coords.contains(&[-1, 0, 0]));
        assert!(coords.contains(&[0, 1, 0]), "θ must be a unit");
        let one = units.iter().find(|u| u.coords == [1, 0, 0]).unwrap();
        assert_eq!(one.norm, 1);
        let minus = units.iter().find(|u| u.coords == [-1, 0, 0]).unwrap();
        assert_eq!(minus.norm, -1);
        // complex cubic: empty signatures
        assert!(units.iter().all(|u| u.signature.is_empty()));
    }

    #[test]
    fn unit_search_rejects_reducible() {
        let f = bf(&[1, 0, 0, 0]); // x³
        assert!(binary_ring(&f).is_err());
        let g = bf(&[1, -1, -1, 1]); // (x−y)(x²−y²)-ish: reducible
        assert!(is_reducible_cubic(&g));
    }

    #[test]
    fn square_class_counts_by_sign_of_discriminant() {
        // totally real: x³ + x²y − 2xy² − y³ (disc 49)
        let f = bf(&[1, 1, -2, -1]);
        assert_eq!(f.discriminant().unwrap(), BigInt::from(49));
        let ring = CubicRingWithBasis::from_ring(binary_ring(&f).unwrap()).unwrap();
        assert_eq!(norm_one_square_class_count(&ring, 6).unwrap(), 3);
        // complex: x³ − xy² − y³ (disc −23)
        let g = bf(&[1, 0, -1, -1]);
        let ring_g = CubicRingWithBasis::from_ring(binary_ring(&g).unwrap()).unwrap();
        assert_eq!(norm_one_square_class_count(&ring_g, 8).unwrap(), 1);
    }

    #[test]
    fn rebase_random_conjugates_of_seed() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let seed = seed_matrix();
        let mut done = 0;
        while done < 25 {
            // random small unimodular g: product of elementary row operations
            let mut g = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
            for _ in 0..3 {
                let i = rng.gen_range(0..3);
                let j = rng.gen_range(0..3);
                if i == j {
                    continue;
                }
                let k = rng.gen_range(-1i64..=1);
                for c in 0..3 {
                    g[i][c] += k * g[j][c];
                }
            }
            let a = seed.transform(&g);
            if a == seed {
                continue;
            }
            let h = rebase_to_seed(&a).expect("rebase must succeed for conjugates of the seed");
            assert_eq!(a.transform(&h), seed);
            done += 1;
        }
    }

    #[test]
    fn monogenic_point_descends_to_resolvent() {
        // wherever the sextic takes value 1, the resolvent cubic takes value 1
        // at (q_B, −q_A) of the same point.
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let mut found = 0;
        while found < 10 {
            let coeffs: Vec<i64> = (0..5).map(|_| rng.gen_range(-4..=4)).collect();
            let f = bf(&coeffs);
            let pair = pair_from_binary_quartic(&f).unwrap();
            let Ok(sextic) = pair.quartic_index_form() else { continue };
            let resolvent = pair.resolvent_form().unwrap();
            for x in -3i64..=3 {
                for y in -3i64..=3 {
                    for z in -3i64..=3 {
                        let (bx, by, bz) = (BigInt::from(x), BigInt::from(y), BigInt::from(z));
                        if sextic.evaluate(&bx, &by, &bz) == BigInt::one() {
                            let u = pair.b.evaluate(&bx, &by, &bz);
                            let v = -pair.a.evaluate(&bx, &by, &bz);
                            assert_eq!(resolvent.evaluate(&u, &v), BigInt::one());
                            found += 1;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn serialization_header() {
        let r = binary_ring(&bf(&[1, 0, -1, -1])).unwrap();
        let s = r.serialize();
        assert!(s.starts_with("rank 3; form 3:1,0,-1,-1\n"));
        assert_eq!(s.lines().nth(1).unwrap().split_whitespace().count(), 27);
    }
}
