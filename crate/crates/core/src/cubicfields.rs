//! Enumeration of cubic fields of a fixed discriminant by exhaustive scan
//! over reduced integral binary cubic forms.
//!
//! A GL₂(Z)-class of cubics is pinned down by reducing a positive definite
//! quadratic covariant: the Hessian when the discriminant is positive, and a
//! Julia-type root-weighted quadratic when it is negative. Reduction of the
//! covariant confines the coefficients of a class representative to an
//! explicit box, so a scan of the box followed by an exact reducedness test
//! and a small-matrix merge sees every class exactly once. Maximality at the
//! primes whose square divides the discriminant then cuts the list down to
//! the forms of maximal orders, which are in bijection with the cubic fields
//! of that discriminant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::realroots::{isolate_real_roots, QPoly};
use crate::rings::{gl2_equivalent, is_reducible_cubic, maximality_test_cubic};

/// Largest |D| the exhaustive scan accepts.
const DISCRIMINANT_CAP: i64 = 20_000_000;

/// Canonical class representatives of the irreducible maximal binary cubics
/// of discriminant exactly `discriminant`.
#[derive(Debug, Clone)]
pub struct CubicFieldEnumeration {
    pub discriminant: i64,
    pub forms: Vec<BinaryForm>,
}

impl CubicFieldEnumeration {
    pub fn count(&self) -> u64 {
        self.forms.len() as u64
    }
}

/// Number of cubic fields of discriminant exactly `d`, by complete
/// enumeration of reduced forms. Works for either sign of `d`.
pub fn count_cubic_fields_by_enumeration(d: i64) -> Result<CubicFieldEnumeration> {
    if d == 0 {
        return Err(Error::NotSeparable);
    }
    if d.abs() > DISCRIMINANT_CAP {
        return Err(Error::TooLarge(format!(
            "|{d}| exceeds the enumeration cap {DISCRIMINANT_CAP}"
        )));
    }
    let candidates = if d > 0 {
        enumerate_reduced_real(d)
    } else {
        enumerate_reduced_complex(d)?
    };
    // keep maximal forms only
    let bad_primes = primes_with_square_dividing(d);
    let mut maximal: Vec<BinaryForm> = Vec::new();
    'forms: for f in candidates {
        for &p in &bad_primes {
            if !maximality_test_cubic(&f, p)? {
                continue 'forms;
            }
        }
        maximal.push(f);
    }
    let forms = merge_gl2_classes(maximal);
    Ok(CubicFieldEnumeration {
        discriminant: d,
        forms,
    })
}

fn primes_with_square_dividing(d: i64) -> Vec<u64> {
    let mut n = d.unsigned_abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e >= 2 {
                out.push(p);
            }
        }
        p += 1;
    }
    out
}

/// Integer square root test on a nonnegative i128.
fn perfect_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Both integer roots d of Disc(a, b, c, d) = target, if any.
fn solve_disc_for_d(a: i64, b: i64, c: i64, target: i64) -> Vec<i64> {
    // Disc = −27a²·d² + (18abc − 4b³)·d + (b²c² − 4ac³): quadratic in d.
    let (ai, bi, ci) = (a as i128, b as i128, c as i128);
    let alpha = -27 * ai * ai;
    let beta = 18 * ai * bi * ci - 4 * bi * bi * bi;
    let gamma = bi * bi * ci * ci - 4 * ai * ci * ci * ci - target as i128;
    let delta = beta * beta - 4 * alpha * gamma;
    let Some(s) = perfect_sqrt_i128(delta) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for sign in [1i128, -1] {
        let num = -beta + sign * s;
        let den = 2 * alpha;
        if num % den == 0 {
            let dd = num / den;
            if let Ok(v) = i64::try_from(dd) {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn hessian(f: &BinaryForm) -> (i128, i128, i128) {
    let g = |i: usize| -> i128 { i128::try_from(f.coeff(i)).unwrap() };
    let (a, b, c, d) = (g(0), g(1), g(2), g(3));
    (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)
}

/// Scan the certified box for totally real discriminants and keep the forms
/// whose Hessian is Minkowski reduced.
fn enumerate_reduced_real(d: i64) -> Vec<BinaryForm> {
    let df = d as f64;
    let a_max = (8.0 * df.sqrt() / 27.0).sqrt().ceil() as i64 + 1;
    let b_max = (3.0 * std::f64::consts::SQRT_2 * df.powf(0.25)).ceil() as i64 + 2;
    let mut out = Vec::new();
    for a in 1..=a_max {
        let c_max = (6.0 * df.sqrt() / a as f64).ceil() as i64 + 2;
        for b in -b_max..=b_max {
            for c in -c_max..=c_max {
                for dd in solve_disc_for_d(a, b, c, d) {
                    let f = BinaryForm::from_i64(&[a, b, c, dd]);
                    debug_assert_eq!(f.discriminant().unwrap(), BigInt::from(d));
                    let (p, q, r) = hessian(&f);
                    if p <= 0 || q.abs() > p || p > r {
                        continue;
                    }
                    if is_reducible_cubic(&f) {
                        continue;
                    }
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Scan the certified box for negative discriminants and keep the forms
/// whose Julia covariant is Minkowski reduced.
fn enumerate_reduced_complex(d: i64) -> Result<Vec<BinaryForm>> {
    let abs = (-d) as f64;
    let a_max = ((2.0f64 / 3.0).powf(1.5) * abs.powf(0.25)).ceil() as i64 + 1;
    let b_max = (3.17 * abs.powf(0.25)).ceil() as i64 + 2;
    let c_max = (3.04 * abs.powf(5.0 / 12.0) + 1.16 * abs.powf(1.0 / 3.0)).ceil() as i64 + 2;
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in -b_max..=b_max {
            for c in -c_max..=c_max {
                for dd in solve_disc_for_d(a, b, c, d) {
                    let f = BinaryForm::from_i64(&[a, b, c, dd]);
                    debug_assert_eq!(f.discriminant().unwrap(), BigInt::from(d));
                    if is_reducible_cubic(&f) {
                        continue;
                    }
                    if julia_covariant_is_reduced(&f, d)? {
                        out.push(f);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Element of Q(θ) for θ the real root of the cubic, as coordinates on
/// (1, θ, θ²).
type FieldElt = [BigRational; 3];

struct CubicFieldCtx {
    /// θ³ = r2·θ² + r1·θ + r0
    red3: FieldElt,
    /// θ⁴ = s2·θ² + s1·θ + s0
    red4: FieldElt,
}

impl CubicFieldCtx {
    fn new(a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> Self {
        let red3 = [-(d / a), -(c / a), -(b / a)];
        // θ⁴ = θ·θ³
        let red4 = [
            -(d / a) * &red3[2],
            &red3[0] - (c / a) * &red3[2],
            &red3[1] - (b / a) * &red3[2],
        ];
        CubicFieldCtx { red3, red4 }
    }

    fn mul(&self, u: &FieldElt, v: &FieldElt) -> FieldElt {
        let mut raw = vec![BigRational::zero(); 5];
        for i in 0..3 {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                let t = &u[i] * &v[j];
                raw[i + j] += t;
            }
        }
        let mut out = [raw[0].clone(), raw[1].clone(), raw[2].clone()];
        for k in 0..3 {
            let upd = &out[k] + &raw[3] * &self.red3[k] + &raw[4] * &self.red4[k];
            out[k] = upd;
        }
        out
    }
}

fn elt_add(u: &FieldElt, v: &FieldElt) -> FieldElt {
    [&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2]]
}

fn elt_sub(u: &FieldElt, v: &FieldElt) -> FieldElt {
    [&u[0] - &v[0], &u[1] - &v[1], &u[2] - &v[2]]
}

fn elt_scale(u: &FieldElt, s: &BigRational) -> FieldElt {
    [&u[0] * s, &u[1] * s, &u[2] * s]
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact reducedness of the Julia covariant of a cubic with one real root θ:
///   φ = t²(x − θy)² + u²(x − ζy)(x − ζ̄y),
///   t² = 4a²·Im(ζ)², u² = 2a²·|θ − ζ|².
/// φ is positive definite with disc(φ) = 12·Disc(f), covariant under GL₂, so
/// Minkowski reducedness of φ is a class-canonical predicate on f.
fn julia_covariant_is_reduced(f: &BinaryForm, disc: i64) -> Result<bool> {
    let q = |i: usize| BigRational::from_integer(f.coeff(i).clone());
    let (a, b, c, d) = (q(0), q(1), q(2), q(3));
    let ctx = CubicFieldCtx::new(&a, &b, &c, &d);
    let theta: FieldElt = [rat(0), rat(1), rat(0)];
    // quadratic factor x² − 2ξx + m over the real root: f/a = (x − θ)(x² + px + m)
    let xi: FieldElt = [-(&b / &a) / rat(2), -rat(1) / rat(2), rat(0)];
    let m: FieldElt = [&c / &a, &b / &a, rat(1)]; // |ζ|² = θ² + (b/a)θ + c/a
    let xi2 = ctx.mul(&xi, &xi);
    let eta2 = elt_sub(&m, &xi2);
    let theta2 = ctx.mul(&theta, &theta);
    let theta_xi = ctx.mul(&theta, &xi);
    // ρ² = θ² − 2θξ + |ζ|²
    let rho2 = elt_add(&elt_sub(&theta2, &elt_scale(&theta_xi, &rat(2))), &m);
    let a2 = &a * &a;
    let t2 = elt_scale(&eta2, &(rat(4) * &a2));
    let u2 = elt_scale(&rho2, &(rat(2) * &a2));
    let big_a = elt_add(&t2, &u2);
    let big_b = elt_scale(&elt_add(&ctx.mul(&t2, &theta), &ctx.mul(&u2, &xi)), &rat(-2));
    let big_c = elt_add(&ctx.mul(&t2, &theta2), &ctx.mul(&u2, &m));
    // invariant: B² − 4AC = 12·Disc(f), a rational constant
    let inv = elt_sub(
        &ctx.mul(&big_b, &big_b),
        &elt_scale(&ctx.mul(&big_a, &big_c), &rat(4)),
    );
    if !(inv[1].is_zero() && inv[2].is_zero() && inv[0] == rat(12 * disc)) {
        return Err(Error::NonIntegral(format!(
            "covariant discriminant {:?} differs from 12·{disc} for {f}",
            inv[0]
        )));
    }
    // signs of C − A, A − B, A + B at the unique real root
    let roots = isolate_real_roots(f.coeffs());
    if roots.len() != 1 {
        return Err(Error::NonIntegral(format!(
            "negative discriminant cubic {f} must have one real root"
        )));
    }
    let mut root = roots.into_iter().next().unwrap();
    let as_qpoly = |e: &FieldElt| QPoly::new(vec![e[0].clone(), e[1].clone(), e[2].clone()]);
    let c_minus_a = elt_sub(&big_c, &big_a);
    if root.sign_of(&as_qpoly(&c_minus_a)) < 0 {
        return Ok(false);
    }
    let a_minus_b = elt_sub(&big_a, &big_b);
    if root.sign_of(&as_qpoly(&a_minus_b)) < 0 {
        return Ok(false);
    }
    let a_plus_b = elt_add(&big_a, &big_b);
    if root.sign_of(&as_qpoly(&a_plus_b)) < 0 {
        return Ok(false);
    }
    Ok(true)
}

/// Merge GL₂(Z)-equivalent forms. Both inputs carry reduced covariants, so
/// any equivalence between them is witnessed by a matrix of tiny entries.
fn merge_gl2_classes(forms: Vec<BinaryForm>) -> Vec<BinaryForm> {
    let n = forms.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            if gl2_equivalent(&forms[i], &forms[j], 2).is_some() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut reps: Vec<BinaryForm> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if seen.insert(r) {
            // lexicographically smallest member of the class in the list
            let mut best = forms[i].clone();
            for j in 0..n {
                if find(&mut parent, j) == r && forms[j].coeffs() < best.coeffs() {
                    best = forms[j].clone();
                }
            }
            reps.push(best);
        }
    }
    reps.sort_by(|f, g| f.coeffs().cmp(g.coeffs()));
    reps
}
