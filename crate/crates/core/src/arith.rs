//! Elementary exact integer arithmetic shared by the rest of the crate:
//! Kronecker symbols, fundamental discriminants, sieves, integer square
//! roots and fraction-free determinants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Kronecker symbol (a | m) with the standard conventions at 2, −1 and 0.
pub fn kronecker(a: i64, m: i64) -> i32 {
    if m == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut m = m;
    let mut result = 1i32;
    if m < 0 {
        m = -m;
        if a < 0 {
            result = -result;
        }
    }
    // (a | 2) is 0 for even a and depends on a mod 8 otherwise.
    let tab2 = |x: i64| -> i32 {
        match x.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        }
    };
    while m % 2 == 0 {
        m /= 2;
        if a % 2 == 0 {
            return 0;
        }
        result *= tab2(a);
    }
    // Jacobi symbol on the odd part via quadratic reciprocity.
    a = a.rem_euclid(m);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            result *= tab2(m);
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a = a.rem_euclid(m);
    }
    if m == 1 {
        result
    } else {
        0
    }
}

/// True iff `n` is squarefree. Trial division; intended for desk-scale `n`.
pub fn is_squarefree(n: i64) -> bool {
    let mut n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// True iff `d` is a fundamental discriminant of a quadratic field.
///
/// `d = 1` is excluded: the field must exist.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// Squarefree kernel of `n` together with the square part: `n = kernel · s²`.
pub fn squarefree_decompose(n: i64) -> (i64, i64) {
    assert!(n != 0);
    let sign = n.signum();
    let mut n = n.unsigned_abs();
    let mut kernel = 1i64;
    let mut square = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e % 2 == 1 {
                kernel *= p as i64;
            }
            square *= (p as i64).pow(e / 2);
        }
        p += 1;
    }
    kernel *= n as i64;
    (sign * kernel, square)
}

/// Fundamental discriminant of Q(√n), with the conductor that was stripped:
/// returns `(Δ, s)` where Q(√n) = Q(√Δ) and `n = Δ·s²` up to the usual
/// factor 4 bookkeeping.
pub fn fundamental_discriminant_of_sqrt(n: i64) -> Result<(i64, i64)> {
    if n == 0 {
        return Err(Error::NotADiscriminant(0));
    }
    let (m, s) = squarefree_decompose(n);
    if m == 1 {
        return Err(Error::NotADiscriminant(n));
    }
    if m.rem_euclid(4) == 1 {
        Ok((m, s))
    } else {
        // Δ = 4m; the conductor s picks up the factor that 4m/ n leaves.
        Ok((4 * m, s))
    }
}

/// Boolean sieve of squarefree numbers in `1..=bound`.
pub fn squarefree_sieve(bound: usize) -> Vec<bool> {
    let mut sf = vec![true; bound + 1];
    if !sf.is_empty() {
        sf[0] = false;
    }
    let mut q = 2usize;
    while q * q <= bound {
        let qq = q * q;
        let mut k = qq;
        while k <= bound {
            sf[k] = false;
            k += qq;
        }
        q += 1;
    }
    sf
}

/// Primes up to `bound` by Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let bound = bound as usize;
    let mut is_p = vec![true; bound + 1];
    let mut out = Vec::new();
    for p in 2..=bound {
        if is_p[p] {
            out.push(p as u64);
            let mut k = p * p;
            while k <= bound {
                is_p[k] = false;
                k += p;
            }
        }
    }
    out
}

/// Deterministic primality check by trial division (desk scale).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Floor of the integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x > 0 && x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |s| s <= n) {
        x += 1;
    }
    x
}

/// `Some(r)` iff `n = r²` with `r ≥ 0`.
pub fn perfect_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u64) as i64;
    (r * r == n).then_some(r)
}

/// Exact determinant of a square `BigInt` matrix (Bareiss, fraction-free).
pub fn det_bigint(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search
            let Some(row) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, row);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Solve `A x = b` exactly over the rationals. `A` must be invertible.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Err(Error::NonIntegral("singular matrix in basis change".into()));
        };
        m.swap(k, p);
        rhs.swap(k, p);
        let piv = m[k][k].clone();
        for j in k..n {
            m[k][j] = &m[k][j] / &piv;
        }
        rhs[k] = &rhs[k] / &piv;
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..n {
                    let v = &m[i][j] - &f * &m[k][j];
                    m[i][j] = v;
                }
                rhs[i] = &rhs[i] - &f * &rhs[k];
            }
        }
    }
    Ok(rhs)
}

/// Extended gcd: returns `(g, u, v)` with `g = u·a + v·b`, `g ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_small_table() {
        // squares mod 7 are {1, 2, 4}
        assert_eq!(kronecker(5, 7), -1);
        assert_eq!(kronecker(2, 7), 1);
        for m in -30i64..30 {
            assert_eq!(kronecker(1, m), 1, "m = {m}");
        }
        assert_eq!(kronecker(-23, 2), 1); // −23 ≡ 1 mod 8
        assert_eq!(kronecker(-23, 3), 1);
        assert_eq!(kronecker(-23, 7), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for &p in &[3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in -40i64..40 {
                let e = {
                    let r = a.rem_euclid(p as i64) as u64;
                    if r == 0 {
                        0
                    } else {
                        let mut pow = 1u64;
                        for _ in 0..(p - 1) / 2 {
                            pow = pow * r % p;
                        }
                        if pow == 1 {
                            1
                        } else {
                            -1
                        }
                    }
                };
                assert_eq!(kronecker(a, p as i64), e, "({a}|{p})");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_m() {
        for a in -20i64..20 {
            for m1 in 1i64..15 {
                for m2 in 1i64..15 {
                    assert_eq!(
                        kronecker(a, m1 * m2),
                        kronecker(a, m1) * kronecker(a, m2),
                        "a={a} m1={m1} m2={m2}"
                    );
                }
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(is_fundamental_discriminant(-23));
        assert!(is_fundamental_discriminant(12)); // 4·3, 3 ≡ 3 mod 4 squarefree
        assert!(!is_fundamental_discriminant(45)); // 45 ≡ 1 mod 4 but 9 | 45
        assert!(!is_fundamental_discriminant(1));
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(-8));
        assert!(is_fundamental_discriminant(5));
        assert!(!is_fundamental_discriminant(-12)); // 4·(−3), −3 ≡ 1 mod 4
    }

    #[test]
    fn fundamental_of_sqrt_strips_squares() {
        // Q(√(81·(−23)·36)) = Q(√−23)
        let (d, s) = fundamental_discriminant_of_sqrt(81 * -23 * 36).unwrap();
        assert_eq!(d, -23);
        assert_eq!(s, 54);
        let (d, _) = fundamental_discriminant_of_sqrt(-3 * 73).unwrap();
        assert_eq!(d, -219);
        let (d, _) = fundamental_discriminant_of_sqrt(-3 * 21).unwrap(); // −63 = −9·7
        assert_eq!(d, -7);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let sf = squarefree_sieve(500);
        for n in 1..=500i64 {
            assert_eq!(sf[n as usize], is_squarefree(n), "n = {n}");
        }
    }

    #[test]
    fn bareiss_determinant() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(-1)],
            vec![BigInt::from(0), BigInt::from(5), BigInt::from(4)],
        ];
        // det = 2·(12+5) − 0 + 1·(5−0) = 39
        assert_eq!(det_bigint(&m), BigInt::from(39));
        let singular = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(det_bigint(&singular), BigInt::zero());
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, u, v) = ext_gcd(a, b);
                assert_eq!(g, u * a + v * b);
                assert!(g >= 0);
                if a != 0 || b != 0 {
                    assert_eq!(g, num_integer::gcd(a, b).abs());
                }
            }
        }
    }

    #[test]
    fn isqrt_exact() {
        for n in 0u64..10_000 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(perfect_sqrt(324), Some(18));
        assert_eq!(perfect_sqrt(325), None);
    }
}
