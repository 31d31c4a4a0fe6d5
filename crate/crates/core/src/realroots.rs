//! Exact real-root isolation for integer polynomials via Sturm sequences,
//! and exact sign evaluation of polynomial expressions at isolated roots.
//!
//! Rational interval endpoints only; no floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over Q, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoly {
    pub coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        QPoly { coeffs }
    }

    /// From integer coefficients, highest degree first (form convention).
    pub fn from_int_desc(coeffs: &[BigInt]) -> Self {
        let v: Vec<BigRational> = coeffs
            .iter()
            .rev()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        QPoly::new(v)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::new(vec![BigRational::zero()]);
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Remainder of self / other (other nonzero).
    fn rem(&self, other: &QPoly) -> QPoly {
        assert!(!other.is_zero());
        let d = other.degree();
        if d == 0 {
            return QPoly::new(vec![BigRational::zero()]);
        }
        let lead = other.coeffs[d].clone();
        let mut r = self.coeffs.clone();
        loop {
            while r.len() > 1 && r.last().map_or(false, |c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= d {
                break;
            }
            let k = r.len() - 1;
            let f = &r[k] / &lead;
            for i in 0..=d {
                let idx = k - d + i;
                let v = &r[idx] - &f * &other.coeffs[i];
                r[idx] = v;
            }
            r.pop();
        }
        QPoly::new(r)
    }
}

/// Sturm chain of a squarefree-ish polynomial (repeated gcd factors are fine:
/// the chain then counts distinct roots).
fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let neg = QPoly::new(r.coeffs.iter().map(|c| -c).collect());
        chain.push(neg);
    }
    chain
}

fn sign_variations(chain: &[QPoly], x: &BigRational) -> usize {
    let mut prev = 0i32;
    let mut count = 0usize;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

/// Number of distinct real roots in the half-open interval (a, b].
fn roots_in(chain: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// An isolated real root of an integer polynomial: a rational interval
/// (lo, hi] containing exactly this root, refinable on demand.
#[derive(Debug, Clone)]
pub struct IsolatedRoot {
    pub poly: QPoly,
    chain: Vec<QPoly>,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl IsolatedRoot {
    /// Bisect until the interval has length below `eps`.
    pub fn refine_to(&mut self, eps: &BigRational) {
        while &self.hi - &self.lo > *eps {
            self.bisect();
        }
    }

    fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        if roots_in(&self.chain, &self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Exact sign of q(θ) at this root θ.
    ///
    /// Zero is decided exactly: q(θ) = 0 iff the gcd of q with the defining
    /// polynomial still vanishes on the isolating interval.
    pub fn sign_of(&mut self, q: &QPoly) -> i32 {
        if q.is_zero() {
            return 0;
        }
        // Exact zero test: θ is a root of q iff gcd(p, q) has a root here.
        let g = poly_gcd(&self.poly, q);
        if g.degree() >= 1 {
            let gchain = sturm_chain(&g);
            if roots_in(&gchain, &self.lo, &self.hi) > 0 {
                return 0;
            }
        }
        // q(θ) ≠ 0: bisect until the endpoint values pin the sign. Since q has
        // finitely many roots, the interval eventually excludes them all.
        let qchain = sturm_chain(q);
        loop {
            if roots_in(&qchain, &self.lo, &self.hi) == 0 {
                // q has constant sign on (lo, hi]; evaluate at hi.
                let v = q.eval(&self.hi);
                debug_assert!(!v.is_zero());
                return if v.is_positive() { 1 } else { -1 };
            }
            self.bisect();
        }
    }
}

fn poly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    // monic normalization
    let lead = x.coeffs.last().unwrap().clone();
    if lead.is_zero() {
        return x;
    }
    QPoly::new(x.coeffs.iter().map(|c| c / &lead).collect())
}

/// Isolate all distinct real roots of the integer polynomial with
/// coefficients `coeffs` (highest degree first). Returns roots in
/// ascending order.
pub fn isolate_real_roots(coeffs: &[BigInt]) -> Vec<IsolatedRoot> {
    let p = QPoly::from_int_desc(coeffs);
    if p.degree() == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(&p);
    // Cauchy bound: 1 + max |a_i / a_n|
    let lead = p.coeffs.last().unwrap().clone();
    let mut maxr = BigRational::zero();
    for c in &p.coeffs {
        let r = (c / &lead).abs();
        if r > maxr {
            maxr = r;
        }
    }
    let bound = maxr + BigRational::one();
    let lo = -bound.clone();
    let hi = bound;
    let total = roots_in(&chain, &lo, &hi);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, k)) = stack.pop() {
        if k == 0 {
            continue;
        }
        if k == 1 {
            out.push(IsolatedRoot {
                poly: p.clone(),
                chain: chain.clone(),
                lo: a,
                hi: b,
            });
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        let left = roots_in(&chain, &a, &mid);
        stack.push((a, mid.clone(), left));
        stack.push((mid, b, k - left));
    }
    out.sort_by(|r, s| r.lo.cmp(&s.lo));
    out
}
