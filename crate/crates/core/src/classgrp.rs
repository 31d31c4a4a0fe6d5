//! Imaginary quadratic form class groups: reduced binary quadratic forms
//! under Gaussian composition, 3-torsion, prime ideal classes, S-class
//! quotients, and the ideal-pair count of cubic fields.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::arith::{is_fundamental_discriminant, isqrt, kronecker};
use crate::error::{Error, Result};

/// A primitive positive definite binary quadratic form (a, b, c).
pub type Form = (i64, i64, i64);

/// Largest class number the construction will accept.
const CLASS_NUMBER_CAP: u64 = 200_000;

/// The class group of an imaginary quadratic discriminant as the canonical
/// list of reduced forms with composition.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    pub discriminant: i64,
    pub fundamental: bool,
    elements: Vec<Form>,
    index: HashMap<Form, usize>,
}

/// Reduce a positive definite form to its canonical reduced representative.
pub fn reduce(f: Form) -> Form {
    let (mut a, mut b, mut c) = f;
    debug_assert!(a > 0, "positive definite forms only");
    loop {
        if b > a || b <= -a {
            // normalize: b' ≡ b mod 2a with −a < b' ≤ a
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            let k = (b - r) / two_a;
            // keeps b² − 4ac fixed
            c = c - k * b + k * k * a;
            b = r;
        }
        if a > c {
            (a, c) = (c, a);
            b = -b;
            continue;
        }
        if (a == c || b.abs() == a) && b < 0 {
            b = -b;
        }
        break;
    }
    (a, b, c)
}

fn discriminant_of(f: Form) -> i64 {
    f.1 * f.1 - 4 * f.0 * f.2
}

/// Gaussian/Dirichlet composition followed by reduction.
pub fn compose(f1: Form, f2: Form) -> Form {
    debug_assert_eq!(discriminant_of(f1), discriminant_of(f2));
    let d = discriminant_of(f1) as i128;
    let (a1, b1, _c1) = (f1.0 as i128, f1.1 as i128, f1.2 as i128);
    let (a2, b2, c2) = (f2.0 as i128, f2.1 as i128, f2.2 as i128);
    let s = (b1 + b2) / 2;
    let (g, _u, v, w) = ext_gcd3_i128(a1, a2, s);
    let a3 = a1 / g * (a2 / g);
    let half_diff = (b1 - b2) / 2;
    let inner = v * half_diff - w * c2;
    let mut b3 = b2 + 2 * (a2 / g) * inner;
    let two_a3 = 2 * a3;
    b3 = b3.rem_euclid(two_a3);
    if b3 > a3 {
        b3 -= two_a3;
    }
    debug_assert_eq!((b3 * b3 - d).rem_euclid(4 * a3), 0);
    let c3 = (b3 * b3 - d) / (4 * a3);
    reduce((a3 as i64, b3 as i64, c3 as i64))
}

fn ext_gcd3_i128(a: i128, b: i128, c: i128) -> (i128, i128, i128, i128) {
    let (g1, u1, v1) = ext_gcd_i128(a, b);
    let (g, p, w) = ext_gcd_i128(g1, c);
    (g, p * u1, p * v1, w)
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
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

impl FormClassGroup {
    /// Enumerate the reduced primitive forms of a negative discriminant
    /// ≡ 0, 1 mod 4. Non-fundamental discriminants are accepted and flagged.
    pub fn new(delta: i64) -> Result<FormClassGroup> {
        if delta >= 0 {
            return Err(Error::NotImaginary(delta));
        }
        if !matches!(delta.rem_euclid(4), 0 | 1) {
            return Err(Error::NotADiscriminant(delta));
        }
        let mut elements = Vec::new();
        let abs = (-delta) as u64;
        let a_max = isqrt(abs / 3) as i64;
        for a in 1..=a_max.max(1) {
            for b in (-a + 1)..=a {
                if (b * b - delta).rem_euclid(4 * a) != 0 {
                    continue;
                }
                let c = (b * b - delta) / (4 * a);
                if c < a {
                    continue;
                }
                if a == c && b < 0 {
                    continue;
                }
                if gcd3(a, b, c) != 1 {
                    continue;
                }
                elements.push((a, b, c));
            }
            if elements.len() as u64 > CLASS_NUMBER_CAP {
                return Err(Error::ClassGroupOverflow(format!(
                    "h({delta}) exceeds {CLASS_NUMBER_CAP}"
                )));
            }
        }
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        Ok(FormClassGroup {
            discriminant: delta,
            fundamental: is_fundamental_discriminant(delta),
            elements,
            index,
        })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Form] {
        &self.elements
    }

    pub fn contains(&self, f: Form) -> bool {
        self.index.contains_key(&f)
    }

    /// The principal form.
    pub fn identity(&self) -> Form {
        let d = self.discriminant;
        if d.rem_euclid(4) == 0 {
            (1, 0, -d / 4)
        } else {
            (1, 1, (1 - d) / 4)
        }
    }

    pub fn inverse(&self, f: Form) -> Form {
        reduce((f.0, -f.1, f.2))
    }

    /// g^k by repeated squaring.
    pub fn power(&self, g: Form, k: u64) -> Form {
        let mut result = self.identity();
        let mut base = g;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = compose(result, base);
            }
            base = compose(base, base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative order of an element, via the factorization of h.
    pub fn element_order(&self, g: Form) -> u64 {
        let h = self.order();
        let mut d = h;
        for (q, _) in factor_u64(h) {
            while d % q == 0 && self.power(g, d / q) == self.identity() {
                d /= q;
            }
        }
        d
    }

    /// Number of elements killed by cubing.
    pub fn three_torsion_size(&self) -> u64 {
        let id = self.identity();
        self.elements
            .iter()
            .filter(|&&g| compose(compose(g, g), g) == id)
            .count() as u64
    }

    /// Image of the cubing map, as a set of reduced forms.
    pub fn cubes(&self) -> HashSet<Form> {
        self.elements
            .iter()
            .map(|&g| compose(compose(g, g), g))
            .collect()
    }

    /// True iff g is a cube. The prime-to-3 part is always a cube, so g is a
    /// cube iff its projection into the 3-Sylow is one there.
    pub fn is_cube(&self, g: Form) -> bool {
        let h = self.order();
        let (v, m) = split_power_of_three(h);
        if v == 0 {
            return true;
        }
        let proj = self.power(g, m);
        let sylow: HashSet<Form> = self.elements.iter().map(|&x| self.power(x, m)).collect();
        let sylow_cubes: HashSet<Form> =
            sylow.iter().map(|&x| compose(compose(x, x), x)).collect();
        sylow_cubes.contains(&proj)
    }

    /// Fast cube test valid when the 3-Sylow is cyclic (3-torsion size ≤ 3):
    /// g is a cube iff g^(m·3^(v−1)) is the identity.
    pub fn is_cube_cyclic_sylow(&self, g: Form) -> bool {
        let h = self.order();
        let (v, m) = split_power_of_three(h);
        if v == 0 {
            return true;
        }
        let e = m * 3u64.pow(v - 1);
        self.power(g, e) == self.identity()
    }

    /// Elementary divisor decomposition d₁ | d₂ | … with one generator per
    /// cyclic factor.
    pub fn structure(&self) -> (Vec<u64>, Vec<Form>) {
        let h = self.order();
        if h == 1 {
            return (Vec::new(), Vec::new());
        }
        let mut per_prime: Vec<Vec<(u64, Form)>> = Vec::new();
        for (q, e) in factor_u64(h) {
            let m = h / q.pow(e);
            let sylow: HashSet<Form> = self.elements.iter().map(|&g| self.power(g, m)).collect();
            per_prime.push(sylow_basis(self, q, &sylow));
        }
        let rank = per_prime.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut divisors = vec![1u64; rank];
        let mut generators = vec![self.identity(); rank];
        for basis in &per_prime {
            for (slot, (ord, gen)) in basis.iter().enumerate() {
                // largest orders in the last slot so d₁ | d₂ | … ascending
                let idx = rank - 1 - slot;
                divisors[idx] *= ord;
                generators[idx] = compose(generators[idx], *gen);
            }
        }
        (divisors, generators)
    }

    /// Serialize as `Δ; h; divisors d₁|d₂|…; forms: (a,b,c);…`.
    pub fn serialize(&self) -> String {
        let (divs, _) = self.structure();
        let div_str = if divs.is_empty() {
            "1".to_string()
        } else {
            divs.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("|")
        };
        let forms = self
            .elements
            .iter()
            .map(|(a, b, c)| format!("({a},{b},{c})"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{}; {}; divisors {}; forms: {}",
            self.discriminant,
            self.order(),
            div_str,
            forms
        )
    }
}

impl fmt::Display for FormClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

fn split_power_of_three(h: u64) -> (u32, u64) {
    let mut v = 0u32;
    let mut m = h;
    while m % 3 == 0 {
        m /= 3;
        v += 1;
    }
    (v, m)
}

/// Basis of an abelian q-group given as a set of reduced forms: pick
/// elements of maximal order in the successive quotients and adjust each by
/// the earlier generators so its true order equals its quotient order.
/// Returns (order, generator) pairs, largest order first.
fn sylow_basis(group: &FormClassGroup, q: u64, sylow: &HashSet<Form>) -> Vec<(u64, Form)> {
    let id = group.identity();
    let mut basis: Vec<(u64, Form)> = Vec::new();
    // exponent vector of every span element over the current basis
    let mut span_log: HashMap<Form, Vec<u64>> = HashMap::new();
    span_log.insert(id, Vec::new());
    while (span_log.len() as u64) < sylow.len() as u64 {
        let mut best: Option<(u64, Form)> = None;
        for &g in sylow {
            if span_log.contains_key(&g) {
                continue;
            }
            let mut e = 1u64;
            let mut x = g;
            while !span_log.contains_key(&x) {
                x = group.power(x, q);
                e *= q;
            }
            match &best {
                Some((be, bg)) if e < *be || (e == *be && g >= *bg) => {}
                _ => best = Some((e, g)),
            }
        }
        let Some((e, g)) = best else { break };
        // g^e lies in the span; divide its exponent vector by e to straighten
        // g into a direct factor of order exactly e.
        let m = span_log[&group.power(g, e)].clone();
        let mut gen = g;
        for (i, &(bord, bgen)) in basis.iter().enumerate() {
            let mi = m[i];
            assert_eq!(mi % e, 0, "abelian basis adjustment divisibility");
            let c = (mi / e) % bord;
            gen = compose(gen, group.power(group.inverse(bgen), c));
        }
        debug_assert_eq!(group.power(gen, e), id);
        basis.push((e, gen));
        let mut new_log = HashMap::new();
        let mut pw = id;
        for k in 0..e {
            for (el, vec) in &span_log {
                let mut v = vec.clone();
                v.push(k);
                new_log.insert(compose(*el, pw), v);
            }
            pw = compose(pw, gen);
        }
        span_log = new_log;
    }
    basis
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    num_integer::gcd(num_integer::gcd(a.abs(), b.abs()), c.abs())
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The class of a prime ideal above p, with its splitting tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeClass {
    pub p: u64,
    pub form: Form,
    pub split: SplitTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitTag {
    Split,
    Ramified,
}

/// Reduced class of the form (p, b, c) with b² ≡ Δ mod 4p, b minimal ≥ 0.
/// Inert primes are rejected.
pub fn prime_class(group: &FormClassGroup, p: u64) -> Result<PrimeClass> {
    let delta = group.discriminant;
    let k = kronecker(delta, p as i64);
    if k == -1 {
        return Err(Error::InertPrime { p, delta });
    }
    let tag = if k == 1 {
        SplitTag::Split
    } else {
        SplitTag::Ramified
    };
    let fourp = 4 * p as i64;
    for b in 0..(2 * p as i64) {
        if (b * b - delta).rem_euclid(fourp) == 0 {
            let c = (b * b - delta) / fourp;
            let form = reduce((p as i64, b, c));
            return Ok(PrimeClass { p, form, split: tag });
        }
    }
    Err(Error::InertPrime { p, delta })
}

/// S-class data: the quotient of the class group by the subgroup generated
/// by the classes of primes above S, with the 3-part of the quotient.
#[derive(Debug, Clone)]
pub struct SClassData {
    pub discriminant: i64,
    pub s_primes: Vec<u64>,
    pub quotient_order: u64,
    pub three_torsion: u64,
    /// Elementary divisors of the 3-Sylow of the quotient, ascending.
    pub three_sylow_divisors: Vec<u64>,
}

/// Quotient by ⟨ classes above S ⟩ and the 3-torsion of the quotient.
/// Inert p ∈ S are rejected.
pub fn s_class_three_torsion(group: &FormClassGroup, s: &[u64]) -> Result<SClassData> {
    let mut gens = Vec::new();
    for &p in s {
        gens.push(prime_class(group, p)?.form);
    }
    // subgroup closure
    let mut sub: HashSet<Form> = HashSet::new();
    sub.insert(group.identity());
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = compose(x, g);
            if sub.insert(y) {
                frontier.push(y);
            }
        }
    }
    let h = group.order();
    let sub_order = sub.len() as u64;
    debug_assert_eq!(h % sub_order, 0);
    let quotient_order = h / sub_order;
    // N_k := #{cosets gH : g^(3^k) ∈ H} counts 3^k-torsion of the quotient
    let mut counts: Vec<u64> = Vec::new();
    let mut powers: Vec<Form> = group.elements().to_vec();
    loop {
        let c = powers.iter().filter(|f| sub.contains(f)).count() as u64 / sub_order;
        counts.push(c);
        if counts.len() >= 2 && counts[counts.len() - 1] == counts[counts.len() - 2] {
            break;
        }
        if counts.len() > 40 {
            break;
        }
        powers = powers.iter().map(|&f| compose(compose(f, f), f)).collect();
    }
    let three_torsion = counts.get(1).copied().unwrap_or(1);
    // ranks r_k = #{i : e_i ≥ k} from N_k / N_{k−1} = 3^{r_k}
    let mut ranks: Vec<u32> = Vec::new();
    for w in counts.windows(2) {
        if w[1] == w[0] {
            break;
        }
        debug_assert_eq!(w[1] % w[0], 0);
        let mut ratio = w[1] / w[0];
        let mut r = 0u32;
        while ratio % 3 == 0 {
            ratio /= 3;
            r += 1;
        }
        debug_assert_eq!(ratio, 1, "torsion growth must be a power of 3");
        ranks.push(r);
    }
    let mut divisors = Vec::new();
    if let Some(&rank1) = ranks.first() {
        for i in 0..rank1 {
            let e = ranks.iter().filter(|&&r| r > i).count() as u32;
            divisors.push(3u64.pow(e));
        }
        divisors.sort();
    }
    Ok(SClassData {
        discriminant: group.discriminant,
        s_primes: s.to_vec(),
        quotient_order,
        three_torsion,
        three_sylow_divisors: divisors,
    })
}

/// Result of the ideal-pair count: the orbit count (headline number), the raw
/// pair count, and the fixed points of the conjugation action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicFieldCount {
    pub orbits: u64,
    pub pairs: u64,
    pub fixed: u64,
}

/// Count pairs (J, [I]) with J ⊆ O_F an ideal of norm f (componentwise
/// choice of 𝔭 vs 𝔭̄ at split primes, forced at ramified primes) and [I] a
/// cube root of [J] in Cl(F), F = Q(√d); return the exact orbit count under
/// the conjugation (J, [I]) ↦ (J̄, [I]⁻¹) along with the raw pair count.
///
/// `f` must be a positive squarefree divisor of n = 3·Πpᵢ. An inert p | f
/// leaves no ideals of norm f and the count is zero.
pub fn count_cubic_fields(d: i64, f: u64, primes: &[u64]) -> Result<CubicFieldCount> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(Error::NotImaginary(d));
    }
    let group = FormClassGroup::new(d)?;
    count_cubic_fields_in_group(&group, f, primes)
}

/// Same count on an already-constructed class group.
pub fn count_cubic_fields_in_group(
    group: &FormClassGroup,
    f: u64,
    primes: &[u64],
) -> Result<CubicFieldCount> {
    let d = group.discriminant;
    let mut n: u64 = 3;
    for &p in primes {
        n = n.saturating_mul(p);
    }
    if f == 0 || n % f != 0 {
        return Err(Error::InvalidFamily(format!(
            "f = {f} does not divide n = {n}"
        )));
    }
    let fact = factor_u64(f);
    if fact.iter().any(|&(_, e)| e > 1) {
        return Err(Error::InvalidFamily(format!("f = {f} is not squarefree")));
    }
    let mut choices: Vec<Vec<Form>> = Vec::new();
    let mut all_ramified = true;
    for &(p, _) in &fact {
        let k = kronecker(d, p as i64);
        if k == -1 {
            return Ok(CubicFieldCount {
                orbits: 0,
                pairs: 0,
                fixed: 0,
            });
        }
        let pc = prime_class(&group, p)?;
        if k == 1 {
            all_ramified = false;
            let inv = group.inverse(pc.form);
            choices.push(vec![pc.form, inv]);
        } else {
            choices.push(vec![pc.form]);
        }
    }
    let cubes = group.cubes();
    let t3 = group.three_torsion_size();
    let mut pairs = 0u64;
    let mut stack: Vec<(usize, Form)> = vec![(0usize, group.identity())];
    while let Some((i, acc)) = stack.pop() {
        if i == choices.len() {
            if cubes.contains(&acc) {
                pairs += t3;
            }
            continue;
        }
        for &c in &choices[i] {
            stack.push((i + 1, compose(acc, c)));
        }
    }
    // A pair is fixed iff J is self-conjugate (only ramified primes in f),
    // and then [I] = [J] is forced, giving exactly one fixed pair per J.
    let fixed = if all_ramified { 1 } else { 0 };
    debug_assert_eq!((pairs + fixed) % 2, 0);
    Ok(CubicFieldCount {
        orbits: (pairs + fixed) / 2,
        pairs,
        fixed,
    })
}
