//! Exact integer and modular arithmetic on `i64`.
//!
//! Residues are always canonical, i.e. in `[0, |m|)`. Every product is reduced
//! before the next multiplication, so with `|m| <= MAX_MODULUS` no intermediate
//! value leaves 64-bit signed range.

use crate::error::{Error, Result};

/// Largest modulus accepted by the modular routines (`2^31 - 1`).
pub const MAX_MODULUS: i64 = (1 << 31) - 1;

/// Largest magnitude accepted by [`factorize`] and [`phi`].
pub const MAX_FACTOR_INPUT: i64 = 1_000_000_000_000;

/// Nonnegative greatest common divisor. `gcd(0, 0) == 0`.
///
/// Panics only for `gcd(i64::MIN, 0)` and `gcd(i64::MIN, i64::MIN)`, whose
/// value `2^63` is not representable.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    i64::try_from(a).expect("gcd does not fit in i64")
}

/// Extended Euclid: returns `(g, u, v)` with `g = gcd(a, b) >= 0` and
/// `u*a + v*b == g`.
pub fn ext_gcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("ext_gcd"));
    Ok((narrow(r0)?, narrow(s0)?, narrow(t0)?))
}

/// Validates a modulus and returns `|m|`.
pub fn check_modulus(m: i64) -> Result<i64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let n = m.unsigned_abs();
    if n > MAX_MODULUS as u64 {
        return Err(Error::ModulusOutOfRange(m));
    }
    Ok(n as i64)
}

/// Canonical representative of `a` modulo `n > 0`.
#[inline]
pub fn reduce(a: i64, n: i64) -> i64 {
    a.rem_euclid(n)
}

/// `a * b mod n` for canonical `a`, `b` and `0 < n <= MAX_MODULUS`.
#[inline]
pub fn mul_mod(a: i64, b: i64, n: i64) -> i64 {
    debug_assert!((0..n).contains(&a) && (0..n).contains(&b));
    (a * b) % n
}

/// `base^exp` reduced into `[0, |m|)`; `0^0` is 1.
pub fn mod_pow(base: i64, exp: u64, m: i64) -> Result<i64> {
    let n = check_modulus(m)?;
    Ok(pow_reduced(reduce(base, n), exp, n))
}

pub(crate) fn pow_reduced(mut base: i64, mut exp: u64, n: i64) -> i64 {
    let mut acc = 1 % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3i64;
    while d <= n / d {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `m = sign * prod(p^e)` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i64,
    pub factors: Vec<(i64, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn value(&self) -> i64 {
        self.sign * self.magnitude()
    }

    pub fn magnitude(&self) -> i64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn primes(&self) -> impl Iterator<Item = i64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Trial-division factorization for `0 < |m| <= MAX_FACTOR_INPUT`.
pub fn factorize(m: i64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::FactorizeZero);
    }
    if m.unsigned_abs() > MAX_FACTOR_INPUT as u64 {
        return Err(Error::FactorBoundExceeded(m));
    }
    let mut n = m.abs();
    let mut factors = Vec::new();
    let mut divide_out = |n: &mut i64, p: i64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    divide_out(&mut n, 2);
    let mut p = 3;
    while p <= n / p {
        divide_out(&mut n, p);
        p += 2;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(Factorization {
        sign: m.signum(),
        factors,
    })
}

/// Euler's totient of `|m|`; `phi(±1) == 1`.
pub fn phi(m: i64) -> Result<i64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let f = factorize(m)?;
    Ok(f.factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// A modulus together with its sorted canonical reduced residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSystem {
    modulus: i64,
    residues: Vec<i64>,
}

impl ResidueSystem {
    /// The modulus as given (sign preserved).
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn abs_modulus(&self) -> i64 {
        self.modulus.abs()
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    /// Number of residues, i.e. `phi(|m|)`.
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn largest(&self) -> i64 {
        *self
            .residues
            .last()
            .expect("a residue system is never empty")
    }
}

/// The reduced residue system of `|m|`. For `|m| == 1` this is `{0}`.
///
/// Residues are found by striking out multiples of the primes of `|m|`.
pub fn reduced_residues(m: i64) -> Result<ResidueSystem> {
    let n = check_modulus(m)?;
    if n == 1 {
        return Ok(ResidueSystem {
            modulus: m,
            residues: vec![0],
        });
    }
    let mut coprime = vec![true; n as usize];
    coprime[0] = false;
    for p in factorize(n)?.primes() {
        for k in (p..n).step_by(p as usize) {
            coprime[k as usize] = false;
        }
    }
    let residues = coprime
        .iter()
        .enumerate()
        .filter_map(|(r, &keep)| keep.then_some(r as i64))
        .collect();
    Ok(ResidueSystem {
        modulus: m,
        residues,
    })
}

/// The unique `v` in `[0, m1*m2)` with `v ≡ r1 (mod m1)` and `v ≡ r2 (mod m2)`.
pub fn crt_pair(r1: i64, m1: i64, r2: i64, m2: i64) -> Result<i64> {
    for m in [m1, m2] {
        if m <= 0 {
            return Err(Error::NonPositiveModulus(m));
        }
    }
    let (g, u, _) = ext_gcd(m1, m2)?;
    if g != 1 {
        return Err(Error::NotCoprime(m1, m2));
    }
    let product = m1.checked_mul(m2).ok_or(Error::Overflow("crt_pair"))?;
    // u is the inverse of m1 modulo m2.
    let (r1, r2) = (reduce(r1, m1) as i128, reduce(r2, m2) as i128);
    let lift = ((r2 - r1) * u as i128).rem_euclid(m2 as i128);
    Ok((r1 + m1 as i128 * lift) as i64 % product)
}
