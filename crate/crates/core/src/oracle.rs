//! Brute-force recomputation used to cross-check the main modules.
//!
//! Nothing in here calls into [`crate::arith`] or [`crate::residue_products`]:
//! residues are re-enumerated with a local gcd, products are reduced with
//! plain `%`, and primality is tested by a separate loop.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus the enumerations accept.
pub const ORACLE_LIMIT: i64 = 100_000;

fn plain_gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while a != 0 {
        let t = b % a;
        b = a;
        a = t;
    }
    b
}

fn plain_is_prime(n: i64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Reduced residues of `n >= 1` by testing every candidate.
fn enumerate_coprime(n: i64) -> Vec<i64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&k| plain_gcd(k, n) == 1).collect()
}

fn oracle_modulus(m: i64) -> Result<i64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let n = m.checked_abs().unwrap_or(i64::MAX);
    if n > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            value: m,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(n)
}

/// `L(x, m)` by direct enumeration.
pub fn brute_l(x: i64, m: i64) -> Result<i64> {
    let n = oracle_modulus(m)?;
    let mut acc = 1 % n;
    for c in enumerate_coprime(n) {
        let term = (x % n + c) % n;
        acc = (acc * ((term + n) % n)) % n;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    /// Shifting by a multiple of `p^β` permutes the residues of `p^α`.
    L1,
    /// Residues of `m` reduce to `φ(m/p^α)` copies of those of `p^α`.
    L2,
    /// `b + c ≡ 0 (mod q)` for some reduced residue `c` when `gcd(b, q) = 1`.
    L3,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaId::L1 => "L1",
            LemmaId::L2 => "L2",
            LemmaId::L3 => "L3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma: LemmaId,
    pub params: Vec<(&'static str, i64)>,
    pub passed: bool,
    /// On failure, the offending residue or class; on success for L3, the witness.
    pub detail: Option<String>,
}

fn checked_pow(p: i64, e: u32) -> Result<i64> {
    p.checked_pow(e)
        .filter(|&v| v <= ORACLE_LIMIT)
        .ok_or(Error::OracleLimit {
            value: p,
            limit: ORACLE_LIMIT,
        })
}

/// Compares `{(k·p^β + c) mod p^α}` with the residues of `p^α` as multisets.
pub fn lemma1_shift_check(p: i64, alpha: u32, beta: u32, k: i64) -> Result<LemmaCheck> {
    if !plain_is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha == 0 || beta == 0 {
        return Err(Error::NonPositiveExponent);
    }
    let modulus = checked_pow(p, alpha)?;
    let step = p.checked_pow(beta).ok_or(Error::Overflow("p^beta"))?;
    let shift = (k % modulus) * (step % modulus) % modulus;
    let residues = enumerate_coprime(modulus);
    let mut shifted: Vec<i64> = residues
        .iter()
        .map(|&c| ((shift + c) % modulus + modulus) % modulus)
        .collect();
    shifted.sort_unstable();
    let detail = shifted
        .iter()
        .zip(&residues)
        .find(|(s, r)| s != r)
        .map(|(s, _)| format!("shifted residue {s} breaks the system"));
    Ok(LemmaCheck {
        lemma: LemmaId::L1,
        params: vec![
            ("p", p),
            ("alpha", alpha.into()),
            ("beta", beta.into()),
            ("k", k),
        ],
        passed: detail.is_none(),
        detail,
    })
}

/// Counts each residue of `m` modulo the full power of `p` in `m`.
pub fn lemma2_partition_check(m: i64, p: i64) -> Result<LemmaCheck> {
    let n = oracle_modulus(m)?;
    if !plain_is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n % p != 0 {
        return Err(Error::NotADivisor { p, m });
    }
    let mut prime_power = 1;
    while n % (prime_power * p) == 0 {
        prime_power *= p;
    }
    let copies = enumerate_coprime(n / prime_power).len();
    let mut counts = vec![0usize; prime_power as usize];
    for c in enumerate_coprime(n) {
        counts[(c % prime_power) as usize] += 1;
    }
    let detail = counts.iter().enumerate().find_map(|(r, &count)| {
        let expected = if plain_gcd(r as i64, prime_power) == 1 {
            copies
        } else {
            0
        };
        (count != expected)
            .then(|| format!("class {r} mod {prime_power} seen {count} times, expected {expected}"))
    });
    Ok(LemmaCheck {
        lemma: LemmaId::L2,
        params: vec![("m", m), ("p", p)],
        passed: detail.is_none(),
        detail,
    })
}

/// Looks for a reduced residue `c` of `q` with `q | b + c`.
pub fn lemma3_zero_rep_check(b: i64, q: i64) -> Result<LemmaCheck> {
    if q < 2 {
        return Err(Error::ModulusTooSmall { m: q, min: 2 });
    }
    oracle_modulus(q)?;
    if plain_gcd(b, q) != 1 {
        return Err(Error::NotCoprime(b, q));
    }
    let witness = enumerate_coprime(q).into_iter().find(|&c| (b + c) % q == 0);
    let expected = q - ((b % q) + q) % q;
    Ok(LemmaCheck {
        lemma: LemmaId::L3,
        params: vec![("b", b), ("q", q)],
        passed: witness == Some(expected),
        detail: Some(match witness {
            Some(c) => format!("c={c}"),
            None => "no residue completes b to a multiple of q".to_string(),
        }),
    })
}

/// Outcome of one fixed-range oracle suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn record(out: &mut SuiteOutcome, check: LemmaCheck) {
    out.checks += 1;
    if !check.passed {
        let params: Vec<String> = check
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.failures.push(format!(
            "{} {} {}",
            check.lemma,
            params.join(","),
            check.detail.unwrap_or_default()
        ));
    }
}

/// Primes `p <= 13`, `alpha, beta <= 3`, `k` in `[-5, 5]`.
pub fn lemma1_suite() -> SuiteOutcome {
    let mut out = SuiteOutcome {
        name: "lemma1",
        checks: 0,
        failures: Vec::new(),
    };
    for p in (2..=13).filter(|&p| plain_is_prime(p)) {
        for alpha in 1..=3 {
            for beta in 1..=3 {
                for k in -5..=5 {
                    record(
                        &mut out,
                        lemma1_shift_check(p, alpha, beta, k).expect("in range"),
                    );
                }
            }
        }
    }
    out
}

/// Every `m` in `[2, 500]` and every prime `p | m`.
pub fn lemma2_suite() -> SuiteOutcome {
    let mut out = SuiteOutcome {
        name: "lemma2",
        checks: 0,
        failures: Vec::new(),
    };
    for m in 2..=500 {
        for p in (2..=m).filter(|&p| m % p == 0 && plain_is_prime(p)) {
            record(&mut out, lemma2_partition_check(m, p).expect("in range"));
        }
    }
    out
}

/// Every `q` in `[2, 300]` and `b` in `[1, q]` coprime to `q`.
pub fn lemma3_suite() -> SuiteOutcome {
    let mut out = SuiteOutcome {
        name: "lemma3",
        checks: 0,
        failures: Vec::new(),
    };
    for q in 2..=300 {
        for b in (1..=q).filter(|&b| plain_gcd(b, q) == 1) {
            record(&mut out, lemma3_zero_rep_check(b, q).expect("in range"));
        }
    }
    out
}

/// `brute_l` against `compute` on every `0 <= x < m <= max_m`.
pub fn brute_l_suite(
    max_m: i64,
    compute: impl Fn(i64, i64) -> Result<i64>,
) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome {
        name: "brute-l",
        checks: 0,
        failures: Vec::new(),
    };
    for m in 1..=max_m {
        for x in 0..m {
            out.checks += 1;
            let (expected, got) = (brute_l(x, m)?, compute(x, m)?);
            if expected != got {
                out.failures
                    .push(format!("x={x},m={m} brute={expected} computed={got}"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_l_examples() {
        assert_eq!(brute_l(3, 15).unwrap(), 10);
        assert_eq!(brute_l(0, 5).unwrap(), 4);
        assert_eq!(brute_l(1, 6).unwrap(), 0);
        assert_eq!(brute_l(-12, -15).unwrap(), 10);
        assert_eq!(brute_l(7, 1).unwrap(), 0);
        assert_eq!(brute_l(1, 0), Err(Error::ZeroModulus));
        assert!(matches!(
            brute_l(1, ORACLE_LIMIT + 1),
            Err(Error::OracleLimit { .. })
        ));
    }

    #[test]
    fn lemma1_examples() {
        assert!(lemma1_shift_check(3, 2, 1, 2).unwrap().passed);
        assert!(lemma1_shift_check(5, 1, 1, 0).unwrap().passed);
        assert!(lemma1_shift_check(2, 3, 2, 7).unwrap().passed);
        assert_eq!(lemma1_shift_check(6, 1, 1, 1), Err(Error::NotPrime(6)));
        assert_eq!(
            lemma1_shift_check(3, 2, 0, 1),
            Err(Error::NonPositiveExponent)
        );
    }

    #[test]
    fn lemma2_examples() {
        assert!(lemma2_partition_check(15, 3).unwrap().passed);
        assert!(lemma2_partition_check(12, 3).unwrap().passed);
        assert!(lemma2_partition_check(12, 2).unwrap().passed);
        assert!(lemma2_partition_check(27, 3).unwrap().passed);
        assert_eq!(
            lemma2_partition_check(15, 7),
            Err(Error::NotADivisor { p: 7, m: 15 })
        );
    }

    #[test]
    fn lemma3_examples() {
        let c = lemma3_zero_rep_check(1, 6).unwrap();
        assert!(c.passed);
        assert_eq!(c.detail.as_deref(), Some("c=5"));
        let c = lemma3_zero_rep_check(4, 9).unwrap();
        assert_eq!((c.passed, c.detail.as_deref()), (true, Some("c=5")));
        let c = lemma3_zero_rep_check(10, 11).unwrap();
        assert_eq!((c.passed, c.detail.as_deref()), (true, Some("c=1")));
        assert_eq!(lemma3_zero_rep_check(3, 9), Err(Error::NotCoprime(3, 9)));
    }

    #[test]
    fn suites_pass() {
        for suite in [lemma1_suite(), lemma2_suite(), lemma3_suite()] {
            assert!(suite.passed(), "{}: {:?}", suite.name, suite.failures);
            assert!(suite.checks > 0);
        }
    }
}
