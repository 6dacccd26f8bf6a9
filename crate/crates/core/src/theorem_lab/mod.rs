//! One verifier per congruence, plus [`scan`] for sweeping parameter ranges.
//!
//! Verifiers reduce every product modulo `|m|` as it is formed, so nothing
//! here needs more than 64-bit arithmetic.

mod scan;

pub use scan::{scan, Bound, Family, ScanOptions, ScanRanges, ScanResult, Span, SpanRange};

use std::fmt;
use std::str::FromStr;

use crate::arith::{check_modulus, mul_mod, phi, pow_reduced, reduce};
use crate::error::{Error, Result};
use crate::euler_chain::euler_chain;
use crate::report::{CongruenceReport, TheoremId};
use crate::residue_products::{
    common_divisor_split, gauss_sign, leibniz_product, predict_shifted_product, residue_product,
    shifted_product, DivisorSplit,
};

/// Which exponent the generalized Moser/Sierpinski forms use on `a`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExponentVariant {
    /// `φ(m_s) + s`
    #[default]
    ChainPhi,
    /// `φ(m) + s`
    FullPhi,
}

impl ExponentVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExponentVariant::ChainPhi => "chain-phi",
            ExponentVariant::FullPhi => "full-phi",
        }
    }
}

impl fmt::Display for ExponentVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExponentVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain-phi" | "chain_phi" => Ok(ExponentVariant::ChainPhi),
            "full-phi" | "full_phi" => Ok(ExponentVariant::FullPhi),
            _ => Err(Error::InvalidRange(format!("unknown exponent variant {s}"))),
        }
    }
}

/// What to do with points the theorem's hypotheses exclude.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GuardHandling {
    /// Skip them, reporting [`Outcome::Excluded`].
    #[default]
    Respect,
    /// Evaluate them anyway, flagging the report.
    Include,
}

impl GuardHandling {
    pub fn as_str(&self) -> &'static str {
        match self {
            GuardHandling::Respect => "respect",
            GuardHandling::Include => "include",
        }
    }
}

impl fmt::Display for GuardHandling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A point skipped because it lies outside the theorem's hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusion {
    pub theorem: TheoremId,
    pub m: i64,
    pub x: Option<i64>,
    pub a: Option<i64>,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Checked(CongruenceReport),
    Excluded(Exclusion),
}

impl Outcome {
    pub fn report(&self) -> Option<&CongruenceReport> {
        match self {
            Outcome::Checked(r) => Some(r),
            Outcome::Excluded(_) => None,
        }
    }

    pub fn into_report(self) -> Option<CongruenceReport> {
        match self {
            Outcome::Checked(r) => Some(r),
            Outcome::Excluded(_) => None,
        }
    }
}

/// Residue product against the Gauss sign.
pub fn verify_gauss(m: i64) -> Result<CongruenceReport> {
    let n = check_modulus(m)?;
    let lhs = residue_product(m)?;
    let rhs = reduce(gauss_sign(m)?, n);
    Ok(CongruenceReport::new(TheoremId::Gauss, m, n, lhs, rhs))
}

/// Both halves of the split congruence for `L(x, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCheck {
    pub split: DivisorSplit,
    pub value: i64,
    pub sign: i64,
    /// `L ≡ 0 (mod coprime part)`
    pub vanishes_on_coprime: bool,
    /// `L ≡ sign (mod shared part)`, `None` when the shared part is 1.
    pub sign_on_shared: Option<bool>,
}

impl SplitCheck {
    pub fn holds(&self) -> bool {
        self.vanishes_on_coprime && self.sign_on_shared.unwrap_or(true)
    }
}

pub fn split_congruences(x: i64, m: i64) -> Result<SplitCheck> {
    let value = shifted_product(x, m)?;
    let split = common_divisor_split(x, m)?;
    let sign = gauss_sign(m)?;
    Ok(SplitCheck {
        split,
        value,
        sign,
        vanishes_on_coprime: value % split.coprime == 0,
        sign_on_shared: (split.shared > 1)
            .then(|| value % split.shared == reduce(sign, split.shared)),
    })
}

/// `L(x, m)` against its predicted value.
pub fn verify_l_theorems(x: i64, m: i64) -> Result<CongruenceReport> {
    let n = check_modulus(m)?;
    let check = split_congruences(x, m)?;
    let rhs = predict_shifted_product(x, m)?;
    let flag = |b: bool| if b { "ok" } else { "fail" };
    let note = format!(
        "d={};m_prime={};zero_mod_m_prime={};sign_mod_d={}",
        check.split.shared,
        check.split.coprime,
        flag(check.vanishes_on_coprime),
        check.sign_on_shared.map_or("n/a", flag),
    );
    Ok(
        CongruenceReport::new(TheoremId::LTheorems, m, n, check.value, rhs)
            .with_x(x)
            .with_note(note),
    )
}

/// `x^(φ(m_s)+s) - x^s ≡ (x+1)(x+2)···(x+|m|-1) (mod m)`, chain from `(x, m)`.
///
/// Hypotheses exclude `m = ±4` and the point `x ≡ 0 with s = 0`.
pub fn verify_lagrange_ext(x: i64, m: i64, guard: GuardHandling) -> Result<Outcome> {
    let n = check_modulus(m)?;
    let chain = euler_chain(x, m)?;
    let base = reduce(x, n);
    let reason = if n == 4 {
        Some("m=±4")
    } else if base == 0 && chain.depth == 0 {
        Some("x^2+s^2=0")
    } else {
        None
    };
    if let (Some(reason), GuardHandling::Respect) = (reason, guard) {
        return Ok(Outcome::Excluded(Exclusion {
            theorem: TheoremId::LagrangeExt,
            m,
            x: Some(x),
            a: None,
            reason,
        }));
    }
    let exponent = chain.exponent()?;
    let lhs = reduce(
        pow_reduced(base, exponent, n) - pow_reduced(base, u64::from(chain.depth), n),
        n,
    );
    let rhs = (1..n).fold(1 % n, |acc, j| mul_mod(acc, (base + j) % n, n));
    let mut report = CongruenceReport::new(TheoremId::LagrangeExt, m, n, lhs, rhs)
        .with_x(x)
        .with_note(format!("s={};m_s={}", chain.depth, chain.terminal));
    if let Some(reason) = reason {
        report.excluded_by_hypothesis = true;
        report.note = Some(format!(
            "{};excluded:{reason}",
            report.note.unwrap_or_default()
        ));
    }
    Ok(Outcome::Checked(report))
}

/// Generalized Moser and Sierpinski congruences, in that order.
///
/// With `P = L(x, m)` and `(m_s, s)` from the chain of `(a, m)`, the Moser
/// direction is `P·a^e - P·a^s ≡ 0` and the Sierpinski direction is
/// `-P·a^e + P·a^s ≡ 0`, where `e` depends on `variant`.
pub fn verify_moser_gen(
    a: i64,
    x: i64,
    m: i64,
    variant: ExponentVariant,
) -> Result<[CongruenceReport; 2]> {
    let n = check_modulus(m)?;
    let chain = euler_chain(a, m)?;
    let product = shifted_product(x, m)?;
    let base = reduce(a, n);
    let exponent = match variant {
        ExponentVariant::ChainPhi => chain.exponent()?,
        ExponentVariant::FullPhi => phi(m)? as u64 + u64::from(chain.depth),
    };
    let high = mul_mod(product, pow_reduced(base, exponent, n), n);
    let low = mul_mod(product, pow_reduced(base, u64::from(chain.depth), n), n);
    let note = format!(
        "variant={variant};exponent={exponent};s={};m_s={}",
        chain.depth, chain.terminal
    );
    let build = |theorem, lhs| {
        CongruenceReport::new(theorem, m, n, lhs, 0)
            .with_x(x)
            .with_a(a)
            .with_note(note.clone())
    };
    Ok([
        build(TheoremId::Moser, reduce(high - low, n)),
        build(TheoremId::Sierpinski, reduce(low - high, n)),
    ])
}

/// `(a^m - a)(m - 1)! ≡ 0 (mod m)` for `m >= 1`. The hypotheses exclude `m = 4`.
pub fn verify_fermat_wilson(a: i64, m: i64, guard: GuardHandling) -> Result<Outcome> {
    if m <= 0 {
        return Err(if m == 0 {
            Error::ZeroModulus
        } else {
            Error::NonPositiveModulus(m)
        });
    }
    let n = check_modulus(m)?;
    let excluded = n == 4;
    if excluded && guard == GuardHandling::Respect {
        return Ok(Outcome::Excluded(Exclusion {
            theorem: TheoremId::FermatWilson,
            m,
            x: None,
            a: Some(a),
            reason: "m=4",
        }));
    }
    let base = reduce(a, n);
    let fermat = reduce(pow_reduced(base, n as u64, n) - base, n);
    let factorial = (1..n).fold(1 % n, |acc, j| mul_mod(acc, j, n));
    let mut report = CongruenceReport::new(
        TheoremId::FermatWilson,
        m,
        n,
        mul_mod(fermat, factorial, n),
        0,
    )
    .with_a(a);
    if excluded {
        report.excluded_by_hypothesis = true;
        report.note = Some("excluded:m=4".to_string());
    }
    Ok(Outcome::Checked(report))
}

/// Residue product without its largest element, against minus the Gauss sign.
pub fn verify_leibniz_gen(m: i64) -> Result<CongruenceReport> {
    let lhs = leibniz_product(m)?;
    let n = m.abs();
    let rhs = reduce(-gauss_sign(m)?, n);
    Ok(CongruenceReport::new(TheoremId::Leibniz, m, n, lhs, rhs))
}
