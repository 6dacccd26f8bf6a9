//! Products over reduced residue systems.
//!
//! The class of moduli `{±1, ±2, ±4, ±p^β, ±2p^β, 0}` (p an odd prime) is the
//! one for which the full residue product is `-1`. Everything here writes
//! `L(x, m)` for the shifted product `(x + c_1)···(x + c_φ(m))` over the reduced
//! residues `c_i` of `|m|`.

use std::fmt;

use crate::arith::{self, check_modulus, crt_pair, ext_gcd, factorize, mul_mod, reduce};
use crate::error::{Error, Result};

/// Structural form witnessing membership (or not) in the primitive-root class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassForm {
    Zero,
    /// `|m| = 2^alpha`, alpha in {0, 1, 2}.
    PowerOfTwoSmall {
        alpha: u32,
    },
    OddPrimePower {
        p: i64,
        beta: u32,
    },
    TwiceOddPrimePower {
        p: i64,
        beta: u32,
    },
    NotInA,
}

impl ClassForm {
    pub fn name(&self) -> &'static str {
        match self {
            ClassForm::Zero => "Zero",
            ClassForm::PowerOfTwoSmall { .. } => "PowerOfTwoSmall",
            ClassForm::OddPrimePower { .. } => "OddPrimePower",
            ClassForm::TwiceOddPrimePower { .. } => "TwiceOddPrimePower",
            ClassForm::NotInA => "NotInA",
        }
    }
}

impl fmt::Display for ClassForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassVerdict {
    pub m: i64,
    pub member: bool,
    pub form: ClassForm,
}

/// Classifies `m` (sign-blind). Zero is a member.
pub fn classify(m: i64) -> Result<ClassVerdict> {
    let form = match m.unsigned_abs() {
        0 => ClassForm::Zero,
        1 => ClassForm::PowerOfTwoSmall { alpha: 0 },
        2 => ClassForm::PowerOfTwoSmall { alpha: 1 },
        4 => ClassForm::PowerOfTwoSmall { alpha: 2 },
        _ => match factorize(m)?.factors.as_slice() {
            [(p, beta)] if *p != 2 => ClassForm::OddPrimePower { p: *p, beta: *beta },
            [(2, 1), (p, beta)] => ClassForm::TwiceOddPrimePower { p: *p, beta: *beta },
            _ => ClassForm::NotInA,
        },
    };
    Ok(ClassVerdict {
        m,
        member: form != ClassForm::NotInA,
        form,
    })
}

/// `-1` when `m` is in the primitive-root class, `+1` otherwise.
pub fn gauss_sign(m: i64) -> Result<i64> {
    check_modulus(m)?;
    Ok(if classify(m)?.member { -1 } else { 1 })
}

/// Product of all reduced residues of `|m|`, reduced mod `|m|`.
pub fn residue_product(m: i64) -> Result<i64> {
    shifted_product(0, m)
}

/// `L(x, m)` reduced mod `|m|`. Depends only on `x mod |m|`.
pub fn shifted_product(x: i64, m: i64) -> Result<i64> {
    let rs = arith::reduced_residues(m)?;
    let n = rs.abs_modulus();
    let shift = reduce(x, n);
    Ok(rs
        .residues()
        .iter()
        .fold(1 % n, |acc, &c| mul_mod(acc, (shift + c) % n, n)))
}

/// `|m| = shared * coprime`, where `shared` collects the full prime powers of
/// `|m|` whose primes divide `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorSplit {
    pub shared: i64,
    pub coprime: i64,
}

pub fn common_divisor_split(x: i64, m: i64) -> Result<DivisorSplit> {
    let n = check_modulus(m)?;
    let shared = factorize(n)?
        .factors
        .iter()
        .filter(|&&(p, _)| x % p == 0)
        .map(|&(p, e)| p.pow(e))
        .product();
    Ok(DivisorSplit {
        shared,
        coprime: n / shared,
    })
}

/// A particular solution of `k2 * coprime - k1 * shared = sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSolution {
    pub k1: i64,
    pub k2: i64,
}

pub fn split_particular_solution(shared: i64, coprime: i64, sign: i64) -> Result<SplitSolution> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidSign(sign));
    }
    for v in [shared, coprime] {
        if v <= 0 {
            return Err(Error::NonPositiveModulus(v));
        }
    }
    let (g, u, v) = ext_gcd(coprime, shared)?;
    if g != 1 {
        return Err(Error::NotCoprime(shared, coprime));
    }
    // u*coprime + v*shared = 1
    Ok(SplitSolution {
        k1: -sign * v,
        k2: sign * u,
    })
}

/// The value of `L(x, m)` predicted from the split alone: congruent to the
/// Gauss sign modulo `shared` and to 0 modulo `coprime`.
pub fn predict_shifted_product(x: i64, m: i64) -> Result<i64> {
    let split = common_divisor_split(x, m)?;
    let sign = gauss_sign(m)?;
    crt_pair(sign, split.shared, 0, split.coprime)
}

/// Product of all reduced residues except the largest (`|m| - 1`).
pub fn leibniz_product(m: i64) -> Result<i64> {
    if m.unsigned_abs() < 2 {
        return Err(Error::ModulusTooSmall { m, min: 2 });
    }
    let rs = arith::reduced_residues(m)?;
    let n = rs.abs_modulus();
    let (_, head) = rs.residues().split_last().expect("nonempty");
    Ok(head.iter().fold(1 % n, |acc, &c| mul_mod(acc, c, n)))
}
