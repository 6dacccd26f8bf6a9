//! Iterated-gcd chain and the generalized Euler congruence
//! `x^(φ(m_s) + s) ≡ x^s (mod m)`.
//!
//! Starting from `d_0 = gcd(x, m)`, `m_0 = m / d_0`, each step takes
//! `d_i = gcd(d_{i-1}, m_{i-1})` and `m_i = m_{i-1} / d_i` until `d_i = 1`.
//! The index of that terminating step is `s` and its cofactor is `m_s`.
//! When `x` is already coprime to `m` no step is recorded and `s = 0`.

use crate::arith::{check_modulus, gcd, phi, pow_reduced, reduce};
use crate::error::Result;
use crate::report::{CongruenceReport, TheoremId};

/// One step `(d_i, m_i)` of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStep {
    pub divisor: i64,
    pub cofactor: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerChain {
    pub x: i64,
    pub m: i64,
    pub steps: Vec<ChainStep>,
    /// `s`
    pub depth: u32,
    /// `m_s`
    pub terminal: i64,
}

impl EulerChain {
    /// `φ(m_s) + s`.
    pub fn exponent(&self) -> Result<u64> {
        Ok(phi(self.terminal)? as u64 + u64::from(self.depth))
    }
}

pub fn euler_chain(x: i64, m: i64) -> Result<EulerChain> {
    let n = check_modulus(m)?;
    // |x| mod n has the same gcd with n as x and cannot overflow.
    let first = gcd(reduce(x, n), n);
    let mut steps = Vec::new();
    if first != 1 {
        let (mut divisor, mut cofactor) = (first, n / first);
        steps.push(ChainStep { divisor, cofactor });
        while divisor != 1 {
            divisor = gcd(divisor, cofactor);
            cofactor /= divisor;
            steps.push(ChainStep { divisor, cofactor });
        }
    }
    let depth = steps.len().saturating_sub(1) as u32;
    let terminal = steps.last().map_or(n, |s| s.cofactor);
    Ok(EulerChain {
        x,
        m,
        steps,
        depth,
        terminal,
    })
}

/// `x^(φ(m_s)+s)` against `x^s`, both mod `|m|`, with `(m_s, s)` from
/// [`euler_chain`].
pub fn check_generalized_euler(x: i64, m: i64) -> Result<CongruenceReport> {
    let chain = euler_chain(x, m)?;
    let n = chain.m.abs();
    let base = reduce(x, n);
    let exponent = chain.exponent()?;
    let lhs = pow_reduced(base, exponent, n);
    let rhs = pow_reduced(base, u64::from(chain.depth), n);
    Ok(CongruenceReport::new(TheoremId::EulerGen, m, n, lhs, rhs)
        .with_x(x)
        .with_note(format!(
            "s={};m_s={};exponent={}",
            chain.depth, chain.terminal, exponent
        )))
}
