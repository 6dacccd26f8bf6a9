//! Reduced residue products, the shifted product `L(x, m)`, iterated-gcd
//! chains, and verifiers that sweep the congruences built from them.
//!
//! ```
//! use congruence_core::{predict_shifted_product, shifted_product};
//!
//! assert_eq!(shifted_product(3, 15).unwrap(), 10);
//! assert_eq!(predict_shifted_product(3, 15).unwrap(), 10);
//! ```

pub mod arith;
pub mod error;
pub mod euler_chain;
pub mod oracle;
pub mod report;
pub mod residue_products;
pub mod theorem_lab;

pub use arith::{
    crt_pair, ext_gcd, factorize, gcd, mod_pow, phi, reduced_residues, Factorization,
    ResidueSystem, MAX_FACTOR_INPUT, MAX_MODULUS,
};
pub use error::{Error, Result};
pub use euler_chain::{check_generalized_euler, euler_chain, ChainStep, EulerChain};
pub use report::{CongruenceReport, TheoremId};
pub use residue_products::{
    classify, common_divisor_split, gauss_sign, leibniz_product, predict_shifted_product,
    residue_product, shifted_product, split_particular_solution, ClassForm, ClassVerdict,
    DivisorSplit, SplitSolution,
};
pub use theorem_lab::{
    scan, split_congruences, verify_fermat_wilson, verify_gauss, verify_l_theorems,
    verify_lagrange_ext, verify_leibniz_gen, verify_moser_gen, Exclusion, ExponentVariant, Family,
    GuardHandling, Outcome, ScanOptions, ScanRanges, ScanResult, Span, SpanRange, SplitCheck,
};
