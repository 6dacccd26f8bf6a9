use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{
    verify_fermat_wilson, verify_gauss, verify_l_theorems, verify_lagrange_ext, verify_leibniz_gen,
    verify_moser_gen, Exclusion, ExponentVariant, GuardHandling, Outcome,
};
use crate::error::{Error, Result};
use crate::euler_chain::check_generalized_euler;
use crate::report::CongruenceReport;

/// A verifier family selectable for `verify` and `scan`. `MoserSierpinski`
/// yields both direction reports per point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Gauss,
    LTheorems,
    EulerGen,
    LagrangeExt,
    MoserSierpinski,
    FermatWilson,
    Leibniz,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Gauss,
        Family::LTheorems,
        Family::EulerGen,
        Family::LagrangeExt,
        Family::MoserSierpinski,
        Family::FermatWilson,
        Family::Leibniz,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Gauss => "gauss",
            Family::LTheorems => "l-theorems",
            Family::EulerGen => "euler-gen",
            Family::LagrangeExt => "lagrange-ext",
            Family::MoserSierpinski => "moser",
            Family::FermatWilson => "fermat-wilson",
            Family::Leibniz => "leibniz",
        }
    }

    pub fn uses_x(&self) -> bool {
        matches!(
            self,
            Family::LTheorems | Family::EulerGen | Family::LagrangeExt | Family::MoserSierpinski
        )
    }

    pub fn uses_a(&self) -> bool {
        matches!(self, Family::MoserSierpinski | Family::FermatWilson)
    }

    /// x sweeps a full residue system unless told otherwise; Moser defaults
    /// to `x = 0`, the classical form.
    pub fn default_x(&self) -> Option<Span> {
        match self {
            Family::MoserSierpinski => Some(Span::single(SpanRange::fixed(0, 0))),
            f if f.uses_x() => Some(Span::single(SpanRange::residues())),
            _ => None,
        }
    }

    pub fn default_a(&self) -> Option<Span> {
        self.uses_a().then(|| Span::single(SpanRange::residues()))
    }

    /// Evaluates one point. Missing parameters are an error.
    pub fn verify_point(
        &self,
        m: i64,
        x: Option<i64>,
        a: Option<i64>,
        variant: ExponentVariant,
        guard: GuardHandling,
    ) -> Result<Vec<Outcome>> {
        let need = |v: Option<i64>, param| {
            v.ok_or_else(|| Error::MissingParameter {
                theorem: self.to_string(),
                param,
            })
        };
        let checked = |r: CongruenceReport| vec![Outcome::Checked(r)];
        Ok(match self {
            Family::Gauss => checked(verify_gauss(m)?),
            Family::LTheorems => checked(verify_l_theorems(need(x, "x")?, m)?),
            Family::EulerGen => checked(check_generalized_euler(need(x, "x")?, m)?),
            Family::LagrangeExt => vec![verify_lagrange_ext(need(x, "x")?, m, guard)?],
            Family::MoserSierpinski => verify_moser_gen(need(a, "a")?, need(x, "x")?, m, variant)?
                .into_iter()
                .map(Outcome::Checked)
                .collect(),
            Family::FermatWilson => vec![verify_fermat_wilson(need(a, "a")?, m, guard)?],
            Family::Leibniz => checked(verify_leibniz_gen(m)?),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        match key.as_str() {
            "sierpinski" | "moser-sierpinski" => Ok(Family::MoserSierpinski),
            _ => Family::ALL
                .into_iter()
                .find(|f| f.as_str() == key)
                .ok_or_else(|| Error::UnknownTheorem(s.to_string())),
        }
    }
}

/// A range endpoint `k·|m| + c`, written like `2m+1`, `m-1`, `-20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub per_modulus: i64,
    pub offset: i64,
}

impl Bound {
    pub fn constant(offset: i64) -> Self {
        Bound {
            per_modulus: 0,
            offset,
        }
    }

    fn at(&self, n: i64) -> Result<i64> {
        self.per_modulus
            .checked_mul(n)
            .and_then(|v| v.checked_add(self.offset))
            .ok_or(Error::Overflow("range bound"))
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRange(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        let mut cuts: Vec<usize> = text
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .collect();
        cuts.insert(0, 0);
        cuts.push(text.len());
        let mut bound = Bound::constant(0);
        for w in cuts.windows(2) {
            let term = &text[w[0]..w[1]];
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if let Some(coeff) = body.strip_suffix('m') {
                let k: i64 = if coeff.is_empty() {
                    1
                } else {
                    coeff.parse().map_err(|_| bad())?
                };
                bound.per_modulus += sign * k;
            } else {
                let v: i64 = body.parse().map_err(|_| bad())?;
                bound.offset += sign * v;
            }
        }
        Ok(bound)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.per_modulus {
            0 => return write!(f, "{}", self.offset),
            1 => write!(f, "m")?,
            -1 => write!(f, "-m")?,
            k => write!(f, "{k}m")?,
        }
        match self.offset {
            0 => Ok(()),
            c if c > 0 => write!(f, "+{c}"),
            c => write!(f, "{c}"),
        }
    }
}

/// Inclusive range `lo..hi` whose endpoints may depend on `|m|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanRange {
    pub lo: Bound,
    pub hi: Bound,
}

impl SpanRange {
    pub fn fixed(lo: i64, hi: i64) -> Self {
        SpanRange {
            lo: Bound::constant(lo),
            hi: Bound::constant(hi),
        }
    }

    /// `0..m-1`
    pub fn residues() -> Self {
        SpanRange {
            lo: Bound::constant(0),
            hi: Bound {
                per_modulus: 1,
                offset: -1,
            },
        }
    }

    pub fn is_fixed(&self) -> bool {
        self.lo.per_modulus == 0 && self.hi.per_modulus == 0
    }

    pub fn resolve(&self, n: i64) -> Result<RangeInclusive<i64>> {
        Ok(self.lo.at(n)?..=self.hi.at(n)?)
    }
}

impl FromStr for SpanRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once("..") {
            Some((lo, hi)) => Ok(SpanRange {
                lo: lo.parse()?,
                hi: hi.trim_start_matches('=').parse()?,
            }),
            None => {
                let b: Bound = s.parse()?;
                Ok(SpanRange { lo: b, hi: b })
            }
        }
    }
}

impl fmt::Display for SpanRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Union of ranges, e.g. `0,1,5` or `1..m-1,2m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub parts: Vec<SpanRange>,
}

impl Span {
    pub fn single(r: SpanRange) -> Self {
        Span { parts: vec![r] }
    }

    /// Sorted distinct values at modulus magnitude `n`.
    pub fn values(&self, n: i64) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        for part in &self.parts {
            out.extend(part.resolve(n)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn is_fixed(&self) -> bool {
        self.parts.iter().all(SpanRange::is_fixed)
    }
}

impl FromStr for Span {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<SpanRange>>>()?;
        Ok(Span { parts })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// The swept rectangle. `m` must be fixed; `x` and `a` may depend on `|m|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRanges {
    pub m: Span,
    pub x: Option<Span>,
    pub a: Option<Span>,
}

impl ScanRanges {
    pub fn moduli(m: RangeInclusive<i64>) -> Self {
        ScanRanges {
            m: Span::single(SpanRange::fixed(*m.start(), *m.end())),
            x: None,
            a: None,
        }
    }

    pub fn with_x(mut self, x: Span) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_a(mut self, a: Span) -> Self {
        self.a = Some(a);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub variant: ExponentVariant,
    pub guard: GuardHandling,
    /// Worker threads; 0 means one per available processor.
    pub workers: usize,
    /// Keep every evaluated report, not only the violations.
    pub keep_all: bool,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub family: Family,
    /// Ranges with defaults filled in.
    pub ranges: ScanRanges,
    pub options: ScanOptions,
    /// Evaluated reports (Moser/Sierpinski count two per point).
    pub total_cases: u64,
    /// Points skipped by the theorem's hypotheses.
    pub excluded: Vec<Exclusion>,
    pub violations: Vec<CongruenceReport>,
    /// Every evaluated report when `keep_all` is set, else empty.
    pub reports: Vec<CongruenceReport>,
    pub elapsed: Duration,
}

impl ScanResult {
    /// Violations at points the hypotheses exclude (only with `Include`).
    pub fn flagged_violations(&self) -> usize {
        self.violations
            .iter()
            .filter(|r| r.excluded_by_hypothesis)
            .count()
    }
}

#[derive(Default)]
struct Partial {
    total: u64,
    excluded: Vec<Exclusion>,
    violations: Vec<CongruenceReport>,
    reports: Vec<CongruenceReport>,
}

fn sweep_modulus(
    family: Family,
    m: i64,
    ranges: &ScanRanges,
    options: &ScanOptions,
) -> Result<Partial> {
    let n = m.unsigned_abs().min(i64::MAX as u64) as i64;
    let expand = |span: &Option<Span>| -> Result<Vec<Option<i64>>> {
        Ok(match span {
            Some(s) => s.values(n)?.into_iter().map(Some).collect(),
            None => vec![None],
        })
    };
    let xs = expand(&ranges.x)?;
    let as_ = expand(&ranges.a)?;
    let mut part = Partial::default();
    for &x in &xs {
        for &a in &as_ {
            for outcome in family.verify_point(m, x, a, options.variant, options.guard)? {
                match outcome {
                    Outcome::Checked(r) => {
                        part.total += 1;
                        if !r.holds {
                            part.violations.push(r.clone());
                        }
                        if options.keep_all {
                            part.reports.push(r);
                        }
                    }
                    Outcome::Excluded(e) => part.excluded.push(e),
                }
            }
        }
    }
    Ok(part)
}

/// Runs `family` over every point of `ranges`.
///
/// Moduli are distributed across worker threads; partial results are merged
/// in modulus order and violations sorted by `(m, x, a)`, so the result is
/// independent of the worker count. The first error in canonical order is
/// returned.
pub fn scan(family: Family, ranges: &ScanRanges, options: ScanOptions) -> Result<ScanResult> {
    let started = Instant::now();
    if !ranges.m.is_fixed() {
        return Err(Error::InvalidRange(format!(
            "m range `{}` cannot refer to m",
            ranges.m
        )));
    }
    let mut ranges = ranges.clone();
    for (given, used, param, default) in [
        (&mut ranges.x, family.uses_x(), "x", family.default_x()),
        (&mut ranges.a, family.uses_a(), "a", family.default_a()),
    ] {
        match (&given, used) {
            (Some(_), false) => {
                return Err(Error::UnusedParameter {
                    theorem: family.to_string(),
                    param,
                })
            }
            (None, true) => *given = default,
            _ => {}
        }
    }
    let moduli = ranges.m.values(0)?;
    if moduli.is_empty() {
        return Err(Error::EmptyRange(format!("m = {}", ranges.m)));
    }
    for (span, name) in [(&ranges.x, "x"), (&ranges.a, "a")] {
        if let Some(span) = span.as_ref().filter(|s| s.is_fixed()) {
            if span.values(0)?.is_empty() {
                return Err(Error::EmptyRange(format!("{name} = {span}")));
            }
        }
    }

    let workers = match options.workers {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidRange(format!("cannot start {workers} workers: {e}")))?;
    let partials: Vec<Result<Partial>> = pool.install(|| {
        moduli
            .par_iter()
            .map(|&m| sweep_modulus(family, m, &ranges, &options))
            .collect()
    });

    let mut merged = Partial::default();
    for part in partials {
        let part = part?;
        merged.total += part.total;
        merged.excluded.extend(part.excluded);
        merged.violations.extend(part.violations);
        merged.reports.extend(part.reports);
    }
    merged.violations.sort_by(CongruenceReport::canonical_cmp);
    merged.reports.sort_by(CongruenceReport::canonical_cmp);
    merged.excluded.sort_by_key(|e| (e.m, e.x, e.a, e.theorem));

    Ok(ScanResult {
        family,
        ranges,
        options,
        total_cases: merged.total,
        excluded: merged.excluded,
        violations: merged.violations,
        reports: merged.reports,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(s: &str) -> Span {
        s.parse().unwrap()
    }

    #[test]
    fn bound_syntax() {
        let cases = [
            ("5", 0, 5),
            ("-20", 0, -20),
            ("m", 1, 0),
            ("-m", -1, 0),
            ("2m", 2, 0),
            ("m-1", 1, -1),
            ("2m+1", 2, 1),
            ("3 - m", -1, 3),
        ];
        for (s, k, c) in cases {
            let b: Bound = s.parse().unwrap();
            assert_eq!((b.per_modulus, b.offset), (k, c), "{s}");
        }
        for bad in ["", "x", "m2", "1..", "--"] {
            assert!(bad.parse::<Bound>().is_err(), "{bad}");
        }
        assert_eq!("2m+1".parse::<Bound>().unwrap().to_string(), "2m+1");
        assert_eq!("m-1".parse::<Bound>().unwrap().to_string(), "m-1");
        assert_eq!("-7".parse::<Bound>().unwrap().to_string(), "-7");
    }

    #[test]
    fn span_values() {
        assert_eq!(span("0,1,5").values(9).unwrap(), vec![0, 1, 5]);
        assert_eq!(span("1..2m").values(3).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(span("-2..2,0..1").values(3).unwrap(), vec![-2, -1, 0, 1, 2]);
        assert!(span("3..1").values(0).unwrap().is_empty());
        assert_eq!(span("0..m-1").to_string(), "0..m-1");
        assert_eq!(span("4").to_string(), "4");
    }

    #[test]
    fn family_names() {
        for f in Family::ALL {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
        assert_eq!(
            "sierpinski".parse::<Family>().unwrap(),
            Family::MoserSierpinski
        );
        assert!(matches!(
            "nope".parse::<Family>(),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn gauss_scan_counts() {
        let r = scan(
            Family::Gauss,
            &ScanRanges::moduli(2..=100),
            ScanOptions::default(),
        )
        .unwrap();
        assert_eq!(r.total_cases, 99);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn l_theorem_scan_uses_residue_default() {
        let r = scan(
            Family::LTheorems,
            &ScanRanges::moduli(2..=50),
            ScanOptions::default(),
        )
        .unwrap();
        assert_eq!(r.total_cases, (2..=50).sum::<u64>());
        assert!(r.violations.is_empty());
        assert_eq!(r.ranges.x, Some(span("0..m-1")));
    }

    #[test]
    fn guard_handling_in_scan() {
        let ranges = ScanRanges::moduli(4..=4).with_x(span("1..20"));
        let respect = scan(Family::LagrangeExt, &ranges, ScanOptions::default()).unwrap();
        assert_eq!((respect.total_cases, respect.excluded.len()), (0, 20));
        let include = ScanOptions {
            guard: GuardHandling::Include,
            ..ScanOptions::default()
        };
        let r = scan(Family::LagrangeExt, &ranges, include).unwrap();
        assert_eq!(r.total_cases, 20);
        // x ≡ 0 (mod 4) are the failing points
        let xs: Vec<_> = r.violations.iter().map(|v| v.x.unwrap()).collect();
        assert_eq!(xs, vec![4, 8, 12, 16, 20]);
        assert_eq!(r.flagged_violations(), 5);
    }

    #[test]
    fn scan_errors() {
        let empty = ScanRanges {
            m: span("5..2"),
            x: None,
            a: None,
        };
        assert!(matches!(
            scan(Family::Gauss, &empty, ScanOptions::default()),
            Err(Error::EmptyRange(_))
        ));
        let with_x = ScanRanges::moduli(2..=5).with_x(span("0"));
        assert!(matches!(
            scan(Family::Gauss, &with_x, ScanOptions::default()),
            Err(Error::UnusedParameter { .. })
        ));
        let through_zero = ScanRanges::moduli(-2..=2);
        assert_eq!(
            scan(Family::Gauss, &through_zero, ScanOptions::default()).unwrap_err(),
            Error::ZeroModulus
        );
        let relative_m = ScanRanges {
            m: span("1..m"),
            x: None,
            a: None,
        };
        assert!(scan(Family::Gauss, &relative_m, ScanOptions::default()).is_err());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let ranges = ScanRanges::moduli(1..=60)
            .with_x(span("0..m"))
            .with_a(span("-5..5"));
        let run = |workers| {
            let opts = ScanOptions {
                workers,
                keep_all: true,
                variant: ExponentVariant::FullPhi,
                ..ScanOptions::default()
            };
            let r = scan(Family::MoserSierpinski, &ranges, opts).unwrap();
            (r.total_cases, r.violations, r.reports)
        };
        let single = run(1);
        assert_eq!(single, run(8));
        assert_eq!(single, run(3));
    }
}
