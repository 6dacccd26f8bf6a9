//! Acceptance sweeps. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use congruence_core::oracle::{brute_l_suite, lemma1_suite, lemma2_suite, lemma3_suite};
use congruence_core::{
    predict_shifted_product, scan, shifted_product, split_congruences, split_particular_solution,
    CongruenceReport, ExponentVariant, Family, GuardHandling, ScanOptions, ScanRanges, ScanResult,
    Span,
};

const GAUSS_SCAN_BUDGET: Duration = Duration::from_secs(30);
const SUITE_BUDGET: Duration = Duration::from_secs(300);

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }
}

fn span(s: &str) -> Span {
    s.parse().expect("static range")
}

fn ranges(m: &str, x: Option<&str>, a: Option<&str>) -> ScanRanges {
    ScanRanges {
        m: span(m),
        x: x.map(span),
        a: a.map(span),
    }
}

fn run_scan(
    family: Family,
    r: &ScanRanges,
    variant: ExponentVariant,
    guard: GuardHandling,
) -> ScanResult {
    let options = ScanOptions {
        variant,
        guard,
        ..ScanOptions::default()
    };
    scan(family, r, options).expect("valid scan")
}

fn points(reports: &[CongruenceReport], limit: usize) -> String {
    let shown: Vec<String> = reports
        .iter()
        .take(limit)
        .map(|r| {
            let mut p = format!("m={}", r.m);
            if let Some(x) = r.x {
                p += &format!(",x={x}");
            }
            if let Some(a) = r.a {
                p += &format!(",a={a}");
            }
            format!("({p}: {}≢{})", r.lhs, r.rhs)
        })
        .collect();
    let more = reports.len().saturating_sub(limit);
    if more > 0 {
        format!("{} … +{more} more", shown.join(" "))
    } else {
        shown.join(" ")
    }
}

fn binary(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_congruence"))
        .args(args)
        .output()
        .expect("run congruence binary");
    (out.status.code(), out.stdout)
}

fn gauss_sweep() -> Verdict {
    let started = Instant::now();
    let (code, stdout) = binary(&["scan", "gauss", "--m", "2..3000", "--workers", "1"]);
    let elapsed = started.elapsed();
    let text = String::from_utf8_lossy(&stdout);
    let summary = text.lines().last().unwrap_or_default();
    let ok = code == Some(0)
        && summary.contains(" cases=2999 ")
        && summary.contains(" violations=0 ")
        && elapsed < GAUSS_SCAN_BUDGET;
    Verdict::new(
        ok,
        format!("exit={code:?} {summary} in {:.2}s", elapsed.as_secs_f64()),
    )
}

fn l_theorem_sweep() -> Verdict {
    let mut cases = 0;
    let mut bad = Vec::new();
    for m in 2..=300i64 {
        for x in 0..m {
            cases += 1;
            let l = shifted_product(x, m).unwrap();
            let predicted = predict_shifted_product(x, m).unwrap();
            let check = split_congruences(x, m).unwrap();
            if l != predicted || !check.holds() {
                bad.push(format!("(x={x},m={m})"));
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!("{cases} cases, {} violations {}", bad.len(), bad.join(" "))
            .trim_end()
            .to_string(),
    )
}

fn diophantine_consistency() -> Verdict {
    let mut cases = 0;
    let mut bad = Vec::new();
    for m in 2..=300i64 {
        for x in 0..m {
            let check = split_congruences(x, m).unwrap();
            let (d, mp, eps) = (check.split.shared, check.split.coprime, check.sign);
            if d == 1 {
                continue;
            }
            cases += 1;
            let k = split_particular_solution(d, mp, eps).unwrap();
            let exact = k.k2 * mp - k.k1 * d == eps;
            let combined = (eps + k.k1 * d - k.k2 * mp).rem_euclid(m) == 0;
            let matches_l = (eps + k.k1 * d).rem_euclid(m) == check.value;
            if !(exact && combined && matches_l) {
                bad.push(format!("(x={x},m={m})"));
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{cases} cases with d>1, {} violations {}",
            bad.len(),
            bad.join(" ")
        )
        .trim_end()
        .to_string(),
    )
}

fn euler_sweep() -> Verdict {
    let r = run_scan(
        Family::EulerGen,
        &ranges("1..500", Some("0..2m"), None),
        ExponentVariant::ChainPhi,
        GuardHandling::Respect,
    );
    Verdict::new(
        r.violations.is_empty() && r.total_cases == (1..=500u64).map(|m| 2 * m + 1).sum(),
        format!(
            "{} cases, {} violations {}",
            r.total_cases,
            r.violations.len(),
            points(&r.violations, 5)
        ),
    )
}

fn lagrange_sweep() -> Verdict {
    let main = run_scan(
        Family::LagrangeExt,
        &ranges("2..3,5..200", Some("1..2m"), None),
        ExponentVariant::ChainPhi,
        GuardHandling::Respect,
    );
    let four = run_scan(
        Family::LagrangeExt,
        &ranges("4", Some("1..8"), None),
        ExponentVariant::ChainPhi,
        GuardHandling::Include,
    );
    Verdict::new(
        main.violations.is_empty(),
        format!(
            "{} cases, {} violations {}; m=4 under --guard include: {} of {} cases violate {}",
            main.total_cases,
            main.violations.len(),
            points(&main.violations, 6),
            four.violations.len(),
            four.total_cases,
            points(&four.violations, 4),
        ),
    )
}

fn moser_sweep() -> Verdict {
    let r = ranges("2..100", Some("0,1,5"), Some("-20..20"));
    let chain = run_scan(
        Family::MoserSierpinski,
        &r,
        ExponentVariant::ChainPhi,
        GuardHandling::Respect,
    );
    let full = run_scan(
        Family::MoserSierpinski,
        &r,
        ExponentVariant::FullPhi,
        GuardHandling::Respect,
    );
    Verdict::new(
        chain.violations.is_empty() && chain.total_cases == 2 * 41 * 99 * 3,
        format!(
            "chain-phi: {} reports, {} violations; full-phi (recorded only): {} violations",
            chain.total_cases,
            chain.violations.len(),
            full.violations.len()
        ),
    )
}

fn fermat_wilson_sweep() -> Verdict {
    let r = run_scan(
        Family::FermatWilson,
        &ranges("1..300", None, Some("-50..50")),
        ExponentVariant::ChainPhi,
        GuardHandling::Include,
    );
    let (flagged, outside): (Vec<_>, Vec<_>) = r.violations.iter().cloned().partition(|v| v.m == 4);
    Verdict::new(
        outside.is_empty() && r.total_cases == 300 * 101,
        format!(
            "{} cases, {} violations outside m=4 {}; m=4 column: {} of 101 violate",
            r.total_cases,
            outside.len(),
            points(&outside, 5),
            flagged.len()
        ),
    )
}

fn leibniz_sweep() -> Verdict {
    let r = run_scan(
        Family::Leibniz,
        &ranges("2..2000", None, None),
        ExponentVariant::ChainPhi,
        GuardHandling::Respect,
    );
    Verdict::new(
        r.violations.is_empty() && r.total_cases == 1999,
        format!("{} cases, {} violations", r.total_cases, r.violations.len()),
    )
}

fn oracle_equivalence() -> Verdict {
    let suites = [
        brute_l_suite(300, shifted_product).unwrap(),
        lemma1_suite(),
        lemma2_suite(),
        lemma3_suite(),
    ];
    let detail: Vec<String> = suites
        .iter()
        .map(|s| {
            format!(
                "{}: {} checks, {} failures",
                s.name,
                s.checks,
                s.failures.len()
            )
        })
        .collect();
    Verdict::new(suites.iter().all(|s| s.passed()), detail.join("; "))
}

fn determinism() -> Verdict {
    let scans: [&[&str]; 4] = [
        &["scan", "gauss", "--m", "2..500", "--all", "--format", "csv"],
        &[
            "scan",
            "l-theorems",
            "--m",
            "2..80",
            "--all",
            "--format",
            "jsonl",
        ],
        &[
            "scan",
            "lagrange-ext",
            "--m",
            "2..60",
            "--x",
            "1..2m",
            "--guard",
            "include",
        ],
        &[
            "scan",
            "moser",
            "--m",
            "2..40",
            "--x",
            "0,1,5",
            "--a",
            "-20..20",
            "--variant",
            "full-phi",
            "--all",
        ],
    ];
    let mut bad = Vec::new();
    for args in scans {
        let with = |w: &str| binary(&[args, &["--workers", w]].concat());
        let one = with("1");
        if one != with("1") || one != with("8") {
            bad.push(args[1]);
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{} scans compared across reruns and --workers 1 vs 8; differing: {bad:?}",
            scans.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 gauss sweep m in [2,3000]", gauss_sweep),
        ("2 L(x,m) = predicted, m in [2,300]", l_theorem_sweep),
        ("3 diophantine consistency", diophantine_consistency),
        (
            "4 generalized Euler, m in [1,500], x in [0,2m]",
            euler_sweep,
        ),
        (
            "5 extended Lagrange, m in [2,200]\\{4}, x in [1,2m]",
            lagrange_sweep,
        ),
        ("6 Moser/Sierpinski chain-phi", moser_sweep),
        (
            "7 Fermat-Wilson, a in [-50,50], m in [1,300]",
            fermat_wilson_sweep,
        ),
        ("8 Leibniz, m in [2,2000]", leibniz_sweep),
        ("9 oracle equivalence and lemma suites", oracle_equivalence),
        ("10 determinism", determinism),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let v = check();
        failed += usize::from(!v.passed);
        println!(
            "[{}] criterion {name} ({:.2}s): {}",
            if v.passed { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            v.detail
        );
    }
    let total = started.elapsed();
    let in_budget = total < SUITE_BUDGET;
    failed += usize::from(!in_budget);
    println!(
        "[{}] total runtime {:.2}s (budget {}s)",
        if in_budget { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        SUITE_BUDGET.as_secs()
    );
    println!("acceptance: {failed} failing");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
