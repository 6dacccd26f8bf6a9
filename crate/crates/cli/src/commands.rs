use std::fs::File;
use std::io::{self, BufWriter, Write};

use congruence_core::oracle::{brute_l_suite, lemma1_suite, lemma2_suite, lemma3_suite};
use congruence_core::{
    classify, common_divisor_split, euler_chain, gauss_sign, phi, predict_shifted_product,
    reduced_residues, scan, shifted_product, split_particular_solution, ClassForm,
    CongruenceReport, Exclusion, Outcome, ScanOptions, ScanRanges, ScanResult,
};

use crate::record::{Emitter, OutputRecord, Value};
use crate::{Cli, Command, ScanArgs, VerifyArgs, EXIT_OK, EXIT_VIOLATIONS};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Core(#[from] congruence_core::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
}

type Result<T> = std::result::Result<T, CommandError>;

/// Computes everything first, then writes. A command that fails never leaves
/// partial records behind.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let (records, summary, code) = match &cli.command {
        Command::Classify(arg) => (vec![classify_record(arg.value())?], None, EXIT_OK),
        Command::Residues(arg) => (vec![residues_record(arg.value())?], None, EXIT_OK),
        Command::L(p) => {
            let rec = l_record(p.x, p.m)?;
            let code = match rec.get("holds") {
                Some(Value::Bool(true)) => EXIT_OK,
                _ => EXIT_VIOLATIONS,
            };
            (vec![rec], None, code)
        }
        Command::Predict(p) => (vec![predict_record(p.x, p.m)?], None, EXIT_OK),
        Command::Chain(p) => (vec![chain_record(p.x, p.m)?], None, EXIT_OK),
        Command::Verify(args) => verify(args)?,
        Command::Scan(args) => {
            let result = run_scan(args)?;
            let _ = writeln!(
                stderr,
                "scanned {} cases in {:.3}s",
                result.total_cases,
                result.elapsed.as_secs_f64()
            );
            scan_output(&result, args.all)
        }
        Command::Selfcheck => selfcheck()?,
    };

    match &cli.out {
        Some(path) => {
            let mut file = Emitter::new(BufWriter::new(File::create(path)?), cli.format);
            for r in &records {
                file.emit(r)?;
            }
            file.flush()?;
        }
        None => {
            let mut out = Emitter::new(&mut *stdout, cli.format);
            for r in &records {
                out.emit(r)?;
            }
        }
    }
    if let Some(summary) = summary {
        Emitter::new(&mut *stdout, cli.format).emit(&summary)?;
    }
    stdout.flush()?;
    Ok(code)
}

fn classify_record(m: i64) -> Result<OutputRecord> {
    let v = classify(m)?;
    let (p, beta, alpha) = match v.form {
        ClassForm::OddPrimePower { p, beta } | ClassForm::TwiceOddPrimePower { p, beta } => {
            (Some(p), Some(i64::from(beta)), None)
        }
        ClassForm::PowerOfTwoSmall { alpha } => (None, None, Some(i64::from(alpha))),
        ClassForm::Zero | ClassForm::NotInA => (None, None, None),
    };
    let sign = if m == 0 { None } else { Some(gauss_sign(m)?) };
    Ok(OutputRecord::new("classify")
        .field("m", m)
        .field("member", v.member)
        .field("form", v.form.name())
        .field("p", p)
        .field("beta", beta)
        .field("alpha", alpha)
        .field("sign", sign))
}

fn residues_record(m: i64) -> Result<OutputRecord> {
    let rs = reduced_residues(m)?;
    Ok(OutputRecord::new("residues")
        .field("m", m)
        .field("phi", phi(m)?)
        .field("residues", Value::Ints(rs.residues().to_vec())))
}

fn split_fields(rec: OutputRecord, x: i64, m: i64) -> Result<OutputRecord> {
    let split = common_divisor_split(x, m)?;
    let sign = gauss_sign(m)?;
    let k = split_particular_solution(split.shared, split.coprime, sign)?;
    Ok(rec
        .field("d", split.shared)
        .field("m_prime", split.coprime)
        .field("sign", sign)
        .field("k1", k.k1)
        .field("k2", k.k2))
}

fn l_record(x: i64, m: i64) -> Result<OutputRecord> {
    let value = shifted_product(x, m)?;
    let predicted = predict_shifted_product(x, m)?;
    let rec = OutputRecord::new("L")
        .field("x", x)
        .field("m", m)
        .field("L", value)
        .field("predicted", predicted);
    Ok(split_fields(rec, x, m)?.field("holds", value == predicted))
}

fn predict_record(x: i64, m: i64) -> Result<OutputRecord> {
    let rec = OutputRecord::new("predict")
        .field("x", x)
        .field("m", m)
        .field("predicted", predict_shifted_product(x, m)?);
    split_fields(rec, x, m)
}

fn chain_record(x: i64, m: i64) -> Result<OutputRecord> {
    let chain = euler_chain(x, m)?;
    let steps = if chain.steps.is_empty() {
        "-".to_string()
    } else {
        chain
            .steps
            .iter()
            .map(|s| format!("{}:{}", s.divisor, s.cofactor))
            .collect::<Vec<_>>()
            .join(";")
    };
    Ok(OutputRecord::new("chain")
        .field("x", x)
        .field("m", m)
        .field("s", i64::from(chain.depth))
        .field("m_s", chain.terminal)
        .field("exponent", chain.exponent()? as i64)
        .field("steps", steps))
}

pub fn report_record(r: &CongruenceReport) -> OutputRecord {
    OutputRecord::new("report")
        .field("theorem", r.theorem.as_str())
        .field("m", r.m)
        .field("x", r.x)
        .field("a", r.a)
        .field("modulus", r.modulus)
        .field("lhs", r.lhs)
        .field("rhs", r.rhs)
        .field("holds", r.holds)
        .field("excluded_by_hypothesis", r.excluded_by_hypothesis)
        .field("note", r.note.clone().unwrap_or_else(|| "-".into()))
}

fn exclusion_record(e: &Exclusion) -> OutputRecord {
    OutputRecord::new("excluded")
        .field("theorem", e.theorem.as_str())
        .field("m", e.m)
        .field("x", e.x)
        .field("a", e.a)
        .field("reason", e.reason)
}

type Rendered = (Vec<OutputRecord>, Option<OutputRecord>, i32);

fn verify(args: &VerifyArgs) -> Result<Rendered> {
    let family = args.select.family();
    for (given, used, param) in [
        (args.x, family.uses_x(), "x"),
        (args.a, family.uses_a(), "a"),
    ] {
        if given.is_some() && !used {
            return Err(congruence_core::Error::UnusedParameter {
                theorem: family.to_string(),
                param,
            }
            .into());
        }
    }
    let outcomes = family.verify_point(
        args.m,
        args.x,
        args.a,
        args.variant.variant,
        args.variant.guard,
    )?;
    let failed = outcomes
        .iter()
        .filter_map(Outcome::report)
        .any(|r| !r.holds);
    let records = outcomes
        .iter()
        .map(|o| match o {
            Outcome::Checked(r) => report_record(r),
            Outcome::Excluded(e) => exclusion_record(e),
        })
        .collect();
    Ok((
        records,
        None,
        if failed { EXIT_VIOLATIONS } else { EXIT_OK },
    ))
}

fn run_scan(args: &ScanArgs) -> Result<ScanResult> {
    let ranges = ScanRanges {
        m: args.m_range.clone(),
        x: args.x_range.clone(),
        a: args.a_range.clone(),
    };
    let options = ScanOptions {
        variant: args.variant.variant,
        guard: args.variant.guard,
        workers: args.workers,
        keep_all: args.all,
    };
    Ok(scan(args.select.family(), &ranges, options)?)
}

pub fn scan_summary(result: &ScanResult) -> OutputRecord {
    let span =
        |s: &Option<congruence_core::Span>| s.as_ref().map_or("-".to_string(), |s| s.to_string());
    OutputRecord::new("summary")
        .field("theorem", result.family.as_str())
        .field("m_range", result.ranges.m.to_string())
        .field("x_range", span(&result.ranges.x))
        .field("a_range", span(&result.ranges.a))
        .field("variant", result.options.variant.as_str())
        .field("guard", result.options.guard.as_str())
        .field("cases", result.total_cases as i64)
        .field("excluded", result.excluded.len() as i64)
        .field("violations", result.violations.len() as i64)
        .field("flagged_violations", result.flagged_violations() as i64)
        .field(
            "status",
            if result.violations.is_empty() {
                "ok"
            } else {
                "violations"
            },
        )
}

fn scan_output(result: &ScanResult, all: bool) -> Rendered {
    let records = if all {
        let mut recs: Vec<OutputRecord> = result.reports.iter().map(report_record).collect();
        recs.extend(result.excluded.iter().map(exclusion_record));
        recs
    } else {
        result.violations.iter().map(report_record).collect()
    };
    let code = if result.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    };
    (records, Some(scan_summary(result)), code)
}

fn selfcheck() -> Result<Rendered> {
    let suites = [
        lemma1_suite(),
        lemma2_suite(),
        lemma3_suite(),
        brute_l_suite(300, shifted_product)?,
    ];
    let records = suites
        .iter()
        .map(|s| {
            OutputRecord::new("selfcheck")
                .field("suite", s.name)
                .field("checks", s.checks as i64)
                .field("failures", s.failures.len() as i64)
                .field(
                    "first_failure",
                    s.failures.first().cloned().unwrap_or_else(|| "-".into()),
                )
        })
        .collect();
    let failures: usize = suites.iter().map(|s| s.failures.len()).sum();
    let summary = OutputRecord::new("selfcheck-summary")
        .field("suites", suites.len() as i64)
        .field(
            "checks",
            suites.iter().map(|s| s.checks as i64).sum::<i64>(),
        )
        .field("failures", failures as i64)
        .field("status", if failures == 0 { "ok" } else { "failures" });
    Ok((
        records,
        Some(summary),
        if failures == 0 {
            EXIT_OK
        } else {
            EXIT_VIOLATIONS
        },
    ))
}
