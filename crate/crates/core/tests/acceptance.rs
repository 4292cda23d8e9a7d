//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use stairbasin::basinlab::{
    run_divisibility, run_et_closure_covers, run_prop1, run_prop2, run_punc_consistency,
    run_torus_calibration, ExperimentReport,
};
use stairbasin::orders::{
    build_poset, check_certificate, dominance, find_certificate, incidence_filter, leq_et,
    leq_punc, leq_punc_via_splitting, Order,
};
use stairbasin::staircase::{enumerate, Direction, StandardSet};

const TRIALS: usize = 100;
const SEED: u64 = 20_240_601;

fn cols(c: &[u32]) -> StandardSet {
    StandardSet::from_columns(c.iter().copied())
}

fn rows(r: &[u32]) -> StandardSet {
    StandardSet::from_rows(r.iter().copied())
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Partition numbers by the recurrence on the largest part.
fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    // p[k][m]: partitions of m with parts at most k
    let mut p = vec![vec![0u64; n + 1]; n + 1];
    for row in p.iter_mut() {
        row[0] = 1;
    }
    for k in 1..=n {
        for m in 1..=n {
            p[k][m] = p[k - 1][m] + if m >= k { p[k][m - k] } else { 0 };
        }
    }
    p[n][n]
}

fn c1_enumeration() -> Outcome {
    let expected = [1u64, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    for (n, &want) in (1..=10).zip(&expected) {
        let got = enumerate(n).len() as u64;
        ensure(got == want && partition_count(n) == want, || {
            format!(
                "n={n}: enumerate {got}, recurrence {}, table {want}",
                partition_count(n)
            )
        })?;
    }
    Ok("|st_n| = 1,2,3,5,7,11,15,22,30,42".into())
}

fn c2_sum_examples() -> Outcome {
    let a = cols(&[4, 3, 3, 3, 3, 1]);
    let b = cols(&[5, 5, 3, 3]);
    let first = a.c4_sum(&b, Direction::First);
    let second = a.c4_sum(&b, Direction::Second);
    ensure(first == cols(&[5, 5, 4, 3, 3, 3, 3, 3, 3, 1]), || {
        format!("direction 1 gave {first}")
    })?;
    ensure(second == rows(&[6, 5, 5, 4, 4, 4, 2, 2, 1]), || {
        format!("direction 2 gave rows {:?}", second.rows())
    })?;
    Ok(format!("+1 = {first}, +2 rows = {:?}", second.rows()))
}

fn edge_set(edges: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    edges
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

const ET_6: [(&str, &str); 17] = [
    ("6", "5,1"),
    ("5,1", "4,1,1"),
    ("5,1", "4,2"),
    ("4,1,1", "3,2,1"),
    ("4,1,1", "3,1,1,1"),
    ("4,2", "3,3"),
    ("4,2", "3,1,1,1"),
    ("4,2", "3,2,1"),
    ("3,2,1", "2,2,2"),
    ("3,2,1", "2,1,1,1,1"),
    ("3,2,1", "2,2,1,1"),
    ("3,1,1,1", "2,1,1,1,1"),
    ("3,1,1,1", "2,2,1,1"),
    ("3,3", "2,2,1,1"),
    ("2,2,2", "1,1,1,1,1,1"),
    ("2,1,1,1,1", "1,1,1,1,1,1"),
    ("2,2,1,1", "1,1,1,1,1,1"),
];

const PUNC_6: [(&str, &str); 17] = [
    ("6", "3,3"),
    ("6", "5,1"),
    ("6", "4,2"),
    ("3,3", "3,2,1"),
    ("5,1", "4,1,1"),
    ("5,1", "3,2,1"),
    ("4,2", "3,2,1"),
    ("4,2", "4,1,1"),
    ("4,2", "2,2,2"),
    ("3,2,1", "3,1,1,1"),
    ("3,2,1", "2,2,1,1"),
    ("4,1,1", "2,2,1,1"),
    ("4,1,1", "3,1,1,1"),
    ("2,2,2", "2,2,1,1"),
    ("3,1,1,1", "2,1,1,1,1"),
    ("2,2,1,1", "2,1,1,1,1"),
    ("2,1,1,1,1", "1,1,1,1,1,1"),
];

fn c3_hasse() -> Outcome {
    for (order, expected) in [(Order::Etale, &ET_6), (Order::Punctual, &PUNC_6)] {
        let poset = build_poset(6, order);
        ensure(poset.len() == 11, || {
            format!("{order}: {} nodes", poset.len())
        })?;
        let got: BTreeSet<(String, String)> = poset
            .covers
            .iter()
            .map(|&(i, j)| (poset.elements[i].label(), poset.elements[j].label()))
            .collect();
        let want = edge_set(expected);
        ensure(got == want, || {
            let missing: Vec<_> = want.difference(&got).collect();
            let extra: Vec<_> = got.difference(&want).collect();
            format!("{order}: missing {missing:?}, extra {extra:?}")
        })?;
        let min: Vec<String> = poset
            .minimal_elements()
            .iter()
            .map(|&i| poset.elements[i].label())
            .collect();
        let max: Vec<String> = poset
            .maximal_elements()
            .iter()
            .map(|&i| poset.elements[i].label())
            .collect();
        ensure(min == ["6"] && max == ["1,1,1,1,1,1"], || {
            format!("{order}: minimal {min:?}, maximal {max:?}")
        })?;
    }
    Ok("17 + 17 cover edges match".into())
}

fn pairs(n_max: u32) -> Vec<(StandardSet, StandardSet)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let st = enumerate(n);
        for a in &st {
            for b in &st {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn c4_duality() -> Outcome {
    let all = pairs(8);
    for (a, b) in &all {
        ensure(
            leq_punc(a, b) == leq_et(&b.transpose(), &a.transpose()),
            || format!("{a} vs {b}"),
        )?;
    }
    Ok(format!("{} pairs, n <= 8", all.len()))
}

fn c5_splitting() -> Outcome {
    let all = pairs(7);
    for (a, b) in &all {
        ensure(leq_punc_via_splitting(a, b) == leq_punc(a, b), || {
            format!("{a} vs {b}")
        })?;
    }
    Ok(format!("{} pairs, n <= 7", all.len()))
}

fn c6_refinement() -> Outcome {
    let all = pairs(8);
    let mut related = 0;
    for (a, b) in &all {
        let (et, punc) = (leq_et(a, b), leq_punc(a, b));
        related += usize::from(et) + usize::from(punc);
        ensure(!(et || punc) || dominance(a, b), || format!("{a} vs {b}"))?;
    }
    Ok(format!("{related} related pairs all dominate"))
}

fn c7_non_example() -> Outcome {
    let a = rows(&[3, 2, 1]);
    let b = rows(&[4, 1, 1]);
    let got = (
        leq_punc(&a, &b),
        leq_et(&a, &b),
        incidence_filter(&a, &b),
        incidence_filter(&b, &a),
    );
    ensure(got == (true, false, true, false), || format!("got {got:?}"))?;
    Ok("punc true, et false, filter true / false".into())
}

fn report_outcome(report: ExperimentReport) -> Outcome {
    if report.passed() && report.cases_run == TRIALS {
        Ok(format!(
            "{}/{} cases",
            report.cases_passed, report.cases_run
        ))
    } else {
        Err(report.to_table())
    }
}

fn c8_prop1() -> Outcome {
    report_outcome(run_prop1(TRIALS, 8, SEED).map_err(|e| e.to_string())?)
}

fn c9_prop2() -> Outcome {
    report_outcome(run_prop2(TRIALS, 8, SEED).map_err(|e| e.to_string())?)
}

fn c10_divisibility() -> Outcome {
    report_outcome(run_divisibility(TRIALS, 8, SEED).map_err(|e| e.to_string())?)
}

fn c11_calibration() -> Outcome {
    report_outcome(run_torus_calibration(TRIALS, 6, SEED).map_err(|e| e.to_string())?)
}

fn c12_punctual() -> Outcome {
    report_outcome(run_punc_consistency(TRIALS, 6, SEED).map_err(|e| e.to_string())?)
}

fn c13_et_closure() -> Outcome {
    let report = run_et_closure_covers(6, SEED).map_err(|e| e.to_string())?;
    let covers: usize = (1..=6)
        .map(|n| build_poset(n, Order::Etale).covers.len())
        .sum();
    ensure(report.passed() && report.cases_run == covers, || {
        report.to_table()
    })?;
    Ok(format!("{covers} cover pairs"))
}

fn c14_cell_dimensions() -> Outcome {
    let row = StandardSet::single_row(6).cell_dimensions();
    let column = StandardSet::single_column(6).cell_dimensions();
    ensure(
        (row.lex_dim, row.lin_dim, row.punc_dim) == (7, 6, 0),
        || format!("row of 6: {row:?}"),
    )?;
    ensure(
        (column.lex_dim, column.lin_dim, column.punc_dim) == (12, 6, 5),
        || format!("column of 6: {column:?}"),
    )?;
    ensure(column.punc_dim == 6 - 1, || "column punc dimension".into())?;
    for n in 0..=10 {
        for s in enumerate(n) {
            let d = s.cell_dimensions();
            ensure(d.lex_dim >= d.lin_dim && d.lin_dim >= d.punc_dim, || {
                format!("{s}: {d:?}")
            })?;
        }
    }
    Ok("(7,6,0), (12,6,5), inequalities on n <= 10".into())
}

fn c15_certificates() -> Outcome {
    let mut found = 0;
    for (a, b) in pairs(6) {
        let Some(cert) = find_certificate(&a, &b, 6) else {
            continue;
        };
        found += 1;
        let ok = check_certificate(&cert, &a, &b).map_err(|e| format!("{a} vs {b}: {e}"))?;
        ensure(ok, || format!("{a} vs {b}: certificate rejected"))?;
        ensure(incidence_filter(&a, &b), || {
            format!("{a} vs {b}: filter false")
        })?;
    }
    ensure(found > 0, || "no certificates found".into())?;
    Ok(format!("{found} certificates"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "enumeration",
            limit: secs(1),
            run: c1_enumeration,
        },
        Criterion {
            id: 2,
            name: "C4 sum examples",
            limit: secs(1),
            run: c2_sum_examples,
        },
        Criterion {
            id: 3,
            name: "hasse diagrams n=6",
            limit: secs(1),
            run: c3_hasse,
        },
        Criterion {
            id: 4,
            name: "duality n<=8",
            limit: secs(60),
            run: c4_duality,
        },
        Criterion {
            id: 5,
            name: "splitting algorithm n<=7",
            limit: secs(120),
            run: c5_splitting,
        },
        Criterion {
            id: 6,
            name: "refinement of dominance n<=8",
            limit: secs(60),
            run: c6_refinement,
        },
        Criterion {
            id: 7,
            name: "non-example",
            limit: secs(1),
            run: c7_non_example,
        },
        Criterion {
            id: 8,
            name: "first-direction sums",
            limit: secs(120),
            run: c8_prop1,
        },
        Criterion {
            id: 9,
            name: "second-direction sums",
            limit: secs(120),
            run: c9_prop2,
        },
        Criterion {
            id: 10,
            name: "divisibility",
            limit: secs(120),
            run: c10_divisibility,
        },
        Criterion {
            id: 11,
            name: "torus calibration",
            limit: secs(120),
            run: c11_calibration,
        },
        Criterion {
            id: 12,
            name: "punctual consistency",
            limit: secs(180),
            run: c12_punctual,
        },
        Criterion {
            id: 13,
            name: "etale closure covers",
            limit: secs(120),
            run: c13_et_closure,
        },
        Criterion {
            id: 14,
            name: "cell dimensions",
            limit: secs(1),
            run: c14_cell_dimensions,
        },
        Criterion {
            id: 15,
            name: "certificates n<=6",
            limit: secs(120),
            run: c15_certificates,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= c.limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took longer than {:?}", c.limit)),
            Err(detail) => ("FAIL", detail),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {:>2} {:<30} {:>8.3}s (limit {}s)  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
