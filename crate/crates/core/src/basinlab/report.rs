use serde::Serialize;

use crate::staircase::StandardSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub description: String,
    pub expected: StandardSet,
    pub observed: StandardSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub experiment_name: String,
    pub seed: u64,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub failures: Vec<Failure>,
}

/// Outcome of a single case.
pub type CaseResult = std::result::Result<(), Failure>;

impl ExperimentReport {
    pub fn from_cases(name: &str, seed: u64, cases: Vec<CaseResult>) -> Self {
        let cases_run = cases.len();
        let failures: Vec<Failure> = cases.into_iter().filter_map(|c| c.err()).collect();
        ExperimentReport {
            experiment_name: name.to_string(),
            seed,
            cases_run,
            cases_passed: cases_run - failures.len(),
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary followed by one row per failure.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let summary = [
            ("experiment", self.experiment_name.clone()),
            ("seed", self.seed.to_string()),
            ("cases", self.cases_run.to_string()),
            ("passed", self.cases_passed.to_string()),
            ("failed", self.failures.len().to_string()),
            ("status", status.to_string()),
        ];
        for (k, v) in summary {
            out.push_str(&format!("{k:<12}{v}\n"));
        }
        if self.failures.is_empty() {
            return out;
        }
        let header = ["case", "expected", "observed"];
        let rows: Vec<[String; 3]> = self
            .failures
            .iter()
            .map(|f| {
                [
                    f.description.clone(),
                    f.expected.to_string(),
                    f.observed.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        out.push('\n');
        let line = |cells: [&str; 3]| {
            format!(
                "{:<w0$}  {:<w1$}  {}\n",
                cells[0],
                cells[1],
                cells[2],
                w0 = widths[0],
                w1 = widths[1]
            )
        };
        out.push_str(&line(header));
        for r in &rows {
            out.push_str(&line([&r[0], &r[1], &r[2]]));
        }
        out
    }
}
