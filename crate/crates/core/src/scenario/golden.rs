use std::path::Path;

use super::runner::Report;
use super::ScenarioError;

/// Comparison of one artifact against its golden file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenOutcome {
    pub name: String,
    /// One line per differing line; empty when the files match.
    pub diff: Vec<String>,
}

impl GoldenOutcome {
    pub fn passed(&self) -> bool {
        self.diff.is_empty()
    }
}

/// Line-by-line differences between `expected` and `actual`.
pub fn line_diff(expected: &str, actual: &str) -> Vec<String> {
    let e: Vec<&str> = expected.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let mut out = Vec::new();
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            out.push(format!(
                "line {}: expected {:?}, got {:?}",
                i + 1,
                x.copied().unwrap_or("<missing>"),
                y.copied().unwrap_or("<missing>")
            ));
        }
    }
    if out.is_empty() && expected != actual {
        out.push("trailing newline differs".to_string());
    }
    out
}

/// Compare the artifact named by the file stem (`table2.txt` → `table2`)
/// byte for byte.
pub fn compare_golden(report: &Report, golden_path: &Path) -> Result<GoldenOutcome, ScenarioError> {
    let io = |e: std::io::Error| ScenarioError::Io {
        path: golden_path.display().to_string(),
        message: e.to_string(),
    };
    let expected = std::fs::read_to_string(golden_path).map_err(io)?;
    let name = golden_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let diff = match report.artifact(&name) {
        Some(a) => line_diff(&expected, &a.golden_text()),
        None => vec![format!("no artifact named '{name}' in the report")],
    };
    Ok(GoldenOutcome { name, diff })
}

/// Compare every `*.txt` file in `dir` whose stem names an artifact of the
/// report, in file-name order. Files for other artifacts are skipped; if
/// none match, the result is a single failing outcome.
pub fn compare_golden_dir(
    report: &Report,
    dir: &Path,
) -> Result<Vec<GoldenOutcome>, ScenarioError> {
    let io = |e: std::io::Error| ScenarioError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    let mut outcomes = Vec::new();
    for path in files {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if report.artifact(&stem).is_some() {
            outcomes.push(compare_golden(report, &path)?);
        }
    }
    if outcomes.is_empty() {
        outcomes.push(GoldenOutcome {
            name: dir.display().to_string(),
            diff: vec!["no golden file matches an artifact of this scenario".to_string()],
        });
    }
    Ok(outcomes)
}
