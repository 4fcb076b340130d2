//! The `.vgl` scenario language: a small line-oriented program of named
//! polynomials, strata, pages, differentials, long exact sequences and
//! assertions, executed in order.
//!
//! ```text
//! let a = s[2] + L*t^2*(s[2]+s[1,1]);    # polynomial binding
//! stratum "3" { base = s[1,1]; simplex = 1; rank = 9; }
//! page e1 homological start=1 { col 3 = "3"; }
//! diff e1 r=2 at (5,15) image = 0;
//! les u mode=bm { A = s[2]+s[1,1]; X = bm(P(2), marked); U = ?; connect k=1 image = s[1,1]; }
//! dual c = alexander(total(e1), M=13);
//! divide q = c / coh(GL3);
//! assert betti(euler(a)) == 1 + 2;
//! include "other.vgl";
//! ```

mod ast;
mod golden;
mod lexer;
mod parser;
mod runner;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use ast::{Call, DiffSpec, Expr, ExprKind, LesTerms, PageBody, Scenario, Stmt, StmtKind};
pub use golden::{compare_golden, compare_golden_dir, line_diff, GoldenOutcome};
pub use parser::{parse_scenario, parse_scenario_file};
pub use runner::{run, Artifact, ArtifactKind, AssertionOutcome, Emit, EulerCheck, Report};

/// Source position: file label, 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub file: Arc<str>,
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("{at}: syntax error: {message}")]
    Syntax { at: Span, message: String },

    #[error("{at}: {message}")]
    Validation { at: Span, message: String },

    #[error("{at}: {error}")]
    Runtime { at: Span, error: crate::Error },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ScenarioError {
    /// Location of the offending source, when there is one.
    pub fn span(&self) -> Option<&Span> {
        match self {
            ScenarioError::Syntax { at, .. }
            | ScenarioError::Validation { at, .. }
            | ScenarioError::Runtime { at, .. } => Some(at),
            ScenarioError::Io { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motive_ring::HGPoly;

    fn run_text(src: &str) -> Report {
        run(&parse_scenario(src).unwrap()).unwrap()
    }

    #[test]
    fn let_binding() {
        let report = run_text("let a = s[2] + L*t^2*(s[2]+s[1,1]);");
        assert_eq!(
            report.poly("a").unwrap().to_string(),
            "s[2] + (s[2]+s[1,1])*L*t^2"
        );
    }

    #[test]
    fn catalog_binding() {
        let report = run_text("let g = coh(GL3);\nassert g == (1+L*t)*(1+L^2*t^3)*(1+L^3*t^5);");
        assert!(report.passed());
        assert_eq!(report.poly("g").unwrap().betti().eval_sign(false), 8);
    }

    #[test]
    fn malformed_bracket() {
        let err = parse_scenario("let b = s[2 + ;").unwrap_err();
        assert!(matches!(err, ScenarioError::Syntax { .. }));
        let at = err.span().unwrap();
        assert_eq!((at.line, at.col), (1, 13));
    }

    #[test]
    fn unknown_names_and_degrees() {
        let err = parse_scenario("let a = b + 1;").unwrap_err();
        assert!(err.to_string().contains("unknown name 'b'"), "{err}");
        let err = parse_scenario("let a = s[2];\nlet b = s[3];\nlet c = a + b;").unwrap_err();
        assert_eq!(err.span().unwrap().line, 3);
        assert!(matches!(err, ScenarioError::Validation { .. }));
        let err = parse_scenario("let a = 1;\nlet a = 2;").unwrap_err();
        assert!(err.to_string().contains("already defined"), "{err}");
    }

    #[test]
    fn negative_powers_only_on_units() {
        let report = run_text("let a = L^-2*t^3;");
        assert_eq!(report.poly("a").unwrap(), &HGPoly::lt(-2, 3));
        let err = run(&parse_scenario("let a = (1+t)^-1;").unwrap()).unwrap_err();
        assert!(matches!(err, ScenarioError::Runtime { .. }));
    }

    #[test]
    fn page_freezes_after_total() {
        let src = "page e homological { col 1 = s[2]*t^2; col 2 = s[2]*t^4; }\n\
                   let x = total(e);\n\
                   diff e r=1 at (2,2) image = s[2];";
        let err = run(&parse_scenario(src).unwrap()).unwrap_err();
        assert!(err.to_string().contains("already converged"), "{err}");
    }

    #[test]
    fn warnings_and_limits() {
        let src = "page e homological { col 1 = s[2]; col 2 = s[2]*t; }";
        let report = run_text(src);
        assert_eq!(report.warnings.len(), 1);
        assert!(report.artifact("e.limit").is_some());
        let src =
            "page e homological { col 1 = s[2]; col 2 = s[2]*t; }\ndiff e r=1 at (2,-1) rank=1;";
        let report = run_text(src);
        assert!(report.warnings.is_empty());
        assert!(report.limit("e").unwrap().is_empty());
    }

    #[test]
    fn les_statement() {
        let src = "les u mode=bm { A = s[2]+s[1,1]; X = bm(P(2), marked); U = ?; connect k=1 image = s[1,1]; }\n\
                   assert u == s[1,1]*t + s[2]*L^-1*t^2 + s[2]*L^-2*t^4;";
        assert!(run_text(src).passed());
        let err = parse_scenario("les u mode=bm { A = 1; X = ?; U = ?; }").unwrap_err();
        assert!(err.to_string().contains("exactly one"), "{err}");
    }

    #[test]
    fn failing_assertion_is_reported() {
        let report = run_text("assert 1 + t == 1;");
        assert!(!report.passed());
        assert!(report.render_summary().contains("FAIL"));
    }

    #[test]
    fn expression_round_trip() {
        let src = "let a = -(s[2] - L^-1*t^2*(s[2]+s[1,1]))^2 + twist(rev(t), -3);";
        let scenario = parse_scenario(src).unwrap();
        let StmtKind::Let { expr, .. } = &scenario.statements[0].kind else {
            panic!()
        };
        let again = parse_scenario(&format!("let a = {expr};")).unwrap();
        assert_eq!(
            run(&scenario).unwrap().poly("a"),
            run(&again).unwrap().poly("a")
        );
    }
}
