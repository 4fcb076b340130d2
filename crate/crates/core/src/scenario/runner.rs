use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::ast::*;
use super::{ScenarioError, Span};
use crate::catalog::{bm_poly, coh_poly, twisted_config_bm};
use crate::error::Error;
use crate::motive_ring::{HGPoly, MotiveClass};
use crate::spectral::{
    apply_differentials, assemble_page, les_solve, total_poly, ConnectingDecl, DiffImage,
    DifferentialDecl, Page,
};
use crate::strata::{cone_bm, StratumDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    Poly,
    Table,
}

/// A named rendering: a polynomial in canonical form or a page grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub kind: ArtifactKind,
    pub text: String,
}

impl Artifact {
    /// The artifact as stored in a golden file.
    pub fn golden_text(&self) -> String {
        match self.kind {
            ArtifactKind::Poly => format!("{}\n", self.text),
            ArtifactKind::Table => self.text.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertionOutcome {
    pub at: Span,
    pub source: String,
    pub left: String,
    pub right: String,
    pub passed: bool,
}

/// Euler characteristics of a page before and after its differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub page: String,
    pub before: MotiveClass,
    pub after: MotiveClass,
}

/// Which artifacts [`Report::render`] prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Poly,
    Table,
    All,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub artifacts: Vec<Artifact>,
    pub assertions: Vec<AssertionOutcome>,
    pub warnings: Vec<String>,
    pub euler_checks: Vec<EulerCheck>,
    polys: BTreeMap<String, HGPoly>,
    pages: BTreeMap<String, (Page, Page)>,
}

impl Report {
    /// All assertions hold.
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn artifact(&self, name: &str) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.name == name)
    }

    pub fn poly(&self, name: &str) -> Option<&HGPoly> {
        self.polys.get(name)
    }

    /// First page as declared.
    pub fn page(&self, name: &str) -> Option<&Page> {
        self.pages.get(name).map(|(initial, _)| initial)
    }

    /// Page after all declared differentials.
    pub fn limit(&self, name: &str) -> Option<&Page> {
        self.pages.get(name).map(|(_, limit)| limit)
    }

    pub fn render(&self, emit: Emit) -> String {
        let mut out = String::new();
        for a in &self.artifacts {
            match (a.kind, emit) {
                (ArtifactKind::Poly, Emit::Poly | Emit::All) => {
                    let _ = writeln!(out, "poly {} = {}", a.name, a.text);
                }
                (ArtifactKind::Table, Emit::Table | Emit::All) => {
                    let _ = writeln!(out, "table {}:\n{}", a.name, a.text);
                }
                _ => {}
            }
        }
        out.push_str(&self.render_summary());
        out
    }

    /// Assertions, warnings, and a one-line tally.
    pub fn render_summary(&self) -> String {
        let mut out = String::new();
        for a in &self.assertions {
            let verdict = if a.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "assert {} {verdict}: {}", a.at, a.source);
            if !a.passed {
                let _ = writeln!(out, "  left:  {}\n  right: {}", a.left, a.right);
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let passed = self.assertions.iter().filter(|a| a.passed).count();
        let _ = writeln!(
            out,
            "{passed}/{} assertions passed, {} warning(s)",
            self.assertions.len(),
            self.warnings.len()
        );
        out
    }
}

struct PageState {
    span: Span,
    initial: Page,
    decls: Vec<DifferentialDecl>,
    limit: Option<Page>,
}

enum Value {
    Poly(HGPoly),
    Stratum(StratumDescriptor),
    Page,
}

struct Runner {
    values: BTreeMap<String, Value>,
    pages: BTreeMap<String, PageState>,
    page_order: Vec<String>,
    report: Report,
}

fn at(span: &Span) -> impl Fn(Error) -> ScenarioError + '_ {
    move |error| ScenarioError::Runtime {
        at: span.clone(),
        error,
    }
}

fn as_class(p: &HGPoly, span: &Span) -> Result<MotiveClass, ScenarioError> {
    match p.terms().find(|(d, _)| *d != 0) {
        None => Ok(p.coeff(0)),
        Some(_) => Err(ScenarioError::Validation {
            at: span.clone(),
            message: format!("expected a class without t, found {p}"),
        }),
    }
}

impl Runner {
    fn poly_artifact(&mut self, name: &str, p: HGPoly) {
        self.report.artifacts.push(Artifact {
            name: name.to_string(),
            kind: ArtifactKind::Poly,
            text: p.to_string(),
        });
        self.report.polys.insert(name.to_string(), p.clone());
        self.values.insert(name.to_string(), Value::Poly(p));
    }

    /// Apply the page's declared differentials once; later `diff`
    /// statements against it are rejected.
    fn converge(&mut self, name: &str, span: &Span) -> Result<Page, ScenarioError> {
        let state = self
            .pages
            .get_mut(name)
            .expect("pages are validated at parse time");
        if let Some(limit) = &state.limit {
            return Ok(limit.clone());
        }
        let (limit, warnings) =
            apply_differentials(&state.initial, &state.decls).map_err(at(span))?;
        state.limit = Some(limit.clone());
        self.report.euler_checks.push(EulerCheck {
            page: name.to_string(),
            before: state.initial.euler_class(),
            after: limit.euler_class(),
        });
        self.report
            .warnings
            .extend(warnings.iter().map(|w| format!("{name}: {w}")));
        self.report.artifacts.push(Artifact {
            name: format!("{name}.limit"),
            kind: ArtifactKind::Table,
            text: limit.render_table(),
        });
        self.report
            .pages
            .insert(name.to_string(), (state.initial.clone(), limit.clone()));
        Ok(limit)
    }

    fn eval(&mut self, e: &Expr) -> Result<HGPoly, ScenarioError> {
        let err = at(&e.span);
        Ok(match &e.kind {
            ExprKind::Int(v) => HGPoly::constant(MotiveClass::scalar(*v)),
            ExprKind::L => HGPoly::lt(1, 0),
            ExprKind::T => HGPoly::lt(0, 1),
            ExprKind::Schur(parts) => {
                let p = crate::sym_char::Partition::new(parts).map_err(&err)?;
                HGPoly::constant(MotiveClass::irreducible(p, 1, 0))
            }
            ExprKind::Name(n) => match self.values.get(n) {
                Some(Value::Poly(p)) => p.clone(),
                Some(Value::Stratum(d)) => d.bm(),
                Some(Value::Page) | None => {
                    return Err(ScenarioError::Validation {
                        at: e.span.clone(),
                        message: format!("'{n}' is not a polynomial"),
                    })
                }
            },
            ExprKind::Neg(a) => self.eval(a)?.neg(),
            ExprKind::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.add(&b).map_err(err)?
            }
            ExprKind::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.sub(&b).map_err(err)?
            }
            ExprKind::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.mul(&b).map_err(err)?
            }
            ExprKind::Pow(a, k) => {
                let base = self.eval(a)?;
                if *k < 0 {
                    base.invert_monomial()
                        .map_err(&err)?
                        .pow(k.unsigned_abs())
                        .map_err(err)?
                } else {
                    base.pow(*k as u32).map_err(err)?
                }
            }
            ExprKind::Call(call) => match call {
                Call::Coh(id) => coh_poly(*id).map_err(err)?,
                Call::Bm(id) => bm_poly(*id).map_err(err)?,
                Call::Bconf { k, ambient, dim } => {
                    twisted_config_bm(*k, *dim, *ambient).map_err(err)?
                }
                Call::Cone(a) => cone_bm(&self.eval(a)?),
                Call::Total(name) => total_poly(&self.converge(name, &e.span)?),
                Call::Twist(a, m) => self.eval(a)?.tate_twist(*m),
                Call::Rev(a) => self.eval(a)?.t_reverse(),
                Call::Pdual(a, d) => self.eval(a)?.poincare_dual_bm(*d),
                Call::Euler(a) => HGPoly::constant(self.eval(a)?.euler_class()),
                Call::Betti(a) => self.eval(a)?.betti().to_hg(),
                Call::Alexander { arg, m, unreduced } => {
                    self.alexander(arg, *m, *unreduced, &e.span)?
                }
            },
        })
    }

    fn alexander(
        &mut self,
        arg: &Expr,
        m: i32,
        unreduced: bool,
        span: &Span,
    ) -> Result<HGPoly, ScenarioError> {
        let dual = self.eval(arg)?.alexander_dual(m).map_err(at(span))?;
        if unreduced {
            dual.unreduced().map_err(at(span))
        } else {
            Ok(dual)
        }
    }

    fn exec(&mut self, stmt: &Stmt) -> Result<(), ScenarioError> {
        let span = &stmt.span;
        match &stmt.kind {
            StmtKind::Let { name, expr } => {
                let p = self.eval(expr)?;
                self.poly_artifact(name, p);
            }
            StmtKind::Stratum {
                name,
                base,
                simplex,
                rank,
            } => {
                let base_bm = self.eval(base)?;
                let d = StratumDescriptor::new(name.clone(), base_bm, *simplex, *rank);
                self.report.artifacts.push(Artifact {
                    name: name.clone(),
                    kind: ArtifactKind::Poly,
                    text: d.bm().to_string(),
                });
                self.report.polys.insert(name.clone(), d.bm());
                self.values.insert(name.clone(), Value::Stratum(d));
            }
            StmtKind::Page {
                name,
                variance,
                start,
                body,
            } => {
                let page = match body {
                    PageBody::Columns(cols) => {
                        let mut evaluated = Vec::with_capacity(cols.len());
                        for (p, e) in cols {
                            evaluated.push((*p, self.eval(e)?));
                        }
                        assemble_page(*variance, *start, &evaluated).map_err(at(span))?
                    }
                    PageBody::Product(base, fiber) => {
                        let (b, f) = (self.eval(base)?, self.eval(fiber)?);
                        Page::outer_product(*variance, *start, &b, &f).map_err(at(span))?
                    }
                };
                self.report.artifacts.push(Artifact {
                    name: name.clone(),
                    kind: ArtifactKind::Table,
                    text: page.render_table(),
                });
                self.pages.insert(
                    name.clone(),
                    PageState {
                        span: span.clone(),
                        initial: page,
                        decls: Vec::new(),
                        limit: None,
                    },
                );
                self.page_order.push(name.clone());
                self.values.insert(name.clone(), Value::Page);
            }
            StmtKind::Diff {
                page,
                r,
                source,
                image,
            } => {
                let image = match image {
                    DiffSpec::Rank(k) => DiffImage::Rank(*k),
                    DiffSpec::Image(e) => DiffImage::Class(as_class(&self.eval(e)?, &e.span)?),
                };
                let state = self
                    .pages
                    .get_mut(page)
                    .expect("pages are validated at parse time");
                if state.limit.is_some() {
                    return Err(ScenarioError::Validation {
                        at: span.clone(),
                        message: format!("page '{page}' was already converged by total({page})"),
                    });
                }
                state.decls.push(DifferentialDecl {
                    r: *r,
                    source: *source,
                    image,
                });
            }
            StmtKind::Les { name, mode, terms } => {
                let mut eval_opt = |e: &Option<Expr>| -> Result<Option<HGPoly>, ScenarioError> {
                    e.as_ref().map(|e| self.eval(e)).transpose()
                };
                let (a, x, u) = (
                    eval_opt(&terms.a)?,
                    eval_opt(&terms.x)?,
                    eval_opt(&terms.u)?,
                );
                let mut connects = Vec::with_capacity(terms.connects.len());
                for (k, e) in &terms.connects {
                    connects.push(ConnectingDecl::new(*k, as_class(&self.eval(e)?, &e.span)?));
                }
                let (_, solved) = les_solve(a.as_ref(), x.as_ref(), u.as_ref(), &connects, *mode)
                    .map_err(at(span))?;
                self.poly_artifact(name, solved);
            }
            StmtKind::Dual {
                name,
                expr,
                m,
                unreduced,
            } => {
                let p = self.alexander(expr, *m, *unreduced, span)?;
                self.poly_artifact(name, p);
            }
            StmtKind::Divide { name, num, den } => {
                let (n, d) = (self.eval(num)?, self.eval(den)?);
                let q = n.exact_divide(&d).map_err(at(span))?;
                self.poly_artifact(name, q);
            }
            StmtKind::Assert { lhs, rhs } => {
                let (l, r) = (self.eval(lhs)?, self.eval(rhs)?);
                self.report.assertions.push(AssertionOutcome {
                    at: span.clone(),
                    source: format!("{lhs} == {rhs}"),
                    left: l.to_string(),
                    right: r.to_string(),
                    passed: l == r,
                });
            }
        }
        Ok(())
    }
}

/// Execute the statements in order. Pages never passed to `total` are
/// converged at the end so that their limits and warnings are reported.
pub fn run(scenario: &Scenario) -> Result<Report, ScenarioError> {
    let mut runner = Runner {
        values: BTreeMap::new(),
        pages: BTreeMap::new(),
        page_order: Vec::new(),
        report: Report::default(),
    };
    for stmt in &scenario.statements {
        runner.exec(stmt)?;
    }
    for name in runner.page_order.clone() {
        let span = runner.pages[&name].span.clone();
        runner.converge(&name, &span)?;
    }
    Ok(runner.report)
}
