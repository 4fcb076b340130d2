use std::fmt;

use super::Span;
use crate::catalog::{Ambient, SpaceId};
use crate::spectral::{LesMode, Variance};

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(i64),
    /// The Tate class `L`.
    L,
    /// The grading variable `t`.
    T,
    Schur(Vec<u32>),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Call),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Call {
    Coh(SpaceId),
    Bm(SpaceId),
    Bconf {
        k: u8,
        ambient: Ambient,
        dim: u8,
    },
    Cone(Box<Expr>),
    /// Abutment of a page after its declared differentials; freezes the page.
    Total(String),
    Twist(Box<Expr>, i32),
    Rev(Box<Expr>),
    Pdual(Box<Expr>, i32),
    Euler(Box<Expr>),
    Betti(Box<Expr>),
    Alexander {
        arg: Box<Expr>,
        m: i32,
        unreduced: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum PageBody {
    Columns(Vec<(i32, Expr)>),
    Product(Expr, Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub enum DiffSpec {
    Image(Expr),
    Rank(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LesTerms {
    pub a: Option<Expr>,
    pub x: Option<Expr>,
    pub u: Option<Expr>,
    pub connects: Vec<(i32, Expr)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StmtKind {
    Let {
        name: String,
        expr: Expr,
    },
    Stratum {
        name: String,
        base: Expr,
        simplex: u32,
        rank: u32,
    },
    Page {
        name: String,
        variance: Variance,
        start: u32,
        body: PageBody,
    },
    Diff {
        page: String,
        r: u32,
        source: (i32, i32),
        image: DiffSpec,
    },
    Les {
        name: String,
        mode: LesMode,
        terms: LesTerms,
    },
    Dual {
        name: String,
        expr: Expr,
        m: i32,
        unreduced: bool,
    },
    Divide {
        name: String,
        num: Expr,
        den: Expr,
    },
    Assert {
        lhs: Expr,
        rhs: Expr,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

/// A parsed, name-resolved scenario: statements in execution order, with
/// included files spliced in place.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scenario {
    pub statements: Vec<Stmt>,
}

fn prec(kind: &ExprKind) -> u8 {
    match kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(..) => 4,
        _ => 5,
    }
}

struct Wrapped<'a>(&'a Expr, u8);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if prec(&self.0.kind) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn write_name(f: &mut fmt::Formatter<'_>, name: &str) -> fmt::Result {
    let plain = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        write!(f, "{name}")
    } else {
        write!(f, "\"{name}\"")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(i) => write!(f, "{i}"),
            ExprKind::L => write!(f, "L"),
            ExprKind::T => write!(f, "t"),
            ExprKind::Schur(parts) => {
                let parts: Vec<String> = parts.iter().map(u32::to_string).collect();
                write!(f, "s[{}]", parts.join(","))
            }
            ExprKind::Name(n) => write_name(f, n),
            ExprKind::Neg(e) => write!(f, "-{}", Wrapped(e, 4)),
            ExprKind::Add(a, b) => write!(f, "{} + {}", Wrapped(a, 1), Wrapped(b, 2)),
            ExprKind::Sub(a, b) => write!(f, "{} - {}", Wrapped(a, 1), Wrapped(b, 2)),
            ExprKind::Mul(a, b) => write!(f, "{}*{}", Wrapped(a, 2), Wrapped(b, 3)),
            ExprKind::Pow(a, e) => write!(f, "{}^{e}", Wrapped(a, 5)),
            ExprKind::Call(call) => match call {
                Call::Coh(id) => write!(f, "coh({id})"),
                Call::Bm(id) => write!(f, "bm({id})"),
                Call::Bconf { k, ambient, dim } => {
                    let a = match ambient {
                        Ambient::Affine => "A",
                        Ambient::Projective => "P",
                    };
                    write!(f, "bconf({k}, {a}({dim}))")
                }
                Call::Cone(e) => write!(f, "cone({e})"),
                Call::Total(p) => {
                    write!(f, "total(")?;
                    write_name(f, p)?;
                    write!(f, ")")
                }
                Call::Twist(e, m) => write!(f, "twist({e}, {m})"),
                Call::Rev(e) => write!(f, "rev({e})"),
                Call::Pdual(e, d) => write!(f, "pdual({e}, {d})"),
                Call::Euler(e) => write!(f, "euler({e})"),
                Call::Betti(e) => write!(f, "betti({e})"),
                Call::Alexander { arg, m, unreduced } => {
                    write!(f, "alexander({arg}, M={m}")?;
                    if *unreduced {
                        write!(f, ", unreduced")?;
                    }
                    write!(f, ")")
                }
            },
        }
    }
}
