use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::{ScenarioError, Span};
use crate::catalog::{Ambient, SpaceId, SpaceKind};
use crate::spectral::{LesMode, Variance};
use crate::sym_char::{common_degree, Partition};

const KEYWORDS: [&str; 24] = [
    "let",
    "stratum",
    "page",
    "diff",
    "les",
    "dual",
    "divide",
    "assert",
    "include",
    "s",
    "L",
    "t",
    "coh",
    "bm",
    "bconf",
    "cone",
    "total",
    "twist",
    "rev",
    "pdual",
    "euler",
    "betti",
    "alexander",
    "product",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NameKind {
    Poly,
    Stratum,
    Page,
}

#[derive(Clone, Debug)]
struct Symbol {
    kind: NameKind,
    n: Option<u8>,
    defined_at: Span,
}

/// State shared across a file and everything it includes.
struct Context {
    symbols: HashMap<String, Symbol>,
    statements: Vec<Stmt>,
    include_stack: Vec<PathBuf>,
}

struct Parser<'c> {
    toks: Vec<Token>,
    pos: usize,
    base_dir: PathBuf,
    ctx: &'c mut Context,
}

type PResult<T> = Result<T, ScenarioError>;

fn syntax(at: &Span, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Syntax {
        at: at.clone(),
        message: message.into(),
    }
}

fn invalid(at: &Span, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation {
        at: at.clone(),
        message: message.into(),
    }
}

impl<'c> Parser<'c> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn at_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == word)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        let hit = self.at_punct(p);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect_punct(&mut self, p: &str, context: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(syntax(
                &self.span(),
                format!("expected '{p}' {context}, found {}", self.peek().describe()),
            ))
        }
    }

    fn expect_word(&mut self, word: &str) -> PResult<()> {
        if self.at_ident(word) {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                &self.span(),
                format!("expected '{word}', found {}", self.peek().describe()),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(w) => {
                self.bump();
                Ok((w, span))
            }
            other => Err(syntax(
                &span,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn int(&mut self, what: &str) -> PResult<i64> {
        let span = self.span();
        let negative = self.eat_punct("-");
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(if negative { -v } else { v })
            }
            other => Err(syntax(
                &span,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn int_in<T: TryFrom<i64>>(&mut self, what: &str) -> PResult<T> {
        let span = self.span();
        let v = self.int(what)?;
        T::try_from(v).map_err(|_| invalid(&span, format!("{what} {v} is out of range")))
    }

    /// `word = INT`.
    fn keyed_int<T: TryFrom<i64>>(&mut self, word: &str) -> PResult<T> {
        self.expect_word(word)?;
        self.expect_punct("=", &format!("after '{word}'"))?;
        self.int_in(word)
    }

    /// A binding name: identifier or quoted string.
    fn name(&mut self) -> PResult<(String, Span)> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Str(s) if !s.is_empty() => {
                self.bump();
                Ok((s, span))
            }
            Tok::Ident(w) => {
                if KEYWORDS.contains(&w.as_str()) {
                    return Err(syntax(
                        &span,
                        format!("'{w}' is reserved and cannot be a name"),
                    ));
                }
                self.bump();
                Ok((w, span))
            }
            other => Err(syntax(
                &span,
                format!("expected a name, found {}", other.describe()),
            )),
        }
    }

    fn end_stmt(&mut self) -> PResult<()> {
        self.expect_punct(";", "at end of statement")
    }

    // ---- names and degrees -------------------------------------------------

    fn define(&mut self, name: &str, at: &Span, kind: NameKind, n: Option<u8>) -> PResult<()> {
        if let Some(prev) = self.ctx.symbols.get(name) {
            return Err(invalid(
                at,
                format!("'{name}' is already defined at {}", prev.defined_at),
            ));
        }
        self.ctx.symbols.insert(
            name.to_string(),
            Symbol {
                kind,
                n,
                defined_at: at.clone(),
            },
        );
        Ok(())
    }

    fn lookup(&self, name: &str, at: &Span) -> PResult<&Symbol> {
        self.ctx
            .symbols
            .get(name)
            .ok_or_else(|| invalid(at, format!("unknown name '{name}'")))
    }

    fn join(&self, a: Option<u8>, b: Option<u8>, at: &Span) -> PResult<Option<u8>> {
        common_degree(a, b).map_err(|e| invalid(at, e.to_string()))
    }

    /// Symmetric-group degree of an expression, checking every combination.
    fn degree_of(&self, e: &Expr) -> PResult<Option<u8>> {
        Ok(match &e.kind {
            ExprKind::Int(_) | ExprKind::L | ExprKind::T => None,
            ExprKind::Schur(parts) => {
                let p = Partition::new(parts).map_err(|err| invalid(&e.span, err.to_string()))?;
                (p.n() > 0).then_some(p.n())
            }
            ExprKind::Name(n) => {
                let sym = self.lookup(n, &e.span)?;
                if sym.kind == NameKind::Page {
                    return Err(invalid(
                        &e.span,
                        format!("'{n}' is a page; use total({n}) for its abutment"),
                    ));
                }
                sym.n
            }
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => self.degree_of(a)?,
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
                let (da, db) = (self.degree_of(a)?, self.degree_of(b)?);
                self.join(da, db, &e.span)?
            }
            ExprKind::Call(call) => match call {
                Call::Coh(id) | Call::Bm(id) => id.marked.then_some(2),
                Call::Bconf { .. } | Call::Betti(_) => {
                    if let Call::Betti(a) = call {
                        self.degree_of(a)?;
                    }
                    None
                }
                Call::Cone(a)
                | Call::Twist(a, _)
                | Call::Rev(a)
                | Call::Pdual(a, _)
                | Call::Euler(a)
                | Call::Alexander { arg: a, .. } => self.degree_of(a)?,
                Call::Total(p) => {
                    let sym = self.lookup(p, &e.span)?;
                    if sym.kind != NameKind::Page {
                        return Err(invalid(&e.span, format!("'{p}' is not a page")));
                    }
                    sym.n
                }
            },
        })
    }

    // ---- expressions -------------------------------------------------------

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let span = self.span();
            let kind = if self.eat_punct("+") {
                ExprKind::Add
            } else if self.eat_punct("-") {
                ExprKind::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let span = self.span();
            if !self.eat_punct("*") {
                return Ok(lhs);
            }
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        let span = self.span();
        if self.eat_punct("-") {
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        let span = self.span();
        if !self.eat_punct("^") {
            return Ok(base);
        }
        let e = self.int_in::<i32>("exponent")?;
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), e),
            span,
        })
    }

    fn atom(&mut self) -> PResult<Expr> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                ExprKind::Int(v)
            }
            Tok::Str(s) => {
                self.bump();
                ExprKind::Name(s)
            }
            Tok::Punct("(") => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(")", "to close the parenthesis")?;
                return Ok(inner);
            }
            Tok::Ident(w) => {
                self.bump();
                match w.as_str() {
                    "L" => ExprKind::L,
                    "t" => ExprKind::T,
                    "s" => ExprKind::Schur(self.partition()?),
                    _ if self.at_punct("(") => ExprKind::Call(self.call(&w, &span)?),
                    _ if KEYWORDS.contains(&w.as_str()) => {
                        return Err(syntax(&span, format!("'{w}' cannot appear here")))
                    }
                    _ => ExprKind::Name(w),
                }
            }
            other => {
                return Err(syntax(
                    &span,
                    format!("expected an expression, found {}", other.describe()),
                ))
            }
        };
        Ok(Expr { kind, span })
    }

    fn partition(&mut self) -> PResult<Vec<u32>> {
        self.expect_punct("[", "after 's'")?;
        let mut parts = Vec::new();
        if self.eat_punct("]") {
            return Ok(parts);
        }
        loop {
            parts.push(self.int_in::<u32>("partition part")?);
            if self.eat_punct("]") {
                return Ok(parts);
            }
            self.expect_punct(",", "or ']' in partition")?;
        }
    }

    fn space_id(&mut self) -> PResult<SpaceId> {
        let (word, span) = self.ident("a space")?;
        let paren_int = |p: &mut Self| -> PResult<u8> {
            p.expect_punct("(", &format!("after '{word}'"))?;
            let v = p.int_in::<u8>("dimension")?;
            p.expect_punct(")", "after dimension")?;
            Ok(v)
        };
        let kind = match word.as_str() {
            "pt" => SpaceKind::Point,
            "Gm" => SpaceKind::Torus,
            "F2P1" => SpaceKind::F2ProjectiveLine,
            "F2P1tw" => SpaceKind::F2ProjectiveLineTwisted,
            "F2P2" => SpaceKind::F2ProjectivePlane,
            "GL3" => SpaceKind::Gl3,
            "PGL3" => SpaceKind::Pgl3,
            "A" => SpaceKind::Affine(paren_int(self)?),
            "P" => SpaceKind::Projective(paren_int(self)?),
            "Gr" => {
                self.expect_punct("(", "after 'Gr'")?;
                let k = self.int_in::<u8>("Grassmannian k")?;
                self.expect_punct(",", "in Gr(k,N)")?;
                let n = self.int_in::<u8>("Grassmannian N")?;
                self.expect_punct(")", "after Gr(k,N")?;
                SpaceKind::Grassmannian(k, n)
            }
            other => return Err(invalid(&span, format!("unknown space '{other}'"))),
        };
        let marked = if self.eat_punct(",") {
            self.expect_word("marked")?;
            true
        } else {
            false
        };
        let id = SpaceId { kind, marked };
        id.validate().map_err(|e| invalid(&span, e.to_string()))?;
        Ok(id)
    }

    fn call(&mut self, func: &str, span: &Span) -> PResult<Call> {
        self.expect_punct("(", &format!("after '{func}'"))?;
        let boxed = |p: &mut Self| -> PResult<Box<Expr>> { Ok(Box::new(p.expr()?)) };
        let call = match func {
            "coh" => Call::Coh(self.space_id()?),
            "bm" => Call::Bm(self.space_id()?),
            "bconf" => {
                let k = self.int_in::<u8>("configuration size")?;
                self.expect_punct(",", "after configuration size")?;
                let (word, at) = self.ident("A(N) or P(N)")?;
                let ambient = match word.as_str() {
                    "A" => Ambient::Affine,
                    "P" => Ambient::Projective,
                    _ => {
                        return Err(invalid(
                            &at,
                            format!("bconf needs A(N) or P(N), found '{word}'"),
                        ))
                    }
                };
                self.expect_punct("(", "after ambient space")?;
                let dim = self.int_in::<u8>("dimension")?;
                self.expect_punct(")", "after dimension")?;
                if k == 0 || dim == 0 || dim > 7 {
                    return Err(invalid(
                        span,
                        format!("bconf({k}, {word}({dim})) is out of range"),
                    ));
                }
                Call::Bconf { k, ambient, dim }
            }
            "cone" => Call::Cone(boxed(self)?),
            "rev" => Call::Rev(boxed(self)?),
            "euler" => Call::Euler(boxed(self)?),
            "betti" => Call::Betti(boxed(self)?),
            "twist" | "pdual" => {
                let e = boxed(self)?;
                self.expect_punct(",", &format!("in {func}(expr, INT)"))?;
                let k = self.int_in::<i32>("integer argument")?;
                if func == "twist" {
                    Call::Twist(e, k)
                } else {
                    Call::Pdual(e, k)
                }
            }
            "total" => {
                let (page, at) = self.name()?;
                let sym = self.lookup(&page, &at)?;
                if sym.kind != NameKind::Page {
                    return Err(invalid(&at, format!("'{page}' is not a page")));
                }
                Call::Total(page)
            }
            "alexander" => {
                let arg = boxed(self)?;
                self.expect_punct(",", "in alexander(expr, M=INT)")?;
                let m = self.keyed_int::<i32>("M")?;
                let unreduced = if self.eat_punct(",") {
                    self.expect_word("unreduced")?;
                    true
                } else {
                    false
                };
                if m < 1 {
                    return Err(invalid(
                        span,
                        format!("ambient dimension M={m} must be positive"),
                    ));
                }
                Call::Alexander { arg, m, unreduced }
            }
            other => return Err(syntax(span, format!("unknown function '{other}'"))),
        };
        self.expect_punct(")", &format!("to close {func}(...)"))?;
        Ok(call)
    }

    // ---- statements --------------------------------------------------------

    fn statement(&mut self) -> PResult<()> {
        let span = self.span();
        let (word, _) = self.ident("a statement")?;
        let kind = match word.as_str() {
            "include" => return self.include(&span),
            "let" => {
                let (name, at) = self.name()?;
                self.expect_punct("=", "after name")?;
                let expr = self.expr()?;
                self.end_stmt()?;
                let n = self.degree_of(&expr)?;
                self.define(&name, &at, NameKind::Poly, n)?;
                StmtKind::Let { name, expr }
            }
            "stratum" => self.stratum()?,
            "page" => self.page()?,
            "diff" => self.diff()?,
            "les" => self.les()?,
            "dual" => {
                let (name, at) = self.name()?;
                self.expect_punct("=", "after name")?;
                let call_span = self.span();
                let expr = self.expr()?;
                self.end_stmt()?;
                let ExprKind::Call(Call::Alexander { arg, m, unreduced }) = expr.kind else {
                    return Err(syntax(&call_span, "dual expects alexander(expr, M=INT)"));
                };
                let n = self.degree_of(&arg)?;
                self.define(&name, &at, NameKind::Poly, n)?;
                StmtKind::Dual {
                    name,
                    expr: *arg,
                    m,
                    unreduced,
                }
            }
            "divide" => {
                let (name, at) = self.name()?;
                self.expect_punct("=", "after name")?;
                let num = self.expr()?;
                self.expect_punct("/", "in divide NAME = expr / expr")?;
                let den = self.expr()?;
                self.end_stmt()?;
                let n = self.join(self.degree_of(&num)?, self.degree_of(&den)?, &span)?;
                self.define(&name, &at, NameKind::Poly, n)?;
                StmtKind::Divide { name, num, den }
            }
            "assert" => {
                let lhs = self.expr()?;
                self.expect_punct("==", "in assertion")?;
                let rhs = self.expr()?;
                self.end_stmt()?;
                self.join(self.degree_of(&lhs)?, self.degree_of(&rhs)?, &span)?;
                StmtKind::Assert { lhs, rhs }
            }
            other => return Err(syntax(&span, format!("unknown statement '{other}'"))),
        };
        self.ctx.statements.push(Stmt { kind, span });
        Ok(())
    }

    fn include(&mut self, span: &Span) -> PResult<()> {
        let rel = match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                s
            }
            other => {
                return Err(syntax(
                    &self.span(),
                    format!("expected a file name, found {}", other.describe()),
                ))
            }
        };
        self.end_stmt()?;
        let path = self.base_dir.join(&rel);
        let key = path.canonicalize().unwrap_or_else(|_| path.clone());
        if self.ctx.include_stack.contains(&key) {
            return Err(invalid(span, format!("include cycle through \"{rel}\"")));
        }
        let text = std::fs::read_to_string(&path)
            .map_err(|e| invalid(span, format!("cannot read \"{rel}\": {e}")))?;
        self.ctx.include_stack.push(key);
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        parse_into(self.ctx, Arc::from(rel.as_str()), &text, dir)?;
        self.ctx.include_stack.pop();
        Ok(())
    }

    fn stratum(&mut self) -> PResult<StmtKind> {
        let (name, at) = self.name()?;
        self.expect_punct("{", "to open the stratum body")?;
        let (mut base, mut simplex, mut rank) = (None, None, None);
        while !self.eat_punct("}") {
            let (field, fspan) = self.ident("base, simplex or rank")?;
            self.expect_punct("=", &format!("after '{field}'"))?;
            let dup = match field.as_str() {
                "base" => base.replace(self.expr()?).is_some(),
                "simplex" => simplex
                    .replace(self.int_in::<u32>("simplex dimension")?)
                    .is_some(),
                "rank" => rank.replace(self.int_in::<u32>("bundle rank")?).is_some(),
                other => return Err(syntax(&fspan, format!("unknown stratum field '{other}'"))),
            };
            if dup {
                return Err(syntax(&fspan, format!("field '{field}' given twice")));
            }
            self.eat_punct(";");
        }
        let missing = |what: &str| invalid(&at, format!("stratum '{name}' is missing '{what}'"));
        let base = base.ok_or_else(|| missing("base"))?;
        let simplex = simplex.ok_or_else(|| missing("simplex"))?;
        let rank = rank.ok_or_else(|| missing("rank"))?;
        let n = self.degree_of(&base)?;
        self.define(&name, &at, NameKind::Stratum, n)?;
        Ok(StmtKind::Stratum {
            name,
            base,
            simplex,
            rank,
        })
    }

    fn page(&mut self) -> PResult<StmtKind> {
        let (name, at) = self.name()?;
        let (word, wspan) = self.ident("homological or cohomological")?;
        let variance = match word.as_str() {
            "homological" => Variance::Homological,
            "cohomological" => Variance::Cohomological,
            _ => {
                return Err(syntax(
                    &wspan,
                    format!("expected homological or cohomological, found '{word}'"),
                ))
            }
        };
        let start = if self.at_ident("start") {
            self.keyed_int::<u32>("start")?
        } else {
            match variance {
                Variance::Homological => 1,
                Variance::Cohomological => 2,
            }
        };
        if start == 0 {
            return Err(invalid(&wspan, "the first page index must be at least 1"));
        }
        let (body, n) = if self.eat_punct("=") {
            self.expect_word("product")?;
            self.expect_punct("(", "after 'product'")?;
            let base = self.expr()?;
            self.expect_punct(",", "in product(base, fiber)")?;
            let fiber = self.expr()?;
            self.expect_punct(")", "to close product(...)")?;
            self.end_stmt()?;
            let n = self.join(self.degree_of(&base)?, self.degree_of(&fiber)?, &at)?;
            (PageBody::Product(base, fiber), n)
        } else {
            self.expect_punct("{", "to open the page body")?;
            let mut cols: Vec<(i32, Expr)> = Vec::new();
            let mut n = None;
            while !self.eat_punct("}") {
                let cspan = self.span();
                self.expect_word("col")?;
                let p = self.int_in::<i32>("column index")?;
                self.expect_punct("=", "after column index")?;
                let e = self.expr()?;
                if !self.eat_punct(";") {
                    self.eat_punct(",");
                }
                if cols.iter().any(|(q, _)| *q == p) {
                    return Err(invalid(&cspan, format!("column {p} given twice")));
                }
                n = self.join(n, self.degree_of(&e)?, &cspan)?;
                cols.push((p, e));
            }
            (PageBody::Columns(cols), n)
        };
        self.define(&name, &at, NameKind::Page, n)?;
        Ok(StmtKind::Page {
            name,
            variance,
            start,
            body,
        })
    }

    fn diff(&mut self) -> PResult<StmtKind> {
        let (page, at) = self.name()?;
        let page_n = {
            let sym = self.lookup(&page, &at)?;
            if sym.kind != NameKind::Page {
                return Err(invalid(&at, format!("'{page}' is not a page")));
            }
            sym.n
        };
        let r = self.keyed_int::<u32>("r")?;
        if r == 0 {
            return Err(invalid(&at, "differential index r must be at least 1"));
        }
        self.expect_word("at")?;
        self.expect_punct("(", "before the source position")?;
        let p = self.int_in::<i32>("p")?;
        self.expect_punct(",", "between p and q")?;
        let q = self.int_in::<i32>("q")?;
        self.expect_punct(")", "after the source position")?;
        let image = if self.at_ident("rank") {
            DiffSpec::Rank(self.keyed_int::<i64>("rank")?)
        } else {
            self.expect_word("image")?;
            self.expect_punct("=", "after 'image'")?;
            let e = self.expr()?;
            self.join(page_n, self.degree_of(&e)?, &e.span)?;
            DiffSpec::Image(e)
        };
        self.end_stmt()?;
        Ok(StmtKind::Diff {
            page,
            r,
            source: (p, q),
            image,
        })
    }

    fn les(&mut self) -> PResult<StmtKind> {
        let (name, at) = self.name()?;
        self.expect_word("mode")?;
        self.expect_punct("=", "after 'mode'")?;
        let (word, wspan) = self.ident("bm or gysin")?;
        let mode = match word.as_str() {
            "bm" => LesMode::Bm,
            "gysin" => LesMode::Gysin,
            _ => {
                return Err(syntax(
                    &wspan,
                    format!("expected bm or gysin, found '{word}'"),
                ))
            }
        };
        self.expect_punct("{", "to open the sequence body")?;
        let mut slots: [(Option<Option<Expr>>, &str); 3] = [(None, "A"), (None, "X"), (None, "U")];
        let mut connects: Vec<(i32, Expr)> = Vec::new();
        let mut n = None;
        while !self.eat_punct("}") {
            let (field, fspan) = self.ident("A, X, U or connect")?;
            if field == "connect" {
                let k = self.keyed_int::<i32>("k")?;
                self.expect_word("image")?;
                self.expect_punct("=", "after 'image'")?;
                let e = self.expr()?;
                self.end_stmt()?;
                if connects.iter().any(|(j, _)| *j == k) {
                    return Err(invalid(
                        &fspan,
                        format!("connecting map at k={k} declared twice"),
                    ));
                }
                n = self.join(n, self.degree_of(&e)?, &fspan)?;
                connects.push((k, e));
                continue;
            }
            let Some(slot) = slots.iter_mut().find(|(_, r)| *r == field) else {
                return Err(syntax(
                    &fspan,
                    format!("expected A, X, U or connect, found '{field}'"),
                ));
            };
            if slot.0.is_some() {
                return Err(syntax(&fspan, format!("term {field} given twice")));
            }
            self.expect_punct("=", &format!("after '{field}'"))?;
            let value = if self.eat_punct("?") {
                None
            } else {
                let e = self.expr()?;
                n = self.join(n, self.degree_of(&e)?, &fspan)?;
                Some(e)
            };
            slot.0 = Some(value);
            self.end_stmt()?;
        }
        let unknowns = slots
            .iter()
            .filter(|(v, _)| matches!(v, Some(None)))
            .count();
        let missing: Vec<&str> = slots
            .iter()
            .filter(|(v, _)| v.is_none())
            .map(|(_, r)| *r)
            .collect();
        if !missing.is_empty() {
            return Err(invalid(
                &at,
                format!(
                    "sequence '{name}' is missing term(s) {}",
                    missing.join(", ")
                ),
            ));
        }
        if unknowns != 1 {
            return Err(invalid(
                &at,
                format!("sequence '{name}' needs exactly one '?' term, found {unknowns}"),
            ));
        }
        let [a, x, u] = slots.map(|(v, _)| v.flatten());
        self.define(&name, &at, NameKind::Poly, n)?;
        Ok(StmtKind::Les {
            name,
            mode,
            terms: LesTerms { a, x, u, connects },
        })
    }
}

fn parse_into(ctx: &mut Context, file: Arc<str>, text: &str, base_dir: PathBuf) -> PResult<()> {
    let toks = tokenize(&file, text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        base_dir,
        ctx,
    };
    while *parser.peek() != Tok::Eof {
        parser.statement()?;
    }
    Ok(())
}

fn parse_with(
    file: &str,
    text: &str,
    base_dir: PathBuf,
    root: Option<PathBuf>,
) -> PResult<Scenario> {
    let mut ctx = Context {
        symbols: HashMap::new(),
        statements: Vec::new(),
        include_stack: root.into_iter().collect(),
    };
    parse_into(&mut ctx, Arc::from(file), text, base_dir)?;
    Ok(Scenario {
        statements: ctx.statements,
    })
}

/// Parse scenario source. `include` paths resolve against the current
/// directory.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    parse_with("<input>", text, PathBuf::from("."), None)
}

/// Parse a scenario file; `include` paths resolve against its directory.
pub fn parse_scenario_file(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let label = path.file_name().map_or_else(
        || path.display().to_string(),
        |f| f.to_string_lossy().into_owned(),
    );
    let root = path.canonicalize().ok();
    parse_with(&label, &text, dir, root)
}
