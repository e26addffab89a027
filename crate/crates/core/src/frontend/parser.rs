//! Recursive-descent parser. Precedence, loosest first: `? :` and `? { }`;
//! `∨`; `∧`; comparisons (non-associative); `+ -`; `* / // \\`; prefix
//! `- ¬`; postfix selection.

use crate::builtins::{FunId, ReduceOp};
use crate::types::Shape;
use crate::values::{CmpOp, FieldId};

use super::lexer::{Tok, Token};
use super::syntax::*;
use super::{FrontendError, Span};

pub struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
}

type PResult<T> = Result<T, FrontendError>;

fn closer(shape: Shape) -> Tok {
    match shape {
        Shape::List => Tok::RBrack,
        Shape::Bag => Tok::BagClose,
        Shape::Set => Tok::RBrace,
    }
}

fn quoted_op(t: &Tok) -> Option<FunId> {
    Some(match t {
        Tok::Plus => FunId::Add,
        Tok::Minus => FunId::Sub,
        Tok::Star => FunId::Mul,
        Tok::Slash => FunId::Div,
        Tok::SlashSlash => FunId::IntDiv,
        Tok::BackBack => FunId::Mod,
        Tok::And => FunId::Min,
        Tok::Or => FunId::Max,
        _ => FunId::cmp(cmp_op(t)?),
    })
}

fn cmp_op(t: &Tok) -> Option<CmpOp> {
    Some(match t {
        Tok::Eq => CmpOp::Eq,
        Tok::Ne => CmpOp::Ne,
        Tok::Lt => CmpOp::Lt,
        Tok::Le => CmpOp::Le,
        Tok::Gt => CmpOp::Gt,
        Tok::Ge => CmpOp::Ge,
        _ => return None,
    })
}

fn opens_argument(t: &Tok) -> bool {
    matches!(t, Tok::LParen | Tok::LBrack | Tok::LBrace | Tok::BagOpen)
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(FrontendError::syntax(
            format!("expected {expected}, found {}", self.peek().describe()),
            self.span(),
        ))
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.error(&t.describe())
        }
    }

    fn node(&self, kind: SKind, start: usize) -> SExpr {
        SExpr {
            kind,
            span: Span::new(start, self.prev_end().max(start)),
        }
    }

    /// A whole program: a block followed by end of input.
    pub fn program(&mut self) -> PResult<SExpr> {
        let e = self.block(&Tok::Eof)?;
        self.expect(Tok::Eof)?;
        Ok(e)
    }

    fn at_binding(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_)) && self.peek_at(1) == &Tok::Assign
    }

    /// `x := e; …; result` up to (not including) `end`. Without bindings
    /// this is a plain expression.
    fn block(&mut self, end: &Tok) -> PResult<SExpr> {
        let start = self.span().start;
        let mut bindings = Vec::new();
        while self.at_binding() {
            let Tok::Ident(name) = self.bump() else {
                unreachable!()
            };
            self.bump();
            let rhs = self.expr()?;
            bindings.push((name, rhs));
            if !self.eat(&Tok::Semi) {
                break;
            }
        }
        if bindings.is_empty() {
            return self.expr();
        }
        let result = if self.peek() == end {
            None
        } else {
            let r = self.expr()?;
            self.eat(&Tok::Semi);
            Some(Box::new(r))
        };
        Ok(self.node(SKind::Block(bindings, result), start))
    }

    pub fn expr(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        let cond = self.or_expr()?;
        if !self.eat(&Tok::Question) {
            return Ok(cond);
        }
        if self.peek() == &Tok::LBrace && self.brace_has_arrow() {
            return self.switch(cond, start);
        }
        let then = self.expr()?;
        self.expect(Tok::Colon)?;
        let otherwise = self.expr()?;
        Ok(self.node(
            SKind::Ternary(Box::new(cond), Box::new(then), Box::new(otherwise)),
            start,
        ))
    }

    /// Whether the brace group starting here has a `→` at its top level.
    fn brace_has_arrow(&self) -> bool {
        let mut depth = 0usize;
        for t in &self.toks[self.pos..] {
            match t.tok {
                Tok::LParen | Tok::LBrack | Tok::LBrace | Tok::BagOpen => depth += 1,
                Tok::RParen | Tok::RBrack | Tok::RBrace | Tok::BagClose => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Arrow if depth == 1 => return true,
                Tok::Eof => return false,
                _ => {}
            }
        }
        false
    }

    fn switch(&mut self, scrutinee: SExpr, start: usize) -> PResult<SExpr> {
        self.expect(Tok::LBrace)?;
        let tagged = self.peek() == &Tok::At
            || (self.peek() == &Tok::Underscore && {
                // `_ → …` alone says nothing; look at later arms.
                self.toks[self.pos..].iter().any(|t| t.tok == Tok::At)
            });
        let mut num_arms = Vec::new();
        let mut tag_arms = Vec::new();
        let mut default = None;
        loop {
            if self.peek() == &Tok::RBrace {
                break;
            }
            let arm_start = self.span().start;
            if self.eat(&Tok::Underscore) {
                if default.is_some() {
                    return Err(FrontendError::syntax(
                        "duplicate default case `_`",
                        self.span(),
                    ));
                }
                self.expect(Tok::Arrow)?;
                default = Some(Box::new(self.expr()?));
            } else if tagged {
                self.expect(Tok::At)?;
                let case = self.ident("a case name")?;
                let pattern = if self.eat(&Tok::LParen) {
                    let mut names = Vec::new();
                    loop {
                        if self.eat(&Tok::Underscore) {
                            names.push(None);
                        } else {
                            names.push(Some(self.ident("a variable")?));
                        }
                        if !self.eat(&Tok::Comma) || self.peek() == &Tok::RParen {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                    match names.as_slice() {
                        [Some(x)] => TagPattern::Var(x.clone()),
                        [None] => TagPattern::Wild,
                        _ => TagPattern::Fields(names),
                    }
                } else {
                    TagPattern::Bare
                };
                self.expect(Tok::Arrow)?;
                let body = self.expr()?;
                tag_arms.push(TagArm {
                    case,
                    pattern,
                    body,
                    span: Span::new(arm_start, self.prev_end()),
                });
            } else {
                let mut keys = vec![self.or_expr()?];
                while self.eat(&Tok::Comma) {
                    keys.push(self.or_expr()?);
                }
                self.expect(Tok::Arrow)?;
                num_arms.push((keys, self.expr()?));
            }
            if !self.eat(&Tok::Semi) {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        let scrutinee = Box::new(scrutinee);
        let kind = if tagged {
            SKind::TagSwitch {
                scrutinee,
                arms: tag_arms,
                default,
            }
        } else {
            SKind::NumSwitch {
                scrutinee,
                arms: num_arms,
                default,
            }
        };
        Ok(self.node(kind, start))
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(what),
        }
    }

    fn or_expr(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        let mut lhs = self.and_expr()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and_expr()?;
            lhs = self.node(
                SKind::Binary(BinOp::Or, Box::new(lhs), Box::new(rhs)),
                start,
            );
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        let mut lhs = self.cmp_expr()?;
        while self.eat(&Tok::And) {
            let rhs = self.cmp_expr()?;
            lhs = self.node(
                SKind::Binary(BinOp::And, Box::new(lhs), Box::new(rhs)),
                start,
            );
        }
        Ok(lhs)
    }

    fn cmp_expr(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        let lhs = self.add_expr()?;
        let Some(op) = cmp_op(self.peek()) else {
            return Ok(lhs);
        };
        self.bump();
        let rhs = self.add_expr()?;
        if cmp_op(self.peek()).is_some() {
            return Err(FrontendError::syntax(
                "comparisons do not chain; add parentheses",
                self.span(),
            ));
        }
        Ok(self.node(SKind::Compare(op, Box::new(lhs), Box::new(rhs)), start))
    }

    fn add_expr(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        let mut lhs = self.mul_expr()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                // `- ←` is a wildcard pattern, never a subtraction.
                Tok::Minus if self.peek_at(1) != &Tok::LArrow => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.mul_expr()?;
            lhs = self.node(SKind::Binary(op, Box::new(lhs), Box::new(rhs)), start);
        }
    }

    fn mul_expr(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                Tok::SlashSlash => BinOp::IntDiv,
                Tok::BackBack => BinOp::Mod,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = self.node(SKind::Binary(op, Box::new(lhs), Box::new(rhs)), start);
        }
    }

    fn unary(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                let e = self.unary()?;
                Ok(self.node(SKind::Neg(Box::new(e)), start))
            }
            Tok::Not => {
                self.bump();
                let e = self.unary()?;
                Ok(self.node(SKind::Not(Box::new(e)), start))
            }
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        let mut e = self.primary()?;
        while self.eat(&Tok::Dot) {
            let field = if self.eat(&Tok::Hash) {
                self.position()?
            } else {
                FieldId::named(&self.ident("a field name")?)
            };
            e = self.node(SKind::Select(Box::new(e), field), start);
        }
        Ok(e)
    }

    fn position(&mut self) -> PResult<FieldId> {
        let span = self.span();
        match self.bump() {
            Tok::Num(n)
                if n.is_integer() && n > num_rational::BigRational::from_integer(0.into()) =>
            {
                let i: u32 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| FrontendError::syntax("field position too large", span))?;
                Ok(FieldId::Pos(i))
            }
            _ => Err(FrontendError::syntax(
                "expected a field position (1, 2, …)",
                span,
            )),
        }
    }

    /// An argument: parenthesised or bracketed.
    fn argument(&mut self) -> PResult<SExpr> {
        match self.peek() {
            Tok::LParen => self.paren(),
            Tok::LBrack => self.collection(Shape::List),
            Tok::LBrace => self.collection(Shape::Set),
            Tok::BagOpen => self.collection(Shape::Bag),
            _ => self.error("an argument in parentheses or brackets"),
        }
    }

    fn primary(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(self.node(SKind::Number(n), start))
            }
            Tok::Ident(name) => {
                self.bump();
                if opens_argument(self.peek()) {
                    if name == "E" && self.peek() == &Tok::LParen {
                        let arg = self.paren()?;
                        return Ok(self.node(SKind::Expect(Box::new(arg)), start));
                    }
                    if let Some(f) = FunId::from_name(&name) {
                        let arg = self.argument()?;
                        return Ok(self.node(SKind::Call(f, Box::new(arg)), start));
                    }
                }
                Ok(self.node(SKind::Ident(name), start))
            }
            Tok::Tilde => {
                self.bump();
                let name = self.ident("a distribution name")?;
                if name == "choose" {
                    return self.choose(start);
                }
                let arg = self.argument()?;
                Ok(self.node(SKind::Draw(name, Box::new(arg)), start))
            }
            Tok::At => {
                self.bump();
                let name = self.ident("a case name")?;
                let payload = if self.peek() == &Tok::LParen {
                    Some(Box::new(self.paren()?))
                } else {
                    None
                };
                Ok(self.node(SKind::Tag(name, payload), start))
            }
            Tok::LParen => {
                if let Some(f) = self.quoted_function() {
                    let arg = self.argument()?;
                    return Ok(self.node(SKind::Call(f, Box::new(arg)), start));
                }
                self.paren()
            }
            Tok::LBrack => self.collection(Shape::List),
            Tok::LBrace => self.collection(Shape::Set),
            Tok::BagOpen => self.collection(Shape::Bag),
            _ => self.error("an expression"),
        }
    }

    /// `(+)`, `(≤)`, `(max)` and the like, consumed when present.
    fn quoted_function(&mut self) -> Option<FunId> {
        if self.peek_at(2) != &Tok::RParen {
            return None;
        }
        let f = match self.peek_at(1) {
            Tok::Ident(name) => {
                FunId::from_name(name).filter(|f| ReduceOp::from_binary(*f).is_some())?
            }
            t => quoted_op(t)?,
        };
        if !opens_argument(self.peek_at(3)) {
            return None;
        }
        self.pos += 3;
        Some(f)
    }

    /// `~choose{ e: p; … }`.
    fn choose(&mut self, start: usize) -> PResult<SExpr> {
        self.expect(Tok::LBrace)?;
        let mut branches = Vec::new();
        loop {
            if self.peek() == &Tok::RBrace {
                break;
            }
            let e = self.or_expr()?;
            self.expect(Tok::Colon)?;
            let p = self.or_expr()?;
            branches.push((e, p));
            if !self.eat(&Tok::Semi) {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(self.node(SKind::Choose(branches), start))
    }

    /// Parenthesised forms: unit, grouping, tuples and records, blocks.
    fn paren(&mut self) -> PResult<SExpr> {
        let start = self.span().start;
        self.expect(Tok::LParen)?;
        if self.eat(&Tok::RParen) {
            return Ok(self.node(SKind::Record(vec![]), start));
        }
        if self.at_binding() {
            let b = self.block(&Tok::RParen)?;
            self.expect(Tok::RParen)?;
            return Ok(b);
        }
        let mut items = Vec::new();
        let mut trailing_comma = false;
        loop {
            let label = match (self.peek().clone(), self.peek_at(1)) {
                (Tok::Ident(name), Tok::Colon) => {
                    self.pos += 2;
                    Some(FieldId::named(&name))
                }
                (Tok::Hash, _) => {
                    self.bump();
                    let f = self.position()?;
                    self.expect(Tok::Colon)?;
                    Some(f)
                }
                _ => None,
            };
            items.push((label, self.expr()?));
            if !self.eat(&Tok::Comma) {
                break;
            }
            if self.peek() == &Tok::RParen {
                trailing_comma = true;
                break;
            }
        }
        self.expect(Tok::RParen)?;
        if items.len() == 1 && items[0].0.is_none() && !trailing_comma {
            let (_, e) = items.pop().expect("one item");
            return Ok(self.node(SKind::Paren(Box::new(e)), start));
        }
        Ok(self.node(SKind::Record(items), start))
    }

    /// Generator pattern followed by `←`, if one starts here.
    fn at_generator(&self) -> bool {
        match self.peek() {
            Tok::Ident(_) | Tok::Underscore | Tok::Minus => self.peek_at(1) == &Tok::LArrow,
            Tok::LBrace => {
                let mut k = 1;
                loop {
                    if !matches!(self.peek_at(k), Tok::Ident(_)) {
                        return false;
                    }
                    match self.peek_at(k + 1) {
                        Tok::Comma => k += 2,
                        Tok::RBrace => return self.peek_at(k + 2) == &Tok::LArrow,
                        _ => return false,
                    }
                }
            }
            _ => false,
        }
    }

    fn gen_pattern(&mut self) -> PResult<(GenPattern, Span)> {
        let start = self.span().start;
        let p = match self.bump() {
            Tok::Ident(name) => GenPattern::Var(name),
            Tok::Underscore | Tok::Minus => GenPattern::Wild,
            Tok::LBrace => {
                let mut names = vec![self.ident("a variable")?];
                while self.eat(&Tok::Comma) {
                    names.push(self.ident("a variable")?);
                }
                self.expect(Tok::RBrace)?;
                GenPattern::Distinct(names)
            }
            _ => unreachable!("checked by at_generator"),
        };
        Ok((p, Span::new(start, self.prev_end())))
    }

    fn generator(&mut self) -> PResult<Generator> {
        let mut patterns = vec![self.gen_pattern()?];
        self.expect(Tok::LArrow)?;
        while self.at_generator() {
            patterns.push(self.gen_pattern()?);
            self.expect(Tok::LArrow)?;
        }
        let source = self.expr()?;
        Ok(Generator {
            patterns,
            source: Box::new(source),
        })
    }

    fn clauses(&mut self) -> PResult<Vec<Clause>> {
        let mut out = Vec::new();
        loop {
            if self.at_generator() {
                out.push(Clause::Gen(self.generator()?));
            } else {
                out.push(Clause::Filter(self.expr()?));
            }
            if !self.eat(&Tok::Semi) {
                return Ok(out);
            }
        }
    }

    fn collection(&mut self, shape: Shape) -> PResult<SExpr> {
        let start = self.span().start;
        self.bump();
        let close = closer(shape);
        if self.eat(&close) {
            return Ok(self.node(SKind::Coll(shape, CollBody::Elems(vec![])), start));
        }
        let body = if self.at_generator() {
            let g = self.generator()?;
            let clauses = if self.eat(&Tok::Bar) {
                self.clauses()?
            } else {
                vec![]
            };
            CollBody::Comp {
                head: CompHead::Gen(g),
                clauses,
            }
        } else {
            let first = self.expr()?;
            match self.peek() {
                Tok::DotDot => {
                    self.bump();
                    let hi = self.expr()?;
                    CollBody::Range(Box::new(first), Box::new(hi))
                }
                Tok::Bar => {
                    self.bump();
                    let clauses = self.clauses()?;
                    CollBody::Comp {
                        head: CompHead::Map(Box::new(first)),
                        clauses,
                    }
                }
                _ => {
                    let mut elems = vec![first];
                    while self.eat(&Tok::Comma) {
                        if self.peek() == &close {
                            break;
                        }
                        elems.push(self.expr()?);
                    }
                    CollBody::Elems(elems)
                }
            }
        };
        self.expect(close)?;
        Ok(self.node(SKind::Coll(shape, body), start))
    }
}
