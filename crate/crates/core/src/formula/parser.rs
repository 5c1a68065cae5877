use super::lexer::{lex, LexOptions, Span, Spanned, Token};
use super::{BinOp, Formula, Quantifier};
use crate::error::SyntaxError;

const NOT_PRECEDENCE: u8 = 6;

/// Token cursor shared by the formula parser and the file-format parsers.
#[derive(Debug, Clone)]
pub struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Spanned>) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn from_source(src: &str, opts: LexOptions) -> Result<Self, SyntaxError> {
        Ok(Cursor::new(lex(src, opts)?))
    }

    pub fn peek(&self) -> &Token {
        self.peek_at(0)
    }

    pub fn peek_at(&self, n: usize) -> &Token {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].token
    }

    pub fn span(&self) -> Span {
        self.toks[self.pos.min(self.toks.len() - 1)].span
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn rewind(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Token::Eof)
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        let s = self.span();
        SyntaxError::new(s.line, s.column, message)
    }

    pub fn unexpected(&self, wanted: &str) -> SyntaxError {
        self.error(format!("expected {wanted}, found {}", describe(self.peek())))
    }

    pub fn is_op(&self, op: &str) -> bool {
        matches!(self.peek(), Token::Op(o) if *o == op)
    }

    pub fn eat_op(&mut self, op: &str) -> bool {
        if self.is_op(op) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_op(&mut self, op: &str) -> Result<(), SyntaxError> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{op}'")))
        }
    }

    pub fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Token) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&describe(tok)))
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Token::Ident(n) if n == kw)
    }

    pub fn is_keyword_at(&self, n: usize, kw: &str) -> bool {
        matches!(self.peek_at(n), Token::Ident(i) if i == kw)
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{kw}'")))
        }
    }

    /// Consumes a sequence of keywords, or nothing.
    pub fn eat_phrase(&mut self, words: &[&str]) -> bool {
        if words.iter().enumerate().all(|(i, w)| self.is_keyword_at(i, w)) {
            for _ in words {
                self.next();
            }
            true
        } else {
            false
        }
    }

    pub fn expect_ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Token::Ident(n) => {
                let n = n.clone();
                self.next();
                Ok(n)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    pub fn ident_list(&mut self) -> Result<Vec<String>, SyntaxError> {
        let mut out = vec![self.expect_ident()?];
        while self.eat(&Token::Comma) {
            out.push(self.expect_ident()?);
        }
        Ok(out)
    }

    pub fn formula(&mut self) -> Result<Formula, SyntaxError> {
        self.expr(1)
    }

    fn peek_binop(&self) -> Option<BinOp> {
        match self.peek() {
            Token::Op(o) => BinOp::from_ascii(o),
            _ => None,
        }
    }

    fn expr(&mut self, min: u8) -> Result<Formula, SyntaxError> {
        let mut lhs = self.prefix()?;
        while let Some(op) = self.peek_binop() {
            let p = op.precedence();
            if p < min {
                break;
            }
            self.next();
            let rhs = self.expr(p + 1)?;
            lhs = Formula::binary(op, lhs, rhs);
            if op.assoc() == super::Assoc::None
                && self.peek_binop().is_some_and(|o| o.precedence() == p)
            {
                return Err(self.error("operator is not associative; add parentheses"));
            }
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Formula, SyntaxError> {
        if self.eat_op("not") {
            if matches!(self.peek(), Token::LParen) {
                return Ok(Formula::Not(Box::new(self.parenthesized()?)));
            }
            return Ok(Formula::Not(Box::new(self.expr(NOT_PRECEDENCE)?)));
        }
        if self.eat_op("-") {
            let operand = self.prefix()?;
            return Ok(Formula::Neg(Box::new(operand)));
        }
        if self.is_op("!") || self.is_op("#") {
            let quantifier = if self.eat_op("!") {
                Quantifier::ForAll
            } else {
                self.next();
                Quantifier::Exists
            };
            let vars = if self.eat(&Token::LParen) {
                let v = self.ident_list()?;
                self.expect(&Token::RParen)?;
                v
            } else {
                self.ident_list()?
            };
            self.expect(&Token::Dot)?;
            if !matches!(self.peek(), Token::LParen) {
                return Err(self.unexpected("'(' after quantified variables"));
            }
            let body = self.parenthesized()?;
            return Ok(Formula::Quant {
                quantifier,
                vars,
                body: Box::new(body),
            });
        }
        let primary = self.primary()?;
        self.postfix(primary)
    }

    fn parenthesized(&mut self) -> Result<Formula, SyntaxError> {
        self.expect(&Token::LParen)?;
        let f = self.formula()?;
        self.expect(&Token::RParen)?;
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.next();
                if name == "btrue" {
                    Ok(Formula::Truth)
                } else {
                    Ok(Formula::Ident(name))
                }
            }
            Token::Num(n) => {
                self.next();
                Ok(Formula::Num(n))
            }
            Token::EmptySet => {
                self.next();
                Ok(Formula::EmptySet)
            }
            Token::LParen => self.parenthesized(),
            Token::LBrace => {
                self.next();
                if self.eat(&Token::RBrace) {
                    return Ok(Formula::EmptySet);
                }
                let mut items = vec![self.formula()?];
                while self.eat(&Token::Comma) {
                    items.push(self.formula()?);
                }
                self.expect(&Token::RBrace)?;
                Ok(Formula::SetLit(items))
            }
            _ => Err(self.unexpected("formula")),
        }
    }

    fn postfix(&mut self, mut f: Formula) -> Result<Formula, SyntaxError> {
        loop {
            match self.peek() {
                Token::LParen => {
                    self.next();
                    let mut args = vec![self.formula()?];
                    while self.eat(&Token::Comma) {
                        args.push(self.formula()?);
                    }
                    self.expect(&Token::RParen)?;
                    f = Formula::App {
                        func: Box::new(f),
                        args,
                    };
                }
                Token::LBracket => {
                    self.next();
                    let set = self.formula()?;
                    self.expect(&Token::RBracket)?;
                    f = Formula::Image {
                        rel: Box::new(f),
                        set: Box::new(set),
                    };
                }
                Token::Op("~") => {
                    self.next();
                    f = Formula::Inverse(Box::new(f));
                }
                _ => return Ok(f),
            }
        }
    }
}

pub(crate) fn describe(tok: &Token) -> String {
    match tok {
        Token::Ident(n) => format!("identifier '{n}'"),
        Token::Num(n) => format!("number {n}"),
        Token::Str(s) => format!("string \"{s}\""),
        Token::Var(v) => format!("variable '?{v}'"),
        Token::Op(o) => format!("'{o}'"),
        Token::LParen => "'('".into(),
        Token::RParen => "')'".into(),
        Token::LBracket => "'['".into(),
        Token::RBracket => "']'".into(),
        Token::LBrace => "'{'".into(),
        Token::RBrace => "'}'".into(),
        Token::Comma => "','".into(),
        Token::Dot => "'.'".into(),
        Token::EmptySet => "'{}'".into(),
        Token::Label(l) => format!("label '({l})'"),
        Token::Directive(d) => format!("directive '{d}'"),
        Token::Eof => "end of input".into(),
    }
}

/// Parses a complete formula; trailing tokens are an error.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut c = Cursor::from_source(text, LexOptions::default())?;
    let f = c.formula()?;
    if !c.at_eof() {
        return Err(c.unexpected("end of formula"));
    }
    Ok(f)
}
