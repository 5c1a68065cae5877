use crate::error::SyntaxError;

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Num(u64),
    Str(String),
    /// Horn-clause variable `?x`.
    Var(String),
    /// Operator in canonical ASCII spelling.
    Op(&'static str),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    EmptySet,
    /// Line-leading `(label)`; only produced when labels are enabled.
    Label(String),
    /// `/*@ text */` annotation comment.
    Directive(String),
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LexOptions {
    pub labels: bool,
}

const OPS: &[&str] = &[
    "/<<:", "+->>", ">->>", "<=>", "<->", "-->", "+->", ">->", ">+>", "->>", "|->", "<<|", "|>>",
    "<<:", "/<:", "=>", "/=", "<=", ">=", "/:", "<:", "/\\", "\\/", "<+", "<|", "|>", "..", ":=",
    "::", "||", "<-", "=", "<", ">", ":", ";", "+", "-", "*", "/", "\\", "~", "!", "#", "&",
];

fn unicode_op(c: char) -> Option<&'static str> {
    Some(match c {
        '∀' => "!",
        '∃' => "#",
        '∈' => ":",
        '∉' => "/:",
        '⊆' => "<:",
        '⊈' => "/<:",
        '⊂' => "<<:",
        '⊄' => "/<<:",
        '∧' => "&",
        '∨' => "or",
        '¬' => "not",
        '⇒' => "=>",
        '⇔' => "<=>",
        '≠' => "/=",
        '≤' => "<=",
        '≥' => ">=",
        '∩' => "/\\",
        '∪' => "\\/",
        '∖' => "\\",
        '‥' => "..",
        '↦' => "|->",
        '↔' => "<->",
        '→' => "-->",
        '⇸' => "+->",
        '↣' => ">->",
        '⤔' => ">+>",
        '↠' => "->>",
        '⤀' => "+->>",
        '⤖' => ">->>",
        '⊕' | '\u{E103}' => "<+",
        '⩤' => "<<|",
        '◁' => "<|",
        '▷' => "|>",
        '⩥' => "|>>",
        '×' => "*",
        '÷' => "/",
        '−' => "-",
        '≔' => ":=",
        '≙' => "=",
        '∥' => "||",
        _ => return None,
    })
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    line_start: bool,
    opts: LexOptions,
    out: Vec<Spanned>,
}

/// Tokenizes `src`. The result always ends with [`Token::Eof`].
pub fn lex(src: &str, opts: LexOptions) -> Result<Vec<Spanned>, SyntaxError> {
    let mut lx = Lexer {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        line_start: true,
        opts,
        out: Vec::new(),
    };
    lx.run()?;
    Ok(lx.out)
}

fn is_ident_start(c: char) -> bool {
    c == '_' || (c.is_alphabetic() && !matches!(c, 'ℕ' | 'ℤ' | 'ℙ'))
}

fn is_ident_continue(c: char) -> bool {
    c == '_' || c.is_alphanumeric() && !matches!(c, 'ℕ' | 'ℤ' | 'ℙ' | '¹' | '₁')
}

impl Lexer {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
            self.line_start = true;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            column: self.column,
        }
    }

    fn push(&mut self, token: Token, span: Span) {
        self.out.push(Spanned { token, span });
        self.line_start = false;
    }

    fn starts_with(&self, s: &str) -> bool {
        let mut i = self.pos;
        for c in s.chars() {
            if self.chars.get(i) != Some(&c) {
                return false;
            }
            i += 1;
        }
        true
    }

    fn run(&mut self) -> Result<(), SyntaxError> {
        while let Some(c) = self.peek(0) {
            let span = self.span();
            if c.is_whitespace() {
                self.bump();
            } else if self.starts_with("//") {
                while let Some(c) = self.peek(0) {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if self.starts_with("/*") {
                self.block_comment(span)?;
            } else if c == '(' && self.line_start && self.opts.labels {
                if let Some(label) = self.try_label() {
                    self.push(Token::Label(label), span);
                } else {
                    self.bump();
                    self.push(Token::LParen, span);
                }
            } else if is_ident_start(c) {
                self.ident(span);
            } else if c.is_ascii_digit() {
                self.number(span)?;
            } else if c == '"' {
                self.string(span)?;
            } else if c == '?' {
                self.bump();
                match self.peek(0) {
                    Some(c) if is_ident_start(c) => {
                        let name = self.take_while(is_ident_continue);
                        self.push(Token::Var(name), span);
                    }
                    _ => return Err(SyntaxError::new(span.line, span.column, "expected variable name after '?'")),
                }
            } else {
                self.symbol(c, span)?;
            }
        }
        let span = self.span();
        self.push(Token::Eof, span);
        Ok(())
    }

    fn take_while(&mut self, pred: fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0) {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn block_comment(&mut self, span: Span) -> Result<(), SyntaxError> {
        let line_start = self.line_start;
        self.bump();
        self.bump();
        let directive = self.peek(0) == Some('@');
        if directive {
            self.bump();
        }
        let mut text = String::new();
        loop {
            if self.starts_with("*/") {
                self.bump();
                self.bump();
                break;
            }
            match self.bump() {
                Some(c) => text.push(c),
                None => return Err(SyntaxError::new(span.line, span.column, "unterminated comment")),
            }
        }
        if directive {
            self.push(Token::Directive(text.trim().to_string()), span);
        } else {
            self.line_start = line_start && self.line_start;
        }
        Ok(())
    }

    fn try_label(&mut self) -> Option<String> {
        let mut i = self.pos + 1;
        let mut label = String::new();
        while let Some(&c) = self.chars.get(i) {
            if c == ')' {
                break;
            }
            if !(c.is_alphanumeric() || c == '_' || c == '.') {
                return None;
            }
            label.push(c);
            i += 1;
        }
        if label.is_empty() || self.chars.get(i) != Some(&')') {
            return None;
        }
        if !label.chars().next().is_some_and(|c| c.is_alphanumeric()) {
            return None;
        }
        match self.chars.get(i + 1) {
            None => {}
            Some(c) if c.is_whitespace() => {}
            _ => return None,
        }
        for _ in self.pos..=i {
            self.bump();
        }
        Some(label)
    }

    fn ident(&mut self, span: Span) {
        let mut name = self.take_while(is_ident_continue);
        while self.peek(0) == Some('.') && self.peek(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            name.push('.');
            name.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if matches!(self.peek(0), Some('\'') | Some('′')) {
            self.bump();
            name.push('\'');
        }
        let token = match name.as_str() {
            "or" => Token::Op("or"),
            "not" => Token::Op("not"),
            "mod" => Token::Op("mod"),
            _ => Token::Ident(name),
        };
        self.push(token, span);
    }

    fn number(&mut self, span: Span) -> Result<(), SyntaxError> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        let n = digits
            .parse::<u64>()
            .map_err(|_| SyntaxError::new(span.line, span.column, "integer literal out of range"))?;
        self.push(Token::Num(n), span);
        Ok(())
    }

    fn string(&mut self, span: Span) -> Result<(), SyntaxError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\n') | None => {
                    return Err(SyntaxError::new(span.line, span.column, "unterminated string"))
                }
                Some(c) => s.push(c),
            }
        }
        self.push(Token::Str(s), span);
        Ok(())
    }

    fn symbol(&mut self, c: char, span: Span) -> Result<(), SyntaxError> {
        let simple = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            '{' => Some(Token::LBrace),
            '}' => Some(Token::RBrace),
            ',' => Some(Token::Comma),
            '·' | '•' => Some(Token::Dot),
            '∅' => Some(Token::EmptySet),
            '.' if self.peek(1) != Some('.') => Some(Token::Dot),
            _ => None,
        };
        if let Some(tok) = simple {
            self.bump();
            self.push(tok, span);
            return Ok(());
        }
        if c == '⁻' && self.peek(1) == Some('¹') {
            self.bump();
            self.bump();
            self.push(Token::Op("~"), span);
            return Ok(());
        }
        if matches!(c, 'ℕ' | 'ℤ' | 'ℙ') {
            self.bump();
            let one = matches!(self.peek(0), Some('1') | Some('₁'));
            if one && c != 'ℤ' {
                self.bump();
            }
            let name = match (c, one) {
                ('ℕ', false) => "NATURAL",
                ('ℕ', true) => "NATURAL1",
                ('ℙ', false) => "POW",
                ('ℙ', true) => "POW1",
                _ => "INTEGER",
            };
            self.push(Token::Ident(name.to_string()), span);
            return Ok(());
        }
        if let Some(op) = unicode_op(c) {
            self.bump();
            self.push(Token::Op(op), span);
            return Ok(());
        }
        if let Some(op) = OPS.iter().find(|op| self.starts_with(op)) {
            for _ in 0..op.chars().count() {
                self.bump();
            }
            self.push(Token::Op(op), span);
            return Ok(());
        }
        Err(SyntaxError::new(
            span.line,
            span.column,
            format!("unexpected character '{c}'"),
        ))
    }
}
