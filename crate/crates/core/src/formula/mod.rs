//! Set-theoretic formula language shared by the three file formats.
//!
//! One AST covers both predicates and expressions, as in the B notation the
//! formats are built on. The parser accepts ASCII and Unicode spellings; the
//! printer emits either, ASCII being canonical.

mod lexer;
mod parser;
mod printer;

use std::collections::BTreeSet;

pub use lexer::{lex, LexOptions, Span, Spanned, Token};
pub use parser::{parse_formula, Cursor};
pub use printer::{render, RenderMode};

use crate::error::SyntaxError;

/// Relation-type constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Relation,
    TotalFunction,
    PartialFunction,
    TotalInjection,
    PartialInjection,
    TotalSurjection,
    PartialSurjection,
    Bijection,
}

impl Arrow {
    pub const ALL: [Arrow; 8] = [
        Arrow::Relation,
        Arrow::TotalFunction,
        Arrow::PartialFunction,
        Arrow::TotalInjection,
        Arrow::PartialInjection,
        Arrow::TotalSurjection,
        Arrow::PartialSurjection,
        Arrow::Bijection,
    ];

    pub fn ascii(self) -> &'static str {
        match self {
            Arrow::Relation => "<->",
            Arrow::TotalFunction => "-->",
            Arrow::PartialFunction => "+->",
            Arrow::TotalInjection => ">->",
            Arrow::PartialInjection => ">+>",
            Arrow::TotalSurjection => "->>",
            Arrow::PartialSurjection => "+->>",
            Arrow::Bijection => ">->>",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            Arrow::Relation => "↔",
            Arrow::TotalFunction => "→",
            Arrow::PartialFunction => "⇸",
            Arrow::TotalInjection => "↣",
            Arrow::PartialInjection => "⤔",
            Arrow::TotalSurjection => "↠",
            Arrow::PartialSurjection => "⤀",
            Arrow::Bijection => "⤖",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    ForAll,
    Exists,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Equiv,
    Implies,
    Or,
    And,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    In,
    NotIn,
    Subset,
    NotSubset,
    StrictSubset,
    NotStrictSubset,
    Arrow(Arrow),
    Maplet,
    Inter,
    Union,
    SetMinus,
    Override,
    DomRes,
    DomSub,
    RanRes,
    RanSub,
    Compose,
    Range,
    Plus,
    Minus,
    Times,
    Div,
    Mod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Assoc {
    Left,
    None,
}

impl BinOp {
    pub const ALL: [BinOp; 32] = [
        BinOp::Equiv,
        BinOp::Implies,
        BinOp::Or,
        BinOp::And,
        BinOp::Eq,
        BinOp::Neq,
        BinOp::Lt,
        BinOp::Le,
        BinOp::Gt,
        BinOp::Ge,
        BinOp::In,
        BinOp::NotIn,
        BinOp::Subset,
        BinOp::NotSubset,
        BinOp::StrictSubset,
        BinOp::NotStrictSubset,
        BinOp::Maplet,
        BinOp::Inter,
        BinOp::Union,
        BinOp::SetMinus,
        BinOp::Override,
        BinOp::DomRes,
        BinOp::DomSub,
        BinOp::RanRes,
        BinOp::RanSub,
        BinOp::Compose,
        BinOp::Range,
        BinOp::Plus,
        BinOp::Minus,
        BinOp::Times,
        BinOp::Div,
        BinOp::Mod,
    ];

    pub(crate) fn precedence(self) -> u8 {
        match self {
            BinOp::Equiv => 1,
            BinOp::Implies => 2,
            BinOp::Or => 3,
            BinOp::And => 4,
            BinOp::Eq
            | BinOp::Neq
            | BinOp::Lt
            | BinOp::Le
            | BinOp::Gt
            | BinOp::Ge
            | BinOp::In
            | BinOp::NotIn
            | BinOp::Subset
            | BinOp::NotSubset
            | BinOp::StrictSubset
            | BinOp::NotStrictSubset => 6,
            BinOp::Arrow(_) => 7,
            BinOp::Maplet => 8,
            BinOp::Inter
            | BinOp::Union
            | BinOp::SetMinus
            | BinOp::Override
            | BinOp::DomRes
            | BinOp::DomSub
            | BinOp::RanRes
            | BinOp::RanSub
            | BinOp::Compose => 9,
            BinOp::Range => 10,
            BinOp::Plus | BinOp::Minus => 11,
            BinOp::Times | BinOp::Div | BinOp::Mod => 12,
        }
    }

    pub(crate) fn assoc(self) -> Assoc {
        match self.precedence() {
            6 | 10 => Assoc::None,
            _ => Assoc::Left,
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            BinOp::Equiv => "<=>",
            BinOp::Implies => "=>",
            BinOp::Or => "or",
            BinOp::And => "&",
            BinOp::Eq => "=",
            BinOp::Neq => "/=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::In => ":",
            BinOp::NotIn => "/:",
            BinOp::Subset => "<:",
            BinOp::NotSubset => "/<:",
            BinOp::StrictSubset => "<<:",
            BinOp::NotStrictSubset => "/<<:",
            BinOp::Arrow(a) => a.ascii(),
            BinOp::Maplet => "|->",
            BinOp::Inter => "/\\",
            BinOp::Union => "\\/",
            BinOp::SetMinus => "\\",
            BinOp::Override => "<+",
            BinOp::DomRes => "<|",
            BinOp::DomSub => "<<|",
            BinOp::RanRes => "|>",
            BinOp::RanSub => "|>>",
            BinOp::Compose => ";",
            BinOp::Range => "..",
            BinOp::Plus => "+",
            BinOp::Minus => "-",
            BinOp::Times => "*",
            BinOp::Div => "/",
            BinOp::Mod => "mod",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            BinOp::Equiv => "⇔",
            BinOp::Implies => "⇒",
            BinOp::Or => "∨",
            BinOp::And => "∧",
            BinOp::Neq => "≠",
            BinOp::Le => "≤",
            BinOp::Ge => "≥",
            BinOp::In => "∈",
            BinOp::NotIn => "∉",
            BinOp::Subset => "⊆",
            BinOp::NotSubset => "⊈",
            BinOp::StrictSubset => "⊂",
            BinOp::NotStrictSubset => "⊄",
            BinOp::Arrow(a) => a.unicode(),
            BinOp::Maplet => "↦",
            BinOp::Inter => "∩",
            BinOp::Union => "∪",
            BinOp::SetMinus => "∖",
            BinOp::Override => "⊕",
            BinOp::DomRes => "◁",
            BinOp::DomSub => "⩤",
            BinOp::RanRes => "▷",
            BinOp::RanSub => "⩥",
            BinOp::Range => "‥",
            BinOp::Times => "×",
            BinOp::Div => "÷",
            other => other.ascii(),
        }
    }

    pub(crate) fn from_ascii(tok: &str) -> Option<BinOp> {
        if let Some(a) = Arrow::ALL.iter().find(|a| a.ascii() == tok) {
            return Some(BinOp::Arrow(*a));
        }
        BinOp::ALL.iter().copied().find(|op| op.ascii() == tok)
    }
}

/// Formula AST node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// Identifier; a trailing `'` marks an after-state name.
    Ident(String),
    Num(u64),
    /// The always-true predicate (`btrue`).
    Truth,
    EmptySet,
    SetLit(Vec<Formula>),
    Quant {
        quantifier: Quantifier,
        vars: Vec<String>,
        body: Box<Formula>,
    },
    Not(Box<Formula>),
    Neg(Box<Formula>),
    Binary {
        op: BinOp,
        lhs: Box<Formula>,
        rhs: Box<Formula>,
    },
    App {
        func: Box<Formula>,
        args: Vec<Formula>,
    },
    Image {
        rel: Box<Formula>,
        set: Box<Formula>,
    },
    Inverse(Box<Formula>),
}

/// Names with fixed meaning in the notation; never resolved against a scope.
pub const BUILTINS: &[&str] = &[
    "dom", "ran", "card", "union", "inter", "POW", "POW1", "FIN", "FIN1", "id", "bool", "min",
    "max", "prj1", "prj2", "succ", "pred", "closure", "closure1", "iseq", "seq", "size",
    "NATURAL", "NATURAL1", "NAT", "NAT1", "INTEGER", "INT", "BOOL", "STRING", "FLOAT", "TRUE",
    "FALSE", "btrue", "bfalse",
];

pub fn is_builtin(name: &str) -> bool {
    BUILTINS.contains(&name)
}

/// Removes the after-state marker from an identifier.
pub fn unprimed(name: &str) -> &str {
    name.strip_suffix('\'').unwrap_or(name)
}

impl Formula {
    pub fn ident(name: impl Into<String>) -> Formula {
        Formula::Ident(name.into())
    }

    pub fn binary(op: BinOp, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn app(func: impl Into<String>, args: Vec<Formula>) -> Formula {
        Formula::App {
            func: Box::new(Formula::Ident(func.into())),
            args,
        }
    }

    pub fn forall(vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            return body;
        }
        Formula::Quant {
            quantifier: Quantifier::ForAll,
            vars,
            body: Box::new(body),
        }
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::binary(BinOp::Implies, lhs, rhs)
    }

    /// Left-nested conjunction; `Truth` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(|acc, f| Formula::binary(BinOp::And, acc, f))
            .unwrap_or(Formula::Truth)
    }

    pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
        parse_formula(text)
    }

    pub fn to_ascii(&self) -> String {
        render(self, RenderMode::Ascii)
    }

    /// Free identifiers, excluding builtins and quantified variables, with
    /// after-state markers stripped.
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_names(&mut bound, &mut out);
        out
    }

    fn collect_names(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Ident(name) => {
                let base = unprimed(name);
                if !is_builtin(base) && !bound.iter().any(|b| b == base) {
                    out.insert(base.to_string());
                }
            }
            Formula::Num(_) | Formula::Truth | Formula::EmptySet => {}
            Formula::SetLit(items) => items.iter().for_each(|i| i.collect_names(bound, out)),
            Formula::Quant { vars, body, .. } => {
                let depth = bound.len();
                bound.extend(vars.iter().cloned());
                body.collect_names(bound, out);
                bound.truncate(depth);
            }
            Formula::Not(f) | Formula::Neg(f) | Formula::Inverse(f) => f.collect_names(bound, out),
            Formula::Binary { lhs, rhs, .. } => {
                lhs.collect_names(bound, out);
                rhs.collect_names(bound, out);
            }
            Formula::App { func, args } => {
                func.collect_names(bound, out);
                args.iter().for_each(|a| a.collect_names(bound, out));
            }
            Formula::Image { rel, set } => {
                rel.collect_names(bound, out);
                set.collect_names(bound, out);
            }
        }
    }

    /// Renames free occurrences of identifiers through `map`.
    pub fn rename(&self, map: &dyn Fn(&str) -> Option<String>) -> Formula {
        self.rename_inner(map, &mut Vec::new())
    }

    fn rename_inner(&self, map: &dyn Fn(&str) -> Option<String>, bound: &mut Vec<String>) -> Formula {
        let rec = |f: &Formula, bound: &mut Vec<String>| Box::new(f.rename_inner(map, bound));
        match self {
            Formula::Ident(name) => {
                if bound.iter().any(|b| b == name) {
                    return self.clone();
                }
                match map(name) {
                    Some(new) => Formula::Ident(new),
                    None => self.clone(),
                }
            }
            Formula::Num(_) | Formula::Truth | Formula::EmptySet => self.clone(),
            Formula::SetLit(items) => {
                Formula::SetLit(items.iter().map(|i| i.rename_inner(map, bound)).collect())
            }
            Formula::Quant {
                quantifier,
                vars,
                body,
            } => {
                let depth = bound.len();
                bound.extend(vars.iter().cloned());
                let body = rec(body, bound);
                bound.truncate(depth);
                Formula::Quant {
                    quantifier: *quantifier,
                    vars: vars.clone(),
                    body,
                }
            }
            Formula::Not(f) => Formula::Not(rec(f, bound)),
            Formula::Neg(f) => Formula::Neg(rec(f, bound)),
            Formula::Inverse(f) => Formula::Inverse(rec(f, bound)),
            Formula::Binary { op, lhs, rhs } => Formula::Binary {
                op: *op,
                lhs: rec(lhs, bound),
                rhs: rec(rhs, bound),
            },
            Formula::App { func, args } => Formula::App {
                func: rec(func, bound),
                args: args.iter().map(|a| a.rename_inner(map, bound)).collect(),
            },
            Formula::Image { rel, set } => Formula::Image {
                rel: rec(rel, bound),
                set: rec(set, bound),
            },
        }
    }

    /// Splits a left-nested conjunction into its conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::Binary {
                op: BinOp::And,
                lhs,
                rhs,
            } => {
                let mut v = lhs.conjuncts();
                v.push(rhs);
                v
            }
            other => vec![other],
        }
    }

    pub fn as_ident(&self) -> Option<&str> {
        match self {
            Formula::Ident(n) => Some(n),
            _ => None,
        }
    }
}
