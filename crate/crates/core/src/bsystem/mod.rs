//! B System components: systems and refinements with their clauses.

mod classify;

use std::collections::BTreeSet;

use crate::formula::{BinOp, Formula};

pub use classify::{classify_formula, lookup_typing, ClassifyError, Environment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    System,
    Refinement { refines: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetDecl {
    Abstract {
        name: String,
        /// Text of a `/*@ ... */` directive attached to the set.
        annotation: Option<String>,
    },
    Enumerated {
        name: String,
        items: Vec<String>,
    },
}

impl SetDecl {
    pub fn abstract_set(name: impl Into<String>) -> Self {
        SetDecl::Abstract {
            name: name.into(),
            annotation: None,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            SetDecl::Abstract { name, .. } | SetDecl::Enumerated { name, .. } => name,
        }
    }

    pub fn items(&self) -> &[String] {
        match self {
            SetDecl::Abstract { .. } => &[],
            SetDecl::Enumerated { items, .. } => items,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    Property,
    Invariant,
    GluingInvariant,
    Theorem,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Operator {
    Inclusion,
    Belonging,
    BecEq2Set,
    Other(String),
}

/// Operator/operand view of a rule-generated formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    pub operator: Operator,
    pub operands: Vec<String>,
}

impl Structure {
    pub fn new(operator: Operator, operands: &[&str]) -> Self {
        Structure {
            operator,
            operands: operands.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicFormula {
    pub label: String,
    pub formula: Formula,
    /// Present on rule-generated formulas; parsed text never carries one.
    pub structure: Option<Structure>,
    pub classification: Classification,
}

impl LogicFormula {
    pub fn text(label: impl Into<String>, formula: Formula, classification: Classification) -> Self {
        LogicFormula {
            label: label.into(),
            formula,
            structure: None,
            classification,
        }
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.formula.free_names()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub label: String,
    pub target: String,
    pub value: Formula,
}

impl Substitution {
    /// The pairs of a `{a |-> b, ...}` value, or `None` for other values.
    pub fn maplets(&self) -> Option<Vec<(Formula, Formula)>> {
        maplet_pairs(&self.value)
    }
}

/// Splits a set literal of maplets into its pairs; `{}` has none.
pub fn maplet_pairs(value: &Formula) -> Option<Vec<(Formula, Formula)>> {
    match value {
        Formula::EmptySet => Some(Vec::new()),
        Formula::SetLit(items) => items
            .iter()
            .map(|i| match i {
                Formula::Binary {
                    op: BinOp::Maplet,
                    lhs,
                    rhs,
                } => Some(((**lhs).clone(), (**rhs).clone())),
                _ => None,
            })
            .collect(),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeled {
    pub label: String,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionKind {
    /// `target := value`
    Assign(Formula),
    /// `target :: set`
    BecomesIn(Formula),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub label: String,
    /// A variable name, or a function application `f(args)`.
    pub target: Formula,
    pub kind: ActionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EventStatus {
    #[default]
    Ordinary,
    Convergent,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Event {
    pub name: String,
    pub status: EventStatus,
    pub params: Vec<String>,
    pub guards: Vec<Labeled>,
    pub actions: Vec<Action>,
}

impl Event {
    pub fn empty(name: impl Into<String>) -> Self {
        Event {
            name: name.into(),
            ..Event::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
    pub sets: Vec<SetDecl>,
    pub constants: Vec<String>,
    pub variables: Vec<String>,
    pub properties: Vec<LogicFormula>,
    pub invariants: Vec<LogicFormula>,
    pub initialisation: Vec<Substitution>,
    pub events: Vec<Event>,
}

impl Component {
    pub fn new(name: impl Into<String>, kind: ComponentKind) -> Self {
        Component {
            name: name.into(),
            kind,
            sets: Vec::new(),
            constants: Vec::new(),
            variables: Vec::new(),
            properties: Vec::new(),
            invariants: Vec::new(),
            initialisation: Vec::new(),
            events: Vec::new(),
        }
    }

    pub fn refines(&self) -> Option<&str> {
        match &self.kind {
            ComponentKind::System => None,
            ComponentKind::Refinement { refines } => Some(refines),
        }
    }

    pub fn set(&self, name: &str) -> Option<&SetDecl> {
        self.sets.iter().find(|s| s.name() == name)
    }

    pub fn event(&self, name: &str) -> Option<&Event> {
        self.events.iter().find(|e| e.name == name)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &LogicFormula> {
        self.properties.iter().chain(&self.invariants)
    }

    /// Every set, set item, constant and variable name declared here.
    pub fn declared_names(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for s in &self.sets {
            out.push(s.name());
            out.extend(s.items().iter().map(String::as_str));
        }
        out.extend(self.constants.iter().map(String::as_str));
        out.extend(self.variables.iter().map(String::as_str));
        out
    }
}
