//! SysML/KAOS domain models: one ontology per refinement level.

mod scope;
mod validate;

use std::fmt;

use crate::formula::Formula;

pub use scope::{
    order_chain, resolve_scope, ElementKind, ScopeError, Symbol, SymbolTable, ValueOwner,
};
pub use validate::{validate, validate_chain, Rule, Violation};

/// Sets that exist in every model without declaration.
pub const DEFAULT_SETS: &[&str] = &["NATURAL", "NATURAL1", "INTEGER", "FLOAT", "STRING", "BOOL"];

pub fn is_default_set(name: &str) -> bool {
    DEFAULT_SETS.contains(&name)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DomainModel {
    pub name: String,
    pub parent: Option<String>,
    pub concepts: Vec<Concept>,
    pub relations: Vec<Relation>,
    pub attributes: Vec<Attribute>,
    pub data_sets: Vec<DataSet>,
    pub data_values: Vec<DataValue>,
    pub individuals: Vec<Individual>,
    pub relation_maplets: Vec<Maplet>,
    pub attribute_maplets: Vec<Maplet>,
    pub predicates: Vec<Predicate>,
    pub gluing_invariants: Vec<Predicate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub name: String,
    pub parent: Option<String>,
    pub is_variable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cardinality {
    pub min: u32,
    /// `None` is unbounded.
    pub max: Option<u32>,
}

impl Cardinality {
    pub const ANY: Cardinality = Cardinality { min: 0, max: None };

    pub fn new(min: u32, max: Option<u32>) -> Self {
        Cardinality { min, max }
    }

    pub fn exactly(n: u32) -> Self {
        Cardinality::new(n, Some(n))
    }

    pub fn is_any(&self) -> bool {
        *self == Cardinality::ANY
    }
}

impl Default for Cardinality {
    fn default() -> Self {
        Cardinality::ANY
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max {
            Some(max) => write!(f, "{}..{}", self.min, max),
            None => write!(f, "{}..*", self.min),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub domain: String,
    pub range: String,
    pub is_variable: bool,
    pub is_transitive: bool,
    pub is_symmetric: bool,
    pub is_asymmetric: bool,
    pub is_reflexive: bool,
    pub is_irreflexive: bool,
    /// Number of domain elements related to one range element.
    pub domain_cardinality: Cardinality,
    /// Number of range elements related to one domain element.
    pub range_cardinality: Cardinality,
}

impl Relation {
    pub fn new(name: impl Into<String>, domain: impl Into<String>, range: impl Into<String>) -> Self {
        Relation {
            name: name.into(),
            domain: domain.into(),
            range: range.into(),
            is_variable: false,
            is_transitive: false,
            is_symmetric: false,
            is_asymmetric: false,
            is_reflexive: false,
            is_irreflexive: false,
            domain_cardinality: Cardinality::ANY,
            range_cardinality: Cardinality::ANY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttributeRange {
    /// A set name or derived-set expression.
    Expr(Formula),
    /// Inline enumeration; translated to an auto-named enumerated set.
    Enumeration(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub domain: Formula,
    pub range: AttributeRange,
    pub is_variable: bool,
    pub is_functional: bool,
    pub is_total: bool,
}

impl Attribute {
    /// The domain concept when the domain is a plain name.
    pub fn domain_name(&self) -> Option<&str> {
        self.domain.as_ident()
    }

    pub fn range_name(&self) -> Option<&str> {
        match &self.range {
            AttributeRange::Expr(f) => f.as_ident(),
            AttributeRange::Enumeration(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSetKind {
    Enumerated(Vec<String>),
    Custom { defined_by: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataSet {
    pub name: String,
    pub kind: DataSetKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub name: String,
    pub concept: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataValue {
    pub name: String,
    pub value_of: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maplet {
    pub owner: String,
    pub antecedent: String,
    pub image: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Str(String),
    Name(String),
}

impl Term {
    fn to_formula(&self) -> Formula {
        match self {
            Term::Var(n) | Term::Str(n) | Term::Name(n) => Formula::Ident(n.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub symbol: String,
    pub args: Vec<Term>,
}

impl Atom {
    /// `C(x)` reads as membership, anything wider as application.
    pub fn to_formula(&self) -> Formula {
        match self.args.as_slice() {
            [single] => Formula::binary(
                crate::formula::BinOp::In,
                single.to_formula(),
                Formula::Ident(self.symbol.clone()),
            ),
            args => Formula::app(self.symbol.clone(), args.iter().map(Term::to_formula).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornClause {
    pub head: Vec<Atom>,
    pub body: Vec<Atom>,
}

impl HornClause {
    /// Variables in order of first appearance, head first.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for atom in self.head.iter().chain(&self.body) {
            for arg in &atom.args {
                if let Term::Var(v) = arg {
                    if !vars.contains(v) {
                        vars.push(v.clone());
                    }
                }
            }
        }
        vars
    }

    pub fn to_formula(&self) -> Formula {
        let conj = |atoms: &[Atom]| Formula::conjunction(atoms.iter().map(Atom::to_formula));
        Formula::forall(
            self.variables(),
            Formula::implies(conj(&self.body), conj(&self.head)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateBody {
    Plain(Formula),
    Horn(HornClause),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub id: String,
    pub body: PredicateBody,
}

impl Predicate {
    pub fn plain(id: impl Into<String>, formula: Formula) -> Self {
        Predicate {
            id: id.into(),
            body: PredicateBody::Plain(formula),
        }
    }

    pub fn formula(&self) -> Formula {
        match &self.body {
            PredicateBody::Plain(f) => f.clone(),
            PredicateBody::Horn(h) => h.to_formula(),
        }
    }
}

impl DomainModel {
    pub fn new(name: impl Into<String>) -> Self {
        DomainModel {
            name: name.into(),
            ..DomainModel::default()
        }
    }

    pub fn concept(&self, name: &str) -> Option<&Concept> {
        self.concepts.iter().find(|c| c.name == name)
    }

    pub fn data_set(&self, name: &str) -> Option<&DataSet> {
        self.data_sets.iter().find(|d| d.name == name)
    }

    /// Every declared element name with its kind, in declaration order.
    pub fn declared_names(&self) -> Vec<(&str, ElementKind)> {
        let mut out = Vec::new();
        out.extend(self.concepts.iter().map(|c| (c.name.as_str(), ElementKind::Concept)));
        out.extend(self.relations.iter().map(|r| (r.name.as_str(), ElementKind::Relation)));
        out.extend(self.attributes.iter().map(|a| (a.name.as_str(), ElementKind::Attribute)));
        for ds in &self.data_sets {
            out.push((ds.name.as_str(), ElementKind::DataSet));
            if let DataSetKind::Enumerated(items) = &ds.kind {
                out.extend(items.iter().map(|i| (i.as_str(), ElementKind::DataValue)));
            }
        }
        for at in &self.attributes {
            if let AttributeRange::Enumeration(items) = &at.range {
                out.extend(items.iter().map(|i| (i.as_str(), ElementKind::DataValue)));
            }
        }
        out.extend(self.data_values.iter().map(|d| (d.name.as_str(), ElementKind::DataValue)));
        out.extend(self.individuals.iter().map(|i| (i.name.as_str(), ElementKind::Individual)));
        out
    }

    pub fn all_predicates(&self) -> impl Iterator<Item = &Predicate> {
        self.predicates.iter().chain(&self.gluing_invariants)
    }
}
