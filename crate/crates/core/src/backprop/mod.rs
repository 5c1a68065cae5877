//! Propagates additions made to a generated B System component back into
//! the domain model it came from.

mod diff;

use std::fmt;

use thiserror::Error;

use crate::bsystem::{maplet_pairs, LogicFormula, SetDecl, Substitution};
use crate::domain_model::{
    is_default_set, validate_chain, Attribute, AttributeRange, Cardinality, Concept, DataSet,
    DataSetKind, DataValue, DomainModel, Individual, Maplet, Predicate, Relation, ScopeError,
    Violation,
};
use crate::formula::{Arrow, BinOp, Formula};
use crate::translate::{
    qualify, unqualify, CorrespondenceTrace, TraceError, TraceKind, TraceRecord,
};

pub use diff::diff_component;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdditionKind {
    NewAbstractSet,
    NewEnumeratedSet,
    NewSetItem,
    NewConstant,
    NewVariable,
    NewFormula,
    NewSubstitution,
}

impl fmt::Display for AdditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdditionKind::NewAbstractSet => "abstract set",
            AdditionKind::NewEnumeratedSet => "enumerated set",
            AdditionKind::NewSetItem => "set item",
            AdditionKind::NewConstant => "constant",
            AdditionKind::NewVariable => "variable",
            AdditionKind::NewFormula => "formula",
            AdditionKind::NewSubstitution => "substitution",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Set(SetDecl),
    SetItem { set: String, item: String },
    Constant(String),
    Variable(String),
    Formula(LogicFormula),
    Substitution(Substitution),
}

/// How a new constant or variable is typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Typing {
    /// `X <: Y`
    Inclusion { of: String },
    /// `X : Y`
    Belonging { of: String },
    /// `X : A arrow B`, or `T = A arrow B` with `X : T`.
    Arrow {
        type_constant: Option<String>,
        arrow: Arrow,
        domain: Formula,
        range: Formula,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Addition {
    pub kind: AdditionKind,
    pub payload: Payload,
    /// The matched pattern and the formulas it consumed.
    pub typing: Option<(Typing, Vec<LogicFormula>)>,
}

impl fmt::Display for Addition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Set(s) => write!(f, "{} {}", self.kind, s.name()),
            Payload::SetItem { set, item } => write!(f, "set item {item} of {set}"),
            Payload::Constant(n) | Payload::Variable(n) => write!(f, "{} {n}", self.kind),
            Payload::Formula(lf) => write!(f, "formula ({}) {}", lf.label, lf.formula.to_ascii()),
            Payload::Substitution(s) => {
                write!(f, "substitution {} := {}", s.target, s.value.to_ascii())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleId {
    Rule101,
    Rule102,
    Rule103,
    Rule104,
    Rule105,
    Rule106,
    Rule107,
    Rule108,
    Attribute,
    Relation,
    Predicate,
    Maplet,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleId::Rule101 => "rule_101",
            RuleId::Rule102 => "rule_102",
            RuleId::Rule103 => "rule_103",
            RuleId::Rule104 => "rule_104",
            RuleId::Rule105 => "rule_105",
            RuleId::Rule106 => "rule_106",
            RuleId::Rule107 => "rule_107",
            RuleId::Rule108 => "rule_108",
            RuleId::Attribute => "r3",
            RuleId::Relation => "r4",
            RuleId::Predicate => "predicate",
            RuleId::Maplet => "maplet",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaOp {
    AddConcept(Concept),
    AddDataSet(DataSet),
    AddEnumeratedItem { set: String, item: String },
    AddAttributeItem { attribute: String, item: String },
    AddIndividual(Individual),
    AddDataValue(DataValue),
    SetConceptVariable { concept: String },
    AddAttribute(Attribute),
    AddRelation(Relation),
    AddPredicate(Predicate),
    AddMaplet(Maplet),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DomainDelta {
    /// The model receiving every operation.
    pub model: String,
    pub ops: Vec<(RuleId, DeltaOp)>,
    /// Correspondences of the added elements.
    pub trace: Vec<TraceRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackpropError {
    #[error("{component}: unsupported edit: {what}")]
    UnsupportedEdit { component: String, what: String },
    #[error("name {name} is introduced twice or already in use")]
    NameClash { name: String },
    #[error("no rule for {addition}: {reason}")]
    NoMatchingRule { addition: String, reason: String },
    #[error("several typing formulas for {element}: {}", candidates.join("; "))]
    AmbiguousPattern {
        element: String,
        candidates: Vec<String>,
    },
    #[error("component {0} has no domain model in the trace")]
    UnknownComponent(String),
    #[error("the updated model does not validate:\n{}", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid { violations: Vec<Violation> },
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// Domain element behind a B name visible from the edited component.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Target {
    Concept(String),
    DataSet(String),
    AnonymousSet(String),
    Default(String),
    Other,
    Unknown,
}

struct Ctx<'a> {
    chain: &'a [DomainModel],
    level: usize,
    component: String,
    trace: CorrespondenceTrace,
    delta: DomainDelta,
    working: DomainModel,
    fresh_label: usize,
}

fn no_rule(a: &Addition, reason: impl Into<String>) -> BackpropError {
    BackpropError::NoMatchingRule {
        addition: a.to_string(),
        reason: reason.into(),
    }
}

/// Inverse of the relation arrow ladder: range side, then domain side.
pub fn arrow_cardinalities(arrow: Arrow) -> (Cardinality, Cardinality) {
    let c = Cardinality::new;
    let one = Some(1);
    match arrow {
        Arrow::Bijection => (c(1, one), c(1, one)),
        Arrow::TotalInjection => (c(1, one), c(0, one)),
        Arrow::TotalSurjection => (c(1, one), c(1, None)),
        Arrow::PartialSurjection => (c(0, one), c(1, None)),
        Arrow::PartialInjection => (c(0, one), c(0, one)),
        Arrow::TotalFunction => (c(1, one), Cardinality::ANY),
        Arrow::PartialFunction => (c(0, one), Cardinality::ANY),
        Arrow::Relation => (Cardinality::ANY, Cardinality::ANY),
    }
}

fn is_translation_label(label: &str) -> bool {
    match label.split_once('.') {
        Some((a, b)) => {
            !a.is_empty()
                && !b.is_empty()
                && a.chars().all(|c| c.is_ascii_digit())
                && b.chars().all(|c| c.is_ascii_digit())
        }
        None => false,
    }
}

impl Ctx<'_> {
    fn components(&self) -> Vec<String> {
        self.chain[..=self.level]
            .iter()
            .filter_map(|m| self.trace.get(TraceKind::DomainModelComponent, &m.name))
            .map(str::to_string)
            .collect()
    }

    fn resolve(&self, b: &str) -> Target {
        if is_default_set(b) {
            return Target::Default(b.to_string());
        }
        for comp in self.components().iter().rev() {
            if let Some((kind, domain)) = self.trace.lookup_b(&qualify(comp, b)) {
                let name = unqualify(domain).1;
                return match kind {
                    TraceKind::ConceptAbstractSet | TraceKind::ConceptConstant => {
                        Target::Concept(name.to_string())
                    }
                    TraceKind::DataSetSet | TraceKind::DataSetConstant => {
                        match name.strip_suffix("#range") {
                            Some(attr) => Target::AnonymousSet(attr.to_string()),
                            None => Target::DataSet(name.to_string()),
                        }
                    }
                    _ => Target::Other,
                };
            }
        }
        Target::Unknown
    }

    fn record(&mut self, kind: TraceKind, domain: &str, b: &str) -> Result<(), BackpropError> {
        let d = qualify(&self.working.name, domain);
        let b = qualify(&self.component, b);
        self.trace.insert(kind, d.clone(), b.clone())?;
        self.delta.trace.push(TraceRecord { kind, domain: d, b });
        Ok(())
    }

    fn op(&mut self, rule: RuleId, op: DeltaOp) {
        apply_op(&mut self.working, &op);
        self.delta.ops.push((rule, op));
    }

    fn set(&mut self, a: &Addition, s: &SetDecl) -> Result<(), BackpropError> {
        match s {
            SetDecl::Abstract { name, annotation } => {
                if annotation.as_deref().is_some_and(|t| t.trim() == "dataset") {
                    self.op(
                        RuleId::Rule102,
                        DeltaOp::AddDataSet(DataSet {
                            name: name.clone(),
                            kind: DataSetKind::Custom { defined_by: None },
                        }),
                    );
                    self.record(TraceKind::DataSetSet, name, name)
                } else if annotation.is_some() {
                    Err(no_rule(a, "unknown annotation"))
                } else {
                    self.op(
                        RuleId::Rule101,
                        DeltaOp::AddConcept(Concept {
                            name: name.clone(),
                            parent: None,
                            is_variable: false,
                        }),
                    );
                    self.record(TraceKind::ConceptAbstractSet, name, name)
                }
            }
            SetDecl::Enumerated { name, items } => {
                self.op(
                    RuleId::Rule103,
                    DeltaOp::AddDataSet(DataSet {
                        name: name.clone(),
                        kind: DataSetKind::Enumerated(items.clone()),
                    }),
                );
                self.record(TraceKind::DataSetSet, name, name)?;
                for i in items {
                    self.record(TraceKind::DataValueSetItem, i, i)?;
                }
                Ok(())
            }
        }
    }

    fn set_item(&mut self, a: &Addition, set: &str, item: &str) -> Result<(), BackpropError> {
        let op = match self.resolve(set) {
            Target::DataSet(ds) if self.working.data_set(&ds).is_some() => DeltaOp::AddEnumeratedItem {
                set: ds,
                item: item.to_string(),
            },
            Target::AnonymousSet(attr) => {
                let attribute = unqualify(&attr).1.to_string();
                if !self.working.attributes.iter().any(|x| x.name == attribute) {
                    return Err(no_rule(a, format!("{set} belongs to another level")));
                }
                DeltaOp::AddAttributeItem {
                    attribute,
                    item: item.to_string(),
                }
            }
            _ => return Err(no_rule(a, format!("{set} is not an enumerated data set of this level"))),
        };
        self.op(RuleId::Rule104, op);
        self.record(TraceKind::DataValueSetItem, item, item)
    }

    fn element(&mut self, a: &Addition, name: &str, variable: bool, typing: &Typing) -> Result<(), BackpropError> {
        match typing {
            Typing::Inclusion { of } => match (self.resolve(of), variable) {
                (Target::Concept(c), false) => {
                    self.op(
                        RuleId::Rule105,
                        DeltaOp::AddConcept(Concept {
                            name: name.to_string(),
                            parent: Some(c),
                            is_variable: false,
                        }),
                    );
                    self.record(TraceKind::ConceptConstant, name, name)
                }
                (Target::Concept(c), true) => {
                    let Some(concept) = self.working.concept(&c) else {
                        return Err(no_rule(a, format!("concept {c} is declared at another level")));
                    };
                    if concept.is_variable {
                        return Err(no_rule(a, format!("concept {c} is already variable")));
                    }
                    self.op(RuleId::Rule108, DeltaOp::SetConceptVariable { concept: c.clone() });
                    self.record(TraceKind::ConceptVariable, &c, name)
                }
                _ => Err(no_rule(a, format!("{of} is not a concept"))),
            },
            Typing::Belonging { of } => {
                if variable {
                    return Err(no_rule(a, "a variable typed by membership"));
                }
                match self.resolve(of) {
                    Target::Concept(c) => {
                        self.op(
                            RuleId::Rule106,
                            DeltaOp::AddIndividual(Individual {
                                name: name.to_string(),
                                concept: c,
                            }),
                        );
                        self.record(TraceKind::IndividualConstant, name, name)
                    }
                    Target::Default(ds) => self.data_value(name, ds),
                    Target::DataSet(ds) => {
                        let custom = self
                            .chain
                            .iter()
                            .chain(std::iter::once(&self.working))
                            .filter_map(|m| m.data_set(&ds))
                            .any(|d| matches!(d.kind, DataSetKind::Custom { .. }));
                        if !custom {
                            return Err(no_rule(a, format!("{of} is enumerated; add the item to the set")));
                        }
                        self.data_value(name, ds)
                    }
                    _ => Err(no_rule(a, format!("{of} has no concept or data set correspondent"))),
                }
            }
            Typing::Arrow {
                type_constant,
                arrow,
                domain,
                range,
            } => {
                let range_target = match range.as_ident() {
                    Some(r) => self.resolve(r),
                    None => Target::Other,
                };
                if let Target::Concept(ran) = range_target {
                    let Some(Target::Concept(dom)) = domain.as_ident().map(|d| self.resolve(d)) else {
                        return Err(no_rule(a, "relation domain is not a concept"));
                    };
                    let (rc, dc) = arrow_cardinalities(*arrow);
                    let mut re = Relation::new(name, dom, ran);
                    re.is_variable = variable;
                    re.range_cardinality = rc;
                    re.domain_cardinality = dc;
                    self.op(RuleId::Relation, DeltaOp::AddRelation(re));
                    if let Some(t) = type_constant {
                        self.record(TraceKind::RelationTypeConstant, name, t)?;
                    }
                    return self.record(TraceKind::RelationElement, name, name);
                }
                let range_ok = match range_target {
                    Target::DataSet(_) | Target::Default(_) => true,
                    Target::Other => range
                        .free_names()
                        .iter()
                        .all(|n| !matches!(self.resolve(n), Target::Unknown | Target::AnonymousSet(_))),
                    _ => false,
                };
                if !range_ok {
                    return Err(no_rule(a, format!("range {} has no data set correspondent", range.to_ascii())));
                }
                let (is_functional, is_total) = match arrow {
                    Arrow::TotalFunction => (true, true),
                    Arrow::PartialFunction => (true, false),
                    Arrow::Relation => (false, false),
                    other => return Err(no_rule(a, format!("attributes cannot be typed with {}", other.ascii()))),
                };
                self.op(
                    RuleId::Attribute,
                    DeltaOp::AddAttribute(Attribute {
                        name: name.to_string(),
                        domain: domain.clone(),
                        range: AttributeRange::Expr(range.clone()),
                        is_variable: variable,
                        is_functional,
                        is_total,
                    }),
                );
                if let Some(t) = type_constant {
                    self.record(TraceKind::AttributeTypeConstant, name, t)?;
                }
                self.record(TraceKind::AttributeElement, name, name)
            }
        }
    }

    fn data_value(&mut self, name: &str, set: String) -> Result<(), BackpropError> {
        self.op(
            RuleId::Rule107,
            DeltaOp::AddDataValue(DataValue {
                name: name.to_string(),
                value_of: set,
            }),
        );
        self.record(TraceKind::DataValueConstant, name, name)
    }

    /// Owner of maplets for `name` when it was added in this delta.
    fn maplet_owner(&self, name: &str, variable: bool) -> Option<bool> {
        self.delta.ops.iter().find_map(|(_, op)| match op {
            DeltaOp::AddRelation(r) if r.name == name && r.is_variable == variable => Some(true),
            DeltaOp::AddAttribute(at) if at.name == name && at.is_variable == variable => Some(false),
            _ => None,
        })
    }

    fn maplets(&mut self, a: &Addition, owner: &str, value: &Formula) -> Result<(), BackpropError> {
        let Some(pairs) = maplet_pairs(value) else {
            return Err(no_rule(a, "value is not a set of maplets"));
        };
        let owner_exists_with_maplets = self
            .working
            .relation_maplets
            .iter()
            .chain(&self.working.attribute_maplets)
            .any(|m| m.owner == owner);
        if owner_exists_with_maplets {
            return Err(no_rule(a, format!("{owner} already has maplets")));
        }
        for (l, r) in pairs {
            let Some(antecedent) = l.as_ident() else {
                return Err(no_rule(a, "maplet antecedent is not a name"));
            };
            self.op(
                RuleId::Maplet,
                DeltaOp::AddMaplet(Maplet {
                    owner: owner.to_string(),
                    antecedent: antecedent.to_string(),
                    image: r,
                }),
            );
        }
        Ok(())
    }

    fn formula(&mut self, a: &Addition, lf: &LogicFormula) -> Result<(), BackpropError> {
        if lf.classification == crate::bsystem::Classification::Theorem {
            return Err(no_rule(a, "theorems are produced from the goal model"));
        }
        if let Formula::Binary {
            op: BinOp::Eq,
            lhs,
            rhs,
        } = &lf.formula
        {
            if let Some(owner) = lhs.as_ident() {
                if self.maplet_owner(owner, false).is_some() {
                    return self.maplets(a, owner, rhs);
                }
            }
        }
        let id = if lf.label.is_empty() || is_translation_label(&lf.label) {
            loop {
                self.fresh_label += 1;
                let id = format!("bp{}.{}", self.level, self.fresh_label);
                let taken = self
                    .chain
                    .iter()
                    .chain(std::iter::once(&self.working))
                    .flat_map(|m| m.all_predicates())
                    .any(|p| p.id == id);
                if !taken {
                    break id;
                }
            }
        } else {
            lf.label.clone()
        };
        self.op(RuleId::Predicate, DeltaOp::AddPredicate(Predicate::plain(id.clone(), lf.formula.clone())));
        self.record(TraceKind::PredicateLogicFormula, &id, &id)
    }

    fn substitution(&mut self, a: &Addition, s: &Substitution) -> Result<(), BackpropError> {
        if self.maplet_owner(&s.target, true).is_some() {
            return self.maplets(a, &s.target, &s.value);
        }
        // The extent of a concept made variable in this delta.
        let concept = self.delta.trace.iter().find_map(|r| {
            (r.kind == TraceKind::ConceptVariable && unqualify(&r.b).1 == s.target)
                .then(|| unqualify(&r.domain).1.to_string())
        });
        if let Some(c) = concept {
            let mut members: Vec<String> = self
                .working
                .individuals
                .iter()
                .filter(|i| i.concept == c)
                .map(|i| i.name.clone())
                .collect();
            let mut given: Vec<String> = match &s.value {
                Formula::EmptySet => Vec::new(),
                Formula::SetLit(items) => items
                    .iter()
                    .filter_map(|i| i.as_ident().map(str::to_string))
                    .collect(),
                _ => return Err(no_rule(a, "extent is not a set of names")),
            };
            members.sort();
            given.sort();
            if members == given {
                return Ok(());
            }
            return Err(no_rule(a, format!("the extent must list the individuals of {c}")));
        }
        Err(no_rule(a, "only maplet initialisations of new elements are supported"))
    }
}

fn rank(a: &Addition) -> u8 {
    match a.kind {
        AdditionKind::NewAbstractSet | AdditionKind::NewEnumeratedSet => 0,
        AdditionKind::NewSetItem => 1,
        AdditionKind::NewConstant | AdditionKind::NewVariable => 2,
        AdditionKind::NewFormula => 3,
        AdditionKind::NewSubstitution => 4,
    }
}

/// Names a typing refers to that may be introduced by another addition.
fn typing_refs(t: &Typing) -> Vec<String> {
    match t {
        Typing::Inclusion { of } | Typing::Belonging { of } => vec![of.clone()],
        Typing::Arrow { domain, range, .. } => domain
            .free_names()
            .into_iter()
            .chain(range.free_names())
            .collect(),
    }
}

/// Turns additions to `component` into domain model operations. `trace`
/// is the one written when the baseline was generated.
pub fn backprop(
    additions: &[Addition],
    trace: &CorrespondenceTrace,
    chain: &[DomainModel],
    component: &str,
) -> Result<DomainDelta, BackpropError> {
    let model = trace
        .inverse(TraceKind::DomainModelComponent, component)
        .ok_or_else(|| BackpropError::UnknownComponent(component.to_string()))?;
    let level = chain
        .iter()
        .position(|m| m.name == model)
        .ok_or_else(|| BackpropError::UnknownComponent(component.to_string()))?;
    let mut ctx = Ctx {
        chain,
        level,
        component: component.to_string(),
        trace: trace.clone(),
        delta: DomainDelta {
            model: model.to_string(),
            ..DomainDelta::default()
        },
        working: chain[level].clone(),
        fresh_label: 0,
    };

    let mut ordered: Vec<&Addition> = additions.iter().collect();
    ordered.sort_by_key(|a| rank(a));
    // Elements typed by other new elements wait for them.
    let mut elements: Vec<&Addition> = ordered.iter().copied().filter(|a| rank(a) == 2).collect();
    let declared_by = |a: &Addition| match &a.payload {
        Payload::Constant(n) | Payload::Variable(n) => Some(n.clone()),
        _ => None,
    };
    let mut done_elements: Vec<&Addition> = Vec::new();
    for a in ordered.iter().filter(|a| rank(a) < 2) {
        match &a.payload {
            Payload::Set(s) => ctx.set(a, s)?,
            Payload::SetItem { set, item } => ctx.set_item(a, set, item)?,
            _ => unreachable!(),
        }
    }
    while !elements.is_empty() {
        let pending_names: Vec<String> = elements.iter().filter_map(|a| declared_by(a)).collect();
        let ready = elements.iter().position(|a| {
            let refs = a.typing.as_ref().map(|(t, _)| typing_refs(t)).unwrap_or_default();
            !refs.iter().any(|r| pending_names.contains(r) && declared_by(a).as_ref() != Some(r))
        });
        let Some(i) = ready else {
            return Err(no_rule(elements[0], "typing depends on itself"));
        };
        let a = elements.remove(i);
        let (name, variable) = match &a.payload {
            Payload::Constant(n) => (n.clone(), false),
            Payload::Variable(n) => (n.clone(), true),
            _ => unreachable!(),
        };
        let Some((typing, _)) = &a.typing else {
            return Err(no_rule(a, "no typing formula"));
        };
        ctx.element(a, &name, variable, typing)?;
        done_elements.push(a);
    }
    for a in ordered.iter().filter(|a| rank(a) > 2) {
        match &a.payload {
            Payload::Formula(lf) => ctx.formula(a, lf)?,
            Payload::Substitution(s) => ctx.substitution(a, s)?,
            _ => unreachable!(),
        }
    }

    let mut updated = chain.to_vec();
    updated[level] = ctx.working;
    let violations = validate_chain(&updated)?;
    if !violations.is_empty() {
        return Err(BackpropError::Invalid { violations });
    }
    Ok(ctx.delta)
}

fn apply_op(m: &mut DomainModel, op: &DeltaOp) {
    match op {
        DeltaOp::AddConcept(c) => m.concepts.push(c.clone()),
        DeltaOp::AddDataSet(d) => m.data_sets.push(d.clone()),
        DeltaOp::AddEnumeratedItem { set, item } => {
            if let Some(ds) = m.data_sets.iter_mut().find(|d| &d.name == set) {
                if let DataSetKind::Enumerated(items) = &mut ds.kind {
                    items.push(item.clone());
                }
            }
        }
        DeltaOp::AddAttributeItem { attribute, item } => {
            if let Some(at) = m.attributes.iter_mut().find(|a| &a.name == attribute) {
                if let AttributeRange::Enumeration(items) = &mut at.range {
                    items.push(item.clone());
                }
            }
        }
        DeltaOp::AddIndividual(i) => m.individuals.push(i.clone()),
        DeltaOp::AddDataValue(v) => m.data_values.push(v.clone()),
        DeltaOp::SetConceptVariable { concept } => {
            if let Some(c) = m.concepts.iter_mut().find(|c| &c.name == concept) {
                c.is_variable = true;
            }
        }
        DeltaOp::AddAttribute(a) => m.attributes.push(a.clone()),
        DeltaOp::AddRelation(r) => m.relations.push(r.clone()),
        DeltaOp::AddPredicate(p) => m.predicates.push(p.clone()),
        DeltaOp::AddMaplet(mp) => {
            if m.relations.iter().any(|r| r.name == mp.owner) {
                m.relation_maplets.push(mp.clone());
            } else {
                m.attribute_maplets.push(mp.clone());
            }
        }
    }
}

/// Applies a delta to its model.
pub fn apply_delta(model: &DomainModel, delta: &DomainDelta) -> DomainModel {
    let mut m = model.clone();
    for (_, op) in &delta.ops {
        apply_op(&mut m, op);
    }
    m
}

/// The trace of the baseline extended with the delta's records; used as
/// naming hints when the updated chain is translated again.
pub fn extend_trace(
    trace: &CorrespondenceTrace,
    delta: &DomainDelta,
) -> Result<CorrespondenceTrace, TraceError> {
    let mut t = trace.clone();
    for r in &delta.trace {
        t.insert(r.kind, r.domain.clone(), r.b.clone())?;
    }
    Ok(t)
}
