use std::collections::BTreeMap;
use std::fmt;

use super::{
    is_default_set, resolve_scope, AttributeRange, Cardinality, DataSetKind, DomainModel,
    ElementKind, Maplet, ScopeError, SymbolTable, ValueOwner,
};
use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    UnresolvedReference,
    KindMismatch,
    CyclicInheritance,
    DuplicateName,
    DuplicateEnumElement,
    DuplicateLabel,
    ReservedPrefix,
    /// Elements over variable concepts must themselves be variable.
    VariableDomain,
    ConflictingSymmetry,
    ConflictingReflexivity,
    MinExceedsMax,
    TotalRequiresFunctional,
    MapletOwner,
    MapletAntecedent,
    MapletImage,
    UnknownDefiningPredicate,
    GluingWithoutParent,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::UnresolvedReference => "unresolved-reference",
            Rule::KindMismatch => "kind-mismatch",
            Rule::CyclicInheritance => "cyclic-inheritance",
            Rule::DuplicateName => "duplicate-name",
            Rule::DuplicateEnumElement => "duplicate-enum-element",
            Rule::DuplicateLabel => "duplicate-label",
            Rule::ReservedPrefix => "reserved-prefix",
            Rule::VariableDomain => "variable-domain",
            Rule::ConflictingSymmetry => "conflicting-symmetry",
            Rule::ConflictingReflexivity => "conflicting-reflexivity",
            Rule::MinExceedsMax => "min-exceeds-max",
            Rule::TotalRequiresFunctional => "total-requires-functional",
            Rule::MapletOwner => "maplet-owner",
            Rule::MapletAntecedent => "maplet-antecedent",
            Rule::MapletImage => "maplet-image",
            Rule::UnknownDefiningPredicate => "unknown-defining-predicate",
            Rule::GluingWithoutParent => "gluing-without-parent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub model: String,
    pub element: String,
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} [{}]: {}",
            self.model,
            self.element,
            self.rule.code(),
            self.message
        )
    }
}

const RESERVED_PREFIXES: &[&str] = &["T_", "X_"];

struct Checker<'a> {
    scope: &'a SymbolTable,
    model: &'a DomainModel,
    out: Vec<Violation>,
}

/// Checks one model against its scope; an empty result means well-formed.
pub fn validate(model: &DomainModel, scope: &SymbolTable) -> Vec<Violation> {
    let mut c = Checker {
        scope,
        model,
        out: Vec::new(),
    };
    c.duplicates();
    c.concepts();
    c.relations();
    c.attributes();
    c.data_sets();
    c.data_values();
    c.individuals();
    for m in &model.relation_maplets {
        c.relation_maplet(m);
    }
    for m in &model.attribute_maplets {
        c.attribute_maplet(m);
    }
    c.predicates();
    c.out
}

/// Resolves and validates every model of a root-first chain.
pub fn validate_chain(chain: &[DomainModel]) -> Result<Vec<Violation>, ScopeError> {
    let mut out = Vec::new();
    for (i, m) in chain.iter().enumerate() {
        let scope = resolve_scope(m, &chain[..i])?;
        out.extend(validate(m, &scope));
    }
    Ok(out)
}

impl Checker<'_> {
    fn report(&mut self, element: &str, rule: Rule, message: String) {
        self.out.push(Violation {
            model: self.model.name.clone(),
            element: element.to_string(),
            rule,
            message,
        });
    }

    fn expect_kind(&mut self, element: &str, name: &str, kind: ElementKind, what: &str) -> bool {
        match self.scope.get(name) {
            None => {
                self.report(
                    element,
                    Rule::UnresolvedReference,
                    format!("{what} {name} is not declared"),
                );
                false
            }
            Some(sym) if sym.kind != kind => {
                self.report(
                    element,
                    Rule::KindMismatch,
                    format!("{what} {name} is a {:?}, not a {kind:?}", sym.kind),
                );
                false
            }
            Some(_) => true,
        }
    }

    fn expect_names(&mut self, element: &str, f: &Formula) {
        for name in f.free_names() {
            if !self.scope.resolves(&name) {
                self.report(
                    element,
                    Rule::UnresolvedReference,
                    format!("{name} is not declared"),
                );
            }
        }
    }

    fn duplicates(&mut self) {
        let names = self.model.declared_names();
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for (n, _) in &names {
            *counts.entry(n).or_default() += 1;
        }
        let mut reported = Vec::new();
        for (name, _) in &names {
            if counts[name] < 2 || reported.contains(name) {
                continue;
            }
            reported.push(*name);
            let within_one_set = self.model.data_sets.iter().any(|ds| match &ds.kind {
                DataSetKind::Enumerated(items) => {
                    items.iter().filter(|i| i == name).count() == counts[name]
                }
                DataSetKind::Custom { .. } => false,
            });
            if within_one_set {
                self.report(
                    name,
                    Rule::DuplicateEnumElement,
                    format!("{name} is listed twice in one enumeration"),
                );
            } else {
                self.report(name, Rule::DuplicateName, format!("{name} is declared twice"));
            }
        }
        for (name, _) in &names {
            if let Some(p) = RESERVED_PREFIXES.iter().find(|p| name.starts_with(*p)) {
                self.report(
                    name,
                    Rule::ReservedPrefix,
                    format!("prefix {p} is reserved for generated names"),
                );
            }
        }
    }

    fn concepts(&mut self) {
        for co in &self.model.concepts {
            let Some(parent) = &co.parent else { continue };
            if !self.expect_kind(&co.name, parent, ElementKind::Concept, "parent concept") {
                continue;
            }
            let mut cursor = Some(parent.clone());
            let mut steps = 0;
            while let Some(n) = cursor {
                if n == co.name {
                    self.report(
                        &co.name,
                        Rule::CyclicInheritance,
                        format!("concept {} is its own ancestor", co.name),
                    );
                    break;
                }
                steps += 1;
                if steps > self.model.concepts.len() {
                    break;
                }
                cursor = self.scope.concept(&n).and_then(|(_, c)| c.parent.clone());
            }
        }
    }

    fn cardinality(&mut self, element: &str, side: &str, card: Cardinality) {
        if card.max.is_some_and(|max| card.min > max) {
            self.report(
                element,
                Rule::MinExceedsMax,
                format!("{side} cardinality {card} has min above max"),
            );
        }
    }

    fn relations(&mut self) {
        for re in &self.model.relations {
            let dom_ok = self.expect_kind(&re.name, &re.domain, ElementKind::Concept, "domain");
            let ran_ok = self.expect_kind(&re.name, &re.range, ElementKind::Concept, "range");
            self.cardinality(&re.name, "domain", re.domain_cardinality);
            self.cardinality(&re.name, "range", re.range_cardinality);
            if re.is_symmetric && re.is_asymmetric {
                self.report(
                    &re.name,
                    Rule::ConflictingSymmetry,
                    "relation is both symmetric and asymmetric".into(),
                );
            }
            if re.is_reflexive && re.is_irreflexive {
                self.report(
                    &re.name,
                    Rule::ConflictingReflexivity,
                    "relation is both reflexive and irreflexive".into(),
                );
            }
            let variable_end = (dom_ok && self.scope.is_variable_concept(&re.domain))
                || (ran_ok && self.scope.is_variable_concept(&re.range));
            if variable_end && !re.is_variable {
                self.report(
                    &re.name,
                    Rule::VariableDomain,
                    "relation over a variable concept must be variable".into(),
                );
            }
        }
    }

    fn attributes(&mut self) {
        for at in &self.model.attributes {
            let mut variable_domain = false;
            match at.domain_name() {
                Some(d) => {
                    if self.expect_kind(&at.name, d, ElementKind::Concept, "domain") {
                        variable_domain = self.scope.is_variable_concept(d);
                    }
                }
                None => {
                    self.expect_names(&at.name, &at.domain);
                    variable_domain = at
                        .domain
                        .free_names()
                        .iter()
                        .any(|n| self.scope.is_variable_element(n));
                }
            }
            if let AttributeRange::Expr(range) = &at.range {
                match range.as_ident() {
                    Some(r) if is_default_set(r) => {}
                    Some(r) => match self.scope.get(r) {
                        None => self.report(
                            &at.name,
                            Rule::UnresolvedReference,
                            format!("range {r} is not declared"),
                        ),
                        Some(s) if !matches!(s.kind, ElementKind::DataSet | ElementKind::Concept) => self
                            .report(
                                &at.name,
                                Rule::KindMismatch,
                                format!("range {r} is a {:?}, not a set", s.kind),
                            ),
                        Some(_) => {}
                    },
                    None => self.expect_names(&at.name, range),
                }
            }
            if at.is_total && !at.is_functional {
                self.report(
                    &at.name,
                    Rule::TotalRequiresFunctional,
                    "a total attribute must be functional".into(),
                );
            }
            if variable_domain && !at.is_variable {
                self.report(
                    &at.name,
                    Rule::VariableDomain,
                    "attribute over a variable domain must be variable".into(),
                );
            }
        }
    }

    fn data_sets(&mut self) {
        for ds in &self.model.data_sets {
            if let DataSetKind::Custom {
                defined_by: Some(label),
            } = &ds.kind
            {
                if !self.model.predicates.iter().any(|p| &p.id == label) {
                    self.report(
                        &ds.name,
                        Rule::UnknownDefiningPredicate,
                        format!("defining predicate {label} is not in this model"),
                    );
                }
            }
        }
    }

    fn data_values(&mut self) {
        for dv in &self.model.data_values {
            if is_default_set(&dv.value_of) {
                continue;
            }
            if !self.expect_kind(&dv.name, &dv.value_of, ElementKind::DataSet, "type") {
                continue;
            }
            if let Some((_, ds)) = self.scope.data_set(&dv.value_of) {
                if matches!(ds.kind, DataSetKind::Enumerated(_)) {
                    self.report(
                        &dv.name,
                        Rule::KindMismatch,
                        format!("{} is enumerated; list the value among its elements", ds.name),
                    );
                }
            }
        }
    }

    fn individuals(&mut self) {
        for ind in &self.model.individuals {
            self.expect_kind(&ind.name, &ind.concept, ElementKind::Concept, "concept");
        }
    }

    fn owner_here(&mut self, m: &Maplet, kind: ElementKind) -> bool {
        let element = format!("{} |-> {}", m.antecedent, m.owner);
        let here = self.scope.get(&m.owner).is_some_and(|s| s.level == self.scope.level());
        match self.scope.get(&m.owner) {
            Some(s) if s.kind == kind && here => true,
            Some(s) if s.kind == kind => {
                self.report(
                    &element,
                    Rule::MapletOwner,
                    format!("{} is declared in an ancestor model", m.owner),
                );
                false
            }
            _ => {
                self.report(
                    &element,
                    Rule::MapletOwner,
                    format!("{} is not a {kind:?} of this model", m.owner),
                );
                false
            }
        }
    }

    fn antecedent(&mut self, m: &Maplet, domain: Option<&str>) {
        let element = format!("{} |-> {}", m.antecedent, m.owner);
        let ok = match self.scope.individual(&m.antecedent) {
            Some((_, ind)) => domain.is_none_or(|d| self.scope.is_subconcept(&ind.concept, d)),
            None => false,
        };
        if !ok {
            self.report(
                &element,
                Rule::MapletAntecedent,
                format!("{} is not an individual of the domain", m.antecedent),
            );
        }
    }

    fn relation_maplet(&mut self, m: &Maplet) {
        if !self.owner_here(m, ElementKind::Relation) {
            return;
        }
        let Some((_, re)) = self.scope.relation(&m.owner) else { return };
        let (domain, range) = (re.domain.clone(), re.range.clone());
        self.antecedent(m, Some(&domain));
        let ok = m
            .image
            .as_ident()
            .and_then(|i| self.scope.individual(i))
            .is_some_and(|(_, ind)| self.scope.is_subconcept(&ind.concept, &range));
        if !ok {
            self.report(
                &format!("{} |-> {}", m.antecedent, m.owner),
                Rule::MapletImage,
                format!("{} is not an individual of {range}", m.image.to_ascii()),
            );
        }
    }

    fn attribute_maplet(&mut self, m: &Maplet) {
        if !self.owner_here(m, ElementKind::Attribute) {
            return;
        }
        let Some((_, at)) = self.scope.attribute(&m.owner) else { return };
        let at = at.clone();
        self.antecedent(m, at.domain_name());
        let ok = match (&at.range, m.image.as_ident()) {
            (AttributeRange::Enumeration(items), Some(i)) => items.iter().any(|x| x == i),
            (AttributeRange::Enumeration(_), None) => false,
            (AttributeRange::Expr(range), image) => match (range.as_ident(), image) {
                (Some("BOOL"), Some(i)) => matches!(i, "TRUE" | "FALSE"),
                (Some("BOOL"), None) => false,
                (Some("NATURAL" | "NATURAL1" | "INTEGER"), None) => {
                    matches!(m.image, Formula::Num(_) | Formula::Neg(_))
                }
                (Some(r), Some(i)) if !is_default_set(r) => match self.scope.value_owner(i) {
                    Some(ValueOwner::Set(s)) => s == r,
                    Some(ValueOwner::Anonymous(_)) => false,
                    None => self
                        .scope
                        .individual(i)
                        .is_some_and(|(_, ind)| self.scope.is_subconcept(&ind.concept, r)),
                },
                _ => m.image.free_names().iter().all(|n| self.scope.resolves(n)),
            },
        };
        if !ok {
            self.report(
                &format!("{} |-> {}", m.antecedent, m.owner),
                Rule::MapletImage,
                format!("{} does not belong to the range of {}", m.image.to_ascii(), at.name),
            );
        }
    }

    fn predicates(&mut self) {
        let mut seen: Vec<&str> = Vec::new();
        for p in self.model.all_predicates() {
            if seen.contains(&p.id.as_str()) {
                self.report(&p.id, Rule::DuplicateLabel, format!("label {} is used twice", p.id));
            }
            seen.push(&p.id);
            self.expect_names(&p.id, &p.formula());
        }
        if self.model.parent.is_none() {
            for p in &self.model.gluing_invariants {
                self.report(
                    &p.id,
                    Rule::GluingWithoutParent,
                    "a gluing invariant needs a parent model".into(),
                );
            }
        }
    }
}
