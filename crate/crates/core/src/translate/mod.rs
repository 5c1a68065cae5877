//! Domain model chain to B System components, with a correspondence trace.

mod trace;

use thiserror::Error;

use crate::bsystem::{
    Classification, Component, ComponentKind, Environment, LogicFormula, Operator, SetDecl,
    Structure, Substitution,
};
use crate::domain_model::{
    is_default_set, validate_chain, Attribute, AttributeRange, Cardinality, DataSetKind,
    DomainModel, Maplet, Predicate, Relation, ScopeError, Violation,
};
use crate::formula::{Arrow, BinOp, Formula};

pub use trace::{qualify, unqualify, CorrespondenceTrace, TraceError, TraceKind, TraceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TranslateOptions {
    /// Always type relations with `<->` and state every bound explicitly.
    pub expand_cardinalities: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error("validation failed:\n{}", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
    ValidationFailed { violations: Vec<Violation> },
    #[error("{component}: {name} has no correspondent")]
    UnresolvedReference { component: String, name: String },
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// Name of the variable holding the extent of a variable concept.
pub fn extent_variable(concept: &str) -> String {
    format!("X_{concept}")
}

pub fn type_constant(element: &str) -> String {
    format!("T_{element}")
}

/// Domain-side name of the anonymous set behind an attribute's inline range.
pub fn anonymous_set_key(model: &str, attribute: &str) -> String {
    format!("{}#range", qualify(model, attribute))
}

/// Bound variable of cardinality formulas.
const BOUND: &str = "xx";

/// The arrow for a relation and the bounds it already implies, range side
/// then domain side.
pub fn ladder(re: &Relation) -> (Arrow, Cardinality, Cardinality) {
    let r = re.range_cardinality;
    let d = re.domain_cardinality;
    let one = Some(1);
    let (ra, ri, da, di) = (r.max, r.min, d.max, d.min);
    let c = Cardinality::new;
    if ra == one && ri == 1 && da == one && di == 1 {
        (Arrow::Bijection, c(1, one), c(1, one))
    } else if ra == one && ri == 1 && da == one {
        (Arrow::TotalInjection, c(1, one), c(0, one))
    } else if ra == one && ri == 1 && di == 1 {
        (Arrow::TotalSurjection, c(1, one), c(1, None))
    } else if ra == one && di == 1 {
        (Arrow::PartialSurjection, c(0, one), c(1, None))
    } else if ra == one && da == one {
        (Arrow::PartialInjection, c(0, one), c(0, one))
    } else if ra == one && ri == 1 {
        (Arrow::TotalFunction, c(1, one), Cardinality::ANY)
    } else if ra == one {
        (Arrow::PartialFunction, c(0, one), Cardinality::ANY)
    } else {
        (Arrow::Relation, Cardinality::ANY, Cardinality::ANY)
    }
}

pub fn attribute_arrow(at: &Attribute) -> Arrow {
    match (at.is_functional, at.is_total) {
        (true, true) => Arrow::TotalFunction,
        (true, false) => Arrow::PartialFunction,
        _ => Arrow::Relation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Images of one domain element.
    Range,
    /// Preimages of one range element.
    Domain,
}

/// `!xx.(xx : S => card(r[{xx}]) OP)`, or nothing for `0..*`.
pub fn cardinality_formula(re: &str, over: &str, side: Side, card: Cardinality) -> Option<Formula> {
    if card.is_any() {
        return None;
    }
    let rel = match side {
        Side::Range => Formula::ident(re),
        Side::Domain => Formula::Inverse(Box::new(Formula::ident(re))),
    };
    let count = Formula::app(
        "card",
        vec![Formula::Image {
            rel: Box::new(rel),
            set: Box::new(Formula::SetLit(vec![Formula::ident(BOUND)])),
        }],
    );
    let min = Formula::Num(card.min.into());
    let bound = match card.max {
        Some(max) if max == card.min => Formula::binary(BinOp::Eq, count, min),
        None => Formula::binary(BinOp::Ge, count, min),
        Some(max) => Formula::binary(
            BinOp::In,
            count,
            Formula::binary(BinOp::Range, min, Formula::Num(max.into())),
        ),
    };
    Some(Formula::forall(
        vec![BOUND.to_string()],
        Formula::implies(
            Formula::binary(BinOp::In, Formula::ident(BOUND), Formula::ident(over)),
            bound,
        ),
    ))
}

pub fn characteristic_formulas(re: &Relation) -> Vec<(&'static str, Formula)> {
    let r = || Formula::ident(&re.name);
    let inv = || Formula::Inverse(Box::new(r()));
    let id = || Formula::app("id", vec![Formula::ident(&re.domain)]);
    let mut out = Vec::new();
    if re.is_transitive {
        out.push((
            "transitive",
            Formula::binary(BinOp::Subset, Formula::binary(BinOp::Compose, r(), r()), r()),
        ));
    }
    if re.is_symmetric {
        out.push(("symmetric", Formula::binary(BinOp::Eq, inv(), r())));
    }
    if re.is_asymmetric {
        out.push((
            "asymmetric",
            Formula::binary(BinOp::Subset, Formula::binary(BinOp::Inter, inv(), r()), id()),
        ));
    }
    if re.is_reflexive {
        out.push(("reflexive", Formula::binary(BinOp::Subset, id(), r())));
    }
    if re.is_irreflexive {
        out.push((
            "irreflexive",
            Formula::binary(BinOp::Eq, Formula::binary(BinOp::Inter, id(), r()), Formula::EmptySet),
        ));
    }
    out
}

fn maplet_set(maplets: &[&Maplet]) -> Formula {
    if maplets.is_empty() {
        return Formula::EmptySet;
    }
    Formula::SetLit(
        maplets
            .iter()
            .map(|m| Formula::binary(BinOp::Maplet, Formula::ident(&m.antecedent), m.image.clone()))
            .collect(),
    )
}

fn ident_set(names: &[&str]) -> Formula {
    if names.is_empty() {
        Formula::EmptySet
    } else {
        Formula::SetLit(names.iter().map(|n| Formula::ident(*n)).collect())
    }
}

/// The predicate defining a custom data set: the declared one, else the
/// first predicate of the form `NAME = ...`.
pub fn defining_predicate<'a>(model: &'a DomainModel, set: &str) -> Option<&'a Predicate> {
    let ds = model.data_set(set)?;
    match &ds.kind {
        DataSetKind::Enumerated(_) => None,
        DataSetKind::Custom {
            defined_by: Some(id),
        } => model.predicates.iter().find(|p| &p.id == id),
        DataSetKind::Custom { defined_by: None } => model.predicates.iter().find(|p| {
            matches!(
                p.formula(),
                Formula::Binary { op: BinOp::Eq, lhs, .. } if lhs.as_ident() == Some(set)
            )
        }),
    }
}

struct Pending {
    /// Declared id of a user predicate; rule-generated formulas get `L.n`.
    id: Option<String>,
    formula: Formula,
    structure: Option<Structure>,
    gluing: bool,
}

struct Level<'a> {
    level: usize,
    model: &'a DomainModel,
    hints: Option<&'a CorrespondenceTrace>,
    comp: Component,
    pending: Vec<Pending>,
    init: Vec<(String, Formula)>,
    /// Individuals, data values and data-set constants, listed after the
    /// relation and attribute constants.
    late_constants: Vec<String>,
    trace: &'a mut CorrespondenceTrace,
    anonymous: &'a mut usize,
}

impl Level<'_> {
    fn q(&self, name: &str) -> String {
        qualify(&self.model.name, name)
    }

    fn record(&mut self, kind: TraceKind, domain: &str, b: &str) -> Result<(), TraceError> {
        let (d, b) = (qualify(&self.model.name, domain), qualify(&self.comp.name, b));
        self.trace.insert(kind, d, b)
    }

    /// B name suggested by a prior trace for a domain element.
    fn hinted(&self, kind: TraceKind, domain_key: &str) -> Option<String> {
        self.hints
            .and_then(|h| h.get(kind, domain_key))
            .map(|b| unqualify(b).1.to_string())
    }

    /// Whether a prior trace recorded the element without a type constant.
    fn hinted_collapse(&self, element: TraceKind, ty: TraceKind, name: &str) -> bool {
        let key = self.q(name);
        self.hints
            .is_some_and(|h| h.get(element, &key).is_some() && h.get(ty, &key).is_none())
    }

    fn push(&mut self, formula: Formula, structure: Structure) {
        self.pending.push(Pending {
            id: None,
            formula,
            structure: Some(structure),
            gluing: false,
        });
    }

    fn concepts(&mut self) -> Result<(), TranslateError> {
        let model = self.model;
        let mut done: Vec<&str> = Vec::new();
        while done.len() < model.concepts.len() {
            let before = done.len();
            for co in &model.concepts {
                if done.contains(&co.name.as_str()) {
                    continue;
                }
                let waiting = co.parent.as_deref().is_some_and(|p| {
                    model.concept(p).is_some() && !done.contains(&p)
                });
                if waiting {
                    continue;
                }
                match &co.parent {
                    None => {
                        self.comp.sets.push(SetDecl::abstract_set(&co.name));
                        self.record(TraceKind::ConceptAbstractSet, &co.name, &co.name)?;
                    }
                    Some(p) => {
                        self.comp.constants.push(co.name.clone());
                        self.record(TraceKind::ConceptConstant, &co.name, &co.name)?;
                        self.push(
                            Formula::binary(BinOp::Subset, Formula::ident(&co.name), Formula::ident(p)),
                            Structure::new(Operator::Inclusion, &[&co.name, p]),
                        );
                    }
                }
                done.push(&co.name);
            }
            if done.len() == before {
                // Cycles are rejected by validation; this only guards the loop.
                break;
            }
        }
        Ok(())
    }

    fn data_sets(&mut self) -> Result<(), TranslateError> {
        for ds in &self.model.data_sets {
            match &ds.kind {
                DataSetKind::Enumerated(items) => {
                    self.comp.sets.push(SetDecl::Enumerated {
                        name: ds.name.clone(),
                        items: items.clone(),
                    });
                    self.record(TraceKind::DataSetSet, &ds.name, &ds.name)?;
                    for i in items {
                        self.record(TraceKind::DataValueSetItem, i, i)?;
                    }
                }
                DataSetKind::Custom { .. } => {
                    if defining_predicate(self.model, &ds.name).is_none() {
                        self.comp.sets.push(SetDecl::abstract_set(&ds.name));
                        self.record(TraceKind::DataSetSet, &ds.name, &ds.name)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn individuals(&mut self) -> Result<(), TranslateError> {
        let model = self.model;
        let mut groups: Vec<&str> = Vec::new();
        for ind in &model.individuals {
            if !groups.contains(&ind.concept.as_str()) {
                groups.push(&ind.concept);
            }
        }
        for concept in groups {
            let members: Vec<&str> = model
                .individuals
                .iter()
                .filter(|i| i.concept == concept)
                .map(|i| i.name.as_str())
                .collect();
            for ind in &members {
                self.late_constants.push(ind.to_string());
                self.record(TraceKind::IndividualConstant, ind, ind)?;
                self.push(
                    Formula::binary(BinOp::In, Formula::ident(*ind), Formula::ident(concept)),
                    Structure::new(Operator::Belonging, &[ind, concept]),
                );
            }
            let local = model.concept(concept);
            if local.is_some_and(|c| !c.is_variable) {
                let mut operands = vec![concept];
                operands.extend(&members);
                self.push(
                    Formula::binary(BinOp::Eq, Formula::ident(concept), ident_set(&members)),
                    Structure::new(Operator::Other("Extent".into()), &operands),
                );
            }
        }
        Ok(())
    }

    fn data_values(&mut self) -> Result<(), TranslateError> {
        for dv in &self.model.data_values {
            self.late_constants.push(dv.name.clone());
            self.record(TraceKind::DataValueConstant, &dv.name, &dv.name)?;
            self.push(
                Formula::binary(BinOp::In, Formula::ident(&dv.name), Formula::ident(&dv.value_of)),
                Structure::new(Operator::Belonging, &[&dv.name, &dv.value_of]),
            );
        }
        Ok(())
    }

    fn maplets(&mut self, owner: &str, is_variable: bool, maplets: &[&Maplet]) {
        if is_variable {
            self.init.push((owner.to_string(), maplet_set(maplets)));
        } else if !maplets.is_empty() {
            self.push(
                Formula::binary(BinOp::Eq, Formula::ident(owner), maplet_set(maplets)),
                Structure::new(Operator::Other("MapletEquality".into()), &[owner]),
            );
        }
    }

    /// Declares an element typed by `dom ARROW ran`, through a type constant
    /// unless `collapse`.
    fn typed_element(
        &mut self,
        name: &str,
        type_kind: TraceKind,
        element_kind: TraceKind,
        collapse: bool,
        ty: Formula,
        is_variable: bool,
    ) -> Result<(), TranslateError> {
        if collapse {
            self.push(
                Formula::binary(BinOp::In, Formula::ident(name), ty.clone()),
                Structure::new(Operator::Belonging, &[name, &ty.to_ascii()]),
            );
        } else {
            let t = self
                .hinted(type_kind, &self.q(name))
                .unwrap_or_else(|| type_constant(name));
            self.comp.constants.push(t.clone());
            self.record(type_kind, name, &t)?;
            self.push(
                Formula::binary(BinOp::Eq, Formula::ident(&t), ty),
                Structure::new(Operator::Other("TypeDefinition".into()), &[&t]),
            );
            self.push(
                Formula::binary(BinOp::In, Formula::ident(name), Formula::ident(&t)),
                Structure::new(Operator::Belonging, &[name, &t]),
            );
        }
        if is_variable {
            self.comp.variables.push(name.to_string());
        } else {
            self.comp.constants.push(name.to_string());
        }
        self.record(element_kind, name, name)?;
        Ok(())
    }

    fn relations(&mut self, opts: &TranslateOptions) -> Result<(), TranslateError> {
        let model = self.model;
        for re in &model.relations {
            let (arrow, implied_range, implied_domain) = if opts.expand_cardinalities {
                (Arrow::Relation, Cardinality::ANY, Cardinality::ANY)
            } else {
                ladder(re)
            };
            let ty = Formula::binary(
                BinOp::Arrow(arrow),
                Formula::ident(&re.domain),
                Formula::ident(&re.range),
            );
            let collapse = self.hinted_collapse(
                TraceKind::RelationElement,
                TraceKind::RelationTypeConstant,
                &re.name,
            );
            self.typed_element(
                &re.name,
                TraceKind::RelationTypeConstant,
                TraceKind::RelationElement,
                collapse,
                ty,
                re.is_variable,
            )?;
            for (kind, f) in characteristic_formulas(re) {
                self.push(f, Structure::new(Operator::Other("Characteristic".into()), &[kind, &re.name]));
            }
            if re.range_cardinality != implied_range {
                if let Some(f) =
                    cardinality_formula(&re.name, &re.domain, Side::Range, re.range_cardinality)
                {
                    self.push(f, Structure::new(Operator::Other("Cardinality".into()), &["range", &re.name]));
                }
            }
            if re.domain_cardinality != implied_domain {
                if let Some(f) =
                    cardinality_formula(&re.name, &re.range, Side::Domain, re.domain_cardinality)
                {
                    self.push(f, Structure::new(Operator::Other("Cardinality".into()), &["domain", &re.name]));
                }
            }
            let maplets: Vec<&Maplet> =
                model.relation_maplets.iter().filter(|m| m.owner == re.name).collect();
            self.maplets(&re.name, re.is_variable, &maplets);
        }
        Ok(())
    }

    fn attributes(&mut self) -> Result<(), TranslateError> {
        let model = self.model;
        for at in &model.attributes {
            let (range, range_is_name) = match &at.range {
                AttributeRange::Enumeration(items) => {
                    *self.anonymous += 1;
                    let key = anonymous_set_key(&model.name, &at.name);
                    let name = self
                        .hinted(TraceKind::DataSetSet, &key)
                        .unwrap_or_else(|| format!("DataSet_{}", self.anonymous));
                    self.comp.sets.push(SetDecl::Enumerated {
                        name: name.clone(),
                        items: items.clone(),
                    });
                    self.trace.insert(
                        TraceKind::DataSetSet,
                        key,
                        qualify(&self.comp.name, &name),
                    )?;
                    for i in items {
                        self.record(TraceKind::DataValueSetItem, i, i)?;
                    }
                    (Formula::ident(name), true)
                }
                AttributeRange::Expr(f) => {
                    let named = f.as_ident().is_some_and(|n| !is_default_set(n));
                    (f.clone(), named)
                }
            };
            let domain_is_name = at.domain_name().is_some_and(|n| !is_default_set(n));
            let hinted_type = self
                .hinted(TraceKind::AttributeTypeConstant, &self.q(&at.name))
                .is_some();
            let collapse = !hinted_type
                && (!domain_is_name || !range_is_name)
                || self.hinted_collapse(
                    TraceKind::AttributeElement,
                    TraceKind::AttributeTypeConstant,
                    &at.name,
                );
            let ty = Formula::binary(BinOp::Arrow(attribute_arrow(at)), at.domain.clone(), range);
            self.typed_element(
                &at.name,
                TraceKind::AttributeTypeConstant,
                TraceKind::AttributeElement,
                collapse,
                ty,
                at.is_variable,
            )?;
            let maplets: Vec<&Maplet> =
                model.attribute_maplets.iter().filter(|m| m.owner == at.name).collect();
            self.maplets(&at.name, at.is_variable, &maplets);
        }
        Ok(())
    }

    fn variability(&mut self) -> Result<(), TranslateError> {
        let model = self.model;
        for co in model.concepts.iter().filter(|c| c.is_variable) {
            let x = self
                .hinted(TraceKind::ConceptVariable, &self.q(&co.name))
                .unwrap_or_else(|| extent_variable(&co.name));
            self.comp.variables.push(x.clone());
            self.record(TraceKind::ConceptVariable, &co.name, &x)?;
            self.push(
                Formula::binary(BinOp::Subset, Formula::ident(&x), Formula::ident(&co.name)),
                Structure::new(Operator::Inclusion, &[&x, &co.name]),
            );
            let members: Vec<&str> = model
                .individuals
                .iter()
                .filter(|i| i.concept == co.name)
                .map(|i| i.name.as_str())
                .collect();
            self.init.push((x, ident_set(&members)));
        }
        Ok(())
    }

    fn data_set_constants(&mut self) -> Result<(), TranslateError> {
        for ds in &self.model.data_sets {
            if matches!(ds.kind, DataSetKind::Custom { .. })
                && defining_predicate(self.model, &ds.name).is_some()
            {
                self.late_constants.push(ds.name.clone());
                self.record(TraceKind::DataSetConstant, &ds.name, &ds.name)?;
            }
        }
        Ok(())
    }

    fn predicates(&mut self) -> Result<(), TranslateError> {
        let model = self.model;
        for (p, gluing) in model
            .predicates
            .iter()
            .map(|p| (p, false))
            .chain(model.gluing_invariants.iter().map(|p| (p, true)))
        {
            self.record(TraceKind::PredicateLogicFormula, &p.id, &p.id)?;
            self.pending.push(Pending {
                id: Some(p.id.clone()),
                formula: p.formula(),
                structure: None,
                gluing,
            });
        }
        Ok(())
    }

    /// Classifies the collected formulas and numbers them clause by clause.
    fn finish(mut self, ancestors: &[Component]) -> Result<Component, TranslateError> {
        let late = std::mem::take(&mut self.late_constants);
        self.comp.constants.extend(late);
        let mut chain: Vec<&Component> = ancestors.iter().collect();
        chain.push(&self.comp);
        let env = Environment::new(&chain);
        let mut props = Vec::new();
        let mut invs = Vec::new();
        for p in std::mem::take(&mut self.pending) {
            let class = env.classify(&p.formula).map_err(|e| match e {
                crate::bsystem::ClassifyError::UnknownName { component, name } => {
                    TranslateError::UnresolvedReference { component, name }
                }
            })?;
            let class = match class {
                Classification::Invariant if p.gluing => Classification::GluingInvariant,
                c => c,
            };
            let lf = LogicFormula {
                label: p.id.clone().unwrap_or_default(),
                formula: p.formula,
                structure: p.structure,
                classification: class,
            };
            if class == Classification::Property {
                props.push((p.id.is_none(), lf));
            } else {
                invs.push((p.id.is_none(), lf));
            }
        }
        let mut n = 0;
        let mut next = |generated: bool, label: &mut String| {
            n += 1;
            if generated {
                *label = format!("{}.{}", self.level, n);
            }
        };
        for (generated, mut lf) in props.into_iter().chain(invs) {
            next(generated, &mut lf.label);
            if lf.classification == Classification::Property {
                self.comp.properties.push(lf);
            } else {
                self.comp.invariants.push(lf);
            }
        }
        for (target, value) in std::mem::take(&mut self.init) {
            let mut label = String::new();
            next(true, &mut label);
            self.comp.initialisation.push(Substitution {
                label,
                target,
                value,
            });
        }
        Ok(self.comp)
    }
}

/// Translates a root-first chain of domain models. `hints` is a trace from
/// an earlier run whose generated names are reused.
pub fn translate_project(
    chain: &[DomainModel],
    opts: &TranslateOptions,
    hints: Option<&CorrespondenceTrace>,
) -> Result<(Vec<Component>, CorrespondenceTrace), TranslateError> {
    let violations = validate_chain(chain)?;
    if !violations.is_empty() {
        return Err(TranslateError::ValidationFailed { violations });
    }
    let mut trace = CorrespondenceTrace::new();
    let mut comps: Vec<Component> = Vec::new();
    let mut anonymous = 0;
    for (level, model) in chain.iter().enumerate() {
        let kind = match comps.last() {
            None => ComponentKind::System,
            Some(parent) => ComponentKind::Refinement {
                refines: parent.name.clone(),
            },
        };
        let comp = Component::new(model.name.clone(), kind);
        trace.insert(TraceKind::DomainModelComponent, model.name.clone(), comp.name.clone())?;
        let mut lv = Level {
            level,
            model,
            hints,
            comp,
            pending: Vec::new(),
            init: Vec::new(),
            late_constants: Vec::new(),
            trace: &mut trace,
            anonymous: &mut anonymous,
        };
        lv.concepts()?;
        lv.data_sets()?;
        lv.individuals()?;
        lv.data_values()?;
        lv.relations(opts)?;
        lv.attributes()?;
        lv.variability()?;
        lv.data_set_constants()?;
        lv.predicates()?;
        let comp = lv.finish(&comps)?;
        comps.push(comp);
    }
    Ok((comps, trace))
}
