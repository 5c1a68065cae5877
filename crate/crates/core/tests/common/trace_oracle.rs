use std::collections::{BTreeMap, BTreeSet};

use kaos2b::bsystem::Component;
use kaos2b::domain_model::{validate_chain, AttributeRange, DataSetKind, DomainModel};
use kaos2b::formula::Formula;
use kaos2b::translate::{translate_project, CorrespondenceTrace, TraceKind, TranslateOptions};
use proptest::prelude::*;

/// Every (kind, domain key) the translation must record, worked out from
/// the model alone.
pub fn expected_keys(chain: &[DomainModel]) -> BTreeSet<(TraceKind, String)> {
    let mut out = BTreeSet::new();
    for m in chain {
        let q = |n: &str| format!("{}.{n}", m.name);
        out.insert((TraceKind::DomainModelComponent, m.name.clone()));
        for c in &m.concepts {
            let kind = if c.parent.is_some() {
                TraceKind::ConceptConstant
            } else {
                TraceKind::ConceptAbstractSet
            };
            out.insert((kind, q(&c.name)));
            if c.is_variable {
                out.insert((TraceKind::ConceptVariable, q(&c.name)));
            }
        }
        for ds in &m.data_sets {
            match &ds.kind {
                DataSetKind::Enumerated(items) => {
                    out.insert((TraceKind::DataSetSet, q(&ds.name)));
                    for i in items {
                        out.insert((TraceKind::DataValueSetItem, q(i)));
                    }
                }
                DataSetKind::Custom { defined_by: Some(_) } => {
                    out.insert((TraceKind::DataSetConstant, q(&ds.name)));
                }
                DataSetKind::Custom { defined_by: None } => {
                    out.insert((TraceKind::DataSetSet, q(&ds.name)));
                }
            }
        }
        for v in &m.data_values {
            out.insert((TraceKind::DataValueConstant, q(&v.name)));
        }
        for i in &m.individuals {
            out.insert((TraceKind::IndividualConstant, q(&i.name)));
        }
        for r in &m.relations {
            out.insert((TraceKind::RelationElement, q(&r.name)));
            out.insert((TraceKind::RelationTypeConstant, q(&r.name)));
        }
        for a in &m.attributes {
            out.insert((TraceKind::AttributeElement, q(&a.name)));
            let plain = |f: &Formula| {
                f.as_ident()
                    .is_some_and(|n| !kaos2b::domain_model::is_default_set(n))
            };
            let named_range = match &a.range {
                AttributeRange::Enumeration(items) => {
                    out.insert((TraceKind::DataSetSet, format!("{}#range", q(&a.name))));
                    for i in items {
                        out.insert((TraceKind::DataValueSetItem, q(i)));
                    }
                    true
                }
                AttributeRange::Expr(f) => plain(f),
            };
            if plain(&a.domain) && named_range {
                out.insert((TraceKind::AttributeTypeConstant, q(&a.name)));
            }
        }
        for p in m.all_predicates() {
            out.insert((TraceKind::PredicateLogicFormula, q(&p.id)));
        }
    }
    out
}

pub fn b_side_exists(comps: &[Component], kind: TraceKind, b: &str) -> bool {
    if kind == TraceKind::DomainModelComponent {
        return comps.iter().any(|c| c.name == b);
    }
    let Some((comp, name)) = b.split_once('.') else { return false };
    let Some(c) = comps.iter().find(|c| c.name == comp) else { return false };
    if kind == TraceKind::PredicateLogicFormula {
        return c.formulas().any(|f| f.label == name);
    }
    c.declared_names().contains(&name)
}

/// Variables of a component and every component it refines.
pub fn visible_variables(comps: &[Component], upto: usize) -> BTreeSet<String> {
    comps[..=upto].iter().flat_map(|c| c.variables.iter().cloned()).collect()
}

pub fn check(chain: &[DomainModel]) -> Result<(), TestCaseError> {
    for m in chain {
        prop_assert!(super::gen::element_count(m) <= 30, "{} has {} elements", m.name, super::gen::element_count(m));
    }
    let violations = validate_chain(chain).unwrap();
    prop_assert!(violations.is_empty(), "generator produced an invalid chain: {:?}", violations);
    let (comps, trace) = translate_project(chain, &TranslateOptions::default(), None)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    check_trace(chain, &comps, &trace)?;

    no_variable_in_properties(&comps).map_err(TestCaseError::fail)
}

pub fn no_variable_in_properties(comps: &[Component]) -> Result<(), String> {
    for (i, c) in comps.iter().enumerate() {
        let vars = visible_variables(comps, i);
        for p in &c.properties {
            let hit: Vec<String> = p.formula.free_names().intersection(&vars).cloned().collect();
            if !hit.is_empty() {
                return Err(format!("property ({}) of {} mentions {:?}", p.label, c.name, hit));
            }
        }
    }
    Ok(())
}

pub fn check_trace(chain: &[DomainModel], comps: &[Component], trace: &CorrespondenceTrace) -> Result<(), TestCaseError> {
    let mut images: BTreeMap<TraceKind, BTreeSet<String>> = BTreeMap::new();
    let mut keys: BTreeSet<(TraceKind, String)> = BTreeSet::new();
    for r in trace.records() {
        prop_assert!(
            images.entry(r.kind).or_default().insert(r.b.clone()),
            "{}: {} has two domain elements",
            r.kind,
            r.b
        );
        prop_assert!(keys.insert((r.kind, r.domain.clone())), "{}: {} mapped twice", r.kind, r.domain);
        prop_assert!(b_side_exists(comps, r.kind, &r.b), "{}: {} is not emitted", r.kind, r.b);
    }
    let expected = expected_keys(chain);
    let missing: Vec<_> = expected.difference(&keys).collect();
    let extra: Vec<_> = keys.difference(&expected).collect();
    prop_assert!(missing.is_empty(), "untraced elements: {:?}", missing);
    prop_assert!(extra.is_empty(), "unexpected trace records: {:?}", extra);
    prop_assert!(trace.is_injective());
    Ok(())
}
