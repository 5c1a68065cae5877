use std::collections::BTreeSet;

use super::{Addition, AdditionKind, BackpropError, Payload, Typing};
use crate::bsystem::{Component, LogicFormula, SetDecl};
use crate::formula::{BinOp, Formula};

fn unsupported(component: &str, what: String) -> BackpropError {
    BackpropError::UnsupportedEdit {
        component: component.to_string(),
        what,
    }
}

/// Additions made in `edited` relative to `baseline`. Removals and in-place
/// changes are rejected.
pub fn diff_component(baseline: &Component, edited: &Component) -> Result<Vec<Addition>, BackpropError> {
    let comp = baseline.name.as_str();
    if edited.name != baseline.name {
        return Err(unsupported(comp, format!("component renamed to {}", edited.name)));
    }
    if edited.kind != baseline.kind {
        return Err(unsupported(comp, "component header changed".into()));
    }

    let mut seen: BTreeSet<&str> = BTreeSet::new();
    if let Some(dup) = edited.declared_names().into_iter().find(|n| !seen.insert(n)) {
        return Err(BackpropError::NameClash {
            name: dup.to_string(),
        });
    }

    let mut out = Vec::new();
    let mut new_names: BTreeSet<String> = BTreeSet::new();
    let baseline_names: BTreeSet<&str> = baseline.declared_names().into_iter().collect();
    let mut claim = |name: &str| -> Result<(), BackpropError> {
        if baseline_names.contains(name) || !new_names.insert(name.to_string()) {
            return Err(BackpropError::NameClash {
                name: name.to_string(),
            });
        }
        Ok(())
    };

    for old in &baseline.sets {
        let Some(new) = edited.set(old.name()) else {
            return Err(unsupported(comp, format!("set {} removed", old.name())));
        };
        match (old, new) {
            (SetDecl::Abstract { .. }, SetDecl::Abstract { .. }) => {}
            (SetDecl::Enumerated { items: a, .. }, SetDecl::Enumerated { items: b, .. }) => {
                if let Some(gone) = a.iter().find(|i| !b.contains(i)) {
                    return Err(unsupported(comp, format!("item {gone} removed from {}", old.name())));
                }
                let kept: Vec<&String> = b.iter().filter(|i| a.contains(i)).collect();
                if kept.iter().zip(a).any(|(x, y)| *x != y) {
                    return Err(unsupported(comp, format!("items of {} reordered", old.name())));
                }
                for item in b.iter().filter(|i| !a.contains(i)) {
                    claim(item)?;
                    out.push(Addition {
                        kind: AdditionKind::NewSetItem,
                        payload: Payload::SetItem {
                            set: old.name().to_string(),
                            item: item.clone(),
                        },
                        typing: None,
                    });
                }
            }
            _ => return Err(unsupported(comp, format!("set {} changed kind", old.name()))),
        }
    }
    for s in edited.sets.iter().filter(|s| baseline.set(s.name()).is_none()) {
        claim(s.name())?;
        for i in s.items() {
            claim(i)?;
        }
        let kind = match s {
            SetDecl::Abstract { .. } => AdditionKind::NewAbstractSet,
            SetDecl::Enumerated { .. } => AdditionKind::NewEnumeratedSet,
        };
        out.push(Addition {
            kind,
            payload: Payload::Set(s.clone()),
            typing: None,
        });
    }

    for c in &baseline.constants {
        if !edited.constants.contains(c) {
            return Err(unsupported(comp, format!("constant {c} removed")));
        }
    }
    for v in &baseline.variables {
        if !edited.variables.contains(v) {
            return Err(unsupported(comp, format!("variable {v} removed")));
        }
    }

    let baseline_formulas: Vec<&LogicFormula> = baseline.formulas().collect();
    for old in &baseline_formulas {
        let same = edited
            .formulas()
            .any(|f| f.label == old.label && f.formula == old.formula);
        if !same {
            return Err(unsupported(comp, format!("formula ({}) changed or removed", old.label)));
        }
    }
    let mut fresh: Vec<LogicFormula> = Vec::new();
    for f in edited.formulas() {
        let known = baseline_formulas
            .iter()
            .any(|o| o.label == f.label && o.formula == f.formula);
        if !known {
            if !f.label.is_empty() && baseline_formulas.iter().any(|o| o.label == f.label) {
                return Err(unsupported(comp, format!("formula ({}) changed", f.label)));
            }
            fresh.push(f.clone());
        }
    }

    for old in &baseline.initialisation {
        if !edited.initialisation.contains(old) {
            return Err(unsupported(comp, format!("initialisation of {} changed or removed", old.target)));
        }
    }

    let new_constants: Vec<&String> = edited
        .constants
        .iter()
        .filter(|c| !baseline.constants.contains(c))
        .collect();
    let new_variables: Vec<&String> = edited
        .variables
        .iter()
        .filter(|v| !baseline.variables.contains(v))
        .collect();
    for n in new_constants.iter().chain(&new_variables) {
        claim(n)?;
    }

    // Type constants `T = A arrow B` used by exactly one new element.
    let mut consumed: Vec<usize> = Vec::new();
    let mut elements = Vec::new();
    for (name, kind) in new_constants
        .iter()
        .map(|c| (*c, AdditionKind::NewConstant))
        .chain(new_variables.iter().map(|v| (*v, AdditionKind::NewVariable)))
    {
        let candidates: Vec<usize> = fresh
            .iter()
            .enumerate()
            .filter(|(_, f)| typing_target(&f.formula) == Some(name.as_str()))
            .map(|(i, _)| i)
            .collect();
        elements.push((name.clone(), kind, candidates));
    }
    let type_constants: BTreeSet<String> = elements
        .iter()
        .filter(|(name, kind, candidates)| {
            *kind == AdditionKind::NewConstant
                && candidates.is_empty()
                && fresh
                    .iter()
                    .any(|f| type_definition(&f.formula).is_some_and(|(n, ..)| n == name))
        })
        .map(|(name, ..)| name.clone())
        .collect();

    for (name, kind, candidates) in &elements {
        if type_constants.contains(name) {
            continue;
        }
        let i = match candidates.as_slice() {
            [] => {
                return Err(BackpropError::NoMatchingRule {
                    addition: format!("{kind} {name}"),
                    reason: "no typing formula".into(),
                })
            }
            [i] => *i,
            many => {
                return Err(BackpropError::AmbiguousPattern {
                    element: name.clone(),
                    candidates: many.iter().map(|i| fresh[*i].formula.to_ascii()).collect(),
                })
            }
        };
        let mut formulas = vec![fresh[i].clone()];
        consumed.push(i);
        let typing = match &fresh[i].formula {
            Formula::Binary {
                op: BinOp::Subset,
                rhs,
                ..
            } => rhs.as_ident().map(|y| Typing::Inclusion { of: y.to_string() }),
            Formula::Binary {
                op: BinOp::In,
                rhs,
                ..
            } => match rhs.as_ref() {
                Formula::Binary {
                    op: BinOp::Arrow(arrow),
                    lhs: dom,
                    rhs: ran,
                } => Some(Typing::Arrow {
                    type_constant: None,
                    arrow: *arrow,
                    domain: (**dom).clone(),
                    range: (**ran).clone(),
                }),
                Formula::Ident(t) if type_constants.contains(t) => {
                    let defs: Vec<usize> = fresh
                        .iter()
                        .enumerate()
                        .filter(|(_, f)| type_definition(&f.formula).is_some_and(|(n, ..)| n == t))
                        .map(|(j, _)| j)
                        .collect();
                    match defs.as_slice() {
                        [j] => {
                            consumed.push(*j);
                            formulas.push(fresh[*j].clone());
                            let (_, arrow, dom, ran) = type_definition(&fresh[*j].formula).unwrap();
                            Some(Typing::Arrow {
                                type_constant: Some(t.clone()),
                                arrow,
                                domain: dom.clone(),
                                range: ran.clone(),
                            })
                        }
                        [] => None,
                        many => {
                            return Err(BackpropError::AmbiguousPattern {
                                element: t.clone(),
                                candidates: many.iter().map(|j| fresh[*j].formula.to_ascii()).collect(),
                            })
                        }
                    }
                }
                Formula::Ident(y) => Some(Typing::Belonging { of: y.clone() }),
                _ => None,
            },
            _ => None,
        };
        let Some(typing) = typing else {
            return Err(BackpropError::NoMatchingRule {
                addition: format!("{kind} {name}"),
                reason: format!("typing {} has no supported shape", fresh[i].formula.to_ascii()),
            });
        };
        let payload = match kind {
            AdditionKind::NewConstant => Payload::Constant(name.clone()),
            _ => Payload::Variable(name.clone()),
        };
        out.push(Addition {
            kind: *kind,
            payload,
            typing: Some((typing, formulas)),
        });
    }
    for t in &type_constants {
        let used = consumed
            .iter()
            .any(|i| type_definition(&fresh[*i].formula).is_some_and(|(n, ..)| n == t));
        if !used {
            return Err(BackpropError::NoMatchingRule {
                addition: format!("constant {t}"),
                reason: "type constant without a definition".into(),
            });
        }
    }

    for (i, f) in fresh.into_iter().enumerate() {
        if !consumed.contains(&i) {
            out.push(Addition {
                kind: AdditionKind::NewFormula,
                payload: Payload::Formula(f),
                typing: None,
            });
        }
    }
    for s in edited
        .initialisation
        .iter()
        .filter(|s| !baseline.initialisation.contains(s))
    {
        out.push(Addition {
            kind: AdditionKind::NewSubstitution,
            payload: Payload::Substitution(s.clone()),
            typing: None,
        });
    }
    Ok(out)
}

/// The element a formula types: `X <: Y`, `X : Y`.
fn typing_target(f: &Formula) -> Option<&str> {
    match f {
        Formula::Binary {
            op: BinOp::Subset | BinOp::In,
            lhs,
            ..
        } => lhs.as_ident(),
        _ => None,
    }
}

/// `T = A arrow B`
fn type_definition(f: &Formula) -> Option<(&str, crate::formula::Arrow, &Formula, &Formula)> {
    match f {
        Formula::Binary {
            op: BinOp::Eq,
            lhs,
            rhs,
        } => match rhs.as_ref() {
            Formula::Binary {
                op: BinOp::Arrow(a),
                lhs: dom,
                rhs: ran,
            } => Some((lhs.as_ident()?, *a, dom, ran)),
            _ => None,
        },
        _ => None,
    }
}
