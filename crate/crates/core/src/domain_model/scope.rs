use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{
    is_default_set, Attribute, AttributeRange, Concept, DataSet, DataSetKind, DomainModel,
    Individual, Relation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Concept,
    Relation,
    Attribute,
    DataSet,
    DataValue,
    Individual,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScopeError {
    #[error("domain model {model} names unknown parent {parent}")]
    UnknownParent { model: String, parent: String },
    #[error("parent chain of domain model {model} is cyclic")]
    CyclicParentChain { model: String },
    #[error("{name} is declared in both {first} and {second}")]
    DuplicateName {
        name: String,
        first: String,
        second: String,
    },
    #[error("domain model {0} is given twice")]
    DuplicateModel(String),
    #[error("no root domain model (every model names a parent)")]
    NoRoot,
    #[error("several root domain models: {}", .0.join(", "))]
    MultipleRoots(Vec<String>),
    #[error("domain model {parent} is refined by both {first} and {second}")]
    Branching {
        parent: String,
        first: String,
        second: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symbol {
    pub kind: ElementKind,
    pub level: usize,
}

/// Names visible from one model: its own declarations and its ancestors'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    models: Vec<DomainModel>,
    symbols: BTreeMap<String, Symbol>,
}

/// Builds the table for `model`, given its ancestors root-first.
pub fn resolve_scope(
    model: &DomainModel,
    ancestors: &[DomainModel],
) -> Result<SymbolTable, ScopeError> {
    let mut names = BTreeSet::new();
    for (i, m) in ancestors.iter().chain(std::iter::once(model)).enumerate() {
        if !names.insert(m.name.as_str()) {
            return Err(ScopeError::CyclicParentChain {
                model: m.name.clone(),
            });
        }
        let expected = if i == 0 {
            None
        } else {
            Some(ancestors[i - 1].name.as_str())
        };
        if m.parent.as_deref() != expected {
            return Err(ScopeError::UnknownParent {
                model: m.name.clone(),
                parent: m.parent.clone().unwrap_or_default(),
            });
        }
    }

    let mut models: Vec<DomainModel> = ancestors.to_vec();
    models.push(model.clone());
    let mut symbols: BTreeMap<String, Symbol> = BTreeMap::new();
    for (level, m) in models.iter().enumerate() {
        for (name, kind) in m.declared_names() {
            match symbols.get(name) {
                Some(prev) if prev.level != level => {
                    return Err(ScopeError::DuplicateName {
                        name: name.to_string(),
                        first: models[prev.level].name.clone(),
                        second: m.name.clone(),
                    });
                }
                Some(_) => {}
                None => {
                    symbols.insert(name.to_string(), Symbol { kind, level });
                }
            }
        }
    }
    Ok(SymbolTable { models, symbols })
}

/// Orders models root-first by their parent links.
pub fn order_chain(models: Vec<DomainModel>) -> Result<Vec<DomainModel>, ScopeError> {
    let mut by_name: BTreeMap<String, DomainModel> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for m in models {
        if by_name.contains_key(&m.name) {
            return Err(ScopeError::DuplicateModel(m.name));
        }
        order.push(m.name.clone());
        by_name.insert(m.name.clone(), m);
    }
    let roots: Vec<String> = order
        .iter()
        .filter(|n| by_name[*n].parent.is_none())
        .cloned()
        .collect();
    let mut child_of: BTreeMap<String, String> = BTreeMap::new();
    for name in &order {
        let m = &by_name[name];
        if let Some(p) = &m.parent {
            if !by_name.contains_key(p) {
                return Err(ScopeError::UnknownParent {
                    model: m.name.clone(),
                    parent: p.clone(),
                });
            }
            if let Some(first) = child_of.insert(p.clone(), m.name.clone()) {
                return Err(ScopeError::Branching {
                    parent: p.clone(),
                    first,
                    second: m.name.clone(),
                });
            }
        }
    }
    let root = match roots.as_slice() {
        [] => {
            return Err(ScopeError::NoRoot);
        }
        [one] => one.clone(),
        _ => return Err(ScopeError::MultipleRoots(roots)),
    };
    let mut chain = Vec::new();
    let mut cursor = Some(root);
    while let Some(name) = cursor {
        cursor = child_of.get(&name).cloned();
        chain.push(by_name.remove(&name).expect("each model is visited once"));
    }
    if let Some(stray) = by_name.into_keys().next() {
        return Err(ScopeError::CyclicParentChain { model: stray });
    }
    Ok(chain)
}

impl SymbolTable {
    /// Level of the model the table was built for.
    pub fn level(&self) -> usize {
        self.models.len() - 1
    }

    pub fn model(&self) -> &DomainModel {
        &self.models[self.level()]
    }

    pub fn model_at(&self, level: usize) -> &DomainModel {
        &self.models[level]
    }

    pub fn get(&self, name: &str) -> Option<Symbol> {
        self.symbols.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, Symbol)> {
        self.symbols.iter().map(|(n, s)| (n.as_str(), *s))
    }

    fn find<'a, T>(
        &'a self,
        name: &str,
        kind: ElementKind,
        items: impl Fn(&'a DomainModel) -> &'a [T],
        key: impl Fn(&T) -> &str,
    ) -> Option<(usize, &'a T)> {
        let sym = self.get(name).filter(|s| s.kind == kind)?;
        items(&self.models[sym.level])
            .iter()
            .find(|t| key(t) == name)
            .map(|t| (sym.level, t))
    }

    pub fn concept(&self, name: &str) -> Option<(usize, &Concept)> {
        self.find(name, ElementKind::Concept, |m| &m.concepts, |c| &c.name)
    }

    pub fn relation(&self, name: &str) -> Option<(usize, &Relation)> {
        self.find(name, ElementKind::Relation, |m| &m.relations, |r| &r.name)
    }

    pub fn attribute(&self, name: &str) -> Option<(usize, &Attribute)> {
        self.find(name, ElementKind::Attribute, |m| &m.attributes, |a| &a.name)
    }

    pub fn data_set(&self, name: &str) -> Option<(usize, &DataSet)> {
        self.find(name, ElementKind::DataSet, |m| &m.data_sets, |d| &d.name)
    }

    pub fn individual(&self, name: &str) -> Option<(usize, &Individual)> {
        self.find(name, ElementKind::Individual, |m| &m.individuals, |i| &i.name)
    }

    /// The set a data value belongs to: a data set name, a default set, or
    /// the attribute owning an inline enumeration.
    pub fn value_owner(&self, name: &str) -> Option<ValueOwner> {
        let sym = self.get(name).filter(|s| s.kind == ElementKind::DataValue)?;
        let m = &self.models[sym.level];
        for ds in &m.data_sets {
            if let DataSetKind::Enumerated(items) = &ds.kind {
                if items.iter().any(|i| i == name) {
                    return Some(ValueOwner::Set(ds.name.clone()));
                }
            }
        }
        for at in &m.attributes {
            if let AttributeRange::Enumeration(items) = &at.range {
                if items.iter().any(|i| i == name) {
                    return Some(ValueOwner::Anonymous(at.name.clone()));
                }
            }
        }
        m.data_values
            .iter()
            .find(|d| d.name == name)
            .map(|d| ValueOwner::Set(d.value_of.clone()))
    }

    /// Walks the parent chain of a concept, starting with the concept itself.
    /// Stops early on unresolved parents or cycles.
    pub fn concept_lineage(&self, name: &str) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut cursor = Some(name.to_string());
        while let Some(n) = cursor {
            if out.contains(&n) {
                break;
            }
            let Some((_, c)) = self.concept(&n) else { break };
            cursor = c.parent.clone();
            out.push(n);
        }
        out
    }

    pub fn is_subconcept(&self, name: &str, of: &str) -> bool {
        self.concept_lineage(name).iter().any(|c| c == of)
    }

    pub fn is_variable_concept(&self, name: &str) -> bool {
        self.concept(name).is_some_and(|(_, c)| c.is_variable)
    }

    /// Whether `name` denotes something whose extent may change over time.
    pub fn is_variable_element(&self, name: &str) -> bool {
        match self.get(name).map(|s| s.kind) {
            Some(ElementKind::Concept) => self.is_variable_concept(name),
            Some(ElementKind::Relation) => self.relation(name).is_some_and(|(_, r)| r.is_variable),
            Some(ElementKind::Attribute) => {
                self.attribute(name).is_some_and(|(_, a)| a.is_variable)
            }
            _ => false,
        }
    }

    pub fn resolves(&self, name: &str) -> bool {
        self.symbols.contains_key(name) || is_default_set(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueOwner {
    Set(String),
    Anonymous(String),
}
