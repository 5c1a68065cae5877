use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceKind {
    DomainModelComponent,
    ConceptAbstractSet,
    ConceptConstant,
    ConceptVariable,
    DataSetSet,
    DataSetConstant,
    DataValueSetItem,
    DataValueConstant,
    IndividualConstant,
    RelationTypeConstant,
    RelationElement,
    AttributeTypeConstant,
    AttributeElement,
    PredicateLogicFormula,
}

impl TraceKind {
    pub const ALL: [TraceKind; 14] = [
        TraceKind::DomainModelComponent,
        TraceKind::ConceptAbstractSet,
        TraceKind::ConceptConstant,
        TraceKind::ConceptVariable,
        TraceKind::DataSetSet,
        TraceKind::DataSetConstant,
        TraceKind::DataValueSetItem,
        TraceKind::DataValueConstant,
        TraceKind::IndividualConstant,
        TraceKind::RelationTypeConstant,
        TraceKind::RelationElement,
        TraceKind::AttributeTypeConstant,
        TraceKind::AttributeElement,
        TraceKind::PredicateLogicFormula,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TraceKind::DomainModelComponent => "DomainModel_Component",
            TraceKind::ConceptAbstractSet => "Concept_AbstractSet",
            TraceKind::ConceptConstant => "Concept_Constant",
            TraceKind::ConceptVariable => "Concept_Variable",
            TraceKind::DataSetSet => "DataSet_Set",
            TraceKind::DataSetConstant => "DataSet_Constant",
            TraceKind::DataValueSetItem => "DataValue_SetItem",
            TraceKind::DataValueConstant => "DataValue_Constant",
            TraceKind::IndividualConstant => "Individual_Constant",
            TraceKind::RelationTypeConstant => "Relation_TypeConstant",
            TraceKind::RelationElement => "Relation_Element",
            TraceKind::AttributeTypeConstant => "Attribute_TypeConstant",
            TraceKind::AttributeElement => "Attribute_Element",
            TraceKind::PredicateLogicFormula => "Predicate_LogicFormula",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        TraceKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceRecord {
    pub kind: TraceKind,
    /// `model.element`
    pub domain: String,
    /// `component.element`
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("{kind}: {domain} already corresponds to {existing}")]
    NotFunctional {
        kind: TraceKind,
        domain: String,
        existing: String,
    },
    #[error("{kind}: {b} is already the correspondent of {existing}")]
    NotInjective {
        kind: TraceKind,
        b: String,
        existing: String,
    },
}

/// Per-kind injective maps from domain elements to B System elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorrespondenceTrace {
    forward: BTreeMap<(TraceKind, String), String>,
    backward: BTreeMap<(TraceKind, String), String>,
}

pub fn qualify(owner: &str, name: &str) -> String {
    format!("{owner}.{name}")
}

/// Splits `owner.name` at the first dot; element names may contain dots.
pub fn unqualify(qname: &str) -> (&str, &str) {
    qname.split_once('.').unwrap_or(("", qname))
}

impl CorrespondenceTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        kind: TraceKind,
        domain: impl Into<String>,
        b: impl Into<String>,
    ) -> Result<(), TraceError> {
        let (domain, b) = (domain.into(), b.into());
        if let Some(existing) = self.forward.get(&(kind, domain.clone())) {
            if *existing == b {
                return Ok(());
            }
            return Err(TraceError::NotFunctional {
                kind,
                domain,
                existing: existing.clone(),
            });
        }
        if let Some(existing) = self.backward.get(&(kind, b.clone())) {
            return Err(TraceError::NotInjective {
                kind,
                b,
                existing: existing.clone(),
            });
        }
        self.forward.insert((kind, domain.clone()), b.clone());
        self.backward.insert((kind, b), domain);
        Ok(())
    }

    pub fn get(&self, kind: TraceKind, domain: &str) -> Option<&str> {
        self.forward.get(&(kind, domain.to_string())).map(String::as_str)
    }

    pub fn inverse(&self, kind: TraceKind, b: &str) -> Option<&str> {
        self.backward.get(&(kind, b.to_string())).map(String::as_str)
    }

    /// Finds the domain element behind a B name, whatever its kind.
    pub fn lookup_b(&self, b: &str) -> Option<(TraceKind, &str)> {
        TraceKind::ALL
            .into_iter()
            .find_map(|k| self.inverse(k, b).map(|d| (k, d)))
    }

    pub fn records(&self) -> impl Iterator<Item = TraceRecord> + '_ {
        self.forward.iter().map(|((kind, domain), b)| TraceRecord {
            kind: *kind,
            domain: domain.clone(),
            b: b.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Domain names recorded for one kind.
    pub fn domain_of(&self, kind: TraceKind) -> BTreeSet<&str> {
        self.forward
            .keys()
            .filter(|(k, _)| *k == kind)
            .map(|(_, d)| d.as_str())
            .collect()
    }

    /// Recomputes injectivity from the forward map alone.
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.forward
            .iter()
            .all(|((k, _), b)| seen.insert((*k, b.as_str())))
    }

    /// Adds every record of `other`; conflicts are reported, not overwritten.
    pub fn extend(&mut self, other: &CorrespondenceTrace) -> Result<(), TraceError> {
        for r in other.records() {
            self.insert(r.kind, r.domain, r.b)?;
        }
        Ok(())
    }
}
