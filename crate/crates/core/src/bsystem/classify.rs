use std::collections::BTreeSet;

use thiserror::Error;

use super::{Classification, Component, LogicFormula, Operator};
use crate::formula::{is_builtin, BinOp, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{name} is not declared in {component} or its ancestors")]
    UnknownName { component: String, name: String },
}

/// Declarations visible from one component of a refinement chain.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    component: String,
    statics: BTreeSet<String>,
    own_variables: BTreeSet<String>,
    inherited_variables: BTreeSet<String>,
}

impl Environment {
    /// `chain` is root-first and ends with the component being classified.
    pub fn new(chain: &[&Component]) -> Self {
        let mut env = Environment::default();
        let Some((current, ancestors)) = chain.split_last() else {
            return env;
        };
        env.component = current.name.clone();
        for c in ancestors {
            env.absorb_statics(c);
            env.inherited_variables.extend(c.variables.iter().cloned());
        }
        env.absorb_statics(current);
        env.own_variables.extend(current.variables.iter().cloned());
        for v in &env.own_variables {
            env.inherited_variables.remove(v);
        }
        env
    }

    fn absorb_statics(&mut self, c: &Component) {
        for s in &c.sets {
            self.statics.insert(s.name().to_string());
            self.statics.extend(s.items().iter().cloned());
        }
        self.statics.extend(c.constants.iter().cloned());
    }

    pub fn declare_constant(&mut self, name: &str) {
        self.statics.insert(name.to_string());
    }

    pub fn declare_variable(&mut self, name: &str) {
        self.own_variables.insert(name.to_string());
    }

    pub fn is_variable(&self, name: &str) -> bool {
        self.own_variables.contains(name) || self.inherited_variables.contains(name)
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.statics.contains(name) || self.is_variable(name) || is_builtin(name)
    }

    /// Property iff no variable is referenced; gluing invariant iff both a
    /// variable of this component and an inherited one are referenced.
    pub fn classify(&self, f: &Formula) -> Result<Classification, ClassifyError> {
        let mut own = false;
        let mut inherited = false;
        for name in f.free_names() {
            if self.own_variables.contains(&name) {
                own = true;
            } else if self.inherited_variables.contains(&name) {
                inherited = true;
            } else if !self.is_declared(&name) {
                return Err(ClassifyError::UnknownName {
                    component: self.component.clone(),
                    name,
                });
            }
        }
        Ok(match (own, inherited) {
            (false, false) => Classification::Property,
            (true, true) => Classification::GluingInvariant,
            _ => Classification::Invariant,
        })
    }
}

pub fn classify_formula(
    f: &LogicFormula,
    chain: &[&Component],
) -> Result<Classification, ClassifyError> {
    Environment::new(chain).classify(&f.formula)
}

/// The formula typing `name`: `name : S`, `name <: S`, or the definition
/// `name = A arrow B` of a type constant.
pub fn lookup_typing<'a>(comp: &'a Component, name: &str) -> Option<&'a LogicFormula> {
    comp.formulas().find(|lf| {
        if let Some(s) = &lf.structure {
            if matches!(s.operator, Operator::Inclusion | Operator::Belonging) {
                return s.operands.first().is_some_and(|o| o == name);
            }
        }
        match &lf.formula {
            Formula::Binary {
                op: BinOp::In | BinOp::Subset,
                lhs,
                ..
            } => lhs.as_ident() == Some(name),
            Formula::Binary {
                op: BinOp::Eq,
                lhs,
                rhs,
            } => {
                lhs.as_ident() == Some(name)
                    && matches!(**rhs, Formula::Binary { op: BinOp::Arrow(_), .. })
            }
            _ => false,
        }
    })
}
