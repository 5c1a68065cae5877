use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RefinementOp {
    And,
    Or,
    Milestone,
}

impl RefinementOp {
    pub fn keyword(self) -> &'static str {
        match self {
            RefinementOp::And => "AND",
            RefinementOp::Or => "OR",
            RefinementOp::Milestone => "MILESTONE",
        }
    }

    pub fn from_keyword(kw: &str) -> Option<Self> {
        match kw {
            "AND" => Some(RefinementOp::And),
            "OR" => Some(RefinementOp::Or),
            "MILESTONE" => Some(RefinementOp::Milestone),
            _ => None,
        }
    }
}

impl fmt::Display for RefinementOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub parent: String,
    pub operator: RefinementOp,
    pub children: Vec<String>,
}

/// A goal hierarchy; one refinement per refined goal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoalModel {
    pub name: String,
    pub goals: Vec<String>,
    pub refinements: Vec<Refinement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoalModelError {
    #[error("goal {0} is declared twice")]
    DuplicateGoal(String),
    #[error("goal {0} is not declared")]
    UnknownGoal(String),
    #[error("goal model has no root goal")]
    NoRoot,
    #[error("goal model has several root goals: {}", .0.join(", "))]
    MultipleRoots(Vec<String>),
    #[error("goal {0} is refined by more than one refinement")]
    RefinedTwice(String),
    #[error("goal {0} is a child of more than one refinement")]
    SharedChild(String),
    #[error("goal {0} is not reachable from the root")]
    Unreachable(String),
}

impl GoalModel {
    /// Checks the hierarchy and returns its goals grouped by depth.
    pub fn levels(&self) -> Result<Vec<Vec<String>>, GoalModelError> {
        let mut declared: Vec<&str> = Vec::new();
        for g in &self.goals {
            if declared.contains(&g.as_str()) {
                return Err(GoalModelError::DuplicateGoal(g.clone()));
            }
            declared.push(g);
        }
        let mut parent_of: BTreeMap<&str, &str> = BTreeMap::new();
        let mut refined: BTreeMap<&str, &Refinement> = BTreeMap::new();
        for r in &self.refinements {
            for g in std::iter::once(&r.parent).chain(&r.children) {
                if !declared.contains(&g.as_str()) {
                    return Err(GoalModelError::UnknownGoal(g.clone()));
                }
            }
            if refined.insert(&r.parent, r).is_some() {
                return Err(GoalModelError::RefinedTwice(r.parent.clone()));
            }
            for c in &r.children {
                if parent_of.insert(c, &r.parent).is_some() {
                    return Err(GoalModelError::SharedChild(c.clone()));
                }
            }
        }
        let roots: Vec<String> = declared
            .iter()
            .filter(|g| !parent_of.contains_key(*g))
            .map(|g| g.to_string())
            .collect();
        let root = match roots.as_slice() {
            [] => return Err(GoalModelError::NoRoot),
            [r] => r.clone(),
            _ => return Err(GoalModelError::MultipleRoots(roots)),
        };
        let mut levels: Vec<Vec<String>> = Vec::new();
        let mut queue = VecDeque::from([(root, 0usize)]);
        let mut seen = 0;
        while let Some((g, depth)) = queue.pop_front() {
            seen += 1;
            if seen > declared.len() {
                return Err(GoalModelError::Unreachable(g));
            }
            if levels.len() <= depth {
                levels.push(Vec::new());
            }
            if let Some(r) = refined.get(g.as_str()) {
                queue.extend(r.children.iter().map(|c| (c.clone(), depth + 1)));
            }
            levels[depth].push(g);
        }
        if let Some(stray) = declared
            .iter()
            .find(|g| !levels.iter().flatten().any(|x| x == *g))
        {
            return Err(GoalModelError::Unreachable(stray.to_string()));
        }
        Ok(levels)
    }

    pub fn refinement_of(&self, goal: &str) -> Option<&Refinement> {
        self.refinements.iter().find(|r| r.parent == goal)
    }
}
