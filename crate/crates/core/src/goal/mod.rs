//! Goal hierarchies and the proof obligations of their refinement operators.

mod model;

use thiserror::Error;

use crate::bsystem::{ActionKind, Classification, Component, Event, LogicFormula};
use crate::formula::{BinOp, Formula};

pub use model::{GoalModel, GoalModelError, Refinement, RefinementOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoalError {
    #[error("no goal named {event} at the level of {component}")]
    UnknownEvent { component: String, event: String },
    #[error("goal model has {goal_levels} levels but only {components} components were generated")]
    LevelMismatch { goal_levels: usize, components: usize },
    #[error("action {label} of event {event} is not an assignment")]
    UnsupportedAction { event: String, label: String },
    #[error("{operator} refinement of {parent} needs at least {min} children, found {found}")]
    Arity {
        operator: RefinementOp,
        parent: String,
        min: usize,
        found: usize,
    },
    #[error(transparent)]
    Model(#[from] GoalModelError),
}

/// A formula together with the event parameters it leaves open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expanded {
    pub params: Vec<String>,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem {
    pub label: String,
    /// `A_Guard => B_Guard` form.
    pub symbolic: Formula,
    /// Universally closed implication between the expanded guards and posts.
    pub expanded: Formula,
}

/// Theorems generated for one refinement, placed in the children's component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obligations {
    pub component: String,
    pub refinement: Refinement,
    pub theorems: Vec<Theorem>,
}

pub fn expand_guard(e: &Event) -> Expanded {
    Expanded {
        params: e.params.clone(),
        formula: Formula::conjunction(e.guards.iter().map(|g| g.formula.clone())),
    }
}

pub fn expand_post(e: &Event) -> Result<Expanded, GoalError> {
    let mut atoms = Vec::new();
    for a in &e.actions {
        let ActionKind::Assign(value) = &a.kind else {
            return Err(GoalError::UnsupportedAction {
                event: e.name.clone(),
                label: a.label.clone(),
            });
        };
        let primed = match &a.target {
            Formula::Ident(x) => Formula::ident(format!("{x}'")),
            Formula::App { func, args } => match &**func {
                Formula::Ident(f) => Formula::app(format!("{f}'"), args.clone()),
                _ => {
                    return Err(GoalError::UnsupportedAction {
                        event: e.name.clone(),
                        label: a.label.clone(),
                    })
                }
            },
            _ => {
                return Err(GoalError::UnsupportedAction {
                    event: e.name.clone(),
                    label: a.label.clone(),
                })
            }
        };
        atoms.push(Formula::binary(BinOp::Eq, primed, value.clone()));
    }
    Ok(Expanded {
        params: e.params.clone(),
        formula: Formula::conjunction(atoms),
    })
}

#[derive(Clone, Copy)]
enum Side {
    Guard,
    Post,
}

struct Term<'a> {
    event: &'a Event,
    side: Side,
    negated: bool,
}

fn guard(event: &Event) -> Term<'_> {
    Term {
        event,
        side: Side::Guard,
        negated: false,
    }
}

fn post(event: &Event) -> Term<'_> {
    Term {
        event,
        side: Side::Post,
        negated: false,
    }
}

fn not_guard(event: &Event) -> Term<'_> {
    Term {
        event,
        side: Side::Guard,
        negated: true,
    }
}

impl Term<'_> {
    fn symbolic(&self) -> Formula {
        let suffix = match self.side {
            Side::Guard => "Guard",
            Side::Post => "Post",
        };
        let f = Formula::ident(format!("{}_{suffix}", self.event.name));
        if self.negated {
            Formula::Not(Box::new(f))
        } else {
            f
        }
    }

    fn expanded(&self) -> Result<Expanded, GoalError> {
        let mut x = match self.side {
            Side::Guard => expand_guard(self.event),
            Side::Post => expand_post(self.event)?,
        };
        if self.negated {
            x.formula = Formula::Not(Box::new(x.formula));
        }
        Ok(x)
    }
}

fn theorem(index: usize, lhs: &[Term], rhs: &Term) -> Result<Theorem, GoalError> {
    let mut params: Vec<String> = Vec::new();
    let mut parts = Vec::new();
    for t in lhs.iter().chain(std::iter::once(rhs)) {
        let x = t.expanded()?;
        for p in x.params {
            if !params.contains(&p) {
                params.push(p);
            }
        }
        parts.push(x.formula);
    }
    let consequent = parts.pop().expect("rhs is always present");
    Ok(Theorem {
        label: format!("s{index}"),
        symbolic: Formula::implies(
            Formula::conjunction(lhs.iter().map(Term::symbolic)),
            rhs.symbolic(),
        ),
        expanded: Formula::forall(
            params,
            Formula::implies(Formula::conjunction(parts), consequent),
        ),
    })
}

/// Proof obligations of one refinement step, labelled `s1`, `s2`, ...
pub fn generate_po_theorems(
    op: RefinementOp,
    parent: &Event,
    children: &[&Event],
) -> Result<Vec<Theorem>, GoalError> {
    let min = match op {
        RefinementOp::And | RefinementOp::Or => 2,
        RefinementOp::Milestone => 1,
    };
    if children.len() < min {
        return Err(GoalError::Arity {
            operator: op,
            parent: parent.name.clone(),
            min,
            found: children.len(),
        });
    }
    let mut schema: Vec<(Vec<Term>, Term)> = Vec::new();
    match op {
        RefinementOp::And => {
            for c in children {
                schema.push((vec![guard(c)], guard(parent)));
            }
            schema.push((children.iter().map(|c| post(c)).collect(), post(parent)));
        }
        RefinementOp::Or => {
            for c in children {
                schema.push((vec![guard(c)], guard(parent)));
            }
            for c in children {
                schema.push((vec![post(c)], post(parent)));
            }
            for (i, ci) in children.iter().enumerate() {
                for (j, cj) in children.iter().enumerate() {
                    if i != j {
                        schema.push((vec![post(ci)], not_guard(cj)));
                    }
                }
            }
        }
        RefinementOp::Milestone => {
            schema.push((vec![guard(children[0])], guard(parent)));
            for w in children.windows(2) {
                schema.push((vec![post(w[0])], guard(w[1])));
            }
            schema.push((vec![post(children[children.len() - 1])], post(parent)));
        }
    }
    schema
        .iter()
        .enumerate()
        .map(|(i, (lhs, rhs))| theorem(i + 1, lhs, rhs))
        .collect()
}

/// Adds one empty event per goal to the component of the goal's level.
pub fn build_skeleton(gm: &GoalModel, components: &mut [Component]) -> Result<(), GoalError> {
    let levels = gm.levels()?;
    if levels.len() > components.len() {
        return Err(GoalError::LevelMismatch {
            goal_levels: levels.len(),
            components: components.len(),
        });
    }
    for (goals, comp) in levels.iter().zip(components.iter_mut()) {
        for g in goals {
            if comp.event(g).is_none() {
                comp.events.push(Event::empty(g.clone()));
            }
        }
    }
    Ok(())
}

/// Merges user-written event bodies into the skeleton.
///
/// A body may target a goal of the component's own level, or extend a leaf
/// goal of an earlier level; the latter is appended as a new event.
pub fn attach_event_bodies(
    gm: &GoalModel,
    components: &mut [Component],
    bodies: &[(String, Vec<Event>)],
) -> Result<(), GoalError> {
    let levels = gm.levels()?;
    for (component, events) in bodies {
        let Some(level) = components.iter().position(|c| &c.name == component) else {
            return Err(GoalError::UnknownEvent {
                component: component.clone(),
                event: events.first().map(|e| e.name.clone()).unwrap_or_default(),
            });
        };
        for body in events {
            let at_level = levels.get(level).is_some_and(|g| g.contains(&body.name));
            let inherited_leaf = levels
                .iter()
                .take(level)
                .flatten()
                .any(|g| g == &body.name && gm.refinement_of(g).is_none());
            if !at_level && !inherited_leaf {
                return Err(GoalError::UnknownEvent {
                    component: component.clone(),
                    event: body.name.clone(),
                });
            }
            let comp = &mut components[level];
            match comp.events.iter_mut().find(|e| e.name == body.name) {
                Some(slot) => *slot = body.clone(),
                None => comp.events.push(body.clone()),
            }
        }
    }
    Ok(())
}

/// Generates the obligations of every refinement and appends them as
/// theorems to the invariants of the children's component.
pub fn attach_theorems(
    gm: &GoalModel,
    components: &mut [Component],
) -> Result<Vec<Obligations>, GoalError> {
    let levels = gm.levels()?;
    if levels.len() > components.len() {
        return Err(GoalError::LevelMismatch {
            goal_levels: levels.len(),
            components: components.len(),
        });
    }
    let mut out = Vec::new();
    for (depth, goals) in levels.iter().enumerate().skip(1) {
        let mut counter = 0;
        for r in &gm.refinements {
            if !goals.contains(&r.children[0]) {
                continue;
            }
            let parent = find_event(&components[depth - 1], &r.parent);
            let children: Vec<Event> = r
                .children
                .iter()
                .map(|c| find_event(&components[depth], c))
                .collect();
            let refs: Vec<&Event> = children.iter().collect();
            let mut theorems = generate_po_theorems(r.operator, &parent, &refs)?;
            let comp = &mut components[depth];
            for t in &mut theorems {
                counter += 1;
                t.label = format!("s{counter}");
                comp.invariants.push(LogicFormula::text(
                    t.label.clone(),
                    t.symbolic.clone(),
                    Classification::Theorem,
                ));
            }
            out.push(Obligations {
                component: comp.name.clone(),
                refinement: r.clone(),
                theorems,
            });
        }
    }
    Ok(out)
}

fn find_event(comp: &Component, name: &str) -> Event {
    comp.event(name)
        .cloned()
        .unwrap_or_else(|| Event::empty(name))
}
