use super::ParseError;
use crate::bsystem::{
    Action, ActionKind, Classification, Component, ComponentKind, Event, EventStatus, Labeled,
    LogicFormula, SetDecl, Substitution,
};
use crate::formula::{Cursor, Formula, LexOptions, Token};

const CLAUSES: &[&str] = &[
    "SETS",
    "CONSTANTS",
    "PROPERTIES",
    "VARIABLES",
    "INVARIANT",
    "INITIALISATION",
    "EVENTS",
];

/// Keywords that end a formula list or an event part.
const STOP: &[&str] = &[
    "SETS",
    "CONSTANTS",
    "PROPERTIES",
    "VARIABLES",
    "INVARIANT",
    "INITIALISATION",
    "EVENTS",
    "END",
    "THEN",
    "WHERE",
];

/// Parses a `SYSTEM` or `REFINEMENT` component.
pub fn parse_bsystem(text: &str) -> Result<Component, ParseError> {
    let mut c = Cursor::from_source(text, LexOptions { labels: true })?;
    let mut comp = if c.eat_keyword("SYSTEM") {
        Component::new(c.expect_ident()?, ComponentKind::System)
    } else if c.eat_keyword("REFINEMENT") {
        let name = c.expect_ident()?;
        c.expect_keyword("REFINES")?;
        let refines = c.expect_ident()?;
        Component::new(name, ComponentKind::Refinement { refines })
    } else {
        return Err(c.unexpected("'SYSTEM' or 'REFINEMENT'").into());
    };
    let mut seen: Vec<&str> = Vec::new();
    loop {
        if c.eat_keyword("END") {
            break;
        }
        let span = c.span();
        let Some(&clause) = CLAUSES.iter().find(|k| c.is_keyword(k)) else {
            return Err(c.unexpected("clause keyword or 'END'").into());
        };
        if seen.contains(&clause) {
            return Err(ParseError::DuplicateClause {
                clause: clause.to_string(),
                line: span.line,
                column: span.column,
            });
        }
        seen.push(clause);
        c.next();
        match clause {
            "SETS" => comp.sets = sets(&mut c)?,
            "CONSTANTS" => comp.constants = c.ident_list()?,
            "VARIABLES" => comp.variables = c.ident_list()?,
            "PROPERTIES" => comp.properties = formulas(&mut c, Classification::Property)?,
            "INVARIANT" => comp.invariants = formulas(&mut c, Classification::Invariant)?,
            "INITIALISATION" => comp.initialisation = initialisation(&mut c)?,
            _ => comp.events = events(&mut c, true)?,
        }
    }
    if !c.at_eof() {
        return Err(c.unexpected("end of input").into());
    }
    Ok(comp)
}

/// Parses a file of event definitions, optionally headed by `EVENTS`.
pub fn parse_events(text: &str) -> Result<Vec<Event>, ParseError> {
    let mut c = Cursor::from_source(text, LexOptions { labels: true })?;
    c.eat_keyword("EVENTS");
    let evs = events(&mut c, false)?;
    c.eat_keyword("END");
    if !c.at_eof() {
        return Err(c.unexpected("event definition or end of input").into());
    }
    Ok(evs)
}

fn sets(c: &mut Cursor) -> Result<Vec<SetDecl>, ParseError> {
    let mut out = Vec::new();
    loop {
        let annotation = match c.peek() {
            Token::Directive(d) => {
                let d = d.clone();
                c.next();
                Some(d)
            }
            _ => None,
        };
        let name = c.expect_ident()?;
        if c.eat_op("=") {
            c.expect(&Token::LBrace)?;
            let items = if matches!(c.peek(), Token::RBrace) {
                Vec::new()
            } else {
                c.ident_list()?
            };
            c.expect(&Token::RBrace)?;
            out.push(SetDecl::Enumerated { name, items });
        } else if matches!(c.peek(), Token::EmptySet) {
            return Err(c.unexpected("'='").into());
        } else {
            out.push(SetDecl::Abstract { name, annotation });
        }
        if !c.eat_op(";") {
            return Ok(out);
        }
    }
}

fn label(c: &mut Cursor) -> Option<String> {
    match c.peek() {
        Token::Label(l) => {
            let l = l.clone();
            c.next();
            Some(l)
        }
        _ => None,
    }
}

fn at_stop(c: &Cursor) -> bool {
    c.at_eof() || STOP.iter().any(|k| c.is_keyword(k))
}

fn formulas(c: &mut Cursor, class: Classification) -> Result<Vec<LogicFormula>, ParseError> {
    let mut out = Vec::new();
    while !at_stop(c) {
        let l = label(c).unwrap_or_default();
        if !out.is_empty() {
            c.expect_op("&")?;
        } else {
            c.eat_op("&");
        }
        let class = if c.eat_keyword("theorem") {
            Classification::Theorem
        } else {
            class
        };
        out.push(LogicFormula::text(l, c.formula()?, class));
    }
    Ok(out)
}

fn guards(c: &mut Cursor) -> Result<Vec<Labeled>, ParseError> {
    let mut out = Vec::new();
    while !at_stop(c) {
        let l = label(c).unwrap_or_else(|| format!("grd{}", out.len() + 1));
        if !out.is_empty() {
            c.expect_op("&")?;
        }
        out.push(Labeled {
            label: l,
            formula: c.formula()?,
        });
    }
    Ok(out)
}

fn actions(c: &mut Cursor) -> Result<Vec<Action>, ParseError> {
    let mut out = Vec::new();
    if c.eat_keyword("skip") {
        return Ok(out);
    }
    while !at_stop(c) {
        let l = label(c).unwrap_or_else(|| format!("act{}", out.len() + 1));
        if !out.is_empty() {
            c.expect_op("||")?;
        }
        let target = c.formula()?;
        let kind = if c.eat_op(":=") {
            ActionKind::Assign(c.formula()?)
        } else if c.eat_op("::") {
            ActionKind::BecomesIn(c.formula()?)
        } else {
            return Err(c.unexpected("':=' or '::'").into());
        };
        out.push(Action {
            label: l,
            target,
            kind,
        });
    }
    Ok(out)
}

fn initialisation(c: &mut Cursor) -> Result<Vec<Substitution>, ParseError> {
    let mut out = Vec::new();
    for a in actions(c)? {
        let target = match &a.target {
            Formula::Ident(x) => x.clone(),
            _ => return Err(c.error("initialisation must assign whole variables").into()),
        };
        match a.kind {
            ActionKind::Assign(value) => out.push(Substitution {
                label: a.label,
                target,
                value,
            }),
            ActionKind::BecomesIn(_) => {
                return Err(c.error("initialisation only supports ':='").into())
            }
        }
    }
    Ok(out)
}

/// Event list; inside a component it stops at the closing `END`.
fn events(c: &mut Cursor, in_component: bool) -> Result<Vec<Event>, ParseError> {
    let mut out: Vec<Event> = Vec::new();
    loop {
        let is_event = matches!(c.peek(), Token::Ident(_)) && matches!(c.peek_at(1), Token::Op("="));
        if !is_event {
            if in_component || c.at_eof() || c.is_keyword("END") {
                return Ok(out);
            }
            return Err(c.unexpected("event definition").into());
        }
        let span = c.span();
        let name = c.expect_ident()?;
        c.expect_op("=")?;
        if out.iter().any(|e| e.name == name) {
            return Err(crate::error::SyntaxError::new(
                span.line,
                span.column,
                format!("event {name} is defined twice"),
            )
            .into());
        }
        let mut ev = Event::empty(name);
        if c.eat_keyword("convergent") {
            ev.status = EventStatus::Convergent;
        }
        if c.eat_keyword("ANY") {
            ev.params = c.ident_list()?;
            c.expect_keyword("WHERE")?;
            ev.guards = guards(c)?;
            c.expect_keyword("THEN")?;
        } else if c.eat_keyword("WHEN") {
            ev.guards = guards(c)?;
            c.expect_keyword("THEN")?;
        } else {
            c.expect_keyword("BEGIN")?;
        }
        ev.actions = actions(c)?;
        c.expect_keyword("END")?;
        out.push(ev);
    }
}
