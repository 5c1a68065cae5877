use std::fmt::Write;

use crate::bsystem::{
    Action, ActionKind, Classification, Component, ComponentKind, Event, EventStatus, Labeled,
    LogicFormula, SetDecl,
};
use crate::formula::{render, RenderMode};

struct Printer {
    mode: RenderMode,
    out: String,
}

impl Printer {
    fn line(&mut self, indent: usize, text: &str) {
        let _ = writeln!(self.out, "{:width$}{text}", "", width = indent * 2);
    }

    fn and(&self) -> &'static str {
        match self.mode {
            RenderMode::Ascii => "&",
            RenderMode::Unicode => "∧",
        }
    }

    fn par(&self) -> &'static str {
        match self.mode {
            RenderMode::Ascii => "||",
            RenderMode::Unicode => "∥",
        }
    }

    fn assign(&self) -> &'static str {
        match self.mode {
            RenderMode::Ascii => ":=",
            RenderMode::Unicode => "≔",
        }
    }

    /// `(label) [& ]text`; the label is dropped when empty.
    fn entry(&mut self, indent: usize, label: &str, joiner: Option<&str>, text: &str) {
        let mut s = String::new();
        if !label.is_empty() {
            let _ = write!(s, "({label}) ");
        }
        if let Some(j) = joiner {
            s.push_str(j);
            s.push(' ');
        }
        s.push_str(text);
        self.line(indent, &s);
    }

    fn formulas(&mut self, indent: usize, fs: &[LogicFormula]) {
        for (i, lf) in fs.iter().enumerate() {
            let mut text = render(&lf.formula, self.mode);
            if lf.classification == Classification::Theorem {
                text = format!("theorem {text}");
            }
            let joiner = (i > 0).then(|| self.and());
            self.entry(indent, &lf.label, joiner, &text);
        }
    }

    fn guards(&mut self, indent: usize, gs: &[Labeled]) {
        for (i, g) in gs.iter().enumerate() {
            let text = render(&g.formula, self.mode);
            let joiner = (i > 0).then(|| self.and());
            self.entry(indent, &g.label, joiner, &text);
        }
    }

    fn actions(&mut self, indent: usize, acts: &[Action]) {
        if acts.is_empty() {
            self.line(indent, "skip");
        }
        for (i, a) in acts.iter().enumerate() {
            let target = render(&a.target, self.mode);
            let text = match &a.kind {
                ActionKind::Assign(v) => format!("{target} {} {}", self.assign(), render(v, self.mode)),
                ActionKind::BecomesIn(v) => format!("{target} :: {}", render(v, self.mode)),
            };
            let joiner = (i > 0).then(|| self.par());
            self.entry(indent, &a.label, joiner, &text);
        }
    }

    fn event(&mut self, indent: usize, e: &Event) {
        self.line(indent, &format!("{} =", e.name));
        let prefix = match e.status {
            EventStatus::Convergent => "convergent ",
            EventStatus::Ordinary => "",
        };
        if !e.params.is_empty() {
            self.line(indent + 1, &format!("{prefix}ANY {} WHERE", e.params.join(", ")));
            self.guards(indent + 2, &e.guards);
            self.line(indent + 1, "THEN");
        } else if !e.guards.is_empty() {
            self.line(indent + 1, &format!("{prefix}WHEN"));
            self.guards(indent + 2, &e.guards);
            self.line(indent + 1, "THEN");
        } else {
            self.line(indent + 1, &format!("{prefix}BEGIN"));
        }
        self.actions(indent + 2, &e.actions);
        self.line(indent + 1, "END");
    }
}

fn set_decl(s: &SetDecl) -> String {
    match s {
        SetDecl::Abstract {
            name,
            annotation: Some(a),
        } => format!("/*@ {a} */ {name}"),
        SetDecl::Abstract { name, .. } => name.clone(),
        SetDecl::Enumerated { name, items } => format!("{name} = {{{}}}", items.join(", ")),
    }
}

/// Prints a component in the layout read back by the `.bsys` parser.
pub fn print_component(c: &Component, mode: RenderMode) -> String {
    let mut p = Printer {
        mode,
        out: String::new(),
    };
    match &c.kind {
        ComponentKind::System => {
            p.line(0, "SYSTEM");
            p.line(1, &c.name);
        }
        ComponentKind::Refinement { refines } => {
            p.line(0, "REFINEMENT");
            p.line(1, &c.name);
            p.line(0, "REFINES");
            p.line(1, refines);
        }
    }
    if !c.sets.is_empty() {
        p.line(0, "SETS");
        let n = c.sets.len();
        for (i, s) in c.sets.iter().enumerate() {
            let sep = if i + 1 < n { ";" } else { "" };
            p.line(1, &format!("{}{sep}", set_decl(s)));
        }
    }
    if !c.constants.is_empty() {
        p.line(0, "CONSTANTS");
        p.line(1, &c.constants.join(", "));
    }
    if !c.properties.is_empty() {
        p.line(0, "PROPERTIES");
        p.formulas(1, &c.properties);
    }
    if !c.variables.is_empty() {
        p.line(0, "VARIABLES");
        p.line(1, &c.variables.join(", "));
    }
    if !c.invariants.is_empty() {
        p.line(0, "INVARIANT");
        p.formulas(1, &c.invariants);
    }
    if !c.initialisation.is_empty() {
        p.line(0, "INITIALISATION");
        for (i, s) in c.initialisation.iter().enumerate() {
            let text = format!("{} {} {}", s.target, p.assign(), render(&s.value, mode));
            let joiner = (i > 0).then(|| p.par());
            p.entry(1, &s.label, joiner, &text);
        }
    }
    if !c.events.is_empty() {
        p.line(0, "EVENTS");
        for e in &c.events {
            p.event(1, e);
        }
    }
    p.line(0, "END");
    p.out
}

/// Prints an event fragment file.
pub fn print_events(events: &[Event], mode: RenderMode) -> String {
    let mut p = Printer {
        mode,
        out: String::new(),
    };
    p.line(0, "EVENTS");
    for e in events {
        p.event(1, e);
    }
    p.out
}
