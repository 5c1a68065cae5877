use std::fmt::Write;

use crate::formula::{render, RenderMode};
use crate::goal::Obligations;

/// Lists each refinement's theorems, symbolic form first, then expanded.
pub fn print_obligations(obligations: &[Obligations], mode: RenderMode) -> String {
    let mut out = String::new();
    for ob in obligations {
        let r = &ob.refinement;
        let _ = writeln!(out, "COMPONENT {}", ob.component);
        let _ = writeln!(out, "  {} {} ({})", r.parent, r.operator, r.children.join(", "));
        for th in &ob.theorems {
            let _ = writeln!(out, "  ({}) {}", th.label, render(&th.symbolic, mode));
            let _ = writeln!(out, "    {}", render(&th.expanded, mode));
        }
        out.push('\n');
    }
    out
}
