use std::fmt::Write;

use crate::goal::GoalModel;

pub fn print_goal_model(gm: &GoalModel) -> String {
    let mut out = format!("goal model {} {{\n", gm.name);
    for g in &gm.goals {
        let _ = writeln!(out, "  goal {g}");
    }
    for r in &gm.refinements {
        let _ = writeln!(out, "  refine {} {} ({})", r.parent, r.operator, r.children.join(", "));
    }
    out.push_str("}\n");
    out
}
