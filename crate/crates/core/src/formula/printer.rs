use super::{Assoc, BinOp, Formula, Quantifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderMode {
    #[default]
    Ascii,
    Unicode,
}

const NEG_PRECEDENCE: u8 = 13;
const ATOMIC: u8 = 15;

/// Renders with the fewest parentheses that still parse back to `f`.
pub fn render(f: &Formula, mode: RenderMode) -> String {
    let mut out = String::new();
    write(f, mode, &mut out);
    out
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Binary { op, .. } => op.precedence(),
        Formula::Neg(_) => NEG_PRECEDENCE,
        _ => ATOMIC,
    }
}

fn accepts_postfix(f: &Formula) -> bool {
    matches!(
        f,
        Formula::Ident(_)
            | Formula::Num(_)
            | Formula::Truth
            | Formula::EmptySet
            | Formula::SetLit(_)
            | Formula::App { .. }
            | Formula::Image { .. }
            | Formula::Inverse(_)
    )
}

fn write_paren(f: &Formula, paren: bool, mode: RenderMode, out: &mut String) {
    if paren {
        out.push('(');
    }
    write(f, mode, out);
    if paren {
        out.push(')');
    }
}

fn write_list(items: &[Formula], mode: RenderMode, out: &mut String) {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write(item, mode, out);
    }
}

fn op_text(op: BinOp, mode: RenderMode) -> &'static str {
    match mode {
        RenderMode::Ascii => op.ascii(),
        RenderMode::Unicode => op.unicode(),
    }
}

fn write(f: &Formula, mode: RenderMode, out: &mut String) {
    let uni = mode == RenderMode::Unicode;
    match f {
        Formula::Ident(n) => out.push_str(n),
        Formula::Num(n) => out.push_str(&n.to_string()),
        Formula::Truth => out.push_str("btrue"),
        Formula::EmptySet => out.push_str(if uni { "∅" } else { "{}" }),
        Formula::SetLit(items) => {
            out.push('{');
            write_list(items, mode, out);
            out.push('}');
        }
        Formula::Quant {
            quantifier,
            vars,
            body,
        } => {
            out.push_str(match (quantifier, uni) {
                (Quantifier::ForAll, false) => "!",
                (Quantifier::ForAll, true) => "∀",
                (Quantifier::Exists, false) => "#",
                (Quantifier::Exists, true) => "∃",
            });
            out.push_str(&vars.join(","));
            out.push_str(".(");
            write(body, mode, out);
            out.push(')');
        }
        Formula::Not(inner) => {
            out.push_str(if uni { "¬(" } else { "not(" });
            write(inner, mode, out);
            out.push(')');
        }
        Formula::Neg(inner) => {
            out.push('-');
            write_paren(inner, precedence(inner) < NEG_PRECEDENCE, mode, out);
        }
        Formula::Binary { op, lhs, rhs } => {
            let p = op.precedence();
            let lp = precedence(lhs);
            let rp = precedence(rhs);
            write_paren(lhs, lp < p || (lp == p && op.assoc() != Assoc::Left), mode, out);
            let text = op_text(*op, mode);
            if matches!(op, BinOp::Range) {
                out.push_str(text);
            } else {
                out.push(' ');
                out.push_str(text);
                out.push(' ');
            }
            write_paren(rhs, rp <= p, mode, out);
        }
        Formula::App { func, args } => {
            write_paren(func, !accepts_postfix(func), mode, out);
            out.push('(');
            write_list(args, mode, out);
            out.push(')');
        }
        Formula::Image { rel, set } => {
            write_paren(rel, !accepts_postfix(rel), mode, out);
            out.push('[');
            write(set, mode, out);
            out.push(']');
        }
        Formula::Inverse(rel) => {
            write_paren(rel, !accepts_postfix(rel), mode, out);
            out.push_str(if uni { "⁻¹" } else { "~" });
        }
    }
}
