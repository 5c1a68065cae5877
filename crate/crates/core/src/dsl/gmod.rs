use super::ParseError;
use crate::formula::{Cursor, LexOptions, Token};
use crate::goal::{GoalModel, Refinement, RefinementOp};

/// Parses `goal model NAME { goal G ... refine P OP (C1, C2, ...) ... }`.
///
/// Goals named only in a `refine` line are declared implicitly, in order of
/// first appearance.
pub fn parse_goal_model(text: &str) -> Result<GoalModel, ParseError> {
    let mut c = Cursor::from_source(text, LexOptions::default())?;
    c.expect_keyword("goal")?;
    c.expect_keyword("model")?;
    let mut gm = GoalModel {
        name: c.expect_ident()?,
        ..GoalModel::default()
    };
    c.expect(&Token::LBrace)?;
    let declare = |gm: &mut GoalModel, g: &str| {
        if !gm.goals.iter().any(|x| x == g) {
            gm.goals.push(g.to_string());
        }
    };
    while !c.eat(&Token::RBrace) {
        if c.eat_keyword("goal") {
            let span = c.span();
            let g = c.expect_ident()?;
            if gm.goals.contains(&g) {
                return Err(crate::error::SyntaxError::new(
                    span.line,
                    span.column,
                    format!("goal {g} is declared twice"),
                )
                .into());
            }
            gm.goals.push(g);
        } else if c.eat_keyword("refine") {
            let parent = c.expect_ident()?;
            let op = match c.peek() {
                Token::Ident(kw) => RefinementOp::from_keyword(kw),
                _ => None,
            }
            .ok_or_else(|| c.unexpected("AND, OR or MILESTONE"))?;
            c.next();
            c.expect(&Token::LParen)?;
            let children = c.ident_list()?;
            c.expect(&Token::RParen)?;
            declare(&mut gm, &parent);
            for ch in &children {
                declare(&mut gm, ch);
            }
            gm.refinements.push(Refinement {
                parent,
                operator: op,
                children,
            });
        } else {
            return Err(c.unexpected("'goal', 'refine' or '}'").into());
        }
    }
    if !c.at_eof() {
        return Err(c.unexpected("end of input").into());
    }
    gm.levels()?;
    Ok(gm)
}
