use super::{ColoredTangle, Op, Sign};
use crate::error::{Error, Result};

/// A local Reidemeister move on a Morse diagram.
///
/// `level` counts ops from the top (0 = above the first op) and `position`
/// is the 1-based strand position at that level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Adds a kink of the given sign to the strand at `position`.
    R1 { level: usize, position: usize, sign: Sign },
    /// Pushes the strand at `position` across its right neighbour, creating
    /// two crossings of opposite sign.
    R2 { level: usize, position: usize, sign: Sign },
    /// Rewrites the three consecutive crossings starting at op `index`.
    R3 { index: usize },
}

pub fn reidemeister(t: &ColoredTangle, mv: Move) -> Result<ColoredTangle> {
    let trace = t.trace();
    let mut ops = t.ops().to_vec();
    let (hints, new_ops) = match mv {
        Move::R1 { level, position, sign } => {
            check_site(&trace.widths, level, position, 0)?;
            let insert = [Op::Cup { position: position + 1 }, Op::cross(position, sign), Op::Cap { position: position + 1 }];
            ops.splice(level..level, insert);
            (t.hints_with(true, false, |l, p| Some((if l > level { l + 3 } else { l }, p))), ops)
        }
        Move::R2 { level, position, sign } => {
            check_site(&trace.widths, level, position, 1)?;
            let insert = [Op::cross(position, sign), Op::cross(position, sign.flipped())];
            ops.splice(level..level, insert);
            (t.hints_with(true, false, |l, p| Some((if l > level { l + 2 } else { l }, p))), ops)
        }
        Move::R3 { index } => {
            let window = ops.get(index..index + 3).ok_or_else(|| bad_site("no three ops at this index"))?;
            let (a, s1, b, s2, c, s3) = match *window {
                [Op::Cross { position: a, sign: s1 }, Op::Cross { position: b, sign: s2 }, Op::Cross { position: c, sign: s3 }] => {
                    (a, s1, b, s2, c, s3)
                }
                _ => return Err(bad_site("R3 needs three consecutive crossings")),
            };
            if a != c || a.abs_diff(b) != 1 {
                return Err(bad_site("R3 needs the pattern x y x on adjacent positions"));
            }
            if s1 == s3 && s2 != s1 {
                return Err(bad_site("this sign pattern does not admit a third move"));
            }
            ops[index] = Op::cross(b, s3);
            ops[index + 1] = Op::cross(a, s2);
            ops[index + 2] = Op::cross(b, s1);
            let hidden = (index + 1)..=(index + 2);
            (t.hints_with(true, false, |l, p| (!hidden.contains(&l)).then_some((l, p))), ops)
        }
    };
    ColoredTangle::from_hints(t.top_width(), new_ops, &hints)
}

fn bad_site(msg: &str) -> Error {
    Error::BadSite(msg.to_string())
}

fn check_site(widths: &[usize], level: usize, position: usize, extra: usize) -> Result<()> {
    let w = *widths.get(level).ok_or_else(|| bad_site("level beyond the diagram"))?;
    if position == 0 || position + extra > w {
        return Err(bad_site("no strand at this position"));
    }
    Ok(())
}
