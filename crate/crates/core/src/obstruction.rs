//! The linking-number parity that separates concordance classes of the
//! spheres `Σ_n`.
//!
//! A concordance between the red/blue lifts meets the lifted ball times the
//! interval in a surface whose boundary link `𝓛` splits into an inner tangle,
//! an outer tangle and one side tangle per boundary slot. The parity of
//! `lk(𝓛)` is computed both from the pieces and directly from the assembled
//! diagram.

use serde::Serialize;

use crate::covers::lift_sphere_tangles;
use crate::diagrams::{
    bicolored_linking, close_tangle, reverse_mirror, BicoloredLink, BraidWord, Color, ColoredTangle, ComponentInfo,
    Hint, Op, Sign,
};
use crate::error::{Error, Result};
use crate::kirby::{build_xpq, SphereEmbedding};

/// Which end of the concordance a side tangle belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcordanceSlice {
    inner: ColoredTangle,
    outer: ColoredTangle,
    plus: Vec<ColoredTangle>,
    minus: Vec<ColoredTangle>,
}

impl ConcordanceSlice {
    /// `outer` is given already reverse-mirrored. `plus[k]` is the side at
    /// top slot `k`, `minus[k]` the side at bottom slot `k`.
    pub fn new(
        inner: ColoredTangle,
        outer: ColoredTangle,
        plus: Vec<ColoredTangle>,
        minus: Vec<ColoredTangle>,
    ) -> Result<Self> {
        if inner.top_width() != outer.top_width() || inner.bottom_width() != outer.bottom_width() {
            return Err(Error::InvalidDiagram("inner and outer tangles have different boundaries".into()));
        }
        if plus.len() != inner.top_width() || minus.len() != inner.bottom_width() {
            return Err(Error::InvalidDiagram("need exactly one side tangle per boundary slot".into()));
        }
        for (sides, slots) in [(&plus, inner.top_slots()), (&minus, inner.bottom_slots())] {
            for (side, slot) in sides.iter().zip(slots) {
                through_arc(side)?;
                for c in side.components() {
                    if !c.color.is_bicolor() {
                        return Err(Error::Uncolored(c.id.clone()));
                    }
                }
                if side.arcs()[0].color != slot.color {
                    return Err(Error::ColorMismatch(format!(
                        "side with a {} through-arc attached to a {} slot",
                        side.arcs()[0].color, slot.color
                    )));
                }
            }
        }
        Ok(Self { inner, outer, plus, minus })
    }

    pub fn empty() -> Self {
        Self { inner: ColoredTangle::empty(), outer: ColoredTangle::empty(), plus: vec![], minus: vec![] }
    }

    /// Inner `T(i)` and outer reverse-mirrored `T(j)` lifted to `B0`, with
    /// trivial sides.
    pub fn model(i: i64, j: i64) -> Result<Self> {
        let base = build_xpq(0, 0);
        let (inner, _) = lift_sphere_tangles(&SphereEmbedding::new(&base, i)?);
        let (outer, _) = lift_sphere_tangles(&SphereEmbedding::new(&base, j)?);
        let inner = inner.tangle;
        let outer = reverse_mirror(&outer.tangle);
        let plus = inner.top_slots().iter().map(|s| trivial_side(s.color)).collect();
        let minus = inner.bottom_slots().iter().map(|s| trivial_side(s.color)).collect();
        Self::new(inner, outer, plus, minus)
    }

    pub fn inner(&self) -> &ColoredTangle {
        &self.inner
    }

    pub fn outer(&self) -> &ColoredTangle {
        &self.outer
    }

    pub fn sides(&self, end: End) -> &[ColoredTangle] {
        match end {
            End::Plus => &self.plus,
            End::Minus => &self.minus,
        }
    }

    /// The side at `end` whose through-arc has color `color`.
    pub fn side(&self, end: End, color: Color) -> Option<&ColoredTangle> {
        self.sides(end).iter().find(|t| t.arcs().first().map(|a| a.color) == Some(color))
    }

    /// Replaces the side at `end` carrying a `color` through-arc.
    pub fn with_side(&self, end: End, color: Color, side: ColoredTangle) -> Result<Self> {
        let mut out = self.clone();
        let sides = match end {
            End::Plus => &mut out.plus,
            End::Minus => &mut out.minus,
        };
        let k = sides
            .iter()
            .position(|t| t.arcs()[0].color == color)
            .ok_or_else(|| Error::ColorMismatch(format!("no {color} side at this end")))?;
        sides[k] = side;
        Self::new(out.inner, out.outer, out.plus, out.minus)
    }

    /// Same inner and outer tangles, every side trivial.
    pub fn with_trivial_sides(&self) -> Self {
        Self {
            inner: self.inner.clone(),
            outer: self.outer.clone(),
            plus: self.plus.iter().map(|t| trivial_side(t.arcs()[0].color)).collect(),
            minus: self.minus.iter().map(|t| trivial_side(t.arcs()[0].color)).collect(),
        }
    }

    /// Sum of the four side closure linking numbers at one end.
    pub fn lambda(&self, end: End) -> Result<i64> {
        self.sides(end).iter().map(|t| bicolored_linking(&closure_of_side(t)?)).sum()
    }
}

fn through_arc(t: &ColoredTangle) -> Result<()> {
    if t.arcs().len() != 1 || t.top_width() != 1 || t.bottom_width() != 1 {
        return Err(Error::ThroughArcs(t.arcs().len()));
    }
    Ok(())
}

/// A single downward arc of the given color.
pub fn trivial_side(color: Color) -> ColoredTangle {
    ColoredTangle::new(1, vec![], vec![ComponentInfo::new("arc", color, Sign::Plus)], vec![])
        .expect("a vertical strand is well formed")
}

/// A side whose through-arc is encircled by one loop of color `loop_color`
/// linking it `w` times.
pub fn clasp_side(arc_color: Color, loop_color: Color, w: i64) -> ColoredTangle {
    let arc = vec![ComponentInfo::new("arc", arc_color, Sign::Plus)];
    if w == 0 {
        return ColoredTangle::new(1, vec![], arc, vec![]).expect("a vertical strand is well formed");
    }
    let mut ops = vec![Op::Cup { position: 2 }];
    ops.extend(std::iter::repeat_n(Op::cross(1, Sign::of(w)), 2 * w.unsigned_abs() as usize));
    ops.push(Op::Cap { position: 2 });
    ColoredTangle::new(1, ops, arc, vec![ComponentInfo::new("loop", loop_color, Sign::Plus)])
        .expect("clasp diagram is well formed")
}

/// The unique closure of a side tangle.
pub fn closure_of_side(t: &ColoredTangle) -> Result<BicoloredLink> {
    through_arc(t)?;
    close_tangle(t)
}

/// Stacks pieces vertically: each `(tangle, slot)` is inserted with its
/// leftmost strand at 0-based position `slot`.
fn stack(top: usize, pieces: &[(ColoredTangle, usize)]) -> Result<ColoredTangle> {
    let mut ops = Vec::new();
    let mut hints: Vec<Hint> = Vec::new();
    for (t, slot) in pieces {
        hints.extend(t.hints_at(ops.len(), *slot, false));
        ops.extend(t.ops().iter().map(|op| op.shifted(*slot)));
    }
    ColoredTangle::from_hints(top, ops, &hints)
}

fn slice_pieces(s: &ConcordanceSlice) -> Vec<(ColoredTangle, usize)> {
    let mut pieces = vec![(s.inner.clone(), 0)];
    pieces.extend(s.minus.iter().cloned().enumerate().map(|(k, t)| (t, k)));
    pieces.push((s.outer.flipped(), 0));
    pieces.extend(s.plus.iter().cloned().enumerate().map(|(k, t)| (t, k)));
    pieces
}

/// The boundary link `𝓛`: inner tangle, bottom sides, the outer tangle seen
/// from inside, top sides, closed up.
pub fn assemble_link(s: &ConcordanceSlice) -> Result<BicoloredLink> {
    close_tangle(&stack(s.inner.top_width(), &slice_pieces(s))?)
}

/// Contribution of the inner and outer tangles: `lk(𝓛)` with trivial sides.
pub fn core_term(s: &ConcordanceSlice) -> Result<i64> {
    bicolored_linking(&assemble_link(&s.with_trivial_sides())?)
}

/// `lk(T̂⁺_r) + lk(T̂⁺_b) + lk(T̂⁻_r) + lk(T̂⁻_b)` plus the inner/outer term.
pub fn eq1_evaluate(s: &ConcordanceSlice) -> Result<i64> {
    Ok(s.lambda(End::Plus)? + s.lambda(End::Minus)? + core_term(s)?)
}

/// Red and blue side closures have equal linking numbers at both ends.
pub fn claim1_check(s: &ConcordanceSlice) -> Result<bool> {
    for end in [End::Plus, End::Minus] {
        let lk = |c: Color| -> Result<i64> {
            match s.side(end, c) {
                Some(t) => bicolored_linking(&closure_of_side(t)?),
                None => Ok(0),
            }
        };
        if lk(Color::Red)? != lk(Color::Blue)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Data of a concordance in the closed manifold: the slice plus closed links
/// `C±` and their color winding numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedCaseData {
    pub slice: ConcordanceSlice,
    pub c_plus: BicoloredLink,
    pub c_minus: BicoloredLink,
    pub w_r_plus: i64,
    pub w_r_minus: i64,
    pub w_b_plus: i64,
    pub w_b_minus: i64,
}

impl ClosedCaseData {
    /// No closed links and zero windings.
    pub fn trivial(slice: ConcordanceSlice) -> Self {
        Self {
            slice,
            c_plus: BicoloredLink::empty(),
            c_minus: BicoloredLink::empty(),
            w_r_plus: 0,
            w_r_minus: 0,
            w_b_plus: 0,
            w_b_minus: 0,
        }
    }

    pub fn w(&self) -> i64 {
        self.w_r_plus + self.w_r_minus + self.w_b_plus + self.w_b_minus
    }
}

/// `λ⁺ + λ⁻ + w + lk(C⁺) + lk(C⁻)` plus the inner/outer term.
pub fn eq2_evaluate(d: &ClosedCaseData) -> Result<i64> {
    Ok(eq1_evaluate(&d.slice)? + d.w() + bicolored_linking(&d.c_plus)? + bicolored_linking(&d.c_minus)?)
}

pub fn claim2_check(d: &ClosedCaseData) -> Result<bool> {
    Ok(bicolored_linking(&d.c_plus)? == bicolored_linking(&d.c_minus)?
        && d.w_r_plus == d.w_r_minus
        && d.w_b_plus == d.w_b_minus)
}

/// `𝓛` for closed-case data: each color winding is realised by a loop of
/// that color clasping the opposite-colored arc at the matching end, and
/// `C±` are added as split sublinks.
pub fn assemble_closed_link(d: &ClosedCaseData) -> Result<BicoloredLink> {
    let s = &d.slice;
    let clasp = |end: End, sides: &[ColoredTangle]| -> Vec<(ColoredTangle, usize)> {
        let (wr, wb) = match end {
            End::Plus => (d.w_r_plus, d.w_b_plus),
            End::Minus => (d.w_r_minus, d.w_b_minus),
        };
        sides
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let arc = t.arcs()[0].color;
                let w = if arc == Color::Blue { wr } else { wb };
                let assigned = sides.iter().position(|x| x.arcs()[0].color == arc) == Some(k);
                (clasp_side(arc, arc.swapped(), if assigned { w } else { 0 }), k)
            })
            .collect()
    };
    let width = s.inner.top_width();
    let has = |c: Color| s.plus.iter().any(|t| t.arcs()[0].color == c);
    if (d.w_r_plus != 0 || d.w_r_minus != 0) && !has(Color::Blue)
        || (d.w_b_plus != 0 || d.w_b_minus != 0) && !has(Color::Red)
    {
        return Err(Error::InvalidDiagram("color windings need an arc of the opposite color".into()));
    }
    let mut pieces = vec![(s.inner.clone(), 0)];
    pieces.extend(s.minus.iter().cloned().enumerate().map(|(k, t)| (t, k)));
    pieces.extend(clasp(End::Minus, &s.minus));
    pieces.push((s.outer.flipped(), 0));
    pieces.extend(s.plus.iter().cloned().enumerate().map(|(k, t)| (t, k)));
    pieces.extend(clasp(End::Plus, &s.plus));
    pieces.push((d.c_plus.tangle().clone(), width));
    pieces.push((d.c_minus.tangle().clone(), width));
    close_tangle(&stack(width, &pieces)?)
}

/// Closed-case data with nontrivial but symmetric extras: Hopf links `C±`
/// and one red winding at each end.
pub fn symmetric_closed_data(slice: ConcordanceSlice) -> Result<ClosedCaseData> {
    let hopf = BicoloredLink::braid_closure(
        &BraidWord::from_pairs(2, &[(1, 1), (1, 1)])?,
        &[(Color::Red, Sign::Plus), (Color::Blue, Sign::Plus)],
    )?;
    Ok(ClosedCaseData {
        slice,
        c_plus: hopf.clone(),
        c_minus: hopf,
        w_r_plus: 1,
        w_r_minus: 1,
        w_b_plus: 0,
        w_b_minus: 0,
    })
}

/// Parity of `lk(𝓛)` for the model concordance between `Σ_i` and `Σ_j`.
pub fn concordance_obstruction(i: i64, j: i64, closed: bool) -> Result<u8> {
    Ok(obstruct(i, j, closed)?.parity)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub parity: u8,
    #[serde(rename = "lk_L")]
    pub lk_l: i64,
    pub claim1: bool,
    pub claim2: bool,
}

/// Full obstruction computation for the model slice; `lk_L` is read off
/// the assembled link directly.
pub fn obstruct(i: i64, j: i64, closed: bool) -> Result<ObstructionReport> {
    if (i - j).rem_euclid(2) != 0 {
        return Err(Error::NotHomotopic { i, j });
    }
    let slice = ConcordanceSlice::model(i, j)?;
    let claim1 = claim1_check(&slice)?;
    let (value, lk_l, claim2) = if closed {
        let data = symmetric_closed_data(slice)?;
        (eq2_evaluate(&data)?, bicolored_linking(&assemble_closed_link(&data)?)?, claim2_check(&data)?)
    } else {
        (eq1_evaluate(&slice)?, bicolored_linking(&assemble_link(&slice)?)?, true)
    };
    Ok(ObstructionReport { parity: value.rem_euclid(2) as u8, lk_l, claim1, claim2 })
}
