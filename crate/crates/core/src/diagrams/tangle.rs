use std::collections::HashSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BraidWord, Color, Sign};
use crate::error::{Error, Result};

/// One level of a Morse tangle diagram. Positions are 1-based.
///
/// * `Cross` exchanges the strands at `position` and `position + 1`.
/// * `Cup` creates two new strands at `position` and `position + 1`, joined
///   at their top.
/// * `Cap` joins the strands at `position` and `position + 1` at their bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Cross { position: usize, sign: Sign },
    Cup { position: usize },
    Cap { position: usize },
}

impl Op {
    pub fn cross(position: usize, sign: Sign) -> Op {
        Op::Cross { position, sign }
    }

    pub(crate) fn shifted(self, by: usize) -> Op {
        match self {
            Op::Cross { position, sign } => Op::Cross { position: position + by, sign },
            Op::Cup { position } => Op::Cup { position: position + by },
            Op::Cap { position } => Op::Cap { position: position + by },
        }
    }

    pub fn position(self) -> usize {
        match self {
            Op::Cross { position, .. } | Op::Cup { position } | Op::Cap { position } => position,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OpRepr {
    Cross(usize, Sign),
    Cup {
        cup: usize,
    },
    Cap {
        cap: usize,
    },
}

impl Serialize for Op {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Op::Cross { position, sign } => OpRepr::Cross(position, sign),
            Op::Cup { position } => OpRepr::Cup { cup: position },
            Op::Cap { position } => OpRepr::Cap { cap: position },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Op {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Op, D::Error> {
        Ok(match OpRepr::deserialize(d)? {
            OpRepr::Cross(position, sign) => Op::Cross { position, sign },
            OpRepr::Cup { cup } => Op::Cup { position: cup },
            OpRepr::Cap { cap } => Op::Cap { position: cap },
        })
    }
}

/// Label data carried by a tangle component. `orientation` is relative to
/// the canonical traversal: arcs start at their first boundary endpoint (top
/// slots before bottom slots), closed components start downward from their
/// top-left segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentInfo {
    pub id: String,
    pub color: Color,
    pub orientation: Sign,
}

impl ComponentInfo {
    pub fn new(id: impl Into<String>, color: Color, orientation: Sign) -> Self {
        Self { id: id.into(), color, orientation }
    }
}

/// A boundary endpoint, 0-based slot index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Top(usize),
    Bottom(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotDirection {
    In,
    Out,
}

/// Color and orientation seen at one boundary slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Slot {
    pub color: Color,
    pub orientation: SlotDirection,
}

/// A crossing between two components (indices into arcs followed by closed
/// components), with its oriented sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub op: usize,
    pub over: usize,
    pub under: usize,
    pub sign: Sign,
}

const NONE: usize = usize::MAX;

/// Connectivity of a Morse diagram: which component every segment belongs
/// to and in which direction the canonical traversal runs through it.
#[derive(Debug, Clone)]
pub(crate) struct Trace {
    pub widths: Vec<usize>,
    offsets: Vec<usize>,
    seg_pos: Vec<(usize, usize)>,
    pub seg_comp: Vec<usize>,
    pub seg_dir: Vec<i64>,
    pub n_arcs: usize,
    pub arc_ends: Vec<(Endpoint, Endpoint)>,
    pub comp_segments: Vec<Vec<usize>>,
}

impl Trace {
    pub fn new(top: usize, ops: &[Op]) -> Result<Trace> {
        let mut widths = Vec::with_capacity(ops.len() + 1);
        widths.push(top);
        for (k, op) in ops.iter().enumerate() {
            let w = widths[k];
            let bad = |what: &str| {
                Error::InvalidDiagram(format!("op {k}: {what} at position {} with width {w}", op.position()))
            };
            let next = match *op {
                Op::Cross { position, .. } => {
                    if position == 0 || position + 1 > w {
                        return Err(bad("crossing"));
                    }
                    w
                }
                Op::Cup { position } => {
                    if position == 0 || position > w + 1 {
                        return Err(bad("cup"));
                    }
                    w + 2
                }
                Op::Cap { position } => {
                    if position == 0 || position + 1 > w {
                        return Err(bad("cap"));
                    }
                    w - 2
                }
            };
            widths.push(next);
        }
        let mut offsets = Vec::with_capacity(widths.len());
        let mut seg_pos = Vec::new();
        let mut total = 0;
        for (t, &w) in widths.iter().enumerate() {
            offsets.push(total);
            total += w;
            seg_pos.extend((0..w).map(|p| (t, p)));
        }
        let upper = |s: usize| 2 * s;
        let lower = |s: usize| 2 * s + 1;
        let mut partner = vec![NONE; 2 * total];
        let mut link = |a: usize, b: usize| {
            partner[a] = b;
            partner[b] = a;
        };
        for (t, op) in ops.iter().enumerate() {
            let w = widths[t];
            let here = offsets[t];
            let next = offsets[t + 1];
            match *op {
                Op::Cross { position, .. } => {
                    let a = position - 1;
                    for p in 0..w {
                        let q = if p == a {
                            a + 1
                        } else if p == a + 1 {
                            a
                        } else {
                            p
                        };
                        link(lower(here + p), upper(next + q));
                    }
                }
                Op::Cup { position } => {
                    let a = position - 1;
                    for p in 0..w {
                        let q = if p < a { p } else { p + 2 };
                        link(lower(here + p), upper(next + q));
                    }
                    link(upper(next + a), upper(next + a + 1));
                }
                Op::Cap { position } => {
                    let a = position - 1;
                    link(lower(here + a), lower(here + a + 1));
                    for p in 0..w {
                        if p == a || p == a + 1 {
                            continue;
                        }
                        let q = if p < a { p } else { p - 2 };
                        link(lower(here + p), upper(next + q));
                    }
                }
            }
        }

        let last = widths.len() - 1;
        let mut seg_comp = vec![NONE; total];
        let mut seg_dir = vec![0i64; total];
        let mut comp_segments: Vec<Vec<usize>> = Vec::new();
        let mut arc_ends = Vec::new();

        let endpoint_of = |end: usize| -> Endpoint {
            let s = end / 2;
            let (t, p) = seg_pos[s];
            if end.is_multiple_of(2) {
                debug_assert_eq!(t, 0);
                Endpoint::Top(p)
            } else {
                debug_assert_eq!(t, last);
                Endpoint::Bottom(p)
            }
        };

        // Walks from `start` (an end through which a segment is entered) and
        // returns the boundary end where the walk leaves the diagram, or NONE
        // for a closed loop.
        let walk = |start: usize, comp: usize, seg_comp: &mut Vec<usize>, seg_dir: &mut Vec<i64>| {
            let mut segs = Vec::new();
            let mut e = start;
            let exit_end = loop {
                let s = e / 2;
                let down = e.is_multiple_of(2);
                seg_comp[s] = comp;
                seg_dir[s] = if down { 1 } else { -1 };
                segs.push(s);
                let exit = if down { lower(s) } else { upper(s) };
                let nxt = partner[exit];
                if nxt == NONE {
                    break exit;
                }
                if nxt == start {
                    break NONE;
                }
                e = nxt;
            };
            (segs, exit_end)
        };

        let boundary_starts = (0..widths[0])
            .map(|p| upper(offsets[0] + p))
            .chain((0..widths[last]).map(|p| lower(offsets[last] + p)));
        for start in boundary_starts.collect::<Vec<_>>() {
            if seg_comp[start / 2] != NONE {
                continue;
            }
            let comp = comp_segments.len();
            let (segs, exit) = walk(start, comp, &mut seg_comp, &mut seg_dir);
            debug_assert_ne!(exit, NONE);
            arc_ends.push((endpoint_of(start), endpoint_of(exit)));
            comp_segments.push(segs);
        }
        let n_arcs = comp_segments.len();
        for s in 0..total {
            if seg_comp[s] != NONE {
                continue;
            }
            let comp = comp_segments.len();
            let (segs, exit) = walk(upper(s), comp, &mut seg_comp, &mut seg_dir);
            debug_assert_eq!(exit, NONE);
            comp_segments.push(segs);
        }

        Ok(Trace { widths, offsets, seg_pos, seg_comp, seg_dir, n_arcs, arc_ends, comp_segments })
    }

    pub fn n_components(&self) -> usize {
        self.comp_segments.len()
    }

    pub fn n_closed(&self) -> usize {
        self.comp_segments.len() - self.n_arcs
    }

    pub fn levels(&self) -> usize {
        self.widths.len()
    }

    pub fn seg(&self, level: usize, position: usize) -> usize {
        self.offsets[level] + position
    }

    pub fn seg_position(&self, seg: usize) -> (usize, usize) {
        self.seg_pos[seg]
    }
}

/// Placement hint used when a diagram is assembled from labelled pieces: the
/// component through `(level, position)` (0-based) has this color and runs
/// in `direction` (`Plus` = downward) there.
#[derive(Debug, Clone)]
pub(crate) struct Hint {
    pub level: usize,
    pub position: usize,
    pub color: Color,
    pub direction: Sign,
    pub id: Option<String>,
}

/// An oriented, colored tangle diagram in a ball.
///
/// Top boundary slots are the strands entering level 0, bottom slots the
/// strands leaving the last level. A tangle with no boundary slots is a link
/// (see [`BicoloredLink`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredTangle {
    top: usize,
    ops: Vec<Op>,
    arcs: Vec<ComponentInfo>,
    closed: Vec<ComponentInfo>,
}

impl ColoredTangle {
    pub fn new(top: usize, ops: Vec<Op>, arcs: Vec<ComponentInfo>, closed: Vec<ComponentInfo>) -> Result<Self> {
        let trace = Trace::new(top, &ops)?;
        if arcs.len() != trace.n_arcs {
            return Err(Error::InvalidDiagram(format!(
                "diagram has {} arcs but {} arc labels were given",
                trace.n_arcs,
                arcs.len()
            )));
        }
        if closed.len() != trace.n_closed() {
            return Err(Error::InvalidDiagram(format!(
                "diagram has {} closed components but {} labels were given",
                trace.n_closed(),
                closed.len()
            )));
        }
        let mut ids = HashSet::new();
        for c in arcs.iter().chain(&closed) {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidDiagram(format!("duplicate component id {}", c.id)));
            }
        }
        Ok(Self { top, ops, arcs, closed })
    }

    /// The empty tangle (no strands).
    pub fn empty() -> Self {
        Self { top: 0, ops: Vec::new(), arcs: Vec::new(), closed: Vec::new() }
    }

    /// Builds a tangle from ops and labelled sample points, merging labels
    /// per component. Components without a hint are uncolored and keep the
    /// canonical orientation.
    pub(crate) fn from_hints(top: usize, ops: Vec<Op>, hints: &[Hint]) -> Result<Self> {
        let trace = Trace::new(top, &ops)?;
        let n = trace.n_components();
        let mut labels: Vec<Option<(Color, i64, Option<String>)>> = vec![None; n];
        for h in hints {
            if h.level >= trace.levels() || h.position >= trace.widths[h.level] {
                return Err(Error::InvalidDiagram(format!(
                    "hint at level {} position {} is outside the diagram",
                    h.level, h.position
                )));
            }
            let s = trace.seg(h.level, h.position);
            let c = trace.seg_comp[s];
            let flag = h.direction.value() * trace.seg_dir[s];
            match &mut labels[c] {
                None => labels[c] = Some((h.color, flag, h.id.clone())),
                Some((color, f, _)) => {
                    if *color != h.color {
                        return Err(Error::ColorMismatch(format!(
                            "a single component is labelled both {} and {}",
                            color, h.color
                        )));
                    }
                    if *f != flag {
                        return Err(Error::OrientationMismatch(
                            "pieces joined with incompatible orientations".into(),
                        ));
                    }
                }
            }
        }
        let mut used = HashSet::new();
        let mut infos = Vec::with_capacity(n);
        for (c, label) in labels.into_iter().enumerate() {
            let fallback = if c < trace.n_arcs { format!("a{c}") } else { format!("c{}", c - trace.n_arcs) };
            let (color, flag, id) = label.unwrap_or((Color::Uncolored, 1, None));
            let id = match id {
                Some(id) if !used.contains(&id) => id,
                _ => fallback,
            };
            let id = if used.contains(&id) {
                let mut k = 0;
                loop {
                    let cand = format!("{id}_{k}");
                    if !used.contains(&cand) {
                        break cand;
                    }
                    k += 1;
                }
            } else {
                id
            };
            used.insert(id.clone());
            infos.push(ComponentInfo { id, color, orientation: Sign::of(flag) });
        }
        let closed = infos.split_off(trace.n_arcs);
        Ok(Self { top, ops, arcs: infos, closed })
    }

    pub(crate) fn trace(&self) -> Trace {
        Trace::new(self.top, &self.ops).expect("tangle invariants checked at construction")
    }

    pub fn top_width(&self) -> usize {
        self.top
    }

    pub fn bottom_width(&self) -> usize {
        let mut w = self.top;
        for op in &self.ops {
            match op {
                Op::Cross { .. } => {}
                Op::Cup { .. } => w += 2,
                Op::Cap { .. } => w -= 2,
            }
        }
        w
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn arcs(&self) -> &[ComponentInfo] {
        &self.arcs
    }

    pub fn closed(&self) -> &[ComponentInfo] {
        &self.closed
    }

    /// All components, arcs first.
    pub fn components(&self) -> impl Iterator<Item = &ComponentInfo> {
        self.arcs.iter().chain(&self.closed)
    }

    pub fn component(&self, index: usize) -> &ComponentInfo {
        if index < self.arcs.len() {
            &self.arcs[index]
        } else {
            &self.closed[index - self.arcs.len()]
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, Op::Cross { .. })).count()
    }

    fn flags(&self) -> Vec<i64> {
        self.components().map(|c| c.orientation.value()).collect()
    }

    /// Every crossing with its oriented sign and over/under components.
    pub fn crossings(&self) -> Vec<Crossing> {
        let tr = self.trace();
        self.crossings_with(&tr)
    }

    pub(crate) fn crossings_with(&self, tr: &Trace) -> Vec<Crossing> {
        let flags = self.flags();
        let dir = |s: usize| tr.seg_dir[s] * flags[tr.seg_comp[s]];
        let mut out = Vec::new();
        for (t, op) in self.ops.iter().enumerate() {
            if let Op::Cross { position, sign } = *op {
                let a = tr.seg(t, position - 1);
                let b = a + 1;
                let oriented = sign.value() * dir(a) * dir(b);
                let (over, under) = match sign {
                    Sign::Plus => (tr.seg_comp[b], tr.seg_comp[a]),
                    Sign::Minus => (tr.seg_comp[a], tr.seg_comp[b]),
                };
                out.push(Crossing { op: t, over, under, sign: Sign::of(oriented) });
            }
        }
        out
    }

    /// Arc endpoints in canonical traversal order (0-based slots).
    pub fn arc_endpoints(&self) -> Vec<(Endpoint, Endpoint)> {
        self.trace().arc_ends
    }

    fn slots_at(&self, tr: &Trace, bottom: bool) -> Vec<Slot> {
        let level = if bottom { tr.levels() - 1 } else { 0 };
        (0..tr.widths[level])
            .map(|p| {
                let s = tr.seg(level, p);
                let c = tr.seg_comp[s];
                let down = tr.seg_dir[s] * self.component(c).orientation.value() > 0;
                let orientation = if down == bottom { SlotDirection::Out } else { SlotDirection::In };
                Slot { color: self.component(c).color, orientation }
            })
            .collect()
    }

    pub fn top_slots(&self) -> Vec<Slot> {
        let tr = self.trace();
        self.slots_at(&tr, false)
    }

    pub fn bottom_slots(&self) -> Vec<Slot> {
        let tr = self.trace();
        self.slots_at(&tr, true)
    }

    /// One hint per component at the first of its segments that `map`
    /// sends into the target diagram.
    pub(crate) fn hints_with(
        &self,
        keep_ids: bool,
        reverse: bool,
        map: impl Fn(usize, usize) -> Option<(usize, usize)>,
    ) -> Vec<Hint> {
        let tr = self.trace();
        let mut out = Vec::new();
        for (c, segs) in tr.comp_segments.iter().enumerate() {
            let info = self.component(c);
            for &s in segs {
                let (level, pos) = tr.seg_position(s);
                if let Some((level, position)) = map(level, pos) {
                    let mut d = tr.seg_dir[s] * info.orientation.value();
                    if reverse {
                        d = -d;
                    }
                    out.push(Hint {
                        level,
                        position,
                        color: info.color,
                        direction: Sign::of(d),
                        id: keep_ids.then(|| info.id.clone()),
                    });
                    break;
                }
            }
        }
        out
    }

    /// Hints for this tangle placed `levels` ops down and `shift` positions
    /// right inside a larger diagram.
    pub(crate) fn hints_at(&self, levels: usize, shift: usize, keep_ids: bool) -> Vec<Hint> {
        self.hints_with(keep_ids, false, |l, p| Some((l + levels, p + shift)))
    }

    /// Same diagram with every component recolored by `f`.
    pub fn recolored(&self, f: impl Fn(&ComponentInfo) -> Color) -> ColoredTangle {
        let mut out = self.clone();
        for c in out.arcs.iter_mut().chain(out.closed.iter_mut()) {
            c.color = f(c);
        }
        out
    }

    /// Exchanges red and blue on every component.
    pub fn color_swapped(&self) -> ColoredTangle {
        self.recolored(|c| c.color.swapped())
    }

    pub fn uncolored(&self) -> ColoredTangle {
        self.recolored(|_| Color::Uncolored)
    }

    /// Every crossing sign flipped (mirror in the projection plane),
    /// orientations untouched.
    pub fn mirrored(&self) -> ColoredTangle {
        let mut out = self.clone();
        for op in &mut out.ops {
            if let Op::Cross { sign, .. } = op {
                *sign = sign.flipped();
            }
        }
        out
    }

    /// Every component orientation reversed.
    pub fn reversed(&self) -> ColoredTangle {
        let mut out = self.clone();
        for c in out.arcs.iter_mut().chain(out.closed.iter_mut()) {
            c.orientation = c.orientation.flipped();
        }
        out
    }

    /// Rotation by π about a horizontal axis in the projection plane: top and
    /// bottom exchange, positions are kept, oriented crossing signs are kept.
    pub fn flipped(&self) -> ColoredTangle {
        let last = self.ops.len();
        let ops: Vec<Op> = self
            .ops
            .iter()
            .rev()
            .map(|op| match *op {
                Op::Cross { position, sign } => Op::Cross { position, sign },
                Op::Cup { position } => Op::Cap { position },
                Op::Cap { position } => Op::Cup { position },
            })
            .collect();
        let hints = self.hints_with(true, true, |l, p| Some((last - l, p)));
        ColoredTangle::from_hints(self.bottom_width(), ops, &hints)
            .expect("flipping preserves diagram validity and labels")
    }

    /// Signed count of crossings between a red and a blue component.
    pub fn mixed_crossing_sum(&self) -> i64 {
        self.crossings()
            .iter()
            .filter(|x| {
                let a = self.component(x.over).color;
                let b = self.component(x.under).color;
                a.is_bicolor() && b.is_bicolor() && a != b
            })
            .map(|x| x.sign.value())
            .sum()
    }

    /// Linking number of two distinct components in a closed diagram.
    pub fn linking_of(&self, a: usize, b: usize) -> i64 {
        let sum: i64 = self
            .crossings()
            .iter()
            .filter(|x| (x.over == a && x.under == b) || (x.over == b && x.under == a))
            .map(|x| x.sign.value())
            .sum();
        sum / 2
    }

    /// Sum of signs of self-crossings of component `c`.
    pub fn writhe_of(&self, c: usize) -> i64 {
        self.crossings()
            .iter()
            .filter(|x| x.over == c && x.under == c)
            .map(|x| x.sign.value())
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndpointsRepr {
    top: Vec<Slot>,
    bottom: Vec<Slot>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TangleRepr {
    arcs: Vec<ComponentInfo>,
    closed: Vec<ComponentInfo>,
    crossings: Vec<Op>,
    endpoints: EndpointsRepr,
}

impl Serialize for ColoredTangle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let tr = self.trace();
        TangleRepr {
            arcs: self.arcs.clone(),
            closed: self.closed.clone(),
            crossings: self.ops.clone(),
            endpoints: EndpointsRepr { top: self.slots_at(&tr, false), bottom: self.slots_at(&tr, true) },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredTangle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = TangleRepr::deserialize(d)?;
        let t = ColoredTangle::new(r.endpoints.top.len(), r.crossings, r.arcs, r.closed).map_err(D::Error::custom)?;
        let tr = t.trace();
        if t.slots_at(&tr, false) != r.endpoints.top || t.slots_at(&tr, true) != r.endpoints.bottom {
            return Err(D::Error::custom("endpoint slots disagree with the arcs and crossings"));
        }
        Ok(t)
    }
}

/// A closed diagram in the 3-sphere: a tangle without boundary slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BicoloredLink(ColoredTangle);

impl BicoloredLink {
    pub fn new(t: ColoredTangle) -> Result<Self> {
        if t.top_width() != 0 || t.bottom_width() != 0 || !t.arcs().is_empty() {
            return Err(Error::InvalidDiagram("a link has no open arcs".into()));
        }
        Ok(Self(t))
    }

    pub fn empty() -> Self {
        Self(ColoredTangle::empty())
    }

    /// The closure of a braid word, with colors and orientations given per
    /// component in cycle order (see [`BraidWord::cycles`]).
    pub fn braid_closure(word: &BraidWord, labels: &[(Color, Sign)]) -> Result<Self> {
        let cycles = word.cycles();
        if cycles.len() != labels.len() {
            return Err(Error::InvalidDiagram(format!(
                "closure has {} components but {} labels were given",
                cycles.len(),
                labels.len()
            )));
        }
        let n = word.strands();
        let ops: Vec<Op> = word.letters().iter().map(|l| Op::cross(l.0, l.1)).collect();
        let hints: Vec<Hint> = cycles
            .iter()
            .zip(labels)
            .enumerate()
            .flat_map(|(k, (cycle, &(color, orientation)))| {
                cycle.iter().enumerate().map(move |(r, &position)| Hint {
                    level: 0,
                    position,
                    color,
                    direction: orientation,
                    id: (r == 0).then(|| format!("k{k}")),
                })
            })
            .collect();
        let braid = ColoredTangle::from_hints(n, ops, &hints)?;
        close_tangle(&braid)
    }

    pub fn tangle(&self) -> &ColoredTangle {
        &self.0
    }

    pub fn into_tangle(self) -> ColoredTangle {
        self.0
    }

    pub fn components(&self) -> &[ComponentInfo] {
        self.0.closed()
    }
}

impl Serialize for BicoloredLink {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BicoloredLink {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        BicoloredLink::new(ColoredTangle::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// Linking number between the red and the blue sublinks: half the signed
/// count of crossings between a red and a blue component.
pub fn bicolored_linking(link: &BicoloredLink) -> Result<i64> {
    if let Some(c) = link.components().iter().find(|c| !c.color.is_bicolor()) {
        return Err(Error::Uncolored(c.id.clone()));
    }
    let sum = link.0.mixed_crossing_sum();
    debug_assert_eq!(sum % 2, 0, "mixed crossings of a closed diagram come in pairs");
    Ok(sum / 2)
}

/// Joins top slot `k` to bottom slot `k` by crossingless arcs running around
/// the right-hand side of the diagram.
pub fn close_tangle(t: &ColoredTangle) -> Result<BicoloredLink> {
    let n = t.top_width();
    if t.bottom_width() != n {
        return Err(Error::InvalidDiagram(format!(
            "cannot close a tangle with {} top and {} bottom slots",
            n,
            t.bottom_width()
        )));
    }
    let mut ops: Vec<Op> = (1..=n).map(|position| Op::Cup { position }).collect();
    ops.extend_from_slice(t.ops());
    ops.extend((1..=n).rev().map(|position| Op::Cap { position }));
    let hints = t.hints_at(n, 0, true);
    let closed = ColoredTangle::from_hints(0, ops, &hints)?;
    BicoloredLink::new(closed)
}

/// Reverses every component and flips every crossing sign.
pub fn reverse_mirror(t: &ColoredTangle) -> ColoredTangle {
    t.mirrored().reversed()
}

/// Two arcs with `|n|` half twists of sign `sgn(n)`; the arc starting at top
/// slot 1 is red and the other blue, both running downward.
pub fn half_twist_tangle(n: i64) -> ColoredTangle {
    let sign = Sign::of(n);
    let ops = vec![Op::cross(1, sign); n.unsigned_abs() as usize];
    ColoredTangle::new(
        2,
        ops,
        vec![ComponentInfo::new("red", Color::Red, Sign::Plus), ComponentInfo::new("blue", Color::Blue, Sign::Plus)],
        vec![],
    )
    .expect("half twist tangle is well formed")
}
