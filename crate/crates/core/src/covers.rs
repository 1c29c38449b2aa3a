//! Cyclic covers of single-dotted-circle diagrams, the deck transformation,
//! and the lifts of the spheres `Σ_n` to the double cover.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;

pub use crate::diagrams::CoverLink;
use crate::diagrams::{half_twist_tangle, Color, ColoredTangle};
use crate::error::{Error, Result};
use crate::kirby::{KirbyDiagram, SphereEmbedding, GAMMA_MINUS, GAMMA_PLUS};

pub use crate::diagrams::cyclic_cover_link;

/// A cyclic cover of a Kirby diagram with one dotted circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    pub base: KirbyDiagram,
    pub degree: usize,
    pub total: KirbyDiagram,
    /// For each cover 2-handle: base 2-handle index and sheet.
    pub component_map: Vec<(usize, usize)>,
    /// Cover 2-handle index → its image under the generating deck
    /// transformation.
    pub deck: Vec<usize>,
}

impl CoverData {
    pub fn handle_id(&self, k: usize) -> &str {
        &self.total.two_handles()[k].id
    }

    /// Cover handles over the base handle `id`, ordered by sheet.
    pub fn lifts_of(&self, id: &str) -> Result<Vec<usize>> {
        let b = self.base.two_handle_index(id)?;
        let mut v: Vec<usize> = (0..self.component_map.len()).filter(|&k| self.component_map[k].0 == b).collect();
        v.sort_by_key(|&k| self.component_map[k].1);
        Ok(v)
    }

    /// Sheet label: red/blue in degree 2, the sheet index otherwise.
    pub fn sheet_label(&self, k: usize) -> serde_json::Value {
        let sheet = self.component_map[k].1;
        let lifts = self.component_map.iter().filter(|m| m.0 == self.component_map[k].0).count();
        match (self.degree, lifts) {
            (2, 2) => json!(if sheet == 0 { "red" } else { "blue" }),
            _ => json!(sheet),
        }
    }
}

impl Serialize for CoverData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: Vec<serde_json::Value> = (0..self.component_map.len())
            .map(|k| {
                json!({
                    "handle": self.handle_id(k),
                    "base": self.base.two_handles()[self.component_map[k].0].id,
                    "sheet": self.sheet_label(k),
                })
            })
            .collect();
        let deck: Vec<[&str; 2]> =
            self.deck.iter().enumerate().map(|(k, &t)| [self.handle_id(k), self.handle_id(t)]).collect();
        let mut st = s.serialize_struct("CoverData", 3)?;
        st.serialize_field("total", &self.total)?;
        st.serialize_field("map", &map)?;
        st.serialize_field("deck", &deck)?;
        st.end()
    }
}

/// Degree-`m` cover of a diagram whose 2-handles are known as annular curves
/// around its single dotted circle.
pub fn cyclic_cover_diagram(d: &KirbyDiagram, m: usize) -> Result<CoverData> {
    let curves = d
        .curves()
        .ok_or_else(|| Error::UnsupportedCover("the diagram carries no annular curve data".into()))?;
    if d.dotted().len() != 1 || d.h3() != 0 || d.h4() != 0 {
        return Err(Error::UnsupportedCover("only diagrams with one dotted circle and no 3-/4-handles".into()));
    }
    let cover = cyclic_cover_link(&curves.normalize_to_writhe(), m)?;
    let deck = (0..cover.map.len())
        .map(|k| {
            let (b, sheet) = cover.map[k];
            let lifts = cover.lifts_of(b);
            lifts[(sheet + 1) % lifts.len()]
        })
        .collect();
    let total = KirbyDiagram::from_annular(&d.dotted()[0], cover.link)?;
    Ok(CoverData { base: d.clone(), degree: m, total, component_map: cover.map, deck })
}

/// The double cover; every 2-handle must wind an even number of times.
pub fn double_cover_diagram(d: &KirbyDiagram) -> Result<CoverData> {
    if let Some(h) = d.two_handles().iter().find(|h| h.winding.iter().any(|w| w % 2 != 0)) {
        return Err(Error::OddWinding(h.id.clone()));
    }
    cyclic_cover_diagram(d, 2)
}

/// The two lifts of the 3-ball cut out by the dotted circle's disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Ball {
    B0,
    BPi,
}

impl Ball {
    pub fn other(self) -> Ball {
        match self {
            Ball::B0 => Ball::BPi,
            Ball::BPi => Ball::B0,
        }
    }
}

/// A colored tangle in one lifted ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallTangle {
    pub ball: Ball,
    pub tangle: ColoredTangle,
}

/// One colored arc in a lifted ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BallArc {
    pub ball: Ball,
    pub color: Color,
}

/// Objects the deck transformation acts on.
pub trait DeckAction: Sized {
    fn deck(&self, c: &CoverData) -> Result<Self>;
}

impl DeckAction for usize {
    fn deck(&self, c: &CoverData) -> Result<usize> {
        c.deck.get(*self).copied().ok_or_else(|| Error::UnknownHandle(self.to_string()))
    }
}

impl DeckAction for String {
    fn deck(&self, c: &CoverData) -> Result<String> {
        let k = c.total.two_handle_index(self)?;
        Ok(c.handle_id(c.deck[k]).to_string())
    }
}

impl DeckAction for BallArc {
    fn deck(&self, _: &CoverData) -> Result<BallArc> {
        Ok(BallArc { ball: self.ball.other(), color: self.color.swapped() })
    }
}

impl DeckAction for BallTangle {
    fn deck(&self, _: &CoverData) -> Result<BallTangle> {
        Ok(BallTangle { ball: self.ball.other(), tangle: self.tangle.color_swapped() })
    }
}

pub fn deck_image<T: DeckAction>(c: &CoverData, x: &T) -> Result<T> {
    x.deck(c)
}

/// Preimage of `Σ_n ∩ B`: each lifted ball carries a copy of the `n`-twist
/// tangle with one arc from each lifted sphere. In `B0` the arc entering at
/// top slot 1 lies on the red lift.
pub fn lift_sphere_tangles(s: &SphereEmbedding<'_>) -> (BallTangle, BallTangle) {
    let b0 = BallTangle { ball: Ball::B0, tangle: half_twist_tangle(s.n) };
    let bpi = BallTangle { ball: Ball::BPi, tangle: b0.tangle.color_swapped() };
    (b0, bpi)
}

/// Classes of the red and blue lifts of `Σ_n` over the cover's 2-handles.
/// The red lift contains the red core of `gamma_plus`; the twist parity
/// decides which core of `gamma_minus` the annulus reaches.
pub fn lift_classes(s: &SphereEmbedding<'_>, c: &CoverData) -> Result<(Vec<i64>, Vec<i64>)> {
    if c.degree != 2 {
        return Err(Error::UnsupportedCover("sphere lifts are defined for the double cover".into()));
    }
    let plus = c.lifts_of(GAMMA_PLUS)?;
    let minus = c.lifts_of(GAMMA_MINUS)?;
    if plus.len() != 2 || minus.len() != 2 {
        return Err(Error::UnsupportedCover("sphere cores must lift to two sheets".into()));
    }
    let flip = s.n.rem_euclid(2) as usize;
    let n = c.total.two_handles().len();
    let mut red = vec![0; n];
    let mut blue = vec![0; n];
    red[plus[0]] = 1;
    red[minus[flip]] = -1;
    blue[plus[1]] = 1;
    blue[minus[1 - flip]] = -1;
    Ok((red, blue))
}
