use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BraidWord, Color, Letter, Sign};
use crate::error::{Error, Result};

/// Label data for one component of an annular link.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub id: String,
    pub color: Color,
    pub framing: i64,
    pub orientation: Sign,
}

impl ComponentSpec {
    pub fn new(id: impl Into<String>, color: Color, framing: i64, orientation: Sign) -> Self {
        Self { id: id.into(), color, framing, orientation }
    }
}

/// Where a component sits in the diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Placement {
    /// A cycle of the closure permutation (0-based strand positions).
    Cycle(Vec<usize>),
    /// A small loop encircling the strand at 1-based `position` after the
    /// first `slot` letters. Winds zero times around the core.
    Meridian { slot: usize, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnularComponent {
    pub spec: ComponentSpec,
    pub placement: Placement,
    kinks: i64,
}

impl AnnularComponent {
    pub fn id(&self) -> &str {
        &self.spec.id
    }

    /// Number of times the component runs around the core.
    pub fn winding(&self) -> i64 {
        match &self.placement {
            Placement::Cycle(c) => c.len() as i64,
            Placement::Meridian { .. } => 0,
        }
    }

    /// Winding counted with the component's orientation.
    pub fn algebraic_winding(&self) -> i64 {
        self.winding() * self.spec.orientation.value()
    }

    /// Signed number of R1 kinks added on top of the braid crossings.
    pub fn kinks(&self) -> i64 {
        self.kinks
    }

    pub fn is_meridian(&self) -> bool {
        matches!(self.placement, Placement::Meridian { .. })
    }
}

/// A link in the solid torus: the closure of a braid word, plus optional
/// meridian loops. Framings are labels; they agree with the blackboard
/// framing only after [`AnnularLink::normalize_to_writhe`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnularLink {
    word: BraidWord,
    components: Vec<AnnularComponent>,
}

impl AnnularLink {
    /// One spec per cycle of the word, in [`BraidWord::cycles`] order.
    pub fn new(word: BraidWord, specs: Vec<ComponentSpec>) -> Result<Self> {
        let cycles = word.cycles();
        if cycles.len() != specs.len() {
            return Err(Error::InvalidDiagram(format!(
                "word closes to {} components but {} were described",
                cycles.len(),
                specs.len()
            )));
        }
        let components = cycles
            .into_iter()
            .zip(specs)
            .map(|(c, spec)| AnnularComponent { spec, placement: Placement::Cycle(c), kinks: 0 })
            .collect();
        let link = Self { word, components };
        link.check_ids()?;
        Ok(link)
    }

    /// Adds a meridian loop around the strand at `position` (1-based) after
    /// `slot` letters.
    pub fn with_meridian(mut self, spec: ComponentSpec, slot: usize, position: usize) -> Result<Self> {
        if slot > self.word.len() || position == 0 || position > self.word.strands() {
            return Err(Error::InvalidDiagram(format!("meridian site ({slot}, {position}) is outside the word")));
        }
        self.components.push(AnnularComponent { spec, placement: Placement::Meridian { slot, position }, kinks: 0 });
        self.check_ids()?;
        Ok(self)
    }

    fn check_ids(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for c in &self.components {
            if !seen.insert(c.id()) {
                return Err(Error::InvalidDiagram(format!("duplicate component id {}", c.id())));
            }
        }
        Ok(())
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn components(&self) -> &[AnnularComponent] {
        &self.components
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id() == id)
    }

    /// Component owning each strand position at the top of the word.
    fn strand_owner(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.word.strands()];
        for (k, c) in self.components.iter().enumerate() {
            if let Placement::Cycle(cycle) = &c.placement {
                for &p in cycle {
                    owner[p] = k;
                }
            }
        }
        owner
    }

    /// Signed crossings `(a, b, sign)` of the diagram, kinks excluded.
    fn braid_crossings(&self) -> Vec<(usize, usize, i64)> {
        let owner = self.strand_owner();
        let o = |k: usize| self.components[k].spec.orientation.value();
        let mut out = Vec::with_capacity(self.word.len());
        let mut at: Vec<usize> = (0..self.word.strands()).collect();
        let mut snapshots = vec![at.clone()];
        for l in self.word.letters() {
            let a = owner[at[l.0 - 1]];
            let b = owner[at[l.0]];
            out.push((a, b, l.1.value() * o(a) * o(b)));
            at.swap(l.0 - 1, l.0);
            snapshots.push(at.clone());
        }
        for (k, c) in self.components.iter().enumerate() {
            if let Placement::Meridian { slot, position } = c.placement {
                let target = owner[snapshots[slot][position - 1]];
                let s = o(k) * o(target);
                out.push((k, target, s));
                out.push((k, target, s));
            }
        }
        out
    }

    /// Sum of the signs of self-crossings of component `k` coming from the
    /// braid word.
    pub fn braid_self_writhe(&self, k: usize) -> i64 {
        self.braid_crossings().iter().filter(|x| x.0 == k && x.1 == k).map(|x| x.2).sum()
    }

    /// Diagram writhe of component `k` including kinks.
    pub fn writhe(&self, k: usize) -> i64 {
        self.braid_self_writhe(k) + self.components[k].kinks
    }

    /// Linking number of distinct components `a` and `b`.
    pub fn linking(&self, a: usize, b: usize) -> i64 {
        let sum: i64 = self
            .braid_crossings()
            .iter()
            .filter(|x| (x.0 == a && x.1 == b) || (x.0 == b && x.1 == a))
            .map(|x| x.2)
            .sum();
        sum / 2
    }

    /// Symmetric matrix with linking numbers off the diagonal and framing
    /// labels on it.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components.len();
        let mut m = vec![vec![0i64; n]; n];
        for (a, b, s) in self.braid_crossings() {
            if a != b {
                m[a][b] += s;
                m[b][a] += s;
            }
        }
        for (k, row) in m.iter_mut().enumerate() {
            for v in row.iter_mut() {
                *v /= 2;
            }
            row[k] = self.components[k].spec.framing;
        }
        m
    }

    /// Adds kinks so each component's writhe equals its framing label.
    pub fn normalize_to_writhe(&self) -> AnnularLink {
        let mut out = self.clone();
        for k in 0..out.components.len() {
            out.components[k].kinks = out.components[k].spec.framing - self.braid_self_writhe(k);
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.components.len()).all(|k| self.writhe(k) == self.components[k].spec.framing)
    }
}

/// A cyclic cover with, for every cover component, its base component index
/// and sheet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverLink {
    pub link: AnnularLink,
    pub degree: usize,
    pub map: Vec<(usize, usize)>,
}

impl CoverLink {
    /// `m·f - Σ f_lift - 2·Σ lk(lift, lift')` per base component; zero for a
    /// correct cover.
    pub fn framing_defects(&self, base: &AnnularLink) -> Vec<i64> {
        let mut defect: Vec<i64> =
            base.components.iter().map(|c| self.degree as i64 * c.spec.framing).collect();
        for (k, &(b, _)) in self.map.iter().enumerate() {
            defect[b] -= self.link.components[k].spec.framing;
        }
        let lk = self.link.linking_matrix();
        for (a, row) in lk.iter().enumerate() {
            for (c, &v) in row.iter().enumerate().skip(a + 1) {
                if self.map[a].0 == self.map[c].0 {
                    defect[self.map[a].0] -= 2 * v;
                }
            }
        }
        defect
    }

    /// Cover components lying over base component `b`, by sheet.
    pub fn lifts_of(&self, b: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.map.len()).filter(|&k| self.map[k].0 == b).collect();
        v.sort_by_key(|&k| self.map[k].1);
        v
    }
}

fn lift_label(base: &ComponentSpec, degree: usize, lifts: usize, sheet: usize) -> (String, Color) {
    if lifts == 1 {
        (base.id.clone(), base.color)
    } else if degree == 2 {
        let (suffix, color) = if sheet == 0 { ("r", Color::Red) } else { ("b", Color::Blue) };
        (format!("{}~{}", base.id, suffix), color)
    } else {
        (format!("{}~{}", base.id, sheet), base.color)
    }
}

/// Degree-`m` cyclic cover of the solid torus: the closure of `word^m`, with
/// kinks and meridians copied onto every sheet. Framings of the lifts are
/// their blackboard framings.
pub fn cyclic_cover_link(link: &AnnularLink, m: usize) -> Result<CoverLink> {
    if m == 0 {
        return Err(Error::UnsupportedCover("degree must be at least 1".into()));
    }
    if !link.is_normalized() {
        return Err(Error::NotNormalized("insert kinks with normalize_to_writhe before covering".into()));
    }
    let perm = link.word.permutation();
    let owner = link.strand_owner();
    let word = link.word.power(m);
    let len = link.word.len();

    // Position of each strand along its base cycle, measured from the
    // cycle's smallest strand.
    let mut step = vec![0usize; link.word.strands()];
    for c in &link.components {
        if let Placement::Cycle(cycle) = &c.placement {
            let mut p = cycle[0];
            for r in 0..cycle.len() {
                step[p] = r;
                p = perm[p];
            }
        }
    }

    let mut components = Vec::new();
    let mut map = Vec::new();
    for cycle in word.cycles() {
        let b = owner[cycle[0]];
        let base = &link.components[b];
        let w = base.winding() as usize;
        let g = w.gcd(&m);
        let sheet = ((g - step[cycle[0]] % g) % g) % g;
        let (id, color) = lift_label(&base.spec, m, g, sheet);
        components.push(AnnularComponent {
            spec: ComponentSpec { id, color, framing: 0, orientation: base.spec.orientation },
            placement: Placement::Cycle(cycle),
            kinks: base.kinks * (m / g) as i64,
        });
        map.push((b, sheet));
    }
    for (b, base) in link.components.iter().enumerate() {
        if let Placement::Meridian { slot, position } = base.placement {
            for sheet in 0..m {
                let (id, color) = lift_label(&base.spec, m, m, sheet);
                components.push(AnnularComponent {
                    spec: ComponentSpec { id, color, framing: 0, orientation: base.spec.orientation },
                    placement: Placement::Meridian { slot: slot + sheet * len, position },
                    kinks: base.kinks,
                });
                map.push((b, sheet));
            }
        }
    }
    let mut cover = AnnularLink { word, components };
    for k in 0..cover.components.len() {
        cover.components[k].spec.framing = cover.writhe(k);
    }
    let out = CoverLink { link: cover, degree: m, map };
    debug_assert!(out.framing_defects(link).iter().all(|&d| d == 0));
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentRepr {
    id: String,
    color: Color,
    framing: i64,
    orientation: Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meridian: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "is_zero")]
    kinks: i64,
}

fn is_zero(v: &i64) -> bool {
    *v == 0
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnularRepr {
    strands: usize,
    letters: Vec<Letter>,
    components: Vec<ComponentRepr>,
}

impl Serialize for AnnularLink {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AnnularRepr {
            strands: self.word.strands(),
            letters: self.word.letters().to_vec(),
            components: self
                .components
                .iter()
                .map(|c| ComponentRepr {
                    id: c.spec.id.clone(),
                    color: c.spec.color,
                    framing: c.spec.framing,
                    orientation: c.spec.orientation,
                    meridian: match c.placement {
                        Placement::Meridian { slot, position } => Some((slot, position)),
                        Placement::Cycle(_) => None,
                    },
                    kinks: c.kinks,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnnularLink {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = AnnularRepr::deserialize(d)?;
        let word = BraidWord::new(r.strands, r.letters).map_err(D::Error::custom)?;
        let (meridians, cycles): (Vec<_>, Vec<_>) = r.components.into_iter().partition(|c| c.meridian.is_some());
        let mut kinks = Vec::new();
        let specs = cycles
            .into_iter()
            .map(|c| {
                kinks.push(c.kinks);
                ComponentSpec { id: c.id, color: c.color, framing: c.framing, orientation: c.orientation }
            })
            .collect();
        let mut link = AnnularLink::new(word, specs).map_err(D::Error::custom)?;
        for c in meridians {
            let (slot, position) = c.meridian.expect("partitioned on meridian");
            kinks.push(c.kinks);
            let spec = ComponentSpec { id: c.id, color: c.color, framing: c.framing, orientation: c.orientation };
            link = link.with_meridian(spec, slot, position).map_err(D::Error::custom)?;
        }
        for (c, k) in link.components.iter_mut().zip(kinks) {
            c.kinks = k;
        }
        Ok(link)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: &str, framing: i64) -> ComponentSpec {
        ComponentSpec::new(id, Color::Purple, framing, Sign::Plus)
    }

    fn xpq_curves(p: i64, q: i64) -> AnnularLink {
        let w = BraidWord::from_pairs(4, &[(1, -1), (3, 1)]).unwrap();
        AnnularLink::new(w, vec![spec("gamma_plus", p), spec("gamma_minus", q)])
            .unwrap()
            .with_meridian(spec("mu", 0), 0, 3)
            .unwrap()
    }

    #[test]
    fn linking_matrix_of_base_curves() {
        let l = xpq_curves(3, -1);
        assert_eq!(l.linking_matrix(), vec![vec![3, 0, 0], vec![0, -1, 1], vec![0, 1, 0]]);
        assert_eq!(l.components().iter().map(|c| c.winding()).collect::<Vec<_>>(), vec![2, 2, 0]);
        assert_eq!(l.braid_self_writhe(0), -1);
        assert_eq!(l.braid_self_writhe(1), 1);
    }

    #[test]
    fn cover_requires_normalization() {
        let l = xpq_curves(1, 1);
        assert!(matches!(cyclic_cover_link(&l, 2), Err(Error::NotNormalized(_))));
        assert!(matches!(cyclic_cover_link(&l.normalize_to_writhe(), 0), Err(Error::UnsupportedCover(_))));
    }

    #[test]
    fn double_cover_framings_and_linking() {
        for (p, q) in [(0, 0), (2, 5), (-3, 4)] {
            let base = xpq_curves(p, q).normalize_to_writhe();
            let cover = cyclic_cover_link(&base, 2).unwrap();
            let framings: Vec<i64> = cover.link.components().iter().map(|c| c.spec.framing).collect();
            assert_eq!(framings, vec![p + 1, p + 1, q - 1, q - 1, 0, 0]);
            let lk = cover.link.linking_matrix();
            assert_eq!(lk[0][1], -1);
            assert_eq!(lk[2][3], 1);
            assert_eq!(cover.framing_defects(&base), vec![0, 0, 0]);
            // each mu lift meets only the gamma_minus lift on its own sheet
            for (k, mu) in [(4usize, 2usize), (5, 3)] {
                assert_eq!(cover.map[k].1, cover.map[mu].1);
                assert_eq!(lk[k][mu], 1);
                assert_eq!(lk[k][0] + lk[k][1], 0);
                assert_eq!(lk[k][2] + lk[k][3], 1);
            }
        }
    }

    #[test]
    fn lift_colors_and_ids() {
        let cover = cyclic_cover_link(&xpq_curves(0, 0).normalize_to_writhe(), 2).unwrap();
        let ids: Vec<&str> = cover.link.components().iter().map(|c| c.id()).collect();
        assert_eq!(ids, vec!["gamma_plus~r", "gamma_plus~b", "gamma_minus~r", "gamma_minus~b", "mu~r", "mu~b"]);
        assert_eq!(cover.link.components()[1].spec.color, Color::Blue);
        assert!(cover.link.components().iter().all(|c| c.winding() <= 1));
    }

    #[test]
    fn degree_one_is_identity() {
        let base = xpq_curves(2, -2).normalize_to_writhe();
        let cover = cyclic_cover_link(&base, 1).unwrap();
        assert_eq!(cover.link, base);
    }

    #[test]
    fn odd_winding_lifts_to_one_component() {
        let w = BraidWord::new(1, vec![]).unwrap();
        let base = AnnularLink::new(w, vec![spec("k", 2)]).unwrap().normalize_to_writhe();
        let cover = cyclic_cover_link(&base, 2).unwrap();
        assert_eq!(cover.link.components().len(), 1);
        assert_eq!(cover.link.components()[0].spec.framing, 4);
    }

    #[test]
    fn json_round_trip_including_meridians_and_kinks() {
        for l in [xpq_curves(3, -1), xpq_curves(3, -1).normalize_to_writhe()] {
            let s = serde_json::to_string(&l).unwrap();
            let back: AnnularLink = serde_json::from_str(&s).unwrap();
            assert_eq!(back, l);
        }
        let bad = r#"{"strands":2,"letters":[],"components":[],"extra":1}"#;
        assert!(serde_json::from_str::<AnnularLink>(bad).is_err());
    }
}
