//! Handle decompositions: dotted circles, framed 2-handles and counts of
//! 3- and 4-handles, together with the family `X_{p,q}`.

use std::collections::HashSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagrams::{half_twist_tangle, AnnularLink, BraidWord, Color, ColoredTangle, ComponentSpec, Sign};
use crate::error::{Error, Result};
use crate::homology::IntMatrix;

pub const GAMMA_PLUS: &str = "gamma_plus";
pub const GAMMA_MINUS: &str = "gamma_minus";
pub const MU: &str = "mu";
pub const DOTTED: &str = "U";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoHandle {
    pub id: String,
    pub framing: i64,
    /// Algebraic winding around each dotted circle.
    pub winding: Vec<i64>,
}

/// A Kirby diagram with one 0-handle.
///
/// `linking` is indexed by dotted circles followed by 2-handles. Dotted
/// diagonal entries are 0, 2-handle diagonal entries are framings and
/// dotted/2-handle entries are windings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KirbyDiagram {
    dotted: Vec<String>,
    two_handles: Vec<TwoHandle>,
    linking: Vec<Vec<i64>>,
    h3: usize,
    h4: usize,
    curves: Option<AnnularLink>,
}

impl KirbyDiagram {
    pub fn new(
        dotted: Vec<String>,
        two_handles: Vec<TwoHandle>,
        linking: Vec<Vec<i64>>,
        h3: usize,
        h4: usize,
    ) -> Result<Self> {
        let d = Self { dotted, two_handles, linking, h3, h4, curves: None };
        d.validate()?;
        Ok(d)
    }

    /// A diagram with a single dotted circle `dotted_id` whose 2-handles are
    /// the components of an annular link in its complement.
    pub fn from_annular(dotted_id: &str, curves: AnnularLink) -> Result<Self> {
        let lk = curves.linking_matrix();
        let n = lk.len();
        let mut linking = vec![vec![0i64; n + 1]; n + 1];
        let mut two_handles = Vec::with_capacity(n);
        for (k, c) in curves.components().iter().enumerate() {
            let w = c.algebraic_winding();
            linking[0][k + 1] = w;
            linking[k + 1][0] = w;
            for j in 0..n {
                linking[k + 1][j + 1] = lk[k][j];
            }
            two_handles.push(TwoHandle { id: c.id().to_string(), framing: c.spec.framing, winding: vec![w] });
        }
        let d = Self { dotted: vec![dotted_id.to_string()], two_handles, linking, h3: 0, h4: 0, curves: Some(curves) };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let nd = self.dotted.len();
        let n = nd + self.two_handles.len();
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if self.linking.len() != n || self.linking.iter().any(|r| r.len() != n) {
            return bad(format!("linking matrix must be {n}×{n}"));
        }
        let mut ids = HashSet::new();
        for id in self.dotted.iter().chain(self.two_handles.iter().map(|h| &h.id)) {
            if !ids.insert(id) {
                return bad(format!("duplicate handle id {id}"));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if self.linking[i][j] != self.linking[j][i] {
                    return bad("linking matrix is not symmetric".into());
                }
            }
        }
        for i in 0..nd {
            for j in 0..nd {
                if self.linking[i][j] != 0 {
                    return bad("dotted circles must be unlinked and 0-framed".into());
                }
            }
        }
        for (k, h) in self.two_handles.iter().enumerate() {
            if self.linking[nd + k][nd + k] != h.framing {
                return bad(format!("diagonal entry of {} differs from its framing", h.id));
            }
            if h.winding.len() != nd || (0..nd).any(|i| self.linking[nd + k][i] != h.winding[i]) {
                return bad(format!("winding of {} disagrees with the linking matrix", h.id));
            }
        }
        Ok(())
    }

    pub fn dotted(&self) -> &[String] {
        &self.dotted
    }

    pub fn two_handles(&self) -> &[TwoHandle] {
        &self.two_handles
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn h3(&self) -> usize {
        self.h3
    }

    pub fn h4(&self) -> usize {
        self.h4
    }

    /// The annular curves the 2-handles were read from, if still valid.
    pub fn curves(&self) -> Option<&AnnularLink> {
        self.curves.as_ref()
    }

    /// Index of a 2-handle by id.
    pub fn two_handle_index(&self, id: &str) -> Result<usize> {
        if self.dotted.iter().any(|d| d == id) {
            return Err(Error::NotTwoHandle(id.to_string()));
        }
        self.two_handles.iter().position(|h| h.id == id).ok_or_else(|| Error::UnknownHandle(id.to_string()))
    }

    pub fn framing(&self, id: &str) -> Result<i64> {
        Ok(self.two_handles[self.two_handle_index(id)?].framing)
    }

    /// Linking number of two 2-handles (the framing when `a == b`).
    pub fn lk(&self, a: &str, b: &str) -> Result<i64> {
        let nd = self.dotted.len();
        Ok(self.linking[nd + self.two_handle_index(a)?][nd + self.two_handle_index(b)?])
    }

    /// Full matrix with dotted circles read as 0-framed surgery curves.
    pub fn surgery_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.linking).expect("validated square matrix")
    }

    /// The 2-handle block of the linking matrix (intersection form on the
    /// 2-handles).
    pub fn two_handle_block(&self) -> Vec<Vec<i64>> {
        let nd = self.dotted.len();
        self.linking[nd..].iter().map(|r| r[nd..].to_vec()).collect()
    }

    pub fn framings(&self) -> Vec<i64> {
        self.two_handles.iter().map(|h| h.framing).collect()
    }

    /// Number of handles of each index 0..=4.
    pub fn handle_counts(&self) -> [usize; 5] {
        [1, self.dotted.len(), self.two_handles.len(), self.h3, self.h4]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.handle_counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KirbyRepr {
    dotted: Vec<String>,
    two_handles: Vec<TwoHandle>,
    linking: Vec<Vec<i64>>,
    h3: usize,
    h4: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    curves: Option<AnnularLink>,
}

impl Serialize for KirbyDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KirbyRepr {
            dotted: self.dotted.clone(),
            two_handles: self.two_handles.clone(),
            linking: self.linking.clone(),
            h3: self.h3,
            h4: self.h4,
            curves: self.curves.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KirbyDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = KirbyRepr::deserialize(d)?;
        let diagram = match r.curves {
            Some(curves) => {
                if r.dotted.len() != 1 {
                    return Err(D::Error::custom("curves are only supported with a single dotted circle"));
                }
                let mut built = KirbyDiagram::from_annular(&r.dotted[0], curves).map_err(D::Error::custom)?;
                if built.two_handles != r.two_handles || built.linking != r.linking {
                    return Err(D::Error::custom("curves disagree with the handle data"));
                }
                built.h3 = r.h3;
                built.h4 = r.h4;
                built
            }
            None => KirbyDiagram::new(r.dotted, r.two_handles, r.linking, r.h3, r.h4).map_err(D::Error::custom)?,
        };
        Ok(diagram)
    }
}

/// The base curves of `X_{p,q}`: two parallel copies of the (2,1) curve in
/// the solid torus, `gamma_plus` on strands 1–2 (closure of σ₁⁻¹, framing
/// `p`) and `gamma_minus` on strands 3–4 (closure of σ₃, framing `q`), and a
/// 0-framed meridian `mu` of `gamma_minus`.
pub fn xpq_curves(p: i64, q: i64) -> AnnularLink {
    let word = BraidWord::from_pairs(4, &[(1, -1), (3, 1)]).expect("valid word");
    AnnularLink::new(
        word,
        vec![
            ComponentSpec::new(GAMMA_PLUS, Color::Purple, p, Sign::Plus),
            ComponentSpec::new(GAMMA_MINUS, Color::Purple, q, Sign::Plus),
        ],
    )
    .and_then(|l| l.with_meridian(ComponentSpec::new(MU, Color::Purple, 0, Sign::Plus), 0, 3))
    .expect("fixed curve data is valid")
}

/// `X_{p,q}`: one dotted circle and 2-handles `gamma_plus` (framing `p`),
/// `gamma_minus` (framing `q`) and `mu` (framing 0).
pub fn build_xpq(p: i64, q: i64) -> KirbyDiagram {
    KirbyDiagram::from_annular(DOTTED, xpq_curves(p, q)).expect("fixed curve data is valid")
}

/// Slides 2-handle `a` over 2-handle `b`; `eps` selects the band
/// orientation. The linking matrix transforms by congruence.
pub fn handle_slide(d: &KirbyDiagram, a: &str, b: &str, eps: Sign) -> Result<KirbyDiagram> {
    let ia = d.two_handle_index(a)?;
    let ib = d.two_handle_index(b)?;
    if ia == ib {
        return Err(Error::InvalidDiagram(format!("cannot slide {a} over itself")));
    }
    let nd = d.dotted.len();
    let (ra, rb) = (nd + ia, nd + ib);
    let e = eps.value();
    let mut lk = d.linking.clone();
    let src = lk[rb].clone();
    for (x, y) in lk[ra].iter_mut().zip(&src) {
        *x += e * y;
    }
    for row in lk.iter_mut() {
        row[ra] += e * row[rb];
    }
    let mut two_handles = d.two_handles.clone();
    let h = &mut two_handles[ia];
    h.framing = lk[ra][ra];
    h.winding = (0..nd).map(|i| lk[ra][i]).collect();
    Ok(KirbyDiagram { dotted: d.dotted.clone(), two_handles, linking: lk, h3: d.h3, h4: d.h4, curves: None })
}

/// The double: a 0-framed meridian 2-handle for every 2-handle, one 3-handle
/// per dotted circle and one 4-handle.
pub fn double(d: &KirbyDiagram) -> KirbyDiagram {
    let nd = d.dotted.len();
    let n2 = d.two_handles.len();
    let n = nd + 2 * n2;
    let mut lk = vec![vec![0i64; n]; n];
    for (i, row) in d.linking.iter().enumerate() {
        lk[i][..row.len()].copy_from_slice(row);
    }
    let mut two_handles = d.two_handles.clone();
    for (k, h) in d.two_handles.iter().enumerate() {
        let m = nd + n2 + k;
        lk[m][nd + k] = 1;
        lk[nd + k][m] = 1;
        two_handles.push(TwoHandle { id: format!("{}'", h.id), framing: 0, winding: vec![0; nd] });
    }
    KirbyDiagram { dotted: d.dotted.clone(), two_handles, linking: lk, h3: d.h3 + nd, h4: d.h4 + 1, curves: None }
}

pub fn euler_characteristic(d: &KirbyDiagram) -> i64 {
    d.euler_characteristic()
}

/// The sphere `Σ_n` in a diagram of the `X_{p,q}` family (possibly slid or
/// doubled), recorded by its class over the 2-handles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereEmbedding<'a> {
    pub ambient: &'a KirbyDiagram,
    pub n: i64,
    pub class: Vec<i64>,
}

impl<'a> SphereEmbedding<'a> {
    /// `Σ_n`: the cores of `gamma_plus` and `gamma_minus` joined by the
    /// annulus they cobound; the class does not depend on `n`.
    pub fn new(ambient: &'a KirbyDiagram, n: i64) -> Result<Self> {
        let mut class = vec![0; ambient.two_handles.len()];
        class[ambient.two_handle_index(GAMMA_PLUS)?] = 1;
        class[ambient.two_handle_index(GAMMA_MINUS)?] = -1;
        Ok(Self { ambient, n, class })
    }

    /// The same sphere in `slid = handle_slide(ambient, a, b, eps)`.
    pub fn after_slide<'b>(&self, slid: &'b KirbyDiagram, a: &str, b: &str, eps: Sign) -> Result<SphereEmbedding<'b>> {
        let ia = self.ambient.two_handle_index(a)?;
        let ib = self.ambient.two_handle_index(b)?;
        let mut class = self.class.clone();
        class[ib] -= eps.value() * class[ia];
        Ok(SphereEmbedding { ambient: slid, n: self.n, class })
    }

    /// Intersection number with the core of a 2-handle closed off by its
    /// dual disk, i.e. the pairing of the class with that handle's row.
    pub fn pairing(&self, handle: &str) -> Result<i64> {
        let block = self.ambient.two_handle_block();
        let k = self.ambient.two_handle_index(handle)?;
        Ok(block[k].iter().zip(&self.class).map(|(a, c)| a * c).sum())
    }

    pub fn homologous(&self, other: &SphereEmbedding<'_>) -> bool {
        self.class == other.class
    }
}

/// Self-intersection of the sphere's class.
pub fn sphere_square(s: &SphereEmbedding<'_>) -> i64 {
    let block = s.ambient.two_handle_block();
    let c = &s.class;
    (0..c.len()).map(|i| (0..c.len()).map(|j| c[i] * block[i][j] * c[j]).sum::<i64>()).sum()
}

/// The intersection of `Σ_n` with the 3-ball cut out by the dotted circle's
/// spanning disk: `n` half twists.
pub fn sphere_tangle(s: &SphereEmbedding<'_>) -> ColoredTangle {
    half_twist_tangle(s.n).uncolored()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{boundary_h1, h1, AbelianGroup};

    #[test]
    fn xpq_shape() {
        let d = build_xpq(0, 0);
        assert_eq!(d.framings(), vec![0, 0, 0]);
        assert_eq!(d.handle_counts(), [1, 1, 3, 0, 0]);
        let d = build_xpq(3, -1);
        let w: Vec<i64> = d.two_handles().iter().map(|h| h.winding[0]).collect();
        assert_eq!(w, vec![2, 2, 0]);
        assert_eq!(d.lk(GAMMA_PLUS, GAMMA_MINUS).unwrap(), 0);
        assert_eq!(d.lk(MU, GAMMA_MINUS).unwrap(), 1);
        assert_eq!(d.lk(MU, GAMMA_PLUS).unwrap(), 0);
        assert_eq!(h1(&build_xpq(7, -4)), AbelianGroup::cyclic(2));
    }

    #[test]
    fn slides_reduce_framing() {
        let d = build_xpq(0, 5);
        let once = handle_slide(&d, GAMMA_MINUS, MU, Sign::Minus).unwrap();
        assert_eq!(once.framing(GAMMA_MINUS).unwrap(), 3);
        let twice = handle_slide(&once, GAMMA_MINUS, MU, Sign::Minus).unwrap();
        assert_eq!(twice.framing(GAMMA_MINUS).unwrap(), 1);
        assert!(once.curves().is_none());
    }

    #[test]
    fn slide_over_split_handle() {
        let d = KirbyDiagram::new(
            vec![],
            vec![
                TwoHandle { id: "a".into(), framing: 3, winding: vec![] },
                TwoHandle { id: "b".into(), framing: 0, winding: vec![] },
            ],
            vec![vec![3, 0], vec![0, 0]],
            0,
            0,
        )
        .unwrap();
        assert_eq!(handle_slide(&d, "a", "b", Sign::Plus).unwrap().framing("a").unwrap(), 3);
    }

    #[test]
    fn slide_errors() {
        let d = build_xpq(0, 0);
        assert!(matches!(handle_slide(&d, DOTTED, MU, Sign::Plus), Err(Error::NotTwoHandle(_))));
        assert!(matches!(handle_slide(&d, MU, DOTTED, Sign::Plus), Err(Error::NotTwoHandle(_))));
        assert!(matches!(handle_slide(&d, "nope", MU, Sign::Plus), Err(Error::UnknownHandle(_))));
        assert!(handle_slide(&d, MU, MU, Sign::Plus).is_err());
    }

    #[test]
    fn slide_over_mu_shifts_q_by_two() {
        for (p, q) in [(0, 0), (3, -1), (-2, 4)] {
            let up = handle_slide(&build_xpq(p, q), GAMMA_MINUS, MU, Sign::Plus).unwrap();
            let target = build_xpq(p, q + 2);
            assert_eq!(up.framings(), target.framings());
            assert_eq!(up.linking(), target.linking());
            let down = handle_slide(&build_xpq(p, q), GAMMA_MINUS, MU, Sign::Minus).unwrap();
            assert_eq!(down.linking(), build_xpq(p, q - 2).linking());
        }
    }

    #[test]
    fn doubling() {
        let d = build_xpq(2, -3);
        let dd = double(&d);
        let mut f = dd.framings();
        f.sort();
        assert_eq!(f, vec![-3, 0, 0, 0, 0, 2]);
        assert_eq!((dd.h3(), dd.h4()), (1, 1));
        assert_eq!(h1(&dd), AbelianGroup::cyclic(2));
        assert!(matches!(boundary_h1(&dd), Err(Error::ClosedHandles)));
        let x = build_xpq(0, 0);
        assert_eq!(euler_characteristic(&x), 3);
        assert_eq!(euler_characteristic(&double(&x)), 6);
    }

    #[test]
    fn sphere_square_and_duality() {
        for n in [-3, 0, 5] {
            let d = build_xpq(3, -1);
            let s = SphereEmbedding::new(&d, n).unwrap();
            assert_eq!(sphere_square(&s), 2);
            assert_eq!(s.pairing(MU).unwrap().abs(), 1);
        }
        let d = build_xpq(0, 0);
        let s0 = SphereEmbedding::new(&d, 0).unwrap();
        let s5 = SphereEmbedding::new(&d, 5).unwrap();
        assert_eq!(sphere_square(&s0), 0);
        assert_eq!(sphere_square(&s5), sphere_square(&s0));
        assert!(s0.homologous(&s5));
        let dd = double(&d);
        assert_eq!(sphere_square(&SphereEmbedding::new(&dd, 1).unwrap()), 0);
    }

    #[test]
    fn class_follows_slides() {
        let d = build_xpq(1, 2);
        let s = SphereEmbedding::new(&d, 0).unwrap();
        let slid = handle_slide(&d, MU, GAMMA_MINUS, Sign::Plus).unwrap();
        let t = s.after_slide(&slid, MU, GAMMA_MINUS, Sign::Plus).unwrap();
        assert_eq!(sphere_square(&t), sphere_square(&s));
        let slid2 = handle_slide(&d, GAMMA_PLUS, MU, Sign::Minus).unwrap();
        let t2 = s.after_slide(&slid2, GAMMA_PLUS, MU, Sign::Minus).unwrap();
        assert_eq!(sphere_square(&t2), sphere_square(&s));
    }

    #[test]
    fn sphere_tangles() {
        let d = build_xpq(0, 0);
        for n in [0, 2, -1] {
            let s = SphereEmbedding::new(&d, n).unwrap();
            assert_eq!(sphere_tangle(&s), half_twist_tangle(n).uncolored());
        }
    }

    #[test]
    fn json_round_trip() {
        for d in [build_xpq(3, -1), double(&build_xpq(0, 1))] {
            let s = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<KirbyDiagram>(&s).unwrap(), d);
        }
        let mut v = serde_json::to_value(build_xpq(0, 0)).unwrap();
        v["linking"][1][2] = serde_json::json!(5);
        assert!(serde_json::from_value::<KirbyDiagram>(v).is_err());
    }
}
