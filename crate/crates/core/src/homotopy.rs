//! Symbolic regular homotopies: finger and Whitney moves, the cycles of
//! double points they trace out, and the resulting `Z₂[T_X]` class.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::covers::{double_cover_diagram, lift_classes};
use crate::error::{Error, Result};
use crate::homology::{torsion_order2, AbelianGroup, GroupElement};
use crate::kirby::{build_xpq, double, sphere_square, SphereEmbedding, MU};
use crate::obstruction::obstruct;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HomotopyMove {
    Finger { element: GroupElement },
    Whitney { element: GroupElement },
}

/// A component of the double-point preimage of the track of a homotopy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    /// Whether the cycle double covers its image.
    pub crossed: bool,
    pub element: GroupElement,
    pub minima: usize,
    pub maxima: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyTrace {
    pub group: AbelianGroup,
    pub moves: Vec<HomotopyMove>,
    pub cycles: Vec<Cycle>,
}

impl HomotopyTrace {
    pub fn empty(group: AbelianGroup) -> Self {
        Self { group, moves: Vec::new(), cycles: Vec::new() }
    }

    pub fn finger_moves(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, HomotopyMove::Finger { .. })).count()
    }

    pub fn whitney_moves(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, HomotopyMove::Whitney { .. })).count()
    }

    pub fn crossed_cycles(&self) -> usize {
        self.cycles.iter().filter(|c| c.crossed).count()
    }
}

/// The homotopy from `Σ_n` to `Σ_{n+2}`: one finger move and one Whitney
/// move along the generator of `Z/2`, leaving a single crossed cycle.
pub fn rho(_n: i64) -> HomotopyTrace {
    let x = vec![1];
    HomotopyTrace {
        group: AbelianGroup::cyclic(2),
        moves: vec![HomotopyMove::Finger { element: x.clone() }, HomotopyMove::Whitney { element: x.clone() }],
        cycles: vec![Cycle { crossed: true, element: x, minima: 2, maxima: 2 }],
    }
}

/// `rho(i) · rho(i+2) · …` up to `Σ_j` (or down, for `j < i`).
pub fn rho_chain(i: i64, j: i64) -> Result<HomotopyTrace> {
    if (i - j).rem_euclid(2) != 0 {
        return Err(Error::NotHomotopic { i, j });
    }
    let (lo, hi) = (i.min(j), i.max(j));
    let mut t = HomotopyTrace::empty(AbelianGroup::cyclic(2));
    let mut n = lo;
    while n < hi {
        t = concat(&t, &rho(n))?;
        n += 2;
    }
    Ok(t)
}

pub fn concat(a: &HomotopyTrace, b: &HomotopyTrace) -> Result<HomotopyTrace> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    let mut out = a.clone();
    out.moves.extend(b.moves.iter().cloned());
    out.cycles.extend(b.cycles.iter().cloned());
    Ok(out)
}

/// Parity of crossed-cycle multiplicity for every element of order 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedClass {
    pub parity: BTreeMap<GroupElement, u8>,
}

impl CrossedClass {
    pub fn zero(group: &AbelianGroup) -> Self {
        Self { parity: torsion_order2(group).into_iter().map(|e| (e, 0)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.parity.values().all(|&v| v == 0)
    }

    /// Componentwise sum mod 2.
    pub fn add(&self, other: &CrossedClass) -> Result<CrossedClass> {
        if self.parity.keys().ne(other.parity.keys()) {
            return Err(Error::GroupMismatch);
        }
        let parity = self.parity.iter().map(|(k, v)| (k.clone(), (v + other.parity[k]) % 2)).collect();
        Ok(CrossedClass { parity })
    }

    /// `x` when there is a single element of order 2, `x1, x2, …` otherwise.
    pub fn labels(&self) -> Vec<(String, u8)> {
        let single = self.parity.len() == 1;
        self.parity
            .values()
            .enumerate()
            .map(|(k, &v)| (if single { "x".to_string() } else { format!("x{}", k + 1) }, v))
            .collect()
    }
}

impl Serialize for CrossedClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let labels = self.labels();
        let mut m = s.serialize_map(Some(labels.len()))?;
        for (k, v) in &labels {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

pub fn crossed_class(t: &HomotopyTrace) -> CrossedClass {
    let mut class = CrossedClass::zero(&t.group);
    for c in t.cycles.iter().filter(|c| c.crossed) {
        if let Ok(e) = t.group.normalize(&c.element) {
            if let Some(v) = class.parity.get_mut(&e) {
                *v ^= 1;
            }
        }
    }
    class
}

/// Extremum counts match the moves and crossed cycles carry elements of
/// order at most 2.
pub fn cycle_validate(t: &HomotopyTrace) -> bool {
    let minima: usize = t.cycles.iter().map(|c| c.minima).sum();
    let maxima: usize = t.cycles.iter().map(|c| c.maxima).sum();
    if minima != 2 * t.finger_moves() || maxima != 2 * t.whitney_moves() {
        return false;
    }
    let elements = t
        .moves
        .iter()
        .map(|m| match m {
            HomotopyMove::Finger { element } | HomotopyMove::Whitney { element } => element,
        })
        .chain(t.cycles.iter().map(|c| &c.element));
    for e in elements {
        if t.group.normalize(e).is_err() {
            return false;
        }
    }
    t.cycles
        .iter()
        .filter(|c| c.crossed)
        .all(|c| matches!(t.group.order(&c.element), Ok(Some(1 | 2))))
}

/// Hypotheses for the homotopy to be realised by an isotopy: a common dual
/// sphere, a homotopy supported away from it, and an even number of crossed
/// cycles over every element of order 2.
pub fn lightbulb_check(t: &HomotopyTrace, common_dual: bool, dual_disjoint_support: bool) -> Result<bool> {
    if !cycle_validate(t) {
        return Err(Error::InvalidTrace("extremum counts or crossed-cycle elements are inconsistent".into()));
    }
    Ok(common_dual && dual_disjoint_support && crossed_class(t).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub equivalent: String,
    pub homotopic: String,
    pub topologically_concordant: String,
    pub smoothly_isotopic: String,
}

/// How `Σ_i` and `Σ_j` are related.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub i: i64,
    pub j: i64,
    pub closed: bool,
    pub equivalent: bool,
    pub homotopic: bool,
    pub topologically_concordant: bool,
    pub smoothly_isotopic: bool,
    pub evidence: Evidence,
}

/// Classifies the pair `(Σ_i, Σ_j)` in `X_{p,q}` (or its double when
/// `closed`).
pub fn classify(i: i64, j: i64, closed: bool) -> Relation {
    let base = build_xpq(0, 0);
    let doubled = double(&base);
    let ambient = if closed { &doubled } else { &base };
    let si = SphereEmbedding::new(ambient, i).expect("family diagram contains both sphere cores");
    let sj = SphereEmbedding::new(ambient, j).expect("family diagram contains both sphere cores");
    let dual_i = si.pairing(MU).expect("mu is a 2-handle");
    let dual_j = sj.pairing(MU).expect("mu is a 2-handle");
    let common_dual = dual_i.abs() == 1 && dual_j.abs() == 1;
    let equal_square = sphere_square(&si) == sphere_square(&sj);
    let equivalent = common_dual && equal_square && si.homologous(&sj);
    let ev_equivalent = format!(
        "common dual mu (pairings {dual_i}, {dual_j}), squares {} and {}, {}; a diffeomorphism of pairs exists under these conditions",
        sphere_square(&si),
        sphere_square(&sj),
        if si.homologous(&sj) { "homologous" } else { "not homologous" }
    );

    let cover = double_cover_diagram(&base).expect("family diagram has even windings");
    let lifts_i = lift_classes(&SphereEmbedding::new(&base, i).expect("sphere"), &cover).expect("double cover");
    let lifts_j = lift_classes(&SphereEmbedding::new(&base, j).expect("sphere"), &cover).expect("double cover");
    let homotopic = lifts_i == lifts_j;
    let ev_homotopic = if homotopic {
        "red and blue lifts are homologous in the simply-connected double cover, hence the spheres are homotopic".to_string()
    } else {
        "the lifts to the double cover are not homologous, so no homotopy exists".to_string()
    };

    let (concordant, ev_concordant, isotopic, ev_isotopic) = if homotopic {
        let report = obstruct(i, j, closed).expect("homotopic pair");
        let concordant = report.parity == 0;
        let trace = rho_chain(i, j).expect("homotopic pair");
        let lightbulb = lightbulb_check(&trace, common_dual, true).expect("rho traces are valid");
        let k = trace.crossed_cycles();
        (
            concordant,
            format!("lk(L) = {} has parity {}", report.lk_l, report.parity),
            lightbulb && concordant,
            if lightbulb {
                format!("{k} crossed cycles on the generator cancel in pairs; with a common dual the lightbulb criterion gives an isotopy")
            } else if !concordant {
                "not concordant, hence not isotopic".to_string()
            } else {
                "lightbulb criterion not met".to_string()
            },
        )
    } else {
        let why = "not homotopic".to_string();
        (false, why.clone(), false, why)
    };

    Relation {
        i,
        j,
        closed,
        equivalent,
        homotopic,
        topologically_concordant: concordant,
        smoothly_isotopic: isotopic,
        evidence: Evidence {
            equivalent: ev_equivalent,
            homotopic: ev_homotopic,
            topologically_concordant: ev_concordant,
            smoothly_isotopic: ev_isotopic,
        },
    }
}
