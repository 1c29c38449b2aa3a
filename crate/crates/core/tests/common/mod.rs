#![allow(dead_code)]

use lbkit::diagrams::{AnnularLink, BicoloredLink, BraidWord, Color, ComponentSpec, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: usize = 300;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let seed = std::env::var("LBKIT_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0x005e_ed1b_u64);
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn sign(rng: &mut impl Rng) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn color(rng: &mut impl Rng) -> Color {
    if rng.gen() {
        Color::Red
    } else {
        Color::Blue
    }
}

pub fn word(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let strands = rng.gen_range(1..=max_strands);
    let len = if strands < 2 { 0 } else { rng.gen_range(0..=max_len) };
    let pairs: Vec<(usize, i64)> = (0..len).map(|_| (rng.gen_range(1..strands), sign(rng).value())).collect();
    BraidWord::from_pairs(strands, &pairs).unwrap()
}

pub fn link(rng: &mut impl Rng) -> BicoloredLink {
    let w = word(rng, 4, 12);
    let labels: Vec<(Color, Sign)> = w.cycles().iter().map(|_| (color(rng), sign(rng))).collect();
    BicoloredLink::braid_closure(&w, &labels).unwrap()
}

/// A random annular link with blackboard framings matching its labels.
pub fn annular(rng: &mut impl Rng) -> AnnularLink {
    let w = word(rng, 4, 12);
    let specs = (0..w.cycles().len())
        .map(|k| ComponentSpec::new(format!("c{k}"), color(rng), rng.gen_range(-4..=4), sign(rng)))
        .collect();
    AnnularLink::new(w, specs).unwrap().normalize_to_writhe()
}

/// Closure permutation of a word, computed by following every strand.
pub fn closure_owner(w: &BraidWord) -> Vec<usize> {
    let n = w.strands();
    let mut at: Vec<usize> = (0..n).collect();
    for l in w.letters() {
        at.swap(l.0 - 1, l.0);
    }
    let mut next = vec![0; n];
    for (pos, &origin) in at.iter().enumerate() {
        next[origin] = pos;
    }
    let mut owner = vec![usize::MAX; n];
    let mut k = 0;
    for s in 0..n {
        if owner[s] == usize::MAX {
            let mut p = s;
            while owner[p] == usize::MAX {
                owner[p] = k;
                p = next[p];
            }
            k += 1;
        }
    }
    owner
}

/// `(origin_a, origin_b, sign)` for every letter, origins being top positions.
pub fn letter_strands(w: &BraidWord) -> Vec<(usize, usize, i64)> {
    let mut at: Vec<usize> = (0..w.strands()).collect();
    let mut out = Vec::new();
    for l in w.letters() {
        let a = l.0 - 1;
        out.push((at[a], at[a + 1], l.1.value()));
        at.swap(a, a + 1);
    }
    out
}
