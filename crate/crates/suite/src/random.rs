use lbkit::diagrams::{reidemeister, BicoloredLink, BraidWord, Color, ColoredTangle, Move, Op, Sign};
use lbkit::kirby::{handle_slide, KirbyDiagram};
use lbkit::obstruction::{clasp_side, ClosedCaseData, ConcordanceSlice, End};
use lbkit::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A generator seeded from [`crate::seed`], split by `stream`.
pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(crate::seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn color<R: Rng>(rng: &mut R) -> Color {
    if rng.gen() {
        Color::Red
    } else {
        Color::Blue
    }
}

pub fn word<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize) -> BraidWord {
    let strands = rng.gen_range(1..=max_strands);
    let len = if strands < 2 { 0 } else { rng.gen_range(0..=max_len) };
    let pairs: Vec<(usize, i64)> =
        (0..len).map(|_| (rng.gen_range(1..strands), sign(rng).value())).collect();
    BraidWord::from_pairs(strands, &pairs).expect("letters are in range")
}

pub fn labels<R: Rng>(rng: &mut R, w: &BraidWord) -> Vec<(Color, Sign)> {
    w.cycles().iter().map(|_| (color(rng), sign(rng))).collect()
}

/// A randomly colored and oriented braid closure.
pub fn link<R: Rng>(rng: &mut R) -> (BraidWord, Vec<(Color, Sign)>, BicoloredLink) {
    let w = word(rng, 4, 12);
    let l = labels(rng, &w);
    let closure = BicoloredLink::braid_closure(&w, &l).expect("braid closures are valid links");
    (w, l, closure)
}

fn widths(t: &ColoredTangle) -> Vec<usize> {
    let mut w = t.top_width();
    let mut out = vec![w];
    for op in t.ops() {
        match op {
            Op::Cup { .. } => w += 2,
            Op::Cap { .. } => w -= 2,
            Op::Cross { .. } => {}
        }
        out.push(w);
    }
    out
}

/// One random Reidemeister move that applies to `t`, if any is found.
pub fn reidemeister_move<R: Rng>(rng: &mut R, t: &ColoredTangle) -> Option<(Move, ColoredTangle)> {
    let ws = widths(t);
    for _ in 0..64 {
        let mv = match rng.gen_range(0..3) {
            0 => {
                let level = rng.gen_range(0..ws.len());
                if ws[level] == 0 {
                    continue;
                }
                Move::R1 { level, position: rng.gen_range(1..=ws[level]), sign: sign(rng) }
            }
            1 => {
                let level = rng.gen_range(0..ws.len());
                if ws[level] < 2 {
                    continue;
                }
                Move::R2 { level, position: rng.gen_range(1..ws[level]), sign: sign(rng) }
            }
            _ => {
                let candidates: Vec<usize> = (0..t.ops().len().saturating_sub(2)).collect();
                match candidates.choose(rng) {
                    Some(&index) => Move::R3 { index },
                    None => continue,
                }
            }
        };
        match reidemeister(t, mv) {
            Ok(next) => return Some((mv, next)),
            Err(Error::BadSite(_)) => continue,
            Err(e) => panic!("unexpected error from {mv:?}: {e}"),
        }
    }
    None
}

/// Applies up to `steps` random moves and returns the moves used.
pub fn reidemeister_sequence<R: Rng>(rng: &mut R, t: &ColoredTangle, steps: usize) -> (Vec<Move>, ColoredTangle) {
    let mut cur = t.clone();
    let mut moves = Vec::new();
    for _ in 0..steps {
        match reidemeister_move(rng, &cur) {
            Some((mv, next)) => {
                moves.push(mv);
                cur = next;
            }
            None => break,
        }
    }
    (moves, cur)
}

/// A random sequence of handle slides among the 2-handles.
pub fn slides<R: Rng>(rng: &mut R, d: &KirbyDiagram, steps: usize) -> (Vec<(String, String, Sign)>, KirbyDiagram) {
    let ids: Vec<String> = d.two_handles().iter().map(|h| h.id.clone()).collect();
    let mut cur = d.clone();
    let mut seq = Vec::new();
    if ids.len() < 2 {
        return (seq, cur);
    }
    for _ in 0..steps {
        let picked: Vec<&String> = ids.choose_multiple(rng, 2).collect();
        let (a, b, s) = (picked[0].clone(), picked[1].clone(), sign(rng));
        cur = handle_slide(&cur, &a, &b, s).expect("distinct 2-handles can always be slid");
        seq.push((a, b, s));
    }
    (seq, cur)
}

/// A deck-symmetric link: a random closure together with its color swap.
pub fn symmetric_pair<R: Rng>(rng: &mut R) -> (BicoloredLink, BicoloredLink) {
    let (_, _, l) = link(rng);
    let swapped = BicoloredLink::new(l.tangle().color_swapped()).expect("color swap keeps a link closed");
    (l, swapped)
}

/// Closed-case data on a model slice with deck-symmetric sides, `C⁻` the
/// color swap of `C⁺`, and matching windings at both ends.
pub fn closed_case<R: Rng>(rng: &mut R, slice: ConcordanceSlice) -> ClosedCaseData {
    let mut s = slice;
    for end in [End::Plus, End::Minus] {
        let w = rng.gen_range(-3..=3);
        for c in [Color::Red, Color::Blue] {
            s = s.with_side(end, c, clasp_side(c, c.swapped(), w)).expect("model slices carry one side of each color");
        }
    }
    let (c_plus, c_minus) = symmetric_pair(rng);
    let (wr, wb) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    ClosedCaseData { slice: s, c_plus, c_minus, w_r_plus: wr, w_r_minus: wr, w_b_plus: wb, w_b_minus: wb }
}
