use serde::{Deserialize, Serialize};

use super::Sign;
use crate::error::{Error, Result};

/// A braid generator `σ_position^sign`; positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter(pub usize, pub Sign);

impl Letter {
    pub fn position(self) -> usize {
        self.0
    }

    pub fn sign(self) -> Sign {
        self.1
    }
}

/// A word in the braid generators on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("a braid needs at least one strand".into()));
        }
        for (k, l) in letters.iter().enumerate() {
            if l.0 == 0 || l.0 >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {k} has position {} outside [1, {}]",
                    l.0,
                    strands - 1
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    /// Convenience constructor from `(position, ±1)` pairs.
    pub fn from_pairs(strands: usize, pairs: &[(usize, i64)]) -> Result<Self> {
        let letters = pairs
            .iter()
            .map(|&(p, s)| {
                Sign::from_int(s)
                    .map(|s| Letter(p, s))
                    .ok_or_else(|| Error::InvalidBraid(format!("sign must be ±1, got {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// 0-based permutation: the strand entering at top position `p` leaves at
    /// bottom position `perm[p]`. Signs do not affect it.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.0 - 1, l.0);
        }
        // at[pos] = origin now sitting at pos; invert.
        let mut perm = vec![0; self.strands];
        for (pos, &origin) in at.iter().enumerate() {
            perm[origin] = pos;
        }
        perm
    }

    /// Cycles of the closure permutation, each listed from its smallest
    /// 0-based position and ordered by that position.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = perm[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Components of the closure with their winding numbers: each component
    /// is a cycle of 1-based strand positions and winds once per strand.
    pub fn components_and_windings(&self) -> Vec<(Vec<usize>, usize)> {
        self.cycles()
            .into_iter()
            .map(|c| {
                let w = c.len();
                (c.into_iter().map(|p| p + 1).collect(), w)
            })
            .collect()
    }

    /// The word repeated `m` times.
    pub fn power(&self, m: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * m);
        for _ in 0..m {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Inverse word: reversed, every sign flipped.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| Letter(l.0, l.1.flipped())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator_is_one_component_of_winding_two() {
        let w = BraidWord::from_pairs(2, &[(1, 1)]).unwrap();
        assert_eq!(w.components_and_windings(), vec![(vec![1, 2], 2)]);
    }

    #[test]
    fn squared_generator_has_two_components() {
        let w = BraidWord::from_pairs(2, &[(1, 1), (1, 1)]).unwrap();
        assert_eq!(w.components_and_windings(), vec![(vec![1], 1), (vec![2], 1)]);
    }

    #[test]
    fn empty_word_on_three_strands() {
        let w = BraidWord::new(3, vec![]).unwrap();
        assert_eq!(w.components_and_windings(), vec![(vec![1], 1), (vec![2], 1), (vec![3], 1)]);
    }

    #[test]
    fn signs_do_not_change_permutation() {
        let a = BraidWord::from_pairs(4, &[(1, 1), (3, -1), (2, 1)]).unwrap();
        let b = BraidWord::from_pairs(4, &[(1, -1), (3, 1), (2, -1)]).unwrap();
        assert_eq!(a.permutation(), b.permutation());
    }

    #[test]
    fn out_of_range_position_rejected() {
        assert!(BraidWord::from_pairs(2, &[(2, 1)]).is_err());
        assert!(BraidWord::from_pairs(2, &[(0, 1)]).is_err());
        assert!(BraidWord::from_pairs(2, &[(1, 2)]).is_err());
    }

    #[test]
    fn windings_sum_to_strand_count() {
        let w = BraidWord::from_pairs(5, &[(1, 1), (2, -1), (4, 1), (1, 1), (3, 1)]).unwrap();
        let total: usize = w.components_and_windings().iter().map(|c| c.1).sum();
        assert_eq!(total, 5);
    }
}
