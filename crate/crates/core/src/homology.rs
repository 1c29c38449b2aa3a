//! Integer linear algebra and first homology of handle diagrams.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kirby::KirbyDiagram;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDiagram("matrix rows have different lengths".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows × cols");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        if n == 0 {
            1
        } else {
            (sign * a[n * n - 1]) as i64
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)]).collect()
    }
}

/// Smith normal form. Pivots are the entries of least absolute value in the
/// remaining block, ties broken by lowest row then column.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(i64, usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d[(i, j)].abs();
                    if x != 0 && best.is_none_or(|b| x < b.0) {
                        best = Some((x, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..r {
                let q = d[(i, t)] / p;
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..c {
                let q = d[(t, j)] / p;
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                clean &= d[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| d[(i, j)] % p != 0));
            match bad_row {
                Some(i) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `1 < d₁ | d₂ | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(rename = "torsion")]
    pub invariant_factors: Vec<i64>,
}

/// An element in canonical coordinates: free coordinates first, then one
/// residue per invariant factor.
pub type GroupElement = Vec<i64>;

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_diagonal(1, &[n])
    }

    /// Group presented by `generators` generators and relations given by the
    /// diagonal entries (missing entries are zero).
    pub fn from_diagonal(generators: usize, diagonal: &[i64]) -> Self {
        let mut free_rank = generators.saturating_sub(diagonal.len());
        let mut factors: Vec<i64> = Vec::new();
        for &x in diagonal.iter().take(generators) {
            match x.abs() {
                0 => free_rank += 1,
                1 => {}
                a => factors.push(a),
            }
        }
        // Re-establish the divisibility chain if the input lacked it.
        factors.sort_unstable();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..factors.len() {
                for j in i + 1..factors.len() {
                    if factors[j] % factors[i] != 0 {
                        let (g, l) = (factors[i].gcd(&factors[j]), factors[i].lcm(&factors[j]));
                        factors[i] = g;
                        factors[j] = l;
                        changed = true;
                    }
                }
            }
            factors.retain(|&x| x > 1);
            factors.sort_unstable();
        }
        Self { free_rank, invariant_factors: factors }
    }

    /// The cokernel `Z^rows / im(m)`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        Self::from_diagonal(m.rows(), &snf.diagonal())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.rank()]
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn normalize(&self, x: &[i64]) -> Result<GroupElement> {
        if x.len() != self.rank() {
            return Err(Error::InvalidTrace(format!(
                "element has {} coordinates, group {} needs {}",
                x.len(),
                self,
                self.rank()
            )));
        }
        let mut out = x.to_vec();
        for (k, d) in self.invariant_factors.iter().enumerate() {
            let i = self.free_rank + k;
            out[i] = out[i].rem_euclid(*d);
        }
        Ok(out)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Result<GroupElement> {
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if a.len() != b.len() {
            return Err(Error::InvalidTrace("elements of different groups".into()));
        }
        self.normalize(&sum)
    }

    /// Order of `x`; `None` for elements of infinite order.
    pub fn order(&self, x: &[i64]) -> Result<Option<i64>> {
        let x = self.normalize(x)?;
        if x[..self.free_rank].iter().any(|&v| v != 0) {
            return Ok(None);
        }
        let mut ord = 1i64;
        for (k, d) in self.invariant_factors.iter().enumerate() {
            let v = x[self.free_rank + k];
            ord = ord.lcm(&(d / v.gcd(d)));
        }
        Ok(Some(ord))
    }

    /// The `k`-th canonical generator.
    pub fn generator(&self, k: usize) -> GroupElement {
        let mut e = self.zero();
        e[k] = 1;
        e
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// All elements of order exactly 2, in lexicographic coordinate order.
pub fn torsion_order2(g: &AbelianGroup) -> Vec<GroupElement> {
    let halves: Vec<(usize, i64)> = g
        .invariant_factors
        .iter()
        .enumerate()
        .filter(|(_, d)| *d % 2 == 0)
        .map(|(k, d)| (g.free_rank + k, d / 2))
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << halves.len()) {
        let mut e = g.zero();
        for (bit, &(i, h)) in halves.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                e[i] = h;
            }
        }
        out.push(e);
    }
    out.sort();
    out
}

/// Winding matrix: one row per dotted circle, one column per 2-handle.
pub fn winding_matrix(d: &KirbyDiagram) -> IntMatrix {
    let mut m = IntMatrix::zeros(d.dotted().len(), d.two_handles().len());
    for (j, h) in d.two_handles().iter().enumerate() {
        for (i, w) in h.winding.iter().enumerate() {
            m[(i, j)] = *w;
        }
    }
    m
}

/// First homology of the 4-manifold: the cokernel of the winding matrix.
pub fn h1(d: &KirbyDiagram) -> AbelianGroup {
    AbelianGroup::cokernel(&winding_matrix(d))
}

/// First homology of the boundary 3-manifold, read from the surgery diagram
/// in which every dotted circle is replaced by a 0-framed unknot.
pub fn boundary_h1(d: &KirbyDiagram) -> Result<AbelianGroup> {
    if d.h3() != 0 || d.h4() != 0 {
        return Err(Error::ClosedHandles);
    }
    Ok(AbelianGroup::cokernel(&d.surgery_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check(a: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        for w in diag.windows(2) {
            assert!(w[0] >= 0);
            assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        }
        diag
    }

    #[test]
    fn identity_and_scalar() {
        assert_eq!(check(&IntMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(check(&m(&[&[2]])), vec![2]);
    }

    #[test]
    fn two_by_two_example() {
        assert_eq!(check(&m(&[&[6, 4], &[4, 4]])), vec![2, 4]);
    }

    #[test]
    fn non_square_and_degenerate() {
        assert_eq!(check(&m(&[&[2, 2, 0]])), vec![2]);
        assert_eq!(check(&m(&[&[0, 0], &[0, 0]])), vec![0, 0]);
        assert_eq!(check(&m(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(check(&IntMatrix::zeros(0, 3)), Vec::<i64>::new());
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[&[6, 4], &[4, 4]]).det(), 8);
        assert_eq!(m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det(), -2);
        assert_eq!(IntMatrix::zeros(0, 0).det(), 1);
    }

    #[test]
    fn cokernels() {
        assert_eq!(AbelianGroup::cokernel(&m(&[&[2, 2, 0]])), AbelianGroup::cyclic(2));
        assert_eq!(AbelianGroup::cokernel(&m(&[&[1, 1, 0]])), AbelianGroup::trivial());
        assert_eq!(AbelianGroup::cokernel(&IntMatrix::zeros(2, 0)), AbelianGroup::free(2));
    }

    #[test]
    fn canonical_form_repairs_divisibility() {
        assert_eq!(AbelianGroup::from_diagonal(2, &[2, 3]), AbelianGroup::cyclic(6));
        assert_eq!(AbelianGroup::from_diagonal(3, &[4, 6, 1]).invariant_factors, vec![2, 12]);
    }

    #[test]
    fn order_two_elements() {
        assert_eq!(torsion_order2(&AbelianGroup::cyclic(2)), vec![vec![1]]);
        assert!(torsion_order2(&AbelianGroup::free(1)).is_empty());
        assert_eq!(torsion_order2(&AbelianGroup::cyclic(4)), vec![vec![2]]);
        assert_eq!(torsion_order2(&AbelianGroup::from_diagonal(2, &[2, 2])).len(), 3);
    }

    #[test]
    fn element_orders() {
        let g = AbelianGroup::from_diagonal(3, &[0, 2, 6]);
        assert_eq!(g.order(&[0, 1, 0]).unwrap(), Some(2));
        assert_eq!(g.order(&[0, 1, 3]).unwrap(), Some(2));
        assert_eq!(g.order(&[0, 0, 2]).unwrap(), Some(3));
        assert_eq!(g.order(&[1, 0, 0]).unwrap(), None);
        assert_eq!(g.order(&[0, 0, 0]).unwrap(), Some(1));
        assert!(g.order(&[0]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::from_diagonal(3, &[0, 2]).to_string(), "Z^2 + Z/2");
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&AbelianGroup::cyclic(2)).unwrap();
        assert_eq!(s, r#"{"free_rank":0,"torsion":[2]}"#);
    }
}
