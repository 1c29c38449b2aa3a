use lbkit::diagrams::{BicoloredLink, BraidWord, Color, Sign};
use num_integer::Integer;

/// Determinant by cofactor expansion; meant for tiny matrices.
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k`: gcd of all `k × k` minors.
pub fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i64 {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut g = 0i64;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&det(&minor));
        }
    }
    g
}

/// Invariant factors `d_k / d_{k-1}`, zero once a divisor vanishes.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1i64;
    for k in 1..=r.min(c) {
        let d = determinantal_divisor(m, k);
        if d == 0 || prev == 0 {
            out.push(0);
            prev = 0;
        } else {
            out.push(d / prev);
            prev = d;
        }
    }
    out
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// [`invariant_factors`] for a row-major matrix of at most 3 × 3, without
/// allocating. Only the first `min(rows, cols)` entries are meaningful.
pub fn small_invariant_factors(rows: usize, cols: usize, a: &[i64]) -> [i64; 3] {
    let at = |i: usize, j: usize| a[i * cols + j];
    let d1 = a[..rows * cols].iter().fold(0i64, |g, x| g.gcd(x));
    let mut d2 = 0i64;
    for &(r0, r1) in PAIRS.iter().filter(|p| p.1 < rows) {
        for &(c0, c1) in PAIRS.iter().filter(|p| p.1 < cols) {
            d2 = d2.gcd(&(at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0)));
        }
    }
    let d3 = if rows == 3 && cols == 3 {
        at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
            + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0))
    } else {
        0
    }
    .abs();
    let mut out = [0i64; 3];
    let mut prev = 1i64;
    for (k, d) in [d1, d2, d3].into_iter().enumerate().take(rows.min(cols)) {
        if d == 0 || prev == 0 {
            prev = 0;
        } else {
            out[k] = d / prev;
            prev = d;
        }
    }
    out
}

/// Red/blue linking number of a braid closure, read straight off the word.
/// `labels` follow the closure's cycles ordered by smallest strand.
pub fn braid_closure_linking(word: &BraidWord, labels: &[(Color, Sign)]) -> i64 {
    let n = word.strands();
    // Follow each strand through the word to get the closure permutation.
    let mut at: Vec<usize> = (0..n).collect();
    let mut crossings = Vec::new();
    for l in word.letters() {
        let a = l.0 - 1;
        crossings.push((at[a], at[a + 1], l.1.value()));
        at.swap(a, a + 1);
    }
    let mut next = vec![0; n];
    for (pos, &origin) in at.iter().enumerate() {
        next[origin] = pos;
    }
    let mut owner = vec![usize::MAX; n];
    let mut k = 0;
    for s in 0..n {
        if owner[s] != usize::MAX {
            continue;
        }
        let mut p = s;
        while owner[p] == usize::MAX {
            owner[p] = k;
            p = next[p];
        }
        k += 1;
    }
    let sum: i64 = crossings
        .iter()
        .filter(|(a, b, _)| labels[owner[*a]].0 != labels[owner[*b]].0)
        .map(|&(a, b, s)| s * labels[owner[a]].1.value() * labels[owner[b]].1.value())
        .sum();
    sum / 2
}

/// Half the signed count of red/blue crossings of a link diagram.
pub fn mixed_crossing_linking(link: &BicoloredLink) -> i64 {
    let t = link.tangle();
    let sum: i64 = t
        .crossings()
        .iter()
        .filter(|c| t.component(c.over).color != t.component(c.under).color)
        .map(|c| c.sign.value())
        .sum();
    sum / 2
}

/// Number of components over a core-winding-`w` knot in the degree-`m`
/// cyclic cover.
pub fn cover_lift_count(w: usize, m: usize) -> usize {
    if w == 0 {
        m
    } else {
        w.gcd(&m)
    }
}

/// Multiset equality for integer lists.
pub fn same_multiset(a: &[i64], b: &[i64]) -> bool {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_of_small_matrices() {
        assert_eq!(invariant_factors(&[vec![6, 4], vec![4, 4]]), vec![2, 4]);
        assert_eq!(invariant_factors(&[vec![2, 0, 0], vec![0, 3, 0]]), vec![1, 6]);
        assert_eq!(invariant_factors(&[vec![0, 0], vec![0, 5]]), vec![5, 0]);
        assert_eq!(det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
    }

    #[test]
    fn small_path_agrees() {
        let cases: [(usize, usize, Vec<i64>); 4] = [
            (2, 2, vec![6, 4, 4, 4]),
            (3, 3, vec![1, 2, 3, 4, 5, 6, 7, 8, 10]),
            (2, 3, vec![2, 0, 0, 0, 3, 0]),
            (3, 1, vec![0, -3, 0]),
        ];
        for (r, c, a) in cases {
            let rows: Vec<Vec<i64>> = a.chunks(c).map(<[i64]>::to_vec).collect();
            assert_eq!(small_invariant_factors(r, c, &a)[..r.min(c)], invariant_factors(&rows)[..]);
        }
    }

    #[test]
    fn hopf_closure() {
        let w = BraidWord::from_pairs(2, &[(1, 1), (1, 1)]).unwrap();
        assert_eq!(braid_closure_linking(&w, &[(Color::Red, Sign::Plus), (Color::Blue, Sign::Plus)]), 1);
        assert_eq!(braid_closure_linking(&w, &[(Color::Red, Sign::Plus), (Color::Blue, Sign::Minus)]), -1);
        assert_eq!(braid_closure_linking(&w, &[(Color::Red, Sign::Plus), (Color::Red, Sign::Plus)]), 0);
    }

    #[test]
    fn lift_counts() {
        assert_eq!(cover_lift_count(2, 2), 2);
        assert_eq!(cover_lift_count(1, 3), 1);
        assert_eq!(cover_lift_count(0, 3), 3);
    }
}
