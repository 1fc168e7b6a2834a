//! Small dense exact linear algebra over the rationals.

use crate::exactnum::Rational;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<Rational>>;

/// Row-reduces `m` in place to reduced echelon form; returns pivot columns.
fn rref(m: &mut Mat, ncols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Mat) -> usize {
    if a.is_empty() {
        return 0;
    }
    let mut m = a.clone();
    let n = m[0].len();
    rref(&mut m, n).len()
}

#[allow(clippy::needless_range_loop)]
pub fn det(a: &Mat) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let v = &m[c][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
    }
    d
}

/// Solves `a x = b` when the solution exists and is unique.
pub fn solve(a: &Mat, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let ncols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Mat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols + 1);
    if pivots.contains(&ncols) || pivots.len() != ncols {
        return None;
    }
    Some((0..ncols).map(|i| m[i][ncols].clone()).collect())
}

/// Basis of `{x : a x = 0}`.
pub fn nullspace(a: &Mat, ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Sylvester's criterion: leading principal minors alternate in sign starting negative.
pub fn is_negative_definite(a: &Mat) -> bool {
    (1..=a.len()).all(|k| {
        let minor: Mat = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det(&minor);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

pub fn submatrix(a: &Mat, idx: &[usize]) -> Mat {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect())
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q};

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_solve() {
        let a = m(&[
            &[-5, 1, 0, 0],
            &[1, -2, 1, 1],
            &[0, 1, -1, 0],
            &[0, 1, 0, -1],
        ]);
        assert_eq!(det(&a), int(-1));
        let x = solve(&a, &[int(0), int(0), q(2, 3), q(2, 3)]).unwrap();
        assert_eq!(x, vec![q(4, 3), q(20, 3), int(6), int(6)]);
        assert!(!is_negative_definite(&a));
        assert!(is_negative_definite(&submatrix(&a, &[0, 1])));
        assert_eq!(combinations(4, 2).len(), 6);
    }

    #[test]
    fn kernel() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = nullspace(&a, 3);
        assert_eq!(k, vec![vec![int(1), int(-1), int(1)]]);
        assert_eq!(rank(&a), 2);
        assert!(solve(&m(&[&[1, 1], &[2, 2]]), &[int(1), int(2)]).is_none());
    }
}
