//! Integer matrix normal forms: row-style Hermite form with membership
//! testing, Smith normal form with a tracked right transform, and exact
//! inversion of unimodular matrices. Everything over BigInt.

use num::{BigInt, BigRational, One, Signed, Zero};
use num_integer::Integer;

pub fn identity_mat(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Row Hermite normal form: returns the nonzero rows, pivots positive,
/// pivot columns strictly increasing, entries above each pivot reduced.
pub fn hnf_rows(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return m;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut top = 0usize;
    for c in 0..cols {
        if top == rows {
            break;
        }
        loop {
            let Some(best) = (top..rows)
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].abs())
            else {
                break;
            };
            m.swap(top, best);
            if m[top][c].is_negative() {
                for x in m[top].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            let mut dirty = false;
            let pivot = m[top][c].clone();
            for i in top + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&pivot);
                for j in 0..cols {
                    let t = &q * &m[top][j];
                    m[i][j] -= t;
                }
                if !m[i][c].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if m[top][c].is_zero() {
            continue;
        }
        // reduce the entries above the pivot
        let pivot = m[top][c].clone();
        for i in 0..top {
            if m[i][c].is_zero() {
                continue;
            }
            let q = m[i][c].div_floor(&pivot);
            for j in 0..cols {
                let t = &q * &m[top][j];
                m[i][j] -= t;
            }
        }
        top += 1;
    }
    m.truncate(top);
    m
}

/// True iff x lies in the row span (over Z) of an HNF matrix.
pub fn in_row_span(hnf: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    let mut v = x.to_vec();
    for row in hnf {
        let c = row.iter().position(|e| !e.is_zero()).expect("nonzero row");
        if v[c].is_zero() {
            continue;
        }
        let (q, r) = v[c].div_rem(&row[c]);
        if !r.is_zero() {
            return false;
        }
        for j in 0..v.len() {
            let t = &q * &row[j];
            v[j] -= t;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Smith normal form data: U * M * V = diag for unimodular U, V; only V and
/// the diagonal are kept (the row transform is never needed downstream).
#[derive(Debug, Clone)]
pub struct Smith {
    /// one entry per column of the input; zero marks a free column
    pub diag: Vec<BigInt>,
    /// square right transform, cols x cols
    pub v: Vec<Vec<BigInt>>,
}

pub fn smith_normal_form(input: &[Vec<BigInt>]) -> Smith {
    let rows = input.len();
    let cols = if rows == 0 { 0 } else { input[0].len() };
    let mut a: Vec<Vec<BigInt>> = input.to_vec();
    let mut v = identity_mat(cols);
    let t_max = rows.min(cols);

    let col_op = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        // column dst -= q * column src
        for row in a.iter_mut() {
            let t = q * &row[src];
            row[dst] -= t;
        }
        for row in v.iter_mut() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    };
    let col_swap = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut start = 0usize;
    'outer: loop {
        // diagonalize the trailing block from `start`
        let mut t = start;
        while t < t_max {
            // locate a minimal nonzero entry in the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            if pj != t {
                col_swap(&mut a, &mut v, t, pj);
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            let pivot = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                for j in t..cols {
                    let x = &q * &a[t][j];
                    a[i][j] -= x;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                col_op(&mut a, &mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue; // smaller entries appeared; redo this index
            }
            t += 1;
        }
        // enforce the divisibility chain: fold a violating later diagonal
        // entry into an earlier column and re-diagonalize from there
        for t in 0..t_max {
            if a[t][t].is_zero() {
                continue;
            }
            for s in t + 1..t_max {
                if !a[s][s].is_zero() && !(&a[s][s] % &a[t][t]).is_zero() {
                    let minus_one = -BigInt::one();
                    col_op(&mut a, &mut v, t, s, &minus_one); // col t += col s
                    start = t;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let diag = (0..cols)
        .map(|i| if i < t_max { a[i][i].abs() } else { BigInt::zero() })
        .collect();
    Smith { diag, v }
}

/// Exact inverse of an integer matrix with determinant +-1.
pub fn invert_unimodular(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            let mut r: Vec<BigRational> =
                row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend(std::iter::repeat(BigRational::zero()).take(n));
            r
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        row[n + i] = BigRational::one();
    }
    for c in 0..n {
        let pr = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .expect("matrix is singular");
        a.swap(c, pr);
        let inv = a[c][c].clone().recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for cc in 0..2 * n {
                    let t = &f * &a[c][cc];
                    a[r][cc] -= t;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "inverse is not integral");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul_int(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                let x = &a[i][t] * &b[t][j];
                out[i][j] += x;
            }
        }
    }
    out
}

pub fn row_times_mat(x: &[BigInt], m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let cols = m[0].len();
    let mut out = vec![BigInt::zero(); cols];
    for (t, xv) in x.iter().enumerate() {
        if xv.is_zero() {
            continue;
        }
        for j in 0..cols {
            let v = xv * &m[t][j];
            out[j] += v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect()
    }

    #[test]
    fn hnf_and_membership() {
        let h = hnf_rows(mat(&[&[2, 0], &[0, 3], &[1, 1]]));
        // the lattice is all of Z^2: 1 = 3 - 2, etc.
        assert!(in_row_span(&h, &[bi(1), bi(0)]));
        assert!(in_row_span(&h, &[bi(0), bi(1)]));

        let h = hnf_rows(mat(&[&[2, 0], &[0, 4]]));
        assert!(in_row_span(&h, &[bi(2), bi(4)]));
        assert!(!in_row_span(&h, &[bi(1), bi(0)]));
        assert!(!in_row_span(&h, &[bi(0), bi(2)]));
        assert!(in_row_span(&h, &[bi(-6), bi(8)]));
    }

    #[test]
    fn hnf_index() {
        // index of the lattice = product of pivots
        let h = hnf_rows(mat(&[&[3, 1], &[1, 3]]));
        let idx: BigInt = h.iter().enumerate().map(|(i, r)| r[i].clone()).product();
        assert_eq!(idx, bi(8));
    }

    #[test]
    fn smith_small() {
        let m = mat(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![bi(2), bi(4)]);
        let m = mat(&[&[1, 0], &[0, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![bi(1), bi(1)]);
        // diag divisibility on a denser example
        let m = mat(&[&[6, 10, 15], &[10, 15, 6], &[15, 6, 10]]);
        let s = smith_normal_form(&m);
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn smith_rowspan_consistency() {
        // rowspan(M * V) must equal rowspan(diag)
        let m = mat(&[&[4, 6, 0], &[0, 9, 3], &[2, 0, 8]]);
        let s = smith_normal_form(&m);
        let mv = mat_mul_int(&m, &s.v);
        let h1 = hnf_rows(mv);
        let d: Vec<Vec<BigInt>> = (0..3)
            .map(|i| {
                let mut r = vec![BigInt::zero(); 3];
                r[i] = s.diag[i].clone();
                r
            })
            .collect();
        let h2 = hnf_rows(d);
        assert_eq!(h1, h2);
    }

    #[test]
    fn unimodular_inverse() {
        let m = mat(&[&[1, 2], &[1, 3]]);
        let inv = invert_unimodular(&m);
        assert_eq!(mat_mul_int(&m, &inv), identity_mat(2));
        let s = smith_normal_form(&mat(&[&[4, 6, 0], &[0, 9, 3], &[2, 0, 8]]));
        let vi = invert_unimodular(&s.v);
        assert_eq!(mat_mul_int(&s.v, &vi), identity_mat(3));
    }

    #[test]
    fn quotient_structure_example() {
        // Z^2 / <(2,0),(0,2),(1,1)> = Z/2
        let m = mat(&[&[2, 0], &[0, 2], &[1, 1]]);
        let s = smith_normal_form(&m);
        let nontrivial: Vec<&BigInt> = s.diag.iter().filter(|d| **d > bi(1)).collect();
        assert_eq!(nontrivial, vec![&bi(2)]);
        // class of (1,0) is the nonzero element: coordinates via V
        let coords = row_times_mat(&[bi(1), bi(0)], &s.v);
        let reduced: Vec<BigInt> = coords
            .iter()
            .zip(&s.diag)
            .map(|(c, d)| if d.is_zero() { c.clone() } else { c.mod_floor(d) })
            .collect();
        assert!(reduced.iter().any(|x| !x.is_zero()));
    }
}
