//! Exact Smith normal form over the integers, with transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    debug_assert!(a.iter().all(|r| r.len() == inner));
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let prod = &a[i][k] * &b[k][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

/// Fraction-free determinant (Bareiss). Used to certify that the transforms
/// are unimodular.
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// `u * input * v = diag(d_1..d_r, 0..)` with `d_1 | d_2 | ... | d_r`,
/// all `d_i > 0`, and `u`, `v` unimodular.
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

// Row t gets the gcd, row i gets zero in column t. On the exact path the
// pivot row is untouched, so no new nonzeros appear elsewhere in row t.
fn clear_in_column(s: &mut Matrix, u: &mut Matrix, t: usize, i: usize) {
    let p = s[t][t].clone();
    let e = s[i][t].clone();
    if (&e % &p).is_zero() {
        let q = &e / &p;
        row_sub(s, i, t, &q);
        row_sub(u, i, t, &q);
        return;
    }
    let g = p.extended_gcd(&e);
    let (pg, eg) = (&p / &g.gcd, &e / &g.gcd);
    row_combine(s, t, i, &g.x, &g.y, &eg, &pg);
    row_combine(u, t, i, &g.x, &g.y, &eg, &pg);
}

fn clear_in_row(s: &mut Matrix, v: &mut Matrix, t: usize, j: usize) {
    let p = s[t][t].clone();
    let e = s[t][j].clone();
    if (&e % &p).is_zero() {
        let q = &e / &p;
        col_sub(s, j, t, &q);
        col_sub(v, j, t, &q);
        return;
    }
    let g = p.extended_gcd(&e);
    let (pg, eg) = (&p / &g.gcd, &e / &g.gcd);
    col_combine(s, t, j, &g.x, &g.y, &eg, &pg);
    col_combine(v, t, j, &g.x, &g.y, &eg, &pg);
}

fn row_sub(m: &mut Matrix, i: usize, t: usize, q: &BigInt) {
    let src = m[t].clone();
    for (dst, x) in m[i].iter_mut().zip(&src) {
        *dst -= q * x;
    }
}

fn col_sub(m: &mut Matrix, j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let d = q * &row[t];
        row[j] -= d;
    }
}

// (row_t, row_i) <- (x row_t + y row_i, pg row_i - eg row_t); det x*pg + y*eg = 1.
fn row_combine(m: &mut Matrix, t: usize, i: usize, x: &BigInt, y: &BigInt, eg: &BigInt, pg: &BigInt) {
    let rt = m[t].clone();
    let ri = m[i].clone();
    for j in 0..rt.len() {
        m[t][j] = x * &rt[j] + y * &ri[j];
        m[i][j] = pg * &ri[j] - eg * &rt[j];
    }
}

fn col_combine(m: &mut Matrix, t: usize, j: usize, x: &BigInt, y: &BigInt, eg: &BigInt, pg: &BigInt) {
    for row in m.iter_mut() {
        let a = row[t].clone();
        let b = row[j].clone();
        row[t] = x * &a + y * &b;
        row[j] = pg * &b - eg * &a;
    }
}

fn negate_row(m: &mut Matrix, i: usize) {
    for x in m[i].iter_mut() {
        *x = -x.clone();
    }
}

pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut s = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut rank = 0;
    while rank < rows.min(cols) {
        let t = rank;
        // Pivot: nonzero entry of smallest magnitude in the active block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[i][j].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => s[i][j].abs() < s[pi][pj].abs(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            s.swap(t, pi);
            u.swap(t, pi);
        }
        if pj != t {
            for row in s.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }

        // Clearing the row can dirty the column and vice versa, but only on
        // the gcd path, which strictly shrinks the pivot; this terminates.
        loop {
            for i in t + 1..rows {
                if !s[i][t].is_zero() {
                    clear_in_column(&mut s, &mut u, t, i);
                }
            }
            if (t + 1..cols).all(|j| s[t][j].is_zero()) {
                break;
            }
            for j in t + 1..cols {
                if !s[t][j].is_zero() {
                    clear_in_row(&mut s, &mut v, t, j);
                }
            }
            if (t + 1..rows).all(|i| s[i][t].is_zero()) {
                break;
            }
        }
        rank += 1;
    }

    for i in 0..rank {
        if s[i][i].is_negative() {
            negate_row(&mut s, i);
            negate_row(&mut u, i);
        }
    }

    // Repair the divisibility chain pairwise: diag(a, b) is equivalent to
    // diag(gcd, a b / gcd) by a unimodular change on both sides.
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            if (&s[i + 1][i + 1] % &s[i][i]).is_zero() {
                continue;
            }
            for row_idx in 0..rows {
                let d = s[row_idx][i + 1].clone();
                s[row_idx][i] += d;
            }
            for row in v.iter_mut() {
                let d = row[i + 1].clone();
                row[i] += d;
            }
            clear_in_column(&mut s, &mut u, i, i + 1);
            let q = &s[i][i + 1] / &s[i][i];
            col_sub(&mut s, i + 1, i, &q);
            col_sub(&mut v, i + 1, i, &q);
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let diag: Vec<BigInt> = (0..rank).map(|i| s[i][i].clone()).collect();
    debug_assert!(diag.iter().all(|d| d.is_positive()));
    debug_assert!(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    SmithForm { diag, u, v, rows, cols }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) {
        let f = smith_normal_form(m);
        // u * m * v equals the diagonal.
        let d = mat_mul(&mat_mul(&f.u, m), &f.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j && i < f.diag.len() {
                    assert_eq!(*x, f.diag[i]);
                } else {
                    assert!(x.is_zero(), "entry ({i},{j}) is {x}");
                }
            }
        }
        for w in f.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "no divisibility: {} | {}", w[0], w[1]);
        }
        assert!(f.diag.iter().all(|d| d.is_positive()));
        assert_eq!(determinant(&f.u).abs(), BigInt::one());
        assert_eq!(determinant(&f.v).abs(), BigInt::one());
    }

    #[test]
    fn known_forms() {
        let m = from_i64(&[vec![2, 4], vec![6, 8]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.diag, vec![BigInt::from(2), BigInt::from(4)]);
        check(&m);

        // Boundary matrix of the circle: both faces agree, so zero.
        let z = from_i64(&[vec![0]]);
        assert!(smith_normal_form(&z).diag.is_empty());

        // A classic torsion example.
        let m = from_i64(&[vec![1, 1], vec![1, -1]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.diag, vec![BigInt::from(1), BigInt::from(2)]);
        check(&m);
    }

    #[test]
    fn empty_and_rectangular() {
        check(&from_i64(&[vec![0, 0, 0]]));
        check(&from_i64(&[vec![3], vec![6], vec![9]]));
        check(&Matrix::new());
        let f = smith_normal_form(&from_i64(&[vec![0, 5, 0], vec![0, 0, 0]]));
        assert_eq!(f.diag, vec![BigInt::from(5)]);
    }

    #[test]
    fn determinant_matches_diag_product() {
        let m = from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let f = smith_normal_form(&m);
        let prod: BigInt = f.diag.iter().product();
        assert_eq!(prod, determinant(&m).abs());
        check(&m);
    }
}
