//! Exact linear algebra over `Q` and `Z` at desk scale.
//!
//! Matrices are row-major `Vec<Vec<_>>`.  Rational routines use plain
//! Gauss–Jordan elimination; the integer routines compute a column Hermite
//! form together with its unimodular transform, which yields saturated
//! integer kernels and unimodular completions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand for exact rationals.
pub type Q = BigRational;

/// The rational `n/1`.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Lifts an integer matrix to rationals.
pub fn to_q(m: &[Vec<BigInt>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right null space `{x : m x = 0}` (`cols` columns).
pub fn kernel(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Unique solution of the square system `a x = b`, if `a` is invertible.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square rational matrix.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant of a square rational matrix.
pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Q::zero() };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                let pr = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

/// Matrix product.
pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Matrix–vector product.
pub fn mat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Scales a rational vector to a primitive integer vector (gcd 1) with the
/// same direction; the zero vector maps to zeros.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Column-style Hermite reduction: returns `(H, U)` with `M U = H`, `U`
/// unimodular and the nonzero columns of `H` occupying a leading block
/// whose size is the rank.  The trailing columns of `U` form a basis of the
/// (saturated) integer kernel of `M`.
pub fn column_hnf(m: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, usize) {
    let mut h = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut col = 0;
    for i in 0..h.len() {
        if col == cols {
            break;
        }
        for j in col + 1..cols {
            if h[i][j].is_zero() {
                continue;
            }
            let a = h[i][col].clone();
            let b = h[i][j].clone();
            let e = a.extended_gcd(&b);
            let (x, y, g) = (e.x, e.y, e.gcd);
            let (ag, bg) = (&a / &g, &b / &g);
            let combine = |mat: &mut Vec<Vec<BigInt>>| {
                for row in mat.iter_mut() {
                    let ci = row[col].clone();
                    let cj = row[j].clone();
                    row[col] = &x * &ci + &y * &cj;
                    row[j] = -&bg * &ci + &ag * &cj;
                }
            };
            combine(&mut h);
            combine(&mut u);
        }
        if !h[i][col].is_zero() {
            if h[i][col].is_negative() {
                for row in h.iter_mut().chain(u.iter_mut()) {
                    row[col] = -row[col].clone();
                }
            }
            col += 1;
        }
    }
    (h, u, col)
}

/// Basis (as rows) of the saturated integer kernel `{x ∈ Z^cols : M x = 0}`.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let (_, u, r) = column_hnf(m, cols);
    (r..cols).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Row Hermite normal form of an integer matrix (zero rows removed); a
/// canonical basis of the row lattice.
pub fn row_hnf(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, piv);
            let mut done = true;
            for i in r + 1..rows {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pr = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                        *x -= &q * y;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    let pr = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let m = vec![vec![qi(1), qi(2), qi(3)], vec![qi(2), qi(4), qi(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(mat_vec(&m, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = vec![vec![qi(1), qi(1)], vec![qi(1), qi(0)]];
        assert_eq!(det(&m), qi(-1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]);
        assert!(inverse(&[vec![qi(1), qi(2)], vec![qi(2), qi(4)]]).is_none());
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x + 4y = 0 has integer kernel generated by (2, -1), not (4, -2).
        let k = integer_kernel(&[bi(&[2, 4])], 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(BigInt::from(2) * &v[0] + BigInt::from(4) * &v[1], BigInt::zero());
        assert_eq!(v[0].gcd(&v[1]), BigInt::one());
    }

    #[test]
    fn row_hnf_is_canonical() {
        let a = row_hnf(&[bi(&[2, 2, -8]), bi(&[-1, -1, 4])]);
        assert_eq!(a, vec![bi(&[1, 1, -4])]);
        let b = row_hnf(&[bi(&[0, 3]), bi(&[2, 1])]);
        let c = row_hnf(&[bi(&[2, 4]), bi(&[2, 1])]);
        assert_eq!(b, c);
    }
}
