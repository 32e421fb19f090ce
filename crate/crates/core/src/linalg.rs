//! Exact linear algebra over ℚ and ℤ for small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Matrix = Vec<Vec<BigRational>>;

pub(crate) fn to_rational(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut m = to_rational(rows);
    rref(&mut m, ncols).len()
}

fn lcm_of_denominators(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Primitive integer vector along `v`.
pub(crate) fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis of the rational null space of `rows`, each vector scaled to be
/// primitive integral.
pub(crate) fn rational_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m = to_rational(rows);
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// A ℤ-basis of `{x ∈ ℤ^n : C x = 0}`, by integer column reduction of `C`
/// while tracking the unimodular transform.
pub(crate) fn integer_kernel(c: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = c.to_vec();
    // u[j] is column j of the transform, stored as a vector
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut piv = 0;
    for row in 0..a.len() {
        if piv == n {
            break;
        }
        loop {
            // smallest nonzero entry among columns piv.. moves to piv
            let best = (piv..n)
                .filter(|&j| !a[row][j].is_zero())
                .min_by(|&x, &y| a[row][x].abs().cmp(&a[row][y].abs()));
            let Some(b) = best else { break };
            swap_cols(&mut a, &mut u, piv, b);
            let mut done = true;
            for j in piv + 1..n {
                if a[row][j].is_zero() {
                    continue;
                }
                let q = a[row][j].div_floor(&a[row][piv]);
                sub_col(&mut a, &mut u, j, piv, &q);
                if !a[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[row][piv].is_zero() {
            piv += 1;
        }
    }
    (piv..n).map(|j| u[j].clone()).collect()
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in a.iter_mut() {
        r.swap(i, j);
    }
    u.swap(i, j);
}

/// column j -= q * column k
fn sub_col(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for r in a.iter_mut() {
        let d = q * &r[k];
        r[j] -= d;
    }
    let uk = u[k].clone();
    for (x, y) in u[j].iter_mut().zip(uk) {
        *x -= q * y;
    }
}

/// Determinant of a square integer matrix (Bareiss).
pub(crate) fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `Σ_j x_j cols[j] = target` over ℚ; `None` if inconsistent. The
/// columns must be linearly independent.
pub(crate) fn solve(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let rows: Vec<Vec<i64>> = (0..target.len())
        .map(|i| cols.iter().map(|c| c[i]).chain(std::iter::once(target[i])).collect())
        .collect();
    let mut m = to_rational(&rows);
    let pivots = rref(&mut m, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&[vec![2, 0], vec![0, 2]]), BigInt::from(4));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), BigInt::from(-3));
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn kernels() {
        let k = rational_kernel(&[vec![1, 1, 0]], 3);
        assert_eq!(k.len(), 2);
        // 2x + 4y = 0 has lattice kernel generated by (2, -1)
        let z = integer_kernel(&[ints(&[2, 4])], 2);
        assert_eq!(z.len(), 1);
        let v = &z[0];
        assert!(*v == ints(&[2, -1]) || *v == ints(&[-2, 1]));
        // saturation: x - y = 0 in ℤ^3 is generated by (1,1,0), (0,0,1)
        let z = integer_kernel(&[ints(&[1, -1, 0])], 3);
        assert_eq!(z.len(), 2);
        let d = det(&[
            z[0].iter().map(|x| x.try_into().unwrap()).collect(),
            z[1].iter().map(|x| x.try_into().unwrap()).collect(),
            vec![1, 0, 0],
        ]);
        assert_eq!(d.abs(), BigInt::one());
    }

    #[test]
    fn solving() {
        let x = solve(&[vec![1, 0, 1], vec![0, 1, 1]], &[2, 3, 5]).unwrap();
        assert_eq!(x, vec![BigRational::from_integer(2.into()), BigRational::from_integer(3.into())]);
        assert!(solve(&[vec![1, 0, 1]], &[1, 1, 1]).is_none());
    }
}
