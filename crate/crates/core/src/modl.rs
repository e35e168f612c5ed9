//! Dense linear algebra over a prime field `F_l`, for the small dimensions
//! (at most 4) that show up in quotients `O / lO`.

pub type Vector = Vec<u64>;
pub type Matrix = Vec<Vec<u64>>;

pub fn reduce(x: i128, ell: u64) -> u64 {
    x.rem_euclid(ell as i128) as u64
}

pub fn inv(x: u64, ell: u64) -> u64 {
    assert!(x % ell != 0, "inverse of zero mod {ell}");
    pow(x, ell - 2, ell)
}

pub fn pow(b: u64, mut e: u64, ell: u64) -> u64 {
    let m = ell as u128;
    let mut acc = 1u128;
    let mut b128 = (b % ell) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b128 % m;
        }
        b128 = b128 * b128 % m;
        e >>= 1;
    }
    acc as u64
}

/// Reduced row echelon form and pivot columns.
pub fn rref(rows: &[Vector], ell: u64) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.iter().map(|r| r.iter().map(|x| x % ell).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let s = inv(m[r][c], ell);
        for x in m[r].iter_mut() {
            *x = *x * s % ell;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..ncols {
                    m[i][k] = (m[i][k] + ell * ell - f * m[r][k] % ell) % ell;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], ell: u64) -> usize {
    rref(rows, ell).1.len()
}

/// Coefficients `c` with `sum c_k basis[k] = target`, if any.
pub fn solve_combination(basis: &[Vector], target: &[u64], ell: u64) -> Option<Vector> {
    let n = basis.len();
    let dim = target.len();
    // Columns are basis vectors; augment with the target.
    let rows: Matrix = (0..dim)
        .map(|s| {
            let mut row: Vector = basis.iter().map(|b| b[s] % ell).collect();
            row.push(target[s] % ell);
            row
        })
        .collect();
    let (m, pivots) = rref(&rows, ell);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut c = vec![0u64; n];
    for (row, &pc) in m.iter().zip(&pivots) {
        c[pc] = row[n];
    }
    Some(c)
}

pub fn mat_mul(a: &Matrix, b: &Matrix, ell: u64) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| a[i][k] * b[k][j] % ell).sum::<u64>() % ell)
                .collect()
        })
        .collect()
}

pub fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Whether a square matrix is nilpotent (its `n`-th power vanishes).
pub fn is_nilpotent(a: &Matrix, ell: u64) -> bool {
    let mut p = a.clone();
    for _ in 1..a.len() {
        p = mat_mul(&p, a, ell);
    }
    is_zero_matrix(&p)
}

/// Roots of `x^2 - t x + n` in `F_l`, with multiplicity.
pub fn quadratic_roots(t: u64, n: u64, ell: u64) -> Vec<u64> {
    (0..ell)
        .filter(|&x| (x * x % ell + ell - t * x % ell + n) % ell == 0)
        .flat_map(|x| {
            let double = (2 * x) % ell == t % ell;
            if double {
                vec![x, x]
            } else {
                vec![x]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_solve() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows, 7), 2);
        let c = solve_combination(&rows[..], &[1, 3, 4], 7).unwrap();
        for s in 0..3 {
            let v: u64 = (0..3).map(|k| c[k] * rows[k][s]).sum::<u64>() % 7;
            assert_eq!(v, [1, 3, 4][s]);
        }
        assert!(solve_combination(&rows[..2], &[0, 0, 1], 7).is_none());
    }

    #[test]
    fn inverse_and_roots() {
        for ell in [2u64, 3, 5, 7, 11] {
            for x in 1..ell {
                assert_eq!(x * inv(x, ell) % ell, 1);
            }
        }
        assert_eq!(quadratic_roots(0, 1, 5), vec![2, 3]);
        assert_eq!(quadratic_roots(2, 1, 5), vec![1, 1]);
        assert!(quadratic_roots(0, 1, 3).is_empty());
        assert_eq!(quadratic_roots(1, 0, 2), vec![0, 1]);
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&vec![vec![0, 1], vec![0, 0]], 3));
        assert!(!is_nilpotent(&vec![vec![1, 0], vec![0, 0]], 3));
    }
}
