//! Row Hermite normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, ToPrimitive};

/// Row echelon Hermite normal form of the integer span of `rows`.
///
/// The result has one row per pivot, pivots strictly increasing in column
/// index and positive, and every entry above a pivot reduced into
/// `[0, pivot)`. Zero rows are dropped, so the result length is the rank.
pub fn hnf(rows: &[Vec<i128>], ncols: usize) -> Vec<Vec<i128>> {
    let rows: Vec<&Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    if let Some(h) = fold_rows(rows.iter().map(|r| r.to_vec()), ncols) {
        return h;
    }
    // Intermediate entries overflowed; redo the elimination exactly.
    let big = fold_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()), ncols)
        .expect("bignum elimination cannot overflow");
    big.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.to_i128().expect("HNF entry exceeds i128"))
                .collect()
        })
        .collect()
}

trait Entry: Integer + Signed + Clone + CheckedMul + CheckedSub {}
impl<T: Integer + Signed + Clone + CheckedMul + CheckedSub> Entry for T {}

/// Folds rows in one at a time so intermediate entries stay bounded by the
/// reduced form of the span so far. `None` on overflow.
fn fold_rows<T: Entry>(rows: impl Iterator<Item = Vec<T>>, ncols: usize) -> Option<Vec<Vec<T>>> {
    let mut acc: Vec<Vec<T>> = Vec::with_capacity(ncols + 1);
    for row in rows {
        acc.push(row);
        acc = echelon(acc, ncols)?;
    }
    Some(acc)
}

fn echelon<T: Entry>(mut m: Vec<Vec<T>>, ncols: usize) -> Option<Vec<Vec<T>>> {
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let piv = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let Some(piv) = piv else { break };
            m.swap(r, piv);
            let mut clean = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    sub_multiple(&mut m, i, r, &q)?;
                    if !m[i][c].is_zero() {
                        clean = false;
                    }
                }
            }
            // Drop rows that became zero to keep the working set small.
            let mut i = r + 1;
            while i < m.len() {
                if m[i].iter().all(|x| x.is_zero()) {
                    m.swap_remove(i);
                } else {
                    i += 1;
                }
            }
            if clean {
                break;
            }
        }
        if r == m.len() || m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                sub_multiple(&mut m, i, r, &q)?;
            }
        }
        r += 1;
    }
    m.truncate(r);
    Some(m)
}

fn sub_multiple<T: Entry>(m: &mut [Vec<T>], target: usize, src: usize, q: &T) -> Option<()> {
    let (a, b) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x = x.checked_sub(&q.checked_mul(y)?)?;
    }
    Some(())
}

/// Integer combinations `x` (rows) with `sum x_k rows[k] = 0`, as an HNF basis.
pub fn integer_kernel(rows: &[Vec<i128>], ncols: usize) -> Vec<Vec<i128>> {
    let n = rows.len();
    let aug: Vec<Vec<i128>> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|m| (m == k) as i128));
            v
        })
        .collect();
    hnf(&aug, ncols + n)
        .into_iter()
        .filter(|r| r[..ncols].iter().all(|&x| x == 0))
        .map(|r| r[ncols..].to_vec())
        .collect()
}

pub fn gcd_all(xs: impl IntoIterator<Item = i128>) -> i128 {
    xs.into_iter()
        .fold(0i128, |g, x| num_integer::gcd(g, x))
}
