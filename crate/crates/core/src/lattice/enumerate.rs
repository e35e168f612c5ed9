//! Fincke-Pohst enumeration of a positive definite rational quadratic form.

use num_integer::Roots;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::quat::{rat, Rat};

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// `q[i][i]` are the pivots, `q[i][j]` for `j > i` the scaled off-diagonal entries
/// with `x^T G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2`.
fn ldl(g: &[[Rat; 4]; 4]) -> Result<[[Rat; 4]; 4]> {
    let mut q = *g;
    for i in 0..4 {
        if !q[i][i].is_positive() {
            return Err(Error::invalid("Gram matrix is not positive definite"));
        }
        for j in i + 1..4 {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for k in i + 1..4 {
            for l in k..4 {
                q[k][l] = q[k][l] - q[k][i] * q[i][l];
            }
        }
    }
    Ok(q)
}

fn floor_sqrt(r: Rat) -> i128 {
    if !r.is_positive() {
        return 0;
    }
    let (n, d) = (*r.numer(), *r.denom());
    (n * d).sqrt() / d
}

/// Integer vectors `x != 0` with `x^T g x <= bound`, one of each `+-x` pair
/// (the last nonzero coordinate is positive).
pub fn fincke_pohst(g: &[[Rat; 4]; 4], bound: Rat, node_cap: usize) -> Result<Vec<[i128; 4]>> {
    let q = ldl(g)?;
    let mut out = Vec::new();
    let mut x = [0i128; 4];
    let mut nodes = 0usize;
    recurse(&q, 3, bound, &mut x, &mut out, &mut nodes, node_cap)?;
    Ok(out)
}

fn recurse(
    q: &[[Rat; 4]; 4],
    level: usize,
    remaining: Rat,
    x: &mut [i128; 4],
    out: &mut Vec<[i128; 4]>,
    nodes: &mut usize,
    cap: usize,
) -> Result<()> {
    let center = -(level + 1..4).fold(rat(0), |s, j| s + q[level][j] * rat(x[j]));
    let r = floor_sqrt(remaining / q[level][level]);
    let lo = (center - rat(r + 1)).floor().to_integer();
    let hi = (center + rat(r + 1)).ceil().to_integer();
    // Sign normalization: the highest-index nonzero coordinate is positive.
    let top_zero = x[level + 1..].iter().all(|v| *v == 0);
    for v in lo..=hi {
        if top_zero && v < 0 {
            continue;
        }
        let dev = rat(v) - center;
        let used = q[level][level] * dev * dev;
        if used > remaining {
            continue;
        }
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::CapExceeded {
                what: "lattice enumeration nodes",
                cap,
            });
        }
        x[level] = v;
        if level == 0 {
            if x.iter().any(|c| !c.is_zero()) {
                out.push(*x);
            }
        } else {
            recurse(q, level - 1, remaining - used, x, out, nodes, cap)?;
        }
    }
    x[level] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: [i128; 4]) -> [[Rat; 4]; 4] {
        let mut g = [[rat(0); 4]; 4];
        for i in 0..4 {
            g[i][i] = rat(d[i]);
        }
        g
    }

    #[test]
    fn sum_of_four_squares() {
        // r_4(1) = 8, r_4(2) = 24: 16 vectors up to sign with norm <= 2.
        let v = fincke_pohst(&diag([1, 1, 1, 1]), rat(2), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(v.len(), 16);
    }

    #[test]
    fn cap_is_enforced() {
        let r = fincke_pohst(&diag([1, 1, 1, 1]), rat(100), 10);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rejects_indefinite() {
        assert!(fincke_pohst(&diag([1, -1, 1, 1]), rat(2), 100).is_err());
    }
}
