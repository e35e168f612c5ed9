//! Elementary number theory: Kronecker and Hilbert symbols, quadratic order
//! bookkeeping, splitting types and the choice of a standard basis for the
//! quaternion algebra ramified at `p` and infinity.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic primality test by trial division. Inputs here stay far
/// below the range where this is slow.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: i128, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Kronecker symbol `(a / n)`. Panics if `n == 0`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    assert!(n != 0, "kronecker symbol with n = 0");
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Strip factors of two from n using (a/2).
    let tz = n.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= tz;
        if tz % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    // Jacobi symbol for odd n.
    a = a.rem_euclid(n);
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 {
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// A place of `Q`: a finite prime or the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Prime(u64),
    Infinity,
}

fn rational_to_integer_class(r: Ratio<i128>) -> i128 {
    // a and a * den^2 have the same square class.
    r.numer() * r.denom()
}

/// Hilbert symbol `(a, b)_v` of two nonzero rationals.
pub fn hilbert_symbol(a: Ratio<i128>, b: Ratio<i128>, place: Place) -> i32 {
    assert!(*a.numer() != 0 && *b.numer() != 0, "hilbert symbol of zero");
    let a = rational_to_integer_class(a);
    let b = rational_to_integer_class(b);
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => hilbert_symbol_int(a, b, p),
    }
}

fn split_valuation(n: i128, p: u64) -> (u32, i128) {
    let v = valuation(n, p);
    (v, n / (p as i128).pow(v))
}

fn hilbert_symbol_int(a: i128, b: i128, p: u64) -> i32 {
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    if p == 2 {
        let eps = |x: i128| (x.rem_euclid(4) == 3) as u32;
        let omega = |x: i128| {
            let r = x.rem_euclid(8);
            (r == 3 || r == 5) as u32
        };
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let pi = p as i64;
        let mut s = 1i32;
        if (alpha * beta) % 2 == 1 && (p % 4 == 3) {
            s = -s;
        }
        let lu = kronecker(u.rem_euclid(p as i128) as i64, pi);
        let lv = kronecker(v.rem_euclid(p as i128) as i64, pi);
        if beta % 2 == 1 {
            s *= lu;
        }
        if alpha % 2 == 1 {
            s *= lv;
        }
        s
    }
}

/// Which of the three generator shapes describes `O_d = Z[alpha]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorShape {
    /// `d_K = 0 mod 4`: `alpha = f * sqrt(d_K) / 2`.
    FundamentalEven,
    /// `d_K = 1 mod 4` and `f` even: `alpha = f * sqrt(d_K) / 2`.
    FundamentalOddConductorEven,
    /// `d_K = 1 mod 4` and `f` odd: `alpha = (1 + f * sqrt(d_K)) / 2`.
    FundamentalOddConductorOdd,
}

/// A quadratic order described by its discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadOrderDesc {
    pub d: i64,
    pub d_k: i64,
    pub f: u64,
    pub shape: GeneratorShape,
}

impl QuadOrderDesc {
    /// Whether `ell` does not divide the conductor.
    pub fn is_fundamental_at(&self, ell: u64) -> bool {
        self.f % ell != 0
    }
}

/// Largest square dividing `n` removed; returns (squarefree part, root of the square part).
fn squarefree_decomposition(n: u64) -> (u64, u64) {
    let mut core = 1u64;
    let mut root = 1u64;
    for (q, e) in factor(n) {
        root *= q.pow(e / 2);
        if e % 2 == 1 {
            core *= q;
        }
    }
    (core, root)
}

/// Decompose a negative discriminant as `d = f^2 d_K`.
pub fn quad_order_info(d: i64) -> Result<QuadOrderDesc> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::invalid(format!(
            "{d} is not a negative quadratic discriminant"
        )));
    }
    let (core, root) = squarefree_decomposition(d.unsigned_abs());
    let m = -(core as i64);
    let (d_k, f) = if m.rem_euclid(4) == 1 {
        (m, root)
    } else {
        // d = root^2 * m with m = 2, 3 mod 4, so 4 | root^2 because d = 0 mod 4.
        debug_assert!(root % 2 == 0);
        (4 * m, root / 2)
    };
    let shape = if d_k.rem_euclid(4) == 0 {
        GeneratorShape::FundamentalEven
    } else if f % 2 == 0 {
        GeneratorShape::FundamentalOddConductorEven
    } else {
        GeneratorShape::FundamentalOddConductorOdd
    };
    Ok(QuadOrderDesc { d, d_k, f, shape })
}

/// Fundamental discriminant of `Q(sqrt(d))` for a negative squarefree `d`.
pub fn fundamental_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Whether `d` is a negative squarefree integer.
pub fn is_negative_squarefree(d: i64) -> bool {
    d < 0 && factor(d.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub kind: Splitting,
    pub ell_fundamental: bool,
}

/// Splitting of the prime `ell` in the maximal order of discriminant `d_k`.
pub fn splitting_type(d_k: i64, ell: u64) -> SplittingType {
    let kind = match kronecker(d_k, ell as i64) {
        1 => Splitting::Split,
        -1 => Splitting::Inert,
        _ => Splitting::Ramified,
    };
    SplittingType {
        kind,
        ell_fundamental: true,
    }
}

/// Default bound `4 (log p)^2` for the auxiliary prime search.
pub fn default_pizer_bound(p: u64) -> u64 {
    let l = (p as f64).ln();
    (4.0 * l * l).ceil().max(3.0) as u64
}

/// The auxiliary integer `q` making `(-q, -p)` ramified exactly at `p` and infinity.
pub fn pizer_params(p: u64, bound: Option<u64>) -> Result<u64> {
    if p <= 2 || !is_prime(p) {
        return Err(Error::invalid(format!("p = {p} must be an odd prime")));
    }
    if p % 4 == 3 {
        return Ok(1);
    }
    if p % 8 == 5 {
        return Ok(2);
    }
    let bound = bound.unwrap_or_else(|| default_pizer_bound(p));
    (3..=bound)
        .filter(|&q| q % 4 == 3 && is_prime(q))
        .find(|&q| kronecker(p as i64, q as i64) == -1)
        .ok_or(Error::CapExceeded {
            what: "auxiliary prime search",
            cap: bound as usize,
        })
}
