//! Exact arithmetic in a definite quaternion algebra `(d_i, d_j | Q)` with
//! basis `1, i, j, k`, `i^2 = d_i`, `j^2 = d_j`, `k = ij = -ji`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{self, hilbert_symbol, Place};

pub type Rat = Ratio<i128>;

pub fn rat(n: i128) -> Rat {
    Rat::from_integer(n)
}

/// The algebra `(d_i, d_j | Q)` together with the prime `p` at which it ramifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuatAlgebra {
    pub p: u64,
    pub d_i: i64,
    pub d_j: i64,
    /// Auxiliary prime when built from the standard `(-q, -p)` basis.
    pub q: Option<u64>,
}

impl QuatAlgebra {
    /// Algebra with `i^2 = d_i`, `j^2 = d_j`, checked to ramify exactly at `{p, oo}`.
    pub fn new(p: u64, d_i: i64, d_j: i64) -> Result<Self> {
        if p <= 3 || !numth::is_prime(p) {
            return Err(Error::invalid(format!("p = {p} must be a prime > 3")));
        }
        if !numth::is_negative_squarefree(d_i) || !numth::is_negative_squarefree(d_j) {
            return Err(Error::invalid(format!(
                "d_i = {d_i}, d_j = {d_j} must be negative squarefree integers"
            )));
        }
        let alg = QuatAlgebra { p, d_i, d_j, q: None };
        let ram = alg.ramified_places();
        if ram != vec![Place::Prime(p), Place::Infinity] {
            return Err(Error::invalid(format!(
                "({d_i}, {d_j}) ramifies at {ram:?}, not exactly at {{{p}, oo}}"
            )));
        }
        Ok(alg)
    }

    /// Standard basis `i^2 = -q`, `j^2 = -p` with `q` from [`numth::pizer_params`].
    pub fn pizer(p: u64) -> Result<Self> {
        let q = numth::pizer_params(p, None)?;
        let mut alg = Self::new(p, -(q as i64), -(p as i64))?;
        alg.q = Some(q);
        Ok(alg)
    }

    /// Places where `(d_i, d_j)` is ramified, among `oo` and primes dividing `2 d_i d_j p`.
    pub fn ramified_places(&self) -> Vec<Place> {
        let mut primes: Vec<u64> = numth::factor(2 * self.d_i.unsigned_abs() * self.d_j.unsigned_abs())
            .into_iter()
            .map(|(q, _)| q)
            .collect();
        if !primes.contains(&self.p) {
            primes.push(self.p);
        }
        primes.sort_unstable();
        let (a, b) = (rat(self.d_i as i128), rat(self.d_j as i128));
        let mut out: Vec<Place> = primes
            .into_iter()
            .map(Place::Prime)
            .filter(|&v| hilbert_symbol(a, b, v) == -1)
            .collect();
        if hilbert_symbol(a, b, Place::Infinity) == -1 {
            out.push(Place::Infinity);
        }
        out
    }

    pub fn elem(&self, c: [Rat; 4]) -> QuatElement {
        QuatElement { alg: *self, c }
    }

    pub fn int_elem(&self, c: [i128; 4]) -> QuatElement {
        self.elem(c.map(rat))
    }

    /// Element `(c0 + c1 i + c2 j + c3 k) / den`.
    pub fn frac_elem(&self, c: [i128; 4], den: i128) -> QuatElement {
        self.elem(c.map(|x| Rat::new(x, den)))
    }

    pub fn one(&self) -> QuatElement {
        self.int_elem([1, 0, 0, 0])
    }

    pub fn zero(&self) -> QuatElement {
        self.int_elem([0, 0, 0, 0])
    }

    pub fn i(&self) -> QuatElement {
        self.int_elem([0, 1, 0, 0])
    }

    pub fn j(&self) -> QuatElement {
        self.int_elem([0, 0, 1, 0])
    }

    pub fn k(&self) -> QuatElement {
        self.int_elem([0, 0, 0, 1])
    }

    /// Generator of the maximal order of `Q(u)` for `u` in `{i, j}`.
    pub fn omega(&self, u: Subfield) -> QuatElement {
        let (d, basis) = match u {
            Subfield::I => (self.d_i, 1),
            Subfield::J => (self.d_j, 2),
        };
        let mut c = [rat(0); 4];
        if d.rem_euclid(4) == 1 {
            c[0] = Rat::new(1, 2);
            c[basis] = Rat::new(1, 2);
        } else {
            c[basis] = rat(1);
        }
        self.elem(c)
    }

    /// Value `u^2` for the basis element generating the subfield.
    pub fn square_of(&self, u: Subfield) -> i64 {
        match u {
            Subfield::I => self.d_i,
            Subfield::J => self.d_j,
        }
    }

    /// Gram matrix of `(x, y) -> trd(x conj(y)) / 2` on `1, i, j, k`.
    pub fn gram_diagonal(&self) -> [i128; 4] {
        let (a, b) = (self.d_i as i128, self.d_j as i128);
        [1, -a, -b, a * b]
    }
}

/// One of the two fixed quadratic subfields `Q(i)`, `Q(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subfield {
    I,
    J,
}

impl Subfield {
    /// Coordinate index of the generator in `1, i, j, k`.
    pub fn index(self) -> usize {
        match self {
            Subfield::I => 1,
            Subfield::J => 2,
        }
    }

    pub fn other(self) -> Subfield {
        match self {
            Subfield::I => Subfield::J,
            Subfield::J => Subfield::I,
        }
    }
}

/// A quaternion with rational coordinates on `1, i, j, k`. Coordinates are
/// always in lowest terms so equality is coordinate equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuatElement {
    pub alg: QuatAlgebra,
    pub c: [Rat; 4],
}

impl QuatElement {
    pub fn conj(&self) -> Self {
        let [x, y, z, w] = self.c;
        self.alg.elem([x, -y, -z, -w])
    }

    pub fn nrd(&self) -> Rat {
        let [x, y, z, w] = self.c;
        let (a, b) = (rat(self.alg.d_i as i128), rat(self.alg.d_j as i128));
        x * x - a * y * y - b * z * z + a * b * w * w
    }

    pub fn trd(&self) -> Rat {
        self.c[0] * rat(2)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: Rat) -> Self {
        self.alg.elem(self.c.map(|x| x * r))
    }

    /// Multiplicative inverse; fails only for zero.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.nrd();
        if n.is_zero() {
            return Err(Error::invalid("inverse of zero quaternion"));
        }
        Ok(self.conj().scale(n.recip()))
    }

    /// Whether all coordinates are integers.
    pub fn is_integral_coords(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> i128 {
        self.c
            .iter()
            .fold(1i128, |acc, x| num_integer::lcm(acc, *x.denom()))
    }

    /// Integer coordinates after multiplying by `den`. Panics if `den` does not clear denominators.
    pub fn scaled_coords(&self, den: i128) -> [i128; 4] {
        self.c.map(|x| {
            let y = x * rat(den);
            assert!(y.is_integer(), "denominator {den} does not clear {x}");
            y.to_integer()
        })
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "k"];
        let mut first = true;
        for (x, n) in self.c.iter().zip(names) {
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let ax = x.abs();
            if n.is_empty() {
                write!(f, "{ax}")?;
            } else if ax.is_one() {
                write!(f, "{n}")?;
            } else {
                write!(f, "{ax}{n}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for QuatElement {
    type Output = QuatElement;
    fn add(self, o: QuatElement) -> QuatElement {
        debug_assert_eq!((self.alg.d_i, self.alg.d_j), (o.alg.d_i, o.alg.d_j));
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x += y;
        }
        self.alg.elem(c)
    }
}

impl Sub for QuatElement {
    type Output = QuatElement;
    fn sub(self, o: QuatElement) -> QuatElement {
        self + (-o)
    }
}

impl Neg for QuatElement {
    type Output = QuatElement;
    fn neg(self) -> QuatElement {
        self.alg.elem(self.c.map(|x| -x))
    }
}

impl Mul for QuatElement {
    type Output = QuatElement;
    fn mul(self, o: QuatElement) -> QuatElement {
        debug_assert_eq!((self.alg.d_i, self.alg.d_j), (o.alg.d_i, o.alg.d_j));
        let [x1, y1, z1, w1] = self.c;
        let [x2, y2, z2, w2] = o.c;
        let a = rat(self.alg.d_i as i128);
        let b = rat(self.alg.d_j as i128);
        self.alg.elem([
            x1 * x2 + a * y1 * y2 + b * z1 * z2 - a * b * w1 * w2,
            x1 * y2 + y1 * x2 - b * z1 * w2 + b * w1 * z2,
            x1 * z2 + z1 * x2 + a * y1 * w2 - a * w1 * y2,
            x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2,
        ])
    }
}

/// Result of checking whether `Q(sqrt d1)` and `Q(sqrt d2)` embed with `trd(ij) = s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCheck {
    pub fields_ok: bool,
    pub maximal_orders_ok: bool,
}

/// Decide whether quadratic fields `Q(sqrt d1)`, `Q(sqrt d2)` embed simultaneously
/// into the algebra ramified at `{p, oo}` with `trd(ij) = s`, and whether their
/// maximal orders then generate an order.
pub fn simultaneous_embedding_check(d1: i64, d2: i64, s: i64, p: u64) -> Result<EmbeddingCheck> {
    let (d1w, d2w, sw) = (d1 as i128, d2 as i128, s as i128);
    let disc = sw * sw - 4 * d1w * d2w;
    if disc >= 0 {
        return Err(Error::invalid(format!(
            "s^2 = {} must be < 4 d1 d2 = {}",
            sw * sw,
            4 * d1w * d2w
        )));
    }
    let mut primes: Vec<u64> = [2 * p, disc.unsigned_abs() as u64, d1.unsigned_abs(), d2.unsigned_abs()]
        .iter()
        .flat_map(|&n| numth::factor(n))
        .map(|(q, _)| q)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let m = rat(disc);
    let fields_ok = [rat(d1w), rat(d2w)].iter().all(|&a| {
        primes.iter().all(|&l| {
            let want = if l == p { -1 } else { 1 };
            hilbert_symbol(a, m, Place::Prime(l)) == want
        }) && hilbert_symbol(a, m, Place::Infinity) == -1
    });
    let one_mod_4 = |d: i64| d.rem_euclid(4) == 1;
    let delta = match (one_mod_4(d1), one_mod_4(d2)) {
        (false, false) => 1,
        (true, true) => 4,
        _ => 2,
    };
    let maximal_orders_ok = fields_ok && (s - 2).rem_euclid(delta) == 0;
    Ok(EmbeddingCheck {
        fields_ok,
        maximal_orders_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg7() -> QuatAlgebra {
        QuatAlgebra::new(7, -1, -7).unwrap()
    }

    #[test]
    fn element_examples() {
        let a = alg7();
        assert_eq!(a.i().nrd(), rat(1));
        assert_eq!((a.i() * a.j()).trd(), rat(0));
        let x = a.frac_elem([1, 0, 1, 0], 2);
        assert_eq!(x.nrd(), rat(2));
        assert_eq!(a.i() * a.j(), a.k());
        assert_eq!(a.j() * a.i(), -a.k());
        assert_eq!(a.k() * a.k(), a.int_elem([-7, 0, 0, 0]));
    }

    #[test]
    fn inverse_and_conjugate() {
        let a = alg7();
        let x = a.frac_elem([3, -1, 2, 5], 4);
        assert!((x * x.inverse().unwrap()).is_one());
        assert_eq!(x * x.conj(), a.one().scale(x.nrd()));
        assert!(a.zero().inverse().is_err());
    }

    #[test]
    fn ramification_of_standard_bases() {
        for p in [5u64, 7, 11, 13, 17, 41, 73, 97, 101] {
            let alg = QuatAlgebra::pizer(p).unwrap();
            assert_eq!(alg.ramified_places(), vec![Place::Prime(p), Place::Infinity]);
        }
        assert!(QuatAlgebra::new(7, -1, -1).is_err());
    }

    #[test]
    fn embedding_check_examples() {
        let r = simultaneous_embedding_check(-1, -7, 0, 7).unwrap();
        assert!(r.fields_ok && r.maximal_orders_ok);
        let r = simultaneous_embedding_check(-1, -1, 0, 7).unwrap();
        assert!(!r.fields_ok);
        // both = 1 mod 4: delta = 4 and s = 0 is rejected
        let r = simultaneous_embedding_check(-3, -7, 0, 7).unwrap();
        assert!(!r.maximal_orders_ok);
        assert!(simultaneous_embedding_check(-1, -1, 2, 7).is_err());
    }
}
