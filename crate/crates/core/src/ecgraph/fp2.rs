//! The field `F_{p^2} = F_p[t] / (t^2 - n)` for the least non-residue `n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{is_prime, kronecker};

/// `a + b t`. Ordered by `(a, b)`, which is the canonical vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp2Element {
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub p: u64,
    /// `t^2`.
    pub n: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Result<Fp2> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::invalid(format!("p = {p} must be a prime > 3")));
        }
        let n = (2..p)
            .find(|&n| kronecker(n as i64, p as i64) == -1)
            .expect("odd primes have non-residues");
        Ok(Fp2 { p, n })
    }

    pub fn order(&self) -> u64 {
        self.p * self.p
    }

    fn m(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.p as u128) as u64
    }

    pub fn elem(&self, a: i128, b: i128) -> Fp2Element {
        let p = self.p as i128;
        Fp2Element {
            a: a.rem_euclid(p) as u64,
            b: b.rem_euclid(p) as u64,
        }
    }

    pub fn from_int(&self, a: i128) -> Fp2Element {
        self.elem(a, 0)
    }

    pub fn zero(&self) -> Fp2Element {
        Fp2Element { a: 0, b: 0 }
    }

    pub fn one(&self) -> Fp2Element {
        Fp2Element { a: 1, b: 0 }
    }

    /// Element with index `k` in `0..p^2`, enumerating `a + b p`.
    pub fn from_index(&self, k: u64) -> Fp2Element {
        Fp2Element {
            a: k % self.p,
            b: k / self.p,
        }
    }

    pub fn add(&self, x: Fp2Element, y: Fp2Element) -> Fp2Element {
        Fp2Element {
            a: (x.a + y.a) % self.p,
            b: (x.b + y.b) % self.p,
        }
    }

    pub fn neg(&self, x: Fp2Element) -> Fp2Element {
        Fp2Element {
            a: (self.p - x.a) % self.p,
            b: (self.p - x.b) % self.p,
        }
    }

    pub fn sub(&self, x: Fp2Element, y: Fp2Element) -> Fp2Element {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fp2Element, y: Fp2Element) -> Fp2Element {
        let p = self.p;
        let a = (self.m(x.a, y.a) + self.m(self.n, self.m(x.b, y.b))) % p;
        let b = (self.m(x.a, y.b) + self.m(x.b, y.a)) % p;
        Fp2Element { a, b }
    }

    pub fn pow(&self, x: Fp2Element, mut e: u128) -> Fp2Element {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^(p+1)`, an element of `F_p`.
    pub fn norm(&self, x: Fp2Element) -> u64 {
        (self.m(x.a, x.a) + self.p - self.m(self.n, self.m(x.b, x.b))) % self.p
    }

    pub fn inv(&self, x: Fp2Element) -> Result<Fp2Element> {
        let nm = self.norm(x);
        if nm == 0 {
            return Err(Error::invalid("inverse of zero in F_{p^2}"));
        }
        let ni = crate::modl::inv(nm, self.p);
        Ok(Fp2Element {
            a: self.m(x.a, ni),
            b: self.m((self.p - x.b) % self.p, ni),
        })
    }

    /// `x^p`, which negates the `t` coordinate because `t^(p-1) = n^((p-1)/2) = -1`.
    pub fn frobenius(&self, x: Fp2Element) -> Fp2Element {
        Fp2Element {
            a: x.a,
            b: (self.p - x.b) % self.p,
        }
    }

    pub fn is_zero(&self, x: Fp2Element) -> bool {
        x.a == 0 && x.b == 0
    }

    pub fn display(&self, x: Fp2Element) -> String {
        x.to_string()
    }
}

impl fmt::Display for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}*t"),
            (a, b) => write!(f, "{a}+{b}*t"),
        }
    }
}
