//! Full-rank lattices in the quaternion algebra, stored canonically as a row
//! Hermite normal form over a common denominator.

mod enumerate;
pub mod hnf;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{rat, QuatAlgebra, QuatElement, Rat};

pub use enumerate::{DEFAULT_NODE_CAP, fincke_pohst};
use hnf::{gcd_all, hnf};

/// A full-rank lattice `(1/den) * span(rows)` with `rows` in Hermite normal
/// form and `gcd(rows, den) = 1`, so lattice equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLattice {
    rows: [[i128; 4]; 4],
    den: i128,
    alg: QuatAlgebra,
}

/// Serializable lattice data: integer HNF basis and its denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeData {
    pub basis: [[i128; 4]; 4],
    pub den: i128,
}

fn lcm(a: i128, b: i128) -> i128 {
    num_integer::lcm(a, b)
}

/// Positive generator of the fractional ideal of `Z` spanned by the inputs.
pub fn rational_gcd(xs: impl IntoIterator<Item = Rat>) -> Rat {
    let xs: Vec<Rat> = xs.into_iter().collect();
    let den = xs.iter().fold(1i128, |d, x| lcm(d, *x.denom()));
    let g = gcd_all(xs.iter().map(|x| (*x * rat(den)).to_integer()));
    Rat::new(g, den)
}

impl QLattice {
    /// Canonical lattice spanned by `gens` over `Z`.
    pub fn from_generators(alg: QuatAlgebra, gens: &[QuatElement]) -> Result<Self> {
        let den = gens.iter().fold(1i128, |d, g| lcm(d, g.denominator()));
        let rows: Vec<Vec<i128>> = gens.iter().map(|g| g.scaled_coords(den).to_vec()).collect();
        Self::from_int_rows(alg, &rows, den)
    }

    /// Canonical lattice spanned by `rows / den`.
    pub fn from_int_rows(alg: QuatAlgebra, rows: &[Vec<i128>], den: i128) -> Result<Self> {
        assert!(den > 0);
        let h = hnf(rows, 4);
        if h.len() != 4 {
            return Err(Error::invalid(format!(
                "generators span a rank {} lattice, need rank 4",
                h.len()
            )));
        }
        let g = gcd_all(h.iter().flatten().copied().chain([den]));
        let mut out = [[0i128; 4]; 4];
        for (o, r) in out.iter_mut().zip(&h) {
            for (x, y) in o.iter_mut().zip(r) {
                *x = y / g;
            }
        }
        Ok(QLattice {
            rows: out,
            den: den / g,
            alg,
        })
    }

    pub fn alg(&self) -> QuatAlgebra {
        self.alg
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn int_rows(&self) -> &[[i128; 4]; 4] {
        &self.rows
    }

    pub fn data(&self) -> LatticeData {
        LatticeData {
            basis: self.rows,
            den: self.den,
        }
    }

    pub fn from_data(alg: QuatAlgebra, d: &LatticeData) -> Result<Self> {
        let rows: Vec<Vec<i128>> = d.basis.iter().map(|r| r.to_vec()).collect();
        Self::from_int_rows(alg, &rows, d.den)
    }

    pub fn basis(&self) -> [QuatElement; 4] {
        self.rows.map(|r| self.alg.frac_elem(r, self.den))
    }

    /// Coordinates of `x` in the lattice basis (rational in general).
    pub fn coords(&self, x: &QuatElement) -> [Rat; 4] {
        let mut v = x.c.map(|c| c * rat(self.den));
        let mut out = [rat(0); 4];
        for k in 0..4 {
            let ck = v[k] / rat(self.rows[k][k]);
            out[k] = ck;
            for m in k..4 {
                v[m] -= ck * rat(self.rows[k][m]);
            }
        }
        out
    }

    pub fn contains(&self, x: &QuatElement) -> bool {
        self.coords(x).iter().all(|c| c.is_integer())
    }

    /// Whether `other` is a sublattice of `self`.
    pub fn contains_lattice(&self, other: &QLattice) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    /// Covolume relative to the standard lattice `Z<1, i, j, k>`.
    pub fn covolume(&self) -> Rat {
        let d: i128 = (0..4).map(|k| self.rows[k][k]).product();
        Rat::new(d, self.den.pow(4))
    }

    /// `[self : sub]` for a sublattice `sub`.
    pub fn index(&self, sub: &QLattice) -> Result<i128> {
        if !self.contains_lattice(sub) {
            return Err(Error::invalid("index: lattice is not a sublattice"));
        }
        let r = sub.covolume() / self.covolume();
        debug_assert!(r.is_integer());
        Ok(r.to_integer())
    }

    pub fn sum(&self, other: &QLattice) -> QLattice {
        let den = lcm(self.den, other.den);
        let (s, t) = (den / self.den, den / other.den);
        let rows: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.map(|x| x * s).to_vec())
            .chain(other.rows.iter().map(|r| r.map(|x| x * t).to_vec()))
            .collect();
        Self::from_int_rows(self.alg, &rows, den).expect("sum of full-rank lattices")
    }

    /// Lattice spanned by all products `x y` with `x` in `self`, `y` in `other`.
    pub fn product(&self, other: &QLattice) -> QLattice {
        let a = self.basis();
        let b = other.basis();
        let gens: Vec<QuatElement> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| *x * *y))
            .collect();
        Self::from_generators(self.alg, &gens).expect("product of full-rank lattices")
    }

    pub fn intersection(&self, other: &QLattice) -> QLattice {
        let den = lcm(self.den, other.den);
        let (s, t) = (den / self.den, den / other.den);
        let a: Vec<[i128; 4]> = self.rows.iter().map(|r| r.map(|x| x * s)).collect();
        let b: Vec<[i128; 4]> = other.rows.iter().map(|r| r.map(|x| x * t)).collect();
        let stacked: Vec<Vec<i128>> = a.iter().chain(b.iter()).map(|r| r.to_vec()).collect();
        let kernel = hnf::integer_kernel(&stacked, 4);
        let gens: Vec<Vec<i128>> = kernel
            .iter()
            .map(|x| {
                let mut v = vec![0i128; 4];
                for (c, r) in x[..4].iter().zip(&a) {
                    for m in 0..4 {
                        v[m] += c * r[m];
                    }
                }
                v
            })
            .collect();
        Self::from_int_rows(self.alg, &gens, den).expect("intersection of full-rank lattices")
    }

    pub fn scale(&self, r: Rat) -> QLattice {
        assert!(!r.is_zero());
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| b.scale(r)).collect();
        Self::from_generators(self.alg, &gens).expect("scaling by a nonzero rational")
    }

    pub fn conj(&self) -> QLattice {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| b.conj()).collect();
        Self::from_generators(self.alg, &gens).expect("conjugate lattice")
    }

    /// `{ x * beta : x in self }`.
    pub fn right_mul(&self, beta: &QuatElement) -> QLattice {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| *b * *beta).collect();
        Self::from_generators(self.alg, &gens).expect("right multiple by unit")
    }

    /// `{ beta * x : x in self }`.
    pub fn left_mul(&self, beta: &QuatElement) -> QLattice {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| *beta * *b).collect();
        Self::from_generators(self.alg, &gens).expect("left multiple by unit")
    }

    /// `{ a : a * self in self }`, computed as the intersection of `self * b^-1`.
    pub fn left_order(&self) -> QLattice {
        self.basis()
            .iter()
            .map(|b| self.right_mul(&b.inverse().expect("basis element is nonzero")))
            .reduce(|acc, l| acc.intersection(&l))
            .unwrap()
    }

    /// `{ a : self * a in self }`.
    pub fn right_order(&self) -> QLattice {
        self.basis()
            .iter()
            .map(|b| self.left_mul(&b.inverse().expect("basis element is nonzero")))
            .reduce(|acc, l| acc.intersection(&l))
            .unwrap()
    }

    /// Generator of the fractional ideal spanned by reduced norms of lattice elements.
    pub fn reduced_norm(&self) -> Rat {
        let b = self.basis();
        let mut vals = Vec::with_capacity(10);
        for s in 0..4 {
            vals.push(b[s].nrd());
            for t in s + 1..4 {
                vals.push((b[s] + b[t]).nrd() - b[s].nrd() - b[t].nrd());
            }
        }
        rational_gcd(vals)
    }

    /// Gram matrix of the norm form `nrd` in the lattice basis.
    pub fn gram(&self) -> [[Rat; 4]; 4] {
        let b = self.basis();
        let mut g = [[rat(0); 4]; 4];
        for s in 0..4 {
            for t in 0..4 {
                g[s][t] = (b[s] * b[t].conj()).trd() / rat(2);
            }
        }
        g
    }

    /// All `x` in the lattice with `0 < nrd(x) <= bound`, one of each `+-x` pair,
    /// in lexicographic coordinate order.
    pub fn min_norm_elements(&self, bound: Rat, node_cap: usize) -> Result<Vec<QuatElement>> {
        if !bound.is_positive() {
            return Err(Error::invalid("norm bound must be positive"));
        }
        let coeffs = fincke_pohst(&self.gram(), bound, node_cap)?;
        let b = self.basis();
        let mut out: Vec<QuatElement> = coeffs
            .into_iter()
            .map(|c| {
                let mut x = self.alg.zero();
                for (ck, bk) in c.iter().zip(&b) {
                    x = x + bk.scale(rat(*ck));
                }
                let first = x.c.iter().find(|v| !v.is_zero()).copied().unwrap();
                if first.is_negative() {
                    -x
                } else {
                    x
                }
            })
            .collect();
        out.sort_by(|x, y| x.c.cmp(&y.c));
        out.dedup();
        Ok(out)
    }

    /// Whether the lattice is closed under multiplication and contains 1.
    pub fn is_order(&self) -> bool {
        if !self.contains(&self.alg.one()) {
            return false;
        }
        let b = self.basis();
        b.iter()
            .all(|x| b.iter().all(|y| self.contains(&(*x * *y))))
    }
}

impl fmt::Debug for QLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLattice(1/{} * {:?})", self.den, self.rows)
    }
}

impl fmt::Display for QLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.basis();
        write!(f, "<{}, {}, {}, {}>", b[0], b[1], b[2], b[3])
    }
}

/// `Z<1, i, j, k>`.
pub fn standard_lattice(alg: QuatAlgebra) -> QLattice {
    QLattice::from_generators(alg, &[alg.one(), alg.i(), alg.j(), alg.k()]).unwrap()
}
