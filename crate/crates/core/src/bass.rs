//! The Bass order generated by the maximal orders of `Q(i)` and `Q(j)`,
//! Eichler symbols, embedding numbers and a brute-force superorder search.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{order_closure, QOrder};
use crate::modl;
use crate::numth::{factor, fundamental_discriminant, splitting_type, valuation, Splitting};
use crate::quat::{rat, QuatAlgebra, QuatElement, Subfield};

/// Candidate orders visited by `enumerate_maximal_superorders` before giving up.
pub const SUPERORDER_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EichlerSymbol {
    /// Residually `F_l x F_l`.
    Split,
    /// Residually `F_l`.
    Ramified,
    /// Residually `F_{l^2}`.
    Inert,
}

impl EichlerSymbol {
    pub fn value(self) -> i32 {
        match self {
            EichlerSymbol::Split => 1,
            EichlerSymbol::Ramified => 0,
            EichlerSymbol::Inert => -1,
        }
    }
}

impl From<Splitting> for EichlerSymbol {
    fn from(s: Splitting) -> Self {
        match s {
            Splitting::Split => EichlerSymbol::Split,
            Splitting::Ramified => EichlerSymbol::Ramified,
            Splitting::Inert => EichlerSymbol::Inert,
        }
    }
}

/// `d_K` of `Q(u)`.
pub fn field_discriminant(alg: &QuatAlgebra, u: Subfield) -> i64 {
    fundamental_discriminant(alg.square_of(u))
}

/// `Z<omega_i, omega_j>`, defined when `d_u != 1 mod 4` for some `u`.
pub fn bass_order(alg: QuatAlgebra) -> Result<QOrder> {
    if alg.d_i.rem_euclid(4) == 1 && alg.d_j.rem_euclid(4) == 1 {
        return Err(Error::invalid(
            "d_i = d_j = 1 mod 4: the maximal orders of Q(i) and Q(j) do not embed simultaneously",
        ));
    }
    let o = order_closure(alg, &[alg.omega(Subfield::I), alg.omega(Subfield::J)])?;
    let expect = field_discriminant(&alg, Subfield::I) as i128
        * field_discriminant(&alg, Subfield::J) as i128
        / 4;
    if o.discrd() != expect {
        return Err(Error::inconsistent(format!(
            "Bass order discriminant {} != d_Ki d_Kj / 4 = {expect}",
            o.discrd()
        )));
    }
    Ok(o)
}

fn require_divides(o: &QOrder, ell: u64) -> Result<i128> {
    let d = o.discrd();
    if d % ell as i128 != 0 {
        return Err(Error::invalid(format!(
            "{ell} does not divide discrd = {d}; the order is maximal there"
        )));
    }
    Ok(d)
}

/// Eichler symbol from the discriminant and the splitting of `l` in a
/// quadratic maximal order contained in `o`.
pub fn eichler_symbol(o: &QOrder, ell: u64) -> Result<EichlerSymbol> {
    let d = require_divides(o, ell)?;
    let alg = o.alg();
    let field = [Subfield::I, Subfield::J]
        .into_iter()
        .find(|u| o.contains(&alg.omega(*u)))
        .ok_or_else(|| Error::invalid("order contains neither O_{K_i} nor O_{K_j}"))?;
    if valuation(d, ell) == 1 {
        return Ok(if ell == alg.p {
            EichlerSymbol::Inert
        } else {
            EichlerSymbol::Split
        });
    }
    Ok(splitting_type(field_discriminant(&alg, field), ell).kind.into())
}

/// Eichler symbol by computing the Jacobson radical of `O / lO` directly.
pub fn eichler_symbol_radical(o: &QOrder, ell: u64) -> Result<EichlerSymbol> {
    require_divides(o, ell)?;
    let alg = QuotientAlgebra::new(o, ell)?;
    let rad = alg.radical();
    let rad_dim = modl::rank(&rad, ell);
    match 4 - rad_dim {
        1 => Ok(EichlerSymbol::Ramified),
        2 => {
            // Any element outside F_l + rad generates the quotient; its
            // characteristic polynomial decides between F_l^2 and F_{l^2}.
            let mut span = rad.clone();
            span.push(alg.one.clone());
            let x = (0..4)
                .map(unit)
                .find(|v| modl::solve_combination(&span, v, ell).is_none())
                .ok_or_else(|| Error::inconsistent("quotient by radical is one-dimensional"))?;
            let lift = o.from_coords(&x.iter().map(|&v| v as i128).collect::<Vec<_>>());
            let t = modl::reduce(lift.trd().to_integer(), ell);
            let n = modl::reduce(lift.nrd().to_integer(), ell);
            let roots = modl::quadratic_roots(t, n, ell);
            match roots.len() {
                0 => Ok(EichlerSymbol::Inert),
                2 if roots[0] != roots[1] => Ok(EichlerSymbol::Split),
                _ => Err(Error::inconsistent("nilpotent element outside the radical")),
            }
        }
        k => Err(Error::inconsistent(format!(
            "semisimple quotient of dimension {k} at a prime dividing the discriminant"
        ))),
    }
}

fn unit(s: usize) -> Vec<u64> {
    let mut v = vec![0; 4];
    v[s] = 1;
    v
}

/// `O / lO` through its multiplication table.
struct QuotientAlgebra {
    ell: u64,
    table: Vec<Vec<Vec<u64>>>,
    one: Vec<u64>,
}

impl QuotientAlgebra {
    fn new(o: &QOrder, ell: u64) -> Result<Self> {
        let b = o.basis();
        let table = b
            .iter()
            .map(|x| b.iter().map(|y| o.coords_mod(&(*x * *y), ell)).collect())
            .collect::<Result<_>>()?;
        Ok(QuotientAlgebra {
            ell,
            table,
            one: o.coords_mod(&o.alg().one(), ell)?,
        })
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let l = self.ell;
        let mut out = vec![0u64; 4];
        for s in 0..4 {
            for t in 0..4 {
                let f = x[s] * y[t] % l;
                if f != 0 {
                    for u in 0..4 {
                        out[u] = (out[u] + f * self.table[s][t][u]) % l;
                    }
                }
            }
        }
        out
    }

    fn left_matrix(&self, x: &[u64]) -> modl::Matrix {
        let cols: Vec<Vec<u64>> = (0..4).map(|t| self.mul(x, &unit(t))).collect();
        (0..4).map(|r| (0..4).map(|c| cols[c][r]).collect()).collect()
    }

    /// Whether the subspace `S` satisfies `S^k = 0` for some `k`.
    fn is_nilpotent_subspace(&self, s: &[Vec<u64>]) -> bool {
        let l = self.ell;
        let (mut cur, _) = modl::rref(s, l);
        let gens = cur.clone();
        loop {
            if cur.is_empty() {
                return true;
            }
            let prods: Vec<Vec<u64>> = cur
                .iter()
                .flat_map(|u| gens.iter().map(move |v| (u, v)))
                .map(|(u, v)| self.mul(u, v))
                .collect();
            let (next, _) = modl::rref(&prods, l);
            if next.len() >= cur.len() {
                return false;
            }
            cur = next;
        }
    }

    /// Basis of the radical: `x` lies in it iff the left ideal `A x` is nilpotent.
    fn radical(&self) -> Vec<Vec<u64>> {
        let l = self.ell;
        let mut rad: Vec<Vec<u64>> = Vec::new();
        for x in projective_points(l) {
            if !rad.is_empty() && modl::solve_combination(&rad, &x, l).is_some() {
                continue;
            }
            if !modl::is_nilpotent(&self.left_matrix(&x), l) {
                continue;
            }
            let ax: Vec<Vec<u64>> = (0..4).map(|s| self.mul(&unit(s), &x)).collect();
            if self.is_nilpotent_subspace(&ax) {
                rad.push(x);
                rad = modl::rref(&rad, l).0;
            }
        }
        rad
    }
}

/// One representative of each point of `P^3(F_l)`.
fn projective_points(ell: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..4usize).flat_map(move |lead| {
        let free = 3 - lead;
        (0..ell.pow(free as u32)).map(move |code| {
            let mut v = vec![0u64; 4];
            v[lead] = 1;
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = c % ell;
                c /= ell;
            }
            v
        })
    })
}

/// Number of local maximal orders at `l` containing the completion of `o`.
pub fn local_embedding_number(o: &QOrder, ell: u64) -> Result<u64> {
    let d = o.discrd();
    if d % ell as i128 != 0 || ell == o.alg().p {
        return Ok(1);
    }
    let symbol = match eichler_symbol(o, ell) {
        Ok(s) => s,
        Err(Error::InvalidInput(_)) => eichler_symbol_radical(o, ell)?,
        Err(e) => return Err(e),
    };
    Ok(match symbol {
        EichlerSymbol::Split => valuation(d, ell) as u64 + 1,
        EichlerSymbol::Ramified => 2,
        EichlerSymbol::Inert => 1,
    })
}

/// `e(O) = prod_l e_l(O)` over primes dividing the discriminant.
pub fn global_embedding_number(o: &QOrder) -> Result<u64> {
    factor(o.discrd() as u64)
        .into_iter()
        .map(|(ell, _)| local_embedding_number(o, ell))
        .product()
}

/// Whether `trd(y x)` is integral for every `x` in `o`.
fn in_dual(o: &QOrder, y: &QuatElement) -> bool {
    o.basis().iter().all(|b| (*y * *b).trd().is_integer())
}

/// All maximal orders containing `o`, found by repeatedly adjoining elements
/// of `l^-1 L / L` for primes `l | discrd(L) / p` and closing up.
pub fn enumerate_maximal_superorders(o: &QOrder) -> Result<Vec<QOrder>> {
    let alg = o.alg();
    let p = alg.p as i128;
    if o.discrd() % p != 0 {
        return Err(Error::invalid("order discriminant is not divisible by p"));
    }
    let mut seen: BTreeSet<QOrder> = BTreeSet::from([o.clone()]);
    let mut queue = VecDeque::from([o.clone()]);
    let mut found = BTreeSet::new();
    while let Some(cur) = queue.pop_front() {
        let d = cur.discrd();
        if d == p {
            found.insert(cur);
            continue;
        }
        let b = cur.basis();
        for (ell, _) in factor((d / p) as u64) {
            for x in projective_points(ell) {
                let y = x
                    .iter()
                    .zip(&b)
                    .fold(alg.zero(), |acc, (c, bk)| acc + bk.scale(rat(*c as i128)))
                    .scale(rat(1) / rat(ell as i128));
                if !y.trd().is_integer() || !y.nrd().is_integer() || !in_dual(o, &y) {
                    continue;
                }
                let mut gens = b.to_vec();
                gens.push(y);
                let Ok(next) = order_closure(alg, &gens) else {
                    continue;
                };
                if seen.insert(next.clone()) {
                    if seen.len() > SUPERORDER_CAP {
                        return Err(Error::CapExceeded {
                            what: "superorder candidates",
                            cap: SUPERORDER_CAP,
                        });
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}
