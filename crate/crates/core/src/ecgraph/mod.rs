//! Supersingular `l`-isogeny graphs `G(p, l)` over `F_{p^2}` and their
//! Galois quotients.

pub mod fp2;
pub mod modpoly;
pub mod poly;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{GraphMeta, MultiGraph, Vertex};
use crate::numth::is_prime;
use fp2::{Fp2, Fp2Element};
use modpoly::ModPoly;

/// Largest `p` accepted by the exhaustive point-count path.
pub const POINT_COUNT_P_CAP: u64 = 1000;

fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so the exact value never meets a factor of p.
    let mut num = 1u128;
    let mut den = 1u128;
    for t in 0..k {
        num = num * (n - t) as u128 % p as u128;
        den = den * (t + 1) as u128 % p as u128;
    }
    (num * crate::modl::inv(den as u64, p) as u128 % p as u128) as u64
}

/// `j(lambda) = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`.
fn legendre_j(k: &Fp2, lam: Fp2Element) -> Result<Fp2Element> {
    let one = k.one();
    let l2 = k.mul(lam, lam);
    let num = k.add(k.sub(l2, lam), one);
    let num = k.mul(k.from_int(256), k.pow(num, 3));
    let lm1 = k.sub(lam, one);
    let den = k.mul(l2, k.mul(lm1, lm1));
    Ok(k.mul(num, k.inv(den)?))
}

/// Supersingular j-invariants, sorted, via the roots of the Hasse invariant
/// `H_p(l) = sum_i C(m, i)^2 l^i`, `m = (p - 1) / 2`, of the Legendre family.
pub fn supersingular_j_list(p: u64) -> Result<Vec<Fp2Element>> {
    let k = Fp2::new(p)?;
    let m = (p - 1) / 2;
    let hasse: poly::Poly = (0..=m)
        .map(|i| {
            let c = binomial_mod(m, i, p);
            k.from_int((c as u128 * c as u128 % p as u128) as i128)
        })
        .collect();
    let roots = poly::roots_with_multiplicity(&k, &hasse);
    let total: u32 = roots.iter().map(|r| r.1).sum();
    if total as u64 != m || roots.iter().any(|r| r.1 != 1) {
        return Err(Error::inconsistent(format!(
            "Hasse polynomial at p = {p} does not split into distinct linear factors"
        )));
    }
    let mut js = roots
        .iter()
        .map(|&(lam, _)| legendre_j(&k, lam))
        .collect::<Result<Vec<_>>>()?;
    js.sort();
    js.dedup();
    Ok(js)
}

/// Short Weierstrass coefficients `(A, B)` of a curve with invariant `j`.
pub fn curve_with_j(k: &Fp2, j: Fp2Element) -> (Fp2Element, Fp2Element) {
    let c1728 = k.from_int(1728);
    if k.is_zero(j) {
        (k.zero(), k.one())
    } else if j == c1728 {
        (k.one(), k.zero())
    } else {
        let t = k.mul(j, k.sub(c1728, j));
        (k.mul(k.from_int(3), t), k.mul(k.from_int(2), k.mul(t, k.sub(c1728, j))))
    }
}

/// Trace of Frobenius of `y^2 = x^3 + A x + B` over `F_{p^2}` by a character sum.
pub fn frobenius_trace(k: &Fp2, a: Fp2Element, b: Fp2Element, chi: &[i8]) -> i64 {
    let mut s = 0i64;
    for idx in 0..k.order() {
        let x = k.from_index(idx);
        let rhs = k.add(k.mul(k.add(k.mul(x, x), a), x), b);
        s += chi[k.norm(rhs) as usize] as i64;
    }
    -s
}

/// Quadratic character of `F_p` as a table.
fn legendre_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[(x * x % p) as usize] = 1;
    }
    chi
}

/// Supersingular j-invariants by counting points on a curve for every
/// `j` in `F_{p^2}`: supersingular iff `p` divides the trace.
pub fn supersingular_j_list_by_point_count(p: u64) -> Result<Vec<Fp2Element>> {
    if p > POINT_COUNT_P_CAP {
        return Err(Error::invalid(format!(
            "p = {p} exceeds the point-count cap {POINT_COUNT_P_CAP}"
        )));
    }
    let k = Fp2::new(p)?;
    let chi = legendre_table(p);
    let mut js: Vec<Fp2Element> = (0..k.order())
        .into_par_iter()
        .map(|idx| k.from_index(idx))
        .filter(|&j| {
            let (a, b) = curve_with_j(&k, j);
            frobenius_trace(&k, a, b, &chi).rem_euclid(p as i64) == 0
        })
        .collect();
    js.sort();
    Ok(js)
}

fn vertex_key(p: u64, j: Fp2Element) -> String {
    let w = p.to_string().len();
    format!("{:0w$}:{:0w$}", j.b, j.a)
}

/// The directed multigraph `G(p, l)`: one edge `j -> j'` per root `j'` of
/// `Phi_l(j, Y)`, counted with multiplicity.
pub fn build_isogeny_graph(p: u64, ell: u64) -> Result<MultiGraph> {
    if !is_prime(ell) || ell == p {
        return Err(Error::invalid(format!("l = {ell} must be a prime different from p")));
    }
    let phi = ModPoly::load(ell)?;
    let k = Fp2::new(p)?;
    let js = supersingular_j_list(p)?;
    build_from_vertices(&k, &phi, &js)
}

fn build_from_vertices(k: &Fp2, phi: &ModPoly, js: &[Fp2Element]) -> Result<MultiGraph> {
    let index: BTreeMap<Fp2Element, usize> = js.iter().enumerate().map(|(n, j)| (*j, n)).collect();
    let rows = js
        .par_iter()
        .map(|&j| poly::roots_with_multiplicity(k, &phi.specialize(k, j)))
        .collect::<Vec<_>>();
    let mut g = MultiGraph::new(GraphMeta {
        p: k.p,
        ell: phi.ell,
        ..GraphMeta::default()
    });
    for &j in js {
        g.add_vertex(Vertex {
            key: vertex_key(k.p, j),
            label: j.to_string(),
            conductors: None,
            lattice: None,
        });
    }
    for (src, roots) in rows.iter().enumerate() {
        for &(r, m) in roots {
            let dst = *index.get(&r).ok_or_else(|| {
                Error::inconsistent(format!("root {r} of Phi_l({}, Y) is not supersingular", js[src]))
            })?;
            g.add_edge(src, dst, m, None);
        }
        if g.out_degree(src) != phi.ell + 1 {
            return Err(Error::inconsistent(format!(
                "vertex {} has out-degree {} instead of l + 1",
                js[src],
                g.out_degree(src)
            )));
        }
    }
    g.edges.sort();
    Ok(g)
}

/// Quotient of `G(p, l)` by `j ~ j^p`: each class keeps the out-edges of its
/// least member, with targets replaced by their classes.
pub fn reduce_graph(g: &MultiGraph) -> Result<MultiGraph> {
    let k = Fp2::new(g.meta.p)?;
    let js = g
        .vertices
        .iter()
        .map(|v| parse_key(&v.key))
        .collect::<Result<Vec<_>>>()?;
    let rep = |j: Fp2Element| j.min(k.frobenius(j));
    let mut classes: Vec<Fp2Element> = js.iter().map(|&j| rep(j)).collect();
    classes.sort();
    classes.dedup();
    let class_of: BTreeMap<Fp2Element, usize> =
        classes.iter().enumerate().map(|(n, j)| (*j, n)).collect();
    let mut out = MultiGraph::new(g.meta.clone());
    for &c in &classes {
        let conj = k.frobenius(c);
        let label = if conj == c {
            c.to_string()
        } else {
            format!("{{{c}, {conj}}}")
        };
        out.add_vertex(Vertex {
            key: vertex_key(k.p, c),
            label,
            conductors: None,
            lattice: None,
        });
    }
    for e in &g.edges {
        if js[e.src] == rep(js[e.src]) {
            out.add_edge(class_of[&js[e.src]], class_of[&rep(js[e.dst])], e.mult, None);
        }
    }
    out.edges.sort();
    Ok(out)
}

fn parse_key(key: &str) -> Result<Fp2Element> {
    let bad = || Error::Parse(format!("vertex key {key:?} is not an F_(p^2) element"));
    let (b, a) = key.split_once(':').ok_or_else(bad)?;
    Ok(Fp2Element {
        a: a.parse().map_err(|_| bad())?,
        b: b.parse().map_err(|_| bad())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hasse_matches_point_count() {
        for p in [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
            assert_eq!(
                supersingular_j_list(p).unwrap(),
                supersingular_j_list_by_point_count(p).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn supersingular_counts() {
        let k11 = Fp2::new(11).unwrap();
        let js = supersingular_j_list_by_point_count(11).unwrap();
        assert_eq!(js, vec![k11.from_int(0), k11.from_int(1728)]);
        assert_eq!(supersingular_j_list_by_point_count(37).unwrap().len(), 3);
        assert_eq!(supersingular_j_list(101).unwrap().len(), 9);
    }

    #[test]
    fn small_graph_p11() {
        let g = build_isogeny_graph(11, 2).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_strongly_connected());
        assert!(build_isogeny_graph(11, 11).is_err());
        assert!(build_isogeny_graph(11, 13).is_err());
    }

    #[test]
    fn reduced_graph_keeps_out_degree() {
        for (p, l) in [(37, 2), (101, 3), (103, 2)] {
            let g = build_isogeny_graph(p, l).unwrap();
            let r = reduce_graph(&g).unwrap();
            assert!(r.vertex_count() <= g.vertex_count());
            for v in 0..r.vertex_count() {
                assert_eq!(r.out_degree(v), l + 1);
            }
        }
    }

    #[test]
    fn dual_edges_balance_away_from_extra_automorphisms() {
        let p = 103;
        let k = Fp2::new(p).unwrap();
        for l in [2, 3, 5, 7] {
            let g = build_isogeny_graph(p, l).unwrap();
            let a = g.adjacency();
            let special = |v: usize| {
                let j = parse_key(&g.vertices[v].key).unwrap();
                j == k.zero() || j == k.from_int(1728)
            };
            for s in 0..a.len() {
                for t in 0..a.len() {
                    if !special(s) && !special(t) {
                        assert_eq!(a[s][t], a[t][s]);
                    }
                }
            }
        }
    }
}
