//! Left ideal classes of a maximal order, Brandt matrices and the type graph.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, GraphMeta, MultiGraph, Vertex};
use crate::ideals::{
    connecting_ideal, ideals_of_norm_ell, is_equivalent, ramified_prime_ideal, QIdeal, QOrder,
};
use crate::lattice::DEFAULT_NODE_CAP;
use crate::quat::{rat, Rat};

/// Seed for the matrix splittings used while enumerating neighbors. The
/// resulting ideal sets do not depend on it.
const SPLIT_SEED: u64 = 0;

/// Representatives of `Cls_L(O_0)` with the unit counts `a_j = |O_R(I_j)^x| / 2`.
#[derive(Clone, Debug)]
pub struct ClassSet {
    pub base: QOrder,
    pub reps: Vec<QIdeal>,
    pub unit_sizes: Vec<u64>,
}

impl ClassSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the representative equivalent to `i`.
    pub fn class_of(&self, i: &QIdeal) -> Result<usize> {
        for (n, r) in self.reps.iter().enumerate() {
            if is_equivalent(r, i)?.is_some() {
                return Ok(n);
            }
        }
        Err(Error::inconsistent("ideal is equivalent to no class representative"))
    }
}

pub fn default_depth_cap(p: u64) -> usize {
    2 * (p as usize / 6 + 8)
}

/// Number of units of `o` up to sign.
pub fn unit_count(o: &QOrder) -> Result<u64> {
    let units = o.lattice().min_norm_elements(rat(1), DEFAULT_NODE_CAP)?;
    Ok(units.iter().filter(|u| u.nrd() == rat(1)).count() as u64)
}

/// The ideals `I J` for `J` of norm `l` over the right order of `i`: the
/// sub-ideals of `i` of index `l^2`.
fn sub_neighbors(i: &QIdeal, ell: u64) -> Result<Vec<QIdeal>> {
    Ok(ideals_of_norm_ell(i.right_order(), ell, SPLIT_SEED)?
        .iter()
        .map(|j| i.product(j))
        .collect())
}

/// Breadth-first search over `l`-neighbor ideals starting from `O_0` itself.
pub fn enumerate_classes(base: &QOrder, ell: u64, depth_cap: usize) -> Result<ClassSet> {
    if !base.is_maximal() {
        return Err(Error::invalid("class enumeration needs a maximal order"));
    }
    if ell == base.alg().p {
        return Err(Error::invalid("l must differ from p"));
    }
    let mut reps = vec![QIdeal::principal(base, &base.alg().one())];
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == depth_cap {
            return Err(Error::CapExceeded {
                what: "class enumeration depth",
                cap: depth_cap,
            });
        }
        depth += 1;
        let mut next = Vec::new();
        for &f in &frontier {
            for cand in sub_neighbors(&reps[f], ell)? {
                let cand = cand.primitive_part()?;
                let mut known = false;
                for r in &reps {
                    if is_equivalent(r, &cand)?.is_some() {
                        known = true;
                        break;
                    }
                }
                if !known {
                    log::debug!("class {} found at depth {depth}, nrd {}", reps.len(), cand.nrd());
                    reps.push(cand);
                    next.push(reps.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let unit_sizes = reps
        .par_iter()
        .map(|r| unit_count(r.right_order()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassSet {
        base: base.clone(),
        reps,
        unit_sizes,
    })
}

/// `b_ij` = number of sub-ideals `J` of `I_i` with `nrd(J) = l nrd(I_i)` and `J ~ I_j`.
pub fn brandt_matrix(cs: &ClassSet, ell: u64) -> Result<Vec<Vec<u64>>> {
    cs.reps
        .par_iter()
        .map(|i| {
            let mut row = vec![0u64; cs.len()];
            for j in sub_neighbors(i, ell)? {
                row[cs.class_of(&j)?] += 1;
            }
            Ok(row)
        })
        .collect()
}

/// `b_ij = #{a in I_j^-1 I_i : nrd(a) nrd(I_j) = l nrd(I_i)} / (2 a_j)`.
pub fn brandt_matrix_by_norms(cs: &ClassSet, ell: u64) -> Result<Vec<Vec<u64>>> {
    let n = cs.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (ii, ij) = (&cs.reps[i], &cs.reps[j]);
                    let m = ij.inverse()?.product(ii);
                    let target: Rat = rat(ell as i128) * ii.nrd() / ij.nrd();
                    let count = m
                        .lattice()
                        .min_norm_elements(target, DEFAULT_NODE_CAP)?
                        .iter()
                        .filter(|a| a.nrd() == target)
                        .count() as u64;
                    if count % cs.unit_sizes[j] != 0 {
                        return Err(Error::inconsistent(format!(
                            "norm count {count} is not a multiple of the unit count {}",
                            cs.unit_sizes[j]
                        )));
                    }
                    Ok(count / cs.unit_sizes[j])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// The Brandt graph with one vertex per class and `b_ij` edges `i -> j`.
pub fn brandt_graph(cs: &ClassSet, b: &[Vec<u64>], ell: u64) -> MultiGraph {
    let mut g = MultiGraph::new(GraphMeta {
        p: cs.base.alg().p,
        ell,
        ..GraphMeta::default()
    });
    for (n, r) in cs.reps.iter().enumerate() {
        g.add_vertex(Vertex {
            key: format!("I{n:03}"),
            label: format!("I{n} nrd {}", r.nrd()),
            conductors: None,
            lattice: Some(r.lattice().data()),
        });
    }
    for (s, row) in b.iter().enumerate() {
        for (t, &m) in row.iter().enumerate() {
            if m > 0 {
                g.add_edge(s, t, m as u32, None);
            }
        }
    }
    g
}

/// Whether two maximal orders are conjugate. Connecting ideals between them
/// are unique up to the two-sided ideals of `o2`, which modulo scalars are
/// `o2` and its ramified prime `P`, so test `I` and `I P`.
pub fn orders_conjugate(o: &QOrder, o2: &QOrder) -> Result<bool> {
    let c = connecting_ideal(o, o2)?;
    let unit = QIdeal::principal(o, &o.alg().one());
    if is_equivalent(&unit, &c)?.is_some() {
        return Ok(true);
    }
    let cp = c.product(&ramified_prime_ideal(o2)?);
    Ok(is_equivalent(&unit, &cp)?.is_some())
}

/// Partition of the classes by conjugacy of their right orders, as lists of
/// class indices in increasing order.
pub fn type_partition(cs: &ClassSet) -> Result<Vec<Vec<usize>>> {
    // Norm counts are a conjugacy invariant, so only matching counts need the ideal test.
    let p = cs.base.alg().p as i128;
    let counts = cs
        .reps
        .par_iter()
        .map(|r| {
            let mut c = vec![0u32; p as usize + 1];
            for x in r.right_order().lattice().min_norm_elements(rat(p), DEFAULT_NODE_CAP)? {
                c[x.nrd().to_integer() as usize] += 1;
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut types: Vec<Vec<usize>> = Vec::new();
    'classes: for (n, r) in cs.reps.iter().enumerate() {
        for t in types.iter_mut() {
            if counts[t[0]] == counts[n]
                && orders_conjugate(cs.reps[t[0]].right_order(), r.right_order())?
            {
                t.push(n);
                continue 'classes;
            }
        }
        types.push(vec![n]);
    }
    Ok(types)
}

/// The type graph: classes with conjugate right orders merged, each type
/// keeping the out-edges of its first class.
pub fn type_graph(cs: &ClassSet, b: &[Vec<u64>], ell: u64) -> Result<MultiGraph> {
    let types = type_partition(cs)?;
    let mut type_of = vec![0; cs.len()];
    for (t, members) in types.iter().enumerate() {
        for &m in members {
            type_of[m] = t;
        }
    }
    let mut g = MultiGraph::new(GraphMeta {
        p: cs.base.alg().p,
        ell,
        ..GraphMeta::default()
    });
    for (t, members) in types.iter().enumerate() {
        g.add_vertex(Vertex {
            key: format!("T{t:03}"),
            label: format!("{members:?}"),
            conductors: None,
            lattice: Some(cs.reps[members[0]].right_order().lattice().data()),
        });
    }
    for (t, members) in types.iter().enumerate() {
        for (j, &m) in b[members[0]].iter().enumerate() {
            if m > 0 {
                g.add_edge(t, type_of[j], m as u32, None);
            }
        }
    }
    g.edges.sort();
    Ok(g)
}

/// Exact directed-multigraph isomorphism search.
pub fn check_graph_isomorphism(
    g: &MultiGraph,
    h: &MultiGraph,
) -> std::result::Result<Vec<usize>, String> {
    graph::find_isomorphism(g, h)
}

#[derive(Serialize)]
pub struct BrandtReport {
    pub p: u64,
    pub ell: u64,
    pub classes: usize,
    pub brandt: Vec<Vec<u64>>,
    pub unit_sizes: Vec<u64>,
}

impl BrandtReport {
    pub fn new(cs: &ClassSet, b: Vec<Vec<u64>>, ell: u64) -> BrandtReport {
        BrandtReport {
            p: cs.base.alg().p,
            ell,
            classes: cs.len(),
            brandt: b,
            unit_sizes: cs.unit_sizes.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::root_maximal_orders;
    use crate::quat::QuatAlgebra;

    fn base(p: u64) -> QOrder {
        root_maximal_orders(QuatAlgebra::pizer(p).unwrap())
            .unwrap()
            .remove(0)
    }

    #[test]
    fn p11_classes_and_matrix() {
        let o = base(11);
        let cs = enumerate_classes(&o, 2, default_depth_cap(11)).unwrap();
        assert_eq!(cs.len(), 2);
        let b = brandt_matrix(&cs, 2).unwrap();
        assert_eq!(b, brandt_matrix_by_norms(&cs, 2).unwrap());
        assert!(b.iter().all(|r| r.iter().sum::<u64>() == 3));
        let t = type_graph(&cs, &b, 2).unwrap();
        assert!(t.vertex_count() <= cs.len());
    }

    #[test]
    fn class_count_independent_of_ell() {
        for p in [37, 61] {
            let o = base(p);
            let c2 = enumerate_classes(&o, 2, default_depth_cap(p)).unwrap();
            let c3 = enumerate_classes(&o, 3, default_depth_cap(p)).unwrap();
            assert_eq!(c2.len(), c3.len(), "p = {p}");
        }
    }

    #[test]
    fn trivial_units_when_p_is_1_mod_12() {
        for p in [37, 61, 73] {
            let cs = enumerate_classes(&base(p), 2, default_depth_cap(p)).unwrap();
            assert!(cs.unit_sizes.iter().all(|&a| a == 1), "p = {p}");
        }
    }

    #[test]
    fn loops_need_elements_of_norm_ell() {
        let p = 37;
        let cs = enumerate_classes(&base(p), 2, default_depth_cap(p)).unwrap();
        for ell in [2, 3, 5] {
            let b = brandt_matrix(&cs, ell).unwrap();
            assert_eq!(b, brandt_matrix_by_norms(&cs, ell).unwrap());
            for (n, r) in cs.reps.iter().enumerate() {
                let has = r
                    .right_order()
                    .lattice()
                    .min_norm_elements(rat(ell as i128), DEFAULT_NODE_CAP)
                    .unwrap()
                    .iter()
                    .any(|a| a.nrd() == rat(ell as i128));
                if !has {
                    assert_eq!(b[n][n], 0);
                }
            }
        }
    }
}
