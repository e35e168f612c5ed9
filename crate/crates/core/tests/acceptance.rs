//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILING` are run in full and must still print
//! FAIL; the run errors if one of them starts passing so the list stays honest.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qisog::bass::{
    bass_order, enumerate_maximal_superorders, global_embedding_number, local_embedding_number,
};
use qisog::brandt;
use qisog::ecgraph::{build_isogeny_graph, supersingular_j_list_by_point_count};
use qisog::ideals::{
    connecting_ideal, ideals_of_norm_ell, ideals_of_norm_ell_oracle, random_walk,
    root_maximal_orders, QIdeal, QOrder,
};
use qisog::numth::{factor, is_prime};
use qisog::orient::{audit_component, find_roots, walk_component, VERTEX_CAP};
use qisog::quat::{rat, QuatAlgebra, Subfield};

type Outcome = Result<String, String>;

/// The l = 2 global-root counts at p = 7 contradict the theorem's formula;
/// see the decisions ledger.
const KNOWN_FAILING: &[u32] = &[6];

const SEED: u64 = 0x5eed;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn ideal_key(i: &QIdeal) -> (i128, [[i128; 4]; 4]) {
    (i.lattice().den(), *i.lattice().int_rows())
}

fn criterion_1() -> Outcome {
    for p in [7u64, 11, 19, 23] {
        let alg = QuatAlgebra::pizer(p).map_err(e)?;
        let o = &root_maximal_orders(alg).map_err(e)?[0];
        ensure(o.discrd() == p as i128 && o.is_maximal(), || format!("p = {p}: discrd {}", o.discrd()))?;
        ensure(o.contains(&alg.i()), || format!("p = {p}: i not in order"))?;
        ensure(o.contains(&alg.frac_elem([1, 0, 1, 0], 2)), || format!("p = {p}: (1+j)/2 not in order"))?;
        for u in [Subfield::I, Subfield::J] {
            ensure(o.contains(&alg.omega(u)), || format!("p = {p}: O_K{u:?} not contained"))?;
        }
    }
    for p in [13u64, 29, 17, 41] {
        let os = root_maximal_orders(QuatAlgebra::pizer(p).map_err(e)?).map_err(e)?;
        ensure(os.len() == 2, || format!("p = {p}: {} orders", os.len()))?;
        ensure(os.iter().all(|o| o.is_maximal() && o.discrd() == p as i128), || format!("p = {p}: not maximal"))?;
        ensure(os[0] != os[1], || format!("p = {p}: orders coincide"))?;
    }
    Ok("root orders at p in {7, 11, 19, 23, 13, 29, 17, 41}".into())
}

fn criterion_2() -> Outcome {
    // (p, expected q, discrd, [(l, e_l)], e)
    let cases: [(u64, Option<u64>, i128, &[(u64, u64)], u64); 3] = [
        (7, None, 7, &[], 1),
        (13, None, 8 * 13, &[(2, 2)], 2),
        (17, Some(3), 17 * 3, &[(3, 2)], 2),
    ];
    let mut notes = Vec::new();
    for (p, q, d, locals, total) in cases {
        let alg = QuatAlgebra::pizer(p).map_err(e)?;
        if let Some(q) = q {
            ensure(alg.q == Some(q), || format!("p = {p}: q = {:?}", alg.q))?;
        }
        let o = bass_order(alg).map_err(e)?;
        ensure(o.discrd() == d, || format!("p = {p}: discrd {} != {d}", o.discrd()))?;
        for &(l, el) in locals {
            let got = local_embedding_number(&o, l).map_err(e)?;
            ensure(got == el, || format!("p = {p}: e_{l} = {got} != {el}"))?;
        }
        let got = global_embedding_number(&o).map_err(e)?;
        ensure(got == total, || format!("p = {p}: e = {got} != {total}"))?;
        let sup = enumerate_maximal_superorders(&o).map_err(e)?;
        ensure(sup.len() as u64 == got, || format!("p = {p}: oracle {} != formula {got}", sup.len()))?;
        notes.push(format!("p={p}: e={got}"));
    }
    Ok(notes.join(", "))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut orders: Vec<QOrder> = Vec::new();
    for p in [13u64, 37] {
        let roots = root_maximal_orders(QuatAlgebra::pizer(p).map_err(e)?).map_err(e)?;
        orders.extend(roots.iter().cloned());
        for _ in 0..24 {
            let l = [2u64, 3, 5][rng.gen_range(0..3)];
            let steps = rng.gen_range(1..=4);
            let start = &roots[rng.gen_range(0..roots.len())];
            orders.push(random_walk(start, l, steps, &mut rng).map_err(e)?);
        }
    }
    ensure(orders.len() >= 50, || format!("only {} orders", orders.len()))?;
    for o in &orders {
        for l in [2u64, 3, 5] {
            let fast = ideals_of_norm_ell(o, l, SEED).map_err(e)?;
            let slow = ideals_of_norm_ell_oracle(o, l).map_err(e)?;
            ensure(fast.len() as u64 == l + 1, || format!("{o}: {} ideals of norm {l}", fast.len()))?;
            let mut a: Vec<_> = fast.iter().map(ideal_key).collect();
            let mut b: Vec<_> = slow.iter().map(ideal_key).collect();
            a.sort();
            b.sort();
            ensure(a == b, || format!("{o}: fast and oracle paths differ at l = {l}"))?;
            for i in &fast {
                ensure(i.nrd() == rat(l as i128) && i.left_order() == o, || format!("{o}: bad ideal {i:?}"))?;
                ensure(!i.is_two_sided(), || format!("{o}: two-sided ideal of norm {l}"))?;
            }
        }
    }
    Ok(format!("{} orders, l in {{2, 3, 5}}", orders.len()))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for (p, l, n) in [(37u64, 2u64, 3usize), (37, 3, 3), (101, 2, 9)] {
        let oracle = supersingular_j_list_by_point_count(p).map_err(e)?.len();
        ensure(oracle == n, || format!("p = {p}: point count gives {oracle}"))?;
        let g = build_isogeny_graph(p, l).map_err(e)?;
        let base = root_maximal_orders(QuatAlgebra::pizer(p).map_err(e)?).map_err(e)?.remove(0);
        let cs = brandt::enumerate_classes(&base, l, brandt::default_depth_cap(p)).map_err(e)?;
        ensure(g.vertex_count() == n && cs.len() == n, || {
            format!("(p, l) = ({p}, {l}): {} curves, {} classes", g.vertex_count(), cs.len())
        })?;
        let b = brandt::brandt_matrix(&cs, l).map_err(e)?;
        ensure(b.iter().all(|r| r.iter().sum::<u64>() == l + 1), || format!("({p}, {l}): row sums"))?;
        let h = brandt::brandt_graph(&cs, &b, l);
        brandt::check_graph_isomorphism(&g, &h).map_err(|w| format!("({p}, {l}): {w}"))?;
        notes.push(format!("({p},{l}) {n} vertices"));
    }
    Ok(notes.join(", "))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for p in (5..=200u64).filter(|&p| is_prime(p)) {
        for l in [2u64, 3] {
            let g = build_isogeny_graph(p, l).map_err(e)?;
            ensure(g.is_strongly_connected(), || format!("G({p}, {l}) is not connected"))?;
            count += 1;
        }
    }
    Ok(format!("{count} graphs connected"))
}

fn criterion_6() -> Outcome {
    let alg = QuatAlgebra::pizer(7).map_err(e)?;
    ensure((alg.d_i, alg.d_j) == (-1, -7), || format!("(d_i, d_j) = ({}, {})", alg.d_i, alg.d_j))?;
    let bass = bass_order(alg).map_err(e)?;
    let start = enumerate_maximal_superorders(&bass).map_err(e)?.remove(0);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for l in [2u64, 3] {
        let c = walk_component(&start, l, 4, VERTEX_CAP).map_err(e)?;
        let g = &c.graph;
        if !g.is_tree() || g.edges.iter().any(|x| x.src == x.dst || x.mult != 1) {
            failures.push(format!("l = {l}: not a simple tree"));
        }
        let audits = audit_component(&c);
        for (v, rep) in audits.iter().filter(|a| !a.1.passed()) {
            let x = &c.vertices[*v];
            failures.push(format!(
                "l = {l}: audit at ({},{}) predicted {:?} observed {:?}",
                x.f_i, x.f_j, rep.predicted, rep.observed
            ));
        }
        let (local, _) = find_roots(&c);
        let el = local_embedding_number(&bass, l).map_err(e)? as usize;
        if local.len() != el {
            failures.push(format!("l = {l}: {} local roots, e_l = {el}", local.len()));
        }
        if local.len() == 2 && !g.undirected_edges().contains(&(local[0].min(local[1]), local[0].max(local[1]))) {
            failures.push(format!("l = {l}: local roots not adjacent"));
        }
        let mut at_root: BTreeMap<String, i64> = BTreeMap::new();
        for (_, pair) in c.out_edges(c.start) {
            *at_root.entry(pair.label()).or_default() += 1;
        }
        let get = |k: &str| at_root.get(k).copied().unwrap_or(0);
        let want: &[(&str, i64)] = if l == 3 {
            &[("DD", 4)]
        } else {
            &[("HH", 1), ("HD", 0), ("DH", 1), ("DD", 1)]
        };
        for &(k, n) in want {
            if get(k) != n {
                failures.push(format!("l = {l}: global root has {} {k} edges, expected {n}", get(k)));
            }
        }
        notes.push(format!("l={l}: {} vertices, {} audited", c.vertices.len(), audits.len()));
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut pairs = 0;
    let mut nonprimitive = 0;
    for p in [13u64, 37, 41] {
        let roots = root_maximal_orders(QuatAlgebra::pizer(p).map_err(e)?).map_err(e)?;
        for _ in 0..40 {
            let l = [2u64, 3][rng.gen_range(0..2)];
            let a = random_walk(&roots[0], l, rng.gen_range(0..3), &mut rng).map_err(e)?;
            let b = random_walk(&a, l, rng.gen_range(1..5), &mut rng).map_err(e)?;
            let i = connecting_ideal(&a, &b).map_err(e)?;
            let index = a.lattice().index(&a.lattice().intersection(b.lattice())).map_err(e)?;
            ensure(i.nrd() == rat(index), || format!("nrd {} != index {index}", i.nrd()))?;
            let back = connecting_ideal(&b, &a).map_err(e)?;
            let c = i.conj();
            ensure(c == back && c.is_primitive().map_err(e)?, || "conj is not the reverse connecting ideal".into())?;
            // Local-global primitivity on the ideal and on an imprimitive multiple.
            let n = i.nrd().to_integer().max(1) as u64;
            let sq = i.product(&c);
            for (x, expect) in [(&i, true), (&sq, n == 1)] {
                let global = x.is_primitive().map_err(e)?;
                let mut primes: Vec<u64> = factor(x.nrd().to_integer() as u64).iter().map(|f| f.0).collect();
                primes.push(l);
                let local = primes.iter().map(|&q| x.is_primitive_at(q)).collect::<Result<Vec<_>, _>>().map_err(e)?;
                ensure(global == local.iter().all(|&b| b), || "primitivity local-global mismatch".into())?;
                ensure(global == expect, || format!("primitivity of {x:?} is {global}"))?;
                if !global {
                    nonprimitive += 1;
                }
            }
            pairs += 1;
        }
    }
    ensure(pairs >= 100, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs, {nonprimitive} imprimitive checks"))
}

fn criterion_8() -> Outcome {
    let suites = common::all();
    for (name, f) in &suites {
        f(common::CASES).map_err(|m| format!("{name}: {m}"))?;
    }
    Ok(format!("{} suites x {} cases", suites.len(), common::CASES))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome, Duration); 8] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(10)),
        (3, criterion_3, Duration::from_secs(30)),
        (4, criterion_4, Duration::from_secs(120)),
        (5, criterion_5, Duration::from_secs(120)),
        (6, criterion_6, Duration::from_secs(60)),
        (7, criterion_7, Duration::from_secs(30)),
        (8, criterion_8, Duration::from_secs(30)),
    ];
    let mut unexpected = Vec::new();
    for (n, f, limit) in criteria {
        let t = Instant::now();
        let mut res = f();
        let took = t.elapsed();
        if res.is_ok() && took > limit {
            res = Err(format!("took {took:.2?}, limit {limit:?}"));
        }
        let known = KNOWN_FAILING.contains(&n);
        match &res {
            Ok(msg) => println!("criterion {n}: PASS ({took:.2?} / {limit:?}) {msg}"),
            Err(msg) => println!(
                "criterion {n}: FAIL ({took:.2?} / {limit:?}) {msg}{}",
                if known { " [known, see decisions ledger]" } else { "" }
            ),
        }
        if res.is_ok() == known {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
