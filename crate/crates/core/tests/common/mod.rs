//! Randomized property suites shared by `properties` and `acceptance`.
//! Every runner is seeded so a failure reproduces exactly.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use qisog::ecgraph::fp2::Fp2;
use qisog::ecgraph::modpoly::{ModPoly, AVAILABLE};
use qisog::ideals::{root_maximal_orders, QIdeal};
use qisog::lattice::hnf::hnf;
use qisog::lattice::QLattice;
use qisog::numth::{factor, hilbert_symbol, Place};
use qisog::quat::{rat, QuatAlgebra, QuatElement, Rat};

pub const CASES: u32 = 256;

const PRIMES: [u64; 14] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn runner(seed: u8, cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn run<S: Strategy>(
    seed: u8,
    cases: u32,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(seed, cases).run(&s, f).map_err(|e| e.to_string())
}

fn algebra() -> impl Strategy<Value = QuatAlgebra> {
    proptest::sample::select(PRIMES.to_vec()).prop_map(|p| QuatAlgebra::pizer(p).unwrap())
}

fn element(alg: QuatAlgebra) -> impl Strategy<Value = QuatElement> {
    (prop::array::uniform4(-30i128..=30), 1i128..=6)
        .prop_map(move |(c, d)| alg.frac_elem(c, d))
}

fn algebra_and_elements(n: usize) -> impl Strategy<Value = (QuatAlgebra, Vec<QuatElement>)> {
    algebra().prop_flat_map(move |a| (Just(a), prop::collection::vec(element(a), n)))
}

pub fn nrd_multiplicative(cases: u32) -> Result<(), String> {
    run(1, cases, algebra_and_elements(2), |(_, v)| {
        let (x, y) = (v[0], v[1]);
        prop_assert_eq!((x * y).nrd(), x.nrd() * y.nrd());
        prop_assert!(x.nrd() >= rat(0));
        Ok(())
    })
}

pub fn involution_laws(cases: u32) -> Result<(), String> {
    run(2, cases, algebra_and_elements(2), |(a, v)| {
        let (x, y) = (v[0], v[1]);
        prop_assert_eq!(x.conj().conj(), x);
        prop_assert_eq!((x * y).conj(), y.conj() * x.conj());
        prop_assert_eq!((x + y).conj(), x.conj() + y.conj());
        prop_assert_eq!(x + x.conj(), a.one().scale(x.trd()));
        prop_assert_eq!(x * x.conj(), a.one().scale(x.nrd()));
        Ok(())
    })
}

/// `I = O alpha + O n` for a root order `O`.
pub fn ideal_norm_squared_is_index(cases: u32) -> Result<(), String> {
    let s = (
        algebra(),
        prop::array::uniform4(-6i128..=6),
        1i128..=12,
        any::<bool>(),
    );
    run(3, cases, s, |(a, c, n, second)| {
        let roots = root_maximal_orders(a).unwrap();
        let o = &roots[usize::from(second)];
        let alpha = o.from_coords(&c);
        prop_assume!(!alpha.is_zero());
        let b = o.basis();
        let gens: Vec<QuatElement> = b
            .iter()
            .map(|x| *x * alpha)
            .chain(b.iter().map(|x| x.scale(rat(n))))
            .collect();
        let i = QIdeal::new(QLattice::from_generators(a, &gens).unwrap());
        prop_assert_eq!(i.left_order(), o);
        let nrd: Rat = i.nrd();
        let index = o.lattice().index(i.lattice()).unwrap();
        prop_assert_eq!(nrd * nrd, rat(index));
        prop_assert_eq!(i.right_order().discrd(), a.p as i128);
        Ok(())
    })
}

pub fn hnf_round_trips(cases: u32) -> Result<(), String> {
    let s = (
        prop::collection::vec(prop::collection::vec(-40i128..=40, 4), 4..=6),
        prop::collection::vec((0usize..6, 0usize..6, -3i128..=3), 0..12),
        algebra(),
        1i128..=8,
    );
    run(4, cases, s, |(rows, ops, a, den)| {
        let h = hnf(&rows, 4);
        prop_assert_eq!(hnf(&h, 4), h.clone());
        let mut m = rows.clone();
        let r = m.len();
        for (i, j, k) in ops {
            let (i, j) = (i % r, j % r);
            if i == j {
                m.swap(i, (j + 1) % r);
            } else {
                let src = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(src) {
                    *x += k * y;
                }
            }
        }
        prop_assert_eq!(hnf(&m, 4), h.clone());
        if h.len() == 4 {
            let l = QLattice::from_int_rows(a, &rows, den).unwrap();
            prop_assert_eq!(QLattice::from_data(a, &l.data()).unwrap(), l.clone());
            let g = QLattice::from_generators(a, &l.basis()).unwrap();
            prop_assert_eq!(g, l);
        }
        Ok(())
    })
}

pub fn hilbert_product_formula(cases: u32) -> Result<(), String> {
    let nonzero = (-300i128..=300).prop_filter("nonzero", |x| *x != 0);
    let s = (nonzero.clone(), nonzero, 1i128..=9, 1i128..=9);
    run(5, cases, s, |(a, b, da, db)| {
        let (x, y) = (Rat::new(a, da), Rat::new(b, db));
        let mut primes: Vec<u64> = [2, a.unsigned_abs(), b.unsigned_abs(), da as u128, db as u128]
            .iter()
            .flat_map(|&n| factor(n as u64).into_iter().map(|f| f.0))
            .collect();
        primes.sort();
        primes.dedup();
        let mut prod = hilbert_symbol(x, y, Place::Infinity);
        for &q in &primes {
            prod *= hilbert_symbol(x, y, Place::Prime(q));
        }
        prop_assert_eq!(prod, 1);
        for q in [313u64, 317, 331] {
            prop_assert_eq!(hilbert_symbol(x, y, Place::Prime(q)), 1);
        }
        Ok(())
    })
}

pub fn modpoly_symmetry_and_congruence(cases: u32) -> Result<(), String> {
    let polys: Vec<ModPoly> = AVAILABLE.iter().map(|&l| ModPoly::load(l).unwrap()).collect();
    let k = Fp2::new(101).unwrap();
    let s = (0..polys.len(), 0u32..=8, 0u32..=8, 0..k.order(), 0..k.order());
    run(6, cases, s, |(n, a, b, x, y)| {
        let phi = &polys[n];
        let l = phi.ell;
        let (a, b) = (a % (l as u32 + 2), b % (l as u32 + 2));
        for m in [l, 101, 1_000_003] {
            prop_assert_eq!(phi.coeff_mod(a, b, m), phi.coeff_mod(b, a, m));
        }
        // (X^l - Y)(X - Y^l) = X^(l+1) - X^l Y^l - X Y + Y^(l+1)
        let li = l as u32;
        let expect = match (a, b) {
            (x, 0) | (0, x) if x == li + 1 => 1,
            (x, y) if x == y && (x == li || x == 1) => l - 1,
            _ => 0,
        };
        prop_assert_eq!(phi.coeff_mod(a, b, l), expect % l);
        let (x, y) = (k.from_index(x), k.from_index(y));
        prop_assert_eq!(phi.eval(&k, x, y), phi.eval(&k, y, x));
        Ok(())
    })
}

/// All suites, by name, for the acceptance run.
pub fn all() -> Vec<(&'static str, fn(u32) -> Result<(), String>)> {
    vec![
        ("nrd multiplicativity", nrd_multiplicative),
        ("involution laws", involution_laws),
        ("nrd(I)^2 = index", ideal_norm_squared_is_index),
        ("HNF round trips", hnf_round_trips),
        ("Hilbert product formula", hilbert_product_formula),
        ("modular polynomial symmetry and congruence", modpoly_symmetry_and_congruence),
    ]
}
