//! Univariate polynomials over `F_{p^2}` and root finding by Cantor-Zassenhaus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp2::{Fp2, Fp2Element};

/// Coefficients from the constant term up, with no trailing zeros.
pub type Poly = Vec<Fp2Element>;

pub fn trim(f: &mut Poly) {
    while f.last().is_some_and(|c| c.a == 0 && c.b == 0) {
        f.pop();
    }
}

pub fn degree(f: &Poly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn sub(k: &Fp2, f: &Poly, g: &Poly) -> Poly {
    let mut out: Poly = (0..f.len().max(g.len()))
        .map(|i| {
            let x = f.get(i).copied().unwrap_or(k.zero());
            let y = g.get(i).copied().unwrap_or(k.zero());
            k.sub(x, y)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(k: &Fp2, f: &Poly, g: &Poly) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(*x, *y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `g` must be nonzero.
pub fn divrem(k: &Fp2, f: &Poly, g: &Poly) -> (Poly, Poly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let lead_inv = k.inv(g[dg]).unwrap();
    let mut r = f.clone();
    trim(&mut r);
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - dg];
    while r.len() > dg {
        let shift = r.len() - 1 - dg;
        let c = k.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (i, gi) in g.iter().enumerate() {
            r[shift + i] = k.sub(r[shift + i], k.mul(c, *gi));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn make_monic(k: &Fp2, f: &Poly) -> Poly {
    let Some(&lead) = f.last() else {
        return Vec::new();
    };
    let li = k.inv(lead).unwrap();
    f.iter().map(|c| k.mul(*c, li)).collect()
}

pub fn gcd(k: &Fp2, f: &Poly, g: &Poly) -> Poly {
    let (mut a, mut b) = (f.clone(), g.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(k, &a, &b);
        a = b;
        b = r;
    }
    make_monic(k, &a)
}

/// `base^e mod m`.
pub fn powmod(k: &Fp2, base: &Poly, mut e: u128, m: &Poly) -> Poly {
    let mut acc = vec![k.one()];
    let mut b = divrem(k, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(k, &mul(k, &acc, &b), m).1;
        }
        b = divrem(k, &mul(k, &b, &b), m).1;
        e >>= 1;
    }
    divrem(k, &acc, m).1
}

pub fn eval(k: &Fp2, f: &Poly, x: Fp2Element) -> Fp2Element {
    f.iter().rev().fold(k.zero(), |acc, c| k.add(k.mul(acc, x), *c))
}

/// Distinct roots of a squarefree, split, monic `g`.
fn split_roots(k: &Fp2, g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Fp2Element>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => out.push(k.neg(g[0])),
        Some(_) => loop {
            let a = k.from_index(rng.gen_range(0..k.order()));
            let shifted = vec![a, k.one()];
            let h = powmod(k, &shifted, (k.order() as u128 - 1) / 2, g);
            let h = sub(k, &h, &vec![k.one()]);
            let d = gcd(k, g, &h);
            let dd = degree(&d).unwrap_or(0);
            if dd > 0 && dd < degree(g).unwrap() {
                let other = divrem(k, g, &d).0;
                split_roots(k, &d, rng, out);
                split_roots(k, &make_monic(k, &other), rng, out);
                return;
            }
        },
    }
}

/// Roots of `f` in `F_{p^2}` with multiplicities, sorted by root.
pub fn roots_with_multiplicity(k: &Fp2, f: &Poly) -> Vec<(Fp2Element, u32)> {
    let mut f = f.clone();
    trim(&mut f);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = vec![k.zero(), k.one()];
    let xq = powmod(k, &x, k.order() as u128, &f);
    let g = gcd(k, &f, &sub(k, &xq, &x));
    let mut rng = ChaCha8Rng::seed_from_u64(k.p);
    let mut roots = Vec::new();
    split_roots(k, &g, &mut rng, &mut roots);
    roots.sort();
    roots
        .into_iter()
        .map(|r| {
            let lin = vec![k.neg(r), k.one()];
            let mut m = 0;
            let mut cur = f.clone();
            loop {
                let (q, rem) = divrem(k, &cur, &lin);
                if !rem.is_empty() {
                    break;
                }
                m += 1;
                cur = q;
            }
            (r, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_products() {
        let k = Fp2::new(13).unwrap();
        let r1 = k.elem(3, 5);
        let r2 = k.elem(7, 0);
        let lin = |r: Fp2Element| vec![k.neg(r), k.one()];
        let f = mul(&k, &mul(&k, &lin(r1), &lin(r1)), &lin(r2));
        let roots = roots_with_multiplicity(&k, &f);
        let mut expect = vec![(r1, 2), (r2, 1)];
        expect.sort();
        assert_eq!(roots, expect);
        for (r, _) in &roots {
            assert!(k.is_zero(eval(&k, &f, *r)));
        }
    }

    #[test]
    fn all_elements_are_roots_of_field_polynomial() {
        let k = Fp2::new(5).unwrap();
        // X^25 - X splits completely with simple roots.
        let mut f = vec![k.zero(); 26];
        f[25] = k.one();
        f[1] = k.neg(k.one());
        let roots = roots_with_multiplicity(&k, &f);
        assert_eq!(roots.len(), 25);
        assert!(roots.iter().all(|(_, m)| *m == 1));
    }
}
