//! Classical modular polynomials `Phi_l(X, Y)` loaded from text data.
//!
//! File format: first line `ell <l>`, then one `a b c` line per coefficient
//! `c` of `X^a Y^b` with `a >= b`; the mirrored term is implied.

use std::collections::BTreeMap;
use std::path::Path;

use super::fp2::{Fp2, Fp2Element};
use super::poly::{self, Poly};
use crate::error::{Error, Result};

pub const AVAILABLE: [u64; 4] = [2, 3, 5, 7];

const EMBEDDED: [(u64, &str); 4] = [
    (2, include_str!("../../data/modpoly/phi_2.txt")),
    (3, include_str!("../../data/modpoly/phi_3.txt")),
    (5, include_str!("../../data/modpoly/phi_5.txt")),
    (7, include_str!("../../data/modpoly/phi_7.txt")),
];

/// Environment variable naming a directory with `phi_<l>.txt` files to use
/// instead of the embedded tables.
pub const DIR_ENV: &str = "QISOG_MODPOLY_DIR";

#[derive(Clone, Debug)]
pub struct ModPoly {
    pub ell: u64,
    /// Decimal coefficients keyed by `(a, b)` with `a >= b`.
    pub coeffs: BTreeMap<(u32, u32), String>,
}

/// Residue of a signed decimal integer modulo `m`, digit by digit.
pub fn decimal_mod(s: &str, m: u64) -> Result<u64> {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad integer {s:?}")));
    }
    let r = digits
        .bytes()
        .fold(0u128, |r, c| (r * 10 + (c - b'0') as u128) % m as u128) as u64;
    Ok(if neg { (m - r) % m } else { r })
}

impl ModPoly {
    pub fn parse(text: &str) -> Result<ModPoly> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
        let ell = head
            .strip_prefix("ell ")
            .and_then(|v| v.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {head:?}")))?;
        let mut coeffs = BTreeMap::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [a, b, c] = parts[..] else {
                return Err(Error::Parse(format!("bad line {line:?}")));
            };
            let a: u32 = a.parse().map_err(|_| Error::Parse(format!("bad line {line:?}")))?;
            let b: u32 = b.parse().map_err(|_| Error::Parse(format!("bad line {line:?}")))?;
            if a < b {
                return Err(Error::Parse(format!("term X^{a} Y^{b} must have a >= b")));
            }
            decimal_mod(c, 2)?;
            if coeffs.insert((a, b), c.to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate term X^{a} Y^{b}")));
            }
        }
        let poly = ModPoly { ell, coeffs };
        poly.validate()?;
        Ok(poly)
    }

    /// Embedded table, or the file in `QISOG_MODPOLY_DIR` when set.
    pub fn load(ell: u64) -> Result<ModPoly> {
        if let Ok(dir) = std::env::var(DIR_ENV) {
            let path = Path::new(&dir).join(format!("phi_{ell}.txt"));
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Error::invalid(format!("cannot read {}: {e}", path.display()))
            })?;
            return Self::parse(&text);
        }
        let (_, text) = EMBEDDED
            .iter()
            .find(|(l, _)| *l == ell)
            .ok_or_else(|| Error::invalid(format!("no modular polynomial for l = {ell}")))?;
        Self::parse(text)
    }

    /// Coefficient of `X^a Y^b` reduced mod `m`, using the symmetry.
    pub fn coeff_mod(&self, a: u32, b: u32, m: u64) -> u64 {
        let key = if a >= b { (a, b) } else { (b, a) };
        self.coeffs
            .get(&key)
            .map(|c| decimal_mod(c, m).expect("validated at load"))
            .unwrap_or(0)
    }

    /// Monic of degree `l + 1` in `X`, and `Phi = (X^l - Y)(X - Y^l) mod l`.
    fn validate(&self) -> Result<()> {
        let l = self.ell;
        if !crate::numth::is_prime(l) {
            return Err(Error::Parse(format!("l = {l} is not prime")));
        }
        let top = (l + 1) as u32;
        if self.coeffs.keys().any(|&(a, _)| a > top) {
            return Err(Error::Parse("degree exceeds l + 1".into()));
        }
        if self.coeffs.get(&(top, 0)).map(String::as_str) != Some("1") {
            return Err(Error::Parse("Phi_l is not monic of degree l + 1".into()));
        }
        if self.coeffs.keys().any(|&(a, b)| a == top && b != 0) {
            return Err(Error::Parse("X^(l+1) must appear only as a pure power".into()));
        }
        let lu = l as u32;
        let expected = BTreeMap::from([((top, 0), 1u64), ((lu, lu), l - 1), ((1, 1), l - 1)]);
        for a in 0..=top {
            for b in 0..=a {
                let want = expected.get(&(a, b)).copied().unwrap_or(0);
                if self.coeff_mod(a, b, l) != want {
                    return Err(Error::Parse(format!(
                        "Kronecker congruence fails at X^{a} Y^{b} mod {l}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Phi_l(x, y)` over `F_{p^2}`.
    pub fn eval(&self, k: &Fp2, x: Fp2Element, y: Fp2Element) -> Fp2Element {
        let mut acc = k.zero();
        for (&(a, b), c) in &self.coeffs {
            let c = k.from_int(decimal_mod(c, k.p).unwrap() as i128);
            let t = k.mul(c, k.mul(k.pow(x, a as u128), k.pow(y, b as u128)));
            acc = k.add(acc, t);
            if a != b {
                let t = k.mul(c, k.mul(k.pow(x, b as u128), k.pow(y, a as u128)));
                acc = k.add(acc, t);
            }
        }
        acc
    }

    /// `Phi_l(j, Y)` as a polynomial in `Y`.
    pub fn specialize(&self, k: &Fp2, j: Fp2Element) -> Poly {
        let top = (self.ell + 1) as usize;
        let jp: Vec<Fp2Element> = (0..=top).map(|e| k.pow(j, e as u128)).collect();
        let mut out = vec![k.zero(); top + 1];
        for (&(a, b), c) in &self.coeffs {
            let c = k.from_int(decimal_mod(c, k.p).unwrap() as i128);
            out[b as usize] = k.add(out[b as usize], k.mul(c, jp[a as usize]));
            if a != b {
                out[a as usize] = k.add(out[a as usize], k.mul(c, jp[b as usize]));
            }
        }
        poly::trim(&mut out);
        out
    }
}
