//! Orders and ideals: order generation, the explicit root maximal orders,
//! primitivity, connecting ideals, equivalence, and l-neighbors through the
//! splitting `O / lO = M_2(F_l)`.

use std::fmt;

use num_integer::Roots;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{hnf::hnf, rational_gcd, QLattice, DEFAULT_NODE_CAP};
use crate::modl;
use crate::quat::{rat, QuatAlgebra, QuatElement, Rat};

/// Closure rounds before `order_closure` gives up.
pub const CLOSURE_ROUND_CAP: usize = 16;

/// An order: a full-rank lattice containing 1 and closed under multiplication.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QOrder {
    lattice: QLattice,
}

impl QOrder {
    pub fn from_lattice(lattice: QLattice) -> Result<Self> {
        if !lattice.is_order() {
            return Err(Error::invalid("lattice is not an order"));
        }
        Ok(QOrder { lattice })
    }

    pub fn lattice(&self) -> &QLattice {
        &self.lattice
    }

    pub fn alg(&self) -> QuatAlgebra {
        self.lattice.alg()
    }

    pub fn basis(&self) -> [QuatElement; 4] {
        self.lattice.basis()
    }

    pub fn contains(&self, x: &QuatElement) -> bool {
        self.lattice.contains(x)
    }

    pub fn contains_order(&self, other: &QOrder) -> bool {
        self.lattice.contains_lattice(&other.lattice)
    }

    pub fn discrd(&self) -> i128 {
        reduced_discriminant(self).expect("orders have a square discriminant")
    }

    /// Maximal orders of a quaternion algebra ramified at `{p, inf}` are exactly
    /// those of reduced discriminant `p`.
    pub fn is_maximal(&self) -> bool {
        self.discrd() == self.alg().p as i128
    }

    /// Coordinates of `x` in the order basis, reduced mod `ell`.
    pub fn coords_mod(&self, x: &QuatElement, ell: u64) -> Result<Vec<u64>> {
        self.lattice
            .coords(x)
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(modl::reduce(c.to_integer(), ell))
                } else {
                    Err(Error::invalid(format!("{x} is not in the order")))
                }
            })
            .collect()
    }

    /// Element `sum c_s b_s` for integer coordinates `c`.
    pub fn from_coords(&self, c: &[i128]) -> QuatElement {
        let b = self.basis();
        c.iter()
            .zip(&b)
            .fold(self.alg().zero(), |acc, (ck, bk)| acc + bk.scale(rat(*ck)))
    }
}

impl fmt::Debug for QOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QOrder{}", self.lattice)
    }
}

impl fmt::Display for QOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lattice)
    }
}

/// HNF basis of the Z-span of `gens`, of any rank.
fn span_basis(alg: QuatAlgebra, gens: &[QuatElement]) -> Vec<QuatElement> {
    let den = gens.iter().fold(1i128, |d, g| num_integer::lcm(d, g.denominator()));
    let rows: Vec<Vec<i128>> = gens.iter().map(|g| g.scaled_coords(den).to_vec()).collect();
    hnf(&rows, 4)
        .into_iter()
        .map(|r| alg.frac_elem([r[0], r[1], r[2], r[3]], den))
        .collect()
}

/// Smallest order containing `gens`: grow the span by pairwise products until stable.
pub fn order_closure(alg: QuatAlgebra, gens: &[QuatElement]) -> Result<QOrder> {
    for g in gens {
        if !g.trd().is_integer() || !g.nrd().is_integer() {
            return Err(Error::invalid(format!("{g} is not integral, so lies in no order")));
        }
    }
    let mut all = vec![alg.one()];
    all.extend_from_slice(gens);
    let mut basis = span_basis(alg, &all);
    for _ in 0..CLOSURE_ROUND_CAP {
        let mut next = basis.clone();
        for x in &basis {
            for y in &basis {
                next.push(*x * *y);
            }
        }
        let next = span_basis(alg, &next);
        if let Some(g) = next.iter().find(|g| !g.trd().is_integer() || !g.nrd().is_integer()) {
            return Err(Error::invalid(format!("generated ring contains non-integral {g}")));
        }
        if next == basis {
            if basis.len() < 4 {
                return Err(Error::invalid(format!(
                    "generators close up to a rank {} ring, not an order",
                    basis.len()
                )));
            }
            let lattice = QLattice::from_generators(alg, &basis)?;
            return QOrder::from_lattice(lattice);
        }
        basis = next;
    }
    Err(Error::CapExceeded {
        what: "order closure rounds",
        cap: CLOSURE_ROUND_CAP,
    })
}

fn det4(m: [[Rat; 4]; 4]) -> Rat {
    let mut m = m;
    let mut det = rat(1);
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !m[r][c].is_zero()) else {
            return rat(0);
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..4 {
            let f = m[r][c] / m[c][c];
            for k in c..4 {
                let v = m[c][k];
                m[r][k] -= f * v;
            }
        }
    }
    det
}

/// `discrd(O)` as the square root of `|det trd(e_a e_b)|`.
pub fn reduced_discriminant(o: &QOrder) -> Result<i128> {
    let b = o.basis();
    let mut g = [[rat(0); 4]; 4];
    for s in 0..4 {
        for t in 0..4 {
            g[s][t] = (b[s] * b[t]).trd();
        }
    }
    let d = det4(g).abs();
    if !d.is_integer() {
        return Err(Error::inconsistent("discriminant of an order is not an integer"));
    }
    let d = d.to_integer();
    let r = d.sqrt();
    if r * r != d {
        return Err(Error::inconsistent(format!("discriminant {d} is not a square")));
    }
    Ok(r)
}

/// `(d_1 d_2 - (t_1 t_2 - 2t)^2) / 4` for an order generated by two
/// non-commuting integral elements.
pub fn two_generator_discriminant(a1: &QuatElement, a2: &QuatElement) -> Rat {
    let disc = |x: &QuatElement| x.trd() * x.trd() - rat(4) * x.nrd();
    let (t1, t2, t) = (a1.trd(), a2.trd(), (*a1 * *a2).trd());
    let m = t1 * t2 - rat(2) * t;
    (disc(a1) * disc(a2) - m * m) / rat(4)
}

/// The maximal orders of the standard `(-q, -p)` algebra listed for each
/// residue class of `p`: two for `p = 1 mod 4`, two for `p = 3 mod 4` where
/// only the first contains the maximal orders of both `Q(i)` and `Q(j)`.
pub fn root_maximal_orders(alg: QuatAlgebra) -> Result<Vec<QOrder>> {
    let p = alg.p;
    if p <= 3 {
        return Err(Error::invalid("p must exceed 3"));
    }
    let q = alg
        .q
        .ok_or_else(|| Error::invalid("root orders need the standard (-q, -p) basis"))?;
    if alg.d_i != -(q as i64) || alg.d_j != -(p as i64) {
        return Err(Error::invalid("root orders need the standard (-q, -p) basis"));
    }
    let (i, half) = (alg.i(), |c: [i128; 4], d: i128| alg.frac_elem(c, d));
    let gens: Vec<Vec<QuatElement>> = match p % 8 {
        3 | 7 => vec![
            vec![i, half([1, 0, 1, 0], 2)],
            vec![i, half([1, 0, 0, 1], 2)],
        ],
        5 => vec![
            vec![i, half([1, 0, 1, 1], 2), half([0, 1, 2, 1], 4)],
            // The j-conjugate of the first order. Keeping (1+j+k)/2 next to
            // (i+2j-k)/4 only generates an order of discriminant 3p.
            vec![i, half([1, 0, 1, -1], 2), half([0, 1, 2, -1], 4)],
        ],
        _ => {
            let qi = q as i128;
            let pi = p as i128;
            let c = (1..qi)
                .find(|c| (c * c * pi + 1) % qi == 0)
                .ok_or_else(|| Error::invalid(format!("no c with {q} | c^2 p + 1")))?;
            // (c' i +- k)/q is integral for c' = c p, since c'^2 + p = p (c^2 p + 1).
            let cc = (c * pi) % qi;
            vec![
                vec![half([1, 1, 0, 0], 2), alg.j(), half([0, cc, 0, 1], qi)],
                vec![half([1, 1, 0, 0], 2), alg.j(), half([0, cc, 0, -1], qi)],
            ]
        }
    };
    let mut out = Vec::new();
    for g in gens {
        let o = order_closure(alg, &g)?;
        if !o.is_maximal() {
            return Err(Error::inconsistent(format!(
                "root order {o} has discriminant {} != p",
                o.discrd()
            )));
        }
        out.push(o);
    }
    Ok(out)
}

/// A lattice together with its left and right orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QIdeal {
    lattice: QLattice,
    left: QOrder,
    right: QOrder,
}

impl QIdeal {
    pub fn new(lattice: QLattice) -> QIdeal {
        let left = QOrder {
            lattice: lattice.left_order(),
        };
        let right = QOrder {
            lattice: lattice.right_order(),
        };
        QIdeal {
            lattice,
            left,
            right,
        }
    }

    /// The principal ideal `O alpha`.
    pub fn principal(o: &QOrder, alpha: &QuatElement) -> QIdeal {
        QIdeal::new(o.lattice.right_mul(alpha))
    }

    pub fn lattice(&self) -> &QLattice {
        &self.lattice
    }

    pub fn left_order(&self) -> &QOrder {
        &self.left
    }

    pub fn right_order(&self) -> &QOrder {
        &self.right
    }

    pub fn nrd(&self) -> Rat {
        self.lattice.reduced_norm()
    }

    pub fn is_integral(&self) -> bool {
        self.left.lattice.contains_lattice(&self.lattice)
    }

    pub fn conj(&self) -> QIdeal {
        QIdeal {
            lattice: self.lattice.conj(),
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    fn require_invertible(&self) -> Result<()> {
        if !self.left.is_maximal() || !self.right.is_maximal() {
            return Err(Error::invalid(
                "ideal arithmetic is only supported between maximal orders",
            ));
        }
        Ok(())
    }

    /// `I^-1 = conj(I) / nrd(I)`.
    pub fn inverse(&self) -> Result<QIdeal> {
        self.require_invertible()?;
        let n = self.nrd();
        let c = self.conj();
        Ok(QIdeal {
            lattice: c.lattice.scale(n.recip()),
            left: c.left,
            right: c.right,
        })
    }

    pub fn product(&self, other: &QIdeal) -> QIdeal {
        QIdeal::new(self.lattice.product(&other.lattice))
    }

    pub fn scale(&self, r: Rat) -> QIdeal {
        QIdeal {
            lattice: self.lattice.scale(r),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }

    /// Largest positive rational `n` with `I subset n O_L(I)`.
    pub fn content(&self) -> Rat {
        rational_gcd(
            self.lattice
                .basis()
                .iter()
                .flat_map(|b| self.left.lattice.coords(b)),
        )
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.require_integral()?;
        Ok(self.content() == rat(1))
    }

    /// Whether `l` does not divide the content, i.e. the completion at `l` is primitive.
    pub fn is_primitive_at(&self, ell: u64) -> Result<bool> {
        self.require_integral()?;
        Ok(self.content().to_integer() % ell as i128 != 0)
    }

    pub fn primitive_part(&self) -> Result<QIdeal> {
        self.require_integral()?;
        Ok(self.scale(self.content().recip()))
    }

    fn require_integral(&self) -> Result<()> {
        if !self.is_integral() {
            return Err(Error::invalid("ideal is not integral over its left order"));
        }
        Ok(())
    }

    /// Whether the left and right orders coincide.
    pub fn is_two_sided(&self) -> bool {
        self.left == self.right
    }
}

impl fmt::Debug for QIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QIdeal{}", self.lattice)
    }
}

/// Side of a colon ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(I:J)_L = { a : a J subset I } = I J^-1`.
    Left,
    /// `(I:J)_R = { a : J a subset I } = J^-1 I`.
    Right,
}

pub fn colon(i: &QIdeal, j: &QIdeal, side: Side) -> Result<QIdeal> {
    let jinv = j.inverse()?;
    Ok(match side {
        Side::Left => i.product(&jinv),
        Side::Right => jinv.product(i),
    })
}

/// The primitive integral connecting `O, O'`-ideal.
pub fn connecting_ideal(o: &QOrder, o2: &QOrder) -> Result<QIdeal> {
    if !o.is_maximal() || !o2.is_maximal() {
        return Err(Error::invalid("connecting ideals need maximal orders"));
    }
    let l = o.lattice.product(&o2.lattice);
    let g = rational_gcd(l.basis().iter().flat_map(|b| o.lattice.coords(b)));
    let ideal = QIdeal::new(l.scale(g.recip()));
    if &ideal.left != o || &ideal.right != o2 {
        return Err(Error::inconsistent("product of maximal orders is not connecting"));
    }
    Ok(ideal)
}

/// The two-sided ideal `P = O x + p O` of reduced norm `p`, where `x` is any
/// element whose reduced norm has `p`-valuation one.
pub fn ramified_prime_ideal(o: &QOrder) -> Result<QIdeal> {
    if !o.is_maximal() {
        return Err(Error::invalid("the ramified prime is only built for maximal orders"));
    }
    let p = o.alg().p as i128;
    let mut bound = p;
    let x = loop {
        let cands = o.lattice.min_norm_elements(rat(bound), DEFAULT_NODE_CAP)?;
        if let Some(x) = cands.into_iter().find(|x| {
            let n = x.nrd().to_integer();
            n % p == 0 && n % (p * p) != 0
        }) {
            break x;
        }
        bound *= 2;
    };
    let mut gens: Vec<QuatElement> = o.basis().iter().map(|b| *b * x).collect();
    gens.extend(o.basis().iter().map(|b| b.scale(rat(p))));
    let ideal = QIdeal::new(QLattice::from_generators(o.alg(), &gens)?);
    if ideal.nrd() != rat(p) || !ideal.is_two_sided() || &ideal.left != o {
        return Err(Error::inconsistent("ramified prime ideal has the wrong shape"));
    }
    Ok(ideal)
}

/// `Some(alpha)` with `J = I alpha` when the two ideals are left-equivalent.
pub fn is_equivalent(i: &QIdeal, j: &QIdeal) -> Result<Option<QuatElement>> {
    if i.left != j.left {
        return Err(Error::invalid("equivalence test needs a common left order"));
    }
    let m = i.inverse()?.product(j);
    let n = m.nrd();
    let cands = m.lattice.min_norm_elements(n, DEFAULT_NODE_CAP)?;
    let Some(alpha) = cands.into_iter().find(|a| a.nrd() == n) else {
        return Ok(None);
    };
    if i.lattice.right_mul(&alpha) != j.lattice {
        return Err(Error::inconsistent("equivalence witness does not map I onto J"));
    }
    Ok(Some(alpha))
}

/// A ring isomorphism `O / lO -> M_2(F_l)` given by the images of the basis.
#[derive(Clone, Debug)]
pub struct MatrixSplit {
    pub ell: u64,
    /// `images[s]` is the 2x2 matrix of basis element `s`, row-major.
    pub images: [[u64; 4]; 4],
    /// Multiplication table: `table[s][t]` holds the coordinates of `b_s b_t` mod l.
    table: Vec<Vec<Vec<u64>>>,
}

impl MatrixSplit {
    /// Image of an element given by its coordinates mod l.
    pub fn image(&self, c: &[u64]) -> [u64; 4] {
        let l = self.ell;
        let mut m = [0u64; 4];
        for (s, cs) in c.iter().enumerate() {
            for e in 0..4 {
                m[e] = (m[e] + cs * self.images[s][e]) % l;
            }
        }
        m
    }

    /// Coordinates mod l of the element mapping to the row-major matrix `m`.
    pub fn preimage(&self, m: [u64; 4]) -> Vec<u64> {
        let basis: Vec<Vec<u64>> = self.images.iter().map(|r| r.to_vec()).collect();
        modl::solve_combination(&basis, &m, self.ell).expect("the splitting is surjective")
    }

    /// Product in `O / lO` in basis coordinates.
    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        mul_table(&self.table, x, y, self.ell)
    }
}

fn mul_table(table: &[Vec<Vec<u64>>], x: &[u64], y: &[u64], ell: u64) -> Vec<u64> {
    let mut out = vec![0u64; 4];
    for s in 0..4 {
        if x[s] == 0 {
            continue;
        }
        for t in 0..4 {
            let f = x[s] * y[t] % ell;
            if f == 0 {
                continue;
            }
            for u in 0..4 {
                out[u] = (out[u] + f * table[s][t][u]) % ell;
            }
        }
    }
    out
}

fn mult_table(o: &QOrder, ell: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let b = o.basis();
    b.iter()
        .map(|x| b.iter().map(|y| o.coords_mod(&(*x * *y), ell)).collect())
        .collect()
}

fn unit_vector(s: usize) -> Vec<u64> {
    let mut v = vec![0; 4];
    v[s] = 1;
    v
}

fn mat2_mul(a: [u64; 4], b: [u64; 4], l: u64) -> [u64; 4] {
    [
        (a[0] * b[0] + a[1] * b[2]) % l,
        (a[0] * b[1] + a[1] * b[3]) % l,
        (a[2] * b[0] + a[3] * b[2]) % l,
        (a[2] * b[1] + a[3] * b[3]) % l,
    ]
}

/// Splits `O / lO` by finding a rank-one idempotent `e` and letting the
/// quotient act on the two-dimensional left ideal generated by `e`.
pub fn matrix_split(o: &QOrder, ell: u64, seed: u64) -> Result<MatrixSplit> {
    if ell == o.alg().p {
        return Err(Error::invalid("O / pO is not a matrix ring"));
    }
    if !crate::numth::is_prime(ell) {
        return Err(Error::invalid(format!("{ell} is not prime")));
    }
    let table = mult_table(o, ell)?;
    let one = o.coords_mod(&o.alg().one(), ell)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = 4 * (ell as usize).pow(4);
    for _ in 0..cap {
        let x: Vec<u64> = (0..4).map(|_| rng.gen_range(0..ell)).collect();
        let lift = o.from_coords(&x.iter().map(|&v| v as i128).collect::<Vec<_>>());
        let t = modl::reduce(lift.trd().to_integer(), ell);
        let n = modl::reduce(lift.nrd().to_integer(), ell);
        let roots = modl::quadratic_roots(t, n, ell);
        if roots.len() != 2 || roots[0] == roots[1] {
            continue;
        }
        let (r1, r2) = (roots[0], roots[1]);
        let s = modl::inv((r1 + ell - r2) % ell, ell);
        let e: Vec<u64> = (0..4)
            .map(|u| (x[u] + ell - r2 * one[u] % ell) % ell * s % ell)
            .collect();
        let ae: Vec<Vec<u64>> = (0..4).map(|u| mul_table(&table, &unit_vector(u), &e, ell)).collect();
        let (v, _) = modl::rref(&ae, ell);
        if v.len() != 2 {
            return Err(Error::inconsistent("idempotent does not have rank one"));
        }
        let mut images = [[0u64; 4]; 4];
        for (sidx, img) in images.iter_mut().enumerate() {
            for c in 0..2 {
                let w = mul_table(&table, &unit_vector(sidx), &v[c], ell);
                let coeff = modl::solve_combination(&v, &w, ell)
                    .ok_or_else(|| Error::inconsistent("A e is not a left ideal"))?;
                img[c] = coeff[0];
                img[2 + c] = coeff[1];
            }
        }
        let split = MatrixSplit { ell, images, table };
        verify_split(&split, &one)?;
        return Ok(split);
    }
    Err(Error::CapExceeded {
        what: "idempotent search attempts",
        cap,
    })
}

fn verify_split(m: &MatrixSplit, one: &[u64]) -> Result<()> {
    let l = m.ell;
    if m.image(one) != [1, 0, 0, 1] {
        return Err(Error::inconsistent("splitting does not map 1 to the identity"));
    }
    let rows: Vec<Vec<u64>> = m.images.iter().map(|r| r.to_vec()).collect();
    if modl::rank(&rows, l) != 4 {
        return Err(Error::inconsistent("splitting is not injective"));
    }
    for s in 0..4 {
        for t in 0..4 {
            let prod = m.mul(&unit_vector(s), &unit_vector(t));
            if m.image(&prod) != mat2_mul(m.images[s], m.images[t], l) {
                return Err(Error::inconsistent("splitting is not multiplicative"));
            }
        }
    }
    Ok(())
}

/// Points of `P^1(F_l)` as `(v0, v1)`: `(1, x)` for each `x`, then `(0, 1)`.
fn projective_line(ell: u64) -> Vec<[u64; 2]> {
    (0..ell).map(|x| [1, x]).chain([[0, 1]]).collect()
}

fn lift_ideal(o: &QOrder, ell: u64, gens_mod: &[Vec<u64>], right_mul: bool) -> QIdeal {
    let b = o.basis();
    let el = rat(ell as i128);
    let mut gens: Vec<QuatElement> = b.iter().map(|x| x.scale(el)).collect();
    for g in gens_mod {
        let alpha = o.from_coords(&g.iter().map(|&v| v as i128).collect::<Vec<_>>());
        if right_mul {
            gens.extend(b.iter().map(|x| *x * alpha));
        } else {
            gens.push(alpha);
        }
    }
    let lattice = QLattice::from_generators(o.alg(), &gens).expect("contains l O");
    QIdeal::new(lattice)
}

/// All integral left `O`-ideals of reduced norm `l`, each `O l + O alpha` where
/// `alpha` maps to the matrix with kernel spanned by a point of `P^1(F_l)`.
/// Sorted by lattice.
pub fn ideals_of_norm_ell(o: &QOrder, ell: u64, seed: u64) -> Result<Vec<QIdeal>> {
    let split = matrix_split(o, ell, seed)?;
    let mut out: Vec<QIdeal> = projective_line(ell)
        .into_iter()
        .map(|[v0, v1]| {
            let alpha = split.preimage([(ell - v1) % ell, v0, 0, 0]);
            lift_ideal(o, ell, &[alpha], true)
        })
        .collect();
    out.sort_by(|a, b| a.lattice.cmp(&b.lattice));
    Ok(out)
}

/// Brute-force version of `ideals_of_norm_ell`: every two-dimensional
/// subspace of `O / lO` closed under left multiplication.
pub fn ideals_of_norm_ell_oracle(o: &QOrder, ell: u64) -> Result<Vec<QIdeal>> {
    if ell == o.alg().p {
        return Err(Error::invalid("l = p is not supported"));
    }
    let table = mult_table(o, ell)?;
    let mut out = Vec::new();
    for c1 in 0..4 {
        for c2 in c1 + 1..4 {
            // Free positions: row 1 at columns > c1 other than c2, row 2 at columns > c2.
            let free1: Vec<usize> = (c1 + 1..4).filter(|&c| c != c2).collect();
            let free2: Vec<usize> = (c2 + 1..4).collect();
            let nfree = free1.len() + free2.len();
            for code in 0..(ell as usize).pow(nfree as u32) {
                let mut digits = code;
                let mut r1 = vec![0u64; 4];
                let mut r2 = vec![0u64; 4];
                r1[c1] = 1;
                r2[c2] = 1;
                for &c in free1.iter() {
                    r1[c] = (digits % ell as usize) as u64;
                    digits /= ell as usize;
                }
                for &c in free2.iter() {
                    r2[c] = (digits % ell as usize) as u64;
                    digits /= ell as usize;
                }
                let span = vec![r1, r2];
                let closed = (0..4).all(|s| {
                    span.iter().all(|v| {
                        let w = mul_table(&table, &unit_vector(s), v, ell);
                        modl::solve_combination(&span, &w, ell).is_some()
                    })
                });
                if closed {
                    out.push(lift_ideal(o, ell, &span, false));
                }
            }
        }
    }
    out.sort_by(|a, b| a.lattice.cmp(&b.lattice));
    Ok(out)
}

/// Right orders of the ideals of norm `l`: the maximal orders adjacent to `o`.
pub fn neighbor_orders(o: &QOrder, ell: u64, seed: u64) -> Result<Vec<QOrder>> {
    Ok(ideals_of_norm_ell(o, ell, seed)?
        .into_iter()
        .map(|i| i.right)
        .collect())
}

/// End point of a random walk of `steps` l-neighbor steps from `o`.
pub fn random_walk(o: &QOrder, ell: u64, steps: usize, rng: &mut impl Rng) -> Result<QOrder> {
    let mut cur = o.clone();
    for _ in 0..steps {
        let nbrs = neighbor_orders(&cur, ell, 0)?;
        cur = nbrs[rng.gen_range(0..nbrs.len())].clone();
    }
    Ok(cur)
}
