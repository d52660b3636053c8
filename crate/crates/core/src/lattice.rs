//! Exact integer linear algebra on lattices `Z^d`.
//!
//! Everything here is arbitrary precision. Sublattices are stored through a
//! canonical row-echelon (Hermite) basis so that two generating sets of the
//! same lattice always produce identical bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticePoint) -> BigInt {
        dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(sub(&self.0, &other.0))
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&JsonInt(c))?;
        }
        seq.end()
    }
}

/// Serializes a big integer as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(v) => serializer.serialize_i64(v),
            Err(_) => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

pub(crate) fn serialize_bigint<S: Serializer>(
    v: &BigInt,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    JsonInt(v).serialize(serializer)
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Nonnegative gcd of all entries (0 for the zero vector).
pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides a vector by its content; the zero vector is returned unchanged.
pub(crate) fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&v);
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Splits `v` into `(w, g)` with `v = g * w`, `g > 0` and `w` primitive.
pub fn primitive_vector(v: &LatticePoint) -> Result<(LatticePoint, BigInt)> {
    let g = content(&v.0);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let w = v.0.iter().map(|x| x / &g).collect();
    Ok((LatticePoint(w), g))
}

pub(crate) fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Rank over `Q` of a list of integer rows.
pub(crate) fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| to_rational(r)).collect();
    row_reduce(&mut m)
}

/// In-place Gaussian elimination; returns the rank.
fn row_reduce(m: &mut [Vec<BigRational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves `c * basis = p` over `Q`, returning `None` when `p` is outside the
/// row span. The basis rows must be linearly independent.
pub(crate) fn solve_left(basis: &[Vec<BigInt>], p: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    if k == 0 {
        return if p.iter().all(Zero::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let n = p.len();
    // Work on the transposed system: columns are basis vectors, augmented by p.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[j].clone()))
                .collect();
            row.push(BigRational::from_integer(p[j].clone()));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(pv) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pv);
        let piv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut c = vec![BigRational::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        c[col] = m[row][k].clone();
    }
    Some(c)
}

/// A sublattice of `Z^d` together with its canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SublatticeBasis {
    pub ambient_rank: usize,
    pub basis_vectors: Vec<LatticePoint>,
    pub rank: usize,
    /// Index of the lattice inside `span_Q(lattice) ∩ Z^d`.
    #[serde(serialize_with = "serialize_bigint")]
    pub index_in_saturation: BigInt,
}

impl SublatticeBasis {
    /// The zero sublattice of `Z^ambient_rank`.
    pub fn zero(ambient_rank: usize) -> Self {
        SublatticeBasis {
            ambient_rank,
            basis_vectors: Vec::new(),
            rank: 0,
            index_in_saturation: BigInt::one(),
        }
    }

    pub(crate) fn rows(&self) -> Vec<Vec<BigInt>> {
        self.basis_vectors.iter().map(|b| b.0.clone()).collect()
    }

    /// Ambient point with the given integer coordinates in this basis.
    pub fn point_from_coords(&self, coords: &[BigInt]) -> LatticePoint {
        let mut out = vec![BigInt::zero(); self.ambient_rank];
        for (c, b) in coords.iter().zip(&self.basis_vectors) {
            for (o, x) in out.iter_mut().zip(&b.0) {
                *o += c * x;
            }
        }
        LatticePoint(out)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        express_in_basis(p, self).is_ok()
    }
}

/// Canonical basis of the integer span of `generators`.
pub fn sublattice_basis(generators: &[LatticePoint]) -> Result<SublatticeBasis> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let d = first.rank();
    if let Some(g) = generators.iter().find(|g| g.rank() != d) {
        return Err(Error::DimensionMismatch(format!(
            "generator {g} has rank {} but {d} was expected",
            g.rank()
        )));
    }
    let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| g.0.clone()).collect();
    let hnf = hermite_rows(rows, d);
    let index = gcd_of_maximal_minors(&hnf);
    Ok(SublatticeBasis {
        ambient_rank: d,
        rank: hnf.len(),
        basis_vectors: hnf.into_iter().map(LatticePoint).collect(),
        index_in_saturation: index,
    })
}

/// Row Hermite normal form: echelon rows, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub(crate) fn hermite_rows(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in (r + 1)..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pivot_row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let q = a[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// gcd of all `k x k` minors of a `k x n` integer matrix with independent rows.
fn gcd_of_maximal_minors(rows: &[Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    let n = rows[0].len();
    let mut g = BigInt::zero();
    for cols in combinations(n, k) {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        g = g.gcd(&determinant(&sub));
        if g.is_one() {
            break;
        }
    }
    g
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub(crate) fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Integer coordinates of `p` in the basis `b`.
pub fn express_in_basis(p: &LatticePoint, b: &SublatticeBasis) -> Result<Vec<BigInt>> {
    if p.rank() != b.ambient_rank {
        return Err(Error::DimensionMismatch(format!(
            "point {p} has rank {} but the lattice lives in rank {}",
            p.rank(),
            b.ambient_rank
        )));
    }
    let c = solve_left(&b.rows(), &p.0).ok_or(Error::NotInSpan)?;
    c.into_iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::NotInLattice)
            }
        })
        .collect()
}

/// Basis of the integer kernel `{x in Z^n : rows . x = 0}`; always saturated.
pub(crate) fn kernel_basis(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let (_, u, c) = column_echelon(rows, n);
    (c..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Column operations bringing `a` (k x n) to lower echelon form.
/// Returns the reduced matrix, the unimodular transform `u` (n x n) with
/// `a_original * u = reduced`, and the number of nonzero columns.
fn column_echelon(a: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, usize) {
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let swap_cols = |m: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let sub_col = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let v = &row[src] * q;
            row[dst] -= v;
        }
    };
    let mut c = 0;
    for i in 0..a.len() {
        if c == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in c..n {
                if !a[i][j].is_zero() && best.is_none_or(|b| a[i][j].abs() < a[i][b].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            swap_cols(&mut a, c, b);
            swap_cols(&mut u, c, b);
            let mut done = true;
            for j in (c + 1)..n {
                if !a[i][j].is_zero() {
                    let q = a[i][j].div_floor(&a[i][c]);
                    sub_col(&mut a, j, c, &q);
                    sub_col(&mut u, j, c, &q);
                    if !a[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                c += 1;
                break;
            }
        }
    }
    (a, u, c)
}

/// Basis of the saturation `span_Q(rows) ∩ Z^n`.
pub(crate) fn saturation(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let k = kernel_basis(rows, n);
    if k.is_empty() {
        return identity(n);
    }
    hermite_rows(kernel_basis(&k, n), n)
}

pub(crate) fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// For rows `b` (w x n) spanning a saturated lattice, an integer matrix
/// `lam` (n x w) with `b * lam = I_w`.
pub(crate) fn right_inverse(b: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let w = b.len();
    let (h, u, c) = column_echelon(b, n);
    if c != w {
        return None;
    }
    // h[:, :w] is lower triangular with determinant ±1 when b is saturated.
    let hw: Vec<Vec<BigInt>> = h.iter().map(|r| r[..w].to_vec()).collect();
    let det = determinant(&hw);
    if !det.abs().is_one() {
        return None;
    }
    let inv = integer_inverse_lower(&hw)?;
    let mut lam = vec![vec![BigInt::zero(); w]; n];
    for i in 0..n {
        for j in 0..w {
            let mut s = BigInt::zero();
            for k in 0..w {
                s += &u[i][k] * &inv[k][j];
            }
            lam[i][j] = s;
        }
    }
    Some(lam)
}

fn integer_inverse_lower(h: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let w = h.len();
    let mut inv = vec![vec![BigInt::zero(); w]; w];
    // Solve h * x_j = e_j by forward substitution (h lower triangular).
    for j in 0..w {
        for i in 0..w {
            let mut s = if i == j { BigInt::one() } else { BigInt::zero() };
            for k in 0..i {
                s -= &h[i][k] * &inv[k][j];
            }
            let (q, r) = s.div_rem(&h[i][i]);
            if !r.is_zero() {
                return None;
            }
            inv[i][j] = q;
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    fn content_oracle(v: &[i64]) -> i64 {
        fn g(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                g(b, a % b)
            }
        }
        v.iter().fold(0, |acc, &x| g(acc, x))
    }

    #[test]
    fn primitive_vector_examples() {
        assert_eq!(
            primitive_vector(&pt(&[4, 6])).unwrap(),
            (pt(&[2, 3]), BigInt::from(2))
        );
        assert_eq!(
            primitive_vector(&pt(&[1, 0])).unwrap(),
            (pt(&[1, 0]), BigInt::from(1))
        );
        let v = [-2, -4, -6];
        let g = content_oracle(&v);
        assert_eq!(g, 2);
        assert_eq!(
            primitive_vector(&pt(&v)).unwrap(),
            (pt(&[-1, -2, -3]), BigInt::from(g))
        );
        assert_eq!(primitive_vector(&pt(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn sublattice_examples() {
        let b = sublattice_basis(&[pt(&[1, 0]), pt(&[1, 1]), pt(&[1, 2])]).unwrap();
        assert_eq!(b.rank, 2);
        assert_eq!(b.index_in_saturation, BigInt::from(1));
        assert_eq!(b.basis_vectors, vec![pt(&[1, 0]), pt(&[0, 1])]);

        let b = sublattice_basis(&[pt(&[2, 0]), pt(&[0, 2])]).unwrap();
        assert_eq!(b.rank, 2);
        // determinant oracle
        let det = determinant(&[
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
        ]);
        assert_eq!(b.index_in_saturation, det.abs());
        assert_eq!(b.index_in_saturation, BigInt::from(4));

        let b = sublattice_basis(&[pt(&[1, 2])]).unwrap();
        assert_eq!(b.rank, 1);
        assert_eq!(b.index_in_saturation, BigInt::from(1));

        assert_eq!(sublattice_basis(&[]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = sublattice_basis(&[pt(&[3, 5, 1]), pt(&[1, 1, 1]), pt(&[0, 2, -2])]).unwrap();
        let b = sublattice_basis(&[pt(&[1, 1, 1]), pt(&[3, 5, 1]), pt(&[4, 6, 2])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rank, 2);
    }

    #[test]
    fn express_examples() {
        let std = sublattice_basis(&[pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(
            express_in_basis(&pt(&[2, 2]), &std).unwrap(),
            vec![BigInt::from(2), BigInt::from(2)]
        );
        let line = sublattice_basis(&[pt(&[1, 2])]).unwrap();
        assert_eq!(
            express_in_basis(&pt(&[3, 6]), &line).unwrap(),
            vec![BigInt::from(3)]
        );
        assert_eq!(express_in_basis(&pt(&[1, 1]), &line), Err(Error::NotInSpan));
        let even = sublattice_basis(&[pt(&[2, 0]), pt(&[0, 2])]).unwrap();
        assert_eq!(express_in_basis(&pt(&[1, 1]), &even), Err(Error::NotInLattice));
    }

    #[test]
    fn kernel_and_saturation() {
        let k = kernel_basis(&[vec![BigInt::from(2), BigInt::from(1)]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(dot(&k[0], &[BigInt::from(2), BigInt::from(1)]), BigInt::zero());
        assert_eq!(content(&k[0]), BigInt::one());

        let s = saturation(&[vec![BigInt::from(2), BigInt::from(4)]], 2);
        assert_eq!(s, vec![vec![BigInt::from(1), BigInt::from(2)]]);

        let b = vec![vec![BigInt::from(2), BigInt::from(3), BigInt::from(5)]];
        let lam = right_inverse(&b, 3).unwrap();
        let col: Vec<BigInt> = lam.iter().map(|r| r[0].clone()).collect();
        assert_eq!(dot(&b[0], &col), BigInt::one());
    }

    #[test]
    fn determinant_small() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(4), BigInt::from(5)],
            vec![BigInt::from(6), BigInt::from(7), BigInt::from(9)],
        ];
        // 0*(36-35) - 1*(27-30) + 2*(21-24) = 3 - 6
        assert_eq!(determinant(&m), BigInt::from(-3));
    }
}
