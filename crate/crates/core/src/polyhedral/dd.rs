//! Facet enumeration for rational cones by the double description method.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{combinations, dot, kernel_basis, make_primitive, rank, to_rational};

/// Primitive inner normals of the facets of `cone(gens)`.
///
/// The cone must span `R^dim`. The result is sorted and free of duplicates;
/// it is empty when the cone is the whole space.
pub(crate) fn facet_normals(gens: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    let basis = independent_rows(gens, dim);
    if basis.len() < dim {
        return Err(Error::NotFullDimensional);
    }
    if dim == 0 {
        return Ok(Vec::new());
    }

    let mut rays = initial_rays(gens, &basis, dim);
    let mut processed: Vec<usize> = basis.clone();

    for i in 0..gens.len() {
        if basis.contains(&i) {
            continue;
        }
        let a = &gens[i];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.dir)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.push(i);
                }
            }
            processed.push(i);
            continue;
        }
        let mut next = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = rays[p]
                    .tight
                    .iter()
                    .copied()
                    .filter(|t| rays[n].tight.contains(t))
                    .collect();
                if common.len() + 2 < dim {
                    continue;
                }
                let rows: Vec<Vec<BigInt>> = common.iter().map(|&t| gens[t].clone()).collect();
                if rank(&rows) + 2 != dim {
                    continue;
                }
                let dir: Vec<BigInt> = rays[n]
                    .dir
                    .iter()
                    .zip(&rays[p].dir)
                    .map(|(xn, xp)| &vals[p] * xn - &vals[n] * xp)
                    .collect();
                let mut tight = common;
                tight.push(i);
                next.push(Ray {
                    dir: make_primitive(dir),
                    tight,
                });
            }
        }
        for (k, r) in rays.into_iter().enumerate() {
            if vals[k].is_positive() {
                next.push(r);
            } else if vals[k].is_zero() {
                let mut r = r;
                r.tight.push(i);
                next.push(r);
            }
        }
        rays = next;
        processed.push(i);
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.dir).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

struct Ray {
    dir: Vec<BigInt>,
    tight: Vec<usize>,
}

fn independent_rows(gens: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if rows.len() == dim {
            break;
        }
        rows.push(g.clone());
        if rank(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Rays of the simplicial cone `{a : B a >= 0}` for the chosen basis rows.
fn initial_rays(gens: &[Vec<BigInt>], basis: &[usize], dim: usize) -> Vec<Ray> {
    use num_rational::BigRational;
    use num_traits::One;

    let mut m: Vec<Vec<BigRational>> = basis
        .iter()
        .enumerate()
        .map(|(row, &b)| {
            let mut r = to_rational(&gens[b]);
            for j in 0..dim {
                r.push(if j == row {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            r
        })
        .collect();
    for c in 0..dim {
        let p = (c..dim).find(|&i| !m[i][c].is_zero()).expect("basis is invertible");
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..dim {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * dim {
                    let delta = &f * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    (0..dim)
        .map(|j| {
            let col: Vec<BigRational> = (0..dim).map(|i| m[i][dim + j].clone()).collect();
            let den = col
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            let dir: Vec<BigInt> = col.iter().map(|x| (x * &den).to_integer()).collect();
            let tight = basis
                .iter()
                .enumerate()
                .filter(|&(row, _)| row != j)
                .map(|(_, &b)| b)
                .collect();
            Ray {
                dir: make_primitive(dir),
                tight,
            }
        })
        .collect()
}

/// Facet normals by exhaustive search over `(dim-1)`-subsets of generators.
/// Used to cross-check the double description result.
pub fn facet_normals_brute_force(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    for subset in combinations(gens.len(), dim - 1) {
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank(&rows) != dim - 1 {
            continue;
        }
        let k = kernel_basis(&rows, dim);
        let a = make_primitive(k[0].clone());
        let vals: Vec<BigInt> = gens.iter().map(|g| dot(&a, g)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            out.push(a);
        } else if vals.iter().all(|v| !v.is_positive()) {
            out.push(a.into_iter().map(|x| -x).collect());
        }
    }
    out.sort();
    out.dedup();
    out
}
