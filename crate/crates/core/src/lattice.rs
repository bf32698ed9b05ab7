//! Integer lattice geometry: exponent vectors, lattice multiplicities,
//! rational cones, placing triangulations and extreme-ray enumeration.

#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::Index;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Largest ambient dimension handled by the brute-force enumerations.
pub const MAX_DIM: usize = 4;

/// An integer vector: an exponent in `N^n`, or a ray generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &i64> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn dot(&self, other: &ExponentVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Sum of the entries.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Index<usize> for ExponentVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for ExponentVector {
    fn from(v: [i64; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Result<ExponentVector> {
    let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(ExponentVector(v.iter().map(|x| x / g).collect()))
}

fn to_i128(vs: &[ExponentVector]) -> Vec<Vec<i128>> {
    vs.iter().map(|v| v.0.iter().map(|&x| x as i128).collect()).collect()
}

/// Rank of a family of integer rows.
pub fn rank(vectors: &[ExponentVector]) -> usize {
    rank_i128(to_i128(vectors))
}

fn rank_i128(mut rows: Vec<Vec<i128>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c] == 0 {
                continue;
            }
            let (a, b) = (rows[r][c], rows[i][c]);
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            for k in 0..ncols {
                rows[i][k] = rows[i][k] * fa - rows[r][k] * fb;
            }
            let cg = rows[i].iter().fold(0i128, |acc, x| acc.gcd(x));
            if cg > 1 {
                rows[i].iter_mut().for_each(|x| *x /= cg);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
pub fn det(matrix: &[Vec<i128>]) -> i128 {
    let n = matrix.len();
    if n == 0 {
        return 1;
    }
    let mut a = matrix.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Nonzero diagonal entries of a Smith-style diagonalization of `rows`
/// (absolute values; their product is the gcd of the maximal minors).
pub fn invariant_factors(rows: &[ExponentVector]) -> Vec<i128> {
    let mut a = to_i128(rows);
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        // pivot = smallest nonzero entry of the trailing block
        let pivot = (t..nr)
            .flat_map(|i| (t..nc).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                let q = Integer::div_floor(&a[i][t], &a[t][t]);
                if q != 0 {
                    for j in t..nc {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                let q = Integer::div_floor(&a[t][j], &a[t][t]);
                if q != 0 {
                    for row in a.iter_mut().take(nr).skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remaining entry of row/column t onto the pivot
            let (mut bi, mut bj) = (t, t);
            for i in t + 1..nr {
                if a[i][t] != 0 && a[i][t].abs() < a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t + 1..nc {
                if a[t][j] != 0 && a[t][j].abs() < a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Index of `Z k_1 + ... + Z k_r` in the lattice points of its span.
pub fn mult(vectors: &[ExponentVector]) -> Result<u64> {
    check_dims(vectors)?;
    let diag = invariant_factors(vectors);
    if diag.len() < vectors.len() {
        return Err(Error::LinearlyDependent);
    }
    Ok(diag.iter().product::<i128>() as u64)
}

fn check_dims(vectors: &[ExponentVector]) -> Result<()> {
    if let Some(first) = vectors.first() {
        for v in vectors {
            if v.dim() != first.dim() {
                return Err(Error::DimensionMismatch { expected: first.dim(), found: v.dim() });
            }
        }
    }
    Ok(())
}

/// Solves `sum_i lambda_i * gens[i] = point` over the rationals when the
/// generators are linearly independent and the point lies in their span.
pub fn simplicial_coordinates(gens: &[ExponentVector], point: &[Rational]) -> Option<Vec<Rational>> {
    let r = gens.len();
    let n = point.len();
    // augmented n x (r+1) system
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = gens.iter().map(|g| Rational::from_integer(g[i].into())).collect();
            row.push(point[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..r {
        let p = (row..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(row, p);
        let inv = m[row][c].recip();
        for k in c..=r {
            m[row][k] = &m[row][k] * &inv;
        }
        for i in 0..n {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=r {
                    let delta = &f * &m[row][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if m[row..].iter().any(|rw| !rw[r].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&i| m[i][r].clone()).collect())
}

/// Rational cone strictly positively spanned by primitive generators. The
/// zero cone has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cone {
    ambient: usize,
    generators: Vec<ExponentVector>,
}

impl Cone {
    /// Generators are made primitive and deduplicated; order is preserved.
    pub fn new(ambient: usize, generators: Vec<ExponentVector>) -> Result<Cone> {
        let mut gens: Vec<ExponentVector> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: g.dim() });
            }
            let p = primitive(g.as_slice())?;
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        Ok(Cone { ambient, generators: gens })
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone { ambient, generators: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn dim(&self) -> usize {
        rank(&self.generators)
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.generators.len()
    }

    /// Sum of the generators, a point of the relative interior.
    pub fn interior_point(&self) -> ExponentVector {
        self.generators.iter().fold(ExponentVector::zeros(self.ambient), |acc, g| acc.add(g))
    }

    /// True if the cone lies in some coordinate hyperplane `x_i = 0`.
    pub fn in_coordinate_hyperplane(&self) -> bool {
        self.interior_point().iter().any(|&x| x == 0)
    }

    /// Generators sorted for identity comparisons.
    pub fn key(&self) -> Vec<ExponentVector> {
        let mut g = self.generators.clone();
        g.sort();
        g
    }

    /// Same cone in the sense of having the same generator set.
    pub fn same_as(&self, other: &Cone) -> bool {
        self.key() == other.key()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Coordinates (out of `0..n`) on which the projection of `basis` keeps
/// full rank.
fn injective_coords(basis: &[Vec<i128>]) -> Vec<usize> {
    let d = basis.len();
    let n = basis.first().map_or(0, Vec::len);
    for combo in combinations(n, d) {
        let m: Vec<Vec<i128>> = basis.iter().map(|v| combo.iter().map(|&c| v[c]).collect()).collect();
        if det(&m) != 0 {
            return combo;
        }
    }
    unreachable!("basis vectors are independent")
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Placing triangulation of the cone spanned by `gens` (taken in order).
/// Returns maximal simplices as index lists into `gens`.
fn placing_triangulation(gens: &[Vec<i128>]) -> Vec<Vec<usize>> {
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut span: Vec<Vec<i128>> = Vec::new();
    for (i, v) in gens.iter().enumerate() {
        if simplices.is_empty() {
            simplices.push(vec![i]);
            span.push(v.clone());
            continue;
        }
        let mut extended = span.clone();
        extended.push(v.clone());
        if rank_i128(extended.clone()) > span.len() {
            for s in &mut simplices {
                s.push(i);
            }
            span = extended;
            continue;
        }
        let coords = injective_coords(&span);
        let proj = |idx: &[usize], last: &[i128]| -> i128 {
            let mut m: Vec<Vec<i128>> = idx.iter().map(|&j| coords.iter().map(|&c| gens[j][c]).collect()).collect();
            m.push(coords.iter().map(|&c| last[c]).collect());
            det(&m).signum()
        };
        // boundary facets: facets of exactly one simplex
        let mut facets: Vec<(Vec<usize>, usize, usize)> = Vec::new();
        for (si, s) in simplices.iter().enumerate() {
            for (k, &w) in s.iter().enumerate() {
                let mut f = s.clone();
                f.remove(k);
                f.sort_unstable();
                facets.push((f, si, w));
            }
        }
        let mut added = Vec::new();
        for (f, _, w) in &facets {
            if facets.iter().filter(|(g, _, _)| g == f).count() != 1 {
                continue;
            }
            let side_w = proj(f, &gens[*w]);
            let side_v = proj(f, v);
            if side_v != 0 && side_v != side_w {
                let mut s = f.clone();
                s.push(i);
                added.push(s);
            }
        }
        simplices.extend(added);
    }
    simplices
}

/// Splits a cone into simplicial cones using only its own generators
/// (lexicographic placing triangulation on the generator order). Every
/// returned cone has the dimension of `c`.
pub fn simplicial_decomposition(c: &Cone) -> Vec<Cone> {
    if c.is_zero() || c.is_simplicial() {
        return vec![c.clone()];
    }
    let gens = to_i128(&c.generators);
    placing_triangulation(&gens)
        .into_iter()
        .map(|s| Cone { ambient: c.ambient, generators: s.into_iter().map(|j| c.generators[j].clone()).collect() })
        .collect()
}

/// Kernel generator of an `(n-1) x n` matrix of rank `n-1` via signed
/// maximal minors.
fn kernel_vector(rows: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|i| {
            let m: Vec<Vec<i128>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()).collect();
            let d = det(&m);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Extreme rays of `{k in R^n : c . k >= 0 for all constraints c}`, which
/// must be a pointed cone.
pub fn extreme_rays_of(n: usize, constraints: &[ExponentVector]) -> Result<Cone> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Unsupported(format!("extreme rays in dimension {n}")));
    }
    check_dims(constraints)?;
    if constraints.iter().any(|c| c.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: constraints[0].dim() });
    }
    if rank(constraints) < n {
        return Err(Error::NonPointed);
    }
    let rows = to_i128(constraints);
    let mut rays: Vec<ExponentVector> = Vec::new();
    for subset in combinations(rows.len(), n - 1) {
        let sub: Vec<Vec<i128>> = subset.iter().map(|&i| rows[i].clone()).collect();
        if n > 1 && rank_i128(sub.clone()) != n - 1 {
            continue;
        }
        let kv = kernel_vector(&sub, n);
        let g = kv.iter().fold(0i128, |acc, x| acc.gcd(x));
        if g == 0 {
            continue;
        }
        for sign in [1i128, -1] {
            let cand: Vec<i128> = kv.iter().map(|x| sign * x / g).collect();
            let feasible = rows.iter().all(|r| r.iter().zip(&cand).map(|(a, b)| a * b).sum::<i128>() >= 0);
            if feasible {
                let v = ExponentVector(cand.iter().map(|&x| x as i64).collect());
                if !rays.contains(&v) {
                    rays.push(v);
                }
            }
        }
    }
    rays.sort_by(|a, b| b.cmp(a));
    Cone::new(n, rays)
}

/// Extreme rays of `{k in R^n_{>=0} : c . k >= 0}` (the orthant
/// constraints are added here).
pub fn extreme_rays(n: usize, inequalities: &[ExponentVector]) -> Result<Cone> {
    let mut constraints = inequalities.to_vec();
    constraints.extend((0..n).map(|i| ExponentVector::unit(n, i)));
    extreme_rays_of(n, &constraints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    /// Test-only oracle: gcd of all r x r minors.
    fn gcd_of_minors(vs: &[ExponentVector]) -> i128 {
        let r = vs.len();
        let n = vs[0].dim();
        combinations(n, r)
            .into_iter()
            .map(|cols| {
                let m: Vec<Vec<i128>> = vs.iter().map(|v| cols.iter().map(|&c| v[c] as i128).collect()).collect();
                det(&m)
            })
            .fold(0i128, |acc, d| acc.gcd(&d))
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[2, 4]).unwrap(), ev(&[1, 2]));
        assert_eq!(primitive(&[3, 2]).unwrap(), ev(&[3, 2]));
        assert_eq!(primitive(&[0, 5]).unwrap(), ev(&[0, 1]));
        assert_eq!(primitive(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn mult_examples() {
        assert_eq!(mult(&[ev(&[1, 0]), ev(&[0, 1])]).unwrap(), 1);
        assert_eq!(mult(&[ev(&[1, 0]), ev(&[1, 2])]).unwrap(), 2);
        assert_eq!(mult(&[ev(&[3, 2]), ev(&[1, 1])]).unwrap(), 1);
        assert_eq!(mult(&[ev(&[1, 2]), ev(&[2, 4])]), Err(Error::LinearlyDependent));
        // non-square: (2,2,0) spans a line whose lattice is generated by (1,1,0)
        assert_eq!(mult(&[ev(&[2, 2, 0])]).unwrap(), 2);
        assert_eq!(mult(&[ev(&[1, 1, 0]), ev(&[0, 2, 2])]).unwrap(), 2);
    }

    #[test]
    fn mult_agrees_with_minors() {
        let fams = [
            vec![ev(&[3, 5, 7]), ev(&[2, -4, 6])],
            vec![ev(&[4, 6, 0, 2]), ev(&[1, 0, 3, 3]), ev(&[0, 2, 2, 8])],
            vec![ev(&[6, 4]), ev(&[2, 8])],
        ];
        for f in &fams {
            assert_eq!(mult(f).unwrap() as i128, gcd_of_minors(f).abs(), "{f:?}");
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&[vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn decomposition_2d() {
        let c = Cone::new(2, vec![ev(&[1, 0]), ev(&[0, 1])]).unwrap();
        assert_eq!(simplicial_decomposition(&c), vec![c.clone()]);
        let c = Cone::new(2, vec![ev(&[1, 0]), ev(&[1, 1]), ev(&[0, 1])]).unwrap();
        let pieces = simplicial_decomposition(&c);
        assert_eq!(pieces.len(), 2);
        let keys: Vec<_> = pieces.iter().map(Cone::key).collect();
        assert!(keys.contains(&vec![ev(&[0, 1]), ev(&[1, 1])]));
        assert!(keys.contains(&vec![ev(&[1, 0]), ev(&[1, 1])]));
    }

    #[test]
    fn decomposition_3d_with_inner_ray() {
        // placed last, the interior generator is never used
        let c = Cone::new(3, vec![ev(&[1, 0, 0]), ev(&[0, 1, 0]), ev(&[0, 0, 1]), ev(&[1, 1, 1])]).unwrap();
        assert_eq!(simplicial_decomposition(&c).len(), 1);
        // placed first, it is a vertex of every piece
        let c = Cone::new(3, vec![ev(&[1, 1, 1]), ev(&[1, 0, 0]), ev(&[0, 1, 0]), ev(&[0, 0, 1])]).unwrap();
        let pieces = simplicial_decomposition(&c);
        assert_eq!(pieces.len(), 3);
        for p in &pieces {
            assert!(p.generators().contains(&ev(&[1, 1, 1])));
            assert_eq!(p.dim(), 3);
        }
    }

    #[test]
    fn decomposition_of_lower_dimensional_cone() {
        // a 2-dimensional cone inside R^3
        let c = Cone::new(3, vec![ev(&[1, 0, 1]), ev(&[1, 1, 1]), ev(&[0, 1, 0])]).unwrap();
        assert_eq!(c.dim(), 2);
        let pieces = simplicial_decomposition(&c);
        assert_eq!(pieces.len(), 2);
        assert!(pieces.iter().all(|p| p.dim() == 2 && p.is_simplicial()));
    }

    #[test]
    fn extreme_ray_examples() {
        let c = extreme_rays(2, &[ev(&[2, -3])]).unwrap();
        assert_eq!(c.key(), vec![ev(&[1, 0]), ev(&[3, 2])]);
        let c = extreme_rays(2, &[]).unwrap();
        assert_eq!(c.key(), vec![ev(&[0, 1]), ev(&[1, 0])]);
        let c = extreme_rays(2, &[ev(&[1, -1]), ev(&[-1, 1])]).unwrap();
        assert_eq!(c.key(), vec![ev(&[1, 1])]);
        assert_eq!(extreme_rays_of(2, &[ev(&[1, 0])]), Err(Error::NonPointed));
        assert!(matches!(extreme_rays(5, &[]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn coordinates_in_simplicial_cone() {
        let gens = [ev(&[1, 0]), ev(&[1, 2])];
        let lam = simplicial_coordinates(&gens, &[int(3), int(4)]).unwrap();
        assert_eq!(lam, vec![int(1), int(2)]);
        assert!(simplicial_coordinates(&[ev(&[1, 1, 0])], &[int(1), int(2), int(0)]).is_none());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
