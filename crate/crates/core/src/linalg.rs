//! Rational subspaces in reduced row-echelon form and integer lattices in
//! Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{dot_rational, QuadExt, Rational};

/// Gauss-Jordan elimination. Returns the nonzero rows of the reduced
/// row-echelon form together with their pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for k in col..ncols {
                let delta = &f * &rows[r][k];
                rows[i][k] -= delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of the right null space `{x : M x = 0}` of a rational matrix.
pub fn nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    let mut next_pivot = 0;
    for free in 0..ncols {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square rational matrix.
#[allow(clippy::needless_range_loop)]
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rational::zero();
        };
        if sel != col {
            m.swap(sel, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for k in col..n {
                let delta = &f * &m[col][k];
                m[i][k] -= delta;
            }
        }
    }
    det
}

/// A subspace of Q^n, stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatSubspace {
    n: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RatSubspace {
    pub fn full(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        RatSubspace { n, basis, pivots: (0..n).collect() }
    }

    pub fn zero(n: usize) -> Self {
        RatSubspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn span(n: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        for v in &vectors {
            Error::dims(n, v.len())?;
        }
        let (basis, pivots) = rref(vectors, n);
        Ok(RatSubspace { n, basis, pivots })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the RREF basis. Only meaningful when `v` lies in
    /// the subspace; the pivot entries are then exactly the coefficients.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.n && self.combine(&self.coordinates(v)) == v
    }

    pub fn is_subspace_of(&self, other: &RatSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// The functional `w` restricted to this subspace, as coordinates with
    /// respect to the RREF basis.
    pub fn restrict(&self, w: &[QuadExt]) -> Vec<QuadExt> {
        self.basis.iter().map(|b| dot_rational(b, w)).collect()
    }

    /// Lifts coordinates of a functional on this subspace back to an ambient
    /// functional that is zero off the pivot columns.
    pub fn lift(&self, coords: &[QuadExt]) -> Vec<QuadExt> {
        let field = coords.first().map(|c| c.field()).unwrap_or_default();
        let mut out = vec![field.zero(); self.n];
        for (&p, c) in self.pivots.iter().zip(coords) {
            out[p] = c.clone();
        }
        out
    }
}

/// `{u in within | u . w = 0 for every row w}`.
///
/// Each row `w = a + sqrt(D) b` contributes the two rational conditions
/// `u . a = 0` and `u . b = 0`; this is exact because `u` is rational.
pub fn rational_kernel(rows: &[Vec<QuadExt>], within: &RatSubspace) -> Result<RatSubspace> {
    let n = within.ambient_dim();
    let mut constraints: Vec<Vec<Rational>> = Vec::new();
    for w in rows {
        Error::dims(n, w.len())?;
        let a: Vec<Rational> = w.iter().map(|x| x.a().clone()).collect();
        let b: Vec<Rational> = w.iter().map(|x| x.b().clone()).collect();
        for c in [a, b] {
            if c.iter().any(|x| !x.is_zero()) {
                constraints.push(c);
            }
        }
    }
    if constraints.is_empty() || within.dim() == 0 {
        return Ok(within.clone());
    }
    // Conditions on the coefficient vector with respect to the basis of `within`.
    let m = within.dim();
    let system: Vec<Vec<Rational>> = constraints
        .iter()
        .map(|c| within.basis().iter().map(|b| dot(b, c)).collect())
        .collect();
    let coeffs = nullspace(system, m);
    let vectors = coeffs.iter().map(|c| within.combine(c)).collect();
    RatSubspace::span(n, vectors)
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

/// Integer row reduction to Hermite normal form.
///
/// Returns all rows of `H` (zero rows last) and, when requested, a unimodular
/// `U` with `U * input = H`. Pivots are positive and entries above a pivot
/// lie in `[0, pivot)`.
pub fn hermite(mut h: Vec<Vec<BigInt>>, ncols: usize, track: bool) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = h.len();
    let mut u: Vec<Vec<BigInt>> = if track {
        (0..m)
            .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    } else {
        Vec::new()
    };
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let sel = (r..m)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&i, &j| h[i][col].abs().cmp(&h[j][col].abs()));
            let Some(sel) = sel else { break };
            h.swap(r, sel);
            if track {
                u.swap(r, sel);
            }
            let mut done = true;
            for i in r + 1..m {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[r][col]);
                sub_row(&mut h, i, r, &q);
                if track {
                    sub_row(&mut u, i, r, &q);
                }
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == m || h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            negate_row(&mut h, r);
            if track {
                negate_row(&mut u, r);
            }
        }
        for i in 0..r {
            let q = h[i][col].div_floor(&h[r][col]);
            if !q.is_zero() {
                sub_row(&mut h, i, r, &q);
                if track {
                    sub_row(&mut u, i, r, &q);
                }
            }
        }
        r += 1;
    }
    (h, u)
}

fn sub_row(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (t, s) in m[target].iter_mut().zip(&src_row) {
        *t -= q * s;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Integer left kernel `{x in Z^m : x M = 0}` of an `m x n` integer matrix.
pub fn integer_left_kernel(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let (h, u) = hermite(rows, ncols, true);
    h.iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, x)| x)
        .collect()
}

/// A sublattice of Z^n, stored by its Hermite normal form basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    n: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn generated_by(n: usize, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        for g in &gens {
            Error::dims(n, g.len())?;
        }
        let (mut h, _) = hermite(gens, n, false);
        h.retain(|row| row.iter().any(|x| !x.is_zero()));
        Ok(IntLattice { n, basis: h })
    }

    pub fn full(n: usize) -> Self {
        let gens = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        IntLattice::generated_by(n, gens).expect("square identity")
    }

    pub fn zero(n: usize) -> Self {
        IntLattice { n, basis: Vec::new() }
    }

    /// `V intersected with Z^n`. The result is saturated: `Z^n / L` is torsion-free.
    pub fn saturation(v: &RatSubspace) -> Self {
        let n = v.ambient_dim();
        if v.dim() == n {
            return IntLattice::full(n);
        }
        if v.dim() == 0 {
            return IntLattice::zero(n);
        }
        // Integer vectors orthogonal to the complement.
        let complement: Vec<Vec<BigInt>> = nullspace(v.basis().to_vec(), n)
            .into_iter()
            .map(|w| clear_denominators(&w))
            .collect();
        let transposed: Vec<Vec<BigInt>> = (0..n)
            .map(|i| complement.iter().map(|w| w[i].clone()).collect())
            .collect();
        let kernel = integer_left_kernel(transposed, complement.len());
        IntLattice::generated_by(n, kernel).expect("kernel vectors have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    fn pivot(row: &[BigInt]) -> usize {
        row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero")
    }

    /// The canonical representative of the coset `v + L`: every pivot
    /// coordinate is brought into `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot(row);
            let q = out[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (o, x) in out.iter_mut().zip(row) {
                    *o -= &q * x;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.n && self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn intersect(&self, other: &IntLattice) -> Result<IntLattice> {
        Error::dims(self.n, other.n)?;
        if self.rank() == 0 || other.rank() == 0 {
            return Ok(IntLattice::zero(self.n));
        }
        let stacked: Vec<Vec<BigInt>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let r1 = self.rank();
        let kernel = integer_left_kernel(stacked, self.n);
        let gens = kernel
            .iter()
            .map(|x| {
                let mut v = vec![BigInt::zero(); self.n];
                for (c, row) in x[..r1].iter().zip(&self.basis) {
                    for (o, e) in v.iter_mut().zip(row) {
                        *o += c * e;
                    }
                }
                v
            })
            .collect();
        IntLattice::generated_by(self.n, gens)
    }
}

pub fn lattice_intersect(l1: &IntLattice, l2: &IntLattice) -> Result<IntLattice> {
    l1.intersect(l2)
}

/// Smallest positive integer multiple of a rational vector.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
