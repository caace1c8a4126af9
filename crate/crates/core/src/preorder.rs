//! Bi-invariant preorders on Q^n and Z^n given by weight matrices.
//!
//! A preorder is represented by a sequence of weight vectors `w_1, ..., w_s`
//! with entries in Q(sqrt D); `u <= v` holds when the sequence of dot products
//! `(u.w_1, ..., u.w_s)` is lexicographically at most `(v.w_1, ..., v.w_s)`.
//!
//! Every such matrix is reduced to a [`CanonicalForm`]: a strictly decreasing
//! chain of rational kernels together with one normalized functional per
//! level. Two matrices induce the same preorder exactly when their canonical
//! forms coincide: functionals on the same rational subspace induce the same
//! sign pattern on rational points only when they are positively
//! proportional, and the normalization picks one representative per ray.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, rational_kernel, IntLattice, RatSubspace};
use crate::scalar::{dot_rational, QuadExt, QuadField, Rational};

/// One step of the kernel chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    pub kernel_before: RatSubspace,
    /// Coordinates with respect to the RREF basis of `kernel_before`; the
    /// first nonzero entry is `+1` or `-1`.
    pub functional: Vec<QuadExt>,
}

impl Level {
    /// The functional as an ambient weight vector, zero off the pivot columns
    /// of `kernel_before`.
    pub fn ambient_row(&self) -> Vec<QuadExt> {
        self.kernel_before.lift(&self.functional)
    }

    fn sign_at(&self, d: &[Rational]) -> Ordering {
        let coords = self.kernel_before.coordinates(d);
        dot_rational(&coords, &self.functional).signum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub levels: Vec<Level>,
    pub kernel_after: RatSubspace,
}

impl CanonicalForm {
    pub fn rank(&self) -> usize {
        self.levels.len()
    }

    pub fn degree(&self) -> usize {
        self.kernel_after.dim()
    }

    /// Truncation to the first `k` levels.
    pub fn prefix(&self, k: usize) -> CanonicalForm {
        let kernel_after = match self.levels.get(k) {
            Some(level) => level.kernel_before.clone(),
            None => self.kernel_after.clone(),
        };
        CanonicalForm { n: self.n, levels: self.levels[..k].to_vec(), kernel_after }
    }

    pub fn is_prefix_of(&self, other: &CanonicalForm) -> bool {
        self.n == other.n
            && self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a == b)
    }

    pub fn common_prefix_len(&self, other: &CanonicalForm) -> usize {
        self.levels.iter().zip(&other.levels).take_while(|(a, b)| a == b).count()
    }

    /// Stable 64-bit FNV-1a hash of the textual form, rendered as hex.
    pub fn fingerprint(&self) -> String {
        let mut text = format!("n={};", self.n);
        for level in &self.levels {
            for x in &level.functional {
                text.push_str(&format!("{}:{}:{},", x.a(), x.b(), x.field().d()));
            }
            text.push('|');
            for row in level.kernel_before.basis() {
                for x in row {
                    text.push_str(&format!("{x},"));
                }
                text.push(';');
            }
            text.push('#');
        }
        let mut h: u64 = 0xcbf29ce484222325;
        for byte in text.bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

/// Reduces a weight matrix to its canonical form.
pub fn canonicalize(n: usize, rows: &[Vec<QuadExt>]) -> Result<CanonicalForm> {
    let mut kernel = RatSubspace::full(n);
    let mut levels = Vec::new();
    for row in rows {
        Error::dims(n, row.len())?;
        if kernel.dim() == 0 {
            continue;
        }
        let coords = kernel.restrict(row);
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            continue;
        };
        let scale = lead.abs();
        let functional: Vec<QuadExt> =
            coords.iter().map(|c| c.checked_div(&scale).expect("nonzero scale")).collect();
        let next = rational_kernel(std::slice::from_ref(row), &kernel)?;
        levels.push(Level { kernel_before: kernel, functional });
        kernel = next;
    }
    Ok(CanonicalForm { n, levels, kernel_after: kernel })
}

/// `u <= v` iff `(u.w_1, ..., u.w_s) <=_lex (v.w_1, ..., v.w_s)`.
#[derive(Clone, Debug)]
pub struct MatrixPreorder {
    n: usize,
    rows: Vec<Vec<QuadExt>>,
    canonical: CanonicalForm,
    residue: OnceLock<IntLattice>,
}

impl PartialEq for MatrixPreorder {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for MatrixPreorder {}

impl MatrixPreorder {
    pub fn new(n: usize, rows: Vec<Vec<QuadExt>>) -> Result<Self> {
        let canonical = canonicalize(n, &rows)?;
        Ok(MatrixPreorder { n, rows, canonical, residue: OnceLock::new() })
    }

    /// Convenience constructor for integer weight rows.
    pub fn from_int_rows(n: usize, rows: &[&[i64]]) -> Result<Self> {
        let f = QuadField::default();
        Self::new(n, rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect())
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("empty matrix")
    }

    pub fn from_canonical(canonical: CanonicalForm) -> Self {
        let rows = canonical.levels.iter().map(Level::ambient_row).collect();
        MatrixPreorder { n: canonical.n, rows, canonical, residue: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<QuadExt>] {
        &self.rows
    }

    pub fn canonical(&self) -> &CanonicalForm {
        &self.canonical
    }

    /// Canonical weight rows, one per level.
    pub fn canonical_rows(&self) -> Vec<Vec<QuadExt>> {
        self.canonical.levels.iter().map(Level::ambient_row).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical.levels.is_empty()
    }

    /// Compares `u` and `v` through the original weight rows.
    pub fn cmp(&self, u: &[Rational], v: &[Rational]) -> Result<Ordering> {
        Error::dims(self.n, u.len())?;
        Error::dims(self.n, v.len())?;
        let d: Vec<Rational> = v.iter().zip(u).map(|(x, y)| x - y).collect();
        for row in &self.rows {
            match dot_rational(&d, row).signum() {
                Ordering::Equal => continue,
                s => return Ok(s.reverse()),
            }
        }
        Ok(Ordering::Equal)
    }

    /// Compares `u` and `v` through the canonical levels.
    pub fn cmp_canonical(&self, u: &[Rational], v: &[Rational]) -> Result<Ordering> {
        Error::dims(self.n, u.len())?;
        Error::dims(self.n, v.len())?;
        let d: Vec<Rational> = v.iter().zip(u).map(|(x, y)| x - y).collect();
        for level in &self.canonical.levels {
            match level.sign_at(&d) {
                Ordering::Equal => continue,
                s => return Ok(s.reverse()),
            }
        }
        Ok(Ordering::Equal)
    }

    /// Position of `u` relative to the origin: `Greater` when `u` is positive.
    pub fn sign_of(&self, u: &[Rational]) -> Result<Ordering> {
        let zero = vec![Rational::zero(); self.n];
        self.cmp(&zero, u).map(Ordering::reverse)
    }

    pub fn cmp_int(&self, u: &[BigInt], v: &[BigInt]) -> Result<Ordering> {
        self.cmp(&to_rational(u), &to_rational(v))
    }

    pub fn sign_of_int(&self, u: &[BigInt]) -> Result<Ordering> {
        self.sign_of(&to_rational(u))
    }

    pub fn equals(&self, other: &MatrixPreorder) -> bool {
        self.canonical == other.canonical
    }

    /// A rational vector on which the two preorders disagree about the sign,
    /// or `None` when they are equal.
    ///
    /// The search runs over integer combinations of the kernel basis at the
    /// first level where the canonical forms differ, in boxes of growing
    /// max-norm. When both preorders have a level there, only a strict sign
    /// flip (positive for one, negative for the other) is accepted; such
    /// vectors fill an open cone, so the search terminates.
    pub fn distinguishing_vector(&self, other: &MatrixPreorder) -> Option<Vec<Rational>> {
        if self.equals(other) || self.n != other.n {
            return None;
        }
        let k = self.canonical.common_prefix_len(&other.canonical);
        let kernel = match (self.canonical.levels.get(k), other.canonical.levels.get(k)) {
            (Some(l), _) | (None, Some(l)) => l.kernel_before.clone(),
            (None, None) => unreachable!("distinct forms differ at some level"),
        };
        let strict = self.canonical.levels.len() > k && other.canonical.levels.len() > k;
        let accept = |u: &[Rational]| {
            let s = self.sign_of(u).expect("dimension checked");
            let t = other.sign_of(u).expect("dimension checked");
            if strict {
                s != Ordering::Equal && t != Ordering::Equal && s != t
            } else {
                s != t
            }
        };
        let m = kernel.dim();
        for radius in 1.. {
            for coeffs in box_shell(m, radius) {
                let coeffs: Vec<Rational> = coeffs.into_iter().map(|c| Rational::from_integer(c.into())).collect();
                let u = kernel.combine(&coeffs);
                if accept(&u) {
                    return Some(u);
                }
            }
        }
        unreachable!()
    }

    /// `self` first, ties broken by `other`.
    pub fn compose(&self, other: &MatrixPreorder) -> Result<MatrixPreorder> {
        Error::dims(self.n, other.n)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        MatrixPreorder::new(self.n, rows)
    }

    pub fn rank(&self) -> usize {
        self.canonical.rank()
    }

    /// Dimension of the rational residue subspace.
    pub fn degree(&self) -> usize {
        self.canonical.degree()
    }

    /// `fine` refines `self`.
    pub fn refined_by(&self, fine: &MatrixPreorder) -> bool {
        self.canonical.is_prefix_of(&fine.canonical)
    }

    pub fn meet(&self, other: &MatrixPreorder) -> Result<MatrixPreorder> {
        Error::dims(self.n, other.n)?;
        let k = self.canonical.common_prefix_len(&other.canonical);
        Ok(MatrixPreorder::from_canonical(self.canonical.prefix(k)))
    }

    /// All coarsenings, from the trivial preorder up to `self`.
    pub fn raf_minus(&self) -> Vec<MatrixPreorder> {
        (0..=self.rank()).map(|k| MatrixPreorder::from_canonical(self.canonical.prefix(k))).collect()
    }

    /// Rank-one factors whose composition is `self`; empty for the trivial
    /// preorder.
    pub fn decompose(&self) -> Vec<MatrixPreorder> {
        self.canonical
            .levels
            .iter()
            .map(|l| MatrixPreorder::new(self.n, vec![l.ambient_row()]).expect("ambient row has length n"))
            .collect()
    }

    /// `{u in Z^n | u ~ 0}` in Hermite normal form.
    pub fn residue_lattice(&self) -> &IntLattice {
        self.residue.get_or_init(|| IntLattice::saturation(&self.canonical.kernel_after))
    }

    /// `u <=' v` iff `A u <= A v`, for a unimodular integer matrix `A`.
    pub fn pullback(&self, a: &[Vec<BigInt>]) -> Result<MatrixPreorder> {
        check_unimodular(self.n, a)?;
        let rows = self
            .rows
            .iter()
            .map(|w| {
                (0..self.n)
                    .map(|j| {
                        let col: Vec<Rational> = a.iter().map(|r| Rational::from_integer(r[j].clone())).collect();
                        dot_rational(&col, w)
                    })
                    .collect()
            })
            .collect();
        MatrixPreorder::new(self.n, rows)
    }
}

pub fn refines(coarse: &MatrixPreorder, fine: &MatrixPreorder) -> bool {
    coarse.refined_by(fine)
}

fn check_unimodular(n: usize, a: &[Vec<BigInt>]) -> Result<()> {
    Error::dims(n, a.len())?;
    for row in a {
        Error::dims(n, row.len())?;
    }
    let m: Vec<Vec<Rational>> = a.iter().map(|r| to_rational(r)).collect();
    let det = determinant(m);
    if det.is_one() || (-det).is_one() {
        Ok(())
    } else {
        Err(Error::NotUnimodular)
    }
}

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Integer vectors of max-norm exactly `radius`, in a fixed order:
/// lexicographic with each coordinate running `0, 1, -1, 2, -2, ...`.
pub fn box_shell(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=radius).flat_map(|k| [k, -k]))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(dim);
    fn rec(dim: usize, radius: i64, values: &[i64], current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == dim {
            if current.iter().any(|x| x.abs() == radius) {
                out.push(current.clone());
            }
            return;
        }
        for &v in values {
            current.push(v);
            rec(dim, radius, values, current, out);
            current.pop();
        }
    }
    rec(dim, radius, &values, &mut current, &mut out);
    out
}
