//! The integral Heisenberg group, Z^n, and preorders on them.
//!
//! The Heisenberg group is realized as triples `(a, b, c)` with
//! `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')`, i.e. upper unitriangular
//! integer matrices. Its lower central series is `G_0 = G`,
//! `G_1 = [G,G] = {(0,0,c)}` (the center), `G_2 = {1}`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::preorder::{box_shell, MatrixPreorder};
use crate::scalar::{QuadExt, QuadField, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisenbergElement {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl HeisenbergElement {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        HeisenbergElement { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn identity() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Image in the abelianization `Z^2`.
    pub fn abelianization(&self) -> [BigInt; 2] {
        [self.a.clone(), self.b.clone()]
    }

    pub fn is_central(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

pub fn h_mul(g: &HeisenbergElement, h: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement { a: &g.a + &h.a, b: &g.b + &h.b, c: &g.c + &h.c + &g.a * &h.b }
}

pub fn h_inv(g: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement { a: -&g.a, b: -&g.b, c: &g.a * &g.b - &g.c }
}

pub fn h_tier(g: &HeisenbergElement) -> Tier {
    if !g.is_central() {
        Tier::Finite(0)
    } else if !g.c.is_zero() {
        Tier::Finite(1)
    } else {
        Tier::Infinite
    }
}

/// Largest `k` with `g` in `G_k`; the identity lies in every term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FilteredGroup {
    Zn(usize),
    Heisenberg,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Zn(Vec<BigInt>),
    Heisenberg(HeisenbergElement),
}

impl GroupElement {
    pub fn zn(v: &[i64]) -> Self {
        GroupElement::Zn(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn heis(a: i64, b: i64, c: i64) -> Self {
        GroupElement::Heisenberg(HeisenbergElement::new(a, b, c))
    }

    pub fn group(&self) -> FilteredGroup {
        match self {
            GroupElement::Zn(v) => FilteredGroup::Zn(v.len()),
            GroupElement::Heisenberg(_) => FilteredGroup::Heisenberg,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Zn(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
            GroupElement::Heisenberg(h) => write!(f, "{h}"),
        }
    }
}

impl FilteredGroup {
    pub fn identity(&self) -> GroupElement {
        match self {
            FilteredGroup::Zn(n) => GroupElement::Zn(vec![BigInt::zero(); *n]),
            FilteredGroup::Heisenberg => GroupElement::Heisenberg(HeisenbergElement::identity()),
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        match (self, g) {
            (FilteredGroup::Zn(n), GroupElement::Zn(v)) => Error::dims(*n, v.len()),
            (FilteredGroup::Heisenberg, GroupElement::Heisenberg(_)) => Ok(()),
            _ => Err(Error::GroupMismatch(format!("{g} is not an element of {self}"))),
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (g, h) {
            (GroupElement::Zn(u), GroupElement::Zn(v)) => GroupElement::Zn(u.iter().zip(v).map(|(x, y)| x + y).collect()),
            (GroupElement::Heisenberg(x), GroupElement::Heisenberg(y)) => GroupElement::Heisenberg(h_mul(x, y)),
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(match g {
            GroupElement::Zn(u) => GroupElement::Zn(u.iter().map(|x| -x).collect()),
            GroupElement::Heisenberg(x) => GroupElement::Heisenberg(h_inv(x)),
        })
    }

    pub fn tier(&self, g: &GroupElement) -> Result<Tier> {
        self.check(g)?;
        Ok(match g {
            GroupElement::Zn(u) if u.iter().all(Zero::is_zero) => Tier::Infinite,
            GroupElement::Zn(_) => Tier::Finite(0),
            GroupElement::Heisenberg(x) => h_tier(x),
        })
    }

    /// Ranks of the free abelian quotients `G_k / G_{k+1}`.
    pub fn tier_dimensions(&self) -> Vec<usize> {
        match self {
            FilteredGroup::Zn(n) => vec![*n],
            FilteredGroup::Heisenberg => vec![2, 1],
        }
    }
}

impl fmt::Display for FilteredGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilteredGroup::Zn(n) => write!(f, "Z^{n}"),
            FilteredGroup::Heisenberg => write!(f, "Heisenberg"),
        }
    }
}

/// Left-invariant (not right-invariant) total orders on the Heisenberg
/// group: `g > 1` when the key
/// `(a_sign * a, c_sign * (c + lambda * b), b_sign * b)` is lexicographically
/// positive.
///
/// Positivity is closed under multiplication because the cross term `a b'`
/// vanishes whenever the first key entries of both factors vanish. Every
/// member is non-standard: shifting `c` by a central element flips the
/// middle entry of `(0, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftLex {
    pub a_sign: i8,
    pub c_sign: i8,
    pub lambda: QuadExt,
    pub b_sign: i8,
}

impl LeftLex {
    /// The test double: lexicographic on `(a, c, b)`.
    pub fn test_double() -> Self {
        LeftLex { a_sign: 1, c_sign: 1, lambda: QuadField::default().zero(), b_sign: 1 }
    }

    pub fn new(a_sign: i8, c_sign: i8, lambda: QuadExt, b_sign: i8) -> Result<Self> {
        for s in [a_sign, c_sign, b_sign] {
            if s != 1 && s != -1 {
                return Err(Error::parse(format!("sign must be +1 or -1, got {s}")));
            }
        }
        // With irrational lambda, c + lambda * b vanishes only at b = c = 0,
        // so the last key entry never decides and its sign is normalized.
        let b_sign = if lambda.is_rational() { b_sign } else { 1 };
        Ok(LeftLex { a_sign, c_sign, lambda, b_sign })
    }

    fn positivity(&self, g: &HeisenbergElement) -> Ordering {
        let f = self.lambda.field();
        let first = &g.a * BigInt::from(self.a_sign);
        if !first.is_zero() {
            return first.cmp(&BigInt::zero());
        }
        let c = Rational::from_integer(g.c.clone());
        let b = Rational::from_integer(g.b.clone());
        let middle = &f.rational(c) + &self.lambda.scale(&b);
        let middle = middle.signum();
        let middle = if self.c_sign < 0 { middle.reverse() } else { middle };
        if middle != Ordering::Equal {
            return middle;
        }
        (&g.b * BigInt::from(self.b_sign)).cmp(&BigInt::zero())
    }
}

/// Preorders on the Heisenberg group.
///
/// `PullbackAb` compares only the abelianization image `(a, b)`.
/// `Composite` compares `(a, b)` by an order (`tier0` has degree zero) and
/// breaks ties, which happen only inside the center, by `tier1` on `c`.
/// Both are bi-invariant because conjugation fixes the abelianization and the
/// center pointwise. `LeftLex` is left-invariant only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayeredPreorder {
    Trivial,
    PullbackAb(MatrixPreorder),
    Composite { tier0: MatrixPreorder, tier1: MatrixPreorder },
    LeftLex(LeftLex),
}

impl LayeredPreorder {
    pub fn test_double_lex() -> Self {
        LayeredPreorder::LeftLex(LeftLex::test_double())
    }

    /// Normalizing constructor for pullbacks from the abelianization.
    pub fn pullback_ab(tier0: MatrixPreorder) -> Result<Self> {
        Error::dims(2, tier0.dim())?;
        Ok(if tier0.is_trivial() { LayeredPreorder::Trivial } else { LayeredPreorder::PullbackAb(tier0) })
    }

    /// Normalizing constructor for two-tier preorders. Requires `tier0` of
    /// degree zero on `Z^2` and `tier1` on `Z^1`.
    pub fn composite(tier0: MatrixPreorder, tier1: MatrixPreorder) -> Result<Self> {
        Error::dims(2, tier0.dim())?;
        Error::dims(1, tier1.dim())?;
        if tier0.degree() != 0 {
            return Err(Error::Precondition(
                "the abelianization preorder of a composite must have degree 0".into(),
            ));
        }
        Ok(if tier1.is_trivial() {
            LayeredPreorder::PullbackAb(tier0)
        } else {
            LayeredPreorder::Composite { tier0, tier1 }
        })
    }

    pub fn is_bi_invariant(&self) -> bool {
        !matches!(self, LayeredPreorder::LeftLex(_))
    }

    /// Position of `g` relative to the identity.
    pub fn sign_of(&self, g: &HeisenbergElement) -> Ordering {
        match self {
            LayeredPreorder::Trivial => Ordering::Equal,
            LayeredPreorder::PullbackAb(r) => r.sign_of_int(&g.abelianization()).expect("rank 2"),
            LayeredPreorder::Composite { tier0, tier1 } => {
                if g.is_central() {
                    tier1.sign_of_int(std::slice::from_ref(&g.c)).expect("rank 1")
                } else {
                    tier0.sign_of_int(&g.abelianization()).expect("rank 2")
                }
            }
            LayeredPreorder::LeftLex(k) => k.positivity(g),
        }
    }

    /// Compares `g` and `h` through `g^-1 h`.
    pub fn cmp(&self, g: &HeisenbergElement, h: &HeisenbergElement) -> Ordering {
        self.sign_of(&h_mul(&h_inv(g), h)).reverse()
    }

    /// The preorder used on the center when the abelianization ties.
    fn center_part(&self) -> MatrixPreorder {
        match self {
            LayeredPreorder::Composite { tier1, .. } => tier1.clone(),
            _ => MatrixPreorder::trivial(1),
        }
    }

    /// `self` first, ties broken by `other`.
    pub fn compose(&self, other: &LayeredPreorder) -> Result<LayeredPreorder> {
        if !self.is_bi_invariant() || !other.is_bi_invariant() {
            return Err(Error::NotBiInvariant);
        }
        match (self, other) {
            (LayeredPreorder::Trivial, x) => Ok(x.clone()),
            (x, LayeredPreorder::Trivial) => Ok(x.clone()),
            (LayeredPreorder::PullbackAb(r1), LayeredPreorder::PullbackAb(r2)) => {
                LayeredPreorder::pullback_ab(r1.compose(r2)?)
            }
            (LayeredPreorder::PullbackAb(r1), LayeredPreorder::Composite { tier0, tier1 }) => {
                LayeredPreorder::composite(r1.compose(tier0)?, tier1.clone())
            }
            (LayeredPreorder::Composite { tier0, tier1 }, x) => {
                LayeredPreorder::composite(tier0.clone(), tier1.compose(&x.center_part())?)
            }
            (LayeredPreorder::LeftLex(_), _) | (_, LayeredPreorder::LeftLex(_)) => unreachable!(),
        }
    }

    /// Canonical representative of the coset `g G_<=` of the residue group.
    pub fn residue_rep(&self, g: &HeisenbergElement) -> HeisenbergElement {
        match self {
            LayeredPreorder::Trivial => HeisenbergElement::identity(),
            LayeredPreorder::PullbackAb(r) => {
                let ab = r.residue_lattice().reduce(&g.abelianization());
                HeisenbergElement { a: ab[0].clone(), b: ab[1].clone(), c: BigInt::zero() }
            }
            LayeredPreorder::Composite { .. } | LayeredPreorder::LeftLex(_) => g.clone(),
        }
    }

    /// An element on which the two preorders disagree about positivity.
    pub fn distinguishing_element(&self, other: &LayeredPreorder, bound: i64) -> Option<HeisenbergElement> {
        if self == other {
            return None;
        }
        let tier0 = |l: &LayeredPreorder| match l {
            LayeredPreorder::PullbackAb(r) | LayeredPreorder::Composite { tier0: r, .. } => Some(r.clone()),
            LayeredPreorder::Trivial => Some(MatrixPreorder::trivial(2)),
            LayeredPreorder::LeftLex(_) => None,
        };
        if let (Some(r1), Some(r2)) = (tier0(self), tier0(other)) {
            if let Some(u) = r1.distinguishing_vector(&r2) {
                let ab = crate::linalg::clear_denominators(&u);
                return Some(HeisenbergElement { a: ab[0].clone(), b: ab[1].clone(), c: BigInt::zero() });
            }
            let u = self.center_part().distinguishing_vector(&other.center_part())?;
            let c = crate::linalg::clear_denominators(&u);
            return Some(HeisenbergElement { a: BigInt::zero(), b: BigInt::zero(), c: c[0].clone() });
        }
        (1..=bound).flat_map(|r| box_shell(3, r)).find_map(|v| {
            let g = HeisenbergElement::new(v[0], v[1], v[2]);
            (self.sign_of(&g) != other.sign_of(&g)).then_some(g)
        })
    }
}

/// A preorder on one of the supported filtered groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preorder {
    Matrix(MatrixPreorder),
    Layered(LayeredPreorder),
}

impl From<MatrixPreorder> for Preorder {
    fn from(p: MatrixPreorder) -> Self {
        Preorder::Matrix(p)
    }
}

impl From<LayeredPreorder> for Preorder {
    fn from(p: LayeredPreorder) -> Self {
        Preorder::Layered(p)
    }
}

impl Preorder {
    pub fn group(&self) -> FilteredGroup {
        match self {
            Preorder::Matrix(p) => FilteredGroup::Zn(p.dim()),
            Preorder::Layered(_) => FilteredGroup::Heisenberg,
        }
    }

    pub fn is_bi_invariant(&self) -> bool {
        match self {
            Preorder::Matrix(_) => true,
            Preorder::Layered(l) => l.is_bi_invariant(),
        }
    }

    /// Position of `g` relative to the identity: `Greater` means `g > 1`.
    pub fn sign_of(&self, g: &GroupElement) -> Result<Ordering> {
        self.group().check(g)?;
        Ok(match (self, g) {
            (Preorder::Matrix(p), GroupElement::Zn(u)) => p.sign_of_int(u)?,
            (Preorder::Layered(l), GroupElement::Heisenberg(x)) => l.sign_of(x),
            _ => unreachable!(),
        })
    }

    pub fn cmp(&self, g: &GroupElement, h: &GroupElement) -> Result<Ordering> {
        let group = self.group();
        let d = group.mul(&group.inv(g)?, h)?;
        Ok(self.sign_of(&d)?.reverse())
    }

    pub fn compose(&self, other: &Preorder) -> Result<Preorder> {
        match (self, other) {
            (Preorder::Matrix(p), Preorder::Matrix(q)) => Ok(Preorder::Matrix(p.compose(q)?)),
            (Preorder::Layered(p), Preorder::Layered(q)) => Ok(Preorder::Layered(p.compose(q)?)),
            _ => Err(Error::GroupMismatch(format!("cannot compose preorders on {} and {}", self.group(), other.group()))),
        }
    }

    /// Canonical representative of the class of `g` modulo the residue group.
    pub fn residue_rep(&self, g: &GroupElement) -> Result<GroupElement> {
        self.group().check(g)?;
        Ok(match (self, g) {
            (Preorder::Matrix(p), GroupElement::Zn(u)) => GroupElement::Zn(p.residue_lattice().reduce(u)),
            (Preorder::Layered(l), GroupElement::Heisenberg(x)) => GroupElement::Heisenberg(l.residue_rep(x)),
            _ => unreachable!(),
        })
    }

    /// An element `g` with `sign_of(g)` different under the two preorders.
    pub fn distinguishing_element(&self, other: &Preorder) -> Result<Option<GroupElement>> {
        match (self, other) {
            (Preorder::Matrix(p), Preorder::Matrix(q)) => {
                Error::dims(p.dim(), q.dim())?;
                Ok(p.distinguishing_vector(q).map(|u| {
                    GroupElement::Zn(crate::linalg::clear_denominators(&u))
                }))
            }
            (Preorder::Layered(p), Preorder::Layered(q)) => {
                if p == q {
                    return Ok(None);
                }
                p.distinguishing_element(q, DISTINGUISH_BOUND)
                    .map(|g| Some(GroupElement::Heisenberg(g)))
                    .ok_or(Error::SearchExhausted(DISTINGUISH_BOUND as usize))
            }
            _ => Err(Error::GroupMismatch("preorders live on different groups".into())),
        }
    }

    pub fn equals(&self, other: &Preorder) -> bool {
        self == other
    }
}

const DISTINGUISH_BOUND: i64 = 16;

/// Outcome of a standardness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Standardness {
    Verified,
    /// `g` is positive in `G_k \ G_{k+1}`, `h` lies in `G_{k+1}`, and `gh` is
    /// not positive.
    Counterexample { g: GroupElement, h: GroupElement },
}

impl Standardness {
    pub fn is_verified(&self) -> bool {
        matches!(self, Standardness::Verified)
    }
}

/// Decides whether positivity of `g in G_k \ G_{k+1}` extends to `g G_{k+1}`.
///
/// Exact for preorders on `Z^n` (where `G_1` is trivial) and for the
/// bi-invariant layered family (cosets of the center share the
/// abelianization image, and a degree-zero `tier0` never ties off the
/// center). `LeftLex` preorders go through [`search_nonstandard`].
pub fn is_standard(p: &Preorder, samples: usize, seed: u64) -> Standardness {
    match p {
        Preorder::Matrix(_) => Standardness::Verified,
        Preorder::Layered(l) if l.is_bi_invariant() => Standardness::Verified,
        Preorder::Layered(l) => search_nonstandard(|g| l.sign_of(g), samples, seed),
    }
}

/// Black-box search for a violation of standardness on the Heisenberg group.
///
/// First scans small boxes deterministically (each coordinate running
/// `0, 1, -1, 2, -2, ...`), then draws `samples` seeded random pairs.
pub fn search_nonstandard(sign: impl Fn(&HeisenbergElement) -> Ordering, samples: usize, seed: u64) -> Standardness {
    let violation = |g: &HeisenbergElement, h: &HeisenbergElement| {
        sign(g) == Ordering::Greater && sign(&h_mul(g, h)) != Ordering::Greater
    };
    let found = |g: HeisenbergElement, h: HeisenbergElement| Standardness::Counterexample {
        g: GroupElement::Heisenberg(g),
        h: GroupElement::Heisenberg(h),
    };
    let central: Vec<i64> = std::iter::once(0).chain((1..=4 * SCAN_BOUND).flat_map(|k| [k, -k])).collect();
    for radius in 1..=SCAN_BOUND {
        for v in box_shell(3, radius) {
            let g = HeisenbergElement::new(v[0], v[1], v[2]);
            if g.is_central() || sign(&g) != Ordering::Greater {
                continue;
            }
            for &c in &central {
                let h = HeisenbergElement::new(0, 0, c);
                if violation(&g, &h) {
                    return found(g, h);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let g = HeisenbergElement::new(
            rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE),
            rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE),
            rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE),
        );
        let h = HeisenbergElement::new(0, 0, rng.gen_range(-4 * SAMPLE_RANGE..=4 * SAMPLE_RANGE));
        if !g.is_central() && violation(&g, &h) {
            return found(g, h);
        }
    }
    Standardness::Verified
}

const SCAN_BOUND: i64 = 4;
const SAMPLE_RANGE: i64 = 64;

/// The witness that `LeftLex` is not right-invariant: with `g = 1`,
/// `h = (0,1,0)`, `x = (1,0,0)` we have `g < h` but `gx > hx`.
pub fn right_invariance_witness() -> [HeisenbergElement; 3] {
    [HeisenbergElement::identity(), HeisenbergElement::new(0, 1, 0), HeisenbergElement::new(1, 0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(a: i64, b: i64, c: i64) -> HeisenbergElement {
        HeisenbergElement::new(a, b, c)
    }

    fn lex2() -> MatrixPreorder {
        MatrixPreorder::from_int_rows(2, &[&[1, 0], &[0, 1]]).unwrap()
    }

    fn center_plus() -> MatrixPreorder {
        MatrixPreorder::from_int_rows(1, &[&[1]]).unwrap()
    }

    /// Multiplication through 3x3 upper unitriangular integer matrices.
    fn matrix_mul(g: &HeisenbergElement, k: &HeisenbergElement) -> HeisenbergElement {
        let m = |x: &HeisenbergElement| {
            [[BigInt::from(1), x.a.clone(), x.c.clone()], [BigInt::from(0), BigInt::from(1), x.b.clone()], [BigInt::from(0), BigInt::from(0), BigInt::from(1)]]
        };
        let (p, q) = (m(g), m(k));
        let mut r: [[BigInt; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = (0..3).map(|t| &p[i][t] * &q[t][j]).sum();
            }
        }
        HeisenbergElement { a: r[0][1].clone(), b: r[1][2].clone(), c: r[0][2].clone() }
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(h_mul(&h(1, 0, 0), &h(0, 1, 0)), h(1, 1, 1));
        assert_eq!(h_mul(&h(0, 1, 0), &h(1, 0, 0)), h(1, 1, 0));
        assert_eq!(matrix_mul(&h(1, 0, 0), &h(0, 1, 0)), h(1, 1, 1));
        assert_eq!(matrix_mul(&h(0, 1, 0), &h(1, 0, 0)), h(1, 1, 0));
        for (x, y) in [(h(2, -3, 5), h(-1, 4, 7)), (h(0, 0, 3), h(5, 5, 5))] {
            assert_eq!(h_mul(&x, &y), matrix_mul(&x, &y));
        }
    }

    #[test]
    fn inverse_and_tier() {
        assert_eq!(h_inv(&h(1, 2, 3)), h(-1, -2, -1));
        assert!(h_mul(&h(1, 2, 3), &h(-1, -2, -1)).is_identity());
        assert_eq!(h_tier(&h(0, 0, 5)), Tier::Finite(1));
        assert_eq!(h_tier(&h(1, 0, 5)), Tier::Finite(0));
        assert_eq!(h_tier(&h(0, 0, 0)), Tier::Infinite);
    }

    #[test]
    fn layered_cmp_examples() {
        let trivial = LayeredPreorder::Trivial;
        assert_eq!(trivial.cmp(&h(1, 2, 3), &h(-4, 0, 9)), Ordering::Equal);

        let comp = LayeredPreorder::composite(lex2(), center_plus()).unwrap();
        assert_eq!(comp.cmp(&h(0, 1, 5), &h(0, 1, -2)), Ordering::Greater);

        let e1 = MatrixPreorder::from_int_rows(2, &[&[1, 0]]).unwrap();
        let pb = LayeredPreorder::pullback_ab(e1).unwrap();
        assert_eq!(pb.cmp(&h(0, 3, 9), &h(0, -5, -1)), Ordering::Equal);
    }

    #[test]
    fn layered_compose_examples() {
        let comp = LayeredPreorder::composite(lex2(), center_plus()).unwrap();
        assert_eq!(LayeredPreorder::Trivial.compose(&comp).unwrap(), comp);

        let e1 = MatrixPreorder::from_int_rows(2, &[&[1, 0]]).unwrap();
        let e2 = MatrixPreorder::from_int_rows(2, &[&[0, 1]]).unwrap();
        let composed = LayeredPreorder::PullbackAb(e1.clone()).compose(&LayeredPreorder::PullbackAb(e2)).unwrap();
        assert_eq!(composed, LayeredPreorder::PullbackAb(lex2()));

        let order = LayeredPreorder::PullbackAb(lex2());
        let center = LayeredPreorder::composite(lex2(), center_plus()).unwrap();
        assert_eq!(order.compose(&center).unwrap(), center);

        let err = LayeredPreorder::test_double_lex().compose(&LayeredPreorder::Trivial).unwrap_err();
        assert_eq!(err, Error::NotBiInvariant);
    }

    #[test]
    fn composite_requires_degree_zero() {
        let e1 = MatrixPreorder::from_int_rows(2, &[&[1, 0]]).unwrap();
        assert!(LayeredPreorder::composite(e1, center_plus()).is_err());
        let trivial_center = LayeredPreorder::composite(lex2(), MatrixPreorder::trivial(1)).unwrap();
        assert_eq!(trivial_center, LayeredPreorder::PullbackAb(lex2()));
    }

    #[test]
    fn standardness_examples() {
        let zn: Preorder = MatrixPreorder::from_int_rows(3, &[&[1, 1, 0]]).unwrap().into();
        assert!(is_standard(&zn, 100, 0).is_verified());
        let comp: Preorder = LayeredPreorder::composite(lex2(), center_plus()).unwrap().into();
        assert!(is_standard(&comp, 100, 0).is_verified());
        // The exact verdict agrees with the black-box search.
        if let Preorder::Layered(l) = &comp {
            assert!(search_nonstandard(|g| l.sign_of(g), 2000, 7).is_verified());
        }
        let double: Preorder = LayeredPreorder::test_double_lex().into();
        assert_eq!(
            is_standard(&double, 100, 0),
            Standardness::Counterexample { g: GroupElement::heis(0, 1, 0), h: GroupElement::heis(0, 0, -1) }
        );
    }

    #[test]
    fn test_double_is_left_but_not_right_invariant() {
        let l = LayeredPreorder::test_double_lex();
        let [g, k, x] = right_invariance_witness();
        assert_eq!(l.cmp(&g, &k), Ordering::Less);
        assert_eq!(l.cmp(&h_mul(&x, &g), &h_mul(&x, &k)), Ordering::Less);
        assert_eq!(l.cmp(&h_mul(&g, &x), &h_mul(&k, &x)), Ordering::Greater);
    }

    #[test]
    fn residue_representatives() {
        let e1 = MatrixPreorder::from_int_rows(2, &[&[1, 0]]).unwrap();
        let pb = LayeredPreorder::PullbackAb(e1);
        assert_eq!(pb.residue_rep(&h(3, 7, -2)), h(3, 0, 0));
        assert_eq!(LayeredPreorder::Trivial.residue_rep(&h(3, 7, -2)), h(0, 0, 0));
    }

    #[test]
    fn group_mismatch_is_reported() {
        let g = FilteredGroup::Zn(2);
        assert!(matches!(g.mul(&GroupElement::zn(&[1, 0]), &GroupElement::heis(0, 0, 1)), Err(Error::GroupMismatch(_))));
        assert!(matches!(g.check(&GroupElement::zn(&[1, 0, 0])), Err(Error::DimensionMismatch { .. })));
    }
}
