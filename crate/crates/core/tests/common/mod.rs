//! Seeded generators shared by the integration tests and the acceptance
//! suite.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zrkit::groups::{FilteredGroup, GroupElement, HeisenbergElement, LayeredPreorder, LeftLex, Preorder};
use zrkit::preorder::MatrixPreorder;
use zrkit::scalar::{ratio, QuadExt, QuadField, Rational};
use zrkit::valuation::GroupAlgebraElement;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

/// Mostly small integers, sometimes with a `sqrt(2)` part.
pub fn entry(rng: &mut ChaCha8Rng, irrational: bool) -> QuadExt {
    let f = QuadField::default();
    let a = Rational::from_integer(rng.gen_range(-2..=2).into());
    if irrational && rng.gen_bool(0.3) {
        f.elem(a, small_rational(rng))
    } else {
        f.rational(a)
    }
}

pub fn matrix(rng: &mut ChaCha8Rng, n: usize, max_rows: usize, irrational: bool) -> MatrixPreorder {
    let k = rng.gen_range(0..=max_rows);
    let rows = (0..k).map(|_| (0..n).map(|_| entry(rng, irrational)).collect()).collect();
    MatrixPreorder::new(n, rows).unwrap()
}

/// A preorder with rational rows only, so the residue lattice is usually
/// non-trivial.
pub fn rational_matrix(rng: &mut ChaCha8Rng, n: usize, max_rows: usize) -> MatrixPreorder {
    matrix(rng, n, max_rows, false)
}

pub fn int_vector(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-r..=r))).collect()
}

pub fn rational_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// A product of random elementary integer matrices and a permutation.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    a.shuffle(rng);
    if n < 2 {
        if rng.gen_bool(0.5) {
            a[0][0] = -a[0][0].clone();
        }
        return a;
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k = BigInt::from(rng.gen_range(-2..=2));
        let add: Vec<BigInt> = a[j].iter().map(|x| x * &k).collect();
        for (x, y) in a[i].iter_mut().zip(add) {
            *x += y;
        }
    }
    a
}

pub fn heis(rng: &mut ChaCha8Rng, r: i64) -> HeisenbergElement {
    HeisenbergElement::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// An order on `Z^2` (degree zero): two independent rational rows, or one
/// row with an irrational slope.
pub fn z2_order(rng: &mut ChaCha8Rng) -> MatrixPreorder {
    let f = QuadField::default();
    loop {
        let p = if rng.gen_bool(0.3) {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            let row = vec![f.int(s * rng.gen_range(1..=2)), f.elem(small_rational(rng), ratio(s * rng.gen_range(1..=3), 1))];
            MatrixPreorder::new(2, vec![row]).unwrap()
        } else {
            rational_matrix(rng, 2, 3)
        };
        if p.degree() == 0 {
            return p;
        }
    }
}

/// A bi-invariant (hence standard) layered preorder.
pub fn standard_layered(rng: &mut ChaCha8Rng) -> LayeredPreorder {
    match rng.gen_range(0..5) {
        0 => LayeredPreorder::Trivial,
        1 | 2 => LayeredPreorder::pullback_ab(matrix(rng, 2, 2, true)).unwrap(),
        _ => {
            let tier1 = MatrixPreorder::from_int_rows(1, &[&[if rng.gen_bool(0.5) { 1 } else { -1 }]]).unwrap();
            let tier1 = if rng.gen_bool(0.15) { MatrixPreorder::trivial(1) } else { tier1 };
            LayeredPreorder::composite(z2_order(rng), tier1).unwrap()
        }
    }
}

/// A left-invariant, non-standard preorder.
pub fn left_lex(rng: &mut ChaCha8Rng) -> LayeredPreorder {
    let f = QuadField::default();
    let mut sign = || if rng.gen_bool(0.5) { 1 } else { -1 };
    let (a, c, b) = (sign(), sign(), sign());
    let lambda = if rng.gen_bool(0.5) {
        f.rational(ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4)))
    } else {
        f.elem(ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4)), ratio(rng.gen_range(-2..=2), rng.gen_range(1..=3)))
    };
    LayeredPreorder::LeftLex(LeftLex::new(a, c, lambda, b).unwrap())
}

pub fn element(rng: &mut ChaCha8Rng, group: FilteredGroup, r: i64) -> GroupElement {
    match group {
        FilteredGroup::Zn(n) => GroupElement::Zn(int_vector(rng, n, r)),
        FilteredGroup::Heisenberg => GroupElement::Heisenberg(heis(rng, r)),
    }
}

/// A random non-zero group-algebra element with up to `terms` terms.
pub fn poly(rng: &mut ChaCha8Rng, group: FilteredGroup, terms: usize, r: i64) -> GroupAlgebraElement {
    loop {
        let k = rng.gen_range(1..=terms);
        let ts: Vec<_> = (0..k)
            .map(|_| {
                let mut c = small_rational(rng);
                if c.is_zero() {
                    c = Rational::one();
                }
                (element(rng, group, r), c)
            })
            .collect();
        let p = GroupAlgebraElement::from_terms(group, ts).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random element strictly above the identity, if one turns up.
pub fn positive(rng: &mut ChaCha8Rng, p: &Preorder, r: i64) -> Option<GroupElement> {
    let group = p.group();
    for _ in 0..64 {
        let g = element(rng, group, r);
        match p.sign_of(&g).unwrap() {
            std::cmp::Ordering::Greater => return Some(g),
            std::cmp::Ordering::Less => return Some(group.inv(&g).unwrap()),
            std::cmp::Ordering::Equal => {}
        }
    }
    None
}

pub fn quad(a: i64, b: i64) -> QuadExt {
    QuadField::default().elem(ratio(a, 1), ratio(b, 1))
}

pub fn rows(n: usize, rows: Vec<Vec<QuadExt>>) -> MatrixPreorder {
    MatrixPreorder::new(n, rows).unwrap()
}
