//! Group algebras over Q and the monomial valuation of a preorder.
//!
//! For a bi-invariant preorder `<=` on `G`, the valuation sends a non-zero
//! `P = sum a_g x^g` to the class of a `<=`-minimal exponent of its support
//! in `G / G_<=`, and sends `0` to infinity. Values are stored as canonical
//! coset representatives, so equal values are structurally equal.
//!
//! Multiplicativity holds for every preorder implemented here. The leading
//! form of `P` is `x^g A` with `A` in `Q[G_<=]`, and the leading form of a
//! product is the product of leading forms, which is non-zero because each
//! residue group here is torsion-free and bi-orderable (a subgroup of `Z^n`,
//! or a subgroup of the Heisenberg group), so `Q[G_<=]` has no zero
//! divisors.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::{is_standard, FilteredGroup, GroupElement, Preorder, Tier};
use crate::scalar::Rational;

/// A finitely supported `sum a_g x^g` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    group: FilteredGroup,
    terms: BTreeMap<GroupElement, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(group: FilteredGroup) -> Self {
        GroupAlgebraElement { group, terms: BTreeMap::new() }
    }

    pub fn monomial(group: FilteredGroup, g: GroupElement, coeff: Rational) -> Result<Self> {
        Self::from_terms(group, [(g, coeff)])
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms(group: FilteredGroup, terms: impl IntoIterator<Item = (GroupElement, Rational)>) -> Result<Self> {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            group.check(&g)?;
            out.add_term(g, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, g: GroupElement, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn group(&self) -> FilteredGroup {
        self.group
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement { group: self.group, terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Convolution `x^g x^h = x^{gh}`; the order of the factors matters on
    /// non-abelian groups.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = Self::zero(self.group);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(self.group.mul(g, h)?, a * b);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{c}*x^{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn ga_add(p: &GroupAlgebraElement, q: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    p.add(q)
}

pub fn ga_mul(p: &GroupAlgebraElement, q: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    p.mul(q)
}

/// An element of `G / G_<=` or infinity. Finite values hold the canonical
/// representative of their coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Infinity,
    Finite(GroupElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinity => write!(f, "infinity"),
            Value::Finite(g) => write!(f, "{g}"),
        }
    }
}

fn check_shared(p: &Preorder, poly: &GroupAlgebraElement) -> Result<()> {
    if p.group() != poly.group() {
        return Err(Error::GroupMismatch(format!("preorder on {} but element of Q[{}]", p.group(), poly.group())));
    }
    Ok(())
}

fn minimal_exponent<'a>(p: &Preorder, poly: &'a GroupAlgebraElement) -> Result<Option<&'a GroupElement>> {
    let mut best: Option<&GroupElement> = None;
    for g in poly.support() {
        best = match best {
            Some(b) if p.cmp(b, g)? != Ordering::Greater => Some(b),
            _ => Some(g),
        };
    }
    Ok(best)
}

pub fn valuate(p: &Preorder, poly: &GroupAlgebraElement) -> Result<Value> {
    check_shared(p, poly)?;
    match minimal_exponent(p, poly)? {
        None => Ok(Value::Infinity),
        Some(g) => Ok(Value::Finite(p.residue_rep(g)?)),
    }
}

/// Orders values through the preorder; infinity is above everything.
pub fn compare_values(p: &Preorder, x: &Value, y: &Value) -> Result<Ordering> {
    Ok(match (x, y) {
        (Value::Infinity, Value::Infinity) => Ordering::Equal,
        (Value::Infinity, _) => Ordering::Greater,
        (_, Value::Infinity) => Ordering::Less,
        (Value::Finite(g), Value::Finite(h)) => p.cmp(g, h)?,
    })
}

/// The group operation on values.
pub fn value_mul(p: &Preorder, x: &Value, y: &Value) -> Result<Value> {
    Ok(match (x, y) {
        (Value::Finite(g), Value::Finite(h)) => Value::Finite(p.residue_rep(&p.group().mul(g, h)?)?),
        _ => Value::Infinity,
    })
}

/// The terms of `P` whose exponents are equivalent to a minimal one.
pub fn leading_form(p: &Preorder, poly: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    check_shared(p, poly)?;
    let min = minimal_exponent(p, poly)?.ok_or(Error::ZeroElement)?;
    let mut terms = Vec::new();
    for (g, c) in poly.terms() {
        if p.cmp(min, g)? == Ordering::Equal {
            terms.push((g.clone(), c.clone()));
        }
    }
    GroupAlgebraElement::from_terms(poly.group(), terms)
}

/// `nu(P) >= 1`.
pub fn in_ring(p: &Preorder, poly: &GroupAlgebraElement) -> Result<bool> {
    match valuate(p, poly)? {
        Value::Infinity => Ok(true),
        Value::Finite(g) => Ok(p.sign_of(&g)?.is_ge()),
    }
}

/// `nu(P) > 1`.
pub fn in_max_ideal(p: &Preorder, poly: &GroupAlgebraElement) -> Result<bool> {
    match valuate(p, poly)? {
        Value::Infinity => Ok(true),
        Value::Finite(g) => Ok(p.sign_of(&g)?.is_gt()),
    }
}

/// Which branch of [`standard_shift`] applies, by the value `g0` of `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftCase {
    /// `g0` in `G_0 \ G_1` with `g0 <= h0^-1`; shift by `g0^-1 h0`.
    Conjugation,
    /// `g0` in `G_0 \ G_1` with `h0^-1 < g0 < 1`; shift by `h0`.
    Strip,
    /// `g0 >= 1`; shift by `h0`.
    NonNegative,
    /// `g0 < 1` deeper in the lower central series; shift by `h0`.
    HigherTier,
}

/// Standardness sampling budget used by [`standard_shift`] for preorders
/// whose standardness is not decided exactly.
pub const SHIFT_STANDARD_SAMPLES: usize = 2000;

/// Returns `s` with `x^s P` in the maximal ideal of the valuation ring,
/// together with the branch taken.
pub fn classify_shift(p: &Preorder, h0: &GroupElement, poly: &GroupAlgebraElement) -> Result<(GroupElement, ShiftCase)> {
    check_shared(p, poly)?;
    let group = p.group();
    group.check(h0)?;
    if !p.is_bi_invariant() {
        return Err(Error::Precondition("preorder is not bi-invariant".into()));
    }
    if !is_standard(p, SHIFT_STANDARD_SAMPLES, 0).is_verified() {
        return Err(Error::Precondition("preorder is not standard".into()));
    }
    if group.tier(h0)? != Tier::Finite(0) {
        return Err(Error::Precondition(format!("h0 = {h0} is not in G_0 \\ G_1")));
    }
    if !p.sign_of(h0)?.is_gt() {
        return Err(Error::Precondition(format!("h0 = {h0} is not positive")));
    }
    let Value::Finite(g0) = valuate(p, poly)? else {
        return Err(Error::ZeroElement);
    };
    let h0_inv = group.inv(h0)?;
    let tier = group.tier(&g0)?;
    let sign = p.sign_of(&g0)?;
    if tier == Tier::Finite(0) && p.cmp(&g0, &h0_inv)?.is_le() {
        let shift = group.mul(&group.inv(&g0)?, h0)?;
        return Ok((shift, ShiftCase::Conjugation));
    }
    let case = if sign.is_ge() {
        ShiftCase::NonNegative
    } else if tier == Tier::Finite(0) {
        ShiftCase::Strip
    } else {
        ShiftCase::HigherTier
    };
    Ok((h0.clone(), case))
}

pub fn standard_shift(p: &Preorder, h0: &GroupElement, poly: &GroupAlgebraElement) -> Result<GroupElement> {
    classify_shift(p, h0, poly).map(|(s, _)| s)
}
