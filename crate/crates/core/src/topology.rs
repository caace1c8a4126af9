//! Basic open sets of the Zariski, Inverse and Patch topologies on spaces of
//! preorders, with constructive witnesses.
//!
//! `O(g)` is the set of preorders with `g >= 1`, `U(g)` those with `g > 1`.
//! The Zariski topology is generated by the `O(g)`, the Inverse topology by
//! the `U(g)`, and the Patch topology by both.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::groups::{is_standard, FilteredGroup, GroupElement, HeisenbergElement, LayeredPreorder, Preorder, Standardness};
use crate::preorder::{CanonicalForm, MatrixPreorder};
use crate::scalar::{QuadExt, QuadField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpenKind {
    /// `g >= 1`
    O,
    /// `g > 1`
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Zariski,
    Inverse,
    Patch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Condition {
    pub kind: OpenKind,
    pub g: GroupElement,
}

impl Condition {
    pub fn o(g: GroupElement) -> Self {
        Condition { kind: OpenKind::O, g }
    }

    pub fn u(g: GroupElement) -> Self {
        Condition { kind: OpenKind::U, g }
    }

    pub fn holds(&self, p: &Preorder) -> Result<bool> {
        let s = p.sign_of(&self.g)?;
        Ok(match self.kind {
            OpenKind::O => s.is_ge(),
            OpenKind::U => s.is_gt(),
        })
    }
}

/// A finite intersection of basic opens, tagged with the topology it is
/// open in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicOpen {
    topology: Topology,
    conditions: Vec<Condition>,
}

impl BasicOpen {
    pub fn new(topology: Topology, conditions: Vec<Condition>) -> Result<Self> {
        let allowed = |k: OpenKind| match topology {
            Topology::Zariski => k == OpenKind::O,
            Topology::Inverse => k == OpenKind::U,
            Topology::Patch => true,
        };
        if let Some(c) = conditions.iter().find(|c| !allowed(c.kind)) {
            return Err(Error::InvalidOpen(format!("{:?}({}) is not open in the {topology:?} topology", c.kind, c.g)));
        }
        if let Some(first) = conditions.first() {
            let group = first.g.group();
            for c in &conditions {
                group.check(&c.g)?;
            }
        }
        Ok(BasicOpen { topology, conditions })
    }

    pub fn o(g: GroupElement) -> Self {
        BasicOpen { topology: Topology::Zariski, conditions: vec![Condition::o(g)] }
    }

    pub fn u(g: GroupElement) -> Self {
        BasicOpen { topology: Topology::Inverse, conditions: vec![Condition::u(g)] }
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }
}

impl fmt::Display for BasicOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.conditions.iter().map(|c| format!("{:?}({})", c.kind, c.g)).collect();
        if parts.is_empty() {
            write!(f, "everything")
        } else {
            write!(f, "{}", parts.join(" ∩ "))
        }
    }
}

pub fn member(p: &Preorder, s: &BasicOpen) -> Result<bool> {
    for c in &s.conditions {
        if !c.holds(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basic open containing exactly one of two distinct preorders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub open: BasicOpen,
    /// `true` when the open contains the first argument of [`separate`].
    pub contains_first: bool,
}

/// Separates two distinct preorders by an open `U(u)`.
///
/// Built from the distinguishing element `u`: whichever preorder sees `u`
/// (or `u^-1`) strictly positive is contained, and the other is not. The
/// first argument is preferred when both choices work.
pub fn separate(p: &Preorder, q: &Preorder) -> Result<Separation> {
    let u = p.distinguishing_element(q)?.ok_or(Error::EqualPreorders)?;
    let group = p.group();
    let u_inv = group.inv(&u)?;
    let (sp, sq) = (p.sign_of(&u)?, q.sign_of(&u)?);
    let (g, contains_first) = if sp.is_gt() {
        (u, true)
    } else if sp.is_lt() {
        (u_inv, true)
    } else if sq.is_gt() {
        (u, false)
    } else {
        (u_inv, false)
    };
    Ok(Separation { open: BasicOpen::u(g), contains_first })
}

/// Open neighbourhoods of a non-standard preorder made of non-standard
/// preorders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonstandardWitness {
    pub g: GroupElement,
    pub h: GroupElement,
    /// `U(g) ∩ O((gh)^-1)`.
    pub patch_open: BasicOpen,
    /// `U(g) ∩ U((gh)^-1)` when `gh < 1`, else `U(g) ∩ U((gh^2)^-1)`.
    pub inverse_open: BasicOpen,
    /// Whether the `gh ~ 1` branch was taken.
    pub fallback: bool,
}

/// Any preorder with `g > 1` and `gh <= 1` for `g` in `G_k \ G_{k+1}` and
/// `h` in `G_{k+1}` is non-standard, so the open sets returned here consist
/// of non-standard preorders only.
pub fn nonstandard_witness(p: &Preorder, samples: usize, seed: u64) -> Result<NonstandardWitness> {
    let Standardness::Counterexample { g, h } = is_standard(p, samples, seed) else {
        return Err(Error::StandardPreorder);
    };
    let group = p.group();
    let gh = group.mul(&g, &h)?;
    let gh_inv = group.inv(&gh)?;
    let patch_open = BasicOpen::new(Topology::Patch, vec![Condition::u(g.clone()), Condition::o(gh_inv.clone())])?;
    let fallback = !p.sign_of(&gh)?.is_lt();
    let second = if fallback {
        let ghh = group.mul(&gh, &h)?;
        group.inv(&ghh)?
    } else {
        gh_inv
    };
    let inverse_open = BasicOpen::new(Topology::Inverse, vec![Condition::u(g.clone()), Condition::u(second)])?;
    Ok(NonstandardWitness { g, h, patch_open, inverse_open, fallback })
}

/// Result of [`cantor_witnesses`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CantorOutcome {
    Witnesses {
        orders: Vec<Preorder>,
        /// `(i, j, u)`: `u` has different signs under orders `i` and `j`.
        certificates: Vec<(usize, usize, GroupElement)>,
    },
    Infeasible,
}

/// Default bound on the L1 norm of candidate weight directions.
pub const DEFAULT_DIRECTION_BOUND: i64 = 24;

/// Produces `m` pairwise distinct standard orders lying in every constraint
/// set, or reports that none was found.
///
/// On `Z^n` a weight `w` is sought with `w.g > 0` for every non-zero
/// constrained `g` (a `U(0)` constraint is unsatisfiable). Further witnesses
/// are `N w + d` for growing `N`, with `d` a coordinate vector not parallel
/// to `w`; each direction is completed to a full-rank order by appending the
/// standard basis. On the Heisenberg group, constraints with non-central `g`
/// act on the abelianization weights and central ones fix the sign on the
/// center; the witnesses are two-tier orders.
pub fn cantor_witnesses(group: FilteredGroup, constraints: &[Condition], m: usize, bound: i64) -> Result<CantorOutcome> {
    if m == 0 {
        return Err(Error::Precondition("at least one witness must be requested".into()));
    }
    for c in constraints {
        group.check(&c.g)?;
    }
    let (orders, directions) = match group {
        FilteredGroup::Zn(n) if n < 2 => {
            return Err(Error::Precondition("Z^n witnesses need n >= 2".into()));
        }
        FilteredGroup::Zn(n) => {
            let mut targets = Vec::new();
            for c in constraints {
                let GroupElement::Zn(v) = &c.g else { unreachable!() };
                if v.iter().all(Zero::is_zero) {
                    if c.kind == OpenKind::U {
                        return Ok(CantorOutcome::Infeasible);
                    }
                } else {
                    targets.push(v.clone());
                }
            }
            let Some(directions) = cone_directions(n, &targets, m, bound) else {
                return Ok(CantorOutcome::Infeasible);
            };
            let orders = directions.iter().map(|w| Preorder::Matrix(complete_to_order(w))).collect::<Vec<_>>();
            (orders, directions)
        }
        FilteredGroup::Heisenberg => {
            let mut targets = Vec::new();
            let mut center_sign: Option<i8> = None;
            for c in constraints {
                let GroupElement::Heisenberg(x) = &c.g else { unreachable!() };
                if !x.is_central() {
                    targets.push(x.abelianization().to_vec());
                } else if x.c.is_zero() {
                    if c.kind == OpenKind::U {
                        return Ok(CantorOutcome::Infeasible);
                    }
                } else {
                    let s: i8 = if x.c.is_positive() { 1 } else { -1 };
                    if center_sign.is_some_and(|t| t != s) {
                        return Ok(CantorOutcome::Infeasible);
                    }
                    center_sign = Some(s);
                }
            }
            let Some(directions) = cone_directions(2, &targets, m, bound) else {
                return Ok(CantorOutcome::Infeasible);
            };
            let tier1 = MatrixPreorder::from_int_rows(1, &[&[i64::from(center_sign.unwrap_or(1))]])?;
            let orders = directions
                .iter()
                .map(|w| LayeredPreorder::composite(complete_to_order(w), tier1.clone()).map(Preorder::Layered))
                .collect::<Result<Vec<_>>>()?;
            (orders, directions)
        }
    };
    let mut certificates = Vec::new();
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            let u = separating_vector(&directions[i], &directions[j]);
            let u = match group {
                FilteredGroup::Zn(_) => GroupElement::Zn(u),
                FilteredGroup::Heisenberg => {
                    GroupElement::Heisenberg(HeisenbergElement::new(u[0].clone(), u[1].clone(), BigInt::zero()))
                }
            };
            let u = if orders[i].sign_of(&u)? != orders[j].sign_of(&u)? {
                u
            } else {
                orders[i].distinguishing_element(&orders[j])?.ok_or(Error::EqualPreorders)?
            };
            certificates.push((i, j, u));
        }
    }
    Ok(CantorOutcome::Witnesses { orders, certificates })
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// An integer `u` with `a.u > 0 > b.u` for non-parallel `a`, `b`.
///
/// `v = (b.b) a - (a.b) b` has `b.v = 0` and `a.v > 0` by Cauchy-Schwarz, so
/// `K v - b` works once `K a.v > a.b`.
fn separating_vector(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (ab, bb) = (dot_int(a, b), dot_int(b, b));
    let v: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| &bb * x - &ab * y).collect();
    let av = dot_int(a, &v);
    if !av.is_positive() {
        return v;
    }
    let k = ab.abs() / &av + 1;
    v.iter().zip(b).map(|(x, y)| &k * x - y).collect()
}

fn strictly_positive(w: &[BigInt], targets: &[Vec<BigInt>]) -> bool {
    targets.iter().all(|g| w.iter().zip(g).map(|(x, y)| x * y).sum::<BigInt>().is_positive())
}

/// Integer vectors of L1 norm exactly `k`, in descending lexicographic order.
fn l1_shell(n: usize, k: i64) -> Vec<Vec<i64>> {
    if n == 1 {
        return if k == 0 { vec![vec![0]] } else { vec![vec![k], vec![-k]] };
    }
    let mut out = Vec::new();
    for first in (-k..=k).rev() {
        for rest in l1_shell(n - 1, k - first.abs()) {
            let mut v = Vec::with_capacity(n);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// `m` pairwise non-parallel integer directions inside the open cone
/// `{w : w.g > 0 for all targets}`, or `None` if no direction of L1 norm at
/// most `bound` lies in it.
fn cone_directions(n: usize, targets: &[Vec<BigInt>], m: usize, bound: i64) -> Option<Vec<Vec<BigInt>>> {
    let base = (1..=bound)
        .flat_map(|k| l1_shell(n, k))
        .map(|v| v.into_iter().map(BigInt::from).collect::<Vec<_>>())
        .find(|w| strictly_positive(w, targets))?;
    let axis = (0..n)
        .rev()
        .find(|&j| base.iter().enumerate().any(|(i, x)| i != j && !x.is_zero()))
        .expect("n >= 2");
    let mut out = vec![base.clone()];
    let mut scale = BigInt::from(1);
    while out.len() < m {
        let mut w: Vec<BigInt> = base.iter().map(|x| x * &scale).collect();
        w[axis] += 1;
        if strictly_positive(&w, targets) {
            out.push(primitive(w));
        }
        scale += 1;
    }
    Some(out)
}

/// `w` followed by the standard basis: an order on `Z^n`.
fn complete_to_order(w: &[BigInt]) -> MatrixPreorder {
    let n = w.len();
    let f = QuadField::default();
    let mut rows = vec![w.iter().map(|x| f.rational(x.clone().into())).collect::<Vec<_>>()];
    for i in 0..n {
        rows.push((0..n).map(|j| f.int((i == j) as i64)).collect());
    }
    MatrixPreorder::new(n, rows).expect("rows have length n")
}

/// The three preorders on Q: trivial, the usual order, and its reverse.
pub fn enumerate_zr_q1() -> Vec<MatrixPreorder> {
    vec![
        MatrixPreorder::trivial(1),
        MatrixPreorder::from_int_rows(1, &[&[1]]).expect("1x1"),
        MatrixPreorder::from_int_rows(1, &[&[-1]]).expect("1x1"),
    ]
}

pub const DEFAULT_MAX_NODES: usize = 10_000;

/// Preorders generated by weight rows with entries in a finite set, as a
/// rooted tree: the root is the trivial preorder and the parent of a node is
/// its coarsening with one level fewer.
#[derive(Clone, Debug)]
pub struct ZrTree {
    pub nodes: Vec<MatrixPreorder>,
    /// `(parent, child)` indices into `nodes`.
    pub edges: Vec<(usize, usize)>,
}

impl ZrTree {
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(MatrixPreorder::rank).max().unwrap_or(0)
    }

    pub fn layer(&self, rank: usize) -> usize {
        self.nodes.iter().filter(|p| p.rank() == rank).count()
    }

    /// Graphviz rendering. Node ids are canonical-form fingerprints and both
    /// nodes and edges are sorted by them.
    pub fn to_dot(&self) -> String {
        let ids: Vec<String> = self.nodes.iter().map(|p| format!("n{}", p.canonical().fingerprint())).collect();
        let mut nodes: Vec<(String, String)> = self.nodes.iter().zip(&ids).map(|(p, id)| (id.clone(), node_label(p))).collect();
        nodes.sort();
        let mut edges: Vec<(String, String)> = self.edges.iter().map(|&(a, b)| (ids[a].clone(), ids[b].clone())).collect();
        edges.sort();
        let mut out = String::from("digraph zr {\n");
        for (id, label) in nodes {
            out.push_str(&format!("  {id} [label=\"{label}\"];\n"));
        }
        for (a, b) in edges {
            out.push_str(&format!("  {a} -> {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn node_label(p: &MatrixPreorder) -> String {
    if p.is_trivial() {
        return "trivial".into();
    }
    p.canonical_rows()
        .iter()
        .map(|row| format!("({})", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(",")
}

/// Enumerates the tree of preorders whose weight rows have entries in
/// `entries`, up to positive scaling of each level.
pub fn zr_tree(n: usize, entries: &[QuadExt], max_nodes: usize) -> Result<ZrTree> {
    let mut distinct: Vec<QuadExt> = Vec::new();
    for e in entries {
        if !distinct.contains(e) {
            distinct.push(e.clone());
        }
    }
    let per_row = (distinct.len() as u128).saturating_pow(n as u32).saturating_sub(1);
    let estimate = (0..=n as u32).fold(0u128, |acc, k| acc.saturating_add(per_row.saturating_pow(k)));
    if per_row > max_nodes as u128 * 64 {
        return Err(Error::CapExceeded { estimate, cap: max_nodes });
    }
    let rows = cartesian_rows(n, &distinct);
    let mut nodes = vec![MatrixPreorder::trivial(n)];
    let mut index: HashMap<CanonicalForm, usize> = HashMap::from([(nodes[0].canonical().clone(), 0)]);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for rank in 0..n {
        let mut next = Vec::new();
        for &parent in &frontier {
            for row in &rows {
                let mut weights = nodes[parent].canonical_rows();
                weights.push(row.clone());
                let child = MatrixPreorder::new(n, weights)?;
                if child.rank() != rank + 1 || index.contains_key(child.canonical()) {
                    continue;
                }
                if nodes.len() == max_nodes {
                    return Err(Error::CapExceeded { estimate, cap: max_nodes });
                }
                index.insert(child.canonical().clone(), nodes.len());
                edges.push((parent, nodes.len()));
                next.push(nodes.len());
                nodes.push(child);
            }
        }
        frontier = next;
    }
    Ok(ZrTree { nodes, edges })
}

fn cartesian_rows(n: usize, entries: &[QuadExt]) -> Vec<Vec<QuadExt>> {
    let mut rows: Vec<Vec<QuadExt>> = vec![Vec::new()];
    for _ in 0..n {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                entries.iter().map(move |e| {
                    let mut r = r.clone();
                    r.push(e.clone());
                    r
                })
            })
            .collect();
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::HeisenbergElement;

    fn mp(n: usize, rows: &[&[i64]]) -> Preorder {
        MatrixPreorder::from_int_rows(n, rows).unwrap().into()
    }

    fn sqrt_row() -> Preorder {
        let f = QuadField::default();
        MatrixPreorder::new(2, vec![vec![f.int(1), f.root()]]).unwrap().into()
    }

    #[test]
    fn membership_examples() {
        let trivial = mp(2, &[]);
        for g in [GroupElement::zn(&[1, 0]), GroupElement::zn(&[-3, 7])] {
            assert!(member(&trivial, &BasicOpen::o(g.clone())).unwrap());
            assert!(!member(&trivial, &BasicOpen::u(g)).unwrap());
        }
        assert!(!member(&sqrt_row(), &BasicOpen::o(GroupElement::zn(&[1, -1]))).unwrap());
        let lex = mp(2, &[&[0, 1], &[1, 0]]);
        let s = BasicOpen::new(Topology::Patch, vec![Condition::u(GroupElement::zn(&[0, 1])), Condition::o(GroupElement::zn(&[5, 0]))]).unwrap();
        assert!(member(&lex, &s).unwrap());
    }

    #[test]
    fn open_kinds_respect_topology() {
        let err = BasicOpen::new(Topology::Zariski, vec![Condition::u(GroupElement::zn(&[1]))]).unwrap_err();
        assert!(matches!(err, Error::InvalidOpen(_)));
        assert!(BasicOpen::new(Topology::Inverse, vec![Condition::o(GroupElement::zn(&[1]))]).is_err());
        let mixed = vec![Condition::u(GroupElement::zn(&[1])), Condition::u(GroupElement::heis(0, 0, 1))];
        assert!(matches!(BasicOpen::new(Topology::Patch, mixed), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn separation_examples() {
        let e1 = mp(2, &[&[1, 0]]);
        let e2 = mp(2, &[&[0, 1]]);
        let s = separate(&e1, &e2).unwrap();
        assert_eq!(s.open, BasicOpen::u(GroupElement::zn(&[1, -1])));
        assert!(s.contains_first);

        let s = separate(&mp(2, &[]), &e1).unwrap();
        assert_eq!(s.open, BasicOpen::u(GroupElement::zn(&[1, 0])));
        assert!(!s.contains_first);

        let a = mp(2, &[&[0, 1], &[1, 0]]);
        let b = mp(2, &[&[0, 1], &[-1, 0]]);
        let s = separate(&a, &b).unwrap();
        assert_eq!(s.open, BasicOpen::u(GroupElement::zn(&[1, 0])));
        assert!(member(&a, &s.open).unwrap() && !member(&b, &s.open).unwrap());

        assert_eq!(separate(&a, &a).unwrap_err(), Error::EqualPreorders);
    }

    #[test]
    fn nonstandard_witness_for_test_double() {
        let p: Preorder = LayeredPreorder::test_double_lex().into();
        let w = nonstandard_witness(&p, 100, 0).unwrap();
        assert_eq!((w.g.clone(), w.h.clone()), (GroupElement::heis(0, 1, 0), GroupElement::heis(0, 0, -1)));
        let expected_patch = BasicOpen::new(
            Topology::Patch,
            vec![Condition::u(GroupElement::heis(0, 1, 0)), Condition::o(GroupElement::heis(0, -1, 1))],
        )
        .unwrap();
        assert_eq!(w.patch_open, expected_patch);
        let expected_inverse = BasicOpen::new(
            Topology::Inverse,
            vec![Condition::u(GroupElement::heis(0, 1, 0)), Condition::u(GroupElement::heis(0, -1, 1))],
        )
        .unwrap();
        assert_eq!(w.inverse_open, expected_inverse);
        assert!(!w.fallback);
        assert!(member(&p, &w.patch_open).unwrap());
        assert!(member(&p, &w.inverse_open).unwrap());
    }

    #[test]
    fn nonstandard_witness_rejects_standard_input() {
        assert_eq!(nonstandard_witness(&mp(2, &[&[1, 0]]), 10, 0).unwrap_err(), Error::StandardPreorder);
        let comp: Preorder = LayeredPreorder::Trivial.into();
        assert_eq!(nonstandard_witness(&comp, 10, 0).unwrap_err(), Error::StandardPreorder);
    }

    #[test]
    fn cantor_examples() {
        let out = cantor_witnesses(FilteredGroup::Zn(2), &[Condition::u(GroupElement::zn(&[1, 2]))], 3, DEFAULT_DIRECTION_BOUND).unwrap();
        let CantorOutcome::Witnesses { orders, certificates } = out else { panic!("feasible") };
        let first_rows: Vec<Vec<QuadExt>> = orders
            .iter()
            .map(|p| match p {
                Preorder::Matrix(m) => m.rows()[0].clone(),
                _ => unreachable!(),
            })
            .collect();
        let f = QuadField::default();
        let expected: Vec<Vec<QuadExt>> = [[1, 0], [1, 1], [2, 1]].iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect();
        assert_eq!(first_rows, expected);
        assert_eq!(certificates.len(), 3);
        for p in &orders {
            let Preorder::Matrix(m) = p else { unreachable!() };
            assert_eq!(m.rank(), 2);
        }

        let contradictory = [Condition::u(GroupElement::zn(&[1, 0])), Condition::u(GroupElement::zn(&[-1, 0]))];
        assert_eq!(cantor_witnesses(FilteredGroup::Zn(2), &contradictory, 1, DEFAULT_DIRECTION_BOUND).unwrap(), CantorOutcome::Infeasible);
    }

    #[test]
    fn cantor_on_heisenberg() {
        let cs = [Condition::u(GroupElement::heis(1, 0, 0)), Condition::u(GroupElement::heis(0, 0, 1))];
        let CantorOutcome::Witnesses { orders, .. } = cantor_witnesses(FilteredGroup::Heisenberg, &cs, 2, DEFAULT_DIRECTION_BOUND).unwrap() else {
            panic!("feasible")
        };
        assert_eq!(orders.len(), 2);
        for p in &orders {
            assert!(matches!(p, Preorder::Layered(LayeredPreorder::Composite { .. })));
            assert!(is_standard(p, 0, 0).is_verified());
            for c in &cs {
                assert!(c.holds(p).unwrap());
            }
        }
        assert_ne!(orders[0], orders[1]);
        let bad = [Condition::u(GroupElement::heis(0, 0, 1)), Condition::u(GroupElement::heis(0, 0, -2))];
        assert_eq!(cantor_witnesses(FilteredGroup::Heisenberg, &bad, 2, 8).unwrap(), CantorOutcome::Infeasible);
    }

    #[test]
    fn q1_has_three_preorders() {
        let all = enumerate_zr_q1();
        assert_eq!(all.len(), 3);
        assert!(all.contains(&MatrixPreorder::trivial(1)));
        for i in 0..3 {
            for j in i + 1..3 {
                assert_ne!(all[i], all[j]);
            }
        }
        let u = all[1].distinguishing_vector(&all[2]).unwrap();
        assert_eq!(u, vec![crate::scalar::rat(1)]);
    }

    #[test]
    fn tree_examples() {
        let f = QuadField::default();
        let t = zr_tree(1, &[f.int(1), f.int(-1)], DEFAULT_MAX_NODES).unwrap();
        assert_eq!((t.nodes.len(), t.edges.len()), (3, 2));
        let t = zr_tree(1, &[f.int(1)], DEFAULT_MAX_NODES).unwrap();
        assert_eq!((t.nodes.len(), t.edges.len()), (2, 1));
        let t = zr_tree(2, &[f.int(0), f.int(1), f.int(-1)], DEFAULT_MAX_NODES).unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(t.layer(1), 8);
        assert_eq!(t.to_dot(), zr_tree(2, &[f.int(-1), f.int(0), f.int(1)], DEFAULT_MAX_NODES).unwrap().to_dot());
    }

    #[test]
    fn tree_cap_is_enforced() {
        let f = QuadField::default();
        let err = zr_tree(2, &[f.int(0), f.int(1), f.int(-1)], 5).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 5, .. }));
    }

    #[test]
    fn tree_parents_are_prefixes() {
        let f = QuadField::default();
        let t = zr_tree(2, &[f.int(0), f.int(1), f.int(-1), f.root()], DEFAULT_MAX_NODES).unwrap();
        for &(a, b) in &t.edges {
            assert_eq!(t.nodes[a].rank() + 1, t.nodes[b].rank());
            assert!(t.nodes[a].refined_by(&t.nodes[b]));
        }
        assert_eq!(t.edges.len(), t.nodes.len() - 1);
    }

    #[test]
    fn heisenberg_members_use_group_elements() {
        let comp: Preorder = LayeredPreorder::composite(
            MatrixPreorder::from_int_rows(2, &[&[1, 0], &[0, 1]]).unwrap(),
            MatrixPreorder::from_int_rows(1, &[&[1]]).unwrap(),
        )
        .unwrap()
        .into();
        let g = GroupElement::Heisenberg(HeisenbergElement::new(0, 0, -1));
        assert!(!member(&comp, &BasicOpen::o(g.clone())).unwrap());
        assert!(member(&comp, &BasicOpen::u(comp.group().inv(&g).unwrap())).unwrap());
    }
}
