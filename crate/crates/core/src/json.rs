//! JSON encodings for preorders, group elements, lattices, open sets and
//! group-algebra elements.
//!
//! Every encoder's output is accepted by the matching decoder.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{FilteredGroup, GroupElement, HeisenbergElement, LayeredPreorder, LeftLex, Preorder};
use crate::linalg::IntLattice;
use crate::preorder::MatrixPreorder;
use crate::scalar::{format_rational, parse_rational, QuadExt, QuadField, Rational};
use crate::topology::{BasicOpen, Condition, OpenKind, Topology};
use crate::valuation::{GroupAlgebraElement, Value as Val};

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid JSON: {e}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("missing field \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::parse(format!("{what} must be a non-negative integer")))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(_) => Ok(Rational::from_integer(integer_from_json(v)?)),
        _ => Err(Error::parse(format!("expected a rational, got {v}"))),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn integer_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::parse(format!("expected an integer, got {n}")))
            }
        }
        Value::String(s) => s.trim().parse().map_err(|_| Error::parse(format!("expected an integer, got \"{s}\""))),
        _ => Err(Error::parse(format!("expected an integer, got {v}"))),
    }
}

/// Small integers as JSON numbers, larger ones as decimal strings.
pub fn integer_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => json!(i),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn int_vector_from_json(v: &Value) -> Result<Vec<BigInt>> {
    as_array(v, "integer vector")?.iter().map(integer_from_json).collect()
}

pub fn int_vector_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(integer_to_json).collect())
}

pub fn int_matrix_from_json(v: &Value) -> Result<Vec<Vec<BigInt>>> {
    as_array(v, "integer matrix")?.iter().map(int_vector_from_json).collect()
}

pub fn rational_vector_from_json(v: &Value) -> Result<Vec<Rational>> {
    as_array(v, "rational vector")?.iter().map(rational_from_json).collect()
}

pub fn rational_vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

/// Reads `"D"` if present.
pub fn field_from_json(v: &Value, default: QuadField) -> Result<QuadField> {
    match v.get("D") {
        None | Some(Value::Null) => Ok(default),
        Some(d) => {
            let d = d.as_i64().ok_or_else(|| Error::parse("\"D\" must be an integer"))?;
            QuadField::new(d)
        }
    }
}

/// Accepts `["a","b"]`, `{"a":..,"b":..}`, or a bare rational.
pub fn quad_from_json(v: &Value, f: QuadField) -> Result<QuadExt> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(f.elem(rational_from_json(&parts[0])?, rational_from_json(&parts[1])?)),
        Value::Array(_) => Err(Error::parse("a field element must be [a, b]")),
        Value::Object(m) => {
            let a = m.get("a").map(rational_from_json).transpose()?.unwrap_or_default();
            let b = m.get("b").map(rational_from_json).transpose()?.unwrap_or_default();
            Ok(f.elem(a, b))
        }
        _ => Ok(f.rational(rational_from_json(v)?)),
    }
}

pub fn quad_to_json(x: &QuadExt) -> Value {
    json!([format_rational(x.a()), format_rational(x.b())])
}

fn rows_field(rows: &[Vec<QuadExt>], default: QuadField) -> QuadField {
    rows.iter().flatten().find(|x| !x.is_rational()).map(QuadExt::field).unwrap_or(default)
}

/// Encodes the canonical rows together with rank, degree and fingerprint.
pub fn matrix_to_json(p: &MatrixPreorder, default: QuadField) -> Value {
    let rows = p.canonical_rows();
    let f = rows_field(&rows, default);
    let enc: Vec<Value> = rows.iter().map(|r| Value::Array(r.iter().map(quad_to_json).collect())).collect();
    json!({
        "n": p.dim(),
        "D": f.d(),
        "rows": enc,
        "rank": p.rank(),
        "degree": p.degree(),
        "fingerprint": p.canonical().fingerprint(),
    })
}

pub fn matrix_from_json(v: &Value, default: QuadField) -> Result<MatrixPreorder> {
    if !v.is_object() {
        return Err(Error::parse("a matrix preorder must be a JSON object"));
    }
    let f = field_from_json(v, default)?;
    let rows = as_array(field(v, "rows")?, "\"rows\"")?;
    let rows: Vec<Vec<QuadExt>> = rows
        .iter()
        .map(|r| as_array(r, "a row")?.iter().map(|x| quad_from_json(x, f)).collect())
        .collect::<Result<_>>()?;
    let n = match v.get("n") {
        Some(n) => as_usize(n, "\"n\"")?,
        None => rows.first().map(Vec::len).ok_or_else(|| Error::parse("missing field \"n\""))?,
    };
    MatrixPreorder::new(n, rows)
}

pub fn group_to_json(g: FilteredGroup) -> Value {
    match g {
        FilteredGroup::Zn(n) => json!({"group": "Zn", "n": n}),
        FilteredGroup::Heisenberg => json!({"group": "heisenberg"}),
    }
}

pub fn group_from_json(v: &Value) -> Result<FilteredGroup> {
    let name = v.get("group").and_then(Value::as_str).ok_or_else(|| Error::parse("missing field \"group\""))?;
    match name.to_ascii_lowercase().as_str() {
        "heisenberg" => Ok(FilteredGroup::Heisenberg),
        "zn" => Ok(FilteredGroup::Zn(as_usize(field(v, "n")?, "\"n\"")?)),
        other => Err(Error::parse(format!("unknown group \"{other}\""))),
    }
}

fn sign_from_json(v: Option<&Value>) -> Result<i8> {
    match v {
        None => Ok(1),
        Some(s) => s.as_i64().map(|x| x as i8).ok_or_else(|| Error::parse("signs must be +1 or -1")),
    }
}

pub fn preorder_to_json(p: &Preorder, default: QuadField) -> Value {
    match p {
        Preorder::Matrix(m) => {
            let mut v = matrix_to_json(m, default);
            v["group"] = json!("Zn");
            v
        }
        Preorder::Layered(l) => {
            let mut v = match l {
                LayeredPreorder::Trivial => json!({"variant": "trivial"}),
                LayeredPreorder::PullbackAb(t0) => json!({"variant": "pullback-ab", "tier0": matrix_to_json(t0, default)}),
                LayeredPreorder::Composite { tier0, tier1 } => json!({
                    "variant": "composite",
                    "tier0": matrix_to_json(tier0, default),
                    "tier1": matrix_to_json(tier1, default),
                }),
                LayeredPreorder::LeftLex(x) => json!({
                    "variant": "left-lex",
                    "D": rows_field(&[vec![x.lambda.clone()]], default).d(),
                    "a_sign": x.a_sign,
                    "c_sign": x.c_sign,
                    "lambda": quad_to_json(&x.lambda),
                    "b_sign": x.b_sign,
                }),
            };
            v["group"] = json!("heisenberg");
            v["bi_invariant"] = json!(l.is_bi_invariant());
            v
        }
    }
}

/// Objects with `"group": "heisenberg"` or a `"variant"` are layered
/// preorders; everything else is a weight matrix on `Z^n`.
pub fn preorder_from_json(v: &Value, default: QuadField) -> Result<Preorder> {
    let heis = v.get("variant").is_some() || matches!(v.get("group").and_then(Value::as_str), Some(g) if g.eq_ignore_ascii_case("heisenberg"));
    if !heis {
        let p = matrix_from_json(v, default)?;
        if let Some(n) = v.get("group").filter(|g| g.is_string()).map(|_| group_from_json(v)).transpose()? {
            if n != FilteredGroup::Zn(p.dim()) {
                return Err(Error::GroupMismatch(format!("declared {n} but rows have length {}", p.dim())));
            }
        }
        return Ok(p.into());
    }
    let variant = v.get("variant").and_then(Value::as_str).unwrap_or("trivial");
    let f = field_from_json(v, default)?;
    let layered = match variant {
        "trivial" => LayeredPreorder::Trivial,
        "pullback-ab" => LayeredPreorder::pullback_ab(matrix_from_json(field(v, "tier0")?, f)?)?,
        "composite" => LayeredPreorder::composite(matrix_from_json(field(v, "tier0")?, f)?, matrix_from_json(field(v, "tier1")?, f)?)?,
        "test-double-lex" => LayeredPreorder::test_double_lex(),
        "left-lex" => {
            let lambda = match v.get("lambda") {
                Some(x) => quad_from_json(x, f)?,
                None => f.zero(),
            };
            LayeredPreorder::LeftLex(LeftLex::new(
                sign_from_json(v.get("a_sign"))?,
                sign_from_json(v.get("c_sign"))?,
                lambda,
                sign_from_json(v.get("b_sign"))?,
            )?)
        }
        other => return Err(Error::parse(format!("unknown layered variant \"{other}\""))),
    };
    Ok(layered.into())
}

pub fn element_to_json(g: &GroupElement) -> Value {
    match g {
        GroupElement::Zn(v) => int_vector_to_json(v),
        GroupElement::Heisenberg(h) => int_vector_to_json(&[h.a.clone(), h.b.clone(), h.c.clone()]),
    }
}

pub fn element_from_json(v: &Value, group: FilteredGroup) -> Result<GroupElement> {
    let coords = int_vector_from_json(v)?;
    let g = match group {
        FilteredGroup::Zn(_) => GroupElement::Zn(coords),
        FilteredGroup::Heisenberg => {
            let [a, b, c]: [BigInt; 3] = coords.try_into().map_err(|c: Vec<BigInt>| Error::DimensionMismatch { expected: 3, found: c.len() })?;
            GroupElement::Heisenberg(HeisenbergElement::new(a, b, c))
        }
    };
    group.check(&g)?;
    Ok(g)
}

pub fn lattice_to_json(l: &IntLattice) -> Value {
    json!({
        "n": l.ambient_dim(),
        "rank": l.rank(),
        "basis": l.basis().iter().map(|b| int_vector_to_json(b)).collect::<Vec<_>>(),
    })
}

pub fn lattice_from_json(v: &Value) -> Result<IntLattice> {
    let basis = int_matrix_from_json(field(v, "basis")?)?;
    let n = match v.get("n") {
        Some(n) => as_usize(n, "\"n\"")?,
        None => basis.first().map(Vec::len).ok_or_else(|| Error::parse("missing field \"n\""))?,
    };
    IntLattice::generated_by(n, basis)
}

fn topology_name(t: Topology) -> &'static str {
    match t {
        Topology::Zariski => "zariski",
        Topology::Inverse => "inverse",
        Topology::Patch => "patch",
    }
}

pub fn open_to_json(s: &BasicOpen) -> Value {
    let conds: Vec<Value> = s
        .conditions()
        .iter()
        .map(|c| {
            let kind = match c.kind {
                OpenKind::O => "O",
                OpenKind::U => "U",
            };
            json!({"kind": kind, "g": element_to_json(&c.g)})
        })
        .collect();
    json!({"topology": topology_name(s.topology()), "conditions": conds})
}

pub fn condition_from_json(v: &Value, group: FilteredGroup) -> Result<Condition> {
    let kind = match field(v, "kind")?.as_str() {
        Some("O") | Some("o") => OpenKind::O,
        Some("U") | Some("u") => OpenKind::U,
        _ => return Err(Error::parse("condition kind must be \"O\" or \"U\"")),
    };
    Ok(Condition { kind, g: element_from_json(field(v, "g")?, group)? })
}

pub fn open_from_json(v: &Value, group: FilteredGroup) -> Result<BasicOpen> {
    let topology = match field(v, "topology")?.as_str().map(str::to_ascii_lowercase).as_deref() {
        Some("zariski") => Topology::Zariski,
        Some("inverse") => Topology::Inverse,
        Some("patch") => Topology::Patch,
        _ => return Err(Error::parse("topology must be \"zariski\", \"inverse\" or \"patch\"")),
    };
    let conds = as_array(field(v, "conditions")?, "\"conditions\"")?;
    let conds = conds.iter().map(|c| condition_from_json(c, group)).collect::<Result<_>>()?;
    BasicOpen::new(topology, conds)
}

pub fn poly_to_json(p: &GroupAlgebraElement) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(g, c)| json!({"coeff": format_rational(c), "g": element_to_json(g)}))
        .collect();
    json!({"terms": terms})
}

pub fn poly_from_json(v: &Value, group: FilteredGroup) -> Result<GroupAlgebraElement> {
    let terms = as_array(field(v, "terms")?, "\"terms\"")?;
    let terms: Vec<(GroupElement, Rational)> = terms
        .iter()
        .map(|t| Ok((element_from_json(field(t, "g")?, group)?, rational_from_json(field(t, "coeff")?)?)))
        .collect::<Result<_>>()?;
    GroupAlgebraElement::from_terms(group, terms)
}

pub fn value_to_json(v: &Val) -> Value {
    match v {
        Val::Infinity => json!("infinity"),
        Val::Finite(g) => element_to_json(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn d2() -> QuadField {
        QuadField::default()
    }

    #[test]
    fn matrix_round_trip() {
        let v = parse(r#"{"n":2,"D":2,"rows":[[["0/1","0/1"],["1/1","0/1"]],[["1","0"],["0","1"]]]}"#).unwrap();
        let p = matrix_from_json(&v, d2()).unwrap();
        let back = matrix_from_json(&matrix_to_json(&p, d2()), d2()).unwrap();
        assert_eq!(p, back);
        assert_eq!(matrix_to_json(&p, d2())["rank"], json!(2));
    }

    #[test]
    fn entry_forms() {
        let f = d2();
        let want = f.elem(rat(1), rat(-2));
        assert_eq!(quad_from_json(&json!(["1", "-2"]), f).unwrap(), want);
        assert_eq!(quad_from_json(&json!({"a": 1, "b": "-2/1"}), f).unwrap(), want);
        assert_eq!(quad_from_json(&json!("3/4"), f).unwrap(), f.rational(crate::scalar::ratio(3, 4)));
        assert!(quad_from_json(&json!(["1"]), f).is_err());
    }

    #[test]
    fn field_is_validated() {
        let v = json!({"n": 1, "D": 4, "rows": [[["1","1"]]]});
        assert_eq!(matrix_from_json(&v, d2()).unwrap_err(), Error::InvalidField(4));
    }

    #[test]
    fn layered_round_trip() {
        let inputs = [
            json!({"group": "heisenberg"}),
            json!({"variant": "test-double-lex"}),
            json!({"variant": "left-lex", "a_sign": -1, "lambda": ["1/2", "1/3"]}),
            json!({"variant": "pullback-ab", "tier0": {"n": 2, "rows": [[1, 1]]}}),
            json!({"variant": "composite", "tier0": {"n": 2, "rows": [[1, 0], [0, 1]]}, "tier1": {"n": 1, "rows": [[-1]]}}),
        ];
        for v in inputs {
            let p = preorder_from_json(&v, d2()).unwrap();
            let back = preorder_from_json(&preorder_to_json(&p, d2()), d2()).unwrap();
            assert_eq!(p, back, "{v}");
        }
    }

    #[test]
    fn elements_and_groups() {
        let h = element_from_json(&json!([1, "-2", 3]), FilteredGroup::Heisenberg).unwrap();
        assert_eq!(h, GroupElement::heis(1, -2, 3));
        assert!(element_from_json(&json!([1, 2]), FilteredGroup::Heisenberg).is_err());
        assert!(matches!(element_from_json(&json!([1, 2]), FilteredGroup::Zn(3)), Err(Error::DimensionMismatch { .. })));
        assert_eq!(group_from_json(&json!({"group": "Zn", "n": 3})).unwrap(), FilteredGroup::Zn(3));
        let big = BigInt::from(u64::MAX) * 4;
        assert_eq!(integer_from_json(&integer_to_json(&big)).unwrap(), big);
    }

    #[test]
    fn opens_and_polys_round_trip() {
        let g = FilteredGroup::Zn(2);
        let s = open_from_json(&json!({"topology": "patch", "conditions": [{"kind": "U", "g": [1, 0]}, {"kind": "O", "g": [0, -1]}]}), g).unwrap();
        assert_eq!(open_from_json(&open_to_json(&s), g).unwrap(), s);
        let bad = json!({"topology": "zariski", "conditions": [{"kind": "U", "g": [1, 0]}]});
        assert!(matches!(open_from_json(&bad, g), Err(Error::InvalidOpen(_))));

        let p = poly_from_json(&json!({"terms": [{"coeff": "3/1", "g": [1, 0]}, {"coeff": "-1/2", "g": [0, 2]}]}), g).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(poly_from_json(&poly_to_json(&p), g).unwrap(), p);
    }

    #[test]
    fn lattice_round_trip() {
        let l = lattice_from_json(&json!({"n": 2, "basis": [[2, 2], [0, 3]]})).unwrap();
        assert_eq!(lattice_from_json(&lattice_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn malformed_json() {
        assert_eq!(parse("{").unwrap_err().code(), "malformed_input");
        assert_eq!(matrix_from_json(&json!([1]), d2()).unwrap_err().code(), "malformed_input");
    }
}
