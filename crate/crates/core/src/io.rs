//! JSON form of presentations, maps and R-matrices.
//!
//! ```text
//! {
//!   "ring": {"p": 5, "n": 1, "m": 1, "modulus": [0, 1]},
//!   "dim": N,
//!   "m": m[i][j][k]       coefficient of e_k in e_i e_j,
//!   "unit": u[k],
//!   "delta": d[i][j][k]   coefficient of e_j ⊗ e_k in Δ(e_i),
//!   "counit": c[i],
//!   "S": S[i][j]          coefficient of e_j in S(e_i)
//! }
//! ```
//!
//! An element is an integer in `[0, p^n)` when `m = 1` and a list of `m` such
//! integers (coefficients of `1, x, ..., x^{m-1}`) otherwise. Output is
//! canonical: fixed key order, one top-level key per line, compact arrays.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::HopfPresentation;
use crate::ring::{make_ring, Elem, RingDescriptor};
use crate::tensor::MultiMap;

fn violation(path: &str, message: impl Into<String>) -> Error {
    Error::SchemaViolation { path: path.to_string(), message: message.into() }
}

pub fn ring_to_json(ring: &RingDescriptor) -> Value {
    json!({"p": ring.p(), "n": ring.precision(), "m": ring.degree(), "modulus": ring.modulus()})
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| violation(path, "expected an object"))?;
    obj.get(key).ok_or_else(|| violation(&format!("{path}.{key}"), "missing field"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| violation(path, "expected a nonnegative integer"))
}

pub fn ring_from_json(v: &Value, path: &str) -> Result<RingDescriptor> {
    let p = as_u64(field(v, "p", path)?, &format!("{path}.p"))?;
    let n = as_u64(field(v, "n", path)?, &format!("{path}.n"))?;
    let m = as_u64(field(v, "m", path)?, &format!("{path}.m"))?;
    let modulus = match v.get("modulus") {
        None => None,
        Some(list) => {
            let mpath = format!("{path}.modulus");
            let arr = list.as_array().ok_or_else(|| violation(&mpath, "expected an array"))?;
            Some(arr.iter().enumerate().map(|(i, c)| as_u64(c, &format!("{mpath}[{i}]"))).collect::<Result<Vec<_>>>()?)
        }
    };
    let n = u32::try_from(n).map_err(|_| violation(&format!("{path}.n"), "precision too large"))?;
    let m = usize::try_from(m).map_err(|_| violation(&format!("{path}.m"), "degree too large"))?;
    if let Some(modulus) = &modulus {
        if modulus.len() != m + 1 || modulus[m] != 1 {
            return Err(violation(&format!("{path}.modulus"), format!("expected a monic polynomial of degree {m}")));
        }
    }
    let given = modulus.filter(|_| m > 1);
    make_ring(p, n, m, given.as_deref()).map_err(|e| violation(path, e.to_string()))
}

pub fn elem_to_json(ring: &RingDescriptor, e: Elem) -> Value {
    let coeffs = ring.coeffs(e);
    if ring.degree() == 1 {
        json!(coeffs[0])
    } else {
        json!(coeffs)
    }
}

pub fn elem_from_json(ring: &RingDescriptor, v: &Value, path: &str) -> Result<Elem> {
    let coeffs = match v {
        Value::Array(items) => items.iter().enumerate().map(|(i, c)| as_u64(c, &format!("{path}[{i}]"))).collect::<Result<Vec<_>>>()?,
        _ if ring.degree() == 1 => vec![as_u64(v, path)?],
        _ => return Err(violation(path, format!("expected a list of {} coefficients", ring.degree()))),
    };
    ring.from_canonical(&coeffs).map_err(|e| violation(path, e.to_string()))
}

/// Nested lists of elements, outermost index first.
fn nested_to_json(ring: &RingDescriptor, shape: &[usize], get: &dyn Fn(&[usize]) -> Elem) -> Value {
    fn go(ring: &RingDescriptor, shape: &[usize], prefix: &mut Vec<usize>, get: &dyn Fn(&[usize]) -> Elem) -> Value {
        if prefix.len() == shape.len() {
            return elem_to_json(ring, get(prefix));
        }
        let n = shape[prefix.len()];
        let mut items = Vec::with_capacity(n);
        for i in 0..n {
            prefix.push(i);
            items.push(go(ring, shape, prefix, get));
            prefix.pop();
        }
        Value::Array(items)
    }
    go(ring, shape, &mut Vec::new(), get)
}

fn nested_from_json(
    ring: &RingDescriptor,
    v: &Value,
    shape: &[usize],
    path: &str,
    set: &mut dyn FnMut(&[usize], Elem),
) -> Result<()> {
    fn go(
        ring: &RingDescriptor,
        v: &Value,
        shape: &[usize],
        prefix: &mut Vec<usize>,
        path: &str,
        set: &mut dyn FnMut(&[usize], Elem),
    ) -> Result<()> {
        if prefix.len() == shape.len() {
            let e = elem_from_json(ring, v, path)?;
            set(prefix, e);
            return Ok(());
        }
        let n = shape[prefix.len()];
        let items = v.as_array().ok_or_else(|| violation(path, format!("expected an array of length {n}")))?;
        if items.len() != n {
            return Err(violation(path, format!("expected length {n}, got {}", items.len())));
        }
        for (i, item) in items.iter().enumerate() {
            prefix.push(i);
            go(ring, item, shape, prefix, &format!("{path}[{i}]"), set)?;
            prefix.pop();
        }
        Ok(())
    }
    go(ring, v, shape, &mut Vec::new(), path, set)
}

/// A `1 -> 1` map as `f[i][j]` = coefficient of `e_j` in `f(e_i)`.
pub fn map_to_json(f: &MultiMap) -> Value {
    nested_to_json(f.ring(), &[f.dim_in(), f.dim_out()], &|ix| f.get(ix[1], ix[0]))
}

pub fn map_from_json(ring: &RingDescriptor, dim_in: usize, dim_out: usize, v: &Value, path: &str) -> Result<MultiMap> {
    let mut f = MultiMap::zeros(*ring, dim_in, dim_out, 1, 1);
    nested_from_json(ring, v, &[dim_in, dim_out], path, &mut |ix, e| f.set(ix[1], ix[0], e))?;
    Ok(f)
}

/// An element of `A ⊗ A` as `r[i][j]` = coefficient of `e_i ⊗ e_j`.
pub fn tensor2_to_json(r: &MultiMap) -> Value {
    let n = r.dim_out();
    nested_to_json(r.ring(), &[n, n], &|ix| r.get(ix[0] * n + ix[1], 0))
}

pub fn tensor2_from_json(ring: &RingDescriptor, dim: usize, v: &Value, path: &str) -> Result<MultiMap> {
    let mut coeffs = vec![Elem::ZERO; dim * dim];
    nested_from_json(ring, v, &[dim, dim], path, &mut |ix, e| coeffs[ix[0] * dim + ix[1]] = e)?;
    MultiMap::from_vector(*ring, dim, 2, &coeffs)
}

/// Key/value pairs of a presentation in canonical order.
pub fn presentation_fields(h: &HopfPresentation) -> Vec<(&'static str, Value)> {
    let ring = h.ring();
    let n = h.dim();
    vec![
        ("ring", ring_to_json(ring)),
        ("dim", json!(n)),
        ("m", nested_to_json(ring, &[n, n, n], &|ix| h.m().get(ix[2], ix[0] * n + ix[1]))),
        ("unit", nested_to_json(ring, &[n], &|ix| h.unit().get(ix[0], 0))),
        ("delta", nested_to_json(ring, &[n, n, n], &|ix| h.delta().get(ix[1] * n + ix[2], ix[0]))),
        ("counit", nested_to_json(ring, &[n], &|ix| h.counit().get(0, ix[0]))),
        ("S", map_to_json(h.antipode())),
    ]
}

/// Canonical multi-line rendering of an object: one key per line, values compact.
pub fn render_object(fields: &[(&str, Value)]) -> String {
    let mut out = String::from("{\n");
    for (i, (key, value)) in fields.iter().enumerate() {
        let sep = if i + 1 < fields.len() { "," } else { "" };
        out.push_str(&format!("  {}: {}{sep}\n", Value::String(key.to_string()), value));
    }
    out.push_str("}\n");
    out
}

pub fn presentation_to_json(h: &HopfPresentation) -> String {
    render_object(&presentation_fields(h))
}

pub fn presentation_to_value(h: &HopfPresentation) -> Value {
    Value::Object(presentation_fields(h).into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| violation("", format!("invalid JSON: {e}")))
}

pub fn presentation_from_value(v: &Value, path: &str) -> Result<HopfPresentation> {
    let ring = ring_from_json(field(v, "ring", path)?, &format!("{path}.ring"))?;
    let dim = as_u64(field(v, "dim", path)?, &format!("{path}.dim"))? as usize;
    if dim == 0 {
        return Err(violation(&format!("{path}.dim"), "dimension must be positive"));
    }
    let n = dim;
    let mut m = MultiMap::zeros(ring, n, n, 2, 1);
    nested_from_json(&ring, field(v, "m", path)?, &[n, n, n], &format!("{path}.m"), &mut |ix, e| {
        m.set(ix[2], ix[0] * n + ix[1], e)
    })?;
    let mut unit = vec![Elem::ZERO; n];
    nested_from_json(&ring, field(v, "unit", path)?, &[n], &format!("{path}.unit"), &mut |ix, e| unit[ix[0]] = e)?;
    let mut delta = MultiMap::zeros(ring, n, n, 1, 2);
    nested_from_json(&ring, field(v, "delta", path)?, &[n, n, n], &format!("{path}.delta"), &mut |ix, e| {
        delta.set(ix[1] * n + ix[2], ix[0], e)
    })?;
    let mut counit = vec![Elem::ZERO; n];
    nested_from_json(&ring, field(v, "counit", path)?, &[n], &format!("{path}.counit"), &mut |ix, e| counit[ix[0]] = e)?;
    let antipode = map_from_json(&ring, n, n, field(v, "S", path)?, &format!("{path}.S"))?;
    HopfPresentation::new(
        ring,
        n,
        m,
        MultiMap::from_vector(ring, n, 1, &unit)?,
        delta,
        MultiMap::from_functional(ring, n, 1, &counit)?,
        antipode,
    )
}

pub fn presentation_from_json(text: &str) -> Result<HopfPresentation> {
    presentation_from_value(&parse_json(text)?, "")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{drinfeld_double, group_algebra, Group};

    fn f5_c2() -> HopfPresentation {
        group_algebra(make_ring(5, 1, 1, None).unwrap(), &Group::cyclic(2)).unwrap()
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let text = presentation_to_json(&f5_c2());
        let back = presentation_from_json(&text).unwrap();
        assert_eq!(back, f5_c2());
        assert_eq!(presentation_to_json(&back), text);
        assert!(text.starts_with("{\n  \"ring\": {\"p\":5,\"n\":1,\"m\":1,\"modulus\":[0,1]},\n  \"dim\": 2,\n"));
    }

    #[test]
    fn round_trip_over_a_galois_ring() {
        let ring = make_ring(2, 3, 2, None).unwrap();
        let h = drinfeld_double(&group_algebra(ring.residue_field(), &Group::cyclic(3)).unwrap()).unwrap().0.digit_lift(&ring).unwrap();
        let text = presentation_to_json(&h);
        assert_eq!(presentation_from_json(&text).unwrap(), h);
    }

    #[test]
    fn missing_antipode() {
        let mut v = presentation_to_value(&f5_c2());
        v.as_object_mut().unwrap().remove("S");
        let err = presentation_from_value(&v, "").unwrap_err();
        assert_eq!(err, Error::SchemaViolation { path: ".S".into(), message: "missing field".into() });
    }

    #[test]
    fn out_of_range_coefficient() {
        let mut v = presentation_to_value(&f5_c2());
        v["m"][1][1][0] = json!(5);
        match presentation_from_value(&v, "").unwrap_err() {
            Error::SchemaViolation { path, .. } => assert_eq!(path, ".m[1][1][0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_lengths_and_types() {
        let mut v = presentation_to_value(&f5_c2());
        v["unit"] = json!([1]);
        assert!(matches!(presentation_from_value(&v, "").unwrap_err(), Error::SchemaViolation { path, .. } if path == ".unit"));
        let mut v = presentation_to_value(&f5_c2());
        v["ring"]["p"] = json!(6);
        assert!(matches!(presentation_from_value(&v, "").unwrap_err(), Error::SchemaViolation { path, .. } if path == ".ring"));
        assert!(matches!(presentation_from_json("{").unwrap_err(), Error::SchemaViolation { .. }));
    }

    #[test]
    fn maps_and_r_matrices() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let mut f = MultiMap::zeros(f5, 2, 4, 1, 1);
        f.set(2, 1, f5.one());
        let v = map_to_json(&f);
        assert_eq!(v, json!([[0, 0, 0, 0], [0, 0, 1, 0]]));
        assert_eq!(map_from_json(&f5, 2, 4, &v, "").unwrap(), f);
        let r = MultiMap::from_vector(f5, 2, 2, &[f5.one(), f5.zero(), f5.from_int(2), f5.zero()]).unwrap();
        let v = tensor2_to_json(&r);
        assert_eq!(v, json!([[1, 0], [2, 0]]));
        assert_eq!(tensor2_from_json(&f5, 2, &v, "").unwrap(), r);
    }
}
