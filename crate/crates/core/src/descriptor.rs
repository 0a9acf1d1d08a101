//! JSON algebra descriptors.
//!
//! ```json
//! { "name": "kp", "blocks": [1,1,1,1,2],
//!   "labels": ["e1", ...],
//!   "delta": { "0": [[0, 0, "1"], ...] },
//!   "counit": { "0": "1", ... },
//!   "antipode": { "0": [[0, "1"]], ... },
//!   "haar": { "0": "1/8", ... } }
//! ```
//!
//! Group algebras replace `blocks` with `"group": {"table": [[...]], "identity": 0}`.
//! Map keys are basis indices written in increasing order and scalars use the
//! canonical literal format, so export is deterministic.

use serde_json::{json, Map, Value};

use crate::error::{FqgError, Result};
use crate::exact::CycNum;
use crate::hopf::{AlgElement, AlgSignature, AxiomReport, Functional, HopfData, SigKind, TensorElem};

fn err(msg: impl Into<String>) -> FqgError {
    FqgError::Descriptor(msg.into())
}

pub fn to_json(h: &HopfData) -> Value {
    let mut root = Map::new();
    root.insert("name".into(), json!(h.name()));
    match h.signature().kind() {
        SigKind::Blocks(b) => {
            root.insert("blocks".into(), json!(b));
        }
        SigKind::GroupAlgebra { table, identity, .. } => {
            root.insert("group".into(), json!({ "table": table, "identity": identity }));
        }
    }
    root.insert("labels".into(), json!(h.labels()));
    let mut delta = Map::new();
    for (x, t) in h.delta_table().iter().enumerate() {
        let terms: Vec<Value> = t.terms().map(|(l, c)| json!([l[0], l[1], c.to_string()])).collect();
        delta.insert(x.to_string(), Value::Array(terms));
    }
    root.insert("delta".into(), Value::Object(delta));
    let mut counit = Map::new();
    for (x, c) in h.counit_table().iter().enumerate() {
        counit.insert(x.to_string(), json!(c.to_string()));
    }
    root.insert("counit".into(), Value::Object(counit));
    let mut antipode = Map::new();
    for (x, s) in h.antipode_table().iter().enumerate() {
        let terms: Vec<Value> = s.support().map(|(j, c)| json!([j, c.to_string()])).collect();
        antipode.insert(x.to_string(), Value::Array(terms));
    }
    root.insert("antipode".into(), Value::Object(antipode));
    if let Some(haar) = h.haar() {
        let mut m = Map::new();
        for (x, c) in haar.values().iter().enumerate() {
            m.insert(x.to_string(), json!(c.to_string()));
        }
        root.insert("haar".into(), Value::Object(m));
    }
    Value::Object(root)
}

pub fn to_string(h: &HopfData) -> String {
    serde_json::to_string_pretty(&to_json(h)).expect("serializable")
}

fn scalar(v: &Value) -> Result<CycNum> {
    let s = v.as_str().ok_or_else(|| err("scalar literals must be strings"))?;
    Ok(s.parse()?)
}

fn index(v: &Value, dim: usize) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| err("basis indices must be nonnegative integers"))? as usize;
    if i >= dim {
        return Err(err(format!("basis index {i} out of range (dimension {dim})")));
    }
    Ok(i)
}

fn table<'a>(root: &'a Value, key: &str, dim: usize, required: bool) -> Result<Vec<Option<&'a Value>>> {
    let mut out = vec![None; dim];
    let Some(v) = root.get(key) else {
        return if required { Err(err(format!("missing `{key}`"))) } else { Ok(out) };
    };
    let m = v.as_object().ok_or_else(|| err(format!("`{key}` must be an object")))?;
    for (k, val) in m {
        let i: usize = k.parse().map_err(|_| err(format!("`{key}` key `{k}` is not an index")))?;
        if i >= dim {
            return Err(err(format!("`{key}` key {i} out of range")));
        }
        out[i] = Some(val);
    }
    Ok(out)
}

/// Parse a descriptor without checking the Hopf axioms.
pub fn from_json(root: &Value) -> Result<HopfData> {
    let sig = if let Some(b) = root.get("blocks") {
        let sizes: Vec<usize> = serde_json::from_value(b.clone()).map_err(|e| err(format!("bad `blocks`: {e}")))?;
        AlgSignature::blocks(sizes)?
    } else if let Some(g) = root.get("group") {
        let t: Vec<Vec<usize>> = serde_json::from_value(g.get("table").cloned().unwrap_or(Value::Null))
            .map_err(|e| err(format!("bad group table: {e}")))?;
        let identity = g.get("identity").and_then(Value::as_u64).ok_or_else(|| err("missing group identity"))? as usize;
        let n = t.len();
        if t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) || identity >= n {
            return Err(err("malformed group table"));
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| t[a][b] == identity).ok_or_else(|| err("group element without inverse")))
            .collect::<Result<Vec<_>>>()?;
        AlgSignature::group_algebra(t, inverse, identity)?
    } else {
        return Err(err("descriptor needs `blocks` or `group`"));
    };
    let d = sig.dim();
    let name = root.get("name").and_then(Value::as_str).unwrap_or("imported").to_string();
    let labels: Vec<String> = match root.get("labels") {
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| err(format!("bad `labels`: {e}")))?,
        None => (0..d).map(|i| format!("b{i}")).collect(),
    };
    if labels.len() != d {
        return Err(err(format!("expected {d} labels, got {}", labels.len())));
    }
    let mut delta = Vec::with_capacity(d);
    for (x, entry) in table(root, "delta", d, true)?.into_iter().enumerate() {
        let mut t = TensorElem::zero(&sig, 2);
        let terms = entry.ok_or_else(|| err(format!("delta missing basis element {x}")))?;
        for term in terms.as_array().ok_or_else(|| err("delta entries must be arrays"))? {
            let a = term.as_array().filter(|a| a.len() == 3).ok_or_else(|| err("delta terms are [i, j, scalar]"))?;
            t.add_term(&[index(&a[0], d)?, index(&a[1], d)?], &scalar(&a[2])?);
        }
        delta.push(t);
    }
    let counit = table(root, "counit", d, true)?
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| err(format!("counit missing basis element {x}"))).and_then(scalar))
        .collect::<Result<Vec<_>>>()?;
    let mut antipode = Vec::with_capacity(d);
    for (x, entry) in table(root, "antipode", d, true)?.into_iter().enumerate() {
        let terms = entry.ok_or_else(|| err(format!("antipode missing basis element {x}")))?;
        let mut s = AlgElement::zero(&sig);
        for term in terms.as_array().ok_or_else(|| err("antipode entries must be arrays"))? {
            let a = term.as_array().filter(|a| a.len() == 2).ok_or_else(|| err("antipode terms are [j, scalar]"))?;
            s.add_scaled(&AlgElement::basis(&sig, index(&a[0], d)?), &scalar(&a[1])?);
        }
        antipode.push(s);
    }
    let mut h = HopfData::new(name, sig.clone(), delta, counit, antipode, labels)?;
    if root.get("haar").is_some() {
        let values = table(root, "haar", d, true)?
            .into_iter()
            .map(|v| v.map_or(Ok(CycNum::zero()), scalar))
            .collect::<Result<Vec<_>>>()?;
        h = h.with_haar(Functional::new(&sig, values)?)?;
    }
    Ok(h)
}

/// Parse a descriptor and run the full axiom check on it.
pub fn import(text: &str) -> Result<(HopfData, AxiomReport)> {
    let v: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let h = from_json(&v)?;
    let report = h.verify_hopf();
    Ok((h, report))
}

/// Two-leg tensor as `{"terms": [[i, j, "lit"], ...]}`.
pub fn tensor_to_json(t: &TensorElem) -> Value {
    let terms: Vec<Value> = t.terms().map(|(l, c)| json!([l[0], l[1], c.to_string()])).collect();
    json!({ "terms": terms })
}

pub fn tensor_from_json(h: &HopfData, root: &Value) -> Result<TensorElem> {
    let terms = root.get("terms").and_then(Value::as_array).ok_or_else(|| err("missing `terms` array"))?;
    let mut t = TensorElem::zero(h.signature(), 2);
    for term in terms {
        match term.as_array().map(Vec::as_slice) {
            Some([i, j, c]) => t.add_term(&[index(i, h.dim())?, index(j, h.dim())?], &scalar(c)?),
            _ => return Err(err("tensor terms must be [i, j, scalar]")),
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{group_algebra, kac_paljutkin, FiniteGroupTable};

    #[test]
    fn kp_round_trip_is_exact() {
        let h = kac_paljutkin();
        let text = to_string(&h);
        let (back, report) = import(&text).unwrap();
        assert!(report.all_pass());
        assert_eq!(to_string(&back), text);
        assert_eq!(back.delta_table(), h.delta_table());
        assert_eq!(back.haar(), h.haar());
        let t = &h.delta_table()[4];
        assert_eq!(&tensor_from_json(&h, &tensor_to_json(t)).unwrap(), t);
        assert!(tensor_from_json(&h, &json!({"terms": [[0, 9, "1"]]})).is_err());
    }

    #[test]
    fn group_algebra_round_trip() {
        let h = group_algebra(&FiniteGroupTable::from_name("z2xz2").unwrap()).unwrap();
        let text = to_string(&h);
        assert_eq!(to_string(&import(&text).unwrap().0), text);
    }

    #[test]
    fn malformed_descriptors() {
        assert!(import("{").is_err());
        assert!(import(r#"{"blocks": [1], "delta": {}, "counit": {}, "antipode": {}}"#).is_err());
        let bad = r#"{"blocks": [1], "delta": {"0": [[0, 3, "1"]]}, "counit": {"0": "1"}, "antipode": {"0": [[0, "1"]]}}"#;
        assert!(matches!(import(bad), Err(FqgError::Descriptor(_))));
        let ok = r#"{"blocks": [1], "delta": {"0": [[0, 0, "1"]]}, "counit": {"0": "1"}, "antipode": {"0": [[0, "1"]]}}"#;
        assert!(import(ok).unwrap().1.all_pass());
    }
}
