use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::algebra::{FieldSpec, Poly};
use crate::combinat::{NatVec, VecOp};
use crate::error::{Error, Result};
use crate::matpoly::MatPoly;
use crate::quasitri::{BlockStructure, Certificate};
use crate::smith::SpectralData;

pub const MATPOLY_V1: &str = "matpoly.v1";
pub const SPECTRAL_V1: &str = "spectraldata.v1";
pub const CERTIFICATE_V1: &str = "certificate.v1";
pub const OPSCRIPT_V1: &str = "opscript.v1";

/// A natural-vector script with its starting vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpScript {
    pub start: NatVec,
    pub ops: Vec<VecOp>,
}

/// A certificate together with the block structure it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateDoc {
    pub blocks: BlockStructure,
    pub certificate: Certificate,
}

/// Any of the four file formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    MatPoly(MatPoly),
    SpectralData(SpectralData),
    Certificate(CertificateDoc),
    OpScript(OpScript),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::MatPoly(_) => MATPOLY_V1,
            Document::SpectralData(_) => SPECTRAL_V1,
            Document::Certificate(_) => CERTIFICATE_V1,
            Document::OpScript(_) => OPSCRIPT_V1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::MatPoly(m) => matpoly_to_json(m),
            Document::SpectralData(s) => spectral_to_json(s),
            Document::Certificate(c) => certificate_to_json(&c.certificate, &c.blocks),
            Document::OpScript(s) => opscript_to_json(s),
        }
    }
}

/// Parse and validate any supported document.
pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))?;
    document_from_json(&v)
}

pub fn document_from_json(v: &Value) -> Result<Document> {
    let obj = as_object(v, "$")?;
    let kind = get_str(obj, "$", "kind")?;
    Ok(match kind {
        MATPOLY_V1 => Document::MatPoly(matpoly_from_json(v)?),
        SPECTRAL_V1 => Document::SpectralData(spectral_from_json(v, &[], 0)?),
        CERTIFICATE_V1 => Document::Certificate(certificate_from_json(v)?),
        OPSCRIPT_V1 => Document::OpScript(opscript_from_json(v)?),
        other => return Err(Error::schema("$.kind", format!("unknown document kind {other:?}"))),
    })
}

/// Pretty-printed canonical form.
pub fn print_document(doc: &Document) -> String {
    serde_json::to_string_pretty(&doc.to_json()).expect("serializable")
}

// ---- helpers --------------------------------------------------------------

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

fn field_of<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "missing field"))
}

fn get_str<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a str> {
    field_of(obj, path, key)?
        .as_str()
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "expected a string"))
}

fn get_usize(obj: &Map<String, Value>, path: &str, key: &str) -> Result<usize> {
    as_usize(field_of(obj, path, key)?, &format!("{path}.{key}"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::schema(path, "expected a natural number"))
}

fn get_bool(obj: &Map<String, Value>, path: &str, key: &str) -> Result<bool> {
    field_of(obj, path, key)?
        .as_bool()
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "expected a boolean"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn nat_vec(v: &Value, path: &str) -> Result<NatVec> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &format!("{path}[{i}]")))
        .collect()
}

fn check_kind(obj: &Map<String, Value>, want: &str) -> Result<()> {
    let kind = get_str(obj, "$", "kind")?;
    if kind != want {
        return Err(Error::schema("$.kind", format!("expected {want:?}, found {kind:?}")));
    }
    Ok(())
}

/// Field tags: `"GF(p)"` with `p` prime, or `"Q"`.
pub fn parse_field(tag: &str, path: &str) -> Result<FieldSpec> {
    let t = tag.trim();
    if t == "Q" || t == "QQ" {
        return Ok(FieldSpec::rationals());
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::schema(path, format!("unknown field tag {tag:?}")))?;
    let p: u64 = inner
        .parse()
        .map_err(|_| Error::schema(path, format!("unknown field tag {tag:?}")))?;
    FieldSpec::prime(p).map_err(|_| Error::schema(path, format!("{p} is not prime")))
}

fn field_from(obj: &Map<String, Value>) -> Result<FieldSpec> {
    parse_field(get_str(obj, "$", "field")?, "$.field")
}

/// A polynomial is an ascending array of coefficient strings (integers are
/// accepted too) or an expression such as `"1 + x^3 + x^4"`.
pub fn poly_from_json(field: FieldSpec, v: &Value, path: &str) -> Result<Poly> {
    let relocate = |e: Error| match e {
        Error::SchemaError { msg, .. } => Error::schema(path, msg),
        other => other,
    };
    match v {
        Value::String(s) => Poly::parse(field, s).map_err(relocate),
        Value::Array(cs) => {
            let mut coeffs = Vec::with_capacity(cs.len());
            for (i, c) in cs.iter().enumerate() {
                let p = format!("{path}[{i}]");
                let s = match c {
                    Value::String(s) => s.clone(),
                    Value::Number(n) if n.is_i64() => n.to_string(),
                    _ => return Err(Error::schema(p, "expected a coefficient string")),
                };
                coeffs.push(field.parse_scalar(&s).map_err(|e| match e {
                    Error::SchemaError { msg, .. } => Error::schema(p.clone(), msg),
                    other => other,
                })?);
            }
            Ok(Poly::from_coeffs(field, coeffs))
        }
        _ => Err(Error::schema(path, "expected a polynomial (array or string)")),
    }
}

pub fn poly_to_json(p: &Poly) -> Value {
    let f = p.field();
    Value::Array(p.coeffs().iter().map(|c| Value::String(f.fmt_scalar(c))).collect())
}

// ---- matpoly.v1 -----------------------------------------------------------

pub fn matpoly_to_json(m: &MatPoly) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| poly_to_json(m.get(i, j))).collect()))
        .collect();
    json!({
        "kind": MATPOLY_V1,
        "field": m.field().to_string(),
        "rows": m.rows(),
        "cols": m.cols(),
        "grade": m.grade(),
        "entries": entries,
    })
}

pub fn matpoly_from_json(v: &Value) -> Result<MatPoly> {
    let obj = as_object(v, "$")?;
    check_kind(obj, MATPOLY_V1)?;
    let field = field_from(obj)?;
    let rows = get_usize(obj, "$", "rows")?;
    let cols = get_usize(obj, "$", "cols")?;
    let entries_v = as_array(field_of(obj, "$", "entries")?, "$.entries")?;
    if entries_v.len() != rows {
        return Err(Error::schema("$.entries", format!("expected {rows} rows, found {}", entries_v.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in entries_v.iter().enumerate() {
        let rp = format!("$.entries[{i}]");
        let row = as_array(row, &rp)?;
        if row.len() != cols {
            return Err(Error::schema(rp, format!("expected {cols} entries, found {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            entries.push(poly_from_json(field, e, &format!("$.entries[{i}][{j}]"))?);
        }
    }
    let degree = entries.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let grade = match obj.get("grade") {
        None | Some(Value::Null) => degree,
        Some(g) => as_usize(g, "$.grade")?,
    };
    MatPoly::new(field, rows, cols, grade, entries).map_err(|e| match e {
        Error::GradeBelowDegree { .. } => Error::schema("$.grade", e.to_string()),
        other => other,
    })
}

// ---- spectraldata.v1 ------------------------------------------------------

pub fn spectral_to_json(s: &SpectralData) -> Value {
    let finite: Vec<Value> = s
        .finite
        .iter()
        .map(|(chi, pm)| json!({ "irreducible": poly_to_json(chi), "pm": pm }))
        .collect();
    let invariants: Vec<Value> = s.invariant_list().iter().map(poly_to_json).collect();
    json!({
        "kind": SPECTRAL_V1,
        "field": s.field.to_string(),
        "n": s.n,
        "grade": s.grade,
        "finite": finite,
        "infinite": s.infinite,
        "invariants": invariants,
    })
}

/// Either a PM table (`finite` + optional `infinite`) or a list of
/// invariant polynomials (`invariants`, factored over GF(p) or against the
/// irreducibles listed under `hints` over ℚ).
pub fn spectral_from_json(v: &Value, extra_hints: &[Poly], seed: u64) -> Result<SpectralData> {
    let obj = as_object(v, "$")?;
    check_kind(obj, SPECTRAL_V1)?;
    let field = field_from(obj)?;
    let n = get_usize(obj, "$", "n")?;
    let grade = get_usize(obj, "$", "grade")?;
    let infinite = match obj.get("infinite") {
        None | Some(Value::Null) => None,
        Some(x) => {
            let pm = nat_vec(x, "$.infinite")?;
            if pm.len() != n {
                return Err(Error::schema("$.infinite", format!("expected length {n}")));
            }
            Some(pm)
        }
    };
    let mut hints: Vec<Poly> = extra_hints.to_vec();
    if let Some(h) = obj.get("hints") {
        for (i, x) in as_array(h, "$.hints")?.iter().enumerate() {
            hints.push(poly_from_json(field, x, &format!("$.hints[{i}]"))?);
        }
    }
    let data = if let Some(fin) = obj.get("finite") {
        let mut finite = BTreeMap::new();
        for (i, row) in as_array(fin, "$.finite")?.iter().enumerate() {
            let rp = format!("$.finite[{i}]");
            let ro = as_object(row, &rp)?;
            let chi = poly_from_json(field, field_of(ro, &rp, "irreducible")?, &format!("{rp}.irreducible"))?;
            if chi.is_constant() {
                return Err(Error::schema(format!("{rp}.irreducible"), "constant polynomial"));
            }
            let pm = nat_vec(field_of(ro, &rp, "pm")?, &format!("{rp}.pm"))?;
            if pm.len() != n {
                return Err(Error::schema(format!("{rp}.pm"), format!("expected length {n}")));
            }
            if finite.insert(chi.monic(), pm).is_some() {
                return Err(Error::schema(format!("{rp}.irreducible"), "duplicate irreducible"));
            }
        }
        SpectralData {
            field,
            n,
            grade,
            finite,
            infinite: infinite.unwrap_or_else(|| vec![0; n]),
            invariants: None,
        }
    } else if let Some(inv) = obj.get("invariants") {
        let mut invs = Vec::new();
        for (i, x) in as_array(inv, "$.invariants")?.iter().enumerate() {
            invs.push(poly_from_json(field, x, &format!("$.invariants[{i}]"))?);
        }
        SpectralData::from_invariants(field, n, grade, &invs, infinite, &hints, seed)?
    } else {
        return Err(Error::schema("$.finite", "missing field (or give $.invariants)"));
    };
    data.validate()?;
    Ok(data)
}

// ---- certificate.v1 -------------------------------------------------------

pub fn certificate_to_json(c: &Certificate, blocks: &BlockStructure) -> Value {
    json!({
        "kind": CERTIFICATE_V1,
        "data": spectral_to_json(&c.data),
        "degree": c.degree,
        "grade": c.grade,
        "strictly_regular": c.strictly_regular,
        "blocks": blocks.sizes,
        "block_triangular": c.block_triangular,
        "max_block": c.max_block,
        "offdiag_below": c.offdiag_below,
        "offdiag_bound": c.offdiag_bound,
        "matches_request": c.matches_request,
    })
}

pub fn certificate_from_json(v: &Value) -> Result<CertificateDoc> {
    let obj = as_object(v, "$")?;
    check_kind(obj, CERTIFICATE_V1)?;
    let data = spectral_from_json(field_of(obj, "$", "data")?, &[], 0).map_err(|e| match e {
        Error::SchemaError { path, msg } => Error::schema(path.replacen('$', "$.data", 1), msg),
        other => other,
    })?;
    let degree = match field_of(obj, "$", "degree")? {
        Value::Null => None,
        x => Some(as_usize(x, "$.degree")?),
    };
    let blocks = BlockStructure::new(nat_vec(field_of(obj, "$", "blocks")?, "$.blocks")?);
    Ok(CertificateDoc {
        certificate: Certificate {
            data,
            degree,
            grade: get_usize(obj, "$", "grade")?,
            strictly_regular: get_bool(obj, "$", "strictly_regular")?,
            block_triangular: get_bool(obj, "$", "block_triangular")?,
            max_block: get_usize(obj, "$", "max_block")?,
            offdiag_below: get_bool(obj, "$", "offdiag_below")?,
            offdiag_bound: get_usize(obj, "$", "offdiag_bound")?,
            matches_request: get_bool(obj, "$", "matches_request")?,
        },
        blocks,
    })
}

// ---- opscript.v1 ----------------------------------------------------------

pub fn op_to_json(op: &VecOp) -> Value {
    match *op {
        VecOp::Interchange { i } => json!({ "op": "interchange", "i": i }),
        VecOp::Compression { i, alpha, beta } => {
            json!({ "op": "compression", "i": i, "alpha": alpha, "beta": beta })
        }
    }
}

pub fn opscript_to_json(s: &OpScript) -> Value {
    json!({
        "kind": OPSCRIPT_V1,
        "start": s.start,
        "ops": s.ops.iter().map(op_to_json).collect::<Vec<_>>(),
    })
}

pub fn opscript_from_json(v: &Value) -> Result<OpScript> {
    let obj = as_object(v, "$")?;
    check_kind(obj, OPSCRIPT_V1)?;
    let start = nat_vec(field_of(obj, "$", "start")?, "$.start")?;
    let mut ops = Vec::new();
    for (k, o) in as_array(field_of(obj, "$", "ops")?, "$.ops")?.iter().enumerate() {
        let p = format!("$.ops[{k}]");
        let oo = as_object(o, &p)?;
        let i = get_usize(oo, &p, "i")?;
        ops.push(match get_str(oo, &p, "op")? {
            "interchange" => VecOp::Interchange { i },
            "compression" => VecOp::Compression {
                i,
                alpha: get_usize(oo, &p, "alpha")?,
                beta: get_usize(oo, &p, "beta")?,
            },
            other => return Err(Error::schema(format!("{p}.op"), format!("unknown op {other:?}"))),
        });
    }
    Ok(OpScript { start, ops })
}
