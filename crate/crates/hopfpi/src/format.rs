//! The instance file format: a JSON document holding a Hopf π-coalgebra and
//! its optional decorations.
//!
//! ```text
//! {
//!   "field": "rational" | {"gf": p},
//!   "group": Cayley table, 0-based,
//!   "dims": [d_α],
//!   "algebra": [{"unit": vector, "mult": mult[i][j] = e_i·e_j}],
//!   "comul": {"a,b": matrix of Δ_{a,b}},
//!   "counit": vector,
//!   "antipode": [matrix of S_α],
//!   "crossing": {"b,a": matrix of φ_b restricted to H_a},
//!   "rmatrix": {"a,b": vector in H_a ⊗ H_b},
//!   "rmatrix_inverse": {"a,b": vector},
//!   "twist": [vector]
//! }
//! ```
//!
//! Matrices are arrays of rows. Scalars are `"p/q"` or `"n"` strings over the
//! rationals and JSON integers over prime fields. [`emit`] writes the
//! canonical form, which [`parse`] reads back byte for byte.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::crossed::{Crossing, Decorated, RMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::FiniteGroup;
use crate::hopf::{all_pairs, GradedVector, HopfParts, HopfPiData};
use crate::linalg::{Bilinear, LinearMap, Vector};

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub hopf: HopfPiData,
    pub crossing: Option<Crossing>,
    pub rmatrix: Option<RMatrix>,
    pub rmatrix_inverse: Option<RMatrix>,
    pub twist: Option<GradedVector>,
}

impl Instance {
    pub fn plain(hopf: HopfPiData) -> Self {
        Instance {
            hopf,
            crossing: None,
            rmatrix: None,
            rmatrix_inverse: None,
            twist: None,
        }
    }

    /// The decorated view, with the trivial crossing when none is given.
    pub fn decorated(&self) -> Result<Decorated> {
        let crossing = match &self.crossing {
            Some(c) => c.clone(),
            None => Crossing::trivial(&self.hopf)?,
        };
        Ok(Decorated {
            hopf: self.hopf.clone(),
            crossing,
            rmatrix: self.rmatrix.clone(),
            twist: self.twist.clone(),
        })
    }
}

impl From<&Decorated> for Instance {
    fn from(d: &Decorated) -> Self {
        Instance {
            hopf: d.hopf.clone(),
            crossing: Some(d.crossing.clone()),
            rmatrix: d.rmatrix.clone(),
            rmatrix_inverse: None,
            twist: d.twist.clone(),
        }
    }
}

const KEYS: [&str; 11] = [
    "field",
    "group",
    "dims",
    "algebra",
    "comul",
    "counit",
    "antipode",
    "crossing",
    "rmatrix",
    "rmatrix_inverse",
    "twist",
];

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("at {path}: {msg}"))
}

fn relocate(path: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => err(path, m),
        other => err(path, other),
    }
}

struct Reader {
    field: Field,
}

impl Reader {
    fn scalar(&self, v: &Value, path: &str) -> Result<Scalar> {
        match (self.field, v) {
            (Field::Rational, Value::String(s)) => {
                self.field.parse(s).map_err(|e| relocate(path, e))
            }
            (Field::Rational, _) => {
                Err(err(path, "rational scalars are written as \"p/q\" strings"))
            }
            (Field::Prime(_), Value::Number(n)) => {
                let text = n.to_string();
                if !n.is_i64() && !n.is_u64() {
                    return Err(err(path, format!("{text} is not an integer")));
                }
                self.field.parse(&text).map_err(|e| relocate(path, e))
            }
            (Field::Prime(_), _) => Err(err(path, "prime field scalars are written as integers")),
        }
    }

    fn vector(&self, v: &Value, len: usize, path: &str) -> Result<Vector> {
        let items = array(v, path)?;
        if items.len() != len {
            return Err(err(
                path,
                format!("expected {len} entries, found {}", items.len()),
            ));
        }
        items
            .iter()
            .enumerate()
            .map(|(i, x)| self.scalar(x, &format!("{path}[{i}]")))
            .collect()
    }

    fn matrix(&self, v: &Value, rows: usize, cols: usize, path: &str) -> Result<LinearMap> {
        let items = array(v, path)?;
        if items.len() != rows {
            return Err(err(
                path,
                format!("expected {rows} rows, found {}", items.len()),
            ));
        }
        let data = items
            .iter()
            .enumerate()
            .map(|(i, r)| self.vector(r, cols, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap::from_rows(self.field, cols, &data))
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| err(path, "expected a nonnegative integer"))
}

/// Reads a map keyed `"a,b"` with exactly one entry per ordered pair.
fn pair_map<'a>(v: &'a Value, n: usize, path: &str) -> Result<Vec<&'a Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected an object keyed \"a,b\""))?;
    let mut out: Vec<Option<&Value>> = vec![None; n * n];
    for (key, val) in obj {
        let parsed = key.split_once(',').and_then(|(a, b)| {
            Some((
                a.trim().parse::<usize>().ok()?,
                b.trim().parse::<usize>().ok()?,
            ))
        });
        match parsed {
            Some((a, b)) if a < n && b < n => out[a * n + b] = Some(val),
            _ => {
                return Err(err(
                    &format!("{path}[{key:?}]"),
                    "key is not a pair of group indices",
                ))
            }
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| err(path, format!("missing key \"{},{}\"", i / n, i % n))))
        .collect()
}

fn parse_field(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) if s == "rational" => Ok(Field::Rational),
        Value::Object(o) if o.len() == 1 && o.contains_key("gf") => {
            let p = o["gf"]
                .as_u64()
                .ok_or_else(|| err("field.gf", "expected a prime"))?;
            Field::prime(p).map_err(|e| err("field.gf", e))
        }
        _ => Err(err("field", "expected \"rational\" or {\"gf\": p}")),
    }
}

/// Parses an instance file. Errors name the location of the offending value.
pub fn parse(text: &str) -> Result<Instance> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("at line {} column {}: {e}", e.line(), e.column())))?;
    let obj: &Map<String, Value> = root
        .as_object()
        .ok_or_else(|| err("$", "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(err(k, "unknown key"));
    }
    let need = |k: &str| {
        obj.get(k)
            .ok_or_else(|| err("$", format!("missing key {k:?}")))
    };
    let field = parse_field(need("field")?)?;
    let rd = Reader { field };

    let table = array(need("group")?, "group")?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            array(row, &format!("group[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| index(x, &format!("group[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let group = FiniteGroup::from_table(table).map_err(|e| err("group", e))?;
    let n = group.order();

    let dims_v = array(need("dims")?, "dims")?;
    if dims_v.len() != n {
        return Err(err(
            "dims",
            format!("expected {n} dimensions, found {}", dims_v.len()),
        ));
    }
    let dims = dims_v
        .iter()
        .enumerate()
        .map(|(i, x)| index(x, &format!("dims[{i}]")))
        .collect::<Result<Vec<_>>>()?;

    let alg = array(need("algebra")?, "algebra")?;
    if alg.len() != n {
        return Err(err(
            "algebra",
            format!("expected {n} components, found {}", alg.len()),
        ));
    }
    let mut mult = Vec::with_capacity(n);
    let mut unit = Vec::with_capacity(n);
    for (a, comp) in alg.iter().enumerate() {
        let p = format!("algebra[{a}]");
        let c = comp
            .as_object()
            .ok_or_else(|| err(&p, "expected an object"))?;
        if let Some(k) = c.keys().find(|k| *k != "unit" && *k != "mult") {
            return Err(err(&format!("{p}.{k}"), "unknown key"));
        }
        let d = dims[a];
        let u = c
            .get("unit")
            .ok_or_else(|| err(&p, "missing key \"unit\""))?;
        unit.push(rd.vector(u, d, &format!("{p}.unit"))?);
        let m = c
            .get("mult")
            .ok_or_else(|| err(&p, "missing key \"mult\""))?;
        let rows = array(m, &format!("{p}.mult"))?;
        if rows.len() != d {
            return Err(err(
                &format!("{p}.mult"),
                format!("expected {d} rows, found {}", rows.len()),
            ));
        }
        let mut consts = vec![field.zero(); d * d * d];
        for (i, row) in rows.iter().enumerate() {
            let rp = format!("{p}.mult[{i}]");
            let entries = array(row, &rp)?;
            if entries.len() != d {
                return Err(err(
                    &rp,
                    format!("expected {d} products, found {}", entries.len()),
                ));
            }
            for (j, e) in entries.iter().enumerate() {
                let v = rd.vector(e, d, &format!("{rp}[{j}]"))?;
                for (k, x) in v.into_iter().enumerate() {
                    consts[(k * d + i) * d + j] = x;
                }
            }
        }
        mult.push(Bilinear::from_constants(field, d, d, d, &consts)?);
    }

    let comul_vals = pair_map(need("comul")?, n, "comul")?;
    let comul = all_pairs(n)
        .into_iter()
        .zip(comul_vals)
        .map(|((a, b), v)| {
            rd.matrix(
                v,
                dims[a] * dims[b],
                dims[group.mul(a, b)],
                &format!("comul[\"{a},{b}\"]"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let one = group.identity();
    let counit = rd.vector(need("counit")?, dims[one], "counit")?;
    let anti = array(need("antipode")?, "antipode")?;
    if anti.len() != n {
        return Err(err(
            "antipode",
            format!("expected {n} matrices, found {}", anti.len()),
        ));
    }
    let antipode = anti
        .iter()
        .enumerate()
        .map(|(a, v)| rd.matrix(v, dims[group.inv(a)], dims[a], &format!("antipode[{a}]")))
        .collect::<Result<Vec<_>>>()?;
    let hopf = HopfPiData::from_parts(HopfParts {
        group: group.clone(),
        field,
        dims: dims.clone(),
        mult,
        unit,
        comul,
        counit,
        antipode,
    })
    .map_err(|e| err("$", e))?;

    let crossing = match obj.get("crossing") {
        None => None,
        Some(v) => {
            let maps = all_pairs(n)
                .into_iter()
                .zip(pair_map(v, n, "crossing")?)
                .map(|((b, a), v)| {
                    rd.matrix(
                        v,
                        dims[group.conjugate(b, a)],
                        dims[a],
                        &format!("crossing[\"{b},{a}\"]"),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            Some(Crossing::new(&hopf, maps).map_err(|e| err("crossing", e))?)
        }
    };
    let read_r = |key: &str| -> Result<Option<RMatrix>> {
        match obj.get(key) {
            None => Ok(None),
            Some(v) => {
                let entries = all_pairs(n)
                    .into_iter()
                    .zip(pair_map(v, n, key)?)
                    .map(|((a, b), v)| {
                        rd.vector(v, dims[a] * dims[b], &format!("{key}[\"{a},{b}\"]"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some(RMatrix::new(&hopf, entries).map_err(|e| err(key, e))?))
            }
        }
    };
    let rmatrix = read_r("rmatrix")?;
    let rmatrix_inverse = read_r("rmatrix_inverse")?;
    let twist = match obj.get("twist") {
        None => None,
        Some(v) => {
            let items = array(v, "twist")?;
            if items.len() != n {
                return Err(err(
                    "twist",
                    format!("expected {n} vectors, found {}", items.len()),
                ));
            }
            Some(
                items
                    .iter()
                    .enumerate()
                    .map(|(a, x)| rd.vector(x, dims[a], &format!("twist[{a}]")))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    if rmatrix_inverse.is_some() && rmatrix.is_none() {
        return Err(err("rmatrix_inverse", "given without \"rmatrix\""));
    }
    if twist.is_some() && rmatrix.is_none() {
        return Err(err("twist", "given without \"rmatrix\""));
    }
    Ok(Instance {
        hopf,
        crossing,
        rmatrix,
        rmatrix_inverse,
        twist,
    })
}

fn scalar_text(s: &Scalar) -> String {
    match s {
        Scalar::Rational(_) => format!("\"{s}\""),
        Scalar::Modular { .. } => s.to_string(),
    }
}

fn vector_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(scalar_text).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix_text(m: &LinearMap, indent: usize) -> String {
    if m.rows() == 0 {
        return "[]".into();
    }
    let pad = " ".repeat(indent + 2);
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            format!(
                "{pad}{}",
                vector_text(
                    &(0..m.cols())
                        .map(|j| m.get(i, j).clone())
                        .collect::<Vec<_>>()
                )
            )
        })
        .collect();
    format!("[\n{}\n{}]", rows.join(",\n"), " ".repeat(indent))
}

fn list_text(items: Vec<String>, indent: usize) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    let pad = " ".repeat(indent + 2);
    let body: Vec<String> = items.into_iter().map(|s| format!("{pad}{s}")).collect();
    format!("[\n{}\n{}]", body.join(",\n"), " ".repeat(indent))
}

fn pair_text(n: usize, indent: usize, mut value: impl FnMut(usize, usize) -> String) -> String {
    let pad = " ".repeat(indent + 2);
    let body: Vec<String> = all_pairs(n)
        .into_iter()
        .map(|(a, b)| format!("{pad}\"{a},{b}\": {}", value(a, b)))
        .collect();
    format!("{{\n{}\n{}}}", body.join(",\n"), " ".repeat(indent))
}

/// Writes the canonical form of an instance.
pub fn emit(inst: &Instance) -> String {
    let h = &inst.hopf;
    let g = h.group();
    let n = h.order();
    let mut out = String::from("{\n");
    let mut fields: Vec<(&str, String)> = Vec::new();
    fields.push((
        "field",
        match h.field() {
            Field::Rational => "\"rational\"".into(),
            Field::Prime(p) => format!("{{\"gf\": {p}}}"),
        },
    ));
    let rows: Vec<String> = g
        .table()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    fields.push(("group", list_text(rows, 2)));
    fields.push((
        "dims",
        format!(
            "[{}]",
            h.dims()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ));
    let comps: Vec<String> = (0..n)
        .map(|a| {
            let d = h.dim(a);
            let m = h.mult(a);
            let rows: Vec<String> = (0..d)
                .map(|i| {
                    let prods: Vec<String> = (0..d)
                        .map(|j| {
                            vector_text(&(0..d).map(|k| m.constant(k, i, j)).collect::<Vec<_>>())
                        })
                        .collect();
                    format!("[{}]", prods.join(", "))
                })
                .collect();
            format!(
                "{{\n      \"unit\": {},\n      \"mult\": {}\n    }}",
                vector_text(h.unit(a)),
                list_text(rows, 6)
            )
        })
        .collect();
    fields.push(("algebra", list_text(comps, 2)));
    fields.push((
        "comul",
        pair_text(n, 2, |a, b| matrix_text(h.comul(a, b), 4)),
    ));
    fields.push(("counit", vector_text(h.counit())));
    fields.push((
        "antipode",
        list_text((0..n).map(|a| matrix_text(h.antipode(a), 4)).collect(), 2),
    ));
    if let Some(c) = &inst.crossing {
        fields.push((
            "crossing",
            pair_text(n, 2, |b, a| matrix_text(c.map(b, a), 4)),
        ));
    }
    if let Some(r) = &inst.rmatrix {
        fields.push(("rmatrix", pair_text(n, 2, |a, b| vector_text(r.get(a, b)))));
    }
    if let Some(r) = &inst.rmatrix_inverse {
        fields.push((
            "rmatrix_inverse",
            pair_text(n, 2, |a, b| vector_text(r.get(a, b))),
        ));
    }
    if let Some(t) = &inst.twist {
        fields.push((
            "twist",
            list_text(t.iter().map(|v| vector_text(v)).collect(), 2),
        ));
    }
    let body: Vec<String> = fields
        .into_iter()
        .map(|(k, v)| format!("  \"{k}\": {v}"))
        .collect();
    let _ = write!(out, "{}\n}}\n", body.join(",\n"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn zoo() -> Vec<Instance> {
        let q = Field::Rational;
        let (c, phi) = instances::constant_z3_inversion(q).unwrap();
        let (sw, sphi) = instances::constant_sweedler_z2(q).unwrap();
        let r = RMatrix::constant(&sw, &instances::sweedler_r(q, &q.from_i64(1)).unwrap()).unwrap();
        vec![
            Instance::plain(instances::trivial_instance(q, &FiniteGroup::symmetric3())),
            Instance::plain(instances::sweedler(q).unwrap()),
            Instance::plain(instances::group_algebra(
                Field::prime(3).unwrap(),
                &FiniteGroup::cyclic(3),
            )),
            Instance::plain(instances::z4_supported_on_z2(q)),
            Instance {
                crossing: Some(phi),
                ..Instance::plain(c)
            },
            Instance {
                crossing: Some(sphi),
                rmatrix: Some(r),
                twist: Some(vec![vec![q.one(), q.zero(), q.zero(), q.zero()]; 2]),
                ..Instance::plain(sw)
            },
        ]
    }

    #[test]
    fn emit_parse_round_trip() {
        for inst in zoo() {
            let text = emit(&inst);
            let back = parse(&text).unwrap();
            assert_eq!(back, inst);
            assert_eq!(emit(&back), text);
        }
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let text = emit(&zoo()[1]).replacen("\"-1\"", "\"1/0\"", 1);
        let e = parse(&text).unwrap_err();
        assert_eq!(
            e.to_string(),
            "parse error: at algebra[0].mult[2][1][3]: zero denominator in \"1/0\""
        );
    }

    #[test]
    fn missing_and_unknown_keys_are_located() {
        let text = emit(&zoo()[0]);
        let e = parse(&text.replacen("\"counit\"", "\"counti\"", 1)).unwrap_err();
        assert!(e.to_string().contains("counti"), "{e}");
        let v: Value = serde_json::from_str(&text).unwrap();
        let mut o = v.as_object().unwrap().clone();
        o.remove("comul");
        let e = parse(&Value::Object(o).to_string()).unwrap_err();
        assert!(e.to_string().contains("comul"), "{e}");
    }

    #[test]
    fn wrong_shape_is_located() {
        let text = emit(&zoo()[1]);
        let e = parse(&text.replacen("\"dims\": [4]", "\"dims\": [3]", 1)).unwrap_err();
        assert!(e.to_string().contains("algebra[0]"), "{e}");
    }

    #[test]
    fn syntax_error_reports_line() {
        let e = parse("{\n  \"field\": \"rational\",\n  oops\n}").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
    }

    #[test]
    fn prime_field_requires_integers() {
        let text = emit(&zoo()[2]).replacen("1", "\"1\"", 1);
        assert!(parse(&text).is_err());
    }

    #[test]
    fn rational_scalars_are_reduced_on_read() {
        let text = emit(&zoo()[1]).replacen("\"1\"", "\"2/2\"", 1);
        let inst = parse(&text).unwrap();
        assert_eq!(inst, zoo()[1]);
    }
}
