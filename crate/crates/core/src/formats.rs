//! On-disk formats.
//!
//! Samples are JSON Lines: a header object followed by one example per line.
//!
//! ```text
//! {"kind":"grid","d":16}
//! {"x":3,"y":7,"label":1}
//! ```
//!
//! ```text
//! {"kind":"bool","vars":4}
//! {"bits":"0110","label":0}
//! ```
//!
//! Hypotheses are expression trees; rationals are `[numerator, denominator]`
//! pairs of JSON integers of any size.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Number, Value};

use crate::concepts::{GridPoint, GridSpec, Halfplane, HypothesisExpr, LabeledSample, Literal, Predicate, Triangle};
use crate::error::{Error, Result};
use crate::geom::Rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Header {
    Grid { d: u32 },
    Bool { vars: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GridRow {
    x: u32,
    y: u32,
    label: u8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BoolRow {
    bits: String,
    label: u8,
}

fn bits_string(row: &[bool]) -> String {
    row.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_label(v: u8, line: usize) -> Result<bool> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::Parse(format!("line {line}: label must be 0 or 1"))),
    }
}

/// Serialises a sample, header first.
pub fn sample_to_jsonl(s: &LabeledSample) -> String {
    sample_to_jsonl_with_meta(s, None)
}

/// As [`sample_to_jsonl`], with an optional `meta` object in the header.
/// Readers ignore it.
pub fn sample_to_jsonl_with_meta(s: &LabeledSample, meta: Option<&Value>) -> String {
    let mut out = String::new();
    let header = match s.domain() {
        crate::concepts::Domain::Grid(g) => Header::Grid { d: g.d() },
        crate::concepts::Domain::Bool { vars } => Header::Bool { vars },
    };
    let header = serde_json::to_string(&header).expect("header serialises");
    match meta {
        Some(m) => {
            out.push_str(&header[..header.len() - 1]);
            out.push_str(",\"meta\":");
            out.push_str(&m.to_string());
            out.push('}');
        }
        None => out.push_str(&header),
    }
    out.push('\n');
    let labels = s.labels();
    if let Some(points) = s.grid_points() {
        for (p, &l) in points.iter().zip(labels) {
            let row = GridRow { x: p.x, y: p.y, label: l as u8 };
            out.push_str(&serde_json::to_string(&row).expect("row serialises"));
            out.push('\n');
        }
    } else if let Some(rows) = s.bool_rows() {
        for (r, &l) in rows.iter().zip(labels) {
            let row = BoolRow { bits: bits_string(r), label: l as u8 };
            out.push_str(&serde_json::to_string(&row).expect("row serialises"));
            out.push('\n');
        }
    }
    out
}

pub fn sample_from_jsonl(text: &str) -> Result<LabeledSample> {
    sample_from_reader(text.as_bytes())
}

pub fn sample_from_reader<R: BufRead>(reader: R) -> Result<LabeledSample> {
    let mut lines = reader.lines().enumerate().filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
    let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty sample file".into()))?;
    let first = first.map_err(|e| Error::Parse(e.to_string()))?;
    let header: Header = serde_json::from_str(&first).map_err(|e| Error::Parse(format!("line 1: bad header: {e}")))?;
    match header {
        Header::Grid { d } => {
            let grid = GridSpec::new(d)?;
            let (mut pts, mut labels) = (Vec::new(), Vec::new());
            for (i, line) in lines {
                let line = line.map_err(|e| Error::Parse(e.to_string()))?;
                let row: GridRow =
                    serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
                pts.push(GridPoint::new(row.x, row.y));
                labels.push(parse_label(row.label, i + 1)?);
            }
            LabeledSample::grid(grid, pts, labels)
        }
        Header::Bool { vars } => {
            let (mut rows, mut labels) = (Vec::new(), Vec::new());
            for (i, line) in lines {
                let line = line.map_err(|e| Error::Parse(e.to_string()))?;
                let row: BoolRow =
                    serde_json::from_str(&line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
                let bits = row
                    .bits
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Parse(format!("line {}: bits must be 0/1", i + 1))),
                    })
                    .collect::<Result<Vec<bool>>>()?;
                rows.push(bits);
                labels.push(parse_label(row.label, i + 1)?);
            }
            LabeledSample::boolean(vars, rows, labels)
        }
    }
}

pub fn read_sample(path: &Path) -> Result<LabeledSample> {
    let f = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    sample_from_reader(BufReader::new(f))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}

fn big_number(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn rational_json(r: &Rational) -> Value {
    json!([big_number(r.numer()), big_number(r.denom())])
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse("rational must be [num, den]".into()))?;
    let int = |v: &Value| -> Result<BigInt> {
        match v {
            Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| Error::Parse(format!("not an integer: {n}"))),
            _ => Err(Error::Parse("rational parts must be integers".into())),
        }
    };
    let den = int(&pair[1])?;
    if den == BigInt::from(0) {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(int(&pair[0])?, den))
}

pub fn halfplane_to_json(h: &Halfplane) -> Value {
    json!({ "d": h.grid().d(), "a_hat": rational_json(h.a_hat()), "b": rational_json(h.b()) })
}

pub fn halfplane_from_json(v: &Value) -> Result<Halfplane> {
    let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| Error::Parse("halfplane needs an integer d".into()))?;
    let grid = GridSpec::new(u32::try_from(d).map_err(|_| Error::Parse("d too large".into()))?)?;
    let a = rational_from_json(v.get("a_hat").ok_or_else(|| Error::Parse("halfplane needs a_hat".into()))?)?;
    let b = rational_from_json(v.get("b").ok_or_else(|| Error::Parse("halfplane needs b".into()))?)?;
    Halfplane::new(grid, a, b)
}

pub fn predicate_to_json(p: &Predicate) -> Value {
    match p {
        Predicate::Literal(l) => json!({ "literal": { "var": l.var, "negated": l.negated } }),
        Predicate::Halfplane(h) => json!({ "halfplane": halfplane_to_json(h) }),
        Predicate::Triangle(t) => json!({ "triangle": t.sides.iter().map(halfplane_to_json).collect::<Vec<_>>() }),
    }
}

pub fn hypothesis_to_json(h: &HypothesisExpr) -> Value {
    match h {
        HypothesisExpr::And(c) => json!({ "and": c.iter().map(hypothesis_to_json).collect::<Vec<_>>() }),
        HypothesisExpr::Or(c) => json!({ "or": c.iter().map(hypothesis_to_json).collect::<Vec<_>>() }),
        HypothesisExpr::Leaf(p) => predicate_to_json(p),
    }
}

fn single_key(v: &Value) -> Result<(&str, &Value)> {
    let obj: &Map<String, Value> = v.as_object().ok_or_else(|| Error::Parse("hypothesis node must be an object".into()))?;
    if obj.len() != 1 {
        return Err(Error::Parse("hypothesis node must have exactly one key".into()));
    }
    let (k, v) = obj.iter().next().expect("one entry");
    Ok((k.as_str(), v))
}

pub fn hypothesis_from_json(v: &Value) -> Result<HypothesisExpr> {
    let (key, body) = single_key(v)?;
    let children = |b: &Value| -> Result<Vec<HypothesisExpr>> {
        b.as_array().ok_or_else(|| Error::Parse(format!("{key} takes a list")))?.iter().map(hypothesis_from_json).collect()
    };
    Ok(match key {
        "and" => HypothesisExpr::And(children(body)?),
        "or" => HypothesisExpr::Or(children(body)?),
        "literal" => {
            let var = body.get("var").and_then(Value::as_u64).ok_or_else(|| Error::Parse("literal needs var".into()))?;
            let negated = body.get("negated").and_then(Value::as_bool).unwrap_or(false);
            HypothesisExpr::Leaf(Predicate::Literal(Literal::new(var as usize, negated)))
        }
        "halfplane" => HypothesisExpr::Leaf(Predicate::Halfplane(halfplane_from_json(body)?)),
        "triangle" => {
            let sides = body
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse("triangle takes three halfplanes".into()))?
                .iter()
                .map(halfplane_from_json)
                .collect::<Result<Vec<_>>>()?;
            let sides: [Halfplane; 3] = sides.try_into().expect("three sides");
            HypothesisExpr::Leaf(Predicate::Triangle(Triangle { sides }))
        }
        other => return Err(Error::Parse(format!("unknown hypothesis node `{other}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::Side;
    use crate::geom::{rat, rat_frac};

    #[test]
    fn grid_sample_round_trip() {
        let grid = GridSpec::new(5).unwrap();
        let s = LabeledSample::grid(grid, vec![GridPoint::new(1, 2), GridPoint::new(5, 0)], vec![true, false]).unwrap();
        let text = sample_to_jsonl(&s);
        assert_eq!(text.lines().next().unwrap(), r#"{"kind":"grid","d":5}"#);
        assert_eq!(sample_from_jsonl(&text).unwrap(), s);
    }

    #[test]
    fn bool_sample_round_trip() {
        let s = LabeledSample::boolean(3, vec![vec![true, false, true]], vec![false]).unwrap();
        let text = sample_to_jsonl(&s);
        assert!(text.contains(r#""bits":"101""#));
        assert_eq!(sample_from_jsonl(&text).unwrap(), s);
    }

    #[test]
    fn header_meta_is_ignored_by_reader() {
        let s = LabeledSample::boolean(2, vec![vec![true, false]], vec![true]).unwrap();
        let text = sample_to_jsonl_with_meta(&s, Some(&json!({"seed": 3})));
        assert!(text.starts_with("{\"kind\":\"bool\",\"vars\":2,\"meta\":{\"seed\":3}}"));
        assert_eq!(sample_from_jsonl(&text).unwrap(), s);
    }

    #[test]
    fn rejects_malformed_samples() {
        assert!(sample_from_jsonl("").is_err());
        assert!(sample_from_jsonl("{\"kind\":\"grid\",\"d\":0}\n").is_err());
        assert!(sample_from_jsonl("{\"kind\":\"grid\",\"d\":4}\n{\"x\":9,\"y\":0,\"label\":1}\n").is_err());
        assert!(sample_from_jsonl("{\"kind\":\"bool\",\"vars\":2}\n{\"bits\":\"0x\",\"label\":1}\n").is_err());
        assert!(sample_from_jsonl("{\"kind\":\"bool\",\"vars\":2}\n{\"bits\":\"01\",\"label\":2}\n").is_err());
    }

    #[test]
    fn hypothesis_round_trip_with_big_rationals() {
        let grid = GridSpec::new(1 << 15).unwrap();
        let big = Rational::new(BigInt::from(3) << 100u32, (BigInt::from(1) << 90u32) + 7);
        let h1 = Halfplane::from_decoded(grid, big.clone(), rat_frac(-5, 3), Side::Below).unwrap();
        let h2 = Halfplane::new(grid, rat(0), rat(1)).unwrap();
        let tri = Triangle { sides: [h1.clone(), h2.clone(), h1.clone()] };
        let h = HypothesisExpr::Or(vec![
            HypothesisExpr::And(vec![HypothesisExpr::leaf(Predicate::Halfplane(h1)), HypothesisExpr::leaf(Predicate::Halfplane(h2))]),
            HypothesisExpr::leaf(Predicate::Triangle(tri)),
            HypothesisExpr::leaf(Predicate::Literal(Literal::new(2, true))),
        ]);
        let text = serde_json::to_string(&hypothesis_to_json(&h)).unwrap();
        let back = hypothesis_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, h);
    }
}
