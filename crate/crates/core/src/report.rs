//! Stable serialization: JSON with every float at 17 significant digits,
//! and columnar CSV for orbits.

use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::Value;

use crate::dynamics::OrbitRecord;
use crate::error::{Error, Result};
use crate::point::Point;

/// `{:.16e}`, or `null` for NaN and infinities.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n("  ", n));
    match v {
        Value::Number(n) if n.is_f64() => out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN))),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Pretty JSON with fixed float formatting; object keys keep struct order.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

/// CSV header for an orbit in complex dimension `dim`.
pub fn orbit_csv_header(dim: usize) -> String {
    let mut h = String::from("step");
    for k in 0..dim {
        let _ = write!(h, ",re{k},im{k}");
    }
    h.push_str(",margin");
    h
}

/// One row per iterate, step 0 being the start.
pub fn orbit_csv(rec: &OrbitRecord) -> String {
    let mut out = orbit_csv_header(rec.start.dim());
    out.push('\n');
    let rows = std::iter::once((&rec.start, rec.start_margin)).chain(rec.points.iter().zip(rec.margins.iter().copied()));
    for (step, (x, m)) in rows.enumerate() {
        let _ = write!(out, "{step}");
        for z in x.coords() {
            let _ = write!(out, ",{},{}", format_float(z.re), format_float(z.im));
        }
        let _ = writeln!(out, ",{}", format_float(m));
    }
    out
}

/// A parsed orbit CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRow {
    pub step: usize,
    pub point: Point,
    pub margin: f64,
}

/// Inverse of [`orbit_csv`].
pub fn parse_orbit_csv(text: &str) -> Result<Vec<OrbitRow>> {
    let bad = |msg: String| Error::InvalidArgument(format!("orbit csv: {msg}"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
    let cols = header.split(',').count();
    if cols < 4 || cols % 2 != 0 || header != orbit_csv_header((cols - 2) / 2) {
        return Err(bad(format!("unexpected header {header:?}")));
    }
    let dim = (cols - 2) / 2;
    let num = |s: &str| -> Result<f64> {
        if s == "null" {
            return Ok(f64::NAN);
        }
        s.parse().map_err(|_| bad(format!("bad number {s:?}")))
    };
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != cols {
                return Err(bad(format!("row has {} fields, want {cols}", f.len())));
            }
            let step = f[0].parse().map_err(|_| bad(format!("bad step {:?}", f[0])))?;
            let coords = (0..dim).map(|k| Ok(C64::new(num(f[1 + 2 * k])?, num(f[2 + 2 * k])?))).collect::<Result<Vec<_>>>()?;
            Ok(OrbitRow { step, point: Point::new(&coords)?, margin: num(f[cols - 1])? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{Automorphism, GnAut};
    use crate::disc::MobiusTransform;
    use crate::dynamics::{iterate, Tolerances};
    use crate::point::Domain;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(f64::NAN), "null");
        let s = to_json_string(&serde_json::json!({"b": 1.5, "a": [1, 2.0e-300], "n": null, "t": "x"})).unwrap();
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"][1].as_f64(), Some(2.0e-300));
        assert_eq!(back["a"][0].as_u64(), Some(1));
        assert!(s.contains("1.5000000000000000e0"));
    }

    #[test]
    fn orbit_csv_round_trip() {
        let h = MobiusTransform::new(0.7, C64::new(0.3, -0.2)).unwrap();
        let f = Automorphism::Gn(GnAut::new(3, h).unwrap());
        let tol = Tolerances::default();
        let rec = iterate(&f, &Domain::G3.origin(), 50, &tol).unwrap();
        let text = orbit_csv(&rec);
        assert!(text.starts_with("step,re0,im0,re1,im1,re2,im2,margin\n"));
        let rows = parse_orbit_csv(&text).unwrap();
        assert_eq!(rows.len(), rec.len() + 1);
        assert_eq!(rows[0].point, rec.start);
        for (row, (x, m)) in rows[1..].iter().zip(rec.points.iter().zip(&rec.margins)) {
            assert_eq!(&row.point, x);
            assert_eq!(row.margin, *m);
        }
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(parse_orbit_csv("").is_err());
        assert!(parse_orbit_csv("step,a,b,margin\n").is_err());
        assert!(parse_orbit_csv("step,re0,im0,re1,im1,margin\n0,1,2,3\n").is_err());
    }
}
