use std::io::{self, Write};

use clap::ValueEnum;
use cubic_indec::bounds::Witness;
use cubic_indec::indecomposable::IndecDescriptor;
use cubic_indec::verify::CheckReport;
use serde_json::{json, Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One indecomposable class.
pub struct Row {
    family: String,
    a: i64,
    b: Option<i64>,
    descriptor: IndecDescriptor,
    coords: [String; 3],
    element: String,
    norm: String,
    min_trace: Option<u64>,
    is_unit: bool,
}

impl Row {
    pub fn new(d: &IndecDescriptor, min_trace: Option<u64>) -> Self {
        let p = d.params();
        let e = d.to_element();
        Row {
            family: p.family().to_string(),
            a: p.a(),
            b: p.b(),
            descriptor: *d,
            coords: e.coords().clone().map(|c| c.to_string()),
            element: e.to_string(),
            norm: e.norm().to_string(),
            min_trace,
            is_unit: e.is_unit(),
        }
    }
}

pub struct WitnessRow {
    n: u64,
    a: i64,
    b: i64,
    descriptor: IndecDescriptor,
    coords: [String; 3],
    achieved: u64,
    confirmed: Option<u64>,
    pub exceeds_n: bool,
}

impl WitnessRow {
    pub fn new(n: u64, w: &Witness) -> Self {
        WitnessRow {
            n,
            a: w.params.a(),
            b: w.params.b().unwrap_or_default(),
            descriptor: w.descriptor,
            coords: w.descriptor.to_element().coords().clone().map(|c| c.to_string()),
            achieved: w.achieved,
            confirmed: w.confirmed,
            exceeds_n: w.confirmed.unwrap_or(w.achieved) > n,
        }
    }
}

/// Decimal integer of any size as a JSON number.
fn number(decimal: &str) -> Value {
    Value::Number(decimal.parse::<Number>().expect("decimal integer"))
}

fn coords_json(coords: &[String; 3]) -> Value {
    Value::Array(coords.iter().map(|c| number(c)).collect())
}

fn row_json(r: &Row) -> Value {
    let mut m = Map::new();
    m.insert("family".into(), json!(r.family));
    m.insert("a".into(), json!(r.a));
    if let Some(b) = r.b {
        m.insert("b".into(), json!(b));
    }
    m.insert("descriptor".into(), serde_json::to_value(r.descriptor.variant()).expect("plain enum"));
    m.insert("coords".into(), coords_json(&r.coords));
    m.insert("norm".into(), number(&r.norm));
    m.insert("min_trace".into(), json!(r.min_trace));
    m.insert("is_unit".into(), json!(r.is_unit));
    Value::Object(m)
}

fn to_io(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn write_rows(out: &mut impl Write, format: Format, rows: &[Row]) -> io::Result<()> {
    match format {
        Format::Json => {
            let all: Vec<Value> = rows.iter().map(row_json).collect();
            serde_json::to_writer_pretty(&mut *out, &all)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["family", "a", "b", "descriptor", "coords", "norm", "min_trace", "is_unit"])
                .map_err(to_io)?;
            for r in rows {
                w.write_record([
                    r.family.clone(),
                    r.a.to_string(),
                    r.b.map(|b| b.to_string()).unwrap_or_default(),
                    r.descriptor.to_string(),
                    r.coords.join(" "),
                    r.norm.clone(),
                    r.min_trace.map(|t| t.to_string()).unwrap_or_default(),
                    r.is_unit.to_string(),
                ])
                .map_err(to_io)?;
            }
            w.flush()
        }
        Format::Text => {
            let mut last = None;
            for r in rows {
                let order = (r.family.clone(), r.a, r.b);
                if last.as_ref() != Some(&order) {
                    match r.b {
                        Some(b) => writeln!(out, "{} a={} b={}", r.family, r.a, b)?,
                        None => writeln!(out, "{} a={}", r.family, r.a)?,
                    }
                    last = Some(order);
                }
                let trace = r.min_trace.map_or("-".to_string(), |t| t.to_string());
                let unit = if r.is_unit { "  unit" } else { "" };
                writeln!(
                    out,
                    "  {:<14} {:<28} norm {:<8} min trace {}{}",
                    r.descriptor.to_string(),
                    r.element,
                    r.norm,
                    trace,
                    unit
                )?;
            }
            Ok(())
        }
    }
}

fn report_json(r: &CheckReport) -> Value {
    json!({
        "id": r.id,
        "title": r.title,
        "passed": r.passed(),
        "checks": r.checks,
        "failures": r.failures,
    })
}

pub fn write_reports(out: &mut impl Write, format: Format, reports: &[CheckReport]) -> io::Result<()> {
    match format {
        Format::Json => {
            let all: Vec<Value> = reports.iter().map(report_json).collect();
            serde_json::to_writer_pretty(&mut *out, &all)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "title", "passed", "checks", "failures"]).map_err(to_io)?;
            for r in reports {
                w.write_record([
                    r.id.to_string(),
                    r.title.clone(),
                    r.passed().to_string(),
                    r.checks.to_string(),
                    r.failures.join("; "),
                ])
                .map_err(to_io)?;
            }
            w.flush()
        }
        Format::Text => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
            Ok(())
        }
    }
}

pub fn write_witness(out: &mut impl Write, format: Format, w: &WitnessRow) -> io::Result<()> {
    match format {
        Format::Json => {
            let v = json!({
                "n": w.n,
                "family": "thomas",
                "a": w.a,
                "b": w.b,
                "descriptor": serde_json::to_value(w.descriptor.variant()).expect("plain enum"),
                "coords": coords_json(&w.coords),
                "achieved": w.achieved,
                "confirmed": w.confirmed,
                "exceeds_n": w.exceeds_n,
            });
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(out);
            wr.write_record(["n", "family", "a", "b", "descriptor", "coords", "achieved", "confirmed", "exceeds_n"])
                .map_err(to_io)?;
            wr.write_record([
                w.n.to_string(),
                "thomas".into(),
                w.a.to_string(),
                w.b.to_string(),
                w.descriptor.to_string(),
                w.coords.join(" "),
                w.achieved.to_string(),
                w.confirmed.map(|c| c.to_string()).unwrap_or_default(),
                w.exceeds_n.to_string(),
            ])
            .map_err(to_io)?;
            wr.flush()
        }
        Format::Text => {
            let confirmed = w.confirmed.map_or("not run".to_string(), |c| c.to_string());
            writeln!(
                out,
                "n={} thomas a={} b={} descriptor {} min trace {} (exhaustive: {}) achieved > n: {}",
                w.n, w.a, w.b, w.descriptor, w.achieved, confirmed, w.exceeds_n
            )
        }
    }
}
