//! Canonical serializations of computed artifacts.
//!
//! JSON output has sorted keys; rows follow the canonical object and
//! morphism order of their category, so equal inputs give equal bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::coend::Lift;
use crate::error::{Error, Result};
use crate::relative::Classification;
use crate::tuple::{gstar_nonzero_count, Gstar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected json, csv or dot"))),
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Malformed(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Malformed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Malformed(e.to_string()))
}

/// One morphism of a listed hom-set, in hom order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomRow {
    pub position: usize,
    pub morphism: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCensusRow {
    pub from: String,
    pub to: String,
    pub nonzero: usize,
    pub formula: usize,
}

/// Nonzero hom counts for every ordered pair of tuples, with the closed form beside them.
pub fn hom_census(g: &Gstar) -> Vec<HomCensusRow> {
    let c = g.category();
    let objects = g.tuples().objects();
    let mut rows = Vec::new();
    for (a, s) in objects.iter().enumerate() {
        for (b, t) in objects.iter().enumerate() {
            let formula = match (s.entries(), t.entries()) {
                (Some(n), Some(m)) => gstar_nonzero_count(n, m),
                _ => 0,
            };
            rows.push(HomCensusRow {
                from: s.to_string(),
                to: t.to_string(),
                nonzero: c.nonzero_hom(a, b).count(),
                formula,
            });
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LValueRow {
    pub object: String,
    /// Nonbase elements of `(LX) t`.
    pub size: usize,
    pub generators: usize,
}

pub fn l_values(lift: &Lift) -> Vec<LValueRow> {
    let c = lift.diagram().index();
    c.objects()
        .map(|t| LValueRow {
            object: c.object_name(t).to_string(),
            size: lift.diagram().size_at(t),
            generators: lift.presentation(t).generators.len(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub n: usize,
    pub k: usize,
    pub size: usize,
}

pub fn classification_levels(cl: &Classification) -> Vec<LevelRow> {
    let mut rows = Vec::new();
    for (n, row) in cl.diagram.sizes.iter().enumerate() {
        for (k, &size) in row.iter().enumerate() {
            rows.push(LevelRow { n, k, size });
        }
    }
    rows
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render_hom_census(rows: &[HomCensusRow], format: Format) -> Result<String> {
    match format {
        Format::Json => to_canonical_json(&rows),
        Format::Csv => to_csv(rows),
        Format::Dot => {
            let mut out = String::from("digraph hom_census {\n");
            for r in rows.iter().filter(|r| r.nonzero > 0) {
                writeln!(out, "  {} -> {} [label={}];", quote(&r.from), quote(&r.to), r.nonzero).unwrap();
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

pub fn render_l_values(rows: &[LValueRow], format: Format) -> Result<String> {
    match format {
        Format::Json => to_canonical_json(&rows),
        Format::Csv => to_csv(rows),
        Format::Dot => {
            let mut out = String::from("digraph l_values {\n");
            for r in rows {
                let label = format!("{}: {}", r.object, r.size);
                writeln!(out, "  {} [label={}];", quote(&r.object), quote(&label)).unwrap();
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

pub fn render_levels(rows: &[LevelRow], format: Format) -> Result<String> {
    match format {
        Format::Json => to_canonical_json(&rows),
        Format::Csv => to_csv(rows),
        Format::Dot => Err(Error::Parse("classification levels have no dot form".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeletal::Fskel;

    #[test]
    fn census_matches_formula_and_is_stable() {
        let g = Gstar::over(Fskel::new(2).unwrap(), 2).unwrap();
        let rows = hom_census(&g);
        assert_eq!(rows.len(), 64);
        assert!(rows.iter().all(|r| r.nonzero == r.formula));
        let a = render_hom_census(&rows, Format::Csv).unwrap();
        let b = render_hom_census(&hom_census(&g), Format::Csv).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("from,to,nonzero,formula\n"));
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert!("yaml".parse::<Format>().is_err());
    }
}
