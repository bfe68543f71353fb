//! Plain-text point files: one point per line as `x y` decimal literals,
//! `#` starts a comment, and an optional trailing `label=<name>` names the
//! point. The format is diff-friendly and hand-editable; emitting uses the
//! shortest decimal that round-trips, so parse(emit(s)) is the identity.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

#[derive(Clone, Debug, Default)]
pub struct PointFile {
    pub points: Vec<Point>,
    pub labels: BTreeMap<String, usize>,
}

impl PointFile {
    pub fn into_point_set(self) -> Result<(PointSet, BTreeMap<String, usize>)> {
        Ok((PointSet::new(self.points)?, self.labels))
    }
}

pub fn parse_points(text: &str) -> Result<PointFile> {
    let mut out = PointFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(Error::Parse {
                line,
                message: format!(
                    "expected `x y` with optional `label=name`, got {} tokens",
                    tokens.len()
                ),
            });
        }
        let x: f64 = tokens[0].parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad x coordinate {:?}", tokens[0]),
        })?;
        let y: f64 = tokens[1].parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad y coordinate {:?}", tokens[1]),
        })?;
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Parse {
                line,
                message: "coordinates must be finite".to_string(),
            });
        }
        if let Some(tok) = tokens.get(2) {
            let name = tok.strip_prefix("label=").ok_or_else(|| Error::Parse {
                line,
                message: format!("unexpected token {tok:?}, expected label=name"),
            })?;
            if name.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "empty label".to_string(),
                });
            }
            if out.labels.insert(name.to_string(), out.points.len()).is_some() {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate label {name:?}"),
                });
            }
        }
        out.points.push(Point::new(x, y));
    }
    Ok(out)
}

pub fn emit_points(ps: &PointSet, labels: &BTreeMap<String, usize>) -> String {
    let mut by_index: BTreeMap<usize, &str> = BTreeMap::new();
    for (name, &i) in labels {
        by_index.entry(i).or_insert(name);
    }
    let mut out = String::new();
    for (i, p) in ps.iter().enumerate() {
        out.push_str(&format!("{} {}", p.x, p.y));
        if let Some(name) = by_index.get(&i) {
            out.push_str(&format!(" label={name}"));
        }
        out.push('\n');
    }
    out
}
