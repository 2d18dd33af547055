//! Text formats for point sets and box unions.
//!
//! Point-set files: a header line `# group=<kind> d=<dim>` followed by one
//! element per line, coordinates space-separated, integers or rationals
//! written as `p/q`. Box-union files use the same header with one box per
//! line, `lo1 hi1 lo2 hi2 …`.

use crate::boxes::{BoxUnion, RBox};
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::rat::{parse_rat, Rat};
use crate::sets::GSet;

/// Serialize a point set with its group header.
pub fn write_points(kind: &str, dim: usize, pts: &PointSet) -> String {
    let mut out = format!("# group={kind} d={dim}\n");
    for p in pts.iter() {
        let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

/// Serialize a box union with its group header.
pub fn write_boxes(kind: &str, bu: &BoxUnion) -> String {
    let mut out = format!("# group={kind} d={}\n", bu.dim());
    for b in bu.boxes() {
        let mut coords = Vec::new();
        for i in 0..bu.dim() {
            coords.push(fmt_rat(&b.lo[i]));
            coords.push(fmt_rat(&b.hi[i]));
        }
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_gset(kind: &str, dim: usize, s: &GSet) -> String {
    match s {
        GSet::Points(p) => write_points(kind, dim, p),
        GSet::Boxes(b) => write_boxes(kind, b),
    }
}

fn fmt_rat(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parsed header of either format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub kind: String,
    pub dim: usize,
}

fn parse_header(line: &str) -> Result<Header> {
    let body = line
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse("missing `# group=<kind> d=<dim>` header".into()))?;
    let mut kind = None;
    let mut dim = None;
    for token in body.split_whitespace() {
        if let Some(v) = token.strip_prefix("group=") {
            kind = Some(v.to_string());
        } else if let Some(v) = token.strip_prefix("d=") {
            dim = v.parse::<usize>().ok();
        }
    }
    match (kind, dim) {
        (Some(kind), Some(dim)) if dim > 0 => Ok(Header { kind, dim }),
        _ => Err(Error::Parse("malformed header line".into())),
    }
}

fn data_lines(text: &str) -> Result<(Header, Vec<&str>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = parse_header(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty file".into()))?
            .trim(),
    )?;
    Ok((header, lines.collect()))
}

/// Parse a point-set file; all coordinates must be integers.
pub fn read_points(text: &str) -> Result<(Header, PointSet)> {
    let (header, lines) = data_lines(text)?;
    let mut pts = Vec::new();
    for line in lines {
        let coords: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer coordinate `{t}`")))
            })
            .collect::<Result<_>>()?;
        if coords.len() != header.dim {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                header.dim,
                coords.len()
            )));
        }
        pts.push(coords);
    }
    Ok((header, PointSet::new(pts)))
}

/// Parse a box-union file; coordinates are rationals (`p/q`, integer, or
/// exact decimal literal).
pub fn read_boxes(text: &str) -> Result<(Header, BoxUnion)> {
    let (header, lines) = data_lines(text)?;
    let mut boxes = Vec::new();
    for line in lines {
        let coords: Vec<Rat> = line
            .split_whitespace()
            .map(|t| parse_rat(t).ok_or_else(|| Error::Parse(format!("bad rational `{t}`"))))
            .collect::<Result<_>>()?;
        if coords.len() != 2 * header.dim {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                2 * header.dim,
                coords.len()
            )));
        }
        let mut lo = Vec::with_capacity(header.dim);
        let mut hi = Vec::with_capacity(header.dim);
        for i in 0..header.dim {
            lo.push(coords[2 * i].clone());
            hi.push(coords[2 * i + 1].clone());
        }
        boxes.push(RBox::new(lo, hi));
    }
    let bu = BoxUnion::new(header.dim, boxes);
    Ok((header, bu))
}
