//! Plain-text formats for arrangements, tope graphs and certificates.

use std::fmt::Write as _;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::graph::TopeGraph;
use crate::hamilton::HamiltonCertificate;
use crate::scalar::{is_square_free, parse_scalar, FieldTag};
use crate::tope::Tope;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut dim: Option<usize> = None;
    let mut field: Option<FieldTag> = None;
    let mut normals = Vec::new();
    for (no, line) in content_lines(text) {
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "dim" => {
                let n = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .filter(|&n: &usize| n > 0)
                    .ok_or_else(|| parse_error(no, "expected `dim <n>`"))?;
                dim = Some(n);
            }
            "field" => {
                let tag = match (words.next(), words.next()) {
                    (Some("rational"), None) => FieldTag::Rational,
                    (Some("quadratic"), Some(d)) => {
                        let d: u32 = d.parse().map_err(|_| parse_error(no, format!("bad radicand `{d}`")))?;
                        if !is_square_free(d) {
                            return Err(Error::UnsupportedField(format!(
                                "radicand {d} is not a square-free integer above 1"
                            )));
                        }
                        FieldTag::Quadratic(d)
                    }
                    _ => return Err(parse_error(no, "expected `field rational` or `field quadratic <d>`")),
                };
                field = Some(tag);
            }
            "normal" => {
                let n = dim.ok_or_else(|| parse_error(no, "`normal` before `dim`"))?;
                let f = field.ok_or_else(|| parse_error(no, "`normal` before `field`"))?;
                let coeffs = words
                    .map(|w| parse_scalar(w, f).map_err(|m| parse_error(no, m)))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != n {
                    return Err(parse_error(no, format!("{} coefficients, expected {n}", coeffs.len())));
                }
                normals.push(coeffs);
            }
            other => return Err(parse_error(no, format!("unknown keyword `{other}`"))),
        }
    }
    let dim = dim.ok_or_else(|| parse_error(0, "missing `dim`"))?;
    if field.is_none() {
        return Err(parse_error(0, "missing `field`"));
    }
    Arrangement::new(dim, normals)
}

pub fn write_arrangement(a: &Arrangement) -> String {
    let mut out = format!("dim {}\nfield {}\n", a.dim(), a.field());
    for h in a.hyperplanes() {
        let coeffs: Vec<String> = h.normal().iter().map(ToString::to_string).collect();
        writeln!(out, "normal {}", coeffs.join(" ")).unwrap();
    }
    out
}

pub fn write_graph(g: &TopeGraph) -> String {
    let mut out = format!("topes {} edges {} m {}\n", g.len(), g.edges().len(), g.m());
    for t in g.topes() {
        writeln!(out, "{t}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.a, e.b, e.kind).unwrap();
    }
    out
}

/// Reads a graph file; the stored edge types must match the topes.
pub fn parse_graph(text: &str) -> Result<TopeGraph> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| parse_error(0, "empty graph file"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (t, e, m) = match words.as_slice() {
        ["topes", t, "edges", e, "m", m] => (
            t.parse::<usize>().map_err(|_| parse_error(no, "bad tope count"))?,
            e.parse::<usize>().map_err(|_| parse_error(no, "bad edge count"))?,
            m.parse::<usize>()
                .map_err(|_| parse_error(no, "bad hyperplane count"))?,
        ),
        _ => return Err(parse_error(no, "expected `topes <T> edges <E> m <M>`")),
    };
    let mut topes = Vec::with_capacity(t);
    for _ in 0..t {
        let (no, line) = lines.next().ok_or_else(|| parse_error(0, "missing tope lines"))?;
        let tope: Tope = line
            .parse()
            .map_err(|_| parse_error(no, format!("bad tope `{line}`")))?;
        if tope.len() != m {
            return Err(parse_error(no, format!("tope of length {}, expected {m}", tope.len())));
        }
        topes.push(tope);
    }
    let mut pairs = Vec::with_capacity(e);
    let mut kinds = Vec::with_capacity(e);
    for _ in 0..e {
        let (no, line) = lines.next().ok_or_else(|| parse_error(0, "missing edge lines"))?;
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| parse_error(no, format!("bad edge `{line}`"))))
            .collect::<Result<_>>()?;
        let [a, b, k] = nums[..] else {
            return Err(parse_error(no, "expected `<a> <b> <type>`"));
        };
        if a >= t || b >= t {
            return Err(parse_error(no, "edge endpoint out of range"));
        }
        pairs.push((a, b));
        kinds.push((topes[a].clone(), topes[b].clone(), k));
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_error(no, "trailing content"));
    }
    let g = TopeGraph::new(m, topes, &pairs)?;
    for (x, y, k) in kinds {
        let (a, b) = (g.id(&x).unwrap(), g.id(&y).unwrap());
        if g.edge_type(a, b) != Some(k) {
            return Err(Error::InvalidGraph(format!(
                "edge {x} {y} has type {:?}, file says {k}",
                g.edge_type(a, b)
            )));
        }
    }
    Ok(g)
}

pub fn write_certificate(c: &HamiltonCertificate) -> String {
    let mut out = format!("cycle m {} len {} start {}\n", c.m(), c.len(), c.start());
    for chunk in c.flips().chunks(20) {
        let words: Vec<String> = chunk.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<HamiltonCertificate> {
    let mut lines = content_lines(text);
    let (no, header) = lines.next().ok_or_else(|| parse_error(0, "empty certificate"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (m, len, start) = match words.as_slice() {
        ["cycle", "m", m, "len", l, "start", s] => (
            m.parse::<usize>().map_err(|_| parse_error(no, "bad m"))?,
            l.parse::<usize>().map_err(|_| parse_error(no, "bad len"))?,
            s.parse::<Tope>().map_err(|_| parse_error(no, "bad start tope"))?,
        ),
        _ => return Err(parse_error(no, "expected `cycle m <m> len <L> start <tope>`")),
    };
    let mut flips = Vec::with_capacity(len);
    for (no, line) in lines {
        for w in line.split_whitespace() {
            flips.push(w.parse().map_err(|_| parse_error(no, format!("bad flip `{w}`")))?);
        }
    }
    if flips.len() != len {
        return Err(parse_error(
            no,
            format!("header says {len} flips, found {}", flips.len()),
        ));
    }
    HamiltonCertificate::new(m, start, flips)
}
