use num_traits::Zero;

use super::diagram::Diagram;
use super::morphism::Morphism;
use super::word::{GeneratorTable, Word};
use super::DiagramError;
use crate::exact_linalg::{format_scalar, parse_scalar, Scalar};

/// One line `src=<word>; dst=<word>; edges=(i,j),...; coeff=p/q`.
pub fn format_diagram(table: &GeneratorTable, d: &Diagram, coeff: &Scalar) -> String {
    let edges: Vec<String> = d.edges().iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!(
        "src={}; dst={}; edges={}; coeff={}",
        table.format_word(&d.src),
        table.format_word(&d.dst),
        edges.join(","),
        format_scalar(coeff)
    )
}

struct Line {
    src: Word,
    dst: Word,
    edges: Vec<(usize, usize)>,
    coeff: Scalar,
}

fn parse_line(table: &GeneratorTable, line: &str) -> Result<Line, DiagramError> {
    let bad = |msg: &str| DiagramError::Parse(format!("{msg} in `{line}`"));
    let mut fields = [None, None, None, None];
    for part in line.split(';') {
        let (key, value) = part.split_once('=').ok_or_else(|| bad("missing `=`"))?;
        let slot = match key.trim() {
            "src" => 0,
            "dst" => 1,
            "edges" => 2,
            "coeff" => 3,
            other => return Err(bad(&format!("unknown field `{other}`"))),
        };
        if fields[slot].replace(value.trim()).is_some() {
            return Err(bad("repeated field"));
        }
    }
    let [Some(src), Some(dst), Some(edges), Some(coeff)] = fields else {
        return Err(bad("missing field"));
    };
    let src = table.parse_word(src)?;
    let dst = table.parse_word(dst)?;
    let coeff = parse_scalar(coeff).ok_or_else(|| bad("bad coefficient"))?;
    let mut pairs = Vec::new();
    let mut rest = edges.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let (pair, tail) = inner.split_once(')').ok_or_else(|| bad("expected `)`"))?;
        let (a, b) = pair.split_once(',').ok_or_else(|| bad("expected `i,j`"))?;
        let a: usize = a.trim().parse().map_err(|_| bad("bad endpoint"))?;
        let b: usize = b.trim().parse().map_err(|_| bad("bad endpoint"))?;
        pairs.push((a, b));
        rest = tail.trim_start().strip_prefix(',').unwrap_or(tail).trim_start();
    }
    Ok(Line {
        src,
        dst,
        edges: pairs,
        coeff,
    })
}

pub fn parse_diagram(table: &GeneratorTable, line: &str) -> Result<(Diagram, Scalar), DiagramError> {
    let l = parse_line(table, line)?;
    let d = Diagram::from_edges(l.src, l.dst, &l.edges)
        .ok_or_else(|| DiagramError::Parse(format!("invalid matching in `{line}`")))?;
    Ok((d, l.coeff))
}

/// One line per diagram; the zero morphism is a single line with no edges and coefficient 0.
pub fn format_morphism(table: &GeneratorTable, m: &Morphism) -> String {
    if m.is_zero() {
        return format!(
            "src={}; dst={}; edges=; coeff=0/1",
            table.format_word(m.src()),
            table.format_word(m.dst())
        );
    }
    m.terms()
        .map(|(d, c)| format_diagram(table, &d, c))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_morphism(table: &GeneratorTable, text: &str) -> Result<Morphism, DiagramError> {
    let mut out: Option<Morphism> = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let l = parse_line(table, line)?;
        let term = if l.coeff.is_zero() && l.edges.is_empty() {
            Morphism::zero(l.src, l.dst)
        } else {
            let (d, c) = parse_diagram(table, line)?;
            Morphism::from_diagram_coeff(d, c)
        };
        out = Some(match out {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
    }
    out.ok_or_else(|| DiagramError::Parse("empty morphism text".into()))
}
