//! Text formats for facet lists.
//!
//! * `lex`: `name=[[1,2,3],[1,2,4],...]`, the name being optional; one complex per
//!   entry, entries may wrap over several lines.
//! * `json`: `{"n": 4, "facets": [[1,2,3],...]}`.
//! * `plain`: one facet per line as three whitespace-separated integers, `#`
//!   starts a comment.

use std::str::FromStr;

use serde::Deserialize;

use super::{ComplexError, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Lex,
    Json,
    Plain,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lex" => Ok(Format::Lex),
            "json" => Ok(Format::Json),
            "plain" => Ok(Format::Plain),
            other => Err(format!("unknown format {other:?} (expected lex, json or plain)")),
        }
    }
}

impl Format {
    /// Guesses the format from the first non-blank character.
    pub fn detect(text: &str) -> Option<Format> {
        let first_line = text.lines().find(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })?;
        let c = first_line.trim_start().chars().next()?;
        Some(match c {
            '{' => Format::Json,
            '[' => Format::Lex,
            c if c.is_ascii_digit() && !first_line.contains('=') => Format::Plain,
            _ => Format::Lex,
        })
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ComplexError {
    ComplexError::Syntax { line, msg: msg.into() }
}

/// Parses exactly one complex.
pub fn parse_triangulation(text: &str, format: Option<Format>) -> Result<Triangulation, ComplexError> {
    let mut all = parse_many(text, format)?;
    match all.len() {
        0 => Err(ComplexError::Empty),
        1 => Ok(all.pop().unwrap()),
        k => Err(syntax(0, format!("expected one triangulation, found {k}"))),
    }
}

/// Parses every complex in `text`. Only the lex format holds more than one.
pub fn parse_many(text: &str, format: Option<Format>) -> Result<Vec<Triangulation>, ComplexError> {
    let format = match format.or_else(|| Format::detect(text)) {
        Some(f) => f,
        None => return Err(ComplexError::Empty),
    };
    match format {
        Format::Lex => parse_lex(text),
        Format::Json => parse_json(text).map(|t| vec![t]),
        Format::Plain => parse_plain(text).map(|t| vec![t]),
    }
}

fn parse_lex(text: &str) -> Result<Vec<Triangulation>, ComplexError> {
    let mut out = Vec::new();
    let mut pending = String::new();
    let mut start_line = 0;
    let mut depth: i64 = 0;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if pending.is_empty() && (t.is_empty() || t.starts_with('#')) {
            continue;
        }
        if pending.is_empty() {
            start_line = i + 1;
        }
        pending.push_str(t);
        depth += t.chars().filter(|&c| c == '[').count() as i64;
        depth -= t.chars().filter(|&c| c == ']').count() as i64;
        if depth < 0 {
            return Err(syntax(i + 1, "unbalanced ']'"));
        }
        if depth == 0 && pending.contains('[') {
            out.push(parse_lex_entry(&pending, start_line)?);
            pending.clear();
        }
    }
    if !pending.is_empty() {
        return Err(syntax(start_line, "unterminated facet list"));
    }
    if out.is_empty() {
        return Err(ComplexError::Empty);
    }
    Ok(out)
}

fn parse_lex_entry(entry: &str, line: usize) -> Result<Triangulation, ComplexError> {
    let bracket = entry.find('[').ok_or_else(|| syntax(line, "missing facet list"))?;
    let (head, body) = entry.split_at(bracket);
    let name = match head.trim() {
        "" => None,
        h => match h.strip_suffix('=') {
            Some(n) => Some(n.trim().to_string()),
            None => return Err(syntax(line, "expected '=' between name and facet list")),
        },
    };
    let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let facets: Vec<[u32; 3]> =
        serde_json::from_str(&body).map_err(|e| syntax(line, format!("bad facet list: {e}")))?;
    let mut t = Triangulation::from_one_based(&facets)?;
    t.set_name(name);
    Ok(t)
}

#[derive(Deserialize)]
struct JsonComplex {
    n: u32,
    facets: Vec<[u32; 3]>,
}

fn parse_json(text: &str) -> Result<Triangulation, ComplexError> {
    let j: JsonComplex = serde_json::from_str(text).map_err(|e| syntax(e.line(), e.to_string()))?;
    if j.facets.is_empty() {
        return Err(ComplexError::Empty);
    }
    for f in &j.facets {
        for &l in f {
            if l == 0 || l > j.n {
                return Err(ComplexError::LabelOutOfRange(l, j.n));
            }
        }
    }
    let mut used = vec![false; j.n as usize + 1];
    for &l in j.facets.iter().flatten() {
        used[l as usize] = true;
    }
    if let Some(l) = (1..=j.n).find(|&l| !used[l as usize]) {
        // the repeated-vertex and duplicate checks take precedence over this one
        Triangulation::from_one_based(&j.facets)?;
        return Err(ComplexError::UnusedVertex(l));
    }
    Triangulation::from_one_based(&j.facets)
}

fn parse_plain(text: &str) -> Result<Triangulation, ComplexError> {
    let mut facets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.split('#').next().unwrap().trim();
        if t.is_empty() {
            continue;
        }
        let nums: Result<Vec<u32>, _> = t.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(str::parse).collect();
        match nums {
            Ok(v) if v.len() == 3 => facets.push([v[0], v[1], v[2]]),
            Ok(v) => return Err(syntax(i + 1, format!("expected 3 vertex ids, found {}", v.len()))),
            Err(e) => return Err(syntax(i + 1, e.to_string())),
        }
    }
    if facets.is_empty() {
        return Err(ComplexError::Empty);
    }
    Triangulation::from_one_based(&facets)
}
