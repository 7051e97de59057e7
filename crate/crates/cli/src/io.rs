//! File formats: triangulations, coordinate files and mesh export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use grid_realizer::complex::{oriented_facets, parse_many, Format, Triangulation};
use grid_realizer::{Embedding, LatticePoint};
use serde::{Deserialize, Serialize};

use crate::Fail;

pub fn read_text(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail::io(format!("cannot write {}: {e}", path.display())))
}

pub fn read_triangulations(path: &Path, format: Option<Format>) -> Result<Vec<Triangulation>, Fail> {
    let text = read_text(path)?;
    parse_many(&text, format).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

pub fn read_triangulation(path: &Path, format: Option<Format>) -> Result<Triangulation, Fail> {
    let mut all = read_triangulations(path, format)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(Fail::usage(format!("{}: no triangulation found", path.display()))),
        k => Err(Fail::usage(format!("{}: expected one triangulation, found {k}", path.display()))),
    }
}

/// `{"extent": e, "coords": {"<label>": [x, y, z], ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent: Option<i64>,
    pub coords: BTreeMap<String, [i64; 3]>,
}

impl CoordFile {
    pub fn from_embedding(t: &Triangulation, e: &Embedding, extent: i64) -> Self {
        let coords = e.to_labeled(t).into_iter().map(|(l, p)| (l.to_string(), p.coords())).collect();
        CoordFile { extent: Some(extent), coords }
    }

    pub fn to_embedding(&self, t: &Triangulation) -> Result<Embedding, Fail> {
        let mut labeled = BTreeMap::new();
        for (k, c) in &self.coords {
            let l: u32 = k.trim().parse().map_err(|_| Fail::usage(format!("vertex id {k:?} is not a number")))?;
            if let Some(e) = self.extent {
                if c.iter().any(|&x| x < 0 || x > e) {
                    return Err(Fail::usage(format!("vertex {l} at {c:?} lies outside the extent {e}")));
                }
            }
            labeled.insert(l, LatticePoint::from_coords(*c));
        }
        Embedding::from_labeled(t, &labeled).map_err(|e| Fail::usage(e.to_string()))
    }

    /// JSON with one vertex per line.
    pub fn to_json(&self) -> String {
        let mut s = String::from("{\n");
        if let Some(e) = self.extent {
            writeln!(s, "  \"extent\": {e},").unwrap();
        }
        s.push_str("  \"coords\": {");
        let mut ids: Vec<&String> = self.coords.keys().collect();
        // numeric order reads better than string order
        ids.sort_by_key(|k| (k.parse::<u64>().unwrap_or(u64::MAX), (*k).clone()));
        for (i, k) in ids.iter().enumerate() {
            let [x, y, z] = self.coords[*k];
            let key = serde_json::to_string(k).expect("plain data");
            write!(s, "{}\n    {key}: [{x}, {y}, {z}]", if i == 0 { "" } else { "," }).unwrap();
        }
        s.push_str("\n  }\n}\n");
        s
    }
}

pub fn read_coords(path: &Path) -> Result<CoordFile, Fail> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

/// Facets for export: consistently oriented when possible.
fn export_facets(t: &Triangulation) -> Vec<[u32; 3]> {
    oriented_facets(t).unwrap_or_else(|| t.facets().to_vec())
}

pub fn to_off(t: &Triangulation, e: &Embedding) -> String {
    let mut s = String::from("OFF\n");
    writeln!(s, "{} {} {}", t.vertex_count(), t.facets().len(), t.edges().len()).unwrap();
    for p in e.points() {
        let [x, y, z] = p.coords();
        writeln!(s, "{:.1} {:.1} {:.1}", x as f64, y as f64, z as f64).unwrap();
    }
    for f in export_facets(t) {
        writeln!(s, "3 {} {} {}", f[0], f[1], f[2]).unwrap();
    }
    s
}

pub fn to_obj(t: &Triangulation, e: &Embedding) -> String {
    let mut s = String::new();
    if let Some(name) = t.name() {
        writeln!(s, "o {name}").unwrap();
    }
    for p in e.points() {
        let [x, y, z] = p.coords();
        writeln!(s, "v {x} {y} {z}").unwrap();
    }
    for f in export_facets(t) {
        writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).unwrap();
    }
    s
}

/// A polygon mesh read from OFF: vertex positions and faces.
#[derive(Clone, Debug, PartialEq)]
pub struct OffMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
}

/// Reads the plain ASCII OFF variant, `#` comments allowed.
pub fn parse_off(text: &str) -> Result<OffMesh, String> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .peekable();
    if tokens.next() != Some("OFF") {
        return Err("missing OFF header".into());
    }
    let mut num = |what: &str| -> Result<f64, String> {
        let tok = tokens.next().ok_or_else(|| format!("unexpected end of file reading {what}"))?;
        tok.parse::<f64>().map_err(|_| format!("bad {what} {tok:?}"))
    };
    let nv = num("vertex count")? as usize;
    let nf = num("face count")? as usize;
    num("edge count")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        vertices.push([num("coordinate")?, num("coordinate")?, num("coordinate")?]);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let k = num("face size")? as usize;
        let mut f = Vec::with_capacity(k);
        for _ in 0..k {
            let i = num("face index")? as usize;
            if i >= nv {
                return Err(format!("face index {i} out of range"));
            }
            f.push(i);
        }
        faces.push(f);
    }
    Ok(OffMesh { vertices, faces })
}

pub fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}
