//! OFF and JSON serialization.
//!
//! 3-polytopes use plain `OFF`; other dimensions use `nOFF` with the
//! dimension on its own line. Face lines list 2-face cycles. OFF carries no
//! edge list, so edges are read back from the face cycles, or derived with
//! the adjacency oracle when the file has no faces.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{derive_edges, Point, Polytope, PolytopeError, Result};

pub fn to_off(p: &Polytope) -> String {
    let mut s = String::new();
    let faces: &[Vec<usize>] = p.faces.as_deref().unwrap_or(&[]);
    if p.dim == 3 {
        s.push_str("OFF\n");
    } else {
        let _ = writeln!(s, "nOFF\n{}", p.dim);
    }
    if !p.provenance.is_empty() {
        for line in p.provenance.lines() {
            let _ = writeln!(s, "# {line}");
        }
    }
    let _ = writeln!(s, "{} {} {}", p.vertices.len(), faces.len(), p.edges.len());
    for v in &p.vertices {
        let coords: Vec<String> = v.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(s, "{}", coords.join(" "));
    }
    for f in faces {
        let ids: Vec<String> = f.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{} {}", f.len(), ids.join(" "));
    }
    s
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> (Self, Vec<String>) {
        let mut items = Vec::new();
        let mut comments = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let (body, comment) = match line.find('#') {
                Some(k) => (&line[..k], Some(line[k + 1..].trim())),
                None => (line, None),
            };
            if let Some(c) = comment {
                comments.push(c.to_string());
            }
            items.extend(body.split_whitespace().map(|t| (no + 1, t)));
        }
        (Self { items, pos: 0 }, comments)
    }

    fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or(self.items.last())
            .map_or(0, |t| t.0)
    }

    fn err(&self, msg: impl Into<String>) -> PolytopeError {
        PolytopeError::Parse {
            line: self.line(),
            msg: msg.into(),
        }
    }

    fn next_str(&mut self) -> Result<&'a str> {
        let t = self
            .items
            .get(self.pos)
            .ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        Ok(t.1)
    }

    fn next<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let s = self.next_str()?;
        s.parse().map_err(|_| {
            self.pos -= 1;
            self.err(format!("expected {what}, found {s:?}"))
        })
    }
}

pub fn from_off(text: &str) -> Result<Polytope> {
    let (mut tok, comments) = Tokens::new(text);
    let header = tok.next_str()?;
    let dim = match header {
        "OFF" => 3,
        "nOFF" => tok.next("dimension")?,
        other => return Err(tok.err(format!("unknown header {other:?}"))),
    };
    let nv: usize = tok.next("vertex count")?;
    let nf: usize = tok.next("face count")?;
    let _ne: usize = tok.next("edge count")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let coords = (0..dim)
            .map(|_| tok.next::<f64>("coordinate"))
            .collect::<Result<Vec<_>>>()?;
        vertices.push(Point(coords));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let k: usize = tok.next("face size")?;
        let f = (0..k)
            .map(|_| tok.next::<usize>("vertex index"))
            .collect::<Result<Vec<_>>>()?;
        faces.push(f);
    }
    if tok.pos != tok.items.len() {
        return Err(tok.err("trailing data"));
    }
    let provenance = comments.join("\n");
    let mut edges = BTreeSet::new();
    for f in &faces {
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            if a != b {
                edges.insert([a.min(b), a.max(b)]);
            }
        }
    }
    let faces = (!faces.is_empty()).then_some(faces);
    let mut p = Polytope::new(
        dim,
        vertices,
        edges.into_iter().collect(),
        faces,
        provenance,
    )?;
    if p.faces.is_none() {
        p.edges = derive_edges(&p)?;
    }
    Ok(p)
}

pub fn to_json(p: &Polytope) -> Result<String> {
    Ok(serde_json::to_string_pretty(p)?)
}

/// Parses the JSON schema and re-runs the structural checks of
/// [`Polytope::new`].
pub fn from_json(text: &str) -> Result<Polytope> {
    let raw: Polytope = serde_json::from_str(text)?;
    Polytope::new(raw.dim, raw.vertices, raw.edges, raw.faces, raw.provenance)
}

/// Reads OFF or JSON, chosen by extension (`.json`) or by content.
pub fn read(path: &Path) -> Result<Polytope> {
    let text = std::fs::read_to_string(path)?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with('{');
    if is_json {
        from_json(&text)
    } else {
        from_off(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_prism() -> Polytope {
        let s3 = 3f64.sqrt() / 2.0;
        let mut v = Vec::new();
        for z in [-0.5, 0.5] {
            v.push(Point(vec![1.0, 0.0, z]));
            v.push(Point(vec![-0.5, s3, z]));
            v.push(Point(vec![-0.5, -s3, z]));
        }
        let faces = vec![
            vec![0, 2, 1],
            vec![3, 4, 5],
            vec![0, 1, 4, 3],
            vec![1, 2, 5, 4],
            vec![2, 0, 3, 5],
        ];
        let edges = vec![
            [0, 1],
            [1, 2],
            [0, 2],
            [3, 4],
            [4, 5],
            [3, 5],
            [0, 3],
            [1, 4],
            [2, 5],
        ];
        Polytope::new(3, v, edges, Some(faces), "triangular prism").unwrap()
    }

    #[test]
    fn off_round_trip_is_exact() {
        let p = triangle_prism();
        let text = to_off(&p);
        assert!(text.starts_with("OFF\n# triangular prism\n6 5 9\n"));
        let q = from_off(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn noff_without_faces_derives_edges() {
        let text = "nOFF\n2\n4 0 0\n0 0\n1 0\n1 1\n0 1\n";
        let p = from_off(text).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.edges, vec![[0, 1], [0, 3], [1, 2], [2, 3]]);
    }

    #[test]
    fn off_errors_name_the_line() {
        let err = from_off("OFF\n1 0 0\n0 x 0\n").unwrap_err();
        assert!(matches!(err, PolytopeError::Parse { line: 3, .. }), "{err}");
        assert!(from_off("PLY\n").is_err());
        assert!(from_off("OFF\n2 0 0\n0 0 0\n").is_err());
        assert!(from_off("OFF\n1 1 0\n0 0 0\n3 0 1 2\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = triangle_prism();
        let q = from_json(&to_json(&p).unwrap()).unwrap();
        assert_eq!(p, q);
        assert!(from_json("{\"dim\": 2, \"vertices\": [[0, 0]], \"edges\": [[0, 3]]}").is_err());
    }
}
