//! Reading and writing `planar_code` and `face_list` streams.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use super::{Polytope, PolytopeError, Result};

pub const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

/// Input/output formats for polytopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    /// Binary plantri-style stream: header, then per graph a vertex count
    /// byte followed by 0-terminated 1-based clockwise neighbour lists.
    PlanarCode,
    /// Text: one facet per line as a cyclic list of vertex ids.
    FaceList,
}

impl Format {
    /// Guesses the format from the leading bytes of a stream.
    pub fn infer(bytes: &[u8]) -> Format {
        if bytes.starts_with(PLANAR_CODE_HEADER) {
            Format::PlanarCode
        } else {
            Format::FaceList
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::PlanarCode => "planar_code",
            Format::FaceList => "face_list",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "planar_code" => Ok(Format::PlanarCode),
            "face_list" => Ok(Format::FaceList),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

impl Polytope {
    /// Loads exactly one polytope from `bytes`.
    pub fn load(bytes: &[u8], format: Format) -> Result<Polytope> {
        let mut all = Polytope::load_all(bytes, format)?;
        match all.len() {
            1 => Ok(all.pop().unwrap()),
            0 => Err(PolytopeError::Format("stream contains no polytope".into())),
            k => Err(PolytopeError::Format(format!("expected one polytope, stream has {k}"))),
        }
    }

    /// Loads every polytope of a stream. A `face_list` stream always holds a
    /// single polytope; `planar_code` streams may hold several.
    pub fn load_all(bytes: &[u8], format: Format) -> Result<Vec<Polytope>> {
        match format {
            Format::PlanarCode => parse_planar_code(bytes)?
                .iter()
                .map(|rotation| Polytope::from_rotation(rotation))
                .collect(),
            Format::FaceList => {
                let text = std::str::from_utf8(bytes)
                    .map_err(|_| PolytopeError::Format("face_list is not valid UTF-8".into()))?;
                Ok(vec![Polytope::from_face_list(text)?])
            }
        }
    }

    /// Parses a `face_list` document. Facet order in the text is the facet
    /// indexing of the result; the orientation of individual lines is
    /// irrelevant.
    pub fn from_face_list(text: &str) -> Result<Polytope> {
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let face = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        PolytopeError::Format(format!("line {}: bad vertex id '{tok}'", lineno + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            faces.push(face);
        }
        from_faces(faces)
    }

    /// Serialises as a `face_list` document. Vertices are written with their
    /// internal ids and facets in index order.
    pub fn to_face_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} facets, {} vertices",
            self.facet_count(),
            self.vertex_count()
        );
        for f in 0..self.facet_count() {
            let line: Vec<String> = self.facet_vertices(f).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Serialises one graph body of a `planar_code` stream (no header).
    pub fn to_planar_code_entry(&self) -> Result<Vec<u8>> {
        let n = self.vertex_count();
        if n > 255 {
            return Err(PolytopeError::MultiByteExtension);
        }
        let mut out = Vec::with_capacity(1 + 4 * n);
        out.push(n as u8);
        for v in 0..n {
            for w in self.vertex_neighbours(v) {
                out.push((w + 1) as u8);
            }
            out.push(0);
        }
        Ok(out)
    }

    /// Serialises as a complete single-graph `planar_code` stream.
    pub fn to_planar_code(&self) -> Result<Vec<u8>> {
        write_planar_code(std::slice::from_ref(self))
    }
}

/// Writes several polytopes into one `planar_code` stream.
pub fn write_planar_code(polytopes: &[Polytope]) -> Result<Vec<u8>> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for p in polytopes {
        out.extend(p.to_planar_code_entry()?);
    }
    Ok(out)
}

fn parse_planar_code(bytes: &[u8]) -> Result<Vec<Vec<Vec<usize>>>> {
    let Some(mut rest) = bytes.strip_prefix(PLANAR_CODE_HEADER) else {
        return Err(PolytopeError::Format("missing >>planar_code<< header".into()));
    };
    let mut graphs = Vec::new();
    while let Some((&n, tail)) = rest.split_first() {
        rest = tail;
        if n == 0 {
            return Err(PolytopeError::MultiByteExtension);
        }
        let n = n as usize;
        let mut rotation = Vec::with_capacity(n);
        for v in 0..n {
            let mut nbrs = Vec::with_capacity(3);
            loop {
                let Some((&b, tail)) = rest.split_first() else {
                    return Err(PolytopeError::Format(format!(
                        "truncated neighbour list of vertex {} in graph {}",
                        v + 1,
                        graphs.len() + 1
                    )));
                };
                rest = tail;
                if b == 0 {
                    break;
                }
                let w = b as usize;
                if w > n {
                    return Err(PolytopeError::Format(format!(
                        "vertex {} lists neighbour {w} but the graph has {n} vertices",
                        v + 1
                    )));
                }
                nbrs.push(w - 1);
            }
            rotation.push(nbrs);
        }
        graphs.push(rotation);
    }
    Ok(graphs)
}

/// Builds a polytope from cyclic facet boundaries. Facets are re-oriented
/// coherently, then the rotation at each vertex is read off the facets.
fn from_faces(faces: Vec<Vec<usize>>) -> Result<Polytope> {
    if faces.is_empty() {
        return Err(PolytopeError::Format("face_list has no facets".into()));
    }
    // Compress vertex ids to 0..n.
    let mut ids: Vec<usize> = faces.iter().flatten().copied().collect();
    ids.sort_unstable();
    ids.dedup();
    let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut faces: Vec<Vec<usize>> =
        faces.into_iter().map(|f| f.into_iter().map(|v| index[&v]).collect()).collect();
    let n = ids.len();

    for (i, f) in faces.iter().enumerate() {
        if f.len() < 3 {
            return Err(PolytopeError::InvalidFacets(format!("facet {i} has fewer than 3 vertices")));
        }
        let mut s = f.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != f.len() {
            return Err(PolytopeError::InvalidFacets(format!("facet {i} repeats a vertex")));
        }
    }

    // Undirected edge -> facets containing it.
    let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for j in 0..f.len() {
            let (a, b) = (f[j], f[(j + 1) % f.len()]);
            edge_faces.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    for (&(a, b), fs) in &edge_faces {
        if fs.len() != 2 || fs[0] == fs[1] {
            return Err(PolytopeError::InvalidFacets(format!(
                "edge {}-{} lies on {} facets",
                ids[a],
                ids[b],
                fs.len()
            )));
        }
    }

    orient_faces(&mut faces, &edge_faces)?;

    // Around v, a facet passing u -> v -> w sends the dart v->u to v->w.
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in &faces {
        let k = f.len();
        for j in 0..k {
            let (u, v, w) = (f[j], f[(j + 1) % k], f[(j + 2) % k]);
            succ[v].push((u, w));
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (v, s) in succ.iter().enumerate() {
        if s.len() != 3 {
            return Err(PolytopeError::Degree { vertex: ids[v], degree: s.len() });
        }
        let next = |u: usize| s.iter().find(|&&(a, _)| a == u).map(|&(_, w)| w);
        let start = s.iter().map(|&(a, _)| a).min().unwrap();
        let mut order = vec![start];
        let mut cur = start;
        for _ in 0..3 {
            cur = next(cur).ok_or_else(|| {
                PolytopeError::InvalidFacets(format!("facets around vertex {} do not close", ids[v]))
            })?;
            order.push(cur);
        }
        if order[3] != start || order[0] == order[1] || order[1] == order[2] || order[0] == order[2] {
            return Err(PolytopeError::InvalidFacets(format!(
                "facets around vertex {} do not form a disc",
                ids[v]
            )));
        }
        order.pop();
        rotation.push(order);
    }

    let mut key = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for j in 0..f.len() {
            key.insert((f[j], f[(j + 1) % f.len()]), i);
        }
    }
    Polytope::build(&rotation, Some(&key))
}

/// Flips facets so that every edge is traversed in opposite directions by
/// its two facets.
fn orient_faces(faces: &mut [Vec<usize>], edge_faces: &BTreeMap<(usize, usize), Vec<usize>>) -> Result<()> {
    let m = faces.len();
    let mut fixed = vec![false; m];
    let forward = |f: &[usize], a: usize, b: usize| {
        let k = f.len();
        (0..k).any(|j| f[j] == a && f[(j + 1) % k] == b)
    };
    for root in 0..m {
        if fixed[root] {
            continue;
        }
        fixed[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let f = faces[i].clone();
            for j in 0..f.len() {
                let (a, b) = (f[j], f[(j + 1) % f.len()]);
                let fs = &edge_faces[&(a.min(b), a.max(b))];
                let other = if fs[0] == i { fs[1] } else { fs[0] };
                let same_direction = forward(&faces[other], a, b);
                if fixed[other] {
                    if same_direction {
                        return Err(PolytopeError::InvalidFacets(
                            "facets cannot be oriented coherently".into(),
                        ));
                    }
                } else {
                    if same_direction {
                        faces[other].reverse();
                    }
                    fixed[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBE: &str = "# cube\n0 1 2 3\n4 7 6 5\n0 4 5 1\n1 5 6 2\n2 6 7 3\n3 7 4 0\n";

    #[test]
    fn cube_face_list() {
        let p = Polytope::from_face_list(CUBE).unwrap();
        assert_eq!(p.facet_count(), 6);
        assert_eq!(p.vertex_count(), 8);
        assert_eq!(p.edge_count(), 12);
        // file order is facet order: facet 0 is the bottom square
        let mut f0 = p.facet_vertices(0);
        f0.sort_unstable();
        assert_eq!(f0, vec![0, 1, 2, 3]);
    }

    #[test]
    fn orientation_of_lines_does_not_matter() {
        let flipped = "0 1 2 3\n5 6 7 4\n0 4 5 1\n2 6 5 1\n2 6 7 3\n3 7 4 0\n";
        let a = Polytope::from_face_list(CUBE).unwrap();
        let b = Polytope::from_face_list(flipped).unwrap();
        assert_eq!(a.vertex_triples(), b.vertex_triples());
    }

    #[test]
    fn missing_header_is_a_format_error() {
        let err = Polytope::load(b"\x04\x02\x03\x04\x00", Format::PlanarCode).unwrap_err();
        assert!(matches!(err, PolytopeError::Format(_)));
    }

    #[test]
    fn truncated_stream() {
        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend([4, 2, 3, 4, 0, 1, 4]);
        assert!(matches!(Polytope::load(&bytes, Format::PlanarCode), Err(PolytopeError::Format(_))));
    }

    #[test]
    fn multibyte_extension_rejected() {
        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend([0, 4, 0]);
        assert_eq!(
            Polytope::load(&bytes, Format::PlanarCode).unwrap_err(),
            PolytopeError::MultiByteExtension
        );
    }

    #[test]
    fn k4_planar_code() {
        let mut bytes = PLANAR_CODE_HEADER.to_vec();
        bytes.extend([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0]);
        let p = Polytope::load(&bytes, Format::PlanarCode).unwrap();
        assert_eq!((p.facet_count(), p.vertex_count(), p.edge_count()), (4, 4, 6));
        let two = [bytes.clone(), bytes[PLANAR_CODE_HEADER.len()..].to_vec()].concat();
        assert_eq!(Polytope::load_all(&two, Format::PlanarCode).unwrap().len(), 2);
    }

    #[test]
    fn degree_four_vertex_rejected() {
        // square pyramid
        let text = "0 1 2 3\n0 4 1\n1 4 2\n2 4 3\n3 4 0\n";
        assert!(matches!(
            Polytope::from_face_list(text),
            Err(PolytopeError::Degree { vertex: 4, degree: 4 })
        ));
    }

    #[test]
    fn format_inference() {
        assert_eq!(Format::infer(b">>planar_code<<\x04"), Format::PlanarCode);
        assert_eq!(Format::infer(b"# cube\n0 1 2 3"), Format::FaceList);
    }

    #[test]
    fn open_surface_rejected() {
        // cube with one facet removed
        let text = "0 1 2 3\n0 4 5 1\n1 5 6 2\n2 6 7 3\n3 7 4 0\n";
        assert!(Polytope::from_face_list(text).is_err());
    }
}
