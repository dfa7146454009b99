//! Simple 3-polytopes as combinatorial maps.
//!
//! A [`Polytope`] is stored as a rotation system on its 1-skeleton: every
//! skeleton vertex `v` owns the three darts `3v`, `3v + 1`, `3v + 2`, listed
//! in rotation order. Facets are the orbits of the face permutation
//! `rot ∘ rev`, and everything else (vertex triples, facet adjacency) is
//! derived from the darts.

mod canonical;
mod io;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

pub use canonical::{CanonicalCode, FacetBijection};
pub use io::{write_planar_code, Format, PLANAR_CODE_HEADER};

/// Errors raised while reading or validating a polytope.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    /// The byte stream does not follow the declared format.
    #[error("format error: {0}")]
    Format(String),
    /// planar_code graphs with more than 255 vertices need the multi-byte
    /// extension, which is not supported.
    #[error("planar_code multi-byte extension is not supported (at most 255 vertices)")]
    MultiByteExtension,
    /// A skeleton vertex does not have degree 3.
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    Degree { vertex: usize, degree: usize },
    /// The neighbour lists do not describe a simple undirected graph.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("skeleton is not connected")]
    Disconnected,
    /// Removing the two listed vertices disconnects the skeleton.
    #[error("skeleton is not 3-connected (separating pair {0}, {1})")]
    NotThreeConnected(usize, usize),
    /// The rotation system does not describe a sphere.
    #[error("rotation system is not planar: V - E + F = {0}")]
    NonPlanar(i64),
    #[error("invalid facet structure: {0}")]
    InvalidFacets(String),
}

pub type Result<T> = std::result::Result<T, PolytopeError>;

/// A combinatorial simple 3-polytope.
///
/// Values are immutable once built and every constructor validates the full
/// set of invariants: cubic, 3-connected, planar skeleton whose facets are
/// simple cycles, any two of which share at most one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    /// `head[d]` is the vertex dart `d` points to.
    head: Vec<usize>,
    /// Involution pairing each dart with its reverse.
    rev: Vec<usize>,
    face_of_dart: Vec<usize>,
    /// Each facet as its cycle of darts, starting at the facet's minimal dart.
    facets: Vec<Vec<usize>>,
    vertex_triples: Vec<[usize; 3]>,
    adjacency: Vec<Vec<usize>>,
}

#[inline]
pub(crate) fn rot(d: usize) -> usize {
    d - d % 3 + (d % 3 + 1) % 3
}

#[inline]
pub(crate) fn rot_inv(d: usize) -> usize {
    d - d % 3 + (d % 3 + 2) % 3
}

impl Polytope {
    /// Builds a polytope from its rotation system: `neighbours[v]` lists the
    /// three neighbours of `v` in rotation order. Facets are indexed by their
    /// minimal dart.
    pub fn from_rotation(neighbours: &[Vec<usize>]) -> Result<Self> {
        Self::build(neighbours, None)
    }

    /// Same as [`Polytope::from_rotation`] but facets are indexed by
    /// `facet_key`: the facet traversing the directed edge `(u, v)` gets
    /// index `facet_key[&(u, v)]`.
    pub(crate) fn build(
        neighbours: &[Vec<usize>],
        facet_key: Option<&HashMap<(usize, usize), usize>>,
    ) -> Result<Self> {
        let n = neighbours.len();
        if n == 0 {
            return Err(PolytopeError::InvalidGraph("empty graph".into()));
        }
        for (v, nbrs) in neighbours.iter().enumerate() {
            if nbrs.len() != 3 {
                return Err(PolytopeError::Degree { vertex: v, degree: nbrs.len() });
            }
            for &w in nbrs {
                if w >= n {
                    return Err(PolytopeError::InvalidGraph(format!(
                        "vertex {v} has neighbour {w} out of range"
                    )));
                }
                if w == v {
                    return Err(PolytopeError::InvalidGraph(format!("loop at vertex {v}")));
                }
            }
            if nbrs[0] == nbrs[1] || nbrs[1] == nbrs[2] || nbrs[0] == nbrs[2] {
                return Err(PolytopeError::InvalidGraph(format!("multiple edge at vertex {v}")));
            }
        }

        // Normalise each rotation to start at the smallest neighbour so that
        // equal maps get equal dart numberings.
        let rotation: Vec<[usize; 3]> = neighbours
            .iter()
            .map(|nbrs| {
                let start = (0..3).min_by_key(|&i| nbrs[i]).unwrap();
                [nbrs[start], nbrs[(start + 1) % 3], nbrs[(start + 2) % 3]]
            })
            .collect();

        let darts = 3 * n;
        let head: Vec<usize> = (0..darts).map(|d| rotation[d / 3][d % 3]).collect();
        let mut rev = vec![usize::MAX; darts];
        for d in 0..darts {
            let (u, v) = (d / 3, head[d]);
            match rotation[v].iter().position(|&w| w == u) {
                Some(j) => rev[d] = 3 * v + j,
                None => {
                    return Err(PolytopeError::InvalidGraph(format!(
                        "edge {u}-{v} is not listed at {v}"
                    )))
                }
            }
        }

        check_connectivity(&rotation)?;

        let mut face_of_dart = vec![usize::MAX; darts];
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for d0 in 0..darts {
            if face_of_dart[d0] != usize::MAX {
                continue;
            }
            let f = facets.len();
            let mut cycle = Vec::new();
            let mut d = d0;
            loop {
                face_of_dart[d] = f;
                cycle.push(d);
                d = rot(rev[d]);
                if d == d0 {
                    break;
                }
            }
            facets.push(cycle);
        }

        let edges = darts / 2;
        let euler = n as i64 - edges as i64 + facets.len() as i64;
        if euler != 2 {
            return Err(PolytopeError::NonPlanar(euler));
        }

        if let Some(key) = facet_key {
            let mut order = vec![usize::MAX; facets.len()];
            for (f, cycle) in facets.iter().enumerate() {
                let d = cycle[0];
                let idx = *key.get(&(d / 3, head[d])).ok_or_else(|| {
                    PolytopeError::InvalidFacets("traced facet missing from facet list".into())
                })?;
                if idx >= facets.len() || order.contains(&idx) {
                    return Err(PolytopeError::InvalidFacets(
                        "facet list does not match the traced facets".into(),
                    ));
                }
                order[f] = idx;
            }
            let mut reordered = vec![Vec::new(); facets.len()];
            for (f, cycle) in facets.into_iter().enumerate() {
                reordered[order[f]] = cycle;
            }
            facets = reordered;
            for (f, cycle) in facets.iter().enumerate() {
                for &d in cycle {
                    face_of_dart[d] = f;
                }
            }
        }

        let m = facets.len();
        for (f, cycle) in facets.iter().enumerate() {
            if cycle.len() < 3 {
                return Err(PolytopeError::InvalidFacets(format!(
                    "facet {f} has only {} edges",
                    cycle.len()
                )));
            }
            let mut seen: Vec<usize> = cycle.iter().map(|&d| d / 3).collect();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != cycle.len() {
                return Err(PolytopeError::InvalidFacets(format!(
                    "facet {f} is not a simple cycle"
                )));
            }
        }

        let mut adjacency = vec![Vec::new(); m];
        for d in 0..darts {
            let (f, g) = (face_of_dart[d], face_of_dart[rev[d]]);
            if f == g {
                return Err(PolytopeError::InvalidFacets(format!(
                    "edge {}-{} lies twice on facet {f}",
                    d / 3,
                    head[d]
                )));
            }
            adjacency[f].push(g);
        }
        for (f, adj) in adjacency.iter_mut().enumerate() {
            let len = adj.len();
            adj.sort_unstable();
            adj.dedup();
            if adj.len() != len {
                return Err(PolytopeError::InvalidFacets(format!(
                    "facet {f} shares more than one edge with a neighbour"
                )));
            }
        }

        let mut vertex_triples = Vec::with_capacity(n);
        for v in 0..n {
            let mut t = [face_of_dart[3 * v], face_of_dart[3 * v + 1], face_of_dart[3 * v + 2]];
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(PolytopeError::InvalidFacets(format!(
                    "vertex {v} does not lie on three distinct facets"
                )));
            }
            vertex_triples.push(t);
        }

        Ok(Polytope { head, rev, face_of_dart, facets, vertex_triples, adjacency })
    }

    /// Number of facets `m`.
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Number of skeleton vertices.
    pub fn vertex_count(&self) -> usize {
        self.head.len() / 3
    }

    pub fn edge_count(&self) -> usize {
        self.head.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.head.len()
    }

    /// Sorted facet triples, indexed by skeleton vertex.
    pub fn vertex_triples(&self) -> &[[usize; 3]] {
        &self.vertex_triples
    }

    /// Sorted list of facets sharing an edge with `facet`.
    pub fn neighbours(&self, facet: usize) -> &[usize] {
        &self.adjacency[facet]
    }

    pub fn adjacent(&self, f: usize, g: usize) -> bool {
        self.adjacency[f].binary_search(&g).is_ok()
    }

    /// Number of edges (equivalently vertices) of `facet`.
    pub fn facet_size(&self, facet: usize) -> usize {
        self.facets[facet].len()
    }

    /// Boundary vertices of `facet` in traversal order.
    pub fn facet_vertices(&self, facet: usize) -> Vec<usize> {
        self.facets[facet].iter().map(|&d| d / 3).collect()
    }

    /// Neighbours of skeleton vertex `v` in rotation order.
    pub fn vertex_neighbours(&self, v: usize) -> [usize; 3] {
        [self.head[3 * v], self.head[3 * v + 1], self.head[3 * v + 2]]
    }

    /// Facet on the traced side of dart `d`.
    pub fn face_of_dart(&self, d: usize) -> usize {
        self.face_of_dart[d]
    }

    pub(crate) fn head(&self, d: usize) -> usize {
        self.head[d]
    }

    pub(crate) fn rev(&self, d: usize) -> usize {
        self.rev[d]
    }

    /// True for the unique simple polytope with four facets.
    pub fn is_tetrahedron(&self) -> bool {
        self.facet_count() == 4
    }

    /// Applies a relabelling: skeleton vertex `v` becomes `vertex_perm[v]`
    /// and facet `f` becomes `facet_perm[f]`. The rotation is preserved.
    pub fn relabel(&self, vertex_perm: &[usize], facet_perm: &[usize]) -> Result<Polytope> {
        let n = self.vertex_count();
        let m = self.facet_count();
        if !is_permutation(vertex_perm, n) || !is_permutation(facet_perm, m) {
            return Err(PolytopeError::InvalidGraph("relabelling is not a permutation".into()));
        }
        let mut neighbours = vec![Vec::new(); n];
        for v in 0..n {
            neighbours[vertex_perm[v]] =
                self.vertex_neighbours(v).iter().map(|&w| vertex_perm[w]).collect();
        }
        let mut key = HashMap::new();
        for d in 0..self.dart_count() {
            key.insert(
                (vertex_perm[d / 3], vertex_perm[self.head[d]]),
                facet_perm[self.face_of_dart[d]],
            );
        }
        Polytope::build(&neighbours, Some(&key))
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn connected_without(rotation: &[[usize; 3]], removed: [usize; 2]) -> bool {
    let n = rotation.len();
    let Some(start) = (0..n).find(|v| !removed.contains(v)) else {
        return true;
    };
    let mut seen = vec![false; n];
    for &r in &removed {
        if r < n {
            seen[r] = true;
        }
    }
    seen[start] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &rotation[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    let expected = n - removed.iter().filter(|&&r| r < n).count();
    reached == expected
}

/// Connectivity, then 3-connectivity by deleting every vertex pair.
fn check_connectivity(rotation: &[[usize; 3]]) -> Result<()> {
    let n = rotation.len();
    if !connected_without(rotation, [usize::MAX, usize::MAX]) {
        return Err(PolytopeError::Disconnected);
    }
    if n < 4 {
        return Err(PolytopeError::InvalidGraph(format!("{n} vertices cannot form a polytope")));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !connected_without(rotation, [a, b]) {
                return Err(PolytopeError::NotThreeConnected(a, b));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "simple polytope: {} facets, {} vertices, {} edges",
            self.facet_count(),
            self.vertex_count(),
            self.edge_count()
        )
    }
}
