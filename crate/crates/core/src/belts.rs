//! k-belts of facets, membership in the Pogorelov class and fullerene
//! classification.

use std::fmt;

use thiserror::Error;

use crate::polytope::Polytope;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BeltError {
    #[error("belt length must be at least 3, got {0}")]
    TooShort(usize),
}

/// A cyclic sequence of facets in which exactly the cyclically consecutive
/// members are adjacent and no three members meet at a vertex.
///
/// Stored rotated so that the smallest facet comes first, followed by the
/// smaller of its two belt neighbours.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Belt(Vec<usize>);

impl Belt {
    /// Canonically rotates `facets` and checks the belt predicate on `p`.
    pub fn new(p: &Polytope, facets: Vec<usize>) -> Option<Belt> {
        if facets.len() < 3 || !is_belt(p, &facets) {
            return None;
        }
        Some(Belt(canonical_rotation(facets)))
    }

    pub fn facets(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Belt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

fn canonical_rotation(mut facets: Vec<usize>) -> Vec<usize> {
    let k = facets.len();
    let i = (0..k).min_by_key(|&i| facets[i]).unwrap();
    facets.rotate_left(i);
    if facets[k - 1] < facets[1] {
        facets[1..].reverse();
    }
    facets
}

/// The belt predicate, checked directly from its definition.
pub fn is_belt(p: &Polytope, facets: &[usize]) -> bool {
    let k = facets.len();
    if k < 3 {
        return false;
    }
    let mut sorted = facets.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k || sorted.iter().any(|&f| f >= p.facet_count()) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if p.adjacent(facets[i], facets[j]) != consecutive {
                return false;
            }
        }
    }
    // Only a 3-belt can have three pairwise adjacent members.
    !p.vertex_triples().iter().any(|t| t.iter().all(|f| sorted.binary_search(f).is_ok()))
}

/// All k-belts of `p`, canonically rotated and sorted.
///
/// Depth-first path extension in the facet adjacency graph: a belt is grown
/// from its smallest facet through larger facets only, each new facet adjacent
/// to the previous one and to none of the earlier ones.
pub fn find_belts(p: &Polytope, k: usize) -> Result<Vec<Belt>, BeltError> {
    if k < 3 {
        return Err(BeltError::TooShort(k));
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(k);
    for start in 0..p.facet_count() {
        path.push(start);
        extend(p, k, &mut path, &mut out);
        path.pop();
    }
    out.sort();
    Ok(out)
}

fn extend(p: &Polytope, k: usize, path: &mut Vec<usize>, out: &mut Vec<Belt>) {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        // one direction only: the second facet is smaller than the last
        if p.adjacent(last, start) && path[1] < last && is_belt(p, path) {
            out.push(Belt(path.clone()));
        }
        return;
    }
    for &next in p.neighbours(last) {
        if next <= start || path.contains(&next) {
            continue;
        }
        // No chords to earlier members, except the closing edge to `start`
        // which is only allowed at the final position.
        let chord = path[..path.len() - 1].iter().enumerate().any(|(i, &f)| {
            p.adjacent(f, next) && !(i == 0 && path.len() + 1 == k)
        });
        if chord {
            continue;
        }
        path.push(next);
        extend(p, k, path, out);
        path.pop();
    }
}

/// Why a polytope is not in the Pogorelov class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Tetrahedron,
    Belt(Belt),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Tetrahedron => write!(f, "tetrahedron"),
            Obstruction::Belt(b) => write!(f, "{}-belt {b}", b.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PogorelovVerdict {
    pub is_pogorelov: bool,
    /// Present exactly when `is_pogorelov` is false.
    pub witness: Option<Obstruction>,
}

/// Pogorelov class membership: not a tetrahedron, no 3-belts, no 4-belts.
pub fn is_pogorelov(p: &Polytope) -> PogorelovVerdict {
    let witness = if p.is_tetrahedron() {
        Some(Obstruction::Tetrahedron)
    } else {
        [3, 4].iter().find_map(|&k| {
            find_belts(p, k).expect("k >= 3").into_iter().next().map(Obstruction::Belt)
        })
    };
    PogorelovVerdict { is_pogorelov: witness.is_none(), witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FullereneStatus {
    NotFullerene,
    Fullerene {
        /// No two pentagons share an edge.
        ipr: bool,
        adjacent_pentagon_pairs: usize,
    },
}

/// Fullerene test: only pentagonal and hexagonal facets.
pub fn fullerene_status(p: &Polytope) -> FullereneStatus {
    let m = p.facet_count();
    if (0..m).any(|f| !matches!(p.facet_size(f), 5 | 6)) {
        return FullereneStatus::NotFullerene;
    }
    let pairs = (0..m)
        .filter(|&f| p.facet_size(f) == 5)
        .flat_map(|f| p.neighbours(f).iter().map(move |&g| (f, g)))
        .filter(|&(f, g)| f < g && p.facet_size(g) == 5)
        .count();
    FullereneStatus::Fullerene { ipr: pairs == 0, adjacent_pentagon_pairs: pairs }
}
