//! Canonical codes and isomorphisms of combinatorial maps.
//!
//! Both rest on the same fact: a map isomorphism between connected maps is
//! determined by the image of a single dart together with whether it keeps
//! or reverses the rotation.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{rot, rot_inv, Polytope};

/// Canonical form of a polytope (or of a coloured polytope, see
/// [`crate::colouring::canonical_colouring_code`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub bytes: Vec<u8>,
    /// Whether mirror images were identified.
    pub reflections: bool,
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bytes {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// A map from the facets of one polytope to the facets of another:
/// `map[f]` is the image of facet `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetBijection {
    pub map: Vec<usize>,
}

impl FacetBijection {
    pub fn identity(m: usize) -> Self {
        FacetBijection { map: (0..m).collect() }
    }

    #[inline]
    pub fn apply(&self, f: usize) -> usize {
        self.map[f]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (f, &g) in self.map.iter().enumerate() {
            inv[g] = f;
        }
        FacetBijection { map: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FacetBijection) -> Self {
        FacetBijection { map: self.map.iter().map(|&g| other.map[g]).collect() }
    }

    /// True if this bijection carries adjacency and vertex triples of `p`
    /// exactly onto those of `q`.
    pub fn is_isomorphism(&self, p: &Polytope, q: &Polytope) -> bool {
        if self.map.len() != p.facet_count() || p.facet_count() != q.facet_count() {
            return false;
        }
        let mut seen = vec![false; self.map.len()];
        if !self.map.iter().all(|&g| g < seen.len() && !std::mem::replace(&mut seen[g], true)) {
            return false;
        }
        let mut image: Vec<[usize; 3]> = p
            .vertex_triples()
            .iter()
            .map(|t| {
                let mut s = t.map(|f| self.map[f]);
                s.sort_unstable();
                s
            })
            .collect();
        image.sort_unstable();
        let mut target = q.vertex_triples().to_vec();
        target.sort_unstable();
        image == target
            && (0..p.facet_count()).all(|f| {
                let mut img: Vec<usize> = p.neighbours(f).iter().map(|&g| self.map[g]).collect();
                img.sort_unstable();
                img == q.neighbours(self.map[f])
            })
    }
}

/// A rooting: start dart plus traversal direction of the rotation.
#[derive(Clone, Copy, Debug)]
struct Rooting {
    dart: usize,
    mirrored: bool,
}

impl Polytope {
    #[inline]
    fn step(&self, d: usize, mirrored: bool) -> usize {
        if mirrored {
            rot_inv(d)
        } else {
            rot(d)
        }
    }

    /// Breadth-first code of the map rooted at `root`, plus the vertex
    /// numbering (1-based, order of discovery) it induces.
    fn bfs_code(&self, root: Rooting) -> (Vec<u32>, Vec<u32>) {
        let n = self.vertex_count();
        let mut number = vec![0u32; n];
        let mut next = 1u32;
        let mut code = Vec::with_capacity(4 * n);
        let mut queue = VecDeque::with_capacity(n);
        number[root.dart / 3] = next;
        next += 1;
        queue.push_back(root.dart);
        while let Some(start) = queue.pop_front() {
            let mut d = start;
            for _ in 0..3 {
                let w = self.head(d);
                if number[w] == 0 {
                    number[w] = next;
                    next += 1;
                    queue.push_back(self.rev(d));
                }
                code.push(number[w]);
                d = self.step(d, root.mirrored);
            }
            code.push(0);
        }
        (code, number)
    }

    fn rootings(&self, reflections: bool) -> impl Iterator<Item = Rooting> + '_ {
        let mirrors: &[bool] = if reflections { &[false, true] } else { &[false] };
        mirrors
            .iter()
            .flat_map(move |&mirrored| (0..self.dart_count()).map(move |dart| Rooting { dart, mirrored }))
    }

    /// Minimal BFS code and every rooting attaining it.
    fn minimal_rootings(&self, reflections: bool) -> (Vec<u32>, Vec<Vec<u32>>) {
        let mut best: Option<Vec<u32>> = None;
        let mut numberings = Vec::new();
        for r in self.rootings(reflections) {
            let (code, number) = self.bfs_code(r);
            match best.as_ref().map(|b| code.cmp(b)) {
                Some(std::cmp::Ordering::Greater) => {}
                Some(std::cmp::Ordering::Equal) => numberings.push(number),
                _ => {
                    best = Some(code);
                    numberings.clear();
                    numberings.push(number);
                }
            }
        }
        (best.unwrap_or_default(), numberings)
    }

    /// Canonical code: the lexicographically least rooted breadth-first
    /// encoding over all darts (and both orientations when `reflections`).
    /// Two polytopes have equal codes iff their maps are isomorphic.
    pub fn canonical_code(&self, reflections: bool) -> CanonicalCode {
        let (code, _) = self.minimal_rootings(reflections);
        CanonicalCode {
            bytes: code.iter().flat_map(|x| x.to_be_bytes()).collect(),
            reflections,
        }
    }

    /// Facet orders induced by the canonical rootings. Each order lists the
    /// facet indices of `self` in canonical position; isomorphic polytopes
    /// produce the same set of orders up to the isomorphism, and there is one
    /// order per automorphism.
    pub fn canonical_facet_orders(&self, reflections: bool) -> Vec<Vec<usize>> {
        let (_, numberings) = self.minimal_rootings(reflections);
        numberings
            .into_iter()
            .map(|number| {
                let mut keyed: Vec<(Vec<u32>, usize)> = (0..self.facet_count())
                    .map(|f| {
                        let mut k: Vec<u32> = self.facet_vertices(f).iter().map(|&v| number[v]).collect();
                        k.sort_unstable();
                        (k, f)
                    })
                    .collect();
                keyed.sort_unstable();
                keyed.into_iter().map(|(_, f)| f).collect()
            })
            .collect()
    }

    /// Extends `dart0 -> image0` to a dart map, or `None` if it does not
    /// extend to a map isomorphism.
    fn extend_dart_map(&self, other: &Polytope, dart0: usize, image0: usize, mirrored: bool) -> Option<Vec<usize>> {
        let mut image = vec![usize::MAX; self.dart_count()];
        let mut hit = vec![false; other.dart_count()];
        image[dart0] = image0;
        hit[image0] = true;
        let mut stack = vec![dart0];
        while let Some(d) = stack.pop() {
            let e = image[d];
            for (nd, ne) in [(self.rev(d), other.rev(e)), (rot(d), other.step(e, mirrored))] {
                if image[nd] == usize::MAX {
                    if hit[ne] {
                        return None;
                    }
                    image[nd] = ne;
                    hit[ne] = true;
                    stack.push(nd);
                } else if image[nd] != ne {
                    return None;
                }
            }
        }
        Some(image)
    }

    /// Every combinatorial equivalence `self -> other`, as facet bijections.
    /// With `other == self` this is the automorphism group. Orientation
    /// reversing maps are included when `reflections` is set.
    pub fn isomorphisms(&self, other: &Polytope, reflections: bool) -> Vec<FacetBijection> {
        if self.vertex_count() != other.vertex_count() || self.facet_count() != other.facet_count() {
            return Vec::new();
        }
        let facet_by_vertices: HashMap<Vec<usize>, usize> = (0..other.facet_count())
            .map(|f| {
                let mut vs = other.facet_vertices(f);
                vs.sort_unstable();
                (vs, f)
            })
            .collect();
        let mut out = Vec::new();
        for Rooting { dart, mirrored } in other.rootings(reflections) {
            let Some(image) = self.extend_dart_map(other, 0, dart, mirrored) else {
                continue;
            };
            let vertex_map: Vec<usize> = (0..self.vertex_count()).map(|v| image[3 * v] / 3).collect();
            let map = (0..self.facet_count())
                .map(|f| {
                    let mut vs: Vec<usize> = self.facet_vertices(f).iter().map(|&v| vertex_map[v]).collect();
                    vs.sort_unstable();
                    facet_by_vertices.get(&vs).copied()
                })
                .collect::<Option<Vec<usize>>>();
            if let Some(map) = map {
                out.push(FacetBijection { map });
            }
        }
        out.sort();
        out
    }

    /// Facet automorphism group.
    pub fn automorphisms(&self, reflections: bool) -> Vec<FacetBijection> {
        self.isomorphisms(self, reflections)
    }

    pub fn is_isomorphic(&self, other: &Polytope, reflections: bool) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.canonical_code(reflections) == other.canonical_code(reflections)
    }
}
