//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use pogorelov::polytope::Polytope;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.txt"))
}

pub fn fixture(name: &str) -> Polytope {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    Polytope::from_face_list(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every fixture name, smallest first.
pub const ALL: [&str; 10] =
    ["tetrahedron", "prism3", "cube", "prism5", "dodecahedron", "c20", "c24", "c26", "c28", "c60"];

/// Fixtures with at most 14 facets.
pub const SMALL: [&str; 6] = ["tetrahedron", "prism3", "cube", "prism5", "dodecahedron", "c24"];

/// A random relabelling of vertices and facets. Returns the relabelled
/// polytope and the facet map `f -> ρ(f)`.
pub fn relabel<R: Rng>(p: &Polytope, rng: &mut R) -> (Polytope, Vec<usize>) {
    let mut vperm: Vec<usize> = (0..p.vertex_count()).collect();
    let mut fperm: Vec<usize> = (0..p.facet_count()).collect();
    vperm.shuffle(rng);
    fperm.shuffle(rng);
    (p.relabel(&vperm, &fperm).unwrap(), fperm)
}

/// The same polytope written as a face list with shuffled lines, rotated and
/// possibly reversed cycles, and scrambled vertex ids.
pub fn scrambled_face_list<R: Rng>(p: &Polytope, rng: &mut R) -> String {
    let mut ids: Vec<usize> = (0..p.vertex_count()).map(|v| 3 * v + 7).collect();
    ids.shuffle(rng);
    let mut lines: Vec<String> = (0..p.facet_count())
        .map(|f| {
            let mut vs = p.facet_vertices(f);
            let r = rng.gen_range(0..vs.len());
            vs.rotate_left(r);
            if rng.gen_bool(0.5) {
                vs.reverse();
            }
            vs.iter().map(|&v| ids[v].to_string()).collect::<Vec<_>>().join(" ")
        })
        .collect();
    lines.shuffle(rng);
    lines.join("\n")
}

/// Facet adjacency graph as an edge list.
pub fn facet_graph(p: &Polytope) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    for f in 0..p.facet_count() {
        for &g in p.neighbours(f) {
            if f < g {
                edges.push((f, g));
            }
        }
    }
    (p.facet_count(), edges)
}

/// Chromatic polynomial at `k` by deletion–contraction, memoised on the
/// (relabelled) edge set.
pub fn chromatic_polynomial_at(n: usize, edges: &[(usize, usize)], k: i128) -> i128 {
    let mut memo = HashMap::new();
    let set: BTreeSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    dc(n, set, k, &mut memo)
}

fn normalise(n: usize, edges: &BTreeSet<(usize, usize)>) -> (usize, BTreeSet<(usize, usize)>, usize) {
    // drop isolated vertices, relabel the rest densely in order
    let mut used: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    used.sort_unstable();
    used.dedup();
    let index: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let relabelled = edges.iter().map(|&(a, b)| (index[&a], index[&b])).collect();
    (used.len(), relabelled, n - used.len())
}

type Memo = HashMap<(usize, Vec<(usize, usize)>), i128>;

fn dc(n: usize, edges: BTreeSet<(usize, usize)>, k: i128, memo: &mut Memo) -> i128 {
    let (n2, edges, isolated) = normalise(n, &edges);
    let factor = k.pow(isolated as u32);
    if edges.is_empty() {
        return factor * k.pow(n2 as u32);
    }
    let key = (n2, edges.iter().copied().collect::<Vec<_>>());
    if let Some(&v) = memo.get(&key) {
        return factor * v;
    }
    // a leaf contributes a factor k - 1
    let mut degree = vec![0; n2];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let value = if let Some(leaf) = (0..n2).find(|&v| degree[v] == 1) {
        let rest: BTreeSet<_> = edges.iter().copied().filter(|&(a, b)| a != leaf && b != leaf).collect();
        (k - 1) * dc(n2 - 1, relabel_without(&rest, leaf), k, memo)
    } else {
        let &(u, v) = edges.iter().next().unwrap();
        let mut deleted = edges.clone();
        deleted.remove(&(u, v));
        let contracted: BTreeSet<(usize, usize)> = edges
            .iter()
            .filter(|&&e| e != (u, v))
            .map(|&(a, b)| {
                let a = if a == v { u } else { a };
                let b = if b == v { u } else { b };
                (a.min(b), a.max(b))
            })
            .collect();
        dc(n2, deleted, k, memo) - dc(n2 - 1, relabel_without(&contracted, v), k, memo)
    };
    memo.insert(key, value);
    factor * value
}

/// Removes vertex `gone` (which has no edges left) by shifting labels down.
fn relabel_without(edges: &BTreeSet<(usize, usize)>, gone: usize) -> BTreeSet<(usize, usize)> {
    let f = |x: usize| if x > gone { x - 1 } else { x };
    edges.iter().map(|&(a, b)| (f(a), f(b))).collect()
}

/// Naive belt oracle: every k-subset in every cyclic order, checked against
/// the definition using only adjacency and vertex triples.
pub fn naive_belts(p: &Polytope, k: usize) -> BTreeSet<Vec<usize>> {
    let m = p.facet_count();
    let adjacent = |a: usize, b: usize| p.neighbours(a).contains(&b);
    let mut out = BTreeSet::new();
    let mut subset: Vec<usize> = Vec::new();
    fn subsets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            all.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            subsets(m, k, x + 1, cur, all);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(m, k, 0, &mut subset, &mut all);
    for s in all {
        // first element fixed, permute the rest
        let rest = s[1..].to_vec();
        for perm in permutations(&rest) {
            let cyc: Vec<usize> = std::iter::once(s[0]).chain(perm).collect();
            let ok_adj = (0..k).all(|i| {
                (0..k).all(|j| {
                    if i == j {
                        return true;
                    }
                    let d = (i as isize - j as isize).rem_euclid(k as isize) as usize;
                    let consecutive = d == 1 || d == k - 1;
                    adjacent(cyc[i], cyc[j]) == consecutive
                })
            });
            let no_common_vertex = p
                .vertex_triples()
                .iter()
                .all(|t| t.iter().filter(|f| cyc.contains(f)).count() < 3);
            if ok_adj && no_common_vertex {
                // canonical direction: second < last
                if cyc[1] < cyc[k - 1] {
                    out.insert(cyc);
                }
            }
        }
    }
    out
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Disjoint-set forest for direct orbit enumeration.
pub struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    pub fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Random integer matrix with determinant ±1, as three columns.
pub fn random_unimodular<R: Rng>(rng: &mut R) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..rng.gen_range(0..8) {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..3);
        while j == i {
            j = rng.gen_range(0..3);
        }
        match rng.gen_range(0..3) {
            // column i += c * column j
            0 => {
                let c = rng.gen_range(-3..=3);
                let src = m[j];
                for (x, y) in m[i].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
            1 => m.swap(i, j),
            _ => m[i] = m[i].map(|x| -x),
        }
    }
    m
}
