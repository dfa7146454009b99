//! Regular 4-colourings of facets: enumeration, equivalence, completeness.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::polytope::{CanonicalCode, FacetBijection, Polytope};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colouring has {got} entries but the polytope has {expected} facets")]
    Length { expected: usize, got: usize },
    #[error("facet {facet} has colour {colour}, expected 1..=4")]
    ColourRange { facet: usize, colour: u8 },
    #[error("adjacent facets {0} and {1} have the same colour")]
    NotProper(usize, usize),
    #[error("strict S4 comparison needs the same labelled polytope on both sides")]
    DifferentPolytopes,
    #[error("cannot parse colouring: {0}")]
    Parse(String),
}

/// The three colours met at a vertex, sorted ascending.
pub type ColourTriple = [u8; 3];

/// The four 3-subsets of {1, 2, 3, 4}, each missing one colour, in
/// lexicographic order.
pub const COLOUR_TRIPLES: [ColourTriple; 4] = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];

/// A map from facet indices to colours 1..=4, proper on adjacent facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colouring(Vec<u8>);

impl Colouring {
    /// Checks range, length and properness against `p`.
    pub fn new(p: &Polytope, colours: Vec<u8>) -> Result<Self, ColouringError> {
        if colours.len() != p.facet_count() {
            return Err(ColouringError::Length { expected: p.facet_count(), got: colours.len() });
        }
        for (facet, &colour) in colours.iter().enumerate() {
            if !(1..=4).contains(&colour) {
                return Err(ColouringError::ColourRange { facet, colour });
            }
        }
        for f in 0..p.facet_count() {
            for &g in p.neighbours(f) {
                if f < g && colours[f] == colours[g] {
                    return Err(ColouringError::NotProper(f, g));
                }
            }
        }
        Ok(Colouring(colours))
    }

    /// Parses the comma-separated text form and validates it on `p`.
    pub fn parse(p: &Polytope, text: &str) -> Result<Self, ColouringError> {
        let colours = text
            .trim()
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| ColouringError::Parse(format!("bad colour '{t}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        Colouring::new(p, colours)
    }

    pub fn colours(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn colour(&self, facet: usize) -> u8 {
        self.0[facet]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ ∘ χ`.
    pub fn permute_colours(&self, sigma: &ColourPermutation) -> Colouring {
        Colouring(self.0.iter().map(|&c| sigma.apply(c)).collect())
    }

    /// Transports the colouring along a facet bijection `phi: P -> Q`, giving
    /// the colouring `χ ∘ φ⁻¹` of Q.
    pub fn push_forward(&self, phi: &FacetBijection) -> Colouring {
        let mut out = vec![0; self.0.len()];
        for (f, &c) in self.0.iter().enumerate() {
            out[phi.apply(f)] = c;
        }
        Colouring(out)
    }

    /// Class sizes indexed by colour − 1.
    pub fn class_sizes(&self) -> [usize; 4] {
        let mut sizes = [0; 4];
        for &c in &self.0 {
            sizes[(c - 1) as usize] += 1;
        }
        sizes
    }

    /// Colour sequence with colours renamed in order of first appearance;
    /// the lexicographically least member of the S4-orbit.
    fn normalised<I: Iterator<Item = u8>>(colours: I) -> Vec<u8> {
        let mut rename = [0u8; 5];
        let mut next = 1;
        colours
            .map(|c| {
                let slot = &mut rename[c as usize];
                if *slot == 0 {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect()
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A permutation of the colours {1, 2, 3, 4}; `image[c - 1]` is σ(c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourPermutation([u8; 4]);

impl ColourPermutation {
    pub fn new(image: [u8; 4]) -> Option<Self> {
        let mut sorted = image;
        sorted.sort_unstable();
        (sorted == [1, 2, 3, 4]).then_some(ColourPermutation(image))
    }

    pub fn identity() -> Self {
        ColourPermutation([1, 2, 3, 4])
    }

    #[inline]
    pub fn apply(&self, c: u8) -> u8 {
        self.0[(c - 1) as usize]
    }

    pub fn image(&self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; 4];
        for c in 1..=4u8 {
            inv[(self.apply(c) - 1) as usize] = c;
        }
        ColourPermutation(inv)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ColourPermutation) -> Self {
        ColourPermutation(self.0.map(|c| other.apply(c)))
    }

    /// All 24 permutations in lexicographic order of their images.
    pub fn all() -> Vec<ColourPermutation> {
        let mut out = Vec::with_capacity(24);
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    for d in 1..=4u8 {
                        if let Some(p) = ColourPermutation::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ColourPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1->{} 2->{} 3->{} 4->{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Backtracking enumerator over all proper 4-colourings. Facets are coloured
/// in index order, colours tried in ascending order.
#[derive(Debug)]
pub struct Colourings<'a> {
    p: &'a Polytope,
    colours: Vec<u8>,
    pos: usize,
    state: EnumState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EnumState {
    Fresh,
    Running,
    Done,
}

impl<'a> Colourings<'a> {
    fn new(p: &'a Polytope) -> Self {
        Colourings { p, colours: vec![0; p.facet_count()], pos: 0, state: EnumState::Fresh }
    }

    /// Advances to the next complete colouring; false when exhausted.
    fn advance(&mut self) -> bool {
        let m = self.colours.len();
        match self.state {
            EnumState::Done => return false,
            EnumState::Fresh => {
                self.state = EnumState::Running;
                if m == 0 {
                    self.state = EnumState::Done;
                    return false;
                }
                self.pos = 0;
            }
            EnumState::Running => self.pos = m - 1,
        }
        loop {
            let pos = self.pos;
            let mut c = self.colours[pos] + 1;
            while c <= 4 && self.p.neighbours(pos).iter().any(|&g| self.colours[g] == c) {
                c += 1;
            }
            if c <= 4 {
                self.colours[pos] = c;
                if pos + 1 == m {
                    return true;
                }
                self.pos += 1;
            } else {
                self.colours[pos] = 0;
                if pos == 0 {
                    self.state = EnumState::Done;
                    return false;
                }
                self.pos -= 1;
            }
        }
    }
}

impl Iterator for Colourings<'_> {
    type Item = Colouring;

    fn next(&mut self) -> Option<Colouring> {
        self.advance().then(|| Colouring(self.colours.clone()))
    }
}

/// Stream of every proper 4-colouring of `p`, each exactly once.
pub fn enumerate_colourings(p: &Polytope) -> Colourings<'_> {
    Colourings::new(p)
}

/// Number of proper 4-colourings, without materialising them.
pub fn count_colourings(p: &Polytope) -> u64 {
    let mut it = Colourings::new(p);
    let mut n = 0;
    while it.advance() {
        n += 1;
    }
    n
}

/// Searches for a proper colouring in which none of the `forbidden` colour
/// triples occurs at a vertex.
pub fn find_colouring_avoiding(p: &Polytope, forbidden: &[ColourTriple]) -> Option<Colouring> {
    let m = p.facet_count();
    // Colour facets in an order that keeps the coloured region connected.
    let mut order = Vec::with_capacity(m);
    let mut placed = vec![false; m];
    let mut weight = vec![0usize; m];
    for _ in 0..m {
        let f = (0..m).filter(|&f| !placed[f]).max_by_key(|&f| (weight[f], std::cmp::Reverse(f)))?;
        placed[f] = true;
        order.push(f);
        for &g in p.neighbours(f) {
            weight[g] += 1;
        }
    }
    let mut vertices_of = vec![Vec::new(); m];
    for t in p.vertex_triples() {
        for &f in t {
            vertices_of[f].push(*t);
        }
    }
    let mut colours = vec![0u8; m];
    let ok = |colours: &[u8], f: usize| {
        p.neighbours(f).iter().all(|&g| colours[g] != colours[f])
            && vertices_of[f].iter().all(|t| {
                let mut cs = t.map(|x| colours[x]);
                cs.sort_unstable();
                cs[0] == 0 || !forbidden.contains(&cs)
            })
    };
    let mut i = 0;
    loop {
        let f = order[i];
        colours[f] += 1;
        while colours[f] <= 4 && !ok(&colours, f) {
            colours[f] += 1;
        }
        if colours[f] <= 4 {
            i += 1;
            if i == m {
                return Some(Colouring(colours));
            }
        } else {
            colours[f] = 0;
            if i == 0 {
                return None;
            }
            i -= 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceMode {
    /// Same labelled polytope; colourings differ by a colour permutation.
    StrictS4,
    /// Colourings of combinatorially equivalent polytopes, compared along
    /// every combinatorial equivalence.
    UpToIso { reflections: bool },
}

/// Decides whether `chi2` on `q` is equivalent to `chi` on `p`. On success
/// returns `(φ, σ)` with `chi2(φ(F)) = σ(chi(F))` for every facet `F`.
pub fn colourings_equivalent(
    p: &Polytope,
    chi: &Colouring,
    q: &Polytope,
    chi2: &Colouring,
    mode: EquivalenceMode,
) -> Result<Option<(FacetBijection, ColourPermutation)>, ColouringError> {
    for (poly, col) in [(p, chi), (q, chi2)] {
        if col.len() != poly.facet_count() {
            return Err(ColouringError::Length { expected: poly.facet_count(), got: col.len() });
        }
    }
    match mode {
        EquivalenceMode::StrictS4 => {
            if p != q {
                return Err(ColouringError::DifferentPolytopes);
            }
            let id = FacetBijection::identity(p.facet_count());
            Ok(matching_permutation(chi, chi2, &id).map(|s| (id, s)))
        }
        EquivalenceMode::UpToIso { reflections } => Ok(p
            .isomorphisms(q, reflections)
            .into_iter()
            .find_map(|phi| matching_permutation(chi, chi2, &phi).map(|s| (phi, s)))),
    }
}

/// The σ with `chi2(φ(F)) = σ(chi(F))` for all F, if any.
fn matching_permutation(chi: &Colouring, chi2: &Colouring, phi: &FacetBijection) -> Option<ColourPermutation> {
    let mut image = [0u8; 4];
    let mut used = [false; 5];
    for f in 0..chi.len() {
        let (a, b) = (chi.colour(f), chi2.colour(phi.apply(f)));
        let slot = &mut image[(a - 1) as usize];
        if *slot == 0 {
            if used[b as usize] {
                return None;
            }
            used[b as usize] = true;
            *slot = b;
        } else if *slot != b {
            return None;
        }
    }
    // extend to unused colours in increasing order
    let mut free = (1..=4u8).filter(|&c| !used[c as usize]);
    for slot in image.iter_mut().filter(|s| **s == 0) {
        *slot = free.next()?;
    }
    ColourPermutation::new(image)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassMode {
    /// Orbits of S4 on colourings of a fixed labelled polytope.
    S4,
    /// Orbits of Aut(P) × S4.
    S4xAut { reflections: bool },
}

/// Precomputed data for canonical colouring codes of one polytope.
#[derive(Clone, Debug)]
pub struct ColouringCanonizer {
    mode: ClassMode,
    prefix: Vec<u8>,
    orders: Vec<Vec<usize>>,
}

impl ColouringCanonizer {
    pub fn new(p: &Polytope, mode: ClassMode) -> Self {
        match mode {
            ClassMode::S4 => ColouringCanonizer {
                mode,
                prefix: Vec::new(),
                orders: vec![(0..p.facet_count()).collect()],
            },
            ClassMode::S4xAut { reflections } => {
                let mut prefix = p.canonical_code(reflections).bytes;
                prefix.extend(u32::MAX.to_be_bytes());
                ColouringCanonizer { mode, prefix, orders: p.canonical_facet_orders(reflections) }
            }
        }
    }

    pub fn code(&self, chi: &Colouring) -> CanonicalCode {
        let best = self
            .orders
            .iter()
            .map(|order| Colouring::normalised(order.iter().map(|&f| chi.colour(f))))
            .min()
            .unwrap_or_default();
        let mut bytes = self.prefix.clone();
        bytes.extend(best);
        let reflections = matches!(self.mode, ClassMode::S4xAut { reflections: true });
        CanonicalCode { bytes, reflections }
    }
}

/// Orbit representative code. Under [`ClassMode::S4`] equal codes mean
/// strict S4 equivalence on the same labelled polytope; under
/// [`ClassMode::S4xAut`] equal codes mean equivalence up to combinatorial
/// equivalence, also across differently labelled polytopes.
pub fn canonical_colouring_code(p: &Polytope, chi: &Colouring, mode: ClassMode) -> CanonicalCode {
    ColouringCanonizer::new(p, mode).code(chi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    /// Colour triples not realised at any vertex, sorted.
    pub missing: Vec<ColourTriple>,
}

/// A colouring is complete when every 3-subset of the colours is the colour
/// set of some vertex.
pub fn is_complete(p: &Polytope, chi: &Colouring) -> Completeness {
    let mut seen = [false; 4];
    for t in p.vertex_triples() {
        let mut cs = t.map(|f| chi.colour(f));
        cs.sort_unstable();
        if let Some(i) = COLOUR_TRIPLES.iter().position(|&x| x == cs) {
            seen[i] = true;
        }
    }
    let missing: Vec<ColourTriple> =
        COLOUR_TRIPLES.iter().zip(seen).filter(|(_, s)| !s).map(|(t, _)| *t).collect();
    Completeness { complete: missing.is_empty(), missing }
}

impl FromStr for ClassMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s4" => Ok(ClassMode::S4),
            "s4_x_aut" => Ok(ClassMode::S4xAut { reflections: true }),
            other => Err(format!("unknown mode '{other}'")),
        }
    }
}
