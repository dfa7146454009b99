//! Manifold-level invariants read off characteristic pairs: orientability of
//! small covers, mod 2 Betti numbers, and the census of colouring classes.
//!
//! Over a polytope of the Pogorelov class, small covers (and 6-dimensional
//! quasitoric manifolds) defined by `λ_χ` are diffeomorphic exactly when the
//! polytopes are combinatorially equivalent and the colourings are
//! equivalent, so counting colouring classes counts manifolds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::belts::{fullerene_status, is_pogorelov, FullereneStatus, PogorelovVerdict};
use crate::charfun::{lambda_chi, reduce_mod2, CharFun, CharFunError, Ring};
use crate::colouring::{enumerate_colourings, is_complete, ClassMode, ColourPermutation, ColouringCanonizer};
use crate::polytope::{CanonicalCode, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientabilityVerdict {
    pub orientable: bool,
    /// Bit mask of a functional φ: 𝔽₂³ → 𝔽₂ with φ(λ(F)) = 1 for all F.
    pub witness: Option<u8>,
}

/// Orientability of the small cover `M(P, λ)`: orientable iff some nonzero
/// functional takes the value 1 on every `λ(F)`. Scans all seven.
pub fn is_orientable_small_cover(p: &Polytope, lambda: &CharFun) -> Result<OrientabilityVerdict, CharFunError> {
    if lambda.ring() != Ring::F2 {
        return Err(CharFunError::RingMismatch(lambda.ring(), Ring::F2));
    }
    if lambda.len() != p.facet_count() {
        return Err(CharFunError::Length { expected: p.facet_count(), got: lambda.len() });
    }
    let image: Vec<u8> = lambda
        .image()
        .iter()
        .map(|v| (v[0] | v[1] << 1 | v[2] << 2) as u8)
        .collect();
    let witness = (1..8u8).find(|phi| image.iter().all(|v| (phi & v).count_ones() % 2 == 1));
    Ok(OrientabilityVerdict { orientable: witness.is_some(), witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldKind {
    /// 3-dimensional, with a ℤ₂³ action.
    SmallCover,
    /// 6-dimensional, with a T³ action.
    Quasitoric,
}

/// h-vector of the simplicial sphere dual to `p`.
pub fn h_vector(p: &Polytope) -> [i64; 4] {
    let f0 = p.facet_count() as i64;
    let f1 = p.edge_count() as i64;
    let f2 = p.vertex_count() as i64;
    [1, f0 - 3, f1 - 2 * f0 + 3, f2 - f1 + f0 - 1]
}

/// Mod 2 Betti numbers of any small cover (degrees 0..=3) or quasitoric
/// manifold (degrees 0..=6) over `p`; both are given by the h-vector.
pub fn betti_z2(p: &Polytope, kind: ManifoldKind) -> Vec<i64> {
    let h = h_vector(p);
    match kind {
        ManifoldKind::SmallCover => h.to_vec(),
        ManifoldKind::Quasitoric => (0..7).map(|d| if d % 2 == 0 { h[d / 2] } else { 0 }).collect(),
    }
}

/// Census line for one combinatorial type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub code: CanonicalCode,
    /// How many inputs had this type.
    pub multiplicity: usize,
    pub facets: usize,
    pub vertices: usize,
    pub pogorelov: PogorelovVerdict,
    pub fullerene: FullereneStatus,
    pub colourings: u64,
    pub classes_s4: u64,
    pub classes_s4_x_aut: u64,
    pub automorphisms: usize,
    pub complete_colourings: u64,
    /// Colourings whose small cover `M(P, λ_χ)` is orientable.
    pub orientable_colourings: u64,
}

impl CensusEntry {
    /// The count selected by `mode`.
    pub fn classes(&self, mode: ClassMode) -> u64 {
        match mode {
            ClassMode::S4 => self.classes_s4,
            ClassMode::S4xAut { .. } => self.classes_s4_x_aut,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub mode: ClassMode,
    /// Sorted by facet count, then canonical code.
    pub entries: Vec<CensusEntry>,
}

/// Analyses one polytope for the census.
pub fn census_entry(p: &Polytope, reflections: bool) -> CensusEntry {
    let s4 = ColouringCanonizer::new(p, ClassMode::S4);
    let full = ColouringCanonizer::new(p, ClassMode::S4xAut { reflections });
    let mut s4_codes = BTreeSet::new();
    let mut full_codes = BTreeSet::new();
    let (mut colourings, mut complete, mut orientable) = (0, 0, 0);
    for chi in enumerate_colourings(p) {
        colourings += 1;
        s4_codes.insert(s4.code(&chi));
        full_codes.insert(full.code(&chi));
        if is_complete(p, &chi).complete {
            complete += 1;
        }
        let lambda = reduce_mod2(&lambda_chi(p, &chi));
        if is_orientable_small_cover(p, &lambda).is_ok_and(|v| v.orientable) {
            orientable += 1;
        }
    }
    CensusEntry {
        code: p.canonical_code(reflections),
        multiplicity: 1,
        facets: p.facet_count(),
        vertices: p.vertex_count(),
        pogorelov: is_pogorelov(p),
        fullerene: fullerene_status(p),
        colourings,
        classes_s4: s4_codes.len() as u64,
        classes_s4_x_aut: full_codes.len() as u64,
        automorphisms: p.automorphisms(reflections).len(),
        complete_colourings: complete,
        orientable_colourings: orientable,
    }
}

/// Deduplicates the inputs up to combinatorial equivalence and counts the
/// colouring classes of every type. For types outside the Pogorelov class
/// the counts are reported but carry no manifold interpretation.
pub fn classify(polytopes: &[Polytope], mode: ClassMode) -> Census {
    let reflections = match mode {
        ClassMode::S4 => true,
        ClassMode::S4xAut { reflections } => reflections,
    };
    let mut groups: BTreeMap<(usize, CanonicalCode), (usize, &Polytope)> = BTreeMap::new();
    for p in polytopes {
        groups.entry((p.facet_count(), p.canonical_code(reflections))).or_insert((0, p)).0 += 1;
    }
    let entries = groups
        .into_values()
        .map(|(count, p)| CensusEntry { multiplicity: count, ..census_entry(p, reflections) })
        .collect();
    Census { mode, entries }
}

/// Orbit count of Aut(P) × S4 on proper colourings via Burnside's lemma:
/// the average number of colourings fixed by `χ ↦ σ ∘ χ ∘ φ⁻¹`.
pub fn burnside_class_count(p: &Polytope, reflections: bool) -> u64 {
    let all: Vec<Vec<u8>> = enumerate_colourings(p).map(|c| c.colours().to_vec()).collect();
    let auts = p.automorphisms(reflections);
    let perms = ColourPermutation::all();
    let mut fixed = 0u64;
    for phi in &auts {
        for sigma in &perms {
            fixed += all
                .iter()
                .filter(|chi| (0..chi.len()).all(|f| chi[phi.apply(f)] == sigma.apply(chi[f])))
                .count() as u64;
        }
    }
    let order = (auts.len() * perms.len()) as u64;
    debug_assert_eq!(fixed % order, 0);
    fixed / order
}

fn mode_name(mode: ClassMode) -> &'static str {
    match mode {
        ClassMode::S4 => "s4",
        ClassMode::S4xAut { .. } => "s4_x_aut",
    }
}

fn fullerene_text(status: FullereneStatus) -> String {
    match status {
        FullereneStatus::NotFullerene => "no".into(),
        FullereneStatus::Fullerene { ipr, adjacent_pentagon_pairs } => {
            format!("yes (ipr: {}, adjacent pentagon pairs: {adjacent_pentagon_pairs})", yes_no(ipr))
        }
    }
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Census {
    /// Line-oriented human readable report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "census: {} type(s), mode {}", self.entries.len(), mode_name(self.mode));
        for (i, e) in self.entries.iter().enumerate() {
            let _ = writeln!(out, "type {}: {} facets, {} vertices, {} input(s)", i + 1, e.facets, e.vertices, e.multiplicity);
            match &e.pogorelov.witness {
                None => {
                    let _ = writeln!(out, "  Pogorelov: yes");
                }
                Some(w) => {
                    let _ = writeln!(out, "  Pogorelov: no ({w}); manifold classification does not apply");
                }
            }
            let _ = writeln!(out, "  fullerene: {}", fullerene_text(e.fullerene));
            let _ = writeln!(out, "  automorphisms: {}", e.automorphisms);
            let _ = writeln!(out, "  colourings: {}", e.colourings);
            let _ = writeln!(out, "  complete colourings: {}", e.complete_colourings);
            let _ = writeln!(out, "  orientable small covers (lambda_chi): {}", e.orientable_colourings);
            let _ = writeln!(out, "  classes s4: {}", e.classes_s4);
            let _ = writeln!(out, "  classes s4_x_aut: {}", e.classes_s4_x_aut);
            let _ = writeln!(out, "  classes: {}", e.classes(self.mode));
            if e.pogorelov.is_pogorelov {
                let _ = writeln!(
                    out,
                    "  manifold classes (small covers / quasitoric 6-manifolds): {}",
                    e.classes_s4_x_aut
                );
            }
        }
        out
    }

    /// Machine-readable `key=value` block per type, blank line separated.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let (fullerene, ipr, pairs) = match e.fullerene {
                FullereneStatus::NotFullerene => (false, false, 0),
                FullereneStatus::Fullerene { ipr, adjacent_pentagon_pairs } => (true, ipr, adjacent_pentagon_pairs),
            };
            let _ = writeln!(out, "code={}", e.code);
            let _ = writeln!(out, "inputs={}", e.multiplicity);
            let _ = writeln!(out, "facets={}", e.facets);
            let _ = writeln!(out, "vertices={}", e.vertices);
            let _ = writeln!(out, "pogorelov={}", e.pogorelov.is_pogorelov);
            if let Some(w) = &e.pogorelov.witness {
                let _ = writeln!(out, "obstruction={w}");
            }
            let _ = writeln!(out, "fullerene={fullerene}");
            let _ = writeln!(out, "ipr={ipr}");
            let _ = writeln!(out, "adjacent_pentagon_pairs={pairs}");
            let _ = writeln!(out, "automorphisms={}", e.automorphisms);
            let _ = writeln!(out, "colourings={}", e.colourings);
            let _ = writeln!(out, "complete_colourings={}", e.complete_colourings);
            let _ = writeln!(out, "orientable_colourings={}", e.orientable_colourings);
            let _ = writeln!(out, "classes_s4={}", e.classes_s4);
            let _ = writeln!(out, "classes_s4_x_aut={}", e.classes_s4_x_aut);
            let _ = writeln!(out, "mode={}", mode_name(self.mode));
            let _ = writeln!(out, "classes={}", e.classes(self.mode));
            let _ = writeln!(out, "classification_applies={}", e.pogorelov.is_pogorelov);
            out.push('\n');
        }
        out
    }
}
