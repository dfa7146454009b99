//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints its own PASS/FAIL line.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{chromatic_polynomial_at, facet_graph, fixture, naive_belts, random_unimodular, relabel, UnionFind};
use pogorelov::belts::{find_belts, is_belt, is_pogorelov, Obstruction};
use pogorelov::charfun::{
    charfun_equivalent_f2_oracle, charfuns_equivalent, colouring_defined_charfuns_f2, invertible_f2_matrices,
    lambda_chi, lambda_chi_k, lambda_from_colouring, reduce_mod2, validate_charfun, CharFun, Ring,
};
use pogorelov::colouring::{
    colourings_equivalent, count_colourings, enumerate_colourings, find_colouring_avoiding, is_complete, ClassMode,
    ColourPermutation, Colouring, EquivalenceMode,
};
use pogorelov::invariants::{burnside_class_count, classify, is_orientable_small_cover};
use pogorelov::Polytope;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const FIXTURES: [&str; 10] =
    ["tetrahedron", "prism3", "cube", "prism5", "dodecahedron", "c20", "c24", "c26", "c28", "c60"];

fn c60_incomplete() -> (Polytope, Colouring) {
    let p = fixture("c60");
    let chi = find_colouring_avoiding(&p, &[[1, 2, 4]]).expect("C60 has a colouring without {1,2,4}");
    (p, chi)
}

fn pogorelov_gate() -> Check {
    for name in ["c20", "c24", "c26", "c28", "c60"] {
        let v = is_pogorelov(&fixture(name));
        ensure!(v.is_pogorelov && v.witness.is_none(), "{name} should be Pogorelov");
    }
    let mut witnesses = Vec::new();
    for name in ["tetrahedron", "cube", "prism3", "prism5"] {
        let p = fixture(name);
        let v = is_pogorelov(&p);
        ensure!(!v.is_pogorelov, "{name} should not be Pogorelov");
        match &v.witness {
            Some(Obstruction::Tetrahedron) => ensure!(p.is_tetrahedron(), "{name}: bogus tetrahedron witness"),
            Some(Obstruction::Belt(b)) => {
                ensure!((b.len() == 3 || b.len() == 4) && is_belt(&p, b.facets()), "{name}: bad witness {b}")
            }
            None => return Err(format!("{name}: no witness")),
        }
        witnesses.push(format!("{name}: {}", v.witness.unwrap()));
    }
    Ok(witnesses.join(", "))
}

fn belt_counts() -> Check {
    let expect = [("prism3", 3, 1), ("cube", 4, 3), ("dodecahedron", 3, 0), ("dodecahedron", 4, 0)];
    for (name, k, n) in expect {
        let got = find_belts(&fixture(name), k).unwrap().len();
        ensure!(got == n, "{name}: {got} {k}-belts, expected {n}");
    }
    let mut compared = 0;
    for name in FIXTURES {
        let p = fixture(name);
        if p.facet_count() > 14 {
            continue;
        }
        for k in [3, 4] {
            let fast: BTreeSet<Vec<usize>> =
                find_belts(&p, k).unwrap().into_iter().map(|b| b.facets().to_vec()).collect();
            ensure!(fast == naive_belts(&p, k), "{name}: {k}-belts disagree with the naive oracle");
            compared += 1;
        }
    }
    Ok(format!("{compared} (fixture, k) pairs agree with the naive oracle"))
}

fn colouring_counts() -> Check {
    for (name, n) in [("tetrahedron", 24u64), ("prism3", 24), ("cube", 96), ("dodecahedron", 240)] {
        let p = fixture(name);
        let got = count_colourings(&p);
        let (m, edges) = facet_graph(&p);
        let oracle = chromatic_polynomial_at(m, &edges, 4);
        ensure!(got == n && oracle == n as i128, "{name}: backtracking {got}, chromatic polynomial {oracle}, expected {n}");
    }
    Ok("24 / 24 / 96 / 240".into())
}

fn random_signs(rng: &mut ChaCha8Rng) -> [i64; 3] {
    std::array::from_fn(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
}

fn basis_independence() -> Check {
    let names = ["tetrahedron", "prism3", "cube", "prism5", "dodecahedron", "c20", "c24", "c26", "c28"];
    let colourings: HashMap<&str, (Polytope, Vec<Colouring>)> = names
        .iter()
        .map(|&n| {
            let p = fixture(n);
            let all = enumerate_colourings(&p).collect();
            (n, (p, all))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let name = names.choose(&mut rng).unwrap();
        let (p, all) = &colourings[name];
        let chi = all.choose(&mut rng).unwrap();
        let basis = random_unimodular(&mut rng);
        let signs = random_signs(&mut rng);
        let l = lambda_from_colouring(p, chi, basis, signs).map_err(|e| format!("instance {i}: {e}"))?;
        let lc = lambda_chi(p, chi);
        let t = charfuns_equivalent(p, &l, &lc).unwrap();
        ensure!(t.is_some_and(|t| t.verify(&l, &lc)), "instance {i} on {name}: not equivalent over Z");
        let (l2, lc2) = (reduce_mod2(&l), reduce_mod2(&lc));
        let t2 = charfuns_equivalent(p, &l2, &lc2).unwrap();
        ensure!(t2.is_some_and(|t| t.verify(&l2, &lc2)), "instance {i} on {name}: not equivalent over F2");
    }
    Ok("200/200 instances equivalent over Z and F2".into())
}

fn colouring_vs_charfun() -> Check {
    let mut pairs = 0u64;
    for name in ["tetrahedron", "prism3", "cube", "dodecahedron"] {
        let p = fixture(name);
        let all: Vec<Colouring> = enumerate_colourings(&p).collect();
        let lz: Vec<CharFun> = all.iter().map(|c| lambda_chi(&p, c)).collect();
        let l2: Vec<CharFun> = lz.iter().map(reduce_mod2).collect();
        for i in 0..all.len() {
            for j in 0..all.len() {
                let colours =
                    colourings_equivalent(&p, &all[i], &p, &all[j], EquivalenceMode::StrictS4).unwrap().is_some();
                let z = charfuns_equivalent(&p, &lz[i], &lz[j]).unwrap();
                let f2 = charfuns_equivalent(&p, &l2[i], &l2[j]).unwrap();
                ensure!(z.is_some() == colours, "{name} {} / {}: Z disagrees", all[i], all[j]);
                ensure!(f2.is_some() == colours, "{name} {} / {}: F2 disagrees", all[i], all[j]);
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, both rings"))
}

fn colouring_defined_functions() -> Check {
    let mut total = 0usize;
    for name in ["c20", "c24"] {
        let p = fixture(name);
        for chi in enumerate_colourings(&p) {
            if !is_complete(&p, &chi).complete {
                continue;
            }
            let base = reduce_mod2(&lambda_chi(&p, &chi));
            for l in colouring_defined_charfuns_f2(&p, &chi).unwrap() {
                let t = charfuns_equivalent(&p, &l, &base).unwrap();
                ensure!(t.is_some_and(|t| t.verify(&l, &base)), "{name} {chi}: a colouring-defined function is not equivalent to lambda_chi");
                total += 1;
            }
        }
    }
    Ok(format!("{total} functions checked"))
}

fn lambda_k_family() -> Check {
    let (p, chi) = c60_incomplete();
    let base = lambda_chi(&p, &chi);
    for k in -10..=10 {
        let l = lambda_chi_k(&p, &chi, k).map_err(|e| format!("k={k}: {e}"))?;
        ensure!(validate_charfun(&p, &l).unwrap().is_valid(), "k={k}: invalid");
    }
    for k in [-3, -2, 0, 2, 3] {
        let l = lambda_chi_k(&p, &chi, k).unwrap();
        ensure!(charfuns_equivalent(&p, &l, &base).unwrap().is_none(), "k={k}: unexpectedly equivalent");
    }
    for k in [-1, 1] {
        let l = lambda_chi_k(&p, &chi, k).unwrap();
        let t = charfuns_equivalent(&p, &l, &base).unwrap();
        ensure!(t.is_some_and(|t| t.verify(&l, &base)), "k={k}: should be equivalent");
    }
    let l0 = reduce_mod2(&lambda_chi_k(&p, &chi, 0).unwrap());
    let l1 = reduce_mod2(&lambda_chi_k(&p, &chi, 1).unwrap());
    ensure!(l1 == reduce_mod2(&base), "lambda_chi_1 mod 2 differs from lambda_chi mod 2");
    ensure!(charfuns_equivalent(&p, &l0, &l1).unwrap().is_none(), "k=0 equivalent to k=1 over F2");
    Ok(format!("colouring {chi} misses {:?}; k in -10..=10 valid", is_complete(&p, &chi).missing))
}

fn orientability() -> Check {
    let mut n = 0u64;
    for name in FIXTURES {
        let p = fixture(name);
        for chi in enumerate_colourings(&p) {
            let v = is_orientable_small_cover(&p, &reduce_mod2(&lambda_chi(&p, &chi))).unwrap();
            ensure!(v.orientable, "{name} {chi}: lambda_chi mod 2 is non-orientable");
            n += 1;
        }
    }
    let (p, chi) = c60_incomplete();
    let l0 = reduce_mod2(&lambda_chi_k(&p, &chi, 0).unwrap());
    ensure!(!is_orientable_small_cover(&p, &l0).unwrap().orientable, "lambda_(chi,0) mod 2 is orientable");
    Ok(format!("{n} colourings orientable; C60 k=0 non-orientable"))
}

fn direct_orbits(p: &Polytope) -> u64 {
    let all: Vec<Colouring> = enumerate_colourings(p).collect();
    let index: HashMap<Vec<u8>, usize> = all.iter().enumerate().map(|(i, c)| (c.colours().to_vec(), i)).collect();
    let mut uf = UnionFind::new(all.len());
    for phi in p.automorphisms(true) {
        for (i, chi) in all.iter().enumerate() {
            let moved = chi.push_forward(&phi);
            for sigma in ColourPermutation::all() {
                uf.union(i, index[moved.permute_colours(&sigma).colours()]);
            }
        }
    }
    uf.classes() as u64
}

fn census() -> Check {
    let d = fixture("dodecahedron");
    let base = classify(std::slice::from_ref(&d), ClassMode::S4);
    ensure!(base.entries.len() == 1, "expected one type");
    let s4 = base.entries[0].classes_s4;
    ensure!(s4 == 10, "s4 classes {s4}, expected 10");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut inputs = vec![d.clone()];
    for _ in 0..4 {
        inputs.push(relabel(&d, &mut rng).0);
    }
    inputs.push(d.clone());
    inputs.shuffle(&mut rng);
    let again = classify(&inputs, ClassMode::S4);
    ensure!(again.entries.len() == 1 && again.entries[0].classes_s4 == 10, "not invariant under relabelling");
    ensure!(again.entries[0].multiplicity == 6, "duplicates not merged");
    for q in &inputs {
        let e = classify(std::slice::from_ref(q), ClassMode::S4).entries.remove(0);
        ensure!(e.classes_s4 == 10, "relabelled copy gives {}", e.classes_s4);
    }
    let aut = classify(std::slice::from_ref(&d), ClassMode::S4xAut { reflections: true }).entries.remove(0);
    let (direct, burnside) = (direct_orbits(&d), burnside_class_count(&d, true));
    ensure!(aut.classes_s4_x_aut <= 10, "s4_x_aut {} exceeds 10", aut.classes_s4_x_aut);
    ensure!(
        aut.classes_s4_x_aut == direct && direct == burnside,
        "s4_x_aut {} / direct orbits {direct} / Burnside {burnside}",
        aut.classes_s4_x_aut
    );
    Ok(format!("s4 = {s4}, s4_x_aut = {direct} (direct = Burnside)"))
}

fn f2_oracle_agreement() -> Check {
    let names = ["tetrahedron", "prism3", "cube", "prism5", "dodecahedron", "c24"];
    let polys: Vec<(Polytope, Vec<Colouring>)> = names
        .iter()
        .map(|n| {
            let p = fixture(n);
            let all = enumerate_colourings(&p).collect();
            (p, all)
        })
        .collect();
    let matrices = invertible_f2_matrices();
    ensure!(matrices.len() == 168, "{} invertible matrices", matrices.len());
    let mut rng = ChaCha8Rng::seed_from_u64(168);
    let mut equivalent = 0;
    for i in 0..1000 {
        let (p, all) = polys.choose(&mut rng).unwrap();
        let pick = |rng: &mut ChaCha8Rng| {
            let chi = all.choose(rng).unwrap();
            colouring_defined_charfuns_f2(p, chi).unwrap().choose(rng).unwrap().clone()
        };
        let l = pick(&mut rng);
        let l2 = if rng.gen_bool(0.5) {
            let cols = *matrices.choose(&mut rng).unwrap();
            let values = l
                .values()
                .iter()
                .map(|v| {
                    let x = (0..3).filter(|&j| v[j] == 1).fold(0u8, |acc, j| acc ^ cols[j]);
                    [(x & 1) as i64, (x >> 1 & 1) as i64, (x >> 2 & 1) as i64]
                })
                .collect();
            CharFun::new(Ring::F2, values).unwrap()
        } else {
            pick(&mut rng)
        };
        let fast = charfuns_equivalent(p, &l, &l2).unwrap();
        let slow = charfun_equivalent_f2_oracle(p, &l, &l2).unwrap();
        ensure!(fast.is_some() == slow.is_some(), "pair {i}: decider and oracle disagree");
        for t in fast.iter().chain(slow.iter()) {
            ensure!(t.verify(&l, &l2), "pair {i}: witness fails facet-wise");
        }
        equivalent += usize::from(fast.is_some());
    }
    Ok(format!("1000/1000 agree ({equivalent} equivalent)"))
}

fn adjacent_pentagon_completeness() -> Check {
    let mut n = 0;
    for name in ["c20", "c24"] {
        let p = fixture(name);
        for chi in enumerate_colourings(&p) {
            let c = is_complete(&p, &chi);
            ensure!(c.complete, "{name} {chi} misses {:?}", c.missing);
            n += 1;
        }
    }
    Ok(format!("{n} colourings complete"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Pogorelov gate", pogorelov_gate),
        ("belt counts", belt_counts),
        ("colouring counts", colouring_counts),
        ("basis and sign independence", basis_independence),
        ("colouring vs characteristic function equivalence", colouring_vs_charfun),
        ("colouring-defined F2 functions", colouring_defined_functions),
        ("lambda_(chi,k) family", lambda_k_family),
        ("orientability", orientability),
        ("classification census", census),
        ("F2 oracle agreement", f2_oracle_agreement),
        ("adjacent-pentagon completeness", adjacent_pentagon_completeness),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2}. {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
