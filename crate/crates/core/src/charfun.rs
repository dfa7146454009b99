//! Characteristic functions over ℤ and over 𝔽₂, their construction from
//! 4-colourings, and the equivalence deciders.
//!
//! Two characteristic functions λ, λ′ on the same polytope are equivalent if
//! some invertible matrix g (over ℤ: det ±1) and signs s_i give
//! `g·λ(F_i) = s_i·λ′(F_i)` for every facet. Over 𝔽₂ all signs are +1.
//!
//! Over ℤ the group is infinite, but a witness is pinned down by its action
//! on the basis at one vertex: if `{λ(Fa), λ(Fb), λ(Fc)}` is that basis, then
//! `g = M′·D·M⁻¹` for one of the eight diagonal sign matrices D. The decider
//! tries exactly those eight candidates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use thiserror::Error;

use crate::colouring::Colouring;
use crate::polytope::{FacetBijection, Polytope};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CharFunError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("characteristic function has {got} values but the polytope has {expected} facets")]
    Length { expected: usize, got: usize },
    #[error("value {value} at facet {facet} is not a bit")]
    NotABit { facet: usize, value: i64 },
    #[error("basis vectors are not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("signs must be +1 or -1")]
    BadSign,
    /// The three vectors at a vertex are not a basis.
    #[error("not a basis at vertex {vertex} (facets {facets:?}, determinant {determinant})")]
    InvalidAtVertex { vertex: usize, facets: [usize; 3], determinant: BigInt },
    #[error("colouring does not match the polytope")]
    Colouring,
    #[error("cannot parse characteristic function: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The integers.
    Z,
    /// The field with two elements.
    F2,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "z",
            Ring::F2 => "f2",
        })
    }
}

impl FromStr for Ring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "z" => Ok(Ring::Z),
            "f2" => Ok(Ring::F2),
            other => Err(format!("unknown ring '{other}'")),
        }
    }
}

pub type Vec3 = [i64; 3];

pub const E1: Vec3 = [1, 0, 0];
pub const E2: Vec3 = [0, 1, 0];
pub const E3: Vec3 = [0, 0, 1];

/// A characteristic function: one vector per facet. Over 𝔽₂ every entry is
/// 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharFun {
    ring: Ring,
    values: Vec<Vec3>,
}

impl CharFun {
    /// Wraps raw values, checking only ring consistency. Use
    /// [`validate_charfun`] for the vertex condition.
    pub fn new(ring: Ring, values: Vec<Vec3>) -> Result<Self, CharFunError> {
        if ring == Ring::F2 {
            for (facet, v) in values.iter().enumerate() {
                if let Some(&value) = v.iter().find(|&&x| x != 0 && x != 1) {
                    return Err(CharFunError::NotABit { facet, value });
                }
            }
        }
        Ok(CharFun { ring, values })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    #[inline]
    pub fn value(&self, facet: usize) -> Vec3 {
        self.values[facet]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ ∘ φ` for a facet bijection `φ: P -> Q` and λ defined on Q.
    pub fn pull_back(&self, phi: &FacetBijection) -> CharFun {
        CharFun { ring: self.ring, values: (0..phi.len()).map(|f| self.values[phi.apply(f)]).collect() }
    }

    /// Distinct values, sorted.
    pub fn image(&self) -> Vec<Vec3> {
        let mut img = self.values.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Text form: a ring tag line, then one line of three integers per facet.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\n", self.ring);
        for v in &self.values {
            out += &format!("{} {} {}\n", v[0], v[1], v[2]);
        }
        out
    }

    pub fn parse(text: &str) -> Result<CharFun, CharFunError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let tag = lines.next().ok_or_else(|| CharFunError::Parse("empty input".into()))?;
        let ring = tag
            .strip_prefix("ring")
            .map(str::trim)
            .ok_or_else(|| CharFunError::Parse(format!("expected ring tag, got '{tag}'")))?
            .parse::<Ring>()
            .map_err(CharFunError::Parse)?;
        let values = lines
            .map(|l| {
                let xs: Vec<i64> = l
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| CharFunError::Parse(format!("bad integer '{t}'"))))
                    .collect::<Result<_, _>>()?;
                <[i64; 3]>::try_from(xs).map_err(|_| CharFunError::Parse(format!("expected 3 integers: '{l}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CharFun::new(ring, values)
    }
}

/// Determinant of the matrix with columns `a`, `b`, `c`, computed exactly.
pub fn det3(a: Vec3, b: Vec3, c: Vec3) -> BigInt {
    fn small(a: Vec3, b: Vec3, c: Vec3) -> Option<i128> {
        let m = |x: i64, y: i64| (x as i128).checked_mul(y as i128);
        let minor = |i: usize, j: usize| m(b[i], c[j])?.checked_sub(m(b[j], c[i])?);
        let t0 = (a[0] as i128).checked_mul(minor(1, 2)?)?;
        let t1 = (a[1] as i128).checked_mul(minor(0, 2)?)?;
        let t2 = (a[2] as i128).checked_mul(minor(0, 1)?)?;
        t0.checked_sub(t1)?.checked_add(t2)
    }
    if let Some(d) = small(a, b, c) {
        return BigInt::from(d);
    }
    let [a, b, c] = [a, b, c].map(|v| v.map(BigInt::from));
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

#[inline]
fn bits(v: Vec3) -> u8 {
    (v[0] & 1) as u8 | ((v[1] & 1) as u8) << 1 | ((v[2] & 1) as u8) << 2
}

#[inline]
fn from_bits(b: u8) -> Vec3 {
    [(b & 1) as i64, (b >> 1 & 1) as i64, (b >> 2 & 1) as i64]
}

/// Three vectors of 𝔽₂³ (as bit masks) form a basis.
#[inline]
pub(crate) fn independent_f2(a: u8, b: u8, c: u8) -> bool {
    a != 0 && b != 0 && a != b && c != 0 && c != a && c != b && c != a ^ b
}

/// One vertex failing the basis condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    pub facets: [usize; 3],
    /// Over 𝔽₂ this is the determinant reduced mod 2.
    pub determinant: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the basis condition at every vertex of `p`.
pub fn validate_charfun(p: &Polytope, lambda: &CharFun) -> Result<ValidationReport, CharFunError> {
    check_length(p, lambda)?;
    let mut violations = Vec::new();
    for (vertex, &facets) in p.vertex_triples().iter().enumerate() {
        let [a, b, c] = facets.map(|f| lambda.value(f));
        let mut determinant = det3(a, b, c);
        let ok = match lambda.ring {
            Ring::Z => determinant.abs().is_one(),
            Ring::F2 => {
                determinant = BigInt::from(u8::from(independent_f2(bits(a), bits(b), bits(c))));
                determinant.is_one()
            }
        };
        if !ok {
            violations.push(Violation { vertex, facets, determinant });
        }
    }
    Ok(ValidationReport { violations })
}

fn check_length(p: &Polytope, lambda: &CharFun) -> Result<(), CharFunError> {
    if lambda.len() != p.facet_count() {
        return Err(CharFunError::Length { expected: p.facet_count(), got: lambda.len() });
    }
    Ok(())
}

fn ensure_valid(p: &Polytope, lambda: CharFun) -> Result<CharFun, CharFunError> {
    match validate_charfun(p, &lambda)?.violations.into_iter().next() {
        None => Ok(lambda),
        Some(Violation { vertex, facets, determinant }) => {
            Err(CharFunError::InvalidAtVertex { vertex, facets, determinant })
        }
    }
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(k: i64, a: Vec3) -> Vec3 {
    a.map(|x| k * x)
}

/// `λ(χ, a₁, a₂, a₃, ε₁, ε₂, ε₃)`: colour `i ≤ 3` goes to `aᵢ`, colour 4 to
/// `ε₁a₁ + ε₂a₂ + ε₃a₃`.
pub fn lambda_from_colouring(
    p: &Polytope,
    chi: &Colouring,
    basis: [Vec3; 3],
    signs: [i64; 3],
) -> Result<CharFun, CharFunError> {
    if chi.len() != p.facet_count() {
        return Err(CharFunError::Colouring);
    }
    if signs.iter().any(|s| s.abs() != 1) {
        return Err(CharFunError::BadSign);
    }
    let d = det3(basis[0], basis[1], basis[2]);
    if !d.abs().is_one() {
        return Err(CharFunError::NotUnimodular(d));
    }
    let fourth = (0..3)
        .map(|i| basis[i].map(|x| x.checked_mul(signs[i])))
        .try_fold([0i64; 3], |acc, v| {
            let mut out = [0i64; 3];
            for j in 0..3 {
                out[j] = acc[j].checked_add(v[j]?)?;
            }
            Some(out)
        })
        .ok_or_else(|| CharFunError::NotUnimodular(d.clone()))?;
    let image = [basis[0], basis[1], basis[2], fourth];
    let values = chi.colours().iter().map(|&c| image[(c - 1) as usize]).collect();
    ensure_valid(p, CharFun { ring: Ring::Z, values })
}

/// `λ_χ = λ(χ, e₁, e₂, e₃, 1, 1, 1)`.
pub fn lambda_chi(p: &Polytope, chi: &Colouring) -> CharFun {
    lambda_from_colouring(p, chi, [E1, E2, E3], [1, 1, 1]).expect("a proper colouring always gives a valid λ_χ")
}

/// `λ_{χ,k}`: colour `i ≤ 3` goes to `eᵢ`, colour 4 to `e₁ + e₂ + k·e₃`.
/// Fails at the first vertex coloured {1, 2, 4} unless `k = ±1`.
pub fn lambda_chi_k(p: &Polytope, chi: &Colouring, k: i64) -> Result<CharFun, CharFunError> {
    if chi.len() != p.facet_count() {
        return Err(CharFunError::Colouring);
    }
    let image = [E1, E2, E3, add(add(E1, E2), scale(k, E3))];
    let values = chi.colours().iter().map(|&c| image[(c - 1) as usize]).collect();
    ensure_valid(p, CharFun { ring: Ring::Z, values })
}

/// Coordinate-wise reduction mod 2.
pub fn reduce_mod2(lambda: &CharFun) -> CharFun {
    CharFun { ring: Ring::F2, values: lambda.values.iter().map(|&v| from_bits(bits(v))).collect() }
}

/// Witness of equivalence: `matrix · λ(F_i) = signs[i] · λ′(F_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub ring: Ring,
    /// Row-major 3×3 matrix.
    pub matrix: [[BigInt; 3]; 3],
    /// Per-facet signs, all +1 over 𝔽₂.
    pub signs: Vec<i8>,
}

impl Transform {
    pub fn apply(&self, v: Vec3) -> [BigInt; 3] {
        let mut out: [BigInt; 3] = Default::default();
        for (i, row) in self.matrix.iter().enumerate() {
            out[i] = row.iter().zip(v).map(|(g, x)| g * x).sum();
            if self.ring == Ring::F2 {
                out[i] = &out[i] & BigInt::one();
            }
        }
        out
    }

    pub fn determinant(&self) -> BigInt {
        let m = &self.matrix;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Re-checks the witness facet by facet, plus invertibility of the matrix.
    pub fn verify(&self, lambda: &CharFun, lambda2: &CharFun) -> bool {
        if lambda.len() != lambda2.len() || self.signs.len() != lambda.len() || lambda.ring != self.ring {
            return false;
        }
        let det = self.determinant();
        let invertible = match self.ring {
            Ring::Z => det.abs().is_one(),
            Ring::F2 => (&det & BigInt::one()).is_one(),
        };
        invertible
            && (0..lambda.len()).all(|i| {
                let s = self.signs[i];
                if self.ring == Ring::F2 && s != 1 {
                    return false;
                }
                let got = self.apply(lambda.value(i));
                let want = lambda2.value(i).map(|x| BigInt::from(x * s as i64));
                match self.ring {
                    Ring::Z => got == want,
                    Ring::F2 => got == want.map(|x| x & BigInt::one()),
                }
            })
    }
}

fn check_pair(p: &Polytope, lambda: &CharFun, lambda2: &CharFun) -> Result<(), CharFunError> {
    if lambda.ring != lambda2.ring {
        return Err(CharFunError::RingMismatch(lambda.ring, lambda2.ring));
    }
    check_length(p, lambda)?;
    check_length(p, lambda2)
}

trait Exact: Clone + PartialEq + Zero + One + CheckedAdd + CheckedSub + CheckedMul + From<i64> + Into<BigInt> {}
impl<T> Exact for T where T: Clone + PartialEq + Zero + One + CheckedAdd + CheckedSub + CheckedMul + From<i64> + Into<BigInt> {}

type Mat<T> = [[T; 3]; 3];

fn mat_mul<T: Exact>(a: &Mat<T>, b: &Mat<T>) -> Option<Mat<T>> {
    let mut out: Mat<T> = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = T::zero();
            for k in 0..3 {
                acc = acc.checked_add(&a[i][k].checked_mul(&b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

fn mat_vec<T: Exact>(a: &Mat<T>, v: &[T; 3]) -> Option<[T; 3]> {
    let mut out: [T; 3] = std::array::from_fn(|_| T::zero());
    for i in 0..3 {
        let mut acc = T::zero();
        for k in 0..3 {
            acc = acc.checked_add(&a[i][k].checked_mul(&v[k])?)?;
        }
        out[i] = acc;
    }
    Some(out)
}

fn columns<T: Exact>(cols: [Vec3; 3]) -> Mat<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| T::from(cols[j][i])))
}

/// Inverse of a unimodular matrix: `det · adj(M)`, since `1/det = det`.
fn unimodular_inverse<T: Exact>(m: &Mat<T>, det_sign: i64) -> Option<Mat<T>> {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| -> Option<T> {
        m[r0][c0].checked_mul(&m[r1][c1])?.checked_sub(&m[r0][c1].checked_mul(&m[r1][c0])?)
    };
    let s = T::from(det_sign);
    let neg = T::from(-det_sign);
    // adj(M)[i][j] = (-1)^{i+j} · minor(j, i)
    let rows = |i: usize| [(1, 2), (0, 2), (0, 1)][i];
    let mut out: Mat<T> = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (r0, r1) = rows(j);
            let (c0, c1) = rows(i);
            let minor = cof(r0, r1, c0, c1)?;
            let sign = if (i + j) % 2 == 0 { &s } else { &neg };
            *cell = minor.checked_mul(sign)?;
        }
    }
    Some(out)
}

/// Outer `None`: arithmetic overflow in `T`.
fn decide_z<T: Exact>(p: &Polytope, lambda: &CharFun, lambda2: &CharFun) -> Option<Option<Transform>> {
    let pinned = p.vertex_triples()[0];
    let m = columns::<T>(pinned.map(|f| lambda.value(f)));
    let m2 = columns::<T>(pinned.map(|f| lambda2.value(f)));
    let det_sign = if det3(lambda.value(pinned[0]), lambda.value(pinned[1]), lambda.value(pinned[2])).is_positive() {
        1
    } else {
        -1
    };
    let m_inv = unimodular_inverse(&m, det_sign)?;
    let values: Vec<[T; 3]> = lambda.values.iter().map(|v| v.map(T::from)).collect();
    let targets: Vec<[T; 3]> = lambda2.values.iter().map(|v| v.map(T::from)).collect();
    for mask in 0..8u8 {
        let d: Mat<T> = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i != j {
                    T::zero()
                } else if mask >> i & 1 == 1 {
                    T::from(-1)
                } else {
                    T::one()
                }
            })
        });
        let g = mat_mul(&mat_mul(&m2, &d)?, &m_inv)?;
        let mut signs = Vec::with_capacity(values.len());
        let mut ok = true;
        for (v, want) in values.iter().zip(&targets) {
            let got = mat_vec(&g, v)?;
            if &got == want {
                signs.push(1);
            } else if got.iter().zip(want).all(|(x, y)| x.checked_add(y).is_some_and(|s| s.is_zero())) {
                signs.push(-1);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            let matrix = g.map(|row| row.map(Into::into));
            return Some(Some(Transform { ring: Ring::Z, matrix, signs }));
        }
    }
    Some(None)
}

/// Bit-mask columns of g with `g · λ(pinned) = λ′(pinned)`.
fn decide_f2(p: &Polytope, lambda: &CharFun, lambda2: &CharFun) -> Option<Transform> {
    let pinned = p.vertex_triples()[0];
    let src = pinned.map(|f| bits(lambda.value(f)));
    let dst = pinned.map(|f| bits(lambda2.value(f)));
    // g(e_j) = Σ_k x_k dst_k where Σ_k x_k src_k = e_j
    let mut cols = [0u8; 3];
    for (j, col) in cols.iter_mut().enumerate() {
        let x = (1..8u8).find(|x| (0..3).filter(|k| x >> k & 1 == 1).fold(0, |acc, k| acc ^ src[k]) == 1 << j)?;
        *col = (0..3).filter(|k| x >> k & 1 == 1).fold(0, |acc, k| acc ^ dst[k]);
    }
    f2_witness(cols, lambda, lambda2)
}

fn f2_apply(cols: [u8; 3], v: u8) -> u8 {
    (0..3).filter(|j| v >> j & 1 == 1).fold(0, |acc, j| acc ^ cols[j])
}

fn f2_witness(cols: [u8; 3], lambda: &CharFun, lambda2: &CharFun) -> Option<Transform> {
    let ok = lambda.values.iter().zip(&lambda2.values).all(|(&a, &b)| f2_apply(cols, bits(a)) == bits(b));
    ok.then(|| Transform {
        ring: Ring::F2,
        matrix: std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(cols[j] >> i & 1))),
        signs: vec![1; lambda.len()],
    })
}

/// Decides `λ ∼ λ′` on the labelled polytope `p`; see the module docs for
/// the method. Both inputs must be valid characteristic functions.
pub fn charfuns_equivalent(p: &Polytope, lambda: &CharFun, lambda2: &CharFun) -> Result<Option<Transform>, CharFunError> {
    check_pair(p, lambda, lambda2)?;
    for l in [lambda, lambda2] {
        let pinned = p.vertex_triples()[0];
        if let Some(v) = validate_charfun(p, l)?.violations.into_iter().find(|v| v.facets == pinned) {
            return Err(CharFunError::InvalidAtVertex { vertex: v.vertex, facets: v.facets, determinant: v.determinant });
        }
    }
    Ok(match lambda.ring {
        Ring::Z => match decide_z::<i128>(p, lambda, lambda2) {
            Some(result) => result,
            None => decide_z::<BigInt>(p, lambda, lambda2).expect("BigInt arithmetic does not overflow"),
        },
        Ring::F2 => decide_f2(p, lambda, lambda2),
    })
}

/// All 168 invertible 3×3 matrices over 𝔽₂, as bit-mask columns.
pub fn invertible_f2_matrices() -> Vec<[u8; 3]> {
    let mut out = Vec::with_capacity(168);
    for a in 1..8u8 {
        for b in 1..8u8 {
            for c in 1..8u8 {
                if independent_f2(a, b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Exhaustive 𝔽₂ decider over every invertible matrix; an independent
/// check of [`charfuns_equivalent`].
pub fn charfun_equivalent_f2_oracle(p: &Polytope, lambda: &CharFun, lambda2: &CharFun) -> Result<Option<Transform>, CharFunError> {
    check_pair(p, lambda, lambda2)?;
    if lambda.ring != Ring::F2 {
        return Err(CharFunError::RingMismatch(lambda.ring, Ring::F2));
    }
    Ok(invertible_f2_matrices().into_iter().find_map(|cols| f2_witness(cols, lambda, lambda2)))
}

/// Every 𝔽₂ characteristic function constant on the colour classes of χ,
/// obtained by filtering the 7⁴ assignments of nonzero vectors to colours.
/// Assignments differing only on unused colours are reported once.
pub fn colouring_defined_charfuns_f2(p: &Polytope, chi: &Colouring) -> Result<Vec<CharFun>, CharFunError> {
    if chi.len() != p.facet_count() {
        return Err(CharFunError::Colouring);
    }
    let triples: Vec<[usize; 3]> = {
        let mut t: Vec<[usize; 3]> = p
            .vertex_triples()
            .iter()
            .map(|t| {
                let mut c = t.map(|f| (chi.colour(f) - 1) as usize);
                c.sort_unstable();
                c
            })
            .collect();
        t.sort_unstable();
        t.dedup();
        t
    };
    let used: [bool; 4] = std::array::from_fn(|c| chi.colours().contains(&(c as u8 + 1)));
    let mut out = Vec::new();
    for code in 0..7u32.pow(4) {
        let assign: [u8; 4] = std::array::from_fn(|c| (code / 7u32.pow(c as u32) % 7 + 1) as u8);
        // canonical choice on unused colours
        if (0..4).any(|c| !used[c] && assign[c] != 1) {
            continue;
        }
        if triples.iter().all(|t| independent_f2(assign[t[0]], assign[t[1]], assign[t[2]])) {
            let values = chi.colours().iter().map(|&c| from_bits(assign[(c - 1) as usize])).collect();
            out.push(CharFun { ring: Ring::F2, values });
        }
    }
    Ok(out)
}

/// A polytope together with a characteristic function on it.
#[derive(Clone, Copy, Debug)]
pub struct CharacteristicPair<'a> {
    pub polytope: &'a Polytope,
    pub charfun: &'a CharFun,
}

/// Decides `(P, λ) ∼ (P′, λ′)`: some combinatorial equivalence `φ: P -> P′`
/// with `λ ∼ λ′ ∘ φ`.
pub fn pairs_equivalent(
    pair1: CharacteristicPair<'_>,
    pair2: CharacteristicPair<'_>,
) -> Result<Option<(FacetBijection, Transform)>, CharFunError> {
    if pair1.charfun.ring != pair2.charfun.ring {
        return Err(CharFunError::RingMismatch(pair1.charfun.ring, pair2.charfun.ring));
    }
    check_length(pair1.polytope, pair1.charfun)?;
    check_length(pair2.polytope, pair2.charfun)?;
    for phi in pair1.polytope.isomorphisms(pair2.polytope, true) {
        let pulled = pair2.charfun.pull_back(&phi);
        if let Some(t) = charfuns_equivalent(pair1.polytope, pair1.charfun, &pulled)? {
            return Ok(Some((phi, t)));
        }
    }
    Ok(None)
}
