//! Lattice polytopes: lattice-point counting, Ehrhart polynomials and
//! δ-vectors, reciprocity, polar duals, and checks on user-supplied
//! triangulations.
//!
//! A polytope that is not full-dimensional is handled in coordinates of its
//! affine lattice `aff(P) ∩ ℤ^N`, which has a ℤ-basis computed exactly.
//! Dilation commutes with that change of coordinates, so all counts are done
//! there. Full-dimensional polytopes keep their ambient coordinates.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, VertexSet};
use crate::linalg;
use crate::poly::{binomial, dominates, polynomial_generating_function, IntPolynomial, PolyError, RatPolynomial, RationalFunction};
use crate::report::VerificationReport;

pub const MAX_AMBIENT_DIM: usize = 6;
pub const MAX_POINTS: usize = 32;
/// Largest bounding box a lattice-point scan will visit.
pub const MAX_CANDIDATES: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("no points given")]
    EmptyInput,
    #[error("points have different lengths ({0} and {1})")]
    RaggedInput(usize, usize),
    #[error("ambient dimension {0} exceeds the cap of {MAX_AMBIENT_DIM}")]
    AmbientTooLarge(usize),
    #[error("{0} distinct points exceed the cap of {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("scanning {candidates} candidate points exceeds the limit of {MAX_CANDIDATES}")]
    EnumerationTooLarge { candidates: u128 },
    #[error("coordinate overflow")]
    Overflow,
    #[error("Ehrhart interpolant disagrees with the direct count at m = {m}")]
    InterpolationMismatch { m: u64 },
    #[error("polytope has dimension {dim} in ambient dimension {ambient}; it must be full-dimensional")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("origin is not in the interior of the polytope")]
    NotStandardType,
    #[error("polar dual is not a lattice polytope")]
    NotInCstar,
    #[error("simplices do not all span the affine hull of the triangulation")]
    MixedDimensions,
    #[error("triangulation is not unimodular")]
    NotUnimodular,
    #[error("not a triangulation of the polytope: {0}")]
    InvalidTriangulation(String),
    #[error("not a triangulation of the boundary: {0}")]
    NotBoundaryTriangulation(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

type Point = Vec<i64>;

/// `normal · y ≤ offset` with `normal` primitive, in the polytope's lattice
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: Point,
    pub offset: i64,
}

impl Facet {
    fn slack(&self, y: &[i64]) -> i64 {
        self.offset - dot(&self.normal, y)
    }
}

#[derive(Deserialize)]
struct RawPolytope {
    vertices: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct LatticePolytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Point>,
    /// Input points that are not vertices.
    pruned: Vec<Point>,
    /// Lattice coordinates: `x = base + Σ y_j basis[j]`.
    base: Point,
    basis: Vec<Point>,
    #[serde(skip)]
    reduced: Vec<Point>,
    facets: Vec<Facet>,
}

impl TryFrom<RawPolytope> for LatticePolytope {
    type Error = PolytopeError;
    fn try_from(raw: RawPolytope) -> Result<Self, PolytopeError> {
        build_polytope(&raw.vertices)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Closed,
    Interior,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn to_i64(x: &BigInt) -> Result<i64, PolytopeError> {
    x.to_i64().ok_or(PolytopeError::Overflow)
}

fn to_i64_vec(v: &[BigInt]) -> Result<Point, PolytopeError> {
    v.iter().map(to_i64).collect()
}

/// Hyperplane through `pts` (exactly `r` points in ℤ^r), oriented arbitrarily;
/// `None` if they are affinely dependent.
fn hyperplane_through(pts: &[&Point], r: usize) -> Result<Option<(Point, i64)>, PolytopeError> {
    let diffs: Vec<Point> = pts[1..].iter().map(|p| sub(p, pts[0])).collect();
    let kernel = linalg::rational_kernel(&diffs, r);
    if kernel.len() != 1 {
        return Ok(None);
    }
    let normal = to_i64_vec(&kernel[0])?;
    let offset = dot(&normal, pts[0]);
    Ok(Some((normal, offset)))
}

/// Facets of the convex hull of full-dimensional `pts` ⊂ ℤ^r, by testing
/// every hyperplane spanned by `r` of the points.
fn facets_of(pts: &[Point], r: usize) -> Result<Vec<Facet>, PolytopeError> {
    let mut found = BTreeSet::new();
    if r == 0 {
        return Ok(Vec::new());
    }
    for combo in (0..pts.len()).combinations(r) {
        let chosen: Vec<&Point> = combo.iter().map(|&i| &pts[i]).collect();
        let Some((normal, offset)) = hyperplane_through(&chosen, r)? else {
            continue;
        };
        let sides: Vec<i64> = pts.iter().map(|p| dot(&normal, p) - offset).collect();
        if sides.iter().all(|&s| s <= 0) {
            found.insert(Facet { normal, offset });
        } else if sides.iter().all(|&s| s >= 0) {
            found.insert(Facet {
                normal: normal.iter().map(|x| -x).collect(),
                offset: -offset,
            });
        }
    }
    Ok(found.into_iter().collect())
}

/// Builds the lattice polytope `conv(points)`. Points that are not vertices
/// are dropped and listed in `pruned`.
pub fn build_polytope(points: &[Point]) -> Result<LatticePolytope, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::EmptyInput)?;
    let n = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(PolytopeError::RaggedInput(n, p.len()));
    }
    if n > MAX_AMBIENT_DIM {
        return Err(PolytopeError::AmbientTooLarge(n));
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() > MAX_POINTS {
        return Err(PolytopeError::TooManyPoints(pts.len()));
    }
    let p0 = pts[0].clone();
    let diffs: Vec<Point> = pts.iter().map(|p| sub(p, &p0)).collect();
    let r = linalg::rank(&diffs, n);
    let (base, basis) = if r == n {
        let identity = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        (vec![0; n], identity)
    } else {
        let orth: Vec<Vec<BigInt>> = linalg::rational_kernel(&diffs, n);
        let lattice = linalg::integer_kernel(&orth, n);
        let basis = lattice.iter().map(|v| to_i64_vec(v)).collect::<Result<Vec<_>, _>>()?;
        (p0, basis)
    };
    let mut poly = LatticePolytope {
        ambient_dim: n,
        dim: r,
        vertices: Vec::new(),
        pruned: Vec::new(),
        base,
        basis,
        reduced: Vec::new(),
        facets: Vec::new(),
    };
    let reduced: Vec<Point> = pts
        .iter()
        .map(|p| poly.reduce(p).ok_or(PolytopeError::Overflow))
        .collect::<Result<_, _>>()?;
    poly.facets = facets_of(&reduced, r)?;
    for (p, y) in pts.into_iter().zip(reduced) {
        let tight: Vec<Point> = poly
            .facets
            .iter()
            .filter(|f| f.slack(&y) == 0)
            .map(|f| f.normal.clone())
            .collect();
        if linalg::rank(&tight, r) == r {
            poly.vertices.push(p);
            poly.reduced.push(y);
        } else {
            poly.pruned.push(p);
        }
    }
    Ok(poly)
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn pruned(&self) -> &[Point] {
        &self.pruned
    }

    /// Facet inequalities in lattice coordinates; these are the ambient
    /// coordinates when the polytope is full-dimensional.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// Lattice coordinates of `p`, or `None` if `p` is not a lattice point of
    /// the affine hull.
    pub fn reduce(&self, p: &[i64]) -> Option<Point> {
        if p.len() != self.ambient_dim {
            return None;
        }
        let x = linalg::solve(&self.basis, &sub(p, &self.base))?;
        x.iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    fn lift(&self, y: &[i64], m: i64) -> Point {
        let mut x: Point = self.base.iter().map(|b| b * m).collect();
        for (c, v) in y.iter().zip(&self.basis) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += c * vi;
            }
        }
        x
    }

    fn contains_reduced(&self, y: &[i64], m: i64, region: Region) -> bool {
        self.facets.iter().all(|f| {
            let slack = f.offset * m - dot(&f.normal, y);
            match region {
                Region::Closed => slack >= 0,
                Region::Interior => slack > 0,
            }
        })
    }

    /// Whether `p` lies in the polytope.
    pub fn contains(&self, p: &[i64]) -> bool {
        self.reduce(p).is_some_and(|y| self.contains_reduced(&y, 1, Region::Closed))
    }

    /// Visits the lattice points of `mP` (or of its relative interior) in
    /// lattice coordinates.
    fn scan(&self, m: u64, region: Region, mut visit: impl FnMut(&[i64])) -> Result<(), PolytopeError> {
        if m == 0 && region == Region::Interior {
            return Ok(());
        }
        let m = i64::try_from(m).map_err(|_| PolytopeError::Overflow)?;
        let r = self.dim;
        let lo: Point = (0..r).map(|j| self.reduced.iter().map(|y| y[j]).min().unwrap() * m).collect();
        let hi: Point = (0..r).map(|j| self.reduced.iter().map(|y| y[j]).max().unwrap() * m).collect();
        let candidates = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| (h - l + 1) as u128)
            .try_fold(1u128, |acc, k| acc.checked_mul(k))
            .unwrap_or(u128::MAX);
        if candidates > MAX_CANDIDATES {
            return Err(PolytopeError::EnumerationTooLarge { candidates });
        }
        let mut y = lo.clone();
        loop {
            if self.contains_reduced(&y, m, region) {
                visit(&y);
            }
            let mut j = 0;
            loop {
                if j == r {
                    return Ok(());
                }
                y[j] += 1;
                if y[j] <= hi[j] {
                    break;
                }
                y[j] = lo[j];
                j += 1;
            }
        }
    }

    /// Lattice points of `mP` or of its relative interior, in ambient
    /// coordinates, sorted.
    pub fn lattice_points(&self, m: u64, region: Region) -> Result<Vec<Point>, PolytopeError> {
        let mut out = Vec::new();
        let scale = i64::try_from(m).map_err(|_| PolytopeError::Overflow)?;
        self.scan(m, region, |y| out.push(self.lift(y, scale)))?;
        out.sort();
        Ok(out)
    }

    /// Points of `∂P ∩ ℤ^N`, relative to the affine hull.
    pub fn boundary_points(&self) -> Result<Vec<Point>, PolytopeError> {
        let interior: BTreeSet<Point> = self.lattice_points(1, Region::Interior)?.into_iter().collect();
        Ok(self
            .lattice_points(1, Region::Closed)?
            .into_iter()
            .filter(|p| !interior.contains(p))
            .collect())
    }
}

/// `#(mP ∩ ℤ^N)`, or the count in the relative interior. The interior count
/// at `m = 0` is 0.
pub fn count_points(p: &LatticePolytope, m: u64, region: Region) -> Result<u64, PolytopeError> {
    let mut count = 0u64;
    p.scan(m, region, |_| count += 1)?;
    Ok(count)
}

/// `E(P, 0), …, E(P, upto)`.
pub fn ehrhart_values(p: &LatticePolytope, upto: u64) -> Result<Vec<BigInt>, PolytopeError> {
    (0..=upto).map(|m| count_points(p, m, Region::Closed).map(BigInt::from)).collect()
}

/// The Ehrhart polynomial `E(P, m)`, interpolated from `m = 0..r` and checked
/// against direct counts at `m = r + 1, r + 2`.
pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<RatPolynomial, PolytopeError> {
    let r = p.dim as u64;
    let values = ehrhart_values(p, r)?;
    let poly = RatPolynomial::interpolate_from_zero(&values);
    for m in [r + 1, r + 2] {
        let direct = BigRational::from_integer(count_points(p, m, Region::Closed)?.into());
        if poly.eval_int(m as i64) != direct {
            return Err(PolytopeError::InterpolationMismatch { m });
        }
    }
    Ok(poly)
}

/// `δ_i = Σ_{j ≤ i} (−1)^{i−j} C(r+1, i−j) E(P, j)` for `i = 0..r`, i.e. the
/// numerator of the Ehrhart series over `(1 − t)^{r+1}`.
pub fn delta_vector(p: &LatticePolytope) -> Result<IntPolynomial, PolytopeError> {
    let r = p.dim;
    let values = ehrhart_values(p, r as u64)?;
    let delta = (0..=r)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let term = binomial(r as u64 + 1, (i - j) as u64) * &values[j];
                    if (i - j) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    Ok(IntPolynomial::new(delta))
}

/// `E_P(t) = Σ_{m≥0} E(P, m) t^m = δ(t) / (1 − t)^{r+1}`.
pub fn ehrhart_series(p: &LatticePolytope) -> Result<RationalFunction, PolytopeError> {
    let delta = delta_vector(p)?;
    let den = IntPolynomial::from_i64(&[1, -1]).pow(p.dim as u32 + 1);
    Ok(RationalFunction::new(delta, den)?)
}

/// `r! · vol(P)` in the affine lattice: a pyramid over each facet not
/// containing the first vertex, with the facet's volume found recursively and
/// multiplied by the lattice height of the apex.
pub fn normalized_volume(p: &LatticePolytope) -> Result<BigInt, PolytopeError> {
    if p.dim == 0 {
        return Ok(BigInt::one());
    }
    let apex = &p.reduced[0];
    let mut total = BigInt::zero();
    for f in &p.facets {
        let height = f.slack(apex);
        if height == 0 {
            continue;
        }
        let on_facet: Vec<Point> = p.reduced.iter().filter(|y| f.slack(y) == 0).cloned().collect();
        let facet = build_polytope(&on_facet)?;
        total += normalized_volume(&facet)? * height;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReciprocityRow {
    pub m: u64,
    /// `(−1)^r E(P, −m)`.
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub polynomial_side: BigInt,
    pub interior_count: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub dim: usize,
    pub ehrhart: RatPolynomial,
    pub rows: Vec<ReciprocityRow>,
    /// `E_P(1/t) = (−1)^{r+1} Σ_{m≥1} E⁺(P, m) t^m`.
    pub series: VerificationReport,
    pub pass: bool,
}

fn integral(x: BigRational) -> Result<BigInt, PolytopeError> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(PolyError::NonIntegralSeries { index: 0, value: x }.into())
    }
}

/// `Σ_{m≥1} E⁺(P, m) t^m`, from interior counts at `m = 1..r+1`.
pub fn interior_series(p: &LatticePolytope) -> Result<RationalFunction, PolytopeError> {
    let r = p.dim;
    let counts: Vec<BigInt> = (1..=r as u64 + 1)
        .map(|m| count_points(p, m, Region::Interior).map(BigInt::from))
        .collect::<Result<_, _>>()?;
    let q = RatPolynomial::interpolate_from(1, &counts);
    let at: Vec<BigInt> = (0..=r as i64).map(|m| integral(q.eval_int(m))).collect::<Result<_, _>>()?;
    let constant = RationalFunction::from_poly(IntPolynomial::constant(at[0].clone()));
    Ok(&polynomial_generating_function(&at) - &constant)
}

/// Checks `(−1)^r E(P, −m) = E⁺(P, m)` for `m = 1..m_max`, and the matching
/// identity of generating functions.
pub fn verify_reciprocity(p: &LatticePolytope, m_max: u64) -> Result<ReciprocityReport, PolytopeError> {
    let r = p.dim;
    let ehrhart = ehrhart_polynomial(p)?;
    let sign = if r.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let value = ehrhart.eval_int(-(m as i64));
        let polynomial_side = integral(value)? * &sign;
        let interior_count = count_points(p, m, Region::Interior)?;
        rows.push(ReciprocityRow {
            m,
            holds: polynomial_side == BigInt::from(interior_count),
            polynomial_side,
            interior_count,
        });
    }
    let lhs = ehrhart_series(p)?.substitute_reciprocal();
    let plus = interior_series(p)?;
    let rhs = if (r + 1).is_multiple_of(2) { plus } else { -plus };
    let series = VerificationReport::compare("E_P(1/t) = (-1)^(r+1) E+_P(t)", true, lhs, rhs);
    let pass = series.pass && rows.iter().all(|row| row.holds);
    Ok(ReciprocityReport {
        dim: r,
        ehrhart,
        rows,
        series,
        pass,
    })
}

fn serialize_rational_rows<S: Serializer>(rows: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    text.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarDual {
    pub standard_type: bool,
    /// `a / b` for each facet `a · x ≤ b`.
    #[serde(serialize_with = "serialize_rational_rows")]
    pub dual_vertices: Vec<Vec<BigRational>>,
    pub in_cstar: bool,
    /// The dual as a lattice polytope, when its vertices are integral.
    pub dual: Option<LatticePolytope>,
    /// `(P*)* = P`.
    pub round_trip: bool,
}

fn standard_facets(p: &LatticePolytope) -> Result<&[Facet], PolytopeError> {
    if !p.is_full_dimensional() {
        return Err(PolytopeError::NotFullDimensional {
            dim: p.dim,
            ambient: p.ambient_dim,
        });
    }
    if p.facets.is_empty() || p.facets.iter().any(|f| f.offset <= 0) {
        return Err(PolytopeError::NotStandardType);
    }
    Ok(&p.facets)
}

fn dual_vertices(p: &LatticePolytope) -> Result<Vec<Vec<BigRational>>, PolytopeError> {
    Ok(standard_facets(p)?
        .iter()
        .map(|f| {
            f.normal
                .iter()
                .map(|&a| BigRational::new(a.into(), f.offset.into()))
                .collect()
        })
        .collect())
}

/// `P* = {α : ⟨α, β⟩ ≤ 1 for all β ∈ P}` for a full-dimensional `P` with the
/// origin in its interior.
pub fn polar_dual(p: &LatticePolytope) -> Result<PolarDual, PolytopeError> {
    let verts = dual_vertices(p)?;
    let in_cstar = verts.iter().flatten().all(|x| x.is_integer());
    // scale P* to a lattice polytope, dualize, and scale back
    let scale = verts
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let scaled: Vec<Point> = verts
        .iter()
        .map(|v| v.iter().map(|x| to_i64(&(x * &scale).to_integer())).collect())
        .collect::<Result<_, _>>()?;
    let q = build_polytope(&scaled)?;
    let back: BTreeSet<Vec<BigRational>> = dual_vertices(&q)?
        .into_iter()
        .map(|v| v.into_iter().map(|x| x * BigRational::from_integer(scale.clone())).collect())
        .collect();
    let original: BTreeSet<Vec<BigRational>> = p
        .vertices
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    Ok(PolarDual {
        standard_type: true,
        dual_vertices: verts,
        in_cstar,
        dual: in_cstar.then_some(q),
        round_trip: back == original,
    })
}

#[derive(Deserialize)]
struct RawTriangulation {
    points: Vec<Point>,
    simplices: Vec<Vec<usize>>,
}

/// Simplices given as index lists into `points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriangulation")]
pub struct Triangulation {
    points: Vec<Point>,
    simplices: Vec<Vec<usize>>,
}

impl TryFrom<RawTriangulation> for Triangulation {
    type Error = PolytopeError;
    fn try_from(raw: RawTriangulation) -> Result<Self, PolytopeError> {
        Triangulation::new(raw.points, raw.simplices)
    }
}

impl Triangulation {
    pub fn new(points: Vec<Point>, simplices: Vec<Vec<usize>>) -> Result<Self, PolytopeError> {
        let bad = |msg: String| Err(PolytopeError::InvalidTriangulation(msg));
        if let Some(first) = points.first() {
            if let Some(p) = points.iter().find(|p| p.len() != first.len()) {
                return Err(PolytopeError::RaggedInput(first.len(), p.len()));
            }
        }
        for s in &simplices {
            if s.is_empty() {
                return bad("empty simplex".into());
            }
            if let Some(&i) = s.iter().find(|&&i| i >= points.len()) {
                return bad(format!("point index {i} out of range"));
            }
            if s.iter().collect::<BTreeSet<_>>().len() != s.len() {
                return bad(format!("simplex {s:?} repeats a point"));
            }
        }
        Ok(Triangulation { points, simplices })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Indices of points that occur in some simplex, sorted.
    pub fn used_points(&self) -> Vec<usize> {
        self.simplices.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// The abstract complex generated by the simplices, on the used points
    /// relabeled `0..k` in index order.
    pub fn complex(&self) -> Result<SimplicialComplex, PolytopeError> {
        let used = self.used_points();
        let label: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let facets: Vec<VertexSet> = self
            .simplices
            .iter()
            .map(|s| s.iter().map(|i| label[i]).collect())
            .collect();
        Ok(SimplicialComplex::from_facets(used.len(), facets)?)
    }

    fn simplex_points(&self, s: &[usize]) -> Vec<Point> {
        s.iter().map(|&i| self.points[i].clone()).collect()
    }
}

fn simplex_det(q: &LatticePolytope, pts: &[Point]) -> Option<BigInt> {
    let red: Vec<Point> = pts.iter().map(|p| q.reduce(p)).collect::<Option<_>>()?;
    let rows: Vec<Point> = red[1..].iter().map(|y| sub(y, &red[0])).collect();
    Some(linalg::det(&rows))
}

/// Whether every simplex is full-dimensional in the affine lattice spanned by
/// all points of the triangulation and has normalized volume 1.
pub fn is_unimodular(t: &Triangulation) -> Result<bool, PolytopeError> {
    let used: Vec<Point> = t.used_points().into_iter().map(|i| t.points[i].clone()).collect();
    let hull = build_polytope(&used)?;
    if t.simplices.iter().any(|s| s.len() != hull.dim + 1) {
        return Err(PolytopeError::MixedDimensions);
    }
    Ok(t.simplices.iter().all(|s| {
        simplex_det(&hull, &t.simplex_points(s)).is_some_and(|d| d.abs().is_one())
    }))
}

/// Checks that `simplices` triangulate the full-dimensional (in its own
/// lattice) polytope `q`: every simplex is a nondegenerate simplex inside
/// `q`, volumes add up to the volume of `q`, and every ridge lies either on
/// the boundary of `q` in exactly one simplex or in the interior in exactly
/// two simplices on opposite sides.
fn check_triangulates(q: &LatticePolytope, simplices: &[Vec<Point>]) -> Result<(), String> {
    let r = q.dim;
    let mut reduced = Vec::new();
    let mut volume = BigInt::zero();
    for s in simplices {
        if s.len() != r + 1 {
            return Err(format!("simplex with {} points in a {r}-dimensional region", s.len()));
        }
        let red: Vec<Point> = s
            .iter()
            .map(|p| q.reduce(p).ok_or_else(|| format!("point {p:?} is off the affine hull")))
            .collect::<Result<_, _>>()?;
        if let Some(p) = red.iter().find(|y| !q.contains_reduced(y, 1, Region::Closed)) {
            return Err(format!("point {:?} lies outside the region", q.lift(p, 1)));
        }
        let rows: Vec<Point> = red[1..].iter().map(|y| sub(y, &red[0])).collect();
        let d = linalg::det(&rows);
        if d.is_zero() {
            return Err(format!("degenerate simplex {s:?}"));
        }
        volume += d.abs();
        reduced.push(red);
    }
    let expected = normalized_volume(q).map_err(|e| e.to_string())?;
    if volume != expected {
        return Err(format!("simplex volumes sum to {volume}, region has volume {expected}"));
    }
    if r == 0 {
        return Ok(());
    }
    let mut ridges: BTreeMap<Vec<Point>, Vec<Point>> = BTreeMap::new();
    for red in &reduced {
        for skip in 0..=r {
            let mut ridge: Vec<Point> = red.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, y)| y.clone()).collect();
            ridge.sort();
            ridges.entry(ridge).or_default().push(red[skip].clone());
        }
    }
    for (ridge, opposite) in &ridges {
        let on_boundary = q.facets.iter().any(|f| ridge.iter().all(|y| f.slack(y) == 0));
        let shown = || format!("{:?}", ridge.iter().map(|y| q.lift(y, 1)).collect::<Vec<_>>());
        if on_boundary {
            if opposite.len() != 1 {
                return Err(format!("boundary ridge {} lies in {} simplices", shown(), opposite.len()));
            }
            continue;
        }
        if opposite.len() != 2 {
            return Err(format!("interior ridge {} lies in {} simplices", shown(), opposite.len()));
        }
        let refs: Vec<&Point> = ridge.iter().collect();
        let (normal, offset) = hyperplane_through(&refs, r)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("ridge {} is degenerate", shown()))?;
        let side = |y: &Point| (dot(&normal, y) - offset).signum();
        if side(&opposite[0]) * side(&opposite[1]) != -1 {
            return Err(format!("simplices on ridge {} overlap", shown()));
        }
    }
    Ok(())
}

/// Whether `t` triangulates `p` itself.
pub fn check_full_triangulation(p: &LatticePolytope, t: &Triangulation) -> Result<(), PolytopeError> {
    let simplices: Vec<Vec<Point>> = t.simplices.iter().map(|s| t.simplex_points(s)).collect();
    check_triangulates(p, &simplices).map_err(PolytopeError::InvalidTriangulation)
}

/// Whether `t` triangulates the boundary of `p`: each simplex lies in a facet
/// and the simplices in each facet triangulate it.
pub fn check_boundary_triangulation(p: &LatticePolytope, t: &Triangulation) -> Result<(), PolytopeError> {
    let fail = |msg: String| Err(PolytopeError::NotBoundaryTriangulation(msg));
    if p.dim == 0 {
        return fail("a point has empty boundary".into());
    }
    let simplices: Vec<Vec<Point>> = t.simplices.iter().map(|s| t.simplex_points(s)).collect();
    let mut placed = vec![false; simplices.len()];
    for f in &p.facets {
        let in_facet = |pt: &Point| p.reduce(pt).is_some_and(|y| f.slack(&y) == 0);
        let members: Vec<Vec<Point>> = simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().all(in_facet))
            .map(|(i, s)| {
                placed[i] = true;
                s.clone()
            })
            .collect();
        let corners: Vec<Point> = p.vertices.iter().filter(|v| in_facet(v)).cloned().collect();
        let facet = build_polytope(&corners)?;
        if let Err(msg) = check_triangulates(&facet, &members) {
            return fail(format!("facet {f:?}: {msg}"));
        }
    }
    if let Some(i) = placed.iter().position(|&ok| !ok) {
        return fail(format!("simplex {:?} is not contained in a facet", t.simplices[i]));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompressedReport {
    /// The vertex set of the triangulation is exactly `∂P ∩ ℤ^N`.
    pub definition_check: bool,
    pub h_equals_delta: bool,
    /// `δ_i ≥ h_i` for all `i`.
    pub delta_dominates_h: bool,
    pub h: IntPolynomial,
    pub delta: IntPolynomial,
    pub boundary_points: usize,
    pub triangulation_points: usize,
}

/// Compares a boundary triangulation of a reflexive-type polytope with its
/// δ-vector.
pub fn is_compressed(p: &LatticePolytope, t: &Triangulation) -> Result<CompressedReport, PolytopeError> {
    if !polar_dual(p)?.in_cstar {
        return Err(PolytopeError::NotInCstar);
    }
    check_boundary_triangulation(p, t)?;
    let boundary: BTreeSet<Point> = p.boundary_points()?.into_iter().collect();
    let used: BTreeSet<Point> = t.used_points().into_iter().map(|i| t.points[i].clone()).collect();
    let h = t.complex()?.h_polynomial()?;
    let delta = delta_vector(p)?;
    Ok(CompressedReport {
        definition_check: used == boundary,
        h_equals_delta: h == delta,
        delta_dominates_h: dominates(&delta, &h),
        boundary_points: boundary.len(),
        triangulation_points: used.len(),
        h,
        delta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HStarReport {
    pub delta: IntPolynomial,
    pub h: IntPolynomial,
    pub equal: bool,
    pub unimodal: bool,
    pub pass: bool,
}

/// Coefficients rise weakly then fall weakly.
pub fn is_unimodal(p: &IntPolynomial) -> bool {
    let c = p.coefficients();
    let Some(peak) = c.iter().enumerate().max_by_key(|&(_, x)| x).map(|(i, _)| i) else {
        return true;
    };
    c[..=peak].windows(2).all(|w| w[0] <= w[1]) && c[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// For a unimodular triangulation of `p`, compares `δ(P)` with the h-vector
/// of the triangulation.
pub fn verify_hstar_eq_h(p: &LatticePolytope, t: &Triangulation) -> Result<HStarReport, PolytopeError> {
    check_full_triangulation(p, t)?;
    if !is_unimodular(t)? {
        return Err(PolytopeError::NotUnimodular);
    }
    let delta = delta_vector(p)?;
    let h = t.complex()?.h_polynomial()?;
    let equal = delta == h;
    let unimodal = is_unimodal(&delta);
    Ok(HStarReport {
        equal,
        unimodal,
        pass: equal && unimodal,
        delta,
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[&[i64]]) -> LatticePolytope {
        build_polytope(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn tri(pts: &[&[i64]], simplices: &[&[usize]]) -> Triangulation {
        Triangulation::new(
            pts.iter().map(|p| p.to_vec()).collect(),
            simplices.iter().map(|s| s.to_vec()).collect(),
        )
        .unwrap()
    }

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn square(k: i64) -> LatticePolytope {
        poly(&[&[-k, -k], &[k, -k], &[k, k], &[-k, k]])
    }

    #[test]
    fn build_examples() {
        let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!((t.dim(), t.facets().len()), (2, 3));
        let s = square(1);
        let mut facets: Vec<(Point, i64)> = s.facets().iter().map(|f| (f.normal.clone(), f.offset)).collect();
        facets.sort();
        assert_eq!(
            facets,
            vec![(vec![-1, 0], 1), (vec![0, -1], 1), (vec![0, 1], 1), (vec![1, 0], 1)]
        );
        assert_eq!(poly(&[&[0], &[2]]).dim(), 1);
        let pruned = poly(&[&[0, 0], &[1, 0], &[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(pruned.vertices().len(), 3);
        assert_eq!(pruned.pruned().len(), 2);
        assert_eq!(build_polytope(&[]), Err(PolytopeError::EmptyInput));
    }

    #[test]
    fn lower_dimensional_counts() {
        // segment from (0,0,0) to (2,4,6): lattice length 2
        let seg = poly(&[&[0, 0, 0], &[2, 4, 6]]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(count_points(&seg, 3, Region::Closed).unwrap(), 7);
        assert_eq!(count_points(&seg, 3, Region::Interior).unwrap(), 5);
        // triangle in the plane x + y + z = 1
        let tri = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(tri.dim(), 2);
        assert_eq!(delta_vector(&tri).unwrap(), ip(&[1]));
        assert_eq!(count_points(&tri, 2, Region::Closed).unwrap(), 6);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_points(&poly(&[&[0], &[2]]), 3, Region::Closed).unwrap(), 7);
        assert_eq!(count_points(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), 2, Region::Closed).unwrap(), 9);
        assert_eq!(count_points(&square(1), 1, Region::Interior).unwrap(), 1);
        assert_eq!(count_points(&square(1), 0, Region::Interior).unwrap(), 0);
        assert_eq!(count_points(&square(1), 0, Region::Closed).unwrap(), 1);
    }

    #[test]
    fn ehrhart_and_delta_examples() {
        let r = |c: &[i64]| RatPolynomial::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect());
        assert_eq!(ehrhart_polynomial(&poly(&[&[0], &[2]])).unwrap(), r(&[1, 2]));
        let unit = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(ehrhart_polynomial(&unit).unwrap(), r(&[1, 2, 1]));
        let big = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(ehrhart_polynomial(&big).unwrap(), r(&[1, 3, 2]));
        assert_eq!(delta_vector(&unit).unwrap(), ip(&[1, 1]));
        assert_eq!(delta_vector(&big).unwrap(), ip(&[1, 3]));
        assert_eq!(delta_vector(&square(1)).unwrap(), ip(&[1, 6, 1]));
        assert_eq!(normalized_volume(&square(1)).unwrap(), BigInt::from(8));
        assert_eq!(normalized_volume(&big).unwrap(), BigInt::from(4));
    }

    #[test]
    fn reciprocity_examples() {
        for p in [poly(&[&[0], &[2]]), poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), poly(&[&[0, 0], &[2, 0], &[0, 2]])] {
            let rep = verify_reciprocity(&p, 5).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
        let seg = verify_reciprocity(&poly(&[&[0], &[2]]), 5).unwrap();
        assert_eq!(seg.rows[2].interior_count, 5);
        let big = verify_reciprocity(&poly(&[&[0, 0], &[2, 0], &[0, 2]]), 1).unwrap();
        assert_eq!(big.rows[0].interior_count, 0);
    }

    #[test]
    fn polar_examples() {
        let d = polar_dual(&square(1)).unwrap();
        assert!(d.in_cstar && d.round_trip);
        let cross: BTreeSet<Point> = d.dual.unwrap().vertices().iter().cloned().collect();
        let expected: BTreeSet<Point> = [vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]].into_iter().collect();
        assert_eq!(cross, expected);
        let seg = polar_dual(&poly(&[&[-1], &[1]])).unwrap();
        assert_eq!(seg.dual.unwrap().vertices(), &[vec![-1], vec![1]]);
        assert_eq!(
            polar_dual(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])),
            Err(PolytopeError::NotStandardType)
        );
        let d = polar_dual(&square(2)).unwrap();
        assert!(!d.in_cstar && d.round_trip);
        assert!(matches!(
            polar_dual(&poly(&[&[0, 0], &[1, 1]])),
            Err(PolytopeError::NotFullDimensional { .. })
        ));
    }

    #[test]
    fn unimodular_examples() {
        let split = tri(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[&[0, 1, 3], &[0, 2, 3]]);
        assert!(is_unimodular(&split).unwrap());
        let big = tri(&[&[0, 0], &[2, 0], &[0, 2]], &[&[0, 1, 2]]);
        assert!(!is_unimodular(&big).unwrap());
        let seg = tri(&[&[0], &[1], &[2]], &[&[0, 1], &[1, 2]]);
        assert!(is_unimodular(&seg).unwrap());
        let mixed = tri(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[&[0, 1, 3], &[2, 3]]);
        assert_eq!(is_unimodular(&mixed), Err(PolytopeError::MixedDimensions));
    }

    #[test]
    fn triangulation_validation() {
        let unit = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let overlap = tri(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[&[0, 1, 3], &[0, 2, 3], &[0, 1, 2]]);
        assert!(check_full_triangulation(&unit, &overlap).is_err());
        let half = tri(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[&[0, 1, 3]]);
        assert!(check_full_triangulation(&unit, &half).is_err());
        // a hanging vertex at the midpoint of the diagonal of [0,2]^2
        let sq = poly(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        let hanging = tri(
            &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]],
            &[&[0, 1, 4], &[1, 3, 4], &[0, 2, 3]],
        );
        assert!(check_full_triangulation(&sq, &hanging).is_err());
    }

    #[test]
    fn compressed_examples() {
        let ring: Vec<Point> = vec![
            vec![-1, -1],
            vec![0, -1],
            vec![1, -1],
            vec![1, 0],
            vec![1, 1],
            vec![0, 1],
            vec![-1, 1],
            vec![-1, 0],
        ];
        let cycle = Triangulation::new(ring.clone(), (0..8).map(|i| vec![i, (i + 1) % 8]).collect()).unwrap();
        let rep = is_compressed(&square(1), &cycle).unwrap();
        assert!(rep.definition_check && rep.h_equals_delta);
        assert_eq!(rep.h, ip(&[1, 6, 1]));

        let corners = tri(&[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        let rep = is_compressed(&square(1), &corners).unwrap();
        assert!(!rep.definition_check && rep.delta_dominates_h);
        assert_eq!(rep.h, ip(&[1, 2, 1]));

        let seg = tri(&[&[-1], &[1]], &[&[0], &[1]]);
        let rep = is_compressed(&poly(&[&[-1], &[1]]), &seg).unwrap();
        assert!(rep.definition_check && rep.h_equals_delta);
        assert_eq!(rep.h, ip(&[1, 1]));

        let half = Triangulation::new(ring, (0..4).map(|i| vec![i, i + 1]).collect()).unwrap();
        assert!(matches!(
            is_compressed(&square(1), &half),
            Err(PolytopeError::NotBoundaryTriangulation(_))
        ));
        assert_eq!(is_compressed(&square(2), &corners), Err(PolytopeError::NotInCstar));
    }

    #[test]
    fn hstar_examples() {
        let seg = tri(&[&[0], &[1], &[2]], &[&[0, 1], &[1, 2]]);
        let rep = verify_hstar_eq_h(&poly(&[&[0], &[2]]), &seg).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.h, ip(&[1, 1]));
        let unit = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let split = tri(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[&[0, 1, 3], &[0, 2, 3]]);
        assert!(verify_hstar_eq_h(&unit, &split).unwrap().pass);
        let big = tri(&[&[0, 0], &[2, 0], &[0, 2]], &[&[0, 1, 2]]);
        assert_eq!(
            verify_hstar_eq_h(&poly(&[&[0, 0], &[2, 0], &[0, 2]]), &big),
            Err(PolytopeError::NotUnimodular)
        );
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&ip(&[1, 4, 1])));
        assert!(is_unimodal(&ip(&[1, 1])));
        assert!(!is_unimodal(&ip(&[1, 0, 1])));
    }
}
