//! Hodge-filtration dimensions of nondegenerate toric hypersurfaces, read off
//! δ-vectors, and the identities tying `χ_c` to Ehrhart data and to those
//! dimensions.
//!
//! The hypersurface itself is never built. Regularity of the Laurent
//! polynomial with Newton polytope `P` is an assumption recorded in reports.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::chromatic::{apex_star_dim, chi_polynomial, verify_identity_part2, ChromaticError};
use crate::complex::{ComplexError, PropertyIWitness, SimplicialComplex};
use crate::poly::{polynomial_generating_function, IntPolynomial, PolyError, RationalFunction};
use crate::polytope::{
    count_points, ehrhart_polynomial, ehrhart_series, is_compressed, verify_hstar_eq_h, CompressedReport,
    HStarReport, LatticePolytope, PolytopeError, Region, Triangulation,
};
use crate::report::VerificationReport;

/// Series order used by [`verify_lattice_coh`].
pub const SERIES_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("δ-vector has {len} entries; torus dimension {n} needs {expected}", expected = n + 1)]
    DimensionMismatch { len: usize, n: usize },
    #[error("(t - 1)^{power} does not divide t^n χ_c(1/t): {source}")]
    ExactDivisionFailed { power: usize, source: PolyError },
    #[error(transparent)]
    Chromatic(#[from] ChromaticError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `full[i]` and `primitive[i]` are `Σ_q h^{i,q}` of `H^{N−1}` and of its
/// primitive part, for `i = 0..N−1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeDims {
    pub n: usize,
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub full: Vec<BigInt>,
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub primitive: Vec<BigInt>,
}

/// `δ_0, …, δ_r` padded with zeros.
pub fn delta_entries(delta: &IntPolynomial, r: usize) -> Vec<BigInt> {
    (0..=r).map(|i| delta.coeff(i)).collect()
}

/// `full[i] = δ_{N−i}` for `i < N − 1`, `full[N−1] = δ_1 + N`, and
/// `primitive[i] = δ_{N−i}`.
pub fn hodge_dims_from_delta(delta: &[BigInt], n: usize) -> Result<HodgeDims, HodgeError> {
    if n == 0 || delta.len() != n + 1 {
        return Err(HodgeError::DimensionMismatch { len: delta.len(), n });
    }
    let primitive: Vec<BigInt> = (0..n).map(|i| delta[n - i].clone()).collect();
    let mut full = primitive.clone();
    full[n - 1] = &delta[1] + BigInt::from(n);
    Ok(HodgeDims { n, full, primitive })
}

/// `(−1)^{n−e} t^n χ_c(S)(1/t) / (t − 1)^{n−e}`, and the same without the sign.
fn reflected_quotient(chi: &IntPolynomial, n: usize, e: usize) -> Result<(IntPolynomial, IntPolynomial), HodgeError> {
    let power = n - e;
    let reflected = chi.reverse(n)?;
    let literal = reflected
        .exact_divide(&IntPolynomial::t_minus_one().pow(power as u32))
        .map_err(|source| HodgeError::ExactDivisionFailed { power, source })?;
    let signed = if power.is_multiple_of(2) { literal.clone() } else { -literal.clone() };
    Ok((signed, literal))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeLevel {
    /// Power `i` of `t`.
    pub power: usize,
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub coefficient: BigInt,
    /// Filtration index `N − i`.
    pub filtration_level: usize,
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub primitive_dim: BigInt,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeCoefficientReport {
    pub hypotheses_ok: bool,
    pub part2: VerificationReport,
    pub compressed: Option<CompressedReport>,
    /// `T(S)` is isomorphic to the complex of the triangulation.
    pub isomorphic: bool,
    /// Sign-corrected quotient; expected to equal `h_{T(S)}(t) = δ_P(t)`.
    pub polynomial: IntPolynomial,
    /// The quotient without the sign `(−1)^{n−e}`.
    pub unsigned_polynomial: IntPolynomial,
    pub equals_h: bool,
    pub equals_delta: bool,
    pub hodge: HodgeDims,
    pub levels: Vec<HodgeLevel>,
    pub pass: bool,
    pub notes: Vec<String>,
}

fn hypothesis_error<T>(result: Result<T, PolytopeError>, label: &str, notes: &mut Vec<String>) -> Result<Option<T>, HodgeError> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(
            e @ (PolytopeError::NotStandardType
            | PolytopeError::NotInCstar
            | PolytopeError::NotFullDimensional { .. }
            | PolytopeError::NotBoundaryTriangulation(_)
            | PolytopeError::InvalidTriangulation(_)
            | PolytopeError::NotUnimodular
            | PolytopeError::MixedDimensions),
        ) => {
            notes.push(format!("{label}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

/// Reads the coefficients of `(−1)^{n−e} t^n χ_c(S)(1/t)/(t − 1)^{n−e}` as
/// primitive Hodge-filtration dimensions of a hypersurface with Newton
/// polytope `P`, where `T(S)` is a compressed boundary triangulation of `P`.
pub fn chromatic_hodge_coefficients(
    s: &SimplicialComplex,
    witness: &PropertyIWitness,
    p: &LatticePolytope,
    t: &Triangulation,
) -> Result<HodgeCoefficientReport, HodgeError> {
    let mut notes = vec!["regularity of f with Newton polytope P is assumed".to_string()];
    let part2 = verify_identity_part2(s, witness)?;
    let compressed = hypothesis_error(is_compressed(p, t), "compressed triangulation", &mut notes)?;
    let aux = s.auxiliary_complex(witness)?;
    let isomorphic = aux.is_isomorphic(&t.complex()?);
    let hypotheses_ok = part2.pass
        && isomorphic
        && compressed.as_ref().is_some_and(|c| c.definition_check && c.h_equals_delta);

    let n = s.num_vertices();
    let e = apex_star_dim(s, witness)?;
    let chi = chi_polynomial(s)?.polynomial;
    let (polynomial, unsigned_polynomial) = reflected_quotient(&chi, n, e)?;
    if (n - e) % 2 == 1 {
        notes.push(format!("without the sign (-1)^(n-e) the quotient is {unsigned_polynomial}"));
    }
    let h = aux.h_polynomial()?;
    let delta = crate::polytope::delta_vector(p)?;
    let big_n = p.dim();
    if p.ambient_dim() != big_n {
        notes.push("P is not full-dimensional; torus dimension taken as dim P".into());
    }
    let hodge = hodge_dims_from_delta(&delta_entries(&delta, big_n), big_n)?;
    let levels: Vec<HodgeLevel> = (1..=big_n)
        .map(|i| {
            let coefficient = polynomial.coeff(i);
            let primitive_dim = hodge.primitive[big_n - i].clone();
            HodgeLevel {
                power: i,
                holds: coefficient == primitive_dim,
                coefficient,
                filtration_level: big_n - i,
                primitive_dim,
            }
        })
        .collect();
    let equals_h = polynomial == h;
    let equals_delta = polynomial == delta;
    let pass = equals_h && equals_delta && levels.iter().all(|l| l.holds);
    Ok(HodgeCoefficientReport {
        hypotheses_ok,
        part2,
        compressed,
        isomorphic,
        polynomial,
        unsigned_polynomial,
        equals_h,
        equals_delta,
        hodge,
        levels,
        pass,
        notes,
    })
}

/// `Ẽ_P(t) = Σ_{m≥1} E(P, −m) t^m`, from the Ehrhart polynomial at negative
/// integers.
pub fn negative_ehrhart_series(p: &LatticePolytope) -> Result<RationalFunction, HodgeError> {
    let ehrhart = ehrhart_polynomial(p)?;
    let values: Vec<BigInt> = (0..=p.dim() as i64)
        .map(|k| {
            let v = ehrhart.eval_int(-k);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(PolyError::NonIntegralSeries { index: k as usize, value: v })
            }
        })
        .collect::<Result<_, _>>()?;
    let constant = RationalFunction::from_poly(IntPolynomial::constant(values[0].clone()));
    Ok(&polynomial_generating_function(&values) - &constant)
}

/// `t^a (t − 1)^b` with `a` possibly negative.
fn monomial_times_power(a: i64, b: usize) -> RationalFunction {
    &RationalFunction::t_pow(a) * &RationalFunction::from_poly(IntPolynomial::t_minus_one().pow(b as u32))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub hypotheses_ok: bool,
    pub compressed: Option<CompressedReport>,
    /// The corrected chain, steps (i) to (iv).
    pub steps: Vec<VerificationReport>,
    /// The displayed form, with `(t^{m+2} − 1)`.
    pub displayed_form: VerificationReport,
    /// The variant with `(t^{m+1} − 1)` appearing in its derivation.
    pub derivation_form: VerificationReport,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Verifies, as identities of rational functions:
/// (i) `χ_c(S)/(t^e (t−1)^{n−e}) = h_{T(S)}(1/t)`,
/// (ii) `h_{T(S)} = δ_P`,
/// (iii) `Ẽ_P(t) = −E_P(1/t)`,
/// (iv) `χ_c(S)/(t^{e−m'−1} (t−1)^{n−e}) = −(t−1)^{m'+1} Ẽ_P(t)`, `m' = dim P`.
/// The displayed right-hand side `(t^{m+2} − 1)(1 + Ẽ_P)` and the
/// `(t^{m+1} − 1)` variant are evaluated with `d = dim S + 1`,
/// `m = dim T(S)` and reported separately.
pub fn verify_compressed_chain(
    s: &SimplicialComplex,
    witness: &PropertyIWitness,
    p: &LatticePolytope,
    t: &Triangulation,
) -> Result<ChainReport, HodgeError> {
    let mut notes = Vec::new();
    let compressed = hypothesis_error(is_compressed(p, t), "compressed triangulation", &mut notes)?;
    let aux = s.auxiliary_complex(witness)?;
    let isomorphic = aux.is_isomorphic(&t.complex()?);
    if !isomorphic {
        notes.push("T(S) is not isomorphic to the triangulation's complex".into());
    }
    let hyp = isomorphic && compressed.as_ref().is_some_and(|c| c.definition_check);

    let n = s.num_vertices();
    let e = apex_star_dim(s, witness)?;
    let chi = RationalFunction::from_poly(chi_polynomial(s)?.polynomial);
    let h = aux.h_polynomial()?;
    let delta = crate::polytope::delta_vector(p)?;
    let m_p = p.dim();

    let step1 = verify_identity_part2(s, witness)?;
    let step1 = VerificationReport { hypotheses_ok: hyp && step1.hypotheses_ok, ..step1 };
    let step2 = VerificationReport::compare(
        "h_T(t) = delta_P(t)",
        hyp,
        RationalFunction::from_poly(h),
        RationalFunction::from_poly(delta),
    );
    let e_tilde = negative_ehrhart_series(p)?;
    let step3 = VerificationReport::compare(
        "E~_P(t) = -E_P(1/t)",
        true,
        e_tilde.clone(),
        -ehrhart_series(p)?.substitute_reciprocal(),
    );
    let lhs4 = chi.div(&monomial_times_power(e as i64 - m_p as i64 - 1, n - e))?;
    let rhs4 = -(&RationalFunction::from_poly(IntPolynomial::t_minus_one().pow(m_p as u32 + 1)) * &e_tilde);
    let step4 = VerificationReport::compare("chi(t) / (t^(e-m'-1) (t-1)^(n-e)) = -(t-1)^(m'+1) E~_P(t)", hyp, lhs4, rhs4);

    let d = s.krull_dim()?;
    let m = aux.krull_dim()? as i64 - 1;
    let one_plus = &RationalFunction::one() + &e_tilde;
    let printed_form = |k: i64, label: &str| -> Result<VerificationReport, HodgeError> {
        let lhs = chi.div(&monomial_times_power(d as i64 - m - 2, n - d))?;
        let factor = &RationalFunction::t_pow(k) - &RationalFunction::one();
        Ok(VerificationReport::compare(label, hyp, lhs, &factor * &one_plus))
    };
    let displayed_form = printed_form(m + 2, "chi(t) / (t^(d-m-2) (t-1)^(n-d)) = (t^(m+2) - 1)(1 + E~_P(t))")?;
    let derivation_form = printed_form(m + 1, "chi(t) / (t^(d-m-2) (t-1)^(n-d)) = (t^(m+1) - 1)(1 + E~_P(t))")?;
    notes.push(format!("n = {n}, e = {e}, dim S + 1 = {d}, dim T(S) = {m}, dim P = {m_p}"));

    let steps = vec![step1, step2, step3, step4];
    let pass = steps.iter().all(|r| r.pass);
    Ok(ChainReport {
        hypotheses_ok: hyp,
        compressed,
        steps,
        displayed_form,
        derivation_form,
        pass,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCohReport {
    pub hypotheses_ok: bool,
    pub hstar: Option<HStarReport>,
    pub isomorphic: bool,
    /// `χ_c(S)/(t^{e−r−1} (t−1)^{n−e+r+1}) = E_P(1/t)`.
    pub identity: VerificationReport,
    /// Power series of the left side at `t = 0`.
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub series: Vec<BigInt>,
    /// `(−1)^{r+1} E⁺(P, m)` from direct interior counts.
    #[serde(serialize_with = "crate::poly::serialize_bigints")]
    pub interior_counts: Vec<BigInt>,
    pub series_ok: bool,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Ties `χ_c` of the apex augmentation of a unimodular triangulation of `P`
/// to the Ehrhart series of `P` and to its interior lattice-point counts.
pub fn verify_lattice_coh(
    s: &SimplicialComplex,
    witness: &PropertyIWitness,
    p: &LatticePolytope,
    t_full: &Triangulation,
) -> Result<LatticeCohReport, HodgeError> {
    let mut notes = Vec::new();
    let hstar = hypothesis_error(verify_hstar_eq_h(p, t_full), "unimodular triangulation", &mut notes)?;
    let aux = s.auxiliary_complex(witness)?;
    let isomorphic = aux.is_isomorphic(&t_full.complex()?);
    if !isomorphic {
        notes.push("T(S) is not isomorphic to the triangulation's complex".into());
    }
    let hypotheses_ok = isomorphic && hstar.as_ref().is_some_and(|h| h.equal);

    let n = s.num_vertices();
    let e = apex_star_dim(s, witness)?;
    let r = p.dim();
    let chi = RationalFunction::from_poly(chi_polynomial(s)?.polynomial);
    let lhs = chi.div(&monomial_times_power(e as i64 - r as i64 - 1, n + r + 1 - e))?;
    let rhs = ehrhart_series(p)?.substitute_reciprocal();
    let identity = VerificationReport::compare("chi(t) / (t^(e-r-1) (t-1)^(n-e+r+1)) = E_P(1/t)", hypotheses_ok, lhs.clone(), rhs);
    let series = lhs.series_expand_integral(SERIES_ORDER)?;
    let sign = if (r + 1).is_multiple_of(2) { 1 } else { -1 };
    let interior_counts: Vec<BigInt> = (0..=SERIES_ORDER as u64)
        .map(|m| count_points(p, m, Region::Interior).map(|c| BigInt::from(c) * sign))
        .collect::<Result<_, _>>()?;
    let series_ok = series == interior_counts;
    let d = s.krull_dim()?;
    if d != e {
        notes.push(format!("exponent e = {e} differs from dim S + 1 = {d}"));
    }
    let pass = identity.pass && series_ok;
    Ok(LatticeCohReport {
        hypotheses_ok,
        hstar,
        isomorphic,
        identity,
        series,
        interior_counts,
        series_ok,
        pass,
        notes,
    })
}

/// `Σ primitive[i] = Σ_{j≥1} δ_j`.
pub fn primitive_sum_rule(dims: &HodgeDims, delta: &[BigInt]) -> bool {
    let lhs: BigInt = dims.primitive.iter().sum();
    let rhs: BigInt = delta.iter().skip(1).sum();
    lhs == rhs && !dims.primitive.iter().any(|x| x < &BigInt::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_polytope;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn square() -> LatticePolytope {
        build_polytope(&[vec![-1, -1], vec![1, -1], vec![1, 1], vec![-1, 1]]).unwrap()
    }

    fn ring() -> Triangulation {
        let pts = vec![
            vec![-1, -1],
            vec![0, -1],
            vec![1, -1],
            vec![1, 0],
            vec![1, 1],
            vec![0, 1],
            vec![-1, 1],
            vec![-1, 0],
        ];
        Triangulation::new(pts, (0..8).map(|i| vec![i, (i + 1) % 8]).collect()).unwrap()
    }

    fn segment_pair() -> (LatticePolytope, Triangulation) {
        let p = build_polytope(&[vec![-1], vec![1]]).unwrap();
        let t = Triangulation::new(vec![vec![-1], vec![1]], vec![vec![0], vec![1]]).unwrap();
        (p, t)
    }

    #[test]
    fn hodge_mapping_examples() {
        let h = hodge_dims_from_delta(&ints(&[1, 0]), 1).unwrap();
        assert_eq!((h.full, h.primitive), (ints(&[1]), ints(&[0])));
        let h = hodge_dims_from_delta(&ints(&[1, 3, 0]), 2).unwrap();
        assert_eq!((h.full.clone(), h.primitive.clone()), (ints(&[0, 5]), ints(&[0, 3])));
        assert!(primitive_sum_rule(&h, &ints(&[1, 3, 0])));
        let h = hodge_dims_from_delta(&ints(&[1, 0, 0]), 2).unwrap();
        assert_eq!((h.full, h.primitive), (ints(&[0, 2]), ints(&[0, 0])));
        assert!(matches!(
            hodge_dims_from_delta(&ints(&[1, 0]), 2),
            Err(HodgeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coefficients_two_points() {
        let (p, t) = segment_pair();
        let aug = t.complex().unwrap().apex_augment().unwrap();
        let rep = chromatic_hodge_coefficients(&aug.complex, &aug.witness, &p, &t).unwrap();
        assert!(rep.hypotheses_ok && rep.pass, "{rep:?}");
        assert_eq!(rep.polynomial, ip(&[1, 1]));
        assert_eq!(rep.unsigned_polynomial, ip(&[-1, -1]));
        assert_eq!(rep.levels[0].primitive_dim, BigInt::from(1));
        assert_eq!(rep.levels[0].filtration_level, 0);
    }

    #[test]
    fn coefficients_eight_cycle() {
        let t = ring();
        let aug = t.complex().unwrap().apex_augment().unwrap();
        let rep = chromatic_hodge_coefficients(&aug.complex, &aug.witness, &square(), &t).unwrap();
        assert!(rep.hypotheses_ok && rep.pass, "{rep:?}");
        assert_eq!(rep.polynomial, ip(&[1, 6, 1]));
    }

    #[test]
    fn coefficients_degenerate() {
        let s = SimplicialComplex::simplex(3).unwrap();
        let w = PropertyIWitness { alphas: vec![], apex: None };
        let p = build_polytope(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let t = Triangulation::new(p.vertices().to_vec(), vec![vec![0, 1, 2]]).unwrap();
        let rep = chromatic_hodge_coefficients(&s, &w, &p, &t).unwrap();
        assert_eq!(rep.polynomial, ip(&[1]));
        assert!(rep.hodge.primitive.iter().all(|x| x.is_zero()));
        assert!(!rep.hypotheses_ok);
    }

    #[test]
    fn chain_two_points() {
        let (p, t) = segment_pair();
        let aug = t.complex().unwrap().apex_augment().unwrap();
        let rep = verify_compressed_chain(&aug.complex, &aug.witness, &p, &t).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.steps[3].lhs, RationalFunction::from_poly(ip(&[0, 1, 1])));
        assert!(!rep.displayed_form.pass);
        let expected = RationalFunction::new(ip(&[1, -2, -3]), ip(&[-1, 1])).unwrap();
        assert_eq!(rep.displayed_form.rhs, expected);
        assert!(!rep.derivation_form.pass);
    }

    #[test]
    fn chain_eight_cycle() {
        let t = ring();
        let aug = t.complex().unwrap().apex_augment().unwrap();
        let rep = verify_compressed_chain(&aug.complex, &aug.witness, &square(), &t).unwrap();
        assert!(rep.hypotheses_ok && rep.pass, "{rep:?}");
    }

    #[test]
    fn lattice_coh_examples() {
        let p = build_polytope(&[vec![0], vec![2]]).unwrap();
        let t = Triangulation::new(vec![vec![0], vec![1], vec![2]], vec![vec![0, 1], vec![1, 2]]).unwrap();
        let aug = t.complex().unwrap().apex_augment().unwrap();
        let rep = verify_lattice_coh(&aug.complex, &aug.witness, &p, &t).unwrap();
        assert!(rep.hypotheses_ok && rep.pass, "{rep:?}");
        let expected = RationalFunction::new(ip(&[0, 1, 1]), ip(&[1, -2, 1])).unwrap();
        assert_eq!(rep.identity.lhs, expected);
        assert_eq!(rep.series, ints(&[0, 1, 3, 5, 7, 9, 11, 13, 15]));

        let unit = build_polytope(&[vec![0], vec![1]]).unwrap();
        let t = Triangulation::new(vec![vec![0], vec![1]], vec![vec![0, 1]]).unwrap();
        let s = t.complex().unwrap();
        let w = PropertyIWitness { alphas: vec![], apex: None };
        let rep = verify_lattice_coh(&s, &w, &unit, &t).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(chi_polynomial(&s).unwrap().polynomial, ip(&[0, 0, 1]));
    }
}
