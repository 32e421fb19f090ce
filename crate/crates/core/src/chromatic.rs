//! The simplicial chromatic polynomial `χ_c(S)(t)`, read as the number of
//! colorings of the vertices of `S` with at most `t` colors in which no minimal
//! nonface is monochromatic, together with the h-vector identities it satisfies.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{
    ComplexError, PropertyIWitness, SimplicialComplex, UniformCReport, UniformMode, VertexSet,
    MAX_SUBSET_NONFACES,
};
use crate::poly::{IntPolynomial, LaurentPolynomial, PolyError, RationalFunction};
use crate::report::VerificationReport;

/// Largest `t^n` the brute-force counter will enumerate.
pub const MAX_ENUMERATION: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaticError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{r} minimal nonfaces exceed the inclusion-exclusion cap of {MAX_SUBSET_NONFACES}")]
    TooManyNonfaces { r: usize },
    #[error("enumerating {colors}^{vertices} colorings exceeds the limit of {MAX_ENUMERATION}")]
    EnumerationTooLarge { colors: u64, vertices: usize },
    #[error("search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("witness does not satisfy property I")]
    NotPropertyI,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticResult {
    pub polynomial: IntPolynomial,
    pub n: usize,
    pub r: usize,
}

impl ChromaticResult {
    pub fn eval(&self, t: u64) -> BigInt {
        self.polynomial.eval(&BigInt::from(t))
    }
}

/// Partition of the vertex set into blocks, as block-membership masks.
#[derive(Clone, Copy)]
struct Blocks {
    block_of: [u8; 64],
    members: [u64; 64],
}

impl Blocks {
    fn singletons(n: usize) -> Self {
        let mut b = Blocks {
            block_of: [0; 64],
            members: [0; 64],
        };
        for v in 0..n {
            b.block_of[v] = v as u8;
            b.members[v] = 1 << v;
        }
        b
    }

    /// Merges every block meeting `hyperedge`; returns how many blocks vanished.
    fn merge(&mut self, hyperedge: VertexSet) -> usize {
        let mut touched = 0u64;
        for v in hyperedge.iter() {
            touched |= 1 << self.block_of[v];
        }
        let target = touched.trailing_zeros() as usize;
        let mut others = touched & !(1 << target);
        let lost = others.count_ones() as usize;
        while others != 0 {
            let b = others.trailing_zeros() as usize;
            others &= others - 1;
            let mut moved = self.members[b];
            self.members[target] |= moved;
            self.members[b] = 0;
            while moved != 0 {
                let v = moved.trailing_zeros() as usize;
                moved &= moved - 1;
                self.block_of[v] = target as u8;
            }
        }
        lost
    }
}

/// `χ_c(S)(t) = Σ_{A ⊆ MNF(S)} (−1)^{|A|} t^{k(A)}`, where `k(A)` is the number
/// of blocks of the partition of `V(S)` generated by the nonfaces in `A`
/// (untouched vertices are singleton blocks).
pub fn chi_polynomial(s: &SimplicialComplex) -> Result<ChromaticResult, ChromaticError> {
    let n = s.num_vertices();
    let nonfaces = s.minimal_nonfaces();
    let r = nonfaces.len();
    if r > MAX_SUBSET_NONFACES {
        return Err(ChromaticError::TooManyNonfaces { r });
    }
    // counts[k]: signed number of subsets generating exactly k blocks.
    let mut counts = vec![0i64; n + 1];
    fn walk(i: usize, nonfaces: &[VertexSet], blocks: Blocks, k: usize, sign: i64, counts: &mut [i64]) {
        if i == nonfaces.len() {
            counts[k] += sign;
            return;
        }
        walk(i + 1, nonfaces, blocks, k, sign, counts);
        let mut merged = blocks;
        let lost = merged.merge(nonfaces[i]);
        walk(i + 1, nonfaces, merged, k - lost, -sign, counts);
    }
    walk(0, nonfaces, Blocks::singletons(n), n, 1, &mut counts);
    let polynomial = IntPolynomial::new(counts.into_iter().map(BigInt::from).collect());
    Ok(ChromaticResult { polynomial, n, r })
}

/// Number of maps `V(S) → {1..t}` with no monochromatic minimal nonface, by
/// exhaustive enumeration of all `t^n` maps.
pub fn count_colorings(s: &SimplicialComplex, t: u64) -> Result<u64, ChromaticError> {
    let n = s.num_vertices();
    let total = (t as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_ENUMERATION {
        return Err(ChromaticError::EnumerationTooLarge { colors: t, vertices: n });
    }
    if n == 0 {
        return Ok(1);
    }
    if t == 0 {
        return Ok(0);
    }
    let nonfaces: Vec<Vec<usize>> = s.minimal_nonfaces().iter().map(|nf| nf.to_vec()).collect();
    let mut coloring = vec![0u64; n];
    let mut count = 0u64;
    loop {
        let valid = nonfaces.iter().all(|nf| {
            let c = coloring[nf[0]];
            nf.iter().any(|&v| coloring[v] != c)
        });
        if valid {
            count += 1;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(count);
            }
            coloring[pos] += 1;
            if coloring[pos] < t {
                break;
            }
            coloring[pos] = 0;
            pos += 1;
        }
    }
}

/// Whether some coloring with at most `t` colors leaves every minimal nonface
/// non-monochromatic.
///
/// Backtracks over vertices ordered by how many nonfaces contain them (most
/// first), checking each nonface as soon as its last vertex is colored. Colors
/// are interchangeable, so a vertex only tries colors up to one past the
/// largest color used so far. `budget` caps the number of search nodes.
pub fn exists_coloring(s: &SimplicialComplex, t: u64, budget: Option<u64>) -> Result<bool, ChromaticError> {
    let n = s.num_vertices();
    let nonfaces = s.minimal_nonfaces();
    if t == 0 {
        return Ok(n == 0);
    }
    if nonfaces.is_empty() {
        return Ok(true);
    }
    let mut order: Vec<usize> = (0..n).collect();
    let degree: Vec<usize> = (0..n)
        .map(|v| nonfaces.iter().filter(|nf| nf.contains(v)).count())
        .collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut closing: Vec<Vec<VertexSet>> = vec![Vec::new(); n];
    for nf in nonfaces {
        let last = nf.iter().max_by_key(|&v| position[v]).unwrap();
        closing[position[last]].push(*nf);
    }

    struct Search<'a> {
        order: &'a [usize],
        closing: &'a [Vec<VertexSet>],
        colors: usize,
        classes: Vec<VertexSet>,
        nodes: u64,
        budget: Option<u64>,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize, used: usize) -> Result<bool, ChromaticError> {
            if depth == self.order.len() {
                return Ok(true);
            }
            let v = self.order[depth];
            let limit = (used + 1).min(self.colors);
            for c in 0..limit {
                self.nodes += 1;
                if let Some(b) = self.budget {
                    if self.nodes > b {
                        return Err(ChromaticError::BudgetExceeded { budget: b });
                    }
                }
                let class = self.classes[c].insert(v);
                if self.closing[depth].iter().any(|nf| nf.is_subset(class)) {
                    continue;
                }
                let saved = self.classes[c];
                self.classes[c] = class;
                let found = self.run(depth + 1, used.max(c + 1))?;
                self.classes[c] = saved;
                if found {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }

    let colors = t.min(n as u64) as usize;
    let mut search = Search {
        order: &order,
        closing: &closing,
        colors,
        classes: vec![VertexSet::EMPTY; colors],
        nodes: 0,
        budget,
    };
    search.run(0, 0)
}

/// `(1 - 1/t)^k` as a rational function.
fn one_minus_inverse_pow(k: usize) -> RationalFunction {
    let base = RationalFunction::new(IntPolynomial::t_minus_one(), IntPolynomial::t()).expect("nonzero");
    base.pow(k as i32)
}

/// `h(1/t)`.
pub(crate) fn at_reciprocal(h: &IntPolynomial) -> RationalFunction {
    RationalFunction::from_poly(h.clone()).substitute_reciprocal()
}

/// Checks `χ_c(S)(t) − t^n = t^{n+1}((1 − t^{−1})^{n−d} h_S(t^{−1}) − 1)` with
/// `d` the algebraic dimension, under the hypothesis `c(I) = 1` for all `I`.
pub fn verify_identity_part1(s: &SimplicialComplex) -> Result<VerificationReport, ChromaticError> {
    let uniform = s.uniform_c_check(UniformMode::AllOne)?;
    let n = s.num_vertices();
    let d = s.krull_dim()?;
    let chi = chi_polynomial(s)?.polynomial;
    let h = s.h_polynomial()?;
    let lhs = RationalFunction::from_poly(&chi - &IntPolynomial::monomial(1, n));
    let inner = &(&one_minus_inverse_pow(n - d) * &at_reciprocal(&h)) - &RationalFunction::one();
    let rhs = &RationalFunction::t_pow(n as i64 + 1) * &inner;
    let mut report = VerificationReport::compare(
        "chi(t) - t^n = t^(n+1) ((1 - 1/t)^(n-d) h_S(1/t) - 1)",
        uniform.holds,
        lhs,
        rhs,
    )
    .with_note(format!("n = {n}, d = dim S + 1 = {d}"));
    if !uniform.holds {
        report = report.with_note("hypothesis failed: c(I) = 1 does not hold for every I");
    }
    Ok(report)
}

/// Exponent `e` in `χ_c(S)(t) = t^e (t − 1)^{n−e} h_{T(S)}(1/t)`: the largest
/// cardinality of a face through the apex, i.e. `dim T(S) + 2`. With no
/// minimal nonfaces `S` is a simplex and `e = n`.
///
/// Every subset of `V(S) ∖ {apex}` is a face of an apex-augmented complex, so
/// `dim S + 1 = n − 1` there; that value agrees with `e` only when `T(S)` has
/// codimension one in its vertex simplex.
pub fn apex_star_dim(s: &SimplicialComplex, witness: &PropertyIWitness) -> Result<usize, ChromaticError> {
    if s.num_nonfaces() == 0 {
        return Ok(s.num_vertices());
    }
    let aux = s.auxiliary_complex(witness)?;
    Ok(aux.krull_dim()? + 1)
}

fn part2_sides(chi: &IntPolynomial, n: usize, e: usize, h_aux: &IntPolynomial) -> Result<(RationalFunction, RationalFunction), ChromaticError> {
    let divisor = &IntPolynomial::monomial(1, e) * &IntPolynomial::t_minus_one().pow((n - e) as u32);
    Ok((RationalFunction::new(chi.clone(), divisor)?, at_reciprocal(h_aux)))
}

/// Checks `χ_c(S)(t) / (t^e (t − 1)^{n−e}) = h_{T(S)}(1/t)` for a property-I
/// complex with an apex witness, `e` from [`apex_star_dim`]. The outcome with
/// `e` replaced by `dim S + 1` is recorded in the notes.
pub fn verify_identity_part2(
    s: &SimplicialComplex,
    witness: &PropertyIWitness,
) -> Result<VerificationReport, ChromaticError> {
    let holds = if s.num_nonfaces() == 0 && witness.alphas.is_empty() {
        true
    } else {
        s.check_property_i(witness)?
    };
    if !holds {
        return Err(ChromaticError::NotPropertyI);
    }
    let aux = s.auxiliary_complex(witness)?;
    let h_aux = aux.h_polynomial()?;
    let n = s.num_vertices();
    let d = s.krull_dim()?;
    let e = apex_star_dim(s, witness)?;
    let chi = chi_polynomial(s)?.polynomial;
    let (lhs, rhs) = part2_sides(&chi, n, e, &h_aux)?;
    let (literal_lhs, _) = part2_sides(&chi, n, d, &h_aux)?;
    let literal = if literal_lhs.equals(&rhs) { "holds" } else { "fails" };
    Ok(VerificationReport::compare("chi(t) / (t^e (t-1)^(n-e)) = h_T(1/t)", true, lhs, rhs)
        .with_note(format!("n = {n}, e = dim T(S) + 2 = {e}, dim S + 1 = {d}"))
        .with_note(format!("with dim S + 1 in place of e the identity {literal}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HCondition {
    pub index: usize,
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub value: BigInt,
    pub required_at_least: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertCandidateReport {
    pub uniform: UniformCReport,
    /// Common value of `c(I)` used; `1` when `r ≤ 1`.
    pub a: usize,
    pub h: IntPolynomial,
    pub h_conditions: Vec<HCondition>,
    pub hypotheses_ok: bool,
    /// `P(u) = 1 − u^{−n} χ(u) + (u^{−2n−1} − u^{−2n−a}) Σ_i u^{|σ_i|}`.
    pub candidate: LaurentPolynomial,
    pub is_polynomial: bool,
}

/// Extracts the candidate `P` of the Hilbert-polynomial statement by
/// multiplying its displayed left side by `t^n` and substituting `u = 1/t`,
/// and reports the hypotheses without asserting the conclusion.
pub fn hilbert_candidate(s: &SimplicialComplex) -> Result<HilbertCandidateReport, ChromaticError> {
    let uniform = s.uniform_c_check(UniformMode::AllEqual)?;
    let a = if uniform.a_undefined { 1 } else { uniform.a.unwrap_or(0) };
    let r = s.num_nonfaces();
    let n = s.num_vertices() as i64;
    let h = s.h_polynomial()?;
    let mut h_conditions = Vec::new();
    let mut push = |index: usize, req: u64| {
        let value = h.coeff(index);
        let holds = value >= BigInt::from(req);
        h_conditions.push(HCondition {
            index,
            value,
            required_at_least: req,
            holds,
        });
    };
    push(a + r, 1);
    push(a + 1, 3);
    push(a + 2, 3);
    for i in a..=h.degree().unwrap_or(0).max(a) {
        push(i, 1);
    }
    let hypotheses_ok = uniform.holds && h_conditions.iter().all(|c| c.holds);

    let chi = chi_polynomial(s)?.polynomial;
    let one = LaurentPolynomial::monomial(1, 0);
    let chi_term = &LaurentPolynomial::new(-n, chi);
    let sigma_sum = s
        .minimal_nonfaces()
        .iter()
        .fold(LaurentPolynomial::from_poly(IntPolynomial::zero()), |acc, nf| {
            &acc + &LaurentPolynomial::monomial(1, nf.len() as i64)
        });
    let factor = &LaurentPolynomial::monomial(1, -2 * n - 1) - &LaurentPolynomial::monomial(1, -2 * n - a as i64);
    let candidate = &(&one - chi_term) + &(&factor * &sigma_sum);
    let is_polynomial = candidate.is_polynomial();
    Ok(HilbertCandidateReport {
        uniform,
        a,
        h,
        h_conditions,
        hypotheses_ok,
        candidate,
        is_polynomial,
    })
}

/// `χ_c(S)(t)` evaluated at `t`, falling back to brute force when the
/// nonface count exceeds the inclusion–exclusion cap.
pub fn evaluate_chi(s: &SimplicialComplex, t: u64) -> Result<BigInt, ChromaticError> {
    match chi_polynomial(s) {
        Ok(res) => Ok(res.eval(t)),
        Err(ChromaticError::TooManyNonfaces { .. }) => Ok(count_colorings(s, t)?.into()),
        Err(e) => Err(e),
    }
}
