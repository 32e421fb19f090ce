//! The fixture suite: every shipped worked example, checked end to end.

use anyhow::Result;
use num_bigint::BigInt;
use serde::{de::DeserializeOwned, Serialize};

use simplichrom::chromatic::{chi_polynomial, count_colorings, verify_identity_part1, verify_identity_part2};
use simplichrom::graph::{
    anti_ramsey_count, ramsey_probe, sufficient_condition_checks, Condition, ConditionParams, CrossCheck,
    ForbiddenFamily, ForbiddenPattern, Graph, DEFAULT_BUDGET,
};
use simplichrom::hodge::{
    chromatic_hodge_coefficients, delta_entries, hodge_dims_from_delta, primitive_sum_rule, verify_compressed_chain,
    verify_lattice_coh,
};
use simplichrom::polytope::{delta_vector, is_compressed, polar_dual, verify_hstar_eq_h, verify_reciprocity};
use simplichrom::{IntPolynomial, LatticePolytope, SimplicialComplex, Triangulation};

use crate::{parse_json, Outcome};

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name)))
    };
}

const FIXTURES: &[(&str, &str)] = &[
    fixture!("tri-boundary.json"),
    fixture!("two-triangles.json"),
    fixture!("seg02.json"),
    fixture!("seg-sym.json"),
    fixture!("unit-seg.json"),
    fixture!("unit-square.json"),
    fixture!("simplex2x.json"),
    fixture!("sq2.json"),
    fixture!("unit-cube.json"),
    fixture!("seg02-unit.tri.json"),
    fixture!("unit-seg.tri.json"),
    fixture!("unit-square-diag.tri.json"),
    fixture!("simplex2x-single.tri.json"),
    fixture!("unit-cube-six.tri.json"),
    fixture!("sq2-ring.tri.json"),
    fixture!("sq2-corners.tri.json"),
    fixture!("seg-sym-ends.tri.json"),
    fixture!("k5.graph.json"),
    fixture!("triangle.graph.json"),
];

fn get<T: DeserializeOwned>(name: &str) -> Result<T> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| anyhow::anyhow!("no fixture {name}"))?;
    parse_json(text, name)
}

fn ip(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

#[derive(Serialize)]
struct CaseResult {
    name: &'static str,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

type Check = fn() -> Result<bool>;

fn apex(tri: &str) -> Result<(SimplicialComplex, simplichrom::PropertyIWitness)> {
    let t: Triangulation = get(tri)?;
    let aug = t.complex()?.apex_augment()?;
    Ok((aug.complex, aug.witness))
}

const CASES: &[(&str, Check)] = &[
    ("boundary of a triangle: chi(2) = 6", || {
        let s: SimplicialComplex = get("tri-boundary.json")?;
        Ok(chi_polynomial(&s)?.eval(2) == BigInt::from(6) && count_colorings(&s, 2)? == 6)
    }),
    ("part 1 on the boundary of a triangle", || {
        let s: SimplicialComplex = get("tri-boundary.json")?;
        Ok(verify_identity_part1(&s)?.pass)
    }),
    ("part 1 with minimal nonfaces {0,1,2} and {0,2,3}", || {
        let s: SimplicialComplex = get("two-triangles.json")?;
        Ok(verify_identity_part1(&s)?.pass)
    }),
    ("part 2 on the apex augmentation of two points", || {
        let (s, w) = apex("seg-sym-ends.tri.json")?;
        Ok(verify_identity_part2(&s, &w)?.pass)
    }),
    ("part 2 on the apex augmentation of a path", || {
        let (s, w) = apex("seg02-unit.tri.json")?;
        Ok(verify_identity_part2(&s, &w)?.pass)
    }),
    ("part 2 on the apex augmentation of the 8-cycle", || {
        let (s, w) = apex("sq2-ring.tri.json")?;
        Ok(verify_identity_part2(&s, &w)?.pass)
    }),
    ("K5 without monochromatic triangles, 2 colors: 12", || {
        let g: Graph = get("k5.graph.json")?;
        let fam = ForbiddenFamily::single(ForbiddenPattern::Clique(3))?;
        Ok(anti_ramsey_count(&g, &fam, 2)? == BigInt::from(12))
    }),
    ("K3 without monochromatic triangles, 3 colors: 24", || {
        let g: Graph = get("triangle.graph.json")?;
        let fam = ForbiddenFamily::single(ForbiddenPattern::Clique(3))?;
        Ok(anti_ramsey_count(&g, &fam, 3)? == BigInt::from(24))
    }),
    ("Ramsey probe for triangles with 2 colors: 6", || {
        Ok(ramsey_probe(&ForbiddenPattern::Clique(3), 2, 8, DEFAULT_BUDGET)?.threshold == Some(6))
    }),
    ("K5, 2 colors, paths of length >= 2: no valid coloring", || {
        let g: Graph = get("k5.graph.json")?;
        let params = ConditionParams {
            condition: Condition::LongPaths,
            colors: 2,
            budget: Some(DEFAULT_BUDGET),
        };
        let rep = sufficient_condition_checks(&g, params)?;
        Ok(rep.threshold == Some(2) && rep.cases.iter().all(|c| c.cross_check == CrossCheck::Confirmed))
    }),
    ("delta vectors of the shipped polytopes", || {
        let expect: [(&str, &[i64]); 7] = [
            ("seg02.json", &[1, 1]),
            ("seg-sym.json", &[1, 1]),
            ("unit-seg.json", &[1, 0]),
            ("unit-square.json", &[1, 1, 0]),
            ("simplex2x.json", &[1, 3, 0]),
            ("sq2.json", &[1, 6, 1]),
            ("unit-cube.json", &[1, 4, 1, 0]),
        ];
        for (name, d) in expect {
            let p: LatticePolytope = get(name)?;
            let got = delta_entries(&delta_vector(&p)?, p.dim());
            if got != d.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>() {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("reciprocity for m <= 5 on the shipped polytopes", || {
        for name in ["seg02.json", "unit-square.json", "simplex2x.json", "sq2.json", "unit-cube.json"] {
            let p: LatticePolytope = get(name)?;
            if !verify_reciprocity(&p, 5)?.pass {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("polar dual of [-1,1]^2 is the cross-polytope", || {
        let p: LatticePolytope = get("sq2.json")?;
        let d = polar_dual(&p)?;
        Ok(d.in_cstar && d.round_trip && d.dual.is_some_and(|q| q.vertices().len() == 4))
    }),
    ("unimodular triangulations: h* = h", || {
        for (poly, tri) in [
            ("seg02.json", "seg02-unit.tri.json"),
            ("unit-square.json", "unit-square-diag.tri.json"),
            ("unit-cube.json", "unit-cube-six.tri.json"),
        ] {
            let p: LatticePolytope = get(poly)?;
            let t: Triangulation = get(tri)?;
            if !verify_hstar_eq_h(&p, &t)?.pass {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("8-point boundary cycle of [-1,1]^2 is compressed, h = delta", || {
        let p: LatticePolytope = get("sq2.json")?;
        let rep = is_compressed(&p, &get("sq2-ring.tri.json")?)?;
        Ok(rep.definition_check && rep.h_equals_delta && rep.h == ip(&[1, 6, 1]))
    }),
    ("4-corner cycle of [-1,1]^2 is not compressed, delta >= h", || {
        let p: LatticePolytope = get("sq2.json")?;
        let rep = is_compressed(&p, &get("sq2-corners.tri.json")?)?;
        Ok(!rep.definition_check && rep.delta_dominates_h && rep.h == ip(&[1, 2, 1]))
    }),
    ("compressed chain on [-1,1]", || {
        let (s, w) = apex("seg-sym-ends.tri.json")?;
        let rep = verify_compressed_chain(&s, &w, &get("seg-sym.json")?, &get("seg-sym-ends.tri.json")?)?;
        Ok(rep.pass && !rep.displayed_form.pass)
    }),
    ("compressed chain on [-1,1]^2", || {
        let (s, w) = apex("sq2-ring.tri.json")?;
        Ok(verify_compressed_chain(&s, &w, &get("sq2.json")?, &get("sq2-ring.tri.json")?)?.pass)
    }),
    ("Ehrhart series of [0,2] from the apex augmentation of a path", || {
        let (s, w) = apex("seg02-unit.tri.json")?;
        Ok(verify_lattice_coh(&s, &w, &get("seg02.json")?, &get("seg02-unit.tri.json")?)?.pass)
    }),
    ("Ehrhart series of [0,1], no nonfaces", || {
        let t: Triangulation = get("unit-seg.tri.json")?;
        let s = t.complex()?;
        let w = simplichrom::PropertyIWitness { alphas: vec![], apex: None };
        Ok(verify_lattice_coh(&s, &w, &get("unit-seg.json")?, &t)?.pass)
    }),
    ("Hodge coefficients from the 8-cycle", || {
        let (s, w) = apex("sq2-ring.tri.json")?;
        let rep = chromatic_hodge_coefficients(&s, &w, &get("sq2.json")?, &get("sq2-ring.tri.json")?)?;
        Ok(rep.pass && rep.polynomial == ip(&[1, 6, 1]))
    }),
    ("Hodge dimensions of 2 times the unit triangle", || {
        let p: LatticePolytope = get("simplex2x.json")?;
        let delta = delta_entries(&delta_vector(&p)?, p.dim());
        let dims = hodge_dims_from_delta(&delta, 2)?;
        let expect = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        Ok(dims.primitive == expect(&[0, 3]) && dims.full == expect(&[0, 5]) && primitive_sum_rule(&dims, &delta))
    }),
];

pub(crate) fn run() -> Result<Outcome> {
    let mut results = Vec::new();
    for (name, check) in CASES {
        let (pass, error) = match check() {
            Ok(p) => (p, None),
            Err(e) => (false, Some(format!("{e:#}"))),
        };
        results.push(CaseResult { name, pass, error });
    }
    let text = results
        .iter()
        .map(|r| {
            let mark = if r.pass { "PASS" } else { "FAIL" };
            match &r.error {
                Some(e) => format!("{mark} {} ({e})", r.name),
                None => format!("{mark} {}", r.name),
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let passed = results.iter().filter(|r| r.pass).count();
    let text = format!("{text}\n{passed}/{} fixture checks passed", results.len());
    let all = passed == results.len();
    Outcome::new("suite", &results, text)?.report(serde_json::json!({"passed": passed, "total": results.len()}), all)
}
