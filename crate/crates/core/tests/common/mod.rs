#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simplichrom::{SimplicialComplex, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random antichain of nonempty subsets of `0..n`, each of size at least
/// `min_size`.
pub fn random_antichain(rng: &mut ChaCha8Rng, n: usize, max_r: usize, min_size: usize) -> Vec<u64> {
    let r = rng.gen_range(0..=max_r);
    let mut sets: Vec<u64> = Vec::new();
    for _ in 0..r * 3 {
        if sets.len() == r {
            break;
        }
        let mut s = 0u64;
        while (s.count_ones() as usize) < min_size.max(1) {
            s = rng.gen_range(1u64..1 << n);
        }
        if sets.iter().all(|&x| x & s != x && x & s != s) {
            sets.push(s);
        }
    }
    sets
}

pub fn complex(n: usize, nonfaces: &[u64]) -> SimplicialComplex {
    SimplicialComplex::from_minimal_nonfaces(n, nonfaces.iter().map(|&b| VertexSet::from_bits(b)).collect())
        .expect("valid antichain")
}

pub fn random_complex(rng: &mut ChaCha8Rng, n_max: usize, r_max: usize) -> (usize, Vec<u64>) {
    let n = rng.gen_range(1..=n_max);
    let sets = random_antichain(rng, n, r_max, 1);
    (n, sets)
}

/// Colorings of `0..n` with `t` colors leaving no set monochromatic, by
/// enumerating all `t^n` maps.
pub fn brute_colorings(n: usize, nonfaces: &[u64], t: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    if t == 0 {
        return 0;
    }
    let mut color = vec![0u64; n];
    let mut count = 0;
    loop {
        let ok = nonfaces.iter().all(|&s| {
            let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            vs.iter().any(|&v| color[v] != color[vs[0]])
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            color[i] += 1;
            if color[i] < t {
                break;
            }
            color[i] = 0;
            i += 1;
        }
    }
}

/// Face counts by size (index `k` counts faces with `k` vertices), by
/// testing every subset.
pub fn brute_face_counts(n: usize, nonfaces: &[u64]) -> Vec<u64> {
    let mut f = vec![0u64; n + 1];
    for s in 0u64..1 << n {
        if nonfaces.iter().all(|&a| a & s != a) {
            f[s.count_ones() as usize] += 1;
        }
    }
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// h-vector from face counts, Krull dimension `d = max face size`.
pub fn brute_h(n: usize, nonfaces: &[u64]) -> (usize, Vec<BigInt>) {
    let f = brute_face_counts(n, nonfaces);
    let d = f.len() - 1;
    let h = (0..=d as i64)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    binom(d as i64 - j, i - j) * BigInt::from(f[j as usize]) * sign
                })
                .sum()
        })
        .collect();
    (d, h)
}

/// Pairwise intersecting sets; equivalent to `c(I) = 1` for every `I`.
pub fn pairwise_intersecting(sets: &[u64]) -> bool {
    sets.iter().all(|&a| sets.iter().all(|&b| a & b != 0))
}

/// `t^e (t-1)^(n-e) h(1/t)` at an integer `t`.
pub fn part2_oracle(n: usize, e: usize, h: &[BigInt], t: i64) -> BigRational {
    let t = BigRational::from_integer(t.into());
    let one = BigRational::from_integer(1.into());
    let hv: BigRational = h
        .iter()
        .enumerate()
        .map(|(i, c)| BigRational::from_integer(c.clone()) / pow(&t, i))
        .sum();
    pow(&t, e) * pow(&(&t - &one), n - e) * hv
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::from_integer(1.into()), |acc, _| acc * x)
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

/// `|det(v_1 - v_0, ..., v_r - v_0)|` of a full-dimensional simplex.
pub fn simplex_volume(points: &[Vec<i64>], simplex: &[usize]) -> i64 {
    let v0 = &points[simplex[0]];
    let rows: Vec<Vec<i64>> = simplex[1..]
        .iter()
        .map(|&i| points[i].iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    laplace_det(&rows).abs()
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn pts(v: &[&[i64]]) -> Vec<Vec<i64>> {
    v.iter().map(|p| p.to_vec()).collect()
}

pub fn simplices(v: &[&[usize]]) -> Vec<Vec<usize>> {
    v.iter().map(|s| s.to_vec()).collect()
}
