//! Distance spectra of GU frames and fixed-point-free cyclic representations.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::abelian::GroupSpec;
use crate::error::{Error, Result};
use crate::gu::{GUFrame, UnitaryRep};
use crate::matops::{self, CMatrix};

/// Smallest singular value of `I - U_i` below which `U_i` counts as fixing a vector.
pub const FIXED_POINT_THRESHOLD: f64 = 1e-9;

/// Largest number of coprime tuples `min_distance_search` will enumerate.
pub const SEARCH_GUARD: f64 = 1e6;

/// Ties in `d_min` closer than this are broken lexicographically.
const TIE_TOL: f64 = 1e-12;

/// `d(i) = |phi - U_i phi|^2 = 2 (1 - Re <phi, U_i phi>)` for a unit generator.
///
/// A generator of other norm is rescaled to unit norm first.
pub fn distance_profile(g: &GUFrame) -> Vec<f64> {
    let phi = g.generator();
    let norm_sq = phi.norm_squared();
    if (norm_sq.sqrt() - 1.0).abs() > g.tolerance().abs {
        log::warn!("generator norm {} is not 1; normalizing before computing distances", norm_sq.sqrt());
    }
    g.rep()
        .matrices()
        .iter()
        .enumerate()
        .map(|(i, u)| {
            if i == 0 {
                return 0.0;
            }
            let a = phi.dotc(&(u * phi)).re / norm_sq;
            2.0 * (1.0 - a)
        })
        .collect()
}

/// Outcome of the fixed-point-free test; `witness` is the first offending index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointCheck {
    pub fixed_point_free: bool,
    pub witness: Option<usize>,
    pub min_singular_value: f64,
}

/// Whether no non-identity `U_i` has eigenvalue 1.
pub fn is_fixed_point_free(rep: &UnitaryRep) -> Result<FixedPointCheck> {
    let eye = matops::identity(rep.dim());
    let mut smallest = f64::INFINITY;
    for (i, u) in rep.matrices().iter().enumerate().skip(1) {
        let dec = matops::svd(&(&eye - u))?;
        let s = dec.singular_values.last().copied().unwrap_or(0.0);
        smallest = smallest.min(s);
        if s <= FIXED_POINT_THRESHOLD {
            return Ok(FixedPointCheck {
                fixed_point_free: false,
                witness: Some(i),
                min_singular_value: s,
            });
        }
    }
    Ok(FixedPointCheck {
        fixed_point_free: true,
        witness: None,
        min_singular_value: smallest,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_coprime(n: usize, u: &[i64]) -> Result<()> {
    for (k, &uk) in u.iter().enumerate() {
        if gcd(uk.unsigned_abs(), n as u64) != 1 {
            return Err(Error::NotCoprime { k, u: uk, n });
        }
    }
    Ok(())
}

/// Euler's totient, with `totient(1) = 1`.
pub fn totient(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let mut result = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// The cyclic group `{U^0, ..., U^{n-1}}` with `U = diag(exp(2 pi i u_k / n))`.
pub fn cyclic_fpf_rep(n: usize, u: &[i64]) -> Result<UnitaryRep> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic order must be positive".into()));
    }
    if u.is_empty() {
        return Err(Error::InvalidParameter("exponent list must be non-empty".into()));
    }
    check_coprime(n, u)?;
    let spec = GroupSpec::cyclic(n)?;
    let m = u.len();
    let matrices = (0..n)
        .map(|j| {
            let mut mat = CMatrix::zeros(m, m);
            for (k, &uk) in u.iter().enumerate() {
                let r = (uk * j as i64).rem_euclid(n as i64);
                mat[(k, k)] = Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64);
            }
            mat
        })
        .collect();
    Ok(UnitaryRep::unchecked(spec, matrices, Default::default()))
}

/// Best exponent tuple found by `min_distance_search`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceSearch {
    pub u: Vec<i64>,
    pub d_min: f64,
    pub profile: Vec<f64>,
}

/// Distance profile of `cyclic_fpf_rep(n, u)` with generator `(1, ..., 1)/sqrt(m)`.
pub fn uniform_profile(n: usize, u: &[i64]) -> Vec<f64> {
    let m = u.len() as f64;
    (0..n)
        .map(|i| {
            let mean: f64 = u
                .iter()
                .map(|&uk| {
                    let r = (uk * i as i64).rem_euclid(n as i64);
                    (2.0 * PI * r as f64 / n as f64).cos()
                })
                .sum::<f64>()
                / m;
            if i == 0 {
                0.0
            } else {
                2.0 * (1.0 - mean)
            }
        })
        .collect()
}

fn min_nonzero(profile: &[f64]) -> f64 {
    profile[1..].iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Maximizes `min_{i != 0} d(i)` over exponent tuples coprime to `n`.
///
/// Without `candidates` all tuples from `[1, n)` are enumerated, provided
/// there are at most `SEARCH_GUARD` of them. Ties go to the lexicographically
/// smallest tuple.
pub fn min_distance_search(n: usize, m: usize, candidates: Option<&[Vec<i64>]>) -> Result<DistanceSearch> {
    if n < 2 {
        return Err(Error::InvalidParameter("search needs a group of order at least 2".into()));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let mut best: Option<DistanceSearch> = None;
    let mut consider = |u: &[i64]| {
        let profile = uniform_profile(n, u);
        let d = min_nonzero(&profile);
        let better = match &best {
            None => true,
            Some(b) => d > b.d_min + TIE_TOL || ((d - b.d_min).abs() <= TIE_TOL && u < b.u.as_slice()),
        };
        if better {
            best = Some(DistanceSearch {
                u: u.to_vec(),
                d_min: d,
                profile,
            });
        }
    };
    match candidates {
        Some(list) => {
            for u in list {
                if u.len() != m {
                    return Err(Error::DimensionMismatch {
                        context: "candidate exponent tuple",
                        expected: m,
                        found: u.len(),
                    });
                }
                check_coprime(n, u)?;
                consider(u);
            }
        }
        None => {
            let units: Vec<i64> = (1..n as i64).filter(|&k| gcd(k as u64, n as u64) == 1).collect();
            let size = (units.len() as f64).powi(m as i32);
            if size > SEARCH_GUARD {
                return Err(Error::SearchTooLarge { size, guard: SEARCH_GUARD });
            }
            let mut digits = vec![0usize; m];
            let mut u = vec![units[0]; m];
            'outer: loop {
                consider(&u);
                for pos in (0..m).rev() {
                    digits[pos] += 1;
                    if digits[pos] < units.len() {
                        u[pos] = units[digits[pos]];
                        continue 'outer;
                    }
                    digits[pos] = 0;
                    u[pos] = units[0];
                }
                break;
            }
        }
    }
    best.ok_or_else(|| Error::InvalidParameter("candidate list is empty".into()))
}
