//! Finite abelian groups `Z_{n_1} x ... x Z_{n_p}` and their Fourier transform.
//!
//! Elements are indexed in mixed-radix lexicographic order with the last
//! factor varying fastest, so index 0 is always the identity. Every matrix
//! in the crate whose rows or columns are labelled by group elements (Gram
//! matrices, Fourier matrices, representation tables) uses this order.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A direct product of cyclic groups, serialized as its list of factor orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct GroupSpec {
    factors: Vec<usize>,
    order: usize,
}

/// Residue tuple `(q_1, ..., q_p)` with `0 <= q_t < n_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<usize>);

impl GroupSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors given".into()));
        }
        if let Some(t) = factors.iter().position(|&n| n == 0) {
            return Err(Error::InvalidGroup(format!("factor {t} has order 0")));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        Ok(GroupSpec { factors, order })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    /// Direct product `self x other`; factors of `self` vary slowest.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GroupSpec {
            factors,
            order: self.order * other.order,
        }
    }

    /// All elements in canonical order.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.order).map(|i| self.element(i)).collect()
    }

    /// Element at a canonical index. Panics if `index >= order`.
    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order, "element index out of range");
        let mut residues = vec![0; self.factors.len()];
        let mut rest = index;
        for (slot, &n) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = rest % n;
            rest /= n;
        }
        GroupElement(residues)
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(g.0
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&q, &n)| acc * n + q))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.factors.len() && g.0.iter().zip(&self.factors).all(|(&q, &n)| q < n)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                expected: self.factors.clone(),
            })
        }
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        ))
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let nh = self.neg(h)?;
        self.add(g, &nh)
    }

    /// Index of `element(a) + element(b)`, computed without allocating.
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        self.combine_index(a, b, false)
    }

    /// Index of `element(a) - element(b)`.
    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        self.combine_index(a, b, true)
    }

    pub fn neg_index(&self, a: usize) -> usize {
        self.sub_index(0, a)
    }

    fn combine_index(&self, mut a: usize, mut b: usize, subtract: bool) -> usize {
        let mut out = 0;
        let mut stride = 1;
        for &n in self.factors.iter().rev() {
            let (x, y) = (a % n, b % n);
            a /= n;
            b /= n;
            let r = if subtract { (x + n - y) % n } else { (x + y) % n };
            out += r * stride;
            stride *= n;
        }
        out
    }

    /// Fourier kernel `<h, q> = prod_t exp(-2 pi i h_t q_t / n_t)`.
    pub fn ft_kernel(&self, h: &GroupElement, q: &GroupElement) -> Result<Complex64> {
        self.check(h)?;
        self.check(q)?;
        Ok(self.kernel_residues(&h.0, &q.0))
    }

    /// Kernel between two canonical indices.
    pub fn ft_kernel_index(&self, h: usize, q: usize) -> Complex64 {
        let mut turns = 0.0;
        let (mut h, mut q) = (h, q);
        for &n in self.factors.iter().rev() {
            turns += ((h % n) * (q % n) % n) as f64 / n as f64;
            h /= n;
            q /= n;
        }
        unit_phase(turns)
    }

    fn kernel_residues(&self, h: &[usize], q: &[usize]) -> Complex64 {
        let turns: f64 = h
            .iter()
            .zip(q)
            .zip(&self.factors)
            .map(|((&a, &b), &n)| (a * b % n) as f64 / n as f64)
            .sum();
        unit_phase(turns)
    }

    /// Unitary FT matrix with entry `(h, q) = <h, q> / sqrt(n)`. It is symmetric.
    pub fn ft_matrix(&self) -> DMatrix<Complex64> {
        let n = self.order;
        let scale = 1.0 / (n as f64).sqrt();
        let mut f = DMatrix::zeros(n, n);
        for h in 0..n {
            for q in h..n {
                let v = self.ft_kernel_index(h, q) * scale;
                f[(h, q)] = v;
                f[(q, h)] = v;
            }
        }
        f
    }

    /// `F v`.
    pub fn ft_apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        self.check_len(v.len())?;
        Ok(self.ft_matrix() * v)
    }

    /// `F* v`.
    pub fn ift_apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        self.check_len(v.len())?;
        Ok(self.ft_matrix().adjoint() * v)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.order {
            return Err(Error::DimensionMismatch {
                context: "Fourier transform",
                expected: self.order,
                found: len,
            });
        }
        Ok(())
    }
}

/// `exp(-2 pi i * turns)`, with `turns` reduced to `[0, 1)` first.
fn unit_phase(turns: f64) -> Complex64 {
    let t = turns.fract();
    // exact values at quarter turns keep golden matrices free of 1e-17 noise
    let quarter = t * 4.0;
    if quarter == quarter.round() {
        return match quarter as i64 {
            0 | 4 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
    }
    Complex64::from_polar(1.0, -2.0 * PI * t)
}

impl TryFrom<Vec<usize>> for GroupSpec {
    type Error = Error;

    fn try_from(factors: Vec<usize>) -> Result<Self> {
        GroupSpec::new(factors)
    }
}

impl From<GroupSpec> for Vec<usize> {
    fn from(spec: GroupSpec) -> Self {
        spec.factors
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}
