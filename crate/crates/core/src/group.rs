//! Finite abelian groups G = ∏ⱼ Z/nⱼ in factored form.
//!
//! Elements and characters are both residue tuples in factor order; the dual
//! group of G is identified with G itself through the bicharacter pairing
//! (ξ, x) ↦ e(Σⱼ ξⱼxⱼ/nⱼ) with e(t) = exp(2πit). Canonical enumeration order
//! is mixed-radix with the last factor varying fastest.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// An element of G = ∏ Z/nⱼ: one reduced residue per factor.
///
/// Characters of G use the same representation; [`GroupSpec::pairing`] gives
/// the evaluation of a character at an element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    residues: Vec<u64>,
}

/// A character of G, as a residue tuple under the self-duality G ≅ Ĝ.
pub type Character = GroupElement;

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// The factored description of a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupSpec {
    orders: Vec<u64>,
}

impl GroupSpec {
    /// Builds a spec from factor orders n₁, …, nₘ (each ≥ 1).
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::BadInput { reason: "group needs at least one factor".into() });
        }
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::BadInput { reason: "factor orders must be positive".into() });
        }
        let mut card: u128 = 1;
        for &n in &orders {
            card = card.saturating_mul(n as u128);
        }
        if card > u64::MAX as u128 {
            return Err(Error::BadInput { reason: "group cardinality overflows u64".into() });
        }
        Ok(GroupSpec { orders })
    }

    /// Convenience constructor for a single cyclic factor Z/n.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn factor_count(&self) -> usize {
        self.orders.len()
    }

    pub fn cardinality(&self) -> u64 {
        self.orders.iter().product()
    }

    /// The dual group: structurally identical under the self-duality of
    /// finite abelian groups, kept as a separate accessor for readability.
    pub fn dual(&self) -> GroupSpec {
        self.clone()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.orders.len()] }
    }

    pub fn contains(&self, el: &GroupElement) -> bool {
        el.residues.len() == self.orders.len()
            && el.residues.iter().zip(&self.orders).all(|(&r, &n)| r < n)
    }

    fn check(&self, el: &GroupElement) -> Result<()> {
        if self.contains(el) {
            Ok(())
        } else {
            Err(Error::ElementMismatch { expected: self.to_string(), got: el.to_string() })
        }
    }

    /// Builds an element from raw residues, reducing each mod its factor.
    pub fn make(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.orders.len() {
            return Err(Error::BadInput {
                reason: format!(
                    "expected {} residues for group {}, got {}",
                    self.orders.len(),
                    self,
                    residues.len()
                ),
            });
        }
        let residues = residues
            .iter()
            .zip(&self.orders)
            .map(|(&r, &n)| r.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Integer scalar action c·x (repeated addition, so negative c negates).
    pub fn scalar_mul(&self, c: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| {
                let m = n as i128;
                (((c as i128 * x as i128) % m + m) % m) as u64
            })
            .collect();
        Ok(GroupElement { residues })
    }

    /// Strides of the mixed-radix element ordering (last factor fastest).
    pub fn strides(&self) -> Vec<u64> {
        let mut strides = vec![1u64; self.orders.len()];
        for j in (0..self.orders.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.orders[j + 1];
        }
        strides
    }

    /// Position of `el` in the canonical enumeration.
    pub fn index_of(&self, el: &GroupElement) -> Result<u64> {
        self.check(el)?;
        let strides = self.strides();
        Ok(el.residues.iter().zip(&strides).map(|(&r, &s)| r * s).sum())
    }

    /// The `idx`-th element of the canonical enumeration.
    pub fn element(&self, idx: u64) -> Result<GroupElement> {
        if idx >= self.cardinality() {
            return Err(Error::BadInput {
                reason: format!("index {idx} out of range for group {self}"),
            });
        }
        let mut rem = idx;
        let strides = self.strides();
        let residues = strides.iter().map(|&s| {
            let r = rem / s;
            rem %= s;
            r
        }).collect();
        Ok(GroupElement { residues })
    }

    /// All elements in canonical mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.cardinality()).map(move |i| self.element(i).expect("index in range"))
    }

    /// Uniformly random element.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let residues = self.orders.iter().map(|&n| rng.random_range(0..n)).collect();
        GroupElement { residues }
    }

    /// Least common multiple of the factor orders: every character value is
    /// an L-th root of unity for this L.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().copied().fold(1, lcm)
    }

    /// Exact pairing phase as a tick count: pairing(ξ, x) = e(ticks / L)
    /// with L = [`GroupSpec::exponent`]. Exact integer arithmetic.
    pub fn pairing_ticks(&self, chi: &Character, x: &GroupElement) -> Result<u64> {
        self.check(chi)?;
        self.check(x)?;
        let l = self.exponent();
        let mut ticks: u128 = 0;
        for ((&xi, &xx), &n) in chi.residues.iter().zip(&x.residues).zip(&self.orders) {
            let scale = (l / n) as u128;
            ticks = (ticks + (xi as u128 * xx as u128 % n as u128) * scale) % l as u128;
        }
        Ok(ticks as u64)
    }

    /// Bicharacter pairing e(Σⱼ ξⱼxⱼ/nⱼ), a root of unity of order dividing
    /// the group exponent.
    pub fn pairing(&self, chi: &Character, x: &GroupElement) -> Result<Complex64> {
        let ticks = self.pairing_ticks(chi, x)?;
        let l = self.exponent();
        let phase = std::f64::consts::TAU * (ticks as f64) / (l as f64);
        Ok(Complex64::from_polar(1.0, phase))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `"2x3x5"`-style factored descriptions.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse { what: "group spec".into(), input: s.into() };
        let orders = s
            .split('x')
            .map(|part| part.trim().parse::<u64>().map_err(|_| parse_err()))
            .collect::<Result<Vec<u64>>>()?;
        GroupSpec::new(orders).map_err(|_| parse_err())
    }
}
