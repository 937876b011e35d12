//! Complex-valued functions on a group and cubes of such functions.

use crate::cube::{self, CubePoint};
use crate::error::{Error, Result};
use crate::group::{Character, GroupElement, GroupSpec};
use num_complex::Complex64;

/// A function G → ℂ as a dense value table in canonical element order.
///
/// Functions on the dual group (spectra) use the same representation, with
/// the table indexed by characters instead of elements.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    spec: GroupSpec,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(spec: GroupSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() as u64 != spec.cardinality() {
            return Err(Error::BadInput {
                reason: format!(
                    "group {} needs {} values, got {}",
                    spec,
                    spec.cardinality(),
                    values.len()
                ),
            });
        }
        Ok(GroupFunction { spec, values })
    }

    pub fn constant(spec: GroupSpec, z: Complex64) -> Self {
        let n = spec.cardinality() as usize;
        GroupFunction { spec, values: vec![z; n] }
    }

    /// Indicator of a single element.
    pub fn indicator(spec: GroupSpec, el: &GroupElement) -> Result<Self> {
        let idx = spec.index_of(el)? as usize;
        let mut values = vec![Complex64::new(0.0, 0.0); spec.cardinality() as usize];
        values[idx] = Complex64::new(1.0, 0.0);
        Ok(GroupFunction { spec, values })
    }

    /// The character x ↦ pairing(χ, x) as a value table.
    pub fn character(spec: GroupSpec, chi: &Character) -> Result<Self> {
        let values = spec
            .elements()
            .map(|x| spec.pairing(chi, &x))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupFunction { spec, values })
    }

    /// Phase polynomial e(P(x)/N) on a cyclic group Z/N, with P given by
    /// ascending integer coefficients.
    pub fn phase_polynomial(spec: GroupSpec, coeffs: &[i64]) -> Result<Self> {
        if spec.factor_count() != 1 {
            return Err(Error::BadInput {
                reason: format!("phase polynomials need a cyclic group, got {spec}"),
            });
        }
        let n = spec.orders()[0];
        let values = (0..n)
            .map(|x| {
                let mut p: i128 = 0;
                let mut xk: i128 = 1;
                for &c in coeffs {
                    p = (p + c as i128 % n as i128 * xk).rem_euclid(n as i128);
                    xk = xk * x as i128 % n as i128;
                }
                Complex64::from_polar(1.0, std::f64::consts::TAU * p as f64 / n as f64)
            })
            .collect();
        Ok(GroupFunction { spec, values })
    }

    /// Standard complex Gaussian values, reproducible from the RNG state.
    pub fn random_gaussian<R: rand::Rng + ?Sized>(spec: GroupSpec, rng: &mut R) -> Self {
        let n = spec.cardinality() as usize;
        let values = (0..n)
            .map(|_| {
                let u1: f64 = rng.random();
                let u2: f64 = rng.random();
                let r = (-2.0 * (1.0 - u1).ln()).sqrt();
                let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
                Complex64::new(r * c, r * s)
            })
            .collect();
        GroupFunction { spec, values }
    }

    /// Random values of modulus one (uniform phases).
    pub fn random_phases<R: rand::Rng + ?Sized>(spec: GroupSpec, rng: &mut R) -> Self {
        let n = spec.cardinality() as usize;
        let values = (0..n)
            .map(|_| Complex64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>()))
            .collect();
        GroupFunction { spec, values }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at_index(&self, idx: u64) -> Complex64 {
        self.values[idx as usize]
    }

    pub fn value(&self, x: &GroupElement) -> Result<Complex64> {
        Ok(self.values[self.spec.index_of(x)? as usize])
    }

    pub fn conj(&self) -> Self {
        GroupFunction { spec: self.spec.clone(), values: self.values.iter().map(|z| z.conj()).collect() }
    }

    fn check_same_spec(&self, other: &GroupFunction) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &GroupFunction) -> Result<Self> {
        self.check_same_spec(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(GroupFunction { spec: self.spec.clone(), values })
    }

    pub fn add(&self, other: &GroupFunction) -> Result<Self> {
        self.check_same_spec(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(GroupFunction { spec: self.spec.clone(), values })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        GroupFunction { spec: self.spec.clone(), values: self.values.iter().map(|z| c * z).collect() }
    }

    /// Translation T^y f = x ↦ f(x + y).
    pub fn translate(&self, y: &GroupElement) -> Result<Self> {
        let n = self.spec.cardinality();
        let y_idx = self.spec.index_of(y)?;
        let arith = crate::cube_space::IndexArith::new(&self.spec);
        let values = (0..n).map(|x| self.values[arith.add(x, y_idx) as usize]).collect();
        Ok(GroupFunction { spec: self.spec.clone(), values })
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }
}

/// A cube of functions: one function per vertex of {0,1}^d, all on one group.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionCube {
    spec: GroupSpec,
    d: usize,
    entries: Vec<GroupFunction>,
}

impl FunctionCube {
    pub fn new(spec: GroupSpec, d: usize, entries: Vec<GroupFunction>) -> Result<Self> {
        if entries.len() != 1 << d {
            return Err(Error::BadInput {
                reason: format!("dimension {d} cube needs {} entries, got {}", 1 << d, entries.len()),
            });
        }
        for f in &entries {
            if *f.spec() != spec {
                return Err(Error::SpecMismatch {
                    left: spec.to_string(),
                    right: f.spec().to_string(),
                });
            }
        }
        Ok(FunctionCube { spec, d, entries })
    }

    /// The constant cube (f, f, …, f).
    pub fn constant(f: &GroupFunction, d: usize) -> Self {
        FunctionCube { spec: f.spec().clone(), d, entries: vec![f.clone(); 1 << d] }
    }

    pub fn random_gaussian<R: rand::Rng + ?Sized>(spec: GroupSpec, d: usize, rng: &mut R) -> Self {
        let entries = (0..1usize << d)
            .map(|_| GroupFunction::random_gaussian(spec.clone(), rng))
            .collect();
        FunctionCube { spec, d, entries }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[GroupFunction] {
        &self.entries
    }

    pub fn entry(&self, vertex: usize) -> &GroupFunction {
        &self.entries[vertex]
    }

    /// Face cube along one axis, keeping the entries with that axis fixed.
    pub fn face(&self, axis: usize, bit: u8) -> Result<FunctionCube> {
        let mask = cube::axis_mask(self.d, axis)?;
        let keep = ((1usize << self.d) - 1) & !mask;
        let fixed = if bit == 1 { mask } else { 0 };
        let entries = (0..1usize << (self.d - 1))
            .map(|v| self.entries[cube::expand_bits(v, keep) | fixed].clone())
            .collect();
        Ok(FunctionCube { spec: self.spec.clone(), d: self.d - 1, entries })
    }

    /// Entrywise translation by a cube point: entry ω becomes T^{q_ω} f_ω.
    pub fn shift(&self, q: &CubePoint) -> Result<FunctionCube> {
        if q.dim() != self.d {
            return Err(Error::DimensionMismatch { left: self.d, right: q.dim() });
        }
        if q.spec() != &self.spec {
            return Err(Error::SpecMismatch {
                left: self.spec.to_string(),
                right: q.spec().to_string(),
            });
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(v, f)| f.translate(q.value(v)))
            .collect::<Result<_>>()?;
        Ok(FunctionCube { spec: self.spec.clone(), d: self.d, entries })
    }
}
