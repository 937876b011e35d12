//! The discrete cube {0,1}^d and G-valued configurations on it.
//!
//! A vertex ω = (ω₁, …, ω_d) is stored as the integer whose binary digits,
//! read most significant first, are ω₁ω₂…ω_d; axis j (0-based) therefore
//! occupies bit d-1-j. Subsets of axes use the same bit layout as vertices.
//!
//! The boundary operator along a set of axes B takes the alternating Gray
//! sum over the |B|-subcube through each remaining vertex:
//! (δ_B p)(ω') = Σ_{τ ∈ {0,1}^B} (-1)^{|τ|} p(ω', τ).

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Hamming weight of a vertex.
pub fn weight(v: usize) -> u32 {
    v.count_ones()
}

/// Bit mask of a single axis inside a dimension-d cube.
pub fn axis_mask(d: usize, axis: usize) -> Result<usize> {
    if axis >= d {
        return Err(Error::AxisOutOfRange { axis, d });
    }
    Ok(1 << (d - 1 - axis))
}

/// Combined mask of a set of distinct axes.
pub fn axes_mask(d: usize, axes: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &axis in axes {
        let bit = axis_mask(d, axis)?;
        if mask & bit != 0 {
            return Err(Error::BadInput { reason: format!("axis {axis} repeated") });
        }
        mask |= bit;
    }
    Ok(mask)
}

/// Packs the bits of `v` selected by `mask` toward the low end, preserving order.
pub fn compress_bits(v: usize, mut mask: usize) -> usize {
    let mut out = 0;
    let mut out_bit = 1;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if v & low != 0 {
            out |= out_bit;
        }
        out_bit <<= 1;
        mask ^= low;
    }
    out
}

/// Inverse of [`compress_bits`]: spreads low bits of `v` into the positions of `mask`.
pub fn expand_bits(v: usize, mut mask: usize) -> usize {
    let mut out = 0;
    let mut in_bit = 1;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if v & in_bit != 0 {
            out |= low;
        }
        in_bit <<= 1;
        mask ^= low;
    }
    out
}

/// All submasks of `mask`, descending, ending with 0.
pub fn submasks(mask: usize) -> impl Iterator<Item = usize> {
    let mut current = Some(mask);
    std::iter::from_fn(move || {
        let s = current?;
        current = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

/// Vertices of {0,1}^d sorted by (weight, index): the canonical corner order.
pub fn vertices_by_weight(d: usize) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..1usize << d).collect();
    vs.sort_by_key(|&v| (weight(v), v));
    vs
}

/// A G-valued configuration on the vertices of {0,1}^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubePoint {
    spec: GroupSpec,
    d: usize,
    values: Vec<GroupElement>,
}

impl CubePoint {
    pub fn new(spec: GroupSpec, d: usize, values: Vec<GroupElement>) -> Result<Self> {
        if values.len() != 1 << d {
            return Err(Error::BadInput {
                reason: format!("dimension {d} cube needs {} values, got {}", 1 << d, values.len()),
            });
        }
        for v in &values {
            if !spec.contains(v) {
                return Err(Error::ElementMismatch { expected: spec.to_string(), got: v.to_string() });
            }
        }
        Ok(CubePoint { spec, d, values })
    }

    pub fn zero(spec: GroupSpec, d: usize) -> Self {
        let values = vec![spec.zero(); 1 << d];
        CubePoint { spec, d, values }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn value(&self, vertex: usize) -> &GroupElement {
        &self.values[vertex]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == self.spec.zero())
    }

    fn check_compatible(&self, other: &CubePoint) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        if self.d != other.d {
            return Err(Error::DimensionMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    pub fn add(&self, other: &CubePoint) -> Result<CubePoint> {
        self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.spec.add(a, b))
            .collect::<Result<_>>()?;
        Ok(CubePoint { spec: self.spec.clone(), d: self.d, values })
    }

    pub fn sub(&self, other: &CubePoint) -> Result<CubePoint> {
        self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.spec.sub(a, b))
            .collect::<Result<_>>()?;
        Ok(CubePoint { spec: self.spec.clone(), d: self.d, values })
    }

    pub fn neg(&self) -> Result<CubePoint> {
        let values = self.values.iter().map(|a| self.spec.neg(a)).collect::<Result<_>>()?;
        Ok(CubePoint { spec: self.spec.clone(), d: self.d, values })
    }

    /// Face inclusion: fixes each axis of `axes` to the corresponding bit of
    /// `fixed`, producing a cube of dimension d - |axes|.
    pub fn restrict(&self, axes: &[usize], fixed: &[u8]) -> Result<CubePoint> {
        if axes.len() != fixed.len() {
            return Err(Error::BadInput {
                reason: format!("{} axes but {} fixed bits", axes.len(), fixed.len()),
            });
        }
        if fixed.iter().any(|&b| b > 1) {
            return Err(Error::BadInput { reason: "fixed bits must be 0 or 1".into() });
        }
        let b_mask = axes_mask(self.d, axes)?;
        let mut fixed_bits = 0usize;
        for (&axis, &bit) in axes.iter().zip(fixed) {
            if bit == 1 {
                fixed_bits |= axis_mask(self.d, axis)?;
            }
        }
        let keep = ((1usize << self.d) - 1) & !b_mask;
        let d_out = self.d - axes.len();
        let values = (0..1usize << d_out)
            .map(|v| self.values[expand_bits(v, keep) | fixed_bits].clone())
            .collect();
        Ok(CubePoint { spec: self.spec.clone(), d: d_out, values })
    }

    /// Single-axis face p ∘ s_axis^bit.
    pub fn face(&self, axis: usize, bit: u8) -> Result<CubePoint> {
        self.restrict(&[axis], &[bit])
    }

    /// Alternating Gray sum over the axes of `axes`; dimension drops by |axes|.
    pub fn boundary(&self, axes: &[usize]) -> Result<CubePoint> {
        let b_mask = axes_mask(self.d, axes)?;
        let keep = ((1usize << self.d) - 1) & !b_mask;
        let d_out = self.d - axes.len();
        let mut values = Vec::with_capacity(1 << d_out);
        for v in 0..1usize << d_out {
            let base = expand_bits(v, keep);
            let mut acc = self.spec.zero();
            for tau in submasks(b_mask) {
                let term = &self.values[base | tau];
                acc = if weight(tau) % 2 == 0 {
                    self.spec.add(&acc, term)?
                } else {
                    self.spec.sub(&acc, term)?
                };
            }
            values.push(acc);
        }
        Ok(CubePoint { spec: self.spec.clone(), d: d_out, values })
    }

    /// Single-axis boundary δ_axis p = p ∘ s_axis^0 - p ∘ s_axis^1.
    pub fn boundary_axis(&self, axis: usize) -> Result<CubePoint> {
        self.boundary(&[axis])
    }

    /// Projection pullback: inserts new constant axes at the given positions
    /// of the output cube (positions refer to the output's 0..d+|axes| range).
    pub fn pullback(&self, new_axes: &[usize]) -> Result<CubePoint> {
        let d_out = self.d + new_axes.len();
        let new_mask = axes_mask(d_out, new_axes)?;
        let keep = ((1usize << d_out) - 1) & !new_mask;
        let values = (0..1usize << d_out)
            .map(|v| self.values[compress_bits(v, keep)].clone())
            .collect();
        Ok(CubePoint { spec: self.spec.clone(), d: d_out, values })
    }
}
