//! Discrete Fourier transform on G with the mean-on-G, sum-on-Ĝ
//! normalization, and the Parseval-type isometry between primal and dual
//! inner products.
//!
//! Conventions, fixed throughout:
//!
//!   f̂(χ) = E_{x∈G} f(x)·conj(χ(x)),     f(x) = Σ_{χ∈Ĝ} f̂(χ)·χ(x).
//!
//! The isometry states ⟨F⟩_{d,l} over G equals ⟨F̂⟩_{d,d-l-1} over Ĝ, the
//! right side summed rather than averaged.

use crate::error::Result;
use crate::exec;
use crate::function::{FunctionCube, GroupFunction};
use crate::inner::{eval_inner_product, Side};
use num_complex::Complex64;

/// One direction of the separable transform along a single cyclic factor.
/// `sign` is -1.0 for the forward transform and +1.0 for inversion.
fn axis_transform(values: &[Complex64], orders: &[u64], axis: usize, sign: f64) -> Vec<Complex64> {
    let n = orders[axis] as usize;
    let stride: usize = orders[axis + 1..].iter().map(|&o| o as usize).product();
    let roots: Vec<Complex64> = (0..n)
        .map(|r| Complex64::from_polar(1.0, sign * std::f64::consts::TAU * r as f64 / n as f64))
        .collect();
    exec::map_table(values.len(), |idx| {
        let digit = (idx / stride) % n;
        let base = idx - digit * stride;
        let mut acc = Complex64::new(0.0, 0.0);
        for t in 0..n {
            acc += values[base + t * stride] * roots[(digit * t) % n];
        }
        acc
    })
}

/// Forward transform: f̂(χ) = E_x f(x) conj(χ(x)), computed separably per
/// cyclic factor. The result is a complete table over Ĝ ≅ G.
pub fn dft(f: &GroupFunction) -> GroupFunction {
    let spec = f.spec().clone();
    let orders = spec.orders().to_vec();
    let mut values = f.values().to_vec();
    for axis in 0..orders.len() {
        values = axis_transform(&values, &orders, axis, -1.0);
    }
    let card = spec.cardinality() as f64;
    for v in &mut values {
        *v /= card;
    }
    GroupFunction::new(spec.dual(), values).expect("table length is |G| by construction")
}

/// Inverse transform: f(x) = Σ_χ f̂(χ) χ(x).
pub fn idft(fhat: &GroupFunction) -> GroupFunction {
    let spec = fhat.spec().clone();
    let orders = spec.orders().to_vec();
    let mut values = fhat.values().to_vec();
    for axis in 0..orders.len() {
        values = axis_transform(&values, &orders, axis, 1.0);
    }
    GroupFunction::new(spec.dual(), values).expect("table length is |G| by construction")
}

/// Quadratic-time transform straight from the definition, kept as an
/// independent reference for the separable implementation.
pub fn dft_naive(f: &GroupFunction) -> GroupFunction {
    let spec = f.spec().clone();
    let card = spec.cardinality() as f64;
    let points: Vec<_> = spec.elements().collect();
    let values: Vec<Complex64> = points
        .iter()
        .map(|chi| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (xi, x) in points.iter().enumerate() {
                acc += f.value_at_index(xi as u64) * spec.pairing(chi, x).unwrap().conj();
            }
            acc / card
        })
        .collect();
    GroupFunction::new(spec.dual(), values).expect("table length is |G| by construction")
}

/// Entrywise transform of a cube of functions.
pub fn cube_dft(cube: &FunctionCube) -> FunctionCube {
    let entries: Vec<GroupFunction> = cube.entries().iter().map(dft).collect();
    FunctionCube::new(cube.spec().dual(), cube.dim(), entries)
        .expect("entry count and spec are preserved")
}

/// Both sides of the isometry ⟨F⟩_{d,l} = ⟨F̂⟩_{d,d-l-1}: the primal mean at
/// degree l and the dual sum of the transformed cube at degree d-l-1.
pub fn parseval_sides(
    cube: &FunctionCube,
    degree: i64,
    limit: u64,
) -> Result<(Complex64, Complex64)> {
    let lhs = eval_inner_product(cube, degree, Side::Primal, limit)?;
    let dual_degree = cube.dim() as i64 - degree - 1;
    let rhs = eval_inner_product(&cube_dft(cube), dual_degree, Side::Dual, limit)?;
    Ok((lhs, rhs))
}

/// Residual report for the isometry at one (d, l).
pub fn parseval_check(cube: &FunctionCube, degree: i64, limit: u64) -> Result<crate::CheckReport> {
    let (lhs, rhs) = parseval_sides(cube, degree, limit)?;
    Ok(crate::CheckReport::new(lhs, rhs))
}
