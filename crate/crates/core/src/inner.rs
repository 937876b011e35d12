//! 2^d-ary inner products over cube spaces and the U^{d,l} uniformity norms.
//!
//! The inner product of a function cube F = (f_ω) at degree l is the mean
//! over p ∈ P^{d,l}(G) of the multiplicative derivative
//!
//!   Δ_p F = ∏_ω C^{|ω|} f_ω(p_ω),     C = complex conjugation,
//!
//! odd-weight vertices conjugated. On the dual side the same expression is
//! summed (not averaged) over P^{d,l}(Ĝ). ‖f‖_{U^{d,l}} is the 2^d-th root of
//! the inner product of the constant cube (f, …, f).

use crate::cube::CubePoint;
use crate::cube_space::{CubeSpace, Engine};
use crate::error::{Error, Result};
use crate::exec;
use crate::function::{FunctionCube, GroupFunction};
use crate::group::Character;
use num_complex::Complex64;

/// Which of the two dual evaluation conventions a computation uses: means
/// over spaces on G, sums over spaces on Ĝ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

/// Recursive evaluation strategies for the inner product, both reducing
/// dimension by one along a chosen axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecursionMode {
    /// Average over degree-(l-1) shifts of pointwise products of the two faces.
    FaceProduct,
    /// Average of products of lower-degree inner products over the remainder
    /// space of the corner splitting.
    CornerSplit,
}

/// Multiplicative discrete derivative Δ_p F.
pub fn derivative(cube: &FunctionCube, p: &CubePoint) -> Result<Complex64> {
    if cube.dim() != p.dim() {
        return Err(Error::DimensionMismatch { left: cube.dim(), right: p.dim() });
    }
    if cube.spec() != p.spec() {
        return Err(Error::SpecMismatch {
            left: cube.spec().to_string(),
            right: p.spec().to_string(),
        });
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for v in 0..1usize << cube.dim() {
        let z = cube.entry(v).value(p.value(v))?;
        acc *= if v.count_ones() % 2 == 1 { z.conj() } else { z };
    }
    Ok(acc)
}

/// Mean (primal) or sum (dual) of the derivative over the enumerated space,
/// together with the number of points.
fn direct(cube: &FunctionCube, degree: i64, limit: u64, side: Side) -> Result<(Complex64, u128)> {
    let space = CubeSpace::new(cube.spec().clone(), cube.dim(), degree)?;
    let engine = Engine::new(&space)?;
    engine.guard(limit)?;
    let count = engine.count() as u64;
    let tables: Vec<&[Complex64]> = cube.entries().iter().map(|f| f.values()).collect();
    let nv = 1usize << cube.dim();
    let k = engine.corner_len();
    let total = exec::reduce_sum(
        count,
        || (vec![0u64; k], vec![0u64; nv]),
        |(digits, out), m| {
            engine.fill_digits(m, digits);
            engine.complete(digits, out);
            let mut acc = Complex64::new(1.0, 0.0);
            for (v, table) in tables.iter().enumerate() {
                let z = table[out[v] as usize];
                acc *= if v.count_ones() % 2 == 1 { z.conj() } else { z };
            }
            acc
        },
    );
    let value = match side {
        Side::Primal => total / count as f64,
        Side::Dual => total,
    };
    Ok((value, count as u128))
}

/// ⟨F⟩_{d,l}: arithmetic mean of the derivative over P^{d,l}(G), evaluated by
/// direct enumeration of the corner parameters.
pub fn inner_product_primal(cube: &FunctionCube, degree: i64, limit: u64) -> Result<Complex64> {
    Ok(direct(cube, degree, limit, Side::Primal)?.0)
}

/// Dual-side inner product: sum of the derivative over P^{d,l}(Ĝ).
pub fn inner_product_dual(cube: &FunctionCube, degree: i64, limit: u64) -> Result<Complex64> {
    Ok(direct(cube, degree, limit, Side::Dual)?.0)
}

/// Inner product over the degree-`degree` cube space. Full spaces (l ≥ d)
/// factor across independent vertices, which is both faster and numerically
/// tighter than summing the product grid, so that route always wins. Other
/// degrees enumerate directly when the space fits within `limit` and
/// otherwise reduce dimension through the corner splitting. All routes are
/// algebraically identical.
pub fn eval_inner_product(
    cube: &FunctionCube,
    degree: i64,
    side: Side,
    limit: u64,
) -> Result<Complex64> {
    if degree < -1 {
        return Err(Error::InvalidDegree { degree });
    }
    let d = cube.dim();
    if degree >= d as i64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for v in 0..1usize << d {
            let z = match side {
                Side::Primal => cube.entry(v).mean(),
                Side::Dual => cube.entry(v).sum(),
            };
            acc *= if v.count_ones() % 2 == 1 { z.conj() } else { z };
        }
        return Ok(acc);
    }
    let space = CubeSpace::new(cube.spec().clone(), d, degree)?;
    if space.cardinality() <= limit as u128 {
        return Ok(direct(cube, degree, limit, side)?.0);
    }
    if d >= 1 && degree >= 0 {
        let f0 = cube.face(0, 0)?;
        let f1 = cube.face(0, 1)?;
        let lower = CubeSpace::new(cube.spec().clone(), d - 1, degree)?;
        let remainders = lower.enumerate_vanishing(degree - 1, limit)?;
        let count = remainders.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in remainders {
            let a = eval_inner_product(&f0.shift(&r)?, degree - 1, side, limit)?;
            let b = eval_inner_product(&f1.shift(&r)?, degree - 1, side, limit)?;
            acc += a * b.conj();
        }
        return Ok(match side {
            Side::Primal => acc / count as f64,
            Side::Dual => acc,
        });
    }
    Err(Error::EnumerationLimit { required: space.cardinality(), limit })
}

/// Primal inner product through one of the two dimension-reduction formulas,
/// splitting along `axis`. Requires degree ≥ 0 and d ≥ 1.
pub fn inner_product_recursive(
    cube: &FunctionCube,
    degree: i64,
    axis: usize,
    mode: RecursionMode,
    limit: u64,
) -> Result<Complex64> {
    if degree < 0 {
        return Err(Error::InvalidDegree { degree });
    }
    let d = cube.dim();
    if d == 0 {
        return Err(Error::BadInput { reason: "recursive evaluation needs dimension ≥ 1".into() });
    }
    let f0 = cube.face(axis, 0)?;
    let f1 = cube.face(axis, 1)?;
    match mode {
        RecursionMode::FaceProduct => {
            let shifts = CubeSpace::new(cube.spec().clone(), d - 1, degree - 1)?;
            let iter = shifts.enumerate(limit)?;
            let count = iter.len();
            let mut acc = Complex64::new(0.0, 0.0);
            for p in iter {
                let shifted = f1.shift(&p)?;
                let entries = (0..1usize << (d - 1))
                    .map(|v| f0.entry(v).mul(&shifted.entry(v).conj()))
                    .collect::<Result<Vec<GroupFunction>>>()?;
                let product = FunctionCube::new(cube.spec().clone(), d - 1, entries)?;
                acc += inner_product_primal(&product, degree, limit)?;
            }
            Ok(acc / count as f64)
        }
        RecursionMode::CornerSplit => {
            let lower = CubeSpace::new(cube.spec().clone(), d - 1, degree)?;
            let remainders = lower.enumerate_vanishing(degree - 1, limit)?;
            let count = remainders.len();
            let mut acc = Complex64::new(0.0, 0.0);
            for r in remainders {
                let a = inner_product_primal(&f0.shift(&r)?, degree - 1, limit)?;
                let b = inner_product_primal(&f1.shift(&r)?, degree - 1, limit)?;
                acc += a * b.conj();
            }
            Ok(acc / count as f64)
        }
    }
}

/// Asserts a value that must be real and non-negative up to round-off,
/// clamping a tiny negative real part to zero.
fn real_nonneg(z: Complex64) -> Result<f64> {
    let scale = 1f64.max(z.norm());
    if z.im.abs() > crate::REL_TOL * scale {
        return Err(Error::NotRealNonNegative { re: z.re, im: z.im });
    }
    if z.re < -1e-10 * scale {
        return Err(Error::NotRealNonNegative { re: z.re, im: z.im });
    }
    Ok(z.re.max(0.0))
}

/// ‖f‖_{U^{d,l}}: 2^d-th root of the constant-cube inner product.
pub fn uniformity_norm(f: &GroupFunction, d: usize, degree: i64, limit: u64) -> Result<f64> {
    if degree < 0 {
        return Err(Error::InvalidDegree { degree });
    }
    let cube = FunctionCube::constant(f, d);
    let z = eval_inner_product(&cube, degree, Side::Primal, limit)?;
    Ok(real_nonneg(z)?.powf(1.0 / (1u64 << d) as f64))
}

/// Dual-side norm: 2^d-th root of the summed inner product on Ĝ.
pub fn uniformity_norm_dual(fhat: &GroupFunction, d: usize, degree: i64, limit: u64) -> Result<f64> {
    if degree < 0 {
        return Err(Error::InvalidDegree { degree });
    }
    let cube = FunctionCube::constant(fhat, d);
    let z = eval_inner_product(&cube, degree, Side::Dual, limit)?;
    Ok(real_nonneg(z)?.powf(1.0 / (1u64 << d) as f64))
}

/// Primal inner product of a cube of characters, given by the characters
/// themselves. Evaluates to 0 or 1 in exact arithmetic.
pub fn character_cube_product(chis: &CubePoint, degree: i64, limit: u64) -> Result<Complex64> {
    let spec = chis.spec().clone();
    let entries = (0..1usize << chis.dim())
        .map(|v| GroupFunction::character(spec.clone(), chis.value(v)))
        .collect::<Result<Vec<_>>>()?;
    let cube = FunctionCube::new(spec, chis.dim(), entries)?;
    inner_product_primal(&cube, degree, limit)
}

/// Expected value of [`character_cube_product`]: 1 exactly when the exact
/// degree k of the character cube satisfies k + l < d.
pub fn character_orthogonality_prediction(chis: &CubePoint, degree: i64) -> Result<f64> {
    let k = crate::cube_space::exact_degree(chis)?;
    Ok(if k + degree < chis.dim() as i64 { 1.0 } else { 0.0 })
}

/// Convenience: character cube from a vector of characters.
pub fn character_cube(
    spec: crate::group::GroupSpec,
    d: usize,
    chis: Vec<Character>,
) -> Result<CubePoint> {
    CubePoint::new(spec, d, chis)
}
