//! Corner convolutions: the composite function pairing a 0-corner function
//! against the remaining 2^d - 1 entries of a cube, its dual-side analogue,
//! and the Fourier identity connecting them.
//!
//! Primal, for a punctured cube F' and base point x:
//!
//!   K̇(F')(x) = E_{r ∈ D₀P^{d,l}(G)} ∏_{ω≠0} C^{|ω|} f_ω(x + r_ω),
//!
//! a mean over cubes vanishing at the 0-corner. The dual convolution takes
//! transforms, sums instead of averaging, and runs over D₀P^{d,d-l-1}(Ĝ).
//! For 0 ≤ l ≤ d-1 the two are exchanged by the transform, with the argument
//! reflected on the transform side:
//!
//!   dft(K̇(F'))(-χ) = K̇(F̂')(χ).
//!
//! The reflection is forced by the mean/sum normalization: both sides pair
//! to ⟨F⟩_{d,l} against f₀, and expanding the left pairing through the
//! one-dimensional Parseval identity lands on the transform at -χ.

use crate::cube_space::{CubeSpace, IndexArith};
use crate::error::{Error, Result};
use crate::fourier::dft;
use crate::function::{FunctionCube, GroupFunction};
use crate::group::GroupSpec;
use crate::inner::Side;
use num_complex::Complex64;
use rand::Rng;

/// A cube of functions with the 0-corner slot removed: entries at the
/// 2^d - 1 vertices ω ≠ 0, all over one group.
#[derive(Debug, Clone)]
pub struct PuncturedCube {
    spec: GroupSpec,
    d: usize,
    entries: Vec<GroupFunction>,
}

impl PuncturedCube {
    pub fn new(spec: GroupSpec, d: usize, entries: Vec<GroupFunction>) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadInput {
                reason: "a punctured cube needs dimension at least 1".into(),
            });
        }
        let expect = (1usize << d) - 1;
        if entries.len() != expect {
            return Err(Error::DimensionMismatch { left: expect, right: entries.len() });
        }
        for f in &entries {
            if *f.spec() != spec {
                return Err(Error::SpecMismatch {
                    left: spec.to_string(),
                    right: f.spec().to_string(),
                });
            }
        }
        Ok(PuncturedCube { spec, d, entries })
    }

    /// Drop the 0-corner entry of a full cube.
    pub fn from_cube(cube: &FunctionCube) -> Result<Self> {
        PuncturedCube::new(
            cube.spec().clone(),
            cube.dim(),
            cube.entries()[1..].to_vec(),
        )
    }

    pub fn random_gaussian<R: Rng + ?Sized>(spec: GroupSpec, d: usize, rng: &mut R) -> Self {
        let entries =
            (0..(1usize << d) - 1).map(|_| GroupFunction::random_gaussian(spec.clone(), rng)).collect();
        PuncturedCube { spec, d, entries }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Entry at vertex index v, 1 ≤ v < 2^d.
    pub fn entry(&self, v: usize) -> &GroupFunction {
        assert!(v >= 1 && v < 1 << self.d, "vertex {v} outside punctured cube");
        &self.entries[v - 1]
    }

    pub fn entries(&self) -> &[GroupFunction] {
        &self.entries
    }

    /// Entrywise transform.
    pub fn dft(&self) -> PuncturedCube {
        PuncturedCube {
            spec: self.spec.dual(),
            d: self.d,
            entries: self.entries.iter().map(dft).collect(),
        }
    }
}

/// The corner convolution at primal degree `degree`. The primal side averages
/// over D₀P^{d,degree}(G); the dual side expects transform entries and sums
/// over D₀P^{d,d-degree-1}(Ĝ).
pub fn corner_convolution(
    fp: &PuncturedCube,
    degree: i64,
    side: Side,
    limit: u64,
) -> Result<GroupFunction> {
    let space_degree = match side {
        Side::Primal => degree,
        Side::Dual => fp.dim() as i64 - degree - 1,
    };
    if space_degree < -1 {
        return Err(Error::InvalidDegree { degree });
    }
    let spec = fp.spec().clone();
    let space = CubeSpace::new(spec.clone(), fp.dim(), space_degree)?;
    let members = space.enumerate_vanishing(0, limit)?;
    let count = members.len();
    let arith = IndexArith::new(&spec);
    let card = spec.cardinality() as usize;
    let nv = 1usize << fp.dim();
    let tables: Vec<&[Complex64]> = fp.entries.iter().map(|f| f.values()).collect();
    let mut acc = vec![Complex64::new(0.0, 0.0); card];
    for r in members {
        let shifts: Vec<u64> = (1..nv)
            .map(|v| spec.index_of(r.value(v)).expect("member coordinates lie in the group"))
            .collect();
        for (xi, slot) in acc.iter_mut().enumerate() {
            let mut term = Complex64::new(1.0, 0.0);
            for v in 1..nv {
                let z = tables[v - 1][arith.add(xi as u64, shifts[v - 1]) as usize];
                term *= if (v as u32).count_ones() % 2 == 1 { z.conj() } else { z };
            }
            *slot += term;
        }
    }
    if matches!(side, Side::Primal) {
        for slot in &mut acc {
            *slot /= count as f64;
        }
    }
    GroupFunction::new(spec, acc)
}

/// E_x f₀(x)·K̇(F')(x), which recovers the full inner product ⟨F⟩_{d,degree}
/// for degree ≥ 0.
pub fn corner_pairing(
    f0: &GroupFunction,
    fp: &PuncturedCube,
    degree: i64,
    limit: u64,
) -> Result<Complex64> {
    if f0.spec() != fp.spec() {
        return Err(Error::SpecMismatch {
            left: f0.spec().to_string(),
            right: fp.spec().to_string(),
        });
    }
    let kernel = corner_convolution(fp, degree, Side::Primal, limit)?;
    Ok(f0.mul(&kernel)?.mean())
}

/// Outcome of the transform identity check: both full tables plus the
/// largest per-character residual.
#[derive(Debug, Clone)]
pub struct ConvolutionCheck {
    /// dft(K̇(F')) read at the reflected character.
    pub lhs: GroupFunction,
    /// Dual convolution of the transformed entries.
    pub rhs: GroupFunction,
    /// max_χ |lhs(χ) - rhs(χ)| / max(1, max_χ |lhs(χ)|)
    pub residual: f64,
}

/// Checks dft(K̇(F'))(-χ) = K̇(F̂')(χ) across every character.
/// Valid for 0 ≤ degree ≤ d-1; outside that range the two averaging spaces
/// no longer split against the constant cubes and the identity fails.
pub fn convolution_fourier_check(
    fp: &PuncturedCube,
    degree: i64,
    limit: u64,
) -> Result<ConvolutionCheck> {
    if degree < 0 || degree >= fp.dim() as i64 {
        return Err(Error::InvalidDegree { degree });
    }
    let primal = corner_convolution(fp, degree, Side::Primal, limit)?;
    let transform = dft(&primal);
    let dual_spec = fp.spec().dual();
    let reflected: Vec<Complex64> = (0..dual_spec.cardinality())
        .map(|i| {
            let chi = dual_spec.element(i).expect("index below |G|");
            let neg = dual_spec.neg(&chi).expect("same spec");
            transform.value(&neg).expect("complete table")
        })
        .collect();
    let lhs = GroupFunction::new(dual_spec, reflected)?;
    let rhs = corner_convolution(&fp.dft(), degree, Side::Dual, limit)?;
    let scale = lhs.values().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let residual = lhs
        .values()
        .iter()
        .zip(rhs.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale;
    Ok(ConvolutionCheck { lhs, rhs, residual })
}

/// The eight-slot degenerate cubic average along arithmetic progressions:
///
///   E_{x,a} f₁(x)·conj(f₂f₃f₄)(x+a)·(f₅f₆f₇)(x+2a)·conj(f₈)(x+3a).
pub fn degenerate_cubic_average(fs: &[GroupFunction]) -> Result<Complex64> {
    if fs.len() != 8 {
        return Err(Error::DimensionMismatch { left: 8, right: fs.len() });
    }
    let spec = fs[0].spec().clone();
    for f in fs {
        if *f.spec() != spec {
            return Err(Error::SpecMismatch {
                left: spec.to_string(),
                right: f.spec().to_string(),
            });
        }
    }
    let arith = IndexArith::new(&spec);
    let card = spec.cardinality();
    let mut acc = Complex64::new(0.0, 0.0);
    for xi in 0..card {
        for ai in 0..card {
            let i1 = xi;
            let i2 = arith.add(xi, ai);
            let i3 = arith.add(i2, ai);
            let i4 = arith.add(i3, ai);
            let term = fs[0].value_at_index(i1)
                * (fs[1].value_at_index(i2)
                    * fs[2].value_at_index(i2)
                    * fs[3].value_at_index(i2))
                .conj()
                * fs[4].value_at_index(i3)
                * fs[5].value_at_index(i3)
                * fs[6].value_at_index(i3)
                * fs[7].value_at_index(i4).conj();
            acc += term;
        }
    }
    Ok(acc / (card as f64 * card as f64))
}

/// The diagonal case: every slot the same function. Conjugation symmetry of
/// the progression pairs (x,a) with (x+3a,-a), so the value is always real.
pub fn degenerate_cubic_diagonal(f: &GroupFunction) -> Complex64 {
    let fs = vec![f.clone(); 8];
    degenerate_cubic_average(&fs).expect("eight matching slots")
}

/// Result of the randomized non-definiteness search.
#[derive(Debug, Clone, Copy)]
pub struct CubicProbe {
    /// Most negative real part seen across the trials.
    pub min_real: f64,
    /// Trial index that attained it.
    pub trial: usize,
    /// Largest |imaginary part| seen, as a sanity bound (should be ~0).
    pub max_imag: f64,
}

/// Randomized search for a witness that the diagonal degenerate cubic
/// average takes negative values, hence fails positive definiteness. A
/// negative `min_real` is the expected outcome, not a guarantee.
pub fn degenerate_cubic_probe<R: Rng + ?Sized>(
    spec: &GroupSpec,
    trials: usize,
    rng: &mut R,
) -> CubicProbe {
    let mut probe = CubicProbe { min_real: f64::INFINITY, trial: 0, max_imag: 0.0 };
    for t in 0..trials.max(1) {
        let f = GroupFunction::random_gaussian(spec.clone(), rng);
        let value = degenerate_cubic_diagonal(&f);
        if value.re < probe.min_real {
            probe.min_real = value.re;
            probe.trial = t;
        }
        probe.max_imag = probe.max_imag.max(value.im.abs());
    }
    probe
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{IntLattice, Signature};
    use crate::poisson::{lattice_cube_space, signed_mean, EnumerationMode};
    use crate::DEFAULT_ENUM_LIMIT as LIM;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_ones_convolution_is_constant_one() {
        let spec: GroupSpec = "4".parse().unwrap();
        for (d, degree) in [(2usize, 1i64), (3, 1), (3, 2)] {
            let one = GroupFunction::constant(spec.clone(), Complex64::new(1.0, 0.0));
            let fp =
                PuncturedCube::new(spec.clone(), d, vec![one; (1 << d) - 1]).unwrap();
            let k = corner_convolution(&fp, degree, Side::Primal, LIM).unwrap();
            for v in k.values() {
                assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn square_convolution_matches_two_parameter_average() {
        let spec: GroupSpec = "5".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let fp = PuncturedCube::random_gaussian(spec.clone(), 2, &mut rng);
        let k = corner_convolution(&fp, 1, Side::Primal, LIM).unwrap();
        // Vertex order: 01 before 10 before 11; sides h1 along the first
        // axis, h2 along the second.
        for x in spec.elements() {
            let mut expect = Complex64::new(0.0, 0.0);
            for h1 in spec.elements() {
                for h2 in spec.elements() {
                    let x01 = spec.add(&x, &h2).unwrap();
                    let x10 = spec.add(&x, &h1).unwrap();
                    let x11 = spec.add(&x10, &h2).unwrap();
                    expect += fp.entry(1).value(&x01).unwrap().conj()
                        * fp.entry(2).value(&x10).unwrap().conj()
                        * fp.entry(3).value(&x11).unwrap();
                }
            }
            expect /= 25.0;
            assert!((k.value(&x).unwrap() - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn pairing_recovers_inner_product() {
        let spec: GroupSpec = "4".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for degree in [1i64, 2] {
            let cube = FunctionCube::random_gaussian(spec.clone(), 3, &mut rng);
            let fp = PuncturedCube::from_cube(&cube).unwrap();
            let paired = corner_pairing(cube.entry(0), &fp, degree, LIM).unwrap();
            let direct = crate::inner::inner_product_primal(&cube, degree, LIM).unwrap();
            assert!((paired - direct).norm() < 1e-10, "degree {degree}");
        }
    }

    #[test]
    fn transform_identity_small_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for (group, d, degree) in
            [("4", 2usize, 0i64), ("4", 2, 1), ("5", 2, 1), ("3", 3, 1), ("3", 3, 2), ("4", 1, 0)]
        {
            let spec: GroupSpec = group.parse().unwrap();
            let fp = PuncturedCube::random_gaussian(spec, d, &mut rng);
            let check = convolution_fourier_check(&fp, degree, LIM).unwrap();
            assert!(
                check.residual < 1e-9,
                "group {group} d {d} l {degree}: residual {}",
                check.residual
            );
        }
    }

    #[test]
    fn transform_identity_all_ones() {
        let spec: GroupSpec = "3".parse().unwrap();
        let one = GroupFunction::constant(spec.clone(), Complex64::new(1.0, 0.0));
        let fp = PuncturedCube::new(spec.clone(), 2, vec![one; 3]).unwrap();
        let check = convolution_fourier_check(&fp, 1, LIM).unwrap();
        assert!(check.residual < 1e-12);
        let indicator = GroupFunction::indicator(spec.clone(), &spec.zero()).unwrap();
        for (a, b) in check.rhs.values().iter().zip(indicator.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn degree_bounds_are_enforced() {
        let spec: GroupSpec = "3".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let fp = PuncturedCube::random_gaussian(spec, 2, &mut rng);
        assert!(matches!(
            convolution_fourier_check(&fp, 2, LIM),
            Err(Error::InvalidDegree { .. })
        ));
        assert!(matches!(
            convolution_fourier_check(&fp, -1, LIM),
            Err(Error::InvalidDegree { .. })
        ));
    }

    #[test]
    fn degenerate_cubic_is_real_on_the_diagonal() {
        let spec: GroupSpec = "5".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..5 {
            let f = GroupFunction::random_gaussian(spec.clone(), &mut rng);
            let v = degenerate_cubic_diagonal(&f);
            assert!(v.im.abs() < 1e-12, "imaginary part {}", v.im);
        }
    }

    #[test]
    fn degenerate_cubic_agrees_with_subgroup_average() {
        // The progression tuple (x, x+a, x+a, x+a, x+2a, x+2a, x+2a, x+3a)
        // is the solution set of six relations; the signed mean over that
        // subgroup must equal the direct two-parameter average.
        let spec: GroupSpec = "5".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let fs: Vec<GroupFunction> =
            (0..8).map(|_| GroupFunction::random_gaussian(spec.clone(), &mut rng)).collect();
        let rows: Vec<Vec<i64>> = vec![
            vec![1, -2, 0, 0, 1, 0, 0, 0],
            vec![0, 1, 0, 0, -2, 0, 0, 1],
            vec![0, 1, -1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, -1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, -1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, -1, 0],
        ];
        let lat = IntLattice::new(8, rows).unwrap();
        let h = lattice_cube_space(&lat, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        assert_eq!(h.len(), 25);
        let s = Signature::new(vec![0, 1, 1, 1, 0, 0, 0, 1]).unwrap();
        let via_subgroup = signed_mean(&h, &fs, &s, None).unwrap();
        let direct = degenerate_cubic_average(&fs).unwrap();
        assert!((via_subgroup - direct).norm() < 1e-12);
    }

    #[test]
    fn probe_is_deterministic() {
        let spec: GroupSpec = "5".parse().unwrap();
        let mut rng1 = ChaCha8Rng::seed_from_u64(47);
        let mut rng2 = ChaCha8Rng::seed_from_u64(47);
        let a = degenerate_cubic_probe(&spec, 20, &mut rng1);
        let b = degenerate_cubic_probe(&spec, 20, &mut rng2);
        assert_eq!(a.min_real, b.min_real);
        assert_eq!(a.trial, b.trial);
        assert!(a.max_imag < 1e-9);
    }
}
