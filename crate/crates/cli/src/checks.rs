//! One function per subcommand. Each builds its inputs (file, expression, or
//! seeded random), runs the core computation, and returns reports. The caller
//! owns printing and exit codes.

use gowers_core::convolution::{convolution_fourier_check, PuncturedCube};
use gowers_core::cube_space::CubeSpace;
use gowers_core::fourier::parseval_check;
use gowers_core::function::{FunctionCube, GroupFunction};
use gowers_core::group::{GroupElement, GroupSpec};
use gowers_core::inner::{
    character_cube, character_cube_product, character_orthogonality_prediction,
    eval_inner_product, uniformity_norm, Side,
};
use gowers_core::lattice::{IntLattice, Signature};
use gowers_core::oracle::{brute_cube_space, brute_inner_product};
use gowers_core::poisson::{lattice_cube_space, poisson_check, EnumerationMode};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::path::PathBuf;
use std::time::Instant;

use crate::io;
use crate::report::{pair, RunReport};
use crate::{CommonArgs, Malformed, RandomKind};

pub struct Outcome {
    pub reports: Vec<RunReport>,
    /// Lines printed before the reports (member listings).
    pub listing: Vec<String>,
}

impl Outcome {
    fn single(report: RunReport) -> Self {
        Outcome { reports: vec![report], listing: Vec::new() }
    }
}

fn parse_group(text: &str) -> Result<GroupSpec, Malformed> {
    text.parse().map_err(|e| Malformed(format!("group {text:?}: {e}")))
}

fn base_report(check: &str, common: &CommonArgs, group: &str, d: usize, l: i64) -> RunReport {
    RunReport {
        check: check.into(),
        command: common.command_echo.clone(),
        group: group.into(),
        d,
        l,
        seed: common.seed,
        lhs: [0.0, 0.0],
        rhs: [0.0, 0.0],
        residual: 0.0,
        sizes: Vec::new(),
        tolerance: common.tolerance,
        pass: true,
        wall_ms: 0,
    }
}

fn rng_for(common: &CommonArgs) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(common.seed)
}

pub fn random_function<R: Rng + ?Sized>(
    spec: &GroupSpec,
    kind: RandomKind,
    rng: &mut R,
) -> GroupFunction {
    match kind {
        RandomKind::ComplexGaussian => GroupFunction::random_gaussian(spec.clone(), rng),
        RandomKind::UnitPhases => GroupFunction::random_phases(spec.clone(), rng),
    }
}

fn single_source(
    spec: &GroupSpec,
    phase_poly: &Option<String>,
    function: &Option<PathBuf>,
    random: &Option<RandomKind>,
    common: &CommonArgs,
) -> Result<GroupFunction, Malformed> {
    match (phase_poly, function, random) {
        (Some(expr), None, None) => {
            let coeffs = io::parse_phase_poly(expr)?;
            GroupFunction::phase_polynomial(spec.clone(), &coeffs)
                .map_err(|e| Malformed(format!("{e}")))
        }
        (None, Some(path), None) => {
            let f = io::load_function(path)?;
            if f.spec() != spec {
                return Err(Malformed(format!(
                    "function file is over {}, expected {}",
                    f.spec(),
                    spec
                )));
            }
            Ok(f)
        }
        (None, None, Some(kind)) => Ok(random_function(spec, *kind, &mut rng_for(common))),
        _ => Err(Malformed(
            "exactly one of --phase-poly, --function, --random must be given".into(),
        )),
    }
}

fn cube_source(
    spec: &GroupSpec,
    d: usize,
    cube: &Option<PathBuf>,
    random: &Option<RandomKind>,
    common: &CommonArgs,
) -> Result<FunctionCube, Malformed> {
    match (cube, random) {
        (Some(path), None) => {
            let fns = io::load_function_cube(path, d)?;
            for f in &fns {
                if f.spec() != spec {
                    return Err(Malformed(format!(
                        "cube file entry over {}, expected {}",
                        f.spec(),
                        spec
                    )));
                }
            }
            FunctionCube::new(spec.clone(), d, fns).map_err(|e| Malformed(format!("{e}")))
        }
        (None, Some(kind)) => {
            let mut rng = rng_for(common);
            let entries =
                (0..1usize << d).map(|_| random_function(spec, *kind, &mut rng)).collect();
            FunctionCube::new(spec.clone(), d, entries).map_err(|e| Malformed(format!("{e}")))
        }
        _ => Err(Malformed("exactly one of --cube, --random must be given".into())),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn norm(
    common: &CommonArgs,
    group: &str,
    d: usize,
    l: i64,
    phase_poly: &Option<String>,
    function: &Option<PathBuf>,
    random: &Option<RandomKind>,
    dual: bool,
) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let f = single_source(&spec, phase_poly, function, random, common)?;
    let start = Instant::now();
    let value = if dual {
        gowers_core::inner::uniformity_norm_dual(&f, d, l, common.limit)
    } else {
        uniformity_norm(&f, d, l, common.limit)
    }
    .map_err(|e| Malformed(format!("{e}")))?;
    let mut report = base_report("norm", common, group, d, l);
    report.lhs = [value, 0.0];
    report.rhs = [value, 0.0];
    report.sizes = vec![spec.cardinality()];
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome::single(report))
}

#[allow(clippy::too_many_arguments)]
pub fn inner(
    common: &CommonArgs,
    group: &str,
    d: usize,
    l: i64,
    cube: &Option<PathBuf>,
    random: &Option<RandomKind>,
    dual: bool,
) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let fc = cube_source(&spec, d, cube, random, common)?;
    let side = if dual { Side::Dual } else { Side::Primal };
    let start = Instant::now();
    let value =
        eval_inner_product(&fc, l, side, common.limit).map_err(|e| Malformed(format!("{e}")))?;
    let mut report = base_report("inner", common, group, d, l);
    report.lhs = pair(value);
    report.rhs = pair(value);
    report.sizes = vec![spec.cardinality()];
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome::single(report))
}

pub fn parseval(
    common: &CommonArgs,
    group: &str,
    d: usize,
    l: i64,
    cube: &Option<PathBuf>,
    random: &Option<RandomKind>,
) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let fc = cube_source(&spec, d, cube, random, common)?;
    let start = Instant::now();
    let check = parseval_check(&fc, l, common.limit).map_err(|e| Malformed(format!("{e}")))?;
    let mut report = base_report("parseval", common, group, d, l);
    report.lhs = pair(check.lhs);
    report.rhs = pair(check.rhs);
    report.residual = check.residual;
    report.pass = check.residual < common.tolerance;
    report.sizes = vec![spec.cardinality()];
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome::single(report))
}

pub fn orthogonality(
    common: &CommonArgs,
    group: &str,
    d: usize,
    exhaustive: bool,
    samples: u64,
) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let dual = spec.dual();
    let nv = 1usize << d;
    let card = dual.cardinality();
    let total = (card as u128).checked_pow(nv as u32).unwrap_or(u128::MAX);
    if exhaustive && total > common.limit as u128 {
        return Err(Malformed(format!(
            "{total} character cubes exceed --limit {}",
            common.limit
        )));
    }
    let mut rng = rng_for(common);
    let count = if exhaustive { total as u64 } else { samples };
    let mut reports = Vec::new();
    for i in 0..count {
        let tuple: Vec<GroupElement> = if exhaustive {
            let mut rest = i;
            (0..nv)
                .map(|_| {
                    let el = dual.element(rest % card).expect("index below cardinality");
                    rest /= card;
                    el
                })
                .collect()
        } else {
            (0..nv).map(|_| dual.sample(&mut rng)).collect()
        };
        let start = Instant::now();
        let chis = character_cube(dual.clone(), d, tuple).map_err(|e| Malformed(format!("{e}")))?;
        let mut worst = (0.0f64, -2i64, Complex64::new(0.0, 0.0), 0.0f64);
        for l in -1..=(d as i64) {
            let value = character_cube_product(&chis, l, common.limit)
                .map_err(|e| Malformed(format!("{e}")))?;
            let predicted = character_orthogonality_prediction(&chis, l)
                .map_err(|e| Malformed(format!("{e}")))?;
            let diff = (value - Complex64::new(predicted, 0.0)).norm();
            if diff >= worst.0 {
                worst = (diff, l, value, predicted);
            }
        }
        let mut report = base_report("orthogonality", common, group, d, worst.1);
        report.lhs = pair(worst.2);
        report.rhs = [worst.3, 0.0];
        report.residual = worst.0;
        report.pass = worst.0 < common.tolerance;
        report.sizes = vec![i, d as u64 + 2];
        report.wall_ms = start.elapsed().as_millis() as u64;
        reports.push(report);
    }
    Ok(Outcome { reports, listing: Vec::new() })
}

pub enum LatticeSource {
    File(PathBuf),
    Fixture(String),
}

pub fn fixture_lattice(name: &str) -> Result<(IntLattice, Signature), Malformed> {
    match name {
        "progression" => Ok((
            IntLattice::new(3, vec![vec![1, -2, 1]]).expect("static fixture"),
            Signature::zeros(3),
        )),
        "difference-cube" => Ok((
            IntLattice::new(4, vec![vec![1, -1, -1, 1]]).expect("static fixture"),
            Signature::new(vec![0, 1, 1, 0]).expect("static fixture"),
        )),
        other => Err(Malformed(format!(
            "unknown fixture {other:?}; available: progression, difference-cube"
        ))),
    }
}

pub fn poisson(
    common: &CommonArgs,
    group: &str,
    source: &LatticeSource,
    translate: bool,
    random: RandomKind,
) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let (lattice, signature) = match source {
        LatticeSource::File(path) => io::load_lattice(path)?,
        LatticeSource::Fixture(name) => fixture_lattice(name)?,
    };
    let k = lattice.k();
    let start = Instant::now();
    let mode = if lattice.unit_pivots() {
        EnumerationMode::Parametrized
    } else {
        EnumerationMode::Explicit
    };
    let h = lattice_cube_space(&lattice, &spec, mode, common.limit)
        .map_err(|e| Malformed(format!("{e}")))?;
    let mut rng = rng_for(common);
    let fns: Vec<GroupFunction> =
        (0..k).map(|_| random_function(&spec, random, &mut rng)).collect();
    let t: Vec<GroupElement> = (0..k).map(|_| spec.sample(&mut rng)).collect();
    let translation = if translate { Some(t.as_slice()) } else { None };
    let (check, h_len, dual_len) = poisson_check(&fns, &h, &signature, translation, common.limit)
        .map_err(|e| Malformed(format!("{e}")))?;
    let mut report = base_report("poisson", common, group, k, -1);
    report.lhs = pair(check.lhs);
    report.rhs = pair(check.rhs);
    report.residual = check.residual;
    report.pass = check.residual < common.tolerance;
    report.sizes = vec![h_len as u64, dual_len as u64];
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome::single(report))
}

pub fn convolution(common: &CommonArgs, group: &str, d: usize, l: i64) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let mut rng = rng_for(common);
    let fp = PuncturedCube::random_gaussian(spec.clone(), d, &mut rng);
    let start = Instant::now();
    let check =
        convolution_fourier_check(&fp, l, common.limit).map_err(|e| Malformed(format!("{e}")))?;
    let worst = check
        .lhs
        .values()
        .iter()
        .zip(check.rhs.values())
        .max_by(|(a1, b1), (a2, b2)| {
            let d1 = (*a1 - *b1).norm();
            let d2 = (*a2 - *b2).norm();
            d1.partial_cmp(&d2).expect("residuals are finite")
        })
        .expect("group has at least one character");
    let mut report = base_report("convolution", common, group, d, l);
    report.lhs = pair(*worst.0);
    report.rhs = pair(*worst.1);
    report.residual = check.residual;
    report.pass = check.residual < common.tolerance;
    report.sizes = vec![spec.cardinality()];
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome::single(report))
}

pub fn cubes(
    common: &CommonArgs,
    group: &str,
    d: usize,
    l: i64,
    count_only: bool,
) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let start = Instant::now();
    let space =
        CubeSpace::new(spec.clone(), d, l).map_err(|e| Malformed(format!("{e}")))?;
    let mut listing = Vec::new();
    let count = if count_only {
        space.cardinality()
    } else {
        let iter = space.enumerate(common.limit).map_err(|e| Malformed(format!("{e}")))?;
        let mut n = 0u128;
        for p in iter {
            let rows: Vec<&[u64]> = (0..1usize << d).map(|v| p.value(v).residues()).collect();
            listing.push(serde_json::to_string(&rows).expect("residue lists are plain data"));
            n += 1;
        }
        n
    };
    let mut report = base_report("cubes", common, group, d, l);
    report.lhs = [count as f64, 0.0];
    report.rhs = [count as f64, 0.0];
    report.sizes = vec![count.min(u64::MAX as u128) as u64];
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { reports: vec![report], listing })
}

pub fn oracle(
    common: &CommonArgs,
    group: &str,
    d: usize,
    l: i64,
    with_inner: bool,
) -> Result<Outcome, Malformed> {
    let spec = parse_group(group)?;
    let start = Instant::now();
    let brute: HashSet<_> = brute_cube_space(&spec, d, l, common.limit)
        .map_err(|e| Malformed(format!("{e}")))?
        .into_iter()
        .collect();
    let space = CubeSpace::new(spec.clone(), d, l).map_err(|e| Malformed(format!("{e}")))?;
    let structured: HashSet<_> = space
        .enumerate(common.limit)
        .map_err(|e| Malformed(format!("{e}")))?
        .collect();
    let sets_match = brute == structured;
    let size_match = brute.len() as u128 == space.cardinality();

    let mut report = base_report("oracle", common, group, d, l);
    report.sizes = vec![brute.len() as u64, structured.len() as u64];
    if with_inner {
        let mut rng = rng_for(common);
        let cube = FunctionCube::random_gaussian(spec.clone(), d, &mut rng);
        let direct = eval_inner_product(&cube, l, Side::Primal, common.limit)
            .map_err(|e| Malformed(format!("{e}")))?;
        let brute_value =
            brute_inner_product(&cube, l, common.limit).map_err(|e| Malformed(format!("{e}")))?;
        report.lhs = pair(direct);
        report.rhs = pair(brute_value);
        report.residual = gowers_core::residual(direct, brute_value);
    } else {
        report.lhs = [brute.len() as f64, 0.0];
        report.rhs = [structured.len() as f64, 0.0];
        report.residual = if sets_match { 0.0 } else { 1.0 };
    }
    report.pass = sets_match && size_match && report.residual < common.tolerance;
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome::single(report))
}
