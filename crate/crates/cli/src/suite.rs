//! The full verification grid as one command: eleven checks in a fixed
//! order, one report each. Numbers, groups, and tolerances match the
//! `acceptance` test target in the core crate; the worst instance of each
//! grid is the one reported.

use gowers_core::convolution::{convolution_fourier_check, degenerate_cubic_probe, PuncturedCube};
use gowers_core::cube_space::CubeSpace;
use gowers_core::fourier::{dft, parseval_check, parseval_sides};
use gowers_core::function::{FunctionCube, GroupFunction};
use gowers_core::group::{GroupElement, GroupSpec};
use gowers_core::inner::{
    character_cube, character_cube_product, character_orthogonality_prediction,
    inner_product_primal, inner_product_recursive, uniformity_norm, uniformity_norm_dual,
    RecursionMode,
};
use gowers_core::lattice::{IntLattice, Signature};
use gowers_core::oracle::{brute_cube_space, brute_signed_dual};
use gowers_core::poisson::{
    cube_space_subgroup, lattice_cube_space, poisson_check, signed_dual_subgroup, EnumerationMode,
};
use gowers_core::residual;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::time::Instant;

use crate::report::{pair, RunReport};
use crate::CommonArgs;

struct Worst {
    residual: f64,
    lhs: Complex64,
    rhs: Complex64,
    group: String,
    d: usize,
    l: i64,
    cases: u64,
    pass: bool,
}

impl Worst {
    fn new() -> Self {
        Worst {
            residual: -1.0,
            lhs: Complex64::new(0.0, 0.0),
            rhs: Complex64::new(0.0, 0.0),
            group: String::new(),
            d: 0,
            l: 0,
            cases: 0,
            pass: true,
        }
    }

    fn case(&mut self, res: f64, lhs: Complex64, rhs: Complex64, group: &str, d: usize, l: i64) {
        self.cases += 1;
        if res > self.residual {
            self.residual = res;
            self.lhs = lhs;
            self.rhs = rhs;
            self.group = group.into();
            self.d = d;
            self.l = l;
        }
    }

    fn fail_if(&mut self, violated: bool) {
        if violated {
            self.pass = false;
        }
    }

    fn into_report(self, check: &str, common: &CommonArgs, tolerance: f64, start: Instant) -> RunReport {
        let pass = self.pass && self.residual < tolerance;
        RunReport {
            check: check.into(),
            command: common.command_echo.clone(),
            group: self.group,
            d: self.d,
            l: self.l,
            seed: common.seed,
            lhs: pair(self.lhs),
            rhs: pair(self.rhs),
            residual: self.residual.max(0.0),
            sizes: vec![self.cases],
            tolerance,
            pass,
            wall_ms: start.elapsed().as_millis() as u64,
        }
    }
}

fn sp(s: &str) -> GroupSpec {
    s.parse().expect("static group literal")
}

const LIM: u64 = gowers_core::DEFAULT_ENUM_LIMIT;

fn parseval_sweep(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    for g in ["4", "5", "6", "2x2"] {
        let spec = sp(g);
        for d in 0..=3usize {
            for l in -1..=(d as i64) {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(common.seed + 100 + d as u64 * 10 + (l + 1) as u64);
                for _ in 0..10 {
                    let cube = FunctionCube::random_gaussian(spec.clone(), d, &mut rng);
                    let report = parseval_check(&cube, l, LIM).expect("grid sizes fit the limit");
                    worst.case(report.residual, report.lhs, report.rhs, g, d, l);
                }
            }
        }
    }
    worst.into_report("parseval sweep", common, 1e-9, start)
}

fn norm_isometry(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    for g in ["5", "2x2"] {
        let spec = sp(g);
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 2);
        for _ in 0..10 {
            let f = GroupFunction::random_gaussian(spec.clone(), &mut rng);
            let lhs = uniformity_norm(&f, 3, 1, LIM).expect("diagonal products are nonnegative");
            let rhs = uniformity_norm_dual(&dft(&f), 3, 1, LIM)
                .expect("diagonal products are nonnegative");
            let res = (lhs - rhs).abs() / lhs.max(1.0);
            worst.case(res, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), g, 3, 1);
        }
    }
    worst.into_report("norm isometry", common, 1e-9, start)
}

fn orthogonality_table(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    for (g, d) in [("3", 2usize), ("2", 3)] {
        let dual = sp(g).dual();
        let chars: Vec<GroupElement> = dual.elements().collect();
        let nv = 1usize << d;
        for idx in 0..chars.len().pow(nv as u32) {
            let mut rest = idx;
            let tuple: Vec<GroupElement> = (0..nv)
                .map(|_| {
                    let el = chars[rest % chars.len()].clone();
                    rest /= chars.len();
                    el
                })
                .collect();
            let cube = character_cube(dual.clone(), d, tuple).expect("tuple built over the dual");
            for l in -1..=(d as i64) {
                let value = character_cube_product(&cube, l, LIM).expect("small spaces");
                let predicted =
                    character_orthogonality_prediction(&cube, l).expect("small spaces");
                let diff = (value - Complex64::new(predicted, 0.0)).norm();
                worst.case(diff, value, Complex64::new(predicted, 0.0), g, d, l);
            }
        }
    }
    worst.into_report("orthogonality table", common, 1e-10, start)
}

fn enumeration_oracle(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    for g in ["2", "3", "4", "2x2"] {
        let spec = sp(g);
        for d in 0..=3usize {
            for l in -1..=(d as i64) {
                let brute: HashSet<_> = brute_cube_space(&spec, d, l, gowers_core::oracle::BRUTE_LIMIT)
                    .expect("desk-scale grids")
                    .into_iter()
                    .collect();
                let space = CubeSpace::new(spec.clone(), d, l).expect("valid degree");
                let structured: HashSet<_> =
                    space.enumerate(LIM).expect("desk-scale grids").collect();
                let ok = brute == structured && brute.len() as u128 == space.cardinality();
                let n = Complex64::new(brute.len() as f64, 0.0);
                worst.case(0.0, n, n, g, d, l);
                worst.fail_if(!ok);
            }
        }
    }
    worst.into_report("enumeration oracle", common, 1e-9, start)
}

fn inequality_battery(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    let combos: Vec<(usize, i64)> =
        (1..=3usize).flat_map(|d| (0..=d as i64).map(move |l| (d, l))).collect();
    let group_for = |d: usize| if d == 3 { sp("3") } else { sp("4") };

    let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 50);
    for &(d, l) in &combos {
        let spec = group_for(d);
        for _ in 0..200 {
            let cube = FunctionCube::random_gaussian(spec.clone(), d, &mut rng);
            let lhs = inner_product_primal(&cube, l, LIM).expect("grid fits").norm();
            let mut bound = 1.0f64;
            for v in 0..1usize << d {
                bound *= uniformity_norm(cube.entry(v), d, l, LIM)
                    .expect("diagonal products are nonnegative");
            }
            let g = if d == 3 { "3" } else { "4" };
            worst.case(0.0, Complex64::new(lhs, 0.0), Complex64::new(bound, 0.0), g, d, l);
            worst.fail_if(lhs > bound + 1e-9 * bound.max(1.0));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 51);
    for i in 0..200usize {
        let (d, l) = combos[i % combos.len()];
        let spec = group_for(d);
        let f0 = GroupFunction::random_gaussian(spec.clone(), &mut rng);
        let f1 = GroupFunction::random_gaussian(spec.clone(), &mut rng);
        let sum = uniformity_norm(&f0.add(&f1).expect("same spec"), d, l, LIM)
            .expect("diagonal products are nonnegative");
        let parts = uniformity_norm(&f0, d, l, LIM).expect("diagonal products are nonnegative")
            + uniformity_norm(&f1, d, l, LIM).expect("diagonal products are nonnegative");
        worst.fail_if(sum > parts + 1e-9 * parts.max(1.0));
        worst.cases += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 52);
    let mono: Vec<(usize, i64)> =
        (2..=3usize).flat_map(|d| (0..d as i64).map(move |l| (d, l))).collect();
    for i in 0..100usize {
        let (d, l) = mono[i % mono.len()];
        let spec = group_for(d);
        let f = GroupFunction::random_gaussian(spec.clone(), &mut rng);
        let big = uniformity_norm(&f, d, l, LIM).expect("diagonal products are nonnegative");
        let small = uniformity_norm(&f, d - 1, l, LIM).expect("diagonal products are nonnegative");
        worst.fail_if(big < small - 1e-9 * big.max(1.0));
        worst.cases += 1;
    }

    worst.residual = 0.0;
    worst.into_report("inequality battery", common, 1e-9, start)
}

fn recursion_agreement(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    let combos: Vec<(usize, i64, usize)> = (1..=3usize)
        .flat_map(|d| (0..=d as i64).flat_map(move |l| (0..d).map(move |axis| (d, l, axis))))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 6);
    for i in 0..50usize {
        let (d, l, axis) = combos[i % combos.len()];
        let g = if d == 3 { "3" } else { "4" };
        let cube = FunctionCube::random_gaussian(sp(g), d, &mut rng);
        let direct = inner_product_primal(&cube, l, LIM).expect("grid fits");
        for mode in [RecursionMode::FaceProduct, RecursionMode::CornerSplit] {
            let rec = inner_product_recursive(&cube, l, axis, mode, LIM).expect("grid fits");
            worst.case(residual(rec, direct), rec, direct, g, d, l);
        }
    }
    worst.into_report("recursion agreement", common, 1e-9, start)
}

fn poisson_summation(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    let fixtures: [(Vec<Vec<i64>>, Vec<u8>); 2] =
        [(vec![vec![1, -2, 1]], vec![0, 0, 0]), (vec![vec![1, -1, -1, 1]], vec![0, 1, 1, 0])];
    for (gens, sbits) in &fixtures {
        let k = sbits.len();
        let lat = IntLattice::new(k, gens.clone()).expect("static fixture");
        let s = Signature::new(sbits.clone()).expect("static fixture");
        for g in ["5", "7"] {
            let spec = sp(g);
            let h = lattice_cube_space(&lat, &spec, EnumerationMode::Parametrized, LIM)
                .expect("unit pivots");
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 7);
            for _ in 0..50 {
                let fns: Vec<GroupFunction> = (0..k)
                    .map(|_| GroupFunction::random_gaussian(spec.clone(), &mut rng))
                    .collect();
                let t: Vec<GroupElement> = (0..k).map(|_| spec.sample(&mut rng)).collect();
                for translation in [None, Some(t.as_slice())] {
                    let (report, _, _) =
                        poisson_check(&fns, &h, &s, translation, LIM).expect("valid tuple");
                    worst.case(report.residual, report.lhs, report.rhs, g, k, -1);
                }
            }
        }
    }

    let spec = sp("4");
    let h = cube_space_subgroup(&spec, 3, 1, LIM).expect("desk-scale");
    let s = Signature::vertex_parity(3);
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 71);
    let fns: Vec<GroupFunction> =
        (0..8).map(|_| GroupFunction::random_gaussian(spec.clone(), &mut rng)).collect();
    let (report, _, _) = poisson_check(&fns, &h, &s, None, LIM).expect("valid tuple");
    let cube = FunctionCube::new(spec, 3, fns).expect("eight entries");
    let (lhs, rhs) = parseval_sides(&cube, 1, LIM).expect("desk-scale");
    let cross = (report.lhs - lhs).norm().max((report.rhs - rhs).norm());
    worst.case(report.residual.max(cross), report.lhs, report.rhs, "4", 8, -1);

    worst.into_report("poisson summation", common, 1e-9, start)
}

fn lattice_duality(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    let fixtures: [(usize, Vec<Vec<i64>>, Vec<u8>); 4] = [
        (2, vec![], vec![0, 0]),
        (2, vec![vec![1, -1]], vec![0, 0]),
        (3, vec![vec![1, -2, 1]], vec![0, 0, 0]),
        (4, vec![vec![1, -1, -1, 1]], vec![0, 1, 1, 0]),
    ];
    for g in ["3", "4", "5"] {
        let spec = sp(g);
        for (k, gens, sbits) in &fixtures {
            let lat = IntLattice::new(*k, gens.clone()).expect("static fixture");
            let s = Signature::new(sbits.clone()).expect("static fixture");
            let h = lattice_cube_space(&lat, &spec, EnumerationMode::Parametrized, LIM)
                .expect("unit pivots");
            let dual = signed_dual_subgroup(&h, &s, LIM).expect("desk-scale");
            let ortho = lat.signed_orthogonal(&s).expect("kernel computable");
            let expected =
                lattice_cube_space(&ortho, &spec.dual(), EnumerationMode::Parametrized, LIM)
                    .expect("kernel lattices have unit pivots");
            let brute = brute_signed_dual(&h, &s, gowers_core::oracle::BRUTE_LIMIT)
                .expect("desk-scale");
            let ok = dual.same_subgroup(&expected)
                && dual.same_subgroup(&brute)
                && h.len() as u128 * dual.len() as u128
                    == (spec.cardinality() as u128).pow(*k as u32);
            let n = Complex64::new(dual.len() as f64, 0.0);
            worst.case(0.0, n, n, g, *k, -1);
            worst.fail_if(!ok);
        }
    }
    worst.into_report("lattice duality", common, 1e-9, start)
}

fn convolution_transform(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let mut worst = Worst::new();
    for (d, l) in [(2usize, 1i64), (3, 1), (3, 2)] {
        let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 9);
        for _ in 0..20 {
            let fp = PuncturedCube::random_gaussian(sp("4"), d, &mut rng);
            let check = convolution_fourier_check(&fp, l, LIM).expect("degree within range");
            let lhs = check.lhs.values()[0];
            let rhs = check.rhs.values()[0];
            worst.case(check.residual, lhs, rhs, "4", d, l);
        }
    }
    worst.into_report("convolution transform", common, 1e-9, start)
}

fn phase_polynomials(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let spec = sp("7");
    let square = GroupFunction::phase_polynomial(spec.clone(), &[0, 0, 1]).expect("cyclic group");
    let cubic =
        GroupFunction::phase_polynomial(spec.clone(), &[0, 0, 0, 1]).expect("cyclic group");
    let mut worst = Worst::new();
    for (f, d, l) in [(&square, 3usize, 1i64), (&cubic, 4, 1), (&square, 4, 2)] {
        let n = uniformity_norm(f, d, l, LIM).expect("phase norms are clean");
        worst.case(
            (n - 1.0).abs(),
            Complex64::new(n, 0.0),
            Complex64::new(1.0, 0.0),
            "7",
            d,
            l,
        );
    }
    worst.into_report("phase polynomial detection", common, 1e-9, start)
}

fn cubic_probe(common: &CommonArgs) -> RunReport {
    let start = Instant::now();
    let spec = sp("5");
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed + 11);
    let probe = degenerate_cubic_probe(&spec, 200, &mut rng);
    let mut rng2 = ChaCha8Rng::seed_from_u64(common.seed + 11);
    let again = degenerate_cubic_probe(&spec, 200, &mut rng2);
    let deterministic =
        probe.min_real.to_bits() == again.min_real.to_bits() && probe.trial == again.trial;
    RunReport {
        check: "degenerate cubic probe".into(),
        command: common.command_echo.clone(),
        group: "5".into(),
        d: 1,
        l: -1,
        seed: common.seed,
        lhs: [probe.min_real, probe.max_imag],
        rhs: [again.min_real, again.max_imag],
        residual: probe.max_imag,
        sizes: vec![200, probe.trial as u64],
        tolerance: 1e-9,
        pass: deterministic && probe.max_imag < 1e-9,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the whole grid in declaration order.
pub fn run(common: &CommonArgs) -> Vec<RunReport> {
    let checks: Vec<fn(&CommonArgs) -> RunReport> = vec![
        parseval_sweep,
        norm_isometry,
        orthogonality_table,
        enumeration_oracle,
        inequality_battery,
        recursion_agreement,
        poisson_summation,
        lattice_duality,
        convolution_transform,
        phase_polynomials,
        cubic_probe,
    ];
    checks.iter().map(|check| check(common)).collect()
}
