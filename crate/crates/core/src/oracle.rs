//! Brute-force reference implementations, deliberately sharing nothing with
//! the structured code paths beyond group arithmetic and the pairing. Each
//! one filters or sums over a full product space directly from the defining
//! conditions, so a structured result can be certified against it on small
//! instances.

use crate::cube::CubePoint;
use crate::error::{Error, Result};
use crate::function::FunctionCube;
use crate::group::{GroupElement, GroupSpec};
use crate::lattice::Signature;
use crate::poisson::Subgroup;
use num_complex::Complex64;

/// Default ceiling on the number of tuples a brute enumeration may test.
pub const BRUTE_LIMIT: u64 = 100_000_000;

/// Every assignment of group elements to the 2^d cube vertices, in
/// mixed-radix order over vertex slots.
fn all_assignments(spec: &GroupSpec, slots: usize) -> impl Iterator<Item = Vec<GroupElement>> {
    let points: Vec<GroupElement> = spec.elements().collect();
    let card = points.len();
    let total = (card as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    (0..total).map(move |mut idx| {
        let mut tuple = vec![points[0].clone(); slots];
        for slot in (0..slots).rev() {
            tuple[slot] = points[(idx % card as u128) as usize].clone();
            idx /= card as u128;
        }
        tuple
    })
}

/// Direct test of the defining conditions: every boundary sum
/// Σ_{τ⊆B} (-1)^{|τ|} x_{ω'∪τ} over every axis set B of size degree+1
/// vanishes. Written against the raw definition, independent of the corner
/// machinery.
fn satisfies_all_boundaries(
    spec: &GroupSpec,
    d: usize,
    degree: i64,
    values: &[GroupElement],
) -> Result<bool> {
    let nv = 1usize << d;
    let size = degree + 1;
    if size > d as i64 {
        return Ok(true);
    }
    for bmask in 0..nv {
        if bmask.count_ones() as i64 != size {
            continue;
        }
        let comask = !bmask & (nv - 1);
        let mut omega = 0usize;
        loop {
            let mut acc = spec.zero();
            let mut tau = bmask;
            loop {
                let term = &values[omega | tau];
                acc = if (tau as u32).count_ones() % 2 == 0 {
                    spec.add(&acc, term)?
                } else {
                    spec.sub(&acc, term)?
                };
                if tau == 0 {
                    break;
                }
                tau = (tau - 1) & bmask;
            }
            if acc != spec.zero() {
                return Ok(false);
            }
            omega = omega.wrapping_sub(comask) & comask;
            if omega == 0 {
                break;
            }
        }
    }
    Ok(true)
}

/// All members of P^{d,degree}(G) by exhaustive filter over G^{2^d}.
pub fn brute_cube_space(
    spec: &GroupSpec,
    d: usize,
    degree: i64,
    limit: u64,
) -> Result<Vec<CubePoint>> {
    if degree < -1 {
        return Err(Error::InvalidDegree { degree });
    }
    let nv = 1usize << d;
    let total = (spec.cardinality() as u128).checked_pow(nv as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::EnumerationLimit { required: total, limit });
    }
    let mut members = Vec::new();
    for tuple in all_assignments(spec, nv) {
        if satisfies_all_boundaries(spec, d, degree, &tuple)? {
            members.push(CubePoint::new(spec.clone(), d, tuple)?);
        }
    }
    Ok(members)
}

/// Mean of the signed vertex product over the brute-enumerated space.
pub fn brute_inner_product(cube: &FunctionCube, degree: i64, limit: u64) -> Result<Complex64> {
    let members = brute_cube_space(cube.spec(), cube.dim(), degree, limit)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in &members {
        let mut term = Complex64::new(1.0, 0.0);
        for v in 0..1usize << cube.dim() {
            let z = cube.entry(v).value(p.value(v))?;
            term *= if v.count_ones() % 2 == 1 { z.conj() } else { z };
        }
        acc += term;
    }
    Ok(acc / members.len() as f64)
}

/// The signed dual subgroup by exhaustive scan of Ĝ^k: keep the character
/// tuples whose sign-twisted pairing sum is a multiple of the group exponent
/// against every element of H. Exact integer arithmetic throughout.
pub fn brute_signed_dual(h: &Subgroup, s: &Signature, limit: u64) -> Result<Subgroup> {
    if s.len() != h.k() {
        return Err(Error::DimensionMismatch { left: h.k(), right: s.len() });
    }
    let dual = h.spec().dual();
    let total = (dual.cardinality() as u128).checked_pow(h.k() as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::EnumerationLimit { required: total, limit });
    }
    let exponent = dual.exponent() as i128;
    let mut kept = Vec::new();
    for chi in all_assignments(&dual, h.k()) {
        let mut trivial = true;
        for x in h.elements() {
            let mut ticks: i128 = 0;
            for j in 0..h.k() {
                let t = dual.pairing_ticks(&chi[j], &x[j])? as i128;
                ticks += if s.bit(j) == 0 { t } else { -t };
            }
            if ticks.rem_euclid(exponent) != 0 {
                trivial = false;
                break;
            }
        }
        if trivial {
            kept.push(chi);
        }
    }
    Subgroup::explicit(dual, h.k(), kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube_space::CubeSpace;
    use crate::lattice::IntLattice;
    use crate::poisson::{lattice_cube_space, signed_dual_subgroup, EnumerationMode};
    use crate::DEFAULT_ENUM_LIMIT as LIM;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn brute_square_space_over_z2_has_eight_points() {
        let spec: GroupSpec = "2".parse().unwrap();
        let members = brute_cube_space(&spec, 2, 1, LIM).unwrap();
        assert_eq!(members.len(), 8);
    }

    #[test]
    fn brute_diagonal_over_z3() {
        let spec: GroupSpec = "3".parse().unwrap();
        let members = brute_cube_space(&spec, 1, 0, LIM).unwrap();
        assert_eq!(members.len(), 3);
        for p in &members {
            assert_eq!(p.value(0), p.value(1));
        }
    }

    #[test]
    fn brute_degree_minus_one_is_only_zero() {
        let spec: GroupSpec = "3".parse().unwrap();
        let members = brute_cube_space(&spec, 2, -1, LIM).unwrap();
        assert_eq!(members.len(), 1);
        assert!(members[0].is_zero());
    }

    #[test]
    fn brute_space_matches_corner_enumeration() {
        for (group, d) in [("2", 3usize), ("3", 2), ("4", 2), ("2x2", 2)] {
            let spec: GroupSpec = group.parse().unwrap();
            for degree in -1..=(d as i64 + 1) {
                let brute: HashSet<CubePoint> =
                    brute_cube_space(&spec, d, degree, LIM).unwrap().into_iter().collect();
                let space = CubeSpace::new(spec.clone(), d, degree).unwrap();
                let structured: HashSet<CubePoint> =
                    space.enumerate(LIM).unwrap().collect();
                assert_eq!(brute, structured, "group {group} d {d} degree {degree}");
                assert_eq!(brute.len() as u128, space.cardinality());
            }
        }
    }

    #[test]
    fn brute_inner_product_matches_structured() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for (group, d, degree) in
            [("5", 1usize, 0i64), ("3", 2, 1), ("2", 3, 1), ("3", 2, 2), ("3", 2, 3)]
        {
            let spec: GroupSpec = group.parse().unwrap();
            let cube = FunctionCube::random_gaussian(spec, d, &mut rng);
            let brute = brute_inner_product(&cube, degree, LIM).unwrap();
            let structured = crate::inner::inner_product_primal(&cube, degree, LIM).unwrap();
            assert!(
                (brute - structured).norm() < 1e-10,
                "group {group} d {d} degree {degree}"
            );
        }
    }

    #[test]
    fn brute_dual_of_trivial_subgroup_is_everything() {
        let spec: GroupSpec = "3".parse().unwrap();
        let h = Subgroup::explicit(spec.clone(), 2, vec![vec![spec.zero(), spec.zero()]]).unwrap();
        let dual = brute_signed_dual(&h, &Signature::zeros(2), LIM).unwrap();
        assert_eq!(dual.len(), 9);
    }

    #[test]
    fn brute_dual_of_full_power_is_trivial() {
        let spec: GroupSpec = "3".parse().unwrap();
        let h = lattice_cube_space(&IntLattice::zero(2), &spec, EnumerationMode::Explicit, LIM)
            .unwrap();
        let dual = brute_signed_dual(&h, &Signature::zeros(2), LIM).unwrap();
        assert_eq!(dual.len(), 1);
    }

    #[test]
    fn brute_dual_of_diagonal_is_antidiagonal() {
        let spec: GroupSpec = "3".parse().unwrap();
        let l = IntLattice::new(2, vec![vec![1, -1]]).unwrap();
        let h = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        let dual = brute_signed_dual(&h, &Signature::zeros(2), LIM).unwrap();
        assert_eq!(dual.len(), 3);
        for chi in dual.elements() {
            assert_eq!(chi[1], spec.neg(&chi[0]).unwrap());
        }
    }

    #[test]
    fn brute_dual_matches_structured_dual() {
        let spec: GroupSpec = "4".parse().unwrap();
        let l = IntLattice::new(3, vec![vec![1, -2, 1]]).unwrap();
        let h = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        for s in [Signature::zeros(3), Signature::new(vec![0, 1, 0]).unwrap()] {
            let brute = brute_signed_dual(&h, &s, LIM).unwrap();
            let structured = signed_dual_subgroup(&h, &s, LIM).unwrap();
            assert!(brute.same_subgroup(&structured));
        }
    }

    #[test]
    fn limit_is_respected() {
        let spec: GroupSpec = "5".parse().unwrap();
        let err = brute_cube_space(&spec, 3, 1, 100).unwrap_err();
        assert!(matches!(err, Error::EnumerationLimit { required: 390625, .. }));
    }
}
