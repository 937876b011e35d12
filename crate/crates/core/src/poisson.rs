//! Subgroups of G^k cut out by integer lattices, signed dual subgroups in
//! Ĝ^k, and the signed Poisson summation formula, plain and affine:
//!
//!   E_{x ∈ H+t} ∏_j C^{s_j} f_j(x_j)
//!     = Σ_{χ ∈ H^{⊥s}} ∏_j C^{s_j} f̂_j(χ_j) · χ_j((-1)^{s_j} t_j).
//!
//! H^{⊥s} is the signed dual: tuples of characters whose sign-twisted product
//! is trivial on H. For H = P^Λ(G) with unit Smith pivots it is again
//! lattice-defined, by the signed orthogonal lattice of Λ.

use crate::error::{Error, Result};
use crate::fourier::dft;
use crate::function::GroupFunction;
use crate::group::{GroupElement, GroupSpec};
use crate::lattice::{IntLattice, Signature};
use num_complex::Complex64;

/// How to enumerate a lattice-defined subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Free-variable parametrization through the kernel basis; requires unit
    /// Smith pivots.
    Parametrized,
    /// Filter all of G^k by the defining relations.
    Explicit,
}

/// A subgroup of G^k, held as a sorted list of coordinate tuples. Subgroups
/// cut out by a lattice remember it, which unlocks the lattice route for
/// their signed duals.
#[derive(Debug, Clone)]
pub struct Subgroup {
    spec: GroupSpec,
    k: usize,
    elements: Vec<Vec<GroupElement>>,
    lattice: Option<IntLattice>,
}

impl Subgroup {
    fn from_members(
        spec: GroupSpec,
        k: usize,
        mut elements: Vec<Vec<GroupElement>>,
        lattice: Option<IntLattice>,
    ) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { spec, k, elements, lattice }
    }

    /// A subgroup given by an explicit element list. Verifies the group
    /// axioms: the zero tuple, negation closure, and addition closure
    /// (addition is spot-checked on a fixed pseudorandom schedule above 2000
    /// elements, where the full quadratic check stops being reasonable).
    pub fn explicit(spec: GroupSpec, k: usize, elements: Vec<Vec<GroupElement>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadInput { reason: "subgroup arity must be at least 1".into() });
        }
        for x in &elements {
            if x.len() != k {
                return Err(Error::DimensionMismatch { left: k, right: x.len() });
            }
            for coord in x {
                if !spec.contains(coord) {
                    return Err(Error::ElementMismatch {
                        expected: spec.to_string(),
                        got: coord.to_string(),
                    });
                }
            }
        }
        let sub = Subgroup::from_members(spec, k, elements, None);
        sub.verify_closure()?;
        Ok(sub)
    }

    fn verify_closure(&self) -> Result<()> {
        let zero: Vec<GroupElement> = vec![self.spec.zero(); self.k];
        if !self.contains(&zero) {
            return Err(Error::NotASubgroup { reason: "missing the zero tuple".into() });
        }
        let neg = |x: &Vec<GroupElement>| -> Result<Vec<GroupElement>> {
            x.iter().map(|c| self.spec.neg(c)).collect()
        };
        let add = |x: &Vec<GroupElement>, y: &Vec<GroupElement>| -> Result<Vec<GroupElement>> {
            x.iter().zip(y).map(|(a, b)| self.spec.add(a, b)).collect()
        };
        for x in &self.elements {
            if !self.contains(&neg(x)?) {
                return Err(Error::NotASubgroup {
                    reason: "not closed under negation".into(),
                });
            }
        }
        let n = self.elements.len();
        if n <= 2000 {
            for x in &self.elements {
                for y in &self.elements {
                    if !self.contains(&add(x, y)?) {
                        return Err(Error::NotASubgroup {
                            reason: "not closed under addition".into(),
                        });
                    }
                }
            }
        } else {
            let mut state = 0x9E3779B97F4A7C15u64;
            for _ in 0..4096 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let i = (state >> 33) as usize % n;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % n;
                if !self.contains(&add(&self.elements[i], &self.elements[j])?) {
                    return Err(Error::NotASubgroup {
                        reason: "not closed under addition".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<GroupElement>] {
        &self.elements
    }

    pub fn contains(&self, x: &[GroupElement]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(x)).is_ok()
    }

    pub fn defining_lattice(&self) -> Option<&IntLattice> {
        self.lattice.as_ref()
    }

    /// Set-level equality.
    pub fn same_subgroup(&self, other: &Subgroup) -> bool {
        self.spec == other.spec && self.k == other.k && self.elements == other.elements
    }
}

/// P^Λ(G) = {x ∈ G^k : Σ_j v_j x_j = 0 for every generator v of Λ}.
pub fn lattice_cube_space(
    lat: &IntLattice,
    spec: &GroupSpec,
    mode: EnumerationMode,
    limit: u64,
) -> Result<Subgroup> {
    let k = lat.k();
    let card = spec.cardinality() as u128;
    match mode {
        EnumerationMode::Parametrized => {
            let snf = lat.smith();
            if !snf.unit_pivots() {
                return Err(Error::NonUnitPivots { pivots: snf.pivot_strings() });
            }
            let basis = crate::lattice::kernel_basis(lat.generators(), k)?;
            let free = basis.len();
            let count = card.checked_pow(free as u32).unwrap_or(u128::MAX);
            if count > limit as u128 {
                return Err(Error::EnumerationLimit { required: count, limit });
            }
            let mut elements = Vec::with_capacity(count as usize);
            let mut digits = vec![0u64; free];
            loop {
                let gens: Vec<GroupElement> =
                    digits.iter().map(|&d| spec.element(d).expect("digit below |G|")).collect();
                let mut x: Vec<GroupElement> = vec![spec.zero(); k];
                for (w, g) in basis.iter().zip(&gens) {
                    for j in 0..k {
                        if w[j] != 0 {
                            x[j] = spec.add(&x[j], &spec.scalar_mul(w[j], g)?)?;
                        }
                    }
                }
                elements.push(x);
                let mut pos = free;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < spec.cardinality() {
                        break;
                    }
                    digits[pos] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
            Ok(Subgroup::from_members(spec.clone(), k, elements, Some(lat.clone())))
        }
        EnumerationMode::Explicit => {
            let total = card.checked_pow(k as u32).unwrap_or(u128::MAX);
            if total > limit as u128 {
                return Err(Error::EnumerationLimit { required: total, limit });
            }
            let points: Vec<GroupElement> = spec.elements().collect();
            let mut elements = Vec::new();
            let mut digits = vec![0usize; k];
            loop {
                let x: Vec<GroupElement> = digits.iter().map(|&d| points[d].clone()).collect();
                let mut ok = true;
                for row in lat.generators() {
                    let mut acc = spec.zero();
                    for j in 0..k {
                        if row[j] != 0 {
                            acc = spec.add(&acc, &spec.scalar_mul(row[j], &x[j])?)?;
                        }
                    }
                    if acc != spec.zero() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    elements.push(x);
                }
                let mut pos = k;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < points.len() {
                        break;
                    }
                    digits[pos] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
            Ok(Subgroup::from_members(spec.clone(), k, elements, Some(lat.clone())))
        }
    }
}

/// The cube space P^{d,l}(G) embedded as a subgroup of G^{2^d}, cut out by
/// the boundary-relation lattice.
pub fn cube_space_subgroup(
    spec: &GroupSpec,
    d: usize,
    degree: i64,
    limit: u64,
) -> Result<Subgroup> {
    let lat = crate::lattice::gray_lattice(d, degree)?;
    lattice_cube_space(&lat, spec, EnumerationMode::Parametrized, limit)
}

/// Signed dual subgroup H^{⊥s} = {(χ_j) : ∏_j C^{s_j} χ_j(x_j) = 1 ∀x ∈ H}.
/// Lattice-defined H with unit pivots goes through the signed orthogonal
/// lattice; anything else is found by exhaustive scan of Ĝ^k.
pub fn signed_dual_subgroup(h: &Subgroup, s: &Signature, limit: u64) -> Result<Subgroup> {
    if s.len() != h.k() {
        return Err(Error::DimensionMismatch { left: h.k(), right: s.len() });
    }
    if let Some(lat) = h.defining_lattice() {
        if lat.unit_pivots() {
            let orth = lat.signed_orthogonal(s)?;
            return lattice_cube_space(&orth, &h.spec().dual(), EnumerationMode::Parametrized, limit);
        }
    }
    let spec = h.spec().dual();
    let k = h.k();
    let card = spec.cardinality() as u128;
    let total = card.checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::EnumerationLimit { required: total, limit });
    }
    let l = spec.exponent() as i128;
    let points: Vec<GroupElement> = spec.elements().collect();
    let mut elements = Vec::new();
    let mut digits = vec![0usize; k];
    loop {
        let chi: Vec<GroupElement> = digits.iter().map(|&d| points[d].clone()).collect();
        let trivial_on_h = h.elements().iter().try_fold(true, |ok, x| -> Result<bool> {
            if !ok {
                return Ok(false);
            }
            let mut ticks: i128 = 0;
            for j in 0..k {
                let t = spec.pairing_ticks(&chi[j], &x[j])? as i128;
                ticks += if s.bit(j) == 0 { t } else { -t };
            }
            Ok(ticks.rem_euclid(l) == 0)
        })?;
        if trivial_on_h {
            elements.push(chi);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < points.len() {
                break;
            }
            digits[pos] = 0;
        }
        if digits.iter().all(|&d| d == 0) {
            break;
        }
    }
    Ok(Subgroup::from_members(spec, k, elements, None))
}

/// Mean over H (translated by `t` when given) of the signed product of
/// function values.
pub fn signed_mean(
    h: &Subgroup,
    fns: &[GroupFunction],
    s: &Signature,
    t: Option<&[GroupElement]>,
) -> Result<Complex64> {
    check_tuple(h.spec(), h.k(), fns, s, t)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for x in h.elements() {
        let mut term = Complex64::new(1.0, 0.0);
        for j in 0..h.k() {
            let arg = match t {
                Some(ts) => h.spec().add(&x[j], &ts[j])?,
                None => x[j].clone(),
            };
            let z = fns[j].value(&arg)?;
            term *= if s.bit(j) == 0 { z } else { z.conj() };
        }
        acc += term;
    }
    Ok(acc / h.len() as f64)
}

/// Sum over the signed dual of the signed product of transform values,
/// including the affine phase ∏_j χ_j((-1)^{s_j} t_j) when `t` is given.
pub fn signed_dual_sum(
    dual: &Subgroup,
    fhats: &[GroupFunction],
    s: &Signature,
    t: Option<&[GroupElement]>,
) -> Result<Complex64> {
    if fhats.len() != dual.k() || s.len() != dual.k() {
        return Err(Error::DimensionMismatch { left: dual.k(), right: fhats.len() });
    }
    let spec = dual.spec();
    let mut acc = Complex64::new(0.0, 0.0);
    for chi in dual.elements() {
        let mut term = Complex64::new(1.0, 0.0);
        for j in 0..dual.k() {
            let z = fhats[j].value(&chi[j])?;
            term *= if s.bit(j) == 0 { z } else { z.conj() };
            if let Some(ts) = t {
                let arg = if s.bit(j) == 0 { ts[j].clone() } else { spec.neg(&ts[j])? };
                term *= spec.pairing(&chi[j], &arg)?;
            }
        }
        acc += term;
    }
    Ok(acc)
}

fn check_tuple(
    spec: &GroupSpec,
    k: usize,
    fns: &[GroupFunction],
    s: &Signature,
    t: Option<&[GroupElement]>,
) -> Result<()> {
    if fns.len() != k {
        return Err(Error::DimensionMismatch { left: k, right: fns.len() });
    }
    if s.len() != k {
        return Err(Error::DimensionMismatch { left: k, right: s.len() });
    }
    for f in fns {
        if f.spec() != spec {
            return Err(Error::SpecMismatch {
                left: spec.to_string(),
                right: f.spec().to_string(),
            });
        }
    }
    if let Some(ts) = t {
        if ts.len() != k {
            return Err(Error::DimensionMismatch { left: k, right: ts.len() });
        }
        for coord in ts {
            if !spec.contains(coord) {
                return Err(Error::ElementMismatch {
                    expected: spec.to_string(),
                    got: coord.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Both sides of the summation formula, with the sizes of the two subgroups.
pub fn poisson_check(
    fns: &[GroupFunction],
    h: &Subgroup,
    s: &Signature,
    t: Option<&[GroupElement]>,
    limit: u64,
) -> Result<(crate::CheckReport, usize, usize)> {
    check_tuple(h.spec(), h.k(), fns, s, t)?;
    let lhs = signed_mean(h, fns, s, t)?;
    let dual = signed_dual_subgroup(h, s, limit)?;
    let fhats: Vec<GroupFunction> = fns.iter().map(dft).collect();
    let rhs = signed_dual_sum(&dual, &fhats, s, t)?;
    Ok((crate::CheckReport::new(lhs, rhs), h.len(), dual.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUM_LIMIT as LIM;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lat(k: usize, gens: &[&[i64]]) -> IntLattice {
        IntLattice::new(k, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn tuple(spec: &GroupSpec, coords: &[i64]) -> Vec<GroupElement> {
        coords.iter().map(|&c| spec.make(&[c]).unwrap()).collect()
    }

    #[test]
    fn zero_lattice_gives_full_power() {
        let spec: GroupSpec = "3".parse().unwrap();
        let l = IntLattice::zero(2);
        let sub = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        assert_eq!(sub.len(), 9);
        let brute = lattice_cube_space(&l, &spec, EnumerationMode::Explicit, LIM).unwrap();
        assert!(sub.same_subgroup(&brute));
    }

    #[test]
    fn diagonal_subgroup_of_z5() {
        let spec: GroupSpec = "5".parse().unwrap();
        let l = lat(2, &[&[1, -1]]);
        let sub = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        assert_eq!(sub.len(), 5);
        for x in sub.elements() {
            assert_eq!(x[0], x[1]);
        }
        let brute = lattice_cube_space(&l, &spec, EnumerationMode::Explicit, LIM).unwrap();
        assert!(sub.same_subgroup(&brute));
    }

    #[test]
    fn progression_subgroup_of_z5() {
        let spec: GroupSpec = "5".parse().unwrap();
        let l = lat(3, &[&[1, -2, 1]]);
        let sub = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        assert_eq!(sub.len(), 25);
        assert!(sub.contains(&tuple(&spec, &[0, 1, 2])));
        assert!(sub.contains(&tuple(&spec, &[2, 2, 2])));
        assert!(sub.contains(&tuple(&spec, &[1, 3, 0])));
        assert!(!sub.contains(&tuple(&spec, &[0, 1, 3])));
        let brute = lattice_cube_space(&l, &spec, EnumerationMode::Explicit, LIM).unwrap();
        assert!(sub.same_subgroup(&brute));
    }

    #[test]
    fn non_unit_pivots_are_rejected_in_parametrized_mode() {
        let spec: GroupSpec = "6".parse().unwrap();
        let l = lat(2, &[&[2, 4]]);
        let err = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap_err();
        assert!(matches!(err, Error::NonUnitPivots { .. }));
        // Explicit mode still works: 2x + 4y ≡ 0 mod 6 means x ≡ y mod 3.
        let sub = lattice_cube_space(&l, &spec, EnumerationMode::Explicit, LIM).unwrap();
        assert_eq!(sub.len(), 12);
    }

    #[test]
    fn explicit_constructor_verifies_closure() {
        let spec: GroupSpec = "4".parse().unwrap();
        let good = Subgroup::explicit(
            spec.clone(),
            1,
            vec![tuple(&spec, &[0]), tuple(&spec, &[2])],
        )
        .unwrap();
        assert_eq!(good.len(), 2);
        let bad = Subgroup::explicit(spec.clone(), 1, vec![tuple(&spec, &[0]), tuple(&spec, &[1])]);
        assert!(matches!(bad.unwrap_err(), Error::NotASubgroup { .. }));
        let no_zero = Subgroup::explicit(spec, 1, vec![tuple(&["4".parse().unwrap()][0], &[2])]);
        assert!(matches!(no_zero.unwrap_err(), Error::NotASubgroup { .. }));
    }

    #[test]
    fn dual_of_full_power_is_trivial() {
        let spec: GroupSpec = "4".parse().unwrap();
        let h = lattice_cube_space(&IntLattice::zero(2), &spec, EnumerationMode::Parametrized, LIM)
            .unwrap();
        let dual = signed_dual_subgroup(&h, &Signature::zeros(2), LIM).unwrap();
        assert_eq!(dual.len(), 1);
        assert!(dual.contains(&vec![spec.zero(), spec.zero()]));
    }

    #[test]
    fn dual_of_trivial_subgroup_is_full() {
        let spec: GroupSpec = "3".parse().unwrap();
        let h = Subgroup::explicit(spec.clone(), 2, vec![vec![spec.zero(), spec.zero()]]).unwrap();
        let dual = signed_dual_subgroup(&h, &Signature::zeros(2), LIM).unwrap();
        assert_eq!(dual.len(), 81 / 9);
    }

    #[test]
    fn dual_of_diagonal_is_antidiagonal() {
        let spec: GroupSpec = "5".parse().unwrap();
        let l = lat(2, &[&[1, -1]]);
        let h = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        let dual = signed_dual_subgroup(&h, &Signature::zeros(2), LIM).unwrap();
        assert_eq!(dual.len(), 5);
        for chi in dual.elements() {
            assert_eq!(chi[1], spec.neg(&chi[0]).unwrap());
        }
        // The brute route over an explicit copy of H agrees.
        let h_explicit = Subgroup::explicit(spec, 2, h.elements().to_vec()).unwrap();
        let brute = signed_dual_subgroup(&h_explicit, &Signature::zeros(2), LIM).unwrap();
        assert!(dual.same_subgroup(&brute));
    }

    #[test]
    fn lattice_route_matches_brute_route_on_fixtures() {
        for group in ["3", "4", "5"] {
            let spec: GroupSpec = group.parse().unwrap();
            let fixtures = [
                lat(2, &[&[1, -1]]),
                lat(3, &[&[1, -2, 1]]),
                lat(4, &[&[1, -1, -1, 1]]),
            ];
            let signatures = [
                Signature::zeros(2),
                Signature::zeros(3),
                Signature::new(vec![0, 1, 1, 0]).unwrap(),
            ];
            for (l, s) in fixtures.iter().zip(&signatures) {
                let h = lattice_cube_space(l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
                let fast = signed_dual_subgroup(&h, s, LIM).unwrap();
                let frozen = Subgroup::explicit(spec.clone(), h.k(), h.elements().to_vec()).unwrap();
                let brute = signed_dual_subgroup(&frozen, s, LIM).unwrap();
                assert!(fast.same_subgroup(&brute), "group {group} k {}", l.k());
                // Cardinality duality for unit-pivot lattices.
                let card = spec.cardinality() as u128;
                assert_eq!(
                    h.len() as u128 * fast.len() as u128,
                    card.pow(l.k() as u32),
                    "group {group} k {}",
                    l.k()
                );
            }
        }
    }

    #[test]
    fn sign_flip_maps_plain_dual_to_signed_dual() {
        let spec: GroupSpec = "4".parse().unwrap();
        let l = lat(3, &[&[1, -2, 1]]);
        let h = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        let s = Signature::new(vec![0, 1, 0]).unwrap();
        let plain = signed_dual_subgroup(&h, &Signature::zeros(3), LIM).unwrap();
        let signed = signed_dual_subgroup(&h, &s, LIM).unwrap();
        assert_eq!(plain.len(), signed.len());
        for chi in plain.elements() {
            let flipped: Vec<GroupElement> = (0..3)
                .map(|j| {
                    if s.bit(j) == 0 {
                        chi[j].clone()
                    } else {
                        spec.neg(&chi[j]).unwrap()
                    }
                })
                .collect();
            assert!(signed.contains(&flipped));
        }
    }

    #[test]
    fn cube_space_subgroup_matches_direct_enumeration() {
        for (group, d, degree) in [("3", 2, 1i64), ("3", 2, 0), ("4", 2, 1), ("2", 3, 1)] {
            let spec: GroupSpec = group.parse().unwrap();
            let sub = cube_space_subgroup(&spec, d, degree, LIM).unwrap();
            let space = crate::cube_space::CubeSpace::new(spec.clone(), d, degree).unwrap();
            assert_eq!(sub.len() as u128, space.cardinality());
            for p in space.enumerate(LIM).unwrap() {
                assert!(sub.contains(p.values()), "group {group} d {d} l {degree}");
            }
        }
    }

    #[test]
    fn gray_duality_exhaustive_on_z3() {
        let spec: GroupSpec = "3".parse().unwrap();
        for d in 1..=2usize {
            for degree in -1..=(d as i64) {
                let h = cube_space_subgroup(&spec, d, degree, LIM).unwrap();
                let s = Signature::vertex_parity(d);
                let dual = signed_dual_subgroup(&h, &s, LIM).unwrap();
                let expect =
                    cube_space_subgroup(&spec.dual(), d, d as i64 - degree - 1, LIM).unwrap();
                assert!(dual.same_subgroup(&expect), "d {d} degree {degree}");
            }
        }
    }

    #[test]
    fn all_ones_summation_is_exact() {
        let spec: GroupSpec = "5".parse().unwrap();
        let l = lat(3, &[&[1, -2, 1]]);
        let h = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        let one = GroupFunction::constant(spec.clone(), Complex64::new(1.0, 0.0));
        let fns = vec![one.clone(), one.clone(), one];
        let (report, hs, ds) = poisson_check(&fns, &h, &Signature::zeros(3), None, LIM).unwrap();
        assert!((report.lhs - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((report.rhs - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(hs, 25);
        assert_eq!(ds, 5);
    }

    #[test]
    fn progression_summation_matches_spectral_formula() {
        let spec: GroupSpec = "5".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let fns: Vec<GroupFunction> =
            (0..3).map(|_| GroupFunction::random_gaussian(spec.clone(), &mut rng)).collect();
        let l = lat(3, &[&[1, -2, 1]]);
        let h = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        let (report, _, _) = poisson_check(&fns, &h, &Signature::zeros(3), None, LIM).unwrap();
        assert!(report.residual < 1e-9, "residual {}", report.residual);
        // rhs = Σ_r f̂₁(r) f̂₂(-2r) f̂₃(r)
        let hats: Vec<GroupFunction> = fns.iter().map(dft).collect();
        let mut expect = Complex64::new(0.0, 0.0);
        for r in 0..5i64 {
            expect += hats[0].value(&spec.make(&[r]).unwrap()).unwrap()
                * hats[1].value(&spec.make(&[-2 * r]).unwrap()).unwrap()
                * hats[2].value(&spec.make(&[r]).unwrap()).unwrap();
        }
        assert!((report.rhs - expect).norm() < 1e-12);
    }

    #[test]
    fn affine_summation_matches() {
        let spec: GroupSpec = "7".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let l = lat(4, &[&[1, -1, -1, 1]]);
        let s = Signature::new(vec![0, 1, 1, 0]).unwrap();
        let h = lattice_cube_space(&l, &spec, EnumerationMode::Parametrized, LIM).unwrap();
        for _ in 0..5 {
            let fns: Vec<GroupFunction> =
                (0..4).map(|_| GroupFunction::random_gaussian(spec.clone(), &mut rng)).collect();
            let t: Vec<GroupElement> = (0..4).map(|_| spec.sample(&mut rng)).collect();
            let (report, _, _) = poisson_check(&fns, &h, &s, Some(&t), LIM).unwrap();
            assert!(report.residual < 1e-9, "residual {}", report.residual);
        }
    }

    #[test]
    fn cube_parity_summation_reproduces_isometry() {
        let spec: GroupSpec = "3".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let d = 2usize;
        let cube = crate::function::FunctionCube::random_gaussian(spec.clone(), d, &mut rng);
        let h = cube_space_subgroup(&spec, d, 1, LIM).unwrap();
        let s = Signature::vertex_parity(d);
        let (report, _, _) = poisson_check(cube.entries(), &h, &s, None, LIM).unwrap();
        let (lhs, rhs) = crate::fourier::parseval_sides(&cube, 1, LIM).unwrap();
        assert!((report.lhs - lhs).norm() < 1e-12);
        assert!((report.rhs - rhs).norm() < 1e-10);
        assert!(report.residual < 1e-9);
    }
}
