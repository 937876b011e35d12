//! Degree-filtered cube spaces.
//!
//! For a group G and degree l, the space of degree-l cubes in dimension d is
//! the set of configurations killed by every boundary operator of order l+1:
//!
//!   P^{d,l}(G) = ⋂_{|B| = l+1} ker δ_B
//!
//! l = -1 gives {0}, l = 0 the constant cubes, l = 1 the parallelepipeds, and
//! l ≥ d the full space G^{2^d}. A member is determined by its corner, the
//! values on vertices of weight ≤ l, and every corner assignment extends
//! uniquely: the extension fills vertices by increasing (weight, index),
//! solving the Gray relation on the face spanned by the l+1 smallest set
//! coordinates of the target vertex with all other coordinates frozen.

use crate::cube::{self, CubePoint};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Largest cube dimension accepted; 2^d vertex tables must stay addressable.
const MAX_DIM: usize = 24;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Descriptor of a space P^{d,l}(G): group, cube dimension, and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSpace {
    group: GroupSpec,
    d: usize,
    degree: i64,
}

impl CubeSpace {
    pub fn new(group: GroupSpec, d: usize, degree: i64) -> Result<Self> {
        if degree < -1 {
            return Err(Error::InvalidDegree { degree });
        }
        if d > MAX_DIM {
            return Err(Error::BadInput { reason: format!("cube dimension {d} exceeds {MAX_DIM}") });
        }
        Ok(CubeSpace { group, d, degree })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Degree with the l ≥ d clamp applied: values beyond d all describe the
    /// full space.
    pub fn effective_degree(&self) -> i64 {
        self.degree.min(self.d as i64)
    }

    /// Corner vertices (weight ≤ l) in (weight, index) order.
    pub fn corner_vertices(&self) -> Vec<usize> {
        let eff = self.effective_degree();
        cube::vertices_by_weight(self.d)
            .into_iter()
            .filter(|&v| (cube::weight(v) as i64) <= eff)
            .collect()
    }

    /// Number of free corner values: Σ_{i ≤ l} C(d, i).
    pub fn corner_count(&self) -> usize {
        let eff = self.effective_degree();
        (0..=eff.max(-1))
            .filter(|&i| i >= 0)
            .map(|i| binomial(self.d, i as usize) as usize)
            .sum()
    }

    /// |G|^k where k is the corner count.
    pub fn cardinality(&self) -> u128 {
        (self.group.cardinality() as u128)
            .checked_pow(self.corner_count() as u32)
            .unwrap_or(u128::MAX)
    }

    fn check_point(&self, p: &CubePoint) -> Result<()> {
        if *p.spec() != self.group {
            return Err(Error::SpecMismatch {
                left: self.group.to_string(),
                right: p.spec().to_string(),
            });
        }
        if p.dim() != self.d {
            return Err(Error::DimensionMismatch { left: self.d, right: p.dim() });
        }
        Ok(())
    }

    /// Definitional membership test: every boundary of order l+1 vanishes.
    pub fn is_member(&self, p: &CubePoint) -> Result<bool> {
        self.check_point(p)?;
        let eff = self.effective_degree();
        let face_size = (eff + 1) as u32;
        for mask in 0..1usize << self.d {
            if cube::weight(mask) != face_size {
                continue;
            }
            let axes: Vec<usize> = (0..self.d)
                .filter(|&j| mask & cube::axis_mask(self.d, j).expect("axis in range") != 0)
                .collect();
            if !p.boundary(&axes)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Unique degree-l extension of a corner assignment.
    pub fn corner_complete(&self, corner: &CornerAssignment) -> Result<CubePoint> {
        if corner.space != *self {
            return Err(Error::BadCorner { reason: "assignment built for a different space".into() });
        }
        let engine = Engine::new(self)?;
        let digits: Vec<u64> = corner
            .values
            .iter()
            .map(|el| self.group.index_of(el))
            .collect::<Result<_>>()?;
        let mut out = vec![0u64; 1 << self.d];
        engine.complete(&digits, &mut out);
        let values = out
            .into_iter()
            .map(|idx| self.group.element(idx))
            .collect::<Result<Vec<GroupElement>>>()?;
        CubePoint::new(self.group.clone(), self.d, values)
    }

    /// All members, ordered by corner digits with the last corner vertex
    /// varying fastest. Errors when the cardinality exceeds `limit`.
    pub fn enumerate(&self, limit: u64) -> Result<SpaceIter> {
        let engine = Engine::new(self)?;
        engine.guard(limit)?;
        Ok(SpaceIter::new(engine))
    }

    /// Members that vanish on all vertices of weight ≤ `zero_weight` (the
    /// complement of the degree filtration inside this space). With
    /// `zero_weight = -1` this is the whole space.
    pub fn enumerate_vanishing(&self, zero_weight: i64, limit: u64) -> Result<SpaceIter> {
        let engine = Engine::vanishing(self, zero_weight)?;
        engine.guard(limit)?;
        Ok(SpaceIter::new(engine))
    }

    /// Cardinality of the vanishing subspace enumerated above.
    pub fn vanishing_cardinality(&self, zero_weight: i64) -> u128 {
        let eff = self.effective_degree();
        let free: u32 = ((zero_weight + 1).max(0)..=eff)
            .map(|w| binomial(self.d, w as usize) as u32)
            .sum();
        (self.group.cardinality() as u128).checked_pow(free).unwrap_or(u128::MAX)
    }

    /// Uniformly random member, drawn by sampling the corner.
    pub fn sample_uniform<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Result<CubePoint> {
        let values: Vec<GroupElement> =
            self.corner_vertices().iter().map(|_| self.group.sample(rng)).collect();
        let corner = CornerAssignment::new(self.clone(), values)?;
        self.corner_complete(&corner)
    }

    /// Splits off axis `axis`: the two pieces are the 1-face and the boundary
    /// along the axis, from which the point is recovered by [`recompose`].
    pub fn decompose(&self, p: &CubePoint, axis: usize) -> Result<(CubePoint, CubePoint)> {
        self.check_point(p)?;
        let q1 = p.face(axis, 1)?;
        let q2 = p.boundary_axis(axis)?;
        Ok((q1, q2))
    }

    /// Inverse of [`decompose`]: p(ω',0) = q1+q2 and p(ω',1) = q1.
    pub fn recompose(&self, q1: &CubePoint, q2: &CubePoint, axis: usize) -> Result<CubePoint> {
        if q1.spec() != q2.spec() || q1.dim() != q2.dim() {
            return Err(Error::BadInput { reason: "decomposition halves do not match".into() });
        }
        let d = q1.dim() + 1;
        let bit = cube::axis_mask(d, axis)?;
        let keep = ((1usize << d) - 1) & !bit;
        let low = q1.add(q2)?;
        let values = (0..1usize << d)
            .map(|v| {
                let sub = cube::compress_bits(v, keep);
                if v & bit != 0 { q1.value(sub).clone() } else { low.value(sub).clone() }
            })
            .collect();
        CubePoint::new(q1.spec().clone(), d, values)
    }

    /// Corner splitting along `axis` of a degree-l member (l ≥ 0): returns
    /// (r0, r1, rd) where r0 and r1 are the unique degree-(l-1) completions of
    /// the two faces' low corners and rd is the degree-l remainder vanishing
    /// on weights ≤ l-1. The faces are recovered as r0+rd and r1+rd.
    pub fn corner_split(&self, p: &CubePoint, axis: usize) -> Result<(CubePoint, CubePoint, CubePoint)> {
        if self.degree < 0 {
            return Err(Error::InvalidDegree { degree: self.degree });
        }
        if !self.is_member(p)? {
            return Err(Error::NotAMember { d: self.d, degree: self.degree });
        }
        let l = self.degree;
        let face0 = p.face(axis, 0)?;
        let face1 = p.face(axis, 1)?;
        let lower = CubeSpace::new(self.group.clone(), self.d - 1, l - 1)?;
        let r0 = lower.corner_complete(&CornerAssignment::from_point(lower.clone(), &face0)?)?;
        let r1 = lower.corner_complete(&CornerAssignment::from_point(lower.clone(), &face1)?)?;
        let same = CubeSpace::new(self.group.clone(), self.d - 1, l)?;
        let diff = face0.sub(&r0)?;
        let rd = same.corner_complete(&CornerAssignment::from_point(same.clone(), &diff)?)?;
        Ok((r0, r1, rd))
    }

    /// Inverse of [`corner_split`].
    pub fn corner_join(
        &self,
        r0: &CubePoint,
        r1: &CubePoint,
        rd: &CubePoint,
        axis: usize,
    ) -> Result<CubePoint> {
        let p0 = r0.add(rd)?;
        let p1 = r1.add(rd)?;
        let d = rd.dim() + 1;
        let bit = cube::axis_mask(d, axis)?;
        let keep = ((1usize << d) - 1) & !bit;
        let values = (0..1usize << d)
            .map(|v| {
                let sub = cube::compress_bits(v, keep);
                if v & bit != 0 { p1.value(sub).clone() } else { p0.value(sub).clone() }
            })
            .collect();
        CubePoint::new(rd.spec().clone(), d, values)
    }
}

/// Smallest degree l ≥ -1 whose space contains `p` (at most its dimension).
pub fn exact_degree(p: &CubePoint) -> Result<i64> {
    for l in -1..=(p.dim() as i64) {
        let space = CubeSpace::new(p.spec().clone(), p.dim(), l)?;
        if space.is_member(p)? {
            return Ok(l);
        }
    }
    unreachable!("every point has degree at most its dimension");
}

/// Values on the corner vertices of a cube space, in (weight, index) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerAssignment {
    space: CubeSpace,
    values: Vec<GroupElement>,
}

impl CornerAssignment {
    pub fn new(space: CubeSpace, values: Vec<GroupElement>) -> Result<Self> {
        if values.len() != space.corner_count() {
            return Err(Error::BadCorner {
                reason: format!(
                    "space needs {} corner values, got {}",
                    space.corner_count(),
                    values.len()
                ),
            });
        }
        for v in &values {
            if !space.group.contains(v) {
                return Err(Error::ElementMismatch {
                    expected: space.group.to_string(),
                    got: v.to_string(),
                });
            }
        }
        Ok(CornerAssignment { space, values })
    }

    /// Reads the corner off an existing full configuration.
    pub fn from_point(space: CubeSpace, p: &CubePoint) -> Result<Self> {
        if p.dim() != space.d {
            return Err(Error::DimensionMismatch { left: space.d, right: p.dim() });
        }
        let values = space.corner_vertices().iter().map(|&v| p.value(v).clone()).collect();
        CornerAssignment::new(space, values)
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }
}

/// Index-space group arithmetic used by the completion engine. Small groups
/// get full lookup tables; larger ones decode through mixed-radix strides.
pub(crate) enum IndexArith {
    Table { card: u64, add: Vec<u32>, neg: Vec<u32> },
    Decode { orders: Vec<u64>, strides: Vec<u64> },
}

const TABLE_MAX_CARD: u64 = 2048;

impl IndexArith {
    pub(crate) fn new(spec: &GroupSpec) -> Self {
        let card = spec.cardinality();
        if card <= TABLE_MAX_CARD {
            let n = card as usize;
            let mut add = vec![0u32; n * n];
            let mut neg = vec![0u32; n];
            let elements: Vec<_> = spec.elements().collect();
            for (i, a) in elements.iter().enumerate() {
                neg[i] = spec.index_of(&spec.neg(a).expect("valid")).expect("valid") as u32;
                for (j, b) in elements.iter().enumerate() {
                    let s = spec.add(a, b).expect("valid");
                    add[i * n + j] = spec.index_of(&s).expect("valid") as u32;
                }
            }
            IndexArith::Table { card, add, neg }
        } else {
            IndexArith::Decode { orders: spec.orders().to_vec(), strides: spec.strides() }
        }
    }

    #[inline]
    pub(crate) fn card(&self) -> u64 {
        match self {
            IndexArith::Table { card, .. } => *card,
            IndexArith::Decode { orders, .. } => orders.iter().product(),
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            IndexArith::Table { card, add, .. } => add[(a * card + b) as usize] as u64,
            IndexArith::Decode { orders, strides } => {
                let mut out = 0;
                let (mut ra, mut rb) = (a, b);
                for (&n, &s) in orders.iter().zip(strides) {
                    let da = ra / s;
                    let db = rb / s;
                    ra %= s;
                    rb %= s;
                    out += ((da + db) % n) * s;
                }
                out
            }
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        match self {
            IndexArith::Table { neg, .. } => neg[a as usize] as u64,
            IndexArith::Decode { orders, strides } => {
                let mut out = 0;
                let mut ra = a;
                for (&n, &s) in orders.iter().zip(strides) {
                    let da = ra / s;
                    ra %= s;
                    if da != 0 {
                        out += (n - da) * s;
                    }
                }
                out
            }
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }
}

struct Step {
    target: usize,
    /// (source vertex, negate) pairs: x_target = Σ ± x_source.
    terms: Vec<(usize, bool)>,
}

/// Completion engine: corner layout, fill order, and index arithmetic for one
/// cube space. Enumeration and sampling run through it.
pub(crate) struct Engine {
    space: CubeSpace,
    pub(crate) arith: IndexArith,
    corner: Vec<usize>,
    steps: Vec<Step>,
    /// Positions within the corner that vary during enumeration; the rest
    /// are pinned to zero (used for the vanishing subspaces).
    free: Vec<usize>,
}

impl Engine {
    pub(crate) fn new(space: &CubeSpace) -> Result<Self> {
        Self::build(space, -1)
    }

    /// Engine whose enumeration pins corner vertices of weight ≤ `zero_weight` to 0.
    pub(crate) fn vanishing(space: &CubeSpace, zero_weight: i64) -> Result<Self> {
        Self::build(space, zero_weight)
    }

    fn build(space: &CubeSpace, zero_weight: i64) -> Result<Self> {
        let d = space.d;
        let eff = space.effective_degree();
        let corner = space.corner_vertices();
        let mut steps = Vec::new();
        for v in cube::vertices_by_weight(d) {
            if (cube::weight(v) as i64) <= eff {
                continue;
            }
            // Face spanned by the l+1 smallest set coordinates (= highest set
            // bits), remaining coordinates frozen at v's bits.
            let mut b_mask = 0usize;
            let mut picked = 0i64;
            for bit_pos in (0..d).rev() {
                let bit = 1usize << bit_pos;
                if v & bit != 0 && picked < eff + 1 {
                    b_mask |= bit;
                    picked += 1;
                }
            }
            debug_assert_eq!(picked, eff + 1);
            let frozen = v & !b_mask;
            let mut terms = Vec::new();
            for tau in cube::submasks(b_mask) {
                if tau == b_mask {
                    continue;
                }
                // Solving the Gray relation for the full-τ vertex gives
                // x_v = Σ_{τ ⊊ B} (-1)^{l + |τ|} x_{(frozen, τ)}.
                let negate = (eff + cube::weight(tau) as i64) % 2 != 0;
                terms.push((frozen | tau, negate));
            }
            steps.push(Step { target: v, terms });
        }
        let free = (0..corner.len())
            .filter(|&slot| (cube::weight(corner[slot]) as i64) > zero_weight)
            .collect();
        Ok(Engine { space: space.clone(), arith: IndexArith::new(&space.group), corner, steps, free })
    }

    pub(crate) fn corner_len(&self) -> usize {
        self.corner.len()
    }

    pub(crate) fn count(&self) -> u128 {
        (self.arith.card() as u128)
            .checked_pow(self.free.len() as u32)
            .unwrap_or(u128::MAX)
    }

    pub(crate) fn guard(&self, limit: u64) -> Result<()> {
        let required = self.count();
        if required > limit as u128 {
            return Err(Error::EnumerationLimit { required, limit });
        }
        Ok(())
    }

    /// Writes the corner digits of enumeration index `m` (last free slot
    /// fastest); pinned slots stay zero.
    pub(crate) fn fill_digits(&self, mut m: u64, digits: &mut [u64]) {
        debug_assert_eq!(digits.len(), self.corner.len());
        for d in digits.iter_mut() {
            *d = 0;
        }
        let g = self.arith.card();
        for &slot in self.free.iter().rev() {
            digits[slot] = m % g;
            m /= g;
        }
    }

    /// Extends corner digits to the full vertex table of element indices.
    pub(crate) fn complete(&self, digits: &[u64], out: &mut [u64]) {
        debug_assert_eq!(out.len(), 1 << self.space.d);
        for (slot, &v) in self.corner.iter().enumerate() {
            out[v] = digits[slot];
        }
        for step in &self.steps {
            let mut acc = 0u64;
            for &(src, negate) in &step.terms {
                acc = if negate { self.arith.sub(acc, out[src]) } else { self.arith.add(acc, out[src]) };
            }
            out[step.target] = acc;
        }
    }

    fn point_at(&self, m: u64) -> Result<CubePoint> {
        let mut digits = vec![0u64; self.corner.len()];
        self.fill_digits(m, &mut digits);
        let mut out = vec![0u64; 1 << self.space.d];
        self.complete(&digits, &mut out);
        let values = out
            .into_iter()
            .map(|idx| self.space.group.element(idx))
            .collect::<Result<Vec<GroupElement>>>()?;
        CubePoint::new(self.space.group.clone(), self.space.d, values)
    }
}

/// Streaming enumeration of a cube space (or a vanishing subspace of one).
pub struct SpaceIter {
    engine: Engine,
    next: u64,
    count: u64,
}

impl SpaceIter {
    fn new(engine: Engine) -> Self {
        let count = engine.count() as u64;
        SpaceIter { engine, next: 0, count }
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

impl Iterator for SpaceIter {
    type Item = CubePoint;

    fn next(&mut self) -> Option<CubePoint> {
        if self.next >= self.count {
            return None;
        }
        let p = self.engine.point_at(self.next).expect("engine-produced indices are valid");
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.count - self.next) as usize;
        (rem, Some(rem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(group: &str, d: usize, l: i64) -> CubeSpace {
        CubeSpace::new(group.parse().unwrap(), d, l).unwrap()
    }

    fn point(spec: &GroupSpec, d: usize, raw: &[i64]) -> CubePoint {
        let values = raw
            .chunks(spec.factor_count())
            .map(|chunk| spec.make(chunk).unwrap())
            .collect();
        CubePoint::new(spec.clone(), d, values).unwrap()
    }

    #[test]
    fn corner_counts() {
        assert_eq!(space("5", 3, 1).corner_count(), 4);
        assert_eq!(space("5", 3, 2).corner_count(), 7);
        assert_eq!(space("5", 2, 1).corner_count(), 3);
        assert_eq!(space("5", 2, -1).corner_count(), 0);
        assert_eq!(space("5", 2, 5).corner_count(), 4); // clamped to full space
        assert_eq!(space("5", 0, 0).corner_count(), 1);
        assert_eq!(space("3", 2, 1).cardinality(), 27);
    }

    #[test]
    fn degree_below_minus_one_rejected() {
        let g: GroupSpec = "5".parse().unwrap();
        assert!(matches!(CubeSpace::new(g, 2, -2), Err(Error::InvalidDegree { .. })));
    }

    #[test]
    fn completion_of_square_corner() {
        let sp = space("5", 2, 1);
        let g = sp.group().clone();
        let corner = CornerAssignment::new(
            sp.clone(),
            vec![g.make(&[1]).unwrap(), g.make(&[2]).unwrap(), g.make(&[3]).unwrap()],
        )
        .unwrap();
        let p = sp.corner_complete(&corner).unwrap();
        // x11 = x01 + x10 - x00 = 2 + 3 - 1
        assert_eq!(p, point(&g, 2, &[1, 2, 3, 4]));
    }

    #[test]
    fn completion_of_three_cube_corner() {
        let sp = space("7", 3, 1);
        let g = sp.group().clone();
        let corner = CornerAssignment::new(
            sp.clone(),
            vec![
                g.make(&[0]).unwrap(),
                g.make(&[1]).unwrap(),
                g.make(&[2]).unwrap(),
                g.make(&[4]).unwrap(),
            ],
        )
        .unwrap();
        let p = sp.corner_complete(&corner).unwrap();
        // x011=3, x101=5, x110=6, x111 = 3+5-1 = 0 mod 7
        assert_eq!(p, point(&g, 3, &[0, 1, 2, 3, 4, 5, 6, 0]));
        assert!(sp.is_member(&p).unwrap());
    }

    #[test]
    fn parallelepipeds_have_degree_one() {
        let g: GroupSpec = "7".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..=3usize {
            let sp = CubeSpace::new(g.clone(), d, 1).unwrap();
            for _ in 0..10 {
                let x = g.sample(&mut rng);
                let hs: Vec<_> = (0..d).map(|_| g.sample(&mut rng)).collect();
                let values: Vec<_> = (0..1usize << d)
                    .map(|v| {
                        let mut acc = x.clone();
                        for (j, h) in hs.iter().enumerate() {
                            if v & cube::axis_mask(d, j).unwrap() != 0 {
                                acc = g.add(&acc, h).unwrap();
                            }
                        }
                        acc
                    })
                    .collect();
                let p = CubePoint::new(g.clone(), d, values).unwrap();
                assert!(sp.is_member(&p).unwrap());
            }
        }
    }

    #[test]
    fn membership_edge_degrees() {
        let g: GroupSpec = "5".parse().unwrap();
        let zero = CubePoint::zero(g.clone(), 2);
        assert!(space("5", 2, -1).is_member(&zero).unwrap());
        let constant = point(&g, 2, &[3, 3, 3, 3]);
        assert!(!space("5", 2, -1).is_member(&constant).unwrap());
        assert!(space("5", 2, 0).is_member(&constant).unwrap());
        let generic = point(&g, 2, &[1, 0, 0, 1]);
        assert!(!space("5", 2, 1).is_member(&generic).unwrap());
        assert!(space("5", 2, 2).is_member(&generic).unwrap());
        assert!(space("5", 2, 7).is_member(&generic).unwrap());
    }

    #[test]
    fn exact_degree_examples() {
        let g: GroupSpec = "5".parse().unwrap();
        assert_eq!(exact_degree(&CubePoint::zero(g.clone(), 2)).unwrap(), -1);
        assert_eq!(exact_degree(&point(&g, 2, &[2, 2, 2, 2])).unwrap(), 0);
        // (0, χ, χ, 2χ) is killed by the full boundary but not by either
        // single-axis boundary.
        for chi in 1..5i64 {
            let p = point(&g, 2, &[0, chi, chi, 2 * chi]);
            assert_eq!(exact_degree(&p).unwrap(), 1);
        }
        assert_eq!(exact_degree(&point(&g, 2, &[1, 0, 0, 1])).unwrap(), 2);
    }

    #[test]
    fn enumeration_matches_cardinality_and_membership() {
        for (g, d, l) in [("3", 2, 1i64), ("2x2", 2, 1), ("3", 2, 2), ("4", 1, 0), ("2", 3, 1)] {
            let sp = space(g, d, l);
            let pts: Vec<_> = sp.enumerate(1_000_000).unwrap().collect();
            assert_eq!(pts.len() as u128, sp.cardinality());
            let set: std::collections::HashSet<_> = pts.iter().cloned().collect();
            assert_eq!(set.len(), pts.len());
            for p in &pts {
                assert!(sp.is_member(p).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let sp = space("3", 2, 1);
        match sp.enumerate(10) {
            Err(Error::EnumerationLimit { required, limit }) => {
                assert_eq!(required, 27);
                assert_eq!(limit, 10);
            }
            Err(other) => panic!("expected limit error, got {other:?}"),
            Ok(_) => panic!("expected limit error, got an iterator"),
        }
    }

    #[test]
    fn degenerate_dimension_zero() {
        let minus_one = space("6", 0, -1);
        let pts: Vec<_> = minus_one.enumerate(10).unwrap().collect();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].is_zero());

        let full = space("6", 0, 0);
        let pts: Vec<_> = full.enumerate(10).unwrap().collect();
        assert_eq!(pts.len(), 6);
    }

    #[test]
    fn filtration_is_increasing() {
        for l in -1..=2i64 {
            let lo = space("3", 2, l);
            let hi = space("3", 2, l + 1);
            for p in lo.enumerate(1_000_000).unwrap() {
                assert!(hi.is_member(&p).unwrap());
            }
        }
    }

    #[test]
    fn corner_determines_member() {
        // Two members sharing a corner are equal: completion inverts corner
        // extraction on the nose.
        let sp = space("3", 3, 1);
        for p in sp.enumerate(1_000_000).unwrap() {
            let corner = CornerAssignment::from_point(sp.clone(), &p).unwrap();
            assert_eq!(sp.corner_complete(&corner).unwrap(), p);
        }
    }

    #[test]
    fn splitting_against_lower_degree() {
        // Each member of P^{d,l} splits uniquely as (degree-l' completion of
        // its low corner) + (member vanishing up to weight l').
        for (d, l, lp) in [(2usize, 1i64, 0i64), (3, 1, 0), (2, 2, 1), (3, 2, 1)] {
            let sp = space("3", d, l);
            let lower = space("3", d, lp);
            let vanish_count = sp.vanishing_cardinality(lp);
            assert_eq!(sp.cardinality(), lower.cardinality() * vanish_count);
            for p in sp.enumerate(1_000_000).unwrap() {
                let q = lower
                    .corner_complete(&CornerAssignment::from_point(lower.clone(), &p).unwrap())
                    .unwrap();
                let r = p.sub(&q).unwrap();
                assert!(sp.is_member(&r).unwrap());
                for &v in &lower.corner_vertices() {
                    assert_eq!(*r.value(v), sp.group().zero());
                }
            }
        }
    }

    #[test]
    fn vanishing_enumeration_matches_filter() {
        let sp = space("3", 2, 1);
        let direct: std::collections::HashSet<_> =
            sp.enumerate_vanishing(0, 1_000_000).unwrap().collect();
        assert_eq!(direct.len() as u128, sp.vanishing_cardinality(0));
        let filtered: std::collections::HashSet<_> = sp
            .enumerate(1_000_000)
            .unwrap()
            .filter(|p| *p.value(0) == sp.group().zero())
            .collect();
        assert_eq!(direct, filtered);
    }

    #[test]
    fn decompose_concrete_square() {
        let sp = space("5", 2, 1);
        let g = sp.group().clone();
        let p = point(&g, 2, &[1, 2, 3, 4]);
        let (q1, q2) = sp.decompose(&p, 0).unwrap();
        assert_eq!(q1, point(&g, 1, &[3, 4]));
        assert_eq!(q2, point(&g, 1, &[3, 3])); // (-2, -2) mod 5
        assert_eq!(sp.recompose(&q1, &q2, 0).unwrap(), p);
    }

    #[test]
    fn decompose_recompose_round_trip() {
        for (g, d, l) in [("3", 2, 1i64), ("3", 3, 1), ("2x2", 2, 2)] {
            let sp = space(g, d, l);
            let lower_deg_1 = CubeSpace::new(sp.group().clone(), d - 1, l).unwrap();
            let lower_deg_2 = CubeSpace::new(sp.group().clone(), d - 1, l - 1).unwrap();
            for p in sp.enumerate(1_000_000).unwrap() {
                for axis in 0..d {
                    let (q1, q2) = sp.decompose(&p, axis).unwrap();
                    assert!(lower_deg_1.is_member(&q1).unwrap());
                    assert!(lower_deg_2.is_member(&q2).unwrap());
                    assert_eq!(sp.recompose(&q1, &q2, axis).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn corner_split_round_trip() {
        for (g, d, l) in [("3", 2, 1i64), ("3", 3, 1), ("3", 3, 2), ("2x2", 2, 1), ("3", 2, 2)] {
            let sp = space(g, d, l);
            let lower = CubeSpace::new(sp.group().clone(), d - 1, l - 1).unwrap();
            let same = CubeSpace::new(sp.group().clone(), d - 1, l).unwrap();
            for p in sp.enumerate(1_000_000).unwrap() {
                for axis in 0..d {
                    let (r0, r1, rd) = sp.corner_split(&p, axis).unwrap();
                    assert!(lower.is_member(&r0).unwrap());
                    assert!(lower.is_member(&r1).unwrap());
                    assert!(same.is_member(&rd).unwrap());
                    for &v in &lower.corner_vertices() {
                        assert_eq!(*rd.value(v), sp.group().zero());
                    }
                    assert_eq!(p.face(axis, 0).unwrap(), r0.add(&rd).unwrap());
                    assert_eq!(p.face(axis, 1).unwrap(), r1.add(&rd).unwrap());
                    assert_eq!(sp.corner_join(&r0, &r1, &rd, axis).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn corner_split_flat_faces_leave_no_remainder() {
        let sp = space("5", 2, 1);
        let g = sp.group().clone();
        // Both faces along axis 0 are constants (degree 0 = l-1), so rd = 0.
        let p = point(&g, 2, &[2, 2, 4, 4]);
        let (r0, r1, rd) = sp.corner_split(&p, 0).unwrap();
        assert!(rd.is_zero());
        assert_eq!(r0, point(&g, 1, &[2, 2]));
        assert_eq!(r1, point(&g, 1, &[4, 4]));
    }

    #[test]
    fn sampling_is_deterministic_and_uniform() {
        let sp = space("3", 2, 1);
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            (0..50).map(|_| sp.sample_uniform(&mut rng).unwrap()).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            (0..50).map(|_| sp.sample_uniform(&mut rng).unwrap()).collect()
        };
        assert_eq!(a, b);

        // χ² uniformity over the 27 members, 10^5 draws, α = 0.001.
        use statrs::distribution::{ChiSquared, ContinuousCDF};
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let mut counts = std::collections::HashMap::new();
        let draws = 100_000usize;
        for _ in 0..draws {
            let p = sp.sample_uniform(&mut rng).unwrap();
            *counts.entry(p).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 27);
        let expected = draws as f64 / 27.0;
        let stat: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let critical = ChiSquared::new(26.0).unwrap().inverse_cdf(0.999);
        assert!(stat < critical, "chi-square {stat} exceeds critical {critical}");
    }

    #[test]
    fn index_arith_agrees_with_group_ops() {
        for s in ["2x3x4", "7"] {
            let spec: GroupSpec = s.parse().unwrap();
            let arith = IndexArith::new(&spec);
            let n = spec.cardinality();
            for a in 0..n {
                let ea = spec.element(a).unwrap();
                assert_eq!(
                    arith.neg(a),
                    spec.index_of(&spec.neg(&ea).unwrap()).unwrap()
                );
                for b in 0..n {
                    let eb = spec.element(b).unwrap();
                    let via_arith = arith.add(a, b);
                    let direct = spec.index_of(&spec.add(&ea, &eb).unwrap()).unwrap();
                    assert_eq!(via_arith, direct);
                }
            }
        }
        // Force the decode path with a group too large for tables.
        let big: GroupSpec = "100x100".parse().unwrap();
        let arith = IndexArith::new(&big);
        assert!(matches!(arith, IndexArith::Decode { .. }));
        assert_eq!(arith.add(9_999, 1), spec_index(&big, &[99, 0]));
        assert_eq!(arith.sub(0, 1), spec_index(&big, &[0, 99]));
        assert_eq!(arith.neg(1), spec_index(&big, &[0, 99]));
    }

    fn spec_index(spec: &GroupSpec, raw: &[i64]) -> u64 {
        spec.index_of(&spec.make(raw).unwrap()).unwrap()
    }
}
