//! Integer lattices in Z^k, Smith normal form over arbitrary-precision
//! integers, and signed orthogonal lattices.
//!
//! A lattice is given by a generating set of row vectors; nothing assumes the
//! rows are independent. Smith normal form U·M·V = D is computed by
//! elementary row/column operations with U, V tracked exactly; their
//! unimodularity is asserted by a determinant computation, and D carries the
//! divisibility chain d₁ | d₂ | …

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sign pattern over an index set of size k; bit 1 marks a conjugated slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    bits: Vec<u8>,
}

impl Signature {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::BadInput { reason: "signature bits must be 0 or 1".into() });
        }
        Ok(Signature { bits })
    }

    pub fn zeros(k: usize) -> Self {
        Signature { bits: vec![0; k] }
    }

    /// s(ω) = |ω| mod 2 over the 2^d cube vertices in index order.
    pub fn vertex_parity(d: usize) -> Self {
        Signature { bits: (0..1usize << d).map(|v| (v.count_ones() % 2) as u8).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, j: usize) -> u8 {
        self.bits[j]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// (-1)^{s_j}
    pub fn sign(&self, j: usize) -> i64 {
        if self.bits[j] == 0 {
            1
        } else {
            -1
        }
    }

    /// Σ_j (-1)^{s_j} v_j w_j
    pub fn twisted_product(&self, v: &[i64], w: &[i64]) -> i128 {
        v.iter()
            .zip(w)
            .enumerate()
            .map(|(j, (&a, &b))| self.sign(j) as i128 * a as i128 * b as i128)
            .sum()
    }
}

/// A sublattice of Z^k described by generating rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    k: usize,
    generators: Vec<Vec<i64>>,
}

impl IntLattice {
    pub fn new(k: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadInput { reason: "ambient dimension must be at least 1".into() });
        }
        for row in &generators {
            if row.len() != k {
                return Err(Error::DimensionMismatch { left: k, right: row.len() });
            }
        }
        Ok(IntLattice { k, generators })
    }

    /// The zero lattice (no generators).
    pub fn zero(k: usize) -> Self {
        IntLattice { k, generators: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn smith(&self) -> SmithForm {
        smith_normal_form(&self.generators, self.k)
    }

    pub fn rank(&self) -> usize {
        self.smith().rank
    }

    /// True when every nonzero Smith pivot is 1.
    pub fn unit_pivots(&self) -> bool {
        self.smith().unit_pivots()
    }

    /// Membership of an integer vector in the lattice.
    pub fn contains(&self, w: &[i64]) -> Result<bool> {
        if w.len() != self.k {
            return Err(Error::DimensionMismatch { left: self.k, right: w.len() });
        }
        let snf = self.smith();
        // w ∈ rowspace(M) over Z  ⟺  (w·V)_i ≡ 0 mod d_i for pivot slots
        // and (w·V)_i = 0 beyond the rank.
        let wv: Vec<BigInt> = (0..self.k)
            .map(|j| (0..self.k).map(|i| BigInt::from(w[i]) * &snf.v[i][j]).sum())
            .collect();
        for (i, entry) in wv.iter().enumerate() {
            if i < snf.rank {
                if !(entry % &snf.pivots[i]).is_zero() {
                    return Ok(false);
                }
            } else if !entry.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Set-level equality of the generated lattices.
    pub fn same_lattice(&self, other: &IntLattice) -> Result<bool> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch { left: self.k, right: other.k });
        }
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The signed orthogonal lattice {w : Σ_j (-1)^{s_j} v_j w_j = 0 ∀v}:
    /// the integer kernel of the sign-twisted generator matrix.
    pub fn signed_orthogonal(&self, s: &Signature) -> Result<IntLattice> {
        if s.len() != self.k {
            return Err(Error::DimensionMismatch { left: self.k, right: s.len() });
        }
        let twisted: Vec<Vec<i64>> = self
            .generators
            .iter()
            .map(|row| (0..self.k).map(|j| s.sign(j) * row[j]).collect())
            .collect();
        let basis = kernel_basis(&twisted, self.k)?;
        IntLattice::new(self.k, basis)
    }
}

/// Smith normal form of an integer matrix, with transforms.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Left unimodular transform, rows×rows.
    pub u: Vec<Vec<BigInt>>,
    /// Diagonalized matrix U·M·V, rows×cols.
    pub d: Vec<Vec<BigInt>>,
    /// Right unimodular transform, cols×cols.
    pub v: Vec<Vec<BigInt>>,
    pub rank: usize,
    /// The nonzero diagonal entries d₁ | d₂ | …, normalized positive.
    pub pivots: Vec<BigInt>,
}

impl SmithForm {
    pub fn unit_pivots(&self) -> bool {
        self.pivots.iter().all(|p| p.is_one())
    }

    pub fn pivot_strings(&self) -> Vec<String> {
        self.pivots.iter().map(|p| p.to_string()).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Floored quotient, so that x - q·p lies in [0, p) for p > 0.
fn div_floor(x: &BigInt, p: &BigInt) -> BigInt {
    let q = x / p;
    if (x - &q * p).is_negative() != p.is_negative() && !(x - &q * p).is_zero() {
        q - 1
    } else {
        q
    }
}

/// Fraction-free determinant (Bareiss). Exact over BigInt.
pub fn det_bareiss(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = mat.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Smith normal form of the matrix whose rows are `rows` (each of length
/// `cols`). An empty row list is the 0×cols matrix. Panics if the internal
/// unimodularity or reconstruction invariants fail; they cannot fail for any
/// input, only for an implementation bug.
pub fn smith_normal_form(rows: &[Vec<i64>], cols: usize) -> SmithForm {
    let m = rows.len();
    let n = cols;
    assert!(rows.iter().all(|r| r.len() == n), "generator rows must have {n} entries");
    let mut a: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u = identity(m);
    let mut v = identity(n);

    let mut t = 0;
    'pivot: while t < m.min(n) {
        // Locate a nonzero entry of minimal magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != t {
            a.swap(pi, t);
            u.swap(pi, t);
        }
        if pj != t {
            for row in &mut a {
                row.swap(pj, t);
            }
            for row in &mut v {
                row.swap(pj, t);
            }
        }
        if a[t][t].is_negative() {
            for x in &mut a[t] {
                *x = -x.clone();
            }
            for x in &mut u[t] {
                *x = -x.clone();
            }
        }

        let mut cleared = true;
        for i in t + 1..m {
            if !a[i][t].is_zero() {
                let q = div_floor(&a[i][t], &a[t][t]);
                for j in 0..n {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                for j in 0..m {
                    let sub = &q * &u[t][j];
                    u[i][j] -= sub;
                }
                if !a[i][t].is_zero() {
                    cleared = false;
                }
            }
        }
        for j in t + 1..n {
            if !a[t][j].is_zero() {
                let q = div_floor(&a[t][j], &a[t][t]);
                for row in &mut a {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                for row in &mut v {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    cleared = false;
                }
            }
        }
        if !cleared {
            continue 'pivot;
        }
        // Divisibility: the pivot must divide the whole trailing block.
        for i in t + 1..m {
            for j in t + 1..n {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    for col in 0..n {
                        let add = a[i][col].clone();
                        a[t][col] += add;
                    }
                    for col in 0..m {
                        let add = u[i][col].clone();
                        u[t][col] += add;
                    }
                    continue 'pivot;
                }
            }
        }
        t += 1;
    }
    let rank = t;
    let pivots: Vec<BigInt> = (0..rank).map(|i| a[i][i].clone()).collect();

    let mb: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let umv = matmul(&matmul(&u, &mb), &v);
    assert_eq!(umv, a, "transform reconstruction U*M*V must equal D");
    assert!(det_bareiss(&u).abs().is_one(), "U must be unimodular");
    assert!(det_bareiss(&v).abs().is_one(), "V must be unimodular");

    SmithForm { rows: m, cols: n, u, d: a, v, rank, pivots }
}

/// A basis of the integer kernel {x ∈ Z^cols : M·x = 0}: the columns of V
/// beyond the rank. The basis is saturated, so its own Smith pivots are units.
pub fn kernel_basis(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>> {
    let snf = smith_normal_form(rows, cols);
    let mut basis = Vec::with_capacity(cols - snf.rank);
    for j in snf.rank..cols {
        let mut vec = Vec::with_capacity(cols);
        for i in 0..cols {
            let entry = snf.v[i][j].to_i64().ok_or_else(|| Error::BadInput {
                reason: format!("kernel basis entry {} exceeds i64", snf.v[i][j]),
            })?;
            vec.push(entry);
        }
        basis.push(vec);
    }
    Ok(basis)
}

/// Generators of the degree-l relation lattice in Z^{2^d}: one boundary
/// functional Σ_{τ⊆B} (-1)^{|τ|} x_{ω'∪τ} for every axis set B of size l+1
/// and every vertex ω' of the complementary face. Cube spaces P^{d,l}(G) are
/// exactly the solution sets of these lattices.
pub fn gray_lattice(d: usize, degree: i64) -> Result<IntLattice> {
    if degree < -1 {
        return Err(Error::InvalidDegree { degree });
    }
    let nv = 1usize << d;
    let size = degree + 1;
    let mut generators = Vec::new();
    if size <= d as i64 {
        for bmask in 0..nv {
            if bmask.count_ones() as i64 != size {
                continue;
            }
            let comask = !bmask & (nv - 1);
            let mut omega = 0usize;
            loop {
                let mut row = vec![0i64; nv];
                let mut tau = bmask;
                loop {
                    row[omega | tau] = if (tau as u32).count_ones() % 2 == 0 { 1 } else { -1 };
                    if tau == 0 {
                        break;
                    }
                    tau = (tau - 1) & bmask;
                }
                generators.push(row);
                omega = omega.wrapping_sub(comask) & comask;
                if omega == 0 {
                    break;
                }
            }
        }
    }
    IntLattice::new(nv, generators)
}
