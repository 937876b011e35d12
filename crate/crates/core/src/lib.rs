//! Uniformity norms and higher-order Fourier duality on finite abelian groups.
//!
//! The library works with a group G = ∏ Z/nⱼ given by its factor orders, the
//! dual group of characters (represented by the same residue tuples), and
//! configurations indexed by the vertices of the discrete cube {0,1}^d:
//!
//! * [`group`]: elements, characters, and the bicharacter pairing
//! * [`cube`]: cube points, face restriction, boundary operators
//! * [`cube_space`]: degree-filtered cube spaces P^{d,l}(G) and their corners
//! * [`function`]: complex-valued functions on G and cubes of them
//! * [`inner`]: 2^d-ary inner products, U^{d,l} uniformity norms
//! * [`fourier`]: normalized DFT and the Parseval-type isometry check
//! * [`lattice`]: integer lattices, Smith normal form, signed orthogonality
//! * [`poisson`]: subgroups of G^k, signed dual subgroups, Poisson summation
//! * [`convolution`]: corner convolutions and their Fourier identities
//! * [`oracle`]: brute-force reference implementations used for cross-checks

pub mod convolution;
pub mod cube;
pub mod cube_space;
pub mod error;
pub mod exec;
pub mod fourier;
pub mod function;
pub mod group;
pub mod inner;
pub mod lattice;
pub mod oracle;
pub mod poisson;

pub use error::Error;

/// Relative tolerance for identity checks on quantities of order one.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor below which differences are considered zero regardless of scale.
pub const ABS_TOL: f64 = 1e-12;
/// Default cap on the number of points any enumeration is allowed to produce.
pub const DEFAULT_ENUM_LIMIT: u64 = 10_000_000;

/// Residual of an identity `lhs = rhs`, normalized so that quantities of
/// order one are compared relatively and tiny quantities absolutely.
pub fn residual(lhs: num_complex::Complex64, rhs: num_complex::Complex64) -> f64 {
    (lhs - rhs).norm() / 1f64.max(lhs.norm())
}

/// True when `lhs` and `rhs` agree within the library-wide tolerances.
pub fn within_tol(lhs: num_complex::Complex64, rhs: num_complex::Complex64) -> bool {
    let diff = (lhs - rhs).norm();
    diff <= ABS_TOL || diff <= REL_TOL * 1f64.max(lhs.norm())
}

/// Two sides of a checked identity together with their normalized residual.
#[derive(Debug, Clone, Copy)]
pub struct CheckReport {
    pub lhs: num_complex::Complex64,
    pub rhs: num_complex::Complex64,
    pub residual: f64,
}

impl CheckReport {
    pub fn new(lhs: num_complex::Complex64, rhs: num_complex::Complex64) -> Self {
        CheckReport { lhs, rhs, residual: residual(lhs, rhs) }
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.residual < tolerance
    }
}
