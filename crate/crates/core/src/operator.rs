//! Complex 2×2 operators on the clock qubit.
//!
//! Every state, Hamiltonian and SLD in this crate lives in the basis
//! `{|0⟩, |1⟩}` of the two clock levels, so a fixed-size 2×2 type carries
//! all of the linear algebra. Eigendecomposition is closed form.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{DensityViolation, Error, Result};

pub type Complex = Complex64;

/// Tolerance for Hermiticity, unit trace and eigenvalue positivity checks.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Frobenius tolerance for spectral reconstruction.
pub const RECON_TOL: f64 = 1e-10;
/// Hermiticity pre-check used by [`Operator2::eig_hermitian`].
pub const EIG_HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalue gap below which the canonical basis is returned.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Builds a complex number, rejecting NaN and infinite components.
pub fn complex(re: f64, im: f64) -> Result<Complex> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex::new(re, im))
    } else {
        Err(Error::NonFinite { re, im })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator2 {
    pub entries: [[Complex; 2]; 2],
}

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

impl Operator2 {
    pub const fn new(entries: [[Complex; 2]; 2]) -> Self {
        Self { entries }
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    /// `σᶻ = |0⟩⟨0| − |1⟩⟨1|`.
    pub const fn sigma_z() -> Self {
        Self::new([[ONE, ZERO], [ZERO, Complex::new(-1.0, 0.0)]])
    }

    /// The rank-one operator `|i⟩⟨j|`.
    pub fn ket_bra(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.entries[i][j] = ONE;
        m
    }

    /// `|u⟩⟨v|` for arbitrary 2-vectors.
    pub fn outer(u: [Complex; 2], v: [Complex; 2]) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.entries[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Self::new([[Complex::new(a, 0.0), ZERO], [ZERO, Complex::new(d, 0.0)]])
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.entries[i][j]
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let a = &self.entries;
        Self::new([[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for z in row.iter_mut() {
                *z *= s;
            }
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex::new(s, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus of `M − M†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let a = &self.entries;
        let off = (a[0][1] - a[1][0].conj()).norm();
        off.max(a[0][0].im.abs()).max(a[1][1].im.abs())
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= HERMITICITY_TOL
    }

    /// Closed-form eigendecomposition of a Hermitian operator.
    ///
    /// Eigenvalues come back in descending order. When they coincide to
    /// within [`DEGENERACY_TOL`] the canonical basis is returned.
    pub fn eig_hermitian(&self) -> Result<SpectralDecomposition> {
        let dev = self.hermiticity_deviation();
        if dev > EIG_HERMITICITY_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        // symmetrize so that b and conj(b) come from the same number
        let b = 0.5 * (self.entries[0][1] + self.entries[1][0].conj());

        let mean = 0.5 * (a + d);
        let half_diff = 0.5 * (a - d);
        let radius = half_diff.hypot(b.norm());
        let eigenvalues = [mean + radius, mean - radius];

        if 2.0 * radius < DEGENERACY_TOL {
            return Ok(SpectralDecomposition {
                eigenvalues,
                eigenvectors: [[ONE, ZERO], [ZERO, ONE]],
            });
        }

        // pick the better-conditioned of the two row equations for λ₊
        let raw = if half_diff >= 0.0 {
            [Complex::new(half_diff + radius, 0.0), b.conj()]
        } else {
            [b, Complex::new(radius - half_diff, 0.0)]
        };
        let norm = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
        let plus = [raw[0] / norm, raw[1] / norm];
        let minus = [-plus[1].conj(), plus[0].conj()];

        Ok(SpectralDecomposition {
            eigenvalues,
            eigenvectors: [plus, minus],
        })
    }

    /// Wraps `self` as a density operator if it is Hermitian, has unit
    /// trace and no eigenvalue below `-HERMITICITY_TOL`.
    pub fn validate_density(self) -> Result<DensityOperator> {
        if !self.is_hermitian() {
            return Err(Error::InvalidDensity(DensityViolation::NotHermitian));
        }
        let spec = self.eig_hermitian()?;
        if spec.eigenvalues[1] < -HERMITICITY_TOL {
            return Err(Error::InvalidDensity(DensityViolation::NegativeEigenvalue));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > HERMITICITY_TOL || tr.im.abs() > HERMITICITY_TOL {
            return Err(Error::InvalidDensity(DensityViolation::TraceNotOne));
        }
        Ok(DensityOperator { op: self })
    }
}

impl Add for Operator2 {
    type Output = Operator2;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] += rhs.entries[i][j];
            }
        }
        out
    }
}

impl Sub for Operator2 {
    type Output = Operator2;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale_real(-1.0)
    }
}

impl Mul for Operator2 {
    type Output = Operator2;
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs)
    }
}

/// A validated density operator. Construct through
/// [`Operator2::validate_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOperator {
    op: Operator2,
}

impl DensityOperator {
    pub fn op(&self) -> &Operator2 {
        &self.op
    }

    pub fn into_inner(self) -> Operator2 {
        self.op
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.op.multiply(&self.op).trace().re
    }
}

/// `ρ = Σⱼ pⱼ |j⟩⟨j|` with `p₀ ≥ p₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: [f64; 2],
    /// `eigenvectors[j]` is the column vector for `eigenvalues[j]`.
    pub eigenvectors: [[Complex; 2]; 2],
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> Operator2 {
        (0..2)
            .map(|j| {
                let v = self.eigenvectors[j];
                Operator2::outer(v, v).scale_real(self.eigenvalues[j])
            })
            .fold(Operator2::zero(), |acc, m| acc + m)
    }

    /// Matrix whose columns are the eigenvectors; maps eigenbasis to
    /// computational basis.
    pub fn basis_change(&self) -> Operator2 {
        let [u, v] = self.eigenvectors;
        Operator2::new([[u[0], v[0]], [u[1], v[1]]])
    }
}
