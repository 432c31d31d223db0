//! Coin operators and single-particle coin states.
//!
//! Chirality order is `(L, R)` for one particle and `(L, R, D, U)` for the
//! four-dimensional coins. When a four-dimensional coin describes two
//! particles on a line the slots are the tensor pairs `(LL, LR, RL, RR)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise tolerance of the unitarity check.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Tolerance on the squared norm of coin states.
pub const NORM_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `sqrt(2 + sqrt 2) / 2`, the large component of the Hadamard eigenvectors.
pub fn chi_major() -> f64 {
    (2.0 + std::f64::consts::SQRT_2).sqrt() / 2.0
}

/// `sqrt(2 - sqrt 2) / 2`, the small component of the Hadamard eigenvectors.
pub fn chi_minor() -> f64 {
    (2.0 - std::f64::consts::SQRT_2).sqrt() / 2.0
}

/// A 2x2 or 4x4 unitary acting on chirality space, stored row-major.
#[derive(Clone, PartialEq)]
pub struct CoinMatrix {
    dim: usize,
    entries: [Complex64; 16],
}

impl CoinMatrix {
    /// Builds a coin from row-major entries, rejecting non-unitary input.
    pub fn new(dim: usize, entries: &[Complex64]) -> Result<Self> {
        let coin = Self::from_entries_unchecked(dim, entries)?;
        let residual = coin.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary(residual));
        }
        Ok(coin)
    }

    /// Same as [`CoinMatrix::new`] for real matrices.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(dim, &c)
    }

    fn from_entries_unchecked(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::InvalidDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let mut buf = [ZERO; 16];
        buf[..dim * dim].copy_from_slice(entries);
        Ok(Self { dim, entries: buf })
    }

    /// The Hadamard coin `(1/sqrt 2) [[1, 1], [1, -1]]`.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(2, &[h, h, h, -h]).expect("Hadamard is unitary")
    }

    /// The unfactorized two-dimensional Hadamard-like coin `C_delta`.
    pub fn cdelta() -> Self {
        #[rustfmt::skip]
        let rows = [
             0.5,  0.5,  0.5, 0.5,
             0.5, -0.5, -0.5, 0.5,
            -0.5,  0.5, -0.5, 0.5,
            -0.5, -0.5,  0.5, 0.5,
        ];
        Self::from_real(4, &rows).expect("C_delta is orthogonal")
    }

    /// `H (x) H`, the factorized two-particle Hadamard coin.
    pub fn hadamard_pair() -> Self {
        Self::hadamard().kron(&Self::hadamard()).expect("2x2 (x) 2x2")
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut e = vec![ZERO; dim * dim];
        for i in 0..dim {
            e[i * dim + i] = ONE;
        }
        Self::new(dim, &e)
    }

    /// `diag(phases) * self`: scales row `r` by `phases[r]`. Unit-modulus
    /// phases keep the result unitary.
    pub fn with_row_phases(&self, phases: &[Complex64]) -> Result<Self> {
        if phases.len() != self.dim {
            return Err(Error::EntryCount {
                expected: self.dim,
                got: phases.len(),
            });
        }
        let d = self.dim;
        let mut e = self.entries;
        for r in 0..d {
            for c in 0..d {
                e[r * d + c] *= phases[r];
            }
        }
        Self::new(d, &e[..d * d])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries[..self.dim * self.dim]
    }

    /// Kronecker product of two 2x2 coins, giving a 4x4 coin with slot
    /// index `2 * i + j` for `i` from `self` and `j` from `other`.
    pub fn kron(&self, other: &CoinMatrix) -> Result<Self> {
        if self.dim != 2 || other.dim != 2 {
            return Err(Error::InvalidDimension(self.dim * other.dim));
        }
        let mut e = [ZERO; 16];
        for r1 in 0..2 {
            for c1 in 0..2 {
                for r2 in 0..2 {
                    for c2 in 0..2 {
                        e[(2 * r1 + r2) * 4 + (2 * c1 + c2)] = self.get(r1, c1) * other.get(r2, c2);
                    }
                }
            }
        }
        Self::new(4, &e)
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &CoinMatrix) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidDimension(other.dim));
        }
        let d = self.dim;
        let mut e = [ZERO; 16];
        for r in 0..d {
            for c in 0..d {
                e[r * d + c] = (0..d).map(|k| self.get(r, k) * other.get(k, c)).sum();
            }
        }
        Self::new(d, &e[..d * d])
    }

    pub fn conj_transpose(&self) -> Self {
        let d = self.dim;
        let mut e = [ZERO; 16];
        for r in 0..d {
            for c in 0..d {
                e[c * d + r] = self.get(r, c).conj();
            }
        }
        Self { dim: d, entries: e }
    }

    /// Largest entrywise deviation of `U^dagger U` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0_f64;
        for r in 0..d {
            for c in 0..d {
                let s: Complex64 = (0..d).map(|k| self.get(k, r).conj() * self.get(k, c)).sum();
                let target = if r == c { ONE } else { ZERO };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &CoinMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.entries().iter().all(|z| z.im == 0.0)
    }

    pub fn apply2(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        assert_eq!(self.dim, 2, "apply2 needs a 2x2 coin");
        let e = &self.entries;
        [e[0] * v[0] + e[1] * v[1], e[2] * v[0] + e[3] * v[1]]
    }

    pub fn apply4(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        assert_eq!(self.dim, 4, "apply4 needs a 4x4 coin");
        let rows = self.rows4();
        let mut out = [ZERO; 4];
        for (o, row) in out.iter_mut().zip(rows.iter()) {
            *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
        }
        out
    }

    pub(crate) fn rows4(&self) -> [[Complex64; 4]; 4] {
        assert_eq!(self.dim, 4);
        let e = &self.entries;
        [
            [e[0], e[1], e[2], e[3]],
            [e[4], e[5], e[6], e[7]],
            [e[8], e[9], e[10], e[11]],
            [e[12], e[13], e[14], e[15]],
        ]
    }
}

impl fmt::Debug for CoinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Complex64]> = self.entries().chunks(self.dim).collect();
        f.debug_struct("CoinMatrix").field("dim", &self.dim).field("rows", &rows).finish()
    }
}

/// Normalized single-particle coin state `a|L> + b|R>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinState1 {
    a: Complex64,
    b: Complex64,
}

impl CoinState1 {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let n = a.norm_sqr() + b.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { a, b })
    }

    /// Rescales `(a, b)` to unit norm. Fails only for the zero vector.
    pub fn normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        Ok(Self { a: a / n, b: b / n })
    }

    pub fn left() -> Self {
        Self { a: ONE, b: ZERO }
    }

    pub fn right() -> Self {
        Self { a: ZERO, b: ONE }
    }

    /// `(|L> + i|R>) / sqrt 2`, whose Hadamard walk is mirror symmetric.
    pub fn symmetric() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            a: Complex64::new(h, 0.0),
            b: Complex64::new(0.0, h),
        }
    }

    /// Bloch-sphere parameterization `cos(theta/2)|L> + e^{i phi} sin(theta/2)|R>`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            a: Complex64::new((theta / 2.0).cos(), 0.0),
            b: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn as_array(&self) -> [Complex64; 2] {
        [self.a, self.b]
    }

    /// `|a|^2 - |b|^2 + 2 Re(a conj(b))`, the bias weight of the limiting
    /// single-particle density.
    pub fn bias_weight(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr() + 2.0 * (self.a * self.b.conj()).re
    }
}

/// Coordinates of a coin state in the Hadamard eigenbasis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HadamardCoords {
    h_plus: Complex64,
    h_minus: Complex64,
}

impl HadamardCoords {
    pub fn new(h_plus: Complex64, h_minus: Complex64) -> Result<Self> {
        let n = h_plus.norm_sqr() + h_minus.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { h_plus, h_minus })
    }

    pub fn h_plus(&self) -> Complex64 {
        self.h_plus
    }

    pub fn h_minus(&self) -> Complex64 {
        self.h_minus
    }

    /// `|h+|^2 - |h-|^2`.
    pub fn imbalance(&self) -> f64 {
        self.h_plus.norm_sqr() - self.h_minus.norm_sqr()
    }
}

/// Eigenvectors of the Hadamard coin for eigenvalues `+1` and `-1`.
///
/// `chi+ = (c, s)` and `chi- = (s, -c)` with `c = sqrt(2+sqrt2)/2`,
/// `s = sqrt(2-sqrt2)/2`.
pub fn chi_eigenstates() -> (CoinState1, CoinState1) {
    let (c, s) = (chi_major(), chi_minor());
    (
        CoinState1 {
            a: Complex64::new(c, 0.0),
            b: Complex64::new(s, 0.0),
        },
        CoinState1 {
            a: Complex64::new(s, 0.0),
            b: Complex64::new(-c, 0.0),
        },
    )
}

/// `h+- = <chi+-|state>`.
pub fn to_hadamard_basis(state: &CoinState1) -> HadamardCoords {
    let (c, s) = (chi_major(), chi_minor());
    HadamardCoords {
        h_plus: state.a * c + state.b * s,
        h_minus: state.a * s - state.b * c,
    }
}

pub fn from_hadamard_basis(coords: &HadamardCoords) -> CoinState1 {
    let (c, s) = (chi_major(), chi_minor());
    CoinState1 {
        a: coords.h_plus * c + coords.h_minus * s,
        b: coords.h_plus * s - coords.h_minus * c,
    }
}
