//! Momentum-space propagation of the uniform `C_delta` walk in the axial
//! shift model.
//!
//! With `psi(k) = sum_{x,y} e^{i(kx x + ky y)} psi(x, y)` one step acts as
//! `psi(k) -> M(k) psi(k)` with `M(k) = D(e^{-ikx}, e^{ikx}, e^{-iky}, e^{iky}) C_delta`.
//! Momenta live on the periodic grid `k = 2 pi j / N - pi`, `j = 0..N`, on
//! which propagation equals lattice evolution with wrap-around; it is exact
//! for the infinite lattice while the support `[-t, t]` fits in `N` sites.

use std::f64::consts::PI;

use nalgebra::{linalg::Schur, Matrix4};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::coin::CoinMatrix;
use crate::delta::WalkState2D;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

type Mat4 = [[Complex64; 4]; 4];

/// One-step propagator at momentum `(kx, ky)`.
pub fn m_matrix(kx: f64, ky: f64) -> CoinMatrix {
    let phases = [
        Complex64::from_polar(1.0, -kx),
        Complex64::from_polar(1.0, kx),
        Complex64::from_polar(1.0, -ky),
        Complex64::from_polar(1.0, ky),
    ];
    CoinMatrix::cdelta()
        .with_row_phases(&phases)
        .expect("row phases keep the coin unitary")
}

/// Grid momentum `2 pi j / n - pi`.
pub fn grid_momentum(j: usize, n: usize) -> f64 {
    2.0 * PI * j as f64 / n as f64 - PI
}

/// Unit eigenvalues and orthonormal eigenvectors of a propagator, sorted by
/// eigenphase in `(-pi, pi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorEigensystem {
    pub eigenvalues: [Complex64; 4],
    /// `eigenvectors[i]` belongs to `eigenvalues[i]`.
    pub eigenvectors: [[Complex64; 4]; 4],
}

/// Largest strictly-upper entry of the Schur form accepted as diagonal.
const SCHUR_OFF_DIAGONAL_TOL: f64 = 1e-9;

/// Unitary diagonalization of `M(kx, ky)`.
///
/// The complex Schur form of a normal matrix is diagonal and its Schur
/// vectors form an orthonormal eigenbasis, including inside degenerate
/// eigenvalue clusters, so no separate cluster treatment is needed. The
/// vectors are re-orthonormalized to polish rounding.
pub fn eigensystem(kx: f64, ky: f64) -> Result<PropagatorEigensystem> {
    let m = m_matrix(kx, ky);
    let mat = Matrix4::from_fn(|r, c| m.get(r, c));
    let schur = Schur::try_new(mat, 1e-15, 10_000).ok_or(Error::Eigensolver(kx, ky))?;
    let (q, t) = schur.unpack();
    let off = (0..4)
        .flat_map(|r| (r + 1..4).map(move |c| (r, c)))
        .map(|(r, c)| t[(r, c)].norm())
        .fold(0.0, f64::max);
    if off > SCHUR_OFF_DIAGONAL_TOL {
        return Err(Error::Eigensolver(kx, ky));
    }
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| t[(a, a)].arg().total_cmp(&t[(b, b)].arg()));
    let mut vectors: Vec<[Complex64; 4]> = order.iter().map(|&i| std::array::from_fn(|r| q[(r, i)])).collect();
    for i in 0..4 {
        for j in 0..i {
            let (done, rest) = vectors.split_at_mut(i);
            let proj: Complex64 = (0..4).map(|r| done[j][r].conj() * rest[0][r]).sum();
            for r in 0..4 {
                rest[0][r] -= proj * done[j][r];
            }
        }
        let n = vectors[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        vectors[i].iter_mut().for_each(|z| *z /= n);
    }
    Ok(PropagatorEigensystem {
        eigenvalues: std::array::from_fn(|i| {
            let l = t[(order[i], order[i])];
            l / l.norm()
        }),
        eigenvectors: std::array::from_fn(|i| vectors[i]),
    })
}

impl PropagatorEigensystem {
    /// `sum_i lambda_i^t |phi_i><phi_i|`, with `lambda^t` taken on the unit circle.
    pub fn power(&self, t: usize) -> Mat4 {
        let mut out = [[ZERO; 4]; 4];
        for (l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let lt = Complex64::from_polar(1.0, t as f64 * l.arg());
            for r in 0..4 {
                for c in 0..4 {
                    out[r][c] += lt * v[r] * v[c].conj();
                }
            }
        }
        out
    }

    /// `sum_i lambda_i^t <phi_i|psi> |phi_i>`.
    pub fn apply_power(&self, t: usize, psi: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let coeff: Complex64 = (0..4).map(|r| v[r].conj() * psi[r]).sum();
            let c = Complex64::from_polar(1.0, t as f64 * l.arg()) * coeff;
            for r in 0..4 {
                out[r] += c * v[r];
            }
        }
        out
    }
}

/// Momentum-space state on an `N x N` grid, `kx` major, together with the
/// position-space half-width `t` of its support.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierField {
    pub n: usize,
    pub t: usize,
    pub values: Vec<[Complex64; 4]>,
}

impl FourierField {
    /// `(1 / N^2) sum_k |psi(k)|^2`, the position-space norm.
    pub fn plancherel_norm(&self) -> f64 {
        let total: f64 = self.values.iter().flat_map(|v| v.iter()).map(|z| z.norm_sqr()).sum();
        total / (self.n * self.n) as f64
    }
}

fn check_grid(n: usize, t: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGrid(n));
    }
    if 2 * t + 1 > n {
        return Err(Error::GridTooSmall { t, n });
    }
    Ok(())
}

/// In-place 2D transform of an `n x n` row-major array.
fn fft2(data: &mut [Complex64], n: usize, fft: &dyn Fft<f64>) {
    fft.process(data);
    transpose(data, n);
    fft.process(data);
    transpose(data, n);
}

fn transpose(data: &mut [Complex64], n: usize) {
    for r in 0..n {
        for c in r + 1..n {
            data.swap(r * n + c, c * n + r);
        }
    }
}

fn parity(x: i64, y: i64) -> f64 {
    if (x + y).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `psi(k) = sum e^{+i k.x} psi(x)` on the `n`-point grid.
pub fn forward_transform(state: &WalkState2D, n: usize) -> Result<FourierField> {
    let t = state.t();
    check_grid(n, t)?;
    let ti = t as i64;
    let ni = n as i64;
    // e^{i k x} = (-1)^x e^{2 pi i j x / n}: an unnormalized inverse DFT of (-1)^{x+y} psi
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let mut values = vec![[ZERO; 4]; n * n];
    let mut plane = vec![ZERO; n * n];
    for comp in 0..4 {
        plane.fill(ZERO);
        for x in -ti..=ti {
            for y in -ti..=ti {
                let i = (x.rem_euclid(ni) * ni + y.rem_euclid(ni)) as usize;
                plane[i] = state.amplitude(x, y)[comp] * parity(x, y);
            }
        }
        fft2(&mut plane, n, fft.as_ref());
        for (v, z) in values.iter_mut().zip(&plane) {
            v[comp] = *z;
        }
    }
    Ok(FourierField { n, t, values })
}

/// `psi(x) = (1 / N^2) sum e^{-i k.x} psi(k)` restricted to `[-t, t]^2`.
pub fn inverse_transform(field: &FourierField) -> Result<WalkState2D> {
    let (n, t) = (field.n, field.t);
    check_grid(n, t)?;
    if field.values.len() != n * n {
        return Err(Error::EntryCount {
            expected: n * n,
            got: field.values.len(),
        });
    }
    let fft = FftPlanner::new().plan_fft_forward(n);
    let ti = t as i64;
    let ni = n as i64;
    let w = 2 * t + 1;
    let scale = 1.0 / (n * n) as f64;
    let mut amps = vec![[ZERO; 4]; w * w];
    let mut plane = vec![ZERO; n * n];
    for comp in 0..4 {
        for (p, v) in plane.iter_mut().zip(&field.values) {
            *p = v[comp];
        }
        fft2(&mut plane, n, fft.as_ref());
        for x in -ti..=ti {
            for y in -ti..=ti {
                let i = (x.rem_euclid(ni) * ni + y.rem_euclid(ni)) as usize;
                amps[(x + ti) as usize * w + (y + ti) as usize][comp] = plane[i] * (scale * parity(x, y));
            }
        }
    }
    WalkState2D::from_amplitudes(t, amps)
}

/// Eigensystems of every grid point, reusable across propagation times.
#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    n: usize,
    systems: Vec<PropagatorEigensystem>,
}

impl SpectralPropagator {
    pub fn new(n: usize) -> Result<Self> {
        check_grid(n, 0)?;
        let mut systems = Vec::with_capacity(n * n);
        for jx in 0..n {
            for jy in 0..n {
                systems.push(eigensystem(grid_momentum(jx, n), grid_momentum(jy, n))?);
            }
        }
        Ok(Self { n, systems })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Eigensystem at grid point `(jx, jy)`.
    pub fn system(&self, jx: usize, jy: usize) -> &PropagatorEigensystem {
        &self.systems[jx * self.n + jy]
    }

    /// `psi(k, t0 + t) = sum_i lambda_i^t <phi_i|psi(k, t0)> |phi_i>` at every grid point.
    pub fn propagate(&self, field: &FourierField, t: usize) -> Result<FourierField> {
        if field.n != self.n {
            return Err(Error::InvalidGrid(field.n));
        }
        Ok(FourierField {
            n: field.n,
            t: field.t + t,
            values: field
                .values
                .iter()
                .zip(&self.systems)
                .map(|(v, sys)| sys.apply_power(t, v))
                .collect(),
        })
    }
}

/// One-off spectral propagation; builds the eigensystems of the grid.
pub fn propagate(field: &FourierField, t: usize) -> Result<FourierField> {
    SpectralPropagator::new(field.n)?.propagate(field, t)
}
