//! Two walkers on the line as one walker on the square lattice, with an
//! optional contact interaction: a different coin acts on the diagonal `x = y`.
//!
//! Chirality slots are `(L, R, D, U)`. In the [`ShiftModel::Diagonal`] model
//! they are the two-particle chiralities `(LL, LR, RL, RR)` and both
//! coordinates move every step; in the [`ShiftModel::Axial`] model `L`/`R`
//! move `x` and `D`/`U` move `y`.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::coin::{CoinMatrix, NORM_TOL};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

type Rows = [[Complex64; 4]; 4];

/// Coin rows in either complex or real form; real coins skip the imaginary products.
trait CoinRows: Copy {
    fn row_dot(&self, c: usize, src: &[Complex64; 4]) -> Complex64;
}

impl CoinRows for Rows {
    #[inline(always)]
    fn row_dot(&self, c: usize, src: &[Complex64; 4]) -> Complex64 {
        let row = &self[c];
        row[0] * src[0] + row[1] * src[1] + row[2] * src[2] + row[3] * src[3]
    }
}

impl CoinRows for [[f64; 4]; 4] {
    #[inline(always)]
    fn row_dot(&self, c: usize, src: &[Complex64; 4]) -> Complex64 {
        let row = &self[c];
        src[0] * row[0] + src[1] * row[1] + src[2] * row[2] + src[3] * row[3]
    }
}

fn real_rows(coin: &CoinMatrix) -> Option<[[f64; 4]; 4]> {
    coin.is_real().then(|| coin.rows4().map(|r| r.map(|z| z.re)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftModel {
    /// Tensor product of two line shifts, `(LL, LR, RL, RR)` move `(-1,-1), (-1,+1), (+1,-1), (+1,+1)`.
    Diagonal,
    /// `L: x-1`, `R: x+1`, `D: y-1`, `U: y+1`.
    Axial,
}

impl ShiftModel {
    /// Displacement `(dx, dy)` of each chirality slot.
    pub fn displacements(self) -> [(i64, i64); 4] {
        match self {
            ShiftModel::Diagonal => [(-1, -1), (-1, 1), (1, -1), (1, 1)],
            ShiftModel::Axial => [(-1, 0), (1, 0), (0, -1), (0, 1)],
        }
    }
}

/// Amplitudes on `[-t, t]^2`, four chirality slots per site.
///
/// Storage covers a fixed `[-radius, radius]^2` window so that long
/// evolutions can reuse two buffers; entries outside `[-t, t]^2` are zero.
/// Equality ignores the storage window.
#[derive(Clone, Debug)]
pub struct WalkState2D {
    t: usize,
    radius: usize,
    amps: Vec<[Complex64; 4]>,
}

impl WalkState2D {
    /// Origin-localized state at `t = 0`.
    pub fn localized(chirality: [Complex64; 4]) -> Result<Self> {
        Self::localized_with_capacity(chirality, 0)
    }

    /// Origin-localized state with storage for `radius` steps.
    pub fn localized_with_capacity(chirality: [Complex64; 4], radius: usize) -> Result<Self> {
        let n: f64 = chirality.iter().map(|z| z.norm_sqr()).sum();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        let mut state = Self::zeros(0, radius);
        let i = state.index(0, 0);
        state.amps[i] = chirality;
        Ok(state)
    }

    fn zeros(t: usize, radius: usize) -> Self {
        let w = 2 * radius + 1;
        Self {
            t,
            radius,
            amps: vec![[ZERO; 4]; w * w],
        }
    }

    /// State at step `t` from amplitudes on `[-t, t]^2`, `x` major.
    pub fn from_amplitudes(t: usize, amps: Vec<[Complex64; 4]>) -> Result<Self> {
        let w = 2 * t + 1;
        if amps.len() != w * w {
            return Err(Error::EntryCount {
                expected: w * w,
                got: amps.len(),
            });
        }
        Ok(Self { t, radius: t, amps })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    fn width(&self) -> usize {
        2 * self.radius + 1
    }

    fn index(&self, x: i64, y: i64) -> usize {
        let r = self.radius as i64;
        ((x + r) as usize) * self.width() + (y + r) as usize
    }

    /// Chirality vector at `(x, y)`; zero outside `[-t, t]^2`.
    pub fn amplitude(&self, x: i64, y: i64) -> [Complex64; 4] {
        let t = self.t as i64;
        if x.abs() > t || y.abs() > t {
            [ZERO; 4]
        } else {
            self.amps[self.index(x, y)]
        }
    }

    fn sites(&self) -> impl Iterator<Item = (i64, i64, &[Complex64; 4])> + '_ {
        let t = self.t as i64;
        (-t..=t).flat_map(move |x| (-t..=t).map(move |y| (x, y, &self.amps[self.index(x, y)])))
    }

    /// Amplitudes on `[-t, t]^2`, `x` major.
    pub fn compact_amplitudes(&self) -> Vec<[Complex64; 4]> {
        self.sites().map(|(_, _, a)| *a).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.sites().map(|(_, _, a)| site_weight(a)).sum()
    }

    /// `|psi(x, y)|^2` on `[-t, t]^2`, `x` major.
    pub fn distribution(&self) -> Vec<f64> {
        self.sites().map(|(_, _, a)| site_weight(a)).collect()
    }

    /// Marginal distribution of `x` (first particle) on `[-t, t]`.
    pub fn marginal_x(&self) -> Vec<f64> {
        let t = self.t as i64;
        (-t..=t)
            .map(|x| (-t..=t).map(|y| site_weight(&self.amps[self.index(x, y)])).sum())
            .collect()
    }

    /// Probability of `x, y <= 0` plus probability of `x, y >= 1`.
    pub fn sameside_2p(&self) -> f64 {
        self.sites()
            .filter(|&(x, y, _)| (x <= 0 && y <= 0) || (x >= 1 && y >= 1))
            .map(|(_, _, a)| site_weight(a))
            .sum()
    }

    /// Site of largest probability (first in `x`-major order) and its value.
    pub fn peak(&self) -> ((i64, i64), f64) {
        let mut best = ((0, 0), f64::NEG_INFINITY);
        for (x, y, a) in self.sites() {
            let p = site_weight(a);
            if p > best.1 {
                best = ((x, y), p);
            }
        }
        best
    }

    /// Advances one step with the coin chosen per site, writing into `out`.
    ///
    /// Each target row of `[-(t+1), t+1]^2` is cleared and then every
    /// (site, slot) entry is pulled from its unique source, so the result
    /// does not depend on what `out` held before.
    fn step_into<K, F>(&self, shift: ShiftModel, coin_at: F, out: &mut WalkState2D)
    where
        K: CoinRows,
        F: Fn(i64, i64) -> K,
    {
        let t_new = self.t + 1;
        assert!(out.radius >= t_new, "output buffer too small");
        out.t = t_new;
        let tn = t_new as i64;
        let t = self.t as i64;
        let w_old = 2 * self.t + 1;
        let w_new = w_old + 2;
        for x in -tn..=tn {
            let start = out.index(x, -tn);
            let out_row = &mut out.amps[start..start + w_new];
            out_row.fill([ZERO; 4]);
            for (c, &(dx, dy)) in shift.displacements().iter().enumerate() {
                let sx = x - dx;
                if sx.abs() > t {
                    continue;
                }
                let s0 = self.index(sx, -t);
                let src_row = &self.amps[s0..s0 + w_old];
                // source y = j - t lands on target index j + dy + 1
                let offset = (dy + 1) as usize;
                for (j, src) in src_row.iter().enumerate() {
                    if *src == [ZERO; 4] {
                        continue;
                    }
                    out_row[j + offset][c] = coin_at(sx, j as i64 - t).row_dot(c, src);
                }
            }
        }
    }

    fn empty_like(&self, t_needed: usize) -> WalkState2D {
        WalkState2D::zeros(0, self.radius.max(t_needed))
    }
}

impl PartialEq for WalkState2D {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.sites().zip(other.sites()).all(|(a, b)| a.2 == b.2)
    }
}

fn site_weight(a: &[Complex64; 4]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

fn check_dim4(coin: &CoinMatrix) -> Result<()> {
    if coin.dim() == 4 {
        Ok(())
    } else {
        Err(Error::InvalidDimension(coin.dim()))
    }
}

/// One step with the same coin everywhere.
pub fn step_uniform(state: &WalkState2D, coin: &CoinMatrix, shift: ShiftModel) -> Result<WalkState2D> {
    check_dim4(coin)?;
    let mut out = state.empty_like(state.t + 1);
    match real_rows(coin) {
        Some(rows) => state.step_into(shift, |_, _| rows, &mut out),
        None => {
            let rows = coin.rows4();
            state.step_into(shift, |_, _| rows, &mut out)
        }
    }
    Ok(out)
}

/// Coins and shift of the contact-interaction walk.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaEvolutionSpec {
    bulk: CoinMatrix,
    diag: CoinMatrix,
    shift: ShiftModel,
}

impl DeltaEvolutionSpec {
    pub fn new(bulk: CoinMatrix, diag: CoinMatrix, shift: ShiftModel) -> Result<Self> {
        check_dim4(&bulk)?;
        check_dim4(&diag)?;
        Ok(Self { bulk, diag, shift })
    }

    /// Independent Hadamard walkers away from contact, `C_delta` on contact.
    pub fn interacting() -> Self {
        Self {
            bulk: CoinMatrix::hadamard_pair(),
            diag: CoinMatrix::cdelta(),
            shift: ShiftModel::Diagonal,
        }
    }

    /// The same coin everywhere.
    pub fn uniform(coin: CoinMatrix, shift: ShiftModel) -> Result<Self> {
        Self::new(coin.clone(), coin, shift)
    }

    pub fn bulk(&self) -> &CoinMatrix {
        &self.bulk
    }

    pub fn diag(&self) -> &CoinMatrix {
        &self.diag
    }

    pub fn shift(&self) -> ShiftModel {
        self.shift
    }

    fn step(&self, state: &WalkState2D, out: &mut WalkState2D) {
        let shift = self.shift;
        match (real_rows(&self.bulk), real_rows(&self.diag)) {
            (Some(bulk), Some(diag)) => state.step_into(shift, |x, y| if x == y { diag } else { bulk }, out),
            _ => {
                let (bulk, diag) = (self.bulk.rows4(), self.diag.rows4());
                state.step_into(shift, |x, y| if x == y { diag } else { bulk }, out)
            }
        }
    }
}

/// One step applying `diag` on `x = y` and `bulk` elsewhere.
pub fn step_delta(state: &WalkState2D, spec: &DeltaEvolutionSpec) -> WalkState2D {
    let mut out = state.empty_like(state.t + 1);
    spec.step(state, &mut out);
    out
}

/// Evolves `t` steps with two preallocated buffers, calling `observe` on
/// the state at every step from `0` to `t`.
pub fn evolve_with<F>(initial: [Complex64; 4], t: usize, spec: &DeltaEvolutionSpec, mut observe: F) -> Result<WalkState2D>
where
    F: FnMut(&WalkState2D),
{
    let mut cur = WalkState2D::localized_with_capacity(initial, t)?;
    let mut next = WalkState2D::zeros(0, t);
    observe(&cur);
    for _ in 0..t {
        spec.step(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        observe(&cur);
    }
    Ok(cur)
}

pub fn evolve(initial: [Complex64; 4], t: usize, spec: &DeltaEvolutionSpec) -> Result<WalkState2D> {
    evolve_with(initial, t, spec, |_| {})
}

/// Chirality vector `(a1, b1) (x) (a2, b2)` in slot order `(LL, LR, RL, RR)`.
pub fn product_chirality(first: [Complex64; 2], second: [Complex64; 2]) -> [Complex64; 4] {
    [
        first[0] * second[0],
        first[0] * second[1],
        first[1] * second[0],
        first[1] * second[1],
    ]
}

/// Point on the real unit 3-sphere from hyperspherical angles.
pub fn sphere_point(alpha: f64, beta: f64, gamma: f64) -> [f64; 4] {
    [
        alpha.cos(),
        alpha.sin() * beta.cos(),
        alpha.sin() * beta.sin() * gamma.cos(),
        alpha.sin() * beta.sin() * gamma.sin(),
    ]
}

/// Same-side Gram matrices `G(t)[a][b] = sum_{same side} <psi_b(t), psi_a(t)>`
/// of the four basis chirality inputs, for `t = 0..=t_max`.
///
/// By linearity the same-side probability of the input `c` at step `t` is
/// `sum_{a,b} c_a conj(c_b) G(t)[a][b]`.
pub fn sameside_grams(t_max: usize, spec: &DeltaEvolutionSpec) -> Vec<[[Complex64; 4]; 4]> {
    let mut grams = vec![[[ZERO; 4]; 4]; t_max + 1];
    // amplitudes of each basis input on the same-side region, per step
    let mut fields: Vec<Vec<Vec<[Complex64; 4]>>> = vec![Vec::new(); 4];
    for (a, f) in fields.iter_mut().enumerate() {
        let mut basis = [ZERO; 4];
        basis[a] = Complex64::new(1.0, 0.0);
        evolve_with(basis, t_max, spec, |s| {
            f.push(
                s.sites()
                    .filter(|&(x, y, _)| (x <= 0 && y <= 0) || (x >= 1 && y >= 1))
                    .map(|(_, _, v)| *v)
                    .collect(),
            )
        })
        .expect("basis vector is normalized");
    }
    for (t, g) in grams.iter_mut().enumerate() {
        for a in 0..4 {
            for b in a..4 {
                let v: Complex64 = fields[a][t]
                    .iter()
                    .zip(&fields[b][t])
                    .map(|(pa, pb)| (0..4).map(|c| pa[c] * pb[c].conj()).sum::<Complex64>())
                    .sum();
                g[a][b] = v;
                g[b][a] = v.conj();
            }
        }
    }
    grams
}

/// `c^dagger`-weighted same-side value `sum c_a conj(c_b) G[a][b]` for a real input.
pub fn gram_value(gram: &[[Complex64; 4]; 4], c: &[f64; 4]) -> f64 {
    let mut total = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            total += c[a] * c[b] * gram[a][b].re;
        }
    }
    total
}

/// Largest same-side value over real and over complex unit inputs.
pub fn gram_maxima(gram: &[[Complex64; 4]; 4]) -> (f64, f64) {
    let real = Matrix4::from_fn(|a, b| gram[a][b].re);
    let complex = Matrix4::from_fn(|a, b| gram[a][b]);
    let max = |v: nalgebra::Vector4<f64>| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (
        max(SymmetricEigen::new(real).eigenvalues),
        max(SymmetricEigen::new(complex).eigenvalues),
    )
}

/// One point of an initial-state scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    pub angles: (f64, f64, f64),
    pub chirality: [f64; 4],
    /// Whether the input is a product of two single-particle states.
    pub separable: bool,
    pub sameside: Vec<f64>,
    pub running_max: Vec<f64>,
    /// Mean of the last quarter of the series.
    pub tail_mean: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub resolution: usize,
    pub t_max: usize,
    pub points: Vec<ScanPoint>,
    /// Maximum over grid points of the same-side value up to each step.
    pub running_max: Vec<f64>,
    /// Grid point index with the largest tail mean.
    pub best_tail: usize,
    /// Maximum at `t_max` over all real unit inputs.
    pub sphere_max_real: f64,
    /// Maximum at `t_max` over all complex unit inputs.
    pub sphere_max_complex: f64,
}

/// Same-side value of the separable limit that non-interacting walkers cannot beat.
pub const SEPARABLE_BOUND: f64 = 0.75;

/// Sweeps real unit chirality vectors on the grid
/// `alpha, beta = pi i / r` (`i = 0..=r`), `gamma = 2 pi j / r` (`j = 0..r`),
/// recording each same-side series up to `t_max`. Points are in
/// `(alpha, beta, gamma)` row-major order.
pub fn scan_delta_initial_states(resolution: usize, t_max: usize, spec: &DeltaEvolutionSpec) -> Result<ScanReport> {
    if resolution < 2 {
        return Err(Error::Resolution(resolution));
    }
    let grams = sameside_grams(t_max, spec);
    let r = resolution as f64;
    let tail_start = t_max - t_max / 4;
    let mut points = Vec::with_capacity((resolution + 1).pow(2) * resolution);
    for i in 0..=resolution {
        for j in 0..=resolution {
            for k in 0..resolution {
                let angles = (
                    std::f64::consts::PI * i as f64 / r,
                    std::f64::consts::PI * j as f64 / r,
                    2.0 * std::f64::consts::PI * k as f64 / r,
                );
                let c = sphere_point(angles.0, angles.1, angles.2);
                let sameside: Vec<f64> = grams.iter().map(|g| gram_value(g, &c)).collect();
                let mut running_max = Vec::with_capacity(sameside.len());
                let mut best = f64::NEG_INFINITY;
                for &p in &sameside {
                    best = best.max(p);
                    running_max.push(best);
                }
                let tail = &sameside[tail_start..];
                points.push(ScanPoint {
                    angles,
                    chirality: c,
                    separable: (c[0] * c[3] - c[1] * c[2]).abs() < 1e-12,
                    tail_mean: tail.iter().sum::<f64>() / tail.len() as f64,
                    sameside,
                    running_max,
                });
            }
        }
    }
    let running_max = (0..=t_max)
        .map(|t| points.iter().map(|p| p.running_max[t]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let best_tail = (0..points.len())
        .fold(0, |best, i| if points[i].tail_mean > points[best].tail_mean { i } else { best });
    let (sphere_max_real, sphere_max_complex) = gram_maxima(&grams[t_max]);
    Ok(ScanReport {
        resolution,
        t_max,
        points,
        running_max,
        best_tail,
        sphere_max_real,
        sphere_max_complex,
    })
}
