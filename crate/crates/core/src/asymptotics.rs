//! Long-time limits of the Hadamard walk.
//!
//! Positions scale as `q = x / t` with support `|q| < 1/sqrt(2)`. Integrals
//! over `q` use the substitution `q = sin(theta) / sqrt(2)`, which removes the
//! inverse square-root singularity at the support edges, followed by
//! Gauss-Legendre quadrature on each half-line.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::coin::{CoinState1, HadamardCoords, NORM_TOL};
use crate::error::{Error, Result};

/// Upper edge of the scaled-position support.
pub const SUPPORT_EDGE: f64 = FRAC_1_SQRT_2;

/// Gauss-Legendre nodes per half-axis for the one-dimensional kernels.
pub const DEFAULT_NODES: usize = 2048;

type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_support(q: f64) -> Result<()> {
    if q.is_finite() && q.abs() < SUPPORT_EDGE {
        Ok(())
    } else {
        Err(Error::OutsideSupport(q))
    }
}

/// `1 / ((1 - q^2) sqrt(1 - 2 q^2))`.
fn jacobian(q: f64) -> f64 {
    1.0 / ((1.0 - q * q) * (1.0 - 2.0 * q * q).sqrt())
}

/// Limiting density of `x / t` for a single walker started in `(a, b)`.
pub fn konno_density(q: f64, state: &CoinState1) -> Result<f64> {
    check_support(q)?;
    Ok((1.0 - q * state.bias_weight()) * jacobian(q) / PI)
}

/// Limiting probabilities `(p_minus, p_plus)` of the two half-lines.
pub fn side_limits(state: &CoinState1) -> (f64, f64) {
    let w = state.bias_weight();
    (0.25 * (2.0 + w), 0.25 * (2.0 - w))
}

/// Limiting same-side probability of independent walkers, from each
/// walker's Hadamard-eigenbasis imbalance `d = |h+|^2 - |h-|^2`.
pub fn sameside_limit_separable(coords: &[HadamardCoords]) -> f64 {
    let scale = 0.25f64.powi(coords.len() as i32);
    let minus: f64 = coords.iter().map(|c| 2.0 + SQRT_2 * c.imbalance()).product();
    let plus: f64 = coords.iter().map(|c| 2.0 - SQRT_2 * c.imbalance()).product();
    scale * (minus + plus)
}

/// The same limit as a product of per-walker side limits in `(a, b)` form.
pub fn sameside_limit_product(states: &[CoinState1]) -> f64 {
    let sides: Vec<(f64, f64)> = states.iter().map(side_limits).collect();
    sides.iter().map(|s| s.0).product::<f64>() + sides.iter().map(|s| s.1).product::<f64>()
}

/// Eigenphase branches `(w1, w2)` with `w1 = arcsin(sin k / sqrt 2)`, `w2 = pi - w1`.
pub fn dispersion(k: f64) -> (f64, f64) {
    let w1 = (k.sin() / SQRT_2).asin();
    (w1, PI - w1)
}

/// `dw1/dk = cos k / sqrt(1 + cos^2 k)`.
pub fn group_velocity(k: f64) -> f64 {
    let c = k.cos();
    c / (1.0 + c * c).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::One, Branch::Two];

    pub fn eigenphase(self, k: f64) -> f64 {
        let (w1, w2) = dispersion(k);
        match self {
            Branch::One => w1,
            Branch::Two => w2,
        }
    }

    /// Sign `s` with scaled velocity `q = s * C(k)` for this branch.
    fn velocity_sign(self) -> f64 {
        match self {
            Branch::One => -1.0,
            Branch::Two => 1.0,
        }
    }
}

/// Momentum generator `D(e^{ik}, e^{-ik}) H` of one Hadamard step, for the
/// transform `psi(k) = sum_x e^{-ikx} psi(x)`.
pub fn generator(k: f64) -> Mat2 {
    let h = FRAC_1_SQRT_2;
    let (p, m) = (Complex64::from_polar(1.0, k), Complex64::from_polar(1.0, -k));
    [[p * h, p * h], [m * h, -m * h]]
}

/// Normalized eigenvector of [`generator`] with eigenvalue `e^{i w_branch(k)}`.
pub fn eigvec_u(k: f64, branch: Branch) -> [Complex64; 2] {
    let e = Complex64::from_polar(1.0, k);
    let w1 = dispersion(k).0;
    let v = match branch {
        Branch::One => [e, Complex64::from_polar(SQRT_2, w1) - e],
        Branch::Two => [-e, Complex64::from_polar(SQRT_2, -w1) + e],
    };
    // n1, n2 in closed form; both stay >= 2 (2 - sqrt 2) > 0
    let c = k.cos();
    let root = (1.0 + c * c).sqrt();
    let n = match branch {
        Branch::One => 2.0 * (1.0 + c * c - c * root),
        Branch::Two => 2.0 * (1.0 + c * c + c * root),
    };
    assert!(n > 0.0, "degenerate eigenvector normalization at k = {k}");
    let s = 1.0 / n.sqrt();
    [v[0] * s, v[1] * s]
}

/// `max |U(k) v - e^{iw} v|` for the branch eigenpair.
pub fn eigen_residual(k: f64, branch: Branch) -> f64 {
    let u = generator(k);
    let v = eigvec_u(k, branch);
    let lambda = Complex64::from_polar(1.0, branch.eigenphase(k));
    (0..2)
        .map(|r| (u[r][0] * v[0] + u[r][1] * v[1] - lambda * v[r]).norm())
        .fold(0.0, f64::max)
}

/// Branch eigenvectors at the two momenta whose group velocity is `q`,
/// four in all. `cos_theta = sqrt(1 - 2 q^2)` is passed in so callers on
/// the substituted grid keep full precision near the edges.
fn stationary_vectors(q: f64, cos_theta: f64) -> [[Complex64; 2]; 4] {
    let r = (1.0 - q * q).sqrt();
    let sin_k = cos_theta / r;
    let mut out = [[ZERO; 2]; 4];
    let mut i = 0;
    for branch in Branch::BOTH {
        // q = s C(k)  <=>  cos k = s q / sqrt(1 - q^2)
        let cos_k = branch.velocity_sign() * q / r;
        for sign in [1.0, -1.0] {
            out[i] = eigvec_u((sign * sin_k).atan2(cos_k), branch);
            i += 1;
        }
    }
    out
}

/// Initial coin state of `M` walkers for the weak limit.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakLimitSpec {
    m: usize,
    psi: Vec<Complex64>,
}

impl WeakLimitSpec {
    pub fn new(m: usize, psi: Vec<Complex64>) -> Result<Self> {
        if m == 0 || m > crate::multiparticle::MAX_PARTICLES {
            return Err(Error::ParticleCount(m));
        }
        if psi.len() != 1 << m {
            return Err(Error::EntryCount {
                expected: 1 << m,
                got: psi.len(),
            });
        }
        let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { m, psi })
    }

    pub fn single(state: &CoinState1) -> Self {
        Self {
            m: 1,
            psi: state.as_array().to_vec(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }
}

/// `sum_{combos} |<v_1 (x) .. (x) v_M, psi>|^2` over one stationary vector per axis.
fn overlap_sum(psi: &[Complex64], axes: &[&[[Complex64; 2]; 4]]) -> f64 {
    let m = axes.len();
    let mut choice = vec![0usize; m];
    let mut total = 0.0;
    let mut tensor = vec![ZERO; psi.len()];
    loop {
        tensor[0] = Complex64::new(1.0, 0.0);
        let mut len = 1;
        for (axis, &c) in axes.iter().zip(&choice) {
            let v = axis[c];
            for j in (0..len).rev() {
                let z = tensor[j];
                tensor[2 * j] = z * v[0].conj();
                tensor[2 * j + 1] = z * v[1].conj();
            }
            len *= 2;
        }
        total += tensor.iter().zip(psi).map(|(a, b)| a * b).sum::<Complex64>().norm_sqr();
        let mut i = m;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if choice[i] < 3 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Weak-limit density of the scaled positions `q` of `M` walkers, summed
/// from eigenvector overlaps over branch assignments and stationary momenta.
pub fn weak_limit_density(spec: &WeakLimitSpec, q: &[f64]) -> Result<f64> {
    if q.len() != spec.m {
        return Err(Error::SiteArity {
            expected: spec.m,
            got: q.len(),
        });
    }
    for &x in q {
        check_support(x)?;
    }
    let axes: Vec<[[Complex64; 2]; 4]> = q
        .iter()
        .map(|&x| stationary_vectors(x, (1.0 - 2.0 * x * x).sqrt()))
        .collect();
    let refs: Vec<&[[Complex64; 2]; 4]> = axes.iter().collect();
    let prefactor: f64 = q.iter().map(|&x| jacobian(x) / (2.0 * PI)).product();
    Ok(prefactor * overlap_sum(&spec.psi, &refs))
}

/// Quadrature node on one half-axis: scaled position, its stationary
/// vectors and the weight of `dq` with the Jacobian and `1 / 2pi` folded in.
struct AxisNode {
    vectors: [[Complex64; 2]; 4],
    weight: f64,
}

/// Nodes covering `q in (-1/sqrt 2, 0)` (negative) or `(0, 1/sqrt 2)`.
fn half_axis_nodes(nodes: usize, negative: bool) -> Vec<AxisNode> {
    let rule = GaussLegendre::new(NonZeroUsize::new(nodes.max(1)).expect("nonzero"));
    let sign = if negative { -1.0 } else { 1.0 };
    rule.as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| {
            // theta = (x + 1) pi / 4 maps [-1, 1] onto [0, pi / 2]
            let theta = (x + 1.0) * PI / 4.0;
            let q = sign * theta.sin() / SQRT_2;
            // J dq = dtheta / (sqrt 2 (1 - q^2))
            let weight = w * (PI / 4.0) / (SQRT_2 * (1.0 - q * q)) / (2.0 * PI);
            AxisNode {
                vectors: stationary_vectors(q, theta.cos()),
                weight,
            }
        })
        .collect()
}

/// `G = integral over a half-axis of (J / 2pi) sum v v^dagger`.
fn half_axis_gram(nodes: &[AxisNode]) -> Mat2 {
    let mut g = [[ZERO; 2]; 2];
    for node in nodes {
        for v in &node.vectors {
            for a in 0..2 {
                for b in 0..2 {
                    g[a][b] += v[a] * v[b].conj() * node.weight;
                }
            }
        }
    }
    g
}

/// Limiting half-line Gram matrices `(G_minus, G_plus)` by quadrature.
///
/// For every coin vector `psi` of `M` walkers the limiting same-side
/// probability is `psi^dagger (G_minus^{(x)M} + G_plus^{(x)M}) psi`.
pub fn limit_side_grams(nodes: usize) -> (Mat2, Mat2) {
    (
        half_axis_gram(&half_axis_nodes(nodes, true)),
        half_axis_gram(&half_axis_nodes(nodes, false)),
    )
}

/// `G_minus, G_plus = (I +- H / sqrt 2) / 2`, the closed form of [`limit_side_grams`].
pub fn limit_side_grams_exact() -> (Mat2, Mat2) {
    let c = |x: f64| Complex64::new(x, 0.0);
    let q = 0.25;
    (
        [[c(0.5 + q), c(q)], [c(q), c(0.5 - q)]],
        [[c(0.5 - q), c(-q)], [c(-q), c(0.5 + q)]],
    )
}

fn default_grams() -> &'static (Mat2, Mat2) {
    static GRAMS: OnceLock<(Mat2, Mat2)> = OnceLock::new();
    GRAMS.get_or_init(|| limit_side_grams(DEFAULT_NODES))
}

/// `psi^dagger G^{(x)M} psi`.
fn tensor_quadratic_form(psi: &[Complex64], g: &Mat2, m: usize) -> f64 {
    let mut u = psi.to_vec();
    for axis in 0..m {
        let stride = 1 << (m - 1 - axis);
        for base in 0..u.len() {
            if base & stride != 0 {
                continue;
            }
            let (x0, x1) = (u[base], u[base | stride]);
            u[base] = g[0][0] * x0 + g[0][1] * x1;
            u[base | stride] = g[1][0] * x0 + g[1][1] * x1;
        }
    }
    psi.iter().zip(&u).map(|(p, x)| p.conj() * x).sum::<Complex64>().re
}

/// Limiting probability that all walkers end on the same half-line, as the
/// sum of the two orthant integrals of the weak-limit density.
pub fn sameside_limit_general(spec: &WeakLimitSpec) -> f64 {
    let (minus, plus) = default_grams();
    tensor_quadratic_form(&spec.psi, minus, spec.m) + tensor_quadratic_form(&spec.psi, plus, spec.m)
}

/// Orthant integrals `(negative, positive)` of [`weak_limit_density`] by
/// direct tensor-product quadrature with `nodes` points per half-axis.
/// Cost grows as `nodes^M 4^M 2^M`.
pub fn orthant_integrals_direct(spec: &WeakLimitSpec, nodes: usize) -> (f64, f64) {
    let neg = half_axis_nodes(nodes, true);
    let pos = half_axis_nodes(nodes, false);
    (
        tensor_integral(spec, &vec![&neg[..]; spec.m]),
        tensor_integral(spec, &vec![&pos[..]; spec.m]),
    )
}

/// Integral of [`weak_limit_density`] over the whole support box.
pub fn total_integral(spec: &WeakLimitSpec, nodes: usize) -> f64 {
    let mut both = half_axis_nodes(nodes, true);
    both.extend(half_axis_nodes(nodes, false));
    tensor_integral(spec, &vec![&both[..]; spec.m])
}

fn tensor_integral(spec: &WeakLimitSpec, axes: &[&[AxisNode]]) -> f64 {
    let m = axes.len();
    let mut index = vec![0usize; m];
    let mut total = 0.0;
    loop {
        let nodes: Vec<&AxisNode> = index.iter().zip(axes).map(|(&i, a)| &a[i]).collect();
        let vectors: Vec<&[[Complex64; 2]; 4]> = nodes.iter().map(|n| &n.vectors).collect();
        let weight: f64 = nodes.iter().map(|n| n.weight).product();
        total += weight * overlap_sum(&spec.psi, &vectors);
        let mut i = m;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if index[i] + 1 < axes[i].len() {
                index[i] += 1;
                break;
            }
            index[i] = 0;
        }
    }
}
