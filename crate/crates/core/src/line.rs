//! Single-particle coined walk on the integer line.
//!
//! One step is `S (I (x) C)`: the coin acts on the chirality at every site,
//! then the `L` component moves to `x - 1` and the `R` component to `x + 1`.

use num_complex::Complex64;

use crate::coin::{CoinMatrix, CoinState1};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Shift of each chirality along the line, indexed as `(L, R)`.
pub const LINE_SHIFT: [i64; 2] = [-1, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    L,
    R,
}

impl Chirality {
    pub fn index(self) -> usize {
        match self {
            Chirality::L => 0,
            Chirality::R => 1,
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i == 0 {
            Chirality::L
        } else {
            Chirality::R
        }
    }

    pub fn basis_state(self) -> CoinState1 {
        match self {
            Chirality::L => CoinState1::left(),
            Chirality::R => CoinState1::right(),
        }
    }
}

/// Amplitudes `(L_x(t), R_x(t))` for `x` in `[-t, t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState1D {
    t: usize,
    amps: Vec<[Complex64; 2]>,
}

impl WalkState1D {
    /// The walker at the origin at `t = 0` with the given coin state.
    pub fn localized(coin_state: &CoinState1) -> Self {
        Self {
            t: 0,
            amps: vec![coin_state.as_array()],
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Leftmost stored position, `-t`.
    pub fn min_position(&self) -> i64 {
        -(self.t as i64)
    }

    /// Amplitude pair at `x`; zero outside `[-t, t]`.
    pub fn amplitude(&self, x: i64) -> [Complex64; 2] {
        let i = x + self.t as i64;
        if i < 0 || i as usize >= self.amps.len() {
            [ZERO; 2]
        } else {
            self.amps[i as usize]
        }
    }

    /// Raw amplitude slice, position `x` at index `x + t`.
    pub fn amplitudes(&self) -> &[[Complex64; 2]] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a[0].norm_sqr() + a[1].norm_sqr()).sum()
    }

    /// Advances one step. Panics if `coin` is not 2x2.
    pub fn step(&self, coin: &CoinMatrix) -> Self {
        assert_eq!(coin.dim(), 2, "line walk needs a 2x2 coin");
        let (c00, c01, c10, c11) = (coin.get(0, 0), coin.get(0, 1), coin.get(1, 0), coin.get(1, 1));
        let old = &self.amps;
        let len = old.len() + 2;
        let mut amps = vec![[ZERO; 2]; len];
        // new index i holds x' = i - (t + 1); L arrives from x' + 1 (old index i),
        // R arrives from x' - 1 (old index i - 2)
        for (i, slot) in amps.iter_mut().enumerate() {
            if let Some(src) = old.get(i) {
                slot[0] = c00 * src[0] + c01 * src[1];
            }
            if i >= 2 {
                let src = &old[i - 2];
                slot[1] = c10 * src[0] + c11 * src[1];
            }
        }
        Self { t: self.t + 1, amps }
    }

    /// `p(x) = |L_x|^2 + |R_x|^2` for `x` in `[-t, t]`.
    pub fn distribution(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a[0].norm_sqr() + a[1].norm_sqr()).collect()
    }

    /// Probability of `x <= 0` and of `x >= 1`. The origin counts as the
    /// negative side.
    pub fn side_probabilities(&self) -> (f64, f64) {
        side_sums(&self.distribution(), self.t)
    }

    /// Position with the largest probability (leftmost on ties) and that
    /// probability.
    pub fn peak(&self) -> (i64, f64) {
        let mut best = (self.min_position(), f64::NEG_INFINITY);
        for (i, p) in self.distribution().into_iter().enumerate() {
            if p > best.1 {
                best = (i as i64 - self.t as i64, p);
            }
        }
        best
    }
}

/// Splits a distribution over `[-t, t]` into the sums over `[-t, 0]` and `[1, t]`.
pub fn side_sums(dist: &[f64], t: usize) -> (f64, f64) {
    let minus = dist[..=t].iter().sum();
    let plus = dist[t + 1..].iter().sum();
    (minus, plus)
}

/// Evolves the origin-localized walker `t` steps.
pub fn evolve(initial: &CoinState1, t: usize, coin: &CoinMatrix) -> WalkState1D {
    let mut state = WalkState1D::localized(initial);
    for _ in 0..t {
        state = state.step(coin);
    }
    state
}

/// Hadamard-walk amplitudes `psi^source_L(m, t)` and `psi^source_R(m, t)`
/// for a walker started in the basis chirality `source`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralAmplitudes {
    pub t: usize,
    pub left: Vec<Complex64>,
    pub right: Vec<Complex64>,
}

impl ChiralAmplitudes {
    pub fn from_state(state: &WalkState1D) -> Self {
        Self {
            t: state.t,
            left: state.amps.iter().map(|a| a[0]).collect(),
            right: state.amps.iter().map(|a| a[1]).collect(),
        }
    }

    /// Amplitude at position `m` with chirality `c`; zero outside `[-t, t]`.
    pub fn get(&self, c: Chirality, m: i64) -> Complex64 {
        let i = m + self.t as i64;
        if i < 0 || i as usize >= self.left.len() {
            return ZERO;
        }
        match c {
            Chirality::L => self.left[i as usize],
            Chirality::R => self.right[i as usize],
        }
    }
}

pub fn chiral_amplitudes(source: Chirality, t: usize) -> ChiralAmplitudes {
    ChiralAmplitudes::from_state(&evolve(&source.basis_state(), t, &CoinMatrix::hadamard()))
}
