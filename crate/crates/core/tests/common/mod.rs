//! Brute-force reference walks written without the library's evolution code.

#![allow(dead_code)]

use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn hadamard_pair() -> [[Complex64; 4]; 4] {
    let h = [[1.0, 1.0], [1.0, -1.0]];
    std::array::from_fn(|r| std::array::from_fn(|col| c(h[r >> 1][col >> 1] * h[r & 1][col & 1] * 0.5)))
}

/// Two walkers on the line tracked as a dense `(2t+1)^2` grid of four
/// chirality components. Component `2 c1 + c2`; chirality 0 moves left.
pub struct PairWalk {
    pub t: usize,
    pub radius: usize,
    pub amps: Vec<[Complex64; 4]>,
}

impl PairWalk {
    pub fn new(coin: [Complex64; 4], radius: usize) -> Self {
        let w = 2 * radius + 1;
        let mut amps = vec![[ZERO; 4]; w * w];
        amps[radius * w + radius] = coin;
        Self { t: 0, radius, amps }
    }

    fn index(&self, x: i64, y: i64) -> Option<usize> {
        let r = self.radius as i64;
        if x.abs() > r || y.abs() > r {
            return None;
        }
        Some(((x + r) as usize) * (2 * self.radius + 1) + (y + r) as usize)
    }

    pub fn step(&mut self, coin: &[[Complex64; 4]; 4]) {
        assert!(self.t < self.radius, "grid too small");
        let r = self.radius as i64;
        let mut next = vec![[ZERO; 4]; self.amps.len()];
        for x in -r..=r {
            for y in -r..=r {
                let v = self.amps[self.index(x, y).unwrap()];
                if v.iter().all(|z| *z == ZERO) {
                    continue;
                }
                for (row, coeffs) in coin.iter().enumerate() {
                    let out: Complex64 = coeffs.iter().zip(&v).map(|(a, b)| a * b).sum();
                    let dx = if row >> 1 == 0 { -1 } else { 1 };
                    let dy = if row & 1 == 0 { -1 } else { 1 };
                    let i = self.index(x + dx, y + dy).unwrap();
                    next[i][row] += out;
                }
            }
        }
        self.amps = next;
        self.t += 1;
    }

    pub fn amplitude(&self, x: i64, y: i64) -> [Complex64; 4] {
        self.index(x, y).map_or([ZERO; 4], |i| self.amps[i])
    }

    pub fn probability(&self, x: i64, y: i64) -> f64 {
        self.amplitude(x, y).iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn sameside(&self) -> f64 {
        let r = self.radius as i64;
        let mut total = 0.0;
        for x in -r..=r {
            for y in -r..=r {
                if (x <= 0) == (y <= 0) {
                    total += self.probability(x, y);
                }
            }
        }
        total
    }
}

/// Runs the pair walk with the Hadamard coin on both walkers.
pub fn hadamard_pair_walk(coin: [Complex64; 4], t: usize) -> PairWalk {
    let mut walk = PairWalk::new(coin, t + 1);
    let h = hadamard_pair();
    for _ in 0..t {
        walk.step(&h);
    }
    walk
}
