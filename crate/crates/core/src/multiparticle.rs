//! Non-interacting M-particle walks on the line.
//!
//! Every particle performs an independent Hadamard walk, so any joint
//! amplitude is a sum of products of the single-particle tables
//! `psi^s_r(m, t)` (source chirality `s`, current chirality `r`). Coin
//! vectors over `{L, R}^M` are indexed with particle 0 as the most
//! significant bit and `R = 1`.

use num_complex::Complex64;

use crate::coin::{CoinMatrix, CoinState1, NORM_TOL};
use crate::error::{Error, Result};
use crate::line::{self, side_sums, ChiralAmplitudes, Chirality, WalkState1D};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest particle count accepted for coin vectors (`2^M` entries).
pub const MAX_PARTICLES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistics {
    Boson,
    Fermion,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoinKind {
    Separable(Vec<CoinState1>),
    BellPsi(Sign),
    BellPhi(Sign),
    Boson,
    Fermion,
    General(Vec<Complex64>),
}

/// Initial coin configuration of `M` walkers that all start at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialCoinSpec {
    m: usize,
    kind: CoinKind,
}

impl InitialCoinSpec {
    pub fn new(m: usize, kind: CoinKind) -> Result<Self> {
        if !(2..=MAX_PARTICLES).contains(&m) {
            return Err(Error::ParticleCount(m));
        }
        match &kind {
            CoinKind::Separable(states) if states.len() != m => {
                return Err(Error::EntryCount {
                    expected: m,
                    got: states.len(),
                })
            }
            CoinKind::General(v) => {
                if v.len() != 1 << m {
                    return Err(Error::EntryCount {
                        expected: 1 << m,
                        got: v.len(),
                    });
                }
                let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                if (n - 1.0).abs() > NORM_TOL {
                    return Err(Error::NotNormalized(n));
                }
            }
            _ => {}
        }
        Ok(Self { m, kind })
    }

    pub fn separable(states: Vec<CoinState1>) -> Result<Self> {
        Self::new(states.len(), CoinKind::Separable(states))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> &CoinKind {
        &self.kind
    }

    /// The `2^M` coin vector of a distinguishable-particle spec.
    ///
    /// Bell-type vectors are built from their distinct patterns and then
    /// normalized, so for `M = 2` they are the usual Bell pairs.
    pub fn coin_vector(&self) -> Result<Vec<Complex64>> {
        match &self.kind {
            CoinKind::Separable(states) => Ok(product_vector(states)),
            CoinKind::General(v) => Ok(v.clone()),
            CoinKind::BellPsi(_) | CoinKind::BellPhi(_) => {
                let mut v = vec![ZERO; 1 << self.m];
                for (pattern, coeff) in self.signed_patterns()? {
                    v[pattern_index(&pattern)] += coeff;
                }
                let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                v.iter_mut().for_each(|z| *z /= n);
                Ok(v)
            }
            CoinKind::Boson | CoinKind::Fermion => Err(Error::WrongKind {
                expected: "a distinguishable-particle coin state",
            }),
        }
    }

    /// Distinct chirality patterns with their (unnormalized) coefficients.
    /// Bosons and fermions use the alternating patterns of the `psi+` and
    /// `psi-` states.
    pub fn signed_patterns(&self) -> Result<Vec<(Vec<Chirality>, f64)>> {
        let m = self.m;
        let (patterns, sign) = match self.kind {
            CoinKind::BellPsi(s) => (alternating_patterns(m), s),
            CoinKind::Boson => (alternating_patterns(m), Sign::Plus),
            CoinKind::Fermion => (alternating_patterns(m), Sign::Minus),
            CoinKind::BellPhi(s) => (uniform_patterns(m), s),
            _ => {
                return Err(Error::WrongKind {
                    expected: "a Bell-type, boson or fermion spec",
                })
            }
        };
        Ok(patterns
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, if i == 0 { 1.0 } else { sign.factor() }))
            .collect())
    }

    /// The distinguishable Bell state whose same-side statistics the boson
    /// (`psi+`) or fermion (`psi-`) spec reproduces.
    pub fn bell_equivalent(&self) -> Result<Self> {
        let sign = match self.kind {
            CoinKind::Boson => Sign::Plus,
            CoinKind::Fermion => Sign::Minus,
            _ => {
                return Err(Error::WrongKind {
                    expected: "a boson or fermion spec",
                })
            }
        };
        Self::new(self.m, CoinKind::BellPsi(sign))
    }

    fn statistics(&self) -> Option<Statistics> {
        match self.kind {
            CoinKind::Boson => Some(Statistics::Boson),
            CoinKind::Fermion => Some(Statistics::Fermion),
            _ => None,
        }
    }
}

/// Bit index of a chirality pattern, particle 0 most significant.
pub fn pattern_index(pattern: &[Chirality]) -> usize {
    pattern.iter().fold(0, |acc, c| (acc << 1) | c.index())
}

fn pattern_from_index(index: usize, m: usize) -> Vec<Chirality> {
    (0..m).map(|i| Chirality::from_index((index >> (m - 1 - i)) & 1)).collect()
}

/// `LR..LR`, `RL..RL`, `LR..RL`, `RL..LR` with duplicates removed, in that order.
///
/// The last two patterns swap the final pair of the first two; for small
/// `M` they coincide with earlier patterns and are dropped.
pub fn alternating_patterns(m: usize) -> Vec<Vec<Chirality>> {
    let alt = |first: Chirality| -> Vec<Chirality> {
        (0..m)
            .map(|i| if i % 2 == 0 { first } else { flip(first) })
            .collect()
    };
    let p1 = alt(Chirality::L);
    let p2 = alt(Chirality::R);
    let mut p3 = p1.clone();
    let mut p4 = p2.clone();
    if m >= 2 {
        p3[m - 2] = Chirality::R;
        p3[m - 1] = Chirality::L;
        p4[m - 2] = Chirality::L;
        p4[m - 1] = Chirality::R;
    }
    let mut out: Vec<Vec<Chirality>> = Vec::with_capacity(4);
    for p in [p1, p2, p3, p4] {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// `LL..L` and `RR..R`.
pub fn uniform_patterns(m: usize) -> Vec<Vec<Chirality>> {
    vec![vec![Chirality::L; m], vec![Chirality::R; m]]
}

fn flip(c: Chirality) -> Chirality {
    match c {
        Chirality::L => Chirality::R,
        Chirality::R => Chirality::L,
    }
}

pub fn product_vector(states: &[CoinState1]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(1.0, 0.0)];
    for s in states {
        v = v.iter().flat_map(|&z| [z * s.a(), z * s.b()]).collect();
    }
    v
}

/// Applies a 2x2 matrix along one tensor axis of a `2^M` vector:
/// `out[.. r ..] = sum_s mat[r][s] v[.. s ..]`.
fn apply_on_axis(v: &mut [Complex64], m: usize, axis: usize, mat: &[[Complex64; 2]; 2]) {
    let stride = 1 << (m - 1 - axis);
    for base in 0..v.len() {
        if base & stride != 0 {
            continue;
        }
        let (x0, x1) = (v[base], v[base | stride]);
        v[base] = mat[0][0] * x0 + mat[0][1] * x1;
        v[base | stride] = mat[1][0] * x0 + mat[1][1] * x1;
    }
}

/// Hadamard-walk amplitude tables for both source chiralities at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceAmplitudes {
    t: usize,
    from: [ChiralAmplitudes; 2],
}

impl SourceAmplitudes {
    pub fn new(t: usize) -> Self {
        Self {
            t,
            from: [
                line::chiral_amplitudes(Chirality::L, t),
                line::chiral_amplitudes(Chirality::R, t),
            ],
        }
    }

    pub fn from_states(from_left: &WalkState1D, from_right: &WalkState1D) -> Self {
        assert_eq!(from_left.t(), from_right.t());
        Self {
            t: from_left.t(),
            from: [
                ChiralAmplitudes::from_state(from_left),
                ChiralAmplitudes::from_state(from_right),
            ],
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `psi^source_r(m, t)`.
    pub fn get(&self, source: Chirality, r: Chirality, m: i64) -> Complex64 {
        self.from[source.index()].get(r, m)
    }

    /// `mat[r][s] = psi^s_r(m, t)`, the single-site propagator from the origin.
    fn site_matrix(&self, m: i64) -> [[Complex64; 2]; 2] {
        let mut mat = [[ZERO; 2]; 2];
        for (r, row) in mat.iter_mut().enumerate() {
            for (s, entry) in row.iter_mut().enumerate() {
                *entry = self.get(Chirality::from_index(s), Chirality::from_index(r), m);
            }
        }
        mat
    }

    /// Per-site cross term `phi(m) = sum_r psi^L_r(m) psi^R_r(m)`, real for
    /// the Hadamard walk.
    pub fn phi(&self, m: i64) -> f64 {
        let l = Chirality::L;
        let r = Chirality::R;
        (self.get(l, l, m) * self.get(r, l, m) + self.get(l, r, m) * self.get(r, r, m)).re
    }

    /// Single-particle distribution of a walker started in basis state `source`.
    pub fn distribution(&self, source: Chirality, m: i64) -> f64 {
        self.get(source, Chirality::L, m).norm_sqr() + self.get(source, Chirality::R, m).norm_sqr()
    }
}

/// Gram matrices `G[a][b] = sum_{m in side} sum_r psi^a_r(m) conj(psi^b_r(m))`
/// over the negative (`m <= 0`) and positive (`m >= 1`) half-lines.
///
/// For any coin vector `c` the probability that all particles sit in one
/// half-line is `sum_{j,j'} c_j conj(c_j') prod_i G[j_i][j'_i]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SideGram {
    pub minus: [[Complex64; 2]; 2],
    pub plus: [[Complex64; 2]; 2],
}

impl SideGram {
    pub fn from_amplitudes(amps: &SourceAmplitudes) -> Self {
        let t = amps.t as i64;
        let mut minus = [[ZERO; 2]; 2];
        let mut plus = [[ZERO; 2]; 2];
        for m in -t..=t {
            let target = if m <= 0 { &mut minus } else { &mut plus };
            for (a, row) in target.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    let (sa, sb) = (Chirality::from_index(a), Chirality::from_index(b));
                    *cell += amps.get(sa, Chirality::L, m) * amps.get(sb, Chirality::L, m).conj()
                        + amps.get(sa, Chirality::R, m) * amps.get(sb, Chirality::R, m).conj();
                }
            }
        }
        Self { minus, plus }
    }

    /// Same-side probability of `M = log2(coin.len())` walkers with coin vector `coin`.
    pub fn sameside(&self, coin: &[Complex64]) -> f64 {
        let m = coin.len().trailing_zeros() as usize;
        let side = |g: &[[Complex64; 2]; 2]| -> f64 {
            let mut u: Vec<Complex64> = coin.iter().map(|z| z.conj()).collect();
            for axis in 0..m {
                apply_on_axis(&mut u, m, axis, g);
            }
            coin.iter().zip(&u).map(|(c, x)| c * x).sum::<Complex64>().re
        };
        side(&self.minus) + side(&self.plus)
    }
}

/// Side Gram matrices for `t = 0..=t_max`, from one pass of the two basis walks.
pub fn side_gram_series(t_max: usize) -> Vec<SideGram> {
    let h = CoinMatrix::hadamard();
    let mut from_l = WalkState1D::localized(&CoinState1::left());
    let mut from_r = WalkState1D::localized(&CoinState1::right());
    let mut out = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        out.push(SideGram::from_amplitudes(&SourceAmplitudes::from_states(&from_l, &from_r)));
        if t < t_max {
            from_l = from_l.step(&h);
            from_r = from_r.step(&h);
        }
    }
    out
}

#[derive(Clone, Debug)]
enum Backing {
    Product {
        dists: Vec<Vec<f64>>,
        sides: Vec<(f64, f64)>,
    },
    Coherent {
        coin: Vec<Complex64>,
        amps: SourceAmplitudes,
    },
}

/// Joint position distribution `p(m_1, .., m_M, t)` of distinguishable walkers.
#[derive(Clone, Debug)]
pub struct JointAccessor {
    m: usize,
    t: usize,
    backing: Backing,
}

impl JointAccessor {
    /// Coin-vector backed accessor; works for every distinguishable kind.
    pub fn coherent(spec: &InitialCoinSpec, t: usize) -> Result<Self> {
        Ok(Self {
            m: spec.m,
            t,
            backing: Backing::Coherent {
                coin: spec.coin_vector()?,
                amps: SourceAmplitudes::new(t),
            },
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn probability(&self, sites: &[i64]) -> Result<f64> {
        if sites.len() != self.m {
            return Err(Error::SiteArity {
                expected: self.m,
                got: sites.len(),
            });
        }
        let t = self.t as i64;
        if sites.iter().any(|&s| s < -t || s > t) {
            return Ok(0.0);
        }
        Ok(match &self.backing {
            Backing::Product { dists, .. } => sites
                .iter()
                .zip(dists)
                .map(|(&s, d)| d[(s + t) as usize])
                .product(),
            Backing::Coherent { coin, amps } => {
                let mut v = coin.clone();
                for (axis, &s) in sites.iter().enumerate() {
                    apply_on_axis(&mut v, self.m, axis, &amps.site_matrix(s));
                }
                v.iter().map(|z| z.norm_sqr()).sum()
            }
        })
    }

    /// Same-side probability by the factorized routes: side products for
    /// separable specs, side Gram matrices otherwise.
    pub fn sameside(&self) -> f64 {
        match &self.backing {
            Backing::Product { sides, .. } => {
                sides.iter().map(|s| s.0).product::<f64>() + sides.iter().map(|s| s.1).product::<f64>()
            }
            Backing::Coherent { coin, amps } => SideGram::from_amplitudes(amps).sameside(coin),
        }
    }

    /// Same-side probability by explicit enumeration of both orthants.
    pub fn orthant_sum(&self) -> f64 {
        let t = self.t as i64;
        self.box_sum(-t, 0) + self.box_sum(1, t)
    }

    /// Sum over the full box `[-t, t]^M`.
    pub fn total_mass(&self) -> f64 {
        let t = self.t as i64;
        self.box_sum(-t, t)
    }

    fn box_sum(&self, lo: i64, hi: i64) -> f64 {
        if lo > hi {
            return 0.0;
        }
        let mut sites = vec![lo; self.m];
        let mut total = 0.0;
        loop {
            total += self.probability(&sites).expect("arity matches");
            let mut i = self.m;
            loop {
                if i == 0 {
                    return total;
                }
                i -= 1;
                if sites[i] < hi {
                    sites[i] += 1;
                    break;
                }
                sites[i] = lo;
            }
        }
    }
}

/// Product distribution of a separable spec.
pub fn joint_separable(spec: &InitialCoinSpec, t: usize) -> Result<JointAccessor> {
    let CoinKind::Separable(states) = &spec.kind else {
        return Err(Error::WrongKind {
            expected: "a separable spec",
        });
    };
    let h = CoinMatrix::hadamard();
    let walks: Vec<WalkState1D> = states.iter().map(|s| line::evolve(s, t, &h)).collect();
    Ok(JointAccessor {
        m: spec.m,
        t,
        backing: Backing::Product {
            dists: walks.iter().map(|w| w.distribution()).collect(),
            sides: walks.iter().map(|w| w.side_probabilities()).collect(),
        },
    })
}

/// Bell-type joint probability from single-particle amplitude products.
pub fn joint_bell(spec: &InitialCoinSpec, t: usize, sites: &[i64]) -> Result<f64> {
    require_bell(spec)?;
    JointAccessor::coherent(spec, t)?.probability(sites)
}

fn require_bell(spec: &InitialCoinSpec) -> Result<Sign> {
    match spec.kind {
        CoinKind::BellPsi(s) | CoinKind::BellPhi(s) => Ok(s),
        _ => Err(Error::WrongKind {
            expected: "a Bell-type spec",
        }),
    }
}

/// Two-particle Bell probability in its expanded form:
/// `(p^{P1} + p^{P2}) / 2 +- phi(m1) phi(m2)`, with `P1, P2 = LR, RL` for
/// `psi` and `LL, RR` for `phi`.
pub fn joint_bell_expanded(spec: &InitialCoinSpec, amps: &SourceAmplitudes, sites: &[i64]) -> Result<f64> {
    let sign = require_bell(spec)?;
    if spec.m != 2 {
        return Err(Error::ParticleCount(spec.m));
    }
    if sites.len() != 2 {
        return Err(Error::SiteArity {
            expected: 2,
            got: sites.len(),
        });
    }
    let (m1, m2) = (sites[0], sites[1]);
    let (l, r) = (Chirality::L, Chirality::R);
    let p = |s, m| amps.distribution(s, m);
    let direct = match spec.kind {
        CoinKind::BellPsi(_) => 0.5 * (p(l, m1) * p(r, m2) + p(r, m1) * p(l, m2)),
        _ => 0.5 * (p(l, m1) * p(l, m2) + p(r, m1) * p(r, m2)),
    };
    Ok(direct + sign.factor() * amps.phi(m1) * amps.phi(m2))
}

/// Cross term of the Bell-type decomposition of the same-side probability.
#[derive(Clone, Debug, PartialEq)]
pub struct InterferenceTerm {
    /// `(phi-)^M + (phi+)^M`.
    pub total: f64,
    /// `sum_{m <= 0} phi(m, t)`.
    pub phi_minus: f64,
    /// `sum_{m >= 1} phi(m, t)`.
    pub phi_plus: f64,
    /// `phi(m, t)` for `m` in `[-t, t]`.
    pub phi: Vec<f64>,
}

impl InterferenceTerm {
    pub fn from_amplitudes(m: usize, amps: &SourceAmplitudes) -> Self {
        let t = amps.t as i64;
        let phi: Vec<f64> = (-t..=t).map(|x| amps.phi(x)).collect();
        let (phi_minus, phi_plus) = side_sums(&phi, amps.t);
        let power = m as i32;
        Self {
            total: phi_minus.powi(power) + phi_plus.powi(power),
            phi_minus,
            phi_plus,
            phi,
        }
    }
}

/// `I(t)` with its half-line sums. The identity
/// `P^{psi+-}_same = P^{LR}_same +- I(t)` is exact for `M = 2`.
pub fn interference_term(m: usize, t: usize) -> InterferenceTerm {
    InterferenceTerm::from_amplitudes(m, &SourceAmplitudes::new(t))
}

/// Same-side probability of walkers started in the basis chiralities of
/// `pattern`, e.g. `P^{LR}_same`.
pub fn pattern_sameside(pattern: &[Chirality], amps: &SourceAmplitudes) -> f64 {
    let t = amps.t as i64;
    let side = |source: Chirality| -> (f64, f64) {
        let dist: Vec<f64> = (-t..=t).map(|x| amps.distribution(source, x)).collect();
        side_sums(&dist, amps.t)
    };
    let (l, r) = (side(Chirality::L), side(Chirality::R));
    let pick = |c: &Chirality| if *c == Chirality::L { l } else { r };
    pattern.iter().map(|c| pick(c).0).product::<f64>() + pattern.iter().map(|c| pick(c).1).product::<f64>()
}

/// Same-side probability of distinguishable walkers.
pub fn sameside_distinguishable(accessor: &JointAccessor) -> f64 {
    accessor.sameside()
}

/// Joint detection probabilities of indistinguishable walkers started at
/// the origin in the alternating coin configuration.
#[derive(Clone, Debug)]
pub struct IndistinguishableAccessor {
    m: usize,
    t: usize,
    stats: Statistics,
    patterns: Vec<(Vec<Chirality>, f64)>,
    amps: SourceAmplitudes,
}

impl IndistinguishableAccessor {
    pub fn new(spec: &InitialCoinSpec, t: usize) -> Result<Self> {
        let stats = spec.statistics().ok_or(Error::WrongKind {
            expected: "a boson or fermion spec",
        })?;
        Ok(Self {
            m: spec.m,
            t,
            stats,
            patterns: spec.signed_patterns()?,
            amps: SourceAmplitudes::new(t),
        })
    }

    pub fn statistics(&self) -> Statistics {
        self.stats
    }

    /// Probability of detecting one particle at each of the non-increasing
    /// sites `m_1 >= .. >= m_M`.
    ///
    /// Sums `|A(r)|^2 / prod n!` over mode assignments `r`, where `A` is the
    /// (anti)symmetrized pattern amplitude and `n` the occupation of each
    /// `(site, chirality)` mode. Assignments that only permute particles
    /// within one site are counted once.
    pub fn probability(&self, sites: &[i64]) -> Result<f64> {
        if sites.len() != self.m {
            return Err(Error::SiteArity {
                expected: self.m,
                got: sites.len(),
            });
        }
        if sites.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::UnorderedSites);
        }
        let t = self.t as i64;
        if sites.iter().any(|&s| s < -t || s > t) {
            return Ok(0.0);
        }
        let m = self.m;
        let mut total = 0.0;
        for r_index in 0..1usize << m {
            let r = pattern_from_index(r_index, m);
            if (0..m - 1).any(|i| sites[i] == sites[i + 1] && r[i].index() > r[i + 1].index()) {
                continue;
            }
            let mut amp = ZERO;
            for (pattern, coeff) in &self.patterns {
                let prod: Complex64 = (0..m).map(|i| self.amps.get(pattern[i], r[i], sites[i])).product();
                amp += prod * coeff;
            }
            total += amp.norm_sqr() / occupation_factorials(sites, &r);
        }
        Ok(total)
    }

    /// Probability for an unordered site list.
    pub fn probability_of_multiset(&self, sites: &[i64]) -> Result<f64> {
        let mut sorted = sites.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        self.probability(&sorted)
    }

    /// Same-side probability summed over non-increasing tuples of each half-line.
    pub fn sameside(&self) -> f64 {
        let t = self.t as i64;
        let mut total = 0.0;
        for (lo, hi) in [(-t, 0), (1, t)] {
            for_each_ordered_tuple(self.m, lo, hi, &mut |sites| {
                total += self.probability(sites).expect("tuples are ordered");
            });
        }
        total
    }
}

fn occupation_factorials(sites: &[i64], r: &[Chirality]) -> f64 {
    let mut prod = 1.0;
    let mut i = 0;
    while i < sites.len() {
        let mut j = i;
        while j + 1 < sites.len() && sites[j + 1] == sites[i] && r[j + 1] == r[i] {
            j += 1;
        }
        prod *= (1..=(j - i + 1)).map(|k| k as f64).product::<f64>();
        i = j + 1;
    }
    prod
}

/// Visits every `m_1 >= m_2 >= .. >= m_M` with entries in `[lo, hi]`.
pub fn for_each_ordered_tuple(m: usize, lo: i64, hi: i64, visit: &mut dyn FnMut(&[i64])) {
    fn rec(buf: &mut Vec<i64>, m: usize, lo: i64, upper: i64, visit: &mut dyn FnMut(&[i64])) {
        if buf.len() == m {
            visit(buf);
            return;
        }
        for v in (lo..=upper).rev() {
            buf.push(v);
            rec(buf, m, lo, v, visit);
            buf.pop();
        }
    }
    if lo <= hi {
        rec(&mut Vec::with_capacity(m), m, lo, hi, visit);
    }
}

pub fn joint_indistinguishable(spec: &InitialCoinSpec, t: usize, sites: &[i64]) -> Result<f64> {
    IndistinguishableAccessor::new(spec, t)?.probability(sites)
}

pub fn sameside_indistinguishable(spec: &InitialCoinSpec, t: usize) -> Result<f64> {
    Ok(IndistinguishableAccessor::new(spec, t)?.sameside())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::chi_eigenstates;

    fn two_left() -> InitialCoinSpec {
        InitialCoinSpec::separable(vec![CoinState1::left(); 2]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            InitialCoinSpec::new(1, CoinKind::Boson),
            Err(Error::ParticleCount(1))
        ));
        assert!(InitialCoinSpec::new(3, CoinKind::Separable(vec![CoinState1::left(); 2])).is_err());
        let bad = vec![Complex64::new(1.0, 0.0); 4];
        assert!(matches!(
            InitialCoinSpec::new(2, CoinKind::General(bad)),
            Err(Error::NotNormalized(_))
        ));
        assert!(InitialCoinSpec::new(2, CoinKind::General(vec![Complex64::new(1.0, 0.0); 2])).is_err());
    }

    #[test]
    fn patterns_deduplicate() {
        use Chirality::{L, R};
        assert_eq!(alternating_patterns(2), vec![vec![L, R], vec![R, L]]);
        assert_eq!(alternating_patterns(3), vec![vec![L, R, L], vec![R, L, R]]);
        assert_eq!(
            alternating_patterns(4),
            vec![vec![L, R, L, R], vec![R, L, R, L], vec![L, R, R, L], vec![R, L, L, R]]
        );
    }

    #[test]
    fn two_particle_bell_vectors_are_standard() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi_minus = InitialCoinSpec::new(2, CoinKind::BellPsi(Sign::Minus)).unwrap();
        let v = psi_minus.coin_vector().unwrap();
        let expect = [0.0, h, -h, 0.0];
        for (z, e) in v.iter().zip(expect) {
            assert!((z.re - e).abs() < 1e-15 && z.im == 0.0);
        }
        let phi_plus = InitialCoinSpec::new(2, CoinKind::BellPhi(Sign::Plus)).unwrap();
        let v = phi_plus.coin_vector().unwrap();
        assert!((v[0].re - h).abs() < 1e-15 && (v[3].re - h).abs() < 1e-15);
        let four = InitialCoinSpec::new(4, CoinKind::BellPsi(Sign::Plus)).unwrap();
        let n: f64 = four.coin_vector().unwrap().iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-15);
    }

    #[test]
    fn separable_joint_small_t() {
        let acc = joint_separable(&two_left(), 0).unwrap();
        assert_eq!(acc.probability(&[0, 0]).unwrap(), 1.0);
        let acc = joint_separable(&two_left(), 2).unwrap();
        assert!((acc.probability(&[-2, -2]).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        assert_eq!(acc.probability(&[5, 0]).unwrap(), 0.0);
        assert!(acc.probability(&[0]).is_err());
        let bell = InitialCoinSpec::new(2, CoinKind::BellPsi(Sign::Plus)).unwrap();
        assert!(joint_separable(&bell, 2).is_err());
    }

    #[test]
    fn separable_marginal_is_single_particle() {
        let t = 10;
        let acc = joint_separable(&two_left(), t).unwrap();
        let single = line::evolve(&CoinState1::left(), t, &CoinMatrix::hadamard()).distribution();
        for m1 in -(t as i64)..=t as i64 {
            let marg: f64 = (-(t as i64)..=t as i64).map(|m2| acc.probability(&[m1, m2]).unwrap()).sum();
            assert!((marg - single[(m1 + t as i64) as usize]).abs() < 1e-12);
        }
    }

    #[test]
    fn coherent_and_product_routes_agree() {
        let (chi_p, _) = chi_eigenstates();
        let spec = InitialCoinSpec::separable(vec![CoinState1::left(), chi_p, CoinState1::symmetric()]).unwrap();
        for t in [0usize, 3, 8] {
            let prod = joint_separable(&spec, t).unwrap();
            let coh = JointAccessor::coherent(&spec, t).unwrap();
            for sites in [[0, 0, 0], [-1, 1, 3], [t as i64, -(t as i64), 0]] {
                let a = prod.probability(&sites).unwrap();
                let b = coh.probability(&sites).unwrap();
                assert!((a - b).abs() < 1e-14, "t={t} {sites:?}");
            }
            assert!((prod.sameside() - coh.sameside()).abs() < 1e-13);
        }
    }

    #[test]
    fn sameside_at_origin_is_one() {
        for kind in [
            CoinKind::BellPsi(Sign::Minus),
            CoinKind::BellPhi(Sign::Plus),
            CoinKind::Separable(vec![CoinState1::right(); 2]),
        ] {
            let spec = InitialCoinSpec::new(2, kind).unwrap();
            let acc = JointAccessor::coherent(&spec, 0).unwrap();
            assert!((acc.sameside() - 1.0).abs() < 1e-15);
            assert!((acc.orthant_sum() - 1.0).abs() < 1e-15);
        }
        let bosons = InitialCoinSpec::new(2, CoinKind::Boson).unwrap();
        assert!((sameside_indistinguishable(&bosons, 0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_psi_at_origin() {
        let spec = InitialCoinSpec::new(2, CoinKind::BellPsi(Sign::Plus)).unwrap();
        assert!((joint_bell(&spec, 0, &[0, 0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(joint_bell(&spec, 0, &[1, 0]).unwrap(), 0.0);
        assert!(joint_bell(&two_left(), 0, &[0, 0]).is_err());
    }

    #[test]
    fn expanded_bell_matches_amplitude_route() {
        let t = 12;
        let amps = SourceAmplitudes::new(t);
        for kind in [
            CoinKind::BellPsi(Sign::Plus),
            CoinKind::BellPsi(Sign::Minus),
            CoinKind::BellPhi(Sign::Plus),
            CoinKind::BellPhi(Sign::Minus),
        ] {
            let spec = InitialCoinSpec::new(2, kind).unwrap();
            let acc = JointAccessor::coherent(&spec, t).unwrap();
            for m1 in -12..=12 {
                for m2 in -12..=12 {
                    let a = acc.probability(&[m1, m2]).unwrap();
                    let b = joint_bell_expanded(&spec, &amps, &[m1, m2]).unwrap();
                    assert!((a - b).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn interference_at_origin() {
        let i0 = interference_term(2, 0);
        // phi(0, 0) = psi^L_L psi^R_L + psi^L_R psi^R_R = 1*0 + 0*1
        assert_eq!(i0.phi, vec![0.0]);
        assert_eq!(i0.total, 0.0);
        let amps = SourceAmplitudes::new(0);
        assert!((pattern_sameside(&[Chirality::L, Chirality::R], &amps) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn three_particle_factorization_identity() {
        let spec = InitialCoinSpec::separable(vec![CoinState1::left(); 3]).unwrap();
        for t in 0..=8 {
            let acc = joint_separable(&spec, t).unwrap();
            assert!((acc.orthant_sum() - acc.sameside()).abs() < 1e-12);
        }
    }

    #[test]
    fn indistinguishable_rejects_unordered_sites() {
        let spec = InitialCoinSpec::new(2, CoinKind::Fermion).unwrap();
        assert!(matches!(
            joint_indistinguishable(&spec, 3, &[-1, 1]),
            Err(Error::UnorderedSites)
        ));
        assert!(joint_indistinguishable(&two_left(), 3, &[1, -1]).is_err());
    }

    #[test]
    fn fermions_never_share_a_mode() {
        let spec = InitialCoinSpec::new(2, CoinKind::Fermion).unwrap();
        let t = 9;
        let acc = IndistinguishableAccessor::new(&spec, t).unwrap();
        let amps = SourceAmplitudes::new(t);
        let (l, r) = (Chirality::L, Chirality::R);
        for m in -(t as i64)..=t as i64 {
            // only the (L, R) mode pair survives at a shared site
            let det = amps.get(l, l, m) * amps.get(r, r, m) - amps.get(l, r, m) * amps.get(r, l, m);
            let p = acc.probability(&[m, m]).unwrap();
            assert!((p - det.norm_sqr()).abs() < 1e-15);
        }
    }

    #[test]
    fn multiset_probability_is_permutation_invariant() {
        let spec = InitialCoinSpec::new(3, CoinKind::Boson).unwrap();
        let acc = IndistinguishableAccessor::new(&spec, 6).unwrap();
        let base = acc.probability(&[4, 0, -2]).unwrap();
        for perm in [[0, 4, -2], [-2, 4, 0], [-2, 0, 4], [4, -2, 0], [0, -2, 4]] {
            assert_eq!(acc.probability_of_multiset(&perm).unwrap(), base);
        }
    }

    #[test]
    fn ordered_tuple_enumeration_counts() {
        let mut n = 0;
        for_each_ordered_tuple(2, -3, 0, &mut |s| {
            assert!(s[0] >= s[1]);
            n += 1;
        });
        assert_eq!(n, 10);
        let mut n3 = 0;
        for_each_ordered_tuple(3, 1, 4, &mut |_| n3 += 1);
        assert_eq!(n3, 20);
    }

    #[test]
    fn gram_series_matches_direct_gram() {
        let series = side_gram_series(6);
        for (t, g) in series.iter().enumerate() {
            let direct = SideGram::from_amplitudes(&SourceAmplitudes::new(t));
            assert_eq!(*g, direct);
        }
    }
}
