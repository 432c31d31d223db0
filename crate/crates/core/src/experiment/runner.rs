//! Dispatch of configured experiments to the library modules.

use num_complex::Complex64;

use super::config::{Experiment, ExperimentConfig, Format};
use super::report::{norm, plain, prob, ExperimentReport, Value};
use crate::asymptotics::{self, WeakLimitSpec, SUPPORT_EDGE};
use crate::coin::{CoinMatrix, CoinState1};
use crate::delta::{self, DeltaEvolutionSpec, ShiftModel, WalkState2D, SEPARABLE_BOUND};
use crate::error::Result;
use crate::fourier::{self, SpectralPropagator};
use crate::line::{Chirality, WalkState1D};
use crate::multiparticle::{
    alternating_patterns, uniform_patterns, CoinKind, IndistinguishableAccessor, InitialCoinSpec,
    InterferenceTerm, SideGram, Sign, SourceAmplitudes,
};

/// Largest deviation accepted by the exact identities checked during runs.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Largest spectral-vs-direct amplitude error accepted by `fourier-check`.
pub const FOURIER_TOL: f64 = 1e-10;

/// Runs an experiment. Library errors surface as `Err`; identity and range
/// violations are recorded in [`ExperimentReport::violations`].
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut report = match cfg.experiment {
        Experiment::Single => run_single(cfg),
        Experiment::Sameside => run_sameside(cfg),
        Experiment::Bell => run_bell(cfg),
        Experiment::Indist => run_indist(cfg)?,
        Experiment::Asymptote => run_asymptote(cfg),
        Experiment::Delta => run_delta(cfg)?,
        Experiment::FourierCheck => run_fourier(cfg)?,
        Experiment::Scan => run_scan(cfg)?,
    };
    report.check_fields();
    Ok(report)
}

pub fn render(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    }
}

fn initial(cfg: &ExperimentConfig) -> &super::config::InitialState {
    cfg.initial.as_ref().expect("validated config carries an initial state")
}

fn coin_vector(cfg: &ExperimentConfig, m: usize) -> Vec<Complex64> {
    initial(cfg).coin_vector(m).expect("validated initial state")
}

fn run_single(cfg: &ExperimentConfig) -> ExperimentReport {
    let state = initial(cfg).single().expect("validated initial state");
    let (lim_minus, lim_plus) = asymptotics::side_limits(&state);
    let mut report = ExperimentReport::new(
        cfg.raw.clone(),
        vec![
            plain("t"),
            prob("p_minus"),
            prob("p_plus"),
            prob("p_minus_limit"),
            norm("norm"),
            plain("peak_x"),
            prob("peak_p"),
        ],
    );
    let h = CoinMatrix::hadamard();
    let mut walk = WalkState1D::localized(&state);
    for t in 0..=cfg.t_max {
        let (m, p) = walk.side_probabilities();
        let (px, pp) = walk.peak();
        report.push(vec![
            t.into(),
            m.into(),
            p.into(),
            lim_minus.into(),
            walk.norm_sqr().into(),
            px.into(),
            pp.into(),
        ]);
        if t < cfg.t_max {
            walk = walk.step(&h);
        }
    }
    report.summarize("p_minus_limit", lim_minus);
    report.summarize("p_plus_limit", lim_plus);
    report
}

fn run_sameside(cfg: &ExperimentConfig) -> ExperimentReport {
    let v = coin_vector(cfg, cfg.m);
    let limit = asymptotics::sameside_limit_general(&WeakLimitSpec::new(cfg.m, v.clone()).expect("validated vector"));
    let mut report = ExperimentReport::new(
        cfg.raw.clone(),
        vec![plain("t"), prob("p_sameside"), prob("asymptote")],
    );
    let mut last = 1.0;
    for (t, gram) in crate::multiparticle::side_gram_series(cfg.t_max).iter().enumerate() {
        last = gram.sameside(&v);
        report.push(vec![t.into(), last.into(), limit.into()]);
    }
    report.summarize("asymptote", limit);
    report.summarize("final_p_sameside", last);
    report.summarize("final_deviation", last - limit);
    report
}

fn bell_vector(m: usize, kind: CoinKind) -> Vec<Complex64> {
    InitialCoinSpec::new(m, kind)
        .and_then(|s| s.coin_vector())
        .expect("Bell kinds are valid for M >= 2")
}

fn run_bell(cfg: &ExperimentConfig) -> ExperimentReport {
    let m = cfg.m;
    let states = [
        ("psi_plus", CoinKind::BellPsi(Sign::Plus)),
        ("psi_minus", CoinKind::BellPsi(Sign::Minus)),
        ("phi_plus", CoinKind::BellPhi(Sign::Plus)),
        ("phi_minus", CoinKind::BellPhi(Sign::Minus)),
    ];
    let vectors: Vec<Vec<Complex64>> = states.iter().map(|(_, k)| bell_vector(m, k.clone())).collect();
    let mut report = ExperimentReport::new(
        cfg.raw.clone(),
        vec![
            plain("t"),
            prob("p_alternating"),
            prob("p_uniform"),
            plain("interference"),
            plain("phi_minus"),
            plain("phi_plus"),
            prob("p_psi_plus"),
            prob("p_psi_minus"),
            prob("p_phi_plus"),
            prob("p_phi_minus"),
        ],
    );
    let alternating = &alternating_patterns(m)[0];
    let [all_l, all_r] = <[Vec<Chirality>; 2]>::try_from(uniform_patterns(m)).expect("two patterns");
    let h = CoinMatrix::hadamard();
    let mut from_l = WalkState1D::localized(&CoinState1::left());
    let mut from_r = WalkState1D::localized(&CoinState1::right());
    let mut worst: f64 = 0.0;
    for t in 0..=cfg.t_max {
        let amps = SourceAmplitudes::from_states(&from_l, &from_r);
        let gram = SideGram::from_amplitudes(&amps);
        let it = InterferenceTerm::from_amplitudes(m, &amps);
        let p_alt = crate::multiparticle::pattern_sameside(alternating, &amps);
        let p_uni = 0.5
            * (crate::multiparticle::pattern_sameside(&all_l, &amps)
                + crate::multiparticle::pattern_sameside(&all_r, &amps));
        let p: Vec<f64> = vectors.iter().map(|v| gram.sameside(v)).collect();
        if m == 2 {
            let dev = [
                p[0] - (p_alt + it.total),
                p[1] - (p_alt - it.total),
                p[2] - (p_uni + it.total),
                p[3] - (p_uni - it.total),
            ]
            .iter()
            .fold(0.0f64, |a, d| a.max(d.abs()));
            worst = worst.max(dev);
            if dev > IDENTITY_TOL {
                report.violation(format!("t = {t}: Bell decomposition off by {dev:e}"));
            }
        }
        report.push(vec![
            t.into(),
            p_alt.into(),
            p_uni.into(),
            it.total.into(),
            it.phi_minus.into(),
            it.phi_plus.into(),
            p[0].into(),
            p[1].into(),
            p[2].into(),
            p[3].into(),
        ]);
        if t < cfg.t_max {
            from_l = from_l.step(&h);
            from_r = from_r.step(&h);
        }
    }
    for ((name, _), v) in states.iter().zip(&vectors) {
        let spec = WeakLimitSpec::new(m, v.clone()).expect("normalized Bell vector");
        report.summarize(&format!("limit_{name}"), asymptotics::sameside_limit_general(&spec));
    }
    if m == 2 {
        report.summarize("max_decomposition_error", worst);
    }
    report
}

fn run_indist(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let m = cfg.m;
    let mut report = ExperimentReport::new(
        cfg.raw.clone(),
        vec![
            plain("t"),
            prob("p_boson"),
            prob("p_psi_plus"),
            prob("p_fermion"),
            prob("p_psi_minus"),
        ],
    );
    let bosons = InitialCoinSpec::new(m, CoinKind::Boson)?;
    let fermions = InitialCoinSpec::new(m, CoinKind::Fermion)?;
    let psi_plus = bosons.bell_equivalent()?.coin_vector()?;
    let psi_minus = fermions.bell_equivalent()?.coin_vector()?;
    let grams = crate::multiparticle::side_gram_series(cfg.t_max);
    let mut worst: f64 = 0.0;
    for (t, gram) in grams.iter().enumerate() {
        let pb = IndistinguishableAccessor::new(&bosons, t)?.sameside();
        let pf = IndistinguishableAccessor::new(&fermions, t)?.sameside();
        let (pp, pm) = (gram.sameside(&psi_plus), gram.sameside(&psi_minus));
        if m == 2 {
            let dev = (pb - pp).abs().max((pf - pm).abs());
            worst = worst.max(dev);
            if dev > IDENTITY_TOL {
                report.violation(format!("t = {t}: exchange identity off by {dev:e}"));
            }
        }
        report.push(vec![t.into(), pb.into(), pp.into(), pf.into(), pm.into()]);
    }
    if m == 2 {
        report.summarize("max_identity_error", worst);
    }
    Ok(report)
}

/// Nodes per half-axis for the direct orthant quadrature.
fn direct_nodes(m: usize) -> usize {
    match m {
        1 => 2048,
        2 => 256,
        _ => 24,
    }
}

fn run_asymptote(cfg: &ExperimentConfig) -> ExperimentReport {
    let m = cfg.m;
    let v = coin_vector(cfg, m);
    let spec = WeakLimitSpec::new(m, v).expect("validated vector");
    let separable: Option<Vec<CoinState1>> = match initial(cfg) {
        super::config::InitialState::Single(s) => Some(vec![*s; m]),
        super::config::InitialState::Separable(states) => Some(states.clone()),
        _ => None,
    };
    let mut columns = vec![plain("q"), plain("density")];
    if separable.is_some() {
        columns.push(plain("reference"));
    }
    let mut report = ExperimentReport::new(cfg.raw.clone(), columns);
    let n = cfg.grid.expect("asymptote has a sample count");
    for j in 0..n {
        // midpoints keep every sample inside the open support
        let q = SUPPORT_EDGE * (-1.0 + (2 * j + 1) as f64 / n as f64);
        let qs = vec![q; m];
        let density = asymptotics::weak_limit_density(&spec, &qs).expect("sample inside support");
        let mut record: Vec<Value> = vec![q.into(), density.into()];
        if let Some(states) = &separable {
            let reference: f64 = states
                .iter()
                .map(|s| asymptotics::konno_density(q, s).expect("sample inside support"))
                .product();
            record.push(reference.into());
        }
        report.push(record);
    }
    let limit = asymptotics::sameside_limit_general(&spec);
    let nodes = direct_nodes(m);
    let (neg, pos) = asymptotics::orthant_integrals_direct(&spec, nodes);
    let total = asymptotics::total_integral(&spec, nodes);
    report.summarize("sameside_limit", limit);
    report.summarize("orthant_minus_direct", neg);
    report.summarize("orthant_plus_direct", pos);
    report.summarize("total_integral", total);
    report.summarize("direct_nodes_per_half_axis", nodes);
    if let Some(states) = &separable {
        let coords: Vec<_> = states.iter().map(crate::coin::to_hadamard_basis).collect();
        report.summarize("separable_closed_form", asymptotics::sameside_limit_separable(&coords));
    }
    if (total - 1.0).abs() > 1e-6 {
        report.violation(format!("density integrates to {total}"));
    }
    if (neg + pos - limit).abs() > 1e-6 {
        report.violation(format!("orthant quadrature {} differs from {limit}", neg + pos));
    }
    report
}

fn chirality4(cfg: &ExperimentConfig) -> [Complex64; 4] {
    let v = coin_vector(cfg, 2);
    [v[0], v[1], v[2], v[3]]
}

fn run_delta(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let c = chirality4(cfg);
    let spec = DeltaEvolutionSpec::new(CoinMatrix::hadamard_pair(), CoinMatrix::cdelta(), cfg.shift)?;
    let free = DeltaEvolutionSpec::uniform(CoinMatrix::hadamard_pair(), cfg.shift)?;
    let mut free_series = Vec::with_capacity(cfg.t_max + 1);
    delta::evolve_with(c, cfg.t_max, &free, |s| free_series.push(s.sameside_2p()))?;
    let mut report = ExperimentReport::new(
        cfg.raw.clone(),
        vec![
            plain("t"),
            prob("p_sameside"),
            prob("p_sameside_uniform"),
            norm("norm"),
            plain("peak_x"),
            plain("peak_y"),
            prob("peak_p"),
        ],
    );
    let mut series = Vec::with_capacity(cfg.t_max + 1);
    delta::evolve_with(c, cfg.t_max, &spec, |s: &WalkState2D| {
        let t = s.t();
        let p = s.sameside_2p();
        let ((px, py), pp) = s.peak();
        series.push(p);
        report.push(vec![
            t.into(),
            p.into(),
            free_series[t].into(),
            s.norm_sqr().into(),
            px.into(),
            py.into(),
            pp.into(),
        ]);
    })?;
    let tail = &series[cfg.t_max - cfg.t_max / 4..];
    let tail_mean = tail.iter().sum::<f64>() / tail.len() as f64;
    report.summarize("tail_mean", tail_mean);
    report.summarize("separable_bound", SEPARABLE_BOUND);
    report.summarize("tail_mean_exceeds_bound", tail_mean > SEPARABLE_BOUND);
    Ok(report)
}

fn run_fourier(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let c = chirality4(cfg);
    let n = cfg.grid.expect("fourier-check has a grid");
    let uniform = DeltaEvolutionSpec::uniform(CoinMatrix::cdelta(), ShiftModel::Axial)?;
    let f0 = fourier::forward_transform(&WalkState2D::localized(c)?, n)?;
    let propagator = SpectralPropagator::new(n)?;
    let mut report = ExperimentReport::new(
        cfg.raw.clone(),
        vec![plain("t"), plain("max_error"), norm("plancherel_norm"), norm("direct_norm")],
    );
    let mut worst: f64 = 0.0;
    let mut failure = None;
    delta::evolve_with(c, cfg.t_max, &uniform, |direct| {
        let t = direct.t();
        let outcome = propagator
            .propagate(&f0, t)
            .and_then(|ft| Ok((ft.plancherel_norm(), fourier::inverse_transform(&ft)?)));
        match outcome {
            Ok((pn, spectral)) => {
                let err = spectral
                    .compact_amplitudes()
                    .iter()
                    .zip(direct.compact_amplitudes())
                    .flat_map(|(a, b)| (0..4).map(move |k| (a[k] - b[k]).norm()))
                    .fold(0.0, f64::max);
                worst = worst.max(err);
                report.push(vec![t.into(), err.into(), pn.into(), direct.norm_sqr().into()]);
            }
            Err(e) => failure = failure.take().or(Some(e)),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    report.summarize("max_error", worst);
    report.summarize("tolerance", FOURIER_TOL);
    report.summarize("pass", worst <= FOURIER_TOL);
    if worst > FOURIER_TOL {
        report.violation(format!("spectral propagation differs from direct evolution by {worst:e}"));
    }
    Ok(report)
}

fn run_scan(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let spec = DeltaEvolutionSpec::new(CoinMatrix::hadamard_pair(), CoinMatrix::cdelta(), cfg.shift)?;
    let scan = delta::scan_delta_initial_states(cfg.grid.expect("scan has a resolution"), cfg.t_max, &spec)?;
    let mut report = ExperimentReport::new(
        cfg.raw.clone(),
        vec![
            plain("index"),
            plain("alpha"),
            plain("beta"),
            plain("gamma"),
            plain("c_ll"),
            plain("c_lr"),
            plain("c_rl"),
            plain("c_rr"),
            plain("separable"),
            prob("p_final"),
            prob("tail_mean"),
            prob("tail_max"),
        ],
    );
    let tail_start = cfg.t_max - cfg.t_max / 4;
    let mut separable_tail_max = f64::NEG_INFINITY;
    for (i, p) in scan.points.iter().enumerate() {
        let tail_max = p.sameside[tail_start..].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if p.separable {
            separable_tail_max = separable_tail_max.max(tail_max);
        }
        report.push(vec![
            i.into(),
            p.angles.0.into(),
            p.angles.1.into(),
            p.angles.2.into(),
            p.chirality[0].into(),
            p.chirality[1].into(),
            p.chirality[2].into(),
            p.chirality[3].into(),
            p.separable.into(),
            (*p.sameside.last().expect("series is non-empty")).into(),
            p.tail_mean.into(),
            tail_max.into(),
        ]);
    }
    let best = &scan.points[scan.best_tail];
    report.summarize("points", scan.points.len());
    report.summarize("running_max_final", *scan.running_max.last().expect("non-empty"));
    report.summarize("best_tail_index", scan.best_tail);
    report.summarize("best_tail_mean", best.tail_mean);
    report.summarize("separable_tail_max", separable_tail_max);
    report.summarize("sphere_max_real", scan.sphere_max_real);
    report.summarize("sphere_max_complex", scan.sphere_max_complex);
    report.summarize("separable_bound", SEPARABLE_BOUND);
    report.summarize("best_tail_mean_exceeds_bound", best.tail_mean > SEPARABLE_BOUND);
    Ok(report)
}
