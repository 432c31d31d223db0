//! Two walkers in Bell coin states. The joint distribution splits into the
//! mean of two product patterns plus or minus an interference term.
//!
//! ```text
//! cargo run --example bell_interference -- 30
//! ```

use qwalk::multiparticle::{interference_term, joint_bell, joint_bell_expanded, SourceAmplitudes};
use qwalk::{CoinKind, InitialCoinSpec, JointAccessor, Sign};

fn main() {
    let t: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let term = interference_term(2, t);
    println!("t = {t}");
    println!("interference I = {:+.6} (phi_minus {:+.6}, phi_plus {:+.6})", term.total, term.phi_minus, term.phi_plus);

    let amps = SourceAmplitudes::new(t);
    let sites = [on_lattice(-(t as i64) / 2, t), on_lattice(t as i64 / 3, t)];
    for (name, kind) in [
        ("psi+", CoinKind::BellPsi(Sign::Plus)),
        ("psi-", CoinKind::BellPsi(Sign::Minus)),
        ("phi+", CoinKind::BellPhi(Sign::Plus)),
        ("phi-", CoinKind::BellPhi(Sign::Minus)),
    ] {
        let spec = InitialCoinSpec::new(2, kind).expect("bell state");
        let direct = joint_bell(&spec, t, &sites).expect("two sites");
        let expanded = joint_bell_expanded(&spec, &amps, &sites).expect("two sites");
        let sameside = JointAccessor::coherent(&spec, t).expect("bell state").sameside();
        println!(
            "{name}: p{sites:?} = {direct:.6e} (expanded {expanded:.6e}), same side {sameside:.6}"
        );
    }
}

/// Nearest site at or below `x` reachable in `t` steps (`x + t` even).
fn on_lattice(x: i64, t: usize) -> i64 {
    x - (x + t as i64).rem_euclid(2)
}
