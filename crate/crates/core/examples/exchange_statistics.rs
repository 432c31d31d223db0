//! Bosonic and fermionic walkers against the symmetric and antisymmetric
//! Bell states of distinguishable walkers.
//!
//! ```text
//! cargo run --example exchange_statistics -- 20
//! ```

use qwalk::multiparticle::{sameside_indistinguishable, IndistinguishableAccessor};
use qwalk::{CoinKind, InitialCoinSpec, JointAccessor, Sign};

fn main() {
    let t: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let boson = InitialCoinSpec::new(2, CoinKind::Boson).expect("two particles");
    let fermion = InitialCoinSpec::new(2, CoinKind::Fermion).expect("two particles");
    let psi_plus = JointAccessor::coherent(&InitialCoinSpec::new(2, CoinKind::BellPsi(Sign::Plus)).unwrap(), t).unwrap();
    let psi_minus = JointAccessor::coherent(&InitialCoinSpec::new(2, CoinKind::BellPsi(Sign::Minus)).unwrap(), t).unwrap();
    let bosons = IndistinguishableAccessor::new(&boson, t).expect("boson spec");
    let fermions = IndistinguishableAccessor::new(&fermion, t).expect("fermion spec");

    println!("t = {t}");
    for sites in [[-3i64, 1], [2, 2], [-(t as i64) + 2, 4]] {
        let sites = sites.map(|x| x - (x + t as i64).rem_euclid(2));
        println!(
            "sites {sites:?}: boson {:.6e} psi+ {:.6e} | fermion {:.6e} psi- {:.6e}",
            bosons.probability_of_multiset(&sites).unwrap(),
            psi_plus.probability(&sites).unwrap(),
            fermions.probability_of_multiset(&sites).unwrap(),
            psi_minus.probability(&sites).unwrap(),
        );
    }
    println!(
        "same side: boson {:.6} psi+ {:.6} | fermion {:.6} psi- {:.6}",
        sameside_indistinguishable(&boson, t).unwrap(),
        psi_plus.sameside(),
        sameside_indistinguishable(&fermion, t).unwrap(),
        psi_minus.sameside(),
    );
}
