//! Probability that two independent walkers end on the same side of the
//! origin, by orthant enumeration and by the factorized route, and its limit.
//!
//! ```text
//! cargo run --example separable_sameside -- 40
//! ```

use qwalk::asymptotics::sameside_limit_product;
use qwalk::coin::chi_eigenstates;
use qwalk::multiparticle::joint_separable;
use qwalk::{CoinState1, InitialCoinSpec};

fn main() {
    let t: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let (chi_plus, _) = chi_eigenstates();
    let pairs = [
        ("L x L", [CoinState1::left(), CoinState1::left()]),
        ("L x R", [CoinState1::left(), CoinState1::right()]),
        ("sym x sym", [CoinState1::symmetric(), CoinState1::symmetric()]),
        ("chi+ x chi+", [chi_plus, chi_plus]),
    ];
    println!("t = {t}");
    println!("{:>12}  {:>10}  {:>10}  {:>10}", "pair", "orthants", "factored", "limit");
    for (name, pair) in pairs {
        let spec = InitialCoinSpec::separable(pair.to_vec()).expect("two particles");
        let joint = joint_separable(&spec, t).expect("valid spec");
        println!(
            "{name:>12}  {:>10.6}  {:>10.6}  {:>10.6}",
            joint.orthant_sum(),
            joint.sameside(),
            sameside_limit_product(&pair)
        );
    }
}
