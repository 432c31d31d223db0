//! Single Hadamard walker on the line: side probabilities against their
//! limits and the distribution peak.
//!
//! ```text
//! cargo run --example hadamard_line -- 1000
//! ```

use qwalk::asymptotics::side_limits;
use qwalk::coin::{chi_eigenstates, CoinMatrix};
use qwalk::line::evolve;
use qwalk::CoinState1;

fn main() {
    let t: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let (chi_plus, chi_minus) = chi_eigenstates();
    let states = [
        ("L", CoinState1::left()),
        ("R", CoinState1::right()),
        ("sym", CoinState1::symmetric()),
        ("chi+", chi_plus),
        ("chi-", chi_minus),
    ];
    let coin = CoinMatrix::hadamard();
    println!("t = {t}");
    println!("{:>5}  {:>10}  {:>10}  {:>10}  {:>6}", "state", "p_minus", "limit", "norm-1", "peak");
    for (name, state) in states {
        let walk = evolve(&state, t, &coin);
        let (p_minus, _) = walk.side_probabilities();
        let (limit, _) = side_limits(&state);
        let (peak, _) = walk.peak();
        println!(
            "{name:>5}  {p_minus:>10.6}  {limit:>10.6}  {:>10.1e}  {peak:>6}",
            walk.norm_sqr() - 1.0
        );
    }
}
