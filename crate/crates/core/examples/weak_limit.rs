//! Weak limit of `X_t / t`: the closed-form density for one walker, the
//! quadrature route, and same-side limits of entangled pairs.
//!
//! ```text
//! cargo run --example weak_limit
//! ```

use num_complex::Complex64;
use qwalk::asymptotics::{
    konno_density, sameside_limit_general, total_integral, weak_limit_density, WeakLimitSpec, DEFAULT_NODES,
};
use qwalk::multiparticle::product_vector;
use qwalk::{CoinKind, CoinState1, InitialCoinSpec, Sign};

fn main() {
    let left = CoinState1::left();
    let single = WeakLimitSpec::single(&left);
    println!("{:>6}  {:>12}  {:>12}", "q", "closed form", "eigenvectors");
    for q in [-0.6, -0.3, 0.0, 0.3, 0.6] {
        println!(
            "{q:>6.2}  {:>12.8}  {:>12.8}",
            konno_density(q, &left).unwrap(),
            weak_limit_density(&single, &[q]).unwrap()
        );
    }
    println!("total mass of the single density: {:.10}", total_integral(&single, DEFAULT_NODES));

    let pair = WeakLimitSpec::new(2, product_vector(&[left, left])).unwrap();
    println!("same side, L x L: {:.10}", sameside_limit_general(&pair));
    for (name, kind) in [
        ("psi+", CoinKind::BellPsi(Sign::Plus)),
        ("psi-", CoinKind::BellPsi(Sign::Minus)),
        ("phi+", CoinKind::BellPhi(Sign::Plus)),
        ("phi-", CoinKind::BellPhi(Sign::Minus)),
    ] {
        let psi: Vec<Complex64> = InitialCoinSpec::new(2, kind).unwrap().coin_vector().unwrap();
        let spec = WeakLimitSpec::new(2, psi).unwrap();
        println!("same side, {name}: {:.10}", sameside_limit_general(&spec));
    }
}
