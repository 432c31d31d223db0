//! Momentum-space propagation of the planar walk against direct evolution.
//!
//! ```text
//! cargo run --example fourier_propagation -- 128 40
//! ```

use num_complex::Complex64;
use qwalk::coin::CoinMatrix;
use qwalk::delta::evolve;
use qwalk::fourier::{forward_transform, inverse_transform, SpectralPropagator};
use qwalk::{DeltaEvolutionSpec, ShiftModel, WalkState2D};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(128);
    let t = args.next().flatten().unwrap_or(40);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let chirality = [one, zero, zero, zero];

    let spec = DeltaEvolutionSpec::uniform(CoinMatrix::cdelta(), ShiftModel::Axial).unwrap();
    let direct = evolve(chirality, t, &spec).unwrap();

    let propagator = SpectralPropagator::new(n).unwrap();
    let start = forward_transform(&WalkState2D::localized(chirality).unwrap(), n).unwrap();
    let field = propagator.propagate(&start, t).unwrap();
    let spectral = inverse_transform(&field).unwrap();

    let ti = t as i64;
    let mut max_error = 0.0f64;
    for x in -ti..=ti {
        for y in -ti..=ti {
            let (a, b) = (direct.amplitude(x, y), spectral.amplitude(x, y));
            for c in 0..4 {
                max_error = max_error.max((a[c] - b[c]).norm());
            }
        }
    }
    println!("N = {n}, t = {t}");
    println!("max amplitude error: {max_error:.3e}");
    println!("plancherel norm: {:.15}", field.plancherel_norm());
    println!("direct norm:     {:.15}", direct.norm_sqr());
}
