use std::time::Instant;

use softpulse::design::{fidelity_at, optimize_fidelity};
use softpulse::spin::TWO_PI;
use softpulse::SpinChainParams;

fn main() {
    let p = SpinChainParams::alanine();
    for (t, w) in [(0.151, 1.0), (1.0, 1.0), (1.0, 0.987), (0.947, 0.987)] {
        println!("F({t}, {w}) = {:.6}", fidelity_at(t, w, &p).unwrap());
    }
    let start = Instant::now();
    let opt = optimize_fidelity(&p).unwrap();
    let (tau, w) = opt.physical(&p);
    println!(
        "optimum tau~={:.4} omega~={:.4} F={:.6} (tau={:.3} ms, omega1/2pi={:.2} Hz) grid best {:?} in {:?}",
        opt.tau_tilde,
        opt.omega_tilde,
        opt.fidelity,
        tau * 1e3,
        w / TWO_PI,
        opt.grid_best,
        start.elapsed()
    );
}
