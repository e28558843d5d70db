// Temporary probe: per-cell reachability diagnostics for diff1.
use metaline_core::constants::omega_for_wavelength;
use metaline_core::*;
use num_complex::Complex64;

fn main() {
    let omega = omega_for_wavelength(6.0e-6);
    let state = GrapheneState::new(0.0);
    let geom = resolve_geometry(omega, &state, &GeometryOverrides::default()).unwrap();
    let grid = GridSpec {
        mu_min_ev: 0.13,
        mu_max_ev: 1.0,
        n: 201,
    };
    let map = sweep_map(&grid, &geom, omega, &state).unwrap();
    let spec = TransferFunctionSpec::new(OperatorKind::Diff1, geom.aperture);
    let targets = sample_target(&spec, 38);

    // Scan beta x phi on the full map for the best global factor.
    let mut best = (Complex64::new(1.0, 0.0), f64::INFINITY);
    for ip in 0..360 {
        let phi = (ip as f64).to_radians();
        for ib in 1..=19 {
            let beta = ib as f64 * 0.05;
            let gamma = Complex64::from_polar(beta, phi);
            let mut total = 0.0;
            for &h in &targets {
                let t = gamma * h;
                let mut dmin = f64::INFINITY;
                for s in map.s21.iter().step_by(7) {
                    let d = (s - t).norm_sqr();
                    if d < dmin {
                        dmin = d;
                    }
                }
                total += dmin;
            }
            let score = total / gamma.norm_sqr();
            if score < best.1 {
                best = (gamma, score);
            }
        }
    }
    let gamma = best.0;
    println!(
        "best gamma: beta = {:.3}, phi = {:.1} deg, score = {:.4}",
        gamma.norm(),
        gamma.arg().to_degrees(),
        best.1
    );

    // Per-cell nearest map distance at that gamma (full map).
    println!("cell  |H|     target(amp,phase)   nearest-dist  rel");
    for (j, &h) in targets.iter().enumerate() {
        let t = gamma * h;
        let mut dmin = f64::INFINITY;
        for s in &map.s21 {
            let d = (s - t).norm();
            if d < dmin {
                dmin = d;
            }
        }
        if j < 6 || j > 31 || (15..23).contains(&j) {
            println!(
                "{j:4} {:7.4}  ({:6.4}, {:7.1} deg)  {:9.2e}  {:7.3}",
                h.norm(),
                t.norm(),
                t.arg().to_degrees(),
                dmin,
                dmin / gamma.norm()
            );
        }
    }
}
