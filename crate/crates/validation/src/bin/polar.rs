// Temporary probe: polar coverage of the transmission map.
use metaline_core::constants::omega_for_wavelength;
use metaline_core::*;

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

    let bins = 36;
    let mut max_amp = vec![0.0f64; bins];
    let mut min_amp = vec![f64::INFINITY; bins];
    for s in &map.s21 {
        let mut phase = s.arg().to_degrees();
        if phase < 0.0 {
            phase += 360.0;
        }
        let b = ((phase / 360.0 * bins as f64) as usize).min(bins - 1);
        max_amp[b] = max_amp[b].max(s.norm());
        min_amp[b] = min_amp[b].min(s.norm());
    }
    println!("phase-bin coverage (10 deg bins): bin_start_deg max|S21| min|S21|");
    for b in 0..bins {
        println!(
            "{:5.0}  {:8.5}  {:9.2e}",
            b as f64 * 360.0 / bins as f64,
            max_amp[b],
            if min_amp[b].is_finite() { min_amp[b] } else { f64::NAN }
        );
    }

    // Where is the uniform sheet?
    let s_ref = cell_s21(geom.mu_bg_ev, geom.mu_bg_ev, &geom, omega, &state).unwrap();
    println!(
        "uniform sheet: amp {:.5}, phase {:.1} deg",
        s_ref.norm(),
        s_ref.arg().to_degrees()
    );
}
