// Temporary probe: occupancy of the map image in the complex plane.
use metaline_core::constants::omega_for_wavelength;
use metaline_core::*;

fn main() {
    let omega = omega_for_wavelength(6.0e-6);
    let state = GrapheneState::new(0.0);
    let geom = resolve_geometry(omega, &state, &GeometryOverrides::default()).unwrap();
    for n in [201usize, 601] {
        let grid = GridSpec {
            mu_min_ev: 0.13,
            mu_max_ev: 1.0,
            n,
        };
        let map = sweep_map(&grid, &geom, omega, &state).unwrap();
        // Radial bins 0..1 in 25 steps (rows), angular 72 bins of 5 deg (cols).
        let (nr, na) = (25usize, 72usize);
        let mut occ = vec![vec![false; na]; nr];
        for s in &map.s21 {
            let r = s.norm();
            let mut p = s.arg().to_degrees();
            if p < 0.0 {
                p += 360.0;
            }
            let ir = ((r * nr as f64) as usize).min(nr - 1);
            let ia = ((p / 360.0 * na as f64) as usize).min(na - 1);
            occ[ir][ia] = true;
        }
        println!("\n=== grid {n}: rows amp 0..1 bottom-up, cols phase 0..360 in 5 deg ===");
        for ir in (0..nr).rev() {
            let row: String = (0..na).map(|ia| if occ[ir][ia] { '#' } else { '.' }).collect();
            println!("{:4.2} {row}", (ir as f64 + 0.5) / nr as f64);
        }
    }
}
