// Temporary probe: full calibration + refinement statistics per operator.
use metaline_core::constants::omega_for_wavelength;
use metaline_core::*;
use num_complex::Complex64;
use rayon::prelude::*;

fn score(targets: &[Complex64], map: &TransmissionMap, gamma: Complex64) -> f64 {
    let mut total = 0.0;
    for &h in targets {
        let t = gamma * h;
        let mut dmin = f64::INFINITY;
        for s in &map.s21 {
            let d = (s - t).norm_sqr();
            if d < dmin {
                dmin = d;
            }
        }
        total += dmin;
    }
    total / gamma.norm_sqr()
}

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

    for kind in [OperatorKind::Diff1, OperatorKind::Diff2, OperatorKind::Int2] {
        let spec = TransferFunctionSpec::new(kind, geom.aperture);
        let targets = sample_target(&spec, 38);

        // Coarse (beta, phi) scan on the full map.
        let cands: Vec<Complex64> = (0..120)
            .flat_map(|ip| {
                (1..=19).map(move |ib| {
                    Complex64::from_polar(ib as f64 * 0.05, (ip as f64 * 3.0).to_radians())
                })
            })
            .collect();
        let scores: Vec<f64> = cands.par_iter().map(|&g| score(&targets, &map, g)).collect();
        let (mut best_i, mut best_s) = (0, f64::INFINITY);
        for (i, &s) in scores.iter().enumerate() {
            if s < best_s {
                best_i = i;
                best_s = s;
            }
        }
        let g0 = cands[best_i];
        // Fine scan.
        let fine: Vec<Complex64> = (-12..=12)
            .flat_map(|ip| {
                (-10..=10).map(move |ib| {
                    Complex64::from_polar(
                        (g0.norm() + ib as f64 * 0.005).clamp(0.01, 1.0),
                        g0.arg() + (ip as f64 * 0.25).to_radians(),
                    )
                })
            })
            .collect();
        let fscores: Vec<f64> = fine.par_iter().map(|&g| score(&targets, &map, g)).collect();
        let (mut fbest_i, mut fbest_s) = (0, f64::INFINITY);
        for (i, &s) in fscores.iter().enumerate() {
            if s < fbest_s {
                fbest_i = i;
                fbest_s = s;
            }
        }
        let gamma = fine[fbest_i];
        println!(
            "{}: gamma beta={:.3} phi={:.1} deg, rel-rms seed={:.4}",
            spec.kind.as_str(),
            gamma.norm(),
            gamma.arg().to_degrees(),
            (fbest_s / targets.len() as f64).sqrt()
        );

        // Full refinement at this gamma.
        let raw: Vec<Complex64> = targets.iter().map(|h| h * gamma).collect();
        match synthesize_targets(&raw, &map, &geom, omega, &state) {
            Ok(mut designs) => {
                for (d, h) in designs.iter_mut().zip(&targets) {
                    d.target = *h;
                }
                let rep = deviation_report(&designs);
                let worst = designs
                    .iter()
                    .max_by(|a, b| a.residual.total_cmp(&b.residual))
                    .unwrap();
                println!(
                    "  amp_std {:.4}, phase_std {:.2} deg ({} cells), max resid {:.3e} (cell {}), rel {:.3}",
                    rep.amplitude_std,
                    rep.phase_std_deg,
                    rep.phase_cells,
                    rep.max_residual,
                    worst.cell_index,
                    rep.max_residual / gamma.norm()
                );
                if kind == OperatorKind::Diff1 {
                    for n in [16usize, 32, 64] {
                        let input = make_input_sinc(n, geom.aperture).unwrap();
                        let reference = analytic::sinc_derivative(n, geom.aperture);
                        let r = run_operator(
                            &spec,
                            &input,
                            &reference,
                            &LensModel::IdealFt,
                            TransferSource::Synthesized(&designs),
                        )
                        .unwrap();
                        println!(
                            "  synth end-to-end N={n}: nrms={:.4}, corr={:.5}",
                            r.normalized_rms, r.correlation
                        );
                    }
                }
            }
            Err(e) => println!("  synthesis failed: {e}"),
        }
    }
}
