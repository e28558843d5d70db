// Temporary probe: design-quality calibration over candidate global factors.
use metaline_core::constants::omega_for_wavelength;
use metaline_core::*;
use num_complex::Complex64;
use rayon::prelude::*;

fn cheap_score(targets: &[Complex64], map: &TransmissionMap, gamma: Complex64) -> f64 {
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

    for mu_min in [0.125_f64, 0.13] {
        let grid = GridSpec {
            mu_min_ev: mu_min,
            mu_max_ev: 1.0,
            n: 201,
        };
        let map = sweep_map(&grid, &geom, omega, &state).unwrap();
        let span = map.unwrapped_phase_span();
        let (amin, amax) = map.amplitude_range();
        println!(
            "\n=== bounds [{mu_min}, 1.0]: span {:.1} deg, amp [{:.2e}, {:.4}] ===",
            span.to_degrees(),
            amin,
            amax
        );

        for kind in [OperatorKind::Diff1, OperatorKind::Diff2, OperatorKind::Int2] {
            let spec = TransferFunctionSpec::new(kind, geom.aperture);
            let targets = sample_target(&spec, 38);

            let cands: Vec<Complex64> = (0..120)
                .flat_map(|ip| {
                    (1..=19).map(move |ib| {
                        Complex64::from_polar(ib as f64 * 0.05, (ip as f64 * 3.0).to_radians())
                    })
                })
                .collect();
            let mut scored: Vec<(f64, Complex64)> = cands
                .par_iter()
                .map(|&g| (cheap_score(&targets, &map, g), g))
                .collect();
            scored.sort_by(|a, b| a.0.total_cmp(&b.0));

            // Fully refine the best 16 and judge by the reported statistics.
            let mut best: Option<(f64, Complex64, DeviationReport, Vec<CellDesign>)> = None;
            for &(_, gamma) in scored.iter().take(16) {
                let raw: Vec<Complex64> = targets.iter().map(|h| h * gamma).collect();
                let Ok(mut designs) = synthesize_targets(&raw, &map, &geom, omega, &state) else {
                    continue;
                };
                for (d, h) in designs.iter_mut().zip(&targets) {
                    d.target = *h;
                }
                let rep = deviation_report(&designs);
                let quality = rep.amplitude_std / 0.04 + rep.phase_std_deg / 6.0;
                if best.as_ref().map_or(true, |(q, ..)| quality < *q) {
                    best = Some((quality, gamma, rep, designs));
                }
            }
            let Some((q, gamma, rep, designs)) = best else {
                println!("{}: all candidates failed", spec.kind.as_str());
                continue;
            };
            println!(
                "{}: gamma ({:.3}, {:.1} deg) q={q:.3} -> amp_std {:.4}, phase_std {:.2} deg, maxres {:.2e}",
                spec.kind.as_str(),
                gamma.norm(),
                gamma.arg().to_degrees(),
                rep.amplitude_std,
                rep.phase_std_deg,
                rep.max_residual,
            );
            if kind == OperatorKind::Diff1 {
                for n in [16usize, 32] {
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
                        "    end-to-end N={n}: nrms={:.4}, corr={:.5}",
                        r.normalized_rms, r.correlation
                    );
                }
            }
        }
    }
}
