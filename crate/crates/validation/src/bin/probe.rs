// Temporary development probe; prints oracle values to freeze into tests.
use metaline_core::constants::omega_for_wavelength;
use metaline_core::*;
use metaline_validation::oracles;
use num_complex::Complex64;

fn main() {
    let omega = omega_for_wavelength(6.0e-6);
    let state = GrapheneState::new(0.0);

    // 1. Sign change of Im(sigma): scan mu
    let mut prev = None;
    for i in 0..=2000 {
        let mu = 0.10 + 0.10 * i as f64 / 2000.0;
        let s = kubo_conductivity(omega, &state.with_mu(mu)).unwrap().value;
        if let Some((pmu, pim)) = prev {
            if pim < 0.0 && s.im >= 0.0 {
                println!("Im(sigma) zero crossing between {pmu} and {mu} eV");
            }
        }
        prev = Some((mu, s.im));
    }
    for mu in [0.12, 0.125, 0.13, 0.15] {
        let s = kubo_conductivity(omega, &state.with_mu(mu)).unwrap().value;
        println!("sigma({mu} eV) = {s:e}");
    }

    // 2. Bigfloat reference at the design point
    let gamma = 0.5 / 1.0e-12;
    let big = oracles::kubo_reference(omega, 0.15, 300.0, gamma);
    let f64v = kubo_conductivity(omega, &state.with_mu(0.15)).unwrap().value;
    println!("kubo f64  (0.15 eV) = {:.17e} {:+.17e} i", f64v.re, f64v.im);
    println!("kubo big  (0.15 eV) = {:.17e} {:+.17e} i", big.re, big.im);
    println!("rel diff = {:e}", (f64v - big).norm() / big.norm());

    let mode = graphene::plasmon_mode(omega, &state.with_mu(0.15)).unwrap();
    println!("lambda_gp(0.15 eV) = {:.17e}", mode.guided_wavelength);
    println!("prop_len (0.15 eV) = {:.17e}", mode.propagation_length);

    // 3. Theta at ratio 2 via Simpson 1e6 vs adaptive
    let simpson = oracles::simpson_theta(Complex64::new(2.0, 0.0), 1_000_000);
    let adaptive = theta_phase(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
    println!("theta(2) simpson  = {:.17e} {:+.17e} i", simpson.re, simpson.im);
    println!("theta(2) adaptive = {:.17e} {:+.17e} i", adaptive.re, adaptive.im);
    println!("diff = {:e}", (simpson - adaptive).norm());

    // 4. Lossy interface 0.3 / 0.6 eV
    let k_a = graphene::plasmon_mode(omega, &state.with_mu(0.3)).unwrap().wavenumber;
    let k_b = graphene::plasmon_mode(omega, &state.with_mu(0.6)).unwrap().wavenumber;
    println!("k(0.3) = {:.17e} {:+.17e} i", k_a.re, k_a.im);
    println!("k(0.6) = {:.17e} {:+.17e} i", k_b.re, k_b.im);
    let iface = discontinuity_coefficients(k_a, k_b).unwrap();
    println!("r_lr = {:.17e} {:+.17e} i", iface.r_lr.re, iface.r_lr.im);
    println!("t_lr = {:.17e} {:+.17e} i", iface.t_lr.re, iface.t_lr.im);
    println!("theta_lr = {:.17e} {:+.17e} i", iface.theta_lr.re, iface.theta_lr.im);
    let simpson_lossy = oracles::simpson_theta(k_a / k_b, 1_000_000);
    println!(
        "theta_lr simpson = {:.17e} {:+.17e} i (diff {:e})",
        simpson_lossy.re,
        simpson_lossy.im,
        (simpson_lossy - iface.theta_lr).norm()
    );

    // 5. Geometry: mu_bg from the 170 nm quarter-wave rule
    let geom = resolve_geometry(omega, &state, &GeometryOverrides::default()).unwrap();
    println!("mu_bg = {:.15} eV, spacing = {:e}, depth = {:e}", geom.mu_bg_ev, geom.spacing, geom.depth);
    let bg_mode = graphene::plasmon_mode(omega, &state.with_mu(geom.mu_bg_ev)).unwrap();
    println!("lambda_gp(bg) = {:e}, Im k_bg = {:e}", bg_mode.guided_wavelength, bg_mode.wavenumber.im);

    // 6. Cell S21 vs boundary matching at (0.3, 0.7) and (0.4, 0.4)
    for (mi, mo) in [(0.3, 0.7), (0.4, 0.4)] {
        let s21 = cell_s21(mi, mo, &geom, omega, &state).unwrap();
        let k_bg = bg_mode.wavenumber;
        let k_in = graphene::plasmon_mode(omega, &state.with_mu(mi)).unwrap().wavenumber;
        let k_out = graphene::plasmon_mode(omega, &state.with_mu(mo)).unwrap().wavenumber;
        let d = geom.metaline_width;
        let s = geom.spacing;
        let wavenumbers = vec![k_bg, k_out, k_bg, k_in, k_bg, k_out, k_bg];
        let lengths = vec![d, s, d, s, d];
        let pairs: Vec<(Complex64, Complex64)> = wavenumbers
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect();
        let interfaces = pairs
            .iter()
            .map(|&(l, r)| discontinuity_coefficients(l, r).unwrap())
            .collect();
        let stack = oracles::Stack {
            wavenumbers,
            lengths,
            interfaces,
        };
        let oracle = oracles::boundary_matching_s21(&stack);
        println!(
            "cell({mi},{mo}): cascade = {:.17e} {:+.17e} i, oracle = {:.17e} {:+.17e} i, rel {:e}",
            s21.re,
            s21.im,
            oracle.re,
            oracle.im,
            (s21 - oracle).norm() / oracle.norm()
        );
    }

    // 7. Default map coverage at candidate bounds
    for lo in [0.13_f64, 0.14, 0.15] {
        let grid = GridSpec {
            mu_min_ev: lo,
            mu_max_ev: 1.0,
            n: 201,
        };
        let t0 = std::time::Instant::now();
        let map = sweep_map(&grid, &geom, omega, &state).unwrap();
        let span = map.unwrapped_phase_span();
        let (amin, amax) = map.amplitude_range();
        println!(
            "map [{lo},1.0] 201^2: phase span {:.3} rad ({:.1} deg), |S21| in [{:.4}, {:.6}], {} ms",
            span,
            span.to_degrees(),
            amin,
            amax,
            t0.elapsed().as_millis()
        );

        // 8. diff1 synthesis deviations on this map
        let spec = TransferFunctionSpec::new(OperatorKind::Diff1, geom.aperture);
        match synthesize(&spec, &map, &geom, omega, &state) {
            Ok(designs) => {
                let rep = deviation_report(&designs);
                println!(
                    "  diff1: amp_std {:.5}, phase_std {:.3} deg, max_resid {:.2e}, phase cells {}",
                    rep.amplitude_std, rep.phase_std_deg, rep.max_residual, rep.phase_cells
                );
                // 9. synthesized end-to-end at band-matched sampling
                let n = pipeline::SINC_BAND_MATCHED_SAMPLES;
                let input = make_input_sinc(n, geom.aperture).unwrap();
                let reference = analytic::sinc_derivative(n, geom.aperture);
                let result = run_operator(
                    &spec,
                    &input,
                    &reference,
                    &LensModel::IdealFt,
                    TransferSource::Synthesized(&designs),
                )
                .unwrap();
                println!(
                    "  synth diff1 end-to-end (N={n}): nrms = {:.4}, corr = {:.5}",
                    result.normalized_rms, result.correlation
                );
                for n in [32usize, 64] {
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
                    println!("    (N={n}): nrms = {:.4}, corr = {:.5}", r.normalized_rms, r.correlation);
                }
            }
            Err(e) => println!("  diff1 synthesis failed: {e}"),
        }
    }

    // 10. Ideal-path operator accuracy at N = 2048
    let w = geom.aperture;
    let n = 2048;
    let input = make_input_sinc(n, w).unwrap();
    for kind in [OperatorKind::Diff1, OperatorKind::Diff2, OperatorKind::Int2] {
        let spec = TransferFunctionSpec::new(kind, w);
        let reference = match kind {
            OperatorKind::Diff1 => analytic::sinc_derivative(n, w),
            OperatorKind::Diff2 => analytic::sinc_second_derivative(n, w),
            OperatorKind::Int2 => analytic::filtered_reference(&input, &spec),
        };
        let t0 = std::time::Instant::now();
        let result = run_operator(
            &spec,
            &input,
            &reference,
            &LensModel::IdealFt,
            TransferSource::Ideal(&spec),
        )
        .unwrap();
        println!(
            "ideal {} N=2048: nrms = {:.3e}, corr = {:.6} ({} ms)",
            spec.kind.as_str(),
            result.normalized_rms,
            result.correlation,
            t0.elapsed().as_millis()
        );
    }

    // 11. GRIN vs ideal FT on the sinc
    let lens = LensModel::grin_matched_default(w, n);
    let t0 = std::time::Instant::now();
    let grin_out = lens_transform(&input, &lens).unwrap();
    let ideal_out = lens_transform(&input, &LensModel::IdealFt).unwrap();
    let dot: Complex64 = grin_out
        .samples
        .iter()
        .zip(&ideal_out.samples)
        .map(|(a, b)| a.conj() * b)
        .sum();
    let corr = dot.norm()
        / (grin_out.samples.iter().map(|s| s.norm_sqr()).sum::<f64>()
            * ideal_out.samples.iter().map(|s| s.norm_sqr()).sum::<f64>())
        .sqrt();
    println!("grin vs ideal corr = {:.6} ({} ms)", corr, t0.elapsed().as_millis());
}
