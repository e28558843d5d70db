//! Adaptive Gauss-Kronrod quadrature for complex-valued integrands on a
//! finite interval.

use num_complex::Complex64;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half; symmetric).
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

// Embedded 7-point Gauss weights (odd Kronrod nodes plus the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    let integral = kronrod * half;
    let err = ((kronrod - gauss) * half).norm();
    (integral, err)
}

/// Integrates `f` over `[a, b]` to the requested absolute tolerance by
/// bisection of the worst interval, splitting the budget between halves.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: usize,
) -> Result<Complex64> {
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        tol: f64,
        depth: usize,
        max_depth: usize,
    ) -> Result<Complex64> {
        let (value, err) = gk15(f, a, b);
        if err <= tol || err <= f64::EPSILON * value.norm() {
            return Ok(value);
        }
        if depth >= max_depth {
            return Err(Error::QuadratureNonConvergence {
                requested: tol,
                achieved: err,
                depth,
            });
        }
        let mid = 0.5 * (a + b);
        let left = recurse(f, a, mid, 0.5 * tol, depth + 1, max_depth)?;
        let right = recurse(f, mid, b, 0.5 * tol, depth + 1, max_depth)?;
        Ok(left + right)
    }
    recurse(&f, a, b, abs_tol, 0, max_depth)
}
