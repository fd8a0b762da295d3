//! Globally adaptive Gauss-Kronrod (7/15) quadrature on finite and infinite
//! intervals.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    /// False if the subdivision budget ran out before the tolerance was met.
    pub converged: bool,
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]`, either end possibly infinite, until the
/// summed error estimate drops below `max(abs_tol, rel_tol |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Integral {
    integrate_dyn(&f, a, b, abs_tol, rel_tol)
}

fn integrate_dyn(f: &dyn Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Integral {
    if a == b {
        return Integral {
            value: 0.0,
            abs_error: 0.0,
            converged: true,
        };
    }
    if a > b {
        let r = integrate_dyn(f, b, a, abs_tol, rel_tol);
        return Integral {
            value: -r.value,
            ..r
        };
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adapt(f, a, b, abs_tol, rel_tol),
        // x = a + t / (1 - t)
        (true, false) => adapt(
            &|t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            },
            0.0,
            1.0,
            abs_tol,
            rel_tol,
        ),
        // x = b - t / (1 - t)
        (false, true) => adapt(
            &|t: f64| {
                let s = 1.0 - t;
                f(b - t / s) / (s * s)
            },
            0.0,
            1.0,
            abs_tol,
            rel_tol,
        ),
        (false, false) => {
            let left = integrate_dyn(f, f64::NEG_INFINITY, 0.0, 0.5 * abs_tol, rel_tol);
            let right = integrate_dyn(f, 0.0, f64::INFINITY, 0.5 * abs_tol, rel_tol);
            Integral {
                value: left.value + right.value,
                abs_error: left.abs_error + right.abs_error,
                converged: left.converged && right.converged,
            }
        }
    }
}

/// Integrates over consecutive pieces `[points[i], points[i+1]]`. Put kinks
/// and discontinuities of the integrand in `points`.
pub fn integrate_pieces<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Integral {
    let pieces = points.len().saturating_sub(1).max(1) as f64;
    let mut total = Integral {
        value: 0.0,
        abs_error: 0.0,
        converged: true,
    };
    for w in points.windows(2) {
        let r = integrate(&f, w[0], w[1], abs_tol / pieces, rel_tol);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.converged &= r.converged;
    }
    total
}

fn adapt<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Integral {
    let mut segments = vec![kronrod(f, a, b)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target || segments.len() >= MAX_INTERVALS {
            return Integral {
                value,
                abs_error: error,
                converged: error <= target,
            };
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // Interval cannot be split further in floating point.
            return Integral {
                value,
                abs_error: error,
                converged: false,
            };
        }
        segments.push(kronrod(f, s.a, mid));
        segments.push(kronrod(f, mid, s.b));
    }
}
