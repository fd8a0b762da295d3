//! Univariate and bivariate standard normal probabilities.

use crate::error::{Error, Result};
use std::f64::consts::{PI, SQRT_2};

const TWO_PI: f64 = 2.0 * PI;
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
/// Beyond this magnitude the normal tails are below 1e-300 and are clamped.
pub const CDF_SATURATION: f64 = 37.5;

pub fn std_normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal distribution function.
pub fn std_normal_cdf(x: f64) -> f64 {
    if x < -CDF_SATURATION {
        0.0
    } else if x > CDF_SATURATION {
        1.0
    } else {
        0.5 * libm::erfc(-x / SQRT_2)
    }
}

/// Upper tail `1 - Phi(x)`, accurate far into the right tail.
pub fn std_normal_sf(x: f64) -> f64 {
    std_normal_cdf(-x)
}

/// Inverse of [`std_normal_cdf`]: Wichura's AS 241 rational approximation
/// followed by one Newton step.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "quantile probability must be in (0, 1), got {p}"
        )));
    }
    let x = ppnd16(p);
    let pdf = std_normal_pdf(x);
    if pdf == 0.0 {
        return Ok(x);
    }
    // Newton on the smaller tail so the residual keeps its digits.
    Ok(if x > 0.0 {
        x + (std_normal_sf(x) - (1.0 - p)) / pdf
    } else {
        x - (std_normal_cdf(x) - p) / pdf
    })
}

/// Upper-`alpha` critical value `tau` with `Phi(tau) = 1 - alpha`.
pub fn upper_critical(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    // Use -Phi^{-1}(alpha) so small alpha keeps full precision.
    Ok(-std_normal_quantile(alpha)?)
}

#[allow(clippy::excessive_precision)]
fn ppnd16(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q
            * (((((((2.509_080_928_730_122_7e3 * r + 3.343_057_558_358_812_8e4) * r
                + 6.726_577_092_700_870_1e4)
                * r
                + 4.592_195_393_154_987_1e4)
                * r
                + 1.373_169_376_550_946_1e4)
                * r
                + 1.971_590_950_306_551_3e3)
                * r
                + 1.331_416_678_917_843_8e2)
                * r
                + 3.387_132_872_796_366_5)
            / (((((((5.226_495_278_852_545_4e3 * r + 2.872_908_573_572_194_3e4) * r
                + 3.930_789_580_009_271_1e4)
                * r
                + 2.121_379_430_158_659_7e4)
                * r
                + 5.394_196_021_424_751_1e3)
                * r
                + 6.871_870_074_920_579_1e2)
                * r
                + 4.231_333_070_160_091_1e1)
                * r
                + 1.0);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let val = if r <= 5.0 {
        r -= 1.6;
        (((((((7.745_450_142_783_414_1e-4 * r + 2.272_384_498_926_918_4e-2) * r
            + 2.417_807_251_774_506_1e-1)
            * r
            + 1.270_458_252_452_368_4)
            * r
            + 3.647_848_324_763_204_5)
            * r
            + 5.769_497_221_460_691_4)
            * r
            + 4.630_337_846_156_545_3)
            * r
            + 1.423_437_110_749_683_5)
            / (((((((1.050_750_071_644_416_9e-9 * r + 5.475_938_084_995_344_9e-4) * r
                + 1.519_866_656_361_645_7e-2)
                * r
                + 1.481_039_764_274_800_7e-1)
                * r
                + 6.897_673_349_851_000_2e-1)
                * r
                + 1.676_384_830_183_803_8)
                * r
                + 2.053_191_626_637_758_8)
                * r
                + 1.0)
    } else {
        r -= 5.0;
        (((((((2.010_334_399_292_288_1e-7 * r + 2.711_555_568_743_487_6e-5) * r
            + 1.242_660_947_388_078_4e-3)
            * r
            + 2.653_218_952_657_612_3e-2)
            * r
            + 2.965_605_718_285_048_7e-1)
            * r
            + 1.784_826_539_917_291_3)
            * r
            + 5.463_784_911_164_114_4)
            * r
            + 6.657_904_643_501_103_8)
            / (((((((2.044_263_103_389_939_7e-15 * r + 1.421_511_758_316_445_9e-7) * r
                + 1.846_318_317_510_054_7e-5)
                * r
                + 7.868_691_311_456_132_6e-4)
                * r
                + 1.487_536_129_085_061_5e-2)
                * r
                + 1.369_298_809_227_358_1e-1)
                * r
                + 5.998_322_065_558_879_4e-1)
                * r
                + 1.0)
    };
    if q < 0.0 {
        -val
    } else {
        val
    }
}

/// Arguments of the upper-orthant probability `P(X > q1, Y > q2)` for a
/// standard bivariate normal with correlation `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthantQuery {
    pub q1: f64,
    pub q2: f64,
    pub rho: f64,
}

impl OrthantQuery {
    pub fn new(q1: f64, q2: f64, rho: f64) -> Result<Self> {
        if !(rho.abs() < 1.0) {
            return Err(Error::Domain(format!(
                "correlation must satisfy |rho| < 1, got {rho}"
            )));
        }
        if q1.is_nan() || q2.is_nan() {
            return Err(Error::Domain("orthant limits must not be NaN".into()));
        }
        Ok(OrthantQuery { q1, q2, rho })
    }
}

// Gauss-Legendre (weight, abscissa) pairs on [-1, 0]; the rule is applied
// symmetrically. 6, 12 and 20 points.
#[allow(clippy::excessive_precision)]
const GL6: [(f64, f64); 3] = [
    (0.171_324_492_379_170_5, -0.932_469_514_203_152_2),
    (0.360_761_573_048_138_4, -0.661_209_386_466_264_7),
    (0.467_913_934_572_691_0, -0.238_619_186_083_197_0),
];
#[allow(clippy::excessive_precision)]
const GL12: [(f64, f64); 6] = [
    (0.047_175_336_386_511_77, -0.981_560_634_246_719_1),
    (0.106_939_325_995_318_3, -0.904_117_256_370_475_0),
    (0.160_078_328_543_346_4, -0.769_902_674_194_305_0),
    (0.203_167_426_723_065_9, -0.587_317_954_286_617_1),
    (0.233_492_536_538_354_7, -0.367_831_498_998_180_2),
    (0.249_147_045_813_402_9, -0.125_233_408_511_469_2),
];
#[allow(clippy::excessive_precision)]
const GL20: [(f64, f64); 10] = [
    (0.017_614_007_139_152_12, -0.993_128_599_185_094_9),
    (0.040_601_429_800_386_94, -0.963_971_927_277_913_8),
    (0.062_672_048_334_109_06, -0.912_234_428_251_325_9),
    (0.083_276_741_576_704_75, -0.839_116_971_822_218_8),
    (0.101_930_119_817_240_4, -0.746_331_906_460_150_8),
    (0.118_194_531_961_518_4, -0.636_053_680_726_515_0),
    (0.131_688_638_449_176_6, -0.510_867_001_950_827_1),
    (0.142_096_109_318_382_1, -0.373_706_088_715_419_6),
    (0.149_172_986_472_603_7, -0.227_785_851_141_645_1),
    (0.152_753_387_130_725_9, -0.076_526_521_133_497_33),
];

/// Upper-orthant probability `P(X > q1, Y > q2)`.
///
/// Genz's refinement of the Drezner-Wesolowsky method: for `|rho| < 0.925`
/// Plackett's integral over the correlation is taken in the `asin` scale;
/// closer to the boundary the singular part is integrated analytically.
pub fn orthant(q: OrthantQuery) -> f64 {
    let OrthantQuery {
        q1: h,
        q2: mut k,
        rho: r,
    } = q;
    if h.is_infinite() || k.is_infinite() {
        return match (h, k) {
            (h, _) if h == f64::INFINITY => 0.0,
            (_, k) if k == f64::INFINITY => 0.0,
            (h, k) if h == f64::NEG_INFINITY && k == f64::NEG_INFINITY => 1.0,
            (h, _) if h == f64::NEG_INFINITY => std_normal_sf(k),
            _ => std_normal_sf(h),
        };
    }
    let mut hk = h * k;
    let rule: &[(f64, f64)] = if r.abs() < 0.3 {
        &GL6
    } else if r.abs() < 0.75 {
        &GL12
    } else {
        &GL20
    };

    let value = if r.abs() < 0.925 {
        let mut sum = 0.0;
        if r != 0.0 {
            let hs = 0.5 * (h * h + k * k);
            let asr = r.asin();
            for &(w, x) in rule {
                for sign in [-1.0, 1.0] {
                    let sn = (0.5 * asr * (sign * x + 1.0)).sin();
                    sum += w * ((sn * hk - hs) / (1.0 - sn * sn)).exp();
                }
            }
            sum *= asr / (2.0 * TWO_PI);
        }
        sum + std_normal_sf(h) * std_normal_sf(k)
    } else {
        if r < 0.0 {
            k = -k;
            hk = -hk;
        }
        let mut sum = 0.0;
        let a_sq = (1.0 - r) * (1.0 + r);
        let mut a = a_sq.sqrt();
        let b_sq = (h - k) * (h - k);
        let c = (4.0 - hk) / 8.0;
        let d = (12.0 - hk) / 16.0;
        sum += a
            * (-0.5 * (b_sq / a_sq + hk)).exp()
            * (1.0 - c * (b_sq - a_sq) * (1.0 - d * b_sq / 5.0) / 3.0 + c * d * a_sq * a_sq / 5.0);
        if hk > -160.0 {
            let b = b_sq.sqrt();
            sum -= (-0.5 * hk).exp()
                * TWO_PI.sqrt()
                * std_normal_cdf(-b / a)
                * b
                * (1.0 - c * b_sq * (1.0 - d * b_sq / 5.0) / 3.0);
        }
        a *= 0.5;
        for &(w, x) in rule {
            for sign in [-1.0, 1.0] {
                let xs = (a * (sign * x + 1.0)).powi(2);
                let rs = (1.0 - xs).sqrt();
                let e = -0.5 * (b_sq / xs + hk);
                if e > -700.0 {
                    sum += a
                        * w
                        * e.exp()
                        * ((-hk * (1.0 - rs) / (2.0 * (1.0 + rs))).exp() / rs
                            - (1.0 + c * xs * (1.0 + d * xs)));
                }
            }
        }
        sum = -sum / TWO_PI;
        if r > 0.0 {
            sum + std_normal_sf(h.max(k))
        } else {
            -sum + (std_normal_sf(h) - std_normal_sf(k)).max(0.0)
        }
    };
    value.clamp(0.0, 1.0)
}
