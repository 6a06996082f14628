//! Shapiro-Wilk normality test, Royston's AS R94 approximation.
//!
//! Valid for 3 <= n <= 5000. The W statistic is the squared correlation
//! between the ordered sample and the expected normal order-statistic
//! coefficients; the p-value comes from Royston's normalizing transforms
//! (exact for n = 3, polynomial fits elsewhere). This mirrors the reference
//! AS R94 routine used by the mainstream statistical packages.
//!
//! References:
//! - Royston, P. (1995). Remark AS R94: A remark on Algorithm AS 181:
//!   The W-test for normality. Applied Statistics, 44, 547-551.
//! - Shapiro, S. S. & Wilk, M. B. (1965). Biometrika 52, 591-611.

use crate::error::{Error, Result};
use crate::stats::special::{normal_cdf, normal_quantile};

pub const MIN_SAMPLES: usize = 3;
pub const MAX_SAMPLES: usize = 5000;

/// Test statistic and p-value of the Shapiro-Wilk test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapiroWilk {
    pub w: f64,
    pub p: f64,
}

/// Run the Shapiro-Wilk test on `sample`.
///
/// Errors with `SampleTooSmall`/`SampleTooLarge` outside 3..=5000 and with
/// `DegenerateSample` when all values are identical (callers treat that as
/// non-normal).
pub fn shapiro_wilk(sample: &[f64]) -> Result<ShapiroWilk> {
    let n = sample.len();
    if n < MIN_SAMPLES {
        return Err(Error::SampleTooSmall {
            got: n,
            min: MIN_SAMPLES,
        });
    }
    if n > MAX_SAMPLES {
        return Err(Error::SampleTooLarge {
            got: n,
            max: MAX_SAMPLES,
        });
    }

    let mut x = sample.to_vec();
    x.sort_by(f64::total_cmp);
    // Center on the median for numerical conditioning; W is location-invariant.
    let center = x[n / 2];
    for v in &mut x {
        *v -= center;
    }

    const SMALL: f64 = 1e-19;
    let range = x[n - 1] - x[0];
    if range.is_nan() || range <= SMALL || !range.is_finite() {
        return Err(Error::DegenerateSample);
    }

    let nn2 = n / 2;
    // 1-based coefficient array, a[1..=nn2].
    let mut a = vec![0.0f64; nn2 + 1];
    if n == 3 {
        a[1] = std::f64::consts::FRAC_1_SQRT_2;
    } else {
        let an = n as f64;
        let an25 = an + 0.25;
        let mut summ2 = 0.0;
        for (i, ai) in a.iter_mut().enumerate().skip(1) {
            *ai = normal_quantile((i as f64 - 0.375) / an25);
            summ2 += *ai * *ai;
        }
        summ2 *= 2.0;
        let ssumm2 = summ2.sqrt();
        let rsn = 1.0 / an.sqrt();
        let a1 = poly(&C1, rsn) - a[1] / ssumm2;

        let (i1, fac) = if n > 5 {
            let a2 = -a[2] / ssumm2 + poly(&C2, rsn);
            let fac = ((summ2 - 2.0 * a[1] * a[1] - 2.0 * a[2] * a[2])
                / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
                .sqrt();
            a[2] = a2;
            (3, fac)
        } else {
            let fac = ((summ2 - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1)).sqrt();
            (2, fac)
        };
        a[1] = a1;
        for ai in a.iter_mut().take(nn2 + 1).skip(i1) {
            *ai /= -fac;
        }
    }

    // Signed coefficient for the i-th order statistic (0-based).
    let coef = |i: usize| -> f64 {
        let j = n - 1 - i;
        match i.cmp(&j) {
            std::cmp::Ordering::Less => -a[i + 1],
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => a[j + 1],
        }
    };

    let mut sa = 0.0;
    let mut sx = 0.0;
    for (i, &xi) in x.iter().enumerate() {
        sa += coef(i);
        sx += xi / range;
    }
    sa /= n as f64;
    sx /= n as f64;

    let mut ssa = 0.0;
    let mut ssx = 0.0;
    let mut sax = 0.0;
    for (i, &xi) in x.iter().enumerate() {
        let asa = coef(i) - sa;
        let xsx = xi / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }

    // W = 1 - w1, formulated to keep precision when W is close to 1.
    let ssassx = (ssa * ssx).sqrt();
    let w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    let w = (1.0 - w1).clamp(0.0, 1.0);

    Ok(ShapiroWilk {
        w,
        p: p_value(w, n),
    })
}

fn p_value(w: f64, n: usize) -> f64 {
    if n == 3 {
        const PI6: f64 = 1.909_859_317_102_744; // 6/pi
        const STQR: f64 = std::f64::consts::FRAC_PI_3; // asin(sqrt(3/4))
        return (PI6 * (w.sqrt().asin() - STQR)).clamp(0.0, 1.0);
    }
    let an = n as f64;
    let y = (1.0 - w).ln();
    let (y, m, s) = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return 1e-99;
        }
        (-((gamma - y).ln()), poly(&C3, an), poly(&C4, an).exp())
    } else {
        let ln_n = an.ln();
        (y, poly(&C5, ln_n), poly(&C6, ln_n).exp())
    };
    // Upper normal tail of the standardized transform.
    1.0 - normal_cdf((y - m) / s)
}

fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

// Royston (1995) polynomial coefficients.
const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.544, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];
