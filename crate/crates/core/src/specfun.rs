//! Dilogarithm on the closed unit interval.
//!
//! Every closed form in this crate feeds the dilogarithm an argument of the
//! form `r^2` with `r` in `(0, 1)`, so only real arguments in `[0, 1]` are
//! supported. Accuracy target: relative error below `1e-14` on the whole
//! interval.

use crate::error::{Error, Result};

/// `pi^2 / 6`, the value of the defining series at the right endpoint.
pub const ZETA_2: f64 = core::f64::consts::PI * core::f64::consts::PI / 6.0;

const SERIES_EPS: f64 = 1e-18;
const SERIES_MAX_TERMS: usize = 256;

/// Dilogarithm `Li_2(x) = sum_{k>=1} x^k / k^2` for `x` in `[0, 1]`.
///
/// Direct summation is used for `x <= 1/2`; above that the reflection
/// identity `Li_2(x) + Li_2(1-x) = pi^2/6 - ln(x) ln(1-x)` maps the argument
/// back below `1/2`, so the series argument never exceeds `1/2` and the
/// worst-case term count stays under fifty. `x = 1` returns `pi^2/6` as a
/// closed constant; the series converges far too slowly there.
pub fn li2(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("li2 argument {x} outside [0, 1]")));
    }
    Ok(li2_unit(x))
}

/// `li2` without the domain check, for callers that guarantee `0 <= x <= 1`.
pub(crate) fn li2_unit(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x == 1.0 {
        return ZETA_2;
    }
    if x > 0.5 {
        let y = 1.0 - x;
        return ZETA_2 - x.ln() * y.ln() - li2_series(y);
    }
    li2_series(x)
}

/// Direct summation of the defining series; geometric convergence for
/// `x <= 1/2`.
fn li2_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=SERIES_MAX_TERMS {
        power *= x;
        let term = power / ((k * k) as f64);
        sum += term;
        if term < SERIES_EPS * sum.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum
}

/// Partial sum `sum_{k=1}^{n_max} x^k / k^2`, the independent test oracle for
/// [`li2`].
///
/// Requires `0 <= x < 1` and `n_max >= 1`. The truncation remainder obeys
/// `sum_{k>n} x^k/k^2 <= x^{n+1} / ((1-x) (n+1)^2)`, which callers use to turn
/// an agreement check into a certified bound.
pub fn li2_series_oracle(x: f64, n_max: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "li2_series_oracle argument {x} outside [0, 1); the truncation bound cannot be certified at x = 1"
        )));
    }
    if n_max == 0 {
        return Err(Error::Domain("li2_series_oracle needs n_max >= 1".into()));
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=n_max {
        power *= x;
        if power == 0.0 {
            break;
        }
        sum += power / ((k * k) as f64);
    }
    Ok(sum)
}

/// Remainder bound for the oracle: `x^{n+1} / ((1-x) (n+1)^2)`.
pub fn li2_oracle_remainder(x: f64, n_max: usize) -> f64 {
    let n1 = (n_max + 1) as f64;
    x.powf(n1) / ((1.0 - x) * n1 * n1)
}
