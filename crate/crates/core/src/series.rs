//! Closed forms of the majorant series attached to the harmonic class, each
//! backed elsewhere by a truncated-sum oracle.
//!
//! Throughout, `M` is the class constant and `r` the modulus. The building
//! blocks are
//!
//! * `G_M(r) = r + 2M (r + (1-r) ln(1-r))` - the growth majorant,
//! * `sum_{n>=N} 2M r^n/(n(n-1))` - the tail majorant,
//! * `sum_{n>=t+1} r^{2n}/(n^2(n-1)^2)` - the quadratic tail in dilogarithm
//!   closed form,
//! * `F_M(r) = r^2 + 4M^2 [r^2 Li_2(r^2) - (r^2 + (1-r^2) ln(1-r^2))]` - the
//!   normalized image-area majorant,
//!
//! plus the boundary distance `1 + 2M(1 - 2 ln 2)` of the extremal map.

use crate::error::{Error, Result};
use crate::specfun::li2_unit;

const LN_2: f64 = core::f64::consts::LN_2;

/// Supremum of the admissible class-constant range, `1 / (2 (ln 4 - 1))`.
pub fn class_param_sup() -> f64 {
    1.0 / (2.0 * (4.0_f64.ln() - 1.0))
}

/// The class constant `M`, restricted to `0 <= M < 1/(2(ln 4 - 1))`.
///
/// The upper endpoint is excluded because the boundary distance
/// `1 + 2M(1 - 2 ln 2)` vanishes there, which would make every Bohr-type
/// inequality degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParam(f64);

impl ClassParam {
    pub fn new(m: f64) -> Result<Self> {
        if m.is_nan() || m < 0.0 || m >= class_param_sup() {
            return Err(Error::Domain(format!(
                "class constant {m} outside [0, {:.10})",
                class_param_sup()
            )));
        }
        Ok(Self(m))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// A modulus strictly inside the unit interval, `0 < r < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Radius(f64);

impl Radius {
    pub fn new(r: f64) -> Result<Self> {
        if r.is_nan() || r <= 0.0 || r >= 1.0 {
            return Err(Error::Domain(format!("radius {r} outside the open interval (0, 1)")));
        }
        Ok(Self(r))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Which coefficient multiplies the dilogarithm bracket of the area majorant.
///
/// The coefficient-series derivation gives `4M^2`; `Linear` swaps in `4M` and
/// is kept only so table forensics can compare the two readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FVariant {
    #[default]
    Squared,
    Linear,
}

/// `sum_{n>=2} x^n / (n(n-1)) = x + (1-x) ln(1-x)` for `|x| < 1`.
///
/// Switches to the series below `|x| = 1e-3`, where the closed form loses
/// about half its digits to cancellation.
pub fn log_tail(x: f64) -> f64 {
    debug_assert!(x.abs() < 1.0);
    if x.abs() < 1e-3 {
        let mut sum = 0.0;
        let mut power = x;
        for n in 2..=12u32 {
            power *= x;
            sum += power / ((n * (n - 1)) as f64);
        }
        return sum;
    }
    x + (1.0 - x) * (1.0 - x).ln()
}

/// `sum_{n>=2} x^n / (n^2 (n-1)^2)` in closed form,
/// `(1+x) Li_2(x) + 2(x-1) ln(1-x) - 3x`.
fn quad_tail_full(x: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&x));
    if x < 1e-3 {
        let mut sum = 0.0;
        let mut power = x;
        for n in 2..=10u64 {
            power *= x;
            let d = (n * n * (n - 1) * (n - 1)) as f64;
            sum += power / d;
        }
        return sum;
    }
    (1.0 + x) * li2_unit(x) + 2.0 * (x - 1.0) * (1.0 - x).ln() - 3.0 * x
}

/// `sum_{n>=2} x^n / (n (n-1)^2) = x Li_2(x) - (x + (1-x) ln(1-x))`.
fn area_bracket(x: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&x));
    if x < 1e-3 {
        let mut sum = 0.0;
        let mut power = x;
        for n in 2..=10u64 {
            power *= x;
            let d = (n * (n - 1) * (n - 1)) as f64;
            sum += power / d;
        }
        return sum;
    }
    x * li2_unit(x) - log_tail(x)
}

/// Growth majorant `G_M(r) = r + 2M (r + (1-r) ln(1-r))`; the sharp upper
/// bound for `|f(z)|` at `|z| = r` over the class, attained by the extremal
/// map.
pub fn growth_majorant(r: Radius, class: ClassParam) -> f64 {
    r.get() + 2.0 * class.get() * log_tail(r.get())
}

/// Majorant of the coefficient tail `sum_{n>=start} (|a_n|+|b_n|) r^n`.
///
/// For `start = 1` the normalization term `r` (from `a_1 = 1`) is included;
/// from `start = 2` on the value is `2M (r + (1-r)ln(1-r) - sum_{n=2}^{start-1}
/// r^n/(n(n-1)))`.
pub fn tail_majorant(r: Radius, class: ClassParam, start: u32) -> f64 {
    assert!(start >= 1, "tail start index must be positive");
    let rv = r.get();
    let mut tail = 2.0 * class.get() * log_tail(rv);
    let mut power = rv;
    for n in 2..start {
        power *= rv;
        tail -= 2.0 * class.get() * power / ((n * (n - 1)) as f64);
    }
    if start == 1 {
        tail += rv;
    }
    tail.max(0.0)
}

/// Quadratic tail `sum_{n>=max(cutoff+1, 2)} r^{2n} / (n^2 (n-1)^2)` in closed
/// form; `cutoff` is the head length `t`, and `cutoff` in `{0, 1}` subtracts
/// nothing.
pub fn quadratic_tail(r: Radius, cutoff: u32) -> f64 {
    let x = r.get() * r.get();
    let mut value = quad_tail_full(x);
    let mut power = x;
    for n in 2..=cutoff as u64 {
        let nf = n as f64;
        power *= x;
        value -= power / (nf * nf * (nf - 1.0) * (nf - 1.0));
    }
    value.max(0.0)
}

/// Head of the Bohr-Rogosinski combination,
/// `sgn(t) (r^N / (1-r)) (1 + 4M^2 sum_{n=2}^{t} 1/(n^2(n-1)^2))` with
/// `t = floor((N-1)/2)`.
///
/// The `n = 1` summand of `sum (|a_n|+|b_n|)^2` is `(|a_1|+|b_1|)^2 = 1` by
/// normalization, which is where the leading `1` inside the parentheses comes
/// from; the class bound only applies from `n = 2`. Zero for `N` in `{1, 2}`.
pub fn rogosinski_head(r: Radius, class: ClassParam, start: u32) -> f64 {
    assert!(start >= 1, "head start index must be positive");
    let t = (start - 1) / 2;
    if t == 0 {
        return 0.0;
    }
    let mut coeff_sum = 0.0;
    for n in 2..=t as u64 {
        let nf = n as f64;
        coeff_sum += 1.0 / (nf * nf * (nf - 1.0) * (nf - 1.0));
    }
    let m = class.get();
    let rv = r.get();
    rv.powi(start as i32) / (1.0 - rv) * (1.0 + 4.0 * m * m * coeff_sum)
}

/// Normalized image-area majorant `F_M(r)`.
///
/// `Squared` returns `r^2 + 4M^2 [r^2 Li_2(r^2) - (r^2 + (1-r^2) ln(1-r^2))]`,
/// which is exactly `r^2 + 4M^2 sum_{n>=2} r^{2n}/(n(n-1)^2)`; `Linear`
/// replaces `4M^2` by `4M`. Strictly increasing in `r` either way.
pub fn area_majorant(r: Radius, class: ClassParam, variant: FVariant) -> f64 {
    let x = r.get() * r.get();
    let m = class.get();
    let coeff = match variant {
        FVariant::Squared => 4.0 * m * m,
        FVariant::Linear => 4.0 * m,
    };
    x + coeff * area_bracket(x)
}

/// The three recurring auxiliary quantities of the reduced (`N <= 4`)
/// equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxTerms {
    /// `r^2 + 4M^2 sum_{n>=2} r^{2n}/(n^2(n-1)^2)`: the full quadratic
    /// majorant including its unit `n = 1` head.
    pub quad_full: f64,
    /// `(G_M(r))^m - 1 - 2M(1 - 2 ln 2)`: growth power minus the boundary
    /// distance.
    pub growth_gap: f64,
    /// `r + (1-r) ln(1-r)`: the logarithmic tail sum.
    pub log_tail: f64,
}

/// Evaluate [`AuxTerms`] at `(r, M)` with growth exponent `power`.
pub fn aux_terms(r: Radius, class: ClassParam, power: u32) -> AuxTerms {
    assert!(power >= 1, "growth exponent must be positive");
    let m = class.get();
    let quad_full = r.get() * r.get() + 4.0 * m * m * quadratic_tail(r, 1);
    let growth_gap = growth_majorant(r, class).powi(power as i32) - boundary_distance(class);
    AuxTerms { quad_full, growth_gap, log_tail: log_tail(r.get()) }
}

/// `sum_j coeffs[j-1] * w^j`, the nonnegative weight polynomial; zero when the
/// coefficient list is empty.
pub fn poly_eval(w: f64, coeffs: &[f64]) -> Result<f64> {
    if w.is_nan() || w < 0.0 {
        return Err(Error::Domain(format!("polynomial argument {w} is negative or NaN")));
    }
    if let Some(bad) = coeffs.iter().find(|c| c.is_nan() || **c < 0.0) {
        return Err(Error::Domain(format!("polynomial weight {bad} is negative or NaN")));
    }
    Ok(horner(w, coeffs))
}

/// Horner evaluation of `sum_j coeffs[j-1] w^j` without validation.
pub(crate) fn horner(w: f64, coeffs: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * w + c;
    }
    acc * w
}

/// Distance from the origin to the boundary of the extremal image,
/// `1 + 2M (1 - 2 ln 2)`; strictly decreasing in `M` and positive on the whole
/// admissible range.
pub fn boundary_distance(class: ClassParam) -> f64 {
    1.0 + 2.0 * class.get() * (1.0 - 2.0 * LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> Radius {
        Radius::new(v).unwrap()
    }

    fn m(v: f64) -> ClassParam {
        ClassParam::new(v).unwrap()
    }

    #[test]
    fn class_param_range() {
        assert!(ClassParam::new(0.0).is_ok());
        assert!(ClassParam::new(1.26).is_ok());
        assert!(ClassParam::new(class_param_sup()).is_err());
        assert!(ClassParam::new(-0.1).is_err());
        assert!(ClassParam::new(f64::NAN).is_err());
        assert!((class_param_sup() - 1.2943497247810452).abs() < 1e-12);
    }

    #[test]
    fn radius_range() {
        assert!(Radius::new(0.5).is_ok());
        assert!(Radius::new(0.0).is_err());
        assert!(Radius::new(1.0).is_err());
        assert!(Radius::new(f64::NAN).is_err());
    }

    #[test]
    fn growth_values() {
        // M = 0 degenerates to the identity-map bound.
        assert_eq!(growth_majorant(r(0.5), m(0.0)), 0.5);
        let g = growth_majorant(r(0.5), m(0.14));
        let expected = 0.5 + 0.28 * (0.5 + 0.5 * 0.5_f64.ln());
        assert!((g - expected).abs() < 1e-15);
        assert!((g - 0.542959).abs() < 1e-6);
        // vanishes as r -> 0+
        assert!(growth_majorant(r(1e-12), m(1.0)) < 1e-11);
    }

    #[test]
    fn log_tail_small_argument_branch() {
        // both branches must agree where they meet
        for &x in &[9.9e-4f64, 1.1e-3] {
            let series: f64 = (2..=30u64)
                .map(|n| x.powi(n as i32) / ((n * (n - 1)) as f64))
                .sum();
            assert!((log_tail(x) - series).abs() < 1e-15);
        }
    }

    #[test]
    fn tail_values() {
        let t2 = tail_majorant(r(0.5), m(0.5), 2);
        assert!((t2 - (0.5 + 0.5 * 0.5_f64.ln())).abs() < 1e-15);
        let t3 = tail_majorant(r(0.5), m(0.5), 3);
        assert!((t3 - (t2 - 0.125)).abs() < 1e-15);
        // N = 1 includes the unit first coefficient
        let t1 = tail_majorant(r(0.5), m(0.5), 1);
        assert!((t1 - (0.5 + t2)).abs() < 1e-15);
        // decreasing in the start index, nonnegative far out
        let mut prev = t1;
        for start in 2..40 {
            let t = tail_majorant(r(0.5), m(0.5), start);
            assert!(t <= prev && t >= 0.0);
            prev = t;
        }
    }

    #[test]
    fn quadratic_tail_matches_direct_sum() {
        let x: f64 = 0.25;
        let direct: f64 = (2..200u64)
            .map(|n| x.powi(n as i32) / ((n * n * (n - 1) * (n - 1)) as f64))
            .sum();
        assert!((quadratic_tail(r(0.5), 1) - direct).abs() < 1e-15);
        assert!((direct - 0.0160889).abs() < 1e-7);
        // cutoff 0 and 1 subtract nothing
        assert_eq!(quadratic_tail(r(0.5), 0), quadratic_tail(r(0.5), 1));
        // cutoff 5 drops the first four summands
        let from6: f64 = (6..200u64)
            .map(|n| x.powi(n as i32) / ((n * n * (n - 1) * (n - 1)) as f64))
            .sum();
        assert!((quadratic_tail(r(0.5), 5) - from6).abs() < 1e-14);
    }

    #[test]
    fn head_values() {
        assert_eq!(rogosinski_head(r(0.9), m(1.0), 1), 0.0);
        assert_eq!(rogosinski_head(r(0.9), m(1.0), 2), 0.0);
        // N = 3: unit head only
        assert!((rogosinski_head(r(0.5), m(0.77), 3) - 0.25).abs() < 1e-15);
        // N = 5, t = 2: (r^5/(1-r)) (1 + 4 M^2 / 4)
        assert!((rogosinski_head(r(0.5), m(0.5), 5) - 0.078125).abs() < 1e-15);
    }

    #[test]
    fn area_values() {
        assert_eq!(area_majorant(r(0.5), m(0.0), FVariant::Squared), 0.25);
        assert_eq!(area_majorant(r(0.5), m(0.0), FVariant::Linear), 0.25);
        let x: f64 = 0.25;
        let direct: f64 =
            (2..200u64).map(|n| x.powi(n as i32) / ((n * (n - 1) * (n - 1)) as f64)).sum();
        let f = area_majorant(r(0.5), m(0.5), FVariant::Squared);
        assert!((f - (0.25 + direct)).abs() < 1e-15);
        let flin = area_majorant(r(0.5), m(0.5), FVariant::Linear);
        assert!((flin - (0.25 + 2.0 * direct)).abs() < 1e-15);
    }

    #[test]
    fn aux_term_values() {
        let at = aux_terms(r(0.5), m(0.0), 1);
        assert!((at.quad_full - 0.25).abs() < 1e-15);
        assert!((at.growth_gap - (-0.5)).abs() < 1e-15);
        assert!((at.log_tail - (0.5 + 0.5 * 0.5_f64.ln())).abs() < 1e-15);
        let at2 = aux_terms(r(0.5), m(0.5), 2);
        let g = growth_majorant(r(0.5), m(0.5));
        assert!((at2.growth_gap - (g * g - boundary_distance(m(0.5)))).abs() < 1e-15);
    }

    #[test]
    fn poly_eval_checks() {
        assert_eq!(poly_eval(0.3, &[]).unwrap(), 0.0);
        assert!((poly_eval(0.5, &[16.0 / 9.0]).unwrap() - 8.0 / 9.0).abs() < 1e-16);
        let v = poly_eval(0.2, &[16.0 / 9.0, 16.4618]).unwrap();
        assert!((v - (16.0 / 45.0 + 16.4618 * 0.04)).abs() < 1e-12);
        assert!(poly_eval(-0.1, &[1.0]).is_err());
        assert!(poly_eval(0.1, &[1.0, -2.0]).is_err());
    }

    #[test]
    fn boundary_values() {
        assert_eq!(boundary_distance(m(0.0)), 1.0);
        assert!((boundary_distance(m(1.0)) - (3.0 - 4.0 * LN_2)).abs() < 1e-15);
        assert!((boundary_distance(m(1.0)) - 0.2274113).abs() < 1e-7);
        // vanishes at the excluded supremum
        let eps = 1e-13;
        let near_sup = ClassParam::new(class_param_sup() - eps).unwrap();
        assert!(boundary_distance(near_sup).abs() < 1e-12);
        // exact rearrangement: d(M) + 2M(2 ln 2 - 1) = 1
        for &mv in &[0.14, 0.5, 1.26] {
            let d = boundary_distance(m(mv));
            assert_eq!(d + 2.0 * mv * (2.0 * LN_2 - 1.0), 1.0);
        }
    }

    #[test]
    fn growth_minus_r_equals_tail_from_two() {
        for &rv in &[0.1, 0.5, 0.9] {
            for &mv in &[0.14, 0.7, 1.26] {
                let lhs = growth_majorant(r(rv), m(mv)) - rv;
                let rhs = tail_majorant(r(rv), m(mv), 2);
                assert!((lhs - rhs).abs() < 1e-15);
            }
        }
    }
}
