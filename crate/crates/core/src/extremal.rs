//! The extremal map and brute-force evaluation of the functionals from
//! coefficient sequences.
//!
//! The extremal map `f_M(z) = z + sum_{n>=2} 2M z^n/(n(n-1))` saturates the
//! class coefficient bound `|a_n| + |b_n| <= 2M/(n(n-1))` with equality at
//! every index and witnesses sharpness of every radius computed here. Only
//! coefficient moduli are stored: every functional in scope depends on
//! `(|a_n|, |b_n|)` alone, and `|f(r)|` on the positive axis with nonnegative
//! coefficients is just the coefficient sum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::functionals::{FunctionalId, ParamSet};
use crate::radius::{self, RootResult};
use crate::series::{self, ClassParam, FVariant, Radius};

/// Truncated coefficient moduli `(|a_n|, |b_n|)`, `n = 1..=n_max`, for one
/// class member.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeq {
    a: Vec<f64>,
    b: Vec<f64>,
    class: ClassParam,
}

impl CoefficientSeq {
    /// Truncation order.
    pub fn n_max(&self) -> usize {
        self.a.len()
    }

    pub fn class(&self) -> ClassParam {
        self.class
    }

    /// `|a_n|`, 1-based.
    pub fn a(&self, n: usize) -> f64 {
        self.a[n - 1]
    }

    /// `|b_n|`, 1-based.
    pub fn b(&self, n: usize) -> f64 {
        self.b[n - 1]
    }

    /// Checks normalization (`a_1 = 1`, `b_1 = 0`) and the class bound
    /// `a_n + b_n <= 2M/(n(n-1))` for `n >= 2`.
    pub fn respects_class_bound(&self) -> bool {
        if self.a[0] != 1.0 || self.b[0] != 0.0 {
            return false;
        }
        let m = self.class.get();
        (2..=self.n_max()).all(|n| {
            self.a(n) + self.b(n) <= 2.0 * m / ((n * (n - 1)) as f64) + 1e-15
        })
    }
}

/// Coefficients of the extremal map: `a_1 = 1`, `a_n = 2M/(n(n-1))` for
/// `n >= 2`, all `b_n = 0`.
pub fn extremal_coefficients(class: ClassParam, n_max: usize) -> CoefficientSeq {
    assert!(n_max >= 2, "truncation order must be at least 2");
    let m = class.get();
    let mut a = vec![0.0; n_max];
    a[0] = 1.0;
    for n in 2..=n_max {
        a[n - 1] = 2.0 * m / ((n * (n - 1)) as f64);
    }
    CoefficientSeq { a, b: vec![0.0; n_max], class }
}

/// Seeded pseudo-random class member: for each `n >= 2` the budget
/// `u_n * 2M/(n(n-1))` with `u_n` uniform on `[0, 1]` is split at a uniform
/// point between `a_n` and `b_n`. Reproducible from the seed.
pub fn sample_class_coefficients(class: ClassParam, seed: u64, n_max: usize) -> CoefficientSeq {
    assert!(n_max >= 2, "truncation order must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = class.get();
    let mut a = vec![0.0; n_max];
    let mut b = vec![0.0; n_max];
    a[0] = 1.0;
    for n in 2..=n_max {
        let budget = rng.random::<f64>() * 2.0 * m / ((n * (n - 1)) as f64);
        let split = rng.random::<f64>();
        a[n - 1] = split * budget;
        b[n - 1] = (1.0 - split) * budget;
    }
    CoefficientSeq { a, b, class }
}

/// `f_M(r)` for real positive argument; equals the growth majorant since all
/// coefficients of the extremal map are positive.
pub fn eval_extremal(r: Radius, class: ClassParam) -> f64 {
    series::growth_majorant(r, class)
}

/// Certified bound on what truncating every series at `n_max` can cost the
/// brute-force functional value; `INFINITY` when no bound can be certified
/// (ratio argument at or past its pole).
///
/// All tails are compared against geometric series using the class bound:
/// `sum_{n>K} r^n/(n(n-1)) <= r^{K+1}/((1-r) K(K+1))` and its squared
/// analogues.
pub fn truncation_bound(p: &ParamSet, starred: bool, r: Radius, n_max: usize) -> f64 {
    let rv = r.get();
    let m = p.class.get();
    let k = n_max as f64;
    let geo = rv.powi(n_max as i32 + 1) / (1.0 - rv);
    let rem_linear = 2.0 * m * geo / (k * (k + 1.0));
    let geo2 = (rv * rv).powi(n_max as i32 + 1) / (1.0 - rv * rv);
    let rem_quad = 4.0 * m * m * geo2 / (k * k * (k + 1.0) * (k + 1.0));
    let rem_area = 4.0 * m * m * geo2 / (k * (k + 1.0) * (k + 1.0));

    // growth term: |x^m - y^m| <= m max^{m-1} |x - y| on [0, 1 + 2M]
    let growth_lip = p.beta * p.power as f64 * (1.0 + 2.0 * m).powi(p.power as i32 - 1);
    let mut bound = growth_lip * rem_linear;
    // tail term
    bound += rem_linear;
    // quadratic term
    bound += p.lambda / (1.0 - rv) * rem_quad;
    // polynomial term through its Lipschitz constant at the largest
    // admissible argument
    if !p.poly.is_empty() {
        let s_max = series::area_majorant(r, p.class, FVariant::Squared) + rem_area;
        let (arg_max, amplification) = if starred {
            if s_max >= 1.0 {
                return f64::INFINITY;
            }
            (s_max / (1.0 - s_max), 1.0 / ((1.0 - s_max) * (1.0 - s_max)))
        } else {
            (s_max, 1.0)
        };
        let poly_lip: f64 = p
            .poly
            .iter()
            .enumerate()
            .map(|(j, c)| (j as f64 + 1.0) * c * arg_max.powi(j as i32))
            .sum();
        bound += poly_lip * amplification * rem_area;
    }
    bound
}

/// Required certified remainder for brute-force evaluations.
pub const BRUTE_FORCE_REMAINDER: f64 = 1e-10;

/// Evaluates the functional named by `id` directly from a coefficient
/// sequence:
///
/// ```text
/// beta (sum a_n r^n)^m + sum_{n>=N} (a_n+b_n) r^n
///   + mu sgn(t) sum_{n=1}^{t} (a_n+b_n)^2 r^N/(1-r)
///   + lambda (1 + r/(1-r)) sum_{n=t+1}^{..} (a_n+b_n)^2 r^{2n}
///   + P_q(S_r/pi)              (ratio form for the starred family)
/// ```
///
/// with `S_r/pi = r^2 + sum_{n>=2} n (a_n^2 - b_n^2) r^{2n}`. For the extremal
/// coefficients this equals the corresponding functional plus the boundary
/// distance, up to the certified truncation remainder.
pub fn lhs_bruteforce(
    id: &FunctionalId,
    p: &ParamSet,
    r: Radius,
    c: &CoefficientSeq,
) -> Result<f64> {
    let (eff, starred) = effective_params(id, p)?;
    let bound = truncation_bound(&eff, starred, r, c.n_max());
    if bound.is_nan() || bound > BRUTE_FORCE_REMAINDER {
        return Err(Error::Truncation { required: BRUTE_FORCE_REMAINDER, achieved: bound });
    }
    let t = eff.head_cutoff() as usize;
    if t > c.n_max() {
        return Err(Error::Truncation { required: BRUTE_FORCE_REMAINDER, achieved: f64::INFINITY });
    }
    let rv = r.get();
    let n_max = c.n_max();

    let mut modulus = 0.0; // sum a_n r^n  = |f(r)| for nonnegative moduli
    let mut tail = 0.0; // sum_{n>=N} (a_n + b_n) r^n
    let mut head_sq = 0.0; // sum_{n<=t} (a_n + b_n)^2
    let mut quad = 0.0; // sum_{n>t} (a_n + b_n)^2 r^{2n}
    let mut planar = rv * rv; // S_r/pi, leading n = 1 term
    let mut rn = 1.0;
    let r2 = rv * rv;
    let mut r2n = r2;
    for n in 1..=n_max {
        rn *= rv;
        if n >= 2 {
            r2n *= r2;
        }
        let (an, bn) = (c.a(n), c.b(n));
        modulus += an * rn;
        if n >= eff.start as usize {
            tail += (an + bn) * rn;
        }
        let pair_sq = (an + bn) * (an + bn);
        if n <= t {
            head_sq += pair_sq;
        } else {
            quad += pair_sq * r2n;
        }
        if n >= 2 {
            planar += n as f64 * (an * an - bn * bn) * r2n;
        }
    }

    let mut value = eff.beta * modulus.powi(eff.power as i32);
    value += tail;
    if t >= 1 {
        value += eff.mu * head_sq * rv.powi(eff.start as i32) / (1.0 - rv);
    }
    value += eff.lambda * quad / (1.0 - rv);
    if !eff.poly.is_empty() {
        let arg = if starred {
            if planar >= 1.0 {
                return Err(Error::Domain(format!(
                    "planar ratio undefined: S_r/pi = {planar} >= 1 at r = {rv}"
                )));
            }
            planar / (1.0 - planar)
        } else {
            planar
        };
        value += series::horner(arg, &eff.poly);
    }
    Ok(value)
}

fn effective_params(id: &FunctionalId, p: &ParamSet) -> Result<(ParamSet, bool)> {
    match id {
        FunctionalId::MainPhi => Ok((p.clone(), false)),
        FunctionalId::MainPhiStar => Ok((p.clone(), true)),
        other => match other.reduced_params(p.class, p.variant) {
            Some(eff) => Ok((eff, other.is_starred())),
            None => Err(Error::Domain(format!(
                "{other:?} has no coefficient-series form to evaluate"
            ))),
        },
    }
}

/// Executable sharpness check: with extremal coefficients the functional must
/// stay at or below the boundary distance just under the solved root and
/// exceed it just above.
pub fn sharpness_certificate(
    id: &FunctionalId,
    p: &ParamSet,
    root: &RootResult,
    delta: f64,
) -> Result<bool> {
    if delta.is_nan() || delta <= 0.0 || delta > 1e-3 {
        return Err(Error::Domain(format!("offset {delta} outside (0, 1e-3]")));
    }
    let (eff, starred) = effective_params(id, p)?;
    let hi = root.value + delta;
    if hi >= 1.0 {
        return Err(Error::Domain(format!("offset root {hi} leaves the unit interval")));
    }
    if starred && hi >= radius::starred_wall(eff.class, FVariant::Squared) {
        return Err(Error::Domain(format!("offset root {hi} crosses the ratio wall")));
    }
    let lo = Radius::new(root.value - delta)?;
    let hi = Radius::new(hi)?;

    // grow the truncation order until the remainder certificate clears
    let mut n_max = 256;
    while truncation_bound(&eff, starred, hi, n_max) > BRUTE_FORCE_REMAINDER {
        n_max *= 2;
        if n_max > (1 << 22) {
            return Err(Error::Truncation {
                required: BRUTE_FORCE_REMAINDER,
                achieved: truncation_bound(&eff, starred, hi, n_max),
            });
        }
    }
    let coeffs = extremal_coefficients(eff.class, n_max);
    let distance = series::boundary_distance(eff.class);
    let below = lhs_bruteforce(id, p, lo, &coeffs)?;
    let above = lhs_bruteforce(id, p, hi, &coeffs)?;
    Ok(below <= distance && above > distance)
}

/// `S_r/pi` for the extremal map by planar quadrature of the Jacobian
/// `|h'|^2 - |g'|^2` with `h'(z) = 1 - 2M ln(1-z)` and `g' = 0`, over the disk
/// of radius `r`.
///
/// Tensor-product Gauss-Legendre in radius times trapezoid in angle, doubled
/// until two successive refinements agree to `1e-8`. This is the independent
/// oracle that pins the `4M^2` coefficient of the area majorant.
pub fn area_quadrature(class: ClassParam, r: Radius) -> Result<f64> {
    let rv = r.get();
    if rv > 0.95 {
        return Err(Error::Domain(format!(
            "quadrature accuracy is only budgeted for r <= 0.95, got {rv}"
        )));
    }
    let m = class.get();
    let mut previous = f64::NAN;
    let mut achieved = f64::INFINITY;
    let (mut n_rad, mut n_ang) = (16usize, 32usize);
    while n_rad <= 512 {
        let value = disk_integral(m, rv, n_rad, n_ang);
        if previous.is_finite() {
            achieved = (value - previous).abs();
            if achieved < 1e-8 {
                return Ok(value);
            }
        }
        previous = value;
        n_rad *= 2;
        n_ang *= 2;
    }
    Err(Error::Quadrature { achieved })
}

fn disk_integral(m: f64, r: f64, n_rad: usize, n_ang: usize) -> f64 {
    let nodes = gauss_legendre(n_rad);
    let mut total = 0.0;
    for &(x, w) in &nodes {
        let rho = 0.5 * r * (x + 1.0);
        let mut ring = 0.0;
        for j in 0..n_ang {
            let theta = std::f64::consts::TAU * j as f64 / n_ang as f64;
            // 1 - z for z = rho e^{i theta}
            let re = 1.0 - rho * theta.cos();
            let im = -rho * theta.sin();
            let log_re = 0.5 * (re * re + im * im).ln();
            let log_im = im.atan2(re);
            let hr = 1.0 - 2.0 * m * log_re;
            let hi = -2.0 * m * log_im;
            ring += hr * hr + hi * hi;
        }
        total += w * (0.5 * r) * rho * ring;
    }
    // angular trapezoid weight 2 pi / n_ang, then divide by pi
    2.0 * total / n_ang as f64
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// three-term recurrence.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for k in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..64 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
        if x.abs() > 1e-12 {
            out.push((-x, w));
        }
    }
    out
}

/// `(P_n(x), P_n'(x))` via the Bonnet recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * p - jf * p_prev) / (jf + 1.0);
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}
