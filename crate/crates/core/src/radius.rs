//! Certified scalar root finding on `(0, 1)`.
//!
//! The solver is a bisection-safeguarded false-position iteration on a
//! certified sign-change bracket. Every result carries the final bracket
//! (negative side, positive side), the residual at the reported value, the
//! iteration count, and a uniqueness verdict from a monotonicity scan. All
//! paths are deterministic: identical inputs give bit-identical results.

use crate::error::{Error, Result};
use crate::functionals::{self, FunctionalId, ParamSet};
use crate::series::{self, ClassParam, FVariant, Radius};

/// Default residual tolerance, scaled internally by the local slope.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Bracket width at which the iteration stops.
pub const WIDTH_TOL: f64 = 1e-12;

/// Iteration budget; exceeding it signals pathological parameters.
pub const MAX_ITER: u32 = 200;

/// Interior points sampled when hunting for a sign change.
const SCAN_POINTS: usize = 64;

/// Conservative bracket seeds for functionals defined on all of `(0, 1)`.
pub const SEED_LO: f64 = 1e-9;
pub const SEED_HI: f64 = 1.0 - 1e-9;

/// A solved radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    /// Root location in `(0, 1)`.
    pub value: f64,
    /// `|f(value)|`.
    pub residual: f64,
    /// Final certified bracket: `f` is negative at `.0` and positive at `.1`.
    pub bracket: (f64, f64),
    /// Number of refinement iterations performed.
    pub iterations: u32,
    /// Verdict of the strict-monotonicity / single-sign-change scan over the
    /// original search domain.
    pub unique: bool,
}

/// Finds a certified sign-change interval inside `[lo_hint, hi_hint]`.
///
/// Expects `f(lo_hint) < 0`. Scans a fixed interior grid and returns the
/// first adjacent pair straddling zero; if `f` stays negative across the
/// whole interval there is no root to find and the parameters are reported
/// as inadmissible.
pub fn bracket<F: Fn(f64) -> f64>(f: &F, lo_hint: f64, hi_hint: f64) -> Result<(f64, f64)> {
    if lo_hint.is_nan() || hi_hint.is_nan() || lo_hint >= hi_hint {
        return Err(Error::Domain(format!("empty bracket hint [{lo_hint}, {hi_hint}]")));
    }
    let flo = f(lo_hint);
    if flo.is_nan() || flo >= 0.0 {
        return Err(Error::Domain(format!(
            "expected a negative value at the lower hint, got f({lo_hint}) = {flo}"
        )));
    }
    let mut prev_x = lo_hint;
    for k in 1..=SCAN_POINTS {
        let x = lo_hint + (hi_hint - lo_hint) * k as f64 / SCAN_POINTS as f64;
        let fx = f(x);
        if fx > 0.0 {
            return Ok((prev_x, x));
        }
        if fx == 0.0 {
            // expand symmetrically until the signs straddle
            let mut step = WIDTH_TOL;
            for _ in 0..60 {
                let (a, b) = ((x - step).max(lo_hint), (x + step).min(hi_hint));
                if f(a) < 0.0 && f(b) > 0.0 {
                    return Ok((a, b));
                }
                step *= 2.0;
            }
        }
        prev_x = x;
    }
    Err(Error::NoSignChange { lo: lo_hint, hi: hi_hint })
}

/// Solves `f = 0` on a certified bracket to a bracket width of
/// `min(tol, 1e-12)` with at most [`MAX_ITER`] iterations.
///
/// `tol` must be at least `1e-14`. The residual is accepted when it is below
/// `tol` scaled by the local slope (steep functionals cannot resolve `f`
/// values below `slope * width` in double precision).
pub fn solve<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<RootResult> {
    if tol.is_nan() || tol < 1e-14 {
        return Err(Error::Domain(format!("tolerance {tol} below the supported 1e-14")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() || fa >= 0.0 || fb <= 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }
    let width_goal = tol.min(WIDTH_TOL);
    let mut best = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    let mut iterations = 0u32;

    while b - a > width_goal {
        iterations += 1;
        if iterations > MAX_ITER {
            return Err(Error::IterationBudget { budget: MAX_ITER });
        }
        let w = b - a;
        // false-position candidate, safeguarded away from the endpoints;
        // every third step bisects so stalls cannot survive
        let mut x = a - fa * w / (fb - fa);
        if iterations.is_multiple_of(3) || !(x > a + 0.001 * w && x < b - 0.001 * w) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 {
            best = (x, 0.0);
            let (na, nb) = ((x - 0.5 * width_goal).max(a), (x + 0.5 * width_goal).min(b));
            if f(na) < 0.0 && f(nb) > 0.0 {
                a = na;
                b = nb;
            }
            break;
        }
        if fx < 0.0 {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }

    let slope_scale = ((fb - fa) / (b - a).max(f64::MIN_POSITIVE)).abs().max(1.0);
    let allowed = tol * slope_scale;
    let residual = best.1.abs();
    if residual > allowed {
        return Err(Error::Tolerance { residual, allowed });
    }
    Ok(RootResult { value: best.0, residual, bracket: (a, b), iterations, unique: false })
}

/// Strict-monotonicity scan: true iff `f` is strictly increasing across a
/// uniform grid on `domain` and changes sign exactly once there.
///
/// `false` is a meaningful verdict, not an error. Panics if `grid < 100` --
/// coarser scans certify nothing.
pub fn verify_unique<F: Fn(f64) -> f64>(f: &F, domain: (f64, f64), grid: usize) -> bool {
    assert!(grid >= 100, "uniqueness scan needs at least 100 grid points");
    let (lo, hi) = domain;
    let mut sign_changes = 0usize;
    let mut prev = f(lo);
    for k in 1..grid {
        let x = lo + (hi - lo) * k as f64 / (grid - 1) as f64;
        let fx = f(x);
        if fx.partial_cmp(&prev) != Some(std::cmp::Ordering::Greater) {
            return false;
        }
        if prev < 0.0 && fx >= 0.0 {
            sign_changes += 1;
        }
        prev = fx;
    }
    sign_changes == 1
}

/// Upper end of the admissible solve interval for the ratio family: the
/// location where `F_M(r)` reaches `1 - 1e-9`, or the generic seed when the
/// area majorant never gets there.
pub fn starred_wall(class: ClassParam, variant: FVariant) -> f64 {
    let eps = 1e-9;
    let target = 1.0 - eps;
    let g = |x: f64| {
        series::area_majorant(Radius::new(x).expect("wall scan stays inside (0,1)"), class, variant)
            - target
    };
    if g(SEED_HI) < 0.0 {
        return SEED_HI;
    }
    let res = solve(&g, SEED_LO, SEED_HI, DEFAULT_TOL).expect("area majorant is increasing");
    res.bracket.0
}

/// Solves the equation named by `id`: dispatches to the right functional,
/// brackets, solves, and attaches the uniqueness verdict.
///
/// For the master tags the full weight set in `p` is used; for the reduced
/// tags only `p.class` and `p.variant` matter; the analytic tags ignore `p`
/// entirely. The closed-form tag returns its value directly with a zero
/// residual.
pub fn radius_for(id: &FunctionalId, p: &ParamSet, tol: f64) -> Result<RootResult> {
    match id {
        FunctionalId::AnaRa0 { .. } => {
            let value = functionals::analytic_reference(id, 0.0)?;
            Ok(RootResult {
                value,
                residual: 0.0,
                bracket: (value, value),
                iterations: 0,
                unique: true,
            })
        }
        FunctionalId::AnaRmn { .. }
        | FunctionalId::AnaRpmn { .. }
        | FunctionalId::AnaRn { .. }
        | FunctionalId::AnaRpn { .. }
        | FunctionalId::AnaRpa0 { .. }
        | FunctionalId::AnaQuintic
        | FunctionalId::AnaQuartic => {
            // orient so the residual is negative at the left end
            let raw = |x: f64| functionals::analytic_reference(id, x).expect("validated tag");
            functionals::analytic_reference(id, SEED_LO)?;
            let sign = if raw(SEED_LO) <= 0.0 { 1.0 } else { -1.0 };
            let f = |x: f64| sign * raw(x);
            solve_oriented(&f, SEED_LO, SEED_HI, tol)
        }
        FunctionalId::MainPhi | FunctionalId::MainPhiStar => solve_phi(p, id.is_starred(), tol),
        reduced => {
            let pp = reduced
                .reduced_params(p.class, p.variant)
                .expect("all remaining tags are reduced equations");
            solve_phi(&pp, reduced.is_starred(), tol)
        }
    }
}

fn solve_phi(p: &ParamSet, starred: bool, tol: f64) -> Result<RootResult> {
    // the ratio wall only constrains the domain when the ratio is formed
    let starred = starred && !p.poly.is_empty();
    let hi = if starred { starred_wall(p.class, p.variant) } else { SEED_HI };
    let at = |x: f64| Radius::new(x).expect("solver stays inside (0,1)");
    if starred {
        let f = |x: f64| functionals::phi_star(at(x), p).expect("domain wall already excluded");
        solve_oriented(&f, SEED_LO, hi, tol)
    } else {
        let f = |x: f64| functionals::phi_main(at(x), p);
        solve_oriented(&f, SEED_LO, hi, tol)
    }
}

fn solve_oriented<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<RootResult> {
    let (blo, bhi) = bracket(f, lo, hi)?;
    let mut result = solve(f, blo, bhi, tol)?;
    result.unique = verify_unique(f, (lo, hi), 256);
    Ok(result)
}
