//! The root-defining functionals.
//!
//! The master functional combines a growth power, a coefficient tail, a
//! Bohr-Rogosinski head, a weighted quadratic tail, and a polynomial in the
//! area majorant, minus the boundary distance:
//!
//! ```text
//! phi(r) = beta (G_M(r))^m
//!        + sum_{n>=N} 2M r^n/(n(n-1))        (+ r when N = 1)
//!        + mu * head_N(r)
//!        + lambda / (1-r) * quad_t(r)
//!        + P_q(arg)
//!        - (1 + 2M(1 - 2 ln 2))
//! ```
//!
//! with `t = floor((N-1)/2)`, `arg = F_M(r)` for the plain family and
//! `F_M(r) / (1 - F_M(r))` for the ratio family. `quad_t` is the majorant of
//! `sum_{n>=t+1} (|a_n|+|b_n|)^2 r^{2n}`, whose `n = 1` summand contributes
//! `r^2` exactly when `t = 0`.
//!
//! Each reduced equation (the fixed-weight specializations solved over the
//! reference tables) is also provided verbatim for cross-checking, along with
//! the analytic-class reference equations and constants.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::radius;
use crate::series::{self, ClassParam, FVariant, Radius};

const LN_4: f64 = 2.0 * core::f64::consts::LN_2;

/// Weights and indices that parameterize the master functional.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    /// Weight on the growth power `(G_M(r))^m`.
    pub beta: f64,
    /// Weight on the Bohr-Rogosinski head.
    pub mu: f64,
    /// Weight on the quadratic tail.
    pub lambda: f64,
    /// Exponent `m >= 1` on the growth majorant.
    pub power: u32,
    /// Tail start index `N >= 1`.
    pub start: u32,
    /// Polynomial weights `lambda_1..lambda_q` applied to the area argument.
    pub poly: Vec<f64>,
    /// Class constant `M`.
    pub class: ClassParam,
    /// Area-majorant variant used for the polynomial argument.
    pub variant: FVariant,
}

impl ParamSet {
    /// Validates the sign and index constraints: all weights nonnegative,
    /// `power >= 1`, `start >= 1`.
    pub fn new(
        beta: f64,
        mu: f64,
        lambda: f64,
        power: u32,
        start: u32,
        poly: Vec<f64>,
        class: ClassParam,
    ) -> Result<Self> {
        for (name, v) in [("beta", beta), ("mu", mu), ("lambda", lambda)] {
            if v.is_nan() || v < 0.0 {
                return Err(Error::Domain(format!("weight {name} = {v} must be nonnegative")));
            }
        }
        if let Some(bad) = poly.iter().find(|c| c.is_nan() || **c < 0.0) {
            return Err(Error::Domain(format!("polynomial weight {bad} must be nonnegative")));
        }
        if power == 0 || start == 0 {
            return Err(Error::Domain("growth exponent and tail start must be >= 1".into()));
        }
        Ok(Self { beta, mu, lambda, power, start, poly, class, variant: FVariant::default() })
    }

    pub fn with_variant(mut self, variant: FVariant) -> Self {
        self.variant = variant;
        self
    }

    /// Head length `t = floor((N-1)/2)`; derived, never stored.
    pub fn head_cutoff(&self) -> u32 {
        (self.start - 1) / 2
    }
}

/// Names every solvable equation: the two master functionals, the nine
/// reduced fixed-weight equations behind the reference tables, and the
/// analytic-class reference equations and constant pairs.
///
/// The `corNN` spellings double as the CLI tags.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionalId {
    /// Master functional with the plain area argument `F_M(r)`.
    MainPhi,
    /// Master functional with the ratio argument `F_M(r)/(1 - F_M(r))`.
    MainPhiStar,
    /// `|f| + full majorant sum + quadratic term`, first growth power.
    Cor38,
    /// Same combination with the growth term squared.
    Cor39,
    /// Majorant sum plus `(16/9) F_M`.
    Cor35,
    /// Majorant sum plus `(9/8) F_M`.
    Cor36,
    /// Growth term plus majorant sum plus `2(sqrt(5)-1) F_M`.
    Cor311,
    /// Squared growth plus majorant sum plus `(16/9) F_M + lambda2 F_M^2`;
    /// `lambda2` comes from the quartic reference constant.
    Cor312 { lambda2: f64 },
    /// Ratio form of `Cor311`.
    Cor313,
    /// Ratio form of `Cor35`.
    Cor325,
    /// Ratio form of `Cor36`.
    Cor326,
    /// `2(1+r^m) r^n - (1-r)(1-r^m) = 0`.
    AnaRmn { m: u32, n: u32 },
    /// `(1+r^m) r^n - (1-r)(1-r^m) = 0`.
    AnaRpmn { m: u32, n: u32 },
    /// `2(1+r) r^n - (1-r)^2 = 0`.
    AnaRn { n: u32 },
    /// `(1+r) r^n - (1-r)^2 = 0`.
    AnaRpn { n: u32 },
    /// Closed form `2 / (3 + a0 + sqrt(5)(1 + a0))`.
    AnaRa0 { a0: f64 },
    /// `(1-a0^3) r^3 - (1+2 a0) r^2 - 2r + 1 = 0`.
    AnaRpa0 { a0: f64 },
    /// `-405 + 473r + 402r^2 + 38r^3 + 3r^4 + r^5 = 0`.
    AnaQuintic,
    /// `-513 + 910r + 80r^2 + 2r^3 + r^4 = 0`.
    AnaQuartic,
}

impl FunctionalId {
    /// Whether the polynomial argument is the ratio `F/(1-F)`.
    pub fn is_starred(&self) -> bool {
        matches!(self, Self::MainPhiStar | Self::Cor313 | Self::Cor325 | Self::Cor326)
    }

    /// The weight set under which the master functional coincides pointwise
    /// with the named reduced equation; `None` for the master and analytic
    /// tags.
    pub fn reduced_params(&self, class: ClassParam, variant: FVariant) -> Option<ParamSet> {
        let sqrt5 = 5.0_f64.sqrt();
        let (beta, lambda, power, poly): (f64, f64, u32, Vec<f64>) = match self {
            Self::Cor38 => (1.0, 1.0, 1, vec![]),
            Self::Cor39 => (1.0, 1.0, 2, vec![]),
            Self::Cor35 => (0.0, 0.0, 1, vec![16.0 / 9.0]),
            Self::Cor36 => (0.0, 0.0, 1, vec![9.0 / 8.0]),
            Self::Cor311 => (1.0, 0.0, 1, vec![2.0 * (sqrt5 - 1.0)]),
            Self::Cor312 { lambda2 } => (1.0, 0.0, 2, vec![16.0 / 9.0, *lambda2]),
            Self::Cor313 => (1.0, 0.0, 1, vec![2.0 * (sqrt5 - 1.0)]),
            Self::Cor325 => (0.0, 0.0, 1, vec![16.0 / 9.0]),
            Self::Cor326 => (0.0, 0.0, 1, vec![9.0 / 8.0]),
            _ => return None,
        };
        let p = ParamSet::new(beta, 0.0, lambda, power, 1, poly, class)
            .expect("reduced weight sets are valid by construction")
            .with_variant(variant);
        Some(p)
    }
}

fn phi_with_arg(r: Radius, p: &ParamSet, poly_arg: f64) -> f64 {
    let m = p.class.get();
    let rv = r.get();
    let t = p.head_cutoff();

    let mut value = p.beta * series::growth_majorant(r, p.class).powi(p.power as i32);
    value += series::tail_majorant(r, p.class, p.start);
    if p.mu != 0.0 {
        value += p.mu * series::rogosinski_head(r, p.class, p.start);
    }
    if p.lambda != 0.0 {
        let quad = if t == 0 {
            // the n = 1 summand (|a_1|+|b_1|)^2 r^2 = r^2 belongs to the sum
            rv * rv + 4.0 * m * m * series::quadratic_tail(r, 1)
        } else {
            4.0 * m * m * series::quadratic_tail(r, t)
        };
        value += p.lambda * quad / (1.0 - rv);
    }
    if !p.poly.is_empty() {
        value += series::horner(poly_arg, &p.poly);
    }
    value - series::boundary_distance(p.class)
}

/// The master functional with plain area argument; strictly increasing on
/// `(0, 1)` and negative at `0+`, where it tends to `-(1 + 2M(1 - 2 ln 2))`.
pub fn phi_main(r: Radius, p: &ParamSet) -> f64 {
    let arg = series::area_majorant(r, p.class, p.variant);
    phi_with_arg(r, p, arg)
}

/// The master functional with ratio argument `F_M(r)/(1 - F_M(r))`.
///
/// Errors once `F_M(r) >= 1` and the ratio is actually formed; the caller's
/// bracket must stay below that wall. With an empty polynomial the ratio
/// never enters and this coincides with [`phi_main`] on all of `(0, 1)`.
pub fn phi_star(r: Radius, p: &ParamSet) -> Result<f64> {
    if p.poly.is_empty() {
        return Ok(phi_with_arg(r, p, 0.0));
    }
    let f = series::area_majorant(r, p.class, p.variant);
    if f >= 1.0 {
        return Err(Error::Domain(format!(
            "area majorant {f} >= 1 at r = {}; shrink the bracket upper bound",
            r.get()
        )));
    }
    Ok(phi_with_arg(r, p, f / (1.0 - f)))
}

/// The named reduced equation, written out as its own expression.
///
/// Must agree pointwise with [`phi_main`]/[`phi_star`] at
/// [`FunctionalId::reduced_params`]; that identity is enforced by tests.
pub fn corollary_lhs(
    id: &FunctionalId,
    r: Radius,
    class: ClassParam,
    variant: FVariant,
) -> Result<f64> {
    let rv = r.get();
    let m = class.get();
    let ln1mr = (1.0 - rv).ln();
    let g = series::growth_majorant(r, class);
    let f = series::area_majorant(r, class, variant);
    let quad_full = series::aux_terms(r, class, 1).quad_full;
    let sqrt5 = 5.0_f64.sqrt();

    let ratio = || -> Result<f64> {
        if f >= 1.0 {
            return Err(Error::Domain(format!("area majorant {f} >= 1 at r = {rv}")));
        }
        Ok(f / (1.0 - f))
    };

    let value = match id {
        FunctionalId::Cor38 => {
            2.0 * rv - 1.0
                + 2.0 * m * (2.0 * rv - 1.0 + LN_4 + 2.0 * (1.0 - rv) * ln1mr)
                + quad_full / (1.0 - rv)
        }
        FunctionalId::Cor39 => {
            g * g + rv - 1.0
                + 2.0 * m * ((1.0 - rv) * (ln1mr - 1.0) + LN_4)
                + quad_full / (1.0 - rv)
        }
        FunctionalId::Cor35 => {
            rv - 1.0 + 2.0 * m * ((1.0 - rv) * (ln1mr - 1.0) + LN_4) + 16.0 / 9.0 * f
        }
        FunctionalId::Cor36 => {
            rv - 1.0 + 2.0 * m * ((1.0 - rv) * (ln1mr - 1.0) + LN_4) + 9.0 / 8.0 * f
        }
        FunctionalId::Cor311 => {
            g + rv - 1.0
                + 2.0 * m * (rv - 1.0 + LN_4 + (1.0 - rv) * ln1mr)
                + 2.0 * (sqrt5 - 1.0) * f
        }
        FunctionalId::Cor312 { lambda2 } => {
            g * g + rv - 1.0
                + 2.0 * m * (rv - 1.0 + LN_4 + (1.0 - rv) * ln1mr)
                + 16.0 / 9.0 * f
                + lambda2 * f * f
        }
        FunctionalId::Cor313 => {
            g + rv - 1.0
                + 2.0 * m * (rv - 1.0 + LN_4 + (1.0 - rv) * ln1mr)
                + 2.0 * (sqrt5 - 1.0) * ratio()?
        }
        FunctionalId::Cor325 => {
            rv - 1.0 + 2.0 * m * ((1.0 - rv) * (ln1mr - 1.0) + LN_4) + 16.0 / 9.0 * ratio()?
        }
        FunctionalId::Cor326 => {
            rv - 1.0 + 2.0 * m * ((1.0 - rv) * (ln1mr - 1.0) + LN_4) + 9.0 / 8.0 * ratio()?
        }
        other => {
            return Err(Error::Domain(format!("{other:?} is not a reduced-equation tag")))
        }
    };
    Ok(value)
}

/// Residual of the analytic-class reference equation named by `id` at `r`.
///
/// The closed-form tag `AnaRa0` returns the radius value itself rather than a
/// residual.
pub fn analytic_reference(id: &FunctionalId, r: f64) -> Result<f64> {
    let value = match id {
        FunctionalId::AnaRmn { m, n } => {
            check_indices(*m, *n)?;
            let rm = r.powi(*m as i32);
            2.0 * (1.0 + rm) * r.powi(*n as i32) - (1.0 - r) * (1.0 - rm)
        }
        FunctionalId::AnaRpmn { m, n } => {
            check_indices(*m, *n)?;
            let rm = r.powi(*m as i32);
            (1.0 + rm) * r.powi(*n as i32) - (1.0 - r) * (1.0 - rm)
        }
        FunctionalId::AnaRn { n } => {
            check_indices(1, *n)?;
            2.0 * (1.0 + r) * r.powi(*n as i32) - (1.0 - r) * (1.0 - r)
        }
        FunctionalId::AnaRpn { n } => {
            check_indices(1, *n)?;
            (1.0 + r) * r.powi(*n as i32) - (1.0 - r) * (1.0 - r)
        }
        FunctionalId::AnaRa0 { a0 } => {
            check_a0(*a0)?;
            2.0 / (3.0 + a0 + 5.0_f64.sqrt() * (1.0 + a0))
        }
        FunctionalId::AnaRpa0 { a0 } => {
            check_a0(*a0)?;
            (1.0 - a0.powi(3)) * r.powi(3) - (1.0 + 2.0 * a0) * r * r - 2.0 * r + 1.0
        }
        FunctionalId::AnaQuintic => {
            -405.0 + 473.0 * r + 402.0 * r * r + 38.0 * r.powi(3) + 3.0 * r.powi(4) + r.powi(5)
        }
        FunctionalId::AnaQuartic => -513.0 + 910.0 * r + 80.0 * r * r + 2.0 * r.powi(3) + r.powi(4),
        other => {
            return Err(Error::Domain(format!("{other:?} is not an analytic-reference tag")))
        }
    };
    Ok(value)
}

fn check_indices(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("equation indices must be >= 1".into()));
    }
    Ok(())
}

fn check_a0(a0: f64) -> Result<()> {
    if !(0.0..1.0).contains(&a0) {
        return Err(Error::Domain(format!("|a0| = {a0} must lie in [0, 1)")));
    }
    Ok(())
}

/// The named analytic-class constants, with the quartic/quintic pairs solved
/// from their defining polynomials rather than transcribed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceConstants {
    /// Classical self-map Bohr radius, `1/3`.
    pub classical_bohr: f64,
    /// Rogosinski radius, `1/2`.
    pub rogosinski: f64,
    /// Sharp weight on `S_r/pi` alongside the full coefficient sum, `16/9`.
    pub planar_weight: f64,
    /// Sharp weight on `S_r/pi` alongside a squared constant term, `9/8`.
    pub planar_weight_sq: f64,
    /// Radius paired with a first-power `|f(z)|` term, `sqrt(5) - 2`.
    pub root_n1: f64,
    /// Sharp weight on the planar ratio term, `2(sqrt(5) - 1)`.
    pub planar_ratio_weight: f64,
    /// Root in `(0, 1)` of the degree-5 reference polynomial.
    pub quintic_root: f64,
    /// Weight attached to the quintic root, about `18.6095`.
    pub quintic_weight: f64,
    /// Root in `(0, 1)` of the degree-4 reference polynomial.
    pub quartic_root: f64,
    /// Weight attached to the quartic root, about `16.4618`; this is the
    /// second-order coefficient used by `Cor312`.
    pub quartic_weight: f64,
}

/// Compute (and cache) the reference constants.
pub fn reference_constants() -> &'static ReferenceConstants {
    static CONSTANTS: OnceLock<ReferenceConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        let quintic = |t: f64| analytic_reference(&FunctionalId::AnaQuintic, t).unwrap();
        let quartic = |t: f64| analytic_reference(&FunctionalId::AnaQuartic, t).unwrap();
        let a5 = radius::solve(&quintic, 1e-9, 1.0 - 1e-9, radius::DEFAULT_TOL)
            .expect("quintic has a root in (0, 1)")
            .value;
        let a4 = radius::solve(&quartic, 1e-9, 1.0 - 1e-9, radius::DEFAULT_TOL)
            .expect("quartic has a root in (0, 1)")
            .value;
        let quintic_weight = 4.0
            * (486.0 - 261.0 * a5 - 324.0 * a5 * a5
                + 2.0 * a5.powi(3)
                + 30.0 * a5.powi(4)
                + 3.0 * a5.powi(5))
            / (81.0 * (1.0 + a5).powi(3) * (3.0 - 5.0 * a5));
        let quartic_weight =
            (-81.0 + 1044.0 * a4 + 54.0 * a4 * a4 - 116.0 * a4.powi(3) - 5.0 * a4.powi(4))
                / (162.0 * (a4 + 1.0) * (a4 + 1.0) * (2.0 * a4 - 1.0));
        ReferenceConstants {
            classical_bohr: 1.0 / 3.0,
            rogosinski: 0.5,
            planar_weight: 16.0 / 9.0,
            planar_weight_sq: 9.0 / 8.0,
            root_n1: 5.0_f64.sqrt() - 2.0,
            planar_ratio_weight: 2.0 * (5.0_f64.sqrt() - 1.0),
            quintic_root: a5,
            quintic_weight,
            quartic_root: a4,
            quartic_weight,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::boundary_distance;

    fn r(v: f64) -> Radius {
        Radius::new(v).unwrap()
    }

    fn m(v: f64) -> ClassParam {
        ClassParam::new(v).unwrap()
    }

    fn params(beta: f64, lambda: f64, power: u32, start: u32, poly: Vec<f64>, mv: f64) -> ParamSet {
        ParamSet::new(beta, 0.0, lambda, power, start, poly, m(mv)).unwrap()
    }

    #[test]
    fn param_set_validation() {
        assert!(ParamSet::new(-1.0, 0.0, 0.0, 1, 1, vec![], m(0.5)).is_err());
        assert!(ParamSet::new(0.0, -1.0, 0.0, 1, 1, vec![], m(0.5)).is_err());
        assert!(ParamSet::new(0.0, 0.0, 0.0, 0, 1, vec![], m(0.5)).is_err());
        assert!(ParamSet::new(0.0, 0.0, 0.0, 1, 0, vec![], m(0.5)).is_err());
        assert!(ParamSet::new(0.0, 0.0, 0.0, 1, 1, vec![-0.1], m(0.5)).is_err());
        let p = params(1.0, 1.0, 1, 7, vec![], 0.5);
        assert_eq!(p.head_cutoff(), 3);
    }

    #[test]
    fn phi_at_origin_limit() {
        // phi(0+) = -(1 + 2M(1 - 2 ln 2)) for every weight set
        for &mv in &[0.14, 0.7, 1.26] {
            let p = params(1.0, 1.0, 2, 5, vec![1.0, 2.0], mv);
            let v = phi_main(r(1e-9), &p);
            assert!((v + boundary_distance(m(mv))).abs() < 1e-8, "phi(0+) = {v}");
        }
    }

    #[test]
    fn phi_with_zero_weights_is_constant_shift() {
        // beta = 0, M = 0, N = 2: only the boundary constant survives
        let p = params(0.0, 0.0, 1, 2, vec![], 0.0);
        assert!((phi_main(r(0.5), &p) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn star_equals_main_without_polynomial() {
        let p = params(1.0, 1.0, 2, 3, vec![], 0.84);
        for &rv in &[0.1, 0.4, 0.7] {
            assert_eq!(phi_main(r(rv), &p), phi_star(r(rv), &p).unwrap());
        }
    }

    #[test]
    fn star_rejects_past_the_wall() {
        let p = params(0.0, 0.0, 1, 1, vec![16.0 / 9.0], 1.26);
        assert!(phi_star(r(0.9999999), &p).is_err());
    }

    #[test]
    fn reduced_equations_match_master() {
        let sqrt5 = 5.0_f64.sqrt();
        let _ = sqrt5;
        let ids = [
            FunctionalId::Cor38,
            FunctionalId::Cor39,
            FunctionalId::Cor35,
            FunctionalId::Cor36,
            FunctionalId::Cor311,
            FunctionalId::Cor312 { lambda2: reference_constants().quartic_weight },
            FunctionalId::Cor313,
            FunctionalId::Cor325,
            FunctionalId::Cor326,
        ];
        for id in &ids {
            for &mv in &[0.0, 0.14, 0.7, 1.26] {
                let class = m(mv);
                let p = id.reduced_params(class, FVariant::Squared).unwrap();
                for k in 1..100 {
                    let rv = k as f64 / 100.0 * 0.45; // stays below every ratio wall
                    let lhs = corollary_lhs(id, r(rv), class, FVariant::Squared).unwrap();
                    let master = if id.is_starred() {
                        phi_star(r(rv), &p).unwrap()
                    } else {
                        phi_main(r(rv), &p)
                    };
                    assert!(
                        (lhs - master).abs() <= 1e-12,
                        "{id:?} M={mv} r={rv}: reduced {lhs} vs master {master}"
                    );
                }
            }
        }
    }

    #[test]
    fn reduced_lhs_rejects_other_tags() {
        assert!(corollary_lhs(&FunctionalId::MainPhi, r(0.3), m(0.5), FVariant::Squared).is_err());
        assert!(analytic_reference(&FunctionalId::Cor38, 0.3).is_err());
    }

    #[test]
    fn analytic_reference_values() {
        // (1+r) r - (1-r)^2 has root 1/3
        let v = analytic_reference(&FunctionalId::AnaRpn { n: 1 }, 1.0 / 3.0).unwrap();
        assert!(v.abs() < 1e-15);
        // 2(1+r) r - (1-r)^2 has root sqrt(5) - 2
        let v = analytic_reference(&FunctionalId::AnaRn { n: 1 }, 5.0_f64.sqrt() - 2.0).unwrap();
        assert!(v.abs() < 1e-14);
        // closed form at a0 = 0 is (3 - sqrt(5))/2
        let v = analytic_reference(&FunctionalId::AnaRa0 { a0: 0.0 }, 0.0).unwrap();
        assert!((v - (3.0 - 5.0_f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!(analytic_reference(&FunctionalId::AnaRa0 { a0: 1.0 }, 0.0).is_err());
        assert!(analytic_reference(&FunctionalId::AnaRmn { m: 0, n: 1 }, 0.5).is_err());
    }

    #[test]
    fn reference_constant_pairs() {
        let c = reference_constants();
        assert!((c.quintic_root - 0.567284).abs() < 1e-4);
        assert!((c.quintic_weight - 18.6095).abs() < 1e-4);
        assert!((c.quartic_root - 0.537869).abs() < 1e-4);
        assert!((c.quartic_weight - 16.4618).abs() < 1e-4);
        assert_eq!(c.classical_bohr, 1.0 / 3.0);
        assert_eq!(c.rogosinski, 0.5);
        assert_eq!(c.planar_weight, 16.0 / 9.0);
        assert_eq!(c.planar_weight_sq, 9.0 / 8.0);
        assert!((c.root_n1 - 0.2360679774997898).abs() < 1e-15);
        assert!((c.planar_ratio_weight - 2.4721359549995796).abs() < 1e-15);
    }
}
