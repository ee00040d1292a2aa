//! Truncated Taylor jets: exact differentiation of expressions to order 3,
//! plus the independent central-difference oracle everything is checked
//! against.
//!
//! Jets store plain derivative values (not scaled Taylor coefficients), so
//! slot `k` of a [`Jet1`] is the k-th derivative at the expansion point.

use crate::error::Result;
use crate::exprscene::expr::{eval_jet, Expr, Var};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar type that supports jet arithmetic. Implemented by `f64` (order 0),
/// [`Jet1`] and [`Jet2`]; expression evaluation is generic over it.
pub trait JetValue:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;

    /// The order-0 slot.
    fn value(&self) -> f64;

    /// Composition with an outer function given by its derivatives
    /// `[f, f', f'', f''']` at `self.value()` (Faà di Bruno to order 3).
    fn compose(self, outer: [f64; 4]) -> Self;

    /// Integer power by repeated squaring; exact for integer data.
    fn powi(self, n: i64) -> Self {
        if n == 0 {
            return Self::constant(1.0);
        }
        let neg = n < 0;
        let mut k = n.unsigned_abs();
        let mut base = self;
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(a) => a * base,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        let acc = acc.unwrap();
        if neg {
            Self::constant(1.0) / acc
        } else {
            acc
        }
    }
}

impl JetValue for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn compose(self, outer: [f64; 4]) -> Self {
        outer[0]
    }
    fn powi(self, n: i64) -> Self {
        f64::powi(self, n as i32)
    }
}

/// Univariate jet: value and derivatives w.r.t. one parameter up to order 3.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet1(pub [f64; 4]);

impl Jet1 {
    /// Seed for the evaluation variable itself: `(s, 1, 0, 0)`.
    pub fn variable(s: f64) -> Self {
        Jet1([s, 1.0, 0.0, 0.0])
    }

    pub fn d0(&self) -> f64 {
        self.0[0]
    }
    pub fn d1(&self) -> f64 {
        self.0[1]
    }
    pub fn d2(&self) -> f64 {
        self.0[2]
    }
    pub fn d3(&self) -> f64 {
        self.0[3]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, o: Jet1) -> Jet1 {
        Jet1([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, o: Jet1) -> Jet1 {
        Jet1([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        Jet1([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, o: Jet1) -> Jet1 {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Jet1([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * a2 * b1 + 3.0 * a1 * b2 + a0 * b3,
        ])
    }
}

impl Div for Jet1 {
    type Output = Jet1;
    fn div(self, o: Jet1) -> Jet1 {
        self * o.compose(recip_family(o.0[0]))
    }
}

impl JetValue for Jet1 {
    fn constant(c: f64) -> Self {
        Jet1([c, 0.0, 0.0, 0.0])
    }

    fn value(&self) -> f64 {
        self.0[0]
    }

    fn compose(self, f: [f64; 4]) -> Self {
        let g1 = self.0[1];
        let g2 = self.0[2];
        let g3 = self.0[3];
        Jet1([
            f[0],
            f[1] * g1,
            f[2] * g1 * g1 + f[1] * g2,
            f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3,
        ])
    }
}

/// Bivariate jet: mixed partials in (s, t) to total order 2, plus the two
/// third-order slots `d_sss` and `d_sst` carried for ruled-surface checks.
///
/// Slot layout: `[v, s, t, ss, st, tt, sss, sst]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2(pub [f64; 8]);

pub const J2_V: usize = 0;
pub const J2_S: usize = 1;
pub const J2_T: usize = 2;
pub const J2_SS: usize = 3;
pub const J2_ST: usize = 4;
pub const J2_TT: usize = 5;
pub const J2_SSS: usize = 6;
pub const J2_SST: usize = 7;

impl Jet2 {
    pub fn var_s(s: f64) -> Self {
        Jet2([s, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn var_t(t: f64) -> Self {
        Jet2([t, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn v(&self) -> f64 {
        self.0[J2_V]
    }
    pub fn ds(&self) -> f64 {
        self.0[J2_S]
    }
    pub fn dt(&self) -> f64 {
        self.0[J2_T]
    }
    pub fn dss(&self) -> f64 {
        self.0[J2_SS]
    }
    pub fn dst(&self) -> f64 {
        self.0[J2_ST]
    }
    pub fn dtt(&self) -> f64 {
        self.0[J2_TT]
    }
    pub fn dsss(&self) -> f64 {
        self.0[J2_SSS]
    }
    pub fn dsst(&self) -> f64 {
        self.0[J2_SST]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        let mut r = [0.0; 8];
        for i in 0..8 {
            r[i] = self.0[i] + o.0[i];
        }
        Jet2(r)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        let mut r = [0.0; 8];
        for i in 0..8 {
            r[i] = self.0[i] - o.0[i];
        }
        Jet2(r)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        let mut r = [0.0; 8];
        for i in 0..8 {
            r[i] = -self.0[i];
        }
        Jet2(r)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let a = self.0;
        let b = o.0;
        Jet2([
            a[J2_V] * b[J2_V],
            a[J2_S] * b[J2_V] + a[J2_V] * b[J2_S],
            a[J2_T] * b[J2_V] + a[J2_V] * b[J2_T],
            a[J2_SS] * b[J2_V] + 2.0 * a[J2_S] * b[J2_S] + a[J2_V] * b[J2_SS],
            a[J2_ST] * b[J2_V] + a[J2_S] * b[J2_T] + a[J2_T] * b[J2_S] + a[J2_V] * b[J2_ST],
            a[J2_TT] * b[J2_V] + 2.0 * a[J2_T] * b[J2_T] + a[J2_V] * b[J2_TT],
            a[J2_SSS] * b[J2_V]
                + 3.0 * a[J2_SS] * b[J2_S]
                + 3.0 * a[J2_S] * b[J2_SS]
                + a[J2_V] * b[J2_SSS],
            a[J2_SST] * b[J2_V]
                + a[J2_SS] * b[J2_T]
                + 2.0 * a[J2_ST] * b[J2_S]
                + 2.0 * a[J2_S] * b[J2_ST]
                + a[J2_T] * b[J2_SS]
                + a[J2_V] * b[J2_SST],
        ])
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        self * o.compose(recip_family(o.0[J2_V]))
    }
}

impl JetValue for Jet2 {
    fn constant(c: f64) -> Self {
        Jet2([c, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    fn value(&self) -> f64 {
        self.0[J2_V]
    }

    fn compose(self, f: [f64; 4]) -> Self {
        let g = self.0;
        let gs = g[J2_S];
        let gt = g[J2_T];
        Jet2([
            f[0],
            f[1] * gs,
            f[1] * gt,
            f[2] * gs * gs + f[1] * g[J2_SS],
            f[2] * gs * gt + f[1] * g[J2_ST],
            f[2] * gt * gt + f[1] * g[J2_TT],
            f[3] * gs * gs * gs + 3.0 * f[2] * gs * g[J2_SS] + f[1] * g[J2_SSS],
            f[3] * gs * gs * gt
                + f[2] * (2.0 * gs * g[J2_ST] + g[J2_SS] * gt)
                + f[1] * g[J2_SST],
        ])
    }
}

/// Derivatives of `1/u` at `u`, used for jet division.
pub(crate) fn recip_family(u: f64) -> [f64; 4] {
    let r = 1.0 / u;
    let r2 = r * r;
    [r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2]
}

/// Evaluates a one-parameter expression as a jet at `s0`.
///
/// Derivative slots above `order` are zeroed; `order` must be <= 3.
/// The expression may only use the variable `s`.
pub fn jet_eval_1d(expr: &Expr, s0: f64, order: usize) -> Result<Jet1> {
    assert!(order <= 3, "jet order capped at 3");
    debug_assert!(!expr.uses_var(Var::T), "curve expressions use only s");
    let mut jet = eval_jet(expr, Jet1::variable(s0), Jet1::constant(f64::NAN))
        .map_err(|e| e.at_param1(s0))?;
    for k in (order + 1)..4 {
        jet.0[k] = 0.0;
    }
    Ok(jet)
}

/// Evaluates a two-parameter expression as a bivariate jet at `(s0, t0)`.
pub fn jet_eval_2d(expr: &Expr, s0: f64, t0: f64) -> Result<Jet2> {
    eval_jet(expr, Jet2::var_s(s0), Jet2::var_t(t0)).map_err(|e| e.at_param2(s0, t0))
}

impl crate::error::Error {
    pub(crate) fn at_param1(self, s: f64) -> Self {
        match self {
            crate::error::Error::Domain { message } => crate::error::Error::Domain {
                message: format!("{message} (at s = {s})"),
            },
            other => other,
        }
    }

    pub(crate) fn at_param2(self, s: f64, t: f64) -> Self {
        match self {
            crate::error::Error::Domain { message } => crate::error::Error::Domain {
                message: format!("{message} (at (s, t) = ({s}, {t}))"),
            },
            other => other,
        }
    }
}

// ---------------------------------------------------------------------------
// Finite-difference oracle
// ---------------------------------------------------------------------------

/// Central-difference estimate of a mixed partial derivative with one
/// Richardson extrapolation step; error O(h^4) for smooth integrands.
///
/// `multi[i]` is the derivative order in variable `i` (total order <= 3).
/// NaN from the integrand propagates to the result.
pub fn fd_partial<F>(f: F, point: &[f64], multi: &[usize], h: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    assert_eq!(point.len(), multi.len());
    let total: usize = multi.iter().sum();
    assert!(total <= 3, "oracle supports total order <= 3");
    let d_h = fd_once(&f, point, multi, h);
    let d_h2 = fd_once(&f, point, multi, h / 2.0);
    (4.0 * d_h2 - d_h) / 3.0
}

fn fd_once<F>(f: &F, point: &[f64], multi: &[usize], h: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    // Tensor product of 1-D central stencils, one per variable.
    let mut nodes: Vec<(Vec<f64>, f64)> = vec![(point.to_vec(), 1.0)];
    for (var, &order) in multi.iter().enumerate() {
        if order == 0 {
            continue;
        }
        let stencil: &[(f64, f64)] = match order {
            1 => &[(-1.0, -0.5), (1.0, 0.5)],
            2 => &[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)],
            3 => &[(-2.0, -0.5), (-1.0, 1.0), (1.0, -1.0), (2.0, 0.5)],
            _ => unreachable!(),
        };
        let scale = h.powi(order as i32);
        let mut next = Vec::with_capacity(nodes.len() * stencil.len());
        for (pt, w) in &nodes {
            for &(offset, coeff) in stencil {
                let mut p = pt.clone();
                p[var] += offset * h;
                next.push((p, w * coeff / scale));
            }
        }
        nodes = next;
    }
    nodes.iter().map(|(p, w)| w * f(p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprscene::expr::parse_expr;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn sine_jet_at_zero() {
        let e = parse_expr("sin(s)").unwrap();
        let j = jet_eval_1d(&e, 0.0, 3).unwrap();
        assert_eq!(j.0, [0.0, 1.0, 0.0, -1.0]);
    }

    #[test]
    fn square_jet_is_exact() {
        let e = parse_expr("s^2").unwrap();
        let j = jet_eval_1d(&e, 3.0, 3).unwrap();
        assert_eq!(j.0, [9.0, 6.0, 2.0, 0.0]);
    }

    #[test]
    fn log_domain_error_names_point() {
        let e = parse_expr("ln(s)").unwrap();
        let err = jet_eval_1d(&e, -1.0, 3).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("ln"), "{msg}");
        assert!(msg.contains("-1"), "{msg}");
    }

    #[test]
    fn product_jet2() {
        let e = parse_expr("s*t").unwrap();
        let j = jet_eval_2d(&e, 2.0, 3.0).unwrap();
        assert_eq!(j.v(), 6.0);
        assert_eq!(j.ds(), 3.0);
        assert_eq!(j.dt(), 2.0);
        assert_eq!(j.dst(), 1.0);
        assert_eq!(j.dss(), 0.0);
        assert_eq!(j.dtt(), 0.0);
    }

    #[test]
    fn cosine_jet2() {
        let e = parse_expr("cos(t)").unwrap();
        let j = jet_eval_2d(&e, 0.0, 0.0).unwrap();
        assert_eq!(j.v(), 1.0);
        assert_eq!(j.dt(), 0.0);
        assert_eq!(j.dtt(), -1.0);
    }

    #[test]
    fn oracle_first_derivative() {
        let d = fd_partial(|p| p[0] * p[0], &[3.0], &[1], 1e-4);
        assert_close(d, 6.0, 1e-9);
    }

    #[test]
    fn oracle_second_derivative() {
        let d = fd_partial(|p| p[0].sin(), &[0.0], &[2], 1e-4);
        assert_close(d, 0.0, 1e-8);
    }

    #[test]
    fn oracle_matches_jet_for_exp() {
        let e = parse_expr("exp(s)").unwrap();
        let j = jet_eval_1d(&e, 1.0, 3).unwrap();
        let d = fd_partial(|p| p[0].exp(), &[1.0], &[1], 1e-4);
        assert_close(d, j.d1(), 1e-8);
        assert_close(j.d1(), std::f64::consts::E, 1e-12);
    }

    #[test]
    fn third_order_slots_match_oracle() {
        // d_sss and d_sst of an expression with genuine third-order structure
        let e = parse_expr("sin(s)*cos(t) + s^2*t").unwrap();
        let (s0, t0) = (0.7, 0.4);
        let j = jet_eval_2d(&e, s0, t0).unwrap();
        let f = |p: &[f64]| p[0].sin() * p[1].cos() + p[0] * p[0] * p[1];
        // larger steps for third-order stencils: roundoff grows as eps/h^3
        let dsss = fd_partial(f, &[s0, t0], &[3, 0], 1e-2);
        let dsst = fd_partial(f, &[s0, t0], &[2, 1], 1e-2);
        assert_close(j.dsss(), dsss, 1e-7);
        assert_close(j.dsst(), dsst, 1e-7);
    }

    #[test]
    fn jet_division() {
        // d/ds (1/s) = -1/s^2, etc.
        let e = parse_expr("1/s").unwrap();
        let j = jet_eval_1d(&e, 2.0, 3).unwrap();
        assert_close(j.d0(), 0.5, 1e-15);
        assert_close(j.d1(), -0.25, 1e-15);
        assert_close(j.d2(), 0.25, 1e-15);
        assert_close(j.d3(), -0.375, 1e-15);
    }

    #[test]
    fn negative_integer_power() {
        let e = parse_expr("s^-2").unwrap();
        let j = jet_eval_1d(&e, 2.0, 3).unwrap();
        assert_close(j.d0(), 0.25, 1e-15);
        assert_close(j.d1(), -0.25, 1e-15);
    }
}
