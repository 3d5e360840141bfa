//! Critical catenoid geometry.
//!
//! The surface is the image of
//!
//! ```text
//!     X(s, θ) = a (cosh s cos θ, cosh s sin θ, s),    |s| ≤ T,  θ ∈ [0, 2π),
//! ```
//!
//! where T is the unique root of T·tanh T = 1 in [1, 2] and a = 1/(T cosh T).
//! With this normalization the two boundary circles have radius a·cosh T = 1/T
//! and the position vector X equals the outward unit conormal along the
//! boundary (the free-boundary condition in the unit ball).
//!
//! The induced metric is a² cosh²s (ds² + dθ²); the squared norm of the second
//! fundamental form is |A|² = 2 / (a² cosh⁴ s). The conformal change
//! φ = 2 arctan(e^{−s}) (so sin φ = sech s, cos φ = tanh s) maps the strip onto
//! the spherical band φ ∈ [φ*, π − φ*] with cos φ* = 1/T, carrying the metric
//! to dφ² + sin²φ dθ². Both coordinate charts are supported throughout.

use crate::error::{Error, Result};
use crate::real::{c, Real};

/// Coordinate chart for 1-D radial grids and mode problems.
///
/// `S`: arclength-like coordinate s ∈ [−T, T] of the catenoid parametrization.
/// `Phi`: polar angle φ ∈ [φ*, π − φ*] of the conformal spherical picture.
/// The map is φ = 2 arctan(e^{−s}); note it reverses orientation (s = T maps
/// to φ = φ*).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    S,
    Phi,
}

/// Solved constants of the critical catenoid.
///
/// All fields are determined by `t`; they are precomputed once because every
/// downstream formula uses them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalParams<T: Real> {
    /// Root of t·tanh t = 1 (half-length of the s-interval).
    pub t: T,
    /// Scale factor a = 1/(t·cosh t); boundary circles have radius a·cosh t = 1/t.
    pub a: T,
    /// Lower colatitude of the spherical band, φ* = 2 arctan(e^{−t}).
    pub phi_star: T,
    /// sinh t, cached.
    pub sinh_t: T,
    /// cosh t, cached.
    pub cosh_t: T,
}

impl<T: Real> CriticalParams<T> {
    /// Solves t·tanh t = 1 on [1, 2] by bisection followed by Newton polish
    /// and returns the derived constants.
    ///
    /// `tol` is the residual target for |t·tanh t − 1| and must lie in
    /// (0, 1e−6]; the result is polished to machine accuracy regardless, so in
    /// `f64` the residual is ≤ 1e−12 by a wide margin.
    pub fn solve(tol: T) -> Result<Self> {
        if !(tol > T::zero() && tol <= c(1e-6)) {
            return Err(Error::Domain(format!(
                "tolerance {tol:e} outside (0, 1e-6]"
            )));
        }
        let f = |t: T| t * t.tanh() - T::one();
        let mut lo = T::one();
        let mut hi = c(2.0);
        debug_assert!(f(lo) < T::zero() && f(hi) > T::zero());
        // Bisection to a loose bracket, then Newton (quadratic) to the floor.
        for _ in 0..20 {
            let mid = (lo + hi) * c(0.5);
            if f(mid) > T::zero() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut t = (lo + hi) * c(0.5);
        for _ in 0..60 {
            let r = f(t);
            if r.abs() <= tol * c(1e-3) || r.abs() <= c::<T>(4.0) * T::eps() {
                break;
            }
            let sech = T::one() / t.cosh();
            let deriv = t.tanh() + t * sech * sech;
            t -= r / deriv;
        }
        if f(t).abs() > tol {
            return Err(Error::NoConvergence(format!(
                "critical parameter residual {:e} above tolerance {:e}",
                f(t),
                tol
            )));
        }
        let cosh_t = t.cosh();
        Ok(Self {
            t,
            a: T::one() / (t * cosh_t),
            phi_star: c::<T>(2.0) * ((-t).exp()).atan(),
            sinh_t: t.sinh(),
            cosh_t,
        })
    }

    /// Converts a coordinate between charts: φ = 2 arctan(e^{−s}) and
    /// s = −ln tan(φ/2). Values may overshoot the chart interval by at most
    /// 1e−12 (endpoint roundoff); anything further is a domain error.
    pub fn chart_convert(&self, x: T, from: Chart, to: Chart) -> Result<T> {
        let slack = c(1e-12);
        match (from, to) {
            (Chart::S, Chart::S) | (Chart::Phi, Chart::Phi) => Ok(x),
            (Chart::S, Chart::Phi) => {
                if x.abs() > self.t + slack {
                    return Err(Error::Domain(format!(
                        "s = {x:e} outside [-T, T], T = {:e}",
                        self.t
                    )));
                }
                Ok(c::<T>(2.0) * ((-x).exp()).atan())
            }
            (Chart::Phi, Chart::S) => {
                let hi = T::PI() - self.phi_star;
                if x < self.phi_star - slack || x > hi + slack {
                    return Err(Error::Domain(format!(
                        "phi = {x:e} outside [{:e}, {:e}]",
                        self.phi_star, hi
                    )));
                }
                Ok(-((x * c(0.5)).tan().ln()))
            }
        }
    }

    /// |A|²(s) = 2 / (a² cosh⁴ s), the squared length of the second
    /// fundamental form at the point with coordinate `s`.
    pub fn second_fundamental_norm_sq(&self, s: T) -> T {
        let ch = s.cosh();
        c::<T>(2.0) / (self.a * self.a * ch * ch * ch * ch)
    }

    /// Conformal area density: the induced metric is `metric_density(s)`
    /// times the flat ds² + dθ².
    pub fn metric_density(&self, s: T) -> T {
        let ach = self.a * s.cosh();
        ach * ach
    }

    /// Robin coefficient of the free-boundary condition ∂u/∂ν = u written in
    /// the given chart's radial derivative: 1/T for the s-chart
    /// (∂/∂ν = T ∂/∂s at s = T) and cosh T/T for the φ-chart.
    pub fn robin_coeff(&self, chart: Chart) -> T {
        match chart {
            Chart::S => T::one() / self.t,
            Chart::Phi => self.cosh_t / self.t,
        }
    }
}

/// Uniform 1-D grid over the radial interval of one chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D<T: Real> {
    pub chart: Chart,
    pub nodes: Vec<T>,
    pub spacing: T,
}

impl<T: Real> Grid1D<T> {
    /// Uniform grid with `n_nodes` nodes spanning the chart interval
    /// ([−T, T] or [φ*, π − φ*]), endpoints exact.
    pub fn uniform(chart: Chart, n_nodes: usize, p: &CriticalParams<T>) -> Result<Self> {
        if n_nodes < 3 {
            return Err(Error::Domain(format!(
                "grid needs >= 3 nodes, got {n_nodes}"
            )));
        }
        let (lo, hi) = match chart {
            Chart::S => (-p.t, p.t),
            Chart::Phi => (p.phi_star, T::PI() - p.phi_star),
        };
        Ok(Self::uniform_on(chart, lo, hi, n_nodes))
    }

    /// Uniform grid on an explicit interval (used for half-range problems).
    pub(crate) fn uniform_on(chart: Chart, lo: T, hi: T, n_nodes: usize) -> Self {
        let h = (hi - lo) / T::from_usize(n_nodes - 1).unwrap();
        let mut nodes: Vec<T> = (0..n_nodes)
            .map(|i| lo + T::from_usize(i).unwrap() * h)
            .collect();
        nodes[n_nodes - 1] = hi; // endpoint exact
        Grid1D {
            chart,
            nodes,
            spacing: h,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// A point of the surface with its position and unit normal in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint<T: Real> {
    pub s: T,
    pub theta: T,
    pub position: [T; 3],
    pub normal: [T; 3],
}

impl<T: Real> SurfacePoint<T> {
    /// Evaluates the embedding and the unit normal
    /// N = (−cos θ/cosh s, −sin θ/cosh s, tanh s) at (s, θ).
    pub fn new(s: T, theta: T, p: &CriticalParams<T>) -> Result<Self> {
        if s.abs() > p.t + c(1e-12) {
            return Err(Error::Domain(format!(
                "s = {s:e} outside [-T, T], T = {:e}",
                p.t
            )));
        }
        let (ch, th) = (s.cosh(), s.tanh());
        let (cos_t, sin_t) = (theta.cos(), theta.sin());
        Ok(Self {
            s,
            theta,
            position: [p.a * ch * cos_t, p.a * ch * sin_t, p.a * s],
            normal: [-cos_t / ch, -sin_t / ch, th],
        })
    }

    /// Outward unit conormal along the boundary circle containing this point
    /// (only meaningful at s = ±T, where it coincides with the position).
    pub fn conormal(&self, p: &CriticalParams<T>) -> [T; 3] {
        // ∂X/∂s / |∂X/∂s| with the sign of s, pointing out of the surface.
        let sign = if self.s >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        let (sh, ch) = (self.s.sinh(), self.s.cosh());
        let norm = p.a * ch;
        [
            sign * p.a * sh * self.theta.cos() / norm,
            sign * p.a * sh * self.theta.sin() / norm,
            sign * p.a / norm,
        ]
    }
}

/// Composite trapezoid weights over `n` nodes (1/2 at the ends).
pub(crate) fn trapezoid_weights<T: Real>(n: usize) -> impl Iterator<Item = T> {
    (0..n).map(move |i| {
        if i == 0 || i == n - 1 {
            c(0.5)
        } else {
            T::one()
        }
    })
}

/// ∫_Σ f dA with the area element a² cosh²s ds dθ.
///
/// Composite trapezoid with `n_s` nodes in s; the θ direction uses the
/// periodic trapezoid rule with `n_theta` equispaced samples, which is
/// spectrally accurate (exact for trigonometric polynomials of degree
/// < n_theta/2).
pub fn surface_integral<T: Real>(
    f: impl Fn(T, T) -> T,
    n_s: usize,
    n_theta: usize,
    p: &CriticalParams<T>,
) -> T {
    let grid = Grid1D::uniform(Chart::S, n_s, p).expect("n_s >= 3");
    let dtheta = c::<T>(2.0) * T::PI() / T::from_usize(n_theta).unwrap();
    let mut total = T::zero();
    for (i, w) in trapezoid_weights::<T>(n_s).enumerate() {
        let s = grid.nodes[i];
        let dens = p.metric_density(s);
        let mut row = T::zero();
        for j in 0..n_theta {
            let theta = dtheta * T::from_usize(j).unwrap();
            row += f(s, theta);
        }
        total += w * dens * row;
    }
    total * grid.spacing * dtheta
}

/// ∮_∂Σ f dL over both boundary circles (s = ±T), each of circumference
/// 2π/T. `f` receives (s, θ) with s = ±T.
pub fn boundary_integral<T: Real>(
    f: impl Fn(T, T) -> T,
    n_theta: usize,
    p: &CriticalParams<T>,
) -> T {
    let dtheta = c::<T>(2.0) * T::PI() / T::from_usize(n_theta).unwrap();
    let radius = T::one() / p.t; // a cosh T
    let mut total = T::zero();
    for j in 0..n_theta {
        let theta = dtheta * T::from_usize(j).unwrap();
        total += f(p.t, theta) + f(-p.t, theta);
    }
    total * radius * dtheta
}

/// Closed-form area 2πa²(T + sinh T cosh T), for cross-checks.
pub fn area_closed_form<T: Real>(p: &CriticalParams<T>) -> T {
    c::<T>(2.0) * T::PI() * p.a * p.a * (p.t + p.sinh_t * p.cosh_t)
}

/// Closed-form boundary length 4π/T.
pub fn boundary_length_closed_form<T: Real>(p: &CriticalParams<T>) -> T {
    c::<T>(4.0) * T::PI() / p.t
}

/// Closed-form total squared curvature ∫_Σ |A|² dA = 8π/T.
pub fn total_curvature_sq_closed_form<T: Real>(p: &CriticalParams<T>) -> T {
    c::<T>(8.0) * T::PI() / p.t
}
