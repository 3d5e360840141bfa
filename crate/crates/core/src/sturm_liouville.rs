//! One-dimensional Sturm–Liouville reductions of the stability operator.
//!
//! Separating u(s, θ) = f(s)·{cos nθ, sin nθ} turns the eigenproblem
//! J u = λ u on the catenoid into, per Fourier mode n,
//!
//! ```text
//!     −f″ + (n² − 2 sech²s) f = λ · a² cosh²s · f        on [−T, T],
//! ```
//!
//! and the free-boundary condition ∂u/∂ν = u into the Robin condition
//! f′(±T) = ±(1/T) f(±T). The conformal picture replaces the catenoid by the
//! spherical band φ ∈ [φ*, π − φ*] with the round metric; there the same
//! separation gives
//!
//! ```text
//!     −(sin φ f′)′ + (n²/sin φ − 2 sin φ) f = μ · sin φ · f,
//! ```
//!
//! which pulled back through φ = 2 arctan(e^{−s}) is the *same* differential
//! expression as above but weighted by sech²s instead of a² cosh²s — the two
//! weights define different (equally valid) eigenproblems that share their
//! kernels and eigenvalue signs.
//!
//! Discretization is the standard second-order finite-element/finite-volume
//! scheme on a uniform grid: stiffness by midpoint values of the leading
//! coefficient, potential and weight lumped by the trapezoid rule, Robin
//! terms subtracted on the boundary diagonal. Everything lands in a
//! symmetric tridiagonal pencil handled by [`crate::linalg`].

use crate::error::{Error, Result};
use crate::geometry::{trapezoid_weights, Chart, CriticalParams, Grid1D};
use crate::linalg::{BKind, TriMatrix, TriPencil};
use crate::real::{c, Real};

/// Which quadratic form the 1-D problem discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// Stability operator of the catenoid, weighted by the metric density.
    Stability,
    /// Conformal spherical-band operator, weighted by the conformal factor.
    Conformal,
}

/// Condition imposed at one end of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndCondition {
    /// Homogeneous Dirichlet: the node is eliminated.
    Dirichlet,
    /// Free-boundary Robin term (∂u/∂ν = u): subtracts 1/T on the diagonal.
    Robin,
    /// Natural (Neumann / Steklov) end: no boundary term.
    Natural,
}

/// Conditions at the two ends (lo = left node, hi = right node).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryCondition {
    pub lo: EndCondition,
    pub hi: EndCondition,
}

impl BoundaryCondition {
    pub fn dirichlet() -> Self {
        Self {
            lo: EndCondition::Dirichlet,
            hi: EndCondition::Dirichlet,
        }
    }
    pub fn robin() -> Self {
        Self {
            lo: EndCondition::Robin,
            hi: EndCondition::Robin,
        }
    }
    pub fn natural() -> Self {
        Self {
            lo: EndCondition::Natural,
            hi: EndCondition::Natural,
        }
    }
    pub fn mixed(lo: EndCondition, hi: EndCondition) -> Self {
        Self { lo, hi }
    }
}

/// The 1-D mode-n problem in a chosen chart and form.
#[derive(Debug, Clone, Copy)]
pub struct ModeProblem<T: Real> {
    pub chart: Chart,
    pub kind: FormKind,
    pub mode: usize,
    pub params: CriticalParams<T>,
}

impl<T: Real> ModeProblem<T> {
    /// Stability eigenproblem in the s-chart (weight a² cosh²s).
    pub fn stability(mode: usize, params: &CriticalParams<T>) -> Self {
        Self {
            chart: Chart::S,
            kind: FormKind::Stability,
            mode,
            params: *params,
        }
    }

    /// Conformal band problem in the φ-chart (weight sin φ).
    pub fn conformal(mode: usize, params: &CriticalParams<T>) -> Self {
        Self {
            chart: Chart::Phi,
            kind: FormKind::Conformal,
            mode,
            params: *params,
        }
    }

    /// Conformal band problem realized in the s-chart (weight sech²s);
    /// unitarily equivalent to [`ModeProblem::conformal`], used for
    /// chart-independence checks.
    pub fn conformal_in_s(mode: usize, params: &CriticalParams<T>) -> Self {
        Self {
            chart: Chart::S,
            kind: FormKind::Conformal,
            mode,
            params: *params,
        }
    }

    /// The chart's native problem: stability in s, conformal in φ.
    pub fn native(chart: Chart, mode: usize, params: &CriticalParams<T>) -> Self {
        match chart {
            Chart::S => Self::stability(mode, params),
            Chart::Phi => Self::conformal(mode, params),
        }
    }

    /// Leading coefficient p(x) of −(p f′)′.
    pub fn leading_coeff(&self, x: T) -> T {
        match self.chart {
            Chart::S => T::one(),
            Chart::Phi => x.sin(),
        }
    }

    /// Zeroth-order coefficient V(x).
    pub fn potential(&self, x: T) -> T {
        let n2 = {
            let n = T::from_usize(self.mode).unwrap();
            n * n
        };
        match self.chart {
            Chart::S => {
                let sech = T::one() / x.cosh();
                n2 - c::<T>(2.0) * sech * sech
            }
            Chart::Phi => {
                let sn = x.sin();
                n2 / sn - c::<T>(2.0) * sn
            }
        }
    }

    /// Spectral weight w(x).
    pub fn weight(&self, x: T) -> T {
        match (self.chart, self.kind) {
            (Chart::S, FormKind::Stability) => self.params.metric_density(x),
            (Chart::S, FormKind::Conformal) => {
                let sech = T::one() / x.cosh();
                sech * sech
            }
            (Chart::Phi, _) => x.sin(),
        }
    }

    /// Interval covered by the problem's chart.
    pub fn interval(&self) -> (T, T) {
        match self.chart {
            Chart::S => (-self.params.t, self.params.t),
            Chart::Phi => (self.params.phi_star, T::PI() - self.params.phi_star),
        }
    }

    /// Boundary coefficient subtracted by a Robin end: p(end)·(Robin slope),
    /// equal to 1/T in both charts (for the φ-chart,
    /// sin φ* · cosh T / T = sech T · cosh T / T).
    pub fn robin_term(&self) -> T {
        let (lo, _) = self.interval();
        self.leading_coeff(lo) * self.params.robin_coeff(self.chart)
    }

    /// Assembles the mode problem on `grid` under `bc`.
    pub fn assemble(&self, grid: &Grid1D<T>, bc: BoundaryCondition) -> Result<Assembled<T>> {
        if grid.chart != self.chart {
            return Err(Error::ChartMismatch(format!(
                "problem in {:?} chart, grid in {:?} chart",
                self.chart, grid.chart
            )));
        }
        let n = grid.len();
        let h = grid.spacing;
        // Midpoint leading coefficients p_{i+1/2}.
        let pm: Vec<T> = (0..n - 1)
            .map(|i| self.leading_coeff((grid.nodes[i] + grid.nodes[i + 1]) * c(0.5)))
            .collect();
        let tau: Vec<T> = trapezoid_weights::<T>(n).collect();
        let mut diag: Vec<T> = (0..n)
            .map(|i| {
                let stiff = match i {
                    0 => pm[0],
                    _ if i == n - 1 => pm[n - 2],
                    _ => pm[i - 1] + pm[i],
                } / h;
                stiff + self.potential(grid.nodes[i]) * h * tau[i]
            })
            .collect();
        let off: Vec<T> = pm.iter().map(|&p| -p / h).collect();
        let mass: Vec<T> = (0..n)
            .map(|i| self.weight(grid.nodes[i]) * h * tau[i])
            .collect();
        let rt = self.robin_term();
        let mut keep_lo = 0usize;
        let mut keep_hi = n;
        match bc.lo {
            EndCondition::Robin => diag[0] -= rt,
            EndCondition::Dirichlet => keep_lo = 1,
            EndCondition::Natural => {}
        }
        match bc.hi {
            EndCondition::Robin => diag[n - 1] -= rt,
            EndCondition::Dirichlet => keep_hi = n - 1,
            EndCondition::Natural => {}
        }
        if keep_hi - keep_lo < 2 {
            return Err(Error::Domain("grid too small after elimination".into()));
        }
        let matrix = TriMatrix::new(
            diag[keep_lo..keep_hi].to_vec(),
            off[keep_lo..keep_hi - 1].to_vec(),
        )?;
        let mass = mass[keep_lo..keep_hi].to_vec();
        Ok(Assembled {
            matrix,
            mass,
            grid: grid.clone(),
            retained: (keep_lo, keep_hi),
            bc,
            robin_term: rt,
            boundary_weight: T::one() / self.params.t,
        })
    }
}

/// Assembled discrete mode problem: stiffness-plus-potential matrix and
/// lumped spectral weight over the retained nodes.
#[derive(Debug, Clone)]
pub struct Assembled<T: Real> {
    pub matrix: TriMatrix<T>,
    pub mass: Vec<T>,
    pub grid: Grid1D<T>,
    /// Node index range `[lo, hi)` retained after Dirichlet elimination.
    pub retained: (usize, usize),
    pub bc: BoundaryCondition,
    pub robin_term: T,
    /// Reduced boundary mass per surface-boundary endpoint (1/T, the radius
    /// of each boundary circle) — chart-independent.
    pub boundary_weight: T,
}

impl<T: Real> Assembled<T> {
    /// Generalized pencil A f = λ B f with the positive lumped weight.
    pub fn pencil(&self) -> Result<TriPencil<T>> {
        TriPencil::new(self.matrix.clone(), self.mass.clone(), BKind::PosDef)
    }

    /// Pencil against the boundary measure (1/T at each retained grid
    /// endpoint): the Steklov problem. Meaningful for grids spanning the
    /// full chart interval, where grid ends are the boundary circles.
    pub fn steklov_pencil(&self) -> Result<TriPencil<T>> {
        let m = self.matrix.n();
        let mut b = vec![T::zero(); m];
        if self.retained.0 == 0 {
            b[0] = self.boundary_weight;
        }
        if self.retained.1 == self.grid.len() {
            b[m - 1] = self.boundary_weight;
        }
        TriPencil::new(self.matrix.clone(), b, BKind::BoundarySemidef)
    }

    /// Smallest `k` eigenvalues of the pencil.
    pub fn eigenvalues(&self, k: usize, tol: T) -> Result<Vec<T>> {
        self.pencil()?.smallest_eigs(k, tol)
    }
}

/// Discrete mode-n quadratic form with the free-boundary term,
///
/// ```text
///     qₙ(f) = Σ p_{i+1/2} (f_{i+1} − f_i)²/h + Σ τ_i V_i f_i² h
///             − (1/T)(f_lo² + f_hi²),
/// ```
///
/// which coincides with fᵀ A f for the Robin-assembled matrix A (same
/// midpoint/trapezoid scheme). Multiply by π (modes n ≥ 1) or 2π (n = 0)
/// to recover the surface quadratic form of f(s)·cos nθ.
pub fn qn_value<T: Real>(problem: &ModeProblem<T>, grid: &Grid1D<T>, f: &[T]) -> Result<T> {
    qn_bilinear(problem, grid, f, f)
}

/// Bilinear (polarized) version of [`qn_value`].
pub fn qn_bilinear<T: Real>(
    problem: &ModeProblem<T>,
    grid: &Grid1D<T>,
    f: &[T],
    g: &[T],
) -> Result<T> {
    if grid.chart != problem.chart {
        return Err(Error::ChartMismatch("form grid chart".into()));
    }
    let n = grid.len();
    if f.len() != n || g.len() != n {
        return Err(Error::Domain(format!(
            "profile length {} / {} does not match grid {}",
            f.len(),
            g.len(),
            n
        )));
    }
    let h = grid.spacing;
    let mut total = T::zero();
    for i in 0..n - 1 {
        let pm = problem.leading_coeff((grid.nodes[i] + grid.nodes[i + 1]) * c(0.5));
        total += pm * (f[i + 1] - f[i]) * (g[i + 1] - g[i]) / h;
    }
    for (i, tau) in trapezoid_weights::<T>(n).enumerate() {
        total += problem.potential(grid.nodes[i]) * f[i] * g[i] * h * tau;
    }
    let rt = problem.robin_term();
    total -= rt * (f[0] * g[0] + f[n - 1] * g[n - 1]);
    Ok(total)
}

/// Result of the ground-state positivity certificate.
#[derive(Debug, Clone)]
pub struct CertificateReport<T: Real> {
    /// −p·(log h)′ − α at the lower end (must be positive).
    pub margin_lo: T,
    /// p·(log h)′ − α at the upper end (must be positive).
    pub margin_hi: T,
    /// Minimum of the discrete 𝓛h over interior nodes (must exceed
    /// −tol_interior).
    pub min_interior: T,
    /// Tolerance granted to the interior inequality, scaled by the row sums
    /// of the discrete operator applied to |h|.
    pub tol_interior: T,
    pub grid_size: usize,
    /// All three hypotheses hold: the Robin form of this mode is positive.
    pub positive: bool,
}

/// Certifies positivity of the mode problem's Robin form from a positive
/// trial function h: if h > 0, 𝓛h ≥ 0 in the interior, and the two boundary
/// margins p·(∂ log h toward the interior) − α are positive (α the Robin
/// coefficient), then the substitution f = h·v makes the form a weighted
/// Dirichlet integral plus nonnegative terms — so it has no nonpositive
/// eigenvalues.
///
/// The interior inequality is checked with a relative tolerance
/// `rel_tol`·scale, where scale is the largest absolute row sum of the
/// discrete operator applied to h (an exact discrete solution of 𝓛h = 0
/// leaves residuals of that size times roundoff/truncation).
pub fn ground_state_certificate<T: Real>(
    problem: &ModeProblem<T>,
    grid: &Grid1D<T>,
    h: impl Fn(T) -> T,
    rel_tol: T,
) -> Result<CertificateReport<T>> {
    let n = grid.len();
    let hv: Vec<T> = grid.nodes.iter().map(|&x| h(x)).collect();
    if let Some((i, &bad)) = hv
        .iter()
        .enumerate()
        .find(|(_, &v)| !(v > T::zero()) || !v.is_finite())
    {
        return Err(Error::NonpositiveH(format!(
            "h({:e}) = {bad:e} at node {i}",
            grid.nodes[i]
        )));
    }
    let dx = grid.spacing;
    // Interior residual: flux form of 𝓛h by midpoint leading coefficients
    // (the Natural-assembled matrix row divided by the cell width).
    let assembled = problem.assemble(grid, BoundaryCondition::natural())?;
    let ah = assembled.matrix.matvec(&hv);
    let mut min_interior = T::infinity();
    let mut scale = T::zero();
    for i in 1..n - 1 {
        let r = ah[i] / dx;
        min_interior = min_interior.min(r);
        // Absolute row sum applied to |h|.
        let row = assembled.matrix.off[i - 1].abs() * hv[i - 1]
            + assembled.matrix.diag[i].abs() * hv[i]
            + assembled.matrix.off[i].abs() * hv[i + 1];
        scale = scale.max(row / dx);
    }
    let tol_interior = rel_tol * scale;
    // One-sided second-order derivatives of log h at the two ends.
    let lh: Vec<T> = hv.iter().map(|&v| v.ln()).collect();
    let dlo = (-c::<T>(3.0) * lh[0] + c::<T>(4.0) * lh[1] - lh[2]) / (c::<T>(2.0) * dx);
    let dhi = (c::<T>(3.0) * lh[n - 1] - c::<T>(4.0) * lh[n - 2] + lh[n - 3]) / (c::<T>(2.0) * dx);
    let alpha = problem.robin_term();
    let p_lo = problem.leading_coeff(grid.nodes[0]);
    let p_hi = problem.leading_coeff(grid.nodes[n - 1]);
    let margin_lo = -p_lo * dlo - alpha;
    let margin_hi = p_hi * dhi - alpha;
    let positive = margin_lo > T::zero() && margin_hi > T::zero() && min_interior >= -tol_interior;
    Ok(CertificateReport {
        margin_lo,
        margin_hi,
        min_interior,
        tol_interior,
        grid_size: n,
        positive,
    })
}

/// Result of the algebraic-substitution residual check on the mode-2 kernel.
#[derive(Debug, Clone)]
pub struct LegendreReport<T: Real> {
    /// Sup over interior nodes of the raw strong-form residual.
    pub raw_sup: T,
    /// Residual divided by the operator magnitude `scale`.
    pub scaled_sup: T,
    /// max over nodes of |p a″| + |p′ a′| + |V a| (finite-difference pieces).
    pub scale: T,
    pub grid_size: usize,
}

/// Verifies that a(x) = (1 − x²)^{-1} solves the Legendre-type equation
/// −((1 − x²) a′)′ + (4/(1 − x²) − 2) a = 0 obtained from the mode-2 band
/// kernel by the substitution x = cos φ, on x ∈ [−1/T, 1/T]. The residual is
/// formed with centered second differences; since the operator terms are
/// individually O(10²) on this interval, the meaningful figure is the
/// *scaled* sup-residual (raw sup divided by the largest operator term).
pub fn legendre_substitution_check<T: Real>(
    params: &CriticalParams<T>,
    n_nodes: usize,
) -> Result<LegendreReport<T>> {
    if n_nodes < 8 {
        return Err(Error::Domain("substitution check needs >= 8 nodes".into()));
    }
    let xmax = T::one() / params.t;
    let h = (xmax + xmax) / T::from_usize(n_nodes - 1).unwrap();
    let node = |i: usize| -xmax + T::from_usize(i).unwrap() * h;
    let a = |x: T| T::one() / (T::one() - x * x);
    let mut raw = T::zero();
    let mut scale = T::zero();
    for i in 1..n_nodes - 1 {
        let x = node(i);
        let p = T::one() - x * x;
        let dp = -(x + x);
        let v = c::<T>(4.0) / (T::one() - x * x) - c::<T>(2.0);
        let a0 = a(x);
        let ap = a(x + h);
        let am = a(x - h);
        let d2 = (ap - (a0 + a0) + am) / (h * h);
        let d1 = (ap - am) / (h + h);
        let res = -(p * d2 + dp * d1) + v * a0;
        raw = raw.max(res.abs());
        scale = scale.max((p * d2).abs() + (dp * d1).abs() + (v * a0).abs());
    }
    Ok(LegendreReport {
        raw_sup: raw,
        scaled_sup: raw / scale,
        scale,
        grid_size: n_nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params() -> CriticalParams<f64> {
        CriticalParams::solve(1e-12).unwrap()
    }

    fn sgrid(n: usize) -> Grid1D<f64> {
        Grid1D::uniform(Chart::S, n, &params()).unwrap()
    }

    fn pgrid(n: usize) -> Grid1D<f64> {
        Grid1D::uniform(Chart::Phi, n, &params()).unwrap()
    }

    #[test]
    fn robin_term_is_reciprocal_t_in_both_charts() {
        let p = params();
        let ms = ModeProblem::stability(0, &p);
        let mp = ModeProblem::conformal(0, &p);
        assert_relative_eq!(ms.robin_term(), 1.0 / p.t, max_relative = 1e-15);
        assert_relative_eq!(mp.robin_term(), 1.0 / p.t, max_relative = 1e-13);
    }

    #[test]
    fn assembly_matches_quadratic_form() {
        let p = params();
        let grid = sgrid(64);
        let problem = ModeProblem::stability(1, &p);
        let asm = problem.assemble(&grid, BoundaryCondition::robin()).unwrap();
        let f: Vec<f64> = grid
            .nodes
            .iter()
            .map(|s| (1.3 * s).sin() + 0.5 * s * s)
            .collect();
        let via_matrix = asm.matrix.quad_form(&f, &f);
        let via_form = qn_value(&problem, &grid, &f).unwrap();
        assert_relative_eq!(via_matrix, via_form, max_relative = 1e-10);
        // Polarization identity for the bilinear version.
        let g: Vec<f64> = grid.nodes.iter().map(|s| (0.7 * s).cos()).collect();
        let b1 = qn_bilinear(&problem, &grid, &f, &g).unwrap();
        let b2 = asm.matrix.quad_form(&f, &g);
        assert_relative_eq!(b1, b2, max_relative = 1e-10);
    }

    #[test]
    fn dirichlet_elimination_shapes() {
        let p = params();
        let grid = sgrid(33);
        let problem = ModeProblem::stability(2, &p);
        let asm = problem
            .assemble(&grid, BoundaryCondition::dirichlet())
            .unwrap();
        assert_eq!(asm.matrix.n(), 31);
        assert_eq!(asm.retained, (1, 32));
        let asm = problem
            .assemble(
                &grid,
                BoundaryCondition::mixed(EndCondition::Dirichlet, EndCondition::Robin),
            )
            .unwrap();
        assert_eq!(asm.matrix.n(), 32);
        assert_eq!(asm.retained, (1, 33));
    }

    #[test]
    fn chart_mismatch_is_rejected() {
        let p = params();
        let problem = ModeProblem::stability(0, &p);
        assert!(matches!(
            problem.assemble(&pgrid(17), BoundaryCondition::robin()),
            Err(Error::ChartMismatch(_))
        ));
    }

    #[test]
    fn mode_zero_robin_has_two_negative_eigenvalues() {
        let p = params();
        let grid = sgrid(512);
        let problem = ModeProblem::stability(0, &p);
        let asm = problem.assemble(&grid, BoundaryCondition::robin()).unwrap();
        let eigs = asm.eigenvalues(3, 1e-11).unwrap();
        assert!(eigs[0] < 0.0 && eigs[1] < 0.0 && eigs[2] > 0.0, "{eigs:?}");
        assert_relative_eq!(eigs[0], -6.2203, max_relative = 2e-3);
        assert_relative_eq!(eigs[1], -2.1735, max_relative = 2e-3);
        // Two strictly negative, and clearly so at the h² scale.
        let h = grid.spacing;
        let pencil = asm.pencil().unwrap();
        assert_eq!(pencil.count_below(-5.0 * h * h), 2);
    }

    #[test]
    fn mode_one_robin_has_one_negative_and_a_kernel_eigenvalue() {
        let p = params();
        let grid = sgrid(512);
        let problem = ModeProblem::stability(1, &p);
        let asm = problem.assemble(&grid, BoundaryCondition::robin()).unwrap();
        let h = grid.spacing;
        let pencil = asm.pencil().unwrap();
        assert_eq!(pencil.count_below(-5.0 * h * h), 1);
        let eigs = asm.eigenvalues(3, 1e-11).unwrap();
        // Second eigenvalue is the rotation kernel: within the h²-calibrated
        // band around zero, and the third is well separated.
        assert!(
            eigs[1].abs() <= 5.0 * h * h,
            "kernel eigenvalue {}",
            eigs[1]
        );
        assert!(eigs[2] > 1.0, "third eigenvalue {}", eigs[2]);
    }

    #[test]
    fn mode_two_robin_is_strictly_positive() {
        let p = params();
        let grid = sgrid(512);
        let problem = ModeProblem::stability(2, &p);
        let asm = problem.assemble(&grid, BoundaryCondition::robin()).unwrap();
        let eigs = asm.eigenvalues(1, 1e-11).unwrap();
        assert_relative_eq!(eigs[0], 4.43177, max_relative = 1e-2);
        assert!(eigs[0] > 4.0);
    }

    #[test]
    fn dirichlet_mode_zero_kernel_from_dilation_field() {
        // ξ = 1 − s tanh s vanishes at ±T and solves the mode-0 equation:
        // the Dirichlet problem has a discrete eigenvalue at O(h²) of zero.
        let p = params();
        let grid = sgrid(512);
        let problem = ModeProblem::stability(0, &p);
        let asm = problem
            .assemble(&grid, BoundaryCondition::dirichlet())
            .unwrap();
        let eigs = asm.eigenvalues(2, 1e-12).unwrap();
        let h = grid.spacing;
        assert!(
            eigs[0].abs() <= 5.0 * h * h,
            "kernel eigenvalue {}",
            eigs[0]
        );
        assert!(eigs[1] > 1.0);
    }

    #[test]
    fn conformal_realizations_agree_across_charts() {
        // The φ-chart problem and its s-chart pullback are unitarily
        // equivalent; their Dirichlet eigenvalues agree up to O(h²)
        // discretization differences.
        let p = params();
        for mode in [0usize, 1, 2] {
            let a_s = ModeProblem::conformal_in_s(mode, &p)
                .assemble(&sgrid(512), BoundaryCondition::dirichlet())
                .unwrap();
            let a_p = ModeProblem::conformal(mode, &p)
                .assemble(&pgrid(512), BoundaryCondition::dirichlet())
                .unwrap();
            let es = a_s.eigenvalues(2, 1e-12).unwrap();
            let ep = a_p.eigenvalues(2, 1e-12).unwrap();
            for (x, y) in es.iter().zip(&ep) {
                assert_relative_eq!(*x, *y, max_relative = 2e-3, epsilon = 2e-3);
            }
        }
    }

    #[test]
    fn stability_and_conformal_weights_differ() {
        // Same differential expression, different weights: the second
        // Dirichlet eigenvalues are far apart (the problems are genuinely
        // distinct even though kernels coincide).
        let p = params();
        let grid = sgrid(512);
        let e_stab = ModeProblem::stability(0, &p)
            .assemble(&grid, BoundaryCondition::dirichlet())
            .unwrap()
            .eigenvalues(2, 1e-11)
            .unwrap();
        let e_conf = ModeProblem::conformal_in_s(0, &p)
            .assemble(&grid, BoundaryCondition::dirichlet())
            .unwrap()
            .eigenvalues(2, 1e-11)
            .unwrap();
        assert!((e_stab[1] - e_conf[1]).abs() > 5.0);
    }

    #[test]
    fn certificate_validates_mode_two_band_kernel() {
        let p = params();
        let problem = ModeProblem::conformal(2, &p);
        let grid = pgrid(2048);
        let report =
            ground_state_certificate(&problem, &grid, |phi| 1.0 / phi.sin().powi(2), 1e-8).unwrap();
        assert!(report.positive, "{report:?}");
        assert_relative_eq!(report.margin_lo, 1.0 / p.t, max_relative = 1e-4);
        assert_relative_eq!(report.margin_hi, 1.0 / p.t, max_relative = 1e-4);
        assert!(report.min_interior >= -report.tol_interior);
    }

    #[test]
    fn certificate_rejects_constant_trial_function() {
        // h ≡ 1 satisfies the interior inequality (V ≥ 2 for mode 2) but has
        // zero log-derivative at both ends: margins equal −1/T < 0.
        let p = params();
        let problem = ModeProblem::conformal(2, &p);
        let grid = pgrid(512);
        let report = ground_state_certificate(&problem, &grid, |_| 1.0, 1e-8).unwrap();
        assert!(!report.positive);
        assert_relative_eq!(report.margin_lo, -1.0 / p.t, max_relative = 1e-10);
        assert_relative_eq!(report.margin_hi, -1.0 / p.t, max_relative = 1e-10);
        assert!(report.min_interior > 0.0);
    }

    #[test]
    fn certificate_requires_positive_h() {
        let p = params();
        let problem = ModeProblem::conformal(2, &p);
        let grid = pgrid(64);
        assert!(matches!(
            ground_state_certificate(&problem, &grid, |phi| phi - 1.0, 1e-8),
            Err(Error::NonpositiveH(_))
        ));
    }

    #[test]
    fn legendre_substitution_residual_scales_at_second_order() {
        let p = params();
        let r512 = legendre_substitution_check(&p, 512).unwrap();
        let r1024 = legendre_substitution_check(&p, 1024).unwrap();
        assert!(r1024.scaled_sup <= 1e-4, "scaled {}", r1024.scaled_sup);
        let order = (r512.raw_sup / r1024.raw_sup).log2();
        assert!(
            (1.8..=2.2).contains(&order),
            "order {order} (raw {} -> {})",
            r512.raw_sup,
            r1024.raw_sup
        );
        // The operator terms really are two orders larger than the residual.
        assert!(r1024.scale > 50.0);
    }
}
