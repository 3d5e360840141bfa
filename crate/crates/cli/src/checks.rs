//! The verification suite behind `catenoid verify`.
//!
//! Twelve independent checks certify the computable content of the index
//! theorem for the free-boundary catenoid: the critical constants, the
//! Steklov spectrum of the second-variation operator, stability of the
//! pinned problem, the per-mode Robin counts that sum to Morse index 4, the
//! positivity certificate for the second mode, the Gram-matrix lower bound,
//! the solvability dichotomy of the boundary-value problem, the unit disk
//! comparison, the first Steklov eigenvalue of the Laplacian, and a family
//! of quadratic-form identities.
//!
//! Tolerances marked "h²-limited" are quoted at the default 1024-node grid
//! and rescaled by (1024/grid_n)² when the suite runs at another resolution,
//! so they remain honest second-order error bounds rather than loosening or
//! tightening arbitrarily. Checks that certify a zero eigenvalue (or the
//! stability of integer counts) additionally require the discrete zero band
//! 5h² to be at most the requested tolerance; on coarser grids they report
//! NOT-CONVERGED rather than claiming a certificate, and `verify` exits with
//! status 3.

use catenoid_core::error::{Error, Result};
use catenoid_core::fields::{FieldKind, Harmonic};
use catenoid_core::geometry::Chart;
use catenoid_core::index_engine::{
    complement_positivity_check, dirichlet_ground_xi_correlation, dirichlet_index, disk_index,
    index_lower_bound_certificate, morse_index, sigma1_laplacian, solve_dirichlet,
    steklov_spectrum_j,
};
use catenoid_core::linalg::{jacobi_eigs, BKind};
use catenoid_core::quadratic_forms::{gram, q_form, q_pointwise, BilinearKind, ThetaDerivative};
use catenoid_core::sturm_liouville::{
    ground_state_certificate, legendre_substitution_check, BoundaryCondition,
};
use catenoid_core::{
    BoundaryComponent, ClosedFormField, CriticalParams, Grid1D, ModeProblem, SurfaceFunction,
    TriMatrix, TriPencil,
};
use rand_core::{RngCore, SeedableRng};

/// Parameters shared by every check.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub grid_n: usize,
    pub modes: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            grid_n: 1024,
            modes: 10,
            tol: 1e-4,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    /// Factor applied to h²-limited tolerances quoted at the 1024-node grid.
    fn h2_scale(&self) -> f64 {
        (1024.0 / self.grid_n as f64).powi(2)
    }
}

/// Result of one check: a verdict plus one line per individual assertion.
///
/// `elapsed` is measured for runtime budgets in the acceptance tests but is
/// never rendered, so that identical configurations produce byte-identical
/// output.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub non_converged: bool,
    pub details: Vec<String>,
    pub elapsed: std::time::Duration,
}

impl CheckOutcome {
    pub fn status(&self) -> &'static str {
        if self.non_converged {
            "NOT-CONVERGED"
        } else if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// Accumulates assertion lines for one check.
#[derive(Debug, Default)]
struct Checker {
    lines: Vec<String>,
    failed: bool,
    non_converged: bool,
}

impl Checker {
    fn record(&mut self, ok: bool, line: String) {
        self.failed |= !ok;
        self.lines
            .push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    /// |actual| must not exceed `bound`.
    fn abs_le(&mut self, label: &str, actual: f64, bound: f64) {
        let a = actual.abs();
        self.record(
            a <= bound,
            format!("{label}: actual={a:.12e} tolerance={bound:.12e}"),
        );
    }

    fn ge(&mut self, label: &str, actual: f64, bound: f64) {
        self.record(
            actual >= bound,
            format!("{label}: actual={actual:.12e} expected>={bound:.12e}"),
        );
    }

    fn gt(&mut self, label: &str, actual: f64, bound: f64) {
        self.record(
            actual > bound,
            format!("{label}: actual={actual:.12e} expected>{bound:.12e}"),
        );
    }

    /// Relative agreement with a nonzero expected value.
    fn rel(&mut self, label: &str, actual: f64, expected: f64, tol: f64) {
        let err = ((actual - expected) / expected).abs();
        self.record(
            err <= tol,
            format!(
                "{label}: actual={actual:.12e} expected={expected:.12e} \
                 rel_err={err:.12e} tolerance={tol:.12e}"
            ),
        );
    }

    fn count(&mut self, label: &str, actual: usize, expected: usize) {
        self.record(
            actual == expected,
            format!("{label}: actual={actual} expected={expected}"),
        );
    }

    fn flag(&mut self, label: &str, ok: bool) {
        self.record(ok, format!("{label}: {ok} expected=true"));
    }

    /// Observed convergence order must land in [lo, hi]; landing outside is
    /// treated as non-convergence of the discretization, not as a failed
    /// mathematical claim.
    fn order(&mut self, label: &str, observed: f64, lo: f64, hi: f64) {
        let ok = observed >= lo && observed <= hi;
        self.non_converged |= !ok;
        self.lines.push(format!(
            "{} {label}: observed={observed:.3} expected_range=[{lo:.2}, {hi:.2}]",
            if ok { "ok  " } else { "NC  " },
        ));
    }

    /// A zero-certification claim needs the discrete zero band below the
    /// requested tolerance; otherwise the grid cannot resolve the claim.
    fn resolution(&mut self, zero_band: f64, tol: f64) {
        let ok = zero_band <= tol;
        self.non_converged |= !ok;
        self.lines.push(format!(
            "{} zero band: 5h^2={zero_band:.12e} must_not_exceed tol={tol:.12e}",
            if ok { "ok  " } else { "NC  " },
        ));
    }
}

fn outcome(
    id: usize,
    name: &'static str,
    result: Result<Checker>,
    elapsed: std::time::Duration,
) -> CheckOutcome {
    match result {
        Ok(ck) => CheckOutcome {
            id,
            name,
            passed: !ck.failed,
            non_converged: ck.non_converged,
            details: ck.lines,
            elapsed,
        },
        Err(e) => CheckOutcome {
            id,
            name,
            passed: false,
            non_converged: matches!(e, Error::NoConvergence(_)),
            details: vec![format!("FAIL error: {e}")],
            elapsed,
        },
    }
}

/// Runs the full suite in order and returns one outcome per check.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let start = std::time::Instant::now();
    let params = match CriticalParams::solve(1e-14) {
        Ok(p) => p,
        Err(e) => {
            return vec![CheckOutcome {
                id: 1,
                name: "critical-constants",
                passed: false,
                non_converged: false,
                details: vec![format!("FAIL error solving critical parameters: {e}")],
                elapsed: start.elapsed(),
            }]
        }
    };
    type CheckFn = fn(&SuiteConfig, &CriticalParams) -> Result<Checker>;
    let table: [(&'static str, CheckFn); 12] = [
        ("critical-constants", critical_constants),
        ("jacobi-steklov", jacobi_steklov),
        ("pinned-stability", pinned_stability),
        ("morse-index", morse_index_counts),
        ("second-mode-positivity", second_mode_positivity),
        ("legendre-substitution", legendre_substitution),
        ("negativity-gram", negativity_gram),
        ("boundary-data-dichotomy", boundary_data_dichotomy),
        ("index-lower-bound", index_lower_bound),
        ("disk-index", disk_counts),
        ("laplace-sigma1", laplace_sigma1),
        ("form-identities", form_identities),
    ];
    table
        .iter()
        .enumerate()
        .map(|(k, (name, f))| {
            let t0 = std::time::Instant::now();
            let result = f(cfg, &params);
            outcome(k + 1, name, result, t0.elapsed())
        })
        .collect()
}

/// Suite exit status: 3 when any check could not converge, 1 when any check
/// failed outright, 0 otherwise.
pub fn suite_exit_code(outcomes: &[CheckOutcome]) -> i32 {
    if outcomes.iter().any(|o| o.non_converged) {
        3
    } else if outcomes.iter().any(|o| !o.passed) {
        1
    } else {
        0
    }
}

fn sgrid(n: usize, p: &CriticalParams) -> Result<Grid1D> {
    Grid1D::uniform(Chart::S, n, p)
}

// ---------------------------------------------------------------------------
// 1. Critical constants.

fn critical_constants(_cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    ck.abs_le("|T*tanh(T) - 1|", p.t * p.t.tanh() - 1.0, 1e-12);
    ck.abs_le("|a*T*cosh(T) - 1|", p.a * p.t * p.t.cosh() - 1.0, 1e-12);
    // phi_star = 2*atan(exp(-T)) is equivalent to sin(phi_star)*cosh(T) = 1
    // and cos(phi_star) = tanh(T); both are checked.
    ck.abs_le(
        "|sin(phi*)*cosh(T) - 1|",
        p.phi_star.sin() * p.cosh_t - 1.0,
        1e-12,
    );
    ck.abs_le(
        "|cos(phi*) - tanh(T)|",
        p.phi_star.cos() - p.t.tanh(),
        1e-12,
    );
    ck.abs_le("|sinh_T - sinh(T)|", p.sinh_t - p.t.sinh(), 1e-15);
    ck.abs_le("|cosh_T - cosh(T)|", p.cosh_t - p.t.cosh(), 1e-15);
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 2. Steklov spectrum of the second-variation operator.

fn jacobi_steklov(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let grids = [cfg.grid_n / 2, cfg.grid_n, cfg.grid_n * 2];
    let exact0 = 1.0 / (p.sinh_t * p.sinh_t);
    let mut err0 = Vec::new();
    let mut err1 = Vec::new();
    for (k, &g) in grids.iter().enumerate() {
        let rep = steklov_spectrum_j(p, g, 1)?;
        ck.flag(
            &format!("even axisymmetric channel flagged singular (grid {g})"),
            rep.singular_even_channel,
        );
        let e0 = (rep.modes[0].eigenvalues[0] - exact0).abs();
        let m1 = &rep.modes[1].eigenvalues;
        let e1 = (m1[0] + 1.0).abs().max((m1[1] - 1.0).abs());
        if k + 1 == grids.len() {
            ck.abs_le("mode-0 error vs 1/sinh^2(T) (finest grid)", e0, cfg.tol);
            ck.abs_le("mode-1 error vs {-1, +1} (finest grid)", e1, cfg.tol);
        }
        err0.push(e0);
        err1.push(e1);
    }
    for (label, errs) in [("mode-0", &err0), ("mode-1", &err1)] {
        for k in 0..errs.len() - 1 {
            let order = (errs[k] / errs[k + 1]).log2();
            ck.order(
                &format!(
                    "{label} convergence order ({} -> {})",
                    grids[k],
                    grids[k + 1]
                ),
                order,
                1.7,
                2.3,
            );
        }
    }
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 3. Stability of the pinned (Dirichlet) problem.

fn pinned_stability(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let rep = dirichlet_index(p, cfg.grid_n, cfg.modes)?;
    ck.resolution(rep.zero_threshold, cfg.tol);
    ck.flag("counts agree across refinements", rep.converged);
    ck.count(
        "negative Dirichlet eigenvalues over all modes",
        rep.per_mode_negative.iter().sum::<usize>(),
        0,
    );
    ck.count("axisymmetric kernel dimension", rep.per_mode_zero[0], 1);
    let grid = sgrid(cfg.grid_n, p)?;
    let h = grid.spacing;
    let lowest = ModeProblem::stability(0, p)
        .assemble(&grid, BoundaryCondition::dirichlet())?
        .eigenvalues(1, 1e-12)?[0];
    ck.abs_le(
        "lowest axisymmetric Dirichlet eigenvalue",
        lowest,
        5.0 * h * h,
    );
    let corr = dirichlet_ground_xi_correlation(p, cfg.grid_n)?;
    ck.ge(
        "correlation of the ground state with 1 - s*tanh(s)",
        corr,
        0.9999,
    );
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 4. Morse index from per-mode Robin counts.

fn morse_index_counts(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let rep = morse_index(p, cfg.grid_n, cfg.modes)?;
    ck.resolution(rep.zero_threshold, cfg.tol);
    ck.flag("counts agree across refinements", rep.converged);
    ck.count("mode-0 negative count", rep.per_mode_negative[0], 2);
    ck.count("mode-1 negative count", rep.per_mode_negative[1], 1);
    for (m, &neg) in rep.per_mode_negative.iter().enumerate().skip(2) {
        ck.count(&format!("mode-{m} negative count"), neg, 0);
    }
    ck.count("total index", rep.total_index, 4);
    ck.count(
        "mode-1 kernel dimension (rotations)",
        rep.per_mode_zero[1],
        1,
    );
    for max_mode in [5usize, 20] {
        if max_mode != cfg.modes {
            let total = morse_index(p, cfg.grid_n, max_mode)?.total_index;
            ck.count(&format!("total index with max_mode={max_mode}"), total, 4);
        }
    }
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 5. Positivity of the second mode, with a grid-independent certificate.

fn second_mode_positivity(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let grid = sgrid(cfg.grid_n, p)?;
    let lambda = ModeProblem::stability(2, p)
        .assemble(&grid, BoundaryCondition::robin())?
        .eigenvalues(1, 1e-10)?[0];
    ck.gt("smallest mode-2 Robin eigenvalue (margin)", lambda, 0.0);
    let phi_grid = Grid1D::uniform(Chart::Phi, 8 * cfg.grid_n, p)?;
    let cert = ground_state_certificate(
        &ModeProblem::conformal(2, p),
        &phi_grid,
        |phi: f64| 1.0 / phi.sin().powi(2),
        1e-8,
    )?;
    ck.flag("ground-state certificate positive", cert.positive);
    let tol = 1e-6 * cfg.h2_scale();
    ck.abs_le("|lower margin - 1/T|", cert.margin_lo - 1.0 / p.t, tol);
    ck.abs_le("|upper margin - 1/T|", cert.margin_hi - 1.0 / p.t, tol);
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 6. The band kernel solves the Legendre-type equation.

fn legendre_substitution(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let half = legendre_substitution_check(p, cfg.grid_n / 2)?;
    let full = legendre_substitution_check(p, cfg.grid_n)?;
    ck.abs_le(
        "scaled sup-residual of (1 - x^2)^(-1)",
        full.scaled_sup,
        1e-4 * cfg.h2_scale(),
    );
    ck.order(
        "residual halving order",
        (half.raw_sup / full.raw_sup).log2(),
        1.8,
        2.2,
    );
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 7. Gram matrix of the classical negative directions.

fn negativity_gram(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let grid = sgrid(cfg.grid_n / 2, p)?;
    let fields = [
        FieldKind::ConstOne,
        FieldKind::TranslationX,
        FieldKind::TranslationY,
        FieldKind::TranslationZ,
    ];
    let funcs: Vec<SurfaceFunction> = fields
        .iter()
        .map(|&k| SurfaceFunction::from_field(&ClosedFormField::new(k, p), &grid))
        .collect::<Result<_>>()?;
    let refs: Vec<&SurfaceFunction> = funcs.iter().collect();
    let rep = gram(BilinearKind::SecondVariation, &refs, p)?;
    ck.count("negative directions", rep.inertia.n_neg, 4);
    ck.count("zero directions", rep.inertia.n_zero, 0);
    ck.count("positive directions", rep.inertia.n_pos, 0);
    let diag_scale = (0..4).map(|k| rep.matrix[k][k].abs()).fold(0.0, f64::max);
    ck.abs_le(
        "largest off-diagonal entry",
        rep.max_offdiag,
        1e-5 * diag_scale,
    );
    ck.rel(
        "Q(1) vs -12*pi/T",
        rep.matrix[0][0],
        -12.0 * std::f64::consts::PI / p.t,
        1e-5 * cfg.h2_scale(),
    );
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 8. Solvability dichotomy of the boundary-value problem.

fn boundary_data_dichotomy(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let constant = [BoundaryComponent {
        mode: 0,
        harmonic: Harmonic::Cos,
        value_plus: 1.0,
        value_minus: 1.0,
    }];
    ck.flag(
        "constant data rejected as NOT_SOLVABLE",
        matches!(
            solve_dirichlet(&constant, p, cfg.grid_n),
            Err(Error::NotSolvable(_))
        ),
    );
    let data = [
        BoundaryComponent {
            mode: 0,
            harmonic: Harmonic::Cos,
            value_plus: 1.0,
            value_minus: -1.0,
        },
        BoundaryComponent {
            mode: 1,
            harmonic: Harmonic::Cos,
            value_plus: 0.7,
            value_minus: 0.3,
        },
    ];
    let sol = solve_dirichlet(&data, p, cfg.grid_n)?;
    ck.abs_le("kernel flux of the solution", sol.flux, 1e-8);
    for comp in &sol.field.components {
        let want = data
            .iter()
            .find(|d| d.mode == comp.mode && d.harmonic == comp.harmonic)
            .expect("solution component matches a data row");
        let last = comp.profile.len() - 1;
        ck.abs_le(
            &format!("trace error at -T (mode {})", comp.mode),
            comp.profile[0] - want.value_minus,
            1e-12,
        );
        ck.abs_le(
            &format!("trace error at +T (mode {})", comp.mode),
            comp.profile[last] - want.value_plus,
            1e-12,
        );
    }
    // Interior second-order accuracy, measured against the closed form for
    // even mode-1 data: the x-translation field sech(s)/sech(T).
    let even = [BoundaryComponent {
        mode: 1,
        harmonic: Harmonic::Cos,
        value_plus: 1.0,
        value_minus: 1.0,
    }];
    let sup_err = |n: usize| -> Result<f64> {
        let s = solve_dirichlet(&even, p, n)?;
        let grid = &s.field.grid;
        let prof = &s.field.components[0].profile;
        Ok(grid
            .nodes
            .iter()
            .zip(prof)
            .map(|(&x, &v)| (v - p.t.cosh() / x.cosh()).abs())
            .fold(0.0, f64::max))
    };
    let e_half = sup_err(cfg.grid_n / 2)?;
    let e_full = sup_err(cfg.grid_n)?;
    ck.order(
        "interior error halving order",
        (e_half / e_full).log2(),
        1.7,
        2.3,
    );
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 9. Gram-matrix lower bound and positivity on the complement.

fn index_lower_bound(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let cert = index_lower_bound_certificate(p, cfg.grid_n / 2)?;
    ck.count(
        "positive directions of the boundary form on {1, x, y, z}",
        cert.s_gram.inertia.n_pos,
        0,
    );
    ck.count(
        "rank of the boundary mass Gram (dimension of the family)",
        cert.boundary_gram.inertia.n_pos,
        4,
    );
    let min_gap = cert.curvature_gaps.iter().cloned().fold(f64::MAX, f64::min);
    ck.gt("smallest strict curvature gap", min_gap, 0.0);
    ck.count("certified lower bound", cert.certified_lower_bound, 4);
    let comp = complement_positivity_check(p, cfg.grid_n / 2, 200, cfg.seed)?;
    ck.gt(
        "smallest sampled Rayleigh value on the complement",
        comp.min_q,
        0.0,
    );
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 10. The unit disk has index exactly 1.

fn disk_counts(cfg: &SuiteConfig, _p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let rep = disk_index::<f64>(cfg.grid_n, 4)?;
    ck.resolution(rep.zero_threshold, cfg.tol);
    ck.flag("counts agree across refinements", rep.converged);
    ck.count("total disk index", rep.total_index, 1);
    ck.count("mode-0 negative count", rep.per_mode_negative[0], 1);
    for (m, &neg) in rep.per_mode_negative.iter().enumerate().skip(1) {
        ck.count(&format!("mode-{m} negative count"), neg, 0);
    }
    ck.count(
        "mode-1 zero count (translation kernel)",
        rep.per_mode_zero[1],
        1,
    );
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 11. First nontrivial Steklov eigenvalue of the Laplacian equals 1.

fn laplace_sigma1(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let rep = sigma1_laplacian(p, cfg.grid_n, cfg.modes.min(5), 1e-6)?;
    ck.abs_le("|sigma_1 - 1|", rep.sigma1 - 1.0, 1e-3);
    ck.flag(
        "attained on an explicit coordinate channel",
        rep.attaining_mode <= 1,
    );
    Ok(ck)
}

// ---------------------------------------------------------------------------
// 12. Quadratic-form identities and brute-force linear-algebra oracles.

fn form_identities(cfg: &SuiteConfig, p: &CriticalParams) -> Result<Checker> {
    let mut ck = Checker::default();
    let fine = sgrid(2 * cfg.grid_n, p)?;
    let s2 = cfg.h2_scale();

    // Q(v) = (sigma - 1) * boundary L2 for Steklov eigenfields of the
    // second-variation operator: sigma = -1 on the translations
    // perpendicular to the axis, so Q(v_x) = -2 * boundary mass.
    let vx = SurfaceFunction::from_field(&ClosedFormField::new(FieldKind::TranslationX, p), &fine)?;
    ck.rel(
        "Q(v_x) vs -2 * boundary L2 norm",
        q_form(&vx, p)?,
        -2.0 * vx.boundary_l2_sq(p),
        1e-6 * s2,
    );
    // The axial translation has an exact closed-form boundary value.
    let vz = SurfaceFunction::from_field(&ClosedFormField::new(FieldKind::TranslationZ, p), &fine)?;
    ck.rel(
        "Q(v_z) vs -4*pi*a^2*(sinh(T)cosh(T) - T)",
        q_form(&vz, p)?,
        -4.0 * std::f64::consts::PI * p.a * p.a * (p.sinh_t * p.cosh_t - p.t),
        1e-5 * s2,
    );

    // Parseval split: the modal evaluation of Q must match the pointwise
    // tensor-product quadrature on a band-limited input.
    let pgrid = sgrid(257, p)?;
    let p0 = |s: f64| 0.4 + 0.3 * s * s - 0.1 * s * s * s;
    let p1 = |s: f64| 1.0 - 0.5 * s;
    let p2 = |s: f64| 0.25 * s * s - 0.7;
    let p3 = |s: f64| 0.1 * s * s * s + 0.2;
    let p5 = |s: f64| 0.3 - 0.2 * s + 0.05 * s * s;
    let u = SurfaceFunction::zero(&pgrid)?
        .with_profile(0, Harmonic::Cos, p0)?
        .with_profile(1, Harmonic::Cos, p1)?
        .with_profile(2, Harmonic::Sin, p2)?
        .with_profile(3, Harmonic::Cos, p3)?
        .with_profile(5, Harmonic::Sin, p5)?;
    let modal = q_form(&u, p)?;
    let pointwise = q_pointwise(
        |s: f64, th: f64| {
            p0(s)
                + p1(s) * th.cos()
                + p2(s) * (2.0 * th).sin()
                + p3(s) * (3.0 * th).cos()
                + p5(s) * (5.0 * th).sin()
        },
        257,
        16,
        ThetaDerivative::Spectral,
        p,
    )?;
    ck.rel("modal vs pointwise quadratic form", modal, pointwise, 1e-8);

    // Inertia counts from the tridiagonal factorization must agree exactly
    // with a dense eigenvalue oracle on random small pencils.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut uniform = |lo: f64, hi: f64| {
        let x = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * x
    };
    let mut mismatches = 0usize;
    let mut cases = 0usize;
    for n in 2..=8usize {
        for _ in 0..3 {
            let diag: Vec<f64> = (0..n).map(|_| uniform(-2.0, 2.0)).collect();
            let off: Vec<f64> = (0..n - 1).map(|_| uniform(-1.0, 1.0)).collect();
            let mass: Vec<f64> = (0..n).map(|_| uniform(0.5, 2.0)).collect();
            let pencil = TriPencil::new(
                TriMatrix::new(diag.clone(), off.clone())?,
                mass.clone(),
                BKind::PosDef,
            )?;
            // Dense oracle on the standard form D^{-1/2} A D^{-1/2}.
            let mut dense = vec![vec![0.0f64; n]; n];
            for i in 0..n {
                dense[i][i] = diag[i] / mass[i];
                if i + 1 < n {
                    let v = off[i] / (mass[i] * mass[i + 1]).sqrt();
                    dense[i][i + 1] = v;
                    dense[i + 1][i] = v;
                }
            }
            let (mut eigs, _) = jacobi_eigs(&dense)?;
            eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut shifts = vec![eigs[0] - 0.5, eigs[n - 1] + 0.5];
            for k in 0..n - 1 {
                shifts.push(0.5 * (eigs[k] + eigs[k + 1]));
            }
            for shift in shifts {
                cases += 1;
                let expected = eigs.iter().filter(|&&e| e < shift).count();
                if pencil.count_below(shift) != expected {
                    mismatches += 1;
                }
            }
        }
    }
    ck.count(
        &format!("count mismatches vs dense oracle over {cases} shifts"),
        mismatches,
        0,
    );
    Ok(ck)
}
