//! Cross-cutting properties: randomized linear-algebra oracles, chart
//! consistency, discrete symmetry, and an independent Runge–Kutta
//! integration of the mode-1 kernel fields.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use catenoid_core::fields::FieldKind;
use catenoid_core::geometry::Chart;
use catenoid_core::linalg::{jacobi_eigs, BKind};
use catenoid_core::sturm_liouville::BoundaryCondition;
use catenoid_core::{ClosedFormField, CriticalParams, Grid1D, ModeProblem, TriMatrix, TriPencil};
use proptest::prelude::*;

fn params() -> CriticalParams {
    CriticalParams::solve(1e-14).unwrap()
}

// ---------------------------------------------------------------------------
// Randomized pencil oracles: bisection counts must match a dense eigensolve.

fn dense_standard_form(diag: &[f64], off: &[f64], mass: &[f64]) -> Vec<Vec<f64>> {
    let n = diag.len();
    let mut dense = vec![vec![0.0; n]; n];
    for i in 0..n {
        dense[i][i] = diag[i] / mass[i];
        if i + 1 < n {
            let v = off[i] / (mass[i] * mass[i + 1]).sqrt();
            dense[i][i + 1] = v;
            dense[i + 1][i] = v;
        }
    }
    dense
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_below_matches_dense_oracle(
        diag in prop::collection::vec(-2.0f64..2.0, 2..=8),
        seedoff in prop::collection::vec(-1.0f64..1.0, 8),
        seedmass in prop::collection::vec(0.5f64..2.0, 8),
    ) {
        let n = diag.len();
        let off = seedoff[..n - 1].to_vec();
        let mass = seedmass[..n].to_vec();
        let pencil = TriPencil::new(
            TriMatrix::new(diag.clone(), off.clone()).unwrap(),
            mass.clone(),
            BKind::PosDef,
        )
        .unwrap();
        let (mut eigs, _) = jacobi_eigs(&dense_standard_form(&diag, &off, &mass)).unwrap();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let mut shifts = vec![eigs[0] - 1.0, eigs[n - 1] + 1.0];
        for k in 0..n - 1 {
            shifts.push(0.5 * (eigs[k] + eigs[k + 1]));
        }
        for shift in shifts {
            let expected = eigs.iter().filter(|&&e| e < shift).count();
            prop_assert_eq!(pencil.count_below(shift), expected);
        }
    }

    #[test]
    fn count_below_is_monotone(
        diag in prop::collection::vec(-2.0f64..2.0, 3..=8),
        seedoff in prop::collection::vec(-1.0f64..1.0, 8),
        lo in -10.0f64..10.0,
        step in 0.0f64..5.0,
    ) {
        let n = diag.len();
        let off = seedoff[..n - 1].to_vec();
        let pencil = TriPencil::new(
            TriMatrix::new(diag, off).unwrap(),
            vec![1.0; n],
            BKind::PosDef,
        )
        .unwrap();
        prop_assert!(pencil.count_below(lo) <= pencil.count_below(lo + step));
    }

    #[test]
    fn chart_conversion_round_trips(s in -1.1996f64..1.1996) {
        let p = params();
        let phi = p.chart_convert(s, Chart::S, Chart::Phi).unwrap();
        let back = p.chart_convert(phi, Chart::Phi, Chart::S).unwrap();
        prop_assert!((back - s).abs() < 1e-12, "s={s}, back={back}");
        // The band coordinate stays inside its chart.
        prop_assert!(phi >= p.phi_star - 1e-12);
        prop_assert!(phi <= std::f64::consts::PI - p.phi_star + 1e-12);
    }
}

// ---------------------------------------------------------------------------
// Discrete symmetry: every assembled mode problem inherits the s -> -s
// symmetry of the surface, so the free-boundary matrix is palindromic.

#[test]
fn assembled_matrices_are_palindromic() {
    let p = params();
    let grid = Grid1D::uniform(Chart::S, 257, &p).unwrap();
    for mode in 0..4 {
        let a = ModeProblem::stability(mode, &p)
            .assemble(&grid, BoundaryCondition::robin())
            .unwrap()
            .matrix;
        let m = a.diag.len();
        for i in 0..m {
            assert_abs_diff_eq!(a.diag[i], a.diag[m - 1 - i], epsilon = 1e-12);
        }
        for i in 0..m - 1 {
            assert_abs_diff_eq!(a.off[i], a.off[m - 2 - i], epsilon = 1e-12);
        }
    }
}

// ---------------------------------------------------------------------------
// Independent integration oracle: the two closed-form mode-1 kernel fields
// (boundary translation sech s, rotation a(s sech s + sinh s)) must solve
// -f'' + (1 - 2 sech^2 s) f = 0. A classical fourth-order Runge-Kutta march
// from -T reproduces their values and derivatives at +T.

fn rk4_mode1(p: &CriticalParams, f0: f64, df0: f64, steps: usize) -> (f64, f64) {
    let h = 2.0 * p.t / steps as f64;
    let rhs = |s: f64, f: f64| {
        let sech = 1.0 / s.cosh();
        (1.0 - 2.0 * sech * sech) * f
    };
    let (mut s, mut f, mut df) = (-p.t, f0, df0);
    for _ in 0..steps {
        let (k1f, k1d) = (df, rhs(s, f));
        let (k2f, k2d) = (df + 0.5 * h * k1d, rhs(s + 0.5 * h, f + 0.5 * h * k1f));
        let (k3f, k3d) = (df + 0.5 * h * k2d, rhs(s + 0.5 * h, f + 0.5 * h * k2f));
        let (k4f, k4d) = (df + h * k3d, rhs(s + h, f + h * k3f));
        f += h * (k1f + 2.0 * k2f + 2.0 * k3f + k4f) / 6.0;
        df += h * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0;
        s += h;
    }
    (f, df)
}

#[test]
fn mode1_kernel_fields_survive_rk4_integration() {
    let p = params();
    for kind in [FieldKind::TranslationX, FieldKind::RotationXz] {
        let field = ClosedFormField::new(kind, &p);
        let (f_end, df_end) = rk4_mode1(&p, field.profile(-p.t), field.profile_deriv(-p.t), 4096);
        assert_relative_eq!(f_end, field.profile(p.t), max_relative = 1e-6);
        assert_relative_eq!(df_end, field.profile_deriv(p.t), max_relative = 1e-6);
    }
}

// ---------------------------------------------------------------------------
// Chart cross-check: the conformal mode problem gives the same eigenvalues
// whether it is discretized in the band colatitude or pulled back to the
// arc-parameter chart.

#[test]
fn conformal_eigenvalues_agree_across_charts() {
    let p = params();
    let n = 2048;
    let phi_grid = Grid1D::uniform(Chart::Phi, n, &p).unwrap();
    let s_grid = Grid1D::uniform(Chart::S, n, &p).unwrap();
    for mode in [0usize, 2] {
        let in_phi = ModeProblem::conformal(mode, &p)
            .assemble(&phi_grid, BoundaryCondition::robin())
            .unwrap()
            .eigenvalues(2, 1e-10)
            .unwrap();
        let in_s = ModeProblem::conformal_in_s(mode, &p)
            .assemble(&s_grid, BoundaryCondition::robin())
            .unwrap()
            .eigenvalues(2, 1e-10)
            .unwrap();
        for (a, b) in in_phi.iter().zip(&in_s) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-4 * a.abs().max(1.0));
        }
    }
}

// ---------------------------------------------------------------------------
// Robin counts are chart-independent: inertia at zero only depends on the
// quadratic form, not on the positive spectral weight.

#[test]
fn negative_counts_agree_across_charts() {
    let p = params();
    let phi_grid = Grid1D::uniform(Chart::Phi, 513, &p).unwrap();
    let s_grid = Grid1D::uniform(Chart::S, 513, &p).unwrap();
    for mode in 0..4 {
        let count_phi = ModeProblem::conformal(mode, &p)
            .assemble(&phi_grid, BoundaryCondition::robin())
            .unwrap()
            .pencil()
            .unwrap()
            .count_below(0.0);
        let count_s = ModeProblem::stability(mode, &p)
            .assemble(&s_grid, BoundaryCondition::robin())
            .unwrap()
            .pencil()
            .unwrap()
            .count_below(0.0);
        assert_eq!(count_phi, count_s, "mode {mode}");
    }
}
