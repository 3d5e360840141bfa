//! Quadratic forms of the second variation on the catenoid.
//!
//! For a normal variation u, the second variation of area under the
//! free-boundary constraint is
//!
//! ```text
//!     Q(u) = ∫_Σ |∇u|² − |A|²u² dA − ∮_∂Σ u² dL
//!          = ∫∫ (u_s² + u_θ² − 2 sech²s · u²) ds dθ
//!            − (1/T) ∮ (u(T,θ)² + u(−T,θ)²) dθ,
//! ```
//!
//! the second line in the flat (s, θ) coordinates where the conformal factors
//! cancel. The companion form without the curvature term,
//! S(u) = ∫|∇u|² dA − ∮u² dL, satisfies S(u) − Q(u) = ∫|A|²u² dA, an identity
//! every implementation here can be checked against.
//!
//! Two independent evaluation paths are provided:
//!
//! * **modal** — functions are stored as sums of separated components
//!   f(s)·{cos nθ, sin nθ}; θ-integrals are exact (π per component, 2π for
//!   the constant mode), s-integrals use trapezoid quadrature with centered
//!   derivative stencils (one-sided second-order at the ends);
//! * **pointwise** — a full 2-D tensor quadrature from samples alone, with
//!   spectral (DFT) θ-differentiation that is exact for trigonometric
//!   polynomials, or a centered-difference fallback for arbitrary inputs.
//!
//! Agreement of the two paths on trig-polynomial inputs is a Parseval-type
//! consistency check of the whole machinery.

use crate::error::{Error, Result};
use crate::fields::{ClosedFormField, Harmonic};
use crate::geometry::{trapezoid_weights, Chart, CriticalParams, Grid1D};
use crate::linalg::{dense_inertia, Inertia};
use crate::real::{c, Real};

/// One separated component f(s)·harm(nθ) of a surface function.
#[derive(Debug, Clone)]
pub struct Component<T: Real> {
    pub mode: usize,
    pub harmonic: Harmonic,
    /// Samples of f on the owning function's s-grid.
    pub profile: Vec<T>,
}

/// A function on the surface stored as a finite sum of Fourier components
/// with gridded radial profiles.
#[derive(Debug, Clone)]
pub struct SurfaceFunction<T: Real> {
    pub grid: Grid1D<T>,
    pub components: Vec<Component<T>>,
}

/// θ-mass of one component: ∫ harm(nθ)² dθ.
fn theta_factor<T: Real>(mode: usize, harmonic: Harmonic) -> T {
    if mode == 0 {
        match harmonic {
            Harmonic::Cos => c::<T>(2.0) * T::PI(),
            Harmonic::Sin => T::zero(),
        }
    } else {
        T::PI()
    }
}

impl<T: Real> SurfaceFunction<T> {
    /// Empty (zero) function on an s-chart grid.
    pub fn zero(grid: &Grid1D<T>) -> Result<Self> {
        if grid.chart != Chart::S {
            return Err(Error::ChartMismatch(
                "surface functions are stored on s-chart grids".into(),
            ));
        }
        Ok(Self {
            grid: grid.clone(),
            components: Vec::new(),
        })
    }

    /// Samples a closed-form field onto the grid.
    pub fn from_field(field: &ClosedFormField<T>, grid: &Grid1D<T>) -> Result<Self> {
        let mut f = Self::zero(grid)?;
        let profile: Vec<T> = grid.nodes.iter().map(|&s| field.profile(s)).collect();
        f.add_component(field.mode(), field.harmonic(), profile)?;
        Ok(f)
    }

    /// Adds a component from a radial profile function.
    pub fn with_profile(
        mut self,
        mode: usize,
        harmonic: Harmonic,
        f: impl Fn(T) -> T,
    ) -> Result<Self> {
        let profile: Vec<T> = self.grid.nodes.iter().map(|&s| f(s)).collect();
        self.add_component(mode, harmonic, profile)?;
        Ok(self)
    }

    /// Adds a sampled component, merging with an existing component of the
    /// same mode and harmonic.
    pub fn add_component(
        &mut self,
        mode: usize,
        harmonic: Harmonic,
        profile: Vec<T>,
    ) -> Result<()> {
        if profile.len() != self.grid.len() {
            return Err(Error::Domain(format!(
                "profile length {} does not match grid {}",
                profile.len(),
                self.grid.len()
            )));
        }
        if mode == 0 && harmonic == Harmonic::Sin {
            return Ok(()); // sin(0·θ) ≡ 0 contributes nothing
        }
        if let Some(existing) = self
            .components
            .iter_mut()
            .find(|k| k.mode == mode && k.harmonic == harmonic)
        {
            for (e, p) in existing.profile.iter_mut().zip(&profile) {
                *e += *p;
            }
        } else {
            self.components.push(Component {
                mode,
                harmonic,
                profile,
            });
        }
        Ok(())
    }

    /// self ← self + coeff·other (grids must match).
    pub fn axpy(&mut self, coeff: T, other: &Self) -> Result<()> {
        if other.grid.len() != self.grid.len()
            || other.grid.chart != self.grid.chart
            || other.grid.nodes[0] != self.grid.nodes[0]
        {
            return Err(Error::Domain(
                "mismatched grids in linear combination".into(),
            ));
        }
        for k in &other.components {
            let scaled: Vec<T> = k.profile.iter().map(|&v| coeff * v).collect();
            self.add_component(k.mode, k.harmonic, scaled)?;
        }
        Ok(())
    }

    /// Largest Fourier mode present.
    pub fn max_mode(&self) -> usize {
        self.components.iter().map(|k| k.mode).max().unwrap_or(0)
    }

    /// Value u(s_i, θ) from the stored components.
    pub fn sample(&self, i: usize, theta: T) -> T {
        self.components
            .iter()
            .map(|k| {
                let n = T::from_usize(k.mode).unwrap();
                let ang = match k.harmonic {
                    Harmonic::Cos => (n * theta).cos(),
                    Harmonic::Sin => (n * theta).sin(),
                };
                k.profile[i] * ang
            })
            .sum()
    }

    /// ∫_Σ u² dA, modal path.
    pub fn l2_norm_sq(&self, params: &CriticalParams<T>) -> T {
        let grid = &self.grid;
        let h = grid.spacing;
        self.components
            .iter()
            .map(|k| {
                let factor = theta_factor::<T>(k.mode, k.harmonic);
                let mut s = T::zero();
                for (i, tau) in trapezoid_weights::<T>(grid.len()).enumerate() {
                    let w = params.metric_density(grid.nodes[i]);
                    s += tau * w * k.profile[i] * k.profile[i];
                }
                factor * s * h
            })
            .sum()
    }

    /// ∮_∂Σ u² dL, exact in θ.
    pub fn boundary_l2_sq(&self, params: &CriticalParams<T>) -> T {
        let n = self.grid.len();
        let radius = T::one() / params.t;
        self.components
            .iter()
            .map(|k| {
                let factor = theta_factor::<T>(k.mode, k.harmonic);
                factor
                    * radius
                    * (k.profile[n - 1] * k.profile[n - 1] + k.profile[0] * k.profile[0])
            })
            .sum()
    }

    /// Scales the function so ∫u² dA = 1; errors if the norm vanishes.
    pub fn l2_normalize(&mut self, params: &CriticalParams<T>) -> Result<T> {
        let nrm = self.l2_norm_sq(params).sqrt();
        if !(nrm > T::zero()) || !nrm.is_finite() {
            return Err(Error::ZeroFunction(format!("L² norm {nrm:e}")));
        }
        for k in &mut self.components {
            for v in &mut k.profile {
                *v /= nrm;
            }
        }
        Ok(nrm)
    }
}

/// Centered derivative samples of a gridded profile (one-sided second-order
/// stencils at the two ends).
fn derivative_samples<T: Real>(f: &[T], h: T) -> Vec<T> {
    let n = f.len();
    let two_h = h + h;
    let mut d = Vec::with_capacity(n);
    d.push((-c::<T>(3.0) * f[0] + c::<T>(4.0) * f[1] - f[2]) / two_h);
    for i in 1..n - 1 {
        d.push((f[i + 1] - f[i - 1]) / two_h);
    }
    d.push((c::<T>(3.0) * f[n - 1] - c::<T>(4.0) * f[n - 2] + f[n - 3]) / two_h);
    d
}

/// Which bilinear form a Gram matrix is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilinearKind {
    /// Q — second variation with curvature and boundary terms.
    SecondVariation,
    /// S — Dirichlet energy minus the boundary term (no curvature).
    GradientMinusBoundary,
    /// ∫_Σ u v dA.
    VolumeMass,
    /// ∮_∂Σ u v dL.
    BoundaryMass,
}

/// Modal evaluation of the selected bilinear form.
pub fn bilinear<T: Real>(
    kind: BilinearKind,
    u: &SurfaceFunction<T>,
    v: &SurfaceFunction<T>,
    params: &CriticalParams<T>,
) -> Result<T> {
    if u.grid.len() != v.grid.len() || u.grid.chart != v.grid.chart {
        return Err(Error::Domain("mismatched grids in bilinear form".into()));
    }
    let grid = &u.grid;
    let n = grid.len();
    let h = grid.spacing;
    let radius = T::one() / params.t;
    let mut total = T::zero();
    for ku in &u.components {
        for kv in &v.components {
            if ku.mode != kv.mode || ku.harmonic != kv.harmonic {
                continue; // exact θ-orthogonality
            }
            let factor = theta_factor::<T>(ku.mode, ku.harmonic);
            if factor == T::zero() {
                continue;
            }
            let nn = {
                let m = T::from_usize(ku.mode).unwrap();
                m * m
            };
            let contribution = match kind {
                BilinearKind::SecondVariation | BilinearKind::GradientMinusBoundary => {
                    let du = derivative_samples(&ku.profile, h);
                    let dv = derivative_samples(&kv.profile, h);
                    let mut s = T::zero();
                    for (i, tau) in trapezoid_weights::<T>(n).enumerate() {
                        let sech2 = {
                            let sech = T::one() / grid.nodes[i].cosh();
                            sech * sech
                        };
                        let curv = match kind {
                            BilinearKind::SecondVariation => c::<T>(2.0) * sech2,
                            _ => T::zero(),
                        };
                        s += tau * (du[i] * dv[i] + (nn - curv) * ku.profile[i] * kv.profile[i]);
                    }
                    s * h
                        - radius
                            * (ku.profile[0] * kv.profile[0]
                                + ku.profile[n - 1] * kv.profile[n - 1])
                }
                BilinearKind::VolumeMass => {
                    let mut s = T::zero();
                    for (i, tau) in trapezoid_weights::<T>(n).enumerate() {
                        s += tau
                            * params.metric_density(grid.nodes[i])
                            * ku.profile[i]
                            * kv.profile[i];
                    }
                    s * h
                }
                BilinearKind::BoundaryMass => {
                    radius * (ku.profile[0] * kv.profile[0] + ku.profile[n - 1] * kv.profile[n - 1])
                }
            };
            total += factor * contribution;
        }
    }
    Ok(total)
}

/// Q(u, v), modal path.
pub fn q_bilinear<T: Real>(
    u: &SurfaceFunction<T>,
    v: &SurfaceFunction<T>,
    params: &CriticalParams<T>,
) -> Result<T> {
    bilinear(BilinearKind::SecondVariation, u, v, params)
}

/// Q(u), modal path.
pub fn q_form<T: Real>(u: &SurfaceFunction<T>, params: &CriticalParams<T>) -> Result<T> {
    q_bilinear(u, u, params)
}

/// S(u) = ∫|∇u|² dA − ∮u² dL, modal path.
pub fn s_form<T: Real>(u: &SurfaceFunction<T>, params: &CriticalParams<T>) -> Result<T> {
    bilinear(BilinearKind::GradientMinusBoundary, u, u, params)
}

/// How the pointwise path differentiates in θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaDerivative {
    /// Trigonometric (DFT) differentiation — exact for trig polynomials
    /// sampled with more than twice their degree.
    Spectral,
    /// Centered second-order differences on the periodic grid.
    FiniteDifference,
}

/// Pointwise 2-D evaluation of Q from samples of `f` on an n_s × n_theta
/// tensor grid. Independent of the modal path: only point values are used.
pub fn q_pointwise<T: Real>(
    f: impl Fn(T, T) -> T,
    n_s: usize,
    n_theta: usize,
    theta_deriv: ThetaDerivative,
    params: &CriticalParams<T>,
) -> Result<T> {
    if n_s < 3 || n_theta < 4 {
        return Err(Error::Domain("pointwise grid too small".into()));
    }
    let grid = Grid1D::uniform(Chart::S, n_s, params)?;
    let hs = grid.spacing;
    let ht = c::<T>(2.0) * T::PI() / T::from_usize(n_theta).unwrap();
    let theta = |j: usize| ht * T::from_usize(j).unwrap();
    // Sample matrix, rows by s.
    let u: Vec<Vec<T>> = (0..n_s)
        .map(|i| (0..n_theta).map(|j| f(grid.nodes[i], theta(j))).collect())
        .collect();
    // θ-derivatives row by row.
    let du_theta: Vec<Vec<T>> = u
        .iter()
        .map(|row| match theta_deriv {
            ThetaDerivative::FiniteDifference => (0..n_theta)
                .map(|j| {
                    let jp = (j + 1) % n_theta;
                    let jm = (j + n_theta - 1) % n_theta;
                    (row[jp] - row[jm]) / (ht + ht)
                })
                .collect(),
            ThetaDerivative::Spectral => spectral_theta_derivative(row, ht),
        })
        .collect();
    // s-derivatives column by column.
    let mut du_s = vec![vec![T::zero(); n_theta]; n_s];
    for j in 0..n_theta {
        let col: Vec<T> = (0..n_s).map(|i| u[i][j]).collect();
        let d = derivative_samples(&col, hs);
        for i in 0..n_s {
            du_s[i][j] = d[i];
        }
    }
    let mut interior = T::zero();
    for (i, tau) in trapezoid_weights::<T>(n_s).enumerate() {
        let sech2 = {
            let sech = T::one() / grid.nodes[i].cosh();
            sech * sech
        };
        let mut row = T::zero();
        for j in 0..n_theta {
            row += du_s[i][j] * du_s[i][j] + du_theta[i][j] * du_theta[i][j]
                - c::<T>(2.0) * sech2 * u[i][j] * u[i][j];
        }
        interior += tau * row;
    }
    let mut boundary = T::zero();
    for j in 0..n_theta {
        boundary += u[0][j] * u[0][j] + u[n_s - 1][j] * u[n_s - 1][j];
    }
    Ok(interior * hs * ht - boundary * ht / params.t)
}

/// Derivative of a periodic sample row by direct trigonometric interpolation.
fn spectral_theta_derivative<T: Real>(row: &[T], ht: T) -> Vec<T> {
    let m = row.len();
    let mf = T::from_usize(m).unwrap();
    let kmax = (m - 1) / 2; // modes above this are not represented faithfully
    let theta = |j: usize| ht * T::from_usize(j).unwrap();
    let mut coeffs = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let kf = T::from_usize(k).unwrap();
        let mut a = T::zero();
        let mut b = T::zero();
        for (j, &y) in row.iter().enumerate() {
            let ang = kf * theta(j);
            a += y * ang.cos();
            b += y * ang.sin();
        }
        let two_over_m = c::<T>(2.0) / mf;
        coeffs.push((a * two_over_m, b * two_over_m));
    }
    (0..m)
        .map(|j| {
            let mut d = T::zero();
            for (k, &(a, b)) in coeffs.iter().enumerate() {
                let kf = T::from_usize(k + 1).unwrap();
                let ang = kf * theta(j);
                d += kf * (b * ang.cos() - a * ang.sin());
            }
            d
        })
        .collect()
}

/// Gram matrix of a family under a bilinear form, with its inertia
/// (eigenvalue signs thresholded at 1e−3 of the matrix norm) and the largest
/// off-diagonal entry as an orthogonality report.
#[derive(Debug, Clone)]
pub struct GramReport<T: Real> {
    pub kind: BilinearKind,
    pub matrix: Vec<Vec<T>>,
    pub inertia: Inertia,
    pub max_offdiag: T,
}

pub fn gram<T: Real>(
    kind: BilinearKind,
    family: &[&SurfaceFunction<T>],
    params: &CriticalParams<T>,
) -> Result<GramReport<T>> {
    let m = family.len();
    if m == 0 {
        return Err(Error::Domain("empty family".into()));
    }
    let mut g = vec![vec![T::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let v = bilinear(kind, family[i], family[j], params)?;
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    let mut max_off = T::zero();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                max_off = max_off.max(g[i][j].abs());
            }
        }
    }
    let inertia = dense_inertia(&g, c(1e-3))?;
    Ok(GramReport {
        kind,
        matrix: g,
        inertia,
        max_offdiag: max_off,
    })
}

/// Both sides of the identity S(u) − Q(u) = ∫ |A|² u² dA, evaluated
/// independently (the right side by its own modal quadrature).
#[derive(Debug, Clone)]
pub struct GapReport<T: Real> {
    pub q_value: T,
    pub s_value: T,
    /// ∫ |A|² u² dA by direct quadrature.
    pub curvature_energy: T,
    /// (S − Q) − ∫|A|²u², the identity residual.
    pub discrepancy: T,
}

/// Checks S(u) − Q(u) = ∫|A|²u² dA for one function.
pub fn strict_gap_check<T: Real>(
    u: &SurfaceFunction<T>,
    params: &CriticalParams<T>,
) -> Result<GapReport<T>> {
    let q = q_form(u, params)?;
    let s = s_form(u, params)?;
    let grid = &u.grid;
    let h = grid.spacing;
    let mut curv = T::zero();
    for k in &u.components {
        let factor = theta_factor::<T>(k.mode, k.harmonic);
        let mut acc = T::zero();
        for (i, tau) in trapezoid_weights::<T>(grid.len()).enumerate() {
            // |A|² dA = 2 sech²s ds dθ in the flat coordinates.
            let sech = T::one() / grid.nodes[i].cosh();
            acc += tau * c::<T>(2.0) * sech * sech * k.profile[i] * k.profile[i];
        }
        curv += factor * acc * h;
    }
    Ok(GapReport {
        q_value: q,
        s_value: s,
        curvature_energy: curv,
        discrepancy: (s - q) - curv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldKind;
    use approx::assert_relative_eq;

    fn params() -> CriticalParams<f64> {
        CriticalParams::solve(1e-12).unwrap()
    }

    fn grid(n: usize) -> Grid1D<f64> {
        Grid1D::uniform(Chart::S, n, &params()).unwrap()
    }

    fn field_fn(kind: FieldKind, n: usize) -> SurfaceFunction<f64> {
        let p = params();
        SurfaceFunction::from_field(&ClosedFormField::new(kind, &p), &grid(n)).unwrap()
    }

    #[test]
    fn q_of_constant_matches_closed_form() {
        let p = params();
        let one = field_fn(FieldKind::ConstOne, 512);
        let q = q_form(&one, &p).unwrap();
        // Q(1) = −∫|A|² − ∮1 = −8π/T − 4π/T = −12π/T.
        let want = -12.0 * std::f64::consts::PI / p.t;
        assert_relative_eq!(q, want, max_relative = 1e-5);
        assert_relative_eq!(want, -31.42434196792768, max_relative = 1e-13);
    }

    #[test]
    fn q_of_translations_matches_closed_forms() {
        let p = params();
        let vx = field_fn(FieldKind::TranslationX, 512);
        let q = q_form(&vx, &p).unwrap();
        // Q(vx) = −2∮vx² = −4π sech²T / T.
        let want = -4.0 * std::f64::consts::PI / (p.t * p.cosh_t.powi(2));
        assert_relative_eq!(q, want, max_relative = 1e-4);
        assert_relative_eq!(want, -3.1967298237178468, max_relative = 1e-12);

        let vz = field_fn(FieldKind::TranslationZ, 512);
        let qz = q_form(&vz, &p).unwrap();
        let want_z = -4.0 * std::f64::consts::PI * p.a.powi(2) * (p.sinh_t * p.cosh_t - p.t);
        assert_relative_eq!(qz, want_z, max_relative = 1e-4);
        assert_relative_eq!(want_z, -4.0813210085402, max_relative = 1e-10);
    }

    #[test]
    fn q_vanishes_on_rotations_and_dirichlet_kernel() {
        let p = params();
        let rot = field_fn(FieldKind::RotationXz, 512);
        assert!(q_form(&rot, &p).unwrap().abs() <= 1e-4);
        let xi = field_fn(FieldKind::XiDilation, 1024);
        assert!(q_form(&xi, &p).unwrap().abs() <= 1e-4);
    }

    #[test]
    fn steklov_green_identity_for_eigenfields() {
        // For a Jacobi field with ∂v/∂ν = σ v: Q(v, w) = (σ − 1) ∮ v w.
        let p = params();
        let n = 512;
        let vx = field_fn(FieldKind::TranslationX, n);
        let q = q_form(&vx, &p).unwrap();
        let bx = bilinear(BilinearKind::BoundaryMass, &vx, &vx, &p).unwrap();
        assert_relative_eq!(q, -2.0 * bx, max_relative = 1e-5);

        // The boundary side is exact, so this is a pure quadrature test of
        // Q(vz); second order needs the finer grid to clear 1e-5.
        let vz = field_fn(FieldKind::TranslationZ, 2 * n);
        let qz = q_form(&vz, &p).unwrap();
        let bz = bilinear(BilinearKind::BoundaryMass, &vz, &vz, &p).unwrap();
        let sigma = 1.0 / p.sinh_t.powi(2);
        assert_relative_eq!(qz, (sigma - 1.0) * bz, max_relative = 1e-5);

        // Cross term between eigenfields of distinct eigenvalues vanishes.
        let rot = field_fn(FieldKind::RotationXz, n);
        let qcross = q_bilinear(&vx, &rot, &p).unwrap();
        assert!(qcross.abs() <= 1e-6, "Q(vx, rot) = {qcross}");
        let bcross = bilinear(BilinearKind::BoundaryMass, &vx, &rot, &p).unwrap();
        assert!(bcross.abs() <= 1e-14);
    }

    #[test]
    fn parseval_modal_versus_pointwise() {
        // A multi-mode trig polynomial: both paths integrate it to roundoff
        // when n_theta exceeds twice the top mode.
        let p = params();
        let u = SurfaceFunction::zero(&grid(256))
            .unwrap()
            .with_profile(0, Harmonic::Cos, |s| 1.0 - 0.3 * s * s)
            .unwrap()
            .with_profile(1, Harmonic::Cos, |s| s + 0.2)
            .unwrap()
            .with_profile(2, Harmonic::Sin, |s| 0.5 * s)
            .unwrap()
            .with_profile(4, Harmonic::Cos, |s| 0.1 + 0.7 * s)
            .unwrap();
        let modal = q_form(&u, &p).unwrap();
        let pw = q_pointwise(
            |s, th| {
                (1.0 - 0.3 * s * s)
                    + (s + 0.2) * th.cos()
                    + 0.5 * s * (2.0 * th).sin()
                    + (0.1 + 0.7 * s) * (4.0 * th).cos()
            },
            256,
            16,
            ThetaDerivative::Spectral,
            &p,
        )
        .unwrap();
        assert_relative_eq!(modal, pw, max_relative = 1e-8);
    }

    #[test]
    fn gap_identity_for_constant_and_translation() {
        let p = params();
        let one = field_fn(FieldKind::ConstOne, 512);
        let g = strict_gap_check(&one, &p).unwrap();
        // S(1) − Q(1) = ∫|A|² = 8π/T; S(1) = −∮1 = −4π/T.
        assert_relative_eq!(
            g.s_value,
            -4.0 * std::f64::consts::PI / p.t,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            g.curvature_energy,
            8.0 * std::f64::consts::PI / p.t,
            max_relative = 1e-5
        );
        assert!(g.discrepancy.abs() <= 1e-8 * g.curvature_energy.abs());

        let vz = field_fn(FieldKind::TranslationZ, 512);
        let gz = strict_gap_check(&vz, &p).unwrap();
        // ∫|A|²vz² = (8π/3)/T³.
        assert_relative_eq!(
            gz.curvature_energy,
            8.0 * std::f64::consts::PI / (3.0 * p.t.powi(3)),
            max_relative = 1e-5
        );
        assert!(gz.discrepancy.abs() <= 1e-8 * gz.curvature_energy.abs());
    }

    #[test]
    fn negative_gram_of_low_modes() {
        let p = params();
        let n = 512;
        let family = [
            field_fn(FieldKind::ConstOne, n),
            field_fn(FieldKind::TranslationZ, n),
            field_fn(FieldKind::TranslationX, n),
            field_fn(FieldKind::TranslationY, n),
        ];
        let refs: Vec<&SurfaceFunction<f64>> = family.iter().collect();
        let report = gram(BilinearKind::SecondVariation, &refs, &p).unwrap();
        assert_eq!(
            report.inertia,
            Inertia {
                n_neg: 4,
                n_zero: 0,
                n_pos: 0
            }
        );
        assert!(
            report.max_offdiag <= 1e-10,
            "offdiag {}",
            report.max_offdiag
        );
        assert_relative_eq!(report.matrix[0][0], -31.42434196792768, max_relative = 1e-4);
        assert_relative_eq!(report.matrix[1][1], -4.0813210085402, max_relative = 1e-4);
        assert_relative_eq!(
            report.matrix[2][2],
            -3.1967298237178468,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            report.matrix[3][3],
            -3.1967298237178468,
            max_relative = 1e-4
        );
    }

    #[test]
    fn coordinate_grams() {
        let p = params();
        let n = 512;
        let family = [
            field_fn(FieldKind::ConstOne, n),
            field_fn(FieldKind::CoordX, n),
            field_fn(FieldKind::CoordY, n),
            field_fn(FieldKind::CoordZ, n),
        ];
        let refs: Vec<&SurfaceFunction<f64>> = family.iter().collect();
        // Under S, only the constant is active: S(x_i) = 0 because
        // ∫|∇x_i|² = ∮ x_i ∂x_i/∂ν = ∮ x_i².
        let s_report = gram(BilinearKind::GradientMinusBoundary, &refs, &p).unwrap();
        assert_eq!(s_report.inertia.n_neg, 1);
        assert_eq!(s_report.inertia.n_zero, 3);
        assert_relative_eq!(
            s_report.matrix[0][0],
            -4.0 * std::f64::consts::PI / p.t,
            max_relative = 1e-10
        );
        // The boundary mass Gram is diagonal positive definite: the family
        // is genuinely 4-dimensional on the boundary.
        let b_report = gram(BilinearKind::BoundaryMass, &refs, &p).unwrap();
        assert_eq!(
            b_report.inertia,
            Inertia {
                n_neg: 0,
                n_zero: 0,
                n_pos: 4
            }
        );
        assert!(b_report.max_offdiag <= 1e-12);
        let pi = std::f64::consts::PI;
        assert_relative_eq!(b_report.matrix[0][0], 4.0 * pi / p.t, max_relative = 1e-12);
        assert_relative_eq!(
            b_report.matrix[1][1],
            2.0 * pi / p.t.powi(3),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            b_report.matrix[2][2],
            2.0 * pi / p.t.powi(3),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            b_report.matrix[3][3],
            4.0 * pi * p.a.powi(2) * p.t,
            max_relative = 1e-12
        );
    }

    #[test]
    fn volume_mass_reproduces_area() {
        let p = params();
        let one = field_fn(FieldKind::ConstOne, 1024);
        let area = one.l2_norm_sq(&p);
        assert_relative_eq!(area, 5.2373903279879475, max_relative = 1e-5);
        let via_bilinear = bilinear(BilinearKind::VolumeMass, &one, &one, &p).unwrap();
        assert_relative_eq!(area, via_bilinear, max_relative = 1e-14);
    }

    #[test]
    fn normalization_and_zero_function() {
        let p = params();
        let mut u = field_fn(FieldKind::TranslationX, 256);
        let norm = u.l2_normalize(&p).unwrap();
        assert!(norm > 0.0);
        assert_relative_eq!(u.l2_norm_sq(&p), 1.0, max_relative = 1e-12);
        let mut z = SurfaceFunction::zero(&grid(64)).unwrap();
        assert!(matches!(z.l2_normalize(&p), Err(Error::ZeroFunction(_))));
    }

    #[test]
    fn pointwise_finite_difference_fallback_converges() {
        // FD in θ is only second order: with enough θ nodes it approaches
        // the spectral value.
        let p = params();
        let f = |s: f64, th: f64| (1.0 / s.cosh()) * th.cos();
        let exact = q_pointwise(f, 256, 64, ThetaDerivative::Spectral, &p).unwrap();
        let fd = q_pointwise(f, 256, 512, ThetaDerivative::FiniteDifference, &p).unwrap();
        assert_relative_eq!(exact, fd, max_relative = 1e-3);
    }
}
