//! Closed-form fields on the critical catenoid: Jacobi fields, coordinate
//! functions, and the constant.
//!
//! A Jacobi field is a solution of J u = 0 with J = −Δ − |A|² the stability
//! operator. The geometric deformations of the surface supply them in closed
//! form, separated as u(s, θ) = f(s)·{cos θ, sin θ, 1}:
//!
//! * translations: the normal components of e₁, e₂, e₃ are
//!   sech s·cos θ, sech s·sin θ, tanh s;
//! * rotations about horizontal axes: Λ(s)·{cos θ, sin θ} with
//!   Λ(s) = a(s·sech s + sinh s), normalized so Λ(T) = 1;
//! * the dilation-type field ξ(s) = 1 − s·tanh s, which vanishes on the
//!   boundary (a Dirichlet null field).
//!
//! The ambient coordinates x, y, z themselves are harmonic (Δx_i = 0, the
//! surface being minimal) and satisfy ∂x_i/∂ν = x_i on the boundary because
//! the conormal equals the position there — they are Steklov eigenfunctions
//! of the Laplacian with eigenvalue 1. The constant 1 is the trivial Steklov
//! eigenfunction with eigenvalue 0, and is *not* a Jacobi field:
//! J·1 = −|A|².
//!
//! Each field records its Fourier mode, harmonic, parity in s, closed-form
//! boundary ratio, and can report the sup-norm residual of J (or Δ) applied
//! by plain centered finite differences — an independent check that the
//! closed forms really solve their equations.

use crate::error::{Error, Result};
use crate::geometry::{Chart, CriticalParams, Grid1D};
use crate::real::{c, Real};

/// Angular factor of a separated field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Harmonic {
    /// cos(nθ) (and the constant for n = 0).
    Cos,
    /// sin(nθ).
    Sin,
}

/// Parity of the radial profile under s ↦ −s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// The catalogue of closed-form fields used by the spectral checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// The constant function 1.
    ConstOne,
    /// Normal component of the x-translation: sech s · cos θ.
    TranslationX,
    /// Normal component of the y-translation: sech s · sin θ.
    TranslationY,
    /// Normal component of the z-translation: tanh s.
    TranslationZ,
    /// Normal component of the rotation in the xz-plane: Λ(s) · cos θ.
    RotationXz,
    /// Normal component of the rotation in the yz-plane: Λ(s) · sin θ.
    RotationYz,
    /// Boundary-vanishing Jacobi field ξ(s) = 1 − s·tanh s.
    XiDilation,
    /// Ambient coordinate x = a cosh s · cos θ.
    CoordX,
    /// Ambient coordinate y = a cosh s · sin θ.
    CoordY,
    /// Ambient coordinate z = a s.
    CoordZ,
}

impl FieldKind {
    pub const ALL: [FieldKind; 10] = [
        FieldKind::ConstOne,
        FieldKind::TranslationX,
        FieldKind::TranslationY,
        FieldKind::TranslationZ,
        FieldKind::RotationXz,
        FieldKind::RotationYz,
        FieldKind::XiDilation,
        FieldKind::CoordX,
        FieldKind::CoordY,
        FieldKind::CoordZ,
    ];

    /// Stable lowercase name (used by the CLI output).
    pub fn name(&self) -> &'static str {
        match self {
            FieldKind::ConstOne => "const_one",
            FieldKind::TranslationX => "translation_x",
            FieldKind::TranslationY => "translation_y",
            FieldKind::TranslationZ => "translation_z",
            FieldKind::RotationXz => "rotation_xz",
            FieldKind::RotationYz => "rotation_yz",
            FieldKind::XiDilation => "xi_dilation",
            FieldKind::CoordX => "coord_x",
            FieldKind::CoordY => "coord_y",
            FieldKind::CoordZ => "coord_z",
        }
    }
}

/// A closed-form separated field u(s, θ) = f(s)·harm(n θ) with its metadata.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormField<T: Real> {
    pub kind: FieldKind,
    pub params: CriticalParams<T>,
}

impl<T: Real> ClosedFormField<T> {
    pub fn new(kind: FieldKind, params: &CriticalParams<T>) -> Self {
        Self {
            kind,
            params: *params,
        }
    }

    /// Fourier mode n of the angular factor.
    pub fn mode(&self) -> usize {
        match self.kind {
            FieldKind::ConstOne
            | FieldKind::TranslationZ
            | FieldKind::XiDilation
            | FieldKind::CoordZ => 0,
            _ => 1,
        }
    }

    /// cos or sin angular factor (Cos for all mode-0 fields).
    pub fn harmonic(&self) -> Harmonic {
        match self.kind {
            FieldKind::TranslationY | FieldKind::RotationYz | FieldKind::CoordY => Harmonic::Sin,
            _ => Harmonic::Cos,
        }
    }

    /// Parity of the radial profile in s.
    pub fn parity(&self) -> Parity {
        match self.kind {
            FieldKind::ConstOne | FieldKind::XiDilation => Parity::Even,
            FieldKind::TranslationX | FieldKind::TranslationY => Parity::Even,
            FieldKind::CoordX | FieldKind::CoordY => Parity::Even,
            FieldKind::TranslationZ
            | FieldKind::RotationXz
            | FieldKind::RotationYz
            | FieldKind::CoordZ => Parity::Odd,
        }
    }

    /// True when J u = 0 (the field is a Jacobi field).
    pub fn is_jacobi_field(&self) -> bool {
        matches!(
            self.kind,
            FieldKind::TranslationX
                | FieldKind::TranslationY
                | FieldKind::TranslationZ
                | FieldKind::RotationXz
                | FieldKind::RotationYz
                | FieldKind::XiDilation
        )
    }

    /// True when Δ u = 0 (constants and ambient coordinates).
    pub fn is_harmonic(&self) -> bool {
        matches!(
            self.kind,
            FieldKind::ConstOne | FieldKind::CoordX | FieldKind::CoordY | FieldKind::CoordZ
        )
    }

    /// Radial profile f(s).
    pub fn profile(&self, s: T) -> T {
        let p = &self.params;
        match self.kind {
            FieldKind::ConstOne => T::one(),
            FieldKind::TranslationX | FieldKind::TranslationY => T::one() / s.cosh(),
            FieldKind::TranslationZ => s.tanh(),
            FieldKind::RotationXz | FieldKind::RotationYz => p.a * (s / s.cosh() + s.sinh()),
            FieldKind::XiDilation => T::one() - s * s.tanh(),
            FieldKind::CoordX | FieldKind::CoordY => p.a * s.cosh(),
            FieldKind::CoordZ => p.a * s,
        }
    }

    /// Analytic derivative f′(s).
    pub fn profile_deriv(&self, s: T) -> T {
        let p = &self.params;
        let sech = T::one() / s.cosh();
        match self.kind {
            FieldKind::ConstOne => T::zero(),
            FieldKind::TranslationX | FieldKind::TranslationY => -sech * s.tanh(),
            FieldKind::TranslationZ => sech * sech,
            FieldKind::RotationXz | FieldKind::RotationYz => {
                p.a * (sech - s * sech * s.tanh() + s.cosh())
            }
            FieldKind::XiDilation => -s.tanh() - s * sech * sech,
            FieldKind::CoordX | FieldKind::CoordY => p.a * s.sinh(),
            FieldKind::CoordZ => p.a,
        }
    }

    /// u(s, θ) = f(s)·harm(n θ).
    pub fn evaluate(&self, s: T, theta: T) -> T {
        let n = T::from_usize(self.mode()).unwrap();
        let ang = match self.harmonic() {
            Harmonic::Cos => (n * theta).cos(),
            Harmonic::Sin => (n * theta).sin(),
        };
        self.profile(s) * ang
    }

    /// Boundary values (f(T), f(−T)).
    pub fn boundary_values(&self) -> (T, T) {
        (self.profile(self.params.t), self.profile(-self.params.t))
    }

    /// Closed-form Steklov eigenvalue of the stability operator
    /// (J u = 0 with ∂u/∂ν = σ u on the boundary), when the field is one.
    pub fn jacobi_steklov_eigenvalue(&self) -> Option<T> {
        let p = &self.params;
        match self.kind {
            FieldKind::TranslationX | FieldKind::TranslationY => Some(-T::one()),
            FieldKind::TranslationZ => Some(T::one() / (p.sinh_t * p.sinh_t)),
            FieldKind::RotationXz | FieldKind::RotationYz => Some(T::one()),
            _ => None,
        }
    }

    /// Closed-form Steklov eigenvalue of the Laplacian (Δ u = 0 with
    /// ∂u/∂ν = σ u), when the field is harmonic: 0 for the constant, 1 for
    /// every ambient coordinate (the conormal equals the position).
    pub fn laplace_steklov_eigenvalue(&self) -> Option<T> {
        match self.kind {
            FieldKind::ConstOne => Some(T::zero()),
            FieldKind::CoordX | FieldKind::CoordY | FieldKind::CoordZ => Some(T::one()),
            _ => None,
        }
    }

    /// Computed boundary ratio (∂u/∂ν) / u at s = T, using ∂/∂ν = T·∂/∂s and
    /// the analytic profile derivative. Errors when the boundary value
    /// vanishes (as for the Dirichlet field ξ).
    pub fn steklov_ratio(&self) -> Result<T> {
        let p = &self.params;
        let fb = self.profile(p.t);
        let scale = self
            .profile(T::zero())
            .abs()
            .max(fb.abs())
            .max(self.profile(p.t * c(0.5)).abs());
        if fb.abs() <= c::<T>(1e-10) * scale.max(T::min_positive_value()) {
            return Err(Error::Singular(format!(
                "boundary value {fb:e} of {} too small for a ratio",
                self.kind.name()
            )));
        }
        Ok(p.t * self.profile_deriv(p.t) / fb)
    }

    /// Sup-norm of J u over the interior grid nodes, J applied by centered
    /// second differences in both s and θ (θ periodic). Second-order small
    /// for Jacobi fields; O(1) for fields that are not (e.g. the constant,
    /// where it converges to sup |A|² = 2/a²).
    pub fn jacobi_residual(&self, n_s: usize, n_theta: usize) -> T {
        self.residual_sup(n_s, n_theta, true)
    }

    /// Sup-norm of Δ u over the interior grid nodes by the same stencil;
    /// second-order small for harmonic fields.
    pub fn laplace_residual(&self, n_s: usize, n_theta: usize) -> T {
        self.residual_sup(n_s, n_theta, false)
    }

    fn residual_sup(&self, n_s: usize, n_theta: usize, include_curvature: bool) -> T {
        let p = &self.params;
        let grid = Grid1D::uniform(Chart::S, n_s, p).expect("n_s >= 3");
        let hs = grid.spacing;
        let ht = c::<T>(2.0) * T::PI() / T::from_usize(n_theta).unwrap();
        let mut sup = T::zero();
        for i in 1..n_s - 1 {
            let s = grid.nodes[i];
            let dens = p.metric_density(s); // a² cosh² s
            let curv = p.second_fundamental_norm_sq(s);
            for j in 0..n_theta {
                let theta = ht * T::from_usize(j).unwrap();
                let u = self.evaluate(s, theta);
                let uss = (self.evaluate(s + hs, theta) - (u + u) + self.evaluate(s - hs, theta))
                    / (hs * hs);
                let utt = (self.evaluate(s, theta + ht) - (u + u) + self.evaluate(s, theta - ht))
                    / (ht * ht);
                let lap = (uss + utt) / dens;
                let r = if include_curvature {
                    -lap - curv * u
                } else {
                    -lap
                };
                sup = sup.max(r.abs());
            }
        }
        sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params() -> CriticalParams<f64> {
        CriticalParams::solve(1e-12).unwrap()
    }

    fn field(kind: FieldKind) -> ClosedFormField<f64> {
        ClosedFormField::new(kind, &params())
    }

    #[test]
    fn boundary_normalizations() {
        let p = params();
        // Λ(T) = a(T sech T + sinh T) = 1 exactly at the critical parameter.
        let rot = field(FieldKind::RotationXz);
        assert_relative_eq!(rot.profile(p.t), 1.0, max_relative = 1e-14);
        // ξ(±T) = 1 − T tanh T = 0.
        let xi = field(FieldKind::XiDilation);
        assert!(xi.profile(p.t).abs() <= 1e-15);
        assert!(xi.profile(-p.t).abs() <= 1e-15);
        // tanh T = 1/T.
        let vz = field(FieldKind::TranslationZ);
        assert_relative_eq!(vz.profile(p.t), 1.0 / p.t, max_relative = 1e-14);
        // Coordinates on the boundary circle of radius 1/T, height a·T.
        let cx = field(FieldKind::CoordX);
        assert_relative_eq!(cx.profile(p.t), 1.0 / p.t, max_relative = 1e-14);
    }

    #[test]
    fn steklov_ratios_match_closed_forms() {
        for kind in FieldKind::ALL {
            let f = field(kind);
            match kind {
                FieldKind::XiDilation => {
                    assert!(matches!(f.steklov_ratio(), Err(Error::Singular(_))));
                }
                FieldKind::ConstOne => {
                    assert_relative_eq!(f.steklov_ratio().unwrap(), 0.0, epsilon = 1e-14);
                }
                _ => {
                    let want = f
                        .jacobi_steklov_eigenvalue()
                        .or_else(|| f.laplace_steklov_eigenvalue())
                        .unwrap();
                    assert_relative_eq!(f.steklov_ratio().unwrap(), want, max_relative = 1e-12);
                }
            }
        }
        let p = params();
        let vz = field(FieldKind::TranslationZ);
        assert_relative_eq!(
            vz.jacobi_steklov_eigenvalue().unwrap(),
            1.0 / p.sinh_t.powi(2),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            vz.jacobi_steklov_eigenvalue().unwrap(),
            0.4392288398906453,
            max_relative = 1e-12
        );
    }

    #[test]
    fn profile_derivatives_match_finite_differences() {
        let p = params();
        let d = 1e-6;
        for kind in FieldKind::ALL {
            let f = field(kind);
            for &s in &[-0.9, -0.2, 0.4, p.t - 0.05] {
                let fd = (f.profile(s + d) - f.profile(s - d)) / (2.0 * d);
                assert_relative_eq!(f.profile_deriv(s), fd, max_relative = 1e-8, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn jacobi_fields_have_small_stability_residual() {
        // Mode-1 fields need matching θ resolution: the centered θ stencil
        // carries its own O(h_θ²) error.
        for kind in [
            FieldKind::TranslationX,
            FieldKind::TranslationZ,
            FieldKind::RotationXz,
            FieldKind::XiDilation,
        ] {
            let f = field(kind);
            let r = f.jacobi_residual(256, 512);
            assert!(r <= 1e-3, "{}: residual {r}", kind.name());
        }
        // Second-order decay for the z-translation.
        let vz = field(FieldKind::TranslationZ);
        let r1 = vz.jacobi_residual(256, 8);
        let r2 = vz.jacobi_residual(512, 8);
        let ratio = r1 / r2;
        assert!((3.0..=5.0).contains(&ratio), "order ratio {ratio}");
    }

    #[test]
    fn constant_is_not_a_jacobi_field() {
        let one = field(FieldKind::ConstOne);
        assert!(!one.is_jacobi_field());
        // J·1 = −|A|², whose sup is 2/a² (attained at the waist s = 0).
        let r = one.jacobi_residual(257, 4);
        assert_relative_eq!(r, 9.431892742237432, max_relative = 1e-9);
    }

    #[test]
    fn coordinates_are_harmonic() {
        for kind in [
            FieldKind::ConstOne,
            FieldKind::CoordX,
            FieldKind::CoordY,
            FieldKind::CoordZ,
        ] {
            let f = field(kind);
            assert!(f.is_harmonic());
            let r = f.laplace_residual(256, 512);
            assert!(r <= 1e-3, "{}: laplace residual {r}", kind.name());
        }
        // Translations are not harmonic; Δ vx = −|A|² vx.
        let vx = field(FieldKind::TranslationX);
        let r = vx.laplace_residual(257, 16);
        assert!(r > 1.0, "expected O(1) laplace residual, got {r}");
    }

    #[test]
    fn metadata_consistency() {
        let p = params();
        for kind in FieldKind::ALL {
            let f = field(kind);
            // evaluate = profile × harmonic
            let (s, th) = (0.37, 1.1);
            let n = f.mode() as f64;
            let ang = match f.harmonic() {
                Harmonic::Cos => (n * th).cos(),
                Harmonic::Sin => (n * th).sin(),
            };
            assert_relative_eq!(f.evaluate(s, th), f.profile(s) * ang, max_relative = 1e-15);
            // parity
            let (fp, fm) = (f.profile(0.83), f.profile(-0.83));
            match f.parity() {
                Parity::Even => assert_relative_eq!(fp, fm, max_relative = 1e-14),
                Parity::Odd => assert_relative_eq!(fp, -fm, max_relative = 1e-14),
                Parity::None => {}
            }
            let (bp, bm) = f.boundary_values();
            assert_relative_eq!(bp, f.profile(p.t), max_relative = 1e-15);
            assert_relative_eq!(bm, f.profile(-p.t), max_relative = 1e-15);
        }
    }
}
