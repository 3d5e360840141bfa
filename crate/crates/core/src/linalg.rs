//! Symmetric tridiagonal pencils, inertia counts, bisection eigensolvers,
//! Schur reductions to the boundary, and small dense helpers.
//!
//! Everything the spectral engines need reduces to the generalized problem
//! A x = λ B x with A symmetric tridiagonal and B diagonal. Eigenvalue
//! *counts* come from the inertia of A − λB (Sylvester's law): the number of
//! pencil eigenvalues below λ equals the number of negative pivots of the
//! LDLᵀ factorization of A − λB. Eigenvalues are then located by bisection on
//! the count, and eigenvectors recovered by inverse iteration. Boundary
//! (Steklov-type) problems, where B is supported on the two endpoint nodes,
//! are reduced exactly to a 1×1 or 2×2 dense problem through the Schur
//! complement of the interior block.

use crate::error::{Error, Result};
use crate::real::{c, Real};

/// Symmetric tridiagonal matrix: `diag` of length n, `off` of length n − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMatrix<T: Real> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> TriMatrix<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "tridiagonal shape: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// max |diag| + max |off|; the pivot/zero tolerances are relative to this.
    pub fn scale(&self) -> T {
        let md = self.diag.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        let mo = self.off.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        md + mo
    }

    /// Maximum absolute row sum (operator ∞-norm).
    pub fn inf_norm(&self) -> T {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut r = self.diag[i].abs();
                if i > 0 {
                    r += self.off[i - 1].abs();
                }
                if i + 1 < n {
                    r += self.off[i].abs();
                }
                r
            })
            .fold(T::zero(), |m, x| m.max(x))
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.n();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// xᵀ M y.
    pub fn quad_form(&self, x: &[T], y: &[T]) -> T {
        self.matvec(y).iter().zip(x).map(|(&my, &xi)| xi * my).sum()
    }
}

/// Signature of a symmetric matrix: counts of negative, (numerically) zero
/// and positive eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
}

fn inertia_core<T: Real>(diag: &[T], off: &[T], zero_tol: T, scale: T) -> Inertia {
    let n = diag.len();
    let mut out = Inertia {
        n_neg: 0,
        n_zero: 0,
        n_pos: 0,
    };
    if scale <= T::zero() {
        out.n_zero = n;
        return out;
    }
    let tol = zero_tol * scale;
    // Couplings count as negligible when c² ≤ zero_tol·scale²; with the pivot
    // below tol this guarantees det = d·m − c² < 0 in the 2×2 branch, so that
    // block always contributes one negative and one positive eigenvalue.
    let coupling_floor = zero_tol * scale * scale;
    let mut i = 0usize;
    let mut d_cur = diag[0];
    while i < n {
        let d = d_cur;
        if d.abs() > tol {
            if d > T::zero() {
                out.n_pos += 1;
            } else {
                out.n_neg += 1;
            }
            if i + 1 < n {
                d_cur = diag[i + 1] - off[i] * off[i] / d;
            }
            i += 1;
        } else {
            let cpl = if i + 1 < n { off[i] } else { T::zero() };
            if cpl * cpl <= coupling_floor {
                // Tiny pivot with negligible coupling: a zero eigenvalue.
                out.n_zero += 1;
                if i + 1 < n {
                    d_cur = diag[i + 1];
                }
                i += 1;
            } else {
                // 2×2 pivot [[d, c], [c, m]] with det < 0: indefinite block.
                out.n_neg += 1;
                out.n_pos += 1;
                let m_next = diag[i + 1];
                let det = d * m_next - cpl * cpl;
                if i + 2 < n {
                    d_cur = diag[i + 2] - off[i + 1] * off[i + 1] * d / det;
                }
                i += 2;
            }
        }
    }
    out
}

/// Inertia of a symmetric tridiagonal matrix by LDLᵀ pivot signs, with a 2×2
/// pivot fallback when a leading pivot is numerically zero but still coupled.
///
/// A pivot is "zero" when |d| ≤ `zero_tol`·scale with scale =
/// max|diag| + max|off|.
pub fn ldlt_inertia<T: Real>(m: &TriMatrix<T>, zero_tol: T) -> Inertia {
    inertia_core(&m.diag, &m.off, zero_tol, m.scale())
}

/// Kind of the diagonal weight B in a pencil A x = λ B x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BKind {
    /// Strictly positive diagonal (lumped volume mass): a regular
    /// generalized eigenproblem with n real eigenvalues.
    PosDef,
    /// Nonzero only on boundary nodes (boundary mass): a Steklov-type
    /// eigenproblem with as many finite eigenvalues as boundary nodes.
    BoundarySemidef,
}

/// Pencil A x = λ B x with A symmetric tridiagonal and B diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TriPencil<T: Real> {
    pub a: TriMatrix<T>,
    pub b: Vec<T>,
    pub kind: BKind,
    zero_tol: T,
}

impl<T: Real> TriPencil<T> {
    pub fn new(a: TriMatrix<T>, b: Vec<T>, kind: BKind) -> Result<Self> {
        if b.len() != a.n() {
            return Err(Error::Domain(format!(
                "weight length {} does not match matrix order {}",
                b.len(),
                a.n()
            )));
        }
        match kind {
            BKind::PosDef => {
                if b.iter().any(|&w| w <= T::zero()) {
                    return Err(Error::Domain(
                        "positive-definite weight has a nonpositive entry".into(),
                    ));
                }
            }
            BKind::BoundarySemidef => {
                if b.iter().any(|&w| w < T::zero()) || b.iter().all(|&w| w == T::zero()) {
                    return Err(Error::Domain(
                        "boundary weight must be nonnegative and not identically zero".into(),
                    ));
                }
            }
        }
        Ok(Self {
            a,
            b,
            kind,
            zero_tol: c(1e-9),
        })
    }

    /// Overrides the relative zero-pivot tolerance used by inertia counts.
    pub fn with_zero_tol(mut self, zero_tol: T) -> Self {
        self.zero_tol = zero_tol;
        self
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    fn shifted_diag(&self, lambda: T) -> Vec<T> {
        self.a
            .diag
            .iter()
            .zip(&self.b)
            .map(|(&d, &w)| d - lambda * w)
            .collect()
    }

    /// Number of pencil eigenvalues strictly below `lambda` (for a
    /// positive-definite weight; in general, the number of negative pivots
    /// of A − λB), by the Sturm pivot count. Pivots at the roundoff floor
    /// are replaced by −pivmin (so a shift sitting exactly on an eigenvalue
    /// counts it as below), which perturbs the counted spectrum by at most
    /// O(ε·scale) — far below every threshold this crate counts against.
    pub fn count_below(&self, lambda: T) -> usize {
        let sd = self.shifted_diag(lambda);
        let scale = {
            let md = sd.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            let mo = self.a.off.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            (md + mo).max(T::min_positive_value())
        };
        let pivmin = T::eps() * scale * c(1e-2);
        let mut cnt = 0usize;
        let mut d_prev = T::one();
        for i in 0..self.n() {
            let od = if i > 0 { self.a.off[i - 1] } else { T::zero() };
            let mut d = sd[i] - od * od / d_prev;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < T::zero() {
                cnt += 1;
            }
            d_prev = d;
        }
        cnt
    }

    /// Like [`TriPencil::count_below`], but errors with
    /// [`Error::ShiftSingular`] when the shifted matrix has a numerically
    /// zero eigenvalue at the relative tolerance set by
    /// [`TriPencil::with_zero_tol`] — i.e. when the count at this shift is
    /// ambiguous at that tolerance.
    pub fn count_below_strict(&self, lambda: T) -> Result<usize> {
        let sd = self.shifted_diag(lambda);
        let scale = {
            let md = sd.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            let mo = self.a.off.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            md + mo
        };
        let inr = inertia_core(&sd, &self.a.off, self.zero_tol, scale);
        if inr.n_zero > 0 {
            return Err(Error::ShiftSingular(format!(
                "{} zero pivot(s) at shift {lambda:e}",
                inr.n_zero
            )));
        }
        Ok(inr.n_neg)
    }

    /// A bound R with all pencil eigenvalues in (−R, R): the ∞-norm of A
    /// divided by the smallest weight (valid since ‖B^{-1/2}AB^{-1/2}‖₂ ≤
    /// ‖A‖_∞ / min B), verified against the count and doubled if roundoff
    /// disagrees.
    fn eig_bound(&self) -> Result<T> {
        let n = self.n();
        let bmin = self.b.iter().fold(T::infinity(), |m, &x| m.min(x));
        let mut r = self.a.inf_norm() / bmin + T::one();
        for _ in 0..12 {
            if self.count_below(-r) == 0 && self.count_below(r) == n {
                return Ok(r);
            }
            r *= c(2.0);
        }
        Err(Error::NoConvergence(
            "could not bracket the pencil spectrum".into(),
        ))
    }

    /// The `k` smallest pencil eigenvalues (ascending) by bisection on the
    /// inertia count, each bracketed to width `tol`·max(1, |λ|).
    pub fn smallest_eigs(&self, k: usize, tol: T) -> Result<Vec<T>> {
        if k == 0 {
            return Ok(Vec::new());
        }
        if k > self.n() {
            return Err(Error::Domain(format!(
                "asked for {k} eigenvalues of an order-{} pencil",
                self.n()
            )));
        }
        if !(tol > T::zero()) {
            return Err(Error::Domain("bisection tolerance must be positive".into()));
        }
        if self.kind != BKind::PosDef {
            return Err(Error::Domain(
                "eigenvalue bisection needs a positive-definite weight".into(),
            ));
        }
        let r = self.eig_bound()?;
        let mut out = Vec::with_capacity(k);
        let mut lo_start = -r;
        for j in 1..=k {
            // λ_j = inf { λ : count_below(λ) ≥ j }; counts are monotone, so
            // the previous eigenvalue is a valid lower bracket for the next.
            let mut lo = lo_start;
            let mut hi = r;
            while hi - lo > tol * T::one().max(lo.abs().max(hi.abs())) {
                let mid = (lo + hi) * c(0.5);
                if !(mid > lo && mid < hi) {
                    break;
                }
                if self.count_below(mid) >= j {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let lam = (lo + hi) * c(0.5);
            out.push(lam);
            lo_start = lo;
        }
        Ok(out)
    }

    /// B-normalized eigenvector for an eigenvalue estimate `lambda`
    /// (positive-definite weight only), by inverse iteration on A − λB with
    /// partial-pivot tridiagonal solves. The sign is fixed so the entry of
    /// largest magnitude is positive.
    pub fn eigenvector(&self, lambda: T) -> Result<Vec<T>> {
        if self.kind != BKind::PosDef {
            return Err(Error::Domain(
                "inverse iteration needs a positive-definite weight".into(),
            ));
        }
        let n = self.n();
        let bnorm = |x: &[T]| -> T {
            x.iter()
                .zip(&self.b)
                .map(|(&v, &w)| w * v * v)
                .sum::<T>()
                .sqrt()
        };
        let mut shift = lambda;
        let mut nudge = (T::one() + lambda.abs()) * c(1e-12);
        for _attempt in 0..6 {
            let sd = self.shifted_diag(shift);
            let lu = TriLu::factor(&sd, &self.a.off);
            let mut x: Vec<T> = (0..n)
                .map(|i| T::one() + c::<T>(1e-3) * T::from_usize(i % 7).unwrap())
                .collect();
            let nx = bnorm(&x);
            for v in &mut x {
                *v /= nx;
            }
            let mut ok = false;
            for _ in 0..8 {
                let rhs: Vec<T> = x.iter().zip(&self.b).map(|(&v, &w)| w * v).collect();
                let mut y = lu.solve(&rhs);
                let ny = bnorm(&y);
                if !ny.is_finite() || ny == T::zero() {
                    break;
                }
                for v in &mut y {
                    *v /= ny;
                }
                x = y;
                // Relative eigen-residual against the pencil scale.
                let ax = self.a.matvec(&x);
                let res = ax
                    .iter()
                    .zip(&x)
                    .zip(&self.b)
                    .map(|((&a, &v), &w)| (a - lambda * w * v).abs())
                    .fold(T::zero(), |m, t| m.max(t));
                let bmax = self.b.iter().fold(T::zero(), |m, &w| m.max(w));
                let sc = self.a.inf_norm() + lambda.abs() * bmax;
                let xmax = x.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
                if res <= T::eps().sqrt() * c::<T>(100.0) * sc * xmax {
                    ok = true;
                    break;
                }
            }
            if ok {
                let mut imax = 0usize;
                for i in 1..n {
                    if x[i].abs() > x[imax].abs() {
                        imax = i;
                    }
                }
                if x[imax] < T::zero() {
                    for v in &mut x {
                        *v = -*v;
                    }
                }
                return Ok(x);
            }
            shift += nudge;
            nudge *= c(8.0);
        }
        Err(Error::NoConvergence(format!(
            "inverse iteration stalled at eigenvalue estimate {lambda:e}"
        )))
    }
}

/// LU factorization of a symmetric tridiagonal matrix with partial pivoting
/// (row interchanges create a second superdiagonal, as in the classic
/// general-tridiagonal factorization).
pub struct TriLu<T: Real> {
    dl: Vec<T>,
    d: Vec<T>,
    du: Vec<T>,
    du2: Vec<T>,
    swapped: Vec<bool>,
    min_pivot: T,
    scale: T,
}

impl<T: Real> TriLu<T> {
    /// Factors the matrix with diagonal `diag` and symmetric off-diagonal
    /// `off`. Never fails: exact-zero pivots are replaced by ε·scale so the
    /// factorization can back a nearly-singular inverse-iteration solve;
    /// check [`TriLu::min_pivot_rel`] when genuine singularity matters.
    pub fn factor(diag: &[T], off: &[T]) -> Self {
        let n = diag.len();
        assert!(n >= 1 && off.len() + 1 == n);
        let mut d = diag.to_vec();
        let mut du = off.to_vec();
        let mut dl = off.to_vec();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let scale = {
            let m = TriMatrix {
                diag: diag.to_vec(),
                off: off.to_vec(),
            };
            m.scale().max(T::min_positive_value())
        };
        let tiny = T::eps() * scale;
        let mut min_pivot = T::infinity();
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                // No interchange.
                if d[i] == T::zero() {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
                if i + 2 < n {
                    du2[i] = T::zero();
                }
            } else {
                // Interchange rows i and i+1.
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
            min_pivot = min_pivot.min(d[i].abs());
        }
        if d[n - 1] == T::zero() {
            d[n - 1] = tiny;
        }
        min_pivot = min_pivot.min(d[n - 1].abs());
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
            min_pivot,
            scale,
        }
    }

    /// Smallest pivot magnitude relative to the matrix scale; values at the
    /// roundoff floor indicate a numerically singular matrix.
    pub fn min_pivot_rel(&self) -> T {
        self.min_pivot / self.scale
    }

    pub fn solve(&self, rhs: &[T]) -> Vec<T> {
        let n = self.d.len();
        assert_eq!(rhs.len(), n);
        let mut b = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] = b[i + 1] - self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
        b
    }
}

/// Exact reduction of a tridiagonal operator to its boundary nodes: the
/// Schur complement S = A_BB − A_BI A_II^{-1} A_IB.
///
/// `boundary` must name grid endpoints (index 0 and/or n−1) so the interior
/// block stays contiguous tridiagonal. The interior solves are retained to
/// reconstruct full-length eigenfields from boundary values.
#[derive(Debug, Clone)]
pub struct SchurReduction<T: Real> {
    /// Dense symmetric reduced matrix, one row/column per boundary node.
    pub matrix: Vec<Vec<T>>,
    /// Boundary node indices, ascending.
    pub boundary: Vec<usize>,
    /// Full matrix order.
    pub n: usize,
    /// y_k = A_II^{-1} A_IB e_k, one column per boundary node.
    cols: Vec<Vec<T>>,
    interior_start: usize,
}

pub fn steklov_reduce<T: Real>(a: &TriMatrix<T>, boundary: &[usize]) -> Result<SchurReduction<T>> {
    let n = a.n();
    let mut bd: Vec<usize> = boundary.to_vec();
    bd.sort_unstable();
    bd.dedup();
    if bd.is_empty() || bd.len() != boundary.len() {
        return Err(Error::Domain("boundary indices empty or repeated".into()));
    }
    if bd.iter().any(|&i| i != 0 && i != n - 1) {
        return Err(Error::Domain(
            "boundary reduction supports endpoint nodes only".into(),
        ));
    }
    let interior_start = if bd.contains(&0) { 1 } else { 0 };
    let interior_end = if bd.contains(&(n - 1)) { n - 1 } else { n };
    if interior_end <= interior_start {
        return Err(Error::Domain("no interior nodes to eliminate".into()));
    }
    let idiag = &a.diag[interior_start..interior_end];
    let ioff = &a.off[interior_start..interior_end - 1];
    let lu = TriLu::factor(idiag, ioff);
    if lu.min_pivot_rel() <= c(1e-13) {
        return Err(Error::InteriorSingular(format!(
            "interior pivot ratio {:e}",
            lu.min_pivot_rel()
        )));
    }
    let m = idiag.len();
    // Each boundary node couples to exactly one interior node through one
    // off-diagonal entry of A.
    let mut cols = Vec::with_capacity(bd.len());
    let mut couple = Vec::with_capacity(bd.len());
    for &k in &bd {
        let mut col = vec![T::zero(); m];
        if k == 0 {
            col[0] = a.off[0];
        } else {
            col[m - 1] = a.off[n - 2];
        }
        couple.push(col.clone());
        cols.push(lu.solve(&col));
    }
    let nb = bd.len();
    let mut s = vec![vec![T::zero(); nb]; nb];
    for p in 0..nb {
        for q in 0..nb {
            let abb = if p == q { a.diag[bd[p]] } else { T::zero() };
            let corr: T = couple[p]
                .iter()
                .zip(&cols[q])
                .map(|(&cp, &yq)| cp * yq)
                .sum();
            s[p][q] = abb - corr;
        }
    }
    // Symmetrize roundoff.
    if nb == 2 {
        let avg = (s[0][1] + s[1][0]) * c(0.5);
        s[0][1] = avg;
        s[1][0] = avg;
    }
    Ok(SchurReduction {
        matrix: s,
        boundary: bd,
        n,
        cols,
        interior_start,
    })
}

impl<T: Real> SchurReduction<T> {
    /// Full-length field whose boundary values are `coeffs` and whose
    /// interior is the harmonic (A-annihilated) extension
    /// x_I = −A_II^{-1} A_IB c.
    pub fn reconstruct(&self, coeffs: &[T]) -> Vec<T> {
        assert_eq!(coeffs.len(), self.boundary.len());
        let mut x = vec![T::zero(); self.n];
        let m = self.cols[0].len();
        for (j, &ck) in coeffs.iter().enumerate() {
            for i in 0..m {
                x[self.interior_start + i] -= ck * self.cols[j][i];
            }
        }
        for (j, &k) in self.boundary.iter().enumerate() {
            x[k] = coeffs[j];
        }
        x
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a small
/// dense symmetric matrix by the cyclic Jacobi rotation method.
pub fn jacobi_eigs<T: Real>(m: &[Vec<T>]) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = m.len();
    if n == 0 || n > 32 || m.iter().any(|row| row.len() != n) {
        return Err(Error::Domain(format!(
            "jacobi needs a small square matrix, got {n} rows"
        )));
    }
    // Work on the symmetrized copy.
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| (m[i][j] + m[j][i]) * c(0.5)).collect())
        .collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let scale = a
        .iter()
        .flatten()
        .fold(T::zero(), |mx, &x| mx.max(x.abs()))
        .max(T::min_positive_value());
    for _sweep in 0..64 {
        let mut offdiag = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                offdiag = offdiag.max(a[p][q].abs());
            }
        }
        if offdiag <= T::eps() * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() <= T::eps() * scale * c(1e-2) {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (c::<T>(2.0) * apq);
                let t = {
                    let s = if tau >= T::zero() {
                        T::one()
                    } else {
                        -T::one()
                    };
                    s / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = t * cs;
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[r][p];
                        let arq = a[r][q];
                        a[r][p] = cs * arp - sn * arq;
                        a[p][r] = a[r][p];
                        a[r][q] = sn * arp + cs * arq;
                        a[q][r] = a[r][q];
                    }
                }
                for r in 0..n {
                    let vrp = v[r][p];
                    let vrq = v[r][q];
                    v[r][p] = cs * vrp - sn * vrq;
                    v[r][q] = sn * vrp + cs * vrq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let eigs: Vec<T> = order.iter().map(|&i| a[i][i]).collect();
    let vecs: Vec<Vec<T>> = (0..n)
        .map(|r| order.iter().map(|&cidx| v[r][cidx]).collect())
        .collect();
    Ok((eigs, vecs))
}

/// Inertia of a small dense symmetric matrix: Jacobi eigenvalues thresholded
/// at `zero_tol`·‖M‖_∞.
pub fn dense_inertia<T: Real>(m: &[Vec<T>], zero_tol: T) -> Result<Inertia> {
    let (eigs, _) = jacobi_eigs(m)?;
    let n = m.len();
    let scale = (0..n)
        .map(|i| (0..n).map(|j| m[i][j].abs()).sum::<T>())
        .fold(T::zero(), |mx, x| mx.max(x))
        .max(T::min_positive_value());
    let thr = zero_tol * scale;
    let mut out = Inertia {
        n_neg: 0,
        n_zero: 0,
        n_pos: 0,
    };
    for lam in eigs {
        if lam < -thr {
            out.n_neg += 1;
        } else if lam > thr {
            out.n_pos += 1;
        } else {
            out.n_zero += 1;
        }
    }
    Ok(out)
}

/// Solves a small dense linear system by Gaussian elimination with partial
/// pivoting. Errors with [`Error::Singular`] on a numerically singular pivot.
pub fn dense_solve<T: Real>(a: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) || rhs.len() != n {
        return Err(Error::Domain("dense solve needs a square system".into()));
    }
    let mut m: Vec<Vec<T>> = a.to_vec();
    let mut b = rhs.to_vec();
    let scale = m
        .iter()
        .flatten()
        .fold(T::zero(), |mx, &x| mx.max(x.abs()))
        .max(T::min_positive_value());
    for k in 0..n {
        let mut piv = k;
        for r in (k + 1)..n {
            if m[r][k].abs() > m[piv][k].abs() {
                piv = r;
            }
        }
        if m[piv][k].abs() <= T::eps() * scale * T::from_usize(n).unwrap() {
            return Err(Error::Singular(format!(
                "pivot {:e} at column {k}",
                m[piv][k]
            )));
        }
        m.swap(k, piv);
        b.swap(k, piv);
        for r in (k + 1)..n {
            let f = m[r][k] / m[k][k];
            for cidx in k..n {
                let v = m[k][cidx];
                m[r][cidx] -= f * v;
            }
            let bk = b[k];
            b[r] -= f * bk;
        }
    }
    for k in (0..n).rev() {
        let mut s = b[k];
        for j in (k + 1)..n {
            s -= m[k][j] * b[j];
        }
        b[k] = s / m[k][k];
    }
    Ok(b)
}
