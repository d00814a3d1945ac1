//! Semi-Riemannian metrics on a Lie algebra: signatures, indefinite
//! Gram-Schmidt frames with causalities, Cartan involutions and the
//! Cartan-Killing metric, and its sign-flipped variants.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;

/// A symmetric bilinear form on the algebra. Symmetry is exact: the matrix
/// is mirrored from its upper triangle at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    matrix: DMatrix<f64>,
}

/// Tolerance for accepting a slightly asymmetric input matrix before it is
/// mirrored into an exactly symmetric one.
const ASYMMETRY_SLACK: f64 = 1e-12;

impl MetricTensor {
    /// Accept a square, (numerically) symmetric matrix and store an exactly
    /// symmetric copy.
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let scale = m.amax().max(1.0);
        let deviation = (&m - m.transpose()).amax();
        if deviation > ASYMMETRY_SLACK * scale {
            return Err(Error::NotSymmetric { deviation });
        }
        Ok(Self::mirror_upper(m))
    }

    /// Mirror the upper triangle (including diagonal) into the lower one.
    fn mirror_upper(mut m: DMatrix<f64>) -> Self {
        let n = m.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                m[(j, i)] = m[(i, j)];
            }
        }
        Self { matrix: m }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self {
            matrix: DMatrix::from_diagonal(&DVector::from_row_slice(d)),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Evaluate `g(u, v)`.
    pub fn eval(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (u.transpose() * &self.matrix * v)[(0, 0)]
    }

    /// Gram matrix of the given vectors: the restriction of the metric to
    /// their span, expressed in that basis. Degeneracy of the result is not
    /// an error here; it surfaces in later operations.
    pub fn restrict(&self, basis: &[DVector<f64>]) -> Result<MetricTensor> {
        for v in basis {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: v.len(),
                });
            }
        }
        let m = basis.len();
        let mut gram = DMatrix::zeros(m, m);
        for a in 0..m {
            for b in a..m {
                gram[(a, b)] = self.eval(&basis[a], &basis[b]);
            }
        }
        Ok(Self::mirror_upper(gram))
    }

    /// Signature `(p, q)`: counts of positive and negative eigenvalues.
    /// An eigenvalue within `tol * max(1, max|eigenvalue|)` of zero makes
    /// the metric degenerate.
    pub fn signature(&self, tol: f64) -> Result<(usize, usize)> {
        let eig = self.matrix.clone().symmetric_eigenvalues();
        let scale = eig.iter().fold(1.0_f64, |m, e| m.max(e.abs()));
        let threshold = tol * scale;
        let mut p = 0;
        let mut q = 0;
        for &e in eig.iter() {
            if e.abs() <= threshold {
                return Err(Error::DegenerateMetric {
                    eigenvalue: e,
                    threshold,
                });
            }
            if e > 0.0 {
                p += 1;
            } else {
                q += 1;
            }
        }
        Ok((p, q))
    }
}

/// A basis that is orthonormal for a (possibly indefinite) metric:
/// `P^T G P = diag(eps)` with causalities `eps_i = sign g(u_i, u_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame {
    /// Columns are the frame vectors in the original coordinates.
    pub change: DMatrix<f64>,
    /// One sign per frame vector.
    pub causalities: Vec<f64>,
}

impl OrthonormalFrame {
    /// Largest entry of `P^T G P - diag(eps)`; the frame invariant.
    pub fn deviation(&self, g: &MetricTensor) -> f64 {
        let m = self.change.ncols();
        let gram = self.change.transpose() * g.matrix() * &self.change;
        let mut dev: f64 = 0.0;
        for a in 0..m {
            for b in 0..m {
                let target = if a == b { self.causalities[a] } else { 0.0 };
                dev = dev.max((gram[(a, b)] - target).abs());
            }
        }
        dev
    }
}

/// Indefinite Gram-Schmidt with greedy pivoting on the seed columns: at each
/// step every remaining candidate is projected off the accepted vectors and
/// the one with the largest normalized self-product `|g(v,v)| / |v|^2` is
/// taken. The span of the seed set is preserved; the pivot order is not.
///
/// Fails with a degenerate-restriction error when no candidate clears
/// `tol * max(1, max|g|)`, which happens exactly when the metric restricted
/// to the remaining span is (numerically) degenerate.
pub fn orthonormal_frame(
    g: &MetricTensor,
    seed_basis: &DMatrix<f64>,
    tol: f64,
) -> Result<OrthonormalFrame> {
    let n = g.dim();
    if seed_basis.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: seed_basis.nrows(),
        });
    }
    let m = seed_basis.ncols();
    let threshold = tol * g.matrix().amax().max(1.0);

    let mut remaining: Vec<DVector<f64>> = (0..m).map(|j| seed_basis.column(j).into()).collect();
    let mut accepted: Vec<DVector<f64>> = Vec::with_capacity(m);
    let mut causalities: Vec<f64> = Vec::with_capacity(m);

    while accepted.len() < m {
        // Project every remaining candidate off the last accepted vector.
        if let (Some(u), Some(&eps)) = (accepted.last(), causalities.last()) {
            for v in remaining.iter_mut() {
                let coeff = eps * g.eval(v, u);
                *v -= u * coeff;
            }
        }
        // Greedy pivot on the normalized self-product.
        let mut best = 0usize;
        let mut best_score = f64::NEG_INFINITY;
        let mut best_q = 0.0;
        for (idx, v) in remaining.iter().enumerate() {
            let nn = v.norm_squared();
            if nn == 0.0 {
                continue;
            }
            let q = g.eval(v, v) / nn;
            if q.abs() > best_score {
                best_score = q.abs();
                best_q = q;
                best = idx;
            }
        }
        if !(best_score > threshold) {
            return Err(Error::DegenerateRestriction {
                best: best_score.max(0.0),
                threshold,
            });
        }
        let v = remaining.remove(best);
        let unit = &v / (v.norm() * best_q.abs().sqrt());
        causalities.push(best_q.signum());
        accepted.push(unit);
    }

    Ok(OrthonormalFrame {
        change: DMatrix::from_columns(&accepted),
        causalities,
    })
}

/// An involutive algebra automorphism `theta` whose associated form
/// `(u, v) -> -B(u, theta v)` is positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanInvolution {
    matrix: DMatrix<f64>,
}

impl CartanInvolution {
    pub fn new(matrix: DMatrix<f64>) -> Self {
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Check the defining invariants against the given algebra:
    /// `theta^2 = id` and `theta [u, v] = [theta u, theta v]` on basis pairs.
    /// Positive definiteness of `-B(., theta .)` is checked where the
    /// Cartan-Killing metric is built.
    pub fn validate(&self, l: &LieAlgebra, tol: f64) -> Result<()> {
        let n = l.dim();
        if self.matrix.nrows() != n || self.matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.matrix.nrows(),
            });
        }
        let scale = self.matrix.amax().max(1.0);
        let sq_dev = (&self.matrix * &self.matrix - DMatrix::identity(n, n)).amax();
        if sq_dev > tol * scale * scale {
            return Err(Error::InvalidInvolution {
                reason: format!("theta^2 deviates from the identity by {sq_dev:.3e}"),
            });
        }
        let bracket_scale = l.scale() * scale * scale;
        for i in 0..n {
            for j in (i + 1)..n {
                let ti: DVector<f64> = self.matrix.column(i).into();
                let tj: DVector<f64> = self.matrix.column(j).into();
                let lhs = &self.matrix * l.bracket_basis(i, j);
                let rhs = l.bracket(&ti, &tj)?;
                let dev = (lhs - rhs).amax();
                if dev > tol * bracket_scale {
                    return Err(Error::InvalidInvolution {
                        reason: format!(
                            "theta is not an automorphism: deviation {dev:.3e} at pair ({i}, {j})"
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The Cartan-Killing metric `g(u, v) = -B(u, theta v)`, positive definite
/// for a genuine Cartan involution on a semisimple algebra.
pub fn cartan_killing_metric(
    l: &LieAlgebra,
    theta: &CartanInvolution,
    tol: f64,
) -> Result<MetricTensor> {
    theta.validate(l, tol)?;
    let b = l.killing_form();
    let m = -(b.matrix() * theta.matrix());
    let metric = MetricTensor::from_matrix(m).map_err(|e| match e {
        Error::NotSymmetric { deviation } => Error::InvalidInvolution {
            reason: format!("-B(., theta .) is not symmetric (deviation {deviation:.3e})"),
        },
        other => other,
    })?;
    let eig = metric.matrix().clone().symmetric_eigenvalues();
    let max = eig.iter().fold(1.0_f64, |m, e| m.max(e.abs()));
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > tol * max) {
        return Err(Error::InvalidInvolution {
            reason: format!("-B(., theta .) is not positive definite (min eigenvalue {min:.3e})"),
        });
    }
    Ok(metric)
}

/// Flip the metric along a frame: the result has matrix `diag(eps)` in the
/// given frame, i.e. `g'(u_i, u_j) = eps_i delta_ij`. Requires `g` positive
/// definite with the frame orthonormal for it.
pub fn g_epsilon(
    g: &MetricTensor,
    frame: &OrthonormalFrame,
    eps: &[f64],
    tol: f64,
) -> Result<MetricTensor> {
    let n = g.dim();
    if frame.change.nrows() != n || frame.change.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: frame.change.ncols(),
        });
    }
    if eps.len() != n {
        return Err(Error::CausalityLength {
            expected: n,
            got: eps.len(),
        });
    }
    if eps.iter().any(|&e| e != 1.0 && e != -1.0) {
        return Err(Error::InvalidCausality);
    }
    // The frame must be orthonormal for the positive-definite g.
    let gram = frame.change.transpose() * g.matrix() * &frame.change;
    let deviation = (&gram - DMatrix::identity(n, n)).amax();
    if deviation > tol * g.matrix().amax().max(1.0) {
        return Err(Error::FrameNotOrthonormal { deviation });
    }
    let p_inv = frame.change.clone().try_inverse().ok_or(Error::SingularMap {
        sigma_min: 0.0,
        sigma_max: frame.change.amax(),
    })?;
    let diag = DMatrix::from_diagonal(&DVector::from_row_slice(eps));
    MetricTensor::from_matrix(p_inv.transpose() * diag * p_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn signature_of_simple_diagonals() {
        assert_eq!(MetricTensor::identity(3).signature(1e-9).unwrap(), (3, 0));
        assert_eq!(
            MetricTensor::diagonal(&[-8.0, 8.0, 8.0]).signature(1e-9).unwrap(),
            (2, 1)
        );
        assert_eq!(
            MetricTensor::diagonal(&[-1.0, 1.0, 1.0, 1.0])
                .signature(1e-9)
                .unwrap(),
            (3, 1)
        );
    }

    #[test]
    fn signature_rejects_degenerate_metric() {
        let g = MetricTensor::diagonal(&[1.0, 0.0]);
        assert!(matches!(
            g.signature(1e-9),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn gram_schmidt_diagonal_rescale() {
        let g = MetricTensor::diagonal(&[4.0, 1.0]);
        let f = orthonormal_frame(&g, &DMatrix::identity(2, 2), 1e-9).unwrap();
        assert_eq!(f.causalities, vec![1.0, 1.0]);
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 1.0]));
        assert!((&f.change - expected).amax() < 1e-14);
    }

    #[test]
    fn gram_schmidt_on_negative_killing_of_su2() {
        // -B = 8 I, so every frame vector is scaled by 1 / (2 sqrt 2).
        let (l, _) = catalog::su2();
        let g = MetricTensor::from_matrix(-l.killing_form().matrix().clone()).unwrap();
        let f = orthonormal_frame(&g, &DMatrix::identity(3, 3), 1e-9).unwrap();
        assert_eq!(f.causalities, vec![1.0, 1.0, 1.0]);
        let expected = DMatrix::identity(3, 3) / (2.0 * 2.0_f64.sqrt());
        assert!((&f.change - expected).amax() < 1e-14);
        assert!(f.deviation(&g) < 1e-14);
    }

    #[test]
    fn gram_schmidt_on_indefinite_killing_of_sl2r() {
        let (l, _, _) = catalog::sl2r();
        let g = MetricTensor::from_matrix(l.killing_form().matrix().clone()).unwrap();
        let f = orthonormal_frame(&g, &DMatrix::identity(3, 3), 1e-9).unwrap();
        assert_eq!(f.causalities, vec![-1.0, 1.0, 1.0]);
        let expected = DMatrix::identity(3, 3) / (2.0 * 2.0_f64.sqrt());
        assert!((&f.change - expected).amax() < 1e-14);
        assert!(f.deviation(&g) < 1e-14);
    }

    #[test]
    fn gram_schmidt_fails_on_zero_form() {
        let g = MetricTensor::from_matrix(DMatrix::zeros(3, 3)).unwrap();
        assert!(matches!(
            orthonormal_frame(&g, &DMatrix::identity(3, 3), 1e-9),
            Err(Error::DegenerateRestriction { .. })
        ));
    }

    #[test]
    fn restriction_is_the_gram_matrix() {
        let g = MetricTensor::identity(4);
        let basis = vec![g_basis(4, 0), g_basis(4, 1)];
        let r = g.restrict(&basis).unwrap();
        assert_eq!(r.matrix(), &DMatrix::identity(2, 2));

        let g = MetricTensor::diagonal(&[8.0, 8.0, 8.0, 1.0, 1.0]);
        let basis = vec![g_basis(5, 0), g_basis(5, 1), g_basis(5, 2)];
        let r = g.restrict(&basis).unwrap();
        assert_eq!(r.matrix(), &(DMatrix::identity(3, 3) * 8.0));
    }

    #[test]
    fn restriction_to_null_directions() {
        let g = MetricTensor::diagonal(&[1.0, -1.0]);
        let u = DVector::from_vec(vec![1.0, 1.0]);
        let v = DVector::from_vec(vec![1.0, -1.0]);
        // Both vectors are null but not orthogonal: the Gram matrix is
        // antidiag(2, 2).
        let r = g.restrict(&[u.clone(), v]).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, 2.0, 0.0]);
        assert_eq!(r.matrix(), &expected);
        // A single null direction restricts to the zero form, which is
        // degenerate; the restriction itself does not error.
        let r = g.restrict(&[u]).unwrap();
        assert_eq!(r.matrix().amax(), 0.0);
        assert!(matches!(
            r.signature(1e-9),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn cartan_killing_metric_on_su2_and_sl2r() {
        let (su, _) = catalog::su2();
        let m = cartan_killing_metric(&su, &CartanInvolution::identity(3), 1e-9).unwrap();
        assert!((m.matrix() - DMatrix::identity(3, 3) * 8.0).amax() < 1e-12);

        let (sl, _, theta) = catalog::sl2r();
        let m = cartan_killing_metric(&sl, &theta, 1e-9).unwrap();
        assert!((m.matrix() - DMatrix::identity(3, 3) * 8.0).amax() < 1e-12);
    }

    #[test]
    fn cartan_killing_metric_rejects_wrong_involution() {
        // The identity is an involutive automorphism on sl(2,R) but -B is
        // indefinite there, so the associated form fails definiteness.
        let (sl, _, _) = catalog::sl2r();
        assert!(matches!(
            cartan_killing_metric(&sl, &CartanInvolution::identity(3), 1e-9),
            Err(Error::InvalidInvolution { .. })
        ));
    }

    #[test]
    fn g_epsilon_flips_the_chosen_directions() {
        let g = MetricTensor::identity(3);
        let frame = orthonormal_frame(&g, &DMatrix::identity(3, 3), 1e-9).unwrap();
        let eps = [1.0, -1.0, 1.0];
        let ge = g_epsilon(&g, &frame, &eps, 1e-9).unwrap();
        assert_eq!(ge.matrix(), &DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 1.0])));
        assert_eq!(ge.signature(1e-9).unwrap(), (2, 1));

        // All +1 reproduces the metric itself.
        let same = g_epsilon(&g, &frame, &[1.0, 1.0, 1.0], 1e-9).unwrap();
        assert!((same.matrix() - g.matrix()).amax() < 1e-14);
    }

    #[test]
    fn g_epsilon_rejects_bad_causalities() {
        let g = MetricTensor::identity(2);
        let frame = orthonormal_frame(&g, &DMatrix::identity(2, 2), 1e-9).unwrap();
        assert!(matches!(
            g_epsilon(&g, &frame, &[1.0, 0.5], 1e-9),
            Err(Error::InvalidCausality)
        ));
    }

    fn g_basis(n: usize, k: usize) -> DVector<f64> {
        let mut v = DVector::zeros(n);
        v[k] = 1.0;
        v
    }
}
