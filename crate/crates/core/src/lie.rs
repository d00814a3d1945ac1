//! Lie algebras given by structure constants: bracket evaluation, adjoint
//! maps, Killing form, semisimplicity, direct sums and base changes.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// One entry of a sparse bracket table: `[e_i, e_j]` contains `value * e_k`,
/// with `i < j`. The reflected entry for `(j, i)` is implied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, k: usize, value: f64) -> Self {
        Self { i, j, k, value }
    }
}

/// A finite-dimensional real Lie algebra encoded by its structure constants
/// `c^k_{ij}` in a fixed basis.
///
/// Antisymmetry in `(i, j)` is enforced structurally: constructors accept
/// only `i < j` entries and reflect them, so `c^k_{ij} = -c^k_{ji}` holds
/// exactly. The Jacobi identity is *not* enforced at construction; use
/// [`LieAlgebra::validate`] to measure its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    /// Dense tensor, index `(i * dim + j) * dim + k`.
    constants: Vec<f64>,
    basis_names: Option<Vec<String>>,
}

/// Killing form `B_ij = trace(ad_{e_i} . ad_{e_j})`, symmetric by
/// construction (each pair is computed once and mirrored).
#[derive(Debug, Clone, PartialEq)]
pub struct KillingForm {
    matrix: DMatrix<f64>,
}

impl KillingForm {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Evaluate `B(u, v)`.
    pub fn eval(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (u.transpose() * &self.matrix * v)[(0, 0)]
    }
}

/// Outcome of the Cartan-criterion test: semisimple iff the Killing form is
/// non-degenerate, decided on singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct SemisimplicityCheck {
    pub semisimple: bool,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub threshold: f64,
}

/// Result of checking the algebra invariants. Antisymmetry cannot fail by
/// construction; the report carries the worst Jacobi residual and where it
/// occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub jacobi_ok: bool,
    pub max_jacobi_residual: f64,
    /// `(i, j, k, l)` of the worst residual, if the dimension admits one.
    pub witness: Option<(usize, usize, usize, usize)>,
    pub scale: f64,
    pub tol: f64,
}

impl LieAlgebra {
    /// Build an algebra from `i < j` bracket entries; entries addressing the
    /// same `(i, j, k)` slot accumulate.
    pub fn new(dim: usize, entries: &[BracketEntry]) -> Result<Self> {
        let mut constants = vec![0.0; dim * dim * dim];
        for e in entries {
            if e.i >= e.j {
                return Err(Error::BracketIndexOrder { i: e.i, j: e.j });
            }
            for &idx in &[e.i, e.j, e.k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            constants[(e.i * dim + e.j) * dim + e.k] += e.value;
        }
        // Reflect to i > j.
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in 0..dim {
                    constants[(j * dim + i) * dim + k] = -constants[(i * dim + j) * dim + k];
                }
            }
        }
        Ok(Self {
            dim,
            constants,
            basis_names: None,
        })
    }

    /// Internal: build from a closure giving `c^k_{ij}` for `i < j` only;
    /// the lower triangle is reflected, the diagonal is zero.
    pub(crate) fn from_upper_fn<F: FnMut(usize, usize, usize) -> f64>(
        dim: usize,
        mut f: F,
    ) -> Self {
        let mut constants = vec![0.0; dim * dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in 0..dim {
                    let v = f(i, j, k);
                    constants[(i * dim + j) * dim + k] = v;
                    constants[(j * dim + i) * dim + k] = -v;
                }
            }
        }
        Self {
            dim,
            constants,
            basis_names: None,
        }
    }

    /// The abelian algebra of the given dimension (all brackets zero).
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            constants: vec![0.0; dim * dim * dim],
            basis_names: None,
        }
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: names.len(),
            });
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    /// Structure constant `c^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Sparse view of the upper-triangle entries (`i < j`, nonzero values).
    pub fn entries(&self) -> Vec<BracketEntry> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in 0..self.dim {
                    let v = self.constant(i, j, k);
                    if v != 0.0 {
                        out.push(BracketEntry::new(i, j, k, v));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_constant(&self) -> f64 {
        self.constants.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Scale used by bracket-magnitude comparisons: `max(1, max|c|)`.
    pub fn scale(&self) -> f64 {
        self.max_abs_constant().max(1.0)
    }

    /// Scale used by Jacobi residuals: `max(1, max|c|^2)`.
    pub fn jacobi_scale(&self) -> f64 {
        let m = self.max_abs_constant();
        (m * m).max(1.0)
    }

    fn check_dim(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The `k`-th basis vector.
    pub fn basis_vector(&self, k: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim);
        v[k] = 1.0;
        v
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> DVector<f64> {
        DVector::from_fn(self.dim, |k, _| self.constant(i, j, k))
    }

    /// `[u, v]^k = sum_{ij} u^i v^j c^k_{ij}`.
    pub fn bracket(&self, u: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if i == j || v[j] == 0.0 {
                    continue;
                }
                let uv = u[i] * v[j];
                for k in 0..n {
                    out[k] += uv * self.constant(i, j, k);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_v : w -> [v, w]`; column `j` is `[v, e_j]`.
    pub fn ad(&self, v: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.check_dim(v)?;
        let n = self.dim;
        Ok(DMatrix::from_fn(n, n, |k, j| {
            (0..n).map(|i| v[i] * self.constant(i, j, k)).sum()
        }))
    }

    /// `ad` of the `i`-th basis vector.
    pub fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |k, j| self.constant(i, j, k))
    }

    /// Killing form `B_ij = trace(ad_{e_i} . ad_{e_j})`.
    pub fn killing_form(&self) -> KillingForm {
        let n = self.dim;
        let ads: Vec<DMatrix<f64>> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut matrix = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let b = (&ads[i] * &ads[j]).trace();
                matrix[(i, j)] = b;
                matrix[(j, i)] = b;
            }
        }
        KillingForm { matrix }
    }

    /// Cartan's criterion on singular values of the Killing form:
    /// semisimple iff `sigma_min > tol * max(sigma_max, 1)`.
    pub fn is_semisimple(&self, tol: f64) -> SemisimplicityCheck {
        let b = self.killing_form();
        let svd = b.matrix.clone().svd(false, false);
        let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let sigma_min = svd
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let sigma_min = if sigma_min.is_finite() { sigma_min } else { 0.0 };
        let threshold = tol * sigma_max.max(1.0);
        SemisimplicityCheck {
            semisimple: sigma_min > threshold,
            sigma_min,
            sigma_max,
            threshold,
        }
    }

    /// Direct sum: block structure, all cross brackets zero.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n1 = self.dim;
        let n = n1 + other.dim;
        let mut sum = Self::from_upper_fn(n, |i, j, k| {
            if j < n1 && k < n1 {
                self.constant(i, j, k)
            } else if i >= n1 && k >= n1 {
                other.constant(i - n1, j - n1, k - n1)
            } else {
                0.0
            }
        });
        if let (Some(a), Some(b)) = (&self.basis_names, &other.basis_names) {
            let mut names = a.clone();
            names.extend(b.iter().cloned());
            sum.basis_names = Some(names);
        }
        sum
    }

    /// Re-express the algebra in the basis `f_a = sum_i P_{ia} e_i`
    /// (columns of `P` are the new basis vectors in old coordinates):
    /// `c'^c_{ab} = sum (P^-1)_{ck} c^k_{ij} P_{ia} P_{jb}`.
    pub fn change_basis(&self, p: &DMatrix<f64>, tol: f64) -> Result<Self> {
        let n = self.dim;
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.nrows().max(p.ncols()),
            });
        }
        let svd = p.clone().svd(false, false);
        let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let sigma_min = svd
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if !(sigma_min > tol * sigma_max.max(1.0)) {
            return Err(Error::SingularMap {
                sigma_min,
                sigma_max,
            });
        }
        let p_inv = p
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMap {
                sigma_min,
                sigma_max,
            })?;
        let mut out = Self::from_upper_fn(n, |a, b, c| {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let w = p[(i, a)] * p[(j, b)];
                    if w == 0.0 {
                        continue;
                    }
                    for k in 0..n {
                        acc += p_inv[(c, k)] * self.constant(i, j, k) * w;
                    }
                }
            }
            acc
        });
        out.basis_names = None;
        Ok(out)
    }

    /// Restriction to the span of the given basis indices. Returns the
    /// sub-tensor together with the closure residual: the largest `|c^k_{ij}|`
    /// with `i, j` inside and `k` outside the index set. A nonzero residual
    /// means the span is not a subalgebra.
    pub fn subalgebra(&self, indices: &[usize]) -> Result<(Self, f64)> {
        for &i in indices {
            if i >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: self.dim,
                });
            }
        }
        let mut seen = vec![false; self.dim];
        for &i in indices {
            if seen[i] {
                return Err(Error::InvalidParameter {
                    reason: format!("duplicate index {i}"),
                });
            }
            seen[i] = true;
        }
        let m = indices.len();
        let sub = Self::from_upper_fn(m, |a, b, c| self.constant(indices[a], indices[b], indices[c]));
        let mut residual: f64 = 0.0;
        for a in 0..m {
            for b in (a + 1)..m {
                for k in 0..self.dim {
                    if !seen[k] {
                        residual = residual.max(self.constant(indices[a], indices[b], k).abs());
                    }
                }
            }
        }
        Ok((sub, residual))
    }

    /// Check the algebra invariants: antisymmetry holds by construction, so
    /// the report is about the Jacobi identity. The residual for a triple
    /// `i < j < k` and output index `l` is
    /// `sum_m (c^m_{jk} c^l_{im} + c^m_{ki} c^l_{jm} + c^m_{ij} c^l_{km})`,
    /// compared against `tol * max(1, max|c|^2)`.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let n = self.dim;
        let scale = self.jacobi_scale();
        let mut max_residual: f64 = 0.0;
        let mut witness = None;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let mut r = 0.0;
                        for m in 0..n {
                            r += self.constant(j, k, m) * self.constant(i, m, l)
                                + self.constant(k, i, m) * self.constant(j, m, l)
                                + self.constant(i, j, m) * self.constant(k, m, l);
                        }
                        if r.abs() > max_residual {
                            max_residual = r.abs();
                            witness = Some((i, j, k, l));
                        }
                    }
                }
            }
        }
        ValidationReport {
            jacobi_ok: max_residual <= tol * scale,
            max_jacobi_residual: max_residual,
            witness,
            scale,
            tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn su2() -> LieAlgebra {
        catalog::su2().0
    }

    fn heisenberg() -> LieAlgebra {
        catalog::heisenberg()
    }

    #[test]
    fn bracket_of_basis_vectors_matches_constants() {
        let l = su2();
        let e1 = l.basis_vector(0);
        let e2 = l.basis_vector(1);
        let b = l.bracket(&e1, &e2).unwrap();
        // [e1, e2] = 2 e3
        assert_eq!(b, DVector::from_vec(vec![0.0, 0.0, 2.0]));
    }

    #[test]
    fn bracket_with_itself_is_zero() {
        let l = su2();
        let v = DVector::from_vec(vec![1.3, -0.7, 2.1]);
        let b = l.bracket(&v, &v).unwrap();
        assert!(b.amax() == 0.0);
    }

    #[test]
    fn heisenberg_defining_relations() {
        let l = heisenberg();
        let e1 = l.basis_vector(0);
        let e3 = l.basis_vector(2);
        assert_eq!(l.bracket(&e1, &e3).unwrap().amax(), 0.0);
        let e2 = l.basis_vector(1);
        assert_eq!(
            l.bracket(&e1, &e2).unwrap(),
            DVector::from_vec(vec![0.0, 0.0, 1.0])
        );
    }

    #[test]
    fn bracket_dimension_mismatch_is_an_error() {
        let l = su2();
        let v = DVector::from_vec(vec![1.0, 2.0]);
        let w = l.basis_vector(0);
        assert!(matches!(
            l.bracket(&v, &w),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn entry_order_is_enforced() {
        let err = LieAlgebra::new(3, &[BracketEntry::new(2, 1, 0, 1.0)]);
        assert!(matches!(err, Err(Error::BracketIndexOrder { i: 2, j: 1 })));
    }

    #[test]
    fn ad_of_su2_generator() {
        let l = su2();
        let ad1 = l.ad(&l.basis_vector(0)).unwrap();
        // e2 -> 2 e3, e3 -> -2 e2, e1 -> 0
        assert_eq!(ad1.column(0).amax(), 0.0);
        assert_eq!(ad1[(2, 1)], 2.0);
        assert_eq!(ad1[(1, 2)], -2.0);
        // Linearity: ad(0) = 0.
        let z = l.ad(&DVector::zeros(3)).unwrap();
        assert_eq!(z.amax(), 0.0);
    }

    #[test]
    fn killing_form_of_su2_is_minus_eight_identity() {
        let b = su2().killing_form();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![-8.0, -8.0, -8.0]));
        assert!((b.matrix() - expected).amax() < 1e-12);
    }

    #[test]
    fn killing_form_of_sl2r() {
        let (l, _, _) = catalog::sl2r();
        let b = l.killing_form();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![-8.0, 8.0, 8.0]));
        assert!((b.matrix() - expected).amax() < 1e-12);
    }

    #[test]
    fn killing_form_of_heisenberg_vanishes() {
        let b = heisenberg().killing_form();
        assert_eq!(b.matrix().amax(), 0.0);
    }

    #[test]
    fn semisimplicity_flags() {
        assert!(su2().is_semisimple(1e-9).semisimple);
        assert!(!heisenberg().is_semisimple(1e-9).semisimple);
        let double = su2().direct_sum(&su2());
        assert!(double.is_semisimple(1e-9).semisimple);
    }

    #[test]
    fn direct_sum_blocks_and_killing() {
        let (sl, _, _) = catalog::sl2r();
        let sum = su2().direct_sum(&sl);
        assert_eq!(sum.dim(), 6);
        // Cross brackets vanish.
        for i in 0..3 {
            for j in 3..6 {
                assert_eq!(sum.bracket_basis(i, j).amax(), 0.0);
            }
        }
        let b = sum.killing_form();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![
            -8.0, -8.0, -8.0, -8.0, 8.0, 8.0,
        ]));
        assert!((b.matrix() - expected).amax() < 1e-12);
    }

    #[test]
    fn central_extension_by_abelian_factor() {
        let l = su2().direct_sum(&LieAlgebra::abelian(1));
        assert_eq!(l.dim(), 4);
        let z = l.basis_vector(3);
        for i in 0..3 {
            let b = l.bracket(&z, &l.basis_vector(i)).unwrap();
            assert_eq!(b.amax(), 0.0);
        }
    }

    #[test]
    fn change_basis_identity_is_identity() {
        let l = su2();
        let p = DMatrix::identity(3, 3);
        let l2 = l.change_basis(&p, 1e-12).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert!((l.constant(i, j, k) - l2.constant(i, j, k)).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn change_basis_scaling_reproduces_deformed_brackets() {
        // A = lambda e1, B = e2, C = e3 turns the su(2) brackets into
        // [A,B] = 2 lambda C, [C,A] = 2 lambda B, [B,C] = 2 A / lambda.
        let lambda = 1.7;
        let l = su2();
        let p = DMatrix::from_diagonal(&DVector::from_vec(vec![lambda, 1.0, 1.0]));
        let d = l.change_basis(&p, 1e-12).unwrap();
        assert!((d.constant(0, 1, 2) - 2.0 * lambda).abs() < 1e-12);
        assert!((d.constant(2, 0, 1) - 2.0 * lambda).abs() < 1e-12);
        assert!((d.constant(1, 2, 0) - 2.0 / lambda).abs() < 1e-12);
        assert!(d.validate(1e-9).jacobi_ok);
    }

    #[test]
    fn change_basis_permutation_keeps_jacobi() {
        let l = su2();
        let mut p = DMatrix::zeros(3, 3);
        p[(0, 1)] = 1.0;
        p[(1, 0)] = 1.0;
        p[(2, 2)] = 1.0;
        let d = l.change_basis(&p, 1e-12).unwrap();
        // [f1, f2] = [e2, e1] = -2 e3 = -2 f3.
        assert!((d.constant(0, 1, 2) + 2.0).abs() < 1e-13);
        let r = d.validate(1e-9);
        assert!(r.jacobi_ok, "residual {}", r.max_jacobi_residual);
    }

    #[test]
    fn change_basis_rejects_singular_map() {
        let l = su2();
        let p = DMatrix::zeros(3, 3);
        assert!(matches!(
            l.change_basis(&p, 1e-12),
            Err(Error::SingularMap { .. })
        ));
    }

    #[test]
    fn validate_passes_on_su2() {
        let r = su2().validate(1e-9);
        assert!(r.jacobi_ok);
        assert_eq!(r.max_jacobi_residual, 0.0);
    }

    #[test]
    fn validate_catches_broken_jacobi() {
        // [e1,e2] = e3, [e1,e3] = e1: the cyclic sum over (e1,e2,e3) is
        // [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = [e3,e3]... expanding by
        // hand gives -e3, which is nonzero, so Jacobi fails at (0,1,2).
        let l = LieAlgebra::new(
            3,
            &[BracketEntry::new(0, 1, 2, 1.0), BracketEntry::new(0, 2, 0, 1.0)],
        )
        .unwrap();
        let r = l.validate(1e-9);
        assert!(!r.jacobi_ok);
        let (i, j, k, _) = r.witness.unwrap();
        assert_eq!((i, j, k), (0, 1, 2));
        assert!((r.max_jacobi_residual - 1.0).abs() < 1e-14);
    }

    #[test]
    fn subalgebra_extraction_and_closure() {
        let sum = su2().direct_sum(&LieAlgebra::abelian(2));
        let (sub, residual) = sum.subalgebra(&[0, 1, 2]).unwrap();
        assert_eq!(residual, 0.0);
        assert!((sub.constant(0, 1, 2) - 2.0).abs() < 1e-15);
        // A non-closed span: {e1, e2} inside su(2) brackets into e3.
        let (_, residual) = su2().subalgebra(&[0, 1]).unwrap();
        assert_eq!(residual, 2.0);
    }
}
