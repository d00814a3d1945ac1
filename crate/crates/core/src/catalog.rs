//! Ready-made algebras and metrics: su(2), sl(2,R), the Heisenberg algebra,
//! the deformed-fibre family over su(2), trivial codimension-two extensions,
//! and the four product-subalgebra cases.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::{BracketEntry, LieAlgebra};
use crate::metric::{CartanInvolution, MetricTensor};

/// su(2) with brackets `[e1,e2] = 2e3`, `[e2,e3] = 2e1`, `[e3,e1] = 2e2`,
/// and the bi-invariant metric that makes this basis orthonormal (the
/// negative Killing form scaled by 1/8).
pub fn su2() -> (LieAlgebra, MetricTensor) {
    let l = LieAlgebra::new(
        3,
        &[
            BracketEntry::new(0, 1, 2, 2.0),
            BracketEntry::new(1, 2, 0, 2.0),
            BracketEntry::new(0, 2, 1, -2.0), // [e3,e1] = 2e2
        ],
    )
    .expect("static table")
    .with_basis_names(vec!["e1".into(), "e2".into(), "e3".into()])
    .expect("three names");
    (l, MetricTensor::identity(3))
}

/// sl(2,R) in the basis (rotation, diagonal, antidiagonal):
/// `[e1,e2] = 2e3`, `[e3,e1] = 2e2`, `[e2,e3] = -2e1`. The Killing form is
/// `diag(-8, 8, 8)`; with the Cartan involution `diag(1, -1, -1)` the
/// Cartan-Killing metric is `8 I`, normalized here to the identity.
pub fn sl2r() -> (LieAlgebra, MetricTensor, CartanInvolution) {
    let l = LieAlgebra::new(
        3,
        &[
            BracketEntry::new(0, 1, 2, 2.0),
            BracketEntry::new(0, 2, 1, -2.0), // [e3,e1] = 2e2
            BracketEntry::new(1, 2, 0, -2.0),
        ],
    )
    .expect("static table")
    .with_basis_names(vec!["e1".into(), "e2".into(), "e3".into()])
    .expect("three names");
    let theta = CartanInvolution::new(DMatrix::from_diagonal(&DVector::from_vec(vec![
        1.0, -1.0, -1.0,
    ])));
    (l, MetricTensor::identity(3), theta)
}

/// The 3-dimensional Heisenberg algebra: `[e1, e2] = e3` only.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(3, &[BracketEntry::new(0, 1, 2, 1.0)]).expect("static table")
}

/// A solvable negative control: 1-dimensional vertical span `V` with
/// `[X, V] = V` and all other brackets zero, identity metric, basis order
/// `(V, X, Y)`. Its foliation is conformal but not minimal, and the vertical
/// algebra is abelian, hence not semisimple.
pub fn solvable3() -> (LieAlgebra, MetricTensor, Vec<usize>) {
    // [V, X] = -V.
    let l = LieAlgebra::new(3, &[BracketEntry::new(0, 1, 0, -1.0)]).expect("static table");
    (l, MetricTensor::identity(3), vec![0])
}

/// Parameters of the deformed-fibre family: `lambda` scales the fibre
/// direction of the vertical su(2), the rest couple the vertical and
/// horizontal blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergerParams {
    pub lambda: f64,
    pub x3: f64,
    pub x4: f64,
    pub x5: f64,
    pub x6: f64,
    pub z3: f64,
    pub z4: f64,
    pub rho: f64,
}

impl Default for BergerParams {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            x3: 0.0,
            x4: 0.0,
            x5: 0.0,
            x6: 0.0,
            z3: 0.0,
            z4: 0.0,
            rho: 0.0,
        }
    }
}

impl BergerParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) {
            return Err(Error::InvalidParameter {
                reason: format!("lambda must be positive (got {})", self.lambda),
            });
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("x3", self.x3),
            ("x4", self.x4),
            ("x5", self.x5),
            ("x6", self.x6),
            ("z3", self.z3),
            ("z4", self.z4),
            ("rho", self.rho),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    reason: format!("{name} is not finite"),
                });
            }
        }
        Ok(())
    }

    /// The vertical components of `[X, Y]` determined by the other
    /// parameters.
    pub fn theta(&self) -> [f64; 3] {
        let Self {
            lambda: l,
            x3,
            x4,
            x5,
            x6,
            z3,
            z4,
            rho,
        } = *self;
        [
            0.5 * (rho * z3 / l + l * (x3 * x6 - x4 * x5)),
            0.5 * l * (rho * x5 - x3 * z4 + x4 * z3),
            -0.5 * l * (rho * x3 + z4 * x5 - z3 * x6),
        ]
    }
}

/// The five-dimensional family over the deformed su(2): orthonormal frame
/// `(A, B, C, X, Y)` with vertical span `{A, B, C}`, brackets
///
/// ```text
/// [A,B] = 2 lambda C     [C,A] = 2 lambda B     [B,C] = 2 A / lambda
/// [A,X] = -lambda^2 x3 B - lambda^2 x5 C        [A,Y] = -lambda^2 x4 B - lambda^2 x6 C
/// [B,X] = x3 A + z3 C                           [B,Y] = x4 A + z4 C
/// [C,X] = x5 A - z3 B                           [C,Y] = x6 A - z4 B
/// [X,Y] = rho X + theta_1 A + theta_2 B + theta_3 C
/// ```
///
/// and the identity metric (the frame is declared orthonormal).
pub fn berger_algebra(p: &BergerParams) -> Result<(LieAlgebra, MetricTensor, Vec<usize>)> {
    p.validate()?;
    let l = p.lambda;
    let [t1, t2, t3] = p.theta();
    let entries = [
        // Vertical block.
        BracketEntry::new(0, 1, 2, 2.0 * l),
        BracketEntry::new(0, 2, 1, -2.0 * l), // [C,A] = 2 lambda B
        BracketEntry::new(1, 2, 0, 2.0 / l),
        // [A, X], [A, Y].
        BracketEntry::new(0, 3, 1, -l * l * p.x3),
        BracketEntry::new(0, 3, 2, -l * l * p.x5),
        BracketEntry::new(0, 4, 1, -l * l * p.x4),
        BracketEntry::new(0, 4, 2, -l * l * p.x6),
        // [B, X], [B, Y].
        BracketEntry::new(1, 3, 0, p.x3),
        BracketEntry::new(1, 3, 2, p.z3),
        BracketEntry::new(1, 4, 0, p.x4),
        BracketEntry::new(1, 4, 2, p.z4),
        // [C, X], [C, Y].
        BracketEntry::new(2, 3, 0, p.x5),
        BracketEntry::new(2, 3, 1, -p.z3),
        BracketEntry::new(2, 4, 0, p.x6),
        BracketEntry::new(2, 4, 1, -p.z4),
        // [X, Y].
        BracketEntry::new(3, 4, 3, p.rho),
        BracketEntry::new(3, 4, 0, t1),
        BracketEntry::new(3, 4, 1, t2),
        BracketEntry::new(3, 4, 2, t3),
    ];
    let algebra = LieAlgebra::new(5, &entries)?.with_basis_names(vec![
        "A".into(),
        "B".into(),
        "C".into(),
        "X".into(),
        "Y".into(),
    ])?;
    Ok((algebra, MetricTensor::identity(5), vec![0, 1, 2]))
}

/// Extend a metric algebra trivially to codimension two: the ambient algebra
/// is `vertical + span(X, Y)` with `[vertical, X] = [vertical, Y] = [X, Y] = 0`
/// and the metric extended by the identity on the new plane.
pub fn trivial_extension(
    vertical: &LieAlgebra,
    vertical_metric: &MetricTensor,
) -> Result<(LieAlgebra, MetricTensor, Vec<usize>)> {
    let n = vertical.dim();
    if vertical_metric.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: vertical_metric.dim(),
        });
    }
    let ambient = vertical.direct_sum(&LieAlgebra::abelian(2));
    let mut g = DMatrix::identity(n + 2, n + 2);
    g.view_mut((0, 0), (n, n)).copy_from(vertical_metric.matrix());
    Ok((
        ambient,
        MetricTensor::from_matrix(g)?,
        (0..n).collect(),
    ))
}

/// One row of the product-subalgebra table.
#[derive(Debug, Clone)]
pub struct IntroTableCase {
    pub name: &'static str,
    pub algebra: LieAlgebra,
    pub metric: MetricTensor,
    pub vertical: Vec<usize>,
    pub expect_semisimple: bool,
    /// Partition of the vertical indices into the product factors.
    pub factors: Vec<Vec<usize>>,
}

/// The four product cases `su(2) x su(2)`, `su(2) x sl(2,R)`,
/// `su(2) x so(2)`, `sl(2,R) x so(2)` as trivial codimension-two extensions
/// with the identity metric (Cartan-Killing on each semisimple factor,
/// Euclidean on the abelian one).
pub fn intro_table_cases() -> Vec<IntroTableCase> {
    let (su, _) = su2();
    let (sl, _, _) = sl2r();
    let so2 = LieAlgebra::abelian(1);

    let build = |name: &'static str,
                 first: &LieAlgebra,
                 second: &LieAlgebra,
                 expect_semisimple: bool| {
        let vert = first.direct_sum(second);
        let n1 = first.dim();
        let n = vert.dim();
        let (algebra, metric, vertical) =
            trivial_extension(&vert, &MetricTensor::identity(n)).expect("static dimensions");
        IntroTableCase {
            name,
            algebra,
            metric,
            vertical,
            expect_semisimple,
            factors: vec![(0..n1).collect(), (n1..n).collect()],
        }
    };

    vec![
        build("su2+su2", &su, &su, true),
        build("su2+sl2r", &su, &sl, true),
        build("su2+so2", &su, &so2, false),
        build("sl2r+so2", &sl, &so2, false),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_validates_with_zero_residual() {
        let (l, g) = su2();
        let r = l.validate(1e-9);
        assert!(r.jacobi_ok);
        assert_eq!(r.max_jacobi_residual, 0.0);
        assert_eq!(g.signature(1e-9).unwrap(), (3, 0));
        assert!(l.is_semisimple(1e-9).semisimple);
    }

    #[test]
    fn sl2r_signature_and_semisimplicity() {
        let (l, _, theta) = sl2r();
        assert!(l.is_semisimple(1e-9).semisimple);
        let b = MetricTensor::from_matrix(l.killing_form().matrix().clone()).unwrap();
        assert_eq!(b.signature(1e-9).unwrap(), (2, 1));
        let ck = crate::metric::cartan_killing_metric(&l, &theta, 1e-9).unwrap();
        assert_eq!(ck.signature(1e-9).unwrap(), (3, 0));
    }

    #[test]
    fn berger_reduces_to_su2_block_at_default_parameters() {
        let p = BergerParams::default();
        let (l, _, vertical) = berger_algebra(&p).unwrap();
        assert_eq!(vertical, vec![0, 1, 2]);
        // lambda = 1, everything else 0: su(2) + abelian(2) up to labels.
        let expected = su2().0.direct_sum(&LieAlgebra::abelian(2));
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    assert_eq!(l.constant(i, j, k), expected.constant(i, j, k));
                }
            }
        }
    }

    #[test]
    fn berger_adjoint_of_fiber_generator() {
        let p = BergerParams {
            lambda: 1.8,
            ..Default::default()
        };
        let (l, _, _) = berger_algebra(&p).unwrap();
        // ad_A: B -> 2 lambda C, C -> -2 lambda B.
        let ad_a = l.ad(&l.basis_vector(0)).unwrap();
        assert!((ad_a[(2, 1)] - 2.0 * p.lambda).abs() < 1e-15);
        assert!((ad_a[(1, 2)] + 2.0 * p.lambda).abs() < 1e-15);
    }

    #[test]
    fn berger_theta_example() {
        // lambda = 2, x3 = 1, rho = 1, rest 0 gives theta = (0, 0, -1).
        let p = BergerParams {
            lambda: 2.0,
            x3: 1.0,
            rho: 1.0,
            ..Default::default()
        };
        assert_eq!(p.theta(), [0.0, 0.0, -1.0]);
    }

    #[test]
    fn berger_rejects_nonpositive_lambda() {
        let p = BergerParams {
            lambda: 0.0,
            ..Default::default()
        };
        assert!(matches!(
            berger_algebra(&p),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn berger_satisfies_jacobi_for_generic_parameters() {
        let p = BergerParams {
            lambda: 1.9,
            x3: 0.6,
            x4: -1.4,
            x5: 0.3,
            x6: 1.1,
            z3: -0.8,
            z4: 0.5,
            rho: 1.2,
        };
        let (l, _, _) = berger_algebra(&p).unwrap();
        let r = l.validate(1e-9);
        assert!(
            r.jacobi_ok,
            "residual {} at {:?}",
            r.max_jacobi_residual,
            r.witness
        );
    }

    #[test]
    fn intro_table_semisimplicity_flags() {
        let cases = intro_table_cases();
        let flags: Vec<bool> = cases
            .iter()
            .map(|c| {
                let (sub, residual) = c.algebra.subalgebra(&c.vertical).unwrap();
                assert_eq!(residual, 0.0);
                sub.is_semisimple(1e-9).semisimple
            })
            .collect();
        assert_eq!(flags, vec![true, true, false, false]);
        // All verticals carry a positive-definite metric here.
        let last = &cases[3];
        let basis: Vec<DVector<f64>> = last
            .vertical
            .iter()
            .map(|&i| {
                let mut v = DVector::zeros(last.algebra.dim());
                v[i] = 1.0;
                v
            })
            .collect();
        let restricted = last.metric.restrict(&basis).unwrap();
        assert_eq!(restricted.signature(1e-9).unwrap(), (4, 0));
    }
}
