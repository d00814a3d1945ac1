//! Codimension-two foliation setups on a metric Lie algebra: adapted
//! orthonormal frames, bracket coefficients, second fundamental forms,
//! the conformal / semi-Riemannian / minimal / totally-geodesic
//! classification, structural checks, and instance verification of the
//! minimality and total-geodesicity theorems.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, SemisimplicityCheck};
use crate::metric::{orthonormal_frame, MetricTensor};

/// An orthonormal frame `{V_1..V_n, X, Y}` for an `(n+2)`-dimensional metric
/// Lie algebra, with the vertical vectors spanning the candidate subalgebra
/// and the horizontal pair spanning its orthogonal complement.
///
/// Orthonormality (up to causalities) and codimension two are hard
/// invariants. Two softer properties are measured and recorded rather than
/// enforced: closure of the vertical span under the bracket, and alignment
/// of the horizontal part of `[X, Y]` with `X` (which [`FoliationSetup::adapted`]
/// guarantees, but a hand-built frame may lack).
#[derive(Debug, Clone)]
pub struct FoliationSetup {
    algebra: LieAlgebra,
    metric: MetricTensor,
    /// Columns: `V_1..V_n, X, Y`.
    frame: DMatrix<f64>,
    /// Causalities of the frame columns, same order.
    eps: Vec<f64>,
    vert: usize,
    /// Structure constants in the frame basis: `lam^c_{ab} = eps_c g([F_a, F_b], F_c)`.
    lam: LieAlgebra,
    closure_max_horizontal: f64,
    closure_ok: bool,
    /// `|eps_Y g([X, Y], Y)|`; zero for an adapted frame.
    xy_alignment: f64,
}

/// Bracket coefficients of a setup:
/// `[X, V_i] = sum_k x^k_i V_k` (+ horizontal leakage),
/// `[Y, V_i] = sum_k y^k_i V_k` (+ leakage),
/// `[X, Y] = rho X + sum_k theta^k V_k` (+ residual).
#[derive(Debug, Clone)]
pub struct FoliationCoefficients {
    /// `x[(k, i)] = x^k_i = eps_k g([X, V_i], V_k)`.
    pub x: DMatrix<f64>,
    /// `y[(k, i)] = y^k_i = eps_k g([Y, V_i], V_k)`.
    pub y: DMatrix<f64>,
    pub rho: f64,
    pub theta: DVector<f64>,
    /// Norm of the horizontal part of `[X, V_i]`, per vertical index.
    pub leakage_x: Vec<f64>,
    /// Norm of the horizontal part of `[Y, V_i]`, per vertical index.
    pub leakage_y: Vec<f64>,
    /// Norm of `[X, Y] - rho X - sum_k theta^k V_k` in frame coordinates.
    pub xy_residual: f64,
}

/// Second fundamental forms of the two distributions, in frame components.
/// `B^V` is vertical-pair valued in the horizontal plane, `B^H` is
/// horizontal-pair valued in the vertical space; both are symmetric.
#[derive(Debug, Clone)]
pub struct SecondFundamentalForms {
    /// `X` components of `B^V(V_i, V_j)`.
    pub bv_x: DMatrix<f64>,
    /// `Y` components of `B^V(V_i, V_j)`.
    pub bv_y: DMatrix<f64>,
    /// Vertical components of `B^H(X, X)`.
    pub bh_xx: DVector<f64>,
    /// Vertical components of `B^H(X, Y) = B^H(Y, X)`.
    pub bh_xy: DVector<f64>,
    /// Vertical components of `B^H(Y, Y)`.
    pub bh_yy: DVector<f64>,
}

/// The four classification flags with the numeric witnesses behind them.
/// By construction `semi_riemannian` implies `conformal` and
/// `totally_geodesic` implies `minimal`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliationClassification {
    pub conformal: bool,
    pub semi_riemannian: bool,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub witnesses: ClassificationWitnesses,
}

/// Maximal violation per criterion, plus the residual between the two
/// evaluation routes (bracket coefficients vs. Koszul-derived forms).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationWitnesses {
    /// max component of `B^H(X, Y)`.
    pub conformal_mixed: f64,
    /// max component of `eps_X B^H(X,X) - eps_Y B^H(Y,Y)`.
    pub conformal_diag_difference: f64,
    /// max component of `eps_X B^H(X,X) + eps_Y B^H(Y,Y)`.
    pub riemannian_diag_sum: f64,
    /// `|sum_i eps_i x^i_i|`.
    pub minimal_trace_x: f64,
    /// `|sum_i eps_i y^i_i|`.
    pub minimal_trace_y: f64,
    /// `max_{i,j} |eps_j x^j_i + eps_i x^i_j|` and the same for `y`.
    pub totally_geodesic_max: f64,
    /// Cross-check: largest difference between the coefficient route and the
    /// second-fundamental-form route for the minimality/geodesity criteria.
    pub route_residual: f64,
    pub scale: f64,
    pub threshold: f64,
}

/// Structural checks: vanishing of the horizontal part of `[[V, V], H]`
/// (which holds for conformal foliations), and for a factor partition of the
/// vertical space, vanishing of cross-factor components of `[V_k, H]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralChecks {
    pub double_bracket_horizontal_max: f64,
    pub double_bracket_pass: bool,
    pub cross_factor_max: Option<f64>,
    pub cross_factor_pass: Option<bool>,
    pub threshold: f64,
}

impl FoliationSetup {
    /// Build a setup from explicit frame vectors. Validates orthonormality
    /// against the metric and codimension two; measures closure and
    /// `[X, Y]`-alignment.
    pub fn from_frame(
        algebra: LieAlgebra,
        metric: MetricTensor,
        vertical: &[DVector<f64>],
        x: DVector<f64>,
        y: DVector<f64>,
        tol: f64,
    ) -> Result<Self> {
        let dim = algebra.dim();
        if metric.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: metric.dim(),
            });
        }
        if vertical.len() + 2 != dim {
            return Err(Error::CodimensionNotTwo {
                got: dim - vertical.len().min(dim),
            });
        }
        let mut cols: Vec<DVector<f64>> = vertical.to_vec();
        cols.push(x);
        cols.push(y);
        for c in &cols {
            if c.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.len(),
                });
            }
        }
        let frame = DMatrix::from_columns(&cols);

        // Orthonormality up to causalities.
        let gram = frame.transpose() * metric.matrix() * &frame;
        let mut eps = Vec::with_capacity(dim);
        let mut deviation: f64 = 0.0;
        let g_scale = metric.matrix().amax().max(1.0);
        for a in 0..dim {
            let d = gram[(a, a)];
            eps.push(d.signum());
            for b in 0..dim {
                let target = if a == b { d.signum() } else { 0.0 };
                deviation = deviation.max((gram[(a, b)] - target).abs());
            }
        }
        if deviation > tol * g_scale {
            return Err(Error::FrameNotOrthonormal { deviation });
        }

        Self::assemble(algebra, metric, frame, eps, vertical.len(), tol)
    }

    fn assemble(
        algebra: LieAlgebra,
        metric: MetricTensor,
        frame: DMatrix<f64>,
        eps: Vec<f64>,
        vert: usize,
        tol: f64,
    ) -> Result<Self> {
        let dim = algebra.dim();
        // Frame structure constants lam^c_{ab} = eps_c g([F_a, F_b], F_c).
        let cols: Vec<DVector<f64>> = (0..dim).map(|a| frame.column(a).into()).collect();
        let mut brackets: Vec<Vec<DVector<f64>>> = Vec::with_capacity(dim);
        for a in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for b in 0..dim {
                row.push(algebra.bracket(&cols[a], &cols[b])?);
            }
            brackets.push(row);
        }
        let lam = LieAlgebra::from_upper_fn(dim, |a, b, c| {
            eps[c] * metric.eval(&brackets[a][b], &cols[c])
        });

        // Closure of the vertical span: horizontal components of [V_a, V_b].
        let mut closure_max: f64 = 0.0;
        for a in 0..vert {
            for b in (a + 1)..vert {
                for h in [vert, vert + 1] {
                    closure_max = closure_max.max(lam.constant(a, b, h).abs());
                }
            }
        }
        let scale = lam.scale();
        let xy_alignment = lam.constant(vert, vert + 1, vert + 1).abs();
        Ok(Self {
            closure_ok: closure_max <= tol * scale,
            closure_max_horizontal: closure_max,
            xy_alignment,
            algebra,
            metric,
            frame,
            eps,
            vert,
            lam,
        })
    }

    /// Build an adapted frame from a set of vertical basis indices:
    /// orthonormalize the vertical span, complete it with the metric
    /// complement, and align the horizontal pair so that the horizontal part
    /// of `[X, Y]` is a non-negative multiple of `X`.
    pub fn adapted(
        algebra: &LieAlgebra,
        metric: &MetricTensor,
        vertical_indices: &[usize],
        tol: f64,
    ) -> Result<Self> {
        let dim = algebra.dim();
        if metric.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: metric.dim(),
            });
        }
        let mut seen = vec![false; dim];
        for &i in vertical_indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if seen[i] {
                return Err(Error::InvalidParameter {
                    reason: format!("duplicate vertical index {i}"),
                });
            }
            seen[i] = true;
        }
        if vertical_indices.len() + 2 != dim {
            return Err(Error::CodimensionNotTwo {
                got: dim - vertical_indices.len().min(dim),
            });
        }

        // Orthonormalize the vertical span.
        let seed = DMatrix::from_fn(dim, vertical_indices.len(), |r, c| {
            if r == vertical_indices[c] {
                1.0
            } else {
                0.0
            }
        });
        let vframe = orthonormal_frame(metric, &seed, tol)?;
        let vertical: Vec<DVector<f64>> = (0..vframe.change.ncols())
            .map(|c| vframe.change.column(c).into())
            .collect();

        // Metric complement of the vertical span: kernel of M = V^T G,
        // obtained from the full eigenbasis of M^T M.
        let vt_g = vframe.change.transpose() * metric.matrix();
        let normal = vt_g.transpose() * &vt_g;
        let eig = normal.symmetric_eigen();
        let eig_max = eig.eigenvalues.iter().fold(1.0_f64, |m, e| m.max(e.abs()));
        let mut complement: Vec<DVector<f64>> = Vec::new();
        for r in 0..eig.eigenvalues.len() {
            if eig.eigenvalues[r].abs() <= 1e-12 * eig_max {
                complement.push(eig.eigenvectors.column(r).into());
            }
        }
        if complement.len() != 2 {
            return Err(Error::CodimensionNotTwo {
                got: complement.len(),
            });
        }
        let comp_seed = DMatrix::from_columns(&complement);
        let hframe = orthonormal_frame(metric, &comp_seed, tol)?;
        let x0: DVector<f64> = hframe.change.column(0).into();
        let y0: DVector<f64> = hframe.change.column(1).into();
        let (eps_x0, eps_y0) = (hframe.causalities[0], hframe.causalities[1]);

        // Horizontal part of [X0, Y0].
        let b_xy = algebra.bracket(&x0, &y0)?;
        let hx = eps_x0 * metric.eval(&b_xy, &x0);
        let hy = eps_y0 * metric.eval(&b_xy, &y0);
        let h = &x0 * hx + &y0 * hy;
        let hq = metric.eval(&h, &h);
        let h_norm2 = h.norm_squared();
        let scale = algebra.scale();

        let (x, y) = if h_norm2.sqrt() <= tol * scale {
            // rho = 0; keep the complement pair as is.
            (x0, y0)
        } else {
            // Align X with the horizontal part of [X, Y]. The bracket of the
            // new pair is the old one up to the determinant of the change,
            // so the horizontal part stays parallel to h.
            if hq.abs() <= tol * scale * h_norm2 {
                return Err(Error::DegenerateRestriction {
                    best: hq.abs() / h_norm2,
                    threshold: tol * scale,
                });
            }
            let x = &h / hq.abs().sqrt();
            let eps_x = metric.eval(&x, &x).signum();
            // Complete with the metric complement of x inside the plane,
            // seeded by whichever of the old pair is less parallel to h.
            let seed = if hx.abs() > hy.abs() { y0 } else { x0 };
            let mut y = &seed - &x * (eps_x * metric.eval(&seed, &x));
            let yq = metric.eval(&y, &y);
            if yq.abs() <= tol * scale * y.norm_squared().max(1e-300) {
                return Err(Error::DegenerateRestriction {
                    best: yq.abs() / y.norm_squared().max(1e-300),
                    threshold: tol * scale,
                });
            }
            y /= yq.abs().sqrt();
            // Orient Y so that rho = eps_X g([X, Y], X) is non-negative.
            let rho = eps_x * metric.eval(&algebra.bracket(&x, &y)?, &x);
            if rho < 0.0 {
                y = -y;
            }
            (x, y)
        };

        let mut cols = vertical;
        cols.push(x);
        cols.push(y);
        let frame = DMatrix::from_columns(&cols);
        let mut eps: Vec<f64> = vframe.causalities.clone();
        let nx: DVector<f64> = frame.column(dim - 2).into();
        let ny: DVector<f64> = frame.column(dim - 1).into();
        eps.push(metric.eval(&nx, &nx).signum());
        eps.push(metric.eval(&ny, &ny).signum());

        Self::assemble(algebra.clone(), metric.clone(), frame, eps, dim - 2, tol)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &MetricTensor {
        &self.metric
    }

    /// Number of vertical frame vectors.
    pub fn vertical_dim(&self) -> usize {
        self.vert
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    pub fn vertical_vector(&self, i: usize) -> DVector<f64> {
        self.frame.column(i).into()
    }

    pub fn x(&self) -> DVector<f64> {
        self.frame.column(self.vert).into()
    }

    pub fn y(&self) -> DVector<f64> {
        self.frame.column(self.vert + 1).into()
    }

    pub fn causalities(&self) -> &[f64] {
        &self.eps
    }

    pub fn eps_x(&self) -> f64 {
        self.eps[self.vert]
    }

    pub fn eps_y(&self) -> f64 {
        self.eps[self.vert + 1]
    }

    pub fn closure_ok(&self) -> bool {
        self.closure_ok
    }

    pub fn closure_max_horizontal(&self) -> f64 {
        self.closure_max_horizontal
    }

    pub fn xy_alignment(&self) -> f64 {
        self.xy_alignment
    }

    /// The algebra re-expressed in the frame basis; for a Riemannian metric
    /// this is an orthonormal-frame presentation.
    pub fn frame_algebra(&self) -> LieAlgebra {
        self.lam.clone()
    }

    /// The vertical subalgebra in the vertical frame basis (meaningful when
    /// closure holds).
    pub fn vertical_algebra(&self) -> LieAlgebra {
        let n = self.vert;
        LieAlgebra::from_upper_fn(n, |a, b, c| self.lam.constant(a, b, c))
    }

    /// Bracket coefficients in the frame basis.
    pub fn coefficients(&self) -> FoliationCoefficients {
        let n = self.vert;
        let (xi, yi) = (n, n + 1);
        let x = DMatrix::from_fn(n, n, |k, i| self.lam.constant(xi, i, k));
        let y = DMatrix::from_fn(n, n, |k, i| self.lam.constant(yi, i, k));
        let rho = self.lam.constant(xi, yi, xi);
        let theta = DVector::from_fn(n, |k, _| self.lam.constant(xi, yi, k));
        let leak = |h: usize, i: usize| {
            let a = self.lam.constant(h, i, xi);
            let b = self.lam.constant(h, i, yi);
            (a * a + b * b).sqrt()
        };
        let leakage_x = (0..n).map(|i| leak(xi, i)).collect();
        let leakage_y = (0..n).map(|i| leak(yi, i)).collect();
        // [X, Y] - rho X - sum theta^k V_k, in frame coordinates.
        let xy_residual = self.lam.constant(xi, yi, yi).abs();
        FoliationCoefficients {
            x,
            y,
            rho,
            theta,
            leakage_x,
            leakage_y,
            xy_residual,
        }
    }

    /// Second fundamental forms from the Koszul formula, evaluated directly
    /// on metric/bracket data (independently of the cached frame constants).
    pub fn second_fundamental_forms(&self) -> SecondFundamentalForms {
        let n = self.vert;
        let x = self.x();
        let y = self.y();
        let (ex, ey) = (self.eps_x(), self.eps_y());
        let v: Vec<DVector<f64>> = (0..n).map(|i| self.vertical_vector(i)).collect();
        let bx: Vec<DVector<f64>> = v
            .iter()
            .map(|vi| self.algebra.bracket(&x, vi).expect("dimensions agree"))
            .collect();
        let by: Vec<DVector<f64>> = v
            .iter()
            .map(|vi| self.algebra.bracket(&y, vi).expect("dimensions agree"))
            .collect();

        // 2 B^V(V_i, V_j) = eps_X (g([X,V_i],V_j) + g([X,V_j],V_i)) X + (same for Y) Y.
        let bv_x = DMatrix::from_fn(n, n, |i, j| {
            ex * (self.metric.eval(&bx[i], &v[j]) + self.metric.eval(&bx[j], &v[i])) / 2.0
        });
        let bv_y = DMatrix::from_fn(n, n, |i, j| {
            ey * (self.metric.eval(&by[i], &v[j]) + self.metric.eval(&by[j], &v[i])) / 2.0
        });
        // B^H(X, X) = V(nabla_X X): component on V_i is -eps_i g([X,V_i],X);
        // the mixed term symmetrizes to -eps_i (g([X,V_i],Y) + g([Y,V_i],X)) / 2.
        let bh_xx = DVector::from_fn(n, |i, _| -self.eps[i] * self.metric.eval(&bx[i], &x));
        let bh_yy = DVector::from_fn(n, |i, _| -self.eps[i] * self.metric.eval(&by[i], &y));
        let bh_xy = DVector::from_fn(n, |i, _| {
            -self.eps[i] * (self.metric.eval(&bx[i], &y) + self.metric.eval(&by[i], &x)) / 2.0
        });
        SecondFundamentalForms {
            bv_x,
            bv_y,
            bh_xx,
            bh_xy,
            bh_yy,
        }
    }

    /// Classify the foliation. Conformality and the semi-Riemannian property
    /// come from the second fundamental form of the horizontal distribution;
    /// minimality and total geodesicity are evaluated on the bracket
    /// coefficients and cross-checked against `B^V`.
    pub fn classify(&self, tol: f64) -> FoliationClassification {
        let n = self.vert;
        let (ex, ey) = (self.eps_x(), self.eps_y());
        let forms = self.second_fundamental_forms();
        let coeff = self.coefficients();
        let scale = self.lam.scale();
        let threshold = tol * scale;

        let mut conformal_mixed: f64 = 0.0;
        let mut conformal_diag_difference: f64 = 0.0;
        let mut riemannian_diag_sum: f64 = 0.0;
        for i in 0..n {
            conformal_mixed = conformal_mixed.max(forms.bh_xy[i].abs());
            conformal_diag_difference =
                conformal_diag_difference.max((ex * forms.bh_xx[i] - ey * forms.bh_yy[i]).abs());
            riemannian_diag_sum =
                riemannian_diag_sum.max((ex * forms.bh_xx[i] + ey * forms.bh_yy[i]).abs());
        }
        let conformal = conformal_mixed <= threshold && conformal_diag_difference <= threshold;
        let semi_riemannian = conformal && riemannian_diag_sum <= threshold;

        // Coefficient route.
        let mut sum_x = 0.0;
        let mut sum_y = 0.0;
        for i in 0..n {
            sum_x += self.eps[i] * coeff.x[(i, i)];
            sum_y += self.eps[i] * coeff.y[(i, i)];
        }
        let mut tg_max: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                tg_max = tg_max.max((self.eps[j] * coeff.x[(j, i)] + self.eps[i] * coeff.x[(i, j)]).abs());
                tg_max = tg_max.max((self.eps[j] * coeff.y[(j, i)] + self.eps[i] * coeff.y[(i, j)]).abs());
            }
        }

        // Independent route: the plain trace and components of B^V.
        let mut route_residual: f64 = 0.0;
        let trace_bv_x: f64 = (0..n).map(|i| forms.bv_x[(i, i)]).sum();
        let trace_bv_y: f64 = (0..n).map(|i| forms.bv_y[(i, i)]).sum();
        route_residual = route_residual.max((trace_bv_x - ex * sum_x).abs());
        route_residual = route_residual.max((trace_bv_y - ey * sum_y).abs());
        for i in 0..n {
            for j in 0..n {
                let via_coeff =
                    ex * (self.eps[j] * coeff.x[(j, i)] + self.eps[i] * coeff.x[(i, j)]) / 2.0;
                route_residual = route_residual.max((forms.bv_x[(i, j)] - via_coeff).abs());
                let via_coeff =
                    ey * (self.eps[j] * coeff.y[(j, i)] + self.eps[i] * coeff.y[(i, j)]) / 2.0;
                route_residual = route_residual.max((forms.bv_y[(i, j)] - via_coeff).abs());
            }
        }

        let minimal = sum_x.abs() <= threshold && sum_y.abs() <= threshold;
        let totally_geodesic = minimal && tg_max <= threshold;
        FoliationClassification {
            conformal,
            semi_riemannian,
            minimal,
            totally_geodesic,
            witnesses: ClassificationWitnesses {
                conformal_mixed,
                conformal_diag_difference,
                riemannian_diag_sum,
                minimal_trace_x: sum_x.abs(),
                minimal_trace_y: sum_y.abs(),
                totally_geodesic_max: tg_max,
                route_residual,
                scale,
                threshold,
            },
        }
    }

    /// Structural checks. The first measures the horizontal part of
    /// `[[V_a, V_b], H]` over all vertical pairs and both horizontal frame
    /// vectors. If `factors` partitions the vertical indices into bracket-
    /// closed blocks, the second measures cross-factor components of
    /// `[V_k, H]`.
    pub fn structural_checks(
        &self,
        tol: f64,
        factors: Option<&[Vec<usize>]>,
    ) -> Result<StructuralChecks> {
        let n = self.vert;
        let scale = self.lam.scale();
        let threshold = tol * scale * scale.max(1.0);
        let (xi, yi) = (n, n + 1);

        let mut double_max: f64 = 0.0;
        for a in 0..n {
            for b in (a + 1)..n {
                let w = self
                    .algebra
                    .bracket(&self.vertical_vector(a), &self.vertical_vector(b))
                    .expect("dimensions agree");
                for h in [self.x(), self.y()] {
                    let u = self.algebra.bracket(&w, &h).expect("dimensions agree");
                    let cx = self.eps_x() * self.metric.eval(&u, &self.x());
                    let cy = self.eps_y() * self.metric.eval(&u, &self.y());
                    double_max = double_max.max(cx.abs()).max(cy.abs());
                }
            }
        }

        let (cross_factor_max, cross_factor_pass) = if let Some(parts) = factors {
            let mut owner = vec![usize::MAX; n];
            for (f, part) in parts.iter().enumerate() {
                for &i in part {
                    if i >= n {
                        return Err(Error::IndexOutOfRange { index: i, dim: n });
                    }
                    if owner[i] != usize::MAX {
                        return Err(Error::InvalidParameter {
                            reason: format!("vertical index {i} appears in two factors"),
                        });
                    }
                    owner[i] = f;
                }
            }
            if owner.iter().any(|&f| f == usize::MAX) {
                return Err(Error::InvalidParameter {
                    reason: "factors must partition all vertical indices".into(),
                });
            }
            // Each factor must be closed under the bracket.
            for (f, part) in parts.iter().enumerate() {
                for (ai, &a) in part.iter().enumerate() {
                    for &b in part.iter().skip(ai + 1) {
                        for c in 0..n {
                            if owner[c] != f {
                                let w = self.lam.constant(a, b, c).abs();
                                if w > tol * scale {
                                    return Err(Error::FactorsNotClosed { factor: f, witness: w });
                                }
                            }
                        }
                    }
                }
            }
            let mut cross: f64 = 0.0;
            for part in parts {
                for &b in part {
                    for h in [xi, yi] {
                        for c in 0..n {
                            if owner[c] != owner[b] {
                                cross = cross.max(self.lam.constant(h, b, c).abs());
                            }
                        }
                    }
                }
            }
            (Some(cross), Some(cross <= tol * scale))
        } else {
            (None, None)
        };

        Ok(StructuralChecks {
            double_bracket_horizontal_max: double_max,
            double_bracket_pass: double_max <= threshold,
            cross_factor_max,
            cross_factor_pass,
            threshold,
        })
    }

    /// Residuals of the trace identity
    /// `trace(ad_X) = sum_i eps_i g([X, V_i], V_i) + eps_X g([X, X], X) + eps_Y g([X, Y], Y)`
    /// and its `Y` counterpart. The left side is the plain matrix trace of
    /// the adjoint map on the ambient algebra; the right side is assembled
    /// from frame projections.
    pub fn trace_identity_residuals(&self) -> (f64, f64) {
        let n = self.vert;
        let (xi, yi) = (n, n + 1);
        let residual = |h: usize, other: usize| {
            let hv: DVector<f64> = self.frame.column(h).into();
            let trace = self.algebra.ad(&hv).expect("dimensions agree").trace();
            let mut rhs = 0.0;
            for i in 0..n {
                // eps_i g([H, V_i], V_i) = lam^i_{Hi}.
                rhs += self.lam.constant(h, i, i);
            }
            rhs += self.lam.constant(h, h, h); // zero by antisymmetry
            rhs += self.lam.constant(h, other, other);
            (trace - rhs).abs()
        };
        (residual(xi, yi), residual(yi, xi))
    }
}

/// Outcome taxonomy for theorem instance checks. Premise failure makes no
/// claim; a verified instance has premises and conclusion holding; a
/// contradiction (premises hold, conclusion fails) is never silently
/// accepted by callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremOutcome {
    PremisesFail,
    VerifiedInstance,
    Contradiction,
}

/// Instance check for: a semisimple vertical subalgebra generating a
/// conformal foliation forces minimality.
#[derive(Debug, Clone)]
pub struct MinimalityTheoremReport {
    pub premise_subalgebra: bool,
    pub closure_residual: f64,
    pub premise_semisimple: SemisimplicityCheck,
    pub premise_conformal: bool,
    pub conclusion_minimal: bool,
    pub outcome: TheoremOutcome,
    pub classification: FoliationClassification,
}

/// Least-squares fit of the restricted metric against the negative Killing
/// form of the vertical subalgebra: `restrict(g) ~ c (-B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingFit {
    pub c: f64,
    pub residual: f64,
    pub threshold: f64,
    pub matches: bool,
}

/// Detection of a sign-flipped Cartan-Killing restriction: the operator
/// `A = (-B)^{-1} restrict(g)` squares to `c^2 I` exactly when the restricted
/// metric is one of the flipped metrics scaled by `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignFlipCheck {
    pub applicable: bool,
    pub matches: bool,
    pub c: f64,
    pub residual: f64,
    /// Largest `|x^i_i|` or `|y^i_i|` diagonal coefficient of the setup.
    pub max_diag_coefficient: f64,
    pub minimal: bool,
    pub outcome: TheoremOutcome,
}

/// Instance check for: with the vertical restriction induced by the negative
/// Killing form, a conformal foliation is totally geodesic. Also runs the
/// sign-flipped variant, whose conclusion is minimality.
#[derive(Debug, Clone)]
pub struct TotalGeodesicityTheoremReport {
    pub premise_subalgebra: bool,
    pub closure_residual: f64,
    pub premise_semisimple: SemisimplicityCheck,
    pub killing_fit: KillingFit,
    pub premise_conformal: bool,
    pub conclusion_totally_geodesic: bool,
    pub outcome: TheoremOutcome,
    pub sign_flip: SignFlipCheck,
    pub classification: FoliationClassification,
}

fn outcome(premises: bool, conclusion: bool) -> TheoremOutcome {
    match (premises, conclusion) {
        (false, _) => TheoremOutcome::PremisesFail,
        (true, true) => TheoremOutcome::VerifiedInstance,
        (true, false) => TheoremOutcome::Contradiction,
    }
}

/// Check one instance of the minimality statement on the span of the given
/// basis indices.
pub fn verify_theorem_minimal(
    algebra: &LieAlgebra,
    metric: &MetricTensor,
    vertical_indices: &[usize],
    tol: f64,
) -> Result<MinimalityTheoremReport> {
    let (vert_alg, closure_residual) = algebra.subalgebra(vertical_indices)?;
    let premise_subalgebra = closure_residual <= tol * algebra.scale();
    let premise_semisimple = vert_alg.is_semisimple(tol);
    let setup = FoliationSetup::adapted(algebra, metric, vertical_indices, tol)?;
    let classification = setup.classify(tol);
    let premise_conformal = classification.conformal;
    let conclusion_minimal = classification.minimal;
    let premises = premise_subalgebra && premise_semisimple.semisimple && premise_conformal;
    Ok(MinimalityTheoremReport {
        premise_subalgebra,
        closure_residual,
        premise_semisimple,
        premise_conformal,
        conclusion_minimal,
        outcome: outcome(premises, conclusion_minimal),
        classification,
    })
}

/// Check one instance of the total-geodesicity statement, including the
/// sign-flipped (minimality) variant.
pub fn verify_theorem_totally_geodesic(
    algebra: &LieAlgebra,
    metric: &MetricTensor,
    vertical_indices: &[usize],
    tol: f64,
) -> Result<TotalGeodesicityTheoremReport> {
    let (vert_alg, closure_residual) = algebra.subalgebra(vertical_indices)?;
    let premise_subalgebra = closure_residual <= tol * algebra.scale();
    let premise_semisimple = vert_alg.is_semisimple(tol);

    let basis: Vec<DVector<f64>> = vertical_indices
        .iter()
        .map(|&i| {
            let mut v = DVector::zeros(algebra.dim());
            v[i] = 1.0;
            v
        })
        .collect();
    let restricted = metric.restrict(&basis)?;
    let minus_b = -vert_alg.killing_form().matrix().clone();

    // Frobenius fit restrict(g) ~ c (-B).
    let denom = minus_b.dot(&minus_b);
    let gr_norm = restricted.matrix().norm();
    let killing_fit = if denom > 0.0 {
        let c = restricted.matrix().dot(&minus_b) / denom;
        let residual = (restricted.matrix() - &minus_b * c).norm();
        let threshold = tol * gr_norm.max(1.0);
        KillingFit {
            c,
            residual,
            threshold,
            matches: c > 0.0 && residual <= threshold,
        }
    } else {
        KillingFit {
            c: 0.0,
            residual: gr_norm,
            threshold: tol * gr_norm.max(1.0),
            matches: false,
        }
    };

    let setup = FoliationSetup::adapted(algebra, metric, vertical_indices, tol)?;
    let classification = setup.classify(tol);
    let premise_conformal = classification.conformal;
    let conclusion = classification.totally_geodesic;
    let premises = premise_subalgebra
        && premise_semisimple.semisimple
        && killing_fit.matches
        && premise_conformal;

    // Sign-flipped variant: restrict(g) = c * (-B . theta-like involution),
    // detected through A = (-B)^{-1} restrict(g) squaring to c^2 I.
    let coeff = setup.coefficients();
    let mut max_diag: f64 = 0.0;
    for i in 0..setup.vertical_dim() {
        max_diag = max_diag.max(coeff.x[(i, i)].abs()).max(coeff.y[(i, i)].abs());
    }
    let applicable = premise_subalgebra && premise_semisimple.semisimple;
    let sign_flip = if let (true, Some(b_inv)) = (applicable, minus_b.clone().try_inverse()) {
        let a = b_inv * restricted.matrix();
        let a2 = &a * &a;
        let n = a2.nrows() as f64;
        let c2 = a2.trace() / n;
        let residual = (&a2 - DMatrix::identity(a2.nrows(), a2.ncols()) * c2).amax();
        let matches = c2 > 0.0 && residual <= tol * a2.amax().max(1.0);
        let flip_premises = matches && premise_conformal;
        SignFlipCheck {
            applicable: true,
            matches,
            c: if c2 > 0.0 { c2.sqrt() } else { 0.0 },
            residual,
            max_diag_coefficient: max_diag,
            minimal: classification.minimal,
            outcome: outcome(flip_premises, classification.minimal),
        }
    } else {
        SignFlipCheck {
            applicable: false,
            matches: false,
            c: 0.0,
            residual: f64::INFINITY,
            max_diag_coefficient: max_diag,
            minimal: classification.minimal,
            outcome: TheoremOutcome::PremisesFail,
        }
    };

    Ok(TotalGeodesicityTheoremReport {
        premise_subalgebra,
        closure_residual,
        premise_semisimple,
        killing_fit,
        premise_conformal,
        conclusion_totally_geodesic: conclusion,
        outcome: outcome(premises, conclusion),
        sign_flip,
        classification,
    })
}
