use super::{BandedCholesky, GammaData, PressureField, PressureGrid, RobinProblemData};
use crate::error::{Error, Result};
use crate::model::{ProblemParams, SineBasis};
use crate::scalar::Real;

/// Relative residual accepted by [`solve_robin_fd`] unless told otherwise.
pub const DEFAULT_FD_TOLERANCE: f64 = 1e-10;

const MAX_REFINEMENTS: usize = 8;

/// Second-order finite-difference discretization of the Robin pressure
/// problem, factored once and reusable for many right-hand sides.
///
/// Unknowns are every node with `0 < i < nz - 1` (inlet/outlet columns are
/// Dirichlet, corners included). The axis row uses a mirrored ghost node,
/// the wall row a ghost node eliminated through the Robin condition. Both
/// boundary rows are halved so the assembled operator is symmetric; the
/// negated system is an SPD M-matrix and is factored by banded Cholesky.
#[derive(Debug, Clone)]
pub struct RobinFdSolver<T> {
    grid: PressureGrid<T>,
    alpha: T,
    chol: BandedCholesky<T>,
}

impl<T: Real> RobinFdSolver<T> {
    pub fn new(params: &ProblemParams<T>, grid: PressureGrid<T>) -> Result<Self> {
        let alpha = params.mass_ratio();
        if !(alpha > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "rho_s h / rho_f",
                value: format!("{alpha}"),
                allowed: "positive mass ratio for the Robin condition",
            });
        }
        let nr = grid.nr;
        let n = (grid.nz - 2) * nr;
        let op = Stencil::new(&grid, alpha);
        let chol = BandedCholesky::factor(n, nr, |row, col| op.entry(row, col))?;
        Ok(Self { grid, alpha, chol })
    }

    pub fn grid(&self) -> &PressureGrid<T> {
        &self.grid
    }

    fn unknowns(&self) -> usize {
        (self.grid.nz - 2) * self.grid.nr
    }

    fn rhs(&self, wall: &[T], inlet: T, outlet: T) -> Vec<T> {
        let (nz, nr) = (self.grid.nz, self.grid.nr);
        let op = Stencil::new(&self.grid, self.alpha);
        let mut b = vec![T::zero(); self.unknowns()];
        for i in 1..nz - 1 {
            for j in 0..nr {
                let mut v = T::zero();
                if i == 1 {
                    v = v + op.weight(j) * op.cz * inlet;
                }
                if i == nz - 2 {
                    v = v + op.weight(j) * op.cz * outlet;
                }
                if j == nr - 1 {
                    v = v + op.robin * wall[i];
                }
                b[(i - 1) * nr + j] = v;
            }
        }
        b
    }

    /// Solves for the full field and returns it with its wall trace.
    ///
    /// `tol` bounds the relative residual
    /// `||b - K x||_inf / (||K||_inf ||x||_inf + ||b||_inf)`; iterative
    /// refinement is applied on top of the direct solve when needed.
    pub fn solve(&self, data: &RobinProblemData<T>, tol: T) -> Result<(PressureField<T>, Vec<T>)> {
        let nz = self.grid.nz;
        let wall: Vec<T> = match &data.gamma {
            GammaData::Trace(v) => {
                if v.len() != nz {
                    return Err(Error::DimensionMismatch {
                        expected: nz,
                        got: v.len(),
                    });
                }
                v.clone()
            }
            GammaData::Modal(m) => {
                let l = self.grid.length;
                self.grid.z_nodes().iter().map(|&z| m.eval(z, l)).collect()
            }
        };
        if wall.iter().any(|v| !v.is_finite()) || !data.inlet.is_finite() || !data.outlet.is_finite() {
            return Err(Error::Invalid("pressure boundary data must be finite".into()));
        }
        let b = self.rhs(&wall, data.inlet, data.outlet);
        let op = Stencil::new(&self.grid, self.alpha);
        let mut x = b.clone();
        self.chol.solve_in_place(&mut x);

        let b_norm = b.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let mut iterations = 0;
        loop {
            let mut r = op.residual(&b, &x);
            let x_norm = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
            let scale = op.norm_inf() * x_norm + b_norm;
            let res = r.iter().fold(T::zero(), |m, v| m.max(v.abs()));
            let rel = if scale > T::zero() { res / scale } else { T::zero() };
            if rel <= tol {
                break;
            }
            if iterations == MAX_REFINEMENTS || !rel.is_finite() {
                return Err(Error::SolverNonConvergence {
                    residual: rel.to_f64_lossy(),
                    iterations,
                    tolerance: tol.to_f64_lossy(),
                });
            }
            self.chol.solve_in_place(&mut r);
            for (xi, di) in x.iter_mut().zip(&r) {
                *xi = *xi + *di;
            }
            iterations += 1;
        }

        let nr = self.grid.nr;
        let mut field = PressureField::zeros(self.grid);
        for j in 0..nr {
            field.set(0, j, data.inlet);
            field.set(nz - 1, j, data.outlet);
        }
        for i in 1..nz - 1 {
            for j in 0..nr {
                field.set(i, j, x[(i - 1) * nr + j]);
            }
        }
        let trace = field.wall_trace();
        Ok((field, trace))
    }
}

/// Entries of the negated, symmetrized 5-point operator.
struct Stencil<T> {
    nz: usize,
    nr: usize,
    /// `1 / hz^2`
    cz: T,
    /// `1 / hr^2`
    cr: T,
    /// `1 / (alpha hr)`
    robin: T,
}

impl<T: Real> Stencil<T> {
    fn new(grid: &PressureGrid<T>, alpha: T) -> Self {
        let hz = grid.hz();
        let hr = grid.hr();
        Self {
            nz: grid.nz,
            nr: grid.nr,
            cz: T::one() / (hz * hz),
            cr: T::one() / (hr * hr),
            robin: T::one() / (alpha * hr),
        }
    }

    #[inline]
    fn weight(&self, j: usize) -> T {
        if j == 0 || j == self.nr - 1 {
            T::lit(0.5)
        } else {
            T::one()
        }
    }

    fn diag(&self, j: usize) -> T {
        let two = T::lit(2.0);
        let radial = if j == 0 {
            self.cr
        } else if j == self.nr - 1 {
            self.cr + self.robin
        } else {
            two * self.cr
        };
        self.weight(j) * two * self.cz + radial
    }

    /// Lower-band entry `K[row][col]`, `col <= row`.
    fn entry(&self, row: usize, col: usize) -> T {
        let nr = self.nr;
        let (i, j) = (row / nr, row % nr);
        if row == col {
            return self.diag(j);
        }
        let d = row - col;
        if d == nr {
            // axial neighbour in the same radial row
            -self.weight(j) * self.cz
        } else if d == 1 && j > 0 && col / nr == i {
            -self.cr
        } else {
            T::zero()
        }
    }

    fn apply(&self, x: &[T]) -> Vec<T> {
        let nr = self.nr;
        let ni = self.nz - 2;
        let mut y = vec![T::zero(); x.len()];
        for i in 0..ni {
            for j in 0..nr {
                let k = i * nr + j;
                let mut v = self.diag(j) * x[k];
                let wz = self.weight(j) * self.cz;
                if i > 0 {
                    v = v - wz * x[k - nr];
                }
                if i + 1 < ni {
                    v = v - wz * x[k + nr];
                }
                if j > 0 {
                    v = v - self.cr * x[k - 1];
                }
                if j + 1 < nr {
                    v = v - self.cr * x[k + 1];
                }
                y[k] = v;
            }
        }
        y
    }

    fn residual(&self, b: &[T], x: &[T]) -> Vec<T> {
        self.apply(x).into_iter().zip(b).map(|(kx, &bi)| bi - kx).collect()
    }

    fn norm_inf(&self) -> T {
        let two = T::lit(2.0);
        (0..self.nr)
            .map(|j| self.diag(j) + two * self.weight(j) * self.cz + two * self.cr)
            .fold(T::zero(), |m, v| m.max(v))
    }
}

/// One-shot FD solve; see [`RobinFdSolver::solve`].
pub fn solve_robin_fd<T: Real>(
    data: &RobinProblemData<T>,
    params: &ProblemParams<T>,
    grid: PressureGrid<T>,
    tol: T,
) -> Result<(PressureField<T>, Vec<T>)> {
    RobinFdSolver::new(params, grid)?.solve(data, tol)
}

/// Small dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |s, &v| s + v * v).sqrt()
    }

    /// `||M - M^T||_F / ||M||_F`
    pub fn asymmetry(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self.get(i, j) - self.get(j, i);
                s = s + d * d;
            }
        }
        s.sqrt() / self.frobenius()
    }

    pub fn symmetrized(&self) -> Self {
        let mut out = Self::zeros(self.n);
        let half = T::lit(0.5);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, half * (self.get(i, j) + self.get(j, i)));
            }
        }
        out
    }

    /// Dense Cholesky attempt on the symmetric part.
    pub fn is_positive_definite(&self) -> bool {
        let s = self.symmetrized();
        BandedCholesky::factor(self.n, self.n.saturating_sub(1), |i, j| s.get(i, j)).is_ok()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

/// Discrete Robin-trace operator in the sine basis: column `k` holds the
/// sine coefficients of the FD wall trace for datum `e_k` with homogeneous
/// inlet/outlet data.
pub fn discrete_s_matrix<T: Real>(
    params: &ProblemParams<T>,
    grid: PressureGrid<T>,
    modes: usize,
) -> Result<DenseMatrix<T>> {
    let basis = SineBasis::new(grid.nz, modes)?;
    let solver = RobinFdSolver::new(params, grid)?;
    let mut m = DenseMatrix::zeros(modes);
    let tol = T::lit(DEFAULT_FD_TOLERANCE);
    for k in 1..=modes {
        let e = crate::model::ModalVector::unit(modes, k);
        let wall = basis.synthesize(&e)?;
        let data = RobinProblemData::homogeneous(GammaData::Trace(wall));
        let (_, trace) = solver.solve(&data, tol)?;
        let col = basis.analyze(&trace)?;
        for i in 0..modes {
            m.set(i, k - 1, col[i]);
        }
    }
    Ok(m)
}
