use crate::scalar::Real;

/// Tensor grid over `(0, L) x (0, R)`, endpoints included in both directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureGrid<T> {
    pub nz: usize,
    pub nr: usize,
    pub length: T,
    pub radius: T,
}

impl<T: Real> PressureGrid<T> {
    pub fn new(nz: usize, nr: usize, length: T, radius: T) -> Self {
        assert!(nz >= 3 && nr >= 3, "pressure grid needs at least 3x3 nodes");
        Self {
            nz,
            nr,
            length,
            radius,
        }
    }

    #[inline]
    pub fn hz(&self) -> T {
        self.length / T::from_usize_lossy(self.nz - 1)
    }

    #[inline]
    pub fn hr(&self) -> T {
        self.radius / T::from_usize_lossy(self.nr - 1)
    }

    #[inline]
    pub fn z(&self, i: usize) -> T {
        if i == self.nz - 1 {
            self.length
        } else {
            self.hz() * T::from_usize_lossy(i)
        }
    }

    #[inline]
    pub fn r(&self, j: usize) -> T {
        if j == self.nr - 1 {
            self.radius
        } else {
            self.hr() * T::from_usize_lossy(j)
        }
    }

    pub fn z_nodes(&self) -> Vec<T> {
        (0..self.nz).map(|i| self.z(i)).collect()
    }
}

/// Nodal pressure values, axial index major: `values[i * nr + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureField<T> {
    pub grid: PressureGrid<T>,
    pub values: Vec<T>,
}

impl<T: Real> PressureField<T> {
    pub fn zeros(grid: PressureGrid<T>) -> Self {
        Self {
            values: vec![T::zero(); grid.nz * grid.nr],
            grid,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[i * self.grid.nr + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.values[i * self.grid.nr + j] = v;
    }

    /// Samples on the wall `r = R`.
    pub fn wall_trace(&self) -> Vec<T> {
        (0..self.grid.nz).map(|i| self.at(i, self.grid.nr - 1)).collect()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> T {
        self.values.iter().fold(T::infinity(), |m, &v| m.min(v))
    }

    /// Infinity norm of the 5-point Laplacian at interior nodes.
    pub fn interior_laplacian_residual(&self) -> T {
        let (nz, nr) = (self.grid.nz, self.grid.nr);
        let (hz2, hr2) = (self.grid.hz().powi(2), self.grid.hr().powi(2));
        let mut res = T::zero();
        for i in 1..nz - 1 {
            for j in 1..nr - 1 {
                let p = self.at(i, j);
                let two = T::lit(2.0);
                let lap = (self.at(i + 1, j) - two * p + self.at(i - 1, j)) / hz2
                    + (self.at(i, j + 1) - two * p + self.at(i, j - 1)) / hr2;
                res = res.max(lap.abs());
            }
        }
        res
    }
}
