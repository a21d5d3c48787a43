//! Centred periodic difference operators.

use crate::grid::{Grid, ScalarField, VectorField};

/// Accuracy order of the centred first-derivative stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StencilOrder {
    Second,
    #[default]
    Fourth,
}

impl StencilOrder {
    pub fn from_order(order: u32) -> Option<Self> {
        match order {
            2 => Some(Self::Second),
            4 => Some(Self::Fourth),
            _ => None,
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            Self::Second => 2,
            Self::Fourth => 4,
        }
    }

    /// Modified wavenumber: the stencil applied to `exp(i k x)` returns `i k_h exp(i k x)`.
    pub fn modified_wavenumber(&self, k: f64, h: f64) -> f64 {
        match self {
            Self::Second => (k * h).sin() / h,
            Self::Fourth => (8.0 * (k * h).sin() - (2.0 * k * h).sin()) / (6.0 * h),
        }
    }
}

/// Base offsets of a grid row and of its neighbouring rows.
struct Row {
    here: usize,
    y: [usize; 4],
    z: [usize; 4],
}

/// First-derivative operator on a periodic grid with precomputed neighbour tables.
#[derive(Debug, Clone)]
pub struct Stencil {
    grid: Grid,
    order: StencilOrder,
    inv_h: f64,
    plus1: Vec<usize>,
    plus2: Vec<usize>,
    minus1: Vec<usize>,
    minus2: Vec<usize>,
}

impl Stencil {
    pub fn new(grid: Grid, order: StencilOrder) -> Self {
        let n = grid.n() as isize;
        let table = |shift: isize| (0..n).map(|i| (i + shift).rem_euclid(n) as usize).collect();
        Self {
            grid,
            order,
            inv_h: 1.0 / grid.h(),
            plus1: table(1),
            plus2: table(2),
            minus1: table(-1),
            minus2: table(-2),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn order(&self) -> StencilOrder {
        self.order
    }

    /// Derivative of `f` along `axis` at node `(x, y, z)`.
    #[inline]
    pub fn diff(&self, f: &[f64], axis: usize, x: usize, y: usize, z: usize) -> f64 {
        let n = self.grid.n();
        let at = |x: usize, y: usize, z: usize| (z * n + y) * n + x;
        let (p1, m1, p2, m2) = match axis {
            0 => (at(self.plus1[x], y, z), at(self.minus1[x], y, z), at(self.plus2[x], y, z), at(self.minus2[x], y, z)),
            1 => (at(x, self.plus1[y], z), at(x, self.minus1[y], z), at(x, self.plus2[y], z), at(x, self.minus2[y], z)),
            _ => (at(x, y, self.plus1[z]), at(x, y, self.minus1[z]), at(x, y, self.plus2[z]), at(x, y, self.minus2[z])),
        };
        self.combine(f[p1], f[m1], f[p2], f[m2])
    }

    /// Derivative of a scalar array along `axis`, written into `out`.
    pub fn derivative_into(&self, f: &[f64], axis: usize, out: &mut [f64]) {
        let n = self.grid.n();
        crate::par::slabs([out], n * n, |z, [slab]| {
            for y in 0..n {
                let row = self.row(y, z);
                self.row_derivative(f, &row, axis, &mut slab[y * n..(y + 1) * n]);
            }
        });
    }

    /// Derivative of a scalar array along `axis`.
    pub fn derivative(&self, f: &[f64], axis: usize) -> Vec<f64> {
        let mut out = vec![0.0; f.len()];
        self.derivative_into(f, axis, &mut out);
        out
    }

    /// Row offsets `(z, y +- 1, y +- 2)` and `(z +- 1, z +- 2, y)` used by the row kernels.
    #[inline]
    fn row(&self, y: usize, z: usize) -> Row {
        let n = self.grid.n();
        let base = |y: usize, z: usize| (z * n + y) * n;
        Row {
            here: base(y, z),
            y: [base(self.plus1[y], z), base(self.minus1[y], z), base(self.plus2[y], z), base(self.minus2[y], z)],
            z: [base(y, self.plus1[z]), base(y, self.minus1[z]), base(y, self.plus2[z]), base(y, self.minus2[z])],
        }
    }

    #[inline(always)]
    fn combine(&self, p1: f64, m1: f64, p2: f64, m2: f64) -> f64 {
        match self.order {
            StencilOrder::Second => 0.5 * (p1 - m1) * self.inv_h,
            StencilOrder::Fourth => (8.0 * (p1 - m1) - (p2 - m2)) * (self.inv_h / 12.0),
        }
    }

    #[inline(always)]
    fn row_diff(&self, f: &[f64], row: &Row, axis: usize, x: usize) -> f64 {
        match axis {
            0 => self.combine(
                f[row.here + self.plus1[x]],
                f[row.here + self.minus1[x]],
                f[row.here + self.plus2[x]],
                f[row.here + self.minus2[x]],
            ),
            1 => self.combine(f[row.y[0] + x], f[row.y[1] + x], f[row.y[2] + x], f[row.y[3] + x]),
            _ => self.combine(f[row.z[0] + x], f[row.z[1] + x], f[row.z[2] + x], f[row.z[3] + x]),
        }
    }

    /// Derivative along `axis` of the row `(., y, z)` written into `out` (length `n`).
    /// Same arithmetic as [`Stencil::diff`], arranged so the inner loops vectorise.
    fn row_derivative(&self, f: &[f64], row: &Row, axis: usize, out: &mut [f64]) {
        let n = self.grid.n();
        let scale = match self.order {
            StencilOrder::Second => 0.5 * self.inv_h,
            StencilOrder::Fourth => self.inv_h / 12.0,
        };
        let fourth = self.order == StencilOrder::Fourth;
        if axis == 0 {
            let r = &f[row.here..row.here + n];
            for x in [0, 1, n - 2, n - 1] {
                out[x] = self.row_diff(f, row, 0, x);
            }
            let inner = &mut out[2..n - 2];
            let (p1, m1, p2, m2) = (&r[3..n - 1], &r[1..n - 3], &r[4..], &r[..n - 4]);
            if fourth {
                for ((((o, a), b), c), d) in inner.iter_mut().zip(p1).zip(m1).zip(p2).zip(m2) {
                    *o = (8.0 * (a - b) - (c - d)) * scale;
                }
            } else {
                for ((o, a), b) in inner.iter_mut().zip(p1).zip(m1) {
                    *o = 0.5 * (a - b) * self.inv_h;
                }
            }
            return;
        }
        let offs = if axis == 1 { row.y } else { row.z };
        let sl = |o: usize| &f[o..o + n];
        let (p1, m1, p2, m2) = (sl(offs[0]), sl(offs[1]), sl(offs[2]), sl(offs[3]));
        if fourth {
            for ((((o, a), b), c), d) in out.iter_mut().zip(p1).zip(m1).zip(p2).zip(m2) {
                *o = (8.0 * (a - b) - (c - d)) * scale;
            }
        } else {
            for ((o, a), b) in out.iter_mut().zip(p1).zip(m1) {
                *o = 0.5 * (a - b) * self.inv_h;
            }
        }
    }

    /// `factor * curl_h(v)` written into `out`.
    pub fn curl_into(&self, v: &VectorField, factor: f64, out: &mut VectorField) {
        let n = self.grid.n();
        let [v0, v1, v2] = v.components();
        let [o0, o1, o2] = out.components_mut();
        crate::par::slabs([o0, o1, o2], n * n, |z, [a, b, c]| {
            let mut buf = vec![0.0; 2 * n];
            let (p, q) = buf.split_at_mut(n);
            for y in 0..n {
                let row = self.row(y, z);
                let k = y * n..(y + 1) * n;
                for (target, (fp, ap), (fq, aq)) in [(&mut *a, (v2, 1), (v1, 2)), (&mut *b, (v0, 2), (v2, 0)), (&mut *c, (v1, 0), (v0, 1))] {
                    self.row_derivative(fp, &row, ap, p);
                    self.row_derivative(fq, &row, aq, q);
                    for ((o, x), y) in target[k.clone()].iter_mut().zip(p.iter()).zip(q.iter()) {
                        *o = factor * (x - y);
                    }
                }
            }
        });
    }

    /// Discrete curl.
    pub fn curl(&self, v: &VectorField) -> VectorField {
        let mut out = VectorField::zeros(self.grid);
        self.curl_into(v, 1.0, &mut out);
        out
    }

    /// Discrete divergence.
    pub fn div(&self, v: &VectorField) -> ScalarField {
        let n = self.grid.n();
        let [v0, v1, v2] = v.components();
        let mut out = ScalarField::zeros(self.grid);
        crate::par::slabs([out.data_mut()], n * n, |z, [slab]| {
            for y in 0..n {
                let row = self.row(y, z);
                for x in 0..n {
                    slab[y * n + x] =
                        self.row_diff(v0, &row, 0, x) + self.row_diff(v1, &row, 1, x) + self.row_diff(v2, &row, 2, x);
                }
            }
        });
        out
    }
}

/// Discrete curl with the given stencil order.
pub fn curl_h(v: &VectorField, order: StencilOrder) -> VectorField {
    Stencil::new(*v.grid(), order).curl(v)
}

/// Discrete divergence with the given stencil order.
pub fn div_h(v: &VectorField, order: StencilOrder) -> ScalarField {
    Stencil::new(*v.grid(), order).div(v)
}
