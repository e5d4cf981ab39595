use crate::error::{Error, Result};

/// Dense row-major `f64` tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn zeros(shape: &[usize]) -> Self {
        Tensor {
            shape: shape.to_vec(),
            data: vec![0.0; shape.iter().product()],
        }
    }

    pub fn filled(shape: &[usize], value: f64) -> Self {
        Tensor {
            shape: shape.to_vec(),
            data: vec![value; shape.iter().product()],
        }
    }

    pub fn from_vec(shape: &[usize], data: Vec<f64>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if data.len() != expected {
            return Err(Error::Shape(format!(
                "{} values for shape {shape:?} ({expected} expected)",
                data.len()
            )));
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Row `r` of a matrix.
    pub fn row(&self, r: usize) -> &[f64] {
        let cols = self.shape[1];
        &self.data[r * cols..(r + 1) * cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        let cols = self.shape[1];
        &mut self.data[r * cols..(r + 1) * cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        debug_assert_eq!(self.shape, other.shape);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn scale(&mut self, k: f64) {
        for a in &mut self.data {
            *a *= k;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `y += a·x`.
#[inline]
pub(crate) fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// `z[j] += Σ_k x[k]·w[k·cols + j]` for row-major `w`.
///
/// Columns are processed in register-sized blocks so each partial sum stays
/// in registers across the whole reduction. Rows are accumulated in order,
/// matching repeated [`axpy`] bit for bit. On x86-64 with AVX2 a wider
/// build of the same loop is selected at runtime; it multiplies and adds
/// separately, so results do not depend on the path taken.
#[inline]
pub(crate) fn gemv_acc(x: &[f64], w: &[f64], cols: usize, z: &mut [f64]) {
    assert!(w.len() >= x.len() * cols && z.len() == cols);
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the CPU supports AVX2, checked just above.
            unsafe { gemv_avx2(x, w, cols, z) };
            return;
        }
    }
    gemv_body(x, w, cols, z);
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn gemv_avx2(x: &[f64], w: &[f64], cols: usize, z: &mut [f64]) {
    gemv_body(x, w, cols, z);
}

#[inline(always)]
fn gemv_body(x: &[f64], w: &[f64], cols: usize, z: &mut [f64]) {
    const B: usize = 8;
    let blocks = cols / B;
    for jb in 0..blocks {
        let j = jb * B;
        let mut acc: [f64; B] = z[j..j + B].try_into().expect("block");
        for (row, &xk) in w.chunks_exact(cols).zip(x) {
            let r: &[f64; B] = row[j..j + B].try_into().expect("block");
            for i in 0..B {
                acc[i] += xk * r[i];
            }
        }
        z[j..j + B].copy_from_slice(&acc);
    }
    for jj in blocks * B..cols {
        let mut acc = z[jj];
        for (row, &xk) in w.chunks_exact(cols).zip(x) {
            acc += xk * row[jj];
        }
        z[jj] = acc;
    }
}

/// Transpose of a row-major `rows × cols` matrix.
pub(crate) fn transpose(m: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut out = vec![0.0; m.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = m[r * cols + c];
        }
    }
    out
}

/// Dot product with sixteen independent accumulators. The association
/// order is fixed, so results are reproducible, and the lanes keep the
/// FMA pipeline full.
#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 16];
    let ca = a.chunks_exact(16);
    let cb = b.chunks_exact(16);
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (x, y) in ca.zip(cb) {
        for k in 0..16 {
            acc[k] += x[k] * y[k];
        }
    }
    let mut s = 0.0;
    for pair in acc.chunks_exact(2) {
        s += pair[0] + pair[1];
    }
    s + tail
}
