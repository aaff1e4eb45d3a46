//! Finite Blaschke-Potapov products: construction, boundary evaluation,
//! exact Taylor coefficients and determinant degree.
//!
//! A product is kept in factored form `v * prod_m (b_m(z) R_m + (I - R_m))`
//! with Blaschke factors `b_m(z) = (z - alpha_m) / (1 - conj(alpha_m) z)`
//! and orthogonal projections `R_m`. Coefficient extraction convolves the
//! factor power series exactly; no rational normal form is ever computed.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cmatrix::{self, c64, CMatrix};
use crate::error::{Error, Result};

/// Margin keeping Blaschke zeros strictly inside the disk.
pub const ALPHA_BOUNDARY_MARGIN: f64 = 1e-12;
/// Construction tolerance for projections and the leading unitary.
pub const CONSTRUCTION_TOL: f64 = 1e-10;
/// Allowed deviation of a projection trace from an integer.
pub const TRACE_INTEGER_TOL: f64 = 1e-6;

/// One elementary factor `b(z) R + (I - R)`.
#[derive(Clone, Debug)]
pub struct BlaschkePotapovFactor {
    alpha: Complex64,
    projection: CMatrix,
}

impl BlaschkePotapovFactor {
    /// Validate and build a factor. The zero must satisfy
    /// `|alpha| < 1 - 1e-12` and the projection must be Hermitian and
    /// idempotent within `1e-10`.
    pub fn new(alpha: Complex64, projection: CMatrix) -> Result<Self> {
        if alpha.norm() >= 1.0 - ALPHA_BOUNDARY_MARGIN {
            return Err(Error::AlphaOnBoundary(alpha.norm()));
        }
        if projection.nrows() != projection.ncols() {
            return Err(Error::DimensionMismatch(
                "projection must be square".into(),
            ));
        }
        let dev = cmatrix::projection_deviation(&projection);
        if dev > CONSTRUCTION_TOL {
            return Err(Error::NotProjection(dev));
        }
        Ok(BlaschkePotapovFactor { alpha, projection })
    }

    /// The Blaschke zero.
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// The range projection.
    pub fn projection(&self) -> &CMatrix {
        &self.projection
    }

    /// Scalar Blaschke factor value at a point of the closed disk boundary.
    pub fn blaschke_value(&self, z: Complex64) -> Complex64 {
        (z - self.alpha) / (c64(1.0, 0.0) - self.alpha.conj() * z)
    }

    /// Taylor coefficient `b_k` of the scalar factor:
    /// `b_0 = -alpha`, `b_k = (1 - |alpha|^2) conj(alpha)^{k-1}` for `k >= 1`.
    pub fn scalar_taylor(&self, k: usize) -> Complex64 {
        if k == 0 {
            -self.alpha
        } else {
            let abar = self.alpha.conj();
            (c64(1.0, 0.0) - c64(self.alpha.norm_sqr(), 0.0)) * abar.powu((k - 1) as u32)
        }
    }

    fn matrix_taylor(&self, k: usize) -> CMatrix {
        let n = self.projection.nrows();
        let b = self.scalar_taylor(k);
        let mut m = self.projection.map(|z| z * b);
        if k == 0 {
            m += CMatrix::identity(n, n) - &self.projection;
        }
        m
    }
}

/// Ordered finite Blaschke-Potapov product with leading constant unitary.
#[derive(Clone, Debug)]
pub struct BlaschkePotapovProduct {
    n: usize,
    unitary: CMatrix,
    factors: Vec<BlaschkePotapovFactor>,
}

impl BlaschkePotapovProduct {
    /// Validate and build a product; factor order is preserved exactly.
    pub fn new(unitary: CMatrix, factors: Vec<BlaschkePotapovFactor>) -> Result<Self> {
        if unitary.nrows() != unitary.ncols() || unitary.nrows() == 0 {
            return Err(Error::DimensionMismatch(
                "leading unitary must be square and nonempty".into(),
            ));
        }
        let n = unitary.nrows();
        let dev = cmatrix::unitary_deviation(&unitary);
        if dev > CONSTRUCTION_TOL {
            return Err(Error::NotUnitary(dev));
        }
        for f in &factors {
            cmatrix::expect_square(&f.projection, n, "factor projection")?;
        }
        Ok(BlaschkePotapovProduct {
            n,
            unitary,
            factors,
        })
    }

    /// Constant product `Q = v`.
    pub fn constant(unitary: CMatrix) -> Result<Self> {
        BlaschkePotapovProduct::new(unitary, Vec::new())
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// The leading constant unitary.
    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    /// The ordered factor list.
    pub fn factors(&self) -> &[BlaschkePotapovFactor] {
        &self.factors
    }

    /// Evaluate `Q(e^{i theta})`; the result is unitary to roundoff.
    pub fn evaluate(&self, theta: f64) -> CMatrix {
        let z = Complex64::from_polar(1.0, theta);
        self.evaluate_at(z)
    }

    /// Evaluate at an arbitrary point of the closed unit disk.
    pub fn evaluate_at(&self, z: Complex64) -> CMatrix {
        let mut acc = self.unitary.clone();
        for f in &self.factors {
            let b = f.blaschke_value(z);
            let n = self.n;
            let factor = f.projection.map(|p| p * b) + (CMatrix::identity(n, n) - &f.projection);
            acc *= factor;
        }
        acc
    }

    /// Taylor coefficients `K_0 .. K_upto`, exact convolution of the
    /// factor power series (truncation does not disturb lower indices).
    pub fn taylor_coeffs(&self, upto: usize) -> Vec<CMatrix> {
        let n = self.n;
        let mut acc: Vec<CMatrix> = Vec::with_capacity(upto + 1);
        acc.push(CMatrix::identity(n, n));
        for _ in 0..upto {
            acc.push(CMatrix::zeros(n, n));
        }
        for f in &self.factors {
            let series: Vec<CMatrix> = (0..=upto).map(|k| f.matrix_taylor(k)).collect();
            let mut next = vec![CMatrix::zeros(n, n); upto + 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in series.iter().take(upto + 1 - i).enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc.iter_mut().for_each(|m| *m = &self.unitary * &*m);
        acc
    }

    /// Degree of the scalar finite Blaschke product `det Q`, computed as
    /// the sum of projection ranks (traces rounded to integers).
    pub fn deg_det(&self) -> Result<usize> {
        let mut total = 0usize;
        for f in &self.factors {
            let trace: Complex64 = f.projection.trace();
            let rounded = trace.re.round();
            if (trace.re - rounded).abs() > TRACE_INTEGER_TOL || trace.im.abs() > TRACE_INTEGER_TOL
            {
                return Err(Error::TraceNotNearInteger(trace.re));
            }
            total += rounded as usize;
        }
        Ok(total)
    }

    /// Max deviation of `Q(e^{i theta})† Q(e^{i theta})` from the identity
    /// over a uniform grid. Valid products stay below `1e-8`.
    pub fn verify_inner(&self, grid: usize) -> Result<f64> {
        if grid < 16 {
            return Err(Error::GridTooSmall { need: 16, got: grid });
        }
        let id = CMatrix::identity(self.n, self.n);
        let mut worst = 0.0f64;
        for k in 0..grid {
            let theta = std::f64::consts::TAU * k as f64 / grid as f64;
            let q = self.evaluate(theta);
            worst = worst.max(cmatrix::max_abs(&(q.adjoint() * q - &id)));
        }
        Ok(worst)
    }

    /// Winding number of `det Q` around the origin over a sampling grid;
    /// equals [`Self::deg_det`] for valid products.
    pub fn det_winding(&self, grid: usize) -> i64 {
        let samples: Vec<Complex64> = (0..grid)
            .map(|k| {
                let theta = std::f64::consts::TAU * k as f64 / grid as f64;
                self.evaluate(theta).determinant()
            })
            .collect();
        cmatrix::winding_number(&samples)
    }
}

impl Serialize for BlaschkePotapovProduct {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct FactorRepr {
            alpha: [f64; 2],
            projection: Vec<Vec<[f64; 2]>>,
        }
        let mut s = serializer.serialize_struct("BlaschkePotapovProduct", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("unitary", &crate::io::matrix_to_rows(&self.unitary))?;
        let factors: Vec<FactorRepr> = self
            .factors
            .iter()
            .map(|f| FactorRepr {
                alpha: [f.alpha.re, f.alpha.im],
                projection: crate::io::matrix_to_rows(&f.projection),
            })
            .collect();
        s.serialize_field("factors", &factors)?;
        s.end()
    }
}
