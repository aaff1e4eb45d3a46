//! Exact arithmetic on matrix-valued trigonometric (Laurent) polynomials.
//!
//! A symbol is stored as a finite map from Fourier index `j` to its `n x n`
//! coefficient matrix. All algebra here (adjoint, tilde, products, splits)
//! is performed on coefficients, never on samples, so analyticity questions
//! reduce to exact comparisons up to floating rounding. Evaluation on the
//! circle and the certified sup-norm bracket are the only sampled routines.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::cmatrix::{self, c64, CMatrix};
use crate::error::{Error, Result};

/// A matrix-valued Laurent polynomial `sum_j A_j e^{ij theta}`.
///
/// Normal form: only nonzero coefficient matrices are stored; the zero
/// polynomial stores nothing. Degree queries always reflect the stripped
/// form, and the index range is treated as if padded so that
/// `lo() <= 0 <= hi()` always holds.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLaurentPoly {
    n: usize,
    coeffs: BTreeMap<i64, CMatrix>,
}

impl MatrixLaurentPoly {
    /// The zero polynomial of dimension `n`.
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        MatrixLaurentPoly {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// Build from `(index, coefficient)` pairs. Duplicate indices and
    /// wrongly sized matrices are rejected; zero matrices are stripped.
    pub fn from_coeffs(
        n: usize,
        pairs: impl IntoIterator<Item = (i64, CMatrix)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("symbol", "matrix dimension must be positive"));
        }
        let mut coeffs = BTreeMap::new();
        for (j, m) in pairs {
            cmatrix::expect_square(&m, n, "coefficient")?;
            if coeffs.contains_key(&j) {
                return Err(Error::invalid(
                    "symbol",
                    format!("duplicate Fourier index {j}"),
                ));
            }
            if m.iter().any(|z| z.norm_sqr() != 0.0) {
                coeffs.insert(j, m);
            }
        }
        Ok(MatrixLaurentPoly { n, coeffs })
    }

    /// Single-coefficient symbol `A z^j`.
    pub fn monomial(j: i64, a: CMatrix) -> Self {
        let n = a.nrows();
        assert_eq!(a.nrows(), a.ncols(), "monomial coefficient must be square");
        MatrixLaurentPoly::from_coeffs(n, [(j, a)]).expect("validated dimensions")
    }

    /// Scalar (1x1) symbol from `(index, value)` pairs.
    pub fn scalar(pairs: &[(i64, Complex64)]) -> Self {
        let coeffs = pairs
            .iter()
            .map(|&(j, v)| (j, CMatrix::from_element(1, 1, v)));
        MatrixLaurentPoly::from_coeffs(1, coeffs).expect("scalar indices are caller-checked")
    }

    /// Constant symbol `A_0 = a`.
    pub fn constant(a: CMatrix) -> Self {
        MatrixLaurentPoly::monomial(0, a)
    }

    /// `z^j I_n`.
    pub fn monomial_identity(n: usize, j: i64) -> Self {
        MatrixLaurentPoly::monomial(j, CMatrix::identity(n, n))
    }

    /// Matrix dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Smallest index, padded so `lo() <= 0`.
    pub fn lo(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0).min(0)
    }

    /// Largest index, padded so `hi() >= 0`.
    pub fn hi(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0).max(0)
    }

    /// Coanalytic degree `m = max(0, -lo)`.
    pub fn coanalytic_degree(&self) -> usize {
        (-self.lo()).max(0) as usize
    }

    /// Analytic degree `N = max(0, hi)`.
    pub fn analytic_degree(&self) -> usize {
        self.hi().max(0) as usize
    }

    /// True when no coefficient is stored.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when all indices are nonnegative.
    pub fn is_analytic(&self) -> bool {
        self.lo() >= 0
    }

    /// True when the only possible coefficient is the constant one.
    pub fn is_constant(&self) -> bool {
        self.lo() == 0 && self.hi() == 0
    }

    /// Coefficient at index `j`, or `None` when absent.
    pub fn coeff_ref(&self, j: i64) -> Option<&CMatrix> {
        self.coeffs.get(&j)
    }

    /// Coefficient at index `j`, materializing zeros for absent indices.
    pub fn coeff(&self, j: i64) -> CMatrix {
        self.coeffs
            .get(&j)
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.n, self.n))
    }

    /// Iterator over stored `(index, coefficient)` pairs in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &CMatrix)> {
        self.coeffs.iter().map(|(&j, m)| (j, m))
    }

    /// Number of stored coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest entry magnitude over all coefficients.
    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs
            .values()
            .map(cmatrix::max_abs)
            .fold(0.0, f64::max)
    }

    /// Scale-invariant default tolerance for coefficient-zero tests.
    pub fn default_zero_tol(&self) -> f64 {
        1e-10 * (1.0 + self.max_coeff_abs())
    }

    /// Symbol-level star: `(Phi*)_j = (A_{-j})†`.
    pub fn adjoint(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&j, m)| (-j, m.adjoint()))
            .collect();
        MatrixLaurentPoly { n: self.n, coeffs }
    }

    /// Coefficient-wise conjugate transpose with indices kept in place.
    pub fn tilde(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&j, m)| (j, m.adjoint()))
            .collect();
        MatrixLaurentPoly { n: self.n, coeffs }
    }

    /// Split into analytic part, coanalytic companion, constant and the
    /// constant-free analytic part.
    pub fn split_parts(&self) -> SymbolParts {
        let analytic = self
            .coeffs
            .range(0..)
            .map(|(&j, m)| (j, m.clone()))
            .collect();
        let analytic_primed = self
            .coeffs
            .range(1..)
            .map(|(&j, m)| (j, m.clone()))
            .collect();
        let coanalytic_conj = self
            .coeffs
            .range(..0)
            .map(|(&j, m)| (-j, m.adjoint()))
            .collect();
        SymbolParts {
            analytic: MatrixLaurentPoly {
                n: self.n,
                coeffs: analytic,
            },
            coanalytic_conj: MatrixLaurentPoly {
                n: self.n,
                coeffs: coanalytic_conj,
            },
            constant: self.coeff(0),
            analytic_primed: MatrixLaurentPoly {
                n: self.n,
                coeffs: analytic_primed,
            },
        }
    }

    /// Exact Cauchy product of coefficient sequences.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply symbols of dimensions {} and {}",
                self.n, other.n
            )));
        }
        let mut acc: BTreeMap<i64, CMatrix> = BTreeMap::new();
        for (&j1, m1) in &self.coeffs {
            for (&j2, m2) in &other.coeffs {
                let prod = m1 * m2;
                acc.entry(j1 + j2)
                    .and_modify(|m| *m += &prod)
                    .or_insert(prod);
            }
        }
        acc.retain(|_, m| m.iter().any(|z| z.norm_sqr() != 0.0));
        Ok(MatrixLaurentPoly {
            n: self.n,
            coeffs: acc,
        })
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot add symbols of dimensions {} and {}",
                self.n, other.n
            )));
        }
        let mut acc = self.coeffs.clone();
        for (&j, m) in &other.coeffs {
            acc.entry(j).and_modify(|a| *a += m).or_insert_with(|| m.clone());
        }
        acc.retain(|_, m| m.iter().any(|z| z.norm_sqr() != 0.0));
        Ok(MatrixLaurentPoly {
            n: self.n,
            coeffs: acc,
        })
    }

    /// Coefficient-wise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(c64(-1.0, 0.0)))
    }

    /// Multiply every coefficient by a complex scalar.
    pub fn scale(&self, factor: Complex64) -> Self {
        if factor == c64(0.0, 0.0) {
            return MatrixLaurentPoly::zero(self.n);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&j, m)| (j, m.map(|z| z * factor)))
            .collect();
        MatrixLaurentPoly { n: self.n, coeffs }
    }

    /// Evaluate at `e^{i theta}` with a two-sided Horner scheme.
    pub fn evaluate(&self, theta: f64) -> CMatrix {
        let w = Complex64::from_polar(1.0, theta);
        let wbar = w.conj();
        let mut plus = CMatrix::zeros(self.n, self.n);
        for j in (0..=self.hi()).rev() {
            plus = plus.map(|z| z * w);
            if let Some(a) = self.coeffs.get(&j) {
                plus += a;
            }
        }
        let mut minus = CMatrix::zeros(self.n, self.n);
        for j in self.lo()..=-1 {
            minus = minus.map(|z| z * wbar);
            if let Some(a) = self.coeffs.get(&j) {
                minus += a;
            }
        }
        minus = minus.map(|z| z * wbar);
        plus + minus
    }

    /// Exact pointwise-normality test: computes `D = Phi* Phi - Phi Phi*`
    /// as a symbol and checks every coefficient against `tol`. Returns the
    /// verdict together with the largest offending magnitude.
    pub fn is_normal_valued(&self, tol: f64) -> (bool, f64) {
        let star = self.adjoint();
        let d = star
            .multiply(self)
            .and_then(|left| self.multiply(&star).and_then(|right| left.sub(&right)))
            .expect("dimensions match by construction");
        let residual = d.max_coeff_abs();
        (residual <= tol, residual)
    }

    /// [`Self::is_normal_valued`] with the scale-invariant default tolerance.
    pub fn is_normal_valued_default(&self) -> (bool, f64) {
        self.is_normal_valued(self.default_zero_tol())
    }

    /// Certified two-sided bracket for the sup norm on the circle:
    /// `lower <= ||Phi||_inf <= upper`. The lower bound is the max largest
    /// singular value over the grid; the upper bound adds the Lipschitz
    /// slack `L pi / grid` with `L = sum |j| ||A_j||_F`.
    pub fn sup_norm_certified(&self, grid: usize) -> Result<(f64, f64)> {
        let need = 2 * (self.coanalytic_degree() + self.analytic_degree()) + 1;
        if grid < need.max(2) {
            return Err(Error::GridTooSmall {
                need: need.max(2),
                got: grid,
            });
        }
        let mut lower = 0.0f64;
        for k in 0..grid {
            let theta = std::f64::consts::TAU * k as f64 / grid as f64;
            lower = lower.max(cmatrix::spectral_norm(&self.evaluate(theta)));
        }
        let lipschitz: f64 = self
            .coeffs
            .iter()
            .map(|(&j, m)| j.unsigned_abs() as f64 * m.norm())
            .sum();
        let upper = lower + lipschitz * std::f64::consts::PI / grid as f64;
        Ok((lower, upper))
    }
}

impl fmt::Display for MatrixLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 (dimension {})", self.n);
        }
        for (idx, (&j, m)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "z^{j}:")?;
            for i in 0..self.n {
                write!(f, "\n  [")?;
                for c in 0..self.n {
                    let z = m[(i, c)];
                    if c > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{:.4}{:+.4}i", z.re, z.im)?;
                }
                write!(f, "]")?;
            }
        }
        Ok(())
    }
}

/// Decomposition `Phi = analytic + (coanalytic_conj)*` together with the
/// constant coefficient and the constant-free analytic part.
#[derive(Clone, Debug)]
pub struct SymbolParts {
    /// Indices `>= 0` of the source symbol.
    pub analytic: MatrixLaurentPoly,
    /// The element of `z H^2` whose star gives the negative part.
    pub coanalytic_conj: MatrixLaurentPoly,
    /// The constant coefficient `A_0`.
    pub constant: CMatrix,
    /// Analytic part with the constant removed.
    pub analytic_primed: MatrixLaurentPoly,
}
