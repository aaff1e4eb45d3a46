//! JSON file formats for symbols and Blaschke-Potapov products.
//!
//! Complex numbers are always two-element arrays `[re, im]`; matrices are
//! row-major nested arrays of those pairs. A symbol file looks like
//!
//! ```json
//! {"n": 2, "coeffs": [{"j": -1, "matrix": [[[0.0,0.0],[0.0,0.0]],
//!                                          [[0.0,0.0],[1.0,0.0]]]}]}
//! ```
//!
//! and a product file like
//!
//! ```json
//! {"n": 2, "unitary": [[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]],
//!  "factors": [{"alpha": [0.0,0.0], "projection": [[...]]}]}
//! ```
//!
//! Duplicate Fourier indices in a symbol file are an error.

use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkePotapovFactor, BlaschkePotapovProduct};
use crate::cmatrix::{c64, CMatrix};
use crate::error::{Error, Result};
use crate::symbol::MatrixLaurentPoly;

/// Row-major `[re, im]` representation of a matrix.
pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Parse a row-major `[re, im]` matrix, enforcing an `n x n` shape.
pub fn matrix_from_rows(rows: &[Vec<[f64; 2]>], n: usize) -> Result<CMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::invalid(
            "matrix",
            format!("expected {n}x{n} row-major entries"),
        ));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| {
        c64(rows[i][j][0], rows[i][j][1])
    }))
}

#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    j: i64,
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct SymbolFile {
    n: usize,
    coeffs: Vec<CoeffEntry>,
}

impl Serialize for MatrixLaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let file = SymbolFile {
            n: self.dim(),
            coeffs: self
                .iter()
                .map(|(j, m)| CoeffEntry {
                    j,
                    matrix: matrix_to_rows(m),
                })
                .collect(),
        };
        file.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixLaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = SymbolFile::deserialize(deserializer)?;
        symbol_from_file(file).map_err(serde::de::Error::custom)
    }
}

fn symbol_from_file(file: SymbolFile) -> Result<MatrixLaurentPoly> {
    if file.n == 0 {
        return Err(Error::invalid("symbol", "n must be positive"));
    }
    let mut pairs = Vec::with_capacity(file.coeffs.len());
    for entry in &file.coeffs {
        pairs.push((entry.j, matrix_from_rows(&entry.matrix, file.n)?));
    }
    MatrixLaurentPoly::from_coeffs(file.n, pairs)
}

#[derive(Serialize, Deserialize)]
struct FactorFile {
    alpha: [f64; 2],
    projection: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct ProductFile {
    n: usize,
    unitary: Vec<Vec<[f64; 2]>>,
    factors: Vec<FactorFile>,
}

impl<'de> Deserialize<'de> for BlaschkePotapovProduct {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = ProductFile::deserialize(deserializer)?;
        product_from_file(file).map_err(serde::de::Error::custom)
    }
}

fn product_from_file(file: ProductFile) -> Result<BlaschkePotapovProduct> {
    if file.n == 0 {
        return Err(Error::invalid("product", "n must be positive"));
    }
    let unitary = matrix_from_rows(&file.unitary, file.n)?;
    let mut factors = Vec::with_capacity(file.factors.len());
    for f in &file.factors {
        factors.push(BlaschkePotapovFactor::new(
            c64(f.alpha[0], f.alpha[1]),
            matrix_from_rows(&f.projection, file.n)?,
        )?);
    }
    BlaschkePotapovProduct::new(unitary, factors)
}

/// Parse a symbol from JSON text.
pub fn symbol_from_json(text: &str) -> Result<MatrixLaurentPoly> {
    serde_json::from_str(text).map_err(|e| Error::invalid("symbol file", e.to_string()))
}

/// Serialize a symbol to pretty JSON.
pub fn symbol_to_json(phi: &MatrixLaurentPoly) -> String {
    serde_json::to_string_pretty(phi).expect("symbol serialization is infallible")
}

/// Parse a Blaschke-Potapov product from JSON text.
pub fn product_from_json(text: &str) -> Result<BlaschkePotapovProduct> {
    serde_json::from_str(text).map_err(|e| Error::invalid("product file", e.to_string()))
}

/// Serialize a product to pretty JSON.
pub fn product_to_json(q: &BlaschkePotapovProduct) -> String {
    serde_json::to_string_pretty(q).expect("product serialization is infallible")
}
