//! Matrices over ℝ, ℂ and ℍ and their real block embeddings.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quaternion::Quaternion;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Real dimension of the scalar field; also the block size of the embedding.
    pub fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldMatrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
    Quaternion(DMatrix<Quaternion>),
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        match field {
            Field::Real => FieldMatrix::Real(DMatrix::zeros(rows, cols)),
            Field::Complex => FieldMatrix::Complex(DMatrix::from_element(rows, cols, Complex64::new(0.0, 0.0))),
            Field::Quaternion => FieldMatrix::Quaternion(DMatrix::from_element(rows, cols, Quaternion::ZERO)),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            FieldMatrix::Real(_) => Field::Real,
            FieldMatrix::Complex(_) => Field::Complex,
            FieldMatrix::Quaternion(_) => Field::Quaternion,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            FieldMatrix::Real(m) => m.shape(),
            FieldMatrix::Complex(m) => m.shape(),
            FieldMatrix::Quaternion(m) => m.shape(),
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            FieldMatrix::Real(m) => m.iter().all(|v| v.is_finite()),
            FieldMatrix::Complex(m) => m.iter().all(|v| v.re.is_finite() && v.im.is_finite()),
            FieldMatrix::Quaternion(m) => m.iter().all(|q| q.is_finite()),
        }
    }

    /// Writes a quaternion into entry `(r, c)`, reading the `w, x` parts only
    /// for complex matrices and `w` for real ones.
    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        match self {
            FieldMatrix::Real(m) => m[(r, c)] = q.w,
            FieldMatrix::Complex(m) => m[(r, c)] = Complex64::new(q.w, q.x),
            FieldMatrix::Quaternion(m) => m[(r, c)] = q,
        }
    }

    /// Product `self · rhs` over the common field.
    pub fn matmul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        let (_, inner) = self.shape();
        if inner != rhs.shape().0 {
            return Err(Error::DimensionMismatch { expected: inner, found: rhs.shape().0 });
        }
        match (self, rhs) {
            (FieldMatrix::Real(a), FieldMatrix::Real(b)) => Ok(FieldMatrix::Real(a * b)),
            (FieldMatrix::Complex(a), FieldMatrix::Complex(b)) => Ok(FieldMatrix::Complex(a * b)),
            (FieldMatrix::Quaternion(a), FieldMatrix::Quaternion(b)) => {
                let out = DMatrix::from_fn(a.nrows(), b.ncols(), |r, c| {
                    (0..inner).fold(Quaternion::ZERO, |acc, k| acc + a[(r, k)] * b[(k, c)])
                });
                Ok(FieldMatrix::Quaternion(out))
            }
            _ => Err(Error::FieldMismatch { declared: self.field(), found: rhs.field() }),
        }
    }
}

/// Standard real embedding: complex scalars become 2×2 blocks, quaternions the
/// 4×4 matrix of left multiplication. The map is an injective algebra
/// homomorphism, and it sends conjugate transposes to transposes.
pub fn real_embedding(entries: &FieldMatrix, field: Field) -> Result<DMatrix<f64>> {
    if entries.field() != field {
        return Err(Error::FieldMismatch { declared: field, found: entries.field() });
    }
    if !entries.is_finite() {
        return Err(Error::NonFinite);
    }
    let (rows, cols) = entries.shape();
    let e = field.real_dim();
    let mut out = DMatrix::zeros(rows * e, cols * e);
    for r in 0..rows {
        for c in 0..cols {
            match entries {
                FieldMatrix::Real(m) => out[(r, c)] = m[(r, c)],
                FieldMatrix::Complex(m) => {
                    let z = m[(r, c)];
                    out[(2 * r, 2 * c)] = z.re;
                    out[(2 * r, 2 * c + 1)] = -z.im;
                    out[(2 * r + 1, 2 * c)] = z.im;
                    out[(2 * r + 1, 2 * c + 1)] = z.re;
                }
                FieldMatrix::Quaternion(m) => {
                    let block = m[(r, c)].left_regular_matrix();
                    for (i, row) in block.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            out[(4 * r + i, 4 * c + j)] = *v;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complex_unit_embeds_as_rotation() {
        let m = FieldMatrix::Complex(DMatrix::from_element(1, 1, Complex64::new(0.0, 1.0)));
        let e = real_embedding(&m, Field::Complex).unwrap();
        assert_eq!(e, DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
    }

    #[test]
    fn quaternion_j_embeds_as_left_multiplication() {
        let m = FieldMatrix::Quaternion(DMatrix::from_element(1, 1, Quaternion::J));
        let e = real_embedding(&m, Field::Quaternion).unwrap();
        // columns are the images j·1 = j, j·i = -k, j·j = -1, j·k = i
        let expected = DMatrix::from_column_slice(
            4,
            4,
            &[
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, -1.0, //
                -1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0,
            ],
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn real_matrix_unchanged() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, -4.0, 5.0, 6.5]);
        let e = real_embedding(&FieldMatrix::Real(a.clone()), Field::Real).unwrap();
        assert_eq!(e, a);
    }

    #[test]
    fn mismatched_tag_rejected() {
        let m = FieldMatrix::Real(DMatrix::identity(2, 2));
        assert!(matches!(real_embedding(&m, Field::Quaternion), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn non_finite_rejected() {
        let m = FieldMatrix::Real(DMatrix::from_element(1, 1, f64::NAN));
        assert_eq!(real_embedding(&m, Field::Real), Err(Error::NonFinite));
    }

    fn arb_quat_matrix(rows: usize, cols: usize) -> impl Strategy<Value = FieldMatrix> {
        proptest::collection::vec(-3.0..3.0f64, rows * cols * 4).prop_map(move |v| {
            FieldMatrix::Quaternion(DMatrix::from_fn(rows, cols, |r, c| {
                let o = 4 * (r * cols + c);
                Quaternion::new(v[o], v[o + 1], v[o + 2], v[o + 3])
            }))
        })
    }

    fn arb_complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = FieldMatrix> {
        proptest::collection::vec(-3.0..3.0f64, rows * cols * 2).prop_map(move |v| {
            FieldMatrix::Complex(DMatrix::from_fn(rows, cols, |r, c| {
                let o = 2 * (r * cols + c);
                Complex64::new(v[o], v[o + 1])
            }))
        })
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    proptest! {
        #[test]
        fn quaternion_embedding_is_multiplicative(a in arb_quat_matrix(3, 2), b in arb_quat_matrix(2, 3)) {
            let ab = real_embedding(&a.matmul(&b).unwrap(), Field::Quaternion).unwrap();
            let ea = real_embedding(&a, Field::Quaternion).unwrap();
            let eb = real_embedding(&b, Field::Quaternion).unwrap();
            prop_assert!(max_abs(&(ab - ea * eb)) <= 1e-12 * 100.0);
        }

        #[test]
        fn complex_embedding_is_multiplicative(a in arb_complex_matrix(2, 3), b in arb_complex_matrix(3, 2)) {
            let ab = real_embedding(&a.matmul(&b).unwrap(), Field::Complex).unwrap();
            let ea = real_embedding(&a, Field::Complex).unwrap();
            let eb = real_embedding(&b, Field::Complex).unwrap();
            prop_assert!(max_abs(&(ab - ea * eb)) <= 1e-12 * 100.0);
        }
    }
}
