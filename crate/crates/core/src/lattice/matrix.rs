//! Dense square integer matrices with exact characteristic polynomials.

use crate::error::{Error, Result};
use crate::exactpoly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be at least 1".into()));
        }
        Ok(IntMatrix { dim, rows: vec![vec![BigInt::zero(); dim]; dim] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        for i in 0..dim {
            m.rows[i][i] = BigInt::one();
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Domain("matrix must be square of dimension >= 1".into()));
        }
        Ok(IntMatrix { dim, rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.dim).expect("dimension preserved");
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Domain("matrix dimensions differ".into()));
        }
        let mut out = Self::zero(self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = BigInt::zero();
                for k in 0..self.dim {
                    acc += &self.rows[i][k] * &other.rows[k][j];
                }
                out.rows[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial det(xI - M), computed exactly by Bareiss
    /// fraction-free elimination on the matrix of integer polynomials.
    /// Always monic of degree `dim`.
    pub fn char_poly(&self) -> IntPoly {
        let n = self.dim;
        let mut a: Vec<Vec<IntPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            IntPoly::new(vec![-self.rows[i][j].clone(), BigInt::one()])
                        } else {
                            IntPoly::constant(-self.rows[i][j].clone())
                        }
                    })
                    .collect()
            })
            .collect();
        let mut sign = false;
        let mut prev = IntPoly::one();
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return IntPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides by the previous pivot");
                }
                a[i][k] = IntPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign {
            det.neg()
        } else {
            det
        }
    }

    /// det(M) = (-1)^dim * char_poly(0).
    pub fn det(&self) -> BigInt {
        let c0 = self.char_poly().coeff(0);
        if self.dim % 2 == 1 {
            -c0
        } else {
            c0
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == BigInt::one()
    }

    /// M^T J M = J for the Lorentzian form J = diag(1, -1, ..., -1).
    pub fn preserves_lorentz_form(&self) -> bool {
        let mut j = IntMatrix::identity(self.dim).expect("dimension preserved");
        for i in 1..self.dim {
            j.rows[i][i] = -BigInt::one();
        }
        let lhs = self
            .transpose()
            .mul(&j)
            .and_then(|tj| tj.mul(self))
            .expect("dimensions agree");
        lhs == j
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [BigInt]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for v in self.0 {
                    let small: i64 = v.try_into().map_err(|_| {
                        serde::ser::Error::custom("matrix entry exceeds the i64 range")
                    })?;
                    seq.serialize_element(&small)?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("IntMatrix", 2)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("rows", &self.rows.iter().map(|r| Row(r)).collect::<Vec<_>>())?;
        s.end()
    }
}
