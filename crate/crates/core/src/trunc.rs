//! The truncated polynomial rings `k[t]/(t^n)` and matrices over them.
//!
//! Order 1 is the base field, order 2 the dual numbers. Matrices over the ring
//! are stored as their `t`-adic coefficient matrices, which is the form the
//! order-by-order lifting solver works in.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedRing {
    base: Field,
    order: usize,
}

impl TruncatedRing {
    pub fn new(base: Field, order: usize) -> Result<TruncatedRing> {
        if order == 0 {
            return Err(Error::Precondition("truncation order must be at least 1".into()));
        }
        Ok(TruncatedRing { base, order })
    }

    pub fn dual_numbers(base: Field) -> TruncatedRing {
        TruncatedRing { base, order: 2 }
    }

    pub fn base(&self) -> Field {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> TruncElem {
        TruncElem {
            ring: *self,
            coeffs: vec![self.base.zero(); self.order],
        }
    }

    /// Element from coefficients, lowest degree first; terms of degree `>= order` are dropped.
    pub fn element(&self, coeffs: &[Scalar]) -> TruncElem {
        let mut e = self.zero();
        for (i, c) in coeffs.iter().take(self.order).enumerate() {
            e.coeffs[i] = c.clone();
        }
        e
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> TruncElem {
        let cs: Vec<Scalar> = coeffs.iter().map(|&c| self.base.from_i64(c)).collect();
        self.element(&cs)
    }

    pub fn t(&self) -> TruncElem {
        self.from_ints(&[0, 1])
    }
}

/// An element of `k[t]/(t^n)`, kept as its unique representative of degree `< n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncElem {
    ring: TruncatedRing,
    coeffs: Vec<Scalar>,
}

impl TruncElem {
    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Coefficient list in canonical text form, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Scalar::to_string).collect()
    }
}

fn same_ring(x: &TruncElem, y: &TruncElem) -> Result<TruncatedRing> {
    if x.ring != y.ring {
        return Err(Error::MixedRings(format!(
            "{}[t]/(t^{}) vs {}[t]/(t^{})",
            x.ring.base, x.ring.order, y.ring.base, y.ring.order
        )));
    }
    Ok(x.ring)
}

pub fn trunc_add(x: &TruncElem, y: &TruncElem) -> Result<TruncElem> {
    let ring = same_ring(x, y)?;
    Ok(TruncElem {
        ring,
        coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect(),
    })
}

pub fn trunc_mul(x: &TruncElem, y: &TruncElem) -> Result<TruncElem> {
    let ring = same_ring(x, y)?;
    let mut out = ring.zero();
    for (i, a) in x.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs.iter().enumerate().take(ring.order - i) {
            out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
        }
    }
    Ok(out)
}

/// The quotient map `k[t]/(t^n) -> k[t]/(t^k)`.
pub fn reduce_mod_t(x: &TruncElem, k: usize) -> Result<TruncElem> {
    if k == 0 || k > x.ring.order {
        return Err(Error::Precondition(format!(
            "cannot reduce an order-{} element to order {k}",
            x.ring.order
        )));
    }
    let ring = TruncatedRing::new(x.ring.base, k)?;
    Ok(ring.element(&x.coeffs[..k]))
}

/// A matrix over `k[t]/(t^n)` stored as `coeffs[i]` = coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: TruncatedRing,
    coeffs: Vec<Matrix>,
}

impl PolyMatrix {
    pub fn new(ring: TruncatedRing, coeffs: Vec<Matrix>) -> Result<PolyMatrix> {
        if coeffs.len() != ring.order {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficient matrices for a ring of order {}",
                coeffs.len(),
                ring.order
            )));
        }
        let shape = coeffs[0].shape();
        if coeffs.iter().any(|c| c.shape() != shape || c.field() != ring.base) {
            return Err(Error::ShapeMismatch("coefficient matrices disagree".into()));
        }
        Ok(PolyMatrix { ring, coeffs })
    }

    /// The constant matrix, i.e. the base change along `k -> k[t]/(t^n)`.
    pub fn constant(ring: TruncatedRing, m: &Matrix) -> PolyMatrix {
        let mut coeffs = vec![m.clone()];
        coeffs.resize(ring.order, Matrix::zeros(ring.base, m.rows(), m.cols()));
        PolyMatrix { ring, coeffs }
    }

    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn shape(&self) -> (usize, usize) {
        self.coeffs[0].shape()
    }

    pub fn entry(&self, r: usize, c: usize) -> TruncElem {
        let cs: Vec<Scalar> = self.coeffs.iter().map(|m| m.get(r, c).clone()).collect();
        self.ring.element(&cs)
    }

    pub fn checked_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ring != rhs.ring {
            return Err(Error::MixedRings("matrix product over different rings".into()));
        }
        let n = self.ring.order;
        let (rows, _) = self.shape();
        let (_, cols) = rhs.shape();
        let mut coeffs = vec![Matrix::zeros(self.ring.base, rows, cols); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                let prod = a.checked_mul(b)?;
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        Ok(PolyMatrix {
            ring: self.ring,
            coeffs,
        })
    }

    pub fn truncate(&self, k: usize) -> Result<PolyMatrix> {
        if k == 0 || k > self.ring.order {
            return Err(Error::Precondition(format!("cannot truncate to order {k}")));
        }
        Ok(PolyMatrix {
            ring: TruncatedRing::new(self.ring.base, k)?,
            coeffs: self.coeffs[..k].to_vec(),
        })
    }

    /// The underlying field matrix when the ring is the field itself.
    pub fn to_field_matrix(&self) -> Result<&Matrix> {
        if self.ring.order != 1 {
            return Err(Error::UnsupportedRing(self.ring.order));
        }
        Ok(&self.coeffs[0])
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.to_field_matrix()?.rank())
    }

    pub fn kernel_basis(&self) -> Result<Matrix> {
        Ok(self.to_field_matrix()?.kernel_basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual() -> TruncatedRing {
        TruncatedRing::dual_numbers(Field::Rationals)
    }

    #[test]
    fn dual_number_identities() {
        let r = dual();
        let x = trunc_mul(&r.from_ints(&[1, 1]), &r.from_ints(&[1, -1])).unwrap();
        assert_eq!(x, r.from_ints(&[1]));
        assert!(trunc_mul(&r.t(), &r.t()).unwrap().is_zero());
    }

    #[test]
    fn reduction_to_residue_field() {
        let r = TruncatedRing::new(Field::Rationals, 3).unwrap();
        let x = reduce_mod_t(&r.from_ints(&[1, 3, 1]), 1).unwrap();
        assert_eq!(x.to_strings(), vec!["1"]);
        assert!(reduce_mod_t(&x, 2).is_err());
    }

    #[test]
    fn mixed_rings_rejected() {
        let r3 = TruncatedRing::new(Field::Rationals, 3).unwrap();
        assert!(matches!(trunc_add(&dual().t(), &r3.t()), Err(Error::MixedRings(_))));
        let f5 = TruncatedRing::dual_numbers(Field::prime(5).unwrap());
        assert!(trunc_mul(&dual().t(), &f5.t()).is_err());
    }

    #[test]
    fn rank_needs_a_field() {
        let m = Matrix::identity(Field::Rationals, 2);
        assert!(matches!(
            PolyMatrix::constant(dual(), &m).rank(),
            Err(Error::UnsupportedRing(2))
        ));
        let one = TruncatedRing::new(Field::Rationals, 1).unwrap();
        assert_eq!(PolyMatrix::constant(one, &m).rank().unwrap(), 2);
    }

    #[test]
    fn poly_matrix_product_truncates() {
        let r = dual();
        let q = Field::Rationals;
        let t_id = PolyMatrix::new(r, vec![Matrix::zeros(q, 1, 1), Matrix::identity(q, 1)]).unwrap();
        let sq = t_id.checked_mul(&t_id).unwrap();
        assert!(sq.coeffs().iter().all(Matrix::is_zero));
    }
}
