//! Euler form and Coxeter transformation of an acyclic quiver.
//!
//! Modules are representations of the quiver itself: a vector space per
//! vertex and a linear map along each arrow. With `A` the arrow matrix, the
//! Euler matrix is `E = I - A`, so `<d, e> = d^T E e`; the Coxeter
//! transformation is `Phi = -E^{-1} E^T` and `dim tau M = Phi(dim M)` for
//! every non-projective indecomposable `M`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{checked_dot, ArithmeticOverflow, IntMatrix};
use crate::quiver::{ClusterQuiver, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("dimension vector has length {found}, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Overflow(#[from] ArithmeticOverflow),
}

/// Dimension vector, indexed by 0-based vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn unit(n: usize, v: Vertex) -> Self {
        let mut d = vec![0; n];
        d[v] = 1;
        DimVector(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Every coordinate is at least one.
    pub fn is_sincere(&self) -> bool {
        self.0.iter().all(|&x| x >= 1)
    }

    pub fn support(&self) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.0[v] != 0).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Precomputed Euler and Coxeter matrices of one acyclic quiver.
#[derive(Clone, Debug)]
pub struct CoxeterData {
    euler: IntMatrix,
    /// `E^{-1}`: entry `(x, y)` counts paths `x -> y`, so row `x` is `dim P(x)`.
    euler_inv: IntMatrix,
    coxeter: IntMatrix,
    coxeter_inv: IntMatrix,
}

impl CoxeterData {
    pub fn new(q: &ClusterQuiver) -> Result<Self, CoxeterError> {
        if !q.is_acyclic() {
            return Err(CoxeterError::NotAcyclic);
        }
        let euler = euler_matrix(q);
        let euler_inv = euler.inverse()?.expect("I - A is unimodular for acyclic A");
        let euler_t = euler.transpose();
        let euler_t_inv = euler_inv.transpose();
        let coxeter = euler_inv.mul(&euler_t)?.neg()?;
        let coxeter_inv = euler_t_inv.mul(&euler)?.neg()?;
        Ok(CoxeterData {
            euler,
            euler_inv,
            coxeter,
            coxeter_inv,
        })
    }

    pub fn n(&self) -> usize {
        self.euler.rows()
    }

    pub fn euler(&self) -> &IntMatrix {
        &self.euler
    }

    pub fn coxeter(&self) -> &IntMatrix {
        &self.coxeter
    }

    pub fn coxeter_inverse(&self) -> &IntMatrix {
        &self.coxeter_inv
    }

    fn check_len(&self, d: &DimVector) -> Result<(), CoxeterError> {
        if d.len() != self.n() {
            return Err(CoxeterError::LengthMismatch {
                expected: self.n(),
                found: d.len(),
            });
        }
        Ok(())
    }

    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64, CoxeterError> {
        self.check_len(d)?;
        self.check_len(e)?;
        let ee = self.euler.mul_vec(&e.0)?;
        Ok(checked_dot(&d.0, &ee)?)
    }

    pub fn apply_coxeter(&self, d: &DimVector) -> Result<DimVector, CoxeterError> {
        self.check_len(d)?;
        Ok(DimVector(self.coxeter.mul_vec(&d.0)?))
    }

    pub fn apply_coxeter_inverse(&self, d: &DimVector) -> Result<DimVector, CoxeterError> {
        self.check_len(d)?;
        Ok(DimVector(self.coxeter_inv.mul_vec(&d.0)?))
    }

    pub fn projective(&self, x: Vertex) -> DimVector {
        DimVector(self.euler_inv.row(x))
    }

    pub fn injective(&self, x: Vertex) -> DimVector {
        DimVector(self.euler_inv.col(x))
    }

    /// `dim tau^{-r} P(x)` for `r >= 0`, by iterating the inverse Coxeter
    /// transformation. Meaningful while the result stays non-negative.
    pub fn preprojective(&self, x: Vertex, r: usize) -> Result<DimVector, CoxeterError> {
        let mut d = self.projective(x);
        for _ in 0..r {
            d = self.apply_coxeter_inverse(&d)?;
        }
        Ok(d)
    }
}

/// `E = I - A`, `A[u][v]` the number of arrows `u -> v`.
pub fn euler_matrix(q: &ClusterQuiver) -> IntMatrix {
    let n = q.n();
    let mut e = IntMatrix::identity(n);
    for (u, v, k) in q.arrows() {
        e.set(u, v, e.get(u, v) - k as i64);
    }
    e
}

/// `<d, e> = sum_a d_a e_a - sum_{arrows a -> b} d_a e_b`.
pub fn euler_form(q: &ClusterQuiver, d: &DimVector, e: &DimVector) -> Result<i64, CoxeterError> {
    for v in [d, e] {
        if v.len() != q.n() {
            return Err(CoxeterError::LengthMismatch {
                expected: q.n(),
                found: v.len(),
            });
        }
    }
    let mut total = checked_dot(&d.0, &e.0)?;
    for (a, b, k) in q.arrows() {
        let term = (k as i64)
            .checked_mul(d.0[a])
            .and_then(|t| t.checked_mul(e.0[b]))
            .ok_or(ArithmeticOverflow)?;
        total = total.checked_sub(term).ok_or(ArithmeticOverflow)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ClusterQuiver {
        ClusterQuiver::new(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn euler_form_a2() {
        let q = a2();
        let e1 = DimVector(vec![1, 0]);
        let e2 = DimVector(vec![0, 1]);
        assert_eq!(euler_form(&q, &e1, &e1).unwrap(), 1);
        assert_eq!(euler_form(&q, &e1, &e2).unwrap(), -1);
        assert_eq!(euler_form(&q, &e2, &e1).unwrap(), 0);
        let data = CoxeterData::new(&q).unwrap();
        assert_eq!(data.euler_form(&e1, &e2).unwrap(), -1);
    }

    #[test]
    fn coxeter_a2_by_hand() {
        // E = [[1,-1],[0,1]], E^{-1} = [[1,1],[0,1]], Phi = -E^{-1} E^T = [[0,-1],[1,-1]]
        let data = CoxeterData::new(&a2()).unwrap();
        assert_eq!(
            data.coxeter(),
            &IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]])
        );
        let tau_s1 = data.apply_coxeter(&DimVector(vec![1, 0])).unwrap();
        assert_eq!(tau_s1, DimVector(vec![0, 1]));
        assert_eq!(
            data.coxeter().mul(data.coxeter_inverse()).unwrap(),
            IntMatrix::identity(2)
        );
    }

    #[test]
    fn projectives_map_to_negative_injectives() {
        let q = ClusterQuiver::new(3, &[(0, 1), (2, 1)]).unwrap();
        let data = CoxeterData::new(&q).unwrap();
        for x in 0..3 {
            let img = data.apply_coxeter(&data.projective(x)).unwrap();
            let neg_inj = DimVector(data.injective(x).0.iter().map(|v| -v).collect());
            assert_eq!(img, neg_inj);
        }
        assert_eq!(data.projective(0), DimVector(vec![1, 1, 0]));
        assert_eq!(data.injective(1), DimVector(vec![1, 1, 1]));
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let q = ClusterQuiver::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(CoxeterData::new(&q).unwrap_err(), CoxeterError::NotAcyclic);
    }
}
