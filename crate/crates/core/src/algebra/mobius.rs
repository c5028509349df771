use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A 2×2 matrix `[[a, b], [c, d]]` acting on λ by `(aλ+b)/(cλ+d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMatrix {
    pub field: FieldSpec,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl MobiusMatrix {
    pub fn new(field: FieldSpec, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        let m = MobiusMatrix { field, a, b, c, d };
        m.check()?;
        Ok(m)
    }

    pub fn from_ints(field: FieldSpec, v: [i64; 4]) -> Result<Self> {
        Self::new(
            field,
            field.from_i64(v[0]),
            field.from_i64(v[1]),
            field.from_i64(v[2]),
            field.from_i64(v[3]),
        )
    }

    pub fn identity(field: FieldSpec) -> Self {
        Self::from_ints(field, [1, 0, 0, 1]).unwrap()
    }

    /// `[[0,1],[1,0]]`, whose transformation is reversal.
    pub fn reversal(field: FieldSpec) -> Self {
        Self::from_ints(field, [0, 1, 1, 0]).unwrap()
    }

    pub fn det(&self) -> Scalar {
        let f = self.field;
        f.sub(&f.mul(&self.a, &self.d), &f.mul(&self.b, &self.c))
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.field.is_zero(&self.det()) {
            Err(Error::SingularMobiusMatrix)
        } else {
            Ok(())
        }
    }

    /// `[[d, −b], [−c, a]]`; transforming by it after `self` scales by det^g.
    pub fn adjugate(&self) -> Self {
        let f = self.field;
        MobiusMatrix {
            field: f,
            a: self.d.clone(),
            b: f.neg(&self.b),
            c: f.neg(&self.c),
            d: self.a.clone(),
        }
    }

    /// The true inverse; transforming by it after `self` is the identity.
    pub fn inverse(&self) -> Result<Self> {
        let f = self.field;
        let inv = f.inv(&self.det()).map_err(|_| Error::SingularMobiusMatrix)?;
        let adj = self.adjugate();
        Ok(MobiusMatrix {
            field: f,
            a: f.mul(&adj.a, &inv),
            b: f.mul(&adj.b, &inv),
            c: f.mul(&adj.c, &inv),
            d: f.mul(&adj.d, &inv),
        })
    }
}
