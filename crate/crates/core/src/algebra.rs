//! Group algebras `F G` over a coefficient field context, with dense
//! coefficient vectors indexed by the group's canonical ordering.

use std::sync::Arc;

use crate::group::{Elem, Group, Subgroup};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operands live in different group algebras")]
    ContextMismatch,
    #[error("characteristic {p} divides the order {order}")]
    CharacteristicDividesOrder { p: u64, order: usize },
}

#[derive(Clone, Debug)]
pub struct AlgElem<F: Field> {
    group: Arc<Group>,
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for AlgElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for AlgElem<F> {}

impl<F: Field> std::hash::Hash for AlgElem<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<F: Field> AlgElem<F> {
    pub fn zero(group: &Arc<Group>, field: &F) -> Self {
        AlgElem {
            group: group.clone(),
            field: field.clone(),
            coeffs: vec![field.zero(); group.order()],
        }
    }

    pub fn one(group: &Arc<Group>, field: &F) -> Self {
        Self::basis(group, field, 0)
    }

    /// The group element `g` as an algebra element.
    pub fn basis(group: &Arc<Group>, field: &F, g: Elem) -> Self {
        let mut e = Self::zero(group, field);
        e.coeffs[g as usize] = field.one();
        e
    }

    pub fn from_coeffs(group: &Arc<Group>, field: &F, coeffs: Vec<F::Elem>) -> Result<Self, AlgebraError> {
        if coeffs.len() != group.order() {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(AlgElem {
            group: group.clone(),
            field: field.clone(),
            coeffs,
        })
    }

    /// `sum_{x in S} c x` for a set of group elements.
    pub fn set_sum(group: &Arc<Group>, field: &F, elems: &[Elem], c: &F::Elem) -> Self {
        let mut e = Self::zero(group, field);
        for &x in elems {
            e.coeffs[x as usize] = field.add(&e.coeffs[x as usize], c);
        }
        e
    }

    /// `|H|^-1 sum_{h in H} h`.
    pub fn tilde(group: &Arc<Group>, field: &F, h: &Subgroup) -> Result<Self, AlgebraError> {
        let p = field.characteristic();
        if p != 0 && (h.len() as u64).is_multiple_of(p) {
            return Err(AlgebraError::CharacteristicDividesOrder { p, order: h.len() });
        }
        let c = field
            .inv(&field.from_int(h.len() as i64))
            .expect("order is invertible in the field");
        Ok(Self::set_sum(group, field, h.elements(), &c))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, g: Elem) -> &F::Elem {
        &self.coeffs[g as usize]
    }

    pub fn set_coeff(&mut self, g: Elem, c: F::Elem) {
        self.coeffs[g as usize] = c;
    }

    pub fn support(&self) -> Vec<Elem> {
        (0..self.coeffs.len())
            .filter(|&i| !self.field.is_zero(&self.coeffs[i]))
            .map(|i| i as Elem)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group) && self.field == other.field
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let f = &self.field;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let f = &self.field;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect()))
    }

    /// Convolution `(ab)_g = sum_{xy = g} a_x b_y`, skipping zero coefficients.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let f = &self.field;
        let g = &self.group;
        let rhs: Vec<(Elem, &F::Elem)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| (i as Elem, c))
            .collect();
        let mut out = vec![f.zero(); g.order()];
        for (x, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for &(y, b) in &rhs {
                let xy = g.mul(x as Elem, y) as usize;
                out[xy] = f.add(&out[xy], &f.mul(a, b));
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// Panicking variants for operands known to share an algebra.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("same group algebra")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("same group algebra")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same group algebra")
    }

    pub fn scalar_mul(&self, c: &F::Elem) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| self.field.neg(a)).collect())
    }

    /// `g * self`: permutes coefficients, `(g a)_x = a_{g^-1 x}`.
    pub fn left_mul_by(&self, g: Elem) -> Self {
        let mut out = vec![self.field.zero(); self.coeffs.len()];
        for (x, a) in self.coeffs.iter().enumerate() {
            out[self.group.mul(g, x as Elem) as usize] = a.clone();
        }
        self.with_coeffs(out)
    }

    /// `self * g`.
    pub fn right_mul_by(&self, g: Elem) -> Self {
        let mut out = vec![self.field.zero(); self.coeffs.len()];
        for (x, a) in self.coeffs.iter().enumerate() {
            out[self.group.mul(x as Elem, g) as usize] = a.clone();
        }
        self.with_coeffs(out)
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: Elem) -> Self {
        let mut out = vec![self.field.zero(); self.coeffs.len()];
        for (x, a) in self.coeffs.iter().enumerate() {
            out[self.group.conj(x as Elem, g) as usize] = a.clone();
        }
        self.with_coeffs(out)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn are_orthogonal(&self, other: &Self) -> bool {
        self.mul(other).is_zero() && other.mul(self).is_zero()
    }

    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|&g| self.conjugate(g) == *self)
    }

    /// Coefficient-wise image under a map of fields.
    pub fn map_field<G: Field>(&self, field: &G, f: impl Fn(&F::Elem) -> G::Elem) -> AlgElem<G> {
        AlgElem {
            group: self.group.clone(),
            field: field.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// `coeff*label` terms joined by `+`, in canonical order; `0` when empty.
    pub fn dump(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("{}*{}", self.field.format(c), self.group.label(i as Elem)))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    fn with_coeffs(&self, coeffs: Vec<F::Elem>) -> Self {
        AlgElem {
            group: self.group.clone(),
            field: self.field.clone(),
            coeffs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldCtx, Fq};
    use crate::scalar::Rationals;
    use num_rational::BigRational;

    #[test]
    fn char_two_square_vanishes() {
        let g = Arc::new(Group::cyclic(2).unwrap());
        let f = FieldCtx::prime(2).unwrap();
        let x = AlgElem::one(&g, &f).add(&AlgElem::basis(&g, &f, 1));
        assert!(x.mul(&x).is_zero());
        assert_eq!(AlgElem::one(&g, &f).mul(&x), x);
    }

    #[test]
    fn tilde_over_f2_and_q() {
        let g = Arc::new(Group::cyclic(3).unwrap());
        let f = FieldCtx::prime(2).unwrap();
        let t = AlgElem::tilde(&g, &f, &g.whole()).unwrap();
        assert_eq!(t.coeffs(), &[Fq(1), Fq(1), Fq(1)]);
        assert!(t.is_idempotent());
        let q = AlgElem::tilde(&g, &Rationals, &g.whole()).unwrap();
        assert!(q.coeffs().iter().all(|c| *c == BigRational::new(1.into(), 3.into())));
        assert!(q.is_idempotent());
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(
            AlgElem::tilde(&g, &f3, &g.whole()).unwrap_err(),
            AlgebraError::CharacteristicDividesOrder { p: 3, order: 3 }
        );
        assert_eq!(AlgElem::tilde(&g, &f, &g.trivial_subgroup()).unwrap(), AlgElem::one(&g, &f));
    }

    #[test]
    fn context_mismatch() {
        let g = Arc::new(Group::cyclic(3).unwrap());
        let h = Arc::new(Group::cyclic(4).unwrap());
        let f = FieldCtx::prime(2).unwrap();
        let a = AlgElem::one(&g, &f);
        assert_eq!(a.try_mul(&AlgElem::one(&h, &f)), Err(AlgebraError::ContextMismatch));
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(a.try_add(&AlgElem::one(&g, &f5)), Err(AlgebraError::ContextMismatch));
    }

    #[test]
    fn eps_of_c6_is_idempotent() {
        let g = Arc::new(Group::cyclic(6).unwrap());
        let one = AlgElem::one(&g, &Rationals);
        let m2 = AlgElem::tilde(&g, &Rationals, &g.closure(&[3])).unwrap();
        let m3 = AlgElem::tilde(&g, &Rationals, &g.closure(&[2])).unwrap();
        let eps = one.sub(&m2).mul(&one.sub(&m3));
        assert!(eps.is_idempotent());
        assert!(!eps.is_zero());
    }

    #[test]
    fn conjugation_and_dump() {
        let g = Arc::new(Group::metacyclic(7, 3, 2).unwrap());
        let f = FieldCtx::prime(2).unwrap();
        let b = g.closure(&[7]);
        let t = AlgElem::tilde(&g, &f, &b).unwrap();
        assert_eq!(t.conjugate(0), t);
        assert_eq!(t.conjugate(1), AlgElem::tilde(&g, &f, &g.conjugate_subgroup(&b, 1)).unwrap());
        assert_eq!(t.conjugate(1).conjugate(g.inv(1)), t);
        assert!(!t.is_central());
        assert!(AlgElem::tilde(&g, &f, &g.whole()).unwrap().is_central());
        assert_eq!(t.dump(), "1*1+1*b+1*b^2");
        assert_eq!(AlgElem::zero(&g, &f).dump(), "0");
        assert_eq!(t.left_mul_by(7), t);
    }
}
