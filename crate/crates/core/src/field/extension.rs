use std::collections::HashMap;

use super::{FieldCtx, FieldError, Fq};
use crate::arith;
use crate::linalg::{self, Matrix};

/// `F_{s^o}` over `F_s`, with `F_{s^o}` realised directly as a degree `k*o`
/// extension of the prime field and `F_s` embedded by sending its generator
/// `t` to the smallest root of its defining polynomial.
#[derive(Clone, Debug)]
pub struct ExtensionCtx {
    base: FieldCtx,
    degree: u32,
    top: FieldCtx,
    embed: Vec<Fq>,
    unembed: HashMap<Fq, Fq>,
}

impl ExtensionCtx {
    pub fn new(base: &FieldCtx, degree: u32) -> Result<Self, FieldError> {
        let top = FieldCtx::new(base.p(), base.k() * degree)?;
        let root = if base.k() == 1 {
            Fq::ZERO
        } else {
            let m = base.modulus();
            top.elements()
                .find(|&x| {
                    let mut acc = Fq::ZERO;
                    for &c in m.iter().rev() {
                        acc = top.add(top.mul(acc, x), Fq(c));
                    }
                    acc.is_zero()
                })
                .expect("the defining polynomial splits in every extension")
        };
        let mut embed = Vec::with_capacity(base.size() as usize);
        let mut unembed = HashMap::new();
        for a in base.elements() {
            let mut acc = Fq::ZERO;
            for &c in base.digits(a).iter().rev() {
                acc = top.add(top.mul(acc, root), Fq(c));
            }
            embed.push(acc);
            unembed.insert(acc, a);
        }
        Ok(ExtensionCtx {
            base: base.clone(),
            degree,
            top,
            embed,
            unembed,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn top(&self) -> &FieldCtx {
        &self.top
    }

    /// Degree `o` of the extension over the base field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, a: Fq) -> Fq {
        self.embed[a.0 as usize]
    }

    /// Preimage of `x` under the embedding, if `x` lies in the base field.
    pub fn to_base(&self, x: Fq) -> Option<Fq> {
        self.unembed.get(&x).copied()
    }

    fn base_power(&self, i: u32) -> u64 {
        (self.base.size() as u64).pow(i)
    }

    /// `x^(s^i)`, with `i` taken modulo the degree.
    pub fn frobenius(&self, x: Fq, i: i64) -> Fq {
        let i = i.rem_euclid(self.degree as i64) as u32;
        self.top.pow(x, self.base_power(i))
    }

    /// Trace from `F_{s^o}` down to `F_{s^d}`; the result is returned as an
    /// element of the top field fixed by `x -> x^(s^d)`.
    pub fn trace_to_subfield(&self, x: Fq, d: u32) -> Result<Fq, FieldError> {
        if d == 0 || !self.degree.is_multiple_of(d) {
            return Err(FieldError::NotASubfieldDegree { d, o: self.degree });
        }
        let mut acc = Fq::ZERO;
        for i in 0..self.degree / d {
            acc = self.top.add(acc, self.frobenius(x, (d * i) as i64));
        }
        Ok(acc)
    }

    /// Trace down to the base field, as a base-field element.
    pub fn trace_to_base(&self, x: Fq) -> Fq {
        let t = self.trace_to_subfield(x, 1).expect("1 divides every degree");
        self.to_base(t).expect("trace lands in the base field")
    }

    /// Deterministic primitive `m`-th root of unity `g^((S-1)/m)` where `g` is
    /// the first generator of the top field.
    pub fn root_of_unity(&self, m: u64) -> Result<Fq, FieldError> {
        let order = self.top.size() as u64 - 1;
        if m == 0 || !order.is_multiple_of(m) {
            return Err(FieldError::OrderNotAvailable {
                m,
                size: self.top.size() as u64,
            });
        }
        Ok(self.top.pow(self.top.generator(), order / m))
    }

    /// First element `w` in canonical order whose orbit under
    /// `x -> x^(s^(o/n))` is a basis of `F_{s^o}` over `F_{s^(o/n)}`.
    pub fn normal_element(&self, n: u32) -> Result<Fq, FieldError> {
        if n == 0 || !self.degree.is_multiple_of(n) {
            return Err(FieldError::NotASubfieldDegree { d: n, o: self.degree });
        }
        let step = (self.degree / n) as i64;
        let w = self
            .top
            .elements()
            .find(|&w| self.is_normal(w, n, step))
            .expect("normal basis theorem: a normal element exists");
        Ok(w)
    }

    /// All normal elements for degree `n`, in canonical order.
    pub fn normal_elements(&self, n: u32) -> Result<Vec<Fq>, FieldError> {
        if n == 0 || !self.degree.is_multiple_of(n) {
            return Err(FieldError::NotASubfieldDegree { d: n, o: self.degree });
        }
        let step = (self.degree / n) as i64;
        Ok(self.top.elements().filter(|&w| self.is_normal(w, n, step)).collect())
    }

    /// Normal elements up to scaling by the fixed field of `frob^(o/n)`,
    /// each class represented by its first member in canonical order.
    /// Scaling `w` by a fixed-field unit leaves the normal-basis coordinate
    /// maps unchanged up to that scalar.
    pub fn normal_element_classes(&self, n: u32) -> Result<Vec<Fq>, FieldError> {
        let all = self.normal_elements(n)?;
        let step = (self.degree / n) as i64;
        let units: Vec<Fq> = self
            .top
            .elements()
            .filter(|&c| !c.is_zero() && self.frobenius(c, step) == c)
            .collect();
        let mut seen = std::collections::HashSet::new();
        let mut reps = Vec::new();
        for w in all {
            if seen.contains(&w) {
                continue;
            }
            reps.push(w);
            seen.extend(units.iter().map(|&c| self.top.mul(c, w)));
        }
        Ok(reps)
    }

    /// Elements `b_0..b_{n-1}` form a basis over the fixed field of
    /// `sigma = frob^step` iff `det(sigma^j(b_i)) != 0`.
    fn is_normal(&self, w: Fq, n: u32, step: i64) -> bool {
        let orbit: Vec<Fq> = (0..n).map(|i| self.frobenius(w, step * i as i64)).collect();
        let m = Matrix::from_fn(n as usize, n as usize, |i, j| {
            self.frobenius(orbit[i], step * j as i64)
        });
        linalg::rank(&self.top, &m) == n as usize
    }

    /// Normal basis `{w^(q^i)}` with `q = s^(o/n)`.
    pub fn normal_basis(&self, w: Fq, n: u32) -> Vec<Fq> {
        let step = (self.degree / n) as i64;
        (0..n).map(|i| self.frobenius(w, step * i as i64)).collect()
    }

    /// Checks that `F_{s^o}` contains primitive `m`-th roots of unity.
    pub fn has_roots_of_unity(&self, m: u64) -> bool {
        m > 0 && (self.top.size() as u64 - 1).is_multiple_of(m) && arith::gcd(m, self.base.p() as u64) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_over_f2() {
        let f2 = FieldCtx::prime(2).unwrap();
        let ext = ExtensionCtx::new(&f2, 2).unwrap();
        let t = Fq(2);
        assert_eq!(ext.frobenius(t, 0), t);
        assert_eq!(ext.frobenius(t, 1), Fq(3));
        assert_eq!(ext.trace_to_subfield(Fq(1), 1).unwrap(), Fq(0));
        assert_eq!(ext.trace_to_subfield(t, 1).unwrap(), Fq(1));
        assert_eq!(ext.trace_to_subfield(t, 2).unwrap(), t);
        assert!(ext.trace_to_subfield(t, 3).is_err());
        let xi = ext.root_of_unity(3).unwrap();
        assert!(xi == Fq(2) || xi == Fq(3));
        assert_eq!(ext.root_of_unity(3).unwrap(), xi);
        assert_eq!(ext.normal_element(2).unwrap(), t);
        assert_eq!(ext.normal_element(1).unwrap(), Fq::ONE);
    }

    #[test]
    fn ninth_root_in_f64() {
        let f2 = FieldCtx::prime(2).unwrap();
        let ext = ExtensionCtx::new(&f2, 6).unwrap();
        let xi = ext.root_of_unity(9).unwrap();
        let top = ext.top();
        assert_eq!(top.pow(xi, 9), Fq::ONE);
        assert_ne!(top.pow(xi, 3), Fq::ONE);
        let powers: std::collections::HashSet<Fq> = (0..9).map(|j| top.pow(xi, j)).collect();
        assert_eq!(powers.len(), 9);
        assert!(ext.root_of_unity(5).is_err());
    }

    #[test]
    fn embedding_of_nonprime_base_is_a_homomorphism() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let ext = ExtensionCtx::new(&f4, 5).unwrap();
        let top = ext.top();
        assert_eq!(ext.embed(Fq::ONE), Fq::ONE);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(ext.embed(f4.add(a, b)), top.add(ext.embed(a), ext.embed(b)));
                assert_eq!(ext.embed(f4.mul(a, b)), top.mul(ext.embed(a), ext.embed(b)));
            }
            assert_eq!(ext.frobenius(ext.embed(a), 1), ext.embed(a));
        }
    }

    #[test]
    fn normal_elements_give_invertible_orbit_matrices() {
        let f3 = FieldCtx::prime(3).unwrap();
        let ext = ExtensionCtx::new(&f3, 4).unwrap();
        for n in [1, 2, 4] {
            let w = ext.normal_element(n).unwrap();
            let b = ext.normal_basis(w, n);
            assert_eq!(b.len(), n as usize);
            let step = (4 / n) as i64;
            let m = Matrix::from_fn(n as usize, n as usize, |i, j| ext.frobenius(b[i], step * j as i64));
            assert!(linalg::inverse(ext.top(), &m).is_some());
        }
    }
}
