//! Exact arithmetic in finite fields `F_{p^k}`.
//!
//! An element is stored as the integer `sum c_i p^i` of its coefficient
//! vector `(c_0, ..., c_{k-1})` over `F_p` in the basis `1, t, ..., t^{k-1}`,
//! where `t` is the class of the variable modulo the defining polynomial.
//! Integer order on these encodings is the canonical element order used by
//! every deterministic search in the crate.

mod extension;
pub(crate) mod poly;

use std::fmt;
use std::sync::Arc;

pub use extension::ExtensionCtx;

use crate::arith;
use crate::scalar::Field;

/// Log/antilog tables are built for fields up to this size.
const TABLE_LIMIT: u64 = 1 << 16;
/// Dense addition tables are built for fields up to this size.
const ADD_TABLE_LIMIT: u64 = 256;
/// Largest supported field cardinality.
pub const MAX_FIELD_SIZE: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field context")]
    ContextMismatch,
    #[error("{s} and {m} are not coprime")]
    NotCoprime { s: u64, m: u64 },
    #[error("{d} does not divide the extension degree {o}")]
    NotASubfieldDegree { d: u32, o: u32 },
    #[error("no primitive {m}-th root of unity in a field of size {size}")]
    OrderNotAvailable { m: u64, size: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{k} is too large")]
    TooLarge { p: u64, k: u32 },
}

/// A finite field element, encoded as its coefficient vector in base `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Inv,
    Neg,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    size: u32,
    modulus: Vec<u32>,
    generator: Fq,
    tables: Option<Tables>,
    add_table: Option<Vec<u32>>,
}

/// Arithmetic context for `F_{p^k}`. Cheap to clone and immutable.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.inner.p, self.inner.k, self.inner.modulus)
    }
}

impl FieldCtx {
    /// `F_p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// `F_{p^k}` defined by the smallest monic irreducible polynomial of
    /// degree `k` in canonical order.
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !arith::is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(FieldError::TooLarge { p: p as u64, k });
        }
        let size = arith::checked_pow(p as u64, k)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(FieldError::TooLarge { p: p as u64, k })?;
        let modulus = smallest_irreducible(p, k);
        Ok(Self::build(p, k, size as u32, modulus))
    }

    /// Field with `q = p^k` elements; `q` must be a prime power.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let f = arith::factorize(q);
        match f.as_slice() {
            [(p, k)] if *p <= u32::MAX as u64 => Self::new(*p as u32, *k),
            _ => Err(FieldError::NotPrime(q)),
        }
    }

    fn build(p: u32, k: u32, size: u32, modulus: Vec<u32>) -> Self {
        let mut inner = Inner {
            p,
            k,
            size,
            modulus,
            generator: Fq::ONE,
            tables: None,
            add_table: None,
        };
        if (size as u64) <= ADD_TABLE_LIMIT && p != 2 {
            let s = size as usize;
            let mut t = vec![0u32; s * s];
            for a in 0..size {
                for b in 0..size {
                    t[a as usize * s + b as usize] = add_digits(p, k, a, b);
                }
            }
            inner.add_table = Some(t);
        }
        let ctx = FieldCtx {
            inner: Arc::new(inner),
        };
        let generator = ctx.find_generator();
        let tables = if (size as u64) <= TABLE_LIMIT {
            let order = size as usize - 1;
            let mut exp = vec![0u32; 2 * order.max(1)];
            let mut log = vec![0u32; size as usize];
            let mut acc = Fq::ONE;
            for i in 0..order.max(1) {
                exp[i] = acc.0;
                log[acc.0 as usize] = i as u32;
                acc = ctx.mul_slow(acc, generator);
            }
            for i in order..2 * order {
                exp[i] = exp[i - order];
            }
            Some(Tables { exp, log })
        } else {
            None
        };
        let mut inner = Arc::try_unwrap(ctx.inner).ok().expect("fresh context");
        inner.generator = generator;
        inner.tables = tables;
        FieldCtx {
            inner: Arc::new(inner),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    /// Cardinality `s = p^k`.
    pub fn size(&self) -> u32 {
        self.inner.size
    }

    /// Defining polynomial, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// First multiplicative generator in canonical order.
    pub fn generator(&self) -> Fq {
        self.inner.generator
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.inner.size
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.inner.size).map(Fq)
    }

    pub fn digits(&self, a: Fq) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fq {
        let p = self.inner.p;
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            acc = acc * p + d % p;
        }
        Fq(acc)
    }

    /// The prime-field element `n mod p`.
    pub fn from_u64(&self, n: u64) -> Fq {
        Fq((n % self.inner.p as u64) as u32)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.inner.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if let Some(t) = &self.inner.add_table {
            return Fq(t[a.0 as usize * self.inner.size as usize + b.0 as usize]);
        }
        Fq(add_digits(self.inner.p, self.inner.k, a.0, b.0))
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let d: Vec<u32> = self.digits(a).into_iter().map(|c| (p - c) % p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        match &self.inner.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                Fq(t.exp[i])
            }
            None => self.mul_slow(a, b),
        }
    }

    /// Schoolbook multiplication modulo the defining polynomial.
    pub(crate) fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % p as u64) as u32);
        }
        let prod = poly::mulmod(&self.digits(a), &self.digits(b), &self.inner.modulus, p);
        self.from_digits(&prod)
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let order = self.inner.size as u64 - 1;
        match &self.inner.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u128 * (e % order) as u128 % order as u128;
                Fq(t.exp[l as usize])
            }
            None => self.pow_slow(a, e % order),
        }
    }

    fn pow_slow(&self, a: Fq, mut e: u64) -> Fq {
        let mut result = Fq::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_slow(result, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.inner.size as u64 - 1;
        Ok(self.pow(a, order - 1))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked arithmetic entry point: both operands must be elements of this
    /// context; `b` is ignored for unary operations.
    pub fn apply(&self, op: FieldOp, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(FieldError::ContextMismatch);
        }
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
            FieldOp::Pow(e) => self.pow(a, e),
            FieldOp::Inv => self.inv(a)?,
            FieldOp::Neg => self.neg(a),
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fq) -> u64 {
        assert!(!a.is_zero());
        let mut order = self.inner.size as u64 - 1;
        for q in arith::prime_divisors(order) {
            while order.is_multiple_of(q) && self.pow(a, order / q) == Fq::ONE {
                order /= q;
            }
        }
        order
    }

    fn find_generator(&self) -> Fq {
        let order = self.inner.size as u64 - 1;
        if order == 1 {
            return Fq::ONE;
        }
        let primes = arith::prime_divisors(order);
        (1..self.inner.size)
            .map(Fq)
            .find(|&g| primes.iter().all(|&q| self.pow_slow(g, order / q) != Fq::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Human-readable element: an integer in prime fields, otherwise a
    /// polynomial in `t`.
    pub fn format(&self, a: Fq) -> String {
        if self.inner.k == 1 {
            return a.0.to_string();
        }
        let d = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else if terms.len() == 1 {
            terms.remove(0)
        } else {
            format!("({})", terms.join("+"))
        }
    }

    /// `gf(p)` or `gf(p^k)`.
    pub fn name(&self) -> String {
        if self.inner.k == 1 {
            format!("gf({})", self.inner.p)
        } else {
            format!("gf({}^{})", self.inner.p, self.inner.k)
        }
    }
}

fn add_digits(p: u32, k: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..k {
        let d = (a % p + b % p) % p;
        out += d * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

/// Smallest monic irreducible polynomial of degree `k` over `F_p`, in the
/// order of the integer `sum c_i p^i` of its non-leading coefficients.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for c in 0..count {
        let mut f: Vec<u32> = (0..k)
            .map(|i| ((c / (p as u64).pow(i)) % p as u64) as u32)
            .collect();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field for FieldCtx {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }
    fn one(&self) -> Fq {
        Fq::ONE
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        FieldCtx::add(self, *a, *b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        FieldCtx::sub(self, *a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        FieldCtx::neg(self, *a)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        FieldCtx::mul(self, *a, *b)
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        FieldCtx::inv(self, *a).ok()
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }
    fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.inner.p as i64) as u32)
    }
    fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }
    fn format(&self, a: &Fq) -> String {
        FieldCtx::format(self, *a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(f2.add(Fq(1), Fq(1)), Fq(0));
        let f3 = FieldCtx::prime(3).unwrap();
        // 2*2 = 4 = 1 mod 3
        assert_eq!(f3.inv(Fq(2)).unwrap(), Fq(2));
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // t*t = t+1
        assert_eq!(f4.mul(Fq(2), Fq(2)), Fq(3));
        assert_eq!(f4.format(Fq(3)), "(t+1)");
    }

    #[test]
    fn modulus_choice_is_smallest_in_canonical_order() {
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn checked_ops_report_errors() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(f3.apply(FieldOp::Div, Fq(1), Fq(0)), Err(FieldError::DivisionByZero));
        assert_eq!(f3.apply(FieldOp::Add, Fq(1), Fq(7)), Err(FieldError::ContextMismatch));
        assert_eq!(f3.apply(FieldOp::Inv, Fq(0), Fq(0)), Err(FieldError::DivisionByZero));
        assert_eq!(f3.apply(FieldOp::Pow(5), Fq(2), Fq(0)), Ok(Fq(2)));
        assert!(FieldCtx::prime(4).is_err());
    }

    /// Field axioms exhaustively for every field with at most 64 elements,
    /// with table multiplication checked against schoolbook multiplication.
    #[test]
    fn exhaustive_axioms_small_fields() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)] {
            let f = FieldCtx::new(p, k).unwrap();
            let els: Vec<Fq> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                if !a.is_zero() {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, ai), Fq::ONE);
                    assert_eq!(f.mul(ai, a), Fq::ONE);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
            if els.len() <= 27 {
                for &a in &els {
                    for &b in &els {
                        for &c in &els {
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        }
                    }
                }
            }
            assert_eq!(f.element_order(f.generator()), f.size() as u64 - 1);
        }
    }

    #[test]
    fn untabled_field_agrees_with_powers() {
        // 2^17 exceeds the table limit, exercising the polynomial path
        let f = FieldCtx::new(2, 17).unwrap();
        let g = f.generator();
        let order = f.size() as u64 - 1;
        assert_eq!(f.pow(g, order), Fq::ONE);
        let x = Fq(12345);
        assert_eq!(f.mul(x, f.inv(x).unwrap()), Fq::ONE);
    }
}
