//! Complete sets of orthogonal primitive idempotents of a Wedderburn
//! component: the crossed-product construction for trivial twisting and the
//! construction for nilpotent groups.

use std::sync::Arc;

use crate::algebra::AlgElem;
use crate::arith;
use crate::field::{FieldCtx, FieldError, Fq};
use crate::group::{Elem, Group, GroupError, QuotientMap, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::linalg::{self, Matrix};
use crate::shoda::{ComponentInfo, PairField, ShodaError, StrongShodaPair, Twisting};
use crate::FqAlgElem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdempotentError {
    #[error("the component has non-trivial twisting")]
    NontrivialTwisting,
    #[error("element does not lie in the component")]
    NotInComponent,
    #[error("singular system while inverting the crossed-product isomorphism")]
    SingularSystem,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("presentation match failed: {0}")]
    PresentationMatchFailure(String),
    #[error("no solution of x^2 + y^2 = -1 with y != 0")]
    NoSolution,
    #[error(transparent)]
    Shoda(#[from] ShodaError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<GroupError> for IdempotentError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotNilpotent => IdempotentError::NotNilpotent,
            other => IdempotentError::Shoda(ShodaError::Group(other)),
        }
    }
}

/// The crossed product `F E eps = L * E/H` with `L = F_{s^o}`, for a
/// component with trivial twisting, and the isomorphism `psi` onto
/// `M_n(F_{s^(o/n)})` relative to a normal basis.
#[derive(Clone, Debug)]
pub struct CrossedCtx {
    group: Arc<Group>,
    field: FieldCtx,
    pair: Arc<StrongShodaPair>,
    stabilizer: Subgroup,
    pf: PairField,
    j: u64,
    eps: FqAlgElem,
    t1: Vec<Elem>,
    /// `l_t` with `alpha_t = frob^(l_t)`, one per element of `t1`.
    galois: Vec<i64>,
    n: usize,
    w: Fq,
    basis: Vec<Fq>,
    /// Inverse of `D^T` with `D[i][j] = sigma^j(b_i)`.
    coord_inv: Matrix<Fq>,
}

impl CrossedCtx {
    pub fn new(g: &Arc<Group>, comp: &ComponentInfo, field: &FieldCtx) -> Result<Self, IdempotentError> {
        Self::build(g, comp, field, None)
    }

    /// Same, with a given normal element instead of the canonical one.
    pub fn with_normal_element(
        g: &Arc<Group>,
        comp: &ComponentInfo,
        field: &FieldCtx,
        w: Fq,
    ) -> Result<Self, IdempotentError> {
        Self::build(g, comp, field, Some(w))
    }

    fn build(g: &Arc<Group>, comp: &ComponentInfo, field: &FieldCtx, w: Option<Fq>) -> Result<Self, IdempotentError> {
        let Twisting::Trivial { t1, .. } = &comp.twisting else {
            return Err(IdempotentError::NontrivialTwisting);
        };
        let pair = comp.pair.clone();
        let pf = PairField::new(&pair, field)?;
        let m = pair.index();
        let s = field.size() as u64;
        let n = comp.n();
        let galois: Vec<i64> = t1
            .iter()
            .map(|&t| {
                let i = pair.action_exponent(g, t).expect("t normalizes H");
                (0..pf.o)
                    .find(|&l| arith::pow_mod(s, l, m) == i % m)
                    .expect("E acts through powers of s") as i64
            })
            .collect();
        let mut distinct = galois.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), n, "E/H must act faithfully");
        let w = match w {
            Some(w) => w,
            None => pf.ext.normal_element(n as u32)?,
        };
        let basis = pf.ext.normal_basis(w, n as u32);
        let step = (pf.o as usize / n) as i64;
        let top = pf.ext.top().clone();
        let d_t = Matrix::from_fn(n, n, |r, c| pf.ext.frobenius(basis[c], step * r as i64));
        let coord_inv = linalg::inverse(&top, &d_t).ok_or(IdempotentError::SingularSystem)?;
        Ok(CrossedCtx {
            group: g.clone(),
            field: field.clone(),
            pair,
            stabilizer: comp.stabilizer.clone(),
            j: comp.class.representative(),
            eps: comp.eps.clone(),
            t1: t1.clone(),
            galois,
            n,
            w,
            basis,
            coord_inv,
            pf,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t1(&self) -> &[Elem] {
        &self.t1
    }

    pub fn normal_element(&self) -> Fq {
        self.w
    }

    pub fn basis(&self) -> &[Fq] {
        &self.basis
    }

    pub fn eps(&self) -> &FqAlgElem {
        &self.eps
    }

    /// The matrix field `F_{s^(o/n)}`, realised inside the top field.
    pub fn matrix_field(&self) -> &FieldCtx {
        self.pf.ext.top()
    }

    /// `chi(sum_h c_h h)` for an element of `F H`.
    fn to_field(&self, coeffs: impl Iterator<Item = (Elem, Fq)>) -> Fq {
        let top = self.pf.ext.top();
        let mut acc = Fq::ZERO;
        for (h, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let term = top.mul(self.pf.ext.embed(c), self.pf.chi(&self.pair, self.j, h));
            acc = top.add(acc, term);
        }
        acc
    }

    /// The element of `F H eps` mapped to `x` by `chi`.
    fn from_field(&self, x: Fq) -> FqAlgElem {
        let top = self.pf.ext.top();
        let f = &self.field;
        let inv_h = f.inv(f.from_u64(self.pair.h().len() as u64)).expect("|H| invertible");
        let mut out = AlgElem::zero(&self.group, f);
        if x.is_zero() {
            return out;
        }
        for &h in self.pair.h().elements() {
            let chi_inv = top.inv(self.pf.chi(&self.pair, self.j, h)).expect("root of unity");
            let tr = self.pf.ext.trace_to_base(top.mul(x, chi_inv));
            out.set_coeff(h, f.mul(inv_h, tr));
        }
        out
    }

    /// Coordinates `x_t` of `c = sum_t x_t u_t`.
    fn decompose(&self, c: &FqAlgElem) -> Result<Vec<Fq>, IdempotentError> {
        if c.mul(&self.eps) != *c || c.support().iter().any(|&x| !self.stabilizer.contains(x)) {
            return Err(IdempotentError::NotInComponent);
        }
        let g = &self.group;
        Ok(self
            .t1
            .iter()
            .map(|&t| {
                self.to_field(
                    self.pair
                        .h()
                        .elements()
                        .iter()
                        .map(|&h| (h, *c.coeff(g.mul(h, t)))),
                )
            })
            .collect())
    }

    /// Coordinates of `v` in the normal basis.
    fn coords(&self, v: Fq) -> Vec<Fq> {
        let top = self.pf.ext.top();
        let step = (self.pf.o as usize / self.n) as i64;
        let rhs: Vec<Fq> = (0..self.n).map(|j| self.pf.ext.frobenius(v, step * j as i64)).collect();
        (0..self.n)
            .map(|r| {
                (0..self.n).fold(Fq::ZERO, |acc, c| top.add(acc, top.mul(*self.coord_inv.get(r, c), rhs[c])))
            })
            .collect()
    }

    fn alpha(&self, ti: usize, v: Fq) -> Fq {
        self.pf.ext.frobenius(v, self.galois[ti])
    }

    /// `psi(c)`: column `c` holds the coordinates of `sum_t x_t alpha_t(b_c)`.
    pub fn psi_matrix(&self, c: &FqAlgElem) -> Result<Matrix<Fq>, IdempotentError> {
        let xs = self.decompose(c)?;
        let top = self.pf.ext.top();
        let cols: Vec<Vec<Fq>> = self
            .basis
            .iter()
            .map(|&b| {
                let v = xs
                    .iter()
                    .enumerate()
                    .fold(Fq::ZERO, |acc, (ti, &x)| top.add(acc, top.mul(x, self.alpha(ti, b))));
                self.coords(v)
            })
            .collect();
        Ok(Matrix::from_fn(self.n, self.n, |r, c| cols[c][r]))
    }

    /// Inverse of [`psi_matrix`](Self::psi_matrix): solves
    /// `sum_t x_t alpha_t(b_c) = sum_r M[r][c] b_r` for the `x_t`.
    pub fn psi_inverse(&self, m: &Matrix<Fq>) -> Result<FqAlgElem, IdempotentError> {
        let top = self.pf.ext.top();
        let n = self.n;
        let w = Matrix::from_fn(n, n, |c, t| self.alpha(t, self.basis[c]));
        let rhs: Vec<Fq> = (0..n)
            .map(|c| (0..n).fold(Fq::ZERO, |acc, r| top.add(acc, top.mul(*m.get(r, c), self.basis[r]))))
            .collect();
        let xs = linalg::solve(top, &w, &rhs).ok_or(IdempotentError::SingularSystem)?;
        let mut out = AlgElem::zero(&self.group, &self.field);
        for (ti, &x) in xs.iter().enumerate() {
            out = out.add(&self.from_field(x).right_mul_by(self.t1[ti]));
        }
        Ok(out)
    }

    /// `T_1~ eps`.
    pub fn t1_average(&self) -> FqAlgElem {
        let f = &self.field;
        let inv_n = f.inv(f.from_u64(self.n as u64)).expect("n invertible");
        let sum = AlgElem::set_sum(&self.group, f, &self.t1, &inv_n);
        sum.mul(&self.eps)
    }
}

/// `P` (first row and column all ones, `-1` on the rest of the diagonal),
/// the cyclic shift `A`, and `P^-1`.
pub fn build_p_a(n: usize, f: &FieldCtx) -> (Matrix<Fq>, Matrix<Fq>, Matrix<Fq>) {
    let minus_one = f.neg(Fq::ONE);
    let p = Matrix::from_fn(n, n, |r, c| {
        if r == 0 || c == 0 {
            Fq::ONE
        } else if r == c {
            minus_one
        } else {
            Fq::ZERO
        }
    });
    let a = Matrix::from_fn(n, n, |r, c| {
        if (r == 0 && c == n - 1) || (r > 0 && c == r - 1) {
            Fq::ONE
        } else {
            Fq::ZERO
        }
    });
    let p_inv = linalg::inverse(f, &p).expect("P is invertible when char does not divide n");
    (p, a, p_inv)
}

/// Where an idempotent of a [`PrimSet`] came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `r^-1 x_e^i (T_1~ eps) x_e^-i r`.
    Crossed { transversal: Elem, power: usize },
    /// `t^-1 beta t` with `t = t_odd t_two t_e`.
    Nilpotent { t_odd: Elem, t_two: Elem, t_e: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Crossed,
    Nilpotent,
}

#[derive(Clone, Debug)]
pub struct PrimSet {
    pub method: Method,
    pub idems: Vec<FqAlgElem>,
    pub provenance: Vec<Provenance>,
    /// Notes on branch choices (nilpotent sub-cases).
    pub notes: Vec<String>,
}

impl PrimSet {
    /// Each element is a nonzero idempotent, all products of distinct elements
    /// vanish and the sum is `e`.
    pub fn verify(&self, e: &FqAlgElem) -> bool {
        let idem = self.idems.iter().all(|x| !x.is_zero() && x.is_idempotent());
        let orth = self.idems.iter().enumerate().all(|(i, a)| {
            self.idems
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || a.mul(b).is_zero())
        });
        let mut sum = AlgElem::zero(e.group(), e.field());
        for x in &self.idems {
            sum = sum.add(x);
        }
        idem && orth && sum == *e
    }
}

pub fn primitive_idempotents_trivial_twisting(
    g: &Arc<Group>,
    comp: &ComponentInfo,
    field: &FieldCtx,
) -> Result<PrimSet, IdempotentError> {
    crossed_set(&CrossedCtx::new(g, comp, field)?, g, comp)
}

/// Representatives of the normal elements usable by
/// [`CrossedCtx::with_normal_element`], up to scaling by the center; the
/// first one is the canonical normal element.
pub fn normal_element_classes(comp: &ComponentInfo, field: &FieldCtx) -> Result<Vec<Fq>, IdempotentError> {
    let pf = PairField::new(&comp.pair, field)?;
    Ok(pf.ext.normal_element_classes(comp.n() as u32)?)
}

/// The trivial-twisting construction relative to a given normal element.
pub fn primitive_idempotents_with_normal_element(
    g: &Arc<Group>,
    comp: &ComponentInfo,
    field: &FieldCtx,
    w: Fq,
) -> Result<PrimSet, IdempotentError> {
    crossed_set(&CrossedCtx::with_normal_element(g, comp, field, w)?, g, comp)
}

fn crossed_set(ctx: &CrossedCtx, g: &Arc<Group>, comp: &ComponentInfo) -> Result<PrimSet, IdempotentError> {
    let n = ctx.n();
    let mf = ctx.matrix_field().clone();
    let (p, a, p_inv) = build_p_a(n, &mf);
    let conj_pow = |i: usize| -> Result<FqAlgElem, IdempotentError> {
        let m = linalg::mul(&mf, &linalg::mul(&mf, &p, &linalg::pow(&mf, &a, i as u64)), &p_inv);
        ctx.psi_inverse(&m)
    };
    let f = ctx.t1_average();
    let mut conjugated = Vec::with_capacity(n);
    for i in 0..n {
        let x = conj_pow(i)?;
        let x_inv = conj_pow((n - i) % n)?;
        conjugated.push(x.mul(&f).mul(&x_inv));
    }
    let mut idems = Vec::new();
    let mut provenance = Vec::new();
    for r in g.right_transversal(&comp.stabilizer) {
        for (i, c) in conjugated.iter().enumerate() {
            idems.push(c.conjugate(r));
            provenance.push(Provenance::Crossed { transversal: r, power: i });
        }
    }
    Ok(PrimSet {
        method: Method::Crossed,
        idems,
        provenance,
        notes: Vec::new(),
    })
}

/// First `(x, y)` in canonical order with `x^2 + y^2 = -1` and `y != 0`.
pub fn solve_sum_of_squares(f: &FieldCtx) -> Result<(Fq, Fq), IdempotentError> {
    let minus_one = f.neg(Fq::ONE);
    for x in f.elements() {
        for y in f.elements().skip(1) {
            if f.add(f.mul(x, x), f.mul(y, y)) == minus_one {
                return Ok((x, y));
            }
        }
    }
    Err(IdempotentError::NoSolution)
}

/// `e` with `e = 1 mod a` and `e = 0 mod b` for coprime `a`, `b`.
fn crt_unit(a: u64, b: u64) -> u64 {
    if a == 1 {
        return 0;
    }
    let inv = arith::inv_mod(b % a, a).expect("coprime parts");
    (b * inv) % (a * b)
}

pub fn primitive_idempotents_nilpotent(
    g: &Arc<Group>,
    comp: &ComponentInfo,
    field: &FieldCtx,
) -> Result<PrimSet, IdempotentError> {
    if !g.is_nilpotent() {
        return Err(IdempotentError::NotNilpotent);
    }
    let pair = &comp.pair;
    let e_sub = &comp.stabilizer;
    let q = QuotientMap::new(g, e_sub, pair.k()).map_err(IdempotentError::from)?;
    let qg = q.quotient();
    let (q2, q_odd) = qg.primary_decomposition(2)?;
    let m = pair.index();
    let (m2, m_odd) = arith::split_prime_part(m, 2);
    let abar = q.proj(pair.generator());
    let a2 = qg.pow(abar, crt_unit(m2, m_odd) as i64);
    let a_odd = qg.pow(abar, crt_unit(m_odd, m2) as i64);
    let h2 = qg.closure(&[a2]);
    let h_odd = qg.closure(&[a_odd]);
    let mut notes = Vec::new();

    // cyclic complement of <a_odd> in the odd part
    let d_odd = q_odd.len() / h_odd.len();
    let b_odd = q_odd
        .elements()
        .iter()
        .copied()
        .find(|&b| qg.element_order(b) as usize == d_odd && qg.closure(&[b]).intersection(&h_odd).is_trivial())
        .ok_or_else(|| IdempotentError::PresentationMatchFailure("no cyclic complement in the odd part".into()))?;
    let b_odd_t = AlgElem::tilde(g, field, &g.closure(&[q.section(b_odd)])).map_err(ShodaError::from)?;

    let d = q2.len() / h2.len();
    let n_exp = h2.len().trailing_zeros();
    let lift = |x: Elem| q.section(x);
    let complement = qg
        .subgroups(DEFAULT_SUBGROUP_BOUND)?
        .into_iter()
        .find(|s| s.len() == d && s.is_subset_of(&q2) && s.intersection(&h2).is_trivial());
    let (beta2, t2): (FqAlgElem, Vec<Elem>) = match complement {
        Some(m2) => {
            let beta2 = AlgElem::tilde(g, field, &q.preimage(g, &m2)).map_err(ShodaError::from)?;
            let cyclic = qg.is_cyclic_subgroup(&m2).is_some();
            let central = n_exp <= 1 || {
                let z = qg.pow(a2, 1 << (n_exp - 2));
                q2.elements().iter().all(|&x| qg.mul(x, z) == qg.mul(z, x))
            };
            let t2 = if cyclic && central {
                notes.push("case 1a".to_string());
                (0..d).map(|i| lift(qg.pow(a2, i as i64))).collect()
            } else {
                notes.push("case 1b".to_string());
                let base = 1i64 << (n_exp - 2);
                (0..d / 2)
                    .map(|i| lift(qg.pow(a2, i as i64)))
                    .chain((0..d / 2).map(|i| lift(qg.pow(a2, base + i as i64))))
                    .collect()
            };
            (beta2, t2)
        }
        None => {
            notes.push("case 2".to_string());
            if n_exp < 2 {
                return Err(IdempotentError::PresentationMatchFailure("H_2/K too small for case 2".into()));
            }
            let half = d / 2;
            let a2_inv = qg.inv(a2);
            let c_target = qg.pow(a2, 1 << (n_exp - 1));
            let mut found = None;
            'search: for &c in q2.elements() {
                if qg.mul(c, c) != c_target || qg.conj(a2, c) != a2_inv {
                    continue;
                }
                for &b in q2.elements() {
                    if qg.pow(b, half as i64) != qg.identity() || qg.commutator(b, c) != qg.identity() {
                        continue;
                    }
                    let conj = qg.conj(a2, b);
                    let Some(r) = (0..h2.len() as i64).find(|&r| qg.pow(a2, r) == conj) else {
                        continue;
                    };
                    if r % 4 != 1 || qg.closure(&[a2, b, c]).len() != q2.len() {
                        continue;
                    }
                    found = Some((b, c));
                    break 'search;
                }
            }
            let (b2, c2) = found
                .ok_or_else(|| IdempotentError::PresentationMatchFailure("no b_2, c_2 for case 2".into()))?;
            let (x, y) = solve_sum_of_squares(field)?;
            let z = lift(qg.pow(a2, 1 << (n_exp - 2)));
            let c2l = lift(c2);
            let one = AlgElem::one(g, field);
            let inner = one
                .add(&AlgElem::basis(g, field, z).scalar_mul(&x))
                .add(&AlgElem::basis(g, field, g.mul(z, c2l)).scalar_mul(&y))
                .scalar_mul(&field.inv(field.from_u64(2))?);
            let b2_t = AlgElem::tilde(g, field, &g.closure(&[lift(b2)])).map_err(ShodaError::from)?;
            let t2 = (0..half)
                .map(|i| lift(qg.pow(a2, i as i64)))
                .chain((0..half).map(|i| g.mul(c2l, lift(qg.pow(a2, i as i64)))))
                .collect();
            (b2_t.mul(&inner), t2)
        }
    };
    let beta = b_odd_t.mul(&beta2).mul(&comp.eps);
    let t_odd: Vec<Elem> = (0..d_odd).map(|i| lift(qg.pow(a_odd, i as i64))).collect();
    let t_e = g.right_transversal(e_sub);
    let mut idems = Vec::new();
    let mut provenance = Vec::new();
    for &to in &t_odd {
        for &tt in &t2 {
            for &te in &t_e {
                let t = g.mul(g.mul(to, tt), te);
                idems.push(beta.conjugate(t));
                provenance.push(Provenance::Nilpotent {
                    t_odd: to,
                    t_two: tt,
                    t_e: te,
                });
            }
        }
    }
    Ok(PrimSet {
        method: Method::Nilpotent,
        idems,
        provenance,
        notes,
    })
}

/// Trivial-twisting construction when available, otherwise the nilpotent one.
pub fn primitive_idempotents(
    g: &Arc<Group>,
    comp: &ComponentInfo,
    field: &FieldCtx,
) -> Result<PrimSet, IdempotentError> {
    if comp.twisting.is_trivial() {
        primitive_idempotents_trivial_twisting(g, comp, field)
    } else {
        primitive_idempotents_nilpotent(g, comp, field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shoda::{components_of_pair, StrongShodaPair};

    fn component(g: &Arc<Group>, h: &Subgroup, k: &Subgroup, f: &FieldCtx, idx: usize) -> ComponentInfo {
        let pair = Arc::new(StrongShodaPair::new(g, h, k).unwrap());
        components_of_pair(g, &pair, f).unwrap().swap_remove(idx)
    }

    #[test]
    fn p_and_a() {
        let f = FieldCtx::prime(3).unwrap();
        let (p, a, p_inv) = build_p_a(1, &f);
        assert_eq!(p, linalg::identity(&f, 1));
        assert_eq!(a, linalg::identity(&f, 1));
        assert_eq!(p_inv, linalg::identity(&f, 1));
        let (p, a, _) = build_p_a(2, &f);
        assert_eq!(p.row_vecs(), vec![vec![Fq(1), Fq(1)], vec![Fq(1), Fq(2)]]);
        assert_eq!(a.row_vecs(), vec![vec![Fq(0), Fq(1)], vec![Fq(1), Fq(0)]]);
        let f5 = FieldCtx::prime(5).unwrap();
        let (_, a, _) = build_p_a(4, &f5);
        assert_eq!(linalg::pow(&f5, &a, 4), linalg::identity(&f5, 4));
        let e11 = Matrix::from_fn(4, 4, |r, c| if r == 0 && c == 0 { Fq(1) } else { Fq(0) });
        let e22 = Matrix::from_fn(4, 4, |r, c| if r == 1 && c == 1 { Fq(1) } else { Fq(0) });
        let a_inv = linalg::inverse(&f5, &a).unwrap();
        assert_eq!(linalg::mul(&f5, &linalg::mul(&f5, &a, &e11), &a_inv), e22);
    }

    #[test]
    fn sums_of_squares() {
        assert_eq!(solve_sum_of_squares(&FieldCtx::prime(3).unwrap()).unwrap(), (Fq(1), Fq(1)));
        assert_eq!(solve_sum_of_squares(&FieldCtx::prime(5).unwrap()).unwrap(), (Fq(0), Fq(2)));
        for q in [7u64, 9, 11, 25] {
            let f = FieldCtx::with_order(q).unwrap();
            let (x, y) = solve_sum_of_squares(&f).unwrap();
            assert!(!y.is_zero());
            assert_eq!(f.add(f.add(f.mul(x, x), f.mul(y, y)), Fq::ONE), Fq::ZERO);
        }
    }

    #[test]
    fn psi_basics_on_f20() {
        let g = Arc::new(Group::metacyclic(5, 4, 2).unwrap());
        let f3 = FieldCtx::prime(3).unwrap();
        let comp = component(&g, &g.closure(&[1]), &g.trivial_subgroup(), &f3, 0);
        let ctx = CrossedCtx::new(&g, &comp, &f3).unwrap();
        let mf = ctx.matrix_field().clone();
        assert_eq!(ctx.psi_matrix(ctx.eps()).unwrap(), linalg::identity(&mf, 4));
        assert_eq!(ctx.psi_inverse(&linalg::identity(&mf, 4)).unwrap(), *ctx.eps());
        for &t in ctx.t1() {
            let m = ctx.psi_matrix(&ctx.eps().left_mul_by(t)).unwrap();
            for r in 0..4 {
                let ones = m.row(r).iter().filter(|&&x| x == Fq::ONE).count();
                let zeros = m.row(r).iter().filter(|&&x| x == Fq::ZERO).count();
                assert_eq!((ones, zeros), (1, 3));
            }
        }
        let avg = ctx.psi_matrix(&ctx.t1_average()).unwrap();
        let quarter = mf.inv(mf.from_u64(4)).unwrap();
        assert!((0..4).all(|r| avg.row(r).iter().all(|&x| x == quarter)));
        let (p, _, p_inv) = build_p_a(4, &mf);
        let e11 = Matrix::from_fn(4, 4, |r, c| if r == 0 && c == 0 { Fq(1) } else { Fq(0) });
        assert_eq!(avg, linalg::mul(&mf, &linalg::mul(&mf, &p, &e11), &p_inv));
        let outside = AlgElem::basis(&g, &f3, 0);
        assert_eq!(ctx.psi_matrix(&outside).unwrap_err(), IdempotentError::NotInComponent);
    }

    #[test]
    fn f20_over_f3() {
        let g = Arc::new(Group::metacyclic(5, 4, 2).unwrap());
        let f3 = FieldCtx::prime(3).unwrap();
        let comp = component(&g, &g.closure(&[1]), &g.trivial_subgroup(), &f3, 0);
        let set = primitive_idempotents_trivial_twisting(&g, &comp, &f3).unwrap();
        assert_eq!(set.idems.len(), 4);
        assert!(set.verify(&comp.e));
    }

    #[test]
    fn order_27_both_constructions() {
        let g = Arc::new(Group::metacyclic(9, 3, 4).unwrap());
        let f2 = FieldCtx::prime(2).unwrap();
        let comp = component(&g, &g.closure(&[1]), &g.trivial_subgroup(), &f2, 0);
        let a = primitive_idempotents_trivial_twisting(&g, &comp, &f2).unwrap();
        let b = primitive_idempotents_nilpotent(&g, &comp, &f2).unwrap();
        assert_eq!(a.idems.len(), 3);
        assert_eq!(b.idems.len(), 3);
        assert!(a.verify(&comp.e));
        assert!(b.verify(&comp.e));
    }

    #[test]
    fn quaternion_case_two() {
        let g = Arc::new(Group::dicyclic(2).unwrap());
        let f3 = FieldCtx::prime(3).unwrap();
        let comp = component(&g, &g.closure(&[1]), &g.trivial_subgroup(), &f3, 0);
        assert!(!comp.twisting.is_trivial());
        assert_eq!(
            primitive_idempotents_trivial_twisting(&g, &comp, &f3).unwrap_err(),
            IdempotentError::NontrivialTwisting
        );
        let set = primitive_idempotents_nilpotent(&g, &comp, &f3).unwrap();
        assert_eq!(set.notes, vec!["case 2".to_string()]);
        assert_eq!(set.idems.len(), 2);
        assert!(set.verify(&comp.e));
    }

    #[test]
    fn non_nilpotent_rejected() {
        let g = Arc::new(Group::metacyclic(7, 3, 2).unwrap());
        let f2 = FieldCtx::prime(2).unwrap();
        let comp = component(&g, &g.closure(&[1]), &g.trivial_subgroup(), &f2, 0);
        assert_eq!(
            primitive_idempotents_nilpotent(&g, &comp, &f2).unwrap_err(),
            IdempotentError::NotNilpotent
        );
        let set = primitive_idempotents(&g, &comp, &f2).unwrap();
        assert!(set.verify(&comp.e));
    }
}
