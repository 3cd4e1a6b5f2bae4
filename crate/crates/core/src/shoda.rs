//! Strong Shoda pairs, cyclotomic classes and the primitive central
//! idempotents `e_C(G, H, K)` of a semisimple group algebra `F_s G`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{AlgElem, AlgebraError};
use crate::arith;
use crate::field::{ExtensionCtx, FieldCtx, FieldError, Fq};
use crate::group::{Elem, Group, GroupError, QuotientMap, Subgroup};
use crate::scalar::Rationals;
use crate::{FqAlgElem, RatAlgElem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShodaError {
    #[error("K is not normal in H")]
    NotNormal,
    #[error("H/K is not cyclic")]
    QuotientNotCyclic,
    #[error("cyclotomic class is not faithful")]
    NotFaithfulClass,
    #[error("characteristic {p} divides the group order {order}")]
    CharacteristicDividesOrder { p: u64, order: usize },
    #[error("not a strong Shoda pair")]
    NotStrongShodaPair,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<AlgebraError> for ShodaError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::CharacteristicDividesOrder { p, order } => {
                ShodaError::CharacteristicDividesOrder { p, order }
            }
            AlgebraError::ContextMismatch => ShodaError::Field(FieldError::ContextMismatch),
        }
    }
}

/// An orbit of `Z_m` under `j -> s j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicClass {
    modulus: u64,
    residues: Vec<u64>,
    faithful: bool,
}

impl CyclotomicClass {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn faithful(&self) -> bool {
        self.faithful
    }

    pub fn representative(&self) -> u64 {
        self.residues[0]
    }

    pub fn contains(&self, j: u64) -> bool {
        self.residues.binary_search(&(j % self.modulus)).is_ok()
    }

    /// `{i j mod m : j in C}` as a sorted residue list.
    pub fn scaled(&self, i: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.residues.iter().map(|&j| (i * j) % self.modulus).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// All `s`-cyclotomic classes modulo `m`, sorted by smallest member.
pub fn cyclotomic_classes(s: u64, m: u64) -> Result<Vec<CyclotomicClass>, FieldError> {
    if m == 0 || arith::gcd(s, m) != 1 {
        return Err(FieldError::NotCoprime { s, m });
    }
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for j in 0..m {
        if seen[j as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = j;
        while !seen[x as usize] {
            seen[x as usize] = true;
            orbit.push(x);
            x = (x * (s % m)) % m;
        }
        orbit.sort_unstable();
        out.push(CyclotomicClass {
            modulus: m,
            faithful: arith::gcd(j, m) == 1,
            residues: orbit,
        });
    }
    Ok(out)
}

/// A pair `K <= H` with `K` normal in `H` and `H/K` cyclic, together with the
/// data every construction needs: `N_G(K)`, a fixed generator of `H/K` and the
/// exponent of every element of `H` with respect to it.
#[derive(Clone, Debug)]
pub struct StrongShodaPair {
    h: Subgroup,
    k: Subgroup,
    n: Subgroup,
    index: u64,
    gen: Elem,
    exps: Vec<Option<u64>>,
}

impl PartialEq for StrongShodaPair {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.k == other.k
    }
}

impl Eq for StrongShodaPair {}

impl StrongShodaPair {
    /// Builds the pair data; does not test the strong Shoda conditions.
    pub fn new(g: &Group, h: &Subgroup, k: &Subgroup) -> Result<Self, ShodaError> {
        if !g.is_normal_in(k, h) {
            return Err(ShodaError::NotNormal);
        }
        let q = QuotientMap::new(g, h, k)?;
        let qg = q.quotient();
        let w = qg.is_cyclic().ok_or(ShodaError::QuotientNotCyclic)?;
        let m = qg.order();
        let mut power_of = vec![0u64; m];
        let mut c = qg.identity();
        for i in 0..m {
            power_of[c as usize] = i as u64;
            c = qg.mul(c, w);
        }
        let mut exps = vec![None; g.order()];
        for &x in h.elements() {
            exps[x as usize] = Some(power_of[q.proj(x) as usize]);
        }
        Ok(StrongShodaPair {
            h: h.clone(),
            k: k.clone(),
            n: g.normalizer(k),
            index: m as u64,
            gen: q.section(w),
            exps,
        })
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    /// `N_G(K)`.
    pub fn normalizer(&self) -> &Subgroup {
        &self.n
    }

    /// `[H:K]`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Lift to `H` of the fixed generator `y K` of `H/K`.
    pub fn generator(&self) -> Elem {
        self.gen
    }

    /// `e` with `x K = y^e K`, for `x` in `H`.
    pub fn exponent(&self, x: Elem) -> Option<u64> {
        self.exps[x as usize]
    }

    /// `i` with `t y t^-1 in y^i K`, for `t` normalizing both `H` and `K`.
    pub fn action_exponent(&self, g: &Group, t: Elem) -> Option<u64> {
        self.exponent(g.mul(g.mul(t, self.gen), g.inv(t)))
    }

    /// Multiplicative order of `s` modulo `[H:K]`.
    pub fn o(&self, s: u64) -> Result<u64, FieldError> {
        arith::multiplicative_order_mod(s, self.index)
    }

    pub fn label(&self) -> String {
        format!("H={} K={}", fmt_set(self.h.elements()), fmt_set(self.k.elements()))
    }

    fn sort_key(&self) -> (std::cmp::Reverse<usize>, usize, &[Elem], &[Elem]) {
        (
            std::cmp::Reverse(self.h.len()),
            self.k.len(),
            self.h.elements(),
            self.k.elements(),
        )
    }
}

pub(crate) fn fmt_set(xs: &[Elem]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn sort_pairs(pairs: &mut [StrongShodaPair]) {
    pairs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// `eps(H, K)` in `QG`: `K~` if `H = K`, otherwise the product of `K~ - M~`
/// over the subgroups `M/K` of prime order in the cyclic group `H/K`.
pub fn eps_rational(g: &Arc<Group>, h: &Subgroup, k: &Subgroup) -> Result<RatAlgElem, ShodaError> {
    let pair = StrongShodaPair::new(g, h, k)?;
    Ok(eps_rational_of(g, &pair))
}

fn eps_rational_of(g: &Arc<Group>, pair: &StrongShodaPair) -> RatAlgElem {
    let kt = AlgElem::tilde(g, &Rationals, &pair.k).expect("rationals");
    let m = pair.index;
    let mut eps = kt.clone();
    for p in arith::prime_divisors(m) {
        let y = g.pow(pair.gen, (m / p) as i64);
        let mut gens = pair.k.elements().to_vec();
        gens.push(y);
        let mt = AlgElem::tilde(g, &Rationals, &g.closure(&gens)).expect("rationals");
        eps = eps.mul(&kt.sub(&mt));
    }
    eps
}

/// `Cen_{N/K}(H/K) = H/K`: for an abelian `H/K` this is the same as being a
/// maximal abelian subgroup of `N/K`. `H/K` is cyclic on `y K`, so centralizing
/// it means `[x, y]` in `K`.
fn centralizer_condition(g: &Group, pair: &StrongShodaPair) -> bool {
    pair.n
        .elements()
        .iter()
        .all(|&x| pair.h.contains(x) || !pair.k.contains(g.commutator(x, pair.gen)))
}

/// SS1, SS2 and SS3 for a pair already known to have `K` normal in `H` with
/// cyclic quotient.
fn check_conditions(g: &Arc<Group>, pair: &StrongShodaPair) -> bool {
    // SS1: H <= N_G(K) and H normal in N_G(K)
    if !pair.h.is_subset_of(&pair.n) || !g.is_normal_in(&pair.h, &pair.n) {
        return false;
    }
    if !centralizer_condition(g, pair) {
        return false;
    }
    let reps = g.right_transversal(&pair.n);
    if reps.len() == 1 {
        return true;
    }
    let eps = eps_rational_of(g, pair);
    reps.iter()
        .filter(|&&t| !pair.n.contains(t))
        .all(|&t| eps.mul(&eps.conjugate(t)).is_zero())
}

pub fn is_strong_shoda_pair(g: &Arc<Group>, h: &Subgroup, k: &Subgroup) -> bool {
    match StrongShodaPair::new(g, h, k) {
        Ok(pair) => check_conditions(g, &pair),
        Err(_) => false,
    }
}

/// Every strong Shoda pair of `G`, by testing all pairs `K <= H` of subgroups.
pub fn all_strong_shoda_pairs(g: &Arc<Group>, bound: usize) -> Result<Vec<StrongShodaPair>, ShodaError> {
    let subs = g.subgroups(bound)?;
    let mut out = Vec::new();
    for h in &subs {
        for k in &subs {
            if k.len() > h.len() || h.len() % k.len() != 0 || !k.is_subset_of(h) {
                continue;
            }
            if let Ok(pair) = StrongShodaPair::new(g, h, k) {
                if check_conditions(g, &pair) {
                    out.push(pair);
                }
            }
        }
    }
    sort_pairs(&mut out);
    Ok(out)
}

/// For a metabelian group: pairs with `H` maximal among `B >= A` satisfying
/// `B' <= K <= B`, and `H/K` cyclic, where `A` is a maximal abelian subgroup
/// containing `G'`. Returns `None` when `G` is not metabelian.
pub fn metabelian_pairs(g: &Arc<Group>, bound: usize) -> Result<Option<Vec<StrongShodaPair>>, ShodaError> {
    let d = g.commutator_subgroup();
    if !g.is_abelian_subgroup(&d) {
        return Ok(None);
    }
    let subs = g.subgroups(bound)?;
    let abelian_over_d: Vec<&Subgroup> = subs
        .iter()
        .filter(|s| d.is_subset_of(s) && g.is_abelian_subgroup(s))
        .collect();
    let a = abelian_over_d
        .iter()
        .rev()
        .find(|s| {
            !abelian_over_d
                .iter()
                .any(|t| t.len() > s.len() && s.is_subset_of(t))
        })
        .copied()
        .expect("G' itself is abelian");
    let over_a: Vec<(&Subgroup, Subgroup)> = subs
        .iter()
        .filter(|b| a.is_subset_of(b))
        .map(|b| (b, g.derived_subgroup(b)))
        .collect();
    let mut out = Vec::new();
    for k in &subs {
        let set: Vec<&Subgroup> = over_a
            .iter()
            .filter(|(b, bd)| bd.is_subset_of(k) && k.is_subset_of(b))
            .map(|(b, _)| *b)
            .collect();
        for h in &set {
            let maximal = !set.iter().any(|b| b.len() > h.len() && h.is_subset_of(b));
            if !maximal {
                continue;
            }
            if let Ok(pair) = StrongShodaPair::new(g, h, k) {
                out.push(pair);
            }
        }
    }
    sort_pairs(&mut out);
    Ok(Some(out))
}

/// `E_G(H/K)`: elements of `N_G(H) ∩ N_G(K)` whose action `y -> y^i` has `i`
/// in the subgroup of units generated by `s`, i.e. maps a faithful class to
/// itself.
pub fn stabilizer_e(g: &Group, pair: &StrongShodaPair, s: u64) -> Subgroup {
    let classes = cyclotomic_classes(s, pair.index).expect("s coprime to [H:K]");
    let class = classes.iter().find(|c| c.faithful).expect("a faithful class exists");
    stabilizer_of_class(g, pair, class)
}

/// Stabilizer of the given faithful class under the conjugation action.
pub fn stabilizer_of_class(g: &Group, pair: &StrongShodaPair, class: &CyclotomicClass) -> Subgroup {
    let nh = g.normalizer(&pair.h);
    let elems: Vec<Elem> = nh
        .intersection(&pair.n)
        .elements()
        .iter()
        .copied()
        .filter(|&t| {
            let i = pair.action_exponent(g, t).expect("t normalizes H");
            class.scaled(i) == class.residues
        })
        .collect();
    g.subgroup_from_elements(&elems).expect("a stabilizer is a subgroup")
}

/// Shared extension data for one pair over one base field.
#[derive(Clone, Debug)]
pub struct PairField {
    pub ext: ExtensionCtx,
    pub xi: Fq,
    pub o: u64,
}

impl PairField {
    pub fn new(pair: &StrongShodaPair, field: &FieldCtx) -> Result<Self, ShodaError> {
        let s = field.size() as u64;
        let o = pair.o(s)?;
        let degree = u32::try_from(o).map_err(|_| FieldError::TooLarge { p: s, k: u32::MAX })?;
        let ext = ExtensionCtx::new(field, degree)?;
        let xi = ext.root_of_unity(pair.index)?;
        Ok(PairField { ext, xi, o })
    }

    /// `chi(h) = xi^(j e(h))` as an element of the top field.
    pub fn chi(&self, pair: &StrongShodaPair, j: u64, h: Elem) -> Fq {
        let e = pair.exponent(h).expect("h in H");
        self.ext.top().pow(self.xi, (j * e) % pair.index)
    }
}

fn check_semisimple(g: &Group, field: &FieldCtx) -> Result<(), ShodaError> {
    let p = field.p() as u64;
    if (g.order() as u64).is_multiple_of(p) {
        return Err(ShodaError::CharacteristicDividesOrder { p, order: g.order() });
    }
    Ok(())
}

/// `eps_C(H,K) = |H|^-1 sum_h tr(chi(h K)) h^-1`, using the character that
/// sends `y K` to `xi^j`.
pub fn eps_c_for_residue(
    g: &Arc<Group>,
    pair: &StrongShodaPair,
    j: u64,
    field: &FieldCtx,
    pf: &PairField,
) -> Result<FqAlgElem, ShodaError> {
    check_semisimple(g, field)?;
    if arith::gcd(j, pair.index) != 1 {
        return Err(ShodaError::NotFaithfulClass);
    }
    let inv_h = field.inv(field.from_u64(pair.h.len() as u64))?;
    let top = pf.ext.top();
    let mut e = AlgElem::zero(g, field);
    for &h in pair.h.elements() {
        let chi_inv = top.inv(pf.chi(pair, j, h))?;
        let tr = pf.ext.trace_to_base(chi_inv);
        e.set_coeff(h, field.mul(inv_h, tr));
    }
    Ok(e)
}

pub fn eps_c(g: &Arc<Group>, pair: &StrongShodaPair, class: &CyclotomicClass, field: &FieldCtx) -> Result<FqAlgElem, ShodaError> {
    if !class.faithful || class.modulus != pair.index {
        return Err(ShodaError::NotFaithfulClass);
    }
    let pf = PairField::new(pair, field)?;
    eps_c_for_residue(g, pair, class.representative(), field, &pf)
}

/// Sum of the distinct `G`-conjugates of `eps`.
pub fn conjugate_sum(g: &Group, eps: &FqAlgElem) -> FqAlgElem {
    let mut seen: HashSet<Vec<Fq>> = HashSet::new();
    let mut total = AlgElem::zero(eps.group(), eps.field());
    for t in g.elements() {
        let c = eps.conjugate(t);
        if seen.insert(c.coeffs().to_vec()) {
            total = total.add(&c);
        }
    }
    total
}

pub fn e_c(g: &Arc<Group>, pair: &StrongShodaPair, class: &CyclotomicClass, field: &FieldCtx) -> Result<FqAlgElem, ShodaError> {
    Ok(conjugate_sum(g, &eps_c(g, pair, class, field)?))
}

/// Twisting of the crossed product `F H eps * E/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twisting {
    /// `E/K` splits over `H/K`: `t1` lists the smallest-index representatives
    /// of the complement's cosets `q^i K`, ordered by `i`.
    Trivial { complement: Subgroup, t1: Vec<Elem> },
    /// No complement: `cocycle[a][b] = j` with
    /// `phi(ab)^-1 phi(a) phi(b) in y^j K` for the smallest-representative
    /// section `phi` listed in `section`.
    Nontrivial { section: Vec<Elem>, cocycle: Vec<Vec<u64>> },
}

impl Twisting {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Twisting::Trivial { .. })
    }
}

/// Looks for a complement of `H/K` in `E/K`. `E/H` is cyclic of order `n`, so
/// a complement is `<q, K>` for some `q` with `q H` of order `n` and `q^n` in
/// `K`; the first such `q` in index order is used.
pub fn twisting(g: &Group, pair: &StrongShodaPair, e: &Subgroup) -> Twisting {
    let n = e.len() / pair.h.len();
    let coset_order = |q: Elem| -> usize {
        let mut x = q;
        let mut i = 1;
        while !pair.h.contains(x) {
            x = g.mul(x, q);
            i += 1;
        }
        i
    };
    let q = e
        .elements()
        .iter()
        .copied()
        .find(|&q| coset_order(q) == n && pair.k.contains(g.pow(q, n as i64)));
    if let Some(q) = q {
        let mut gens = pair.k.elements().to_vec();
        gens.push(q);
        let complement = g.closure(&gens);
        let mut t1 = Vec::with_capacity(n);
        let mut qi = g.identity();
        for _ in 0..n {
            let rep = pair
                .k
                .elements()
                .iter()
                .map(|&k| g.mul(qi, k))
                .min()
                .expect("K is nonempty");
            t1.push(rep);
            qi = g.mul(qi, q);
        }
        return Twisting::Trivial { complement, t1 };
    }
    let section = g.left_transversal_in(e, &pair.h);
    let coset_of = |x: Elem| -> usize {
        section
            .iter()
            .position(|&r| pair.h.contains(g.mul(g.inv(r), x)))
            .expect("section covers E")
    };
    let cocycle = section
        .iter()
        .map(|&a| {
            section
                .iter()
                .map(|&b| {
                    let ab = section[coset_of(g.mul(a, b))];
                    let x = g.mul(g.inv(ab), g.mul(a, b));
                    pair.exponent(x).expect("lands in H")
                })
                .collect()
        })
        .collect();
    Twisting::Nontrivial { section, cocycle }
}

/// One Wedderburn component `F G e_C ≅ M_{[G:H]}(F_{s^(o/[E:H])})`.
#[derive(Clone, Debug)]
pub struct ComponentInfo {
    pub pair: Arc<StrongShodaPair>,
    pub class: CyclotomicClass,
    /// `E_G(H/K)`.
    pub stabilizer: Subgroup,
    pub o: u64,
    pub eps: FqAlgElem,
    pub e: FqAlgElem,
    /// `[G:H]`.
    pub matrix_size: usize,
    /// `o / [E:H]`.
    pub center_degree: u64,
    /// `s^(o/[E:H])`.
    pub field_order: u64,
    /// `[G:H]^2 o / [E:H]`.
    pub dim: usize,
    pub twisting: Twisting,
}

impl ComponentInfo {
    /// `[E:H]`.
    pub fn n(&self) -> usize {
        self.stabilizer.len() / self.pair.h.len()
    }

    /// Dimension over `F` of a minimal left ideal: `[G:H] o / [E:H]`.
    pub fn left_ideal_dim(&self) -> usize {
        self.matrix_size * self.center_degree as usize
    }
}

/// Components attached to one pair: one per faithful class mod `[H:K]`.
pub fn components_of_pair(
    g: &Arc<Group>,
    pair: &Arc<StrongShodaPair>,
    field: &FieldCtx,
) -> Result<Vec<ComponentInfo>, ShodaError> {
    check_semisimple(g, field)?;
    let s = field.size() as u64;
    let pf = PairField::new(pair, field)?;
    let classes = cyclotomic_classes(s, pair.index)?;
    let mut out = Vec::new();
    // Classes in one orbit of N_G(H) ∩ N_G(K) give the same e_C; keep the
    // first class of each orbit.
    let nh = g.normalizer(&pair.h);
    let mut actions: Vec<u64> = nh
        .intersection(&pair.n)
        .elements()
        .iter()
        .map(|&t| pair.action_exponent(g, t).expect("t normalizes H"))
        .collect();
    actions.sort_unstable();
    actions.dedup();
    let mut seen: Vec<Vec<u64>> = Vec::new();
    let mut stab: Option<(Subgroup, Twisting)> = None;
    for class in classes.into_iter().filter(|c| c.faithful) {
        if seen.iter().any(|r| r == class.residues()) {
            continue;
        }
        seen.extend(actions.iter().map(|&i| class.scaled(i)));
        let eps = eps_c_for_residue(g, pair, class.representative(), field, &pf)?;
        let e = conjugate_sum(g, &eps);
        let (stabilizer, tw) = stab
            .get_or_insert_with(|| {
                let e_sub = stabilizer_of_class(g, pair, &class);
                let tw = twisting(g, pair, &e_sub);
                (e_sub, tw)
            })
            .clone();
        let matrix_size = g.order() / pair.h.len();
        let n = (stabilizer.len() / pair.h.len()) as u64;
        let center_degree = pf.o / n;
        out.push(ComponentInfo {
            pair: pair.clone(),
            class,
            stabilizer,
            o: pf.o,
            eps,
            e,
            matrix_size,
            center_degree,
            field_order: s.pow(center_degree as u32),
            dim: matrix_size * matrix_size * center_degree as usize,
            twisting: tw,
        });
    }
    Ok(out)
}

/// Keeps, in the given order, the first pair for each distinct set of central
/// idempotents `{e_C}` over `field`.
pub fn dedup_pairs(
    g: &Arc<Group>,
    pairs: Vec<StrongShodaPair>,
    field: &FieldCtx,
) -> Result<Vec<(Arc<StrongShodaPair>, Vec<ComponentInfo>)>, ShodaError> {
    let mut seen: HashSet<Vec<Vec<Fq>>> = HashSet::new();
    let mut out = Vec::new();
    for pair in pairs {
        let pair = Arc::new(pair);
        let comps = components_of_pair(g, &pair, field)?;
        let mut key: Vec<Vec<Fq>> = comps.iter().map(|c| c.e.coeffs().to_vec()).collect();
        key.sort();
        if seen.insert(key) {
            out.push((pair, comps));
        }
    }
    Ok(out)
}

/// Complete non-redundant list of strong Shoda pairs over `field`, with their
/// components, ordered by `(|H| desc, |K| asc, element sets)`.
pub fn strong_shoda_pairs(
    g: &Arc<Group>,
    field: &FieldCtx,
    bound: usize,
) -> Result<Vec<(Arc<StrongShodaPair>, Vec<ComponentInfo>)>, ShodaError> {
    check_semisimple(g, field)?;
    let pairs = all_strong_shoda_pairs(g, bound)?;
    dedup_pairs(g, pairs, field)
}

#[derive(Clone, Debug)]
pub struct WedderburnReport {
    pub components: Vec<ComponentInfo>,
    /// The `e_C` sum to 1.
    pub sums_to_one: bool,
    /// The `e_C` are pairwise orthogonal.
    pub orthogonal: bool,
}

impl WedderburnReport {
    pub fn complete(&self) -> bool {
        self.sums_to_one && self.orthogonal
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.dim).sum()
    }
}

pub fn wedderburn_report(g: &Arc<Group>, field: &FieldCtx, bound: usize) -> Result<WedderburnReport, ShodaError> {
    let components: Vec<ComponentInfo> = strong_shoda_pairs(g, field, bound)?
        .into_iter()
        .flat_map(|(_, c)| c)
        .collect();
    let mut sum = AlgElem::zero(g, field);
    for c in &components {
        sum = sum.add(&c.e);
    }
    let sums_to_one = sum == AlgElem::one(g, field);
    let orthogonal = components
        .iter()
        .enumerate()
        .all(|(i, a)| components[i + 1..].iter().all(|b| a.e.mul(&b.e).is_zero()));
    Ok(WedderburnReport {
        components,
        sums_to_one,
        orthogonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g27() -> Arc<Group> {
        Arc::new(Group::metacyclic(9, 3, 4).unwrap())
    }

    fn residues(cs: &[CyclotomicClass]) -> Vec<Vec<u64>> {
        cs.iter().map(|c| c.residues().to_vec()).collect()
    }

    #[test]
    fn classes() {
        assert_eq!(
            residues(&cyclotomic_classes(2, 9).unwrap()),
            vec![vec![0], vec![1, 2, 4, 5, 7, 8], vec![3, 6]]
        );
        assert_eq!(residues(&cyclotomic_classes(3, 5).unwrap()), vec![vec![0], vec![1, 2, 3, 4]]);
        let one = cyclotomic_classes(7, 1).unwrap();
        assert_eq!(residues(&one), vec![vec![0]]);
        assert!(one[0].faithful());
        assert!(cyclotomic_classes(3, 6).is_err());
    }

    #[test]
    fn rational_eps() {
        let g = Arc::new(Group::cyclic(6).unwrap());
        let e = eps_rational(&g, &g.whole(), &g.trivial_subgroup()).unwrap();
        assert!(e.is_idempotent());
        let k = g.closure(&[2]);
        let e = eps_rational(&g, &k, &k).unwrap();
        assert_eq!(e, AlgElem::tilde(&g, &Rationals, &k).unwrap());
        let h = g.whole();
        let e = eps_rational(&g, &h, &k).unwrap();
        let expect = AlgElem::tilde(&g, &Rationals, &k).unwrap().sub(&AlgElem::tilde(&g, &Rationals, &h).unwrap());
        assert_eq!(e, expect);
    }

    #[test]
    fn example_pairs_are_strong_shoda() {
        let g = g27();
        let a = g.closure(&[1]);
        assert!(is_strong_shoda_pair(&g, &a, &g.trivial_subgroup()));
        let h = g.closure(&[9, 3]);
        let k = g.closure(&[9]);
        assert!(is_strong_shoda_pair(&g, &h, &k));
        assert!(is_strong_shoda_pair(&g, &g.whole(), &g.whole()));
        assert!(!is_strong_shoda_pair(&g, &g.trivial_subgroup(), &g.trivial_subgroup()));
    }

    #[test]
    fn metacyclic_21_pairs() {
        let g = Arc::new(Group::metacyclic(7, 3, 2).unwrap());
        let f2 = FieldCtx::prime(2).unwrap();
        let pairs = strong_shoda_pairs(&g, &f2, 200).unwrap();
        let got: Vec<(usize, usize)> = pairs.iter().map(|(p, _)| (p.h().len(), p.k().len())).collect();
        assert_eq!(got, vec![(21, 7), (21, 21), (7, 1)]);
        let report = wedderburn_report(&g, &f2, 200).unwrap();
        let mut dims: Vec<usize> = report.components.iter().map(|c| c.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 9, 9]);
        assert!(report.complete());
    }

    #[test]
    fn stabilizers() {
        let g = g27();
        let a = g.closure(&[1]);
        let pair = StrongShodaPair::new(&g, &a, &g.trivial_subgroup()).unwrap();
        assert_eq!(stabilizer_e(&g, &pair, 2), g.whole());
        let f20 = Group::metacyclic(5, 4, 2).unwrap();
        let a = f20.closure(&[1]);
        let pair = StrongShodaPair::new(&f20, &a, &f20.trivial_subgroup()).unwrap();
        assert_eq!(stabilizer_e(&f20, &pair, 3), f20.whole());
        let c6 = Group::cyclic(6).unwrap();
        let pair = StrongShodaPair::new(&c6, &c6.whole(), &c6.trivial_subgroup()).unwrap();
        assert_eq!(stabilizer_e(&c6, &pair, 5), c6.whole());
    }

    #[test]
    fn eps_c_is_class_invariant_and_idempotent() {
        let g = g27();
        let f2 = FieldCtx::prime(2).unwrap();
        let a = g.closure(&[1]);
        let pair = StrongShodaPair::new(&g, &a, &g.trivial_subgroup()).unwrap();
        let pf = PairField::new(&pair, &f2).unwrap();
        let class = &cyclotomic_classes(2, 9).unwrap()[1];
        let base = eps_c_for_residue(&g, &pair, class.representative(), &f2, &pf).unwrap();
        assert!(base.is_idempotent());
        for &j in class.residues() {
            assert_eq!(eps_c_for_residue(&g, &pair, j, &f2, &pf).unwrap(), base);
        }
        assert_eq!(
            eps_c_for_residue(&g, &pair, 3, &f2, &pf).unwrap_err(),
            ShodaError::NotFaithfulClass
        );
    }

    #[test]
    fn trivial_pair_gives_averaging_idempotent() {
        let g = g27();
        let f2 = FieldCtx::prime(2).unwrap();
        let pair = StrongShodaPair::new(&g, &g.whole(), &g.whole()).unwrap();
        let class = &cyclotomic_classes(2, 1).unwrap()[0];
        let t = AlgElem::tilde(&g, &f2, &g.whole()).unwrap();
        assert_eq!(eps_c(&g, &pair, class, &f2).unwrap(), t);
        assert_eq!(e_c(&g, &pair, class, &f2).unwrap(), t);
    }

    #[test]
    fn twisting_detection() {
        let q8 = Arc::new(Group::dicyclic(2).unwrap());
        let x = q8.closure(&[1]);
        let pair = StrongShodaPair::new(&q8, &x, &q8.trivial_subgroup()).unwrap();
        let e = stabilizer_e(&q8, &pair, 3);
        assert_eq!(e, q8.whole());
        let tw = twisting(&q8, &pair, &e);
        assert!(!tw.is_trivial());
        if let Twisting::Nontrivial { cocycle, .. } = tw {
            assert!(cocycle.iter().flatten().any(|&j| j != 0));
        }
        let g = g27();
        let a = g.closure(&[1]);
        let pair = StrongShodaPair::new(&g, &a, &g.trivial_subgroup()).unwrap();
        match twisting(&g, &pair, &g.whole()) {
            Twisting::Trivial { t1, complement } => {
                assert_eq!(t1.len(), 3);
                assert_eq!(t1[0], 0);
                assert_eq!(complement.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_characteristic_dividing_order() {
        let g = Arc::new(Group::cyclic(6).unwrap());
        let f3 = FieldCtx::prime(3).unwrap();
        assert!(matches!(
            wedderburn_report(&g, &f3, 200),
            Err(ShodaError::CharacteristicDividesOrder { .. })
        ));
    }

    #[test]
    fn cyclic_three_over_f2() {
        let g = Arc::new(Group::cyclic(3).unwrap());
        let f2 = FieldCtx::prime(2).unwrap();
        let r = wedderburn_report(&g, &f2, 200).unwrap();
        let orders: Vec<u64> = r.components.iter().map(|c| c.field_order).collect();
        assert_eq!(orders, vec![4, 2]);
        assert!(r.complete());
    }

    #[test]
    fn conjugate_classes_share_a_component() {
        let s3 = Group::metacyclic(3, 2, 2).unwrap();
        let g = Arc::new(Group::direct(&Group::cyclic(2).unwrap(), &s3));
        let f = FieldCtx::with_order(7).unwrap();
        let report = wedderburn_report(&g, &f, crate::group::DEFAULT_SUBGROUP_BOUND).unwrap();
        assert_eq!(report.total_dim(), 12);
        assert!(report.complete());
        assert_eq!(report.components.len(), 6);
    }

    #[test]
    fn centralizer_condition_matches_maximal_abelian() {
        let groups = [
            Group::metacyclic(3, 2, 2).unwrap(),
            Group::metacyclic(5, 4, 2).unwrap(),
            Group::metacyclic(7, 3, 2).unwrap(),
            Group::dicyclic(2).unwrap(),
            Group::direct(&Group::cyclic(2).unwrap(), &Group::metacyclic(3, 2, 2).unwrap()),
        ];
        for g in groups {
            let g = Arc::new(g);
            let subs = g.subgroups(crate::group::DEFAULT_SUBGROUP_BOUND).unwrap();
            for h in &subs {
                for k in subs.iter().filter(|k| k.is_subset_of(h)) {
                    let Ok(pair) = StrongShodaPair::new(&g, h, k) else { continue };
                    if !h.is_subset_of(&pair.n) {
                        continue;
                    }
                    // No B with H < B <= N_G(K) and B/K abelian.
                    let literal = subs.iter().all(|b| {
                        b.len() == h.len()
                            || !h.is_subset_of(b)
                            || !b.is_subset_of(&pair.n)
                            || !g.derived_subgroup(b).is_subset_of(k)
                    });
                    assert_eq!(centralizer_condition(&g, &pair), literal);
                }
            }
        }
    }
}
