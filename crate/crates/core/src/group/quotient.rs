use super::{Elem, Group, GroupError, Subgroup};

/// `N -> N/K` for a normal subgroup `K` of a subgroup `N` of a parent group.
/// Cosets are numbered by increasing smallest-index representative, so the
/// identity coset is 0, and the section sends a coset to that representative.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    kernel: Subgroup,
    domain: Subgroup,
    quotient: Group,
    proj: Vec<Option<Elem>>,
    section: Vec<Elem>,
}

impl QuotientMap {
    pub fn new(g: &Group, n: &Subgroup, k: &Subgroup) -> Result<Self, GroupError> {
        if !g.is_normal_in(k, n) {
            return Err(GroupError::NotNormal);
        }
        let mut proj: Vec<Option<Elem>> = vec![None; g.order()];
        let mut section = Vec::new();
        for &x in n.elements() {
            if proj[x as usize].is_some() {
                continue;
            }
            let idx = section.len() as Elem;
            section.push(x);
            for &y in k.elements() {
                proj[g.mul(x, y) as usize] = Some(idx);
            }
        }
        let m = section.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &section {
            for &b in &section {
                table.push(proj[g.mul(a, b) as usize].expect("N is closed"));
            }
        }
        let quotient = Group::from_table(m, table)?;
        Ok(QuotientMap {
            kernel: k.clone(),
            domain: n.clone(),
            quotient,
            proj,
            section,
        })
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn quotient(&self) -> &Group {
        &self.quotient
    }

    /// Image of `x`; panics if `x` is outside the domain.
    pub fn proj(&self, x: Elem) -> Elem {
        self.proj[x as usize].expect("element outside the domain of the quotient map")
    }

    pub fn try_proj(&self, x: Elem) -> Option<Elem> {
        self.proj[x as usize]
    }

    pub fn section(&self, c: Elem) -> Elem {
        self.section[c as usize]
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, g: &Group, s: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> = self
            .domain
            .elements()
            .iter()
            .copied()
            .filter(|&x| s.contains(self.proj(x)))
            .collect();
        debug_assert!(g.is_subgroup(&elems));
        Subgroup::from_sorted(elems)
    }

    /// Image of a subgroup of the domain.
    pub fn image(&self, s: &Subgroup) -> Subgroup {
        let mut v: Vec<Elem> = s.elements().iter().map(|&x| self.proj(x)).collect();
        v.sort_unstable();
        v.dedup();
        Subgroup::from_sorted(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_nonabelian_by_derived() {
        let g = Group::metacyclic(7, 3, 2).unwrap();
        let d = g.commutator_subgroup();
        let q = QuotientMap::new(&g, &g.whole(), &d).unwrap();
        assert_eq!(q.quotient().order(), 3);
        assert!(q.quotient().is_cyclic().is_some());
        assert_eq!(q.section(0), 0);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(q.proj(g.mul(x, y)), q.quotient().mul(q.proj(x), q.proj(y)));
            }
            assert_eq!(q.proj(q.section(q.proj(x))), q.proj(x));
        }
        let b = g.closure(&[7]);
        assert_eq!(q.preimage(&g, &q.image(&b)), g.whole());
    }

    #[test]
    fn rejects_non_normal() {
        let g = Group::metacyclic(7, 3, 2).unwrap();
        let b = g.closure(&[7]);
        assert_eq!(
            QuotientMap::new(&g, &g.whole(), &b).unwrap_err(),
            GroupError::NotNormal
        );
    }

    #[test]
    fn quotient_inside_a_subgroup() {
        let g = Group::metacyclic(9, 3, 4).unwrap();
        let n = g.closure(&[1]);
        let k = g.closure(&[3]);
        let q = QuotientMap::new(&g, &n, &k).unwrap();
        assert_eq!(q.quotient().order(), 3);
        assert!(q.try_proj(9).is_none());
    }
}
