use std::cmp::Ordering;
use std::collections::HashSet;

use super::{Elem, Group, GroupError};
use crate::arith;

pub const DEFAULT_SUBGROUP_BOUND: usize = 200;

/// A subgroup stored as the sorted list of its element indices. All
/// operations take the parent [`Group`] explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elems: Vec<Elem>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems
            .len()
            .cmp(&other.elems.len())
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// Wraps an element set already known to be a subgroup.
    pub(crate) fn from_sorted(elems: Vec<Elem>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elems }
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elems: self.elems.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }
}

impl Group {
    /// `<gens>`, by breadth-first closure under right multiplication.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0 as Elem];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { elems: members }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elems: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elems: vec![0] }
    }

    /// Checks that an arbitrary element set is a subgroup.
    pub fn is_subgroup(&self, elems: &[Elem]) -> bool {
        let set: HashSet<Elem> = elems.iter().copied().collect();
        set.contains(&0)
            && elems
                .iter()
                .all(|&x| set.contains(&self.inv(x)) && elems.iter().all(|&y| set.contains(&self.mul(x, y))))
    }

    pub fn subgroup_from_elements(&self, elems: &[Elem]) -> Option<Subgroup> {
        if !self.is_subgroup(elems) {
            return None;
        }
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        Some(Subgroup { elems: v })
    }

    /// `<H, K>`.
    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut gens: Vec<Elem> = h.elems.clone();
        gens.extend_from_slice(&k.elems);
        self.closure(&gens)
    }

    /// All subgroups, sorted by `(order, element set)`. Seeds with the cyclic
    /// subgroups and joins with single elements until no new subgroup appears.
    pub fn subgroups(&self, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
        if self.order > bound {
            return Err(GroupError::GroupTooLarge {
                order: self.order,
                bound,
            });
        }
        let mut found: HashSet<Subgroup> = HashSet::new();
        // each queued subgroup carries a generating set
        let mut queue: Vec<(Subgroup, Vec<Elem>)> = Vec::new();
        let mut cyclic_reps: Vec<Elem> = Vec::new();
        for x in self.elements() {
            let c = self.closure(&[x]);
            if found.insert(c.clone()) {
                cyclic_reps.push(x);
                queue.push((c, vec![x]));
            }
        }
        while let Some((s, gens)) = queue.pop() {
            for &g in &cyclic_reps {
                if s.contains(g) {
                    continue;
                }
                let mut next = gens.clone();
                next.push(g);
                let j = self.closure(&next);
                if found.insert(j.clone()) {
                    queue.push((j, next));
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// `K` normal in `N` (both subgroups of this group, `K <= N`).
    pub fn is_normal_in(&self, k: &Subgroup, n: &Subgroup) -> bool {
        k.is_subset_of(n)
            && n
                .elems
                .iter()
                .all(|&g| k.elems.iter().all(|&x| k.contains(self.conj(x, g))))
    }

    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.is_normal_in(k, &self.whole())
    }

    /// `K^g = g^-1 K g`.
    pub fn conjugate_subgroup(&self, k: &Subgroup, g: Elem) -> Subgroup {
        let mut v: Vec<Elem> = k.elems.iter().map(|&x| self.conj(x, g)).collect();
        v.sort_unstable();
        Subgroup { elems: v }
    }

    /// `N_G(K)`.
    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        let elems = self
            .elements()
            .filter(|&g| k.elems.iter().all(|&x| k.contains(self.conj(x, g))))
            .collect();
        Subgroup { elems }
    }

    /// `Cen_G(S)`: elements commuting with every element of `S`.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let elems = self
            .elements()
            .filter(|&g| s.elems.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup { elems }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// Derived subgroup `S' = <[x, y] : x, y in S>`.
    pub fn derived_subgroup(&self, s: &Subgroup) -> Subgroup {
        let mut comms: Vec<Elem> = Vec::new();
        for &x in &s.elems {
            for &y in &s.elems {
                comms.push(self.commutator(x, y));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        self.derived_subgroup(&self.whole())
    }

    pub fn is_abelian_subgroup(&self, s: &Subgroup) -> bool {
        s.elems
            .iter()
            .all(|&x| s.elems.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Smallest-index representative of every right coset `H g` of `H` in
    /// `within`, in increasing index order; the identity comes first.
    pub fn right_transversal_in(&self, within: &Subgroup, h: &Subgroup) -> Vec<Elem> {
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for &g in &within.elems {
            if covered[g as usize] {
                continue;
            }
            reps.push(g);
            for &x in &h.elems {
                covered[self.mul(x, g) as usize] = true;
            }
        }
        reps
    }

    /// Right transversal of `H` in the whole group.
    pub fn right_transversal(&self, h: &Subgroup) -> Vec<Elem> {
        self.right_transversal_in(&self.whole(), h)
    }

    /// Representatives of the left cosets `g H` of `H` in `within`.
    pub fn left_transversal_in(&self, within: &Subgroup, h: &Subgroup) -> Vec<Elem> {
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for &g in &within.elems {
            if covered[g as usize] {
                continue;
            }
            reps.push(g);
            for &x in &h.elems {
                covered[self.mul(g, x) as usize] = true;
            }
        }
        reps
    }

    /// Cyclicity test; the witness is the smallest-index element of maximal
    /// order.
    pub fn is_cyclic_subgroup(&self, s: &Subgroup) -> Option<Elem> {
        let max = s.elems.iter().map(|&x| self.element_order(x)).max()?;
        if max as usize != s.len() {
            return None;
        }
        s.elems.iter().copied().find(|&x| self.element_order(x) == max)
    }

    pub fn is_cyclic(&self) -> Option<Elem> {
        self.is_cyclic_subgroup(&self.whole())
    }

    /// Subgroups of prime order of the cyclic group: `<g^(n/p)>` for each prime
    /// `p` dividing the order, in increasing `p`.
    pub fn minimal_prime_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        let g = self.is_cyclic().ok_or(GroupError::NotCyclic)?;
        Ok(arith::prime_divisors(self.order as u64)
            .into_iter()
            .map(|p| self.closure(&[self.pow(g, (self.order as u64 / p) as i64)]))
            .collect())
    }

    /// `(P, P')` where `P` collects elements of `p`-power order and `P'` those
    /// of order coprime to `p`; for a nilpotent group these are normal and
    /// `G = P x P'`.
    pub fn primary_decomposition(&self, p: u64) -> Result<(Subgroup, Subgroup), GroupError> {
        let (pp, rest) = arith::split_prime_part(self.order as u64, p);
        let p_part: Vec<Elem> = self
            .elements()
            .filter(|&x| arith::split_prime_part(self.element_order(x) as u64, p).1 == 1)
            .collect();
        let q_part: Vec<Elem> = self
            .elements()
            .filter(|&x| !(self.element_order(x) as u64).is_multiple_of(p))
            .collect();
        if p_part.len() as u64 != pp || q_part.len() as u64 != rest {
            return Err(GroupError::NotNilpotent);
        }
        let p_sub = Subgroup { elems: p_part };
        let q_sub = Subgroup { elems: q_part };
        if !self.is_subgroup(&p_sub.elems) || !self.is_subgroup(&q_sub.elems) {
            return Err(GroupError::NotNilpotent);
        }
        Ok((p_sub, q_sub))
    }

    /// Conjugacy classes of subgroups are not needed; this returns the orbit
    /// representatives' full set `{K^g}`.
    pub fn conjugates_of_subgroup(&self, k: &Subgroup) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = self.elements().map(|g| self.conjugate_subgroup(k, g)).collect();
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: every subgroup is generated by at most two elements
    /// in these fixtures, so enumerate closures of all pairs.
    fn two_generated_subgroups(g: &Group) -> Vec<Subgroup> {
        let mut set = HashSet::new();
        for x in g.elements() {
            for y in g.elements() {
                let s = g.closure(&[x, y]);
                assert!(g.is_subgroup(s.elements()));
                set.insert(s);
            }
        }
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort();
        v
    }

    #[test]
    fn subgroup_counts() {
        let c6 = Group::cyclic(6).unwrap();
        let subs = c6.subgroups(200).unwrap();
        assert_eq!(subs.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        let q8 = Group::dicyclic(2).unwrap();
        assert_eq!(q8.subgroups(200).unwrap().len(), 6);
        let f20 = Group::metacyclic(5, 4, 2).unwrap();
        let subs = f20.subgroups(200).unwrap();
        assert_eq!(subs.len(), 14);
        assert_eq!(subs, two_generated_subgroups(&f20));
        let triv = Group::cyclic(1).unwrap();
        assert_eq!(triv.subgroups(200).unwrap(), vec![triv.trivial_subgroup()]);
        assert!(matches!(
            Group::cyclic(201).unwrap().subgroups(200),
            Err(GroupError::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn derived_subgroups() {
        let g = Group::metacyclic(9, 3, 4).unwrap();
        assert_eq!(g.commutator_subgroup(), g.closure(&[3]));
        let g = Group::metacyclic(7, 3, 2).unwrap();
        assert_eq!(g.commutator_subgroup(), g.closure(&[1]));
        let k = g.closure(&[1]);
        assert_eq!(g.normalizer(&k), g.whole());
        assert!(g.center().is_trivial());
    }

    #[test]
    fn transversals() {
        let g = Group::metacyclic(9, 3, 4).unwrap();
        let a = g.closure(&[1]);
        assert_eq!(g.right_transversal(&a), vec![0, 9, 18]);
        assert_eq!(g.right_transversal(&g.whole()), vec![0]);
        for h in g.subgroups(200).unwrap() {
            assert_eq!(g.right_transversal(&h).len() * h.len(), g.order());
        }
    }

    #[test]
    fn cyclic_structure() {
        let c6 = Group::cyclic(6).unwrap();
        let mins = c6.minimal_prime_subgroups().unwrap();
        assert_eq!(mins.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![2, 3]);
        let c7 = Group::cyclic(7).unwrap();
        assert_eq!(c7.minimal_prime_subgroups().unwrap(), vec![c7.whole()]);
        assert!(Group::cyclic(1).unwrap().minimal_prime_subgroups().unwrap().is_empty());
        assert!(Group::dicyclic(2).unwrap().minimal_prime_subgroups().is_err());
    }

    #[test]
    fn primary_parts() {
        let c12 = Group::cyclic(12).unwrap();
        let (p2, p3) = c12.primary_decomposition(2).unwrap();
        assert_eq!((p2.len(), p3.len()), (4, 3));
        let c6 = Group::cyclic(6).unwrap();
        let (p2, p3) = c6.primary_decomposition(2).unwrap();
        assert_eq!((p2.len(), p3.len()), (2, 3));
        let odd = Group::metacyclic(9, 3, 4).unwrap();
        let (p2, rest) = odd.primary_decomposition(2).unwrap();
        assert!(p2.is_trivial());
        assert_eq!(rest.len(), 27);
        assert_eq!(
            Group::metacyclic(3, 2, 2).unwrap().primary_decomposition(2),
            Err(GroupError::NotNilpotent)
        );
    }
}
