//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..n` with the identity at `0`. The index order is
//! the canonical element ordering and doubles as the coordinate order of
//! every code produced from the group.

mod quotient;
mod subgroup;

use std::fmt;
use std::path::Path;

pub use quotient::QuotientMap;
pub use subgroup::{Subgroup, DEFAULT_SUBGROUP_BOUND};

use crate::arith;

pub type Elem = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("group of order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("i/o error: {0}")]
    Io(String),
}

/// Element label as a word: exponents of the named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Words {
    gen_names: Vec<String>,
    exps: Vec<Vec<u32>>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    orders: Vec<u32>,
    gens: Vec<Elem>,
    words: Option<Words>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {})", self.order)
    }
}

impl Group {
    /// Builds a group from a full multiplication table, validating identity at
    /// index 0, the Latin square property and associativity.
    pub fn from_table(order: usize, table: Vec<Elem>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if table.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(GroupError::InvalidTable(format!("entry {bad} out of range")));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(GroupError::InvalidTable("index 0 is not the identity".into()));
            }
        }
        for x in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for y in 0..order {
                let r = table[x * order + y] as usize;
                let c = table[y * order + x] as usize;
                if seen_row[r] || seen_col[c] {
                    return Err(GroupError::InvalidTable("not a Latin square".into()));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for x in 0..order {
            for y in 0..order {
                let xy = table[x * order + y] as usize;
                for z in 0..order {
                    let yz = table[y * order + z] as usize;
                    if table[xy * order + z] != table[x * order + yz] {
                        return Err(GroupError::InvalidTable(format!(
                            "not associative at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(order, table, None))
    }

    fn from_table_unchecked(order: usize, table: Vec<Elem>, words: Option<Words>) -> Self {
        let mut inverses = vec![0; order];
        for x in 0..order {
            for y in 0..order {
                if table[x * order + y] == 0 {
                    inverses[x] = y as Elem;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; order];
        for (x, o) in orders.iter_mut().enumerate() {
            let mut acc = x;
            let mut k = 1;
            while acc != 0 {
                acc = table[acc * order + x] as usize;
                k += 1;
            }
            *o = k;
        }
        let mut g = Group {
            order,
            table,
            inverses,
            orders,
            gens: Vec::new(),
            words,
        };
        g.gens = g.greedy_generators();
        g
    }

    /// Parses an `n x n` whitespace-separated table of 0-based indices.
    pub fn parse_cayley(text: &str) -> Result<Self, GroupError> {
        let entries: Result<Vec<Elem>, _> = text.split_whitespace().map(str::parse::<Elem>).collect();
        let entries = entries.map_err(|e| GroupError::InvalidTable(e.to_string()))?;
        let n = entries.len().isqrt();
        if n * n != entries.len() {
            return Err(GroupError::InvalidTable(format!(
                "{} entries do not form a square table",
                entries.len()
            )));
        }
        Self::from_table(n, entries)
    }

    pub fn load_cayley(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
        Self::parse_cayley(&text)
    }

    /// Writes the multiplication table in the format read by [`Group::parse_cayley`].
    pub fn cayley_text(&self) -> String {
        let mut out = String::new();
        for x in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|y| self.table[x * self.order + y].to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// FNV-1a digest of the multiplication table; identifies the coordinate
    /// ordering used by exported codes.
    pub fn ordering_hash(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.cayley_text().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("{h:016x}")
    }

    /// `C_n = <a>`, element `a^i` at index `i`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        Self::metacyclic(n, 1, 1)
    }

    /// `<a, b | a^m = b^n = 1, b a = a^r b>`, element `a^i b^j` at index `j*m + i`.
    pub fn metacyclic(m: usize, n: usize, r: usize) -> Result<Self, GroupError> {
        if m == 0 || n == 0 {
            return Err(GroupError::BadParameters("orders must be positive".into()));
        }
        let (m64, n64, r64) = (m as u64, n as u64, r as u64);
        if arith::gcd(r64 % m64.max(1), m64) != 1 && m > 1 {
            return Err(GroupError::BadParameters(format!("gcd({r}, {m}) != 1")));
        }
        if arith::pow_mod(r64, n64, m64) != 1 % m64 {
            return Err(GroupError::BadParameters(format!("{r}^{n} is not 1 mod {m}")));
        }
        let order = m * n;
        // r^j mod m
        let rpow: Vec<usize> = (0..n).map(|j| arith::pow_mod(r64, j as u64, m64) as usize).collect();
        let mut table = vec![0 as Elem; order * order];
        for x in 0..order {
            let (i, j) = (x % m, x / m);
            for y in 0..order {
                let (k, l) = (y % m, y / m);
                let a = (i + k * rpow[j]) % m;
                let b = (j + l) % n;
                table[x * order + y] = (b * m + a) as Elem;
            }
        }
        let mut gen_names = vec!["a".to_string()];
        if n > 1 {
            gen_names.push("b".to_string());
        }
        let exps = (0..order)
            .map(|x| {
                let mut w = vec![(x % m) as u32];
                if n > 1 {
                    w.push((x / m) as u32);
                }
                w
            })
            .collect();
        Ok(Self::from_table_unchecked(order, table, Some(Words { gen_names, exps })))
    }

    /// Dicyclic group `Q_{4n} = <x, y | x^(2n) = 1, y^2 = x^n, x^y = x^-1>`,
    /// element `x^i y^j` at index `j*2n + i`. `Q_8` is `dicyclic(2)`.
    pub fn dicyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadParameters("n must be positive".into()));
        }
        let m = 2 * n;
        let order = 2 * m;
        let mut table = vec![0 as Elem; order * order];
        for x in 0..order {
            let (i, j) = (x % m, x / m);
            for y in 0..order {
                let (k, l) = (y % m, y / m);
                let k_conj = if j == 1 { (m - k) % m } else { k };
                let mut a = i + k_conj;
                let mut b = j + l;
                if b == 2 {
                    b = 0;
                    a += n;
                }
                table[x * order + y] = (b * m + a % m) as Elem;
            }
        }
        let gen_names = vec!["x".to_string(), "y".to_string()];
        let exps = (0..order).map(|x| vec![(x % m) as u32, (x / m) as u32]).collect();
        Ok(Self::from_table_unchecked(order, table, Some(Words { gen_names, exps })))
    }

    /// Direct product with index `i_A * |B| + i_B`. Generator names of the
    /// second factor are shifted past those of the first.
    pub fn direct(a: &Group, b: &Group) -> Group {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut table = vec![0 as Elem; order * order];
        for x in 0..order {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..order {
                let (ya, yb) = (y / nb, y % nb);
                table[x * order + y] = (a.mul(xa as Elem, ya as Elem) as usize * nb
                    + b.mul(xb as Elem, yb as Elem) as usize) as Elem;
            }
        }
        let words = match (&a.words, &b.words) {
            (Some(wa), Some(wb)) => {
                let mut gen_names = wa.gen_names.clone();
                for name in &wb.gen_names {
                    gen_names.push(fresh_name(name, &gen_names));
                }
                let exps = (0..order)
                    .map(|x| {
                        let mut w = wa.exps[x / nb].clone();
                        w.extend_from_slice(&wb.exps[x % nb]);
                        w
                    })
                    .collect();
                Some(Words { gen_names, exps })
            }
            _ => None,
        };
        Self::from_table_unchecked(order, table, words)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverses[x as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: Elem, e: i64) -> Elem {
        let o = self.orders[x as usize] as i64;
        let e = e.rem_euclid(o);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        self.orders[x as usize]
    }

    /// A generating set found greedily in index order.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        // prefer the named generators of a presentation
        if let Some(w) = &self.words {
            let named: Vec<Elem> = (0..w.gen_names.len())
                .filter_map(|gi| {
                    (0..self.order).find(|&x| {
                        w.exps[x].iter().enumerate().all(|(j, &e)| e == u32::from(j == gi))
                    })
                })
                .map(|x| x as Elem)
                .collect();
            if self.closure(&named).len() == self.order {
                return named.into_iter().filter(|&x| x != 0).collect();
            }
        }
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        while current.len() < self.order {
            let next = (0..self.order as Elem).find(|&x| !current.contains(x)).unwrap();
            gens.push(next);
            current = self.closure(&gens);
        }
        gens
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.words {
            Some(w) => {
                let parts: Vec<String> = w.exps[x as usize]
                    .iter()
                    .zip(&w.gen_names)
                    .filter(|(&e, _)| e != 0)
                    .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            }
            None if x == 0 => "1".to_string(),
            None => format!("g{x}"),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&x| self.gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Exhaustive check of the group axioms on the stored table.
    pub fn verify_axioms(&self) -> bool {
        Self::from_table(self.order, self.table.clone()).is_ok()
    }

    /// Nilpotent iff, for each prime `p`, the elements of `p`-power order
    /// form a subgroup (the unique Sylow `p`-subgroup).
    pub fn is_nilpotent(&self) -> bool {
        arith::factorize(self.order as u64).into_iter().all(|(p, e)| {
            let count = self
                .elements()
                .filter(|&x| arith::split_prime_part(self.element_order(x) as u64, p).1 == 1)
                .count();
            count as u64 == p.pow(e)
        })
    }
}

fn fresh_name(name: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == name) {
        return name.to_string();
    }
    for c in 'a'..='z' {
        let s = c.to_string();
        if !taken.contains(&s) {
            return s;
        }
    }
    let mut i = 0;
    loop {
        let s = format!("g{i}");
        if !taken.contains(&s) {
            return s;
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metacyclic_relation_holds() {
        let g = Group::metacyclic(9, 3, 4).unwrap();
        assert_eq!(g.order(), 27);
        let (a, b) = (1, 9);
        assert_eq!(g.mul(b, a), g.mul(g.pow(a, 4), b));
        assert_eq!(g.element_order(a), 9);
        assert_eq!(g.element_order(b), 3);
        assert_eq!(g.label(g.mul(g.pow(a, 2), b)), "a^2*b");
        assert!(g.verify_axioms());
        assert!(Group::metacyclic(9, 3, 2).is_err());
    }

    #[test]
    fn direct_product_relabels() {
        let a = Group::metacyclic(7, 3, 4).unwrap();
        let c5 = Group::cyclic(5).unwrap();
        let g = Group::direct(&a, &c5);
        assert_eq!(g.order(), 105);
        assert_eq!(g.label(1), "c");
        assert_eq!(g.label(5), "a");
        assert!(g.verify_axioms());
        let klein = Group::direct(&Group::cyclic(2).unwrap(), &Group::cyclic(2).unwrap());
        assert!(klein.elements().all(|x| klein.element_order(x) <= 2));
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_table() {
        let q8 = Group::dicyclic(2).unwrap();
        assert!(q8.verify_axioms());
        let (x, y) = (1, 4);
        assert_eq!(q8.mul(y, y), q8.pow(x, 2));
        assert_eq!(q8.conj(x, y), q8.inv(x));
        assert_eq!(q8.elements().filter(|&e| q8.element_order(e) == 2).count(), 1);
        assert!(q8.is_nilpotent());
        let round = Group::parse_cayley(&q8.cayley_text()).unwrap();
        assert_eq!(round.table, q8.table);
    }

    #[test]
    fn table_validation() {
        assert!(Group::parse_cayley("0 1 1 0").is_ok());
        assert!(Group::parse_cayley("1 0 0 1").is_err());
        assert!(Group::parse_cayley("0 1 2").is_err());
        assert!(Group::parse_cayley("0 1 1 1").is_err());
    }

    #[test]
    fn nilpotency() {
        assert!(Group::metacyclic(9, 3, 4).unwrap().is_nilpotent());
        assert!(!Group::metacyclic(7, 3, 2).unwrap().is_nilpotent());
        assert!(Group::cyclic(12).unwrap().is_nilpotent());
    }
}
