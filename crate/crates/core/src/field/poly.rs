//! Dense polynomials over a prime field `F_p`, constant term first.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_p(a: u32, p: u32) -> u32 {
    // p is prime and small, so Fermat is fine
    let mut result = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    result as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_p(m[dm], p) as u64;
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = factor * c as u64 % p as u64;
            r[i + shift] = ((r[i + shift] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let li = inv_p(x[d], p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * li % p as u64) as u32;
        }
    }
    x
}

/// Ben-Or irreducibility test: `f` of degree `k` is irreducible iff
/// `gcd(x^(p^i) - x, f) = 1` for every `1 <= i <= k/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(k) = degree(f) else { return false };
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=k / 2 {
        // h <- h^p mod f
        let mut acc: Poly = vec![1];
        let mut base = h.clone();
        let mut e = p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: f has no monic factor of degree 1..=deg/2.
    fn irreducible_by_trial_division(f: &[u32], p: u32) -> bool {
        let k = degree(f).unwrap();
        for d in 1..=k / 2 {
            let count = (p as u64).pow(d as u32);
            for c in 0..count {
                let mut g: Poly = (0..d)
                    .map(|i| ((c / (p as u64).pow(i as u32)) % p as u64) as u32)
                    .collect();
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for &(p, k) in &[(2u32, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 4), (5, 2), (5, 3)] {
            let count = (p as u64).pow(k as u32);
            for c in 0..count {
                let mut f: Poly = (0..k)
                    .map(|i| ((c / (p as u64).pow(i as u32)) % p as u64) as u32)
                    .collect();
                f.push(1);
                assert_eq!(
                    is_irreducible(&f, p),
                    irreducible_by_trial_division(&f, p),
                    "p={p} f={f:?}"
                );
            }
        }
    }

    #[test]
    fn gcd_and_rem() {
        // (x+1)^2 = x^2 + 1 over F_2
        assert!(rem(&[1, 0, 1], &[1, 1], 2).is_empty());
        assert_eq!(gcd(&[1, 0, 1], &[1, 1], 2), vec![1, 1]);
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }
}
