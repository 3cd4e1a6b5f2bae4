//! Linear codes from left ideals `F G e`, with exact minimum distance and
//! weight distribution by enumeration of the message space.

use rayon::prelude::*;

use crate::field::{FieldCtx, Fq};
use crate::group::Group;
use crate::linalg::{self, Matrix};
use crate::FqAlgElem;

/// Default cap on the number of enumerated codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("idempotent coefficients are not in the code's base field")]
    CoefficientsNotInBaseField,
    #[error("{words} codewords exceed the budget {budget}; minimum distance is at most {upper_bound}")]
    BudgetExceeded { words: u128, budget: u64, upper_bound: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMethod {
    /// Recomputes every codeword from its message.
    Exhaustive,
    /// Walks the message space in a p-ary Gray order, adding one basis
    /// vector per step.
    Gray,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CodeProvenance {
    pub group: String,
    pub ordering_hash: String,
    pub pair: String,
    pub class: Vec<u64>,
    pub idempotent_index: usize,
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: FieldCtx,
    length: usize,
    genmat: Matrix<Fq>,
    pub provenance: Option<CodeProvenance>,
}

/// The code `F G e`: the row space of the vectors `g e`, `g` in `G`.
pub fn code_from_idempotent(g: &Group, e: &FqAlgElem, field: &FieldCtx) -> Result<LinearCode, CodeError> {
    if e.field() != field || e.coeffs().iter().any(|&c| !field.contains(c)) {
        return Err(CodeError::CoefficientsNotInBaseField);
    }
    let rows: Vec<Vec<Fq>> = g.elements().map(|x| e.left_mul_by(x).coeffs().to_vec()).collect();
    Ok(LinearCode::from_rows(field, g.order(), rows))
}

impl LinearCode {
    /// Row-reduces the given spanning vectors.
    pub fn from_rows(field: &FieldCtx, length: usize, rows: Vec<Vec<Fq>>) -> Self {
        let genmat = if rows.is_empty() {
            Matrix::from_rows(Vec::new())
        } else {
            let mut m = Matrix::from_rows(rows);
            let k = linalg::rref(field, &mut m).len();
            Matrix::from_fn(k, length, |r, c| *m.get(r, c))
        };
        LinearCode {
            field: field.clone(),
            length,
            genmat,
            provenance: None,
        }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.genmat.rows()
    }

    /// Generator matrix in reduced row echelon form.
    pub fn generator_matrix(&self) -> &Matrix<Fq> {
        &self.genmat
    }

    /// Number of codewords, `s^k`.
    pub fn size(&self) -> u128 {
        (self.field.size() as u128).saturating_pow(self.dimension() as u32)
    }

    pub fn contains(&self, word: &[Fq]) -> bool {
        let mut rows = self.genmat.row_vecs();
        rows.push(word.to_vec());
        linalg::rank(&self.field, &Matrix::from_rows(rows)) == self.dimension()
    }

    /// Weight of the lightest generator row: an upper bound on `d`.
    pub fn row_weight_bound(&self) -> usize {
        (0..self.dimension())
            .map(|r| self.genmat.row(r).iter().filter(|x| !x.is_zero()).count())
            .min()
            .unwrap_or(0)
    }

    fn check_budget(&self, budget: u64) -> Result<(), CodeError> {
        let words = self.size();
        if words > budget as u128 {
            return Err(CodeError::BudgetExceeded {
                words,
                budget,
                upper_bound: self.row_weight_bound(),
            });
        }
        Ok(())
    }

    /// Counts of codewords per Hamming weight, `0..=n`.
    pub fn weight_distribution(&self, method: DistanceMethod, budget: u64) -> Result<Vec<u64>, CodeError> {
        self.check_budget(budget)?;
        Ok(match method {
            DistanceMethod::Exhaustive => self.histogram_exhaustive(),
            DistanceMethod::Gray if self.field.size() == 2 => self.histogram_gray_binary(),
            DistanceMethod::Gray => self.histogram_gray(),
        })
    }

    /// Smallest nonzero weight; 0 for the zero code.
    pub fn minimum_distance(&self, method: DistanceMethod, budget: u64) -> Result<usize, CodeError> {
        let hist = self.weight_distribution(method, budget)?;
        Ok(distance_from_weights(&hist))
    }

    fn histogram_exhaustive(&self) -> Vec<u64> {
        let s = self.field.size() as u64;
        let k = self.dimension();
        let n = self.length;
        let total = self.size() as u64;
        merge(chunks(total).into_par_iter().map(|(start, end)| {
            let mut hist = vec![0u64; n + 1];
            let mut word = vec![Fq::ZERO; n];
            for msg in start..end {
                word.iter_mut().for_each(|x| *x = Fq::ZERO);
                let mut rest = msg;
                for r in 0..k {
                    let c = Fq((rest % s) as u32);
                    rest /= s;
                    if c.is_zero() {
                        continue;
                    }
                    for (w, &g) in word.iter_mut().zip(self.genmat.row(r)) {
                        *w = self.field.add(*w, self.field.mul(c, g));
                    }
                }
                hist[word.iter().filter(|x| !x.is_zero()).count()] += 1;
            }
            hist
        }), n)
    }

    /// `alpha_j * row_i` for an F_p-basis `alpha_j` of F_s.
    fn prime_basis(&self) -> Vec<Vec<Fq>> {
        let p = self.field.p();
        let mut out = Vec::new();
        for r in 0..self.dimension() {
            for j in 0..self.field.k() {
                let alpha = Fq(p.pow(j));
                out.push(self.genmat.row(r).iter().map(|&x| self.field.mul(alpha, x)).collect());
            }
        }
        out
    }

    fn histogram_gray(&self) -> Vec<u64> {
        let p = self.field.p() as u64;
        let n = self.length;
        let basis = self.prime_basis();
        let supports: Vec<Vec<usize>> = basis
            .iter()
            .map(|v| (0..n).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        let total = self.size() as u64;
        merge(chunks(total).into_par_iter().map(|(start, end)| {
            let mut hist = vec![0u64; n + 1];
            let mut word = vec![Fq::ZERO; n];
            for (i, &d) in gray_digits(start, p, basis.len()).iter().enumerate() {
                for _ in 0..d {
                    for &c in &supports[i] {
                        word[c] = self.field.add(word[c], basis[i][c]);
                    }
                }
            }
            let mut weight = word.iter().filter(|x| !x.is_zero()).count();
            hist[weight] += 1;
            for counter in start..end - 1 {
                let j = trailing_top_digits(counter, p);
                for &c in &supports[j] {
                    let before = word[c].is_zero();
                    word[c] = self.field.add(word[c], basis[j][c]);
                    match (before, word[c].is_zero()) {
                        (true, false) => weight += 1,
                        (false, true) => weight -= 1,
                        _ => {}
                    }
                }
                hist[weight] += 1;
            }
            hist
        }), n)
    }

    fn histogram_gray_binary(&self) -> Vec<u64> {
        let n = self.length;
        let limbs = n.div_ceil(64);
        let rows: Vec<Vec<u64>> = (0..self.dimension())
            .map(|r| {
                let mut bits = vec![0u64; limbs];
                for (i, x) in self.genmat.row(r).iter().enumerate() {
                    if !x.is_zero() {
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
                bits
            })
            .collect();
        let total = self.size() as u64;
        merge(chunks(total).into_par_iter().map(|(start, end)| {
            let mut hist = vec![0u64; n + 1];
            let gray = start ^ (start >> 1);
            let mut word = vec![0u64; limbs];
            for (r, row) in rows.iter().enumerate() {
                if gray >> r & 1 == 1 {
                    word.iter_mut().zip(row).for_each(|(w, b)| *w ^= b);
                }
            }
            let popcount = |w: &[u64]| w.iter().map(|x| x.count_ones() as usize).sum::<usize>();
            hist[popcount(&word)] += 1;
            for counter in start..end - 1 {
                let j = (!counter).trailing_zeros() as usize;
                word.iter_mut().zip(&rows[j]).for_each(|(w, b)| *w ^= b);
                hist[popcount(&word)] += 1;
            }
            hist
        }), n)
    }

    /// Header `n k s`, then one line per generator row; each coordinate is
    /// written as its base-`p` digits (constant term first), separated by
    /// `:` when `p > 10`.
    pub fn export_text(&self) -> String {
        let sep = if self.field.p() > 10 { ":" } else { "" };
        let mut out = format!("{} {} {}\n", self.length, self.dimension(), self.field.size());
        for r in 0..self.dimension() {
            let cells: Vec<String> = self
                .genmat
                .row(r)
                .iter()
                .map(|&x| {
                    let digits: Vec<String> = self.field.digits(x).iter().map(|d| d.to_string()).collect();
                    digits.join(sep)
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Reads the output of [`LinearCode::export_text`] back into a generator
/// matrix over `field`.
pub fn parse_export(field: &FieldCtx, text: &str) -> Option<Matrix<Fq>> {
    let mut lines = text.lines();
    let header: Vec<u64> = lines.next()?.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    let [n, k, s] = header[..] else { return None };
    if s != field.size() as u64 {
        return None;
    }
    let mut rows = Vec::new();
    for line in lines.take(k as usize) {
        let row: Vec<Fq> = line
            .split_whitespace()
            .map(|cell| {
                let digits: Option<Vec<u32>> = if field.p() > 10 {
                    cell.split(':').map(|d| d.parse().ok()).collect()
                } else {
                    cell.chars().map(|c| c.to_digit(10)).collect()
                };
                digits.filter(|d| d.len() == field.k() as usize && d.iter().all(|&x| x < field.p()))
                    .map(|d| field.from_digits(&d))
            })
            .collect::<Option<_>>()?;
        if row.len() != n as usize {
            return None;
        }
        rows.push(row);
    }
    (rows.len() == k as usize).then(|| Matrix::from_fn(k as usize, n as usize, |r, c| rows[r][c]))
}

pub fn distance_from_weights(hist: &[u64]) -> usize {
    hist.iter().skip(1).position(|&c| c > 0).map_or(0, |i| i + 1)
}

/// Splits `0..total` into contiguous ranges for the workers.
fn chunks(total: u64) -> Vec<(u64, u64)> {
    const MIN_CHUNK: u64 = 1 << 12;
    let count = (total / MIN_CHUNK).clamp(1, 256);
    let size = total.div_ceil(count);
    (0..count)
        .map(|i| (i * size, ((i + 1) * size).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

fn merge(parts: impl ParallelIterator<Item = Vec<u64>>, n: usize) -> Vec<u64> {
    parts.reduce(
        || vec![0u64; n + 1],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

/// Digits of the modular `p`-ary Gray word with index `counter`:
/// `g_i = (c_i - c_{i+1}) mod p` for the base-`p` digits `c_i`.
fn gray_digits(counter: u64, p: u64, len: usize) -> Vec<u64> {
    let mut digits = Vec::with_capacity(len + 1);
    let mut rest = counter;
    for _ in 0..=len {
        digits.push(rest % p);
        rest /= p;
    }
    (0..len).map(|i| (digits[i] + p - digits[i + 1]) % p).collect()
}

/// Position of the digit that changes between Gray words `counter` and
/// `counter + 1`: the number of trailing `p - 1` digits of `counter`.
fn trailing_top_digits(mut counter: u64, p: u64) -> usize {
    let mut j = 0;
    while counter % p == p - 1 {
        counter /= p;
        j += 1;
    }
    j
}
