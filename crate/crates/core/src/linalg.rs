//! Dense matrices over an arbitrary [`Field`] context: row reduction, rank,
//! inversion and square solves.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if f.is_zero(y) {
                    continue;
                }
                let cur = out.get(i, j).clone();
                out.set(i, j, f.add(&cur, &f.mul(x, y)));
            }
        }
    }
    out
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "dimension mismatch");
    Matrix::from_fn(a.rows, a.cols, |r, c| f.add(a.get(r, c), b.get(r, c)))
}

pub fn scale<F: Field>(f: &F, a: &Matrix<F::Elem>, s: &F::Elem) -> Matrix<F::Elem> {
    a.map(|x| f.mul(x, s))
}

pub fn pow<F: Field>(f: &F, a: &Matrix<F::Elem>, e: u64) -> Matrix<F::Elem> {
    let mut result = identity(f, a.rows);
    for _ in 0..e {
        result = mul(f, &result, a);
    }
    result
}

/// Brings `m` to reduced row echelon form in place and returns the pivot
/// columns. Zero rows end up at the bottom.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        let Some(r) = (pivot_row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        m.swap_rows(pivot_row, r);
        let inv = f.inv(m.get(pivot_row, col)).expect("nonzero pivot");
        for c in col..m.cols {
            let v = f.mul(m.get(pivot_row, c), &inv);
            m.set(pivot_row, c, v);
        }
        for r in 0..m.rows {
            if r == pivot_row || f.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in col..m.cols {
                let sub = f.mul(&factor, m.get(pivot_row, c));
                let v = f.sub(m.get(r, c), &sub);
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(f, &mut work).len()
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(m.rows, m.cols, "square matrix required");
    let n = m.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            f.one()
        } else {
            f.zero()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |r, c| aug.get(r, c + n).clone()))
}

/// Solves `m x = rhs` for square invertible `m`.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let inv = inverse(f, m)?;
    Some(
        (0..inv.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (c, b) in rhs.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(inv.get(r, c), b));
                }
                acc
            })
            .collect(),
    )
}
