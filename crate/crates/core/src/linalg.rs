//! Exact rank computations over ℚ and F_p.
//!
//! The production path is incremental sparse row reduction: each new row is
//! reduced against stored pivot rows with fraction-free updates
//! `b·row − a·pivot`, followed by division by the row content. Over ℚ the
//! reduction runs in `i64` with checked arithmetic and restarts in `BigInt`
//! on overflow. Dense Bareiss elimination is kept as an independent route.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn to_sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(c, &v)| (c as u32, v))
                    .collect()
            })
            .collect()
    }
}

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(u32, i64)>;

/// Rank over ℚ of the matrix whose rows are given.
pub fn rank_rational(rows: &[SparseRow]) -> usize {
    match reduce::<i64>(
        rows.iter()
            .map(|r| r.iter().map(|&(c, v)| (c, v)).collect()),
    ) {
        Some(rank) => rank,
        None => reduce::<BigInt>(
            rows.iter()
                .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()),
        )
        .expect("BigInt reduction cannot overflow"),
    }
}

/// Rank over F_p of the matrix whose rows are given.
pub fn rank_mod_p(rows: &[SparseRow], p: u64) -> usize {
    let modp = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut r: Vec<(u32, u64)> = row
            .iter()
            .map(|&(c, v)| (c, modp(v)))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, a)) = r.first() {
            match pivots.get(&lead) {
                Some(piv) => {
                    // pivots are monic: r -= a * piv
                    r = merge_mod(&r, piv, p - a, p);
                }
                None => {
                    let inv = inverse_mod(a, p);
                    for entry in r.iter_mut() {
                        entry.1 = mul_mod(entry.1, inv, p);
                    }
                    pivots.insert(lead, r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `x + k·y` over F_p, sparse.
fn merge_mod(x: &[(u32, u64)], y: &[(u32, u64)], k: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (c, v) = if take_x {
            i += 1;
            x[i - 1]
        } else if take_y {
            j += 1;
            (y[j - 1].0, mul_mod(k, y[j - 1].1, p))
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, (x[i - 1].1 + mul_mod(k, y[j - 1].1, p)) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

trait ExactInt: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `b·x − a·y`, or `None` on overflow.
    fn lin(b: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
    fn negative(&self) -> bool;
    fn negate(&self) -> Self;
}

impl ExactInt for i64 {
    fn zero() -> i64 {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn lin(b: &i64, x: &i64, a: &i64, y: &i64) -> Option<i64> {
        // i64::MIN has no positive counterpart; treat it as overflow
        b.checked_mul(*x)?
            .checked_sub(a.checked_mul(*y)?)
            .filter(|&v| v != i64::MIN)
    }
    fn gcd(&self, other: &i64) -> i64 {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a as i64
    }
    fn div_exact(&self, d: &i64) -> i64 {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn negative(&self) -> bool {
        *self < 0
    }
    fn negate(&self) -> i64 {
        -self
    }
}

impl ExactInt for BigInt {
    fn zero() -> BigInt {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn lin(b: &BigInt, x: &BigInt, a: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(b * x - a * y)
    }
    fn gcd(&self, other: &BigInt) -> BigInt {
        num_integer_gcd(self.abs(), other.abs())
    }
    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negate(&self) -> BigInt {
        -self
    }
}

fn num_integer_gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !Zero::is_zero(&b) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn reduce<T: ExactInt>(rows: impl Iterator<Item = Vec<(u32, T)>>) -> Option<usize> {
    let mut pivots: HashMap<u32, Vec<(u32, T)>> = HashMap::new();
    let mut rank = 0;
    for mut r in rows {
        r.retain(|(_, v)| !v.is_zero());
        while let Some((lead, a)) = r.first().cloned() {
            match pivots.get(&lead) {
                Some(piv) => {
                    let b = piv[0].1.clone();
                    r = combine(&b, &r, &a, piv)?;
                    normalize(&mut r);
                }
                None => {
                    normalize(&mut r);
                    pivots.insert(lead, r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Divides a row by its content and makes the leading entry positive.
fn normalize<T: ExactInt>(r: &mut [(u32, T)]) {
    let Some(first) = r.first() else { return };
    let mut g = first.1.gcd(&first.1);
    for (_, v) in r.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let flip = first.1.negative();
    if !g.is_one() || flip {
        for entry in r.iter_mut() {
            let mut v = entry.1.div_exact(&g);
            if flip {
                v = v.negate();
            }
            entry.1 = v;
        }
    }
}

/// Sparse `b·x − a·y`.
fn combine<T: ExactInt>(b: &T, x: &[(u32, T)], a: &T, y: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let zero = T::zero();
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, T::lin(b, &x[i - 1].1, a, &zero)?)
        } else if i == x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, T::lin(b, &zero, a, &y[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, T::lin(b, &x[i - 1].1, a, &y[j - 1].1)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    Some(out)
}

/// Rank over ℚ by dense fraction-free Bareiss elimination in `BigInt`.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !Zero::is_zero(&a[r][col])) else {
            continue;
        };
        a.swap(rank, piv);
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = <BigInt as Zero>::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Nonzero invariant factors of the Smith normal form, ascending.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the nonzero entry of least absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !Zero::is_zero(&a[r][c])
                    && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap(t, br);
        for row in a.iter_mut() {
            row.swap(t, bc);
        }
        loop {
            let mut done = true;
            for r in (t + 1)..rows {
                let q = &a[r][t] / &a[t][t];
                if !Zero::is_zero(&q) {
                    for c in t..cols {
                        let v = &a[r][c] - &q * &a[t][c];
                        a[r][c] = v;
                    }
                }
                if !Zero::is_zero(&a[r][t]) {
                    done = false;
                }
            }
            for c in (t + 1)..cols {
                let q = &a[t][c] / &a[t][t];
                if !Zero::is_zero(&q) {
                    for r in t..rows {
                        let v = &a[r][c] - &q * &a[r][t];
                        a[r][c] = v;
                    }
                }
                if !Zero::is_zero(&a[t][c]) {
                    done = false;
                }
            }
            // divisibility of the trailing block by the pivot
            if done {
                let bad = ((t + 1)..rows)
                    .flat_map(|r| ((t + 1)..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| !Zero::is_zero(&(&a[r][c] % &a[t][t])));
                if let Some((r, _)) = bad {
                    for c in t..cols {
                        let v = &a[t][c] + &a[r][c];
                        a[t][c] = v;
                    }
                    done = false;
                }
            }
            if done {
                break;
            }
            // move the smallest entry of row/column t to the pivot slot
            let mut best = (t, t);
            for r in t..rows {
                if !Zero::is_zero(&a[r][t]) && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if !Zero::is_zero(&a[t][c]) && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.sort();
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(rank_rational(&m.to_sparse_rows()), 2);
        assert_eq!(rank_mod_p(&m.to_sparse_rows(), 2), 2);
        let two = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(rank_rational(&two.to_sparse_rows()), 2);
        assert_eq!(rank_mod_p(&two.to_sparse_rows(), 2), 0);
        assert_eq!(rank_mod_p(&two.to_sparse_rows(), 3), 2);
        assert_eq!(bareiss_rank(&IntMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn smith_form() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let inv: Vec<i64> = smith_invariants(&m)
            .iter()
            .map(|b| b.try_into().unwrap())
            .collect();
        assert_eq!(inv, vec![2, 6, 12]);
        let two = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let inv: Vec<i64> = smith_invariants(&two)
            .iter()
            .map(|b| b.try_into().unwrap())
            .collect();
        assert_eq!(inv, vec![1, 6]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m =
            IntMatrix::from_rows(&[vec![big, big - 1, 7], vec![big - 5, big, 3], vec![1, 1, 1]]);
        assert_eq!(rank_rational(&m.to_sparse_rows()), bareiss_rank(&m));
    }

    proptest! {
        #[test]
        fn sparse_matches_bareiss(
            rows in 1usize..7,
            cols in 1usize..7,
            seed in proptest::collection::vec(-3i64..=3, 49),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|r| (0..cols).map(|c| seed[r * 7 + c]).collect())
                .collect();
            let m = IntMatrix::from_rows(&data);
            let q = bareiss_rank(&m);
            prop_assert_eq!(rank_rational(&m.to_sparse_rows()), q);
            prop_assert_eq!(rank_rational(&m.transpose().to_sparse_rows()), q);
            prop_assert_eq!(smith_invariants(&m).len(), q);
            // rank over F_p never exceeds rank over Q
            prop_assert!(rank_mod_p(&m.to_sparse_rows(), 5) <= q);
        }
    }
}
