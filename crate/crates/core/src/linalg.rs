//! Exact linear algebra: Bareiss determinants and sparse fraction-free
//! row echelon forms for rank and span tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Multiplies the row by the lcm of its denominators. Returns the integer row
/// and the multiplier used.
fn clear_denominators(row: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints = row
        .iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect();
    (ints, l)
}

/// Determinant of a square rational matrix by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<BigRational>]) -> BigRational {
    let n = matrix.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            let (ints, l) = clear_denominators(row);
            scale *= l;
            ints
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigRational::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = BigRational::new(m[n - 1][n - 1].clone(), scale);
    if negate {
        -det
    } else {
        det
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Incrementally built row echelon form over the integers.
///
/// Rows are sparse `(column, value)` lists sorted by column; each stored row
/// is primitive with a positive leading entry, and no two stored rows share a
/// leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; true if it was independent of the rows already present.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, BigRational)>) -> bool {
        let reduced = self.reduce(primitive_row(row));
        match reduced.first() {
            Some(&(lead, _)) => {
                self.pivots.insert(lead, reduced);
                true
            }
            None => false,
        }
    }

    /// True if the row lies in the span of the stored rows.
    pub fn spans(&self, row: impl IntoIterator<Item = (usize, BigRational)>) -> bool {
        self.reduce(primitive_row(row)).is_empty()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return row;
            };
            let pv = &pivot[0].1;
            let g = lead_val.gcd(pv);
            let row_factor = pv / &g;
            let pivot_factor = &lead_val / &g;
            row = combine(&row, &row_factor, pivot, &pivot_factor);
            make_primitive(&mut row);
        }
    }
}

/// `x * r - y * p` on sparse sorted rows.
fn combine(r: &IntRow, x: &BigInt, p: &IntRow, y: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        let (col, v) = if take_r {
            i += 1;
            (r[i - 1].0, x * &r[i - 1].1)
        } else if take_p {
            j += 1;
            (p[j - 1].0, -(y * &p[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (r[i - 1].0, x * &r[i - 1].1 - y * &p[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let negate = first.1.is_negative();
    if !g.is_one() || negate {
        let g = if negate { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

fn primitive_row(row: impl IntoIterator<Item = (usize, BigRational)>) -> IntRow {
    let mut entries: Vec<(usize, BigRational)> =
        row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    entries.sort_by_key(|(c, _)| *c);
    // merge duplicate columns
    let mut merged: Vec<(usize, BigRational)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    let values: Vec<BigRational> = merged.iter().map(|(_, v)| v.clone()).collect();
    let (ints, _) = clear_denominators(&values);
    let mut out: IntRow = merged.into_iter().map(|(c, _)| c).zip(ints).collect();
    make_primitive(&mut out);
    out
}

/// Rank of a matrix given as sparse rows.
pub fn rank<R>(rows: impl IntoIterator<Item = R>) -> usize
where
    R: IntoIterator<Item = (usize, BigRational)>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a dense rational matrix.
pub fn dense_rank(matrix: &[Vec<BigRational>]) -> usize {
    rank(matrix.iter().map(|row| {
        row.iter()
            .enumerate()
            .map(|(c, v)| (c, v.clone()))
            .collect::<Vec<_>>()
    }))
}
