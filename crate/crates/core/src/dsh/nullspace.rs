//! Exact integer nullspaces by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Column order in which pivots are searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    Natural,
    Reversed,
}

struct Echelon {
    m: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn echelon(rows: &[Vec<BigInt>], cols: &[usize]) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
        .collect();
    let nrows = m.len();
    let ncols = cols.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let (top, rest) = m.split_at_mut(row + 1);
        let pivot_row = &top[row];
        for r in rest.iter_mut() {
            let factor = r[col].clone();
            for j in col + 1..ncols {
                let num = &r[j] * &pivot_row[col] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                r[j] = q;
            }
            r[col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    Echelon { m, pivots }
}

fn column_order(ncols: usize, order: PivotOrder) -> Vec<usize> {
    match order {
        PivotOrder::Natural => (0..ncols).collect(),
        PivotOrder::Reversed => (0..ncols).rev().collect(),
    }
}

pub fn rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    echelon(rows, &column_order(ncols, PivotOrder::Natural))
        .pivots
        .len()
}

/// Primitive integer vector with positive last nonzero entry.
pub fn make_primitive(v: Vec<BigRational>) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    if ints
        .iter()
        .rev()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        g = -g;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis of `{x : A x = 0}` for the `ncols`-column matrix `rows`.
pub fn nullspace(rows: &[Vec<BigInt>], ncols: usize, order: PivotOrder) -> Vec<Vec<BigInt>> {
    let cols = column_order(ncols, order);
    let ech = echelon(rows, &cols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![BigRational::zero(); ncols];
        x[free] = BigRational::one();
        for (k, &p) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.m[k];
            let mut s = BigRational::zero();
            for j in p + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += BigRational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[p] = -s / BigRational::from_integer(row[p].clone());
        }
        // undo the column permutation
        let mut y = vec![BigRational::zero(); ncols];
        for (pos, &c) in cols.iter().enumerate() {
            y[c] = x[pos].clone();
        }
        basis.push(make_primitive(y));
    }
    basis
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<BigInt>], b: &[Vec<BigInt>], ncols: usize) -> bool {
    let ra = rank(a, ncols);
    if ra != rank(b, ncols) {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&both, ncols) == ra
}
