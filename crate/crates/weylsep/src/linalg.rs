//! Small exact linear algebra over the rationals: reduced row echelon form,
//! span membership, and coordinate solving. Dimensions here never exceed the
//! rank of an ambient root system, so nothing is optimized.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rat = Ratio<i64>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Reduced row echelon form; zero rows are dropped. Rows come back with
/// leading entry 1, in pivot-column order.
pub fn rref(mut rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let lead = rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x /= lead;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col];
                for c in 0..ncols {
                    let sub = f * rows[pivot_row][c];
                    rows[r][c] -= sub;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Clear denominators of an RREF basis: each row scaled to a primitive
/// integer vector with positive leading entry. Canonical for a subspace.
pub fn integer_basis(rref_rows: &[Vec<Rat>]) -> Vec<Vec<i64>> {
    rref_rows
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
            let ints: Vec<i64> = row.iter().map(|x| (*x * rat(lcm)).to_integer()).collect();
            let gcd = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
            let gcd = if gcd == 0 { 1 } else { gcd };
            let sign = ints
                .iter()
                .find(|&&x| x != 0)
                .map_or(1, |&x| if x < 0 { -1 } else { 1 });
            ints.into_iter().map(|x| x / gcd * sign).collect()
        })
        .collect()
}

/// Reduce `v` against an RREF basis; returns the residue.
fn reduce(basis: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    let mut v = v.to_vec();
    for row in basis {
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if !v[lead].is_zero() {
            let f = v[lead] / row[lead];
            for c in 0..v.len() {
                let sub = f * row[c];
                v[c] -= sub;
            }
        }
    }
    v
}

/// Membership of `v` in the row space of an RREF basis.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    reduce(basis, v).iter().all(|x| x.is_zero())
}

/// Coordinates of `v` in a (linearly independent) basis, if it lies in the
/// span. Solved by Gaussian elimination on the transposed system.
pub fn solve_coords(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let n = v.len();
    // Augmented system: columns are basis vectors, last column is v.
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = (0..k).map(|c| basis[c][r]).collect();
            row.push(v[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..k {
        let Some(r) = (pr..n).find(|&r| !m[r][col].is_zero()) else {
            return None; // dependent basis; callers guarantee independence
        };
        m.swap(pr, r);
        let lead = m[pr][col];
        for x in m[pr].iter_mut() {
            *x /= lead;
        }
        for r in 0..n {
            if r != pr && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..=k {
                    let sub = f * m[pr][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(pr);
        pr += 1;
    }
    // Inconsistent rows mean v is outside the span.
    for r in pr..n {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    Some((0..k).map(|c| m[pivots[c]][k]).collect())
}

/// Rank of a set of integer vectors.
pub fn rank_of(rows: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    rref(rows).len()
}

pub fn to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn is_nonneg_integer(x: &Rat) -> bool {
    x.denom().is_one() && !x.is_negative()
}
