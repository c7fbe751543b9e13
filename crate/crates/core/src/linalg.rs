//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::symexpr::{qi, Q};

pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(x, y)| x * y)
                .fold(Q::zero(), |s, t| s + t)
        })
        .collect()
}

pub fn trace(a: &Matrix) -> Q {
    (0..a.len())
        .map(|i| a[i][i].clone())
        .fold(Q::zero(), |s, t| s + t)
}

pub fn add_scaled(a: &Matrix, b: &Matrix, s: &Q) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * s).collect())
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect()
}

/// Integer row echelon form by fraction-free (Bareiss) elimination.
/// Returns the echelon rows and their pivot columns.
pub fn bareiss_echelon(m: &Matrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| integer_row(r)).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of the right nullspace. Each vector has a one in its own free column
/// and zeros in the other free columns; vectors are ordered by free column.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Q>> {
    let (ech, pivots) = if m.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        bareiss_echelon(m)
    };
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut s = Q::zero();
                for j in pc + 1..cols {
                    if !x[j].is_zero() && !ech[r][j].is_zero() {
                        s += Q::from_integer(ech[r][j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / Q::from_integer(ech[r][pc].clone());
            }
            x
        })
        .collect()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Characteristic polynomial det(xI - A), coefficients from constant term up
/// (Faddeev-LeVerrier).
pub fn charpoly(a: &Matrix) -> Vec<Q> {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = zeros(n, n);
    for k in 1..=n {
        let am = mat_mul(a, &m);
        m = add_scaled(&am, &identity(n), &coeffs[n + 1 - k]);
        let c = -trace(&mat_mul(a, &m)) / qi(k as i64);
        coeffs[n - k] = c;
    }
    coeffs
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval_poly(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, k| acc * x + k)
}

fn deflate(c: &[Q], r: &Q) -> Vec<Q> {
    // synthetic division by (x - r)
    let n = c.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for k in (0..n).rev() {
        carry = &c[k + 1] + &carry * r;
        out[k] = carry.clone();
    }
    out
}

/// All roots with multiplicity when the polynomial splits over Q.
pub fn rational_roots(poly: &[Q]) -> Option<Vec<(Q, usize)>> {
    let mut c: Vec<Q> = poly.to_vec();
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    let mut roots: Vec<(Q, usize)> = Vec::new();
    let push = |roots: &mut Vec<(Q, usize)>, r: Q| {
        if let Some(slot) = roots.iter_mut().find(|(x, _)| *x == r) {
            slot.1 += 1;
        } else {
            roots.push((r, 1));
        }
    };
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        push(&mut roots, Q::zero());
    }
    while c.len() > 1 {
        let ints = integer_row(&c);
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().unwrap())?;
        let mut found = None;
        'outer: for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let r = Q::new(p * sign, q.clone());
                    if eval_poly(&c, &r).is_zero() {
                        found = Some(r);
                        break 'outer;
                    }
                }
            }
        }
        let r = found?;
        c = deflate(&c, &r);
        push(&mut roots, r);
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(ns[0], vec![qi(-2), qi(1), qi(0)]);
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        assert!(nullspace(&identity(3), 3).is_empty());
        assert_eq!(nullspace(&Vec::new(), 2).len(), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn charpoly_and_roots() {
        let a = m(&[&[2, 0, 0], &[1, 2, 0], &[0, 0, -1]]);
        let cp = charpoly(&a);
        // (x-2)^2 (x+1) = x^3 - 3x^2 + 4
        assert_eq!(cp, vec![qi(4), qi(0), qi(-3), qi(1)]);
        assert_eq!(rational_roots(&cp).unwrap(), vec![(qi(-1), 1), (qi(2), 2)]);
        assert_eq!(
            rational_roots(&[qi(-1), qi(0), qi(4)]).unwrap(),
            vec![(q(-1, 2), 1), (q(1, 2), 1)]
        );
        assert!(rational_roots(&[qi(-2), qi(0), qi(1)]).is_none());
    }
}
