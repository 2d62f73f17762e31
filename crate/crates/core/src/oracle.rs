//! Brute-force halfspace depth, for checking the solvers.
//!
//! [`oracle_depth`] computes `min_{u≠0} #{j : u·a_j ≤ 0}` by enumerating
//! the extreme rays of the hyperplane arrangement `{u : u·a_j = 0}` and
//! recursing on the rows a ray lies on. Integer data is handled in exact
//! `i128` arithmetic, so ties and degenerate configurations are counted
//! correctly. Other data falls back to floating point with a tolerance.
//!
//! [`sweep_depth_2d`] is an independent planar algorithm: it sorts the
//! critical directions by angle and counts once per open arc between them.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Debug;

use crate::error::{DepthError, Result};
use crate::instance::PointSet;

/// Largest integer magnitude accepted on the exact path.
const EXACT_LIMIT: f64 = (1u64 << 24) as f64;
/// Zero threshold for unit vectors on the floating path.
const FLOAT_TOL: f64 = 1e-10;

trait Scalar: Copy + Debug + PartialEq {
    const ZERO: Self;
    const ONE: Self;
    fn add(self, b: Self) -> Option<Self>;
    fn sub(self, b: Self) -> Option<Self>;
    fn mul(self, b: Self) -> Option<Self>;
    fn neg(self) -> Self;
    fn is_zero(self) -> bool;
    fn lt_zero(self) -> bool;
    /// Larger is a better elimination pivot.
    fn pivot_score(self) -> f64;
    /// Scale to a canonical representative of the same direction.
    fn normalize(v: &mut [Self]);
    /// Hashable identity of a normalized vector, if exact.
    fn key(v: &[Self]) -> Option<Vec<i128>>;
}

impl Scalar for i128 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn add(self, b: Self) -> Option<Self> {
        self.checked_add(b)
    }
    fn sub(self, b: Self) -> Option<Self> {
        self.checked_sub(b)
    }
    fn mul(self, b: Self) -> Option<Self> {
        self.checked_mul(b)
    }
    fn neg(self) -> Self {
        -self
    }
    fn is_zero(self) -> bool {
        self == 0
    }
    fn lt_zero(self) -> bool {
        self < 0
    }
    fn pivot_score(self) -> f64 {
        if self == 0 {
            f64::NEG_INFINITY
        } else {
            -(self.unsigned_abs() as f64)
        }
    }
    fn normalize(v: &mut [Self]) {
        let g = v.iter().fold(0u128, |g, &x| gcd(g, x.unsigned_abs()));
        if g > 1 {
            for x in v.iter_mut() {
                *x /= g as i128;
            }
        }
    }
    fn key(v: &[Self]) -> Option<Vec<i128>> {
        Some(v.to_vec())
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    fn add(self, b: Self) -> Option<Self> {
        Some(self + b)
    }
    fn sub(self, b: Self) -> Option<Self> {
        Some(self - b)
    }
    fn mul(self, b: Self) -> Option<Self> {
        Some(self * b)
    }
    fn neg(self) -> Self {
        -self
    }
    fn is_zero(self) -> bool {
        self.abs() <= FLOAT_TOL
    }
    fn lt_zero(self) -> bool {
        self < 0.0
    }
    fn pivot_score(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.abs()
        }
    }
    fn normalize(v: &mut [Self]) {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n <= FLOAT_TOL {
            v.iter_mut().for_each(|x| *x = 0.0);
        } else {
            for x in v.iter_mut() {
                *x /= n;
            }
        }
        for x in v.iter_mut() {
            if x.abs() <= FLOAT_TOL {
                *x = 0.0;
            }
        }
    }
    fn key(_: &[Self]) -> Option<Vec<i128>> {
        None
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> Option<S> {
    a.iter()
        .zip(b)
        .try_fold(S::ZERO, |acc, (&x, &y)| acc.add(x.mul(y)?))
}

fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Generalized cross product of `d − 1` vectors in `R^d`: a vector
/// orthogonal to all of them, zero iff they are dependent. Built from
/// minors over column subsets, bottom row first, with no division.
fn cross<S: Scalar>(vs: &[&[S]], d: usize) -> Option<Vec<S>> {
    debug_assert_eq!(vs.len() + 1, d);
    if d == 1 {
        return Some(vec![S::ONE]);
    }
    let full = (1usize << d) - 1;
    // minors[mask]: determinant of the last popcount(mask) rows restricted
    // to the columns in mask
    let mut minors = vec![S::ZERO; 1 << d];
    let k = vs.len();
    for c in 0..d {
        minors[1 << c] = vs[k - 1][c];
    }
    for t in 2..=k {
        let row = vs[k - t];
        let mut next = vec![S::ZERO; 1 << d];
        for mask in 1..=full {
            if (mask as u32).count_ones() as usize != t {
                continue;
            }
            let mut acc = S::ZERO;
            let mut pos = 0;
            for c in 0..d {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let term = row[c].mul(minors[mask & !(1 << c)])?;
                acc = if pos % 2 == 0 {
                    acc.add(term)?
                } else {
                    acc.sub(term)?
                };
                pos += 1;
            }
            next[mask] = acc;
        }
        minors = next;
    }
    let mut out = Vec::with_capacity(d);
    for c in 0..d {
        let m = minors[full & !(1 << c)];
        out.push(if c % 2 == 0 { m } else { m.neg() });
    }
    S::normalize(&mut out);
    Some(out)
}

/// Row echelon form of `rows`; returns the nonzero echelon rows and their
/// pivot columns.
fn echelon<S: Scalar>(rows: &[Vec<S>], d: usize) -> Option<(Vec<Vec<S>>, Vec<usize>)> {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..d {
        if r == m.len() {
            break;
        }
        let best = (r..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .max_by(|&a, &b| {
                m[a][col]
                    .pivot_score()
                    .total_cmp(&m[b][col].pivot_score())
                    .then(b.cmp(&a))
            });
        let Some(p) = best else { continue };
        m.swap(r, p);
        let piv = m[r][col];
        for i in r + 1..m.len() {
            let f = m[i][col];
            if f.is_zero() {
                m[i][col] = S::ZERO;
                continue;
            }
            for c in 0..d {
                m[i][c] = m[i][c].mul(piv)?.sub(m[r][c].mul(f)?)?;
            }
            m[i][col] = S::ZERO;
            S::normalize(&mut m[i]);
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Some((m, pivots))
}

/// Basis of the vectors orthogonal to every row, given the echelon form.
fn null_basis<S: Scalar>(ech: &[Vec<S>], pivots: &[usize], d: usize) -> Option<Vec<Vec<S>>> {
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let units: Vec<Vec<S>> = (0..d)
        .map(|c| {
            let mut e = vec![S::ZERO; d];
            e[c] = S::ONE;
            e
        })
        .collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut vs: Vec<&[S]> = ech.iter().map(Vec::as_slice).collect();
        vs.extend(
            free.iter()
                .filter(|&&g| g != f)
                .map(|&g| units[g].as_slice()),
        );
        out.push(cross(&vs, d)?);
    }
    Some(out)
}

/// `min_u #{u·a ≤ 0}` over rows that are all nonzero.
fn depth_rec<S: Scalar>(rows: &[Vec<S>], d: usize) -> Option<usize> {
    if rows.is_empty() {
        return Some(0);
    }
    let (ech, pivots) = echelon(rows, d)?;
    let r = ech.len();
    let constraints = null_basis(&ech, &pivots, d)?;
    if r == 1 {
        let refs: Vec<&[S]> = constraints.iter().map(Vec::as_slice).collect();
        let w = cross(&refs, d)?;
        let (mut neg, mut pos) = (0, 0);
        for a in rows {
            if dot(&w, a)?.lt_zero() {
                neg += 1;
            } else {
                pos += 1;
            }
        }
        return Some(neg.min(pos));
    }

    let n = rows.len();
    let mut best = n;
    let mut seen: HashSet<Vec<i128>> = HashSet::new();
    let mut subset: Vec<usize> = (0..r - 1).collect();
    let mut signs = vec![0i8; n];
    loop {
        let mut vs: Vec<&[S]> = constraints.iter().map(Vec::as_slice).collect();
        vs.extend(subset.iter().map(|&j| rows[j].as_slice()));
        let u = cross(&vs, d)?;
        let fresh = !is_zero_vec(&u)
            && match S::key(&u) {
                Some(k) => {
                    let neg_key: Vec<i128> = k.iter().map(|x| -x).collect();
                    !seen.contains(&neg_key) && seen.insert(k)
                }
                None => true,
            };
        if fresh {
            let (mut neg, mut pos, mut zeros) = (0, 0, 0);
            for (j, a) in rows.iter().enumerate() {
                let v = dot(&u, a)?;
                signs[j] = if v.is_zero() {
                    zeros += 1;
                    0
                } else if v.lt_zero() {
                    neg += 1;
                    -1
                } else {
                    pos += 1;
                    1
                };
            }
            // zeros == n only through rounding on the floating path
            if neg.min(pos) < best && zeros < n {
                // the r − 1 defining rows alone are independent in u⊥ and
                // contribute nothing
                let sub = if zeros == r - 1 {
                    0
                } else {
                    let z: Vec<Vec<S>> = (0..n)
                        .filter(|&j| signs[j] == 0)
                        .map(|j| rows[j].clone())
                        .collect();
                    depth_rec(&z, d)?
                };
                best = best.min(neg.min(pos) + sub);
            }
            if best == 0 {
                return Some(0);
            }
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    Some(best)
}

/// Advance to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn exact_rows(rows: &[Vec<f64>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&v| (v.fract() == 0.0 && v.abs() <= EXACT_LIMIT).then_some(v as i128))
                .collect()
        })
        .collect()
}

/// Halfspace depth of the origin with respect to `rows`, i.e.
/// `min_{u≠0} #{j : u·a_j ≤ 0}`. Zero rows lie in every halfspace and are
/// counted.
pub fn oracle_depth(rows: &[Vec<f64>], d: usize) -> usize {
    assert!(rows.iter().all(|r| r.len() == d), "row dimension mismatch");
    if d == 0 {
        return rows.len();
    }
    if let Some(exact) = exact_rows(rows) {
        let zero = exact.iter().filter(|r| is_zero_vec(r)).count();
        let live: Vec<Vec<i128>> = exact
            .into_iter()
            .filter(|r| !is_zero_vec(r))
            .map(|mut r| {
                i128::normalize(&mut r);
                r
            })
            .collect();
        if let Some(v) = depth_rec(&live, d) {
            return zero + v;
        }
    }
    let mut zero = 0;
    let mut live = Vec::new();
    for r in rows {
        let mut u = r.clone();
        f64::normalize(&mut u);
        if is_zero_vec(&u) {
            zero += 1;
        } else {
            live.push(u);
        }
    }
    zero + depth_rec(&live, d).expect("floating arithmetic does not overflow")
}

/// Depth of `p` in `points` by the oracle, duplicates of `p` included.
pub fn depth_of(points: &PointSet, p: &[f64]) -> usize {
    let rows: Vec<Vec<f64>> = points
        .points()
        .iter()
        .map(|q| q.iter().zip(p).map(|(a, b)| a - b).collect())
        .collect();
    oracle_depth(&rows, points.dim())
}

/// Upper half-plane (including the positive x axis) first.
fn half(v: [f64; 2]) -> u8 {
    if v[1] > 0.0 || (v[1] == 0.0 && v[0] > 0.0) {
        0
    } else {
        1
    }
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn angle_cmp(a: [f64; 2], b: [f64; 2]) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.0.partial_cmp(&cross2(a, b)).unwrap_or(Ordering::Equal))
}

/// Planar depth of the origin by angular sweep. Zero rows are counted in
/// every halfplane.
pub fn sweep_depth_2d(rows: &[Vec<f64>]) -> Result<usize> {
    if let Some(r) = rows.iter().find(|r| r.len() != 2) {
        return Err(DepthError::InvalidParams(format!(
            "planar sweep needs d = 2, got a row of length {}",
            r.len()
        )));
    }
    let live: Vec<[f64; 2]> = rows
        .iter()
        .map(|r| [r[0], r[1]])
        .filter(|r| r[0] != 0.0 || r[1] != 0.0)
        .collect();
    let zero = rows.len() - live.len();
    if live.is_empty() {
        return Ok(zero);
    }
    // the count only changes where u is normal to some row
    let mut crit: Vec<[f64; 2]> = live
        .iter()
        .flat_map(|a| [[-a[1], a[0]], [a[1], -a[0]]])
        .collect();
    crit.sort_by(|&a, &b| angle_cmp(a, b));
    crit.dedup_by(|a, b| angle_cmp(*a, *b) == Ordering::Equal);

    let mut best = live.len();
    for k in 0..crit.len() {
        let (c1, c2) = (crit[k], crit[(k + 1) % crit.len()]);
        let turn = cross2(c1, c2);
        let rep = if turn > 0.0 {
            [c1[0] + c2[0], c1[1] + c2[1]]
        } else if turn < 0.0 {
            [-(c1[0] + c2[0]), -(c1[1] + c2[1])]
        } else {
            // opposite directions: the arc is a half turn
            [-c1[1], c1[0]]
        };
        let count = live
            .iter()
            .filter(|a| rep[0] * a[0] + rep[1] * a[1] <= 0.0)
            .count();
        best = best.min(count);
    }
    Ok(zero + best)
}
