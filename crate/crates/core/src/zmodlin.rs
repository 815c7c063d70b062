//! Dense linear algebra over Z/n for composite n: Howell forms, kernels,
//! solving and the invariant factors of subquotients.

use crate::error::{KnotError, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[inline]
fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

#[inline]
fn to_mod(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// A unit `u` with `u·a ≡ gcd(a, n) (mod n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = a.gcd(&n);
    let m = n / g;
    if m == 1 {
        return 1;
    }
    let ext = ((a / g) as i128).extended_gcd(&(m as i128));
    let u0 = to_mod(ext.x, m);
    let mut u = u0;
    while u.gcd(&n) != 1 {
        u += m;
    }
    u % n
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModMatrix mod {} ({}x{})", self.modulus, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> ModMatrix {
        assert!(modulus >= 2, "modulus must be at least 2");
        ModMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: u64, n: usize) -> ModMatrix {
        let mut m = ModMatrix::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Rows of signed integers, reduced mod `modulus`.
    pub fn from_rows(modulus: u64, cols: usize, rows: &[Vec<i64>]) -> ModMatrix {
        let mut m = ModMatrix::zeros(modulus, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, to_mod(x as i128, modulus));
            }
        }
        m
    }

    pub fn from_residue_rows(modulus: u64, cols: usize, rows: Vec<Vec<u64>>) -> ModMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.into_iter().map(|x| x % modulus));
        }
        ModMatrix {
            modulus,
            rows: n,
            cols,
            data,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let n = self.modulus;
        let mut out = ModMatrix::zeros(n, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u128; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot += a as u128 * other.get(k, j) as u128;
                }
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|s| *s %= n as u128);
                }
            }
            for (j, s) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = (s % n as u128) as u64;
            }
        }
        out
    }

    /// `v · self` for a row vector `v`.
    pub fn left_apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let n = self.modulus as u128;
        let mut acc = vec![0u128; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, slot) in acc.iter_mut().enumerate() {
                *slot = (*slot + a as u128 * self.get(k, j) as u128) % n;
            }
        }
        acc.into_iter().map(|x| x as u64).collect()
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut t = ModMatrix::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Canonical generating rows of a row span in (Z/n)^cols.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HowellBasis {
    modulus: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl fmt::Debug for HowellBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HowellBasis(mod {}, {} cols, rows {:?})", self.modulus, self.cols, self.rows)
    }
}

fn combine_rows(pr: &mut [u64], r: &mut [u64], j: usize, n: u64) {
    let a = pr[j] as i128;
    let b = r[j] as i128;
    let e = a.extended_gcd(&b);
    let (g, s, t) = (e.gcd, e.x, e.y);
    let (bg, ag) = (to_mod(b / g, n), to_mod(-(a / g), n));
    let (s, t) = (to_mod(s, n), to_mod(t, n));
    for k in j..pr.len() {
        let (x, y) = (pr[k], r[k]);
        pr[k] = addmod(mulmod(s, x, n), mulmod(t, y, n), n);
        r[k] = addmod(mulmod(bg, x, n), mulmod(ag, y, n), n);
    }
}

fn howell_rows(rows: Vec<Vec<u64>>, cols: usize, n: u64) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x % n).collect::<Vec<_>>())
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut out: Vec<(usize, Vec<u64>)> = Vec::new();
    for j in 0..cols {
        let mut pivot: Option<Vec<u64>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for mut r in work.drain(..) {
            if r[j] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.as_mut() {
                None => pivot = Some(r),
                Some(pr) => {
                    combine_rows(pr, &mut r, j, n);
                    if r.iter().any(|&x| x != 0) {
                        rest.push(r);
                    }
                }
            }
        }
        if let Some(mut pr) = pivot {
            let u = normalizing_unit(pr[j], n);
            for x in pr[j..].iter_mut() {
                *x = mulmod(*x, u, n);
            }
            let ann = n / pr[j];
            let extra: Vec<u64> = pr.iter().map(|&x| mulmod(x, ann, n)).collect();
            if extra.iter().any(|&x| x != 0) {
                rest.push(extra);
            }
            out.push((j, pr));
        }
        work = rest;
    }
    // reduce entries above each pivot into [0, pivot)
    for i in 0..out.len() {
        let (j, _) = out[i];
        let g = out[i].1[j];
        for k in 0..i {
            let e = out[k].1[j];
            let q = e / g;
            if q == 0 {
                continue;
            }
            let (head, tail) = out.split_at_mut(i);
            let src = &tail[0].1;
            let dst = &mut head[k].1;
            for c in j..cols {
                dst[c] = (dst[c] + n - mulmod(q, src[c], n)) % n;
            }
        }
    }
    out.into_iter().map(|(_, r)| r).collect()
}

fn pivot_col(r: &[u64]) -> usize {
    r.iter().position(|&x| x != 0).expect("nonzero row")
}

impl HowellBasis {
    pub fn from_rows(modulus: u64, cols: usize, rows: Vec<Vec<u64>>) -> HowellBasis {
        HowellBasis {
            modulus,
            cols,
            rows: howell_rows(rows, cols, modulus),
        }
    }

    pub fn zero(modulus: u64, cols: usize) -> HowellBasis {
        HowellBasis {
            modulus,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn full(modulus: u64, cols: usize) -> HowellBasis {
        howell(&ModMatrix::identity(modulus, cols))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_matrix(&self) -> ModMatrix {
        ModMatrix::from_residue_rows(self.modulus, self.cols, self.rows.clone())
    }

    /// Remainder of `v` after greedy reduction by the pivots; zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|x| x % n).collect();
        for r in &self.rows {
            let j = pivot_col(r);
            let g = r[j];
            let q = v[j] / g;
            if q == 0 {
                continue;
            }
            for c in j..self.cols {
                v[c] = (v[c] + n - mulmod(q, r[c], n)) % n;
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_span(&self, other: &HowellBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Number of elements of the span, if it fits in a u128.
    pub fn span_size(&self) -> Option<u128> {
        self.rows.iter().try_fold(1u128, |acc, r| {
            acc.checked_mul((self.modulus / r[pivot_col(r)]) as u128)
        })
    }

    /// Span of the union of both generating sets.
    pub fn sum(&self, other: &HowellBasis) -> HowellBasis {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        HowellBasis::from_rows(self.modulus, self.cols, rows)
    }

    /// Image of the span under `v ↦ v·map`.
    pub fn image(&self, map: &ModMatrix) -> HowellBasis {
        let rows = self.rows.iter().map(|r| map.left_apply(r)).collect();
        HowellBasis::from_rows(self.modulus, map.ncols(), rows)
    }
}

pub fn howell(m: &ModMatrix) -> HowellBasis {
    HowellBasis::from_rows(m.modulus(), m.ncols(), m.to_rows())
}

/// Rows `x` of the combined Howell form whose first `split` entries vanish,
/// restricted to the remaining columns.
fn lower_part(rows: Vec<Vec<u64>>, total_cols: usize, split: usize, n: u64) -> HowellBasis {
    let h = howell_rows(rows, total_cols, n);
    let tail = h
        .into_iter()
        .filter(|r| r[..split].iter().all(|&x| x == 0))
        .map(|r| r[split..].to_vec())
        .collect();
    HowellBasis::from_rows(n, total_cols - split, tail)
}

/// Basis of the left kernel `{x : x·M = 0}`.
pub fn kernel(m: &ModMatrix) -> HowellBasis {
    let (r, c, n) = (m.nrows(), m.ncols(), m.modulus());
    let rows = (0..r)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..r).map(|k| u64::from(k == i)));
            row
        })
        .collect();
    lower_part(rows, c + r, c, n)
}

/// Some `x` with `x·M = target`, if one exists.
pub fn solve(m: &ModMatrix, target: &[u64]) -> Option<Vec<u64>> {
    let (r, c, n) = (m.nrows(), m.ncols(), m.modulus());
    assert_eq!(target.len(), c);
    let width = c + 1 + r;
    let mut rows = Vec::with_capacity(r + 1);
    let mut first: Vec<u64> = target.iter().map(|&t| (n - t % n) % n).collect();
    first.push(1);
    first.extend(std::iter::repeat(0).take(r));
    rows.push(first);
    for i in 0..r {
        let mut row = m.row(i).to_vec();
        row.push(0);
        row.extend((0..r).map(|k| u64::from(k == i)));
        rows.push(row);
    }
    let h = howell_rows(rows, width, n);
    let hit = h
        .into_iter()
        .find(|row| row[..c].iter().all(|&x| x == 0) && row[c] == 1)?;
    let x = hit[c + 1..].to_vec();
    debug_assert_eq!(m.left_apply(&x), target.iter().map(|t| t % n).collect::<Vec<_>>());
    Some(x)
}

/// `{x ∈ span(domain) : x·map ∈ span(target)}`.
pub fn preimage_within(domain: &HowellBasis, map: &ModMatrix, target: &HowellBasis) -> HowellBasis {
    let n = domain.modulus();
    let out = map.ncols();
    let d = domain.ncols();
    assert_eq!(map.nrows(), d);
    assert_eq!(target.ncols(), out);
    let mut rows = Vec::with_capacity(domain.rows().len() + target.rows().len());
    for x in domain.rows() {
        let mut row = map.left_apply(x);
        row.extend_from_slice(x);
        rows.push(row);
    }
    for t in target.rows() {
        let mut row = t.clone();
        row.extend(std::iter::repeat(0).take(d));
        rows.push(row);
    }
    lower_part(rows, out + d, out, n)
}

/// Invariant factors `d₁ | d₂ | …` of a finite abelian group; empty means trivial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

impl fmt::Debug for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.factors)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants::default()
    }

    /// Normal form of `⊕ Z/c` for arbitrary cyclic orders `c` (0 and 1 are dropped).
    pub fn from_cyclic_orders(orders: &[u64]) -> AbelianInvariants {
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &c in orders {
            if c <= 1 {
                continue;
            }
            for (p, e) in factorize(c) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; width];
        for mut powers in by_prime.into_values() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (k, q) in powers.into_iter().enumerate() {
                factors[width - 1 - k] *= q;
            }
        }
        AbelianInvariants { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of the group (1 when trivial).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }
}

/// Smith diagonal of a relation matrix over Z/n, as cyclic orders of
/// `(Z/n)^cols / rowspan`.
fn smith_cyclic_orders(rows: Vec<Vec<u64>>, cols: usize, n: u64) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as i128).collect())
        .collect();
    let ni = n as i128;
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.map_or(true, |(bi, bj)| x < a[bi][bj]) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let piv = a[t][t];
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t] / piv;
            if q != 0 {
                for j in t..cols {
                    a[i][j] = (a[i][j] - q * a[t][j]).rem_euclid(ni);
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / piv;
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] = (row[j] - q * row[t]).rem_euclid(ni);
                }
            }
            clean &= a[t][j] == 0;
        }
        if clean {
            diag.push((piv as u64).gcd(&n));
            t += 1;
        }
    }
    let mut orders: Vec<u64> = diag.into_iter().map(|d| d).collect();
    orders.extend(std::iter::repeat(n).take(cols - t));
    orders
}

/// Invariant factors of `span(a) / span(b)`.
pub fn quotient_invariants(a: &HowellBasis, b: &HowellBasis) -> Result<AbelianInvariants> {
    if a.modulus() != b.modulus() || a.ncols() != b.ncols() {
        return Err(KnotError::BadParameter("incompatible spans".into()));
    }
    if !a.contains_span(b) {
        return Err(KnotError::NotContained);
    }
    let n = a.modulus();
    let s = a.rows().len();
    if s == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    let am = a.to_matrix();
    let mut relations: Vec<Vec<u64>> = kernel(&am).rows().to_vec();
    for r in b.rows() {
        relations.push(solve(&am, r).expect("contained row is solvable"));
    }
    Ok(AbelianInvariants::from_cyclic_orders(&smith_cyclic_orders(
        relations, s, n,
    )))
}
