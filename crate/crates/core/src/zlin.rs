//! Integer row reduction for lattices of small rank. Arithmetic is checked
//! i128; overflow panics rather than returning a wrong answer.

use crate::zmodlin::AbelianInvariants;
use num_integer::Integer;

fn ck_sub_mul(a: i128, q: i128, b: i128) -> i128 {
    q.checked_mul(b)
        .and_then(|qb| a.checked_sub(qb))
        .expect("integer overflow in lattice reduction")
}

fn ck_comb(s: i128, x: i128, t: i128, y: i128) -> i128 {
    s.checked_mul(x)
        .and_then(|a| t.checked_mul(y).and_then(|b| a.checked_add(b)))
        .expect("integer overflow in lattice reduction")
}

/// Row-echelon (Hermite) form of the row lattice: positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite(rows: Vec<Vec<i128>>, cols: usize) -> Vec<Vec<i128>> {
    let mut work: Vec<Vec<i128>> = rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let mut out: Vec<(usize, Vec<i128>)> = Vec::new();
    for j in 0..cols {
        let mut pivot: Option<Vec<i128>> = None;
        let mut rest = Vec::new();
        for mut r in work.drain(..) {
            if r[j] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.as_mut() {
                None => pivot = Some(r),
                Some(pr) => {
                    let (a, b) = (pr[j], r[j]);
                    let e = a.extended_gcd(&b);
                    let (g, s, t) = (e.gcd, e.x, e.y);
                    let (bg, ag) = (b / g, a / g);
                    for k in j..cols {
                        let (x, y) = (pr[k], r[k]);
                        pr[k] = ck_comb(s, x, t, y);
                        r[k] = ck_comb(bg, x, -ag, y);
                    }
                    if r.iter().any(|&x| x != 0) {
                        rest.push(r);
                    }
                }
            }
        }
        if let Some(mut pr) = pivot {
            if pr[j] < 0 {
                pr.iter_mut().for_each(|x| *x = -*x);
            }
            for (_, prev) in out.iter_mut() {
                let q = Integer::div_floor(&prev[j], &pr[j]);
                if q != 0 {
                    for k in j..cols {
                        prev[k] = ck_sub_mul(prev[k], q, pr[k]);
                    }
                }
            }
            out.push((j, pr));
        }
        work = rest;
    }
    out.into_iter().map(|(_, r)| r).collect()
}

/// Basis of `{x ∈ Z^rows : x·M = 0}`.
pub fn left_kernel(m: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let r = m.len();
    let aug: Vec<Vec<i128>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|k| i128::from(k == i)));
            v
        })
        .collect();
    hermite(aug, cols + r)
        .into_iter()
        .filter(|v| v[..cols].iter().all(|&x| x == 0))
        .map(|v| v[cols..].to_vec())
        .collect()
}

/// Coordinates of `v` in a Hermite basis, if `v` lies in its span.
pub fn coordinates(basis: &[Vec<i128>], v: &[i128]) -> Option<Vec<i128>> {
    let mut v = v.to_vec();
    let mut coords = vec![0i128; basis.len()];
    for (i, b) in basis.iter().enumerate() {
        let j = b.iter().position(|&x| x != 0)?;
        if v[..j].iter().any(|&x| x != 0) {
            return None;
        }
        if v[j] % b[j] != 0 {
            return None;
        }
        let q = v[j] / b[j];
        coords[i] = q;
        for k in j..v.len() {
            v[k] = ck_sub_mul(v[k], q, b[k]);
        }
    }
    v.iter().all(|&x| x == 0).then_some(coords)
}

/// Invariant factors of `Z^cols / rowspan(rel)`; `None` if infinite.
pub fn cokernel_invariants(rel: Vec<Vec<i128>>, cols: usize) -> Option<AbelianInvariants> {
    let mut a = rel;
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
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
            let q = Integer::div_floor(&a[i][t], &piv);
            if q != 0 {
                for j in t..cols {
                    let v = a[t][j];
                    a[i][j] = ck_sub_mul(a[i][j], q, v);
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = Integer::div_floor(&a[t][j], &piv);
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    let v = row[t];
                    row[j] = ck_sub_mul(row[j], q, v);
                }
            }
            clean &= a[t][j] == 0;
        }
        if clean {
            diag.push(piv.unsigned_abs() as u64);
            t += 1;
        }
    }
    if t < cols {
        return None;
    }
    Some(AbelianInvariants::from_cyclic_orders(&diag))
}

/// Invariants of `L₁ / L₂` for lattices given by generators, `L₂ ⊆ L₁`.
pub fn lattice_quotient(l1: Vec<Vec<i128>>, l2: &[Vec<i128>], cols: usize) -> Option<AbelianInvariants> {
    let basis = hermite(l1, cols);
    let rel = l2
        .iter()
        .map(|v| coordinates(&basis, v))
        .collect::<Option<Vec<_>>>()?;
    cokernel_invariants(rel, basis.len())
}
