//! 1-cocycles `f : G → A` with `f(gh) = f(g) + g·f(h)`, parametrized by
//! their values on a generating list. Each element's value is a linear
//! function `F_g` of those unknowns, propagated along a breadth-first
//! spanning tree of the Cayley graph; every non-tree edge contributes one
//! block of linear constraints.

use crate::permgroup::PermGroup;
use crate::zmodlin::{kernel, HowellBasis, ModMatrix};
use std::collections::VecDeque;

/// Action matrices mod n, one row-major `r × r` block per element.
pub(crate) struct Action<'a> {
    pub modulus: u64,
    pub rank: usize,
    pub mats: &'a [ModMatrix],
}

pub(crate) struct CocycleSystem {
    pub modulus: u64,
    pub rank: usize,
    /// Element indices of the generators the unknowns live on.
    pub gens: Vec<usize>,
    /// `f(g) = F_g · x`, each `F_g` an `r × (k r)` matrix.
    pub f: Vec<ModMatrix>,
    pub z1: HowellBasis,
}

const BATCH_COLS: usize = 64;

impl CocycleSystem {
    pub fn new(group: &PermGroup, gens: Vec<usize>, action: &Action) -> CocycleSystem {
        let n = action.modulus;
        let r = action.rank;
        let k = gens.len();
        let w = k * r;
        let mut f: Vec<Option<ModMatrix>> = vec![None; group.order()];
        f[0] = Some(ModMatrix::zeros(n, r, w));
        let mut constraints: Vec<ModMatrix> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let fx = f[x].clone().expect("visited");
            let ax = &action.mats[x];
            for (kk, &s) in gens.iter().enumerate() {
                let y = group.mul_index(x, s);
                let mut val = fx.clone();
                for i in 0..r {
                    for j in 0..r {
                        let v = (val.get(i, kk * r + j) + ax.get(i, j)) % n;
                        val.set(i, kk * r + j, v);
                    }
                }
                match &f[y] {
                    None => {
                        f[y] = Some(val);
                        queue.push_back(y);
                    }
                    Some(fy) => {
                        let mut diff = fy.clone();
                        for i in 0..r {
                            for c in 0..w {
                                diff.set(i, c, (fy.get(i, c) + n - val.get(i, c)) % n);
                            }
                        }
                        if !diff.is_zero() {
                            constraints.push(diff);
                        }
                    }
                }
            }
        }
        let f: Vec<ModMatrix> = f.into_iter().map(|m| m.expect("generators generate")).collect();
        let z1 = solve_constraints(n, w, r, &constraints);
        CocycleSystem {
            modulus: n,
            rank: r,
            gens,
            f,
            z1,
        }
    }

    pub fn width(&self) -> usize {
        self.gens.len() * self.rank
    }

    /// `f(g)` for the cocycle with generator values `x`.
    pub fn value(&self, x: &[u64], g: usize) -> Vec<u64> {
        self.f[g].transpose().left_apply(x)
    }

    /// Matrix of `x ↦ (f(d_1), …, f(d_m))` in row-vector convention.
    pub fn restriction_matrix(&self, sub_gens: &[usize]) -> ModMatrix {
        let r = self.rank;
        let mut m = ModMatrix::zeros(self.modulus, self.width(), sub_gens.len() * r);
        for (j, &d) in sub_gens.iter().enumerate() {
            let fd = &self.f[d];
            for i in 0..r {
                for c in 0..self.width() {
                    m.set(c, j * r + i, fd.get(i, c));
                }
            }
        }
        m
    }

    /// Checks `f(gh) = f(g) + g·f(h)` on every pair of elements.
    pub fn is_cocycle_all_pairs(&self, group: &PermGroup, action: &Action, x: &[u64]) -> bool {
        let n = self.modulus;
        let vals: Vec<Vec<u64>> = (0..group.order()).map(|g| self.value(x, g)).collect();
        (0..group.order()).all(|g| {
            let ag = action.mats[g].transpose();
            (0..group.order()).all(|h| {
                let gh = group.mul_index(g, h);
                let moved = ag.left_apply(&vals[h]);
                (0..self.rank).all(|i| vals[gh][i] == (vals[g][i] + moved[i]) % n)
            })
        })
    }
}

/// Kernel of the stacked constraints `Δ x = 0`, processed in batches so the
/// intermediate systems stay as small as the current solution space.
fn solve_constraints(n: u64, w: usize, r: usize, constraints: &[ModMatrix]) -> HowellBasis {
    let mut basis = HowellBasis::full(n, w);
    let per_batch = (BATCH_COLS / r.max(1)).max(1);
    for chunk in constraints.chunks(per_batch) {
        if basis.is_zero() {
            break;
        }
        let mut c = ModMatrix::zeros(n, w, chunk.len() * r);
        for (e, delta) in chunk.iter().enumerate() {
            for i in 0..r {
                for col in 0..w {
                    c.set(col, e * r + i, delta.get(i, col));
                }
            }
        }
        let kmat = basis.to_matrix();
        let y = kmat.mul(&c);
        if y.is_zero() {
            continue;
        }
        let ker = kernel(&y);
        basis = ker.image(&kmat);
    }
    basis
}

/// Coboundaries `g ↦ (g - 1)a` for `a` running over a basis of `(Z/n)^r`,
/// in the coordinates of `gens`.
pub(crate) fn coboundary_rows(gens: &[usize], action: &Action) -> Vec<Vec<u64>> {
    let (n, r) = (action.modulus, action.rank);
    (0..r)
        .map(|j| {
            let mut row = Vec::with_capacity(gens.len() * r);
            for &s in gens {
                let a = &action.mats[s];
                for i in 0..r {
                    let v = (a.get(i, j) + n - u64::from(i == j)) % n;
                    row.push(v);
                }
            }
            row
        })
        .collect()
}
