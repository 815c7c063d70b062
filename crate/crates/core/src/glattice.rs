//! G-lattices (free Z-modules with an integral matrix action) and finite
//! G-modules over Z/n. Vectors are columns; `g·v = A_g v`.

use crate::error::{KnotError, Result};
use crate::groupzoo::linear_part;
use crate::permgroup::{GroupHom, Perm, PermGroup};
use crate::zmodlin::ModMatrix;
use std::collections::VecDeque;
use std::sync::Arc;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
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

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.data[i * o.cols + j]
                        .checked_add(a.checked_mul(o.get(k, j)).expect("overflow"))
                        .expect("overflow");
                    out.data[i * o.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn reduce_mod(&self, n: u64) -> ModMatrix {
        ModMatrix::from_rows(n, self.cols, &self.to_rows())
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if n == 0 {
            1
        } else {
            sign * a[n - 1][n - 1]
        }
    }
}

fn edge_closure<M: Clone + PartialEq>(
    group: &PermGroup,
    gens: &[Perm],
    gen_mats: &[M],
    identity: M,
    mul: impl Fn(&M, &M) -> M,
) -> Result<Vec<M>> {
    let gi: Vec<usize> = gens
        .iter()
        .map(|g| group.index_of(g).ok_or_else(|| KnotError::NotSubgroup("generator".into())))
        .collect::<Result<_>>()?;
    let mut mats: Vec<Option<M>> = vec![None; group.order()];
    mats[0] = Some(identity);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let ax = mats[x].clone().expect("visited");
        for (k, &s) in gi.iter().enumerate() {
            let y = group.mul_index(x, s);
            let ay = mul(&ax, &gen_mats[k]);
            match &mats[y] {
                None => {
                    mats[y] = Some(ay);
                    queue.push_back(y);
                }
                Some(existing) if *existing != ay => {
                    return Err(KnotError::NotHomomorphism(
                        "action matrices violate a group relation".into(),
                    ));
                }
                Some(_) => {}
            }
        }
    }
    mats.into_iter()
        .map(|m| m.ok_or_else(|| KnotError::BadParameter("generators do not generate the group".into())))
        .collect()
}

/// A free Z-module of finite rank with a left action of a permutation group.
#[derive(Clone, Debug)]
pub struct GLattice {
    group: PermGroup,
    rank: usize,
    mats: Arc<Vec<IntMatrix>>,
}

impl GLattice {
    /// Extends generator matrices to the whole group; every edge `(g, gs)`
    /// of the Cayley graph is checked, which is equivalent to the full
    /// homomorphism property.
    pub fn from_generators(group: &PermGroup, gens: &[Perm], mats: &[IntMatrix]) -> Result<GLattice> {
        let rank = mats.first().map_or(0, IntMatrix::nrows);
        for m in mats {
            if m.nrows() != rank || m.ncols() != rank || m.det().abs() != 1 {
                return Err(KnotError::BadParameter("action matrix is not in GL(r, Z)".into()));
            }
        }
        let all = edge_closure(group, gens, mats, IntMatrix::identity(rank), IntMatrix::mul)?;
        Ok(GLattice {
            group: group.clone(),
            rank,
            mats: Arc::new(all),
        })
    }

    /// Builds the action from a function on group elements and verifies it.
    pub fn from_element_fn(group: &PermGroup, rank: usize, f: impl Fn(&Perm) -> IntMatrix) -> Result<GLattice> {
        let gens = group.generators().to_vec();
        let mats: Vec<IntMatrix> = gens.iter().map(&f).collect();
        if gens.is_empty() {
            return Ok(GLattice {
                group: group.clone(),
                rank,
                mats: Arc::new(vec![IntMatrix::identity(rank)]),
            });
        }
        let lat = GLattice::from_generators(group, &gens, &mats)?;
        for (g, m) in group.elements().iter().zip(lat.mats.iter()) {
            if f(g) != *m {
                return Err(KnotError::NotHomomorphism("action is not multiplicative".into()));
            }
        }
        Ok(lat)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Action matrix of the element with index `i`.
    pub fn matrix_at(&self, i: usize) -> &IntMatrix {
        &self.mats[i]
    }

    pub fn matrix(&self, g: &Perm) -> Option<&IntMatrix> {
        self.group.index_of(g).map(|i| &self.mats[i])
    }

    /// Restriction to a subgroup.
    pub fn restrict(&self, sub: &PermGroup) -> Result<GLattice> {
        if !sub.is_subgroup_of(&self.group) {
            return Err(KnotError::NotSubgroup("restrict".into()));
        }
        let mats = sub
            .elements()
            .iter()
            .map(|g| self.mats[self.group.index_of(g).expect("member")].clone())
            .collect();
        Ok(GLattice {
            group: sub.clone(),
            rank: self.rank,
            mats: Arc::new(mats),
        })
    }

    /// Pullback along `hom: G' → G` (the target must be this lattice's group).
    pub fn pullback(&self, hom: &GroupHom) -> Result<GLattice> {
        if *hom.target() != self.group {
            return Err(KnotError::BadParameter("homomorphism target mismatch".into()));
        }
        let src = hom.source();
        let mats = (0..src.order())
            .map(|i| {
                let j = self.group.index_of(hom.target().element(hom.apply_index(i))).expect("member");
                self.mats[j].clone()
            })
            .collect();
        Ok(GLattice {
            group: src.clone(),
            rank: self.rank,
            mats: Arc::new(mats),
        })
    }

    pub fn reduce_mod(&self, n: u64) -> FinGModule {
        FinGModule {
            group: self.group.clone(),
            modulus: n,
            rank: self.rank,
            mats: Arc::new(self.mats.iter().map(|m| m.reduce_mod(n)).collect()),
        }
    }

    /// Checks `A_{gh} = A_g A_h` on every pair.
    pub fn verify_all_pairs(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|i| {
            (0..n).all(|j| self.mats[self.group.mul_index(i, j)] == self.mats[i].mul(&self.mats[j]))
        })
    }
}

pub fn trivial_lattice(group: &PermGroup) -> GLattice {
    GLattice {
        group: group.clone(),
        rank: 1,
        mats: Arc::new(vec![IntMatrix::identity(1); group.order()]),
    }
}

fn coset_action_matrices(group: &PermGroup, sub: &PermGroup) -> Result<(usize, Vec<Vec<usize>>)> {
    let cosets = group.left_cosets(sub)?;
    let m = cosets.len();
    let perms = group
        .elements()
        .iter()
        .map(|g| (0..m).map(|c| cosets.act(group, g, c)).collect())
        .collect();
    Ok((m, perms))
}

/// `Ind_H^G Z`: the permutation lattice on left cosets, ordered by least element.
pub fn induced_lattice(group: &PermGroup, sub: &PermGroup) -> Result<GLattice> {
    let (m, perms) = coset_action_matrices(group, sub)?;
    let mats = perms
        .iter()
        .map(|pi: &Vec<usize>| {
            let mut a = IntMatrix::zeros(m, m);
            for (c, &d) in pi.iter().enumerate() {
                a.set(d, c, 1);
            }
            a
        })
        .collect();
    Ok(GLattice {
        group: group.clone(),
        rank: m,
        mats: Arc::new(mats),
    })
}

/// `Ind_H^G M` for an H-lattice `M`, with basis `e_c ⊗ v` over cosets `c`.
pub fn induce(group: &PermGroup, sub: &PermGroup, module: &GLattice) -> Result<GLattice> {
    if *module.group() != *sub {
        return Err(KnotError::BadParameter("module is not over the subgroup".into()));
    }
    let cosets = group.left_cosets(sub)?;
    let m = cosets.len();
    let r = module.rank();
    let inv_reps: Vec<Perm> = cosets.reps.iter().map(Perm::inverse).collect();
    let mats = group
        .elements()
        .iter()
        .map(|g| {
            let mut a = IntMatrix::zeros(m * r, m * r);
            for c in 0..m {
                let d = cosets.act(group, g, c);
                // g·rep_c = rep_d·h
                let h = inv_reps[d].compose(g).compose(&cosets.reps[c]);
                let ah = module.matrix(&h).expect("element of the subgroup");
                for i in 0..r {
                    for j in 0..r {
                        a.set(d * r + i, c * r + j, ah.get(i, j));
                    }
                }
            }
            a
        })
        .collect();
    Ok(GLattice {
        group: group.clone(),
        rank: m * r,
        mats: Arc::new(mats),
    })
}

/// `J_{G/H}` with the data of `0 → Z → Ind_H^G Z → J_{G/H} → 0`.
#[derive(Clone, Debug)]
pub struct ChevalleyLattice {
    pub lattice: GLattice,
    pub induced: GLattice,
    /// `(m-1) × m` matrix of the quotient map.
    pub projection: IntMatrix,
    /// The all-ones vector spanning the image of Z.
    pub embedding: Vec<i64>,
}

/// The Chevalley module: basis = the first `(G:H) - 1` coset coordinates,
/// the last coset vector maps to minus their sum.
pub fn chevalley_lattice(group: &PermGroup, sub: &PermGroup) -> Result<ChevalleyLattice> {
    let induced = induced_lattice(group, sub)?;
    let m = induced.rank();
    let r = m - 1;
    let mut projection = IntMatrix::zeros(r, m);
    for i in 0..r {
        projection.set(i, i, 1);
        projection.set(i, r, -1);
    }
    let mats = induced
        .mats
        .iter()
        .map(|a| {
            let mut j = IntMatrix::zeros(r, r);
            for c in 0..r {
                let d = (0..m).find(|&d| a.get(d, c) == 1).expect("permutation matrix");
                if d == r {
                    for i in 0..r {
                        j.set(i, c, -1);
                    }
                } else {
                    j.set(d, c, 1);
                }
            }
            j
        })
        .collect();
    Ok(ChevalleyLattice {
        lattice: GLattice {
            group: group.clone(),
            rank: r,
            mats: Arc::new(mats),
        },
        induced,
        projection,
        embedding: vec![1; m],
    })
}

/// A finite module `(Z/n)^r` with a left matrix action.
#[derive(Clone, Debug)]
pub struct FinGModule {
    group: PermGroup,
    modulus: u64,
    rank: usize,
    mats: Arc<Vec<ModMatrix>>,
}

impl FinGModule {
    pub fn from_generators(group: &PermGroup, modulus: u64, gens: &[Perm], mats: &[ModMatrix]) -> Result<FinGModule> {
        let rank = mats.first().map_or(0, ModMatrix::nrows);
        let all = edge_closure(group, gens, mats, ModMatrix::identity(modulus, rank), ModMatrix::mul)?;
        Ok(FinGModule {
            group: group.clone(),
            modulus,
            rank,
            mats: Arc::new(all),
        })
    }

    pub fn trivial(group: &PermGroup, modulus: u64) -> FinGModule {
        FinGModule {
            group: group.clone(),
            modulus,
            rank: 1,
            mats: Arc::new(vec![ModMatrix::identity(modulus, 1); group.order()]),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix_at(&self, i: usize) -> &ModMatrix {
        &self.mats[i]
    }

    /// `A ↦ Hom(A, Q/Z)` realized as the transpose of the inverse action.
    pub fn dual(&self) -> FinGModule {
        let mats = (0..self.group.order())
            .map(|i| {
                let inv = self.group.index_of(&self.group.element(i).inverse()).expect("member");
                self.mats[inv].transpose()
            })
            .collect();
        FinGModule {
            group: self.group.clone(),
            modulus: self.modulus,
            rank: self.rank,
            mats: Arc::new(mats),
        }
    }

    pub fn verify_all_pairs(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|i| {
            (0..n).all(|j| self.mats[self.group.mul_index(i, j)] == self.mats[i].mul(&self.mats[j]))
        })
    }

    pub fn matrices(&self) -> &[ModMatrix] {
        &self.mats
    }
}

/// F_p² with the linear permutation group `dagger` (fixing the origin)
/// acting through its column matrices.
pub fn standard_rep_mod_p(dagger: &PermGroup, p: usize) -> Result<FinGModule> {
    let mats = dagger
        .elements()
        .iter()
        .map(|s| {
            let l = linear_part(s, p)?;
            Ok(ModMatrix::from_rows(
                p as u64,
                2,
                &[vec![l.a as i64, l.b as i64], vec![l.c as i64, l.d as i64]],
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let module = FinGModule {
        group: dagger.clone(),
        modulus: p as u64,
        rank: 2,
        mats: Arc::new(mats),
    };
    if !module.verify_all_pairs() {
        return Err(KnotError::NotHomomorphism("standard representation".into()));
    }
    Ok(module)
}

#[derive(Clone, Debug)]
pub struct MackeyPiece {
    pub representative: Perm,
    /// `D ∩ gHg⁻¹`.
    pub intersection: PermGroup,
}

pub fn mackey_pieces(group: &PermGroup, sub: &PermGroup, d: &PermGroup) -> Result<Vec<MackeyPiece>> {
    let reps = group.double_coset_reps(d, sub)?;
    Ok(reps
        .into_iter()
        .map(|g| {
            let intersection = d.intersection(&sub.conjugate(&g));
            MackeyPiece {
                representative: g,
                intersection,
            }
        })
        .collect())
}
