use super::{CohGroup, Context};
use crate::error::{KnotError, Result};
use crate::glattice::{FinGModule, GLattice, IntMatrix};
use crate::permgroup::{Perm, PermGroup};
use crate::zlin;
use crate::zmodlin::{kernel, preimage_within, AbelianInvariants, HowellBasis, ModMatrix};
use std::sync::Arc;

/// `H¹(G, A)` for a finite module.
pub fn h1_finite(module: &FinGModule) -> CohGroup {
    let ctx = Arc::new(Context::from_module(module));
    let gens = ctx.system.gens.clone();
    let zero = HowellBasis::from_rows(ctx.modulus, ctx.system.width(), ctx.coboundaries_for(&gens));
    let z1 = ctx.system.z1.clone();
    CohGroup::new(
        format!("H^1 of a group of order {} with coefficients (Z/{})^{}", module.group().order(), module.modulus(), module.rank()),
        z1,
        zero,
        ctx,
    )
}

/// `Map(G, A)` modulo the constants, as a module: `(g∗φ)(x) = φ(xg) − x·φ(g)`
/// on functions with `φ(1) = 0`. Its `H¹` is `H²(G, A)`.
pub(crate) fn shifted_module(module: &FinGModule) -> FinGModule {
    let g = module.group();
    let (n, r, ord) = (module.modulus(), module.rank(), g.order());
    let big = (ord - 1) * r;
    let gens = g.generators();
    let mats: Vec<ModMatrix> = gens
        .iter()
        .map(|s| {
            let gi = g.index_of(s).expect("member");
            let mut m = ModMatrix::zeros(n, big, big);
            for x in 1..ord {
                let xg = g.mul_index(x, gi);
                if xg != 0 {
                    for i in 0..r {
                        m.set((x - 1) * r + i, (xg - 1) * r + i, 1);
                    }
                }
                if gi != 0 {
                    let ax = module.matrix_at(x);
                    for i in 0..r {
                        for j in 0..r {
                            let cur = m.get((x - 1) * r + i, (gi - 1) * r + j);
                            m.set((x - 1) * r + i, (gi - 1) * r + j, (cur + n - ax.get(i, j)) % n);
                        }
                    }
                }
            }
            m
        })
        .collect();
    FinGModule::from_generators(g, n, gens, &mats).expect("shifted action is a homomorphism")
}

/// `H²(G, A)` for a finite module, computed as `H¹` of the shifted module.
pub fn h2_finite(module: &FinGModule) -> CohGroup {
    let mut c = h1_finite(&shifted_module(module));
    c.description = format!(
        "H^2 of a group of order {} with coefficients (Z/{})^{}",
        module.group().order(),
        module.modulus(),
        module.rank()
    );
    c
}

/// `H²(G, M)[n]` and the restriction maps out of it.
pub struct LatticeCohomology {
    lattice: GLattice,
    ctx: Arc<Context>,
    zero: HowellBasis,
}

/// A class restricted to a subgroup, in the coordinates of that subgroup's
/// generators.
#[derive(Clone, Debug)]
pub struct RestrictedClass {
    pub generators: Vec<Perm>,
    pub values: Vec<u64>,
    pub is_zero: bool,
}

impl LatticeCohomology {
    /// Uses modulus `|G|` (2 for the trivial group, whose cohomology vanishes).
    pub fn new(lattice: &GLattice) -> LatticeCohomology {
        LatticeCohomology::with_modulus(lattice, lattice.group().order().max(2) as u64)
    }

    /// `modulus` must be a multiple of the exponent of the part of `H²` of
    /// interest; the result is `H²(G, M)[modulus]`.
    pub fn with_modulus(lattice: &GLattice, modulus: u64) -> LatticeCohomology {
        let acts = lattice.reduce_mod(modulus).matrices().to_vec();
        let ctx = Arc::new(Context::new(lattice.group(), acts, modulus, lattice.rank()));
        let zero = zero_span(lattice, &ctx, &ctx.system.gens);
        LatticeCohomology {
            lattice: lattice.clone(),
            ctx,
            zero,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.ctx.modulus
    }

    pub fn group(&self) -> &PermGroup {
        &self.ctx.group
    }

    pub fn h2(&self) -> CohGroup {
        CohGroup::new(
            format!(
                "H^2 of a group of order {} with coefficients in a lattice of rank {} (mod {})",
                self.ctx.group.order(),
                self.lattice.rank(),
                self.ctx.modulus
            ),
            self.ctx.system.z1.clone(),
            self.zero.clone(),
            self.ctx.clone(),
        )
    }

    pub(crate) fn cocycles(&self) -> &HowellBasis {
        &self.ctx.system.z1
    }

    pub(crate) fn zero(&self) -> &HowellBasis {
        &self.zero
    }

    pub(crate) fn context(&self) -> Arc<Context> {
        self.ctx.clone()
    }

    /// The restriction map to `sub` and the zero span on the `sub` side.
    pub(crate) fn restriction_data(&self, sub: &PermGroup) -> (ModMatrix, HowellBasis) {
        let gens = self.ctx.sub_generators(sub);
        let map = self.ctx.system.restriction_matrix(&gens);
        let zero = zero_span(&self.lattice, &self.ctx, &gens);
        (map, zero)
    }

    pub fn restrict(&self, x: &[u64], sub: &PermGroup) -> Result<RestrictedClass> {
        if !sub.is_subgroup_of(&self.ctx.group) {
            return Err(KnotError::NotSubgroup("restrict".into()));
        }
        let gens = self.ctx.sub_generators(sub);
        let map = self.ctx.system.restriction_matrix(&gens);
        let values = map.left_apply(x);
        let zero = zero_span(&self.lattice, &self.ctx, &gens);
        Ok(RestrictedClass {
            generators: gens.iter().map(|&i| self.ctx.group.element(i).clone()).collect(),
            is_zero: zero.contains(&values),
            values,
        })
    }

    /// Classes killed by restriction to every member of `subs`.
    pub fn restriction_kernel(&self, subs: &[PermGroup]) -> Result<HowellBasis> {
        let mut domain = self.ctx.system.z1.clone();
        for d in subs {
            if !d.is_subgroup_of(&self.ctx.group) {
                return Err(KnotError::NotSubgroup("restriction_kernel".into()));
            }
            let (map, zero) = self.restriction_data(d);
            domain = preimage_within(&domain, &map, &zero);
        }
        Ok(domain)
    }
}

/// Coboundaries plus the reductions of integral cocycles `(g·v − v)/n`,
/// for `v` with `(g − 1)v ∈ nM` on every listed generator.
fn zero_span(lattice: &GLattice, ctx: &Context, gens: &[usize]) -> HowellBasis {
    let (n, r) = (ctx.modulus, ctx.rank);
    let w = gens.len() * r;
    let mut rows = ctx.coboundaries_for(gens);
    if !gens.is_empty() {
        let mut c = ModMatrix::zeros(n, r, w);
        for (k, &s) in gens.iter().enumerate() {
            let a = &ctx.acts[s];
            for i in 0..r {
                for j in 0..r {
                    // column block k is (A_s − I)ᵀ
                    let v = (a.get(j, i) + n - u64::from(i == j)) % n;
                    c.set(i, k * r + j, v);
                }
            }
        }
        let n_i = n as i128;
        for v in kernel(&c).rows() {
            let mut row = Vec::with_capacity(w);
            for &s in gens {
                let a: &IntMatrix = lattice.matrix_at(s);
                for i in 0..r {
                    let mut t: i128 = -(v[i] as i128);
                    for j in 0..r {
                        t += a.get(i, j) as i128 * v[j] as i128;
                    }
                    debug_assert_eq!(t % n_i, 0);
                    row.push((t / n_i).rem_euclid(n_i) as u64);
                }
            }
            rows.push(row);
        }
    }
    HowellBasis::from_rows(n, w, rows)
}

/// `H²(G, M)` at modulus `|G|`.
pub fn h2_lattice(lattice: &GLattice) -> CohGroup {
    LatticeCohomology::new(lattice).h2()
}

/// `H²(C, M) ≅ M^C / N_C M` for cyclic `C` inside the lattice's group.
pub fn h2_cyclic_tate(cyclic: &PermGroup, lattice: &GLattice) -> Result<AbelianInvariants> {
    if !cyclic.is_cyclic() {
        return Err(KnotError::NotCyclic);
    }
    if !cyclic.is_subgroup_of(lattice.group()) {
        return Err(KnotError::NotSubgroup("h2_cyclic_tate".into()));
    }
    let r = lattice.rank();
    if r == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    let Some(c) = cyclic.cyclic_generator() else {
        return Ok(AbelianInvariants::trivial());
    };
    let a = lattice.matrix(&c).expect("member");
    // M^C = {v : (A − I)v = 0} = left kernel of (A − I)ᵀ
    let at: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| a.get(j, i) as i128 - i128::from(i == j)).collect())
        .collect();
    let fixed = zlin::left_kernel(&at, r);
    let mut norm = vec![vec![0i128; r]; r];
    for g in cyclic.elements() {
        let m = lattice.matrix(g).expect("member");
        for (i, row) in norm.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x += m.get(j, i) as i128;
            }
        }
    }
    zlin::lattice_quotient(fixed, &norm, r)
        .ok_or_else(|| KnotError::BadParameter("norm image is not of full rank in the invariants".into()))
}
