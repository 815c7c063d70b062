//! Group cohomology with finite coefficients and the kernels of restriction
//! built on top of it.
//!
//! Degree-two classes of a lattice `M` are realized in degree one: with
//! `n` a multiple of the exponent of `H²(G, M)`,
//! `H²(G, M)[n] ≅ H¹(G, M/n) / (image of H¹(G, M))`.
//! Every class is therefore a 1-cocycle, stored by its values on a fixed
//! generating list.

mod character;
mod cocycle;
mod decomposition;
mod lattice;
mod schur;
mod sha;

pub use character::{drakokhrust_sha, s2_character, CharacterGroup};
pub use decomposition::DecompositionSet;
pub use lattice::{h1_finite, h2_cyclic_tate, h2_finite, h2_lattice, LatticeCohomology, RestrictedClass};
pub use schur::{multiplier_invariants, schur_multiplier_small, SCHUR_CAP};
pub use sha::{sha2, sha2_chevalley, sha_omega, ShaOptions};

use crate::glattice::FinGModule;
use crate::permgroup::{Perm, PermGroup};
use crate::zmodlin::{quotient_invariants, AbelianInvariants, HowellBasis, ModMatrix};
use cocycle::{Action, CocycleSystem};
use std::fmt;
use std::sync::Arc;

/// Shared cocycle machinery for one group and one coefficient module.
pub(crate) struct Context {
    pub group: PermGroup,
    pub modulus: u64,
    pub rank: usize,
    pub acts: Vec<ModMatrix>,
    pub system: CocycleSystem,
}

impl Context {
    pub fn new(group: &PermGroup, acts: Vec<ModMatrix>, modulus: u64, rank: usize) -> Context {
        let gens = element_indices(group, &group.small_generating_set(), group);
        let system = CocycleSystem::new(group, gens, &Action { modulus, rank, mats: &acts });
        Context {
            group: group.clone(),
            modulus,
            rank,
            acts,
            system,
        }
    }

    pub fn from_module(module: &FinGModule) -> Context {
        Context::new(module.group(), module.matrices().to_vec(), module.modulus(), module.rank())
    }

    pub fn action(&self) -> Action<'_> {
        Action {
            modulus: self.modulus,
            rank: self.rank,
            mats: &self.acts,
        }
    }

    /// Coordinates of `sub`'s generators as elements of the ambient group.
    pub fn sub_generators(&self, sub: &PermGroup) -> Vec<usize> {
        element_indices(&self.group, &sub.small_generating_set(), sub)
    }

    pub fn coboundaries_for(&self, gens: &[usize]) -> Vec<Vec<u64>> {
        cocycle::coboundary_rows(gens, &self.action())
    }
}

pub(crate) fn element_indices(group: &PermGroup, gens: &[Perm], sub: &PermGroup) -> Vec<usize> {
    let list: Vec<&Perm> = if gens.is_empty() && sub.order() > 1 {
        sub.generators().iter().collect()
    } else {
        gens.iter().collect()
    };
    list.into_iter()
        .map(|g| group.index_of(g).expect("subgroup element"))
        .collect()
}

/// A subquotient `cocycles / zero` of a group of 1-cocycles.
#[derive(Clone)]
pub struct CohGroup {
    description: String,
    invariants: AbelianInvariants,
    cocycles: HowellBasis,
    zero: HowellBasis,
    ctx: Arc<Context>,
}

impl fmt::Debug for CohGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≅ {}", self.description, self.invariants)
    }
}

impl CohGroup {
    pub(crate) fn new(
        description: String,
        cocycles: HowellBasis,
        zero: HowellBasis,
        ctx: Arc<Context>,
    ) -> CohGroup {
        let total = cocycles.sum(&zero);
        let invariants = quotient_invariants(&total, &zero).expect("zero span lies in the cocycle span");
        CohGroup {
            description,
            invariants,
            cocycles: total,
            zero,
            ctx,
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_trivial()
    }

    pub fn modulus(&self) -> u64 {
        self.ctx.modulus
    }

    pub fn group(&self) -> &PermGroup {
        &self.ctx.group
    }

    /// The generating list the cocycle coordinates refer to.
    pub fn generators(&self) -> Vec<Perm> {
        self.ctx.system.gens.iter().map(|&i| self.ctx.group.element(i).clone()).collect()
    }

    pub fn cocycle_span(&self) -> &HowellBasis {
        &self.cocycles
    }

    pub fn zero_span(&self) -> &HowellBasis {
        &self.zero
    }

    /// Spanning rows that are nonzero in the quotient.
    pub fn representatives(&self) -> Vec<Vec<u64>> {
        self.cocycles
            .rows()
            .iter()
            .filter(|r| !self.zero.contains(r))
            .cloned()
            .collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.cocycles.contains(x)
    }

    pub fn is_zero_class(&self, x: &[u64]) -> bool {
        self.zero.contains(x)
    }

    /// The cocycle as a map element index → coefficient row.
    pub fn cocycle_values(&self, x: &[u64]) -> Vec<Vec<u64>> {
        (0..self.ctx.group.order()).map(|g| self.ctx.system.value(x, g)).collect()
    }

    /// Re-checks the cocycle identity on all pairs for every spanning row.
    pub fn validate_representatives(&self) -> bool {
        self.cocycles
            .rows()
            .iter()
            .all(|x| self.ctx.system.is_cocycle_all_pairs(&self.ctx.group, &self.ctx.action(), x))
    }
}
