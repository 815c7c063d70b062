use super::decomposition::effective_members;
use super::lattice::LatticeCohomology;
use super::{CohGroup, DecompositionSet};
use crate::error::{KnotError, Result};
use crate::glattice::{chevalley_lattice, GLattice};
use crate::permgroup::PermGroup;
use crate::zmodlin::{preimage_within, HowellBasis, ModMatrix};
use rayon::prelude::*;

/// Switches for the reductions applied when the coefficients are `J_{G/H}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShaOptions {
    /// Replace the cyclic members by the cyclic subgroups of `H`.
    pub stabilizer_reduction: bool,
    /// Replace each member by a Sylow p-subgroup and keep the p-primary
    /// part; needs `(G:H)` a power of p.
    pub sylow_reduction: bool,
    /// Work modulo the p-part of `|G|`; needs `(G:H)` a power of p.
    pub fast_p_part: bool,
    pub parallel: bool,
}

impl Default for ShaOptions {
    fn default() -> Self {
        ShaOptions {
            stabilizer_reduction: true,
            sylow_reduction: true,
            fast_p_part: false,
            parallel: true,
        }
    }
}

impl ShaOptions {
    /// The defaults, minus the Sylow reduction when `(G:H)` is not a prime
    /// power.
    pub fn suited_to(group: &PermGroup, sub: &PermGroup) -> Self {
        let index = group.order() / sub.order().max(1);
        if index <= 1 || prime_power(index).is_some() {
            ShaOptions::default()
        } else {
            ShaOptions {
                sylow_reduction: false,
                ..ShaOptions::default()
            }
        }
    }

    /// No reductions: the plain definition.
    pub fn plain() -> Self {
        ShaOptions {
            stabilizer_reduction: false,
            sylow_reduction: false,
            fast_p_part: false,
            parallel: true,
        }
    }
}

fn kernel_over(coh: &LatticeCohomology, subs: &[PermGroup], parallel: bool) -> HowellBasis {
    let data: Vec<(ModMatrix, HowellBasis)> = if parallel {
        subs.par_iter().map(|d| coh.restriction_data(d)).collect()
    } else {
        subs.iter().map(|d| coh.restriction_data(d)).collect()
    };
    let mut domain = coh.cocycles().clone();
    for (map, zero) in &data {
        domain = preimage_within(&domain, map, zero);
    }
    domain
}

fn finish(coh: &LatticeCohomology, domain: HowellBasis, what: String) -> CohGroup {
    CohGroup::new(what, domain, coh.zero().clone(), coh.context())
}

/// `Ker(H²(G, M) → ⨁_{D ∈ 𝒟} H²(D, M))`.
pub fn sha2(lattice: &GLattice, set: &DecompositionSet) -> Result<CohGroup> {
    if set.group() != lattice.group() {
        return Err(KnotError::BadParameter("decomposition set lives in another group".into()));
    }
    let coh = LatticeCohomology::new(lattice);
    let subs = effective_members(set.group(), set.members());
    let domain = kernel_over(&coh, &subs, true);
    Ok(finish(
        &coh,
        domain,
        format!("Sha^2 over {} subgroups of a group of order {}", set.members().len(), set.group().order()),
    ))
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Classes of `domain` killed by the full power of `p` dividing `|G|`.
fn p_primary_part(coh: &LatticeCohomology, domain: HowellBasis, p: usize) -> HowellBasis {
    let n = coh.modulus();
    let mut q = 1u64;
    let mut o = coh.group().order() as u64;
    while o % p as u64 == 0 {
        o /= p as u64;
        q *= p as u64;
    }
    if n == q {
        return domain;
    }
    let w = domain.ncols();
    let mut scale = ModMatrix::zeros(n, w, w);
    for i in 0..w {
        scale.set(i, i, q % n);
    }
    preimage_within(&domain, &scale, coh.zero())
}

/// `Sha²_𝒟(G, J_{G/H})` with the reductions selected in `opts`.
pub fn sha2_chevalley(
    group: &PermGroup,
    sub: &PermGroup,
    set: &DecompositionSet,
    opts: &ShaOptions,
) -> Result<CohGroup> {
    if !sub.is_subgroup_of(group) {
        return Err(KnotError::NotSubgroup("sha2_chevalley".into()));
    }
    if set.group() != group {
        return Err(KnotError::BadParameter("decomposition set lives in another group".into()));
    }
    let index = group.order() / sub.order();
    let pp = prime_power(index);
    if (opts.sylow_reduction || opts.fast_p_part) && pp.is_none() && index > 1 {
        return Err(KnotError::PreconditionViolated(format!(
            "index {index} is not a prime power"
        )));
    }
    let j = chevalley_lattice(group, sub)?.lattice;
    let modulus = match (opts.fast_p_part, pp) {
        (true, Some((p, _))) => {
            let mut m = 1usize;
            let mut o = group.order();
            while o % p == 0 {
                o /= p;
                m *= p;
            }
            m.max(2) as u64
        }
        _ => group.order().max(2) as u64,
    };
    let coh = LatticeCohomology::with_modulus(&j, modulus);
    let mut subs: Vec<PermGroup> = if opts.stabilizer_reduction {
        set.relative_to(sub)
    } else {
        set.members().to_vec()
    };
    if let (true, Some((p, _))) = (opts.sylow_reduction, pp) {
        subs = subs.iter().map(|d| d.sylow_p(p)).collect();
    }
    let subs = effective_members(group, &subs);
    let mut domain = kernel_over(&coh, &subs, opts.parallel);
    if let (true, Some((p, _))) = (opts.sylow_reduction, pp) {
        // Sha is p-primary, but the kernel over Sylow subgroups need not be.
        domain = p_primary_part(&coh, domain, p);
    }
    Ok(finish(
        &coh,
        domain,
        format!(
            "Sha^2 of J_(G/H), |G| = {}, (G:H) = {}, checked on {} subgroups",
            group.order(),
            index,
            subs.len()
        ),
    ))
}

/// `Sha²_ω(G, J_{G/H})`: the decomposition set of all cyclic subgroups.
pub fn sha_omega(group: &PermGroup, sub: &PermGroup) -> Result<CohGroup> {
    let set = DecompositionSet::cyclic(group);
    sha2_chevalley(group, sub, &set, &ShaOptions::suited_to(group, sub))
}
