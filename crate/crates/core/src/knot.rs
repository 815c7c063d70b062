//! Deciding the Hasse norm principle for a transitive group of degree p²
//! from its decomposition groups.

use crate::cohom::{sha2_chevalley, DecompositionSet, ShaOptions};
use crate::error::{KnotError, Result};
use crate::groupzoo::MatGL2;
use crate::permgroup::{Perm, PermGroup};
use crate::zmodlin::AbelianInvariants;
use serde::Serialize;

/// A normal regular subgroup `N ≅ (C_p)²` complementing `H`, with the
/// matrices of `H`'s generators acting on `N` by conjugation.
#[derive(Clone, Debug, Serialize)]
pub struct StarWitness {
    #[serde(skip)]
    pub translations: PermGroup,
    /// The basis `e₁, e₂` of `N` as image arrays.
    pub basis: Vec<Vec<usize>>,
    /// Column matrices: column j holds the coordinates of `h e_j h⁻¹`.
    pub matrices: Vec<[[u64; 2]; 2]>,
    pub determinants: Vec<u64>,
}

impl StarWitness {
    pub fn holds(&self) -> bool {
        self.determinants.iter().all(|&d| d == 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Classifier,
    Cohomology,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Trivial,
    #[serde(rename = "Z/p")]
    CyclicP,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionEcho {
    pub members: usize,
    pub added_by_closure: usize,
    pub member_orders: Vec<usize>,
    pub contains_cp2: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotReport {
    pub p: usize,
    pub group_order: usize,
    pub stabilizer_order: usize,
    pub star: Option<StarWitness>,
    pub sha_invariants: AbelianInvariants,
    pub decision: Decision,
    pub method: Method,
    pub decomposition: DecompositionEcho,
}

#[derive(Clone, Debug, Serialize)]
pub struct H1PicReport {
    pub p: usize,
    pub invariants: AbelianInvariants,
    pub witness: Option<StarWitness>,
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n % d == 0).unwrap_or(n)
}

/// Returns p after checking transitivity on p² points and that `sub` is a
/// point stabilizer.
pub fn degree_prime(group: &PermGroup, sub: &PermGroup) -> Result<usize> {
    let d = group.degree();
    let p = smallest_prime_factor(d);
    if d < 4 || p * p != d {
        return Err(KnotError::BadParameter(format!("degree {d} is not the square of a prime")));
    }
    if !group.is_transitive() {
        return Err(KnotError::NotTransitive);
    }
    if !sub.is_subgroup_of(group) || !(0..d).any(|x| group.point_stabilizer(x) == *sub) {
        return Err(KnotError::NotStabilizer);
    }
    Ok(p)
}

fn coordinates(e1: &Perm, e2: &Perm, x: &Perm, p: usize) -> (u64, u64) {
    for a in 0..p {
        for b in 0..p {
            if e1.pow(a as i64).compose(&e2.pow(b as i64)) == *x {
                return (a as u64, b as u64);
            }
        }
    }
    unreachable!("element of the translation subgroup")
}

fn witness_for(n: &PermGroup, sub: &PermGroup, p: usize) -> StarWitness {
    let e1 = n.elements().iter().find(|g| !g.is_identity()).expect("order p²").clone();
    let first = crate::permgroup::close(std::slice::from_ref(&e1), n.degree()).expect("cyclic");
    let e2 = n.elements().iter().find(|g| !first.contains(g)).expect("rank two").clone();
    let mut matrices = Vec::new();
    let mut determinants = Vec::new();
    for h in sub.small_generating_set() {
        let (a, c) = coordinates(&e1, &e2, &e1.conjugate_by(&h), p);
        let (b, d) = coordinates(&e1, &e2, &e2.conjugate_by(&h), p);
        let m = MatGL2::new(a as i64, b as i64, c as i64, d as i64, p as u64).expect("invertible");
        determinants.push(m.det());
        matrices.push(m.to_rows());
    }
    StarWitness {
        translations: n.clone(),
        basis: vec![e1.images(), e2.images()],
        matrices,
        determinants,
    }
}

/// The first normal regular `(C_p)²` complementing `H` on which `H` acts
/// with determinant one, if any.
pub fn check_condition_star(group: &PermGroup, sub: &PermGroup) -> Result<Option<StarWitness>> {
    let p = degree_prime(group, sub)?;
    for n in group.subgroups_elementary_abelian(p, 2) {
        if !n.is_transitive() || !n.is_normal_in(group) || n.intersection(sub).order() != 1 {
            continue;
        }
        let w = witness_for(&n, sub, p);
        if w.holds() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Whether some member contains a subgroup isomorphic to `(C_p)²`.
pub fn contains_cp2(set: &DecompositionSet, p: usize) -> bool {
    set.members()
        .iter()
        .any(|d| d.order() % (p * p) == 0 && !d.subgroups_elementary_abelian(p, 2).is_empty())
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    pub method: Method,
    pub sha: ShaOptions,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            method: Method::Both,
            sha: ShaOptions::default(),
        }
    }
}

fn invariants_of(decision: Decision, p: usize) -> AbelianInvariants {
    match decision {
        Decision::Trivial => AbelianInvariants::trivial(),
        Decision::CyclicP => AbelianInvariants::from_cyclic_orders(&[p as u64]),
    }
}

pub fn decide_hnp(
    group: &PermGroup,
    sub: &PermGroup,
    set: &DecompositionSet,
    opts: &DecideOptions,
) -> Result<KnotReport> {
    let p = degree_prime(group, sub)?;
    let has_cp2 = contains_cp2(set, p);
    let echo = DecompositionEcho {
        members: set.members().len(),
        added_by_closure: set.added_by_closure(),
        member_orders: set.members().iter().map(PermGroup::order).collect(),
        contains_cp2: has_cp2,
    };
    let run_classifier = opts.method != Method::Cohomology;
    let run_cohomology = opts.method != Method::Classifier;
    if run_classifier && p == 2 {
        return Err(KnotError::PreconditionViolated(
            "the classifier covers odd p; use the cohomology method".into(),
        ));
    }
    let star = if run_classifier || p != 2 {
        check_condition_star(group, sub)?
    } else {
        None
    };
    let classified = run_classifier.then(|| {
        if star.is_some() && !has_cp2 {
            Decision::CyclicP
        } else {
            Decision::Trivial
        }
    });
    let computed = if run_cohomology {
        Some(sha2_chevalley(group, sub, set, &opts.sha)?.invariants().clone())
    } else {
        None
    };
    let (sha_invariants, decision) = match (classified, computed) {
        (Some(d), Some(inv)) => {
            let expected = invariants_of(d, p);
            if expected != inv {
                return Err(KnotError::MethodDisagreement {
                    classifier: expected.factors().to_vec(),
                    cohomology: inv.factors().to_vec(),
                });
            }
            (inv, d)
        }
        (Some(d), None) => (invariants_of(d, p), d),
        (None, Some(inv)) => {
            let d = if inv.is_trivial() { Decision::Trivial } else { Decision::CyclicP };
            (inv, d)
        }
        (None, None) => unreachable!("at least one method runs"),
    };
    Ok(KnotReport {
        p,
        group_order: group.order(),
        stabilizer_order: sub.order(),
        star,
        sha_invariants,
        decision,
        method: opts.method,
        decomposition: echo,
    })
}

/// `H¹(k, Pic X̄)`: `Z/p` exactly when the star condition holds.
pub fn decide_h1pic(group: &PermGroup, sub: &PermGroup) -> Result<H1PicReport> {
    let p = degree_prime(group, sub)?;
    if p == 2 {
        return Err(KnotError::PreconditionViolated("the classifier covers odd p".into()));
    }
    let witness = check_condition_star(group, sub)?;
    let invariants = if witness.is_some() {
        AbelianInvariants::from_cyclic_orders(&[p as u64])
    } else {
        AbelianInvariants::trivial()
    };
    Ok(H1PicReport { p, invariants, witness })
}

/// Whether some decomposition group `D` satisfies `P = (P∩D)(P∩H)` for the
/// Sylow p-subgroup `P` of `G`.
pub fn adequacy_criterion(group: &PermGroup, sub: &PermGroup, set: &DecompositionSet) -> Result<bool> {
    let p = degree_prime(group, sub)?;
    let sylow = group.sylow_p(p);
    let ph = sylow.intersection(sub);
    Ok(set.members().iter().any(|d| {
        let pd = sylow.intersection(d);
        let both = pd.intersection(&ph);
        pd.order() * ph.order() == sylow.order() * both.order()
    }))
}
