use crate::error::{KnotError, Result};
use crate::permgroup::{conjugacy_class, conjugacy_class_reps, PermGroup};

/// A set of subgroups of `G`, closed under conjugation.
#[derive(Clone, Debug)]
pub struct DecompositionSet {
    group: PermGroup,
    members: Vec<PermGroup>,
    added: usize,
}

fn sort_dedup(mut v: Vec<PermGroup>) -> Vec<PermGroup> {
    v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    v.dedup();
    v
}

fn conj_closure(group: &PermGroup, subs: &[PermGroup]) -> Vec<PermGroup> {
    sort_dedup(subs.iter().flat_map(|d| conjugacy_class(group, d)).collect())
}

impl DecompositionSet {
    /// All cyclic subgroups of `G`.
    pub fn cyclic(group: &PermGroup) -> DecompositionSet {
        DecompositionSet {
            group: group.clone(),
            members: sort_dedup(group.cyclic_subgroups()),
            added: 0,
        }
    }

    /// Closes `given` under conjugation and adjoins every cyclic subgroup;
    /// `added_by_closure` reports how many subgroups that contributed.
    pub fn admissible(group: &PermGroup, given: &[PermGroup]) -> Result<DecompositionSet> {
        for d in given {
            if !d.is_subgroup_of(group) {
                return Err(KnotError::NotSubgroup("decomposition group".into()));
            }
        }
        let supplied = sort_dedup(given.to_vec()).len();
        let mut all = conj_closure(group, given);
        all.extend(group.cyclic_subgroups());
        let members = sort_dedup(all);
        Ok(DecompositionSet {
            group: group.clone(),
            added: members.len() - supplied,
            members,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn members(&self) -> &[PermGroup] {
        &self.members
    }

    pub fn added_by_closure(&self) -> usize {
        self.added
    }

    pub fn contains(&self, d: &PermGroup) -> bool {
        self.members.iter().any(|m| m == d)
    }

    /// `𝒞_H ∪ (𝒟 ∖ 𝒞_G)`.
    pub fn relative_to(&self, sub: &PermGroup) -> Vec<PermGroup> {
        let mut out: Vec<PermGroup> = sub.cyclic_subgroups();
        out.extend(self.members.iter().filter(|d| !d.is_cyclic()).cloned());
        sort_dedup(out)
    }

    pub fn has_noncyclic_member(&self) -> bool {
        self.members.iter().any(|d| !d.is_cyclic())
    }
}

/// A kernel of restriction to a family depends only on the inclusion-maximal
/// members of its conjugation closure, one per conjugacy class.
pub(crate) fn effective_members(group: &PermGroup, subs: &[PermGroup]) -> Vec<PermGroup> {
    let closed = conj_closure(group, subs);
    let maximal: Vec<PermGroup> = closed
        .iter()
        .filter(|d| {
            !closed
                .iter()
                .any(|m| m.order() > d.order() && d.generators().iter().all(|g| m.contains(g)))
        })
        .cloned()
        .collect();
    conjugacy_class_reps(group, &maximal)
}
