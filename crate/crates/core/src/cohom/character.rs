use super::DecompositionSet;
use crate::error::{KnotError, Result};
use crate::groupzoo::{CentralExtension, ExtensionFlag};
use crate::permgroup::{close, Perm, PermGroup};
use crate::zmodlin::{kernel, preimage_within, quotient_invariants, AbelianInvariants, HowellBasis, ModMatrix};
use std::collections::HashSet;

/// A subgroup of `E^∨ = Hom(E, Z/e)`, characters stored by their values on
/// `E`'s element list, `e = exp(E)`.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    pub exponent: u64,
    pub elements: Vec<Perm>,
    pub span: HowellBasis,
    pub invariants: AbelianInvariants,
}

impl CharacterGroup {
    pub fn order(&self) -> u64 {
        self.invariants.order()
    }

    /// Whether the character with these values lies in the subgroup.
    pub fn contains(&self, values: &[u64]) -> bool {
        self.span.contains(values)
    }
}

/// Characters of the abelian group `a` (mod `e`) killing `killed`, in
/// coordinates indexed by `a.elements()`.
fn character_space(a: &PermGroup, killed: &PermGroup, e: u64) -> HowellBasis {
    let k = a.order();
    let mut cols: Vec<Vec<u64>> = Vec::new();
    let mut unit = |entries: &[(usize, u64)]| {
        let mut c = vec![0u64; k];
        for &(i, v) in entries {
            c[i] = (c[i] + v) % e;
        }
        cols.push(c);
    };
    unit(&[(0, 1)]);
    for s in a.generators() {
        let si = a.index_of(s).expect("member");
        for x in 0..k {
            let xs = a.mul_index(x, si);
            unit(&[(xs, 1), (x, e - 1), (si, e - 1)]);
        }
    }
    for z in killed.elements() {
        unit(&[(a.index_of(z).expect("member"), 1)]);
    }
    kernel(&columns_to_matrix(e, k, &cols))
}

fn columns_to_matrix(e: u64, rows: usize, cols: &[Vec<u64>]) -> ModMatrix {
    let mut m = ModMatrix::zeros(e, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

/// `S²_{H,𝒟}(G, Ind_E^G Z)` realized inside `E^∨`: characters `f` such that
/// for every `D ∈ 𝒟_(H)` some `φ ∈ ((D∩E)/(D^der∩E))^∨` satisfies
/// `f(g⁻¹xg) = φ(x)` for all double coset representatives `g ∈ D\G/E` and
/// `x ∈ D ∩ gHg⁻¹`.
pub fn s2_character(
    group: &PermGroup,
    sub: &PermGroup,
    e_sub: &PermGroup,
    set: &DecompositionSet,
) -> Result<CharacterGroup> {
    if !e_sub.is_subgroup_of(group) || !e_sub.is_abelian() || !e_sub.is_normal_in(group) {
        return Err(KnotError::PreconditionViolated("E must be an abelian normal subgroup".into()));
    }
    if !sub.is_subgroup_of(e_sub) {
        return Err(KnotError::PreconditionViolated("H must lie in E".into()));
    }
    if set.group() != group {
        return Err(KnotError::BadParameter("decomposition set lives in another group".into()));
    }
    let e = e_sub.exponent().max(1) as u64;
    let ke = e_sub.order();
    let trivial = PermGroup::trivial(group.degree());
    let mut current = character_space(e_sub, &trivial, e);
    for d in set.relative_to(sub) {
        let de = d.intersection(e_sub);
        let killed = d.derived_subgroup().intersection(e_sub);
        let phi = character_space(&de, &killed, e);
        let kd = de.order();
        let width = ke + kd;
        let mut rows: Vec<Vec<u64>> = current
            .rows()
            .iter()
            .map(|r| {
                let mut v = r.clone();
                v.resize(width, 0);
                v
            })
            .collect();
        rows.extend(phi.rows().iter().map(|r| {
            let mut v = vec![0u64; ke];
            v.extend_from_slice(r);
            v
        }));
        let domain = HowellBasis::from_rows(e, width, rows);
        let mut cols: Vec<Vec<u64>> = Vec::new();
        for g in group.double_coset_reps(&d, e_sub)? {
            let ginv = g.inverse();
            let conj = sub.conjugate(&g);
            for x in d.intersection(&conj).elements() {
                let y = ginv.compose(x).compose(&g);
                let mut c = vec![0u64; width];
                c[e_sub.index_of(&y).expect("conjugate of H lies in E")] = 1;
                let xi = ke + de.index_of(x).expect("in D ∩ E");
                c[xi] = (c[xi] + e - 1) % e;
                cols.push(c);
            }
        }
        if cols.is_empty() {
            continue;
        }
        let map = columns_to_matrix(e, width, &cols);
        let solutions = preimage_within(&domain, &map, &HowellBasis::zero(e, cols.len()));
        let mut proj = ModMatrix::zeros(e, width, ke);
        for i in 0..ke {
            proj.set(i, i, 1);
        }
        current = solutions.image(&proj);
    }
    let invariants = quotient_invariants(&current, &HowellBasis::zero(e, ke))?;
    Ok(CharacterGroup {
        exponent: e,
        elements: e_sub.elements().to_vec(),
        span: current,
        invariants,
    })
}

/// Invariants of `big / normal` for an abelian quotient.
pub(crate) fn abelian_quotient(big: &PermGroup, normal: &PermGroup) -> Result<AbelianInvariants> {
    if !normal.is_subgroup_of(big) || !normal.is_normal_in(big) {
        return Err(KnotError::BadParameter("not a normal subgroup".into()));
    }
    for a in big.generators() {
        for b in big.generators() {
            if !normal.contains(&Perm::commutator(a, b)) {
                return Err(KnotError::BadParameter("quotient is not abelian".into()));
            }
        }
    }
    let index = big.order() / normal.order();
    if index == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    let cosets = big.left_cosets(normal)?;
    // order of each coset in the quotient
    let orders: Vec<usize> = cosets
        .reps
        .iter()
        .map(|g| {
            let mut k = 1;
            let mut x = g.clone();
            while !normal.contains(&x) {
                x = x.compose(g);
                k += 1;
            }
            k
        })
        .collect();
    let mut factors = Vec::new();
    let mut rest = index;
    for p in 2..=index {
        if rest % p != 0 {
            continue;
        }
        while rest % p == 0 {
            rest /= p;
        }
        // r_i = #{cyclic factors of order ≥ p^i} from |Q[p^i]| / |Q[p^(i-1)]|
        let count = |pi: usize| orders.iter().filter(|&&o| pi % o == 0).count();
        let mut prev = 1usize;
        let mut pi = p;
        let mut ranks = Vec::new();
        loop {
            let c = count(pi);
            if c == prev {
                break;
            }
            let mut ratio = c / prev;
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            ranks.push(r);
            prev = c;
            pi *= p;
        }
        for i in 0..ranks.len() {
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            for _ in 0..ranks[i] - next {
                factors.push((p as u64).pow(i as u32 + 1));
            }
        }
    }
    Ok(AbelianInvariants::from_cyclic_orders(&factors))
}

/// `((H̃ ∩ G̃^der) / Φ)^∨` where `H̃` is the preimage of `H` and
/// `Φ = ⟨[h, g] : g ∈ G̃, h ∈ H̃ ∩ g⁻¹H̃g⟩`.
pub fn drakokhrust_sha(ext: &CentralExtension, sub: &PermGroup) -> Result<AbelianInvariants> {
    if ext.flag == ExtensionFlag::Unverified {
        return Err(KnotError::UnverifiedExtension);
    }
    if !sub.is_subgroup_of(ext.base()) {
        return Err(KnotError::NotSubgroup("drakokhrust_sha".into()));
    }
    let total = &ext.total;
    let lifted = ext.projection.preimage(sub);
    let inter = lifted.intersection(&total.derived_subgroup());
    // [h, g] = h⁻¹·(g h g⁻¹), so Φ is generated by h⁻¹h' for h, h' ∈ H̃
    // conjugate in G̃.
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut gens: Vec<Perm> = Vec::new();
    let mut phi = PermGroup::trivial(total.degree());
    for h in lifted.elements() {
        if seen.contains(h) {
            continue;
        }
        let mut class = vec![h.clone()];
        let mut in_class: HashSet<Perm> = HashSet::from([h.clone()]);
        let mut k = 0;
        while k < class.len() {
            let x = class[k].clone();
            k += 1;
            for s in total.generators() {
                let y = x.conjugate_by(s);
                if in_class.insert(y.clone()) {
                    class.push(y);
                }
            }
        }
        let hinv = h.inverse();
        for y in class.iter().filter(|y| lifted.contains(y)) {
            seen.insert(y.clone());
            let c = hinv.compose(y);
            if !phi.contains(&c) {
                gens.push(c);
                phi = close(&gens, total.degree())?;
            }
        }
    }
    abelian_quotient(&inter, &phi)
}
