#![allow(dead_code)]

use knot_core::groupzoo::{build_P, build_Pprime, build_semidirect_std, MatGL2};
use knot_core::permgroup::{close, Perm, PermGroup};
use knot_core::verify::{gl2_f3_non_sl2, sl2_f3_subgroups};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn cyclic(n: usize) -> PermGroup {
    close(&[Perm::from_fn(n, |x| (x + 1) % n)], n).unwrap()
}

/// Klein four-group acting regularly on four points.
pub fn klein_four() -> PermGroup {
    let a = Perm::new(vec![1, 0, 3, 2]).unwrap();
    let b = Perm::new(vec![2, 3, 0, 1]).unwrap();
    close(&[a, b], 4).unwrap()
}

pub fn m3(a: i64, b: i64, c: i64, d: i64) -> MatGL2 {
    MatGL2::new(a, b, c, d, 3).unwrap()
}

/// `((C₃)² ⋊ G†, stabilizer)` for each listed G† ≤ SL₂(F₃).
pub fn star_groups() -> Vec<(usize, PermGroup, PermGroup)> {
    sl2_f3_subgroups()
        .into_iter()
        .map(|(o, mats)| {
            let (g, h) = build_semidirect_std(3, &mats).unwrap();
            (o, g, h)
        })
        .collect()
}

pub fn non_star_groups() -> Vec<(&'static str, PermGroup, PermGroup)> {
    gl2_f3_non_sl2()
        .into_iter()
        .map(|(name, mats)| {
            let (g, h) = build_semidirect_std(3, &mats).unwrap();
            (name, g, h)
        })
        .collect()
}

/// The normal transitive `(C_p)²` inside a semidirect product.
pub fn translations(g: &PermGroup, p: usize) -> PermGroup {
    g.subgroups_elementary_abelian(p, 2)
        .into_iter()
        .find(|n| n.is_transitive() && n.is_normal_in(g))
        .expect("translation subgroup")
}

/// Transitive groups of degree 9 used in sweeps (all of order ≤ 81 except
/// the semidirect products with |G†| = 8).
pub fn p3_zoo() -> Vec<(String, PermGroup)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("P{n}"), build_P(n, 3).unwrap()));
        out.push((format!("P'{n}"), build_Pprime(n, 3).unwrap()));
    }
    for (o, g, _) in star_groups().into_iter().filter(|(o, _, _)| *o <= 8) {
        out.push((format!("(C3)^2 x| G{o}"), g));
    }
    for (name, g, _) in non_star_groups().into_iter().filter(|(_, g, _)| g.order() <= 72) {
        out.push((format!("(C3)^2 x| <{name}>"), g));
    }
    out
}

pub fn random_element(g: &PermGroup, rng: &mut ChaCha8Rng) -> Perm {
    g.element(rng.gen_range(0..g.order())).clone()
}

/// Subgroup generated by one to `max_gens` random elements.
pub fn random_subgroup(g: &PermGroup, rng: &mut ChaCha8Rng, max_gens: usize) -> PermGroup {
    let k = rng.gen_range(1..=max_gens);
    let gens: Vec<Perm> = (0..k).map(|_| random_element(g, rng)).collect();
    g.subgroup(&gens).unwrap()
}

/// Subgroups generated by pairs of cyclic subgroups, deduplicated.
pub fn two_generated_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    let cyc = g.cyclic_subgroups();
    let gens: Vec<Perm> = cyc.iter().filter_map(|c| c.cyclic_generator()).collect();
    let mut out: Vec<PermGroup> = cyc.clone();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            out.push(g.subgroup(&[gens[i].clone(), gens[j].clone()]).unwrap());
        }
    }
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out.dedup();
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
