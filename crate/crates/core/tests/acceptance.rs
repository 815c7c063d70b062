//! Acceptance criteria 1–10, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines always reach stdout.

mod common;

use common::*;
use knot_core::cohom::{
    drakokhrust_sha, h1_finite, h2_cyclic_tate, h2_finite, h2_lattice, multiplier_invariants, s2_character, sha2,
    sha2_chevalley, sha_omega, DecompositionSet, ShaOptions,
};
use knot_core::glattice::{chevalley_lattice, induce, induced_lattice, standard_rep_mod_p, trivial_lattice};
use knot_core::groupzoo::*;
use knot_core::knot::{adequacy_criterion, decide_hnp, Decision, DecideOptions};
use knot_core::permgroup::{Perm, PermGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn sha_factors(g: &PermGroup, h: &PermGroup) -> Result<Vec<u64>, String> {
    sha_omega(g, h).map(|s| s.invariants().factors().to_vec()).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    for (order, g, h) in star_groups() {
        let got = sha_factors(&g, &h)?;
        check(got == [3], format!("|G†| = {order}: got {got:?}"))?;
    }
    Ok("seven star groups give [3]".into())
}

fn criterion_2() -> Outcome {
    let cases: [(&str, PermGroup, &[u64]); 5] = [
        ("P'1", build_Pprime(1, 3).unwrap(), &[3]),
        ("P'2", build_Pprime(2, 3).unwrap(), &[3]),
        ("C9", build_P(1, 3).unwrap(), &[]),
        ("P2", build_P(2, 3).unwrap(), &[]),
        ("P3", build_P(3, 3).unwrap(), &[]),
    ];
    check(cases[2].1.is_cyclic() && cases[2].1.order() == 9, "P1 is not C9")?;
    check(cases[4].1 == build_Pprime(3, 3).unwrap() && cases[4].1.order() == 81, "P3 != P'3")?;
    for (name, g, want) in &cases {
        let got = sha_factors(g, &g.point_stabilizer(0))?;
        check(got == *want, format!("{name}: got {got:?}, want {want:?}"))?;
    }
    Ok("P'1, P'2 give [3]; C9, P2, P3 give []".into())
}

fn criterion_3() -> Outcome {
    let mut cases = vec![("P'1".to_string(), build_Pprime(1, 3).unwrap())];
    let largest = star_groups().pop().unwrap();
    cases.push((format!("order {}", largest.1.order()), largest.1));
    for (name, g) in cases {
        let h = g.point_stabilizer(0);
        let n = translations(&g, 3);
        let with = DecompositionSet::admissible(&g, &[n]).map_err(|e| e.to_string())?;
        let without = DecompositionSet::cyclic(&g);
        let opts = ShaOptions::default();
        let a = sha2_chevalley(&g, &h, &with, &opts).map_err(|e| e.to_string())?;
        let b = sha2_chevalley(&g, &h, &without, &opts).map_err(|e| e.to_string())?;
        check(a.is_trivial(), format!("{name}: (C3)^2 in D gives {:?}", a.invariants()))?;
        check(b.invariants().factors() == [3], format!("{name}: cyclic D gives {:?}", b.invariants()))?;
    }
    Ok("(C3)^2 in D kills Sha, cyclic D leaves [3]".into())
}

fn criterion_4() -> Outcome {
    for (name, g, h) in non_star_groups() {
        let got = sha_factors(&g, &h)?;
        check(got.is_empty(), format!("<{name}>: got {got:?}"))?;
    }
    Ok("groups with a det != 1 generator give []".into())
}

fn criterion_5() -> Outcome {
    let ext = build_heisenberg_cover(3, &sl2_generators(3)).map_err(|e| e.to_string())?;
    let base = ext.base().clone();
    let h = base.point_stabilizer(0);
    let dk = drakokhrust_sha(&ext, &h).map_err(|e| e.to_string())?;
    let (_, g, hs) = star_groups().pop().unwrap();
    check(g == base && hs == h, "cover base differs from the order-216 star group")?;
    let direct = sha_factors(&g, &hs)?;
    check(dk.factors() == [3], format!("Drakokhrust gives {:?}", dk.factors()))?;
    check(direct == dk.factors(), format!("direct {direct:?} != Drakokhrust {:?}", dk.factors()))?;
    Ok("Drakokhrust [3] equals the direct computation".into())
}

fn criterion_6() -> Outcome {
    let p = 3;
    let mut lines = Vec::new();
    for n in 1..=3 {
        let g = build_P(n, p).unwrap();
        let e = build_E(n, p).unwrap();
        let h = build_H(n, p).unwrap();
        let want = e.order() / h.intersection(&build_E(n - 1, p).unwrap()).order();
        let got = s2_character(&g, &h, &e, &DecompositionSet::cyclic(&g)).map_err(|e| e.to_string())?;
        check(got.order() == want as u64, format!("P{n}: |S2| = {}, want {want}", got.order()))?;
        lines.push(format!("P{n}:{want}"));
    }
    let g = build_P(p, p).unwrap();
    let ep = build_E(p, p).unwrap();
    for n in 1..=3 {
        let ht = build_pi(n, p).unwrap().preimage(&build_H(n, p).unwrap());
        let want = if n >= 3 {
            ep.order() / ht.intersection(&build_E(p - 1, p).unwrap()).order()
        } else {
            ep.order() / build_E(p - n - 1, p).unwrap().order()
        };
        let got = s2_character(&g, &ht, &ep, &DecompositionSet::cyclic(&g)).map_err(|e| e.to_string())?;
        check(got.order() == want as u64, format!("P_p, n = {n}: |S2| = {}, want {want}", got.order()))?;
        lines.push(format!("Pp/H~{n}:{want}"));
    }
    Ok(format!("S2 orders match ({})", lines.join(" ")))
}

fn tate_vs_reduction() -> Result<usize, String> {
    let mut count = 0;
    for (name, g) in p3_zoo() {
        let h = g.point_stabilizer(0);
        let lats = [
            ("Z", trivial_lattice(&g)),
            ("Ind", induced_lattice(&g, &h).unwrap()),
            ("J", chevalley_lattice(&g, &h).unwrap().lattice),
        ];
        for c in g.cyclic_subgroups() {
            for (m, lat) in &lats {
                let tate = h2_cyclic_tate(&c, lat).map_err(|e| e.to_string())?;
                let red = h2_lattice(&lat.restrict(&c).unwrap());
                check(
                    tate == *red.invariants(),
                    format!("{name} / C{} / {m}: Tate {:?} vs {:?}", c.order(), tate, red.invariants()),
                )?;
                count += 1;
            }
        }
    }
    Ok(count)
}

fn annihilation_and_prime_index() -> Result<usize, String> {
    let mut count = 0;
    let mut zoo = p3_zoo();
    zoo.push(("V4".into(), klein_four()));
    let (c5sq, _) = build_semidirect_std(5, &[]).unwrap();
    zoo.push(("(C5)^2".into(), c5sq));
    for (name, g) in zoo {
        let mut pairs: Vec<PermGroup> = vec![g.point_stabilizer(0)];
        pairs.extend(two_generated_subgroups(&g).into_iter().filter(|h| is_prime(g.order() / h.order())));
        for h in pairs {
            let index = g.order() / h.order();
            if index == 1 {
                continue;
            }
            let inv = sha_omega(&g, &h).map_err(|e| e.to_string())?;
            check(
                index as u64 % inv.invariants().exponent() == 0,
                format!("{name}, index {index}: {:?} not killed by the index", inv.invariants()),
            )?;
            if is_prime(index) {
                check(inv.is_trivial(), format!("{name}, prime index {index}: {:?}", inv.invariants()))?;
            }
            count += 1;
        }
    }
    Ok(count)
}

fn induced_order_identity(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut count = 0;
    for (name, g) in p3_zoo() {
        for _ in 0..3 {
            let h = random_subgroup(&g, rng, 2);
            let ab = h.order() / h.derived_subgroup().order();
            let got = h2_lattice(&induced_lattice(&g, &h).unwrap()).order();
            check(got == ab as u64, format!("{name}, |H| = {}: |H2(G, Ind)| = {got}, |H^ab| = {ab}", h.order()))?;
            count += 1;
        }
    }
    Ok(count)
}

fn shapiro() -> Result<usize, String> {
    let p = 3;
    let triples = [
        (build_P(2, p).unwrap(), build_E(2, p).unwrap(), build_H(2, p).unwrap()),
        (build_Pprime(2, p).unwrap(), build_E(2, p).unwrap(), PermGroup::trivial(9)),
        (build_Pprime(2, p).unwrap(), build_E(2, p).unwrap(), build_H(2, p).unwrap()),
        (star_groups()[3].1.clone(), translations(&star_groups()[3].1, 3), PermGroup::trivial(9)),
    ];
    for (g, h, k) in &triples {
        let m = chevalley_lattice(h, k).unwrap().lattice;
        let ind = induce(g, h, &m).unwrap();
        let big = sha2(&ind, &DecompositionSet::cyclic(g)).map_err(|e| e.to_string())?;
        let small = sha2(&m, &DecompositionSet::cyclic(h)).map_err(|e| e.to_string())?;
        check(
            big.invariants() == small.invariants(),
            format!("|G| = {}, |H| = {}: {:?} vs {:?}", g.order(), h.order(), big.invariants(), small.invariants()),
        )?;
    }
    Ok(triples.len())
}

fn inflation() -> Result<usize, String> {
    let p = 3;
    for n in 1..=3 {
        let pi = build_pi(n, p).unwrap();
        let q = build_Pprime(n, p).unwrap();
        let h = build_H(n, p).unwrap();
        let pulled = chevalley_lattice(&q, &h).unwrap().lattice.pullback(&pi).unwrap();
        let up = sha2(&pulled, &DecompositionSet::cyclic(pi.source())).map_err(|e| e.to_string())?;
        let down = sha_omega(&q, &h).map_err(|e| e.to_string())?;
        check(
            up.invariants() == down.invariants(),
            format!("pi_{n}: {:?} vs {:?}", up.invariants(), down.invariants()),
        )?;
    }
    Ok(3)
}

fn sylow_divisibility() -> Result<usize, String> {
    let mut count = 0;
    let mut groups: Vec<(String, PermGroup, PermGroup)> =
        star_groups().into_iter().map(|(o, g, h)| (format!("G{o}"), g, h)).collect();
    groups.extend(non_star_groups().into_iter().map(|(n, g, h)| (n.to_string(), g, h)));
    for (name, g, h) in groups {
        let whole = sha_omega(&g, &h).map_err(|e| e.to_string())?.order();
        let sylow = g.sylow_p(3);
        let j = chevalley_lattice(&g, &h).unwrap().lattice.restrict(&sylow).unwrap();
        let part = sha2(&j, &DecompositionSet::cyclic(&sylow)).map_err(|e| e.to_string())?.order();
        check(part % whole == 0, format!("{name}: |Sha(G)| = {whole} does not divide |Sha(P)| = {part}"))?;
        count += 1;
    }
    Ok(count)
}

fn generator_identities(p: usize) -> Result<usize, String> {
    let id = Perm::identity(p * p);
    let z = |i: usize| gen_z(i % p, p).unwrap();
    let d = |n: usize| if n == 0 { id.clone() } else { gen_delta(n, p).unwrap() };
    let r1 = gen_rho1(p).unwrap();
    let r2 = gen_rho2(p).unwrap();
    let mut count = 0;
    let mut ok = |cond: bool, what: String| {
        count += 1;
        check(cond, what)
    };
    ok(z(p - 1).compose(&r2).pow(p as i64) == r1, format!("p = {p}: tau^p != rho1"))?;
    ok(r1 == d(1) && d(p) == z(1), format!("p = {p}: delta_1, delta_p"))?;
    for n in 1..=p {
        for m in 1..=p {
            ok(Perm::commutator(&z(n), &z(m)).is_identity(), format!("[z{n}, z{m}]"))?;
            ok(Perm::commutator(&z(n), &d(m)).is_identity(), format!("[z{n}, delta{m}]"))?;
            ok(Perm::commutator(&d(n), &d(m)).is_identity(), format!("[delta{n}, delta{m}]"))?;
        }
        ok(Perm::commutator(&d(n), &r2) == d(n - 1), format!("[delta{n}, rho2]"))?;
        for i in 0..p {
            ok(Perm::commutator(&d(n), &z(i).compose(&r2)) == d(n - 1), format!("[delta{n}, z{i} rho2]"))?;
        }
        let prod = (0..p).fold(id.clone(), |acc, i| acc.compose(&d(n).conjugate_by(&r2.pow(i as i64))));
        ok(prod == if n < p { id.clone() } else { d(1) }, format!("norm of delta{n}"))?;
    }
    ok(r2.conjugate_by(&d(2)) == r1.inverse().compose(&r2), "delta2 rho2 delta2^-1".into())?;
    for b in 1..p as i64 {
        let bb = gen_beta_bar(b, p).unwrap();
        let bt = gen_beta_tilde(b, p).unwrap();
        ok(r1.conjugate_by(&bb) == r1 && r2.conjugate_by(&bb) == r2.pow(b), format!("beta bar, beta = {b}"))?;
        ok(r1.conjugate_by(&bt) == r1.pow(b) && r2.conjugate_by(&bt) == r2, format!("beta tilde, beta = {b}"))?;
    }
    Ok(count)
}

fn bell() -> Result<usize, String> {
    let t = Instant::now();
    let (_, dagger) = build_semidirect_std(3, &sl2_generators(3)).unwrap();
    check(dagger.order() == 24, "SL2(F3) has order 24")?;
    let v = standard_rep_mod_p(&dagger, 3).map_err(|e| e.to_string())?;
    for (name, m) in [("V", v.clone()), ("V^dual", v.dual())] {
        check(h1_finite(&m).is_trivial(), format!("H1(SL2(F3), {name}) != 0"))?;
        check(h2_finite(&m).is_trivial(), format!("H2(SL2(F3), {name}) != 0"))?;
    }
    check(t.elapsed().as_secs() < 10, format!("took {:?}", t.elapsed()))?;
    Ok(4)
}

fn invariant_multiplier() -> Result<usize, String> {
    let mut count = 0;
    for (o, g, h) in star_groups() {
        let n = translations(&g, 3);
        let inv = multiplier_invariants(&n, h.generators()).map_err(|e| e.to_string())?;
        check(!inv.is_trivial(), format!("G{o}: SL2 invariants vanish"))?;
        count += 1;
    }
    for (name, g, h) in non_star_groups() {
        let n = translations(&g, 3);
        let inv = multiplier_invariants(&n, h.generators()).map_err(|e| e.to_string())?;
        check(inv.is_trivial(), format!("<{name}>: invariants {inv:?}"))?;
        count += 1;
    }
    Ok(count)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let parts = [
        ("tate", tate_vs_reduction()?),
        ("annihilation+prime-index", annihilation_and_prime_index()?),
        ("H2(Ind)=|H^ab|", induced_order_identity(&mut rng)?),
        ("shapiro", shapiro()?),
        ("inflation", inflation()?),
        ("sylow", sylow_divisibility()?),
        ("identities p=3", generator_identities(3)?),
        ("identities p=5", generator_identities(5)?),
        ("bell", bell()?),
        ("multiplier invariants", invariant_multiplier()?),
    ];
    let summary: Vec<String> = parts.iter().map(|(n, c)| format!("{n}:{c}")).collect();
    Ok(summary.join(" "))
}

fn criterion_8() -> Outcome {
    let v4 = klein_four();
    let h = PermGroup::trivial(4);
    let got = sha_factors(&v4, &h)?;
    check(got == [2], format!("Sha_omega(V4) = {got:?}"))?;
    let set = DecompositionSet::admissible(&v4, &[v4.clone()]).map_err(|e| e.to_string())?;
    let with = sha2_chevalley(&v4, &h, &set, &ShaOptions::default()).map_err(|e| e.to_string())?;
    check(with.is_trivial(), format!("V4 in D gives {:?}", with.invariants()))?;
    Ok("V4 gives [2], trivial once V4 is in D".into())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let groups = star_groups();
    let opts = DecideOptions::default();
    let mut accepted = 0;
    let mut tries = 0;
    while accepted < 105 {
        tries += 1;
        check(tries < 20_000, format!("only {accepted} adequate sets after {tries} draws"))?;
        let (o, g, h) = &groups[tries % groups.len()];
        let k = 1 + tries % 2;
        let given: Vec<PermGroup> = (0..k).map(|_| random_subgroup(g, &mut rng, 3)).collect();
        let set = DecompositionSet::admissible(g, &given).map_err(|e| e.to_string())?;
        if !adequacy_criterion(g, h, &set).map_err(|e| e.to_string())? {
            continue;
        }
        accepted += 1;
        let report = decide_hnp(g, h, &set, &opts).map_err(|e| e.to_string())?;
        check(
            report.decision == Decision::Trivial,
            format!("G{o}: adequate D with orders {:?} gives {:?}", report.decomposition.member_orders, report.decision),
        )?;
    }
    Ok(format!("{accepted} adequate decomposition sets all trivial ({tries} draws)"))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let ext = build_heisenberg_cover(5, &sl2_generators(5)).map_err(|e| e.to_string())?;
    check(ext.total.order() == 15000, format!("|cover| = {}", ext.total.order()))?;
    let h = ext.base().point_stabilizer(0);
    let got = drakokhrust_sha(&ext, &h).map_err(|e| e.to_string())?;
    check(got.factors() == [5], format!("got {:?}", got.factors()))?;
    Ok(format!("p = 5 Drakokhrust gives [5] in {:.2?}", t.elapsed()))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (n, f) in criteria {
        if filter.is_some_and(|k| k != n) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let tag = if n == 10 { " (stretch)" } else { "" };
        match outcome {
            Ok(msg) => println!("criterion {n}{tag}: PASS  {msg}  [{:.2?}]", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}{tag}: FAIL  {msg}  [{:.2?}]", t.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
