mod common;

use common::*;
use knot_core::cohom::h2_lattice;
use knot_core::glattice::{chevalley_lattice, induced_lattice, mackey_pieces, trivial_lattice};
use knot_core::groupzoo::build_Pprime;
use knot_core::permgroup::{close, Perm, PermGroup};
use knot_core::zmodlin::{kernel, quotient_invariants, AbelianInvariants, HowellBasis, ModMatrix};
use proptest::prelude::*;
use std::collections::HashSet;

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=6)
        .prop_flat_map(|d| prop::collection::vec(perm(d), 1..=2).prop_map(move |g| close(&g, d).unwrap()))
        .prop_filter("order at most 24", |g| g.order() <= 24)
}

/// Every vector in the row span, by enumerating combinations.
fn brute_span(rows: &[Vec<u64>], n: u64, cols: usize) -> HashSet<Vec<u64>> {
    let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; cols]]);
    for r in rows {
        let mut next = HashSet::new();
        for v in &span {
            for k in 0..n {
                next.insert(v.iter().zip(r).map(|(a, b)| (a + k * b) % n).collect());
            }
        }
        span = next;
    }
    span
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_laws(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(-1), a.inverse());
        // b acts first
        prop_assert_eq!(a.compose(&b).apply(3), a.apply(b.apply(3)));
    }

    #[test]
    fn lagrange_and_normality(g in small_group()) {
        for c in g.cyclic_subgroups() {
            prop_assert_eq!(g.order() % c.order(), 0);
        }
        let der = g.derived_subgroup();
        prop_assert!(der.is_normal_in(&g));
        prop_assert!(g.center().is_subgroup_of(&g));
        for p in [2, 3, 5] {
            let s = g.sylow_p(p);
            let mut q = 1;
            while g.order() % (q * p) == 0 { q *= p; }
            prop_assert_eq!(s.order(), q);
        }
    }

    #[test]
    fn howell_span_matches_enumeration(
        n in prop::sample::select(vec![2u64, 4, 6, 8, 9, 12]),
        raw in prop::collection::vec(prop::collection::vec(0u64..36, 3), 1..=3),
    ) {
        let rows: Vec<Vec<u64>> = raw.iter().map(|r| r.iter().map(|x| x % n).collect()).collect();
        let basis = HowellBasis::from_rows(n, 3, rows.clone());
        let span = brute_span(&rows, n, 3);
        prop_assert_eq!(basis.span_size(), Some(span.len() as u128));
        for v in &span {
            prop_assert!(basis.contains(v));
        }
    }

    #[test]
    fn kernel_rows_are_killed(
        n in prop::sample::select(vec![4u64, 6, 9, 27]),
        raw in prop::collection::vec(prop::collection::vec(0u64..100, 3), 2..=4),
    ) {
        let rows: Vec<Vec<i64>> = raw.iter().map(|r| r.iter().map(|&x| (x % n) as i64).collect()).collect();
        let m = ModMatrix::from_rows(n, 3, &rows);
        let k = kernel(&m);
        for v in k.rows() {
            prop_assert!(m.left_apply(v).iter().all(|&x| x == 0));
        }
        // kernel size by enumeration over all vectors
        let count = (0..n.pow(rows.len() as u32))
            .filter(|code| {
                let v: Vec<u64> = (0..rows.len()).map(|i| code / n.pow(i as u32) % n).collect();
                m.left_apply(&v).iter().all(|&x| x == 0)
            })
            .count();
        prop_assert_eq!(k.span_size(), Some(count as u128));
    }

    #[test]
    fn invariants_normal_form(orders in prop::collection::vec(1u64..40, 0..5)) {
        let inv = AbelianInvariants::from_cyclic_orders(&orders);
        prop_assert_eq!(inv.order(), orders.iter().product::<u64>());
        let f = inv.factors();
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert!(f.iter().all(|&x| x > 1));
    }

    #[test]
    fn quotient_of_span_by_itself_is_trivial(
        raw in prop::collection::vec(prop::collection::vec(0u64..8, 2), 1..=3),
    ) {
        let b = HowellBasis::from_rows(8, 2, raw);
        prop_assert!(quotient_invariants(&b, &b).unwrap().is_trivial());
        let full = HowellBasis::full(8, 2);
        let inv = quotient_invariants(&full, &b).unwrap();
        prop_assert_eq!(inv.order() as u128 * b.span_size().unwrap(), 64);
    }

    #[test]
    fn chevalley_lattice_checks(g in small_group(), k in 0usize..6) {
        let subs = g.cyclic_subgroups();
        let h = &subs[k % subs.len()];
        let c = chevalley_lattice(&g, h).unwrap();
        let index = g.order() / h.order();
        prop_assert_eq!(c.lattice.rank(), index - 1);
        prop_assert!(c.lattice.verify_all_pairs());
        for i in 0..g.order() {
            prop_assert_eq!(c.lattice.matrix_at(i).det().abs(), 1);
        }
        // Z → Ind → J is exact: the all-ones vector spans the kernel.
        let image = c.projection.apply(&c.embedding);
        prop_assert!(image.iter().all(|&x| x == 0));
        prop_assert_eq!(c.projection.nrows(), index - 1);
    }

    #[test]
    fn h2_of_induced_has_order_of_abelianization(g in small_group(), k in 0usize..6) {
        let subs = g.cyclic_subgroups();
        let h = &subs[k % subs.len()];
        let got = h2_lattice(&induced_lattice(&g, h).unwrap()).order();
        prop_assert_eq!(got, h.order() as u64);
    }

    #[test]
    fn mackey_rank_identity(g in small_group(), a in 0usize..8, b in 0usize..8) {
        let subs = g.cyclic_subgroups();
        let h = &subs[a % subs.len()];
        let d = &subs[b % subs.len()];
        let pieces = mackey_pieces(&g, h, d).unwrap();
        let total: usize = pieces.iter().map(|m| d.order() / m.intersection.order()).sum();
        prop_assert_eq!(total, g.order() / h.order());
        // orbits of D on G/H have the same sizes
        let cosets = g.left_cosets(h).unwrap();
        let mut seen = vec![false; cosets.len()];
        let mut sizes = Vec::new();
        for start in 0..cosets.len() {
            if seen[start] { continue; }
            let mut orbit = HashSet::new();
            for x in d.elements() {
                orbit.insert(cosets.act(&g, x, start));
            }
            for &o in &orbit { seen[o] = true; }
            sizes.push(orbit.len());
        }
        let mut want: Vec<usize> = pieces.iter().map(|m| d.order() / m.intersection.order()).collect();
        sizes.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(sizes, want);
    }

    #[test]
    fn double_dual_is_identity(modulus in prop::sample::select(vec![3u64, 9, 27])) {
        let g = build_Pprime(2, 3).unwrap();
        let j = chevalley_lattice(&g, &g.point_stabilizer(0)).unwrap().lattice.reduce_mod(modulus);
        let dd = j.dual().dual();
        prop_assert_eq!(dd.matrices(), j.matrices());
        prop_assert!(j.dual().verify_all_pairs());
        let t = trivial_lattice(&g).reduce_mod(modulus);
        let td = t.dual();
        prop_assert_eq!(td.matrices(), t.matrices());
    }
}

#[test]
fn cyclic_group_orders() {
    for n in 1..10 {
        assert_eq!(cyclic(n).order(), n);
    }
}
