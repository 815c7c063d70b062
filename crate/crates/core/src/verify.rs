//! Named verification suites: expected versus computed invariants.

use crate::cohom::{drakokhrust_sha, h2_cyclic_tate, h2_lattice, sha_omega};
use crate::error::Result;
use crate::glattice::{chevalley_lattice, induced_lattice, trivial_lattice, GLattice};
use crate::groupzoo::{
    build_P, build_Pprime, build_heisenberg_cover, build_semidirect_std, sl2_generators,
    CentralExtension, MatGL2,
};
use crate::permgroup::{close, conjugacy_class_reps, GroupHom, Perm, PermGroup};
use crate::zmodlin::AbelianInvariants;
use serde::Serialize;

pub const SUITES: [&str; 5] = ["p3-classification", "p3-pgroups", "oracles", "drakokhrust", "p5-stretch"];

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub expected: Vec<u64>,
    pub computed: Option<Vec<u64>>,
    pub error: Option<String>,
    pub pass: bool,
}

impl CaseResult {
    fn new(name: impl Into<String>, expected: &[u64], computed: Result<AbelianInvariants>) -> CaseResult {
        let (computed, error) = match computed {
            Ok(inv) => (Some(inv.factors().to_vec()), None),
            Err(e) => (None, Some(e.to_string())),
        };
        CaseResult {
            name: name.into(),
            pass: computed.as_deref() == Some(expected),
            expected: expected.to_vec(),
            computed,
            error,
        }
    }
}

fn m3(a: i64, b: i64, c: i64, d: i64) -> MatGL2 {
    MatGL2::new(a, b, c, d, 3).expect("invertible mod 3")
}

/// Generators of one subgroup of SL₂(F₃) of each order 1, 2, 3, 4, 6, 8, 24.
pub fn sl2_f3_subgroups() -> Vec<(usize, Vec<MatGL2>)> {
    vec![
        (1, vec![]),
        (2, vec![m3(-1, 0, 0, -1)]),
        (3, vec![m3(1, 1, 0, 1)]),
        (4, vec![m3(0, -1, 1, 0)]),
        (6, vec![m3(-1, 0, 0, -1), m3(1, 1, 0, 1)]),
        (8, vec![m3(0, -1, 1, 0), m3(1, 1, 1, -1)]),
        (24, sl2_generators(3)),
    ]
}

/// Generating sets of subgroups of GL₂(F₃) containing an element of
/// determinant −1.
pub fn gl2_f3_non_sl2() -> Vec<(&'static str, Vec<MatGL2>)> {
    vec![
        ("diag(-1,1)", vec![m3(-1, 0, 0, 1)]),
        ("swap", vec![m3(0, 1, 1, 0)]),
        ("diag(-1,1),-I", vec![m3(-1, 0, 0, 1), m3(-1, 0, 0, -1)]),
        ("upper-triangular", vec![m3(1, 1, 0, 1), m3(-1, 0, 0, 1)]),
        ("GL2", vec![m3(1, 1, 0, 1), m3(0, -1, 1, 0), m3(-1, 0, 0, 1)]),
    ]
}

fn quaternion_mul(a: usize, b: usize) -> usize {
    // index = 4·sign + unit, units 1, i, j, k
    const TABLE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let (s, u) = TABLE[a % 4][b % 4];
    4 * ((s + a / 4 + b / 4) % 2) + u
}

/// `Q₈ → V₄` in the regular representations.
pub fn q8_cover_of_v4() -> Result<CentralExtension> {
    let left = |a: usize| Perm::from_fn(8, |x| quaternion_mul(a, x));
    let q8_gens = vec![left(1), left(2)];
    let q8 = close(&q8_gens, 8)?;
    let v4_gens = vec![Perm::new(vec![1, 0, 3, 2])?, Perm::new(vec![2, 3, 0, 1])?];
    let v4 = close(&v4_gens, 4)?;
    let hom = GroupHom::new(&q8, &v4, q8_gens, v4_gens)?;
    let mut ext = CentralExtension::new(hom)?;
    ext.verify_with_oracle()?;
    Ok(ext)
}

pub fn p3_classification() -> Vec<CaseResult> {
    let mut out: Vec<CaseResult> = sl2_f3_subgroups()
        .into_iter()
        .map(|(order, mats)| {
            let r = build_semidirect_std(3, &mats).and_then(|(g, h)| sha_omega(&g, &h).map(|s| s.invariants().clone()));
            CaseResult::new(format!("(C3)^2 x| G, |G| = {order}"), &[3], r)
        })
        .collect();
    for (name, mats) in gl2_f3_non_sl2() {
        let r = build_semidirect_std(3, &mats).and_then(|(g, h)| sha_omega(&g, &h).map(|s| s.invariants().clone()));
        out.push(CaseResult::new(format!("(C3)^2 x| <{name}>"), &[], r));
    }
    out
}

pub fn p3_pgroups() -> Vec<CaseResult> {
    let case = |name: &str, expected: &[u64], g: Result<PermGroup>| {
        let r = g.and_then(|g| {
            let h = g.point_stabilizer(0);
            sha_omega(&g, &h).map(|s| s.invariants().clone())
        });
        CaseResult::new(name, expected, r)
    };
    vec![
        case("P'1", &[3], build_Pprime(1, 3)),
        case("P'2", &[3], build_Pprime(2, 3)),
        case("P1 = C9", &[], build_P(1, 3)),
        case("P2", &[], build_P(2, 3)),
        case("P3 = P'3", &[], build_P(3, 3)),
    ]
}

fn lattices(g: &PermGroup) -> Result<Vec<(&'static str, GLattice)>> {
    let h = g.point_stabilizer(0);
    Ok(vec![
        ("Z", trivial_lattice(g)),
        ("Ind", induced_lattice(g, &h)?),
        ("J", chevalley_lattice(g, &h)?.lattice),
    ])
}

/// `h2_lattice` against the periodicity formula on every cyclic subgroup
/// (up to conjugacy) of the smaller groups in play.
pub fn oracles() -> Vec<CaseResult> {
    let mut groups: Vec<(String, Result<PermGroup>)> = Vec::new();
    for n in 1..=3 {
        groups.push((format!("P{n}"), build_P(n, 3)));
        groups.push((format!("P'{n}"), build_Pprime(n, 3)));
    }
    for (order, mats) in sl2_f3_subgroups().into_iter().filter(|(o, _)| *o <= 8) {
        groups.push((format!("(C3)^2 x| G{order}"), build_semidirect_std(3, &mats).map(|x| x.0)));
    }
    let mut out = Vec::new();
    for (name, g) in groups {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                out.push(CaseResult::new(name, &[], Err(e)));
                continue;
            }
        };
        let lats = match lattices(&g) {
            Ok(l) => l,
            Err(e) => {
                out.push(CaseResult::new(name, &[], Err(e)));
                continue;
            }
        };
        for c in conjugacy_class_reps(&g, &g.cyclic_subgroups()) {
            for (mname, m) in &lats {
                let label = format!("{name} / C{} / {mname}", c.order());
                let expected = match h2_cyclic_tate(&c, m) {
                    Ok(e) => e,
                    Err(e) => {
                        out.push(CaseResult::new(label, &[], Err(e)));
                        continue;
                    }
                };
                let computed = m.restrict(&c).map(|mc| h2_lattice(&mc).invariants().clone());
                out.push(CaseResult::new(label, expected.factors(), computed));
            }
        }
    }
    out
}

fn drakokhrust_case(name: &str, expected: &[u64], ext: Result<CentralExtension>, direct: bool) -> Vec<CaseResult> {
    let ext = match ext {
        Ok(e) => e,
        Err(e) => return vec![CaseResult::new(name, expected, Err(e))],
    };
    let base = ext.base().clone();
    let h = base.point_stabilizer(0);
    let mut out = vec![CaseResult::new(format!("{name}: Drakokhrust"), expected, drakokhrust_sha(&ext, &h))];
    if direct {
        out.push(CaseResult::new(
            format!("{name}: direct"),
            expected,
            sha_omega(&base, &h).map(|s| s.invariants().clone()),
        ));
    }
    out
}

pub fn drakokhrust() -> Vec<CaseResult> {
    let mut out = drakokhrust_case("Q8 -> V4", &[2], q8_cover_of_v4(), true);
    out.extend(drakokhrust_case(
        "Heisenberg cover, p = 3",
        &[3],
        build_heisenberg_cover(3, &sl2_generators(3)),
        true,
    ));
    out
}

pub fn p5_stretch() -> Vec<CaseResult> {
    drakokhrust_case("Heisenberg cover, p = 5", &[5], build_heisenberg_cover(5, &sl2_generators(5)), false)
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<CaseResult>> {
    Some(match name {
        "p3-classification" => p3_classification(),
        "p3-pgroups" => p3_pgroups(),
        "oracles" => oracles(),
        "drakokhrust" => drakokhrust(),
        "p5-stretch" => p5_stretch(),
        _ => return None,
    })
}
