//! `H²(G, Q/Z)` for small groups from normalized 2-cocycles with values in
//! `Z/|G|`. A normalized 2-cocycle `c` is stored as the 1-cocycle
//! `g ↦ c(·, g)` with values in the functions `G ∖ {1} → Z/|G|`.

use super::lattice::shifted_module;
use super::Context;
use crate::error::{KnotError, Result};
use crate::glattice::FinGModule;
use crate::permgroup::{Perm, PermGroup};
use crate::zmodlin::{preimage_within, quotient_invariants, AbelianInvariants, HowellBasis, ModMatrix};

pub const SCHUR_CAP: usize = 64;

struct Multiplier {
    ctx: Context,
    cocycles: HowellBasis,
    zero: HowellBasis,
}

fn multiplier(group: &PermGroup) -> Result<Multiplier> {
    let ord = group.order();
    if ord > SCHUR_CAP {
        return Err(KnotError::CapExceeded { cap: SCHUR_CAP });
    }
    let n = ord as u64;
    let coeff = FinGModule::trivial(group, n);
    let ctx = Context::from_module(&shifted_module(&coeff));
    let homs = Context::from_module(&coeff);
    let gens = ctx.system.gens.clone();
    let w = ctx.system.width();
    let mut zero_rows = ctx.coboundaries_for(&gens);
    // Bockstein of a : G → Z/n is c(x, g) = (ã(x) + ã(g) − ã(xg)) / n.
    for a in homs.system.z1.rows() {
        let vals: Vec<u64> = (0..ord).map(|g| homs.system.value(a, g)[0]).collect();
        let mut row = Vec::with_capacity(w);
        for &s in &gens {
            for x in 1..ord {
                let xs = group.mul_index(x, s);
                row.push((vals[x] + vals[s] - vals[xs]) / n);
            }
        }
        zero_rows.push(row);
    }
    let zero = HowellBasis::from_rows(n, w, zero_rows);
    let cocycles = ctx.system.z1.sum(&zero);
    Ok(Multiplier { ctx, cocycles, zero })
}

/// The Schur multiplier `H²(G, Q/Z)` of a group of order at most `SCHUR_CAP`.
pub fn schur_multiplier_small(group: &PermGroup) -> Result<AbelianInvariants> {
    if group.order() == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    let m = multiplier(group)?;
    quotient_invariants(&m.cocycles, &m.zero)
}

/// Invariants of `H²(N, Q/Z)` under conjugation by `actors`, each of which
/// must normalize `N`.
pub fn multiplier_invariants(group: &PermGroup, actors: &[Perm]) -> Result<AbelianInvariants> {
    if group.order() == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    for h in actors {
        if group.generators().iter().any(|s| !group.contains(&s.conjugate_by(h))) {
            return Err(KnotError::PreconditionViolated("actor does not normalize the group".into()));
        }
    }
    let m = multiplier(group)?;
    let ord = group.order();
    let n = ord as u64;
    let gens = &m.ctx.system.gens;
    let w = m.ctx.system.width();
    let r = ord - 1;
    let mut fixed = m.cocycles.clone();
    for h in actors {
        let hinv = h.inverse();
        // (h·c)(x, y) = c(h⁻¹xh, h⁻¹yh)
        let mut t = ModMatrix::zeros(n, w, w);
        for (k, &s) in gens.iter().enumerate() {
            let sc = group.index_of(&group.element(s).conjugate_by(&hinv)).expect("normalized");
            let f = &m.ctx.system.f[sc];
            for x in 1..ord {
                let xc = group.index_of(&group.element(x).conjugate_by(&hinv)).expect("normalized");
                for c in 0..w {
                    t.set(c, k * r + (x - 1), f.get(xc - 1, c));
                }
            }
        }
        for c in 0..w {
            t.set(c, c, (t.get(c, c) + n - 1) % n);
        }
        fixed = preimage_within(&fixed, &t, &m.zero);
    }
    quotient_invariants(&fixed.sum(&m.zero), &m.zero)
}
