//! Permutations of `{0, …, d-1}` and permutation groups stored as fully
//! materialized, lexicographically sorted element sets.
//!
//! Composition follows function notation: `a.compose(&b)` is `x ↦ a(b(x))`,
//! so `b` acts first. Commutators are `[g, h] = g⁻¹ h g h⁻¹`.

use crate::error::{KnotError, Result};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Largest group order that `close` will enumerate.
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let d = images.len();
        if d > u16::MAX as usize {
            return Err(KnotError::BadParameter(format!("degree {d} too large")));
        }
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(KnotError::BadParameter(format!(
                    "image list {images:?} is not a bijection of 0..{d}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds `x ↦ f(x)`; panics if `f` is not a bijection.
    pub fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Perm {
        Perm::new((0..degree).map(f).collect()).expect("from_fn: not a bijection")
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// `[g, h] = g⁻¹ h g h⁻¹`.
    pub fn commutator(g: &Perm, h: &Perm) -> Perm {
        g.inverse().compose(h).compose(g).compose(&h.inverse())
    }

    /// `s · self · s⁻¹`.
    pub fn conjugate_by(&self, s: &Perm) -> Perm {
        s.compose(self).compose(&s.inverse())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl std::ops::Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

struct GroupData {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// Immutable, cheaply clonable permutation group.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupData>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.inner.elements == other.inner.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, {} generators)",
            self.degree(),
            self.order(),
            self.generators().len()
        )
    }
}

/// Closes `generators` under composition using the global order cap.
pub fn close(generators: &[Perm], degree: usize) -> Result<PermGroup> {
    close_capped(generators, degree, order_cap())
}

pub fn close_capped(generators: &[Perm], degree: usize, cap: usize) -> Result<PermGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(KnotError::BadParameter(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
    }
    let gens: Vec<Perm> = dedup_keep_order(generators.iter().filter(|g| !g.is_identity()).cloned());
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = x.compose(s);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(KnotError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(PermGroup::assemble(degree, gens, seen.into_iter().collect()))
}

fn dedup_keep_order(it: impl Iterator<Item = Perm>) -> Vec<Perm> {
    let mut seen = HashSet::new();
    it.filter(|g| seen.insert(g.clone())).collect()
}

impl PermGroup {
    fn assemble(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        PermGroup {
            inner: Arc::new(GroupData {
                degree,
                generators,
                elements,
                index,
            }),
        }
    }

    /// Builds a group from an element set already known to be closed.
    /// Generators are picked greedily in element order.
    fn from_closed_set(degree: usize, elements: Vec<Perm>) -> PermGroup {
        let mut sorted = elements;
        sorted.sort();
        let mut gens: Vec<Perm> = Vec::new();
        let mut current: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
        for x in &sorted {
            if current.len() == sorted.len() {
                break;
            }
            if !current.contains(x) {
                gens.push(x.clone());
                let g = close_capped(&gens, degree, usize::MAX).expect("uncapped");
                current = g.inner.elements.iter().cloned().collect();
            }
        }
        PermGroup::assemble(degree, gens, sorted)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::assemble(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    pub fn symmetric(degree: usize) -> Result<PermGroup> {
        if degree < 2 {
            return Ok(PermGroup::trivial(degree));
        }
        let cycle = Perm::from_fn(degree, |x| (x + 1) % degree);
        let swap = Perm::from_fn(degree, |x| match x {
            0 => 1,
            1 => 0,
            _ => x,
        });
        close(&[cycle, swap], degree)
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    /// All elements in lexicographic order; index 0 is the identity.
    pub fn elements(&self) -> &[Perm] {
        &self.inner.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.inner.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.inner.index.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.inner.index.contains_key(g)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let g = self.element(i).compose(self.element(j));
        self.inner.index[&g]
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.contains(g))
    }

    /// The subgroup of `self` generated by `gens`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(KnotError::NotSubgroup(format!("{g:?} is not in the group")));
        }
        close(gens, self.degree())
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|a| gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements().iter().any(|g| g.order() == n)
    }

    /// An element generating the group, if it is cyclic.
    pub fn cyclic_generator(&self) -> Option<Perm> {
        let n = self.order();
        self.elements().iter().find(|g| g.order() == n).cloned()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            for g in self.generators() {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() == 0 || self.orbit(0).len() == self.degree()
    }

    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let elems = self
            .elements()
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect();
        PermGroup::from_closed_set(self.degree(), elems)
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elems = small
            .elements()
            .iter()
            .filter(|g| big.contains(g))
            .cloned()
            .collect();
        PermGroup::from_closed_set(self.degree(), elems)
    }

    /// `s · self · s⁻¹`.
    pub fn conjugate(&self, s: &Perm) -> PermGroup {
        let sinv = s.inverse();
        let conj = |g: &Perm| s.compose(g).compose(&sinv);
        let mut elems: Vec<Perm> = self.elements().iter().map(conj).collect();
        elems.sort();
        let gens = self.generators().iter().map(conj).collect();
        PermGroup::assemble(self.degree(), gens, elems)
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient.generators().iter().all(|s| {
            self.generators()
                .iter()
                .all(|h| self.contains(&h.conjugate_by(s)))
        })
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> Result<PermGroup> {
        let mut current = self.subgroup(gens)?;
        loop {
            let mut extra = Vec::new();
            for s in self.generators() {
                for h in current.generators() {
                    let c = h.conjugate_by(s);
                    if !current.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(current);
            }
            let mut all = current.generators().to_vec();
            all.extend(extra);
            current = close(&all, self.degree())?;
        }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = self.generators();
        let mut comms = Vec::new();
        for a in gens {
            for b in gens {
                let c = Perm::commutator(a, b);
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms).expect("subgroup of an enumerated group")
    }

    pub fn center(&self) -> PermGroup {
        let gens = self.generators();
        let elems = self
            .elements()
            .iter()
            .filter(|z| gens.iter().all(|g| g.compose(z) == z.compose(g)))
            .cloned()
            .collect();
        PermGroup::from_closed_set(self.degree(), elems)
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .iter()
            .fold(1, |acc, g| num_integer::lcm(acc, g.order()))
    }

    /// Normalizer of `sub` in `self`.
    pub fn normalizer(&self, sub: &PermGroup) -> PermGroup {
        let elems = self
            .elements()
            .iter()
            .filter(|g| sub.generators().iter().all(|h| sub.contains(&h.conjugate_by(g))))
            .cloned()
            .collect();
        PermGroup::from_closed_set(self.degree(), elems)
    }

    /// One Sylow `p`-subgroup, grown from the trivial group by always
    /// adjoining the first suitable normalizer element in element order.
    pub fn sylow_p(&self, p: usize) -> PermGroup {
        let mut target = 1;
        let mut n = self.order();
        while n % p == 0 {
            n /= p;
            target *= p;
        }
        let mut current = PermGroup::trivial(self.degree());
        while current.order() < target {
            let norm = self.normalizer(&current);
            let next = norm
                .elements()
                .iter()
                .filter(|x| !current.contains(x))
                .find_map(|x| {
                    // x has p-power order modulo `current` iff some x^(p^k) lies in it
                    let mut y = x.clone();
                    let mut last = x.clone();
                    for _ in 0..64 {
                        if current.contains(&y) {
                            return Some(last);
                        }
                        last = y.clone();
                        y = y.pow(p as i64);
                    }
                    None
                })
                .expect("a p-group below the Sylow order grows inside its normalizer");
            let mut gens = current.generators().to_vec();
            gens.push(next);
            current = close(&gens, self.degree()).expect("subgroup of an enumerated group");
        }
        current
    }

    /// Largest normal subgroup of `self` contained in `sub`.
    pub fn normal_core(&self, sub: &PermGroup) -> Result<PermGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(KnotError::NotSubgroup("normal_core".into()));
        }
        let mut core = sub.clone();
        loop {
            let mut next = core.clone();
            for s in self.generators() {
                next = next.intersection(&core.conjugate(s));
            }
            if next.order() == core.order() {
                return Ok(core);
            }
            core = next;
        }
    }

    /// Left cosets `gH` ordered by their least element.
    pub fn left_cosets(&self, sub: &PermGroup) -> Result<CosetSpace> {
        if !sub.is_subgroup_of(self) {
            return Err(KnotError::NotSubgroup("left_cosets".into()));
        }
        let mut of_element = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for (i, g) in self.elements().iter().enumerate() {
            if of_element[i] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g.clone());
            for h in sub.elements() {
                of_element[self.inner.index[&g.compose(h)]] = c;
            }
        }
        Ok(CosetSpace { reps, of_element })
    }

    /// One representative per double coset `D g H`, each the least element
    /// of its double coset, listed in increasing order.
    pub fn double_coset_reps(&self, d: &PermGroup, h: &PermGroup) -> Result<Vec<Perm>> {
        if !d.is_subgroup_of(self) || !h.is_subgroup_of(self) {
            return Err(KnotError::NotSubgroup("double_coset_reps".into()));
        }
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for (i, g) in self.elements().iter().enumerate() {
            if covered[i] {
                continue;
            }
            reps.push(g.clone());
            for x in d.elements() {
                let xg = x.compose(g);
                for y in h.elements() {
                    covered[self.inner.index[&xg.compose(y)]] = true;
                }
            }
        }
        Ok(reps)
    }

    /// Every cyclic subgroup once, sorted by order then element list.
    pub fn cyclic_subgroups(&self) -> Vec<PermGroup> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for g in self.elements() {
            let mut key = Vec::new();
            let mut x = g.clone();
            loop {
                key.push(self.inner.index[&x]);
                if x.is_identity() {
                    break;
                }
                x = x.compose(g);
            }
            key.sort_unstable();
            if seen.insert(key.clone()) {
                let elems = key.iter().map(|&i| self.element(i).clone()).collect();
                let gens = if g.is_identity() { vec![] } else { vec![g.clone()] };
                out.push(PermGroup::assemble(self.degree(), gens, elems));
            }
        }
        out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        out
    }

    /// All subgroups isomorphic to `(C_p)^rank`, sorted by element list.
    pub fn subgroups_elementary_abelian(&self, p: usize, rank: usize) -> Vec<PermGroup> {
        if rank == 0 {
            return vec![PermGroup::trivial(self.degree())];
        }
        let order_p: Vec<&Perm> = self.elements().iter().filter(|g| g.order() == p).collect();
        let mut level: Vec<PermGroup> = Vec::new();
        let mut keys: HashSet<Vec<Perm>> = HashSet::new();
        for g in &order_p {
            let c = close(&[(*g).clone()], self.degree()).expect("cyclic");
            if keys.insert(c.elements().to_vec()) {
                level.push(c);
            }
        }
        for _ in 1..rank {
            let mut next = Vec::new();
            let mut next_keys: HashSet<Vec<Perm>> = HashSet::new();
            for a in &level {
                for g in &order_p {
                    if a.contains(g) {
                        continue;
                    }
                    if !a.generators().iter().all(|x| x.compose(g) == g.compose(x)) {
                        continue;
                    }
                    let mut gens = a.generators().to_vec();
                    gens.push((*g).clone());
                    let b = close(&gens, self.degree()).expect("subgroup");
                    if next_keys.insert(b.elements().to_vec()) {
                        next.push(b);
                    }
                }
            }
            level = next;
        }
        level.sort_by(|a, b| a.elements().cmp(b.elements()));
        level
    }

    /// Drops generators that are products of earlier ones.
    pub fn small_generating_set(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(self.degree());
        for g in self.generators() {
            if current.order() == self.order() {
                break;
            }
            if !current.contains(g) {
                gens.push(g.clone());
                current = close(&gens, self.degree()).expect("subgroup");
            }
        }
        gens
    }

    /// Same element set, generators replaced by `gens` (which must generate it).
    pub fn with_generators(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        let g = close(&gens, self.degree())?;
        if g != *self {
            return Err(KnotError::BadParameter(
                "proposed generators do not generate the group".into(),
            ));
        }
        Ok(g)
    }
}

/// Left cosets of a subgroup, with the coset of every ambient element.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub reps: Vec<Perm>,
    /// Coset number of each element, indexed like `ambient.elements()`.
    pub of_element: Vec<usize>,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// The coset `g · reps[c]`.
    pub fn act(&self, group: &PermGroup, g: &Perm, c: usize) -> usize {
        let x = g.compose(&self.reps[c]);
        self.of_element[group.index_of(&x).expect("element of the ambient group")]
    }
}

/// Representatives of the conjugacy classes among `subs` under `ambient`,
/// keeping the first member of each class in input order.
pub fn conjugacy_class_reps(ambient: &PermGroup, subs: &[PermGroup]) -> Vec<PermGroup> {
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut reps = Vec::new();
    for s in subs {
        if seen.contains(s.elements()) {
            continue;
        }
        reps.push(s.clone());
        for c in conjugacy_class(ambient, s) {
            seen.insert(c.elements().to_vec());
        }
    }
    reps
}

/// All distinct conjugates `g S g⁻¹`, in order of first appearance.
pub fn conjugacy_class(ambient: &PermGroup, sub: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![sub.clone()];
    let mut keys: HashSet<Vec<Perm>> = HashSet::from([sub.elements().to_vec()]);
    let mut k = 0;
    while k < out.len() {
        let cur = out[k].clone();
        k += 1;
        for s in ambient.generators() {
            let c = cur.conjugate(s);
            if keys.insert(c.elements().to_vec()) {
                out.push(c);
            }
        }
    }
    out
}

/// A homomorphism between permutation groups, stored as a full element map.
#[derive(Clone)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    gens: Vec<Perm>,
    images: Vec<Perm>,
    map: Arc<Vec<usize>>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({:?} -> {:?})", self.source, self.target)
    }
}

impl GroupHom {
    /// The homomorphism sending `gens[i] ↦ images[i]`; `gens` must generate
    /// `source`. Fails unless the assignment extends consistently.
    pub fn new(
        source: &PermGroup,
        target: &PermGroup,
        gens: Vec<Perm>,
        images: Vec<Perm>,
    ) -> Result<GroupHom> {
        if gens.len() != images.len() {
            return Err(KnotError::BadParameter("generator/image count mismatch".into()));
        }
        let mut gi = Vec::with_capacity(gens.len());
        for (g, t) in gens.iter().zip(&images) {
            let a = source
                .index_of(g)
                .ok_or_else(|| KnotError::NotSubgroup("generator outside source".into()))?;
            let b = target
                .index_of(t)
                .ok_or_else(|| KnotError::NotSubgroup("image outside target".into()))?;
            gi.push((a, b));
        }
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &(a, b) in &gi {
                let y = source.mul_index(x, a);
                let fy = target.mul_index(map[x], b);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    reached += 1;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return Err(KnotError::NotHomomorphism(
                        "generator images violate a relation".into(),
                    ));
                }
            }
        }
        if reached != source.order() {
            return Err(KnotError::BadParameter(
                "listed generators do not generate the source".into(),
            ));
        }
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            gens,
            images,
            map: Arc::new(map),
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> (&[Perm], &[Perm]) {
        (&self.gens, &self.images)
    }

    pub fn apply(&self, g: &Perm) -> Option<Perm> {
        let i = self.source.index_of(g)?;
        Some(self.target.element(self.map[i]).clone())
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn kernel(&self) -> PermGroup {
        let elems = (0..self.source.order())
            .filter(|&i| self.map[i] == 0)
            .map(|i| self.source.element(i).clone())
            .collect();
        PermGroup::from_closed_set(self.source.degree(), elems)
    }

    pub fn image(&self) -> PermGroup {
        let mut idx: Vec<usize> = self.map.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let elems = idx.iter().map(|&i| self.target.element(i).clone()).collect();
        PermGroup::from_closed_set(self.target.degree(), elems)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &PermGroup) -> PermGroup {
        let elems = (0..self.source.order())
            .filter(|&i| sub.contains(self.target.element(self.map[i])))
            .map(|i| self.source.element(i).clone())
            .collect();
        PermGroup::from_closed_set(self.source.degree(), elems)
    }
}
