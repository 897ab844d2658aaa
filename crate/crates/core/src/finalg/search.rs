//! Backtracking search for structure-preserving bijections.
//!
//! A search fixes images of additive generators one at a time. Every new pair
//! `x -> y` is closed under the structure: sums with the current domain, products (both
//! orders) for each binary operation, and each unary operation. A pair that contradicts
//! an existing image, or reuses a target element, kills the branch.

use std::sync::Arc;

use rayon::prelude::*;

use super::group::Elem;
use super::iso::RingIso;
use super::ring::FinRing;
use crate::error::{AlgebraError, Result};

pub const DEFAULT_SEARCH_BOUND: usize = 256;

/// Limits and scheduling for exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest carrier the search accepts.
    pub bound: usize,
    /// Explore first-generator branches on the rayon pool.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            bound: DEFAULT_SEARCH_BOUND,
            parallel: true,
        }
    }
}

impl SearchOptions {
    pub fn with_bound(bound: usize) -> Self {
        Self {
            bound,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, size: usize) -> Result<()> {
        if size > self.bound {
            Err(AlgebraError::SearchBoundExceeded {
                size,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }
}

/// The operations a bijection must preserve.
pub(crate) trait Signature: Sync {
    fn source_order(&self) -> usize;
    fn target_order(&self) -> usize;
    fn source_add(&self, a: Elem, b: Elem) -> Elem;
    fn target_add(&self, a: Elem, b: Elem) -> Elem;
    fn source_additive_order(&self, a: Elem) -> u64;
    fn target_additive_order(&self, a: Elem) -> u64;
    /// Additive generators of the source, in search order.
    fn generators(&self) -> Vec<Elem>;
    /// Pairs every solution must contain.
    fn seeds(&self) -> Vec<(Elem, Elem)>;

    fn binary_count(&self) -> usize {
        0
    }
    fn source_binary(&self, _op: usize, _a: Elem, _b: Elem) -> Elem {
        unreachable!("no binary operations")
    }
    fn target_binary(&self, _op: usize, _a: Elem, _b: Elem) -> Elem {
        unreachable!("no binary operations")
    }
    fn unary_count(&self) -> usize {
        0
    }
    fn source_unary(&self, _op: usize, _a: Elem) -> Elem {
        unreachable!("no unary operations")
    }
    fn target_unary(&self, _op: usize, _a: Elem) -> Elem {
        unreachable!("no unary operations")
    }
}

const UNSET: u32 = u32::MAX;

#[derive(Clone)]
struct PartialMap {
    image: Vec<u32>,
    used: Vec<bool>,
    domain: Vec<Elem>,
}

impl PartialMap {
    fn new(source: usize, target: usize) -> Self {
        Self {
            image: vec![UNSET; source],
            used: vec![false; target],
            domain: Vec::with_capacity(source),
        }
    }

    fn is_set(&self, x: Elem) -> bool {
        self.image[x] != UNSET
    }

    /// Adds `x -> y` and everything it forces; false on contradiction.
    fn extend<S: Signature + ?Sized>(&mut self, sig: &S, x: Elem, y: Elem) -> bool {
        let mut work = vec![(x, y)];
        while let Some((a, b)) = work.pop() {
            let current = self.image[a];
            if current != UNSET {
                if current as Elem != b {
                    return false;
                }
                continue;
            }
            if self.used[b] {
                return false;
            }
            self.image[a] = b as u32;
            self.used[b] = true;
            self.domain.push(a);
            let push = |s: Elem, t: Elem, work: &mut Vec<(Elem, Elem)>| -> bool {
                let known = self.image[s];
                if known == UNSET {
                    work.push((s, t));
                    true
                } else {
                    known as Elem == t
                }
            };
            for idx in 0..self.domain.len() {
                let d = self.domain[idx];
                let fd = self.image[d] as Elem;
                if !push(sig.source_add(a, d), sig.target_add(b, fd), &mut work) {
                    return false;
                }
                for op in 0..sig.binary_count() {
                    if !push(
                        sig.source_binary(op, a, d),
                        sig.target_binary(op, b, fd),
                        &mut work,
                    ) || !push(
                        sig.source_binary(op, d, a),
                        sig.target_binary(op, fd, b),
                        &mut work,
                    ) {
                        return false;
                    }
                }
            }
            for op in 0..sig.unary_count() {
                if !push(sig.source_unary(op, a), sig.target_unary(op, b), &mut work) {
                    return false;
                }
            }
        }
        true
    }

    fn into_table(self) -> Vec<Elem> {
        self.image.into_iter().map(|y| y as Elem).collect()
    }
}

struct Plan<'a, S: Signature + ?Sized> {
    sig: &'a S,
    generators: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
}

impl<S: Signature + ?Sized> Plan<'_, S> {
    fn dfs(&self, level: usize, state: PartialMap, out: &mut Vec<Vec<Elem>>) {
        let mut level = level;
        while level < self.generators.len() && state.is_set(self.generators[level]) {
            level += 1;
        }
        if level == self.generators.len() {
            debug_assert_eq!(state.domain.len(), self.sig.source_order());
            out.push(state.into_table());
            return;
        }
        let g = self.generators[level];
        for &c in &self.candidates[level] {
            if state.used[c] {
                continue;
            }
            let mut next = state.clone();
            if next.extend(self.sig, g, c) {
                self.dfs(level + 1, next, out);
            }
        }
    }
}

/// All bijections preserving `sig`, sorted by generator images.
pub(crate) fn search<S: Signature + ?Sized>(sig: &S, parallel: bool) -> Vec<Vec<Elem>> {
    let (n, m) = (sig.source_order(), sig.target_order());
    if n != m {
        return Vec::new();
    }
    let mut root = PartialMap::new(n, m);
    for (x, y) in sig.seeds() {
        if !root.extend(sig, x, y) {
            return Vec::new();
        }
    }
    let generators = sig.generators();
    let candidates = generators
        .iter()
        .map(|&g| {
            let ord = sig.source_additive_order(g);
            (0..m)
                .filter(|&c| sig.target_additive_order(c) == ord)
                .collect()
        })
        .collect();
    let plan = Plan {
        sig,
        generators,
        candidates,
    };

    let first = (0..plan.generators.len()).find(|&l| !root.is_set(plan.generators[l]));
    let mut out = match first {
        Some(level) if parallel => {
            let g = plan.generators[level];
            plan.candidates[level]
                .par_iter()
                .filter(|&&c| !root.used[c])
                .map(|&c| {
                    let mut found = Vec::new();
                    let mut next = root.clone();
                    if next.extend(sig, g, c) {
                        plan.dfs(level + 1, next, &mut found);
                    }
                    found
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        }
        _ => {
            let mut found = Vec::new();
            plan.dfs(0, root, &mut found);
            found
        }
    };
    let gens = &plan.generators;
    out.sort_by_cached_key(|table| gens.iter().map(|&g| table[g]).collect::<Vec<_>>());
    out
}

struct RingSignature<'a> {
    source: &'a FinRing,
    target: &'a FinRing,
}

impl Signature for RingSignature<'_> {
    fn source_order(&self) -> usize {
        self.source.order()
    }
    fn target_order(&self) -> usize {
        self.target.order()
    }
    fn source_add(&self, a: Elem, b: Elem) -> Elem {
        self.source.add(a, b)
    }
    fn target_add(&self, a: Elem, b: Elem) -> Elem {
        self.target.add(a, b)
    }
    fn source_additive_order(&self, a: Elem) -> u64 {
        self.source.group().additive_order(a)
    }
    fn target_additive_order(&self, a: Elem) -> u64 {
        self.target.group().additive_order(a)
    }
    fn generators(&self) -> Vec<Elem> {
        self.source.group().basis_elements()
    }
    fn seeds(&self) -> Vec<(Elem, Elem)> {
        vec![(self.source.zero(), self.target.zero()), (self.source.one(), self.target.one())]
    }
    fn binary_count(&self) -> usize {
        1
    }
    fn source_binary(&self, _op: usize, a: Elem, b: Elem) -> Elem {
        self.source.mul(a, b)
    }
    fn target_binary(&self, _op: usize, a: Elem, b: Elem) -> Elem {
        self.target.mul(a, b)
    }
}

/// Every ring isomorphism `source -> target`, ordered lexicographically by the images
/// of the source's standard generators.
pub fn ring_isos_bruteforce(
    source: &Arc<FinRing>,
    target: &Arc<FinRing>,
    options: SearchOptions,
) -> Result<Vec<RingIso>> {
    if source.order() != target.order() {
        return Ok(Vec::new());
    }
    options.check(source.order())?;
    let sig = RingSignature {
        source: source.as_ref(),
        target: target.as_ref(),
    };
    Ok(search(&sig, options.parallel)
        .into_iter()
        .map(|t| RingIso::trusted(source.clone(), target.clone(), t))
        .collect())
}

/// Reference enumeration without pruning: every additive homomorphism fixed by
/// generator images, kept when it is a unital multiplicative bijection.
pub fn ring_isos_naive(source: &Arc<FinRing>, target: &Arc<FinRing>) -> Vec<RingIso> {
    if source.order() != target.order() {
        return Vec::new();
    }
    let sg = source.group();
    let tg = target.group();
    let basis = sg.basis_elements();
    // Generator i of order d can go anywhere killed by d.
    let options: Vec<Vec<Elem>> = sg
        .orders()
        .iter()
        .map(|&d| {
            tg.elements()
                .filter(|&y| tg.scale(d as i64, y) == tg.zero())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; basis.len()];
    loop {
        let table: Vec<Elem> = sg
            .elements()
            .map(|x| {
                tg.sum((0..basis.len()).map(|i| tg.scale(sg.coord(x, i) as i64, options[i][choice[i]])))
            })
            .collect();
        if let Ok(iso) = RingIso::new(source.clone(), target.clone(), table) {
            out.push(iso);
        }
        let mut i = 0;
        loop {
            if i == basis.len() {
                out.sort_by_key(RingIso::generator_images);
                return out;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::iso::inner_automorphism;

    fn arc(r: FinRing) -> Arc<FinRing> {
        Arc::new(r)
    }

    #[test]
    fn crt_isomorphism_is_unique() {
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let p = arc(FinRing::direct_product(&FinRing::cyclic(2).unwrap(), &FinRing::cyclic(3).unwrap()).unwrap());
        let isos = ring_isos_bruteforce(&z6, &p, SearchOptions::default()).unwrap();
        assert_eq!(isos.len(), 1);
        assert_eq!(ring_isos_naive(&z6, &p), isos);
    }

    #[test]
    fn automorphism_counts() {
        let f2 = FinRing::cyclic(2).unwrap();
        let u2 = arc(FinRing::upper_triangular(&f2).unwrap());
        assert_eq!(ring_isos_bruteforce(&u2, &u2, SearchOptions::default()).unwrap().len(), 2);
        let m2 = arc(FinRing::matrix_ring(&f2).unwrap());
        let auts = ring_isos_bruteforce(&m2, &m2, SearchOptions::default()).unwrap();
        assert_eq!(auts.len(), 6);
        // All inner.
        for a in &auts {
            assert!(m2
                .units()
                .iter()
                .any(|&(u, _)| inner_automorphism(&m2, u).unwrap() == *a));
        }
    }

    #[test]
    fn different_orders_give_nothing() {
        let a = arc(FinRing::cyclic(4).unwrap());
        let b = arc(FinRing::cyclic(5).unwrap());
        assert!(ring_isos_bruteforce(&a, &b, SearchOptions::with_bound(1)).unwrap().is_empty());
    }

    #[test]
    fn bound_is_enforced() {
        let a = arc(FinRing::cyclic(9).unwrap());
        let err = ring_isos_bruteforce(&a, &a, SearchOptions::with_bound(8)).unwrap_err();
        assert_eq!(err, AlgebraError::SearchBoundExceeded { size: 9, bound: 8 });
    }

    #[test]
    fn serial_and_parallel_agree() {
        let f2 = FinRing::cyclic(2).unwrap();
        let m2 = arc(FinRing::matrix_ring(&f2).unwrap());
        let serial = SearchOptions { bound: 256, parallel: false };
        assert_eq!(
            ring_isos_bruteforce(&m2, &m2, serial).unwrap(),
            ring_isos_bruteforce(&m2, &m2, SearchOptions::default()).unwrap()
        );
    }
}
