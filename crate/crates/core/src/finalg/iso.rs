use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::group::Elem;
use super::ring::FinRing;
use crate::error::{AlgebraError, Result};

/// Structural flags of a function between ring carriers, each decided exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub additive: bool,
    pub multiplicative: bool,
    pub unital: bool,
    pub bijective: bool,
}

impl MapFlags {
    pub fn is_isomorphism(&self) -> bool {
        self.additive && self.multiplicative && self.unital && self.bijective
    }

    /// Decides all four flags for `table: source -> target`.
    pub fn of(source: &FinRing, target: &FinRing, table: &[Elem]) -> Self {
        let n = source.order();
        let additive = (0..n).all(|a| {
            (0..n).all(|b| table[source.add(a, b)] == target.add(table[a], table[b]))
        });
        let multiplicative = (0..n).all(|a| {
            (0..n).all(|b| table[source.mul(a, b)] == target.mul(table[a], table[b]))
        });
        let unital = table[source.one()] == target.one();
        Self {
            additive,
            multiplicative,
            unital,
            bijective: is_bijection(table, target.order()),
        }
    }
}

pub(crate) fn is_bijection(table: &[Elem], target_order: usize) -> bool {
    if table.len() != target_order {
        return false;
    }
    let mut seen = vec![false; target_order];
    for &y in table {
        if y >= target_order || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    true
}

pub(crate) fn same_ring(a: &Arc<FinRing>, b: &Arc<FinRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A verified ring isomorphism, stored as its full function table.
#[derive(Clone)]
pub struct RingIso {
    source: Arc<FinRing>,
    target: Arc<FinRing>,
    table: Vec<Elem>,
}

impl PartialEq for RingIso {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && same_ring(&self.source, &other.source)
            && same_ring(&self.target, &other.target)
    }
}

impl Eq for RingIso {}

impl fmt::Debug for RingIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingIso({} -> {}, {:?})",
            self.source.label(),
            self.target.label(),
            self.table
        )
    }
}

impl RingIso {
    /// Checks additivity, multiplicativity, unitality and bijectivity exhaustively.
    pub fn new(source: Arc<FinRing>, target: Arc<FinRing>, table: Vec<Elem>) -> Result<Self> {
        if table.len() != source.order() {
            return Err(AlgebraError::NotAnIsomorphism(format!(
                "table has {} entries for a ring of order {}",
                table.len(),
                source.order()
            )));
        }
        if table.iter().any(|&y| y >= target.order()) {
            return Err(AlgebraError::OutOfRange("table image outside target".into()));
        }
        let flags = MapFlags::of(&source, &target, &table);
        if !flags.is_isomorphism() {
            return Err(AlgebraError::NotAnIsomorphism(format!(
                "{} -> {}: {flags:?}",
                source.label(),
                target.label()
            )));
        }
        Ok(Self {
            source,
            target,
            table,
        })
    }

    /// Skips verification; callers must already know the table is an isomorphism.
    pub(crate) fn trusted(source: Arc<FinRing>, target: Arc<FinRing>, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), source.order());
        Self {
            source,
            target,
            table,
        }
    }

    pub fn identity(ring: Arc<FinRing>) -> Self {
        let table = ring.elements().collect();
        Self {
            source: ring.clone(),
            target: ring,
            table,
        }
    }

    pub fn source(&self) -> &Arc<FinRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinRing> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    pub fn is_identity(&self) -> bool {
        same_ring(&self.source, &self.target) && self.table.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn inverse(&self) -> RingIso {
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            table: inv,
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingIso) -> Result<RingIso> {
        if !same_ring(&self.target, &next.source) {
            return Err(AlgebraError::Wiring(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.label(),
                self.target.label(),
                next.source.label(),
                next.target.label()
            )));
        }
        Ok(Self {
            source: self.source.clone(),
            target: next.target.clone(),
            table: self.table.iter().map(|&x| next.table[x]).collect(),
        })
    }

    /// Images of the source's standard generators; the search orders results by this.
    pub fn generator_images(&self) -> Vec<Elem> {
        self.source
            .group()
            .basis_elements()
            .into_iter()
            .map(|b| self.table[b])
            .collect()
    }
}

/// `y -> x y x^{-1}`.
pub fn inner_automorphism(ring: &Arc<FinRing>, x: Elem) -> Result<RingIso> {
    let inv = ring
        .inverse(x)
        .ok_or_else(|| AlgebraError::NotAUnit(ring.format(x)))?;
    let table = ring
        .elements()
        .map(|y| ring.mul(ring.mul(x, y), inv))
        .collect();
    RingIso::new(ring.clone(), ring.clone(), table)
}
