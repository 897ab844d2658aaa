use std::sync::Arc;

use super::group::{gcd, AbGroup, Elem};
use crate::error::{AlgebraError, Result};
use crate::validation::ValidationReport;

const MUL_TABLE_LIMIT: usize = 1024;

/// Finite ring with identity.
///
/// The additive group is a product of cyclic groups; multiplication is given by the
/// products of standard generators and extended bi-additively, so distributivity holds
/// by construction.
#[derive(Debug, Clone)]
pub struct FinRing {
    label: String,
    group: AbGroup,
    basis_products: Vec<Elem>,
    one: Elem,
    mul_table: Option<Arc<Vec<u32>>>,
}

impl PartialEq for FinRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.basis_products == other.basis_products
            && self.one == other.one
    }
}

impl Eq for FinRing {}

impl FinRing {
    /// Builds a ring from structure constants, rejecting anything that is not a ring
    /// with `1 != 0`.
    ///
    /// `basis_products[i * k + j]` is the product of generators `i` and `j`. Because the
    /// product is bi-additive, identity and associativity only need checking on
    /// generators, which makes the constructor's checks complete.
    pub fn new(
        label: impl Into<String>,
        group: AbGroup,
        basis_products: Vec<Elem>,
        one: Elem,
    ) -> Result<Self> {
        let ring = Self::from_parts_unchecked(label, group, basis_products, one)?;
        ring.check_structure_constants()?;
        if ring.order() < 2 || ring.one == ring.zero() {
            return Err(AlgebraError::InvalidRing(format!(
                "{}: identity equals zero",
                ring.label
            )));
        }
        let basis = ring.group.basis_elements();
        for &b in &basis {
            if ring.mul(ring.one, b) != b || ring.mul(b, ring.one) != b {
                return Err(AlgebraError::InvalidRing(format!(
                    "{}: {} is not a two-sided identity (fails at {})",
                    ring.label,
                    ring.format(ring.one),
                    ring.format(b)
                )));
            }
        }
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)) {
                        return Err(AlgebraError::InvalidRing(format!(
                            "{}: not associative at ({}, {}, {})",
                            ring.label,
                            ring.format(a),
                            ring.format(b),
                            ring.format(c)
                        )));
                    }
                }
            }
        }
        Ok(ring)
    }

    /// Builds the multiplication without checking any ring axiom. Intended for
    /// negative tests of [`FinRing::validate`].
    pub fn from_parts_unchecked(
        label: impl Into<String>,
        group: AbGroup,
        basis_products: Vec<Elem>,
        one: Elem,
    ) -> Result<Self> {
        let label = label.into();
        let k = group.rank();
        if basis_products.len() != k * k {
            return Err(AlgebraError::InvalidRing(format!(
                "{label}: expected {} structure constants, got {}",
                k * k,
                basis_products.len()
            )));
        }
        if let Some(&bad) = basis_products
            .iter()
            .chain(std::iter::once(&one))
            .find(|&&x| !group.contains(x))
        {
            return Err(AlgebraError::OutOfRange(format!("{label}: element {bad}")));
        }
        let mut ring = Self {
            label,
            group,
            basis_products,
            one,
            mul_table: None,
        };
        let n = ring.order();
        if n <= MUL_TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    table.push(ring.mul_bilinear(a, b) as u32);
                }
            }
            ring.mul_table = Some(Arc::new(table));
        }
        Ok(ring)
    }

    /// `Z/n`.
    pub fn cyclic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::InvalidOrder(n as u64));
        }
        Self::new(format!("Z/{n}"), AbGroup::cyclic(n)?, vec![1], 1)
    }

    /// Componentwise product ring; coordinates of `a` come first.
    pub fn direct_product(a: &FinRing, b: &FinRing) -> Result<Self> {
        let group = a.group.product(&b.group)?;
        let (ka, kb) = (a.group.rank(), b.group.rank());
        let k = ka + kb;
        let na = a.order();
        let mut products = vec![0; k * k];
        for i in 0..ka {
            for j in 0..ka {
                products[i * k + j] = a.basis_products[i * ka + j];
            }
        }
        for i in 0..kb {
            for j in 0..kb {
                products[(ka + i) * k + ka + j] = b.basis_products[i * kb + j] * na;
            }
        }
        Self::new(
            format!("{} x {}", a.label, b.label),
            group,
            products,
            a.one + na * b.one,
        )
    }

    /// The literal ring of 2x2 matrices over `base`, entries ordered (1,1), (1,2),
    /// (2,1), (2,2).
    pub fn matrix_ring(base: &FinRing) -> Result<Self> {
        Self::matrix_like(base, &[(0, 0), (0, 1), (1, 0), (1, 1)], "M_2")
    }

    /// Upper triangular 2x2 matrices over `base`, entries ordered (1,1), (1,2), (2,2).
    pub fn upper_triangular(base: &FinRing) -> Result<Self> {
        Self::matrix_like(base, &[(0, 0), (0, 1), (1, 1)], "U_2")
    }

    fn matrix_like(base: &FinRing, positions: &[(usize, usize)], name: &str) -> Result<Self> {
        let kb = base.group.rank();
        let mut orders = Vec::new();
        for _ in positions {
            orders.extend_from_slice(base.group.orders());
        }
        let group = AbGroup::new(orders)?;
        let k = group.rank();
        let nb = base.order();
        let slot = |p: usize| nb.pow(p as u32);
        let mut products = vec![0; k * k];
        for (p1, &(r1, c1)) in positions.iter().enumerate() {
            for (p2, &(r2, c2)) in positions.iter().enumerate() {
                if c1 != r2 {
                    continue;
                }
                let Some(p3) = positions.iter().position(|&q| q == (r1, c2)) else {
                    continue;
                };
                for i in 0..kb {
                    for j in 0..kb {
                        let prod = base.basis_products[i * kb + j];
                        products[(p1 * kb + i) * k + p2 * kb + j] = prod * slot(p3);
                    }
                }
            }
        }
        let diag: Elem = positions
            .iter()
            .enumerate()
            .filter(|(_, &(r, c))| r == c)
            .map(|(p, _)| base.one * slot(p))
            .sum();
        Self::new(format!("{name}({})", base.label), group, products, diag)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn basis_products(&self) -> &[Elem] {
        &self.basis_products
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.group.elements()
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.group.add(a, b)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.group.neg(a)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.group.sub(a, b)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_table {
            Some(t) => t[a * self.order() + b] as Elem,
            None => self.mul_bilinear(a, b),
        }
    }

    fn mul_bilinear(&self, a: Elem, b: Elem) -> Elem {
        let k = self.group.rank();
        let ca = self.group.coords(a);
        let cb = self.group.coords(b);
        let mut acc = self.zero();
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let coeff = x as i64 * y as i64;
                acc = self
                    .group
                    .add(acc, self.group.scale(coeff, self.basis_products[i * k + j]));
            }
        }
        acc
    }

    /// Each generator product must be killed by the orders of both factors, otherwise
    /// the bi-additive extension is not well defined.
    fn check_structure_constants(&self) -> Result<()> {
        let k = self.group.rank();
        let orders = self.group.orders();
        for i in 0..k {
            for j in 0..k {
                let g = gcd(orders[i] as u64, orders[j] as u64);
                let p = self.basis_products[i * k + j];
                if self.group.scale(g as i64, p) != self.zero() {
                    return Err(AlgebraError::InvalidRing(format!(
                        "{}: product of generators {i} and {j} has order not dividing {g}",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let basis = self.group.basis_elements();
        basis
            .iter()
            .all(|&a| basis.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, x: Elem) -> bool {
        self.group
            .basis_elements()
            .into_iter()
            .all(|b| self.mul(x, b) == self.mul(b, x))
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    /// All `x` with `x * x = x`, ascending.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn central_idempotents(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| self.is_idempotent(x) && self.is_central(x))
            .collect()
    }

    /// No central idempotents besides 0 and 1.
    pub fn is_indecomposable(&self) -> bool {
        self.central_idempotents().len() == 2
    }

    pub fn has_only_trivial_idempotents(&self) -> bool {
        self.idempotents().len() == 2
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.elements()
            .find(|&y| self.mul(x, y) == self.one && self.mul(y, x) == self.one)
    }

    /// Units paired with their inverses, ascending by unit.
    pub fn units(&self) -> Vec<(Elem, Elem)> {
        self.elements()
            .filter_map(|x| self.inverse(x).map(|y| (x, y)))
            .collect()
    }

    pub fn format(&self, x: Elem) -> String {
        self.group.format(x)
    }

    /// Exhaustive axiom scan: structure constants, identity on every element,
    /// associativity on all triples and distributivity spot checks against every
    /// generator.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new(format!("ring {}", self.label));
        report.record(
            "structure-constants",
            self.check_structure_constants().err().map(|e| e.to_string()),
        );
        report.record(
            "nonzero-identity",
            (self.one == self.zero()).then(|| "1 = 0".to_string()),
        );
        let identity = self.elements().find(|&x| {
            self.mul(self.one, x) != x || self.mul(x, self.one) != x
        });
        report.record(
            "identity",
            identity.map(|x| format!("x = {}", self.format(x))),
        );
        report.record("associativity", self.associativity_witness());
        let mut probes = self.group.basis_elements();
        probes.push(self.one);
        let mut distributive = None;
        'outer: for x in self.elements() {
            for y in self.elements() {
                for &z in &probes {
                    let yz = self.add(y, z);
                    if self.mul(x, yz) != self.add(self.mul(x, y), self.mul(x, z))
                        || self.mul(yz, x) != self.add(self.mul(y, x), self.mul(z, x))
                    {
                        distributive = Some(format!(
                            "({}, {}, {})",
                            self.format(x),
                            self.format(y),
                            self.format(z)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        report.record("distributivity", distributive);
        report
    }

    fn associativity_witness(&self) -> Option<String> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some(format!(
                            "({}, {}, {})",
                            self.format(a),
                            self.format(b),
                            self.format(c)
                        ));
                    }
                }
            }
        }
        None
    }
}
