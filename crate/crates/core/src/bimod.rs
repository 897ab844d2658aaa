//! Finite bimodules and semilinear bimodule isomorphisms.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::finalg::search::{search, Signature};
use crate::finalg::{is_bijection, same_ring, AbGroup, Elem, FinRing, RingIso, SearchOptions};
use crate::validation::ValidationReport;

/// A left `R`, right `S` bimodule with finite carrier.
///
/// Both actions are stored as full tables: `left[r * |M| + m] = r m` and
/// `right[m * |S| + s] = m s`.
#[derive(Clone)]
pub struct Bimodule {
    label: String,
    group: AbGroup,
    left: Arc<FinRing>,
    right: Arc<FinRing>,
    left_table: Vec<Elem>,
    right_table: Vec<Elem>,
}

impl PartialEq for Bimodule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && same_ring(&self.left, &other.left)
            && same_ring(&self.right, &other.right)
            && self.left_table == other.left_table
            && self.right_table == other.right_table
    }
}

impl Eq for Bimodule {}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule({}: {}-{}, order {})",
            self.label,
            self.left.label(),
            self.right.label(),
            self.order()
        )
    }
}

impl Bimodule {
    /// Builds the actions from structure constants and checks every axiom exhaustively.
    ///
    /// `left_basis[i * k_M + j]` is `e_i m_j` for ring generator `e_i`;
    /// `right_basis[j * k_S + i]` is `m_j f_i`.
    pub fn from_structure_constants(
        label: impl Into<String>,
        group: AbGroup,
        left: Arc<FinRing>,
        right: Arc<FinRing>,
        left_basis: Vec<Elem>,
        right_basis: Vec<Elem>,
    ) -> Result<Self> {
        let label = label.into();
        let (kr, km, ks) = (left.group().rank(), group.rank(), right.group().rank());
        if left_basis.len() != kr * km || right_basis.len() != km * ks {
            return Err(AlgebraError::InvalidBimodule(format!(
                "{label}: action constants have the wrong shape"
            )));
        }
        if left_basis
            .iter()
            .chain(&right_basis)
            .any(|&x| !group.contains(x))
        {
            return Err(AlgebraError::OutOfRange(format!("{label}: action constant")));
        }
        let bilinear = |ring: &FinRing, r_first: bool, consts: &[Elem], r: Elem, m: Elem| {
            let mut acc = group.zero();
            let kr = ring.group().rank();
            for i in 0..kr {
                let a = ring.group().coord(r, i) as i64;
                if a == 0 {
                    continue;
                }
                for j in 0..km {
                    let b = group.coord(m, j) as i64;
                    if b == 0 {
                        continue;
                    }
                    let c = if r_first {
                        consts[i * km + j]
                    } else {
                        consts[j * kr + i]
                    };
                    acc = group.add(acc, group.scale(a * b, c));
                }
            }
            acc
        };
        // Well-definedness of the bi-additive extension.
        for i in 0..kr {
            for j in 0..km {
                let g = gcd(left.group().orders()[i], group.orders()[j]);
                if group.scale(g as i64, left_basis[i * km + j]) != group.zero() {
                    return Err(AlgebraError::InvalidBimodule(format!(
                        "{label}: left action constant ({i},{j}) not killed by {g}"
                    )));
                }
            }
        }
        for j in 0..km {
            for i in 0..ks {
                let g = gcd(right.group().orders()[i], group.orders()[j]);
                if group.scale(g as i64, right_basis[j * ks + i]) != group.zero() {
                    return Err(AlgebraError::InvalidBimodule(format!(
                        "{label}: right action constant ({j},{i}) not killed by {g}"
                    )));
                }
            }
        }
        let left_table = left
            .elements()
            .flat_map(|r| group.elements().map(move |m| (r, m)))
            .map(|(r, m)| bilinear(&left, true, &left_basis, r, m))
            .collect();
        let right_table = group
            .elements()
            .flat_map(|m| right.elements().map(move |s| (m, s)))
            .map(|(m, s)| bilinear(&right, false, &right_basis, s, m))
            .collect();
        Self::from_tables(label, group, left, right, left_table, right_table)
    }

    /// Accepts full action tables after an exhaustive axiom check.
    pub fn from_tables(
        label: impl Into<String>,
        group: AbGroup,
        left: Arc<FinRing>,
        right: Arc<FinRing>,
        left_table: Vec<Elem>,
        right_table: Vec<Elem>,
    ) -> Result<Self> {
        let module = Self::from_tables_unchecked(label, group, left, right, left_table, right_table)?;
        let report = module.validate();
        if !report.passed() {
            return Err(AlgebraError::InvalidBimodule(report.summary()));
        }
        Ok(module)
    }

    /// Shape checks only; see [`Bimodule::validate`].
    pub fn from_tables_unchecked(
        label: impl Into<String>,
        group: AbGroup,
        left: Arc<FinRing>,
        right: Arc<FinRing>,
        left_table: Vec<Elem>,
        right_table: Vec<Elem>,
    ) -> Result<Self> {
        let label = label.into();
        let m = group.order();
        if left_table.len() != left.order() * m || right_table.len() != m * right.order() {
            return Err(AlgebraError::InvalidBimodule(format!(
                "{label}: action tables have the wrong size"
            )));
        }
        if left_table.iter().chain(&right_table).any(|&x| x >= m) {
            return Err(AlgebraError::OutOfRange(format!("{label}: action value")));
        }
        Ok(Self {
            label,
            group,
            left,
            right,
            left_table,
            right_table,
        })
    }

    /// The one-element bimodule.
    pub fn zero(left: Arc<FinRing>, right: Arc<FinRing>) -> Self {
        let (nl, nr) = (left.order(), right.order());
        Self {
            label: "0".into(),
            group: AbGroup::trivial(),
            left,
            right,
            left_table: vec![0; nl],
            right_table: vec![0; nr],
        }
    }

    /// `R` as an `R`-`R` bimodule through its own multiplication.
    pub fn regular(ring: Arc<FinRing>) -> Self {
        let table: Vec<Elem> = ring
            .elements()
            .flat_map(|a| ring.elements().map(move |b| (a, b)))
            .map(|(a, b)| ring.mul(a, b))
            .collect();
        Self {
            label: ring.label().to_string(),
            group: ring.group().clone(),
            left: ring.clone(),
            right: ring,
            left_table: table.clone(),
            right_table: table,
        }
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

    pub fn left_ring(&self) -> &Arc<FinRing> {
        &self.left
    }

    pub fn right_ring(&self) -> &Arc<FinRing> {
        &self.right
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.group.elements()
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

    /// `r m`.
    #[inline]
    pub fn act_left(&self, r: Elem, m: Elem) -> Elem {
        self.left_table[r * self.order() + m]
    }

    /// `m s`.
    #[inline]
    pub fn act_right(&self, m: Elem, s: Elem) -> Elem {
        self.right_table[m * self.right.order() + s]
    }

    pub fn format(&self, m: Elem) -> String {
        self.group.format(m)
    }

    /// Exhaustive check of additivity, unitality, associativity and compatibility of
    /// the two actions.
    pub fn validate(&self) -> ValidationReport {
        let (r, s) = (self.left.as_ref(), self.right.as_ref());
        let fm = |m: Elem| self.format(m);
        let mut report = ValidationReport::new(format!("bimodule {}", self.label));

        let mut w = None;
        'l: for a in r.elements() {
            for m in self.elements() {
                for x in self.elements() {
                    if self.act_left(a, self.add(m, x)) != self.add(self.act_left(a, m), self.act_left(a, x)) {
                        w = Some(format!("r={}, m={}, m'={}", r.format(a), fm(m), fm(x)));
                        break 'l;
                    }
                }
                for b in r.elements() {
                    if self.act_left(r.add(a, b), m) != self.add(self.act_left(a, m), self.act_left(b, m)) {
                        w = Some(format!("r={}, r'={}, m={}", r.format(a), r.format(b), fm(m)));
                        break 'l;
                    }
                }
            }
        }
        report.record("left-additive", w);

        let mut w = None;
        'r: for m in self.elements() {
            for b in s.elements() {
                for x in self.elements() {
                    if self.act_right(self.add(m, x), b) != self.add(self.act_right(m, b), self.act_right(x, b)) {
                        w = Some(format!("m={}, m'={}, s={}", fm(m), fm(x), s.format(b)));
                        break 'r;
                    }
                }
                for c in s.elements() {
                    if self.act_right(m, s.add(b, c)) != self.add(self.act_right(m, b), self.act_right(m, c)) {
                        w = Some(format!("m={}, s={}, s'={}", fm(m), s.format(b), s.format(c)));
                        break 'r;
                    }
                }
            }
        }
        report.record("right-additive", w);

        let w = self
            .elements()
            .find(|&m| self.act_left(r.one(), m) != m || self.act_right(m, s.one()) != m)
            .map(|m| format!("m={}", fm(m)));
        report.record("unital", w);

        let mut w = None;
        'la: for a in r.elements() {
            for b in r.elements() {
                let ab = r.mul(a, b);
                for m in self.elements() {
                    if self.act_left(ab, m) != self.act_left(a, self.act_left(b, m)) {
                        w = Some(format!("r={}, r'={}, m={}", r.format(a), r.format(b), fm(m)));
                        break 'la;
                    }
                }
            }
        }
        report.record("left-associative", w);

        let mut w = None;
        'ra: for m in self.elements() {
            for b in s.elements() {
                for c in s.elements() {
                    if self.act_right(m, s.mul(b, c)) != self.act_right(self.act_right(m, b), c) {
                        w = Some(format!("m={}, s={}, s'={}", fm(m), s.format(b), s.format(c)));
                        break 'ra;
                    }
                }
            }
        }
        report.record("right-associative", w);

        let mut w = None;
        'c: for a in r.elements() {
            for m in self.elements() {
                let am = self.act_left(a, m);
                for b in s.elements() {
                    if self.act_right(am, b) != self.act_left(a, self.act_right(m, b)) {
                        w = Some(format!("r={}, m={}, s={}", r.format(a), fm(m), s.format(b)));
                        break 'c;
                    }
                }
            }
        }
        report.record("compatible", w);
        report
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An additive map between bimodules together with the ring isomorphisms that govern
/// its semilinearity: `u(r m s) = left_iso(r) u(m) right_iso(s)`.
#[derive(Clone)]
pub struct BimoduleMap {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    table: Vec<Elem>,
    left_iso: RingIso,
    right_iso: RingIso,
}

impl PartialEq for BimoduleMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && self.left_iso == other.left_iso
            && self.right_iso == other.right_iso
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

impl Eq for BimoduleMap {}

impl fmt::Debug for BimoduleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BimoduleMap({} -> {}, {:?})",
            self.source.label(),
            self.target.label(),
            self.table
        )
    }
}

fn check_wiring(
    source: &Bimodule,
    target: &Bimodule,
    left_iso: &RingIso,
    right_iso: &RingIso,
) -> Result<()> {
    let ok = same_ring(left_iso.source(), source.left_ring())
        && same_ring(left_iso.target(), target.left_ring())
        && same_ring(right_iso.source(), source.right_ring())
        && same_ring(right_iso.target(), target.right_ring());
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::Wiring(format!(
            "ring isomorphisms {} -> {} and {} -> {} do not match bimodules {} -> {}",
            left_iso.source().label(),
            left_iso.target().label(),
            right_iso.source().label(),
            right_iso.target().label(),
            source.label(),
            target.label()
        )))
    }
}

impl BimoduleMap {
    /// Wires a function table to its governing ring isomorphisms. No semilinearity is
    /// required; see [`BimoduleMap::is_semilinear_iso`].
    pub fn new(
        source: Arc<Bimodule>,
        target: Arc<Bimodule>,
        table: Vec<Elem>,
        left_iso: RingIso,
        right_iso: RingIso,
    ) -> Result<Self> {
        check_wiring(&source, &target, &left_iso, &right_iso)?;
        if table.len() != source.order() || table.iter().any(|&y| y >= target.order()) {
            return Err(AlgebraError::OutOfRange(format!(
                "map table for {} -> {}",
                source.label(),
                target.label()
            )));
        }
        Ok(Self {
            source,
            target,
            table,
            left_iso,
            right_iso,
        })
    }

    /// Like [`BimoduleMap::new`] but rejects anything that is not a semilinear
    /// isomorphism.
    pub fn semilinear_iso(
        source: Arc<Bimodule>,
        target: Arc<Bimodule>,
        table: Vec<Elem>,
        left_iso: RingIso,
        right_iso: RingIso,
    ) -> Result<Self> {
        let map = Self::new(source, target, table, left_iso, right_iso)?;
        if !map.is_semilinear_iso() {
            return Err(AlgebraError::NotAnIsomorphism(format!(
                "{} -> {} is not a semilinear isomorphism",
                map.source.label(),
                map.target.label()
            )));
        }
        Ok(map)
    }

    pub(crate) fn trusted(
        source: Arc<Bimodule>,
        target: Arc<Bimodule>,
        table: Vec<Elem>,
        left_iso: RingIso,
        right_iso: RingIso,
    ) -> Self {
        Self {
            source,
            target,
            table,
            left_iso,
            right_iso,
        }
    }

    pub fn identity(module: Arc<Bimodule>) -> Self {
        let left = RingIso::identity(module.left_ring().clone());
        let right = RingIso::identity(module.right_ring().clone());
        Self {
            table: module.elements().collect(),
            source: module.clone(),
            target: module,
            left_iso: left,
            right_iso: right,
        }
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn left_iso(&self) -> &RingIso {
        &self.left_iso
    }

    pub fn right_iso(&self) -> &RingIso {
        &self.right_iso
    }

    #[inline]
    pub fn apply(&self, m: Elem) -> Elem {
        self.table[m]
    }

    /// Additive, bijective, `u(rm) = γ(r)u(m)` and `u(ms) = u(m)δ(s)`.
    ///
    /// The two one-sided identities imply `u(rms) = γ(r)u(m)δ(s)`.
    pub fn is_semilinear_iso(&self) -> bool {
        let (m, t) = (self.source.as_ref(), self.target.as_ref());
        if !is_bijection(&self.table, t.order()) {
            return false;
        }
        let additive = m
            .elements()
            .all(|a| m.elements().all(|b| self.apply(m.add(a, b)) == t.add(self.apply(a), self.apply(b))));
        if !additive {
            return false;
        }
        let left = m.left_ring().elements().all(|r| {
            let gr = self.left_iso.apply(r);
            m.elements()
                .all(|x| self.apply(m.act_left(r, x)) == t.act_left(gr, self.apply(x)))
        });
        let right = m.right_ring().elements().all(|s| {
            let ds = self.right_iso.apply(s);
            m.elements()
                .all(|x| self.apply(m.act_right(x, s)) == t.act_right(self.apply(x), ds))
        });
        left && right
    }

    /// The inverse map, semilinear over the inverse ring isomorphisms. Fails when the
    /// table is not a bijection.
    pub fn inverse(&self) -> Result<BimoduleMap> {
        if !is_bijection(&self.table, self.target.order()) {
            return Err(AlgebraError::NotAnIsomorphism(format!(
                "{} -> {} is not bijective",
                self.source.label(),
                self.target.label()
            )));
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Ok(Self {
            source: self.target.clone(),
            target: self.source.clone(),
            table: inv,
            left_iso: self.left_iso.inverse(),
            right_iso: self.right_iso.inverse(),
        })
    }

    /// `next ∘ self`, governed by the composed ring isomorphisms.
    pub fn then(&self, next: &BimoduleMap) -> Result<BimoduleMap> {
        if *self.target != *next.source {
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
            left_iso: self.left_iso.then(&next.left_iso)?,
            right_iso: self.right_iso.then(&next.right_iso)?,
        })
    }
}

struct SemilinearSignature<'a> {
    source: &'a Bimodule,
    target: &'a Bimodule,
    left_gens: Vec<(Elem, Elem)>,
    right_gens: Vec<(Elem, Elem)>,
}

impl Signature for SemilinearSignature<'_> {
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
        vec![(0, 0)]
    }
    fn unary_count(&self) -> usize {
        self.left_gens.len() + self.right_gens.len()
    }
    fn source_unary(&self, op: usize, a: Elem) -> Elem {
        match self.left_gens.get(op) {
            Some(&(r, _)) => self.source.act_left(r, a),
            None => self.source.act_right(a, self.right_gens[op - self.left_gens.len()].0),
        }
    }
    fn target_unary(&self, op: usize, a: Elem) -> Elem {
        match self.left_gens.get(op) {
            Some(&(_, r)) => self.target.act_left(r, a),
            None => self.target.act_right(a, self.right_gens[op - self.left_gens.len()].1),
        }
    }
}

/// Every `(gamma, delta)`-semilinear isomorphism `source -> target`, ordered by the
/// images of the source's generators.
pub fn enumerate_semilinear_isos(
    source: &Arc<Bimodule>,
    target: &Arc<Bimodule>,
    gamma: &RingIso,
    delta: &RingIso,
    options: SearchOptions,
) -> Result<Vec<BimoduleMap>> {
    check_wiring(source, target, gamma, delta)?;
    if source.order() != target.order() {
        return Ok(Vec::new());
    }
    options.check(source.order())?;
    let gens = |iso: &RingIso| -> Vec<(Elem, Elem)> {
        let mut g = iso.source().group().basis_elements();
        g.push(iso.source().one());
        g.into_iter().map(|r| (r, iso.apply(r))).collect()
    };
    let sig = SemilinearSignature {
        source,
        target,
        left_gens: gens(gamma),
        right_gens: gens(delta),
    };
    Ok(search(&sig, options.parallel)
        .into_iter()
        .map(|t| BimoduleMap::trusted(source.clone(), target.clone(), t, gamma.clone(), delta.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u32) -> Arc<FinRing> {
        Arc::new(FinRing::cyclic(n).unwrap())
    }

    fn id(r: &Arc<FinRing>) -> RingIso {
        RingIso::identity(r.clone())
    }

    #[test]
    fn regular_and_zero_validate() {
        for n in [2, 3, 4, 6] {
            let r = ring(n);
            let reg = Bimodule::regular(r.clone());
            assert!(reg.validate().passed());
            for a in r.elements() {
                for b in r.elements() {
                    assert_eq!(reg.act_left(a, b), r.mul(a, b));
                    assert_eq!(reg.act_right(a, b), r.mul(a, b));
                }
            }
        }
        let z = Bimodule::zero(ring(2), ring(2));
        assert_eq!(z.order(), 1);
        assert!(z.validate().passed());
        let z = Bimodule::zero(ring(4), ring(6));
        assert_eq!(z.order(), 1);
        assert!(z.validate().passed());
    }

    #[test]
    fn incompatible_actions_fail_with_witness() {
        // Z/2 bimodule over F_2 x F_2 acting on the left through the first factor and
        // on the right through... a left action that is not a ring action on the right
        // side: use F_2 carrier with the right action of F_2 corrupted at (1, 1) -> 0.
        let f2 = ring(2);
        let m = Bimodule::from_tables_unchecked(
            "bad",
            AbGroup::cyclic(2).unwrap(),
            f2.clone(),
            f2.clone(),
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 0],
        )
        .unwrap();
        let report = m.validate();
        assert!(!report.passed());
        assert!(report.check("unital").unwrap().witness.is_some());
        assert!(Bimodule::from_tables(
            "bad",
            AbGroup::cyclic(2).unwrap(),
            f2.clone(),
            f2,
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 0],
        )
        .is_err());
    }

    #[test]
    fn compatibility_failure_is_witnessed() {
        // Dual numbers F_2[x]/(x^2) acting on F_2^2: x acts on the left by the matrix
        // [[0,1],[0,0]] and on the right by [[0,0],[1,0]]. Each action is fine on its
        // own, but the two do not commute.
        let dual = Arc::new(
            FinRing::new("F_2[x]/(x^2)", AbGroup::new(vec![2, 2]).unwrap(), vec![1, 2, 2, 0], 1)
                .unwrap(),
        );
        let err = Bimodule::from_structure_constants(
            "twisted",
            AbGroup::new(vec![2, 2]).unwrap(),
            dual.clone(),
            dual,
            vec![1, 2, 0, 1],
            vec![1, 2, 2, 0],
        )
        .unwrap_err();
        let AlgebraError::InvalidBimodule(msg) = err else {
            panic!("unexpected error {err:?}");
        };
        assert!(msg.contains("compatible (r="), "{msg}");
        assert!(!msg.contains("associative"), "{msg}");
    }

    #[test]
    fn identity_and_negation_are_semilinear() {
        let f3 = ring(3);
        let m = Arc::new(Bimodule::regular(f3.clone()));
        let identity = BimoduleMap::identity(m.clone());
        assert!(identity.is_semilinear_iso());
        let neg: Vec<Elem> = m.elements().map(|x| m.neg(x)).collect();
        let neg = BimoduleMap::new(m.clone(), m.clone(), neg, id(&f3), id(&f3)).unwrap();
        assert!(neg.is_semilinear_iso());
        let zero_map = BimoduleMap::new(m.clone(), m.clone(), vec![0; 3], id(&f3), id(&f3)).unwrap();
        assert!(!zero_map.is_semilinear_iso());
    }

    #[test]
    fn wiring_errors() {
        let f2 = ring(2);
        let f3 = ring(3);
        let m = Arc::new(Bimodule::regular(f2.clone()));
        let err = enumerate_semilinear_isos(&m, &m, &id(&f3), &id(&f2), SearchOptions::default());
        assert!(matches!(err, Err(AlgebraError::Wiring(_))));
        assert!(matches!(
            BimoduleMap::new(m.clone(), m, vec![0, 1], id(&f2), id(&f3)),
            Err(AlgebraError::Wiring(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let f2 = ring(2);
        let m2 = Arc::new(Bimodule::regular(f2.clone()));
        let isos = enumerate_semilinear_isos(&m2, &m2, &id(&f2), &id(&f2), SearchOptions::default()).unwrap();
        assert_eq!(isos.len(), 1);
        assert_eq!(isos[0], BimoduleMap::identity(m2.clone()));

        let f3 = ring(3);
        let m3 = Arc::new(Bimodule::regular(f3.clone()));
        let isos = enumerate_semilinear_isos(&m3, &m3, &id(&f3), &id(&f3), SearchOptions::default()).unwrap();
        // Exhaustive oracle: every additive bijection of Z/3 checked directly.
        let oracle: Vec<Vec<Elem>> = [vec![0, 1, 2], vec![0, 2, 1]]
            .into_iter()
            .filter(|t| {
                BimoduleMap::new(m3.clone(), m3.clone(), t.clone(), id(&f3), id(&f3))
                    .unwrap()
                    .is_semilinear_iso()
            })
            .collect();
        let found: Vec<Vec<Elem>> = isos.iter().map(|u| u.table().to_vec()).collect();
        assert_eq!(found, oracle);
        assert_eq!(found.len(), 2);

        let zero = Arc::new(Bimodule::zero(f2.clone(), f2.clone()));
        assert!(enumerate_semilinear_isos(&m2, &zero, &id(&f2), &id(&f2), SearchOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn inverse_and_composition() {
        let z4 = ring(4);
        let m = Arc::new(Bimodule::regular(z4.clone()));
        let isos = enumerate_semilinear_isos(&m, &m, &id(&z4), &id(&z4), SearchOptions::default()).unwrap();
        assert_eq!(isos.len(), 2);
        for u in &isos {
            let inv = u.inverse().unwrap();
            assert!(inv.is_semilinear_iso());
            assert_eq!(u.then(&inv).unwrap(), BimoduleMap::identity(m.clone()));
            for v in &isos {
                assert!(u.then(v).unwrap().is_semilinear_iso());
            }
        }
    }
}
