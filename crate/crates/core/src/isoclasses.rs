//! Six-tuples describing isomorphisms between context rings, and maps between
//! context rings with their grade behaviour.
//!
//! A class-0 tuple `(γ, δ, u, v, m0, n0)` realizes
//! `(r, m, n, s) -> (γr, γ(r)m0 - m0δ(s) + u(m), n0γ(r) - δ(s)n0 + v(n), δs)`.
//! A class-1 tuple `(ρ, σ, μ, ν, m*, n*)` realizes
//! `(r, m, n, s) -> (σs, m*ρ(r) - σ(s)m* + ν(n), ρ(r)n* - n*σ(s) + μ(m), ρr)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bimod::{enumerate_semilinear_isos, Bimodule, BimoduleMap};
use crate::context::{ContextRing, Grade};
use crate::error::{AlgebraError, Result};
use crate::finalg::{ring_isos_bruteforce, same_ring, Elem, MapFlags, RingIso, SearchOptions};
use crate::validation::ValidationReport;

/// Which of the four grade conditions a map satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GradeProfile {
    /// `φ(T_i) ⊆ T'_i` for `i ∈ {-1, 0, 1}`.
    pub graded: bool,
    /// `φ(T_i) ⊆ T'_{-i}`.
    pub antigraded: bool,
    /// `φ(T_i) ⊆ T'_i` for `i ∈ {-1, 1}`.
    pub semigraded: bool,
    /// `φ(T_i) ⊆ T'_{-i}` for `i ∈ {-1, 1}`.
    pub antisemigraded: bool,
}

/// A function between two context rings with exhaustively decided flags.
#[derive(Clone)]
pub struct RingMap {
    source: Arc<ContextRing>,
    target: Arc<ContextRing>,
    table: Vec<Elem>,
    flags: MapFlags,
    grades: GradeProfile,
}

impl PartialEq for RingMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && same_context(&self.source, &other.source) && same_context(&self.target, &other.target)
    }
}

impl Eq for RingMap {}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMap({} -> {}, {:?})", self.source.label(), self.target.label(), self.table)
    }
}

pub(crate) fn same_context(a: &Arc<ContextRing>, b: &Arc<ContextRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RingMap {
    pub fn new(source: Arc<ContextRing>, target: Arc<ContextRing>, table: Vec<Elem>) -> Result<Self> {
        if table.len() != source.order() || table.iter().any(|&y| y >= target.order()) {
            return Err(AlgebraError::OutOfRange(format!(
                "map table for {} -> {}",
                source.label(),
                target.label()
            )));
        }
        let flags = MapFlags::of(source.ring(), target.ring(), &table);
        let grades = profile(&source, &target, &table);
        Ok(Self {
            source,
            target,
            table,
            flags,
            grades,
        })
    }

    /// Wraps an isomorphism of the realized rings.
    pub fn from_iso(source: Arc<ContextRing>, target: Arc<ContextRing>, iso: &RingIso) -> Result<Self> {
        if !same_ring(iso.source(), source.ring()) || !same_ring(iso.target(), target.ring()) {
            return Err(AlgebraError::Wiring(format!(
                "{} -> {} is not a map {} -> {}",
                iso.source().label(),
                iso.target().label(),
                source.label(),
                target.label()
            )));
        }
        Self::new(source, target, iso.table().to_vec())
    }

    pub fn identity(ring: Arc<ContextRing>) -> Self {
        let table = ring.ring().elements().collect();
        Self::new(ring.clone(), ring, table).expect("identity table is in range")
    }

    pub fn source(&self) -> &Arc<ContextRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ContextRing> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn flags(&self) -> MapFlags {
        self.flags
    }

    pub fn grades(&self) -> GradeProfile {
        self.grades
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    pub fn is_isomorphism(&self) -> bool {
        self.flags.is_isomorphism()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingMap) -> Result<RingMap> {
        if !same_context(&self.target, &next.source) {
            return Err(AlgebraError::Wiring(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.label(),
                self.target.label(),
                next.source.label(),
                next.target.label()
            )));
        }
        Self::new(
            self.source.clone(),
            next.target.clone(),
            self.table.iter().map(|&x| next.table[x]).collect(),
        )
    }

    pub fn inverse(&self) -> Result<RingMap> {
        if !self.flags.bijective {
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
        Self::new(self.target.clone(), self.source.clone(), inv)
    }

    pub fn to_ring_iso(&self) -> Result<RingIso> {
        RingIso::new(self.source.ring().clone(), self.target.ring().clone(), self.table.clone())
    }

    pub fn record(&self, full: bool) -> MapRecord {
        MapRecord {
            source: self.source.label().to_string(),
            target: self.target.label().to_string(),
            flags: self.flags,
            grades: self.grades,
            image_of_e11: self.target.format(self.apply(self.source.e11())),
            table: full.then(|| self.table.clone()),
            table_sha256: table_hash(&self.table),
        }
    }
}

/// Serializable view of a [`RingMap`].
#[derive(Debug, Clone, Serialize)]
pub struct MapRecord {
    pub source: String,
    pub target: String,
    pub flags: MapFlags,
    pub grades: GradeProfile,
    pub image_of_e11: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Elem>>,
    pub table_sha256: String,
}

pub(crate) fn table_hash(table: &[Elem]) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    for &x in table {
        h.update((x as u64).to_le_bytes());
    }
    hex::encode(h.finalize())
}

fn profile(source: &ContextRing, target: &ContextRing, table: &[Elem]) -> GradeProfile {
    let lands = |from: Grade, to: Grade| source.component(from).into_iter().all(|x| target.in_component(table[x], to));
    let (mm, mp) = (lands(Grade::Minus, Grade::Minus), lands(Grade::Plus, Grade::Plus));
    let (swap_m, swap_p) = (lands(Grade::Minus, Grade::Plus), lands(Grade::Plus, Grade::Minus));
    let zero = lands(Grade::Zero, Grade::Zero);
    GradeProfile {
        graded: mm && mp && zero,
        antigraded: swap_m && swap_p && zero,
        semigraded: mm && mp,
        antisemigraded: swap_m && swap_p,
    }
}

/// Exhaustive grade checks of `phi`'s images of `T_{-1}`, `T_0`, `T_1`.
pub fn grade_predicates(phi: &RingMap) -> GradeProfile {
    phi.grades
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TupleKind {
    Class0,
    Class1,
}

impl fmt::Display for TupleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TupleKind::Class0 => "class0",
            TupleKind::Class1 => "class1",
        })
    }
}

/// `(γ, δ, u, v, m0, n0)` for class 0 or `(ρ, σ, μ, ν, m*, n*)` for class 1.
///
/// Positionally the two kinds share storage: `first`/`second` hold `γ`/`δ` or `ρ`/`σ`,
/// `maps` holds `(u, v)` or `(μ, ν)`, and `m`, `n` are the entries in `M'` and `N'`.
#[derive(Clone, PartialEq, Eq)]
pub struct SixTuple {
    kind: TupleKind,
    source: Arc<ContextRing>,
    target: Arc<ContextRing>,
    first: RingIso,
    second: RingIso,
    maps: (BimoduleMap, BimoduleMap),
    m: Elem,
    n: Elem,
}

impl fmt::Debug for SixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SixTuple({}, {} -> {}, {:?}, {:?}, {:?}, {:?}, {}, {})",
            self.kind,
            self.source.label(),
            self.target.label(),
            self.first.table(),
            self.second.table(),
            self.maps.0.table(),
            self.maps.1.table(),
            self.m,
            self.n
        )
    }
}

fn wiring_error(what: &str) -> AlgebraError {
    AlgebraError::Wiring(what.to_string())
}

fn module_is(map_side: &Arc<Bimodule>, expected: &Arc<Bimodule>) -> bool {
    Arc::ptr_eq(map_side, expected) || **map_side == **expected
}

impl SixTuple {
    /// Class-0 tuple `T -> T'`; checks that every component has the right endpoints.
    #[allow(clippy::too_many_arguments)]
    pub fn class0(
        source: Arc<ContextRing>,
        target: Arc<ContextRing>,
        gamma: RingIso,
        delta: RingIso,
        u: BimoduleMap,
        v: BimoduleMap,
        m0: Elem,
        n0: Elem,
    ) -> Result<Self> {
        let (c, d) = (source.context(), target.context());
        if !same_ring(gamma.source(), c.r()) || !same_ring(gamma.target(), d.r()) {
            return Err(wiring_error("gamma must map R to R'"));
        }
        if !same_ring(delta.source(), c.s()) || !same_ring(delta.target(), d.s()) {
            return Err(wiring_error("delta must map S to S'"));
        }
        if !module_is(u.source(), c.m()) || !module_is(u.target(), d.m()) || *u.left_iso() != gamma || *u.right_iso() != delta {
            return Err(wiring_error("u must be a (gamma, delta)-map M -> M'"));
        }
        if !module_is(v.source(), c.n()) || !module_is(v.target(), d.n()) || *v.left_iso() != delta || *v.right_iso() != gamma {
            return Err(wiring_error("v must be a (delta, gamma)-map N -> N'"));
        }
        if m0 >= d.m().order() || n0 >= d.n().order() {
            return Err(AlgebraError::OutOfRange("m0 or n0".into()));
        }
        Ok(Self {
            kind: TupleKind::Class0,
            source,
            target,
            first: gamma,
            second: delta,
            maps: (u, v),
            m: m0,
            n: n0,
        })
    }

    /// Class-1 tuple `T -> T'`.
    #[allow(clippy::too_many_arguments)]
    pub fn class1(
        source: Arc<ContextRing>,
        target: Arc<ContextRing>,
        rho: RingIso,
        sigma: RingIso,
        mu: BimoduleMap,
        nu: BimoduleMap,
        mstar: Elem,
        nstar: Elem,
    ) -> Result<Self> {
        let (c, d) = (source.context(), target.context());
        if !same_ring(rho.source(), c.r()) || !same_ring(rho.target(), d.s()) {
            return Err(wiring_error("rho must map R to S'"));
        }
        if !same_ring(sigma.source(), c.s()) || !same_ring(sigma.target(), d.r()) {
            return Err(wiring_error("sigma must map S to R'"));
        }
        if !module_is(mu.source(), c.m()) || !module_is(mu.target(), d.n()) || *mu.left_iso() != rho || *mu.right_iso() != sigma {
            return Err(wiring_error("mu must be a (rho, sigma)-map M -> N'"));
        }
        if !module_is(nu.source(), c.n()) || !module_is(nu.target(), d.m()) || *nu.left_iso() != sigma || *nu.right_iso() != rho {
            return Err(wiring_error("nu must be a (sigma, rho)-map N -> M'"));
        }
        if mstar >= d.m().order() || nstar >= d.n().order() {
            return Err(AlgebraError::OutOfRange("m* or n*".into()));
        }
        Ok(Self {
            kind: TupleKind::Class1,
            source,
            target,
            first: rho,
            second: sigma,
            maps: (mu, nu),
            m: mstar,
            n: nstar,
        })
    }

    /// `(id, id, id, id, 0, 0)`.
    pub fn identity(ring: Arc<ContextRing>) -> Self {
        let c = ring.context().clone();
        Self::class0(
            ring.clone(),
            ring,
            RingIso::identity(c.r().clone()),
            RingIso::identity(c.s().clone()),
            BimoduleMap::identity(c.m().clone()),
            BimoduleMap::identity(c.n().clone()),
            0,
            0,
        )
        .expect("identity tuple is wired")
    }

    pub fn kind(&self) -> TupleKind {
        self.kind
    }

    pub fn source(&self) -> &Arc<ContextRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ContextRing> {
        &self.target
    }

    /// `γ` for class 0, `ρ` for class 1.
    pub fn first_iso(&self) -> &RingIso {
        &self.first
    }

    /// `δ` for class 0, `σ` for class 1.
    pub fn second_iso(&self) -> &RingIso {
        &self.second
    }

    /// `u` for class 0, `μ` for class 1.
    pub fn first_map(&self) -> &BimoduleMap {
        &self.maps.0
    }

    /// `v` for class 0, `ν` for class 1.
    pub fn second_map(&self) -> &BimoduleMap {
        &self.maps.1
    }

    /// `m0` or `m*`, an element of `M'`.
    pub fn m_entry(&self) -> Elem {
        self.m
    }

    /// `n0` or `n*`, an element of `N'`.
    pub fn n_entry(&self) -> Elem {
        self.n
    }

    pub fn validate(&self) -> ValidationReport {
        let d = self.target.context();
        let (m2, n2) = (d.m(), d.n());
        let mut report = ValidationReport::new(format!(
            "{} tuple {} -> {}",
            self.kind,
            self.source.label(),
            self.target.label()
        ));
        let (mx, nx) = (self.m, self.n);
        let w = n2
            .elements()
            .find(|&y| d.bracket(mx, y) != 0 || d.paren(y, mx) != 0)
            .map(|y| format!("n'={}", n2.format(y)));
        report.record("annihilates-m", w);
        let w = m2
            .elements()
            .find(|&x| d.bracket(x, nx) != 0 || d.paren(nx, x) != 0)
            .map(|x| format!("m'={}", m2.format(x)));
        report.record("annihilates-n", w);

        let c = self.source.context();
        let (p, q) = (&self.maps.0, &self.maps.1);
        let w = if c.has_zero_maps() && d.has_zero_maps() {
            None
        } else {
            let mut found = None;
            'outer: for x in c.m().elements() {
                for y in c.n().elements() {
                    let ok = match self.kind {
                        TupleKind::Class0 => {
                            d.bracket(p.apply(x), q.apply(y)) == self.first.apply(c.bracket(x, y))
                                && d.paren(q.apply(y), p.apply(x)) == self.second.apply(c.paren(y, x))
                        }
                        TupleKind::Class1 => {
                            d.paren(p.apply(x), q.apply(y)) == self.first.apply(c.bracket(x, y))
                                && d.bracket(q.apply(y), p.apply(x)) == self.second.apply(c.paren(y, x))
                        }
                    };
                    if !ok {
                        found = Some(format!("m={}, n={}", c.m().format(x), c.n().format(y)));
                        break 'outer;
                    }
                }
            }
            found
        };
        report.record("pairings-intertwined", w);
        report.record(
            "first-map-semilinear",
            (!p.is_semilinear_iso()).then(|| format!("{:?}", p.table())),
        );
        report.record(
            "second-map-semilinear",
            (!q.is_semilinear_iso()).then(|| format!("{:?}", q.table())),
        );
        report
    }

    /// The realized map, without checking the tuple first.
    pub fn realize_unchecked(&self) -> Result<RingMap> {
        let (t, t2) = (&self.source, &self.target);
        let d = t2.context();
        let (m2, n2) = (d.m(), d.n());
        let (p, q) = (&self.maps.0, &self.maps.1);
        let (mx, nx) = (self.m, self.n);
        let table = t
            .ring()
            .elements()
            .map(|x| {
                let (r, m, n, s) = t.split(x);
                match self.kind {
                    TupleKind::Class0 => {
                        let (gr, ds) = (self.first.apply(r), self.second.apply(s));
                        t2.join(
                            gr,
                            m2.add(m2.sub(m2.act_left(gr, mx), m2.act_right(mx, ds)), p.apply(m)),
                            n2.add(n2.sub(n2.act_right(nx, gr), n2.act_left(ds, nx)), q.apply(n)),
                            ds,
                        )
                    }
                    TupleKind::Class1 => {
                        let (rr, ss) = (self.first.apply(r), self.second.apply(s));
                        t2.join(
                            ss,
                            m2.add(m2.sub(m2.act_right(mx, rr), m2.act_left(ss, mx)), q.apply(n)),
                            n2.add(n2.sub(n2.act_left(rr, nx), n2.act_right(nx, ss)), p.apply(m)),
                            rr,
                        )
                    }
                }
            })
            .collect();
        RingMap::new(t.clone(), t2.clone(), table)
    }

    pub fn record(&self) -> TupleRecord {
        let d = self.target.context();
        TupleRecord {
            kind: self.kind,
            ring_isos: [self.first.table().to_vec(), self.second.table().to_vec()],
            bimodule_maps: [self.maps.0.table().to_vec(), self.maps.1.table().to_vec()],
            m_entry: d.m().format(self.m),
            n_entry: d.n().format(self.n),
        }
    }
}

/// Serializable view of a [`SixTuple`].
#[derive(Debug, Clone, Serialize)]
pub struct TupleRecord {
    pub kind: TupleKind,
    pub ring_isos: [Vec<Elem>; 2],
    pub bimodule_maps: [Vec<Elem>; 2],
    pub m_entry: String,
    pub n_entry: String,
}

pub fn validate_six_tuple(t: &SixTuple) -> ValidationReport {
    t.validate()
}

/// The ring map defined by a valid tuple.
pub fn realize(t: &SixTuple) -> Result<RingMap> {
    let report = t.validate();
    if !report.passed() {
        return Err(AlgebraError::InvalidTuple(report.summary()));
    }
    t.realize_unchecked()
}

/// Result of [`membership_test`].
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Class0(SixTuple),
    Class1(SixTuple),
    /// Kept for completeness; a map fixing and swapping the diagonal at once needs a
    /// zero ring, which the constructors reject.
    Both(SixTuple, SixTuple),
    Neither,
}

impl Membership {
    pub fn label(&self) -> &'static str {
        match self {
            Membership::Class0(_) => "class0",
            Membership::Class1(_) => "class1",
            Membership::Both(..) => "both",
            Membership::Neither => "neither",
        }
    }

    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::Neither)
    }
}

/// Decides whether an isomorphism comes from a tuple of either class by reading the
/// candidate tuple off `φ(E11)` and the images of the homogeneous pieces.
pub fn membership_test(phi: &RingMap) -> Result<Membership> {
    if !phi.is_isomorphism() {
        return Err(AlgebraError::NotAnIsomorphism(format!(
            "{} -> {}: {:?}",
            phi.source.label(),
            phi.target.label(),
            phi.flags
        )));
    }
    let c0 = read_tuple(phi, TupleKind::Class0);
    let c1 = read_tuple(phi, TupleKind::Class1);
    Ok(match (c0, c1) {
        (Some(a), Some(b)) => Membership::Both(a, b),
        (Some(a), None) => Membership::Class0(a),
        (None, Some(b)) => Membership::Class1(b),
        (None, None) => Membership::Neither,
    })
}

fn read_tuple(phi: &RingMap, kind: TupleKind) -> Option<SixTuple> {
    let (t, t2) = (&phi.source, &phi.target);
    let (c, d) = (t.context(), t2.context());
    let split = |x: Elem| t2.split(phi.apply(x));
    // Which entry of the image carries each component.
    let pick = |q: (Elem, Elem, Elem, Elem), slot: usize| match slot {
        0 => q.0,
        1 => q.1,
        2 => q.2,
        _ => q.3,
    };
    // class0: R -> R' (slot 0), S -> S' (3), M -> M' (1), N -> N' (2)
    // class1: R -> S' (slot 3), S -> R' (0), M -> N' (2), N -> M' (1)
    let (r_slot, s_slot, m_slot, n_slot) = match kind {
        TupleKind::Class0 => (0, 3, 1, 2),
        TupleKind::Class1 => (3, 0, 2, 1),
    };
    let (r_target, s_target) = match kind {
        TupleKind::Class0 => (d.r(), d.s()),
        TupleKind::Class1 => (d.s(), d.r()),
    };
    let (m_target, n_target) = match kind {
        TupleKind::Class0 => (d.m(), d.n()),
        TupleKind::Class1 => (d.n(), d.m()),
    };
    let rt: Vec<Elem> = c.r().elements().map(|r| pick(split(t.join(r, 0, 0, 0)), r_slot)).collect();
    let st: Vec<Elem> = c.s().elements().map(|s| pick(split(t.join(0, 0, 0, s)), s_slot)).collect();
    let first = RingIso::new(c.r().clone(), r_target.clone(), rt).ok()?;
    let second = RingIso::new(c.s().clone(), s_target.clone(), st).ok()?;
    if c.m().order() != m_target.order() || c.n().order() != n_target.order() {
        return None;
    }
    let mt: Vec<Elem> = c.m().elements().map(|m| pick(split(t.join(0, m, 0, 0)), m_slot)).collect();
    let nt: Vec<Elem> = c.n().elements().map(|n| pick(split(t.join(0, 0, n, 0)), n_slot)).collect();
    let p = BimoduleMap::new(c.m().clone(), m_target.clone(), mt, first.clone(), second.clone()).ok()?;
    let q = BimoduleMap::new(c.n().clone(), n_target.clone(), nt, second.clone(), first.clone()).ok()?;
    let (_, mx, nx, _) = split(t.e11());
    let tuple = match kind {
        TupleKind::Class0 => SixTuple::class0(t.clone(), t2.clone(), first, second, p, q, mx, nx),
        TupleKind::Class1 => SixTuple::class1(t.clone(), t2.clone(), first, second, p, q, mx, nx),
    }
    .ok()?;
    if !tuple.validate().passed() {
        return None;
    }
    let back = tuple.realize_unchecked().ok()?;
    (back.table == phi.table).then_some(tuple)
}

/// The tuple of `t2 ∘ t1`, for `t1: T -> T'` and `t2: T' -> T''`.
pub fn compose(t1: &SixTuple, t2: &SixTuple) -> Result<SixTuple> {
    if !same_context(&t1.target, &t2.source) {
        return Err(AlgebraError::Wiring(format!(
            "cannot compose {} -> {} with {} -> {}",
            t1.source.label(),
            t1.target.label(),
            t2.source.label(),
            t2.target.label()
        )));
    }
    let d = t2.target.context();
    let (m3, n3) = (d.m(), d.n());
    let (src, dst) = (t1.source.clone(), t2.target.clone());
    let (p1, q1) = &t1.maps;
    let (p2, q2) = &t2.maps;
    match (t1.kind, t2.kind) {
        (TupleKind::Class0, TupleKind::Class0) => SixTuple::class0(
            src,
            dst,
            t1.first.then(&t2.first)?,
            t1.second.then(&t2.second)?,
            p1.then(p2)?,
            q1.then(q2)?,
            m3.add(t2.m, p2.apply(t1.m)),
            n3.add(t2.n, q2.apply(t1.n)),
        ),
        (TupleKind::Class1, TupleKind::Class1) => SixTuple::class0(
            src,
            dst,
            t1.first.then(&t2.second)?,
            t1.second.then(&t2.first)?,
            p1.then(q2)?,
            q1.then(p2)?,
            m3.sub(q2.apply(t1.n), t2.m),
            n3.sub(p2.apply(t1.m), t2.n),
        ),
        (TupleKind::Class1, TupleKind::Class0) => SixTuple::class1(
            src,
            dst,
            t1.first.then(&t2.second)?,
            t1.second.then(&t2.first)?,
            p1.then(q2)?,
            q1.then(p2)?,
            m3.sub(p2.apply(t1.m), t2.m),
            n3.sub(q2.apply(t1.n), t2.n),
        ),
        (TupleKind::Class0, TupleKind::Class1) => SixTuple::class1(
            src,
            dst,
            t1.first.then(&t2.first)?,
            t1.second.then(&t2.second)?,
            p1.then(p2)?,
            q1.then(q2)?,
            m3.add(q2.apply(t1.n), t2.m),
            n3.add(p2.apply(t1.m), t2.n),
        ),
    }
}

/// The tuple of the inverse map.
pub fn invert(t: &SixTuple) -> Result<SixTuple> {
    let (p, q) = (t.maps.0.inverse()?, t.maps.1.inverse()?);
    let (src, dst) = (t.target.clone(), t.source.clone());
    match t.kind {
        TupleKind::Class0 => {
            let d = t.target.context();
            let (m0, n0) = (p.apply(d.m().neg(t.m)), q.apply(d.n().neg(t.n)));
            SixTuple::class0(src, dst, t.first.inverse(), t.second.inverse(), p, q, m0, n0)
        }
        TupleKind::Class1 => {
            // μ^{-1}: N' -> M and ν^{-1}: M' -> N
            let (mstar, nstar) = (p.apply(t.n), q.apply(t.m));
            SixTuple::class1(src, dst, t.second.inverse(), t.first.inverse(), q, p, mstar, nstar)
        }
    }
}

/// Every valid tuple `T -> T'` of each class, in a fixed order.
pub fn enumerate_iso0(
    source: &Arc<ContextRing>,
    target: &Arc<ContextRing>,
    options: SearchOptions,
) -> Result<(Vec<SixTuple>, Vec<SixTuple>)> {
    let (c, d) = (source.context(), target.context());
    let m_ann: Vec<Elem> = d
        .m()
        .elements()
        .filter(|&x| d.n().elements().all(|y| d.bracket(x, y) == 0 && d.paren(y, x) == 0))
        .collect();
    let n_ann: Vec<Elem> = d
        .n()
        .elements()
        .filter(|&y| d.m().elements().all(|x| d.bracket(x, y) == 0 && d.paren(y, x) == 0))
        .collect();

    let mut class0 = Vec::new();
    for gamma in ring_isos_bruteforce(c.r(), d.r(), options)? {
        for delta in ring_isos_bruteforce(c.s(), d.s(), options)? {
            let us = enumerate_semilinear_isos(c.m(), d.m(), &gamma, &delta, options)?;
            if us.is_empty() {
                continue;
            }
            let vs = enumerate_semilinear_isos(c.n(), d.n(), &delta, &gamma, options)?;
            for u in &us {
                for v in &vs {
                    let base = SixTuple::class0(
                        source.clone(),
                        target.clone(),
                        gamma.clone(),
                        delta.clone(),
                        u.clone(),
                        v.clone(),
                        0,
                        0,
                    )?;
                    if !base.validate().check("pairings-intertwined").is_some_and(|c| c.passed) {
                        continue;
                    }
                    for &m0 in &m_ann {
                        for &n0 in &n_ann {
                            let mut t = base.clone();
                            t.m = m0;
                            t.n = n0;
                            class0.push(t);
                        }
                    }
                }
            }
        }
    }

    let mut class1 = Vec::new();
    for rho in ring_isos_bruteforce(c.r(), d.s(), options)? {
        for sigma in ring_isos_bruteforce(c.s(), d.r(), options)? {
            let mus = enumerate_semilinear_isos(c.m(), d.n(), &rho, &sigma, options)?;
            if mus.is_empty() {
                continue;
            }
            let nus = enumerate_semilinear_isos(c.n(), d.m(), &sigma, &rho, options)?;
            for mu in &mus {
                for nu in &nus {
                    let base = SixTuple::class1(
                        source.clone(),
                        target.clone(),
                        rho.clone(),
                        sigma.clone(),
                        mu.clone(),
                        nu.clone(),
                        0,
                        0,
                    )?;
                    if !base.validate().check("pairings-intertwined").is_some_and(|c| c.passed) {
                        continue;
                    }
                    for &m in &m_ann {
                        for &n in &n_ann {
                            let mut t = base.clone();
                            t.m = m;
                            t.n = n;
                            class1.push(t);
                        }
                    }
                }
            }
        }
    }
    Ok((class0, class1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::MoritaContext;
    use crate::finalg::FinRing;

    fn f(n: u32) -> Arc<FinRing> {
        Arc::new(FinRing::cyclic(n).unwrap())
    }

    fn zero_maps_full(base: &Arc<FinRing>) -> Arc<ContextRing> {
        let reg = Arc::new(Bimodule::regular(base.clone()));
        ContextRing::build(Arc::new(
            MoritaContext::zero_maps("Z", base.clone(), base.clone(), reg.clone(), reg).unwrap(),
        ))
        .unwrap()
    }

    fn triangular(base: &Arc<FinRing>) -> Arc<ContextRing> {
        ContextRing::build(Arc::new(
            MoritaContext::zero_maps(
                "U",
                base.clone(),
                base.clone(),
                Arc::new(Bimodule::regular(base.clone())),
                Arc::new(Bimodule::zero(base.clone(), base.clone())),
            )
            .unwrap(),
        ))
        .unwrap()
    }

    fn matrix(base: &Arc<FinRing>) -> Arc<ContextRing> {
        ContextRing::build(Arc::new(MoritaContext::matrix("M", base.clone()).unwrap())).unwrap()
    }

    fn with_entries(t: &SixTuple, m: Elem, n: Elem) -> SixTuple {
        let mut t = t.clone();
        t.m = m;
        t.n = n;
        t
    }

    #[test]
    fn identity_tuple_realizes_identity() {
        let t = matrix(&f(2));
        let id = SixTuple::identity(t.clone());
        assert!(id.validate().passed());
        let phi = realize(&id).unwrap();
        assert_eq!(phi, RingMap::identity(t));
        assert!(phi.grades().graded && phi.grades().semigraded);
        assert!(!phi.grades().antigraded);
    }

    #[test]
    fn strict_context_rejects_nonzero_m0() {
        let t = matrix(&f(2));
        let bad = with_entries(&SixTuple::identity(t), 1, 0);
        let report = bad.validate();
        assert!(!report.check("annihilates-m").unwrap().passed);
        assert!(matches!(realize(&bad), Err(AlgebraError::InvalidTuple(_))));
    }

    #[test]
    fn nonzero_m0_on_triangular() {
        let t = triangular(&f(2));
        let tup = with_entries(&SixTuple::identity(t.clone()), 1, 0);
        let phi = realize(&tup).unwrap();
        assert!(phi.is_isomorphism());
        assert_eq!(t.split(phi.apply(t.e11())), (1, 1, 0, 0));
        assert!(phi.grades().semigraded);
        assert!(!phi.grades().graded);
    }

    #[test]
    fn counts_on_small_fixtures() {
        let opts = SearchOptions::default();
        let z = zero_maps_full(&f(2));
        let (c0, c1) = enumerate_iso0(&z, &z, opts).unwrap();
        assert_eq!((c0.len(), c1.len()), (4, 4));
        let u = triangular(&f(2));
        let (c0, c1) = enumerate_iso0(&u, &u, opts).unwrap();
        assert_eq!((c0.len(), c1.len()), (2, 0));
        let m = matrix(&f(2));
        let (c0, c1) = enumerate_iso0(&m, &m, opts).unwrap();
        assert_eq!((c0.len(), c1.len()), (1, 1));
        for t in c0.iter().chain(&c1) {
            let g = realize(t).unwrap().grades();
            assert!(g.graded || g.antigraded);
        }
    }

    #[test]
    fn membership_round_trip() {
        for t in [zero_maps_full(&f(3)), triangular(&f(2)), matrix(&f(3))] {
            let (c0, c1) = enumerate_iso0(&t, &t, SearchOptions::default()).unwrap();
            for tup in c0.iter().chain(&c1) {
                let phi = realize(tup).unwrap();
                assert!(phi.is_isomorphism());
                match membership_test(&phi).unwrap() {
                    Membership::Class0(back) => assert_eq!(&back, tup),
                    Membership::Class1(back) => assert_eq!(&back, tup),
                    other => panic!("unexpected {}", other.label()),
                }
            }
        }
    }

    #[test]
    fn swap_is_class1_and_antigraded() {
        let t = triangular(&f(2));
        let alpha = t.swap_iso().unwrap();
        let g = grade_predicates(&alpha);
        assert!(g.antigraded && g.antisemigraded && !g.semigraded);
        assert!(matches!(membership_test(&alpha).unwrap(), Membership::Class1(_)));
    }

    #[test]
    fn inner_automorphism_is_neither() {
        let t = matrix(&f(2));
        let unit = t.join(1, 1, 0, 1);
        let eta = crate::finalg::inner_automorphism(t.ring(), unit).unwrap();
        let phi = RingMap::from_iso(t.clone(), t, &eta).unwrap();
        assert_eq!(membership_test(&phi).unwrap(), Membership::Neither);
    }

    #[test]
    fn classes_stay_disjoint_without_off_diagonal() {
        let f2 = f(2);
        let ctx = MoritaContext::zero_maps(
            "D",
            f2.clone(),
            f2.clone(),
            Arc::new(Bimodule::zero(f2.clone(), f2.clone())),
            Arc::new(Bimodule::zero(f2.clone(), f2.clone())),
        )
        .unwrap();
        let t = ContextRing::build(Arc::new(ctx)).unwrap();
        let id = RingMap::identity(t.clone());
        assert!(id.grades().graded && id.grades().antigraded);
        // class 0 fixes the diagonal and class 1 swaps it, so M' = N' = 0 still
        // separates them; only the grade predicates collapse.
        assert!(matches!(membership_test(&id).unwrap(), Membership::Class0(_)));
        let alpha = t.swap_iso().unwrap();
        let alpha = RingMap::new(t.clone(), t.clone(), alpha.table().to_vec()).unwrap();
        assert!(alpha.is_isomorphism());
        assert!(matches!(membership_test(&alpha).unwrap(), Membership::Class1(_)));
    }

    #[test]
    fn composition_and_inverse_match_realizations() {
        for t in [zero_maps_full(&f(3)), zero_maps_full(&f(4)), triangular(&f(3))] {
            let (c0, c1) = enumerate_iso0(&t, &t, SearchOptions::default()).unwrap();
            let all: Vec<_> = c0.into_iter().chain(c1).collect();
            for a in all.iter().take(12) {
                let ra = realize(a).unwrap();
                let ia = invert(a).unwrap();
                assert_eq!(realize(&ia).unwrap(), ra.inverse().unwrap());
                for b in all.iter().take(12) {
                    let ab = compose(a, b).unwrap();
                    assert_eq!(realize(&ab).unwrap(), ra.then(&realize(b).unwrap()).unwrap());
                }
                let id = compose(a, &ia).unwrap();
                assert_eq!(id, SixTuple::identity(t.clone()));
            }
        }
    }

    #[test]
    fn inverse_in_characteristic_two_keeps_m0() {
        let t = triangular(&f(2));
        let tup = with_entries(&SixTuple::identity(t), 1, 0);
        assert_eq!(invert(&tup).unwrap().m_entry(), 1);
    }

    #[test]
    fn wiring_errors() {
        let a = triangular(&f(2));
        let b = matrix(&f(2));
        let ta = SixTuple::identity(a);
        let tb = SixTuple::identity(b);
        assert!(matches!(compose(&ta, &tb), Err(AlgebraError::Wiring(_))));
    }
}
