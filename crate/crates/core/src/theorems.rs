//! Executable checks of the structural claims about context rings. Each check compares
//! the tuple-built isomorphism sets against the exhaustive oracle on concrete rings.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::context::{peirce_decompose, ContextRing};
use crate::error::Result;
use crate::finalg::{inner_automorphism, ring_isos_bruteforce, Elem, FinRing, SearchOptions};
use crate::fixtures;
use crate::isoclasses::{enumerate_iso0, membership_test, realize, Membership, RingMap, SixTuple, TupleKind};

/// Claim identifiers accepted by [`verify_on_fixtures`] and the `verify` command.
pub const CLAIMS: &[&str] = &[
    "strict-graded",
    "central-idempotents",
    "indecomposable-corners",
    "semigraded",
    "zero-maps",
    "nonzero-maps-obstruction",
    "group-structure",
    "decomposable-swap",
    "indecomposable-triangular",
    "peirce-round-trip",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    False,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::False => "FALSE",
            Status::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub passed: bool,
}

/// Outcome of one claim on one subject. A failed hypothesis gives
/// [`Status::NotApplicable`] and the conclusion is not evaluated.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub subject: String,
    pub hypotheses: Vec<Hypothesis>,
    pub status: Status,
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Verdict {
    fn new(claim: &str, subject: impl Into<String>) -> Self {
        Self {
            claim: claim.into(),
            subject: subject.into(),
            hypotheses: Vec::new(),
            status: Status::NotApplicable,
            details: BTreeMap::new(),
            elapsed_ms: None,
        }
    }

    fn hypothesis(&mut self, name: &str, passed: bool) -> bool {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            passed,
        });
        passed
    }

    fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }

    fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.into(), json!(value));
    }

    fn conclude(mut self, holds: bool) -> Self {
        self.status = if !self.applicable() {
            Status::NotApplicable
        } else if holds {
            Status::Holds
        } else {
            Status::False
        };
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_false(&self) -> bool {
        self.status == Status::False
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<26} {:<24} {}", self.claim, self.subject, self.status)?;
        let failed: Vec<_> = self.hypotheses.iter().filter(|h| !h.passed).map(|h| h.name.as_str()).collect();
        if !failed.is_empty() {
            write!(f, " (fails: {})", failed.join(", "))?;
        }
        Ok(())
    }
}

fn pair_name(t: &ContextRing, t2: &ContextRing) -> String {
    if t == t2 {
        t.context().label().to_string()
    } else {
        format!("{} -> {}", t.context().label(), t2.context().label())
    }
}

fn oracle_maps(t: &Arc<ContextRing>, t2: &Arc<ContextRing>, options: SearchOptions) -> Result<Vec<RingMap>> {
    ring_isos_bruteforce(t.ring(), t2.ring(), options)?
        .iter()
        .map(|iso| RingMap::from_iso(t.clone(), t2.clone(), iso))
        .collect()
}

fn realized(tuples: &[SixTuple]) -> Result<Vec<RingMap>> {
    tuples.iter().map(realize).collect()
}

fn tables(maps: &[RingMap]) -> BTreeSet<Vec<Elem>> {
    maps.iter().map(|m| m.table().to_vec()).collect()
}

/// If either context is strict, every tuple-built isomorphism is graded or antigraded and
/// its off-diagonal entries vanish.
pub fn verify_strict_implies_graded(
    t: &Arc<ContextRing>,
    t2: &Arc<ContextRing>,
    options: SearchOptions,
) -> Result<Verdict> {
    let mut v = Verdict::new("strict-graded", pair_name(t, t2));
    if !v.hypothesis("some-context-strict", t.context().is_strict() || t2.context().is_strict()) {
        return Ok(v.conclude(false));
    }
    let (c0, c1) = enumerate_iso0(t, t2, options)?;
    let mut ok = true;
    let mut graded = 0;
    for tuple in c0.iter().chain(&c1) {
        let g = realize(tuple)?.grades();
        ok &= tuple.m_entry() == 0 && tuple.n_entry() == 0;
        if g.graded || g.antigraded {
            graded += 1;
        } else {
            ok = false;
        }
    }
    v.detail("iso0", c0.len() + c1.len());
    v.detail("graded_or_antigraded", graded);
    Ok(v.conclude(ok))
}

/// Central idempotents predicted from the base data agree with the oracle.
pub fn verify_central_idempotent_lemma(t: &Arc<ContextRing>) -> Verdict {
    let mut v = Verdict::new("central-idempotents", t.context().label());
    let lemma = t.central_idempotents_via_lemma();
    let oracle = t.ring().central_idempotents();
    v.detail("predicted", lemma.iter().map(|&x| t.format(x)).collect::<Vec<_>>());
    v.detail("oracle", oracle.len());
    v.conclude(lemma == oracle)
}

/// Indecomposable corners with a nonzero off-diagonal piece give an indecomposable ring.
pub fn verify_indecomposable_corners(t: &Arc<ContextRing>) -> Verdict {
    let c = t.context();
    let mut v = Verdict::new("indecomposable-corners", c.label());
    v.hypothesis("r-indecomposable", c.r().is_indecomposable());
    v.hypothesis("s-indecomposable", c.s().is_indecomposable());
    v.hypothesis("off-diagonal-nonzero", c.m().order() > 1 || c.n().order() > 1);
    if !v.applicable() {
        return v.conclude(false);
    }
    let holds = t.ring().is_indecomposable();
    v.detail("central_idempotents", t.ring().central_idempotents().len());
    v.conclude(holds)
}

/// Class-0 realizations are exactly the semigraded isomorphisms and class-1 realizations
/// exactly the antisemigraded ones; every graded or antigraded isomorphism is in `Iso_0`.
pub fn verify_semigraded_theorem(
    t: &Arc<ContextRing>,
    t2: &Arc<ContextRing>,
    options: SearchOptions,
) -> Result<Verdict> {
    let d = t2.context();
    let mut v = Verdict::new("semigraded", pair_name(t, t2));
    v.hypothesis("target-r-indecomposable", d.r().is_indecomposable());
    v.hypothesis("target-s-indecomposable", d.s().is_indecomposable());
    v.hypothesis("target-off-diagonal-nonzero", d.m().order() > 1 || d.n().order() > 1);
    if !v.applicable() {
        return Ok(v.conclude(false));
    }
    let oracle = oracle_maps(t, t2, options)?;
    let (c0, c1) = enumerate_iso0(t, t2, options)?;
    let (r0, r1) = (tables(&realized(&c0)?), tables(&realized(&c1)?));
    let semi: BTreeSet<_> = oracle.iter().filter(|m| m.grades().semigraded).map(|m| m.table().to_vec()).collect();
    let anti: BTreeSet<_> = oracle.iter().filter(|m| m.grades().antisemigraded).map(|m| m.table().to_vec()).collect();
    let graded_inside = oracle
        .iter()
        .filter(|m| m.grades().graded || m.grades().antigraded)
        .all(|m| r0.contains(m.table()) || r1.contains(m.table()));
    v.detail("oracle", oracle.len());
    v.detail("class0", r0.len());
    v.detail("semigraded", semi.len());
    v.detail("class1", r1.len());
    v.detail("antisemigraded", anti.len());
    v.detail("graded_contained", graded_inside);
    Ok(v.conclude(r0 == semi && r1 == anti && graded_inside))
}

/// With zero pairings and trivial-idempotent base rings every isomorphism is tuple-built.
pub fn verify_zero_maps_theorem(
    t: &Arc<ContextRing>,
    t2: &Arc<ContextRing>,
    options: SearchOptions,
) -> Result<Verdict> {
    let (c, d) = (t.context(), t2.context());
    let mut v = Verdict::new("zero-maps", pair_name(t, t2));
    let trivial = [c.r(), c.s(), d.r(), d.s()].iter().all(|r| r.has_only_trivial_idempotents());
    v.hypothesis("base-rings-trivial-idempotents", trivial);
    v.hypothesis("pairings-zero", c.has_zero_maps() && d.has_zero_maps());
    if !v.applicable() {
        return Ok(v.conclude(false));
    }
    let oracle = tables(&oracle_maps(t, t2, options)?);
    let (c0, c1) = enumerate_iso0(t, t2, options)?;
    let built = tables(&realized(&c0)?.into_iter().chain(realized(&c1)?).collect::<Vec<_>>());
    v.detail("iso", oracle.len());
    v.detail("iso0", built.len());
    v.detail("class0", c0.len());
    v.detail("class1", c1.len());
    Ok(v.conclude(oracle == built))
}

/// Nonzero pairings leave room for automorphisms outside `Aut_0`: some inner
/// automorphism by `[[1, m], [0, 1]]` or `[[1, 0], [n, 1]]` fails membership.
pub fn verify_nonzero_maps_obstruction(t: &Arc<ContextRing>, options: SearchOptions) -> Result<Verdict> {
    let c = t.context();
    let mut v = Verdict::new("nonzero-maps-obstruction", c.label());
    if !v.hypothesis("pairings-nonzero", !c.has_zero_maps()) {
        return Ok(v.conclude(false));
    }
    let aut = oracle_maps(t, t, options)?;
    let (c0, c1) = enumerate_iso0(t, t, options)?;
    let mut in_aut0 = 0;
    for phi in &aut {
        if membership_test(phi)?.is_member() {
            in_aut0 += 1;
        }
    }
    let units = c
        .m()
        .elements()
        .skip(1)
        .map(|m| t.join(c.r().one(), m, 0, c.s().one()))
        .chain(c.n().elements().skip(1).map(|n| t.join(c.r().one(), 0, n, c.s().one())));
    let mut witness = None;
    for unit in units {
        let eta = RingMap::from_iso(t.clone(), t.clone(), &inner_automorphism(t.ring(), unit)?)?;
        if membership_test(&eta)? == Membership::Neither {
            witness = Some(unit);
            break;
        }
    }
    v.detail("aut", aut.len());
    v.detail("aut0", c0.len() + c1.len());
    v.detail("aut0_by_membership", in_aut0);
    v.detail("witness_unit", witness.map(|u| t.format(u)));
    let holds = witness.is_some() && in_aut0 == c0.len() + c1.len() && in_aut0 < aut.len();
    Ok(v.conclude(holds))
}

fn closed(set: &HashSet<Vec<Elem>>) -> bool {
    let identity: Vec<Elem> = (0..set.iter().next().map_or(0, |t| t.len())).collect();
    if !set.contains(&identity) {
        return false;
    }
    set.iter().all(|a| {
        let mut inv = vec![0; a.len()];
        for (x, &y) in a.iter().enumerate() {
            inv[y] = x;
        }
        set.contains(&inv) && set.iter().all(|b| set.contains(&compose_tables(a, b)))
    })
}

fn compose_tables(first: &[Elem], then: &[Elem]) -> Vec<Elem> {
    first.iter().map(|&x| then[x]).collect()
}

fn normal_in(sub: &HashSet<Vec<Elem>>, group: &HashSet<Vec<Elem>>) -> bool {
    group.iter().all(|g| {
        let mut inv = vec![0; g.len()];
        for (x, &y) in g.iter().enumerate() {
            inv[y] = x;
        }
        sub.iter().all(|h| sub.contains(&compose_tables(&compose_tables(&inv, h), g)))
    })
}

/// `Aut_0` and `Aut_g` are subgroups of `Aut`, with `Aut_0^0` normal in `Aut_0` and the
/// graded automorphisms normal in `Aut_g`.
pub fn verify_group_structure(t: &Arc<ContextRing>, options: SearchOptions) -> Result<Verdict> {
    let mut v = Verdict::new("group-structure", t.context().label());
    let aut = oracle_maps(t, t, options)?;
    let mut aut0 = HashSet::new();
    let mut aut00 = HashSet::new();
    for phi in &aut {
        match membership_test(phi)? {
            Membership::Neither => {}
            Membership::Class0(_) | Membership::Both(..) => {
                aut0.insert(phi.table().to_vec());
                aut00.insert(phi.table().to_vec());
            }
            Membership::Class1(_) => {
                aut0.insert(phi.table().to_vec());
            }
        }
    }
    let autg: HashSet<_> = aut
        .iter()
        .filter(|m| m.grades().graded || m.grades().antigraded)
        .map(|m| m.table().to_vec())
        .collect();
    let autg_plus: HashSet<_> = aut.iter().filter(|m| m.grades().graded).map(|m| m.table().to_vec()).collect();
    let checks = [
        ("aut0-subgroup", closed(&aut0)),
        ("aut00-subgroup", closed(&aut00)),
        ("aut00-normal", normal_in(&aut00, &aut0)),
        ("autg-subgroup", closed(&autg)),
        ("autg-inside-aut0", autg.is_subset(&aut0)),
        ("autg-plus-normal", normal_in(&autg_plus, &autg)),
    ];
    v.detail("aut", aut.len());
    v.detail("aut0", aut0.len());
    v.detail("aut00", aut00.len());
    v.detail("autg", autg.len());
    v.detail("autg_plus", autg_plus.len());
    let failed: Vec<_> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    v.detail("failed_checks", &failed);
    Ok(v.conclude(failed.is_empty()))
}

/// On `(S x S, S, 0, 0)` the map exchanging the second and third factor of `S^3` is a
/// graded automorphism that is not tuple-built.
pub fn verify_decomposable_swap(base: &Arc<FinRing>) -> Result<Verdict> {
    let t = fixtures::split_diagonal(base, &format!("diag-{}", base.label()));
    let mut v = Verdict::new("decomposable-swap", t.context().label());
    let k = base.order();
    let table = t
        .ring()
        .elements()
        .map(|x| {
            let (r, _, _, s) = t.split(x);
            let (s1, s2) = (r % k, r / k);
            t.join(s1 + k * s, 0, 0, s2)
        })
        .collect();
    let phi = RingMap::new(t.clone(), t.clone(), table)?;
    if !v.hypothesis("swap-is-automorphism", phi.is_isomorphism()) {
        return Ok(v.conclude(false));
    }
    let membership = membership_test(&phi)?;
    v.detail("graded", phi.grades().graded);
    v.detail("membership", membership.label());
    Ok(v.conclude(phi.grades().graded && membership == Membership::Neither))
}

/// `(R, Z/k, R, 0)` with `R` decomposable and `Z/k` trivial-idempotent is indecomposable.
pub fn verify_indecomposable_triangular(r: &Arc<FinRing>, k: u32) -> Verdict {
    let mut v = Verdict::new("indecomposable-triangular", format!("{} over Z/{k}", r.label()));
    v.hypothesis("r-decomposable", !r.is_indecomposable());
    let s_ok = FinRing::cyclic(k).map(|s| s.has_only_trivial_idempotents()).unwrap_or(false);
    v.hypothesis("s-trivial-idempotents", s_ok);
    let t = fixtures::decomposable_corner(r, k, &format!("{}|Z{k}", r.label()));
    v.hypothesis("bimodule-defined", t.is_some());
    let Some(t) = t.filter(|_| v.applicable()) else {
        return v.conclude(false);
    };
    v.detail("order", t.order());
    v.detail("central_idempotents", t.ring().central_idempotents().len());
    v.conclude(t.ring().is_indecomposable())
}

/// Splitting the context ring along `E11` recovers the context: the induced maps on the
/// four pieces form a valid class-0 tuple with zero off-diagonal entries.
pub fn verify_peirce_round_trip(t: &Arc<ContextRing>) -> Result<Verdict> {
    let mut v = Verdict::new("peirce-round-trip", t.context().label());
    let d = peirce_decompose(t.ring(), t.e11())?;
    let phi = RingMap::from_iso(t.clone(), d.ring.clone(), &d.witness)?;
    let membership = membership_test(&phi)?;
    let holds = match &membership {
        Membership::Class0(tuple) => {
            tuple.kind() == TupleKind::Class0 && tuple.m_entry() == 0 && tuple.n_entry() == 0 && tuple.validate().passed()
        }
        _ => false,
    };
    let c = d.context.as_ref();
    v.detail("orders", [c.r().order(), c.m().order(), c.n().order(), c.s().order()]);
    v.detail("strict", c.is_strict());
    v.detail("membership", membership.label());
    Ok(v.conclude(holds))
}

/// Every claim applied to the standard fixtures, in a fixed order.
pub fn standard_suite(options: SearchOptions) -> Result<Vec<Verdict>> {
    let all = fixtures::standard();
    let mut out = Vec::new();
    for claim in CLAIMS {
        out.extend(verify_on_fixtures(claim, &all, options)?);
    }
    Ok(out)
}

/// Runs `claim` on every relevant fixture. Claims on pairs use self-pairs plus the
/// triangular cross-pair.
pub fn verify_on_fixtures(claim: &str, all: &[fixtures::Fixture], options: SearchOptions) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    let pairs: Vec<(Arc<ContextRing>, Arc<ContextRing>)> = {
        let mut p: Vec<_> = all.iter().map(|f| (f.ring.clone(), f.ring.clone())).collect();
        let find = |n: &str| all.iter().find(|f| f.name == n).map(|f| f.ring.clone());
        if let (Some(a), Some(b)) = (find("u2-f2"), find("u2-f2-t")) {
            p.push((a, b));
        }
        p
    };
    match canonical_claim(claim) {
        Some("strict-graded") => {
            for (a, b) in &pairs {
                out.push(verify_strict_implies_graded(a, b, options)?);
            }
        }
        Some("central-idempotents") => out.extend(all.iter().map(|f| verify_central_idempotent_lemma(&f.ring))),
        Some("indecomposable-corners") => out.extend(all.iter().map(|f| verify_indecomposable_corners(&f.ring))),
        Some("semigraded") => {
            for (a, b) in &pairs {
                out.push(verify_semigraded_theorem(a, b, options)?);
            }
        }
        Some("zero-maps") => {
            for (a, b) in &pairs {
                out.push(verify_zero_maps_theorem(a, b, options)?);
            }
        }
        Some("nonzero-maps-obstruction") => {
            for f in all {
                out.push(verify_nonzero_maps_obstruction(&f.ring, options)?);
            }
        }
        Some("group-structure") => {
            for f in all {
                out.push(verify_group_structure(&f.ring, options)?);
            }
        }
        Some("decomposable-swap") => {
            for p in [2, 3, 4] {
                out.push(verify_decomposable_swap(&fixtures::field(p))?);
            }
        }
        Some("indecomposable-triangular") => {
            let (f2, f3) = (fixtures::field(2), fixtures::field(3));
            out.push(verify_indecomposable_triangular(&fixtures::product(&f2, &f2), 2));
            out.push(verify_indecomposable_triangular(&fixtures::product(&f3, &f3), 3));
            out.push(verify_indecomposable_triangular(&fixtures::product(&f2, &f3), 6));
            out.push(verify_indecomposable_triangular(&f2, 2));
        }
        Some("peirce-round-trip") => {
            for f in all {
                out.push(verify_peirce_round_trip(&f.ring)?);
            }
        }
        _ => {}
    }
    Ok(out)
}

pub fn canonical_claim(claim: &str) -> Option<&'static str> {
    CLAIMS.iter().copied().find(|c| *c == claim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{field, matrix, triangular, zero_maps_regular};

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn zero_maps_counts() {
        let f2 = field(2);
        let u = triangular(&f2, "U");
        let v = verify_zero_maps_theorem(&u, &u, opts()).unwrap();
        assert!(v.holds());
        assert_eq!(v.details["iso"], json!(2));
        let z = zero_maps_regular(&f2, "Z");
        let v = verify_zero_maps_theorem(&z, &z, opts()).unwrap();
        assert!(v.holds());
        assert_eq!(v.details["iso"], json!(8));
        let ut = u.transpose().unwrap();
        let v = verify_zero_maps_theorem(&u, &ut, opts()).unwrap();
        assert!(v.holds());
        assert_eq!(v.details["iso"], json!(2));
        let m = matrix(&f2, "M");
        assert_eq!(verify_zero_maps_theorem(&m, &m, opts()).unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn obstruction_on_matrix_rings() {
        let m = matrix(&field(2), "M");
        let v = verify_nonzero_maps_obstruction(&m, opts()).unwrap();
        assert!(v.holds(), "{v:?}");
        assert_eq!(v.details["aut"], json!(6));
        assert_eq!(v.details["aut0"], json!(2));
        let z = zero_maps_regular(&field(2), "Z");
        assert_eq!(verify_nonzero_maps_obstruction(&z, opts()).unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn strict_graded() {
        for p in [2, 3] {
            let m = matrix(&field(p), "M");
            assert!(verify_strict_implies_graded(&m, &m, opts()).unwrap().holds());
        }
        let z = zero_maps_regular(&field(2), "Z");
        assert_eq!(verify_strict_implies_graded(&z, &z, opts()).unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn remaining_claims_on_small_cases() {
        let f2 = field(2);
        let u = triangular(&f2, "U");
        assert!(verify_central_idempotent_lemma(&u).holds());
        assert!(verify_semigraded_theorem(&u, &u, opts()).unwrap().holds());
        assert!(verify_group_structure(&u, opts()).unwrap().holds());
        assert!(verify_peirce_round_trip(&u).unwrap().holds());
        assert!(verify_indecomposable_corners(&u).holds());
        for p in [2, 3, 4] {
            assert!(verify_decomposable_swap(&field(p)).unwrap().holds());
        }
    }

    #[test]
    fn triangular_examples() {
        let (f2, f3) = (field(2), field(3));
        let v = verify_indecomposable_triangular(&fixtures::product(&f2, &f2), 2);
        assert!(v.holds());
        assert_eq!(v.details["order"], json!(32));
        assert_eq!(
            verify_indecomposable_triangular(&fixtures::product(&f2, &f3), 6).status,
            Status::NotApplicable
        );
        assert_eq!(verify_indecomposable_triangular(&f2, 2).status, Status::NotApplicable);
    }

    #[test]
    fn claim_ids_resolve() {
        assert_eq!(canonical_claim("zero-maps"), Some("zero-maps"));
        assert_eq!(canonical_claim("nope"), None);
    }
}
