//! The standard small contexts used by the verification suite and the tests.

use std::sync::Arc;

use crate::bimod::Bimodule;
use crate::context::{ContextRing, MoritaContext};
use crate::error::Result;
use crate::finalg::{Elem, FinRing};

pub fn field(p: u32) -> Arc<FinRing> {
    Arc::new(FinRing::cyclic(p).expect("p >= 2"))
}

pub fn product(a: &Arc<FinRing>, b: &Arc<FinRing>) -> Arc<FinRing> {
    Arc::new(FinRing::direct_product(a, b).expect("products of valid rings are valid"))
}

/// `R` viewed as an `R`-`Z/k` bimodule, with `Z/k` acting through the integers.
pub fn integer_bimodule(ring: &Arc<FinRing>, k: u32) -> Result<Bimodule> {
    let zk = Arc::new(FinRing::cyclic(k)?);
    let n = ring.order();
    let left: Vec<Elem> = (0..n * n).map(|i| ring.mul(i / n, i % n)).collect();
    let right: Vec<Elem> = (0..n * k as usize)
        .map(|i| ring.group().scale((i % k as usize) as i64, i / k as usize))
        .collect();
    Bimodule::from_tables(format!("{}_Z{k}", ring.label()), ring.group().clone(), ring.clone(), zk, left, right)
}

/// `Z/2` as a `Z/4`-`F_2` bimodule through the quotient map `Z/4 -> F_2`.
pub fn quotient_module(z4: &Arc<FinRing>, f2: &Arc<FinRing>) -> Result<Bimodule> {
    let left: Vec<Elem> = (0..4 * 2).map(|i| (i / 2) * (i % 2) % 2).collect();
    let right: Vec<Elem> = (0..2 * 2).map(|i| (i / 2) * (i % 2)).collect();
    Bimodule::from_tables("Z2", f2.group().clone(), z4.clone(), f2.clone(), left, right)
}

fn build(ctx: MoritaContext) -> Arc<ContextRing> {
    ContextRing::build(Arc::new(ctx)).expect("fixture contexts are valid")
}

/// `(R, R, R, R)` with both pairings zero.
pub fn zero_maps_regular(base: &Arc<FinRing>, name: &str) -> Arc<ContextRing> {
    let reg = Arc::new(Bimodule::regular(base.clone()));
    build(MoritaContext::zero_maps(name, base.clone(), base.clone(), reg.clone(), reg).expect("zero maps"))
}

/// `(R, R, R, 0)`: upper triangular matrices over `R`.
pub fn triangular(base: &Arc<FinRing>, name: &str) -> Arc<ContextRing> {
    build(
        MoritaContext::zero_maps(
            name,
            base.clone(),
            base.clone(),
            Arc::new(Bimodule::regular(base.clone())),
            Arc::new(Bimodule::zero(base.clone(), base.clone())),
        )
        .expect("zero maps"),
    )
}

/// `M_2(R)` as the strict context with multiplication pairings.
pub fn matrix(base: &Arc<FinRing>, name: &str) -> Arc<ContextRing> {
    build(MoritaContext::matrix(name, base.clone()).expect("matrix context"))
}

/// `(Z/4, F_2, Z/2, 0)` with zero pairings.
pub fn z4_quotient() -> Arc<ContextRing> {
    let (z4, f2) = (field(4), field(2));
    let m = Arc::new(quotient_module(&z4, &f2).expect("quotient action"));
    build(
        MoritaContext::zero_maps("Z4-quotient", z4.clone(), f2.clone(), m, Arc::new(Bimodule::zero(f2, z4)))
            .expect("zero maps"),
    )
}

/// `(S x S, S, 0, 0)`, a product of three copies of `S`.
pub fn split_diagonal(base: &Arc<FinRing>, name: &str) -> Arc<ContextRing> {
    let r = product(base, base);
    build(
        MoritaContext::zero_maps(
            name,
            r.clone(),
            base.clone(),
            Arc::new(Bimodule::zero(r.clone(), base.clone())),
            Arc::new(Bimodule::zero(base.clone(), r)),
        )
        .expect("zero maps"),
    )
}

/// `(R, Z/k, R, 0)` with zero pairings; `None` when `k R != 0`.
pub fn decomposable_corner(r: &Arc<FinRing>, k: u32, name: &str) -> Option<Arc<ContextRing>> {
    let m = Arc::new(integer_bimodule(r, k).ok()?);
    let s = m.right_ring().clone();
    let n = Arc::new(Bimodule::zero(s.clone(), r.clone()));
    let ctx = MoritaContext::zero_maps(name, r.clone(), s, m, n).ok()?;
    ContextRing::build(Arc::new(ctx)).ok()
}

/// A named context ring.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub ring: Arc<ContextRing>,
}

/// The standard fixture set, in a fixed order.
pub fn standard() -> Vec<Fixture> {
    let (f2, f3, z4) = (field(2), field(3), field(4));
    let u = triangular(&f2, "U2(F2)");
    let ut = u.transpose().expect("transpose of a valid context");
    let named = |name: &str, ring: Arc<ContextRing>| Fixture { name: name.into(), ring };
    vec![
        named("zero-f2", zero_maps_regular(&f2, "zero-f2")),
        named("zero-f3", zero_maps_regular(&f3, "zero-f3")),
        named("zero-z4", zero_maps_regular(&z4, "zero-z4")),
        named("u2-f2", u),
        named("u2-f2-t", ut),
        named("u2-f3", triangular(&f3, "U2(F3)")),
        named("m2-f2", matrix(&f2, "M2(F2)")),
        named("m2-f3", matrix(&f3, "M2(F3)")),
        named("z4-quotient", z4_quotient()),
        named("diag-f2", split_diagonal(&f2, "diag-f2")),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    standard().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_fixtures_build() {
        let all = standard();
        assert_eq!(all.len(), 10);
        for f in &all {
            assert!(f.ring.order() <= 256, "{}", f.name);
        }
        assert_eq!(by_name("z4-quotient").unwrap().ring.order(), 16);
        assert_eq!(by_name("zero-z4").unwrap().ring.order(), 256);
    }

    #[test]
    fn corner_needs_matching_characteristic() {
        let (f2, f3) = (field(2), field(3));
        assert!(decomposable_corner(&product(&f2, &f2), 2, "c").is_some());
        assert!(decomposable_corner(&product(&f2, &f3), 2, "c").is_none());
        assert!(decomposable_corner(&product(&f2, &f3), 6, "c").is_some());
    }
}
