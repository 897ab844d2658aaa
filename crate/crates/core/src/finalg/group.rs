use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};

/// Index of an element of a finite carrier.
///
/// Elements of `Z/d_1 x ... x Z/d_k` are encoded in little-endian mixed radix:
/// `(a_1, ..., a_k) -> a_1 + d_1 * (a_2 + d_2 * (...))`. Concatenating carriers
/// therefore nests indices, which the product and context-ring constructions rely on.
pub type Elem = usize;

const ADD_TABLE_LIMIT: usize = 512;

/// Finite abelian group presented as a product of cyclic groups.
#[derive(Debug, Clone)]
pub struct AbGroup {
    orders: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
    add_table: Option<Arc<Vec<u32>>>,
}

impl PartialEq for AbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for AbGroup {}

impl AbGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(AlgebraError::InvalidOrder(d as u64));
        }
        let mut strides = Vec::with_capacity(orders.len());
        let mut size: usize = 1;
        for &d in &orders {
            strides.push(size);
            size = size
                .checked_mul(d as usize)
                .filter(|&s| s <= u32::MAX as usize)
                .ok_or_else(|| AlgebraError::InvalidRing("carrier too large".into()))?;
        }
        let mut group = Self {
            orders,
            strides,
            size,
            add_table: None,
        };
        if size <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    table.push(group.add_slow(a, b) as u32);
                }
            }
            group.add_table = Some(Arc::new(table));
        }
        Ok(group)
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("empty product is valid")
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Direct product; coordinates of `self` come first.
    pub fn product(&self, other: &AbGroup) -> Result<Self> {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        Self::new(orders)
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    /// The i-th standard generator.
    pub fn basis(&self, i: usize) -> Elem {
        self.strides[i]
    }

    pub fn basis_elements(&self) -> Vec<Elem> {
        self.strides.clone()
    }

    pub fn coord(&self, x: Elem, i: usize) -> u32 {
        ((x / self.strides[i]) % self.orders[i] as usize) as u32
    }

    pub fn coords(&self, x: Elem) -> Vec<u32> {
        (0..self.rank()).map(|i| self.coord(x, i)).collect()
    }

    /// Encodes a coordinate vector, reducing each entry modulo its cyclic order.
    pub fn encode(&self, coords: &[i64]) -> Result<Elem> {
        if coords.len() != self.rank() {
            return Err(AlgebraError::OutOfRange(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&a, &d), &s)| a.rem_euclid(d as i64) as usize * s)
            .sum())
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.size
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let d = self.orders[i];
            out += ((self.coord(a, i) + self.coord(b, i)) % d) as usize * self.strides[i];
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => t[a * self.size + b] as Elem,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let d = self.orders[i];
            out += ((d - self.coord(a, i)) % d) as usize * self.strides[i];
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `k * a` for any integer `k`.
    pub fn scale(&self, k: i64, a: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let d = self.orders[i] as i64;
            let c = (k.rem_euclid(d) * self.coord(a, i) as i64) % d;
            out += c as usize * self.strides[i];
        }
        out
    }

    pub fn sum(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    pub fn additive_order(&self, a: Elem) -> u64 {
        (0..self.rank()).fold(1u64, |acc, i| {
            let d = self.orders[i] as u64;
            let c = self.coord(a, i) as u64;
            lcm(acc, d / gcd(c, d))
        })
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &d| lcm(acc, d as u64))
    }

    pub fn format(&self, x: Elem) -> String {
        match self.rank() {
            0 => "0".to_string(),
            1 => self.coord(x, 0).to_string(),
            _ => {
                let parts: Vec<String> = self.coords(x).iter().map(u32::to_string).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A subgroup of an ambient carrier, re-presented as a product of cyclic groups.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub group: AbGroup,
    /// Local index -> ambient element.
    pub embed: Vec<Elem>,
    locate: HashMap<Elem, Elem>,
}

impl Subgroup {
    /// Decomposes the subgroup of `ambient` whose elements are `members`.
    ///
    /// Greedy invariant-factor construction: repeatedly pick the element whose order
    /// modulo the part built so far is largest among elements whose order does not
    /// drop in the quotient. Such an element spans a direct summand.
    pub fn from_members(ambient: &AbGroup, members: &[Elem]) -> Result<Self> {
        let mut member_set: Vec<Elem> = members.to_vec();
        member_set.sort_unstable();
        member_set.dedup();
        let mut span: Vec<Elem> = vec![ambient.zero()];
        let mut in_span = vec![false; ambient.order()];
        in_span[0] = true;
        let mut gens: Vec<(Elem, u32)> = Vec::new();
        while span.len() < member_set.len() {
            let mut best: Option<(Elem, u64)> = None;
            for &x in &member_set {
                if in_span[x] {
                    continue;
                }
                let ord = ambient.additive_order(x);
                let mut k = 1u64;
                let mut y = x;
                while !in_span[y] {
                    y = ambient.add(y, x);
                    k += 1;
                }
                if k == ord && best.is_none_or(|(_, b)| ord > b) {
                    best = Some((x, ord));
                }
            }
            let (g, ord) = best.ok_or_else(|| {
                AlgebraError::InvalidRing("member set is not a subgroup".into())
            })?;
            let mut next = Vec::with_capacity(span.len() * ord as usize);
            let mut multiple = ambient.zero();
            for _ in 0..ord {
                for &s in &span {
                    let z = ambient.add(s, multiple);
                    if !member_set.binary_search(&z).is_ok() {
                        return Err(AlgebraError::InvalidRing(
                            "member set is not closed under addition".into(),
                        ));
                    }
                    next.push(z);
                }
                multiple = ambient.add(multiple, g);
            }
            for &z in &next {
                in_span[z] = true;
            }
            span = next;
            gens.push((g, ord as u32));
        }
        if span.len() != member_set.len() {
            return Err(AlgebraError::InvalidRing("member set is not a subgroup".into()));
        }
        let group = AbGroup::new(gens.iter().map(|&(_, d)| d).collect())?;
        let embed: Vec<Elem> = group
            .elements()
            .map(|local| {
                ambient.sum(
                    gens.iter()
                        .enumerate()
                        .map(|(i, &(g, _))| ambient.scale(group.coord(local, i) as i64, g)),
                )
            })
            .collect();
        let locate = embed.iter().enumerate().map(|(l, &a)| (a, l)).collect();
        Ok(Self {
            group,
            embed,
            locate,
        })
    }

    pub fn locate(&self, ambient_elem: Elem) -> Option<Elem> {
        self.locate.get(&ambient_elem).copied()
    }
}
