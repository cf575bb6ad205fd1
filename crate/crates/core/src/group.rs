//! Finite Abelian groups in primary decomposition.
//!
//! A group is stored as the sorted multiset of its prime-power cyclic factors
//! (prime ascending, then exponent descending), so two groups are isomorphic
//! exactly when their factor sequences are equal. Elements are residue vectors
//! against that factor sequence.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

/// Residue vector; `residues[i] < factors[i]` of the owning group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Trial-division factorization into `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

fn smallest_prime_factor(k: u64) -> u64 {
    factorize(k).first().map(|&(p, _)| p).unwrap_or(1)
}

fn canonical_key(order: u64) -> (u64, std::cmp::Reverse<u64>) {
    (smallest_prime_factor(order), std::cmp::Reverse(order))
}

impl AbelianGroup {
    /// The group of order 1 (no factors).
    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new(), order: 1 }
    }

    /// Builds `Z_{k1} x Z_{k2} x ...`, splitting every cyclic order into its
    /// prime-power parts.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let mut factors = Vec::new();
        for &k in orders {
            if k < 2 {
                return Err(Error::FactorTooSmall(k));
            }
            for (p, e) in factorize(k) {
                factors.push(p.pow(e));
            }
        }
        Ok(Self::from_prime_powers(factors))
    }

    /// Canonicalizes a list that is already made of prime powers.
    fn from_prime_powers(mut factors: Vec<u64>) -> Self {
        factors.sort_by_key(|&q| canonical_key(q));
        let order = factors.iter().product();
        AbelianGroup { factors, order }
    }

    /// Parses `Z<k>` tokens joined by `x` (the `Z` is case-insensitive).
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::GroupSpec(text.to_string());
        if text.is_empty() {
            return Err(bad());
        }
        let mut orders = Vec::new();
        for token in text.split('x') {
            let digits = token
                .strip_prefix('Z')
                .or_else(|| token.strip_prefix('z'))
                .ok_or_else(bad)?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let k: u64 = digits.parse().map_err(|_| bad())?;
            orders.push(k);
        }
        Self::from_cyclic_orders(&orders)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of primary cyclic factors.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.0.iter().all(|&r| r == 0)
    }

    /// Validates residues against the factor sequence.
    pub fn element(&self, residues: Vec<u64>) -> Result<GroupElement> {
        if residues.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: residues.len() });
        }
        for (&r, &q) in residues.iter().zip(&self.factors) {
            if r >= q {
                return Err(Error::OutOfRange(format!("residue {r} not below factor {q}")));
            }
        }
        Ok(GroupElement(residues))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.0.len() == self.factors.len() && a.0.iter().zip(&self.factors).all(|(r, q)| r < q)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.0.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: a.0.len() });
        }
        Ok(())
    }

    pub fn checked_add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_scalar_mul(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.scalar_mul(k, a))
    }

    /// Componentwise sum. Panics if either operand has the wrong length; use
    /// [`checked_add`](Self::checked_add) for untrusted input.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        assert_eq!(a.0.len(), self.factors.len(), "dimension mismatch");
        assert_eq!(b.0.len(), self.factors.len(), "dimension mismatch");
        GroupElement(
            self.factors
                .iter()
                .zip(a.0.iter().zip(&b.0))
                .map(|(&q, (&x, &y))| (x + y) % q)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        assert_eq!(a.0.len(), self.factors.len(), "dimension mismatch");
        GroupElement(self.factors.iter().zip(&a.0).map(|(&q, &x)| (q - x) % q).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `k·a`; negative `k` multiplies the inverse.
    pub fn scalar_mul(&self, k: i64, a: &GroupElement) -> GroupElement {
        assert_eq!(a.0.len(), self.factors.len(), "dimension mismatch");
        GroupElement(
            self.factors
                .iter()
                .zip(&a.0)
                .map(|(&q, &x)| {
                    let k = k.rem_euclid(q as i64) as u128;
                    ((k * x as u128) % q as u128) as u64
                })
                .collect(),
        )
    }

    /// Position of `a` in the canonical (lexicographic) element order.
    pub fn index_of(&self, a: &GroupElement) -> u64 {
        a.0.iter().zip(&self.factors).fold(0, |acc, (&r, &q)| acc * q + r)
    }

    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut residues = vec![0; self.factors.len()];
        for (slot, &q) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = index % q;
            index /= q;
        }
        GroupElement(residues)
    }

    /// All elements in lexicographic residue order, identity first.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (1..self.order).map(move |i| self.element_at(i))
    }

    /// Internal direct product of `parts`. The second value maps each part's
    /// factor positions to positions in the returned canonical group.
    pub fn direct_product(parts: &[AbelianGroup]) -> (AbelianGroup, Vec<Vec<usize>>) {
        let mut tagged: Vec<(u64, usize, usize)> = Vec::new();
        for (pi, g) in parts.iter().enumerate() {
            for (fi, &q) in g.factors.iter().enumerate() {
                tagged.push((q, pi, fi));
            }
        }
        tagged.sort_by_key(|&(q, pi, fi)| (canonical_key(q), pi, fi));
        let mut maps: Vec<Vec<usize>> = parts.iter().map(|g| vec![0; g.rank()]).collect();
        for (pos, &(_, pi, fi)) in tagged.iter().enumerate() {
            maps[pi][fi] = pos;
        }
        let group = AbelianGroup {
            factors: tagged.iter().map(|t| t.0).collect(),
            order: parts.iter().map(|g| g.order).product(),
        };
        (group, maps)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Z1");
        }
        for (i, q) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{q}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AbelianGroup::parse(s)
    }
}

/// Integer partitions of `n` with parts in non-increasing order, listed with the
/// largest first part first (so `3 -> [3], [2,1], [1,1,1]`).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// One representative per isomorphism class of Abelian groups of order `k`.
pub fn enumerate_abelian_groups(k: u64) -> Vec<AbelianGroup> {
    assert!(k >= 1, "group order must be positive");
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(k) {
        let mut next = Vec::new();
        for prefix in &acc {
            for part in partitions(e) {
                let mut f = prefix.clone();
                f.extend(part.iter().map(|&a| p.pow(a)));
                next.push(f);
            }
        }
        acc = next;
    }
    acc.into_iter().map(AbelianGroup::from_prime_powers).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn parse_splits_into_primary_factors() {
        assert_eq!(g("Z6").factors(), &[2, 3]);
        assert_eq!(g("Z6").order(), 6);
        assert_eq!(g("Z4xZ2").factors(), &[4, 2]);
        assert_eq!(g("Z4xZ2").order(), 8);
        assert_eq!(g("Z140").factors(), &[4, 5, 7]);
        assert_eq!(g("z2xZ4"), g("Z4xZ2"));
        assert_eq!(g("Z12").factors(), &[4, 3]);
    }

    #[test]
    fn parse_rejects_bad_input() {
        for bad in ["", "Z", "Z4x", "xZ4", "Z4 x Z2", "Q4", "Z4*Z2", "Z-3", "Z4X Z2"] {
            assert!(matches!(AbelianGroup::parse(bad), Err(Error::GroupSpec(_))), "{bad}");
        }
        assert_eq!(AbelianGroup::parse("Z1"), Err(Error::FactorTooSmall(1)));
        assert_eq!(AbelianGroup::parse("Z4xZ0"), Err(Error::FactorTooSmall(0)));
    }

    #[test]
    fn display_round_trip() {
        assert_eq!(g("Z140").to_string(), "Z4xZ5xZ7");
        assert_eq!(g("Z2xZ8xZ3").to_string(), "Z8xZ2xZ3");
        assert_eq!(g("Z8xZ2xZ3").to_string().parse::<AbelianGroup>().unwrap(), g("Z2xZ8xZ3"));
    }

    #[test]
    fn arithmetic_examples() {
        let v4 = g("Z2xZ2");
        let a = v4.element(vec![1, 0]).unwrap();
        assert_eq!(v4.add(&a, &a), v4.identity());

        let z6 = g("Z6");
        let x = z6.element(vec![1, 1]).unwrap();
        assert_eq!(z6.scalar_mul(3, &x), GroupElement(vec![1, 0]));
        assert_eq!(z6.scalar_mul(0, &x), z6.identity());

        let z5 = g("Z5");
        assert_eq!(z5.neg(&GroupElement(vec![2])), GroupElement(vec![3]));
        assert_eq!(z5.sub(&GroupElement(vec![1]), &GroupElement(vec![3])), GroupElement(vec![3]));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let z6 = g("Z6");
        let err = z6.checked_add(&GroupElement(vec![1]), &GroupElement(vec![1, 1])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
        assert!(z6.element(vec![2, 0]).is_err());
    }

    #[test]
    fn element_order_is_lexicographic() {
        let z3: Vec<_> = g("Z3").elements().collect();
        assert_eq!(z3, vec![GroupElement(vec![0]), GroupElement(vec![1]), GroupElement(vec![2])]);
        let v4: Vec<String> = g("Z2xZ2").elements().map(|e| e.to_string()).collect();
        assert_eq!(v4, ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(g("Z4xZ5xZ7").elements().count(), 140);
        assert_eq!(AbelianGroup::trivial().elements().collect::<Vec<_>>(), vec![GroupElement(vec![])]);
    }

    #[test]
    fn enumeration_examples() {
        let names = |k| enumerate_abelian_groups(k).iter().map(|g| g.to_string()).collect::<Vec<_>>();
        assert_eq!(names(8), ["Z8", "Z4xZ2", "Z2xZ2xZ2"]);
        assert_eq!(names(140), ["Z4xZ5xZ7", "Z2xZ2xZ5xZ7"]);
        assert_eq!(names(5), ["Z5"]);
        assert_eq!(names(1), ["Z1"]);
    }

    /// Partition numbers p(0..=10) by the textbook table.
    const PARTITION_NUMBERS: [usize; 11] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];

    #[test]
    fn enumeration_counts_match_partition_products() {
        for k in 1..=2000u64 {
            let groups = enumerate_abelian_groups(k);
            let expected: usize =
                factorize(k).iter().map(|&(_, e)| PARTITION_NUMBERS[e as usize]).product();
            assert_eq!(groups.len(), expected, "k = {k}");
            for (i, a) in groups.iter().enumerate() {
                assert_eq!(a.order(), k);
                assert_eq!(AbelianGroup::from_cyclic_orders(a.factors()).unwrap(), *a);
                for b in &groups[i + 1..] {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn direct_product_maps_coordinates() {
        let (p, maps) = AbelianGroup::direct_product(&[g("Z4"), g("Z5"), g("Z2")]);
        assert_eq!(p, g("Z4xZ2xZ5"));
        assert_eq!(maps, vec![vec![0], vec![2], vec![1]]);
    }

    fn group_and_elements() -> impl Strategy<Value = (AbelianGroup, Vec<GroupElement>)> {
        prop::collection::vec(2u64..30, 1..4).prop_flat_map(|orders| {
            let grp = AbelianGroup::from_cyclic_orders(&orders).unwrap();
            let n = grp.order();
            prop::collection::vec(0..n, 3).prop_map(move |idx| {
                let els = idx.iter().map(|&i| grp.element_at(i)).collect();
                (grp.clone(), els)
            })
        })
    }

    proptest! {
        #[test]
        fn group_axioms((grp, els) in group_and_elements()) {
            let (a, b, c) = (&els[0], &els[1], &els[2]);
            prop_assert_eq!(grp.add(&grp.add(a, b), c), grp.add(a, &grp.add(b, c)));
            prop_assert_eq!(grp.add(a, b), grp.add(b, a));
            prop_assert_eq!(grp.add(a, &grp.identity()), a.clone());
            prop_assert_eq!(grp.add(a, &grp.neg(a)), grp.identity());
            prop_assert_eq!(grp.element_at(grp.index_of(a)), a.clone());
        }

        #[test]
        fn scalar_mul_is_repeated_addition((grp, els) in group_and_elements(), k in 0i64..=20) {
            let a = &els[0];
            let folded = (0..k).fold(grp.identity(), |acc, _| grp.add(&acc, a));
            prop_assert_eq!(grp.scalar_mul(k, a), folded);
        }

        #[test]
        fn cyclic_and_primary_specs_agree(m in 2u64..5000) {
            let whole = AbelianGroup::parse(&format!("Z{m}")).unwrap();
            let spec = factorize(m)
                .iter()
                .map(|&(p, e)| format!("Z{}", p.pow(e)))
                .collect::<Vec<_>>()
                .join("x");
            prop_assert_eq!(whole, AbelianGroup::parse(&spec).unwrap());
        }
    }
}
