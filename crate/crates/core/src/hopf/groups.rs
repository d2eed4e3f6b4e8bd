use crate::error::{Error, Result};
use crate::hopf::presentation::HopfPresentation;
use crate::ring::RingDescriptor;
use crate::tensor::MultiMap;

/// A finite group by its multiplication table, `table[a * n + b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    /// Validates associativity, a two-sided identity and inverses.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::NotAGroup("table has the wrong size or entries out of range".into()));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAGroup(format!("({a}·{b})·{c} != {a}·({b}·{c})")));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(Group { order, table, identity, inverse })
    }

    fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order * order).map(|k| f(k / order, k % order)).collect();
        Group::from_table(order, table).expect("built-in table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Cyclic group `Z/n`, element `k` is `g^k`.
    pub fn cyclic(n: usize) -> Self {
        Group::from_fn(n, |a, b| (a + b) % n)
    }

    /// Klein four-group, element `2a + b` is `x^a y^b`.
    pub fn klein() -> Self {
        Group::from_fn(4, |a, b| a ^ b)
    }

    /// Permutations of `{0,1,2}` in lexicographic order, `(στ)(x) = σ(τ(x))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        Group::from_fn(6, |a, b| {
            let (s, t) = (perms[a], perms[b]);
            index([s[t[0]], s[t[1]], s[t[2]]])
        })
    }

    /// Dihedral group of order 8, element `2i + j` is `r^i s^j`.
    pub fn dihedral4() -> Self {
        Group::from_fn(8, |a, b| {
            let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
            let rot = (if j == 0 { i + k } else { i + 4 - k }) % 4;
            2 * rot + (j + l) % 2
        })
    }

    /// Quaternion group, element `2u + s` is `(-1)^s q_u` with `q = (1, i, j, k)`.
    pub fn quaternion() -> Self {
        // unit products: (index, sign) of q_u q_v
        const UNITS: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        Group::from_fn(8, |a, b| {
            let (w, sign) = UNITS[a / 2][b / 2];
            2 * w + (sign + a % 2 + b % 2) % 2
        })
    }

    /// Built-in groups by name: `C2`..`C8`, `C2xC2`, `S3`, `D4`, `Q8`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "C2xC2" => Some(Group::klein()),
            "S3" => Some(Group::symmetric3()),
            "D4" => Some(Group::dihedral4()),
            "Q8" => Some(Group::quaternion()),
            _ => {
                let n: usize = name.strip_prefix('C')?.parse().ok()?;
                (2..=8).contains(&n).then(|| Group::cyclic(n))
            }
        }
    }
}

pub const BUILTIN_GROUPS: [&str; 11] = ["C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "S3", "D4", "Q8"];

/// The group algebra: `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g^{-1}`.
pub fn group_algebra(ring: RingDescriptor, group: &Group) -> Result<HopfPresentation> {
    let n = group.order();
    let one = ring.one();
    let mut m = MultiMap::zeros(ring, n, n, 2, 1);
    let mut delta = MultiMap::zeros(ring, n, n, 1, 2);
    let mut counit = MultiMap::zeros(ring, n, n, 1, 0);
    let mut unit = MultiMap::zeros(ring, n, n, 0, 1);
    let mut antipode = MultiMap::zeros(ring, n, n, 1, 1);
    unit.set(group.identity(), 0, one);
    for a in 0..n {
        for b in 0..n {
            m.set(group.mul(a, b), a * n + b, one);
        }
        delta.set(a * n + a, a, one);
        counit.set(0, a, one);
        antipode.set(group.inverse(a), a, one);
    }
    HopfPresentation::new(ring, n, m, unit, delta, counit, antipode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify::verify_hopf;
    use crate::ring::make_ring;

    #[test]
    fn builtins_are_groups() {
        for name in BUILTIN_GROUPS {
            let g = Group::builtin(name).unwrap();
            assert_eq!(g.identity(), 0, "{name}");
        }
        assert!(!Group::symmetric3().is_abelian());
        assert!(!Group::dihedral4().is_abelian());
        assert!(!Group::quaternion().is_abelian());
        assert!(Group::klein().is_abelian());
        // Q8: i^2 = -1, D4: s r s = r^{-1}
        let q = Group::quaternion();
        assert_eq!(q.mul(2, 2), 1);
        let d = Group::dihedral4();
        assert_eq!(d.mul(d.mul(1, 2), 1), 6);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(matches!(Group::from_table(2, vec![0, 0, 0, 0]), Err(Error::NotAGroup(_))));
        assert!(matches!(Group::from_table(2, vec![0, 1, 1, 1]), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn group_algebra_examples() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let h = group_algebra(f5, &Group::cyclic(2)).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.m().get(0, 3), f5.one());
        assert_eq!(h.delta().column(1), vec![(3, f5.one())]);
        assert_eq!(h.antipode().column(1), vec![(1, f5.one())]);

        let f7 = make_ring(7, 1, 1, None).unwrap();
        let s3 = group_algebra(f7, &Group::symmetric3()).unwrap();
        assert!(verify_hopf(&s3).verified());
        assert!(!s3.is_commutative());
        assert!(s3.is_cocommutative());

        let f3 = make_ring(3, 1, 1, None).unwrap();
        assert_eq!(group_algebra(f3, &Group::cyclic(4)).unwrap().dim(), 4);
    }
}
