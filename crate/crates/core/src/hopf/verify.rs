use std::fmt;

use crate::hopf::presentation::{apply_cols, HopfPresentation, Tables};
use crate::ring::Elem;
use crate::tensor::{apply_at_leg, outer, SparseAlgebra, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    CoproductMultiplicative,
    CounitMultiplicative,
    CoproductUnital,
    CounitUnital,
    LeftAntipode,
    RightAntipode,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Associativity,
        Axiom::Unit,
        Axiom::Coassociativity,
        Axiom::Counit,
        Axiom::CoproductMultiplicative,
        Axiom::CounitMultiplicative,
        Axiom::CoproductUnital,
        Axiom::CounitUnital,
        Axiom::LeftAntipode,
        Axiom::RightAntipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::CoproductMultiplicative => "coproduct multiplicative",
            Axiom::CounitMultiplicative => "counit multiplicative",
            Axiom::CoproductUnital => "coproduct of unit",
            Axiom::CounitUnital => "counit of unit",
            Axiom::LeftAntipode => "left antipode",
            Axiom::RightAntipode => "right antipode",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const KEPT_RESIDUALS: usize = 8;

/// Outcome of one axiom: the number of nonzero residual coordinates and the
/// first few of them as `(output index, input index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub residual_count: usize,
    pub residuals: Vec<(usize, usize)>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.residual_count == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> Vec<Axiom> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.axiom).collect()
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

struct Residuals<'a> {
    tables: &'a Tables,
    check: AxiomCheck,
}

impl<'a> Residuals<'a> {
    fn new(tables: &'a Tables, axiom: Axiom) -> Self {
        Residuals { tables, check: AxiomCheck { axiom, residual_count: 0, residuals: Vec::new() } }
    }

    /// Records every coordinate where the two sparse vectors differ.
    fn compare(&mut self, input: usize, lhs: &[(usize, Elem)], rhs: &[(usize, Elem)]) {
        let r = &self.tables.ring;
        let (mut i, mut j) = (0, 0);
        while i < lhs.len() || j < rhs.len() {
            let (idx, diff) = match (lhs.get(i), rhs.get(j)) {
                (Some(&(a, x)), Some(&(b, y))) if a == b => {
                    i += 1;
                    j += 1;
                    (a, r.sub(x, y))
                }
                (Some(&(a, x)), Some(&(b, _))) if a < b => {
                    i += 1;
                    (a, x)
                }
                (Some(&(a, x)), None) => {
                    i += 1;
                    (a, x)
                }
                (_, Some(&(b, y))) => {
                    j += 1;
                    (b, r.neg(y))
                }
                (None, None) => unreachable!(),
            };
            if !diff.is_zero() {
                self.check.residual_count += 1;
                if self.check.residuals.len() < KEPT_RESIDUALS {
                    self.check.residuals.push((idx, input));
                }
            }
        }
    }

    fn finish(self) -> AxiomCheck {
        self.check
    }
}

fn scalar(c: Elem) -> SparseVec {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![(0, c)]
    }
}

/// The eight bialgebra axioms.
pub fn verify_bialgebra(tables: &Tables) -> AxiomReport {
    let t = tables;
    let r = &t.ring;
    let n = t.dim;
    let alg = SparseAlgebra { ring: *r, dim: n, mul: t.mul.clone() };
    let mut checks = Vec::new();

    let mut res = Residuals::new(t, Axiom::Associativity);
    for i in 0..n {
        for j in 0..n {
            let ij = &t.mul[i * n + j];
            for k in 0..n {
                let left = t.product(ij, &t.basis(k));
                let right = t.product(&t.basis(i), &t.mul[j * n + k]);
                res.compare((i * n + j) * n + k, &left, &right);
            }
        }
    }
    checks.push(res.finish());

    let mut res = Residuals::new(t, Axiom::Unit);
    for x in 0..n {
        let e = t.basis(x);
        res.compare(x, &t.product(&t.unit, &e), &e);
        res.compare(x, &t.product(&e, &t.unit), &e);
    }
    checks.push(res.finish());

    let mut res = Residuals::new(t, Axiom::Coassociativity);
    for x in 0..n {
        let d = &t.delta[x];
        let left = apply_at_leg(r, &t.delta, 2, n, 2, 0, d);
        let right = apply_at_leg(r, &t.delta, 2, n, 2, 1, d);
        res.compare(x, &left, &right);
    }
    checks.push(res.finish());

    let counit_cols: Vec<SparseVec> = t.counit.iter().map(|&c| scalar(c)).collect();
    let mut res = Residuals::new(t, Axiom::Counit);
    for x in 0..n {
        let d = &t.delta[x];
        let e = t.basis(x);
        res.compare(x, &apply_at_leg(r, &counit_cols, 0, n, 2, 0, d), &e);
        res.compare(x, &apply_at_leg(r, &counit_cols, 0, n, 2, 1, d), &e);
    }
    checks.push(res.finish());

    let mut res = Residuals::new(t, Axiom::CoproductMultiplicative);
    for x in 0..n {
        for y in 0..n {
            let left = t.coproduct(&t.mul[x * n + y]);
            let right = alg.mul_tensors(2, &t.delta[x], &t.delta[y]);
            res.compare(x * n + y, &left, &right);
        }
    }
    checks.push(res.finish());

    let mut res = Residuals::new(t, Axiom::CounitMultiplicative);
    for x in 0..n {
        for y in 0..n {
            let left = scalar(t.counit_of(&t.mul[x * n + y]));
            let right = scalar(r.mul(t.counit[x], t.counit[y]));
            res.compare(x * n + y, &left, &right);
        }
    }
    checks.push(res.finish());

    let mut res = Residuals::new(t, Axiom::CoproductUnital);
    res.compare(0, &t.coproduct(&t.unit), &outer(r, &t.unit, &t.unit, n, 1));
    checks.push(res.finish());

    let mut res = Residuals::new(t, Axiom::CounitUnital);
    res.compare(0, &scalar(t.counit_of(&t.unit)), &scalar(r.one()));
    checks.push(res.finish());

    AxiomReport { checks }
}

/// Left and right antipode identities `m(S⊗I)Δ = m(I⊗S)Δ = unit∘ε`.
pub fn verify_antipode(tables: &Tables) -> Vec<AxiomCheck> {
    let t = tables;
    let r = &t.ring;
    let n = t.dim;
    let mut left = Residuals::new(t, Axiom::LeftAntipode);
    let mut right = Residuals::new(t, Axiom::RightAntipode);
    for x in 0..n {
        let expected: SparseVec = t.unit.iter().map(|&(i, u)| (i, r.mul(u, t.counit[x]))).filter(|(_, v)| !v.is_zero()).collect();
        let s_left = apply_at_leg(r, &t.antipode, 1, n, 2, 0, &t.delta[x]);
        let s_right = apply_at_leg(r, &t.antipode, 1, n, 2, 1, &t.delta[x]);
        left.compare(x, &apply_cols(r, &t.mul, &s_left), &expected);
        right.compare(x, &apply_cols(r, &t.mul, &s_right), &expected);
    }
    vec![left.finish(), right.finish()]
}

/// All ten Hopf algebra axioms, each with exact residuals.
pub fn verify_hopf(h: &HopfPresentation) -> AxiomReport {
    let tables = h.tables();
    let mut report = verify_bialgebra(&tables);
    report.checks.extend(verify_antipode(&tables));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::groups::{group_algebra, Group};
    use crate::ring::make_ring;

    #[test]
    fn group_algebras_verify() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let h = group_algebra(f5, &Group::cyclic(2)).unwrap();
        assert!(verify_hopf(&h).verified());
        let z25 = make_ring(5, 2, 1, None).unwrap();
        let h = group_algebra(z25, &Group::cyclic(2)).unwrap();
        assert!(verify_hopf(&h).verified());
        assert!(verify_hopf(&h.dual()).verified());
    }

    #[test]
    fn broken_antipode_is_reported() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let h = group_algebra(f5, &Group::cyclic(2)).unwrap();
        let mut s = h.antipode().clone();
        // S(g) = 1
        s.set(1, 1, f5.zero());
        s.set(0, 1, f5.one());
        let bad = h.with_antipode(s).unwrap();
        let report = verify_hopf(&bad);
        assert_eq!(report.failures(), vec![Axiom::LeftAntipode, Axiom::RightAntipode]);
    }
}
