use crate::error::{Error, Result};
use crate::hopf::presentation::{apply_cols, HopfPresentation};
use crate::ring::Elem;
use crate::tensor::{Accumulator, MultiMap, SparseVec};

/// A linear map between two presentations, checked against the bialgebra
/// structure on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfMorphism {
    source: HopfPresentation,
    target: HopfPresentation,
    map: MultiMap,
}

/// Number of nonzero residual coordinates for each compatibility.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MorphismReport {
    pub multiplicative: usize,
    pub comultiplicative: usize,
    pub unital: usize,
    pub counital: usize,
}

impl MorphismReport {
    pub fn verified(&self) -> bool {
        self.multiplicative == 0 && self.comultiplicative == 0 && self.unital == 0 && self.counital == 0
    }

    pub fn describe(&self) -> String {
        format!(
            "multiplicative residuals {}, comultiplicative {}, unital {}, counital {}",
            self.multiplicative, self.comultiplicative, self.unital, self.counital
        )
    }
}

fn count_diff(a: &[(usize, Elem)], b: &[(usize, Elem)]) -> usize {
    let mut diff = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                diff += usize::from(x.1 != y.1);
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                diff += 1;
                i += 1;
            }
            (Some(_), None) => {
                diff += 1;
                i += 1;
            }
            _ => {
                diff += 1;
                j += 1;
            }
        }
    }
    diff
}

/// `(f ⊗ f)(v)` for a `1 -> 1` map given by columns, source dimension `n_in`.
pub fn apply_twice(f_cols: &[SparseVec], n_in: usize, n_out: usize, v: &[(usize, Elem)], ring: &crate::ring::RingDescriptor) -> SparseVec {
    let mut acc = Accumulator::new();
    for &(idx, c) in v {
        let (a, b) = (idx / n_in, idx % n_in);
        for &(o1, x) in &f_cols[a] {
            for &(o2, y) in &f_cols[b] {
                acc.add(ring, o1 * n_out + o2, ring.mul(c, ring.mul(x, y)));
            }
        }
    }
    acc.finish()
}

/// Residuals of `map` as a bialgebra map `source -> target`.
pub fn verify_morphism(source: &HopfPresentation, target: &HopfPresentation, map: &MultiMap) -> MorphismReport {
    let r = *source.ring();
    let (na, nb) = (source.dim(), target.dim());
    let ta = source.tables();
    let tb = target.tables();
    let phi = map.columns();
    let mut report = MorphismReport::default();
    for x in 0..na {
        for y in 0..na {
            let left = apply_cols(&r, &phi, &ta.mul[x * na + y]);
            let right = tb.product(&phi[x], &phi[y]);
            report.multiplicative += count_diff(&left, &right);
        }
        let left = tb.coproduct(&phi[x]);
        let right = apply_twice(&phi, na, nb, &ta.delta[x], &r);
        report.comultiplicative += count_diff(&left, &right);
        let eps = tb.counit_of(&phi[x]);
        report.counital += usize::from(eps != ta.counit[x]);
    }
    report.unital = count_diff(&apply_cols(&r, &phi, &ta.unit), &tb.unit);
    report
}

impl HopfMorphism {
    pub fn new(source: HopfPresentation, target: HopfPresentation, map: MultiMap) -> Result<Self> {
        source.ring().check_same(target.ring())?;
        source.ring().check_same(map.ring())?;
        if map.arity_in() != 1 || map.arity_out() != 1 || map.dim_in() != source.dim() || map.dim_out() != target.dim() {
            return Err(Error::ArityMismatch(format!(
                "map {} does not go from dimension {} to {}",
                map.shape(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(HopfMorphism { source, target, map })
    }

    pub fn identity(h: &HopfPresentation) -> Self {
        let map = MultiMap::identity(*h.ring(), h.dim(), 1);
        HopfMorphism { source: h.clone(), target: h.clone(), map }
    }

    /// `x ↦ ε(x) 1`.
    pub fn counit_unit(source: &HopfPresentation, target: &HopfPresentation) -> Result<Self> {
        let map = target.unit().compose(source.counit())?;
        HopfMorphism::new(source.clone(), target.clone(), map)
    }

    pub fn source(&self) -> &HopfPresentation {
        &self.source
    }

    pub fn target(&self) -> &HopfPresentation {
        &self.target
    }

    pub fn map(&self) -> &MultiMap {
        &self.map
    }

    pub fn report(&self) -> MorphismReport {
        verify_morphism(&self.source, &self.target, &self.map)
    }

    /// `Ok(self)` when all four compatibilities hold exactly.
    pub fn verified(self) -> Result<Self> {
        let report = self.report();
        if report.verified() {
            Ok(self)
        } else {
            Err(Error::NotAHopfMap(report.describe()))
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &HopfMorphism) -> Result<HopfMorphism> {
        HopfMorphism::new(first.source.clone(), self.target.clone(), self.map.compose(&first.map)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::groups::{group_algebra, Group};
    use crate::ring::make_ring;

    #[test]
    fn inclusion_is_a_hopf_map() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let c2 = group_algebra(f5, &Group::cyclic(2)).unwrap();
        let c4 = group_algebra(f5, &Group::cyclic(4)).unwrap();
        let mut map = MultiMap::zeros(f5, 2, 4, 1, 1);
        map.set(0, 0, f5.one());
        map.set(2, 1, f5.one());
        assert!(HopfMorphism::new(c2.clone(), c4.clone(), map.clone()).unwrap().report().verified());
        // g ↦ h is not multiplicative
        map.set(2, 1, f5.zero());
        map.set(1, 1, f5.one());
        let report = HopfMorphism::new(c2.clone(), c4, map).unwrap().report();
        assert!(report.multiplicative > 0);
        assert!(HopfMorphism::counit_unit(&c2, &c2.dual()).unwrap().report().verified());
    }
}
