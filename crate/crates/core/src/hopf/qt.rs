use crate::error::{Error, Result};
use crate::hopf::morphism::HopfMorphism;
use crate::hopf::presentation::{HopfPresentation, Tables};
use crate::linalg::{HenselSolver, Matrix};
use crate::ring::Elem;
use crate::tensor::{apply_at_leg, outer, MultiMap, SparseAlgebra, SparseVec};

/// Outcome of the quasitriangularity checks, as residual counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QtReport {
    /// `R Δ(x) = Δ^op(x) R` for all basis `x`.
    pub intertwining: usize,
    /// `(Δ ⊗ I) R = R_13 R_23`.
    pub first_hexagon: usize,
    /// `(I ⊗ Δ) R = R_13 R_12`.
    pub second_hexagon: usize,
    pub invertible: bool,
    /// `R_21 R = 1 ⊗ 1`.
    pub triangular: bool,
}

impl QtReport {
    pub fn quasitriangular(&self) -> bool {
        self.intertwining == 0 && self.first_hexagon == 0 && self.second_hexagon == 0 && self.invertible
    }

    pub fn describe(&self) -> String {
        format!(
            "intertwining residuals {}, hexagon residuals {} and {}, invertible {}, triangular {}",
            self.intertwining, self.first_hexagon, self.second_hexagon, self.invertible, self.triangular
        )
    }
}

/// An R-matrix whose flags were set by [`verify_qt`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    host: HopfPresentation,
    r: MultiMap,
    triangular: bool,
}

impl RMatrix {
    /// Checks `r` on `host`; fails with `NotQuasitriangular` when any axiom fails.
    pub fn certify(host: HopfPresentation, r: MultiMap) -> Result<Self> {
        let report = verify_qt(&host, &r)?;
        if !report.quasitriangular() {
            return Err(Error::NotQuasitriangular(report.describe()));
        }
        Ok(RMatrix { host, r, triangular: report.triangular })
    }

    pub fn host(&self) -> &HopfPresentation {
        &self.host
    }

    pub fn r(&self) -> &MultiMap {
        &self.r
    }

    pub fn is_triangular(&self) -> bool {
        self.triangular
    }
}

fn diff_count(a: &[(usize, Elem)], b: &[(usize, Elem)]) -> usize {
    let mut merged = std::collections::BTreeMap::new();
    for &(i, v) in a {
        merged.insert(i, (v, Elem::ZERO));
    }
    for &(i, v) in b {
        merged.entry(i).or_insert((Elem::ZERO, Elem::ZERO)).1 = v;
    }
    merged.values().filter(|(x, y)| x != y).count()
}

fn swap_legs(r: &[(usize, Elem)], n: usize) -> SparseVec {
    let mut out: SparseVec = r.iter().map(|&(i, c)| ((i % n) * n + i / n, c)).collect();
    out.sort_by_key(|e| e.0);
    out
}

/// `R` with the unit inserted as the middle leg: `R_13`.
fn insert_middle(r: &[(usize, Elem)], unit: &[(usize, Elem)], n: usize, ring: &crate::ring::RingDescriptor) -> SparseVec {
    let mut out = Vec::new();
    for &(i, c) in r {
        for &(u, uc) in unit {
            out.push(((i / n * n + u) * n + i % n, ring.mul(c, uc)));
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out.sort_by_key(|e| e.0);
    out
}

fn check_r_shape(h: &HopfPresentation, r: &MultiMap) -> Result<SparseVec> {
    h.ring().check_same(r.ring())?;
    if r.arity_in() != 0 || r.arity_out() != 2 || r.dim_out() != h.dim() {
        return Err(Error::ArityMismatch(format!("R must be an element of A⊗A, got {}", r.shape())));
    }
    Ok(r.column(0))
}

/// Sparse inverse of `R` in `A ⊗ A`, if it exists.
fn inverse_of(t: &Tables, alg: &SparseAlgebra, r: &[(usize, Elem)]) -> Result<Option<SparseVec>> {
    let n = t.dim;
    let ring = t.ring;
    let one = outer(&ring, &t.unit, &t.unit, n, 1);
    let candidate = apply_at_leg(&ring, &t.antipode, 1, n, 2, 0, r);
    let is_inverse = |x: &[(usize, Elem)]| {
        diff_count(&alg.mul_tensors(2, r, x), &one) == 0 && diff_count(&alg.mul_tensors(2, x, r), &one) == 0
    };
    if is_inverse(&candidate) {
        return Ok(Some(candidate));
    }
    let nn = n * n;
    let mut lmul = Matrix::zeros(nn, nn);
    for col in 0..nn {
        for (row, v) in alg.mul_tensors(2, r, &[(col, ring.one())]) {
            lmul.set(row, col, v);
        }
    }
    let solver = match HenselSolver::new(&ring, lmul) {
        Ok(s) => s,
        Err(Error::SingularModP) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut rhs = vec![Elem::ZERO; nn];
    for &(i, v) in &one {
        rhs[i] = v;
    }
    let Some(x) = solver.solve(&rhs) else {
        return Ok(None);
    };
    let x: SparseVec = x.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
    Ok(is_inverse(&x).then_some(x))
}

pub fn verify_qt(h: &HopfPresentation, r: &MultiMap) -> Result<QtReport> {
    let rv = check_r_shape(h, r)?;
    let t = h.tables();
    let ring = t.ring;
    let n = t.dim;
    let alg = SparseAlgebra::new(h.m());
    let mut report = QtReport::default();

    for x in 0..n {
        let left = alg.mul_tensors(2, &rv, &t.delta[x]);
        let right = alg.mul_tensors(2, &swap_legs(&t.delta[x], n), &rv);
        report.intertwining += diff_count(&left, &right);
    }

    let r13 = insert_middle(&rv, &t.unit, n, &ring);
    let r23 = outer(&ring, &t.unit, &rv, n, 2);
    let r12 = outer(&ring, &rv, &t.unit, n, 1);
    let lhs1 = apply_at_leg(&ring, &t.delta, 2, n, 2, 0, &rv);
    report.first_hexagon = diff_count(&lhs1, &alg.mul_tensors(3, &r13, &r23));
    let lhs2 = apply_at_leg(&ring, &t.delta, 2, n, 2, 1, &rv);
    report.second_hexagon = diff_count(&lhs2, &alg.mul_tensors(3, &r13, &r12));

    report.invertible = inverse_of(&t, &alg, &rv)?.is_some();
    let one = outer(&ring, &t.unit, &t.unit, n, 1);
    report.triangular = report.quasitriangular() && diff_count(&alg.mul_tensors(2, &swap_legs(&rv, n), &rv), &one) == 0;
    Ok(report)
}

/// The Drinfeld element `u = Σ S(y_i) x_i` of `R = Σ x_i ⊗ y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldElement {
    pub u: Vec<Elem>,
    pub fixed_by_antipode: bool,
    pub squares_to_one: bool,
}

pub fn drinfeld_u(h: &HopfPresentation, r: &MultiMap) -> Result<DrinfeldElement> {
    let rv = check_r_shape(h, r)?;
    let t = h.tables();
    let ring = t.ring;
    let n = t.dim;
    let mut u = vec![Elem::ZERO; n];
    for &(idx, c) in &rv {
        let (a, b) = (idx / n, idx % n);
        for (k, v) in t.product(&t.antipode[b], &t.basis(a)) {
            u[k] = ring.add(u[k], ring.mul(c, v));
        }
    }
    let us: SparseVec = u.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, &v)| (i, v)).collect();
    let fixed_by_antipode = diff_count(&t.apply_antipode(&us), &us) == 0;
    let squares_to_one = diff_count(&t.product(&us, &us), &t.unit) == 0;
    Ok(DrinfeldElement { u, fixed_by_antipode, squares_to_one })
}

/// `θ_R(f) = (f ⊗ I)(R)` as a map `H^{*cop} -> H`, checked to be a Hopf map.
pub fn theta(h: &HopfPresentation, r: &MultiMap) -> Result<HopfMorphism> {
    let rv = check_r_shape(h, r)?;
    let n = h.dim();
    let mut map = MultiMap::zeros(*h.ring(), n, n, 1, 1);
    for (idx, c) in rv {
        map.set(idx % n, idx / n, c);
    }
    let morphism = HopfMorphism::new(h.dual_cop()?, h.clone(), map)?;
    let report = morphism.report();
    if !report.verified() {
        return Err(Error::ThetaNotHopfMap(report.describe()));
    }
    Ok(morphism)
}

/// Inverse of [`theta`]: `R = Σ_c e_c ⊗ θ(f_c)`.
pub fn r_from_theta(theta: &MultiMap) -> Result<MultiMap> {
    let n = theta.dim_in();
    let ring = *theta.ring();
    let mut coeffs = vec![Elem::ZERO; n * n];
    for c in 0..n {
        for (b, v) in theta.column(c) {
            coeffs[c * n + b] = v;
        }
    }
    MultiMap::from_vector(ring, n, 2, &coeffs)
}

/// `1 ⊗ 1` in `A ⊗ A`.
pub fn trivial_r(h: &HopfPresentation) -> Result<MultiMap> {
    let t = h.tables();
    let one = outer(&t.ring, &t.unit, &t.unit, t.dim, 1);
    let mut coeffs = vec![Elem::ZERO; t.dim * t.dim];
    for (i, v) in one {
        coeffs[i] = v;
    }
    MultiMap::from_vector(t.ring, t.dim, 2, &coeffs)
}

/// Element of `A` from a sparse vector, for reporting.
pub fn dense(n: usize, v: &[(usize, Elem)]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; n];
    for &(i, c) in v {
        out[i] = c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::groups::{group_algebra, Group};
    use crate::ring::make_ring;

    /// `3(1⊗1 + 1⊗g + g⊗1 + 4 g⊗g)` on `F_5[C_2]`.
    fn r1(h: &HopfPresentation) -> MultiMap {
        let ring = *h.ring();
        let c: Vec<Elem> = [3, 3, 3, 12].iter().map(|&v| ring.from_int(v)).collect();
        MultiMap::from_vector(ring, 2, 2, &c).unwrap()
    }

    #[test]
    fn kc2_structures() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let h = group_algebra(f5, &Group::cyclic(2)).unwrap();
        let r0 = trivial_r(&h).unwrap();
        let rep = verify_qt(&h, &r0).unwrap();
        assert!(rep.quasitriangular() && rep.triangular);
        let u = drinfeld_u(&h, &r0).unwrap();
        assert_eq!(u.u, vec![f5.one(), f5.zero()]);
        assert!(u.squares_to_one);

        let r = r1(&h);
        let rep = verify_qt(&h, &r).unwrap();
        assert!(rep.quasitriangular() && rep.triangular, "{}", rep.describe());
        let u = drinfeld_u(&h, &r).unwrap();
        assert_eq!(u.u, vec![f5.zero(), f5.one()]);
        assert!(u.squares_to_one && u.fixed_by_antipode);
    }

    #[test]
    fn theta_round_trip() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let h = group_algebra(f5, &Group::cyclic(2)).unwrap();
        let r = r1(&h);
        let th = theta(&h, &r).unwrap();
        assert_eq!(r_from_theta(th.map()).unwrap(), r);
        // The nontrivial character δ_1 - δ_g = f_0 - f_1 goes to g.
        let chi = vec![(0, f5.one()), (1, f5.from_int(-1))];
        assert_eq!(th.map().apply(&chi), vec![(1, f5.one())]);

        let r0 = trivial_r(&h).unwrap();
        let th0 = theta(&h, &r0).unwrap();
        // f ↦ f(1)·1
        assert_eq!(th0.map().column(0), vec![(0, f5.one())]);
        assert!(th0.map().column(1).is_empty());
    }

    #[test]
    fn non_r_matrix_rejected() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let h = group_algebra(f5, &Group::cyclic(3)).unwrap();
        let mut c = vec![f5.zero(); 9];
        c[1] = f5.one();
        let r = MultiMap::from_vector(f5, 3, 2, &c).unwrap();
        assert!(matches!(RMatrix::certify(h, r), Err(Error::NotQuasitriangular(_))));
    }
}
