//! The Drinfeld double `D(H) = H^{*cop} ⋈ H`.
//!
//! Basis `f_i ⋈ e_a` at index `i * N + a`, where `f_i` is the dual basis.
//!
//! * product: `(f ⋈ a)(f' ⋈ b) = Σ f (a_(1) ⇀ f' ↼ S^{-1}(a_(3))) ⋈ a_(2) b`, with
//!   `(a ⇀ f' ↼ c)(w) = f'(c w a)` and the product of `H^*` dual to `Δ`;
//! * coproduct: `Δ(f ⋈ a) = Σ (f_(2) ⋈ a_(1)) ⊗ (f_(1) ⋈ a_(2))`, where
//!   `f_(1) ⊗ f_(2)` is dual to `m`;
//! * unit `ε ⋈ 1`, counit `f ⋈ a ↦ f(1) ε(a)`;
//! * antipode `S(f ⋈ a) = (ε ⋈ S(a)) (f ∘ S^{-1} ⋈ 1)`;
//! * R-matrix `R = Σ_i (ε ⋈ e_i) ⊗ (f_i ⋈ 1)`.

use crate::error::{Error, Result};
use crate::hopf::presentation::HopfPresentation;
use crate::hopf::qt::RMatrix;
use crate::hopf::verify::verify_hopf;
use crate::ring::Elem;
use crate::tensor::{apply_at_leg, Accumulator, MultiMap, SparseVec};

pub fn drinfeld_double(h: &HopfPresentation) -> Result<(HopfPresentation, RMatrix)> {
    let ring = *h.ring();
    let n = h.dim();
    let d = n * n;
    let t = h.tables();
    let sinv = h.antipode_inverse()?.columns();

    // f_i f_l = Σ_t Δ(e_t)[(i, l)] f_t
    let mut dual_mul: Vec<SparseVec> = vec![Vec::new(); n * n];
    for (tt, col) in t.delta.iter().enumerate() {
        for &(idx, c) in col {
            dual_mul[idx].push((tt, c));
        }
    }
    // conj[z * n + x][l] = S^{-1}(e_z) e_l e_x
    let conj: Vec<Vec<SparseVec>> = (0..n * n)
        .map(|zx| {
            let (z, x) = (zx / n, zx % n);
            (0..n).map(|l| t.product(&t.product(&sinv[z], &t.basis(l)), &t.basis(x))).collect()
        })
        .collect();
    let delta3: Vec<SparseVec> = (0..n).map(|a| apply_at_leg(&ring, &t.delta, 2, n, 2, 0, &t.delta[a])).collect();

    let mut m = MultiMap::zeros(ring, d, d, 2, 1);
    for a in 0..n {
        for k in 0..n {
            // Σ_{x,y,z} c · g_{x,z,k} ⊗ e_y with g(e_l) = coefficient of e_k in conj[z][x][l]
            let mut terms: Vec<(usize, usize, Elem)> = Vec::new();
            for &(xyz, c) in &delta3[a] {
                let (x, y, z) = (xyz / (n * n), (xyz / n) % n, xyz % n);
                for (l, image) in conj[z * n + x].iter().enumerate() {
                    if let Some(&(_, v)) = image.iter().find(|e| e.0 == k) {
                        terms.push((l, y, ring.mul(c, v)));
                    }
                }
            }
            for i in 0..n {
                for b in 0..n {
                    let mut acc = Accumulator::new();
                    for &(l, y, c) in &terms {
                        for &(tt, dc) in &dual_mul[i * n + l] {
                            for &(s, mc) in &t.mul[y * n + b] {
                                acc.add(&ring, tt * n + s, ring.mul(c, ring.mul(dc, mc)));
                            }
                        }
                    }
                    for (o, v) in acc.finish() {
                        m.set(o, (i * n + a) * d + k * n + b, v);
                    }
                }
            }
        }
    }

    let mut delta = MultiMap::zeros(ring, d, d, 1, 2);
    for i in 0..n {
        let mut dual_coproduct = Vec::new();
        for k in 0..n {
            for l in 0..n {
                if let Some(&(_, c)) = t.mul[k * n + l].iter().find(|e| e.0 == i) {
                    dual_coproduct.push((k, l, c));
                }
            }
        }
        for a in 0..n {
            for &(k, l, c) in &dual_coproduct {
                for &(xy, dc) in &t.delta[a] {
                    let (x, y) = (xy / n, xy % n);
                    delta.add_at((l * n + x) * d + k * n + y, i * n + a, ring.mul(c, dc));
                }
            }
        }
    }

    let mut unit = MultiMap::zeros(ring, d, d, 0, 1);
    let mut counit = MultiMap::zeros(ring, d, d, 1, 0);
    for i in 0..n {
        for a in 0..n {
            let u = t.unit.iter().find(|e| e.0 == a).map_or(Elem::ZERO, |e| e.1);
            unit.set(i * n + a, 0, ring.mul(t.counit[i], u));
            let f1 = t.unit.iter().find(|e| e.0 == i).map_or(Elem::ZERO, |e| e.1);
            counit.set(0, i * n + a, ring.mul(f1, t.counit[a]));
        }
    }

    let dmul = m.columns();
    let product = |x: &[(usize, Elem)], y: &[(usize, Elem)]| {
        let mut acc = Accumulator::new();
        for &(i, a) in x {
            for &(j, b) in y {
                acc.add_scaled(&ring, &dmul[i * d + j], ring.mul(a, b));
            }
        }
        acc.finish()
    };
    let embed_h = |v: &[(usize, Elem)]| -> SparseVec {
        // ε ⋈ v
        let mut out = Vec::new();
        for (j, &e) in t.counit.iter().enumerate() {
            for &(a, c) in v {
                out.push((j * n + a, ring.mul(e, c)));
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out.sort_by_key(|e| e.0);
        out
    };
    let embed_dual = |v: &[(usize, Elem)]| -> SparseVec {
        // v ⋈ 1
        let mut out = Vec::new();
        for &(j, c) in v {
            for &(a, u) in &t.unit {
                out.push((j * n + a, ring.mul(c, u)));
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out.sort_by_key(|e| e.0);
        out
    };

    let mut antipode = MultiMap::zeros(ring, d, d, 1, 1);
    for i in 0..n {
        // f_i ∘ S^{-1} = Σ_j f_i(S^{-1} e_j) f_j
        let twisted: SparseVec =
            (0..n).filter_map(|j| sinv[j].iter().find(|e| e.0 == i).map(|&(_, c)| (j, c))).collect();
        let right = embed_dual(&twisted);
        for a in 0..n {
            let left = embed_h(&t.antipode[a]);
            for (o, v) in product(&left, &right) {
                antipode.set(o, i * n + a, v);
            }
        }
    }

    let double = HopfPresentation::new(ring, d, m, unit, delta, counit, antipode)?;
    let report = verify_hopf(&double);
    if !report.verified() {
        return Err(Error::InternalAxiomFailure(format!("double fails {:?}", report.failures())));
    }

    let mut r = vec![Elem::ZERO; d * d];
    for i in 0..n {
        let left = embed_h(&[(i, ring.one())]);
        let right = embed_dual(&[(i, ring.one())]);
        for &(x, a) in &left {
            for &(y, b) in &right {
                r[x * d + y] = ring.add(r[x * d + y], ring.mul(a, b));
            }
        }
    }
    let r = MultiMap::from_vector(ring, d, 2, &r)?;
    let rmatrix = RMatrix::certify(double.clone(), r)
        .map_err(|e| Error::InternalAxiomFailure(format!("canonical R-matrix of the double: {e}")))?;
    Ok((double, rmatrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::groups::{group_algebra, Group};
    use crate::hopf::qt::{drinfeld_u, verify_qt};
    use crate::ring::make_ring;

    #[test]
    fn double_of_c2() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let h = group_algebra(f5, &Group::cyclic(2)).unwrap();
        let (d, r) = drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), 4);
        assert!(d.is_commutative());
        let rep = verify_qt(&d, r.r()).unwrap();
        assert!(rep.quasitriangular());
        assert!(!rep.triangular);
        let u = drinfeld_u(&d, r.r()).unwrap();
        assert!(u.fixed_by_antipode);
    }

    #[test]
    fn double_of_s3() {
        let f7 = make_ring(7, 1, 1, None).unwrap();
        let h = group_algebra(f7, &Group::symmetric3()).unwrap();
        let (d, _) = drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), 36);
        assert!(!d.is_commutative());
        assert!(!d.is_cocommutative());
    }

    #[test]
    fn double_of_a_dual() {
        let f7 = make_ring(7, 1, 1, None).unwrap();
        let h = group_algebra(f7, &Group::symmetric3()).unwrap().dual();
        assert_eq!(drinfeld_double(&h).unwrap().0.dim(), 36);
    }
}
