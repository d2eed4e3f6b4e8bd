//! Structural invariants of a Hopf algebra over a finite field.

use crate::error::{Error, Result};
use crate::hopf::presentation::{HopfPresentation, Tables};
use crate::linalg::{Echelon, Matrix};
use crate::ring::{Elem, RingDescriptor};
use crate::tensor::MultiMap;

/// Default upper bound on the field size for exhaustive eigenvalue search.
pub const DEFAULT_ROOT_SEARCH_BOUND: u64 = 1 << 16;

/// `HOPFLIFT_ROOT_SEARCH_BOUND` if set and parseable, else the default.
pub fn root_search_bound() -> u64 {
    std::env::var("HOPFLIFT_ROOT_SEARCH_BOUND")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ROOT_SEARCH_BOUND)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub ring: RingDescriptor,
    pub dim: usize,
    pub semisimple: bool,
    pub cosemisimple: bool,
    pub commutative: bool,
    pub cocommutative: bool,
    pub antipode_order: usize,
    pub antipode_sq_order: usize,
    pub trace_s2: Elem,
    pub dim_in_k: Elem,
    pub grouplikes: Vec<Vec<Elem>>,
    pub central_grouplikes: Vec<Vec<Elem>>,
}

fn require_field(ring: &RingDescriptor) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField { n: ring.precision() })
    }
}

fn require_searchable(ring: &RingDescriptor) -> Result<()> {
    let (q, bound) = (ring.residue_field_size(), root_search_bound());
    if q > bound {
        return Err(Error::FieldTooLargeForRootSearch { q, bound });
    }
    Ok(())
}

/// Square matrix of a `1 -> 1` map, `mat[o][i]`.
pub fn map_matrix(f: &MultiMap) -> Matrix {
    let mut mat = Matrix::zeros(f.out_size(), f.in_size());
    for o in 0..f.out_size() {
        for i in 0..f.in_size() {
            mat.set(o, i, f.get(o, i));
        }
    }
    mat
}

fn mat_mul(ring: &RingDescriptor, a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = a.get(i, k);
            if !x.is_zero() {
                ring.axpy(out.row_mut(i), x, b.row(k));
            }
        }
    }
    out
}

fn is_identity(ring: &RingDescriptor, a: &Matrix) -> bool {
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == if i == j { ring.one() } else { Elem::ZERO }))
}

/// `(order of S, order of S²)`, searching up to `4 · dim`.
pub fn antipode_orders(h: &HopfPresentation) -> Result<(usize, usize)> {
    let ring = h.ring();
    let bound = 4 * h.dim();
    let s = map_matrix(h.antipode());
    let mut power = s.clone();
    for t in 1..=bound {
        if is_identity(ring, &power) {
            return Ok((t, t / gcd(t, 2)));
        }
        power = mat_mul(ring, &power, &s);
    }
    Err(Error::OrderNotFound { bound })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn trace_s2(h: &HopfPresentation) -> Elem {
    let ring = h.ring();
    let s = map_matrix(h.antipode());
    let s2 = mat_mul(ring, &s, &s);
    (0..h.dim()).fold(Elem::ZERO, |acc, i| ring.add(acc, s2.get(i, i)))
}

/// Stacked system, one block of rows per basis element.
fn stacked(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize, usize) -> Elem, blocks: usize) -> Matrix {
    let mut mat = Matrix::zeros(blocks * rows, cols);
    for b in 0..blocks {
        for r in 0..rows {
            for c in 0..cols {
                mat.set(b * rows + r, c, entry(b, r, c));
            }
        }
    }
    mat
}

fn kernel(ring: &RingDescriptor, mat: Matrix) -> Result<Vec<Vec<Elem>>> {
    Ok(Echelon::factor(ring, mat)?.kernel_basis())
}

/// Basis of the space of left (or right) integrals `aΛ = ε(a)Λ`.
pub fn integral(h: &HopfPresentation, side: Side) -> Result<Vec<Vec<Elem>>> {
    let ring = *h.ring();
    require_field(&ring)?;
    let n = h.dim();
    let m = h.m();
    let counit = h.counit().coeffs();
    // row (a, o), column l: coefficient of e_o in a·e_l (or e_l·a) minus ε(a)δ_{ol}
    let mat = stacked(
        n,
        n,
        |a, o, l| {
            let prod = match side {
                Side::Left => m.get(o, a * n + l),
                Side::Right => m.get(o, l * n + a),
            };
            if o == l {
                ring.sub(prod, counit[a])
            } else {
                prod
            }
        },
        n,
    );
    kernel(&ring, mat)
}

fn counit_of(h: &HopfPresentation, v: &[Elem]) -> Elem {
    let ring = h.ring();
    h.counit().coeffs().iter().zip(v).fold(Elem::ZERO, |acc, (&e, &x)| ring.add(acc, ring.mul(e, x)))
}

/// `ε(Λ) ≠ 0` for a left integral `Λ`.
pub fn is_semisimple(h: &HopfPresentation) -> Result<bool> {
    Ok(integral(h, Side::Left)?.iter().any(|l| !counit_of(h, l).is_zero()))
}

pub fn is_cosemisimple(h: &HopfPresentation) -> Result<bool> {
    is_semisimple(&h.dual())
}

/// Bases of the nonzero joint eigenspaces `{v : A_x v = λ_x v ∀x}` inside
/// `span(basis)`, eigenvalues found by exhaustive search over the field.
fn joint_eigenspaces(ring: &RingDescriptor, ops: &[Matrix], start: Vec<Vec<Elem>>) -> Result<Vec<Vec<Vec<Elem>>>> {
    require_searchable(ring)?;
    let scalars: Vec<Elem> = ring.elements().collect();
    let mut spaces = vec![start];
    for op in ops {
        let mut refined = Vec::new();
        for basis in spaces {
            let k = basis.len();
            let images: Vec<Vec<Elem>> = basis.iter().map(|b| op.mul_vec(ring, b)).collect();
            let rows = op.rows();
            let mut found = 0;
            for &lambda in &scalars {
                if found == k {
                    break;
                }
                // (op - λ) B c = 0
                let mut mat = Matrix::zeros(rows, k);
                for (j, (b, img)) in basis.iter().zip(&images).enumerate() {
                    for r in 0..rows {
                        mat.set(r, j, ring.sub(img[r], ring.mul(lambda, b[r])));
                    }
                }
                let ker = kernel(ring, mat)?;
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<Elem>> = ker
                    .iter()
                    .map(|c| {
                        let mut v = vec![Elem::ZERO; rows];
                        for (cj, b) in c.iter().zip(&basis) {
                            if !cj.is_zero() {
                                ring.axpy(&mut v, *cj, b);
                            }
                        }
                        v
                    })
                    .collect();
                refined.push(sub);
            }
        }
        spaces = refined;
    }
    Ok(spaces)
}

fn unit_vectors(ring: &RingDescriptor, n: usize) -> Vec<Vec<Elem>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Elem::ZERO; n];
            v[i] = ring.one();
            v
        })
        .collect()
}

fn is_grouplike(t: &Tables, g: &[Elem]) -> bool {
    let sparse: Vec<(usize, Elem)> = g.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let n = t.dim;
    let mut expected = Vec::new();
    for &(i, a) in &sparse {
        for &(j, b) in &sparse {
            expected.push((i * n + j, t.ring.mul(a, b)));
        }
    }
    expected.retain(|(_, c)| !c.is_zero());
    t.coproduct(&sparse) == expected && t.counit_of(&sparse) == t.ring.one()
}

fn is_central(t: &Tables, g: &[Elem]) -> bool {
    let sparse: Vec<(usize, Elem)> = g.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    (0..t.dim).all(|x| t.product(&sparse, &t.basis(x)) == t.product(&t.basis(x), &sparse))
}

/// All grouplike elements, unit first, the rest in lexicographic order of
/// coefficient vectors.
///
/// A grouplike `g` is a joint eigenvector of the maps `a ↦ (f_x ⊗ I)Δ(a)`
/// with eigenvalues `f_x(g)`; conversely every joint eigenvector `v` satisfies
/// `Δ(v) = λ ⊗ v` and hence is `ε(v)` times a grouplike.
pub fn grouplikes(h: &HopfPresentation, central_only: bool) -> Result<Vec<Vec<Elem>>> {
    let ring = *h.ring();
    require_field(&ring)?;
    let n = h.dim();
    let t = h.tables();
    let ops: Vec<Matrix> = (0..n)
        .map(|x| {
            let mut mat = Matrix::zeros(n, n);
            for (l, col) in t.delta.iter().enumerate() {
                for &(idx, c) in col {
                    if idx / n == x {
                        mat.set(idx % n, l, c);
                    }
                }
            }
            mat
        })
        .collect();
    let mut out = Vec::new();
    for space in joint_eigenspaces(&ring, &ops, unit_vectors(&ring, n))? {
        for v in space {
            let e = counit_of(h, &v);
            if e.is_zero() {
                continue;
            }
            let inv = ring.inv(e)?;
            let g: Vec<Elem> = v.iter().map(|&c| ring.mul(c, inv)).collect();
            if !is_grouplike(&t, &g) {
                return Err(Error::InternalAxiomFailure("joint eigenvector is not grouplike".into()));
            }
            if !central_only || is_central(&t, &g) {
                out.push(g);
            }
        }
    }
    let unit = dense_unit(h);
    out.sort_by(|a, b| (*a != unit).cmp(&(*b != unit)).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}

fn dense_unit(h: &HopfPresentation) -> Vec<Elem> {
    h.unit().coeffs().to_vec()
}

/// Sizes `n_i` of the matrix blocks `M_{n_i}(F_q)` of a split semisimple
/// algebra, ascending.
pub fn irreducible_dimensions(h: &HopfPresentation) -> Result<Vec<usize>> {
    let ring = *h.ring();
    require_field(&ring)?;
    if !is_semisimple(h)? {
        return Err(Error::NotSemisimple);
    }
    let n = h.dim();
    let t = h.tables();
    let m = h.m();
    let center = kernel(
        &ring,
        stacked(n, n, |x, o, l| ring.sub(m.get(o, x * n + l), m.get(o, l * n + x)), n),
    )?;
    let c = center.len();
    // coordinates of products in the center basis
    let mut basis_mat = Matrix::zeros(n, c);
    for (j, z) in center.iter().enumerate() {
        for (r, &v) in z.iter().enumerate() {
            basis_mat.set(r, j, v);
        }
    }
    let coords = Echelon::factor(&ring, basis_mat)?;
    let sparse = |v: &[Elem]| -> Vec<(usize, Elem)> { v.iter().copied().enumerate().filter(|(_, c)| !c.is_zero()).collect() };
    let densify = |s: Vec<(usize, Elem)>| {
        let mut v = vec![Elem::ZERO; n];
        for (i, c) in s {
            v[i] = c;
        }
        v
    };
    let mut ops = Vec::with_capacity(c);
    for zi in &center {
        let mut op = Matrix::zeros(c, c);
        for (j, zj) in center.iter().enumerate() {
            let prod = densify(t.product(&sparse(zi), &sparse(zj)));
            let col = coords.solve(&prod).ok_or_else(|| Error::InternalAxiomFailure("center is not closed".into()))?;
            for (r, v) in col.into_iter().enumerate() {
                op.set(r, j, v);
            }
        }
        ops.push(op);
    }
    let spaces = joint_eigenspaces(&ring, &ops, unit_vectors(&ring, c))?;
    if spaces.len() != c || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::NotSplit);
    }
    let mut dims = Vec::with_capacity(c);
    for space in spaces {
        let mut e = vec![Elem::ZERO; n];
        for (cj, z) in space[0].iter().zip(&center) {
            ring.axpy(&mut e, *cj, z);
        }
        // e² = λe with λ ≠ 0
        let sq = densify(t.product(&sparse(&e), &sparse(&e)));
        let pivot = e.iter().position(|x| !x.is_zero()).ok_or(Error::NotSplit)?;
        let lambda = ring.mul(sq[pivot], ring.inv(e[pivot])?);
        if lambda.is_zero() {
            return Err(Error::NotSemisimple);
        }
        let scale = ring.inv(lambda)?;
        let e: Vec<(usize, Elem)> = sparse(&e).into_iter().map(|(i, x)| (i, ring.mul(x, scale))).collect();
        let mut block = Matrix::zeros(n, n);
        for x in 0..n {
            for (o, v) in t.product(&t.basis(x), &e) {
                block.set(o, x, v);
            }
        }
        let rank = Echelon::factor(&ring, block)?.rank();
        let root = (rank as f64).sqrt().round() as usize;
        if root * root != rank {
            return Err(Error::NotSplit);
        }
        dims.push(root);
    }
    dims.sort_unstable();
    Ok(dims)
}

pub fn analyze(h: &HopfPresentation) -> Result<AnalysisReport> {
    let ring = *h.ring();
    require_field(&ring)?;
    let (antipode_order, antipode_sq_order) = antipode_orders(h)?;
    Ok(AnalysisReport {
        ring,
        dim: h.dim(),
        semisimple: is_semisimple(h)?,
        cosemisimple: is_cosemisimple(h)?,
        commutative: h.is_commutative(),
        cocommutative: h.is_cocommutative(),
        antipode_order,
        antipode_sq_order,
        trace_s2: trace_s2(h),
        dim_in_k: ring.from_int(h.dim() as i64),
        grouplikes: grouplikes(h, false)?,
        central_grouplikes: grouplikes(h, true)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::double::drinfeld_double;
    use crate::hopf::groups::{group_algebra, Group};
    use crate::ring::make_ring;

    fn ints(ring: &RingDescriptor, v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| ring.from_int(x)).collect()
    }

    #[test]
    fn integrals_and_semisimplicity() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let c2 = group_algebra(f5, &Group::cyclic(2)).unwrap();
        assert_eq!(integral(&c2, Side::Left).unwrap(), vec![ints(&f5, &[1, 1])]);
        assert_eq!(integral(&c2.dual(), Side::Left).unwrap(), vec![ints(&f5, &[1, 0])]);
        assert!(is_semisimple(&c2).unwrap() && is_cosemisimple(&c2).unwrap());

        let f3 = make_ring(3, 1, 1, None).unwrap();
        let c3 = group_algebra(f3, &Group::cyclic(3)).unwrap();
        assert_eq!(integral(&c3, Side::Right).unwrap(), vec![ints(&f3, &[1, 1, 1])]);
        assert!(!is_semisimple(&c3).unwrap());
        assert!(is_cosemisimple(&c3).unwrap());
    }

    #[test]
    fn orders_and_traces() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let s3 = group_algebra(f5, &Group::symmetric3()).unwrap();
        assert_eq!(antipode_orders(&s3).unwrap(), (2, 1));
        let c2 = group_algebra(f5, &Group::cyclic(2)).unwrap();
        assert_eq!(antipode_orders(&c2).unwrap(), (1, 1));
        let f7 = make_ring(7, 1, 1, None).unwrap();
        let report = analyze(&group_algebra(f7, &Group::symmetric3()).unwrap()).unwrap();
        assert!(report.semisimple && report.cosemisimple);
        assert_eq!(report.trace_s2, f7.from_int(6));
    }

    #[test]
    fn grouplikes_of_small_examples() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let c2 = group_algebra(f5, &Group::cyclic(2)).unwrap();
        assert_eq!(grouplikes(&c2, true).unwrap(), vec![ints(&f5, &[1, 0]), ints(&f5, &[0, 1])]);
        // characters of C2 in the δ-basis
        assert_eq!(grouplikes(&c2.dual(), false).unwrap(), vec![ints(&f5, &[1, 1]), ints(&f5, &[1, 4])]);
        let f3 = make_ring(3, 1, 1, None).unwrap();
        let k4 = group_algebra(f3, &Group::klein()).unwrap();
        assert_eq!(grouplikes(&k4, true).unwrap().len(), 4);
        let f7 = make_ring(7, 1, 1, None).unwrap();
        let s3 = group_algebra(f7, &Group::symmetric3()).unwrap();
        assert_eq!(grouplikes(&s3, false).unwrap().len(), 6);
        assert_eq!(grouplikes(&s3, true).unwrap().len(), 1);
        // S3 has two one-dimensional characters
        assert_eq!(grouplikes(&s3.dual(), false).unwrap().len(), 2);
    }

    #[test]
    fn block_sizes() {
        let f7 = make_ring(7, 1, 1, None).unwrap();
        let s3 = group_algebra(f7, &Group::symmetric3()).unwrap();
        assert_eq!(irreducible_dimensions(&s3).unwrap(), vec![1, 1, 2]);
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let (d, _) = drinfeld_double(&group_algebra(f5, &Group::cyclic(2)).unwrap()).unwrap();
        assert_eq!(irreducible_dimensions(&d).unwrap(), vec![1, 1, 1, 1]);
        let f3 = make_ring(3, 1, 1, None).unwrap();
        assert_eq!(irreducible_dimensions(&group_algebra(f3, &Group::cyclic(3)).unwrap()), Err(Error::NotSemisimple));
        // F_5[C3] = F_5 × F_25 does not split
        assert_eq!(irreducible_dimensions(&group_algebra(f5, &Group::cyclic(3)).unwrap()), Err(Error::NotSplit));
    }
}
