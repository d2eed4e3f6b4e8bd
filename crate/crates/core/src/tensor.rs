//! Dense multilinear maps `V^{⊗i} -> W^{⊗j}` and the sparse helpers used to
//! evaluate them on large tensor powers.
//!
//! Layout: `coeffs[out * dim_in^i + in]`, where `out` and `in` are flat
//! multi-indices with the leftmost tensor leg most significant. Arity zero
//! means the empty index, so a `0 -> j` map is an element of `W^{⊗j}` and an
//! `i -> 0` map is a functional.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{Elem, RingDescriptor};

/// Sparse vector in a tensor power: `(flat index, coefficient)`, sorted by index.
pub type SparseVec = Vec<(usize, Elem)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    ring: RingDescriptor,
    dim_in: usize,
    dim_out: usize,
    arity_in: usize,
    arity_out: usize,
    coeffs: Vec<Elem>,
}

pub fn power(dim: usize, arity: usize) -> usize {
    dim.pow(arity as u32)
}

/// Splits a flat index into its legs, leftmost leg first.
pub fn split_index(mut idx: usize, dim: usize, arity: usize) -> Vec<usize> {
    let mut legs = vec![0; arity];
    for slot in legs.iter_mut().rev() {
        *slot = idx % dim;
        idx /= dim;
    }
    legs
}

pub fn join_index(legs: &[usize], dim: usize) -> usize {
    legs.iter().fold(0, |acc, &l| acc * dim + l)
}

impl MultiMap {
    pub fn zeros(ring: RingDescriptor, dim_in: usize, dim_out: usize, arity_in: usize, arity_out: usize) -> Self {
        let len = power(dim_out, arity_out) * power(dim_in, arity_in);
        MultiMap { ring, dim_in, dim_out, arity_in, arity_out, coeffs: vec![Elem::ZERO; len] }
    }

    pub fn from_coeffs(
        ring: RingDescriptor,
        dim_in: usize,
        dim_out: usize,
        arity_in: usize,
        arity_out: usize,
        coeffs: Vec<Elem>,
    ) -> Result<Self> {
        let expected = power(dim_out, arity_out) * power(dim_in, arity_in);
        if coeffs.len() != expected {
            return Err(Error::ArityMismatch(format!("expected {expected} coefficients, got {}", coeffs.len())));
        }
        Ok(MultiMap { ring, dim_in, dim_out, arity_in, arity_out, coeffs })
    }

    /// The identity on `V^{⊗k}`.
    pub fn identity(ring: RingDescriptor, dim: usize, k: usize) -> Self {
        let mut f = MultiMap::zeros(ring, dim, dim, k, k);
        for i in 0..power(dim, k) {
            f.set(i, i, ring.one());
        }
        f
    }

    /// An element of `W^{⊗j}` as a `0 -> j` map.
    pub fn from_vector(ring: RingDescriptor, dim: usize, arity: usize, v: &[Elem]) -> Result<Self> {
        MultiMap::from_coeffs(ring, dim, dim, 0, arity, v.to_vec())
    }

    /// A functional on `V^{⊗i}` as an `i -> 0` map.
    pub fn from_functional(ring: RingDescriptor, dim: usize, arity: usize, v: &[Elem]) -> Result<Self> {
        MultiMap::from_coeffs(ring, dim, dim, arity, 0, v.to_vec())
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn arity_in(&self) -> usize {
        self.arity_in
    }

    pub fn arity_out(&self) -> usize {
        self.arity_out
    }

    pub fn in_size(&self) -> usize {
        power(self.dim_in, self.arity_in)
    }

    pub fn out_size(&self) -> usize {
        power(self.dim_out, self.arity_out)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Elem] {
        &mut self.coeffs
    }

    #[inline]
    pub fn get(&self, out: usize, inp: usize) -> Elem {
        self.coeffs[out * self.in_size() + inp]
    }

    #[inline]
    pub fn set(&mut self, out: usize, inp: usize, v: Elem) {
        let n = self.in_size();
        self.coeffs[out * n + inp] = v;
    }

    pub fn add_at(&mut self, out: usize, inp: usize, v: Elem) {
        let n = self.in_size();
        let slot = &mut self.coeffs[out * n + inp];
        *slot = self.ring.add(*slot, v);
    }

    pub fn same_shape(&self, other: &MultiMap) -> bool {
        self.dim_in == other.dim_in
            && self.dim_out == other.dim_out
            && self.arity_in == other.arity_in
            && self.arity_out == other.arity_out
    }

    fn check_shape(&self, other: &MultiMap) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if !self.same_shape(other) {
            return Err(Error::ArityMismatch(format!("{} vs {}", self.shape(), other.shape())));
        }
        Ok(())
    }

    pub fn shape(&self) -> String {
        format!("({}^{} -> {}^{})", self.dim_in, self.arity_in, self.dim_out, self.arity_out)
    }

    /// Image of the basis input `inp`.
    pub fn column(&self, inp: usize) -> SparseVec {
        let n = self.in_size();
        (0..self.out_size())
            .filter_map(|o| {
                let v = self.coeffs[o * n + inp];
                (!v.is_zero()).then_some((o, v))
            })
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let n = self.in_size();
        let mut cols = vec![Vec::new(); n];
        for o in 0..self.out_size() {
            for (i, col) in cols.iter_mut().enumerate() {
                let v = self.coeffs[o * n + i];
                if !v.is_zero() {
                    col.push((o, v));
                }
            }
        }
        cols
    }

    /// The map applied to a sparse input vector.
    pub fn apply(&self, v: &[(usize, Elem)]) -> SparseVec {
        let n = self.in_size();
        let mut out = vec![Elem::ZERO; self.out_size()];
        for &(i, c) in v {
            for (o, slot) in out.iter_mut().enumerate() {
                let a = self.coeffs[o * n + i];
                if !a.is_zero() {
                    *slot = self.ring.add(*slot, self.ring.mul(a, c));
                }
            }
        }
        to_sparse(&out)
    }

    pub fn apply_dense(&self, v: &[Elem]) -> Vec<Elem> {
        let n = self.in_size();
        (0..self.out_size())
            .map(|o| {
                self.coeffs[o * n..(o + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| if a.is_zero() || b.is_zero() { acc } else { self.ring.add(acc, self.ring.mul(a, b)) })
            })
            .collect()
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &MultiMap) -> Result<MultiMap> {
        self.ring.check_same(&g.ring)?;
        // the scalar leg k^{⊗0} matches whatever the leg dimension
        if self.arity_in != g.arity_out || (self.arity_in > 0 && self.dim_in != g.dim_out) {
            return Err(Error::ArityMismatch(format!("cannot compose {} after {}", self.shape(), g.shape())));
        }
        let mut out = MultiMap::zeros(self.ring, g.dim_in, self.dim_out, g.arity_in, self.arity_out);
        let mid = self.in_size();
        let gin = g.in_size();
        for o in 0..self.out_size() {
            let row = &mut out.coeffs[o * gin..(o + 1) * gin];
            for k in 0..mid {
                let f = self.coeffs[o * mid + k];
                if !f.is_zero() {
                    self.ring.axpy(row, f, &g.coeffs[k * gin..(k + 1) * gin]);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: `(f ⊗ g)(x ⊗ y) = f(x) ⊗ g(y)`.
    pub fn tensor(&self, g: &MultiMap) -> Result<MultiMap> {
        self.ring.check_same(&g.ring)?;
        let mixed_in = self.arity_in > 0 && g.arity_in > 0 && self.dim_in != g.dim_in;
        let mixed_out = self.arity_out > 0 && g.arity_out > 0 && self.dim_out != g.dim_out;
        if mixed_in || mixed_out {
            return Err(Error::ArityMismatch(format!("cannot tensor {} with {}", self.shape(), g.shape())));
        }
        let dim_in = if self.arity_in > 0 { self.dim_in } else { g.dim_in };
        let dim_out = if self.arity_out > 0 { self.dim_out } else { g.dim_out };
        let mut out =
            MultiMap::zeros(self.ring, dim_in, dim_out, self.arity_in + g.arity_in, self.arity_out + g.arity_out);
        let (fi, gi, go) = (self.in_size(), g.in_size(), g.out_size());
        let width = fi * gi;
        for of in 0..self.out_size() {
            for inf in 0..fi {
                let a = self.coeffs[of * fi + inf];
                if a.is_zero() {
                    continue;
                }
                for og in 0..go {
                    for ing in 0..gi {
                        let b = g.coeffs[og * gi + ing];
                        if !b.is_zero() {
                            out.coeffs[(of * go + og) * width + inf * gi + ing] = self.ring.mul(a, b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Leg permutation on `V^{⊗n}`: input leg `k` moves to output position `sigma[k]`,
    /// so `permute(σ) ∘ permute(τ) = permute(σ ∘ τ)`.
    pub fn permute(ring: RingDescriptor, dim: usize, sigma: &[usize]) -> Result<MultiMap> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || seen[s] {
                return Err(Error::InvalidPermutation(format!("{sigma:?}")));
            }
            seen[s] = true;
        }
        let mut f = MultiMap::zeros(ring, dim, dim, n, n);
        let mut out_legs = vec![0; n];
        for inp in 0..power(dim, n) {
            let legs = split_index(inp, dim, n);
            for (k, &l) in legs.iter().enumerate() {
                out_legs[sigma[k]] = l;
            }
            f.set(join_index(&out_legs, dim), inp, ring.one());
        }
        Ok(f)
    }

    /// Swaps inputs and outputs.
    pub fn transpose(&self) -> MultiMap {
        let (ni, no) = (self.in_size(), self.out_size());
        let mut coeffs = vec![Elem::ZERO; ni * no];
        for o in 0..no {
            for i in 0..ni {
                coeffs[i * no + o] = self.coeffs[o * ni + i];
            }
        }
        MultiMap {
            ring: self.ring,
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            arity_in: self.arity_out,
            arity_out: self.arity_in,
            coeffs,
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Elem>) -> MultiMap {
        MultiMap {
            ring: self.ring,
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            arity_in: self.arity_in,
            arity_out: self.arity_out,
            coeffs,
        }
    }

    fn zip_with(&self, other: &MultiMap, f: impl Fn(Elem, Elem) -> Elem) -> Result<MultiMap> {
        self.check_shape(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect()))
    }

    pub fn add(&self, other: &MultiMap) -> Result<MultiMap> {
        let r = self.ring;
        self.zip_with(other, |a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &MultiMap) -> Result<MultiMap> {
        let r = self.ring;
        self.zip_with(other, |a, b| r.sub(a, b))
    }

    pub fn map_coeffs(&self, f: impl Fn(Elem) -> Elem) -> MultiMap {
        self.with_coeffs(self.coeffs.iter().map(|&a| f(a)).collect())
    }

    pub fn scale(&self, c: Elem) -> MultiMap {
        let r = self.ring;
        self.map_coeffs(|a| r.mul(a, c))
    }

    pub fn neg(&self) -> MultiMap {
        let r = self.ring;
        self.map_coeffs(|a| r.neg(a))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    /// Positions `(out, in)` of nonzero coefficients.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let n = self.in_size();
        self.coeffs.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(k, _)| (k / n, k % n)).collect()
    }

    /// Coefficientwise reduction to a ring of lower precision.
    pub fn reduce_to(&self, target: &RingDescriptor) -> Result<MultiMap> {
        if !self.ring.compatible_with(target) || target.precision() > self.ring.precision() {
            return Err(Error::DescriptorMismatch(format!("cannot reduce {} to {}", self.ring, target)));
        }
        let mut out = self.map_coeffs(|a| self.ring.reduce_to(a, target));
        out.ring = *target;
        Ok(out)
    }

    /// Canonical coefficientwise lift to a ring of higher precision.
    pub fn digit_lift(&self, target: &RingDescriptor) -> Result<MultiMap> {
        if !self.ring.compatible_with(target) || target.precision() < self.ring.precision() {
            return Err(Error::DescriptorMismatch(format!("cannot lift {} to {}", self.ring, target)));
        }
        let mut out = self.clone();
        out.ring = *target;
        Ok(out)
    }

    /// Divides every coefficient by `p^k`; the result lives at precision `n - k`.
    pub fn exact_div_p(&self, k: u32) -> Result<MultiMap> {
        let target = self.ring.at_precision(self.ring.precision().saturating_sub(k).max(1))?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            coeffs.push(self.ring.exact_div_p(a, k)?.0);
        }
        let mut out = self.with_coeffs(coeffs);
        out.ring = target;
        Ok(out)
    }

    pub fn mul_p_pow(&self, k: u32) -> MultiMap {
        let r = self.ring;
        self.map_coeffs(|a| r.mul_p_pow(a, k))
    }

    /// Left-nested iterate of a `1 -> 2` map: `Δ_1 = I`, `Δ_{q} = (Δ ⊗ I^{⊗(q-2)}) ∘ Δ_{q-1}`.
    pub fn iterated_coproduct(delta: &MultiMap, q: usize) -> Result<MultiMap> {
        if delta.arity_in != 1 || delta.arity_out != 2 || q == 0 {
            return Err(Error::ArityMismatch(format!("cannot iterate {} {q} times", delta.shape())));
        }
        let dim = delta.dim_in;
        let mut acc = MultiMap::identity(delta.ring, dim, 1);
        for k in 2..=q {
            let step = delta.tensor(&MultiMap::identity(delta.ring, dim, k - 2))?;
            acc = step.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Left-nested iterate of a `2 -> 1` map: `m_q = m_{q-1} ∘ (m ⊗ I^{⊗(q-2)})`.
    pub fn iterated_product(m: &MultiMap, q: usize) -> Result<MultiMap> {
        if m.arity_in != 2 || m.arity_out != 1 || q == 0 {
            return Err(Error::ArityMismatch(format!("cannot iterate {} {q} times", m.shape())));
        }
        let dim = m.dim_in;
        let mut acc = MultiMap::identity(m.ring, dim, 1);
        for k in 2..=q {
            let step = m.tensor(&MultiMap::identity(m.ring, dim, k - 2))?;
            acc = acc.compose(&step)?;
        }
        Ok(acc)
    }
}

fn to_sparse(v: &[Elem]) -> SparseVec {
    v.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, &e)| (i, e)).collect()
}

/// Accumulates sparse contributions by flat index.
#[derive(Clone, Debug, Default)]
pub struct Accumulator {
    entries: BTreeMap<usize, Elem>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    #[inline]
    pub fn add(&mut self, ring: &RingDescriptor, idx: usize, v: Elem) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(idx).or_insert(Elem::ZERO);
        *slot = ring.add(*slot, v);
    }

    pub fn add_scaled(&mut self, ring: &RingDescriptor, v: &[(usize, Elem)], c: Elem) {
        if c.is_zero() {
            return;
        }
        for &(i, a) in v {
            self.add(ring, i, ring.mul(a, c));
        }
    }

    pub fn finish(self) -> SparseVec {
        self.entries.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Sparse structure tables of a product and of a `1 -> k` map, for evaluating
/// on tensor powers without materializing Kronecker products.
#[derive(Clone, Debug)]
pub struct SparseAlgebra {
    pub ring: RingDescriptor,
    pub dim: usize,
    /// `mul[i * dim + j]` = `e_i e_j`.
    pub mul: Vec<SparseVec>,
}

impl SparseAlgebra {
    pub fn new(m: &MultiMap) -> Self {
        SparseAlgebra { ring: m.ring, dim: m.dim_in, mul: m.columns() }
    }

    /// Product of two elements of `A^{⊗k}`, legwise.
    pub fn mul_tensors(&self, arity: usize, x: &[(usize, Elem)], y: &[(usize, Elem)]) -> SparseVec {
        if arity == 2 {
            return self.mul_pairs(x, y);
        }
        let r = &self.ring;
        let mut acc = Accumulator::new();
        for &(xi, xc) in x {
            let xl = split_index(xi, self.dim, arity);
            for &(yi, yc) in y {
                let yl = split_index(yi, self.dim, arity);
                let c = r.mul(xc, yc);
                let mut partial: SparseVec = vec![(0, c)];
                for (a, b) in xl.iter().zip(&yl) {
                    let prod = &self.mul[a * self.dim + b];
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for &(pi, pc) in &partial {
                        for &(k, kc) in prod {
                            next.push((pi * self.dim + k, r.mul(pc, kc)));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (i, v) in partial {
                    acc.add(r, i, v);
                }
            }
        }
        acc.finish()
    }
}

impl SparseAlgebra {
    /// `mul_tensors` for two legs: terms are grouped by their second leg so the
    /// first-leg products are summed before the outer product is formed.
    fn mul_pairs(&self, x: &[(usize, Elem)], y: &[(usize, Elem)]) -> SparseVec {
        let r = &self.ring;
        let n = self.dim;
        let mut xs: Vec<Vec<(usize, Elem)>> = vec![Vec::new(); n];
        for &(i, c) in x {
            xs[i % n].push((i / n, c));
        }
        let mut ys: Vec<Vec<(usize, Elem)>> = vec![Vec::new(); n];
        for &(i, c) in y {
            ys[i % n].push((i / n, c));
        }
        let mut out = vec![Elem::ZERO; n * n];
        let mut left = vec![Elem::ZERO; n];
        for (b, xb) in xs.iter().enumerate().filter(|(_, v)| !v.is_empty()) {
            for (d, yd) in ys.iter().enumerate().filter(|(_, v)| !v.is_empty()) {
                let right = &self.mul[b * n + d];
                if right.is_empty() {
                    continue;
                }
                left.iter_mut().for_each(|e| *e = Elem::ZERO);
                for &(a, xc) in xb {
                    for &(c, yc) in yd {
                        let coeff = r.mul(xc, yc);
                        for &(k, v) in &self.mul[a * n + c] {
                            left[k] = r.add(left[k], r.mul(coeff, v));
                        }
                    }
                }
                for (k, &lv) in left.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for &(l, rv) in right {
                        out[k * n + l] = r.add(out[k * n + l], r.mul(lv, rv));
                    }
                }
            }
        }
        out.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Applies a `1 -> k` map (given by its columns) to leg `leg` of a tensor of
/// the given arity, all legs of dimension `dim`.
pub fn apply_at_leg(
    ring: &RingDescriptor,
    cols: &[SparseVec],
    k: usize,
    dim: usize,
    arity: usize,
    leg: usize,
    v: &[(usize, Elem)],
) -> SparseVec {
    let right = power(dim, arity - leg - 1);
    let block = power(dim, k);
    let mut acc = Accumulator::new();
    for &(idx, c) in v {
        let tail = idx % right;
        let x = (idx / right) % dim;
        let head = idx / right / dim;
        for &(o, a) in &cols[x] {
            acc.add(ring, (head * block + o) * right + tail, ring.mul(a, c));
        }
    }
    acc.finish()
}

/// `x ⊗ y` for sparse tensors, where `y` has `arity_y` legs of dimension `dim`.
pub fn outer(ring: &RingDescriptor, x: &[(usize, Elem)], y: &[(usize, Elem)], dim: usize, arity_y: usize) -> SparseVec {
    let shift = power(dim, arity_y);
    let mut out = Vec::with_capacity(x.len() * y.len());
    for &(i, a) in x {
        for &(j, b) in y {
            out.push((i * shift + j, ring.mul(a, b)));
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;
    use proptest::prelude::*;

    fn ring() -> RingDescriptor {
        make_ring(5, 2, 1, None).unwrap()
    }

    fn map_from(r: RingDescriptor, dim: usize, ai: usize, ao: usize, vals: &[i64]) -> MultiMap {
        let coeffs = vals.iter().map(|&v| r.from_int(v)).collect();
        MultiMap::from_coeffs(r, dim, dim, ai, ao, coeffs).unwrap()
    }

    fn arb_map(dim: usize, ai: usize, ao: usize) -> impl Strategy<Value = MultiMap> {
        let len = power(dim, ai) * power(dim, ao);
        proptest::collection::vec(0i64..25, len).prop_map(move |v| map_from(ring(), dim, ai, ao, &v))
    }

    #[test]
    fn composing_through_the_scalar_leg() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let counit = MultiMap::from_functional(f5, 2, 1, &[f5.one(), f5.one()]).unwrap();
        let unit = MultiMap::from_vector(f5, 3, 1, &[f5.one(), f5.zero(), f5.zero()]).unwrap();
        let f = unit.compose(&counit).unwrap();
        assert_eq!((f.dim_in(), f.dim_out()), (2, 3));
        assert_eq!(f.column(1), vec![(0, f5.one())]);
    }

    #[test]
    fn permutation_examples() {
        let r = ring();
        let swap = MultiMap::permute(r, 3, &[1, 0]).unwrap();
        // e_1 ⊗ e_2 -> e_2 ⊗ e_1
        assert_eq!(swap.column(join_index(&[1, 2], 3)), vec![(join_index(&[2, 1], 3), r.one())]);
        assert_eq!(MultiMap::permute(r, 2, &[0, 1, 2]).unwrap(), MultiMap::identity(r, 2, 3));
        assert_eq!(swap.compose(&swap).unwrap(), MultiMap::identity(r, 3, 2));
        assert!(MultiMap::permute(r, 2, &[0, 0]).is_err());
    }

    #[test]
    fn tensor_of_identities() {
        let r = ring();
        let i1 = MultiMap::identity(r, 3, 1);
        assert_eq!(i1.tensor(&i1).unwrap(), MultiMap::identity(r, 3, 2));
    }

    #[test]
    fn compose_checks_arity() {
        let r = ring();
        let f = MultiMap::zeros(r, 2, 2, 2, 1);
        assert!(matches!(f.compose(&f), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn sparse_leg_application_matches_dense() {
        let r = ring();
        let delta = map_from(r, 2, 1, 2, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let v: Vec<Elem> = (0..8).map(|i| r.from_int(i * 3 + 1)).collect();
        let i1 = MultiMap::identity(r, 2, 1);
        let dense = i1.tensor(&delta).unwrap().tensor(&i1).unwrap().apply_dense(&v);
        let sparse = apply_at_leg(&r, &delta.columns(), 2, 2, 3, 1, &to_sparse(&v));
        assert_eq!(sparse, to_sparse(&dense));
    }

    #[test]
    fn iterates() {
        let r = ring();
        let m = map_from(r, 2, 2, 1, &[1, 0, 0, 1, 0, 1, 1, 0]);
        let m3 = MultiMap::iterated_product(&m, 3).unwrap();
        assert_eq!(m3.arity_in(), 3);
        assert_eq!(MultiMap::iterated_product(&m, 1).unwrap(), MultiMap::identity(r, 2, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn compose_is_associative(f in arb_map(2, 2, 1), g in arb_map(2, 2, 2), h in arb_map(2, 1, 2)) {
            let left = f.compose(&g).unwrap().compose(&h).unwrap();
            let right = f.compose(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn identities_are_units(f in arb_map(3, 2, 1)) {
            let r = ring();
            prop_assert_eq!(MultiMap::identity(r, 3, 1).compose(&f).unwrap(), f.clone());
            prop_assert_eq!(f.compose(&MultiMap::identity(r, 3, 2)).unwrap(), f);
        }

        #[test]
        fn interchange_law(f in arb_map(2, 1, 2), g in arb_map(2, 2, 1), f2 in arb_map(2, 1, 1), g2 in arb_map(2, 1, 2)) {
            let lhs = f.tensor(&g).unwrap().compose(&f2.tensor(&g2).unwrap()).unwrap();
            let rhs = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tensor_is_associative(f in arb_map(2, 1, 1), g in arb_map(2, 1, 2), h in arb_map(2, 0, 1)) {
            let left = f.tensor(&g).unwrap().tensor(&h).unwrap();
            let right = f.tensor(&g.tensor(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn permutations_compose(s in Just(vec![0usize, 1, 2]).prop_shuffle(), t in Just(vec![0usize, 1, 2]).prop_shuffle()) {
            let r = ring();
            let st: Vec<usize> = (0..3).map(|k| s[t[k]]).collect();
            let lhs = MultiMap::permute(r, 2, &s).unwrap().compose(&MultiMap::permute(r, 2, &t).unwrap()).unwrap();
            prop_assert_eq!(lhs, MultiMap::permute(r, 2, &st).unwrap());
        }

        #[test]
        fn sparse_products_match_dense(x in proptest::collection::vec(0i64..25, 4), y in proptest::collection::vec(0i64..25, 4)) {
            let r = ring();
            let m = map_from(r, 2, 2, 1, &[1, 3, 0, 2, 4, 1, 1, 0]);
            let alg = SparseAlgebra::new(&m);
            let xs: Vec<Elem> = x.iter().map(|&v| r.from_int(v)).collect();
            let ys: Vec<Elem> = y.iter().map(|&v| r.from_int(v)).collect();
            // (m ⊗ m) ∘ (I ⊗ swap ⊗ I) applied to x ⊗ y
            let mm = m.tensor(&m).unwrap();
            let mid = MultiMap::permute(r, 2, &[0, 2, 1, 3]).unwrap();
            let xy = MultiMap::from_vector(r, 2, 2, &xs).unwrap().tensor(&MultiMap::from_vector(r, 2, 2, &ys).unwrap()).unwrap();
            let dense = mm.compose(&mid).unwrap().compose(&xy).unwrap();
            let sparse = alg.mul_tensors(2, &to_sparse(&xs), &to_sparse(&ys));
            prop_assert_eq!(sparse, to_sparse(dense.coeffs()));
        }
    }
}
