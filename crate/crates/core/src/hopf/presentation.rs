use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::ring::{Elem, RingDescriptor};
use crate::tensor::{Accumulator, MultiMap, SparseVec};

/// A Hopf algebra (or, before verification, just five tensors) on the basis
/// `e_0, ..., e_{N-1}` of a free module over `ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPresentation {
    ring: RingDescriptor,
    dim: usize,
    m: MultiMap,
    unit: MultiMap,
    delta: MultiMap,
    counit: MultiMap,
    antipode: MultiMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Product,
    Coproduct,
}

fn expect_shape(name: &str, f: &MultiMap, ring: &RingDescriptor, dim: usize, ai: usize, ao: usize) -> Result<()> {
    ring.check_same(f.ring())?;
    let dims_ok = (ai == 0 || f.dim_in() == dim) && (ao == 0 || f.dim_out() == dim);
    if !dims_ok || f.arity_in() != ai || f.arity_out() != ao {
        return Err(Error::ArityMismatch(format!("{name} has shape {}, expected ({dim}^{ai} -> {dim}^{ao})", f.shape())));
    }
    Ok(())
}

impl HopfPresentation {
    pub fn new(
        ring: RingDescriptor,
        dim: usize,
        m: MultiMap,
        unit: MultiMap,
        delta: MultiMap,
        counit: MultiMap,
        antipode: MultiMap,
    ) -> Result<Self> {
        expect_shape("m", &m, &ring, dim, 2, 1)?;
        expect_shape("unit", &unit, &ring, dim, 0, 1)?;
        expect_shape("delta", &delta, &ring, dim, 1, 2)?;
        expect_shape("counit", &counit, &ring, dim, 1, 0)?;
        expect_shape("S", &antipode, &ring, dim, 1, 1)?;
        // Scalars carry no dimension; normalize so equal presentations compare equal.
        let unit = MultiMap::from_vector(ring, dim, 1, unit.coeffs())?;
        let counit = MultiMap::from_functional(ring, dim, 1, counit.coeffs())?;
        Ok(HopfPresentation { ring, dim, m, unit, delta, counit, antipode })
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> &MultiMap {
        &self.m
    }

    pub fn unit(&self) -> &MultiMap {
        &self.unit
    }

    pub fn delta(&self) -> &MultiMap {
        &self.delta
    }

    pub fn counit(&self) -> &MultiMap {
        &self.counit
    }

    pub fn antipode(&self) -> &MultiMap {
        &self.antipode
    }

    pub fn with_antipode(&self, antipode: MultiMap) -> Result<Self> {
        HopfPresentation::new(
            self.ring,
            self.dim,
            self.m.clone(),
            self.unit.clone(),
            self.delta.clone(),
            self.counit.clone(),
            antipode,
        )
    }

    fn map_all(&self, ring: RingDescriptor, f: impl Fn(&MultiMap) -> Result<MultiMap>) -> Result<Self> {
        HopfPresentation::new(
            ring,
            self.dim,
            f(&self.m)?,
            f(&self.unit)?,
            f(&self.delta)?,
            f(&self.counit)?,
            f(&self.antipode)?,
        )
    }

    pub fn reduce_to(&self, target: &RingDescriptor) -> Result<Self> {
        self.map_all(*target, |t| t.reduce_to(target))
    }

    pub fn digit_lift(&self, target: &RingDescriptor) -> Result<Self> {
        self.map_all(*target, |t| t.digit_lift(target))
    }

    /// The dual Hopf algebra on the dual basis: every structure tensor transposed.
    pub fn dual(&self) -> Self {
        HopfPresentation {
            ring: self.ring,
            dim: self.dim,
            m: self.delta.transpose(),
            unit: self.counit.transpose(),
            delta: self.m.transpose(),
            counit: self.unit.transpose(),
            antipode: self.antipode.transpose(),
        }
    }

    /// `H^{*cop}`: the dual with the opposite coproduct and antipode `(S^{-1})^*`.
    pub fn dual_cop(&self) -> Result<Self> {
        let swap = MultiMap::permute(self.ring, self.dim, &[1, 0])?;
        Ok(HopfPresentation {
            ring: self.ring,
            dim: self.dim,
            m: self.delta.transpose(),
            unit: self.counit.transpose(),
            delta: swap.compose(&self.m.transpose())?,
            counit: self.unit.transpose(),
            antipode: self.antipode_inverse()?.transpose(),
        })
    }

    /// `S^{-1}`, or `SingularAntipode`.
    pub fn antipode_inverse(&self) -> Result<MultiMap> {
        let inv = invert_map(&self.antipode).map_err(|e| match e {
            Error::SingularModP => Error::SingularAntipode,
            other => other,
        })?;
        Ok(inv)
    }

    /// `Δ_q` (left-nested) or `m_q`.
    pub fn iterate(&self, q: usize, direction: Direction) -> Result<MultiMap> {
        match direction {
            Direction::Coproduct => MultiMap::iterated_coproduct(&self.delta, q),
            Direction::Product => MultiMap::iterated_product(&self.m, q),
        }
    }

    pub fn tables(&self) -> Tables {
        Tables {
            ring: self.ring,
            dim: self.dim,
            mul: self.m.columns(),
            unit: self.unit.column(0),
            delta: self.delta.columns(),
            counit: self.counit.coeffs().to_vec(),
            antipode: self.antipode.columns(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.m.get(k, i * n + j) == self.m.get(k, j * n + i))))
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.delta.get(j * n + k, i) == self.delta.get(k * n + j, i))))
    }
}

/// Inverse of a `1 -> 1` map whose reduction mod p is invertible.
pub fn invert_map(f: &MultiMap) -> Result<MultiMap> {
    let n = f.in_size();
    if f.arity_in() != 1 || f.arity_out() != 1 || f.dim_in() != f.dim_out() {
        return Err(Error::ArityMismatch(format!("cannot invert {}", f.shape())));
    }
    let ring = *f.ring();
    let mat = Matrix::from_rows((0..n).map(|o| (0..n).map(|i| f.get(o, i)).collect()).collect())?;
    let solver = linalg::HenselSolver::new(&ring, mat)?;
    let mut inv = MultiMap::zeros(ring, n, n, 1, 1);
    for c in 0..n {
        let mut e = vec![Elem::ZERO; n];
        e[c] = ring.one();
        let col = solver.solve(&e).ok_or(Error::SingularModP)?;
        for (o, v) in col.into_iter().enumerate() {
            inv.set(o, c, v);
        }
    }
    Ok(inv)
}

/// Sparse structure tables of a presentation.
#[derive(Clone, Debug)]
pub struct Tables {
    pub ring: RingDescriptor,
    pub dim: usize,
    /// `mul[i * N + j]` = `e_i e_j`.
    pub mul: Vec<SparseVec>,
    pub unit: SparseVec,
    /// `delta[i]` = `Δ(e_i)` over flat indices of `A ⊗ A`.
    pub delta: Vec<SparseVec>,
    pub counit: Vec<Elem>,
    pub antipode: Vec<SparseVec>,
}

impl Tables {
    pub fn product(&self, x: &[(usize, Elem)], y: &[(usize, Elem)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for &(i, a) in x {
            for &(j, b) in y {
                acc.add_scaled(&self.ring, &self.mul[i * self.dim + j], self.ring.mul(a, b));
            }
        }
        acc.finish()
    }

    pub fn coproduct(&self, x: &[(usize, Elem)]) -> SparseVec {
        apply_cols(&self.ring, &self.delta, x)
    }

    pub fn apply_antipode(&self, x: &[(usize, Elem)]) -> SparseVec {
        apply_cols(&self.ring, &self.antipode, x)
    }

    pub fn counit_of(&self, x: &[(usize, Elem)]) -> Elem {
        x.iter().fold(Elem::ZERO, |acc, &(i, a)| self.ring.add(acc, self.ring.mul(self.counit[i], a)))
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        vec![(i, self.ring.one())]
    }
}

pub fn apply_cols(ring: &RingDescriptor, cols: &[SparseVec], x: &[(usize, Elem)]) -> SparseVec {
    let mut acc = Accumulator::new();
    for &(i, a) in x {
        acc.add_scaled(ring, &cols[i], a);
    }
    acc.finish()
}
