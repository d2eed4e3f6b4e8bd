//! Exact linear algebra over F_q and GR(p^n, m).
//!
//! Field systems are factored once into a row-echelon form (`PA = LU`, first
//! nonzero entry of each column as pivot). The particular solution returned
//! for a consistent system is the one with every free variable set to zero;
//! it depends only on the row space, so any two factorizations of matrices
//! with the same row space give identical answers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::{Elem, RingDescriptor};

/// Dense row-major matrix of ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(ring: &RingDescriptor, n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ArityMismatch("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(ring: &RingDescriptor, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ring.from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, ring: &RingDescriptor, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Elem::ZERO, |acc, (&a, &b)| if a.is_zero() || b.is_zero() { acc } else { ring.add(acc, ring.mul(a, b)) })
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| f(e)).collect() }
    }

    /// Mutable views of two distinct rows.
    fn two_rows(&mut self, a: usize, b: usize) -> (&mut [Elem], &mut [Elem]) {
        assert_ne!(a, b);
        let c = self.cols;
        if a < b {
            let (lo, hi) = self.data.split_at_mut(b * c);
            (&mut lo[a * c..(a + 1) * c], &mut hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(a * c);
            (&mut hi[..c], &mut lo[b * c..(b + 1) * c])
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let (x, y) = self.two_rows(a, b);
            x.swap_with_slice(y);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Option<Vec<Elem>>,
    pub kernel_basis: Vec<Vec<Elem>>,
    pub rank: usize,
}

/// `PA = LU` factorization of a matrix over a field, multipliers stored below
/// the pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: RingDescriptor,
    lu: Matrix,
    swaps: Vec<usize>,
    pivots: Vec<usize>,
    pivot_inv: Vec<Elem>,
}

impl Echelon {
    pub fn factor(ring: &RingDescriptor, mut a: Matrix) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::NotAField { n: ring.precision() });
        }
        let (rows, cols) = (a.rows, a.cols);
        let mut swaps = Vec::new();
        let mut pivots = Vec::new();
        let mut pivot_inv = Vec::new();
        let mut k = 0;
        for c in 0..cols {
            if k == rows {
                break;
            }
            let Some(found) = (k..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(k, found);
            swaps.push(found);
            let inv = ring.inv(a.get(k, c))?;
            for i in k + 1..rows {
                let v = a.get(i, c);
                if v.is_zero() {
                    continue;
                }
                let l = ring.mul(v, inv);
                let (pivot_row, row) = a.two_rows(k, i);
                ring.axpy(&mut row[c + 1..], ring.neg(l), &pivot_row[c + 1..]);
                row[c] = l;
            }
            pivots.push(c);
            pivot_inv.push(inv);
            k += 1;
        }
        Ok(Echelon { ring: *ring, lu: a, swaps, pivots, pivot_inv })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.lu.cols
    }

    pub fn rows(&self) -> usize {
        self.lu.rows
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Applies `L^{-1} P` to a right-hand side.
    fn forward(&self, rhs: &mut [Elem]) {
        let r = &self.ring;
        for (k, &s) in self.swaps.iter().enumerate() {
            rhs.swap(k, s);
        }
        for (k, &c) in self.pivots.iter().enumerate() {
            let yk = rhs[k];
            if yk.is_zero() {
                continue;
            }
            for i in k + 1..self.lu.rows {
                let l = self.lu.get(i, c);
                if !l.is_zero() {
                    rhs[i] = r.sub(rhs[i], r.mul(l, yk));
                }
            }
        }
    }

    /// Back substitution; free entries of `x` are taken as given.
    fn back(&self, y: &[Elem], x: &mut [Elem]) {
        let r = &self.ring;
        for k in (0..self.rank()).rev() {
            let c = self.pivots[k];
            let row = self.lu.row(k);
            let mut acc = y[k];
            for j in c + 1..self.lu.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = r.sub(acc, r.mul(row[j], x[j]));
                }
            }
            x[c] = r.mul(acc, self.pivot_inv[k]);
        }
    }

    /// The solution with all free variables zero, or `None` if inconsistent.
    pub fn solve(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(rhs.len(), self.lu.rows);
        let mut y = rhs.to_vec();
        self.forward(&mut y);
        if y[self.rank()..].iter().any(|e| !e.is_zero()) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.lu.cols];
        self.back(&y, &mut x);
        Some(x)
    }

    /// One vector per free column, with that column set to one and the other
    /// free columns zero.
    pub fn kernel_basis(&self) -> Vec<Vec<Elem>> {
        let mut is_pivot = vec![false; self.lu.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let zeros = vec![Elem::ZERO; self.rank()];
        (0..self.lu.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![Elem::ZERO; self.lu.cols];
                x[free] = self.ring.one();
                self.back(&zeros, &mut x);
                x
            })
            .collect()
    }
}

pub fn solve_field(ring: &RingDescriptor, m: &Matrix, rhs: &[Elem]) -> Result<LinearSolution> {
    if rhs.len() != m.rows {
        return Err(Error::ArityMismatch(format!("{} rows but rhs of length {}", m.rows, rhs.len())));
    }
    let e = Echelon::factor(ring, m.clone())?;
    Ok(LinearSolution { particular: e.solve(rhs), kernel_basis: e.kernel_basis(), rank: e.rank() })
}

pub fn rank_field(ring: &RingDescriptor, m: &Matrix) -> Result<usize> {
    Ok(Echelon::factor(ring, m.clone())?.rank())
}

/// Solver for `M x = rhs` over GR(p^n, m) with `M` of full column rank mod p.
///
/// The reduction mod p is factored once; each solve works mod p and then
/// corrects one p-digit at a time.
#[derive(Clone, Debug)]
pub struct HenselSolver {
    ring: RingDescriptor,
    field: RingDescriptor,
    matrix: Matrix,
    reduced: Echelon,
}

impl HenselSolver {
    pub fn new(ring: &RingDescriptor, matrix: Matrix) -> Result<Self> {
        let field = ring.residue_field();
        let reduced = Echelon::factor(&field, matrix.map(|e| ring.reduce_to(e, &field)))?;
        if reduced.rank() < matrix.cols {
            return Err(Error::SingularModP);
        }
        Ok(HenselSolver { ring: *ring, field, matrix, reduced })
    }

    /// The unique solution, or `None` if an overdetermined system is inconsistent.
    pub fn solve(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        let ring = &self.ring;
        let m = &self.matrix;
        assert_eq!(rhs.len(), m.rows);
        let mut x = vec![Elem::ZERO; m.cols];
        for k in 0..ring.precision() {
            let mx = m.mul_vec(ring, &x);
            let mut digit_rhs = Vec::with_capacity(rhs.len());
            for (&b, &v) in rhs.iter().zip(&mx) {
                let (q, _) = ring.exact_div_p(ring.sub(b, v), k).ok()?;
                digit_rhs.push(ring.reduce_to(q, &self.field));
            }
            let y = self.reduced.solve(&digit_rhs)?;
            for (xi, yi) in x.iter_mut().zip(y) {
                *xi = ring.add(*xi, ring.mul_p_pow(yi, k));
            }
        }
        (m.mul_vec(ring, &x) == rhs).then_some(x)
    }
}

/// Solves `M x = rhs` over GR(p^n, m) for `M` with full column rank mod p.
/// Returns `Ok(None)` when an overdetermined system is inconsistent.
pub fn hensel_solve_full_rank(ring: &RingDescriptor, m: &Matrix, rhs: &[Elem]) -> Result<Option<Vec<Elem>>> {
    if rhs.len() != m.rows {
        return Err(Error::ArityMismatch(format!("{} rows but rhs of length {}", m.rows, rhs.len())));
    }
    Ok(HenselSolver::new(ring, m.clone())?.solve(rhs))
}

/// Unique solution of a square system whose reduction mod p is invertible.
pub fn hensel_solve(ring: &RingDescriptor, m: &Matrix, rhs: &[Elem]) -> Result<Vec<Elem>> {
    if m.rows != m.cols {
        return Err(Error::ArityMismatch(format!("{}x{} matrix is not square", m.rows, m.cols)));
    }
    hensel_solve_full_rank(ring, m, rhs)?.ok_or(Error::SingularModP)
}

/// Column-major sparse matrix, used for the large differentials.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, Elem)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, columns: Vec::new() }
    }

    /// Sums duplicate `(row, col, value)` entries.
    pub fn from_triplets(ring: &RingDescriptor, rows: usize, cols: usize, triplets: &[(usize, usize, Elem)]) -> Self {
        let mut columns: Vec<Vec<(usize, Elem)>> = vec![Vec::new(); cols];
        for &(r, c, v) in triplets {
            debug_assert!(r < rows);
            columns[c].push((r, v));
        }
        for col in &mut columns {
            col.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(usize, Elem)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 = ring.add(last.1, v),
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *col = merged;
        }
        SparseMatrix { rows, columns }
    }

    pub fn push_column(&mut self, mut entries: Vec<(usize, Elem)>) {
        entries.retain(|(_, v)| !v.is_zero());
        debug_assert!(entries.iter().all(|&(r, _)| r < self.rows));
        self.columns.push(entries);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, Elem)] {
        &self.columns[c]
    }

    pub fn mul_vec(&self, ring: &RingDescriptor, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.cols());
        let mut out = vec![Elem::ZERO; self.rows];
        for (col, &xc) in self.columns.iter().zip(x) {
            if xc.is_zero() {
                continue;
            }
            for &(r, v) in col {
                out[r] = ring.add(out[r], ring.mul(v, xc));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m.set(r, c, v);
            }
        }
        m
    }
}

const OVERSAMPLE: usize = 48;
const SKETCH_ATTEMPTS: u64 = 3;

/// A tall sparse system over a field, factored once and solved many times.
///
/// Tall matrices are first compressed by a seeded sparse random sketch `G`
/// to about `cols` rows. The factorization of `GM` is only accepted after
/// every kernel vector of `GM` is checked to be a kernel vector of `M`; then
/// both have the same row space, so solutions and ranks are exactly those of
/// `M`. If no sketch certifies, `M` is factored directly.
#[derive(Clone, Debug)]
pub struct FactoredSystem {
    ring: RingDescriptor,
    matrix: SparseMatrix,
    sketch: Option<Sketch>,
    echelon: Echelon,
    kernel: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug)]
struct Sketch {
    rows: usize,
    /// For every original row, the compressed rows it feeds and with which weight.
    targets: Vec<Vec<(usize, Elem)>>,
}

impl Sketch {
    fn random(ring: &RingDescriptor, original_rows: usize, rows: usize, per_row: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let targets = (0..original_rows)
            .map(|_| {
                (0..per_row)
                    .map(|_| {
                        let t = rng.gen_range(0..rows);
                        let w = loop {
                            let w = ring.random(&mut rng);
                            if !w.is_zero() {
                                break w;
                            }
                        };
                        (t, w)
                    })
                    .collect()
            })
            .collect();
        Sketch { rows, targets }
    }

    fn apply_vec(&self, ring: &RingDescriptor, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.rows];
        for (targets, &x) in self.targets.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for &(t, w) in targets {
                out[t] = ring.add(out[t], ring.mul(w, x));
            }
        }
        out
    }

    fn apply_matrix(&self, ring: &RingDescriptor, m: &SparseMatrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows, m.cols());
        for c in 0..m.cols() {
            for &(r, v) in m.column(c) {
                for &(t, w) in &self.targets[r] {
                    let cur = out.get(t, c);
                    out.set(t, c, ring.add(cur, ring.mul(w, v)));
                }
            }
        }
        out
    }
}

impl FactoredSystem {
    pub fn new(ring: &RingDescriptor, matrix: SparseMatrix) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::NotAField { n: ring.precision() });
        }
        let target = matrix.cols() + OVERSAMPLE;
        if matrix.rows() > 2 * target {
            for attempt in 0..SKETCH_ATTEMPTS {
                let sketch = Sketch::random(ring, matrix.rows(), target, 4 << attempt, 0x5eed + attempt);
                let echelon = Echelon::factor(ring, sketch.apply_matrix(ring, &matrix))?;
                let kernel = echelon.kernel_basis();
                let certified = kernel.iter().all(|v| matrix.mul_vec(ring, v).iter().all(Elem::is_zero));
                if certified {
                    return Ok(FactoredSystem { ring: *ring, matrix, sketch: Some(sketch), echelon, kernel });
                }
                log::debug!("sketch attempt {attempt} did not certify, retrying");
            }
            log::warn!("falling back to direct factorization of a {}x{} system", matrix.rows(), matrix.cols());
        }
        let echelon = Echelon::factor(ring, matrix.to_dense())?;
        let kernel = echelon.kernel_basis();
        Ok(FactoredSystem { ring: *ring, matrix, sketch: None, echelon, kernel })
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn nullity(&self) -> usize {
        self.kernel.len()
    }

    pub fn kernel_basis(&self) -> &[Vec<Elem>] {
        &self.kernel
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// The canonical solution (free variables zero) of `M x = rhs`, if any.
    pub fn solve(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(rhs.len(), self.matrix.rows());
        let x = match &self.sketch {
            Some(s) => self.echelon.solve(&s.apply_vec(&self.ring, rhs))?,
            None => self.echelon.solve(rhs)?,
        };
        (self.matrix.mul_vec(&self.ring, &x) == rhs).then_some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    fn ints(r: &RingDescriptor, v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| r.from_int(x)).collect()
    }

    #[test]
    fn field_examples() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let s = solve_field(&f5, &Matrix::from_ints(&f5, &[&[2]]).unwrap(), &ints(&f5, &[3])).unwrap();
        assert_eq!(s.particular, Some(ints(&f5, &[4])));
        assert!(s.kernel_basis.is_empty());

        let s = solve_field(&f5, &Matrix::from_ints(&f5, &[&[1, 1]]).unwrap(), &ints(&f5, &[0])).unwrap();
        assert_eq!(s.particular, Some(ints(&f5, &[0, 0])));
        assert_eq!(s.kernel_basis, vec![ints(&f5, &[4, 1])]);
        assert_eq!(s.rank, 1);

        let s = solve_field(&f5, &Matrix::from_ints(&f5, &[&[0]]).unwrap(), &ints(&f5, &[1])).unwrap();
        assert_eq!(s.particular, None);
    }

    #[test]
    fn solve_field_rejects_rings() {
        let z25 = make_ring(5, 2, 1, None).unwrap();
        let m = Matrix::from_ints(&z25, &[&[1]]).unwrap();
        assert_eq!(solve_field(&z25, &m, &ints(&z25, &[1])), Err(Error::NotAField { n: 2 }));
    }

    #[test]
    fn hensel_examples() {
        let z25 = make_ring(5, 2, 1, None).unwrap();
        let m = Matrix::from_ints(&z25, &[&[7]]).unwrap();
        assert_eq!(hensel_solve(&z25, &m, &ints(&z25, &[3])).unwrap(), ints(&z25, &[4]));
        let id = Matrix::identity(&z25, 3);
        let v = ints(&z25, &[24, 5, 13]);
        assert_eq!(hensel_solve(&z25, &id, &v).unwrap(), v);
        let m = Matrix::from_ints(&z25, &[&[5]]).unwrap();
        assert_eq!(hensel_solve(&z25, &m, &ints(&z25, &[5])), Err(Error::SingularModP));
    }

    #[test]
    fn overdetermined_hensel() {
        let z125 = make_ring(5, 3, 1, None).unwrap();
        let m = Matrix::from_ints(&z125, &[&[1, 2], &[3, 4], &[5, 6]]).unwrap();
        let x = ints(&z125, &[17, 101]);
        let b = m.mul_vec(&z125, &x);
        assert_eq!(hensel_solve_full_rank(&z125, &m, &b).unwrap(), Some(x));
        let bad = ints(&z125, &[1, 0, 0]);
        assert_eq!(hensel_solve_full_rank(&z125, &m, &bad).unwrap(), None);
    }

    #[test]
    fn sketched_system_matches_dense() {
        let f7 = make_ring(7, 1, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (rows, cols) = (400, 30);
        // Rank-deficient: columns 20.. are combinations of earlier ones.
        let mut dense = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..20 {
                if rng.gen_bool(0.1) {
                    dense.set(r, c, f7.random(&mut rng));
                }
            }
            for c in 20..cols {
                let v = f7.add(dense.get(r, c - 20), dense.get(r, c - 19));
                dense.set(r, c, v);
            }
        }
        let mut sparse = SparseMatrix::new(rows);
        for c in 0..cols {
            sparse.push_column((0..rows).map(|r| (r, dense.get(r, c))).collect());
        }
        let fs = FactoredSystem::new(&f7, sparse).unwrap();
        let reference = Echelon::factor(&f7, dense.clone()).unwrap();
        assert_eq!(fs.rank(), reference.rank());
        let x0: Vec<Elem> = (0..cols).map(|_| f7.random(&mut rng)).collect();
        let b = dense.mul_vec(&f7, &x0);
        assert_eq!(fs.solve(&b), reference.solve(&b));
        let mut bad = b.clone();
        bad[0] = f7.add(bad[0], f7.one());
        assert_eq!(fs.solve(&bad), None);
    }
}
