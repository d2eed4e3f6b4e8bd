//! Digit-by-digit lifting of semisimple, cosemisimple Hopf algebras from `F_q`
//! to `GR(p^n, m)`, and of their morphisms and R-matrices.
//!
//! Each level `k -> k + 1` digit-lifts the structure, measures the failure of
//! the axioms divided by `p^k`, and removes it with a coboundary solve in the
//! total complex of the base. Unit, counit and antipode are then recovered from
//! linear systems whose reductions mod `p` are injective.

use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{ComplexContext, TotalCochain};
use crate::error::{Error, Result};
use crate::hopf::analysis::{is_cosemisimple, is_semisimple};
use crate::hopf::morphism::{apply_twice, verify_morphism, HopfMorphism};
use crate::hopf::presentation::{apply_cols, invert_map, HopfPresentation, Tables};
use crate::hopf::qt::{r_from_theta, theta, RMatrix};
use crate::hopf::verify::{verify_antipode, verify_bialgebra, verify_hopf};
use crate::linalg::{HenselSolver, Matrix};
use crate::ring::{Elem, RingDescriptor};
use crate::tensor::{apply_at_leg, MultiMap, SparseAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Digit lifts only.
    Canonical,
    /// Digit lifts plus `p^k` times seeded pseudorandom tensors at every level.
    Perturbed(u64),
}

impl Strategy {
    fn rng(self) -> Option<ChaCha8Rng> {
        match self {
            Strategy::Canonical => None,
            Strategy::Perturbed(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    /// `canonical` or `perturbed:SEED`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "canonical" {
            return Ok(Strategy::Canonical);
        }
        match s.strip_prefix("perturbed:").map(str::parse) {
            Some(Ok(seed)) => Ok(Strategy::Perturbed(seed)),
            _ => Err(format!("unknown strategy {s:?}, expected canonical or perturbed:SEED")),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Canonical => write!(f, "canonical"),
            Strategy::Perturbed(seed) => write!(f, "perturbed:{seed}"),
        }
    }
}

/// One precision level of a structure lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiftStep {
    /// Precision reached by this step.
    pub precision: u32,
    pub obstruction_support: usize,
    pub correction_support: usize,
    /// Rank of `d: C^1 -> C^2`; `None` when the obstruction vanished and nothing was solved.
    pub solver_rank: Option<usize>,
}

/// One precision level of a morphism lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismStep {
    pub precision: u32,
    pub defect_support: usize,
    pub correction_support: usize,
}

/// A verified Hopf algebra over `GR(p^n, m)` reducing to `base` mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftState {
    base: HopfPresentation,
    precision: u32,
    current: HopfPresentation,
    transcript: Vec<LiftStep>,
}

impl LiftState {
    pub fn base(&self) -> &HopfPresentation {
        &self.base
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn current(&self) -> &HopfPresentation {
        &self.current
    }

    pub fn transcript(&self) -> &[LiftStep] {
        &self.transcript
    }

    /// The lift truncated to precision `k`.
    pub fn at_precision(&self, k: u32) -> Result<HopfPresentation> {
        self.current.reduce_to(&self.base.ring().at_precision(k)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    /// Degree-2 cochain over the base; components in `C^{0,2}`, `C^{1,1}`, `C^{2,0}`.
    pub c: TotalCochain,
    pub cocycle_ok: bool,
}

/// Product, unit, coproduct and counit satisfying the bialgebra axioms exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra {
    pub m: MultiMap,
    pub unit: MultiMap,
    pub delta: MultiMap,
    pub counit: MultiMap,
}

impl Bialgebra {
    pub fn with_antipode(&self, antipode: MultiMap) -> Result<HopfPresentation> {
        HopfPresentation::new(
            *self.m.ring(),
            self.m.dim_out(),
            self.m.clone(),
            self.unit.clone(),
            self.delta.clone(),
            self.counit.clone(),
            antipode,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub bialgebra: Bialgebra,
    pub support: usize,
    pub solver_rank: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct MorphismLift {
    pub morphism: HopfMorphism,
    pub steps: Vec<MorphismStep>,
}

impl MorphismLift {
    pub fn corrections(&self) -> usize {
        self.steps.iter().filter(|s| s.correction_support > 0).count()
    }
}

/// Lifting machinery for one base; holds the base's complex so the coboundary
/// factorization is shared by every level and every lift.
#[derive(Debug)]
pub struct Lifter {
    base: HopfPresentation,
    ctx: ComplexContext,
}

fn set_difference(f: &mut MultiMap, col: usize, left: &[(usize, Elem)], right: &[(usize, Elem)]) {
    let ring = *f.ring();
    for &(i, v) in left {
        f.add_at(i, col, v);
    }
    for &(i, v) in right {
        f.add_at(i, col, ring.neg(v));
    }
}

/// `(I⊗Δ)Δ - (Δ⊗I)Δ`, `Δm - (m⊗m)(I⊗τ⊗I)(Δ⊗Δ)`, `m(I⊗m) - m(m⊗I)`, indexed
/// like the components of a degree-2 total cochain.
fn structure_residual(m: &MultiMap, delta: &MultiMap) -> Result<Vec<MultiMap>> {
    m.ring().check_same(delta.ring())?;
    let ring = *m.ring();
    let n = m.dim_out();
    if m.arity_in() != 2 || m.arity_out() != 1 || delta.arity_in() != 1 || delta.arity_out() != 2 || delta.dim_in() != n {
        return Err(Error::ArityMismatch(format!("product {} and coproduct {}", m.shape(), delta.shape())));
    }
    let mul = m.columns();
    let cop = delta.columns();
    let t = Tables { ring, dim: n, mul: mul.clone(), unit: Vec::new(), delta: cop.clone(), counit: Vec::new(), antipode: Vec::new() };
    let alg = SparseAlgebra { ring, dim: n, mul };

    let mut assoc = MultiMap::zeros(ring, n, n, 3, 1);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let left = t.product(&t.basis(i), &t.mul[j * n + l]);
                let right = t.product(&t.mul[i * n + j], &t.basis(l));
                set_difference(&mut assoc, (i * n + j) * n + l, &left, &right);
            }
        }
    }
    let mut compat = MultiMap::zeros(ring, n, n, 2, 2);
    for x in 0..n {
        for y in 0..n {
            let left = t.coproduct(&t.mul[x * n + y]);
            let right = alg.mul_tensors(2, &cop[x], &cop[y]);
            set_difference(&mut compat, x * n + y, &left, &right);
        }
    }
    let mut coassoc = MultiMap::zeros(ring, n, n, 1, 3);
    for (x, d) in cop.iter().enumerate() {
        let left = apply_at_leg(&ring, &cop, 2, n, 2, 1, d);
        let right = apply_at_leg(&ring, &cop, 2, n, 2, 0, d);
        set_difference(&mut coassoc, x, &left, &right);
    }
    Ok(vec![coassoc, compat, assoc])
}

fn perturb(f: &mut MultiMap, field: &RingDescriptor, k: u32, rng: &mut ChaCha8Rng) {
    let ring = *f.ring();
    for c in f.coeffs_mut() {
        *c = ring.add(*c, ring.mul_p_pow(field.random(rng), k));
    }
}

fn delta_ox(ring: &RingDescriptor, o: usize, x: usize) -> Elem {
    if o == x {
        ring.one()
    } else {
        Elem::ZERO
    }
}

fn overdetermined_solve(ring: &RingDescriptor, a: Matrix, rhs: &[Elem], what: &str) -> Result<Vec<Elem>> {
    let solver = HenselSolver::new(ring, a).map_err(|e| match e {
        Error::SingularModP => Error::PostAxiomFailure(format!("{what} system is singular modulo p")),
        other => other,
    })?;
    solver.solve(rhs).ok_or_else(|| Error::PostAxiomFailure(format!("{what} system is inconsistent")))
}

/// The unique `u` with `m(u⊗x) = x = m(x⊗u)`.
fn solve_unit(m: &MultiMap) -> Result<MultiMap> {
    let ring = *m.ring();
    let n = m.dim_out();
    let nn = n * n;
    let mut a = Matrix::zeros(2 * nn, n);
    let mut rhs = vec![Elem::ZERO; 2 * nn];
    for x in 0..n {
        for o in 0..n {
            let row = x * n + o;
            rhs[row] = delta_ox(&ring, o, x);
            rhs[nn + row] = rhs[row];
            for j in 0..n {
                a.set(row, j, m.get(o, j * n + x));
                a.set(nn + row, j, m.get(o, x * n + j));
            }
        }
    }
    MultiMap::from_vector(ring, n, 1, &overdetermined_solve(&ring, a, &rhs, "unit")?)
}

/// The unique `ε` with `(ε⊗I)Δ = I = (I⊗ε)Δ`.
fn solve_counit(delta: &MultiMap) -> Result<MultiMap> {
    let ring = *delta.ring();
    let n = delta.dim_in();
    let nn = n * n;
    let mut a = Matrix::zeros(2 * nn, n);
    let mut rhs = vec![Elem::ZERO; 2 * nn];
    for x in 0..n {
        for o in 0..n {
            let row = x * n + o;
            rhs[row] = delta_ox(&ring, o, x);
            rhs[nn + row] = rhs[row];
            for j in 0..n {
                a.set(row, j, delta.get(j * n + o, x));
                a.set(nn + row, j, delta.get(o * n + j, x));
            }
        }
    }
    MultiMap::from_functional(ring, n, 1, &overdetermined_solve(&ring, a, &rhs, "counit")?)
}

/// The antipode of an exact bialgebra: the solution of `m(S⊗I)Δ = unit∘ε`,
/// checked against the right-hand identity afterwards.
pub fn solve_antipode(b: &Bialgebra) -> Result<MultiMap> {
    let ring = *b.m.ring();
    let n = b.m.dim_out();
    let nn = n * n;
    // unknown S[o][a] at o * n + a; equation (t, x) at t * n + x
    let mut a = Matrix::zeros(nn, nn);
    for x in 0..n {
        for (az, c) in b.delta.column(x) {
            let (col_a, z) = (az / n, az % n);
            for o in 0..n {
                for (t, v) in b.m.column(o * n + z) {
                    let cur = a.get(t * n + x, o * n + col_a);
                    a.set(t * n + x, o * n + col_a, ring.add(cur, ring.mul(c, v)));
                }
            }
        }
    }
    let mut rhs = vec![Elem::ZERO; nn];
    for t in 0..n {
        for x in 0..n {
            rhs[t * n + x] = ring.mul(b.unit.get(t, 0), b.counit.get(0, x));
        }
    }
    let s = HenselSolver::new(&ring, a)?.solve(&rhs).ok_or(Error::SingularModP)?;
    let antipode = MultiMap::from_coeffs(ring, n, n, 1, 1, s)?;
    let h = b.with_antipode(antipode.clone())?;
    if !verify_antipode(&h.tables()).iter().all(|c| c.passed()) {
        return Err(Error::RightAntipodeFailure);
    }
    Ok(antipode)
}

impl Lifter {
    /// Admits a verified, semisimple and cosemisimple base over a field.
    pub fn new(base: &HopfPresentation) -> Result<Self> {
        if !base.ring().is_field() {
            return Err(Error::NotAField { n: base.ring().precision() });
        }
        let report = verify_hopf(base);
        if !report.verified() {
            return Err(Error::NotVerified(format!("{:?}", report.failures())));
        }
        if !is_semisimple(base)? || !is_cosemisimple(base)? {
            return Err(Error::NotSemisimpleOrCosemisimple);
        }
        Ok(Lifter { base: base.clone(), ctx: ComplexContext::identity(base)? })
    }

    pub fn base(&self) -> &HopfPresentation {
        &self.base
    }

    pub fn context(&self) -> &ComplexContext {
        &self.ctx
    }

    fn raw_lift(&self, current: &HopfPresentation, rng: Option<&mut ChaCha8Rng>) -> Result<(MultiMap, MultiMap)> {
        let k = current.ring().precision();
        let hi = current.ring().at_precision(k + 1)?;
        let mut m = current.m().digit_lift(&hi)?;
        let mut delta = current.delta().digit_lift(&hi)?;
        if let Some(rng) = rng {
            perturb(&mut m, self.base.ring(), k, rng);
            perturb(&mut delta, self.base.ring(), k, rng);
        }
        Ok((m, delta))
    }

    /// Raw `(m', Δ')` over `GR(p^2, m)`.
    pub fn initial_lift(&self, strategy: Strategy) -> Result<(MultiMap, MultiMap)> {
        self.raw_lift(&self.base, strategy.rng().as_mut())
    }

    /// Obstruction of a pair at precision `k + 1` whose reduction mod `p^k`
    /// satisfies the bialgebra axioms.
    pub fn obstruction(&self, m: &MultiMap, delta: &MultiMap) -> Result<ObstructionReport> {
        let hi = m.ring().precision();
        if hi < 2 {
            return Err(Error::InvalidRing("obstructions live at precision at least 2".into()));
        }
        let field = self.ctx.ring();
        let components = structure_residual(m, delta)?
            .into_iter()
            .map(|f| f.exact_div_p(hi - 1)?.reduce_to(field))
            .collect::<Result<Vec<_>>>()?;
        let c = TotalCochain::from_components(&self.ctx, 2, components)?;
        let cocycle_ok = self.ctx.is_cocycle(&c)?;
        Ok(ObstructionReport { c, cocycle_ok })
    }

    /// `m'' = m' - p^k μ`, `Δ'' = Δ' - p^k δ` with `d(μ, δ) = c`, then unit and counit.
    pub fn correct(&self, m: &MultiMap, delta: &MultiMap, obstruction: &ObstructionReport) -> Result<Correction> {
        let ring = *m.ring();
        let k = ring.precision() - 1;
        let (mut m2, mut delta2) = (m.clone(), delta.clone());
        let mut support = 0;
        let mut solver_rank = None;
        if !obstruction.c.is_zero() {
            if !obstruction.cocycle_ok {
                return Err(Error::NotACocycle);
            }
            let x = self.ctx.solve_coboundary(&obstruction.c)?.ok_or(Error::CoboundaryUnsolvable)?;
            support = x.support_size();
            solver_rank = Some(self.ctx.total_rank(1)?);
            delta2 = delta2.sub(&x.component(0).digit_lift(&ring)?.mul_p_pow(k))?;
            m2 = m2.sub(&x.component(1).digit_lift(&ring)?.mul_p_pow(k))?;
        }
        if structure_residual(&m2, &delta2)?.iter().any(|f| !f.is_zero()) {
            return Err(Error::PostAxiomFailure(format!("corrected pair still obstructed at precision {}", k + 1)));
        }
        let bialgebra = Bialgebra { unit: solve_unit(&m2)?, counit: solve_counit(&delta2)?, m: m2, delta: delta2 };
        let n = bialgebra.m.dim_out();
        let report = verify_bialgebra(&bialgebra.with_antipode(MultiMap::zeros(ring, n, n, 1, 1))?.tables());
        if !report.verified() {
            return Err(Error::PostAxiomFailure(format!("bialgebra axioms {:?}", report.failures())));
        }
        Ok(Correction { bialgebra, support, solver_rank })
    }

    pub fn lift(&self, n: u32, strategy: Strategy) -> Result<LiftState> {
        if n == 0 {
            return Err(Error::InvalidRing("precision must be at least 1".into()));
        }
        let mut rng = strategy.rng();
        let mut current = self.base.clone();
        let mut transcript = Vec::new();
        for k in 1..n {
            let started = Instant::now();
            let (m, delta) = self.raw_lift(&current, rng.as_mut())?;
            let obstruction = self.obstruction(&m, &delta)?;
            let correction = self.correct(&m, &delta, &obstruction)?;
            let next = correction.bialgebra.with_antipode(solve_antipode(&correction.bialgebra)?)?;
            let report = verify_hopf(&next);
            if !report.verified() {
                return Err(Error::PostAxiomFailure(format!("Hopf axioms {:?}", report.failures())));
            }
            if next.reduce_to(self.base.ring())? != self.base {
                return Err(Error::PostAxiomFailure("lift does not reduce to the base".into()));
            }
            let step = LiftStep {
                precision: k + 1,
                obstruction_support: obstruction.c.support_size(),
                correction_support: correction.support,
                solver_rank: correction.solver_rank,
            };
            log::info!(
                target: "hopflift::lift",
                "strategy={strategy} precision={} obstruction_support={} correction_support={} solver_rank={:?} elapsed_ms={}",
                step.precision,
                step.obstruction_support,
                step.correction_support,
                step.solver_rank,
                started.elapsed().as_millis()
            );
            transcript.push(step);
            current = next;
        }
        Ok(LiftState { base: self.base.clone(), precision: n, current, transcript })
    }
}

pub fn initial_lift(base: &HopfPresentation, strategy: Strategy) -> Result<(MultiMap, MultiMap)> {
    Lifter::new(base)?.initial_lift(strategy)
}

pub fn lift(base: &HopfPresentation, n: u32, strategy: Strategy) -> Result<LiftState> {
    Lifter::new(base)?.lift(n, strategy)
}

/// Multiplicativity defect in `C^{1,0}` and comultiplicativity defect in `C^{0,1}`.
fn morphism_defects(a: &HopfPresentation, b: &HopfPresentation, phi: &MultiMap) -> (MultiMap, MultiMap) {
    let ring = *a.ring();
    let (na, nb) = (a.dim(), b.dim());
    let (ta, tb) = (a.tables(), b.tables());
    let cols = phi.columns();
    let mut psi = MultiMap::zeros(ring, na, nb, 2, 1);
    for x in 0..na {
        for y in 0..na {
            let left = apply_cols(&ring, &cols, &ta.mul[x * na + y]);
            let right = tb.product(&cols[x], &cols[y]);
            set_difference(&mut psi, x * na + y, &left, &right);
        }
    }
    let mut eta = MultiMap::zeros(ring, na, nb, 1, 2);
    for x in 0..na {
        let left = apply_twice(&cols, na, nb, &ta.delta[x], &ring);
        let right = tb.coproduct(&cols[x]);
        set_difference(&mut eta, x, &left, &right);
    }
    (psi, eta)
}

/// Lifts `ctx.phi()` to a Hopf map `a -> b`, where `a` and `b` reduce mod `p`
/// to the source and target of `ctx`.
pub fn lift_morphism_in(ctx: &ComplexContext, a: &HopfPresentation, b: &HopfPresentation) -> Result<MorphismLift> {
    let field = *ctx.ring();
    if a.ring() != b.ring() || a.reduce_to(&field)? != *ctx.source() || b.reduce_to(&field)? != *ctx.target() {
        return Err(Error::DifferentBaseOrPrecision);
    }
    let mut phi = ctx.phi().clone();
    let mut steps = Vec::new();
    for k in 1..a.ring().precision() {
        let hi = field.at_precision(k + 1)?;
        let (a_hi, b_hi) = (a.reduce_to(&hi)?, b.reduce_to(&hi)?);
        let lifted = phi.digit_lift(&hi)?;
        let (psi, eta) = morphism_defects(&a_hi, &b_hi, &lifted);
        let reduce = |f: MultiMap| f.exact_div_p(k)?.reduce_to(&field);
        let defect = TotalCochain::from_components(ctx, 1, vec![reduce(eta)?, reduce(psi)?])?;
        let mut correction_support = 0;
        phi = if defect.is_zero() {
            lifted
        } else {
            let chi = ctx.solve_coboundary(&defect)?.ok_or(Error::CocycleUnsolvable)?;
            correction_support = chi.support_size();
            lifted.sub(&chi.component(0).digit_lift(&hi)?.mul_p_pow(k))?
        };
        let report = verify_morphism(&a_hi, &b_hi, &phi);
        if report.unital > 0 || report.counital > 0 {
            return Err(Error::UnitCompatibilityFailure(report.describe()));
        }
        if !report.verified() {
            return Err(Error::PostAxiomFailure(report.describe()));
        }
        let step = MorphismStep { precision: k + 1, defect_support: defect.support_size(), correction_support };
        log::info!(
            target: "hopflift::lift_map",
            "precision={} defect_support={} correction_support={}",
            step.precision,
            step.defect_support,
            step.correction_support
        );
        steps.push(step);
    }
    Ok(MorphismLift { morphism: HopfMorphism::new(a.clone(), b.clone(), phi)?, steps })
}

/// The unique Hopf map `liftA -> liftB` reducing to `phi`.
pub fn lift_morphism(phi: &HopfMorphism, lift_a: &LiftState, lift_b: &LiftState) -> Result<MorphismLift> {
    if lift_a.precision != lift_b.precision || lift_a.base != *phi.source() || lift_b.base != *phi.target() {
        return Err(Error::DifferentBaseOrPrecision);
    }
    lift_morphism_in(&ComplexContext::new(phi)?, &lift_a.current, &lift_b.current)
}

/// A Hopf isomorphism `s1 -> s2` congruent to the identity mod `p`.
pub fn reconcile(s1: &LiftState, s2: &LiftState) -> Result<HopfMorphism> {
    if s1.base != s2.base || s1.precision != s2.precision {
        return Err(Error::DifferentBaseOrPrecision);
    }
    reconcile_lifts(&s1.current, &s2.current)
}

/// [`reconcile`] for two presentations over the same ring with equal
/// reductions mod `p`.
pub fn reconcile_lifts(a: &HopfPresentation, b: &HopfPresentation) -> Result<HopfMorphism> {
    let field = a.ring().residue_field();
    let base = a.reduce_to(&field)?;
    if a.ring() != b.ring() || b.reduce_to(&field)? != base {
        return Err(Error::DifferentBaseOrPrecision);
    }
    let ctx = ComplexContext::identity(&base)?;
    let eta = lift_morphism_in(&ctx, a, b)?.morphism;
    let lhs = eta.map().compose(a.antipode())?;
    let rhs = b.antipode().compose(eta.map())?;
    if lhs != rhs {
        return Err(Error::PostAxiomFailure("isomorphism does not intertwine the antipodes".into()));
    }
    invert_map(eta.map())?;
    Ok(eta)
}

/// The unique R-matrix of `lift` reducing to `r`, obtained by lifting
/// `θ_R: H^{*cop} -> H` and reading `R̄` back off the lifted map.
pub fn lift_rmatrix(r: &RMatrix, lift: &LiftState) -> Result<RMatrix> {
    if r.host() != lift.base() {
        return Err(Error::DifferentBaseOrPrecision);
    }
    lift_rmatrix_to(r, lift.current())
}

/// [`lift_rmatrix`] onto any presentation reducing to the host of `r`.
pub fn lift_rmatrix_to(r: &RMatrix, lifted: &HopfPresentation) -> Result<RMatrix> {
    if lifted.reduce_to(r.host().ring())? != *r.host() {
        return Err(Error::DifferentBaseOrPrecision);
    }
    let ctx = ComplexContext::new(&theta(r.host(), r.r())?)?;
    let source = lifted.dual_cop()?;
    let morphism = lift_morphism_in(&ctx, &source, lifted)?;
    let rbar = RMatrix::certify(lifted.clone(), r_from_theta(morphism.morphism.map())?)?;
    if r.is_triangular() && !rbar.is_triangular() {
        return Err(Error::TriangularityLost);
    }
    Ok(rbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::groups::{group_algebra, Group};
    use crate::ring::make_ring;

    fn f5_c2() -> HopfPresentation {
        group_algebra(make_ring(5, 1, 1, None).unwrap(), &Group::cyclic(2)).unwrap()
    }

    #[test]
    fn strategies_parse() {
        assert_eq!("canonical".parse::<Strategy>().unwrap(), Strategy::Canonical);
        assert_eq!("perturbed:7".parse::<Strategy>().unwrap(), Strategy::Perturbed(7));
        assert!("perturbed:x".parse::<Strategy>().is_err());
        assert_eq!(Strategy::Perturbed(3).to_string(), "perturbed:3");
    }

    #[test]
    fn canonical_initial_lift_is_the_digit_lift() {
        let base = f5_c2();
        let (m, delta) = initial_lift(&base, Strategy::Canonical).unwrap();
        let z25 = make_ring(5, 2, 1, None).unwrap();
        assert_eq!(m, base.m().digit_lift(&z25).unwrap());
        assert_eq!(delta, base.delta().digit_lift(&z25).unwrap());
        let lifter = Lifter::new(&base).unwrap();
        let report = lifter.obstruction(&m, &delta).unwrap();
        assert!(report.c.is_zero() && report.cocycle_ok);
    }

    #[test]
    fn perturbation_is_divisible_by_p() {
        let base = f5_c2();
        let (m, _) = initial_lift(&base, Strategy::Perturbed(1)).unwrap();
        let (m0, _) = initial_lift(&base, Strategy::Canonical).unwrap();
        let diff = m.sub(&m0).unwrap();
        assert!(!diff.is_zero());
        assert!(diff.exact_div_p(1).is_ok());
    }

    #[test]
    fn perturbed_obstruction_is_a_nonzero_cocycle() {
        let lifter = Lifter::new(&f5_c2()).unwrap();
        let (m, delta) = lifter.initial_lift(Strategy::Perturbed(1)).unwrap();
        let report = lifter.obstruction(&m, &delta).unwrap();
        assert!(!report.c.is_zero());
        assert!(report.cocycle_ok);
        let corrected = lifter.correct(&m, &delta, &report).unwrap();
        assert!(corrected.support > 0);
    }

    #[test]
    fn refuses_modular_group_algebras() {
        let h = group_algebra(make_ring(3, 1, 1, None).unwrap(), &Group::cyclic(3)).unwrap();
        assert_eq!(Lifter::new(&h).unwrap_err(), Error::NotSemisimpleOrCosemisimple);
    }

    #[test]
    fn canonical_antipode_is_inversion() {
        let state = lift(&f5_c2(), 2, Strategy::Canonical).unwrap();
        let z25 = make_ring(5, 2, 1, None).unwrap();
        assert_eq!(state.current(), &f5_c2().digit_lift(&z25).unwrap());
        assert!(state.transcript().iter().all(|s| s.obstruction_support == 0 && s.correction_support == 0));
    }

    #[test]
    fn perturbed_lift_to_625() {
        let base = f5_c2();
        let state = lift(&base, 4, Strategy::Perturbed(7)).unwrap();
        assert_eq!(state.current().ring().characteristic(), 625);
        assert!(verify_hopf(state.current()).verified());
        assert_eq!(state.at_precision(1).unwrap(), base);
        assert_eq!(state.transcript().len(), 3);
    }

    #[test]
    fn lifted_triangular_structure() {
        let base = f5_c2();
        let f5 = *base.ring();
        // R_1 = (1⊗1 + 1⊗g + g⊗1 - g⊗g) / 2
        let half = f5.from_int(3);
        let coeffs = [half, half, half, f5.neg(half)];
        let r = RMatrix::certify(base.clone(), MultiMap::from_vector(f5, 2, 2, &coeffs).unwrap()).unwrap();
        assert!(r.is_triangular());
        let state = lift(&base, 2, Strategy::Canonical).unwrap();
        let rbar = lift_rmatrix(&r, &state).unwrap();
        let z25 = *state.current().ring();
        let expected: Vec<Elem> = [13, 13, 13, 12].iter().map(|&c| z25.from_int(c)).collect();
        assert_eq!(rbar.r().coeffs(), expected.as_slice());
        assert!(rbar.is_triangular());
    }
}
