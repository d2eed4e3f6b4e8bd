use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports.
///
/// Variants tagged "diagnostic" in their message signal that a guarantee of
/// the underlying theory was violated on the given input; they are not
/// expected on admitted inputs and indicate either a bad input that slipped
/// past a precondition or an implementation bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible modulo {p}")]
    ReducibleModulus { p: u64 },
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
    #[error("ring descriptors do not match: {0}")]
    DescriptorMismatch(String),
    #[error("element is not a unit (it vanishes modulo p)")]
    NotAUnit,
    #[error("coefficient is not divisible by p^{k}")]
    NotDivisible { k: u32 },
    #[error("matrix is singular modulo p")]
    SingularModP,
    #[error("ring is not a field (precision {n})")]
    NotAField { n: u32 },
    #[error("arity or dimension mismatch: {0}")]
    ArityMismatch(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("antipode is not invertible")]
    SingularAntipode,
    #[error("internal axiom failure (diagnostic): {0}")]
    InternalAxiomFailure(String),
    #[error("antipode order not found up to {bound}")]
    OrderNotFound { bound: usize },
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("semisimple algebra does not split over the base field")]
    NotSplit,
    #[error("field of size {q} exceeds the root search bound {bound}")]
    FieldTooLargeForRootSearch { q: u64, bound: u64 },
    #[error("computation exceeds the configured budget: {0}")]
    BudgetExceeded(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("presentation fails the Hopf axioms: {0}")]
    NotVerified(String),
    #[error("base presentation is not semisimple and cosemisimple")]
    NotSemisimpleOrCosemisimple,
    #[error("coboundary equation unsolvable (diagnostic: vanishing cohomology violated)")]
    CoboundaryUnsolvable,
    #[error("axiom failure after correction: {0}")]
    PostAxiomFailure(String),
    #[error("right antipode identity fails after solving the left one")]
    RightAntipodeFailure,
    #[error("lift states have different bases or precisions")]
    DifferentBaseOrPrecision,
    #[error("cocycle equation unsolvable (diagnostic: vanishing cohomology violated)")]
    CocycleUnsolvable,
    #[error("lifted morphism is not unital/counital: {0}")]
    UnitCompatibilityFailure(String),
    #[error("lifted R-matrix is not triangular (diagnostic)")]
    TriangularityLost,
    #[error("R-matrix does not define a Hopf map (diagnostic): {0}")]
    ThetaNotHopfMap(String),
    #[error("R-matrix is not quasitriangular: {0}")]
    NotQuasitriangular(String),
    #[error("morphism is not a Hopf algebra map: {0}")]
    NotAHopfMap(String),
    #[error("P(exp(2 pi i / r)) is not certified real (coefficients not symmetric)")]
    NotRealAtRoot,
    #[error("conjugate product is not a constant polynomial (diagnostic)")]
    NonConstantProduct,
    #[error("conjugate product vanishes: P has a primitive root of unity as a zero")]
    ZeroConjugateProduct,
    #[error("lemma requires r > 2, got {0}")]
    OrderTooSmall(u64),
    #[error("threshold requires dimension > 2, got {0}")]
    DimensionTooSmall(u64),
    #[error("N-route and gcd-route verdicts disagree (diagnostic)")]
    RoutesDisagree,
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
}
