use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every validation failure carries enough location data (labels and basis
/// indices) to be reported as a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("unknown field {0:?} (expected q or fp:<p>)")]
    BadField(String),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch { context: String, expected: usize, found: usize },
    #[error("values from different fields in {0}")]
    FieldMismatch(String),

    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("missing composite {g}∘{f}")]
    MissingComposite { g: String, f: String },
    #[error("composite {g}∘{f} is not composable or has wrong domain/codomain")]
    DomCodMismatch { g: String, f: String },
    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("identity law fails at {0}")]
    IdentityLawViolation(String),
    #[error("quiver has a directed cycle through {0}")]
    CyclicQuiver(String),

    #[error("algebra is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociativeAlgebra(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    UnitLawViolation(usize),
    #[error("not an algebra homomorphism: {0}")]
    NotAlgebraHom(String),
    #[error("left action is not a unital representation at {0}")]
    LeftActionNotRepresentation(String),
    #[error("right action is not a unital representation at {0}")]
    RightActionNotRepresentation(String),
    #[error("left action of {0} and right action of {1} do not commute")]
    ActionsDoNotCommute(usize, usize),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("pairing is not balanced at (m{0}·b{1}, n{2})")]
    NotBalanced(usize, usize, usize),
    #[error("not a bimodule map: {0}")]
    NotBimoduleMap(String),
    #[error("subspace is not a submodule")]
    NotSubmodule,

    #[error("no algebra assigned to object {0}")]
    MissingAlgebra(String),
    #[error("no bimodule assigned to morphism {0}")]
    MissingBimodule(String),
    #[error("bimodule on {0} is over the wrong algebras")]
    BimoduleAlgebraMismatch(String),
    #[error("no compositor for {0}")]
    MissingCompositor(String),
    #[error("strict unitality violated at {0}")]
    StrictUnitViolation(String),
    #[error("compositor {pair} is not balanced (witness {witness:?})")]
    CompositorNotBalanced { pair: String, witness: (usize, usize, usize) },
    #[error("compositor {0} is not a bimodule map")]
    CompositorNotBimoduleMap(String),
    #[error("compositor {0} is not invertible")]
    CompositorNotInvertible(String),
    #[error("coherence fails on {triple} at basis {witness:?}")]
    CoherenceFailure { triple: String, witness: (usize, usize, usize) },
    #[error("expected a {expected} pseudofunctor")]
    VarianceMismatch { expected: &'static str },
    #[error("presheaf is not functorial at {0}")]
    NotFunctorial(String),

    #[error("skew product closed form disagrees at basis pair ({0}, {1})")]
    SkewProductMismatch(usize, usize),

    #[error("lax unity fails at {0}")]
    LaxUnityViolation(String),
    #[error("structure map on {morphism} is not balanced (witness {witness:?})")]
    LaxNotBalanced { morphism: String, witness: (usize, usize, usize) },
    #[error("no structure map for {0}")]
    MissingStructureMap(String),
    #[error("structure map on {0} is not a bimodule map")]
    LaxNotBimoduleMap(String),
    #[error("lax square fails for ({first}, {second}) at basis {witness:?}")]
    LaxSquareFailure { first: String, second: String, witness: (usize, usize, usize) },
    #[error("representation or module refers to a different modulation")]
    ModulationMismatch,
    #[error("morphism source and target are incompatible")]
    IncompatiblePair,
    #[error("modification square fails at {0}")]
    SquareFailure(String),
    #[error("roundtrip mismatch: {0}")]
    RoundtripMismatch(String),

    #[error("comodulation is not built from a presheaf of algebras")]
    NotPresheafBacked,
    #[error("presheaf modules live over different presheaves")]
    BaseMismatch,
    #[error("restriction is not semilinear at {0}")]
    NotSemilinear(String),
}
