use thiserror::Error;

/// Errors surfaced by the library. Hypothesis violations carry the violated
/// condition as text so callers can report it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero form has no canonical representative")]
    ZeroForm,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expected form of degree {expected}, got {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("forms live in different variable spaces")]
    SpaceMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is excluded (need p > 3)")]
    SmallCharacteristic(u64),
    #[error("polar order out of range")]
    PolarOrderOutOfRange,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("line is contained in the cubic (degenerate member)")]
    LineOnCurve,
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("point is not on the Hessian (polar conic nondegenerate)")]
    NotOnHessian,
    #[error("Hessian is degenerate at this point (polar conic of rank <= 1)")]
    DegenerateHessian,
    #[error("hessian form vanishes identically")]
    HessianVanishes,
    #[error("insufficient samples: needed {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("interpolation solution space has dimension {0}, expected 1")]
    InterpolationDimension(usize),
    #[error("parameter pole: {0}")]
    ParameterPole(String),
    #[error("field has no primitive cube root of unity (order not 1 mod 3)")]
    MissingCubeRoot,
    #[error("auxiliary point selection exhausted")]
    AuxiliaryExhausted,
    #[error("points do not form an independent 3-torsion basis")]
    NotATorsionBasis,
    #[error("no full 3-torsion instance found in the search range")]
    TorsionSearchFailed,
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("map is undefined at this point (all coordinates vanish)")]
    MapUndefinedAt,
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error("field too large for exhaustive scan (order {0})")]
    FieldTooLarge(u64),
    #[error("cubic has no marked origin")]
    NoOrigin,
    #[error("marked origin is not an inflection point")]
    OriginNotInflection,
    #[error("curve is not in Weierstrass shape")]
    NotWeierstrass,
    #[error("fixture io: {0}")]
    FixtureIo(#[from] std::io::Error),
    #[error("fixture format: {0}")]
    FixtureFormat(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
