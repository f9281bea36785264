use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex v{}", .0 + 1)]
    SelfLoop(usize),
    #[error("duplicate edge {{v{}, v{}}}", .0 + 1, .1 + 1)]
    DuplicateEdge(usize, usize),
    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("image sequence is not a bijection")]
    NotAPermutation,
    #[error("bad permutation string: {0}")]
    BadPermutation(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("size {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("bad group parameter: {0}")]
    BadParam(String),
    #[error("group closure exceeded {0} elements")]
    NotClosedWithinBound(usize),
    #[error("generator {0} is not orthogonal")]
    NonOrthogonalGenerator(usize),
    #[error("element order exceeds {0}")]
    OrderBoundExceeded(usize),
    #[error("elements do not form a group: {0}")]
    NotAGroup(String),
    #[error("image of {0} is not an automorphism of the graph")]
    NotAnAutomorphism(String),
    #[error("no automorphism realizes the symmetry operation {0}")]
    NotInClass(String),
    #[error("{count} type assignments exceed the enumeration limit {limit}")]
    ExplosionGuard { count: u128, limit: u128 },
    #[error("edge {{v{}, v{}}} joins coincident points", .0 + 1, .1 + 1)]
    InvalidFramework(usize, usize),
    #[error("type assignment is not a group homomorphism")]
    NotAHomomorphism,
    #[error("no valid sample after {0} attempts")]
    SamplingExhausted(usize),
    #[error("orbit propagation is inconsistent at vertex v{}", .0 + 1)]
    InconsistentPropagation(usize),
    #[error("entry {0} has no small-denominator rational approximation")]
    NotRationalizable(f64),
    #[error("{0}")]
    Unsupported(String),
}
