use thiserror::Error;

/// Errors produced by the algebra layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("field mismatch: F_{0} vs F_{1}")]
    PrimeMismatch(u32, u32),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("acting groups differ")]
    GroupMismatch,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    /// Action matrices that do not define a representation (relation failure or singular matrix).
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("zero module: {0}")]
    ZeroModule(String),
    #[error("unknown field label `{0}`")]
    UnknownField(String),
    #[error("invalid Galois context: {0}")]
    InvalidContext(String),
    #[error("invalid Dynkin data: {0}")]
    InvalidDiagram(String),
    #[error("diagram map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("invalid Tits index table: {0}")]
    InvalidTitsData(String),
    /// The stabilizer of a vertex set is not the subgroup of any declared field.
    #[error("subgroup generated by {0} is not represented in the field lattice")]
    SubgroupNotInLattice(String),
    #[error("invalid variety data: {0}")]
    InvalidVariety(String),
    #[error("not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// True for errors where well-formed input violates a mathematical invariant
    /// (as opposed to malformed or inconsistent input).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::NotARepresentation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
