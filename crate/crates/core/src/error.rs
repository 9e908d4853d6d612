use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure surfaced by the library. Variant names follow the
/// operation contracts; the CLI prints them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // groups
    #[error("malformed descriptor: {0}")]
    MalformedSpec(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group of order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("subgroup does not belong to this group: {0}")]
    SubgroupMismatch(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),

    // matroids
    #[error("basis exchange fails: B1={b1:?}, B2={b2:?}, x={x}")]
    ExchangeFails { b1: Vec<usize>, b2: Vec<usize>, x: usize },
    #[error("empty basis family")]
    EmptyFamily,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("ground size {actual} does not match {expected}")]
    GroundSizeMismatch { expected: usize, actual: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ground set of size {size} exceeds the bound {bound}")]
    GroundTooLarge { size: usize, bound: usize },

    // equivalence relations
    #[error("point {point} out of range for ground size {ground_size}")]
    OutOfRange { point: usize, ground_size: usize },
    #[error("relation has a single class")]
    TrivialRelation,
    #[error("expected rank {expected}, found {actual}")]
    WrongRank { expected: usize, actual: usize },
    #[error("matroid has loops: {0:?}")]
    HasLoops(Vec<usize>),

    // rank 3
    #[error("index [G:H] = {0} is smaller than 3")]
    IndexTooSmall(usize),
    #[error("relation violates the rank-3 conditions")]
    ConditionsViolated,
    #[error("matroid is not simple")]
    NotSimple,
    #[error("matroid is not invariant under the action")]
    NotInvariant,
    #[error("quotient with {size} non-identity cosets exceeds the bound {bound}")]
    QuotientTooLarge { size: usize, bound: usize },

    // difference systems
    #[error("group is not abelian")]
    NotAbelian,
    #[error("set {0} does not contain 0")]
    MissingZero(usize),
    #[error("translate sets overlap: {0}")]
    DisjointnessViolated(String),
    #[error("invalid distinct difference system: {0}")]
    InvalidDds(String),
    #[error("rank {0} is below 3")]
    RankTooSmall(usize),
    #[error("group of order {order} is smaller than rank {rank}")]
    GroupTooSmall { order: usize, rank: usize },
    #[error("bad modulus {0}: need a prime congruent to 7 mod 12")]
    BadModulus(usize),
    #[error("{u} is not a primitive 6th root of unity mod {p}")]
    NotPrimitiveSixthRoot { p: usize, u: usize },
    #[error("no solution found: {0}")]
    NoSolution(String),
    #[error("relation is not admissible")]
    NotAdmissible,
    #[error("bad input: {0}")]
    BadInput(String),

    // quotient
    #[error("rank {0} is below 2")]
    RankTooLow(usize),
    #[error("quotient has {actual} points but the relation has {expected} classes")]
    ClassCountMismatch { expected: usize, actual: usize },
    #[error("no k-subset meets two classes")]
    EmptyBases,

    // oracle
    #[error("{count} subsets exceed the bound {bound}")]
    TooManySubsets { count: u128, bound: u128 },
    #[error("{count} orbits exceed the bound {bound}")]
    TooManyOrbits { count: usize, bound: usize },

    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
