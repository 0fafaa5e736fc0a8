use thiserror::Error;

/// Errors raised by the algebra, group and quiver routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weights must be positive (got deg x = {wx}, deg y = {wy})")]
    ZeroWeight { wx: u32, wy: u32 },

    #[error("weights must be coprime (got deg x = {wx}, deg y = {wy})")]
    WeightsNotCoprime { wx: u32, wy: u32 },

    #[error("quantum parameter alpha must be nonzero")]
    ZeroAlpha,

    #[error("the Jordan family requires deg x = 1 (got deg x = {wx})")]
    JordanWeight { wx: u32 },

    #[error("image of {generator} is not homogeneous of degree {degree}")]
    NotHomogeneous { generator: char, degree: u32 },

    #[error("substitution does not preserve the defining relation")]
    RelationNotPreserved,

    #[error("graded endomorphism is not invertible")]
    NotInvertible,

    #[error("automorphism does not match a tabulated form: {0}")]
    NotTabulated(String),

    #[error("sigma(x) is not a scalar multiple of x")]
    NotNormalOnX,

    #[error("Koszul method needs deg x = deg y = 1 (got ({wx}, {wy}))")]
    NotKoszul { wx: u32, wy: u32 },

    #[error("group order must be at least 1")]
    ZeroGroupOrder,

    #[error("group order r = {r} must divide q + 1 = {q_plus_one} for the Jordan family")]
    JordanDivisibility { r: u32, q_plus_one: u32 },

    #[error("degree window {max_degree} is below the required minimum {required}")]
    WindowTooSmall { max_degree: usize, required: usize },

    #[error("problem size {size} exceeds the limit {limit}")]
    ScaleExceeded { size: usize, limit: usize },

    #[error("covering degree must be at least 1")]
    ZeroCoveringDegree,

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),

    #[error("underlying graph is not a single cycle")]
    NotACycle,

    #[error("quiver has an oriented cycle")]
    OrientedCycle,

    #[error("canonical quiver needs both path lengths >= 1 (got ({0}, {1}))")]
    InvalidPathLengths(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
