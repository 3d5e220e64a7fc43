use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("product leaves the ball of radius {radius}: {detail}")]
    BallExceeded { radius: usize, detail: String },

    #[error("resource limit reached: {0}")]
    ResourceLimit(String),

    #[error("polynomial {poly} is not an integer polynomial in {basis}")]
    NotExpressible { basis: &'static str, poly: String },

    #[error("polynomial {0} has odd powers of q^(1/2)")]
    NotAQPolynomial(String),

    #[error("no longest element of a maximal finite parabolic lies in the ball")]
    EmptyLambda,

    #[error("no rank-2 parabolic subgroup with m = {0}")]
    NoSuchParabolic(u32),

    #[error("element {0} is not certified in the lowest two-sided cell")]
    NotInOmega(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("missing prerequisite: {0}")]
    MissingPrerequisite(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable name of the variant, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::BallExceeded { .. } => "BallExceeded",
            Error::ResourceLimit(_) => "ResourceLimit",
            Error::NotExpressible { .. } => "NotExpressible",
            Error::NotAQPolynomial(_) => "NotAQPolynomial",
            Error::EmptyLambda => "EmptyLambda",
            Error::NoSuchParabolic(_) => "NoSuchParabolic",
            Error::NotInOmega(_) => "NotInOmega",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::MissingPrerequisite(_) => "MissingPrerequisite",
            Error::Cache(_) => "CacheError",
            Error::Io(_) => "IoError",
            Error::Json(_) => "JsonError",
        }
    }
}
