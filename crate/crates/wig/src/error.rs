use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("height {requested} exceeds the configured cap {cap}")]
    HeightCapExceeded { requested: usize, cap: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("empty word")]
    EmptyWord,
    #[error("endpoints do not match: {0}")]
    EndpointMismatch(String),
    #[error("not a landscape: {0}")]
    NotALandscape(String),
    #[error("not a mountain: {0}")]
    NotAMountain(String),
    #[error("position {0} is not a river")]
    NotARiver(usize),
    #[error("code length {got} does not match height {height} - 1")]
    CodeLengthMismatch { got: usize, height: usize },
    #[error("not a downhill: {0}")]
    NotADownhill(String),
    #[error("not a canyon: {0}")]
    NotACanyon(String),
    #[error("not a valley: {0}")]
    NotAValley(String),
    #[error("valley normal form has an unexpected shape: {0}")]
    UnclassifiedValley(String),
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("peak height {height} is below the required {required}")]
    HeightTooSmall { height: usize, required: usize },
    #[error("mountain is not in the D-class of the given peak")]
    WrongClass,
    #[error("the identity class is not an element in semigroup mode")]
    IdentityClass,
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("table is not square or malformed: {0}")]
    MalformedTable(String),
    #[error("allowed peak set is not closed downward: {0}")]
    NotDownClosed(String),
    #[error("ambient semigroup is not regular")]
    NotRegularAmbient,
    #[error("empty sandwich set: ambient semigroup is not regular")]
    EmptySandwich,
    #[error("letter {0} is not covered by the assignment")]
    UncoveredLetter(String),
    #[error("too many branches (more than {0})")]
    TooManyBranches(usize),
    #[error("invalid site: {0}")]
    InvalidSite(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
