use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed quandle table: {0}")]
    MalformedTable(String),

    #[error("table is not a quandle: {0}")]
    NotAQuandle(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("unsupported order {order} (supported: 1..={max})")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),

    #[error("PD parse error: {0}")]
    PdParse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid cochain: {0}")]
    InvalidCochain(String),

    #[error("unsupported coefficient group `{0}`")]
    Coefficient(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("no colorings found (internal error)")]
    NoColorings,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
