use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid terminal set: {0}")]
    InvalidTerminals(String),
    #[error("terminals {0} and {1} are not connected")]
    DisconnectedTerminals(String, String),
    #[error("cut-edge {edge} separates terminals; terminal connectivity is 1 and capacity is exactly 1")]
    BridgeBetweenTerminals { edge: u64 },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(u64),
    #[error("source and target are the same vertex {0}")]
    SameVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edges {0} and {1} share no endpoint")]
    NotIncident(u64, u64),
    #[error("edge {0} cannot be paired with itself")]
    SameEdge(u64),
    #[error("cut-edge {edge} is incident to pivot {pivot}")]
    CutEdgeAtPivot { pivot: String, edge: u64 },
    #[error("pivot {0} has degree three")]
    DegreeThree(String),
    #[error("pivot {0} has odd degree; scale capacities by 2 first")]
    OddDegree(String),
    #[error("admissible pairing search exhausted: {0}")]
    SearchExhausted(String),
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
    #[error("more than {limit} Steiner trees")]
    TooManyTrees { limit: usize },
    #[error("{count} vertices exceeds the partition enumeration limit of {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("gain is undefined: routing lower bound is zero")]
    UndefinedGain,
    #[error("relay slot {slot} out of range for {terminals} terminals")]
    BadSlot { slot: usize, terminals: usize },
    #[error("terminal connectivity {lambda} is below 2")]
    Underconnected { lambda: u64 },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by instance size rather than malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::TooManyTrees { .. } | Error::TooManyVertices { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
