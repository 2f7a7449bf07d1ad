use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("duplicate identifier `{0}`")]
    Duplicate(String),

    #[error("morphism `{morphism}` has dangling {end} `{object}`")]
    Dangling {
        morphism: String,
        end: &'static str,
        object: String,
    },

    #[error("missing composite {g} . {f}")]
    MissingComposite { g: String, f: String },

    #[error("composite {g} . {f} = {h} has wrong endpoints")]
    CompositeEndpoints { g: String, f: String, h: String },

    #[error("conflicting composites for {g} . {f}: `{first}` and `{second}`")]
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },

    #[error("associativity fails on ({h}, {g}, {f})")]
    Associativity { h: String, g: String, f: String },

    #[error("unit law fails for `{morphism}` at identity `{identity}`")]
    UnitLaw { morphism: String, identity: String },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("simplicial identity fails at {cell}: {detail}")]
    SimplicialIdentity { cell: String, detail: String },

    #[error("invalid face expression for `{generator}` face {index}: {detail}")]
    InvalidFace {
        generator: String,
        index: usize,
        detail: String,
    },

    #[error("missing face {index} of generator `{generator}`")]
    MissingFace { generator: String, index: usize },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("window insufficient for {what}: need {required}")]
    WindowInsufficient { what: String, required: String },

    #[error("rewriting exceeded the limit of {limit} steps")]
    RewriteLimit { limit: usize },

    #[error("presented category has more than {bound} morphisms (possibly infinite)")]
    InfiniteCategory { bound: usize },

    #[error("precondition not certified: {0}")]
    Uncertified(String),

    #[error("no composition section for {0} within the window")]
    NoSection(String),

    #[error("no connection square for edge `{0}` within the window")]
    NoConnection(String),

    #[error("not well defined: {0}")]
    NotWellDefined(String),

    #[error("not a map: {0}")]
    NotAMap(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
