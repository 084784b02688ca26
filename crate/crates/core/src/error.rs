use core::fmt;

/// Failures raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input.
    InvalidInput(&'static str),
    /// An element that should be hyperbolic is not.
    NoClosedGeodesic,
    /// Two geodesic lines cross where disjoint lines were required.
    LinesIntersect,
    /// Two geodesic lines share an ideal endpoint.
    AsymptoticLines,
    /// A matrix left `SL(2, R)` or moved a point off the half-plane.
    CorruptedMatrix,
    /// The pants data produced a hyperbolic cosine at or below one.
    DegeneratePants,
    /// The Fenchel–Nielsen holonomy failed its relation or length checks.
    HolonomyConstructionFailed,
    /// A fundamental domain could not be certified.
    FundamentalDomain(&'static str),
    /// A search hit its element cap before finishing.
    BudgetExceeded,
    /// A geometric question could not be settled within the search window.
    Undecided(&'static str),
    /// A sampled component region contained no interior sample.
    ComponentTooThin,
    /// An inequality that the construction guarantees failed numerically.
    Invariant(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::NoClosedGeodesic => f.write_str("no closed geodesic in class"),
            Error::LinesIntersect => f.write_str("lines intersect"),
            Error::AsymptoticLines => f.write_str("asymptotic lines"),
            Error::CorruptedMatrix => f.write_str("corrupted matrix"),
            Error::DegeneratePants => f.write_str("degenerate pants"),
            Error::HolonomyConstructionFailed => f.write_str("holonomy construction failed"),
            Error::FundamentalDomain(m) => write!(f, "fundamental domain: {m}"),
            Error::BudgetExceeded => f.write_str("enumeration budget exceeded"),
            Error::Undecided(m) => write!(f, "undecided within budget: {m}"),
            Error::ComponentTooThin => f.write_str("component too thin to sample"),
            Error::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}
