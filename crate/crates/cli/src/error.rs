use bicircle::classify::ClassifyError;
use bicircle::dual::DualError;
use bicircle::edge::EdgeError;
use bicircle::geom3::Geom3Error;
use bicircle::hull::HullError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Geometry(#[from] Geom3Error),
    #[error(transparent)]
    Edge(#[from] EdgeError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Dual(#[from] DualError),
}

impl CliError {
    /// Machine-readable code for the report.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Config(_) => "InvalidConfig",
            CliError::Argument(_) => "InvalidArgument",
            CliError::Io(_) => "Io",
            CliError::Geometry(Geom3Error::IdenticalPlanes) => "CoplanarCircles",
            CliError::Geometry(_) => "InvalidGeometry",
            CliError::Edge(EdgeError::CoplanarConics) => "CoplanarCircles",
            CliError::Edge(EdgeError::ZeroForm) => "ZeroForm",
            CliError::Edge(EdgeError::NotSmoothGenusOne) => "NotSmoothGenusOne",
            CliError::Edge(EdgeError::DegenerateConfiguration(_)) => "DegenerateConfiguration",
            CliError::Hull(HullError::CoplanarCircles) => "CoplanarCircles",
            CliError::Hull(HullError::ZeroDirection) => "ZeroDirection",
            CliError::Hull(HullError::NotOnEdgeCurve(_)) => "NotOnEdgeCurve",
            CliError::Hull(HullError::DegenerateLine) => "DegenerateLine",
            CliError::Hull(HullError::ResolutionTooSmall) => "ResolutionTooSmall",
            CliError::Classify(ClassifyError::CoplanarCircles) => "CoplanarCircles",
            CliError::Classify(ClassifyError::Geometry(_)) => "InvalidGeometry",
            CliError::Classify(ClassifyError::NoSuitableRealCone(_)) => "NoSuitableRealCone",
            CliError::Dual(DualError::OriginNotInterior(_)) => "OriginNotInterior",
            CliError::Dual(DualError::NotOnBoundary(_)) => "NotOnBoundary",
            CliError::Dual(DualError::CoplanarCircles) => "CoplanarCircles",
            CliError::Dual(DualError::ResolutionTooSmall) => "ResolutionTooSmall",
        }
    }

    /// 3 for mathematical degeneracies of the input, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self.code() {
            "CoplanarCircles" | "ZeroForm" | "DegenerateConfiguration" | "NotOnEdgeCurve" | "DegenerateLine"
            | "NoSuitableRealCone" => 3,
            _ => 2,
        }
    }
}
