//! Text front ends: polynomial and system parsing, report JSON, CSV.

mod csv;
mod matrix_system;
mod report;
mod system;

pub use csv::{read_scalar_csv, CsvValue, ScalarSeries};
pub use matrix_system::MatrixSystemDocument;
pub use report::{
    sha256_hex, ConditionsDocument, MethodKind, ReportDocument, RoundDocument, VerdictKind,
    WitnessDocument, WitnessKind, TOOL_VERSION,
};
pub use system::{parse_polynomial, parse_system, OperatorEntry, SystemDocument};
