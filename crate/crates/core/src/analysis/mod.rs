//! Error bounds, table reproduction, seeded error measurement and self-checks.

mod bounds;
mod measure;
pub mod verify;

pub use bounds::{
    cumulative_bound, per_butterfly_bound, reproduce_table1, reproduce_table1_at,
    reproduce_table2, reproduce_table2_at, BoundReport,
};
pub use measure::{measure_error, relative_l2_error, trial_errors, ErrorReport, Metric};

/// One-row-per-record CSV serialization with a fixed header.
pub trait CsvRecord {
    fn csv_header() -> &'static str;
    fn csv_row(&self) -> String;
}

/// Render records as CSV, header first.
pub fn to_csv<R: CsvRecord>(records: &[R]) -> String {
    let mut out = String::from(R::csv_header());
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}
