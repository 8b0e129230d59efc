//! Honda-theory computations: the `b_i` and `x_k` recurrences, the
//! logarithm of the formal group, its group law, the elements `lambda_(n,u)`
//! and the trace relations of the point logarithms.

mod group;
mod log;
mod multi;
mod points;
mod tables;

pub use group::{formal_group, FormalGroup};
pub use log::{f_iterate, f_series, honda_log, HondaLog};
pub use multi::TotalDegreeSeries;
pub use points::{
    d_system, lambda_nu, lambda_truncation, point_log, point_log_table, verify_traces, Convention, ConventionReport,
    DSystem, LambdaWeight, PiForm, PointLogTable, Relation, TraceCase, TraceReport,
};
pub use tables::{recurrence_tables, RecurrenceTables};

#[cfg(test)]
mod tests;
