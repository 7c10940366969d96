//! Randomised benchmark on collective spanning-tree instances: connected
//! random graphs, real-valued base profiles thresholded at acceptance levels
//! `p`, and timed rule runs written as CSV with a summary chart.

mod bench;
mod generate;
mod report;
mod seed;

pub use bench::{run_benchmark, BenchConfig, BenchRecord};
pub use generate::{gen_base_profile, gen_connected_graph, threshold_profile, BaseProfile};
pub use report::{summarize, summary_svg, write_records_csv, write_summary_csv, SummaryRow};
pub use seed::{child_seed, splitmix64};
