//! Report building, rendering and plotting behind the `homcurve` binary.

pub mod analyze;
pub mod error;
pub mod plot;
pub mod render;
pub mod report;

pub use analyze::{analyze, enumerate_reports, Depth, Options};
pub use error::CliError;
pub use plot::{plot_svg, Plot, PlotOptions};
pub use report::{Num, Report};
