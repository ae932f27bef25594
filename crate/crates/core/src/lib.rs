//! Tidy pairwise association scores for mixed-type tabular data, with
//! seriated matrix and linear displays.

pub mod dataset;
pub mod dispatch;
pub mod error;
pub mod measures;
pub mod pairwise;
pub mod registry;
pub mod scagnostics;
pub mod seriation;
pub mod viz;

pub use dataset::{Column, ColumnKind, Dataset, Schema};
pub use dispatch::{
    apply_measure, pairwise_by, pairwise_multi, pairwise_scores, CorMethod, MeasureOptions, MicStat,
    ScoreControl,
};
pub use error::{Error, Result};
pub use pairwise::{FilterCriteria, LabeledMatrix, PairType, PairwiseRow, PairwiseTable, ALL_GROUP};
pub use seriation::{OrderName, SummaryMode};
pub use viz::{plot_linear, plot_matrix, Geom, PlotOptions, RenderDocument};
