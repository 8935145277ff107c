//! Episode runner, experiment matrix, metrics, renders and exports.

pub mod episode;
pub mod export;
pub mod matrix;
pub mod render;
pub mod report;

pub use episode::{replay, run_episode, subgoal_flags, subgoal_progress, EpisodeLog, EpisodeSpec, Outcome, StepRecord};
pub use export::{export, load_logs, report_csv, report_table};
pub use matrix::{episode_seed, run_matrix, Condition, EpisodeKey, Matrix, TaskEntry};
pub use render::{render_ascii, render_log, render_pgm, MapView};
pub use report::{aggregate, Percent, Report};
