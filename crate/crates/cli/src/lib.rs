//! Harness around `slidewin-core`: stream files, replay with oracle checks,
//! record evaluation and scenario self-tests. The `slidewin` binary is a
//! thin command-line layer over these modules.

pub mod eval;
pub mod record;
pub mod replay;
pub mod scenario;
pub mod stream_file;

pub use eval::{summarize, Summary};
pub use record::{read_records, QueryRecord};
pub use replay::{run, run_records, GenericEstimator, RunConfig};
pub use scenario::{builtin_scenarios, read_manifest, selftest, GenSpec, Scenario};
pub use stream_file::StreamFile;
