//! Configuration files, snapshots and the diagnostics CSV.

mod config;
mod csv;
mod snapshot;

pub use config::{parse_config, serialize_config, Config, Init};
pub use csv::{append_csv, csv_header, csv_row, read_csv};
pub use snapshot::{decode_snapshot, encode_snapshot, read_snapshot, write_snapshot};
