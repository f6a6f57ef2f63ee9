//! Text formats: expressions, matrix files, network files, and rasters.

mod expr;
mod matrix;
mod network;
mod raster;

pub use expr::{parse_ratfunc, parse_ratfunc_at, parse_ratfunc_with, DEFAULT_VAR};
pub use matrix::{parse_matrix, parse_matrix_file, write_matrix, write_matrix_file, Entry, MatrixDocument};
pub use network::{parse_network, read_network_file};
pub use raster::{
    raster_from_csv, raster_to_csv, raster_to_pgm, read_raster_csv, write_raster, PgmWindow, RasterFormat, CSV_HEADER,
    DEFAULT_LEVELS,
};
