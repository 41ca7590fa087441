pub mod json;
pub mod lpcode;
pub mod text;

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(e).in_file(path))
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::Io(e).in_file(path))
}

/// Reads `path` and parses it, attaching the path to any error.
pub fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    parse(&read_text(path)?).map_err(|e| e.in_file(path))
}
