use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

fn is_stdio(path: Option<&Path>) -> bool {
    path.is_none_or(|p| p == Path::new("-"))
}

pub fn open_input(path: Option<&PathBuf>) -> Result<Box<dyn BufRead>> {
    let path = path.map(PathBuf::as_path);
    if is_stdio(path) {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let path = path.unwrap();
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::with_capacity(1 << 16, file)))
}

pub fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    let path = path.map(PathBuf::as_path);
    if is_stdio(path) {
        return Ok(Box::new(BufWriter::new(io::stdout())));
    }
    create(path.unwrap())
}

pub fn create(path: &Path) -> Result<Box<dyn Write>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(Box::new(BufWriter::new(file)))
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}
