//! Benchmark instances: generated DNA pairs and the two-line instance file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{McspError, Result};
use crate::seeding::stream;

pub const DNA: &[u8; 4] = b"ACGT";

/// A related pair of strings with a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub x: Vec<u8>,
    pub y: Vec<u8>,
}

impl Instance {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Length classes of the random DNA benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthGroup {
    /// 100 to 200 bases.
    Short,
    /// 201 to 400 bases.
    Medium,
    /// 401 to 600 bases.
    Long,
    Custom {
        min: usize,
        max: usize,
    },
}

impl LengthGroup {
    pub fn range(self) -> (usize, usize) {
        match self {
            LengthGroup::Short => (100, 200),
            LengthGroup::Medium => (201, 400),
            LengthGroup::Long => (401, 600),
            LengthGroup::Custom { min, max } => (min, max),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "1" | "short" | "group1" => Some(LengthGroup::Short),
            "2" | "medium" | "group2" => Some(LengthGroup::Medium),
            "3" | "long" | "group3" => Some(LengthGroup::Long),
            _ => {
                let (min, max) = s.split_once('-')?;
                let (min, max) = (min.trim().parse().ok()?, max.trim().parse().ok()?);
                (min <= max && min > 0).then_some(LengthGroup::Custom { min, max })
            }
        }
    }
}

/// Recipe for one generated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub id: String,
    pub length: usize,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<Instance> {
        let (x, y) = generate_instance(self.length, self.seed)?;
        Ok(Instance {
            id: self.id.clone(),
            x,
            y,
        })
    }
}

/// Uniform random DNA string and a seeded shuffle of it.
pub fn generate_instance(length: usize, seed: u64) -> Result<(Vec<u8>, Vec<u8>)> {
    if length == 0 {
        return Err(McspError::InvalidParam {
            name: "length",
            reason: "instances must be non-empty".into(),
        });
    }
    let mut rng = stream(seed, &[0]);
    let x: Vec<u8> = (0..length).map(|_| DNA[rng.random_range(0..4)]).collect();
    let y = shuffled(&x, seed);
    Ok((x, y))
}

/// Fisher-Yates shuffle of `s` under `seed`.
pub fn shuffled(s: &[u8], seed: u64) -> Vec<u8> {
    let mut y = s.to_vec();
    y.shuffle(&mut stream(seed, &[1]));
    y
}

/// `count` instances with lengths drawn uniformly from `group`.
pub fn generate_group(
    group: LengthGroup,
    count: usize,
    seed: u64,
    prefix: &str,
) -> Result<Vec<Instance>> {
    let (min, max) = group.range();
    let mut rng = stream(seed, &[2]);
    (0..count)
        .map(|k| {
            InstanceSpec {
                id: format!("{prefix}{k:03}"),
                length: rng.random_range(min..=max),
                seed: crate::seeding::derive_seed(seed, &[3, k as u64]),
            }
            .generate()
        })
        .collect()
}

/// Writes `X` and `Y` on two newline-terminated lines.
pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&inst.x)?;
    f.write_all(b"\n")?;
    f.write_all(&inst.y)?;
    f.write_all(b"\n")?;
    Ok(())
}

/// Reads a two-line instance file; the id is the file stem.
pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_instance(&text, path, id)
}

pub fn parse_instance(text: &str, path: &Path, id: String) -> Result<Instance> {
    let err = |line: usize, msg: &str| McspError::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.to_string(),
    };
    let lines: Vec<&str> = text.lines().map(str::trim_end).collect();
    let content: Vec<(usize, &str)> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(k, l)| (k + 1, *l))
        .collect();
    if content.len() != 2 {
        return Err(err(
            content.get(2).map_or(lines.len().max(1), |c| c.0),
            "expected exactly two lines: X then Y",
        ));
    }
    let mut seqs = Vec::with_capacity(2);
    for &(line, s) in &content {
        if !s.bytes().all(|b| b.is_ascii_alphabetic()) {
            return Err(err(line, "sequences may only contain letters"));
        }
        seqs.push(s.to_ascii_uppercase().into_bytes());
    }
    let y = seqs.pop().unwrap();
    let x = seqs.pop().unwrap();
    Ok(Instance { id, x, y })
}

/// Expands glob patterns (or plain paths) into sorted instance files.
pub fn expand_patterns(patterns: &[String]) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for pattern in patterns {
        let matches = glob::glob(pattern).map_err(|e| McspError::BadValue {
            key: "instances".into(),
            value: format!("{pattern}: {e}"),
        })?;
        for entry in matches {
            let p = entry.map_err(|e| McspError::Io(e.into()))?;
            if p.is_file() {
                paths.push(p);
            }
        }
    }
    paths.sort();
    paths.dedup();
    Ok(paths)
}

pub fn load_instances(patterns: &[String]) -> Result<Vec<Instance>> {
    expand_patterns(patterns)?
        .iter()
        .map(|p| read_instance(p))
        .collect()
}
