//! Minimal FASTA reader for local gene sequence files.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use log::warn;

use super::dataset::{shuffled, Instance};
use crate::error::{McspError, Result};
use crate::seeding::derive_seed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    /// First word of the header line.
    pub id: String,
    pub seq: Vec<u8>,
}

pub fn load_fasta(path: &Path) -> Result<Vec<FastaRecord>> {
    let file = File::open(path)?;
    parse_fasta(BufReader::new(file), path)
}

/// Parses FASTA text. Sequence lines are concatenated and upper-cased;
/// blank lines and `;` comments are skipped.
pub fn parse_fasta<R: BufRead>(reader: R, path: &Path) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<FastaRecord> = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            let id = header
                .split_whitespace()
                .next()
                .map(str::to_string)
                .unwrap_or_else(|| format!("record{}", records.len() + 1));
            records.push(FastaRecord {
                id,
                seq: Vec::new(),
            });
            continue;
        }
        let Some(current) = records.last_mut() else {
            return Err(McspError::Parse {
                path: path.to_path_buf(),
                line: lineno,
                msg: "sequence data before the first '>' header".into(),
            });
        };
        if let Some(bad) = line
            .bytes()
            .find(|b| !b.is_ascii_alphabetic() && *b != b'*' && *b != b'-')
        {
            return Err(McspError::Parse {
                path: path.to_path_buf(),
                line: lineno,
                msg: format!("unexpected character {:?} in sequence", bad as char),
            });
        }
        current.seq.extend(
            line.bytes()
                .filter(u8::is_ascii_alphabetic)
                .map(|b| b.to_ascii_uppercase()),
        );
    }
    if records.is_empty() {
        warn!("{}: no FASTA records found", path.display());
    }
    Ok(records)
}

/// The first `limit` records whose length lies in `[min, max]`.
pub fn select_by_length(
    records: Vec<FastaRecord>,
    min: usize,
    max: usize,
    limit: Option<usize>,
) -> Vec<FastaRecord> {
    records
        .into_iter()
        .filter(|r| (min..=max).contains(&r.seq.len()))
        .take(limit.unwrap_or(usize::MAX))
        .collect()
}

/// Pairs each sequence with a seeded shuffle of itself.
pub fn instances_from_records(records: &[FastaRecord], seed: u64) -> Vec<Instance> {
    records
        .iter()
        .enumerate()
        .map(|(k, r)| Instance {
            id: r.id.clone(),
            x: r.seq.clone(),
            y: shuffled(&r.seq, derive_seed(seed, &[4, k as u64])),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::related;
    use std::io::Cursor;

    fn parse(text: &str) -> Result<Vec<FastaRecord>> {
        parse_fasta(Cursor::new(text), Path::new("mem.fa"))
    }

    #[test]
    fn single_record() {
        let seq = "ACGT".repeat(75);
        let text = format!(
            ">gene1 some description\n{}\n{}\n",
            &seq[..150],
            &seq[150..]
        );
        let recs = parse(&text).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].id, "gene1");
        assert_eq!(recs[0].seq.len(), 300);
    }

    #[test]
    fn lowercase_is_folded() {
        let recs = parse(">a\nacgtN\n>b\nTTgg\n").unwrap();
        assert_eq!(recs[0].seq, b"ACGTN");
        assert_eq!(recs[1].seq, b"TTGG");
    }

    #[test]
    fn empty_file_gives_no_records() {
        assert!(parse("").unwrap().is_empty());
    }

    #[test]
    fn malformed_reports_line() {
        let err = parse("\nACGT\n").unwrap_err();
        assert!(matches!(err, McspError::Parse { line: 2, .. }), "{err}");
        let err = parse(">x\nAC GT\nAC7\n").unwrap_err();
        assert!(matches!(err, McspError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn selection_and_pairing() {
        let recs = vec![
            FastaRecord {
                id: "a".into(),
                seq: vec![b'A'; 150],
            },
            FastaRecord {
                id: "b".into(),
                seq: b"ACGT".repeat(60),
            },
            FastaRecord {
                id: "c".into(),
                seq: b"TTGA".repeat(100),
            },
            FastaRecord {
                id: "d".into(),
                seq: b"GGCA".repeat(70),
            },
        ];
        let chosen = select_by_length(recs, 200, 600, Some(2));
        let ids: Vec<_> = chosen.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["b", "c"]);
        let insts = instances_from_records(&chosen, 9);
        assert!(insts.iter().all(|i| related(&i.x, &i.y)));
        assert_eq!(insts, instances_from_records(&chosen, 9));
    }
}
