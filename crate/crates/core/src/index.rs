//! A single-file annotation index: one JSON header line followed by one JSON
//! record per image, sorted by path.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annotator::AnnotationReport;
use crate::error::{Error, Result};
use crate::infometrics::InfoDiagnostics;
use crate::ingest::load_image;
use crate::palette::Palette;
use crate::report::annotate_image;
use crate::sampler::SampleSpec;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "emopal-index";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexHeader {
    pub format: String,
    pub format_version: u32,
    pub palette_id: String,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexRecord {
    pub image_path: String,
    pub image_hash: String,
    pub N: usize,
    pub annotation: AnnotationReport,
    pub diagnostics: InfoDiagnostics,
    pub palette_id: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildSummary {
    pub records: usize,
    pub skipped: Vec<Skipped>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryHit {
    pub image_path: String,
    pub count: u64,
    pub n: usize,
    pub share: f64,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Annotate every decodable image directly inside `dir` and write the index to `out`.
pub fn build_index(dir: &Path, palette: &Palette, spec: &SampleSpec, k: usize, out: &Path) -> Result<BuildSummary> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    if files.is_empty() {
        return Err(Error::Index(format!("{}: no files to index", dir.display())));
    }
    files.sort();

    let created_at = now();
    let results: Vec<std::result::Result<IndexRecord, Skipped>> = files
        .par_iter()
        .map(|path| {
            let display = path.to_string_lossy().into_owned();
            let skip = |e: Error| Skipped { path: display.clone(), reason: e.to_string() };
            let loaded = load_image(path).map_err(skip)?;
            let a = annotate_image(&loaded.pixels, palette, spec, k).map_err(skip)?;
            Ok(IndexRecord {
                image_path: display.clone(),
                image_hash: loaded.hash,
                N: loaded.pixels.len(),
                annotation: a.report,
                diagnostics: a.diagnostics,
                palette_id: palette.id().to_string(),
                created_at,
            })
        })
        .collect();

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(s) => skipped.push(s),
        }
    }
    if records.is_empty() {
        return Err(Error::Index(format!("{}: no decodable images", dir.display())));
    }

    let file = fs::File::create(out).map_err(|e| Error::io(out, e))?;
    let mut w = BufWriter::new(file);
    let header = IndexHeader { format: MAGIC.into(), format_version: FORMAT_VERSION, palette_id: palette.id().into() };
    let write_err = |e| Error::io(out, e);
    writeln!(w, "{}", serde_json::to_string(&header)?).map_err(write_err)?;
    for rec in &records {
        writeln!(w, "{}", serde_json::to_string(rec)?).map_err(write_err)?;
    }
    w.flush().map_err(write_err)?;

    Ok(BuildSummary { records: records.len(), skipped })
}

pub fn load_index(path: &Path) -> Result<(IndexHeader, Vec<IndexRecord>)> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = BufReader::new(file).lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Index(format!("{}: empty index", path.display())))?
        .map_err(|e| Error::io(path, e))?;
    let header: IndexHeader =
        serde_json::from_str(&first).map_err(|e| Error::Index(format!("{}: bad header: {e}", path.display())))?;
    if header.format != MAGIC || header.format_version != FORMAT_VERSION {
        return Err(Error::Index(format!(
            "{}: unsupported index {} v{}",
            path.display(),
            header.format,
            header.format_version
        )));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| Error::Index(format!("{}: record {}: {e}", path.display(), i + 1)))?;
        records.push(rec);
    }
    Ok((header, records))
}

/// Images annotated with `word`, by share of sampled pixels (descending), then path.
pub fn query_records(records: &[IndexRecord], word: &str, limit: usize) -> Vec<QueryHit> {
    let word = word.trim().to_lowercase();
    let mut hits: Vec<QueryHit> = records
        .iter()
        .filter_map(|r| {
            let count = *r.annotation.word_counts.get(&word)?;
            let n = r.annotation.n();
            (count > 0 && n > 0).then(|| QueryHit {
                image_path: r.image_path.clone(),
                count,
                n,
                share: count as f64 / n as f64,
            })
        })
        .collect();
    hits.sort_by(|a, b| b.share.total_cmp(&a.share).then_with(|| a.image_path.cmp(&b.image_path)));
    hits.truncate(limit);
    hits
}

pub fn query_index(path: &Path, word: &str, limit: usize) -> Result<Vec<QueryHit>> {
    if word.trim().is_empty() {
        return Err(Error::InvalidArgument("query word is empty".into()));
    }
    let (_, records) = load_index(path)?;
    Ok(query_records(&records, word, limit))
}
