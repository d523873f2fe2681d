//! Loading dated price series, aligning two markets on common dates, and
//! exporting symbol sequences as CSV.
//!
//! Input files hold `date,value` rows (ISO `YYYY-MM-DD` dates). A first row
//! whose second field is not a number is taken as a header.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use chrono::NaiveDate;

use crate::alphabet::{Alphabet, SymbolSequence};
use crate::error::{Error, Result};
use crate::estimators::CausalPair;
use crate::quantize::QuantizeRule;

/// A positive-valued series on strictly increasing calendar days.
#[derive(Debug, Clone, PartialEq)]
pub struct DatedSeries {
    points: Vec<(NaiveDate, f64)>,
}

impl DatedSeries {
    /// Sorts by date; identical duplicates collapse, conflicting ones are an error.
    pub fn new(points: Vec<(NaiveDate, f64)>) -> Result<Self> {
        let mut map: BTreeMap<NaiveDate, f64> = BTreeMap::new();
        for (i, (date, value)) in points.into_iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveValue { index: i, value });
            }
            if let Some(&first) = map.get(&date) {
                if first != value {
                    return Err(Error::ConflictingDuplicate { date: date.to_string(), first, second: value });
                }
            }
            map.insert(date, value);
        }
        Ok(Self { points: map.into_iter().collect() })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(NaiveDate, f64)] {
        &self.points
    }

    pub fn dates(&self) -> impl Iterator<Item = NaiveDate> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io.to_string()),
        other => Error::MalformedRow { line, message: format!("{other:?}") },
    }
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(r)
}

/// Parses `date,value` rows. Non-positive values are reported with their
/// line number as the position.
pub fn read_csv_series<R: Read>(r: R) -> Result<DatedSeries> {
    let mut points = Vec::new();
    let mut seen: BTreeMap<NaiveDate, (f64, usize)> = BTreeMap::new();
    for (k, rec) in reader(r).records().enumerate() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(k + 1, |p| p.line() as usize);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 2 {
            return Err(Error::MalformedRow {
                line,
                message: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        let value = match rec[1].parse::<f64>() {
            Ok(v) => v,
            Err(_) if k == 0 => continue,
            Err(_) => {
                return Err(Error::MalformedRow { line, message: format!("bad value {:?}", &rec[1]) })
            }
        };
        let date = NaiveDate::parse_from_str(&rec[0], "%Y-%m-%d")
            .map_err(|e| Error::MalformedRow { line, message: format!("bad date {:?}: {e}", &rec[0]) })?;
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveValue { index: line, value });
        }
        if let Some(&(first, _)) = seen.get(&date) {
            if first != value {
                return Err(Error::ConflictingDuplicate { date: date.to_string(), first, second: value });
            }
            continue;
        }
        seen.insert(date, (value, line));
        points.push((date, value));
    }
    DatedSeries::new(points)
}

pub fn load_csv_series(path: impl AsRef<Path>) -> Result<DatedSeries> {
    read_csv_series(std::fs::File::open(path)?)
}

/// Two series quantized on their common dates.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedPair {
    pub x: SymbolSequence,
    pub y: SymbolSequence,
    /// Date of the later day of each return pair, as seen by `x`.
    pub dates: Vec<NaiveDate>,
    pub dropped_a: usize,
    pub dropped_b: usize,
}

impl AlignedPair {
    pub fn pair(&self) -> Result<CausalPair> {
        CausalPair::new(self.x.clone(), self.y.clone())
    }
}

/// Intersects the date sets, computes returns on the common grid and
/// quantizes both. With `offset = k`, `x_j` is `a`'s return `j` and `y_j` is
/// `b`'s return `j + k` (so `k = 1` pairs `a` on one day with `b` on the
/// next common day).
pub fn align_series(a: &DatedSeries, b: &DatedSeries, rule: QuantizeRule, offset: usize) -> Result<AlignedPair> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("dated series"));
    }
    let bmap: BTreeMap<NaiveDate, f64> = b.points().iter().copied().collect();
    let common: Vec<(NaiveDate, f64, f64)> = a
        .points()
        .iter()
        .filter_map(|&(d, va)| bmap.get(&d).map(|&vb| (d, va, vb)))
        .collect();
    if common.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let va: Vec<f64> = common.iter().map(|c| c.1).collect();
    let vb: Vec<f64> = common.iter().map(|c| c.2).collect();
    let qa = rule.apply(&va)?;
    let qb = rule.apply(&vb)?;
    let returns = qa.len();
    if offset > returns {
        return Err(Error::SequenceTooShort { len: returns, needed: offset });
    }
    let len = returns - offset;
    Ok(AlignedPair {
        x: qa.slice(0, len),
        y: qb.slice(offset, offset + len),
        dates: common[1..=len].iter().map(|c| c.0).collect(),
        dropped_a: a.len() - common.len(),
        dropped_b: b.len() - common.len(),
    })
}

/// One symbol per row under a `symbol` header.
pub fn write_symbols<W: Write>(w: W, seq: &SymbolSequence) -> Result<()> {
    let mut out = std::io::BufWriter::new(w);
    writeln!(out, "symbol")?;
    for s in seq.as_slice() {
        writeln!(out, "{s}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_symbol_csv(path: impl AsRef<Path>, seq: &SymbolSequence) -> Result<()> {
    write_symbols(std::fs::File::create(path)?, seq)
}

/// Reads a single-column symbol file. Without an explicit alphabet the
/// smallest one holding every symbol is used.
pub fn read_symbols<R: Read>(r: R, alphabet: Option<Alphabet>) -> Result<SymbolSequence> {
    let mut data = Vec::new();
    for (k, rec) in reader(r).records().enumerate() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(k + 1, |p| p.line() as usize);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 1 {
            return Err(Error::MalformedRow { line, message: format!("expected 1 field, found {}", rec.len()) });
        }
        match rec[0].parse::<usize>() {
            Ok(s) => data.push(s),
            Err(_) if k == 0 => continue,
            Err(_) => return Err(Error::MalformedRow { line, message: format!("bad symbol {:?}", &rec[0]) }),
        }
    }
    match alphabet {
        Some(a) => SymbolSequence::new(a, data),
        None => Ok(SymbolSequence::infer(data)),
    }
}

pub fn read_symbol_csv(path: impl AsRef<Path>, alphabet: Option<Alphabet>) -> Result<SymbolSequence> {
    read_symbols(std::fs::File::open(path)?, alphabet)
}

/// `date,x,y` rows of an aligned pair, for auditing the quantization.
pub fn write_aligned<W: Write>(w: W, aligned: &AlignedPair) -> Result<()> {
    let mut out = std::io::BufWriter::new(w);
    writeln!(out, "date,x,y")?;
    for ((d, x), y) in aligned.dates.iter().zip(aligned.x.as_slice()).zip(aligned.y.as_slice()) {
        writeln!(out, "{d},{x},{y}")?;
    }
    out.flush()?;
    Ok(())
}
