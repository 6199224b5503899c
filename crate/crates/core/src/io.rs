//! Reading and writing problems as JSON documents or CSV visit logs.
//!
//! A visit log lists `holder,museum` pairs and cannot show a museum nobody
//! visited or a holder who visited nothing, so CSV input always comes with
//! explicit museum and holder lists and a price.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{Label, Problem};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// Guesses the format from a file extension, defaulting to JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Parse(format!("unknown format `{other}` (expected json or csv)"))),
        }
    }
}

/// Museums, holders and price that a visit log is read against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvFrame {
    pub museums: Vec<Label>,
    pub holders: Vec<Label>,
    pub price: Rational,
}

/// Parses a label list such as `1,2,5` or `1-4` or `1-3,7`.
pub fn parse_labels(text: &str) -> Result<Vec<Label>> {
    let bad = |part: &str| Error::Parse(format!("bad label `{part}` in `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-').or_else(|| part.split_once("..")) {
            Some((lo, hi)) => {
                let lo: Label = lo.trim().parse().map_err(|_| bad(part))?;
                let hi: Label = hi.trim().trim_start_matches('.').parse().map_err(|_| bad(part))?;
                if lo > hi {
                    return Err(bad(part));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("empty label list `{text}`")));
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Problem> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_json(p: &Problem) -> String {
    serde_json::to_string_pretty(p).expect("problems always serialize")
}

/// Reads `holder,museum` rows. An optional header row is skipped, blank
/// lines are ignored and repeated pairs set the same bit.
pub fn parse_csv(input: impl Read, frame: &CsvFrame) -> Result<Problem> {
    let empty = Problem::new(
        frame.museums.clone(),
        frame.holders.clone(),
        frame.price.clone(),
        vec![vec![false; frame.museums.len()]; frame.holders.len()],
    )?;
    let mut entrance = empty.entrance().to_vec();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(input);
    for (k, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse(format!("line {}: expected `holder,museum`", k + 1)));
        }
        let (h, i) = (&record[0], &record[1]);
        let (holder, museum) = match (h.parse::<Label>(), i.parse::<Label>()) {
            (Ok(h), Ok(i)) => (h, i),
            _ if k == 0 => continue,
            _ => return Err(Error::Parse(format!("line {}: labels must be positive integers", k + 1))),
        };
        let a = empty.holder_index(holder).ok_or(Error::UnknownHolder(holder))?;
        let i = empty.museum_index(museum).ok_or(Error::UnknownMuseum(museum))?;
        entrance[a][i] = true;
    }
    empty.with_entrance(entrance)
}

/// Visit log of `p` with a header row, holders then museums ascending.
pub fn to_csv(p: &Problem) -> String {
    let mut out = String::from("holder,museum\n");
    for (a, row) in p.entrance().iter().enumerate() {
        for (i, &bit) in row.iter().enumerate() {
            if bit {
                out.push_str(&format!("{},{}\n", p.holders()[a], p.museums()[i]));
            }
        }
    }
    out
}

/// Loads a problem from `path` (`-` reads standard input).
///
/// JSON documents carry their own frame; any explicit list or price given
/// alongside must agree with it. CSV needs all three.
pub fn ingest(
    path: &Path,
    format: Format,
    museums: Option<Vec<Label>>,
    holders: Option<Vec<Label>>,
    price: Option<Rational>,
) -> Result<Problem> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(path)?
    };
    match format {
        Format::Json => {
            let p = parse_json(&text)?;
            let sorted = |mut v: Vec<Label>| {
                v.sort_unstable();
                v
            };
            if museums.is_some_and(|m| sorted(m) != p.museums())
                || holders.is_some_and(|h| sorted(h) != p.holders())
                || price.is_some_and(|pr| &pr != p.price())
            {
                return Err(Error::FrameMismatch("explicit museums, holders or price disagree with the document".into()));
            }
            Ok(p)
        }
        Format::Csv => {
            let missing = |what: &str| Error::Parse(format!("csv input needs an explicit {what}"));
            let frame = CsvFrame {
                museums: museums.ok_or_else(|| missing("museum list"))?,
                holders: holders.ok_or_else(|| missing("holder list"))?,
                price: price.ok_or_else(|| missing("price"))?,
            };
            parse_csv(text.as_bytes(), &frame)
        }
    }
}
