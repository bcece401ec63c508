//! On-disk formats for sample batches.
//!
//! CSV: one comment line carrying the schema version and the ensemble
//! parameters, a header row `draw,x1..xn` (plus `alpha<k>_re,alpha<k>_im`
//! columns when coefficients are emitted), then one draw per row with sorted
//! eigenvalues.
//!
//! JSON lines: one self-describing record per draw.
//!
//! Numbers are written in the shortest form that round-trips, so equal
//! batches give byte-identical files.

use std::io::{BufRead, Write};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{Draw, EnsembleKind, EnsembleSpec, SampleBatch};
use crate::error::{Error, Result};
use crate::opuc::VerblunskySeq;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "jsonl" => Ok(Self::Jsonl),
            _ => Err(Error::Format(format!("unknown format `{s}` (csv | jsonl)"))),
        }
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circular" => Ok(Self::Circular),
            "jacobi" => Ok(Self::Jacobi),
            _ => Err(Error::Format(format!("unknown ensemble `{s}` (circular | jacobi)"))),
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.kind() {
        csv::ErrorKind::Io(_) => Error::Io(e.to_string()),
        _ => Error::Format(e.to_string()),
    }
}

fn header_line(batch: &SampleBatch) -> String {
    let s = &batch.spec;
    format!(
        "# beta-ensembles schema={} kind={} n={} beta={} a={} b={} seed={} stream_id={}",
        SCHEMA_VERSION,
        batch.kind.as_str(),
        s.n,
        s.beta,
        s.a,
        s.b,
        s.seed,
        s.stream_id
    )
}

fn parse_header_line(line: &str) -> Result<(EnsembleKind, EnsembleSpec)> {
    let body = line
        .strip_prefix("# beta-ensembles ")
        .ok_or_else(|| Error::Format("missing `# beta-ensembles` header line".into()))?;
    let mut kind = None;
    let mut spec = EnsembleSpec::circular(1, 1.0, 0);
    let bad = |k: &str, v: &str| Error::Format(format!("bad header value {k}={v}"));
    for tok in body.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("bad header token `{tok}`")))?;
        match k {
            "schema" => {
                let ver: u32 = v.parse().map_err(|_| bad(k, v))?;
                if ver != SCHEMA_VERSION {
                    return Err(Error::Format(format!("unsupported schema version {ver}")));
                }
            }
            "kind" => kind = Some(v.parse()?),
            "n" => spec.n = v.parse().map_err(|_| bad(k, v))?,
            "beta" => spec.beta = v.parse().map_err(|_| bad(k, v))?,
            "a" => spec.a = v.parse().map_err(|_| bad(k, v))?,
            "b" => spec.b = v.parse().map_err(|_| bad(k, v))?,
            "seed" => spec.seed = v.parse().map_err(|_| bad(k, v))?,
            "stream_id" => spec.stream_id = v.parse().map_err(|_| bad(k, v))?,
            _ => return Err(Error::Format(format!("unknown header key `{k}`"))),
        }
    }
    let kind = kind.ok_or_else(|| Error::Format("header has no kind".into()))?;
    Ok((kind, spec))
}

pub fn write_csv<W: Write>(batch: &SampleBatch, emit_alphas: bool, out: &mut W) -> Result<()> {
    writeln!(out, "{}", header_line(batch))?;
    let n = batch.spec.n;
    let m = match batch.kind {
        EnsembleKind::Circular => n,
        EnsembleKind::Jacobi => 2 * n,
    };
    let mut w = csv::Writer::from_writer(out);
    let mut head: Vec<String> = vec!["draw".into()];
    head.extend((1..=n).map(|j| format!("x{j}")));
    if emit_alphas {
        for k in 0..m {
            head.push(format!("alpha{k}_re"));
            head.push(format!("alpha{k}_im"));
        }
    }
    w.write_record(&head).map_err(csv_err)?;
    for (i, d) in batch.draws.iter().enumerate() {
        let mut row: Vec<String> = vec![i.to_string()];
        row.extend(d.eigenvalues.iter().map(|x| x.to_string()));
        if emit_alphas {
            let v = d
                .alphas
                .as_ref()
                .ok_or_else(|| Error::Format(format!("draw {i} carries no coefficients")))?;
            for a in v.alphas() {
                row.push(a.re.to_string());
                row.push(a.im.to_string());
            }
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: BufRead>(mut input: R) -> Result<SampleBatch> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let (kind, spec) = parse_header_line(first.trim_end())?;
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = r.headers().map_err(csv_err)?.clone();
    let n = headers.iter().filter(|h| h.starts_with('x')).count();
    if n != spec.n {
        return Err(Error::Format(format!("header says n={} but has {n} value columns", spec.n)));
    }
    let n_alpha = headers.iter().filter(|h| h.ends_with("_re")).count();
    let mut draws = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let vals: Vec<f64> = rec
            .iter()
            .skip(1)
            .map(|s| s.parse::<f64>().map_err(|_| Error::Format(format!("not a number: `{s}`"))))
            .collect::<Result<_>>()?;
        if vals.len() != n + 2 * n_alpha {
            return Err(Error::Format(format!("row has {} fields, expected {}", vals.len() + 1, n + 2 * n_alpha + 1)));
        }
        let alphas = if n_alpha > 0 {
            let a: Vec<Complex64> = vals[n..].chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            Some(VerblunskySeq::new(a)?)
        } else {
            None
        };
        draws.push(Draw {
            eigenvalues: vals[..n].to_vec(),
            alphas,
            weights: None,
        });
    }
    Ok(SampleBatch { kind, spec, draws })
}

/// One JSON-lines record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawRecord {
    pub schema_version: u32,
    pub kind: EnsembleKind,
    pub draw: usize,
    pub n: usize,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub seed: u64,
    pub stream_id: u64,
    pub eigenvalues: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

pub fn write_jsonl<W: Write>(batch: &SampleBatch, emit_alphas: bool, out: &mut W) -> Result<()> {
    let s = &batch.spec;
    for (i, d) in batch.draws.iter().enumerate() {
        let rec = DrawRecord {
            schema_version: SCHEMA_VERSION,
            kind: batch.kind,
            draw: i,
            n: s.n,
            beta: s.beta,
            a: s.a,
            b: s.b,
            seed: s.seed,
            stream_id: s.stream_id,
            eigenvalues: d.eigenvalues.clone(),
            alphas: if emit_alphas {
                d.alphas.as_ref().map(|v| v.alphas().iter().map(|a| [a.re, a.im]).collect())
            } else {
                None
            },
            weights: if emit_alphas { d.weights.clone() } else { None },
        };
        let line = serde_json::to_string(&rec).map_err(|e| Error::Format(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<SampleBatch> {
    let mut kind = None;
    let mut spec = None;
    let mut draws = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: DrawRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Format(format!("line {}: {e}", lineno + 1)))?;
        if rec.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!("unsupported schema version {}", rec.schema_version)));
        }
        let this = EnsembleSpec {
            n: rec.n,
            beta: rec.beta,
            a: rec.a,
            b: rec.b,
            seed: rec.seed,
            stream_id: rec.stream_id,
        };
        match spec {
            None => {
                spec = Some(this);
                kind = Some(rec.kind);
            }
            Some(s) if s != this || kind != Some(rec.kind) => {
                return Err(Error::Format(format!("line {}: parameters differ from line 1", lineno + 1)));
            }
            _ => {}
        }
        if rec.eigenvalues.len() != rec.n {
            return Err(Error::Format(format!("line {}: {} eigenvalues for n={}", lineno + 1, rec.eigenvalues.len(), rec.n)));
        }
        let alphas = match rec.alphas {
            Some(a) => Some(VerblunskySeq::new(a.iter().map(|p| Complex64::new(p[0], p[1])).collect())?),
            None => None,
        };
        draws.push(Draw {
            eigenvalues: rec.eigenvalues,
            alphas,
            weights: rec.weights,
        });
    }
    let (kind, spec) = match (kind, spec) {
        (Some(k), Some(s)) => (k, s),
        _ => return Err(Error::Format("no records".into())),
    };
    Ok(SampleBatch { kind, spec, draws })
}

pub fn write_batch<W: Write>(batch: &SampleBatch, format: OutputFormat, emit_alphas: bool, out: &mut W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(batch, emit_alphas, out),
        OutputFormat::Jsonl => write_jsonl(batch, emit_alphas, out),
    }
}

/// Reads either format, deciding by the first byte (`#` for CSV).
pub fn read_batch<R: BufRead>(mut input: R) -> Result<SampleBatch> {
    let first = input.fill_buf()?.first().copied();
    match first {
        Some(b'#') => read_csv(input),
        Some(b'{') => read_jsonl(input),
        _ => Err(Error::Format("neither a CSV batch nor JSON lines".into())),
    }
}
