//! Text input formats: value/width pairs, FASTA (GC indicator) and run-length
//! records.
//!
//! Decimal values are turned into integers by a power-of-ten scale chosen per
//! file: the smallest one covering every fractional digit seen, at most six.
//! Values and widths carry separate scales; densities compare the same way
//! under any positive rescaling, so only widths and the width bounds need to
//! agree on a scale.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequence::{NumberPair, MAX_MAGNITUDE};
use crate::sparse::{Run, RunLengthSequence};

/// Most fractional digits accepted in a decimal.
pub const MAX_FRACTION_DIGITS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    Pairs,
    Fasta,
    Rle,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pairs" => Ok(Self::Pairs),
            "fasta" => Ok(Self::Fasta),
            "rle" => Ok(Self::Rle),
            other => Err(format!(
                "unknown format '{other}' (expected pairs, fasta or rle)"
            )),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pairs => "pairs",
            Self::Fasta => "fasta",
            Self::Rle => "rle",
        })
    }
}

/// A fixed-point decimal `mantissa / 10^digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decimal {
    pub mantissa: i64,
    pub digits: u32,
}

impl Decimal {
    /// Value scaled to `10^digits`, or `None` if that loses precision or
    /// overflows.
    pub fn scaled(self, digits: u32) -> Option<i64> {
        if digits < self.digits {
            return None;
        }
        self.mantissa
            .checked_mul(10i64.checked_pow(digits - self.digits)?)
    }
}

impl FromStr for Decimal {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || format!("malformed number '{s}'");
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() as u32 > MAX_FRACTION_DIGITS {
            return Err(format!(
                "'{s}' has more than {MAX_FRACTION_DIGITS} fractional digits"
            ));
        }
        let mut mantissa: i64 = 0;
        for b in int.bytes().chain(frac.bytes()) {
            mantissa = mantissa
                .checked_mul(10)
                .and_then(|m| m.checked_add((b - b'0') as i64))
                .ok_or_else(|| format!("'{s}' is too large"))?;
        }
        Ok(Decimal {
            mantissa: if negative { -mantissa } else { mantissa },
            digits: frac.len() as u32,
        })
    }
}

/// Writes `value / 10^digits` in plain decimal notation without trailing zeros.
pub fn format_scaled(value: i64, digits: u32) -> String {
    let scale = 10i128.pow(digits);
    let v = value as i128;
    let sign = if v < 0 { "-" } else { "" };
    let int = v.abs() / scale;
    let frac = v.abs() % scale;
    if frac == 0 {
        format!("{sign}{int}")
    } else {
        let f = format!("{frac:0width$}", width = digits as usize);
        format!("{sign}{int}.{}", f.trim_end_matches('0'))
    }
}

/// Pairs with their decimal scales.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPairs {
    pub pairs: Vec<NumberPair>,
    /// Values are scaled by `10^value_digits`.
    pub value_digits: u32,
    /// Widths are scaled by `10^width_digits`.
    pub width_digits: u32,
}

impl ScaledPairs {
    /// Raises the width scale to `10^digits`; widths only grow.
    pub fn rescale_widths(&mut self, digits: u32) -> Result<()> {
        if digits <= self.width_digits {
            return Ok(());
        }
        let factor = 10i64.pow(digits - self.width_digits);
        for (k, p) in self.pairs.iter_mut().enumerate() {
            p.w =
                p.w.checked_mul(factor)
                    .filter(|w| *w <= MAX_MAGNITUDE)
                    .ok_or(Error::OutOfRange { index: k + 1 })?;
        }
        self.width_digits = digits;
        Ok(())
    }
}

fn is_skipped(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn split_record(line: &str) -> Vec<&str> {
    line.split(|c: char| c == '\t' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .collect()
}

fn parse_decimal(field: &str, line: usize) -> Result<Decimal> {
    field.parse().map_err(|e: String| Error::parse(line, e))
}

/// Parses `a<TAB>w` records (`w` defaults to 1). Lines starting with `#` and
/// blank lines are skipped.
pub fn parse_pairs(text: &str) -> Result<ScaledPairs> {
    let mut raw = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        if is_skipped(line) {
            continue;
        }
        let fields = split_record(line);
        let (a, w) = match fields.as_slice() {
            [a] => (
                parse_decimal(a, line_no)?,
                Decimal {
                    mantissa: 1,
                    digits: 0,
                },
            ),
            [a, w] => (parse_decimal(a, line_no)?, parse_decimal(w, line_no)?),
            _ => return Err(Error::parse(line_no, "expected 'a' or 'a<TAB>w'")),
        };
        if w.mantissa <= 0 {
            return Err(Error::parse(line_no, "width must be positive"));
        }
        raw.push((line_no, a, w));
    }
    let value_digits = raw.iter().map(|(_, a, _)| a.digits).max().unwrap_or(0);
    let width_digits = raw.iter().map(|(_, _, w)| w.digits).max().unwrap_or(0);
    let pairs = raw
        .into_iter()
        .map(|(line_no, a, w)| scale_pair(a, w, value_digits, width_digits, line_no))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScaledPairs {
        pairs,
        value_digits,
        width_digits,
    })
}

fn scale_pair(
    a: Decimal,
    w: Decimal,
    value_digits: u32,
    width_digits: u32,
    line: usize,
) -> Result<NumberPair> {
    let out_of_range = || Error::parse(line, "value outside the supported range");
    let a = a.scaled(value_digits).ok_or_else(out_of_range)?;
    let w = w.scaled(width_digits).ok_or_else(out_of_range)?;
    if a.abs() > MAX_MAGNITUDE || w > MAX_MAGNITUDE {
        return Err(out_of_range());
    }
    Ok(NumberPair::new(a, w))
}

/// Parses one pairs-format line at a fixed scale, for streaming input.
/// Returns `Ok(None)` for comment and blank lines.
pub fn parse_pair_line(
    line: &str,
    line_no: usize,
    value_digits: u32,
    width_digits: u32,
) -> Result<Option<NumberPair>> {
    if is_skipped(line) {
        return Ok(None);
    }
    let fields = split_record(line);
    let (a, w) = match fields.as_slice() {
        [a] => (
            parse_decimal(a, line_no)?,
            Decimal {
                mantissa: 1,
                digits: 0,
            },
        ),
        [a, w] => (parse_decimal(a, line_no)?, parse_decimal(w, line_no)?),
        _ => return Err(Error::parse(line_no, "expected 'a' or 'a<TAB>w'")),
    };
    if w.mantissa <= 0 {
        return Err(Error::parse(line_no, "width must be positive"));
    }
    if a.digits > value_digits || w.digits > width_digits {
        return Err(Error::parse(
            line_no,
            "more fractional digits than the stream scale",
        ));
    }
    scale_pair(a, w, value_digits, width_digits, line_no).map(Some)
}

/// Maps one nucleotide code to its GC indicator. The flag marks an
/// ambiguity code other than S or W.
pub fn gc_indicator(base: u8) -> Option<(i64, bool)> {
    match base.to_ascii_uppercase() {
        b'G' | b'C' | b'S' => Some((1, false)),
        b'A' | b'T' | b'U' | b'W' => Some((0, false)),
        b'R' | b'Y' | b'K' | b'M' | b'B' | b'D' | b'H' | b'V' | b'N' => Some((0, true)),
        _ => None,
    }
}

/// One FASTA record's span in the concatenated sequence (1-based, inclusive;
/// `end < start` for an empty record).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

/// GC indicator track of a FASTA file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GcTrack {
    pub pairs: Vec<NumberPair>,
    pub records: Vec<FastaRecord>,
    /// Number of ambiguity codes mapped to 0.
    pub ambiguous: usize,
}

/// Line-at-a-time FASTA decoder producing unit-width GC indicators.
#[derive(Debug, Clone, Default)]
pub struct GcDecoder {
    records: Vec<FastaRecord>,
    bases: usize,
    ambiguous: usize,
}

impl GcDecoder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Decodes one line, passing each base's pair to `sink`.
    pub fn feed_line(
        &mut self,
        line: &str,
        line_no: usize,
        mut sink: impl FnMut(NumberPair),
    ) -> Result<()> {
        let line = line.trim_end_matches(['\r', '\n']);
        if let Some(header) = line.strip_prefix('>') {
            let name = header.split_whitespace().next().unwrap_or("").to_string();
            self.records.push(FastaRecord {
                name,
                start: self.bases + 1,
                end: self.bases,
            });
            return Ok(());
        }
        if line.starts_with(';') {
            return Ok(());
        }
        for (col, byte) in line.bytes().enumerate() {
            if byte.is_ascii_whitespace() {
                continue;
            }
            let (a, ambiguous) = gc_indicator(byte).ok_or_else(|| {
                Error::parse(
                    line_no,
                    format!(
                        "column {}: '{}' is not a nucleotide code",
                        col + 1,
                        byte.escape_ascii()
                    ),
                )
            })?;
            if self.records.is_empty() {
                self.records.push(FastaRecord {
                    name: String::new(),
                    start: 1,
                    end: 0,
                });
            }
            self.bases += 1;
            self.ambiguous += ambiguous as usize;
            self.records.last_mut().unwrap().end = self.bases;
            sink(NumberPair::unit(a));
        }
        Ok(())
    }

    pub fn records(&self) -> &[FastaRecord] {
        &self.records
    }

    pub fn ambiguous(&self) -> usize {
        self.ambiguous
    }

    pub fn bases(&self) -> usize {
        self.bases
    }
}

/// Parses FASTA text into a GC indicator track; records are concatenated in
/// file order.
pub fn parse_fasta_gc(text: &str) -> Result<GcTrack> {
    let mut decoder = GcDecoder::new();
    let mut pairs = Vec::new();
    for (k, line) in text.lines().enumerate() {
        decoder.feed_line(line, k + 1, |p| pairs.push(p))?;
    }
    Ok(GcTrack {
        pairs,
        records: decoder.records,
        ambiguous: decoder.ambiguous,
    })
}

/// Run-length records with their value scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRle {
    pub rls: RunLengthSequence,
    pub value_digits: u32,
}

/// Parses `a'<TAB>n_k` records with strictly increasing cumulative ends.
pub fn parse_rle(text: &str) -> Result<ScaledRle> {
    let mut raw = Vec::new();
    let mut prev_end = 0usize;
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        if is_skipped(line) {
            continue;
        }
        let fields = split_record(line);
        let [value, end] = fields.as_slice() else {
            return Err(Error::parse(line_no, "expected 'value<TAB>end'"));
        };
        let value = parse_decimal(value, line_no)?;
        let end: usize = end
            .parse()
            .map_err(|_| Error::parse(line_no, format!("malformed run end '{end}'")))?;
        if end <= prev_end {
            return Err(Error::parse(
                line_no,
                format!("run end {end} does not exceed previous end {prev_end}"),
            ));
        }
        prev_end = end;
        raw.push((line_no, value, end));
    }
    if raw.is_empty() {
        return Err(Error::EmptySequence);
    }
    let value_digits = raw.iter().map(|(_, v, _)| v.digits).max().unwrap_or(0);
    let mut runs = Vec::with_capacity(raw.len());
    for (line_no, v, end) in raw {
        let value = v
            .scaled(value_digits)
            .filter(|v| v.abs() <= MAX_MAGNITUDE)
            .ok_or_else(|| Error::parse(line_no, "value outside the supported range"))?;
        if end as u64 > MAX_MAGNITUDE as u64 {
            return Err(Error::parse(line_no, "run end outside the supported range"));
        }
        runs.push(Run { value, end });
    }
    Ok(ScaledRle {
        rls: RunLengthSequence::new(runs)?,
        value_digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(p: &[NumberPair]) -> Vec<i64> {
        p.iter().map(|p| p.a).collect()
    }

    #[test]
    fn pairs_examples() {
        let s = parse_pairs("1\t1\n0\t1\n").unwrap();
        assert_eq!(s.pairs, vec![NumberPair::new(1, 1), NumberPair::new(0, 1)]);
        assert_eq!((s.value_digits, s.width_digits), (0, 0));

        let s = parse_pairs("0.5\n").unwrap();
        assert_eq!(s.pairs, vec![NumberPair::new(5, 1)]);
        assert_eq!(s.value_digits, 1);

        assert_eq!(
            parse_pairs("x\t1\n"),
            Err(Error::parse(1, "malformed number 'x'"))
        );
    }

    #[test]
    fn pairs_scale_is_global() {
        let s = parse_pairs("# header\n1.25\t2\n-3\t0.5\n\n2\n").unwrap();
        assert_eq!(s.value_digits, 2);
        assert_eq!(s.width_digits, 1);
        assert_eq!(
            s.pairs,
            vec![
                NumberPair::new(125, 20),
                NumberPair::new(-300, 5),
                NumberPair::new(200, 10)
            ]
        );
    }

    #[test]
    fn pairs_errors() {
        assert!(matches!(
            parse_pairs("1\t0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_pairs("1\n1\t-2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_pairs("1\t1\t1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_pairs("0.1234567\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_pairs("3000000000\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn rescale_widths() {
        let mut s = parse_pairs("1\t2\n").unwrap();
        s.rescale_widths(2).unwrap();
        assert_eq!(s.pairs[0].w, 200);
        assert_eq!(s.width_digits, 2);
    }

    #[test]
    fn decimal_parsing() {
        let d: Decimal = "-12.500".parse().unwrap();
        assert_eq!(
            d,
            Decimal {
                mantissa: -125,
                digits: 1
            }
        );
        assert_eq!(d.scaled(3), Some(-12500));
        assert_eq!(d.scaled(0), None);
        assert!(".".parse::<Decimal>().is_err());
        assert!("1e5".parse::<Decimal>().is_err());
        assert_eq!(
            ".5".parse::<Decimal>().unwrap(),
            Decimal {
                mantissa: 5,
                digits: 1
            }
        );
    }

    #[test]
    fn format_scaled_trims() {
        assert_eq!(format_scaled(2, 0), "2");
        assert_eq!(format_scaled(250, 2), "2.5");
        assert_eq!(format_scaled(-5, 1), "-0.5");
        assert_eq!(format_scaled(300, 2), "3");
    }

    #[test]
    fn fasta_examples() {
        assert_eq!(
            values(&parse_fasta_gc(">x\nGCAT\n").unwrap().pairs),
            [1, 1, 0, 0]
        );
        assert_eq!(
            values(&parse_fasta_gc(">x\nggcc\n").unwrap().pairs),
            [1, 1, 1, 1]
        );
        let t = parse_fasta_gc(">x\nNNNN\n").unwrap();
        assert_eq!(values(&t.pairs), [0, 0, 0, 0]);
        assert_eq!(t.ambiguous, 4);
        assert!(t.pairs.iter().all(|p| p.w == 1));
    }

    #[test]
    fn fasta_records_and_errors() {
        let t = parse_fasta_gc(">a desc\nGC\nsw\n>b\nAT\n>c\n").unwrap();
        assert_eq!(values(&t.pairs), [1, 1, 1, 0, 0, 0]);
        assert_eq!(
            t.records,
            vec![
                FastaRecord {
                    name: "a".into(),
                    start: 1,
                    end: 4
                },
                FastaRecord {
                    name: "b".into(),
                    start: 5,
                    end: 6
                },
                FastaRecord {
                    name: "c".into(),
                    start: 7,
                    end: 6
                },
            ]
        );
        let err = parse_fasta_gc(">x\nGC\nGX\n").unwrap_err();
        assert!(
            matches!(err, Error::Parse { line: 3, ref message } if message.contains("column 2"))
        );
    }

    #[test]
    fn rle_examples() {
        let r = parse_rle("1\t2\n0\t4\n").unwrap();
        assert_eq!(
            r.rls.runs(),
            &[Run { value: 1, end: 2 }, Run { value: 0, end: 4 }]
        );
        assert_eq!(r.rls.len(), 4);
        assert!(parse_rle("1\t3\n1\t5\n").is_ok());
        assert!(matches!(
            parse_rle("1\t4\n0\t4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_rle("# c\n1\t4\n0\tx\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn stream_line_parsing() {
        assert_eq!(parse_pair_line("# c", 1, 6, 6).unwrap(), None);
        assert_eq!(
            parse_pair_line("0.5\t2", 1, 6, 6).unwrap(),
            Some(NumberPair::new(500_000, 2_000_000))
        );
        assert!(parse_pair_line("0.5", 1, 0, 0).is_err());
    }
}
