//! Result formatting shared by every subcommand.

use maxdensity::ingest::format_scaled;
use maxdensity::{CandidateEvent, Density, Segment, Solution};
use serde::Serialize;

/// Decimal scales of the values and widths the solver saw.
#[derive(Debug, Clone, Copy)]
pub struct Scales {
    pub value_digits: u32,
    pub width_digits: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Line {
    pub i: usize,
    pub j: usize,
    pub width: String,
    pub num: String,
    pub den: String,
    pub decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<&'static str>,
}

impl Line {
    pub fn new(segment: Segment, density: Density, scales: Scales) -> Self {
        let den = format_scaled(density.den, scales.width_digits);
        Self {
            i: segment.i,
            j: segment.j,
            width: den.clone(),
            num: format_scaled(density.num, scales.value_digits),
            den,
            decimal: decimal(density, scales),
            source: None,
        }
    }

    pub fn from_solution(best: &Solution, scales: Scales) -> Self {
        Self::new(best.segment, best.density, scales)
    }

    pub fn from_event(event: &CandidateEvent, scales: Scales) -> Self {
        Self {
            source: Some(event.source.as_str()),
            ..Self::new(event.segment, event.density, scales)
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "{}\t{}\t{}\t{}/{}\t{}",
            self.i, self.j, self.width, self.num, self.den, self.decimal
        );
        if let Some(src) = self.source {
            s.push('\t');
            s.push_str(src);
        }
        s
    }
}

/// `num / den` in unscaled units, rounded half away from zero to 9 places.
pub fn decimal(d: Density, scales: Scales) -> String {
    const PLACES: u32 = 9;
    let num = d.num as i128 * 10i128.pow(scales.width_digits + PLACES);
    let den = d.den as i128 * 10i128.pow(scales.value_digits);
    let q = num.abs() / den;
    let rem = num.abs() % den;
    let q = if 2 * rem >= den { q + 1 } else { q };
    let sign = if num < 0 && q != 0 { "-" } else { "" };
    let unit = 10i128.pow(PLACES);
    format!("{sign}{}.{:09}", q / unit, q % unit)
}
