//! Real-valued month coordinates for correlation time axes.
//!
//! A time label maps to a months-since-0000-01 coordinate: "YYYY-MM" (a
//! month-long observation window) sits at the month's center, while
//! "YYYY-MM-DD" (a capture date) sits at the day's fraction of its month.
//! Only offsets between coordinates ever matter, but the convention is
//! fixed here and echoed in serialized outputs.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};

/// Identifier of the coordinate convention, recorded alongside emitted
/// curves so plots are interpretable without this source.
pub const TIME_COORDINATE_ID: &str = "months-since-0000-01";

fn is_leap(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_month(year: i32, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap(year) => 29,
        2 => 28,
        _ => 0,
    }
}

/// Coordinate of the start of a calendar month.
pub fn month_start(year: i32, month: u32) -> f64 {
    year as f64 * 12.0 + (month - 1) as f64
}

/// Coordinate of the center of a month-long window.
pub fn month_center(year: i32, month: u32) -> f64 {
    month_start(year, month) + 0.5
}

/// Coordinate of a capture date: the day's fraction through its month.
pub fn date_coordinate(year: i32, month: u32, day: u32) -> Result<f64> {
    let dim = days_in_month(year, month);
    if dim == 0 || day < 1 || day > dim {
        return Err(Error::AddrParse(format!("{year:04}-{month:02}-{day:02}")));
    }
    Ok(month_start(year, month) + (day - 1) as f64 / dim as f64)
}

/// Parse "YYYY-MM" into (year, month).
pub fn parse_year_month(label: &str) -> Result<(i32, u32)> {
    let bad = || Error::AddrParse(String::from(label));
    let (y, m) = label.split_once('-').ok_or_else(bad)?;
    if y.len() != 4 || m.len() != 2 {
        return Err(bad());
    }
    let year: i32 = y.parse().map_err(|_| bad())?;
    let month: u32 = m.parse().map_err(|_| bad())?;
    if !(1..=12).contains(&month) {
        return Err(bad());
    }
    Ok((year, month))
}

/// Parse a window label: "YYYY-MM" maps to the month center, "YYYY-MM-DD"
/// to the date coordinate.
pub fn parse_label(label: &str) -> Result<f64> {
    let bad = || Error::AddrParse(String::from(label));
    match label.len() {
        7 => {
            let (year, month) = parse_year_month(label)?;
            Ok(month_center(year, month))
        }
        10 => {
            let (ym, d) = label.rsplit_once('-').ok_or_else(bad)?;
            let (year, month) = parse_year_month(ym)?;
            if d.len() != 2 {
                return Err(bad());
            }
            let day: u32 = d.parse().map_err(|_| bad())?;
            date_coordinate(year, month, day)
        }
        _ => Err(bad()),
    }
}

/// Render a "YYYY-MM" label.
pub fn month_label(year: i32, month: u32) -> String {
    format!("{year:04}-{month:02}")
}

/// The calendar month `offset` months after (year, month).
pub fn month_add(year: i32, month: u32, offset: u32) -> (i32, u32) {
    let zero_based = (month - 1) + offset;
    (year + (zero_based / 12) as i32, zero_based % 12 + 1)
}
