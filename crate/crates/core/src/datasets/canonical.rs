//! The canonical recording CSV: the single ingestion boundary of the
//! pipeline.
//!
//! ```text
//! t,ax,ay,az,gx,gy,gz,activity,head_movement,location,accel_unit
//! 0,0.01,0.02,0.99,0.1,0,0,walking,slight,head,g
//! ```

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::labels::{ActivityLabel, HeadMovement};
use crate::error::{Error, Result};
use crate::signal::{AccelUnit, RawRecording, SensorLocation};

pub const CANONICAL_HEADER: [&str; 11] = [
    "t",
    "ax",
    "ay",
    "az",
    "gx",
    "gy",
    "gz",
    "activity",
    "head_movement",
    "location",
    "accel_unit",
];

fn parse_activity(s: &str) -> Result<Option<ActivityLabel>> {
    match s.trim() {
        "walking" => Ok(Some(ActivityLabel::Walking)),
        "upstairs" => Ok(Some(ActivityLabel::Upstairs)),
        "standing" => Ok(Some(ActivityLabel::Standing)),
        "jogging" => Ok(Some(ActivityLabel::Jogging)),
        "other" => Ok(None),
        other => Err(Error::Label(format!("unknown activity {other:?}"))),
    }
}

/// Rate implied by the median spacing of the timestamps.
pub(crate) fn infer_rate(timestamps: &[f64]) -> Result<f64> {
    let mut gaps: Vec<f64> = timestamps
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|g| *g > 0.0)
        .collect();
    if gaps.is_empty() {
        return Err(Error::Data(
            "cannot infer a sampling rate from fewer than two distinct timestamps".into(),
        ));
    }
    gaps.sort_by(f64::total_cmp);
    let rate = 1.0 / gaps[gaps.len() / 2];
    // snap to 1e-6 Hz so that float noise in the timestamps does not leak
    Ok((rate * 1e6).round() / 1e6)
}

/// Parse a canonical recording file. Rows are kept in file order; the
/// sampling rate is inferred from the median timestamp spacing.
pub fn load_canonical(path: &Path) -> Result<RawRecording> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?
        .clone();
    let mut col = [0usize; 11];
    for (slot, name) in col.iter_mut().zip(CANONICAL_HEADER) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Schema(format!("{}: missing column {name:?}", path.display())))?;
    }

    let mut ts = Vec::new();
    let mut accel = Vec::new();
    let mut gyro = Vec::new();
    let mut activity = Vec::new();
    let mut head = Vec::new();
    let mut location: Option<SensorLocation> = None;
    let mut unit: Option<AccelUnit> = None;

    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        let field = |i: usize| record.get(col[i]).unwrap_or("");
        let num = |i: usize| -> Result<f64> {
            field(i).parse::<f64>().map_err(|_| {
                Error::Data(format!(
                    "{}: row {}: column {} is not a number: {:?}",
                    path.display(),
                    row + 1,
                    CANONICAL_HEADER[i],
                    field(i)
                ))
            })
        };
        ts.push(num(0)?);
        accel.push([num(1)?, num(2)?, num(3)?]);
        gyro.push([num(4)?, num(5)?, num(6)?]);
        activity.push(parse_activity(field(7))?);
        head.push(field(8).parse::<HeadMovement>()?);

        let loc: SensorLocation = field(9).parse()?;
        let u: AccelUnit = field(10).parse()?;
        if *location.get_or_insert(loc) != loc || *unit.get_or_insert(u) != u {
            return Err(Error::Data(format!(
                "{}: row {}: location and accel_unit must be constant",
                path.display(),
                row + 1
            )));
        }
    }
    let (Some(location), Some(unit)) = (location, unit) else {
        return Err(Error::Data(format!("{}: no data rows", path.display())));
    };
    if let Some(i) = ts.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::Data(format!(
            "{}: timestamps decrease at row {}",
            path.display(),
            i + 2
        )));
    }
    let rate = infer_rate(&ts)?;
    RawRecording::new(ts, accel, unit, gyro, rate, location)?
        .with_activity(activity)?
        .with_head_movement(head)
}

/// Write a recording in canonical form. Missing annotations are written as
/// `other` / `none`.
pub fn write_canonical(recording: &RawRecording, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    writeln!(out, "{}", CANONICAL_HEADER.join(",")).map_err(io)?;
    for i in 0..recording.len() {
        let [ax, ay, az] = recording.accel()[i];
        let [gx, gy, gz] = recording.gyro()[i];
        let activity = recording
            .activity()
            .and_then(|a| a[i])
            .map_or("other", ActivityLabel::as_str);
        let head = recording.head_movement().map_or(HeadMovement::None, |h| h[i]);
        writeln!(
            out,
            "{},{ax},{ay},{az},{gx},{gy},{gz},{activity},{head},{},{}",
            recording.timestamps()[i],
            recording.location(),
            recording.accel_unit()
        )
        .map_err(io)?;
    }
    out.flush().map_err(io)
}
