//! Adapters for the public smartphone corpora in their published layouts.
//!
//! | corpus      | layout read                                                   | rate      | location      |
//! |-------------|---------------------------------------------------------------|-----------|---------------|
//! | MotionSense | `A_DeviceMotion_data/<act>_<trial>/sub_<n>.csv`               | 50 Hz     | pocket        |
//! | HHAR        | `Phones_accelerometer.csv` + `Phones_gyroscope.csv`           | 50–200 Hz | waist         |
//! | UCI HAR     | `{train,test}/Inertial Signals/*.txt`, `y_*.txt`, `subject_*` | 50 Hz     | waist         |
//! | Shoaib      | `Participant_<n>.csv`, five position blocks per row           | 50 Hz     | per position  |

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::canonical::infer_rate;
use super::labels::{harmonize_label, ActivityLabel};
use super::SourcedRecording;
use crate::error::{Error, Result};
use crate::signal::{AccelUnit, RawRecording, SensorLocation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PublicCorpus {
    MotionSense,
    Hhar,
    UciHar,
    Shoaib,
}

impl PublicCorpus {
    pub const ALL: [PublicCorpus; 4] = [
        PublicCorpus::MotionSense,
        PublicCorpus::Hhar,
        PublicCorpus::UciHar,
        PublicCorpus::Shoaib,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PublicCorpus::MotionSense => "motionsense",
            PublicCorpus::Hhar => "hhar",
            PublicCorpus::UciHar => "ucihar",
            PublicCorpus::Shoaib => "shoaib",
        }
    }

    /// Native sampling rate. HHAR varies by device; its rate is inferred per
    /// recording and this is only the lower bound.
    pub fn native_rate_hz(self) -> f64 {
        50.0
    }
}

impl FromStr for PublicCorpus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        PublicCorpus::ALL
            .into_iter()
            .find(|c| c.as_str() == key)
            .ok_or_else(|| Error::Config(format!("unknown corpus {s:?}")))
    }
}

/// Read every subject/session recording of `corpus` found under `root`.
pub fn adapt_public(corpus: PublicCorpus, root: &Path) -> Result<Vec<SourcedRecording>> {
    if !root.is_dir() {
        return Err(Error::CorpusFormat(format!("{} is not a directory", root.display())));
    }
    let out = match corpus {
        PublicCorpus::MotionSense => motionsense(root)?,
        PublicCorpus::Hhar => hhar(root)?,
        PublicCorpus::UciHar => uci_har(root)?,
        PublicCorpus::Shoaib => shoaib(root)?,
    };
    if out.is_empty() {
        return Err(Error::CorpusFormat(format!(
            "no {} recordings found under {}",
            corpus.as_str(),
            root.display()
        )));
    }
    Ok(out)
}

fn format_err(path: &Path, what: impl std::fmt::Display) -> Error {
    Error::CorpusFormat(format!("{}: {what}", path.display()))
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    entries.sort();
    Ok(entries)
}

fn uniform_times(n: usize, rate: f64) -> Vec<f64> {
    (0..n).map(|i| i as f64 / rate).collect()
}

fn parse_f64(path: &Path, s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format_err(path, format!("not a number: {s:?}")))
}

// ---------------------------------------------------------------------------
// MotionSense
// ---------------------------------------------------------------------------

fn motionsense(root: &Path) -> Result<Vec<SourcedRecording>> {
    let base = ["A_DeviceMotion_data", "motionsense/A_DeviceMotion_data"]
        .iter()
        .map(|d| root.join(d))
        .find(|p| p.is_dir())
        .unwrap_or_else(|| root.to_path_buf());
    let mut out = Vec::new();
    for trial in sorted_entries(&base)?.into_iter().filter(|p| p.is_dir()) {
        let name = trial
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        let Some((code, _)) = name.split_once('_') else {
            continue;
        };
        let label = harmonize_label(code);
        for file in sorted_entries(&trial)? {
            if file.extension().and_then(|e| e.to_str()) != Some("csv") {
                continue;
            }
            let rec = motionsense_file(&file, label)?;
            let subject = file.file_stem().and_then(|s| s.to_str()).unwrap_or("sub");
            out.push(SourcedRecording {
                origin: format!("motionsense/{name}/{subject}"),
                recording: rec,
            });
        }
    }
    Ok(out)
}

fn motionsense_file(path: &Path, label: Option<ActivityLabel>) -> Result<RawRecording> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| format_err(path, e))?;
    let headers = reader.headers().map_err(|e| format_err(path, e))?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| format_err(path, format!("missing column {name}")))
    };
    let grav = [find("gravity.x")?, find("gravity.y")?, find("gravity.z")?];
    let user = [
        find("userAcceleration.x")?,
        find("userAcceleration.y")?,
        find("userAcceleration.z")?,
    ];
    let rot = [
        find("rotationRate.x")?,
        find("rotationRate.y")?,
        find("rotationRate.z")?,
    ];
    let (mut accel, mut gyro) = (Vec::new(), Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| format_err(path, e))?;
        let v = |i: usize| parse_f64(path, record.get(i).unwrap_or(""));
        // total acceleration in g = gravity + user acceleration
        accel.push([
            v(grav[0])? + v(user[0])?,
            v(grav[1])? + v(user[1])?,
            v(grav[2])? + v(user[2])?,
        ]);
        gyro.push([v(rot[0])?, v(rot[1])?, v(rot[2])?]);
    }
    let n = accel.len();
    let rate = PublicCorpus::MotionSense.native_rate_hz();
    RawRecording::new(
        uniform_times(n, rate),
        accel,
        AccelUnit::G,
        gyro,
        rate,
        SensorLocation::Pocket,
    )?
    .with_activity(vec![label; n])
}

// ---------------------------------------------------------------------------
// HHAR
// ---------------------------------------------------------------------------

struct HharSample {
    time_ns: i64,
    xyz: [f64; 3],
    gt: String,
}

fn hhar_table(path: &Path) -> Result<BTreeMap<(String, String), Vec<HharSample>>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| format_err(path, e))?;
    let headers = reader.headers().map_err(|e| format_err(path, e))?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
            .ok_or_else(|| format_err(path, format!("missing column {name}")))
    };
    let cols = [
        find("Creation_Time")?,
        find("x")?,
        find("y")?,
        find("z")?,
        find("User")?,
        find("Device")?,
        find("gt")?,
    ];
    let mut groups: BTreeMap<(String, String), Vec<HharSample>> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| format_err(path, e))?;
        let f = |i: usize| record.get(cols[i]).unwrap_or("").trim();
        let time_ns = f(0)
            .parse::<i64>()
            .map_err(|_| format_err(path, format!("bad Creation_Time {:?}", f(0))))?;
        let xyz = [parse_f64(path, f(1))?, parse_f64(path, f(2))?, parse_f64(path, f(3))?];
        groups
            .entry((f(4).to_string(), f(5).to_string()))
            .or_default()
            .push(HharSample {
                time_ns,
                xyz,
                gt: f(6).to_string(),
            });
    }
    for samples in groups.values_mut() {
        samples.sort_by_key(|s| s.time_ns);
    }
    Ok(groups)
}

/// Linear interpolation of a sorted gyroscope stream at time `t`.
fn interp_at(samples: &[HharSample], cursor: &mut usize, t: i64) -> [f64; 3] {
    while *cursor + 1 < samples.len() && samples[*cursor + 1].time_ns <= t {
        *cursor += 1;
    }
    let a = &samples[*cursor];
    match samples.get(*cursor + 1) {
        Some(b) if t > a.time_ns && b.time_ns > a.time_ns => {
            let w = (t - a.time_ns) as f64 / (b.time_ns - a.time_ns) as f64;
            [0, 1, 2].map(|k| a.xyz[k] + w * (b.xyz[k] - a.xyz[k]))
        }
        _ => a.xyz,
    }
}

fn hhar(root: &Path) -> Result<Vec<SourcedRecording>> {
    let acc_path = root.join("Phones_accelerometer.csv");
    let gyr_path = root.join("Phones_gyroscope.csv");
    if !acc_path.is_file() || !gyr_path.is_file() {
        return Err(format_err(
            root,
            "expected Phones_accelerometer.csv and Phones_gyroscope.csv",
        ));
    }
    let accel = hhar_table(&acc_path)?;
    let gyro = hhar_table(&gyr_path)?;
    let mut out = Vec::new();
    for ((user, device), acc) in accel {
        let Some(gyr) = gyro.get(&(user.clone(), device.clone())).filter(|g| !g.is_empty()) else {
            log::warn!("hhar: no gyroscope stream for user {user} device {device}; skipped");
            continue;
        };
        if acc.len() < 2 {
            continue;
        }
        let t0 = acc[0].time_ns;
        let ts: Vec<f64> = acc.iter().map(|s| (s.time_ns - t0) as f64 * 1e-9).collect();
        let mut cursor = 0;
        let g: Vec<[f64; 3]> = acc.iter().map(|s| interp_at(gyr, &mut cursor, s.time_ns)).collect();
        let activity = acc.iter().map(|s| harmonize_label(&s.gt)).collect();
        let rate = infer_rate(&ts)?;
        let rec = RawRecording::new(
            ts,
            acc.iter().map(|s| s.xyz).collect(),
            AccelUnit::MetersPerSecondSquared,
            g,
            rate,
            SensorLocation::Waist,
        )?
        .with_activity(activity)?;
        out.push(SourcedRecording {
            origin: format!("hhar/{user}/{device}"),
            recording: rec,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// UCI HAR
// ---------------------------------------------------------------------------

const UCI_WINDOW: usize = 128;
const UCI_STEP: usize = 64;
const UCI_ACTIVITIES: [&str; 6] = [
    "walking",
    "walking_upstairs",
    "walking_downstairs",
    "sitting",
    "standing",
    "laying",
];

fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|v| parse_f64(path, v)).collect())
        .collect()
}

fn uci_har(root: &Path) -> Result<Vec<SourcedRecording>> {
    let base = [root.join("UCI HAR Dataset"), root.to_path_buf()]
        .into_iter()
        .find(|p| p.join("train").is_dir() || p.join("test").is_dir())
        .ok_or_else(|| format_err(root, "expected train/ or test/ directories"))?;
    let mut out = Vec::new();
    for part in ["train", "test"] {
        let dir = base.join(part);
        if !dir.is_dir() {
            continue;
        }
        let signals = dir.join("Inertial Signals");
        let load = |name: &str| read_rows(&signals.join(format!("{name}_{part}.txt")));
        let acc = [load("total_acc_x")?, load("total_acc_y")?, load("total_acc_z")?];
        let gyr = [load("body_gyro_x")?, load("body_gyro_y")?, load("body_gyro_z")?];
        let labels = read_rows(&dir.join(format!("y_{part}.txt")))?;
        let subjects = read_rows(&dir.join(format!("subject_{part}.txt")))?;
        let n = labels.len();
        let consistent = subjects.len() == n
            && acc
                .iter()
                .chain(&gyr)
                .all(|a| a.len() == n && a.iter().all(|r| r.len() == UCI_WINDOW));
        if !consistent {
            return Err(format_err(&dir, "inconsistent window counts or widths"));
        }

        // Windows overlap by half; consecutive windows of one subject are
        // stitched back into a continuous stream.
        let mut start = 0;
        while start < n {
            let subject = subjects[start][0];
            let mut end = start;
            while end < n && subjects[end][0] == subject {
                end += 1;
            }
            let (mut accel, mut gyro, mut activity) = (Vec::new(), Vec::new(), Vec::new());
            for w in start..end {
                let take = if w + 1 == end { UCI_WINDOW } else { UCI_STEP };
                let code = labels[w][0] as usize;
                let name = code
                    .checked_sub(1)
                    .and_then(|c| UCI_ACTIVITIES.get(c))
                    .ok_or_else(|| format_err(&dir, format!("activity code {code} out of range")))?;
                let label = harmonize_label(name);
                for k in 0..take {
                    accel.push([acc[0][w][k], acc[1][w][k], acc[2][w][k]]);
                    gyro.push([gyr[0][w][k], gyr[1][w][k], gyr[2][w][k]]);
                    activity.push(label);
                }
            }
            let len = accel.len();
            let rate = PublicCorpus::UciHar.native_rate_hz();
            let rec = RawRecording::new(
                uniform_times(len, rate),
                accel,
                AccelUnit::G,
                gyro,
                rate,
                SensorLocation::Waist,
            )?
            .with_activity(activity)?;
            out.push(SourcedRecording {
                origin: format!("ucihar/{part}/subject_{subject}"),
                recording: rec,
            });
            start = end;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Shoaib et al. (five body positions)
// ---------------------------------------------------------------------------

fn shoaib_location(position: &str) -> Option<SensorLocation> {
    let p = position.to_ascii_lowercase();
    if p.contains("pocket") {
        Some(SensorLocation::Pocket)
    } else if p.contains("wrist") {
        Some(SensorLocation::Wrist)
    } else if p.contains("arm") {
        Some(SensorLocation::Arm)
    } else if p.contains("belt") {
        Some(SensorLocation::Belt)
    } else {
        None
    }
}

fn shoaib(root: &Path) -> Result<Vec<SourcedRecording>> {
    let mut out = Vec::new();
    let files: Vec<PathBuf> = sorted_entries(root)?
        .into_iter()
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("Participant") && n.ends_with(".csv"))
        })
        .collect();
    for file in files {
        out.extend(shoaib_file(&file)?);
    }
    Ok(out)
}

fn shoaib_file(path: &Path) -> Result<Vec<SourcedRecording>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| format_err(path, e))?;
    let mut rows = reader.records();
    let mut next_row = |what: &str| -> Result<csv::StringRecord> {
        rows.next()
            .ok_or_else(|| format_err(path, format!("missing {what} row")))?
            .map_err(|e| format_err(path, e))
    };
    let positions = next_row("position header")?;
    let columns = next_row("column header")?;

    // Position names sit on the first column of each block.
    let mut blocks: Vec<(String, usize, usize)> = Vec::new();
    for (i, name) in positions.iter().enumerate() {
        let name = name.trim();
        if !name.is_empty() {
            if let Some(last) = blocks.last_mut() {
                last.2 = i;
            }
            blocks.push((name.to_string(), i, columns.len()));
        }
    }
    let activity_col = columns
        .iter()
        .enumerate()
        .filter(|(_, c)| c.to_ascii_lowercase().contains("activity"))
        .map(|(i, _)| i)
        .last()
        .ok_or_else(|| format_err(path, "no activity column"))?;

    struct Block {
        name: String,
        location: SensorLocation,
        acc: [usize; 3],
        gyr: [usize; 3],
    }
    let mut layout = Vec::new();
    for (name, from, to) in blocks {
        let Some(location) = shoaib_location(&name) else {
            continue;
        };
        let find = |col: &str| {
            (from..to)
                .find(|&i| columns.get(i).is_some_and(|c| c.trim().eq_ignore_ascii_case(col)))
                .ok_or_else(|| format_err(path, format!("{name}: missing column {col}")))
        };
        layout.push(Block {
            acc: [find("Ax")?, find("Ay")?, find("Az")?],
            gyr: [find("Gx")?, find("Gy")?, find("Gz")?],
            name,
            location,
        });
    }
    if layout.is_empty() {
        return Err(format_err(path, "no recognizable body-position blocks"));
    }

    let mut accel = vec![Vec::new(); layout.len()];
    let mut gyro = vec![Vec::new(); layout.len()];
    let mut activity = Vec::new();
    for record in rows {
        let record = record.map_err(|e| format_err(path, e))?;
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let v = |i: usize| parse_f64(path, record.get(i).unwrap_or(""));
        for (b, block) in layout.iter().enumerate() {
            accel[b].push([v(block.acc[0])?, v(block.acc[1])?, v(block.acc[2])?]);
            gyro[b].push([v(block.gyr[0])?, v(block.gyr[1])?, v(block.gyr[2])?]);
        }
        activity.push(harmonize_label(record.get(activity_col).unwrap_or("")));
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("participant");
    let rate = PublicCorpus::Shoaib.native_rate_hz();
    layout
        .into_iter()
        .zip(accel.into_iter().zip(gyro))
        .map(|(block, (acc, gyr))| {
            let n = acc.len();
            let rec = RawRecording::new(
                uniform_times(n, rate),
                acc,
                AccelUnit::MetersPerSecondSquared,
                gyr,
                rate,
                block.location,
            )?
            .with_activity(activity.clone())?;
            Ok(SourcedRecording {
                origin: format!("shoaib/{stem}/{}", block.name),
                recording: rec,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::fmt::Write as _;

    use super::*;

    fn write(path: &Path, body: &str) {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, body).unwrap();
    }

    #[test]
    fn empty_directory_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        for corpus in PublicCorpus::ALL {
            assert!(
                matches!(adapt_public(corpus, dir.path()), Err(Error::CorpusFormat(_))),
                "{corpus:?}"
            );
        }
    }

    #[test]
    fn motionsense_layout() {
        let dir = tempfile::tempdir().unwrap();
        let mut body = String::from(",attitude.roll,attitude.pitch,attitude.yaw,gravity.x,gravity.y,gravity.z,rotationRate.x,rotationRate.y,rotationRate.z,userAcceleration.x,userAcceleration.y,userAcceleration.z\n");
        for i in 0..10 {
            writeln!(body, "{i},0,0,0,0,0,-1,0.1,0.2,0.3,0.0,0.0,0.5").unwrap();
        }
        write(&dir.path().join("A_DeviceMotion_data/jog_16/sub_1.csv"), &body);
        write(&dir.path().join("A_DeviceMotion_data/sit_5/sub_1.csv"), &body);
        let recs = adapt_public(PublicCorpus::MotionSense, dir.path()).unwrap();
        assert_eq!(recs.len(), 2);
        let jog = recs.iter().find(|r| r.origin.contains("jog")).unwrap();
        assert_eq!(jog.recording.location(), SensorLocation::Pocket);
        assert_eq!(jog.recording.rate_hz(), 50.0);
        assert_eq!(jog.recording.accel()[0], [0.0, 0.0, -0.5]);
        assert_eq!(jog.recording.activity().unwrap()[0], Some(ActivityLabel::Jogging));
        let sit = recs.iter().find(|r| r.origin.contains("sit")).unwrap();
        assert_eq!(sit.recording.activity().unwrap()[0], None);
    }

    #[test]
    fn hhar_layout() {
        let dir = tempfile::tempdir().unwrap();
        let header = "Index,Arrival_Time,Creation_Time,x,y,z,User,Model,Device,gt\n";
        let mut acc = String::from(header);
        let mut gyr = String::from(header);
        for i in 0..20i64 {
            let t = 1_000_000_000 + i * 10_000_000; // 100 Hz
            let gt = if i < 10 { "walk" } else { "bike" };
            writeln!(acc, "{i},0,{t},0.0,0.0,9.8,a,nexus4,nexus4_1,{gt}").unwrap();
            writeln!(gyr, "{i},0,{},0.1,0.0,0.0,a,nexus4,nexus4_1,{gt}", t + 5_000_000).unwrap();
        }
        write(&dir.path().join("Phones_accelerometer.csv"), &acc);
        write(&dir.path().join("Phones_gyroscope.csv"), &gyr);
        let recs = adapt_public(PublicCorpus::Hhar, dir.path()).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0].recording;
        assert_eq!(r.location(), SensorLocation::Waist);
        assert_eq!(r.accel_unit(), AccelUnit::MetersPerSecondSquared);
        assert_eq!(r.rate_hz(), 100.0);
        assert_eq!(r.len(), 20);
        assert_eq!(r.activity().unwrap()[0], Some(ActivityLabel::Walking));
        assert_eq!(r.activity().unwrap()[15], None);
    }

    #[test]
    fn uci_har_layout() {
        let dir = tempfile::tempdir().unwrap();
        let base = dir.path().join("UCI HAR Dataset/train");
        let row = |v: f64| vec![format!("{v:e}"); UCI_WINDOW].join("  ") + "\n";
        for name in [
            "total_acc_x",
            "total_acc_y",
            "total_acc_z",
            "body_gyro_x",
            "body_gyro_y",
            "body_gyro_z",
        ] {
            write(
                &base.join(format!("Inertial Signals/{name}_train.txt")),
                &(row(0.5).repeat(3) + &row(0.25)),
            );
        }
        write(&base.join("y_train.txt"), "1\n1\n1\n2\n");
        write(&base.join("subject_train.txt"), "1\n1\n1\n3\n");
        let recs = adapt_public(PublicCorpus::UciHar, dir.path()).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].recording.len(), 64 * 2 + 128);
        assert_eq!(recs[1].recording.len(), 128);
        assert_eq!(recs[1].recording.activity().unwrap()[0], Some(ActivityLabel::Upstairs));
        assert_eq!(recs[0].recording.location(), SensorLocation::Waist);
    }

    #[test]
    fn shoaib_layout() {
        let dir = tempfile::tempdir().unwrap();
        let block = "time_stamp,Ax,Ay,Az,Lx,Ly,Lz,Gx,Gy,Gz,Mx,My,Mz";
        let mut body = String::new();
        let positions = ["Left_pocket", "Right_pocket", "Wrist", "Upper_arm", "Belt"];
        let mut first = Vec::new();
        for p in positions {
            first.push(p.to_string());
            first.extend(std::iter::repeat(String::new()).take(12));
        }
        first.push(String::new());
        writeln!(body, "{}", first.join(",")).unwrap();
        writeln!(body, "{},Activity_Label", vec![block; 5].join(",")).unwrap();
        for i in 0..6 {
            let vals = format!("{i},0,0,9.8,0,0,0,0.1,0,0,0,0,0");
            let label = if i < 3 { "upsatirs" } else { "sitting" };
            writeln!(body, "{},{label}", vec![vals.as_str(); 5].join(",")).unwrap();
        }
        write(&dir.path().join("Participant_1.csv"), &body);
        let recs = adapt_public(PublicCorpus::Shoaib, dir.path()).unwrap();
        assert_eq!(recs.len(), 5);
        let locs: Vec<_> = recs.iter().map(|r| r.recording.location()).collect();
        assert_eq!(
            locs,
            vec![
                SensorLocation::Pocket,
                SensorLocation::Pocket,
                SensorLocation::Wrist,
                SensorLocation::Arm,
                SensorLocation::Belt
            ]
        );
        assert_eq!(recs[2].recording.activity().unwrap()[0], Some(ActivityLabel::Upstairs));
        assert_eq!(recs[2].recording.activity().unwrap()[4], None);
    }

    #[test]
    fn corpus_names_parse() {
        assert_eq!("UCI-HAR".parse::<PublicCorpus>().unwrap(), PublicCorpus::UciHar);
        assert_eq!(
            "MotionSense".parse::<PublicCorpus>().unwrap(),
            PublicCorpus::MotionSense
        );
        assert!("kinetics".parse::<PublicCorpus>().is_err());
    }
}
