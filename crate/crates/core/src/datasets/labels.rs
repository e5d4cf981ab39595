use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four activities of interest. Integer codes are stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[repr(u8)]
pub enum ActivityLabel {
    Walking = 0,
    Upstairs = 1,
    Standing = 2,
    Jogging = 3,
}

impl ActivityLabel {
    pub const COUNT: usize = 4;
    pub const ALL: [ActivityLabel; 4] = [
        ActivityLabel::Walking,
        ActivityLabel::Upstairs,
        ActivityLabel::Standing,
        ActivityLabel::Jogging,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL
            .get(i)
            .copied()
            .ok_or_else(|| Error::Label(format!("activity code {i} out of range")))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ActivityLabel::Walking => "walking",
            ActivityLabel::Upstairs => "upstairs",
            ActivityLabel::Standing => "standing",
            ActivityLabel::Jogging => "jogging",
        }
    }
}

impl fmt::Display for ActivityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Head-movement condition of an earable recording. `None` is reserved for
/// recordings not worn on the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[repr(u8)]
pub enum HeadMovement {
    Slight = 0,
    Random = 1,
    Roll = 2,
    Yaw = 3,
    Pitch = 4,
    None = 5,
}

impl HeadMovement {
    pub const ALL: [HeadMovement; 6] = [
        HeadMovement::Slight,
        HeadMovement::Random,
        HeadMovement::Roll,
        HeadMovement::Yaw,
        HeadMovement::Pitch,
        HeadMovement::None,
    ];

    /// The five conditions an earable recording can carry.
    pub const HEAD_WORN: [HeadMovement; 5] = [
        HeadMovement::Slight,
        HeadMovement::Random,
        HeadMovement::Roll,
        HeadMovement::Yaw,
        HeadMovement::Pitch,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Result<Self> {
        Self::ALL
            .get(code as usize)
            .copied()
            .ok_or_else(|| Error::Label(format!("head-movement code {code} out of range")))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HeadMovement::Slight => "slight",
            HeadMovement::Random => "random",
            HeadMovement::Roll => "roll",
            HeadMovement::Yaw => "yaw",
            HeadMovement::Pitch => "pitch",
            HeadMovement::None => "none",
        }
    }
}

impl FromStr for HeadMovement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|h| h.as_str() == s)
            .ok_or_else(|| Error::Label(format!("unknown head movement {s:?}")))
    }
}

impl fmt::Display for HeadMovement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Source = smartphone / public corpora, target = earable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[repr(u8)]
pub enum DomainTag {
    Source = 0,
    Target = 1,
}

impl DomainTag {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(DomainTag::Source),
            1 => Ok(DomainTag::Target),
            _ => Err(Error::Label(format!("domain code {i} out of range"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DomainTag::Source => "source",
            DomainTag::Target => "target",
        }
    }
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Native activity names that are recognized but fall outside the four
/// activities of interest.
const KNOWN_DROPPED: &[&str] = &[
    "other",
    "null",
    "downstairs",
    "walkingdownstairs",
    "stairsdown",
    "dws",
    "sitting",
    "sit",
    "biking",
    "bike",
    "lying",
    "laying",
];

/// Map a corpus-native activity name onto the shared label set. Anything
/// outside the four activities maps to `None`; unrecognized names are also
/// logged.
pub fn harmonize_label(source_label: &str) -> Option<ActivityLabel> {
    let key: String = source_label
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect();
    match key.as_str() {
        "walking" | "walk" | "wlk" => Some(ActivityLabel::Walking),
        "upstairs" | "walkingupstairs" | "stairsup" | "ups" | "upsatirs" => Some(ActivityLabel::Upstairs),
        "standing" | "stand" | "std" => Some(ActivityLabel::Standing),
        "jogging" | "jog" | "running" => Some(ActivityLabel::Jogging),
        k if KNOWN_DROPPED.contains(&k) => None,
        _ => {
            log::warn!("dropping unrecognized activity label {source_label:?}");
            None
        }
    }
}
