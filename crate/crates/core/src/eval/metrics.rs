use serde::{Deserialize, Serialize};

use crate::datasets::{ActivityLabel, HeadMovement};
use crate::error::{Error, Result};

pub const EVAL_FORMAT_VERSION: u32 = 1;

const K: usize = ActivityLabel::COUNT;

/// Counts indexed `[truth][prediction]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; K]; K],
}

impl ConfusionMatrix {
    pub fn add(&mut self, truth: ActivityLabel, prediction: ActivityLabel) {
        self.counts[truth.index()][prediction.index()] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..K).map(|c| self.counts[c][c]).sum()
    }

    pub fn row_sum(&self, c: usize) -> u64 {
        self.counts[c].iter().sum()
    }

    pub fn col_sum(&self, c: usize) -> u64 {
        self.counts.iter().map(|r| r[c]).sum()
    }

    pub fn accuracy(&self) -> f64 {
        ratio(self.trace(), self.total())
    }

    /// Diagonal over truth row; 0 for an empty row.
    pub fn recall(&self, c: usize) -> f64 {
        ratio(self.counts[c][c], self.row_sum(c))
    }

    pub fn precision(&self, c: usize) -> f64 {
        ratio(self.counts[c][c], self.col_sum(c))
    }

    /// One-vs-rest F1, written as `2·TP / (row + col)`, which equals
    /// `2PR/(P+R)` whenever either is defined and is 0 otherwise.
    pub fn f1(&self, c: usize) -> f64 {
        ratio(2 * self.counts[c][c], self.row_sum(c) + self.col_sum(c))
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for (a, b) in self.counts.iter_mut().flatten().zip(other.counts.iter().flatten()) {
            *a += b;
        }
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn confusion(truths: &[ActivityLabel], predictions: &[ActivityLabel]) -> Result<ConfusionMatrix> {
    if truths.len() != predictions.len() {
        return Err(Error::Argument(format!(
            "{} truths but {} predictions",
            truths.len(),
            predictions.len()
        )));
    }
    if truths.is_empty() {
        return Err(Error::Argument("nothing to evaluate".into()));
    }
    let mut m = ConfusionMatrix::default();
    for (t, p) in truths.iter().zip(predictions) {
        m.add(*t, *p);
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub label: ActivityLabel,
    pub support: u64,
    /// Per-class accuracy, read as recall.
    pub accuracy: f64,
    pub precision: f64,
    pub f1: f64,
    /// The class never occurs in truths or predictions.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub condition: HeadMovement,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub format_version: u32,
    pub count: u64,
    pub accuracy: f64,
    pub macro_f1: f64,
    pub per_class: Vec<ClassMetrics>,
    pub confusion: ConfusionMatrix,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupReport>,
}

impl EvalReport {
    pub fn from_confusion(m: ConfusionMatrix) -> EvalReport {
        let per_class: Vec<ClassMetrics> = ActivityLabel::ALL
            .iter()
            .map(|&label| {
                let c = label.index();
                ClassMetrics {
                    label,
                    support: m.row_sum(c),
                    accuracy: m.recall(c),
                    precision: m.precision(c),
                    f1: m.f1(c),
                    degenerate: m.row_sum(c) + m.col_sum(c) == 0,
                }
            })
            .collect();
        EvalReport {
            format_version: EVAL_FORMAT_VERSION,
            count: m.total(),
            accuracy: m.accuracy(),
            macro_f1: per_class.iter().map(|c| c.f1).sum::<f64>() / K as f64,
            per_class,
            confusion: m,
            groups: Vec::new(),
        }
    }

    pub fn group(&self, condition: HeadMovement) -> Option<&EvalReport> {
        self.groups.iter().find(|g| g.condition == condition).map(|g| &g.report)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Metrics for a set of predictions, optionally broken down by head-movement
/// condition. Groups appear in condition-code order.
pub fn report(
    truths: &[ActivityLabel],
    predictions: &[ActivityLabel],
    groups: Option<&[HeadMovement]>,
) -> Result<EvalReport> {
    let m = confusion(truths, predictions)?;
    let mut out = EvalReport::from_confusion(m);
    if let Some(tags) = groups {
        if tags.len() != truths.len() {
            return Err(Error::Argument(format!(
                "{} group tags for {} predictions",
                tags.len(),
                truths.len()
            )));
        }
        for cond in HeadMovement::ALL {
            let mut gm = ConfusionMatrix::default();
            for ((t, p), g) in truths.iter().zip(predictions).zip(tags) {
                if *g == cond {
                    gm.add(*t, *p);
                }
            }
            if gm.total() > 0 {
                out.groups.push(GroupReport {
                    condition: cond,
                    report: EvalReport::from_confusion(gm),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use ActivityLabel::*;

    #[test]
    fn basic_cases() {
        let m = confusion(&[Walking, Jogging, Standing], &[Walking, Jogging, Standing]).unwrap();
        assert_eq!(m.accuracy(), 1.0);
        assert_eq!(m.trace(), 3);
        let m = confusion(&[Walking], &[Jogging]).unwrap();
        assert_eq!(m.counts[0][3], 1);
        assert_eq!(m.trace(), 0);
        assert!(matches!(confusion(&[], &[]), Err(Error::Argument(_))));
        assert!(matches!(confusion(&[Walking], &[]), Err(Error::Argument(_))));
    }

    #[test]
    fn f1_formula() {
        // Class 0: TP 8, FP 2, FN 2.
        let mut m = ConfusionMatrix::default();
        m.counts[0][0] = 8;
        m.counts[0][1] = 2;
        m.counts[2][0] = 2;
        m.counts[1][1] = 5;
        assert!((m.precision(0) - 0.8).abs() < 1e-15);
        assert!((m.recall(0) - 0.8).abs() < 1e-15);
        assert!((m.f1(0) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn absent_class_is_degenerate() {
        let r = report(&[Walking, Jogging], &[Walking, Walking], None).unwrap();
        let up = &r.per_class[Upstairs.index()];
        assert!(up.degenerate && up.accuracy == 0.0 && up.f1 == 0.0);
        assert!(!r.per_class[Jogging.index()].degenerate);
    }

    #[test]
    fn groups_follow_tags() {
        let r = report(
            &[Walking, Jogging, Standing],
            &[Walking, Walking, Standing],
            Some(&[HeadMovement::Yaw, HeadMovement::Yaw, HeadMovement::Roll]),
        )
        .unwrap();
        assert_eq!(r.groups.len(), 2);
        assert_eq!(r.groups[0].condition, HeadMovement::Roll);
        assert_eq!(r.group(HeadMovement::Yaw).unwrap().accuracy, 0.5);
        assert!(r.group(HeadMovement::Pitch).is_none());
        assert!(report(&[Walking], &[Walking], Some(&[])).is_err());
    }

    fn triples() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
        proptest::collection::vec((0usize..4, 0usize..4, 0usize..5), 1..200)
    }

    fn unzip(t: &[(usize, usize, usize)]) -> (Vec<ActivityLabel>, Vec<ActivityLabel>, Vec<HeadMovement>) {
        (
            t.iter().map(|x| ActivityLabel::ALL[x.0]).collect(),
            t.iter().map(|x| ActivityLabel::ALL[x.1]).collect(),
            t.iter().map(|x| HeadMovement::HEAD_WORN[x.2]).collect(),
        )
    }

    proptest! {
        #[test]
        fn algebraic_identities(t in triples()) {
            let (tr, pr, g) = unzip(&t);
            let r = report(&tr, &pr, Some(&g)).unwrap();
            let m = r.confusion;
            prop_assert_eq!(m.total(), t.len() as u64);
            prop_assert_eq!(r.accuracy, m.trace() as f64 / m.total() as f64);
            let weighted: f64 = r.groups.iter().map(|g| g.report.accuracy * g.report.count as f64).sum::<f64>() / r.count as f64;
            prop_assert!((weighted - r.accuracy).abs() <= 1e-12);
            for c in 0..4 {
                let p = m.precision(c);
                let rc = m.recall(c);
                let classic = if p + rc == 0.0 { 0.0 } else { 2.0 * p * rc / (p + rc) };
                prop_assert!((classic - r.per_class[c].f1).abs() < 1e-12);
                let den = m.row_sum(c) + m.col_sum(c);
                let identity = if den == 0 { 0.0 } else { (2 * m.counts[c][c]) as f64 / den as f64 };
                prop_assert_eq!(r.per_class[c].f1, identity);
                prop_assert_eq!(r.per_class[c].accuracy, if m.row_sum(c) == 0 { 0.0 } else { m.counts[c][c] as f64 / m.row_sum(c) as f64 });
            }
        }

        #[test]
        fn permutation_invariant(t in triples(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand_chacha::rand_core::SeedableRng;
            let mut shuffled = t.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let (a, b, c) = unzip(&t);
            let (x, y, z) = unzip(&shuffled);
            prop_assert_eq!(report(&a, &b, Some(&c)).unwrap(), report(&x, &y, Some(&z)).unwrap());
        }
    }
}
