use std::fmt::Write;

use super::metrics::EvalReport;
use crate::datasets::ActivityLabel;

const LABEL_WIDTH: usize = 10;
const CELL_WIDTH: usize = 12;

/// Aligned text table: one column pair (Acc, F1) per head-movement group
/// plus an overall column, one row per activity and a final average row.
pub fn render_table(report: &EvalReport) -> String {
    let mut columns: Vec<(String, &EvalReport)> = report
        .groups
        .iter()
        .map(|g| (g.condition.as_str().to_string(), &g.report))
        .collect();
    columns.push(("overall".to_string(), report));

    let mut out = String::new();
    let _ = write!(out, "{:<LABEL_WIDTH$}", "");
    for (name, _) in &columns {
        let _ = write!(out, "{name:>CELL_WIDTH$}");
    }
    out.push('\n');
    let _ = write!(out, "{:<LABEL_WIDTH$}", "metric");
    for _ in &columns {
        let _ = write!(out, "{:>CELL_WIDTH$}", "Acc    F1");
    }
    out.push('\n');
    for label in ActivityLabel::ALL {
        let _ = write!(out, "{:<LABEL_WIDTH$}", label.as_str());
        for (_, r) in &columns {
            let m = &r.per_class[label.index()];
            let cell = if m.degenerate {
                "-      -".to_string()
            } else {
                format!("{:.2}  {:.2}", m.accuracy, m.f1)
            };
            let _ = write!(out, "{cell:>CELL_WIDTH$}");
        }
        out.push('\n');
    }
    let _ = write!(out, "{:<LABEL_WIDTH$}", "average");
    for (_, r) in &columns {
        let _ = write!(out, "{:>CELL_WIDTH$}", format!("{:.2}  {:.2}", r.accuracy, r.macro_f1));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::HeadMovement;
    use crate::eval::report;
    use ActivityLabel::*;

    #[test]
    fn layout_is_aligned() {
        let r = report(
            &[Walking, Jogging, Standing, Walking],
            &[Walking, Jogging, Standing, Upstairs],
            Some(&[
                HeadMovement::Roll,
                HeadMovement::Roll,
                HeadMovement::Yaw,
                HeadMovement::Yaw,
            ]),
        )
        .unwrap();
        let t = render_table(&r);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
        assert!(lines[0].contains("roll") && lines[0].contains("yaw") && lines[0].contains("overall"));
        assert!(lines[6].starts_with("average"));
        // Upstairs never occurs under roll.
        assert!(lines[3].contains("-      -"));
    }
}
