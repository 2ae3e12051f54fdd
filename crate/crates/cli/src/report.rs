//! The verification report model and its three renderings.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn rank(self) -> u8 {
        match self {
            Status::Fail => 0,
            Status::Skipped => 1,
            Status::Pass => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyResult {
    pub claim_id: String,
    pub topic: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub wall_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Failures first, then skips, then passes; ties keep their input order.
pub fn ordered(results: &[VerifyResult]) -> Vec<VerifyResult> {
    let mut v = results.to_vec();
    v.sort_by_key(|r| r.status.rank());
    v
}

/// SHA-256 over the ordered results with timings removed.
pub fn content_hash(results: &[VerifyResult]) -> String {
    let stripped: Vec<VerifyResult> = ordered(results)
        .into_iter()
        .map(|r| VerifyResult { wall_ms: 0, ..r })
        .collect();
    let bytes = serde_json::to_vec(&stripped).expect("results serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub const CSV_COLUMNS: [&str; 7] = ["claim_id", "topic", "expected", "computed", "status", "reason", "wall_ms"];

pub fn emit_report(results: &[VerifyResult], format: Format) -> String {
    let rows = ordered(results);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                content_hash: String,
                passed: usize,
                failed: usize,
                skipped: usize,
                results: &'a [VerifyResult],
            }
            let count = |s| rows.iter().filter(|r| r.status == s).count();
            let doc = Doc {
                content_hash: content_hash(results),
                passed: count(Status::Pass),
                failed: count(Status::Fail),
                skipped: count(Status::Skipped),
                results: &rows,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COLUMNS).expect("in-memory write");
            for r in &rows {
                w.write_record([
                    r.claim_id.as_str(),
                    &r.topic,
                    &r.expected,
                    &r.computed,
                    r.status.as_str(),
                    r.reason.as_deref().unwrap_or(""),
                    &r.wall_ms.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Text => {
            let mut s = format!("{:<8} {:<16} {}\n", "STATUS", "CLAIM", "DETAIL");
            for r in &rows {
                s.push_str(&format!(
                    "{:<8} {:<16} {}\n         expected: {}\n         computed: {}\n",
                    r.status.as_str().to_uppercase(),
                    r.claim_id,
                    r.topic,
                    r.expected,
                    r.computed
                ));
                if let Some(reason) = &r.reason {
                    s.push_str(&format!("         reason:   {reason}\n"));
                }
                s.push_str(&format!("         time:     {} ms\n", r.wall_ms));
            }
            s.push_str(&format!("content hash {}\n", content_hash(results)));
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(id: &str, status: Status, ms: u64) -> VerifyResult {
        VerifyResult {
            claim_id: id.into(),
            topic: "t".into(),
            expected: "e".into(),
            computed: "c".into(),
            status,
            reason: None,
            wall_ms: ms,
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        assert_eq!(emit_report(&[], Format::Csv), "claim_id,topic,expected,computed,status,reason,wall_ms\n");
        let json: serde_json::Value = serde_json::from_str(&emit_report(&[], Format::Json)).unwrap();
        assert_eq!(json["results"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn one_passing_claim() {
        let csv = emit_report(&[result("A", Status::Pass, 3)], Format::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().contains(",pass,"));
    }

    #[test]
    fn failures_first_and_hash_ignores_time() {
        let rs = [result("A", Status::Pass, 1), result("B", Status::Fail, 2), result("C", Status::Skipped, 3)];
        let ids: Vec<String> = ordered(&rs).into_iter().map(|r| r.claim_id).collect();
        assert_eq!(ids, ["B", "C", "A"]);
        let slower = [result("A", Status::Pass, 100), result("B", Status::Fail, 200), result("C", Status::Skipped, 0)];
        assert_eq!(content_hash(&rs), content_hash(&slower));
    }
}
