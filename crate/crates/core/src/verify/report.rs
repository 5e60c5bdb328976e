//! Machine-readable check reports with a stable JSON rendering.

use crate::bimould::Backend;

/// First mismatch found by a comparison, replayable from the seed and point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which named identity inside the check failed.
    pub identity: String,
    pub length: usize,
    /// Evaluation point (empty for exact comparisons).
    pub point: Vec<u64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(Witness),
    Skipped(String),
}

impl CheckStatus {
    pub fn passed(&self) -> bool {
        matches!(self, CheckStatus::Pass)
    }
}

/// Comparisons and mismatches seen at one component length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LengthStat {
    pub terms: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub unit: String,
    pub backend: Backend,
    pub max_length: usize,
    pub points: usize,
    pub seed: u64,
    pub status: CheckStatus,
    /// Indexed by length r = 1..=max_length.
    pub per_length: Vec<LengthStat>,
    pub wall_ms: u64,
    pub version: String,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

pub fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Exact => "exact",
        Backend::Eval => "eval",
    }
}

impl CheckReport {
    /// Stable JSON: fixed key order, no whitespace dependence on content.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push('{');
        s.push_str(&format!("\"check\":\"{}\",", escape(&self.check)));
        s.push_str(&format!("\"unit\":\"{}\",", escape(&self.unit)));
        s.push_str(&format!("\"backend\":\"{}\",", backend_name(self.backend)));
        s.push_str(&format!("\"max_length\":{},", self.max_length));
        s.push_str(&format!("\"points\":{},", self.points));
        s.push_str(&format!("\"seed\":{},", self.seed));
        match &self.status {
            CheckStatus::Pass => s.push_str("\"status\":\"pass\","),
            CheckStatus::Skipped(reason) => {
                s.push_str(&format!("\"status\":\"skipped\",\"reason\":\"{}\",", escape(reason)));
            }
            CheckStatus::Fail(w) => {
                s.push_str("\"status\":\"fail\",");
                s.push_str(&format!(
                    "\"witness\":{{\"identity\":\"{}\",\"r\":{},\"point\":[{}],\"lhs\":\"{}\",\"rhs\":\"{}\"}},",
                    escape(&w.identity),
                    w.length,
                    w.point.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    escape(&w.lhs),
                    escape(&w.rhs),
                ));
            }
        }
        s.push_str("\"per_length\":[");
        for (i, st) in self.per_length.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{{\"r\":{},\"mismatches\":{}}}", i + 1, st.mismatches));
        }
        s.push_str("],");
        s.push_str(&format!("\"wall_ms\":{},", self.wall_ms));
        s.push_str(&format!("\"version\":\"{}\"", escape(&self.version)));
        s.push('}');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_is_stable() {
        let rep = CheckReport {
            check: "negpush".into(),
            unit: "polar-u".into(),
            backend: Backend::Exact,
            max_length: 2,
            points: 0,
            seed: 7,
            status: CheckStatus::Pass,
            per_length: vec![LengthStat::default(), LengthStat { terms: 3, mismatches: 0 }],
            wall_ms: 0,
            version: "0.1.0".into(),
        };
        assert_eq!(
            rep.to_json(),
            "{\"check\":\"negpush\",\"unit\":\"polar-u\",\"backend\":\"exact\",\"max_length\":2,\
             \"points\":0,\"seed\":7,\"status\":\"pass\",\"per_length\":[{\"r\":1,\"mismatches\":0},\
             {\"r\":2,\"mismatches\":0}],\"wall_ms\":0,\"version\":\"0.1.0\"}"
        );
    }

    #[test]
    fn witness_is_escaped() {
        let rep = CheckReport {
            check: "x".into(),
            unit: "u".into(),
            backend: Backend::Eval,
            max_length: 1,
            points: 1,
            seed: 1,
            status: CheckStatus::Fail(Witness {
                identity: "a \"quoted\" name".into(),
                length: 1,
                point: vec![3, 4],
                lhs: "1".into(),
                rhs: "2".into(),
            }),
            per_length: vec![LengthStat { terms: 1, mismatches: 1 }],
            wall_ms: 5,
            version: "0.1.0".into(),
        };
        let json = rep.to_json();
        assert!(json.contains("\\\"quoted\\\""));
        assert!(json.contains("\"point\":[3,4]"));
    }
}
