//! Ordered lists of named checks with computed and expected values.

use std::fmt::{Display, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    /// An imported fact that is cited, not computed. Never affects the verdict.
    Recorded,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Pass => "pass",
            RowStatus::Fail => "fail",
            RowStatus::Recorded => "recorded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub id: String,
    pub description: String,
    /// The claim or construction this row checks.
    pub source: String,
    pub computed: String,
    pub expected: String,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub title: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Serialize)]
struct Emitted<'a> {
    title: &'a str,
    overall: RowStatus,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    notes: &'a [String],
    rows: &'a [Row],
}

impl Certificate {
    pub fn new(title: impl Into<String>) -> Self {
        Certificate {
            title: title.into(),
            notes: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// `Pass` iff no row failed.
    pub fn overall(&self) -> RowStatus {
        if self.rows.iter().any(|r| r.status == RowStatus::Fail) {
            RowStatus::Fail
        } else {
            RowStatus::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.overall() == RowStatus::Pass
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    /// Adds a row that passes iff `computed == expected`.
    pub fn check_eq<T: PartialEq + Display>(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        source: impl Into<String>,
        computed: T,
        expected: T,
    ) -> bool {
        let ok = computed == expected;
        self.push(Row {
            id: id.into(),
            description: description.into(),
            source: source.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            status: if ok { RowStatus::Pass } else { RowStatus::Fail },
        });
        ok
    }

    /// Adds a row whose status is decided by the caller.
    pub fn check(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        source: impl Into<String>,
        computed: impl Display,
        expected: impl Display,
        ok: bool,
    ) -> bool {
        self.push(Row {
            id: id.into(),
            description: description.into(),
            source: source.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            status: if ok { RowStatus::Pass } else { RowStatus::Fail },
        });
        ok
    }

    pub fn record(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        source: impl Into<String>,
        value: impl Display,
    ) {
        self.push(Row {
            id: id.into(),
            description: description.into(),
            source: source.into(),
            computed: value.to_string(),
            expected: "-".into(),
            status: RowStatus::Recorded,
        });
    }

    /// Appends another certificate's rows, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: Certificate) {
        for mut row in other.rows {
            row.id = format!("{prefix}.{}", row.id);
            self.rows.push(row);
        }
        self.notes.extend(other.notes);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.status == RowStatus::Fail)
    }

    pub fn row(&self, id: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let emitted = Emitted {
            title: &self.title,
            overall: self.overall(),
            notes: &self.notes,
            rows: &self.rows,
        };
        canonical_json(&emitted)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}\n", self.title);
        for note in &self.notes {
            let _ = writeln!(out, "> {note}");
        }
        if !self.notes.is_empty() {
            out.push('\n');
        }
        out.push_str("| id | check | source | computed | expected | status |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                md_cell(&r.id),
                md_cell(&r.description),
                md_cell(&r.source),
                md_cell(&r.computed),
                md_cell(&r.expected),
                r.status.as_str()
            );
        }
        let _ = writeln!(out, "\noverall: {}", self.overall().as_str());
        out
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

/// Serializes through `serde_json::Value`, whose maps are key-sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_ignores_recorded_rows() {
        let mut c = Certificate::new("t");
        assert!(c.passed());
        c.record("r", "cited", "src", "yes");
        assert!(c.passed());
        c.check_eq("a", "one", "src", 1, 1);
        assert!(c.passed());
        c.check_eq("b", "two", "src", 2, 3);
        assert_eq!(c.overall(), RowStatus::Fail);
        assert_eq!(c.failures().count(), 1);
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let mut c = Certificate::new("t");
        c.check_eq("a", "x", "s", 1, 1);
        let j = c.to_json();
        assert_eq!(j, c.clone().to_json());
        let overall = j.find("\"overall\"").unwrap();
        let rows = j.find("\"rows\"").unwrap();
        let title = j.find("\"title\"").unwrap();
        assert!(overall < rows && rows < title);
        let computed = j.find("\"computed\"").unwrap();
        let expected = j.find("\"expected\"").unwrap();
        assert!(computed < expected);
    }

    #[test]
    fn markdown_escapes_pipes() {
        let mut c = Certificate::new("t");
        c.check_eq("a", "x|y", "s", 1, 1);
        assert!(c.to_markdown().contains("x\\|y"));
    }
}
